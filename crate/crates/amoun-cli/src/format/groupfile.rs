//! `AMOUN-GRP v1`: serialized sender-side group state.
//!
//! The file embeds the sender-secret `N'` values; it must be kept private
//! to the sender. Initialization coins `f` and `t` are never serialized —
//! they are discarded after `N'` is computed.
//!
//! ```text
//! AMOUN-GRP v1
//! group_id: <1..=64 chars of [0-9a-z_-]>
//! alpha_bits / v_bits / t_bits / r_bits / f_bits
//! x: <hex>
//! entries: <count>
//! ```
//! followed per entry by `n`, `e`, `d`, `n_prime`, `ax` (hex) and
//! `budget_bits` (decimal).

use amoun::{GroupContext, GroupEntry, KeyGenParams, PublicKey};

use super::{parse_decimal, parse_hex, to_hex, validate_group_id, FormatError, LineReader};

const MAGIC: &str = "AMOUN-GRP v1";

/// Serializes a group context.
pub fn emit_group_file(ctx: &GroupContext) -> String {
    let params = ctx.params();
    let mut out = format!(
        "{MAGIC}\ngroup_id: {}\nalpha_bits: {}\nv_bits: {}\nt_bits: {}\nr_bits: {}\nf_bits: {}\nx: {}\nentries: {}\n",
        ctx.group_id(),
        params.alpha_bits,
        params.v_bits,
        params.t_bits,
        params.r_bits,
        params.f_bits,
        to_hex(ctx.x_modulus()),
        ctx.recipient_count(),
    );
    for entry in ctx.entries() {
        out.push_str(&format!(
            "n: {}\ne: {}\nd: {}\nn_prime: {}\nax: {}\nbudget_bits: {}\n",
            to_hex(&entry.public_key.n),
            to_hex(&entry.public_key.e),
            to_hex(&entry.public_key.d),
            to_hex(&entry.n_prime),
            to_hex(&entry.ax),
            entry.budget_bits,
        ));
    }
    out
}

/// Parses and structurally validates a group file.
pub fn parse_group_file(text: &str) -> Result<GroupContext, FormatError> {
    let mut reader = LineReader::new(text);
    reader.expect_magic(MAGIC)?;
    let group_id = reader.expect_field("group_id")?;
    validate_group_id("group_id", group_id)?;
    let alpha_bits = parse_decimal("alpha_bits", reader.expect_field("alpha_bits")?)?;
    let v_bits = parse_decimal("v_bits", reader.expect_field("v_bits")?)?;
    let t_bits = parse_decimal("t_bits", reader.expect_field("t_bits")?)?;
    let r_bits = parse_decimal("r_bits", reader.expect_field("r_bits")?)?;
    let f_bits = parse_decimal("f_bits", reader.expect_field("f_bits")?)?;
    let x_modulus = parse_hex("x", reader.expect_field("x")?)?;
    let count = parse_decimal("entries", reader.expect_field("entries")?)?;
    if !(2..=1 << 16).contains(&count) {
        return Err(FormatError::BadValue {
            field: "entries",
            reason: "entry count out of range",
        });
    }
    let mut entries = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let n = parse_hex("n", reader.expect_field("n")?)?;
        let e = parse_hex("e", reader.expect_field("e")?)?;
        let d = parse_hex("d", reader.expect_field("d")?)?;
        let n_prime = parse_hex("n_prime", reader.expect_field("n_prime")?)?;
        let ax = parse_hex("ax", reader.expect_field("ax")?)?;
        let budget_bits = parse_decimal("budget_bits", reader.expect_field("budget_bits")?)?;
        entries.push(GroupEntry {
            public_key: PublicKey { n, e, d },
            n_prime,
            ax,
            budget_bits,
        });
    }
    reader.finish()?;
    let params = KeyGenParams::new(alpha_bits, v_bits, t_bits, r_bits, f_bits);
    Ok(GroupContext::from_parts(
        entries,
        x_modulus,
        group_id.to_string(),
        params,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use amoun::{GroupContext, InitCoins, KeyGenParams};
    use num_bigint::BigUint;

    fn micro_context() -> GroupContext {
        let (pk1, _) = amoun::keypair_from_primes(
            BigUint::from(11u32),
            BigUint::from(13u32),
            BigUint::from(17u32),
            BigUint::from(7u32),
            BigUint::from(3u32),
        )
        .unwrap();
        let (pk2, _) = amoun::keypair_from_primes(
            BigUint::from(19u32),
            BigUint::from(23u32),
            BigUint::from(29u32),
            BigUint::from(5u32),
            BigUint::from(2u32),
        )
        .unwrap();
        let coins = vec![
            InitCoins {
                f: BigUint::from(2u32),
                t: BigUint::from(1u32),
            },
            InitCoins {
                f: BigUint::from(1u32),
                t: BigUint::from(2u32),
            },
        ];
        GroupContext::init_with_coins(
            vec![pk1, pk2],
            KeyGenParams::new(4, 3, 1, 1, 1),
            "micro-group".to_string(),
            &coins,
            3,
        )
        .unwrap()
    }

    #[test]
    fn round_trips_byte_exactly() {
        let ctx = micro_context();
        let text = emit_group_file(&ctx);
        let parsed = parse_group_file(&text).unwrap();
        assert_eq!(parsed, ctx);
        assert_eq!(emit_group_file(&parsed), text);
    }

    #[test]
    fn corrupt_basis_is_rejected() {
        let ctx = micro_context();
        let text = emit_group_file(&ctx);
        // 7866 = 0x1eba; tamper with it
        let bad = text.replace("ax: 1eba", "ax: 1ebb");
        assert!(parse_group_file(&bad).is_err());
    }

    #[test]
    fn bad_group_ids_are_rejected() {
        let ctx = micro_context();
        let text = emit_group_file(&ctx);
        let bad = text.replace("group_id: micro-group", "group_id: Micro Group");
        assert!(parse_group_file(&bad).is_err());
    }
}
