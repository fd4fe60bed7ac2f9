//! `AMOUN-KEY v1`: line-oriented key files.
//!
//! ```text
//! AMOUN-KEY v1
//! kind: public
//! alpha_bits: 1024
//! n: <hex>
//! e: <hex>
//! d: <hex>
//! ```
//!
//! Private files carry `kind: private` and fields `k`, `v`, `y`. Hex is
//! canonical lowercase with no leading zeros.

use amoun::{PrivateKey, PublicKey};

use super::{parse_decimal, parse_hex, to_hex, FormatError, LineReader};

const MAGIC: &str = "AMOUN-KEY v1";

/// A parsed key file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeyFile {
    /// `kind: public`.
    Public {
        /// Prime size the key was generated at.
        alpha_bits: u32,
        /// The key material.
        key: PublicKey,
    },
    /// `kind: private`.
    Private {
        /// Prime size the key was generated at.
        alpha_bits: u32,
        /// The key material.
        key: PrivateKey,
    },
}

/// Serializes a public key file.
pub fn emit_public_key_file(alpha_bits: u32, key: &PublicKey) -> String {
    format!(
        "{MAGIC}\nkind: public\nalpha_bits: {alpha_bits}\nn: {}\ne: {}\nd: {}\n",
        to_hex(&key.n),
        to_hex(&key.e),
        to_hex(&key.d),
    )
}

/// Serializes a private key file.
pub fn emit_private_key_file(alpha_bits: u32, key: &PrivateKey) -> String {
    format!(
        "{MAGIC}\nkind: private\nalpha_bits: {alpha_bits}\nk: {}\nv: {}\ny: {}\n",
        to_hex(&key.k),
        to_hex(&key.v),
        to_hex(&key.y),
    )
}

/// Parses either kind of key file, rejecting unknown fields and
/// non-canonical values.
pub fn parse_key_file(text: &str) -> Result<KeyFile, FormatError> {
    let mut reader = LineReader::new(text);
    reader.expect_magic(MAGIC)?;
    let kind = reader.expect_field("kind")?;
    let parsed = match kind {
        "public" => {
            let alpha_bits = parse_decimal("alpha_bits", reader.expect_field("alpha_bits")?)?;
            let n = parse_hex("n", reader.expect_field("n")?)?;
            let e = parse_hex("e", reader.expect_field("e")?)?;
            let d = parse_hex("d", reader.expect_field("d")?)?;
            KeyFile::Public {
                alpha_bits,
                key: PublicKey { n, e, d },
            }
        }
        "private" => {
            let alpha_bits = parse_decimal("alpha_bits", reader.expect_field("alpha_bits")?)?;
            let k = parse_hex("k", reader.expect_field("k")?)?;
            let v = parse_hex("v", reader.expect_field("v")?)?;
            let y = parse_hex("y", reader.expect_field("y")?)?;
            KeyFile::Private {
                alpha_bits,
                key: PrivateKey { k, v, y },
            }
        }
        _ => {
            return Err(FormatError::BadValue {
                field: "kind",
                reason: "must be `public` or `private`",
            })
        }
    };
    reader.finish()?;
    Ok(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn sample_public() -> PublicKey {
        PublicKey {
            n: BigUint::from(143u32),
            e: BigUint::from(49u32),
            d: BigUint::from(106u32),
        }
    }

    #[test]
    fn public_key_round_trips_byte_exactly() {
        let text = emit_public_key_file(4, &sample_public());
        assert_eq!(
            text,
            "AMOUN-KEY v1\nkind: public\nalpha_bits: 4\nn: 8f\ne: 31\nd: 6a\n"
        );
        let parsed = parse_key_file(&text).unwrap();
        match &parsed {
            KeyFile::Public { alpha_bits, key } => {
                assert_eq!(*alpha_bits, 4);
                assert_eq!(key, &sample_public());
            }
            _ => panic!("wrong kind"),
        }
        let KeyFile::Public { alpha_bits, key } = parsed else {
            unreachable!()
        };
        assert_eq!(emit_public_key_file(alpha_bits, &key), text);
    }

    #[test]
    fn private_key_round_trips() {
        let key = PrivateKey {
            k: BigUint::from(11u32),
            v: BigUint::from(7u32),
            y: BigUint::from(3u32),
        };
        let text = emit_private_key_file(4, &key);
        match parse_key_file(&text).unwrap() {
            KeyFile::Private { key: parsed, .. } => assert_eq!(parsed, key),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn unknown_and_reordered_fields_are_rejected() {
        let good = emit_public_key_file(4, &sample_public());
        assert!(parse_key_file(&good.replace("n: 8f", "m: 8f")).is_err());
        assert!(parse_key_file(&good.replace("kind: public", "kind: secret")).is_err());
        assert!(parse_key_file(&good.replace("AMOUN-KEY v1", "AMOUN-KEY v2")).is_err());
        assert!(parse_key_file(&format!("{good}extra\n")).is_err());
        assert!(
            parse_key_file(good.trim_end()).is_err(),
            "missing final newline"
        );
    }

    #[test]
    fn non_canonical_hex_is_rejected() {
        let good = emit_public_key_file(4, &sample_public());
        assert!(parse_key_file(&good.replace("n: 8f", "n: 08f")).is_err());
        assert!(parse_key_file(&good.replace("n: 8f", "n: 8F")).is_err());
        assert!(parse_key_file(&good.replace("n: 8f", "n: ")).is_err());
        assert!(parse_key_file(&good.replace("alpha_bits: 4", "alpha_bits: 04")).is_err());
    }
}
