//! `AMOUN-PRM v1`: key-generation parameter files, consumed by
//! `amoun group-init --params-from`.
//!
//! ```text
//! AMOUN-PRM v1
//! alpha_bits: 1024
//! v_bits: 512
//! t_bits: 128
//! r_bits: 128
//! f_bits: 128
//! ```

use amoun::KeyGenParams;

use super::{parse_decimal, FormatError, LineReader};

const MAGIC: &str = "AMOUN-PRM v1";

/// Serializes a parameter file.
pub fn emit_params_file(params: &KeyGenParams) -> String {
    format!(
        "{MAGIC}\nalpha_bits: {}\nv_bits: {}\nt_bits: {}\nr_bits: {}\nf_bits: {}\n",
        params.alpha_bits, params.v_bits, params.t_bits, params.r_bits, params.f_bits,
    )
}

/// Parses a parameter file. Structural parameter invariants are checked by
/// the caller, not here.
pub fn parse_params_file(text: &str) -> Result<KeyGenParams, FormatError> {
    let mut reader = LineReader::new(text);
    reader.expect_magic(MAGIC)?;
    let alpha_bits = parse_decimal("alpha_bits", reader.expect_field("alpha_bits")?)?;
    let v_bits = parse_decimal("v_bits", reader.expect_field("v_bits")?)?;
    let t_bits = parse_decimal("t_bits", reader.expect_field("t_bits")?)?;
    let r_bits = parse_decimal("r_bits", reader.expect_field("r_bits")?)?;
    let f_bits = parse_decimal("f_bits", reader.expect_field("f_bits")?)?;
    reader.finish()?;
    Ok(KeyGenParams::new(
        alpha_bits, v_bits, t_bits, r_bits, f_bits,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_byte_exactly() {
        let params = KeyGenParams::default();
        let text = emit_params_file(&params);
        let parsed = parse_params_file(&text).unwrap();
        assert_eq!(parsed, params);
        assert_eq!(emit_params_file(&parsed), text);
    }

    #[test]
    fn rejects_missing_fields() {
        let text = "AMOUN-PRM v1\nalpha_bits: 1024\n";
        assert!(matches!(
            parse_params_file(text),
            Err(FormatError::UnexpectedEnd)
        ));
    }
}
