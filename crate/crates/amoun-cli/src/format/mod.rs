//! On-disk formats: line-oriented text for keys, parameters, and group
//! state; a binary frame for ciphertexts. All of them round-trip
//! byte-exactly and reject anything non-canonical.

mod ciphertext;
mod groupfile;
mod keyfile;
mod params;

pub use ciphertext::{parse_ciphertext_file, CiphertextFile};
pub use groupfile::{emit_group_file, parse_group_file};
pub use keyfile::{emit_private_key_file, emit_public_key_file, parse_key_file, KeyFile};
pub use params::{emit_params_file, parse_params_file};

use amoun::GroupError;
use num_bigint::BigUint;
use num_traits::Num;
use thiserror::Error;

/// Errors from parsing or validating any of the file formats.
#[derive(Debug, Error)]
pub enum FormatError {
    /// The first line is not the expected magic.
    #[error("bad or missing magic line")]
    BadMagic,
    /// The file ended before all fields were read.
    #[error("unexpected end of file")]
    UnexpectedEnd,
    /// A line did not carry the expected field.
    #[error("expected field `{expected}`, found `{found}`")]
    UnexpectedField {
        /// Field name the grammar requires here.
        expected: &'static str,
        /// What the line actually started with.
        found: String,
    },
    /// A field value failed validation.
    #[error("field `{field}`: {reason}")]
    BadValue {
        /// Field name.
        field: &'static str,
        /// Why the value was rejected.
        reason: &'static str,
    },
    /// Bytes or lines remain after the grammar was satisfied.
    #[error("trailing data after the last field")]
    TrailingData,
    /// A binary ciphertext frame is malformed or truncated.
    #[error("malformed ciphertext file: {reason}")]
    Malformed {
        /// Why the frame was rejected.
        reason: &'static str,
    },
    /// Parsed group state fails its structural invariants.
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Canonical lowercase hex: no leading zeros except the value `0` itself.
pub(crate) fn to_hex(value: &BigUint) -> String {
    format!("{value:x}")
}

pub(crate) fn parse_hex(field: &'static str, text: &str) -> Result<BigUint, FormatError> {
    if text.is_empty() {
        return Err(FormatError::BadValue {
            field,
            reason: "empty hex value",
        });
    }
    if !text
        .bytes()
        .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
    {
        return Err(FormatError::BadValue {
            field,
            reason: "hex must be lowercase [0-9a-f]",
        });
    }
    if text.len() > 1 && text.starts_with('0') {
        return Err(FormatError::BadValue {
            field,
            reason: "leading zeros are not canonical",
        });
    }
    BigUint::from_str_radix(text, 16).map_err(|_| FormatError::BadValue {
        field,
        reason: "not a hex integer",
    })
}

pub(crate) fn parse_decimal(field: &'static str, text: &str) -> Result<u32, FormatError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(FormatError::BadValue {
            field,
            reason: "expected a decimal integer",
        });
    }
    if text.len() > 1 && text.starts_with('0') {
        return Err(FormatError::BadValue {
            field,
            reason: "leading zeros are not canonical",
        });
    }
    text.parse().map_err(|_| FormatError::BadValue {
        field,
        reason: "decimal out of range",
    })
}

/// Strict line-by-line reader for the text formats.
pub(crate) struct LineReader<'a> {
    lines: core::str::Split<'a, char>,
}

impl<'a> LineReader<'a> {
    /// The input must end with a final newline; the split therefore yields
    /// an empty last fragment, checked by [`LineReader::finish`].
    pub(crate) fn new(text: &'a str) -> Self {
        Self {
            lines: text.split('\n'),
        }
    }

    pub(crate) fn expect_magic(&mut self, magic: &'static str) -> Result<(), FormatError> {
        match self.lines.next() {
            Some(line) if line == magic => Ok(()),
            _ => Err(FormatError::BadMagic),
        }
    }

    pub(crate) fn expect_field(&mut self, name: &'static str) -> Result<&'a str, FormatError> {
        let line = self.lines.next().ok_or(FormatError::UnexpectedEnd)?;
        if line.is_empty() {
            return Err(FormatError::UnexpectedEnd);
        }
        match line.split_once(": ") {
            Some((key, value)) if key == name => Ok(value),
            _ => Err(FormatError::UnexpectedField {
                expected: name,
                found: line.to_string(),
            }),
        }
    }

    pub(crate) fn finish(mut self) -> Result<(), FormatError> {
        match self.lines.next() {
            Some("") => {}
            Some(_) => return Err(FormatError::TrailingData),
            None => return Err(FormatError::UnexpectedEnd),
        }
        if self.lines.next().is_some() {
            return Err(FormatError::TrailingData);
        }
        Ok(())
    }
}

pub(crate) fn validate_group_id(field: &'static str, id: &str) -> Result<(), FormatError> {
    let ok = !id.is_empty()
        && id.len() <= 64
        && id
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-' || b == b'_');
    if ok {
        Ok(())
    } else {
        Err(FormatError::BadValue {
            field,
            reason: "group ids are 1..=64 chars of [0-9a-z_-]",
        })
    }
}
