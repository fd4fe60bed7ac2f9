//! `AMN1`: binary ciphertext files.
//!
//! Layout, all integers big-endian:
//!
//! ```text
//! magic            4 bytes  "AMN1"
//! recipient_count  u32
//! group_id length  u32, then that many bytes
//! declared lengths u32 per recipient (original plaintext byte length)
//! block_count      u32
//! per block:       u32 ciphertext length, then minimal big-endian bytes
//! ```
//!
//! Parsing consumes the whole buffer; truncation and trailing bytes are
//! both detected. Ciphertext bytes are canonical (no leading zero byte).

use num_bigint::BigUint;
use num_traits::Zero;

use super::{validate_group_id, FormatError};

const MAGIC: &[u8; 4] = b"AMN1";
const MAX_RECIPIENTS: u32 = 1 << 16;
const MAX_BLOCKS: u32 = 1 << 20;
const MAX_C_BYTES: u32 = 1 << 24;

/// A parsed (or to-be-written) ciphertext file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiphertextFile {
    /// Identifier of the originating group.
    pub group_id: String,
    /// Original plaintext byte length per recipient, in recipient order.
    pub declared_lengths: Vec<u32>,
    /// One group ciphertext per block.
    pub blocks: Vec<BigUint>,
}

impl CiphertextFile {
    /// Number of recipients the file addresses.
    pub fn recipient_count(&self) -> usize {
        self.declared_lengths.len()
    }

    /// Serializes to the binary layout.
    pub fn emit(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&(self.declared_lengths.len() as u32).to_be_bytes());
        out.extend_from_slice(&(self.group_id.len() as u32).to_be_bytes());
        out.extend_from_slice(self.group_id.as_bytes());
        for &len in &self.declared_lengths {
            out.extend_from_slice(&len.to_be_bytes());
        }
        out.extend_from_slice(&(self.blocks.len() as u32).to_be_bytes());
        for c in &self.blocks {
            let bytes = if c.is_zero() {
                Vec::new()
            } else {
                c.to_bytes_be()
            };
            out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
            out.extend_from_slice(&bytes);
        }
        out
    }
}

struct ByteReader<'a> {
    data: &'a [u8],
    offset: usize,
}

impl<'a> ByteReader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8], FormatError> {
        let end = self
            .offset
            .checked_add(len)
            .filter(|&end| end <= self.data.len())
            .ok_or(FormatError::Malformed {
                reason: "truncated",
            })?;
        let slice = &self.data[self.offset..end];
        self.offset = end;
        Ok(slice)
    }

    fn take_u32(&mut self) -> Result<u32, FormatError> {
        let bytes: [u8; 4] = self.take(4)?.try_into().expect("length checked");
        Ok(u32::from_be_bytes(bytes))
    }
}

/// Parses a binary ciphertext file.
pub fn parse_ciphertext_file(data: &[u8]) -> Result<CiphertextFile, FormatError> {
    let mut reader = ByteReader { data, offset: 0 };
    if reader.take(4)? != MAGIC {
        return Err(FormatError::BadMagic);
    }
    let recipient_count = reader.take_u32()?;
    if recipient_count == 0 || recipient_count > MAX_RECIPIENTS {
        return Err(FormatError::Malformed {
            reason: "recipient count out of range",
        });
    }
    let gid_len = reader.take_u32()?;
    if gid_len > 64 {
        return Err(FormatError::Malformed {
            reason: "group id too long",
        });
    }
    let gid_bytes = reader.take(gid_len as usize)?;
    let group_id = core::str::from_utf8(gid_bytes)
        .map_err(|_| FormatError::Malformed {
            reason: "group id is not UTF-8",
        })?
        .to_string();
    validate_group_id("group_id", &group_id)?;
    let mut declared_lengths = Vec::with_capacity(recipient_count as usize);
    for _ in 0..recipient_count {
        declared_lengths.push(reader.take_u32()?);
    }
    let block_count = reader.take_u32()?;
    if block_count > MAX_BLOCKS {
        return Err(FormatError::Malformed {
            reason: "block count out of range",
        });
    }
    let mut blocks = Vec::with_capacity(block_count as usize);
    for _ in 0..block_count {
        let len = reader.take_u32()?;
        if len > MAX_C_BYTES {
            return Err(FormatError::Malformed {
                reason: "ciphertext length out of range",
            });
        }
        let bytes = reader.take(len as usize)?;
        if !bytes.is_empty() && bytes[0] == 0 {
            return Err(FormatError::Malformed {
                reason: "ciphertext bytes are not canonical",
            });
        }
        blocks.push(BigUint::from_bytes_be(bytes));
    }
    if reader.offset != data.len() {
        return Err(FormatError::TrailingData);
    }
    Ok(CiphertextFile {
        group_id,
        declared_lengths,
        blocks,
    })
}
