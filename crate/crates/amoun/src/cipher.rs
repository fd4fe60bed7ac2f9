//! Batched encryption and per-recipient decryption.
//!
//! One group ciphertext carries a distinct message per recipient:
//! `C = (Σ m_i·e'_i·AX_i) mod X` with `e'_i = e_i + N'_i·r_i` freshly
//! randomized by the coin `r_i` on every call. Recipient `i` recovers its
//! message as `m_i = ((C mod k_i)·y_i) mod v_i`.
//!
//! Decryption cannot detect a wrong key: decrypting with a key that is not
//! in the originating group silently yields garbage bytes. Integrity and
//! authentication sit outside this scheme.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{DecodeError, EncryptError};
use crate::group::GroupContext;
use crate::keys::PrivateKey;
use crate::numeric::RandomSource;

/// Ordered list of per-recipient payloads, positionally aligned with the
/// group context entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageVector {
    messages: Vec<Vec<u8>>,
}

impl MessageVector {
    /// Wraps one byte payload per recipient.
    pub fn new(messages: Vec<Vec<u8>>) -> Self {
        Self { messages }
    }

    /// Number of payloads.
    pub fn len(&self) -> usize {
        self.messages.len()
    }

    /// True when there are no payloads.
    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    /// Payload for recipient `index`.
    pub fn get(&self, index: usize) -> Option<&[u8]> {
        self.messages.get(index).map(Vec::as_slice)
    }

    /// Iterates payloads in recipient order.
    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.messages.iter().map(Vec::as_slice)
    }
}

impl From<Vec<Vec<u8>>> for MessageVector {
    fn from(messages: Vec<Vec<u8>>) -> Self {
        Self::new(messages)
    }
}

/// The single group ciphertext plus framing metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiphertextEnvelope {
    /// The combined ciphertext, reduced modulo the group's `X`.
    pub c: BigUint,
    /// Identifier of the originating group.
    pub group_id: String,
    /// Number of recipients the ciphertext addresses.
    pub recipient_count: u32,
}

/// Big-endian interpretation of `bytes` as a non-negative integer.
pub fn encode_message(bytes: &[u8]) -> BigUint {
    BigUint::from_bytes_be(bytes)
}

/// Inverse of [`encode_message`] for a known byte length.
///
/// Leading zero bytes are restored from `declared_length`; fails when the
/// value needs more bytes than declared.
pub fn decode_message(value: &BigUint, declared_length: usize) -> Result<Vec<u8>, DecodeError> {
    let minimal = minimal_bytes(value);
    if minimal.len() > declared_length {
        return Err(DecodeError::Overflow {
            needed: minimal.len(),
            declared: declared_length,
        });
    }
    let mut out = Vec::with_capacity(declared_length);
    out.resize(declared_length - minimal.len(), 0);
    out.extend_from_slice(&minimal);
    Ok(out)
}

/// Encodes all payloads and checks each against its recipient's budget.
///
/// Every violation is caught here, before any ciphertext arithmetic runs.
pub fn encode_messages_checked(
    ctx: &GroupContext,
    messages: &MessageVector,
) -> Result<Vec<BigUint>, EncryptError> {
    if messages.len() != ctx.recipient_count() {
        return Err(EncryptError::LengthMismatch {
            messages: messages.len(),
            recipients: ctx.recipient_count(),
        });
    }
    let mut encoded = Vec::with_capacity(messages.len());
    for (index, (payload, entry)) in messages.iter().zip(ctx.entries()).enumerate() {
        let m = encode_message(payload);
        if m.bits() > u64::from(entry.budget_bits) {
            return Err(EncryptError::MessageTooLarge {
                index,
                bits: m.bits(),
                budget_bits: entry.budget_bits,
            });
        }
        encoded.push(m);
    }
    Ok(encoded)
}

/// Encrypts one message per recipient into a single envelope.
///
/// Draws a fresh nonzero coin `r_i` per recipient, so repeated calls on the
/// same inputs produce distinct ciphertexts.
pub fn encrypt(
    ctx: &GroupContext,
    messages: &MessageVector,
    rng: &mut RandomSource,
) -> Result<CiphertextEnvelope, EncryptError> {
    let encoded = encode_messages_checked(ctx, messages)?;
    let r_bits = ctx.params().r_bits;
    let coins: Vec<BigUint> = (0..ctx.recipient_count())
        .map(|_| rng.random_nonzero_bits(r_bits))
        .collect();
    Ok(combine(ctx, &encoded, &coins))
}

/// Encrypts with caller-chosen coins.
///
/// White-box hook for tests; zero coins are accepted here even though
/// production encryption never draws them.
pub fn encrypt_with_coins(
    ctx: &GroupContext,
    messages: &MessageVector,
    coins: &[BigUint],
) -> Result<CiphertextEnvelope, EncryptError> {
    let encoded = encode_messages_checked(ctx, messages)?;
    if coins.len() != ctx.recipient_count() {
        return Err(EncryptError::LengthMismatch {
            messages: coins.len(),
            recipients: ctx.recipient_count(),
        });
    }
    Ok(combine(ctx, &encoded, coins))
}

/// `C = (Σ m_i·(e_i + N'_i·r_i)·AX_i) mod X`, reducing after every term to
/// bound intermediate size.
fn combine(ctx: &GroupContext, encoded: &[BigUint], coins: &[BigUint]) -> CiphertextEnvelope {
    let x = ctx.x_modulus();
    let mut acc = BigUint::zero();
    for ((m, entry), r) in encoded.iter().zip(ctx.entries()).zip(coins.iter()) {
        let e_prime = &entry.public_key.e + &entry.n_prime * r;
        let term = m * (e_prime * &entry.ax);
        acc = (acc + term) % x;
    }
    CiphertextEnvelope {
        c: acc,
        group_id: String::from(ctx.group_id()),
        recipient_count: ctx.recipient_count() as u32,
    }
}

/// Recovers recipient `i`'s message integer: `((C mod k)·y) mod v`.
pub fn decrypt_integer(private_key: &PrivateKey, envelope: &CiphertextEnvelope) -> BigUint {
    ((&envelope.c % &private_key.k) * &private_key.y) % &private_key.v
}

/// Recovers the message as minimal big-endian bytes (empty for zero).
///
/// Byte lengths are not part of the scheme; framing layers that preserve
/// leading zeros carry a declared length and use [`decode_message`].
pub fn decrypt(private_key: &PrivateKey, envelope: &CiphertextEnvelope) -> Vec<u8> {
    minimal_bytes(&decrypt_integer(private_key, envelope))
}

/// Minimal big-endian encoding; zero encodes to no bytes.
fn minimal_bytes(value: &BigUint) -> Vec<u8> {
    if value.is_zero() {
        Vec::new()
    } else {
        value.to_bytes_be()
    }
}
