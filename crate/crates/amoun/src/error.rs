//! Error types shared across the crate.

use thiserror::Error;

/// Errors from the number-theoretic primitives.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    /// The element has no inverse modulo the given modulus (gcd > 1).
    #[error("value is not invertible for the given modulus")]
    NotInvertible,
    /// A bounded random search (e.g. prime generation) ran out of attempts.
    #[error("retry budget exhausted after {attempts} attempts")]
    RetryExhausted {
        /// Number of attempts made before giving up.
        attempts: u32,
    },
}

/// Invalid key-generation parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    /// `v_bits` must be at least 8.
    #[error("v_bits must be at least 8, got {v_bits}")]
    VBitsTooSmall {
        /// Offending value.
        v_bits: u32,
    },
    /// `alpha_bits` must strictly exceed `v_bits`.
    #[error("alpha_bits ({alpha_bits}) must exceed v_bits ({v_bits})")]
    AlphaNotAboveV {
        /// Offending `alpha_bits`.
        alpha_bits: u32,
        /// Offending `v_bits`.
        v_bits: u32,
    },
    /// The decryption-correctness bound needs `v_bits + t_bits + r_bits + 2 < alpha_bits`.
    #[error("v_bits + t_bits + r_bits + 2 must stay below alpha_bits")]
    NoMessageRoom,
    /// Coin bit-lengths must be at least 1.
    #[error("t_bits, r_bits and f_bits must all be at least 1")]
    ZeroCoinBits,
}

/// Errors from key generation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KeyGenError {
    /// The supplied parameters violate their invariants.
    #[error(transparent)]
    InvalidParams(#[from] ParamsError),
    /// Could not produce invariant-satisfying key material within the retry budget.
    #[error("key generation retry budget exhausted")]
    RetryBudgetExhausted,
    /// Supplied key material is inconsistent (prime injection path).
    #[error("injected key material is invalid: {reason}")]
    InvalidMaterial {
        /// Human-readable reason.
        reason: &'static str,
    },
}

/// Errors from the message-budget computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    /// The configuration cannot carry even a single byte per message.
    #[error("message budget is below 8 bits for these parameters")]
    Empty,
    /// The public key's modulus size does not match the parameters.
    #[error("public key size does not match alpha_bits = {alpha_bits}")]
    KeyMismatch {
        /// `alpha_bits` the caller claimed.
        alpha_bits: u32,
    },
}

/// Errors from group initialization and membership changes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    /// Two recipients' moduli share a factor; keys must be regenerated.
    #[error("moduli of recipients {i} and {j} are not coprime")]
    ModuliNotCoprime {
        /// First offending recipient index.
        i: usize,
        /// Second offending recipient index.
        j: usize,
    },
    /// Groups must keep at least two recipients.
    #[error("group would fall below two recipients")]
    GroupTooSmall,
    /// Recipient index outside the group.
    #[error("recipient index {index} out of range for group of {len}")]
    IndexOutOfRange {
        /// Requested index.
        index: usize,
        /// Group size.
        len: usize,
    },
    /// A recipient's message budget is empty under these parameters.
    #[error(transparent)]
    Budget(#[from] BudgetError),
    /// The supplied parameters violate their invariants.
    #[error(transparent)]
    InvalidParams(#[from] ParamsError),
    /// Stored group state fails its structural invariants (corrupt file).
    #[error("group state is inconsistent: {reason}")]
    Inconsistent {
        /// Human-readable reason.
        reason: &'static str,
    },
}

/// Errors from encryption.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncryptError {
    /// Message vector length differs from the number of recipients.
    #[error("got {messages} messages for {recipients} recipients")]
    LengthMismatch {
        /// Number of messages supplied.
        messages: usize,
        /// Number of recipients in the context.
        recipients: usize,
    },
    /// A message exceeds its recipient's budget.
    #[error("message {index} needs {bits} bits but the budget is {budget_bits}")]
    MessageTooLarge {
        /// Offending message index.
        index: usize,
        /// Bit-length of the encoded message.
        bits: u64,
        /// Allowed bit-length.
        budget_bits: u32,
    },
}

/// Errors from integer/byte message conversion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    /// The integer does not fit in the declared byte length.
    #[error("value needs {needed} bytes but {declared} were declared")]
    Overflow {
        /// Minimal byte length of the value.
        needed: usize,
        /// Declared byte length.
        declared: usize,
    },
}

/// Errors from the RSA baseline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RsaError {
    /// Plaintext not below the modulus.
    #[error("message must be smaller than the modulus")]
    MessageTooLarge,
    /// Input lists differ in length.
    #[error("got {messages} messages for {keys} keys")]
    LengthMismatch {
        /// Number of messages supplied.
        messages: usize,
        /// Number of keys supplied.
        keys: usize,
    },
    /// A concatenated ciphertext buffer is malformed or the slot is missing.
    #[error("malformed concatenated ciphertext")]
    MalformedBuffer,
}

/// Errors from the Multi-RSA baseline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiRsaError {
    /// Two recipients' moduli share a factor.
    #[error("moduli of recipients {i} and {j} are not coprime")]
    ModuliNotCoprime {
        /// First offending recipient index.
        i: usize,
        /// Second offending recipient index.
        j: usize,
    },
    /// Multi-RSA needs at least two recipients.
    #[error("group must have at least two recipients")]
    GroupTooSmall,
    /// Plaintext not below the recipient's modulus.
    #[error("message {index} must be smaller than its recipient's modulus")]
    MessageTooLarge {
        /// Offending message index.
        index: usize,
    },
    /// Input lists differ in length.
    #[error("got {messages} messages for {recipients} recipients")]
    LengthMismatch {
        /// Number of messages supplied.
        messages: usize,
        /// Number of recipients in the context.
        recipients: usize,
    },
}
