//! AMOUN multi-recipient asymmetric encryption.
//!
//! A sender packs one message per recipient into a single group ciphertext
//! using Chinese-Remainder-Theorem batching over the recipients' public
//! moduli; each recipient recovers only its own message with a cheap
//! private-key reduction. The crate also ships textbook RSA and a
//! CRT-combined Multi-RSA as benchmark baselines.
//!
//! The core is `no_std` compatible (requires `alloc`); everything touching
//! files, clocks, and the command line lives in the companion `amoun-cli`
//! crate.
//!
//! **This is a research scheme.** It has no ciphertext integrity, no
//! CCA security, no padding, and no side-channel hardening. Do not use it
//! to protect real data.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod baselines;
pub mod cipher;
mod error;
pub mod group;
pub mod keys;
pub mod numeric;

pub use cipher::{
    decode_message, decrypt, decrypt_integer, encode_message, encrypt, encrypt_with_coins,
    CiphertextEnvelope, MessageVector,
};
pub use error::{
    BudgetError, DecodeError, EncryptError, GroupError, KeyGenError, MultiRsaError, NumericError,
    ParamsError, RsaError,
};
pub use group::{GroupContext, GroupEntry, InitCoins};
pub use keys::{
    key_generate, keypair_from_primes, message_budget, KeyGenParams, PrivateKey, PublicKey,
};
pub use numeric::RandomSource;
