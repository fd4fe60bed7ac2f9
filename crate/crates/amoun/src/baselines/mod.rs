//! Benchmark baselines: textbook RSA and CRT-combined Multi-RSA.
//!
//! Both are deliberately unpadded textbook constructions; they exist to be
//! timed against the main scheme, not to be used.

pub mod multi_rsa;
pub mod rsa;

pub use multi_rsa::{
    multirsa_decrypt, multirsa_encrypt, multirsa_init, MultiRsaContext, MultiRsaEntry,
};
pub use rsa::{
    rsa_concat_encrypt, rsa_concat_slot, rsa_decrypt, rsa_encrypt, rsa_keygen,
    rsa_keypair_from_primes, RsaKeyPair,
};
