//! Multi-RSA: per-recipient RSA sub-ciphertexts combined into one integer
//! with the same CRT basis weights the main scheme uses.
//!
//! `C = (Σ (m_i^e_i mod N_i)·AX_i) mod X`; recipient `i` decrypts with
//! plain RSA after reducing: `m_i = (C mod N_i)^d_i mod N_i`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::baselines::rsa::{rsa_decrypt, RsaKeyPair};
use crate::error::MultiRsaError;
use crate::numeric::{mod_inverse, mod_pow};

/// Per-recipient public material plus its CRT basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRsaEntry {
    /// Recipient modulus.
    pub n: BigUint,
    /// Recipient public exponent.
    pub e: BigUint,
    /// CRT basis element `A·X/N`.
    pub ax: BigUint,
}

/// Sender-side state for a Multi-RSA receiving group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRsaContext {
    entries: Vec<MultiRsaEntry>,
    x_modulus: BigUint,
}

impl MultiRsaContext {
    /// Per-recipient entries, in recipient order.
    pub fn entries(&self) -> &[MultiRsaEntry] {
        &self.entries
    }

    /// Product of all recipient moduli.
    pub fn x_modulus(&self) -> &BigUint {
        &self.x_modulus
    }

    /// Number of recipients.
    pub fn recipient_count(&self) -> usize {
        self.entries.len()
    }
}

/// Builds the CRT context from `(N, e)` public pairs; needs at least two
/// recipients with pairwise coprime moduli.
pub fn multirsa_init(public_keys: &[(BigUint, BigUint)]) -> Result<MultiRsaContext, MultiRsaError> {
    if public_keys.len() < 2 {
        return Err(MultiRsaError::GroupTooSmall);
    }
    for i in 0..public_keys.len() {
        for j in (i + 1)..public_keys.len() {
            if !public_keys[i].0.gcd(&public_keys[j].0).is_one() {
                return Err(MultiRsaError::ModuliNotCoprime { i, j });
            }
        }
    }
    let x_modulus = public_keys
        .iter()
        .fold(BigUint::one(), |acc, (n, _)| acc * n);
    let mut entries = Vec::with_capacity(public_keys.len());
    for (i, (n, e)) in public_keys.iter().enumerate() {
        let x_over_n = &x_modulus / n;
        let a =
            mod_inverse(&x_over_n, n).map_err(|_| MultiRsaError::ModuliNotCoprime { i, j: i })?;
        entries.push(MultiRsaEntry {
            n: n.clone(),
            e: e.clone(),
            ax: a * x_over_n,
        });
    }
    Ok(MultiRsaContext { entries, x_modulus })
}

/// Combines per-recipient RSA encryptions into the group ciphertext.
pub fn multirsa_encrypt(
    ctx: &MultiRsaContext,
    messages: &[BigUint],
) -> Result<BigUint, MultiRsaError> {
    if messages.len() != ctx.entries.len() {
        return Err(MultiRsaError::LengthMismatch {
            messages: messages.len(),
            recipients: ctx.entries.len(),
        });
    }
    for (index, (m, entry)) in messages.iter().zip(&ctx.entries).enumerate() {
        if m >= &entry.n {
            return Err(MultiRsaError::MessageTooLarge { index });
        }
    }
    let mut acc = BigUint::zero();
    for (m, entry) in messages.iter().zip(&ctx.entries) {
        let sub = mod_pow(m, &entry.e, &entry.n);
        acc = (acc + sub * &entry.ax) % &ctx.x_modulus;
    }
    Ok(acc)
}

/// Recipient-side decryption of the combined ciphertext.
pub fn multirsa_decrypt(key: &RsaKeyPair, c: &BigUint) -> BigUint {
    rsa_decrypt(key, c)
}
