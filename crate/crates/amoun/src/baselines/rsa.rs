//! Textbook RSA, plus the length-prefixed concatenation used to compare a
//! non-multi-recipient scheme fairly against batched ones.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{KeyGenError, RsaError};
use crate::numeric::{is_probable_prime, mod_inverse, mod_pow, random_prime, RandomSource};

const KEY_ATTEMPTS: u32 = 64;
const E_ATTEMPTS: u32 = 256;

/// Textbook RSA key material.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaKeyPair {
    /// Modulus `P·Q`.
    pub n: BigUint,
    /// Public exponent, below `P` and coprime with `(P-1)(Q-1)`.
    pub e: BigUint,
    /// Private exponent `e^-1 mod (P-1)(Q-1)`.
    pub d: BigUint,
    /// First prime.
    pub p: BigUint,
    /// Second prime.
    pub q: BigUint,
}

/// Generates an RSA keypair from two fresh primes of `bits_per_prime` bits.
pub fn rsa_keygen(bits_per_prime: u32, rng: &mut RandomSource) -> Result<RsaKeyPair, KeyGenError> {
    for _ in 0..KEY_ATTEMPTS {
        let p = random_prime(bits_per_prime, rng).map_err(|_| KeyGenError::RetryBudgetExhausted)?;
        let mut q = p.clone();
        for _ in 0..KEY_ATTEMPTS {
            q = random_prime(bits_per_prime, rng).map_err(|_| KeyGenError::RetryBudgetExhausted)?;
            if q != p {
                break;
            }
        }
        if q == p {
            continue;
        }
        let phi = (&p - BigUint::one()) * (&q - BigUint::one());
        let two = BigUint::from(2u32);
        for _ in 0..E_ATTEMPTS {
            // e uniform in [2, P), coprime with phi
            let e = rng.random_below(&(&p - &two)) + &two;
            if e.gcd(&phi).is_one() {
                let d = mod_inverse(&e, &phi).expect("gcd(e, phi) = 1");
                return Ok(RsaKeyPair {
                    n: &p * &q,
                    e,
                    d,
                    p,
                    q,
                });
            }
        }
    }
    Err(KeyGenError::RetryBudgetExhausted)
}

/// Assembles a keypair from caller-chosen primes and exponent (test hook).
pub fn rsa_keypair_from_primes(
    p: BigUint,
    q: BigUint,
    e: BigUint,
) -> Result<RsaKeyPair, KeyGenError> {
    let mut check_rng = RandomSource::from_seed(0x25a);
    if !is_probable_prime(&p, 16, &mut check_rng) || !is_probable_prime(&q, 16, &mut check_rng) {
        return Err(KeyGenError::InvalidMaterial {
            reason: "P and Q must be prime",
        });
    }
    if p == q {
        return Err(KeyGenError::InvalidMaterial {
            reason: "P and Q must be distinct",
        });
    }
    if e >= p {
        return Err(KeyGenError::InvalidMaterial {
            reason: "e must be below P",
        });
    }
    let phi = (&p - BigUint::one()) * (&q - BigUint::one());
    if !e.gcd(&phi).is_one() {
        return Err(KeyGenError::InvalidMaterial {
            reason: "e must be coprime with (P-1)(Q-1)",
        });
    }
    let d = mod_inverse(&e, &phi).expect("gcd(e, phi) = 1");
    Ok(RsaKeyPair {
        n: &p * &q,
        e,
        d,
        p,
        q,
    })
}

/// `c = m^e mod N`; `m` must be below the modulus.
pub fn rsa_encrypt(key: &RsaKeyPair, m: &BigUint) -> Result<BigUint, RsaError> {
    if m >= &key.n {
        return Err(RsaError::MessageTooLarge);
    }
    Ok(mod_pow(m, &key.e, &key.n))
}

/// `m = c^d mod N`. Inputs not below `N` are reduced first, which is what
/// Multi-RSA relies on when recipients decrypt the combined ciphertext.
pub fn rsa_decrypt(key: &RsaKeyPair, c: &BigUint) -> BigUint {
    mod_pow(&(c % &key.n), &key.d, &key.n)
}

/// Encrypts per recipient and concatenates the sub-ciphertexts, each with a
/// 4-byte big-endian length prefix.
pub fn rsa_concat_encrypt(keys: &[RsaKeyPair], messages: &[BigUint]) -> Result<Vec<u8>, RsaError> {
    if keys.len() != messages.len() {
        return Err(RsaError::LengthMismatch {
            messages: messages.len(),
            keys: keys.len(),
        });
    }
    let mut out = Vec::new();
    for (key, m) in keys.iter().zip(messages) {
        let c = rsa_encrypt(key, m)?;
        let bytes = if c.is_zero() {
            Vec::new()
        } else {
            c.to_bytes_be()
        };
        out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
        out.extend_from_slice(&bytes);
    }
    Ok(out)
}

/// Extracts sub-ciphertext `index` from a concatenated buffer.
pub fn rsa_concat_slot(buffer: &[u8], index: usize) -> Result<BigUint, RsaError> {
    let mut offset = 0usize;
    let mut slot = 0usize;
    while offset < buffer.len() {
        let len_bytes: [u8; 4] = buffer
            .get(offset..offset + 4)
            .and_then(|s| s.try_into().ok())
            .ok_or(RsaError::MalformedBuffer)?;
        let len = u32::from_be_bytes(len_bytes) as usize;
        offset += 4;
        let payload = buffer
            .get(offset..offset + len)
            .ok_or(RsaError::MalformedBuffer)?;
        if slot == index {
            return Ok(BigUint::from_bytes_be(payload));
        }
        offset += len;
        slot += 1;
    }
    Err(RsaError::MalformedBuffer)
}
