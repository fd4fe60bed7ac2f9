//! Key generation and the sender-side message budget.
//!
//! A recipient's private key is the triple `(k, v, y)`; the published public
//! key is `(N, e, d)` with `N = k·p`, `e = (k·q + y^-1 mod v) mod N`, and
//! `d = v^k mod N`. The inverse of `y` acts as a noise term that forces
//! `gcd(N, e) = 1`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{BudgetError, KeyGenError, ParamsError};
use crate::numeric::{is_probable_prime, mod_inverse, mod_pow, random_prime, RandomSource};

/// Full fresh-prime redraws before key generation gives up.
const KEY_ATTEMPTS: u32 = 64;
/// Redraws of `q` alone when only the `e`-side gcd conditions fail.
const Q_REDRAW_ATTEMPTS: u32 = 16;
/// Redraws allowed while hunting for a prime distinct from earlier picks.
/// Only relevant at tiny sizes where collisions are likely.
const DISTINCT_ATTEMPTS: u32 = 32;

/// Bit sizes controlling key generation.
///
/// `alpha_bits` sizes the primes `k`, `p`, `q`; `v_bits` sizes the smaller
/// prime `v`; `t_bits`, `r_bits`, `f_bits` size the sender-side random
/// integers. Decryption correctness needs
/// `v_bits + t_bits + r_bits + 2 < alpha_bits`, which is exactly what keeps
/// the message budget non-empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyGenParams {
    /// Bit size of the primes `k`, `p`, `q`.
    pub alpha_bits: u32,
    /// Bit size of the prime `v`; strictly below `alpha_bits`.
    pub v_bits: u32,
    /// Bit size of the initialization coin `t`.
    pub t_bits: u32,
    /// Bit size of the per-encryption coin `r`.
    pub r_bits: u32,
    /// Bit size of the initialization coin `f`.
    pub f_bits: u32,
}

impl KeyGenParams {
    /// Convenience constructor.
    pub const fn new(alpha_bits: u32, v_bits: u32, t_bits: u32, r_bits: u32, f_bits: u32) -> Self {
        Self {
            alpha_bits,
            v_bits,
            t_bits,
            r_bits,
            f_bits,
        }
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.v_bits < 8 {
            return Err(ParamsError::VBitsTooSmall {
                v_bits: self.v_bits,
            });
        }
        if self.alpha_bits <= self.v_bits {
            return Err(ParamsError::AlphaNotAboveV {
                alpha_bits: self.alpha_bits,
                v_bits: self.v_bits,
            });
        }
        if self.t_bits == 0 || self.r_bits == 0 || self.f_bits == 0 {
            return Err(ParamsError::ZeroCoinBits);
        }
        let consumed = u64::from(self.v_bits) + u64::from(self.t_bits) + u64::from(self.r_bits) + 2;
        if consumed >= u64::from(self.alpha_bits) {
            return Err(ParamsError::NoMessageRoom);
        }
        Ok(())
    }
}

impl Default for KeyGenParams {
    /// 1024-bit primes with a 512-bit `v` and 128-bit coins.
    fn default() -> Self {
        Self::new(1024, 512, 128, 128, 128)
    }
}

/// Recipient secret triple; used only in decryption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    /// Prime of `alpha_bits` bits; the recipient's CRT modulus.
    pub k: BigUint,
    /// Prime of `v_bits` bits; the message-space modulus.
    pub v: BigUint,
    /// Blinding factor in `[1, v)`.
    pub y: BigUint,
}

/// Published triple from which the sender derives everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    /// `k·p`.
    pub n: BigUint,
    /// `(k·q + y^-1 mod v) mod N`.
    pub e: BigUint,
    /// `v^k mod N`.
    pub d: BigUint,
}

/// Generates a keypair under `params`.
///
/// Draws four distinct probable primes and `y` uniform in `[1, v)`, then
/// checks `gcd(N, e) = gcd(N, d) = gcd(e, d) = 1`, redrawing `q` when only
/// the `e`-side conditions fail and starting over otherwise. Bounded
/// retries; never loops forever.
pub fn key_generate(
    params: &KeyGenParams,
    rng: &mut RandomSource,
) -> Result<(PublicKey, PrivateKey), KeyGenError> {
    params.validate()?;
    let one = BigUint::one();
    for _ in 0..KEY_ATTEMPTS {
        let k = draw_distinct_prime(params.alpha_bits, &[], rng)?;
        let p = draw_distinct_prime(params.alpha_bits, &[&k], rng)?;
        let mut q = draw_distinct_prime(params.alpha_bits, &[&k, &p], rng)?;
        let v = draw_distinct_prime(params.v_bits, &[&k, &p, &q], rng)?;
        let y = rng.random_below(&(&v - &one)) + &one;
        let y_inv = mod_inverse(&y, &v).expect("v is prime and 0 < y < v");
        let n = &k * &p;
        let d = mod_pow(&v, &k, &n);
        if !n.gcd(&d).is_one() {
            continue; // p divides d; fresh primes needed
        }
        for _ in 0..Q_REDRAW_ATTEMPTS {
            let e = (&k * &q + &y_inv) % &n;
            if n.gcd(&e).is_one() && e.gcd(&d).is_one() {
                debug_assert_eq!(&d % &k, &v % &k, "Fermat identity must hold");
                return Ok((PublicKey { n, e, d }, PrivateKey { k, v, y }));
            }
            q = draw_distinct_prime(params.alpha_bits, &[&k, &p], rng)?;
        }
    }
    Err(KeyGenError::RetryBudgetExhausted)
}

/// Assembles a keypair from caller-chosen primes and blinding factor.
///
/// Injection hook for tests and worked examples. Validates primality,
/// distinctness, the range of `y`, and the gcd conditions, but not bit
/// sizes.
pub fn keypair_from_primes(
    k: BigUint,
    p: BigUint,
    q: BigUint,
    v: BigUint,
    y: BigUint,
) -> Result<(PublicKey, PrivateKey), KeyGenError> {
    let mut check_rng = RandomSource::from_seed(0x70e5);
    for prime in [&k, &p, &q, &v] {
        if !is_probable_prime(prime, 16, &mut check_rng) {
            return Err(KeyGenError::InvalidMaterial {
                reason: "all of k, p, q, v must be prime",
            });
        }
    }
    let primes = [&k, &p, &q, &v];
    for i in 0..primes.len() {
        for j in (i + 1)..primes.len() {
            if primes[i] == primes[j] {
                return Err(KeyGenError::InvalidMaterial {
                    reason: "k, p, q, v must be pairwise distinct",
                });
            }
        }
    }
    if y < BigUint::one() || y >= v {
        return Err(KeyGenError::InvalidMaterial {
            reason: "y must lie in [1, v)",
        });
    }
    let y_inv = mod_inverse(&y, &v).expect("v is prime and 0 < y < v");
    let n = &k * &p;
    let e = (&k * &q + &y_inv) % &n;
    let d = mod_pow(&v, &k, &n);
    if !(n.gcd(&e).is_one() && n.gcd(&d).is_one() && e.gcd(&d).is_one()) {
        return Err(KeyGenError::InvalidMaterial {
            reason: "gcd conditions on (N, e, d) failed for these primes",
        });
    }
    Ok((PublicKey { n, e, d }, PrivateKey { k, v, y }))
}

/// Largest message bit-length the sender may use with this key.
///
/// Decryption recovers `m` only while `m·(y^-1 + v·t·r) < k`. The sender
/// knows neither `y^-1` nor `v`, so the bound is taken over worst-case
/// bit-lengths: `B = alpha_bits - (v_bits + t_bits + r_bits) - 2`, further
/// capped at `v_bits - 1` because `m < v` must also hold.
pub fn message_budget(public_key: &PublicKey, params: &KeyGenParams) -> Result<u32, BudgetError> {
    let n_bits = public_key.n.bits();
    let expected = 2 * u64::from(params.alpha_bits);
    if n_bits != expected && n_bits != expected - 1 {
        return Err(BudgetError::KeyMismatch {
            alpha_bits: params.alpha_bits,
        });
    }
    let available = i64::from(params.alpha_bits)
        - i64::from(params.v_bits)
        - i64::from(params.t_bits)
        - i64::from(params.r_bits)
        - 2;
    let cap = i64::from(params.v_bits) - 1;
    let budget = available.min(cap);
    if budget < 8 {
        return Err(BudgetError::Empty);
    }
    Ok(budget as u32)
}

fn draw_distinct_prime(
    bits: u32,
    exclude: &[&BigUint],
    rng: &mut RandomSource,
) -> Result<BigUint, KeyGenError> {
    for _ in 0..DISTINCT_ATTEMPTS {
        let candidate = random_prime(bits, rng).map_err(|_| KeyGenError::RetryBudgetExhausted)?;
        if !exclude.iter().any(|&x| *x == candidate) {
            return Ok(candidate);
        }
    }
    Err(KeyGenError::RetryBudgetExhausted)
}

/// Collects `count` keypairs whose moduli are pairwise coprime.
///
/// Redraws a keypair whenever its modulus shares a factor with an earlier
/// one, which at tiny sizes otherwise breaks the CRT precondition.
pub fn generate_coprime_keypairs(
    count: usize,
    params: &KeyGenParams,
    rng: &mut RandomSource,
) -> Result<Vec<(PublicKey, PrivateKey)>, KeyGenError> {
    let mut out: Vec<(PublicKey, PrivateKey)> = Vec::with_capacity(count);
    while out.len() < count {
        let mut accepted = None;
        for _ in 0..KEY_ATTEMPTS {
            let (pk, sk) = key_generate(params, rng)?;
            if out.iter().all(|(other, _)| other.n.gcd(&pk.n).is_one()) {
                accepted = Some((pk, sk));
                break;
            }
        }
        match accepted {
            Some(pair) => out.push(pair),
            None => return Err(KeyGenError::RetryBudgetExhausted),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn micro_key_one() -> (PublicKey, PrivateKey) {
        keypair_from_primes(
            BigUint::from(11u32),
            BigUint::from(13u32),
            BigUint::from(17u32),
            BigUint::from(7u32),
            BigUint::from(3u32),
        )
        .unwrap()
    }

    fn micro_key_two() -> (PublicKey, PrivateKey) {
        keypair_from_primes(
            BigUint::from(19u32),
            BigUint::from(23u32),
            BigUint::from(29u32),
            BigUint::from(5u32),
            BigUint::from(2u32),
        )
        .unwrap()
    }

    #[test]
    fn worked_example_key_one() {
        // y^-1 = 5 mod 7, k·q + y^-1 = 192, 192 mod 143 = 49, 7^11 mod 143 = 106.
        let (pk, sk) = micro_key_one();
        assert_eq!(sk.k, BigUint::from(11u32));
        assert_eq!(sk.v, BigUint::from(7u32));
        assert_eq!(sk.y, BigUint::from(3u32));
        assert_eq!(pk.n, BigUint::from(143u32));
        assert_eq!(pk.e, BigUint::from(49u32));
        assert_eq!(pk.d, BigUint::from(106u32));
    }

    #[test]
    fn worked_example_key_two() {
        let (pk, sk) = micro_key_two();
        assert_eq!(pk.n, BigUint::from(437u32));
        assert_eq!(pk.e, BigUint::from(117u32));
        assert_eq!(pk.d, BigUint::from(214u32));
        assert_eq!(sk.v, BigUint::from(5u32));
    }

    #[test]
    fn fermat_identity_on_micro_key() {
        // d mod k = v whenever v < k.
        let (pk, sk) = micro_key_one();
        assert_eq!(&pk.d % &sk.k, sk.v);
    }

    #[test]
    fn generated_keys_satisfy_invariants() {
        let params = KeyGenParams::new(64, 24, 8, 8, 8);
        let mut rng = RandomSource::from_seed(11);
        for _ in 0..20 {
            let (pk, sk) = key_generate(&params, &mut rng).unwrap();
            assert_eq!(&pk.d % &sk.k, &sk.v % &sk.k, "Fermat identity");
            assert!(pk.n.gcd(&pk.e).is_one());
            assert!(pk.n.gcd(&pk.d).is_one());
            assert!(pk.e.gcd(&pk.d).is_one());
            assert!(sk.y >= BigUint::one() && sk.y < sk.v);
            assert_eq!(sk.k.bits(), 64);
            assert_eq!(sk.v.bits(), 24);
        }
    }

    #[test]
    fn key_generation_is_deterministic_under_seed() {
        let params = KeyGenParams::new(64, 24, 8, 8, 8);
        let a = key_generate(&params, &mut RandomSource::from_seed(99)).unwrap();
        let b = key_generate(&params, &mut RandomSource::from_seed(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_seeds_give_distinct_moduli() {
        let params = KeyGenParams::new(64, 24, 8, 8, 8);
        let moduli: BTreeSet<BigUint> = (0..100)
            .map(|seed| {
                let (pk, _) = key_generate(&params, &mut RandomSource::from_seed(seed)).unwrap();
                pk.n
            })
            .collect();
        assert_eq!(moduli.len(), 100);
    }

    #[test]
    fn params_validation_rejects_bad_shapes() {
        assert_eq!(
            KeyGenParams::new(64, 7, 8, 8, 8).validate(),
            Err(ParamsError::VBitsTooSmall { v_bits: 7 })
        );
        assert!(matches!(
            KeyGenParams::new(64, 64, 8, 8, 8).validate(),
            Err(ParamsError::AlphaNotAboveV { .. })
        ));
        assert_eq!(
            KeyGenParams::new(64, 48, 16, 16, 16).validate(),
            Err(ParamsError::NoMessageRoom)
        );
        assert_eq!(
            KeyGenParams::new(64, 24, 0, 8, 8).validate(),
            Err(ParamsError::ZeroCoinBits)
        );
        assert!(KeyGenParams::default().validate().is_ok());
    }

    /// Budget only inspects the modulus size, so a synthetic key of the
    /// right width keeps these tests fast.
    fn key_of_modulus_bits(bits: u64) -> PublicKey {
        PublicKey {
            n: BigUint::one() << (bits - 1),
            e: BigUint::one(),
            d: BigUint::one(),
        }
    }

    #[test]
    fn budget_default_params_is_254_bits() {
        let pk = key_of_modulus_bits(2048);
        assert_eq!(message_budget(&pk, &KeyGenParams::default()).unwrap(), 254);
    }

    #[test]
    fn budget_caps_at_v_bits_minus_one() {
        // 256 - (64 + 16 + 16) - 2 = 158, but m < v caps it at 63.
        let pk = key_of_modulus_bits(512);
        assert_eq!(
            message_budget(&pk, &KeyGenParams::new(256, 64, 16, 16, 16)).unwrap(),
            63
        );
    }

    #[test]
    fn budget_empty_when_parameters_leave_no_room() {
        // 64 - (48 + 16 + 16) - 2 is negative.
        let pk = key_of_modulus_bits(128);
        assert_eq!(
            message_budget(&pk, &KeyGenParams::new(64, 48, 16, 16, 16)),
            Err(BudgetError::Empty)
        );
    }

    #[test]
    fn budget_rejects_mismatched_key() {
        let pk = key_of_modulus_bits(128);
        assert_eq!(
            message_budget(&pk, &KeyGenParams::new(128, 24, 8, 8, 8)),
            Err(BudgetError::KeyMismatch { alpha_bits: 128 })
        );
    }

    #[test]
    fn micro_example_satisfies_decryption_bound_directly() {
        // k = 11, v = 7, y = 3 so y^-1 = 5; with t = r = 0 the bound for
        // m = 1 reads 1·(5 + 7·0·0) = 5 < 11.
        let (_, sk) = micro_key_one();
        let y_inv = mod_inverse(&sk.y, &sk.v).unwrap();
        assert_eq!(y_inv, BigUint::from(5u32));
        assert!(y_inv < sk.k);
    }

    #[test]
    fn from_primes_rejects_bad_material() {
        let p = |x: u32| BigUint::from(x);
        assert!(keypair_from_primes(p(12), p(13), p(17), p(7), p(3)).is_err());
        assert!(keypair_from_primes(p(11), p(11), p(17), p(7), p(3)).is_err());
        assert!(keypair_from_primes(p(11), p(13), p(17), p(7), p(0)).is_err());
        assert!(keypair_from_primes(p(11), p(13), p(17), p(7), p(7)).is_err());
    }

    #[test]
    fn coprime_batch_generation_yields_pairwise_coprime_moduli() {
        let params = KeyGenParams::new(64, 24, 8, 8, 8);
        let mut rng = RandomSource::from_seed(21);
        let keys = generate_coprime_keypairs(6, &params, &mut rng).unwrap();
        for i in 0..keys.len() {
            for j in (i + 1)..keys.len() {
                assert!(keys[i].0.n.gcd(&keys[j].0.n).is_one());
            }
        }
    }
}
