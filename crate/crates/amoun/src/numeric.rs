//! Arbitrary-precision number-theoretic primitives: primality testing,
//! random prime generation, extended Euclid, modular inverse, and modular
//! exponentiation. Everything else in the crate is built on these.

use alloc::vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::NumericError;

/// Miller–Rabin rounds used everywhere keys are generated.
/// Error probability is at most 4^-64 per accepted prime.
pub const KEYGEN_MR_ROUNDS: u32 = 64;

/// Attempts per bit of requested prime size before giving up. Expected
/// attempts are about 0.35·bits, so this leaves two orders of magnitude.
const PRIME_ATTEMPTS_PER_BIT: u32 = 64;

/// Primes below 1024, used for trial division before Miller–Rabin.
const SMALL_PRIMES: [u32; 172] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421,
    431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541, 547,
    557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653, 659,
    661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797,
    809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929,
    937, 941, 947, 953, 967, 971, 977, 983, 991, 997, 1009, 1013, 1019, 1021,
];

/// Deterministic-when-seeded source of uniform bytes and integers.
///
/// The same seed and call sequence always yield the same outputs. Bounded
/// draws use rejection sampling, never modulo reduction, so they carry no
/// bias. Each instance is single-caller; concurrent users need independent
/// instances.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha20Rng,
}

impl RandomSource {
    /// Builds a source from a 64-bit seed.
    pub fn from_seed(seed: u64) -> Self {
        Self {
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    /// Builds a source from 32 seed bytes (full entropy width).
    pub fn from_seed_bytes(seed: [u8; 32]) -> Self {
        Self {
            rng: ChaCha20Rng::from_seed(seed),
        }
    }

    /// Fills `buf` with uniform bytes.
    pub fn fill_bytes(&mut self, buf: &mut [u8]) {
        self.rng.fill_bytes(buf);
    }

    /// Uniform integer in `[0, 2^bits)`.
    pub fn random_bits(&mut self, bits: u32) -> BigUint {
        if bits == 0 {
            return BigUint::zero();
        }
        let nbytes = bits.div_ceil(8) as usize;
        let mut buf = vec![0u8; nbytes];
        self.rng.fill_bytes(&mut buf);
        let excess = (nbytes as u32) * 8 - bits;
        buf[0] &= 0xff >> excess;
        BigUint::from_bytes_be(&buf)
    }

    /// Uniform integer in `[0, bound)` by rejection sampling.
    ///
    /// `bound` must be positive.
    pub fn random_below(&mut self, bound: &BigUint) -> BigUint {
        assert!(!bound.is_zero(), "random_below needs a positive bound");
        let bits = bound.bits() as u32;
        loop {
            let candidate = self.random_bits(bits);
            if &candidate < bound {
                return candidate;
            }
        }
    }

    /// Uniform integer in `[1, 2^bits)`, i.e. a nonzero coin of at most
    /// `bits` bits. `bits` must be at least 1.
    pub fn random_nonzero_bits(&mut self, bits: u32) -> BigUint {
        assert!(bits >= 1, "nonzero draw needs at least one bit");
        let bound = (BigUint::one() << bits) - BigUint::one();
        self.random_below(&bound) + BigUint::one()
    }
}

/// Miller–Rabin probable-prime test with `rounds` random bases, after trial
/// division by all primes below 1024.
///
/// Always returns `true` for primes; returns `true` for a composite with
/// probability at most `4^-rounds`.
pub fn is_probable_prime(n: &BigUint, rounds: u32, rng: &mut RandomSource) -> bool {
    assert!(rounds >= 1, "at least one round required");
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let p_big = BigUint::from(p);
        if *n == p_big {
            return true;
        }
        if (n % &p_big).is_zero() {
            return false;
        }
    }
    // n survived trial division and is odd, so n - 1 = d·2^s with s >= 1
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let sample_span = n - BigUint::from(3u32); // witnesses drawn from [2, n-2]
    'witness: for _ in 0..rounds {
        let a = rng.random_below(&sample_span) + &two;
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Random probable prime with exactly `bits` significant bits (top bit set)
/// and the low bit set, vetted with [`KEYGEN_MR_ROUNDS`] Miller–Rabin rounds.
///
/// `bits` must be at least 8. Fails with `RetryExhausted` instead of looping
/// forever if no prime turns up within the attempt budget.
pub fn random_prime(bits: u32, rng: &mut RandomSource) -> Result<BigUint, NumericError> {
    assert!(bits >= 8, "prime sizes below 8 bits are not supported");
    let attempts = PRIME_ATTEMPTS_PER_BIT.saturating_mul(bits);
    for _ in 0..attempts {
        let mut candidate = rng.random_bits(bits);
        candidate.set_bit(u64::from(bits) - 1, true);
        candidate.set_bit(0, true);
        if is_probable_prime(&candidate, KEYGEN_MR_ROUNDS, rng) {
            return Ok(candidate);
        }
    }
    Err(NumericError::RetryExhausted { attempts })
}

/// Extended Euclidean algorithm.
///
/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a·x + b·y = g`.
/// At least one of `a`, `b` must be nonzero.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    assert!(!(a.is_zero() && b.is_zero()), "gcd(0, 0) is undefined");
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = core::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = core::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = core::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`: the unique `u` in `[1, m)` with `a·u ≡ 1 (mod m)`.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Result<BigUint, NumericError> {
    if *m < BigUint::from(2u32) {
        return Err(NumericError::NotInvertible);
    }
    let a_red = a % m;
    if a_red.is_zero() {
        return Err(NumericError::NotInvertible);
    }
    let m_int = BigInt::from(m.clone());
    let (g, x, _) = ext_gcd(&BigInt::from(a_red), &m_int);
    if !g.is_one() {
        return Err(NumericError::NotInvertible);
    }
    let u = x.mod_floor(&m_int);
    Ok(u.to_biguint()
        .expect("mod_floor of positive modulus is non-negative"))
}

/// `base^exponent mod modulus` by the square-and-multiply binary method.
///
/// Runtime is proportional to the exponent's bit-length times the squaring
/// cost, which is the asymmetry the benchmarks measure. `modulus` must be
/// at least 1; for `modulus == 1` the result is 0.
pub fn mod_pow(base: &BigUint, exponent: &BigUint, modulus: &BigUint) -> BigUint {
    assert!(!modulus.is_zero(), "modulus must be positive");
    if modulus.is_one() {
        return BigUint::zero();
    }
    base.modpow(exponent, modulus)
}
