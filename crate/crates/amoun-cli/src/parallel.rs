//! Parallel variant of encryption: per-recipient terms are independent, so
//! they fan out across a thread pool. Coins are drawn sequentially up front
//! and the final sum runs in recipient order, which keeps the result
//! deterministic under a fixed seed.

use amoun::cipher::encode_messages_checked;
use amoun::{CiphertextEnvelope, EncryptError, GroupContext, MessageVector, RandomSource};
use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

/// Encrypts like [`amoun::encrypt`] but computes the per-recipient terms in
/// parallel.
pub fn encrypt_parallel(
    ctx: &GroupContext,
    messages: &MessageVector,
    rng: &mut RandomSource,
) -> Result<CiphertextEnvelope, EncryptError> {
    let encoded = encode_messages_checked(ctx, messages)?;
    let r_bits = ctx.params().r_bits;
    let coins: Vec<BigUint> = (0..ctx.recipient_count())
        .map(|_| rng.random_nonzero_bits(r_bits))
        .collect();
    let x = ctx.x_modulus();
    let terms: Vec<BigUint> = encoded
        .par_iter()
        .zip(ctx.entries().par_iter())
        .zip(coins.par_iter())
        .map(|((m, entry), r)| {
            let e_prime = &entry.public_key.e + &entry.n_prime * r;
            m * (e_prime * &entry.ax) % x
        })
        .collect();
    let c = terms
        .into_iter()
        .fold(BigUint::zero(), |acc, t| (acc + t) % x);
    Ok(CiphertextEnvelope {
        c,
        group_id: ctx.group_id().to_string(),
        recipient_count: ctx.recipient_count() as u32,
    })
}
