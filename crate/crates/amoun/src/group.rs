//! Sender-side group state.
//!
//! Initialization folds every recipient's public key into a list of
//! per-recipient parameters: `N' = N·f + d·t` (the blinded modulus used to
//! randomize `e` at encryption time) and the CRT basis element
//! `AX = A·X/N` with `AX ≡ 1 (mod N)` and `AX ≡ 0` modulo every other
//! recipient's modulus. Membership changes are sender-local: adding or
//! removing a recipient recomputes `X` and every `AX`, and no recipient is
//! contacted or re-keyed.
//!
//! A context embeds the sender-secret `N'` values, so serialized contexts
//! must be treated as sender-private material.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::GroupError;
use crate::keys::{message_budget, KeyGenParams, PublicKey};
use crate::numeric::{mod_inverse, RandomSource};

/// Per-recipient slice of the sender's initialization state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupEntry {
    /// The recipient's public key.
    pub public_key: PublicKey,
    /// `N·f + d·t`; sender-secret.
    pub n_prime: BigUint,
    /// CRT basis element `A·X/N`.
    pub ax: BigUint,
    /// Maximum message bit-length admissible for this recipient.
    pub budget_bits: u32,
}

/// Initialization coins for one recipient, injectable in tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitCoins {
    /// Multiplier of `N` in `N'`.
    pub f: BigUint,
    /// Multiplier of `d` in `N'`.
    pub t: BigUint,
}

/// Sender-side initialization state for one receiving group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupContext {
    entries: Vec<GroupEntry>,
    x_modulus: BigUint,
    group_id: String,
    params: KeyGenParams,
}

impl GroupContext {
    /// Initializes a group from at least two public keys.
    ///
    /// Draws fresh nonzero coins `f`, `t` per recipient. Fails with
    /// `ModuliNotCoprime` when two keys share a prime, in which case the
    /// offending keys must be regenerated.
    pub fn init(
        public_keys: Vec<PublicKey>,
        params: &KeyGenParams,
        rng: &mut RandomSource,
    ) -> Result<Self, GroupError> {
        params.validate()?;
        let group_id = fresh_group_id(rng);
        let coins: Vec<InitCoins> = (0..public_keys.len())
            .map(|_| InitCoins {
                f: rng.random_nonzero_bits(params.f_bits),
                t: rng.random_nonzero_bits(params.t_bits),
            })
            .collect();
        let mut budgets = Vec::with_capacity(public_keys.len());
        for pk in &public_keys {
            budgets.push(message_budget(pk, params)?);
        }
        Self::build(public_keys, *params, group_id, &coins, &budgets)
    }

    /// White-box constructor with caller-chosen coins and budget.
    ///
    /// Tests use this to pin `f` and `t` (zero included, which production
    /// never draws) and to state a budget they verified by hand. Structural
    /// checks (group size, pairwise-coprime moduli) still apply.
    pub fn init_with_coins(
        public_keys: Vec<PublicKey>,
        params: KeyGenParams,
        group_id: String,
        coins: &[InitCoins],
        budget_bits: u32,
    ) -> Result<Self, GroupError> {
        if coins.len() != public_keys.len() {
            return Err(GroupError::Inconsistent {
                reason: "one coin pair per public key required",
            });
        }
        let budgets = alloc::vec![budget_bits; public_keys.len()];
        Self::build(public_keys, params, group_id, coins, &budgets)
    }

    fn build(
        public_keys: Vec<PublicKey>,
        params: KeyGenParams,
        group_id: String,
        coins: &[InitCoins],
        budgets: &[u32],
    ) -> Result<Self, GroupError> {
        if public_keys.len() < 2 {
            return Err(GroupError::GroupTooSmall);
        }
        check_pairwise_coprime(&public_keys)?;
        let x_modulus = public_keys
            .iter()
            .fold(BigUint::one(), |acc, pk| acc * &pk.n);
        let mut entries: Vec<GroupEntry> = public_keys
            .into_iter()
            .zip(coins.iter().zip(budgets.iter()))
            .map(|(pk, (coin, &budget_bits))| GroupEntry {
                n_prime: &pk.n * &coin.f + &pk.d * &coin.t,
                public_key: pk,
                ax: BigUint::one(), // filled in below
                budget_bits,
            })
            .collect();
        recompute_basis(&mut entries, &x_modulus)?;
        Ok(Self {
            entries,
            x_modulus,
            group_id,
            params,
        })
    }

    /// Returns a new context extended by one recipient.
    ///
    /// `X` grows by the new modulus and every `AX` is recomputed against
    /// it; existing `N'` values and budgets are untouched, and no recipient
    /// communication happens.
    pub fn add_recipient(
        &self,
        public_key: PublicKey,
        rng: &mut RandomSource,
    ) -> Result<Self, GroupError> {
        for (i, entry) in self.entries.iter().enumerate() {
            if !entry.public_key.n.gcd(&public_key.n).is_one() {
                return Err(GroupError::ModuliNotCoprime {
                    i,
                    j: self.entries.len(),
                });
            }
        }
        let budget_bits = message_budget(&public_key, &self.params)?;
        let coin = InitCoins {
            f: rng.random_nonzero_bits(self.params.f_bits),
            t: rng.random_nonzero_bits(self.params.t_bits),
        };
        let mut entries = self.entries.clone();
        let x_modulus = &self.x_modulus * &public_key.n;
        entries.push(GroupEntry {
            n_prime: &public_key.n * &coin.f + &public_key.d * &coin.t,
            public_key,
            ax: BigUint::one(),
            budget_bits,
        });
        recompute_basis(&mut entries, &x_modulus)?;
        Ok(Self {
            entries,
            x_modulus,
            group_id: self.group_id.clone(),
            params: self.params,
        })
    }

    /// Returns a new context with the recipient at `index` removed.
    ///
    /// The result must keep at least two recipients. The removed party's
    /// modulus leaves `X` and every remaining `AX` is recomputed, so later
    /// ciphertexts carry nothing addressed to it.
    pub fn remove_recipient(&self, index: usize) -> Result<Self, GroupError> {
        if index >= self.entries.len() {
            return Err(GroupError::IndexOutOfRange {
                index,
                len: self.entries.len(),
            });
        }
        if self.entries.len() <= 2 {
            return Err(GroupError::GroupTooSmall);
        }
        let mut entries = self.entries.clone();
        let removed = entries.remove(index);
        let x_modulus = &self.x_modulus / &removed.public_key.n;
        recompute_basis(&mut entries, &x_modulus)?;
        Ok(Self {
            entries,
            x_modulus,
            group_id: self.group_id.clone(),
            params: self.params,
        })
    }

    /// Reassembles a context from stored parts, validating structure.
    pub fn from_parts(
        entries: Vec<GroupEntry>,
        x_modulus: BigUint,
        group_id: String,
        params: KeyGenParams,
    ) -> Result<Self, GroupError> {
        if entries.len() < 2 {
            return Err(GroupError::GroupTooSmall);
        }
        let product = entries
            .iter()
            .fold(BigUint::one(), |acc, e| acc * &e.public_key.n);
        if product != x_modulus {
            return Err(GroupError::Inconsistent {
                reason: "X is not the product of the recipient moduli",
            });
        }
        for entry in &entries {
            if &entry.ax % &entry.public_key.n != BigUint::one() {
                return Err(GroupError::Inconsistent {
                    reason: "AX is not congruent to 1 modulo its own modulus",
                });
            }
        }
        Ok(Self {
            entries,
            x_modulus,
            group_id,
            params,
        })
    }

    /// Per-recipient entries, in recipient order.
    pub fn entries(&self) -> &[GroupEntry] {
        &self.entries
    }

    /// Product of all recipient moduli.
    pub fn x_modulus(&self) -> &BigUint {
        &self.x_modulus
    }

    /// Opaque group identifier carried into ciphertext framing.
    pub fn group_id(&self) -> &str {
        &self.group_id
    }

    /// Parameters the group was initialized under.
    pub fn params(&self) -> &KeyGenParams {
        &self.params
    }

    /// Number of recipients.
    pub fn recipient_count(&self) -> usize {
        self.entries.len()
    }
}

fn fresh_group_id(rng: &mut RandomSource) -> String {
    let mut bytes = [0u8; 8];
    rng.fill_bytes(&mut bytes);
    let mut id = String::with_capacity(16);
    for b in bytes {
        id.push_str(&format!("{b:02x}"));
    }
    id
}

fn check_pairwise_coprime(public_keys: &[PublicKey]) -> Result<(), GroupError> {
    for i in 0..public_keys.len() {
        for j in (i + 1)..public_keys.len() {
            if !public_keys[i].n.gcd(&public_keys[j].n).is_one() {
                return Err(GroupError::ModuliNotCoprime { i, j });
            }
        }
    }
    Ok(())
}

/// Recomputes every `AX` against `x_modulus`.
fn recompute_basis(entries: &mut [GroupEntry], x_modulus: &BigUint) -> Result<(), GroupError> {
    for entry in entries.iter_mut() {
        let x_over_n = x_modulus / &entry.public_key.n;
        let a =
            mod_inverse(&x_over_n, &entry.public_key.n).map_err(|_| GroupError::Inconsistent {
                reason: "X/N not invertible; moduli were not coprime",
            })?;
        entry.ax = a * x_over_n;
    }
    Ok(())
}
