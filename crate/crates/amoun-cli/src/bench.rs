//! Timing harness comparing the batched scheme against RSA and Multi-RSA
//! per phase (init, encrypt, decrypt), across group sizes and key sizes.
//!
//! Methodology, per cell: key material is generated once, outside any timed
//! region; the phase body then runs `warmup_runs` untimed iterations and
//! `repetitions` timed ones on a monotonic clock. Every scheme in a cell
//! encrypts messages of the same byte length, the largest admissible under
//! the batched scheme's budget for that configuration. Decryption timing
//! covers all `n` recipients decrypting the group ciphertext. Encryption
//! timing includes coin generation, since the algorithm draws coins inline.

use std::collections::BTreeMap;
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use amoun::baselines::{
    multirsa_decrypt, multirsa_encrypt, multirsa_init, rsa_concat_encrypt, rsa_decrypt,
    rsa_encrypt, rsa_keygen, RsaKeyPair,
};
use amoun::keys::generate_coprime_keypairs;
use amoun::{
    decrypt_integer, encode_message, encrypt, message_budget, EncryptError, GroupContext,
    GroupError, KeyGenError, KeyGenParams, MessageVector, MultiRsaError, PrivateKey, PublicKey,
    RandomSource, RsaError,
};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parallel::encrypt_parallel;

/// Scheme under measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// The batched multi-recipient scheme.
    Amoun,
    /// CRT-combined RSA.
    MultiRsa,
    /// Plain RSA with concatenated sub-ciphertexts.
    Rsa,
}

impl Scheme {
    /// Stable lowercase name used in reports.
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Amoun => "amoun",
            Scheme::MultiRsa => "multirsa",
            Scheme::Rsa => "rsa",
        }
    }
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "amoun" => Ok(Scheme::Amoun),
            "multirsa" => Ok(Scheme::MultiRsa),
            "rsa" => Ok(Scheme::Rsa),
            other => Err(format!("unknown scheme `{other}`")),
        }
    }
}

/// Phase under measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// Sender-side group initialization. Undefined for plain RSA.
    Init,
    /// Encryption of one message per recipient.
    Encrypt,
    /// All recipients decrypting the group ciphertext.
    Decrypt,
}

impl Phase {
    /// Stable lowercase name used in reports.
    pub fn name(self) -> &'static str {
        match self {
            Phase::Init => "init",
            Phase::Encrypt => "encrypt",
            Phase::Decrypt => "decrypt",
        }
    }
}

impl FromStr for Phase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "init" => Ok(Phase::Init),
            "encrypt" => Ok(Phase::Encrypt),
            "decrypt" => Ok(Phase::Decrypt),
            other => Err(format!("unknown phase `{other}`")),
        }
    }
}

/// Suite configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchConfig {
    /// Schemes to measure.
    pub schemes: Vec<Scheme>,
    /// Phases to measure.
    pub phases: Vec<Phase>,
    /// Receiving-group sizes; each must be at least 2.
    pub group_sizes: Vec<u32>,
    /// Prime sizes for the batched scheme (its keys are twice this).
    pub amoun_prime_bits: Vec<u32>,
    /// Prime size for the RSA/Multi-RSA baselines.
    pub baseline_prime_bits: u32,
    /// Timed runs per cell; at least 1.
    pub repetitions: u32,
    /// Untimed runs before measurement starts.
    pub warmup_runs: u32,
    /// Seed for all key material, messages, and coins.
    pub rng_seed: u64,
    /// Encrypt with the parallel path for the batched scheme.
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            schemes: vec![Scheme::Amoun, Scheme::MultiRsa, Scheme::Rsa],
            phases: vec![Phase::Init, Phase::Encrypt, Phase::Decrypt],
            group_sizes: (2..=10).collect(),
            amoun_prime_bits: vec![1024, 2048, 3072],
            baseline_prime_bits: 1024,
            repetitions: 1000,
            warmup_runs: 10,
            rng_seed: 0,
            parallel: false,
        }
    }
}

/// One measured cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    /// Scheme measured.
    pub scheme: Scheme,
    /// Phase measured.
    pub phase: Phase,
    /// Receiving-group size.
    pub group_size: u32,
    /// Prime size the keys were generated at.
    pub prime_bits: u32,
    /// Mean runtime in nanoseconds.
    pub mean_ns: f64,
    /// Median runtime in nanoseconds.
    pub median_ns: f64,
    /// Sample standard deviation in nanoseconds.
    pub stddev_ns: f64,
    /// Timed runs behind the statistics.
    pub repetitions: u32,
}

/// Where and how the suite ran.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvironmentInfo {
    /// Processor model, when detectable.
    pub processor: String,
    /// Unix timestamp of the run.
    pub timestamp_unix: u64,
    /// Seed the suite ran under.
    pub seed: u64,
}

/// Structured timing results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    /// One row per measured cell, in stable order.
    pub rows: Vec<BenchRow>,
    /// Run environment.
    pub environment: EnvironmentInfo,
}

/// Output encodings for a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// `scheme,phase,group_size,prime_bits,mean_ns,median_ns,stddev_ns,repetitions`.
    Csv,
    /// One JSON object per row, same field names as the CSV columns.
    JsonLines,
    /// Aligned table with an environment header.
    HumanTable,
}

/// Errors from the harness.
#[derive(Debug, Error)]
pub enum BenchError {
    /// The configuration violates its invariants.
    #[error("invalid benchmark configuration: {0}")]
    ConfigInvalid(String),
    /// Key generation failed.
    #[error(transparent)]
    KeyGen(#[from] KeyGenError),
    /// Group initialization failed.
    #[error(transparent)]
    Group(#[from] GroupError),
    /// Encryption failed.
    #[error(transparent)]
    Encrypt(#[from] EncryptError),
    /// Multi-RSA failed.
    #[error(transparent)]
    MultiRsa(#[from] MultiRsaError),
    /// RSA failed.
    #[error(transparent)]
    Rsa(#[from] RsaError),
}

/// Key-generation parameters used for the batched scheme at a given prime
/// size: `v` takes half the prime size and the coins take 128 bits, scaled
/// down at small sizes so a budget survives.
pub fn bench_keygen_params(alpha_bits: u32) -> KeyGenParams {
    let coin_bits = (alpha_bits / 8).clamp(1, 128);
    KeyGenParams::new(alpha_bits, alpha_bits / 2, coin_bits, coin_bits, coin_bits)
}

/// Number of rows a configuration will produce: one per (scheme, phase,
/// group size, prime size) cell, minus the undefined RSA init cells.
pub fn planned_rows(cfg: &BenchConfig) -> usize {
    let mut schemes = cfg.schemes.clone();
    schemes.sort_unstable();
    schemes.dedup();
    let mut phases = cfg.phases.clone();
    phases.sort_unstable();
    phases.dedup();
    let mut amoun_bits = cfg.amoun_prime_bits.clone();
    amoun_bits.sort_unstable();
    amoun_bits.dedup();
    let mut group_sizes = cfg.group_sizes.clone();
    group_sizes.sort_unstable();
    group_sizes.dedup();
    let mut rows = 0;
    for scheme in &schemes {
        for phase in &phases {
            if *scheme == Scheme::Rsa && *phase == Phase::Init {
                continue;
            }
            let per_cell = match scheme {
                Scheme::Amoun => amoun_bits.len(),
                _ => 1,
            };
            rows += per_cell * group_sizes.len();
        }
    }
    rows
}

/// Runs every configured cell and returns the report.
pub fn run_suite(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    validate_config(cfg)?;
    let mut rng = RandomSource::from_seed(cfg.rng_seed);

    let mut schemes = cfg.schemes.clone();
    schemes.sort_by_key(|s| s.name());
    schemes.dedup();
    let mut phases = cfg.phases.clone();
    phases.sort_by_key(|p| p.name());
    phases.dedup();
    let mut group_sizes = cfg.group_sizes.clone();
    group_sizes.sort_unstable();
    group_sizes.dedup();
    let mut amoun_bits = cfg.amoun_prime_bits.clone();
    amoun_bits.sort_unstable();
    amoun_bits.dedup();

    let n_max = group_sizes.iter().copied().max().unwrap_or(0) as usize;
    let wants_baseline = schemes
        .iter()
        .any(|s| matches!(s, Scheme::MultiRsa | Scheme::Rsa));
    let message_bytes = suite_message_bytes(cfg, &amoun_bits, wants_baseline)?;

    // All key material up front, in deterministic order.
    let mut amoun_keys: BTreeMap<u32, (KeyGenParams, Vec<(PublicKey, PrivateKey)>)> =
        BTreeMap::new();
    if schemes.contains(&Scheme::Amoun) {
        for &bits in &amoun_bits {
            let params = bench_keygen_params(bits);
            let pairs = generate_coprime_keypairs(n_max, &params, &mut rng)?;
            amoun_keys.insert(bits, (params, pairs));
        }
    }
    let rsa_keys: Vec<RsaKeyPair> = if wants_baseline {
        rsa_coprime_keys(n_max, cfg.baseline_prime_bits, &mut rng)?
    } else {
        Vec::new()
    };

    let mut rows = Vec::new();
    for &scheme in &schemes {
        for &phase in &phases {
            if scheme == Scheme::Rsa && phase == Phase::Init {
                continue; // RSA has no initialization phase
            }
            for &n in &group_sizes {
                match scheme {
                    Scheme::Amoun => {
                        for &bits in &amoun_bits {
                            let (params, pairs) = &amoun_keys[&bits];
                            rows.push(time_amoun_cell(
                                cfg,
                                phase,
                                n,
                                bits,
                                params,
                                &pairs[..n as usize],
                                message_bytes,
                                &mut rng,
                            )?);
                        }
                    }
                    Scheme::MultiRsa => rows.push(time_multirsa_cell(
                        cfg,
                        phase,
                        n,
                        &rsa_keys[..n as usize],
                        message_bytes,
                        &mut rng,
                    )?),
                    Scheme::Rsa => rows.push(time_rsa_cell(
                        cfg,
                        phase,
                        n,
                        &rsa_keys[..n as usize],
                        message_bytes,
                        &mut rng,
                    )?),
                }
            }
        }
    }
    sort_rows(&mut rows);
    Ok(BenchReport {
        rows,
        environment: EnvironmentInfo {
            processor: processor_description(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            seed: cfg.rng_seed,
        },
    })
}

/// Serializes a report.
pub fn emit_report(report: &BenchReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for row in &report.rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    row.scheme.name(),
                    row.phase.name(),
                    row.group_size,
                    row.prime_bits,
                    row.mean_ns,
                    row.median_ns,
                    row.stddev_ns,
                    row.repetitions,
                ));
            }
            out.into_bytes()
        }
        ReportFormat::JsonLines => {
            let mut out = String::new();
            for row in &report.rows {
                out.push_str(&serde_json::to_string(row).expect("rows serialize"));
                out.push('\n');
            }
            out.into_bytes()
        }
        ReportFormat::HumanTable => {
            let mut out = format!(
                "# processor: {}\n# timestamp: {}\n# seed: {}\n",
                report.environment.processor,
                report.environment.timestamp_unix,
                report.environment.seed,
            );
            out.push_str(&format!(
                "{:<10} {:<8} {:>10} {:>10} {:>16} {:>16} {:>16} {:>12}\n",
                "scheme",
                "phase",
                "group_size",
                "prime_bits",
                "mean_ns",
                "median_ns",
                "stddev_ns",
                "repetitions",
            ));
            for row in &report.rows {
                out.push_str(&format!(
                    "{:<10} {:<8} {:>10} {:>10} {:>16.1} {:>16.1} {:>16.1} {:>12}\n",
                    row.scheme.name(),
                    row.phase.name(),
                    row.group_size,
                    row.prime_bits,
                    row.mean_ns,
                    row.median_ns,
                    row.stddev_ns,
                    row.repetitions,
                ));
            }
            out.into_bytes()
        }
    }
}

/// The mandatory CSV header.
pub const CSV_HEADER: &str =
    "scheme,phase,group_size,prime_bits,mean_ns,median_ns,stddev_ns,repetitions";

fn validate_config(cfg: &BenchConfig) -> Result<(), BenchError> {
    if cfg.repetitions < 1 {
        return Err(BenchError::ConfigInvalid(
            "repetitions must be at least 1".into(),
        ));
    }
    if let Some(&n) = cfg.group_sizes.iter().find(|&&n| n < 2) {
        return Err(BenchError::ConfigInvalid(format!(
            "group size {n} is below the minimum of 2"
        )));
    }
    if cfg.group_sizes.is_empty() {
        return Err(BenchError::ConfigInvalid(
            "no group sizes configured".into(),
        ));
    }
    if cfg.schemes.contains(&Scheme::Amoun) && cfg.amoun_prime_bits.is_empty() {
        return Err(BenchError::ConfigInvalid(
            "amoun_prime_bits must not be empty when the amoun scheme is configured".into(),
        ));
    }
    Ok(())
}

/// Message size shared by every cell: the largest byte length admissible
/// under the batched scheme's budget at each configured prime size, also
/// kept below the baseline modulus when baselines run.
fn suite_message_bytes(
    cfg: &BenchConfig,
    amoun_bits: &[u32],
    wants_baseline: bool,
) -> Result<usize, BenchError> {
    let sizing_bits: Vec<u32> = if amoun_bits.is_empty() {
        vec![cfg.baseline_prime_bits]
    } else {
        amoun_bits.to_vec()
    };
    let mut bytes = usize::MAX;
    for &bits in &sizing_bits {
        let params = bench_keygen_params(bits);
        params
            .validate()
            .map_err(|e| BenchError::ConfigInvalid(format!("prime size {bits}: {e}")))?;
        let budget = params_budget_bits(&params)
            .map_err(|e| BenchError::ConfigInvalid(format!("prime size {bits}: {e}")))?;
        bytes = bytes.min((budget / 8) as usize);
    }
    if wants_baseline {
        // Keep messages strictly below the baseline modulus.
        bytes = bytes.min(((2 * cfg.baseline_prime_bits - 2) / 8) as usize);
    }
    if bytes == 0 {
        return Err(BenchError::ConfigInvalid(
            "no message size fits every configured scheme".into(),
        ));
    }
    Ok(bytes)
}

/// Budget for a parameter set, via the real budget operation and a
/// width-matched stand-in key.
fn params_budget_bits(params: &KeyGenParams) -> Result<u32, amoun::BudgetError> {
    let stand_in = PublicKey {
        n: BigUint::one() << (2 * u64::from(params.alpha_bits) - 1),
        e: BigUint::one(),
        d: BigUint::one(),
    };
    message_budget(&stand_in, params)
}

fn rsa_coprime_keys(
    count: usize,
    bits_per_prime: u32,
    rng: &mut RandomSource,
) -> Result<Vec<RsaKeyPair>, BenchError> {
    let mut keys: Vec<RsaKeyPair> = Vec::with_capacity(count);
    while keys.len() < count {
        let mut accepted = None;
        for _ in 0..64 {
            let key = rsa_keygen(bits_per_prime, rng)?;
            let fresh = keys.iter().all(|k| k.n.gcd(&key.n).is_one());
            if fresh {
                accepted = Some(key);
                break;
            }
        }
        match accepted {
            Some(key) => keys.push(key),
            None => return Err(BenchError::KeyGen(KeyGenError::RetryBudgetExhausted)),
        }
    }
    Ok(keys)
}

struct Stats {
    mean_ns: f64,
    median_ns: f64,
    stddev_ns: f64,
}

fn time_phase<F: FnMut()>(repetitions: u32, warmup_runs: u32, mut body: F) -> Stats {
    for _ in 0..warmup_runs {
        body();
    }
    let mut nanos: Vec<u128> = Vec::with_capacity(repetitions as usize);
    for _ in 0..repetitions {
        let start = Instant::now();
        body();
        nanos.push(start.elapsed().as_nanos());
    }
    stats_of(&mut nanos)
}

fn stats_of(nanos: &mut [u128]) -> Stats {
    nanos.sort_unstable();
    let len = nanos.len();
    let sum: u128 = nanos.iter().sum();
    let mean = sum as f64 / len as f64;
    let median = if len % 2 == 1 {
        nanos[len / 2] as f64
    } else {
        (nanos[len / 2 - 1] as f64 + nanos[len / 2] as f64) / 2.0
    };
    let stddev = if len > 1 {
        let var = nanos
            .iter()
            .map(|&x| {
                let d = x as f64 - mean;
                d * d
            })
            .sum::<f64>()
            / (len - 1) as f64;
        var.sqrt()
    } else {
        0.0
    };
    Stats {
        mean_ns: mean,
        median_ns: median,
        stddev_ns: stddev,
    }
}

fn draw_messages(n: usize, message_bytes: usize, rng: &mut RandomSource) -> Vec<Vec<u8>> {
    (0..n)
        .map(|_| {
            let mut buf = vec![0u8; message_bytes];
            rng.fill_bytes(&mut buf);
            buf
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn time_amoun_cell(
    cfg: &BenchConfig,
    phase: Phase,
    n: u32,
    prime_bits: u32,
    params: &KeyGenParams,
    pairs: &[(PublicKey, PrivateKey)],
    message_bytes: usize,
    rng: &mut RandomSource,
) -> Result<BenchRow, BenchError> {
    let publics: Vec<PublicKey> = pairs.iter().map(|(pk, _)| pk.clone()).collect();
    let secrets: Vec<&PrivateKey> = pairs.iter().map(|(_, sk)| sk).collect();
    let stats = match phase {
        Phase::Init => time_phase(cfg.repetitions, cfg.warmup_runs, || {
            black_box(GroupContext::init(publics.clone(), params, rng).expect("bench init"));
        }),
        Phase::Encrypt => {
            let ctx = GroupContext::init(publics.clone(), params, rng)?;
            let messages = MessageVector::new(draw_messages(n as usize, message_bytes, rng));
            if cfg.parallel {
                time_phase(cfg.repetitions, cfg.warmup_runs, || {
                    black_box(encrypt_parallel(&ctx, &messages, rng).expect("bench encrypt"));
                })
            } else {
                time_phase(cfg.repetitions, cfg.warmup_runs, || {
                    black_box(encrypt(&ctx, &messages, rng).expect("bench encrypt"));
                })
            }
        }
        Phase::Decrypt => {
            let ctx = GroupContext::init(publics.clone(), params, rng)?;
            let messages = MessageVector::new(draw_messages(n as usize, message_bytes, rng));
            let env = encrypt(&ctx, &messages, rng)?;
            time_phase(cfg.repetitions, cfg.warmup_runs, || {
                for sk in &secrets {
                    black_box(decrypt_integer(sk, &env));
                }
            })
        }
    };
    Ok(row(
        Scheme::Amoun,
        phase,
        n,
        prime_bits,
        cfg.repetitions,
        stats,
    ))
}

fn time_multirsa_cell(
    cfg: &BenchConfig,
    phase: Phase,
    n: u32,
    keys: &[RsaKeyPair],
    message_bytes: usize,
    rng: &mut RandomSource,
) -> Result<BenchRow, BenchError> {
    let publics: Vec<(BigUint, BigUint)> =
        keys.iter().map(|k| (k.n.clone(), k.e.clone())).collect();
    let stats = match phase {
        Phase::Init => time_phase(cfg.repetitions, cfg.warmup_runs, || {
            black_box(multirsa_init(&publics).expect("bench multirsa init"));
        }),
        Phase::Encrypt => {
            let ctx = multirsa_init(&publics)?;
            let messages: Vec<BigUint> = draw_messages(n as usize, message_bytes, rng)
                .iter()
                .map(|m| encode_message(m))
                .collect();
            time_phase(cfg.repetitions, cfg.warmup_runs, || {
                black_box(multirsa_encrypt(&ctx, &messages).expect("bench multirsa encrypt"));
            })
        }
        Phase::Decrypt => {
            let ctx = multirsa_init(&publics)?;
            let messages: Vec<BigUint> = draw_messages(n as usize, message_bytes, rng)
                .iter()
                .map(|m| encode_message(m))
                .collect();
            let c = multirsa_encrypt(&ctx, &messages)?;
            time_phase(cfg.repetitions, cfg.warmup_runs, || {
                for key in keys {
                    black_box(multirsa_decrypt(key, &c));
                }
            })
        }
    };
    Ok(row(
        Scheme::MultiRsa,
        phase,
        n,
        cfg.baseline_prime_bits,
        cfg.repetitions,
        stats,
    ))
}

fn time_rsa_cell(
    cfg: &BenchConfig,
    phase: Phase,
    n: u32,
    keys: &[RsaKeyPair],
    message_bytes: usize,
    rng: &mut RandomSource,
) -> Result<BenchRow, BenchError> {
    let messages: Vec<BigUint> = draw_messages(n as usize, message_bytes, rng)
        .iter()
        .map(|m| encode_message(m))
        .collect();
    let stats = match phase {
        Phase::Init => unreachable!("RSA cells skip the init phase"),
        Phase::Encrypt => time_phase(cfg.repetitions, cfg.warmup_runs, || {
            black_box(rsa_concat_encrypt(keys, &messages).expect("bench rsa encrypt"));
        }),
        Phase::Decrypt => {
            let ciphertexts: Vec<BigUint> = keys
                .iter()
                .zip(&messages)
                .map(|(k, m)| rsa_encrypt(k, m).expect("bench rsa encrypt"))
                .collect();
            time_phase(cfg.repetitions, cfg.warmup_runs, || {
                for (key, c) in keys.iter().zip(&ciphertexts) {
                    black_box(rsa_decrypt(key, c));
                }
            })
        }
    };
    Ok(row(
        Scheme::Rsa,
        phase,
        n,
        cfg.baseline_prime_bits,
        cfg.repetitions,
        stats,
    ))
}

fn row(scheme: Scheme, phase: Phase, n: u32, prime_bits: u32, reps: u32, stats: Stats) -> BenchRow {
    BenchRow {
        scheme,
        phase,
        group_size: n,
        prime_bits,
        mean_ns: stats.mean_ns,
        median_ns: stats.median_ns,
        stddev_ns: stats.stddev_ns,
        repetitions: reps,
    }
}

fn sort_rows(rows: &mut [BenchRow]) {
    rows.sort_by(|a, b| {
        (a.scheme.name(), a.phase.name(), a.group_size, a.prime_bits).cmp(&(
            b.scheme.name(),
            b.phase.name(),
            b.group_size,
            b.prime_bits,
        ))
    });
}

fn processor_description() -> String {
    if let Ok(cpuinfo) = std::fs::read_to_string("/proc/cpuinfo") {
        for line in cpuinfo.lines() {
            if let Some((key, value)) = line.split_once(':') {
                if key.trim() == "model name" {
                    return value.trim().to_string();
                }
            }
        }
    }
    std::env::consts::ARCH.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_matches_protocol() {
        let cfg = BenchConfig::default();
        assert_eq!(cfg.repetitions, 1000);
        assert_eq!(cfg.group_sizes, (2..=10).collect::<Vec<u32>>());
        assert_eq!(cfg.amoun_prime_bits, vec![1024, 2048, 3072]);
        assert_eq!(cfg.baseline_prime_bits, 1024);
    }

    #[test]
    fn bench_params_match_the_documented_defaults() {
        assert_eq!(
            bench_keygen_params(1024),
            KeyGenParams::new(1024, 512, 128, 128, 128)
        );
        assert_eq!(
            bench_keygen_params(2048),
            KeyGenParams::new(2048, 1024, 128, 128, 128)
        );
        assert_eq!(bench_keygen_params(64), KeyGenParams::new(64, 32, 8, 8, 8));
    }

    #[test]
    fn config_validation_rejects_bad_shapes() {
        let cfg = BenchConfig {
            repetitions: 0,
            ..BenchConfig::default()
        };
        assert!(matches!(run_suite(&cfg), Err(BenchError::ConfigInvalid(_))));
        let cfg = BenchConfig {
            group_sizes: vec![1],
            ..BenchConfig::default()
        };
        assert!(matches!(run_suite(&cfg), Err(BenchError::ConfigInvalid(_))));
    }

    #[test]
    fn empty_scheme_list_yields_header_only_report() {
        let cfg = BenchConfig {
            schemes: vec![],
            group_sizes: vec![2],
            amoun_prime_bits: vec![64],
            baseline_prime_bits: 64,
            repetitions: 1,
            warmup_runs: 0,
            ..BenchConfig::default()
        };
        let report = run_suite(&cfg).unwrap();
        assert!(report.rows.is_empty());
        let csv = emit_report(&report, ReportFormat::Csv);
        assert_eq!(String::from_utf8(csv).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn json_lines_mirror_csv_field_names() {
        let row = BenchRow {
            scheme: Scheme::MultiRsa,
            phase: Phase::Encrypt,
            group_size: 2,
            prime_bits: 64,
            mean_ns: 10.5,
            median_ns: 10.0,
            stddev_ns: 0.5,
            repetitions: 3,
        };
        let json = serde_json::to_string(&row).unwrap();
        assert_eq!(
            json,
            "{\"scheme\":\"multirsa\",\"phase\":\"encrypt\",\"group_size\":2,\"prime_bits\":64,\"mean_ns\":10.5,\"median_ns\":10.0,\"stddev_ns\":0.5,\"repetitions\":3}"
        );
    }
}
