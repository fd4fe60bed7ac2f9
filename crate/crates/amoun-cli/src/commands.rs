//! Command implementations behind the `amoun` binary.
//!
//! Exit codes are part of the interface: 0 success, 2 invalid parameters or
//! unreadable/invalid input files, 3 key-generation retry exhaustion,
//! 4 non-coprime recipient moduli, 5 input-count mismatch, 6 malformed
//! ciphertext file. Output files are written to a temporary sibling and
//! renamed into place, so failures never leave partial files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use amoun::{
    decrypt_integer, encrypt, key_generate, message_budget, CiphertextEnvelope, GroupContext,
    GroupError, KeyGenError, KeyGenParams, MessageVector, RandomSource,
};
use num_bigint::BigUint;
use num_traits::Zero;

use crate::bench::{emit_report, run_suite, BenchConfig, BenchError, Phase, ReportFormat, Scheme};
use crate::format::{
    emit_group_file, emit_private_key_file, emit_public_key_file, parse_ciphertext_file,
    parse_group_file, parse_key_file, parse_params_file, CiphertextFile, KeyFile,
};

/// Invalid parameters, unreadable files, or malformed non-ciphertext input.
pub const EXIT_INVALID: i32 = 2;
/// Key generation exhausted its retry budget.
pub const EXIT_RETRY_EXHAUSTED: i32 = 3;
/// Recipient moduli share a factor; keys must be regenerated.
pub const EXIT_NOT_COPRIME: i32 = 4;
/// Number of plaintext inputs does not match the group.
pub const EXIT_COUNT_MISMATCH: i32 = 5;
/// Ciphertext file is malformed or truncated.
pub const EXIT_MALFORMED_CIPHERTEXT: i32 = 6;

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    /// Process exit code.
    pub code: i32,
    /// Message for standard error.
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self::new(EXIT_INVALID, message)
    }
}

type CliResult = Result<(), CliError>;

fn rng_from_seed(seed: Option<u64>) -> Result<RandomSource, CliError> {
    match seed {
        Some(seed) => Ok(RandomSource::from_seed(seed)),
        None => {
            let mut buf = [0u8; 32];
            getrandom::getrandom(&mut buf)
                .map_err(|e| CliError::invalid(format!("no OS entropy available: {e}")))?;
            Ok(RandomSource::from_seed_bytes(buf))
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))
}

/// Write-to-temp-then-rename; no partial output on failure.
fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult {
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::invalid(format!("{} has no file name", path.display())))?;
    let mut tmp = path.to_path_buf();
    tmp.set_file_name(format!(
        "{}.tmp.{}",
        file_name.to_string_lossy(),
        std::process::id()
    ));
    fs::write(&tmp, bytes)
        .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::invalid(format!("cannot move output into {}: {e}", path.display()))
    })
}

fn map_keygen_error(err: KeyGenError) -> CliError {
    match err {
        KeyGenError::RetryBudgetExhausted => CliError::new(
            EXIT_RETRY_EXHAUSTED,
            "key generation retry budget exhausted",
        ),
        other => CliError::invalid(other.to_string()),
    }
}

fn map_group_error(err: GroupError) -> CliError {
    match err {
        GroupError::ModuliNotCoprime { i, j } => CliError::new(
            EXIT_NOT_COPRIME,
            format!("recipient keys {i} and {j} share a prime; regenerate them"),
        ),
        other => CliError::invalid(other.to_string()),
    }
}

/// `amoun keygen`: generate a keypair and print the message budget.
pub fn cmd_keygen(
    params: KeyGenParams,
    out_public: &Path,
    out_private: &Path,
    seed: Option<u64>,
) -> CliResult {
    params
        .validate()
        .map_err(|e| CliError::invalid(e.to_string()))?;
    let mut rng = rng_from_seed(seed)?;
    let (public, private) = key_generate(&params, &mut rng).map_err(map_keygen_error)?;
    let budget_bits =
        message_budget(&public, &params).map_err(|e| CliError::invalid(e.to_string()))?;
    write_atomic(
        out_public,
        emit_public_key_file(params.alpha_bits, &public).as_bytes(),
    )?;
    write_atomic(
        out_private,
        emit_private_key_file(params.alpha_bits, &private).as_bytes(),
    )?;
    println!("budget: {} bytes", budget_bits / 8);
    Ok(())
}

/// `amoun group-init`: fold public keys into a sender-side group file.
pub fn cmd_group_init(
    public_paths: &[PathBuf],
    params_path: &Path,
    out: &Path,
    seed: Option<u64>,
) -> CliResult {
    if public_paths.len() < 2 {
        return Err(CliError::invalid(
            "at least two --public key files are required",
        ));
    }
    let params = parse_params_file(&read_text(params_path)?)
        .map_err(|e| CliError::invalid(format!("{}: {e}", params_path.display())))?;
    let mut publics = Vec::with_capacity(public_paths.len());
    for path in public_paths {
        match parse_key_file(&read_text(path)?) {
            Ok(KeyFile::Public { alpha_bits, key }) => {
                if alpha_bits != params.alpha_bits {
                    return Err(CliError::invalid(format!(
                        "{}: key was generated at alpha_bits {alpha_bits}, parameters say {}",
                        path.display(),
                        params.alpha_bits
                    )));
                }
                publics.push(key);
            }
            Ok(KeyFile::Private { .. }) => {
                return Err(CliError::invalid(format!(
                    "{}: expected a public key file",
                    path.display()
                )))
            }
            Err(e) => return Err(CliError::invalid(format!("{}: {e}", path.display()))),
        }
    }
    let mut rng = rng_from_seed(seed)?;
    let ctx = GroupContext::init(publics, &params, &mut rng).map_err(map_group_error)?;
    write_atomic(out, emit_group_file(&ctx).as_bytes())
}

/// Byte range recipient `payload` contributes to block `block_index`.
///
/// Each input is split into `block_count` near-equal chunks of
/// `ceil(len / block_count)` bytes, which is always within the recipient's
/// budget; the chunk grid is recoverable from the declared length alone, so
/// recipients need no sender-side state.
fn chunk(payload: &[u8], block_count: usize, block_index: usize) -> &[u8] {
    if payload.is_empty() || block_count == 0 {
        return &[];
    }
    let stride = payload.len().div_ceil(block_count);
    let start = block_index * stride;
    if start >= payload.len() {
        return &[];
    }
    let end = (start + stride).min(payload.len());
    &payload[start..end]
}

/// `amoun encrypt`: one plaintext file per recipient, block-wise.
pub fn cmd_encrypt(
    group_path: &Path,
    input_paths: &[PathBuf],
    out: &Path,
    seed: Option<u64>,
) -> CliResult {
    let ctx = parse_group_file(&read_text(group_path)?)
        .map_err(|e| CliError::invalid(format!("{}: {e}", group_path.display())))?;
    if input_paths.len() != ctx.recipient_count() {
        return Err(CliError::new(
            EXIT_COUNT_MISMATCH,
            format!(
                "group has {} recipients but {} input files were given",
                ctx.recipient_count(),
                input_paths.len()
            ),
        ));
    }
    let mut payloads = Vec::with_capacity(input_paths.len());
    for path in input_paths {
        let bytes = read_bytes(path)?;
        if bytes.len() > u32::MAX as usize {
            return Err(CliError::invalid(format!(
                "{}: file too large for the ciphertext framing",
                path.display()
            )));
        }
        payloads.push(bytes);
    }
    let mut block_count = 0usize;
    for (payload, entry) in payloads.iter().zip(ctx.entries()) {
        let budget_bytes = (entry.budget_bits / 8) as usize;
        if budget_bytes == 0 {
            return Err(CliError::invalid(
                "group file carries a sub-byte message budget",
            ));
        }
        block_count = block_count.max(payload.len().div_ceil(budget_bytes));
    }
    let mut rng = rng_from_seed(seed)?;
    let mut blocks = Vec::with_capacity(block_count);
    for block_index in 0..block_count {
        let messages: Vec<Vec<u8>> = payloads
            .iter()
            .map(|payload| chunk(payload, block_count, block_index).to_vec())
            .collect();
        let envelope = encrypt(&ctx, &MessageVector::new(messages), &mut rng)
            .map_err(|e| CliError::invalid(e.to_string()))?;
        blocks.push(envelope.c);
    }
    let file = CiphertextFile {
        group_id: ctx.group_id().to_string(),
        declared_lengths: payloads.iter().map(|p| p.len() as u32).collect(),
        blocks,
    };
    write_atomic(out, &file.emit())
}

/// Minimal big-endian bytes fitted to `len`: left-padded with zeros, or
/// truncated to the low-order bytes when a wrong key produced garbage.
fn fit_bytes(value: &BigUint, len: usize) -> Vec<u8> {
    let minimal = if value.is_zero() {
        Vec::new()
    } else {
        value.to_bytes_be()
    };
    if minimal.len() >= len {
        minimal[minimal.len() - len..].to_vec()
    } else {
        let mut out = vec![0u8; len - minimal.len()];
        out.extend_from_slice(&minimal);
        out
    }
}

/// `amoun decrypt`: recover one recipient's plaintext from a ciphertext file.
///
/// A wrong key or wrong index yields deterministic garbage with exit 0; the
/// scheme has no integrity layer to detect it.
pub fn cmd_decrypt(private_path: &Path, index: u32, input: &Path, out: &Path) -> CliResult {
    let private = match parse_key_file(&read_text(private_path)?) {
        Ok(KeyFile::Private { key, .. }) => key,
        Ok(KeyFile::Public { .. }) => {
            return Err(CliError::invalid(format!(
                "{}: expected a private key file",
                private_path.display()
            )))
        }
        Err(e) => {
            return Err(CliError::invalid(format!(
                "{}: {e}",
                private_path.display()
            )))
        }
    };
    let data = read_bytes(input)?;
    let file = parse_ciphertext_file(&data).map_err(|e| {
        CliError::new(
            EXIT_MALFORMED_CIPHERTEXT,
            format!("{}: {e}", input.display()),
        )
    })?;
    let Some(&declared) = file.declared_lengths.get(index as usize) else {
        return Err(CliError::invalid(format!(
            "recipient index {index} out of range for {} recipients",
            file.recipient_count()
        )));
    };
    let declared = declared as usize;
    let block_count = file.blocks.len();
    if block_count == 0 && declared > 0 {
        return Err(CliError::new(
            EXIT_MALFORMED_CIPHERTEXT,
            format!("{}: declared plaintext but no blocks", input.display()),
        ));
    }
    let stride = if declared == 0 {
        0
    } else {
        declared.div_ceil(block_count)
    };
    let mut plaintext = Vec::with_capacity(declared);
    for (block_index, c) in file.blocks.iter().enumerate() {
        let taken = (block_index * stride).min(declared);
        let chunk_len = stride.min(declared - taken);
        let envelope = CiphertextEnvelope {
            c: c.clone(),
            group_id: file.group_id.clone(),
            recipient_count: file.recipient_count() as u32,
        };
        let m = decrypt_integer(&private, &envelope);
        plaintext.extend_from_slice(&fit_bytes(&m, chunk_len));
    }
    write_atomic(out, &plaintext)
}

/// Flag-level overrides applied on top of a config file or the defaults.
#[derive(Debug, Default, Clone)]
pub struct BenchOverrides {
    /// Comma-separated scheme names.
    pub schemes: Option<Vec<String>>,
    /// Comma-separated phase names.
    pub phases: Option<Vec<String>>,
    /// Group sizes.
    pub group_sizes: Option<Vec<u32>>,
    /// Prime sizes for the batched scheme.
    pub amoun_prime_bits: Option<Vec<u32>>,
    /// Baseline prime size.
    pub baseline_prime_bits: Option<u32>,
    /// Timed repetitions.
    pub repetitions: Option<u32>,
    /// Untimed warmup runs.
    pub warmup_runs: Option<u32>,
    /// RNG seed; drawn from the OS when absent everywhere.
    pub seed: Option<u64>,
    /// Use the parallel encryption path.
    pub parallel: bool,
}

/// `amoun bench`: run the timing suite and emit a report.
pub fn cmd_bench(
    config_path: Option<&Path>,
    overrides: &BenchOverrides,
    format: &str,
    out: Option<&Path>,
) -> CliResult {
    let mut cfg = match config_path {
        Some(path) => serde_json::from_str::<BenchConfig>(&read_text(path)?)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?,
        None => BenchConfig::default(),
    };
    if let Some(schemes) = &overrides.schemes {
        cfg.schemes = schemes
            .iter()
            .map(|s| s.parse::<Scheme>())
            .collect::<Result<_, _>>()
            .map_err(CliError::invalid)?;
    }
    if let Some(phases) = &overrides.phases {
        cfg.phases = phases
            .iter()
            .map(|s| s.parse::<Phase>())
            .collect::<Result<_, _>>()
            .map_err(CliError::invalid)?;
    }
    if let Some(group_sizes) = &overrides.group_sizes {
        cfg.group_sizes = group_sizes.clone();
    }
    if let Some(bits) = &overrides.amoun_prime_bits {
        cfg.amoun_prime_bits = bits.clone();
    }
    if let Some(bits) = overrides.baseline_prime_bits {
        cfg.baseline_prime_bits = bits;
    }
    if let Some(reps) = overrides.repetitions {
        cfg.repetitions = reps;
    }
    if let Some(warmups) = overrides.warmup_runs {
        cfg.warmup_runs = warmups;
    }
    cfg.parallel |= overrides.parallel;
    match overrides.seed {
        Some(seed) => cfg.rng_seed = seed,
        None if config_path.is_none() => {
            let mut buf = [0u8; 8];
            getrandom::getrandom(&mut buf)
                .map_err(|e| CliError::invalid(format!("no OS entropy available: {e}")))?;
            cfg.rng_seed = u64::from_be_bytes(buf);
        }
        None => {}
    }
    let format = match format {
        "csv" => ReportFormat::Csv,
        "json" => ReportFormat::JsonLines,
        "table" => ReportFormat::HumanTable,
        other => {
            return Err(CliError::invalid(format!(
                "unknown format `{other}`; expected csv, json, or table"
            )))
        }
    };
    let report = run_suite(&cfg).map_err(|e| match e {
        BenchError::ConfigInvalid(msg) => CliError::invalid(msg),
        other => CliError::invalid(other.to_string()),
    })?;
    let bytes = emit_report(&report, format);
    match out {
        Some(path) => write_atomic(path, &bytes),
        None => {
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| CliError::invalid(format!("cannot write to stdout: {e}")))?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_partition_the_payload() {
        let payload: Vec<u8> = (0..40).collect();
        // 40 bytes over 2 blocks: 20 + 20
        assert_eq!(chunk(&payload, 2, 0), &payload[..20]);
        assert_eq!(chunk(&payload, 2, 1), &payload[20..]);
        // 10 bytes over 3 blocks: 4 + 4 + 2
        let short: Vec<u8> = (0..10).collect();
        assert_eq!(chunk(&short, 3, 0), &short[..4]);
        assert_eq!(chunk(&short, 3, 1), &short[4..8]);
        assert_eq!(chunk(&short, 3, 2), &short[8..]);
        // empty payloads contribute empty chunks
        assert_eq!(chunk(&[], 3, 1), &[] as &[u8]);
        // shorter inputs run out of chunks early
        assert_eq!(chunk(&short[..2], 3, 2), &[] as &[u8]);
    }

    #[test]
    fn chunk_stride_never_exceeds_the_budget_that_set_block_count() {
        // block_count = ceil(len / budget) implies ceil(len / block_count) <= budget
        for len in 0..500usize {
            for budget in 1..40usize {
                let blocks = len.div_ceil(budget);
                if blocks > 0 {
                    assert!(len.div_ceil(blocks) <= budget, "len={len} budget={budget}");
                }
            }
        }
    }

    #[test]
    fn fit_bytes_pads_and_truncates() {
        use num_bigint::BigUint;
        assert_eq!(fit_bytes(&BigUint::from(258u32), 2), vec![1, 2]);
        assert_eq!(fit_bytes(&BigUint::from(258u32), 4), vec![0, 0, 1, 2]);
        assert_eq!(fit_bytes(&BigUint::from(258u32), 1), vec![2]);
        assert_eq!(fit_bytes(&BigUint::zero(), 3), vec![0, 0, 0]);
        assert_eq!(fit_bytes(&BigUint::zero(), 0), Vec::<u8>::new());
    }
}
