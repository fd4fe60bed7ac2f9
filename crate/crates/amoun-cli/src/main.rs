//! The `amoun` command-line tool: key lifecycle, group management,
//! file encryption/decryption, and the benchmark suite.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use amoun::KeyGenParams;
use amoun_cli::commands::{
    cmd_bench, cmd_decrypt, cmd_encrypt, cmd_group_init, cmd_keygen, BenchOverrides,
};

#[derive(Parser)]
#[command(
    name = "amoun",
    version,
    about = "Multi-recipient asymmetric encryption (research scheme; no integrity, not production crypto)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a keypair and print the per-message budget in bytes.
    Keygen {
        /// Bit size of the primes k, p, q.
        #[arg(long, default_value_t = 1024)]
        alpha_bits: u32,
        /// Bit size of the prime v.
        #[arg(long, default_value_t = 512)]
        v_bits: u32,
        /// Bit size of the initialization coin t.
        #[arg(long, default_value_t = 128)]
        t_bits: u32,
        /// Bit size of the encryption coin r.
        #[arg(long, default_value_t = 128)]
        r_bits: u32,
        /// Bit size of the initialization coin f.
        #[arg(long, default_value_t = 128)]
        f_bits: u32,
        /// Where to write the public key file.
        #[arg(long)]
        out_public: PathBuf,
        /// Where to write the private key file.
        #[arg(long)]
        out_private: PathBuf,
        /// 64-bit decimal seed for deterministic output.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Initialize a receiving group from public key files (sender-private output).
    GroupInit {
        /// Public key file; repeat at least twice, order fixes recipient indices.
        #[arg(long = "public")]
        public: Vec<PathBuf>,
        /// AMOUN-PRM v1 parameter file the keys were generated under.
        #[arg(long)]
        params_from: PathBuf,
        /// Where to write the group file.
        #[arg(long)]
        out: PathBuf,
        /// 64-bit decimal seed for deterministic output.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Encrypt one plaintext file per recipient into a single ciphertext file.
    Encrypt {
        /// Group file produced by group-init.
        #[arg(long)]
        group: PathBuf,
        /// Plaintext file; repeat once per recipient, positionally.
        #[arg(long = "in")]
        input: Vec<PathBuf>,
        /// Where to write the ciphertext file.
        #[arg(long)]
        out: PathBuf,
        /// 64-bit decimal seed for deterministic coins.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decrypt one recipient's plaintext from a ciphertext file.
    Decrypt {
        /// Private key file.
        #[arg(long)]
        private: PathBuf,
        /// Recipient index within the group (0-based).
        #[arg(long)]
        index: u32,
        /// Ciphertext file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Where to write the plaintext.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the timing suite comparing the scheme against RSA and Multi-RSA.
    Bench {
        /// JSON config file; flags below override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Schemes: amoun, multirsa, rsa.
        #[arg(long, value_delimiter = ',')]
        schemes: Option<Vec<String>>,
        /// Phases: init, encrypt, decrypt.
        #[arg(long, value_delimiter = ',')]
        phases: Option<Vec<String>>,
        /// Receiving-group sizes.
        #[arg(long, value_delimiter = ',')]
        group_sizes: Option<Vec<u32>>,
        /// Prime sizes for the batched scheme.
        #[arg(long, value_delimiter = ',')]
        amoun_prime_bits: Option<Vec<u32>>,
        /// Prime size for the baselines.
        #[arg(long)]
        baseline_prime_bits: Option<u32>,
        /// Timed runs per cell.
        #[arg(long)]
        repetitions: Option<u32>,
        /// Untimed runs before measurement.
        #[arg(long)]
        warmup_runs: Option<u32>,
        /// 64-bit decimal seed for key material and messages.
        #[arg(long)]
        seed: Option<u64>,
        /// Encrypt with the parallel path.
        #[arg(long)]
        parallel: bool,
        /// Output format: csv, json, or table.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Keygen {
            alpha_bits,
            v_bits,
            t_bits,
            r_bits,
            f_bits,
            out_public,
            out_private,
            seed,
        } => cmd_keygen(
            KeyGenParams::new(alpha_bits, v_bits, t_bits, r_bits, f_bits),
            &out_public,
            &out_private,
            seed,
        ),
        Command::GroupInit {
            public,
            params_from,
            out,
            seed,
        } => cmd_group_init(&public, &params_from, &out, seed),
        Command::Encrypt {
            group,
            input,
            out,
            seed,
        } => cmd_encrypt(&group, &input, &out, seed),
        Command::Decrypt {
            private,
            index,
            input,
            out,
        } => cmd_decrypt(&private, index, &input, &out),
        Command::Bench {
            config,
            schemes,
            phases,
            group_sizes,
            amoun_prime_bits,
            baseline_prime_bits,
            repetitions,
            warmup_runs,
            seed,
            parallel,
            format,
            out,
        } => cmd_bench(
            config.as_deref(),
            &BenchOverrides {
                schemes,
                phases,
                group_sizes,
                amoun_prime_bits,
                baseline_prime_bits,
                repetitions,
                warmup_runs,
                seed,
                parallel,
            },
            &format,
            out.as_deref(),
        ),
    };
    if let Err(err) = result {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}
