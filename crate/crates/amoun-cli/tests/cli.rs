//! Binary-level tests: flags, exit codes, file round trips.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use amoun_cli::format::{parse_ciphertext_file, parse_key_file, KeyFile};

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("amoun-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn amoun(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amoun"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_params(dir: &Path, alpha: u32, v: u32, coins: u32) -> PathBuf {
    let path = dir.join("params.txt");
    fs::write(
        &path,
        format!(
            "AMOUN-PRM v1\nalpha_bits: {alpha}\nv_bits: {v}\nt_bits: {coins}\nr_bits: {coins}\nf_bits: {coins}\n"
        ),
    )
    .unwrap();
    path
}

/// keygen with small parameters, returning (public, private) paths.
fn quick_keygen(dir: &Path, name: &str, seed: u64) -> (PathBuf, PathBuf) {
    let public = dir.join(format!("{name}.pub"));
    let private = dir.join(format!("{name}.key"));
    let out = amoun(
        dir,
        &[
            "keygen",
            "--alpha-bits",
            "256",
            "--v-bits",
            "120",
            "--t-bits",
            "24",
            "--r-bits",
            "24",
            "--f-bits",
            "24",
            "--out-public",
            public.to_str().unwrap(),
            "--out-private",
            private.to_str().unwrap(),
            "--seed",
            &seed.to_string(),
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    (public, private)
}

fn init_group(dir: &Path, publics: &[&Path], params: &Path, seed: u64) -> PathBuf {
    let group = dir.join("group.txt");
    let mut args = vec!["group-init"];
    for p in publics {
        args.push("--public");
        args.push(p.to_str().unwrap());
    }
    let seed = seed.to_string();
    args.extend_from_slice(&[
        "--params-from",
        params.to_str().unwrap(),
        "--out",
        group.to_str().unwrap(),
        "--seed",
        &seed,
    ]);
    let out = amoun(dir, &args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    group
}

#[test]
fn default_keygen_prints_a_31_byte_budget() {
    let dir = scratch_dir("defaults");
    let out = amoun(
        &dir,
        &[
            "keygen",
            "--out-public",
            "k.pub",
            "--out-private",
            "k.key",
            "--seed",
            "1",
        ],
    );
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "budget: 31 bytes\n");
    match parse_key_file(&fs::read_to_string(dir.join("k.pub")).unwrap()).unwrap() {
        KeyFile::Public { alpha_bits, .. } => assert_eq!(alpha_bits, 1024),
        _ => panic!("expected a public key file"),
    }
}

#[test]
fn keygen_is_deterministic_under_a_seed() {
    let dir = scratch_dir("determinism");
    let (pub_a, prv_a) = quick_keygen(&dir, "a", 42);
    let (pub_b, prv_b) = quick_keygen(&dir, "b", 42);
    assert_eq!(fs::read(&pub_a).unwrap(), fs::read(&pub_b).unwrap());
    assert_eq!(fs::read(&prv_a).unwrap(), fs::read(&prv_b).unwrap());
}

#[test]
fn keygen_rejects_invalid_parameters_with_exit_2() {
    let dir = scratch_dir("badparams");
    let out = amoun(
        &dir,
        &[
            "keygen",
            "--alpha-bits",
            "256",
            "--v-bits",
            "256",
            "--out-public",
            "k.pub",
            "--out-private",
            "k.key",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.join("k.pub").exists(), "no partial outputs on failure");
}

#[test]
fn group_init_usage_and_coprimality_errors() {
    let dir = scratch_dir("groupinit");
    let params = write_params(&dir, 256, 120, 24);
    let (pub_a, _) = quick_keygen(&dir, "a", 1);

    let out = amoun(
        &dir,
        &[
            "group-init",
            "--public",
            pub_a.to_str().unwrap(),
            "--params-from",
            params.to_str().unwrap(),
            "--out",
            "g.txt",
        ],
    );
    assert_eq!(out.status.code(), Some(2), "single key is a usage error");

    let out = amoun(
        &dir,
        &[
            "group-init",
            "--public",
            pub_a.to_str().unwrap(),
            "--public",
            pub_a.to_str().unwrap(),
            "--params-from",
            params.to_str().unwrap(),
            "--out",
            "g.txt",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(4),
        "duplicate key shares every prime"
    );
}

#[test]
fn encrypt_decrypt_restores_files_bit_for_bit() {
    let dir = scratch_dir("roundtrip");
    let params = write_params(&dir, 256, 120, 24);
    let (pub_a, prv_a) = quick_keygen(&dir, "a", 1);
    let (pub_b, prv_b) = quick_keygen(&dir, "b", 2);
    let _group = init_group(&dir, &[&pub_a, &pub_b], &params, 3);

    // Budget at these parameters is 10 bytes per block.
    let m1: Vec<u8> = (0..10u8).collect();
    let m2: Vec<u8> = (0..60u8).map(|i| i ^ 0x5a).collect();
    fs::write(dir.join("m1.bin"), &m1).unwrap();
    fs::write(dir.join("m2.bin"), &m2).unwrap();

    let out = amoun(
        &dir,
        &[
            "encrypt",
            "--group",
            "group.txt",
            "--in",
            "m1.bin",
            "--in",
            "m2.bin",
            "--out",
            "ct.bin",
            "--seed",
            "4",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // 60 bytes over a 10-byte budget forces 6 blocks.
    let ct = parse_ciphertext_file(&fs::read(dir.join("ct.bin")).unwrap()).unwrap();
    assert_eq!(ct.blocks.len(), 6);
    assert_eq!(ct.declared_lengths, vec![10, 60]);

    for (key, index, expected) in [(&prv_a, "0", &m1), (&prv_b, "1", &m2)] {
        let out = amoun(
            &dir,
            &[
                "decrypt",
                "--private",
                key.to_str().unwrap(),
                "--index",
                index,
                "--in",
                "ct.bin",
                "--out",
                "plain.bin",
            ],
        );
        assert!(out.status.success());
        assert_eq!(&fs::read(dir.join("plain.bin")).unwrap(), expected);
    }

    // Wrong index: silent garbage, exit 0. No integrity layer exists.
    let out = amoun(
        &dir,
        &[
            "decrypt",
            "--private",
            prv_a.to_str().unwrap(),
            "--index",
            "1",
            "--in",
            "ct.bin",
            "--out",
            "garbage.bin",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let garbage = fs::read(dir.join("garbage.bin")).unwrap();
    assert_eq!(garbage.len(), 60);
    assert_ne!(garbage, m2);
}

#[test]
fn single_block_when_input_fits_the_budget() {
    let dir = scratch_dir("oneblock");
    let params = write_params(&dir, 256, 120, 24);
    let (pub_a, _) = quick_keygen(&dir, "a", 1);
    let (pub_b, _) = quick_keygen(&dir, "b", 2);
    init_group(&dir, &[&pub_a, &pub_b], &params, 3);
    fs::write(dir.join("m1.bin"), [7u8; 10]).unwrap();
    fs::write(dir.join("m2.bin"), [9u8; 10]).unwrap();
    let out = amoun(
        &dir,
        &[
            "encrypt",
            "--group",
            "group.txt",
            "--in",
            "m1.bin",
            "--in",
            "m2.bin",
            "--out",
            "ct.bin",
        ],
    );
    assert!(out.status.success());
    let ct = parse_ciphertext_file(&fs::read(dir.join("ct.bin")).unwrap()).unwrap();
    assert_eq!(ct.blocks.len(), 1);
}

#[test]
fn encrypt_input_count_mismatch_is_exit_5() {
    let dir = scratch_dir("mismatch");
    let params = write_params(&dir, 256, 120, 24);
    let (pub_a, _) = quick_keygen(&dir, "a", 1);
    let (pub_b, _) = quick_keygen(&dir, "b", 2);
    init_group(&dir, &[&pub_a, &pub_b], &params, 3);
    fs::write(dir.join("m1.bin"), [1u8; 4]).unwrap();
    let out = amoun(
        &dir,
        &[
            "encrypt",
            "--group",
            "group.txt",
            "--in",
            "m1.bin",
            "--out",
            "ct.bin",
        ],
    );
    assert_eq!(out.status.code(), Some(5));
    assert!(!dir.join("ct.bin").exists());
}

#[test]
fn truncated_ciphertext_is_exit_6() {
    let dir = scratch_dir("truncated");
    let params = write_params(&dir, 256, 120, 24);
    let (pub_a, prv_a) = quick_keygen(&dir, "a", 1);
    let (pub_b, _) = quick_keygen(&dir, "b", 2);
    init_group(&dir, &[&pub_a, &pub_b], &params, 3);
    fs::write(dir.join("m1.bin"), [1u8; 4]).unwrap();
    fs::write(dir.join("m2.bin"), [2u8; 4]).unwrap();
    let out = amoun(
        &dir,
        &[
            "encrypt",
            "--group",
            "group.txt",
            "--in",
            "m1.bin",
            "--in",
            "m2.bin",
            "--out",
            "ct.bin",
        ],
    );
    assert!(out.status.success());
    let full = fs::read(dir.join("ct.bin")).unwrap();
    fs::write(dir.join("cut.bin"), &full[..full.len() - 3]).unwrap();
    let out = amoun(
        &dir,
        &[
            "decrypt",
            "--private",
            prv_a.to_str().unwrap(),
            "--index",
            "0",
            "--in",
            "cut.bin",
            "--out",
            "plain.bin",
        ],
    );
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn bench_emits_csv_and_json() {
    let dir = scratch_dir("bench");
    let base = [
        "bench",
        "--schemes",
        "rsa,multirsa",
        "--phases",
        "encrypt",
        "--group-sizes",
        "2",
        "--amoun-prime-bits",
        "64",
        "--baseline-prime-bits",
        "64",
        "--repetitions",
        "2",
        "--warmup-runs",
        "0",
        "--seed",
        "9",
    ];
    let mut csv_args = base.to_vec();
    csv_args.extend_from_slice(&["--format", "csv"]);
    let out = amoun(&dir, &csv_args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("scheme,phase,group_size,prime_bits,"));
    assert_eq!(text.lines().count(), 3, "header plus two rows");

    let mut json_args = base.to_vec();
    json_args.extend_from_slice(&["--format", "json", "--out", "report.jsonl"]);
    let out = amoun(&dir, &json_args);
    assert!(out.status.success());
    let report = fs::read_to_string(dir.join("report.jsonl")).unwrap();
    assert_eq!(report.lines().count(), 2);
    assert!(report.contains("\"scheme\":\"rsa\""));

    let out = amoun(&dir, &["bench", "--format", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_accepts_a_json_config_file() {
    let dir = scratch_dir("benchcfg");
    fs::write(
        dir.join("cfg.json"),
        r#"{"schemes":["multirsa"],"phases":["decrypt"],"group_sizes":[2],
            "amoun_prime_bits":[64],"baseline_prime_bits":64,
            "repetitions":2,"warmup_runs":0,"rng_seed":5}"#,
    )
    .unwrap();
    let out = amoun(&dir, &["bench", "--config", "cfg.json", "--format", "csv"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("multirsa,decrypt,2,64,"));

    fs::write(dir.join("bad.json"), "{not json").unwrap();
    let out = amoun(&dir, &["bench", "--config", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
}
