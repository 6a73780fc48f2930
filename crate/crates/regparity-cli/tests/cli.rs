use std::process::Command;

use regparity_cli::output::Document;

fn regparity(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_regparity"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap_or(-1))
}

#[test]
fn regconst_s3_row() {
    let (out, _, code) = regparity(&["regconst", "S3"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "2S3+1-2C2-C3 : 3 3 3"), "{out}");
}

#[test]
fn regconst_a5_rows() {
    let (out, _, code) = regparity(&["--format", "structured", "regconst", "A5"]);
    assert_eq!(code, 0);
    let doc = Document::parse(&out).unwrap();
    let table = &doc.records[0];
    assert_eq!(table.get("irreducibles").unwrap(), "1 rho4 rho5 rho6");
    assert_eq!(table.all("row").len(), 5);
}

#[test]
fn relations_lattice_ranks() {
    let (out, _, code) = regparity(&["relations", "C5"]);
    assert_eq!(code, 0);
    assert!(out.contains("lattice rank 0"), "{out}");
    let (out, _, _) = regparity(&["relations", "S3"]);
    assert!(out.contains("lattice rank 1"), "{out}");
    assert!(out.contains("L1 = 1-2C2-C3+2S3"), "{out}");
}

#[test]
fn borel_isogeny_check() {
    let (out, _, code) = regparity(&["isogeny-check", "--family", "borel", "--p", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("|det f| = 63"), "{out}");
    assert!(out.contains("matches printed matrix: yes"), "{out}");
    assert!(out.contains("agrees with ord_3 of regulator constants: yes"), "{out}");
}

#[test]
fn dihedral_isogeny_check() {
    let (out, _, code) = regparity(&["isogeny-check", "--family", "dihedral", "--n", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("det alpha_2 = 2000"), "{out}");
}

#[test]
fn parity_x1_11() {
    let (out, _, code) = regparity(&["parity", "--tower", "borel", "--p", "3", "--curve", "fixtures/x1_11.toml", "--m", "22"]);
    assert_eq!(code, 0);
    assert!(out.contains("ParityVerdict rk(E/K)+rk(E/M)+rk(E/L)"), "{out}");
    assert!(out.contains("parity: odd"), "{out}");
    let (out, _, _) = regparity(&["parity", "--tower", "borel", "--p", "3", "--curve", "fixtures/x1_11.toml", "--m", "2"]);
    assert!(out.contains("parity: even"), "{out}");
}

#[test]
fn parity_49a1_s3_even() {
    let (out, _, code) = regparity(&["parity", "--tower", "s3", "--curve", "fixtures/49a1.toml", "--m", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("parity: even"), "{out}");
}

#[test]
fn falsetate_ladder() {
    let (out, _, code) = regparity(&["--format", "structured", "falsetate", "--curve", "fixtures/49a1.toml", "--m", "10", "--levels", "4"]);
    assert_eq!(code, 0);
    let doc = Document::parse(&out).unwrap();
    assert_eq!(doc.records.len(), 5);
    for (n, r) in doc.records.iter().enumerate() {
        let w = if n % 2 == 0 { "1" } else { "-1" };
        assert_eq!(r.get("w_l").unwrap(), w);
        assert_eq!(r.get("lower_bound_l").unwrap(), n.to_string());
        assert_eq!(r.get("lower_bound_f").unwrap(), 3u64.pow(n as u32).to_string());
    }
}

#[test]
fn dihedral_tower_file() {
    let (out, _, code) = regparity(&["dihedral", "--tower-file", "fixtures/d10_tower.toml", "--rk-m", "even"]);
    assert_eq!(code, 0);
    assert!(out.contains("parity: odd"), "{out}");
    assert!(out.contains("rk_5(E/L) >= rk_5(E/K) + 2"), "{out}");
}

#[test]
fn structured_output_carries_seed() {
    let (out, _, _) = regparity(&["--format", "structured", "--seed", "42", "regconst", "S3"]);
    let doc = Document::parse(&out).unwrap();
    assert_eq!(doc.seed, 42);
    assert_eq!(doc.command, "regconst");
    assert_eq!(doc.to_string(), out);
}

#[test]
fn selftest_passes() {
    let (out, _, code) = regparity(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.contains(" PASS ")).count(), 10);
}

#[test]
fn input_errors_exit_2() {
    let (_, err, code) = regparity(&["regconst", "Foo"]);
    assert_eq!(code, 2);
    assert!(err.contains("Foo"));
    let (_, err, code) = regparity(&["parity", "--tower", "borel", "--curve", "fixtures/bad.toml", "--m", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("4:5:"), "{err}");
    let (_, _, code) = regparity(&["parity", "--tower", "borel", "--curve", "fixtures/missing.toml", "--m", "2"]);
    assert_eq!(code, 2);
    let (_, _, code) = regparity(&["falsetate", "--curve", "fixtures/49a1.toml", "--m", "8"]);
    assert_eq!(code, 2);
}

#[test]
fn refusal_exits_1() {
    // No local root number classifier for additive reduction at 2 without an override.
    let dir = std::env::temp_dir().join(format!("regparity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("additive2.toml");
    std::fs::write(&path, "[[place]]\nplace = \"2\"\nkind = \"finite\"\np = 2\ntype = \"additive_pot_good\"\nord_delta = 4\n").unwrap();
    let (out, err, code) = regparity(&["falsetate", "--curve", path.to_str().unwrap(), "--m", "5", "--levels", "1"]);
    assert_eq!(code, 1, "{out}{err}");
    let (_, err, code) = regparity(&["parity", "--tower", "borel", "--p", "3", "--curve", path.to_str().unwrap(), "--m", "3"]);
    assert_eq!(code, 1, "{err}");
    assert!(err.contains("neither side is computable"), "{err}");
}
