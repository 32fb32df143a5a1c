//! End-to-end tests of the spectrolab binary: exit codes, file outputs,
//! and determinism across worker counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_spectrolab")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spectrolab-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

#[test]
fn validate_good_groupoid_exits_zero() {
    let dir = tmp_dir("validate-ok");
    let model = dir.join("pair.json");
    write(&model, r#"{"builder":"pair","n":4}"#);
    let out = run(&["validate", "pair.json"], &dir);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("groupoid ok"));
}

#[test]
fn validate_corrupt_cocycle_exits_one_with_witness() {
    let dir = tmp_dir("validate-bad");
    write(&dir.join("pair.json"), r#"{"builder":"pair","n":3}"#);
    // a table cocycle with a perturbed value cannot satisfy the identity
    let mut rows = Vec::new();
    for xi in 0..9usize {
        for eta in 0..9usize {
            let (i1, j1) = (xi / 3, xi % 3);
            let (i2, j2) = (eta / 3, eta % 3);
            let _ = i2;
            if j1 == i2 {
                let _ = (i1, j2);
                rows.push(format!("[{xi},{eta},1.0,0.0]"));
            }
        }
    }
    // perturb one non-unit pair: (arrow 1 = (0,1), arrow 5 = (1,2))
    let table = rows
        .join(",")
        .replace("[1,5,1.0,0.0]", "[1,5,0.9950041652780258,0.09983341664682815]");
    write(
        &dir.join("bad.json"),
        &format!(r#"{{"kind":"table","values":[{table}]}}"#),
    );
    let out = run(&["validate", "pair.json", "bad.json"], &dir);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("INVALID"), "{stderr}");
}

#[test]
fn malformed_json_exits_two_with_position() {
    let dir = tmp_dir("malformed");
    write(&dir.join("broken.json"), "{\"builder\": \"pair\", \n  \"n\": }");
    let out = run(&["validate", "broken.json"], &dir);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "{stderr}");
}

fn kernel_file() -> &'static str {
    r#"{"groupoid":{"builder":"pair","n":4},
        "cocycle":{"kind":"trivial"},
        "values":{"0":[0.3,0.1],"1":[1.0,0.0],"6":[0.5,-0.5],"9":[0.2,0.0],"12":[0.0,0.7]}}"#
}

#[test]
fn spectrum_emits_csv() {
    let dir = tmp_dir("spectrum");
    write(&dir.join("kernel.json"), kernel_file());
    let out = run(&["spectrum", "kernel.json", "--unit", "0", "--out", "res"], &dir);
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(dir.join("res/spectrum.csv")).unwrap();
    assert!(csv.starts_with("re,im,multiplicity\n"));
    assert_eq!(csv.lines().count(), 5, "4 eigenvalues + header: {csv}");
}

#[test]
fn spectrum_unknown_unit_fails() {
    let dir = tmp_dir("spectrum-bad-unit");
    write(&dir.join("kernel.json"), kernel_file());
    let out = run(&["spectrum", "kernel.json", "--unit", "9"], &dir);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn psp_is_deterministic_across_worker_counts() {
    let dir = tmp_dir("psp-det");
    write(&dir.join("kernel.json"), kernel_file());
    let args_base = [
        "psp",
        "kernel.json",
        "--eps",
        "0.15",
        "--nx",
        "41",
        "--ny",
        "41",
    ];
    let mut csvs = Vec::new();
    for (workers, out_dir) in [("1", "w1"), ("3", "w3"), ("8", "w8")] {
        let mut args: Vec<&str> = args_base.to_vec();
        args.extend_from_slice(&["--workers", workers, "--out", out_dir]);
        let out = run(&args, &dir);
        assert!(out.status.success(), "{out:?}");
        csvs.push(std::fs::read_to_string(dir.join(out_dir).join("psp.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1], "worker count changed psp output");
    assert_eq!(csvs[0], csvs[2], "worker count changed psp output");
}

#[test]
fn workers_env_var_fallback() {
    let dir = tmp_dir("env-workers");
    write(&dir.join("kernel.json"), kernel_file());
    let args = [
        "psp", "kernel.json", "--eps", "0.15", "--nx", "21", "--ny", "21",
    ];
    let with_flag = run(&[&args[..], &["--workers", "2", "--out", "flag"]].concat(), &dir);
    assert!(with_flag.status.success());
    let with_env = Command::new(bin())
        .args([&args[..], &["--out", "env"]].concat())
        .env("SPECTROLAB_WORKERS", "2")
        .current_dir(&dir)
        .output()
        .unwrap();
    assert!(with_env.status.success());
    let a = std::fs::read_to_string(dir.join("flag/psp.csv")).unwrap();
    let b = std::fs::read_to_string(dir.join("env/psp.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn all_units_constancy_on_transitive_model() {
    let dir = tmp_dir("constancy");
    write(&dir.join("kernel.json"), kernel_file());
    let out = run(
        &[
            "psp",
            "kernel.json",
            "--eps",
            "0.1",
            "--all-units",
            "--nx",
            "21",
            "--ny",
            "21",
        ],
        &dir,
    );
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let line = stdout
        .lines()
        .find(|l| l.starts_with("constancy[psp-sigma]"))
        .expect("constancy line");
    let value: f64 = line
        .rsplit(' ')
        .next()
        .unwrap()
        .parse()
        .expect("parse distance");
    assert!(value < 1e-9, "{line}");
}

#[test]
fn nr_polygon_csv() {
    let dir = tmp_dir("nr");
    write(&dir.join("kernel.json"), kernel_file());
    let out = run(
        &["nr", "kernel.json", "--angles", "90", "--unit", "0", "--svg"],
        &dir,
    );
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(dir.join("out/nr.csv")).unwrap();
    assert!(csv.starts_with("polygon,vertex,re,im\n"));
    assert!(csv.contains("inner,"));
    assert!(csv.contains("outer,"));
    assert!(dir.join("out/nr.svg").exists());
}

#[test]
fn hull_and_num_regions() {
    let dir = tmp_dir("hullnum");
    write(&dir.join("kernel.json"), kernel_file());
    for (cmd, file) in [("hull", "out/hull.csv"), ("num", "out/num.csv")] {
        let out = run(
            &[
                cmd,
                "kernel.json",
                "--poly",
                "0,0;1,0",
                "--unit",
                "0",
                "--nx",
                "31",
                "--ny",
                "31",
            ],
            &dir,
        );
        assert!(out.status.success(), "{cmd}: {out:?}");
        let csv = std::fs::read_to_string(dir.join(file)).unwrap();
        assert!(csv.starts_with("re,im,sigma_min,member\n"));
        assert_eq!(csv.lines().count(), 31 * 31 + 1);
    }
}

#[test]
fn essential_two_orbit_model() {
    let dir = tmp_dir("essential");
    // disjoint union of two pair groupoids via explicit transformation:
    // use a 2-orbit action of z2 on {0,1,2}: swap 0,1 and fix 2
    write(
        &dir.join("kernel.json"),
        r#"{"groupoid":{"builder":"transformation","group":"z2",
             "action":[[0,1,2],[1,0,2]],"points":3},
            "values":{"0":[1.0,0.0],"1":[0.4,0.0],"2":[0.4,0.0],"3":[1.0,0.0],"4":[2.5,0.0],"5":[0.3,0.0]}}"#,
    );
    let out = run(
        &["essential", "kernel.json", "--xinf", "2", "--selector", "spectrum"],
        &dir,
    );
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("essential inclusion: ok"), "{stdout}");
    // non-invariant subset is rejected
    let out = run(&["essential", "kernel.json", "--xinf", "0,2"], &dir);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decompose_toeplitz_report() {
    let dir = tmp_dir("decompose");
    write(
        &dir.join("model.json"),
        r#"{"model":"toeplitz","symbol":{"1":[1,0],"-1":[1,0]},"drop":3,"sizes":[16,32,64]}"#,
    );
    let out = run(&["decompose", "model.json"], &dir);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("classifications agree off curve: yes"), "{stdout}");
    let csv = std::fs::read_to_string(dir.join("out/fredholm.csv")).unwrap();
    assert!(csv.starts_with("lambda_re,lambda_im,n,sigma_raw,sigma_dropped,"));
    assert!(dir.join("out/symbol_curve.csv").exists());
    assert!(dir.join("out/decompose_summary.json").exists());
    // drop 0: spectra of the two families are identical
    let out = run(&["decompose", "model.json", "--drop", "0"], &dir);
    assert!(out.status.success());
    let summary =
        std::fs::read_to_string(dir.join("out/decompose_summary.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&summary).unwrap();
    for row in parsed["spectrum_hausdorff"].as_array().unwrap() {
        assert!(row[1].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn decompose_short_schedule_rejected() {
    let dir = tmp_dir("decompose-short");
    write(
        &dir.join("model.json"),
        r#"{"model":"toeplitz","symbol":{"1":[1,0]},"drop":40,"sizes":[16,32]}"#,
    );
    let out = run(&["decompose", "model.json"], &dir);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("schedule"), "{stderr}");
}

#[test]
fn harper_matches_bloch_oracle() {
    let dir = tmp_dir("harper");
    let out = run(&["harper", "--alpha", "1/3", "--n", "12"], &dir);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("bloch oracle hausdorff distance"));
    assert!(dir.join("out/harper_spectrum.csv").exists());
    assert!(dir.join("out/harper_bloch.csv").exists());
    // flux quantization violation
    let out = run(&["harper", "--alpha", "1/5", "--n", "12"], &dir);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn opx_spectrum_constant_on_transitive_action() {
    let dir = tmp_dir("opx");
    let out = run(
        &[
            "opx",
            "--group",
            "z6",
            "--hopping",
            r#"{"1":[1,0],"5":[1,0]}"#,
            "--potential",
            r#"{"0":[0.5,0],"3":[-0.5,0]}"#,
            "--all-units",
        ],
        &dir,
    );
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let line = stdout
        .lines()
        .find(|l| l.starts_with("constancy[opx-spectrum]"))
        .expect("constancy line");
    let value: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(value < 1e-9, "{line}");
    assert!(dir.join("out/opx_spectrum.csv").exists());
    assert!(dir.join("out/opx_matrix.csv").exists());
}

#[test]
fn opx_with_custom_group_and_dual_matches_shipped() {
    let dir = tmp_dir("opx-custom");
    // Z_3 as an explicit group file with its character table as a dual file
    write(
        &dir.join("z3.json"),
        r#"{"elements":["e","g","g2"],"mult":[[0,1,2],[1,2,0],[2,0,1]]}"#,
    );
    let w = 2.0 * std::f64::consts::PI / 3.0;
    let chi = |k: usize, a: usize| {
        let t = w * (k * a) as f64;
        format!("[[[{},{}]]]", t.cos(), t.sin())
    };
    let mut irreps = Vec::new();
    for k in 0..3 {
        irreps.push(format!(
            r#"{{"dim":1,"matrices":{{"e":{},"g":{},"g2":{}}}}}"#,
            chi(k, 0),
            chi(k, 1),
            chi(k, 2)
        ));
    }
    write(
        &dir.join("dual.json"),
        &format!(r#"{{"irreps":[{}]}}"#, irreps.join(",")),
    );
    let hopping = r#"{"1":[1,0],"2":[0.5,0]}"#;
    let custom = run(
        &[
            "opx", "--group", "z3.json", "--dual", "dual.json", "--hopping", hopping,
            "--out", "custom",
        ],
        &dir,
    );
    assert!(custom.status.success(), "{custom:?}");
    let shipped = run(
        &["opx", "--group", "z3", "--hopping", hopping, "--out", "shipped"],
        &dir,
    );
    assert!(shipped.status.success(), "{shipped:?}");
    let a = std::fs::read_to_string(dir.join("custom/opx_matrix.csv")).unwrap();
    let b = std::fs::read_to_string(dir.join("shipped/opx_matrix.csv")).unwrap();
    // same convolution operator, entry for entry (up to fp noise in the
    // hand-written character table)
    for (la, lb) in a.lines().zip(b.lines()).skip(1) {
        let pa: Vec<f64> = la.split(',').skip(2).map(|s| s.parse().unwrap()).collect();
        let pb: Vec<f64> = lb.split(',').skip(2).map(|s| s.parse().unwrap()).collect();
        assert!((pa[0] - pb[0]).abs() < 1e-12 && (pa[1] - pb[1]).abs() < 1e-12);
    }
}

#[test]
fn opx_symbol_file_potential() {
    let dir = tmp_dir("opx-symbolfile");
    write(
        &dir.join("symbol.json"),
        r#"{"entries":[{"unit":0,"irrep":1,"matrix":[[[1,0]]]}],
            "potential":{"0":[0.25,0],"2":[-0.25,0]}}"#,
    );
    let out = run(
        &["opx", "--group", "z4", "--symbol-file", "symbol.json"],
        &dir,
    );
    assert!(out.status.success(), "{out:?}");
    assert!(dir.join("out/opx_spectrum.csv").exists());
}

#[test]
fn opx_magnetic_on_torus() {
    let dir = tmp_dir("opx-magnetic");
    let out = run(
        &[
            "opx",
            "--group",
            "z6^2",
            "--magnetic",
            "1/3",
            "--hopping",
            r#"{"6":[1,0],"30":[1,0],"1":[1,0],"5":[1,0]}"#,
        ],
        &dir,
    );
    assert!(out.status.success(), "{out:?}");
    assert!(dir.join("out/opx_spectrum.csv").exists());
}
