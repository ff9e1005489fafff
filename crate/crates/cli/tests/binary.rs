use std::process::Command;

fn sh22(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sh22"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn quick_verify_passes() {
    let out = sh22(&["verify", "--gamma", "1", "--N", "64", "--level", "quick"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn full_verify_names_every_odd_relation() {
    let out = sh22(&["verify", "--gamma", "2", "--N", "256", "--level", "full"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "{F+,F+} = 0",
        "{F-,F-} = 0",
        "{Q+,Q+} = 0",
        "{Q-,Q-} = 0",
        "{F+,F-} = 1",
        "{Q+,Q-} = H",
        "{F+,Q-} = 0",
        "{F-,Q+} = 0",
        "{F+,Q+} = E+",
        "{F-,Q-} = E-",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn perturbation_makes_verify_fail() {
    let out = sh22(&["verify", "--gamma", "1", "--N", "64", "--perturb", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invariant check failed"));
}

#[test]
fn bad_parameters_exit_nonzero_with_record() {
    let out = sh22(&["wavefunction", "--gamma", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["error"]["kind"], "parameter");
    let out = sh22(&["limit", "--gamma", "1.5", "--j", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("sh22-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wf.csv");
    let out = sh22(&[
        "wavefunction",
        "--gamma",
        "1",
        "--n",
        "0..3",
        "--k-max",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let table = sh22_cli::output::read_csv(&text).unwrap();
    assert_eq!(table.rows.len(), 21 * 4);
    let phi = table.column("phi").unwrap();
    let origin_odd = table
        .rows
        .iter()
        .find(|r| r[0] == "1" && r[2] == "0")
        .unwrap();
    assert_eq!(origin_odd[phi].parse::<f64>().unwrap(), 0.0);
    std::fs::remove_dir_all(dir).unwrap();
}
