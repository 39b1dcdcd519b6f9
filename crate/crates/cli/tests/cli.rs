use std::process::{Command, Output};

fn modforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modforms")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn expand_prints_exact_coefficients() {
    let o = modforms(&["expand", "A4", "--order", "6"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("# A4 d=0 order=6\n"));
    let coeffs: Vec<&str> = out.lines().skip(1).map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(coeffs, ["1", "12", "-60", "768", "-11004", "178200"]);

    let o = modforms(&["expand", "theta3", "--order", "2"]);
    assert_eq!(stdout(&o), "# theta3 d=0 order=2\n0 1\n1 2\n");
}

#[test]
fn expand_over_a_quadratic_field() {
    let o = modforms(&["expand", "(* w A2)", "--order", "2", "--field", "-3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "# (* w A2) d=-3 order=2\n0 0+1*w\n1 0+4*w\n");
}

#[test]
fn unknown_form_exits_2() {
    let o = modforms(&["expand", "no-such-form"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown form"));
}

#[test]
fn verify_single_record_and_empty_selection() {
    let o = modforms(&["verify", "--suite", "golden.A4sq", "--order", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[PASS] golden.A4sq"));

    let o = modforms(&["verify", "--suite", "none-matching"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn failing_record_gives_nonzero_exit() {
    let dir = std::env::temp_dir().join(format!("modforms-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong.toml");
    std::fs::write(
        &path,
        "[[record]]\nid = \"wrong\"\ntier = \"golden\"\ncitation = \"x\"\nquote = \"x\"\n\n[[record.check]]\nequal = [\"A2\", \"B2\"]\n",
    )
    .unwrap();
    let o = modforms(&["verify", "--catalog", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["first_failure"]["exponent"], "1");

    std::fs::write(&path, "[[record]]\nid = 3\n").unwrap();
    let o = modforms(&["verify", "--catalog", path.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn json_is_deterministic_and_timings_opt_in() {
    let args = ["verify", "--suite", "golden.*", "--format", "json", "--order", "12"];
    let a = modforms(&[&args[..], &["--jobs", "1"]].concat());
    let b = modforms(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("millis"));
    let t = modforms(&[&args[..], &["--timings"]].concat());
    assert!(stdout(&t).contains("millis"));
}

#[test]
fn counts_tables() {
    let o = modforms(&["counts", "squares", "--s", "3", "--max-n", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "1 12 12 12 yes"));
    let o = modforms(&["counts", "triangles", "--s", "1", "--max-n", "5"]);
    assert!(stdout(&o).lines().any(|l| l == "0 4 4 4 4 yes"));
    let o = modforms(&["counts", "squares", "--s", "4", "--max-n", "30"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("formula1 formula2"));
    assert_eq!(code(&modforms(&["counts", "squares", "--s", "5"])), 1);
}

#[test]
fn pf_check_seeded() {
    let o = modforms(&["pf-check", "--samples", "100", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("random triples: 100/100 zero"));
    assert!(out.contains("[PASS] weight-20 at M = 2 equals (N^2-36) u6^2 times Chazy-XII"));
    assert!(out.ends_with("all residuals zero\n"));

    let a = modforms(&["pf-check", "--samples", "10", "--seed", "3", "--format", "json"]);
    let b = modforms(&["pf-check", "--samples", "10", "--seed", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);

    let o = modforms(&["pf-check", "--samples", "0"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("modforms-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "# shared settings\norder = 4\nformat = json\n").unwrap();
    let cfg = path.to_str().unwrap();
    let o = modforms(&["expand", "A2", "--config", cfg]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], "4");
    let o = modforms(&["expand", "A2", "--config", cfg, "--format", "text", "--order", "2"]);
    assert_eq!(stdout(&o), "# A2 d=0 order=2\n0 1\n1 4\n");
    std::fs::write(&path, "colour = red\n").unwrap();
    assert_eq!(code(&modforms(&["expand", "A2", "--config", cfg])), 1);
}

#[test]
fn crosscheck_registry() {
    let o = modforms(&["crosscheck", "--order", "15"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with("routes agree at order 15"));
}
