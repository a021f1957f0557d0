use std::process::{Command, Output};

use ecverify::ledger::{Status, VerificationReport};

fn ecverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecverify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> VerificationReport {
    VerificationReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

#[test]
fn full_ledger_for_e1_exits_zero() {
    let out = ecverify(&["ledger", "--prime-bound", "1000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert!(r.is_verified());
    assert_eq!(r.curve, "1,1,1,-10,-10");
    assert_eq!(r.options.prime_bound, 1000);
}

#[test]
fn json_is_byte_deterministic() {
    let args = [
        "ledger",
        "--curve",
        "1,1,1,-5,2",
        "--prime-bound",
        "500",
        "--l-list",
        "3,5",
    ];
    let a = ecverify(&args);
    let b = ecverify(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(report(&a).record("surjective-mod-7").is_none());
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ecverify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("torsion.txt");
    let out = ecverify(&["torsion", "--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("[PASS] torsion-structure"), "{text}");
    assert!(text.contains("[PASS] isogeny-degree-2"));
    assert!(text.ends_with("overall: verified-at-desk-scale\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn inconclusive_certificate_exits_nonzero() {
    let out = ecverify(&[
        "image-modl",
        "--curve",
        "0,-1,1,-10,-20",
        "--l-list",
        "5",
        "--prime-bound",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out).record("surjective-mod-5").unwrap().status, Status::Fail);
}

#[test]
fn additive_reduction_is_unsupported_not_fatal() {
    let out = ecverify(&["local", "--curve", "0,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r.records.iter().all(|r| r.status == Status::Unsupported));
}

#[test]
fn subcommands_select_sections() {
    for (cmd, id) in [
        ("invariants", "invariants"),
        ("count", "ordinary-criterion"),
        ("image-mod8", "mod8-fixed-points"),
        ("lvalue", "lvalue-ratio"),
        ("linv", "linv-5"),
    ] {
        let out = ecverify(&[cmd, "--prime-bound", "200", "--padic-digits", "8"]);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        let r = report(&out);
        assert_eq!(r.record(id).unwrap().status, Status::Pass, "{cmd}");
        assert!(r.record("cited-kato-selmer").is_none());
    }
}

#[test]
fn bad_arguments_are_rejected() {
    for args in [
        &["ledger", "--curve", "1,2,3"][..],
        &["ledger", "--curve", "0,0,0,0,0"],
        &["ledger", "--l-list", "4"],
        &["ledger", "--format", "yaml"],
        &["frobnicate"],
    ] {
        let out = ecverify(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
