//! Replays the checked-in fuzz corpus through the same properties the fuzz
//! targets assert, so the seeds are exercised on stable toolchains too.

use std::fs;
use std::path::PathBuf;

use ecverify::arith::{parse_integer, parse_rational, rat_from_int};
use ecverify::ledger::{emit_report, parse_l_list, Format, VerificationReport};
use ecverify::padic::PadicNumber;
use ecverify::WeierstrassCurve;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, String::from_utf8_lossy(&fs::read(&path).unwrap()).into_owned())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn curve_seeds() {
    let mut parsed = 0;
    for (name, s) in seeds("parse_curve") {
        if let Ok(c) = s.parse::<WeierstrassCurve>() {
            parsed += 1;
            assert_eq!(c.to_string().parse::<WeierstrassCurve>().unwrap(), c, "{name}");
        }
    }
    assert!(parsed >= 4);
    assert!("0,0,0,0,0".parse::<WeierstrassCurve>().is_err());
}

#[test]
fn number_seeds() {
    for (name, s) in seeds("parse_number") {
        if let Ok(n) = parse_integer(&s) {
            assert_eq!(parse_integer(&n.to_string()).unwrap(), n, "{name}");
            assert_eq!(parse_rational(&s).unwrap(), rat_from_int(&n), "{name}");
        }
        if let Ok(q) = parse_rational(&s) {
            assert_eq!(parse_rational(&q.to_string()).unwrap(), q, "{name}");
        }
    }
    assert!(parse_rational("1/0").is_err());
}

#[test]
fn padic_seeds() {
    for (name, s) in seeds("parse_padic") {
        let x: PadicNumber = s.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(x.to_string(), s, "{name}");
        let _ = x.neg().add(&x).unwrap();
    }
}

#[test]
fn report_seeds() {
    let mut parsed = 0;
    for (name, s) in seeds("parse_report_json") {
        if let Ok(r) = VerificationReport::from_json(&s) {
            parsed += 1;
            let json = emit_report(&r, Format::Json);
            assert_eq!(json, s, "{name}: checked-in report is not canonical");
            assert_eq!(VerificationReport::from_json(&json).unwrap(), r);
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn l_list_seeds() {
    for (name, s) in seeds("parse_l_list") {
        let ls = parse_l_list(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
        let joined = ls.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_l_list(&joined).unwrap(), ls);
    }
}
