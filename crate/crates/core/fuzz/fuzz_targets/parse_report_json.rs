#![no_main]

use ecverify::ledger::{emit_report, Format, VerificationReport};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = VerificationReport::from_json(s) {
        let json = emit_report(&r, Format::Json);
        assert_eq!(VerificationReport::from_json(&json).unwrap(), r);
        let _ = emit_report(&r, Format::Text);
    }
});
