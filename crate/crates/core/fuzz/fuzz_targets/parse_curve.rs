#![no_main]

use ecverify::WeierstrassCurve;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = s.parse::<WeierstrassCurve>() {
        let again: WeierstrassCurve = c.to_string().parse().expect("display re-parses");
        assert_eq!(again, c);
        assert_ne!(c.invariants().disc.to_string(), "0");
    }
});
