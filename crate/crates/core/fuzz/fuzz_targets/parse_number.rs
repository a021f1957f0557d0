#![no_main]

use ecverify::arith::{parse_integer, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(n) = parse_integer(s) {
        assert_eq!(parse_integer(&n.to_string()).unwrap(), n);
        assert_eq!(parse_rational(s).unwrap(), ecverify::arith::rat_from_int(&n));
    }
    if let Ok(q) = parse_rational(s) {
        assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }
});
