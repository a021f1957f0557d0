#![no_main]

use ecverify::padic::PadicNumber;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = s.parse::<PadicNumber>() {
        // only canonical spellings are accepted
        assert_eq!(x.to_string(), s);
        let _ = x.neg().add(&x);
    }
});
