#![no_main]

use ecverify::ledger::parse_l_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(ls) = parse_l_list(s) {
        assert!(!ls.is_empty());
        let joined = ls.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_l_list(&joined).unwrap(), ls);
    }
});
