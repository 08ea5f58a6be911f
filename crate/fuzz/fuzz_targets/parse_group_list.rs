#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(factors) = gaborlab::parse_group_list(text) {
            assert!(!factors.is_empty() && factors.iter().all(|&n| n >= 1));
        }
    }
});
