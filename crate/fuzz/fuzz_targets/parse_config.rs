#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(config) = gaborlab::parse_config(text) {
        // Anything accepted must survive a round trip.
        let again = serde_json::to_string(&config).unwrap();
        assert_eq!(gaborlab::parse_config(&again).unwrap(), config);
    }
});
