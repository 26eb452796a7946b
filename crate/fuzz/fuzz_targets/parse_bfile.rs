#![no_main]

use libfuzzer_sys::fuzz_target;
use lpv_core::harness::parse_bfile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(records) = parse_bfile(text) {
        assert!(records.windows(2).all(|w| w[0].index < w[1].index));
    }
});
