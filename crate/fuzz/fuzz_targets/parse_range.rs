#![no_main]

use libfuzzer_sys::fuzz_target;
use lpv_core::harness::NRange;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text.parse::<NRange>() {
        let printed = v.to_string();
        assert_eq!(printed.parse::<NRange>().unwrap(), v);
    }
});
