#![no_main]

use libfuzzer_sys::fuzz_target;
use lpv_core::polyseq::SequenceSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text.parse::<SequenceSpec>() {
        let printed = v.to_string();
        assert_eq!(printed.parse::<SequenceSpec>().unwrap(), v);
    }
});
