#![no_main]

use libfuzzer_sys::fuzz_target;
use lpv_core::kernel::ValuationTable;

// Anything that parses must print back to the same bytes.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = ValuationTable::parse(text) {
        assert_eq!(t.to_text(), text);
    }
});
