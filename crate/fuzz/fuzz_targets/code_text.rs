#![no_main]

use libfuzzer_sys::fuzz_target;
use prdesign::prcode::CyclicCode;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(code) = CyclicCode::from_text(text) {
        // accepted input is canonical
        assert_eq!(code.to_text(), text);
    }
});
