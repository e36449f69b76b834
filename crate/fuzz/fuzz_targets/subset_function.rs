#![no_main]

use libfuzzer_sys::fuzz_target;
use prdesign::harmonics::SubsetFunction;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = SubsetFunction::from_text(text) {
        assert_eq!(f.to_text(), text);
    }
});
