#![no_main]

use libfuzzer_sys::fuzz_target;
use prdesign::harmonics::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_rational(text) {
        assert_eq!(format_rational(&x), text);
    }
});
