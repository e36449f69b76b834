#![no_main]

use libfuzzer_sys::fuzz_target;
use prdesign::jacobi::JacobiPolynomial;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(j) = JacobiPolynomial::from_text(text) {
        assert_eq!(j.to_text(), text);
        assert_eq!(JacobiPolynomial::from_json(&j.to_json()).unwrap(), j);
    }
});
