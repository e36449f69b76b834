#![no_main]

use libfuzzer_sys::fuzz_target;
use prdesign::jacobi::JacobiPolynomial;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(j) = JacobiPolynomial::from_json(text) {
        assert_eq!(JacobiPolynomial::from_json(&j.to_json()).unwrap(), j);
        assert_eq!(JacobiPolynomial::from_text(&j.to_text()).unwrap(), j);
    }
});
