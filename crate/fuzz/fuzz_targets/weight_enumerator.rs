#![no_main]

use libfuzzer_sys::fuzz_target;
use prdesign::harmonics::WeightEnumeratorVector;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(e) = WeightEnumeratorVector::from_text(text) {
        assert_eq!(e.to_text(), text);
        let p = e.primitive();
        assert!(p.proportional_to(&e) || e.is_zero());
    }
});
