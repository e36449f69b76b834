#![no_main]

use libfuzzer_sys::fuzz_target;
use prdesign::designs::BlockMultiset;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(blocks) = BlockMultiset::from_text(text) else { return };
    // Input order is free, so compare through one write/read cycle.
    let out = blocks.to_text().expect("parsed multisets serialize");
    let again = BlockMultiset::from_text(&out).expect("output parses");
    assert_eq!(again, blocks);
    assert_eq!(again.to_text().unwrap(), out);
});
