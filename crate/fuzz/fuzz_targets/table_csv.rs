#![no_main]

use libfuzzer_sys::fuzz_target;
use prdesign::designs::{parse_table_csv, table_to_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = parse_table_csv(text) {
        assert_eq!(table_to_csv(&rows), text);
    }
});
