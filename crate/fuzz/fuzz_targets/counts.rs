#![no_main]

use libfuzzer_sys::fuzz_target;
use trislice::io::{decode_counts, encode_counts, Format};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for fmt in [Format::Csv, Format::Json] {
        let Ok(table) = decode_counts(text, fmt) else { continue };
        let again = encode_counts(&table, fmt).expect("decoded table encodes");
        assert_eq!(decode_counts(&again, fmt).expect("re-decode"), table);
    }
});
