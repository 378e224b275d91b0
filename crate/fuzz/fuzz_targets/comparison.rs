#![no_main]

use libfuzzer_sys::fuzz_target;
use trislice::io::{decode_comparison, encode_comparison, Format};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for fmt in [Format::Csv, Format::Json] {
        let Ok(rows) = decode_comparison(text, fmt) else { continue };
        let again = encode_comparison(&rows, fmt).expect("decoded rows encode");
        assert_eq!(decode_comparison(&again, fmt).expect("re-decode"), rows);
    }
});
