#![no_main]

use libfuzzer_sys::fuzz_target;
use trislice::io::{decode_coefficients, encode_coefficients, families_from_rows, Format};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for fmt in [Format::Csv, Format::Json] {
        let Ok(rows) = decode_coefficients(text, fmt) else { continue };
        let again = encode_coefficients(&rows, fmt).expect("decoded rows encode");
        assert_eq!(decode_coefficients(&again, fmt).expect("re-decode"), rows);
        let _ = families_from_rows(&rows);
    }
});
