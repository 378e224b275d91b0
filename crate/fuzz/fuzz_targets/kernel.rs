#![no_main]

use libfuzzer_sys::fuzz_target;
use trislice::io::{decode_kernel, encode_kernel, Format};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for fmt in [Format::Csv, Format::Json] {
        let Ok(rows) = decode_kernel(text, fmt) else { continue };
        let again = encode_kernel(&rows, fmt).expect("decoded rows encode");
        assert_eq!(decode_kernel(&again, fmt).expect("re-decode"), rows);
    }
});
