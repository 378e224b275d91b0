#![no_main]

use libfuzzer_sys::fuzz_target;
use trislice::io::{decode_report, encode_report};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(report) = decode_report(text) else { return };
    let again = encode_report(&report).expect("decoded report encodes");
    assert_eq!(decode_report(&again).expect("re-decode"), report);
});
