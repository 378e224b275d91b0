#![no_main]

use libfuzzer_sys::fuzz_target;
use trislice::oracle::RootedMap;

fn exercise(m: &RootedMap) {
    let again: RootedMap = m.to_string().parse().expect("displayed map parses");
    assert_eq!(&again, m);
    let canon = m.canonical();
    assert_eq!(canon.canonical(), canon);
    let _ = m.is_planar();
    let _ = m.distance_profile();
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = text.parse::<RootedMap>() {
        exercise(&m);
    }
    if let Ok(m) = serde_json::from_str::<RootedMap>(text) {
        exercise(&m);
    }
});
