//! The fuzz seed corpus, and byte-level mutations of it, run through the
//! same decoders and round-trip checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use trislice::io::{
    decode_coefficients, decode_comparison, decode_counts, decode_kernel, decode_report, encode_coefficients,
    encode_comparison, encode_counts, encode_kernel, encode_report, families_from_rows, Format,
};
use trislice::oracle::RootedMap;

const TARGETS: [&str; 6] = ["coefficients", "counts", "comparison", "kernel", "report", "rooted_map"];

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn format_of(name: &str) -> Format {
    if name.ends_with(".json") {
        Format::Json
    } else {
        Format::Csv
    }
}

fn exercise_map(m: &RootedMap) {
    let again: RootedMap = m.to_string().parse().expect("displayed map parses");
    assert_eq!(&again, m);
    let canon = m.canonical();
    assert_eq!(canon.canonical(), canon);
    let _ = m.is_planar();
    let _ = m.distance_profile();
}

/// Returns whether `data` decoded; panics if a round trip fails.
fn run_target(target: &str, data: &[u8]) -> bool {
    let Ok(text) = std::str::from_utf8(data) else { return false };
    let mut decoded = false;
    for fmt in [Format::Csv, Format::Json] {
        match target {
            "coefficients" => {
                if let Ok(rows) = decode_coefficients(text, fmt) {
                    let again = encode_coefficients(&rows, fmt).unwrap();
                    assert_eq!(decode_coefficients(&again, fmt).unwrap(), rows);
                    let _ = families_from_rows(&rows);
                    decoded = true;
                }
            }
            "counts" => {
                if let Ok(table) = decode_counts(text, fmt) {
                    assert_eq!(decode_counts(&encode_counts(&table, fmt).unwrap(), fmt).unwrap(), table);
                    decoded = true;
                }
            }
            "comparison" => {
                if let Ok(rows) = decode_comparison(text, fmt) {
                    assert_eq!(decode_comparison(&encode_comparison(&rows, fmt).unwrap(), fmt).unwrap(), rows);
                    decoded = true;
                }
            }
            "kernel" => {
                if let Ok(rows) = decode_kernel(text, fmt) {
                    assert_eq!(decode_kernel(&encode_kernel(&rows, fmt).unwrap(), fmt).unwrap(), rows);
                    decoded = true;
                }
            }
            "report" => {
                if let Ok(report) = decode_report(text) {
                    assert_eq!(decode_report(&encode_report(&report).unwrap()).unwrap(), report);
                    decoded = true;
                }
            }
            "rooted_map" => {
                if let Ok(m) = text.parse::<RootedMap>() {
                    exercise_map(&m);
                    decoded = true;
                }
                if let Ok(m) = serde_json::from_str::<RootedMap>(text) {
                    exercise_map(&m);
                    decoded = true;
                }
            }
            other => panic!("unknown target {other}"),
        }
    }
    decoded
}

#[test]
fn every_seed_decodes() {
    for target in TARGETS {
        let seeds = seeds(target);
        assert!(!seeds.is_empty(), "{target} has no seeds");
        for (name, data) in seeds {
            assert!(run_target(target, &data), "{target}/{name} does not decode");
            if target != "report" && target != "rooted_map" {
                let text = std::str::from_utf8(&data).unwrap();
                let fmt = format_of(&name);
                let ok = match target {
                    "coefficients" => decode_coefficients(text, fmt).is_ok(),
                    "counts" => decode_counts(text, fmt).is_ok(),
                    "comparison" => decode_comparison(text, fmt).is_ok(),
                    _ => decode_kernel(text, fmt).is_ok(),
                };
                assert!(ok, "{target}/{name} is not valid in its own format");
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Edit {
    Flip(usize, u8),
    Insert(usize, u8),
    Delete(usize),
}

fn mutated() -> impl Strategy<Value = (&'static str, Vec<u8>)> {
    let pick = (0..TARGETS.len(), any::<prop::sample::Index>());
    let edit = prop_oneof![
        (any::<usize>(), any::<u8>()).prop_map(|(i, b)| Edit::Flip(i, b)),
        (any::<usize>(), prop::sample::select(b"0123456789-,;[]{}\":\n abcdefghijklmnopqrstuvwxyz".to_vec()))
            .prop_map(|(i, b)| Edit::Insert(i, b)),
        any::<usize>().prop_map(Edit::Delete),
    ];
    (pick, prop::collection::vec(edit, 1..6)).prop_map(|((t, which), edits)| {
        let target = TARGETS[t];
        let seeds = seeds(target);
        let mut data = seeds[which.index(seeds.len())].1.clone();
        for e in edits {
            let n = data.len().max(1);
            match e {
                Edit::Flip(i, b) if !data.is_empty() => data[i % n] ^= b,
                Edit::Insert(i, b) => data.insert(i % (data.len() + 1), b),
                Edit::Delete(i) if !data.is_empty() => {
                    data.remove(i % n);
                }
                _ => {}
            }
        }
        (target, data)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn mutated_seeds_never_panic((target, data) in mutated()) {
        run_target(target, &data);
    }
}
