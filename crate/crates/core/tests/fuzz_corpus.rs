//! Replays the checked-in fuzz seeds for the text parsers with the same
//! invariants the fuzz targets assert.

use std::fs;
use std::path::Path;

use hipkernels::io::{parse_matrix_market, render_matrix_market};
use hipkernels::AddOp;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn matrix_market_seeds_round_trip() {
    let mut parsed = 0;
    for (name, data) in seeds("matrix_market_round_trip") {
        let Ok(m) = parse_matrix_market(data.as_slice()) else {
            continue;
        };
        parsed += 1;
        let mut out = Vec::new();
        render_matrix_market(&m, &mut out).unwrap();
        let back = parse_matrix_market(out.as_slice()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(back, m.clone().sorted(), "{name}");
    }
    assert!(parsed >= 4);
}

#[test]
fn matrix_market_seeds_parse_or_fail_cleanly() {
    for (name, data) in seeds("parse_matrix_market") {
        if let Ok(m) = parse_matrix_market(data.as_slice()) {
            assert!(
                m.entries().iter().all(|&(i, j, _)| i < m.nrows() && j < m.ncols()),
                "{name}"
            );
        }
    }
}

#[test]
fn addop_seeds_parse() {
    for (name, data) in seeds("parse_addop") {
        let s = String::from_utf8(data).unwrap();
        assert!(s.parse::<AddOp>().is_ok(), "{name}");
    }
}
