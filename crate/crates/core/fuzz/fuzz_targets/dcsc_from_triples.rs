#![no_main]

use hipkernels::{LocalDcsc, Triple};
use libfuzzer_sys::fuzz_target;

// Small coordinates so that sorted, valid inputs turn up often.
fuzz_target!(|input: (u8, u8, Vec<(u8, u8, i16)>)| {
    let (nrows, ncols, raw) = input;
    let (nrows, ncols) = (nrows as usize % 32, ncols as usize % 32);
    let triples: Vec<Triple> = raw
        .iter()
        .map(|&(i, j, v)| Triple::new(i as usize % 40, j as usize % 40, v as f64))
        .collect();
    if let Ok(m) = LocalDcsc::from_sorted_triples(&triples, nrows, ncols) {
        m.validate().expect("constructor output is valid");
        assert_eq!(m.to_triples(), triples);
        assert_eq!(m.cp().len(), m.jc().len() + 1);
    }
});
