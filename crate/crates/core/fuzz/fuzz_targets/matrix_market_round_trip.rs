#![no_main]

use hipkernels::io::{parse_matrix_market, render_matrix_market};
use libfuzzer_sys::fuzz_target;

fn bits(m: &hipkernels::io::CooMatrix) -> Vec<(usize, usize, u64)> {
    let mut v: Vec<_> = m.entries().iter().map(|&(i, j, x)| (i, j, x.to_bits())).collect();
    v.sort_unstable();
    v
}

fuzz_target!(|data: &[u8]| {
    let Ok(m) = parse_matrix_market(data) else { return };
    let mut out = Vec::new();
    render_matrix_market(&m, &mut out).unwrap();
    let back = parse_matrix_market(out.as_slice()).expect("rendered output parses");
    assert_eq!((back.nrows(), back.ncols()), (m.nrows(), m.ncols()));
    assert_eq!(bits(&back), bits(&m));
});
