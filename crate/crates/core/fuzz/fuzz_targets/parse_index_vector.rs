#![no_main]

use hipkernels::io::{parse_index_vector, render_index_vector};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: (u16, &[u8])| {
    let (bound, data) = input;
    let bound = bound as usize;
    let Ok(v) = parse_index_vector(data, bound) else { return };
    assert!(v.iter().all(|&i| i < bound));
    let mut out = Vec::new();
    render_index_vector(&v, &mut out).unwrap();
    assert_eq!(parse_index_vector(out.as_slice(), bound).unwrap(), v);
});
