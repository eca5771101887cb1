#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(m) = hipkernels::io::parse_matrix_market(data) {
        for &(i, j, v) in m.entries() {
            assert!(i < m.nrows() && j < m.ncols());
            assert!(v.is_finite());
        }
    }
});
