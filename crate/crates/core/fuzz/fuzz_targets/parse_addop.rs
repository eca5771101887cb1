#![no_main]

use hipkernels::AddOp;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(op) = s.parse::<AddOp>() {
        assert!(matches!(s, "sum" | "second" | "or"), "accepted {s:?} as {op:?}");
    }
});
