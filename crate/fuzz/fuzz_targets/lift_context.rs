#![no_main]
use libfuzzer_sys::fuzz_target;
use lossy_hs::harness::LiftContext;
use lossy_hs::instances::Solution;

// Contexts come from files, so a hostile one must produce an error, not a panic.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(ctx) = LiftContext::parse(text) else { return };
    for ids in [vec![], vec![1], vec![1, 2, 3]] {
        let _ = ctx.lift(&Solution::new(ctx.kind(), ids));
    }
});
