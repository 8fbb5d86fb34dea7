#![no_main]
use libfuzzer_sys::fuzz_target;
use lossy_hs::instances::{parse_solution, write_solution, ProblemKind};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sol) = parse_solution(text, ProblemKind::Hs) {
        assert_eq!(parse_solution(&write_solution(&sol), ProblemKind::Hs).unwrap(), sol);
    }
});
