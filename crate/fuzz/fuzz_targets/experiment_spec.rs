#![no_main]
use libfuzzer_sys::fuzz_target;
use lossy_hs::harness::ExperimentSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // `jobs()` would allocate one entry per seed, so only parsing is exercised.
    let _ = ExperimentSpec::parse(text);
});
