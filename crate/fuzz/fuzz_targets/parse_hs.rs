#![no_main]
use libfuzzer_sys::fuzz_target;
use lossy_hs::instances::{parse_hs, write_hs};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(inst) = parse_hs(text) {
        // Accepted input must survive a write/parse round trip.
        let written = write_hs(&inst).expect("parsed instances are dense");
        assert_eq!(parse_hs(&written).unwrap(), inst);
    }
});
