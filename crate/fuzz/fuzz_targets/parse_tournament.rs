#![no_main]
use libfuzzer_sys::fuzz_target;
use lossy_hs::instances::{parse_tournament, write_tournament};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_tournament(text) {
        let written = write_tournament(&t).expect("parsed tournaments are dense");
        assert_eq!(parse_tournament(&written).unwrap(), t);
    }
});
