#![no_main]
use libfuzzer_sys::fuzz_target;
use lossy_hs::instances::{parse_graph, write_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph(text) {
        let written = write_graph(&g).expect("parsed graphs are dense");
        assert_eq!(parse_graph(&written).unwrap(), g);
    }
});
