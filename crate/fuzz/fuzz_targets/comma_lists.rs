#![no_main]

use libfuzzer_sys::fuzz_target;
use ulrich_lab::parse::{parse_family_list, parse_int_list, parse_nodes, parse_rank, MAX_RANK};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_family_list(s);
    let _ = parse_rank(s);
    if let Ok(v) = parse_int_list(s) {
        let text = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(parse_int_list(&text).unwrap(), v);
    }
    for rank in [1, 4, MAX_RANK] {
        if let Ok(j) = parse_nodes(s, rank) {
            assert!(j.nodes().iter().all(|&d| (1..=rank).contains(&d)));
        }
    }
});
