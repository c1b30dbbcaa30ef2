#![no_main]

use libfuzzer_sys::fuzz_target;
use ulrich_lab::parse::decode_datum_json;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = decode_datum_json(s) {
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
    }
});
