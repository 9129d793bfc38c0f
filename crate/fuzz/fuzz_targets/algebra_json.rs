#![no_main]

use filiform::json::{algebra_from_json, algebra_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((alg, meta)) = algebra_from_json(text) {
        // canonical output must parse back to the same document
        let emitted = algebra_to_json(&alg, &meta);
        let (again, meta_again) = algebra_from_json(&emitted).expect("emitted algebra parses");
        assert_eq!(algebra_to_json(&again, &meta_again), emitted);
    }
});
