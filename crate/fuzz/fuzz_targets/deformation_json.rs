#![no_main]

use filiform::json::{deformation_from_json, deformation_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((psi, meta)) = deformation_from_json(text) {
        let emitted = deformation_to_json(&psi, &meta);
        let (again, meta_again) = deformation_from_json(&emitted).expect("emitted deformation parses");
        assert_eq!(deformation_to_json(&again, &meta_again), emitted);
    }
});
