use std::path::PathBuf;

use filiform::exactlin::{format_rational, parse_rational};
use filiform::json::{algebra_from_json, algebra_to_json, deformation_from_json, deformation_to_json};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.display().to_string(), std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn algebra_seeds_round_trip() {
    for (name, text) in seeds("algebra_json") {
        let (alg, meta) = algebra_from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let emitted = algebra_to_json(&alg, &meta);
        let (again, meta_again) = algebra_from_json(&emitted).unwrap();
        assert_eq!(algebra_to_json(&again, &meta_again), emitted, "{name}");
    }
}

#[test]
fn deformation_seeds_round_trip() {
    for (name, text) in seeds("deformation_json") {
        let (psi, meta) = deformation_from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let emitted = deformation_to_json(&psi, &meta);
        let (again, meta_again) = deformation_from_json(&emitted).unwrap();
        assert_eq!(deformation_to_json(&again, &meta_again), emitted, "{name}");
    }
}

#[test]
fn rational_seeds_round_trip() {
    for (name, text) in seeds("rational") {
        let value = parse_rational(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value, "{name}");
    }
}
