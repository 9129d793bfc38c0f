//! JSON forms of algebras and deformations.
//!
//! Coefficients are strings (`"3"`, `"-1/18"`) so values stay exact; each
//! `out` list holds `[basis position, coefficient]` pairs. Output is
//! canonical: entries sorted by key, zero coefficients omitted, so
//! serialize → parse → serialize is byte-identical.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, zero_vector, Rational};
use crate::graded::{GradeIndex, OrderFAlgebra};

/// Free-form string annotations carried alongside a document.
pub type Meta = BTreeMap<String, String>;

/// Largest `n`, `m` or `p` a document may declare. Every stored value is a
/// dense vector of that length, so unbounded headers would let a few bytes
/// of input demand arbitrary memory.
pub const MAX_DIMENSION: usize = 4096;

fn check_header(sizes: &[(&str, usize)]) -> Result<()> {
    for &(name, value) in sizes {
        if value > MAX_DIMENSION {
            return Err(Error::Parse(format!("header: {name} = {value} exceeds {MAX_DIMENSION}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairEntry {
    i: usize,
    j: usize,
    out: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriEntry {
    i: usize,
    j: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    out: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    #[serde(rename = "F")]
    order: usize,
    n: usize,
    m: usize,
    p: usize,
    #[serde(default)]
    bracket00: Vec<PairEntry>,
    #[serde(default)]
    bracket01: Vec<PairEntry>,
    #[serde(default)]
    bracket02: Vec<PairEntry>,
    #[serde(default)]
    tri1: Vec<TriEntry>,
    #[serde(default)]
    tri2: Vec<TriEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    meta: Meta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeformationDoc {
    n: usize,
    m: usize,
    #[serde(default)]
    psi1: Vec<PairEntry>,
    #[serde(default)]
    psi2: Vec<PairEntry>,
    #[serde(default)]
    psi3: Vec<TriEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    meta: Meta,
}

/// Sparse `[position, coefficient]` list; `first` is the position of entry 0.
fn encode(v: &[Rational], first: usize) -> Vec<(usize, String)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k + first, format_rational(c)))
        .collect()
}

fn decode(out: &[(usize, String)], first: usize, len: usize, at: &str) -> Result<Vec<Rational>> {
    let mut v = zero_vector(len);
    let mut seen = BTreeSet::new();
    for (pos, text) in out {
        if *pos < first || *pos >= first + len {
            return Err(Error::Parse(format!(
                "{at}: basis position {pos} outside {first}..={}",
                first + len - 1
            )));
        }
        if !seen.insert(*pos) {
            return Err(Error::Parse(format!("{at}: basis position {pos} listed twice")));
        }
        v[pos - first] = parse_rational(text).map_err(|e| Error::Parse(format!("{at}: {e}")))?;
    }
    Ok(v)
}

fn located<T>(at: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(_) => e,
        other => Error::Parse(format!("{at}: {other}")),
    })
}

pub fn algebra_to_json(alg: &OrderFAlgebra, meta: &Meta) -> String {
    let pairs = |grade: usize| -> Vec<PairEntry> {
        alg.bracket_entries(grade)
            .map(|(&(i, j), v)| PairEntry { i, j, out: encode(v, crate::graded::offset(grade)) })
            .collect()
    };
    let tris = |grade: usize| -> Vec<TriEntry> {
        if grade >= alg.order() {
            return Vec::new();
        }
        alg.symmetric_entries(grade)
            .map(|(key, v)| TriEntry { i: key[0], j: key[1], l: key.get(2).copied(), out: encode(v, 0) })
            .collect()
    };
    let doc = AlgebraDoc {
        order: alg.order(),
        n: alg.n(),
        m: alg.m(),
        p: alg.p(),
        bracket00: pairs(0),
        bracket01: pairs(1),
        bracket02: pairs(2),
        tri1: tris(1),
        tri2: tris(2),
        meta: meta.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn algebra_from_json(text: &str) -> Result<(OrderFAlgebra, Meta)> {
    let doc: AlgebraDoc = serde_json::from_str(text)?;
    check_header(&[("n", doc.n), ("m", doc.m), ("p", doc.p)])?;
    let mut alg = OrderFAlgebra::new(doc.order, doc.n, doc.m, doc.p)
        .map_err(|e| Error::Parse(format!("header: {e}")))?;
    for (grade, (name, entries)) in [("bracket00", &doc.bracket00), ("bracket01", &doc.bracket01), ("bracket02", &doc.bracket02)]
        .into_iter()
        .enumerate()
    {
        let mut keys = BTreeSet::new();
        for (idx, e) in entries.iter().enumerate() {
            let at = format!("{name}[{idx}]");
            if grade == 0 && e.i >= e.j {
                return Err(Error::Parse(format!("{at}: key needs i < j, got ({}, {})", e.i, e.j)));
            }
            if !keys.insert((e.i, e.j)) {
                return Err(Error::Parse(format!("{at}: key ({}, {}) repeated", e.i, e.j)));
            }
            let first = crate::graded::offset(grade);
            let out = decode(&e.out, first, alg.dim(grade), &at)?;
            let other = GradeIndex { grade, position: e.j };
            located(&at, alg.set_bracket(GradeIndex::x(e.i), other, out))?;
        }
    }
    for (grade, name, entries) in [(1, "tri1", &doc.tri1), (2, "tri2", &doc.tri2)] {
        let mut keys = BTreeSet::new();
        for (idx, e) in entries.iter().enumerate() {
            let at = format!("{name}[{idx}]");
            let key = symmetric_key(e, alg.order(), &at)?;
            if !keys.insert(key.clone()) {
                return Err(Error::Parse(format!("{at}: key {key:?} repeated")));
            }
            let out = decode(&e.out, 0, alg.dim(0), &at)?;
            located(&at, alg.set_symmetric(grade, &key, out))?;
        }
    }
    Ok((alg, doc.meta))
}

/// The sorted argument list of a symmetric-bracket entry; `l` is present
/// exactly for order 3.
fn symmetric_key(e: &TriEntry, order: usize, at: &str) -> Result<Vec<usize>> {
    let key = match (order, e.l) {
        (3, Some(l)) => vec![e.i, e.j, l],
        (2, None) => vec![e.i, e.j],
        (3, None) => return Err(Error::Parse(format!("{at}: order 3 entries need \"l\""))),
        (_, Some(_)) => return Err(Error::Parse(format!("{at}: \"l\" only exists for order 3"))),
        (_, None) => return Err(Error::Parse(format!("{at}: no symmetric bracket for order {order}"))),
    };
    if key.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Parse(format!("{at}: key {key:?} must be nondecreasing")));
    }
    Ok(key)
}

pub fn deformation_to_value(psi: &Deformation, meta: &Meta) -> serde_json::Value {
    let doc = DeformationDoc {
        n: psi.n(),
        m: psi.m(),
        psi1: psi.psi1_entries().map(|(&(i, j), v)| PairEntry { i, j, out: encode(v, 1) }).collect(),
        psi2: psi.psi2_entries().map(|(&(i, j), v)| PairEntry { i, j, out: encode(v, 1) }).collect(),
        psi3: psi
            .psi3_entries()
            .map(|(k, v)| TriEntry { i: k[0], j: k[1], l: Some(k[2]), out: encode(v, 1) })
            .collect(),
        meta: meta.clone(),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

pub fn deformation_to_json(psi: &Deformation, meta: &Meta) -> String {
    serde_json::to_string_pretty(&deformation_to_value(psi, meta)).expect("plain data serializes")
}

pub fn deformation_from_value(value: serde_json::Value) -> Result<(Deformation, Meta)> {
    let doc: DeformationDoc = serde_json::from_value(value)?;
    deformation_from_doc(doc)
}

pub fn deformation_from_json(text: &str) -> Result<(Deformation, Meta)> {
    let doc: DeformationDoc = serde_json::from_str(text)?;
    deformation_from_doc(doc)
}

fn deformation_from_doc(doc: DeformationDoc) -> Result<(Deformation, Meta)> {
    check_header(&[("n", doc.n), ("m", doc.m)])?;
    let (n, m) = (doc.n, doc.m);
    let mut psi = Deformation::zero(n, m);
    let mut keys = BTreeSet::new();
    for (idx, e) in doc.psi1.iter().enumerate() {
        let at = format!("psi1[{idx}]");
        if e.i >= e.j || !keys.insert((e.i, e.j)) {
            return Err(Error::Parse(format!("{at}: key ({}, {}) must satisfy i < j and be unique", e.i, e.j)));
        }
        let out = decode(&e.out, 1, n, &at)?;
        located(&at, psi.set_psi1(e.i, e.j, out))?;
    }
    keys.clear();
    for (idx, e) in doc.psi2.iter().enumerate() {
        let at = format!("psi2[{idx}]");
        if !keys.insert((e.i, e.j)) {
            return Err(Error::Parse(format!("{at}: key ({}, {}) repeated", e.i, e.j)));
        }
        let out = decode(&e.out, 1, m, &at)?;
        located(&at, psi.set_psi2(e.i, e.j, out))?;
    }
    let mut tri_keys = BTreeSet::new();
    for (idx, e) in doc.psi3.iter().enumerate() {
        let at = format!("psi3[{idx}]");
        let key = symmetric_key(e, 3, &at)?;
        if !tri_keys.insert(key.clone()) {
            return Err(Error::Parse(format!("{at}: key {key:?} repeated")));
        }
        let out = decode(&e.out, 1, n, &at)?;
        located(&at, psi.set_psi3([key[0], key[1], key[2]], out))?;
    }
    Ok((psi, doc.meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, int};
    use crate::families::{example_poincare, phi13};
    use crate::filiform::{family_mu1, family_mu2, model};
    use proptest::prelude::*;

    #[test]
    fn oversized_headers_are_refused() {
        let err = algebra_from_json(r#"{"F": 3, "n": 1000000000000, "m": 1, "p": 0}"#).unwrap_err();
        assert!(err.to_string().contains("exceeds"), "{err}");
        assert!(deformation_from_json(r#"{"n": 2, "m": 99999999}"#).is_err());
        assert!(deformation_from_json(&format!(r#"{{"n": {MAX_DIMENSION}, "m": 1}}"#)).is_ok());
    }

    #[test]
    fn model_document_shape() {
        let text = algebra_to_json(&model(2, 1, 0).unwrap(), &Meta::new());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["F"], 3);
        assert_eq!(value["bracket00"][0], serde_json::json!({"i": 0, "j": 1, "out": [[2, "1"]]}));
        assert!(value.get("meta").is_none());
    }

    #[test]
    fn algebras_round_trip() {
        let mut meta = Meta::new();
        meta.insert("note".into(), "test".into());
        for alg in [model(4, 3, 2).unwrap(), family_mu1(4, 3, 2).unwrap(), family_mu2(3, 4, 1).unwrap(), example_poincare(3).unwrap()] {
            let text = algebra_to_json(&alg, &meta);
            let (back, back_meta) = algebra_from_json(&text).unwrap();
            assert_eq!(back, alg);
            assert_eq!(back_meta, meta);
            assert_eq!(algebra_to_json(&back, &back_meta), text);
        }
    }

    #[test]
    fn order_two_entries_have_no_third_index() {
        let text = r#"{"F":2,"n":0,"m":1,"p":0,"tri1":[{"i":1,"j":1,"out":[[0,"1"]]}]}"#;
        let (alg, _) = algebra_from_json(text).unwrap();
        assert_eq!(alg.symmetric_bracket(1, &[1, 1]).unwrap(), vec![int(1)]);
        let bad = r#"{"F":2,"n":0,"m":1,"p":0,"tri1":[{"i":1,"j":1,"l":1,"out":[]}]}"#;
        assert!(algebra_from_json(bad).is_err());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let cases = [
            r#"{"F":3,"n":1,"m":1,"p":0,"extra":1}"#,
            r#"{"F":3,"n":1,"m":1,"p":0,"bracket00":[{"i":1,"j":0,"out":[]}]}"#,
            r#"{"F":3,"n":1,"m":1,"p":0,"bracket00":[{"i":0,"j":1,"out":[[5,"1"]]}]}"#,
            r#"{"F":3,"n":1,"m":1,"p":0,"bracket00":[{"i":0,"j":1,"out":[[1,"1/0"]]}]}"#,
            r#"{"F":3,"n":1,"m":1,"p":0,"bracket01":[{"i":0,"j":1,"out":[[1,"1"],[1,"2"]]}]}"#,
            r#"{"F":3,"n":1,"m":2,"p":0,"tri1":[{"i":2,"j":1,"l":1,"out":[]}]}"#,
            r#"{"F":3,"n":1,"m":1,"p":1,"bracket02":[{"i":0,"j":2,"out":[]}]}"#,
            r#"{"F":4,"n":1,"m":1,"p":0}"#,
            r#"{"F":3,"n":1,"m":1"#,
        ];
        for text in cases {
            assert!(algebra_from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = algebra_from_json("{\n  \"F\": 3,\n  \"n\": oops\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = algebra_from_json(r#"{"F":3,"n":1,"m":1,"p":0,"tri1":[{"i":1,"j":1,"l":1,"out":[[0,"x"]]}]}"#).unwrap_err();
        assert!(err.to_string().contains("tri1[0]"), "{err}");
    }

    #[test]
    fn deformations_round_trip() {
        let psi = phi13(11, 5).unwrap().deformation;
        let text = deformation_to_json(&psi, &Meta::new());
        let (back, _) = deformation_from_json(&text).unwrap();
        assert_eq!(back, psi);
        assert_eq!(deformation_to_json(&back, &Meta::new()), text);
        let mut mixed = Deformation::zero(3, 2);
        mixed.set_psi1(1, 3, vec![int(1), int(0), frac(-2, 3)]).unwrap();
        mixed.set_psi2(2, 1, vec![int(0), int(5)]).unwrap();
        let (back, _) = deformation_from_json(&deformation_to_json(&mixed, &Meta::new())).unwrap();
        assert_eq!(back, mixed);
    }

    #[test]
    fn deformations_never_reach_the_characteristic_vector() {
        let text = r#"{"n":2,"m":1,"psi3":[{"i":1,"j":1,"l":1,"out":[[0,"1"]]}]}"#;
        assert!(deformation_from_json(text).is_err());
        let text = r#"{"n":2,"m":1,"psi1":[{"i":0,"j":1,"out":[[1,"1"]]}]}"#;
        assert!(deformation_from_json(text).is_err());
    }

    proptest! {
        #[test]
        fn random_algebras_round_trip(n in 0usize..4, m in 0usize..3, p in 0usize..3, entries in proptest::collection::vec((0usize..4, 0usize..4, 0usize..3, -5i64..5, 1i64..4), 0..12)) {
            let mut alg = OrderFAlgebra::new(3, n, m, p).unwrap();
            for (a, b, grade, num, den) in entries {
                let dim = alg.dim(grade);
                if dim == 0 {
                    continue;
                }
                let lo = crate::graded::offset(grade);
                let other = GradeIndex { grade, position: lo + b % dim };
                let x = GradeIndex::x(a % (n + 1));
                if grade == 0 && x.position == other.position {
                    continue;
                }
                let mut out = zero_vector(dim);
                out[(a + b) % dim] = frac(num, den);
                alg.set_bracket(x, other, out).unwrap();
                if grade > 0 {
                    let mut v = zero_vector(n + 1);
                    v[b % (n + 1)] = frac(den, 1);
                    let pos = lo + a % dim;
                    alg.set_symmetric(grade, &[pos, lo, pos], v).unwrap();
                }
            }
            let text = algebra_to_json(&alg, &Meta::new());
            let (back, _) = algebra_from_json(&text).unwrap();
            prop_assert_eq!(&back, &alg);
            prop_assert_eq!(algebra_to_json(&back, &Meta::new()), text);
        }
    }
}
