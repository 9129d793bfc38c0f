//! Filiform algebras of order 3: the model law, the descending sequences,
//! order-nilindex, and two non-model families.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::{int, span_basis, zero_vector, Rational};
use crate::graded::{GradeIndex, OrderFAlgebra};

/// Only `[X0, e_i] = e_{i+1}` along each chain; every 3-bracket vanishes.
pub fn model(n: usize, m: usize, p: usize) -> Result<OrderFAlgebra> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "model needs n ≥ 1 and m ≥ 1, got n={n}, m={m}"
        )));
    }
    let mut alg = OrderFAlgebra::new(3, n, m, p)?;
    for grade in 0..3 {
        let (lo, hi) = chain_bounds(&alg, grade);
        for i in lo..hi {
            let out = alg.unit(GradeIndex { grade, position: i + 1 });
            alg.set_bracket(GradeIndex::x(0), GradeIndex { grade, position: i }, out)?;
        }
    }
    Ok(alg)
}

/// First and last position of the chain moved by `X0` in `grade`.
fn chain_bounds(alg: &OrderFAlgebra, grade: usize) -> (usize, usize) {
    match grade {
        0 => (1, alg.n()),
        g => (1, alg.dim(g)),
    }
}

/// Order-3 algebra with every product zero.
pub fn abelian(n: usize, m: usize, p: usize) -> Result<OrderFAlgebra> {
    OrderFAlgebra::new(3, n, m, p)
}

/// Dimensions of `C⁰ ⊇ C¹ ⊇ …` for one grade, where `C⁰` is the whole grade
/// and `C^{k+1} = [𝔤₀, C^k]`.
///
/// Stops at 0 or as soon as two consecutive subspaces coincide.
pub fn descending_sequence(alg: &OrderFAlgebra, grade: usize) -> Vec<usize> {
    let dim = alg.dim(grade);
    let mut current = span_basis(
        dim,
        (0..dim).map(|k| {
            let mut v = zero_vector(dim);
            v[k] = Rational::one();
            v
        }).collect(),
    );
    let mut dims = vec![current.len()];
    let x: Vec<Vec<Rational>> = (0..=alg.n()).map(|i| alg.unit(GradeIndex::x(i))).collect();
    while !current.is_empty() {
        let images = x
            .iter()
            .flat_map(|xi| current.iter().map(move |v| (xi, v)))
            .map(|(xi, v)| alg.act(grade, xi, v))
            .collect();
        let next = span_basis(dim, images);
        if next == current {
            break;
        }
        dims.push(next.len());
        current = next;
    }
    dims
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderNilindex {
    pub p0: usize,
    pub p1: usize,
    /// Present only when grade 2 is nonzero.
    pub p2: Option<usize>,
}

impl fmt::Display for OrderNilindex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p2 {
            Some(p2) => write!(f, "({}, {}, {p2})", self.p0, self.p1),
            None => write!(f, "({}, {})", self.p0, self.p1),
        }
    }
}

fn nilindex_of(alg: &OrderFAlgebra, grade: usize) -> Result<usize> {
    let seq = descending_sequence(alg, grade);
    let last = *seq.last().expect("sequence starts with the grade dimension");
    if last != 0 {
        return Err(Error::NotNilpotent { grade, stabilized: last });
    }
    Ok(seq.len() - 1)
}

/// Smallest exponents annihilating each grade's descending sequence.
pub fn order_nilindex(alg: &OrderFAlgebra) -> Result<OrderNilindex> {
    let p2 = if alg.order() == 3 && alg.p() > 0 {
        Some(nilindex_of(alg, 2)?)
    } else {
        None
    };
    Ok(OrderNilindex {
        p0: nilindex_of(alg, 0)?,
        p1: nilindex_of(alg, 1)?,
        p2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiliformReport {
    pub filiform: bool,
    pub nilindex: OrderNilindex,
    /// The maximal nilindex for the algebra's dimensions.
    pub expected: OrderNilindex,
}

/// Filiform means maximal order-nilindex `(n, m[, p])`.
pub fn is_filiform(alg: &OrderFAlgebra) -> Result<FiliformReport> {
    let nilindex = order_nilindex(alg)?;
    let expected = OrderNilindex {
        p0: alg.n(),
        p1: alg.m(),
        p2: nilindex.p2.map(|_| alg.p()),
    };
    Ok(FiliformReport { filiform: nilindex == expected, nilindex, expected })
}

/// Whether `X0` acts on every chain exactly as in an adapted basis.
pub fn is_adapted_form(alg: &OrderFAlgebra) -> bool {
    for grade in 0..alg.order() {
        let (lo, hi) = chain_bounds(alg, grade);
        if hi < lo {
            continue;
        }
        for i in lo..=hi {
            let Ok(got) = alg.bracket(GradeIndex::x(0), GradeIndex { grade, position: i }) else {
                return false;
            };
            let want = if i < hi {
                alg.unit(GradeIndex { grade, position: i + 1 })
            } else {
                zero_vector(alg.dim(grade))
            };
            if got != want {
                return false;
            }
        }
    }
    true
}

fn x(alg: &OrderFAlgebra, i: usize) -> Vec<Rational> {
    alg.unit(GradeIndex::x(i))
}

/// The model plus `{Y1,Y1,Y1} = Xn` and, when `p > 0`, `{Z1,Z1,Z1} = Xn`.
pub fn family_mu1(n: usize, m: usize, p: usize) -> Result<OrderFAlgebra> {
    let mut alg = model(n, m, p)?;
    alg.set_symmetric(1, &[1, 1, 1], x(&alg, n))?;
    if p > 0 {
        alg.set_symmetric(2, &[1, 1, 1], x(&alg, n))?;
    }
    Ok(alg)
}

/// The model plus `{Y1,Y1,Y1} = 3X1` and `{Y1,Y1,Yi} = Xi` for `2 ≤ i ≤ n`.
pub fn family_mu2(n: usize, m: usize, p: usize) -> Result<OrderFAlgebra> {
    if m < n {
        return Err(Error::InvalidParameter(format!(
            "the second family needs m ≥ n, got n={n}, m={m}"
        )));
    }
    let mut alg = model(n, m, p)?;
    let mut first = x(&alg, 1);
    first[1] = int(3);
    alg.set_symmetric(1, &[1, 1, 1], first)?;
    for i in 2..=n {
        alg.set_symmetric(1, &[1, 1, i], x(&alg, i))?;
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::verify_jacobi;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn model_products() {
        let alg = model(3, 3, 0).unwrap();
        assert!(alg.bracket(GradeIndex::x(0), GradeIndex::x(3)).unwrap().iter().all(Zero::is_zero));
        assert_eq!(alg.bracket(GradeIndex::x(0), GradeIndex::y(2)).unwrap(), alg.unit(GradeIndex::y(3)));
        assert!(model(0, 3, 0).is_err());
        assert!(model(3, 0, 0).is_err());
        assert!(verify_jacobi(&model(1, 1, 0).unwrap()).is_ok());
    }

    #[test]
    fn sequences() {
        let alg = model(4, 3, 0).unwrap();
        // [𝔤₀, 𝔤₀] is spanned by X2..X4 because X1 is not in the image of ad X0.
        assert_eq!(descending_sequence(&alg, 0), vec![5, 3, 2, 1, 0]);
        assert_eq!(descending_sequence(&alg, 1), vec![3, 2, 1, 0]);
        assert_eq!(descending_sequence(&abelian(2, 2, 0).unwrap(), 0), vec![3, 0]);
    }

    #[test]
    fn nilindices() {
        let nil = order_nilindex(&model(4, 3, 0).unwrap()).unwrap();
        assert_eq!((nil.p0, nil.p1, nil.p2), (4, 3, None));
        let nil = order_nilindex(&family_mu1(4, 3, 2).unwrap()).unwrap();
        assert_eq!((nil.p0, nil.p1, nil.p2), (4, 3, Some(2)));
        let nil = order_nilindex(&abelian(2, 2, 0).unwrap()).unwrap();
        assert_eq!((nil.p0, nil.p1), (1, 1));
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        // [X0, X1] = X1 never reaches zero.
        let mut alg = abelian(1, 1, 0).unwrap();
        alg.set_bracket(GradeIndex::x(0), GradeIndex::x(1), alg.unit(GradeIndex::x(1))).unwrap();
        match order_nilindex(&alg) {
            Err(Error::NotNilpotent { grade: 0, stabilized: 1 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn filiform_predicate() {
        assert!(is_filiform(&model(5, 4, 0).unwrap()).unwrap().filiform);
        assert!(!is_filiform(&abelian(2, 2, 0).unwrap()).unwrap().filiform);
        assert!(is_filiform(&family_mu2(4, 4, 1).unwrap()).unwrap().filiform);
    }

    #[test]
    fn adapted_form() {
        for n in 1..=8 {
            for m in 1..=8 {
                assert!(is_adapted_form(&model(n, m, 0).unwrap()));
            }
        }
        let mut alg = model(3, 3, 0).unwrap();
        let mut doubled = alg.unit(GradeIndex::y(2));
        doubled[1] = int(2);
        alg.set_bracket(GradeIndex::x(0), GradeIndex::y(1), doubled).unwrap();
        assert!(!is_adapted_form(&alg));
        assert!(is_adapted_form(&family_mu1(4, 3, 2).unwrap()));
        assert!(is_adapted_form(&family_mu2(3, 4, 1).unwrap()));
    }

    #[test]
    fn families() {
        let mu1 = family_mu1(4, 3, 2).unwrap();
        assert_eq!(mu1.tribracket(1, 1, 1, 1).unwrap(), mu1.unit(GradeIndex::x(4)));
        assert_eq!(mu1.tribracket(2, 1, 1, 1).unwrap(), mu1.unit(GradeIndex::x(4)));
        assert_eq!(mu1.symmetric_entries(1).count() + mu1.symmetric_entries(2).count(), 2);
        let mu2 = family_mu2(3, 4, 1).unwrap();
        assert_eq!(mu2.tribracket(1, 1, 1, 2).unwrap(), mu2.unit(GradeIndex::x(2)));
        assert_eq!(mu2.tribracket(1, 1, 1, 3).unwrap(), mu2.unit(GradeIndex::x(3)));
        assert!(family_mu2(3, 2, 1).is_err());
    }

    #[test]
    fn families_satisfy_the_identities() {
        for n in 1..=4 {
            for m in 1..=4 {
                for p in 0..=2 {
                    assert!(verify_jacobi(&family_mu1(n, m, p).unwrap()).is_ok(), "mu1({n},{m},{p})");
                    if m >= n {
                        assert!(verify_jacobi(&family_mu2(n, m, p).unwrap()).is_ok(), "mu2({n},{m},{p})");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn filiform_sequences_strictly_decrease(n in 1usize..9, m in 1usize..9) {
            let alg = model(n, m, 0).unwrap();
            for grade in 0..2 {
                let seq = descending_sequence(&alg, grade);
                prop_assert!(seq.windows(2).all(|w| w[0] > w[1]));
                prop_assert_eq!(*seq.last().unwrap(), 0);
            }
            prop_assert_eq!(descending_sequence(&alg, 1), (0..=m).rev().collect::<Vec<_>>());
            prop_assert!(is_filiform(&alg).unwrap().filiform);
            prop_assert!(verify_jacobi(&alg).is_ok());
        }

        #[test]
        fn perturbing_a_chain_breaks_adapted_form(n in 2usize..7, m in 2usize..7, pick in 0usize..100, scale in 2i64..5) {
            let mut alg = model(n, m, 0).unwrap();
            let (grade, len) = if pick % 2 == 0 { (0, n) } else { (1, m) };
            let i = 1 + pick % (len - 1);
            let idx = GradeIndex { grade, position: i };
            let mut v = alg.bracket(GradeIndex::x(0), idx).unwrap();
            v.iter_mut().for_each(|c| *c *= int(scale));
            alg.set_bracket(GradeIndex::x(0), idx, v).unwrap();
            prop_assert!(!is_adapted_form(&alg));
        }
    }
}
