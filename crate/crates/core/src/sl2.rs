//! Weights of the basis maps `φ^s_{ijk}: (Y_i, Y_j, Y_k) ↦ X_s` under the
//! `sl(2)` action in which `X0` raises, and the weight count for `dim C`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::exactlin::{axpy, zero_vector, Rational};
use crate::graded::sorted_tuples;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedMap {
    /// Target `X_s`.
    pub s: usize,
    /// Sorted source indices.
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Eigenvalue of `H`.
    pub lambda: i64,
    /// Eigenvalue of the grading derivation `X_i ↦ iX_i`, `Y_j ↦ jY_j`.
    pub p: i64,
}

impl WeightedMap {
    pub fn new(n: usize, m: usize, s: usize, indices: [usize; 3]) -> Result<Self> {
        let mut sorted = indices;
        sorted.sort_unstable();
        let [i, j, k] = sorted;
        if s == 0 || s > n || i == 0 || k > m {
            return Err(Error::IndexOutOfRange(format!(
                "map Y{i}Y{j}Y{k} -> X{s} outside n={n}, m={m}"
            )));
        }
        let (n, m) = (n as i64, m as i64);
        let (s, a, b, c) = (s as i64, i as i64, j as i64, k as i64);
        Ok(Self {
            s: s as usize,
            i,
            j,
            k,
            lambda: 3 * m - n + 2 * (s - a - b - c + 1),
            p: s - a - b - c,
        })
    }
}

pub fn weight_lambda(n: usize, m: usize, s: usize, i: usize, j: usize, k: usize) -> Result<i64> {
    Ok(WeightedMap::new(n, m, s, [i, j, k])?.lambda)
}

pub fn weight_p(n: usize, m: usize, s: usize, i: usize, j: usize, k: usize) -> Result<i64> {
    Ok(WeightedMap::new(n, m, s, [i, j, k])?.p)
}

/// `H` eigenvalue on the `e`-th vector of a chain of length `len`.
fn h_eigenvalue(len: usize, e: usize) -> i64 {
    2 * e as i64 - len as i64 - 1
}

/// The weight obtained by letting `H` act on `φ^s_{ijk}` through the target
/// and the three arguments separately.
pub fn h_action_weight(n: usize, m: usize, s: usize, i: usize, j: usize, k: usize) -> Result<i64> {
    WeightedMap::new(n, m, s, [i, j, k])?;
    Ok(h_eigenvalue(n, s) - h_eigenvalue(m, i) - h_eigenvalue(m, j) - h_eigenvalue(m, k))
}

/// Every basis map, ordered by target then source triple.
pub fn weighted_maps(n: usize, m: usize) -> Vec<WeightedMap> {
    let triples = sorted_tuples(3, m);
    (1..=n)
        .flat_map(|s| {
            triples
                .iter()
                .map(move |t| WeightedMap::new(n, m, s, [t[0], t[1], t[2]]).expect("in range"))
        })
        .collect()
}

/// Number of basis maps with `H`-weight `lambda`.
pub fn weight_count(n: usize, m: usize, lambda: i64) -> usize {
    weighted_maps(n, m).iter().filter(|w| w.lambda == lambda).count()
}

/// `dim C` as the number of basis maps of weight 0 (when `m − n` is even)
/// or 1 (when odd).
pub fn dim_c_by_weights(n: usize, m: usize) -> Result<usize> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!("need n ≥ 1 and m ≥ 1, got n={n}, m={m}")));
    }
    let target = ((m as i64) - (n as i64)).rem_euclid(2);
    Ok(weight_count(n, m, target))
}

/// `X₊·φ(Y_i,Y_j,Y_k) − φ(X₊Y_i,Y_j,Y_k) − φ(Y_i,X₊Y_j,Y_k) − φ(Y_i,Y_j,X₊Y_k)`
/// on every sorted triple, keeping only nonzero values. Only `ψ₃` of `phi`
/// is read.
pub fn maximal_vector_residual(phi: &Deformation) -> BTreeMap<[usize; 3], Vec<Rational>> {
    let (n, m) = (phi.n(), phi.m());
    let value = |key: [usize; 3]| -> Vec<Rational> {
        if key.iter().any(|&i| i > m) {
            zero_vector(n)
        } else {
            phi.psi3(key).expect("indices checked")
        }
    };
    let minus_one = -Rational::from_integer(1.into());
    let mut out = BTreeMap::new();
    for t in sorted_tuples(3, m) {
        let [i, j, k] = [t[0], t[1], t[2]];
        let mut residual = zero_vector(n);
        // X₊ on the target shifts X_s to X_{s+1}.
        for (s, c) in value([i, j, k]).into_iter().enumerate() {
            if s + 1 < n {
                residual[s + 1] += c;
            }
        }
        for shifted in [[i + 1, j, k], [i, j + 1, k], [i, j, k + 1]] {
            axpy(&mut residual, &minus_one, &value(shifted));
        }
        if residual.iter().any(|c| !c.is_zero()) {
            out.insert([i, j, k], residual);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::{is_infinitesimal, solve_subspace_c};
    use crate::exactlin::int;
    use crate::filiform::model;
    use proptest::prelude::*;

    #[test]
    fn lambda_values() {
        assert_eq!(weight_lambda(3, 3, 1, 1, 1, 1).unwrap(), 4);
        assert_eq!(weight_lambda(1, 3, 1, 1, 2, 3).unwrap(), 0);
        assert!(weight_lambda(3, 3, 4, 1, 1, 1).is_err());
        assert!(weight_lambda(3, 3, 1, 0, 1, 1).is_err());
        assert!(weight_lambda(3, 3, 1, 1, 1, 4).is_err());
    }

    #[test]
    fn weight_counts_for_three_chains() {
        // Hand counts of weight-0/1 maps with m = 3.
        let expected = [(1, 2), (3, 6), (5, 8), (7, 10), (9, 10), (11, 10)];
        for (n, dim) in expected {
            assert_eq!(dim_c_by_weights(n, 3).unwrap(), dim, "n = {n}");
        }
        assert!(dim_c_by_weights(0, 3).is_err());
    }

    #[test]
    fn wrong_parity_count_is_zero() {
        assert_eq!(weight_count(4, 3, 0), 0);
        assert_eq!(weight_count(3, 3, 1), 0);
    }

    #[test]
    fn zero_and_unit_tables() {
        let zero = Deformation::zero(3, 3);
        assert!(maximal_vector_residual(&zero).is_empty());
        let mut unit = Deformation::zero(3, 3);
        unit.add_psi3_term([1, 1, 1], 1, int(1)).unwrap();
        let res = maximal_vector_residual(&unit);
        assert_eq!(res[&[1, 1, 1]], vec![int(0), int(1), int(0)]);
        // φ(Y2,Y1,Y1) would be needed to cancel the shifted argument.
        assert_eq!(res.len(), 1);
    }

    proptest! {
        #[test]
        fn lambda_and_p_are_affinely_related(n in 1usize..12, m in 1usize..6, s in 1usize..12, t in proptest::collection::vec(1usize..6, 3)) {
            let s = (s - 1) % n + 1;
            let [i, j, k] = [(t[0] - 1) % m + 1, (t[1] - 1) % m + 1, (t[2] - 1) % m + 1];
            let lambda = weight_lambda(n, m, s, i, j, k).unwrap();
            let p = weight_p(n, m, s, i, j, k).unwrap();
            prop_assert_eq!(lambda - 2 * p, 3 * m as i64 - n as i64 + 2);
            prop_assert_eq!(lambda.rem_euclid(2), (m as i64 - n as i64).rem_euclid(2));
            prop_assert_eq!(h_action_weight(n, m, s, i, j, k).unwrap(), lambda);
        }

        #[test]
        fn residual_vanishes_exactly_on_c(n in 1usize..8, m in 1usize..4, entries in proptest::collection::vec((1usize..4, 1usize..4, 1usize..4, 1usize..8, -2i64..=2), 0..4), from_kernel in any::<bool>()) {
            let phi = if from_kernel {
                let c = solve_subspace_c(n, m).unwrap();
                let mut phi = Deformation::zero(n, m);
                for (v, e) in c.deformations().iter().zip(&entries) {
                    phi = phi.add_scaled(&int(e.4), v).unwrap();
                }
                phi
            } else {
                let mut phi = Deformation::zero(n, m);
                for &(i, j, k, s, c) in &entries {
                    phi.add_psi3_term([(i - 1) % m + 1, (j - 1) % m + 1, (k - 1) % m + 1], (s - 1) % n + 1, int(c)).unwrap();
                }
                phi
            };
            let cocycle = is_infinitesimal(&model(n, m, 0).unwrap(), &phi).unwrap().is_ok();
            prop_assert_eq!(maximal_vector_residual(&phi).is_empty(), cocycle);
        }
    }
}
