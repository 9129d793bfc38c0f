//! Infinitesimal deformations of the model law `μ₀ = model(n, m)`.
//!
//! A deformation `ψ = ψ₁ + ψ₂ + ψ₃` vanishes on `X0` and never produces `X0`:
//! `ψ₁: 𝔤₀∧𝔤₀ → 𝔤₀`, `ψ₂: 𝔤₀⊗𝔤₁ → 𝔤₁`, `ψ₃: S³𝔤₁ → 𝔤₀`.
//!
//! The cocycle space splits as `A ⊕ B ⊕ C` by component; each part has its
//! own small linear system ([`solve_subspace_a`], [`solve_subspace_b`],
//! [`solve_subspace_c`]). [`full_system`] instead differentiates the generic
//! identity checker column by column, which gives an independent route to
//! the same kernel.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vector, zero_vector, Rational, RationalMatrix};
use crate::filiform::model;
use crate::graded::{composition_report, sorted_tuples, GradeIndex, Identity, OrderFAlgebra, Report};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Deformation {
    n: usize,
    m: usize,
    /// `(i, j)` with `1 ≤ i < j ≤ n`, coefficients over `X1..Xn`.
    psi1: BTreeMap<(usize, usize), Vec<Rational>>,
    /// `(i, j)` for `X_i`, `Y_j`, coefficients over `Y1..Ym`.
    psi2: BTreeMap<(usize, usize), Vec<Rational>>,
    /// Sorted `[i, j, k]`, coefficients over `X1..Xn`.
    psi3: BTreeMap<[usize; 3], Vec<Rational>>,
}

impl Deformation {
    pub fn zero(n: usize, m: usize) -> Self {
        Self { n, m, ..Self::default() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn check(&self, what: &str, index: usize, max: usize) -> Result<()> {
        if index == 0 || index > max {
            return Err(Error::IndexOutOfRange(format!("{what} index {index} outside 1..={max}")));
        }
        Ok(())
    }

    fn check_len(&self, out: &[Rational], len: usize) -> Result<()> {
        if out.len() != len {
            return Err(Error::Dimension(format!(
                "coefficient vector of length {}, expected {len}",
                out.len()
            )));
        }
        Ok(())
    }

    /// Sets `ψ₁(X_i, X_j)`; `(j, i)` is stored negated.
    pub fn set_psi1(&mut self, i: usize, j: usize, out: Vec<Rational>) -> Result<()> {
        self.check("X", i, self.n)?;
        self.check("X", j, self.n)?;
        self.check_len(&out, self.n)?;
        let (key, out) = match i.cmp(&j) {
            std::cmp::Ordering::Less => ((i, j), out),
            std::cmp::Ordering::Greater => ((j, i), out.into_iter().map(|c| -c).collect()),
            std::cmp::Ordering::Equal if is_zero_vector(&out) => return Ok(()),
            std::cmp::Ordering::Equal => {
                return Err(Error::InvalidParameter(format!("psi1(X{i}, X{i}) must vanish")))
            }
        };
        store(&mut self.psi1, key, out);
        Ok(())
    }

    /// Sets `ψ₂(X_i, Y_j)`.
    pub fn set_psi2(&mut self, i: usize, j: usize, out: Vec<Rational>) -> Result<()> {
        self.check("X", i, self.n)?;
        self.check("Y", j, self.m)?;
        self.check_len(&out, self.m)?;
        store(&mut self.psi2, (i, j), out);
        Ok(())
    }

    /// Sets `ψ₃(Y_i, Y_j, Y_k)` for indices in any order.
    pub fn set_psi3(&mut self, indices: [usize; 3], out: Vec<Rational>) -> Result<()> {
        for &i in &indices {
            self.check("Y", i, self.m)?;
        }
        self.check_len(&out, self.n)?;
        let mut key = indices;
        key.sort_unstable();
        store(&mut self.psi3, key, out);
        Ok(())
    }

    /// Adds `coeff · X_s` to `ψ₃(Y_i, Y_j, Y_k)`; targets past `X_n` are dropped.
    pub fn add_psi3_term(&mut self, indices: [usize; 3], s: usize, coeff: Rational) -> Result<()> {
        if s == 0 {
            return Err(Error::IndexOutOfRange("psi3 never takes values on X0".into()));
        }
        if s > self.n || coeff.is_zero() {
            return Ok(());
        }
        let mut out = self.psi3(indices)?;
        out[s - 1] += coeff;
        self.set_psi3(indices, out)
    }

    pub fn psi1(&self, i: usize, j: usize) -> Vec<Rational> {
        if i > j {
            return self.psi1(j, i).into_iter().map(|c| -c).collect();
        }
        self.psi1.get(&(i, j)).cloned().unwrap_or_else(|| zero_vector(self.n))
    }

    pub fn psi2(&self, i: usize, j: usize) -> Vec<Rational> {
        self.psi2.get(&(i, j)).cloned().unwrap_or_else(|| zero_vector(self.m))
    }

    pub fn psi3(&self, indices: [usize; 3]) -> Result<Vec<Rational>> {
        for &i in &indices {
            self.check("Y", i, self.m)?;
        }
        let mut key = indices;
        key.sort_unstable();
        Ok(self.psi3.get(&key).cloned().unwrap_or_else(|| zero_vector(self.n)))
    }

    pub fn psi1_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Rational>)> {
        self.psi1.iter()
    }

    pub fn psi2_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Rational>)> {
        self.psi2.iter()
    }

    pub fn psi3_entries(&self) -> impl Iterator<Item = (&[usize; 3], &Vec<Rational>)> {
        self.psi3.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.psi1.is_empty() && self.psi2.is_empty() && self.psi3.is_empty()
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: &Rational, other: &Deformation) -> Result<Deformation> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::Dimension(format!(
                "deformations of sizes ({}, {}) and ({}, {})",
                self.n, self.m, other.n, other.m
            )));
        }
        let mut out = self.clone();
        for (&k, v) in &other.psi1 {
            out.set_psi1(k.0, k.1, combine(&self.psi1(k.0, k.1), factor, v))?;
        }
        for (&k, v) in &other.psi2 {
            out.set_psi2(k.0, k.1, combine(&self.psi2(k.0, k.1), factor, v))?;
        }
        for (&k, v) in &other.psi3 {
            out.set_psi3(k, combine(&self.psi3(k)?, factor, v))?;
        }
        Ok(out)
    }

    /// The deformation as an order-3 law on the model's basis.
    pub fn to_law(&self) -> OrderFAlgebra {
        let mut law = OrderFAlgebra::new(3, self.n, self.m, 0).expect("order 3 with p = 0");
        let lift = |v: &[Rational]| {
            let mut out = vec![Rational::zero()];
            out.extend_from_slice(v);
            out
        };
        for (&(i, j), v) in &self.psi1 {
            law.set_bracket(GradeIndex::x(i), GradeIndex::x(j), lift(v)).expect("validated on insert");
        }
        for (&(i, j), v) in &self.psi2 {
            law.set_bracket(GradeIndex::x(i), GradeIndex::y(j), v.clone()).expect("validated on insert");
        }
        for (key, v) in &self.psi3 {
            law.set_symmetric(1, key, lift(v)).expect("validated on insert");
        }
        law
    }

    fn check_base(&self, mu0: &OrderFAlgebra) -> Result<()> {
        if (mu0.order(), mu0.n(), mu0.m(), mu0.p()) != (3, self.n, self.m, 0) {
            return Err(Error::Dimension(format!(
                "deformation of size (n={}, m={}) against an algebra with F={}, n={}, m={}, p={}",
                self.n,
                self.m,
                mu0.order(),
                mu0.n(),
                mu0.m(),
                mu0.p()
            )));
        }
        Ok(())
    }
}

fn store<K: Ord>(table: &mut BTreeMap<K, Vec<Rational>>, key: K, out: Vec<Rational>) {
    if is_zero_vector(&out) {
        table.remove(&key);
    } else {
        table.insert(key, out);
    }
}

fn combine(base: &[Rational], factor: &Rational, v: &[Rational]) -> Vec<Rational> {
    base.iter().zip(v).map(|(a, b)| a + factor * b).collect()
}

/// First-order conditions `μ₀∘ψ + ψ∘μ₀ = 0`, checked on every basis tuple.
pub fn is_infinitesimal(mu0: &OrderFAlgebra, psi: &Deformation) -> Result<Report> {
    psi.check_base(mu0)?;
    let law = psi.to_law();
    composition_report(&[(mu0, &law), (&law, mu0)])
}

/// Second-order conditions `ψ∘ψ = 0`, checked on every basis tuple.
pub fn is_integrable(psi: &Deformation) -> Report {
    let law = psi.to_law();
    composition_report(&[(&law, &law)]).expect("a law matches its own shape")
}

/// `μ₀ + ψ`, refusing unless `ψ` is an integrable cocycle.
pub fn deform(mu0: &OrderFAlgebra, psi: &Deformation) -> Result<OrderFAlgebra> {
    if let Some(v) = is_infinitesimal(mu0, psi)?.violations.into_iter().next() {
        return Err(Error::NotInfinitesimal(Box::new(v)));
    }
    if let Some(v) = is_integrable(psi).violations.into_iter().next() {
        return Err(Error::NotIntegrable(Box::new(v)));
    }
    deform_unchecked(mu0, psi)
}

/// `μ₀ + ψ` without checking anything but dimensions.
pub fn deform_unchecked(mu0: &OrderFAlgebra, psi: &Deformation) -> Result<OrderFAlgebra> {
    psi.check_base(mu0)?;
    mu0.sum(&psi.to_law())
}

/// One scalar unknown: the coefficient of the `s`-th target basis vector in
/// one value of the deformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unknown {
    /// Coefficient of `X_s` in `ψ₁(X_i, X_j)`.
    Psi1 { s: usize, i: usize, j: usize },
    /// Coefficient of `Y_s` in `ψ₂(X_i, Y_j)`.
    Psi2 { s: usize, i: usize, j: usize },
    /// Coefficient of `X_s` in `ψ₃(Y_i, Y_j, Y_k)`.
    Psi3 { s: usize, i: usize, j: usize, k: usize },
}

fn psi1_unknowns(n: usize) -> Vec<Unknown> {
    let mut out = Vec::new();
    for s in 1..=n {
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(Unknown::Psi1 { s, i, j });
            }
        }
    }
    out
}

fn psi2_unknowns(n: usize, m: usize) -> Vec<Unknown> {
    let mut out = Vec::new();
    for s in 1..=m {
        for i in 1..=n {
            for j in 1..=m {
                out.push(Unknown::Psi2 { s, i, j });
            }
        }
    }
    out
}

fn psi3_unknowns(n: usize, m: usize) -> Vec<Unknown> {
    let triples = sorted_tuples(3, m);
    let mut out = Vec::new();
    for s in 1..=n {
        for t in &triples {
            out.push(Unknown::Psi3 { s, i: t[0], j: t[1], k: t[2] });
        }
    }
    out
}

/// A kernel basis together with the meaning of each coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub n: usize,
    pub m: usize,
    pub unknowns: Vec<Unknown>,
    pub vectors: Vec<Vec<Rational>>,
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Interprets a coordinate vector over `unknowns` as a deformation.
    pub fn deformation_of(&self, coords: &[Rational]) -> Deformation {
        let mut psi = Deformation::zero(self.n, self.m);
        for (u, c) in self.unknowns.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            match *u {
                Unknown::Psi1 { s, i, j } => {
                    let mut v = psi.psi1(i, j);
                    v[s - 1] += c;
                    psi.set_psi1(i, j, v).expect("unknown in range");
                }
                Unknown::Psi2 { s, i, j } => {
                    let mut v = psi.psi2(i, j);
                    v[s - 1] += c;
                    psi.set_psi2(i, j, v).expect("unknown in range");
                }
                Unknown::Psi3 { s, i, j, k } => {
                    psi.add_psi3_term([i, j, k], s, c.clone()).expect("unknown in range");
                }
            }
        }
        psi
    }

    pub fn deformations(&self) -> Vec<Deformation> {
        self.vectors.iter().map(|v| self.deformation_of(v)).collect()
    }

    /// Coordinates of `psi` over `unknowns`; entries outside them are ignored.
    pub fn coordinates(&self, psi: &Deformation) -> Vec<Rational> {
        self.unknowns
            .iter()
            .map(|u| match *u {
                Unknown::Psi1 { s, i, j } => psi.psi1(i, j)[s - 1].clone(),
                Unknown::Psi2 { s, i, j } => psi.psi2(i, j)[s - 1].clone(),
                Unknown::Psi3 { s, i, j, k } => psi.psi3([i, j, k]).map(|v| v[s - 1].clone()).unwrap_or_default(),
            })
            .collect()
    }
}

fn check_sizes(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!("need n ≥ 1 and m ≥ 1, got n={n}, m={m}")));
    }
    Ok(())
}

fn index_of(unknowns: &[Unknown]) -> BTreeMap<Unknown, usize> {
    unknowns.iter().enumerate().map(|(c, &u)| (u, c)).collect()
}

fn solve(n: usize, m: usize, unknowns: Vec<Unknown>, rows: Vec<Vec<Rational>>) -> KernelBasis {
    let cols = unknowns.len();
    let vectors = if rows.is_empty() {
        RationalMatrix::zeros(0, cols).kernel_basis()
    } else {
        RationalMatrix::from_rows(cols, rows).expect("rows sized to the unknowns").kernel_basis()
    };
    KernelBasis { n, m, unknowns, vectors }
}

/// `ψ₁(X_{j+1}, X_k) + ψ₁(X_j, X_{k+1}) − [X0, ψ₁(X_j, X_k)] = 0` for `1 ≤ j < k ≤ n`.
pub fn solve_subspace_a(n: usize, m: usize) -> Result<KernelBasis> {
    check_sizes(n, m)?;
    let unknowns = psi1_unknowns(n);
    let col = index_of(&unknowns);
    // Column of the X_t coefficient of ψ₁(X_a, X_b) with sign, if nonzero.
    let term = |a: usize, b: usize, t: usize| -> Option<(usize, i64)> {
        if a > n || b > n || a == b || t == 0 || t > n {
            return None;
        }
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        Some((col[&Unknown::Psi1 { s: t, i: lo, j: hi }], sign))
    };
    let mut rows = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            for t in 1..=n {
                let mut row = zero_vector(unknowns.len());
                for (entry, factor) in [
                    (term(j + 1, k, t), 1),
                    (term(j, k + 1, t), 1),
                    (term(j, k, t - 1), -1),
                ] {
                    if let Some((c, sign)) = entry {
                        row[c] += Rational::from_integer((sign * factor).into());
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(solve(n, m, unknowns, rows))
}

/// `ψ₂(X_{j+1}, Y_k) − [X0, ψ₂(X_j, Y_k)] + ψ₂(X_j, Y_{k+1}) = 0` for all `j, k`.
pub fn solve_subspace_b(n: usize, m: usize) -> Result<KernelBasis> {
    check_sizes(n, m)?;
    let unknowns = psi2_unknowns(n, m);
    let col = index_of(&unknowns);
    let term = |i: usize, j: usize, t: usize| -> Option<usize> {
        (i <= n && j <= m && t >= 1 && t <= m).then(|| col[&Unknown::Psi2 { s: t, i, j }])
    };
    let mut rows = Vec::new();
    for j in 1..=n {
        for k in 1..=m {
            for t in 1..=m {
                let mut row = zero_vector(unknowns.len());
                for (entry, factor) in [(term(j + 1, k, t), 1), (term(j, k, t - 1), -1), (term(j, k + 1, t), 1)] {
                    if let Some(c) = entry {
                        row[c] += Rational::from_integer(factor.into());
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(solve(n, m, unknowns, rows))
}

/// `[X0, φ(Y_i,Y_j,Y_k)] − φ(Y_{i+1},Y_j,Y_k) − φ(Y_i,Y_{j+1},Y_k) − φ(Y_i,Y_j,Y_{k+1}) = 0`
/// on every sorted triple; its kernel is `C`.
pub fn solve_subspace_c(n: usize, m: usize) -> Result<KernelBasis> {
    check_sizes(n, m)?;
    let unknowns = psi3_unknowns(n, m);
    let rows = c_system_rows(n, m, &unknowns);
    Ok(solve(n, m, unknowns, rows))
}

pub(crate) fn c_system_rows(n: usize, m: usize, unknowns: &[Unknown]) -> Vec<Vec<Rational>> {
    let col = index_of(unknowns);
    let term = |mut key: [usize; 3], t: usize| -> Option<usize> {
        key.sort_unstable();
        (key[2] <= m && t >= 1 && t <= n).then(|| col[&Unknown::Psi3 { s: t, i: key[0], j: key[1], k: key[2] }])
    };
    let mut rows = Vec::new();
    for triple in sorted_tuples(3, m) {
        let [i, j, k] = [triple[0], triple[1], triple[2]];
        for t in 1..=n {
            let mut row = zero_vector(unknowns.len());
            for (entry, factor) in [
                (term([i, j, k], t - 1), 1),
                (term([i + 1, j, k], t), -1),
                (term([i, j + 1, k], t), -1),
                (term([i, j, k + 1], t), -1),
            ] {
                if let Some(c) = entry {
                    row[c] += Rational::from_integer(factor.into());
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// The cocycle system over all of `ψ₁, ψ₂, ψ₃` at once, built by feeding
/// each unit deformation through the generic identity checker.
///
/// Only nonzero rows are kept.
pub fn full_system(n: usize, m: usize) -> Result<(Vec<Unknown>, RationalMatrix)> {
    check_sizes(n, m)?;
    let mu0 = model(n, m, 0)?;
    let mut unknowns = psi1_unknowns(n);
    unknowns.extend(psi2_unknowns(n, m));
    unknowns.extend(psi3_unknowns(n, m));
    let shell = KernelBasis { n, m, unknowns: unknowns.clone(), vectors: vec![] };
    // Residual row index -> sparse (column, value) entries.
    let mut sparse: BTreeMap<(Identity, Vec<GradeIndex>, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for c in 0..unknowns.len() {
        let mut unit = zero_vector(unknowns.len());
        unit[c] = Rational::one();
        let psi = shell.deformation_of(&unit);
        let report = is_infinitesimal(&mu0, &psi)?;
        for v in report.violations {
            for (component, value) in v.residual.into_iter().enumerate() {
                if !value.is_zero() {
                    sparse.entry((v.identity, v.tuple.clone(), component)).or_default().push((c, value));
                }
            }
        }
    }
    let mut matrix = RationalMatrix::zeros(sparse.len(), unknowns.len());
    for (r, entries) in sparse.into_values().enumerate() {
        for (c, value) in entries {
            matrix.set(r, c, value);
        }
    }
    Ok((unknowns, matrix))
}

/// `Z(μ₀) = A ⊕ B ⊕ C` together with the independent full-system kernel
/// dimension.
#[derive(Clone, Debug)]
pub struct ZDecomposition {
    pub a: KernelBasis,
    pub b: KernelBasis,
    pub c: KernelBasis,
    pub full_dimension: usize,
}

impl ZDecomposition {
    pub fn is_direct_sum(&self) -> bool {
        self.full_dimension == self.a.len() + self.b.len() + self.c.len()
    }
}

pub fn decompose_z(n: usize, m: usize) -> Result<ZDecomposition> {
    let (a, b, c) = (solve_subspace_a(n, m)?, solve_subspace_b(n, m)?, solve_subspace_c(n, m)?);
    let (unknowns, matrix) = full_system(n, m)?;
    let full_dimension = unknowns.len() - matrix.rank();
    Ok(ZDecomposition { a, b, c, full_dimension })
}
