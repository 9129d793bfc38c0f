//! Closed-form deformations for three chains in grade 1 (`m = 3`), two
//! further integrable families, and two physical example algebras.
//!
//! Targets `X_{s+i}` with `s + i > n` are dropped.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::exactlin::{frac, int, Rational, RationalMatrix};
use crate::graded::{GradeIndex, OrderFAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyName {
    Phi1,
    Phi3,
    Phi13,
    PsiK,
    PsiT,
}

impl FamilyName {
    pub const ALL: [FamilyName; 5] = [Self::Phi1, Self::Phi3, Self::Phi13, Self::PsiK, Self::PsiT];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Phi1 => "phi1",
            Self::Phi3 => "phi3",
            Self::Phi13 => "phi13",
            Self::PsiK => "psi-k",
            Self::PsiT => "psi-t",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedDeformation {
    pub name: FamilyName,
    /// `s`, `k` or `t` depending on the family.
    pub parameter: usize,
    pub deformation: Deformation,
}

impl NamedDeformation {
    pub fn label(&self) -> String {
        format!("{}[{}]", self.name, self.parameter)
    }
}

/// `(Y-triple, target shift, numerator, denominator)`.
type Table = [([usize; 3], usize, i64, i64)];

const PHI1: &Table = &[
    ([1, 1, 1], 0, 1, 1),
    ([1, 1, 2], 1, 1, 3),
    ([1, 2, 2], 2, 1, 6),
    ([2, 2, 2], 3, 1, 6),
    ([2, 2, 3], 4, 1, 18),
    ([1, 3, 3], 4, -1, 18),
    ([2, 3, 3], 5, 1, 36),
    ([3, 3, 3], 6, 1, 36),
];

const PHI3: &Table = &[
    ([1, 1, 3], 0, 1, 1),
    ([1, 2, 2], 0, -1, 2),
    ([1, 2, 3], 1, 1, 2),
    ([2, 2, 2], 1, -3, 2),
    ([2, 2, 3], 2, -1, 2),
    ([1, 3, 3], 2, 1, 1),
    ([2, 3, 3], 3, -1, 4),
    ([3, 3, 3], 4, -1, 4),
];

const PHI13: &Table = &[
    ([1, 1, 1], 0, 1, 1),
    ([1, 1, 3], 2, 1, 15),
    ([1, 1, 2], 1, 1, 3),
    ([1, 2, 2], 2, 2, 15),
    ([2, 2, 2], 3, 1, 15),
    ([1, 2, 3], 3, 1, 30),
    ([2, 2, 3], 4, 1, 45),
    ([1, 3, 3], 4, 1, 90),
    ([2, 3, 3], 5, 1, 90),
    ([3, 3, 3], 6, 1, 90),
];

fn check_s(n: usize, s: usize) -> Result<()> {
    if s == 0 || s > n {
        return Err(Error::InvalidParameter(format!("parameter s={s} outside 1..={n}")));
    }
    Ok(())
}

/// Realizes a table with base target `X_s`; `s` itself may exceed `n`.
fn realize(n: usize, s: usize, table: &Table) -> Deformation {
    let mut psi = Deformation::zero(n, 3);
    for &(triple, shift, num, den) in table {
        psi.add_psi3_term(triple, s + shift, frac(num, den)).expect("table indices are in range");
    }
    psi
}

fn named(name: FamilyName, parameter: usize, deformation: Deformation) -> NamedDeformation {
    NamedDeformation { name, parameter, deformation }
}

pub fn phi1(n: usize, s: usize) -> Result<NamedDeformation> {
    check_s(n, s)?;
    Ok(named(FamilyName::Phi1, s, realize(n, s, PHI1)))
}

pub fn phi3(n: usize, s: usize) -> Result<NamedDeformation> {
    check_s(n, s)?;
    Ok(named(FamilyName::Phi3, s, realize(n, s, PHI3)))
}

/// The combination with the coefficient that balances the `(1,3,3)` entry.
pub fn phi13(n: usize, s: usize) -> Result<NamedDeformation> {
    check_s(n, s)?;
    Ok(named(FamilyName::Phi13, s, realize(n, s, PHI13)))
}

/// `φ_{1,s} + A·φ_{3,s+2}` for an arbitrary coefficient `A`.
pub fn phi13_with(n: usize, s: usize, a: &Rational) -> Result<Deformation> {
    check_s(n, s)?;
    realize(n, s, PHI1).add_scaled(a, &realize(n, s + 2, PHI3))
}

/// Basis of `C` for `m = 3` and odd `n`.
pub fn closed_basis_c(n: usize) -> Result<Vec<NamedDeformation>> {
    if n % 2 == 0 {
        return Err(Error::InvalidParameter(format!("basis is listed for odd n only, got n={n}")));
    }
    let ones = |range: std::ops::RangeInclusive<usize>| -> Result<Vec<NamedDeformation>> {
        range.rev().map(|s| phi1(n, s)).collect()
    };
    let threes = |range: std::ops::RangeInclusive<usize>| -> Result<Vec<NamedDeformation>> {
        range.rev().map(|s| phi3(n, s)).collect()
    };
    let mut out = Vec::new();
    match n {
        1 => {
            out.extend(ones(1..=1)?);
            out.extend(threes(1..=1)?);
        }
        3 => {
            out.extend(ones(1..=3)?);
            out.extend(threes(1..=3)?);
        }
        5 => {
            out.extend(ones(1..=5)?);
            out.extend(threes(3..=5)?);
        }
        _ => {
            out.extend(ones(n - 4..=n)?);
            out.extend(threes(n - 2..=n)?);
            out.push(phi13(n, n - 5)?);
            out.push(phi13(n, n - 6)?);
        }
    }
    Ok(out)
}

/// `ψ(Y_{k+i}, Y_m, Y_m) = X_{1+i}` for `0 ≤ i ≤ min(n−1, m−k)`.
pub fn psi_k(n: usize, m: usize, k: usize) -> Result<NamedDeformation> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("family needs n ≥ 2, got n={n}")));
    }
    if k == 0 || k > m {
        return Err(Error::InvalidParameter(format!("parameter k={k} outside 1..={m}")));
    }
    let mut psi = Deformation::zero(n, m);
    for i in 0..=(n - 1).min(m - k) {
        psi.add_psi3_term([k + i, m, m], 1 + i, Rational::one())?;
    }
    Ok(named(FamilyName::PsiK, k, psi))
}

/// `ψ(Y1,Y1,Y1) = 3X_t` and `ψ(Y1,Y1,Y_{1+i}) = X_{t+i}` for `1 ≤ i ≤ n−t`.
///
/// Arguments past `Y_m` do not exist and are skipped; `t = 0` would need an
/// `X0` value and is rejected.
pub fn psi_t(n: usize, m: usize, t: usize) -> Result<NamedDeformation> {
    if n < m || m == 0 {
        return Err(Error::InvalidParameter(format!("family needs n ≥ m ≥ 1, got n={n}, m={m}")));
    }
    if t < n - m || t > n {
        return Err(Error::InvalidParameter(format!("parameter t={t} outside {}..={n}", n - m)));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("t = 0 would send Y1Y1Y1 to X0".into()));
    }
    let mut psi = Deformation::zero(n, m);
    psi.add_psi3_term([1, 1, 1], t, int(3))?;
    for i in 1..=(n - t).min(m - 1) {
        psi.add_psi3_term([1, 1, 1 + i], t + i, Rational::one())?;
    }
    Ok(named(FamilyName::PsiT, t, psi))
}

/// Position of `L_{μν}` (`μ < ν`) in lexicographic order.
fn rotation_slot(d: usize, mu: usize, nu: usize) -> usize {
    (0..mu).map(|r| d - 1 - r).sum::<usize>() + (nu - mu - 1)
}

/// Grade-0 basis: `L_{μν}` for `μ < ν` lexicographically, then `P_μ`.
/// Grade 1 is the vector representation `V_μ`.
pub fn example_poincare(d: usize) -> Result<OrderFAlgebra> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("dimension D must be at least 2, got {d}")));
    }
    let rotations = d * (d - 1) / 2;
    let dim0 = rotations + d;
    let mut alg = OrderFAlgebra::new(3, dim0 - 1, d, 0)?;
    let eta = |a: usize, b: usize| -> i64 {
        match (a == b, a) {
            (false, _) => 0,
            (true, 0) => 1,
            (true, _) => -1,
        }
    };
    let p = |mu: usize| rotations + mu;
    // Adds c·L_{ab} with L_{ba} = −L_{ab} and L_{aa} = 0.
    let add_l = |out: &mut Vec<Rational>, a: usize, b: usize, c: i64| {
        if c == 0 || a == b {
            return;
        }
        let (slot, sign) = if a < b { (rotation_slot(d, a, b), 1) } else { (rotation_slot(d, b, a), -1) };
        out[slot] += int(sign * c);
    };
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect();
    for &(mu, nu) in &pairs {
        let l = GradeIndex::x(rotation_slot(d, mu, nu));
        for &(rho, sigma) in &pairs {
            let mut out = vec![Rational::zero(); dim0];
            add_l(&mut out, rho, mu, eta(nu, sigma));
            add_l(&mut out, rho, nu, -eta(mu, sigma));
            add_l(&mut out, mu, sigma, eta(nu, rho));
            add_l(&mut out, nu, sigma, -eta(mu, rho));
            let other = GradeIndex::x(rotation_slot(d, rho, sigma));
            if l.position < other.position {
                alg.set_bracket(l, other, out)?;
            }
        }
        for rho in 0..d {
            let mut out = vec![Rational::zero(); dim0];
            out[p(mu)] += int(eta(nu, rho));
            out[p(nu)] -= int(eta(mu, rho));
            alg.set_bracket(l, GradeIndex::x(p(rho)), out)?;
            let mut out = vec![Rational::zero(); d];
            out[mu] += int(eta(nu, rho));
            out[nu] -= int(eta(mu, rho));
            alg.set_bracket(l, GradeIndex::y(rho + 1), out)?;
        }
    }
    for a in 0..d {
        for b in a..d {
            for c in b..d {
                let mut out = vec![Rational::zero(); dim0];
                out[p(c)] += int(eta(a, b));
                out[p(b)] += int(eta(a, c));
                out[p(a)] += int(eta(c, b));
                alg.set_symmetric(1, &[a + 1, b + 1, c + 1], out)?;
            }
        }
    }
    Ok(alg)
}

/// Signature of the form preserved by `so(2,3)`.
const SO23_METRIC: [i64; 5] = [1, 1, -1, -1, -1];

/// `J_ab = g_b E_ab − g_a E_ba` for `a < b`, lexicographic.
pub fn so23_generators() -> Vec<RationalMatrix> {
    let mut out = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            let mut m = RationalMatrix::zeros(5, 5);
            m.set(a, b, int(SO23_METRIC[b]));
            m.set(b, a, int(-SO23_METRIC[a]));
            out.push(m);
        }
    }
    out
}

/// Coordinates of an element of `so(2,3)` in the generator basis.
fn so23_coordinates(m: &RationalMatrix) -> Vec<Rational> {
    let mut out = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            out.push(m.get(a, b) * int(SO23_METRIC[b]));
        }
    }
    out
}

/// `ad(J_a)` in the generator basis.
fn so23_adjoint() -> Vec<RationalMatrix> {
    let gens = so23_generators();
    gens.iter()
        .map(|ja| {
            let mut ad = RationalMatrix::zeros(10, 10);
            for (c, jc) in gens.iter().enumerate() {
                let coords = so23_coordinates(&ja.mul(jc).sub(&jc.mul(ja)));
                for (r, v) in coords.into_iter().enumerate() {
                    ad.set(r, c, v);
                }
            }
            ad
        })
        .collect()
}

/// `Tr(ad J_a · ad J_b)`.
pub fn so23_killing_form() -> RationalMatrix {
    let ads = so23_adjoint();
    let mut k = RationalMatrix::zeros(10, 10);
    for a in 0..10 {
        for b in 0..10 {
            let prod = ads[a].mul(&ads[b]);
            let trace = (0..10).fold(Rational::zero(), |acc, i| acc + prod.get(i, i));
            k.set(a, b, trace);
        }
    }
    k
}

/// `𝔤₀ = so(2,3)`, `𝔤₁` its adjoint representation, and the 3-bracket
/// `{A_a,A_b,A_c} = K(a,b)J_c + K(a,c)J_b + K(b,c)J_a` with `K` the
/// Killing form.
pub fn example_so23_adjoint() -> OrderFAlgebra {
    let ads = so23_adjoint();
    let killing = so23_killing_form();
    let mut alg = OrderFAlgebra::new(3, 9, 10, 0).expect("fixed shape");
    for (a, ad) in ads.iter().enumerate() {
        for c in 0..10 {
            let column: Vec<Rational> = (0..10).map(|r| ad.get(r, c).clone()).collect();
            if a < c {
                alg.set_bracket(GradeIndex::x(a), GradeIndex::x(c), column.clone()).expect("in range");
            }
            alg.set_bracket(GradeIndex::x(a), GradeIndex::y(c + 1), column).expect("in range");
        }
    }
    for a in 0..10 {
        for b in a..10 {
            for c in b..10 {
                let mut out = vec![Rational::zero(); 10];
                out[c] += killing.get(a, b);
                out[b] += killing.get(a, c);
                out[a] += killing.get(b, c);
                alg.set_symmetric(1, &[a + 1, b + 1, c + 1], out).expect("in range");
            }
        }
    }
    alg
}
