//! Lie algebras of order F (F ≤ 3) given by structure constants.
//!
//! An algebra has a Lie algebra in grade 0 with basis `X0..Xn`, grade-0
//! modules in grades 1 and 2 with bases `Y1..Ym` and `Z1..Zp`, and for every
//! nonzero grade an F-fold symmetric bracket into grade 0.
//!
//! The identities are evaluated through [`composition_report`], which
//! takes an *outer* and an *inner* law and expands every identity bilinearly.
//! Feeding it `(μ, μ)` gives the Jacobi identities of `μ`; feeding it
//! `(μ₀, ψ)` and `(ψ, μ₀)` gives the cocycle conditions of a deformation; and
//! `(ψ, ψ)` gives its integrability conditions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{
    axpy, format_rational, is_zero_vector, zero_vector, Rational, RationalMatrix,
};

/// A basis element: grade plus position within the grade.
///
/// Grade 0 positions start at 0 (`X0` is the characteristic slot), grades
/// 1 and 2 start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradeIndex {
    pub grade: usize,
    pub position: usize,
}

impl GradeIndex {
    pub const fn x(position: usize) -> Self {
        Self { grade: 0, position }
    }

    pub const fn y(position: usize) -> Self {
        Self { grade: 1, position }
    }

    pub const fn z(position: usize) -> Self {
        Self { grade: 2, position }
    }
}

impl fmt::Display for GradeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = ["X", "Y", "Z"].get(self.grade).copied().unwrap_or("?");
        write!(f, "{letter}{}", self.position)
    }
}

/// First position used by a grade.
pub(crate) const fn offset(grade: usize) -> usize {
    if grade == 0 {
        0
    } else {
        1
    }
}

/// All nondecreasing `len`-tuples with entries in `1..=max`.
pub fn sorted_tuples(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn extend(acc: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, len: usize, lo: usize, max: usize) {
        if cur.len() == len {
            acc.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            extend(acc, cur, len, v, max);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max > 0 || len == 0 {
        extend(&mut out, &mut Vec::with_capacity(len), len, 1, max);
    }
    out
}

type BracketTable = BTreeMap<(usize, usize), Vec<Rational>>;
type SymmetricTable = BTreeMap<Vec<usize>, Vec<Rational>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderFAlgebra {
    order: usize,
    n: usize,
    m: usize,
    p: usize,
    /// `brackets[g][(i, j)]` = [X_i, e_j] expanded in grade `g`; for `g = 0`
    /// only `i < j` is stored.
    brackets: [BracketTable; 3],
    /// `symmetric[g - 1][sorted tuple]` expanded over `X0..Xn`.
    symmetric: [SymmetricTable; 2],
}

impl OrderFAlgebra {
    /// An algebra with every product zero.
    pub fn new(order: usize, n: usize, m: usize, p: usize) -> Result<Self> {
        if !(1..=3).contains(&order) {
            return Err(Error::Dimension(format!("order F must be 1, 2 or 3, got {order}")));
        }
        if order < 2 && m > 0 {
            return Err(Error::Dimension("order 1 algebras have no grade 1".into()));
        }
        if order < 3 && p > 0 {
            return Err(Error::Dimension(format!("order {order} algebras have no grade 2")));
        }
        Ok(Self {
            order,
            n,
            m,
            p,
            brackets: Default::default(),
            symmetric: Default::default(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dim(&self, grade: usize) -> usize {
        match grade {
            0 => self.n + 1,
            1 => self.m,
            2 => self.p,
            _ => 0,
        }
    }

    /// Nonzero grades carried by this order.
    pub fn odd_grades(&self) -> std::ops::Range<usize> {
        1..self.order
    }

    fn check_index(&self, idx: GradeIndex) -> Result<()> {
        let lo = offset(idx.grade);
        let hi = lo + self.dim(idx.grade);
        if idx.grade >= self.order || idx.position < lo || idx.position >= hi {
            return Err(Error::IndexOutOfRange(format!(
                "{idx} is outside the basis (n={}, m={}, p={}, F={})",
                self.n, self.m, self.p, self.order
            )));
        }
        Ok(())
    }

    fn check_vector(&self, grade: usize, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim(grade) {
            return Err(Error::Dimension(format!(
                "coefficient vector of length {} for grade {grade} of dimension {}",
                v.len(),
                self.dim(grade)
            )));
        }
        Ok(())
    }

    /// Sets `[a, b] = out`, storing the antisymmetric partner implicitly.
    pub fn set_bracket(&mut self, a: GradeIndex, b: GradeIndex, out: Vec<Rational>) -> Result<()> {
        self.check_index(a)?;
        self.check_index(b)?;
        let (x, other, negate) = match (a.grade, b.grade) {
            (0, 0) if a.position == b.position => {
                if is_zero_vector(&out) {
                    return Ok(());
                }
                return Err(Error::InvalidParameter(format!("[{a}, {b}] must vanish")));
            }
            (0, 0) if a.position > b.position => (b, a, true),
            (0, _) => (a, b, false),
            (_, 0) => (b, a, true),
            _ => return Err(unsupported(a, b)),
        };
        let grade = other.grade;
        self.check_vector(grade, &out)?;
        let out = if negate { out.into_iter().map(|c| -c).collect() } else { out };
        let key = (x.position, other.position);
        if is_zero_vector(&out) {
            self.brackets[grade].remove(&key);
        } else {
            self.brackets[grade].insert(key, out);
        }
        Ok(())
    }

    /// `[a, b]` expanded in the basis of the result grade.
    pub fn bracket(&self, a: GradeIndex, b: GradeIndex) -> Result<Vec<Rational>> {
        self.check_index(a)?;
        self.check_index(b)?;
        let (x, other, negate) = match (a.grade, b.grade) {
            (0, 0) if a.position > b.position => (b, a, true),
            (0, _) => (a, b, false),
            (_, 0) => (b, a, true),
            _ => return Err(unsupported(a, b)),
        };
        let grade = other.grade;
        let mut out = self.brackets[grade]
            .get(&(x.position, other.position))
            .cloned()
            .unwrap_or_else(|| zero_vector(self.dim(grade)));
        if negate {
            out.iter_mut().for_each(|c| *c = -c.clone());
        }
        Ok(out)
    }

    fn check_symmetric_key(&self, grade: usize, indices: &[usize]) -> Result<Vec<usize>> {
        if grade == 0 || grade >= self.order {
            return Err(Error::UnsupportedProduct(format!(
                "no symmetric bracket on grade {grade} of an order {} algebra",
                self.order
            )));
        }
        if indices.len() != self.order {
            return Err(Error::InvalidParameter(format!(
                "symmetric bracket takes {} arguments, got {}",
                self.order,
                indices.len()
            )));
        }
        for &i in indices {
            self.check_index(GradeIndex { grade, position: i })?;
        }
        let mut key = indices.to_vec();
        key.sort_unstable();
        Ok(key)
    }

    /// Sets the F-fold symmetric bracket of grade `grade` on `indices` (any order).
    pub fn set_symmetric(&mut self, grade: usize, indices: &[usize], out: Vec<Rational>) -> Result<()> {
        let key = self.check_symmetric_key(grade, indices)?;
        self.check_vector(0, &out)?;
        if is_zero_vector(&out) {
            self.symmetric[grade - 1].remove(&key);
        } else {
            self.symmetric[grade - 1].insert(key, out);
        }
        Ok(())
    }

    pub fn symmetric_bracket(&self, grade: usize, indices: &[usize]) -> Result<Vec<Rational>> {
        let key = self.check_symmetric_key(grade, indices)?;
        Ok(self.symmetric[grade - 1]
            .get(&key)
            .cloned()
            .unwrap_or_else(|| zero_vector(self.n + 1)))
    }

    /// The 3-bracket `{e_i, e_j, e_l}` of grade 1 or 2 in an order-3 algebra.
    pub fn tribracket(&self, grade: usize, i: usize, j: usize, l: usize) -> Result<Vec<Rational>> {
        if self.order != 3 {
            return Err(Error::UnsupportedProduct(format!(
                "3-brackets need order 3, algebra has order {}",
                self.order
            )));
        }
        self.symmetric_bracket(grade, &[i, j, l])
    }

    /// Stored brackets of grade `grade` as `((i, j), out)`.
    pub fn bracket_entries(&self, grade: usize) -> impl Iterator<Item = (&(usize, usize), &Vec<Rational>)> {
        self.brackets[grade].iter()
    }

    pub fn symmetric_entries(&self, grade: usize) -> impl Iterator<Item = (&Vec<usize>, &Vec<Rational>)> {
        self.symmetric[grade - 1].iter()
    }

    pub fn unit(&self, idx: GradeIndex) -> Vec<Rational> {
        let mut v = zero_vector(self.dim(idx.grade));
        v[idx.position - offset(idx.grade)] = Rational::one();
        v
    }

    /// `[u, v]` for `u ∈ 𝔤₀` and `v` in grade `grade`, both as coefficient vectors.
    pub fn act(&self, grade: usize, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vector(self.dim(grade));
        let off = offset(grade);
        for (&(i, j), value) in &self.brackets[grade] {
            let mut c = &u[i] * &v[j - off];
            if grade == 0 {
                c -= &u[j] * &v[i];
            }
            axpy(&mut out, &c, value);
        }
        out
    }

    /// Symmetric bracket of grade `grade` on F coefficient vectors.
    pub fn symmetric_apply(&self, grade: usize, args: &[&[Rational]]) -> Vec<Rational> {
        let mut out = zero_vector(self.n + 1);
        let table = &self.symmetric[grade - 1];
        if table.is_empty() {
            return out;
        }
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..a.len()).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let mut choice = vec![0usize; args.len()];
        'outer: loop {
            let mut key: Vec<usize> = choice
                .iter()
                .zip(&supports)
                .map(|(&c, s)| s[c] + 1)
                .collect();
            key.sort_unstable();
            if let Some(value) = table.get(&key) {
                let mut c = Rational::one();
                for (arg, (&ch, s)) in args.iter().zip(choice.iter().zip(&supports)) {
                    c *= &arg[s[ch]];
                }
                axpy(&mut out, &c, value);
            }
            for slot in (0..choice.len()).rev() {
                choice[slot] += 1;
                if choice[slot] < supports[slot].len() {
                    continue 'outer;
                }
                choice[slot] = 0;
            }
            break;
        }
        out
    }

    /// `self + other`, entry by entry; both must have the same shape.
    pub fn sum(&self, other: &OrderFAlgebra) -> Result<OrderFAlgebra> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for g in 0..3 {
            for (key, value) in &other.brackets[g] {
                merge(&mut out.brackets[g], *key, value);
            }
        }
        for g in 0..2 {
            for (key, value) in &other.symmetric[g] {
                merge(&mut out.symmetric[g], key.clone(), value);
            }
        }
        Ok(out)
    }

    pub(crate) fn check_same_shape(&self, other: &OrderFAlgebra) -> Result<()> {
        if (self.order, self.n, self.m, self.p) != (other.order, other.n, other.m, other.p) {
            return Err(Error::Dimension(format!(
                "shape (F={}, n={}, m={}, p={}) differs from (F={}, n={}, m={}, p={})",
                self.order, self.n, self.m, self.p, other.order, other.n, other.m, other.p
            )));
        }
        Ok(())
    }
}

fn merge<K: Ord>(table: &mut BTreeMap<K, Vec<Rational>>, key: K, value: &[Rational]) {
    let entry = table.entry(key);
    match entry {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value.to_vec());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            axpy(e.get_mut(), &Rational::one(), value);
            if is_zero_vector(e.get()) {
                e.remove();
            }
        }
    }
}

fn unsupported(a: GradeIndex, b: GradeIndex) -> Error {
    Error::UnsupportedProduct(format!(
        "no bracket between grades {} and {} ({a}, {b}); only products with grade 0 are defined",
        a.grade, b.grade
    ))
}

/// The four identity families of a Lie algebra of order F.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    /// Jacobi identity on triples of grade 0.
    LieJacobi,
    /// Two grade-0 elements acting on one element of a nonzero grade.
    ModuleAction,
    /// Grade-0 equivariance of the symmetric bracket.
    Equivariance,
    /// The (F+1)-term identity on elements of one nonzero grade.
    FoldSum,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::LieJacobi,
        Identity::ModuleAction,
        Identity::Equivariance,
        Identity::FoldSum,
    ];

    /// 1-based position in the usual listing of the identities.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Identity::LieJacobi => "lie-jacobi",
            Identity::ModuleAction => "module-action",
            Identity::Equivariance => "equivariance",
            Identity::FoldSum => "fold-sum",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.number(), self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    pub tuple: Vec<GradeIndex>,
    /// Grade the residual lives in.
    pub residual_grade: usize,
    pub residual: Vec<Rational>,
}

pub(crate) fn format_combination(grade: usize, coeffs: &[Rational]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let basis = GradeIndex { grade, position: k + offset(grade) };
            if c.is_one() {
                basis.to_string()
            } else {
                format!("{}*{basis}", format_rational(c))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.tuple.iter().map(ToString::to_string).collect();
        let tuple = if self.identity == Identity::Equivariance {
            format!("{}; {}", names[0], names[1..].join(", "))
        } else {
            names.join(", ")
        };
        write!(
            f,
            "identity {} fails at ({tuple}): residual {}",
            self.identity,
            format_combination(self.residual_grade, &self.residual)
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// Number of index tuples evaluated.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn of(&self, identity: Identity) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.identity == identity)
    }
}

/// One index tuple of one identity family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Instance {
    pub identity: Identity,
    pub grade: usize,
    /// Grade-0 positions first (for the identities that take them), then
    /// positions in `grade`.
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
}

impl Instance {
    pub fn tuple(&self) -> Vec<GradeIndex> {
        self.xs
            .iter()
            .map(|&x| GradeIndex::x(x))
            .chain(self.ys.iter().map(|&y| GradeIndex { grade: self.grade, position: y }))
            .collect()
    }

    pub fn residual_grade(&self) -> usize {
        match self.identity {
            Identity::LieJacobi | Identity::Equivariance => 0,
            Identity::ModuleAction | Identity::FoldSum => self.grade,
        }
    }
}

/// Every tuple the identities are checked on, in a fixed order.
pub(crate) fn instances(shape: &OrderFAlgebra) -> Vec<Instance> {
    let n = shape.n;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(Instance { identity: Identity::LieJacobi, grade: 0, xs: vec![i, j, k], ys: vec![] });
            }
        }
    }
    for grade in shape.odd_grades() {
        for i in 0..=n {
            for j in i + 1..=n {
                for k in 1..=shape.dim(grade) {
                    out.push(Instance { identity: Identity::ModuleAction, grade, xs: vec![i, j], ys: vec![k] });
                }
            }
        }
    }
    for grade in shape.odd_grades() {
        for l in 0..=n {
            for ys in sorted_tuples(shape.order, shape.dim(grade)) {
                out.push(Instance { identity: Identity::Equivariance, grade, xs: vec![l], ys });
            }
        }
    }
    for grade in shape.odd_grades() {
        for ys in sorted_tuples(shape.order + 1, shape.dim(grade)) {
            out.push(Instance { identity: Identity::FoldSum, grade, xs: vec![], ys });
        }
    }
    out
}

/// Residual of one identity instance for the bilinear composition of
/// `outer` after `inner`.
pub(crate) fn residual(outer: &OrderFAlgebra, inner: &OrderFAlgebra, inst: &Instance) -> Vec<Rational> {
    let x = |i: usize| outer.unit(GradeIndex::x(i));
    let y = |j: usize| outer.unit(GradeIndex { grade: inst.grade, position: j });
    let g = inst.grade;
    match inst.identity {
        Identity::LieJacobi => {
            let (a, b, c) = (x(inst.xs[0]), x(inst.xs[1]), x(inst.xs[2]));
            // [[a,b],c] + [[c,a],b] + [[b,c],a]
            let mut out = outer.act(0, &inner.act(0, &a, &b), &c);
            axpy(&mut out, &Rational::one(), &outer.act(0, &inner.act(0, &c, &a), &b));
            axpy(&mut out, &Rational::one(), &outer.act(0, &inner.act(0, &b, &c), &a));
            out
        }
        Identity::ModuleAction => {
            let (a, b, v) = (x(inst.xs[0]), x(inst.xs[1]), y(inst.ys[0]));
            // [[a,b],v] + [[b,v],a] + [[v,a],b] = [[a,b],v] - [a,[b,v]] + [b,[a,v]]
            let mut out = outer.act(g, &inner.act(0, &a, &b), &v);
            axpy(&mut out, &-Rational::one(), &outer.act(g, &a, &inner.act(g, &b, &v)));
            axpy(&mut out, &Rational::one(), &outer.act(g, &b, &inner.act(g, &a, &v)));
            out
        }
        Identity::Equivariance => {
            let xv = x(inst.xs[0]);
            let ys: Vec<Vec<Rational>> = inst.ys.iter().map(|&j| y(j)).collect();
            let refs: Vec<&[Rational]> = ys.iter().map(Vec::as_slice).collect();
            // [X, μ(Y..)] - Σ_t μ(.., [X, Y_t], ..)
            let mut out = outer.act(0, &xv, &inner.symmetric_apply(g, &refs));
            for t in 0..ys.len() {
                let moved = inner.act(g, &xv, &ys[t]);
                if is_zero_vector(&moved) {
                    continue;
                }
                let mut args = refs.clone();
                args[t] = &moved;
                axpy(&mut out, &-Rational::one(), &outer.symmetric_apply(g, &args));
            }
            out
        }
        Identity::FoldSum => {
            let ys: Vec<Vec<Rational>> = inst.ys.iter().map(|&j| y(j)).collect();
            // Σ_j [Y_j, μ(others)] = -Σ_j [μ(others), Y_j]
            let mut out = zero_vector(outer.dim(g));
            for j in 0..ys.len() {
                let others: Vec<&[Rational]> = ys
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != j)
                    .map(|(_, v)| v.as_slice())
                    .collect();
                let inner_value = inner.symmetric_apply(g, &others);
                if is_zero_vector(&inner_value) {
                    continue;
                }
                axpy(&mut out, &-Rational::one(), &outer.act(g, &inner_value, &ys[j]));
            }
            out
        }
    }
}

/// Sums the residuals of every `(outer, inner)` pair over every identity
/// instance and reports the nonzero ones.
pub fn composition_report(pairs: &[(&OrderFAlgebra, &OrderFAlgebra)]) -> Result<Report> {
    let shape = pairs
        .first()
        .map(|p| p.0)
        .ok_or_else(|| Error::InvalidParameter("no laws to compose".into()))?;
    for (a, b) in pairs {
        shape.check_same_shape(a)?;
        shape.check_same_shape(b)?;
    }
    let mut report = Report::default();
    for inst in instances(shape) {
        report.checked += 1;
        let mut total = zero_vector(shape.dim(inst.residual_grade()));
        for (outer, inner) in pairs {
            axpy(&mut total, &Rational::one(), &residual(outer, inner, &inst));
        }
        if !is_zero_vector(&total) {
            report.violations.push(Violation {
                identity: inst.identity,
                tuple: inst.tuple(),
                residual_grade: inst.residual_grade(),
                residual: total,
            });
        }
    }
    Ok(report)
}

/// Checks all four identity families; an empty violation list means the
/// algebra is a Lie algebra of order F.
pub fn verify_jacobi(alg: &OrderFAlgebra) -> Report {
    composition_report(&[(alg, alg)]).expect("an algebra always matches its own shape")
}

/// A graded representation `ρ: 𝔤 → End(V)` with `V = V_0 ⊕ … ⊕ V_{F-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRepresentation {
    /// Dimensions of `V_0, …, V_{F-1}`.
    pub blocks: Vec<usize>,
    /// Images of `X0..Xn`, then `Y1..Ym`, then `Z1..Zp`.
    pub images: Vec<RationalMatrix>,
}

impl MatrixRepresentation {
    pub fn zero(alg: &OrderFAlgebra, blocks: Vec<usize>) -> Self {
        let size = blocks.iter().sum();
        let count = (0..3).map(|g| alg.dim(g)).sum();
        Self {
            blocks,
            images: vec![RationalMatrix::zeros(size, size); count],
        }
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().sum()
    }

    fn slot(alg: &OrderFAlgebra, idx: GradeIndex) -> usize {
        (0..idx.grade).map(|g| alg.dim(g)).sum::<usize>() + idx.position - offset(idx.grade)
    }

    pub fn image(&self, alg: &OrderFAlgebra, idx: GradeIndex) -> &RationalMatrix {
        &self.images[Self::slot(alg, idx)]
    }

    pub fn set_image(&mut self, alg: &OrderFAlgebra, idx: GradeIndex, matrix: RationalMatrix) {
        let slot = Self::slot(alg, idx);
        self.images[slot] = matrix;
    }

    /// `ρ(v)` for a coefficient vector `v` of grade `grade`.
    fn image_of(&self, alg: &OrderFAlgebra, grade: usize, v: &[Rational]) -> RationalMatrix {
        let size = self.size();
        let mut out = RationalMatrix::zeros(size, size);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let idx = GradeIndex { grade, position: k + offset(grade) };
                out = out.add(&self.image(alg, idx).scale(c));
            }
        }
        out
    }

    fn block_of(&self, index: usize) -> usize {
        let mut acc = 0;
        for (b, &len) in self.blocks.iter().enumerate() {
            acc += len;
            if index < acc {
                return b;
            }
        }
        unreachable!("index inside the representation space")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepresentationCheck {
    /// `ρ([X, X']) = [ρX, ρX']`.
    BracketHomomorphism,
    /// `ρ([X, Y]) = [ρX, ρY]`.
    ActionHomomorphism,
    /// `ρ{Y..} = Σ_σ ρ(Y_σ1)⋯ρ(Y_σF)`.
    SymmetricProduct,
    /// Grade `g` must map `V_a` into `V_{a+g}`.
    Grading,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationViolation {
    pub check: RepresentationCheck,
    pub tuple: Vec<GradeIndex>,
    pub residual: RationalMatrix,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepresentationReport {
    pub checked: usize,
    pub violations: Vec<RepresentationViolation>,
}

impl RepresentationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn permutations(len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(len - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, len - 1);
            out.push(p);
        }
    }
    out
}

pub fn verify_representation(
    alg: &OrderFAlgebra,
    rep: &MatrixRepresentation,
) -> Result<RepresentationReport> {
    let f = alg.order();
    if rep.blocks.len() != f {
        return Err(Error::Dimension(format!(
            "representation has {} graded blocks, order is {f}",
            rep.blocks.len()
        )));
    }
    let count: usize = (0..3).map(|g| alg.dim(g)).sum();
    if rep.images.len() != count {
        return Err(Error::Dimension(format!(
            "representation has {} images for {count} basis elements",
            rep.images.len()
        )));
    }
    let size = rep.size();
    if let Some(bad) = rep.images.iter().find(|m| m.rows() != size || m.cols() != size) {
        return Err(Error::Dimension(format!(
            "image of size {}x{} in a representation of dimension {size}",
            bad.rows(),
            bad.cols()
        )));
    }

    let mut report = RepresentationReport::default();
    let record = |report: &mut RepresentationReport, check, tuple, residual: RationalMatrix| {
        report.checked += 1;
        if !residual.is_zero() {
            report.violations.push(RepresentationViolation { check, tuple, residual });
        }
    };
    let commutator = |a: &RationalMatrix, b: &RationalMatrix| a.mul(b).sub(&b.mul(a));

    let n = alg.n();
    for i in 0..=n {
        for j in i + 1..=n {
            let (a, b) = (GradeIndex::x(i), GradeIndex::x(j));
            let lhs = rep.image_of(alg, 0, &alg.bracket(a, b)?);
            let rhs = commutator(rep.image(alg, a), rep.image(alg, b));
            record(&mut report, RepresentationCheck::BracketHomomorphism, vec![a, b], lhs.sub(&rhs));
        }
    }
    for grade in alg.odd_grades() {
        for i in 0..=n {
            for j in 1..=alg.dim(grade) {
                let (a, b) = (GradeIndex::x(i), GradeIndex { grade, position: j });
                let lhs = rep.image_of(alg, grade, &alg.bracket(a, b)?);
                let rhs = commutator(rep.image(alg, a), rep.image(alg, b));
                record(&mut report, RepresentationCheck::ActionHomomorphism, vec![a, b], lhs.sub(&rhs));
            }
        }
        let perms = permutations(f);
        for tuple in sorted_tuples(f, alg.dim(grade)) {
            let lhs = rep.image_of(alg, 0, &alg.symmetric_bracket(grade, &tuple)?);
            let mut rhs = RationalMatrix::zeros(size, size);
            for perm in &perms {
                let mut prod = RationalMatrix::identity(size);
                for &slot in perm {
                    prod = prod.mul(rep.image(alg, GradeIndex { grade, position: tuple[slot] }));
                }
                rhs = rhs.add(&prod);
            }
            let idx = tuple.iter().map(|&p| GradeIndex { grade, position: p }).collect();
            record(&mut report, RepresentationCheck::SymmetricProduct, idx, lhs.sub(&rhs));
        }
    }
    for grade in 0..f {
        for pos in offset(grade)..offset(grade) + alg.dim(grade) {
            let idx = GradeIndex { grade, position: pos };
            let m = rep.image(alg, idx);
            let mut stray = RationalMatrix::zeros(size, size);
            for r in 0..size {
                for c in 0..size {
                    let (src, dst) = (rep.block_of(c), rep.block_of(r));
                    if dst != (src + grade) % f && !m.get(r, c).is_zero() {
                        stray.set(r, c, m.get(r, c).clone());
                    }
                }
            }
            record(&mut report, RepresentationCheck::Grading, vec![idx], stray);
        }
    }
    Ok(report)
}
