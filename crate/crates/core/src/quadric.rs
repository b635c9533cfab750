//! Quadratic forms over `F_q` and the quadrics they define.
//!
//! Rank is read off the vanishing radical `V(f) = {w : f(u + w) = f(u) for all u}`,
//! which works uniformly in every characteristic. The type of a quadric is
//! decided by counting the points of its non-degenerate base and matching the
//! count against the three standard values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, ElemRepr, FieldSpec};
use crate::linalg::{self, Matrix, Vector};
use crate::proj::{self, monomial_index, monomial_pairs, num_monomials, pi, PointTable, ProjPoint};

/// Projective-equivalence type of a (possibly degenerate) quadric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadricType {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

impl QuadricType {
    pub fn name(self) -> &'static str {
        match self {
            QuadricType::Hyperbolic => "hyperbolic",
            QuadricType::Elliptic => "elliptic",
            QuadricType::Parabolic => "parabolic",
        }
    }

    /// Types a rank-`r` quadric can have.
    pub fn for_rank(rank: usize) -> &'static [QuadricType] {
        if rank % 2 == 1 {
            &[QuadricType::Parabolic]
        } else {
            &[QuadricType::Hyperbolic, QuadricType::Elliptic]
        }
    }
}

impl fmt::Display for QuadricType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for QuadricType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperbolic" => Ok(QuadricType::Hyperbolic),
            "elliptic" => Ok(QuadricType::Elliptic),
            "parabolic" => Ok(QuadricType::Parabolic),
            other => Err(Error::InvalidArgument(format!("unknown quadric type `{other}`"))),
        }
    }
}

/// Number of points of a non-degenerate quadric of the given rank and type in
/// `P^{rank-1}(F_q)`; `None` when the type does not fit the rank's parity.
pub fn nondegenerate_count(rank: usize, qtype: QuadricType, q: u64) -> Option<u128> {
    if rank == 0 || !QuadricType::for_rank(rank).contains(&qtype) {
        return None;
    }
    let half = (rank / 2) as i64;
    Some(match qtype {
        QuadricType::Parabolic => pi(rank as i64 - 2, q),
        QuadricType::Hyperbolic => pi(half - 1, q) * ((q as u128).pow(half as u32 - 1) + 1),
        QuadricType::Elliptic => pi(half - 2, q) * ((q as u128).pow(half as u32) + 1),
    })
}

/// A linear form `sum a_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    field: FieldSpec,
    coeffs: Vec<Elem>,
}

impl LinearForm {
    pub fn new(field: &FieldSpec, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroForm);
        }
        Ok(LinearForm {
            field: field.clone(),
            coeffs,
        })
    }

    /// The coordinate form `x_i`.
    pub fn coordinate(field: &FieldSpec, n: usize, i: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[i] = Elem::ONE;
        LinearForm {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Scaled so the first nonzero coefficient is 1.
    pub fn normalized(&self) -> LinearForm {
        let lead = self.coeffs.iter().copied().find(|c| !c.is_zero()).unwrap();
        let inv = self.field.inv(lead).unwrap();
        LinearForm {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| self.field.mul(c, inv)).collect(),
        }
    }

    pub fn same_hyperplane(&self, other: &LinearForm) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn evaluate(&self, x: &[Elem]) -> Elem {
        self.field.dot(&self.coeffs, x)
    }

    pub fn product(&self, other: &LinearForm) -> QuadraticForm {
        let n = self.n();
        let f = &self.field;
        let mut coeffs = vec![Elem::ZERO; num_monomials(n)];
        for i in 0..=n {
            for j in 0..=n {
                let k = monomial_index(n, i, j);
                coeffs[k] = f.add(coeffs[k], f.mul(self.coeffs[i], other.coeffs[j]));
            }
        }
        QuadraticForm::from_raw(n, f, coeffs)
    }

    /// The hyperplane as a canonical point of the dual space.
    pub fn dual_point(&self) -> ProjPoint {
        proj::canonicalize(&self.field, &self.coeffs).expect("linear form is nonzero")
    }

    pub fn to_repr(&self) -> Vec<ElemRepr> {
        self.coeffs.iter().map(|&c| self.field.repr(c)).collect()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                if c == Elem::ONE {
                    format!("x{i}")
                } else {
                    format!("{}*x{i}", self.field.format(c))
                }
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

/// A nonzero quadratic form in `n + 1` variables, stored upper-triangularly in
/// [`monomial_pairs`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    n: usize,
    field: FieldSpec,
    coeffs: Vec<Elem>,
}

impl QuadraticForm {
    /// Rejects the zero form and wrong-length coefficient vectors.
    pub fn new(n: usize, field: &FieldSpec, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.len() != num_monomials(n) {
            return Err(Error::DimensionMismatch {
                expected: num_monomials(n),
                got: coeffs.len(),
            });
        }
        if let Some(bad) = coeffs.iter().find(|c| !field.contains(**c)) {
            return Err(Error::NotInField(bad.code()));
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroForm);
        }
        Ok(Self::from_raw(n, field, coeffs))
    }

    pub(crate) fn from_raw(n: usize, field: &FieldSpec, coeffs: Vec<Elem>) -> Self {
        QuadraticForm {
            n,
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds `sum c * x_i * x_j` from `(i, j, c)` triples with integer coefficients.
    pub fn from_terms(n: usize, field: &FieldSpec, terms: &[(usize, usize, i64)]) -> Result<Self> {
        let mut coeffs = vec![Elem::ZERO; num_monomials(n)];
        for &(i, j, c) in terms {
            if i > n || j > n {
                return Err(Error::InvalidArgument(format!("variable index out of range in x{i}*x{j}")));
            }
            let k = monomial_index(n, i, j);
            coeffs[k] = field.add(coeffs[k], field.from_int(c));
        }
        Self::new(n, field, coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Elem {
        self.coeffs[monomial_index(self.n, i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroForm)
        } else {
            Ok(())
        }
    }

    /// Value at an affine vector.
    pub fn eval_vec(&self, x: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        let mut k = 0;
        for i in 0..=self.n {
            if x[i].is_zero() {
                k += self.n + 1 - i;
                continue;
            }
            let mut row = Elem::ZERO;
            for xj in &x[i..=self.n] {
                row = f.add(row, f.mul(self.coeffs[k], *xj));
                k += 1;
            }
            acc = f.add(acc, f.mul(row, x[i]));
        }
        acc
    }

    /// Value at the canonical representative of `p`.
    pub fn evaluate(&self, p: &ProjPoint) -> Result<Elem> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.dim(),
            });
        }
        if let Some(bad) = p.coords().iter().find(|c| !self.field.contains(**c)) {
            return Err(Error::NotInField(bad.code()));
        }
        Ok(self.eval_vec(p.coords()))
    }

    /// Value at point `i` of a matching table, as a dot product.
    #[inline]
    pub fn evaluate_at(&self, table: &PointTable, i: usize) -> Elem {
        self.field.dot(&self.coeffs, table.monomials(i))
    }

    pub(crate) fn check_table(&self, table: &PointTable) -> Result<()> {
        if table.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: table.n(),
            });
        }
        if table.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Indices of the table points on the quadric.
    pub fn zero_indices(&self, table: &PointTable) -> Result<Vec<usize>> {
        self.check_table(table)?;
        Ok((0..table.len())
            .filter(|&i| self.evaluate_at(table, i).is_zero())
            .collect())
    }

    /// `|Z(f)|` by enumeration.
    pub fn count_points(&self, table: &PointTable) -> Result<u128> {
        Ok(self.zero_indices(table)?.len() as u128)
    }

    /// `B(u, v) = f(u + v) - f(u) - f(v)`.
    pub fn polar(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let f = &self.field;
        let s: Vec<Elem> = u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect();
        f.sub(f.sub(self.eval_vec(&s), self.eval_vec(u)), self.eval_vec(v))
    }

    /// Gram matrix of the polar form: `c_ij` off the diagonal, `2 c_ii` on it.
    pub fn polar_matrix(&self) -> Matrix {
        let f = &self.field;
        let mut b = vec![vec![Elem::ZERO; self.n + 1]; self.n + 1];
        for (k, (i, j)) in monomial_pairs(self.n).into_iter().enumerate() {
            let c = self.coeffs[k];
            if i == j {
                b[i][i] = f.add(c, c);
            } else {
                b[i][j] = c;
                b[j][i] = c;
            }
        }
        b
    }

    /// `g(y) = f(y_0 b_0 + ... + y_{k-1} b_{k-1})`, a form in `k` variables.
    /// May be the zero form.
    pub fn restrict(&self, basis: &[Vector]) -> QuadraticForm {
        let f = &self.field;
        let k = basis.len();
        let m = k.saturating_sub(1);
        let mut coeffs = vec![Elem::ZERO; num_monomials(m)];
        for a in 0..k {
            coeffs[monomial_index(m, a, a)] = self.eval_vec(&basis[a]);
            for b in a + 1..k {
                coeffs[monomial_index(m, a, b)] = self.polar(&basis[a], &basis[b]);
            }
        }
        QuadraticForm {
            n: m,
            field: f.clone(),
            coeffs,
        }
    }

    /// `f(M x)` for a square matrix `M`.
    pub fn substitute(&self, m: &Matrix) -> Result<QuadraticForm> {
        if m.len() != self.n + 1 || m.iter().any(|r| r.len() != self.n + 1) {
            return Err(Error::DimensionMismatch {
                expected: self.n + 1,
                got: m.len(),
            });
        }
        let cols: Vec<Vector> = (0..=self.n)
            .map(|c| m.iter().map(|row| row[c]).collect())
            .collect();
        let g = self.restrict(&cols);
        g.require_nonzero()?;
        Ok(g)
    }

    /// The same polynomial read in `target + 1 >= n + 1` variables.
    pub fn embed(&self, target: usize) -> Result<QuadraticForm> {
        if target < self.n {
            return Err(Error::InvalidArgument(format!(
                "cannot embed P^{} into P^{target}",
                self.n
            )));
        }
        let mut coeffs = vec![Elem::ZERO; num_monomials(target)];
        for (k, (i, j)) in monomial_pairs(self.n).into_iter().enumerate() {
            coeffs[monomial_index(target, i, j)] = self.coeffs[k];
        }
        Ok(Self::from_raw(target, &self.field, coeffs))
    }

    /// Scaled so the first nonzero coefficient is 1.
    pub fn normalized(&self) -> QuadraticForm {
        let Some(lead) = self.coeffs.iter().copied().find(|c| !c.is_zero()) else {
            return self.clone();
        };
        let inv = self.field.inv(lead).unwrap();
        let coeffs = self.coeffs.iter().map(|&c| self.field.mul(c, inv)).collect();
        Self::from_raw(self.n, &self.field, coeffs)
    }

    pub fn is_proportional(&self, other: &QuadraticForm) -> bool {
        self.n == other.n && self.field == other.field && self.normalized() == other.normalized()
    }

    /// Whether the linear form divides this form, i.e. its hyperplane lies in
    /// the quadric.
    pub fn divisible_by(&self, l: &LinearForm) -> bool {
        let l = l.normalized();
        let f = &self.field;
        let k = l.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let basis: Vec<Vector> = (0..=self.n)
            .filter(|&j| j != k)
            .map(|j| {
                let mut v = vec![Elem::ZERO; self.n + 1];
                v[j] = Elem::ONE;
                v[k] = f.neg(l.coeffs[j]);
                v
            })
            .collect();
        if basis.is_empty() {
            return true;
        }
        self.restrict(&basis).is_zero()
    }

    pub fn to_repr(&self) -> Vec<ElemRepr> {
        self.coeffs.iter().map(|&c| self.field.repr(c)).collect()
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, (i, j)) in monomial_pairs(self.n).into_iter().enumerate() {
            let c = self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mono = if i == j {
                format!("x{i}^2")
            } else {
                format!("x{i}*x{j}")
            };
            if c == Elem::ONE {
                terms.push(mono);
            } else {
                terms.push(format!("{}*{mono}", self.field.format(c)));
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

/// Basis of the vanishing radical `V(f)`.
///
/// Odd characteristic: the kernel of the polar form. Characteristic 2: inside
/// that kernel `f` is additive and `f(sum l_i b_i) = (sum l_i sqrt(f(b_i)))^2`,
/// so the radical is the kernel of a linear functional on the coefficients.
pub fn vanishing_radical(f: &QuadraticForm) -> Result<Vec<Vector>> {
    f.require_nonzero()?;
    let field = &f.field;
    let kernel = linalg::kernel(field, &f.polar_matrix(), f.n + 1);
    if !field.characteristic_two() || kernel.is_empty() {
        return Ok(kernel);
    }
    let roots: Vec<Elem> = kernel
        .iter()
        .map(|b| field.sqrt(f.eval_vec(b)).expect("every element is a square in characteristic 2"))
        .collect();
    let lambdas = linalg::kernel(field, &vec![roots], kernel.len());
    Ok(lambdas
        .iter()
        .map(|lam| {
            let mut w = vec![Elem::ZERO; f.n + 1];
            for (l, b) in lam.iter().zip(&kernel) {
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi = field.add(*wi, field.mul(*l, *bi));
                }
            }
            w
        })
        .collect())
}

/// `n + 1 - dim V(f)`.
pub fn rank(f: &QuadraticForm) -> Result<usize> {
    Ok(f.n + 1 - vanishing_radical(f)?.len())
}

/// Rank, vertex, type and point count of a quadric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricProfile {
    pub rank: usize,
    /// `n - rank`; `-1` when the vertex is empty.
    pub vertex_dim: i64,
    pub qtype: QuadricType,
    pub point_count: u128,
    /// Points of the associated non-degenerate quadric in `P^{rank-1}`.
    pub base_count: u128,
    pub vertex_basis: Vec<Vector>,
}

impl QuadricProfile {
    pub fn to_json(&self, field: &FieldSpec) -> serde_json::Value {
        let vertex: Vec<Vec<ElemRepr>> = self
            .vertex_basis
            .iter()
            .map(|v| v.iter().map(|&c| field.repr(c)).collect())
            .collect();
        serde_json::json!({
            "rank": self.rank,
            "vertex_dim": self.vertex_dim,
            "type": self.qtype,
            "point_count": self.point_count as u64,
            "base_count": self.base_count as u64,
            "vertex_basis": vertex,
        })
    }
}

fn count_zeros_direct(f: &QuadraticForm) -> u128 {
    proj::points(f.n, &f.field)
        .filter(|p| f.eval_vec(p.coords()).is_zero())
        .count() as u128
}

/// Classifies `f` as a cone over a non-degenerate quadric.
pub fn classify(f: &QuadraticForm) -> Result<QuadricProfile> {
    let radical = vanishing_radical(f)?;
    let field = &f.field;
    let dim = f.n + 1;
    let r = dim - radical.len();
    let comp = linalg::complement(field, &radical, dim);
    let base = f.restrict(&comp);
    let base_count = count_zeros_direct(&base);
    let q = field.q() as u64;
    let qtype = QuadricType::for_rank(r)
        .iter()
        .copied()
        .find(|&t| nondegenerate_count(r, t, q) == Some(base_count))
        .ok_or_else(|| {
            Error::InvalidArgument(format!(
                "base of rank {r} has {base_count} points, matching no standard type"
            ))
        })?;
    let vertex_dim = f.n as i64 - r as i64;
    let point_count = base_count * (q as u128).pow((vertex_dim + 1) as u32) + pi(vertex_dim, q);
    Ok(QuadricProfile {
        rank: r,
        vertex_dim,
        qtype,
        point_count,
        base_count,
        vertex_basis: radical,
    })
}

/// Least `c` (in code order) with `t^2 + t + c` irreducible over the field.
pub fn irreducible_binary_constant(field: &FieldSpec) -> Elem {
    field
        .elements()
        .find(|&c| {
            field
                .elements()
                .all(|t| !field.add(field.add(field.mul(t, t), t), c).is_zero())
        })
        .expect("an irreducible monic quadratic exists over every finite field")
}

/// The representative used for each `(rank, type)` class in `P^n`.
pub fn canonical_form(rank: usize, qtype: QuadricType, n: usize, field: &FieldSpec) -> Result<QuadraticForm> {
    if rank == 0 || rank > n + 1 {
        return Err(Error::InvalidArgument(format!("rank {rank} outside 1..={}", n + 1)));
    }
    if !QuadricType::for_rank(rank).contains(&qtype) {
        return Err(Error::InvalidArgument(format!("rank {rank} cannot be {qtype}")));
    }
    let mut terms: Vec<(usize, usize, Elem)> = Vec::new();
    match qtype {
        QuadricType::Parabolic => {
            terms.push((0, 0, Elem::ONE));
            for k in 0..(rank - 1) / 2 {
                terms.push((2 * k + 1, 2 * k + 2, Elem::ONE));
            }
        }
        QuadricType::Hyperbolic => {
            for k in 0..rank / 2 {
                terms.push((2 * k, 2 * k + 1, Elem::ONE));
            }
        }
        QuadricType::Elliptic => {
            for k in 0..rank / 2 - 1 {
                terms.push((2 * k, 2 * k + 1, Elem::ONE));
            }
            let (a, b) = (rank - 2, rank - 1);
            terms.push((a, a, Elem::ONE));
            terms.push((a, b, Elem::ONE));
            terms.push((b, b, irreducible_binary_constant(field)));
        }
    }
    let mut coeffs = vec![Elem::ZERO; num_monomials(n)];
    for (i, j, c) in terms {
        coeffs[monomial_index(n, i, j)] = c;
    }
    QuadraticForm::new(n, field, coeffs)
}

/// `f = L1 * L2` when `f` has rank 1, or rank 2 and splits over `F_q`.
pub fn split_linear_factors(f: &QuadraticForm) -> Option<(LinearForm, LinearForm)> {
    let field = &f.field;
    let radical = vanishing_radical(f).ok()?;
    let dim = f.n + 1;
    let r = dim - radical.len();
    if r > 2 {
        return None;
    }
    let comp = linalg::complement(field, &radical, dim);
    // columns: complement, then radical; rows of the inverse are the dual coordinates
    let mut basis = comp.clone();
    basis.extend(radical.iter().cloned());
    let cols: Matrix = (0..dim).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
    let dual = linalg::inverse(field, &cols)?;
    let g = f.restrict(&comp);
    let combine = |a: Elem, b: Elem| -> LinearForm {
        let coeffs = (0..dim)
            .map(|i| {
                let mut v = field.mul(a, dual[0][i]);
                if r == 2 {
                    v = field.add(v, field.mul(b, dual[1][i]));
                }
                v
            })
            .collect();
        LinearForm {
            field: field.clone(),
            coeffs,
        }
    };
    if r == 1 {
        let a = g.coeff(0, 0);
        return Some((combine(a, Elem::ZERO), combine(Elem::ONE, Elem::ZERO)));
    }
    let (a, b, c) = (g.coeff(0, 0), g.coeff(0, 1), g.coeff(1, 1));
    if a.is_zero() {
        // g = y1 (b y0 + c y1)
        return Some((combine(Elem::ZERO, Elem::ONE), combine(b, c)));
    }
    // g = a (y0 - t1 y1)(y0 - t2 y1) with t1 + t2 = -b/a
    let t1 = field.elements().find(|&t| {
        field
            .add(field.add(field.mul(a, field.mul(t, t)), field.mul(b, t)), c)
            .is_zero()
    })?;
    let sum = field.neg(field.div(b, a).ok()?);
    let t2 = field.sub(sum, t1);
    Some((
        combine(a, field.neg(field.mul(a, t1))),
        combine(Elem::ONE, field.neg(t2)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::proj::enumerate_points;

    fn qf(n: usize, p: u32, terms: &[(usize, usize, i64)]) -> QuadraticForm {
        QuadraticForm::from_terms(n, &make_field(p, 1).unwrap(), terms).unwrap()
    }

    /// `{w : f(u + w) = f(u) for all u}` by exhaustion.
    fn brute_radical(f: &QuadraticForm) -> Vec<Vector> {
        let field = f.field();
        let dim = f.n() + 1;
        let q = field.q() as u64;
        let vecs: Vec<Vector> = (0..q.pow(dim as u32))
            .map(|mut c| {
                (0..dim)
                    .map(|_| {
                        let e = field.element((c % q) as u32).unwrap();
                        c /= q;
                        e
                    })
                    .collect()
            })
            .collect();
        vecs.iter()
            .filter(|w| {
                vecs.iter().all(|u| {
                    let s: Vec<Elem> = u.iter().zip(w.iter()).map(|(&a, &b)| field.add(a, b)).collect();
                    f.eval_vec(&s) == f.eval_vec(u)
                })
            })
            .cloned()
            .collect()
    }

    #[test]
    fn evaluation_examples() {
        let f3 = make_field(3, 1).unwrap();
        let f = qf(3, 3, &[(0, 1, 1)]);
        let p = proj::canonicalize(&f3, &[Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ONE]).unwrap();
        assert_eq!(f.evaluate(&p).unwrap(), Elem::ZERO);
        let g = qf(3, 3, &[(0, 0, 1), (1, 1, 1), (2, 2, -1)]);
        for a in f3.elements() {
            let p = proj::canonicalize(&f3, &[Elem::ZERO, Elem::ONE, Elem::ONE, a]).unwrap();
            assert_eq!(g.evaluate(&p).unwrap(), Elem::ZERO);
        }
        let h = qf(2, 3, &[(2, 2, 1)]);
        let p = proj::canonicalize(&f3, &[Elem::ZERO, Elem::ZERO, Elem::ONE]).unwrap();
        assert_eq!(h.evaluate(&p).unwrap(), Elem::ONE);
        assert!(matches!(
            f.evaluate(&p).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn radical_examples() {
        let f = qf(3, 2, &[(0, 1, 1)]);
        let v = vanishing_radical(&f).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(rank(&f).unwrap(), 2);
        assert_eq!(v.len(), brute_radical(&f).len().ilog2() as usize);

        let g = qf(3, 2, &[(2, 2, 1)]);
        let v = vanishing_radical(&g).unwrap();
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|w| w[2].is_zero()));
        assert_eq!(brute_radical(&g).len(), 8);
        assert_eq!(rank(&g).unwrap(), 1);

        let h = qf(3, 2, &[(0, 1, 1), (2, 3, 1)]);
        assert!(vanishing_radical(&h).unwrap().is_empty());
    }

    #[test]
    fn zero_form_rejected() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(
            QuadraticForm::from_terms(2, &f2, &[(0, 0, 1), (0, 0, 1)]).unwrap_err(),
            Error::ZeroForm
        );
        let zero = QuadraticForm::from_raw(2, &f2, vec![Elem::ZERO; 6]);
        assert_eq!(rank(&zero).unwrap_err(), Error::ZeroForm);
        assert_eq!(classify(&zero).unwrap_err(), Error::ZeroForm);
    }

    #[test]
    fn radical_matches_brute_force_exhaustively() {
        for p in [2u32, 3] {
            let field = make_field(p, 1).unwrap();
            for n in 1..=2usize {
                let nm = num_monomials(n);
                let total = (p as u64).pow(nm as u32);
                for code in 1..total {
                    let mut c = code;
                    let coeffs: Vec<Elem> = (0..nm)
                        .map(|_| {
                            let e = field.element((c % p as u64) as u32).unwrap();
                            c /= p as u64;
                            e
                        })
                        .collect();
                    let f = QuadraticForm::new(n, &field, coeffs).unwrap();
                    let v = vanishing_radical(&f).unwrap();
                    let brute = brute_radical(&f);
                    assert_eq!((p as usize).pow(v.len() as u32), brute.len(), "{f}");
                    for w in &v {
                        assert!(brute.contains(w));
                    }
                }
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&qf(3, 3, &[(0, 0, 1), (1, 1, 1), (2, 2, -1)])).unwrap(), 3);
        assert_eq!(rank(&qf(5, 3, &[(0, 0, 1), (1, 1, 1), (2, 2, -1)])).unwrap(), 3);
        assert_eq!(rank(&qf(3, 5, &[(2, 2, 1)])).unwrap(), 1);
    }

    #[test]
    fn classify_examples() {
        let h = classify(&qf(3, 2, &[(0, 1, 1), (2, 3, 1)])).unwrap();
        assert_eq!((h.rank, h.qtype, h.point_count), (4, QuadricType::Hyperbolic, 9));

        let e = classify(&qf(3, 2, &[(0, 0, 1), (0, 1, 1), (1, 1, 1)])).unwrap();
        assert_eq!((e.rank, e.qtype, e.base_count, e.point_count), (2, QuadricType::Elliptic, 0, 3));

        let c = classify(&qf(2, 3, &[(0, 0, 1), (1, 2, 1)])).unwrap();
        assert_eq!((c.rank, c.qtype, c.point_count), (3, QuadricType::Parabolic, 4));
        assert_eq!(c.vertex_dim, -1);
    }

    #[test]
    fn standard_counts_small() {
        assert_eq!(nondegenerate_count(4, QuadricType::Hyperbolic, 3), Some(16));
        assert_eq!(nondegenerate_count(4, QuadricType::Elliptic, 3), Some(10));
        assert_eq!(nondegenerate_count(3, QuadricType::Parabolic, 3), Some(4));
        assert_eq!(nondegenerate_count(2, QuadricType::Hyperbolic, 7), Some(2));
        assert_eq!(nondegenerate_count(2, QuadricType::Elliptic, 7), Some(0));
        assert_eq!(nondegenerate_count(1, QuadricType::Parabolic, 7), Some(0));
        assert_eq!(nondegenerate_count(3, QuadricType::Elliptic, 7), None);
    }

    #[test]
    fn canonical_forms_round_trip() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(
            canonical_form(2, QuadricType::Hyperbolic, 3, &f2).unwrap().to_string(),
            "x0*x1"
        );
        let e = canonical_form(4, QuadricType::Elliptic, 3, &f2).unwrap();
        assert_eq!(e.to_string(), "x0*x1+x2^2+x2*x3+x3^2");
        assert_eq!(e.count_points(&enumerate_points(3, &f2).unwrap()).unwrap(), 5);
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let field = make_field(p, m).unwrap();
            for n in 0..=4 {
                for r in 1..=n + 1 {
                    for &t in QuadricType::for_rank(r) {
                        let f = canonical_form(r, t, n, &field).unwrap();
                        let prof = classify(&f).unwrap();
                        assert_eq!((prof.rank, prof.qtype), (r, t), "{f} over {field}");
                    }
                }
            }
        }
        assert!(canonical_form(3, QuadricType::Hyperbolic, 3, &f2).is_err());
        assert!(canonical_form(5, QuadricType::Parabolic, 3, &f2).is_err());
    }

    #[test]
    fn cone_identity_holds_for_all_small_forms() {
        let field = make_field(3, 1).unwrap();
        let table = enumerate_points(2, &field).unwrap();
        let nm = num_monomials(2);
        for code in 1..3u64.pow(nm as u32) {
            let mut c = code;
            let coeffs: Vec<Elem> = (0..nm)
                .map(|_| {
                    let e = field.from_int((c % 3) as i64);
                    c /= 3;
                    e
                })
                .collect();
            let f = QuadraticForm::new(2, &field, coeffs).unwrap();
            let prof = classify(&f).unwrap();
            assert_eq!(prof.point_count, f.count_points(&table).unwrap(), "{f}");
        }
    }

    #[test]
    fn split_examples() {
        let (l1, l2) = split_linear_factors(&qf(3, 3, &[(2, 2, 1)])).unwrap();
        assert_eq!((l1.to_string(), l2.to_string()), ("x2".into(), "x2".into()));
        let f = qf(3, 3, &[(0, 1, 1)]);
        let (l1, l2) = split_linear_factors(&f).unwrap();
        assert_eq!(l1.product(&l2), f);
        let mut names = [l1.normalized().to_string(), l2.normalized().to_string()];
        names.sort();
        assert_eq!(names, ["x0".to_string(), "x1".to_string()]);
        assert!(split_linear_factors(&qf(3, 2, &[(0, 0, 1), (0, 1, 1), (1, 1, 1)])).is_none());
        assert!(split_linear_factors(&qf(3, 3, &[(0, 0, 1), (1, 2, 1)])).is_none());
    }

    #[test]
    fn split_product_is_exact_exhaustively() {
        for (p, m) in [(2, 1), (3, 1), (2, 2)] {
            let field = make_field(p, m).unwrap();
            let q = field.q() as u64;
            let n = 2;
            let nm = num_monomials(n);
            for code in 1..q.pow(nm as u32) {
                let mut c = code;
                let coeffs: Vec<Elem> = (0..nm)
                    .map(|_| {
                        let e = field.element((c % q) as u32).unwrap();
                        c /= q;
                        e
                    })
                    .collect();
                let f = QuadraticForm::new(n, &field, coeffs).unwrap();
                let prof = classify(&f).unwrap();
                let split = split_linear_factors(&f);
                let expect = prof.rank == 1 || (prof.rank == 2 && prof.qtype == QuadricType::Hyperbolic);
                assert_eq!(split.is_some(), expect, "{f}");
                if let Some((a, b)) = split {
                    assert_eq!(a.product(&b), f);
                    assert!(f.divisible_by(&a) && f.divisible_by(&b));
                }
            }
        }
    }

    #[test]
    fn substitution_by_identity_is_identity() {
        let f = qf(3, 3, &[(0, 0, 1), (1, 2, 2), (3, 3, 1)]);
        let id: Matrix = (0..4)
            .map(|i| (0..4).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
            .collect();
        assert_eq!(f.substitute(&id).unwrap(), f);
    }

    #[test]
    fn display() {
        let f = qf(2, 3, &[(0, 0, 1), (1, 1, 1), (2, 2, -1)]);
        assert_eq!(f.to_string(), "x0^2+x1^2+2*x2^2");
    }
}
