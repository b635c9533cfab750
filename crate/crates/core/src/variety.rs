//! Projective algebraic sets cut out by forms of arbitrary degree, point
//! counting over extensions, and the growth-based dimension/degree estimate.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Float, FromPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::field::{extend_field, Elem, Embedding, FieldSpec};
use crate::proj::{self, pi, DEFAULT_POINT_CAP};
use crate::quadric::QuadraticForm;

/// Degree-`d` monomials in `n + 1` variables as nondecreasing index lists, in
/// lexicographic order. For `d = 2` this is the quadric storage order.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(n, d, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, 0, &mut Vec::with_capacity(d), &mut out);
    out
}

/// A homogeneous form of degree `d >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    n: usize,
    degree: usize,
    field: FieldSpec,
    coeffs: Vec<Elem>,
}

impl Form {
    /// Dense coefficients in [`monomials`] order; rejects the zero form.
    pub fn new(n: usize, degree: usize, field: &FieldSpec, coeffs: Vec<Elem>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("forms must have degree >= 1".into()));
        }
        let width = monomials(n, degree).len();
        if coeffs.len() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroForm);
        }
        Ok(Form {
            n,
            degree,
            field: field.clone(),
            coeffs,
        })
    }

    /// Sums like terms; each key is any ordering of the variable indices.
    pub fn from_terms(
        n: usize,
        degree: usize,
        field: &FieldSpec,
        terms: &[(Vec<usize>, Elem)],
    ) -> Result<Self> {
        let monos = monomials(n, degree);
        let mut coeffs = vec![Elem::ZERO; monos.len()];
        for (vars, c) in terms {
            if vars.len() != degree {
                return Err(Error::InvalidArgument(format!(
                    "term of degree {} in a degree-{degree} form",
                    vars.len()
                )));
            }
            if let Some(&bad) = vars.iter().find(|&&v| v > n) {
                return Err(Error::InvalidArgument(format!("variable x{bad} outside P^{n}")));
            }
            let mut key = vars.clone();
            key.sort_unstable();
            let k = monos.binary_search(&key).expect("sorted key is a monomial");
            coeffs[k] = field.add(coeffs[k], *c);
        }
        Form::new(n, degree, field, coeffs)
    }

    pub fn from_quadratic(f: &QuadraticForm) -> Form {
        Form {
            n: f.n(),
            degree: 2,
            field: f.field().clone(),
            coeffs: f.coeffs().to_vec(),
        }
    }

    pub fn to_quadratic(&self) -> Result<QuadraticForm> {
        if self.degree != 2 {
            return Err(Error::InvalidArgument(format!(
                "expected a quadratic form, got degree {}",
                self.degree
            )));
        }
        QuadraticForm::new(self.n, &self.field, self.coeffs.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Nonzero terms keyed by sorted variable lists.
    pub fn terms(&self) -> BTreeMap<Vec<usize>, Elem> {
        monomials(self.n, self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, &c)| (m, c))
            .collect()
    }

    pub fn evaluate(&self, x: &[Elem]) -> Elem {
        let mono = monomial_values(&self.field, self.degree, x);
        self.field.dot(&self.coeffs, &mono)
    }

    /// The same form with coefficients pushed into a larger field.
    pub fn embed(&self, emb: &Embedding) -> Result<Form> {
        if emb.base() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Form {
            n: self.n,
            degree: self.degree,
            field: emb.target().clone(),
            coeffs: self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        })
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (vars, c) in self.terms() {
            let mut parts: Vec<String> = Vec::new();
            let mut i = 0;
            while i < vars.len() {
                let j = vars[i..].iter().take_while(|&&v| v == vars[i]).count();
                parts.push(if j == 1 {
                    format!("x{}", vars[i])
                } else {
                    format!("x{}^{j}", vars[i])
                });
                i += j;
            }
            let mono = parts.join("*");
            if c == Elem::ONE {
                terms.push(mono);
            } else {
                terms.push(format!("{}*{mono}", self.field.format(c)));
            }
        }
        f.write_str(&terms.join("+"))
    }
}

/// Values of every degree-`d` monomial at `x`, in [`monomials`] order.
fn monomial_values(field: &FieldSpec, d: usize, x: &[Elem]) -> Vec<Elem> {
    // degree-k values from degree-(k-1) ones: multiply by each admissible last variable
    let n = x.len() - 1;
    let mut cur: Vec<(usize, Elem)> = vec![(0, Elem::ONE)];
    for _ in 0..d {
        let mut next = Vec::with_capacity(cur.len() * (n + 1));
        for &(last, v) in &cur {
            for (i, &xi) in x.iter().enumerate().skip(last) {
                next.push((i, field.mul(v, xi)));
            }
        }
        cur = next;
    }
    cur.into_iter().map(|(_, v)| v).collect()
}

/// Common zero set of a nonempty list of forms in one ambient `P^n(F_q)`.
#[derive(Clone, Debug)]
pub struct AlgebraicSet {
    forms: Vec<Form>,
    pub declared_dim: Option<i64>,
    pub declared_deg: Option<i64>,
}

impl AlgebraicSet {
    pub fn new(forms: Vec<Form>) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::InvalidArgument("an algebraic set needs at least one form".into()))?;
        for f in &forms[1..] {
            if f.field != first.field {
                return Err(Error::FieldMismatch);
            }
            if f.n != first.n {
                return Err(Error::DimensionMismatch {
                    expected: first.n,
                    got: f.n,
                });
            }
        }
        Ok(AlgebraicSet {
            forms,
            declared_dim: None,
            declared_deg: None,
        })
    }

    pub fn with_declared(mut self, deg: Option<i64>, dim: Option<i64>) -> Self {
        self.declared_deg = deg;
        self.declared_dim = dim;
        self
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn n(&self) -> usize {
        self.forms[0].n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.forms[0].field
    }

    pub fn push(&mut self, f: Form) -> Result<()> {
        if f.field != *self.field() {
            return Err(Error::FieldMismatch);
        }
        if f.n != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: f.n,
            });
        }
        self.forms.push(f);
        Ok(())
    }

    /// `|X(F_{q^k})|` by enumerating `P^n(F_{q^k})`.
    pub fn count_points(&self, k: u32) -> Result<u128> {
        let (target, emb) = extend_field(self.field(), k)?;
        let n = self.n();
        let total = pi(n as i64, target.q() as u64);
        if total > DEFAULT_POINT_CAP {
            return Err(Error::CapExceeded {
                what: "projective point count",
                value: total,
                cap: DEFAULT_POINT_CAP,
            });
        }
        let forms = self
            .forms
            .iter()
            .map(|f| f.embed(&emb))
            .collect::<Result<Vec<_>>>()?;
        let mut degrees: Vec<usize> = forms.iter().map(|f| f.degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let slot: Vec<usize> = forms
            .iter()
            .map(|f| degrees.binary_search(&f.degree).unwrap())
            .collect();

        let pts: Vec<proj::ProjPoint> = proj::points(n, &target).collect();
        let count = pts
            .par_chunks(4096)
            .map(|chunk| {
                let mut tables: Vec<Option<Vec<Elem>>> = vec![None; degrees.len()];
                chunk
                    .iter()
                    .filter(|p| {
                        tables.iter_mut().for_each(|t| *t = None);
                        forms.iter().zip(&slot).all(|(f, &s)| {
                            let mono = tables[s]
                                .get_or_insert_with(|| monomial_values(&target, f.degree, p.coords()));
                            target.dot(&f.coeffs, mono).is_zero()
                        })
                    })
                    .count() as u128
            })
            .sum();
        Ok(count)
    }
}

/// Growth-based reading of dimension and degree from `|X(F_{q^k})|`, `k = 1..=k_max`.
#[derive(Clone, Debug, Serialize)]
pub struct DimDegreeEstimate<F> {
    pub s_est: Option<i64>,
    pub d_est: Option<i64>,
    pub counts: Vec<u128>,
    /// `log_q(count(k) / count(k-1))` for `k = 2..=k_max`; absent when a count is zero.
    pub step_dims: Vec<Option<F>>,
    /// Every step rounds to the same dimension.
    pub stable: bool,
}

/// Heuristic `(s, d)` with `|X(F_{q^k})| ~ d q^{ks}`; the raw sequence is kept
/// so callers can judge whether the growth has settled.
pub fn estimate_dim_degree<F: Float + FromPrimitive>(
    x: &AlgebraicSet,
    k_max: u32,
) -> Result<DimDegreeEstimate<F>> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("estimation needs k_max >= 2".into()));
    }
    let counts = (1..=k_max)
        .map(|k| x.count_points(k))
        .collect::<Result<Vec<_>>>()?;
    let ln_q = F::from_u32(x.field().q()).unwrap().ln();
    let step_dims: Vec<Option<F>> = counts
        .windows(2)
        .map(|w| {
            (w[0] > 0 && w[1] > 0).then(|| {
                let ratio = F::from_u128(w[1]).unwrap() / F::from_u128(w[0]).unwrap();
                ratio.ln() / ln_q
            })
        })
        .collect();
    let rounded: Vec<Option<i64>> = step_dims
        .iter()
        .map(|s| s.and_then(|v| v.round().to_i64()).map(|v| v.max(0)))
        .collect();
    let s_est = *rounded.last().unwrap();
    let stable = rounded.iter().all(|r| r.is_some() && *r == s_est);
    let last = *counts.last().unwrap();
    let d_est = s_est.and_then(|s| {
        let scale = F::from_u32(x.field().q()).unwrap().powi((k_max as i64 * s) as i32);
        (F::from_u128(last).unwrap() / scale).round().to_i64()
    });
    Ok(DimDegreeEstimate {
        s_est,
        d_est,
        counts,
        step_dims,
        stable,
    })
}

/// One bound compared against a point count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: i128,
    pub satisfied: bool,
    pub slack: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture2Report {
    pub n: usize,
    pub q: u32,
    pub d: i64,
    pub s: i64,
    pub count: u128,
    /// The bound `d q^s + pi_{s-1}` holds.
    pub holds: bool,
    /// For a single form of degree `d` with `s = n - 1` the bound is a theorem.
    pub proven_case: bool,
    pub checks: Vec<BoundCheck>,
    pub notes: Vec<String>,
}

/// Compares `|X(F_q)|` with the conjectured `d q^s + pi_{s-1}` and its two
/// weaker relatives. `d`, `s` fall back to the declared values.
pub fn check_conjecture2(
    x: &AlgebraicSet,
    d: Option<i64>,
    s: Option<i64>,
) -> Result<Conjecture2Report> {
    let d = d
        .or(x.declared_deg)
        .ok_or_else(|| Error::InvalidArgument("degree d is required".into()))?;
    let s = s
        .or(x.declared_dim)
        .ok_or_else(|| Error::InvalidArgument("dimension s is required".into()))?;
    let n = x.n() as i64;
    let q = x.field().q() as u64;
    let count = x.count_points(1)?;
    let mut checks = Vec::new();
    let mut add = |name: &str, value: i128| {
        checks.push(BoundCheck {
            name: name.into(),
            value,
            satisfied: count as i128 <= value,
            slack: value - count as i128,
        });
    };
    add("tss", bounds::tss_bound(d, s, q)?);
    add("lachaud", bounds::lachaud_bound(d, s, q)?);
    if s <= n {
        add("lachaud_conj", bounds::lachaud_conj_bound(d, s, n, q)?);
    }
    let holds = checks[0].satisfied;
    let proven_case = x.forms.len() == 1 && s == n - 1 && x.forms[0].degree as i64 == d;
    let mut notes = vec![
        "(d, s) are caller-declared; for reducible or mixed-dimensional sets their meaning is ambiguous"
            .to_string(),
    ];
    if !holds {
        notes.push(format!(
            "POSSIBLE COUNTEREXAMPLE: {count} points exceed d q^s + pi_(s-1) = {}",
            checks[0].value
        ));
    }
    Ok(Conjecture2Report {
        n: x.n(),
        q: x.field().q(),
        d,
        s,
        count,
        holds,
        proven_case,
        checks,
        notes,
    })
}

/// A uniformly random nonzero form of degree `d`.
pub fn random_form<R: rand::Rng>(n: usize, d: usize, field: &FieldSpec, rng: &mut R) -> Form {
    let width = monomials(n, d).len();
    loop {
        let coeffs: Vec<Elem> = (0..width)
            .map(|_| field.element(rng.gen_range(0..field.q())).unwrap())
            .collect();
        if let Ok(f) = Form::new(n, d, field, coeffs) {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::pair::{self, Fixture};
    use crate::proj::{monomial_pairs, PointTable};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn var(n: usize, i: usize, f: &FieldSpec) -> Form {
        Form::from_terms(n, 1, f, &[(vec![i], Elem::ONE)]).unwrap()
    }

    #[test]
    fn monomial_order_matches_quadrics() {
        for n in 0..5 {
            let pairs: Vec<Vec<usize>> = monomial_pairs(n).into_iter().map(|(i, j)| vec![i, j]).collect();
            assert_eq!(monomials(n, 2), pairs);
        }
        assert_eq!(monomials(3, 3).len(), 20);
        assert_eq!(monomials(2, 4).len(), 15);
    }

    #[test]
    fn fixture_pair_agrees_with_pair_analysis() {
        let f = make_field(3, 1).unwrap();
        let (q1, q2) = Fixture::FourLines.forms(3, &f).unwrap();
        let x = AlgebraicSet::new(vec![Form::from_quadratic(&q1), Form::from_quadratic(&q2)]).unwrap();
        assert_eq!(x.count_points(1).unwrap(), 13);
        let t = PointTable::new(3, &f).unwrap();
        assert_eq!(pair::intersection_count(&q1, &q2, &t).unwrap(), 13);
        assert_eq!(x.count_points(2).unwrap(), 4 * 9 + 1);
    }

    #[test]
    fn trivial_sets() {
        for (p, m) in [(2, 1), (3, 1)] {
            let f = make_field(p, m).unwrap();
            for n in 1..4 {
                for k in 1..3 {
                    let h = AlgebraicSet::new(vec![var(n, 0, &f)]).unwrap();
                    assert_eq!(h.count_points(k).unwrap(), pi(n as i64 - 1, (p as u64).pow(k)));
                    let all = AlgebraicSet::new((0..=n).map(|i| var(n, i, &f)).collect()).unwrap();
                    assert_eq!(all.count_points(k).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn estimates() {
        let f = make_field(2, 1).unwrap();
        let h = AlgebraicSet::new(vec![var(3, 0, &f)]).unwrap();
        let e = estimate_dim_degree::<f64>(&h, 3).unwrap();
        assert_eq!((e.s_est, e.d_est), (Some(2), Some(1)));

        let x0x1 = Form::from_terms(3, 2, &f, &[(vec![1, 0], Elem::ONE)]).unwrap();
        let x = AlgebraicSet::new(vec![x0x1]).unwrap();
        let e = estimate_dim_degree::<f64>(&x, 3).unwrap();
        for (k, &c) in e.counts.iter().enumerate() {
            let qk = 2u64.pow(k as u32 + 1);
            assert_eq!(c, 2 * pi(2, qk) - pi(1, qk));
        }
        assert_eq!((e.s_est, e.d_est), (Some(2), Some(2)));
        assert!(e.stable);

        let f3 = make_field(3, 1).unwrap();
        let (q1, q2) = Fixture::FourLines.forms(3, &f3).unwrap();
        let x = AlgebraicSet::new(vec![Form::from_quadratic(&q1), Form::from_quadratic(&q2)]).unwrap();
        let e = estimate_dim_degree::<f32>(&x, 2).unwrap();
        assert_eq!((e.s_est, e.d_est), (Some(1), Some(4)));

        let all = AlgebraicSet::new((0..=3).map(|i| var(3, i, &f)).collect()).unwrap();
        let e = estimate_dim_degree::<f64>(&all, 2).unwrap();
        assert_eq!((e.s_est, e.d_est), (None, None));
    }

    #[test]
    fn conjecture2_reports() {
        let f3 = make_field(3, 1).unwrap();
        for n in 3..5 {
            let (q1, q2) = Fixture::FourLines.forms(n, &f3).unwrap();
            let x = AlgebraicSet::new(vec![Form::from_quadratic(&q1), Form::from_quadratic(&q2)])
                .unwrap()
                .with_declared(Some(4), Some(n as i64 - 2));
            let r = check_conjecture2(&x, None, None).unwrap();
            assert!(r.holds && !r.proven_case);
            assert_eq!(r.checks[0].slack, 0);
        }
        let x = AlgebraicSet::new(vec![var(2, 0, &f3)]).unwrap();
        assert!(check_conjecture2(&x, None, Some(1)).is_err());
        let r = check_conjecture2(&x, Some(1), Some(1)).unwrap();
        assert!(r.proven_case && r.holds);
    }

    #[test]
    fn form_display_and_eval() {
        let f = make_field(3, 1).unwrap();
        let g = Form::from_terms(
            2,
            3,
            &f,
            &[(vec![1, 0, 0], f.from_int(2)), (vec![2, 2, 2], Elem::ONE), (vec![0, 1, 2], Elem::ONE)],
        )
        .unwrap();
        assert_eq!(g.to_string(), "2*x0^2*x1+x0*x1*x2+x2^3");
        let x = [f.from_int(1), f.from_int(2), f.from_int(1)];
        // 2*1*2 + 1*2*1 + 1 = 7 = 1 mod 3
        assert_eq!(g.evaluate(&x), f.from_int(1));
        assert_eq!(
            Form::from_terms(2, 1, &f, &[(vec![0], Elem::ONE), (vec![0], f.from_int(2))]).unwrap_err(),
            Error::ZeroForm
        );
    }

    #[test]
    fn adding_forms_never_adds_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u32, 3] {
            let f = make_field(p, 1).unwrap();
            for _ in 0..20 {
                let mut x = AlgebraicSet::new(vec![random_form(3, 2, &f, &mut rng)]).unwrap();
                let mut prev = x.count_points(1).unwrap();
                for d in [1, 3] {
                    x.push(random_form(3, d, &f, &mut rng)).unwrap();
                    let c = x.count_points(1).unwrap();
                    assert!(c <= prev);
                    prev = c;
                }
            }
        }
    }

    #[test]
    fn hypersurfaces_satisfy_the_proven_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [2u32, 3] {
            let f = make_field(p, 1).unwrap();
            for n in 1..=3 {
                for d in 1..=3 {
                    for _ in 0..10 {
                        let x = AlgebraicSet::new(vec![random_form(n, d, &f, &mut rng)]).unwrap();
                        let r = check_conjecture2(&x, Some(d as i64), Some(n as i64 - 1)).unwrap();
                        assert!(r.holds && r.proven_case, "{}", x.forms()[0]);
                    }
                }
            }
        }
    }
}
