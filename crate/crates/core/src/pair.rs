//! Pairs of quadrics: order, shared hyperplanes, exact intersection counts,
//! cone lifting and the named extremal configurations.

use std::str::FromStr;

use crate::bounds::{self, BoundEntry, BoundScalar};
use crate::error::{Error, Result};
use crate::field::{Elem, ElemRepr, FieldSpec};
use crate::linalg;
use crate::proj::{self, pi, PointTable};
use crate::quadric::{
    canonical_form, irreducible_binary_constant, rank, split_linear_factors, vanishing_radical,
    LinearForm, QuadraticForm, QuadricType,
};
use crate::Rational;

fn same_ambient(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<()> {
    if f1.n() != f2.n() {
        return Err(Error::DimensionMismatch {
            expected: f1.n(),
            got: f2.n(),
        });
    }
    if f1.field() != f2.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Fewest variables, after one invertible change of coordinates, in which
/// both forms can be written: `n + 1 - dim(V(f1) ∩ V(f2))`.
pub fn order(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<usize> {
    same_ambient(f1, f2)?;
    let v1 = vanishing_radical(f1)?;
    let v2 = vanishing_radical(f2)?;
    let mut both = v1.clone();
    both.extend(v2.iter().cloned());
    let sum_dim = linalg::span_dim(f1.field(), &both);
    let meet = v1.len() + v2.len() - sum_dim;
    Ok(f1.n() + 1 - meet)
}

/// A hyperplane contained in both quadrics, found as a shared linear factor.
pub fn common_hyperplane(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<Option<LinearForm>> {
    same_ambient(f1, f2)?;
    if f1.is_zero() || f2.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (Some((a, b)), Some((c, d))) = (split_linear_factors(f1), split_linear_factors(f2)) else {
        return Ok(None);
    };
    Ok([a, b]
        .into_iter()
        .find(|l| l.same_hyperplane(&c) || l.same_hyperplane(&d))
        .map(|l| l.normalized()))
}

/// Indices (in dual-point order of `P^n`) of the hyperplanes whose points all
/// lie on the quadric.
pub fn contained_hyperplanes(f: &QuadraticForm, table: &PointTable) -> Result<Vec<usize>> {
    f.check_table(table)?;
    let field = f.field();
    let on_quadric: Vec<bool> = (0..table.len())
        .map(|i| f.evaluate_at(table, i).is_zero())
        .collect();
    Ok(table
        .points()
        .iter()
        .enumerate()
        .filter(|(_, h)| {
            table
                .points()
                .iter()
                .enumerate()
                .all(|(i, x)| on_quadric[i] || !field.dot(h.coords(), x.coords()).is_zero())
        })
        .map(|(k, _)| k)
        .collect())
}

/// Common hyperplane by testing every hyperplane of `P^n` pointwise.
pub fn common_hyperplane_by_enumeration(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    table: &PointTable,
) -> Result<Option<LinearForm>> {
    same_ambient(f1, f2)?;
    let h1 = contained_hyperplanes(f1, table)?;
    let h2 = contained_hyperplanes(f2, table)?;
    Ok(h1.into_iter().find(|k| h2.contains(k)).map(|k| {
        LinearForm::new(f1.field(), table.point(k).coords().to_vec()).expect("dual point is nonzero")
    }))
}

/// Both hypotheses of the intersection bound: the forms define different
/// quadrics and share no hyperplane.
pub fn in_hypothesis(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<bool> {
    Ok(!f1.is_proportional(f2) && common_hyperplane(f1, f2)?.is_none())
}

/// `|Q1 ∩ Q2|` by evaluation over the table.
pub fn intersection_count(f1: &QuadraticForm, f2: &QuadraticForm, table: &PointTable) -> Result<u128> {
    same_ambient(f1, f2)?;
    f1.check_table(table)?;
    Ok((0..table.len())
        .filter(|&i| f1.evaluate_at(table, i).is_zero() && f2.evaluate_at(table, i).is_zero())
        .count() as u128)
}

/// Same count, scanning only the cached points of `Q1`.
pub fn intersection_count_cached(q1_points: &[usize], f2: &QuadraticForm, table: &PointTable) -> u128 {
    q1_points
        .iter()
        .filter(|&&i| f2.evaluate_at(table, i).is_zero())
        .count() as u128
}

/// `m q^l + pi_{l-1}`: points on a cone with an `(l-1)`-dimensional vertex over
/// a base meeting set of size `m`.
pub fn cone_lift_bound(m: u128, l: u32, q: u64) -> u128 {
    m * (q as u128).pow(l) + pi(l as i64 - 1, q)
}

/// Reads a pair in `P^t` as a pair in `P^target`; the intersection becomes
/// a cone with vertex of dimension `target - t - 1`.
pub fn embed_and_lift(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    target: usize,
) -> Result<(QuadraticForm, QuadraticForm)> {
    same_ambient(f1, f2)?;
    if f1.n() >= target {
        return Err(Error::InvalidArgument(format!(
            "lift target {target} must exceed the base dimension {}",
            f1.n()
        )));
    }
    Ok((f1.embed(target)?, f2.embed(target)?))
}

/// Everything known about one pair.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub n: usize,
    pub q: u32,
    pub order: usize,
    pub common_hyperplane: Option<LinearForm>,
    pub in_hypothesis: bool,
    pub intersection_count: u128,
    pub theorem_bound: i128,
    pub applicable_bounds: Vec<BoundEntry<Rational>>,
    /// `theorem_bound - count`; absent when the hypotheses fail.
    pub slack: Option<i128>,
}

impl PairReport {
    /// In hypothesis yet above the bound; only an implementation bug can cause this.
    pub fn violates_theorem(&self) -> bool {
        self.in_hypothesis && (self.intersection_count as i128) > self.theorem_bound
    }

    pub fn to_json(&self) -> serde_json::Value {
        let hyper: Option<Vec<ElemRepr>> = self.common_hyperplane.as_ref().map(|l| l.to_repr());
        let bounds: Vec<serde_json::Value> = self
            .applicable_bounds
            .iter()
            .map(|e| {
                serde_json::json!({
                    "name": e.name,
                    "value": e.value.to_string(),
                    "floor": e.floor as i64,
                    "hypothesis": e.hypothesis,
                })
            })
            .collect();
        serde_json::json!({
            "order": self.order,
            "common_hyperplane": hyper,
            "count": self.intersection_count as u64,
            "bound_theorem": self.theorem_bound as i64,
            "bounds": bounds,
            "slack": self.slack.map(|s| s as i64),
            "in_hypothesis": self.in_hypothesis,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "P^{} over F_{}\norder            {}\ncommon hyperplane {}\nin hypothesis    {}\ncount            {}\ntheorem bound    {}\nslack            {}\n",
            self.n,
            self.q,
            self.order,
            self.common_hyperplane
                .as_ref()
                .map_or("none".to_string(), |l| l.to_string()),
            self.in_hypothesis,
            self.intersection_count,
            self.theorem_bound,
            self.slack.map_or("n/a".to_string(), |v| v.to_string()),
        );
        for e in &self.applicable_bounds {
            s.push_str(&format!("  {:<10} {:>12}  ({})\n", e.name, e.value.to_string(), e.hypothesis));
        }
        s
    }
}

fn entry(name: &str, value: Rational, hyp: &str) -> BoundEntry<Rational> {
    BoundEntry {
        name: name.into(),
        floor: value.floor_int(),
        value,
        hypothesis: hyp.into(),
    }
}

/// Builds a [`PairReport`], enumerating `P^n` internally.
pub fn pair_report(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<PairReport> {
    same_ambient(f1, f2)?;
    let table = proj::enumerate_points(f1.n(), f1.field())?;
    pair_report_with_table(f1, f2, &table)
}

pub fn pair_report_with_table(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    table: &PointTable,
) -> Result<PairReport> {
    same_ambient(f1, f2)?;
    let n = f1.n();
    if n < 2 {
        return Err(Error::InvalidArgument("pairs need n >= 2".into()));
    }
    let q = f1.field().q();
    let ni = n as i64;
    let order = order(f1, f2)?;
    let hyper = common_hyperplane(f1, f2)?;
    let in_hyp = hyper.is_none() && !f1.is_proportional(f2);
    let count = intersection_count(f1, f2, table)?;
    let theorem = bounds::edoukou_bound(ni, q as u64)?;

    let int = |v: i128| Rational::from_integer(v);
    let mut applicable = vec![
        entry("schmidt", bounds::schmidt_bound(ni, q as u64)?, "no common component"),
        entry("aubry", bounds::aubry_bound(ni, q as u64)?, "no common component"),
        entry("edoukou", int(theorem), "no common hyperplane"),
    ];
    if n >= 3 {
        if order == n + 1 {
            applicable.push(entry("ls", int(bounds::ls_bound(ni, q as u64)?), "full order"));
        }
        let (r1, r2) = (rank(f1)?, rank(f2)?);
        if r1 == n + 1 || r2 == n + 1 {
            let eh = bounds::eh_bound(ni, q as u64)?;
            applicable.push(entry("eh_max", int(eh.max()), "one quadric non-degenerate"));
        }
        let degenerate_rank = [r1, r2].into_iter().filter(|&r| r >= 4 && r <= n).max();
        if let Some(r) = degenerate_rank {
            applicable.push(entry(
                "conj1",
                int(bounds::conj1_bound(ni, r as i64, q as u64)?),
                "conjecture: one quadric degenerate of rank >= 4",
            ));
        }
    }
    Ok(PairReport {
        n,
        q,
        order,
        common_hyperplane: hyper,
        in_hypothesis: in_hyp,
        intersection_count: count,
        theorem_bound: theorem,
        applicable_bounds: applicable,
        slack: in_hyp.then(|| theorem - count as i128),
    })
}

/// Named pairs that attain (or illustrate) the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    /// `x0^2 + x1^2 - x2^2` and `x0 x1`: four concurrent lines, `4q+1` points in `P^3` for odd `q`.
    FourLines,
    /// `(x0+x1)x2 + x2^2` and `(x2+x0)x1 + x1^2` in the plane, lifted.
    PlaneQuartet,
    /// `x2^2` and `x0 x1 + x2^2`: a repeated hyperplane against a rank-3 quadric.
    Rank1,
    /// An irreducible binary form in `x0, x1` against `x0 x1`.
    Elliptic2,
}

impl Fixture {
    pub const ALL: [Fixture; 4] = [
        Fixture::FourLines,
        Fixture::PlaneQuartet,
        Fixture::Rank1,
        Fixture::Elliptic2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::FourLines => "four-lines",
            Fixture::PlaneQuartet => "plane-quartet",
            Fixture::Rank1 => "rank1",
            Fixture::Elliptic2 => "elliptic2",
        }
    }

    /// Smallest ambient dimension the fixture lives in.
    pub fn min_n(self) -> usize {
        match self {
            Fixture::FourLines => 3,
            _ => 2,
        }
    }

    /// The two forms in `P^n`.
    pub fn forms(self, n: usize, field: &FieldSpec) -> Result<(QuadraticForm, QuadraticForm)> {
        if n < self.min_n() {
            return Err(Error::InvalidArgument(format!(
                "fixture {} needs n >= {}",
                self.name(),
                self.min_n()
            )));
        }
        let t = |terms: &[(usize, usize, i64)]| QuadraticForm::from_terms(n, field, terms);
        Ok(match self {
            Fixture::FourLines => (t(&[(0, 0, 1), (1, 1, 1), (2, 2, -1)])?, t(&[(0, 1, 1)])?),
            Fixture::PlaneQuartet => (
                t(&[(0, 2, 1), (1, 2, 1), (2, 2, 1)])?,
                t(&[(1, 2, 1), (0, 1, 1), (1, 1, 1)])?,
            ),
            Fixture::Rank1 => (t(&[(2, 2, 1)])?, t(&[(0, 1, 1), (2, 2, 1)])?),
            Fixture::Elliptic2 => {
                let x = canonical_form(2, QuadricType::Elliptic, n, field)?;
                debug_assert_eq!(x.coeff(1, 1), irreducible_binary_constant(field));
                (x, t(&[(0, 1, 1)])?)
            }
        })
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown fixture `{s}`")))
    }
}

/// Applies the same invertible substitution to both forms.
pub fn transform_pair(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    m: &linalg::Matrix,
) -> Result<(QuadraticForm, QuadraticForm)> {
    Ok((f1.substitute(m)?, f2.substitute(m)?))
}

/// A uniformly random invertible matrix.
pub fn random_invertible<R: rand::Rng>(field: &FieldSpec, dim: usize, rng: &mut R) -> linalg::Matrix {
    loop {
        let m: linalg::Matrix = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| field.element(rng.gen_range(0..field.q())).unwrap())
                    .collect()
            })
            .collect();
        if linalg::inverse(field, &m).is_some() {
            return m;
        }
    }
}

/// A uniformly random nonzero quadratic form.
pub fn random_form<R: rand::Rng>(n: usize, field: &FieldSpec, rng: &mut R) -> QuadraticForm {
    loop {
        let coeffs: Vec<Elem> = (0..proj::num_monomials(n))
            .map(|_| field.element(rng.gen_range(0..field.q())).unwrap())
            .collect();
        if let Ok(f) = QuadraticForm::new(n, field, coeffs) {
            return f;
        }
    }
}
