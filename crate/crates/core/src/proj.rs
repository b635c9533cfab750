//! Projective space `P^n(F_q)`: point counts, canonical representatives and
//! the precomputed degree-2 monomial table used for fast form evaluation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

/// Default cap on the number of points materialized at once.
pub const DEFAULT_POINT_CAP: u128 = 4_000_000;

/// `pi_n = q^n + ... + q + 1`, the size of `P^n(F_q)`; zero for negative `n`.
pub fn pi(n: i64, q: u64) -> u128 {
    if n < 0 {
        return 0;
    }
    let q = q as u128;
    (0..=n).fold(0u128, |acc, _| acc * q + 1)
}

/// Number of degree-2 monomials `x_i x_j` (`i <= j`) in `n + 1` variables.
pub fn num_monomials(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Degree-2 monomials in storage order: `(0,0), (0,1), ..., (0,n), (1,1), ...`.
pub fn monomial_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

/// Storage index of `x_i x_j`; order of `i`, `j` is irrelevant.
pub fn monomial_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows 0..i hold (n+1) + n + ... + (n+2-i) entries
    i * (n + 1) - i * (i.saturating_sub(1)) / 2 + (j - i)
}

/// A point of `P^n(F_q)` whose first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Elem>,
}

impl ProjPoint {
    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// `(a0:a1:...:an)`.
    pub fn format(&self, field: &FieldSpec) -> String {
        let mut s = String::from("(");
        for (i, &c) in self.coords.iter().enumerate() {
            if i > 0 {
                s.push(':');
            }
            let _ = write!(s, "{}", field.format(c));
        }
        s.push(')');
        s
    }

    fn code(&self, q: u32) -> u128 {
        self.coords
            .iter()
            .rev()
            .fold(0u128, |acc, c| acc * q as u128 + c.code() as u128)
    }
}

/// Scales `v` by the inverse of its first nonzero coordinate.
pub fn canonicalize(field: &FieldSpec, v: &[Elem]) -> Result<ProjPoint> {
    let lead = v
        .iter()
        .copied()
        .find(|c| !c.is_zero())
        .ok_or(Error::ZeroVector)?;
    let inv = field.inv(lead)?;
    Ok(ProjPoint {
        coords: v.iter().map(|&c| field.mul(c, inv)).collect(),
    })
}

fn check_cap(n: usize, field: &FieldSpec, cap: u128) -> Result<()> {
    let count = pi(n as i64, field.q() as u64);
    if count > cap {
        return Err(Error::CapExceeded {
            what: "projective point count",
            value: count,
            cap,
        });
    }
    Ok(())
}

/// Iterates the canonical points of `P^n(F_q)` in increasing order of the
/// base-`q` code `x_0 + x_1 q + ... + x_n q^n`.
pub fn points(n: usize, field: &FieldSpec) -> impl Iterator<Item = ProjPoint> + '_ {
    let q = field.q() as u128;
    let total = q.pow(n as u32 + 1);
    (1..total).filter_map(move |mut code| {
        let mut coords = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            coords.push(field.element((code % q) as u32).expect("digit below q"));
            code /= q;
        }
        let lead = coords.iter().find(|c| !c.is_zero())?;
        (*lead == Elem::ONE).then_some(ProjPoint { coords })
    })
}

/// All points of `P^n(F_q)` with their degree-2 monomial values.
#[derive(Clone, Debug)]
pub struct PointTable {
    n: usize,
    field: FieldSpec,
    points: Vec<ProjPoint>,
    monomials: Vec<Elem>,
    width: usize,
}

/// Materializes `P^n(F_q)` under [`DEFAULT_POINT_CAP`].
pub fn enumerate_points(n: usize, field: &FieldSpec) -> Result<PointTable> {
    PointTable::with_cap(n, field, DEFAULT_POINT_CAP)
}

impl PointTable {
    pub fn new(n: usize, field: &FieldSpec) -> Result<Self> {
        enumerate_points(n, field)
    }

    pub fn with_cap(n: usize, field: &FieldSpec, cap: u128) -> Result<Self> {
        check_cap(n, field, cap)?;
        let pts: Vec<ProjPoint> = points(n, field).collect();
        let pairs = monomial_pairs(n);
        let width = pairs.len();
        let mut monomials = Vec::with_capacity(pts.len() * width);
        for p in &pts {
            let c = p.coords();
            monomials.extend(pairs.iter().map(|&(i, j)| field.mul(c[i], c[j])));
        }
        Ok(PointTable {
            n,
            field: field.clone(),
            points: pts,
            monomials,
            width,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjPoint {
        &self.points[i]
    }

    /// Values of every `x_i x_j` at point `i`, in [`monomial_pairs`] order.
    #[inline]
    pub fn monomials(&self, i: usize) -> &[Elem] {
        &self.monomials[i * self.width..(i + 1) * self.width]
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        let q = self.field.q();
        let code = p.code(q);
        self.points
            .binary_search_by(|x| x.code(q).cmp(&code))
            .ok()
    }
}
