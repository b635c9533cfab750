//! Closed-form upper bounds on `|Q1 ∩ Q2|` and on points of algebraic sets.
//!
//! Integer-valued bounds are returned as `i128`. The two historical bounds
//! with a `1/(q-1)` term are generic over [`BoundScalar`] so they can be kept
//! exact (`Rational`, `BigRational`) and floored only where compared.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::proj::pi;

/// Scalar type a rational bound can be evaluated in.
pub trait BoundScalar: Clone + PartialOrd + fmt::Display + Num {
    fn from_int(v: i128) -> Self;
    /// Greatest integer not above the value.
    fn floor_int(&self) -> i128;
}

impl BoundScalar for Ratio<i128> {
    fn from_int(v: i128) -> Self {
        Ratio::from_integer(v)
    }

    fn floor_int(&self) -> i128 {
        self.floor().to_integer()
    }
}

impl BoundScalar for Ratio<BigInt> {
    fn from_int(v: i128) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn floor_int(&self) -> i128 {
        self.floor().to_integer().to_i128().expect("bound fits in i128")
    }
}

impl BoundScalar for f64 {
    fn from_int(v: i128) -> Self {
        v as f64
    }

    fn floor_int(&self) -> i128 {
        self.floor() as i128
    }
}

fn pw(q: u64, e: i64) -> i128 {
    (q as i128).pow(e as u32)
}

fn p(n: i64, q: u64) -> i128 {
    pi(n, q) as i128
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

/// `2(4q^{n-2} + 4 pi_{n-3}) + 7/(q-1)`.
pub fn schmidt_bound<T: BoundScalar>(n: i64, q: u64) -> Result<T> {
    check_q(q)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let int = 2 * (4 * pw(q, n - 2) + 4 * p(n - 3, q));
    Ok(T::from_int(int) + T::from_int(7) / T::from_int(q as i128 - 1))
}

/// `2(4q^{n-2} + pi_{n-3}) + 1/(q-1)`.
pub fn aubry_bound<T: BoundScalar>(n: i64, q: u64) -> Result<T> {
    check_q(q)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let int = 2 * (4 * pw(q, n - 2) + p(n - 3, q));
    Ok(T::from_int(int) + T::from_int(1) / T::from_int(q as i128 - 1))
}

/// Bound for pairs of full order, branch chosen by the parity of `n + 1`.
pub fn ls_bound(n: i64, q: u64) -> Result<i128> {
    check_q(q)?;
    if n < 3 {
        return Err(Error::InvalidArgument(format!("LS bound needs n >= 3, got {n}")));
    }
    let common = 2 * pw(q, n - 2) + p(n - 3, q);
    Ok(if (n + 1) % 2 == 0 {
        common + 2 * pw(q, (n - 1) / 2) - pw(q, (n - 3) / 2)
    } else {
        common + pw(q, n / 2)
    })
}

/// `4q^{n-2} + pi_{n-3}`, the bound for two quadrics with no common hyperplane.
pub fn edoukou_bound(n: i64, q: u64) -> Result<i128> {
    check_q(q)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    Ok(4 * pw(q, n - 2) + p(n - 3, q))
}

/// One of the three listed branches of the bound for a non-degenerate `Q1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhBranch {
    pub index: usize,
    pub formula: &'static str,
    pub condition: &'static str,
    pub applies: bool,
    /// `None` when the branch's exponents are not integers for this `n`.
    pub value: Option<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhBounds {
    pub n: i64,
    pub q: u64,
    pub branches: Vec<EhBranch>,
}

impl EhBounds {
    /// Largest applicable branch; the conservative reading of the two
    /// branches that share a condition.
    pub fn max(&self) -> i128 {
        self.branches
            .iter()
            .filter(|b| b.applies)
            .filter_map(|b| b.value)
            .max()
            .expect("at least one branch applies for n >= 3")
    }

    pub fn branch(&self, index: usize) -> Option<i128> {
        self.branches.iter().find(|b| b.index == index).and_then(|b| b.value)
    }
}

/// All three branches, each carrying its stated condition verbatim.
pub fn eh_bound(n: i64, q: u64) -> Result<EhBounds> {
    check_q(q)?;
    if n < 3 {
        return Err(Error::InvalidArgument(format!("EH bound needs n >= 3, got {n}")));
    }
    let common = 2 * pw(q, n - 2) + p(n - 3, q);
    let even = (n + 1) % 2 == 0;
    let branches = vec![
        EhBranch {
            index: 1,
            formula: "2q^(n-2)+pi(n-3)+2q^((n-1)/2)-q^((n-3)/2)",
            condition: "n+1 >= 4 and even",
            applies: even,
            value: even.then(|| common + 2 * pw(q, (n - 1) / 2) - pw(q, (n - 3) / 2)),
        },
        EhBranch {
            index: 2,
            formula: "2q^(n-2)+pi(n-3)+q^((n-3)/2)",
            condition: "n+1 >= 4 and even",
            applies: even,
            value: even.then(|| common + pw(q, (n - 3) / 2)),
        },
        EhBranch {
            index: 3,
            formula: "2q^(n-2)+pi(n-3)+2q^((n-2)/2)",
            condition: "n+1 >= 5 and odd",
            applies: !even && n >= 4,
            value: (!even).then(|| common + 2 * pw(q, (n - 2) / 2)),
        },
    ];
    Ok(EhBounds { n, q, branches })
}

/// Conjectured bound for a degenerate `Q1` of rank `r >= 4` in `P^n`:
/// `EH(r-1, q) q^{n-r+1} + pi_{n-r}` with the maximal EH branch.
pub fn conj1_bound(n: i64, r: i64, q: u64) -> Result<i128> {
    if r < 4 || r > n + 1 {
        return Err(Error::InvalidArgument(format!("rank must satisfy 4 <= r <= n+1, got r={r}, n={n}")));
    }
    Ok(eh_bound(r - 1, q)?.max() * pw(q, n - r + 1) + p(n - r, q))
}

fn check_ds(d: i64, s: i64) -> Result<()> {
    if d < 1 || s < 0 {
        return Err(Error::InvalidArgument(format!("need d >= 1 and s >= 0, got d={d}, s={s}")));
    }
    Ok(())
}

/// `d q^s + pi_{s-1}`; proven for hypersurfaces, conjectured in general.
pub fn tss_bound(d: i64, s: i64, q: u64) -> Result<i128> {
    check_q(q)?;
    check_ds(d, s)?;
    Ok(d as i128 * pw(q, s) + p(s - 1, q))
}

/// `d pi_s`.
pub fn lachaud_bound(d: i64, s: i64, q: u64) -> Result<i128> {
    check_q(q)?;
    check_ds(d, s)?;
    Ok(d as i128 * p(s, q))
}

/// `d (pi_s - pi_{2s-n}) + pi_{2s-n}`.
pub fn lachaud_conj_bound(d: i64, s: i64, n: i64, q: u64) -> Result<i128> {
    check_q(q)?;
    check_ds(d, s)?;
    if s > n {
        return Err(Error::InvalidArgument(format!("dimension {s} exceeds ambient {n}")));
    }
    let low = p(2 * s - n, q);
    Ok(d as i128 * (p(s, q) - low) + low)
}

/// One row of a [`BoundsTable`].
#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry<T> {
    pub name: String,
    pub value: T,
    pub floor: i128,
    pub hypothesis: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundsParams {
    pub n: i64,
    pub q: u64,
    pub d: Option<i64>,
    pub s: Option<i64>,
    pub r: Option<i64>,
}

/// Every bound that makes sense for the given parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsTable<T> {
    pub params: BoundsParams,
    pub entries: Vec<BoundEntry<T>>,
}

impl<T: BoundScalar> BoundsTable<T> {
    pub fn build(params: BoundsParams) -> Result<Self> {
        let BoundsParams { n, q, d, s, r } = params;
        let mut entries = Vec::new();
        let mut push = |name: &str, value: T, hyp: &str| {
            entries.push(BoundEntry {
                name: name.to_string(),
                floor: value.floor_int(),
                value,
                hypothesis: hyp.to_string(),
            });
        };
        let int = |v: i128| T::from_int(v);
        push("schmidt", schmidt_bound(n, q)?, "two quadrics, no common component");
        push("aubry", aubry_bound(n, q)?, "two quadrics, no common component");
        if n >= 3 {
            push("ls", int(ls_bound(n, q)?), "pair of full order n+1");
        }
        push("edoukou", int(edoukou_bound(n, q)?), "no common hyperplane (proven)");
        if n >= 3 {
            let eh = eh_bound(n, q)?;
            for b in eh.branches.iter().filter(|b| b.applies) {
                let hyp = format!("Q1 non-degenerate; stated condition: {}", b.condition);
                push(&format!("eh_{}", b.index), int(b.value.unwrap()), &hyp);
            }
            push("eh_max", int(eh.max()), "Q1 non-degenerate; largest applicable branch");
        }
        if let Some(r) = r {
            push(
                "conj1",
                int(conj1_bound(n, r, q)?),
                "conjecture: Q1 degenerate of rank r >= 4",
            );
        }
        if let (Some(d), Some(s)) = (d, s) {
            push("tss", int(tss_bound(d, s, q)?), "degree d, dimension s (proven for s = n-1)");
            push("lachaud", int(lachaud_bound(d, s, q)?), "degree d, dimension s");
            push(
                "lachaud_conj",
                int(lachaud_conj_bound(d, s, n, q)?),
                "conjecture: degree d, dimension s",
            );
        }
        Ok(BoundsTable { params, entries })
    }

    pub fn get(&self, name: &str) -> Option<&BoundEntry<T>> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
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
        serde_json::json!({ "params": self.params, "entries": rows })
    }

    /// Aligned human-readable table.
    pub fn to_text(&self) -> String {
        let values: Vec<String> = self.entries.iter().map(|e| e.value.to_string()).collect();
        let wn = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(4).max(4);
        let wv = values.iter().map(|v| v.len()).max().unwrap_or(5).max(5);
        let wf = self
            .entries
            .iter()
            .map(|e| e.floor.to_string().len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut out = format!("{:<wn$}  {:>wv$}  {:>wf$}  hypothesis\n", "name", "value", "floor");
        for (e, v) in self.entries.iter().zip(&values) {
            out.push_str(&format!("{:<wn$}  {:>wv$}  {:>wf$}  {}\n", e.name, v, e.floor, e.hypothesis));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type R = Ratio<i128>;

    fn r(a: i128, b: i128) -> R {
        Ratio::new(a, b)
    }

    #[test]
    fn historical_bounds() {
        assert_eq!(schmidt_bound::<R>(3, 2).unwrap(), r(31, 1));
        assert_eq!(schmidt_bound::<R>(3, 3).unwrap(), r(71, 2));
        assert_eq!(aubry_bound::<R>(3, 2).unwrap(), r(19, 1));
        assert_eq!(aubry_bound::<R>(4, 2).unwrap(), r(39, 1));
        assert_eq!(aubry_bound::<R>(3, 3).unwrap().floor_int(), 26);
        assert_eq!(
            schmidt_bound::<Ratio<BigInt>>(3, 3).unwrap(),
            Ratio::new(BigInt::from(71), BigInt::from(2))
        );
        assert_eq!(schmidt_bound::<f64>(3, 3).unwrap(), 35.5);
    }

    #[test]
    fn ls_examples() {
        assert_eq!(ls_bound(3, 3).unwrap(), 12);
        assert_eq!(ls_bound(4, 2).unwrap(), 15);
        assert!(ls_bound(2, 3).is_err());
    }

    #[test]
    fn edoukou_examples() {
        assert_eq!(edoukou_bound(3, 3).unwrap(), 13);
        assert_eq!(edoukou_bound(4, 2).unwrap(), 19);
        assert_eq!(edoukou_bound(2, 5).unwrap(), 4);
    }

    #[test]
    fn eh_examples() {
        let e = eh_bound(3, 3).unwrap();
        assert_eq!(e.branch(1), Some(12));
        assert_eq!(e.branch(2), Some(8));
        assert_eq!(e.max(), 12);
        assert_eq!(eh_bound(4, 2).unwrap().branch(3), Some(15));
        assert!(eh_bound(2, 2).is_err());
    }

    #[test]
    fn conj1_examples() {
        assert_eq!(conj1_bound(4, 4, 2).unwrap(), 17);
        for q in [2, 3, 4, 5] {
            for n in 3..8 {
                assert_eq!(conj1_bound(n, n + 1, q).unwrap(), eh_bound(n, q).unwrap().max());
            }
            for n in 4..9 {
                assert!(conj1_bound(n + 1, 4, q).unwrap() > conj1_bound(n, 4, q).unwrap());
            }
        }
        assert!(conj1_bound(4, 3, 2).is_err());
    }

    #[test]
    fn variety_bounds() {
        assert_eq!(tss_bound(4, 2, 2).unwrap(), 19);
        assert_eq!(lachaud_bound(4, 2, 2).unwrap(), 28);
        assert_eq!(lachaud_conj_bound(4, 2, 4, 2).unwrap(), 25);
    }

    #[test]
    fn table_contents() {
        let t = BoundsTable::<R>::build(BoundsParams {
            n: 4,
            q: 2,
            d: Some(4),
            s: Some(2),
            r: None,
        })
        .unwrap();
        assert_eq!(t.get("tss").unwrap().floor, 19);
        assert_eq!(t.get("lachaud").unwrap().floor, 28);
        assert_eq!(t.get("lachaud_conj").unwrap().floor, 25);
        assert_eq!(t.get("edoukou").unwrap().floor, 19);
        assert!(t.get("eh_3").is_some() && t.get("eh_1").is_none());
        assert!(t.to_text().lines().count() > 5);
    }

    #[test]
    fn variety_bound_ordering_for_small_degree() {
        for q in [2u64, 3, 4, 5, 7] {
            for n in 1..8i64 {
                for s in 0..n {
                    for d in 1..=q as i64 {
                        let t = tss_bound(d, s, q).unwrap();
                        let lc = lachaud_conj_bound(d, s, n, q).unwrap();
                        let l = lachaud_bound(d, s, q).unwrap();
                        assert!(t <= lc && lc <= l, "d={d} s={s} n={n} q={q}");
                    }
                }
            }
        }
    }
}
