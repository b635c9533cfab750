//! Finite fields `F_q`, `q = p^m`, with table-driven arithmetic.
//!
//! An element is stored as its integer code `a_0 + a_1 p + ... + a_{m-1} p^{m-1}`
//! where `a_0 + a_1 t + ... + a_{m-1} t^{m-1}` is its reduced representative
//! modulo the field's defining polynomial. Codes below `p` are the prime
//! subfield. All operations go through precomputed `q x q` tables, which is
//! why the cardinality is capped.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the field cardinality.
pub const DEFAULT_CARDINALITY_CAP: u32 = 64;
/// Hard ceiling for any cap; tables are `q^2` entries.
pub const MAX_CARDINALITY: u32 = 1024;

/// A field element in canonical (fully reduced) form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0 as u32
    }

    /// Raw code without a range check; callers keep it below `q`.
    pub(crate) const fn from_code(code: u16) -> Elem {
        Elem(code)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serialized element: bare integer for prime fields, coefficient list otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Prime(u32),
    Coeffs(Vec<u32>),
}

struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// The field `F_{p^m}` together with its defining polynomial.
///
/// Cloning is cheap: the arithmetic tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, little-endian, length `m + 1`.
    modulus: Vec<u32>,
    tables: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tables, &other.tables)
            || (self.p == other.p && self.m == other.m && self.modulus == other.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// Builds `F_{p^m}` under the default cardinality cap.
pub fn make_field(p: u32, m: u32) -> Result<FieldSpec> {
    FieldSpec::with_cap(p, m, DEFAULT_CARDINALITY_CAP)
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_power(p: u32, m: u32) -> Option<u128> {
    (p as u128).checked_pow(m)
}

impl FieldSpec {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        make_field(p, m)
    }

    /// Builds `F_{p^m}` with an explicit cardinality cap (at most [`MAX_CARDINALITY`]).
    pub fn with_cap(p: u32, m: u32, cap: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::BadDegree(m));
        }
        let cap = cap.min(MAX_CARDINALITY);
        let q = checked_power(p, m).unwrap_or(u128::MAX);
        if q > cap as u128 {
            return Err(Error::CapExceeded {
                what: "field cardinality",
                value: q,
                cap: cap as u128,
            });
        }
        let modulus = least_irreducible(p, m);
        Ok(Self::from_modulus(p, modulus))
    }

    fn from_modulus(p: u32, modulus: Vec<u32>) -> Self {
        let m = (modulus.len() - 1) as u32;
        let q = p.pow(m);
        let qs = q as usize;
        let digits = |code: u32| -> Vec<u32> {
            let mut c = code;
            (0..m)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let all: Vec<Vec<u32>> = (0..q).map(digits).collect();
        let mut add = vec![Elem::ZERO; qs * qs];
        let mut neg = vec![Elem::ZERO; qs];
        for a in 0..qs {
            for b in 0..qs {
                let s: Vec<u32> = all[a]
                    .iter()
                    .zip(&all[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qs + b] = Elem(encode(&s) as u16);
            }
            let n: Vec<u32> = all[a].iter().map(|x| (p - x) % p).collect();
            neg[a] = Elem(encode(&n) as u16);
        }

        // a * t^i for every a, then a * b = sum_i b_i (a t^i).
        let times_t = |ds: &[u32]| -> Vec<u32> {
            let top = ds[m as usize - 1];
            let mut out = vec![0u32; m as usize];
            for i in (1..m as usize).rev() {
                out[i] = ds[i - 1];
            }
            // subtract top * (modulus - t^m)
            for (i, o) in out.iter_mut().enumerate() {
                *o = (*o + p * p - (top * modulus[i]) % p) % p;
            }
            out
        };
        let mut mul = vec![Elem::ZERO; qs * qs];
        for a in 0..qs {
            let mut shifts: Vec<u32> = Vec::with_capacity(m as usize);
            let mut cur = all[a].clone();
            for _ in 0..m {
                shifts.push(encode(&cur));
                cur = times_t(&cur);
            }
            for b in 0..qs {
                let mut acc = 0usize;
                for (i, &bi) in all[b].iter().enumerate() {
                    for _ in 0..bi {
                        acc = add[acc * qs + shifts[i] as usize].0 as usize;
                    }
                }
                mul[a * qs + b] = Elem(acc as u16);
            }
        }
        let mut inv = vec![Elem::ZERO; qs];
        for a in 1..qs {
            for b in 1..qs {
                if mul[a * qs + b] == Elem::ONE {
                    inv[a] = Elem(b as u16);
                    break;
                }
            }
        }
        FieldSpec {
            p,
            m,
            q,
            modulus,
            tables: Arc::new(Tables { add, mul, neg, inv }),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, little-endian coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    pub fn characteristic_two(&self) -> bool {
        self.p == 2
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.code() < self.q
    }

    pub fn element(&self, code: u32) -> Result<Elem> {
        if code < self.q {
            Ok(Elem(code as u16))
        } else {
            Err(Error::NotInField(code))
        }
    }

    /// Every element, in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(|c| Elem(c as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(|c| Elem(c as u16))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u16)
    }

    /// Element with the given coefficient vector in the polynomial basis.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Elem> {
        if coeffs.len() > self.m as usize {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector of length {} in a degree-{} field",
                coeffs.len(),
                self.m
            )));
        }
        let code = coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c.rem_euclid(self.p as i64) as u32);
        Ok(Elem(code as u16))
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut c = a.code();
        (0..self.m)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn repr(&self, a: Elem) -> ElemRepr {
        if self.is_prime_field() {
            ElemRepr::Prime(a.code())
        } else {
            ElemRepr::Coeffs(self.coeffs(a))
        }
    }

    pub fn from_repr(&self, r: &ElemRepr) -> Result<Elem> {
        match r {
            ElemRepr::Prime(v) => Ok(self.from_int(*v as i64)),
            ElemRepr::Coeffs(cs) => {
                let cs: Vec<i64> = cs.iter().map(|&c| c as i64).collect();
                self.from_coeffs(&cs)
            }
        }
    }

    /// Text form: integer in the prime subfield, `[a0,...]` otherwise.
    pub fn format(&self, a: Elem) -> String {
        if a.code() < self.p {
            a.code().to_string()
        } else {
            let cs: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", cs.join(","))
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.tables.add[a.0 as usize * self.q as usize + b.0 as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.tables.mul[a.0 as usize * self.q as usize + b.0 as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.tables.neg[a.0 as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.tables.inv[a.0 as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Whether `a` is a square in this field.
    pub fn is_square(&self, a: Elem) -> bool {
        if self.p == 2 || a.is_zero() {
            return true;
        }
        self.pow(a, ((self.q - 1) / 2) as u64) == Elem::ONE
    }

    /// Some `b` with `b^2 = a`, if one exists. In characteristic 2 this is the
    /// unique root `a^(q/2)`.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if self.p == 2 {
            return Some(self.pow(a, (self.q / 2) as u64));
        }
        self.elements().find(|&b| self.mul(b, b) == a)
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// Absolute trace down to the prime field.
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut cur = a;
        for _ in 0..self.m {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur);
        }
        acc
    }

    /// Sum of `coeffs[i] * vals[i]`.
    #[inline]
    pub fn dot(&self, coeffs: &[Elem], vals: &[Elem]) -> Elem {
        coeffs
            .iter()
            .zip(vals)
            .fold(Elem::ZERO, |acc, (&c, &v)| self.add(acc, self.mul(c, v)))
    }

    /// Wraps a raw element together with its field.
    pub fn wrap(&self, a: Elem) -> Result<Element> {
        if self.contains(a) {
            Ok(Element {
                field: self.clone(),
                value: a,
            })
        } else {
            Err(Error::NotInField(a.code()))
        }
    }
}

/// An element bundled with its field; mixing fields is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    field: FieldSpec,
    value: Elem,
}

impl Element {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn same_field(&self, other: &Element) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: Elem) -> Element {
        Element {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Element {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Element> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Element {
        self.with(self.field.pow(self.value, e))
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square(self.value)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

/// The inclusion `F_q -> F_{q^k}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: FieldSpec,
    target: FieldSpec,
    image: Vec<Elem>,
}

impl Embedding {
    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a.code() as usize]
    }
}

/// `F_{q^k}` over `base = F_q`, with the embedding of `base`, under the default cap.
pub fn extend_field(base: &FieldSpec, k: u32) -> Result<(FieldSpec, Embedding)> {
    extend_field_with_cap(base, k, DEFAULT_CARDINALITY_CAP)
}

pub fn extend_field_with_cap(
    base: &FieldSpec,
    k: u32,
    cap: u32,
) -> Result<(FieldSpec, Embedding)> {
    if k < 1 {
        return Err(Error::BadDegree(k));
    }
    let total = base
        .m
        .checked_mul(k)
        .ok_or_else(|| Error::InvalidArgument("extension degree overflow".into()))?;
    let target = if k == 1 {
        base.clone()
    } else {
        FieldSpec::with_cap(base.p, total, cap)?
    };
    // t -> a root of the base modulus in the target.
    let root = target
        .elements()
        .find(|&x| {
            let v = base
                .modulus
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| target.add(target.mul(acc, x), Elem(c as u16)));
            v.is_zero()
        })
        .expect("every extension of the right degree contains the base field");
    let image = base
        .elements()
        .map(|a| {
            base.coeffs(a)
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| target.add(target.mul(acc, root), Elem(c as u16)))
        })
        .collect();
    Ok((
        target.clone(),
        Embedding {
            base: base.clone(),
            target,
            image,
        },
    ))
}

// ---- polynomials over F_p (little-endian coefficient vectors) ----

fn poly_trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

/// Remainder of `f` modulo the monic polynomial `g`.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * gi) % p) % p;
            }
        }
        r.pop();
    }
    poly_trim(if r.is_empty() { vec![0] } else { r })
}

fn monic_with_tail(tail: u64, degree: u32, p: u32) -> Vec<u32> {
    let mut t = tail;
    let mut f: Vec<u32> = (0..degree)
        .map(|_| {
            let d = (t % p as u64) as u32;
            t /= p as u64;
            d
        })
        .collect();
    f.push(1);
    f
}

/// Irreducibility over `F_p` by trial division by every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for tail in 0..count {
            let g = monic_with_tail(tail, d, p);
            let r = poly_rem(f, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `m` whose lower coefficients, read as a
/// base-`p` integer with the constant term least significant, are smallest.
pub fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    (0..count)
        .map(|tail| monic_with_tail(tail, m, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
