//! Elements of the cyclotomic field Q(ζ_m) in the power basis modulo Φ_m.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use parking_lot::RwLock;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::Rational;
use crate::error::ScalarError;

/// Per-order data: Φ_m and the reductions of x^k for every k that products produce.
struct FieldData {
    phi: usize,
    /// Coefficients of Φ_m, low degree first, monic of degree `phi`.
    cyclo: Vec<i64>,
    /// `reduce[k]` is x^k mod Φ_m as sparse integer coefficients.
    reduce: Vec<Vec<(u32, i64)>>,
}

static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();

thread_local! {
    static LAST: RefCell<Option<(u32, Arc<FieldData>)>> = const { RefCell::new(None) };
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    q
}

fn cyclotomic_poly(m: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let q = cyclotomic_poly(d, memo);
            p = poly_div_exact(&p, &q);
        }
    }
    memo.insert(m, p.clone());
    p
}

fn build(m: u32) -> FieldData {
    let cyclo = cyclotomic_poly(m, &mut HashMap::new());
    let phi = cyclo.len() - 1;
    let top = (m as usize).max(2 * phi);
    let mut reduce: Vec<Vec<(u32, i64)>> = Vec::with_capacity(top);
    let mut dense = vec![0i64; phi];
    dense[0] = 1;
    for _ in 0..top {
        reduce.push(
            dense
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (i as u32, *c))
                .collect(),
        );
        // multiply by x and fold x^phi back with Φ_m
        let carry = dense[phi - 1];
        for i in (1..phi).rev() {
            dense[i] = dense[i - 1];
        }
        dense[0] = 0;
        if carry != 0 {
            for i in 0..phi {
                dense[i] -= carry * cyclo[i];
            }
        }
    }
    FieldData { phi, cyclo, reduce }
}

fn field(m: u32) -> Arc<FieldData> {
    LAST.with(|last| {
        if let Some((k, d)) = &*last.borrow() {
            if *k == m {
                return d.clone();
            }
        }
        let lock = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
        let found = lock.read().get(&m).cloned();
        let data = match found {
            Some(d) => d,
            None => lock.write().entry(m).or_insert_with(|| Arc::new(build(m))).clone(),
        };
        *last.borrow_mut() = Some((m, data.clone()));
        data
    })
}

/// Degree of Q(ζ_m) over Q.
pub fn euler_phi(m: u32) -> usize {
    field(m).phi
}

type Coeffs = SmallVec<[(u32, Rational); 2]>;

/// An element of Q(ζ_m); zero is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    m: u32,
    coeffs: Coeffs,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        assert!(m >= 1, "cyclotomic order must be positive");
        Cyclotomic { m, coeffs: SmallVec::new() }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        Self::from_rational(m, Rational::from_int(n))
    }

    pub fn from_rational(m: u32, r: Rational) -> Self {
        let mut c = Self::zero(m);
        if !r.is_zero() {
            c.coeffs.push((0, r));
        }
        c
    }

    /// ζ_m^k for any integer k.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let data = field(m);
        let coeffs = data.reduce[e]
            .iter()
            .map(|&(i, c)| (i, Rational::from_int(c)))
            .collect();
        Cyclotomic { m, coeffs }
    }

    /// Builds an element from power-basis coefficients, reducing mod Φ_m.
    pub fn from_coeffs(m: u32, terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let data = field(m);
        let mut dense = vec![Rational::zero(); data.phi];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let k = k as usize % m as usize;
            for &(i, r) in &data.reduce[k] {
                dense[i as usize] += &(&c * &Rational::from_int(r));
            }
        }
        Self::from_dense(m, dense)
    }

    fn from_dense(m: u32, dense: Vec<Rational>) -> Self {
        let coeffs = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect();
        Cyclotomic { m, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    /// Nonzero power-basis coefficients in increasing exponent order.
    pub fn coeffs(&self) -> &[(u32, Rational)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].0 == 0 && self.coeffs[0].1.is_one()
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.as_slice() {
            [] => Some(Rational::zero()),
            [(0, r)] => Some(r.clone()),
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.m != other.m {
            return Err(ScalarError::MixedOrder { left: self.m, right: other.m });
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Coeffs::new();
        let (a, b) = (&self.coeffs, &other.coeffs);
        let (mut i, mut j) = (0, 0);
        let sign = |r: &Rational| if negate { -r } else { r.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign(&b[j].1)));
                j += 1;
            } else {
                let s = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        Cyclotomic { m: self.m, coeffs: out }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.m));
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        if let ([(0, a)], [(0, b)]) = (self.coeffs.as_slice(), other.coeffs.as_slice()) {
            return Ok(Self::from_rational(self.m, a * b));
        }
        let data = field(self.m);
        let mut dense = vec![Rational::zero(); 2 * data.phi];
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                dense[(i + j) as usize] += &(a * b);
            }
        }
        let mut out = vec![Rational::zero(); data.phi];
        for (k, c) in dense.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < data.phi {
                out[k] += &c;
            } else {
                for &(i, r) in &data.reduce[k] {
                    out[i as usize] += &(&c * &Rational::from_int(r));
                }
            }
        }
        Ok(Self::from_dense(self.m, out))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.m);
        }
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over Q[x].
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let [(k, c)] = self.coeffs.as_slice() {
            let root = Self::root_of_unity(self.m, -(*k as i64));
            return Ok(root.scale(&c.inv()?));
        }
        let data = field(self.m);
        let to_big = |v: &[Rational]| v.iter().map(Rational::to_big).collect::<Vec<_>>();
        let mut a = vec![Rational::zero(); data.phi];
        for (k, c) in &self.coeffs {
            a[*k as usize] = c.clone();
        }
        let modulus: Vec<BigRational> =
            data.cyclo.iter().map(|c| BigRational::from_integer((*c).into())).collect();
        let inv = poly_inverse(&to_big(&a), &modulus).ok_or(ScalarError::DivisionByZero)?;
        let terms = inv
            .into_iter()
            .enumerate()
            .map(|(i, c)| (i as u32, Rational::from_big(c)));
        Ok(Self::from_coeffs(self.m, terms))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Re-expresses the element in Q(ζ_n) through ζ_m ↦ ζ_n^{n/m}.
    pub fn embed(&self, n: u32) -> Result<Self, ScalarError> {
        if n == 0 || !n.is_multiple_of(self.m) {
            return Err(ScalarError::NotAMultiple { from: self.m, to: n });
        }
        let s = n / self.m;
        Ok(Self::from_coeffs(n, self.coeffs.iter().map(|(k, c)| (k * s, c.clone()))))
    }

    /// Numerical value at ζ_m = exp(2πi/m), for test oracles and display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in &self.coeffs {
            let t = 2.0 * std::f64::consts::PI * (*k as f64) / self.m as f64;
            re += c.to_f64() * t.cos();
            im += c.to_f64() * t.sin();
        }
        (re, im)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (k, c) in &self.coeffs {
            map.insert(k.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({ "m": self.m, "coeffs": map })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ScalarError> {
        let bad = || ScalarError::Parse(v.to_string());
        let m = v.get("m").and_then(|x| x.as_u64()).filter(|m| *m >= 1).ok_or_else(bad)? as u32;
        let coeffs = v.get("coeffs").and_then(|x| x.as_object()).ok_or_else(bad)?;
        let mut terms = Vec::new();
        for (k, c) in coeffs {
            let k: u32 = k.parse().map_err(|_| bad())?;
            let c: Rational = c.as_str().ok_or_else(bad)?.parse()?;
            terms.push((k, c));
        }
        Ok(Self::from_coeffs(m, terms))
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    trim(&mut r);
    (q, r)
}

fn poly_mul_sub(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 });
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `modulus`, or `None` if `a` is zero mod it.
fn poly_inverse(a: &[BigRational], modulus: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut r0, mut r1) = (modulus.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_mul_sub(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("cyclotomic addition across different orders")
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_sub(rhs).expect("cyclotomic subtraction across different orders")
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("cyclotomic multiplication across different orders")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "z{}", self.m)?,
                (1, false) => write!(f, "{abs}*z{}", self.m)?,
                (_, true) => write!(f, "z{}^{k}", self.m)?,
                (_, false) => write!(f, "{abs}*z{}^{k}", self.m)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Cyclotomic::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let mut memo = HashMap::new();
        assert_eq!(cyclotomic_poly(1, &mut memo), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4, &mut memo), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6, &mut memo), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(8, &mut memo), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12, &mut memo), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn small_identities() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(4, -1));
        assert_eq!(z(2, 1), Cyclotomic::from_int(2, -1));
        assert_eq!(z(4, 2), Cyclotomic::from_int(4, -1));
        assert_eq!(z(3, 1).inv().unwrap(), z(3, 2));
        assert!(Cyclotomic::zero(5).inv().is_err());
    }

    #[test]
    fn mixed_orders_rejected() {
        let e = z(4, 1).try_add(&z(8, 1)).unwrap_err();
        assert_eq!(e, ScalarError::MixedOrder { left: 4, right: 8 });
        assert_eq!(
            z(4, 1).embed(6).unwrap_err(),
            ScalarError::NotAMultiple { from: 4, to: 6 }
        );
    }

    #[test]
    fn general_inverse() {
        let one = Cyclotomic::one(7);
        let a = &(&one + &z(7, 1)) + &z(7, 3).scale(&Rational::new(2, 3).unwrap());
        assert_eq!(&a * &a.inv().unwrap(), one);
    }

    #[test]
    fn display_and_json() {
        let a = &Cyclotomic::from_int(8, 2) - &z(8, 3).scale(&Rational::new(1, 2).unwrap());
        assert_eq!(a.to_string(), "2 - 1/2*z8^3");
        let back = Cyclotomic::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json().to_string(), a.to_json().to_string());
    }
}
