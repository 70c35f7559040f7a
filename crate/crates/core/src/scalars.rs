//! Exact scalars: elements of the rationals or of a cyclotomic field Q(ζ_N).
//!
//! A non-rational scalar is stored in the power basis `1, ζ, …, ζ^{d-1}`
//! with `d = φ(N)`, reduced modulo the N-th cyclotomic polynomial. Any value
//! that happens to be rational is demoted to order 1, so two scalars are
//! equal exactly when their representations are equal.
//!
//! Mixing two different non-rational orders is an error; use [`Scalar::embed`]
//! to move a value into a larger field first.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot combine scalars of cyclotomic orders {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("order {0} does not divide {1}")]
    NotDivisible(u32, u32),
    #[error("invalid cyclotomic order {0}")]
    InvalidOrder(u32),
    #[error("malformed rational {0:?}")]
    Parse(String),
}

const MAX_ORDER: u32 = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(Rational),
    Cyclotomic { order: u32, coeffs: Box<[Rational]> },
}

/// An exact element of Q or Q(ζ_N).
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar(Repr);

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

fn overflow() -> ! {
    panic!("rational arithmetic overflowed i128")
}

fn qadd(a: &Rational, b: &Rational) -> Rational {
    a.checked_add(b).unwrap_or_else(|| overflow())
}
fn qsub(a: &Rational, b: &Rational) -> Rational {
    a.checked_sub(b).unwrap_or_else(|| overflow())
}
fn qmul(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    if *a.denom() == 1 && *b.denom() == 1 {
        return Rational::from_integer(a.numer().checked_mul(b.numer()).unwrap_or_else(|| overflow()));
    }
    a.checked_mul(b).unwrap_or_else(|| overflow())
}
fn qdiv(a: &Rational, b: &Rational) -> Rational {
    a.checked_div(b).unwrap_or_else(|| overflow())
}

/// Monic integer coefficients of Φ_N, lowest degree first.
pub fn cyclotomic_polynomial(order: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&order) {
        return p.clone();
    }
    // x^N - 1 divided by Φ_d for every proper divisor d.
    let n = order as usize;
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..order {
        if order % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &div);
        }
    }
    let poly: Arc<[i64]> = num.into();
    cache.write().expect("cyclotomic cache poisoned").insert(order, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient, the degree of Q(ζ_N) over Q.
pub fn field_degree(order: u32) -> usize {
    cyclotomic_polynomial(order).len() - 1
}

/// Reduce a coefficient vector modulo Φ_N in place and trim it to degree < d.
fn reduce(order: u32, mut v: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(order);
    let d = phi.len() - 1;
    if v.len() > d {
        for k in (d..v.len()).rev() {
            let c = std::mem::replace(&mut v[k], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (i, &p) in phi[..d].iter().enumerate() {
                if p != 0 {
                    let t = qmul(&c, &Rational::from_integer(p as i128));
                    v[k - d + i] = qsub(&v[k - d + i], &t);
                }
            }
        }
        v.truncate(d);
    }
    v.resize(d, Rational::zero());
    v
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rational(Rational::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rational(Rational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Rational(Rational::from_integer(n as i128)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar(Repr::Rational(q))
    }

    /// `p/q`; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar(Repr::Rational(Rational::new(p as i128, q as i128)))
    }

    /// `ζ_N^k` for the primitive root `ζ_N = exp(2πi/N)`.
    pub fn root_of_unity(order: u32, k: i64) -> Result<Self, ScalarError> {
        if order == 0 || order > MAX_ORDER {
            return Err(ScalarError::InvalidOrder(order));
        }
        let e = k.rem_euclid(order as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Ok(Self::canonical(order, reduce(order, v)))
    }

    /// Build from power-basis coefficients; longer inputs are reduced modulo Φ_N.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self, ScalarError> {
        if order == 0 || order > MAX_ORDER {
            return Err(ScalarError::InvalidOrder(order));
        }
        Ok(Self::canonical(order, reduce(order, coeffs)))
    }

    fn canonical(order: u32, coeffs: Vec<Rational>) -> Self {
        if order <= 2 || coeffs.iter().skip(1).all(Zero::is_zero) {
            let c = coeffs.into_iter().next().unwrap_or_else(Rational::zero);
            return Scalar(Repr::Rational(c));
        }
        Scalar(Repr::Cyclotomic {
            order,
            coeffs: coeffs.into_boxed_slice(),
        })
    }

    /// Cyclotomic order of the representation; 1 for rationals.
    pub fn order(&self) -> u32 {
        match &self.0 {
            Repr::Rational(_) => 1,
            Repr::Cyclotomic { order, .. } => *order,
        }
    }

    /// Power-basis coefficients; a single entry for rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        match &self.0 {
            Repr::Rational(q) => vec![*q],
            Repr::Cyclotomic { coeffs, .. } => coeffs.to_vec(),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match &self.0 {
            Repr::Rational(q) => Some(*q),
            Repr::Cyclotomic { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rational(q) if q.is_one())
    }

    fn expand(&self, order: u32) -> Vec<Rational> {
        match &self.0 {
            Repr::Rational(q) => {
                let mut v = vec![Rational::zero(); field_degree(order)];
                v[0] = *q;
                v
            }
            Repr::Cyclotomic { coeffs, .. } => coeffs.to_vec(),
        }
    }

    fn common_order(&self, other: &Self) -> Result<u32, ScalarError> {
        match (self.order(), other.order()) {
            (1, m) | (m, 1) => Ok(m),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(ScalarError::OrderMismatch(a, b)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        if let (Repr::Rational(a), Repr::Rational(b)) = (&self.0, &other.0) {
            return Ok(Scalar(Repr::Rational(qadd(a, b))));
        }
        let n = self.common_order(other)?;
        let (a, b) = (self.expand(n), other.expand(n));
        Ok(Self::canonical(n, a.iter().zip(&b).map(|(x, y)| qadd(x, y)).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Ok(Scalar(Repr::Rational(qmul(a, b)))),
            (Repr::Rational(a), Repr::Cyclotomic { order, coeffs }) | (Repr::Cyclotomic { order, coeffs }, Repr::Rational(a)) => {
                if a.is_zero() {
                    return Ok(Self::zero());
                }
                Ok(Self::canonical(*order, coeffs.iter().map(|c| qmul(c, a)).collect()))
            }
            (Repr::Cyclotomic { order: n, coeffs: a }, Repr::Cyclotomic { order: m, coeffs: b }) => {
                if n != m {
                    return Err(ScalarError::OrderMismatch(*n, *m));
                }
                let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] = qadd(&prod[i + j], &qmul(x, y));
                        }
                    }
                }
                Ok(Self::canonical(*n, reduce(*n, prod)))
            }
        }
    }

    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        match &self.0 {
            Repr::Rational(q) => {
                if q.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar(Repr::Rational(q.recip())))
                }
            }
            Repr::Cyclotomic { order, coeffs } => Ok(Self::canonical(*order, invert_in_field(*order, coeffs))),
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_mul(&other.try_inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Re-express this value in Q(ζ_M); requires the current order to divide M.
    pub fn embed(&self, target: u32) -> Result<Self, ScalarError> {
        if target == 0 || target > MAX_ORDER {
            return Err(ScalarError::InvalidOrder(target));
        }
        match &self.0 {
            Repr::Rational(_) => Ok(self.clone()),
            Repr::Cyclotomic { order, coeffs } => {
                if target % order != 0 {
                    return Err(ScalarError::NotDivisible(*order, target));
                }
                let step = (target / order) as usize;
                let mut v = vec![Rational::zero(); step * (coeffs.len() - 1) + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    v[k * step] = *c;
                }
                Ok(Self::canonical(target, reduce(target, v)))
            }
        }
    }

    /// Floating-point image under ζ_N ↦ exp(2πi/N), as `(re, im)`.
    pub fn approx_complex(&self) -> (f64, f64) {
        let n = self.order() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs().iter().enumerate() {
            let x = *c.numer() as f64 / *c.denom() as f64;
            let t = std::f64::consts::TAU * k as f64 / n;
            re += x * t.cos();
            im += x * t.sin();
        }
        (re, im)
    }

    /// Serialized coefficient strings `"p/q"`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn from_coeff_strings(order: u32, coeffs: &[String]) -> Result<Self, ScalarError> {
        let parsed = coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        if order == 1 {
            if parsed.len() != 1 {
                return Err(ScalarError::Parse(format!("{coeffs:?}")));
            }
            return Ok(Scalar::from_rational(parsed[0]));
        }
        Scalar::from_coeffs(order, parsed)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i128>().map_err(|_| bad())?, q.trim().parse::<i128>().map_err(|_| bad())?),
        None => (s.trim().parse::<i128>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Solve `a · x = 1` in Q(ζ_N) by elimination on the multiplication matrix.
fn invert_in_field(order: u32, a: &[Rational]) -> Vec<Rational> {
    let d = a.len();
    // Column j of the matrix is a·ζ^j.
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = vec![Rational::zero(); j];
        v.extend_from_slice(a);
        cols.push(reduce(order, v));
    }
    let mut m: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = (0..d).map(|j| cols[j][i]).collect();
            row.push(if i == 0 { Rational::one() } else { Rational::zero() });
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !m[r][c].is_zero()).expect("nonzero field element has an inverse");
        m.swap(c, p);
        let piv = m[c][c];
        for x in m[c].iter_mut() {
            *x = qdiv(x, &piv);
        }
        for r in 0..d {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in c..=d {
                    let t = qmul(&f, &m[c][k]);
                    m[r][k] = qsub(&m[r][k], &t);
                }
            }
        }
    }
    m.into_iter().map(|row| row[d]).collect()
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

fn fmt_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => f.write_str(&fmt_rational(q)),
            Repr::Cyclotomic { order, coeffs } => {
                let mut first = true;
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mag = c.abs();
                    let sign = if c.is_negative() { "-" } else { "+" };
                    if first {
                        if c.is_negative() {
                            f.write_str("-")?;
                        }
                    } else {
                        write!(f, " {sign} ")?;
                    }
                    first = false;
                    let root = match k {
                        0 => String::new(),
                        1 => format!("z{order}"),
                        _ => format!("z{order}^{k}"),
                    };
                    if k == 0 {
                        f.write_str(&fmt_rational(&mag))?;
                    } else if mag.is_one() {
                        f.write_str(&root)?;
                    } else {
                        write!(f, "{}*{}", fmt_rational(&mag), root)?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.order(), self.coeff_strings()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (order, coeffs): (u32, Vec<String>) = Deserialize::deserialize(d)?;
        Scalar::from_coeff_strings(order, &coeffs).map_err(D::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Repr::Rational(a), Repr::Rational(b)) = (&mut self.0, &rhs.0) {
            *a = qadd(a, b);
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(-q)),
            Repr::Cyclotomic { order, coeffs } => Scalar(Repr::Cyclotomic {
                order: *order,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Smallest common cyclotomic order of a list of scalars (lcm of orders).
pub fn common_order<'a>(it: impl IntoIterator<Item = &'a Scalar>) -> u32 {
    it.into_iter().fold(1u32, |acc, s| acc.lcm(&s.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_polynomial(3), &[1, 1, 1]);
        assert_eq!(&*cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        assert_eq!(field_degree(8), 4);
    }

    #[test]
    fn zeta3_cubed_is_one() {
        let w = z(3, 1);
        assert_eq!(&(&w * &w) * &w, Scalar::one());
        assert_eq!(w.pow(3).unwrap(), Scalar::one());
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(z(4, 1) * z(4, 1), Scalar::from_int(-1));
        assert_eq!(z(4, 2), Scalar::from_int(-1));
        assert_eq!(z(2, 1), Scalar::from_int(-1));
    }

    #[test]
    fn root_sum_vanishes() {
        for n in [3u32, 4, 5, 6, 8, 12] {
            let mut acc = Scalar::zero();
            for k in 0..n {
                acc += &z(n, k as i64);
            }
            assert!(acc.is_zero(), "sum of {n}-th roots");
        }
    }

    #[test]
    fn mismatched_orders_error() {
        assert_eq!(z(3, 1).try_add(&z(4, 1)), Err(ScalarError::OrderMismatch(3, 4)));
        assert_eq!(z(3, 1).try_mul(&z(5, 1)), Err(ScalarError::OrderMismatch(3, 5)));
        assert!(z(3, 1).try_add(&Scalar::ratio(1, 2)).is_ok());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Scalar::one().try_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn embedding_matches_roots() {
        assert_eq!(z(3, 1).embed(12).unwrap(), z(12, 4));
        assert_eq!(z(4, 3).embed(12).unwrap(), z(12, 9));
        assert_eq!(z(3, 1).embed(4), Err(ScalarError::NotDivisible(3, 4)));
    }

    #[test]
    fn serialization_round_trip() {
        let s = Scalar::from_coeffs(
            5,
            vec![Rational::new(1, 2), Rational::new(-3, 7), Rational::zero(), Rational::from_integer(4)],
        )
        .unwrap();
        let j = serde_json::to_string(&s).unwrap();
        let back: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&Scalar::from_int(-1)).unwrap(), r#"[1,["-1/1"]]"#);
    }

    fn arb_scalar(order: u32) -> impl Strategy<Value = Scalar> {
        let d = field_degree(order);
        proptest::collection::vec((-9i64..9, 1i64..4), d)
            .prop_map(move |v| Scalar::from_coeffs(order, v.into_iter().map(|(p, q)| Rational::new(p as i128, q as i128)).collect()).unwrap())
    }

    fn arb_any() -> impl Strategy<Value = Scalar> {
        prop_oneof![arb_scalar(1), arb_scalar(3), arb_scalar(4), arb_scalar(5)]
    }

    proptest! {
        #[test]
        fn field_axioms_q_zeta5(a in arb_scalar(5), b in arb_scalar(5), c in arb_scalar(5)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.try_inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn numeric_image_is_a_ring_map(a in arb_scalar(4), b in arb_scalar(4)) {
            let (ar, ai) = a.approx_complex();
            let (br, bi) = b.approx_complex();
            let (pr, pi) = (&a * &b).approx_complex();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6);
        }

        #[test]
        fn json_round_trip(a in arb_any()) {
            let j = serde_json::to_string(&a).unwrap();
            let back: Scalar = serde_json::from_str(&j).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
