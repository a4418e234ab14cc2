//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`Scalar`] is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` of its
//! conductor `N`, always reduced modulo the cyclotomic polynomial `Φ_N`.
//! Values whose non-constant coefficients vanish are collapsed to conductor 1,
//! so rationals never carry a cyclotomic tail. Operands of different conductors
//! are embedded into `Q(ζ_lcm)` before combining.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Precomputed data for `Q(ζ_N)`.
struct CyclotomicField {
    phi: usize,
    /// `x^k mod Φ_N` for `k` in `0..N`.
    powers: Vec<Vec<Rational>>,
}

fn field(conductor: u32) -> Arc<CyclotomicField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&conductor) {
        return f.clone();
    }
    let built = Arc::new(build_field(conductor));
    cache
        .lock()
        .unwrap()
        .entry(conductor)
        .or_insert(built)
        .clone()
}

fn build_field(conductor: u32) -> CyclotomicField {
    let phi_poly = cyclotomic_polynomial(conductor);
    let phi = phi_poly.len() - 1;
    let n = conductor as usize;
    let mut powers = Vec::with_capacity(n);
    let mut cur: Vec<BigInt> = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..n {
        powers.push(cur.iter().map(|c| Rational::from_integer(c.clone())).collect());
        // multiply by x and reduce with the monic Φ_N
        let mut next = vec![BigInt::zero(); phi + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] = c.clone();
        }
        let lead = next[phi].clone();
        if !lead.is_zero() {
            for (i, p) in phi_poly.iter().enumerate() {
                next[i] -= &lead * p;
            }
        }
        next.truncate(phi);
        cur = next;
    }
    CyclotomicField {
        phi,
        powers,
    }
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "conductor must be positive");
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

pub fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// An element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct Scalar {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Scalar::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// `p/q`; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Builds `Σ coeffs[i]·ζ_N^i` for a coefficient list of any length.
    pub fn from_poly(conductor: u32, coeffs: &[Rational]) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let f = field(conductor);
        let mut out = vec![Rational::zero(); f.phi];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let red = &f.powers[i % conductor as usize];
            for (o, r) in out.iter_mut().zip(red) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        Scalar {
            conductor,
            coeffs: out,
        }
        .normalized()
    }

    /// `ζ_N^k`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let e = k.rem_euclid(conductor as i64) as usize;
        let f = field(conductor);
        Scalar {
            conductor,
            coeffs: f.powers[e].clone(),
        }
        .normalized()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients; length is `φ(conductor)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.conductor == 1).then(|| &self.coeffs[0])
    }

    fn normalized(mut self) -> Self {
        if self.conductor != 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            let c = self.coeffs.swap_remove(0);
            self.conductor = 1;
            self.coeffs = vec![c];
        }
        self
    }

    /// Coefficients of `self` viewed inside `Q(ζ_target)`; `conductor | target`.
    fn embedded_coeffs(&self, target: u32) -> Vec<Rational> {
        debug_assert_eq!(target % self.conductor, 0);
        if target == self.conductor {
            return self.coeffs.clone();
        }
        let f = field(target);
        let step = (target / self.conductor) as usize;
        let mut out = vec![Rational::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let red = &f.powers[(i * step) % target as usize];
            for (o, r) in out.iter_mut().zip(red) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }

    /// The same value viewed in `Q(ζ_target)`, without collapsing.
    pub fn embed(&self, target: u32) -> Result<Scalar> {
        if target == 0 || target % self.conductor != 0 {
            return Err(Error::Invalid(format!(
                "cannot embed conductor {} into {}",
                self.conductor, target
            )));
        }
        Ok(Scalar {
            conductor: target,
            coeffs: self.embedded_coeffs(target),
        })
    }

    fn common(&self, other: &Scalar) -> (u32, Vec<Rational>, Vec<Rational>) {
        if self.conductor == other.conductor {
            return (self.conductor, self.coeffs.clone(), other.coeffs.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (l, self.embedded_coeffs(l), other.embedded_coeffs(l))
    }

    fn add_impl(&self, other: &Scalar) -> Scalar {
        if self.conductor == 1 && other.conductor == 1 {
            return Scalar::from_rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        let (n, mut a, b) = self.common(other);
        for (x, y) in a.iter_mut().zip(&b) {
            *x += y;
        }
        Scalar {
            conductor: n,
            coeffs: a,
        }
        .normalized()
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if self.conductor == 1 && other.conductor == 1 {
            return Scalar::from_rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        if self.conductor == 1 || other.conductor == 1 {
            let (r, s) = if self.conductor == 1 {
                (&self.coeffs[0], other)
            } else {
                (&other.coeffs[0], self)
            };
            if r.is_zero() {
                return Scalar::zero();
            }
            return Scalar {
                conductor: s.conductor,
                coeffs: s.coeffs.iter().map(|c| c * r).collect(),
            };
        }
        let (n, a, b) = self.common(other);
        let f = field(n);
        let mut prod = vec![Rational::zero(); 2 * f.phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = prod[..f.phi].to_vec();
        for (k, c) in prod.iter().enumerate().skip(f.phi) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&f.powers[k % n as usize]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        Scalar {
            conductor: n,
            coeffs: out,
        }
        .normalized()
    }

    /// Multiplicative inverse, found by solving `a·b = 1` in the power basis.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Scalar::from_rational(self.coeffs[0].recip()));
        }
        let n = self.conductor;
        let phi = self.coeffs.len();
        // column j of the multiplication matrix is self·ζ^j
        let columns: Vec<Vec<Rational>> = (0..phi)
            .map(|j| {
                let z = Scalar::root_of_unity(n, j as i64);
                (self * &z).embedded_coeffs(n)
            })
            .collect();
        // augmented rows [M | e_0]
        let mut rows: Vec<Vec<Rational>> = (0..phi)
            .map(|i| {
                let mut r: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
                r.push(if i == 0 { Rational::one() } else { Rational::zero() });
                r
            })
            .collect();
        for col in 0..phi {
            let p = (col..phi)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            rows.swap(col, p);
            let piv = rows[col][col].clone();
            for x in rows[col].iter_mut() {
                *x /= &piv;
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        let coeffs = rows.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Ok(Scalar {
            conductor: n,
            coeffs,
        }
        .normalized())
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Polynomial in `var` of the power-basis representation, e.g. `-1-z`.
    pub fn poly_string(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&rational_string(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", rational_string(&abs), mono));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses a polynomial in `z` with rational coefficients, e.g. `1/2*z^2-z+3`.
    pub fn parse_poly(conductor: u32, text: &str) -> Result<Scalar> {
        let err = |reason: &str| Error::ScalarParse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        if conductor == 0 {
            return Err(err("conductor must be positive"));
        }
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef_str, exp) = match body.find('z') {
                None => (body, 0usize),
                Some(pos) => {
                    let tail = &body[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| err("bad exponent"))?
                    };
                    let head = body[..pos].trim_end_matches('*');
                    (head, exp)
                }
            };
            let mut coef = if coef_str.is_empty() {
                if exp == 0 {
                    return Err(err("empty term"));
                }
                Rational::one()
            } else {
                Rational::from_str(coef_str).map_err(|_| err("bad coefficient"))?
            };
            if neg {
                coef = -coef;
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, Rational::zero());
            }
            coeffs[exp] += coef;
        }
        Ok(Scalar::from_poly(conductor, &coeffs))
    }

    /// Smallest `m ≥ 1` with `self^m = 1`, searched up to `limit`.
    pub fn multiplicative_order(&self, limit: u32) -> Option<u32> {
        let mut acc = self.clone();
        for m in 1..=limit {
            if acc.is_one() {
                return Some(m);
            }
            acc = &acc * self;
        }
        None
    }
}

fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => f.write_str(&rational_string(r)),
            None => f.write_str(&self.poly_string(&format!("ζ{}", self.conductor))),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts rationals `p`, `p/q`, or `N:poly` for cyclotomics (e.g. `3:-1-z`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((n, poly)) = t.split_once(':') {
            let n: u32 = n.trim().parse().map_err(|_| Error::ScalarParse {
                input: s.to_string(),
                reason: "bad conductor".into(),
            })?;
            return Scalar::parse_poly(n, poly);
        }
        Rational::from_str(t)
            .map(Scalar::from_rational)
            .map_err(|_| Error::ScalarParse {
                input: s.to_string(),
                reason: "expected p or p/q".into(),
            })
    }
}

impl Scalar {
    /// The text form read back by `FromStr`: `p/q`, or `N:poly` in `z = ζ_N`.
    pub fn to_exact_string(&self) -> String {
        match self.as_rational() {
            Some(r) => rational_string(r),
            None => format!("{}:{}", self.conductor, self.poly_string("z")),
        }
    }
}

// Always a string; the object form {"N": n, "poly": "..."} is accepted on input.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_exact_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScalarVisitor;

        impl<'de> Visitor<'de> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an object {\"N\": n, \"poly\": \"...\"}")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                Scalar::from_str(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from_integer(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from_rational(Rational::from_integer(BigInt::from(v))))
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Scalar, A::Error> {
                let mut n: Option<u32> = None;
                let mut poly: Option<String> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "N" => n = Some(map.next_value()?),
                        "poly" => poly = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["N", "poly"])),
                    }
                }
                let n = n.ok_or_else(|| de::Error::missing_field("N"))?;
                let poly = poly.ok_or_else(|| de::Error::missing_field("poly"))?;
                Scalar::parse_poly(n, &poly).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_impl(b));
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_impl(&-b));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_impl(b));

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.conductor == 1 && rhs.conductor == 1 {
            self.coeffs[0] += &rhs.coeffs[0];
        } else {
            *self = self.add_impl(rhs);
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.conductor == 1 && rhs.conductor == 1 {
            self.coeffs[0] -= &rhs.coeffs[0];
        } else {
            *self = self.add_impl(&-rhs);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_impl(rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

/// `gcd` of two positive integers, exposed for group-order bookkeeping.
pub fn gcd(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}
