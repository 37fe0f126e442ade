//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{d-1}` with
//! `d = φ(m)`, as integer numerators over one positive common denominator.
//! Every value is kept reduced modulo `Φ_m` and normalized so that
//! `gcd(numerators, denominator) = 1`; equality is plain structural equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// The field `Q(ζ_m)` together with the reduction data Φ_m and
/// `x^k mod Φ_m` for `0 <= k < m`.
#[derive(Debug)]
pub struct CyclotomicField {
    m: u32,
    modulus: Vec<i64>,
    /// `powers[k]` = coefficients of `x^k mod Φ_m`, length `degree`.
    powers: Vec<Vec<i64>>,
    max_power_coeff: u64,
}

impl CyclotomicField {
    pub fn new(m: u32) -> Arc<Self> {
        assert!(m >= 1, "cyclotomic conductor must be positive");
        let modulus = cyclotomic_polynomial(m);
        let d = modulus.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; d];
        if d > 0 {
            cur[0] = 1;
        }
        for _ in 0..m {
            powers.push(cur.clone());
            // cur <- x * cur mod Φ_m
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = cur[i - 1] - top * modulus[i];
            }
            cur[0] = -top * modulus[0];
        }
        let max_power_coeff = powers
            .iter()
            .flatten()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(1);
        Arc::new(CyclotomicField {
            m,
            modulus,
            powers,
            max_power_coeff,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// `φ(m)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of `Φ_m`, constant term first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    fn reduce_big(&self, acc: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let mut out = vec![BigInt::zero(); d];
        for (k, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&self.powers[k]) {
                if r != 0 {
                    *o += a * r;
                }
            }
        }
        out
    }

    fn reduce_small(&self, acc: &[i128]) -> Vec<BigInt> {
        let d = self.degree();
        let mut out = vec![0i128; d];
        for (k, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&self.powers[k]) {
                *o += a * r as i128;
            }
        }
        out.into_iter().map(BigInt::from).collect()
    }
}

/// `Φ_m` by the quotient formula `Φ_m = (x^m - 1) / ∏_{d | m, d < m} Φ_d`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    let mut memo = BTreeMap::new();
    cyclotomic_memo(m, &mut memo)
}

fn cyclotomic_memo(m: u32, memo: &mut BTreeMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(c) = memo.get(&m) {
        return c.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let phi_d = cyclotomic_memo(d, memo);
        num = divide_monic(&num, &phi_d);
    }
    memo.insert(m, num.clone());
    num
}

/// Exact quotient of integer polynomials by a monic divisor (remainder must vanish).
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn normalized(field: Arc<CyclotomicField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !den.is_one() {
            let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
            if !g.is_one() {
                num.iter_mut().for_each(|c| *c /= &g);
                den /= &g;
            }
        }
        CyclotomicNumber { field, num, den }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicNumber {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, &Rational::from_integer(n.into()))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = r.numer().clone();
        Self::normalized(field.clone(), num, r.denom().clone())
    }

    /// `ζ_m^k`; negative exponents are allowed.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let k = k.rem_euclid(field.m as i64) as usize;
        CyclotomicNumber {
            field: field.clone(),
            num: field.powers[k].iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// Builds `Σ coeffs[i] ζ^i` for a coefficient vector of any length and
    /// reduces it to canonical form.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let m = field.m as usize;
        let mut acc = vec![BigInt::zero(); m];
        for (i, c) in coeffs.iter().enumerate() {
            acc[i % m] += c.numer() * (&den / c.denom());
        }
        Self::normalized(field.clone(), field.reduce_big(&acc), den)
    }

    /// Sums of roots of unity `Σ ζ^{k}` over the given exponents.
    pub fn sum_of_roots(field: &Arc<CyclotomicField>, exponents: impl IntoIterator<Item = i64>) -> Self {
        let m = field.m as i64;
        let mut acc = vec![0i128; field.m as usize];
        for k in exponents {
            acc[k.rem_euclid(m) as usize] += 1;
        }
        Self::normalized(field.clone(), field.reduce_small(&acc), BigInt::one())
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    /// Coefficients in the reduced power basis, length `φ(m)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the value is the rational number `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            let c0 = self.num.first().cloned().unwrap_or_default();
            Some(Rational::new(c0, self.den.clone()))
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field.m != other.field.m {
            return Err(Error::Usage(format!(
                "cyclotomic conductor mismatch: {} vs {} (lift to a common conductor first)",
                self.field.m, other.field.m
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.multiply(other))
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &other.den, b * &self.den);
                    if subtract {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        Self::normalized(self.field.clone(), num, den)
    }

    fn multiply(&self, other: &Self) -> Self {
        let field = &self.field;
        let m = field.m as usize;
        let den = &self.den * &other.den;
        if let (Some(a), Some(b)) = (small_coeffs(&self.num), small_coeffs(&other.num)) {
            let ma = a.iter().map(|c| c.unsigned_abs() as u128).max().unwrap_or(0);
            let mb = b.iter().map(|c| c.unsigned_abs() as u128).max().unwrap_or(0);
            let bound = ma
                .checked_mul(mb)
                .and_then(|x| x.checked_mul(a.len() as u128 + 1))
                .and_then(|x| x.checked_mul(m as u128))
                .and_then(|x| x.checked_mul(field.max_power_coeff as u128));
            if bound.is_some_and(|b| b < (1u128 << 126)) {
                let mut acc = vec![0i128; m];
                for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
                    for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                        acc[(i + j) % m] += x as i128 * y as i128;
                    }
                }
                return Self::normalized(field.clone(), field.reduce_small(&acc), den);
            }
        }
        let mut acc = vec![BigInt::zero(); m];
        for (i, x) in self.num.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in other.num.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                acc[(i + j) % m] += x * y;
            }
        }
        Self::normalized(field.clone(), field.reduce_big(&acc), den)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::normalized(self.field.clone(), num, &self.den * r.denom())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base);
            }
        }
        acc
    }

    /// Complex conjugation, `ζ_m ↦ ζ_m^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.field.m as usize;
        let mut acc = vec![BigInt::zero(); m];
        for (i, c) in self.num.iter().enumerate() {
            acc[(m - i) % m] += c;
        }
        Self::normalized(self.field.clone(), self.field.reduce_big(&acc), self.den.clone())
    }

    /// Re-expresses the value in `Q(ζ_{m'})` for a multiple `m'` of `m`.
    pub fn lift(&self, target: &Arc<CyclotomicField>) -> Result<Self> {
        let (m, mt) = (self.field.m as usize, target.m as usize);
        if mt % m != 0 {
            return Err(Error::Usage(format!(
                "cannot lift from conductor {m} to {mt}: {m} does not divide {mt}"
            )));
        }
        let step = mt / m;
        let mut acc = vec![BigInt::zero(); mt];
        for (i, c) in self.num.iter().enumerate() {
            acc[(i * step) % mt] += c;
        }
        Ok(Self::normalized(target.clone(), target.reduce_big(&acc), self.den.clone()))
    }

    /// Image under the complex embedding `ζ_m ↦ e^{2πi/m}`. Display and sign
    /// conventions only; equality is always decided exactly.
    pub fn embed(&self) -> Complex64 {
        let m = self.field.m as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, theta)
            })
            .sum()
    }
}

fn small_coeffs(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter()
        .map(|c| c.to_i64().filter(|x| x.unsigned_abs() < (1 << 40)))
        .collect()
}

/// The binary operations on two elements of one cyclotomic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Sub,
    Mul,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycloValue {
    Number(CyclotomicNumber),
    Bool(bool),
}

pub fn cyclo_field_ops(a: &CyclotomicNumber, b: &CyclotomicNumber, op: CycloOp) -> Result<CycloValue> {
    match op {
        CycloOp::Add => a.try_add(b).map(CycloValue::Number),
        CycloOp::Sub => a.try_sub(b).map(CycloValue::Number),
        CycloOp::Mul => a.try_mul(b).map(CycloValue::Number),
        CycloOp::Eq => {
            a.check_same(b)?;
            Ok(CycloValue::Bool(a == b))
        }
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.den == other.den && self.num == other.num
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.try_add(rhs).expect("conductor mismatch in +")
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.try_sub(rhs).expect("conductor mismatch in -")
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.try_mul(rhs).expect("conductor mismatch in *")
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact form, e.g. `1 - 2*z5^3`, where `z5` is `ζ_5`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{}", format_rational(&a))?,
                (_, true) => write!(f, "z{}^{}", self.field.m, i)?,
                (_, false) => write!(f, "{}*z{}^{}", format_rational(&a), self.field.m, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    m: u32,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloWire {
            m: self.field.m,
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CycloWire::deserialize(d)?;
        if w.m == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CyclotomicNumber::from_coeffs(&CyclotomicField::new(w.m), &coeffs))
    }
}
