//! Arithmetic in `F_{p^m}` in the polynomial basis.

mod frobenius;
pub(crate) mod poly;

pub use frobenius::{frobenius_root_solve, frobenius_root_solve_bounded, FrobeniusSolution, DEFAULT_MAX_AMBIENT_DEGREE};

use serde::Serialize;

use crate::error::{Error, InputError, Result};
use crate::exact::rational::is_odd_prime;

/// Coefficients of `1, x, …, x^{m-1}`, each reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Monic, constant term first, length `m + 1`.
    modulus: Vec<u64>,
    #[serde(skip)]
    lazy: bool,
}

/// `F_{p^m}` with the lexicographically least monic irreducible modulus,
/// comparing the constant term first.
pub fn build_field(p: u64, m: usize) -> Result<FieldSpec> {
    if !is_odd_prime(p) {
        return Err(InputError::NotOddPrime(p).into());
    }
    if m == 0 {
        return Err(Error::Usage("field degree must be positive".into()));
    }
    let mut digits = vec![0u64; m];
    if m > 1 {
        // every candidate with zero constant term is divisible by x
        digits[0] = 1;
    }
    loop {
        let mut g = digits.clone();
        g.push(1);
        let has_root = m > 1 && (0..p).any(|a| poly::eval(&g, a, p) == 0);
        if !has_root && poly::is_irreducible(&g, p) {
            return FieldSpec::with_modulus(p, g);
        }
        // advance (c_0, …, c_{m-1}) as a base-p counter, c_0 most significant
        let mut i = m;
        loop {
            if i == 0 {
                return Err(Error::Internal(format!("no irreducible polynomial of degree {m} over F_{p}")));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}

impl FieldSpec {
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let m = modulus
            .len()
            .checked_sub(1)
            .filter(|&m| m > 0 && modulus[m] == 1)
            .ok_or_else(|| Error::Usage("modulus must be monic of positive degree".into()))?;
        if modulus.iter().any(|&c| c >= p) || !poly::is_irreducible(&modulus, p) {
            return Err(Error::Usage(format!("modulus {modulus:?} is not irreducible over F_{p}")));
        }
        let lazy = (p as u128 - 1).pow(2) * (2 * m as u128) < u64::MAX as u128 / 2;
        Ok(FieldSpec { p, m, modulus, lazy })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^m`, or `None` if it overflows `u128`.
    pub fn size(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.m as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.m] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = c.rem_euclid(self.p as i64) as u64;
        e
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&[0, 1])
    }

    /// Reduces an arbitrary `F_p[x]` polynomial into the field.
    pub fn from_poly(&self, coeffs: &[u64]) -> FieldElement {
        let c: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        let mut r = poly::rem(&c, &self.modulus, self.p);
        r.resize(self.m, 0);
        FieldElement { coeffs: r }
    }

    /// The element whose coefficients are the base-`p` digits of `index`.
    pub fn element(&self, mut index: u128) -> FieldElement {
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = (index % self.p as u128) as u64;
            index /= self.p as u128;
        }
        e
    }

    pub fn index_of(&self, e: &FieldElement) -> u128 {
        e.coeffs.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + self.p - y) % self.p).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| x * (c % self.p) % self.p).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let (p, m) = (self.p, self.m);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if self.lazy {
                    prod[i + j] += x * y;
                } else {
                    prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
                }
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            // x^m = -(modulus - x^m)
            for (i, &g) in self.modulus[..m].iter().enumerate() {
                let idx = k - m + i;
                let t = if self.lazy {
                    c * (p - g) % p
                } else {
                    (c as u128 * (p - g) as u128 % p as u128) as u64
                };
                prod[idx] = (prod[idx] % p + t) % p;
            }
        }
        prod.truncate(m);
        prod.iter_mut().for_each(|c| *c %= p);
        FieldElement { coeffs: prod }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        r
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p as u128)
    }

    /// `a^(p^d)`.
    pub fn frobenius_pow(&self, a: &FieldElement, d: usize) -> FieldElement {
        (0..d).fold(a.clone(), |acc, _| self.frobenius(&acc))
    }

    /// Inverse via `a^(q-2)`; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let q = self.size().expect("field too large for inversion by exponentiation");
        Some(self.pow(a, q - 2))
    }

    /// Quadratic character on the whole field.
    pub fn quadratic_character(&self, t: &FieldElement) -> i8 {
        quadratic_character(self, t, self.size().expect("field too large"))
    }
}

/// Quadratic character of `t` on the subfield `F_q` containing it, by
/// Euler's criterion `t^((q-1)/2)`.
pub fn quadratic_character(field: &FieldSpec, t: &FieldElement, q: u128) -> i8 {
    if t.is_zero() {
        return 0;
    }
    let e = field.pow(t, (q - 1) / 2);
    if e == field.one() {
        1
    } else if e == field.from_int(-1) {
        -1
    } else {
        panic!("element is not in the subfield of order {q}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn deterministic_moduli() {
        assert_eq!(build_field(5, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(build_field(3, 3).unwrap().modulus(), &[1, 0, 2, 1]);
        assert_eq!(build_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        let f = build_field(3, 9).unwrap();
        assert_eq!(f.size(), Some(19683));
        assert!(poly::is_irreducible(f.modulus(), 3));
        assert!(FieldSpec::with_modulus(3, vec![1, 0, 0, 1]).is_err());
    }

    #[test]
    fn fermat_in_f27() {
        let f = build_field(3, 3).unwrap();
        for i in 0..27 {
            let a = f.element(i);
            assert_eq!(f.pow(&a, 27), a);
            assert_eq!(f.index_of(&a), i);
        }
    }

    #[test]
    fn quadratic_characters() {
        let f = build_field(5, 1).unwrap();
        assert_eq!(f.quadratic_character(&f.from_int(1)), 1);
        assert_eq!(f.quadratic_character(&f.from_int(0)), 0);
        assert_eq!(f.quadratic_character(&f.from_int(2)), -1);
        assert_eq!(f.quadratic_character(&f.from_int(4)), 1);
        // in F_25 every element of F_5 is a square
        let f25 = build_field(5, 2).unwrap();
        for c in 1..5 {
            assert_eq!(f25.quadratic_character(&f25.from_int(c)), 1);
        }
        // exactly half of F_(p^m)^* are squares
        for (p, m) in [(3, 3), (5, 2), (7, 2)] {
            let f = build_field(p, m).unwrap();
            let q = f.size().unwrap();
            let squares = (1..q).filter(|&i| f.quadratic_character(&f.element(i)) == 1).count() as u128;
            assert_eq!(squares, (q - 1) / 2);
        }
    }

    fn field_and_elements() -> impl Strategy<Value = (FieldSpec, Vec<FieldElement>)> {
        prop::sample::select(vec![(3u64, 1usize), (3, 4), (5, 3), (7, 2), (13, 2), (3, 7), (5, 5)]).prop_flat_map(|(p, m)| {
            let f = build_field(p, m).unwrap();
            let q = f.size().unwrap();
            let g = f.clone();
            proptest::collection::vec(0..q, 3).prop_map(move |ix| (g.clone(), ix.into_iter().map(|i| g.element(i)).collect()))
        })
    }

    proptest! {
        #[test]
        fn field_axioms((f, xs) in field_and_elements()) {
            let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
            prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
            prop_assert_eq!(f.add(a, &f.neg(a)), f.zero());
            prop_assert_eq!(f.sub(&f.add(a, b), b), a.clone());
            if let Some(ai) = f.inv(a) {
                prop_assert_eq!(f.mul(a, &ai), f.one());
            }
            prop_assert_eq!(f.frobenius_pow(a, f.degree()), a.clone());
            prop_assert_eq!(f.pow(a, f.size().unwrap()), a.clone());
        }
    }
}
