//! Resultants and discriminants over `Q`.
//!
//! The univariate resultant runs the subresultant PRS on primitive integer
//! polynomials (no fractions appear in the elimination). The bivariate
//! difference resultant `Res_y(f(y), f(x + y))` is recovered from its values
//! at integer points by Newton interpolation, which is exact because its
//! degree is known in advance.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::QPoly;
use crate::exact::rational::Rational;

type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn deg(p: &IntPoly) -> usize {
    p.len() - 1
}

fn content(p: &IntPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a mod b`.
fn prem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (da, db) = (deg(a), deg(b));
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut steps = 0;
    while !r.is_empty() && deg(&r) >= db {
        let lr = r.last().unwrap().clone();
        let shift = deg(&r) - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
        steps += 1;
    }
    let missing = da + 1 - db - steps;
    if missing > 0 {
        let f = pow(&lb, missing);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Resultant of two integer polynomials (coefficients constant term first).
pub fn resultant_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a: IntPoly = a.to_vec();
    let mut b: IntPoly = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    if deg(&b) == 0 {
        return pow(b.last().unwrap(), deg(&a));
    }
    if deg(&a) == 0 {
        return pow(a.last().unwrap(), deg(&b));
    }
    let mut s = BigInt::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let (ca, cb) = (content(&a), content(&b));
    let t = pow(&ca, deg(&b)) * pow(&cb, deg(&a));
    a.iter_mut().for_each(|c| *c /= &ca);
    b.iter_mut().for_each(|c| *c /= &cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        let divisor = &g * pow(&h, delta);
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            pow(&g, delta) / pow(&h, delta - 1)
        };
        if deg(&b) == 0 {
            let da = deg(&a);
            let hh = pow(b.last().unwrap(), da) / pow(&h, da - 1);
            return s * t * hh;
        }
    }
}

/// Resultant over `Q`.
pub fn resultant(f: &QPoly, g: &QPoly) -> Rational {
    let (lf, fi) = f.to_integer();
    let (lg, gi) = g.to_integer();
    if fi.is_empty() || gi.is_empty() {
        return Rational::zero();
    }
    let (df, dg) = (fi.len() - 1, gi.len() - 1);
    let r = resultant_int(&fi, &gi);
    Rational::new(r, pow(&lf, dg) * pow(&lg, df))
}

/// `disc f = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &QPoly) -> Rational {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Rational::one();
    }
    let r = resultant(f, &f.derivative()) / f.leading().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// `D(x) = Res_y(f(y), f(x + y)) / x^n` for monic `f` of degree `n`, i.e.
/// the monic polynomial whose roots are the `n(n-1)` root differences
/// `α_i - α_j`, `i ≠ j`.
pub fn difference_polynomial(f: &QPoly) -> QPoly {
    let n = f.degree().unwrap_or(0);
    let target = n * (n.saturating_sub(1));
    let xs: Vec<Rational> = (1..=target as i64 + 1)
        .map(|c| Rational::from_integer(c.into()))
        .collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|c| resultant(f, &f.shift(c)) / num_traits::pow(c.clone(), n))
        .collect();
    interpolate(&xs, &ys)
}

/// Newton-form interpolation through distinct nodes, returned in the
/// monomial basis.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> QPoly {
    assert_eq!(xs.len(), ys.len());
    let k = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form.
    let mut acc = QPoly::zero();
    for i in (0..k).rev() {
        let lin = QPoly::new(vec![-xs[i].clone(), Rational::one()]);
        acc = acc.mul(&lin).add(&QPoly::new(vec![dd[i].clone()]));
    }
    acc
}

pub fn is_squarefree(f: &QPoly) -> bool {
    !discriminant(f).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    /// Determinant of the Sylvester matrix by rational Gaussian elimination.
    fn sylvester_resultant(f: &QPoly, g: &QPoly) -> Rational {
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        let size = m + n;
        let mut mat = vec![vec![Rational::zero(); size]; size];
        for r in 0..n {
            for i in 0..=m {
                mat[r][r + i] = f.coeff(m - i);
            }
        }
        for r in 0..m {
            for i in 0..=n {
                mat[n + r][r + i] = g.coeff(n - i);
            }
        }
        let mut det = Rational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det *= &mat[col][col];
            for r in col + 1..size {
                let factor = &mat[r][col] / &mat[col][col];
                for c in col..size {
                    let v = &factor * &mat[col][c];
                    mat[r][c] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&QPoly::from_ints(&[-5, 0, 0, 0, 0, 1])), q(1_953_125)); // 5^9
        assert_eq!(discriminant(&QPoly::from_ints(&[-3, 0, 0, 1])), q(-243));
        // (x-1)^2 (x+1)^3
        let f = QPoly::from_ints(&[-1, 1]).mul(&QPoly::from_ints(&[-1, 1]));
        let g = f.mul(&QPoly::from_ints(&[1, 1]).mul(&QPoly::from_ints(&[1, 1])).mul(&QPoly::from_ints(&[1, 1])));
        assert_eq!(discriminant(&g), q(0));
        assert!(!is_squarefree(&g));
        // x^2 + bx + c: b^2 - 4c
        assert_eq!(discriminant(&QPoly::from_ints(&[7, 3, 1])), q(9 - 28));
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases: &[(&[i64], &[i64])] = &[
            (&[-3, 0, 0, 1], &[0, 0, 3]),
            (&[1, 2, 3, 4], &[5, -1, 2]),
            (&[5, 0, 0, 0, -5, 1], &[0, 0, 0, -20, 5]),
            (&[2, 0, 1], &[1, 1, 0, 7, 1]),
            (&[6, 4, 2], &[3, 3]),
            (&[1, 1], &[-1, 1]),
        ];
        for (a, b) in cases {
            let (f, g) = (QPoly::from_ints(a), QPoly::from_ints(b));
            assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g), "{f} / {g}");
            assert_eq!(resultant(&g, &f), sylvester_resultant(&g, &f), "{g} / {f}");
        }
        let half = QPoly::new(vec![Rational::new(1.into(), 2.into()), q(0), q(1)]);
        let g = QPoly::from_ints(&[1, 3]);
        assert_eq!(resultant(&half, &g), sylvester_resultant(&half, &g));
    }

    /// Coefficients of `∏_{i≠j} (x - (α_i - α_j))` from power sums of the
    /// roots of `f`, via Newton's identities in both directions.
    fn difference_polynomial_by_power_sums(f: &QPoly) -> QPoly {
        let n = f.degree().unwrap();
        let big = n * (n - 1);
        // e_k of the roots of monic f: coefficient of x^{n-k} is (-1)^k e_k.
        let e: Vec<Rational> = (0..=n)
            .map(|k| if k % 2 == 0 { f.coeff(n - k) } else { -f.coeff(n - k) })
            .collect();
        let mut ps = vec![q(n as i64); big + 1];
        for k in 1..=big {
            let mut s = Rational::zero();
            for i in 1..k.min(n + 1) {
                let term = &e[i] * &ps[k - i];
                if i % 2 == 1 { s += term } else { s -= term }
            }
            if k <= n {
                let term = &e[k] * q(k as i64);
                if k % 2 == 1 { s += term } else { s -= term }
            }
            ps[k] = s;
        }
        let binom = |k: usize, t: usize| -> Rational {
            let mut b = q(1);
            for i in 0..t {
                b = b * q((k - i) as i64) / q(i as i64 + 1);
            }
            b
        };
        let mut sd = vec![Rational::zero(); big + 1];
        for (k, sdk) in sd.iter_mut().enumerate().skip(1) {
            for t in 0..=k {
                let term = binom(k, t) * &ps[t] * &ps[k - t];
                if (k - t) % 2 == 0 { *sdk += term } else { *sdk -= term }
            }
        }
        let mut ed = vec![q(1); big + 1];
        for k in 1..=big {
            let mut s = Rational::zero();
            for i in 1..=k {
                let term = &ed[k - i] * &sd[i];
                if i % 2 == 1 { s += term } else { s -= term }
            }
            ed[k] = s / q(k as i64);
        }
        QPoly::new(
            (0..=big)
                .map(|i| {
                    let k = big - i;
                    if k.is_multiple_of(2) { ed[k].clone() } else { -ed[k].clone() }
                })
                .collect(),
        )
    }

    #[test]
    fn difference_polynomial_matches_power_sum_oracle() {
        for f in [
            QPoly::from_ints(&[-3, 0, 0, 1]),
            QPoly::from_ints(&[1, 1, 0, 1]),
            QPoly::from_ints(&[-5, 0, 0, 0, 0, 1]),
            QPoly::from_ints(&[5, 0, 0, 0, -5, 1]),
            QPoly::from_ints(&[10, 5, 0, 15, 0, 1]),
        ] {
            assert_eq!(difference_polynomial(&f), difference_polynomial_by_power_sums(&f), "{f}");
        }
    }

    #[test]
    fn difference_polynomial_of_small_cubic() {
        // x^3 - 3: D(x) = x^6 + 243 (root differences are α(1 - ζ) etc.,
        // sixth powers all equal to (α(1-ζ))^6 = 9·(-27) = -243).
        let d = difference_polynomial(&QPoly::from_ints(&[-3, 0, 0, 1]));
        assert_eq!(d, QPoly::from_ints(&[243, 0, 0, 0, 0, 0, 1]));
    }
}
