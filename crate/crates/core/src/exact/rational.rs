//! Big rationals and the handful of p-adic queries the rest of the crate needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// `v_p(n)` for a nonzero integer; `None` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(r)` for a nonzero rational; `None` for zero.
pub fn valuation(r: &Rational, p: u64) -> Option<i64> {
    let vn = int_valuation(r.numer(), p)?;
    let vd = int_valuation(r.denom(), p).expect("denominator is nonzero");
    Some(vn - vd)
}

/// True when `r` lies in `Z_(p)`.
pub fn is_p_integral(r: &Rational, p: u64) -> bool {
    r.is_zero() || valuation(r, p).is_some_and(|v| v >= 0)
}

pub fn rational_from_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n"` or `"n/d"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let r = Rational::new(BigInt::from(50), BigInt::from(3));
        assert_eq!(valuation(&r, 5), Some(2));
        assert_eq!(valuation(&r, 3), Some(-1));
        assert_eq!(valuation(&Rational::zero(), 3), None);
        assert!(is_p_integral(&r, 5));
        assert!(!is_p_integral(&r, 3));
    }

    #[test]
    fn text_form() {
        assert_eq!(parse_rational(" -6/4 "), Some(Rational::new((-3).into(), 2.into())));
        assert_eq!(parse_rational("7"), Some(rational_from_i64(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&Rational::new(3.into(), (-6).into())), "-1/2");
        assert_eq!(format_rational(&rational_from_i64(-243)), "-243");
    }

    #[test]
    fn primes() {
        let odd: Vec<u64> = (0..30).filter(|&p| is_odd_prime(p)).collect();
        assert_eq!(odd, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
