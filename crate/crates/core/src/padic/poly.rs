//! Dense univariate polynomials over `Q`, plus the compact string grammar
//! used on the command line.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::InputError;
use crate::exact::rational::{format_rational, parse_rational, Rational};

/// `coeffs[i]` is the coefficient of `x^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(ints: &[i64]) -> Self {
        Self::new(ints.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `f(x + c)`, by Horner's scheme in `Q[x]`.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = QPoly::new(vec![c.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(QPoly::zero(), |acc, a| acc.mul(&lin).add(&QPoly::new(vec![a.clone()])))
    }

    /// Polynomial division by `x^k`, assuming the low coefficients vanish.
    pub fn div_x_pow(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Clears denominators: returns `(L, g)` with `g = L·self` integral.
    pub fn to_integer(&self) -> (BigInt, Vec<BigInt>) {
        use num_integer::Integer;
        let l = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        (l, ints)
    }

    /// Coefficient strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    /// Parses either a JSON array of coefficient strings (`["-5","0",…,"1"]`,
    /// constant term first) or the compact form `x^5-5`.
    pub fn parse(s: &str) -> Result<Self, InputError> {
        let t = s.trim();
        if t.starts_with('[') {
            let items: Vec<serde_json::Value> = serde_json::from_str(t)
                .map_err(|e| InputError::Parse(format!("coefficient list: {e}")))?;
            let coeffs = items
                .iter()
                .map(|v| {
                    let text = match v {
                        serde_json::Value::String(s) => s.clone(),
                        serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                        other => return Err(InputError::Parse(format!("bad coefficient {other}"))),
                    };
                    parse_rational(&text).ok_or_else(|| InputError::Parse(format!("bad coefficient {text:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Self::new(coeffs))
        } else {
            parse_compact(t)
        }
    }
}

/// Grammar: a signed sum of terms `c`, `c*x^k`, `c*x`, `x^k`, `x` with
/// integer `c` and nonnegative integer `k`. Whitespace is ignored and the
/// `*` may be omitted.
fn parse_compact(s: &str) -> Result<QPoly, InputError> {
    let err = |msg: &str| InputError::Parse(format!("{msg} in {s:?}"));
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut pos = 0;
    let digits = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| chars[start..*pos].iter().collect::<String>().parse().unwrap())
    };
    while pos < chars.len() {
        let mut sign = BigInt::one();
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                sign = -sign;
                pos += 1
            }
            _ if pos > 0 => return Err(err("expected '+' or '-'")),
            _ => {}
        }
        let c = digits(&mut pos);
        let mut exp = 0usize;
        if pos < chars.len() && chars[pos] == '*' {
            if c.is_none() {
                return Err(err("'*' without coefficient"));
            }
            pos += 1;
            if pos >= chars.len() || chars[pos] != 'x' {
                return Err(err("expected 'x' after '*'"));
            }
        }
        if pos < chars.len() && chars[pos] == 'x' {
            pos += 1;
            exp = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let e = digits(&mut pos).ok_or_else(|| err("expected exponent"))?;
                exp = e
                    .try_into()
                    .ok()
                    .filter(|&e: &usize| e <= 10_000)
                    .ok_or_else(|| err("exponent too large"))?;
            }
        } else if c.is_none() {
            return Err(err("expected a term"));
        }
        let c = c.unwrap_or_else(BigInt::one) * sign;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += c;
    }
    Ok(QPoly::new(coeffs.into_iter().map(Rational::from_integer).collect()))
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let coef = format_rational(&a);
            match (i, a.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coef}*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_grammar() {
        assert_eq!(QPoly::parse("x^5-5").unwrap(), QPoly::from_ints(&[-5, 0, 0, 0, 0, 1]));
        assert_eq!(
            QPoly::parse(" x^5 - 5*x^4 + 5").unwrap(),
            QPoly::from_ints(&[5, 0, 0, 0, -5, 1])
        );
        assert_eq!(QPoly::parse("-x^3+2x-1").unwrap(), QPoly::from_ints(&[-1, 2, 0, -1]));
        assert_eq!(QPoly::parse("x^2+x^2").unwrap(), QPoly::from_ints(&[0, 0, 2]));
        for bad in ["", "x^", "2**x", "x^2 x", "y^2", "1/2*x"] {
            assert!(QPoly::parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn coefficient_list() {
        let f = QPoly::parse(r#"["-5", "0", "0", "0", "0", "1"]"#).unwrap();
        assert_eq!(f, QPoly::from_ints(&[-5, 0, 0, 0, 0, 1]));
        let g = QPoly::parse(r#"["1/2", 3, "1"]"#).unwrap();
        assert_eq!(g.coeff(0), Rational::new(1.into(), 2.into()));
        assert!(QPoly::parse(r#"["a"]"#).is_err());
        assert_eq!(f.to_string(), "x^5-5");
    }

    #[test]
    fn shift_and_derivative() {
        let f = QPoly::from_ints(&[1, 0, 1]); // x^2 + 1
        assert_eq!(f.shift(&Rational::from_integer(2.into())), QPoly::from_ints(&[5, 4, 1]));
        assert_eq!(f.derivative(), QPoly::from_ints(&[0, 2]));
        assert_eq!(f.eval(&Rational::from_integer(3.into())), Rational::from_integer(10.into()));
        assert_eq!(QPoly::from_ints(&[0, 0, 3]).div_x_pow(2), Some(QPoly::from_ints(&[3])));
        assert_eq!(QPoly::from_ints(&[1, 0, 3]).div_x_pow(1), None);
    }
}
