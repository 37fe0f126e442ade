//! Human-readable rendering of exact values: an exact tag followed by a
//! numeric approximation, e.g. `-√5 (-2.236068)`.

use num_complex::Complex64;
use num_traits::Signed;

use super::cyclotomic::CyclotomicNumber;
use super::rational::format_rational;

pub fn format_complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re:.6}"),
        (true, false) => format!("{im:.6}i"),
        (false, false) => format!("{re:.6}{}{:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs()),
    }
}

/// Exact tag: the rational itself, `±√r` when the square is rational, or
/// the power-basis expansion otherwise.
pub fn exact_tag(a: &CyclotomicNumber) -> String {
    if let Some(r) = a.as_rational() {
        return format_rational(&r);
    }
    if let Some(r) = (a * a).as_rational() {
        let z = a.embed();
        let inner = if r.is_integer() { format_rational(&r) } else { format!("({})", format_rational(&r)) };
        let positive = if r.is_positive() { z.re > 0.0 } else { z.im > 0.0 };
        return format!("{}√{inner}", if positive { "" } else { "-" });
    }
    a.to_string()
}

pub fn render_value(a: &CyclotomicNumber) -> String {
    if a.as_rational().is_some() {
        return exact_tag(a);
    }
    format!("{} ({})", exact_tag(a), format_complex(a.embed()))
}
