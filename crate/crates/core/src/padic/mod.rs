//! p-adic analysis of the defining polynomial `f`: discriminant, Newton
//! polygons, the irreducibility certificate, the single-cluster check and
//! the conductor exponent.
//!
//! The base field `K` is always the unramified extension of `Q_p` of degree
//! `n`, so `v_K` agrees with `v_p` on rational inputs.

pub mod newton;
pub mod poly;
pub mod resultant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, InputError, Result};
use crate::exact::rational::{format_rational, gcd_u64, is_odd_prime, is_p_integral, valuation, Rational};
pub use newton::{NewtonPolygon, NewtonSegment};
pub use poly::QPoly;

/// Above this prime the difference resultant (degree `p(p-1)`) is not
/// attempted and the cluster check reports `NotComputed`.
pub const CLUSTER_MAX_P: u64 = 31;

/// A monic, `p`-integral polynomial of degree `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputPolynomial {
    p: u64,
    poly: QPoly,
}

impl InputPolynomial {
    pub fn new(p: u64, poly: QPoly) -> Result<Self, InputError> {
        if !is_odd_prime(p) {
            return Err(InputError::NotOddPrime(p));
        }
        let degree = poly.degree().unwrap_or(0);
        if poly.degree() != Some(p as usize) {
            return Err(InputError::DegreeMismatch { degree, p });
        }
        let lead = poly.leading().unwrap();
        if !lead.is_one() {
            return Err(InputError::NotMonic(format_rational(lead)));
        }
        if let Some((index, c)) = poly.coeffs().iter().enumerate().find(|(_, c)| !is_p_integral(c, p)) {
            return Err(InputError::NonIntegral {
                index,
                value: format_rational(c),
                p,
            });
        }
        Ok(InputPolynomial { p, poly })
    }

    pub fn parse(p: u64, text: &str) -> Result<Self, InputError> {
        Self::new(p, QPoly::parse(text)?)
    }

    /// `x^p - p`, the reference family member.
    pub fn x_p_minus_p(p: u64) -> Result<Self, InputError> {
        let mut c = vec![0i64; p as usize + 1];
        c[0] = -(p as i64);
        c[p as usize] = 1;
        Self::new(p, QPoly::from_ints(&c))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }
}

/// The unramified extension of `Q_p` of degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BaseField {
    pub p: u64,
    pub n: u32,
}

impl BaseField {
    pub fn new(p: u64, n: u32) -> Result<Self, InputError> {
        if !is_odd_prime(p) {
            return Err(InputError::NotOddPrime(p));
        }
        if n == 0 {
            return Err(InputError::ZeroInertiaDegree);
        }
        Ok(BaseField { p, n })
    }

    /// `|k| = p^n`, when it fits.
    pub fn residue_size(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Irreducibility {
    CertifiedTotallyRamified,
    Undetermined,
}

/// Outcome of the single-cluster test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingleCluster {
    /// All root differences have valuation `w`.
    Yes(Rational),
    No,
    NotComputed,
}

impl Serialize for SingleCluster {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            status: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            w: Option<String>,
        }
        let (status, w) = match self {
            SingleCluster::Yes(w) => ("Yes", Some(format_rational(w))),
            SingleCluster::No => ("No", None),
            SingleCluster::NotComputed => ("NotComputed", None),
        };
        Wire { status, w }.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AssumptionReport {
    #[serde(serialize_with = "ser_rational")]
    pub discriminant: Rational,
    /// `v_K(Δ)`; absent when `Δ = 0`.
    pub disc_valuation: Option<i64>,
    pub squarefree: bool,
    pub irreducibility: Irreducibility,
    /// `gcd(v_K(Δ), p - 1) = 1`.
    pub gcd_condition: bool,
    pub disc_valuation_odd: bool,
    pub single_cluster: SingleCluster,
    pub maximal_inertia: bool,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl AssumptionReport {
    /// Names of all conditions that keep `maximal_inertia` from holding.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.squarefree {
            out.push("squarefree");
        }
        if self.irreducibility != Irreducibility::CertifiedTotallyRamified {
            out.push("irreducibility");
        }
        if !self.gcd_condition {
            out.push("gcdCondition");
        }
        if self.single_cluster == SingleCluster::No {
            out.push("singleCluster");
        }
        out
    }
}

pub fn poly_discriminant(f: &InputPolynomial) -> Rational {
    resultant::discriminant(&f.poly)
}

pub fn newton_polygon(f: &InputPolynomial) -> Result<NewtonPolygon, InputError> {
    NewtonPolygon::of(&f.poly, f.p)
}

/// Certifies irreducibility over every unramified `K` when, for some shift
/// `c ∈ {0, …, p-1}`, all roots of `f(x + c)` have valuation `a/p` with
/// `p ∤ a`; such roots generate totally ramified extensions of degree `p`.
/// Never claims reducibility.
pub fn irreducibility_certificate(f: &InputPolynomial, _k: &BaseField) -> Irreducibility {
    let certified = (0..f.p).any(|c| {
        let g = f.poly.shift(&Rational::from_integer(c.into()));
        NewtonPolygon::of(&g, f.p)
            .ok()
            .and_then(|np| np.single_valuation().map(|w| *w.denom() == f.p.into()))
            .unwrap_or(false)
    });
    if certified {
        Irreducibility::CertifiedTotallyRamified
    } else {
        Irreducibility::Undetermined
    }
}

/// Decides whether all pairwise root differences share one valuation, via the
/// Newton polygon of `D(x) = Res_y(f(y), f(x + y)) / x^p`.
pub fn difference_root_valuations(f: &InputPolynomial) -> Result<SingleCluster> {
    if poly_discriminant(f).is_zero() {
        return Err(Error::Usage("f is not squarefree; root differences degenerate".into()));
    }
    let d = resultant::difference_polynomial(&f.poly);
    let np = NewtonPolygon::of(&d, f.p).map_err(|e| Error::Internal(format!("difference polynomial: {e}")))?;
    Ok(match np.single_valuation() {
        Some(w) => SingleCluster::Yes(w.clone()),
        None => SingleCluster::No,
    })
}

pub fn validate_assumptions(f: &InputPolynomial, k: &BaseField) -> Result<AssumptionReport> {
    if k.p != f.p {
        return Err(Error::Usage(format!("base field prime {} differs from p = {}", k.p, f.p)));
    }
    let discriminant = poly_discriminant(f);
    let squarefree = !discriminant.is_zero();
    let disc_valuation = valuation(&discriminant, f.p);
    let irreducibility = if squarefree {
        irreducibility_certificate(f, k)
    } else {
        Irreducibility::Undetermined
    };
    let gcd_condition = disc_valuation.is_some_and(|v| gcd_u64(v.unsigned_abs(), f.p - 1) == 1);
    let disc_valuation_odd = disc_valuation.is_some_and(|v| v % 2 != 0);
    let single_cluster = if squarefree && f.p <= CLUSTER_MAX_P {
        difference_root_valuations(f)?
    } else {
        SingleCluster::NotComputed
    };
    let maximal_inertia = squarefree
        && irreducibility == Irreducibility::CertifiedTotallyRamified
        && gcd_condition
        && single_cluster != SingleCluster::No;
    Ok(AssumptionReport {
        discriminant,
        disc_valuation,
        squarefree,
        irreducibility,
        gcd_condition,
        disc_valuation_odd,
        single_cluster,
        maximal_inertia,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conductor {
    /// `N = v_K(Δ_{K(α)/K})`; `shift` is the `c` making `f(x + c)` Eisenstein.
    Computed { exponent: u64, shift: u64 },
    NotComputed,
}

impl Serialize for Conductor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            status: &'static str,
            #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
            n: Option<u64>,
            #[serde(skip_serializing_if = "Option::is_none")]
            shift: Option<u64>,
        }
        match self {
            Conductor::Computed { exponent, shift } => Wire {
                status: "Computed",
                n: Some(*exponent),
                shift: Some(*shift),
            },
            Conductor::NotComputed => Wire {
                status: "NotComputed",
                n: None,
                shift: None,
            },
        }
        .serialize(s)
    }
}

fn is_eisenstein(g: &QPoly, p: u64) -> bool {
    let deg = g.degree().unwrap_or(0);
    g.coeff(deg).is_one()
        && valuation(&g.coeff(0), p) == Some(1)
        && (1..deg).all(|i| {
            let c = g.coeff(i);
            c.is_zero() || valuation(&c, p).is_some_and(|v| v >= 1)
        })
}

/// The conductor exponent in the monogenic case: if `f(x + c)` is
/// Eisenstein for some `c ∈ {0, …, p-1}`, a root generates the ring of
/// integers of `K(α)` and `N = v_p(disc f)`.
pub fn conductor_exponent(f: &InputPolynomial, report: &AssumptionReport) -> Result<Conductor> {
    if !report.maximal_inertia {
        return Err(Error::Usage(
            "conductor requires an assumption report with maximal inertia".into(),
        ));
    }
    let v = report
        .disc_valuation
        .ok_or_else(|| Error::Internal("maximal inertia with zero discriminant".into()))?;
    for c in 0..f.p {
        let g = f.poly.shift(&Rational::from_integer(c.into()));
        if is_eisenstein(&g, f.p) {
            return Ok(Conductor::Computed {
                exponent: v as u64,
                shift: c,
            });
        }
    }
    Ok(Conductor::NotComputed)
}
