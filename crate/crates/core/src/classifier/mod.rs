//! The classification `ρ = χ ⊗ ψ` for a curve `y² = f(x)` with maximal
//! inertia over an unramified `K/Q_p`, cross-checked against point counts.

use serde::Serialize;

use crate::counting::{count_twisted_fixed, CountConfig};
use crate::error::{Error, Result};
use crate::exact::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::group::{
    build_group, character_table, gauss_sum, identify_psi_in, CharacterRow, ConjugacyClass, IdentifiedPsi, Parity,
    Variant,
};
use crate::padic::{conductor_exponent, validate_assumptions, AssumptionReport, BaseField, Conductor, InputPolynomial};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub p: u64,
    pub f: String,
    pub coefficients: Vec<String>,
    pub n: u32,
}

impl InputEcho {
    fn new(f: &InputPolynomial, k: &BaseField) -> Self {
        InputEcho {
            p: f.p(),
            f: f.poly().to_string(),
            coefficients: f.poly().to_strings(),
            n: k.n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupSummary {
    pub order: usize,
    pub b: u64,
    pub class_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Groups {
    pub inertia: GroupSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full: Option<GroupSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChiReport {
    /// `χ(Frob_K) = g_p^n`.
    pub frobenius_value: CyclotomicNumber,
    pub description: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PsiReport {
    pub group: Variant,
    #[serde(flatten)]
    pub row: CharacterRow,
    pub classes: Vec<ConjugacyClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_sigma_phi: Option<CyclotomicNumber>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    pub value: CyclotomicNumber,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigenvalues {
    pub dimension: u64,
    pub values: Vec<Eigenvalue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Verification {
    #[serde(rename_all = "camelCase")]
    Checked {
        trace_sigma_frob_counted: i128,
        trace_sigma_frob_predicted: CyclotomicNumber,
        #[serde(rename = "match")]
        matches: bool,
    },
    /// `n` even: `σ·Frob` does not occur.
    NotApplicable,
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub input: InputEcho,
    pub assumptions: AssumptionReport,
    pub groups: Groups,
    pub chi: ChiReport,
    pub psi: PsiReport,
    pub eigenvalues: Eigenvalues,
    pub conductor: Conductor,
    pub verification: Verification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefusalReport {
    pub schema: u32,
    pub status: &'static str,
    pub input: InputEcho,
    pub assumptions: AssumptionReport,
    pub failures: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Classification {
    Classified(Box<ClassificationReport>),
    Refused(Box<RefusalReport>),
}

impl Classification {
    pub fn report(&self) -> Option<&ClassificationReport> {
        match self {
            Classification::Classified(r) => Some(r),
            Classification::Refused(_) => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

impl ClassificationReport {
    /// `false` when the counted and predicted traces disagree.
    pub fn is_consistent(&self) -> bool {
        !matches!(self.verification, Verification::Checked { matches: false, .. })
    }
}

/// `(-1/p)·p`.
pub fn mu(p: u64) -> i64 {
    if p % 4 == 1 {
        p as i64
    } else {
        -(p as i64)
    }
}

fn summary(psi_table: &crate::group::CharacterTable) -> GroupSummary {
    GroupSummary {
        order: psi_table.order(),
        b: psi_table.group.b(),
        class_count: psi_table.classes.classes.len(),
    }
}

/// `χ(Frob) = g_p^n` in `Q(ζ_p)`.
pub fn chi_frobenius(p: u64, n: u32) -> CyclotomicNumber {
    gauss_sum(p).pow(n)
}

pub fn frobenius_eigenvalues(p: u64, n: u32) -> Eigenvalues {
    let field = CyclotomicField::new(p as u32);
    let g = (p - 1) / 2;
    let values = if n.is_multiple_of(2) {
        let v = CyclotomicNumber::from_integer(&field, mu(p).pow(n / 2));
        vec![Eigenvalue { value: v, multiplicity: 2 * g }]
    } else {
        let v = chi_frobenius(p, n);
        vec![
            Eigenvalue { value: v.clone(), multiplicity: g },
            Eigenvalue { value: -&v, multiplicity: g },
        ]
    };
    Eigenvalues { dimension: 2 * g, values }
}

fn predicted_trace(psi: &IdentifiedPsi, chi: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    let t = psi
        .sigma_phi_value()
        .ok_or_else(|| Error::Internal("σφ is not in the inertia group".into()))?;
    Ok(t * &chi.lift(&psi.table.field)?)
}

fn verification_block(psi: &IdentifiedPsi, p: u64, n: u32, cfg: &CountConfig) -> Result<Verification> {
    let chi = chi_frobenius(p, n);
    let predicted = predicted_trace(psi, &chi)?;
    let Some(predicted_int) = predicted.as_rational().filter(|r| r.is_integer()) else {
        return Err(Error::Internal(format!("predicted trace {predicted} is not a rational integer")));
    };
    let counted = match count_twisted_fixed(p, n as usize, cfg) {
        Ok(c) => c.trace_sigma_frob,
        Err(Error::BudgetExceeded { needed, budget }) => {
            return Ok(Verification::Skipped { reason: format!("budget exceeded: {needed} > {budget}") })
        }
        Err(e) => return Err(e),
    };
    let matches = predicted_int.to_integer() == counted.into();
    Ok(Verification::Checked {
        trace_sigma_frob_counted: counted,
        trace_sigma_frob_predicted: predicted,
        matches,
    })
}

/// The verification pass on its own: for odd `n`, compares
/// `tr ψ(σφ)·χ(Frob)` with the counted trace of `σ·Frob` on the model curve.
pub fn verify_consistency(p: u64, n: u32, cfg: &CountConfig) -> Result<Verification> {
    if n.is_multiple_of(2) {
        return Err(Error::Usage("verification needs odd n".into()));
    }
    let table = character_table(&build_group(p, Variant::Full)?)?;
    let psi = identify_psi_in(table, Parity::Odd)?;
    verification_block(&psi, p, n, cfg)
}

pub fn classify(f: &InputPolynomial, k: &BaseField, cfg: &CountConfig) -> Result<Classification> {
    let input = InputEcho::new(f, k);
    let assumptions = validate_assumptions(f, k)?;
    if !assumptions.maximal_inertia {
        let failures = assumptions.failures();
        return Ok(Classification::Refused(Box::new(RefusalReport {
            schema: SCHEMA_VERSION,
            status: "refused",
            input,
            assumptions,
            failures,
        })));
    }
    let p = f.p();
    let n = k.n;
    let parity = Parity::of(n as u64);

    let inertia_table = character_table(&build_group(p, Variant::Inertia)?)?;
    let inertia = summary(&inertia_table);
    let (psi, full) = match parity {
        Parity::Even => (identify_psi_in(inertia_table, parity)?, None),
        Parity::Odd => {
            let full_table = character_table(&build_group(p, Variant::Full)?)?;
            let full = summary(&full_table);
            (identify_psi_in(full_table, parity)?, Some(full))
        }
    };
    let row = psi.character().clone();
    if row.dimension != p - 1 || !row.faithful {
        return Err(Error::Internal(format!("selected ψ = {} is not faithful of dimension p-1", row.label)));
    }

    let chi = chi_frobenius(p, n);
    let chi_sq = &chi * &chi;
    if chi_sq.as_rational() != Some(crate::exact::rational::rational_from_i64(mu(p).pow(n))) {
        return Err(Error::Internal("χ(Frob)² differs from ((-1/p)p)^n".into()));
    }

    let verification = match parity {
        Parity::Even => Verification::NotApplicable,
        Parity::Odd => verification_block(&psi, p, n, cfg)?,
    };
    let conductor = conductor_exponent(f, &assumptions)?;
    let psi_report = PsiReport {
        group: psi.table.group.variant(),
        trace_sigma_phi: psi.sigma_phi_value().cloned(),
        classes: psi.table.classes.classes.clone(),
        row,
    };
    Ok(Classification::Classified(Box::new(ClassificationReport {
        schema: SCHEMA_VERSION,
        input,
        assumptions,
        groups: Groups { inertia, full },
        chi: ChiReport {
            frobenius_value: chi,
            description: "unramified character, trivial on inertia; independent of the prime l != p",
        },
        psi: psi_report,
        eigenvalues: frobenius_eigenvalues(p, n),
        conductor,
        verification,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::Rational;
    use crate::padic::Irreducibility;

    fn run(p: u64, f: &str, n: u32) -> Classification {
        let f = InputPolynomial::parse(p, f).unwrap();
        classify(&f, &BaseField::new(p, n).unwrap(), &CountConfig::default()).unwrap()
    }

    #[test]
    fn example_family_odd_degree() {
        let c = run(5, "x^5-5", 1);
        let r = c.report().unwrap();
        assert_eq!(r.psi.row.label, "Ind(xi4*eta)");
        let g5 = gauss_sum(5);
        assert_eq!(r.chi.frobenius_value, g5);
        let tsp = r.psi.trace_sigma_phi.as_ref().unwrap();
        assert_eq!(*tsp, -&g5.lift(tsp.field()).unwrap());
        assert_eq!(
            r.eigenvalues.values,
            vec![
                Eigenvalue { value: g5.clone(), multiplicity: 2 },
                Eigenvalue { value: -&g5, multiplicity: 2 }
            ]
        );
        assert_eq!(r.conductor, Conductor::Computed { exponent: 9, shift: 0 });
        assert!(matches!(
            r.verification,
            Verification::Checked { trace_sigma_frob_counted: -5, matches: true, .. }
        ));
        assert_eq!(r.groups.full.as_ref().unwrap().order, 80);
    }

    #[test]
    fn example_family_even_degree() {
        let c = run(5, "x^5-5", 2);
        let r = c.report().unwrap();
        assert_eq!(r.psi.group, Variant::Inertia);
        assert_eq!(r.psi.row.label, "Ind(eta*sgn)");
        assert_eq!(r.chi.frobenius_value.as_rational(), Some(Rational::from_integer(5.into())));
        assert_eq!(r.eigenvalues.values.len(), 1);
        assert_eq!(r.eigenvalues.values[0].multiplicity, 4);
        assert_eq!(r.eigenvalues.values[0].value.as_rational(), Some(Rational::from_integer(5.into())));
        assert_eq!(r.verification, Verification::NotApplicable);
        assert!(r.groups.full.is_none());
    }

    #[test]
    fn uncertified_input_is_refused() {
        let Classification::Refused(r) = run(5, "x^5+x+1", 1) else {
            panic!("expected a refusal");
        };
        assert_eq!(r.assumptions.irreducibility, Irreducibility::Undetermined);
        assert!(r.failures.contains(&"irreducibility"));
        // Eisenstein, but v_5(disc) = 8
        let Classification::Refused(r) = run(5, "x^5+5x^4+5", 1) else {
            panic!("expected a refusal");
        };
        assert_eq!(r.assumptions.disc_valuation, Some(8));
        assert!(r.failures.contains(&"gcdCondition"));
        assert!(!r.failures.contains(&"irreducibility"));
    }

    #[test]
    fn consistency_for_small_cases() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 3), (5, 3)] {
            let v = verify_consistency(p, n, &CountConfig::default()).unwrap();
            let Verification::Checked { trace_sigma_frob_counted, matches, .. } = v else {
                panic!("({p}, {n}) not checked");
            };
            assert!(matches, "({p}, {n})");
            assert_eq!(trace_sigma_frob_counted, crate::counting::expected_twisted_trace(p, n as usize));
        }
        assert!(verify_consistency(5, 2, &CountConfig::default()).is_err());
        let tight = CountConfig { coset_budget: 10, ..CountConfig::default() };
        assert!(matches!(verify_consistency(5, 3, &tight).unwrap(), Verification::Skipped { .. }));
    }

    #[test]
    fn eigenvalue_invariants() {
        for p in [3u64, 5, 7, 11, 13] {
            for n in 1..=4u32 {
                let e = frobenius_eigenvalues(p, n);
                let field = e.values[0].value.field().clone();
                let target = CyclotomicNumber::from_rational(&field, &Rational::from_integer(num_bigint::BigInt::from(mu(p)).pow(n)));
                let total: u64 = e.values.iter().map(|v| v.multiplicity).sum();
                assert_eq!(total, p - 1);
                for v in &e.values {
                    assert_eq!(&v.value * &v.value, target);
                }
                let det = e
                    .values
                    .iter()
                    .fold(CyclotomicNumber::one(&field), |acc, v| &acc * &v.value.pow(v.multiplicity as u32));
                let g = (p - 1) / 2;
                // det = p^{ng}, with sign (-1)^g on odd n from the ± pairing
                let mut expected = num_bigint::BigInt::from(mu(p)).pow(n * g as u32);
                if n % 2 == 1 && g % 2 == 1 {
                    expected = -expected;
                }
                assert_eq!(expected.magnitude(), &num_bigint::BigUint::from(p).pow(n * g as u32));
                assert_eq!(det, CyclotomicNumber::from_rational(&field, &Rational::from_integer(expected)));
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(7, "x^7-7", 1).to_json();
        let b = run(7, "x^7-7", 1).to_json();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        for key in ["schema", "input", "assumptions", "groups", "chi", "psi", "eigenvalues", "conductor", "verification"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["schema"], 1);
    }
}
