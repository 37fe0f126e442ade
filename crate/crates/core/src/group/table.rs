use std::sync::Arc;

use serde::Serialize;

use super::{build_group, conjugacy_classes, pow_mod, ClassData, ConjugacyClass, GroupElement, GroupSpec, Variant};
use crate::error::{Error, Result};
use crate::exact::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::exact::rational::Rational;

/// Characters of `⟨ν, φ⟩ ≅ C_2²`, as `(ξ(ν), ξ(φ))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Xi {
    #[serde(rename = "xi1")]
    Xi1,
    #[serde(rename = "xi2")]
    Xi2,
    #[serde(rename = "xi3")]
    Xi3,
    #[serde(rename = "xi4")]
    Xi4,
}

impl Xi {
    pub const ALL: [Xi; 4] = [Xi::Xi1, Xi::Xi2, Xi::Xi3, Xi::Xi4];

    pub fn nu(self) -> i8 {
        match self {
            Xi::Xi1 | Xi::Xi2 => 1,
            Xi::Xi3 | Xi::Xi4 => -1,
        }
    }

    pub fn phi(self) -> i8 {
        match self {
            Xi::Xi1 | Xi::Xi3 => 1,
            Xi::Xi2 | Xi::Xi4 => -1,
        }
    }

    pub fn index(self) -> usize {
        self as usize + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InducingSubgroup {
    /// `C_p × ⟨ν⟩` inside the inertia group.
    #[serde(rename = "C2p")]
    C2p,
    /// `C_p × ⟨ν, φ⟩` inside the full group.
    #[serde(rename = "CpxC2^2")]
    CpxC2sq,
}

/// A linear character of the inducing subgroup, given on generators:
/// `σ ↦ ζ_p^eta_exp`, `ν ↦ nu`, `φ ↦ phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InnerCharacter {
    pub eta_exp: u64,
    pub nu: i8,
    pub phi: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Construction {
    LiftedFromQuotient,
    #[serde(rename_all = "camelCase")]
    Induced {
        subgroup: InducingSubgroup,
        orbit_char: &'static str,
        xi: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub label: String,
    pub dimension: u64,
    pub faithful: bool,
    pub construction: Construction,
    pub values: Vec<CyclotomicNumber>,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group: GroupSpec,
    pub classes: ClassData,
    pub field: Arc<CyclotomicField>,
    pub rows: Vec<CharacterRow>,
}

/// `ζ_p^a` and `ζ_{2(p-1)}^c` as powers of `ζ_M`, `M = 2p(p-1)`.
struct Roots {
    field: Arc<CyclotomicField>,
    p: u64,
}

impl Roots {
    fn zeta_p(&self, a: u64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(&self.field, (a * 2 * (self.p - 1)) as i64)
    }

    fn zeta_tau(&self, c: u64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(&self.field, (c * self.p) as i64)
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    match pow_mod(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// `g_p = Σ_{a=1}^{p-1} (a/p) ζ_p^a` in `Q(ζ_p)`.
pub fn gauss_sum(p: u64) -> CyclotomicNumber {
    let field = CyclotomicField::new(p as u32);
    let mut g = CyclotomicNumber::zero(&field);
    for a in 1..p {
        let z = CyclotomicNumber::zeta_pow(&field, a as i64);
        g = if legendre(a, p) == 1 { &g + &z } else { &g - &z };
    }
    g
}

fn in_subgroup(g: &GroupSpec, sub: InducingSubgroup, x: &GroupElement) -> bool {
    let j_ok = x.j == 0 || x.j == g.p() - 1;
    match sub {
        InducingSubgroup::C2p => j_ok && x.k == 0,
        InducingSubgroup::CpxC2sq => j_ok,
    }
}

/// Values of `Ind_S^G(inner)` on the class representatives, summing over the
/// coset representatives `τ, τ², …, τ^{p-1}`.
pub fn induced_character(
    g: &GroupSpec,
    classes: &ClassData,
    field: &Arc<CyclotomicField>,
    sub: InducingSubgroup,
    inner: &InnerCharacter,
) -> Result<Vec<CyclotomicNumber>> {
    match (g.variant(), sub) {
        (Variant::Inertia, InducingSubgroup::C2p) | (Variant::Full, InducingSubgroup::CpxC2sq) => {}
        _ => {
            return Err(Error::Usage(format!(
                "subgroup {sub:?} does not have coset representatives τ..τ^(p-1) in the {:?} group",
                g.variant()
            )))
        }
    }
    if inner.nu.abs() != 1 || inner.phi.abs() != 1 {
        return Err(Error::Usage("inner character values on ν and φ must be ±1".into()));
    }
    if sub == InducingSubgroup::C2p && inner.phi != 1 {
        return Err(Error::Usage("C2p contains no φ".into()));
    }
    if !(field.conductor() as u64).is_multiple_of(2 * g.p() * (g.p() - 1)) {
        return Err(Error::Usage("field conductor must be a multiple of 2p(p-1)".into()));
    }
    let roots = Roots { field: field.clone(), p: g.p() };
    let inner_at = |x: &GroupElement| {
        let mut v = roots.zeta_p(inner.eta_exp * x.i % g.p());
        if x.j != 0 && inner.nu == -1 {
            v = -&v;
        }
        if x.k == 1 && inner.phi == -1 {
            v = -&v;
        }
        v
    };
    let reps: Vec<GroupElement> = (1..g.p()).map(|t| GroupElement::new(0, t, 0)).collect();
    Ok(classes
        .classes
        .iter()
        .map(|c| {
            reps.iter()
                .map(|t| g.conjugate(t, &c.representative))
                .filter(|y| in_subgroup(g, sub, y))
                .fold(CyclotomicNumber::zero(field), |acc, y| &acc + &inner_at(&y))
        })
        .collect())
}

/// Number of elements `s` with `χ(s) = χ(1)`.
pub fn faithful_kernel(classes: &ClassData, values: &[CyclotomicNumber]) -> usize {
    classes
        .classes
        .iter()
        .zip(values)
        .filter(|(_, v)| **v == values[0])
        .map(|(c, _)| c.size)
        .sum()
}

fn make_row(
    classes: &ClassData,
    label: String,
    construction: Construction,
    values: Vec<CyclotomicNumber>,
) -> Result<CharacterRow> {
    let dimension = values[0]
        .as_rational()
        .filter(|d| d.is_integer())
        .and_then(|d| u64::try_from(d.to_integer()).ok())
        .ok_or_else(|| Error::Internal(format!("row {label} has non-integral degree")))?;
    let faithful = faithful_kernel(classes, &values) == 1;
    Ok(CharacterRow { label, dimension, faithful, construction, values })
}

/// Complete character table, built from the Serre construction for
/// `A ⋊ H` with `A = C_p`. Rows are ordered by dimension, then by
/// construction parameters; every value lives in `Q(ζ_{2p(p-1)})`.
pub fn character_table(g: &GroupSpec) -> Result<CharacterTable> {
    let p = g.p();
    let t = g.tau_order();
    let classes = conjugacy_classes(g);
    let field = CyclotomicField::new((2 * p * (p - 1)) as u32);
    let roots = Roots { field: field.clone(), p };
    let reps: Vec<GroupElement> = classes.classes.iter().map(|c| c.representative).collect();
    let mut rows = Vec::new();
    match g.variant() {
        Variant::Inertia => {
            for r in 0..t {
                let values = reps.iter().map(|x| roots.zeta_tau(r * x.j % t)).collect();
                rows.push(make_row(&classes, format!("lambda_{r}"), Construction::LiftedFromQuotient, values)?);
            }
            for (nu, xi, label) in [(1, "1", "Ind(eta)"), (-1, "sgn", "Ind(eta*sgn)")] {
                let inner = InnerCharacter { eta_exp: 1, nu, phi: 1 };
                let values = induced_character(g, &classes, &field, InducingSubgroup::C2p, &inner)?;
                let construction = Construction::Induced { subgroup: InducingSubgroup::C2p, orbit_char: "eta", xi };
                rows.push(make_row(&classes, label.to_string(), construction, values)?);
            }
        }
        Variant::Full => {
            for r in (0..t).step_by(2) {
                for (eps, sign) in [(1i64, "+"), (-1, "-")] {
                    let values = reps
                        .iter()
                        .map(|x| {
                            let v = roots.zeta_tau(r * x.j % t);
                            if x.k == 1 && eps == -1 {
                                -&v
                            } else {
                                v
                            }
                        })
                        .collect();
                    rows.push(make_row(
                        &classes,
                        format!("lambda_{r}{sign}"),
                        Construction::LiftedFromQuotient,
                        values,
                    )?);
                }
            }
            for r in (1..p - 1).step_by(2) {
                let r2 = p * r % t;
                let values = reps
                    .iter()
                    .map(|x| {
                        if x.k == 1 {
                            CyclotomicNumber::zero(&field)
                        } else {
                            &roots.zeta_tau(r * x.j % t) + &roots.zeta_tau(r2 * x.j % t)
                        }
                    })
                    .collect();
                rows.push(make_row(&classes, format!("mu_{r}"), Construction::LiftedFromQuotient, values)?);
            }
            for xi in Xi::ALL {
                let inner = InnerCharacter { eta_exp: 1, nu: xi.nu(), phi: xi.phi() };
                let values = induced_character(g, &classes, &field, InducingSubgroup::CpxC2sq, &inner)?;
                let xi_label = ["xi1", "xi2", "xi3", "xi4"][xi.index() - 1];
                let construction = Construction::Induced {
                    subgroup: InducingSubgroup::CpxC2sq,
                    orbit_char: "eta",
                    xi: xi_label,
                };
                rows.push(make_row(&classes, format!("Ind({xi_label}*eta)"), construction, values)?);
            }
        }
    }
    rows.sort_by_key(|r| r.dimension);
    Ok(CharacterTable { group: g.clone(), classes, field, rows })
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn class_of(&self, x: &GroupElement) -> usize {
        self.classes.class_of[self.group.index(x)]
    }

    pub fn value(&self, row: usize, x: &GroupElement) -> &CyclotomicNumber {
        &self.rows[row].values[self.class_of(x)]
    }

    pub fn row_by_label(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.label == label)
    }

    pub fn sum_of_squared_dimensions(&self) -> u64 {
        self.rows.iter().map(|r| r.dimension * r.dimension).sum()
    }

    /// `⟨χ_r, χ_s⟩ = |G|⁻¹ Σ_C |C| χ_r(C) conj(χ_s(C))`.
    pub fn inner_product(&self, r: usize, s: usize) -> CyclotomicNumber {
        let a = &self.rows[r].values;
        let b = &self.rows[s].values;
        let mut acc = CyclotomicNumber::zero(&self.field);
        for ((c, x), y) in self.classes.classes.iter().zip(a).zip(b) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let term = (x * &y.conj()).scale(&Rational::from_integer(c.size.into()));
            acc = &acc + &term;
        }
        acc.scale(&Rational::new(1.into(), self.order().into()))
    }

    /// Exact check that the rows are orthonormal.
    pub fn is_orthonormal(&self) -> bool {
        let one = CyclotomicNumber::one(&self.field);
        (0..self.rows.len()).all(|r| {
            (r..self.rows.len()).all(|s| {
                let ip = self.inner_product(r, s);
                if r == s {
                    ip == one
                } else {
                    ip.is_zero()
                }
            })
        })
    }

    /// Dimension multiset as sorted `(dimension, count)` pairs.
    pub fn dimension_multiset(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for r in &self.rows {
            match out.last_mut() {
                Some((d, n)) if *d == r.dimension => *n += 1,
                _ => out.push((r.dimension, 1)),
            }
        }
        out
    }
}

impl Serialize for CharacterTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Group {
            p: u64,
            b: u64,
            variant: Variant,
            order: usize,
        }
        #[derive(Serialize)]
        struct Table<'a> {
            group: Group,
            conductor: u32,
            classes: &'a [ConjugacyClass],
            rows: &'a [CharacterRow],
        }
        Table {
            group: Group {
                p: self.group.p(),
                b: self.group.b(),
                variant: self.group.variant(),
                order: self.order(),
            },
            conductor: self.field.conductor(),
            classes: &self.classes.classes,
            rows: &self.rows,
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone)]
pub struct IdentifiedPsi {
    pub table: CharacterTable,
    pub row: usize,
}

impl IdentifiedPsi {
    pub fn character(&self) -> &CharacterRow {
        &self.table.rows[self.row]
    }

    /// `tr ψ(σφ)`; `None` on the inertia group.
    pub fn sigma_phi_value(&self) -> Option<&CyclotomicNumber> {
        let g = &self.table.group;
        let sf = g.mul(&g.sigma(), &g.phi()?);
        Some(self.table.value(self.row, &sf))
    }
}

/// Even `n`: the faithful `(p-1)`-dimensional row of the inertia table.
/// Odd `n`: the faithful `(p-1)`-dimensional row of the full table with
/// `tr ψ(σφ) = -g_p`.
pub fn identify_psi(p: u64, parity: Parity) -> Result<IdentifiedPsi> {
    let variant = match parity {
        Parity::Even => Variant::Inertia,
        Parity::Odd => Variant::Full,
    };
    let table = character_table(&build_group(p, variant)?)?;
    identify_psi_in(table, parity)
}

pub fn identify_psi_in(table: CharacterTable, parity: Parity) -> Result<IdentifiedPsi> {
    let g = &table.group;
    let p = g.p();
    let target = match (parity, g.phi()) {
        (Parity::Even, _) => None,
        (Parity::Odd, Some(phi)) => {
            let minus_g = -&gauss_sum(p).lift(&table.field)?;
            Some((table.class_of(&g.mul(&g.sigma(), &phi)), minus_g))
        }
        (Parity::Odd, None) => return Err(Error::Usage("odd parity needs the full group".into())),
    };
    let candidates: Vec<usize> = table
        .rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.faithful && r.dimension == p - 1)
        .filter(|(_, r)| target.as_ref().is_none_or(|(c, v)| r.values[*c] == *v))
        .map(|(i, _)| i)
        .collect();
    match candidates.as_slice() {
        [row] => {
            let row = *row;
            Ok(IdentifiedPsi { table, row })
        }
        _ => Err(Error::Internal(format!(
            "expected one candidate for psi, found {} (p = {p}, {parity:?})",
            candidates.len()
        ))),
    }
}
