//! The metacyclic groups `C_p ⋊ C_{2(p-1)}` (inertia) and
//! `C_p ⋊ (C_{2(p-1)} ⋊ C_2)` (full), their conjugacy classes and
//! character tables.

mod table;

pub use table::{
    character_table, faithful_kernel, gauss_sum, identify_psi, identify_psi_in, induced_character, CharacterRow,
    CharacterTable, Construction, IdentifiedPsi, InducingSubgroup, InnerCharacter, Parity, Xi,
};

use serde::Serialize;

use crate::error::{InputError, Result};
use crate::exact::rational::is_odd_prime;

/// Largest `p` accepted by [`build_group`].
pub const DEFAULT_GROUP_BOUND: u64 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Inertia,
    Full,
}

/// `σ^i τ^j φ^k` in normal form. Ordering is lexicographic on `(i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub i: u64,
    pub j: u64,
    pub k: u64,
}

impl GroupElement {
    pub const fn new(i: u64, j: u64, k: u64) -> Self {
        GroupElement { i, j, k }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i, self.j, self.k].serialize(s)
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    p: u64,
    b: u64,
    variant: Variant,
    /// `b^j mod p` for `0 ≤ j < 2(p-1)`.
    b_pow: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: GroupElement,
    pub size: usize,
}

pub fn smallest_primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % m as u128) as u64;
        }
        a = (a as u128 * a as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn build_group(p: u64, variant: Variant) -> Result<GroupSpec> {
    build_group_bounded(p, variant, DEFAULT_GROUP_BOUND)
}

pub fn build_group_bounded(p: u64, variant: Variant, bound: u64) -> Result<GroupSpec> {
    if !is_odd_prime(p) {
        return Err(InputError::NotOddPrime(p).into());
    }
    if p > bound {
        return Err(InputError::PrimeTooLarge { p, bound }.into());
    }
    let b = smallest_primitive_root(p);
    let b_pow = (0..2 * (p - 1)).map(|j| pow_mod(b, j, p)).collect();
    Ok(GroupSpec { p, b, variant, b_pow })
}

impl GroupSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Order of τ.
    pub fn tau_order(&self) -> u64 {
        2 * (self.p - 1)
    }

    fn phi_order(&self) -> u64 {
        match self.variant {
            Variant::Inertia => 1,
            Variant::Full => 2,
        }
    }

    pub fn order(&self) -> usize {
        (self.p * self.tau_order() * self.phi_order()) as usize
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(0, 0, 0)
    }

    pub fn sigma(&self) -> GroupElement {
        GroupElement::new(1, 0, 0)
    }

    pub fn tau(&self) -> GroupElement {
        GroupElement::new(0, 1, 0)
    }

    pub fn nu(&self) -> GroupElement {
        GroupElement::new(0, self.p - 1, 0)
    }

    /// `None` in the inertia group.
    pub fn phi(&self) -> Option<GroupElement> {
        (self.variant == Variant::Full).then(|| GroupElement::new(0, 0, 1))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.i < self.p && g.j < self.tau_order() && g.k < self.phi_order()
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let t = self.tau_order();
        let pk = if a.k == 1 { self.p % t } else { 1 };
        GroupElement {
            i: (a.i + self.b_pow[a.j as usize] * b.i) % self.p,
            j: (a.j + pk * b.j) % t,
            k: (a.k + b.k) % 2,
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        let t = self.tau_order();
        let pk = if a.k == 1 { self.p % t } else { 1 };
        let b_inv = self.b_pow[((t - a.j) % t) as usize];
        GroupElement {
            i: (self.p - b_inv * a.i % self.p) % self.p,
            j: (t - pk * a.j % t) % t,
            k: a.k,
        }
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, x: &GroupElement) -> GroupElement {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    pub fn pow(&self, g: &GroupElement, e: u64) -> GroupElement {
        (0..e).fold(self.identity(), |acc, _| self.mul(&acc, g))
    }

    /// Position of `g` in [`GroupSpec::elements`].
    pub fn index(&self, g: &GroupElement) -> usize {
        ((g.i * self.tau_order() + g.j) * self.phi_order() + g.k) as usize
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order());
        for i in 0..self.p {
            for j in 0..self.tau_order() {
                for k in 0..self.phi_order() {
                    out.push(GroupElement::new(i, j, k));
                }
            }
        }
        out
    }

    pub fn element_order(&self, g: &GroupElement) -> u64 {
        let mut x = *g;
        let mut n = 1;
        while x != self.identity() {
            x = self.mul(&x, g);
            n += 1;
        }
        n
    }
}

/// Classes sorted by representative, each represented by its least element,
/// together with the class index of every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
}

pub fn conjugacy_classes(g: &GroupSpec) -> ClassData {
    let elems = g.elements();
    let mut class_of = vec![usize::MAX; elems.len()];
    let mut classes = Vec::new();
    for x in &elems {
        if class_of[g.index(x)] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut size = 0;
        for h in &elems {
            let y = g.conjugate(h, x);
            let slot = &mut class_of[g.index(&y)];
            if *slot == usize::MAX {
                *slot = id;
                size += 1;
            }
        }
        // elements are visited in lex order, so x is the least of its class
        classes.push(ConjugacyClass { representative: *x, size });
    }
    ClassData { classes, class_of }
}
