use super::{build_field, FieldElement, FieldSpec};
use crate::error::{Error, Result};

/// Default bound on `np`, the degree of the ambient field.
pub const DEFAULT_MAX_AMBIENT_DEGREE: usize = 21;

/// A solution `x₀` of `x^q = x - 1` in `F_{q^p}`, `q = p^n`, together with an
/// `F_p`-basis of the copy of `F_q` inside the same field.
#[derive(Debug, Clone)]
pub struct FrobeniusSolution {
    pub ambient: FieldSpec,
    pub n: usize,
    pub q: u128,
    pub x0: FieldElement,
    pub subfield_basis: Vec<FieldElement>,
}

impl FrobeniusSolution {
    /// The `index`-th element of `F_q`: base-`p` digits of `index` as
    /// coordinates in the subfield basis.
    pub fn subfield_element(&self, mut index: u128) -> FieldElement {
        let f = &self.ambient;
        let mut acc = f.zero();
        for b in &self.subfield_basis {
            let c = (index % f.p() as u128) as u64;
            index /= f.p() as u128;
            if c != 0 {
                acc = f.add(&acc, &f.scale(b, c));
            }
        }
        acc
    }
}

pub fn frobenius_root_solve(p: u64, n: usize) -> Result<FrobeniusSolution> {
    frobenius_root_solve_bounded(p, n, DEFAULT_MAX_AMBIENT_DEGREE)
}

pub fn frobenius_root_solve_bounded(p: u64, n: usize, max_degree: usize) -> Result<FrobeniusSolution> {
    if n == 0 {
        return Err(crate::error::InputError::ZeroInertiaDegree.into());
    }
    let big_n = n.saturating_mul(p as usize);
    if big_n > max_degree {
        return Err(Error::BudgetExceeded { needed: big_n as u128, budget: max_degree as u128 });
    }
    let ambient = build_field(p, big_n)?;
    let q = (p as u128).pow(n as u32);

    // column i of Φ_q - I is (x^i)^q - x^i
    let columns: Vec<Vec<u64>> = (0..big_n)
        .map(|i| {
            let mut e = vec![0u64; i + 1];
            e[i] = 1;
            let xi = ambient.from_poly(&e);
            ambient.sub(&ambient.frobenius_pow(&xi, n), &xi).coeffs().to_vec()
        })
        .collect();
    let matrix: Vec<Vec<u64>> = (0..big_n).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    let rhs = ambient.from_int(-1).coeffs().to_vec();
    let (particular, kernel) = solve_affine(&matrix, &rhs, p)
        .ok_or_else(|| Error::Internal(format!("x^q - x = -1 has no solution in F_{p}^{big_n}")))?;

    let x0 = FieldElement { coeffs: particular };
    let expected = ambient.sub(&x0, &ambient.one());
    if ambient.pow(&x0, q) != expected {
        return Err(Error::Internal("Frobenius solve postcondition failed".into()));
    }
    if kernel.len() != n {
        return Err(Error::Internal(format!("fixed field of Φ_q has dimension {} != {n}", kernel.len())));
    }
    let subfield_basis = kernel.into_iter().map(|coeffs| FieldElement { coeffs }).collect();
    Ok(FrobeniusSolution { ambient, n, q, x0, subfield_basis })
}

/// Solves `A x = b` over `F_p`. Returns a particular solution (free
/// variables zero) and a kernel basis, or `None` if inconsistent.
pub(crate) fn solve_affine(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| row.iter().copied().chain(std::iter::once(bi)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = super::poly::inv_mod(m[r][c], p);
        m[r].iter_mut().for_each(|x| *x = *x * inv % p);
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut particular = vec![0u64; cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][cols];
    }
    let kernel = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = (p - m[i][free]) % p;
            }
            v
        })
        .collect();
    Some((particular, kernel))
}
