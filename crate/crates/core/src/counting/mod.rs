//! Point counts on `y² = x^p − x` over `F_{p^m}`, and fixed points of
//! `σ·Frob` on the same curve over `F_q`, `q = p^n`.

use serde::Serialize;

use crate::error::{Error, InputError, Result};
use crate::exact::rational::is_odd_prime;
use crate::ff::{build_field, frobenius_root_solve_bounded, FieldElement, FieldSpec};

pub const DEFAULT_CURVE_BUDGET: u128 = 10_000_000;
pub const DEFAULT_COSET_BUDGET: u128 = 1_000_000;
pub const DEFAULT_NAIVE_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountConfig {
    /// Largest `p^m` enumerated by [`count_curve`].
    pub curve_budget: u128,
    /// Largest `q` enumerated by [`count_twisted_fixed`].
    pub coset_budget: u128,
    /// Largest `p^{np}` scanned by [`naive_twisted_oracle`].
    pub naive_budget: u128,
    /// Largest `np` for the Frobenius solve.
    pub max_ambient_degree: usize,
    pub workers: usize,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            curve_budget: DEFAULT_CURVE_BUDGET,
            coset_budget: DEFAULT_COSET_BUDGET,
            naive_budget: DEFAULT_NAIVE_BUDGET,
            max_ambient_degree: crate::ff::DEFAULT_MAX_AMBIENT_DEGREE,
            workers: 1,
        }
    }
}

impl CountConfig {
    pub fn with_workers(self, workers: usize) -> Self {
        CountConfig { workers: workers.max(1), ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CountResult {
    pub p: u64,
    pub m: usize,
    pub affine: u128,
    pub total: u128,
    pub trace: i128,
}

impl CountResult {
    /// `trace² ≤ 4g²·p^m`, `g = (p-1)/2`.
    pub fn within_weil_bound(&self) -> bool {
        let q = (self.p as u128).pow(self.m as u32);
        let lhs = self.trace.unsigned_abs().checked_pow(2);
        lhs.zip((self.p as u128 - 1).pow(2).checked_mul(q)).is_some_and(|(l, r)| l <= r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwistedCountResult {
    pub p: u64,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: u128,
    pub affine_solutions: u128,
    pub trace_sigma_frob: i128,
}

impl TwistedCountResult {
    fn new(p: u64, n: usize, affine_solutions: u128) -> Self {
        let q = (p as u128).pow(n as u32);
        let a = affine_solutions + 1;
        TwistedCountResult { p, n, a, affine_solutions, trace_sigma_frob: q as i128 + 1 - a as i128 }
    }
}

/// `-((-1/p)·p)^((n+1)/2)` for odd `n`.
pub fn expected_twisted_trace(p: u64, n: usize) -> i128 {
    let mu = if p % 4 == 1 { p as i128 } else { -(p as i128) };
    -mu.pow(n.div_ceil(2) as u32)
}

fn check_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(InputError::NotOddPrime(p).into())
    }
}

fn field_size(p: u64, m: usize, budget: u128) -> Result<u128> {
    let size = u32::try_from(m).ok().and_then(|m| (p as u128).checked_pow(m));
    match size {
        Some(s) if s <= budget => Ok(s),
        Some(s) => Err(Error::BudgetExceeded { needed: s, budget }),
        None => Err(Error::BudgetExceeded { needed: u128::MAX, budget }),
    }
}

/// Sums `f(i)` over `0..len`, split into contiguous ranges across `workers`
/// threads. The total does not depend on the split.
fn partitioned_sum<F>(len: u128, workers: usize, f: F) -> Result<u128>
where
    F: Fn(u128) -> Result<u128> + Sync,
{
    let workers = (workers.max(1) as u128).min(len.max(1));
    let chunk = len.div_ceil(workers);
    let partials: Vec<Result<u128>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let f = &f;
                s.spawn(move || {
                    let (lo, hi) = (w * chunk, ((w + 1) * chunk).min(len));
                    (lo..hi).try_fold(0u128, |acc, i| Ok(acc + f(i)?))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Internal("counting worker panicked".into()))))
            .collect()
    });
    partials.into_iter().try_fold(0u128, |acc, r| Ok(acc + r?))
}

/// Coordinate matrix of `x ↦ x^p − x` on `F_{p^m}`; `rows[r][c]` is
/// coordinate `r` of the image of `x^c`.
fn artin_schreier_matrix(f: &FieldSpec) -> Vec<Vec<u64>> {
    let m = f.degree();
    let cols: Vec<Vec<u64>> = (0..m)
        .map(|c| {
            let mut e = vec![0u64; c + 1];
            e[c] = 1;
            let x = f.from_poly(&e);
            f.sub(&f.frobenius(&x), &x).coeffs().to_vec()
        })
        .collect();
    (0..m).map(|r| cols.iter().map(|col| col[r]).collect()).collect()
}

/// `#{(x, y) ∈ F_{p^m}² : y² = x^p − x}` as `Σ_x (1 + χ(x^p − x))`.
pub fn count_curve(p: u64, m: usize, cfg: &CountConfig) -> Result<CountResult> {
    check_prime(p)?;
    if m == 0 {
        return Err(Error::Usage("m must be positive".into()));
    }
    let q = field_size(p, m, cfg.curve_budget)?;
    let f = build_field(p, m)?;

    // squareness by table lookup: mark y² for every y
    let mut is_square = vec![false; q as usize];
    for idx in 1..q {
        let y = f.element(idx);
        is_square[f.index_of(&f.square(&y)) as usize] = true;
    }
    let rows = artin_schreier_matrix(&f);
    let affine = partitioned_sum(q, cfg.workers, |idx| {
        let x = f.element(idx);
        let mut t = 0u128;
        for row in rows.iter().rev() {
            let c = row.iter().zip(x.coeffs()).map(|(a, b)| a * b).sum::<u64>() % p;
            t = t * p as u128 + c as u128;
        }
        Ok(if t == 0 {
            1
        } else if is_square[t as usize] {
            2
        } else {
            0
        })
    })?;
    Ok(CountResult { p, m, affine, total: affine + 1, trace: q as i128 - affine as i128 })
}

/// Affine solutions of `x = x^q + 1`, `y = y^q`, `y² = x^p − x`, enumerated
/// over the coset `x₀ + F_q` of solutions of the first equation.
pub fn count_twisted_fixed(p: u64, n: usize, cfg: &CountConfig) -> Result<TwistedCountResult> {
    check_prime(p)?;
    if n.is_multiple_of(2) {
        return Err(Error::Usage("the twisted count is only defined for odd n".into()));
    }
    let q = field_size(p, n, cfg.coset_budget)?;
    let sol = frobenius_root_solve_bounded(p, n, cfg.max_ambient_degree)?;
    let f = &sol.ambient;
    let one = f.one();
    let minus_one = f.from_int(-1);
    let affine = partitioned_sum(q, cfg.workers, |idx| {
        let x = f.add(&sol.x0, &sol.subfield_element(idx));
        let t = f.sub(&f.frobenius(&x), &x);
        if t.is_zero() {
            return Err(Error::Internal("x^p - x vanished on a solution of x^q = x - 1".into()));
        }
        if (cfg!(debug_assertions) || idx % 64 == 0) && f.pow(&t, q) != t {
            return Err(Error::Internal("x^p - x does not lie in F_q".into()));
        }
        let e = f.pow(&t, (q - 1) / 2);
        if e == one {
            Ok(2)
        } else if e == minus_one {
            Ok(0)
        } else {
            Err(Error::Internal("Euler criterion returned a non-sign".into()))
        }
    })?;
    Ok(TwistedCountResult::new(p, n, affine))
}

/// The same count by scanning the whole of `F_{p^{np}}`: every `x` with
/// `x^q = x − 1` against every `y` with `y^q = y`.
pub fn naive_twisted_oracle(p: u64, n: usize, cfg: &CountConfig) -> Result<TwistedCountResult> {
    check_prime(p)?;
    if n == 0 {
        return Err(InputError::ZeroInertiaDegree.into());
    }
    let big_n = n * p as usize;
    let size = field_size(p, big_n, cfg.naive_budget)?;
    let q = (p as u128).pow(n as u32);
    let f = build_field(p, big_n)?;
    let scan = |pred: &(dyn Fn(&FieldElement) -> bool + Sync)| -> Vec<FieldElement> {
        let workers = cfg.workers.max(1) as u128;
        let chunk = size.div_ceil(workers);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let f = &f;
                    s.spawn(move || {
                        (w * chunk..((w + 1) * chunk).min(size))
                            .map(|i| f.element(i))
                            .filter(|e| pred(e))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("scan worker panicked")).collect()
        })
    };
    let one = f.one();
    let xs = scan(&|x| f.pow(x, q) == f.sub(x, &one));
    let ys = scan(&|y| f.pow(y, q) == *y);
    let mut squares = std::collections::HashMap::<FieldElement, u128>::new();
    for y in &ys {
        *squares.entry(f.square(y)).or_default() += 1;
    }
    let affine = xs
        .iter()
        .map(|x| squares.get(&f.sub(&f.frobenius(x), x)).copied().unwrap_or(0))
        .sum();
    Ok(TwistedCountResult::new(p, n, affine))
}
