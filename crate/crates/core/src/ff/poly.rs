//! Dense polynomials over `F_p` as coefficient vectors, constant term first.

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    crate::group::pow_mod(a, p - 2, p)
}

pub(crate) fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mc % p) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let li = inv_mod(l, p);
        a.iter_mut().for_each(|c| *c = *c * li % p);
    }
    a
}

/// `x^(p^d) mod m`, by `d` successive `p`-th powers of `x`.
pub(crate) fn x_pow_p_pow(m: &[u64], p: u64, d: usize) -> Vec<u64> {
    let mut r = rem(&[0, 1], m, p);
    for _ in 0..d {
        r = pow_rem(&r, p, m, p);
    }
    r
}

fn pow_rem(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = rem(a, m, p);
    let mut r = rem(&[1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &base, p), m, p);
        }
        base = rem(&mul(&base, &base, p), m, p);
        e >>= 1;
    }
    r
}

/// Irreducibility of a monic `g` of degree `m ≥ 1` over `F_p`.
pub(crate) fn is_irreducible(g: &[u64], p: u64) -> bool {
    let m = g.len() - 1;
    if !rem(&sub(&x_pow_p_pow(g, p, m), &[0, 1], p), g, p).is_empty() {
        return false;
    }
    (1..m).filter(|d| m.is_multiple_of(*d)).all(|d| {
        let h = sub(&x_pow_p_pow(g, p, d), &[0, 1], p);
        gcd(g, &h, p).len() == 1
    })
}
