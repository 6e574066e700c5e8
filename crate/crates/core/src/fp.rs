//! Dense polynomials over a prime field `F_p`, `p < 2^32`, just enough for
//! distinct-degree factorization of a minimal polynomial mod `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Polynomial over `F_p`, ascending coefficients, no trailing zeros
/// (the zero polynomial is the empty vector).
pub(crate) type FpPoly = Vec<u64>;

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn reduce(coeffs: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    trim(coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// `a mod m`, `m` monic.
fn rem_monic(mut a: FpPoly, m: &[u64], p: u64) -> FpPoly {
    let dm = m.len() - 1;
    while a.len() > dm {
        let top = a.len() - 1;
        let c = a[top];
        if c != 0 {
            for (i, &mi) in m.iter().enumerate().take(dm) {
                let idx = top - dm + i;
                a[idx] = (a[idx] + (p - c) * mi % p) % p;
            }
        }
        a.pop();
    }
    trim(a)
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem_monic(prod, m, p)
}

/// `base^e mod m`.
pub(crate) fn pow_poly_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = rem_monic(vec![1], m, p);
    let mut b = rem_monic(base.to_vec(), m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, m, p);
        }
    }
    acc
}

fn make_monic(a: FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => a,
        Some(&1) => a,
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.into_iter().map(|c| c * inv % p).collect()
        }
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let ym = make_monic(y, p);
        let r = rem_monic(x, &ym, p);
        x = ym;
        y = r;
    }
    make_monic(x, p)
}

fn sub_x(a: &[u64], p: u64) -> FpPoly {
    let mut r = a.to_vec();
    if r.len() < 2 {
        r.resize(2, 0);
    }
    r[1] = (r[1] + p - 1) % p;
    trim(r)
}

/// Number of distinct irreducible factors of each degree `d = 1..=n` of the
/// monic `f` mod `p`, via `gcd(x^{p^d} - x, f)`; multiplicities are ignored.
pub(crate) fn distinct_degree_counts(f: &[u64], p: u64) -> Vec<u32> {
    let n = f.len() - 1;
    let mut counts = vec![0u32; n + 1];
    let x = vec![0, 1];
    let mut frob = x.clone();
    for d in 1..=n {
        frob = pow_poly_mod(&frob, p, f, p);
        let g = gcd(&sub_x(&frob, p), f, p);
        let deg = g.len().saturating_sub(1);
        let below: usize = (1..d).filter(|e| d % e == 0).map(|e| e * counts[e] as usize).sum();
        counts[d] = ((deg - below) / d) as u32;
    }
    counts
}

/// Number of distinct roots of `f` in `F_p`.
pub(crate) fn root_count(f: &[u64], p: u64) -> u32 {
    let frob = pow_poly_mod(&[0, 1], p, f, p);
    let g = gcd(&sub_x(&frob, p), f, p);
    g.len().saturating_sub(1) as u32
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
