//! Small dense linear algebra: exact Bareiss determinants, rational solves,
//! and floating-point LU / Cholesky for the enumeration geometry.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Fraction-free Gaussian elimination. Exact for integer matrices.
pub fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Bareiss determinant in `i128`; `None` on overflow.
pub fn det_i128(m: &mut [i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            let i = (k + 1..n).find(|&i| m[i * n + k] != 0)?;
            for j in 0..n {
                m.swap(k * n + j, i * n + j);
            }
            negate = !negate;
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            let lead = m[i * n + k];
            for j in k + 1..n {
                let v = m[i * n + j].checked_mul(pivot)?.checked_sub(lead.checked_mul(m[k * n + j])?)?;
                m[i * n + j] = v / prev;
            }
        }
        prev = pivot;
    }
    let d = m[n * n - 1];
    Some(if negate { -d } else { d })
}

/// Solves `a x = b` over the rationals. `None` if `a` is singular.
pub fn solve_rational(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter().cloned().chain(std::iter::once(bi.clone())).map(BigRational::from_integer).collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let inv = m[k][k].recip();
        for v in m[k].iter_mut().skip(k) {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..=n {
                    let t = &m[k][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Determinant by LU with partial pivoting.
pub fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs())).unwrap();
        if m[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan with partial pivoting.
pub fn inverse_f64(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs()))?;
        if m[p][k] == 0.0 {
            return None;
        }
        m.swap(p, k);
        let inv = 1.0 / m[k][k];
        for v in m[k].iter_mut() {
            *v *= inv;
        }
        for i in 0..n {
            if i != k {
                let f = m[i][k];
                if f != 0.0 {
                    for j in 0..2 * n {
                        m[i][j] -= f * m[k][j];
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Cholesky factor in the form used by Fincke-Pohst: returns `q` with
/// `x^T G x = Σ_i q[i][i] (x_i + Σ_{j>i} q[i][j] x_j)^2`.
pub fn fincke_pohst_form(g: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = g.len();
    let mut q = g.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
        if q[i][i] <= 0.0 {
            return None;
        }
    }
    Some(q)
}

pub fn abs_sum(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}
