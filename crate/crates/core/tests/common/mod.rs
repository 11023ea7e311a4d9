//! Independent oracles for the integration suites. Everything here takes a
//! different computational route from the library kernels it checks:
//! classical elimination instead of pseudoscalar algebra, index-list
//! manipulation instead of bitmask parity, graded product slices instead of
//! direct contraction kernels.

#![allow(dead_code)]

use gakit_core::euclidean::clifford_product;
use gakit_core::multivector::Multivector;
use gakit_core::BladeMask;

/// Determinant by Gaussian elimination with partial pivoting.
pub fn gauss_determinant(n: usize, flat: &[f64]) -> f64 {
    let mut m = flat.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if m[row * n + col].abs() > m[pivot * n + col].abs() {
                pivot = row;
            }
        }
        if m[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                m.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        det *= m[col * n + col];
        for row in col + 1..n {
            let f = m[row * n + col] / m[col * n + col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                m[row * n + k] -= f * m[col * n + k];
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan elimination; None when a pivot vanishes.
pub fn gauss_inverse(n: usize, flat: &[f64]) -> Option<Vec<f64>> {
    let mut m = flat.to_vec();
    let mut inv = vec![0.0; n * n];
    for j in 0..n {
        inv[j * n + j] = 1.0;
    }
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if m[row * n + col].abs() > m[pivot * n + col].abs() {
                pivot = row;
            }
        }
        let p = m[pivot * n + col];
        if p.abs() < 1e-300 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                m.swap(col * n + k, pivot * n + k);
                inv.swap(col * n + k, pivot * n + k);
            }
        }
        let p = m[col * n + col];
        for k in 0..n {
            m[col * n + k] /= p;
            inv[col * n + k] /= p;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = m[row * n + col];
            if f == 0.0 {
                continue;
            }
            for k in 0..n {
                m[row * n + k] -= f * m[col * n + k];
                inv[row * n + k] -= f * inv[col * n + k];
            }
        }
    }
    Some(inv)
}

/// Product of two fiducial basis blades by explicit index-list reduction:
/// concatenate the factor indices, bubble-sort with a sign flip per swap,
/// and cancel adjacent equal generators (each squares to +1). Independent
/// of the bitmask parity kernel.
pub fn blade_product_oracle(a: BladeMask, b: BladeMask) -> (f64, BladeMask) {
    let mut indices: Vec<u32> = (0..16).filter(|i| a & (1 << i) != 0).collect();
    indices.extend((0..16).filter(|i| b & (1 << i) != 0));
    let mut sign = 1.0;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < indices.len() {
            if indices[i] == indices[i + 1] {
                indices.drain(i..i + 2);
                changed = true;
            } else if indices[i] > indices[i + 1] {
                indices.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    let mut mask: BladeMask = 0;
    for idx in indices {
        mask |= 1 << idx;
    }
    (sign, mask)
}

/// Left contraction as the graded slices of the Clifford product:
/// sum over p <= q of the (q - p)-grade part of X_p Y_q.
pub fn contract_left_oracle(x: &Multivector, y: &Multivector) -> Multivector {
    let n = x.dim();
    let mut out = Multivector::zero(n);
    for p in 0..=n as u32 {
        let xp = x.grade_project(p);
        if xp.is_zero() {
            continue;
        }
        for q in p..=n as u32 {
            let yq = y.grade_project(q);
            if yq.is_zero() {
                continue;
            }
            out = &out + &clifford_product(&xp, &yq).grade_project(q - p);
        }
    }
    out
}

/// Right contraction as graded slices: sum over p >= q of the (p - q)-grade
/// part of X_p Y_q.
pub fn contract_right_oracle(x: &Multivector, y: &Multivector) -> Multivector {
    let n = x.dim();
    let mut out = Multivector::zero(n);
    for p in 0..=n as u32 {
        let xp = x.grade_project(p);
        if xp.is_zero() {
            continue;
        }
        for q in 0..=p {
            let yq = y.grade_project(q);
            if yq.is_zero() {
                continue;
            }
            out = &out + &clifford_product(&xp, &yq).grade_project(p - q);
        }
    }
    out
}

/// Scalar product as the grade-0 slice of rev(X_k) Y_k summed over grades.
pub fn scalar_product_oracle(x: &Multivector, y: &Multivector) -> f64 {
    let n = x.dim();
    let mut out = 0.0;
    for k in 0..=n as u32 {
        let xk = x.grade_project(k);
        let yk = y.grade_project(k);
        if xk.is_zero() || yk.is_zero() {
            continue;
        }
        out += clifford_product(&xk.reverse(), &yk).scalar_part();
    }
    out
}

/// Exterior product as the top-grade slices of the Clifford product.
pub fn wedge_oracle(x: &Multivector, y: &Multivector) -> Multivector {
    let n = x.dim();
    let mut out = Multivector::zero(n);
    for p in 0..=n as u32 {
        let xp = x.grade_project(p);
        if xp.is_zero() {
            continue;
        }
        for q in 0..=n as u32 - p {
            let yq = y.grade_project(q);
            if yq.is_zero() {
                continue;
            }
            out = &out + &clifford_product(&xp, &yq).grade_project(p + q);
        }
    }
    out
}
