//! Products of the Euclidean (orthonormal, positive-definite) algebra.
//!
//! The fiducial basis is orthonormal, so every product reduces to exact sign
//! bookkeeping on blade masks: the geometric product of basis blades is
//! `e_A e_B = canonical_reorder_sign(A, B) * e_(A xor B)`, with shared
//! factors contracting to +1. The exterior product keeps only disjoint
//! masks; the two one-sided contractions keep only nested masks. Every
//! kernel skips zero coefficients, so sparse inputs cost what they look
//! like.

use crate::blade::{canonical_reorder_sign, grade, BladeMask};
use crate::multivector::Multivector;

/// Geometric product of basis blades: sign and resulting mask.
#[inline]
pub fn clifford_blade(a: BladeMask, b: BladeMask) -> (i32, BladeMask) {
    (canonical_reorder_sign(a, b), a ^ b)
}

/// Exterior product. Antisymmetric on vectors, associative, grade-additive.
pub fn wedge(x: &Multivector, y: &Multivector) -> Multivector {
    assert_eq!(x.dim(), y.dim(), "dimension mismatch");
    let mut out = Multivector::zero(x.dim());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if a & b != 0 {
                continue;
            }
            let sign = canonical_reorder_sign(a, b);
            let mask = a | b;
            out.set_coeff(mask, out.coeff(mask) + sign as f64 * ca * cb);
        }
    }
    out
}

/// Euclidean scalar product. Basis blades are orthonormal, so this is the
/// coefficient dot product; blades of different grade or support contribute
/// nothing.
pub fn scalar_product(x: &Multivector, y: &Multivector) -> f64 {
    assert_eq!(x.dim(), y.dim(), "dimension mismatch");
    x.coeffs()
        .iter()
        .zip(y.coeffs())
        .map(|(&a, &b)| a * b)
        .sum()
}

/// Left contraction: `e_A` removes its factors from the front of `e_B`.
/// Nonzero on basis blades only when A is a subset of B, where it equals the
/// grade-(|B|-|A|) part of the geometric product.
pub fn contract_left(x: &Multivector, y: &Multivector) -> Multivector {
    assert_eq!(x.dim(), y.dim(), "dimension mismatch");
    let mut out = Multivector::zero(x.dim());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if a & !b != 0 {
                continue;
            }
            let sign = canonical_reorder_sign(a, b);
            let mask = b & !a;
            out.set_coeff(mask, out.coeff(mask) + sign as f64 * ca * cb);
        }
    }
    out
}

/// Right contraction: `e_B` removes its factors from the back of `e_A`.
/// Nonzero on basis blades only when B is a subset of A.
pub fn contract_right(x: &Multivector, y: &Multivector) -> Multivector {
    assert_eq!(x.dim(), y.dim(), "dimension mismatch");
    let mut out = Multivector::zero(x.dim());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if b & !a != 0 {
                continue;
            }
            let sign = canonical_reorder_sign(a, b);
            let mask = a & !b;
            out.set_coeff(mask, out.coeff(mask) + sign as f64 * ca * cb);
        }
    }
    out
}

/// Geometric (Clifford) product of the orthonormal algebra.
pub fn clifford_product(x: &Multivector, y: &Multivector) -> Multivector {
    assert_eq!(x.dim(), y.dim(), "dimension mismatch");
    let mut out = Multivector::zero(x.dim());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let (sign, mask) = clifford_blade(a, b);
            out.set_coeff(mask, out.coeff(mask) + sign as f64 * ca * cb);
        }
    }
    out
}

/// Commutator product `(XY - YX) / 2`.
pub fn commutator(x: &Multivector, y: &Multivector) -> Multivector {
    (&clifford_product(x, y) - &clifford_product(y, x)).scale(0.5)
}

/// Grade-k part of the geometric product, without forming the full product.
pub fn clifford_graded(x: &Multivector, y: &Multivector, k: u32) -> Multivector {
    assert_eq!(x.dim(), y.dim(), "dimension mismatch");
    let mut out = Multivector::zero(x.dim());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let (sign, mask) = clifford_blade(a, b);
            if grade(mask) != k {
                continue;
            }
            out.set_coeff(mask, out.coeff(mask) + sign as f64 * ca * cb);
        }
    }
    out
}
