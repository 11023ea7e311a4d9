//! Metric deformation: orthogonal involution operators of any signature,
//! the gauge operator h factoring a metric as g = h_adj o eta o h, the
//! transport ("golden") product route that reproduces every metric product
//! through a flat algebra, and the deformed / gauge / tetrad frames.

use crate::error::{GaError, Result};
use crate::euclidean::clifford_product;
use crate::extensor::LinOp11;
use crate::linalg::jacobi_eigen_sym;
use crate::metric::{MetricExtensor, MetricTensor, ProductKind};
use crate::multivector::Multivector;

/// Largest tolerated deviation of b.b from 1 for reflection axes.
pub const UNIT_TOLERANCE: f64 = 1e-10;

/// Largest tolerated deviation of a frame Gram matrix from the identity.
pub const FRAME_TOLERANCE: f64 = 1e-10;

/// Bound on the congruence residual ||h_adj o eta o h - g||_max for a gauge
/// operator to count as valid.
pub const GAUGE_RESIDUAL_TOLERANCE: f64 = 1e-8;

/// Spectral decomposition of a symmetric operator: eigenvalues sorted
/// descending, eigenvectors orthonormal and sign-fixed (largest-magnitude
/// coordinate positive, ties to the lowest index) so results are
/// deterministic across runs.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    dim: usize,
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn compute(dim: usize, matrix: &[f64]) -> Result<EigenDecomposition> {
        let (values, vectors) = jacobi_eigen_sym(dim, matrix)?;
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("finite eigenvalues"));
        let mut sorted_values = Vec::with_capacity(dim);
        let mut sorted_vectors = Vec::with_capacity(dim);
        for &idx in &order {
            let mut v = vectors[idx].clone();
            let mut lead = 0;
            for (i, x) in v.iter().enumerate() {
                if x.abs() > v[lead].abs() {
                    lead = i;
                }
            }
            if v[lead] < 0.0 {
                for x in v.iter_mut() {
                    *x = -*x;
                }
            }
            sorted_values.push(values[idx]);
            sorted_vectors.push(v);
        }
        Ok(EigenDecomposition {
            dim,
            values: sorted_values,
            vectors: sorted_vectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    /// Rebuilds the operator as sum of lambda_k v_k v_k^T, flat row-major.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for k in 0..n {
            let v = &self.vectors[k];
            let lam = self.values[k];
            for j in 0..n {
                for l in 0..n {
                    out[j * n + l] += lam * v[j] * v[l];
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a metric operator.
pub fn jacobi_eigendecompose(g: &MetricExtensor) -> Result<EigenDecomposition> {
    EigenDecomposition::compute(g.dim(), g.op().flat())
}

fn check_orthonormal(frame: &[Vec<f64>]) -> Result<()> {
    let n = frame.len();
    if frame.iter().any(|b| b.len() != n) {
        return Err(GaError::InvalidForm(
            "frame vectors must match the frame size".into(),
        ));
    }
    let mut deviation = 0.0f64;
    for j in 0..n {
        for k in j..n {
            let dot: f64 = frame[j].iter().zip(&frame[k]).map(|(a, b)| a * b).sum();
            let want = if j == k { 1.0 } else { 0.0 };
            deviation = deviation.max((dot - want).abs());
        }
    }
    if deviation > FRAME_TOLERANCE {
        return Err(GaError::NotOrthonormalFrame {
            deviation,
            tolerance: FRAME_TOLERANCE,
        });
    }
    Ok(())
}

/// Reflection-type involution fixing the axis b and negating its orthogonal
/// complement: the matrix 2 b b^T - I. Symmetric, orthogonal, determinant
/// (-1)^(n-1).
pub fn eta_from_vector(b: &[f64]) -> Result<MetricExtensor> {
    let n = b.len();
    if n == 0 || n > crate::blade::MAX_DIM {
        return Err(GaError::DimensionOutOfRange(n));
    }
    let norm_sq: f64 = b.iter().map(|x| x * x).sum();
    let deviation = (norm_sq - 1.0).abs();
    if deviation > UNIT_TOLERANCE {
        return Err(GaError::NotUnitVector {
            deviation,
            tolerance: UNIT_TOLERANCE,
        });
    }
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| 2.0 * b[j] * b[k] - if j == k { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    MetricExtensor::new(MetricTensor::new(n, &rows)?)
}

/// Involution with +1 on the span of the first p frame vectors and -1 on
/// the rest: sum of b_k b_k^T for k <= p minus the same for k > p.
/// Symmetric, orthogonal, determinant (-1)^(n-p).
pub fn eta_signature(p: usize, frame: &[Vec<f64>]) -> Result<MetricExtensor> {
    let n = frame.len();
    if n == 0 || n > crate::blade::MAX_DIM {
        return Err(GaError::DimensionOutOfRange(n));
    }
    if p > n {
        return Err(GaError::InvalidForm(format!(
            "positive count {p} exceeds dimension {n}"
        )));
    }
    check_orthonormal(frame)?;
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let mut s = 0.0;
                    for (m, b) in frame.iter().enumerate() {
                        let sign = if m < p { 1.0 } else { -1.0 };
                        s += sign * b[j] * b[k];
                    }
                    s
                })
                .collect()
        })
        .collect();
    MetricExtensor::new(MetricTensor::new(n, &rows)?)
}

fn frame_versor(p: usize, frame: &[Vec<f64>], dim: usize) -> Multivector {
    let mut versor = Multivector::scalar(dim, 1.0);
    for b in frame.iter().take(p) {
        versor = clifford_product(&versor, &Multivector::vector(dim, b));
    }
    versor
}

/// Signature involution applied to a vector through the fiducial Clifford
/// sandwich instead of the matrix: with B the Clifford product of the first
/// p frame vectors, `eta(v) = (-1)^(p+1) B v rev(B)`. At p = 0 this is -v.
/// The independent second path to [`eta_signature`] acting as a matrix.
pub fn eta_sandwich_apply(p: usize, frame: &[Vec<f64>], v: &Multivector) -> Result<Multivector> {
    let n = frame.len();
    if p > n {
        return Err(GaError::InvalidForm(format!(
            "positive count {p} exceeds dimension {n}"
        )));
    }
    check_orthonormal(frame)?;
    assert_eq!(v.dim(), n, "dimension mismatch");
    let versor = frame_versor(p, frame, n);
    let sign = if p % 2 == 0 { -1.0 } else { 1.0 };
    let sandwich = clifford_product(&clifford_product(&versor, v), &versor.reverse());
    Ok(sandwich.scale(sign).grade_project(1))
}

/// Outermorphism extension of the signature involution via the sandwich:
/// grade-k parts pick up the k-th power of the vector sign, so
/// `eta(X_k) = ((-1)^(p+1))^k B X_k rev(B)` grade by grade.
pub fn eta_sandwich_extend_apply(
    p: usize,
    frame: &[Vec<f64>],
    x: &Multivector,
) -> Result<Multivector> {
    let n = frame.len();
    if p > n {
        return Err(GaError::InvalidForm(format!(
            "positive count {p} exceeds dimension {n}"
        )));
    }
    check_orthonormal(frame)?;
    assert_eq!(x.dim(), n, "dimension mismatch");
    let versor = frame_versor(p, frame, n);
    let sandwich = clifford_product(&clifford_product(&versor, x), &versor.reverse());
    let vector_sign: f64 = if p % 2 == 0 { -1.0 } else { 1.0 };
    let mut out = Multivector::zero(n);
    for k in 0..=n as u32 {
        let part = sandwich.grade_project(k);
        if part.is_zero() {
            continue;
        }
        out = &out + &part.scale(vector_sign.powi(k as i32));
    }
    Ok(out)
}

/// Gauge operator for a metric: a nonsingular h with
/// `g = h_adj o eta o h` for a chosen flat metric eta of the same
/// signature. Built eagerly with its inverse, adjoint, determinant, the
/// eta eigenframe used for the pairing, and the achieved congruence
/// residual; immutable afterwards.
#[derive(Clone, Debug)]
pub struct GaugeExtensor {
    h: LinOp11,
    h_inv: LinOp11,
    h_adj: LinOp11,
    h_adj_inv: LinOp11,
    det_h: f64,
    residual: f64,
    g: MetricExtensor,
    eta: MetricExtensor,
    eta_frame: Vec<Vec<f64>>,
}

impl GaugeExtensor {
    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn h(&self) -> &LinOp11 {
        &self.h
    }

    pub fn h_inv(&self) -> &LinOp11 {
        &self.h_inv
    }

    pub fn h_adj(&self) -> &LinOp11 {
        &self.h_adj
    }

    /// (h_adj)^-1, the operator often written h-star.
    pub fn h_adj_inv(&self) -> &LinOp11 {
        &self.h_adj_inv
    }

    pub fn det_h(&self) -> f64 {
        self.det_h
    }

    /// Achieved ||h_adj o eta o h - g||_max.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn g(&self) -> &MetricExtensor {
        &self.g
    }

    pub fn eta(&self) -> &MetricExtensor {
        &self.eta
    }

    /// Orthonormal eta eigenframe (descending eigenvalues) the pairing used.
    pub fn eta_frame(&self) -> &[Vec<f64>] {
        &self.eta_frame
    }
}

/// Flat diagonal metric with p leading +1 entries and q trailing -1.
pub fn default_eta(p: usize, q: usize) -> MetricExtensor {
    let mut diag = vec![1.0; p + q];
    for d in diag.iter_mut().skip(p) {
        *d = -1.0;
    }
    MetricExtensor::new(MetricTensor::diagonal(&diag)).expect("unit diagonal metric")
}

/// Builds the gauge operator for g against a flat metric eta of equal
/// signature. Both operators are eigendecomposed with eigenvalues sorted
/// descending, which pairs positive with positive and negative with
/// negative; h then maps the k-th g-eigenvector to the k-th eta-eigenvector
/// scaled by sqrt(lambda_k / mu_k) (all signs +1 by convention). That makes
/// `h_adj o eta o h = g` hold by construction; the achieved residual is
/// stored for inspection.
pub fn gauge_extensor(g: &MetricExtensor, eta: &MetricExtensor) -> Result<GaugeExtensor> {
    assert_eq!(g.dim(), eta.dim(), "dimension mismatch");
    if g.signature() != eta.signature() {
        return Err(GaError::SignatureMismatch {
            left: g.signature(),
            right: eta.signature(),
        });
    }
    let n = g.dim();
    let eg = jacobi_eigendecompose(g)?;
    let ee = jacobi_eigendecompose(eta)?;
    let mut rows = vec![0.0; n * n];
    for k in 0..n {
        let ratio = eg.value(k) / ee.value(k);
        debug_assert!(ratio > 0.0, "signature pairing broke down");
        let c = ratio.sqrt();
        let v = eg.vector(k);
        let u = ee.vector(k);
        for j in 0..n {
            for l in 0..n {
                rows[j * n + l] += v[j] * c * u[l];
            }
        }
    }
    let h = LinOp11::from_flat(n, rows);
    let h_inv = h.inverse()?;
    let h_adj = h.transpose();
    let h_adj_inv = h_inv.transpose();
    let det_h = h.determinant();
    let residual = h_adj
        .compose(&eta.op().compose(&h))
        .max_abs_diff(g.op());
    Ok(GaugeExtensor {
        h,
        h_inv,
        h_adj,
        h_adj_inv,
        det_h,
        residual,
        g: g.clone(),
        eta: eta.clone(),
        eta_frame: ee.vectors().to_vec(),
    })
}

/// Gauge operator against the default flat metric of g's own signature.
pub fn gauge_from_metric(g: &MetricExtensor) -> Result<GaugeExtensor> {
    let (p, q) = g.signature();
    gauge_extensor(g, &default_eta(p, q))
}

/// Transport route for the metric products: push both factors into the flat
/// eta algebra with the extended h, multiply there, and pull back with the
/// extended h inverse. Equals the direct g-metric product for every product
/// kind, and is the kernel's independent second path to all of them.
pub fn golden_product(
    gauge: &GaugeExtensor,
    kind: ProductKind,
    x: &Multivector,
    y: &Multivector,
) -> Multivector {
    assert_eq!(gauge.dim(), x.dim(), "dimension mismatch");
    assert_eq!(x.dim(), y.dim(), "dimension mismatch");
    let hx = gauge.h.extend_apply(x);
    let hy = gauge.h.extend_apply(y);
    let z = kind.apply_g(&gauge.eta, &hx, &hy);
    gauge.h_inv.extend_apply(&z)
}

/// Frame and coframe transported by a nonsingular operator: (lambda(e_k),
/// lambda_star(e_k)) with lambda_star = adjoint of the inverse. The two
/// families stay mutually reciprocal.
pub fn deformed_bases(lambda: &LinOp11) -> Result<(Vec<Multivector>, Vec<Multivector>)> {
    let star = lambda.inverse()?.transpose();
    let n = lambda.dim();
    let frame = (0..n).map(|k| lambda.image_mv(k)).collect();
    let coframe = (0..n).map(|k| star.image_mv(k)).collect();
    Ok((frame, coframe))
}

/// Gauge frames (h(e_k), h_star(e_k)): the frame reproduces the metric
/// entries under the eta scalar product, `h(e_j) .eta h(e_k) = g_jk`, and
/// the coframe the inverse entries.
pub fn gauge_bases(gauge: &GaugeExtensor) -> (Vec<Multivector>, Vec<Multivector>) {
    let n = gauge.dim();
    let frame = (0..n).map(|k| gauge.h.image_mv(k)).collect();
    let coframe = (0..n).map(|k| gauge.h_adj_inv.image_mv(k)).collect();
    (frame, coframe)
}

/// Tetrad frames built on the eta eigenframe u_k: (h_inv(u_k), h_adj(u_k)).
/// The first family is g-orthonormal up to signs, `t_j .g t_k = eta_jk`;
/// the second satisfies the same relation under the inverse metric.
pub fn tetrad_bases(gauge: &GaugeExtensor) -> (Vec<Multivector>, Vec<Multivector>) {
    let n = gauge.dim();
    let frame = gauge
        .eta_frame
        .iter()
        .map(|u| Multivector::vector(n, &gauge.h_inv.apply(u)))
        .collect();
    let coframe = gauge
        .eta_frame
        .iter()
        .map(|u| Multivector::vector(n, &gauge.h_adj.apply(u)))
        .collect();
    (frame, coframe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclidean::scalar_product;
    use crate::metric::{clifford_product_g, scalar_product_g};

    fn standard_frame(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|j| (0..n).map(|k| if j == k { 1.0 } else { 0.0 }).collect())
            .collect()
    }

    #[test]
    fn eigen_sorts_descending_and_fixes_signs() {
        let d = EigenDecomposition::compute(2, &[1.0, 0.0, 0.0, 3.0]).unwrap();
        assert_eq!(d.values(), &[3.0, 1.0]);
        assert_eq!(d.vector(0), &[0.0, 1.0]);
        assert_eq!(d.vector(1), &[1.0, 0.0]);
        // [[0,1],[1,0]]: eigenpairs (1, (1,1)/sqrt2), (-1, (1,-1)/sqrt2);
        // the tie in |coordinate| resolves to a positive first entry.
        let d = EigenDecomposition::compute(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!((d.value(0) - 1.0).abs() < 1e-14);
        assert!((d.value(1) + 1.0).abs() < 1e-14);
        let s = 0.5f64.sqrt();
        assert!((d.vector(0)[0] - s).abs() < 1e-12 && (d.vector(0)[1] - s).abs() < 1e-12);
        assert!((d.vector(1)[0] - s).abs() < 1e-12 && (d.vector(1)[1] + s).abs() < 1e-12);
    }

    #[test]
    fn eigen_reconstructs_the_operator() {
        let m = vec![
            2.0, -1.0, 0.5, //
            -1.0, 3.0, 1.0, //
            0.5, 1.0, -2.0,
        ];
        let d = EigenDecomposition::compute(3, &m).unwrap();
        let r = d.reconstruct();
        for (a, b) in m.iter().zip(&r) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn eta_from_vector_reflects_the_complement() {
        let eta = eta_from_vector(&[1.0, 0.0]).unwrap();
        assert_eq!(eta.entry(0, 0), 1.0);
        assert_eq!(eta.entry(1, 1), -1.0);
        // det = (-1)^(n-1): +1 at n=3.
        let b = [2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0];
        let eta3 = eta_from_vector(&b).unwrap();
        assert!((eta3.det() - 1.0).abs() < 1e-12);
        // Fixes b, negates an orthogonal vector.
        let bv = Multivector::vector(3, &b);
        let img = eta3.op().apply_mv(&bv);
        assert!(img.max_abs_diff(&bv) < 1e-12);
        let w = Multivector::vector(3, &[2.0 / 3.0, -1.0 / 3.0, -2.0 / 3.0]);
        assert!(eta3.op().apply_mv(&w).max_abs_diff(&-&w) < 1e-12);
    }

    #[test]
    fn eta_from_vector_rejects_non_unit_input() {
        match eta_from_vector(&[1.0, 1.0]) {
            Err(GaError::NotUnitVector { deviation, tolerance }) => {
                assert!((deviation - 1.0).abs() < 1e-12);
                assert_eq!(tolerance, UNIT_TOLERANCE);
            }
            other => panic!("expected unit gate, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn axis_reflections_commute() {
        let a = eta_from_vector(&[1.0, 0.0, 0.0]).unwrap();
        let b = eta_from_vector(&[0.0, 0.6, 0.8]).unwrap();
        let ab = a.op().compose(b.op());
        let ba = b.op().compose(a.op());
        assert!(ab.max_abs_diff(&ba) < 1e-12);
    }

    #[test]
    fn eta_signature_diagonal_cases() {
        let frame = standard_frame(4);
        let full = eta_signature(4, &frame).unwrap();
        assert!(full.op().max_abs_diff(&LinOp11::identity(4)) < 1e-15);
        let lorentz = eta_signature(1, &frame).unwrap();
        for j in 0..4 {
            let want = if j == 0 { 1.0 } else { -1.0 };
            assert_eq!(lorentz.entry(j, j), want);
        }
        assert!((lorentz.det() - -1.0).abs() < 1e-12);
        assert_eq!(lorentz.signature(), (1, 3));
    }

    #[test]
    fn eta_signature_rejects_skewed_frames() {
        let frame = vec![vec![1.0, 0.0], vec![0.5, 0.8]];
        assert!(matches!(
            eta_signature(1, &frame),
            Err(GaError::NotOrthonormalFrame { .. })
        ));
    }

    #[test]
    fn rotated_frame_conjugates_the_standard_involution() {
        let (c, s) = (0.6f64, 0.8f64);
        let frame = vec![vec![c, s], vec![-s, c]];
        let eta = eta_signature(1, &frame).unwrap();
        let theta = LinOp11::new(2, &[vec![c, s], vec![-s, c]]).unwrap();
        let std_eta = eta_signature(1, &standard_frame(2)).unwrap();
        // Conjugation by the rotation taking e_k to the frame.
        let conj = theta.compose(&std_eta.op().compose(&theta.transpose()));
        assert!(conj.max_abs_diff(eta.op()) < 1e-12);
    }

    #[test]
    fn sandwich_path_matches_matrix_path() {
        let frame = standard_frame(2);
        let e2 = Multivector::basis_vector(2, 2);
        let got = eta_sandwich_apply(1, &frame, &e2).unwrap();
        assert!(got.max_abs_diff(&-&e2) < 1e-14);
        // p = 0 negates everything; p = n fixes everything.
        let v = Multivector::vector(2, &[0.3, -1.2]);
        assert!(eta_sandwich_apply(0, &frame, &v).unwrap().max_abs_diff(&-&v) < 1e-14);
        assert!(eta_sandwich_apply(2, &frame, &v).unwrap().max_abs_diff(&v) < 1e-14);
        // Rotated frame, both paths.
        let (c, s) = (0.6f64, 0.8f64);
        let rot = vec![vec![c, 0.0, s], vec![0.0, 1.0, 0.0], vec![-s, 0.0, c]];
        let eta = eta_signature(2, &rot).unwrap();
        let w = Multivector::vector(3, &[1.0, -0.5, 2.0]);
        let matrix_path = eta.op().apply_mv(&w);
        let sandwich_path = eta_sandwich_apply(2, &rot, &w).unwrap();
        assert!(matrix_path.max_abs_diff(&sandwich_path) < 1e-10);
    }

    #[test]
    fn extended_sandwich_signs_are_grade_wise() {
        // p = n = 2: the involution is the identity map, so its
        // outermorphism must fix e1^e2 as well; the uniform vector sign
        // would instead flip it.
        let frame = standard_frame(2);
        let e12 = Multivector::basis_blade(2, 0b11);
        let got = eta_sandwich_extend_apply(2, &frame, &e12).unwrap();
        assert!(got.max_abs_diff(&e12) < 1e-14);
        // Cross-check the whole algebra against the matrix outermorphism.
        let (c, s) = (0.6f64, 0.8f64);
        let rot = vec![vec![c, s], vec![-s, c]];
        let eta = eta_signature(1, &rot).unwrap();
        for mask in 0..4u16 {
            let x = Multivector::basis_blade(2, mask);
            let lhs = eta_sandwich_extend_apply(1, &rot, &x).unwrap();
            let rhs = eta.op().extend_apply(&x);
            assert!(lhs.max_abs_diff(&rhs) < 1e-10, "blade {mask:#b}");
        }
    }

    #[test]
    fn gauge_identity_and_diagonal_examples() {
        let id = MetricExtensor::identity(3);
        let gauge = gauge_extensor(&id, &id).unwrap();
        assert!(gauge.h().max_abs_diff(&LinOp11::identity(3)) < 1e-14);
        assert!(gauge.residual() < 1e-14);

        let g = MetricExtensor::new(MetricTensor::diagonal(&[4.0, -9.0])).unwrap();
        let eta = MetricExtensor::new(MetricTensor::diagonal(&[1.0, -1.0])).unwrap();
        let gauge = gauge_extensor(&g, &eta).unwrap();
        assert!((gauge.h().entry(0, 0) - 2.0).abs() < 1e-12);
        assert!((gauge.h().entry(1, 1) - 3.0).abs() < 1e-12);
        assert!(gauge.h().entry(0, 1).abs() < 1e-12);
        assert!((gauge.det_h() - 6.0).abs() < 1e-11);
        assert!(gauge.residual() < 1e-11);
    }

    #[test]
    fn gauge_rejects_signature_mismatch() {
        let g = MetricExtensor::identity(2);
        let eta = MetricExtensor::new(MetricTensor::diagonal(&[1.0, -1.0])).unwrap();
        match gauge_extensor(&g, &eta) {
            Err(GaError::SignatureMismatch { left, right }) => {
                assert_eq!(left, (2, 0));
                assert_eq!(right, (1, 1));
            }
            other => panic!("expected signature gate, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn gauge_congruence_holds_for_a_dense_metric() {
        let g = MetricExtensor::new(
            MetricTensor::new(3, &[
                vec![2.0, 0.4, -0.3],
                vec![0.4, 1.5, 0.2],
                vec![-0.3, 0.2, -1.0],
            ])
            .unwrap(),
        )
        .unwrap();
        let gauge = gauge_from_metric(&g).unwrap();
        assert!(gauge.residual() < 1e-9);
        assert!(gauge.det_h().abs() > 1e-6);
    }

    #[test]
    fn golden_route_matches_direct_metric_products() {
        let g = MetricExtensor::new(
            MetricTensor::new(2, &[vec![1.0, 0.5], vec![0.5, 2.0]]).unwrap(),
        )
        .unwrap();
        let gauge = gauge_from_metric(&g).unwrap();
        let x = Multivector::from_terms(2, &[(0b01, 1.0), (0b10, -2.0), (0b11, 0.5)]);
        let y = Multivector::from_terms(2, &[(0b00, 1.5), (0b10, 1.0), (0b11, -1.0)]);
        for kind in ProductKind::ALL {
            let golden = golden_product(&gauge, kind, &x, &y);
            let direct = kind.apply_g(&g, &x, &y);
            assert!(
                golden.max_abs_diff(&direct) < 1e-10,
                "product {}",
                kind.symbol()
            );
        }
    }

    #[test]
    fn golden_clifford_squares_match_on_flat_spacetime() {
        let g = MetricExtensor::minkowski(4);
        let gauge = gauge_from_metric(&g).unwrap();
        for k in 1..=4 {
            let v = Multivector::basis_vector(4, k);
            let golden = golden_product(&gauge, ProductKind::Clifford, &v, &v);
            let direct = clifford_product_g(&g, &v, &v);
            let want = if k == 1 { 1.0 } else { -1.0 };
            assert!((golden.scalar_part() - want).abs() < 1e-12);
            assert!(golden.max_abs_diff(&direct) < 1e-12);
        }
    }

    #[test]
    fn deformed_bases_are_reciprocal() {
        let lam = LinOp11::diagonal(2, &[2.0, 3.0]);
        let (frame, coframe) = deformed_bases(&lam).unwrap();
        assert!((coframe[0].coeff(0b01) - 0.5).abs() < 1e-14);
        for j in 0..2 {
            for k in 0..2 {
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((scalar_product(&frame[j], &coframe[k]) - want).abs() < 1e-10);
            }
        }
        let skew = LinOp11::new(2, &[vec![1.0, 2.0], vec![-1.0, 0.5]]).unwrap();
        let (frame, coframe) = deformed_bases(&skew).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((scalar_product(&frame[j], &coframe[k]) - want).abs() < 1e-10);
            }
        }
        assert!(deformed_bases(&LinOp11::new(2, &[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap()).is_err());
    }

    #[test]
    fn gauge_bases_reproduce_metric_entries() {
        let g = MetricExtensor::new(
            MetricTensor::new(2, &[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap(),
        )
        .unwrap();
        let gauge = gauge_from_metric(&g).unwrap();
        let (frame, coframe) = gauge_bases(&gauge);
        for j in 0..2 {
            for k in 0..2 {
                let got = scalar_product_g(gauge.eta(), &frame[j], &frame[k]);
                assert!((got - g.entry(j, k)).abs() < 1e-9);
                let got = scalar_product_g(gauge.eta(), &coframe[j], &coframe[k]);
                assert!((got - g.inverse_entry(j, k)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn tetrad_bases_reproduce_the_flat_signature() {
        let g = MetricExtensor::new(
            MetricTensor::new(2, &[vec![3.0, 0.4], vec![0.4, -1.0]]).unwrap(),
        )
        .unwrap();
        let gauge = gauge_from_metric(&g).unwrap();
        let (frame, coframe) = tetrad_bases(&gauge);
        let g_inv = g.inverse_metric();
        for j in 0..2 {
            for k in 0..2 {
                let eta_jk = if j == k {
                    if j == 0 { 1.0 } else { -1.0 }
                } else {
                    0.0
                };
                assert!((scalar_product_g(&g, &frame[j], &frame[k]) - eta_jk).abs() < 1e-9);
                assert!((scalar_product_g(&g_inv, &coframe[j], &coframe[k]) - eta_jk).abs() < 1e-9);
            }
        }
        // With g already flat and eta = g the tetrad is the standard frame.
        let m = MetricExtensor::minkowski(4);
        let gauge = gauge_extensor(&m, &m).unwrap();
        let (frame, _) = tetrad_bases(&gauge);
        for (k, t) in frame.iter().enumerate() {
            assert!(t.max_abs_diff(&Multivector::basis_vector(4, k + 1)) < 1e-12);
        }
    }
}
