//! (1,1)-extensors (linear operators on V) and general extensors (linear
//! maps of the whole exterior algebra), with the operator calculus built on
//! them: extension to an outermorphism, adjoints, the generalization
//! derivation, determinants through the pseudoscalar, and adjugate-style
//! inversion.
//!
//! Matrix convention: row j holds the image coordinates of the j-th basis
//! vector, `rows[j*n + k] = t(e_{j+1}) . e_{k+1}`. Under this convention the
//! matrix of a composition u after t is `M_t * M_u`, and the adjoint with
//! respect to the orthonormal fiducial basis is the plain transpose.

use serde::{Deserialize, Serialize};

use crate::blade::BladeMask;
use crate::error::{GaError, Result};
use crate::euclidean::{clifford_product, contract_left, wedge};
use crate::metric::MetricExtensor;
use crate::multivector::Multivector;

/// Coefficient of the scale-aware singularity gate: an operator is treated
/// as singular when `|det| <= 1e-12 * max(1, ||t||_max)^n`.
pub const SINGULARITY_COEFF: f64 = 1e-12;

/// Residual bound under which an operator counts as orthogonal for a metric.
pub const METRIC_ORTHOGONALITY_TOLERANCE: f64 = 1e-9;

/// Largest dimension at which 2^n x 2^n extensor matrices are materialized.
/// Above this, extensions are applied lazily blade-by-blade.
pub const MATERIALIZE_DIM_CAP: usize = 8;

/// Linear operator on V, stored as rows of basis-vector images.
#[derive(Clone, PartialEq, Debug)]
pub struct LinOp11 {
    dim: usize,
    rows: Vec<f64>,
}

impl LinOp11 {
    pub fn new(dim: usize, rows: &[Vec<f64>]) -> Result<LinOp11> {
        if dim == 0 || dim > crate::blade::MAX_DIM {
            return Err(GaError::DimensionOutOfRange(dim));
        }
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(GaError::InvalidForm(format!(
                "operator matrix must be {dim}x{dim}"
            )));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        if flat.iter().any(|x| !x.is_finite()) {
            return Err(GaError::InvalidForm("non-finite matrix entry".into()));
        }
        Ok(LinOp11 { dim, rows: flat })
    }

    pub fn from_flat(dim: usize, rows: Vec<f64>) -> LinOp11 {
        assert_eq!(rows.len(), dim * dim, "matrix shape mismatch");
        LinOp11 { dim, rows }
    }

    pub fn identity(dim: usize) -> LinOp11 {
        let mut rows = vec![0.0; dim * dim];
        for j in 0..dim {
            rows[j * dim + j] = 1.0;
        }
        LinOp11 { dim, rows }
    }

    pub fn diagonal(dim: usize, diag: &[f64]) -> LinOp11 {
        assert_eq!(diag.len(), dim);
        let mut rows = vec![0.0; dim * dim];
        for j in 0..dim {
            rows[j * dim + j] = diag[j];
        }
        LinOp11 { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry t(e_{j+1}) . e_{k+1}, 0-based arguments.
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.rows[j * self.dim + k]
    }

    /// Image coordinates of the (0-based) j-th basis vector.
    pub fn row(&self, j: usize) -> &[f64] {
        &self.rows[j * self.dim..(j + 1) * self.dim]
    }

    pub fn flat(&self) -> &[f64] {
        &self.rows
    }

    /// Image of the j-th basis vector as a grade-1 multivector.
    pub fn image_mv(&self, j: usize) -> Multivector {
        Multivector::vector(self.dim, self.row(j))
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![0.0; n];
        for j in 0..n {
            let vj = v[j];
            if vj == 0.0 {
                continue;
            }
            for k in 0..n {
                out[k] += vj * self.rows[j * n + k];
            }
        }
        out
    }

    /// Applies to the grade-1 part of a multivector.
    pub fn apply_mv(&self, v: &Multivector) -> Multivector {
        Multivector::vector(self.dim, &self.apply(&v.vector_part()))
    }

    /// Composition self after inner: `(self.compose(t))(v) = self(t(v))`.
    pub fn compose(&self, inner: &LinOp11) -> LinOp11 {
        assert_eq!(self.dim, inner.dim, "dimension mismatch");
        let n = self.dim;
        let mut rows = vec![0.0; n * n];
        for j in 0..n {
            for k in 0..n {
                let x = inner.rows[j * n + k];
                if x == 0.0 {
                    continue;
                }
                for l in 0..n {
                    rows[j * n + l] += x * self.rows[k * n + l];
                }
            }
        }
        LinOp11 { dim: n, rows }
    }

    /// Adjoint with respect to the orthonormal fiducial scalar product:
    /// `x . t_adj(y) = t(x) . y`. Matrix transpose in this basis.
    pub fn transpose(&self) -> LinOp11 {
        let n = self.dim;
        let mut rows = vec![0.0; n * n];
        for j in 0..n {
            for k in 0..n {
                rows[k * n + j] = self.rows[j * n + k];
            }
        }
        LinOp11 { dim: n, rows }
    }

    pub fn add(&self, other: &LinOp11) -> LinOp11 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a + b)
            .collect();
        LinOp11 {
            dim: self.dim,
            rows,
        }
    }

    pub fn sub(&self, other: &LinOp11) -> LinOp11 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a - b)
            .collect();
        LinOp11 {
            dim: self.dim,
            rows,
        }
    }

    pub fn scale(&self, s: f64) -> LinOp11 {
        LinOp11 {
            dim: self.dim,
            rows: self.rows.iter().map(|x| x * s).collect(),
        }
    }

    pub fn symmetric_part(&self) -> LinOp11 {
        self.add(&self.transpose()).scale(0.5)
    }

    pub fn skew_part(&self) -> LinOp11 {
        self.sub(&self.transpose()).scale(0.5)
    }

    pub fn norm_max(&self) -> f64 {
        self.rows.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &LinOp11) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.rows
            .iter()
            .zip(&other.rows)
            .fold(0.0f64, |m, (&a, &b)| m.max((a - b).abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.transpose()) <= tol
    }

    /// Image of a basis blade under the induced outermorphism: the wedge of
    /// the factor images, scalar blade fixed.
    pub fn blade_image(&self, mask: BladeMask) -> Multivector {
        let mut acc = Multivector::scalar(self.dim, 1.0);
        let mut rest = mask;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            acc = wedge(&acc, &self.image_mv(j));
            rest &= rest - 1;
        }
        acc
    }

    /// Outermorphism applied lazily: works at every supported dimension
    /// without materializing the 2^n x 2^n matrix.
    pub fn extend_apply(&self, x: &Multivector) -> Multivector {
        assert_eq!(self.dim, x.dim(), "dimension mismatch");
        let mut out = Multivector::zero(self.dim);
        for (mask, c) in x.terms() {
            out = &out + &self.blade_image(mask).scale(c);
        }
        out
    }

    /// Materialized outermorphism. Capped at n <= 8; use
    /// [`LinOp11::extend_apply`] above that.
    pub fn extend(&self) -> GeneralExtensor {
        assert!(
            self.dim <= MATERIALIZE_DIM_CAP,
            "materialized extension capped at n <= {}; use extend_apply",
            MATERIALIZE_DIM_CAP
        );
        let size = 1usize << self.dim;
        let mut rows = vec![0.0; size * size];
        for mask in 0..size {
            let image = self.blade_image(mask as BladeMask);
            rows[mask * size..(mask + 1) * size].copy_from_slice(image.coeffs());
        }
        GeneralExtensor {
            dim: self.dim,
            rows,
        }
    }

    /// Generalization derivation: `t~(X) = sum_k t(e_k) ^ (e_k _| X)`.
    /// Annihilates scalars, restricts to t on vectors, and satisfies the
    /// Leibniz rule over the exterior product.
    pub fn generalize_apply(&self, x: &Multivector) -> Multivector {
        assert_eq!(self.dim, x.dim(), "dimension mismatch");
        let mut out = Multivector::zero(self.dim);
        for k in 0..self.dim {
            let ek = Multivector::basis_vector(self.dim, k + 1);
            out = &out + &wedge(&self.image_mv(k), &contract_left(&ek, x));
        }
        out
    }

    /// Materialized generalization (same cap as `extend`).
    pub fn generalize(&self) -> GeneralExtensor {
        assert!(
            self.dim <= MATERIALIZE_DIM_CAP,
            "materialized generalization capped at n <= {}",
            MATERIALIZE_DIM_CAP
        );
        let size = 1usize << self.dim;
        let mut rows = vec![0.0; size * size];
        for mask in 0..size {
            let image = self.generalize_apply(&Multivector::basis_blade(self.dim, mask as BladeMask));
            rows[mask * size..(mask + 1) * size].copy_from_slice(image.coeffs());
        }
        GeneralExtensor {
            dim: self.dim,
            rows,
        }
    }

    /// Bivector of the operator: `biv[t] = sum_k t(e_k) ^ e_k`. The skew
    /// part of the generalization acts as `X -> biv[t] x X / ...` through the
    /// commutator; symmetric operators give zero.
    pub fn bivector_of(&self) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        for k in 0..self.dim {
            let ek = Multivector::basis_vector(self.dim, k + 1);
            out = &out + &wedge(&self.image_mv(k), &ek);
        }
        out
    }

    /// Determinant read off the pseudoscalar image of the outermorphism:
    /// the extension maps `e_1^...^e_n` to `det[t] * e_1^...^e_n`.
    pub fn determinant(&self) -> f64 {
        let full = ((1usize << self.dim) - 1) as BladeMask;
        self.blade_image(full).coeff(full)
    }

    fn singularity_threshold(&self) -> f64 {
        SINGULARITY_COEFF * self.norm_max().max(1.0).powi(self.dim as i32)
    }

    /// Adjugate-style inversion through the algebra: each column of the
    /// inverse is `det^-1 * t_adj_extended(e_j tau) tau^-1`, with tau the
    /// unit pseudoscalar. Errors out on the scale-aware singularity gate.
    pub fn inverse(&self) -> Result<LinOp11> {
        let det = self.determinant();
        let threshold = self.singularity_threshold();
        if det.abs() <= threshold {
            return Err(GaError::SingularOperator { det, threshold });
        }
        let n = self.dim;
        let tau = Multivector::basis_blade(n, ((1usize << n) - 1) as BladeMask);
        let tau_inv = tau.reverse();
        let adj = self.transpose();
        let mut rows = vec![0.0; n * n];
        for j in 0..n {
            let ej = Multivector::basis_vector(n, j + 1);
            let ej_tau = clifford_product(&ej, &tau);
            let pushed = adj.extend_apply(&ej_tau);
            let column = clifford_product(&pushed, &tau_inv);
            let coords = column.vector_part();
            for k in 0..n {
                rows[j * n + k] = coords[k] / det;
            }
        }
        Ok(LinOp11 { dim: n, rows })
    }

    /// Adjoint with respect to a metric g: `g_inv o t_adj o g`, the unique
    /// operator with `x .g t_madj(y) = t(x) .g y`.
    pub fn metric_adjoint(&self, g: &MetricExtensor) -> LinOp11 {
        assert_eq!(self.dim, g.dim(), "dimension mismatch");
        g.inverse_op()
            .compose(&self.transpose().compose(g.op()))
    }

    pub fn to_json(&self) -> String {
        let form = LinOpForm {
            n: self.dim,
            matrix: (0..self.dim).map(|j| self.row(j).to_vec()).collect(),
        };
        serde_json::to_string(&form).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<LinOp11> {
        let form: LinOpForm =
            serde_json::from_str(text).map_err(|e| GaError::InvalidForm(e.to_string()))?;
        LinOp11::new(form.n, &form.matrix)
    }
}

/// Serialized shape: `{"n": 3, "matrix": [[...], ...]}`, rows are the images
/// of the basis vectors in fiducial coordinates.
#[derive(Serialize, Deserialize)]
struct LinOpForm {
    n: usize,
    matrix: Vec<Vec<f64>>,
}

/// True when the operator preserves the metric: `lambda_adj o eta o lambda`
/// returns eta within the orthogonality tolerance.
pub fn is_metric_orthogonal(lambda: &LinOp11, eta: &MetricExtensor) -> bool {
    assert_eq!(lambda.dim(), eta.dim(), "dimension mismatch");
    let pulled = lambda
        .transpose()
        .compose(&eta.op().compose(lambda));
    pulled.max_abs_diff(eta.op()) < METRIC_ORTHOGONALITY_TOLERANCE
}

/// Linear map of the full exterior algebra, stored densely over canonical
/// blades: `rows[J*2^n + K] = T(e_J) . e_K`. Materialization is capped at
/// n <= 8 (a 256 x 256 matrix); the kernel operations that need larger
/// dimensions stay on the lazy paths.
#[derive(Clone, PartialEq, Debug)]
pub struct GeneralExtensor {
    dim: usize,
    rows: Vec<f64>,
}

impl GeneralExtensor {
    pub fn from_rows(dim: usize, rows: Vec<f64>) -> GeneralExtensor {
        assert!(dim <= MATERIALIZE_DIM_CAP, "materialization capped at n <= 8");
        let size = 1usize << dim;
        assert_eq!(rows.len(), size * size, "matrix shape mismatch");
        GeneralExtensor { dim, rows }
    }

    pub fn identity(dim: usize) -> GeneralExtensor {
        assert!(dim <= MATERIALIZE_DIM_CAP, "materialization capped at n <= 8");
        let size = 1usize << dim;
        let mut rows = vec![0.0; size * size];
        for j in 0..size {
            rows[j * size + j] = 1.0;
        }
        GeneralExtensor { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        1usize << self.dim
    }

    pub fn entry(&self, j: BladeMask, k: BladeMask) -> f64 {
        self.rows[(j as usize) * self.size() + k as usize]
    }

    pub fn apply(&self, x: &Multivector) -> Multivector {
        assert_eq!(self.dim, x.dim(), "dimension mismatch");
        let size = self.size();
        let mut out = Multivector::zero(self.dim);
        for (mask, c) in x.terms() {
            let row = &self.rows[(mask as usize) * size..(mask as usize + 1) * size];
            for (k, &r) in row.iter().enumerate() {
                if r != 0.0 {
                    out.set_coeff(k as BladeMask, out.coeff(k as BladeMask) + c * r);
                }
            }
        }
        out
    }

    /// Composition self after inner.
    pub fn compose(&self, inner: &GeneralExtensor) -> GeneralExtensor {
        assert_eq!(self.dim, inner.dim, "dimension mismatch");
        let size = self.size();
        let mut rows = vec![0.0; size * size];
        for j in 0..size {
            for k in 0..size {
                let x = inner.rows[j * size + k];
                if x == 0.0 {
                    continue;
                }
                for l in 0..size {
                    rows[j * size + l] += x * self.rows[k * size + l];
                }
            }
        }
        GeneralExtensor {
            dim: self.dim,
            rows,
        }
    }

    /// Standard adjoint: `X . T_adj(Y) = T(X) . Y`. Transpose over the
    /// orthonormal blade basis.
    pub fn adjoint(&self) -> GeneralExtensor {
        let size = self.size();
        let mut rows = vec![0.0; size * size];
        for j in 0..size {
            for k in 0..size {
                rows[k * size + j] = self.rows[j * size + k];
            }
        }
        GeneralExtensor {
            dim: self.dim,
            rows,
        }
    }

    /// Covariant components `t_{J;K} = T(e_J) . e_K`, evaluated
    /// definitionally by applying T to every canonical blade. Flat layout
    /// matches `from_components`.
    pub fn components(&self) -> Vec<f64> {
        let size = self.size();
        let mut out = vec![0.0; size * size];
        for j in 0..size {
            let image = self.apply(&Multivector::basis_blade(self.dim, j as BladeMask));
            for k in 0..size {
                out[j * size + k] = crate::euclidean::scalar_product(
                    &image,
                    &Multivector::basis_blade(self.dim, k as BladeMask),
                );
            }
        }
        out
    }

    /// Reassembles an extensor from its covariant components.
    pub fn from_components(dim: usize, components: Vec<f64>) -> GeneralExtensor {
        GeneralExtensor::from_rows(dim, components)
    }

    pub fn norm_max(&self) -> f64 {
        self.rows.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &GeneralExtensor) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.rows
            .iter()
            .zip(&other.rows)
            .fold(0.0f64, |m, (&a, &b)| m.max((a - b).abs()))
    }
}
