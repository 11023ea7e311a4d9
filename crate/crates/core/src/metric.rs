//! Metric tensors and the products they induce on the exterior algebra.
//!
//! A metric enters the kernel as a symmetric operator g on V. Its
//! outermorphism extension turns the fiducial (orthonormal) products into
//! metric ones: `X .g Y = g(X) . Y`, `X _|g Y = g(X) _| Y`, and the metric
//! Clifford product is rebuilt recursively from those two. All derived data
//! (inverse, determinant, signature) is computed once at construction.

use serde::{Deserialize, Serialize};

use crate::error::{GaError, Result};
use crate::euclidean::{contract_left, contract_right, scalar_product, wedge};
use crate::extensor::LinOp11;
use crate::linalg::jacobi_eigen_sym;
use crate::multivector::Multivector;

/// Largest tolerated asymmetry in a metric matrix before rejection.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// A metric whose determinant is at most this in magnitude is degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

/// Eigenvalues within this of zero make the signature ill-defined.
pub const SIGNATURE_ZERO_TOLERANCE: f64 = 1e-10;

/// Symmetric nondegenerate bilinear form on V, stored dense row-major.
/// Construction symmetrizes the input after gating the asymmetry, so the
/// stored matrix is exactly symmetric.
#[derive(Clone, PartialEq, Debug)]
pub struct MetricTensor {
    dim: usize,
    entries: Vec<f64>,
}

impl MetricTensor {
    pub fn new(dim: usize, rows: &[Vec<f64>]) -> Result<MetricTensor> {
        if dim == 0 || dim > crate::blade::MAX_DIM {
            return Err(GaError::DimensionOutOfRange(dim));
        }
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(GaError::InvalidForm(format!(
                "metric matrix must be {dim}x{dim}"
            )));
        }
        let mut entries = vec![0.0; dim * dim];
        for j in 0..dim {
            for k in 0..dim {
                let a = rows[j][k];
                if !a.is_finite() {
                    return Err(GaError::InvalidForm("non-finite metric entry".into()));
                }
                let b = rows[k][j];
                let asymmetry = (a - b).abs();
                if asymmetry > SYMMETRY_TOLERANCE {
                    return Err(GaError::NotSymmetric {
                        row: j + 1,
                        col: k + 1,
                        asymmetry,
                    });
                }
                entries[j * dim + k] = 0.5 * (a + b);
            }
        }
        Ok(MetricTensor { dim, entries })
    }

    pub fn identity(dim: usize) -> MetricTensor {
        MetricTensor::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(diag: &[f64]) -> MetricTensor {
        let dim = diag.len();
        assert!(dim >= 1 && dim <= crate::blade::MAX_DIM, "dimension out of range");
        let mut entries = vec![0.0; dim * dim];
        for j in 0..dim {
            entries[j * dim + j] = diag[j];
        }
        MetricTensor { dim, entries }
    }

    /// Time-first flat spacetime form: diag(+1, -1, ..., -1).
    pub fn minkowski(dim: usize) -> MetricTensor {
        let mut diag = vec![-1.0; dim];
        diag[0] = 1.0;
        MetricTensor::diagonal(&diag)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry g_{jk}, 0-based arguments.
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.entries[j * self.dim + k]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|j| self.entries[j * self.dim..(j + 1) * self.dim].to_vec())
            .collect()
    }

    /// The metric as an operator on V (rows are images; symmetric, so the
    /// convention does not matter here).
    pub fn as_op(&self) -> LinOp11 {
        LinOp11::from_flat(self.dim, self.entries.clone())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|j| {
            (0..self.dim).all(|k| self.entry(j, k) == if j == k { 1.0 } else { 0.0 })
        })
    }

    pub fn to_json(&self) -> String {
        let form = MetricForm {
            n: self.dim,
            g: self.rows(),
        };
        serde_json::to_string(&form).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<MetricTensor> {
        let form: MetricForm =
            serde_json::from_str(text).map_err(|e| GaError::InvalidForm(e.to_string()))?;
        MetricTensor::new(form.n, &form.g)
    }
}

/// Serialized shape: `{"n": 2, "g": [[1.0, 0.0], [0.0, 1.0]]}`.
#[derive(Serialize, Deserialize)]
struct MetricForm {
    n: usize,
    g: Vec<Vec<f64>>,
}

/// A metric together with everything derived from it, computed eagerly:
/// the operator form, its inverse, determinant, and signature. Construction
/// fails on degenerate input, so downstream code can rely on invertibility.
#[derive(Clone, Debug)]
pub struct MetricExtensor {
    tensor: MetricTensor,
    op: LinOp11,
    inverse_op: LinOp11,
    det: f64,
    signature: (usize, usize),
}

impl MetricExtensor {
    pub fn new(tensor: MetricTensor) -> Result<MetricExtensor> {
        let op = tensor.as_op();
        let det = op.determinant();
        if det.abs() <= DEGENERACY_TOLERANCE {
            return Err(GaError::DegenerateMetric { det });
        }
        let inverse_op = op.inverse()?;
        let (values, _) = jacobi_eigen_sym(tensor.dim(), op.flat())?;
        let p = values.iter().filter(|&&v| v > SIGNATURE_ZERO_TOLERANCE).count();
        let q = values.iter().filter(|&&v| v < -SIGNATURE_ZERO_TOLERANCE).count();
        if p + q < tensor.dim() {
            return Err(GaError::DegenerateMetric { det });
        }
        Ok(MetricExtensor {
            tensor,
            op,
            inverse_op,
            det,
            signature: (p, q),
        })
    }

    pub fn identity(dim: usize) -> MetricExtensor {
        MetricExtensor::new(MetricTensor::identity(dim)).expect("identity metric")
    }

    pub fn minkowski(dim: usize) -> MetricExtensor {
        MetricExtensor::new(MetricTensor::minkowski(dim)).expect("flat spacetime metric")
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn tensor(&self) -> &MetricTensor {
        &self.tensor
    }

    pub fn op(&self) -> &LinOp11 {
        &self.op
    }

    pub fn inverse_op(&self) -> &LinOp11 {
        &self.inverse_op
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    /// Counts of positive and negative eigenvalues (p, q), p + q = n.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.tensor.entry(j, k)
    }

    pub fn inverse_entry(&self, j: usize, k: usize) -> f64 {
        self.inverse_op.entry(j, k)
    }

    pub fn is_identity(&self) -> bool {
        self.tensor.is_identity()
    }

    /// The extensor built from the inverse tensor. Used for products taken
    /// with respect to the reciprocal metric.
    pub fn inverse_metric(&self) -> MetricExtensor {
        let rows = (0..self.dim())
            .map(|j| self.inverse_op.row(j).to_vec())
            .collect::<Vec<_>>();
        let tensor = MetricTensor::new(self.dim(), &rows).expect("inverse stays symmetric");
        MetricExtensor::new(tensor).expect("inverse of nondegenerate metric")
    }

    /// Metric applied to a multivector through its outermorphism extension.
    pub fn apply_extended(&self, x: &Multivector) -> Multivector {
        self.op.extend_apply(x)
    }

    /// Reciprocal basis vector e^k (1-based): the unique vector with
    /// `e^k .g e_j = delta^k_j`; coordinates are the k-th row of the
    /// inverse matrix.
    pub fn reciprocal_vector(&self, k: usize) -> Multivector {
        assert!(k >= 1 && k <= self.dim(), "basis index out of range");
        self.inverse_op.image_mv(k - 1)
    }
}

/// Metric scalar product `X .g Y = g(X) . Y`, symmetric in its arguments.
pub fn scalar_product_g(g: &MetricExtensor, x: &Multivector, y: &Multivector) -> f64 {
    scalar_product(&g.apply_extended(x), y)
}

/// Metric left contraction `X _|g Y = g(X) _| Y`.
pub fn contract_left_g(g: &MetricExtensor, x: &Multivector, y: &Multivector) -> Multivector {
    contract_left(&g.apply_extended(x), y)
}

/// Metric right contraction `X |_g Y = X |_ g(Y)`.
pub fn contract_right_g(g: &MetricExtensor, x: &Multivector, y: &Multivector) -> Multivector {
    contract_right(x, &g.apply_extended(y))
}

/// Metric Clifford (geometric) product, built from the vector axiom
/// `v *g Y = v _|g Y + v ^ Y` by peeling the lowest factor of each left
/// blade: with A = {i} + B,
/// `e_A *g Y = e_i *g (e_B *g Y) - (e_i _|g e_B) *g Y`.
/// The correction term only involves subsets of B, so the blade products
/// e_A *g Y are filled in ascending mask order with every piece already
/// available. Reduces exactly to the fiducial product on the identity
/// metric.
pub fn clifford_product_g(g: &MetricExtensor, x: &Multivector, y: &Multivector) -> Multivector {
    assert_eq!(g.dim(), x.dim(), "dimension mismatch");
    assert_eq!(x.dim(), y.dim(), "dimension mismatch");
    let n = x.dim();
    let size = 1usize << n;
    // blade_products[m] = e_m *g Y.
    let mut blade_products: Vec<Multivector> = Vec::with_capacity(size);
    blade_products.push(y.clone());
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ei = Multivector::basis_vector(n, low + 1);
        let inner = &blade_products[rest];
        let mut acc = &contract_left_g(g, &ei, inner) + &wedge(&ei, inner);
        if rest != 0 {
            let shed = contract_left_g(
                g,
                &ei,
                &Multivector::basis_blade(n, rest as crate::blade::BladeMask),
            );
            for (m, c) in shed.terms() {
                acc = &acc - &blade_products[m as usize].scale(c);
            }
        }
        blade_products.push(acc);
    }
    let mut out = Multivector::zero(n);
    for (mask, c) in x.terms() {
        out = &out + &blade_products[mask as usize].scale(c);
    }
    out
}

/// Grade-k slice of the metric Clifford product.
pub fn clifford_graded_g(
    g: &MetricExtensor,
    x: &Multivector,
    y: &Multivector,
    k: u32,
) -> Multivector {
    clifford_product_g(g, x, y).grade_project(k)
}

/// The five product kinds the kernel exposes, for code that dispatches on
/// an operation choice (report runners, the command-line front end).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProductKind {
    Wedge,
    Scalar,
    ContractLeft,
    ContractRight,
    Clifford,
}

impl ProductKind {
    pub const ALL: [ProductKind; 5] = [
        ProductKind::Wedge,
        ProductKind::Scalar,
        ProductKind::ContractLeft,
        ProductKind::ContractRight,
        ProductKind::Clifford,
    ];

    /// Operator spelling used by the expression grammar.
    pub fn symbol(self) -> &'static str {
        match self {
            ProductKind::Wedge => "^",
            ProductKind::Scalar => "|",
            ProductKind::ContractLeft => "<<",
            ProductKind::ContractRight => ">>",
            ProductKind::Clifford => "%",
        }
    }

    /// Product under a metric; the scalar product comes back embedded in
    /// grade 0.
    pub fn apply_g(self, g: &MetricExtensor, x: &Multivector, y: &Multivector) -> Multivector {
        match self {
            ProductKind::Wedge => wedge(x, y),
            ProductKind::Scalar => Multivector::scalar(x.dim(), scalar_product_g(g, x, y)),
            ProductKind::ContractLeft => contract_left_g(g, x, y),
            ProductKind::ContractRight => contract_right_g(g, x, y),
            ProductKind::Clifford => clifford_product_g(g, x, y),
        }
    }

    /// Product under the fiducial (orthonormal) metric, on the dedicated
    /// fast paths.
    pub fn apply_euclidean(self, x: &Multivector, y: &Multivector) -> Multivector {
        match self {
            ProductKind::Wedge => wedge(x, y),
            ProductKind::Scalar => Multivector::scalar(x.dim(), scalar_product(x, y)),
            ProductKind::ContractLeft => contract_left(x, y),
            ProductKind::ContractRight => contract_right(x, y),
            ProductKind::Clifford => crate::euclidean::clifford_product(x, y),
        }
    }
}
