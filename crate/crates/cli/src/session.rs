//! Evaluation of parsed expressions against a session configuration. With
//! the identity metric every node dispatches to the orthonormal fast-path
//! kernels, so results there are bit-identical to direct library calls.

use gakit_core::hodge::{hodge_star, metric_hodge};
use gakit_core::{GaError, MetricExtensor, MetricTensor, Multivector, ProductKind};

use crate::ast::{BinaryOp, Expr, UnaryOp};

pub struct Session {
    n: usize,
    metric: Option<MetricExtensor>,
}

impl Session {
    pub fn euclidean(n: usize) -> Result<Session, GaError> {
        Multivector::try_zero(n)?;
        Ok(Session { n, metric: None })
    }

    /// An explicitly identity tensor still takes the orthonormal fast path.
    pub fn with_metric(tensor: MetricTensor) -> Result<Session, GaError> {
        let n = tensor.dim();
        Multivector::try_zero(n)?;
        if tensor.is_identity() {
            return Ok(Session { n, metric: None });
        }
        let metric = MetricExtensor::new(tensor)?;
        Ok(Session {
            n,
            metric: Some(metric),
        })
    }

    /// Wraps an already-validated metric.
    pub fn with_extensor(metric: MetricExtensor) -> Result<Session, GaError> {
        let n = metric.dim();
        Multivector::try_zero(n)?;
        if metric.is_identity() {
            return Ok(Session { n, metric: None });
        }
        Ok(Session {
            n,
            metric: Some(metric),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn metric(&self) -> Option<&MetricExtensor> {
        self.metric.as_ref()
    }

    fn product(&self, kind: ProductKind, x: &Multivector, y: &Multivector) -> Multivector {
        match &self.metric {
            None => kind.apply_euclidean(x, y),
            Some(g) => kind.apply_g(g, x, y),
        }
    }

    /// Duality map under the session metric.
    pub fn dual(&self, x: &Multivector) -> Multivector {
        match &self.metric {
            None => hodge_star(x),
            Some(g) => metric_hodge(g, x),
        }
    }

    pub fn eval(&self, expr: &Expr) -> Multivector {
        match expr {
            Expr::Number(v) => Multivector::scalar(self.n, *v),
            Expr::Basis(k) => Multivector::basis_vector(self.n, *k),
            Expr::Unary(op, inner) => {
                let x = self.eval(inner);
                match op {
                    UnaryOp::Reverse => x.reverse(),
                    UnaryOp::Involute => x.grade_involution(),
                    UnaryOp::Dual => self.dual(&x),
                }
            }
            Expr::Binary(op, lhs, rhs) => {
                let x = self.eval(lhs);
                let y = self.eval(rhs);
                match op {
                    BinaryOp::Add => &x + &y,
                    BinaryOp::Sub => &x - &y,
                    BinaryOp::ScalarProduct => self.product(ProductKind::Scalar, &x, &y),
                    BinaryOp::ContractLeft => self.product(ProductKind::ContractLeft, &x, &y),
                    BinaryOp::ContractRight => self.product(ProductKind::ContractRight, &x, &y),
                    BinaryOp::Clifford => self.product(ProductKind::Clifford, &x, &y),
                    BinaryOp::Wedge => self.product(ProductKind::Wedge, &x, &y),
                }
            }
        }
    }
}
