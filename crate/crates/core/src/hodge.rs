//! Volume pseudoscalars and Hodge duality, fiducial and metric. The metric
//! dual has three routes: its contraction definition, transport through the
//! metric operator, and transport through a gauge operator; they agree and
//! serve as mutual oracles.

use crate::blade::BladeMask;
use crate::deform::GaugeExtensor;
use crate::euclidean::{contract_left, contract_right};
use crate::metric::{contract_left_g, contract_right_g, MetricExtensor};
use crate::multivector::Multivector;

/// Pure grade-n volume element. The fiducial one is the positively ordered
/// unit blade e_1^...^e_n; a metric scales it by sqrt|det g|. Orientation is
/// always that of the basis order.
#[derive(Clone, PartialEq, Debug)]
pub struct VolumeElement {
    tau: Multivector,
}

impl VolumeElement {
    pub fn tau(&self) -> &Multivector {
        &self.tau
    }

    pub fn dim(&self) -> usize {
        self.tau.dim()
    }

    /// Coefficient on the unit pseudoscalar blade.
    pub fn scale(&self) -> f64 {
        let full = ((1usize << self.dim()) - 1) as BladeMask;
        self.tau.coeff(full)
    }
}

fn unit_pseudoscalar(n: usize) -> Multivector {
    Multivector::basis_blade(n, ((1usize << n) - 1) as BladeMask)
}

/// Fiducial volume element: tau = e_1^...^e_n, with tau.tau = 1.
pub fn standard_volume(n: usize) -> VolumeElement {
    VolumeElement {
        tau: unit_pseudoscalar(n),
    }
}

/// Metric volume element tau_g = sqrt|det g| tau.
pub fn metric_volume(g: &MetricExtensor) -> VolumeElement {
    VolumeElement {
        tau: unit_pseudoscalar(g.dim()).scale(g.det().abs().sqrt()),
    }
}

/// Fiducial Hodge dual: star(X) = rev(X) _| tau. Sends grade p to n-p.
pub fn hodge_star(x: &Multivector) -> Multivector {
    contract_left(&x.reverse(), &unit_pseudoscalar(x.dim()))
}

/// Inverse fiducial dual: star_inv(X) = tau |_ rev(X).
pub fn hodge_star_inverse(x: &Multivector) -> Multivector {
    contract_right(&unit_pseudoscalar(x.dim()), &x.reverse())
}

/// Metric Hodge dual by definition: star_g(X) = rev(X) _|g-inv tau_g, the
/// left contraction taken in the inverse-metric algebra.
pub fn metric_hodge(g: &MetricExtensor, x: &Multivector) -> Multivector {
    assert_eq!(g.dim(), x.dim(), "dimension mismatch");
    let g_inv = g.inverse_metric();
    contract_left_g(&g_inv, &x.reverse(), metric_volume(g).tau())
}

/// Inverse metric dual: star_g_inv(X) = (-1)^q tau_g |_g-inv rev(X), with q
/// the negative-signature count. Round-trips with [`metric_hodge`].
pub fn metric_hodge_inverse(g: &MetricExtensor, x: &Multivector) -> Multivector {
    assert_eq!(g.dim(), x.dim(), "dimension mismatch");
    let g_inv = g.inverse_metric();
    let (_, q) = g.signature();
    let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
    contract_right_g(&g_inv, metric_volume(g).tau(), &x.reverse()).scale(sign)
}

/// Second route to the metric dual: transport the fiducial dual through the
/// extended metric operator, star_g = ((-1)^q / sqrt|det g|) g o star.
pub fn metric_hodge_via_g(g: &MetricExtensor, x: &Multivector) -> Multivector {
    assert_eq!(g.dim(), x.dim(), "dimension mismatch");
    let (_, q) = g.signature();
    let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
    g.apply_extended(&hodge_star(x))
        .scale(sign / g.det().abs().sqrt())
}

/// Third route: push through the gauge coframe operator, take the dual in
/// the flat eta algebra, and pull back with the adjoint,
/// star_g = sgn(det h) h_adj o star_eta o h_adj_inv (all maps extended).
pub fn metric_hodge_via_gauge(gauge: &GaugeExtensor, x: &Multivector) -> Multivector {
    assert_eq!(gauge.dim(), x.dim(), "dimension mismatch");
    let pushed = gauge.h_adj_inv().extend_apply(x);
    let dual = metric_hodge(gauge.eta(), &pushed);
    let pulled = gauge.h_adj().extend_apply(&dual);
    pulled.scale(gauge.det_h().signum())
}
