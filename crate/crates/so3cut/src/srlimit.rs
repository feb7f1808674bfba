//! Sub-Riemannian geodesics, conjugate time and cut time on SO(3), and
//! numerical convergence reports of the Riemannian objects as `eta -> -1`
//! (equivalently `I3 -> infinity`).
//!
//! The sub-Riemannian problem restricts velocities to the horizontal plane
//! `span{i, j}` with the Killing-form metric. Its geodesics are the products
//! `g(t) = exp(t (A_p + A_k)) exp(-t A_k)` with `A_p = cos(theta) i +
//! sin(theta) j` unit horizontal and `A_k = c k`; the exponentials are
//! rotations evaluated in axis-angle closed form. The Riemannian data
//! converge to these under the matching `p3 = c`, so `|p| -> sqrt(1 + c^2)`
//! and `pbar3 -> c / sqrt(1 + c^2)`.

use crate::error::{Error, Result};
use crate::geodesic::{exp_map, time_of_tau};
use crate::inverse::distance;
use crate::metric::{Covector, Metric};
use crate::roots::tau_conj;
use crate::rotation::{so3_chordal_distance, UnitQuaternion};
use std::f64::consts::PI;

/// Sub-Riemannian initial covector `(1/2) cos(theta) i + (1/2) sin(theta) j
/// + c k`, stored by its vertical component and horizontal phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrCovector {
    pub c: f64,
    pub theta: f64,
}

/// One comparison row of a convergence report.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub eta: f64,
    pub riemannian_value: f64,
    pub sr_value: f64,
    pub abs_error: f64,
}

/// Quantity compared by [`convergence_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrQuantity {
    /// Sup over `t in [0, 2 pi]` of the endpoint mismatch; the row stores the
    /// sup in `riemannian_value` with `sr_value = 0`.
    GeodesicEndpoint,
    ConjugateTime,
    CutTimeAxis,
    CutTimePlane,
    /// One-sided Hausdorff gap from the sub-Riemannian vertical circle to the
    /// sampled vertical cut segment; stored like `GeodesicEndpoint`.
    CutLocusHausdorff,
}

/// Quantity-specific parameters with usable defaults.
#[derive(Debug, Clone, Copy)]
pub struct SrCompareParams {
    /// Vertical covector component (geodesic endpoint, conjugate time).
    pub c: f64,
    /// Horizontal phase of the initial covector (geodesic endpoint).
    pub theta: f64,
    /// Argument of the vertical-circle point (axis cut time), in `(0, 2 pi)`.
    pub arg_alpha: f64,
    /// Modulus of the half-turn target (plane cut time), in `[0, 1)`.
    pub alpha_norm: f64,
    /// Time samples for the endpoint sup.
    pub n_t: usize,
}

impl Default for SrCompareParams {
    fn default() -> Self {
        SrCompareParams {
            c: 1.0,
            theta: 0.0,
            arg_alpha: PI / 2.0,
            alpha_norm: 0.5,
            n_t: 201,
        }
    }
}

/// Rotation quaternion `exp` of a rotation vector: axis `v/|v|`, angle `|v|`.
fn rotation_quaternion(v: [f64; 3]) -> UnitQuaternion {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if n == 0.0 {
        return UnitQuaternion::IDENTITY;
    }
    let (s, c) = (0.5 * n).sin_cos();
    UnitQuaternion::normalized(c, s * v[0] / n, s * v[1] / n, s * v[2] / n)
}

/// Endpoint of the sub-Riemannian geodesic at time `t`.
pub fn sr_exp(sc: &SrCovector, t: f64) -> Result<UnitQuaternion> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument {
            name: "t",
            value: t,
            expected: "a time >= 0",
        });
    }
    let (s, c) = sc.theta.sin_cos();
    let full = rotation_quaternion([t * c, t * s, t * sc.c]);
    let unwind = rotation_quaternion([0.0, 0.0, -t * sc.c]);
    Ok(full.mul(&unwind))
}

/// First sub-Riemannian conjugate time `2 pi / sqrt(1 + c^2)`, the first
/// positive zero of `sin(sqrt(1 + c^2) t / 2)`.
pub fn sr_conjugate_time(c: f64) -> f64 {
    2.0 * PI / (1.0 + c * c).sqrt()
}

/// Sub-Riemannian cut time of the vertical-circle point with argument
/// `arg_alpha in (0, 2 pi)`: `2 sqrt(arg_alpha (2 pi - arg_alpha))`.
pub fn sr_cut_time_axis(arg_alpha: f64) -> Result<f64> {
    if !(arg_alpha > 0.0 && arg_alpha < 2.0 * PI) {
        return Err(Error::InvalidArgument {
            name: "arg_alpha",
            value: arg_alpha,
            expected: "an angle in (0, 2 pi)",
        });
    }
    Ok(2.0 * (arg_alpha * (2.0 * PI - arg_alpha)).sqrt())
}

/// Riemannian cut time of the vertical-circle point, as a function of the
/// same circle argument:
/// `2 sqrt(I1) sqrt(pi^2 (1 + eta) - 2 pi eta arg_alpha + eta arg_alpha^2)`.
/// The linear term carries the coefficient `2 pi eta`; at `arg_alpha = pi`
/// the expression collapses to `2 pi sqrt(I1)` for every `eta`.
pub fn riemannian_axis_cut_time(i1: f64, eta: f64, arg_alpha: f64) -> Result<f64> {
    if !(arg_alpha > 0.0 && arg_alpha < 2.0 * PI) {
        return Err(Error::InvalidArgument {
            name: "arg_alpha",
            value: arg_alpha,
            expected: "an angle in (0, 2 pi)",
        });
    }
    let radicand = PI * PI * (1.0 + eta) - 2.0 * PI * eta * arg_alpha + eta * arg_alpha * arg_alpha;
    Ok(2.0 * i1.sqrt() * radicand.max(0.0).sqrt())
}

/// Sub-Riemannian cut time of a half-turn target with `|alpha| = alpha_norm`.
///
/// Solves the coupled system in `(c, t)`
///
/// ```text
/// sin(s t / 2) / s = sqrt(1 - alpha_norm^2),    s = sqrt(1 + c^2)
/// -c t / 2 + atan((c / s) tan(s t / 2)) = pi / 2
/// ```
///
/// on the branch `s t / 2 = pi - asin(s m)` by an outer scan-plus-bisection
/// in `c` over the box `c in [-50, 50]`, `t in (0, 2 pi]`.
pub fn sr_cut_time_plane(alpha_norm: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha_norm) {
        return Err(Error::InvalidArgument {
            name: "alpha_norm",
            value: alpha_norm,
            expected: "a modulus in [0, 1)",
        });
    }
    let m = (1.0 - alpha_norm * alpha_norm).sqrt();
    if alpha_norm == 0.0 {
        // c = 0, s t / 2 = pi / 2 exactly.
        return Ok(PI);
    }
    // Feasibility of the sine equation needs s * m <= 1.
    let c_max = ((1.0 / (m * m) - 1.0).sqrt()).min(50.0);
    let g = |c: f64| -> (f64, f64) {
        let s = (1.0 + c * c).sqrt();
        let half_phase = PI - (s * m).min(1.0).asin();
        let t = 2.0 * half_phase / s;
        let residual = -c * t / 2.0 + ((c / s) * half_phase.tan()).atan() - PI / 2.0;
        (residual, t)
    };
    // g < 0 near c = 0 and g > 0 near the feasibility edge; scan from the
    // inside out so the root closest to zero (the physical branch) wins.
    let steps = 400;
    let mut prev_c = -1e-12_f64.max(-c_max);
    let mut prev_g = g(prev_c).0;
    let mut bracket = None;
    for k in 1..=steps {
        let c = -c_max * (1.0 - 1e-12) * k as f64 / steps as f64;
        let val = g(c).0;
        if val == 0.0 {
            bracket = Some((c, c));
            break;
        }
        if val.signum() != prev_g.signum() {
            bracket = Some((c, prev_c));
            break;
        }
        prev_c = c;
        prev_g = val;
    }
    let Some((mut lo, mut hi)) = bracket else {
        return Err(Error::SolverFailed {
            context: "sr_cut_time_plane",
            detail: format!(
                "no sign change of the phase residual for alpha_norm = {alpha_norm} \
                 with c in [{:-.6}, 0)",
                c_max
            ),
        });
    };
    let mut flo = g(lo).0;
    for _ in 0..200 {
        if (hi - lo).abs() <= 1e-14 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = g(mid).0;
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let t = g(0.5 * (lo + hi)).1;
    if !(t > 0.0 && t <= 2.0 * PI) {
        return Err(Error::SolverFailed {
            context: "sr_cut_time_plane",
            detail: format!("solution t = {t} escaped the box (0, 2 pi]"),
        });
    }
    Ok(t)
}

/// Covector on the level surface of `metric` matching the sub-Riemannian
/// covector `(c, theta)`: `p3 = c`, horizontal part of norm
/// `sqrt(I1 - (1 + eta) c^2)` at phase `theta`.
pub fn matched_covector(metric: &Metric, c: f64, theta: f64) -> Result<Covector> {
    let horizontal_sq = metric.i1() - (1.0 + metric.eta()) * c * c;
    if horizontal_sq < 0.0 {
        return Err(Error::InvalidArgument {
            name: "c",
            value: c,
            expected: "a vertical component with (1 + eta) c^2 <= I1",
        });
    }
    let h = horizontal_sq.sqrt();
    Ok(Covector::new(h * theta.cos(), h * theta.sin(), c))
}

/// Hausdorff gap from the full sub-Riemannian vertical circle to the
/// Riemannian vertical cut segment, both viewed in SO(3). The segment covers
/// the circle arguments `[pi (1 + eta), pi - pi (1 + eta)]` modulo the
/// half-turn identification, so the gap is attained near the identity.
fn vertical_circle_gap(eta: f64, n: usize) -> f64 {
    let lo = PI * (1.0 + eta);
    let hi = PI - lo;
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let chi = PI * k as f64 / n as f64; // circle mod the sign flip
        let arc = if (lo..=hi).contains(&chi) {
            0.0
        } else if chi < lo {
            (lo - chi).min(chi + PI - hi)
        } else {
            (chi - hi).min(lo + PI - chi)
        };
        worst = worst.max(2.0 * (arc / 2.0).sin());
    }
    worst
}

/// Computes the Riemannian quantity and its sub-Riemannian counterpart for
/// each oblateness in `etas` (all in `(-1, 0)`, ordered toward `-1`).
pub fn convergence_report(
    i1: f64,
    quantity: SrQuantity,
    etas: &[f64],
    params: &SrCompareParams,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::with_capacity(etas.len());
    for &eta in etas {
        if !(eta > -1.0 && eta < 0.0) {
            return Err(Error::InvalidArgument {
                name: "eta",
                value: eta,
                expected: "an oblateness in (-1, 0)",
            });
        }
        let metric = Metric::from_oblateness(i1, eta)?;
        let (riemannian_value, sr_value) = match quantity {
            SrQuantity::GeodesicEndpoint => {
                let sc = SrCovector {
                    c: params.c,
                    theta: params.theta,
                };
                let p = matched_covector(&metric, params.c, params.theta)?;
                let n = params.n_t.max(2);
                let mut sup: f64 = 0.0;
                for k in 0..n {
                    let t = 2.0 * PI * k as f64 / (n - 1) as f64;
                    let riemannian = exp_map(&metric, &p, t)?;
                    let sub_riemannian = sr_exp(&sc, t)?;
                    sup = sup.max(so3_chordal_distance(&riemannian, &sub_riemannian));
                }
                (sup, 0.0)
            }
            SrQuantity::ConjugateTime => {
                let p = matched_covector(&metric, params.c, 0.0)?;
                let norm = p.norm();
                let tau = tau_conj(eta, p.pbar3())?.tau;
                (time_of_tau(&metric, norm, tau), sr_conjugate_time(params.c))
            }
            SrQuantity::CutTimeAxis => (
                riemannian_axis_cut_time(i1, eta, params.arg_alpha)?,
                sr_cut_time_axis(params.arg_alpha)?,
            ),
            SrQuantity::CutTimePlane => {
                let a = params.alpha_norm;
                if !(0.0..1.0).contains(&a) {
                    return Err(Error::InvalidArgument {
                        name: "alpha_norm",
                        value: a,
                        expected: "a modulus in [0, 1)",
                    });
                }
                let target = UnitQuaternion::normalized(0.0, (1.0 - a * a).sqrt(), 0.0, a);
                (distance(&metric, &target)?, sr_cut_time_plane(a)?)
            }
            SrQuantity::CutLocusHausdorff => (vertical_circle_gap(eta, 512), 0.0),
        };
        rows.push(ConvergenceRow {
            eta,
            riemannian_value,
            sr_value,
            abs_error: (riemannian_value - sr_value).abs(),
        });
    }
    Ok(rows)
}
