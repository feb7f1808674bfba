//! The closed-form exponential map, the vertical momentum flow, and the
//! symmetry group acting on both ends of the exponential map.
//!
//! With the rescaled time `tau = t |p| / (2 I1)` and `b = tau * eta * pbar3`,
//! the lifted geodesic through the identity is
//!
//! ```text
//! w      = cos(tau) cos(b) - pbar3 sin(tau) sin(b)
//! (x, y) = sin(tau) * R_{e3, -b} (pbar1, pbar2)
//! z      = cos(tau) sin(b) + pbar3 sin(tau) cos(b)
//! ```
//!
//! and the momentum evolves by `pbar(tau) = R_{e3, -2 tau eta pbar3} pbar(0)`
//! with `|p|` constant. All public signatures take physical time `t`; the
//! rescaling is internal.
//!
//! The symmetry group is generated by rotations about `e3` and the two
//! reflections in `span{e1, e3}` and `span{e1, e2}`. Each element acts on the
//! target side by rotating/reflecting the imaginary part of the quaternion;
//! on the source side the reflections must additionally ride the vertical
//! flow because each of them reverses it.

use crate::error::{Error, Result};
use crate::metric::{Covector, Metric};
use crate::rotation::{UnitQuaternion, Vec3};

/// Element of the symmetry group, stored as the composition
/// `sigma2^{reflect_12} . sigma1^{reflect_13} . R_{e3, alpha}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryElement {
    /// Rotation angle about `e3`, reduced into `[0, 2 pi)`.
    pub alpha: f64,
    /// Apply `sigma1`, the reflection in `span{e1, e3}` (flips the second
    /// coordinate).
    pub reflect_13: bool,
    /// Apply `sigma2`, the reflection in `span{e1, e2}` (flips the third
    /// coordinate).
    pub reflect_12: bool,
}

impl SymmetryElement {
    pub fn new(alpha: f64, reflect_13: bool, reflect_12: bool) -> Self {
        SymmetryElement {
            alpha: alpha.rem_euclid(2.0 * std::f64::consts::PI),
            reflect_13,
            reflect_12,
        }
    }

    pub fn identity() -> Self {
        SymmetryElement::new(0.0, false, false)
    }

    pub fn rotation(alpha: f64) -> Self {
        SymmetryElement::new(alpha, false, false)
    }

    /// Reflection in `span{e1, e3}`.
    pub fn sigma1() -> Self {
        SymmetryElement::new(0.0, true, false)
    }

    /// Reflection in `span{e1, e2}`.
    pub fn sigma2() -> Self {
        SymmetryElement::new(0.0, false, true)
    }

    /// Orthogonal action on vectors/covectors.
    pub fn apply(&self, v: Vec3) -> Vec3 {
        let (s, c) = self.alpha.sin_cos();
        let mut out = [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]];
        if self.reflect_13 {
            out[1] = -out[1];
        }
        if self.reflect_12 {
            out[2] = -out[2];
        }
        out
    }

    /// Whether the element preserves the vertical flow direction. Each
    /// reflection reverses it; rotations and the product of both reflections
    /// preserve it.
    pub fn preserves_vertical_field(&self) -> bool {
        self.reflect_13 == self.reflect_12
    }
}

/// Rescaled time `tau = t |p| / (2 I1)`.
pub(crate) fn tau_of_time(metric: &Metric, p_norm: f64, t: f64) -> f64 {
    t * p_norm / (2.0 * metric.i1())
}

/// Physical time from the rescaled one, `t = 2 I1 tau / |p|`.
pub(crate) fn time_of_tau(metric: &Metric, p_norm: f64, tau: f64) -> f64 {
    2.0 * metric.i1() * tau / p_norm
}

/// Geodesic quaternion in the rescaled time, given `pbar` and `eta`.
pub(crate) fn quaternion_at_tau(eta: f64, pbar: Vec3, tau: f64) -> UnitQuaternion {
    let b = tau * eta * pbar[2];
    let (st, ct) = tau.sin_cos();
    let (sb, cb) = b.sin_cos();
    let w = ct * cb - pbar[2] * st * sb;
    // R_{e3, -b} applied to (pbar1, pbar2).
    let x = st * (pbar[0] * cb + pbar[1] * sb);
    let y = st * (-pbar[0] * sb + pbar[1] * cb);
    let z = ct * sb + pbar[2] * st * cb;
    UnitQuaternion::normalized(w, x, y, z)
}

/// Endpoint of the unit-speed geodesic with initial covector `p` at time `t`,
/// as a unit quaternion (either sign of the double cover).
pub fn exp_map(metric: &Metric, p: &Covector, t: f64) -> Result<UnitQuaternion> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument {
            name: "t",
            value: t,
            expected: "a time >= 0",
        });
    }
    p.check_on_level_surface(metric)?;
    let tau = tau_of_time(metric, p.norm(), t);
    Ok(quaternion_at_tau(metric.eta(), p.pbar(), tau))
}

/// Momentum covector at time `t` along the geodesic flow: the `(p1, p2)` pair
/// rotates by `-2 tau eta pbar3` about `e3`, `p3` and `|p|` stay fixed.
pub fn vertical_flow(metric: &Metric, p: &Covector, t: f64) -> Result<Covector> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument {
            name: "t",
            value: t,
            expected: "a time >= 0",
        });
    }
    p.check_on_level_surface(metric)?;
    let norm = p.norm();
    let tau = tau_of_time(metric, norm, t);
    let angle = -2.0 * tau * metric.eta() * (p.p3 / norm);
    let (s, c) = angle.sin_cos();
    Ok(Covector::new(
        c * p.p1 - s * p.p2,
        s * p.p1 + c * p.p2,
        p.p3,
    ))
}

/// Source-side action of a symmetry element on `(p, t)`.
///
/// Elements preserving the vertical field act directly on the covector;
/// the others act on the vertically flowed covector at time `t`.
pub fn apply_symmetry_source(
    metric: &Metric,
    sigma: &SymmetryElement,
    p: &Covector,
    t: f64,
) -> Result<(Covector, f64)> {
    let moved = if sigma.preserves_vertical_field() {
        *p
    } else {
        vertical_flow(metric, p, t)?
    };
    let v = sigma.apply([moved.p1, moved.p2, moved.p3]);
    Ok((Covector::new(v[0], v[1], v[2]), t))
}

/// Target-side action: the element acts on the imaginary part of the
/// quaternion, the real part is unchanged.
pub fn apply_symmetry_target(sigma: &SymmetryElement, q: &UnitQuaternion) -> UnitQuaternion {
    let v = sigma.apply(q.imag());
    UnitQuaternion {
        w: q.w,
        x: v[0],
        y: v[1],
        z: v[2],
    }
}

/// Geodesic sampled at a list of strictly increasing times.
#[derive(Debug, Clone)]
pub struct GeodesicSample {
    pub points: Vec<(f64, UnitQuaternion)>,
}

/// `n` equally spaced samples of the geodesic on `[0, t_end]`.
pub fn sample_geodesic(
    metric: &Metric,
    p: &Covector,
    t_end: f64,
    n: usize,
) -> Result<GeodesicSample> {
    if n < 2 {
        return Err(Error::InvalidCount {
            name: "n",
            value: n,
            min: 2,
        });
    }
    if !(t_end > 0.0) {
        return Err(Error::InvalidArgument {
            name: "t_end",
            value: t_end,
            expected: "a time > 0",
        });
    }
    p.check_on_level_surface(metric)?;
    let mut points = Vec::with_capacity(n);
    for k in 0..n {
        let t = t_end * k as f64 / (n - 1) as f64;
        points.push((t, exp_map(metric, p, t)?));
    }
    Ok(GeodesicSample { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::so3_chordal_distance;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    fn euler() -> Metric {
        Metric::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn exp_at_time_zero_is_identity() {
        let m = Metric::new(1.0, 4.0).unwrap();
        let p = Covector::from_angles(&m, 0.3, 0.9).unwrap();
        let q = exp_map(&m, &p, 0.0).unwrap();
        assert!(q.raw_distance(&UnitQuaternion::IDENTITY) < TOL);
    }

    #[test]
    fn euler_case_rotates_about_momentum_axis() {
        let m = euler();
        let p = Covector::new(0.0, 0.0, 1.0);
        for &phi in &[0.1, 1.0, 2.5, PI] {
            let q = exp_map(&m, &p, phi).unwrap();
            let expected = UnitQuaternion::from_axis_angle([0.0, 0.0, 1.0], phi);
            assert!(q.raw_distance(&expected) < TOL, "phi = {phi}");
        }
    }

    #[test]
    fn prolate_quarter_turn_components() {
        // eta = 1, pbar3 = 1/2, azimuth 0, time chosen so tau = pi/2.
        let m = Metric::from_oblateness(1.0, 1.0).unwrap();
        let p = Covector::from_angles(&m, 0.5, 0.0).unwrap();
        let t = 2.0 * m.i1() * (PI / 2.0) / p.norm();
        let q = exp_map(&m, &p, t).unwrap();
        let s2 = 2f64.sqrt();
        assert!((q.w - (-0.5 * (PI / 4.0).sin())).abs() < TOL);
        assert!((q.x - 6f64.sqrt() / 4.0).abs() < TOL);
        assert!((q.y + 6f64.sqrt() / 4.0).abs() < TOL);
        assert!((q.z - s2 / 4.0).abs() < TOL);
    }

    #[test]
    fn exp_rejects_off_surface_covectors() {
        let m = Metric::new(1.0, 4.0).unwrap();
        let p = Covector::new(0.5, 0.0, 0.0);
        assert!(matches!(
            exp_map(&m, &p, 1.0),
            Err(Error::OffLevelSurface { .. })
        ));
        let good = Covector::from_angles(&m, 0.0, 0.0).unwrap();
        assert!(exp_map(&m, &good, -0.1).is_err());
    }

    #[test]
    fn vertical_flow_fixed_points() {
        let m = euler();
        let p = Covector::from_angles(&m, 0.4, 1.3).unwrap();
        let moved = vertical_flow(&m, &p, 2.2).unwrap();
        assert!(p.norm() - moved.norm() < TOL);
        assert!((p.p1 - moved.p1).abs() < TOL); // eta = 0 kills the flow

        let m2 = Metric::new(1.0, 4.0).unwrap();
        let equatorial = Covector::from_angles(&m2, 0.0, 0.7).unwrap();
        let moved2 = vertical_flow(&m2, &equatorial, 3.3).unwrap();
        assert!(equatorial.p1 - moved2.p1 < TOL); // pbar3 = 0: angle is zero
        assert!(vertical_flow(&m2, &equatorial, -0.5).is_err());
    }

    #[test]
    fn vertical_flow_half_turn() {
        // eta = 1, pbar3 = 1/2, tau = pi rotates (p1, p2) by -pi.
        let m = Metric::from_oblateness(1.0, 1.0).unwrap();
        let p = Covector::from_angles(&m, 0.5, 0.0).unwrap();
        let t = 2.0 * m.i1() * PI / p.norm();
        let moved = vertical_flow(&m, &p, t).unwrap();
        assert!((moved.p1 + p.p1).abs() < 1e-12);
        assert!(moved.p2.abs() < 1e-12);
        assert_eq!(moved.p3, p.p3);
    }

    #[test]
    fn symmetry_identity_for_generators() {
        let m = Metric::new(1.0, 4.0).unwrap();
        let p = Covector::from_angles(&m, 0.5, 0.9).unwrap();
        let t = 1.7;
        let generators = [
            SymmetryElement::identity(),
            SymmetryElement::rotation(0.8),
            SymmetryElement::rotation(PI),
            SymmetryElement::sigma1(),
            SymmetryElement::sigma2(),
            SymmetryElement::new(2.1, true, true),
        ];
        for sigma in &generators {
            let (p_src, t_src) = apply_symmetry_source(&m, sigma, &p, t).unwrap();
            let lhs = exp_map(&m, &p_src, t_src).unwrap();
            let rhs = apply_symmetry_target(sigma, &exp_map(&m, &p, t).unwrap());
            assert!(
                so3_chordal_distance(&lhs, &rhs) < TOL,
                "symmetry identity failed for {sigma:?}"
            );
        }
    }

    #[test]
    fn target_action_on_components() {
        let q = UnitQuaternion::normalized(0.3, 0.5, -0.4, 0.7);
        let s2 = apply_symmetry_target(&SymmetryElement::sigma2(), &q);
        assert_eq!((s2.w, s2.x, s2.y, s2.z), (q.w, q.x, q.y, -q.z));
        let rot = apply_symmetry_target(&SymmetryElement::rotation(PI / 2.0), &q);
        assert!((rot.x + q.y).abs() < TOL);
        assert!((rot.y - q.x).abs() < TOL);
        assert_eq!(rot.z, q.z);
    }

    #[test]
    fn sampling_endpoints_and_spacing() {
        let m = euler();
        let p = Covector::new(0.0, 0.0, 1.0);
        let s = sample_geodesic(&m, &p, PI, 3).unwrap();
        assert_eq!(s.points.len(), 3);
        assert!((s.points[1].0 - PI / 2.0).abs() < TOL);
        let expected_mid = UnitQuaternion::from_axis_angle([0.0, 0.0, 1.0], PI / 2.0);
        assert!(s.points[1].1.raw_distance(&expected_mid) < TOL);
        assert!(sample_geodesic(&m, &p, PI, 1).is_err());
        assert!(sample_geodesic(&m, &p, 0.0, 4).is_err());
    }

    proptest! {
        #[test]
        fn exp_map_output_is_normalized(
            eta in -0.95f64..4.0,
            pbar3 in -1.0f64..1.0,
            azimuth in 0.0f64..std::f64::consts::TAU,
            tau in 0.0f64..8.0,
        ) {
            let m = Metric::from_oblateness(1.0, eta).unwrap();
            let p = Covector::from_angles(&m, pbar3, azimuth).unwrap();
            let t = 2.0 * m.i1() * tau / p.norm();
            let q = exp_map(&m, &p, t).unwrap();
            prop_assert!((q.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn symmetry_identity_random_elements(
            eta in -0.9f64..3.0,
            pbar3 in -0.999f64..0.999,
            azimuth in 0.0f64..std::f64::consts::TAU,
            alpha in 0.0f64..std::f64::consts::TAU,
            r13 in proptest::bool::ANY,
            r12 in proptest::bool::ANY,
            t in 0.0f64..6.0,
        ) {
            let m = Metric::from_oblateness(1.0, eta).unwrap();
            let p = Covector::from_angles(&m, pbar3, azimuth).unwrap();
            let sigma = SymmetryElement::new(alpha, r13, r12);
            let (p_src, t_src) = apply_symmetry_source(&m, &sigma, &p, t).unwrap();
            let lhs = exp_map(&m, &p_src, t_src).unwrap();
            let rhs = apply_symmetry_target(&sigma, &exp_map(&m, &p, t).unwrap());
            prop_assert!(so3_chordal_distance(&lhs, &rhs) < 1e-12);
        }
    }
}
