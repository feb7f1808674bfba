//! Evaluation of the quaternion components `q0`, `q3` along a geodesic as
//! functions of the rescaled time, and robust first-positive-root solvers.
//!
//! The Maxwell and conjugate structure of the problem reduces to the smallest
//! positive roots `tau0` of `q0` and `tau3` of `q3`, plus the conjugate root
//! `tau_conj`. All three functions have simple zeros, so a forward bracket
//! scan followed by bisection and one Newton polish is reliable:
//!
//! * scan step `min(pi/64, pi / (64 (1 + |eta|)))`, which resolves the
//!   fastest oscillation `cos(tau (1 + eta))`;
//! * scan ceiling `4 pi / min(1, 1 + eta)`; the root bounds place every first
//!   root below it, so running past the ceiling is reported as an internal
//!   error rather than guessed around.
//!
//! `tau3` is undefined at `pbar3 = 0` where `q3` vanishes identically; the
//! result carries an infinity marker there, meaning "no constraint".

use crate::error::{Error, Result};
use crate::metric::check_pbar3;
use std::f64::consts::{FRAC_PI_2, PI};

/// Residual bound certified by the solvers at a finite root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-12;

/// Width to which brackets are bisected before the Newton polish.
const BISECT_WIDTH: f64 = 1e-14;

/// Outcome of a first-positive-root search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    /// The root, or `f64::INFINITY` when the equation imposes no constraint.
    pub tau: f64,
    /// `|f(tau)|` at the returned root; zero for the infinity marker.
    pub residual: f64,
    /// Final bisection bracket, absent for closed-form and marker results.
    pub bracket: Option<(f64, f64)>,
}

impl RootResult {
    pub fn is_finite(&self) -> bool {
        self.tau.is_finite()
    }

    fn infinite() -> Self {
        RootResult {
            tau: f64::INFINITY,
            residual: 0.0,
            bracket: None,
        }
    }

    fn exact(tau: f64, residual: f64) -> Self {
        RootResult {
            tau,
            residual,
            bracket: None,
        }
    }
}

/// `q0(tau) = cos(tau) cos(tau eta pbar3) - pbar3 sin(tau) sin(tau eta pbar3)`
/// and its derivative in `tau`.
pub fn eval_q0(eta: f64, pbar3: f64, tau: f64) -> (f64, f64) {
    let b = tau * eta * pbar3;
    let (st, ct) = tau.sin_cos();
    let (sb, cb) = b.sin_cos();
    let value = ct * cb - pbar3 * st * sb;
    let dtau = -(1.0 + eta * pbar3 * pbar3) * st * cb - pbar3 * (eta + 1.0) * ct * sb;
    (value, dtau)
}

/// `q3(tau) = cos(tau) sin(tau eta pbar3) + pbar3 sin(tau) cos(tau eta pbar3)`
/// and its derivative in `tau`.
pub fn eval_q3(eta: f64, pbar3: f64, tau: f64) -> (f64, f64) {
    let b = tau * eta * pbar3;
    let (st, ct) = tau.sin_cos();
    let (sb, cb) = b.sin_cos();
    let value = ct * sb + pbar3 * st * cb;
    let dtau = -(1.0 + eta * pbar3 * pbar3) * st * sb + pbar3 * (eta + 1.0) * ct * cb;
    (value, dtau)
}

/// Smallest positive root of `q0`. Finite for every `pbar3` in `[-1, 1]`.
pub fn tau0(eta: f64, pbar3: f64) -> Result<RootResult> {
    check_pbar3(pbar3)?;
    smallest_positive_root(|tau| eval_q0(eta, pbar3, tau), eta, pbar3, "q0", false)
}

/// Smallest positive root of `q3`, or the infinity marker at `pbar3 = 0`
/// where the equation holds identically.
pub fn tau3(eta: f64, pbar3: f64) -> Result<RootResult> {
    check_pbar3(pbar3)?;
    if pbar3 == 0.0 {
        return Ok(RootResult::infinite());
    }
    smallest_positive_root(|tau| eval_q3(eta, pbar3, tau), eta, pbar3, "q3", true)
}

/// First conjugate root in the rescaled time.
///
/// Exactly `pi` for `eta <= 0`. For `eta > 0` it is the smallest positive
/// root of `tan(tau) = -eta (1 - pbar3^2) / (1 + eta pbar3^2) * tau`, solved
/// on `(pi/2, pi]` in the pole-free form
/// `f(tau) = sin(tau) (1 + eta pbar3^2) + eta (1 - pbar3^2) tau cos(tau)`.
pub fn tau_conj(eta: f64, pbar3: f64) -> Result<RootResult> {
    check_pbar3(pbar3)?;
    if eta <= 0.0 {
        return Ok(RootResult::exact(PI, 0.0));
    }
    let a_coef = 1.0 + eta * pbar3 * pbar3;
    let b_coef = eta * (1.0 - pbar3 * pbar3);
    let f = |tau: f64| {
        let (s, c) = tau.sin_cos();
        (
            s * a_coef + b_coef * tau * c,
            c * a_coef + b_coef * (c - tau * s),
        )
    };
    let fb = f(PI).0;
    if fb == 0.0 {
        // pbar3 = +/-1: the equation degenerates to sin(tau)(1 + eta) = 0.
        return Ok(RootResult::exact(PI, 0.0));
    }
    let (tau, residual, bracket) = bisect_and_polish(&f, FRAC_PI_2, PI, f(FRAC_PI_2).0, fb);
    Ok(RootResult {
        tau,
        residual,
        bracket: Some(bracket),
    })
}

/// Forward scan for the first sign change, then bisection plus a Newton
/// polish. `skip_origin` starts the scan one step in, for functions that
/// vanish at `tau = 0` without that being a positive root.
fn smallest_positive_root(
    f: impl Fn(f64) -> (f64, f64),
    eta: f64,
    pbar3: f64,
    name: &'static str,
    skip_origin: bool,
) -> Result<RootResult> {
    let step = (PI / 64.0).min(PI / (64.0 * (1.0 + eta.abs())));
    let ceiling = 4.0 * PI / 1.0f64.min(1.0 + eta);

    let mut a = if skip_origin { step } else { 0.0 };
    let mut fa = f(a).0;
    if fa == 0.0 && a > 0.0 {
        return Ok(RootResult::exact(a, 0.0));
    }
    while a < ceiling {
        let b = a + step;
        let fb = f(b).0;
        if fb == 0.0 {
            return Ok(RootResult::exact(b, 0.0));
        }
        if fa.signum() != fb.signum() {
            let (tau, residual, bracket) = bisect_and_polish(&f, a, b, fa, fb);
            return Ok(RootResult {
                tau,
                residual,
                bracket: Some(bracket),
            });
        }
        a = b;
        fa = fb;
    }
    Err(Error::RootScanExhausted {
        function: name,
        eta,
        pbar3,
        ceiling,
    })
}

/// Bisects a sign-changing bracket down to [`BISECT_WIDTH`] (or the rounding
/// floor at large arguments), then applies one Newton step with the analytic
/// derivative.
fn bisect_and_polish(
    f: &impl Fn(f64) -> (f64, f64),
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    _fb: f64,
) -> (f64, f64, (f64, f64)) {
    for _ in 0..200 {
        if b - a <= BISECT_WIDTH + 4.0 * f64::EPSILON * b {
            break;
        }
        let mid = 0.5 * (a + b);
        let fm = f(mid).0;
        if fm == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    let mut tau = 0.5 * (a + b);
    let (value, dtau) = f(tau);
    if dtau != 0.0 {
        let polished = tau - value / dtau;
        // Simple roots keep the Newton step inside a slightly widened bracket.
        if polished >= a - BISECT_WIDTH && polished <= b + BISECT_WIDTH {
            tau = polished;
        }
    }
    (tau, f(tau).0.abs(), (a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn q0_collapses_at_equator_and_poles() {
        for &eta in &[-0.75, -0.5, 0.0, 1.0, 4.0] {
            let (v, d) = eval_q0(eta, 0.0, 0.9);
            assert!((v - 0.9f64.cos()).abs() < TOL);
            assert!((d + 0.9f64.sin()).abs() < TOL);
            let (vp, _) = eval_q0(eta, 1.0, 0.7);
            assert!((vp - (0.7 * (1.0 + eta)).cos()).abs() < TOL);
        }
    }

    #[test]
    fn q0_prolate_sample_value() {
        let (v, _) = eval_q0(1.0, 0.5, FRAC_PI_2);
        assert!((v - (-0.5 * (PI / 4.0).sin())).abs() < TOL);
    }

    #[test]
    fn q3_identically_zero_at_equator() {
        for &tau in &[0.3, 1.0, 2.9, 11.0] {
            let (v, _) = eval_q3(-0.6, 0.0, tau);
            assert_eq!(v, 0.0);
        }
        let (vp, _) = eval_q3(0.7, 1.0, 1.3);
        assert!((vp - (1.3 * 1.7f64).sin()).abs() < TOL);
    }

    #[test]
    fn q3_sample_value() {
        // eta = -1/2, pbar3 = 1/2, tau = pi: value is -sin(-pi/4) = sin(pi/4).
        let (v, _) = eval_q3(-0.5, 0.5, PI);
        assert!((v - (PI / 4.0).sin()).abs() < TOL);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-6;
        for &eta in &[-0.75, -0.3, 0.0, 1.0, 4.0] {
            for k in 0..9 {
                let pbar3 = -1.0 + 0.25 * k as f64;
                for j in 1..12 {
                    let tau = 0.3 * j as f64;
                    let (_, d0) = eval_q0(eta, pbar3, tau);
                    let fd0 =
                        (eval_q0(eta, pbar3, tau + h).0 - eval_q0(eta, pbar3, tau - h).0) / (2.0 * h);
                    assert!((d0 - fd0).abs() < 1e-8, "q0 eta={eta} pbar3={pbar3} tau={tau}");
                    let (_, d3) = eval_q3(eta, pbar3, tau);
                    let fd3 =
                        (eval_q3(eta, pbar3, tau + h).0 - eval_q3(eta, pbar3, tau - h).0) / (2.0 * h);
                    assert!((d3 - fd3).abs() < 1e-8, "q3 eta={eta} pbar3={pbar3} tau={tau}");
                }
            }
        }
    }

    #[test]
    fn tau0_euler_and_pole_anchors() {
        for k in 0..=100 {
            let pbar3 = -1.0 + 0.02 * k as f64;
            let r = tau0(0.0, pbar3).unwrap();
            assert!((r.tau - FRAC_PI_2).abs() < TOL);
            assert!(r.residual < ROOT_RESIDUAL_TOL);
        }
        for &eta in &[-0.75, -0.5, -0.25, 0.0, 1.0, 4.0] {
            for &pbar3 in &[-1.0, 1.0] {
                let r = tau0(eta, pbar3).unwrap();
                assert!(
                    (r.tau - PI / (2.0 * (1.0 + eta))).abs() < TOL,
                    "tau0 anchor eta={eta}"
                );
            }
        }
    }

    #[test]
    fn tau3_pole_anchor_and_marker() {
        for &eta in &[-0.75, -0.5, -0.25, 0.0, 1.0, 4.0] {
            let r = tau3(eta, 1.0).unwrap();
            assert!((r.tau - PI / (1.0 + eta)).abs() < TOL, "tau3 anchor eta={eta}");
            assert!(!tau3(eta, 0.0).unwrap().is_finite());
        }
    }

    #[test]
    fn tau3_oblate_interior_value_exceeds_pi() {
        let r = tau3(-0.5, 0.5).unwrap();
        assert!(r.is_finite());
        assert!(r.tau >= PI - 1e-12);
        assert!(r.residual < ROOT_RESIDUAL_TOL);
    }

    #[test]
    fn tau0_stays_below_half_pi_for_prolate_metrics() {
        for &eta in &[0.1, 0.5, 1.0, 4.0, 9.0] {
            for k in 0..=40 {
                let pbar3 = -1.0 + 0.05 * k as f64;
                let r = tau0(eta, pbar3).unwrap();
                assert!(
                    r.tau > 0.0 && r.tau <= FRAC_PI_2 + 1e-12,
                    "eta={eta}, pbar3={pbar3}: tau0 = {}",
                    r.tau
                );
                assert!(r.residual < ROOT_RESIDUAL_TOL);
            }
        }
    }

    #[test]
    fn tau_conj_branches() {
        for k in 0..=10 {
            let pbar3 = -1.0 + 0.2 * k as f64;
            let r = tau_conj(-0.5, pbar3).unwrap();
            assert_eq!(r.tau, PI);
        }
        for &eta in &[0.5, 1.0, 4.0] {
            assert_eq!(tau_conj(eta, 1.0).unwrap().tau, PI);
            assert_eq!(tau_conj(eta, -1.0).unwrap().tau, PI);
        }
        // Root of tan(tau) = -tau on (pi/2, pi).
        let r = tau_conj(1.0, 0.0).unwrap();
        assert!((r.tau - 2.028757838110434).abs() < 1e-9);
        assert!(r.tau > FRAC_PI_2 && r.tau < PI);
        assert!(r.residual < ROOT_RESIDUAL_TOL);
    }

    #[test]
    fn simple_roots_have_nonzero_slope() {
        for &eta in &[-0.9, -0.75, -0.5, 0.0, 1.0, 4.0] {
            for k in 0..=40 {
                let pbar3 = -1.0 + 0.05 * k as f64;
                let r0 = tau0(eta, pbar3).unwrap();
                assert!(eval_q0(eta, pbar3, r0.tau).1.abs() > 1e-8);
                if pbar3 != 0.0 {
                    let r3 = tau3(eta, pbar3).unwrap();
                    assert!(eval_q3(eta, pbar3, r3.tau).1.abs() > 1e-8);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn tau0_and_tau3_are_even(eta in -0.9f64..4.0, pbar3 in 1e-3f64..1.0) {
            let plus = tau0(eta, pbar3).unwrap().tau;
            let minus = tau0(eta, -pbar3).unwrap().tau;
            prop_assert!((plus - minus).abs() < 1e-12);
            let p3 = tau3(eta, pbar3).unwrap().tau;
            let m3 = tau3(eta, -pbar3).unwrap().tau;
            prop_assert!((p3 - m3).abs() < 1e-12);
        }

        #[test]
        fn tau0_below_tau3(eta in -0.9f64..4.0, pbar3 in 1e-3f64..1.0) {
            let r0 = tau0(eta, pbar3).unwrap().tau;
            let r3 = tau3(eta, pbar3).unwrap().tau;
            prop_assert!(r0 < r3);
        }

        #[test]
        fn tau0_continuity_under_small_steps(eta in -0.9f64..4.0, pbar3 in -0.99f64..0.99) {
            let here = tau0(eta, pbar3).unwrap().tau;
            let near = tau0(eta, pbar3 + 1e-7).unwrap().tau;
            // The slope of tau0 is bounded on compact eta ranges.
            prop_assert!((here - near).abs() < 1e-3);
        }
    }
}
