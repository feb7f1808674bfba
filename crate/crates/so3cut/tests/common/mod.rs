//! Shared test oracles: an RK4 integrator for the geodesic equations that is
//! independent of the closed-form evaluation path, and seeded sampling
//! helpers. Each integration-test binary compiles this module separately,
//! so not every item is used everywhere.
#![allow(dead_code)]

use rand::Rng;
use so3cut::{Covector, Metric};

/// Integrated state: quaternion lift and momentum covector.
pub struct OdeResult {
    pub q: [f64; 4],
    pub p: [f64; 3],
}

/// RK4 integration of the geodesic equations from the identity:
/// `dq/dt = q * Omega / 2` (Hamilton product with the pure-imaginary body
/// velocity `Omega = (p1/I1, p2/I2, p3/I3)`) and `dp/dt = p x Omega`.
pub fn rk4_hamiltonian(metric: &Metric, p0: &Covector, t_end: f64, steps: usize) -> OdeResult {
    let inertia = [metric.i1(), metric.i2(), metric.i3()];
    let deriv = |s: &[f64; 7]| -> [f64; 7] {
        let om = [s[4] / inertia[0], s[5] / inertia[1], s[6] / inertia[2]];
        let (w, x, y, z) = (s[0], s[1], s[2], s[3]);
        [
            0.5 * (-x * om[0] - y * om[1] - z * om[2]),
            0.5 * (w * om[0] + y * om[2] - z * om[1]),
            0.5 * (w * om[1] - x * om[2] + z * om[0]),
            0.5 * (w * om[2] + x * om[1] - y * om[0]),
            s[5] * om[2] - s[6] * om[1],
            s[6] * om[0] - s[4] * om[2],
            s[4] * om[1] - s[5] * om[0],
        ]
    };
    let mut s = [1.0, 0.0, 0.0, 0.0, p0.p1, p0.p2, p0.p3];
    let h = t_end / steps as f64;
    for _ in 0..steps {
        let k1 = deriv(&s);
        let mut s2 = s;
        for i in 0..7 {
            s2[i] = s[i] + 0.5 * h * k1[i];
        }
        let k2 = deriv(&s2);
        let mut s3 = s;
        for i in 0..7 {
            s3[i] = s[i] + 0.5 * h * k2[i];
        }
        let k3 = deriv(&s3);
        let mut s4 = s;
        for i in 0..7 {
            s4[i] = s[i] + h * k3[i];
        }
        let k4 = deriv(&s4);
        for i in 0..7 {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    OdeResult {
        q: [s[0], s[1], s[2], s[3]],
        p: [s[4], s[5], s[6]],
    }
}

/// Random covector on the level surface of `metric`.
pub fn random_covector<R: Rng>(rng: &mut R, metric: &Metric) -> Covector {
    let pbar3 = rng.random_range(-1.0..=1.0);
    let azimuth = rng.random_range(0.0..std::f64::consts::TAU);
    Covector::from_angles(metric, pbar3, azimuth).expect("pbar3 in range")
}
