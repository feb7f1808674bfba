//! Riemannian distance from the identity by inverting the exponential map on
//! its injectivity domain, plus an independent brute-force shooting oracle.
//!
//! The real part `w` and third imaginary part `z` of the geodesic quaternion
//! depend only on `(pbar3, tau)`, so inversion reduces to the 2x2 system
//! `q0(pbar3, tau) = w`, `q3(pbar3, tau) = z` (both double-cover signs are
//! tried), solved by grid seeding plus damped Newton with analytic
//! tau-derivatives and finite-difference pbar3-derivatives. The azimuth then
//! falls out of the `(x, y)` pair by undoing the in-plane twist.
//!
//! For targets on the cut locus the solver runs in boundary mode and returns
//! representatives of every minimizer arriving at the common cut time; where
//! the preimage is a continuum (vertical-axis targets, where the azimuth is
//! free) two representatives stand in for the family.

use crate::cut::{classify_cut_point, diameter, maxwell_time, PointClass};
use crate::error::{Error, Result};
use crate::geodesic::{exp_map, time_of_tau};
use crate::metric::{Covector, Metric};
use crate::roots::{eval_q0, eval_q3};
use crate::rotation::{so3_chordal_distance, Rotation, UnitQuaternion};
use std::f64::consts::PI;

/// Forward residual every accepted solution must satisfy.
pub const INVERSION_TOL: f64 = 1e-9;

/// One covector/time pair mapping onto the target.
#[derive(Debug, Clone, Copy)]
pub struct InverseSolution {
    pub covector: Covector,
    pub time: f64,
    /// Chordal distance between `exp_map(covector, time)` and the target.
    pub residual: f64,
}

/// Result of inverting the exponential map at a target rotation.
#[derive(Debug, Clone)]
pub enum Preimage {
    /// Unique minimizer strictly inside the injectivity domain.
    Interior(InverseSolution),
    /// Cut-locus target: at least two minimizers arrive at the cut time.
    /// The list holds representatives; along the vertical axis the full
    /// preimage is a circle of azimuths.
    CutBoundary {
        time: f64,
        solutions: Vec<InverseSolution>,
    },
}

/// Joint evaluation of `(q0 - w, q3 - z)`.
fn pair_residual(eta: f64, pbar3: f64, tau: f64, w: f64, z: f64) -> (f64, f64) {
    let b = tau * eta * pbar3;
    let (st, ct) = tau.sin_cos();
    let (sb, cb) = b.sin_cos();
    (
        ct * cb - pbar3 * st * sb - w,
        ct * sb + pbar3 * st * cb - z,
    )
}

/// Damped Newton on the 2x2 system from a seed; `None` when it fails to
/// reach the residual tolerance.
fn newton_q0q3(eta: f64, w: f64, z: f64, seed: (f64, f64)) -> Option<(f64, f64)> {
    let (mut pb, mut tau) = seed;
    let (mut f1, mut f2) = pair_residual(eta, pb, tau, w, z);
    let mut r2 = f1 * f1 + f2 * f2;
    let fd = 1e-6;
    for _ in 0..60 {
        if r2 < 1e-28 {
            break;
        }
        let d0t = eval_q0(eta, pb, tau).1;
        let d3t = eval_q3(eta, pb, tau).1;
        let d0p = (eval_q0(eta, pb + fd, tau).0 - eval_q0(eta, pb - fd, tau).0) / (2.0 * fd);
        let d3p = (eval_q3(eta, pb + fd, tau).0 - eval_q3(eta, pb - fd, tau).0) / (2.0 * fd);
        let det = d0p * d3t - d0t * d3p;
        if det.abs() < 1e-14 {
            break;
        }
        let dp = ((-f1) * d3t + f2 * d0t) / det;
        let dt = (f1 * d3p - f2 * d0p) / det;
        let dp = dp.clamp(-0.25, 0.25);
        let dt = dt.clamp(-0.5, 0.5);
        let mut lambda = 1.0;
        let mut moved = false;
        while lambda >= 1e-4 {
            let npb = pb + lambda * dp;
            let ntau = tau + lambda * dt;
            let (n1, n2) = pair_residual(eta, npb, ntau, w, z);
            let nr2 = n1 * n1 + n2 * n2;
            if nr2 < r2 {
                pb = npb;
                tau = ntau;
                f1 = n1;
                f2 = n2;
                r2 = nr2;
                moved = true;
                break;
            }
            lambda *= 0.5;
        }
        if !moved {
            break;
        }
    }
    (r2.sqrt() < 1e-11).then_some((pb, tau))
}

/// Builds and residual-checks a solution from a converged `(pbar3, tau)`.
fn push_solution(
    metric: &Metric,
    target: &UnitQuaternion,
    sign: f64,
    pb: f64,
    tau: f64,
    out: &mut Vec<InverseSolution>,
) {
    if !(tau > 0.0) || pb.abs() > 1.0 + 1e-9 {
        return;
    }
    let pb = pb.clamp(-1.0, 1.0);
    let norm = metric.p_norm(pb).expect("pbar3 clamped");
    let t = time_of_tau(metric, norm, tau);
    let xy_mag = tau.sin() * (1.0 - pb * pb).max(0.0).sqrt();
    let azimuths = if xy_mag < 1e-8 {
        // The (x, y) pair vanishes: any azimuth reaches the target, so emit
        // two representatives of the circle.
        vec![0.0, PI]
    } else {
        vec![(sign * target.y).atan2(sign * target.x) + tau * metric.eta() * pb]
    };
    for az in azimuths {
        let Ok(cov) = Covector::from_angles(metric, pb, az) else {
            continue;
        };
        let Ok(fwd) = exp_map(metric, &cov, t) else {
            continue;
        };
        let residual = so3_chordal_distance(&fwd, target);
        if residual < INVERSION_TOL {
            out.push(InverseSolution {
                covector: cov,
                time: t,
                residual,
            });
        }
    }
}

/// Preimages of a vertical-axis target (`x = y = 0`, so `w^2 + z^2 = 1`).
///
/// Such targets sit on the fold of the `(pbar3, tau) -> (q0, q3)` map where
/// the Newton system is singular, but they admit closed-form preimages: the
/// `tau = pi` family with `pi eta pbar3` matching the phase of `(-w, -z)`,
/// and the pole family `pbar3 = +/-1` where the geodesic is a plain rotation
/// about `e3`.
fn vertical_candidates(
    metric: &Metric,
    target: &UnitQuaternion,
    sign: f64,
    out: &mut Vec<InverseSolution>,
) {
    let eta = metric.eta();
    let (w, z) = (sign * target.w, sign * target.z);

    // tau = pi: (q0, q3) = (-cos(pi eta pbar3), -sin(pi eta pbar3)).
    if eta != 0.0 {
        let phase = (-z).atan2(-w);
        for k in -2i32..=2 {
            let pb = (phase + 2.0 * PI * k as f64) / (PI * eta);
            if pb.abs() <= 1.0 + 1e-9 {
                push_solution(metric, target, sign, pb, PI, out);
            }
        }
    }

    // Poles: (q0, q3) = (cos((1 + eta) tau), pbar3 sin((1 + eta) tau)).
    for pole in [1.0f64, -1.0] {
        let base = (pole * z).atan2(w);
        for k in 0..=3 {
            let tau = (base + 2.0 * PI * k as f64) / (1.0 + eta);
            if tau > 0.0 && tau <= PI * 1.02 {
                push_solution(metric, target, sign, pole, tau, out);
            }
        }
    }
}

/// Candidate solutions of the sign branch `(w, z) = sign * (target w, z)`
/// for targets off the vertical axis, by seeding plus damped Newton.
fn branch_candidates(
    metric: &Metric,
    target: &UnitQuaternion,
    sign: f64,
    n_seed: usize,
    out: &mut Vec<InverseSolution>,
) {
    let eta = metric.eta();
    let (w, z) = (sign * target.w, sign * target.z);
    let tau_ceiling = PI * 1.02;

    let mut scored: Vec<(f64, usize, usize)> = Vec::with_capacity(n_seed * n_seed);
    for i in 0..n_seed {
        let pb = -1.0 + 2.0 * i as f64 / (n_seed - 1) as f64;
        for j in 0..n_seed {
            let tau = tau_ceiling * (j + 1) as f64 / n_seed as f64;
            let (f1, f2) = pair_residual(eta, pb, tau, w, z);
            scored.push((f1 * f1 + f2 * f2, i, j));
        }
    }
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));

    // Keep the best seeds from distinct grid neighborhoods.
    let mut seeds: Vec<(usize, usize)> = Vec::new();
    for &(_, i, j) in scored.iter() {
        if seeds.len() >= 6 {
            break;
        }
        if seeds
            .iter()
            .all(|&(si, sj)| si.abs_diff(i) > 2 || sj.abs_diff(j) > 2)
        {
            seeds.push((i, j));
        }
    }

    for (i, j) in seeds {
        let pb0 = -1.0 + 2.0 * i as f64 / (n_seed - 1) as f64;
        let tau0 = tau_ceiling * (j + 1) as f64 / n_seed as f64;
        let Some((pb, tau)) = newton_q0q3(eta, w, z, (pb0, tau0)) else {
            continue;
        };
        if tau <= PI + 0.05 {
            push_solution(metric, target, sign, pb, tau, out);
        }
    }
}

fn dedupe(solutions: &mut Vec<InverseSolution>) {
    let mut kept: Vec<InverseSolution> = Vec::new();
    for s in solutions.drain(..) {
        let duplicate = kept.iter().any(|k| {
            (k.covector.p1 - s.covector.p1).abs() < 1e-6
                && (k.covector.p2 - s.covector.p2).abs() < 1e-6
                && (k.covector.p3 - s.covector.p3).abs() < 1e-6
                && (k.time - s.time).abs() < 1e-6 * (1.0 + s.time)
        });
        if !duplicate {
            kept.push(s);
        }
    }
    *solutions = kept;
}

/// Inverts the exponential map at a non-identity target rotation.
///
/// Targets off the cut locus get their unique `(p, t)` with `t` below the
/// cut time; cut-locus targets get a boundary report with all minimizing
/// representatives at the common arrival time.
pub fn invert_exp(metric: &Metric, target: &UnitQuaternion) -> Result<Preimage> {
    let q = UnitQuaternion::normalized(target.w, target.x, target.y, target.z);
    if so3_chordal_distance(&q, &UnitQuaternion::IDENTITY) < 1e-12 {
        return Err(Error::IdentityTarget);
    }
    let boundary = classify_cut_point(metric, &Rotation::from_quaternion(&q), 1e-9)
        != PointClass::NotInCutLocus;
    // On-axis targets sit on the fold of the (pbar3, tau) -> (q0, q3) map
    // and get their closed-form preimage families instead of Newton.
    let vertical = (q.x * q.x + q.y * q.y).sqrt() < 1e-9;

    for n_seed in [64usize, 128, 256] {
        let mut candidates = Vec::new();
        if vertical {
            vertical_candidates(metric, &q, 1.0, &mut candidates);
            vertical_candidates(metric, &q, -1.0, &mut candidates);
        } else {
            branch_candidates(metric, &q, 1.0, n_seed, &mut candidates);
            branch_candidates(metric, &q, -1.0, n_seed, &mut candidates);
        }
        dedupe(&mut candidates);

        if boundary {
            let mut arrivals: Vec<InverseSolution> = candidates
                .into_iter()
                .filter(|s| {
                    let tmax = maxwell_time(metric, s.covector.pbar3()).unwrap_or(f64::NAN);
                    (s.time - tmax).abs() <= 1e-6 * (1.0 + tmax)
                })
                .collect();
            if arrivals.is_empty() {
                if vertical {
                    break;
                }
                continue;
            }
            let t_min = arrivals.iter().map(|s| s.time).fold(f64::INFINITY, f64::min);
            arrivals.retain(|s| s.time <= t_min + 1e-6 * (1.0 + t_min));
            if arrivals.len() >= 2 {
                arrivals.sort_by(|a, b| a.residual.total_cmp(&b.residual));
                return Ok(Preimage::CutBoundary {
                    time: t_min,
                    solutions: arrivals,
                });
            }
            if vertical {
                break;
            }
        } else {
            let mut interior: Vec<InverseSolution> = candidates
                .into_iter()
                .filter(|s| {
                    let tmax = maxwell_time(metric, s.covector.pbar3()).unwrap_or(f64::NAN);
                    s.time <= tmax * (1.0 + 1e-9) + 1e-12
                })
                .collect();
            if let Some(best) = interior
                .drain(..)
                .min_by(|a, b| a.residual.total_cmp(&b.residual))
            {
                return Ok(Preimage::Interior(best));
            }
            if vertical {
                break;
            }
        }
    }
    Err(Error::SolverFailed {
        context: "invert_exp",
        detail: format!(
            "no preimage with residual < {INVERSION_TOL:.1e} for target \
             ({:.6}, {:.6}, {:.6}, {:.6}), eta = {}",
            q.w,
            q.x,
            q.y,
            q.z,
            metric.eta()
        ),
    })
}

/// Riemannian distance from the identity to the target rotation.
pub fn distance(metric: &Metric, target: &UnitQuaternion) -> Result<f64> {
    let q = UnitQuaternion::normalized(target.w, target.x, target.y, target.z);
    if so3_chordal_distance(&q, &UnitQuaternion::IDENTITY) < 1e-12 {
        return Ok(0.0);
    }
    Ok(match invert_exp(metric, &q)? {
        Preimage::Interior(s) => s.time,
        Preimage::CutBoundary { time, .. } => time,
    })
}

/// Outcome of the brute-force minimal-time search.
#[derive(Debug, Clone, Copy)]
pub struct ShootingResult {
    pub time: f64,
    /// Chordal miss of the refined best hit.
    pub miss: f64,
    /// False when no grid cell came within the acceptance window; `time`
    /// then holds the best candidate anyway.
    pub converged: bool,
}

/// Nelder-Mead descent on a 3-variable function; returns the best vertex.
/// Cleans up what coordinate-wise line searches leave behind in correlated
/// valleys (and at the poles, where the azimuth direction degenerates).
fn nelder_mead3(
    start: [f64; 3],
    scale: [f64; 3],
    iters: usize,
    f: &mut impl FnMut([f64; 3]) -> f64,
) -> ([f64; 3], f64) {
    let mut simplex: Vec<([f64; 3], f64)> = Vec::with_capacity(4);
    simplex.push((start, f(start)));
    for d in 0..3 {
        let mut v = start;
        v[d] += scale[d];
        simplex.push((v, f(v)));
    }
    let blend = |a: [f64; 3], b: [f64; 3], s: f64| {
        [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]), a[2] + s * (b[2] - a[2])]
    };
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut centroid = [0.0; 3];
        for v in &simplex[..3] {
            for (c, x) in centroid.iter_mut().zip(v.0) {
                *c += x / 3.0;
            }
        }
        let worst = simplex[3];
        let reflect = blend(worst.0, centroid, 2.0);
        let fr = f(reflect);
        if fr < simplex[0].1 {
            let expand = blend(worst.0, centroid, 3.0);
            let fe = f(expand);
            simplex[3] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < simplex[2].1 {
            simplex[3] = (reflect, fr);
        } else {
            let contract = blend(worst.0, centroid, 0.5);
            let fc = f(contract);
            if fc < worst.1 {
                simplex[3] = (contract, fc);
            } else {
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    v.0 = blend(best, v.0, 0.5);
                    v.1 = f(v.0);
                }
            }
        }
        if simplex.iter().map(|v| v.1).fold(f64::INFINITY, f64::min) < 1e-10 {
            break;
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0]
}

/// Golden-section minimization of `f` on `[lo, hi]`.
fn golden_min(mut lo: f64, mut hi: f64, f: &mut impl FnMut(f64) -> f64) -> (f64, f64) {
    let inv_phi = 0.618_033_988_749_894_8;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..40 {
        if f1 > f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Grid search plus local refinement for the minimal arrival time of a
/// geodesic at `q`, under an arbitrary endpoint mismatch function. Shared by
/// the SO(3) oracle here and the raw-quaternion SU(2) oracle.
pub(crate) fn shooting_search(
    metric: &Metric,
    q: &UnitQuaternion,
    counts: (usize, usize, usize),
    t_hi: f64,
    mismatch: &dyn Fn(&UnitQuaternion, &UnitQuaternion) -> f64,
) -> Result<ShootingResult> {
    let (n_pbar3, n_az, n_t) = counts;
    for (name, value) in [("n_pbar3", n_pbar3), ("n_az", n_az), ("n_t", n_t)] {
        if value < 16 {
            return Err(Error::InvalidCount {
                name,
                value,
                min: 16,
            });
        }
    }
    let dt = t_hi / n_t as f64;
    let d_pb = 2.0 / (n_pbar3 - 1) as f64;
    let d_az = 2.0 * PI / n_az as f64;
    let eta = metric.eta();

    // Endpoint movement across one grid cell, with margin.
    let speed =
        0.5 * metric.i1().max(metric.i3()).sqrt() * (1.0 / metric.i1()).max(1.0 / metric.i3());
    let eps = 1.5 * (speed * dt + 2.0 * (1.0 + eta.abs()) * d_pb + 0.6 * d_az);

    let miss_at = |pb: f64, az: f64, t: f64| -> f64 {
        let cov = Covector::from_angles(metric, pb.clamp(-1.0, 1.0), az).expect("pbar3 clamped");
        mismatch(&exp_map(metric, &cov, t.max(0.0)).expect("valid covector"), q)
    };

    // First pass: along every direction ray, record each local minimum of
    // the miss in t that dips below eps. A close pass and a genuine arrival
    // both look like dips at grid resolution; refinement tells them apart.
    // Every ray starts at the identity, so the walk is seeded with the real
    // miss at t = 0; otherwise near-identity targets would fake a dip at the
    // first sample of every ray.
    let miss_at_origin = mismatch(&UnitQuaternion::IDENTITY, q);
    let mut hits: Vec<(f64, f64, f64)> = Vec::new();
    let mut best_cell = (f64::INFINITY, 0.0, 0.0, 0.0);
    for i in 0..n_pbar3 {
        let pb = -1.0 + d_pb * i as f64;
        for j in 0..n_az {
            let az = d_az * j as f64;
            let mut prev = miss_at_origin;
            let mut prev_t = 0.0;
            let mut decreasing = false;
            for k in 0..n_t {
                let t = dt * (k + 1) as f64;
                let miss = miss_at(pb, az, t);
                if miss < best_cell.0 {
                    best_cell = (miss, pb, az, t);
                }
                if decreasing && miss > prev && prev < eps {
                    hits.push((prev_t, pb, az));
                }
                decreasing = miss < prev;
                prev = miss;
                prev_t = t;
            }
            if decreasing && prev < eps {
                hits.push((prev_t, pb, az));
            }
        }
    }

    let refine = |pb0: f64, az0: f64, t0: f64| -> (f64, f64) {
        let (mut pb, mut az, mut t) = (pb0, az0, t0);
        let (mut w_pb, mut w_az, mut w_t) = (d_pb, d_az, 2.0 * dt);
        let mut miss = miss_at(pb, az, t);
        // Gentle bracket shrinking; correlated valleys force the coordinate
        // descent to zigzag, so fast shrinking would trap it early.
        for _ in 0..10 {
            if miss < 1e-9 {
                break;
            }
            let (npb, m1) = golden_min((pb - w_pb).max(-1.0), (pb + w_pb).min(1.0), &mut |x| {
                miss_at(x, az, t)
            });
            if m1 < miss {
                pb = npb;
                miss = m1;
            }
            let (naz, m2) = golden_min(az - w_az, az + w_az, &mut |x| miss_at(pb, x, t));
            if m2 < miss {
                az = naz;
                miss = m2;
            }
            let (nt, m3) = golden_min((t - w_t).max(1e-12), t + w_t, &mut |x| miss_at(pb, az, x));
            if m3 < miss {
                t = nt;
                miss = m3;
            }
            w_pb *= 0.5;
            w_az *= 0.5;
            w_t *= 0.5;
        }
        if miss > 1e-9 {
            let (v, m) = nelder_mead3(
                [pb, az, t],
                [d_pb / 8.0, d_az / 8.0, dt / 8.0],
                150,
                &mut |v| miss_at(v[0], v[1], v[2]),
            );
            if m < miss {
                t = v[2];
                miss = m;
            }
        }
        (t, miss)
    };

    // Refine hits in ascending arrival order. A hit that fails to converge
    // was a close pass rather than an arrival, so keep going; stop once the
    // remaining hit times cannot undercut the best refined arrival (the
    // refinement can move an arrival by at most the bracket span).
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best: Option<(f64, f64)> = None;
    for &(t, pb, az) in hits.iter().take(512) {
        if let Some((bt, _)) = best {
            if t > bt + 4.0 * dt {
                break;
            }
        }
        let (rt, rmiss) = refine(pb, az, t);
        if rmiss < 1e-3 && best.is_none_or(|(bt, _)| rt < bt) {
            best = Some((rt, rmiss));
        }
    }

    if let Some((time, miss)) = best {
        Ok(ShootingResult {
            time,
            miss,
            converged: true,
        })
    } else {
        // No listed dip survived; refine the best cell anyway. If that lands
        // on the target to grid accuracy it still counts as a hit (targets
        // closer to the identity than one time step end up here).
        let (miss, pb, az, t) = best_cell;
        let (rt, rmiss) = refine(pb, az, t);
        Ok(ShootingResult {
            time: rt,
            miss: rmiss.min(miss),
            converged: rmiss < 1e-3,
        })
    }
}

/// Brute-force minimal arrival time over a `(pbar3, azimuth, t)` grid.
///
/// Cells whose endpoint lands within a grid-dependent window of the target
/// are refined by coordinate-wise golden-section descent on the chordal
/// miss; the smallest refined arrival time wins. Entirely independent of
/// the Newton inversion path: only forward `exp_map` evaluations are used.
pub fn shooting_oracle(
    metric: &Metric,
    target: &UnitQuaternion,
    n_pbar3: usize,
    n_az: usize,
    n_t: usize,
) -> Result<ShootingResult> {
    let q = UnitQuaternion::normalized(target.w, target.x, target.y, target.z);
    let t_hi = diameter(metric).value * 1.02;
    shooting_search(
        metric,
        &q,
        (n_pbar3, n_az, n_t),
        t_hi,
        &|a, b| so3_chordal_distance(a, b),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::E3;

    #[test]
    fn euler_case_inversion_is_exact() {
        let m = Metric::new(1.0, 1.0).unwrap();
        let axis = [0.6, -0.64, 0.48];
        let phi = 1.9;
        let target = UnitQuaternion::from_axis_angle(axis, phi);
        match invert_exp(&m, &target).unwrap() {
            Preimage::Interior(s) => {
                assert!((s.time - phi).abs() < 1e-10);
                let pbar = s.covector.pbar();
                let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
                for i in 0..3 {
                    assert!((pbar[i] - axis[i] / n).abs() < 1e-9);
                }
            }
            other => panic!("expected interior preimage, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_recovers_momentum_and_time() {
        let m = Metric::new(1.0, 4.0).unwrap();
        let p = Covector::from_angles(&m, 0.42, 2.3).unwrap();
        let t = 0.7 * maxwell_time(&m, 0.42).unwrap();
        let target = exp_map(&m, &p, t).unwrap();
        match invert_exp(&m, &target).unwrap() {
            Preimage::Interior(s) => {
                assert!((s.time - t).abs() < 1e-9);
                assert!((s.covector.p1 - p.p1).abs() < 1e-8);
                assert!((s.covector.p2 - p.p2).abs() < 1e-8);
                assert!((s.covector.p3 - p.p3).abs() < 1e-8);
                assert!(s.residual < INVERSION_TOL);
            }
            other => panic!("expected interior preimage, got {other:?}"),
        }
    }

    #[test]
    fn identity_target_is_rejected() {
        let m = Metric::new(1.0, 1.0).unwrap();
        assert!(matches!(
            invert_exp(&m, &UnitQuaternion::IDENTITY),
            Err(Error::IdentityTarget)
        ));
        assert_eq!(distance(&m, &UnitQuaternion::IDENTITY).unwrap(), 0.0);
    }

    #[test]
    fn vertical_segment_target_reports_boundary() {
        // eta = -3/4: R_{e3, 3pi/4} lies on the vertical cut segment.
        let m = Metric::new(1.0, 4.0).unwrap();
        let target = UnitQuaternion::from_axis_angle(E3, 3.0 * PI / 4.0);
        match invert_exp(&m, &target).unwrap() {
            Preimage::CutBoundary { time, solutions } => {
                assert!(solutions.len() >= 2);
                for s in &solutions {
                    assert!(s.residual < INVERSION_TOL);
                    assert!((s.time - time).abs() < 1e-6 * (1.0 + time));
                }
                // Arrivals happen at tau = pi on the Maxwell stratum.
                let pb = solutions[0].covector.pbar3();
                assert!((time - 2.0 * PI * m.i1() / m.p_norm(pb).unwrap()).abs() < 1e-8);
            }
            other => panic!("expected boundary preimage, got {other:?}"),
        }
    }

    #[test]
    fn axial_symmetry_distance_euler() {
        let m = Metric::new(2.0, 2.0).unwrap();
        let target = UnitQuaternion::from_axis_angle([1.0, 0.0, 0.0], PI);
        let d = distance(&m, &target).unwrap();
        assert!((d - PI * 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn prolate_equatorial_distance() {
        // eta = 1, I1 = 1: the half-turn about e1 is at distance pi.
        let m = Metric::new(1.0, 0.5).unwrap();
        let target = UnitQuaternion::from_axis_angle([1.0, 0.0, 0.0], PI);
        let d = distance(&m, &target).unwrap();
        assert!((d - PI).abs() < 1e-9);
    }

    #[test]
    fn oblate_vertical_pole_distance() {
        // For -1/2 <= eta < 0 the half-turn about e3 sits at pi sqrt(I3).
        let m = Metric::new(1.0, 1.5).unwrap();
        let target = UnitQuaternion::from_axis_angle(E3, PI);
        let d = distance(&m, &target).unwrap();
        assert!((d - PI * 1.5f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn oracle_euler_case() {
        let m = Metric::new(1.0, 1.0).unwrap();
        let target = UnitQuaternion::from_axis_angle([0.0, 0.6, 0.8], 1.4);
        let r = shooting_oracle(&m, &target, 32, 32, 64).unwrap();
        assert!(r.converged);
        assert!((r.time - 1.4).abs() < 2.0 * (diameter(&m).value * 1.02 / 64.0));
    }

    #[test]
    fn oracle_matches_diameter_target() {
        let m = Metric::new(1.0, 4.0).unwrap();
        let target = UnitQuaternion::from_axis_angle(E3, PI);
        let r = shooting_oracle(&m, &target, 48, 32, 128).unwrap();
        let expected = 2.0 * PI * (2f64 / 3.0).sqrt();
        assert!(r.converged);
        assert!(
            (r.time - expected).abs() < 2.0 * (diameter(&m).value * 1.02 / 128.0),
            "oracle {} vs formula {expected}",
            r.time
        );
    }

    #[test]
    fn oracle_rejects_tiny_grids() {
        let m = Metric::new(1.0, 1.0).unwrap();
        let target = UnitQuaternion::from_axis_angle(E3, 1.0);
        assert!(shooting_oracle(&m, &target, 8, 32, 64).is_err());
    }
}
