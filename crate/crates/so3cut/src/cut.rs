//! Maxwell strata, cut time, cut-locus classification and sampling,
//! wavefronts, diameter, and the farthest-point set.
//!
//! Geodesics stop being minimizers at the first Maxwell time
//! `t_max(p) = 2 min(pi, tau0(pbar3)) I1 / |p|`, which coincides with the cut
//! time. The cut locus is the projective plane `P` of half-turns for
//! `eta >= -1/2`; for `eta < -1/2` it gains the segment of rotations about
//! `e3` with angle in `[2 pi (1 + eta), pi]`, entered through the threshold
//! `|pbar3| = 1 / (2 |eta|)` where the endpoint is a conjugate point.

use crate::error::{Error, Result};
use crate::geodesic::{exp_map, time_of_tau};
use crate::metric::{check_pbar3, Covector, Metric};
use crate::roots::{tau0, tau3};
use crate::rotation::{Rotation, UnitQuaternion, E3};
use std::f64::consts::PI;

/// Tolerance on `|pbar3|` for calling the stratum boundary a conjugate
/// endpoint, and the default classification tolerance.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// The three Maxwell components in the preimage of the exponential map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratumLabel {
    /// Zeros of `q0`: geodesics meeting their reflected partner on `P`.
    M0,
    /// `sin(tau) = 0`: rotations about `e3`, excluded at `pbar3 = +/-1`.
    M12,
    /// Zeros of `q3`: excluded at `pbar3 = 0`.
    M3,
}

/// One Maxwell stratum of a fixed metric, exposing its arrival time.
#[derive(Debug, Clone, Copy)]
pub struct MaxwellStratum<'m> {
    metric: &'m Metric,
    label: StratumLabel,
}

impl<'m> MaxwellStratum<'m> {
    pub fn new(metric: &'m Metric, label: StratumLabel) -> Self {
        MaxwellStratum { metric, label }
    }

    pub fn label(&self) -> StratumLabel {
        self.label
    }

    /// Arrival time `2 tau I1 / |p|` of the stratum for the given `pbar3`,
    /// with `tau` one of `tau0`, `pi`, `tau3`. `None` where the stratum
    /// excludes the covector (`M12` at the poles, `M3` on the equator).
    pub fn time_at(&self, pbar3: f64) -> Result<Option<f64>> {
        check_pbar3(pbar3)?;
        let metric = self.metric;
        let norm = metric.p_norm(pbar3)?;
        let tau = match self.label {
            StratumLabel::M0 => tau0(metric.eta(), pbar3)?.tau,
            StratumLabel::M12 => {
                if pbar3.abs() == 1.0 {
                    return Ok(None);
                }
                PI
            }
            StratumLabel::M3 => {
                let root = tau3(metric.eta(), pbar3)?;
                if !root.is_finite() {
                    return Ok(None);
                }
                root.tau
            }
        };
        Ok(Some(time_of_tau(metric, norm, tau)))
    }
}

/// Stratum of the cut locus a geodesic ends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutStratum {
    PPlane,
    LSegment,
    ConjugateEndpoint,
}

impl CutStratum {
    pub fn as_str(&self) -> &'static str {
        match self {
            CutStratum::PPlane => "P_plane",
            CutStratum::LSegment => "L_segment",
            CutStratum::ConjugateEndpoint => "conjugate_endpoint",
        }
    }
}

/// Cut time of one geodesic together with where it ends.
#[derive(Debug, Clone, Copy)]
pub struct CutReport {
    pub cut_time: f64,
    pub stratum: CutStratum,
    pub tau_at_cut: f64,
}

/// First Maxwell time `2 min(pi, tau0(pbar3)) I1 / |p|`.
pub fn maxwell_time(metric: &Metric, pbar3: f64) -> Result<f64> {
    let norm = metric.p_norm(pbar3)?;
    let tau = tau0(metric.eta(), pbar3)?.tau.min(PI);
    Ok(time_of_tau(metric, norm, tau))
}

/// Cut time of the geodesic with the given `pbar3`, with its stratum.
///
/// Numerically this always equals [`maxwell_time`]; the stratum records
/// whether the geodesic ends on `P`, on the vertical segment, or at one of
/// the two conjugate endpoints joining them.
pub fn cut_time(metric: &Metric, pbar3: f64) -> Result<CutReport> {
    let norm = metric.p_norm(pbar3)?;
    let eta = metric.eta();
    if eta >= -0.5 {
        let tau = tau0(eta, pbar3)?.tau;
        return Ok(CutReport {
            cut_time: time_of_tau(metric, norm, tau),
            stratum: CutStratum::PPlane,
            tau_at_cut: tau,
        });
    }
    let threshold = 1.0 / (2.0 * eta.abs());
    if (pbar3.abs() - threshold).abs() <= CLASSIFY_TOL {
        return Ok(CutReport {
            cut_time: time_of_tau(metric, norm, PI),
            stratum: CutStratum::ConjugateEndpoint,
            tau_at_cut: PI,
        });
    }
    if pbar3.abs() > threshold {
        Ok(CutReport {
            cut_time: time_of_tau(metric, norm, PI),
            stratum: CutStratum::LSegment,
            tau_at_cut: PI,
        })
    } else {
        let tau = tau0(eta, pbar3)?.tau;
        Ok(CutReport {
            cut_time: time_of_tau(metric, norm, tau),
            stratum: CutStratum::PPlane,
            tau_at_cut: tau,
        })
    }
}

/// Whether a canonical rotation lies on the cut locus, and on which part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    PPlane,
    LSegment,
    NotInCutLocus,
}

impl PointClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PointClass::PPlane => "P_plane",
            PointClass::LSegment => "L_segment",
            PointClass::NotInCutLocus => "not_in_cut_locus",
        }
    }
}

/// Classifies a rotation against the cut locus of the metric.
///
/// Half-turns always lie on `P`. For `eta < -1/2` rotations about `+/-e3`
/// with angle in `[2 pi (1 + eta), pi]` lie on the vertical segment.
pub fn classify_cut_point(metric: &Metric, r: &Rotation, tol: f64) -> PointClass {
    let angle = r.angle();
    if (angle - PI).abs() <= tol {
        return PointClass::PPlane;
    }
    let eta = metric.eta();
    if eta < -0.5 {
        let axis = r.axis();
        let on_vertical_axis = axis[0].abs() <= tol && axis[1].abs() <= tol;
        if on_vertical_axis && angle >= 2.0 * PI * (1.0 + eta) - tol && angle <= PI + tol {
            return PointClass::LSegment;
        }
    }
    PointClass::NotInCutLocus
}

/// One evaluated grid point of a locus or front sample.
#[derive(Debug, Clone, Copy)]
pub struct MeshPoint {
    pub pbar3: f64,
    pub azimuth: f64,
    pub quaternion: UnitQuaternion,
    /// Classification tag; `None` for untagged wavefront samples.
    pub tag: Option<PointClass>,
}

/// Grid of evaluated rotations with resolution metadata.
#[derive(Debug, Clone)]
pub struct LocusMesh {
    /// Grid resolution per axis (`n` values of `pbar3` times `n` azimuths).
    pub n: usize,
    pub points: Vec<MeshPoint>,
}

fn mesh_grid(
    metric: &Metric,
    n: usize,
    mut time_for: impl FnMut(f64) -> Result<f64>,
    tag: bool,
) -> Result<LocusMesh> {
    if n < 4 {
        return Err(Error::InvalidCount {
            name: "n",
            value: n,
            min: 4,
        });
    }
    let mut points = Vec::with_capacity(n * n);
    for i in 0..n {
        let pbar3 = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        let t = time_for(pbar3)?;
        for j in 0..n {
            let azimuth = 2.0 * PI * j as f64 / n as f64;
            let p = Covector::from_angles(metric, pbar3, azimuth)?;
            let q = exp_map(metric, &p, t)?;
            let tag = tag.then(|| {
                classify_cut_point(metric, &Rotation::from_quaternion(&q), CLASSIFY_TOL)
            });
            points.push(MeshPoint {
                pbar3,
                azimuth,
                quaternion: q,
                tag,
            });
        }
    }
    Ok(LocusMesh { n, points })
}

/// Samples the cut locus on an `n x n` grid of `(pbar3, azimuth)`, each point
/// evaluated at its cut time and classified.
pub fn cut_locus_mesh(metric: &Metric, n: usize) -> Result<LocusMesh> {
    mesh_grid(metric, n, |pbar3| Ok(cut_time(metric, pbar3)?.cut_time), true)
}

/// Samples the geodesic front at a fixed time `t > 0`, untagged.
pub fn wavefront(metric: &Metric, t: f64, n: usize) -> Result<LocusMesh> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument {
            name: "t",
            value: t,
            expected: "a time > 0",
        });
    }
    mesh_grid(metric, n, |_| Ok(t), false)
}

/// Shape of the set of points farthest from the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Farthest {
    /// The half-turn about `e3` (the two pole representatives coincide).
    TwoPoles,
    /// The whole plane of half-turns.
    PlaneP,
    /// Half-turns about the equatorial axes.
    EquatorCircle,
}

impl Farthest {
    pub fn as_str(&self) -> &'static str {
        match self {
            Farthest::TwoPoles => "TwoPoles",
            Farthest::PlaneP => "PlaneP",
            Farthest::EquatorCircle => "EquatorCircle",
        }
    }
}

/// Diameter value with the farthest set and representative rotations.
#[derive(Debug, Clone)]
pub struct DiameterReport {
    pub value: f64,
    pub farthest: Farthest,
    pub representatives: Vec<Rotation>,
}

/// Diameter of the metric and the set of points attaining it.
///
/// Branch formulas: `2 pi sqrt(I1) sqrt(1 + 1/(4 eta))` for `eta < -1/2`,
/// `pi sqrt(I3)` for `-1/2 <= eta <= 0`, and `pi sqrt(I1)` for `eta > 0`.
pub fn diameter(metric: &Metric) -> DiameterReport {
    let eta = metric.eta();
    let half_turn = |axis| Rotation::from_axis_angle(axis, PI);
    if eta < -0.5 {
        DiameterReport {
            value: 2.0 * PI * metric.i1().sqrt() * (1.0 + 0.25 / eta).sqrt(),
            farthest: Farthest::TwoPoles,
            representatives: vec![half_turn(E3)],
        }
    } else if eta < 0.0 {
        DiameterReport {
            value: PI * metric.i3().sqrt(),
            farthest: Farthest::TwoPoles,
            representatives: vec![half_turn(E3)],
        }
    } else if eta == 0.0 {
        DiameterReport {
            value: PI * metric.i3().sqrt(),
            farthest: Farthest::PlaneP,
            representatives: vec![
                half_turn([1.0, 0.0, 0.0]),
                half_turn([0.0, 1.0, 0.0]),
                half_turn(E3),
            ],
        }
    } else {
        DiameterReport {
            value: PI * metric.i1().sqrt(),
            farthest: Farthest::EquatorCircle,
            representatives: vec![half_turn([1.0, 0.0, 0.0]), half_turn([0.0, 1.0, 0.0])],
        }
    }
}

/// Maximum of the cut time over `pbar3 in [-1, 1]`: a dense grid pass
/// followed by a golden-section polish around the best cell. The polish
/// matters because for `eta < -1/2` the maximum sits at a corner of the two
/// cut-time branches, where a bare grid is only accurate to the spacing.
/// Returns `(max value, argmax pbar3)`.
pub fn max_cut_time(metric: &Metric, n_grid: usize) -> Result<(f64, f64)> {
    if n_grid < 3 {
        return Err(Error::InvalidCount {
            name: "n_grid",
            value: n_grid,
            min: 3,
        });
    }
    let f = |pbar3: f64| -> Result<f64> { Ok(cut_time(metric, pbar3)?.cut_time) };
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (n_grid - 1) as f64;
    for i in 0..n_grid {
        let v = f(coord(i))?;
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut lo = coord(best_i.saturating_sub(1));
    let mut hi = coord((best_i + 1).min(n_grid - 1));
    // Golden-section maximization; works across the branch corner too.
    let inv_phi = 0.618_033_988_749_894_8;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..80 {
        if hi - lo < 1e-12 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let x = 0.5 * (lo + hi);
    let v = f(x)?;
    if v > best {
        Ok((v, x))
    } else {
        Ok((best, coord(best_i)))
    }
}
