//! The lifted problem on the double cover: cut time and cut locus on SU(2).
//!
//! On the unit quaternions no sign identification happens, so the plane of
//! half-turns stops being a Maxwell set and geodesics stay optimal longer.
//! The cut locus becomes a segment on the `(1, k)` circle for `eta <= 0`
//! (collapsing to the single point `-1` in the bi-invariant case) and a flat
//! disk `z = 0` bounded by a circle of conjugate points for `eta > 0`.

use crate::error::{Error, Result};
use crate::geodesic::{exp_map, time_of_tau};
use crate::metric::{Covector, Metric};
use crate::roots::{tau3, tau_conj};
use crate::rotation::UnitQuaternion;
use std::f64::consts::PI;

/// Shape of the SU(2) cut locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su2LocusKind {
    /// Segment on the `(1, k)` circle, for `eta <= 0`.
    TSegment,
    /// Disk in the `z = 0` hyperplane, for `eta > 0`.
    DDisk,
}

impl Su2LocusKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Su2LocusKind::TSegment => "T_segment",
            Su2LocusKind::DDisk => "D_disk",
        }
    }
}

/// SU(2) cut time of one geodesic.
#[derive(Debug, Clone, Copy)]
pub struct Su2CutReport {
    pub cut_time: f64,
    pub locus_kind: Su2LocusKind,
}

/// Cut time on the double cover: `2 pi I1 / |p|` for `eta <= 0`, and
/// `2 tau3(pbar3) I1 / |p|` for `eta > 0`. On the equator `tau3` imposes no
/// constraint and the limit value `tau_conj(0)` applies by continuity.
pub fn su2_cut_time(metric: &Metric, pbar3: f64) -> Result<Su2CutReport> {
    let norm = metric.p_norm(pbar3)?;
    let eta = metric.eta();
    if eta <= 0.0 {
        return Ok(Su2CutReport {
            cut_time: time_of_tau(metric, norm, PI),
            locus_kind: Su2LocusKind::TSegment,
        });
    }
    let root = tau3(eta, pbar3)?;
    let tau = if root.is_finite() {
        root.tau
    } else {
        tau_conj(eta, 0.0)?.tau
    };
    Ok(Su2CutReport {
        cut_time: time_of_tau(metric, norm, tau),
        locus_kind: Su2LocusKind::DDisk,
    })
}

/// Tag of one sampled SU(2) cut-locus point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su2SampleTag {
    /// On the segment (`eta <= 0`).
    Segment,
    /// Interior of the disk (`eta > 0`).
    Disk,
    /// On the boundary circle of conjugate points; also used for the
    /// `pbar3 = 0` ray of the disk, which lands on the circle by continuity.
    BoundaryCircle,
}

impl Su2SampleTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Su2SampleTag::Segment => "T_segment",
            Su2SampleTag::Disk => "D_disk",
            Su2SampleTag::BoundaryCircle => "S_circle",
        }
    }
}

/// One sampled point of the SU(2) cut locus (raw quaternion, no sign
/// identification).
#[derive(Debug, Clone, Copy)]
pub struct Su2Sample {
    pub pbar3: f64,
    pub azimuth: f64,
    pub quaternion: UnitQuaternion,
    pub tag: Su2SampleTag,
}

/// Samples the SU(2) cut locus.
///
/// For `eta <= 0`: `n` samples of the segment over `pbar3 in [-1, 1]`.
/// For `eta > 0`: `n x n` samples of the disk over `(pbar3, azimuth)` plus
/// `n` samples of the boundary circle; the `pbar3 = 0` column is emitted on
/// the circle (tagged as such) since that is its continuity limit.
pub fn su2_cut_locus_sample(metric: &Metric, n: usize) -> Result<Vec<Su2Sample>> {
    if n < 4 {
        return Err(Error::InvalidCount {
            name: "n",
            value: n,
            min: 4,
        });
    }
    let eta = metric.eta();
    let mut samples = Vec::new();
    if eta <= 0.0 {
        for i in 0..n {
            let pbar3 = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
            let p = Covector::from_angles(metric, pbar3, 0.0)?;
            let t = su2_cut_time(metric, pbar3)?.cut_time;
            samples.push(Su2Sample {
                pbar3,
                azimuth: 0.0,
                quaternion: exp_map(metric, &p, t)?,
                tag: Su2SampleTag::Segment,
            });
        }
        return Ok(samples);
    }

    let tau_c0 = tau_conj(eta, 0.0)?.tau;
    let circle_point = |phi: f64| UnitQuaternion::normalized(
        tau_c0.cos(),
        tau_c0.sin() * phi.cos(),
        tau_c0.sin() * phi.sin(),
        0.0,
    );
    for i in 0..n {
        let pbar3 = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let azimuth = 2.0 * PI * j as f64 / n as f64;
            if pbar3 == 0.0 {
                samples.push(Su2Sample {
                    pbar3,
                    azimuth,
                    quaternion: circle_point(azimuth),
                    tag: Su2SampleTag::BoundaryCircle,
                });
                continue;
            }
            let p = Covector::from_angles(metric, pbar3, azimuth)?;
            let t = su2_cut_time(metric, pbar3)?.cut_time;
            samples.push(Su2Sample {
                pbar3,
                azimuth,
                quaternion: exp_map(metric, &p, t)?,
                tag: Su2SampleTag::Disk,
            });
        }
    }
    for j in 0..n {
        let phi = 2.0 * PI * j as f64 / n as f64;
        samples.push(Su2Sample {
            pbar3: 0.0,
            azimuth: phi,
            quaternion: circle_point(phi),
            tag: Su2SampleTag::BoundaryCircle,
        });
    }
    Ok(samples)
}

/// Brute-force minimal arrival time on the double cover: identical to the
/// SO(3) oracle except that quaternions are compared raw, without the sign
/// identification.
pub fn su2_shooting_oracle(
    metric: &Metric,
    target: &UnitQuaternion,
    n_pbar3: usize,
    n_az: usize,
    n_t: usize,
) -> Result<crate::inverse::ShootingResult> {
    let q = UnitQuaternion::normalized(target.w, target.x, target.y, target.z);
    // The whole locus sits at tau <= pi, i.e. t <= 2 pi I1 / min |p|.
    let t_hi = 1.02 * 2.0 * PI * metric.i1() / metric.p_norm(0.0)?.min(metric.p_norm(1.0)?);
    crate::inverse::shooting_search(
        metric,
        &q,
        (n_pbar3, n_az, n_t),
        t_hi,
        &|a, b| a.raw_distance(b),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::cut_time;
    use crate::roots::tau0;

    #[test]
    fn euler_cover_cut_time_is_two_pi() {
        let m = Metric::new(1.0, 1.0).unwrap();
        for k in 0..=8 {
            let pbar3 = -1.0 + 0.25 * k as f64;
            let r = su2_cut_time(&m, pbar3).unwrap();
            assert!((r.cut_time - 2.0 * PI).abs() < 1e-12);
            assert_eq!(r.locus_kind, Su2LocusKind::TSegment);
        }
    }

    #[test]
    fn prolate_pole_cut_time() {
        // eta = 1, pbar3 = 1: tau3 = pi/2, |p| = sqrt(1/2).
        let m = Metric::new(1.0, 0.5).unwrap();
        let r = su2_cut_time(&m, 1.0).unwrap();
        assert!((r.cut_time - PI * 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.locus_kind, Su2LocusKind::DDisk);
    }

    #[test]
    fn oblate_cover_cut_time_and_oracle() {
        // eta = -1/2, pbar3 = 1: |p| = sqrt(2), so the cut time is
        // 2 pi / sqrt(2) = pi sqrt(2). Confirmed by the raw-quaternion
        // shooting oracle against the endpoint.
        let m = Metric::new(1.0, 2.0).unwrap();
        let r = su2_cut_time(&m, 1.0).unwrap();
        let expected = PI * 2f64.sqrt();
        assert!((r.cut_time - expected).abs() < 1e-12);

        let p = Covector::from_angles(&m, 1.0, 0.0).unwrap();
        let endpoint = exp_map(&m, &p, r.cut_time).unwrap();
        let oracle = su2_shooting_oracle(&m, &endpoint, 24, 24, 96).unwrap();
        assert!(oracle.converged);
        let t_hi = 1.02 * 2.0 * PI / m.p_norm(0.0).unwrap().min(m.p_norm(1.0).unwrap());
        assert!(
            (oracle.time - expected).abs() <= 2.0 * t_hi / 96.0,
            "oracle {} vs {expected}",
            oracle.time
        );
    }

    #[test]
    fn segment_samples_sit_on_the_vertical_circle() {
        for &eta in &[-0.75, -0.5, -0.2, 0.0] {
            let m = Metric::from_oblateness(1.0, eta).unwrap();
            for s in su2_cut_locus_sample(&m, 17).unwrap() {
                assert!(s.quaternion.x.abs() < 1e-12);
                assert!(s.quaternion.y.abs() < 1e-12);
                let expected_w = -(PI * eta * s.pbar3).cos();
                let expected_z = -(PI * eta * s.pbar3).sin();
                assert!((s.quaternion.w - expected_w).abs() < 1e-12);
                assert!((s.quaternion.z - expected_z).abs() < 1e-12);
                assert_eq!(s.tag, Su2SampleTag::Segment);
            }
        }
        // Bi-invariant case: the segment degenerates to the point -1.
        let m = Metric::new(1.0, 1.0).unwrap();
        for s in su2_cut_locus_sample(&m, 9).unwrap() {
            assert!((s.quaternion.w + 1.0).abs() < 1e-12);
            assert!(s.quaternion.z.abs() < 1e-12);
        }
    }

    #[test]
    fn disk_samples_are_flat_with_conjugate_boundary() {
        let m = Metric::new(2.0, 1.0).unwrap(); // eta = 1
        let tau_c0 = tau_conj(1.0, 0.0).unwrap().tau;
        let samples = su2_cut_locus_sample(&m, 12).unwrap();
        let mut disk = 0;
        let mut circle = 0;
        for s in &samples {
            match s.tag {
                Su2SampleTag::Disk => {
                    disk += 1;
                    assert!(s.quaternion.z.abs() < 1e-12, "z = {}", s.quaternion.z);
                }
                Su2SampleTag::BoundaryCircle => {
                    circle += 1;
                    assert!((s.quaternion.w - tau_c0.cos()).abs() < 1e-12);
                    assert!(s.quaternion.z.abs() < 1e-12);
                }
                Su2SampleTag::Segment => panic!("segment tag for eta > 0"),
            }
        }
        assert!(disk > 0 && circle > 0);
    }

    #[test]
    fn cover_cut_time_dominates_base_cut_time() {
        for &eta in &[-0.75, -0.4, 0.0, 0.5, 2.0] {
            let m = Metric::from_oblateness(1.0, eta).unwrap();
            for k in 0..=20 {
                let pbar3 = -1.0 + 0.1 * k as f64;
                let su2 = su2_cut_time(&m, pbar3).unwrap().cut_time;
                let so3 = cut_time(&m, pbar3).unwrap().cut_time;
                assert!(
                    su2 >= so3 - 1e-12,
                    "cover shorter than base at eta={eta}, pbar3={pbar3}"
                );
            }
        }
    }

    #[test]
    fn tau3_bounds_from_the_cover_analysis() {
        // eta <= 0: tau3 >= pi away from the equator.
        for &eta in &[-0.9, -0.5, -0.1, 0.0] {
            for k in 1..=10 {
                let pbar3 = 0.1 * k as f64;
                let r = tau3(eta, pbar3).unwrap();
                assert!(r.tau >= PI - 1e-12, "eta={eta}, pbar3={pbar3}");
            }
        }
        // eta > 0: tau3 <= tau_conj away from the equator.
        for &eta in &[0.5, 1.0, 4.0] {
            for k in 1..=10 {
                let pbar3 = 0.1 * k as f64;
                let t3 = tau3(eta, pbar3).unwrap().tau;
                let tc = tau_conj(eta, pbar3).unwrap().tau;
                assert!(t3 <= tc + 1e-12, "eta={eta}, pbar3={pbar3}");
                let t0 = tau0(eta, pbar3).unwrap().tau;
                assert!(t0 < t3);
            }
        }
    }
}
