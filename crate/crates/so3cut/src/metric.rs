//! The metric data and initial covectors.
//!
//! A left-invariant Riemannian metric on SO(3) with two equal eigenvalues is
//! described by the pair `(I1 = I2, I3)` of positive eigenvalues of its
//! restriction to the Lie algebra, together with the derived oblateness
//! `eta = I1/I3 - 1 > -1`. Unit-speed geodesics are parametrized by initial
//! covectors on the level surface
//!
//! ```text
//! C = { p : p1^2/I1 + p2^2/I2 + p3^2/I3 = 1 }
//! ```
//!
//! On `C` the norm `|p|` is a function of the normalized third component
//! `pbar3 = p3/|p|` alone: `|p| = sqrt(I1 / (1 + eta * pbar3^2))`.

use crate::error::{Error, Result};

/// Absolute tolerance for membership on the level surface `2H(p) = 1`.
pub const LEVEL_SURFACE_TOL: f64 = 1e-12;

/// Metric eigenvalue pair `(I1 = I2, I3)` with the derived oblateness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric {
    i1: f64,
    i3: f64,
    eta: f64,
}

impl Metric {
    /// Builds the metric from its eigenvalues; both must be positive.
    pub fn new(i1: f64, i3: f64) -> Result<Self> {
        if !(i1 > 0.0) || !(i3 > 0.0) {
            return Err(Error::NonPositiveEigenvalue { i1, i3 });
        }
        Ok(Metric {
            i1,
            i3,
            eta: i1 / i3 - 1.0,
        })
    }

    /// Builds the metric from `I1` and the oblateness, `I3 = I1/(1 + eta)`.
    pub fn from_oblateness(i1: f64, eta: f64) -> Result<Self> {
        if !(eta > -1.0) {
            return Err(Error::InvalidArgument {
                name: "eta",
                value: eta,
                expected: "a value > -1",
            });
        }
        Metric::new(i1, i1 / (1.0 + eta))
    }

    pub fn i1(&self) -> f64 {
        self.i1
    }

    /// Second eigenvalue; equal to `I1` by construction.
    pub fn i2(&self) -> f64 {
        self.i1
    }

    pub fn i3(&self) -> f64 {
        self.i3
    }

    /// Oblateness `eta = I1/I3 - 1`. Zero is the bi-invariant case, `eta -> -1`
    /// is the sub-Riemannian limit `I3 -> infinity`.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Norm `|p|` of a covector on the level surface with the given `pbar3`.
    pub fn p_norm(&self, pbar3: f64) -> Result<f64> {
        check_pbar3(pbar3)?;
        Ok((self.i1 / (1.0 + self.eta * pbar3 * pbar3)).sqrt())
    }
}

/// Momentum covector `p = p1 e1 + p2 e2 + p3 e3` in the orthonormal dual basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Covector {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl Covector {
    /// Plain component container; no level-surface check is performed here.
    pub fn new(p1: f64, p2: f64, p3: f64) -> Self {
        Covector { p1, p2, p3 }
    }

    /// Covector on the level surface with prescribed `pbar3` and azimuth of
    /// the `(p1, p2)` pair.
    pub fn from_angles(metric: &Metric, pbar3: f64, azimuth: f64) -> Result<Self> {
        let norm = metric.p_norm(pbar3)?;
        let horizontal = norm * (1.0 - pbar3 * pbar3).max(0.0).sqrt();
        Ok(Covector {
            p1: horizontal * azimuth.cos(),
            p2: horizontal * azimuth.sin(),
            p3: norm * pbar3,
        })
    }

    pub fn norm(&self) -> f64 {
        (self.p1 * self.p1 + self.p2 * self.p2 + self.p3 * self.p3).sqrt()
    }

    /// Unit covector `p/|p|`.
    pub fn pbar(&self) -> [f64; 3] {
        let n = self.norm();
        [self.p1 / n, self.p2 / n, self.p3 / n]
    }

    pub fn pbar3(&self) -> f64 {
        self.p3 / self.norm()
    }

    /// Angle of the `(p1, p2)` pair, in `(-pi, pi]`.
    pub fn azimuth(&self) -> f64 {
        self.p2.atan2(self.p1)
    }

    /// Hamiltonian `H(p) = (p1^2/I1 + p2^2/I2 + p3^2/I3) / 2`.
    pub fn hamiltonian(&self, metric: &Metric) -> f64 {
        0.5 * (self.p1 * self.p1 / metric.i1()
            + self.p2 * self.p2 / metric.i2()
            + self.p3 * self.p3 / metric.i3())
    }

    /// Deviation `|2H(p) - 1|` from the level surface.
    pub fn level_surface_residual(&self, metric: &Metric) -> f64 {
        (2.0 * self.hamiltonian(metric) - 1.0).abs()
    }

    /// Errors unless the covector lies on `C` within [`LEVEL_SURFACE_TOL`].
    pub fn check_on_level_surface(&self, metric: &Metric) -> Result<()> {
        let residual = self.level_surface_residual(metric);
        if residual > LEVEL_SURFACE_TOL {
            return Err(Error::OffLevelSurface { residual });
        }
        Ok(())
    }
}

pub(crate) fn check_pbar3(pbar3: f64) -> Result<()> {
    if !(pbar3.abs() <= 1.0) {
        return Err(Error::PBar3OutOfRange(pbar3));
    }
    Ok(())
}
