//! Numerical toolkit for left-invariant Riemannian metrics on SO(3) with two
//! equal eigenvalues (the axially symmetric case).
//!
//! The crate computes, in closed form where one exists and by robust scalar
//! root-finding otherwise:
//!
//! * geodesics through the identity as unit quaternions ([`exp_map`]) and the
//!   momentum flow along them ([`vertical_flow`]);
//! * the symmetry group of the exponential map and its action on both ends
//!   ([`apply_symmetry_source`], [`apply_symmetry_target`]);
//! * the first roots `tau0`, `tau3` and the conjugate root `tau_conj` that
//!   control loss of optimality ([`roots`]);
//! * Maxwell strata, cut times, the cut locus, wavefronts, the diameter and
//!   the farthest-point set ([`cut`]);
//! * distances from the identity by inverting the exponential map, checked by
//!   a brute-force shooting oracle ([`inverse`]);
//! * the cut time and cut locus of the lifted problem on SU(2) ([`su2`]);
//! * the sub-Riemannian limit `I3 -> infinity` with convergence reports
//!   ([`srlimit`]).
//!
//! Everything is plain `f64`; operations are pure functions over immutable
//! value types and safe to call concurrently.

// Validations are written as negated comparisons (`!(x > 0.0)`) on purpose:
// they reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cut;
pub mod error;
pub mod geodesic;
pub mod inverse;
pub mod metric;
pub mod roots;
pub mod rotation;
pub mod srlimit;
pub mod su2;

pub use cut::{
    classify_cut_point, cut_locus_mesh, cut_time, diameter, max_cut_time, maxwell_time, wavefront,
    CutReport, CutStratum, DiameterReport, Farthest, LocusMesh, MaxwellStratum, MeshPoint,
    PointClass, StratumLabel,
};
pub use error::{Error, Result};
pub use geodesic::{
    apply_symmetry_source, apply_symmetry_target, exp_map, sample_geodesic, vertical_flow,
    GeodesicSample, SymmetryElement,
};
pub use inverse::{
    distance, invert_exp, shooting_oracle, InverseSolution, Preimage, ShootingResult,
};
pub use metric::{Covector, Metric, LEVEL_SURFACE_TOL};
pub use roots::{eval_q0, eval_q3, tau0, tau3, tau_conj, RootResult};
pub use rotation::{so3_chordal_distance, Rotation, UnitQuaternion, Vec3};
pub use srlimit::{
    convergence_report, matched_covector, riemannian_axis_cut_time, sr_conjugate_time,
    sr_cut_time_axis, sr_cut_time_plane, sr_exp, ConvergenceRow, SrCompareParams, SrCovector,
    SrQuantity,
};
pub use su2::{
    su2_cut_locus_sample, su2_cut_time, su2_shooting_oracle, Su2CutReport, Su2LocusKind,
    Su2Sample, Su2SampleTag,
};
