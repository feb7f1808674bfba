//! Unit quaternions, rotations in axis-angle form, and the double cover.
//!
//! Unit quaternions map 2-to-1 onto SO(3): `q` and `-q` represent the same
//! rotation. [`so3_chordal_distance`] compares quaternions modulo that sign,
//! while [`Rotation`] is the canonical axis-angle form with angle in `[0, pi]`.
//!
//! Orientation convention: `R_{v, phi}` rotates so that for any `w` outside
//! `span{v}` the frame `(w, R_{v,phi} w, v)` is positively oriented; this is
//! the usual right-hand rule and matches the quaternion action `q x q*`.

pub type Vec3 = [f64; 3];

pub const E1: Vec3 = [1.0, 0.0, 0.0];
pub const E2: Vec3 = [0.0, 1.0, 0.0];
pub const E3: Vec3 = [0.0, 0.0, 1.0];

/// Unit quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitQuaternion {
    pub const IDENTITY: UnitQuaternion = UnitQuaternion {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Rescales the components to unit norm. The input must not be the zero
    /// quadruple; closed-form evaluations only ever drift by rounding.
    pub fn normalized(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        debug_assert!(n > 0.0, "cannot normalize the zero quaternion");
        UnitQuaternion {
            w: w / n,
            x: x / n,
            y: y / n,
            z: z / n,
        }
    }

    /// Quaternion of the rotation by `angle` around `axis` (normalized here).
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let (s, c) = (0.5 * angle).sin_cos();
        if n == 0.0 {
            return UnitQuaternion::IDENTITY;
        }
        UnitQuaternion::normalized(c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n)
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn negated(&self) -> Self {
        UnitQuaternion {
            w: -self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn conjugate(&self) -> Self {
        UnitQuaternion {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Hamilton product `self * rhs`.
    pub fn mul(&self, rhs: &UnitQuaternion) -> Self {
        UnitQuaternion {
            w: self.w * rhs.w - self.x * rhs.x - self.y * rhs.y - self.z * rhs.z,
            x: self.w * rhs.x + self.x * rhs.w + self.y * rhs.z - self.z * rhs.y,
            y: self.w * rhs.y - self.x * rhs.z + self.y * rhs.w + self.z * rhs.x,
            z: self.w * rhs.z + self.x * rhs.y - self.y * rhs.x + self.z * rhs.w,
        }
    }

    pub fn imag(&self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    /// Applies the rotation to a vector via `q v q*`.
    pub fn rotate_vector(&self, v: Vec3) -> Vec3 {
        let p = UnitQuaternion {
            w: 0.0,
            x: v[0],
            y: v[1],
            z: v[2],
        };
        let r = self.mul(&p).mul(&self.conjugate());
        [r.x, r.y, r.z]
    }

    /// Euclidean distance in R^4 to another quaternion, no sign identification.
    pub fn raw_distance(&self, other: &UnitQuaternion) -> f64 {
        let dw = self.w - other.w;
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dw * dw + dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Distance between the rotations represented by two unit quaternions:
/// `min(|q1 - q2|, |q1 + q2|)`. Zero exactly when both name the same rotation.
pub fn so3_chordal_distance(a: &UnitQuaternion, b: &UnitQuaternion) -> f64 {
    a.raw_distance(b).min(a.raw_distance(&b.negated()))
}

/// Components in absolute value below this count as zero when picking the
/// canonical axis representative of a half-turn.
const AXIS_SIGN_TOL: f64 = 1e-12;

/// Rotation in canonical axis-angle form: unit axis, angle in `[0, pi]`.
///
/// The canonical form is deterministic: the quaternion representative with
/// `w >= 0` is used, and for half-turns (`angle = pi`, where `axis` and
/// `-axis` name the same rotation) the axis with positive first nonzero
/// component is chosen. The identity gets the conventional axis `e3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    axis: Vec3,
    angle: f64,
}

impl Rotation {
    /// Canonicalizes an arbitrary axis-angle pair (any nonzero axis, any
    /// finite angle) into the canonical form.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Self {
        Rotation::from_quaternion(&UnitQuaternion::from_axis_angle(axis, angle))
    }

    /// Canonical axis-angle form of the rotation represented by `q`.
    pub fn from_quaternion(q: &UnitQuaternion) -> Self {
        let mut q = *q;
        if q.w < 0.0 {
            q = q.negated();
        }
        let s = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
        if s < AXIS_SIGN_TOL * AXIS_SIGN_TOL {
            return Rotation {
                axis: E3,
                angle: 0.0,
            };
        }
        // atan2 is well conditioned for both small and near-pi angles.
        let angle = 2.0 * s.atan2(q.w);
        let mut axis = [q.x / s, q.y / s, q.z / s];
        if q.w <= AXIS_SIGN_TOL {
            // Half-turn: axis and -axis coincide, pick the representative
            // whose first nonzero component is positive.
            let lead = axis
                .iter()
                .find(|c| c.abs() > AXIS_SIGN_TOL)
                .copied()
                .unwrap_or(1.0);
            if lead < 0.0 {
                axis = [-axis[0], -axis[1], -axis[2]];
            }
        }
        Rotation { axis, angle }
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Quaternion representative with `w >= 0`.
    pub fn quaternion(&self) -> UnitQuaternion {
        UnitQuaternion::from_axis_angle(self.axis, self.angle)
    }
}
