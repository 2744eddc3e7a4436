//! Stokes (Bloch) representation of qubit states and the affine action of a
//! channel on them.
//!
//! With `ρ = (I + x·σ)/2` and the standard Pauli matrices, a trace-preserving
//! map acts as `x ↦ v + T x`. For the general Choi parameterization
//!
//! ```text
//! v = ( Re(b+g), −Im(b+g), a+f−1 )
//!
//!     [ Re(d+e)  Im(d+e)  Re(b−g) ]
//! T = [ Im(e−d)  Re(d−e)  Im(g−b) ]
//!     [ 2Re c    2Im c    a−f     ]
//! ```
//!
//! The map is linear and invertible in the 12 coordinates, so rotations of
//! the input or output Bloch ball can be pulled back to parameter space.

use crate::choi::{Complex, GeneralChannelParams, HermitianMatrix4, UnitalChannelParams};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Slack allowed on `‖x‖ ≤ 1` for stored Bloch vectors.
pub const BLOCH_SLACK: f64 = 1e-12;
/// Slack allowed on the image of a channel before it is reported as non-CP.
pub const IMAGE_SLACK: f64 = 1e-9;

pub type Mat3 = [[f64; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm > 1.0 + BLOCH_SLACK {
            return Err(Error::RangeViolation(norm));
        }
        Ok(Self { x, y, z })
    }

    /// The maximally mixed state.
    pub fn origin() -> Self {
        Self { x: 0.0, y: 0.0, z: 0.0 }
    }

    /// `(0, 0, r)`, the canonical representative of Bloch radius `r`.
    pub fn on_z_axis(r: f64) -> Result<Self> {
        Self::new(0.0, 0.0, r)
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        norm3(&self.to_array())
    }
}

/// Pauli-basis action `x ↦ v + T x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub v: [f64; 3],
    pub t: Mat3,
}

impl AffineMap {
    pub fn identity() -> Self {
        Self {
            v: [0.0; 3],
            t: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// `v + T x` without any range check.
    #[inline]
    pub fn image(&self, x: &[f64; 3]) -> [f64; 3] {
        let mut out = self.v;
        for (i, o) in out.iter_mut().enumerate() {
            *o += self.t[i][0] * x[0] + self.t[i][1] * x[1] + self.t[i][2] * x[2];
        }
        out
    }

    /// Applies the map to a state; an image outside the ball means the map
    /// was not completely positive.
    pub fn apply(&self, s: &BlochVector) -> Result<BlochVector> {
        let [x, y, z] = self.image(&s.to_array());
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm > 1.0 + IMAGE_SLACK {
            return Err(Error::RangeViolation(norm));
        }
        Ok(BlochVector { x, y, z })
    }

    /// Both `v` and `T` multiplied by `s` (contraction toward the origin).
    pub fn scaled(&self, s: f64) -> Self {
        let mut t = self.t;
        t.iter_mut().flatten().for_each(|x| *x *= s);
        Self {
            v: self.v.map(|x| x * s),
            t,
        }
    }

    /// Inverse of [`to_affine`]: the unique general parameters with this
    /// Pauli-basis action.
    pub fn to_params(&self) -> GeneralChannelParams {
        let (v, t) = (&self.v, &self.t);
        let sum_bg = Complex::new(v[0], -v[1]);
        let diff_bg = Complex::new(t[0][2], -t[1][2]);
        let sum_de = Complex::new(t[0][0], t[0][1]);
        let diff_de = Complex::new(t[1][1], -t[1][0]);
        GeneralChannelParams {
            a: 0.5 * (v[2] + 1.0 + t[2][2]),
            f: 0.5 * (v[2] + 1.0 - t[2][2]),
            b: 0.5 * (sum_bg + diff_bg),
            c: Complex::new(0.5 * t[2][0], 0.5 * t[2][1]),
            d: 0.5 * (sum_de + diff_de),
            e: 0.5 * (sum_de - diff_de),
            g: 0.5 * (sum_bg - diff_bg),
        }
    }
}

/// Underlying classical channel: the restriction to diagonal states, as a
/// row-stochastic 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalChannel {
    pub rows: [[f64; 2]; 2],
}

impl ClassicalChannel {
    pub fn is_stochastic(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().all(|&x| x >= 0.0) && (r[0] + r[1] - 1.0).abs() <= 1e-12)
    }
}

/// Proper rotation of the Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3 {
    m: Mat3,
}

impl Rotation3 {
    pub fn identity() -> Self {
        Self {
            m: AffineMap::identity().t,
        }
    }

    /// Checks `RᵀR = I` and `det R = 1` within `1e-10`.
    pub fn from_matrix(m: Mat3) -> Result<Self> {
        let rtr = matmul(&transpose(&m), &m);
        for (i, row) in rtr.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                if (x - target).abs() > 1e-10 {
                    return Err(Error::NotARotation("not orthogonal"));
                }
            }
        }
        if (det3(&m) - 1.0).abs() > 1e-10 {
            return Err(Error::NotARotation("determinant is not +1"));
        }
        Ok(Self { m })
    }

    /// Rodrigues' formula; `axis` need not be normalized.
    pub fn axis_angle(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = norm3(&axis);
        if !(n.is_finite() && n > 0.0) || !angle.is_finite() {
            return Err(Error::InvalidArgument("rotation axis must be a finite nonzero vector".into()));
        }
        let [x, y, z] = axis.map(|c| c / n);
        let (s, c) = angle.sin_cos();
        let k = 1.0 - c;
        Ok(Self {
            m: [
                [c + x * x * k, x * y * k - z * s, x * z * k + y * s],
                [y * x * k + z * s, c + y * y * k, y * z * k - x * s],
                [z * x * k - y * s, z * y * k + x * s, c + z * z * k],
            ],
        })
    }

    pub fn about_x(angle: f64) -> Self {
        Self::axis_angle([1.0, 0.0, 0.0], angle).expect("unit axis")
    }

    pub fn about_y(angle: f64) -> Self {
        Self::axis_angle([0.0, 1.0, 0.0], angle).expect("unit axis")
    }

    pub fn about_z(angle: f64) -> Self {
        Self::axis_angle([0.0, 0.0, 1.0], angle).expect("unit axis")
    }

    /// Axis uniform on the sphere, angle uniform on `[0, 2π)`.
    pub fn random(rng: &mut RngStream) -> Self {
        let axis = rng.unit_r3();
        let angle = std::f64::consts::TAU * rng.uniform();
        Self::axis_angle(axis, angle).expect("unit axis")
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn inverse(&self) -> Self {
        Self {
            m: transpose(&self.m),
        }
    }

    pub fn then(&self, other: &Rotation3) -> Self {
        Self {
            m: matmul(&other.m, &self.m),
        }
    }

    pub fn rotate(&self, x: &[f64; 3]) -> [f64; 3] {
        let m = &self.m;
        [0, 1, 2].map(|i| m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2])
    }
}

pub fn to_affine(p: &GeneralChannelParams) -> AffineMap {
    let (b, c, d, e, g) = (p.b, p.c, p.d, p.e, p.g);
    let sum_bg = b + g;
    let diff_bg = b - g;
    let sum_de = d + e;
    let diff_de = d - e;
    AffineMap {
        v: [sum_bg.re, -sum_bg.im, p.a + p.f - 1.0],
        t: [
            [sum_de.re, sum_de.im, diff_bg.re],
            [-diff_de.im, diff_de.re, -diff_bg.im],
            [2.0 * c.re, 2.0 * c.im, p.a - p.f],
        ],
    }
}

pub fn unital_to_affine(p: &UnitalChannelParams) -> AffineMap {
    to_affine(&embed_unital(p))
}

/// A unital channel as a point of the general family: `f = 1−a`, `g = −b`.
pub fn embed_unital(p: &UnitalChannelParams) -> GeneralChannelParams {
    GeneralChannelParams {
        a: p.a,
        f: 1.0 - p.a,
        b: p.b,
        c: p.c,
        d: p.d,
        e: p.e,
        g: -p.b,
    }
}

pub fn apply(map: &AffineMap, s: &BlochVector) -> Result<BlochVector> {
    map.apply(s)
}

pub fn underlying_classical(p: &GeneralChannelParams) -> ClassicalChannel {
    ClassicalChannel {
        rows: [[p.a, 1.0 - p.a], [p.f, 1.0 - p.f]],
    }
}

/// `α_O(Q) = O∘Q`: rotate the output ball, `(v, T) ↦ (Rv, RT)`.
pub fn compose_rotation_post(p: &GeneralChannelParams, r: &Rotation3) -> GeneralChannelParams {
    let map = to_affine(p);
    AffineMap {
        v: r.rotate(&map.v),
        t: matmul(&r.m, &map.t),
    }
    .to_params()
}

/// `β_O(Q) = Q∘O`: rotate the input ball, `(v, T) ↦ (v, TR)`.
pub fn compose_rotation_pre(p: &GeneralChannelParams, r: &Rotation3) -> GeneralChannelParams {
    let map = to_affine(p);
    AffineMap {
        v: map.v,
        t: matmul(&map.t, &r.m),
    }
    .to_params()
}

/// Output Bloch vector computed directly from the Choi action
/// `[[α, β], [γ, δ]] ↦ αQ11 + βQ12 + γQ21 + δQ22`, independent of
/// [`to_affine`].
pub fn apply_choi(q: &HermitianMatrix4, s: &BlochVector) -> [f64; 3] {
    let [x, y, z] = s.to_array();
    // ρ = (I + xσ₁ + yσ₂ + zσ₃)/2 with σ₂ = [[0, −i], [i, 0]]
    let rho = [
        [Complex::new(0.5 * (1.0 + z), 0.0), Complex::new(0.5 * x, -0.5 * y)],
        [Complex::new(0.5 * x, 0.5 * y), Complex::new(0.5 * (1.0 - z), 0.0)],
    ];
    let mut out = [[Complex::new(0.0, 0.0); 2]; 2];
    for (bi, rho_row) in rho.iter().enumerate() {
        for (bj, &weight) in rho_row.iter().enumerate() {
            for (i, row) in out.iter_mut().enumerate() {
                for (j, o) in row.iter_mut().enumerate() {
                    *o += weight * q.entry(2 * bi + i, 2 * bj + j);
                }
            }
        }
    }
    // x_k = Tr(ρ' σ_k)
    [
        (out[0][1] + out[1][0]).re,
        (Complex::new(0.0, 1.0) * (out[0][1] - out[1][0])).re,
        (out[0][0] - out[1][1]).re,
    ]
}

fn norm3(x: &[f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

fn transpose(m: &Mat3) -> Mat3 {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[j][i]))
}

fn matmul(a: &Mat3, b: &Mat3) -> Mat3 {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn sample_params() -> GeneralChannelParams {
        GeneralChannelParams::new(0.4, 0.7, c(0.1, 0.1), c(0.05, -0.1), c(0.2, 0.1), c(-0.15, 0.05), c(0.1, -0.1))
    }

    #[test]
    fn identity_and_depolarizing_maps() {
        assert_eq!(to_affine(&GeneralChannelParams::identity()), AffineMap::identity());
        let m = to_affine(&GeneralChannelParams::diagonal(0.5, 0.5));
        assert_eq!(m.v, [0.0; 3]);
        assert_eq!(m.t, [[0.0; 3]; 3]);
    }

    #[test]
    fn diagonal_params_map() {
        let m = to_affine(&GeneralChannelParams::diagonal(0.8, 0.4));
        assert_abs_diff_eq!(m.v[2], 0.2, epsilon = 1e-15);
        assert_eq!(&m.v[..2], &[0.0, 0.0]);
        assert_abs_diff_eq!(m.t[2][2], 0.4, epsilon = 1e-15);
        let off: f64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|&(i, j)| (i, j) != (2, 2)).map(|(i, j)| m.t[i][j].abs()).sum();
        assert_eq!(off, 0.0);
    }

    #[test]
    fn apply_examples() {
        let s = BlochVector::new(0.3, 0.0, 0.4).unwrap();
        assert_eq!(AffineMap::identity().apply(&s).unwrap(), s);
        let zero = AffineMap { v: [0.0; 3], t: [[0.0; 3]; 3] };
        assert_eq!(zero.apply(&s).unwrap(), BlochVector::origin());
        let m = AffineMap {
            v: [0.0, 0.0, 0.2],
            t: [[0.0; 3], [0.0; 3], [0.0, 0.0, 0.4]],
        };
        let out = m.apply(&BlochVector::on_z_axis(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(out.z(), 0.6, epsilon = 1e-15);
    }

    #[test]
    fn apply_flags_non_cp_maps() {
        let m = AffineMap::identity().scaled(1.5);
        let s = BlochVector::on_z_axis(1.0).unwrap();
        assert!(matches!(m.apply(&s), Err(Error::RangeViolation(_))));
        assert!(BlochVector::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn affine_matches_direct_choi_action() {
        let p = sample_params();
        let map = to_affine(&p);
        for s in [
            BlochVector::origin(),
            BlochVector::new(0.3, -0.2, 0.5).unwrap(),
            BlochVector::new(0.0, 0.9, 0.1).unwrap(),
        ] {
            let direct = apply_choi(&p.choi(), &s);
            let affine = map.image(&s.to_array());
            for k in 0..3 {
                assert_abs_diff_eq!(direct[k], affine[k], epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let p = sample_params();
        let q = to_affine(&p).to_params();
        for (x, y) in p.to_array().iter().zip(q.to_array()) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-15);
        }
    }

    #[test]
    fn embed_matches_unital_choi() {
        let u = UnitalChannelParams::new(0.7, c(0.1, 0.0), c(0.02, 0.1), c(0.3, -0.2), c(0.1, 0.1));
        let g = embed_unital(&u);
        assert_abs_diff_eq!(g.f, 0.3, epsilon = 1e-15);
        assert_eq!(g.g, c(-0.1, 0.0));
        assert_eq!(g.choi(), u.choi());
        assert_eq!(unital_to_affine(&u).v, [0.0; 3]);
        assert_eq!(embed_unital(&UnitalChannelParams::diagonal(0.5)), GeneralChannelParams::diagonal(0.5, 0.5));
    }

    #[test]
    fn classical_rows() {
        let cl = underlying_classical(&GeneralChannelParams::identity());
        assert_eq!(cl.rows, [[1.0, 0.0], [0.0, 1.0]]);
        let cl = underlying_classical(&GeneralChannelParams::diagonal(0.5, 0.5));
        assert_eq!(cl.rows, [[0.5, 0.5], [0.5, 0.5]]);
        let cl = underlying_classical(&GeneralChannelParams::diagonal(0.3, 0.6));
        assert_abs_diff_eq!(cl.rows[0][1], 0.7);
        assert_abs_diff_eq!(cl.rows[1][1], 0.4);
        assert!(cl.is_stochastic());
    }

    #[test]
    fn rotation_validation() {
        assert!(Rotation3::from_matrix(*Rotation3::about_y(0.3).matrix()).is_ok());
        let reflection = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]];
        assert!(Rotation3::from_matrix(reflection).is_err());
        assert!(Rotation3::from_matrix([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.5]]).is_err());
        assert!(Rotation3::axis_angle([0.0; 3], 1.0).is_err());
        let r = Rotation3::about_z(std::f64::consts::FRAC_PI_2);
        let x = r.rotate(&[1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(x[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn identity_rotation_leaves_params() {
        let p = sample_params();
        for q in [
            compose_rotation_post(&p, &Rotation3::identity()),
            compose_rotation_pre(&p, &Rotation3::identity()),
        ] {
            for (x, y) in p.to_array().iter().zip(q.to_array()) {
                assert_abs_diff_eq!(*x, y, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn rotation_then_inverse_recovers() {
        let p = sample_params();
        let r = Rotation3::axis_angle([0.3, -1.0, 0.5], 2.1).unwrap();
        let back = compose_rotation_post(&compose_rotation_post(&p, &r), &r.inverse());
        for (x, y) in p.to_array().iter().zip(back.to_array()) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-10);
        }
        let back = compose_rotation_pre(&compose_rotation_pre(&p, &r), &r.inverse());
        for (x, y) in p.to_array().iter().zip(back.to_array()) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-10);
        }
    }

    /// The listed coordinates of `β_O` for a rotation about the x-axis. The
    /// published formulas are written with `σ₂` of opposite sign, under which a
    /// rotation by `α` reads as a rotation by `−α` in standard coordinates.
    #[test]
    fn pre_rotation_about_x_matches_listed_formulas() {
        let p = sample_params();
        for alpha in [0.3, 1.1, -2.0, 3.0] {
            let q = compose_rotation_pre(&p, &Rotation3::about_x(-alpha));
            let (s, co) = f64::sin_cos(alpha);
            let (a, f) = (p.a, p.f);
            assert_abs_diff_eq!(q.a, (a + f) / 2.0 + (a - f) * co / 2.0 + p.c.im * s, epsilon = 1e-14);
            assert_abs_diff_eq!(q.f, (a + f) / 2.0 - (a - f) * co / 2.0 - p.c.im * s, epsilon = 1e-14);
            assert_abs_diff_eq!(
                q.b.re,
                (p.b.re * (1.0 + co) + p.g.re * (1.0 - co)) / 2.0 + (p.e.im + p.d.im) * s / 2.0,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(q.c.re, p.c.re, epsilon = 1e-14);
            assert_abs_diff_eq!(q.c.im, p.c.im * co - (a - f) * s / 2.0, epsilon = 1e-14);
        }
    }
}
