//! Two-component spinors and the fixed 2×2 matrix algebra of the 1+1
//! dimensional theory.
//!
//! The gamma matrices are
//!
//! ```text
//! γ⁰ = [[1, 0], [0, -1]]     γ¹ = [[0, 1], [-1, 0]]
//! ```
//!
//! so that `γ¹γ⁰ = -σx` and the charge conjugate is `ψc = γ¹γ⁰ψ* = -σxψ*`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Tolerance used for the Hermiticity invariant of observables and for the
/// reality of expectation values.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A dense row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);
    pub const GAMMA0: Mat2 = Mat2([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]]);
    pub const GAMMA1: Mat2 = Mat2([[ZERO, ONE], [C64::new(-1.0, 0.0), ZERO]]);
    pub const SIGMA_X: Mat2 = Mat2([[ZERO, ONE], [ONE, ZERO]]);
    pub const SIGMA_Y: Mat2 = Mat2([[ZERO, C64::new(0.0, -1.0)], [I, ZERO]]);
    pub const SIGMA_Z: Mat2 = Mat2([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]]);

    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn scale(self, s: C64) -> Self {
        let m = self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn conj(self) -> Self {
        let m = self.0;
        Mat2([
            [m[0][0].conj(), m[0][1].conj()],
            [m[1][0].conj(), m[1][1].conj()],
        ])
    }

    pub fn adjoint(self) -> Self {
        let m = self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn apply(&self, psi: Spinor2) -> Spinor2 {
        let m = &self.0;
        Spinor2 {
            upper: m[0][0] * psi.upper + m[0][1] * psi.lower,
            lower: m[1][0] * psi.upper + m[1][1] * psi.lower,
        }
    }

    /// Largest entrywise modulus of `A - A†`.
    pub fn hermitian_defect(&self) -> f64 {
        let m = &self.0;
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((m[r][c] - m[c][r].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// A Hermitian 2×2 observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observable2(Mat2);

impl Observable2 {
    pub const SIGMA_X: Observable2 = Observable2(Mat2::SIGMA_X);
    pub const SIGMA_Y: Observable2 = Observable2(Mat2::SIGMA_Y);
    pub const SIGMA_Z: Observable2 = Observable2(Mat2::SIGMA_Z);
    pub const IDENTITY: Observable2 = Observable2(Mat2::IDENTITY);

    /// Rejects matrices that are non-finite or deviate from `A = A†` by more
    /// than [`HERMITIAN_TOL`].
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("observable"));
        }
        let defect = m.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Observable2(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }
}

/// A two-component complex spinor `(upper, lower)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor2 {
    pub upper: C64,
    pub lower: C64,
}

impl Spinor2 {
    pub const fn new(upper: C64, lower: C64) -> Self {
        Spinor2 { upper, lower }
    }

    /// Builds a spinor from `(re upper, im upper, re lower, im lower)`.
    pub const fn from_parts(re_u: f64, im_u: f64, re_l: f64, im_l: f64) -> Self {
        Spinor2 {
            upper: C64::new(re_u, im_u),
            lower: C64::new(re_l, im_l),
        }
    }

    pub fn parts(&self) -> [f64; 4] {
        [self.upper.re, self.upper.im, self.lower.re, self.lower.im]
    }

    pub fn is_finite(&self) -> bool {
        self.upper.is_finite() && self.lower.is_finite()
    }

    pub fn ensure_finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite("spinor"))
        }
    }

    pub fn conj(self) -> Self {
        Spinor2::new(self.upper.conj(), self.lower.conj())
    }

    pub fn scale(self, s: C64) -> Self {
        Spinor2::new(self.upper * s, self.lower * s)
    }

    pub fn scale_re(self, s: f64) -> Self {
        Spinor2::new(self.upper * s, self.lower * s)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.upper.norm_sqr() + self.lower.norm_sqr()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// Returns the spinor divided by its norm; the zero spinor is rejected.
    pub fn normalized(self) -> Result<Self> {
        let n = norm(&self);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NotNormalized(n * n));
        }
        Ok(self.scale_re(1.0 / n))
    }

    /// Largest modulus among the componentwise differences. No global phase
    /// is factored out.
    pub fn max_abs_diff(&self, other: &Spinor2) -> f64 {
        (self.upper - other.upper)
            .norm()
            .max((self.lower - other.lower).norm())
    }

    /// Euclidean distance in `C²`.
    pub fn distance(&self, other: &Spinor2) -> f64 {
        (*self - *other).norm_sqr().sqrt()
    }
}

impl Add for Spinor2 {
    type Output = Spinor2;

    fn add(self, rhs: Spinor2) -> Spinor2 {
        Spinor2::new(self.upper + rhs.upper, self.lower + rhs.lower)
    }
}

impl Sub for Spinor2 {
    type Output = Spinor2;

    fn sub(self, rhs: Spinor2) -> Spinor2 {
        Spinor2::new(self.upper - rhs.upper, self.lower - rhs.lower)
    }
}

impl Neg for Spinor2 {
    type Output = Spinor2;

    fn neg(self) -> Spinor2 {
        Spinor2::new(-self.upper, -self.lower)
    }
}

/// `⟨φ|ψ⟩`, conjugate-linear in the first argument.
pub fn inner(phi: &Spinor2, psi: &Spinor2) -> C64 {
    phi.upper.conj() * psi.upper + phi.lower.conj() * psi.lower
}

pub fn norm(psi: &Spinor2) -> f64 {
    inner(psi, psi).re.sqrt()
}

/// `ψc = γ¹γ⁰ψ*`, which equals `-σxψ*`.
pub fn charge_conjugate(psi: &Spinor2) -> Result<Spinor2> {
    let psi = psi.ensure_finite()?;
    Ok((Mat2::GAMMA1 * Mat2::GAMMA0).apply(psi.conj()))
}

/// `ψ†Aψ`. The imaginary residue of a Hermitian sandwich is dropped after
/// asserting it is below [`HERMITIAN_TOL`] relative to `‖ψ‖²`.
pub fn expectation(a: &Observable2, psi: &Spinor2) -> Result<f64> {
    let psi = psi.ensure_finite()?;
    let value = inner(&psi, &a.0.apply(psi));
    let scale = psi.norm_sqr().max(1.0);
    debug_assert!(
        value.im.abs() <= HERMITIAN_TOL * scale,
        "imaginary residue {} in Hermitian expectation",
        value.im
    );
    Ok(value.re)
}

/// Same as [`expectation`] but accepts a raw matrix, rejecting it unless it
/// is Hermitian.
pub fn expectation_of(a: &Mat2, psi: &Spinor2) -> Result<f64> {
    expectation(&Observable2::new(*a)?, psi)
}
