//! 2×2 real matrices, used as elements of SL(2,R) and of its Lie algebra.

use std::ops::{Add, Mul, Neg, Sub};

use twofloat::TwoFloat;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Determinant with a compensated product, accurate even when `ad ≈ bc` is large.
    pub fn det(&self) -> f64 {
        let w = self.b * self.c;
        let e = (-self.b).mul_add(self.c, w);
        let f = self.a.mul_add(self.d, -w);
        f + e
    }

    /// Adjugate; the inverse for determinant-one matrices.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn inverse(&self) -> Mat2 {
        self.adjugate().scale(1.0 / self.det())
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Rescale to determinant one. Requires a positive determinant.
    pub fn normalized(&self) -> Mat2 {
        self.scale(1.0 / self.det().sqrt())
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn frobenius(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    /// Distance to {I, -I} in the max-entry norm.
    pub fn distance_to_pm_identity(&self) -> f64 {
        let plus = (*self - Mat2::IDENTITY).max_abs();
        let minus = (*self + Mat2::IDENTITY).max_abs();
        plus.min(minus)
    }

    pub fn traceless_part(&self) -> Mat2 {
        let h = 0.5 * self.trace();
        Mat2::new(self.a - h, self.b, self.c, self.d - h)
    }

    /// Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    /// Trace form `tr(XY)/2`; on traceless matrices this is the Minkowski form.
    pub fn pairing(&self, other: &Mat2) -> f64 {
        0.5 * (*self * *other).trace()
    }

    /// `self * x * self^{-1}` for determinant-one `self`.
    pub fn conjugate(&self, x: &Mat2) -> Mat2 {
        *self * *x * self.adjugate()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

/// 2×2 matrix in double-double precision, for products whose traces are compared
/// against 2 at the scale of short geodesics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DdMat2 {
    pub a: TwoFloat,
    pub b: TwoFloat,
    pub c: TwoFloat,
    pub d: TwoFloat,
}

impl DdMat2 {
    pub const IDENTITY: DdMat2 = DdMat2 {
        a: TwoFloat::from_f64(1.0),
        b: TwoFloat::from_f64(0.0),
        c: TwoFloat::from_f64(0.0),
        d: TwoFloat::from_f64(1.0),
    };

    pub fn new(a: TwoFloat, b: TwoFloat, c: TwoFloat, d: TwoFloat) -> Self {
        DdMat2 { a, b, c, d }
    }

    pub fn from_f64(m: &Mat2) -> Self {
        DdMat2::new(m.a.into(), m.b.into(), m.c.into(), m.d.into())
    }

    pub fn to_f64(&self) -> Mat2 {
        Mat2::new(self.a.into(), self.b.into(), self.c.into(), self.d.into())
    }

    pub fn trace(&self) -> TwoFloat {
        self.a + self.d
    }

    pub fn det(&self) -> TwoFloat {
        self.a * self.d - self.b * self.c
    }

    pub fn adjugate(&self) -> DdMat2 {
        DdMat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, s: TwoFloat) -> DdMat2 {
        DdMat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Rescale to determinant one. Requires a positive determinant.
    pub fn normalized(&self) -> DdMat2 {
        self.scale(self.det().sqrt().recip())
    }

    pub fn max_abs(&self) -> f64 {
        self.to_f64().max_abs()
    }

    pub fn frobenius(&self) -> f64 {
        self.to_f64().frobenius()
    }

    pub fn distance_to_pm_identity(&self) -> f64 {
        let plus = (*self - DdMat2::IDENTITY).max_abs();
        let minus = (*self + DdMat2::IDENTITY).max_abs();
        plus.min(minus)
    }

    pub fn traceless_part(&self) -> DdMat2 {
        let h = self.trace() * 0.5;
        DdMat2::new(self.a - h, self.b, self.c, self.d - h)
    }

    pub fn bracket(&self, other: &DdMat2) -> DdMat2 {
        *self * *other - *other * *self
    }

    pub fn conjugate(&self, x: &DdMat2) -> DdMat2 {
        *self * *x * self.adjugate()
    }
}

impl Mul for DdMat2 {
    type Output = DdMat2;
    fn mul(self, o: DdMat2) -> DdMat2 {
        DdMat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Add for DdMat2 {
    type Output = DdMat2;
    fn add(self, o: DdMat2) -> DdMat2 {
        DdMat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for DdMat2 {
    type Output = DdMat2;
    fn sub(self, o: DdMat2) -> DdMat2 {
        DdMat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for DdMat2 {
    type Output = DdMat2;
    fn neg(self) -> DdMat2 {
        DdMat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}
