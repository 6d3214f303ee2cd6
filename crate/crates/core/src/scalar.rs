//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All linear algebra is carried out over `Complex<T>` where `T` is one of
//! the IEEE float types. Tolerances passed in by callers are absolute and
//! must be chosen to suit the precision of `T`.

use nalgebra::{ComplexField, RealField};
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar type the numerical core is generic over (`f32` or `f64`).
pub trait Real:
    RealField + Copy + Default + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Converts a literal. Every `f64` literal used in the crate is
    /// representable (possibly rounded) in `f32`, so this never fails.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("float literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Smallest tolerance that is meaningful for this precision.
    #[inline]
    fn noise_floor() -> Self {
        Self::default_epsilon() * Self::lit(64.0)
    }

    /// Clamps a requested tolerance from below by [`Real::noise_floor`].
    #[inline]
    fn tol(requested: f64) -> Self {
        let t = Self::lit(requested);
        if t < Self::noise_floor() {
            Self::noise_floor()
        } else {
            t
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type Cplx<T> = Complex<T>;

#[inline]
pub fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn c_real<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub fn c_zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn c_one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(ComplexField::cos(theta), ComplexField::sin(theta))
}

#[inline]
pub fn modulus<T: Real>(z: Complex<T>) -> T {
    ComplexField::modulus(z)
}

#[inline]
pub fn arg<T: Real>(z: Complex<T>) -> T {
    ComplexField::argument(z)
}

#[inline]
pub fn abs<T: Real>(x: T) -> T {
    ComplexField::abs(x)
}

#[inline]
pub fn max<T: Real>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let two_pi = T::two_pi();
    let mut x = theta % two_pi;
    if x > T::pi() {
        x -= two_pi;
    } else if x <= -T::pi() {
        x += two_pi;
    }
    x
}
