//! Floating-point scalar abstraction shared by the numerical modules.
//!
//! Every evaluator that does not need exact arithmetic is written against
//! [`Real`], so the same code runs in `f32` for quick sweeps and `f64` for
//! the reported values. Exact character arithmetic lives in
//! [`crate::cyclotomic`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal. Never fails for the implementing types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts an unsigned integer (prime norms, counts).
    #[inline]
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable")
    }

    /// The Euler-Mascheroni constant.
    #[inline]
    fn euler_gamma() -> Self {
        Self::lit(EULER_GAMMA)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Euler-Mascheroni constant, 0.5772156649...
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Kahan-Babuska (Neumaier) compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<F> {
    sum: F,
    compensation: F,
}

impl<F: Real> CompensatedSum<F> {
    pub fn new() -> Self {
        Self { sum: F::zero(), compensation: F::zero() }
    }

    #[inline]
    pub fn add(&mut self, x: F) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation = self.compensation + ((self.sum - t) + x);
        } else {
            self.compensation = self.compensation + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> F {
        self.sum + self.compensation
    }
}

/// Compensated accumulator over complex values, one lane per component.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedComplexSum<F> {
    re: CompensatedSum<F>,
    im: CompensatedSum<F>,
}

impl<F: Real> CompensatedComplexSum<F> {
    pub fn new() -> Self {
        Self { re: CompensatedSum::new(), im: CompensatedSum::new() }
    }

    #[inline]
    pub fn add(&mut self, z: Complex<F>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex<F> {
        Complex::new(self.re.value(), self.im.value())
    }
}
