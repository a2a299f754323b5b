//! Value rings for evaluating symmetric functions at an alphabet.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::qsqrt::QAdjSqrt;
use crate::rational::{self, Q};

/// A commutative ring containing Q.
pub trait Scalar: Clone + Zero + One + Send + Sync {
    fn from_q(x: &Q) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
}

impl Scalar for Q {
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

impl Scalar for QAdjSqrt {
    fn from_q(x: &Q) -> Self {
        QAdjSqrt::rational(x.clone())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

impl Scalar for f64 {
    fn from_q(x: &Q) -> Self {
        rational::to_f64(x)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

impl Scalar for Complex64 {
    fn from_q(x: &Q) -> Self {
        Complex64::new(rational::to_f64(x), 0.0)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}
