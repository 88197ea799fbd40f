use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::{Assignment, MPoly};
use crate::rational::Rational;

/// `num / den` with `den ≠ 0`. Never reduced: equality is decided by
/// cross-multiplication.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: MPoly,
    den: MPoly,
}

impl RationalFn {
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        RationalFn { num, den }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RationalFn::new(p, MPoly::one())
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, point: &Assignment) -> Option<Rational> {
        let den = self.den.eval(point);
        if den.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / den)
        }
    }

    /// `self.num · other.den = other.num · self.den`.
    pub fn same_function(&self, other: &RationalFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn recip(&self) -> RationalFn {
        RationalFn::new(self.den.clone(), self.num.clone())
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.same_function(other)
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn::new(-&self.num, self.den.clone())
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics if `rhs` is the zero function.
impl Div<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}
