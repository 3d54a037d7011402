use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{QuadElem, SquareFreeD};

/// `re + im·𝕚` with both parts in Q(sqrt d); 𝕚 is the complex unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ComplexQuad {
    pub re: QuadElem,
    pub im: QuadElem,
}

impl ComplexQuad {
    pub fn new(re: QuadElem, im: QuadElem) -> Self {
        assert_eq!(re.d(), im.d(), "ComplexQuad parts must share d");
        ComplexQuad { re, im }
    }

    pub fn real(re: QuadElem) -> Self {
        let d = re.d();
        ComplexQuad::new(re, QuadElem::zero(d))
    }

    pub fn zero(d: SquareFreeD) -> Self {
        ComplexQuad::new(QuadElem::zero(d), QuadElem::zero(d))
    }

    pub fn one(d: SquareFreeD) -> Self {
        ComplexQuad::real(QuadElem::one(d))
    }

    pub fn d(&self) -> SquareFreeD {
        self.re.d()
    }

    pub fn conj(&self) -> Self {
        ComplexQuad::new(self.re.clone(), -&self.im)
    }

    /// `|z|² = re² + im²`.
    pub fn abs_sq(&self) -> QuadElem {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }
}

impl fmt::Display for ComplexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*I", self.re, self.im)
    }
}

impl Add for &ComplexQuad {
    type Output = ComplexQuad;
    fn add(self, rhs: &ComplexQuad) -> ComplexQuad {
        ComplexQuad::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexQuad {
    type Output = ComplexQuad;
    fn sub(self, rhs: &ComplexQuad) -> ComplexQuad {
        ComplexQuad::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexQuad {
    type Output = ComplexQuad;
    fn mul(self, rhs: &ComplexQuad) -> ComplexQuad {
        ComplexQuad::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &ComplexQuad {
    type Output = ComplexQuad;
    fn neg(self) -> ComplexQuad {
        ComplexQuad::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn conj_involution_and_abs() {
        let d = SquareFreeD::new(7).unwrap();
        let z = ComplexQuad::new(
            QuadElem::new(rat(3, 2), int(1), d),
            QuadElem::new(int(-2), rat(1, 3), d),
        );
        assert_eq!(z.conj().conj(), z);
        let prod = &z * &z.conj();
        assert!(prod.is_real());
        assert_eq!(prod.re, z.abs_sq());
    }

    #[test]
    fn multiplication_commutes() {
        let d = SquareFreeD::new(3).unwrap();
        let z = ComplexQuad::new(QuadElem::from_int(1, d), QuadElem::sqrt_d(d));
        let w = ComplexQuad::new(QuadElem::new(int(2), int(-1), d), QuadElem::from_int(5, d));
        assert_eq!(&z * &w, &w * &z);
    }
}
