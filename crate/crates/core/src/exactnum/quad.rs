use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{int, Rational, Sign, SquareFreeD};
use crate::error::{Error, Result};

/// `a + b·sqrt(d)` in the real embedding `sqrt(d) > 0`.
///
/// For `d = 1` the irrational part is folded into `a`, so the representation
/// stays canonical and equality is structural for every `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: Rational,
    b: Rational,
    d: SquareFreeD,
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational, d: SquareFreeD) -> Self {
        if d.get() == 1 {
            QuadElem { a: a + b, b: Rational::zero(), d }
        } else {
            QuadElem { a, b, d }
        }
    }

    pub fn rational(a: Rational, d: SquareFreeD) -> Self {
        QuadElem::new(a, Rational::zero(), d)
    }

    pub fn from_int(n: i64, d: SquareFreeD) -> Self {
        QuadElem::rational(int(n), d)
    }

    pub fn zero(d: SquareFreeD) -> Self {
        QuadElem::rational(Rational::zero(), d)
    }

    pub fn one(d: SquareFreeD) -> Self {
        QuadElem::rational(Rational::one(), d)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(d: SquareFreeD) -> Self {
        QuadElem::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> SquareFreeD {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign under `sqrt(d) > 0`: mixed-sign parts are resolved by
    /// comparing `a²` with `b²·d`.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of_rational(&self.a);
        let sb = Sign::of_rational(&self.b);
        match (sa, sb) {
            (s, Sign::Zero) => s,
            (Sign::Zero, s) => s,
            (x, y) if x == y => x,
            _ => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * int(self.d.get());
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    // a² = b²d forces d to be a rational square; d = 1 never gets here.
                    Ordering::Equal => Sign::Zero,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn abs(&self) -> QuadElem {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a − b·sqrt(d)`.
    pub fn conjugate(&self) -> QuadElem {
        QuadElem::new(self.a.clone(), -&self.b, self.d)
    }

    /// Field norm `a² − d·b²`.
    pub fn field_norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * int(self.d.get())
    }

    pub fn invert(&self) -> Result<QuadElem> {
        let n = self.field_norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(QuadElem::new(&c.a / &n, &c.b / &n, self.d))
    }

    pub fn scale(&self, k: &Rational) -> QuadElem {
        QuadElem::new(&self.a * k, &self.b * k, self.d)
    }

    fn same_field(&self, other: &QuadElem) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.d.get(), other.d.get()))
        }
    }

    pub fn try_add(&self, other: &QuadElem) -> Result<QuadElem> {
        self.same_field(other)?;
        Ok(QuadElem::new(&self.a + &other.a, &self.b + &other.b, self.d))
    }

    pub fn try_sub(&self, other: &QuadElem) -> Result<QuadElem> {
        self.same_field(other)?;
        Ok(QuadElem::new(&self.a - &other.a, &self.b - &other.b, self.d))
    }

    pub fn try_mul(&self, other: &QuadElem) -> Result<QuadElem> {
        self.same_field(other)?;
        let dd = int(self.d.get());
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadElem::new(a, b, self.d))
    }

    pub fn try_div(&self, other: &QuadElem) -> Result<QuadElem> {
        self.same_field(other)?;
        self.try_mul(&other.invert()?)
    }

    pub fn pow(&self, n: u32) -> QuadElem {
        let mut acc = QuadElem::one(self.d);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating approximation, for diagnostics and sanity checks only.
    pub fn to_f64(&self) -> f64 {
        let f = |q: &Rational| {
            let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        f(&self.a) + f(&self.b) * (self.d.get() as f64).sqrt()
    }
}

impl PartialOrd for QuadElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Real order. Panics when comparing elements of different fields.
impl Ord for QuadElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d.get();
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({d})", self.b)
        } else if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({d})", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*sqrt({d})", self.a, self.b)
        }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(-&self.a, -&self.b, self.d)
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands live in different fields; use the
        /// `try_` method for a fallible version.
        impl $tr<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                self.$checked(rhs).expect(concat!("QuadElem::", stringify!($method)))
            }
        }
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                (&self).$method(rhs)
            }
        }
        impl $tr<QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);
