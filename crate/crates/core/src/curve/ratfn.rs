//! Rational functions over the rationals, kept in reduced form.

use super::poly::{Poly, Q};
use num_complex::Complex64;
use num_traits::One;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> RatFn {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFn { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: Poly) -> RatFn {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn zero() -> RatFn {
        RatFn::from_poly(Poly::zero())
    }

    pub fn one() -> RatFn {
        RatFn::from_poly(Poly::one())
    }

    pub fn constant(c: Q) -> RatFn {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn x() -> RatFn {
        RatFn::from_poly(Poly::x())
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_constant() {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        // normalize denominator to be monic
        let lead = self.den.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn recip(&self) -> RatFn {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> RatFn {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFn::new(n, &self.den * &self.den)
    }

    /// Order of vanishing at the finite point `x0` (negative at poles).
    pub fn ord_at(&self, x0: &Q) -> i64 {
        assert!(!self.is_zero());
        let f = Poly::x_minus(x0);
        self.num.ord_factor(&f) as i64 - self.den.ord_factor(&f) as i64
    }

    /// Order at infinity of the rational function in the local parameter 1/x.
    pub fn ord_at_infinity(&self) -> i64 {
        assert!(!self.is_zero());
        self.den.degree() - self.num.degree()
    }

    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d == Q::from_integer(0.into()) {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.num.eval_complex(z) / self.den.eval_complex(z)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        RatFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        RatFn::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::poly::q_i64;

    #[test]
    fn reduces_common_factors() {
        // (x^2-1)/(x-1) = x+1
        let r = RatFn::new(Poly::from_i64(&[-1, 0, 1]), Poly::from_i64(&[-1, 1]));
        assert_eq!(r.num(), &Poly::from_i64(&[1, 1]));
        assert_eq!(r.den(), &Poly::one());
    }

    #[test]
    fn orders() {
        // x^2/(x-1): ord at 0 is 2, at 1 is -1, at infinity is -1
        let r = RatFn::new(Poly::from_i64(&[0, 0, 1]), Poly::from_i64(&[-1, 1]));
        assert_eq!(r.ord_at(&q_i64(0)), 2);
        assert_eq!(r.ord_at(&q_i64(1)), -1);
        assert_eq!(r.ord_at_infinity(), -1);
    }
}
