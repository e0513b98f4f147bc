//! Elements a(x) + b(x) y of the function field of y^2 = p(x).

use super::poly::Poly;
use super::ratfn::RatFn;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeromorphicFunction {
    pub a: RatFn,
    pub b: RatFn,
}

impl MeromorphicFunction {
    pub fn new(a: RatFn, b: RatFn) -> Self {
        MeromorphicFunction { a, b }
    }

    pub fn from_x_part(a: RatFn) -> Self {
        MeromorphicFunction { a, b: RatFn::zero() }
    }

    pub fn x() -> Self {
        Self::from_x_part(RatFn::x())
    }

    pub fn y() -> Self {
        MeromorphicFunction { a: RatFn::zero(), b: RatFn::one() }
    }

    pub fn one() -> Self {
        Self::from_x_part(RatFn::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.is_constant()
    }

    pub fn add(&self, other: &Self) -> Self {
        MeromorphicFunction { a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn sub(&self, other: &Self) -> Self {
        MeromorphicFunction { a: &self.a - &other.a, b: &self.b - &other.b }
    }

    /// Product in the quadratic extension, using y^2 = p.
    pub fn mul(&self, other: &Self, p: &Poly) -> Self {
        let p_fn = RatFn::from_poly(p.clone());
        MeromorphicFunction {
            a: &(&self.a * &other.a) + &(&(&self.b * &other.b) * &p_fn),
            b: &(&self.a * &other.b) + &(&self.b * &other.a),
        }
    }

    /// The hyperelliptic conjugate a - b y.
    pub fn conjugate(&self) -> Self {
        MeromorphicFunction { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm a^2 - b^2 p, an element of Q(x).
    pub fn norm(&self, p: &Poly) -> RatFn {
        let p_fn = RatFn::from_poly(p.clone());
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &p_fn)
    }

    pub fn inverse(&self, p: &Poly) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm(p);
        assert!(!n.is_zero(), "norm vanishes on a nonzero element");
        let n_inv = n.recip();
        Some(MeromorphicFunction {
            a: &self.a * &n_inv,
            b: &(-&self.b) * &n_inv,
        })
    }

    /// Clears denominators: returns (A, B, C) with self = (A + B y)/C and
    /// A, B, C polynomials, C nonzero.
    pub fn clear_denominators(&self) -> (Poly, Poly, Poly) {
        let da = self.a.den();
        let db = self.b.den();
        let g = da.gcd(db);
        let c = &da.div_exact(&g) * db;
        let a = self.a.num() * &db.div_exact(&g);
        let b = self.b.num() * &da.div_exact(&g);
        (a, b, c)
    }
}
