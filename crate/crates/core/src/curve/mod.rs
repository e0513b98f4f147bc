//! Exact arithmetic on hyperelliptic curves y^2 = p(x): places, divisors,
//! principal divisors, the canonical class, Riemann-Roch spaces and pencils.

pub mod divisor;
pub mod function;
pub mod h0;
pub mod json;
pub mod pencil;
pub mod place;
pub mod poly;
pub mod ratfn;

pub use divisor::Divisor;
pub use function::MeromorphicFunction;
pub use pencil::Pencil;
pub use place::Place;
pub use poly::{Poly, Q};
pub use ratfn::RatFn;

use poly::{order_profile, rational_sqrt, Series};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("defining polynomial must be squarefree")]
    NotSquarefree,
    #[error("defining polynomial must be nonconstant")]
    DegenerateModel,
    #[error("undefined divisor: the zero function has no divisor")]
    ZeroFunctionDivisor,
    #[error("pencil requires a non-constant function")]
    ConstantPencil,
    #[error("divisor has sheet-ambiguous entries; resolve pairs before h0")]
    SheetAmbiguous,
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Odd,
    Even,
}

/// A hyperelliptic curve y^2 = p(x) with squarefree rational p.
#[derive(Clone, Debug)]
pub struct HyperellipticCurve {
    p: Poly,
    model: Model,
    genus: i64,
    /// Coprime squarefree factors of p with rational roots split off as
    /// linear factors; used to key branch places deterministically.
    branch_parts: Vec<Poly>,
    /// sqrt of the leading coefficient for even models, when rational.
    lc_sqrt: Option<Q>,
}

impl HyperellipticCurve {
    pub fn new(p: Poly) -> Result<Self, CurveError> {
        if p.degree() < 1 {
            return Err(CurveError::DegenerateModel);
        }
        if !p.is_squarefree() {
            return Err(CurveError::NotSquarefree);
        }
        let deg = p.degree();
        let model = if deg % 2 == 1 { Model::Odd } else { Model::Even };
        let genus = (deg - 1) / 2;
        let mut branch_parts = vec![];
        let mut cof = p.monic();
        for (root, m) in p.rational_roots() {
            debug_assert_eq!(m, 1);
            let lin = Poly::x_minus(&root);
            branch_parts.push(lin.clone());
            cof = cof.div_exact(&lin);
        }
        if !cof.is_constant() {
            branch_parts.push(cof.monic());
        }
        branch_parts.sort();
        let lc_sqrt = if model == Model::Even {
            rational_sqrt(&p.leading())
        } else {
            None
        };
        Ok(HyperellipticCurve { p, model, genus, branch_parts, lc_sqrt })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, CurveError> {
        Self::new(Poly::from_i64(coeffs))
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus
    }

    pub fn places_at_infinity(&self) -> usize {
        match self.model {
            Model::Odd => 1,
            Model::Even => 2,
        }
    }

    pub fn branch_parts(&self) -> &[Poly] {
        &self.branch_parts
    }

    pub(crate) fn lc_sqrt_ref(&self) -> &Option<Q> {
        &self.lc_sqrt
    }

    /// The divisor cut out by x = infinity (the polar divisor of x).
    pub fn infinity_divisor(&self) -> Divisor {
        let mut d = Divisor::zero();
        match self.model {
            Model::Odd => d.add_place(Place::Infinity(0), 1),
            Model::Even => {
                if self.lc_sqrt.is_some() {
                    d.add_place(Place::Infinity(0), 1);
                    d.add_place(Place::Infinity(1), 1);
                } else {
                    d.add_place(Place::InfinitePair, 1);
                }
            }
        }
        d
    }

    /// Principal divisor (f) = N_f - P_f of a nonzero function.
    pub fn divisor_of(&self, f: &MeromorphicFunction) -> Result<Divisor, CurveError> {
        if f.is_zero() {
            return Err(CurveError::ZeroFunctionDivisor);
        }
        let (a, b, c) = f.clear_denominators();
        let numer = self.divisor_of_integral(&a, &b);
        let denom = self.divisor_of_integral(&c, &Poly::zero());
        let d = numer.sub(&denom);
        debug_assert_eq!(d.degree(), 0, "principal divisor must have degree 0");
        Ok(d)
    }

    /// Divisor of A(x) + B(x) y with polynomial A, B (not both zero).
    fn divisor_of_integral(&self, a: &Poly, b: &Poly) -> Divisor {
        assert!(!(a.is_zero() && b.is_zero()));
        let mut div = Divisor::zero();

        // Branch places. Refine each branch part until the orders of A and B
        // are uniform, then v = min(2 ord(A), 2 ord(B) + 1).
        let mut norm = &(a * a) - &(&(b * b) * &self.p);
        for part in &self.branch_parts {
            for (sub, ord_a) in profile_or_infinite(part, a) {
                for (sub2, ord_b) in profile_or_infinite(&sub, b) {
                    let v = match (ord_a, ord_b) {
                        (Some(pa), Some(pb)) => (2 * pa as i64).min(2 * pb as i64 + 1),
                        (Some(pa), None) => 2 * pa as i64,
                        (None, Some(pb)) => 2 * pb as i64 + 1,
                        (None, None) => unreachable!(),
                    };
                    if v > 0 {
                        div.add_place(Place::Branch(sub2.clone()), v);
                    }
                    // remove the branch contribution from the norm
                    let k = norm.ord_factor(&sub2);
                    debug_assert_eq!(k as i64, v, "norm order at branch part");
                    if k > 0 {
                        norm = norm.div_exact(&sub2.pow(k));
                    }
                }
            }
        }

        // Non-branch finite places from the remaining norm factors.
        if !norm.is_constant() {
            let radical = norm.div_exact(&norm.gcd(&norm.derivative())).monic();
            for (part, n) in order_profile(&radical, &norm) {
                if n == 0 {
                    continue;
                }
                for (sub, ord_a) in profile_or_infinite(&part, a) {
                    for (sub2, ord_b) in profile_or_infinite(&sub, b) {
                        self.push_nonbranch_zeros(&mut div, &sub2, n, ord_a, ord_b, a, b);
                    }
                }
            }
        }

        // Places above infinity.
        match self.model {
            Model::Odd => {
                let w = 2 * self.genus + 1;
                let v = match (a.is_zero(), b.is_zero()) {
                    (false, true) => -2 * a.degree(),
                    (true, false) => -2 * b.degree() - w,
                    (false, false) => (-2 * a.degree()).min(-2 * b.degree() - w),
                    (true, true) => unreachable!(),
                };
                div.add_place(Place::Infinity(0), v);
            }
            Model::Even => {
                let half = self.genus + 1;
                match &self.lc_sqrt {
                    None => {
                        let v = match (a.is_zero(), b.is_zero()) {
                            (false, true) => -a.degree(),
                            (true, false) => -b.degree() - half,
                            (false, false) => (-a.degree()).min(-b.degree() - half),
                            (true, true) => unreachable!(),
                        };
                        div.add_place(Place::InfinitePair, v);
                    }
                    Some(s) => {
                        for i in 0..2u8 {
                            let v = self.ord_at_split_infinity(a, b, s, i);
                            div.add_place(Place::Infinity(i), v);
                        }
                    }
                }
            }
        }
        div
    }

    /// Order of A + B y at the infinite place indexed by `i` of an even model
    /// whose leading coefficient is the square of `s`.
    fn ord_at_split_infinity(&self, a: &Poly, b: &Poly, s: &Q, i: u8) -> i64 {
        let half = self.genus + 1;
        if b.is_zero() {
            return -a.degree();
        }
        let norm_deg = {
            let n = &(a * a) - &(&(b * b) * &self.p);
            n.degree()
        };
        let m = a.degree().max(b.degree() + half).max(0);
        let k = (norm_deg + m + 4).max(4) as usize;
        // series S(t) = sqrt(t^(2g+2) p(1/t)), S(0) = s
        let p_rev = reverse_poly(&self.p, self.p.degree() as usize);
        let series = Series::from_poly(&p_rev, k);
        let sq = series.sqrt_with(s);
        let sign = if i == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
        // t^m (A(1/t) + sign * B(1/t) t^(-half) S(t))
        let mut combo = Series { c: vec![Q::from_integer(0.into()); k] };
        if !a.is_zero() {
            let rev_a = reverse_poly(a, a.degree() as usize);
            let shifted = shift_series(&Series::from_poly(&rev_a, k), (m - a.degree()) as usize, k);
            combo = combo.add(&shifted);
        }
        let rev_b = reverse_poly(b, b.degree() as usize);
        let bs = Series::from_poly(&rev_b, k).mul(&sq).scale(&sign);
        let shifted = shift_series(&bs, (m - half - b.degree()) as usize, k);
        combo = combo.add(&shifted);
        let e = combo
            .order()
            .expect("truncation bound must expose the leading term");
        e as i64 - m
    }

    /// Zeros of A + B y above the non-branch cluster `pi` where the norm has
    /// uniform order `n` and A, B have uniform orders `ord_a`, `ord_b`.
    fn push_nonbranch_zeros(
        &self,
        div: &mut Divisor,
        pi: &Poly,
        n: u32,
        ord_a: Option<u32>,
        ord_b: Option<u32>,
        a: &Poly,
        b: &Poly,
    ) {
        let mut cofactor = pi.clone();
        for (x0, _) in pi.rational_roots() {
            cofactor = cofactor.div_exact(&Poly::x_minus(&x0));
            let pval = self.p.eval(&x0);
            match rational_sqrt(&pval) {
                Some(s) if !s.is_zero() => {
                    // rational sheets: resolve by local power series
                    let (vp, vm) = self.sheet_orders_at(a, b, &x0, &s, n);
                    if vp > 0 {
                        div.add_place(Place::RationalSheet { x0: x0.clone(), sign: 1 }, vp as i64);
                    }
                    if vm > 0 {
                        div.add_place(Place::RationalSheet { x0: x0.clone(), sign: -1 }, vm as i64);
                    }
                }
                _ => {
                    debug_assert!(n.is_multiple_of(2), "conjugate sheets must balance");
                    div.add_place(Place::SheetPair(Poly::x_minus(&x0)), (n / 2) as i64);
                }
            }
        }
        if !cofactor.is_constant() {
            let c = match (ord_a, ord_b) {
                (Some(x), Some(y)) => x.min(y),
                (Some(x), None) => x,
                (None, Some(y)) => y,
                (None, None) => unreachable!(),
            };
            let c = c.min(n / 2);
            if c > 0 {
                div.add_place(Place::SheetPair(cofactor.clone()), c as i64);
            }
            let rest = n - 2 * c;
            if rest > 0 {
                div.add_place(Place::SheetSum(cofactor), rest as i64);
            }
        }
    }

    /// Orders of A + B y on the two rational sheets above x0, where
    /// p(x0) = s^2 with s > 0 and the norm vanishes to order `n`.
    fn sheet_orders_at(&self, a: &Poly, b: &Poly, x0: &Q, s: &Q, n: u32) -> (u32, u32) {
        let k = (n + 2) as usize;
        let p_loc = self.p.shift(x0);
        let sigma = Series::from_poly(&p_loc, k).sqrt_with(s);
        let a_loc = Series::from_poly(&a.shift(x0), k);
        let b_loc = Series::from_poly(&b.shift(x0), k);
        let plus = a_loc.add(&b_loc.mul(&sigma));
        let minus = a_loc.add(&b_loc.mul(&sigma).scale(&Q::from_integer((-1).into())));
        let vp = plus.order().map(|o| o as u32).unwrap_or(n);
        let vm = minus.order().map(|o| o as u32).unwrap_or(n);
        debug_assert_eq!(vp + vm, n, "sheet orders must sum to the norm order");
        (vp.min(n), vm.min(n))
    }

    /// Canonical divisor (dx / y).
    pub fn canonical_divisor(&self) -> Divisor {
        let mut dx = Divisor::zero();
        for part in &self.branch_parts {
            dx.add_place(Place::Branch(part.clone()), 1);
        }
        match self.model {
            Model::Odd => dx.add_place(Place::Infinity(0), -3),
            Model::Even => {
                if self.lc_sqrt.is_some() {
                    dx.add_place(Place::Infinity(0), -2);
                    dx.add_place(Place::Infinity(1), -2);
                } else {
                    dx.add_place(Place::InfinitePair, -2);
                }
            }
        }
        let y_div = self
            .divisor_of(&MeromorphicFunction::y())
            .expect("y is nonzero");
        let k = dx.sub(&y_div);
        debug_assert_eq!(k.degree(), 2 * self.genus - 2);
        k
    }

    /// Order of f at a place, read off the refined principal divisor. The
    /// place must use the curve's own cluster keys (rational roots split off).
    pub fn ord_at_place(&self, f: &MeromorphicFunction, place: &Place) -> Result<i64, CurveError> {
        Ok(self.divisor_of(f)?.mult(place))
    }
}

/// Like `order_profile` but treats the zero polynomial as order infinity.
fn profile_or_infinite(pi: &Poly, g: &Poly) -> Vec<(Poly, Option<u32>)> {
    if g.is_zero() {
        return vec![(pi.clone(), None)];
    }
    order_profile(pi, g)
        .into_iter()
        .map(|(part, k)| (part, Some(k)))
        .collect()
}

pub(crate) fn reverse_poly(p: &Poly, deg: usize) -> Poly {
    let mut c = vec![Q::from_integer(0.into()); deg + 1];
    for (i, v) in p.coeffs().iter().enumerate() {
        c[deg - i] = v.clone();
    }
    Poly::new(c)
}

fn shift_series(s: &Series, by: usize, trunc: usize) -> Series {
    let mut c = vec![Q::from_integer(0.into()); trunc];
    for (i, v) in s.c.iter().enumerate() {
        if i + by < trunc {
            c[i + by] = v.clone();
        }
    }
    Series { c }
}
