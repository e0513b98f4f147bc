//! Dense univariate polynomials with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Q = BigRational;

pub fn q_i64(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses "p", "p/q" or a plain decimal like "-1.25" into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() {
            return Some(Q::from_integer(i));
        }
        let f: BigInt = frac.parse().ok()?;
        if f.is_negative() {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Q::new(f, scale);
        let int_part = Q::from_integer(i);
        return Some(if neg { int_part - frac_part } else { int_part + frac_part });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

pub fn fmt_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Returns `Some(sqrt)` when the nonnegative rational is a perfect square.
pub fn rational_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    if &(&n * &n) == v.numer() && &(&d * &d) == v.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Polynomial in one variable, coefficients ascending by degree.
///
/// The zero polynomial is represented by an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", fmt_q(c))?,
                1 => write!(f, "{}*x", fmt_q(c))?,
                _ => write!(f, "{}*x^{}", fmt_q(c), i)?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    /// `x - a`.
    pub fn x_minus(a: &Q) -> Self {
        Poly::new(vec![-a.clone(), Q::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| q_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial gets -1 for bookkeeping convenience.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::curve::poly::q_to_f64(c);
        }
        acc
    }

    pub fn eval_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + q_to_f64(c);
        }
        acc
    }

    pub fn scale(&self, s: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lead = self.leading();
        self.scale(&lead.recip())
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q_i64(i as i64))
                .collect(),
        )
    }

    /// Euclidean division, returns (quotient, remainder).
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.degree() < d.degree() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree() as usize;
        let lead_inv = d.leading().recip();
        let mut quot = vec![Q::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() * &lead_inv;
            if !factor.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - dc * &factor;
                    rem[k + i] = v;
                }
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    /// Multiplicity of the (nonconstant) factor `pi` in `self`.
    pub fn ord_factor(&self, pi: &Poly) -> u32 {
        assert!(!pi.is_constant(), "factor must be nonconstant");
        assert!(!self.is_zero(), "order of zero polynomial is infinite");
        let mut g = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = g.divrem(pi);
            if !r.is_zero() {
                return k;
            }
            g = q;
            k += 1;
        }
    }

    /// Composition self(x + a), used for local expansions.
    pub fn shift(&self, a: &Q) -> Poly {
        let mut out = Poly::zero();
        let sh = Poly::new(vec![a.clone(), Q::one()]);
        for c in self.coeffs.iter().rev() {
            out = &(&out * &sh) + &Poly::constant(c.clone());
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Rational roots, each with its multiplicity.
    pub fn rational_roots(&self) -> Vec<(Q, u32)> {
        if self.is_zero() || self.is_constant() {
            return vec![];
        }
        // Clear denominators to an integer polynomial and use the rational
        // root bound: roots are divisors(constant)/divisors(leading).
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            let d = c.denom();
            let g = num_integer::gcd_big(&denom_lcm, d);
            denom_lcm = &denom_lcm / g * d;
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut low = 0;
        while ints[low].is_zero() {
            low += 1;
        }
        let mut roots = vec![];
        if low > 0 {
            roots.push((Q::zero(), self.ord_factor(&Poly::x())));
        }
        let a0 = ints[low].abs();
        let an = ints.last().unwrap().abs();
        for p in divisors(&a0) {
            for qd in divisors(&an) {
                for sign in [1i64, -1] {
                    let cand = Q::new(&p * BigInt::from(sign), qd.clone());
                    if !roots.iter().any(|(r, _)| r == &cand) && self.eval(&cand).is_zero() {
                        let m = self.ord_factor(&Poly::x_minus(&cand));
                        roots.push((cand, m));
                    }
                }
            }
        }
        roots
    }
}

mod num_integer {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};
    pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
        let mut a = a.abs();
        let mut b = b.abs();
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // Trial division is fine: test polynomials keep small coefficients.
    let mut out = vec![];
    if n.is_zero() {
        return out;
    }
    let n = n.abs();
    let mut d = BigInt::one();
    loop {
        let dsq = &d * &d;
        if dsq > n {
            break;
        }
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
        if d > BigInt::from(100_000u32) {
            // Bail out on huge constants; remaining roots would be huge too.
            break;
        }
    }
    out.sort();
    out
}

pub fn q_to_f64(v: &Q) -> f64 {
    let n = v.numer();
    let d = v.denom();
    // Exact for small values, graceful for big ones.
    let nf = big_to_f64(n);
    let df = big_to_f64(d);
    nf / df
}

fn big_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &out[i + j] + &(a * b);
                out[i + j] = v;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Splits squarefree `pi` into coprime parts on which `g` has a uniform
/// multiplicity: returns pairs `(part, ord)` with the parts pairwise coprime
/// and their product equal to `pi` (constant parts dropped).
pub fn order_profile(pi: &Poly, g: &Poly) -> Vec<(Poly, u32)> {
    assert!(!g.is_zero());
    let mut out = vec![];
    let mut remaining = pi.monic();
    let mut gg = g.clone();
    let mut k = 0u32;
    while !remaining.is_constant() {
        let h = remaining.gcd(&gg);
        let exact = remaining.div_exact(&h).monic();
        if !exact.is_constant() {
            out.push((exact, k));
        }
        if h.is_constant() {
            break;
        }
        gg = gg.div_exact(&h);
        remaining = h;
        k += 1;
        assert!(k < 10_000, "runaway order profile");
    }
    out
}

/// Refines a list of nonconstant polynomials into a pairwise-coprime basis
/// of squarefree polynomials (gcd-free basis of the radicals). Every input
/// is a product of powers of basis elements.
pub fn coprime_basis(polys: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = vec![];
    for p in polys {
        let radical = p.div_exact(&p.gcd(&p.derivative()));
        let mut queue = vec![radical.monic()];
        while let Some(mut cur) = queue.pop() {
            if cur.is_constant() {
                continue;
            }
            let mut i = 0;
            while i < basis.len() {
                let g = basis[i].gcd(&cur);
                if g.is_constant() {
                    i += 1;
                    continue;
                }
                if g == basis[i] {
                    // basis element divides cur fully at this level
                    while {
                        let (q, r) = cur.divrem(&g);
                        if r.is_zero() {
                            cur = q;
                            true
                        } else {
                            false
                        }
                    } {}
                    i += 1;
                    continue;
                }
                // split the basis element
                let b = basis.remove(i);
                let b1 = b.div_exact(&g).monic();
                queue.push(g.clone());
                if !b1.is_constant() {
                    basis.push(b1);
                }
                queue.push(cur.clone());
                cur = Poly::one();
                break;
            }
            if !cur.is_constant() {
                basis.push(cur.monic());
            }
        }
    }
    basis.sort();
    basis.dedup();
    basis
}

/// Truncated power series with rational coefficients (index = exponent).
#[derive(Clone, Debug)]
pub struct Series {
    pub c: Vec<Q>,
}

impl Series {
    pub fn from_poly(p: &Poly, trunc: usize) -> Series {
        let mut c: Vec<Q> = p.coeffs().to_vec();
        c.resize(trunc, Q::zero());
        c.truncate(trunc);
        Series { c }
    }

    pub fn trunc(&self) -> usize {
        self.c.len()
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.trunc().min(other.trunc());
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                let v = &out[i + j] + &(&self.c[i] * &other.c[j]);
                out[i + j] = v;
            }
        }
        Series { c: out }
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.trunc().min(other.trunc());
        Series {
            c: (0..n).map(|i| &self.c[i] + &other.c[i]).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Series {
        Series {
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Series {
        assert!(!self.c[0].is_zero(), "series not invertible");
        let n = self.trunc();
        let mut inv = vec![Q::zero(); n];
        inv[0] = self.c[0].recip();
        for k in 1..n {
            let mut acc = Q::zero();
            for j in 1..=k {
                acc += &self.c[j] * &inv[k - j];
            }
            inv[k] = -acc * self.c[0].recip();
        }
        Series { c: inv }
    }

    /// Square root with the branch fixed by `root0 * root0 == c[0]`.
    pub fn sqrt_with(&self, root0: &Q) -> Series {
        assert_eq!(&(root0 * root0), &self.c[0], "wrong initial square root");
        let n = self.trunc();
        let mut s = vec![Q::zero(); n];
        s[0] = root0.clone();
        let two_inv = Q::new(BigInt::one(), BigInt::from(2));
        for k in 1..n {
            // coefficient of t^k in s*s must equal c[k]
            let mut acc = Q::zero();
            for j in 1..k {
                acc += &s[j] * &s[k - j];
            }
            s[k] = (&self.c[k] - &acc) * &two_inv * s[0].recip();
        }
        Series { c: s }
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn order(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let a = Poly::from_i64(&[2, 0, -3, 1, 5]);
        let b = Poly::from_i64(&[1, 2, 1]);
        let (q, r) = a.divrem(&b);
        let back = &(&q * &b) + &r;
        assert_eq!(back, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = Poly::from_i64(&[-1, 1]); // x - 1
        let a = &f * &Poly::from_i64(&[1, 1]);
        let b = &f * &Poly::from_i64(&[2, 0, 1]);
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn squarefree_detection() {
        assert!(Poly::from_i64(&[-1, 0, 0, 0, 0, 1]).is_squarefree()); // x^5 - 1
        let sq = Poly::from_i64(&[-1, 1]).pow(2);
        assert!(!sq.is_squarefree());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x-1)^2 (2x+3)
        let p = &Poly::from_i64(&[-1, 1]).pow(2) * &Poly::from_i64(&[3, 2]);
        let mut roots = p.rational_roots();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(
            roots,
            vec![(Q::new(BigInt::from(-3), BigInt::from(2)), 1), (q_i64(1), 2)]
        );
    }

    #[test]
    fn order_profile_splits_by_multiplicity() {
        // pi = (x-1)(x-2)(x-3), g = (x-1)(x-2)^2
        let f1 = Poly::from_i64(&[-1, 1]);
        let f2 = Poly::from_i64(&[-2, 1]);
        let f3 = Poly::from_i64(&[-3, 1]);
        let pi = &(&f1 * &f2) * &f3;
        let g = &f1 * &f2.pow(2);
        let mut prof = order_profile(&pi, &g);
        prof.sort_by_key(|(_, k)| *k);
        assert_eq!(prof, vec![(f3.monic(), 0), (f1.monic(), 1), (f2.monic(), 2)]);
    }

    #[test]
    fn coprime_basis_refines() {
        let f1 = Poly::from_i64(&[-1, 1]);
        let f2 = Poly::from_i64(&[-2, 1]);
        let f3 = Poly::from_i64(&[-3, 1]);
        let a = &f1 * &f2;
        let b = &f2 * &f3;
        let basis = coprime_basis(&[a, b]);
        assert_eq!(basis.len(), 3);
        for x in &basis {
            for y in &basis {
                if x != y {
                    assert!(x.gcd(y).is_constant());
                }
            }
        }
    }

    #[test]
    fn series_sqrt_squares_back() {
        // sqrt(1 + t) to order 6
        let p = Poly::from_i64(&[1, 1]);
        let s = Series::from_poly(&p, 6).sqrt_with(&Q::one());
        let sq = s.mul(&s);
        assert_eq!(sq.c[0], q_i64(1));
        assert_eq!(sq.c[1], q_i64(1));
        for k in 2..6 {
            assert!(sq.c[k].is_zero());
        }
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("3/4").unwrap(), Q::new(BigInt::from(3), BigInt::from(4)));
        assert_eq!(parse_q("-2").unwrap(), q_i64(-2));
        assert_eq!(parse_q("0.25").unwrap(), Q::new(BigInt::from(1), BigInt::from(4)));
        assert_eq!(parse_q("-1.5").unwrap(), Q::new(BigInt::from(-3), BigInt::from(2)));
    }
}
