//! Pencils spanned by {1, f} and randomized pencil-uniqueness probes.

use super::divisor::Divisor;
use super::function::MeromorphicFunction;
use super::place::Place;
use super::poly::{rational_sqrt, Poly, Q};
use super::{CurveError, HyperellipticCurve};
use num_traits::Zero;
use rand::Rng;

/// A two-dimensional linear series spanned by two functions inside H^0(D).
#[derive(Clone, Debug)]
pub struct Pencil {
    pub degree: i64,
    pub span: (MeromorphicFunction, MeromorphicFunction),
    pub divisor: Divisor,
    pub base_locus: Divisor,
}

impl Pencil {
    pub fn is_base_point_free(&self) -> bool {
        self.base_locus.is_zero()
    }
}

impl HyperellipticCurve {
    /// The pencil spanned by {1, f} inside H^0(P_f).
    pub fn pencil_of(&self, f: &MeromorphicFunction) -> Result<Pencil, CurveError> {
        if f.is_zero() || f.is_constant() {
            return Err(CurveError::ConstantPencil);
        }
        let div = self.divisor_of(f)?;
        let polar = div.negative_part();
        // base locus of span{1, f} inside H^0(P_f):
        // min over sections of (ord + mult in P_f), place by place.
        let mut base = Divisor::zero();
        let combined = polar.add(&div.positive_part());
        for (place, _) in combined.entries() {
            let m_d = polar.mult(place);
            let v_f = div.mult(place);
            let m = m_d.min(m_d + v_f);
            if m != 0 {
                base.add_place(place.clone(), m);
            }
        }
        Ok(Pencil {
            degree: polar.degree(),
            span: (MeromorphicFunction::one(), f.clone()),
            divisor: polar,
            base_locus: base,
        })
    }

    /// The hyperelliptic pencil: the degree-2 class cut out by x.
    pub fn hyperelliptic_pencil_divisor(&self) -> Divisor {
        self.divisor_of(&MeromorphicFunction::x())
            .expect("x is nonzero")
            .negative_part()
    }

    /// h^0 of twice the hyperelliptic pencil class.
    pub fn h0_of_doubled_pencil(&self) -> Result<i64, CurveError> {
        let d = self.hyperelliptic_pencil_divisor();
        self.h0(&d.scaled(2))
    }

    /// Samples random effective divisors of degree `d` and reports which of
    /// them move in a pencil (h^0 >= 2), and whether all such divisors are
    /// linearly equivalent to the hyperelliptic class. Randomized evidence
    /// only, not a proof.
    pub fn unique_pencil_probe(
        &self,
        d: i64,
        samples: usize,
        rng: &mut impl Rng,
    ) -> Result<PencilProbeReport, CurveError> {
        assert!(d >= 1);
        let g12 = self.hyperelliptic_pencil_divisor();
        let reference = g12.scaled(d / 2);
        let mut hits = 0usize;
        let mut equivalent = 0usize;
        let mut examined = 0usize;
        for _ in 0..samples {
            let div = self.random_effective_divisor(d, rng);
            examined += 1;
            let h = self.h0(&div)?;
            if h >= 2 {
                hits += 1;
                // compare against the hyperelliptic class when degrees allow
                if d % 2 == 0 && self.linearly_equivalent(&div, &reference)? {
                    equivalent += 1;
                }
            }
        }
        Ok(PencilProbeReport {
            degree: d,
            samples: examined,
            moving_divisors: hits,
            equivalent_to_hyperelliptic: equivalent,
            all_moving_equivalent: hits == equivalent,
        })
    }

    /// Random effective divisor of exact degree `d`, supported on rational
    /// sheets, rational branch points, pairs and infinity to keep arithmetic
    /// exact.
    pub fn random_effective_divisor(&self, d: i64, rng: &mut impl Rng) -> Divisor {
        let mut div = Divisor::zero();
        let mut remaining = d;
        let rational_branches: Vec<Q> = self
            .branch_parts()
            .iter()
            .filter(|pi| pi.degree() == 1)
            .map(|pi| -pi.coeff(0))
            .collect();
        let mut guard = 0;
        while remaining > 0 {
            guard += 1;
            if guard > 400 {
                // finish deterministically: odd remainder takes a degree-1
                // place first, the rest goes to infinity
                let unit = self.infinity_divisor().degree();
                if remaining % unit != 0 {
                    let x0 = rational_branches
                        .first()
                        .expect("no degree-1 place available to exhaust an odd remainder");
                    div.add_place(Place::Branch(Poly::x_minus(x0)), 1);
                    remaining -= 1;
                }
                div = div.add(&self.infinity_divisor_scaled_to(remaining));
                break;
            }
            match rng.gen_range(0..4u8) {
                0 => {
                    let inf = self.infinity_divisor();
                    let deg = inf.degree();
                    if deg <= remaining {
                        div = div.add(&self.infinity_divisor_scaled_to(deg));
                        remaining -= deg;
                    }
                }
                1 if !rational_branches.is_empty() => {
                    let x0 = &rational_branches[rng.gen_range(0..rational_branches.len())];
                    div.add_place(Place::Branch(Poly::x_minus(x0)), 1);
                    remaining -= 1;
                }
                2 => {
                    // random rational x0; use a sheet when rational, else a pair
                    let x0 = Q::new(
                        rng.gen_range(-12i64..=12).into(),
                        rng.gen_range(1i64..=3).into(),
                    );
                    let val = self.p().eval(&x0);
                    if val.is_zero() {
                        continue;
                    }
                    match rational_sqrt(&val) {
                        Some(_) => {
                            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                            div.add_place(Place::RationalSheet { x0, sign }, 1);
                            remaining -= 1;
                        }
                        None => {
                            if remaining >= 2 {
                                div.add_place(Place::SheetPair(Poly::x_minus(&x0)), 1);
                                remaining -= 2;
                            }
                        }
                    }
                }
                _ => {
                    // higher multiplicity at infinity
                    let inf_deg = self.infinity_divisor().degree();
                    let max_k = remaining / inf_deg;
                    if max_k >= 1 {
                        let k = rng.gen_range(1..=max_k);
                        div = div.add(&self.infinity_divisor_scaled_to(k * inf_deg));
                        remaining -= k * inf_deg;
                    }
                }
            }
        }
        debug_assert!(div.is_effective());
        debug_assert_eq!(div.degree(), d);
        div
    }

    fn infinity_divisor_scaled_to(&self, total_degree: i64) -> Divisor {
        let inf = self.infinity_divisor();
        let unit = inf.degree();
        debug_assert_eq!(total_degree % unit, 0);
        inf.scaled(total_degree / unit)
    }
}

#[derive(Clone, Debug)]
pub struct PencilProbeReport {
    pub degree: i64,
    pub samples: usize,
    pub moving_divisors: usize,
    pub equivalent_to_hyperelliptic: usize,
    pub all_moving_equivalent: bool,
}
