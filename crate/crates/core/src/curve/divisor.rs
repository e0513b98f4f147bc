//! Divisors: finite formal integer combinations of places.

use super::place::Place;
use super::poly::{coprime_basis, Poly};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Default, PartialEq, Eq)]
pub struct Divisor {
    entries: BTreeMap<Place, i64>,
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, m)| format!("{}*({})", m, p.describe()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn single(place: Place, mult: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_place(place, mult);
        d
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.entries.iter().map(|(p, &m)| (p, m))
    }

    pub fn mult(&self, place: &Place) -> i64 {
        self.entries.get(place).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(p, m)| p.degree() * m).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|&m| m >= 0)
    }

    pub fn add_place(&mut self, place: Place, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.entries.entry(place).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.entries.retain(|_, m| *m != 0);
        }
    }

    pub fn negate(&self) -> Divisor {
        Divisor {
            entries: self.entries.iter().map(|(p, m)| (p.clone(), -m)).collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero();
        }
        Divisor {
            entries: self.entries.iter().map(|(p, m)| (p.clone(), m * k)).collect(),
        }
    }

    /// Sum with cluster refinement: polynomial-keyed places of the two
    /// divisors are first split over a common coprime basis so that equal
    /// clusters actually merge.
    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut polys: Vec<Poly> = vec![];
        for d in [self, other] {
            for (p, _) in d.entries() {
                if let Some(pi) = p.poly_key() {
                    polys.push(pi.clone());
                }
            }
        }
        let basis = coprime_basis(&polys);
        let mut out = Divisor::zero();
        for d in [self, other] {
            for (p, m) in d.entries() {
                match p.poly_key() {
                    None => out.add_place(p.clone(), m),
                    Some(pi) => {
                        for b in &basis {
                            let k = pi.ord_factor(b);
                            if k == 0 {
                                continue;
                            }
                            debug_assert_eq!(k, 1, "cluster keys are squarefree");
                            let place = match p {
                                Place::Branch(_) => Place::Branch(b.clone()),
                                Place::SheetPair(_) => Place::SheetPair(b.clone()),
                                Place::SheetSum(_) => Place::SheetSum(b.clone()),
                                _ => unreachable!(),
                            };
                            out.add_place(place, m);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.negate())
    }

    /// Re-expresses poly-keyed entries over the given coprime basis, leaving
    /// entries whose key is coprime to the whole basis untouched.
    pub fn refine_with(&self, basis: &[Poly]) -> Divisor {
        let mut out = Divisor::zero();
        for (p, m) in self.entries() {
            match p.poly_key() {
                None => out.add_place(p.clone(), m),
                Some(pi) => {
                    let mut rest = pi.clone();
                    for b in basis {
                        if rest.ord_factor(b) > 0 {
                            rest = rest.div_exact(b);
                            let place = match p {
                                Place::Branch(_) => Place::Branch(b.clone()),
                                Place::SheetPair(_) => Place::SheetPair(b.clone()),
                                Place::SheetSum(_) => Place::SheetSum(b.clone()),
                                _ => unreachable!(),
                            };
                            out.add_place(place, m);
                        }
                    }
                    if !rest.is_constant() {
                        let place = match p {
                            Place::Branch(_) => Place::Branch(rest.monic()),
                            Place::SheetPair(_) => Place::SheetPair(rest.monic()),
                            Place::SheetSum(_) => Place::SheetSum(rest.monic()),
                            _ => unreachable!(),
                        };
                        out.add_place(place, m);
                    }
                }
            }
        }
        out
    }

    /// Positive part (the null/zero divisor of a function).
    pub fn positive_part(&self) -> Divisor {
        Divisor {
            entries: self
                .entries
                .iter()
                .filter(|(_, &m)| m > 0)
                .map(|(p, &m)| (p.clone(), m))
                .collect(),
        }
    }

    /// Negated negative part (the polar divisor of a function).
    pub fn negative_part(&self) -> Divisor {
        Divisor {
            entries: self
                .entries
                .iter()
                .filter(|(_, &m)| m < 0)
                .map(|(p, &m)| (p.clone(), -m))
                .collect(),
        }
    }

    pub fn contains_sheet_sum(&self) -> bool {
        self.entries.keys().any(|p| matches!(p, Place::SheetSum(_)))
    }
}
