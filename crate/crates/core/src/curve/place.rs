//! Closed points of a hyperelliptic curve over the rationals.
//!
//! Places are kept exact: a non-rational cluster of conjugate points is one
//! entry keyed by a monic squarefree polynomial. Individual sheets above a
//! rational x-value are only split when the sheet is itself rational, i.e.
//! when p(x0) is a positive rational square.

use super::poly::{fmt_q, Poly, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    /// Point above x = infinity. Odd models have index 0 only.
    Infinity(u8),
    /// Both points above x = infinity of an even model whose leading
    /// coefficient is not a rational square; degree 2.
    InfinitePair,
    /// Ramification points above the roots of the monic squarefree `pi | p`.
    Branch(Poly),
    /// A single rational point (x0, sign * sqrt(p(x0))), requires p(x0) to be
    /// a positive rational square.
    RationalSheet { x0: Q, sign: i8 },
    /// Both sheets above every root of `pi` (coprime to p), one unit of
    /// multiplicity on each sheet; degree 2 deg(pi) per unit.
    SheetPair(Poly),
    /// Total multiplicity spread over the two sheets above roots of `pi` with
    /// an unresolved split; degree deg(pi) per unit. Valid for degree and
    /// effectivity bookkeeping, rejected by the Riemann-Roch space solver.
    SheetSum(Poly),
}

impl Place {
    /// Number of geometric points represented per unit of multiplicity.
    pub fn degree(&self) -> i64 {
        match self {
            Place::Infinity(_) => 1,
            Place::InfinitePair => 2,
            Place::Branch(pi) => pi.degree(),
            Place::RationalSheet { .. } => 1,
            Place::SheetPair(pi) => 2 * pi.degree(),
            Place::SheetSum(pi) => pi.degree(),
        }
    }

    pub fn poly_key(&self) -> Option<&Poly> {
        match self {
            Place::Branch(pi) | Place::SheetPair(pi) | Place::SheetSum(pi) => Some(pi),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Place::Infinity(i) => format!("inf{i}"),
            Place::InfinitePair => "inf-pair".into(),
            Place::Branch(pi) => {
                if pi.degree() == 1 {
                    format!("branch x={}", fmt_q(&(-pi.coeff(0))))
                } else {
                    format!("branch cluster {:?}", pi)
                }
            }
            Place::RationalSheet { x0, sign } => {
                format!("x={} sheet {}", fmt_q(x0), if *sign > 0 { "+" } else { "-" })
            }
            Place::SheetPair(pi) => {
                if pi.degree() == 1 {
                    format!("pair x={}", fmt_q(&(-pi.coeff(0))))
                } else {
                    format!("pair cluster {:?}", pi)
                }
            }
            Place::SheetSum(pi) => format!("sheet-sum over {:?}", pi),
        }
    }
}
