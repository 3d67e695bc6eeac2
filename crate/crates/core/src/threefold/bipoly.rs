//! Polynomials in two variables as polynomials in an outer variable with
//! coefficients in Q[inner].

use crate::arith::exact::sylvester_resultant;
use crate::arith::poly::Poly;
use crate::arith::rational::Rational;

/// `sum_i rows[i] * outer^i`, with a fixed formal outer degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BiPoly {
    pub rows: Vec<Poly>,
}

impl BiPoly {
    pub fn new(rows: Vec<Poly>) -> Self {
        BiPoly { rows }
    }

    pub fn outer_derivative(&self) -> BiPoly {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, r)| r.scale(&Rational::from_integer((i as i64).into())))
            .collect();
        BiPoly { rows }
    }

    pub fn inner_derivative(&self) -> BiPoly {
        BiPoly { rows: self.rows.iter().map(Poly::derivative).collect() }
    }

    /// The same polynomial with the roles of the variables exchanged.
    pub fn transpose(&self) -> BiPoly {
        let inner = self.rows.iter().filter_map(Poly::degree).max().map_or(1, |d| d + 1);
        let rows = (0..inner)
            .map(|j| Poly::new(self.rows.iter().map(|r| r.coeff(j)).collect()))
            .collect();
        BiPoly { rows }
    }

    /// Resultant with respect to the outer variable, a polynomial in the
    /// inner one. Formal degrees are the row counts.
    pub fn resultant_outer(&self, other: &BiPoly) -> Poly {
        if self.rows.is_empty() || other.rows.is_empty() {
            return Poly::zero();
        }
        sylvester_resultant(&self.rows, &other.rows)
    }
}
