//! Structure functions `[N+, N-] = f(N0)` and the Casimir recipe
//! `C = N+ N- + g(N0 - 1) = N- N+ + g(N0)` with `g(x) - g(x-1) = f(x)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::reps::Representation;

/// Normalization used for every Casimir polynomial built here.
pub const CASIMIR_CONVENTION: &str = "g(-1)=0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct StructurePoly(pub Poly);

impl StructurePoly {
    pub fn new(p: Poly) -> Self {
        StructurePoly(p)
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    /// `f(x) = 2x`
    pub fn su2() -> Self {
        StructurePoly(Poly::from_ints(&[0, 2]))
    }

    /// `f(x) = -2x`
    pub fn su11() -> Self {
        StructurePoly(Poly::from_ints(&[0, -2]))
    }

    /// `f(x) = 3x^2 + (2l - 1)x + (K - l(l+1))` with `K = k(1-k)`.
    pub fn compact(k: &Rational, l: &Rational) -> Self {
        let kk = k * (Rational::one() - k);
        StructurePoly(Poly::new(vec![&kk - l * (l + Rational::one()), l * int(2) - Rational::one(), int(3)]))
    }

    /// `f(x) = -3x^2 - (2l + 1)x - (K - l(l-1))` with `K = k(1-k)`.
    pub fn noncompact(k: &Rational, l: &Rational) -> Self {
        let kk = k * (Rational::one() - k);
        StructurePoly(Poly::new(vec![-(&kk - l * (l - Rational::one())), -(l * int(2) + Rational::one()), int(-3)]))
    }
}

impl fmt::Display for StructurePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasimirPoly {
    pub g: Poly,
    pub convention_note: String,
}

impl CasimirPoly {
    pub fn eval(&self, x: &Rational) -> Rational {
        self.g.eval(x)
    }
}

/// Solves `g(x) - g(x-1) = f(x)` with `g(-1) = 0`.
///
/// `g` has degree `deg f + 1`, so it is pinned by its values at
/// `x = -1, 0, ..., deg f`, which follow from the recurrence
/// `g(n) = g(n-1) + f(n)`.
pub fn discrete_antiderivative(f: &StructurePoly) -> CasimirPoly {
    let g = match f.0.degree() {
        None => Poly::zero(),
        Some(d) => {
            let mut points = Vec::with_capacity(d + 2);
            let mut acc = Rational::zero();
            points.push((int(-1), acc.clone()));
            for n in 0..=d as i64 {
                acc += f.0.eval(&int(n));
                points.push((int(n), acc.clone()));
            }
            Poly::interpolate(&points)
        }
    };
    CasimirPoly { g, convention_note: CASIMIR_CONVENTION.to_string() }
}

/// `N+ N- + g(N0 - I)`.
pub fn casimir_from_generators(q0: &Matrix, qp: &Matrix, qm: &Matrix, g: &CasimirPoly) -> Result<Matrix> {
    let n = linalg::check_square(&[("Q0", q0), ("Q+", qp), ("Q-", qm)]).map_err(Error::DimensionMismatch)?;
    let shifted = q0 - Matrix::identity(n, n);
    Ok(qp * qm + linalg::poly_of_matrix(&g.g.to_f64_coeffs(), &shifted))
}

/// The equivalent form `N- N+ + g(N0)`; it differs from
/// [`casimir_from_generators`] only on truncation boundaries.
pub fn casimir_alt_from_generators(q0: &Matrix, qp: &Matrix, qm: &Matrix, g: &CasimirPoly) -> Result<Matrix> {
    linalg::check_square(&[("Q0", q0), ("Q+", qp), ("Q-", qm)]).map_err(Error::DimensionMismatch)?;
    Ok(qm * qp + linalg::poly_of_matrix(&g.g.to_f64_coeffs(), q0))
}

pub fn casimir_matrix(rep: &Representation, g: &CasimirPoly) -> Result<Matrix> {
    casimir_from_generators(&rep.q0, &rep.qp, &rep.qm, g)
}
