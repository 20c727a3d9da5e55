//! Single-variable differential realizations on monomial bases, all in exact
//! rational arithmetic.
//!
//! Basis functions are `z^n / sqrt(N_n)`. A generator maps `z^n` to
//! `sum_m c_m z^m`, so its matrix element is `c_m sqrt(N_m / N_n)`; tables
//! keep the sign of `c_m` and the exact square `c_m^2 N_m / N_n`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polyalg::StructurePoly;
use crate::rational::{self, int, Rational};
use crate::reps::{ElementTable, Generator, RepLabel, SignedSquare, GENERATORS};

pub const MAX_ORDER: usize = 3;

/// `sum_i p_i(z) (d/dz)^{order_i}`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    terms: Vec<(usize, Poly)>,
}

impl DiffOp {
    pub fn new(terms: Vec<(usize, Poly)>) -> Result<Self> {
        if let Some((order, _)) = terms.iter().find(|(o, _)| *o > MAX_ORDER) {
            return Err(Error::InvalidParameter(format!("derivative order {order} exceeds {MAX_ORDER}")));
        }
        let mut merged: Vec<(usize, Poly)> = Vec::new();
        for (order, p) in terms {
            match merged.iter_mut().find(|(o, _)| *o == order) {
                Some((_, q)) => *q = &*q + &p,
                None => merged.push((order, p)),
            }
        }
        merged.retain(|(_, p)| !p.is_zero());
        merged.sort_by_key(|(o, _)| std::cmp::Reverse(*o));
        Ok(DiffOp { terms: merged })
    }

    pub fn terms(&self) -> &[(usize, Poly)] {
        &self.terms
    }

    pub fn order(&self) -> usize {
        self.terms.iter().map(|(o, _)| *o).max().unwrap_or(0)
    }

    /// Coefficient polynomial of `(d/dz)^order`.
    pub fn coefficient(&self, order: usize) -> Poly {
        self.terms.iter().find(|(o, _)| *o == order).map(|(_, p)| p.clone()).unwrap_or_default()
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (order, coeff) in &self.terms {
            let mut d = p.clone();
            for _ in 0..*order {
                d = d.derivative();
            }
            out = &out + &(coeff * &d);
        }
        out
    }

    /// `p(op)` applied to `f`, coefficients lowest degree first.
    pub fn apply_polynomial_of(&self, coeffs: &[Rational], f: &Poly) -> Poly {
        coeffs.iter().rev().fold(Poly::zero(), |acc, c| &self.apply(&acc) + &f.scale(c))
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(order, p)| {
                let coeff = p.to_string().replace('x', "z");
                let d = match order {
                    0 => String::new(),
                    1 => "d/dz".to_string(),
                    o => format!("d^{o}/dz^{o}"),
                };
                match (order, p.coeffs().len()) {
                    (0, _) => coeff,
                    (_, 1) if p.coeff(0).is_one() => d,
                    (_, 1) if p.coeff(0) == -Rational::one() => format!("-{d}"),
                    _ if p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 => {
                        format!("{coeff} {d}")
                    }
                    _ => format!("({coeff}) {d}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRealization {
    pub q0: DiffOp,
    pub qp: DiffOp,
    pub qm: DiffOp,
}

impl DiffRealization {
    pub fn get(&self, g: Generator) -> &DiffOp {
        match g {
            Generator::Q0 => &self.q0,
            Generator::Qp => &self.qp,
            Generator::Qm => &self.qm,
        }
    }
}

/// Monomials `z^n / sqrt(N_n)`, `n = 0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub label: RepLabel,
    pub squared_norms: Vec<Rational>,
    /// Leading block of an infinite basis; images past the top are dropped.
    pub truncated: bool,
}

impl MonomialBasis {
    pub fn size(&self) -> usize {
        self.squared_norms.len()
    }
}

fn fact(n: usize) -> Rational {
    rational::factorial_q(n)
}

fn z_poly(coeffs: Vec<Rational>) -> Poly {
    Poly::new(coeffs)
}

fn op(terms: Vec<(usize, Vec<Rational>)>) -> DiffOp {
    DiffOp::new(terms.into_iter().map(|(o, c)| (o, z_poly(c))).collect()).expect("orders <= 3")
}

/// Builds the generator triple and its monomial basis. `size` is the
/// truncation for su(1,1) and noncompact labels and is ignored otherwise.
pub fn build_realization(label: &RepLabel, size: Option<usize>) -> Result<(DiffRealization, MonomialBasis)> {
    let zero = Rational::zero;
    let one = Rational::one;
    let need_size = || {
        size.filter(|&s| s > 0)
            .ok_or_else(|| Error::InvalidParameter("an infinite basis needs a positive truncation size".into()))
    };
    let (real, norms, truncated) = match label {
        RepLabel::Su2 { j } => {
            let two_j = rational::to_usize(&(j * int(2))).ok_or_else(|| {
                Error::InvalidLabel(format!("j = {} is not a non-negative half-integer", rational::display(j)))
            })?;
            let real = DiffRealization {
                q0: op(vec![(1, vec![zero(), one()]), (0, vec![-j.clone()])]),
                qp: op(vec![(1, vec![zero(), zero(), -one()]), (0, vec![zero(), j * int(2)])]),
                qm: op(vec![(1, vec![one()])]),
            };
            let norms = (0..=two_j).map(|n| fact(n) * fact(two_j - n)).collect();
            (real, norms, false)
        }
        RepLabel::Su11 { k } => {
            let s = rational::to_usize(&(k * int(2) - int(1)))
                .filter(|_| rational::is_multiple_of_inverse(k, 2))
                .ok_or_else(|| Error::InvalidLabel(format!("k = {} is not in 1/2, 1, ...", rational::display(k))))?;
            let size = need_size()?;
            let real = DiffRealization {
                q0: op(vec![(1, vec![zero(), one()]), (0, vec![k.clone()])]),
                qp: op(vec![(0, vec![zero(), one()])]),
                qm: op(vec![(2, vec![zero(), one()]), (1, vec![k * int(2)])]),
            };
            let norms = (0..size).map(|n| fact(n) * fact(n + s)).collect();
            (real, norms, true)
        }
        RepLabel::Quadratic(lab) => {
            let (k, l) = (lab.k(), lab.l());
            let s = lab.two_k_minus_one();
            let m = lab.span();
            let q0 = op(vec![(1, vec![zero(), one()]), (0, vec![k - l])]);
            match lab.sector() {
                crate::reps::Sector::Compact => {
                    let real = DiffRealization {
                        q0,
                        qp: op(vec![(1, vec![zero(), zero(), -one()]), (0, vec![zero(), l * int(2) - k])]),
                        qm: op(vec![(2, vec![zero(), one()]), (1, vec![k * int(2)])]),
                    };
                    let norms = (0..=m).map(|n| fact(n) * fact(n + s) * fact(m - n)).collect();
                    (real, norms, false)
                }
                crate::reps::Sector::Noncompact => {
                    let size = need_size()?;
                    let real = DiffRealization {
                        q0,
                        qp: op(vec![(0, vec![zero(), one()])]),
                        qm: op(vec![
                            (3, vec![zero(), zero(), one()]),
                            (2, vec![zero(), k * int(3) - l * int(2) + int(2)]),
                            (1, vec![k * k * int(2) - k * l * int(4) + k * int(2)]),
                        ]),
                    };
                    let norms = (0..size).map(|n| fact(n) * fact(n + s) * fact(n + m)).collect();
                    (real, norms, true)
                }
            }
        }
    };
    Ok((real, MonomialBasis { label: label.clone(), squared_norms: norms, truncated }))
}

/// Exact element tables for `Q0`, `Q+`, `Q-`, in that order.
pub fn matrix_elements(ops: &DiffRealization, basis: &MonomialBasis) -> Result<Vec<ElementTable>> {
    let size = basis.size();
    GENERATORS
        .iter()
        .map(|&g| {
            let mut table = ElementTable::zeros(g, size);
            for n in 0..size {
                let image = ops.get(g).apply(&Poly::monomial(Rational::one(), n));
                for (m, c) in image.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if m >= size {
                        if basis.truncated {
                            continue;
                        }
                        return Err(Error::OutsideSpan { index: n, power: m });
                    }
                    table.entries[m][n] = SignedSquare {
                        sign: rational::signum(c),
                        square: c * c * &basis.squared_norms[m] / &basis.squared_norms[n],
                    };
                }
            }
            Ok(table)
        })
        .collect()
}

/// Basis indices `n` where `[Q+, Q-] z^n != f(Q0) z^n`. Empty means the
/// realization satisfies the algebra exactly on the basis.
pub fn commutator_mismatches(ops: &DiffRealization, basis: &MonomialBasis, f: &StructurePoly) -> Vec<usize> {
    (0..basis.size())
        .filter(|&n| {
            let zn = Poly::monomial(Rational::one(), n);
            let lhs = &ops.qp.apply(&ops.qm.apply(&zn)) - &ops.qm.apply(&ops.qp.apply(&zn));
            let rhs = ops.q0.apply_polynomial_of(f.poly().coeffs(), &zn);
            lhs != rhs
        })
        .collect()
}
