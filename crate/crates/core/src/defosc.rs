//! Compact representations as deformed oscillators `[A, A+] = F(N)`, and the
//! two-dimensional instance that reproduces the canonical fermion.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, ExactMatrix, Matrix};
use crate::poly::Poly;
use crate::rational::{self, Rational};
use crate::reps::{self, AlgebraLabel, RepLabel, Representation};

#[derive(Clone, Debug)]
pub struct DeformedOscillator {
    pub label: AlgebraLabel,
    pub n: Matrix,
    pub a: Matrix,
    pub adag: Matrix,
    /// `F(N) = 1 - (3/s^2) N^2 - ((2l-1)/s^2) N`
    pub f: Poly,
    /// `s^2 = l(l+1) - k(1-k)`
    pub scale_sq: Rational,
    pub scale: f64,
    /// `Q0` eigenvalues, exact.
    n_exact: Vec<Rational>,
    /// `(A+)_{n+1,n}^2`, exact.
    adag_squared: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeformResiduals {
    pub n_a: f64,
    pub n_adag: f64,
    pub a_adag_minus_f: f64,
    pub lowest_annihilated: bool,
}

impl DeformResiduals {
    pub fn max(&self) -> f64 {
        self.n_a.max(self.n_adag).max(self.a_adag_minus_f)
    }
}

pub fn deformation_poly(label: &AlgebraLabel) -> Result<(Poly, Rational)> {
    let s2 = label.l() * (label.l() + Rational::one()) - label.k_value();
    if !s2.is_positive() {
        return Err(Error::NonPositiveScale(format!("l(l+1) - k(1-k) = {} must be positive", rational::display(&s2))));
    }
    let two_l_minus_one = rational::int(2) * label.l() - Rational::one();
    let f = Poly::new(vec![Rational::one(), -(two_l_minus_one / &s2), -(rational::int(3) / &s2)]);
    Ok((f, s2))
}

pub fn deform(rep: &Representation) -> Result<DeformedOscillator> {
    let label = match &rep.label {
        RepLabel::Quadratic(l) if l.sector() == reps::Sector::Compact => l.clone(),
        other => {
            return Err(Error::InvalidLabel(format!("deform needs a compact representation, got {:?}", other.kind())))
        }
    };
    let (f, s2) = deformation_poly(&label)?;
    let scale = rational::to_f64(&s2).sqrt();
    Ok(DeformedOscillator {
        n: rep.q0.clone(),
        a: &rep.qm / scale,
        adag: &rep.qp / scale,
        n_exact: rep.q0_exact().to_vec(),
        adag_squared: rep.qp_squared().iter().map(|q| q / &s2).collect(),
        label,
        f,
        scale_sq: s2,
        scale,
    })
}

pub fn deform_label(label: &AlgebraLabel) -> Result<DeformedOscillator> {
    deform(&reps::compact_rep(label)?)
}

impl DeformedOscillator {
    pub fn dim(&self) -> usize {
        self.n.nrows()
    }

    pub fn residuals(&self) -> DeformResiduals {
        let f_of_n = linalg::poly_of_matrix(&self.f.to_f64_coeffs(), &self.n);
        let lowest = (0..self.dim()).min_by(|&i, &j| self.n_exact[i].cmp(&self.n_exact[j])).unwrap_or(0);
        DeformResiduals {
            n_a: linalg::max_abs(&(linalg::commutator(&self.n, &self.a) + &self.a)),
            n_adag: linalg::max_abs(&(linalg::commutator(&self.n, &self.adag) - &self.adag)),
            a_adag_minus_f: linalg::max_abs(&(linalg::commutator(&self.a, &self.adag) - f_of_n)),
            lowest_annihilated: self.a.column(lowest).iter().all(|v| *v == 0.0),
        }
    }

    /// `[A, A+]` built from the exact squared ladder elements; diagonal.
    pub fn exact_commutator_diagonal(&self) -> Vec<Rational> {
        let d = self.dim();
        (0..d)
            .map(|n| {
                // (A A+)_{nn} = (A+)_{n+1,n}^2, (A+ A)_{nn} = (A+)_{n,n-1}^2
                let up = if n + 1 < d { self.adag_squared[n].clone() } else { Rational::zero() };
                let down = if n > 0 { self.adag_squared[n - 1].clone() } else { Rational::zero() };
                up - down
            })
            .collect()
    }

    /// `[A, A+] = F(N)` checked in exact arithmetic.
    pub fn exact_check(&self) -> bool {
        self.exact_commutator_diagonal().iter().zip(&self.n_exact).all(|(c, n)| *c == self.f.eval(n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FermionReport {
    /// `[f, f+] = diag(1, -1)`
    pub commutator_shape: bool,
    /// `[f, f+] = 1 - N/2 - 3N^2/2`
    pub polynomial_identity: bool,
    pub nilpotent: bool,
    /// `A+` of the `(k, l) = (1, 1)` oscillator equals `f+` exactly.
    pub matches_deform: bool,
    /// Its `F` equals `1 - N/2 - 3N^2/2` coefficientwise.
    pub f_poly_matches: bool,
}

impl FermionReport {
    pub fn passed(&self) -> bool {
        self.commutator_shape
            && self.polynomial_identity
            && self.nilpotent
            && self.matches_deform
            && self.f_poly_matches
    }
}

/// The fermion pattern `F(N) = 1 - N/2 - 3N^2/2`.
pub fn fermion_poly() -> Poly {
    Poly::new(vec![Rational::one(), rational::frac(-1, 2), rational::frac(-3, 2)])
}

pub fn fermion_check() -> Result<FermionReport> {
    let q = |v: i64| rational::int(v);
    let f = ExactMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]]);
    let fdag = ExactMatrix::from_rows(vec![vec![q(0), q(0)], vec![q(1), q(0)]]);
    let n = [q(0), q(1)];
    let comm = f.commutator(&fdag);
    let target = ExactMatrix::diagonal(&[q(1), q(-1)]);
    let poly = fermion_poly();
    let rhs = ExactMatrix::diagonal(&n.iter().map(|v| poly.eval(v)).collect::<Vec<_>>());

    let label = AlgebraLabel::compact(q(1), q(1))?;
    let osc = deform_label(&label)?;
    let matches_deform = osc.dim() == 2
        && osc.n_exact == n
        && osc.adag_squared.len() == 1
        && osc.adag_squared[0] == Rational::one()
        && osc.exact_check();

    Ok(FermionReport {
        commutator_shape: comm.sub(&target).is_zero(),
        polynomial_identity: comm.sub(&rhs).is_zero(),
        nilpotent: f.mul(&f).is_zero(),
        matches_deform,
        f_poly_matches: osc.f == poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(k: &str, l: &str) -> AlgebraLabel {
        AlgebraLabel::compact(rational::parse(k).unwrap(), rational::parse(l).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let o = deform_label(&cp("1", "1")).unwrap();
        assert_eq!(o.scale_sq, rational::int(2));
        assert_eq!(o.f, fermion_poly());
        let o = deform_label(&cp("1/2", "1/4")).unwrap();
        assert_eq!(o.scale_sq, rational::frac(1, 16));
        assert_eq!(o.f.eval(&Rational::zero()), Rational::one());
    }

    #[test]
    fn fermion() {
        let r = fermion_check().unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn f_is_minus_structure_over_scale() {
        for (k, l) in [("1/2", "1/4"), ("3/2", "11/4"), ("2", "3")] {
            let lab = cp(k, l);
            let (f, s2) = deformation_poly(&lab).unwrap();
            let want = (-&lab.structure_poly().0).scale(&(Rational::one() / s2));
            assert_eq!(f, want);
        }
    }

    #[test]
    fn residuals_small_and_exact() {
        for (k, l) in [("1/2", "1/4"), ("1", "1"), ("3/2", "11/4"), ("5/2", "13/4")] {
            let o = deform_label(&cp(k, l)).unwrap();
            let r = o.residuals();
            assert!(r.max() <= 1e-10, "{k} {l} {r:?}");
            assert!(r.lowest_annihilated);
            assert!(o.exact_check());
        }
    }

    #[test]
    fn rejects_noncompact() {
        let lab = AlgebraLabel::noncompact(rational::int(1), rational::frac(1, 2)).unwrap();
        let rep = reps::noncompact_rep(&lab, 4).unwrap();
        assert!(deform(&rep).is_err());
    }
}
