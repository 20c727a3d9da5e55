//! Closed-form matrix representations.
//!
//! Basis vectors are indexed by `n = 0, 1, ...` in order of increasing `Q0`;
//! `Q+` maps `n -> n+1`, so its only nonzero entries sit at `(n+1, n)`. All
//! ladder entries are non-negative square roots of exact rationals, and the
//! squared values are kept alongside the float matrices.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::polyalg::{self, CasimirPoly, StructurePoly};
use crate::rational::{self, frac, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Compact,
    Noncompact,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Compact => write!(f, "compact"),
            Sector::Noncompact => write!(f, "noncompact"),
        }
    }
}

/// The four algebras handled throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Su2,
    Su11,
    Compact,
    Noncompact,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraKind::Su2 => "su2",
            AlgebraKind::Su11 => "su11",
            AlgebraKind::Compact => "compact",
            AlgebraKind::Noncompact => "noncompact",
        };
        write!(f, "{s}")
    }
}

impl From<Sector> for AlgebraKind {
    fn from(s: Sector) -> Self {
        match s {
            Sector::Compact => AlgebraKind::Compact,
            Sector::Noncompact => AlgebraKind::Noncompact,
        }
    }
}

/// `(k, l)` pair labelling an irreducible representation of the quadratic
/// algebra; `K = k(1-k)` and `L = l` on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraLabel {
    k: Rational,
    l: Rational,
    sector: Sector,
}

impl AlgebraLabel {
    pub fn new(k: Rational, l: Rational, sector: Sector) -> Result<Self> {
        check_half_integer_k(&k)?;
        let span = match sector {
            Sector::Compact => &l * int(2) - &k,
            Sector::Noncompact => &k - &l * int(2),
        };
        if !rational::is_nonneg_integer(&span) {
            let what = match sector {
                Sector::Compact => "2l-k",
                Sector::Noncompact => "k-2l",
            };
            return Err(Error::InvalidLabel(format!(
                "{what} = {} must be a non-negative integer (k={}, l={})",
                rational::display(&span),
                rational::display(&k),
                rational::display(&l)
            )));
        }
        if !rational::is_multiple_of_inverse(&l, 4) {
            return Err(Error::InvalidLabel(format!("l = {} must be a multiple of 1/4", rational::display(&l))));
        }
        Ok(AlgebraLabel { k, l, sector })
    }

    pub fn compact(k: Rational, l: Rational) -> Result<Self> {
        Self::new(k, l, Sector::Compact)
    }

    pub fn noncompact(k: Rational, l: Rational) -> Result<Self> {
        Self::new(k, l, Sector::Noncompact)
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn l(&self) -> &Rational {
        &self.l
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// Eigenvalue `k(1-k)` of `K`.
    pub fn k_value(&self) -> Rational {
        &self.k * (Rational::one() - &self.k)
    }

    /// `2l - k` (compact) or `k - 2l` (noncompact); always a non-negative integer.
    pub fn span(&self) -> usize {
        let s = match self.sector {
            Sector::Compact => &self.l * int(2) - &self.k,
            Sector::Noncompact => &self.k - &self.l * int(2),
        };
        rational::to_usize(&s).expect("validated at construction")
    }

    /// `2k - 1`, a non-negative integer.
    pub fn two_k_minus_one(&self) -> usize {
        rational::to_usize(&(&self.k * int(2) - int(1))).expect("validated at construction")
    }

    /// Dimension of the compact representation; `None` for noncompact.
    pub fn dim(&self) -> Option<usize> {
        match self.sector {
            Sector::Compact => Some(self.span() + 1),
            Sector::Noncompact => None,
        }
    }

    pub fn structure_poly(&self) -> StructurePoly {
        match self.sector {
            Sector::Compact => StructurePoly::compact(&self.k, &self.l),
            Sector::Noncompact => StructurePoly::noncompact(&self.k, &self.l),
        }
    }

    /// Lowest `Q0` eigenvalue `k - l`.
    pub fn lowest_weight(&self) -> Rational {
        &self.k - &self.l
    }

    /// Printed closed form: `l^3 + (l+1)[K-1] + 1` (compact) or `l(l - k^2)`
    /// (noncompact). Both are fixed only up to a constant in `K` and `L`.
    pub fn closed_form_casimir(&self) -> Rational {
        let l = &self.l;
        match self.sector {
            Sector::Compact => rational::pow(l, 3) + (l + int(1)) * (self.k_value() - int(1)) + int(1),
            Sector::Noncompact => l * (l - &self.k * &self.k),
        }
    }
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(k={}, l={})", self.sector, rational::display(&self.k), rational::display(&self.l))
    }
}

fn check_half_integer_k(k: &Rational) -> Result<()> {
    if !rational::is_multiple_of_inverse(k, 2) || k < &frac(1, 2) {
        return Err(Error::InvalidLabel(format!("k = {} must be one of 1/2, 1, 3/2, ...", rational::display(k))));
    }
    Ok(())
}

/// Label of any representation built by this module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepLabel {
    Su2 { j: Rational },
    Su11 { k: Rational },
    Quadratic(AlgebraLabel),
}

impl RepLabel {
    pub fn kind(&self) -> AlgebraKind {
        match self {
            RepLabel::Su2 { .. } => AlgebraKind::Su2,
            RepLabel::Su11 { .. } => AlgebraKind::Su11,
            RepLabel::Quadratic(l) => l.sector().into(),
        }
    }

    pub fn structure_poly(&self) -> StructurePoly {
        match self {
            RepLabel::Su2 { .. } => StructurePoly::su2(),
            RepLabel::Su11 { .. } => StructurePoly::su11(),
            RepLabel::Quadratic(l) => l.structure_poly(),
        }
    }

    pub fn lowest_weight(&self) -> Rational {
        match self {
            RepLabel::Su2 { j } => -j.clone(),
            RepLabel::Su11 { k } => k.clone(),
            RepLabel::Quadratic(l) => l.lowest_weight(),
        }
    }

    /// `j(j+1)`, `k(1-k)`, or the quadratic closed forms.
    pub fn closed_form_casimir(&self) -> Rational {
        match self {
            RepLabel::Su2 { j } => j * (j + int(1)),
            RepLabel::Su11 { k } => k * (int(1) - k),
            RepLabel::Quadratic(l) => l.closed_form_casimir(),
        }
    }

    pub fn as_quadratic(&self) -> Option<&AlgebraLabel> {
        match self {
            RepLabel::Quadratic(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    #[serde(rename = "Q0")]
    Q0,
    #[serde(rename = "Q+")]
    Qp,
    #[serde(rename = "Q-")]
    Qm,
}

pub const GENERATORS: [Generator; 3] = [Generator::Q0, Generator::Qp, Generator::Qm];

/// A matrix element stored as `sign * sqrt(square)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSquare {
    pub sign: i8,
    pub square: Rational,
}

impl SignedSquare {
    pub fn zero() -> Self {
        SignedSquare { sign: 0, square: Rational::zero() }
    }

    pub fn from_value(v: &Rational) -> Self {
        SignedSquare { sign: rational::signum(v), square: v * v }
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * rational::to_f64(&self.square).sqrt()
    }
}

/// `entries[row][col]` for one generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementTable {
    pub generator: Generator,
    pub entries: Vec<Vec<SignedSquare>>,
}

impl ElementTable {
    pub fn zeros(generator: Generator, dim: usize) -> Self {
        ElementTable { generator, entries: vec![vec![SignedSquare::zero(); dim]; dim] }
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub label: RepLabel,
    pub dim: usize,
    pub q0: Matrix,
    pub qp: Matrix,
    pub qm: Matrix,
    /// `K = k(1-k)` for the quadratic algebras.
    pub k_value: Option<Rational>,
    /// `L = l` for the quadratic algebras.
    pub l_value: Option<Rational>,
    /// True when this is the leading block of an infinite representation; the
    /// top basis vector is then a boundary state.
    pub truncated: bool,
    q0_exact: Vec<Rational>,
    qp_squared: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationResiduals {
    /// `[Q0, Q+] - Q+`
    pub q0_qp: f64,
    /// `[Q0, Q-] + Q-`
    pub q0_qm: f64,
    /// `[Q+, Q-] - f(Q0)`
    pub qp_qm: f64,
    pub interior_states: usize,
    pub boundary_states: usize,
}

impl RelationResiduals {
    pub fn max(&self) -> f64 {
        self.q0_qp.max(self.q0_qm).max(self.qp_qm)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CasimirValue {
    /// Mean diagonal of `Q+Q- + g(Q0-1)` over interior states.
    pub value: f64,
    /// Max deviation of the Casimir matrix from `value * I` on interior columns.
    pub deviation: f64,
    /// Exact value on the lowest-weight vector, `g(lowest - 1)`.
    #[serde(serialize_with = "rational::serialize")]
    pub exact: Rational,
    /// The printed closed form, which may differ from `exact` by a constant
    /// function of `K` and `L`.
    #[serde(serialize_with = "rational::serialize")]
    pub closed_form: Rational,
    pub convention: String,
}

impl Representation {
    fn from_parts(label: RepLabel, q0_exact: Vec<Rational>, qp_squared: Vec<Rational>, truncated: bool) -> Self {
        let dim = q0_exact.len();
        debug_assert_eq!(qp_squared.len() + 1, dim.max(1));
        let q0 = Matrix::from_fn(dim, dim, |i, j| if i == j { rational::to_f64(&q0_exact[i]) } else { 0.0 });
        let mut qp = Matrix::zeros(dim, dim);
        for (n, sq) in qp_squared.iter().enumerate() {
            qp[(n + 1, n)] = rational::to_f64(sq).sqrt();
        }
        let qm = qp.transpose();
        let (k_value, l_value) = match &label {
            RepLabel::Quadratic(l) => (Some(l.k_value()), Some(l.l().clone())),
            _ => (None, None),
        };
        Representation { label, dim, q0, qp, qm, k_value, l_value, truncated, q0_exact, qp_squared }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.label.kind()
    }

    /// Exact diagonal of `Q0`.
    pub fn q0_exact(&self) -> &[Rational] {
        &self.q0_exact
    }

    /// `qp_squared()[n] = |<n+1|Q+|n>|^2`.
    pub fn qp_squared(&self) -> &[Rational] {
        &self.qp_squared
    }

    /// Index of the flagged top boundary state, if truncated.
    pub fn boundary(&self) -> Option<usize> {
        self.truncated.then(|| self.dim - 1)
    }

    pub fn interior(&self) -> Vec<bool> {
        (0..self.dim).map(|n| Some(n) != self.boundary()).collect()
    }

    pub fn structure_poly(&self) -> StructurePoly {
        self.label.structure_poly()
    }

    pub fn casimir_poly(&self) -> CasimirPoly {
        polyalg::discrete_antiderivative(&self.structure_poly())
    }

    pub fn relation_residuals(&self) -> RelationResiduals {
        let mask = self.interior();
        let f = self.structure_poly();
        let fq0 = linalg::poly_of_matrix(&f.poly().to_f64_coeffs(), &self.q0);
        let r1 = linalg::commutator(&self.q0, &self.qp) - &self.qp;
        let r2 = linalg::commutator(&self.q0, &self.qm) + &self.qm;
        let r3 = linalg::commutator(&self.qp, &self.qm) - fq0;
        let interior = mask.iter().filter(|b| **b).count();
        RelationResiduals {
            q0_qp: linalg::max_abs_cols(&r1, &mask),
            q0_qm: linalg::max_abs_cols(&r2, &mask),
            qp_qm: linalg::max_abs_cols(&r3, &mask),
            interior_states: interior,
            boundary_states: self.dim - interior,
        }
    }

    /// Exact diagonal of `Q+Q- + g(Q0 - 1)`. This form is exact on every row,
    /// including a truncation boundary.
    pub fn exact_casimir_diagonal(&self, g: &CasimirPoly) -> Vec<Rational> {
        (0..self.dim)
            .map(|n| {
                let lowered = if n == 0 { Rational::zero() } else { self.qp_squared[n - 1].clone() };
                lowered + g.eval(&(&self.q0_exact[n] - int(1)))
            })
            .collect()
    }

    pub fn casimir_value(&self) -> CasimirValue {
        let g = self.casimir_poly();
        let c = polyalg::casimir_matrix(self, &g).expect("square by construction");
        let mask = self.interior();
        let diag: Vec<f64> = (0..self.dim).filter(|&i| mask[i]).map(|i| c[(i, i)]).collect();
        let value = if diag.is_empty() { 0.0 } else { diag.iter().sum::<f64>() / diag.len() as f64 };
        let deviation = linalg::max_abs_cols(&(c - Matrix::identity(self.dim, self.dim) * value), &mask);
        CasimirValue {
            value,
            deviation,
            exact: g.eval(&(self.label.lowest_weight() - int(1))),
            closed_form: self.label.closed_form_casimir(),
            convention: g.convention_note,
        }
    }

    /// Exact `sign * sqrt(square)` tables, for comparison with the
    /// differential realizations.
    pub fn exact_elements(&self, generator: Generator) -> ElementTable {
        let mut t = ElementTable::zeros(generator, self.dim);
        match generator {
            Generator::Q0 => {
                for (n, v) in self.q0_exact.iter().enumerate() {
                    t.entries[n][n] = SignedSquare::from_value(v);
                }
            }
            Generator::Qp | Generator::Qm => {
                for (n, sq) in self.qp_squared.iter().enumerate() {
                    let e = SignedSquare { sign: rational::signum(sq), square: sq.clone() };
                    match generator {
                        Generator::Qp => t.entries[n + 1][n] = e,
                        _ => t.entries[n][n + 1] = e,
                    }
                }
            }
        }
        t
    }

    pub fn to_document(&self) -> RepresentationDoc {
        let (k, l, j) = match &self.label {
            RepLabel::Su2 { j } => (None, None, Some(j.clone())),
            RepLabel::Su11 { k } => (Some(k.clone()), None, None),
            RepLabel::Quadratic(lab) => (Some(lab.k().clone()), Some(lab.l().clone()), None),
        };
        let rows =
            |m: &Matrix| -> Vec<Vec<f64>> { (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect() };
        RepresentationDoc {
            sector: self.kind(),
            k,
            l,
            j,
            dim: self.dim,
            truncated: self.truncated,
            q0: (0..self.dim).map(|i| self.q0[(i, i)]).collect(),
            qp: rows(&self.qp),
            qm: rows(&self.qm),
            casimir: self.casimir_value(),
        }
    }
}

/// JSON layout of a representation: row-major dense ladder matrices and the
/// `Q0` diagonal.
#[derive(Clone, Debug, Serialize)]
pub struct RepresentationDoc {
    pub sector: AlgebraKind,
    #[serde(serialize_with = "rational::serialize_opt", skip_serializing_if = "Option::is_none")]
    pub k: Option<Rational>,
    #[serde(serialize_with = "rational::serialize_opt", skip_serializing_if = "Option::is_none")]
    pub l: Option<Rational>,
    #[serde(serialize_with = "rational::serialize_opt", skip_serializing_if = "Option::is_none")]
    pub j: Option<Rational>,
    pub dim: usize,
    pub truncated: bool,
    pub q0: Vec<f64>,
    pub qp: Vec<Vec<f64>>,
    pub qm: Vec<Vec<f64>>,
    pub casimir: CasimirValue,
}

fn require_sector(label: &AlgebraLabel, sector: Sector) -> Result<()> {
    if label.sector() != sector {
        return Err(Error::InvalidLabel(format!("{label} is not a {sector} label")));
    }
    Ok(())
}

/// Finite `(2l-k+1)`-dimensional representation.
pub fn compact_rep(label: &AlgebraLabel) -> Result<Representation> {
    require_sector(label, Sector::Compact)?;
    let (k, l) = (label.k(), label.l());
    let dim = label.span() + 1;
    let q0 = (0..dim).map(|n| k - l + int(n as i64)).collect();
    let qp_sq = (0..dim - 1)
        .map(|n| {
            let n = int(n as i64);
            (&n + int(1)) * (&n + k * int(2)) * (l * int(2) - &n - k)
        })
        .collect();
    Ok(Representation::from_parts(RepLabel::Quadratic(label.clone()), q0, qp_sq, false))
}

/// Leading `dim x dim` block of the infinite representation.
pub fn noncompact_rep(label: &AlgebraLabel, dim: usize) -> Result<Representation> {
    require_sector(label, Sector::Noncompact)?;
    if dim == 0 {
        return Err(Error::InvalidParameter("truncation dim must be at least 1".into()));
    }
    let (k, l) = (label.k(), label.l());
    let q0 = (0..dim).map(|n| k - l + int(n as i64)).collect();
    let qp_sq = (0..dim - 1)
        .map(|n| {
            let n = int(n as i64);
            (&n + int(1)) * (&n + k * int(2)) * (&n + k - l * int(2) + int(1))
        })
        .collect();
    Ok(Representation::from_parts(RepLabel::Quadratic(label.clone()), q0, qp_sq, true))
}

/// Spin-`j` representation, basis `m = -j, ..., j` (index `n = j + m`).
pub fn su2_rep(j: &Rational) -> Result<Representation> {
    let two_j = rational::to_usize(&(j * int(2)))
        .ok_or_else(|| Error::InvalidLabel(format!("j = {} must be one of 0, 1/2, 1, ...", rational::display(j))))?;
    let q0 = (0..=two_j).map(|n| int(n as i64) - j).collect();
    let qp_sq = (0..two_j).map(|n| int((two_j - n) as i64) * int(n as i64 + 1)).collect();
    Ok(Representation::from_parts(RepLabel::Su2 { j: j.clone() }, q0, qp_sq, false))
}

/// Leading block of the positive discrete series `D+(k)`.
pub fn su11_rep(k: &Rational, dim: usize) -> Result<Representation> {
    check_half_integer_k(k)?;
    if dim == 0 {
        return Err(Error::InvalidParameter("truncation dim must be at least 1".into()));
    }
    let q0 = (0..dim).map(|n| k + int(n as i64)).collect();
    let qp_sq = (0..dim - 1).map(|n| (k * int(2) + int(n as i64)) * int(n as i64 + 1)).collect();
    Ok(Representation::from_parts(RepLabel::Su11 { k: k.clone() }, q0, qp_sq, true))
}

/// Two-dimensional compact representation `Q0 = diag(k-1, k+1)/2`,
/// `Q+ = sqrt(2k)` at `l = (k+1)/2`.
pub fn two_dim_family(k: &Rational) -> Result<Representation> {
    check_half_integer_k(k)?;
    let l = (k + int(1)) / int(2);
    let label = AlgebraLabel::compact(k.clone(), l)?;
    let half = frac(1, 2);
    let q0 = vec![(k - int(1)) * &half, (k + int(1)) * &half];
    let rep = Representation::from_parts(RepLabel::Quadratic(label), q0, vec![k * int(2)], false);
    debug_assert!(rep.label.as_quadratic().is_some_and(|lab| {
        compact_rep(lab).map(|c| c.q0_exact == rep.q0_exact && c.qp_squared == rep.qp_squared).unwrap_or(false)
    }));
    Ok(rep)
}

/// `(-3k^3 - 5k^2 + 11k - 3) / 8`
pub fn two_dim_family_casimir(k: &Rational) -> Rational {
    (rational::pow(k, 3) * int(-3) - k * k * int(5) + k * int(11) - int(3)) / int(8)
}

/// Whether all entries of the exact Casimir diagonal agree.
pub fn is_exactly_scalar(diag: &[Rational]) -> bool {
    diag.windows(2).all(|w| w[0] == w[1])
}

/// Checks that squared ladder entries are non-negative.
pub fn ladder_squares_nonnegative(rep: &Representation) -> bool {
    rep.qp_squared.iter().all(|s| !s.is_negative())
}
