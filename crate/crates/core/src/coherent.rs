//! Generalized hypergeometric series and the coherent-state families of the
//! quadratic algebras: Barut-Girardello states (eigenstates of `Q-`) and the
//! Perelomov-type states for both sectors.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::output;
use crate::rational::{self, Rational};
use crate::reps::{self, AlgebraLabel, Sector};
use crate::special::{is_nonpositive_integer, ln_gamma};

/// Hard cap on the number of series terms.
pub const SERIES_CAP: usize = 100_000;

/// Relative tail allowed when truncating a Barut-Girardello state.
pub const BG_TAIL_BOUND: f64 = 1e-12;

/// Auto-chosen truncations also push `|c_top|^2` below this.
pub const BG_TOP_COEFF_SQ: f64 = 1e-20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    #[serde(rename = "0F2")]
    F02,
    #[serde(rename = "1F1")]
    F11,
    #[serde(rename = "2F0")]
    F20,
    #[serde(rename = "pFq")]
    Other,
}

/// `pFq(numer; denom; x) = sum_n prod (a_i)_n / prod (b_j)_n x^n / n!`
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomSeries {
    numer: Vec<f64>,
    denom: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum HypergeomValue {
    Converged {
        value: f64,
        terms: usize,
    },
    /// Optimally truncated divergent series: the sum of all terms before the
    /// smallest one, whose magnitude is the error estimate.
    Asymptotic {
        partial_sum: f64,
        smallest_index: usize,
        smallest_term: f64,
    },
}

impl HypergeomValue {
    /// The converged value or the truncated partial sum.
    pub fn value(&self) -> f64 {
        match *self {
            HypergeomValue::Converged { value, .. } => value,
            HypergeomValue::Asymptotic { partial_sum, .. } => partial_sum,
        }
    }
}

impl HypergeomSeries {
    /// Rejects denominator parameters at poles `0, -1, -2, ...`, except when
    /// a numerator `-M` terminates the series before the pole `-P` is reached
    /// (`M <= P`).
    pub fn new(numer: Vec<f64>, denom: Vec<f64>) -> Result<Self> {
        if let Some(bad) = numer.iter().chain(&denom).find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite series parameter {bad}")));
        }
        let terminates_at =
            numer.iter().filter(|a| is_nonpositive_integer(**a)).map(|a| -a).fold(f64::INFINITY, f64::min);
        for &b in &denom {
            if is_nonpositive_integer(b) && terminates_at > -b {
                return Err(Error::SeriesPole(b));
            }
        }
        Ok(HypergeomSeries { numer, denom })
    }

    pub fn f02(b1: f64, b2: f64) -> Result<Self> {
        Self::new(vec![], vec![b1, b2])
    }

    pub fn f11(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![a], vec![b])
    }

    pub fn f20(a1: f64, a2: f64) -> Result<Self> {
        Self::new(vec![a1, a2], vec![])
    }

    pub fn kind(&self) -> SeriesKind {
        match (self.numer.len(), self.denom.len()) {
            (0, 2) => SeriesKind::F02,
            (1, 1) => SeriesKind::F11,
            (2, 0) => SeriesKind::F20,
            _ => SeriesKind::Other,
        }
    }

    pub fn numer(&self) -> &[f64] {
        &self.numer
    }

    pub fn denom(&self) -> &[f64] {
        &self.denom
    }

    /// Series with `p > q + 1` and no terminating numerator diverge for every
    /// nonzero argument.
    pub fn is_divergent(&self) -> bool {
        self.numer.len() > self.denom.len() + 1 && !self.numer.iter().any(|a| is_nonpositive_integer(*a))
    }

    /// `t_{n+1} / t_n` without the argument.
    fn ratio(&self, n: usize) -> f64 {
        let n = n as f64;
        let num: f64 = self.numer.iter().map(|a| a + n).product();
        if num == 0.0 {
            return 0.0;
        }
        let den: f64 = self.denom.iter().map(|b| b + n).product();
        num / (den * (n + 1.0))
    }

    fn param_scale(&self) -> f64 {
        self.numer.iter().chain(&self.denom).fold(1.0_f64, |m, v| m.max(v.abs()))
    }

    /// Sums a convergent (or terminating) series at a complex argument.
    pub fn sum_complex(&self, z: Complex64, tol: f64) -> Result<(Complex64, usize)> {
        if self.is_divergent() && z != Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter("divergent series: use hypergeom for its truncated sum".into()));
        }
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut terms = 1;
        for n in 0..SERIES_CAP {
            let r = self.ratio(n);
            term *= z * r;
            if term.norm() == 0.0 {
                return Ok((sum, terms));
            }
            sum += term;
            terms += 1;
            let next = (z * self.ratio(n + 1)).norm();
            if n as f64 > self.param_scale() && next < 0.5 && term.norm() <= tol * sum.norm() {
                return Ok((sum, terms));
            }
        }
        Err(Error::SeriesCap(SERIES_CAP))
    }

    /// `sum_{n < order} t_n`, the fixed-order truncation.
    pub fn truncated_sum(&self, x: f64, order: usize) -> f64 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for n in 0..order {
            sum += term;
            term *= x * self.ratio(n);
        }
        sum
    }
}

/// Evaluates a series at a real argument. Convergent series are summed until
/// `|term| < tol |sum|`; divergent ones (`2F0`) are optimally truncated.
pub fn hypergeom(series: &HypergeomSeries, x: f64, tol: f64) -> Result<HypergeomValue> {
    if !x.is_finite() || tol.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidParameter(format!("argument must be finite and tol positive (x={x}, tol={tol})")));
    }
    if series.is_divergent() && x != 0.0 {
        let mut term = 1.0_f64;
        let mut sum = 0.0;
        for n in 0..SERIES_CAP {
            let next = term * x * series.ratio(n);
            if next.abs() >= term.abs() || next == 0.0 {
                let (idx, t) = if next == 0.0 { (n + 1, 0.0) } else { (n, term.abs()) };
                if next == 0.0 {
                    sum += term;
                }
                return Ok(HypergeomValue::Asymptotic { partial_sum: sum, smallest_index: idx, smallest_term: t });
            }
            sum += term;
            term = next;
        }
        return Err(Error::SeriesCap(SERIES_CAP));
    }
    let (v, terms) = series.sum_complex(Complex64::new(x, 0.0), tol)?;
    Ok(HypergeomValue::Converged { value: v.re, terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    #[serde(rename = "bg")]
    BarutGirardello,
    PerelomovNoncompact,
    PerelomovCompact,
}

/// Which parametrization a compact Perelomov state was built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CompactParameter {
    Alpha(Complex64),
    /// `gamma = 1 / alpha`
    Gamma(Complex64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoherentState {
    pub family: Family,
    pub label: AlgebraLabel,
    pub parameter: Complex64,
    /// True for the `gamma` form of the compact Perelomov state.
    pub gamma_form: bool,
    pub coeffs: Vec<Complex64>,
    pub norm_constant: f64,
    pub truncation: usize,
    pub divergence_flag: bool,
}

impl CoherentState {
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn overlap(&self, other: &CoherentState) -> Complex64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im,abs2\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!(
                "{n},{},{},{}\n",
                output::fmt_f64(c.re),
                output::fmt_f64(c.im),
                output::fmt_f64(c.norm_sqr())
            ));
        }
        out
    }

    pub fn to_document(&self) -> CoherentStateDoc {
        CoherentStateDoc {
            family: self.family,
            sector: self.label.sector(),
            k: self.label.k().clone(),
            l: self.label.l().clone(),
            parameter: [self.parameter.re, self.parameter.im],
            gamma_form: self.gamma_form,
            norm_constant: self.norm_constant,
            truncation: self.truncation,
            divergence_flag: self.divergence_flag,
            norm: self.norm(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| CoeffRow { n, re: c.re, im: c.im, abs2: c.norm_sqr() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoeffRow {
    pub n: usize,
    pub re: f64,
    pub im: f64,
    pub abs2: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoherentStateDoc {
    pub family: Family,
    pub sector: Sector,
    #[serde(serialize_with = "rational::serialize")]
    pub k: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub l: Rational,
    pub parameter: [f64; 2],
    pub gamma_form: bool,
    pub norm_constant: f64,
    pub truncation: usize,
    pub divergence_flag: bool,
    pub norm: f64,
    pub coeffs: Vec<CoeffRow>,
}

fn require(label: &AlgebraLabel, sector: Sector) -> Result<()> {
    if label.sector() != sector {
        return Err(Error::InvalidLabel(format!("{label} is not a {sector} label")));
    }
    Ok(())
}

fn label_f64(label: &AlgebraLabel) -> (f64, f64) {
    (rational::to_f64(label.k()), rational::to_f64(label.l()))
}

/// `c_n` from `|param|^n e^{i n arg}` times `exp(ln_weight(n))`.
fn assemble(param: Complex64, ln_weights: impl Iterator<Item = f64>) -> Vec<Complex64> {
    let (r, theta) = param.to_polar();
    ln_weights
        .enumerate()
        .map(|(n, w)| {
            if r == 0.0 {
                return if n == 0 { Complex64::new(w.exp(), 0.0) } else { Complex64::new(0.0, 0.0) };
            }
            Complex64::from_polar((n as f64 * r.ln() + w).exp(), n as f64 * theta)
        })
        .collect()
}

/// `-1/2 ln(n! (n+2k-1)! (n+k-2l)!)`
fn bg_ln_weight(n: usize, k: f64, l: f64) -> f64 {
    let n = n as f64;
    -0.5 * (ln_gamma(n + 1.0) + ln_gamma(n + 2.0 * k) + ln_gamma(n + k - 2.0 * l + 1.0))
}

fn bg_norm_sq_constant(label: &AlgebraLabel, alpha: Complex64) -> Result<f64> {
    let (k, l) = label_f64(label);
    let f = HypergeomSeries::f02(2.0 * k, k - 2.0 * l + 1.0)?;
    let (v, _) = f.sum_complex(Complex64::new(alpha.norm_sqr(), 0.0), 1e-17)?;
    Ok((ln_gamma(2.0 * k) + ln_gamma(k - 2.0 * l + 1.0)).exp() / v.re)
}

/// Relative weight of the dropped tail `n >= dim` of a Barut-Girardello state.
pub fn bg_tail(label: &AlgebraLabel, alpha: Complex64, dim: usize) -> Result<f64> {
    let (k, l) = label_f64(label);
    let norm_sq = bg_norm_sq_constant(label, alpha)?;
    let x = alpha.norm_sqr();
    let t_dim = (dim as f64 * x.ln() + 2.0 * bg_ln_weight(dim, k, l)).exp();
    if x == 0.0 {
        return Ok(if dim == 0 { 1.0 } else { 0.0 });
    }
    let d = dim as f64;
    let r = x / ((d + 1.0) * (d + 2.0 * k) * (d + k - 2.0 * l + 1.0));
    if r >= 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(norm_sq * t_dim / (1.0 - r))
}

/// Barut-Girardello state truncated to `dim` basis vectors.
pub fn bg_state(label: &AlgebraLabel, alpha: Complex64, dim: usize) -> Result<CoherentState> {
    require(label, Sector::Noncompact)?;
    if dim == 0 {
        return Err(Error::InvalidParameter("truncation dim must be at least 1".into()));
    }
    let tail = bg_tail(label, alpha, dim)?;
    if tail > BG_TAIL_BOUND {
        return Err(Error::TailBound { dim, tail, bound: BG_TAIL_BOUND });
    }
    let (k, l) = label_f64(label);
    let norm_sq = bg_norm_sq_constant(label, alpha)?;
    let coeffs = assemble(alpha, (0..dim).map(|n| bg_ln_weight(n, k, l) + 0.5 * norm_sq.ln()));
    Ok(CoherentState {
        family: Family::BarutGirardello,
        label: label.clone(),
        parameter: alpha,
        gamma_form: false,
        coeffs,
        norm_constant: norm_sq.sqrt(),
        truncation: dim,
        divergence_flag: false,
    })
}

/// Smallest truncation meeting the tail bound whose top coefficient is also
/// negligible (`|c_top|^2 <= 1e-20`), capped at `max_dim`.
pub fn bg_auto_dim(label: &AlgebraLabel, alpha: Complex64, max_dim: usize) -> Result<usize> {
    require(label, Sector::Noncompact)?;
    let (k, l) = label_f64(label);
    let norm_sq = bg_norm_sq_constant(label, alpha)?;
    let x = alpha.norm_sqr();
    for dim in 1..=max_dim {
        let top = if x == 0.0 {
            0.0
        } else {
            ((dim - 1) as f64 * x.ln() + 2.0 * bg_ln_weight(dim - 1, k, l)).exp() * norm_sq
        };
        if top <= BG_TOP_COEFF_SQ && bg_tail(label, alpha, dim)? <= BG_TAIL_BOUND {
            return Ok(dim);
        }
    }
    Err(Error::TailBound { dim: max_dim, tail: bg_tail(label, alpha, max_dim)?, bound: BG_TAIL_BOUND })
}

pub fn bg_state_auto(label: &AlgebraLabel, alpha: Complex64, max_dim: usize) -> Result<CoherentState> {
    bg_state(label, alpha, bg_auto_dim(label, alpha, max_dim)?)
}

/// `||Q- |a> - a |a>|| / |a|` on the state's truncation (`||Q- |0>||` when
/// `a = 0`).
pub fn bg_eigen_residual(state: &CoherentState) -> Result<f64> {
    let rep = reps::noncompact_rep(&state.label, state.truncation)?;
    Ok(lowering_residual(&rep.qm, &state.coeffs, state.parameter))
}

fn lowering_residual(qm: &Matrix, c: &[Complex64], alpha: Complex64) -> f64 {
    let n = c.len();
    let mut acc = 0.0;
    for i in 0..n {
        let mut v = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let q = qm[(i, j)];
            if q != 0.0 {
                v += c[j] * q;
            }
        }
        acc += (v - alpha * c[i]).norm_sqr();
    }
    let r = acc.sqrt();
    if alpha.norm() > 0.0 {
        r / alpha.norm()
    } else {
        r
    }
}

/// `<a|a'>` from the series `0F2(a* a') / sqrt(0F2(|a|^2) 0F2(|a'|^2))`.
pub fn bg_overlap_series(label: &AlgebraLabel, a: Complex64, b: Complex64) -> Result<Complex64> {
    require(label, Sector::Noncompact)?;
    let (k, l) = label_f64(label);
    let f = HypergeomSeries::f02(2.0 * k, k - 2.0 * l + 1.0)?;
    let (cross, _) = f.sum_complex(a.conj() * b, 1e-17)?;
    let (na, _) = f.sum_complex(Complex64::new(a.norm_sqr(), 0.0), 1e-17)?;
    let (nb, _) = f.sum_complex(Complex64::new(b.norm_sqr(), 0.0), 1e-17)?;
    Ok(cross / (na.re * nb.re).sqrt())
}

/// Noncompact Perelomov-type state. The norm series `2F0(2k, k-2l+1; |b|^2)`
/// diverges for every `b != 0`, so the state is normalized on its truncation
/// and flagged.
pub fn perelomov_noncompact(label: &AlgebraLabel, beta: Complex64, dim: usize) -> Result<CoherentState> {
    require(label, Sector::Noncompact)?;
    if dim == 0 {
        return Err(Error::InvalidParameter("truncation dim must be at least 1".into()));
    }
    let (k, l) = label_f64(label);
    let a2 = k - 2.0 * l + 1.0;
    let base = ln_gamma(2.0 * k) + ln_gamma(a2);
    let raw = assemble(
        beta,
        (0..dim).map(|n| {
            let nf = n as f64;
            0.5 * (ln_gamma(2.0 * k + nf) + ln_gamma(a2 + nf) - ln_gamma(nf + 1.0) - base)
        }),
    );
    let partial = HypergeomSeries::f20(2.0 * k, a2)?.truncated_sum(beta.norm_sqr(), dim);
    if !partial.is_finite() || partial <= 0.0 {
        return Err(Error::InvalidParameter(format!("truncated normalization overflows at dim {dim}")));
    }
    let norm_constant = partial.powf(-0.5);
    Ok(CoherentState {
        family: Family::PerelomovNoncompact,
        label: label.clone(),
        parameter: beta,
        gamma_form: false,
        coeffs: raw.into_iter().map(|c| c * norm_constant).collect(),
        norm_constant,
        truncation: dim,
        divergence_flag: beta.norm() != 0.0,
    })
}

/// Unnormalized compact Perelomov coefficients.
///
/// Alpha form: `a^n sqrt((2l-k)! (2k-1+n)! / (n! (2l-k-n)! (2k-1)!))`.
/// Gamma form: `g^{k-2l} g^n sqrt((2l-k)! (k+2l-1-n)! / (n! (2l-k-n)! (2k-1)!))`.
pub fn perelomov_compact_raw(label: &AlgebraLabel, param: CompactParameter) -> Result<Vec<Complex64>> {
    require(label, Sector::Compact)?;
    let m = label.span();
    let s = label.two_k_minus_one();
    let lf = |n: usize| ln_gamma(n as f64 + 1.0);
    let common = |n: usize| lf(m) - lf(n) - lf(m - n) - lf(s);
    Ok(match param {
        CompactParameter::Alpha(a) => assemble(a, (0..=m).map(|n| 0.5 * (common(n) + lf(s + n)))),
        CompactParameter::Gamma(g) => {
            if g.norm() == 0.0 {
                return Err(Error::InvalidParameter("gamma = 1/alpha must be nonzero".into()));
            }
            // k + 2l - 1 - n = (m + s) - n
            let pre = g.powi(-(m as i32));
            assemble(g, (0..=m).map(|n| 0.5 * (common(n) + lf(m + s - n)))).into_iter().map(|c| c * pre).collect()
        }
    })
}

pub fn perelomov_compact(label: &AlgebraLabel, param: CompactParameter) -> Result<CoherentState> {
    let raw = perelomov_compact_raw(label, param)?;
    let norm_sq: f64 = raw.iter().map(|c| c.norm_sqr()).sum();
    let norm_constant = norm_sq.powf(-0.5);
    let (parameter, gamma_form) = match param {
        CompactParameter::Alpha(a) => (a, false),
        CompactParameter::Gamma(g) => (g, true),
    };
    Ok(CoherentState {
        family: Family::PerelomovCompact,
        label: label.clone(),
        parameter,
        gamma_form,
        truncation: raw.len(),
        coeffs: raw.into_iter().map(|c| c * norm_constant).collect(),
        norm_constant,
        divergence_flag: false,
    })
}

/// Closed form of the squared norm of the unnormalized gamma-form state:
/// `|g|^{2(k-2l)} Gamma(k+2l)/Gamma(2k) Phi(k-2l; 1-2l-k; |g|^2)`.
pub fn compact_norm_formula(label: &AlgebraLabel, gamma: Complex64) -> Result<f64> {
    require(label, Sector::Compact)?;
    if gamma.norm() == 0.0 {
        return Err(Error::InvalidParameter("gamma = 1/alpha must be nonzero".into()));
    }
    let (k, l) = label_f64(label);
    let x = gamma.norm_sqr();
    let phi = hypergeom(&HypergeomSeries::f11(k - 2.0 * l, 1.0 - 2.0 * l - k)?, x, 1e-17)?;
    Ok(x.powf(k - 2.0 * l) * (ln_gamma(k + 2.0 * l) - ln_gamma(2.0 * k)).exp() * phi.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn q(s: &str) -> Rational {
        rational::parse(s).unwrap()
    }

    fn nc(k: &str, l: &str) -> AlgebraLabel {
        AlgebraLabel::noncompact(q(k), q(l)).unwrap()
    }

    fn cp(k: &str, l: &str) -> AlgebraLabel {
        AlgebraLabel::compact(q(k), q(l)).unwrap()
    }

    #[test]
    fn hypergeom_examples() {
        let v = hypergeom(&HypergeomSeries::f02(1.0, 1.0).unwrap(), 0.0, 1e-15).unwrap();
        assert_eq!(v, HypergeomValue::Converged { value: 1.0, terms: 1 });
        let v = hypergeom(&HypergeomSeries::f11(1.0, 2.0).unwrap(), 1.0, 1e-16).unwrap();
        assert_relative_eq!(v.value(), std::f64::consts::E - 1.0, max_relative = 1e-15);
        for (a, b) in [(0.3, 2.5), (-4.0, 1.5), (7.0, 0.25)] {
            let v = hypergeom(&HypergeomSeries::f11(a, b).unwrap(), 0.0, 1e-15).unwrap();
            assert_eq!(v.value(), 1.0);
        }
    }

    #[test]
    fn f11_matches_exponential_identity() {
        // 1F1(1;2;x) = (e^x - 1)/x, checked against the closed form
        for x in [-3.0, -0.5, 0.7, 4.0, 12.0] {
            let v = hypergeom(&HypergeomSeries::f11(1.0, 2.0).unwrap(), x, 1e-16).unwrap();
            assert_relative_eq!(v.value(), (f64::exp(x) - 1.0) / x, max_relative = 1e-13);
        }
    }

    #[test]
    fn poles_and_termination() {
        assert!(matches!(HypergeomSeries::f11(1.0, -2.0), Err(Error::SeriesPole(_))));
        assert!(matches!(HypergeomSeries::f02(0.0, 1.0), Err(Error::SeriesPole(_))));
        // numerator -2 terminates before the pole at -3
        let s = HypergeomSeries::f11(-2.0, -3.0).unwrap();
        let v = hypergeom(&s, 1.5, 1e-15).unwrap();
        let exact = 1.0 + (-2.0 / -3.0) * 1.5 + (-2.0 * -1.0) / (-3.0 * -2.0) * 1.5 * 1.5 / 2.0;
        assert_eq!(v, HypergeomValue::Converged { value: exact, terms: 3 });
        // numerator -4 would reach the pole at -3
        assert!(HypergeomSeries::f11(-4.0, -3.0).is_err());
        assert!(hypergeom(&HypergeomSeries::f11(1.0, 1.0).unwrap(), 1.0, 0.0).is_err());
    }

    #[test]
    fn f20_is_returned_as_truncated_asymptotic_sum() {
        let s = HypergeomSeries::f20(1.0, 1.0).unwrap();
        assert!(s.is_divergent());
        match hypergeom(&s, 0.1, 1e-15).unwrap() {
            HypergeomValue::Asymptotic { partial_sum, smallest_index, smallest_term } => {
                // terms n! 0.1^n are smallest at n = 9 or 10
                assert!(smallest_index == 9 || smallest_index == 10);
                let direct: f64 =
                    (0..smallest_index).map(|n| crate::special::gamma(n as f64 + 1.0) * 0.1f64.powi(n as i32)).sum();
                assert_relative_eq!(partial_sum, direct, max_relative = 1e-14);
                assert!(smallest_term < 1e-3);
            }
            other => panic!("expected asymptotic, got {other:?}"),
        }
        assert_eq!(s.truncated_sum(2.0, 3), 1.0 + 2.0 + 8.0);
        assert!(s.sum_complex(Complex64::new(0.1, 0.0), 1e-10).is_err());
    }

    #[test]
    fn bg_vacuum_and_simple_label() {
        let lab = nc("1/2", "1/4");
        let s = bg_state(&lab, Complex64::new(0.0, 0.0), 5).unwrap();
        assert_eq!(s.coeffs[0], Complex64::new(1.0, 0.0));
        assert!(s.coeffs[1..].iter().all(|c| c.norm() == 0.0));

        // c_n proportional to 1/(n!)^{3/2}, normalized by 0F2(-;1,1;1)^{-1/2}
        let s = bg_state(&lab, Complex64::new(1.0, 0.0), 30).unwrap();
        let f = HypergeomSeries::f02(1.0, 1.0).unwrap().sum_complex(Complex64::new(1.0, 0.0), 1e-17).unwrap().0.re;
        assert_relative_eq!(s.norm_constant, f.powf(-0.5), max_relative = 1e-14);
        for n in 0..10 {
            let fact = crate::special::gamma(n as f64 + 1.0);
            assert_relative_eq!(s.coeffs[n].re, f.powf(-0.5) / fact.powf(1.5), max_relative = 1e-13);
        }
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bg_tail_bound_is_enforced() {
        let lab = nc("1/2", "1/4");
        assert!(matches!(bg_state(&lab, Complex64::new(3.0, 0.0), 3), Err(Error::TailBound { .. })));
        assert!(bg_state(&cp("1", "1"), Complex64::new(1.0, 0.0), 3).is_err());
    }

    #[test]
    fn bg_eigen_residual_is_small() {
        let lab = nc("1", "1/2");
        let s = bg_state_auto(&lab, Complex64::new(1.0, 1.0), 4096).unwrap();
        assert!(bg_eigen_residual(&s).unwrap() <= 1e-8);
    }

    #[test]
    fn bg_overlap_two_ways() {
        let lab = nc("3/2", "1/4");
        let (a, b) = (Complex64::new(0.7, -0.2), Complex64::new(-1.1, 0.4));
        let sa = bg_state_auto(&lab, a, 4096).unwrap();
        let sb = bg_state(&lab, b, sa.truncation.max(bg_auto_dim(&lab, b, 4096).unwrap())).unwrap();
        let sa = bg_state(&lab, a, sb.truncation).unwrap();
        let direct = sa.overlap(&sb);
        let series = bg_overlap_series(&lab, a, b).unwrap();
        assert!((direct - series).norm() <= 1e-9);
    }

    #[test]
    fn perelomov_noncompact_growth() {
        let lab = nc("1/2", "1/4");
        let beta = Complex64::new(0.3, 0.0);
        let s = perelomov_noncompact(&lab, beta, 8).unwrap();
        assert!(s.divergence_flag);
        // c_{n+1}/c_n = beta sqrt(n+1) for this label
        for n in 0..7 {
            let ratio = s.coeffs[n + 1].re / s.coeffs[n].re;
            assert_relative_eq!(ratio, 0.3 * ((n + 1) as f64).sqrt(), max_relative = 1e-13);
        }
        assert!((s.norm() - 1.0).abs() < 1e-12);
        let z = perelomov_noncompact(&lab, Complex64::new(0.0, 0.0), 4).unwrap();
        assert!(!z.divergence_flag);
        assert_eq!(z.coeffs[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn perelomov_compact_examples() {
        let one = perelomov_compact(&cp("1/2", "1/4"), CompactParameter::Alpha(Complex64::new(2.0, 1.0))).unwrap();
        assert_eq!(one.coeffs.len(), 1);
        assert!((one.coeffs[0].norm() - 1.0).abs() < 1e-15);

        let raw = perelomov_compact_raw(&cp("1", "1"), CompactParameter::Alpha(Complex64::new(0.8, 0.0))).unwrap();
        assert_eq!(raw.len(), 2);
        assert_relative_eq!(raw[1].re / raw[0].re, 2f64.sqrt() * 0.8, max_relative = 1e-14);

        assert!(perelomov_compact(&cp("1", "1"), CompactParameter::Gamma(Complex64::new(0.0, 0.0))).is_err());
    }

    #[test]
    fn gamma_form_is_reflected_alpha_form() {
        let lab = cp("3/2", "11/4");
        let g = Complex64::new(0.6, -0.9);
        let ga = perelomov_compact_raw(&lab, CompactParameter::Gamma(g)).unwrap();
        let al = perelomov_compact_raw(&lab, CompactParameter::Alpha(g.inv())).unwrap();
        for (n, c) in ga.iter().enumerate() {
            assert!((c - al[al.len() - 1 - n]).norm() <= 1e-12 * c.norm().max(1.0));
        }
    }

    #[test]
    fn compact_norm_formula_matches_sum() {
        for (k, l) in [("1/2", "1/4"), ("1", "1"), ("3/2", "11/4"), ("2", "5/2"), ("5/2", "13/4")] {
            let lab = cp(k, l);
            for g in [Complex64::new(0.4, 0.3), Complex64::new(-1.7, 0.0), Complex64::new(0.0, 2.2)] {
                let raw = perelomov_compact_raw(&lab, CompactParameter::Gamma(g)).unwrap();
                let direct: f64 = raw.iter().map(|c| c.norm_sqr()).sum();
                let formula = compact_norm_formula(&lab, g).unwrap();
                assert_relative_eq!(direct, formula, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = perelomov_compact(&cp("1", "1"), CompactParameter::Alpha(Complex64::new(1.0, 0.0))).unwrap();
        let csv = s.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "n,re,im,abs2");
        assert_eq!(lines.len(), 3);
    }
}
