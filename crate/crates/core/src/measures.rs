//! Resolution-of-identity checks: radial moment targets for the noncompact
//! coherent states and a full numerical check of the compact measure.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::coherent::HypergeomSeries;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::reps::{AlgebraLabel, Sector};
use crate::special::{is_nonpositive_integer, ln_gamma, pochhammer, rgamma};
use num_complex::Complex64;
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentTarget {
    #[serde(serialize_with = "rational::serialize")]
    pub k: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub l: Rational,
    pub n: usize,
    pub value: f64,
}

fn noncompact(label: &AlgebraLabel) -> Result<(f64, f64)> {
    if label.sector() != Sector::Noncompact {
        return Err(Error::InvalidLabel(format!("{label} is not a noncompact label")));
    }
    Ok((rational::to_f64(label.k()), rational::to_f64(label.l())))
}

fn target(label: &AlgebraLabel, n: usize, value: f64) -> MomentTarget {
    MomentTarget { k: label.k().clone(), l: label.l().clone(), n, value }
}

/// `(1/2pi) n! Gamma(2k+n) Gamma(k-2l+1+n) / (Gamma(2k) Gamma(k-2l+1))`
pub fn bg_moment_target(label: &AlgebraLabel, n: usize) -> Result<MomentTarget> {
    let (k, l) = noncompact(label)?;
    let (a, b, nf) = (2.0 * k, k - 2.0 * l + 1.0, n as f64);
    let ln = ln_gamma(nf + 1.0) + ln_gamma(a + nf) + ln_gamma(b + nf) - ln_gamma(a) - ln_gamma(b);
    Ok(target(label, n, ln.exp() / (2.0 * std::f64::consts::PI)))
}

/// `(1/pi) n! Gamma(2k) Gamma(k-2l+1) / (Gamma(2k+n) Gamma(k-2l+1+n))`
pub fn perelomov_moment_target(label: &AlgebraLabel, n: usize) -> Result<MomentTarget> {
    let (k, l) = noncompact(label)?;
    let (a, b, nf) = (2.0 * k, k - 2.0 * l + 1.0, n as f64);
    let ln = ln_gamma(nf + 1.0) + ln_gamma(a) + ln_gamma(b) - ln_gamma(a + nf) - ln_gamma(b + nf);
    Ok(target(label, n, ln.exp() / std::f64::consts::PI))
}

/// `n! (2k)_n (k-2l+1)_n`, exactly.
pub fn bg_growth_exact(label: &AlgebraLabel, n: usize) -> Rational {
    let a = rational::int(2) * label.k();
    let b = label.k() - rational::int(2) * label.l() + Rational::one();
    let mut acc = Rational::one();
    for i in 0..n {
        let i = rational::int(i as i64);
        acc *= (&i + Rational::one()) * (&a + &i) * (&b + &i);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Cutoff between the numeric and the asymptotic part; chosen from the
    /// parameters when absent.
    pub r: Option<f64>,
    pub max_evals: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { abs_tol: 1e-9, rel_tol: 1e-8, r: None, max_evals: 2_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureInfo {
    #[serde(rename = "R")]
    pub r: f64,
    pub evals: usize,
    pub error_estimate: f64,
    pub tail: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> Segment {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Segment { lo, hi, value: kron * h, error: ((kron - gauss) * h).abs() }
}

/// Globally adaptive Gauss-Kronrod (7/15) over the given breakpoints.
/// Returns `(integral, error estimate, evaluations)`.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    breakpoints: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_evals: usize,
) -> Result<(f64, f64, usize)> {
    let mut heap: BinaryHeap<Segment> = breakpoints.windows(2).map(|w| gk15(&f, w[0], w[1])).collect();
    let mut evals = 15 * heap.len();
    loop {
        let total: f64 = heap.iter().map(|s| s.value).sum();
        let err: f64 = heap.iter().map(|s| s.error).sum();
        if !total.is_finite() {
            return Err(Error::Quadrature { error: f64::NAN, evals });
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok((total, err, evals));
        }
        if evals + 30 > max_evals {
            return Err(Error::Quadrature { error: err, evals });
        }
        let worst = heap.pop().expect("at least one segment");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            return Err(Error::Quadrature { error: err, evals });
        }
        heap.push(gk15(&f, worst.lo, mid));
        heap.push(gk15(&f, mid, worst.hi));
        evals += 30;
    }
}

/// `Phi(a; c; -x)` for `x >= 0`. Large arguments go through Kummer's
/// transformation `e^{-x} Phi(c-a; c; x)`.
pub fn kummer_neg(a: f64, c: f64, x: f64) -> Result<f64> {
    if x <= 1.0 {
        let s = HypergeomSeries::f11(a, c)?;
        return Ok(s.sum_complex(Complex64::new(-x, 0.0), 1e-17)?.0.re);
    }
    let s = HypergeomSeries::f11(c - a, c)?;
    let (v, _) = s.sum_complex(Complex64::new(x, 0.0), 1e-17)?;
    Ok((-x).exp() * v.re)
}

/// `int_R^inf x^{b-1} Phi(a;c;-x) dx` from the algebraic large-`x` expansion
/// `Gamma(c)/Gamma(c-a) sum_s (a)_s (a-c+1)_s / s! x^{-a-s}`.
fn asymptotic_tail(a: f64, b: f64, c: f64, r: f64) -> f64 {
    let pref = crate::special::gamma(c) * rgamma(c - a);
    if pref == 0.0 {
        return 0.0;
    }
    let mut coeff = 1.0;
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for s in 0..200 {
        let sf = s as f64;
        let term = coeff * r.powf(b - a - sf) / (a + sf - b);
        if term.abs() >= prev || term == 0.0 {
            break;
        }
        sum += term;
        prev = term.abs();
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        coeff *= (a + sf) * (a - c + 1.0 + sf) / (sf + 1.0);
    }
    pref * sum
}

fn choose_r(a: f64, c: f64, spec: &QuadratureSpec) -> f64 {
    spec.r.unwrap_or_else(|| (20.0 * (a.abs() + c.abs() + 1.0)).clamp(60.0, 600.0))
}

/// `int_0^inf x^{b-1} Phi(a; c; -x) dx`, numerically on `[0, R]` plus the
/// asymptotic tail.
pub fn kummer_moment(a: f64, b: f64, c: f64, spec: &QuadratureSpec) -> Result<(f64, QuadratureInfo)> {
    if b.is_nan() || a.is_nan() || b <= 0.0 || a - b <= 0.0 {
        return Err(Error::InvalidParameter(format!("integral diverges unless 0 < b < a (a={a}, b={b})")));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::SeriesPole(c));
    }
    let r = choose_r(a, c, spec);
    // x = u^{1/b} on [0,1] absorbs the x^{b-1} endpoint behaviour
    let head = |u: f64| kummer_neg(a, c, u.powf(1.0 / b)).unwrap_or(f64::NAN) / b;
    let body = |x: f64| x.powf(b - 1.0) * kummer_neg(a, c, x).unwrap_or(f64::NAN);
    let tol_share = 0.5;
    let (h, he, hn) = integrate(head, &[0.0, 1.0], spec.abs_tol * tol_share, spec.rel_tol * tol_share, spec.max_evals)?;
    let mut breaks = vec![1.0];
    while breaks.last().copied().unwrap_or(r) * 2.0 < r {
        let next = breaks.last().copied().unwrap_or(1.0) * 2.0;
        breaks.push(next);
    }
    breaks.push(r);
    let (m, me, mn) = integrate(body, &breaks, spec.abs_tol * tol_share, spec.rel_tol * tol_share, spec.max_evals)?;
    let tail = asymptotic_tail(a, b, c, r);
    Ok((h + m + tail, QuadratureInfo { r, evals: hn + mn, error_estimate: he + me, tail }))
}

/// `Gamma(b) Gamma(c) Gamma(a-b) / (Gamma(a) Gamma(c-b))`
pub fn kummer_moment_analytic(a: f64, b: f64, c: f64) -> f64 {
    let g = |x: f64| crate::special::gamma(x);
    g(b) * g(c) * g(a - b) * rgamma(a) * rgamma(c - b)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KummerCheck {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub numeric: f64,
    pub analytic: f64,
    /// Relative error, or absolute when the analytic value vanishes.
    pub error: f64,
    pub quadrature: QuadratureInfo,
}

pub fn kummer_integral_check(a: f64, b: f64, c: f64, spec: &QuadratureSpec) -> Result<KummerCheck> {
    let (numeric, quadrature) = kummer_moment(a, b, c, spec)?;
    let analytic = kummer_moment_analytic(a, b, c);
    let error = if analytic == 0.0 { numeric.abs() } else { ((numeric - analytic) / analytic).abs() };
    Ok(KummerCheck { a, b, c, numeric, analytic, error, quadrature })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResolutionRow {
    #[serde(serialize_with = "rational::serialize")]
    pub k: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub l: Rational,
    pub n: usize,
    pub moment: f64,
    pub deviation: f64,
    pub quadrature: QuadratureInfo,
}

/// For each `n = 0..=2l-k`, the normalized moment
/// `Gamma(2l+k-n)/(n! (2l-k-n)!) int x^n M(x) dx` of the compact measure
/// `M(x) = Gamma(2l-k+2)/Gamma(2l+k+1) Phi(2l-k+2; 2l+k+1; -x)`, which
/// should equal 1.
pub fn verify_compact_resolution(label: &AlgebraLabel, spec: &QuadratureSpec) -> Result<Vec<ResolutionRow>> {
    if label.sector() != Sector::Compact {
        return Err(Error::InvalidLabel(format!("{label} is not a compact label")));
    }
    let m = label.span();
    let k = rational::to_f64(label.k());
    let mf = m as f64;
    let (a, c) = (mf + 2.0, mf + 2.0 * k + 1.0);
    let measure_pref = ln_gamma(a) - ln_gamma(c);
    (0..=m)
        .map(|n| {
            let nf = n as f64;
            let (integral, quadrature) = kummer_moment(a, nf + 1.0, c, spec)?;
            let pref = ln_gamma(mf + 2.0 * k - nf) - ln_gamma(nf + 1.0) - ln_gamma(mf - nf + 1.0);
            let moment = (pref + measure_pref).exp() * integral;
            Ok(ResolutionRow {
                k: label.k().clone(),
                l: label.l().clone(),
                n,
                moment,
                deviation: (moment - 1.0).abs(),
                quadrature,
            })
        })
        .collect()
}

/// The rising factorial ratio `target(n)/target(0)` in floating point.
pub fn bg_growth_f64(label: &AlgebraLabel, n: usize) -> f64 {
    let k = rational::to_f64(label.k());
    let l = rational::to_f64(label.l());
    pochhammer(1.0, n) * pochhammer(2.0 * k, n) * pochhammer(k - 2.0 * l + 1.0, n)
}

/// The compact moment with the integral replaced by its closed form,
/// evaluated in exact arithmetic.
pub fn compact_moment_exact(label: &AlgebraLabel, n: usize) -> Result<Rational> {
    if label.sector() != Sector::Compact || n > label.span() {
        return Err(Error::InvalidParameter(format!("n={n} outside 0..=2l-k for {label}")));
    }
    let m = label.span();
    let s = label.two_k_minus_one();
    let f = rational::factorial_q;
    // Gamma(M+2k-n) / (n! (M-n)!) * Gamma(M+2)/Gamma(M+2k+1)
    //   * n! Gamma(M+2k+1) Gamma(M+1-n) / (Gamma(M+2) Gamma(M+2k-n))
    let pref = f(m + s - n) / (f(n) * f(m - n));
    let measure = f(m + 1) / f(m + s + 1);
    let integral = f(n) * f(m + s + 1) * f(m - n) / (f(m + 1) * f(m + s - n));
    Ok(pref * measure * integral)
}
