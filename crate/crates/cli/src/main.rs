use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use quadalg::coherent::{self, CoherentStateDoc, CompactParameter};
use quadalg::fock3::{self, FockSpace};
use quadalg::measures::{self, QuadratureSpec};
use quadalg::output::{self, fmt_f64};
use quadalg::rational::{self, Rational};
use quadalg::reps::{self, AlgebraKind, AlgebraLabel, RepLabel, Representation, GENERATORS};
use quadalg::{defosc, diffreal, spectrum, Error, Poly};

const DEFAULT_MAX_DIM: usize = 4096;
const MAX_LEVEL: u64 = 5000;

#[derive(Parser)]
#[command(name = "quadalg", version, about = "Quadratic algebras of three boson modes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SectorArg {
    Compact,
    Noncompact,
    Su2,
    Su11,
}

#[derive(Args, Clone)]
struct LabelArgs {
    #[arg(long, value_enum)]
    sector: SectorArg,
    /// k as an exact fraction, e.g. 3/2.
    #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
    k: Option<Rational>,
    #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
    l: Option<Rational>,
    /// Spin for su2.
    #[arg(long, value_parser = parse_fraction)]
    j: Option<Rational>,
    /// Truncation dimension for the infinite-dimensional sectors.
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix representation for a label.
    Rep(LabelArgs),
    /// Defining-relation residuals of a representation or a Fock realization.
    Verify {
        #[command(flatten)]
        label: VerifyTarget,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Casimir operator and its value on a representation.
    Casimir {
        #[command(flatten)]
        label: LabelArgs,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Single-variable differential realization checked against the matrices.
    Diffcheck(LabelArgs),
    /// Coherent-state coefficients.
    Coherent(CoherentArgs),
    /// Resolution-of-identity moments and quadrature checks.
    Measure(MeasureArgs),
    /// Level degeneracies of the (1,1,2) oscillator.
    Spectrum {
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Deformed-oscillator form of a compact representation.
    Deform {
        #[arg(long, value_parser = parse_fraction, required_unless_present = "fermion")]
        k: Option<Rational>,
        #[arg(long, value_parser = parse_fraction, required_unless_present = "fermion")]
        l: Option<Rational>,
        /// Run the two-dimensional fermion check instead.
        #[arg(long, conflicts_with_all = ["k", "l"])]
        fermion: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Args)]
struct VerifyTarget {
    #[arg(long, value_enum)]
    sector: SectorArg,
    /// Fock-space cutoffs (comma separated); selects the boson realization.
    #[arg(long, value_delimiter = ',')]
    cutoffs: Option<Vec<usize>>,
    #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
    k: Option<Rational>,
    #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
    l: Option<Rational>,
    #[arg(long, value_parser = parse_fraction)]
    j: Option<Rational>,
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Bg,
    PerelomovNoncompact,
    PerelomovCompact,
}

#[derive(Args)]
struct CoherentArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_parser = parse_fraction)]
    k: Rational,
    #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
    l: Rational,
    /// Real part of the state parameter.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    im: f64,
    /// Truncation; chosen automatically for bg when omitted.
    #[arg(long)]
    dim: Option<usize>,
    /// Interpret the parameter as gamma = 1/alpha (compact family).
    #[arg(long)]
    gamma: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureKind {
    Compact,
    Kummer,
    BgMoments,
    PerelomovMoments,
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long, value_enum)]
    kind: MeasureKind,
    #[arg(long, value_parser = parse_fraction)]
    k: Option<Rational>,
    #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
    l: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Highest moment for the target tables.
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = 1e-9)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    rel_tol: f64,
    /// Quadrature cutoff R.
    #[arg(long)]
    r: Option<f64>,
}

fn parse_fraction(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

enum Failure {
    Validation(String),
    Tolerance(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TailBound { .. } | Error::Quadrature { .. } | Error::SeriesCap(_) => {
                Failure::Tolerance(e.to_string())
            }
            _ => Failure::Validation(e.to_string()),
        }
    }
}

struct Output {
    json: String,
    csv: String,
    /// Set when a numerical check exceeded its tolerance.
    breach: Option<String>,
}

impl Output {
    fn new<T: Serialize>(value: &T, csv: String) -> Self {
        Output { json: output::to_json_pretty(value), csv, breach: None }
    }

    fn breach_if(mut self, cond: bool, msg: impl FnOnce() -> String) -> Self {
        if cond {
            self.breach = Some(msg());
        }
        self
    }
}

fn max_dim() -> Result<usize, Failure> {
    match std::env::var("QUADALG_MAX_DIM") {
        Err(_) => Ok(DEFAULT_MAX_DIM),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|d| *d > 0)
            .ok_or_else(|| Failure::Validation(format!("QUADALG_MAX_DIM must be a positive integer, got {v:?}"))),
    }
}

fn check_dim(dim: usize, what: &str) -> Result<(), Failure> {
    let cap = max_dim()?;
    if dim > cap {
        return Err(Failure::Validation(format!("{what} {dim} exceeds QUADALG_MAX_DIM = {cap}")));
    }
    Ok(())
}

fn need<T: Clone>(v: &Option<T>, flag: &str, context: &str) -> Result<T, Failure> {
    v.clone().ok_or_else(|| Failure::Validation(format!("--{flag} is required for {context}")))
}

fn need_dim(dim: Option<usize>, context: &str) -> Result<usize, Failure> {
    let d = need(&dim, "dim", context)?;
    if d == 0 {
        return Err(Failure::Validation("--dim must be at least 1".into()));
    }
    check_dim(d, "--dim")?;
    Ok(d)
}

fn quadratic_label(sector: SectorArg, k: &Option<Rational>, l: &Option<Rational>) -> Result<AlgebraLabel, Failure> {
    let name = if sector == SectorArg::Compact { "the compact sector" } else { "the noncompact sector" };
    let (k, l) = (need(k, "k", name)?, need(l, "l", name)?);
    Ok(match sector {
        SectorArg::Compact => AlgebraLabel::compact(k, l)?,
        _ => AlgebraLabel::noncompact(k, l)?,
    })
}

fn build_rep(
    sector: SectorArg,
    k: &Option<Rational>,
    l: &Option<Rational>,
    j: &Option<Rational>,
    dim: Option<usize>,
) -> Result<Representation, Failure> {
    Ok(match sector {
        SectorArg::Compact => {
            let lab = quadratic_label(sector, k, l)?;
            check_dim(lab.span() + 1, "representation dimension")?;
            reps::compact_rep(&lab)?
        }
        SectorArg::Noncompact => {
            let lab = quadratic_label(sector, k, l)?;
            reps::noncompact_rep(&lab, need_dim(dim, "the noncompact sector")?)?
        }
        SectorArg::Su2 => {
            let j = need(j, "j", "su2")?;
            if let Some(d) = rational::to_usize(&(&j * rational::int(2) + rational::int(1))) {
                check_dim(d, "representation dimension")?;
            }
            reps::su2_rep(&j)?
        }
        SectorArg::Su11 => reps::su11_rep(&need(k, "k", "su11")?, need_dim(dim, "su11")?)?,
    })
}

fn rep_label(a: &LabelArgs) -> Result<(RepLabel, Option<usize>), Failure> {
    Ok(match a.sector {
        SectorArg::Su2 => (RepLabel::Su2 { j: need(&a.j, "j", "su2")? }, None),
        SectorArg::Su11 => (RepLabel::Su11 { k: need(&a.k, "k", "su11")? }, Some(need_dim(a.dim, "su11")?)),
        SectorArg::Compact => {
            let lab = quadratic_label(a.sector, &a.k, &a.l)?;
            check_dim(lab.span() + 1, "representation dimension")?;
            (RepLabel::Quadratic(lab), None)
        }
        SectorArg::Noncompact => {
            let lab = quadratic_label(a.sector, &a.k, &a.l)?;
            (RepLabel::Quadratic(lab), Some(need_dim(a.dim, "the noncompact sector")?))
        }
    })
}

fn matrix_entries_csv(rep: &Representation) -> String {
    let mut out = String::from("generator,row,col,value\n");
    for (name, m) in [("Q0", &rep.q0), ("Q+", &rep.qp), ("Q-", &rep.qm)] {
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if m[(i, j)] != 0.0 {
                    out.push_str(&format!("{name},{i},{j},{}\n", fmt_f64(m[(i, j)])));
                }
            }
        }
    }
    out
}

fn kv_csv(rows: &[(&str, String)]) -> String {
    let mut out = String::from("quantity,value\n");
    for (k, v) in rows {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

fn cmd_rep(a: &LabelArgs) -> Result<Output, Failure> {
    let rep = build_rep(a.sector, &a.k, &a.l, &a.j, a.dim)?;
    Ok(Output::new(&rep.to_document(), matrix_entries_csv(&rep)))
}

fn cmd_verify(t: &VerifyTarget, tol: f64) -> Result<Output, Failure> {
    if let Some(cut) = &t.cutoffs {
        let space = FockSpace::new(cut)?;
        check_dim(space.dim(), "Fock-space dimension")?;
        let ops = match t.sector {
            SectorArg::Compact => fock3::realize_compact(&space)?,
            SectorArg::Noncompact => fock3::realize_noncompact(&space)?,
            SectorArg::Su2 => fock3::realize_two_mode(AlgebraKind::Su2, &space)?,
            SectorArg::Su11 => fock3::realize_two_mode(AlgebraKind::Su11, &space)?,
        };
        let r = fock3::verify_realization(&ops);
        if !r.has_interior() {
            eprintln!("warning: no interior states at these cutoffs; nothing was checked");
        }
        let csv = kv_csv(&[
            ("q0_qp", fmt_f64(r.q0_qp)),
            ("q0_qm", fmt_f64(r.q0_qm)),
            ("qp_qm", fmt_f64(r.qp_qm)),
            ("k_l", fmt_f64(r.k_l)),
            ("k_q", fmt_f64(r.k_q)),
            ("l_q", fmt_f64(r.l_q)),
            ("adjoint", fmt_f64(r.adjoint)),
            ("interior_states", r.interior_states.to_string()),
            ("boundary_states", r.boundary_states.to_string()),
        ]);
        let max = r.max();
        return Ok(Output::new(&r, csv).breach_if(max > tol, || format!("max residual {max:e} exceeds {tol:e}")));
    }
    let rep = build_rep(t.sector, &t.k, &t.l, &t.j, t.dim)?;
    let r = rep.relation_residuals();
    let csv = kv_csv(&[
        ("q0_qp", fmt_f64(r.q0_qp)),
        ("q0_qm", fmt_f64(r.q0_qm)),
        ("qp_qm", fmt_f64(r.qp_qm)),
        ("interior_states", r.interior_states.to_string()),
        ("boundary_states", r.boundary_states.to_string()),
    ]);
    let max = r.max();
    Ok(Output::new(&r, csv).breach_if(max > tol, || format!("max residual {max:e} exceeds {tol:e}")))
}

#[derive(Serialize)]
struct CasimirDoc {
    sector: AlgebraKind,
    dim: usize,
    truncated: bool,
    /// Coefficients of g, lowest degree first.
    g: Poly,
    g_text: String,
    casimir: reps::CasimirValue,
}

fn cmd_casimir(a: &LabelArgs, tol: f64) -> Result<Output, Failure> {
    let rep = build_rep(a.sector, &a.k, &a.l, &a.j, a.dim)?;
    let g = rep.casimir_poly();
    let c = rep.casimir_value();
    let csv = kv_csv(&[
        ("value", fmt_f64(c.value)),
        ("deviation", fmt_f64(c.deviation)),
        ("exact", rational::display(&c.exact)),
        ("closed_form", rational::display(&c.closed_form)),
    ]);
    let dev = c.deviation;
    let doc = CasimirDoc {
        sector: rep.kind(),
        dim: rep.dim,
        truncated: rep.truncated,
        g_text: g.g.to_string(),
        g: g.g,
        casimir: c,
    };
    Ok(Output::new(&doc, csv).breach_if(dev > tol, || format!("Casimir deviates from a scalar by {dev:e}")))
}

#[derive(Serialize)]
struct DiffcheckDoc {
    sector: AlgebraKind,
    q0: String,
    qp: String,
    qm: String,
    basis_size: usize,
    truncated: bool,
    /// Generators whose squared matrix elements differ from the matrix representation.
    mismatched_generators: Vec<String>,
    /// Basis indices where the commutator relation fails.
    commutator_mismatches: Vec<usize>,
}

fn cmd_diffcheck(a: &LabelArgs) -> Result<Output, Failure> {
    let (label, size) = rep_label(a)?;
    let rep = build_rep(a.sector, &a.k, &a.l, &a.j, a.dim)?;
    let (ops, basis) = diffreal::build_realization(&label, size)?;
    let tables = diffreal::matrix_elements(&ops, &basis)?;
    let mismatched: Vec<String> = tables
        .iter()
        .zip(GENERATORS)
        .filter(|(t, g)| **t != rep.exact_elements(*g))
        .map(|(_, g)| format!("{g:?}"))
        .collect();
    let comm = diffreal::commutator_mismatches(&ops, &basis, &label.structure_poly());
    let doc = DiffcheckDoc {
        sector: label.kind(),
        q0: ops.q0.to_string(),
        qp: ops.qp.to_string(),
        qm: ops.qm.to_string(),
        basis_size: basis.size(),
        truncated: basis.truncated,
        mismatched_generators: mismatched,
        commutator_mismatches: comm,
    };
    let csv = kv_csv(&[
        ("Q0", format!("\"{}\"", doc.q0)),
        ("Q+", format!("\"{}\"", doc.qp)),
        ("Q-", format!("\"{}\"", doc.qm)),
        ("basis_size", doc.basis_size.to_string()),
        ("elements_match", doc.mismatched_generators.is_empty().to_string()),
        ("commutator_ok", doc.commutator_mismatches.is_empty().to_string()),
    ]);
    let bad = !doc.mismatched_generators.is_empty() || !doc.commutator_mismatches.is_empty();
    Ok(Output::new(&doc, csv).breach_if(bad, || "differential realization disagrees with the matrices".into()))
}

#[derive(Serialize)]
struct CoherentOut {
    #[serde(flatten)]
    state: CoherentStateDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigen_residual: Option<f64>,
}

fn cmd_coherent(a: &CoherentArgs) -> Result<Output, Failure> {
    let p = Complex64::new(a.re, a.im);
    if !a.re.is_finite() || !a.im.is_finite() {
        return Err(Failure::Validation("state parameter must be finite".into()));
    }
    if let Some(d) = a.dim {
        check_dim(d, "--dim")?;
    }
    if a.gamma && a.family != FamilyArg::PerelomovCompact {
        return Err(Failure::Validation("--gamma applies only to perelomov-compact".into()));
    }
    let (state, residual) = match a.family {
        FamilyArg::Bg => {
            let lab = AlgebraLabel::noncompact(a.k.clone(), a.l.clone())?;
            let s = match a.dim {
                Some(d) => coherent::bg_state(&lab, p, d)?,
                None => coherent::bg_state_auto(&lab, p, max_dim()?)?,
            };
            let r = coherent::bg_eigen_residual(&s)?;
            (s, Some(r))
        }
        FamilyArg::PerelomovNoncompact => {
            let lab = AlgebraLabel::noncompact(a.k.clone(), a.l.clone())?;
            (coherent::perelomov_noncompact(&lab, p, need_dim(a.dim, "perelomov-noncompact")?)?, None)
        }
        FamilyArg::PerelomovCompact => {
            let lab = AlgebraLabel::compact(a.k.clone(), a.l.clone())?;
            check_dim(lab.span() + 1, "representation dimension")?;
            let param = if a.gamma { CompactParameter::Gamma(p) } else { CompactParameter::Alpha(p) };
            (coherent::perelomov_compact(&lab, param)?, None)
        }
    };
    if state.divergence_flag {
        eprintln!("warning: the norm series diverges for this parameter; state normalized on its truncation");
    }
    let csv = state.to_csv();
    let out = CoherentOut { state: state.to_document(), eigen_residual: residual };
    let bad = residual.is_some_and(|r| r > 1e-8);
    Ok(Output::new(&out, csv).breach_if(bad, || format!("eigen-residual {:e} exceeds 1e-8", residual.unwrap_or(0.0))))
}

fn cmd_measure(a: &MeasureArgs) -> Result<Output, Failure> {
    let spec = QuadratureSpec { abs_tol: a.abs_tol, rel_tol: a.rel_tol, r: a.r, ..QuadratureSpec::default() };
    if !(spec.abs_tol > 0.0 && spec.rel_tol > 0.0) || spec.r.is_some_and(|r| r.is_nan() || r <= 1.0) {
        return Err(Failure::Validation("tolerances must be positive and R > 1".into()));
    }
    match a.kind {
        MeasureKind::Compact => {
            let lab = quadratic_label(SectorArg::Compact, &a.k, &a.l)?;
            let rows = measures::verify_compact_resolution(&lab, &spec)?;
            let mut csv = String::from("k,l,n,moment,deviation,R,evals\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    rational::display(&r.k),
                    rational::display(&r.l),
                    r.n,
                    fmt_f64(r.moment),
                    fmt_f64(r.deviation),
                    fmt_f64(r.quadrature.r),
                    r.quadrature.evals
                ));
            }
            let limit = spec.abs_tol.max(1e-6);
            let worst = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
            Ok(Output::new(&rows, csv)
                .breach_if(worst > limit, || format!("moment deviation {worst:e} exceeds {limit:e}")))
        }
        MeasureKind::Kummer => {
            let (x, y, z) = (need(&a.a, "a", "kummer")?, need(&a.b, "b", "kummer")?, need(&a.c, "c", "kummer")?);
            let r = measures::kummer_integral_check(x, y, z, &spec)?;
            let csv = format!(
                "a,b,c,numeric,analytic,error\n{},{},{},{},{},{}\n",
                fmt_f64(r.a),
                fmt_f64(r.b),
                fmt_f64(r.c),
                fmt_f64(r.numeric),
                fmt_f64(r.analytic),
                fmt_f64(r.error)
            );
            let err = r.error;
            Ok(Output::new(&r, csv).breach_if(err > 1e-8, || format!("relative error {err:e} exceeds 1e-8")))
        }
        MeasureKind::BgMoments | MeasureKind::PerelomovMoments => {
            let lab = quadratic_label(SectorArg::Noncompact, &a.k, &a.l)?;
            let rows = (0..=a.n_max)
                .map(|n| match a.kind {
                    MeasureKind::BgMoments => measures::bg_moment_target(&lab, n),
                    _ => measures::perelomov_moment_target(&lab, n),
                })
                .collect::<quadalg::Result<Vec<_>>>()?;
            let mut csv = String::from("n,value\n");
            for r in &rows {
                csv.push_str(&format!("{},{}\n", r.n, fmt_f64(r.value)));
            }
            Ok(Output::new(&rows, csv))
        }
    }
}

fn cmd_spectrum(from: u64, to: u64) -> Result<Output, Failure> {
    if from > to {
        return Err(Failure::Validation(format!("--from {from} is greater than --to {to}")));
    }
    if to > MAX_LEVEL {
        return Err(Failure::Validation(format!("--to is limited to {MAX_LEVEL}")));
    }
    let rows = spectrum::spectrum_table(from, to);
    let bad: Vec<u64> = rows.iter().filter(|r| !r.consistent()).map(|r| r.n).collect();
    let csv = spectrum::spectrum_csv(&rows);
    Ok(Output::new(&rows, csv).breach_if(!bad.is_empty(), || format!("counts disagree at N = {bad:?}")))
}

#[derive(Serialize)]
struct DeformDoc {
    #[serde(serialize_with = "rational::serialize")]
    k: Rational,
    #[serde(serialize_with = "rational::serialize")]
    l: Rational,
    dim: usize,
    #[serde(serialize_with = "rational::serialize")]
    scale_sq: Rational,
    scale: f64,
    f: Poly,
    f_text: String,
    residuals: defosc::DeformResiduals,
    exact: bool,
}

fn cmd_deform(k: &Option<Rational>, l: &Option<Rational>, fermion: bool, tol: f64) -> Result<Output, Failure> {
    if fermion {
        let r = defosc::fermion_check()?;
        let csv = kv_csv(&[
            ("commutator_shape", r.commutator_shape.to_string()),
            ("polynomial_identity", r.polynomial_identity.to_string()),
            ("nilpotent", r.nilpotent.to_string()),
            ("matches_deform", r.matches_deform.to_string()),
            ("f_poly_matches", r.f_poly_matches.to_string()),
        ]);
        let ok = r.passed();
        return Ok(Output::new(&r, csv).breach_if(!ok, || "fermion check failed".into()));
    }
    let lab = quadratic_label(SectorArg::Compact, k, l)?;
    check_dim(lab.span() + 1, "representation dimension")?;
    let osc = defosc::deform_label(&lab)?;
    let res = osc.residuals();
    let exact = osc.exact_check();
    let mut csv = String::from("n,N,F(N),commutator\n");
    let comm = osc.exact_commutator_diagonal();
    for (n, c) in comm.iter().enumerate() {
        let nv = osc.n[(n, n)];
        csv.push_str(&format!("{n},{},{},{}\n", fmt_f64(nv), fmt_f64(osc.f.eval_f64(nv)), rational::display(c)));
    }
    let doc = DeformDoc {
        k: lab.k().clone(),
        l: lab.l().clone(),
        dim: osc.dim(),
        scale_sq: osc.scale_sq.clone(),
        scale: osc.scale,
        f_text: osc.f.to_string(),
        f: osc.f.clone(),
        residuals: res,
        exact,
    };
    let worst = res.max();
    Ok(Output::new(&doc, csv)
        .breach_if(worst > tol || !exact, || format!("commutator residual {worst:e}, exact {exact}")))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Rep(a) => cmd_rep(a),
        Command::Verify { label, tol } => cmd_verify(label, *tol),
        Command::Casimir { label, tol } => cmd_casimir(label, *tol),
        Command::Diffcheck(a) => cmd_diffcheck(a),
        Command::Coherent(a) => cmd_coherent(a),
        Command::Measure(a) => cmd_measure(a),
        Command::Spectrum { from, to } => cmd_spectrum(*from, *to),
        Command::Deform { k, l, fermion, tol } => cmd_deform(k, l, *fermion, *tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.json),
                Format::Csv => print!("{}", out.csv),
            }
            match out.breach {
                Some(msg) => {
                    eprintln!("error: tolerance exceeded: {msg}");
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Tolerance(msg)) => {
            eprintln!("error: tolerance exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
