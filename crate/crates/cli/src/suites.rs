//! Suite runners. Each returns named checks, a JSON data block and an
//! optional table for CSV output.

use std::sync::Arc;

use flagquant::orbit::{haar_samples, random_element, stabilizer_basis, CompactGroupElement, HaarMode, QuadratureSet};
use flagquant::repr::HighestWeightRep;
use flagquant::rootsys::{RootDatum, Weight};
use flagquant::scalar::{q, q_frac, GaussQ};
use flagquant::starprod::{berezin_family, classical_limit, classical_limit_exact_at_identity, rationality_check, LevelOptions};
use flagquant::symbols::{
    compact_norm, covariant_symbol, coxeter_twist_check, right_shift_derivative, s_lambda, stabilizer_invariance_error, trace_duality_check, CoherentSystem,
    Reference,
};
use flagquant::uea::{Pbw, SymPoly};
use flagquant::Error;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Suite};

const MC_CHUNK: usize = 25_000;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Human-readable acceptance condition, e.g. `< 1e-7`.
    pub condition: String,
    pub pass: bool,
    pub display: String,
}

fn display(v: f64) -> String {
    format!("{v:.3e}")
}

pub fn below(name: &str, value: f64, tol: f64) -> Check {
    Check { name: name.into(), value, condition: format!("< {tol:e}"), pass: value < tol, display: display(value) }
}

fn at_most(name: &str, value: f64, max: f64) -> Check {
    Check { name: name.into(), value, condition: format!("<= {max}"), pass: value <= max, display: format!("{value:.4}") }
}

/// Full-precision text for CSV cells.
fn full(v: f64) -> String {
    format!("{v:e}")
}

fn within(name: &str, value: f64, bound: f64) -> Check {
    Check { name: name.into(), value, condition: format!("<= {bound:e} (3 standard errors)"), pass: value <= bound, display: display(value) }
}

fn above(name: &str, value: f64, min: f64) -> Check {
    Check { name: name.into(), value, condition: format!("> {min:e}"), pass: value > min, display: display(value) }
}

fn in_range(name: &str, value: f64, lo: f64, hi: f64) -> Check {
    Check { name: name.into(), value, condition: format!("in [{lo}, {hi}]"), pass: (lo..=hi).contains(&value), display: format!("{value:.4}") }
}

fn flag(name: &str, ok: bool) -> Check {
    Check { name: name.into(), value: ok as u8 as f64, condition: "true".into(), pass: ok, display: ok.to_string() }
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub struct Outcome {
    pub checks: Vec<Check>,
    pub data: Value,
    pub table: Option<Table>,
}

/// Errors that stop a suite before any check runs.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Library(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Library(e)
    }
}

pub type RunResult<T> = Result<T, RunError>;

pub struct Context {
    pub rd: Arc<RootDatum>,
    pub lambda: Weight,
    pub cfg: ExperimentConfig,
}

impl Context {
    pub fn new(cfg: &ExperimentConfig) -> RunResult<Self> {
        let rd = Arc::new(RootDatum::build(&cfg.type_label)?);
        let lambda = parse_weight(&rd, &cfg.lambda)?;
        Ok(Context { rd, lambda, cfg: cfg.clone() })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed)
    }

    fn rep(&self) -> RunResult<HighestWeightRep> {
        if !self.lambda.is_dominant() || !self.lambda.is_integral() {
            return Err(RunError::Usage(format!("field `lambda`: {} must be dominant integral for this suite", self.lambda)));
        }
        Ok(HighestWeightRep::build_capped(&self.rd, &self.lambda, self.cfg.dim_cap)?)
    }

    fn quadrature(&self) -> bool {
        self.rd.label() == "A1"
    }

    fn level_options(&self) -> LevelOptions {
        LevelOptions { seed: self.cfg.seed, held_out: self.cfg.held_out, dim_cap: self.cfg.dim_cap, ..LevelOptions::default() }
    }

    fn poly(&self, field: &str, text: &str) -> RunResult<SymPoly<GaussQ>> {
        let text = alias_z(text);
        SymPoly::parse(&self.rd, &text).map_err(|e| RunError::Usage(format!("field `{field}`: {e}")))
    }

    fn fixed_u(&self) -> RunResult<Option<Pbw<GaussQ>>> {
        self.cfg.u.as_ref().map(|s| Pbw::parse(&self.rd, s).map_err(|e| RunError::Usage(format!("field `u`: {e}")))).transpose()
    }

    fn twist(&self) -> RunResult<Option<Vec<usize>>> {
        self.cfg.twist.as_ref().map(|s| parse_weyl_word(&self.rd, s)).transpose()
    }

    /// Monte Carlo sample sets of at most `MC_CHUNK` nodes covering `samples`.
    fn mc_chunks(&self) -> impl Iterator<Item = RunResult<QuadratureSet>> + '_ {
        let total = self.cfg.samples;
        (0..total.div_ceil(MC_CHUNK)).map(move |c| {
            let n = MC_CHUNK.min(total - c * MC_CHUNK);
            let seed = self.cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(c as u64);
            Ok(haar_samples(&self.rd, n, HaarMode::MonteCarlo, seed)?)
        })
    }
}

pub fn parse_weight(rd: &RootDatum, s: &str) -> RunResult<Weight> {
    let w: Weight = s.parse().map_err(|e: Error| RunError::Usage(format!("field `lambda`: {e}")))?;
    if w.rank() != rd.rank() {
        return Err(RunError::Usage(format!("field `lambda`: {w} has {} coordinates but {} has rank {}", w.rank(), rd.label(), rd.rank())));
    }
    Ok(w)
}

/// `e`, or 1-based simple reflection indices separated by commas.
pub fn parse_weyl_word(rd: &RootDatum, s: &str) -> RunResult<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if (1..=rd.rank()).contains(&i) => Ok(i - 1),
            _ => Err(RunError::Usage(format!("field `twist`: `{t}` is not a simple reflection index in 1..={}", rd.rank()))),
        })
        .collect()
}

fn coeff(rng: &mut ChaCha8Rng) -> GaussQ {
    GaussQ::new(q(rng.random_range(-3..=3)), q(rng.random_range(-1..=1)))
}

/// A sum of 1 to 3 random words of length ≤ `max_deg`.
pub fn random_u(rd: &Arc<RootDatum>, rng: &mut ChaCha8Rng, max_deg: usize) -> Pbw<GaussQ> {
    let terms = rng.random_range(1..=3);
    let words: Vec<(Vec<usize>, GaussQ)> = (0..terms)
        .map(|_| {
            let d = rng.random_range(0..=max_deg);
            ((0..d).map(|_| rng.random_range(0..rd.dim())).collect(), coeff(rng))
        })
        .collect();
    Pbw::from_words(rd, words).expect("letters are in range")
}

fn random_of_degree(rd: &Arc<RootDatum>, rng: &mut ChaCha8Rng, d: usize) -> Pbw<GaussQ> {
    loop {
        let terms = rng.random_range(2..=3);
        let words: Vec<(Vec<usize>, GaussQ)> = (0..terms).map(|_| ((0..d).map(|_| rng.random_range(0..rd.dim())).collect(), coeff(rng))).collect();
        let u = Pbw::from_words(rd, words).expect("letters are in range");
        if u.degree() == Some(d) {
            return u;
        }
    }
}

/// Weighted mean of a matrix-valued function and, for equal weights, its
/// entrywise standard error. Chunks are summed in order so the result does
/// not depend on the thread count.
fn matrix_stats<F>(sets: &[QuadratureSet], rows: usize, cols: usize, f: F) -> (DMatrix<Complex64>, DMatrix<f64>)
where
    F: Fn(&CompactGroupElement) -> DMatrix<Complex64> + Sync,
{
    let total: usize = sets.iter().map(|s| s.len()).sum();
    let mut mean = DMatrix::<Complex64>::zeros(rows, cols);
    let mut second = DMatrix::<f64>::zeros(rows, cols);
    for set in sets {
        let idx: Vec<usize> = (0..set.len()).collect();
        let parts: Vec<(DMatrix<Complex64>, DMatrix<f64>)> = idx
            .par_chunks(1024)
            .map(|chunk| {
                let mut s = DMatrix::<Complex64>::zeros(rows, cols);
                let mut s2 = DMatrix::<f64>::zeros(rows, cols);
                for &j in chunk {
                    let v = f(&set.nodes[j]);
                    s += &v * Complex64::new(set.weights[j] * set.len() as f64 / total as f64, 0.0);
                    s2 += v.map(|z| z.norm_sqr() / total as f64);
                }
                (s, s2)
            })
            .collect();
        for (s, s2) in parts {
            mean += s;
            second += s2;
        }
    }
    let quadrature = sets.iter().any(|s| s.mode == HaarMode::Quadrature);
    let n = total as f64;
    let se = DMatrix::from_fn(
        rows,
        cols,
        |i, j| {
            if quadrature || total < 2 {
                0.0
            } else {
                ((second[(i, j)] - mean[(i, j)].norm_sqr()).max(0.0) / (n - 1.0)).sqrt()
            }
        },
    );
    (mean, se)
}

impl Context {
    fn sample_sets(&self) -> RunResult<Vec<QuadratureSet>> {
        if self.quadrature() {
            Ok(vec![haar_samples(&self.rd, self.cfg.samples, HaarMode::Quadrature, self.cfg.seed)?])
        } else {
            self.mc_chunks().collect()
        }
    }
}

pub fn run(ctx: &Context) -> RunResult<Outcome> {
    match ctx.cfg.suite {
        Suite::Coherent => coherent(ctx),
        Suite::TraceDuality => trace_duality(ctx),
        Suite::CoxeterTwist => coxeter_twist(ctx),
        Suite::Stabilizer => stabilizer(ctx),
        Suite::ClassicalLimit => classical(ctx),
        Suite::Converge => converge(ctx, false),
        Suite::Family => converge(ctx, true),
        Suite::Rationality => rationality(ctx),
        Suite::Parseval => parseval(ctx),
    }
}

fn coherent(ctx: &Context) -> RunResult<Outcome> {
    let rep = ctx.rep()?;
    let lam = ctx.lambda.to_f64();
    let fixed = ctx.fixed_u()?;
    let mut rng = ctx.rng();
    let mut errs = Vec::new();
    for _ in 0..ctx.cfg.pairs {
        let u = fixed.clone().unwrap_or_else(|| random_u(&ctx.rd, &mut rng, 3));
        let k = random_element(&ctx.rd, &mut rng);
        let oracle = covariant_symbol(&rep, &rep.represent(&u)?, &k);
        errs.push((oracle - s_lambda(&u, &lam, &k)?).norm());
    }
    let max = errs.iter().copied().fold(0.0, f64::max);
    let mean = errs.iter().sum::<f64>() / errs.len() as f64;
    Ok(Outcome {
        checks: vec![below("max_error", max, ctx.cfg.tol)],
        data: json!({ "dim": rep.dim(), "pairs": errs.len(), "max_error": max, "mean_error": mean }),
        table: None,
    })
}

fn trace_duality(ctx: &Context) -> RunResult<Outcome> {
    let rep = ctx.rep()?;
    let fixed = ctx.fixed_u()?;
    let mut rng = ctx.rng();
    let sets = ctx.sample_sets()?;
    let total: usize = sets.iter().map(|s| s.len()).sum();
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for i in 0..ctx.cfg.pairs {
        let u1 = fixed.clone().unwrap_or_else(|| random_u(&ctx.rd, &mut rng, 2));
        let u2 = fixed.clone().unwrap_or_else(|| random_u(&ctx.rd, &mut rng, 2));
        let mut integral = Complex64::new(0.0, 0.0);
        let mut var = 0.0;
        let mut trace = Complex64::new(0.0, 0.0);
        for set in &sets {
            let r = trace_duality_check(&rep, &u1, &u2, set)?;
            let share = set.len() as f64 / total as f64;
            integral += r.integral * share;
            var += (r.stderr * share).powi(2);
            trace = r.trace;
        }
        let diff = (integral - trace).norm();
        let name = format!("pair_{i}");
        if ctx.quadrature() {
            checks.push(below(&name, diff, ctx.cfg.tol));
        } else {
            checks.push(within(&name, diff, 3.0 * var.sqrt()));
        }
        rows.push(json!({
            "u1": u1.to_string(), "u2": u2.to_string(),
            "integral": [integral.re, integral.im], "trace": [trace.re, trace.im],
            "difference": diff, "stderr": var.sqrt(),
        }));
    }
    Ok(Outcome { checks, data: json!({ "dim": rep.dim(), "samples": total, "pairs": rows }), table: None })
}

fn coxeter_twist(ctx: &Context) -> RunResult<Outcome> {
    let fixed = ctx.fixed_u()?;
    let mut rng = ctx.rng();
    let mut max = 0.0f64;
    for _ in 0..ctx.cfg.pairs {
        let u = fixed.clone().unwrap_or_else(|| random_u(&ctx.rd, &mut rng, 3));
        let k = random_element(&ctx.rd, &mut rng);
        max = max.max(coxeter_twist_check(&u, &ctx.lambda, &k)?.norm());
    }
    Ok(Outcome { checks: vec![below("max_error", max, ctx.cfg.tol)], data: json!({ "pairs": ctx.cfg.pairs, "max_error": max }), table: None })
}

fn stabilizer(ctx: &Context) -> RunResult<Outcome> {
    let reg = ctx.rd.regularity(&ctx.lambda);
    let lam = ctx.lambda.to_f64();
    let mut rng = ctx.rng();
    if reg.relatively_regular {
        let fixed = ctx.fixed_u()?;
        let ks: Vec<CompactGroupElement> = (0..4).map(|_| random_element(&ctx.rd, &mut rng)).collect();
        let mut max = 0.0f64;
        for _ in 0..ctx.cfg.pairs {
            let u = fixed.clone().unwrap_or_else(|| random_u(&ctx.rd, &mut rng, 3));
            max = max.max(stabilizer_invariance_error(&u, &ctx.lambda, &ks, &[0.3, 1.1, 2.5])?);
        }
        return Ok(Outcome {
            checks: vec![below("invariance_error", max, ctx.cfg.tol)],
            data: json!({ "relatively_regular": true, "vanishing_roots": reg.vanishing.iter().map(|&k| ctx.rd.root_name(k)).collect::<Vec<_>>(), "invariance_error": max }),
            table: None,
        });
    }
    // search quadratic words and stabilizer directions for the largest normalized derivative
    let dim = ctx.rd.dim();
    let mut best = (0.0f64, String::new(), 0usize);
    for j in stabilizer_basis(&ctx.rd, &ctx.lambda) {
        let mut y = vec![0.0; dim];
        y[j] = 1.0;
        let norm = compact_norm(&ctx.rd, &y);
        for a in 0..dim {
            for b in 0..dim {
                let u = Pbw::<GaussQ>::normal_order(&ctx.rd, &[a, b], GaussQ::int(1))?;
                let d = right_shift_derivative(&u, &lam, &y)?.norm() / norm;
                if d > best.0 + 1e-12 {
                    best = (d, format!("{} {}", ctx.rd.letter_name(a), ctx.rd.letter_name(b)), j);
                }
            }
        }
    }
    Ok(Outcome {
        checks: vec![above("witness_derivative", best.0, 0.1)],
        data: json!({
            "relatively_regular": false,
            "vanishing_roots": reg.vanishing.iter().map(|&k| ctx.rd.root_name(k)).collect::<Vec<_>>(),
            "witness": { "u": best.1, "compact_index": best.2, "normalized_derivative": best.0 },
        }),
        table: None,
    })
}

fn classical(ctx: &Context) -> RunResult<Outcome> {
    let fixed = ctx.fixed_u()?;
    let mut rng = ctx.rng();
    let lam = ctx.lambda.to_f64();
    let mut checks = Vec::new();
    let mut runs = Vec::new();
    let mut rows = Vec::new();
    for i in 0..ctx.cfg.pairs {
        let u = fixed.clone().unwrap_or_else(|| random_of_degree(&ctx.rd, &mut rng, 2 + i % 2));
        let k = random_element(&ctx.rd, &mut rng);
        let r = classical_limit(&u, &lam, &k, &ctx.cfg.t_grid)?;
        let worst = r.rows.iter().map(|x| x.1).fold(0.0, f64::max);
        match r.slope {
            _ if worst < ctx.cfg.tol => checks.push(below(&format!("u_{i}_max_error"), worst, ctx.cfg.tol)),
            Some(s) => checks.push(in_range(&format!("u_{i}_slope"), s, -1.2, -0.8)),
            None => checks.push(flag(&format!("u_{i}_slope_defined"), false)),
        }
        for (t, e) in &r.rows {
            rows.push(vec![i.to_string(), full(*t), full(*e), display(*e)]);
        }
        runs.push(json!({ "u": u.to_string(), "degree": r.degree, "limit": [r.limit.re, r.limit.im], "slope": r.slope }));
    }
    // pure-Cartan homogeneous elements have no error at the identity for any t
    let mut exact = true;
    for d in 1..=3 {
        let words: Vec<(Vec<usize>, GaussQ)> =
            (0..3).map(|_| ((0..d).map(|_| ctx.rd.h_letter(rng.random_range(0..ctx.rd.rank()))).collect(), GaussQ::int(rng.random_range(1..=4)))).collect();
        let h = Pbw::from_words(&ctx.rd, words)?;
        for t in [q_frac(3, 2), q_frac(27, 10), q_frac(17, 3), q(64)] {
            exact &= classical_limit_exact_at_identity(&h, &ctx.lambda, &t)?.is_zero();
        }
    }
    checks.push(flag("cartan_exact_at_identity", exact));
    Ok(Outcome {
        checks,
        data: json!({ "t_grid": ctx.cfg.t_grid, "runs": runs }),
        table: Some(Table { header: ["run", "t", "error", "error_display"].map(String::from).to_vec(), rows }),
    })
}

/// Replace the letter `z` (optionally with an exponent) by `H[a1]`.
fn alias_z(text: &str) -> String {
    text.split(' ')
        .map(|tok| match tok.strip_prefix('z') {
            Some(rest) if rest.is_empty() || rest.starts_with('^') => format!("H[a1]{rest}"),
            _ => tok.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), full)
}

fn converge(ctx: &Context, search_twist: bool) -> RunResult<Outcome> {
    let f1 = ctx.poly("f1", &ctx.cfg.f1)?;
    let f2 = ctx.poly("f2", &ctx.cfg.f2)?;
    let twist = match (ctx.twist()?, search_twist) {
        (Some(w), _) => Some(w),
        (None, true) => None,
        (None, false) => Some(Vec::new()),
    };
    let report = berezin_family(&ctx.rd, &ctx.lambda, twist.as_deref(), &f1, &f2, ctx.cfg.nmax, &ctx.level_options())?;
    let conv = &report.convergence;
    let mut checks = Vec::new();
    for (name, slope, errs) in [
        ("slope_e1", conv.slope_e1, conv.rows.iter().filter_map(|r| r.e1).collect::<Vec<_>>()),
        ("slope_e2", conv.slope_e2, conv.rows.iter().filter_map(|r| r.e2).collect::<Vec<_>>()),
    ] {
        let worst = errs.iter().copied().fold(0.0, f64::max);
        match slope {
            _ if !errs.is_empty() && worst < ctx.cfg.tol => checks.push(below(&format!("{}_max", &name[6..]), worst, ctx.cfg.tol)),
            Some(s) => checks.push(at_most(name, s, -0.8)),
            None => checks.push(flag(&format!("{name}_defined"), false)),
        }
    }
    checks.push(flag("weak_nesting", conv.weak_nesting));
    let rows = conv
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                opt(r.e1),
                opt(r.e2),
                opt(r.rational_residual),
                full(r.cond),
                r.dim.to_string(),
                r.in_algebra.to_string(),
                r.e1.map_or(String::new(), display),
                r.e2.map_or(String::new(), display),
            ]
        })
        .collect();
    let header = ["n", "e1", "e2", "rational_residual", "cond", "dim", "in_algebra", "e1_display", "e2_display"].map(String::from).to_vec();
    let rational = report
        .rationality
        .as_ref()
        .map(|f| json!({ "m": f.m, "residual": f.residual, "deg_p": f.deg_p, "deg_q": f.deg_q, "finite_at_infinity": f.finite_at_infinity }));
    Ok(Outcome {
        checks,
        data: json!({
            "twist": report.twist.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "levels": report.levels.iter().map(|(n, h, d)| json!({ "n": n, "h": h, "dim": d })).collect::<Vec<_>>(),
            "slope_e1": conv.slope_e1,
            "slope_e2": conv.slope_e2,
            "membership_threshold": conv.membership_threshold,
            "weak_nesting": conv.weak_nesting,
            "rational_fit": rational,
        }),
        table: Some(Table { header, rows }),
    })
}

fn rationality(ctx: &Context) -> RunResult<Outcome> {
    let f1 = ctx.poly("f1", &ctx.cfg.f1)?;
    let f2 = ctx.poly("f2", &ctx.cfg.f2)?;
    if ctx.cfg.nmax < 9 {
        return Err(RunError::Usage("field `nmax`: the rational fit scans n = 4..nmax and needs nmax >= 9".into()));
    }
    let ns: Vec<u32> = (4..=ctx.cfg.nmax).collect();
    let max_degree = f1.degree().unwrap_or(0) + f2.degree().unwrap_or(0) + 2;
    let fit = rationality_check(&ctx.rd, &ctx.lambda, &f1, &f2, &ns, &ctx.level_options(), max_degree)?;
    let rows = fit.pointwise.iter().map(|(n, r)| vec![n.to_string(), full(*r), display(*r)]).collect();
    Ok(Outcome {
        checks: vec![below("residual", fit.residual, ctx.cfg.tol), flag("finite_at_infinity", fit.finite_at_infinity)],
        data: json!({
            "m": fit.m, "residual": fit.residual, "deg_p": fit.deg_p, "deg_q": fit.deg_q,
            "finite_at_infinity": fit.finite_at_infinity,
            "p": fit.p.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "q": fit.q.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
        }),
        table: Some(Table { header: ["n", "residual", "residual_display"].map(String::from).to_vec(), rows }),
    })
}

fn parseval(ctx: &Context) -> RunResult<Outcome> {
    let rep = ctx.rep()?;
    let d = rep.dim();
    let qd = d as f64;
    let sets = ctx.sample_sets()?;
    let mut rng = ctx.rng();
    let a = DMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let mut checks = Vec::new();
    let mut data = serde_json::Map::new();
    for (which, label) in [(Reference::Highest, "highest"), (Reference::Lowest, "lowest")] {
        let sys = CoherentSystem::new(&rep, which);
        let (b, se) = matrix_stats(&sets, d, d, |k| {
            let v = sys.vector(k);
            &v * v.adjoint() * Complex64::new(qd, 0.0)
        });
        let err = (b - DMatrix::<Complex64>::identity(d, d)).norm();
        let name = format!("identity_{label}");
        checks.push(if ctx.quadrature() { below(&name, err, ctx.cfg.tol) } else { within(&name, err, 3.0 * se.norm()) });
        data.insert(name, json!(err));
    }
    let sys = CoherentSystem::new(&rep, Reference::Highest);
    let (m, se) = matrix_stats(&sets, 1, 1, |k| DMatrix::from_element(1, 1, sys.covariant(&a, k) * qd));
    let err = (m[(0, 0)] - a.trace()).norm();
    checks.push(if ctx.quadrature() { below("trace", err, ctx.cfg.tol) } else { within("trace", err, 3.0 * se[(0, 0)]) });
    data.insert("trace".into(), json!(err));
    data.insert("dim".into(), json!(d));
    data.insert("samples".into(), json!(sets.iter().map(|s| s.len()).sum::<usize>()));
    Ok(Outcome { checks, data: Value::Object(data), table: None })
}

/// (k, s_λu(k)) over Haar samples, for `symbol eval`.
pub fn symbol_table(ctx: &Context, u: &Pbw<GaussQ>) -> RunResult<Table> {
    let sets = ctx.sample_sets()?;
    let lam = ctx.lambda.to_f64();
    let map = flagquant::symbols::SymbolMap::new(u, &lam)?;
    let mut rows = Vec::new();
    let mut i = 0usize;
    for set in &sets {
        let vals: Vec<Complex64> = set.nodes.par_iter().map(|k| map.eval(k)).collect();
        for ((k, w), v) in set.nodes.iter().zip(&set.weights).zip(vals) {
            let word: Vec<String> = k.factors().iter().map(|f| f.iter().map(|x| full(*x)).collect::<Vec<_>>().join(" ")).collect();
            rows.push(vec![i.to_string(), word.join(";"), full(*w), full(v.re), full(v.im), format!("{:.6}", v.re), format!("{:.6}", v.im)]);
            i += 1;
        }
    }
    Ok(Table { header: ["index", "k_word", "weight", "re", "im", "re_display", "im_display"].map(String::from).to_vec(), rows })
}

/// Algebra summary for `info`.
pub fn info(rd: &Arc<RootDatum>, lambda: Option<&Weight>, dim_cap: usize) -> RunResult<Value> {
    let orbit_dim = |w: &Weight| 2 * (0..rd.num_positive()).filter(|&k| rd.pair_coroot(w, k) != q(0)).count();
    let mut sample: Vec<(String, Weight)> = rd.fundamental_weights().into_iter().enumerate().map(|(i, w)| (format!("omega{}", i + 1), w)).collect();
    sample.push(("rho".into(), rd.rho()));
    let irreps: Vec<Value> = sample
        .iter()
        .map(|(name, w)| {
            json!({
                "name": name,
                "weight": w.to_string(),
                "dim": flagquant::scalar::q_to_f64(&rd.weyl_dimension(w)).round() as u64,
                "orbit_dim": orbit_dim(w),
                "relatively_regular": rd.regularity(w).relatively_regular,
            })
        })
        .collect();
    let mut out = json!({ "algebra": rd.summary(), "sample_weights": irreps });
    if let Some(w) = lambda {
        let reg = rd.regularity(w);
        let mut block = json!({
            "weight": w.to_string(),
            "orbit_dim": orbit_dim(w),
            "relatively_regular": reg.relatively_regular,
            "vanishing_roots": reg.vanishing.iter().map(|&k| rd.root_name(k)).collect::<Vec<_>>(),
        });
        if w.is_dominant() && w.is_integral() {
            let rep = HighestWeightRep::build_capped(rd, w, dim_cap)?;
            block["representation"] = json!({
                "dim": rep.dim(),
                "weights": rep.weight_spaces().iter().map(|ws| ws.weight.clone()).collect::<Vec<_>>(),
                "multiplicities": rep.weight_spaces().iter().map(|ws| ws.monomials.len()).collect::<Vec<_>>(),
                "gram_determinants": rep.gram_determinants().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            });
        }
        out["lambda"] = block;
    }
    Ok(out)
}
