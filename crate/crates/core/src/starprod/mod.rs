//! Quantization of polynomial functions on Ω_λ at levels n, the star products
//! ∗_{1/n}, and the experiment suites for the classical limit.

mod fit;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::{eval_on_orbit, haar_samples, psi, CompactGroupElement, HaarMode, OrbitPoint, QuadratureSet};
use crate::repr::{HighestWeightRep, DEFAULT_DIM_CAP};
use crate::rootsys::{RootDatum, Weight};
use crate::scalar::{q, Coeff, GaussQ, Q};
use crate::symbols::{monomials_of_degree, CoherentSystem, Provenance, Reference, SampledFunction, SymbolMap};
use crate::uea::{Mono, Pbw, SymPoly};

pub use fit::{loglog_slope, rational_fit, RationalFit};

/// Sampling and tolerance settings for a level.
#[derive(Clone, Debug, Serialize)]
pub struct LevelOptions {
    pub seed: u64,
    /// Held-out samples used for all reported errors.
    pub held_out: usize,
    /// Fitting samples per candidate basis function.
    pub sample_factor: usize,
    /// Relative least-squares residual above which f is not in the algebra.
    pub residual_tol: f64,
    /// Gram-Schmidt threshold for discarding dependent basis functions.
    pub rank_tol: f64,
    /// Condition number that triggers one redraw of the fitting samples.
    pub cond_redraw: f64,
    /// Largest representation dimension a level may build.
    pub dim_cap: usize,
}

impl Default for LevelOptions {
    fn default() -> Self {
        LevelOptions { seed: 0, held_out: 48, sample_factor: 2, residual_tol: 1e-8, rank_tol: 1e-9, cond_redraw: 1e6, dim_cap: DEFAULT_DIM_CAP }
    }
}

/// Least-squares design for polynomials of degree ≤ D at one level.
#[derive(Debug)]
struct Design {
    columns: Vec<Mono>,
    scales: Vec<f64>,
    nodes: Vec<CompactGroupElement>,
    points: Vec<OrbitPoint>,
    matrix: DMatrix<Complex64>,
    pinv: DMatrix<Complex64>,
    cond: f64,
}

/// The algebra 𝒜_{1/n} on Ω_λ: functions s_{nλ}u pushed forward by Ψ_λ,
/// represented in E^{w·(nλ)}.
pub struct StarLevel {
    rd: Arc<RootDatum>,
    base: Weight,
    n: u32,
    twist: Vec<usize>,
    symbol_weight: Vec<f64>,
    rep: HighestWeightRep,
    opts: LevelOptions,
    held: QuadratureSet,
    held_points: Vec<OrbitPoint>,
    held_vectors: Vec<DVector<Complex64>>,
    designs: Mutex<HashMap<usize, Arc<Design>>>,
}

/// A quantized function: the symmetric preimage p, its PBW form, the
/// operator, and fit diagnostics.
#[derive(Clone, Debug)]
pub struct Quantized {
    pub preimage: SymPoly<Complex64>,
    pub element: Pbw<Complex64>,
    pub operator: DMatrix<Complex64>,
    pub residual: f64,
    pub held_out_error: f64,
    pub cond: f64,
}

/// Check that λ is relatively regular and w·(nλ) is dominant integral.
pub fn level_weight(rd: &RootDatum, base: &Weight, n: u32, twist: &[usize]) -> Result<Weight> {
    if !rd.regularity(base).relatively_regular {
        return Err(Error::Config(format!("{base} is not relatively regular")));
    }
    let nl = base.scale(&q(n as i64));
    let mu = rd.weyl_act(twist, &nl, true)?;
    if !mu.is_dominant() || !mu.is_integral() {
        return Err(Error::Config(format!("w·(nλ) = {mu} is not dominant integral at n = {n}")));
    }
    Ok(mu)
}

impl StarLevel {
    pub fn new(rd: &Arc<RootDatum>, base: &Weight, n: u32, twist: &[usize], opts: LevelOptions) -> Result<Self> {
        let mu = level_weight(rd, base, n, twist)?;
        let rep = HighestWeightRep::build_capped(rd, &mu, opts.dim_cap)?;
        let held = haar_samples(rd, opts.held_out, HaarMode::MonteCarlo, opts.seed.wrapping_add(0x5eed))?;
        let lam = base.to_f64();
        let held_points = held.nodes.par_iter().map(|k| psi(rd, &lam, k)).collect();
        let held_vectors = if twist.is_empty() {
            let sys = CoherentSystem::new(&rep, Reference::Highest);
            held.nodes.par_iter().map(|k| sys.vector(k)).collect()
        } else {
            Vec::new()
        };
        Ok(StarLevel {
            rd: rd.clone(),
            base: base.clone(),
            n,
            twist: twist.to_vec(),
            symbol_weight: base.scale(&q(n as i64)).to_f64(),
            rep,
            opts,
            held,
            held_points,
            held_vectors,
            designs: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rep(&self) -> &HighestWeightRep {
        &self.rep
    }

    pub fn held_out(&self) -> &QuadratureSet {
        &self.held
    }

    pub fn held_points(&self) -> &[OrbitPoint] {
        &self.held_points
    }

    /// Condition number of the design for degree ≤ d.
    pub fn cond(&self, d: usize) -> Result<f64> {
        Ok(self.design(d)?.cond)
    }

    fn design(&self, d: usize) -> Result<Arc<Design>> {
        if let Some(hit) = self.designs.lock().unwrap().get(&d) {
            return Ok(hit.clone());
        }
        let mut design = self.build_design(d, 0)?;
        if design.cond > self.opts.cond_redraw {
            design = self.build_design(d, 1)?;
        }
        let design = Arc::new(design);
        self.designs.lock().unwrap().insert(d, design.clone());
        Ok(design)
    }

    fn build_design(&self, d: usize, attempt: u64) -> Result<Design> {
        let dim = self.rd.dim();
        let candidates: Vec<Mono> = (0..=d).flat_map(|k| monomials_of_degree(dim, k)).collect();
        let count = self.opts.sample_factor.max(2) * candidates.len();
        let seed = self.opts.seed.wrapping_add(1 + 7919 * d as u64 + 104_729 * attempt);
        let samples = haar_samples(&self.rd, count, HaarMode::MonteCarlo, seed)?;
        let lam = self.base.to_f64();
        let points: Vec<OrbitPoint> = samples.nodes.par_iter().map(|k| psi(&self.rd, &lam, k)).collect();
        let maps: Vec<SymbolMap> = candidates
            .iter()
            .map(|m| SymbolMap::symmetrized(&SymPoly::from_terms(&self.rd, [(m.clone(), Complex64::new(1.0, 0.0))]), &self.symbol_weight))
            .collect::<Result<_>>()?;
        let cols: Vec<Vec<Complex64>> = maps.par_iter().map(|map| samples.nodes.iter().map(|k| map.eval(k)).collect()).collect();
        // greedy modified Gram-Schmidt on normalized columns
        let mut kept: Vec<usize> = Vec::new();
        let mut ortho: Vec<DVector<Complex64>> = Vec::new();
        let mut scales = Vec::new();
        for (i, col) in cols.iter().enumerate() {
            let v = DVector::from_column_slice(col);
            let nv = v.norm();
            if nv == 0.0 {
                continue;
            }
            let mut w = &v / Complex64::new(nv, 0.0);
            for _ in 0..2 {
                for o in &ortho {
                    let c = o.dotc(&w);
                    w -= o * c;
                }
            }
            let r = w.norm();
            if r > self.opts.rank_tol {
                ortho.push(w / Complex64::new(r, 0.0));
                kept.push(i);
                scales.push(nv);
            }
        }
        let rows = samples.len();
        let matrix = DMatrix::from_fn(rows, kept.len(), |j, c| cols[kept[c]][j] / scales[c]);
        let svd = matrix.clone().svd(true, true);
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let smin = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
        let cond = if kept.is_empty() { 1.0 } else { smax / smin };
        let pinv = svd.pseudo_inverse(0.0).map_err(|e| Error::Internal(e.to_string()))?;
        Ok(Design { columns: kept.into_iter().map(|i| candidates[i].clone()).collect(), scales, nodes: samples.nodes, points, matrix, pinv, cond })
    }

    /// Values of the symbol of an operator (or of its preimage) at the
    /// held-out samples.
    fn held_symbol(&self, op: &DMatrix<Complex64>, element: &Pbw<Complex64>) -> Result<Vec<Complex64>> {
        if self.twist.is_empty() {
            Ok(self.held_vectors.iter().map(|v| v.dotc(&(op * v))).collect())
        } else {
            let map = SymbolMap::new(element, &self.symbol_weight)?;
            Ok(self.held.nodes.par_iter().map(|k| map.eval(k)).collect())
        }
    }

    /// Q_n(f): the operator whose symbol at level n is f∘Ψ_λ.
    pub fn quantize<S: Coeff>(&self, f: &SymPoly<S>) -> Result<Quantized> {
        let f = f.to_complex();
        let d = f.degree().unwrap_or(0);
        self.quantize_fn(d, |_, x| eval_on_orbit(&f, x))
    }

    /// Quantize a function given pointwise on K (with its orbit point), fitting
    /// against symbols of preimages of degree ≤ d.
    pub fn quantize_fn<F>(&self, d: usize, g: F) -> Result<Quantized>
    where
        F: Fn(&CompactGroupElement, &OrbitPoint) -> Complex64 + Sync,
    {
        let design = self.design(d)?;
        let y = DVector::from_vec(design.nodes.par_iter().zip(&design.points).map(|(k, x)| g(k, x)).collect());
        let c = &design.pinv * &y;
        let fitted = &design.matrix * &c;
        let scale = y.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let residual = (fitted - &y).iter().map(|v| v.norm()).fold(0.0, f64::max) / scale;
        if residual > self.opts.residual_tol {
            return Err(Error::NotInAlgebra { n: self.n, residual });
        }
        let preimage = SymPoly::from_terms(&self.rd, design.columns.iter().zip(c.iter()).zip(&design.scales).map(|((m, ci), s)| (m.clone(), ci / *s)));
        let element = Pbw::symmetrize(&preimage)?;
        let operator = self.rep.represent(&element)?;
        let got = self.held_symbol(&operator, &element)?;
        let held_out_error = got.iter().zip(self.held.nodes.iter().zip(&self.held_points)).map(|(v, (k, x))| (v - g(k, x)).norm()).fold(0.0, f64::max) / scale;
        Ok(Quantized { preimage, element, operator, residual, held_out_error, cond: design.cond })
    }

    /// f₁ ∗_{1/n} f₂ at the held-out samples, from already quantized factors.
    pub fn star_quantized(&self, a: &Quantized, b: &Quantized) -> Result<SampledFunction> {
        let op = &a.operator * &b.operator;
        let element = if self.twist.is_empty() { Pbw::zero(&self.rd) } else { a.element.mul(&b.element)? };
        let values = self.held_symbol(&op, &element)?;
        Ok(SampledFunction { values, lambda: self.base.to_f64(), provenance: Provenance::StarProduct })
    }

    pub fn star<S: Coeff>(&self, f1: &SymPoly<S>, f2: &SymPoly<S>) -> Result<SampledFunction> {
        self.star_quantized(&self.quantize(f1)?, &self.quantize(f2)?)
    }

    /// Restriction of a polynomial to the held-out orbit points.
    pub fn restrict<S: Coeff>(&self, f: &SymPoly<S>) -> SampledFunction {
        let values = self.held_points.iter().map(|x| eval_on_orbit(f, x)).collect();
        SampledFunction { values, lambda: self.base.to_f64(), provenance: Provenance::PolynomialRestriction }
    }
}

/// Errors of t^{-d} s_{tλ}u(k) against i^{-d} u̲(Ψ_λ(k)) along a grid of t.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalLimitReport {
    pub degree: usize,
    pub limit: Complex64,
    pub rows: Vec<(f64, f64)>,
    pub slope: Option<f64>,
}

pub fn classical_limit<S: Coeff>(u: &Pbw<S>, lambda: &[f64], k: &CompactGroupElement, ts: &[f64]) -> Result<ClassicalLimitReport> {
    let rd = u.root_datum();
    let (d, top) = u.principal_symbol()?;
    let x = psi(rd, lambda, k);
    let limit = eval_on_orbit(&top, &x) * Complex64::new(0.0, -1.0).powi(d as i32);
    let rows: Vec<(f64, f64)> = ts
        .par_iter()
        .map(|&t| {
            let tl: Vec<f64> = lambda.iter().map(|x| x * t).collect();
            let v = SymbolMap::new(u, &tl)?.eval(k) / t.powi(d as i32);
            Ok((t, (v - limit).norm()))
        })
        .collect::<Result<_>>()?;
    let slope = loglog_slope(&rows);
    Ok(ClassicalLimitReport { degree: d, limit, rows, slope })
}

/// The classical-limit error at k = e in exact arithmetic: t^{-d}φ_{tλ}(u) minus
/// i^{-d}u̲(iH^λ).
pub fn classical_limit_exact_at_identity(u: &Pbw<GaussQ>, lambda: &Weight, t: &Q) -> Result<GaussQ> {
    let rd = u.root_datum();
    let (d, top) = u.principal_symbol()?;
    let tl = lambda.scale(t);
    let mut td = Q::from_integer(1.into());
    for _ in 0..d {
        td *= t;
    }
    let lhs = u.phi(&tl).scale(&td.recip());
    // i^{-d}u̲(iH^λ): only pure-Cartan monomials survive, each contributing Πλ(H)
    let mut rhs = GaussQ::int(0);
    for (m, c) in top.terms() {
        let mut term = c.clone();
        for &a in m {
            match rd.letter(a as usize) {
                crate::rootsys::Letter::H(i) => term = term.scale(&lambda.coords()[i]),
                _ => {
                    term = GaussQ::int(0);
                    break;
                }
            }
        }
        rhs += term;
    }
    Ok(lhs - rhs)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub dim: usize,
    pub in_algebra: bool,
    pub e1: Option<f64>,
    pub e2: Option<f64>,
    pub cond: f64,
    /// Value (f₁∗f₂)(x) at the first held-out point, used by the rational fit.
    #[serde(skip)]
    pub probe: Option<Complex64>,
    pub rational_residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub slope_e1: Option<f64>,
    pub slope_e2: Option<f64>,
    /// Smallest n from which every scanned level contains f₁ and f₂.
    pub membership_threshold: Option<u32>,
    pub weak_nesting: bool,
}

fn sup_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// e₁ and e₂ at one level; `None` when f₁ or f₂ is not in the algebra.
pub fn level_errors<S: Coeff>(level: &StarLevel, f1: &SymPoly<S>, f2: &SymPoly<S>) -> Result<Option<(f64, f64, Complex64)>> {
    let q1 = match level.quantize(f1) {
        Ok(x) => x,
        Err(Error::NotInAlgebra { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let q2 = match level.quantize(f2) {
        Ok(x) => x,
        Err(Error::NotInAlgebra { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let s12 = level.star_quantized(&q1, &q2)?;
    let s21 = level.star_quantized(&q2, &q1)?;
    let prod = level.restrict(&f1.mul(f2)?);
    let br = level.restrict(&f1.poisson(f2)?);
    let n = level.n() as f64;
    let i = Complex64::new(0.0, 1.0);
    let d1: Vec<Complex64> = s12.values.iter().zip(&prod.values).map(|(a, b)| a - b).collect();
    let d2: Vec<Complex64> = s12.values.iter().zip(&s21.values).zip(&br.values).map(|((a, b), p)| (a - b) * n - i * p).collect();
    Ok(Some((sup_norm(&d1), sup_norm(&d2), s12.values[0])))
}

/// Run ∗_{1/n} for every n in `ns` (levels in parallel) and collect the
/// classical-limit errors.
pub fn correspondence_suite<S: Coeff>(
    rd: &Arc<RootDatum>,
    base: &Weight,
    twist: &[usize],
    f1: &SymPoly<S>,
    f2: &SymPoly<S>,
    ns: &[u32],
    opts: &LevelOptions,
) -> Result<ConvergenceReport> {
    let mut rows: Vec<ConvergenceRow> = ns
        .par_iter()
        .map(|&n| {
            let level = StarLevel::new(rd, base, n, twist, opts.clone())?;
            let d = f1.degree().unwrap_or(0).max(f2.degree().unwrap_or(0));
            let cond = level.cond(d)?;
            let errs = level_errors(&level, f1, f2)?;
            Ok(ConvergenceRow {
                n,
                dim: level.rep().dim(),
                in_algebra: errs.is_some(),
                e1: errs.map(|e| e.0),
                e2: errs.map(|e| e.1),
                cond,
                probe: errs.map(|e| e.2),
                rational_residual: None,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.n);
    let threshold = rows.iter().rposition(|r| !r.in_algebra).map_or(rows.first().map(|r| r.n), |i| rows.get(i + 1).map(|r| r.n));
    let first_in = rows.iter().position(|r| r.in_algebra);
    let weak_nesting = match first_in {
        Some(i) => rows[i..].iter().all(|r| r.in_algebra),
        None => true,
    };
    let top_half = |sel: fn(&ConvergenceRow) -> Option<f64>| {
        let pts: Vec<(f64, f64)> = rows.iter().filter_map(|r| sel(r).map(|e| (r.n as f64, e))).collect();
        let half = pts.len() / 2;
        loglog_slope(&pts[half..])
    };
    let slope_e1 = top_half(|r| r.e1);
    let slope_e2 = top_half(|r| r.e2);
    Ok(ConvergenceReport { rows, slope_e1, slope_e2, membership_threshold: threshold, weak_nesting })
}

/// Rational fit of n ↦ (f₁∗_{1/n}f₂)(x) at a fixed held-out point x.
pub fn rationality_check<S: Coeff>(
    rd: &Arc<RootDatum>,
    base: &Weight,
    f1: &SymPoly<S>,
    f2: &SymPoly<S>,
    ns: &[u32],
    opts: &LevelOptions,
    max_degree: usize,
) -> Result<RationalFit> {
    let report = correspondence_suite(rd, base, &[], f1, f2, ns, opts)?;
    let pts: Vec<(f64, Complex64)> = report.rows.iter().filter_map(|r| r.probe.map(|v| (r.n as f64, v))).collect();
    if pts.len() < ns.len() {
        return Err(Error::NotInAlgebra { n: report.rows.iter().find(|r| !r.in_algebra).map_or(0, |r| r.n), residual: f64::NAN });
    }
    rational_fit(&pts, max_degree, 1e-6)
}

/// A Weyl element w with wλ and w·λ dominant, if any.
pub fn find_twist(rd: &RootDatum, base: &Weight) -> Option<Vec<usize>> {
    rd.weyl_group().iter().find_map(|w| {
        let a = rd.weyl_act(w, base, false).ok()?;
        let b = rd.weyl_act(w, base, true).ok()?;
        (a.is_dominant() && b.is_dominant()).then(|| w.clone())
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BerezinFamilyReport {
    pub twist: Vec<usize>,
    /// (n, h = 1/n, dim H_h)
    pub levels: Vec<(u32, f64, usize)>,
    pub convergence: ConvergenceReport,
    pub rationality: Option<RationalFit>,
}

/// The family {𝒜_{1/n}} with representations in E^{w·(nλ)}, n = 1..n_max,
/// with the correspondence suite and, when w = e, the rational fit.
pub fn berezin_family<S: Coeff>(
    rd: &Arc<RootDatum>,
    base: &Weight,
    twist: Option<&[usize]>,
    f1: &SymPoly<S>,
    f2: &SymPoly<S>,
    n_max: u32,
    opts: &LevelOptions,
) -> Result<BerezinFamilyReport> {
    let twist = match twist {
        Some(w) => w.to_vec(),
        None => find_twist(rd, base).ok_or_else(|| Error::Config(format!("no Weyl element makes both wλ and w·λ dominant for {base}")))?,
    };
    let mut levels = Vec::new();
    for n in 1..=n_max {
        let mu = level_weight(rd, base, n, &twist)?;
        let dim = rd.weyl_dimension(&mu);
        levels.push((n, 1.0 / n as f64, crate::scalar::q_to_f64(&dim) as usize));
    }
    let ns: Vec<u32> = (1..=n_max).collect();
    let mut convergence = correspondence_suite(rd, base, &twist, f1, f2, &ns, opts)?;
    let pts: Vec<(f64, Complex64)> = convergence.rows.iter().filter_map(|r| r.probe.map(|v| (r.n as f64, v))).collect();
    let rationality = if pts.len() >= 6 {
        let deg = f1.degree().unwrap_or(0) + f2.degree().unwrap_or(0) + 2;
        let fit = rational_fit(&pts, deg, 1e-6)?;
        for row in convergence.rows.iter_mut() {
            row.rational_residual = fit.pointwise.iter().find(|(n, _)| *n == row.n as f64).map(|(_, r)| *r);
        }
        Some(fit)
    } else {
        None
    };
    Ok(BerezinFamilyReport { twist, levels, convergence, rationality })
}
