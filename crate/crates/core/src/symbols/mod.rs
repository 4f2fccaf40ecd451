//! Symbol calculus on K: the maps s_λ, covariant symbols of operators,
//! contravariant reconstruction, trace pairings, mixed symbols and the
//! Coxeter twist.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact;
use crate::orbit::{coxeter_lift, CompactGroupElement, QuadratureSet};
use crate::repr::HighestWeightRep;
use crate::rootsys::{Letter, RootDatum, Weight};
use crate::scalar::{Coeff, GaussQ};
use crate::uea::{order_word, Mono, Pbw, SymPoly, DEFAULT_DEGREE_CAP};

/// Where the values of a sampled function came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Covariant,
    SMap,
    PolynomialRestriction,
    StarProduct,
}

/// A function on K known at the nodes of a quadrature set.
#[derive(Clone, Debug, Serialize)]
pub struct SampledFunction {
    pub values: Vec<Complex64>,
    pub lambda: Vec<f64>,
    pub provenance: Provenance,
}

impl SampledFunction {
    pub fn from_fn<F>(set: &QuadratureSet, lambda: &[f64], provenance: Provenance, f: F) -> Self
    where
        F: Fn(&CompactGroupElement) -> Complex64 + Sync + Send,
    {
        let values = set.nodes.par_iter().map(f).collect();
        SampledFunction { values, lambda: lambda.to_vec(), provenance }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_set(&self, set: &QuadratureSet) -> Result<()> {
        if self.values.len() != set.len() {
            return Err(Error::Usage(format!("function has {} samples but the set has {}", self.values.len(), set.len())));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.values.iter().zip(&o.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

type HcTable = Arc<Vec<(Mono, Vec<(Vec<u32>, i64)>)>>;

static ZERO_WORDS: LazyLock<Mutex<HashMap<(u64, usize), HcTable>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// All words of length d with total weight zero, each with the pure-Cartan
/// part of its normal ordering (exponents of H_1..H_r and an integer
/// coefficient).
fn zero_weight_words(rd: &RootDatum, d: usize) -> HcTable {
    if let Some(hit) = ZERO_WORDS.lock().unwrap().get(&(rd.id(), d)) {
        return hit.clone();
    }
    let n = rd.dim();
    let r = rd.rank();
    let roots: Vec<Vec<i64>> = (0..n).map(|a| rd.letter_root(a)).collect();
    let max_h = (0..n).map(|a| rd.letter_height(a).abs()).max().unwrap_or(0);
    let mut words = Vec::new();
    let mut stack: Vec<(Mono, Vec<i64>)> = vec![(Vec::new(), vec![0; r])];
    while let Some((w, wt)) = stack.pop() {
        if w.len() == d {
            if wt.iter().all(|&x| x == 0) {
                words.push(w);
            }
            continue;
        }
        let remaining = (d - w.len() - 1) as i64;
        for a in 0..n {
            let nw: Vec<i64> = wt.iter().zip(&roots[a]).map(|(x, y)| x + y).collect();
            if nw.iter().sum::<i64>().abs() > max_h * remaining {
                continue;
            }
            let mut ww = w.clone();
            ww.push(a as u8);
            stack.push((ww, nw));
        }
    }
    words.sort();
    let table: Vec<(Mono, Vec<(Vec<u32>, i64)>)> = words
        .into_par_iter()
        .map(|w| {
            let mut hc = Vec::new();
            for (m, c) in order_word(rd, &w) {
                let mut exps = vec![0u32; r];
                let pure = m.iter().all(|&x| match rd.letter(x as usize) {
                    Letter::H(i) => {
                        exps[i] += 1;
                        true
                    }
                    _ => false,
                });
                if pure {
                    hc.push((exps, c));
                }
            }
            (w, hc)
        })
        .filter(|(_, hc)| !hc.is_empty())
        .collect();
    let table = Arc::new(table);
    ZERO_WORDS.lock().unwrap().insert((rd.id(), d), table.clone());
    table
}

/// φ_λ on every zero-weight word of length d; with `symmetric`, each word
/// carries the mean over its distinct rearrangements, i.e. φ_λ of β of the
/// corresponding monomial.
fn phi_table(rd: &RootDatum, d: usize, lambda: &[f64], symmetric: bool) -> Vec<(Mono, Complex64)> {
    let t = zero_weight_words(rd, d);
    let raw: Vec<(Mono, f64)> = t
        .iter()
        .map(|(w, hc)| {
            let v: f64 = hc.iter().map(|(e, c)| *c as f64 * lambda.iter().zip(e).map(|(x, &k)| x.powi(k as i32)).product::<f64>()).sum();
            (w.clone(), v)
        })
        .collect();
    let vals: Vec<(Mono, f64)> = if symmetric {
        let mut sums: HashMap<Mono, f64> = HashMap::new();
        for (w, v) in &raw {
            let mut key = w.clone();
            key.sort_unstable();
            *sums.entry(key).or_insert(0.0) += v;
        }
        sums.into_iter()
            .flat_map(|(key, total)| {
                let perms = crate::uea::distinct_permutations(&key);
                let mean = total / perms.len() as f64;
                perms.into_iter().map(move |p| (p, mean))
            })
            .collect()
    } else {
        raw
    };
    vals.into_iter().filter(|(_, v)| *v != 0.0).map(|(w, v)| (w, Complex64::new(v, 0.0))).collect()
}

/// The function s_λ u on K for fixed u and real λ; evaluation at k computes
/// φ_λ(Ad(k⁻¹)u).
#[derive(Clone, Debug)]
pub struct SymbolMap {
    rd: Arc<RootDatum>,
    lambda: Vec<f64>,
    terms: Vec<(Mono, Complex64)>,
    tables: HashMap<usize, Arc<Vec<(Mono, Complex64)>>>,
}

impl SymbolMap {
    pub fn new<S: Coeff>(u: &Pbw<S>, lambda: &[f64]) -> Result<Self> {
        let terms = u.terms().iter().map(|(m, c)| (m.clone(), c.to_c64())).collect();
        Self::build(u.root_datum(), terms, lambda, false)
    }

    /// s_λ(β p) for p ∈ S(g), without expanding β p in the PBW basis.
    pub fn symmetrized<S: Coeff>(p: &SymPoly<S>, lambda: &[f64]) -> Result<Self> {
        let terms = p.terms().iter().map(|(m, c)| (m.clone(), c.to_c64())).collect();
        Self::build(p.root_datum(), terms, lambda, true)
    }

    fn build(rd: &Arc<RootDatum>, terms: Vec<(Mono, Complex64)>, lambda: &[f64], symmetric: bool) -> Result<Self> {
        if lambda.len() != rd.rank() {
            return Err(Error::Usage(format!("weight has {} coordinates, rank is {}", lambda.len(), rd.rank())));
        }
        let mut tables = HashMap::new();
        for (m, _) in &terms {
            let d = m.len();
            if d > DEFAULT_DEGREE_CAP {
                return Err(Error::Resource(format!("degree {d} exceeds the degree cap {DEFAULT_DEGREE_CAP}")));
            }
            tables.entry(d).or_insert_with(|| Arc::new(phi_table(rd, d, lambda, symmetric)));
        }
        Ok(SymbolMap { rd: rd.clone(), lambda: lambda.to_vec(), terms, tables })
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn root_datum(&self) -> &Arc<RootDatum> {
        &self.rd
    }

    pub fn eval(&self, k: &CompactGroupElement) -> Complex64 {
        let m = k.ad_inv();
        let mut total = Complex64::new(0.0, 0.0);
        for (mono, c) in &self.terms {
            let table = &self.tables[&mono.len()];
            let mut s = Complex64::new(0.0, 0.0);
            for (w, phi) in table.iter() {
                let mut p = *phi;
                for (&b, &a) in w.iter().zip(mono) {
                    p *= m[(b as usize, a as usize)];
                }
                s += p;
            }
            total += s * c;
        }
        total
    }

    pub fn sample(&self, set: &QuadratureSet) -> SampledFunction {
        SampledFunction::from_fn(set, &self.lambda, Provenance::SMap, |k| self.eval(k))
    }
}

/// s_λ u(k) = φ_λ(Ad(k⁻¹)u) for any real λ.
pub fn s_lambda<S: Coeff>(u: &Pbw<S>, lambda: &[f64], k: &CompactGroupElement) -> Result<Complex64> {
    Ok(SymbolMap::new(u, lambda)?.eval(k))
}

/// The PBW element of Y ∈ k given by compact-basis coordinates.
pub fn compact_element(rd: &Arc<RootDatum>, y: &[f64]) -> Pbw<Complex64> {
    let mut out = Pbw::zero(rd);
    for (elem, &c) in rd.compact_basis().iter().zip(y) {
        if c == 0.0 {
            continue;
        }
        for (a, z) in elem {
            let t = Pbw::letter(rd, *a).scale(&(z.to_c64() * c));
            out = out.add(&t).expect("same root datum");
        }
    }
    out
}

/// Which vector of E^λ generates the coherent system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reference {
    /// The highest weight vector v.
    Highest,
    /// v′ = w̃₀v, a lowest weight vector.
    Lowest,
}

/// Coherent vectors k·v (or k·v′) for a representation, in the orthonormal
/// basis.
pub struct CoherentSystem<'a> {
    rep: &'a HighestWeightRep,
    reference: DVector<Complex64>,
}

impl<'a> CoherentSystem<'a> {
    pub fn new(rep: &'a HighestWeightRep, which: Reference) -> Self {
        let n = rep.dim();
        let mut v = DVector::<Complex64>::zeros(n);
        v[0] = Complex64::new(1.0, 0.0);
        let reference = match which {
            Reference::Highest => v,
            Reference::Lowest => rep.group_action(&coxeter_lift(rep.root_datum())) * v,
        };
        CoherentSystem { rep, reference }
    }

    /// The system {k·x} for an arbitrary unit vector x.
    pub fn with_reference(rep: &'a HighestWeightRep, reference: DVector<Complex64>) -> Self {
        CoherentSystem { rep, reference }
    }

    pub fn reference(&self) -> &DVector<Complex64> {
        &self.reference
    }

    pub fn vector(&self, k: &CompactGroupElement) -> DVector<Complex64> {
        self.rep.group_action(k) * &self.reference
    }

    /// ⟨A v_k, v_k⟩.
    pub fn covariant(&self, a: &DMatrix<Complex64>, k: &CompactGroupElement) -> Complex64 {
        let v = self.vector(k);
        v.dotc(&(a * &v))
    }

    pub fn covariant_sampled(&self, a: &DMatrix<Complex64>, set: &QuadratureSet) -> SampledFunction {
        let lambda = self.rep.lambda().to_f64();
        SampledFunction::from_fn(set, &lambda, Provenance::Covariant, |k| self.covariant(a, k))
    }

    /// B = q Σ w_j g(k_j) P_{k_j}.
    pub fn reconstruct(&self, g: &SampledFunction, set: &QuadratureSet) -> Result<DMatrix<Complex64>> {
        g.check_set(set)?;
        let n = self.rep.dim();
        let q = n as f64;
        // fixed-size chunks summed in order keep the result independent of the thread count
        let idx: Vec<usize> = (0..set.len()).collect();
        let partial: Vec<DMatrix<Complex64>> = idx
            .par_chunks(1024)
            .map(|chunk| {
                chunk.iter().fold(DMatrix::<Complex64>::zeros(n, n), |acc, &j| {
                    let v = self.vector(&set.nodes[j]);
                    acc + (&v * v.adjoint()) * (g.values[j] * (set.weights[j] * q))
                })
            })
            .collect();
        let b = partial.into_iter().fold(DMatrix::<Complex64>::zeros(n, n), |a, b| a + b);
        Ok(b)
    }
}

/// Covariant symbol ⟨A·kv, kv⟩ of an operator in the orthonormal basis.
pub fn covariant_symbol(rep: &HighestWeightRep, a: &DMatrix<Complex64>, k: &CompactGroupElement) -> Complex64 {
    CoherentSystem::new(rep, Reference::Highest).covariant(a, k)
}

/// Contravariant reconstruction against the system generated by `which`.
pub fn contravariant_reconstruct(rep: &HighestWeightRep, g: &SampledFunction, set: &QuadratureSet, which: Reference) -> Result<DMatrix<Complex64>> {
    CoherentSystem::new(rep, which).reconstruct(g, set)
}

/// q Σ w_j f(k_j) g(k_j), with the standard error when the weights are equal.
pub fn trace_pairing(f: &SampledFunction, g: &SampledFunction, set: &QuadratureSet, q: usize) -> Result<(Complex64, f64)> {
    f.check_set(set)?;
    g.check_set(set)?;
    let q = q as f64;
    let terms: Vec<Complex64> = f.values.iter().zip(&g.values).map(|(a, b)| a * b * q).collect();
    let sum: Complex64 = terms.iter().zip(&set.weights).map(|(t, w)| t * *w).sum();
    let n = terms.len() as f64;
    let stderr = if n > 1.0 {
        let var = terms.iter().map(|t| (t - sum).norm_sqr()).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok((sum, stderr))
}

/// Both sides of the duality q∫ s_λu₁ · s_{w₀·λ′}u₂ dk = tr π_λ(u₁) π_λ(ǔ₂).
#[derive(Clone, Debug, Serialize)]
pub struct TracePairingReport {
    pub integral: Complex64,
    pub trace: Complex64,
    pub difference: f64,
    pub stderr: f64,
}

pub fn trace_duality_check(rep: &HighestWeightRep, u1: &Pbw<GaussQ>, u2: &Pbw<GaussQ>, set: &QuadratureSet) -> Result<TracePairingReport> {
    let rd = rep.root_datum();
    let lam = rep.lambda();
    let level = dual_twist_weight(rd, lam)?;
    let f = SymbolMap::new(u1, &lam.to_f64())?.sample(set);
    let g = SymbolMap::new(u2, &level)?.sample(set);
    let (integral, stderr) = trace_pairing(&f, &g, set, rep.dim())?;
    let trace = (rep.represent(u1)? * rep.represent(&u2.check_involution())?).trace();
    Ok(TracePairingReport { integral, trace, difference: (integral - trace).norm(), stderr })
}

/// w₀·λ′ as real coordinates.
pub fn dual_twist_weight(rd: &RootDatum, lambda: &Weight) -> Result<Vec<f64>> {
    Ok(rd.weyl_act(rd.longest_element(), &rd.dual_weight(lambda), true)?.to_f64())
}

/// s_{w₀·λ′}u(k) − s_{w₀·λ}ǔ(k·w̃₀⁻¹).
pub fn coxeter_twist_check(u: &Pbw<GaussQ>, lambda: &Weight, k: &CompactGroupElement) -> Result<Complex64> {
    let rd = u.root_datum();
    let left = SymbolMap::new(u, &dual_twist_weight(rd, lambda)?)?;
    let w0l = rd.weyl_act(rd.longest_element(), lambda, true)?.to_f64();
    let right = SymbolMap::new(&u.check_involution(), &w0l)?;
    let kw = k.compose(&coxeter_lift(rd).inverse());
    Ok(left.eval(k) - right.eval(&kw))
}

/// PBW elements whose images form a basis of End E^λ.
#[derive(Clone, Debug)]
pub struct SpanningSet {
    pub elements: Vec<Pbw<GaussQ>>,
    images: DMatrix<Complex64>,
}

pub(crate) fn monomials_of_degree(n: usize, d: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur: Mono = Vec::with_capacity(d);
    fn rec(n: usize, d: usize, start: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a as u8);
            rec(n, d, a, cur, out);
            cur.pop();
        }
    }
    rec(n, d, 0, &mut cur, &mut out);
    out
}

fn flatten_exact(m: &exact::Mat<GaussQ>) -> Vec<GaussQ> {
    m.iter().flat_map(|r| r.iter().cloned()).collect()
}

impl SpanningSet {
    /// PBW monomials by increasing degree, kept when their images are
    /// independent, until the images span End E^λ. A seed shuffles the
    /// candidates within each degree to produce a different preimage basis.
    pub fn build(rep: &HighestWeightRep, shuffle: Option<u64>) -> Result<Self> {
        let rd = rep.root_datum();
        let q = rep.dim();
        let target = q * q;
        let lam = rep.lambda();
        let lowest = rd.weyl_act(rd.longest_element(), lam, false)?;
        let depth: i64 = (lam - &lowest).coords().iter().map(|x| crate::scalar::q_to_f64(x).round() as i64).sum::<i64>().max(1);
        // twice the Dynkin-label sum of λ − w₀λ; the search stops at full rank
        let bound = (2 * depth as usize).min(DEFAULT_DEGREE_CAP);
        let mut rng = shuffle.map(ChaCha8Rng::seed_from_u64);
        let mut chosen: Vec<Pbw<GaussQ>> = Vec::new();
        let mut basis: Vec<(usize, Vec<GaussQ>)> = Vec::new();
        for d in 0..=bound {
            let mut cands = monomials_of_degree(rd.dim(), d);
            if let Some(r) = rng.as_mut() {
                cands.shuffle(r);
            }
            for m in cands {
                let u = Pbw::normal_order(rd, &m.iter().map(|&a| a as usize).collect::<Vec<_>>(), GaussQ::int(1))?;
                let mut w = flatten_exact(&rep.represent_exact(&u)?);
                reduce_against(&mut w, &basis);
                if let Some(pc) = w.iter().position(|x| !x.is_zero()) {
                    let inv = w[pc].inv().expect("nonzero pivot");
                    for x in w.iter_mut() {
                        *x = &*x * &inv;
                    }
                    basis.push((pc, w));
                    chosen.push(u);
                    if chosen.len() == target {
                        break;
                    }
                }
            }
            if chosen.len() == target {
                break;
            }
        }
        if chosen.len() < target {
            return Err(Error::Internal(format!("PBW monomials up to degree {bound} span only {} of {target} dimensions", chosen.len())));
        }
        let mut images = DMatrix::<Complex64>::zeros(target, target);
        for (j, u) in chosen.iter().enumerate() {
            let m = rep.represent(u)?;
            for (i, z) in m.iter().enumerate() {
                images[(i, j)] = *z;
            }
        }
        Ok(SpanningSet { elements: chosen, images })
    }

    /// u = Σ c_i u_i with π(u) = A.
    pub fn preimage(&self, a: &DMatrix<Complex64>) -> Result<Pbw<Complex64>> {
        let rhs = DVector::from_iterator(a.len(), a.iter().copied());
        let c = self.images.clone().lu().solve(&rhs).ok_or_else(|| Error::Internal("spanning images are singular".into()))?;
        let rd = self.elements[0].root_datum();
        let mut out = Pbw::zero(rd);
        for (u, ci) in self.elements.iter().zip(c.iter()) {
            out = out.add(&u.to_complex().scale(ci))?;
        }
        Ok(out)
    }
}

fn reduce_against(w: &mut [GaussQ], basis: &[(usize, Vec<GaussQ>)]) {
    for (pc, row) in basis {
        if !w[*pc].is_zero() {
            let f = w[*pc].clone();
            for j in 0..w.len() {
                if !row[j].is_zero() {
                    w[j] = w[j].clone() - &f * &row[j];
                }
            }
        }
    }
}

/// A mixed symbol of A ∈ End E^λ for the Weyl word w: the function
/// s_{w·λ}u for any u with π_λ(u) = A.
pub fn mixed_symbol(rep: &HighestWeightRep, spanning: &SpanningSet, a: &DMatrix<Complex64>, w: &[usize]) -> Result<SymbolMap> {
    let rd = rep.root_datum();
    let level = rd.weyl_act(w, rep.lambda(), true)?;
    let u = spanning.preimage(a)?;
    SymbolMap::new(&u, &level.to_f64())
}

/// Right-shift variation s_λu(k·exp(tY)) − s_λu(k).
pub fn right_shift_variation<S: Coeff>(u: &Pbw<S>, lambda: &[f64], k: &CompactGroupElement, y: &[f64], t: f64) -> Result<Complex64> {
    let map = SymbolMap::new(u, lambda)?;
    let rd = u.root_datum();
    let ty: Vec<f64> = y.iter().map(|x| x * t).collect();
    let kl = k.compose(&CompactGroupElement::exp(rd, &ty));
    Ok(map.eval(&kl) - map.eval(k))
}

/// d/dt s_λu(exp(tY)) at t = 0, exactly: −φ_λ([Y, u]).
pub fn right_shift_derivative<S: Coeff>(u: &Pbw<S>, lambda: &[f64], y: &[f64]) -> Result<Complex64> {
    let rd = u.root_datum();
    let yy = compact_element(rd, y);
    let c = yy.commutator(&u.to_complex())?;
    Ok(-c.hc_project().eval_f64(lambda))
}

/// Norm of Y ∈ k for the positive form −(·,·).
pub fn compact_norm(rd: &Arc<RootDatum>, y: &[f64]) -> f64 {
    let v: Vec<Complex64> = compact_element(rd, y).terms().iter().fold(vec![Complex64::new(0.0, 0.0); rd.dim()], |mut acc, (m, c)| {
        acc[m[0] as usize] += c;
        acc
    });
    (-crate::orbit::killing_pair(rd, &v, &v).re).max(0.0).sqrt()
}

/// Largest right-shift variation over the stabilizer basis of λ.
pub fn stabilizer_invariance_error<S: Coeff>(u: &Pbw<S>, lambda: &Weight, ks: &[CompactGroupElement], ts: &[f64]) -> Result<f64> {
    let rd = u.root_datum();
    let map = SymbolMap::new(u, &lambda.to_f64())?;
    let mut worst = 0.0f64;
    for j in crate::orbit::stabilizer_basis(rd, lambda) {
        let mut y = vec![0.0; rd.dim()];
        for k in ks {
            for &t in ts {
                y[j] = t;
                let kl = k.compose(&CompactGroupElement::exp(rd, &y));
                worst = worst.max((map.eval(&kl) - map.eval(k)).norm());
            }
        }
    }
    Ok(worst)
}
