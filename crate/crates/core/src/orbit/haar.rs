use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, LazyLock, Mutex};

use gauss_quad::GaussLegendre;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::CompactGroupElement;
use crate::error::{Error, Result};
use crate::repr::HighestWeightRep;
use crate::rootsys::{RootDatum, Weight};

/// Number of exponential factors in the random-walk sampler used outside
/// type A.
const WALK_STEPS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HaarMode {
    /// Euler-angle product rule (A1 only).
    Quadrature,
    MonteCarlo,
}

impl std::str::FromStr for HaarMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadrature" => Ok(HaarMode::Quadrature),
            "monte-carlo" | "mc" => Ok(HaarMode::MonteCarlo),
            other => Err(Error::Config(format!("unknown quadrature mode `{other}`"))),
        }
    }
}

/// Nodes on K with positive weights summing to one.
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureSet {
    pub mode: HaarMode,
    pub seed: Option<u64>,
    pub nodes: Vec<CompactGroupElement>,
    pub weights: Vec<f64>,
}

impl QuadratureSet {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(k_i), evaluated in parallel and summed in order.
    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(&CompactGroupElement) -> Complex64 + Sync + Send,
    {
        let vals: Vec<Complex64> = self.nodes.par_iter().zip(self.weights.par_iter()).map(|(k, w)| f(k) * *w).collect();
        vals.iter().sum()
    }

    /// Mean and standard error of f over an equal-weight sample.
    pub fn mean_and_stderr<F>(&self, f: F) -> (Complex64, f64)
    where
        F: Fn(&CompactGroupElement) -> Complex64 + Sync + Send,
    {
        let vals: Vec<Complex64> = self.nodes.par_iter().map(f).collect();
        let n = vals.len() as f64;
        let mean: Complex64 = vals.iter().sum::<Complex64>() / n;
        let var = vals.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / (n - 1.0).max(1.0);
        (mean, (var / n).sqrt())
    }
}

/// Haar nodes on K. In quadrature mode `n` is the per-axis order m and the
/// rule has 2m³ nodes; in Monte Carlo mode `n` is the sample count.
pub fn haar_samples(rd: &Arc<RootDatum>, n: usize, mode: HaarMode, seed: u64) -> Result<QuadratureSet> {
    match mode {
        HaarMode::Quadrature => euler_quadrature(rd, n),
        HaarMode::MonteCarlo => {
            if n == 0 {
                return Err(Error::Usage("sample count must be positive".into()));
            }
            let nodes: Vec<CompactGroupElement> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i as u64);
                    random_element(rd, &mut rng)
                })
                .collect();
            Ok(QuadratureSet { mode, seed: Some(seed), nodes, weights: vec![1.0 / n as f64; n] })
        }
    }
}

/// SU(2) as exp(a·iH) exp(b(E−F)) exp(c·iH) with a ∈ [0,2π), b ∈ [0,π/2],
/// c ∈ [0,π); Haar density sin 2b. Trapezoid in a and c, Gauss–Legendre in
/// sin²b.
fn euler_quadrature(rd: &RootDatum, m: usize) -> Result<QuadratureSet> {
    if rd.label() != "A1" {
        return Err(Error::Config(format!("quadrature mode is only available for A1, not {}", rd.label())));
    }
    let gl = GaussLegendre::new(m.max(2)).map_err(|e| Error::Config(e.to_string()))?;
    let na = 2 * m.max(2);
    let nc = m.max(2);
    let mut params = Vec::new();
    let mut weights = Vec::new();
    for &(x, wx) in gl.as_node_weight_pairs() {
        // u = sin²b turns sin 2b db into du on [0, 1]
        let u = (x + 1.0) / 2.0;
        let b = u.sqrt().asin();
        let wb = wx / 2.0;
        for ia in 0..na {
            for ic in 0..nc {
                let a = 2.0 * PI * ia as f64 / na as f64;
                let c = PI * ic as f64 / nc as f64;
                params.push((a, b, c));
                weights.push(wb / (na * nc) as f64);
            }
        }
    }
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let nodes = params.par_iter().map(|&(a, b, c)| CompactGroupElement::from_word(rd, &[(0, a), (1, b), (0, c)])).collect();
    Ok(QuadratureSet { mode: HaarMode::Quadrature, seed: None, nodes, weights })
}

/// Defining-representation data for type A: pseudo-inverse of the map from
/// compact coordinates to (Re, Im) of the matrix entries.
struct TypeA {
    size: usize,
    pinv: DMatrix<f64>,
}

static TYPE_A: LazyLock<Mutex<HashMap<u64, Arc<TypeA>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn type_a(rd: &Arc<RootDatum>) -> Arc<TypeA> {
    if let Some(hit) = TYPE_A.lock().unwrap().get(&rd.id()) {
        return hit.clone();
    }
    let rep = HighestWeightRep::build(rd, &Weight::fundamental(rd.rank(), 0)).expect("defining representation");
    let size = rep.dim();
    let dim = rd.dim();
    let mut a = DMatrix::<f64>::zeros(2 * size * size, dim);
    for j in 0..dim {
        let mut e = vec![0.0; dim];
        e[j] = 1.0;
        let m = rep.represent_compact(&e);
        for r in 0..size {
            for c in 0..size {
                a[(r * size + c, j)] = m[(r, c)].re;
                a[(size * size + r * size + c, j)] = m[(r, c)].im;
            }
        }
    }
    let pinv = a.pseudo_inverse(1e-12).expect("full-rank compact basis");
    let data = Arc::new(TypeA { size, pinv });
    TYPE_A.lock().unwrap().insert(rd.id(), data.clone());
    data
}

fn haar_unitary<R: Rng>(size: usize, rng: &mut R) -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(size, size, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * s, im * s)
    });
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DMatrix::from_fn(size, size, |i, j| if i == j { r[(i, i)] / r[(i, i)].norm() } else { Complex64::new(0.0, 0.0) });
    let u = q * phases;
    let det = u.determinant();
    let root = Complex64::from_polar(1.0, -det.arg() / size as f64);
    u * root
}

/// A Haar-distributed element of K (type A), or an element from a
/// well-mixed random walk of exponentials (other types).
pub fn random_element<R: Rng>(rd: &Arc<RootDatum>, rng: &mut R) -> CompactGroupElement {
    if rd.label().starts_with('A') {
        let ta = type_a(rd);
        let n = ta.size;
        let u = haar_unitary(n, rng);
        let (q, t) = u.schur().unpack();
        let mut theta: Vec<f64> = (0..n).map(|i| t[(i, i)].arg()).collect();
        let wind = (theta.iter().sum::<f64>() / (2.0 * PI)).round();
        theta[0] -= 2.0 * PI * wind;
        let d = DMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(0.0, theta[i]) } else { Complex64::new(0.0, 0.0) });
        let x = &q * d * q.adjoint();
        let mut rhs = nalgebra::DVector::<f64>::zeros(2 * n * n);
        for r in 0..n {
            for c in 0..n {
                rhs[r * n + c] = x[(r, c)].re;
                rhs[n * n + r * n + c] = x[(r, c)].im;
            }
        }
        let coeffs = &ta.pinv * rhs;
        CompactGroupElement::exp(rd, coeffs.as_slice())
    } else {
        let factors = (0..WALK_STEPS).map(|_| (0..rd.dim()).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()).collect();
        CompactGroupElement::from_factors(rd, factors)
    }
}
