//! Finite-dimensional irreducible representations E^λ with their contravariant
//! Hermitian form.
//!
//! Exact data live in a weight basis of F-monomials applied to the highest
//! vector v, with an explicit block-diagonal Gram matrix. Floating operators
//! are expressed in the orthonormal basis obtained by a Cholesky factorization
//! of each weight block, so adjoints become conjugate transposes and π(k) is
//! unitary for k in the compact group. The highest vector is the first basis
//! vector in both bases.

mod verma;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

pub use verma::Verma;

use crate::error::{Error, Result};
use crate::exact::{self, Mat};
use crate::rootsys::{Letter, RootDatum, Weight};
use crate::scalar::{q, q_to_f64, Coeff, GaussQ, Q};
use crate::uea::{Mono, Pbw};

pub const DEFAULT_DIM_CAP: usize = 200;

/// One weight space of E^λ.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    /// λ − μ in simple-root coordinates.
    pub depth: Vec<i64>,
    /// μ in simple-coroot coordinates.
    pub weight: Vec<i64>,
    /// Index of the first basis vector of this space.
    pub start: usize,
    /// F-monomials m with m v spanning this space, one per basis vector.
    pub monomials: Vec<Mono>,
}

/// E^λ for dominant integral λ.
#[derive(Debug)]
pub struct HighestWeightRep {
    rd: Arc<RootDatum>,
    lambda: Weight,
    spaces: Vec<WeightSpace>,
    gram: Mat<Q>,
    gens: Vec<Mat<Q>>,
    // orthonormalizing change of basis (block upper-triangular Lᵀ) and inverse
    to_ortho: DMatrix<f64>,
    from_ortho: DMatrix<f64>,
    gens_f: Vec<DMatrix<Complex64>>,
}

fn enumerate_monomials(rd: &RootDatum, depth: &[i64], memo: &mut HashMap<Vec<i64>, Vec<Mono>>) -> Vec<Mono> {
    if let Some(hit) = memo.get(depth) {
        return hit.clone();
    }
    let out = if depth.iter().all(|&x| x == 0) {
        vec![Vec::new()]
    } else {
        let mut out = Vec::new();
        for (k, beta) in rd.positive_roots().iter().enumerate() {
            let rest: Vec<i64> = depth.iter().zip(beta).map(|(a, b)| a - b).collect();
            if rest.iter().any(|&x| x < 0) {
                continue;
            }
            let f = rd.f_letter(k) as u8;
            for m in enumerate_monomials(rd, &rest, memo) {
                if m.first().is_none_or(|&x| x >= f) {
                    let mut n = vec![f];
                    n.extend(m);
                    out.push(n);
                }
            }
        }
        out.sort();
        out
    };
    memo.insert(depth.to_vec(), out.clone());
    out
}

impl HighestWeightRep {
    pub fn build(rd: &Arc<RootDatum>, lambda: &Weight) -> Result<Self> {
        Self::build_capped(rd, lambda, DEFAULT_DIM_CAP)
    }

    pub fn build_capped(rd: &Arc<RootDatum>, lambda: &Weight, cap: usize) -> Result<Self> {
        let r = rd.rank();
        if lambda.rank() != r {
            return Err(Error::Usage(format!("weight {lambda} has rank {}, type {} has rank {r}", lambda.rank(), rd.label())));
        }
        let lam = lambda.to_ints().filter(|v| v.iter().all(|&x| x >= 0)).ok_or_else(|| Error::Usage(format!("{lambda} is not dominant integral")))?;
        let expected = rd.weyl_dimension(lambda);
        if expected > q(cap as i64) {
            return Err(Error::Resource(format!("dim E^{lambda} = {expected} exceeds cap {cap}")));
        }
        let mut verma = Verma::new(rd, &lam);
        let mut memo = HashMap::new();
        let mut spaces: Vec<WeightSpace> = Vec::new();
        let mut grams: Vec<Mat<Q>> = Vec::new();
        let mut gram_invs: Vec<Mat<Q>> = Vec::new();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut frontier: Vec<Vec<i64>> = vec![vec![0; r]];
        let mut total = 0usize;
        while !frontier.is_empty() {
            let mut next: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
            for depth in &frontier {
                let cands = enumerate_monomials(rd, depth, &mut memo);
                let full: Mat<Q> = cands.iter().map(|m| cands.iter().map(|n| verma.form(m, n)).collect()).collect();
                let chosen = exact::independent_subset(&full);
                if chosen.is_empty() {
                    continue;
                }
                let g: Mat<Q> = chosen.iter().map(|&i| chosen.iter().map(|&j| full[i][j].clone()).collect()).collect();
                let ginv = exact::inverse(&g).ok_or_else(|| Error::Internal("singular weight-space Gram".into()))?;
                let weight: Vec<i64> = (0..r).map(|i| lam[i] - (0..r).map(|j| depth[j] * rd.cartan()[i][j]).sum::<i64>()).collect();
                index.insert(depth.clone(), spaces.len());
                spaces.push(WeightSpace { depth: depth.clone(), weight, start: total, monomials: chosen.iter().map(|&i| cands[i].clone()).collect() });
                total += chosen.len();
                if total > cap {
                    return Err(Error::Resource(format!("dimension exceeds cap {cap}")));
                }
                grams.push(g);
                gram_invs.push(ginv);
                for i in 0..r {
                    let mut d = depth.clone();
                    d[i] += 1;
                    next.insert(d, ());
                }
            }
            frontier = next.into_keys().collect();
        }
        if q(total as i64) != expected {
            return Err(Error::Internal(format!("built dimension {total}, Weyl formula gives {expected}")));
        }

        let n = total;
        let mut gram = exact::zeros::<Q>(n, n);
        for (s, g) in spaces.iter().zip(&grams) {
            for (i, row) in g.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    gram[s.start + i][s.start + j] = x.clone();
                }
            }
        }
        let mut gens = Vec::with_capacity(rd.dim());
        for a in 0..rd.dim() {
            let mut m = exact::zeros::<Q>(n, n);
            let shift = rd.letter_root(a);
            for s in &spaces {
                let target: Vec<i64> = s.depth.iter().zip(&shift).map(|(d, x)| d - x).collect();
                if let Letter::H(i) = rd.letter(a) {
                    for j in 0..s.monomials.len() {
                        m[s.start + j][s.start + j] = q(s.weight[i]);
                    }
                    continue;
                }
                let Some(&t) = index.get(&target) else { continue };
                let ts = &spaces[t];
                for (j, mono) in s.monomials.iter().enumerate() {
                    let image = verma.act(a, mono);
                    let pair: Vec<Q> = ts.monomials.iter().map(|b| image.iter().fold(Q::zero(), |acc, (nk, c)| acc + c * verma.form(b, nk))).collect();
                    for (i, row) in gram_invs[t].iter().enumerate() {
                        let v = row.iter().zip(&pair).fold(Q::zero(), |acc, (x, y)| acc + x * y);
                        m[ts.start + i][s.start + j] = v;
                    }
                }
            }
            gens.push(m);
        }

        let mut to_ortho = DMatrix::<f64>::zeros(n, n);
        for (s, g) in spaces.iter().zip(&grams) {
            let k = g.len();
            let gf = DMatrix::from_fn(k, k, |i, j| q_to_f64(&g[i][j]));
            let chol = gf.cholesky().ok_or_else(|| Error::Internal(format!("Gram of weight {:?} not positive definite", s.weight)))?;
            let lt = chol.l().transpose();
            to_ortho.view_mut((s.start, s.start), (k, k)).copy_from(&lt);
        }
        let from_ortho = to_ortho.clone().try_inverse().ok_or_else(|| Error::Internal("orthonormalization not invertible".into()))?;
        let gens_f = gens
            .iter()
            .map(|g| {
                let gf = DMatrix::from_fn(n, n, |i, j| q_to_f64(&g[i][j]));
                (&to_ortho * gf * &from_ortho).map(|x| Complex64::new(x, 0.0))
            })
            .collect();
        Ok(HighestWeightRep { rd: rd.clone(), lambda: lambda.clone(), spaces, gram, gens, to_ortho, from_ortho, gens_f })
    }

    pub fn root_datum(&self) -> &Arc<RootDatum> {
        &self.rd
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn weight_spaces(&self) -> &[WeightSpace] {
        &self.spaces
    }

    /// Weight of every basis vector, in order.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        self.spaces.iter().flat_map(|s| std::iter::repeat_n(s.weight.clone(), s.monomials.len())).collect()
    }

    /// Exact Gram matrix of the contravariant form in the weight basis.
    pub fn gram(&self) -> &Mat<Q> {
        &self.gram
    }

    /// Determinant of the Gram matrix restricted to each weight space, in
    /// the order of `weight_spaces`.
    pub fn gram_determinants(&self) -> Vec<Q> {
        self.spaces
            .iter()
            .map(|ws| {
                let idx = ws.start..ws.start + ws.monomials.len();
                let block: Mat<Q> = idx.clone().map(|i| idx.clone().map(|j| self.gram[i][j].clone()).collect()).collect();
                crate::exact::determinant(&block)
            })
            .collect()
    }

    /// Exact matrix of the letter X_a in the weight basis.
    pub fn generator(&self, a: usize) -> &Mat<Q> {
        &self.gens[a]
    }

    /// Floating matrix of X_a in the orthonormal basis.
    pub fn generator_f(&self, a: usize) -> &DMatrix<Complex64> {
        &self.gens_f[a]
    }

    /// Change of coordinates weight basis → orthonormal basis.
    pub fn to_orthonormal(&self) -> &DMatrix<f64> {
        &self.to_ortho
    }

    pub fn from_orthonormal(&self) -> &DMatrix<f64> {
        &self.from_ortho
    }

    fn check<S: Coeff>(&self, u: &Pbw<S>) -> Result<()> {
        if u.root_datum().id() != self.rd.id() {
            return Err(Error::Usage("element and representation over different root data".into()));
        }
        Ok(())
    }

    /// π_λ(u) exactly, in the weight basis.
    pub fn represent_exact(&self, u: &Pbw<GaussQ>) -> Result<Mat<GaussQ>> {
        self.check(u)?;
        let n = self.dim();
        let gens: Vec<Mat<GaussQ>> = self.gens.iter().map(|g| g.iter().map(|row| row.iter().map(|x| GaussQ::real(x.clone())).collect()).collect()).collect();
        let mut out = exact::zeros::<GaussQ>(n, n);
        for (m, c) in u.terms() {
            let mut acc = exact::identity::<GaussQ>(n);
            for &a in m {
                acc = exact::matmul(&acc, &gens[a as usize]);
            }
            for i in 0..n {
                for j in 0..n {
                    if !acc[i][j].is_zero() {
                        out[i][j] = &out[i][j] + &(&acc[i][j] * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// π_λ(u) in the orthonormal basis.
    pub fn represent<S: Coeff>(&self, u: &Pbw<S>) -> Result<DMatrix<Complex64>> {
        self.check(u)?;
        let n = self.dim();
        let mut out = DMatrix::<Complex64>::zeros(n, n);
        for (m, c) in u.terms() {
            let mut acc = DMatrix::<Complex64>::identity(n, n);
            for &a in m {
                acc *= &self.gens_f[a as usize];
            }
            out += acc * c.to_c64();
        }
        Ok(out)
    }

    /// π_λ(Y) for Y = Σ_j c_j Y_j in the compact basis; anti-Hermitian.
    pub fn represent_compact(&self, coeffs: &[f64]) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut out = DMatrix::<Complex64>::zeros(n, n);
        for (elem, &c) in self.rd.compact_basis().iter().zip(coeffs) {
            if c == 0.0 {
                continue;
            }
            for (a, z) in elem {
                out += &self.gens_f[*a] * (z.to_c64() * c);
            }
        }
        out
    }

    /// Exact coordinates of the weight-basis vector m v for an arbitrary
    /// F-monomial m (zero when its weight does not occur).
    pub fn monomial_vector(&self, m: &[u8]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        let lam = self.lambda.to_ints().expect("integral");
        let mut verma = Verma::new(&self.rd, &lam);
        let mut depth = vec![0i64; self.rd.rank()];
        for &x in m {
            for (d, c) in depth.iter_mut().zip(self.rd.letter_root(x as usize)) {
                *d -= c;
            }
        }
        let Some(s) = self.spaces.iter().find(|s| s.depth == depth) else { return out };
        let k = s.monomials.len();
        let g: Mat<Q> = (0..k).map(|i| (0..k).map(|j| self.gram[s.start + i][s.start + j].clone()).collect()).collect();
        let pair: Vec<Q> = s.monomials.iter().map(|b| verma.form(b, m)).collect();
        let coords = exact::solve(&g, &pair).expect("nonsingular block");
        for (i, c) in coords.into_iter().enumerate() {
            out[s.start + i] = c;
        }
        out
    }
}

#[cfg(test)]
mod tests;

impl HighestWeightRep {
    /// π_λ(k) in the orthonormal basis; unitary.
    pub fn group_action(&self, k: &crate::orbit::CompactGroupElement) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut out = DMatrix::<Complex64>::identity(n, n);
        for y in k.factors() {
            out *= self.represent_compact(y).exp();
        }
        out
    }
}
