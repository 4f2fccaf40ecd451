//! The compact group K numerically: group elements as products of exponentials
//! of compact-form elements, the adjoint action, the orbit map Ψ_λ, stabilizers,
//! Haar sampling, and evaluation of polynomials on coadjoint orbits.

mod haar;
mod iwasawa;

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use haar::{haar_samples, random_element, HaarMode, QuadratureSet};
pub use iwasawa::{iwasawa, Iwasawa};

use crate::rootsys::{RootDatum, Weight};
use crate::scalar::{q_to_f64, Coeff};
use crate::uea::SymPoly;

/// Floating data derived once per root datum.
#[derive(Debug)]
pub struct AdData {
    /// ad(Y_j) for the compact basis, in the Chevalley basis.
    pub compact_ad: Vec<DMatrix<Complex64>>,
    /// Killing form on the Chevalley basis.
    pub killing: DMatrix<f64>,
    /// Killing form inverse on the simple coroots.
    pub killing_h_inv: DMatrix<f64>,
}

static AD_CACHE: LazyLock<Mutex<HashMap<u64, Arc<AdData>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

pub fn ad_data(rd: &RootDatum) -> Arc<AdData> {
    if let Some(hit) = AD_CACHE.lock().unwrap().get(&rd.id()) {
        return hit.clone();
    }
    let n = rd.dim();
    let letter_ad: Vec<DMatrix<Complex64>> = (0..n)
        .map(|a| {
            let m = rd.ad_exact(a);
            DMatrix::from_fn(n, n, |i, j| Complex64::new(q_to_f64(&m[i][j]), 0.0))
        })
        .collect();
    let compact_ad = rd
        .compact_basis()
        .iter()
        .map(|elem| {
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            for (a, z) in elem {
                m += &letter_ad[*a] * z.to_c64();
            }
            m
        })
        .collect();
    let k = rd.killing();
    let killing = DMatrix::from_fn(n, n, |i, j| q_to_f64(&k[i][j]));
    let r = rd.rank();
    let kh = rd.killing_cartan();
    let killing_h_inv = DMatrix::from_fn(r, r, |i, j| q_to_f64(&kh[i][j])).try_inverse().expect("Killing form nondegenerate on the Cartan");
    let data = Arc::new(AdData { compact_ad, killing, killing_h_inv });
    AD_CACHE.lock().unwrap().insert(rd.id(), data.clone());
    data
}

/// ad(Y) for Y with the given compact-basis coordinates.
pub fn ad_compact(rd: &RootDatum, coeffs: &[f64]) -> DMatrix<Complex64> {
    let data = ad_data(rd);
    let n = rd.dim();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for (a, &c) in data.compact_ad.iter().zip(coeffs) {
        if c != 0.0 {
            m += a * Complex64::new(c, 0.0);
        }
    }
    m
}

/// k = exp(Y_1) exp(Y_2) ⋯ exp(Y_m), each Y_i given by compact-basis
/// coordinates, with Ad(k) and Ad(k⁻¹) cached in the Chevalley basis.
#[derive(Clone, Debug)]
pub struct CompactGroupElement {
    factors: Vec<Vec<f64>>,
    ad: DMatrix<Complex64>,
    ad_inv: DMatrix<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    factors: Vec<Vec<f64>>,
}

impl Serialize for CompactGroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElementRepr { factors: self.factors.clone() }.serialize(s)
    }
}

impl CompactGroupElement {
    pub fn identity(rd: &RootDatum) -> Self {
        let n = rd.dim();
        CompactGroupElement { factors: Vec::new(), ad: DMatrix::identity(n, n), ad_inv: DMatrix::identity(n, n) }
    }

    pub fn from_factors(rd: &RootDatum, factors: Vec<Vec<f64>>) -> Self {
        let n = rd.dim();
        let mut ad = DMatrix::<Complex64>::identity(n, n);
        let mut ad_inv = DMatrix::<Complex64>::identity(n, n);
        for y in &factors {
            let m = ad_compact(rd, y);
            ad *= m.clone().exp();
            ad_inv = (-m).exp() * ad_inv;
        }
        CompactGroupElement { factors, ad, ad_inv }
    }

    /// Word of (compact-basis index, angle) pairs.
    pub fn from_word(rd: &RootDatum, word: &[(usize, f64)]) -> Self {
        let factors = word
            .iter()
            .map(|&(j, t)| {
                let mut y = vec![0.0; rd.dim()];
                y[j] = t;
                y
            })
            .collect();
        Self::from_factors(rd, factors)
    }

    pub fn exp(rd: &RootDatum, y: &[f64]) -> Self {
        Self::from_factors(rd, vec![y.to_vec()])
    }

    pub fn factors(&self) -> &[Vec<f64>] {
        &self.factors
    }

    /// Ad(k) on g in the Chevalley basis (columns are images of letters).
    pub fn ad(&self) -> &DMatrix<Complex64> {
        &self.ad
    }

    pub fn ad_inv(&self) -> &DMatrix<Complex64> {
        &self.ad_inv
    }

    pub fn inverse(&self) -> Self {
        CompactGroupElement {
            factors: self.factors.iter().rev().map(|y| y.iter().map(|x| -x).collect()).collect(),
            ad: self.ad_inv.clone(),
            ad_inv: self.ad.clone(),
        }
    }

    /// The product self · other.
    pub fn compose(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        CompactGroupElement { factors, ad: &self.ad * &other.ad, ad_inv: &other.ad_inv * &self.ad_inv }
    }
}

/// Representative of w₀ in the normalizer of the torus: the product over the
/// stored reduced word of exp((π/2)(E_i − F_i)).
pub fn coxeter_lift(rd: &RootDatum) -> CompactGroupElement {
    let r = rd.rank();
    let word: Vec<(usize, f64)> = rd.longest_element().iter().map(|&i| (r + 2 * i, std::f64::consts::FRAC_PI_2)).collect();
    CompactGroupElement::from_word(rd, &word)
}

/// A point of g given by Chevalley coordinates; points of orbits lie in k.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPoint {
    pub coords: Vec<Complex64>,
}

impl OrbitPoint {
    /// Coordinates in the compact basis, if the point lies in k.
    pub fn compact_coords(&self, rd: &RootDatum) -> Vec<f64> {
        let r = rd.rank();
        let mut out = Vec::with_capacity(rd.dim());
        for i in 0..r {
            out.push((self.coords[rd.h_letter(i)] * Complex64::new(0.0, -1.0)).re);
        }
        for k in 0..rd.num_positive() {
            let e = self.coords[rd.e_letter(k)];
            let f = self.coords[rd.f_letter(k)];
            out.push(((e - f) * 0.5).re);
            out.push(((e + f) * Complex64::new(0.0, -0.5)).re);
        }
        out
    }

    /// Distance from the compact real form: 0 exactly for points of k.
    pub fn compact_defect(&self, rd: &RootDatum) -> f64 {
        let mut d = 0.0f64;
        for i in 0..rd.rank() {
            d = d.max(self.coords[rd.h_letter(i)].re.abs());
        }
        for k in 0..rd.num_positive() {
            let e = self.coords[rd.e_letter(k)];
            let f = self.coords[rd.f_letter(k)];
            d = d.max((e + f.conj()).norm());
        }
        d
    }

    pub fn to_vector(&self) -> DVector<Complex64> {
        DVector::from_vec(self.coords.clone())
    }
}

/// Chevalley coordinates of H^λ for λ given by its simple-coroot pairings.
pub fn coroot_element_f64(rd: &RootDatum, lambda: &[f64]) -> Vec<f64> {
    let data = ad_data(rd);
    let l = DVector::from_column_slice(lambda);
    let h = &data.killing_h_inv * l;
    h.iter().copied().collect()
}

/// Ψ_λ(k) = Ad(k)(iH^λ), so that i·s_λX(k) = (X, Ψ_λ(k)).
pub fn psi(rd: &RootDatum, lambda: &[f64], k: &CompactGroupElement) -> OrbitPoint {
    let h = coroot_element_f64(rd, lambda);
    let mut x = DVector::<Complex64>::zeros(rd.dim());
    for (i, v) in h.iter().enumerate() {
        x[rd.h_letter(i)] = Complex64::new(0.0, *v);
    }
    let y = k.ad() * x;
    OrbitPoint { coords: y.iter().copied().collect() }
}

pub fn psi_weight(rd: &RootDatum, lambda: &Weight, k: &CompactGroupElement) -> OrbitPoint {
    psi(rd, &lambda.to_f64(), k)
}

/// Compact-basis indices spanning the stabilizer k^λ of iH^λ.
pub fn stabilizer_basis(rd: &RootDatum, lambda: &Weight) -> Vec<usize> {
    let r = rd.rank();
    let mut out: Vec<usize> = (0..r).collect();
    for k in rd.regularity(lambda).vanishing {
        out.push(r + 2 * k);
        out.push(r + 2 * k + 1);
    }
    out
}

/// Killing pairing (X, Y) of two points given in Chevalley coordinates.
pub fn killing_pair(rd: &RootDatum, x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let k = &ad_data(rd).killing;
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..x.len() {
        for b in 0..y.len() {
            let kab = k[(a, b)];
            if kab != 0.0 {
                s += x[a] * y[b] * kab;
            }
        }
    }
    s
}

/// Values (X_a, x) of the coordinate functions X̃_a at x.
pub fn linear_values(rd: &RootDatum, x: &OrbitPoint) -> Vec<Complex64> {
    let k = &ad_data(rd).killing;
    (0..rd.dim()).map(|a| (0..rd.dim()).map(|b| x.coords[b] * k[(a, b)]).sum()).collect()
}

/// Evaluate p ∈ S(g) at x ∈ g via X̃ ↦ (X, x).
pub fn eval_on_orbit<S: Coeff>(p: &SymPoly<S>, x: &OrbitPoint) -> Complex64 {
    p.eval(&linear_values(p.root_datum(), x))
}

#[cfg(test)]
mod tests;
