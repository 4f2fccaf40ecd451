//! Commutative polynomial rings: U(h) ≅ polynomials in the simple coroots, and
//! S(g) with its Lie–Poisson bracket.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::order::Mono;
use crate::error::{Error, Result};
use crate::rootsys::{RootDatum, Weight};
use crate::scalar::{Coeff, GaussQ};

pub(crate) fn add_term<S: Coeff>(map: &mut BTreeMap<Mono, S>, m: Mono, c: S) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Element of U(h) as a polynomial in H_{α_1}, …, H_{α_r}; keys are exponent
/// vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct HPoly<S: Coeff> {
    rank: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Coeff> HPoly<S> {
    pub fn zero(rank: usize) -> Self {
        HPoly { rank, terms: BTreeMap::new() }
    }

    pub(crate) fn add_monomial(&mut self, exps: Vec<u32>, c: S) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&exps) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(exps, s);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Substitute H_{α_i} ↦ λ(H_{α_i}).
    pub fn eval(&self, lambda: &Weight) -> S {
        let vals: Vec<S> = lambda.coords().iter().map(|x| S::from_gauss(&GaussQ::real(x.clone()))).collect();
        let mut sum = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in vals.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(v);
                }
            }
            sum = sum.add(&t);
        }
        sum
    }

    /// Evaluate at a real point given by its simple-coroot pairings.
    pub fn eval_f64(&self, lambda: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: f64 = lambda.iter().zip(e).map(|(x, &k)| x.powi(k as i32)).product();
                c.to_c64() * m
            })
            .sum()
    }
}

impl fmt::Display for HPoly<GaussQ> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("H[a{}]", i + 1) } else { format!("H[a{}]^{k}", i + 1) })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{c} * {}", vars.join(" "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial on g*: element of S(g) in the variables X̃_a, one per Chevalley
/// letter. Monomials are sorted letter multisets.
#[derive(Clone, Debug)]
pub struct SymPoly<S: Coeff> {
    pub(crate) rd: Arc<RootDatum>,
    pub(crate) terms: BTreeMap<Mono, S>,
}

impl<S: Coeff> PartialEq for SymPoly<S> {
    fn eq(&self, o: &Self) -> bool {
        self.rd.id() == o.rd.id() && self.terms == o.terms
    }
}

impl<S: Coeff> SymPoly<S> {
    pub fn zero(rd: &Arc<RootDatum>) -> Self {
        SymPoly { rd: rd.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(rd: &Arc<RootDatum>, c: S) -> Self {
        let mut p = Self::zero(rd);
        add_term(&mut p.terms, Vec::new(), c);
        p
    }

    /// The linear function X̃_a.
    pub fn var(rd: &Arc<RootDatum>, a: usize) -> Self {
        let mut p = Self::zero(rd);
        p.terms.insert(vec![a as u8], S::one());
        p
    }

    pub fn from_terms(rd: &Arc<RootDatum>, terms: impl IntoIterator<Item = (Mono, S)>) -> Self {
        let mut p = Self::zero(rd);
        for (mut m, c) in terms {
            m.sort_unstable();
            add_term(&mut p.terms, m, c);
        }
        p
    }

    pub fn root_datum(&self) -> &Arc<RootDatum> {
        &self.rd
    }

    pub fn terms(&self) -> &BTreeMap<Mono, S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(|m| m.len());
        match lens.next() {
            None => true,
            Some(d) => lens.all(|l| l == d),
        }
    }

    /// Degree-d homogeneous component.
    pub fn homogeneous(&self, d: usize) -> Self {
        SymPoly { rd: self.rd.clone(), terms: self.terms.iter().filter(|(m, _)| m.len() == d).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.rd.id() != o.rd.id() {
            return Err(Error::Usage("polynomials over different root data".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut p = self.clone();
        for (m, c) in &o.terms {
            add_term(&mut p.terms, m.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&S::from_i64(-1)))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut p = Self::zero(&self.rd);
        for (m, c) in &self.terms {
            add_term(&mut p.terms, m.clone(), c.mul(s));
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut p = Self::zero(&self.rd);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m: Mono = m1.iter().chain(m2).copied().collect();
                m.sort_unstable();
                add_term(&mut p.terms, m, c1.mul(c2));
            }
        }
        Ok(p)
    }

    /// Partial derivatives of a monomial: (letter, multiplicity, quotient).
    fn partials(m: &[u8]) -> Vec<(u8, i64, Mono)> {
        let mut out: Vec<(u8, i64, Mono)> = Vec::new();
        for (pos, &a) in m.iter().enumerate() {
            if let Some(last) = out.last_mut() {
                if last.0 == a {
                    last.1 += 1;
                    continue;
                }
            }
            let mut rest = m.to_vec();
            rest.remove(pos);
            out.push((a, 1, rest));
        }
        out
    }

    /// Lie–Poisson bracket, {X̃, Ỹ} = [X, Y]~ extended by Leibniz.
    pub fn poisson(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut p = Self::zero(&self.rd);
        for (m1, c1) in &self.terms {
            let d1 = Self::partials(m1);
            for (m2, c2) in &o.terms {
                let d2 = Self::partials(m2);
                let c = c1.mul(c2);
                for (a, ka, r1) in &d1 {
                    for (b, kb, r2) in &d2 {
                        for &(z, v) in self.rd.bracket(*a as usize, *b as usize) {
                            let mut m: Mono = r1.iter().chain(r2).copied().collect();
                            m.push(z as u8);
                            m.sort_unstable();
                            add_term(&mut p.terms, m, c.mul(&S::from_i64(v * ka * kb)));
                        }
                    }
                }
            }
        }
        Ok(p)
    }

    /// Evaluate with X̃_a ↦ values[a].
    pub fn eval(&self, values: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|(m, c)| m.iter().fold(c.to_c64(), |acc, &a| acc * values[a as usize])).sum()
    }

    pub fn to_complex(&self) -> SymPoly<Complex64> {
        SymPoly { rd: self.rd.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.to_c64())).collect() }
    }
}

impl<S: Coeff> SymPoly<S> {
    /// Substitute X̃_a ↦ (M X_a)~ = Σ_b M[b,a] X̃_b; with M = Ad(k⁻¹) this is
    /// p ∘ Ad(k) as a function on g.
    pub fn linear_substitute(&self, m: &nalgebra::DMatrix<Complex64>) -> SymPoly<Complex64> {
        let n = self.rd.dim();
        let images: Vec<SymPoly<Complex64>> = (0..n)
            .map(|a| SymPoly::from_terms(&self.rd, (0..n).filter(|&b| m[(b, a)] != Complex64::new(0.0, 0.0)).map(|b| (vec![b as u8], m[(b, a)]))))
            .collect();
        let mut out = SymPoly::zero(&self.rd);
        for (mono, c) in &self.terms {
            let mut acc = SymPoly::constant(&self.rd, c.to_c64());
            for &a in mono {
                acc = acc.mul(&images[a as usize]).expect("same root datum");
            }
            out = out.add(&acc).expect("same root datum");
        }
        out
    }
}
