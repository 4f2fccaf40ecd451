//! Exact arithmetic in the universal enveloping algebra U(g).

mod order;
mod poly;
mod text;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

pub use order::Mono;
pub use poly::{HPoly, SymPoly};
pub use text::{parse_terms, ParsedTerm};

use crate::error::{Error, Result};
use crate::rootsys::{Letter, RootDatum, Weight};
use crate::scalar::{q_frac, Coeff, GaussQ};
use poly::add_term;

/// Words longer than this are refused by the rewriting engine.
pub const DEFAULT_DEGREE_CAP: usize = 12;

/// Element of U(g) in canonical PBW form.
#[derive(Clone, Debug)]
pub struct Pbw<S: Coeff = GaussQ> {
    rd: Arc<RootDatum>,
    terms: BTreeMap<Mono, S>,
}

impl<S: Coeff> PartialEq for Pbw<S> {
    fn eq(&self, o: &Self) -> bool {
        self.rd.id() == o.rd.id() && self.terms == o.terms
    }
}

fn check_cap(len: usize) -> Result<()> {
    if len > DEFAULT_DEGREE_CAP {
        return Err(Error::Resource(format!("word of length {len} exceeds the degree cap {DEFAULT_DEGREE_CAP}")));
    }
    Ok(())
}

impl<S: Coeff> Pbw<S> {
    pub fn zero(rd: &Arc<RootDatum>) -> Self {
        Pbw { rd: rd.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(rd: &Arc<RootDatum>, c: S) -> Self {
        let mut p = Self::zero(rd);
        add_term(&mut p.terms, Vec::new(), c);
        p
    }

    pub fn one(rd: &Arc<RootDatum>) -> Self {
        Self::scalar(rd, S::one())
    }

    /// The basis letter X_a.
    pub fn letter(rd: &Arc<RootDatum>, a: usize) -> Self {
        let mut p = Self::zero(rd);
        p.terms.insert(vec![a as u8], S::one());
        p
    }

    /// Rewrite `c · X_{w[0]} ⋯ X_{w[k-1]}` into canonical order.
    pub fn normal_order(rd: &Arc<RootDatum>, word: &[usize], c: S) -> Result<Self> {
        check_cap(word.len())?;
        if let Some(&a) = word.iter().find(|&&a| a >= rd.dim()) {
            return Err(Error::Usage(format!("letter index {a} out of range")));
        }
        let w: Mono = word.iter().map(|&a| a as u8).collect();
        let mut p = Self::zero(rd);
        for (m, k) in order::word(rd, &w) {
            add_term(&mut p.terms, m, c.mul(&S::from_i64(k)));
        }
        Ok(p)
    }

    /// Build from already-canonical or arbitrary words with coefficients.
    pub fn from_words(rd: &Arc<RootDatum>, words: impl IntoIterator<Item = (Vec<usize>, S)>) -> Result<Self> {
        let mut p = Self::zero(rd);
        for (w, c) in words {
            p = p.add(&Self::normal_order(rd, &w, c)?)?;
        }
        Ok(p)
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

    /// Filtration degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.rd.id() != o.rd.id() {
            return Err(Error::Usage("elements of different enveloping algebras".into()));
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
        if let (Some(a), Some(b)) = (self.degree(), o.degree()) {
            check_cap(a + b)?;
        }
        let mut p = Self::zero(&self.rd);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1.mul(c2);
                for (m, k) in order::mono_times_mono(&self.rd, m1, m2) {
                    add_term(&mut p.terms, m, c.mul(&S::from_i64(k)));
                }
            }
        }
        Ok(p)
    }

    /// u₁u₂ − u₂u₁.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// Apply a letter-level map that is multiplicative (or anti-multiplicative
    /// when `reverse`), with each letter sent to a signed letter.
    fn map_letters(&self, reverse: bool, f: impl Fn(u8) -> (u8, i64), conj: bool) -> Self {
        let mut p = Self::zero(&self.rd);
        for (m, c) in &self.terms {
            let mut sign = 1i64;
            let mut w: Vec<u8> = m
                .iter()
                .map(|&a| {
                    let (b, s) = f(a);
                    sign *= s;
                    b
                })
                .collect();
            if reverse {
                w.reverse();
            }
            let c = if conj { c.conj() } else { c.clone() };
            let c = c.mul(&S::from_i64(sign));
            for (n, k) in order::word(&self.rd, &w) {
                add_term(&mut p.terms, n, c.mul(&S::from_i64(k)));
            }
        }
        p
    }

    /// ǔ: the antiautomorphism extending X ↦ −X.
    pub fn check_involution(&self) -> Self {
        self.map_letters(true, |a| (a, -1), false)
    }

    /// θ: antilinear automorphism with θE_α = −F_α, θH = −H.
    pub fn theta(&self) -> Self {
        let rd = self.rd.clone();
        self.map_letters(false, move |a| (rd.opposite_letter(a as usize) as u8, -1), true)
    }

    /// Chevalley transpose: the linear antiautomorphism E_α ↔ F_α, H fixed.
    pub fn transpose(&self) -> Self {
        let rd = self.rd.clone();
        self.map_letters(true, move |a| (rd.opposite_letter(a as usize) as u8, 1), false)
    }

    /// u₀: the pure-Cartan part of the canonical form, in U(h).
    pub fn hc_project(&self) -> HPoly<S> {
        let r = self.rd.rank();
        let mut out = HPoly::zero(r);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; r];
            let mut pure = true;
            for &a in m {
                match self.rd.letter(a as usize) {
                    Letter::H(i) => exps[i] += 1,
                    _ => {
                        pure = false;
                        break;
                    }
                }
            }
            if pure {
                out.add_monomial(exps, c.clone());
            }
        }
        out
    }

    /// φ_λ(u) = u₀(λ).
    pub fn phi(&self, lambda: &Weight) -> S {
        self.hc_project().eval(lambda)
    }

    /// Degree and top-degree symbol u̲ ∈ S^d(g).
    pub fn principal_symbol(&self) -> Result<(usize, SymPoly<S>)> {
        let d = self.degree().ok_or(Error::ZeroElement)?;
        let mut p = SymPoly::zero(&self.rd);
        for (m, c) in &self.terms {
            if m.len() == d {
                add_term(&mut p.terms, m.clone(), c.clone());
            }
        }
        Ok((d, p))
    }

    /// Symmetrization β: S(g) → U(g).
    pub fn symmetrize(p: &SymPoly<S>) -> Result<Self> {
        let rd = p.root_datum().clone();
        let mut out = Self::zero(&rd);
        for (m, c) in p.terms() {
            check_cap(m.len())?;
            let perms = distinct_permutations(m);
            let w = c.mul(&S::from_gauss(&GaussQ::real(q_frac(1, perms.len() as i64))));
            for perm in perms {
                for (n, k) in order::word(&rd, &perm) {
                    add_term(&mut out.terms, n, w.mul(&S::from_i64(k)));
                }
            }
        }
        Ok(out)
    }

    pub fn to_complex(&self) -> Pbw<Complex64> {
        Pbw { rd: self.rd.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.to_c64())).collect() }
    }
}

impl Pbw<GaussQ> {
    /// Parse the text format `coeff * F[a1]^k H[a1] E[a1+a2]^m + …`.
    pub fn parse(rd: &Arc<RootDatum>, s: &str) -> Result<Self> {
        let mut p = Self::zero(rd);
        for t in parse_terms(rd, s)? {
            let mut acc = Self::scalar(rd, t.coeff.clone());
            for factor in &t.factors {
                let mut f = Self::zero(rd);
                for &(a, c) in factor {
                    add_term(&mut f.terms, vec![a as u8], GaussQ::int(c));
                }
                acc = acc.mul(&f)?;
            }
            p = p.add(&acc)?;
        }
        Ok(p)
    }
}

impl std::fmt::Display for Pbw<GaussQ> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", text::format_terms(&self.rd, &self.terms))
    }
}

impl SymPoly<GaussQ> {
    /// Parse the same text format as PBW elements, with commuting variables.
    pub fn parse(rd: &Arc<RootDatum>, s: &str) -> Result<Self> {
        let mut p = Self::zero(rd);
        for t in parse_terms(rd, s)? {
            let mut acc = Self::constant(rd, t.coeff.clone());
            for factor in &t.factors {
                let f = SymPoly::from_terms(rd, factor.iter().map(|&(a, c)| (vec![a as u8], GaussQ::int(c))));
                acc = acc.mul(&f)?;
            }
            p = p.add(&acc)?;
        }
        Ok(p)
    }
}

impl std::fmt::Display for SymPoly<GaussQ> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", text::format_terms(&self.rd, &self.terms))
    }
}

pub(crate) fn distinct_permutations(m: &[u8]) -> Vec<Vec<u8>> {
    // m is sorted; generate permutations in lexicographic order
    let mut cur = m.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}


/// Canonical expansion of a word with integer coefficients; no degree cap.
pub(crate) fn order_word(rd: &RootDatum, w: &[u8]) -> Vec<(Mono, i64)> {
    order::word(rd, w)
}
