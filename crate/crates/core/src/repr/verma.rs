//! The Verma module M(λ) on the PBW basis of U(n⁻), and its Shapovalov form.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::rootsys::{Letter, RootDatum};
use crate::scalar::{q, Q};
use crate::uea::Mono;

/// Exact action of Chevalley letters on M(λ) for a fixed integral λ, with
/// memoized letter actions and Shapovalov pairings. Vectors are sums of
/// canonical F-monomials applied to the highest vector.
pub struct Verma {
    rd: Arc<RootDatum>,
    lambda: Vec<i64>,
    acts: HashMap<(u8, Mono), Vec<(Mono, Q)>>,
    forms: HashMap<(Mono, Mono), Q>,
}

impl Verma {
    pub fn new(rd: &Arc<RootDatum>, lambda: &[i64]) -> Self {
        Verma { rd: rd.clone(), lambda: lambda.to_vec(), acts: HashMap::new(), forms: HashMap::new() }
    }

    /// X_a · (m v).
    pub fn act(&mut self, a: usize, m: &[u8]) -> Vec<(Mono, Q)> {
        let key = (a as u8, m.to_vec());
        if let Some(hit) = self.acts.get(&key) {
            return hit.clone();
        }
        let mut word = Vec::with_capacity(m.len() + 1);
        word.push(a as u8);
        word.extend_from_slice(m);
        let mut acc: HashMap<Mono, Q> = HashMap::new();
        for (n, c) in crate::uea::order_word(&self.rd, &word) {
            let mut coeff = q(c);
            let mut f_part = Vec::new();
            let mut killed = false;
            for &x in &n {
                match self.rd.letter(x as usize) {
                    Letter::F(_) => f_part.push(x),
                    Letter::H(i) => coeff *= q(self.lambda[i]),
                    Letter::E(_) => {
                        killed = true;
                        break;
                    }
                }
            }
            if killed || coeff.is_zero() {
                continue;
            }
            *acc.entry(f_part).or_insert_with(Q::zero) += coeff;
        }
        let mut out: Vec<(Mono, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort();
        self.acts.insert(key, out.clone());
        out
    }

    /// Shapovalov form B(m v, n v), normalized by B(v, v) = 1 and
    /// B(F_β x, y) = B(x, E_β y).
    pub fn form(&mut self, m: &[u8], n: &[u8]) -> Q {
        if m.is_empty() || n.is_empty() {
            return if m.is_empty() && n.is_empty() { Q::one() } else { Q::zero() };
        }
        let key = if m <= n { (m.to_vec(), n.to_vec()) } else { (n.to_vec(), m.to_vec()) };
        if let Some(hit) = self.forms.get(&key) {
            return hit.clone();
        }
        let (first, rest) = key.0.split_first().unwrap();
        let k = match self.rd.letter(*first as usize) {
            Letter::F(k) => k,
            _ => unreachable!("Verma basis monomials contain only lowering letters"),
        };
        let e = self.rd.e_letter(k);
        let other = key.1.clone();
        let rest = rest.to_vec();
        let mut total = Q::zero();
        for (nk, c) in self.act(e, &other) {
            let b = self.form(&rest, &nk);
            if !b.is_zero() {
                total += c * b;
            }
        }
        self.forms.insert(key, total.clone());
        total
    }
}
