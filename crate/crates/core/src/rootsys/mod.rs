//! Root systems, Weyl groups and Chevalley bases for simple types of rank ≤ 3.
//!
//! Conventions used throughout the crate:
//!
//! * `cartan[i][j] = α_j(H_i)`, weights are stored by their simple-coroot
//!   pairings and roots by their simple-root coefficients.
//! * Basis letters of g are indexed in canonical PBW order: F_α for positive
//!   roots (height, then lexicographic), then H_1 … H_r, then E_α in the same
//!   root order.
//! * Chevalley signs: for a non-simple positive root α take the smallest simple
//!   α_i with β = α - α_i positive, and set E_α = [E_i, E_β]/(p+1) and
//!   F_α = -[F_i, F_β]/(p+1), p being the length of the α_i-string below β.
//!   So N_{α_i, β} = p + 1 > 0 for these pairs, and θ(E_α) = -F_α holds for
//!   every root with θ the compact involution.

mod bootstrap;
mod weight;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

pub use bootstrap::{generator_irrep, GeneratorIrrep};
pub use weight::Weight;

use crate::error::{Error, Result};
use crate::exact::{self, Mat};
#[cfg(test)]
use crate::scalar::q_frac;
use crate::scalar::{q, GaussQ, Q};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Kind of a Chevalley basis letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// F_α for positive root index k.
    F(usize),
    /// H_i, simple coroot i.
    H(usize),
    /// E_α for positive root index k.
    E(usize),
}

/// Δ(λ) and the verdict of the closure test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Regularity {
    /// Positive roots (indices) with λ(H_α) = 0; Δ(λ) is this set and its negative.
    pub vanishing: Vec<usize>,
    pub relatively_regular: bool,
    /// When relatively regular: σ = Σ ∩ Δ(λ), as simple-root indices.
    pub sigma: Option<Vec<usize>>,
}

/// Immutable root datum of one simple type together with its Chevalley basis.
#[derive(Debug)]
pub struct RootDatum {
    id: u64,
    label: String,
    cartan: Vec<Vec<i64>>,
    pos_roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    coroots: Vec<Vec<i64>>,
    letters: Vec<Letter>,
    bracket: Vec<Vec<Vec<(usize, i64)>>>,
    killing: Mat<Q>,
    killing_h: Mat<Q>,
    killing_h_inv: Mat<Q>,
    weyl: Vec<Vec<usize>>,
    longest: Vec<usize>,
}

const SUPPORTED: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"];

fn cartan_of(label: &str) -> Result<Vec<Vec<i64>>> {
    let m = match label {
        "A1" => vec![vec![2]],
        "A2" => vec![vec![2, -1], vec![-1, 2]],
        "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        // α_1 long, α_2 short
        "B2" => vec![vec![2, -1], vec![-2, 2]],
        "B3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        // α_1 short, α_2 long
        "C2" => vec![vec![2, -2], vec![-1, 2]],
        "C3" => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
        // α_1 short, α_2 long
        "G2" => vec![vec![2, -3], vec![-1, 2]],
        other => return Err(Error::Config(format!("unsupported type `{other}` (supported: {})", SUPPORTED.join(", ")))),
    };
    Ok(m)
}

fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let simple: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut set: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut roots = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                if beta.iter().enumerate().all(|(j, &c)| c == i64::from(i == j)) {
                    continue;
                }
                // q: how far down the α_i-string through β goes
                let mut qd = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= qd + 1;
                    if set.contains(&down) {
                        qd += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[i][j]).sum();
                if qd - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if set.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort_by(|a, b| b.cmp(a));
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

impl RootDatum {
    /// Build the root datum for a type label (`A1`, `A2`, `B2`, …).
    pub fn build(label: &str) -> Result<RootDatum> {
        let cartan = cartan_of(label)?;
        let r = cartan.len();
        let pos_roots = positive_roots(&cartan);
        let m = pos_roots.len();
        let root_index: HashMap<Vec<i64>, usize> = pos_roots.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        let mut letters = Vec::with_capacity(2 * m + r);
        letters.extend((0..m).map(Letter::F));
        letters.extend((0..r).map(Letter::H));
        letters.extend((0..m).map(Letter::E));

        // adjoint module from the Cartan matrix alone
        let theta = pos_roots.last().expect("nonempty").clone();
        let theta_w: Vec<i64> = (0..r).map(|i| (0..r).map(|j| theta[j] * cartan[i][j]).sum()).collect();
        let adj = generator_irrep(&cartan, &theta_w, 64)?;
        let n = adj.dim();
        if n != 2 * m + r {
            return Err(Error::Internal(format!("adjoint module has dim {n}, expected {}", 2 * m + r)));
        }
        let comm = |a: &Mat<Q>, b: &Mat<Q>| -> Mat<Q> {
            let ab = exact::matmul(a, b);
            let ba = exact::matmul(b, a);
            ab.iter().zip(&ba).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
        };
        let scale = |a: &Mat<Q>, s: &Q| -> Mat<Q> { a.iter().map(|row| row.iter().map(|x| x * s).collect()).collect() };
        let mut e_mats: Vec<Mat<Q>> = Vec::with_capacity(m);
        let mut f_mats: Vec<Mat<Q>> = Vec::with_capacity(m);
        for (k, alpha) in pos_roots.iter().enumerate() {
            if k < r {
                e_mats.push(adj.e[k].clone());
                f_mats.push(adj.f[k].clone());
                continue;
            }
            let (i, bidx) = (0..r)
                .find_map(|i| {
                    let mut beta = alpha.clone();
                    beta[i] -= 1;
                    root_index.get(&beta).map(|&b| (i, b))
                })
                .ok_or_else(|| Error::Internal("non-simple root without predecessor".into()))?;
            let mut p = 0;
            loop {
                let mut down = pos_roots[bidx].clone();
                down[i] -= p + 1;
                if root_index.contains_key(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let inv = Q::new(1.into(), (p + 1).into());
            e_mats.push(scale(&comm(&e_mats[i], &e_mats[bidx]), &inv));
            f_mats.push(scale(&comm(&f_mats[i], &f_mats[bidx]), &(-inv)));
        }
        let mats: Vec<Mat<Q>> = letters
            .iter()
            .map(|l| match *l {
                Letter::F(k) => f_mats[k].clone(),
                Letter::H(i) => adj.h(i),
                Letter::E(k) => e_mats[k].clone(),
            })
            .collect();
        let letter_root = |l: Letter| -> Vec<i64> {
            match l {
                Letter::F(k) => pos_roots[k].iter().map(|x| -x).collect(),
                Letter::H(_) => vec![0; r],
                Letter::E(k) => pos_roots[k].clone(),
            }
        };
        let mut bracket = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let z = comm(&mats[a], &mats[b]);
                let ra = letter_root(letters[a]);
                let rb = letter_root(letters[b]);
                let gamma: Vec<i64> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
                bracket[a][b] = decompose(&z, &gamma, &mats, &root_index, m, r, &adj.weights)?;
            }
        }
        let mut coroots = Vec::with_capacity(m);
        for k in 0..m {
            let terms = &bracket[m + r + k][k];
            let mut c = vec![0i64; r];
            for &(idx, v) in terms {
                match letters[idx] {
                    Letter::H(i) => c[i] = v,
                    _ => return Err(Error::Internal("[E_α, F_α] left the Cartan".into())),
                }
            }
            coroots.push(c);
        }
        let killing = killing_form(&bracket);
        let killing_h: Mat<Q> = (0..r).map(|i| (0..r).map(|j| killing[m + i][m + j].clone()).collect()).collect();
        let killing_h_inv = exact::inverse(&killing_h).ok_or_else(|| Error::Internal("singular Killing form on the Cartan".into()))?;
        let (weyl, longest) = weyl_group(&cartan);
        Ok(RootDatum {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            label: label.to_string(),
            cartan,
            pos_roots,
            root_index,
            coroots,
            letters,
            bracket,
            killing,
            killing_h,
            killing_h_inv,
            weyl,
            longest,
        })
    }

    pub fn supported_types() -> &'static [&'static str] {
        SUPPORTED
    }

    /// Identity token; two data built separately compare unequal.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Dimension of g.
    pub fn dim(&self) -> usize {
        self.letters.len()
    }

    pub fn num_positive(&self) -> usize {
        self.pos_roots.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.pos_roots
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    pub fn height(&self, k: usize) -> i64 {
        self.pos_roots[k].iter().sum()
    }

    /// Simple-coroot coefficients of H_α for positive root k.
    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn letter(&self, a: usize) -> Letter {
        self.letters[a]
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn f_letter(&self, k: usize) -> usize {
        k
    }

    pub fn h_letter(&self, i: usize) -> usize {
        self.num_positive() + i
    }

    pub fn e_letter(&self, k: usize) -> usize {
        self.num_positive() + self.rank() + k
    }

    /// Root-lattice weight of a letter in simple-root coordinates.
    pub fn letter_root(&self, a: usize) -> Vec<i64> {
        match self.letters[a] {
            Letter::F(k) => self.pos_roots[k].iter().map(|x| -x).collect(),
            Letter::H(_) => vec![0; self.rank()],
            Letter::E(k) => self.pos_roots[k].clone(),
        }
    }

    /// Signed height of a letter's weight.
    pub fn letter_height(&self, a: usize) -> i64 {
        self.letter_root(a).iter().sum()
    }

    /// The letter with X_a ↦ X_{-a} (E ↔ F, H fixed).
    pub fn opposite_letter(&self, a: usize) -> usize {
        match self.letters[a] {
            Letter::F(k) => self.e_letter(k),
            Letter::H(_) => a,
            Letter::E(k) => self.f_letter(k),
        }
    }

    /// [X_a, X_b] as sparse integer combination of letters.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.bracket[a][b]
    }

    /// Killing form on the Chevalley basis.
    pub fn killing(&self) -> &Mat<Q> {
        &self.killing
    }

    /// Killing Gram matrix on the simple coroots.
    pub fn killing_cartan(&self) -> &Mat<Q> {
        &self.killing_h
    }

    pub fn root_name(&self, k: usize) -> String {
        let parts: Vec<String> = self.pos_roots[k]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { format!("a{}", i + 1) } else { format!("{c}a{}", i + 1) })
            .collect();
        parts.join("+")
    }

    pub fn letter_name(&self, a: usize) -> String {
        match self.letters[a] {
            Letter::F(k) => format!("F[{}]", self.root_name(k)),
            Letter::H(i) => format!("H[a{}]", i + 1),
            Letter::E(k) => format!("E[{}]", self.root_name(k)),
        }
    }

    /// Parse a root name like `a1+a2` or `2a1+a2`.
    pub fn parse_root(&self, s: &str) -> Result<usize> {
        let r = self.rank();
        let mut coeffs = vec![0i64; r];
        for term in s.split('+') {
            let term = term.trim();
            let pos = term.find('a').ok_or_else(|| Error::Parse(format!("bad root `{s}`")))?;
            let c: i64 = if pos == 0 { 1 } else { term[..pos].parse().map_err(|_| Error::Parse(format!("bad root `{s}`")))? };
            let i: usize = term[pos + 1..].parse().map_err(|_| Error::Parse(format!("bad root `{s}`")))?;
            if i == 0 || i > r {
                return Err(Error::Parse(format!("bad simple root index in `{s}`")));
            }
            coeffs[i - 1] += c;
        }
        self.root_index(&coeffs).ok_or_else(|| Error::Parse(format!("`{s}` is not a positive root of {}", self.label)))
    }

    /// Root in simple-root coordinates as a weight (its simple-coroot pairings).
    pub fn root_as_weight(&self, root: &[i64]) -> Weight {
        let r = self.rank();
        Weight((0..r).map(|i| q((0..r).map(|j| root[j] * self.cartan[i][j]).sum())).collect())
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![q(1); self.rank()])
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        (0..self.rank()).map(|i| self.fundamental_weight(i)).collect()
    }

    /// λ(H_α) for positive root k.
    pub fn pair_coroot(&self, lambda: &Weight, k: usize) -> Q {
        self.coroots[k].iter().zip(lambda.coords()).fold(Q::zero(), |s, (&c, x)| s + x * q(c))
    }

    /// Simple reflection s_i.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let li = lambda.0[i].clone();
        Weight((0..self.rank()).map(|k| &lambda.0[k] - &li * q(self.cartan[k][i])).collect())
    }

    /// Apply the Weyl word s_{w[0]} s_{w[1]} ⋯; with `shifted`, the dot action
    /// w·λ = w(λ+ρ) - ρ.
    pub fn weyl_act(&self, word: &[usize], lambda: &Weight, shifted: bool) -> Result<Weight> {
        if let Some(&bad) = word.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::Usage(format!("no simple reflection s_{}", bad + 1)));
        }
        let rho = self.rho();
        let mut w = if shifted { lambda + &rho } else { lambda.clone() };
        for &i in word.iter().rev() {
            w = self.reflect(i, &w);
        }
        Ok(if shifted { &w - &rho } else { w })
    }

    /// Reduced words of all Weyl group elements, identity first.
    pub fn weyl_group(&self) -> &[Vec<usize>] {
        &self.weyl
    }

    /// Reduced word of the longest element w₀.
    pub fn longest_element(&self) -> &[usize] {
        &self.longest
    }

    /// λ′ = -w₀λ.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        -&self.weyl_act(&self.longest, lambda, false).expect("valid word")
    }

    /// Coordinates of H^λ in the simple-coroot basis: (H, H^λ) = λ(H).
    pub fn coroot_element(&self, lambda: &Weight) -> Vec<Q> {
        self.killing_h_inv.iter().map(|row| row.iter().zip(lambda.coords()).fold(Q::zero(), |s, (a, b)| s + a * b)).collect()
    }

    /// Killing form transported to h*: (λ, μ) = (H^λ, H^μ).
    pub fn killing_weights(&self, lambda: &Weight, mu: &Weight) -> Q {
        let h = self.coroot_element(mu);
        lambda.coords().iter().zip(&h).fold(Q::zero(), |s, (a, b)| s + a * b)
    }

    /// Δ(λ) and the closure test for relative regularity.
    pub fn regularity(&self, lambda: &Weight) -> Regularity {
        let vanish: Vec<bool> = (0..self.num_positive()).map(|k| self.pair_coroot(lambda, k).is_zero()).collect();
        let mut ok = true;
        'outer: for a in 0..self.num_positive() {
            for b in 0..self.num_positive() {
                let sum: Vec<i64> = self.pos_roots[a].iter().zip(&self.pos_roots[b]).map(|(x, y)| x + y).collect();
                if let Some(c) = self.root_index(&sum) {
                    if vanish[c] && !(vanish[a] && vanish[b]) {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        let vanishing: Vec<usize> = (0..self.num_positive()).filter(|&k| vanish[k]).collect();
        let sigma = ok.then(|| (0..self.rank()).filter(|&i| vanish[i]).collect());
        Regularity { vanishing, relatively_regular: ok, sigma }
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Q {
        let lr = lambda + &self.rho();
        let rho = self.rho();
        (0..self.num_positive()).fold(q(1), |acc, k| acc * self.pair_coroot(&lr, k) / self.pair_coroot(&rho, k))
    }

    /// Compact real form basis {iH_j} ∪ {E_α − F_α, i(E_α + F_α)} as letter
    /// combinations; ordering: all iH_j, then per positive root the two
    /// elements.
    pub fn compact_basis(&self) -> Vec<Vec<(usize, GaussQ)>> {
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..self.rank() {
            out.push(vec![(self.h_letter(i), GaussQ::i())]);
        }
        for k in 0..self.num_positive() {
            out.push(vec![(self.e_letter(k), GaussQ::int(1)), (self.f_letter(k), GaussQ::int(-1))]);
            out.push(vec![(self.e_letter(k), GaussQ::i()), (self.f_letter(k), GaussQ::i())]);
        }
        out
    }

    /// Exact adjoint matrix ad(X_a) in the letter basis (column b = [X_a, X_b]).
    pub fn ad_exact(&self, a: usize) -> Mat<Q> {
        let n = self.dim();
        let mut m = exact::zeros(n, n);
        for b in 0..n {
            for &(c, v) in &self.bracket[a][b] {
                m[c][b] = q(v);
            }
        }
        m
    }

    /// JSON summary for `info`.
    pub fn summary(&self) -> serde_json::Value {
        let w0 = self.longest.iter().map(|i| i + 1).collect::<Vec<_>>();
        let structure: Vec<serde_json::Value> = (0..self.dim())
            .flat_map(|a| (0..self.dim()).map(move |b| (a, b)))
            .filter(|&(a, b)| a < b && !self.bracket[a][b].is_empty())
            .map(|(a, b)| {
                let terms: Vec<String> = self.bracket[a][b].iter().map(|&(c, v)| format!("{v}*{}", self.letter_name(c))).collect();
                serde_json::json!({
                    "x": self.letter_name(a),
                    "y": self.letter_name(b),
                    "bracket": terms.join(" + "),
                })
            })
            .collect();
        serde_json::json!({
            "type": self.label,
            "rank": self.rank(),
            "dim": self.dim(),
            "cartan": self.cartan,
            "positive_roots": self.pos_roots,
            "positive_root_names": (0..self.num_positive()).map(|k| self.root_name(k)).collect::<Vec<_>>(),
            "coroots": self.coroots,
            "rho": self.rho().to_string(),
            "fundamental_weights": self.fundamental_weights().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "weyl_order": self.weyl.len(),
            "longest_element": w0,
            "killing_cartan": self.killing_h.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "structure_constants": structure,
        })
    }
}

fn decompose(
    z: &Mat<Q>,
    gamma: &[i64],
    mats: &[Mat<Q>],
    root_index: &HashMap<Vec<i64>, usize>,
    m: usize,
    r: usize,
    weights: &[Vec<i64>],
) -> Result<Vec<(usize, i64)>> {
    let is_zero = z.iter().all(|row| row.iter().all(|x| x.is_zero()));
    if is_zero {
        return Ok(Vec::new());
    }
    let to_int = |x: &Q| -> Result<i64> {
        if x.is_integer() {
            x.to_integer().to_i64().ok_or_else(|| Error::Internal("structure constant overflow".into()))
        } else {
            Err(Error::Internal(format!("non-integral structure constant {x}")))
        }
    };
    if gamma.iter().all(|&x| x == 0) {
        // diagonal: Σ c_i H_i with H_i = diag(weight_i)
        let n = z.len();
        let mut aug: Mat<Q> = (0..n)
            .map(|k| {
                let mut row: Vec<Q> = (0..r).map(|i| q(weights[k][i])).collect();
                row.push(z[k][k].clone());
                row
            })
            .collect();
        let piv = exact::rref(&mut aug);
        let mut out = Vec::new();
        for (row, &p) in piv.iter().enumerate() {
            if p == r {
                return Err(Error::Internal("Cartan bracket not diagonal".into()));
            }
            let v = to_int(&aug[row][r])?;
            if v != 0 {
                out.push((m + p, v));
            }
        }
        return Ok(out);
    }
    let positive = gamma.iter().all(|&x| x >= 0);
    let key: Vec<i64> = if positive { gamma.to_vec() } else { gamma.iter().map(|x| -x).collect() };
    let k = *root_index.get(&key).ok_or_else(|| Error::Internal("bracket outside root spaces".into()))?;
    let c = if positive { m + r + k } else { k };
    let basis = &mats[c];
    let (i0, j0) = (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).find(|&(i, j)| !basis[i][j].is_zero()).expect("nonzero basis matrix");
    let coef = &z[i0][j0] / &basis[i0][j0];
    for (zi, bi) in z.iter().zip(basis) {
        for (x, y) in zi.iter().zip(bi) {
            if *x != &coef * y {
                return Err(Error::Internal("bracket not proportional to root vector".into()));
            }
        }
    }
    Ok(vec![(c, to_int(&coef)?)])
}

fn killing_form(bracket: &[Vec<Vec<(usize, i64)>>]) -> Mat<Q> {
    let n = bracket.len();
    // ad[a][c][b] = coefficient of X_c in [X_a, X_b]
    let mut ad = vec![vec![vec![0i64; n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for &(c, v) in &bracket[a][b] {
                ad[a][c][b] = v;
            }
        }
    }
    let mut k = exact::zeros::<Q>(n, n);
    for a in 0..n {
        for b in 0..n {
            let mut tr = 0i64;
            for c in 0..n {
                for d in 0..n {
                    tr += ad[a][c][d] * ad[b][d][c];
                }
            }
            k[a][b] = q(tr);
        }
    }
    k
}

fn weyl_group(cartan: &[Vec<i64>]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let r = cartan.len();
    let reflect = |i: usize, w: &[i64]| -> Vec<i64> { (0..r).map(|k| w[k] - w[i] * cartan[k][i]).collect() };
    let rho = vec![1i64; r];
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut images = vec![rho.clone()];
    seen.insert(rho.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for i in 0..r {
            let img = reflect(i, &images[idx]);
            if !seen.contains_key(&img) {
                let mut word = vec![i];
                word.extend(&words[idx]);
                seen.insert(img.clone(), words.len());
                words.push(word);
                images.push(img);
                queue.push_back(words.len() - 1);
            }
        }
    }
    let neg: Vec<i64> = rho.iter().map(|x| -x).collect();
    let longest = words[seen[&neg]].clone();
    (words, longest)
}
