//! Small dense exact linear algebra over Q and Q(i).

use num_traits::{One, Zero};

use crate::scalar::{GaussQ, Q};

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for GaussQ {
    fn zero() -> Self {
        <GaussQ as Zero>::zero()
    }
    fn one() -> Self {
        GaussQ::int(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        GaussQ::inv(self).expect("inverse of zero")
    }
}

pub type Mat<F> = Vec<Vec<F>>;

pub fn zeros<F: Field>(r: usize, c: usize) -> Mat<F> {
    vec![vec![F::zero(); c]; r]
}

pub fn identity<F: Field>(n: usize) -> Mat<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::one();
    }
    m
}

pub fn matmul<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out: Mat<F> = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][l].mul(&b[l][j]));
                }
            }
        }
    }
    out
}

pub fn transpose<F: Field>(a: &Mat<F>) -> Mat<F> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut Mat<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    if !m[r][j].is_zero() {
                        let t = f.mul(&m[r][j]);
                        m[i][j] = m[i][j].sub(&t);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(m: &Mat<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            det = F::zero().sub(&det);
        }
        det = det.mul(&a[c][c]);
        let inv = a[c][c].inv();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].mul(&inv);
            for j in c..n {
                let v = a[r][j].sub(&f.mul(&a[c][j]));
                a[r][j] = v;
            }
        }
    }
    det
}

pub fn inverse<F: Field>(m: &Mat<F>) -> Option<Mat<F>> {
    let n = m.len();
    let mut aug: Mat<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Indices of a maximal linearly independent subset of `vectors`, greedily in
/// order.
pub fn independent_subset<F: Field>(vectors: &[Vec<F>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<F>)> = Vec::new(); // (pivot col, reduced row)
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (pc, row) in &basis {
            if !w[*pc].is_zero() {
                let f = w[*pc].clone();
                for j in 0..w.len() {
                    if !row[j].is_zero() {
                        w[j] = w[j].sub(&f.mul(&row[j]));
                    }
                }
            }
        }
        if let Some(pc) = w.iter().position(|x| !x.is_zero()) {
            let inv = w[pc].inv();
            for x in w.iter_mut() {
                *x = x.mul(&inv);
            }
            // keep rows reduced against the new pivot
            for (_, row) in basis.iter_mut() {
                if !row[pc].is_zero() {
                    let f = row[pc].clone();
                    for j in 0..row.len() {
                        if !w[j].is_zero() {
                            row[j] = row[j].sub(&f.mul(&w[j]));
                        }
                    }
                }
            }
            basis.push((pc, w));
            chosen.push(idx);
        }
    }
    chosen
}

/// Solve `a x = b` for square invertible `a`.
pub fn solve<F: Field>(a: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    let inv = inverse(a)?;
    Some(inv.iter().map(|row| row.iter().zip(b).fold(F::zero(), |s, (x, y)| s.add(&x.mul(y)))).collect())
}
