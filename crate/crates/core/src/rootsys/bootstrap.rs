//! Irreducible highest-weight modules built from the Cartan matrix alone.
//!
//! Only the relations [E_i, F_j] = δ_ij H_i and [H_i, F_j] = -α_j(H_i) F_j are
//! used. Vectors are built level by level as F_j applied to the previous level;
//! at positive depth a vector vanishes in the simple quotient exactly when every
//! E_i kills it, so a candidate set is reduced to a basis by the linear
//! independence of the stacked E_i-images. This bootstraps the adjoint module
//! (hence the Chevalley structure constants) and serves as an independent check
//! on the PBW-based construction in `repr`.

use crate::error::{Error, Result};
use crate::exact::{self, Field, Mat};
use crate::scalar::{q, Q};

/// Simple-generator matrices of an irreducible module, exact.
#[derive(Clone, Debug)]
pub struct GeneratorIrrep {
    /// Weight of each basis vector, in simple-coroot coordinates.
    pub weights: Vec<Vec<i64>>,
    pub e: Vec<Mat<Q>>,
    pub f: Vec<Mat<Q>>,
}

impl GeneratorIrrep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn h(&self, i: usize) -> Mat<Q> {
        let n = self.dim();
        let mut m = exact::zeros(n, n);
        for (k, w) in self.weights.iter().enumerate() {
            m[k][k] = q(w[i]);
        }
        m
    }
}

struct Level {
    weights: Vec<Vec<i64>>,
    // e_img[i][b] = E_i (basis vector b), coordinates in the previous level
    e_img: Vec<Vec<Vec<Q>>>,
    // f_img[j][b'] = F_j (basis vector b' of the previous level), coordinates here
    f_img: Vec<Vec<Vec<Q>>>,
}

pub fn generator_irrep(cartan: &[Vec<i64>], hw: &[i64], cap: usize) -> Result<GeneratorIrrep> {
    let r = cartan.len();
    if hw.iter().any(|&x| x < 0) {
        return Err(Error::Usage(format!("highest weight {hw:?} is not dominant")));
    }
    let mut levels: Vec<Level> = vec![Level { weights: vec![hw.to_vec()], e_img: vec![vec![Vec::new()]; r], f_img: vec![Vec::new(); r] }];
    let mut total = 1usize;
    loop {
        let k = levels.len();
        let prev = &levels[k - 1];
        let prev_dim = prev.weights.len();
        let pp_dim = if k >= 2 { levels[k - 2].weights.len() } else { 0 };
        // candidates (j, b): F_j applied to basis vector b of level k-1
        let mut cand_weights = Vec::new();
        let mut cand_images: Vec<Vec<Q>> = Vec::new();
        for j in 0..r {
            for b in 0..prev_dim {
                let wt: Vec<i64> = (0..r).map(|i| prev.weights[b][i] - cartan[i][j]).collect();
                let mut stacked = Vec::with_capacity(r * prev_dim);
                for i in 0..r {
                    // E_i F_j b = F_j E_i b + δ_ij H_i b
                    let mut img = vec![q(0); prev_dim];
                    if k >= 2 {
                        let eb = &prev.e_img[i][b];
                        for (c, x) in eb.iter().enumerate().take(pp_dim) {
                            if !Field::is_zero(x) {
                                for (t, y) in prev.f_img[j][c].iter().enumerate() {
                                    img[t] = &img[t] + x * y;
                                }
                            }
                        }
                    }
                    if i == j {
                        img[b] = &img[b] + q(prev.weights[b][i]);
                    }
                    stacked.extend(img);
                }
                cand_weights.push(wt);
                cand_images.push(stacked);
            }
        }
        let chosen = exact::independent_subset(&cand_images);
        if chosen.is_empty() {
            break;
        }
        total += chosen.len();
        if total > cap {
            return Err(Error::Resource(format!("module dimension exceeds cap {cap}")));
        }
        // express every candidate image in the chosen basis images
        let basis_cols: Mat<Q> = exact::transpose(&chosen.iter().map(|&c| cand_images[c].clone()).collect::<Vec<_>>());
        let nb = chosen.len();
        let mut f_img = vec![vec![Vec::new(); prev_dim]; r];
        for (c, img) in cand_images.iter().enumerate() {
            let mut aug: Mat<Q> = basis_cols
                .iter()
                .zip(img)
                .map(|(row, y)| {
                    let mut rr = row.clone();
                    rr.push(y.clone());
                    rr
                })
                .collect();
            let piv = exact::rref(&mut aug);
            if piv.last() == Some(&nb) {
                return Err(Error::Internal("candidate outside span of basis".into()));
            }
            let mut coords = vec![q(0); nb];
            for (row, &p) in piv.iter().enumerate() {
                coords[p] = aug[row][nb].clone();
            }
            f_img[c / prev_dim][c % prev_dim] = coords;
        }
        let mut e_img = vec![Vec::with_capacity(nb); r];
        for &c in &chosen {
            for (i, slot) in e_img.iter_mut().enumerate() {
                slot.push(cand_images[c][i * prev_dim..(i + 1) * prev_dim].to_vec());
            }
        }
        let weights = chosen.iter().map(|&c| cand_weights[c].clone()).collect();
        levels.push(Level { weights, e_img, f_img });
    }

    // assemble global matrices
    let mut offsets = Vec::new();
    let mut acc = 0;
    for l in &levels {
        offsets.push(acc);
        acc += l.weights.len();
    }
    let n = acc;
    let mut e = vec![exact::zeros::<Q>(n, n); r];
    let mut f = vec![exact::zeros::<Q>(n, n); r];
    for (k, l) in levels.iter().enumerate().skip(1) {
        for i in 0..r {
            for (b, img) in l.e_img[i].iter().enumerate() {
                for (c, x) in img.iter().enumerate() {
                    e[i][offsets[k - 1] + c][offsets[k] + b] = x.clone();
                }
            }
            for (b, img) in l.f_img[i].iter().enumerate() {
                for (c, x) in img.iter().enumerate() {
                    f[i][offsets[k] + c][offsets[k - 1] + b] = x.clone();
                }
            }
        }
    }
    let weights = levels.into_iter().flat_map(|l| l.weights).collect();
    Ok(GeneratorIrrep { weights, e, f })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comm(a: &Mat<Q>, b: &Mat<Q>) -> Mat<Q> {
        let ab = exact::matmul(a, b);
        let ba = exact::matmul(b, a);
        ab.iter().zip(&ba).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
    }

    #[test]
    fn sl2_spin_one() {
        let m = generator_irrep(&[vec![2]], &[2], 100).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(comm(&m.e[0], &m.f[0]), m.h(0));
    }

    #[test]
    fn a2_dims_and_relations() {
        let cartan = vec![vec![2, -1], vec![-1, 2]];
        for (hw, dim) in [([1, 0], 3), ([1, 1], 8), ([2, 0], 6), ([2, 1], 15)] {
            let m = generator_irrep(&cartan, &hw, 100).unwrap();
            assert_eq!(m.dim(), dim, "{hw:?}");
            for i in 0..2 {
                for j in 0..2 {
                    let c = comm(&m.e[i], &m.f[j]);
                    if i == j {
                        assert_eq!(c, m.h(i));
                    } else {
                        assert_eq!(c, exact::zeros(m.dim(), m.dim()));
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let cartan = vec![vec![2, -1], vec![-1, 2]];
        assert!(matches!(generator_irrep(&cartan, &[3, 3], 20), Err(Error::Resource(_))));
    }
}
