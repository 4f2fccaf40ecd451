use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rootsys::RootDatum;

/// g = k·a·n with k unitary, a positive diagonal, n upper unitriangular.
#[derive(Clone, Debug)]
pub struct Iwasawa {
    pub k: DMatrix<Complex64>,
    pub a: DMatrix<Complex64>,
    pub n: DMatrix<Complex64>,
}

/// Iwasawa decomposition in the defining representation of a type-A group,
/// by QR with a positive diagonal.
pub fn iwasawa(rd: &RootDatum, g: &DMatrix<Complex64>) -> Result<Iwasawa> {
    if !rd.label().starts_with('A') {
        return Err(Error::Config(format!("Iwasawa decomposition is only provided for type A, not {}", rd.label())));
    }
    let size = rd.rank() + 1;
    if g.nrows() != size || g.ncols() != size {
        return Err(Error::Usage(format!("expected a {size}×{size} matrix")));
    }
    let scale = g.norm().max(f64::MIN_POSITIVE);
    let qr = g.clone().qr();
    let (q, r) = (qr.q(), qr.r());
    if (0..size).any(|i| r[(i, i)].norm() <= 1e-13 * scale) {
        return Err(Error::Usage("matrix is singular".into()));
    }
    let phases = DMatrix::from_fn(size, size, |i, j| if i == j { r[(i, i)] / r[(i, i)].norm() } else { Complex64::new(0.0, 0.0) });
    let k = &q * &phases;
    let r_pos = phases.adjoint() * &r;
    let a = DMatrix::from_fn(size, size, |i, j| if i == j { r_pos[(i, i)] } else { Complex64::new(0.0, 0.0) });
    let a_inv = DMatrix::from_fn(size, size, |i, j| if i == j { Complex64::new(1.0, 0.0) / r_pos[(i, i)] } else { Complex64::new(0.0, 0.0) });
    let n = a_inv * r_pos;
    Ok(Iwasawa { k, a, n })
}
