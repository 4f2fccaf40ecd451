use proptest::prelude::*;

use super::*;
use crate::rootsys::generator_irrep;

fn rd(label: &str) -> Arc<RootDatum> {
    Arc::new(RootDatum::build(label).unwrap())
}

fn rep(rd: &Arc<RootDatum>, hw: &[i64]) -> HighestWeightRep {
    HighestWeightRep::build(rd, &Weight::from_ints(hw)).unwrap()
}

fn to_gauss(m: &Mat<Q>) -> Mat<GaussQ> {
    m.iter().map(|r| r.iter().map(|x| GaussQ::real(x.clone())).collect()).collect()
}

fn sub(a: &Mat<Q>, b: &Mat<Q>) -> Mat<Q> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
}

#[test]
fn rank_one_examples() {
    let a1 = rd("A1");
    let r = rep(&a1, &[1]);
    assert_eq!(r.dim(), 2);
    assert_eq!(r.generator(a1.h_letter(0)), &vec![vec![q(1), q(0)], vec![q(0), q(-1)]]);
    let r2 = rep(&a1, &[2]);
    assert_eq!(r2.dim(), 3);
    let ef = Pbw::normal_order(&a1, &[a1.e_letter(0), a1.f_letter(0)], GaussQ::int(1)).unwrap();
    let m = r2.represent_exact(&ef).unwrap();
    assert_eq!(m[0][0], GaussQ::int(2));
    assert!(m.iter().skip(1).all(|row| row[0].is_zero()));
}

#[test]
fn dimensions_match_weyl_formula_and_bootstrap() {
    for (label, hw) in
        [("A2", vec![1, 0]), ("A2", vec![1, 1]), ("A2", vec![2, 1]), ("B2", vec![1, 1]), ("C2", vec![0, 2]), ("G2", vec![1, 0]), ("A3", vec![1, 0, 1])]
    {
        let rd = rd(label);
        let r = rep(&rd, &hw);
        let boot = generator_irrep(rd.cartan(), &hw, 400).unwrap();
        assert_eq!(r.dim(), boot.dim(), "{label} {hw:?}");
        let mut w1 = r.weights();
        let mut w2 = boot.weights.clone();
        w1.sort();
        w2.sort();
        assert_eq!(w1, w2);
    }
}

#[test]
fn generators_form_a_representation() {
    for (label, hw) in [("A2", vec![1, 1]), ("B2", vec![1, 1]), ("G2", vec![1, 0])] {
        let rd = rd(label);
        let r = rep(&rd, &hw);
        let n = r.dim();
        for a in 0..rd.dim() {
            for b in 0..rd.dim() {
                let lhs = sub(&exact::matmul(r.generator(a), r.generator(b)), &exact::matmul(r.generator(b), r.generator(a)));
                let mut rhs = exact::zeros::<Q>(n, n);
                for &(c, v) in rd.bracket(a, b) {
                    for i in 0..n {
                        for j in 0..n {
                            rhs[i][j] += &r.generator(c)[i][j] * q(v);
                        }
                    }
                }
                assert_eq!(lhs, rhs, "{label} [{a},{b}]");
            }
        }
    }
}

#[test]
fn contravariance_and_highest_vector() {
    for (label, hw) in [("A2", vec![2, 1]), ("B2", vec![1, 1]), ("G2", vec![0, 1])] {
        let rd = rd(label);
        let r = rep(&rd, &hw);
        let g = r.gram();
        assert_eq!(g[0][0], q(1));
        for k in 0..rd.num_positive() {
            let e = r.generator(rd.e_letter(k));
            let f = r.generator(rd.f_letter(k));
            assert_eq!(exact::matmul(&exact::transpose(e), g), exact::matmul(g, f));
            assert!(e.iter().all(|row| row[0].is_zero()), "E_α v = 0");
        }
        // orthonormal basis: E is the adjoint of F
        for k in 0..rd.num_positive() {
            let e = r.generator_f(rd.e_letter(k));
            let f = r.generator_f(rd.f_letter(k));
            assert!((e - f.adjoint()).norm() < 1e-9 * (1.0 + e.norm()));
        }
    }
}

#[test]
fn casimir_scalar() {
    for (label, hw) in [("A2", vec![1, 1]), ("B2", vec![0, 2]), ("G2", vec![1, 0])] {
        let rd = rd(label);
        let r = rep(&rd, &hw);
        let kinv = exact::inverse(rd.killing()).unwrap();
        let mut words = Vec::new();
        for a in 0..rd.dim() {
            for b in 0..rd.dim() {
                if !kinv[a][b].is_zero() {
                    words.push((vec![a, b], GaussQ::real(kinv[a][b].clone())));
                }
            }
        }
        let c = Pbw::from_words(&rd, words).unwrap();
        let lam = Weight::from_ints(&hw);
        let val = rd.killing_weights(&lam, &(&lam + &rd.rho().scale(&q(2))));
        let m = r.represent_exact(&c).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j { GaussQ::real(val.clone()) } else { GaussQ::int(0) };
                assert_eq!(x, &expect);
            }
        }
    }
}

#[test]
fn lowering_kills_highest_vector_on_vanishing_roots() {
    let a2 = rd("A2");
    let r = rep(&a2, &[1, 0]);
    let reg = a2.regularity(r.lambda());
    assert_eq!(reg.vanishing, vec![1]);
    for &k in &reg.vanishing {
        let f = r.generator(a2.f_letter(k));
        assert!(f.iter().all(|row| row[0].is_zero()));
    }
    assert!(!r.generator(a2.f_letter(0)).iter().all(|row| row[0].is_zero()));
}

#[test]
fn shapovalov_matches_harish_chandra_formula() {
    let a2 = rd("A2");
    let lam = Weight::from_ints(&[1, 1]);
    let mut verma = Verma::new(&a2, &[1, 1]);
    let f: Vec<usize> = (0..3).map(|k| a2.f_letter(k)).collect();
    let monos: Vec<Vec<usize>> = vec![vec![f[0], f[1]], vec![f[2]], vec![f[0], f[0], f[1]], vec![f[0], f[2]]];
    for x in &monos {
        for y in &monos {
            let px = Pbw::normal_order(&a2, x, GaussQ::int(1)).unwrap();
            let py = Pbw::normal_order(&a2, y, GaussQ::int(1)).unwrap();
            let lit = px.transpose().mul(&py).unwrap().phi(&lam);
            let xm: Vec<u8> = x.iter().map(|&a| a as u8).collect();
            let ym: Vec<u8> = y.iter().map(|&a| a as u8).collect();
            assert_eq!(lit, GaussQ::real(verma.form(&xm, &ym)));
        }
    }
}

#[test]
fn errors() {
    let a2 = rd("A2");
    assert!(matches!(HighestWeightRep::build(&a2, &Weight::from_ints(&[-1, 0])), Err(Error::Usage(_))));
    assert!(matches!(HighestWeightRep::build(&a2, &"w[1/2,0]".parse().unwrap()), Err(Error::Usage(_))));
    assert!(matches!(HighestWeightRep::build(&a2, &Weight::from_ints(&[20, 20])), Err(Error::Resource(_))));
    let other = rd("A2");
    let r = rep(&a2, &[1, 0]);
    assert!(matches!(r.represent(&Pbw::<GaussQ>::letter(&other, 0)), Err(Error::Usage(_))));
}

/// Invariant pairing P between E^λ and E^{λ'}: π_λ(X)ᵀ P + P π_{λ'}(X) = 0.
fn duality_pairing(a: &HighestWeightRep, b: &HighestWeightRep) -> Mat<Q> {
    let n = a.dim();
    let rd = a.root_datum();
    let mut rows: Mat<Q> = Vec::new();
    for x in 0..rd.dim() {
        let ma = a.generator(x);
        let mb = b.generator(x);
        for i in 0..n {
            for j in 0..n {
                // (maᵀ P)_{ij} + (P mb)_{ij}
                let mut row = vec![Q::zero(); n * n];
                for k in 0..n {
                    row[k * n + j] += &ma[k][i];
                    row[i * n + k] += &mb[k][j];
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let piv = exact::rref(&mut rows);
    let free: Vec<usize> = (0..n * n).filter(|c| !piv.contains(c)).collect();
    assert_eq!(free.len(), 1, "pairing unique up to scale");
    let mut p = vec![Q::zero(); n * n];
    p[free[0]] = q(1);
    for (row, &pc) in piv.iter().enumerate() {
        p[pc] = -rows[row][free[0]].clone();
    }
    (0..n).map(|i| p[i * n..(i + 1) * n].to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn homomorphism_and_transpose_identity(
        label in prop::sample::select(vec!["A1", "A2"]),
        raw in prop::collection::vec((prop::collection::vec(0usize..64, 0..=3), -3i64..=3), 1..4),
        raw2 in prop::collection::vec((prop::collection::vec(0usize..64, 0..=2), -3i64..=3), 1..3),
    ) {
        let rd = rd(label);
        let hw: Vec<i64> = if label == "A1" { vec![2] } else { vec![1, 0] };
        let lam = Weight::from_ints(&hw);
        let a = HighestWeightRep::build(&rd, &lam).unwrap();
        let b = HighestWeightRep::build(&rd, &rd.dual_weight(&lam)).unwrap();
        let mk = |raw: &Vec<(Vec<usize>, i64)>| Pbw::from_words(&rd, raw.iter().map(|(w, c)| (w.iter().map(|x| x % rd.dim()).collect(), GaussQ::int(*c)))).unwrap();
        let u = mk(&raw);
        let v = mk(&raw2);
        let uv = a.represent_exact(&u.mul(&v).unwrap()).unwrap();
        prop_assert_eq!(uv, exact::matmul(&a.represent_exact(&u).unwrap(), &a.represent_exact(&v).unwrap()));
        let p = to_gauss(&duality_pairing(&a, &b));
        let lhs = exact::matmul(&exact::transpose(&a.represent_exact(&u).unwrap()), &p);
        let rhs = exact::matmul(&p, &b.represent_exact(&u.check_involution()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
