use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::repr::HighestWeightRep;
use crate::scalar::GaussQ;

fn rd(label: &str) -> Arc<RootDatum> {
    Arc::new(RootDatum::build(label).unwrap())
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn rand_k(rd: &Arc<RootDatum>, seed: u64) -> CompactGroupElement {
    random_element(rd, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[test]
fn a1_rotation() {
    let a1 = rd("A1");
    let t = 0.37;
    let k = CompactGroupElement::from_word(&a1, &[(1, t)]);
    let mut h = DVector::<Complex64>::zeros(3);
    h[a1.h_letter(0)] = c(1.0);
    let img = k.ad() * h;
    // exp(t ad(E−F)) H = cos 2t H − sin 2t (E + F)
    assert!((img[a1.h_letter(0)] - c((2.0 * t).cos())).norm() < 1e-12);
    assert!((img[a1.e_letter(0)] + c((2.0 * t).sin())).norm() < 1e-12);
    assert!((img[a1.f_letter(0)] + c((2.0 * t).sin())).norm() < 1e-12);
}

#[test]
fn identity_and_inverse() {
    let a2 = rd("A2");
    let e = CompactGroupElement::identity(&a2);
    assert!((e.ad() - DMatrix::identity(8, 8)).norm() < 1e-15);
    let k = rand_k(&a2, 3);
    let prod = k.compose(&k.inverse());
    assert!((prod.ad() - DMatrix::identity(8, 8)).norm() < 1e-10);
    let redo = CompactGroupElement::from_factors(&a2, k.inverse().factors().to_vec());
    assert!((redo.ad() - k.ad_inv()).norm() < 1e-10);
}

#[test]
fn killing_invariance() {
    for label in ["A2", "B2", "G2"] {
        let rd = rd(label);
        let k = rand_k(&rd, 11);
        let kill = ad_data(&rd).killing.map(c);
        let lhs = k.ad().transpose() * &kill * k.ad();
        assert!((lhs - kill).norm() < 1e-9, "{label}");
    }
}

#[test]
fn psi_at_identity_and_scaling() {
    let a2 = rd("A2");
    let e = CompactGroupElement::identity(&a2);
    let lam = Weight::from_ints(&[1, 0]);
    let p = psi_weight(&a2, &lam, &e);
    let h = a2.coroot_element(&lam);
    for i in 0..2 {
        assert!((p.coords[a2.h_letter(i)] - Complex64::new(0.0, q_to_f64(&h[i]))).norm() < 1e-14);
    }
    let k = rand_k(&a2, 5);
    let p1 = psi(&a2, &[1.0, 2.0], &k);
    let p3 = psi(&a2, &[3.0, 6.0], &k);
    for (a, b) in p1.coords.iter().zip(&p3.coords) {
        assert!((a * 3.0 - b).norm() < 1e-12);
    }
    assert!(p1.compact_defect(&a2) < 1e-12);
}

#[test]
fn psi_equivariance() {
    for label in ["A1", "A2", "B2"] {
        let rd = rd(label);
        let lam: Vec<f64> = (1..=rd.rank()).map(|x| x as f64).collect();
        for s in 0..5 {
            let k = rand_k(&rd, 100 + s);
            let l = rand_k(&rd, 200 + s);
            let lhs = psi(&rd, &lam, &k.inverse().compose(&l));
            let rhs = k.ad_inv() * psi(&rd, &lam, &l).to_vector();
            assert!((lhs.to_vector() - rhs).norm() < 1e-8, "{label}");
        }
    }
}

#[test]
fn stabilizers() {
    let a1 = rd("A1");
    assert_eq!(stabilizer_basis(&a1, &Weight::from_ints(&[1])), vec![0]);
    let a2 = rd("A2");
    let st = stabilizer_basis(&a2, &Weight::from_ints(&[1, 0]));
    assert_eq!(st, vec![0, 1, 4, 5]);
    assert_eq!(a2.dim() - st.len(), 4);
    assert_eq!(stabilizer_basis(&a2, &a2.rho()).len(), 2);
    // exact: [Y, H^λ] = 0 for each stabilizer element
    for lam in [Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, 3])] {
        let h = a2.coroot_element(&lam);
        let basis = a2.compact_basis();
        for &j in &stabilizer_basis(&a2, &lam) {
            let mut acc = vec![GaussQ::int(0); a2.dim()];
            for (a, z) in &basis[j] {
                for (i, hi) in h.iter().enumerate() {
                    for &(cc, v) in a2.bracket(*a, a2.h_letter(i)) {
                        acc[cc] = &acc[cc] + &(z * &GaussQ::real(hi * crate::scalar::q(v)));
                    }
                }
            }
            assert!(acc.iter().all(|x| x.is_zero()));
            let k = CompactGroupElement::from_word(&a2, &[(j, 0.83)]);
            let p0 = psi_weight(&a2, &lam, &CompactGroupElement::identity(&a2));
            let p1 = psi_weight(&a2, &lam, &k);
            assert!((p0.to_vector() - p1.to_vector()).norm() < 1e-9);
        }
    }
}

#[test]
fn casimir_constant_on_orbit() {
    let a2 = rd("A2");
    let kinv = crate::exact::inverse(a2.killing()).unwrap();
    let mut terms = Vec::new();
    for a in 0..8 {
        for b in 0..8 {
            if !num_traits::Zero::is_zero(&kinv[a][b]) {
                terms.push((vec![a as u8, b as u8], GaussQ::real(kinv[a][b].clone())));
            }
        }
    }
    let cas = SymPoly::from_terms(&a2, terms);
    let lam = [2.0, 1.0];
    let vals: Vec<Complex64> = (0..100).map(|s| eval_on_orbit(&cas, &psi(&a2, &lam, &rand_k(&a2, s)))).collect();
    let mean = vals.iter().sum::<Complex64>() / 100.0;
    let var = vals.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / 100.0;
    assert!(var < 1e-12);
    // p = X̃ at Ψ(e) is (X, iH^λ)
    let x = SymPoly::<GaussQ>::var(&a2, a2.h_letter(0));
    let p = psi(&a2, &lam, &CompactGroupElement::identity(&a2));
    let expect = killing_pair(
        &a2,
        &{
            let mut v = vec![c(0.0); 8];
            v[a2.h_letter(0)] = c(1.0);
            v
        },
        &p.coords,
    );
    assert!((eval_on_orbit(&x, &p) - expect).norm() < 1e-14);
    assert!((eval_on_orbit(&SymPoly::constant(&a2, GaussQ::int(7)), &p) - c(7.0)).norm() < 1e-14);
}

#[test]
fn haar_weights_and_modes() {
    let a1 = rd("A1");
    let qs = haar_samples(&a1, 6, HaarMode::Quadrature, 0).unwrap();
    assert_eq!(qs.len(), 2 * 6 * 6 * 6);
    assert!((qs.weights.iter().sum::<f64>() - 1.0).abs() < 1e-13);
    assert!(qs.weights.iter().all(|&w| w > 0.0));
    let a2 = rd("A2");
    assert!(matches!(haar_samples(&a2, 6, HaarMode::Quadrature, 0), Err(crate::Error::Config(_))));
    let mc1 = haar_samples(&a2, 10, HaarMode::MonteCarlo, 42).unwrap();
    let mc2 = haar_samples(&a2, 10, HaarMode::MonteCarlo, 42).unwrap();
    assert_eq!(mc1.nodes[7].factors(), mc2.nodes[7].factors());
}

#[test]
fn type_a_sampler_reproduces_unitary() {
    let a2 = rd("A2");
    let rep = HighestWeightRep::build(&a2, &Weight::from_ints(&[1, 0])).unwrap();
    let k = rand_k(&a2, 9);
    let u = rep.group_action(&k);
    assert!((u.adjoint() * &u - DMatrix::identity(3, 3)).norm() < 1e-10);
    assert!((u.determinant() - c(1.0)).norm() < 1e-10);
}

#[test]
fn schur_orthogonality_quadrature() {
    // q ∫ |⟨v_k, w⟩|² dk = ⟨w, w⟩
    let a1 = rd("A1");
    let qs = haar_samples(&a1, 8, HaarMode::Quadrature, 0).unwrap();
    for hw in [1, 2, 3] {
        let rep = HighestWeightRep::build(&a1, &Weight::from_ints(&[hw])).unwrap();
        let n = rep.dim();
        let w = DVector::from_fn(n, |i, _| Complex64::new(0.3 + i as f64, -0.7 * i as f64));
        let val = qs.integrate(|k| {
            let vk = rep.group_action(k).column(0).into_owned();
            c(vk.dotc(&w).norm_sqr())
        });
        assert!((val * n as f64 - c(w.norm_squared())).norm() < 1e-10, "hw {hw}: {val} vs {}", w.norm_squared() / n as f64);
    }
}

#[test]
fn su2_at_pi() {
    let a1 = rd("A1");
    let rep = HighestWeightRep::build(&a1, &Weight::from_ints(&[1])).unwrap();
    let u = rep.group_action(&CompactGroupElement::from_word(&a1, &[(1, PI)]));
    assert!((u + DMatrix::identity(2, 2)).norm() < 1e-12);
}

#[test]
fn iwasawa_examples() {
    let a1 = rd("A1");
    let g = DMatrix::from_row_slice(2, 2, &[Complex64::new(1.0, 2.0), c(0.5), Complex64::new(0.0, -1.0), c(3.0)]);
    let d = iwasawa(&a1, &g).unwrap();
    assert!((&d.k * &d.a * &d.n - &g).norm() < 1e-10);
    assert!((d.k.adjoint() * &d.k - DMatrix::identity(2, 2)).norm() < 1e-12);
    for i in 0..2 {
        assert!(d.a[(i, i)].im.abs() < 1e-14 && d.a[(i, i)].re > 0.0);
        assert!((d.n[(i, i)] - c(1.0)).norm() < 1e-12);
    }
    let upper = DMatrix::from_row_slice(2, 2, &[c(2.0), c(1.0), c(0.0), c(3.0)]);
    let d = iwasawa(&a1, &upper).unwrap();
    assert!((d.k - DMatrix::identity(2, 2)).norm() < 1e-12);
    let sing = DMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(2.0), c(4.0)]);
    assert!(matches!(iwasawa(&a1, &sing), Err(crate::Error::Usage(_))));
    assert!(matches!(iwasawa(&rd("B2"), &upper), Err(crate::Error::Config(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn poisson_restriction_equivariance(seed in 0u64..1000, raw in prop::collection::vec((prop::collection::vec(0usize..8, 1..=2), -2i64..=2), 2..5)) {
        let a2 = rd("A2");
        let p = SymPoly::from_terms(&a2, raw.iter().step_by(2).map(|(w, c)| (w.iter().map(|&x| x as u8).collect(), GaussQ::int(*c))));
        let q = SymPoly::from_terms(&a2, raw.iter().skip(1).step_by(2).map(|(w, c)| (w.iter().map(|&x| x as u8).collect(), GaussQ::int(*c))));
        let k = rand_k(&a2, seed);
        let x = psi(&a2, &[1.0, 1.0], &rand_k(&a2, seed + 7));
        let kx = OrbitPoint { coords: (k.ad() * x.to_vector()).iter().copied().collect() };
        let lhs = eval_on_orbit(&p.poisson(&q).unwrap(), &kx);
        // p∘Ad(k⁻¹)… evaluated at x equals p at Ad(k)x
        let pk = p.to_complex().linear_substitute(k.ad_inv());
        let qk = q.to_complex().linear_substitute(k.ad_inv());
        let rhs = eval_on_orbit(&pk.poisson(&qk).unwrap(), &x);
        prop_assert!((lhs - rhs).norm() < 1e-8 * (1.0 + lhs.norm()));
    }
}
