//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use flagquant::exact;
use flagquant::orbit::{haar_samples, random_element, CompactGroupElement, HaarMode};
use flagquant::repr::HighestWeightRep;
use flagquant::rootsys::{RootDatum, Weight};
use flagquant::scalar::{q, q_frac, GaussQ};
use flagquant::starprod::{classical_limit, classical_limit_exact_at_identity, correspondence_suite, level_errors, rationality_check, LevelOptions, StarLevel};
use flagquant::symbols::{
    compact_norm, contravariant_reconstruct, covariant_symbol, coxeter_twist_check, mixed_symbol, right_shift_derivative, s_lambda,
    stabilizer_invariance_error, trace_duality_check, trace_pairing, CoherentSystem, Reference, SpanningSet, SymbolMap,
};
use flagquant::uea::{Mono, Pbw, SymPoly};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MC_SAMPLES: usize = 200_000;
const MC_CHUNK: usize = 25_000;

type Check = Result<String, String>;

fn rd(label: &str) -> Arc<RootDatum> {
    Arc::new(RootDatum::build(label).unwrap())
}

fn rep(rd: &Arc<RootDatum>, lam: &[i64]) -> HighestWeightRep {
    HighestWeightRep::build(rd, &Weight::from_ints(lam)).unwrap()
}

fn rand_k(rd: &Arc<RootDatum>, rng: &mut ChaCha8Rng) -> CompactGroupElement {
    random_element(rd, rng)
}

fn coeff(rng: &mut ChaCha8Rng) -> GaussQ {
    GaussQ::new(q(rng.random_range(-3..=3)), q(rng.random_range(-1..=1)))
}

/// A sum of 1 to 3 random words of length ≤ `max_deg`.
fn random_u(rd: &Arc<RootDatum>, rng: &mut ChaCha8Rng, max_deg: usize) -> Pbw<GaussQ> {
    let terms = rng.random_range(1..=3);
    let words: Vec<(Vec<usize>, GaussQ)> = (0..terms)
        .map(|_| {
            let d = rng.random_range(0..=max_deg);
            ((0..d).map(|_| rng.random_range(0..rd.dim())).collect(), coeff(rng))
        })
        .collect();
    Pbw::from_words(rd, words).unwrap()
}

/// A nonzero element whose principal symbol has degree exactly `d`.
fn random_of_degree(rd: &Arc<RootDatum>, rng: &mut ChaCha8Rng, d: usize) -> Pbw<GaussQ> {
    loop {
        let terms = rng.random_range(2..=3);
        let words: Vec<(Vec<usize>, GaussQ)> = (0..terms).map(|_| ((0..d).map(|_| rng.random_range(0..rd.dim())).collect(), coeff(rng))).collect();
        let u = Pbw::from_words(rd, words).unwrap();
        if u.degree() == Some(d) {
            return u;
        }
    }
}

fn random_operator(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn poly(rd: &Arc<RootDatum>, s: &str) -> SymPoly<GaussQ> {
    SymPoly::parse(rd, s).unwrap()
}

/// Equal-weight Monte Carlo mean of a matrix-valued sample and its entrywise
/// standard error, drawn in chunks to bound memory.
fn mc_matrix_mean<F>(rd: &Arc<RootDatum>, seed: u64, f: F) -> (DMatrix<Complex64>, DMatrix<f64>)
where
    F: Fn(&CompactGroupElement) -> DMatrix<Complex64>,
{
    let mut sum: Option<DMatrix<Complex64>> = None;
    let mut sq: Option<DMatrix<f64>> = None;
    for c in 0..MC_SAMPLES / MC_CHUNK {
        let set = haar_samples(rd, MC_CHUNK, HaarMode::MonteCarlo, seed + c as u64).unwrap();
        for k in &set.nodes {
            let v = f(k);
            let s2 = v.map(|z| z.norm_sqr());
            sum = Some(match sum {
                Some(s) => s + v,
                None => v,
            });
            sq = Some(match sq {
                Some(s) => s + s2,
                None => s2,
            });
        }
    }
    let n = MC_SAMPLES as f64;
    let mean = sum.unwrap() / Complex64::new(n, 0.0);
    let second = sq.unwrap() / n;
    let se = DMatrix::from_fn(mean.nrows(), mean.ncols(), |i, j| ((second[(i, j)] - mean[(i, j)].norm_sqr()).max(0.0) * n / (n - 1.0) / n).sqrt());
    (mean, se)
}

fn criterion_1() -> Check {
    let cases: [(&str, &[i64]); 5] = [("A1", &[1]), ("A1", &[2]), ("A1", &[3]), ("A2", &[1, 0]), ("A2", &[1, 1])];
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for (label, lam) in cases {
        let g = rd(label);
        let r = rep(&g, lam);
        let lf: Vec<f64> = lam.iter().map(|&x| x as f64).collect();
        for _ in 0..50 {
            let u = random_u(&g, &mut rng, 3);
            let k = rand_k(&g, &mut rng);
            let oracle = covariant_symbol(&r, &r.represent(&u).unwrap(), &k);
            worst = worst.max((oracle - s_lambda(&u, &lf, &k).unwrap()).norm());
        }
    }
    let msg = format!("max |<π(u)kv,kv> - φ(Ad(k⁻¹)u)| = {worst:.2e} over 250 pairs");
    if worst < 1e-7 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_2() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(202);

    let a1 = rd("A1");
    let qs = haar_samples(&a1, 12, HaarMode::Quadrature, 0).unwrap();
    let mut worst = 0.0f64;
    for lam in 1..=3 {
        let r = rep(&a1, &[lam]);
        let d = r.dim();
        let one = flagquant::symbols::SampledFunction {
            values: vec![Complex64::new(1.0, 0.0); qs.len()],
            lambda: vec![lam as f64],
            provenance: flagquant::symbols::Provenance::SMap,
        };
        for which in [Reference::Highest, Reference::Lowest] {
            let b = contravariant_reconstruct(&r, &one, &qs, which).unwrap();
            worst = worst.max((b - DMatrix::<Complex64>::identity(d, d)).norm());
        }
        let sys = CoherentSystem::new(&r, Reference::Highest);
        let a = random_operator(d, &mut rng);
        let c = random_operator(d, &mut rng);
        let f = sys.covariant_sampled(&a, &qs);
        let g = sys.covariant_sampled(&c, &qs);
        let b = sys.reconstruct(&g, &qs).unwrap();
        let (lhs, _) = trace_pairing(&f, &g, &qs, d).unwrap();
        worst = worst.max((lhs - (&a * b).trace()).norm());
        for _ in 0..4 {
            let u1 = random_u(&a1, &mut rng, 2);
            let u2 = random_u(&a1, &mut rng, 2);
            worst = worst.max(trace_duality_check(&r, &u1, &u2, &qs).unwrap().difference);
        }
    }
    ok &= worst < 1e-7;
    notes.push(format!("A1 quadrature max error {worst:.2e}"));

    let a2 = rd("A2");
    let r = rep(&a2, &[1, 0]);
    let d = r.dim();
    let qd = d as f64;
    let a = random_operator(d, &mut rng);
    let sys = CoherentSystem::new(&r, Reference::Highest);
    let (mean, se) = mc_matrix_mean(&a2, 7_000, |k| DMatrix::from_element(1, 1, sys.covariant(&a, k) * qd));
    let diff = (mean[(0, 0)] - a.trace()).norm();
    let pass = diff <= 3.0 * se[(0, 0)];
    ok &= pass;
    notes.push(format!("A2 q∫cov(A) - tr A = {diff:.2e} (3σ = {:.2e})", 3.0 * se[(0, 0)]));

    let u1 = random_u(&a2, &mut rng, 2);
    let u2 = random_u(&a2, &mut rng, 2);
    let set = haar_samples(&a2, MC_SAMPLES, HaarMode::MonteCarlo, 9_000).unwrap();
    let duality = trace_duality_check(&r, &u1, &u2, &set).unwrap();
    ok &= duality.difference <= 3.0 * duality.stderr;
    notes.push(format!("A2 trace duality difference {:.2e} (3σ = {:.2e})", duality.difference, 3.0 * duality.stderr));
    let msg = notes.join("; ");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst = 0.0f64;
    for (label, lam) in [("A1", vec![1]), ("A2", vec![1, 0]), ("A2", vec![1, 1])] {
        let g = rd(label);
        let w = Weight::from_ints(&lam);
        if !g.regularity(&w).relatively_regular {
            return Err(format!("{label} {lam:?} reported as not relatively regular"));
        }
        let ks: Vec<_> = (0..4).map(|_| rand_k(&g, &mut rng)).collect();
        for _ in 0..5 {
            let u = random_u(&g, &mut rng, 3);
            worst = worst.max(stabilizer_invariance_error(&u, &w, &ks, &[0.3, 1.1, 2.5]).unwrap());
        }
    }
    let a2 = rd("A2");
    let gamma = a2.root_index(&[1, 1]).unwrap();
    let (i1, i2) = (a2.root_index(&[1, 0]).unwrap(), a2.root_index(&[0, 1]).unwrap());
    let u = Pbw::<GaussQ>::normal_order(&a2, &[a2.e_letter(i1), a2.e_letter(i2)], GaussQ::int(1)).unwrap();
    let mut y = vec![0.0; a2.dim()];
    y[a2.rank() + 2 * gamma] = 1.0;
    let deriv = right_shift_derivative(&u, &[1.0, -1.0], &y).unwrap().norm() / compact_norm(&a2, &y);
    let msg = format!("invariance error {worst:.2e}; witness normalized derivative {deriv:.3}");
    if worst < 1e-7 && deriv > 0.1 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let ts: Vec<f64> = (0..11).map(|j| 4.1 * (63.7f64 / 4.1).powf(j as f64 / 10.0)).collect();
    let mut slopes = Vec::new();
    let mut ok = true;
    for (label, lam) in [("A1", vec![1.0]), ("A2", vec![1.0, 0.5]), ("A2", vec![2.0, 1.0]), ("B2", vec![1.0, 1.0])] {
        let g = rd(label);
        for d in [2, 3] {
            let u = random_of_degree(&g, &mut rng, d);
            let k = rand_k(&g, &mut rng);
            let s = classical_limit(&u, &lam, &k, &ts).unwrap().slope;
            ok &= s.is_some_and(|s| (-1.2..=-0.8).contains(&s));
            slopes.push(s.map_or("none".to_string(), |s| format!("{s:.3}")));
        }
    }
    let mut exact_ok = true;
    for label in ["A1", "A2", "B2"] {
        let g = rd(label);
        for d in 1..=4 {
            let terms: Vec<(Vec<usize>, GaussQ)> =
                (0..3).map(|_| ((0..d).map(|_| g.h_letter(rng.random_range(0..g.rank()))).collect(), GaussQ::int(rng.random_range(-4..=4)))).collect();
            let u = Pbw::from_words(&g, terms).unwrap();
            if u.is_zero() {
                continue;
            }
            let lam = Weight::from_ints(&(0..g.rank()).map(|_| rng.random_range(-3..=3)).collect::<Vec<_>>());
            for t in [q_frac(3, 2), q_frac(27, 10), q_frac(17, 3), q(64)] {
                exact_ok &= classical_limit_exact_at_identity(&u, &lam, &t).unwrap().is_zero();
            }
        }
    }
    ok &= exact_ok;
    let msg = format!("slopes [{}]; pure-Cartan exact zero: {exact_ok}", slopes.join(", "));
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

struct Family {
    label: &'static str,
    base: Vec<i64>,
    f1: &'static str,
    f2: &'static str,
    x: &'static str,
    y: &'static str,
    ns: Vec<u32>,
    held_out: usize,
}

fn families() -> Vec<Family> {
    vec![
        Family {
            label: "A1",
            base: vec![1],
            f1: "H[a1] E[a1]",
            f2: "F[a1]^2 + H[a1]",
            x: "E[a1] + H[a1]",
            y: "F[a1]",
            ns: vec![2, 3, 4, 5, 6, 8, 10, 13, 16, 20, 25, 32, 40],
            held_out: 24,
        },
        Family {
            label: "A2",
            base: vec![1, 0],
            f1: "H[a1] E[a1+a2]",
            f2: "F[a1] F[a2] + H[a2]",
            x: "E[a1] + H[a2]",
            y: "F[a1+a2] + 2 E[a2]",
            ns: vec![2, 3, 4, 5, 6, 8, 10, 12, 15],
            held_out: 12,
        },
    ]
}

fn criterion_5() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for fam in families() {
        let g = rd(fam.label);
        let base = Weight::from_ints(&fam.base);
        let opts = LevelOptions { held_out: fam.held_out, seed: 5, ..LevelOptions::default() };
        let rep = correspondence_suite(&g, &base, &[], &poly(&g, fam.f1), &poly(&g, fam.f2), &fam.ns, &opts).unwrap();
        let (s1, s2) = (rep.slope_e1, rep.slope_e2);
        ok &= s1.is_some_and(|s| s <= -0.8) && s2.is_some_and(|s| s <= -0.8);
        let (x, y) = (poly(&g, fam.x), poly(&g, fam.y));
        let mut lin = 0.0f64;
        for &n in &fam.ns {
            let level = StarLevel::new(&g, &base, n, &[], opts.clone()).unwrap();
            match level_errors(&level, &x, &y).unwrap() {
                Some((_, e2, _)) => lin = lin.max(e2),
                None => lin = f64::INFINITY,
            }
        }
        ok &= lin < 1e-8;
        notes.push(format!(
            "{} n≤{}: slope e1 {}, e2 {}, linear commutator {lin:.2e}",
            fam.label,
            fam.ns.last().unwrap(),
            s1.map_or("none".into(), |s| format!("{s:.3}")),
            s2.map_or("none".into(), |s| format!("{s:.3}")),
        ));
    }
    let msg = notes.join("; ");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_6() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    let ns: Vec<u32> = (4..=24).collect();
    for fam in families() {
        let g = rd(fam.label);
        let base = Weight::from_ints(&fam.base);
        let opts = LevelOptions { held_out: 4, seed: 6, dim_cap: 400, ..LevelOptions::default() };
        let fit = rationality_check(&g, &base, &poly(&g, fam.f1), &poly(&g, fam.f2), &ns, &opts, 6).unwrap();
        ok &= fit.residual < 1e-6 && fit.finite_at_infinity;
        notes.push(format!("{}: m {}, residual {:.2e}, deg p {} ≤ deg q {}: {}", fam.label, fit.m, fit.residual, fit.deg_p, fit.deg_q, fit.finite_at_infinity));
    }
    let msg = notes.join("; ");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_7() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    let a1 = rd("A1");
    let a2 = rd("A2");
    let cases: Vec<(&Arc<RootDatum>, Vec<i64>, &str, u32, u32)> = vec![
        (&a1, vec![1], "H[a1]^2", 8, 2),
        (&a1, vec![1], "H[a1]^2 E[a1]", 8, 3),
        (&a1, vec![1], "E[a1]^4 + F[a1]", 8, 4),
        (&a2, vec![1, 0], "H[a1] E[a1+a2]", 5, 2),
        (&a2, vec![1, 0], "F[a1] F[a2] E[a1]", 5, 3),
    ];
    for (g, base, f, n_max, expect) in cases {
        let p = poly(g, f);
        let one = poly(g, "1");
        let ns: Vec<u32> = (1..=n_max).collect();
        let opts = LevelOptions { held_out: 6, seed: 7, ..LevelOptions::default() };
        let rep = correspondence_suite(g, &Weight::from_ints(&base), &[], &p, &one, &ns, &opts).unwrap();
        ok &= rep.weak_nesting && rep.membership_threshold == Some(expect);
        let pattern: String = rep.rows.iter().map(|r| if r.in_algebra { '+' } else { '.' }).collect();
        notes.push(format!("{} {f}: {pattern} n₀={:?}", g.label(), rep.membership_threshold));
    }
    let msg = notes.join("; ");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Normal ordering by repeatedly rewriting a randomly chosen out-of-order
/// adjacent pair, with no caching.
fn naive_order(rd: &RootDatum, word: Vec<usize>, rng: &mut ChaCha8Rng) -> BTreeMap<Mono, GaussQ> {
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    let mut stack = vec![(word, 1i64)];
    while let Some((w, c)) = stack.pop() {
        let bad: Vec<usize> = (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect();
        if bad.is_empty() {
            *out.entry(w).or_insert(0) += c;
            continue;
        }
        let i = bad[rng.random_range(0..bad.len())];
        let mut swapped = w.clone();
        swapped.swap(i - 1, i);
        stack.push((swapped, c));
        for &(z, v) in rd.bracket(w[i - 1], w[i]) {
            let mut shorter = w[..i - 1].to_vec();
            shorter.push(z);
            shorter.extend(&w[i + 1..]);
            stack.push((shorter, c * v));
        }
    }
    out.into_iter().filter(|(_, v)| *v != 0).map(|(m, v)| (m.iter().map(|&a| a as u8).collect(), GaussQ::int(v))).collect()
}

/// Σ K⁻¹[a][b] X_a X_b for the Killing form K.
fn casimir(rd: &Arc<RootDatum>) -> Pbw<GaussQ> {
    let kinv = exact::inverse(rd.killing()).unwrap();
    let n = rd.dim();
    let words =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| !kinv[a][b].is_zero()).map(|(a, b)| (vec![a, b], GaussQ::real(kinv[a][b].clone())));
    Pbw::from_words(rd, words.collect::<Vec<_>>()).unwrap()
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut failures: Vec<String> = Vec::new();
    let mut counts = [0usize; 6];
    let casimir_weights: [(&str, Vec<Vec<i64>>); 3] =
        [("A2", vec![vec![1, 0], vec![1, 1], vec![2, 0]]), ("B2", vec![vec![1, 0], vec![0, 1], vec![1, 1]]), ("G2", vec![vec![1, 0], vec![0, 1]])];
    for (label, weights) in casimir_weights {
        let g = rd(label);
        for _ in 0..200 {
            let len = rng.random_range(0..=5);
            let word: Vec<usize> = (0..len).map(|_| rng.random_range(0..g.dim())).collect();
            let fast = Pbw::normal_order(&g, &word, GaussQ::int(1)).unwrap();
            if fast.terms() != &naive_order(&g, word.clone(), &mut rng) {
                failures.push(format!("{label} confluence {word:?}"));
            }
            counts[0] += 1;
        }
        for _ in 0..80 {
            let x = random_u(&g, &mut rng, 3);
            let y = random_u(&g, &mut rng, 2);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let (d1, s1) = x.principal_symbol().unwrap();
            let (d2, s2) = y.principal_symbol().unwrap();
            let (d, s) = x.mul(&y).unwrap().principal_symbol().unwrap();
            if d != d1 + d2 || s != s1.mul(&s2).unwrap() {
                failures.push(format!("{label} product symbol"));
            }
            let comm = x.commutator(&y).unwrap();
            let pb = s1.poisson(&s2).unwrap();
            let bracket_ok = match comm.principal_symbol() {
                Err(_) => pb.is_zero(),
                Ok((dc, sc)) if dc + 1 == d1 + d2 => sc == pb,
                Ok((dc, _)) => dc + 1 < d1 + d2 && pb.is_zero(),
            };
            if !bracket_ok {
                failures.push(format!("{label} commutator symbol"));
            }
            counts[1] += 1;

            let xy = x.mul(&y).unwrap();
            let inv_ok = x.check_involution().check_involution() == x
                && xy.check_involution() == y.check_involution().mul(&x.check_involution()).unwrap()
                && x.theta().theta() == x
                && xy.theta() == x.theta().mul(&y.theta()).unwrap()
                && x.transpose().transpose() == x
                && xy.transpose() == y.transpose().mul(&x.transpose()).unwrap();
            if !inv_ok {
                failures.push(format!("{label} involutions"));
            }
            counts[2] += 1;
        }
        for _ in 0..40 {
            let d = rng.random_range(1..=5);
            let terms: Vec<(Mono, GaussQ)> = (0..3)
                .map(|_| {
                    let mut m: Mono = (0..d).map(|_| rng.random_range(0..g.dim()) as u8).collect();
                    m.sort_unstable();
                    (m, coeff(&mut rng))
                })
                .collect();
            let p = SymPoly::from_terms(&g, terms);
            if p.is_zero() {
                continue;
            }
            match Pbw::symmetrize(&p).and_then(|b| b.principal_symbol()) {
                Ok((deg, s)) if deg == d && s == p => {}
                _ => failures.push(format!("{label} symmetrization section")),
            }
            counts[3] += 1;
        }
        let c = casimir(&g);
        for a in 0..g.dim() {
            if !c.commutator(&Pbw::letter(&g, a)).unwrap().is_zero() {
                failures.push(format!("{label} Casimir not central"));
            }
        }
        for lam in weights {
            let w = Weight::from_ints(&lam);
            let r = HighestWeightRep::build(&g, &w).unwrap();
            let m = r.represent_exact(&c).unwrap();
            let two_rho = g.rho().scale(&q(2));
            let expect = GaussQ::real(g.killing_weights(&w, &(&w + &two_rho)));
            let n = r.dim();
            let scalar = (0..n).all(|i| (0..n).all(|j| if i == j { m[i][j] == expect } else { m[i][j].is_zero() }));
            if !scalar {
                failures.push(format!("{label} Casimir on {lam:?}"));
            }
            counts[4] += 1;
        }
    }
    let msg = format!(
        "{} confluence words, {} symbol pairs, {} involution pairs, {} sections, {} Casimir reps; failures: {}",
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        counts[4],
        if failures.is_empty() { "none".to_string() } else { failures.join(", ") }
    );
    if failures.is_empty() {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut ok = true;
    let mut notes = Vec::new();
    let mut twist = 0.0f64;
    for (label, lams) in [("A1", vec![vec![1], vec![2], vec![3]]), ("A2", vec![vec![1, 0], vec![1, 1], vec![0, 2]])] {
        let g = rd(label);
        for lam in lams {
            let w = Weight::from_ints(&lam);
            for _ in 0..10 {
                let u = random_u(&g, &mut rng, 3);
                let k = rand_k(&g, &mut rng);
                twist = twist.max(coxeter_twist_check(&u, &w, &k).unwrap().norm());
            }
        }
    }
    ok &= twist < 1e-6;
    notes.push(format!("Coxeter twist max {twist:.2e}"));

    let a1 = rd("A1");
    let qs = haar_samples(&a1, 12, HaarMode::Quadrature, 0).unwrap();
    let mut recon = 0.0f64;
    for lam in 1..=3 {
        let r = rep(&a1, &[lam]);
        let span = SpanningSet::build(&r, None).unwrap();
        let a = random_operator(r.dim(), &mut rng);
        let g = mixed_symbol(&r, &span, &a, a1.longest_element()).unwrap().sample(&qs);
        let b = contravariant_reconstruct(&r, &g, &qs, Reference::Lowest).unwrap();
        recon = recon.max((b - a).norm());
    }
    ok &= recon < 1e-6;
    notes.push(format!("A1 reconstruction error {recon:.2e}"));

    let a2 = rd("A2");
    let r = rep(&a2, &[1, 0]);
    let d = r.dim();
    let span = SpanningSet::build(&r, None).unwrap();
    let a = random_operator(d, &mut rng);
    let mixed: SymbolMap = mixed_symbol(&r, &span, &a, a2.longest_element()).unwrap();
    let sys = CoherentSystem::new(&r, Reference::Lowest);
    let (b, se) = mc_matrix_mean(&a2, 11_000, |k| {
        let v = sys.vector(k);
        &v * v.adjoint() * (mixed.eval(k) * d as f64)
    });
    let err = (b - &a).norm();
    let tol = 3.0 * se.norm();
    ok &= err <= tol;
    notes.push(format!("A2 reconstruction error {err:.2e} (3σ = {tol:.2e})"));
    let msg = notes.join("; ");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("coherent-state oracle", criterion_1),
        ("resolution of identity and trace dualities", criterion_2),
        ("right stabilizer invariance", criterion_3),
        ("classical limit of symbols", criterion_4),
        ("correspondence principle", criterion_5),
        ("rationality in n", criterion_6),
        ("weak nesting", criterion_7),
        ("exact algebra suite", criterion_8),
        ("Coxeter twist and mixed-symbol reconstruction", criterion_9),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let idx = i + 1;
        if !only.is_empty() && !only.contains(&idx) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let text = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", text.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {idx} PASS {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {idx} FAIL {name} ({secs:.1}s): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
