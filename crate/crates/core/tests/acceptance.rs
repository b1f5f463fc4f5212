//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines always
//! reach the output.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use cn_mkdv::arith::{Rat, XPoly, XRat};
use cn_mkdv::error::Error;
use cn_mkdv::generation::{
    audit_generation, degree_increasing_sequences, generate_family, is_degree_increasing, is_fertile, max_residual,
    random_point, GenSequence, GeneratedFamily,
};
use cn_mkdv::lie::{exp_ad_f, generator, lambda_power, shift_identities_check, GenKind, LaurentMatrix};
use cn_mkdv::miura::{dmu_dc_at, mu_j, MiuraOper};
use cn_mkdv::pseudo_diff::{pdo_root, PseudoDiffOp};
use cn_mkdv::scalar_ops::{leading_tangent_coeff, miura_map, tangent_miura, ScalarDiffOp, TangentVector};
use cn_mkdv::verify::{kdv_check, mkdv_field, oper_at, route_comparison, verify_cell_flow};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn family(n: usize, js: &[usize]) -> GeneratedFamily {
    generate_family(&GenSequence::new(n, js).unwrap()).unwrap()
}

fn fail<E: std::fmt::Display>(ctx: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{ctx}: {e}")
}

/// `count` parameter points at which the family is regular, drawn from `rng`.
fn regular_points(fam: &GeneratedFamily, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    while out.len() < count {
        let c = random_point(fam.m(), 12, rng);
        match oper_at(fam, &c) {
            Ok(_) => out.push(c),
            Err(Error::Singular(_)) => continue,
            Err(e) => panic!("unexpected error at {c:?}: {e}"),
        }
    }
    out
}

fn all_sequences(n: usize, max_len: usize) -> Vec<GenSequence> {
    (1..=max_len).flat_map(|len| degree_increasing_sequences(n, len)).collect()
}

fn closed_forms_single_step() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checks = 0;
    for n in 2..=3 {
        for j in 0..=n {
            let fam = family(n, &[j]);
            for c in regular_points(&fam, 5, &mut rng) {
                let f1 = mkdv_field(&fam, &c, 1).map_err(fail(format!("n={n} j={j}")))?;
                let d = dmu_dc_at(&fam, 1, &c).map_err(fail("dmu/dc"))?;
                if f1.entries.iter().zip(&d).any(|(a, b)| *a != -b) {
                    return Err(format!("n={n} j={j} c={c:?}: r=1 field differs from -dmu/dc_1"));
                }
                for r in [3, 5, 7] {
                    if !mkdv_field(&fam, &c, r).map_err(fail("field"))?.is_zero() {
                        return Err(format!("n={n} j={j} c={c:?}: r={r} field is nonzero"));
                    }
                }
                checks += 4;
            }
        }
    }
    Ok(format!("{checks} exact field identities"))
}

fn polynomial_vector_fields() -> Outcome {
    let seqs: Vec<GenSequence> = (2..=3).flat_map(|m| degree_increasing_sequences(2, m)).collect();
    let jobs: Vec<(GenSequence, u32)> =
        seqs.iter().flat_map(|s| (1..=2 * s.len() as u32 + 1).step_by(2).map(move |r| (s.clone(), r))).collect();
    let results: Vec<Result<Option<u32>, String>> = jobs
        .par_iter()
        .enumerate()
        .map(|(k, (seq, r))| {
            let fam = generate_family(seq).map_err(fail(seq))?;
            let m = seq.len();
            let rep = verify_cell_flow(&fam, *r, 5, 1000 + k as u64).map_err(fail(format!("J={seq} r={r}")))?;
            let zero_expected = *r as usize == 2 * m + 1;
            if !rep.verified || (zero_expected && !rep.zero_field) {
                return Err(format!("J={seq} r={r}: not verified"));
            }
            if !zero_expected && rep.samples < m + 3 {
                return Err(format!("J={seq} r={r}: only {} samples", rep.samples));
            }
            Ok(rep.degree)
        })
        .collect();
    let mut max_degree = 0;
    for res in results {
        max_degree = max_degree.max(res?.unwrap_or(0));
    }
    Ok(format!("{} sequences, {} (J, r) pairs, max gamma degree {max_degree}", seqs.len(), jobs.len()))
}

fn intertwining() -> Outcome {
    let seqs = all_sequences(2, 2);
    let results: Vec<Result<usize, String>> = seqs
        .par_iter()
        .enumerate()
        .map(|(k, seq)| {
            let fam = generate_family(seq).map_err(fail(seq))?;
            let mut rng = ChaCha8Rng::seed_from_u64(200 + k as u64);
            let mut count = 0;
            for c in regular_points(&fam, 3, &mut rng) {
                for r in [1, 3] {
                    for i in 0..4 {
                        let rep = kdv_check(&fam, &c, r, i).map_err(fail(format!("J={seq} r={r} i={i}")))?;
                        if !rep.equal {
                            return Err(format!("J={seq} c={c:?} r={r} i={i}: sides differ"));
                        }
                        count += 1;
                    }
                }
            }
            Ok(count)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{} sequences, {total} exact operator identities", seqs.len()))
}

fn random_xrat(rng: &mut ChaCha8Rng) -> XRat {
    let num: Vec<i64> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(-5..=5)).collect();
    let den: Vec<i64> = match rng.gen_range(0..3) {
        0 => vec![1],
        1 => vec![rng.gen_range(-4..=4), 1],
        _ => vec![rng.gen_range(1..=4), rng.gen_range(-3..=3), 1],
    };
    XRat::new(XPoly::from_ints(&num), XPoly::from_ints(&den)).unwrap()
}

fn random_half(n: usize, rng: &mut ChaCha8Rng) -> Vec<XRat> {
    (0..n).map(|_| random_xrat(rng)).collect()
}

fn mirrored(half: &[XRat]) -> Vec<XRat> {
    let mut v = half.to_vec();
    v.extend(half.iter().rev().map(|e| -e));
    v
}

fn leading_tangent_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let instances: Vec<(MiuraOper, TangentVector, usize)> = (0..100)
        .map(|_| {
            let n = rng.gen_range(2..=3);
            let l = MiuraOper::new(mirrored(&random_half(n, &mut rng))).unwrap();
            let x = TangentVector::from_half(&random_half(n, &mut rng)).unwrap();
            (l, x, rng.gen_range(0..=2 * n))
        })
        .collect();
    let bad: Vec<usize> = instances
        .par_iter()
        .enumerate()
        .filter_map(|(k, (l, x, i))| {
            let n = l.n();
            let ok = match (leading_tangent_coeff(l, x, *i), tangent_miura(l, x, *i)) {
                (Ok(formula), Ok(image)) => {
                    image.order().is_none_or(|o| o <= 2 * n - 2) && image.coeff(2 * n - 2) == formula
                }
                _ => false,
            };
            (!ok).then_some(k)
        })
        .collect();
    if bad.is_empty() {
        Ok("100 random instances agree exactly".into())
    } else {
        Err(format!("instances {bad:?} disagree"))
    }
}

fn wronskian_generation() -> Outcome {
    let mut steps = 0;
    let mut seqs = 0;
    for n in 2..=3 {
        let batch = all_sequences(n, 4);
        let audits: Vec<Result<usize, String>> = batch
            .par_iter()
            .map(|seq| {
                let fam = generate_family(seq).map_err(fail(seq))?;
                let audit = audit_generation(&fam).map_err(fail(seq))?;
                if let Some(s) = audit.iter().find(|s| !s.passed()) {
                    return Err(format!("J={seq} step {}: {s:?}", s.step));
                }
                let (ok, k) = is_degree_increasing(n, seq.js());
                if !ok || k != fam.tuple().degrees() {
                    return Err(format!("J={seq}: degree vector {k} vs tuple {}", fam.tuple().degrees()));
                }
                Ok(audit.len())
            })
            .collect();
        for a in audits {
            steps += a?;
        }
        seqs += batch.len();
    }
    Ok(format!("{seqs} sequences, {steps} generation steps"))
}

fn bethe_residuals() -> Outcome {
    let seqs: Vec<GenSequence> = (2..=3).flat_map(|n| all_sequences(n, 4)).collect();
    let worst: Vec<Result<f64, String>> = seqs
        .par_iter()
        .enumerate()
        .map(|(k, seq)| {
            let fam = generate_family(seq).map_err(fail(seq))?;
            let mut rng = ChaCha8Rng::seed_from_u64(600 + k as u64);
            let mut worst = 0f64;
            let mut done = 0;
            while done < 10 {
                let c = random_point(fam.m(), 10, &mut rng);
                let y = fam.tuple().specialize(&c);
                if !cn_mkdv::generation::is_generic(&y) {
                    continue;
                }
                if !is_fertile(&y).map_err(fail(seq))? {
                    return Err(format!("J={seq} c={c:?}: not fertile"));
                }
                worst = worst.max(max_residual(&y).map_err(fail(format!("J={seq} c={c:?}")))?);
                done += 1;
            }
            Ok(worst)
        })
        .collect();
    let mut max = 0f64;
    for (seq, w) in seqs.iter().zip(worst) {
        let w = w?;
        if w.is_nan() || w >= 1e-8 {
            return Err(format!("J={seq}: residual {w:e}"));
        }
        max = max.max(w);
    }
    Ok(format!("{} sequences x 10 points, max residual {max:.2e}", seqs.len()))
}

fn grade_round_trip(m: &LaurentMatrix) -> bool {
    let mut sum = LaurentMatrix::zero(m.size());
    for d in m.degrees() {
        let part = m.grade_project(d);
        if !part.is_homogeneous() {
            return false;
        }
        sum = sum.add(&part.matrix);
    }
    sum == *m
}

fn random_pdo(rng: &mut ChaCha8Rng) -> PseudoDiffOp {
    let top = rng.gen_range(0..=2);
    let coeffs: BTreeMap<i64, XRat> = (-2..=top).map(|p| (p, random_xrat(rng))).collect();
    PseudoDiffOp::new(coeffs, Some(-2))
}

fn structural_gates() -> Outcome {
    for n in 2..=3 {
        let size = 2 * n;
        let lam = lambda_power(1, n).map_err(fail("lambda"))?;
        let mut lambda_id = LaurentMatrix::zero(size);
        for i in 0..size {
            lambda_id.add_term(i, i, 1, &XRat::one(0));
        }
        if lam.pow(size as u32) != lambda_id {
            return Err(format!("n={n}: Lambda^{size} is not lambda Id"));
        }
        if !shift_identities_check(n) {
            return Err(format!("n={n}: shift identities fail"));
        }
        for i in 0..=n {
            for j in 0..=n {
                let e = generator(GenKind::E, i, n).map_err(fail("e"))?;
                let f = generator(GenKind::F, j, n).map_err(fail("f"))?;
                let expected =
                    if i == j { generator(GenKind::H, i, n).map_err(fail("h"))? } else { LaurentMatrix::zero(size) };
                if e.commutator(&f) != expected {
                    return Err(format!("n={n}: [e_{i}, f_{j}] is wrong"));
                }
            }
            let g = XRat::new(XPoly::from_ints(&[1, 2]), XPoly::from_ints(&[3, 0, 1])).unwrap();
            let (a, b) = exp_ad_f(i, &g, n).map_err(fail("exp"))?;
            if a.mul(&b) != LaurentMatrix::identity(size) {
                return Err(format!("n={n}: exp(g f_{i}) exp(-g f_{i}) is not Id"));
            }
            if !grade_round_trip(&a) {
                return Err(format!("n={n}: grade decomposition of exp(g f_{i}) does not round-trip"));
            }
        }
        let mixed = lam.add(&generator(GenKind::F, 0, n).unwrap()).mul(&generator(GenKind::E, 1, n).unwrap().add(&lam));
        if !grade_round_trip(&mixed) {
            return Err(format!("n={n}: grade decomposition does not round-trip"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for _ in 0..10 {
        let (a, b, c) = (random_pdo(&mut rng), random_pdo(&mut rng), random_pdo(&mut rng));
        if !a.mul(&b, 8).mul(&c, 8).agrees_with(&a.mul(&b.mul(&c, 8), 8)) {
            return Err("pseudodifferential product is not associative".into());
        }
    }
    for (n, js, c) in [(2, vec![0, 1], vec![Rat::new(1, 2), Rat::from_int(3)]), (3, vec![2], vec![Rat::new(-2, 5)])] {
        let mu = mu_j(&family(n, &js)).unwrap().specialize(&c).map_err(fail("mu"))?;
        for i in [0, n] {
            let l = miura_map(&mu, i).map_err(fail("m_i"))?;
            let depth = 5;
            let root = pdo_root(&l, depth).map_err(fail("root"))?;
            if !root.pow(2 * n as u32, depth).agrees_with(&PseudoDiffOp::from_diff(&l)) {
                return Err(format!("n={n} J={js:?} i={i}: root does not round-trip"));
            }
        }
    }
    let trivial = pdo_root(&ScalarDiffOp::d_power(4), 4).map_err(fail("root"))?;
    if !trivial.agrees_with(&PseudoDiffOp::d_power(1)) {
        return Err("root of d^4 is not d".into());
    }
    Ok("shift element, shift identities, grading, brackets, exponentials, pseudodifferential algebra".into())
}

fn route_equality() -> Outcome {
    let seqs: Vec<GenSequence> = (2..=3).flat_map(|n| all_sequences(n, 3)).collect();
    let results: Vec<Outcome> = seqs
        .par_iter()
        .enumerate()
        .map(|(k, seq)| {
            let fam = generate_family(seq).map_err(fail(seq))?;
            let mut rng = ChaCha8Rng::seed_from_u64(800 + k as u64);
            for c in regular_points(&fam, 2, &mut rng) {
                let cmp = route_comparison(&fam, &c).map_err(fail(format!("J={seq}")))?;
                if !cmp.all_equal() {
                    return Err(format!("n={} J={seq} c={c:?}: routes differ", seq.n()));
                }
            }
            Ok(String::new())
        })
        .collect();
    for r in results {
        r?;
    }
    Ok(format!("{} sequences x 2 points, three constructions agree", seqs.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("single-step closed forms", closed_forms_single_step),
        ("polynomial cell vector fields", polynomial_vector_fields),
        ("Miura intertwining", intertwining),
        ("leading tangent coefficient", leading_tangent_formula),
        ("Wronskian generation", wronskian_generation),
        ("Bethe residuals", bethe_residuals),
        ("structural gates", structural_gates),
        ("route equality", route_equality),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
