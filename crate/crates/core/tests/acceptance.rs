//! Acceptance gate. Prints one line per criterion and exits non-zero if any
//! of them fails.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use a2kt::cktwo::{
    homology_complex, identity_bounds_check, joined, k_theory_a2, k_theory_general, KTheoryReport,
};
use a2kt::presentation::{builtin, builtin_text, validate, TrianglePresentation, Triple};
use a2kt::report::KTheoryDocument;
use a2kt::transition::{build_check, build_hat};
use a2kt::zmat::{coker_structure, snf, IntMatrix};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{oracle, pairs, singer};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_builtin(name: &str) -> Result<(KTheoryReport, Duration), String> {
    let start = Instant::now();
    let p = builtin(name).map_err(|e| e.to_string())?;
    let vp = validate(&p).map_err(|e| e.to_string())?;
    let r = k_theory_a2(&vp).map_err(|e| e.to_string())?;
    Ok((r, start.elapsed()))
}

fn reproduce(name: &str, primary: &str) -> Result<(KTheoryReport, Duration), String> {
    let (r, t) = run_builtin(name)?;
    ensure(r.k0 == r.k1, || format!("K0 {} != K1 {}", r.k0, r.k1))?;
    ensure(r.k0.primary_string() == primary, || {
        format!("K0 = {}, expected {primary}", r.k0.primary_string())
    })?;
    ensure(r.r() == 0, || format!("r = {}", r.r()))?;
    ensure(r.identity_class_order == BigInt::from(1), || {
        format!("order of [id] = {}", r.identity_class_order)
    })?;
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok((r, t))
}

fn criterion_1() -> Outcome {
    let (r, t) = reproduce("B.2", "(Z/2)^2 + Z/3")?;
    Ok(format!(
        "K0 = K1 = {}, r = 0, [id] = 0, {t:?}",
        r.k0.primary_string()
    ))
}

fn criterion_2() -> Outcome {
    let (c1, t) = reproduce("C.1", "(Z/2)^4 + Z/3")?;
    let (b2, _) = run_builtin("B.2")?;
    let doc = |r: &KTheoryReport, name: &str| {
        KTheoryDocument::new(r, builtin_text(name).unwrap(), 0.0).to_json()
    };
    ensure(b2.k0 != c1.k0, || "B.2 and C.1 have the same K0".into())?;
    ensure(doc(&b2, "B.2") != doc(&c1, "C.1"), || {
        "reports coincide".into()
    })?;
    Ok(format!(
        "K0 = K1 = {}, differs from B.2, {t:?}",
        c1.k0.primary_string()
    ))
}

fn criterion_3() -> Outcome {
    let four = BigInt::from(4);
    for name in ["B.2", "C.1"] {
        let vp = validate(&builtin(name).unwrap()).map_err(|e| e.to_string())?;
        ensure(vp.closure().len() == 21, || {
            format!("{name}: |A| = {}", vp.closure().len())
        })?;
        let hat = build_hat(&vp).map_err(|e| e.to_string())?;
        let check = build_check(&vp).map_err(|e| e.to_string())?;
        for (label, m) in [
            ("hat1", &hat.m1),
            ("hat2", &hat.m2),
            ("check1", &check.m1),
            ("check2", &check.m2),
        ] {
            ensure(
                m.row_sums()
                    .iter()
                    .chain(m.col_sums().iter())
                    .all(|s| *s == four),
                || format!("{name} {label}: a line sum differs from 4"),
            )?;
        }
    }
    Ok("|A| = 21, all line sums 4 for B.2 and C.1".into())
}

/// Same presentation with the generators renamed by a random permutation.
fn relabel<R: Rng>(p: &TrianglePresentation, rng: &mut R) -> TrianglePresentation {
    let n = p.names.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut names = vec![String::new(); n];
    for (i, &j) in perm.iter().enumerate() {
        names[j] = p.names[i].clone();
    }
    TrianglePresentation {
        q: p.q,
        names,
        relators: p
            .relators
            .iter()
            .map(|t| Triple::new(perm[t.a0], perm[t.a1], perm[t.a2]))
            .collect(),
    }
}

fn presentations() -> Vec<(String, TrianglePresentation)> {
    let mut out = vec![
        ("B.2".to_string(), builtin("B.2").unwrap()),
        ("C.1".to_string(), builtin("C.1").unwrap()),
    ];
    for q in [2, 3, 5, 7] {
        out.push((format!("cyclic q={q}"), singer::presentation(q)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let base: Vec<_> = out.iter().take(5).cloned().collect();
    for (name, p) in &base {
        for k in 0..3 {
            out.push((format!("{name} relabelled #{k}"), relabel(p, &mut rng)));
        }
    }
    out
}

fn criterion_4(runs: &[(String, KTheoryReport)]) -> Outcome {
    for (name, p) in presentations() {
        let vp = validate(&p).map_err(|e| format!("{name}: {e}"))?;
        let hat = build_hat(&vp).map_err(|e| e.to_string())?;
        let check = build_check(&vp).map_err(|e| e.to_string())?;
        ensure(
            check.m1 == hat.m2.transpose() && check.m2 == hat.m1.transpose(),
            || format!("{name}: transpose identities fail"),
        )?;
        let h = coker_structure(&joined(&hat.m1, &hat.m2).unwrap());
        let c = coker_structure(&joined(&check.m1, &check.m2).unwrap());
        ensure(h == c, || format!("{name}: hat {h} vs check {c}"))?;
    }
    for (name, r) in runs {
        ensure(r.coker == r.check_coker, || {
            format!("{name}: pipeline disagreement")
        })?;
    }
    Ok(format!("{} presentations", presentations().len()))
}

fn criterion_5(runs: &[(String, KTheoryReport)]) -> Outcome {
    let mut seen = Vec::new();
    for (name, r) in runs {
        let b = identity_bounds_check(r.q as u64, &r.identity_class_order);
        ensure(b.divides_q2_minus_1 && b.lower_bound_divides_order, || {
            format!("{name}: order {} violates bounds", r.identity_class_order)
        })?;
        if name == "B.2" || name == "C.1" {
            ensure(r.identity_class_order == BigInt::from(1), || {
                format!("{name}: order {}", r.identity_class_order)
            })?;
        }
        if r.q == 3 {
            ensure(r.identity_class_order == BigInt::from(2), || {
                format!("{name}: q = 3 order {}", r.identity_class_order)
            })?;
        }
        seen.push(format!("{name}: {}", r.identity_class_order));
    }
    Ok(seen.join(", "))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cases = 150;
    for i in 0..cases {
        let (m1, m2) = pairs::commuting_pair(&mut rng, 8);
        let (k0, k1) = k_theory_general(&m1, &m2).map_err(|e| format!("case {i}: {e}"))?;
        let h = homology_complex(&m1, &m2).map_err(|e| format!("case {i}: {e}"))?;
        ensure(h.h2.is_torsion_free(), || {
            format!("case {i}: H2 = {}", h.h2)
        })?;
        ensure(k0 == h.h0.direct_sum(&h.h2) && k1 == h.h1, || {
            format!("case {i}: routes disagree")
        })?;
    }
    Ok(format!("{cases} commuting pairs"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 1200;
    let mut oracle_cases = 0;
    for i in 0..cases {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a = IntMatrix::from_fn(r, c, |_, _| rng.gen_range(-9..=9));
        let f = snf(&a, true);
        for w in f.invariant_factors.windows(2) {
            ensure(&w[1] % &w[0] == BigInt::from(0), || {
                format!("case {i}: chain broken")
            })?;
        }
        let (u, v) = (f.left.clone().unwrap(), f.right.clone().unwrap());
        ensure(u.mul(&a).unwrap().mul(&v).unwrap() == f.diagonal(), || {
            format!("case {i}: U A V != D")
        })?;
        let du = oracle::det(&oracle::to_rows(&u));
        let dv = oracle::det(&oracle::to_rows(&v));
        ensure(du.abs() == 1 && dv.abs() == 1, || {
            format!("case {i}: det U = {du}, det V = {dv}")
        })?;
        if r == c {
            let rows = oracle::to_rows(&a);
            let d = oracle::det(&rows);
            if d != 0 && d.abs() <= 64 {
                oracle_cases += 1;
                let factors: Vec<u64> = f
                    .invariant_factors
                    .iter()
                    .map(|x| u64::try_from(x).unwrap())
                    .filter(|&x| x > 1)
                    .collect();
                ensure(
                    oracle::element_orders_of(&factors) == oracle::element_orders_brute(&rows),
                    || format!("case {i}: brute force disagrees"),
                )?;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!(
        "{cases} matrices, {oracle_cases} brute force comparisons, {t:?}"
    ))
}

fn criterion_8() -> Outcome {
    let p = singer::presentation(11);
    let vp = validate(&p).map_err(|e| e.to_string())?;
    let hat = build_hat(&vp).map_err(|e| e.to_string())?;
    let j = joined(&hat.m1, &hat.m2).map_err(|e| e.to_string())?;
    ensure(j.rows() == 1596 && j.cols() == 3192, || {
        format!("{}x{}", j.rows(), j.cols())
    })?;
    let start = Instant::now();
    let r = k_theory_a2(&vp).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(600), || format!("took {t:?}"))?;
    Ok(format!(
        "q = 11, 1596x3192, coker = {}, [id] order {}, full pipeline {t:?}",
        r.coker, r.identity_class_order
    ))
}

fn main() -> ExitCode {
    let mut runs = Vec::new();
    for (name, p) in presentations().into_iter().take(6) {
        let vp = validate(&p).expect("valid presentation");
        runs.push((name, k_theory_a2(&vp).expect("pipeline")));
    }
    let criteria: Vec<Criterion> = vec![
        ("1 B.2 reproduction", Box::new(criterion_1)),
        ("2 C.1 reproduction", Box::new(criterion_2)),
        ("3 letter and line counts", Box::new(criterion_3)),
        ("4 hat/check agreement", Box::new(|| criterion_4(&runs))),
        ("5 identity class bounds", Box::new(|| criterion_5(&runs))),
        ("6 dual path equality", Box::new(criterion_6)),
        ("7 SNF soundness", Box::new(criterion_7)),
        ("8 q = 11 scalability", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
