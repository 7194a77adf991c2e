//! One line per acceptance criterion. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use fano_toric_core::analysis::{
    binomial, check_hypotheses, expected_dimension, fiber_semigroups_agree, normal_bundle_degrees,
    pi_face_chains, Conclusion, ExpectedDimensionInput, Mode,
};
use fano_toric_core::chow::{
    count_k_planes_with, full_count, schubert_oracle, LocalizationOptions,
};
use fano_toric_core::divisors::{
    restriction_degree, restricts_surjectively, satisfies_ddagger, DivisorClass, ToricDivisor,
};
use fano_toric_core::{
    corpus, enumerate_cayley_structures, maximal_cayley_structures, pi_faces, Budget,
    CayleyStructure, Configuration,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome, Option<Duration>);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn hyperplane_multiple(c: &Configuration, d: i64) -> DivisorClass {
    DivisorClass::new(c, ToricDivisor::hyperplane(c).scale(d)).unwrap()
}

fn total_count(c: &Configuration, classes: &[DivisorClass], want: i128) -> Outcome {
    let rep = full_count(c, classes, 1, &Budget::default()).map_err(|e| e.to_string())?;
    check(rep.total == Some(want), format!("total {:?}", rep.total))?;
    Ok(format!("total {want}"))
}

fn c1() -> Outcome {
    let c = corpus::simplex(3);
    total_count(&c, &[hyperplane_multiple(&c, 3)], 27)
}

fn c2() -> Outcome {
    let c = corpus::simplex(4);
    total_count(&c, &[hyperplane_multiple(&c, 5)], 2875)
}

fn c3() -> Outcome {
    let c = corpus::product_of_simplices(&[2, 2]);
    let alpha = [common::class_of(
        &c,
        &[(&[-1, -1, 0, 0], 3), (&[0, 0, -1, -1], 3)],
    )];
    let rep = full_count(&c, &alpha, 1, &Budget::default()).map_err(|e| e.to_string())?;
    check(
        rep.components.len() == 2,
        format!("{} components", rep.components.len()),
    )?;
    for comp in &rep.components {
        check(
            comp.theorem.phi == Some(0),
            format!("phi {:?}", comp.theorem.phi),
        )?;
        check(
            comp.theorem.all_hold() && comp.corollary.all_hold(),
            "hypotheses do not all hold",
        )?;
        check(comp.count == Some(189), format!("count {:?}", comp.count))?;
    }
    check(rep.total == Some(378), format!("total {:?}", rep.total))?;
    Ok("components 189 + 189 = 378".into())
}

fn c4() -> Outcome {
    let c = corpus::bl_p2_p5();
    let b = Budget::default();
    let max = maximal_cayley_structures(&c, 1, &b).map_err(|e| e.to_string())?;
    let mut lengths: Vec<usize> = max.iter().map(|p| p.length()).collect();
    lengths.sort();
    check(lengths == [2, 3], format!("maximal lengths {lengths:?}"))?;
    let p1 = max.iter().find(|p| p.length() == 3).unwrap();
    let p2 = max.iter().find(|p| p.length() == 2).unwrap();
    let hyp = hyperplane_multiple(&c, 1);
    let h = common::class_of(&c, &[(&[-1, -1, -1, -1, -1], 1)]);
    let e = common::class_of(&c, &[(&[1, 1, 1, 0, 0], 1)]);
    let deg = |cl: &DivisorClass, p: &CayleyStructure| restriction_degree(&c, cl, p).unwrap();
    let table = [deg(&hyp, p1), deg(&hyp, p2), deg(&h, p2), deg(&e, p2)];
    check(table == [1, 1, 0, -1], format!("degree table {table:?}"))?;
    let alpha = [common::class_of(
        &c,
        &[(&[-1, -1, -1, -1, -1], 8), (&[1, 1, 1, 0, 0], -3)],
    )];
    let rep = full_count(&c, &alpha, 1, &b).map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for comp in &rep.components {
        check(
            comp.theorem.phi == Some(0),
            format!("phi {:?}", comp.theorem.phi),
        )?;
        check(
            comp.theorem.all_hold() && comp.corollary.all_hold(),
            "hypotheses do not all hold",
        )?;
        seen.push((
            comp.structure.length(),
            comp.theorem.deltas.clone(),
            comp.count,
        ));
    }
    seen.sort();
    check(
        seen == [
            (2, Some(vec![3]), Some(189)),
            (3, Some(vec![5]), Some(77875)),
        ],
        format!("components {seen:?}"),
    )?;
    check(rep.total == Some(78064), format!("total {:?}", rep.total))?;
    Ok("lengths 3/2, deltas 5/3, counts 77875 + 189 = 78064".into())
}

fn c5() -> Outcome {
    for q in [1usize, 2] {
        let c = corpus::bl_p_p2_times_pq(q);
        let mut e_normal = vec![1, 1];
        e_normal.extend(vec![0; q]);
        let mut f_normal = vec![0, 0];
        f_normal.extend(vec![-1; q]);
        let class = common::class_of(&c, &[(&e_normal, 1), (&f_normal, 1)]);
        let members: Vec<usize> = (0..c.len()).filter(|&i| c.point(i)[1] == 0).collect();
        let tau = c
            .faces()
            .iter()
            .find(|f| f.members == members)
            .ok_or("tau is not a face")?;
        let fibers = [1, 2]
            .iter()
            .map(|&x| {
                members
                    .iter()
                    .copied()
                    .filter(|&i| c.point(i)[0] == x)
                    .collect()
            })
            .collect();
        let pi = CayleyStructure::new(&c, tau, fibers).map_err(|e| e.to_string())?;
        let all = enumerate_cayley_structures(&c, 1, &Budget::default()).unwrap();
        check(
            !restricts_surjectively(&c, &class, &pi).unwrap(),
            "restriction is surjective",
        )?;
        let v = satisfies_ddagger(&c, std::slice::from_ref(&class), &pi, 1, &all).unwrap();
        check(!v.holds && v.witness.is_some(), "(dagger-dagger) holds")?;
        let phi =
            expected_dimension(&pi, 1, &[restriction_degree(&c, &class, &pi).unwrap()]).unwrap();
        check(phi == q as i64 - 2, format!("phi {phi} for q = {q}"))?;
    }
    Ok("q = 1, 2: not surjective, witness found, phi = q - 2".into())
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let b = Budget::default();
    let (mut cases, mut configs, mut checks) = (0, 0, 0);
    while cases < 250 && configs < 300 {
        let (name, c) = corpus::random_smooth(&mut rng);
        configs += 1;
        let structures = enumerate_cayley_structures(&c, 1, &b).unwrap();
        for class in common::random_bpf_classes(&c, &mut rng, 4) {
            cases += 1;
            for p in &structures {
                checks += 1;
                check(
                    restricts_surjectively(&c, &class, p).unwrap(),
                    format!("{name}: {:?} along {:?}", class.representative(), p.fibers),
                )?;
            }
        }
    }
    check(cases >= 200, format!("only {cases} cases"))?;
    Ok(format!(
        "{cases} classes on {configs} configurations, {checks} restrictions, 0 failures"
    ))
}

fn c7() -> Outcome {
    let b = Budget::default();
    let mut chains = 0;
    for (name, c) in corpus::smooth_corpus() {
        for p in maximal_cayley_structures(&c, 1, &b).unwrap() {
            for k in 1..=p.length() {
                for (top, sigma) in pi_face_chains(&c, &p, k).unwrap() {
                    chains += 1;
                    let nb = normal_bundle_degrees(&c, &p, top, sigma).unwrap();
                    check(
                        nb.has_expected_shape(&c, &p, k),
                        format!("{name} k={k}: {nb:?}"),
                    )?;
                }
            }
        }
    }
    Ok(format!("{chains} chains, 0 failures"))
}

fn c8() -> Outcome {
    let b = Budget::default();
    let mut faces = 0;
    for (name, c) in corpus::smooth_corpus() {
        for p in maximal_cayley_structures(&c, 1, &b).unwrap() {
            for top in pi_faces(&c, &p, p.length()).unwrap() {
                faces += 1;
                check(fiber_semigroups_agree(&c, &p, top).unwrap(), name)?;
            }
        }
    }
    Ok(format!(
        "{faces} pi-faces on {} configurations, 0 failures",
        corpus::smooth_corpus().len()
    ))
}

fn delta_lists(max_len: usize) -> Vec<Vec<i64>> {
    fn go(start: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for d in start..=6 {
            cur.push(d);
            go(d, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, max_len, &mut Vec::new(), &mut out);
    out
}

fn c9() -> Outcome {
    let b = Budget::default();
    let lists = delta_lists(4);
    let mut cases = 0;
    for n in 1..=7usize {
        let c = corpus::simplex(n);
        let p =
            CayleyStructure::new(&c, c.full_face(), (0..=n).map(|i| vec![i]).collect()).unwrap();
        for k in 0..=2.min(n - 1) {
            let dim = (k + 1) * (n - k);
            for deltas in &lists {
                let degree: i64 = deltas
                    .iter()
                    .map(|&d| binomial(k as i64 + d, k as i64))
                    .sum();
                if degree as usize != dim {
                    continue;
                }
                cases += 1;
                let want = schubert_oracle(n, k, deltas).map_err(|e| e.to_string())?;
                for seed in [0u64, 1_000_003] {
                    let opts = LocalizationOptions {
                        seed,
                        ..Default::default()
                    };
                    let got = count_k_planes_with(&c, &p, k, deltas, &opts, &b)
                        .map_err(|e| e.to_string())?
                        .count;
                    check(
                        got == want,
                        format!("P^{n} k={k} {deltas:?}: {got} vs {want}"),
                    )?;
                }
            }
        }
    }
    Ok(format!("{cases} cases, two seeds each, 0 mismatches"))
}

fn c10() -> Outcome {
    let c = corpus::simplex(2);
    let b = Budget::default();
    let alpha = [hyperplane_multiple(&c, 2)];
    let all = enumerate_cayley_structures(&c, 1, &b).unwrap();
    let max = maximal_cayley_structures(&c, 1, &b).unwrap();
    check(max.len() == 1, format!("{} maximal structures", max.len()))?;
    let input = ExpectedDimensionInput::new(&c, &max[0], &alpha, 1).map_err(|e| e.to_string())?;
    let rep = check_hypotheses(&input, Mode::Theorem, &all).map_err(|e| e.to_string())?;
    check(rep.phi == Some(-1), format!("phi {:?}", rep.phi))?;
    check(
        rep.conclusion == Conclusion::Empty,
        format!("{:?}", rep.conclusion),
    )?;
    Ok(format!("phi = -1, {}", rep.conclusion.statement()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "1",
            "lines on a cubic surface",
            c1,
            Some(Duration::from_secs(1)),
        ),
        (
            "2",
            "lines on a quintic threefold",
            c2,
            Some(Duration::from_secs(2)),
        ),
        (
            "3",
            "Segre P2xP2, class (3,3)",
            c3,
            Some(Duration::from_secs(5)),
        ),
        (
            "4",
            "Bl_P2 P5 end to end",
            c4,
            Some(Duration::from_secs(30)),
        ),
        ("5", "non-surjective restriction example", c5, None),
        ("6", "bpf implies surjective restriction", c6, None),
        ("7", "normal bundle degree shape", c7, None),
        ("8", "fiber semigroups independent of j", c8, None),
        ("9", "localization vs Schubert oracle", c9, None),
        ("10", "empty verdict for conics in P2", c10, None),
    ];
    let mut failed = 0;
    for (id, name, f, limit) in criteria {
        let start = Instant::now();
        let out = f();
        let t = start.elapsed();
        let slow = limit.is_some_and(|l| t >= l);
        let (status, detail) = match (&out, slow) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => (
                "FAIL",
                format!("{msg}; too slow, limit {:?}", limit.unwrap()),
            ),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{id:>2}] {name}: {detail} ({:.3}s, exact)",
            t.as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
