use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use oddcycle::density::{Limits, WEIGHT_GRID};
use oddcycle::hom::DEFAULT_BRUTE_FORCE_BUDGET;
use oddcycle::verify::{DChoice, FamilyGrid, VerifyOptions};
use oddcycle::{
    audit_proof_chain, auto_density, blakley_roy_check, brute_force_cycle_homs,
    check_density_exact, complete, count_cycle_homs, cycle_homs_via_decomposition, gen_family,
    gen_random, lemma_f_verify, scan_family, verify_main_theorem, weighted_min_exact,
    weighted_min_grid_oracle, DensityParams, DensityStatus, FamilySpec, Graph, Rational, ScanSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn random_bipartite(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=12);
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.gen_bool(0.6) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn random_probability(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(2..=8);
    q(rng.gen_range(0..=den), den)
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checks = 0;
    for seed in 0..200u64 {
        let n = rng.gen_range(1..=7);
        let g = gen_random(n, &random_probability(&mut rng), seed).map_err(|e| e.to_string())?;
        for r in [3, 5, 7] {
            let brute = brute_force_cycle_homs(&g, r, DEFAULT_BRUTE_FORCE_BUDGET)
                .map_err(|e| e.to_string())?;
            let trace = count_cycle_homs(&g, r);
            let split = cycle_homs_via_decomposition(&g, r).map_err(|e| e.to_string())?;
            if brute != trace || trace != split {
                return Err(format!(
                    "seed {seed} r {r}: brute {brute}, trace {trace}, decomposition {split}"
                ));
            }
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{checks} counts agree in {elapsed:.2?}"))
}

fn small_cases_and_bipartite() -> Outcome {
    let k3 = count_cycle_homs(&complete(3), 3);
    let k4 = count_cycle_homs(&complete(4), 3);
    if k3 != BigUint::from(6u32) || k4 != BigUint::from(24u32) {
        return Err(format!("C_3(K_3) = {k3}, C_3(K_4) = {k4}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..50 {
        let g = random_bipartite(&mut rng);
        assert!(g.is_bipartite());
        for r in [3, 5, 7, 9] {
            let c = count_cycle_homs(&g, r);
            if c != BigUint::from(0u32) {
                return Err(format!("bipartite graph {i}: C_{r} = {c}"));
            }
        }
    }
    Ok("C_3(K_3) = 6, C_3(K_4) = 24, 50 bipartite graphs have no odd closed walks".into())
}

fn path_lower_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..500u64 {
        let n = rng.gen_range(1..=30);
        let k = rng.gen_range(1..=6);
        let g = gen_random(n, &random_probability(&mut rng), i).map_err(|e| e.to_string())?;
        let rep = blakley_roy_check(&g, k).map_err(|e| e.to_string())?;
        if !rep.holds {
            return Err(format!(
                "graph {i} (n = {n}, k = {k}): {} < {}",
                rep.count, rep.bound
            ));
        }
    }
    let rep = blakley_roy_check(&cycle(5), 2).map_err(|e| e.to_string())?;
    if rep.count != BigUint::from(20u32) || rep.bound != Rational::from(20) || !rep.holds {
        return Err(format!(
            "C_5, k = 2: count {}, bound {}",
            rep.count, rep.bound
        ));
    }
    Ok("500 random graphs, 0 violations; C_5 at k = 2 gives 20 = 20".into())
}

fn mixed_family(i: usize, rng: &mut ChaCha8Rng) -> FamilySpec {
    match i % 5 {
        0 => FamilySpec::Complete {
            n: rng.gen_range(2..=20),
        },
        1 => FamilySpec::CliqueUnion {
            k: rng.gen_range(1..=4),
            s: rng.gen_range(1..=5),
        },
        2 => {
            let parts = (0..rng.gen_range(2..=4))
                .map(|_| rng.gen_range(1..=5))
                .collect();
            FamilySpec::CompleteMultipartite { parts }
        }
        3 => FamilySpec::BlowUp {
            base: cycle(5),
            t: rng.gen_range(1..=4),
        },
        _ => FamilySpec::Random {
            n: rng.gen_range(4..=20),
            p: q(rng.gen_range(1..=3), 4),
            seed: i as u64,
        },
    }
}

fn weighted_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let eps_choices = [q(1, 3), q(1, 2), q(2, 3), q(3, 4)];
    let mut checked = 0;
    let mut tightest: Option<Rational> = None;
    let mut attempts = 0;
    while checked < 50 {
        attempts += 1;
        let spec = mixed_family(attempts, &mut rng);
        let g = gen_family(&spec).map_err(|e| e.to_string())?;
        if g.n() == 0 || g.n() > 20 {
            continue;
        }
        let eps = eps_choices[rng.gen_range(0..eps_choices.len())].clone();
        let d = auto_density(&g, &eps, 20).map_err(|e| e.to_string())?;
        let p = DensityParams::new(eps, d).map_err(|e| e.to_string())?;
        let cert = check_density_exact(&g, &p, 20).map_err(|e| e.to_string())?;
        if cert.status != DensityStatus::CertifiedExhaustive {
            return Err(format!(
                "{} {}: auto d not certified",
                spec.name(),
                spec.params()
            ));
        }
        let rep = lemma_f_verify(&g, &cert, 100, attempts as u64, 20).map_err(|e| e.to_string())?;
        if !rep.holds() || rep.omega_holds != Some(true) {
            return Err(format!(
                "{} {}: {} violations, omega {:?}",
                spec.name(),
                spec.params(),
                rep.violations.len(),
                rep.omega.map(|o| o.to_string())
            ));
        }
        let gap = rep.omega.unwrap() + Rational::from(g.n() as i64);
        if tightest.as_ref().is_none_or(|t| &gap < t) {
            tightest = Some(gap);
        }
        checked += 1;
    }
    Ok(format!(
        "50 certified graphs x 100 weight functions on the 1/{WEIGHT_GRID} grid, min(omega + n) = {}",
        tightest.unwrap()
    ))
}

fn minimizer_vs_grid() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let eps_choices = [
        q(1, 4),
        q(1, 3),
        q(3, 8),
        q(1, 2),
        q(5, 8),
        q(2, 3),
        q(3, 4),
    ];
    let step = q(1, 4);
    let mut exact_matches = 0;
    for seed in 0..100u64 {
        let n = rng.gen_range(1..=8);
        let g = gen_random(n, &random_probability(&mut rng), seed).map_err(|e| e.to_string())?;
        let eps = eps_choices[rng.gen_range(0..eps_choices.len())].clone();
        let d = q(rng.gen_range(0..=4), 4);
        let p = DensityParams::new(eps, d).map_err(|e| e.to_string())?;
        let exact = weighted_min_exact(&g, &p, 20).map_err(|e| e.to_string())?;
        let grid = weighted_min_grid_oracle(&g, &p, &step).map_err(|e| e.to_string())?;
        if exact.omega > grid {
            return Err(format!("seed {seed}: exact {} > grid {grid}", exact.omega));
        }
        if exact.minimizer.fractional_count() > 1 {
            return Err(format!(
                "seed {seed}: {} fractional coordinates",
                exact.minimizer.fractional_count()
            ));
        }
        // A minimizer on the grid forces equality.
        if (p.eps_n(n) * Rational::from(4)).is_integer() {
            if exact.omega != grid {
                return Err(format!("seed {seed}: exact {} != grid {grid}", exact.omega));
            }
            exact_matches += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "100 seeds, exact <= grid, {exact_matches} grid-aligned cases equal, {elapsed:.2?}"
    ))
}

fn theorem_instances() -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = (8..16).map(|n| FamilySpec::Complete { n }).collect();
    for (k, ss) in [(2, 4..=9), (3, 3..=6), (4, 2..=3)] {
        out.extend(ss.map(|s| FamilySpec::CliqueUnion { k, s }));
    }
    let parts: [&[usize]; 10] = [
        &[4, 4],
        &[5, 5],
        &[6, 6],
        &[3, 3, 3],
        &[4, 4, 4],
        &[2, 3, 4],
        &[2, 2, 2, 2],
        &[3, 3, 3, 3],
        &[2, 2, 2, 2, 2],
        &[1, 2, 3, 4],
    ];
    out.extend(
        parts
            .iter()
            .map(|p| FamilySpec::CompleteMultipartite { parts: p.to_vec() }),
    );
    for n in [10, 12, 14, 16] {
        out.extend((0..5).map(|seed| FamilySpec::Random {
            n,
            p: q(1, 2),
            seed,
        }));
    }
    out
}

fn main_theorem() -> Outcome {
    let eps = q(1, 2);
    let limits = Limits::default();
    let opts = VerifyOptions {
        limits,
        supplied_status: None,
    };
    let instances = theorem_instances();
    if instances.len() != 50 {
        return Err(format!("expected 50 instances, built {}", instances.len()));
    }
    let mut min_slack: Option<Rational> = None;
    for spec in &instances {
        let label = format!("{} {}", spec.name(), spec.params());
        let g = gen_family(spec).map_err(|e| e.to_string())?;
        let d = auto_density(&g, &eps, limits.exhaustive).map_err(|e| e.to_string())?;
        let p = DensityParams::new(eps.clone(), d).map_err(|e| e.to_string())?;
        for r in [3, 5, 7] {
            let rep = verify_main_theorem(&g, &p, r, &opts).map_err(|e| format!("{label}: {e}"))?;
            if !rep.precondition_n_ok || rep.density_status != DensityStatus::CertifiedExhaustive {
                return Err(format!("{label}: hypotheses not met"));
            }
            if !rep.holds || rep.slack.is_negative() {
                return Err(format!(
                    "{label} r = {r}: C_r = {}, bound {}",
                    rep.c_r, rep.bound
                ));
            }
            if min_slack.as_ref().is_none_or(|s| &rep.slack < s) {
                min_slack = Some(rep.slack.clone());
            }
            let chain =
                audit_proof_chain(&g, &p, r, &limits).map_err(|e| format!("{label}: {e}"))?;
            if !chain.steps.iter().all(|s| s.applicable) || !chain.sound() {
                let bad: Vec<&str> = chain
                    .steps
                    .iter()
                    .filter(|s| !s.holds || !s.applicable)
                    .map(|s| s.id)
                    .collect();
                return Err(format!("{label} r = {r}: chain steps {bad:?}"));
            }
        }
    }
    Ok(format!(
        "50 instances x r in {{3,5,7}} hold, min slack {}",
        min_slack.unwrap()
    ))
}

fn scan_determinism() -> Outcome {
    let specs = [
        ScanSpec {
            family: FamilyGrid::CliqueUnion {
                ks: vec![2, 3],
                ss: vec![3, 4, 5],
            },
            eps: q(1, 2),
            d: DChoice::Auto,
            rs: vec![3, 5, 7],
            limits: Limits::default(),
        },
        ScanSpec {
            family: FamilyGrid::Random {
                ns: vec![8, 12, 16],
                p: q(1, 2),
                seeds: vec![0, 1, 2],
            },
            eps: q(1, 3),
            d: DChoice::Fixed(q(1, 4)),
            rs: vec![3, 5],
            limits: Limits::default(),
        },
    ];
    let mut rows = 0;
    for spec in &specs {
        let a = scan_family(spec, true).map_err(|e| e.to_string())?.to_csv();
        let b = scan_family(spec, true).map_err(|e| e.to_string())?.to_csv();
        let c = scan_family(spec, false)
            .map_err(|e| e.to_string())?
            .to_csv();
        if a != b {
            return Err("two parallel runs differ".into());
        }
        if a != c {
            return Err("parallel and sequential runs differ".into());
        }
        rows += a.lines().count() - 1;
    }
    Ok(format!(
        "{rows} rows byte-identical across repeated and sequential runs"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "cycle counts match the brute-force oracle",
            oracle_agreement,
        ),
        (
            "closed-form values and bipartite vanishing",
            small_cases_and_bipartite,
        ),
        ("path-count lower bound", path_lower_bound),
        ("weighted density lemma", weighted_lemma),
        ("exact minimizer against the grid oracle", minimizer_vs_grid),
        ("main theorem and proof chain", main_theorem),
        ("scan determinism", scan_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
