//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line with the measured evidence. Sample counts, tolerances and
//! time budgets are pinned here; a failing criterion fails its test.

mod common;

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cacaug::gen::{gen_fig3, gen_random, EndpointMode, RandomProfile};
use cacaug_core::analysis::{compute_rho, verify_b, BCheckConfig};
use cacaug_core::completion::{
    min_directed_cover, run_matching_algorithm, run_naive_max_cardinality, uncovered_cuts,
    CoverOutcome, CoverProblem,
};
use cacaug_core::exact::{brute_force_opt, solve_combined, solve_subcacti};
use cacaug_core::iso::isomorphic;
use cacaug_core::matching::bad_links;
use cacaug_core::minimality::exists_weakly_minimal_optimum;
use cacaug_core::transforms::{
    non_leaf_endpoint_count, residual_instance_in_order, root_shadow_completion, split_at,
};
use cacaug_core::LinkId;
use ratlp::{LinearProgram, LpOutcome, Rat};

use common::{random_feasible, random_with_nonleaf_endpoints};

#[test]
fn criterion_1_tower_family_reproduction() {
    let started = Instant::now();
    let inst = gen_fig3(6).to_instance().unwrap();

    let cert = brute_force_opt(&inst, 11).unwrap();
    assert_eq!(cert.opt_value, 7, "tower-family optimum");

    // Link ids 0..6 are the within-tower pairs of towers 1..6; the tower-2
    // pair is id 1.
    let bad: Vec<LinkId> = bad_links(&inst).iter().map(|b| b.id).collect();
    assert!(bad.contains(&1), "tower-2 pair link must be bad, got {bad:?}");

    let naive = run_naive_max_cardinality(&inst).unwrap();
    let completion_cost = naive.completion_cost();
    assert!(completion_cost >= 12, "naive completion cost {completion_cost}");
    assert_eq!(completion_cost, 12, "naive completion cost");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 1 (tower family): PASS - opt 7, bad pair flagged, naive completion cost {} \
         (link set {}), {:?}",
        completion_cost,
        naive.solution.size(),
        elapsed
    );
}

#[test]
fn criterion_2_matching_guarantee() {
    let started = Instant::now();
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 30 {
        seed += 1;
        let inst = random_feasible(seed, 5, seed.is_multiple_of(2));
        if inst.links().len() > 9 || inst.vertex_count() > 14 {
            continue;
        }
        let run = run_matching_algorithm(&inst).unwrap();
        let cert = brute_force_opt(&inst, 9).unwrap();
        assert!(
            2 * run.solution.size() as u64 <= cert.min_two_size_plus_in,
            "seed {seed}: |F| = {} exceeds min |H| + |H_in|/2 = {}/2",
            run.solution.size(),
            cert.min_two_size_plus_in
        );
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 2 (matching guarantee): PASS - {checked} instances, zero violations, {elapsed:?}"
    );
}

#[test]
fn criterion_3_four_thirds_ratio() {
    let profile = RandomProfile {
        n_min: 7,
        n_max: 13,
        k_cap: 5,
        link_count: 7,
        endpoints: EndpointMode::LeafToLeaf,
        ensure_feasible: true,
    };
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 50 {
        seed += 1;
        let inst = gen_random(&profile, seed).unwrap().to_instance().unwrap();
        if inst.links().len() > 14 {
            continue;
        }
        let combined = solve_combined(&inst, 8).unwrap();
        let cert = brute_force_opt(&inst, 14).unwrap();
        assert!(
            3 * combined.size() <= 4 * cert.opt_value,
            "seed {seed}: combined {} vs opt {}",
            combined.size(),
            cert.opt_value
        );
        checked += 1;
    }
    println!("criterion 3 (4/3 ratio): PASS - {checked} instances, zero violations");
}

#[test]
fn criterion_4_covering_lp_integrality() {
    let mut rng = ChaCha8Rng::seed_from_u64(1312);
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 100 {
        seed += 1;
        let inst = random_feasible(seed, 4, seed.is_multiple_of(2));
        if inst.links().len() > 8 {
            continue;
        }
        let m = inst.links().len();
        let subset: Vec<LinkId> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
        let cuts = uncovered_cuts(&inst, &subset);
        if cuts.is_empty() || cuts.len() > 12 {
            continue;
        }
        let problem = CoverProblem::new(&inst, cuts);
        assert!(problem.arcs.len() <= 16);

        let lp = LinearProgram {
            objective: vec![Rat::from_integer(1.into()); problem.arcs.len()],
            rows: problem
                .incidence
                .iter()
                .map(|entering| {
                    let mut row = vec![Rat::from_integer(0.into()); problem.arcs.len()];
                    for &a in entering {
                        row[a] = Rat::from_integer(1.into());
                    }
                    (row, Rat::from_integer(1.into()))
                })
                .collect(),
        };
        match (min_directed_cover(&problem), ratlp::solve_min(&lp)) {
            (CoverOutcome::Cover(cover), LpOutcome::Optimal { value, .. }) => {
                assert_eq!(
                    value,
                    Rat::from_integer((cover.arc_count() as i64).into()),
                    "seed {seed}: fractional {value} vs integral {}",
                    cover.arc_count()
                );
                checked += 1;
            }
            (CoverOutcome::Infeasible { .. }, LpOutcome::Infeasible) => {}
            (a, b) => panic!("seed {seed}: solver {a:?} vs LP {b:?}"),
        }
    }
    println!(
        "criterion 4 (covering LP integrality): PASS - {checked} problems, exact rational equality"
    );
}

#[test]
fn criterion_5_subcactus_guarantee() {
    let profile = RandomProfile {
        n_min: 7,
        n_max: 13,
        k_cap: 5,
        link_count: 6,
        endpoints: EndpointMode::LeafToLeaf,
        ensure_feasible: true,
    };
    let mut checked = 0;
    let mut seed = 100u64;
    while checked < 30 {
        seed += 1;
        let inst = gen_random(&profile, seed).unwrap().to_instance().unwrap();
        if inst.links().len() > 14 {
            continue;
        }
        let sub = solve_subcacti(&inst, 8).unwrap();
        let cert = brute_force_opt(&inst, 14).unwrap();
        assert!(
            sub.size() as u64 <= cert.min_size_plus_cross,
            "seed {seed}: {} vs min |H| + |H_cross| = {}",
            sub.size(),
            cert.min_size_plus_cross
        );
        checked += 1;
    }
    println!("criterion 5 (subcactus guarantee): PASS - {checked} instances, zero violations");
}

#[test]
fn criterion_6_transform_conservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    // Lemma-15 conservation over 200 random splits.
    let mut splits = 0;
    let mut seed = 0u64;
    while splits < 200 {
        seed += 1;
        let inst = if seed.is_multiple_of(2) {
            random_feasible(seed, 5, false)
        } else {
            random_with_nonleaf_endpoints(seed)
        };
        let cuts = inst.two_cuts();
        let cut = &cuts[rng.gen_range(0..cuts.len())];
        let (side_c, side_rest, _, _) = split_at(&inst, &cut.vertices).unwrap();
        assert_eq!(
            non_leaf_endpoint_count(&side_c) + non_leaf_endpoint_count(&side_rest),
            non_leaf_endpoint_count(&inst),
            "seed {seed}"
        );
        splits += 1;
    }
    // Residual order-independence over 200 (instance, links, two orders)
    // triples.
    let mut triples = 0;
    seed = 1000;
    while triples < 200 {
        seed += 1;
        let inst = random_feasible(seed, 6, seed.is_multiple_of(3));
        let m = inst.links().len();
        let chosen: Vec<LinkId> = (0..m).filter(|_| rng.gen_bool(0.4)).collect();
        let mut shuffled = chosen.clone();
        shuffled.shuffle(&mut rng);
        let (a, _) = residual_instance_in_order(&inst, &chosen).unwrap();
        let (b, _) = residual_instance_in_order(&inst, &shuffled).unwrap();
        assert!(isomorphic(&a, &b), "seed {seed}");
        triples += 1;
    }
    println!(
        "criterion 6 (transform conservation): PASS - {splits} splits, {triples} order triples"
    );
}

#[test]
fn criterion_7_weakly_minimal_optima() {
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 50 {
        seed += 1;
        let inst = random_feasible(seed, 5, true);
        let completed = root_shadow_completion(&inst).unwrap();
        if completed.links().len() > 9 {
            continue;
        }
        let found = exists_weakly_minimal_optimum(&completed, 9, 500_000).unwrap();
        assert!(found, "seed {seed}: no weakly cross-minimal optimum");
        checked += 1;
    }
    println!(
        "criterion 7 (weakly minimal optima): PASS - {checked} root-shadow-complete instances"
    );
}

#[test]
fn criterion_8_numeric_constants() {
    let started = Instant::now();
    let cfg = BCheckConfig::new(0.452, 0.01, 2).unwrap();
    let report = verify_b(&cfg);
    assert!(
        report.min_value >= -1e-9,
        "b-condition minimum {}",
        report.min_value
    );

    let rho = compute_rho();
    assert!(rho.residual < 1e-12, "residual {}", rho.residual);
    assert!(
        rho.alpha_star > 0.4195 && rho.alpha_star < 0.4210,
        "alpha {}",
        rho.alpha_star
    );
    assert!(rho.rho > 1.2898 && rho.rho < 1.2900, "rho {}", rho.rho);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    println!(
        "criterion 8 (numeric constants): PASS - b-condition min {:.6} at lambda_w {:.3} eta {:.3} \
         s {:.3} x_sv {:.3}; alpha* {:.6}, rho {:.6}, residual {:.2e}; {:?}",
        report.min_value,
        report.argmin.lambda_w,
        report.argmin.eta,
        report.argmin.s,
        report.argmin.x_sv,
        rho.alpha_star,
        rho.rho,
        rho.residual,
        elapsed
    );
}

#[test]
fn criterion_9_verifier_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let mut pairs = 0;
    let mut seed = 0u64;
    while pairs < 500 {
        seed += 1;
        let inst = random_feasible(seed, 6, seed.is_multiple_of(2));
        let m = inst.links().len();
        for _ in 0..3 {
            let subset: Vec<LinkId> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
            let by_cuts = inst.check_solution(&subset).unwrap().is_feasible();
            let by_min_cut = inst.three_edge_connected_with(&subset);
            assert_eq!(by_cuts, by_min_cut, "seed {seed} subset {subset:?}");
            pairs += 1;
        }
    }
    println!("criterion 9 (verifier cross-check): PASS - {pairs} pairs, zero disagreements");
}

/// Not a numbered criterion: the headline limitation, stated plainly. The
/// pipeline certifies the 4/3 factor algorithmically (criterion 3) and
/// reproduces the 1.29 constant numerically (criterion 8); the rounding
/// procedure behind the 1.29 algorithm is out of scope.
#[test]
fn factor_summary_note() {
    let rho = compute_rho();
    println!(
        "note: combined solver certifies 4/3; the {:.4} factor is reproduced numerically only",
        rho.rho
    );
}
