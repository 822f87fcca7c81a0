//! Acceptance suite: one test per release criterion, each printing a
//! PASS line. Criteria pin approximation ratios against the brute-force
//! optimum, exact oracle-call and memory accounting, distributional laws
//! of the samplers, the hardness construction's value gap, and byte-stable
//! CLI output.

use std::collections::HashMap;
use std::path::Path;
use std::process::Command;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use fairsub_core::harness::{
    random_coverage_instance, random_facility_instance, random_feasible_spec, random_ground_set,
    random_psd_kernel,
};
use fairsub_core::{
    brute_force_opt, excess_ratio, excess_ratio_f64, fair_greedy, fair_random,
    fair_streaming_monotone, fair_streaming_nonmonotone, gen_hardness, is_extendable,
    proportional_bounds, sieve_streaming, BackupSets, BoundsMode, BoundsRecipe, ColorId,
    CoverageInstance, CutInstance, ElementId, ExtendabilityTracker, FairnessSpec, GroundSet,
    KernelObjectiveInstance, MonotoneInner, ObjectiveOracle, RunReport, StreamOrder, SwapRule,
    BRUTE_FORCE_DEFAULT_CAP,
};

struct Instance {
    oracle: ObjectiveOracle,
    ground: GroundSet,
    spec: FairnessSpec,
}

fn random_monotone_instances(
    count: usize,
    min_n: usize,
    max_n: usize,
    max_k: u32,
    seed: u64,
) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.random_range(min_n..=max_n);
        let colors = rng.random_range(1..=6u32.min(n as u32));
        let ground = random_ground_set(&mut rng, n, colors);
        let spec = random_feasible_spec(&mut rng, &ground, max_k);
        if spec.validate_for(&ground).is_err() {
            continue;
        }
        let oracle = if out.len() % 2 == 0 {
            random_coverage_instance(&mut rng, n, 3).into_oracle()
        } else {
            random_facility_instance(&mut rng, n, 2).into_oracle()
        };
        out.push(Instance {
            oracle,
            ground,
            spec,
        });
    }
    out
}

fn assert_fair(report: &RunReport, spec: &FairnessSpec, context: &str) {
    assert_eq!(report.fairness_err, 0, "{context}: err > 0");
    assert!(
        report.solution.len() <= spec.k() as usize,
        "{context}: |S| > k"
    );
}

/// Criterion 1: every fairness-preserving algorithm returns a feasible
/// solution on a thousand random instances, across stream orders and
/// seeds.
#[test]
fn criterion_01_feasibility_suite() {
    let instances = random_monotone_instances(1000, 3, 60, 12, 101);
    for (idx, inst) in instances.iter().enumerate() {
        let orders = [
            StreamOrder::Natural,
            StreamOrder::Shuffled {
                seed: idx as u64 + 1,
            },
        ];
        let greedy = fair_greedy(&inst.oracle.fork(), &inst.ground, &inst.spec).unwrap();
        assert_fair(&greedy, &inst.spec, "fair_greedy");
        for order in orders {
            let stream = order.materialize(&inst.ground);
            for inner in [
                MonotoneInner::Ck(SwapRule::Theory),
                MonotoneInner::Ck(SwapRule::Practical),
                MonotoneInner::Fkk(SwapRule::Practical),
            ] {
                let report = fair_streaming_monotone(
                    &stream,
                    &inst.oracle.fork(),
                    &inst.ground,
                    &inst.spec,
                    inner,
                )
                .unwrap();
                assert_fair(&report, &inst.spec, "fair_streaming_monotone");
            }
            for seed in [3u64, 17] {
                let report = fair_streaming_nonmonotone(
                    &stream,
                    &inst.oracle.fork(),
                    &inst.ground,
                    &inst.spec,
                    SwapRule::Practical,
                    seed,
                )
                .unwrap();
                assert_fair(&report, &inst.spec, "fair_streaming_nonmonotone");
                let report =
                    fair_random(&stream, &inst.oracle.fork(), &inst.ground, &inst.spec, seed)
                        .unwrap();
                assert_fair(&report, &inst.spec, "fair_random");
            }
        }
    }
    println!("criterion 1 (feasibility suite, 1000 instances): PASS");
}

/// Criterion 2: sequential greedy is at least half of the exact optimum.
#[test]
fn criterion_02_greedy_half_approximation() {
    let instances = random_monotone_instances(500, 3, 10, 4, 202);
    for inst in &instances {
        let (opt, _) = brute_force_opt(
            &inst.oracle.fork(),
            &inst.ground,
            &inst.spec,
            BRUTE_FORCE_DEFAULT_CAP,
        )
        .unwrap();
        let report = fair_greedy(&inst.oracle.fork(), &inst.ground, &inst.spec).unwrap();
        assert_fair(&report, &inst.spec, "fair_greedy");
        assert!(
            report.objective >= 0.5 * opt - 1e-9,
            "greedy {} < 0.5 * {opt}",
            report.objective
        );
    }
    println!("criterion 2 (greedy >= OPT/2 on 500 instances): PASS");
}

fn all_permutations(n: usize) -> Vec<Vec<ElementId>> {
    fn permute(items: &mut Vec<ElementId>, start: usize, out: &mut Vec<Vec<ElementId>>) {
        if start == items.len() {
            out.push(items.clone());
            return;
        }
        for i in start..items.len() {
            items.swap(start, i);
            permute(items, start + 1, out);
            items.swap(start, i);
        }
    }
    let mut result = Vec::new();
    let mut items: Vec<ElementId> = (0..n as u32).map(ElementId).collect();
    permute(&mut items, 0, &mut result);
    result
}

/// Criterion 3: the streaming wrapper with the analyzed swap rule is a
/// quarter-approximation on every permutation of small instances and on
/// shuffled orders of larger ones.
#[test]
fn criterion_03_streaming_quarter_approximation() {
    // Every permutation for n <= 8.
    let mut exhaustive = Vec::new();
    for n in 3..=7usize {
        exhaustive.extend(random_monotone_instances(4, n, n, 4, 300 + n as u64));
    }
    exhaustive.extend(random_monotone_instances(2, 8, 8, 4, 390));
    for inst in &exhaustive {
        let (opt, _) = brute_force_opt(
            &inst.oracle.fork(),
            &inst.ground,
            &inst.spec,
            BRUTE_FORCE_DEFAULT_CAP,
        )
        .unwrap();
        for stream in all_permutations(inst.ground.len()) {
            let report = fair_streaming_monotone(
                &stream,
                &inst.oracle.fork(),
                &inst.ground,
                &inst.spec,
                MonotoneInner::Ck(SwapRule::Theory),
            )
            .unwrap();
            assert_fair(&report, &inst.spec, "ck theory");
            assert!(
                report.objective >= 0.25 * opt - 1e-9,
                "{} < 0.25 * {opt} on permutation {stream:?}",
                report.objective
            );
        }
    }
    // Twenty shuffles for n <= 10.
    let instances = random_monotone_instances(500, 3, 10, 4, 303);
    for (idx, inst) in instances.iter().enumerate() {
        let (opt, _) = brute_force_opt(
            &inst.oracle.fork(),
            &inst.ground,
            &inst.spec,
            BRUTE_FORCE_DEFAULT_CAP,
        )
        .unwrap();
        for shuffle in 0..20u64 {
            let stream = StreamOrder::Shuffled {
                seed: idx as u64 * 31 + shuffle,
            }
            .materialize(&inst.ground);
            let report = fair_streaming_monotone(
                &stream,
                &inst.oracle.fork(),
                &inst.ground,
                &inst.spec,
                MonotoneInner::Ck(SwapRule::Theory),
            )
            .unwrap();
            assert_fair(&report, &inst.spec, "ck theory");
            assert!(report.objective >= 0.25 * opt - 1e-9);
        }
    }
    println!("criterion 3 (streaming >= OPT/4, exhaustive permutations): PASS");
}

/// Ten fixed non-monotone instances (directed cuts and correlated log-det
/// kernels) with color bounds that keep the excess ratio below one.
fn nonmonotone_bank() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut bank = Vec::new();
    for case in 0..5 {
        let n = 8 + case % 3;
        let arcs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| {
                let a = (u * 7 + 3 + case as u32) % n as u32;
                let b = (u * 5 + 1 + case as u32) % n as u32;
                [(u, a), (u, b)]
            })
            .filter(|(u, v)| u != v)
            .collect();
        let oracle = CutInstance::new(n, arcs).into_oracle();
        let colors: Vec<ColorId> = (0..n).map(|i| ColorId((i % 2) as u32)).collect();
        let ground = GroundSet::new(colors, 2).unwrap();
        let spec = FairnessSpec::new(vec![1, 1], vec![3, 3], 4).unwrap();
        bank.push(Instance {
            oracle,
            ground,
            spec,
        });
    }
    for _ in 0..5 {
        let n = 9;
        // Low-dimensional factors give strongly correlated kernels.
        let kernel = random_psd_kernel(&mut rng, n, 2);
        let oracle = KernelObjectiveInstance::new(kernel, 0.1, 1e-8)
            .unwrap()
            .into_oracle();
        let colors: Vec<ColorId> = (0..n).map(|i| ColorId((i % 3) as u32)).collect();
        let ground = GroundSet::new(colors, 3).unwrap();
        let spec = FairnessSpec::new(vec![1, 1, 0], vec![2, 2, 2], 4).unwrap();
        bank.push(Instance {
            oracle,
            ground,
            spec,
        });
    }
    bank
}

/// Criterion 4: the non-monotone wrapper's mean value clears
/// `q / 5.82 * OPT`, certified by a one-sided 99% lower confidence bound
/// over 500 seeds per instance.
#[test]
fn criterion_04_nonmonotone_expectation() {
    let bank = nonmonotone_bank();
    assert_eq!(bank.len(), 10);
    let seeds = 500u64;
    for (idx, inst) in bank.iter().enumerate() {
        let q = excess_ratio_f64(&inst.spec, &inst.ground).unwrap();
        assert!(q < 1.0, "instance {idx} has no binding lower bound");
        let (opt, _) = brute_force_opt(
            &inst.oracle.fork(),
            &inst.ground,
            &inst.spec,
            BRUTE_FORCE_DEFAULT_CAP,
        )
        .unwrap();
        assert!(opt > 0.0);
        let stream: Vec<ElementId> = inst.ground.elements().collect();
        let mut values = Vec::with_capacity(seeds as usize);
        for seed in 0..seeds {
            let report = fair_streaming_nonmonotone(
                &stream,
                &inst.oracle.fork(),
                &inst.ground,
                &inst.spec,
                SwapRule::Theory,
                seed,
            )
            .unwrap();
            assert_fair(&report, &inst.spec, "nonmonotone");
            values.push(report.objective);
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / (values.len() - 1) as f64;
        let lcb = mean - 2.326 * (variance / values.len() as f64).sqrt();
        let bound = q / 5.82 * opt;
        assert!(
            lcb >= bound,
            "instance {idx}: 99% LCB {lcb} below q/5.82 * OPT = {bound} (mean {mean})"
        );
    }
    println!("criterion 4 (non-monotone expectation >= q/5.82 * OPT): PASS");
}

/// Criterion 5: the analyzed exchange wrapper performs exactly two oracle
/// calls per stream element — equality, not a bound.
#[test]
fn criterion_05_oracle_accounting() {
    for inst in random_monotone_instances(200, 3, 30, 8, 505) {
        for order in [StreamOrder::Natural, StreamOrder::Shuffled { seed: 5 }] {
            let stream = order.materialize(&inst.ground);
            let fork = inst.oracle.fork();
            let report = fair_streaming_monotone(
                &stream,
                &fork,
                &inst.ground,
                &inst.spec,
                MonotoneInner::Ck(SwapRule::Theory),
            )
            .unwrap();
            assert_eq!(
                report.oracle_calls,
                2 * stream.len() as u64,
                "n = {}",
                stream.len()
            );
            assert_eq!(fork.call_count(), 2 * stream.len() as u64);
        }
    }
    println!("criterion 5 (exactly 2n oracle calls): PASS");
}

/// Criterion 6: wrapper memory stays within the inner solution plus the
/// lower-bound budget, which never exceeds twice the global budget.
#[test]
fn criterion_06_memory_accounting() {
    for inst in random_monotone_instances(300, 3, 40, 10, 606) {
        let stream: Vec<ElementId> = inst.ground.elements().collect();
        let mut reports = Vec::new();
        for inner in [
            MonotoneInner::Ck(SwapRule::Theory),
            MonotoneInner::Ck(SwapRule::Practical),
            MonotoneInner::Fkk(SwapRule::Practical),
        ] {
            reports.push(
                fair_streaming_monotone(
                    &stream,
                    &inst.oracle.fork(),
                    &inst.ground,
                    &inst.spec,
                    inner,
                )
                .unwrap(),
            );
        }
        reports.push(
            fair_streaming_nonmonotone(
                &stream,
                &inst.oracle.fork(),
                &inst.ground,
                &inst.spec,
                SwapRule::Practical,
                9,
            )
            .unwrap(),
        );
        for report in reports {
            let inner_size = report.inner_solution_size.unwrap();
            let lower_sum = inst.spec.lower_sum() as usize;
            assert!(report.peak_stored_elements <= inner_size + lower_sum);
            assert!(inner_size + lower_sum <= 2 * inst.spec.k() as usize);
        }
    }
    println!("criterion 6 (peak memory <= inner + sum(lower) <= 2k): PASS");
}

/// Criterion 7: tracker answers equal the closed-form predicate on every
/// reachable state of exhaustive ground sets, and the extendable family
/// satisfies the matroid axioms.
#[test]
fn criterion_07_tracker_equivalence_and_matroid_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut cases: Vec<(GroundSet, FairnessSpec)> = Vec::new();
    while cases.len() < 40 {
        let n = rng.random_range(2..=8usize);
        let colors = rng.random_range(1..=4u32.min(n as u32));
        let ground = random_ground_set(&mut rng, n, colors);
        let spec = random_feasible_spec(&mut rng, &ground, 5);
        if spec.validate_for(&ground).is_ok() {
            cases.push((ground, spec));
        }
    }
    for (ground, spec) in &cases {
        let n = ground.len();
        let counts_of = |mask: u32| {
            let mut counts = vec![0u32; ground.num_colors() as usize];
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    counts[ground.color(ElementId(i as u32)).index()] += 1;
                }
            }
            counts
        };
        let family: Vec<u32> = (0u32..1 << n)
            .filter(|&m| is_extendable(&counts_of(m), spec).unwrap())
            .collect();
        assert!(family.contains(&0));
        for &mask in &family {
            // Downward closure.
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    assert!(family.contains(&(mask & !(1 << i))));
                }
            }
            // Tracker equivalence on this reachable state.
            let counts = counts_of(mask);
            let tracker = ExtendabilityTracker::from_counts(spec, &counts).unwrap();
            for c in 0..spec.num_colors() {
                let mut plus = counts.clone();
                plus[c as usize] += 1;
                assert_eq!(
                    tracker.candidate(ColorId(c)),
                    is_extendable(&plus, spec).unwrap()
                );
                if counts[c as usize] > 0 {
                    for c_in in 0..spec.num_colors() {
                        let mut swapped = counts.clone();
                        swapped[c as usize] -= 1;
                        swapped[c_in as usize] += 1;
                        assert_eq!(
                            tracker.swap_allowed(ColorId(c_in), ColorId(c)),
                            is_extendable(&swapped, spec).unwrap()
                        );
                    }
                }
            }
        }
        // Augmentation.
        for &a in &family {
            for &b in &family {
                if a.count_ones() < b.count_ones() {
                    assert!((0..n).any(|i| {
                        b & (1 << i) != 0
                            && a & (1 << i) == 0
                            && family.contains(&(a | (1 << i)))
                    }));
                }
            }
        }
    }
    println!("criterion 7 (tracker = predicate, matroid axioms, n <= 8): PASS");
}

/// Criterion 8: the per-color reservoir with capacity 2 over a 5-element
/// group is uniform over all 10 pairs (chi-square, p > 0.01, 1e5 seeds).
#[test]
fn criterion_08_reservoir_law() {
    let spec = FairnessSpec::new(vec![2], vec![2], 2).unwrap();
    let trials = 100_000u64;
    let mut counts: HashMap<(u32, u32), u64> = HashMap::new();
    for seed in 0..trials {
        let mut backups = BackupSets::reservoir(&spec, ChaCha8Rng::seed_from_u64(seed));
        for i in 0..5u32 {
            backups.offer(ElementId(i), ColorId(0));
        }
        let mut pair: Vec<u32> = backups.buffer(ColorId(0)).iter().map(|e| e.0).collect();
        pair.sort_unstable();
        *counts.entry((pair[0], pair[1])).or_insert(0) += 1;
    }
    assert_eq!(counts.len(), 10, "some pair never sampled");
    let expected = trials as f64 / 10.0;
    let chi_square: f64 = counts
        .values()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let p = 1.0 - ChiSquared::new(9.0).unwrap().cdf(chi_square);
    assert!(
        p > 0.01,
        "chi-square {chi_square} gives p = {p} <= 0.01; counts {counts:?}"
    );
    println!("criterion 8 (reservoir uniform over pairs, p = {p:.3}): PASS");
}

/// Criterion 9: the hardness construction's optimum reads off the planted
/// bit (`b` when set, `a` when clear), and feasibility-preserving
/// single-pass algorithms cannot beat `a` on the cleared instance.
#[test]
fn criterion_09_hardness_gap() {
    for (a, b, q) in [(2u32, 5u32, 0.4f64), (1, 2, 0.5), (3, 4, 0.75)] {
        let n = 8usize;
        let i_star = 3usize;
        for bit in [true, false] {
            let mut bits = vec![true; n];
            bits[i_star] = bit;
            let inst = gen_hardness(&bits, i_star, q, 0.01).unwrap();
            assert_eq!((inst.a, inst.b), (a, b));
            assert_eq!(
                inst.excess_ratio(),
                excess_ratio(&inst.spec, &inst.ground).unwrap()
            );
            let oracle = inst.oracle();
            let (opt, _) =
                brute_force_opt(&oracle, &inst.ground, &inst.spec, BRUTE_FORCE_DEFAULT_CAP)
                    .unwrap();
            let expected = if bit { f64::from(b) } else { f64::from(a) };
            assert_eq!(opt, expected, "a = {a}, b = {b}, bit = {bit}");

            if !bit {
                // Single-pass fairness-preserving algorithms are capped at a.
                let stream: Vec<ElementId> = inst.ground.elements().collect();
                for inner in [
                    MonotoneInner::Ck(SwapRule::Theory),
                    MonotoneInner::Ck(SwapRule::Practical),
                    MonotoneInner::Fkk(SwapRule::Practical),
                ] {
                    let report = fair_streaming_monotone(
                        &stream,
                        &inst.oracle(),
                        &inst.ground,
                        &inst.spec,
                        inner,
                    )
                    .unwrap();
                    assert!(report.objective <= f64::from(a));
                }
                for seed in 0..10u64 {
                    let report = fair_streaming_nonmonotone(
                        &stream,
                        &inst.oracle(),
                        &inst.ground,
                        &inst.spec,
                        SwapRule::Practical,
                        seed,
                    )
                    .unwrap();
                    assert!(report.objective <= f64::from(a));
                    let report =
                        fair_random(&stream, &inst.oracle(), &inst.ground, &inst.spec, seed)
                            .unwrap();
                    assert!(report.objective <= f64::from(a));
                }
            }
        }
    }
    println!("criterion 9 (hardness optimum b vs a, algorithms capped at a): PASS");
}

/// Criterion 10: on a 2000-node synthetic coverage graph with seven colors
/// and additive 5% bounds, the fair streaming algorithms stay near the
/// unconstrained sieve (15% is an expectation, logged as a warning when
/// missed) while the sieve violates the bounds.
#[test]
fn criterion_10_qualitative_replica() {
    let n = 2000usize;
    let hubs = 100usize;
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut neighbors: Vec<Vec<u32>> = Vec::with_capacity(n);
    for i in 0..n {
        let degree = if i < hubs { 40 } else { 4 };
        neighbors.push((0..degree).map(|_| rng.random_range(0..n as u32)).collect());
    }
    let colors: Vec<ColorId> = (0..n)
        .map(|i| {
            if i < hubs {
                // Hubs lean toward color 0.
                if i % 10 < 3 {
                    ColorId(0)
                } else {
                    ColorId(1 + (i as u32 % 6))
                }
            } else if i % 4 == 3 {
                ColorId(6)
            } else {
                ColorId(i as u32 % 6)
            }
        })
        .collect();
    let ground = GroundSet::new(colors, 7).unwrap();
    let oracle = CoverageInstance::new(neighbors).into_oracle();
    let k = 100u32;
    let recipe = BoundsRecipe {
        mode: BoundsMode::Additive,
        lower_slack: 0.05,
        upper_slack: 0.05,
        null_color: Some(ColorId(6)),
    };
    let (spec, _) = proportional_bounds(&ground, k, &recipe).unwrap();
    let stream: Vec<ElementId> = ground.elements().collect();

    let sieve = sieve_streaming(&stream, &oracle.fork(), &ground, &spec, 0.05).unwrap();
    assert!(
        sieve.fairness_err > 0,
        "unconstrained sieve unexpectedly met the bounds"
    );

    let fair_runs = vec![
        fair_streaming_monotone(
            &stream,
            &oracle.fork(),
            &ground,
            &spec,
            MonotoneInner::Ck(SwapRule::Practical),
        )
        .unwrap(),
        fair_streaming_monotone(
            &stream,
            &oracle.fork(),
            &ground,
            &spec,
            MonotoneInner::Fkk(SwapRule::Practical),
        )
        .unwrap(),
        fair_streaming_nonmonotone(&stream, &oracle.fork(), &ground, &spec, SwapRule::Practical, 1)
            .unwrap(),
    ];
    for report in &fair_runs {
        assert_fair(report, &spec, "fair streaming");
        let ratio = report.objective / sieve.objective;
        if ratio < 0.85 {
            println!(
                "warning: fair value {} is {:.1}% below the sieve's {} (expectation was <= 15%)",
                report.objective,
                (1.0 - ratio) * 100.0,
                sieve.objective
            );
        }
    }
    println!(
        "criterion 10 (sieve err = {} > 0; fair/sieve ratios {:?}): PASS",
        sieve.fairness_err,
        fair_runs
            .iter()
            .map(|r| (r.objective / sieve.objective * 100.0).round() / 100.0)
            .collect::<Vec<_>>()
    );
}

/// Criterion 11: the bundled synthetic config reproduces results.csv byte
/// for byte across reruns.
#[test]
fn criterion_11_cli_golden() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/synthetic30");
    let golden = std::fs::read(data.join("golden_results.csv")).unwrap();
    let mut produced: Vec<Vec<u8>> = Vec::new();
    for run in 0..2 {
        let out = std::env::temp_dir().join(format!("fairsub-acceptance-{run}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&out);
        let status = Command::new(env!("CARGO_BIN_EXE_fairsub"))
            .args(["run", "--config"])
            .arg(data.join("config.toml"))
            .env("FAIRSUB_OUTPUT_DIR", &out)
            .status()
            .unwrap();
        assert!(status.success());
        produced.push(std::fs::read(out.join("results.csv")).unwrap());
        let _ = std::fs::remove_dir_all(&out);
    }
    assert_eq!(produced[0], produced[1], "reruns differ");
    assert_eq!(produced[0], golden, "output drifted from the golden file");
    println!("criterion 11 (byte-identical results.csv): PASS");
}
