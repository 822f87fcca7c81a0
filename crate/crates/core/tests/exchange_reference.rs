//! Differential tests: the production exchange states (tracker plus
//! priority queues) against naive reference implementations that rescan
//! the closed-form predicate and the member list on every step. Solutions
//! and total oracle-call counts must coincide exactly, including on
//! tie-heavy weight profiles.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fairsub_core::harness::{random_coverage_instance, random_facility_instance};
use fairsub_core::{
    is_extendable, CkState, ColorId, ElementId, FairnessSpec, FkkConfig, FkkState, GroundSet,
    ObjectiveOracle, SetFunction, SwapRule,
};

struct Modular(Vec<f64>);

impl SetFunction for Modular {
    fn ground_size(&self) -> usize {
        self.0.len()
    }
    fn value(&self, set: &[ElementId]) -> f64 {
        set.iter().map(|e| self.0[e.index()]).sum()
    }
}

fn counts_of(set: &[ElementId], ground: &GroundSet) -> Vec<u32> {
    ground.color_counts(set).unwrap()
}

fn insert_sorted(set: &mut Vec<ElementId>, e: ElementId) {
    let pos = set.binary_search(&e).unwrap_err();
    set.insert(pos, e);
}

fn swap_feasible(
    set: &[ElementId],
    out: ElementId,
    incoming: ColorId,
    ground: &GroundSet,
    spec: &FairnessSpec,
) -> bool {
    let mut counts = counts_of(set, ground);
    counts[ground.color(out).index()] -= 1;
    counts[incoming.index()] += 1;
    is_extendable(&counts, spec).unwrap()
}

/// Pseudocode-direct exchange algorithm: fresh `f(S)` per element under
/// the theory rule, linear scans for the swap target.
fn reference_ck(
    stream: &[ElementId],
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    rule: SwapRule,
) -> Vec<ElementId> {
    let mut solution: Vec<ElementId> = Vec::new();
    let mut weights = vec![0.0f64; ground.len()];
    let mut cached = 0.0f64;
    for &e in stream {
        let c = ground.color(e);
        let base = match rule {
            SwapRule::Theory => oracle.evaluate(&solution).unwrap(),
            SwapRule::Practical => cached,
        };
        let mut with: Vec<ElementId> = solution.clone();
        insert_sorted(&mut with, e);
        let value_with = oracle.evaluate(&with).unwrap();
        let weight = value_with - base;

        let mut counts = counts_of(&solution, ground);
        counts[c.index()] += 1;
        if is_extendable(&counts, spec).unwrap() {
            solution = with;
            weights[e.index()] = weight;
            cached = value_with;
            continue;
        }
        let target = solution
            .iter()
            .filter(|&&m| swap_feasible(&solution, m, c, ground, spec))
            .map(|&m| (weights[m.index()], m))
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let Some((out_weight, out)) = target else {
            continue;
        };
        let accept = match rule {
            SwapRule::Theory => weight >= 2.0 * out_weight,
            SwapRule::Practical => {
                let mut swapped: Vec<ElementId> =
                    with.iter().copied().filter(|&m| m != out).collect();
                swapped.sort_unstable();
                let swapped_value = oracle.evaluate(&swapped).unwrap();
                if swapped_value >= cached {
                    cached = swapped_value;
                    true
                } else {
                    false
                }
            }
        };
        if accept {
            solution.retain(|&m| m != out);
            insert_sorted(&mut solution, e);
            weights[e.index()] = weight;
        }
    }
    solution
}

/// Pseudocode-direct subsample-free exchange with arrival-relative
/// weights (theory) or current marginals (practical).
fn reference_fkk(
    stream: &[ElementId],
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    rule: SwapRule,
) -> Vec<ElementId> {
    let mut solution: Vec<ElementId> = Vec::new();
    let mut stored = vec![0.0f64; ground.len()];
    let mut cached = 0.0f64;
    for &e in stream {
        let c = ground.color(e);
        let mut with = solution.clone();
        insert_sorted(&mut with, e);
        let value_with = oracle.evaluate(&with).unwrap();
        let gain = value_with - cached;

        let mut counts = counts_of(&solution, ground);
        counts[c.index()] += 1;
        if is_extendable(&counts, spec).unwrap() {
            solution = with;
            stored[e.index()] = gain;
            cached = value_with;
            continue;
        }
        let mut target: Option<(f64, ElementId)> = None;
        for &m in &solution {
            if !swap_feasible(&solution, m, c, ground, spec) {
                continue;
            }
            let weight = match rule {
                SwapRule::Theory => stored[m.index()],
                SwapRule::Practical => {
                    let without: Vec<ElementId> =
                        solution.iter().copied().filter(|&x| x != m).collect();
                    cached - oracle.evaluate(&without).unwrap()
                }
            };
            if target.is_none_or(|(w, t)| weight < w || (weight == w && m < t)) {
                target = Some((weight, m));
            }
        }
        let Some((out_weight, out)) = target else {
            continue;
        };
        match rule {
            SwapRule::Theory => {
                if gain >= 2.0 * out_weight {
                    let swapped: Vec<ElementId> =
                        with.iter().copied().filter(|&m| m != out).collect();
                    let value_swapped = oracle.evaluate(&swapped).unwrap();
                    let without_out: Vec<ElementId> =
                        solution.iter().copied().filter(|&m| m != out).collect();
                    let value_without = oracle.evaluate(&without_out).unwrap();
                    solution = swapped;
                    stored[e.index()] = value_swapped - value_without;
                    cached = value_swapped;
                }
            }
            SwapRule::Practical => {
                let swapped: Vec<ElementId> =
                    with.iter().copied().filter(|&m| m != out).collect();
                let value_swapped = oracle.evaluate(&swapped).unwrap();
                if value_swapped >= cached {
                    solution = swapped;
                    cached = value_swapped;
                }
            }
        }
    }
    solution
}

struct Case {
    oracle: ObjectiveOracle,
    ground: GroundSet,
    spec: FairnessSpec,
}

fn random_cases(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    while cases.len() < count {
        let n = rng.random_range(4..=14usize);
        let colors = rng.random_range(1..=4u32);
        let ground = GroundSet::new(
            (0..n).map(|_| ColorId(rng.random_range(0..colors))).collect(),
            colors,
        )
        .unwrap();
        let lower: Vec<u32> = (0..colors).map(|_| rng.random_range(0..2)).collect();
        let upper: Vec<u32> = lower.iter().map(|&l| l + rng.random_range(0..3)).collect();
        let k = lower.iter().sum::<u32>() + rng.random_range(1..4);
        let Ok(spec) = FairnessSpec::new(lower, upper, k) else {
            continue;
        };
        if spec.validate_for(&ground).is_err() {
            continue;
        }
        let oracle = match cases.len() % 4 {
            // Integer weights force ties; small range forces many of them.
            0 => ObjectiveOracle::from_function(
                "modular",
                Modular((0..n).map(|_| rng.random_range(0..4) as f64).collect()),
            ),
            1 => ObjectiveOracle::from_function(
                "modular",
                Modular((0..n).map(|_| rng.random_range(0.0..9.0)).collect()),
            ),
            2 => random_coverage_instance(&mut rng, n, 3).into_oracle(),
            _ => random_facility_instance(&mut rng, n, 2).into_oracle(),
        };
        cases.push(Case {
            oracle,
            ground,
            spec,
        });
    }
    cases
}

#[test]
fn exchange_state_matches_the_reference_implementation() {
    for (idx, case) in random_cases(7001, 300).iter().enumerate() {
        let mut orders = vec![case.ground.elements().collect::<Vec<_>>()];
        let mut rng = ChaCha8Rng::seed_from_u64(idx as u64);
        for _ in 0..3 {
            let mut order: Vec<ElementId> = case.ground.elements().collect();
            use rand::seq::SliceRandom;
            order.shuffle(&mut rng);
            orders.push(order);
        }
        for stream in &orders {
            for rule in [SwapRule::Theory, SwapRule::Practical] {
                let fork = case.oracle.fork();
                let mut state = CkState::new(&case.spec, &case.ground, rule);
                for &e in stream {
                    state.process(e, &fork, &case.ground).unwrap();
                }
                let reference_fork = case.oracle.fork();
                let expected =
                    reference_ck(stream, &reference_fork, &case.ground, &case.spec, rule);
                assert_eq!(
                    state.solution(),
                    expected.as_slice(),
                    "case {idx}, rule {rule:?}"
                );
                assert_eq!(
                    fork.call_count(),
                    reference_fork.call_count(),
                    "case {idx}, rule {rule:?}: call counts diverge"
                );
            }
        }
    }
}

#[test]
fn subsample_free_exchange_matches_the_reference_implementation() {
    for (idx, case) in random_cases(7002, 200).iter().enumerate() {
        let stream: Vec<ElementId> = case.ground.elements().collect();
        for rule in [SwapRule::Theory, SwapRule::Practical] {
            let fork = case.oracle.fork();
            let mut state = FkkState::new(&case.spec, &case.ground, FkkConfig::monotone(rule));
            for &e in &stream {
                state.process(e, &fork, &case.ground).unwrap();
            }
            let reference_fork = case.oracle.fork();
            let expected =
                reference_fkk(&stream, &reference_fork, &case.ground, &case.spec, rule);
            assert_eq!(
                state.solution(),
                expected.as_slice(),
                "case {idx}, rule {rule:?}"
            );
            assert_eq!(
                fork.call_count(),
                reference_fork.call_count(),
                "case {idx}, rule {rule:?}: call counts diverge"
            );
        }
    }
}
