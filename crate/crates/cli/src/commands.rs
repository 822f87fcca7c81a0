//! Subcommand implementations. Each returns `Ok(())` on success; errors
//! carry the exit code.

use std::path::Path;

use fairsub_core::{
    brute_force_opt, gen_hardness, run_experiment, verify_submodularity,
    verify_submodularity_exhaustive, ExperimentConfig, SubmodularityReport,
};

use crate::config::{Config, ObjectiveFamily, RunSection};
use crate::error::{CliError, CliResult};
use crate::ingest::{build_oracle, ingest};
use crate::output::{format_float, write_manifest, write_results_csv};

fn run_section<'a>(config: &'a Config, path: &Path) -> CliResult<&'a RunSection> {
    config
        .run
        .as_ref()
        .ok_or_else(|| CliError::parse(path, "config lacks a [run] section"))
}

/// `run`: execute the configured sweep and write results.csv + manifest.
pub fn run(config_path: &Path, jobs: Option<usize>, dry_run: bool) -> CliResult<()> {
    let (config, base) = Config::load(config_path)?;
    let run = run_section(&config, config_path)?.clone();
    let bundle = ingest(&config, &base)?;
    let bounds = config.bounds_source(&bundle.labels, config_path)?;

    let out_dir = run.output_dir(&base);
    write_manifest(
        &out_dir.join("manifest.toml"),
        &config,
        bundle.ground.len(),
        bundle.ground.num_colors(),
        &bundle.labels,
        &bundle.provenance,
        &[],
    )?;
    if dry_run {
        println!("dry run: manifest written to {}", out_dir.display());
        return Ok(());
    }

    let oracle = build_oracle(&bundle, &config, &base)?;
    // Fail fast on budgets that cannot satisfy the bounds, so that broken
    // configs exit with a diagnostic instead of a sweep full of errors.
    for &k in &run.k {
        bounds
            .spec_for(&bundle.ground, k)
            .map_err(CliError::from_core)?;
    }

    let experiment = ExperimentConfig {
        algorithms: run.algorithm_kinds(config_path)?,
        bounds,
        k_values: run.k.clone(),
        seeds: run.seeds.clone(),
        order: run.stream_order(config_path)?,
        jobs: jobs.unwrap_or(run.jobs).max(1),
    };
    let outcome = run_experiment(&experiment, &oracle, &bundle.ground);

    write_results_csv(&out_dir.join("results.csv"), &outcome, run.wall_clock)?;
    write_manifest(
        &out_dir.join("manifest.toml"),
        &config,
        bundle.ground.len(),
        bundle.ground.num_colors(),
        &bundle.labels,
        &bundle.provenance,
        &outcome.warnings,
    )?;

    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }
    for row in &outcome.aggregates {
        println!(
            "{} k={}: mean {} over {} seeds (min {}, max {}), mean err {:.2}, mean calls {:.0}",
            row.algorithm,
            row.k,
            format_float(row.mean_objective),
            row.runs,
            format_float(row.min_objective),
            format_float(row.max_objective),
            row.mean_err,
            row.mean_oracle_calls
        );
    }
    let failures = outcome
        .cells
        .iter()
        .filter(|c| c.result.is_err())
        .count();
    println!(
        "wrote {} runs ({failures} failed) to {}",
        outcome.cells.len(),
        out_dir.display()
    );
    Ok(())
}

/// `brute-force`: exact optimum for every budget in the sweep.
pub fn brute_force(config_path: &Path) -> CliResult<()> {
    let (config, base) = Config::load(config_path)?;
    let run = run_section(&config, config_path)?;
    let bundle = ingest(&config, &base)?;
    let bounds = config.bounds_source(&bundle.labels, config_path)?;
    let oracle = build_oracle(&bundle, &config, &base)?;
    for &k in &run.k {
        let (spec, _) = bounds
            .spec_for(&bundle.ground, k)
            .map_err(CliError::from_core)?;
        let (value, witness) = brute_force_opt(&oracle, &bundle.ground, &spec, run.brute_force_cap)
            .map_err(CliError::from_core)?;
        let ids: Vec<String> = witness.iter().map(|e| e.to_string()).collect();
        println!("k={k}: opt={} witness=[{}]", format_float(value), ids.join(" "));
    }
    Ok(())
}

/// `gen-hardness`: materialize a hardness instance as dataset + config.
pub fn generate_hardness(
    n: usize,
    q: f64,
    epsilon: f64,
    bit: u8,
    i_star: Option<usize>,
    out_dir: &Path,
) -> CliResult<()> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    if bit > 1 {
        return Err(CliError::Usage("--bit must be 0 or 1".into()));
    }
    let i_star = i_star.unwrap_or(n / 2);
    let mut bits = vec![true; n];
    if i_star >= n {
        return Err(CliError::Usage(format!(
            "--i-star {i_star} out of range for --n {n}"
        )));
    }
    bits[i_star] = bit == 1;
    let instance = gen_hardness(&bits, i_star, q, epsilon).map_err(CliError::from_core)?;

    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::parse(out_dir, format!("cannot create: {e}")))?;
    let edges: String = instance
        .cut
        .arcs()
        .iter()
        .map(|(u, v)| format!("{u} {v}\n"))
        .collect();
    let colors: String = instance
        .ground
        .elements()
        .map(|e| format!("c{}\n", instance.ground.color(e).0 + 1))
        .collect();
    let k = instance.spec.k();
    let config = format!(
        "[dataset]\nformat = \"edge_list\"\npath = \"edges.txt\"\ncolors = \"colors.txt\"\ndirected = true\n\n\
         [objective]\nfamily = \"cut\"\n\n\
         [bounds]\nmode = \"explicit\"\nlower = [1, {ba}, 0]\nupper = [1, {ba}, 0]\n\n\
         [run]\nk = [{k}]\nalgorithms = [\"fair_streaming_nonmonotone\", \"fair_random\"]\nseeds = [1, 2, 3]\n",
        ba = instance.b - instance.a,
    );
    let write = |name: &str, text: &str| -> CliResult<()> {
        std::fs::write(out_dir.join(name), text)
            .map_err(|e| CliError::parse(&out_dir.join(name), format!("cannot write: {e}")))
    };
    write("edges.txt", &edges)?;
    write("colors.txt", &colors)?;
    write("config.toml", &config)?;
    println!(
        "wrote hardness instance to {}: n={}, a={}, b={}, bit={}, excess ratio {}/{}",
        out_dir.display(),
        instance.ground.len(),
        instance.a,
        instance.b,
        u8::from(instance.bit),
        instance.a,
        instance.b
    );
    Ok(())
}

/// `verify`: PSD and submodularity diagnostics for a dataset config.
pub fn verify(dataset_config: &Path) -> CliResult<()> {
    let (config, base) = Config::load(dataset_config)?;
    let bundle = ingest(&config, &base)?;
    let oracle = build_oracle(&bundle, &config, &base)?;
    println!(
        "dataset: {} elements, {} colors, objective {}",
        bundle.ground.len(),
        bundle.ground.num_colors(),
        oracle.descriptor()
    );
    if config.objective.family == ObjectiveFamily::KernelLogdet {
        // Ingestion already enforced symmetry and PSD within tolerance.
        println!("psd: ok (tolerance 1e-8)");
    }
    let n = bundle.ground.len();
    let report: SubmodularityReport = if n <= 10 {
        verify_submodularity_exhaustive(&oracle, 1e-7).map_err(CliError::from_core)?
    } else {
        verify_submodularity(&oracle, 10_000, 1, 1e-7).map_err(CliError::from_core)?
    };
    println!(
        "submodularity: {} ({} chains, {} violations, worst {})",
        if report.is_clean() { "ok" } else { "VIOLATED" },
        report.trials,
        report.violations,
        format_float(report.worst_violation)
    );
    println!(
        "min sampled marginal: {} ({})",
        format_float(report.min_marginal),
        if report.min_marginal < 0.0 {
            "non-monotone"
        } else {
            "monotone on sampled chains"
        }
    );
    Ok(())
}
