//! Experiment execution: resolves the config, opens a run directory,
//! produces CSV/JSON/SVG artifacts, and always leaves a manifest —
//! status "complete", "incomplete" (sweep aborted mid-list), or "failed".
//!
//! Measurement lines (ξ, α, censuses) go to stdout; paths and progress go
//! to stderr so pipelines can consume the numbers directly.

use serde::Serialize;
use std::f64::consts::PI;

use quasicryst_core::{
    alpha_estimate, alpha_ideal_model, band_scan, classify_boundary_modes, default_broadening,
    default_min_gap, diagonalize, evolve, ldos, output_distribution, propagate_experiment,
    return_probability, simulate_hbt, single_site_input, BoundaryMode, EigenSystem, HbtCounts,
    Side, SourceModel, EDGE_WEIGHT_THRESHOLD, EDGE_WINDOW,
};

use crate::artifact::RunDir;
use crate::charts;
use crate::config::{self, CommonArgs, Kind, KindName, Resolved, ResolvedLattice, SweepCase};
use crate::error::{CliError, RunFailure};
use crate::export::fmt_f64;

/// Resolve → run → manifest. The manifest is written even on failure; the
/// caller maps the returned error to an exit code.
pub fn run(kind: KindName, args: &CommonArgs) -> Result<(), CliError> {
    let resolved = config::resolve(kind, args)?;
    let command = resolved.kind_name().command();
    let mut dir = RunDir::create(&resolved.out_dir, command, resolved.no_timestamp)?;
    // Snapshot the resolved config first so even failed runs carry one.
    dir.write_artifact("config.toml", resolved.to_toml().as_bytes())?;
    let config_json = resolved.to_json();
    match execute(&resolved, &mut dir) {
        Ok(()) => {
            dir.finish("complete", &config_json, None)?;
            eprintln!(
                "run directory: {} ({} artifacts)",
                dir.path().display(),
                dir.artifacts().len()
            );
            Ok(())
        }
        Err(fail) => {
            let message = fail.error.to_string();
            if let Err(io_err) = dir.finish(fail.status, &config_json, Some(&message)) {
                eprintln!("warning: failed to write the failure manifest: {io_err}");
            }
            Err(fail.error)
        }
    }
}

fn execute(r: &Resolved, dir: &mut RunDir) -> Result<(), RunFailure> {
    match &r.kind {
        Kind::Bands {
            phi_start_pi,
            phi_end_pi,
            phi_points,
        } => exec_bands(r, dir, *phi_start_pi, *phi_end_pi, *phi_points),
        Kind::Ldos {
            energy_points,
            sigma,
        } => exec_ldos(r, dir, *energy_points, *sigma),
        Kind::Evolve {
            input_site,
            z_samples,
        } => exec_evolve(r, dir, *input_site, z_samples),
        Kind::SweepPhi { z, cases } => exec_sweep(r, dir, *z, cases),
        Kind::Hbt {
            n_windows,
            seed,
            model,
        } => exec_hbt(r, dir, *n_windows, *seed, model),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

fn side_str(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn lattice_annotation(lat: &ResolvedLattice) -> String {
    format!(
        "N = {}, t = {}, λ = {}, b = {:.10}",
        lat.n_sites, lat.t, lat.lambda, lat.b
    )
}

fn census(modes: &[BoundaryMode]) -> (usize, usize) {
    let left = modes.iter().filter(|m| m.side == Side::Left).count();
    (left, modes.len() - left)
}

#[derive(Serialize)]
struct ModeDoc {
    mode: usize,
    energy: f64,
    side: &'static str,
    edge_weight: f64,
    gap: [f64; 2],
}

impl ModeDoc {
    fn from_mode(m: &BoundaryMode) -> ModeDoc {
        ModeDoc {
            mode: m.mode_index,
            energy: m.energy,
            side: side_str(m.side),
            edge_weight: m.edge_weight,
            gap: [m.gap_interval.0, m.gap_interval.1],
        }
    }
}

// ---------------------------------------------------------------- bands

#[derive(Serialize)]
struct BandsDoc<'a> {
    schema_version: &'static str,
    config: &'a serde_json::Value,
    phi: &'a [f64],
    phi_over_pi: &'a [f64],
    energies: &'a [Vec<f64>],
    left_edge_weight: Vec<&'a [f64]>,
    right_edge_weight: Vec<&'a [f64]>,
    boundary_modes: Vec<Vec<ModeDoc>>,
}

fn exec_bands(
    r: &Resolved,
    dir: &mut RunDir,
    start_pi: f64,
    end_pi: f64,
    points: usize,
) -> Result<(), RunFailure> {
    let params = r.lattice.params().map_err(CliError::from)?;
    let grid_pi = linspace(start_pi, end_pi, points);
    let grid: Vec<f64> = grid_pi.iter().map(|g| g * PI).collect();
    let scan = band_scan(&params, &grid)?;
    let modes: Vec<Vec<BoundaryMode>> = (0..grid.len())
        .map(|i| scan.classify_row(i, EDGE_WEIGHT_THRESHOLD))
        .collect();

    let mut csv = String::from("phi,mode,energy\n");
    for (i, phi) in grid.iter().enumerate() {
        for (m, e) in scan.energies_per_phi()[i].iter().enumerate() {
            csv.push_str(&fmt_f64(*phi));
            csv.push(',');
            csv.push_str(&m.to_string());
            csv.push(',');
            csv.push_str(&fmt_f64(*e));
            csv.push('\n');
        }
    }
    dir.write_artifact("bands.csv", csv.as_bytes())?;

    let config_json = r.to_json();
    let doc = BandsDoc {
        schema_version: "1",
        config: &config_json,
        phi: &grid,
        phi_over_pi: &grid_pi,
        energies: scan.energies_per_phi(),
        left_edge_weight: (0..grid.len()).map(|i| scan.left_edge_weight(i)).collect(),
        right_edge_weight: (0..grid.len()).map(|i| scan.right_edge_weight(i)).collect(),
        boundary_modes: modes
            .iter()
            .map(|row| row.iter().map(ModeDoc::from_mode).collect())
            .collect(),
    };
    let mut json = serde_json::to_string(&doc).map_err(CliError::from)?;
    json.push('\n');
    dir.write_artifact("bands.json", json.as_bytes())?;

    let annotation = format!(
        "{}, φ/π ∈ [{}, {}], {} points",
        lattice_annotation(&r.lattice),
        fmt_f64(start_pi),
        fmt_f64(end_pi),
        points
    );
    let svg = charts::bands_chart(
        &grid_pi,
        scan.energies_per_phi(),
        &modes,
        &annotation,
        dir.timestamp(),
    );
    dir.write_artifact("bands.svg", svg.as_bytes())?;

    let edge_points: usize = modes.iter().map(Vec::len).sum();
    println!(
        "bands: {} phase points x {} modes, {} in-gap edge-mode points",
        points,
        r.lattice.n_sites,
        edge_points
    );
    Ok(())
}

// ----------------------------------------------------------------- ldos

#[derive(Serialize)]
struct LdosDoc<'a> {
    schema_version: &'static str,
    config: &'a serde_json::Value,
    sigma: f64,
    energy: &'a [f64],
    density: &'a [Vec<f64>],
}

fn exec_ldos(
    r: &Resolved,
    dir: &mut RunDir,
    energy_points: usize,
    sigma_cfg: Option<f64>,
) -> Result<(), RunFailure> {
    let params = r.lattice.params().map_err(CliError::from)?;
    let es = diagonalize(&quasicryst_core::build_hamiltonian(&params))?;
    let sigma = sigma_cfg.unwrap_or_else(|| default_broadening(&es));
    let e_lo = es.energies()[0] - 5.0 * sigma;
    let e_hi = es.energies()[es.dimension() - 1] + 5.0 * sigma;
    let grid = linspace(e_lo, e_hi, energy_points);
    let map = ldos(&es, &grid, sigma)?;

    let mut csv = String::from("energy,site,density\n");
    for (i, e) in grid.iter().enumerate() {
        let row = map.density(i);
        for site in 1..=map.site_count() {
            csv.push_str(&fmt_f64(*e));
            csv.push(',');
            csv.push_str(&site.to_string());
            csv.push(',');
            csv.push_str(&fmt_f64(row[site - 1]));
            csv.push('\n');
        }
    }
    dir.write_artifact("ldos.csv", csv.as_bytes())?;

    let config_json = r.to_json();
    let doc = LdosDoc {
        schema_version: "1",
        config: &config_json,
        sigma,
        energy: &grid,
        density: map.density_rows(),
    };
    let mut json = serde_json::to_string(&doc).map_err(CliError::from)?;
    json.push('\n');
    dir.write_artifact("ldos.json", json.as_bytes())?;

    let annotation = format!(
        "{}, φ = {}π, σ = {:.5}",
        lattice_annotation(&r.lattice),
        fmt_f64(r.lattice.phi / PI),
        sigma
    );
    let svg = charts::ldos_chart(&map, &annotation, dir.timestamp());
    dir.write_artifact("ldos.svg", svg.as_bytes())?;

    println!(
        "ldos: {} energies x {} sites, sigma = {}",
        energy_points,
        map.site_count(),
        fmt_f64(sigma)
    );
    Ok(())
}

// --------------------------------------------------------------- evolve

#[derive(Serialize)]
struct EvolveDoc<'a> {
    schema_version: &'static str,
    config: &'a serde_json::Value,
    input_site: usize,
    window_d: usize,
    z: &'a [f64],
    xi: &'a [f64],
    distributions: &'a [Vec<f64>],
}

fn distribution_csv(samples: &[(f64, &[f64])]) -> String {
    let mut csv = String::from("z,site,probability\n");
    for (z, dist) in samples {
        for (idx, p) in dist.iter().enumerate() {
            csv.push_str(&fmt_f64(*z));
            csv.push(',');
            csv.push_str(&(idx + 1).to_string());
            csv.push(',');
            csv.push_str(&fmt_f64(*p));
            csv.push('\n');
        }
    }
    csv
}

fn exec_evolve(
    r: &Resolved,
    dir: &mut RunDir,
    input_site: usize,
    z_samples: &[f64],
) -> Result<(), RunFailure> {
    let params = r.lattice.params().map_err(CliError::from)?;
    let result = propagate_experiment(&params, input_site, z_samples)?;
    let xi: Vec<f64> = result
        .distributions()
        .iter()
        .map(|dist| return_probability(dist, input_site, EDGE_WINDOW))
        .collect::<Result<_, _>>()?;

    let rows: Vec<(f64, &[f64])> = z_samples
        .iter()
        .copied()
        .zip(result.distributions().iter().map(Vec::as_slice))
        .collect();
    dir.write_artifact("distribution.csv", distribution_csv(&rows).as_bytes())?;

    let config_json = r.to_json();
    let doc = EvolveDoc {
        schema_version: "1",
        config: &config_json,
        input_site,
        window_d: EDGE_WINDOW,
        z: z_samples,
        xi: &xi,
        distributions: result.distributions(),
    };
    let mut json = serde_json::to_string(&doc).map_err(CliError::from)?;
    json.push('\n');
    dir.write_artifact("evolve.json", json.as_bytes())?;

    let last = z_samples.len() - 1;
    let annotation = format!(
        "{}, φ = {}π, input site {}, z = {}",
        lattice_annotation(&r.lattice),
        fmt_f64(r.lattice.phi / PI),
        input_site,
        fmt_f64(z_samples[last])
    );
    let note = format!("ξ[{}] = {:.4} (d = {})", input_site, xi[last], EDGE_WINDOW);
    let svg = charts::distribution_chart(
        result.distribution(last),
        input_site,
        &annotation,
        &note,
        dir.timestamp(),
    );
    dir.write_artifact("distribution.svg", svg.as_bytes())?;

    for (z, x) in z_samples.iter().zip(&xi) {
        println!(
            "z = {}: xi[site {}] = {:.4} (window d = {})",
            fmt_f64(*z),
            input_site,
            x,
            EDGE_WINDOW
        );
    }
    Ok(())
}

// ------------------------------------------------------------ sweep-phi

#[derive(Serialize)]
struct SweepCaseDoc {
    schema_version: &'static str,
    n_sites: usize,
    phi: f64,
    input_site: usize,
    z: f64,
    window_d: usize,
    xi: f64,
    left_modes: usize,
    right_modes: usize,
    boundary_modes: Vec<ModeDoc>,
    distribution: Vec<f64>,
}

#[derive(Serialize)]
struct SweepSummaryDoc<'a> {
    schema_version: &'static str,
    config: &'a serde_json::Value,
    cases: &'a [SweepCaseDoc],
}

fn classify_at(es: &EigenSystem, n_sites: usize) -> Result<Vec<BoundaryMode>, quasicryst_core::Error> {
    let d = EDGE_WINDOW.min(n_sites);
    classify_boundary_modes(es, d, EDGE_WEIGHT_THRESHOLD, default_min_gap(es.energies()))
}

fn run_sweep_case(
    r: &Resolved,
    dir: &mut RunDir,
    z: f64,
    case: &SweepCase,
    index: usize,
) -> Result<SweepCaseDoc, CliError> {
    let params = r.lattice.params_at(case.n_sites, case.phi)?;
    let es = diagonalize(&quasicryst_core::build_hamiltonian(&params))?;
    let modes = classify_at(&es, case.n_sites)?;
    let (left_modes, right_modes) = census(&modes);
    let input = single_site_input(case.n_sites, case.input_site)?;
    let dist = output_distribution(&evolve(&es, &input, z)?);
    let xi = return_probability(&dist, case.input_site, EDGE_WINDOW)?;

    let sub = format!("case-{:02}-n{}-in{}", index + 1, case.n_sites, case.input_site);
    dir.write_artifact(
        &format!("{sub}/distribution.csv"),
        distribution_csv(&[(z, &dist)]).as_bytes(),
    )?;

    let doc = SweepCaseDoc {
        schema_version: "1",
        n_sites: case.n_sites,
        phi: case.phi,
        input_site: case.input_site,
        z,
        window_d: EDGE_WINDOW,
        xi,
        left_modes,
        right_modes,
        boundary_modes: modes.iter().map(ModeDoc::from_mode).collect(),
        distribution: dist.clone(),
    };
    let mut json = serde_json::to_string(&doc)?;
    json.push('\n');
    dir.write_artifact(&format!("{sub}/case.json"), json.as_bytes())?;

    let annotation = format!(
        "N = {}, t = {}, λ = {}, b = {:.10}, φ = {}π, input site {}, z = {}",
        case.n_sites,
        r.lattice.t,
        r.lattice.lambda,
        r.lattice.b,
        fmt_f64(case.phi / PI),
        case.input_site,
        fmt_f64(z)
    );
    let note = format!("ξ[{}] = {:.4} (d = {})", case.input_site, xi, EDGE_WINDOW);
    let svg =
        charts::distribution_chart(&dist, case.input_site, &annotation, &note, dir.timestamp());
    dir.write_artifact(&format!("{sub}/distribution.svg"), svg.as_bytes())?;

    println!(
        "n = {}, phi = {}, input = {}: xi = {:.4}, census L = {}, R = {}",
        case.n_sites,
        fmt_f64(case.phi),
        case.input_site,
        xi,
        left_modes,
        right_modes
    );
    Ok(doc)
}

fn exec_sweep(
    r: &Resolved,
    dir: &mut RunDir,
    z: f64,
    cases: &[SweepCase],
) -> Result<(), RunFailure> {
    let mut docs = Vec::with_capacity(cases.len());
    for (i, case) in cases.iter().enumerate() {
        match run_sweep_case(r, dir, z, case, i) {
            Ok(doc) => docs.push(doc),
            Err(error) => {
                let error = match error {
                    CliError::Config(m) => CliError::Config(prefix_case(i, case, &m)),
                    CliError::Numerical(m) => CliError::Numerical(prefix_case(i, case, &m)),
                    CliError::Undefined(m) => CliError::Undefined(prefix_case(i, case, &m)),
                    CliError::Io(m) => CliError::Io(prefix_case(i, case, &m)),
                };
                return Err(RunFailure {
                    error,
                    status: "incomplete",
                });
            }
        }
    }

    let mut csv = String::from("n_sites,phi,input_site,xi,left_modes,right_modes\n");
    for doc in &docs {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            doc.n_sites,
            fmt_f64(doc.phi),
            doc.input_site,
            fmt_f64(doc.xi),
            doc.left_modes,
            doc.right_modes
        ));
    }
    dir.write_artifact("summary.csv", csv.as_bytes())?;

    let config_json = r.to_json();
    let summary = SweepSummaryDoc {
        schema_version: "1",
        config: &config_json,
        cases: &docs,
    };
    let mut json = serde_json::to_string(&summary).map_err(CliError::from)?;
    json.push('\n');
    dir.write_artifact("summary.json", json.as_bytes())?;
    Ok(())
}

fn prefix_case(index: usize, case: &SweepCase, message: &str) -> String {
    format!(
        "case {} (n_sites = {}, phi = {}, input_site = {}): {message}",
        index + 1,
        case.n_sites,
        fmt_f64(case.phi),
        case.input_site
    )
}

// ------------------------------------------------------------------ hbt

#[derive(Serialize)]
struct CountsDoc {
    n_windows: u64,
    c_t: u64,
    c_t1: u64,
    c_t2: u64,
    c_t12: u64,
}

impl From<HbtCounts> for CountsDoc {
    fn from(c: HbtCounts) -> CountsDoc {
        CountsDoc {
            n_windows: c.n_windows,
            c_t: c.c_t,
            c_t1: c.c_t1,
            c_t2: c.c_t2,
            c_t12: c.c_t12,
        }
    }
}

#[derive(Serialize)]
struct HbtDoc<'a> {
    schema_version: &'static str,
    config: &'a serde_json::Value,
    counts: CountsDoc,
    alpha: f64,
    std_error: f64,
    upper_bound: bool,
    /// Closed-form α of the configured model, for comparison.
    alpha_ideal: f64,
}

fn exec_hbt(
    r: &Resolved,
    dir: &mut RunDir,
    n_windows: u64,
    seed: u64,
    model: &SourceModel,
) -> Result<(), RunFailure> {
    let counts = simulate_hbt(model, n_windows, seed)?;
    let estimate = alpha_estimate(&counts)?;
    let ideal = alpha_ideal_model(model);

    let config_json = r.to_json();
    let doc = HbtDoc {
        schema_version: "1",
        config: &config_json,
        counts: CountsDoc::from(counts),
        alpha: estimate.alpha,
        std_error: estimate.std_error,
        upper_bound: estimate.upper_bound,
        alpha_ideal: ideal,
    };
    let mut json = serde_json::to_string(&doc).map_err(CliError::from)?;
    json.push('\n');
    dir.write_artifact("hbt.json", json.as_bytes())?;

    println!(
        "alpha = {:.4} ({:.4}){}",
        estimate.alpha,
        estimate.std_error,
        if estimate.upper_bound {
            " [upper bound]"
        } else {
            ""
        }
    );
    Ok(())
}
