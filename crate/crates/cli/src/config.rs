//! Experiment configuration: the TOML file format, CLI override merging,
//! and the fully-resolved form that runs execute and manifests record.
//!
//! A config file holds an optional `[lattice]` block plus at most one
//! experiment block (`[bands]`, `[ldos]`, `[evolve]`, `[sweep_phi]`,
//! `[hbt]`) matching the subcommand. Every key has a default — the
//! reference lattice (N = 100, t = 0.5, λ = 0.5, b = golden mean,
//! φ = 0.2π) — so the CLI also works with no file at all. CLI flags
//! override file values;
//! flags a subcommand does not use are accepted and ignored so scripts can
//! share one flag set across subcommands.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use quasicryst_core::{LatticeParams, PairStatistics, SourceModel, GOLDEN_MEAN, Z_EXP};

use crate::error::CliError;

pub const DEFAULT_OUT_DIR: &str = "runs";
const DEFAULT_PHI_PI: f64 = 0.2;
const DEFAULT_BANDS_POINTS: usize = 201;
const DEFAULT_LDOS_POINTS: usize = 321;
const DEFAULT_HBT_WINDOWS: u64 = 1_000_000;
const DEFAULT_HBT_SEED: u64 = 42;

// ---------------------------------------------------------------------
// File form: everything optional, unknown keys rejected with a field path.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bands: Option<BandsBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ldos: Option<LdosBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_phi: Option<SweepPhiBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbt: Option<HbtBlock>,
}

/// Lattice parameters. The phase may be given in radians (`phi`) or in
/// units of π (`phi_pi`) — at most one of the two.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeBlock {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_sites: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_pi: Option<f64>,
}

/// Phase grid for the band scan, in units of π, endpoints inclusive.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandsBlock {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_start_pi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_end_pi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_points: Option<usize>,
}

/// Local-density-of-states map. The energy grid always spans the spectrum
/// ± 5σ; only its resolution and the broadening are configurable. Omitted
/// `sigma` means 2% of the spectral width.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LdosBlock {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveBlock {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_site: Option<usize>,
    /// Strictly increasing propagation distances, first ≥ 0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_samples: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepPhiBlock {
    /// Propagation distance shared by all cases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<Vec<SweepCaseBlock>>,
}

/// One sweep case: its own chain length, phase, and injection site;
/// t, λ, b come from the `[lattice]` block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepCaseBlock {
    pub n_sites: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_pi: Option<f64>,
    pub input_site: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatisticsName {
    Poisson,
    Thermal,
    FixedOne,
}

impl From<PairStatisticsName> for PairStatistics {
    fn from(name: PairStatisticsName) -> Self {
        match name {
            PairStatisticsName::Poisson => PairStatistics::Poisson,
            PairStatisticsName::Thermal => PairStatistics::Thermal,
            PairStatisticsName::FixedOne => PairStatistics::FixedOne,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HbtBlock {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_windows: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_mean: Option<f64>,
    /// "poisson", "thermal", or "fixed-one".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_statistics: Option<PairStatisticsName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub herald_efficiency: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signal_transmission: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitter_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dark_prob_1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dark_prob_2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dark_prob_trigger: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncorrelated_trigger: Option<bool>,
}

// ---------------------------------------------------------------------
// CLI overrides shared by every subcommand.
// ---------------------------------------------------------------------

/// Flags every subcommand accepts. A flag a subcommand has no use for is
/// accepted and ignored, so one scripted flag set fits all subcommands.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct CommonArgs {
    /// TOML experiment config (flags below override file values)
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Number of lattice sites N
    #[arg(long, value_name = "N")]
    pub n_sites: Option<usize>,

    /// Coupling scale t
    #[arg(long, value_name = "T")]
    pub t: Option<f64>,

    /// Coupling modulation depth λ
    #[arg(long, value_name = "LAMBDA", allow_negative_numbers = true)]
    pub lambda: Option<f64>,

    /// Incommensurate modulation frequency b
    #[arg(long, value_name = "B")]
    pub b: Option<f64>,

    /// Modulation phase φ in radians
    #[arg(long, value_name = "RAD", conflicts_with = "phi_pi", allow_negative_numbers = true)]
    pub phi: Option<f64>,

    /// Modulation phase in units of π (e.g. 0.2 for φ = 0.2π)
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    pub phi_pi: Option<f64>,

    /// Injection site, 1-based (evolve; ignored elsewhere)
    #[arg(long, value_name = "SITE")]
    pub input_site: Option<usize>,

    /// Propagation distance; replaces the configured z list (evolve, sweep-phi)
    #[arg(long, value_name = "Z")]
    pub z: Option<f64>,

    /// Monte-Carlo seed (hbt; ignored elsewhere)
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,

    /// Root directory for run outputs
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    /// Fixed run-directory name and no timestamps anywhere, for byte-exact reruns
    #[arg(long)]
    pub no_timestamp: bool,
}

// ---------------------------------------------------------------------
// Resolved form: every value concrete; embedded in manifests and JSON.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindName {
    Bands,
    Ldos,
    Evolve,
    SweepPhi,
    Hbt,
}

impl KindName {
    pub fn command(self) -> &'static str {
        match self {
            KindName::Bands => "bands",
            KindName::Ldos => "ldos",
            KindName::Evolve => "evolve",
            KindName::SweepPhi => "sweep-phi",
            KindName::Hbt => "hbt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedLattice {
    pub n_sites: usize,
    pub t: f64,
    pub lambda: f64,
    pub b: f64,
    /// Phase in radians.
    pub phi: f64,
}

impl ResolvedLattice {
    /// Validated core parameters at this block's own N and φ.
    pub fn params(&self) -> Result<LatticeParams, quasicryst_core::Error> {
        LatticeParams::new(self.n_sites, self.t, self.lambda, self.b, self.phi)
    }

    /// Validated core parameters with N and φ overridden (sweep cases).
    pub fn params_at(&self, n_sites: usize, phi: f64) -> Result<LatticeParams, quasicryst_core::Error> {
        LatticeParams::new(n_sites, self.t, self.lambda, self.b, phi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCase {
    pub n_sites: usize,
    /// Phase in radians.
    pub phi: f64,
    pub input_site: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Kind {
    Bands {
        phi_start_pi: f64,
        phi_end_pi: f64,
        phi_points: usize,
    },
    Ldos {
        energy_points: usize,
        /// `None` = derive from the spectrum (2% of its width).
        sigma: Option<f64>,
    },
    Evolve {
        input_site: usize,
        z_samples: Vec<f64>,
    },
    SweepPhi { z: f64, cases: Vec<SweepCase> },
    Hbt {
        n_windows: u64,
        seed: u64,
        model: SourceModel,
    },
}

/// A fully-resolved experiment: defaults applied, overrides merged,
/// ranges checked. This is what runs execute and manifests snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub out_dir: PathBuf,
    pub no_timestamp: bool,
    pub lattice: ResolvedLattice,
    pub kind: Kind,
}

impl Resolved {
    pub fn kind_name(&self) -> KindName {
        match self.kind {
            Kind::Bands { .. } => KindName::Bands,
            Kind::Ldos { .. } => KindName::Ldos,
            Kind::Evolve { .. } => KindName::Evolve,
            Kind::SweepPhi { .. } => KindName::SweepPhi,
            Kind::Hbt { .. } => KindName::Hbt,
        }
    }

    /// The file-format image of this resolved config: parsing it back and
    /// resolving again yields an identical `Resolved` (round-trip identity).
    /// Phases are emitted in radians only.
    pub fn to_file(&self) -> ConfigFile {
        let mut file = ConfigFile {
            out_dir: Some(self.out_dir.to_string_lossy().into_owned()),
            lattice: Some(LatticeBlock {
                n_sites: Some(self.lattice.n_sites),
                t: Some(self.lattice.t),
                lambda: Some(self.lattice.lambda),
                b: Some(self.lattice.b),
                phi: Some(self.lattice.phi),
                phi_pi: None,
            }),
            ..ConfigFile::default()
        };
        match &self.kind {
            Kind::Bands {
                phi_start_pi,
                phi_end_pi,
                phi_points,
            } => {
                file.bands = Some(BandsBlock {
                    phi_start_pi: Some(*phi_start_pi),
                    phi_end_pi: Some(*phi_end_pi),
                    phi_points: Some(*phi_points),
                });
            }
            Kind::Ldos {
                energy_points,
                sigma,
            } => {
                file.ldos = Some(LdosBlock {
                    energy_points: Some(*energy_points),
                    sigma: *sigma,
                });
            }
            Kind::Evolve {
                input_site,
                z_samples,
            } => {
                file.evolve = Some(EvolveBlock {
                    input_site: Some(*input_site),
                    z_samples: Some(z_samples.clone()),
                });
            }
            Kind::SweepPhi { z, cases } => {
                file.sweep_phi = Some(SweepPhiBlock {
                    z: Some(*z),
                    cases: Some(
                        cases
                            .iter()
                            .map(|c| SweepCaseBlock {
                                n_sites: c.n_sites,
                                phi: Some(c.phi),
                                phi_pi: None,
                                input_site: c.input_site,
                            })
                            .collect(),
                    ),
                });
            }
            Kind::Hbt {
                n_windows,
                seed,
                model,
            } => {
                file.hbt = Some(HbtBlock {
                    n_windows: Some(*n_windows),
                    seed: Some(*seed),
                    pair_mean: Some(model.pair_mean),
                    pair_statistics: Some(match model.pair_statistics {
                        PairStatistics::Poisson => PairStatisticsName::Poisson,
                        PairStatistics::Thermal => PairStatisticsName::Thermal,
                        PairStatistics::FixedOne => PairStatisticsName::FixedOne,
                    }),
                    herald_efficiency: Some(model.herald_efficiency),
                    signal_transmission: Some(model.signal_transmission),
                    splitter_ratio: Some(model.splitter_ratio),
                    dark_prob_1: Some(model.dark_prob_1),
                    dark_prob_2: Some(model.dark_prob_2),
                    dark_prob_trigger: Some(model.dark_prob_trigger),
                    uncorrelated_trigger: Some(model.uncorrelated_trigger),
                });
            }
        }
        file
    }

    /// The resolved config as a TOML document.
    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_file()).expect("resolved config serializes")
    }

    /// The resolved config as a JSON value (for manifests and data files).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("resolved config serializes")
    }
}

// ---------------------------------------------------------------------
// Resolution: file ⊕ defaults ⊕ CLI flags → Resolved.
// ---------------------------------------------------------------------

pub fn load_file(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    parse_file(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_file(text: &str) -> Result<ConfigFile, CliError> {
    toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
}

fn phase_radians(
    phi: Option<f64>,
    phi_pi: Option<f64>,
    context: &str,
) -> Result<Option<f64>, CliError> {
    match (phi, phi_pi) {
        (Some(_), Some(_)) => Err(CliError::Config(format!(
            "{context}: set exactly one of `phi` and `phi_pi`, not both"
        ))),
        (Some(rad), None) => Ok(Some(rad)),
        (None, Some(pi_units)) => Ok(Some(pi_units * std::f64::consts::PI)),
        (None, None) => Ok(None),
    }
}

fn ensure_finite(value: f64, what: &str) -> Result<f64, CliError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Config(format!("{what} must be finite, got {value}")))
    }
}

/// Merge the config file (if any) with CLI flags and defaults into a
/// fully-validated [`Resolved`] experiment.
pub fn resolve(kind: KindName, args: &CommonArgs) -> Result<Resolved, CliError> {
    let file = match &args.config {
        Some(path) => load_file(path)?,
        None => ConfigFile::default(),
    };
    resolve_with_file(kind, args, &file)
}

pub fn resolve_with_file(
    kind: KindName,
    args: &CommonArgs,
    file: &ConfigFile,
) -> Result<Resolved, CliError> {
    check_single_block(kind, file)?;

    // ---- lattice ----
    let lat = file.lattice.clone().unwrap_or_default();
    let file_phi = phase_radians(lat.phi, lat.phi_pi, "[lattice]")?;
    let cli_phi = phase_radians(args.phi, args.phi_pi, "flags")?;
    let lattice = ResolvedLattice {
        n_sites: args.n_sites.or(lat.n_sites).unwrap_or(100),
        t: ensure_finite(args.t.or(lat.t).unwrap_or(0.5), "t")?,
        lambda: ensure_finite(args.lambda.or(lat.lambda).unwrap_or(0.5), "lambda")?,
        b: ensure_finite(args.b.or(lat.b).unwrap_or(GOLDEN_MEAN), "b")?,
        phi: ensure_finite(
            cli_phi
                .or(file_phi)
                .unwrap_or(DEFAULT_PHI_PI * std::f64::consts::PI),
            "phi",
        )?,
    };
    // Validate ranges early so bad values exit with a config error rather
    // than surfacing mid-run. Sweeps re-validate per case (own N and φ).
    if kind != KindName::SweepPhi && kind != KindName::Hbt {
        lattice.params().map_err(CliError::from)?;
    } else {
        // The shared t, λ, b must still be sane for sweeps; use a dummy
        // 2-site chain at φ = 0 to check just those.
        LatticeParams::new(2, lattice.t, lattice.lambda, lattice.b, 0.0)
            .map_err(CliError::from)?;
    }

    // ---- kind-specific ----
    let resolved_kind = match kind {
        KindName::Bands => {
            let block = file.bands.clone().unwrap_or_default();
            let phi_start_pi = ensure_finite(block.phi_start_pi.unwrap_or(0.0), "phi_start_pi")?;
            let phi_end_pi = ensure_finite(block.phi_end_pi.unwrap_or(2.0), "phi_end_pi")?;
            let phi_points = block.phi_points.unwrap_or(DEFAULT_BANDS_POINTS);
            if phi_points == 0 {
                return Err(CliError::Config("phi_points must be ≥ 1".into()));
            }
            if phi_points > 1 && phi_end_pi <= phi_start_pi {
                return Err(CliError::Config(format!(
                    "phi grid needs phi_end_pi > phi_start_pi, got {phi_start_pi} .. {phi_end_pi}"
                )));
            }
            Kind::Bands {
                phi_start_pi,
                phi_end_pi,
                phi_points,
            }
        }
        KindName::Ldos => {
            let block = file.ldos.clone().unwrap_or_default();
            let energy_points = block.energy_points.unwrap_or(DEFAULT_LDOS_POINTS);
            if energy_points < 2 {
                return Err(CliError::Config("energy_points must be ≥ 2".into()));
            }
            if let Some(sigma) = block.sigma {
                if !(sigma.is_finite() && sigma > 0.0) {
                    return Err(CliError::Config(format!(
                        "sigma must be finite and > 0, got {sigma}"
                    )));
                }
            }
            Kind::Ldos {
                energy_points,
                sigma: block.sigma,
            }
        }
        KindName::Evolve => {
            let block = file.evolve.clone().unwrap_or_default();
            let input_site = args.input_site.or(block.input_site).unwrap_or(1);
            let z_samples = match args.z {
                Some(z) => vec![ensure_finite(z, "z")?],
                None => block.z_samples.unwrap_or_else(|| vec![Z_EXP]),
            };
            for z in &z_samples {
                ensure_finite(*z, "z_samples entry")?;
            }
            Kind::Evolve {
                input_site,
                z_samples,
            }
        }
        KindName::SweepPhi => {
            let block = file.sweep_phi.clone().unwrap_or_default();
            let z = ensure_finite(args.z.or(block.z).unwrap_or(Z_EXP), "z")?;
            let case_blocks = block.cases.unwrap_or_default();
            if case_blocks.is_empty() {
                return Err(CliError::Config(
                    "sweep-phi needs a non-empty [sweep_phi] case list".into(),
                ));
            }
            let mut cases = Vec::with_capacity(case_blocks.len());
            for (i, c) in case_blocks.iter().enumerate() {
                let context = format!("sweep_phi.cases[{i}]");
                let phi = phase_radians(c.phi, c.phi_pi, &context)?.ok_or_else(|| {
                    CliError::Config(format!("{context}: set one of `phi` and `phi_pi`"))
                })?;
                cases.push(SweepCase {
                    n_sites: c.n_sites,
                    phi: ensure_finite(phi, &context)?,
                    input_site: c.input_site,
                });
            }
            Kind::SweepPhi { z, cases }
        }
        KindName::Hbt => {
            let block = file.hbt.clone().unwrap_or_default();
            let defaults = SourceModel::default();
            let model = SourceModel {
                pair_mean: block.pair_mean.unwrap_or(defaults.pair_mean),
                pair_statistics: block
                    .pair_statistics
                    .map(PairStatistics::from)
                    .unwrap_or(defaults.pair_statistics),
                herald_efficiency: block
                    .herald_efficiency
                    .unwrap_or(defaults.herald_efficiency),
                signal_transmission: block
                    .signal_transmission
                    .unwrap_or(defaults.signal_transmission),
                splitter_ratio: block.splitter_ratio.unwrap_or(defaults.splitter_ratio),
                dark_prob_1: block.dark_prob_1.unwrap_or(defaults.dark_prob_1),
                dark_prob_2: block.dark_prob_2.unwrap_or(defaults.dark_prob_2),
                dark_prob_trigger: block
                    .dark_prob_trigger
                    .unwrap_or(defaults.dark_prob_trigger),
                uncorrelated_trigger: block
                    .uncorrelated_trigger
                    .unwrap_or(defaults.uncorrelated_trigger),
            };
            model.validate().map_err(CliError::from)?;
            Kind::Hbt {
                n_windows: block.n_windows.unwrap_or(DEFAULT_HBT_WINDOWS),
                seed: args.seed.or(block.seed).unwrap_or(DEFAULT_HBT_SEED),
                model,
            }
        }
    };

    let out_dir = args
        .out_dir
        .clone()
        .or_else(|| file.out_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));

    Ok(Resolved {
        out_dir,
        no_timestamp: args.no_timestamp,
        lattice,
        kind: resolved_kind,
    })
}

/// A config file may carry at most one experiment block, and it must match
/// the invoked subcommand.
fn check_single_block(kind: KindName, file: &ConfigFile) -> Result<(), CliError> {
    let present: Vec<&str> = [
        ("bands", file.bands.is_some()),
        ("ldos", file.ldos.is_some()),
        ("evolve", file.evolve.is_some()),
        ("sweep_phi", file.sweep_phi.is_some()),
        ("hbt", file.hbt.is_some()),
    ]
    .iter()
    .filter(|(_, p)| *p)
    .map(|(name, _)| *name)
    .collect();
    if present.len() > 1 {
        return Err(CliError::Config(format!(
            "config file must contain at most one experiment block, found [{}]",
            present.join("], [")
        )));
    }
    if let Some(&block) = present.first() {
        let expected = match kind {
            KindName::Bands => "bands",
            KindName::Ldos => "ldos",
            KindName::Evolve => "evolve",
            KindName::SweepPhi => "sweep_phi",
            KindName::Hbt => "hbt",
        };
        if block != expected {
            return Err(CliError::Config(format!(
                "config file has a [{block}] block but the `{}` subcommand was invoked",
                kind.command()
            )));
        }
    }
    Ok(())
}
