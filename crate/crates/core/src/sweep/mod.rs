//! Parameter sweeps over generated instances, with self-checking reports.

mod report;

pub use report::{check_record, emit_report, load_csv, load_json, plot_rows, ReportFormat, SCHEMA_LINE, TIME_COLUMNS};

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::{greedy_packing, kk_cover_process_on, local_partition, ProcessOptions};
use crate::error::{Error, Result};
use crate::exact::{exact_cover, exact_packing, Budget};
use crate::graph::{density, enumerate_targets_with_cap, generate, GeneratorSpec, TargetFamily, TargetKind};
use crate::hardness::{classify_case, find_bipartite_witness, hardness_delta, operating_delta, zero_weight_subgraph, WitnessParams};
use crate::lp::{fractional_cover_with, LpOptions};
use crate::scalar::{ceil_to_u64, floor_to_u64, format_rational, int, Rational};

/// Parameter lists per generator family; random families are crossed with
/// the sweep seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorGrid {
    Complete { n: Vec<usize> },
    CompleteMultipartite { parts: Vec<Vec<usize>> },
    Gnp { n: Vec<usize>, p: Vec<f64> },
    Cycle { n: Vec<usize> },
    Empty { n: Vec<usize> },
    Petersen,
    RandomBipartite { left: Vec<usize>, right: Vec<usize>, p: Vec<f64> },
    Blowup { base: Vec<GeneratorSpec>, t: Vec<usize> },
}

impl GeneratorGrid {
    fn expand(&self, seeds: &[u64]) -> Vec<GeneratorSpec> {
        use GeneratorSpec as S;
        match self {
            Self::Complete { n } => n.iter().map(|&n| S::Complete { n }).collect(),
            Self::CompleteMultipartite { parts } => {
                parts.iter().map(|p| S::CompleteMultipartite { parts: p.clone() }).collect()
            }
            Self::Gnp { n, p } => n
                .iter()
                .flat_map(|&n| p.iter().flat_map(move |&p| seeds.iter().map(move |&seed| S::Gnp { n, p, seed })))
                .collect(),
            Self::Cycle { n } => n.iter().map(|&n| S::Cycle { n }).collect(),
            Self::Empty { n } => n.iter().map(|&n| S::Empty { n }).collect(),
            Self::Petersen => vec![S::Petersen],
            Self::RandomBipartite { left, right, p } => {
                let mut out = Vec::new();
                for &left in left {
                    for &right in right {
                        for &p in p {
                            out.extend(seeds.iter().map(|&seed| S::RandomBipartite { left, right, p, seed }));
                        }
                    }
                }
                out
            }
            Self::Blowup { base, t } => base
                .iter()
                .flat_map(|b| t.iter().map(move |&t| S::Blowup { base: Box::new(b.clone()), t }))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverSet {
    pub exact: bool,
    pub lp: bool,
    pub approx: bool,
    /// Case label and bipartite witness; needs `lp` and the triangle family.
    pub hardness: bool,
}

impl Default for SolverSet {
    fn default() -> Self {
        Self { exact: true, lp: true, approx: true, hardness: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub grid: Vec<GeneratorGrid>,
    #[serde(default = "triangle")]
    pub family: TargetFamily,
    #[serde(default)]
    pub solvers: SolverSet,
    #[serde(default)]
    pub budget: Budget,
    /// LP wall-clock limit per solve.
    #[serde(default)]
    pub lp_millis: Option<u64>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// Directory for emitted reports.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn triangle() -> TargetFamily {
    TargetFamily::TRIANGLE
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

impl SweepConfig {
    pub fn new(grid: Vec<GeneratorGrid>) -> Self {
        Self {
            grid,
            family: TargetFamily::TRIANGLE,
            solvers: SolverSet::default(),
            budget: Budget::default(),
            lp_millis: None,
            seeds: default_seeds(),
            output: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    /// Instances in id order, each with the seed its solvers use.
    pub fn instances(&self) -> Vec<(GeneratorSpec, u64)> {
        let solver_seed = self.seeds.first().copied().unwrap_or(0);
        self.grid
            .iter()
            .flat_map(|g| g.expand(&self.seeds))
            .map(|spec| {
                let seed = match &spec {
                    GeneratorSpec::Gnp { seed, .. } | GeneratorSpec::RandomBipartite { seed, .. } => *seed,
                    _ => solver_seed,
                };
                (spec, seed)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::ConfigInvalid("seed list is empty".into()));
        }
        if self.instances().is_empty() {
            return Err(Error::ConfigInvalid("parameter grid is empty".into()));
        }
        if self.budget.nodes == 0 || self.budget.millis == 0 || self.lp_millis == Some(0) {
            return Err(Error::ConfigInvalid("budgets must be positive".into()));
        }
        if let Some(dir) = &self.output {
            std::fs::create_dir_all(dir).map_err(Error::OutputUnwritable)?;
            let probe = dir.join(".tripack-probe");
            std::fs::write(&probe, b"").map_err(Error::OutputUnwritable)?;
            let _ = std::fs::remove_file(probe);
        }
        Ok(())
    }

    fn lp_options(&self) -> LpOptions {
        LpOptions { time_limit: self.lp_millis.map(Duration::from_millis), ..LpOptions::default() }
    }
}

/// One sweep row. Rationals are `"p/q"` strings so the CSV stays exact;
/// absent values are empty cells.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: usize,
    pub generator: String,
    pub params: String,
    pub family: String,
    pub seed: u64,
    pub status: String,
    pub n: usize,
    pub m: usize,
    pub beta: String,
    pub tau_star: Option<String>,
    pub nu_star: Option<String>,
    pub tau: Option<usize>,
    pub nu: Option<usize>,
    pub tau_lower: usize,
    pub tau_upper: usize,
    pub nu_lower: usize,
    pub nu_upper: Option<usize>,
    pub delta_lo: String,
    pub delta_hi: String,
    pub approx_size: Option<usize>,
    pub certified_ratio: Option<String>,
    pub case_label: Option<String>,
    pub witness_size: Option<usize>,
    pub witness_bound: Option<String>,
    pub witness_meets: Option<bool>,
    pub rho_lo: usize,
    pub rho_hi: usize,
    pub rho_star: Option<String>,
    pub time_lp_ms: u64,
    pub time_exact_ms: u64,
    pub time_approx_ms: u64,
    pub time_total_ms: u64,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<InstanceRecord>> {
    cfg.validate()?;
    let instances = cfg.instances();
    Ok(instances
        .par_iter()
        .enumerate()
        .map(|(id, (spec, seed))| {
            let start = Instant::now();
            let mut rec = InstanceRecord {
                id,
                generator: spec.label(),
                params: serde_json::to_string(spec).expect("specs serialize"),
                family: cfg.family.to_string(),
                seed: *seed,
                ..Default::default()
            };
            match solve_instance(cfg, spec, *seed, &mut rec) {
                Ok(()) => rec.status = "ok".into(),
                Err(e) => rec.status = format!("error: {e}"),
            }
            rec.time_total_ms = start.elapsed().as_millis() as u64;
            rec
        })
        .collect())
}

fn millis_since(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn solve_instance(cfg: &SweepConfig, spec: &GeneratorSpec, seed: u64, rec: &mut InstanceRecord) -> Result<()> {
    let g = generate(spec)?;
    let family = cfg.family;
    let beta = density(&g)?;
    rec.n = g.n();
    rec.m = g.m();
    rec.beta = format_rational(&beta);
    let targets = enumerate_targets_with_cap(&g, family, crate::graph::DEFAULT_TARGET_CAP)?;
    let lp = cfg.lp_options();

    let t = Instant::now();
    let cover = if cfg.solvers.lp { Some(fractional_cover_with(&g, &targets, lp)?) } else { None };
    rec.time_lp_ms = millis_since(t);
    let tau_star: Option<Rational> = cover.as_ref().map(|c| c.value.clone());
    rec.tau_star = tau_star.as_ref().map(format_rational);
    rec.nu_star = cover.as_ref().map(|c| format_rational(&c.dual_packing.value));

    let partition = local_partition(&g, family.partite_parts(), seed);
    let greedy = greedy_packing(&g, &targets, seed);
    let mut tau_upper = partition.removed_count;
    let mut nu_lower = greedy.size;
    let mut nu_upper = tau_star.as_ref().map(|t| floor_to_u64(t) as usize);

    let t = Instant::now();
    if cfg.solvers.exact {
        let c = exact_cover(&g, &targets, cfg.budget);
        tau_upper = tau_upper.min(c.size);
        rec.tau = c.optimal.then_some(c.size);
        let p = exact_packing(&g, &targets, cfg.budget);
        nu_lower = nu_lower.max(p.size);
        if p.optimal {
            rec.nu = Some(p.size);
            nu_upper = Some(p.size);
        }
    }
    rec.time_exact_ms = millis_since(t);

    let t = Instant::now();
    if cfg.solvers.approx {
        let size = if family.kind() == TargetKind::Clique {
            if tau_star.is_some() {
                let opts = ProcessOptions { seed, lp, target_cap: crate::graph::DEFAULT_TARGET_CAP };
                Some(kk_cover_process_on(&g, &targets, opts)?.0.size)
            } else {
                None
            }
        } else {
            Some(partition.removed_count)
        };
        if let Some(size) = size {
            tau_upper = tau_upper.min(size);
            rec.approx_size = Some(size);
            rec.certified_ratio = match &tau_star {
                Some(ts) if *ts > int(0) => Some(format_rational(&(int(size) / ts.clone()))),
                _ => None,
            };
        }
    }
    rec.time_approx_ms = millis_since(t);

    let tau_lower = rec.tau.unwrap_or_else(|| {
        let lp_floor = tau_star.as_ref().map_or(0, |t| ceil_to_u64(t) as usize);
        lp_floor.max(nu_lower)
    });
    if let Some(tau) = rec.tau {
        tau_upper = tau;
    }
    rec.tau_lower = tau_lower;
    rec.tau_upper = tau_upper;
    rec.nu_lower = nu_lower;
    rec.nu_upper = nu_upper;
    rec.delta_lo = format_rational(&hardness_delta(family, tau_upper, g.m()));
    rec.delta_hi = format_rational(&hardness_delta(family, tau_lower, g.m()));
    rec.rho_lo = g.m() - tau_upper;
    rec.rho_hi = g.m() - tau_lower;
    rec.rho_star = tau_star.as_ref().map(|t| format_rational(&(int(g.m()) - t.clone())));

    if cfg.solvers.hardness && family.is_triangle() {
        if let Some(cover) = &cover {
            let delta = operating_delta(&beta);
            rec.case_label = Some(format!("{:?}", classify_case(cover, &beta, &delta).case));
            let h = zero_weight_subgraph(&g, cover);
            if let Ok(w) = find_bipartite_witness(&h, WitnessParams::new(&beta, seed)) {
                rec.witness_size = Some(w.size);
                rec.witness_bound = Some(format_rational(&w.bound));
                rec.witness_meets = Some(w.meets_bound);
            }
        }
    }
    Ok(())
}
