//! Replicated coherence sweeps over the random growth models.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coherence::first_order_coherence_with;
use crate::error::{Error, Result};
use crate::format::sig12;
use crate::generators::GenSpec;
use crate::par::par_map;
use crate::rng::derive_seed;
use crate::spectral::TraceMethod;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    /// Preferential attachment; the swept parameter is `m`.
    Ba,
    /// Random Apollonian network; the swept parameter is `d`.
    Hdran,
}

impl SweepFamily {
    pub fn name(self) -> &'static str {
        match self {
            SweepFamily::Ba => "ba",
            SweepFamily::Hdran => "hdran",
        }
    }

    pub fn param_name(self) -> &'static str {
        match self {
            SweepFamily::Ba => "m",
            SweepFamily::Hdran => "d",
        }
    }

    fn spec(self, param: usize, n: usize, seed: u64) -> GenSpec {
        match self {
            SweepFamily::Ba => GenSpec::Ba {
                n,
                m: param,
                seed,
                seed_clique: crate::generators::BA_SEED_CLIQUE,
            },
            SweepFamily::Hdran => GenSpec::Hdran { d: param, n, seed },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub family: SweepFamily,
    pub params: Vec<usize>,
    pub sizes: Vec<usize>,
    pub replicas: usize,
    pub seed: u64,
    pub method: TraceMethod,
}

/// One long-format output row: a single replica at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: &'static str,
    pub param: &'static str,
    pub value: usize,
    pub n: usize,
    pub replica: usize,
    pub seed: u64,
    pub h_fo: f64,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "family,param,value,n,replica,seed,h_fo";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.family,
            self.param,
            self.value,
            self.n,
            self.replica,
            self.seed,
            sig12(self.h_fo)
        )
    }
}

/// Seed of one replica, derived from the plan seed and the grid coordinates,
/// so every row is reproducible on its own.
pub fn replica_seed(seed: u64, param: usize, n: usize, replica: usize) -> u64 {
    derive_seed(seed, &[param as u64, n as u64, replica as u64])
}

/// Runs every `(param, size, replica)` combination; rows come back in grid
/// order (param, then size, then replica) regardless of scheduling.
pub fn run_sweep(plan: &SweepPlan) -> Result<Vec<SweepRow>> {
    if plan.params.is_empty() || plan.sizes.is_empty() || plan.replicas == 0 {
        return Err(Error::InvalidArgument(
            "sweep needs at least one parameter, one size and one replica".into(),
        ));
    }
    let mut jobs = Vec::new();
    for &param in &plan.params {
        for &n in &plan.sizes {
            for replica in 0..plan.replicas {
                jobs.push((param, n, replica));
            }
        }
    }
    // fail fast on bad parameters before spending time on the grid
    for &param in &plan.params {
        for &n in &plan.sizes {
            plan.family.spec(param, n, 0).generate()?;
        }
    }
    par_map(&jobs, |&(param, n, replica)| {
        let seed = replica_seed(plan.seed, param, n, replica);
        let g = plan.family.spec(param, n, seed).generate()?;
        let h_fo = first_order_coherence_with(&g, plan.method)?;
        Ok(SweepRow {
            family: plan.family.name(),
            param: plan.family.param_name(),
            value: param,
            n,
            replica,
            seed,
            h_fo,
        })
    })
    .into_iter()
    .collect()
}

/// Replica means keyed by `(param value, n)`.
pub fn point_means(rows: &[SweepRow]) -> BTreeMap<(usize, usize), f64> {
    let mut acc: BTreeMap<(usize, usize), (f64, usize)> = BTreeMap::new();
    for row in rows {
        let e = acc.entry((row.value, row.n)).or_default();
        e.0 += row.h_fo;
        e.1 += 1;
    }
    acc.into_iter()
        .map(|(k, (s, c))| (k, s / c as f64))
        .collect()
}
