//! Monte-Carlo estimation of `H_FO` from the noisy consensus dynamics
//! `dx = -L x dt + dW`, started at `x(0) = 0`.
//!
//! The estimator averages `(1/N) ||x - x̄ 1||^2` over post-burn-in steps and
//! replicas.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::format::round12;
use crate::graph::Graph;
use crate::par::par_map;
use crate::rng::{derive_seed, rng_from_seed};
use crate::spectral::{pseudoinverse_trace_with, spectrum, TraceMethod};

/// Time-stepping scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// `x <- x - dt L x + sqrt(dt) ξ`; biased by `O(dt)`, needs only `L x`.
    EulerMaruyama,
    /// Exact Gaussian transition per Laplacian eigenmode; unbiased, needs the
    /// full eigendecomposition.
    ExactGaussian,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub burn_in_steps: u64,
    pub sample_steps: u64,
    pub replicas: usize,
    pub seed: u64,
    pub scheme: Scheme,
}

/// Default step for Euler–Maruyama, as a fraction of `1/λ_max`.
pub const EULER_DT_FACTOR: f64 = 0.1;
/// Default step for the exact scheme, as a fraction of `1/λ_1`.
pub const EXACT_DT_FACTOR: f64 = 0.5;
/// Burn-in length in units of the slowest relaxation time `1/λ_1`.
pub const BURN_IN_MIXING_TIMES: f64 = 10.0;

impl SimConfig {
    /// Defaults derived from the spectrum: `dt = 0.1/λ_max` for Euler–Maruyama
    /// or `0.5/λ_1` for the exact scheme, and a burn-in of ten mixing times.
    pub fn recommended(
        g: &Graph,
        scheme: Scheme,
        sample_steps: u64,
        replicas: usize,
        seed: u64,
    ) -> Result<SimConfig> {
        let n = g.n();
        if n < 2 {
            return Err(Error::Degenerate { n });
        }
        g.require_connected()?;
        let spec = spectrum(g)?;
        let lambda_1 = spec
            .algebraic_connectivity()
            .ok_or(Error::Degenerate { n })?;
        let dt = match scheme {
            Scheme::EulerMaruyama => EULER_DT_FACTOR / spec.lambda_max(),
            Scheme::ExactGaussian => EXACT_DT_FACTOR / lambda_1,
        };
        Ok(SimConfig {
            dt,
            burn_in_steps: burn_in_steps(dt, lambda_1),
            sample_steps,
            replicas,
            seed,
            scheme,
        })
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if self.replicas == 0 {
            return Err(Error::InvalidParameter(
                "replicas must be at least 1".into(),
            ));
        }
        if self.sample_steps == 0 {
            return Err(Error::InvalidParameter(
                "sample_steps must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Steps covering ten mixing times `10/λ_1`.
pub fn burn_in_steps(dt: f64, lambda_1: f64) -> u64 {
    (BURN_IN_MIXING_TIMES / (lambda_1 * dt)).ceil() as u64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimEstimate {
    #[serde(serialize_with = "ser12")]
    pub h_fo_hat: f64,
    #[serde(serialize_with = "ser12")]
    pub std_error: f64,
    pub config: SimConfig,
    #[serde(serialize_with = "ser12_opt")]
    pub analytic: Option<f64>,
}

impl SimEstimate {
    /// `|h_fo_hat - analytic|` in units of the standard error.
    pub fn z_score(&self) -> Option<f64> {
        self.analytic
            .map(|a| (self.h_fo_hat - a).abs() / self.std_error)
    }
}

fn ser12<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round12(*x))
}

fn ser12_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&round12(*x)),
        None => s.serialize_none(),
    }
}

/// Stationary mean of the Euler–Maruyama estimator: mode `k` has variance
/// `1 / (λ_k (2 - λ_k dt))` instead of `1 / (2 λ_k)`.
pub fn euler_maruyama_stationary(g: &Graph, dt: f64) -> Result<f64> {
    let spec = spectrum(g)?;
    let sum: f64 = spec
        .nonzero()
        .iter()
        .map(|&l| 1.0 / (l * (2.0 - l * dt)))
        .sum();
    Ok(sum / g.n() as f64)
}

/// Runs the configured simulation and returns the pooled estimate.
pub fn simulate_coherence(g: &Graph, cfg: &SimConfig) -> Result<SimEstimate> {
    simulate_with_shift(g, cfg, None)
}

/// A constant added to every coordinate at one step, for testing that the
/// estimator only sees deviations from the mean.
#[derive(Debug, Clone, Copy)]
struct Shift {
    step: u64,
    value: f64,
}

fn simulate_with_shift(g: &Graph, cfg: &SimConfig, shift: Option<Shift>) -> Result<SimEstimate> {
    cfg.validate()?;
    let n = g.n();
    if n < 2 {
        return Err(Error::Degenerate { n });
    }
    g.require_connected()?;
    let modes = match cfg.scheme {
        Scheme::ExactGaussian => Some(Modes::new(g)),
        Scheme::EulerMaruyama => None,
    };
    let analytic = match &modes {
        Some(m) => Some(m.coherence()),
        None => Some(pseudoinverse_trace_with(g, TraceMethod::DeflatedSolve)? / (2.0 * n as f64)),
    };
    let limit = 1e6 * (n as f64 / 4.0).max(1.0);
    let replicas: Vec<usize> = (0..cfg.replicas).collect();
    let runs = par_map(&replicas, |&r| {
        let seed = derive_seed(cfg.seed, &[r as u64]);
        let mut stepper: Box<dyn Stepper> = match &modes {
            Some(m) => Box::new(ExactStepper::new(m, cfg.dt)),
            None => Box::new(EulerStepper::new(g, cfg.dt)),
        };
        run_replica(stepper.as_mut(), cfg, seed, shift, limit)
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let (h_fo_hat, std_error) = pool(&runs);
    Ok(SimEstimate {
        h_fo_hat,
        std_error,
        config: cfg.clone(),
        analytic,
    })
}

/// Per-replica sample sums split into contiguous batches.
struct ReplicaRun {
    batch_means: Vec<f64>,
    mean: f64,
}

const BATCHES_PER_REPLICA: u64 = 20;

fn run_replica(
    stepper: &mut dyn Stepper,
    cfg: &SimConfig,
    seed: u64,
    shift: Option<Shift>,
    limit: f64,
) -> Result<ReplicaRun> {
    let mut rng = rng_from_seed(seed);
    let total = cfg.burn_in_steps + cfg.sample_steps;
    let batches = BATCHES_PER_REPLICA.min(cfg.sample_steps);
    let mut batch_sums = vec![0.0; batches as usize];
    let mut batch_counts = vec![0u64; batches as usize];
    let mut sum = 0.0;
    for step in 0..total {
        stepper.step(&mut rng);
        if let Some(s) = shift {
            if s.step == step {
                stepper.add_constant(s.value);
            }
        }
        let energy = stepper.deviation_energy();
        if !energy.is_finite() || energy > limit {
            return Err(Error::Unstable { step, energy });
        }
        if step >= cfg.burn_in_steps {
            let k = step - cfg.burn_in_steps;
            let b = (k * batches / cfg.sample_steps) as usize;
            batch_sums[b] += energy;
            batch_counts[b] += 1;
            sum += energy;
        }
    }
    let batch_means = batch_sums
        .iter()
        .zip(&batch_counts)
        .map(|(s, &c)| s / c as f64)
        .collect();
    Ok(ReplicaRun {
        batch_means,
        mean: sum / cfg.sample_steps as f64,
    })
}

/// Pooled mean and its standard error: across replica means when there are
/// several replicas, otherwise across within-replica batches.
fn pool(runs: &[ReplicaRun]) -> (f64, f64) {
    let means: Vec<f64> = if runs.len() > 1 {
        runs.iter().map(|r| r.mean).collect()
    } else {
        runs[0].batch_means.clone()
    };
    let k = means.len() as f64;
    let overall = runs.iter().map(|r| r.mean).sum::<f64>() / runs.len() as f64;
    if means.len() < 2 {
        return (overall, f64::NAN);
    }
    let centre = means.iter().sum::<f64>() / k;
    let var = means.iter().map(|m| (m - centre).powi(2)).sum::<f64>() / (k - 1.0);
    (overall, (var / k).sqrt())
}

trait Stepper {
    fn step(&mut self, rng: &mut dyn rand::RngCore);
    fn add_constant(&mut self, c: f64);
    /// `(1/N) ||x - x̄ 1||^2` of the current state.
    fn deviation_energy(&mut self) -> f64;
}

fn deviation_energy(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n
}

struct EulerStepper<'a> {
    g: &'a Graph,
    dt: f64,
    noise: f64,
    x: Vec<f64>,
    next: Vec<f64>,
}

impl<'a> EulerStepper<'a> {
    fn new(g: &'a Graph, dt: f64) -> Self {
        EulerStepper {
            g,
            dt,
            noise: dt.sqrt(),
            x: vec![0.0; g.n()],
            next: vec![0.0; g.n()],
        }
    }
}

impl Stepper for EulerStepper<'_> {
    fn step(&mut self, rng: &mut dyn rand::RngCore) {
        for (v, out) in self.next.iter_mut().enumerate() {
            let nbrs = self.g.neighbors(v);
            let lx = nbrs.len() as f64 * self.x[v] - nbrs.iter().map(|&u| self.x[u]).sum::<f64>();
            let xi: f64 = rng.sample(StandardNormal);
            *out = self.x[v] - self.dt * lx + self.noise * xi;
        }
        std::mem::swap(&mut self.x, &mut self.next);
    }

    fn add_constant(&mut self, c: f64) {
        self.x.iter_mut().for_each(|v| *v += c);
    }

    fn deviation_energy(&mut self) -> f64 {
        deviation_energy(&self.x)
    }
}

/// Orthonormal eigenbasis of `L`, with the zero mode identified.
struct Modes {
    vectors: DMatrix<f64>,
    values: Vec<f64>,
    zero: usize,
}

impl Modes {
    fn new(g: &Graph) -> Modes {
        let eig = SymmetricEigen::new(g.laplacian());
        let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let zero = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("at least two vertices");
        Modes {
            vectors: eig.eigenvectors,
            values,
            zero,
        }
    }

    fn coherence(&self) -> f64 {
        let n = self.values.len();
        let sum: f64 = (0..n)
            .filter(|&k| k != self.zero)
            .map(|k| 1.0 / self.values[k])
            .sum();
        sum / (2.0 * n as f64)
    }
}

struct ExactStepper<'a> {
    modes: &'a Modes,
    decay: Vec<f64>,
    spread: Vec<f64>,
    y: DVector<f64>,
    x: DVector<f64>,
}

impl<'a> ExactStepper<'a> {
    fn new(modes: &'a Modes, dt: f64) -> Self {
        let n = modes.values.len();
        let mut decay = vec![1.0; n];
        let mut spread = vec![dt.sqrt(); n];
        for k in (0..n).filter(|&k| k != modes.zero) {
            let l = modes.values[k];
            decay[k] = (-l * dt).exp();
            spread[k] = (-(-2.0 * l * dt).exp_m1() / (2.0 * l)).sqrt();
        }
        ExactStepper {
            modes,
            decay,
            spread,
            y: DVector::zeros(n),
            x: DVector::zeros(n),
        }
    }
}

impl Stepper for ExactStepper<'_> {
    fn step(&mut self, rng: &mut dyn rand::RngCore) {
        for k in 0..self.y.len() {
            let xi: f64 = rng.sample(StandardNormal);
            self.y[k] = self.decay[k] * self.y[k] + self.spread[k] * xi;
        }
    }

    fn add_constant(&mut self, c: f64) {
        self.x.gemv(1.0, &self.modes.vectors, &self.y, 0.0);
        self.x.add_scalar_mut(c);
        self.y.gemv_tr(1.0, &self.modes.vectors, &self.x, 0.0);
    }

    fn deviation_energy(&mut self) -> f64 {
        self.x.gemv(1.0, &self.modes.vectors, &self.y, 0.0);
        deviation_energy(self.x.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{reference_family, ReferenceFamily};

    fn complete(n: usize) -> Graph {
        reference_family(&ReferenceFamily::Complete { n }).unwrap()
    }

    fn config(
        scheme: Scheme,
        dt: f64,
        burn_in: u64,
        samples: u64,
        replicas: usize,
        seed: u64,
    ) -> SimConfig {
        SimConfig {
            dt,
            burn_in_steps: burn_in,
            sample_steps: samples,
            replicas,
            seed,
            scheme,
        }
    }

    #[test]
    fn recommended_defaults() {
        let g = complete(10);
        let em = SimConfig::recommended(&g, Scheme::EulerMaruyama, 100, 2, 1).unwrap();
        assert!((em.dt - 0.01).abs() < 1e-12);
        assert_eq!(em.burn_in_steps, 100);
        let ex = SimConfig::recommended(&g, Scheme::ExactGaussian, 100, 2, 1).unwrap();
        assert!((ex.dt - 0.05).abs() < 1e-12);
        assert_eq!(ex.burn_in_steps, 20);
        assert!(ex.burn_in_steps as f64 * ex.dt >= 10.0 / 10.0 - 1e-12);
    }

    #[test]
    fn invalid_configs_rejected() {
        let g = complete(4);
        for cfg in [
            config(Scheme::ExactGaussian, 0.0, 1, 1, 1, 0),
            config(Scheme::ExactGaussian, 0.1, 1, 0, 1, 0),
            config(Scheme::ExactGaussian, 0.1, 1, 1, 0, 0),
        ] {
            assert!(matches!(
                simulate_coherence(&g, &cfg),
                Err(Error::InvalidParameter(_))
            ));
        }
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let cfg = config(Scheme::EulerMaruyama, 0.01, 1, 10, 1, 0);
        assert!(matches!(
            simulate_coherence(&split, &cfg),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn euler_blows_up_beyond_stability_limit() {
        let g = complete(10);
        // λ_max = 10, so the stability limit is dt < 0.2
        let cfg = config(Scheme::EulerMaruyama, 0.25, 0, 10_000, 1, 3);
        assert!(matches!(
            simulate_coherence(&g, &cfg),
            Err(Error::Unstable { .. })
        ));
    }

    #[test]
    fn exact_scheme_recovers_complete_graph_value() {
        let g = complete(10);
        let cfg = SimConfig::recommended(&g, Scheme::ExactGaussian, 20_000, 8, 11).unwrap();
        let est = simulate_coherence(&g, &cfg).unwrap();
        let analytic = est.analytic.unwrap();
        assert!((analytic - 0.045).abs() < 1e-14);
        assert!(est.z_score().unwrap() < 3.5, "{est:?}");
        assert!(est.std_error > 0.0);
    }

    #[test]
    fn estimator_ignores_constant_shift() {
        for scheme in [Scheme::EulerMaruyama, Scheme::ExactGaussian] {
            let g = reference_family(&ReferenceFamily::Star { n: 7 }).unwrap();
            let cfg = config(scheme, 0.02, 100, 2_000, 2, 5);
            let plain = simulate_coherence(&g, &cfg).unwrap();
            let shifted = simulate_with_shift(
                &g,
                &cfg,
                Some(Shift {
                    step: 700,
                    value: 123.5,
                }),
            )
            .unwrap();
            assert!(
                (plain.h_fo_hat - shifted.h_fo_hat).abs() <= 1e-9 * plain.h_fo_hat,
                "{scheme:?}: {} vs {}",
                plain.h_fo_hat,
                shifted.h_fo_hat
            );
        }
    }

    #[test]
    fn standard_error_halves_when_samples_quadruple() {
        let g = complete(5);
        let base = SimConfig::recommended(&g, Scheme::ExactGaussian, 2_000, 64, 21).unwrap();
        let small = simulate_coherence(&g, &base).unwrap();
        let large = simulate_coherence(
            &g,
            &SimConfig {
                sample_steps: 8_000,
                ..base
            },
        )
        .unwrap();
        let ratio = large.std_error / small.std_error;
        assert!((0.35..=0.65).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn single_replica_uses_batches() {
        let g = complete(6);
        let cfg = SimConfig::recommended(&g, Scheme::ExactGaussian, 4_000, 1, 2).unwrap();
        let est = simulate_coherence(&g, &cfg).unwrap();
        assert!(est.std_error > 0.0 && est.std_error.is_finite());
        let one = config(Scheme::ExactGaussian, 0.1, 0, 1, 1, 2);
        assert!(simulate_coherence(&g, &one).unwrap().std_error.is_nan());
    }

    #[test]
    fn euler_bias_matches_discrete_stationary_variance() {
        let g = complete(10);
        let dt = 0.1 / 10.0;
        let oracle = euler_maruyama_stationary(&g, dt).unwrap();
        // 9 modes at λ = 10: (9/10) / (10 (2 - 0.1))
        assert!((oracle - 0.9 / 19.0).abs() < 1e-14);
        let coarse =
            simulate_coherence(&g, &config(Scheme::EulerMaruyama, dt, 100, 100_000, 8, 9)).unwrap();
        assert!(
            (coarse.h_fo_hat - oracle).abs() < 3.5 * coarse.std_error,
            "{coarse:?}"
        );
        let fine = simulate_coherence(
            &g,
            &config(Scheme::EulerMaruyama, dt / 2.0, 200, 200_000, 8, 9),
        )
        .unwrap();
        let analytic = 0.045;
        assert!((fine.h_fo_hat - analytic).abs() < (coarse.h_fo_hat - analytic).abs());
    }

    #[test]
    fn replica_spread_matches_reported_error() {
        let g = complete(5);
        let mut estimates = Vec::new();
        let mut errors = Vec::new();
        for seed in 0..16 {
            let cfg =
                SimConfig::recommended(&g, Scheme::ExactGaussian, 1_000, 8, 100 + seed).unwrap();
            let est = simulate_coherence(&g, &cfg).unwrap();
            estimates.push(est.h_fo_hat);
            errors.push(est.std_error);
        }
        let k = estimates.len() as f64;
        let mean = estimates.iter().sum::<f64>() / k;
        let spread = (estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt();
        let reported = errors.iter().sum::<f64>() / k;
        let ratio = spread / reported;
        assert!((0.5..=2.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn estimate_serializes_with_config_echo() {
        let g = complete(3);
        let cfg = config(Scheme::ExactGaussian, 0.1, 10, 50, 2, 4);
        let json = serde_json::to_value(simulate_coherence(&g, &cfg).unwrap()).unwrap();
        assert_eq!(json["config"]["scheme"], "exact_gaussian");
        assert_eq!(json["config"]["replicas"], 2);
        assert!((json["analytic"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-12);
    }
}
