use std::io::Write;

use netcoherence::closed_forms::{
    closed_form_table, pseudofractal_coherence_as_printed, ClosedFormFamily, ExactValue,
};
use netcoherence::coherence::{analyze_with, CoherenceReport};
use netcoherence::format::{round12, sig12};
use netcoherence::rng::derive_seed;
use netcoherence::sim::{self, Scheme, SimConfig, SimEstimate};
use netcoherence::spectral::{resistance_matrix, spectrum};
use netcoherence::sweep::{run_sweep, SweepFamily, SweepPlan, SweepRow};
use netcoherence::{GenSpec, ReferenceFamily};
use serde::Serialize;

use crate::io::{load_graph, open_output};
use crate::manifest::RunManifest;
use crate::{
    AnalyzeArgs, CliError, ClosedFormArgs, ClosedFormFamilyArg, Family, Format, GenerateArgs,
    SchemeArg, SimulateArgs, SweepArgs, SweepFamilyArg, ValidateArgs,
};

type CliResult = Result<(), CliError>;

fn need<T>(value: Option<T>, flag: &str, family: Family) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for family {family:?}")))
}

fn gen_spec(a: &GenerateArgs) -> Result<GenSpec, CliError> {
    let f = a.family;
    let reference = |r: ReferenceFamily| Ok(GenSpec::Reference(r));
    match f {
        Family::Ba => Ok(GenSpec::Ba {
            n: need(a.n, "n", f)?,
            m: need(a.m, "m", f)?,
            seed: a.seed,
            seed_clique: a.seed_clique,
        }),
        Family::Hdran => Ok(GenSpec::Hdran {
            d: need(a.d, "d", f)?,
            n: need(a.n, "n", f)?,
            seed: a.seed,
        }),
        Family::Pseudofractal => Ok(GenSpec::Pseudofractal {
            g: need(a.g, "g", f)?,
        }),
        Family::Clique4 => Ok(GenSpec::Clique4 {
            g: need(a.g, "g", f)?,
        }),
        Family::Path => reference(ReferenceFamily::Path {
            n: need(a.n, "n", f)?,
        }),
        Family::Cycle => reference(ReferenceFamily::Cycle {
            n: need(a.n, "n", f)?,
        }),
        Family::Star => reference(ReferenceFamily::Star {
            n: need(a.n, "n", f)?,
        }),
        Family::Complete => reference(ReferenceFamily::Complete {
            n: need(a.n, "n", f)?,
        }),
        Family::RingLattice => reference(ReferenceFamily::RingLattice {
            n: need(a.n, "n", f)?,
            k: need(a.k, "k", f)?,
        }),
        Family::Torus => reference(ReferenceFamily::Torus {
            d: need(a.d, "d", f)?,
            side: need(a.side, "side", f)?,
        }),
    }
}

pub fn generate(a: GenerateArgs) -> CliResult {
    let mut manifest = RunManifest::start("generate");
    let spec = gen_spec(&a)?;
    let g = spec.generate()?;
    manifest.seeds = spec.seed().into_iter().collect();
    manifest.generator = Some(spec.clone());
    let header = vec![
        spec.to_string(),
        format!("n={} m={}", g.n(), g.m()),
        format!("manifest: {}", RunManifest::path_for(&a.out)),
    ];
    let mut w = open_output(&a.out)?;
    g.write_edge_list(&mut w, &header)?;
    drop(w);
    manifest.finish(&a.out)?;
    Ok(())
}

/// A data record followed by a reference to its manifest.
#[derive(Serialize)]
struct WithManifest<'a, T: Serialize> {
    #[serde(flatten)]
    data: &'a T,
    manifest: String,
}

fn write_json<T: Serialize>(out: &str, data: &T) -> CliResult {
    let record = WithManifest {
        data,
        manifest: RunManifest::path_for(out),
    };
    let mut w = open_output(out)?;
    serde_json::to_writer_pretty(&mut w, &record).map_err(|e| CliError::Data(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn write_csv(out: &str, header: &str, rows: impl IntoIterator<Item = String>) -> CliResult {
    let mut w = open_output(out)?;
    writeln!(w, "# manifest: {}", RunManifest::path_for(out))?;
    writeln!(w, "{header}")?;
    for row in rows {
        writeln!(w, "{row}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn analyze(a: AnalyzeArgs) -> CliResult {
    let mut manifest = RunManifest::start("analyze");
    let loaded = load_graph(&a.input, true)?;
    manifest.input = Some(loaded.info);
    let report = analyze_with(&loaded.graph, a.method.into())?;
    match a.format {
        Format::Json => write_json(&a.out, &report)?,
        Format::Csv => write_csv(&a.out, CoherenceReport::CSV_HEADER, [report.csv_row()])?,
    }
    manifest.finish(&a.out)?;
    Ok(())
}

pub fn sweep(a: SweepArgs) -> CliResult {
    let mut manifest = RunManifest::start("sweep");
    let plan = SweepPlan {
        family: match a.family {
            SweepFamilyArg::Ba => SweepFamily::Ba,
            SweepFamilyArg::Hdran => SweepFamily::Hdran,
        },
        params: a.params,
        sizes: a.sizes,
        replicas: a.replicas,
        seed: a.seed,
        method: a.method.into(),
    };
    manifest.seeds = vec![plan.seed];
    manifest.parameters = serde_json::to_value(&plan).ok();
    let rows = run_sweep(&plan)?;
    write_csv(
        &a.out,
        SweepRow::CSV_HEADER,
        rows.iter().map(SweepRow::csv_row),
    )?;
    manifest.finish(&a.out)?;
    Ok(())
}

#[derive(Serialize)]
struct Exact {
    exact: String,
    value: f64,
}

impl From<&ExactValue> for Exact {
    fn from(v: &ExactValue) -> Exact {
        Exact {
            exact: v.to_string(),
            value: round12(v.float_view()),
        }
    }
}

#[derive(Serialize)]
struct ClosedFormRowOut {
    g: u32,
    n: u128,
    m: u128,
    kirchhoff: Exact,
    multiplicative: Option<Exact>,
    additive: Option<Exact>,
    h_fo: Exact,
    limit: Exact,
    gap_to_limit: Exact,
    #[serde(skip_serializing_if = "Option::is_none")]
    h_fo_as_printed: Option<Exact>,
}

#[derive(Serialize)]
struct ClosedFormTable {
    family: &'static str,
    rows: Vec<ClosedFormRowOut>,
}

pub fn closed_form(a: ClosedFormArgs) -> CliResult {
    let manifest = RunManifest::start("closed-form");
    let (family, name) = match a.family {
        ClosedFormFamilyArg::Pseudofractal => (ClosedFormFamily::Pseudofractal, "pseudofractal"),
        ClosedFormFamilyArg::Clique4 => (ClosedFormFamily::Clique4, "clique4"),
    };
    if a.as_printed && family != ClosedFormFamily::Pseudofractal {
        return Err(CliError::Usage(
            "--as-printed applies to the pseudofractal family only".into(),
        ));
    }
    let rows = closed_form_table(family, a.g_max);
    let printed = |g: u32| a.as_printed.then(|| pseudofractal_coherence_as_printed(g));
    match a.format {
        Format::Json => {
            let table = ClosedFormTable {
                family: name,
                rows: rows
                    .iter()
                    .map(|r| ClosedFormRowOut {
                        g: r.g,
                        n: r.n,
                        m: r.m,
                        kirchhoff: (&r.kirchhoff).into(),
                        multiplicative: r.multiplicative.as_ref().map(Exact::from),
                        additive: r.additive.as_ref().map(Exact::from),
                        h_fo: (&r.coherence).into(),
                        limit: (&r.limit).into(),
                        gap_to_limit: (&r.gap_to_limit).into(),
                        h_fo_as_printed: printed(r.g).as_ref().map(Exact::from),
                    })
                    .collect(),
            };
            write_json(&a.out, &table)?;
        }
        Format::Csv => {
            let mut header =
                "g,n,m,kirchhoff,multiplicative,additive,h_fo,limit,gap_to_limit,h_fo_exact"
                    .to_string();
            if a.as_printed {
                header.push_str(",h_fo_as_printed");
            }
            let opt = |v: &Option<ExactValue>| {
                v.as_ref().map_or(String::new(), |v| sig12(v.float_view()))
            };
            let lines = rows.iter().map(|r| {
                let mut line = format!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.g,
                    r.n,
                    r.m,
                    sig12(r.kirchhoff.float_view()),
                    opt(&r.multiplicative),
                    opt(&r.additive),
                    sig12(r.coherence.float_view()),
                    sig12(r.limit.float_view()),
                    sig12(r.gap_to_limit.float_view()),
                    r.coherence
                );
                if let Some(p) = printed(r.g) {
                    line.push(',');
                    line.push_str(&sig12(p.float_view()));
                }
                line
            });
            write_csv(&a.out, &header, lines)?;
        }
    }
    manifest.finish(&a.out)?;
    Ok(())
}

#[derive(Serialize)]
struct GraphSummary {
    n: usize,
    m: usize,
    source: Vec<String>,
}

#[derive(Serialize)]
struct SimulationOut {
    #[serde(flatten)]
    estimate: SimEstimate,
    graph: GraphSummary,
}

pub fn simulate(a: SimulateArgs) -> CliResult {
    let mut manifest = RunManifest::start("simulate");
    let loaded = load_graph(&a.input, false)?;
    let g = &loaded.graph;
    if g.n() < 2 {
        return Err(netcoherence::Error::Degenerate { n: g.n() }.into());
    }
    g.require_connected()?;
    let scheme = match a.scheme {
        SchemeArg::ExactGaussian => Scheme::ExactGaussian,
        SchemeArg::EulerMaruyama => Scheme::EulerMaruyama,
    };
    let spec = spectrum(g)?;
    let lambda_1 = spec
        .algebraic_connectivity()
        .ok_or(netcoherence::Error::Degenerate { n: g.n() })?;
    let dt = a.dt.unwrap_or(match scheme {
        Scheme::EulerMaruyama => sim::EULER_DT_FACTOR / spec.lambda_max(),
        Scheme::ExactGaussian => sim::EXACT_DT_FACTOR / lambda_1,
    });
    let cfg = SimConfig {
        dt,
        burn_in_steps: a
            .burn_in_steps
            .unwrap_or_else(|| sim::burn_in_steps(dt, lambda_1)),
        sample_steps: a.sample_steps,
        replicas: a.replicas,
        seed: a.seed,
        scheme,
    };
    manifest.seeds = vec![cfg.seed];
    manifest.parameters = serde_json::to_value(&cfg).ok();
    let estimate = sim::simulate_coherence(g, &cfg)?;
    let out = SimulationOut {
        estimate,
        graph: GraphSummary {
            n: g.n(),
            m: g.m(),
            source: loaded.info.header.clone(),
        },
    };
    manifest.input = Some(loaded.info);
    write_json(&a.out, &out)?;
    manifest.finish(&a.out)?;
    Ok(())
}

/// Residuals are compared against this absolute tolerance.
const VALIDATE_TOLERANCE: f64 = 1e-8;
/// Random vertex pairs checked against the sum rule, on top of every edge.
const SUM_RULE_RANDOM_PAIRS: u64 = 200;

#[derive(Serialize)]
struct Diagnostics {
    n: usize,
    m: usize,
    foster_residual: f64,
    sum_rule_max_residual: f64,
    sum_rule_pairs_checked: usize,
    /// `|Σλ - 2M| / 2M`.
    spectrum_trace_residual: f64,
    /// Relative gap between the eigenvalue and Kirchhoff routes to `H_FO`.
    route_residual: f64,
    h_fo: f64,
    lower_exact: f64,
    upper: f64,
    bounds_hold: bool,
    is_tree: bool,
    upper_bound_equality: bool,
    lower_bound_equality: bool,
    tolerance: f64,
    passed: bool,
}

pub fn validate(a: ValidateArgs) -> CliResult {
    let mut manifest = RunManifest::start("validate");
    let loaded = load_graph(&a.input, false)?;
    let g = &loaded.graph;
    manifest.input = Some(loaded.info.clone());
    manifest.seeds = vec![a.seed];
    let omega = resistance_matrix(g)?;
    let n = g.n();

    let mut pairs: Vec<(usize, usize)> = g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
    for k in 0..SUM_RULE_RANDOM_PAIRS {
        let i = (derive_seed(a.seed, &[k, 0]) % n as u64) as usize;
        let j = (derive_seed(a.seed, &[k, 1]) % n as u64) as usize;
        if i != j {
            pairs.push((i, j));
        }
    }
    let mut sum_rule: f64 = 0.0;
    for &(i, j) in &pairs {
        sum_rule = sum_rule.max(omega.sum_rule_residual(g, i, j)?);
    }

    let spec = spectrum(g)?;
    let two_m = 2.0 * g.m() as f64;
    let trace_residual = (spec.eigenvalues().iter().sum::<f64>() - two_m).abs() / two_m;
    let report = analyze_with(g, netcoherence::TraceMethod::Spectrum)?;
    let h_kirchhoff = omega.kirchhoff_index() / (2.0 * (n * n) as f64);
    let route_residual = (report.h_fo - h_kirchhoff).abs() / report.h_fo;
    let foster = omega.foster_residual(g);

    let passed = foster <= VALIDATE_TOLERANCE
        && sum_rule <= VALIDATE_TOLERANCE
        && trace_residual <= VALIDATE_TOLERANCE
        && route_residual <= VALIDATE_TOLERANCE
        && report.bounds_hold(1e-9);
    let diagnostics = Diagnostics {
        n,
        m: g.m(),
        foster_residual: foster,
        sum_rule_max_residual: sum_rule,
        sum_rule_pairs_checked: pairs.len(),
        spectrum_trace_residual: trace_residual,
        route_residual,
        h_fo: round12(report.h_fo),
        lower_exact: round12(report.lower_exact),
        upper: round12(report.upper),
        bounds_hold: report.bounds_hold(1e-9),
        is_tree: g.m() + 1 == n,
        upper_bound_equality: (report.h_fo - report.upper).abs() <= 1e-9,
        lower_bound_equality: (report.h_fo - report.lower_exact).abs() <= 1e-9,
        tolerance: VALIDATE_TOLERANCE,
        passed,
    };
    write_json(&a.out, &diagnostics)?;
    manifest.finish(&a.out)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Numerical(
            "validation residuals exceed tolerance".into(),
        ))
    }
}
