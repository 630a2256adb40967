//! First-order coherence `H_FO = tr(L†) / (2N)` and its graph-statistic bounds.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::format::{round12, sig12};
use crate::graph::Graph;
use crate::spectral::{pseudoinverse_trace_with, TraceMethod};

/// `H_FO` by the eigenvalue route.
pub fn first_order_coherence(g: &Graph) -> Result<f64> {
    first_order_coherence_with(g, TraceMethod::Spectrum)
}

pub fn first_order_coherence_with(g: &Graph, method: TraceMethod) -> Result<f64> {
    let n = g.n();
    Ok(pseudoinverse_trace_with(g, method)? / (2.0 * n as f64))
}

/// Lower bounds from the vertex and edge counts alone, returned as
/// `(exact, asymptotic)`: `N/(4M) - 1/(2M) + 1/(4MN)` and `1/(2ρ) = N/(4M)`.
///
/// The exact form is attained by complete graphs; the asymptotic form only
/// bounds `H_FO` for large `N`.
pub fn coherence_lower_bound(n: usize, m: usize) -> Result<(f64, f64)> {
    if n < 2 || m + 1 < n {
        return Err(Error::InvalidParameter(format!(
            "no connected simple graph has {n} vertices and {m} edges"
        )));
    }
    let (n, m) = (n as f64, m as f64);
    let exact = n / (4.0 * m) - 1.0 / (2.0 * m) + 1.0 / (4.0 * m * n);
    Ok((exact, n / (4.0 * m)))
}

/// `(N-1) μ / (4N)`, attained by trees.
pub fn coherence_upper_bound(g: &Graph) -> Result<f64> {
    let mu = g.average_path_length()?;
    Ok(upper_from_mu(g.n(), mu))
}

fn upper_from_mu(n: usize, mu: f64) -> f64 {
    (n as f64 - 1.0) * mu / (4.0 * n as f64)
}

/// Basic statistics, coherence and both bounds for one connected graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherenceReport {
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "ser12")]
    pub rho: f64,
    #[serde(serialize_with = "ser12")]
    pub mu: f64,
    #[serde(serialize_with = "ser12")]
    pub h_fo: f64,
    #[serde(serialize_with = "ser12")]
    pub lower_asymptotic: f64,
    #[serde(serialize_with = "ser12")]
    pub lower_exact: f64,
    #[serde(serialize_with = "ser12")]
    pub upper: f64,
    /// The simplified `μ/4` form of the upper bound, as usually tabulated.
    #[serde(serialize_with = "ser12")]
    pub mu_over_4: f64,
}

fn ser12<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round12(*x))
}

impl CoherenceReport {
    pub const CSV_HEADER: &'static str =
        "n,m,rho,mu,h_fo,lower_asymptotic,lower_exact,upper,mu_over_4";

    pub fn csv_row(&self) -> String {
        let reals = [
            self.rho,
            self.mu,
            self.h_fo,
            self.lower_asymptotic,
            self.lower_exact,
            self.upper,
            self.mu_over_4,
        ];
        let mut row = format!("{},{}", self.n, self.m);
        for x in reals {
            row.push(',');
            row.push_str(&sig12(x));
        }
        row
    }

    /// `lower_exact <= h_fo <= upper` with absolute slack.
    pub fn bounds_hold(&self, slack: f64) -> bool {
        self.lower_exact <= self.h_fo + slack && self.h_fo <= self.upper + slack
    }
}

/// Assembles a [`CoherenceReport`]. The caller is expected to pass a connected
/// graph, typically the largest connected component.
pub fn analyze(g: &Graph) -> Result<CoherenceReport> {
    analyze_with(g, TraceMethod::Spectrum)
}

pub fn analyze_with(g: &Graph, method: TraceMethod) -> Result<CoherenceReport> {
    let h_fo = first_order_coherence_with(g, method)?;
    let mu = g.average_path_length()?;
    let (lower_exact, lower_asymptotic) = coherence_lower_bound(g.n(), g.m())?;
    Ok(CoherenceReport {
        n: g.n(),
        m: g.m(),
        rho: g.average_degree(),
        mu,
        h_fo,
        lower_asymptotic,
        lower_exact,
        upper: upper_from_mu(g.n(), mu),
        mu_over_4: mu / 4.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{reference_family, ReferenceFamily};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn family(kind: ReferenceFamily) -> Graph {
        reference_family(&kind).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn reference_values() {
        let k10 = family(ReferenceFamily::Complete { n: 10 });
        assert!(close(first_order_coherence(&k10).unwrap(), 0.045, 1e-14));
        let k4 = family(ReferenceFamily::Complete { n: 4 });
        assert!(close(first_order_coherence(&k4).unwrap(), 0.09375, 1e-14));
        let s4 = family(ReferenceFamily::Star { n: 4 });
        assert!(close(first_order_coherence(&s4).unwrap(), 0.28125, 1e-14));
        // spectrum (0, 1 x 18, 20)
        let s20 = family(ReferenceFamily::Star { n: 20 });
        assert!(close(
            first_order_coherence(&s20).unwrap(),
            (18.0 + 1.0 / 20.0) / 40.0,
            1e-13
        ));
        let p3 = family(ReferenceFamily::Path { n: 3 });
        assert!(close(first_order_coherence(&p3).unwrap(), 2.0 / 9.0, 1e-14));
    }

    #[test]
    fn routes_agree() {
        let g = family(ReferenceFamily::RingLattice { n: 60, k: 2 });
        let a = first_order_coherence(&g).unwrap();
        for method in [TraceMethod::DenseInverse, TraceMethod::DeflatedSolve] {
            let b = first_order_coherence_with(&g, method).unwrap();
            assert!((a - b).abs() <= 1e-10 * a);
        }
        let r = crate::spectral::kirchhoff_index(&g).unwrap();
        assert!((a - r / (2.0 * 60.0 * 60.0)).abs() <= 1e-10 * a);
    }

    #[test]
    fn degenerate_and_disconnected() {
        let single = Graph::from_edges(1, []).unwrap();
        assert!(matches!(
            first_order_coherence(&single),
            Err(Error::Degenerate { n: 1 })
        ));
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            first_order_coherence(&split),
            Err(Error::Disconnected { .. })
        ));
        assert!(coherence_upper_bound(&split).is_err());
    }

    #[test]
    fn lower_bound_formula() {
        let (exact, asym) = coherence_lower_bound(34, 78).unwrap();
        assert!(close(exact, 0.10265837104072398, 1e-15));
        assert!(close(asym, 34.0 / 312.0, 1e-15));
        // K_4: 1/(2ρ) = 1/6
        let (exact, asym) = coherence_lower_bound(4, 6).unwrap();
        assert!(close(exact, 0.09375, 1e-15));
        assert!(close(asym, 1.0 / 6.0, 1e-15));
        assert!(coherence_lower_bound(10, 8).is_err());
        assert!(coherence_lower_bound(1, 0).is_err());
        assert!(coherence_lower_bound(10, 9).is_ok());
    }

    #[test]
    fn complete_graph_meets_lower_bound() {
        for n in 3..=50 {
            let g = family(ReferenceFamily::Complete { n });
            let h = first_order_coherence(&g).unwrap();
            let (exact, _) = coherence_lower_bound(n, g.m()).unwrap();
            assert!(close(h, exact, 1e-12), "K_{n}");
        }
    }

    #[test]
    fn star_increases_towards_half() {
        let mut prev = 0.0;
        for n in [3, 5, 10, 50, 200, 1000] {
            let h = first_order_coherence(&family(ReferenceFamily::Star { n })).unwrap();
            assert!(h > prev && h < 0.5);
            prev = h;
        }
        assert!(prev >= 0.49);
    }

    #[test]
    fn upper_bound_examples() {
        let s4 = family(ReferenceFamily::Star { n: 4 });
        assert!(close(coherence_upper_bound(&s4).unwrap(), 0.28125, 1e-15));
        let k10 = family(ReferenceFamily::Complete { n: 10 });
        assert!(close(coherence_upper_bound(&k10).unwrap(), 0.225, 1e-15));
    }

    #[test]
    fn report_for_path_and_k4() {
        let r = analyze(&family(ReferenceFamily::Path { n: 3 })).unwrap();
        assert_eq!((r.n, r.m), (3, 2));
        assert!(close(r.rho, 4.0 / 3.0, 1e-15) && close(r.mu, 4.0 / 3.0, 1e-15));
        assert!(close(r.h_fo, 2.0 / 9.0, 1e-14));
        assert!(close(r.upper, r.h_fo, 1e-14));
        let r = analyze(&family(ReferenceFamily::Complete { n: 4 })).unwrap();
        assert!(close(r.lower_asymptotic, 1.0 / 6.0, 1e-15));
        assert!(close(r.upper, 0.1875, 1e-15));
        assert!(r.lower_asymptotic > r.h_fo);
        assert!(r.bounds_hold(1e-12));
        assert_eq!(
            r.csv_row(),
            "4,6,3,1,0.09375,0.166666666667,0.09375,0.1875,0.25"
        );
        let json = serde_json::to_string(&r).unwrap();
        assert!(
            json.starts_with(r#"{"n":4,"m":6,"rho":3.0,"mu":1.0,"h_fo":0.09375"#),
            "{json}"
        );
    }

    fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn trees_meet_upper_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.random_range(2..120);
            let t = random_tree(n, &mut rng);
            let r = analyze(&t).unwrap();
            assert!((r.h_fo - r.upper).abs() <= 1e-9, "n={n}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn sandwich_on_random_connected_graphs(n in 2usize..60, extra in 0usize..200, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges: Vec<_> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
            for _ in 0..extra {
                edges.push((rng.random_range(0..n), rng.random_range(0..n)));
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let r = analyze(&g).unwrap();
            prop_assert!(r.h_fo > 0.0);
            prop_assert!(r.bounds_hold(1e-9));
        }
    }
}
