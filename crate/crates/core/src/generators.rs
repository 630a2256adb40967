//! Network families: preferential attachment (BA), high-dimensional random
//! Apollonian networks, the pseudofractal web `F_g`, the 4-clique motif
//! network `T_g`, and simple reference lattices.
//!
//! The deterministic families use a canonical numbering: the seed clique gets
//! ids `0..k`, then each iteration appends new vertices in the order of their
//! parent edges, scanned as sorted `(min, max)` pairs. This keeps ids of
//! `F_{g-1}` / `T_{g-1}` stable inside `F_g` / `T_g`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from_seed;

/// Largest vertex count any generator will build.
pub const MAX_VERTICES: u128 = 10_000_000;

/// Size of the complete graph BA growth starts from by default.
pub const BA_SEED_CLIQUE: usize = 8;

fn check_capacity(requested: u128) -> Result<()> {
    if requested > MAX_VERTICES {
        Err(Error::Capacity {
            requested,
            limit: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    edges
}

/// Barabási-Albert growth from `K_8`.
pub fn ba_network(n: usize, m: usize, seed: u64) -> Result<Graph> {
    ba_network_from_clique(n, m, BA_SEED_CLIQUE, seed)
}

/// Barabási-Albert growth from `K_clique`: every new vertex links to `m`
/// distinct existing vertices, each drawn with probability proportional to
/// degree; a draw that repeats an already chosen vertex is discarded.
pub fn ba_network_from_clique(n: usize, m: usize, clique: usize, seed: u64) -> Result<Graph> {
    if clique < 2 {
        return Err(Error::InvalidParameter(format!(
            "seed clique must have at least 2 vertices, got {clique}"
        )));
    }
    if m == 0 || m > clique {
        return Err(Error::InvalidParameter(format!(
            "m must be in 1..={clique}, got {m}"
        )));
    }
    if n < clique {
        return Err(Error::InvalidParameter(format!(
            "n must be at least {clique}, got {n}"
        )));
    }
    check_capacity(n as u128)?;

    let mut edges = complete_edges(clique);
    edges.reserve(m * (n - clique));
    // every vertex appears once per incident edge
    let mut pool: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    pool.reserve(2 * m * (n - clique));
    let mut rng = rng_from_seed(seed);
    let mut chosen = Vec::with_capacity(m);
    for v in clique..n {
        chosen.clear();
        while chosen.len() < m {
            let t = pool[rng.random_range(0..pool.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            pool.push(t);
            pool.push(v);
        }
    }
    Graph::from_edges(n, edges)
}

/// `d`-dimensional random Apollonian network grown from `K_{d+2}`.
///
/// Every `(d+1)`-clique can be chosen once. Each step picks an active clique
/// uniformly, joins a new vertex to all of its members, retires it, and adds
/// the `d+1` cliques formed by the new vertex with `d` of those members.
pub fn hdran(d: usize, n: usize, seed: u64) -> Result<Graph> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "dimension d must be at least 2, got {d}"
        )));
    }
    if n < d + 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least d + 2 = {}, got {n}",
            d + 2
        )));
    }
    check_capacity(n as u128)?;

    let k = d + 1;
    let mut edges = complete_edges(d + 2);
    edges.reserve(k * (n - d - 2));
    // active cliques stored flat, k ids each
    let mut active: Vec<usize> = Vec::with_capacity(k * (1 + d * (n - d - 2) + d + 2));
    for skip in 0..d + 2 {
        active.extend((0..d + 2).filter(|&u| u != skip));
    }
    let mut rng = rng_from_seed(seed);
    let mut members = vec![0; k];
    for v in d + 2..n {
        let cliques = active.len() / k;
        assert!(cliques > 0, "active clique set exhausted");
        let pick = rng.random_range(0..cliques);
        members.copy_from_slice(&active[pick * k..(pick + 1) * k]);
        // swap-remove the chosen clique
        let last = cliques - 1;
        if pick != last {
            let (head, tail) = active.split_at_mut(last * k);
            head[pick * k..(pick + 1) * k].copy_from_slice(&tail[..k]);
        }
        active.truncate(last * k);
        for replace in 0..k {
            edges.push((members[replace], v));
            active.extend(
                members
                    .iter()
                    .enumerate()
                    .map(|(p, &u)| if p == replace { v } else { u }),
            );
        }
    }
    Graph::from_edges(n, edges)
}

/// `N_g = (3^{g+1} + 3) / 2` for the pseudofractal web.
pub fn pseudofractal_order(g: u32) -> u128 {
    (3u128.pow(g + 1) + 3) / 2
}

/// `M_g = 3^{g+1}` for the pseudofractal web.
pub fn pseudofractal_size(g: u32) -> u128 {
    3u128.pow(g + 1)
}

/// `N_g = (2/5)(6^{g+1} + 4)` for the 4-clique motif network.
pub fn clique4_order(g: u32) -> u128 {
    2 * (6u128.pow(g + 1) + 4) / 5
}

/// `M_g = 6^{g+1}` for the 4-clique motif network.
pub fn clique4_size(g: u32) -> u128 {
    6u128.pow(g + 1)
}

fn order_checked(g: u32, order: fn(u32) -> u128) -> Result<()> {
    if g > 40 {
        return Err(Error::Capacity {
            requested: u128::MAX,
            limit: MAX_VERTICES,
        });
    }
    check_capacity(order(g))
}

/// Pseudofractal scale-free web `F_g`: start from a triangle; every
/// iteration adds, for each existing edge, a vertex joined to both ends.
pub fn pseudofractal(g: u32) -> Result<Graph> {
    order_checked(g, pseudofractal_order)?;
    let mut edges = complete_edges(3);
    let mut n = 3;
    for _ in 0..g {
        // `edges` is kept sorted by (min, max)
        let mut grown = Vec::with_capacity(3 * edges.len());
        grown.extend_from_slice(&edges);
        for &(u, v) in &edges {
            grown.push((u, n));
            grown.push((v, n));
            n += 1;
        }
        grown.sort_unstable();
        edges = grown;
    }
    Graph::from_edges(n, edges)
}

/// Parent edges of the vertices added by one 4-clique growth step.
///
/// New vertices `old_n + 2t` and `old_n + 2t + 1` are twins hanging off
/// `parents[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clique4Growth {
    pub old_n: usize,
    pub parents: Vec<(usize, usize)>,
}

impl Clique4Growth {
    pub fn new_n(&self) -> usize {
        self.old_n + 2 * self.parents.len()
    }

    /// Parent edge of a new vertex, `None` for old ones.
    pub fn parent_of(&self, v: usize) -> Option<(usize, usize)> {
        v.checked_sub(self.old_n)
            .and_then(|t| self.parents.get(t / 2).copied())
    }

    pub fn twin_of(&self, v: usize) -> Option<usize> {
        self.parent_of(v)
            .map(|_| self.old_n + ((v - self.old_n) ^ 1))
    }
}

/// One 4-clique growth step: for each edge `(u, v)` add twins `a, b` with
/// edges `u-a, v-a, u-b, v-b, a-b`.
pub fn clique4_step(prev: &Graph) -> (Graph, Clique4Growth) {
    let old_n = prev.n();
    let parents: Vec<(usize, usize)> = prev.edges().collect();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(6 * parents.len());
    edges.extend(parents.iter().copied());
    for (t, &(u, v)) in parents.iter().enumerate() {
        let a = old_n + 2 * t;
        let b = a + 1;
        edges.extend([(u, a), (v, a), (u, b), (v, b), (a, b)]);
    }
    let growth = Clique4Growth { old_n, parents };
    let graph = Graph::from_edges(growth.new_n(), edges).expect("ids in range");
    (graph, growth)
}

/// 4-clique motif network `T_g`, grown from `K_4`.
pub fn clique4_motif(g: u32) -> Result<Graph> {
    order_checked(g, clique4_order)?;
    let mut graph = Graph::from_edges(4, complete_edges(4))?;
    for _ in 0..g {
        graph = clique4_step(&graph).0;
    }
    Ok(graph)
}

/// Regular families with known coherence scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ReferenceFamily {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// Hub `0` joined to leaves `1..n`.
    Star {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Cycle where each vertex also links to its `k/2` nearest neighbours on
    /// each side.
    RingLattice {
        n: usize,
        k: usize,
    },
    /// Periodic `d`-dimensional grid with `side^d` vertices.
    Torus {
        d: usize,
        side: usize,
    },
}

pub fn reference_family(kind: &ReferenceFamily) -> Result<Graph> {
    let bad = |msg: String| Err(Error::InvalidParameter(msg));
    match *kind {
        ReferenceFamily::Path { n } => {
            if n < 2 {
                return bad(format!("path needs n >= 2, got {n}"));
            }
            check_capacity(n as u128)?;
            Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
        }
        ReferenceFamily::Cycle { n } => {
            if n < 3 {
                return bad(format!("cycle needs n >= 3, got {n}"));
            }
            check_capacity(n as u128)?;
            Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        ReferenceFamily::Star { n } => {
            if n < 2 {
                return bad(format!("star needs n >= 2, got {n}"));
            }
            check_capacity(n as u128)?;
            Graph::from_edges(n, (1..n).map(|v| (0, v)))
        }
        ReferenceFamily::Complete { n } => {
            if n < 1 {
                return bad("complete graph needs n >= 1".into());
            }
            check_capacity(n as u128)?;
            Graph::from_edges(n, complete_edges(n))
        }
        ReferenceFamily::RingLattice { n, k } => {
            if k < 2 || k % 2 != 0 || k >= n {
                return bad(format!(
                    "ring lattice needs even k with 2 <= k < n, got n={n} k={k}"
                ));
            }
            check_capacity(n as u128)?;
            let edges = (0..n).flat_map(|v| (1..=k / 2).map(move |s| (v, (v + s) % n)));
            Graph::from_edges(n, edges.collect::<Vec<_>>())
        }
        ReferenceFamily::Torus { d, side } => {
            if d < 1 || side < 3 {
                return bad(format!(
                    "torus needs d >= 1 and side >= 3, got d={d} side={side}"
                ));
            }
            let n = (side as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
            check_capacity(n)?;
            let n = n as usize;
            let mut edges = Vec::with_capacity(n * d);
            for v in 0..n {
                let mut stride = 1;
                for _ in 0..d {
                    let coord = (v / stride) % side;
                    let next = if coord + 1 == side {
                        v - coord * stride
                    } else {
                        v + stride
                    };
                    edges.push((v, next));
                    stride *= side;
                }
            }
            Graph::from_edges(n, edges)
        }
    }
}

/// A fully specified generator invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GenSpec {
    Ba {
        n: usize,
        m: usize,
        seed: u64,
        #[serde(default = "default_ba_clique")]
        seed_clique: usize,
    },
    Hdran {
        d: usize,
        n: usize,
        seed: u64,
    },
    Pseudofractal {
        g: u32,
    },
    Clique4 {
        g: u32,
    },
    #[serde(untagged)]
    Reference(ReferenceFamily),
}

fn default_ba_clique() -> usize {
    BA_SEED_CLIQUE
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GenSpec::Ba {
                n,
                m,
                seed,
                seed_clique,
            } => ba_network_from_clique(n, m, seed_clique, seed),
            GenSpec::Hdran { d, n, seed } => hdran(d, n, seed),
            GenSpec::Pseudofractal { g } => pseudofractal(g),
            GenSpec::Clique4 { g } => clique4_motif(g),
            GenSpec::Reference(kind) => reference_family(&kind),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            GenSpec::Ba { .. } => "ba",
            GenSpec::Hdran { .. } => "hdran",
            GenSpec::Pseudofractal { .. } => "pseudofractal",
            GenSpec::Clique4 { .. } => "clique4",
            GenSpec::Reference(kind) => match kind {
                ReferenceFamily::Path { .. } => "path",
                ReferenceFamily::Cycle { .. } => "cycle",
                ReferenceFamily::Star { .. } => "star",
                ReferenceFamily::Complete { .. } => "complete",
                ReferenceFamily::RingLattice { .. } => "ring-lattice",
                ReferenceFamily::Torus { .. } => "torus",
            },
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            GenSpec::Ba { seed, .. } | GenSpec::Hdran { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family={}", self.family())?;
        match *self {
            GenSpec::Ba {
                n,
                m,
                seed,
                seed_clique,
            } => {
                write!(f, " n={n} m={m} seed={seed} seed_clique={seed_clique}")
            }
            GenSpec::Hdran { d, n, seed } => write!(f, " d={d} n={n} seed={seed}"),
            GenSpec::Pseudofractal { g } | GenSpec::Clique4 { g } => write!(f, " g={g}"),
            GenSpec::Reference(kind) => match kind {
                ReferenceFamily::Path { n }
                | ReferenceFamily::Cycle { n }
                | ReferenceFamily::Star { n }
                | ReferenceFamily::Complete { n } => write!(f, " n={n}"),
                ReferenceFamily::RingLattice { n, k } => write!(f, " n={n} k={k}"),
                ReferenceFamily::Torus { d, side } => write!(f, " d={d} side={side}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
        g.edges().collect()
    }

    #[test]
    fn ba_without_growth_is_k8() {
        for (m, seed) in [(1, 0), (5, 99), (8, 3)] {
            let g = ba_network(8, m, seed).unwrap();
            assert_eq!((g.n(), g.m()), (8, 28));
        }
    }

    #[test]
    fn ba_single_step() {
        let g = ba_network(9, 2, 1).unwrap();
        assert_eq!(g.m(), 30);
        assert_eq!(g.degree(8), 2);
    }

    #[test]
    fn ba_structure_at_scale() {
        let g = ba_network(1024, 4, 7).unwrap();
        assert_eq!(g.m(), 4092);
        assert!(g.degrees().iter().all(|&d| d >= 4));
        assert!(g.is_connected());
        let hist = g.degree_distribution();
        let max_degree = *hist.keys().last().unwrap();
        assert!(max_degree > 10 * 4, "max degree {max_degree}");
    }

    #[test]
    fn ba_parameter_errors() {
        assert!(matches!(
            ba_network(100, 9, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            ba_network(100, 0, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            ba_network(7, 2, 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn stochastic_generators_are_reproducible() {
        assert_eq!(
            ba_network(300, 3, 42).unwrap(),
            ba_network(300, 3, 42).unwrap()
        );
        assert_ne!(
            edge_set(&ba_network(300, 3, 42).unwrap()),
            edge_set(&ba_network(300, 3, 43).unwrap())
        );
        assert_eq!(hdran(3, 300, 42).unwrap(), hdran(3, 300, 42).unwrap());
        assert_ne!(
            edge_set(&hdran(3, 300, 42).unwrap()),
            edge_set(&hdran(3, 300, 43).unwrap())
        );
    }

    #[test]
    fn hdran_small_cases() {
        let g = hdran(2, 4, 0).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        let g = hdran(2, 5, 0).unwrap();
        assert_eq!((g.n(), g.m()), (5, 9));
        assert_eq!(g.degree(4), 3);
        assert!(matches!(hdran(1, 10, 0), Err(Error::InvalidParameter(_))));
        assert!(matches!(hdran(3, 4, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn hdran_average_degree_tends_to_2d_plus_2() {
        let d = 3;
        let n = 2000;
        let g = hdran(d, n, 1).unwrap();
        let expected_m = (d + 2) * (d + 1) / 2 + (d + 1) * (n - d - 2);
        assert_eq!(g.m(), expected_m);
        assert!(g.is_connected());
        let rho = g.average_degree();
        assert!((rho - 8.0).abs() <= 0.05 * 8.0, "rho = {rho}");
    }

    #[test]
    fn hdran_new_vertices_close_cliques() {
        // each new vertex is joined to a (d+1)-clique, so its d+1 neighbours
        // at arrival are pairwise adjacent
        let d = 2;
        let g = hdran(d, 60, 9).unwrap();
        for v in d + 2..60 {
            let early: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u < v).collect();
            assert_eq!(early.len(), d + 1);
            for (i, &a) in early.iter().enumerate() {
                for &b in &early[i + 1..] {
                    assert!(g.has_edge(a, b));
                }
            }
        }
    }

    #[test]
    fn pseudofractal_small_cases() {
        let f0 = pseudofractal(0).unwrap();
        assert_eq!(
            f0,
            reference_family(&ReferenceFamily::Complete { n: 3 }).unwrap()
        );
        let f1 = pseudofractal(1).unwrap();
        assert_eq!((f1.n(), f1.m()), (6, 9));
        let f3 = pseudofractal(3).unwrap();
        assert_eq!((f3.n(), f3.m()), (42, 81));
        // parent edges (0,1), (0,2), (1,2) in that order
        assert_eq!(f1.neighbors(3), &[0, 1]);
        assert_eq!(f1.neighbors(4), &[0, 2]);
        assert_eq!(f1.neighbors(5), &[1, 2]);
    }

    #[test]
    fn pseudofractal_counts_and_degrees() {
        for g in 0..=8 {
            let f = pseudofractal(g).unwrap();
            assert_eq!(f.n() as u128, pseudofractal_order(g));
            assert_eq!(f.m() as u128, pseudofractal_size(g));
            assert!(f.is_connected());
        }
        for g in 0..=5u32 {
            let f = pseudofractal(g).unwrap();
            for s in 0..=g {
                let lo = if s == 0 {
                    0
                } else {
                    pseudofractal_order(s - 1) as usize
                };
                let hi = pseudofractal_order(s) as usize;
                for v in lo..hi {
                    assert_eq!(f.degree(v), 1 << (g - s + 1), "g={g} s={s} v={v}");
                }
            }
        }
    }

    #[test]
    fn clique4_small_cases() {
        assert_eq!(
            clique4_motif(0).unwrap(),
            reference_family(&ReferenceFamily::Complete { n: 4 }).unwrap()
        );
        let t1 = clique4_motif(1).unwrap();
        assert_eq!((t1.n(), t1.m()), (16, 36));
        let t2 = clique4_motif(2).unwrap();
        assert_eq!((t2.n(), t2.m()), (88, 216));
    }

    #[test]
    fn clique4_counts_and_arrival_degree() {
        for g in 0..=6 {
            let t = clique4_motif(g).unwrap();
            assert_eq!(t.n() as u128, clique4_order(g));
            assert_eq!(t.m() as u128, clique4_size(g));
        }
        for g in 1..=5u32 {
            let t = clique4_motif(g).unwrap();
            let newest = clique4_order(g - 1) as usize;
            assert!((newest..t.n()).all(|v| t.degree(v) == 3));
        }
    }

    #[test]
    fn growth_is_nested() {
        for g in 1..=6 {
            let prev = pseudofractal(g - 1).unwrap();
            let next = pseudofractal(g).unwrap();
            assert!(prev.edges().all(|(u, v)| next.has_edge(u, v)));
            assert_eq!(
                next.induced_subgraph(&(0..prev.n()).collect::<Vec<_>>()),
                prev
            );
        }
        for g in 1..=4 {
            let prev = clique4_motif(g - 1).unwrap();
            let next = clique4_motif(g).unwrap();
            assert!(prev.edges().all(|(u, v)| next.has_edge(u, v)));
        }
    }

    #[test]
    fn clique4_growth_map() {
        let t0 = clique4_motif(0).unwrap();
        let (t1, growth) = clique4_step(&t0);
        assert_eq!(growth.new_n(), 16);
        assert_eq!(growth.parent_of(2), None);
        assert_eq!(growth.parent_of(4), Some((0, 1)));
        assert_eq!(growth.parent_of(5), Some((0, 1)));
        assert_eq!(growth.parent_of(15), Some((2, 3)));
        assert_eq!(growth.twin_of(4), Some(5));
        assert_eq!(growth.twin_of(5), Some(4));
        assert_eq!(growth.twin_of(1), None);
        for v in 4..16 {
            let (k, l) = growth.parent_of(v).unwrap();
            let twin = growth.twin_of(v).unwrap();
            assert_eq!(
                t1.neighbors(v),
                &{
                    let mut x = vec![k, l, twin];
                    x.sort();
                    x
                }[..]
            );
        }
    }

    #[test]
    fn reference_families() {
        let p3 = reference_family(&ReferenceFamily::Path { n: 3 }).unwrap();
        assert_eq!(p3, Graph::from_edge_list("0 1\n1 2\n").unwrap());
        for n in [3, 4, 9] {
            assert_eq!(
                reference_family(&ReferenceFamily::Torus { d: 1, side: n }).unwrap(),
                reference_family(&ReferenceFamily::Cycle { n }).unwrap()
            );
        }
        assert_eq!(
            reference_family(&ReferenceFamily::Complete { n: 5 })
                .unwrap()
                .m(),
            10
        );
        let ring = reference_family(&ReferenceFamily::RingLattice { n: 10, k: 4 }).unwrap();
        assert_eq!(ring.m(), 20);
        assert!(ring.degrees().iter().all(|&d| d == 4));
        let torus = reference_family(&ReferenceFamily::Torus { d: 3, side: 4 }).unwrap();
        assert_eq!((torus.n(), torus.m()), (64, 192));
        assert!(torus.degrees().iter().all(|&d| d == 6) && torus.is_connected());
        for bad in [
            ReferenceFamily::Path { n: 1 },
            ReferenceFamily::Cycle { n: 2 },
            ReferenceFamily::RingLattice { n: 10, k: 3 },
            ReferenceFamily::RingLattice { n: 4, k: 4 },
            ReferenceFamily::Torus { d: 2, side: 2 },
        ] {
            assert!(
                matches!(reference_family(&bad), Err(Error::InvalidParameter(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn capacity_limits() {
        assert!(matches!(pseudofractal(15), Err(Error::Capacity { .. })));
        assert!(matches!(clique4_motif(9), Err(Error::Capacity { .. })));
        assert!(matches!(
            reference_family(&ReferenceFamily::Torus { d: 30, side: 3 }),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn genspec_round_trips_through_json() {
        let specs = [
            GenSpec::Ba {
                n: 256,
                m: 4,
                seed: 7,
                seed_clique: 8,
            },
            GenSpec::Hdran {
                d: 3,
                n: 100,
                seed: 1,
            },
            GenSpec::Pseudofractal { g: 2 },
            GenSpec::Reference(ReferenceFamily::Torus { d: 2, side: 5 }),
        ];
        for spec in specs {
            let json = serde_json::to_string(&spec).unwrap();
            assert!(
                json.contains(&format!("\"family\":\"{}\"", spec.family())),
                "{json}"
            );
            let back: GenSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, spec);
        }
        assert_eq!(
            GenSpec::Ba {
                n: 256,
                m: 4,
                seed: 7,
                seed_clique: 8
            }
            .to_string(),
            "family=ba n=256 m=4 seed=7 seed_clique=8"
        );
    }
}
