//! Laplacian spectra, the pseudoinverse `L†`, effective resistances and the
//! Kirchhoff-type indices built from them.
//!
//! Two independent routes give `tr(L†)`: the eigenvalue sum
//! `Σ 1/λ_i` over non-zero eigenvalues, and the dense inverse
//! `(L + J/N)^-1 - J/N` (with `J` the all-ones matrix). A third,
//! matrix-free route solves `L x = e_i - 1/N` column by column with
//! preconditioned conjugate gradients and only needs the sparse adjacency.

use std::io::Write;

use crate::dense;
use crate::error::{Error, Result};
use crate::format::sig12;
use crate::graph::Graph;
use nalgebra::DMatrix;

/// Sorted Laplacian eigenvalues with the threshold used to call one zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianSpectrum {
    eigenvalues: Vec<f64>,
    zero_tolerance: f64,
}

impl LaplacianSpectrum {
    /// Wraps raw eigenvalues, sorting them and deriving the default zero
    /// threshold `max(N, 10) * eps * λ_max`.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> LaplacianSpectrum {
        eigenvalues.sort_by(f64::total_cmp);
        let n = eigenvalues.len();
        let lambda_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
        let zero_tolerance = (n.max(10) as f64) * f64::EPSILON * lambda_max.max(1.0);
        LaplacianSpectrum {
            eigenvalues,
            zero_tolerance,
        }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tolerance
    }

    pub fn zero_count(&self) -> usize {
        self.eigenvalues
            .iter()
            .take_while(|&&x| x <= self.zero_tolerance)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        self.zero_count() == 1
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Algebraic connectivity `λ_1`, the smallest eigenvalue above the zero
    /// threshold.
    pub fn algebraic_connectivity(&self) -> Option<f64> {
        self.eigenvalues.get(self.zero_count()).copied()
    }

    pub fn nonzero(&self) -> &[f64] {
        &self.eigenvalues[self.zero_count()..]
    }

    /// `Σ 1/λ_i` over the non-zero eigenvalues, i.e. `tr(L†)`.
    pub fn reciprocal_sum(&self) -> Result<f64> {
        let zeros = self.zero_count();
        if zeros != 1 {
            return Err(Error::Disconnected { components: zeros });
        }
        Ok(self.nonzero().iter().map(|x| 1.0 / x).sum())
    }
}

/// Full symmetric eigendecomposition of `L`, eigenvalues only.
pub fn spectrum(g: &Graph) -> Result<LaplacianSpectrum> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Degenerate { n });
    }
    let values = g.laplacian().symmetric_eigenvalues();
    let spectrum = LaplacianSpectrum::from_eigenvalues(values.iter().copied().collect());
    let trace_residual = (spectrum.eigenvalues.iter().sum::<f64>() - 2.0 * g.m() as f64).abs();
    let min = spectrum.eigenvalues.first().copied().unwrap_or(0.0);
    if !trace_residual.is_finite()
        || trace_residual > 1e-8 * (g.m().max(1) as f64)
        || min < -spectrum.zero_tolerance.max(1e-9)
    {
        return Err(Error::NonConvergence {
            residual: trace_residual.max(-min),
        });
    }
    Ok(spectrum)
}

/// How `tr(L†)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceMethod {
    /// Sum of reciprocal non-zero eigenvalues.
    #[default]
    Spectrum,
    /// `tr((L + J/N)^-1) - 1` via a dense Cholesky factorization.
    DenseInverse,
    /// Per-column conjugate-gradient solves on the sparse Laplacian.
    DeflatedSolve,
}

/// `tr(L†)` by the eigenvalue route.
pub fn pseudoinverse_trace(g: &Graph) -> Result<f64> {
    pseudoinverse_trace_with(g, TraceMethod::Spectrum)
}

pub fn pseudoinverse_trace_with(g: &Graph, method: TraceMethod) -> Result<f64> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Degenerate { n });
    }
    g.require_connected()?;
    match method {
        TraceMethod::Spectrum => spectrum(g)?.reciprocal_sum(),
        TraceMethod::DenseInverse => {
            // (L + J/N)^-1 = L† + J/N and tr(J/N) = 1
            Ok(dense::spd_inverse_trace(shifted_laplacian(g), n)? - 1.0)
        }
        TraceMethod::DeflatedSolve => deflated_trace(g, 1e-11),
    }
}

fn shifted_laplacian(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let shift = 1.0 / n as f64;
    let mut a = vec![shift; n * n];
    for u in 0..n {
        a[u * n + u] += g.degree(u) as f64;
        for &v in g.neighbors(u) {
            a[u * n + v] -= 1.0;
        }
    }
    a
}

/// Dense Moore-Penrose pseudoinverse of the Laplacian of a connected graph.
pub fn pseudoinverse(g: &Graph) -> Result<DMatrix<f64>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Degenerate { n });
    }
    g.require_connected()?;
    let mut inv = dense::spd_inverse(shifted_laplacian(g), n)?;
    let shift = 1.0 / n as f64;
    inv.iter_mut().for_each(|x| *x -= shift);
    // symmetric, so the row-major buffer reads the same column-major
    Ok(DMatrix::from_vec(n, n, inv))
}

/// Solves `L x = b` for `b ⟂ 1` with Jacobi-preconditioned CG, returning the
/// mean-zero solution `x = L† b`.
pub fn deflated_solve(g: &Graph, b: &[f64], rel_tol: f64) -> Result<Vec<f64>> {
    let n = g.n();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut scratch = CgScratch::new(n);
    let mut rhs = b.to_vec();
    project_out_mean(&mut rhs);
    let mut x = vec![0.0; n];
    cg_solve(g, &rhs, &mut x, rel_tol, &mut scratch)?;
    project_out_mean(&mut x);
    Ok(x)
}

fn project_out_mean(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
}

struct CgScratch {
    r: Vec<f64>,
    z: Vec<f64>,
    p: Vec<f64>,
    q: Vec<f64>,
}

impl CgScratch {
    fn new(n: usize) -> Self {
        CgScratch {
            r: vec![0.0; n],
            z: vec![0.0; n],
            p: vec![0.0; n],
            q: vec![0.0; n],
        }
    }
}

fn apply_laplacian(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (u, o) in out.iter_mut().enumerate() {
        let nbrs = g.neighbors(u);
        let s: f64 = nbrs.iter().map(|&v| x[v]).sum();
        *o = nbrs.len() as f64 * x[u] - s;
    }
}

fn cg_solve(g: &Graph, b: &[f64], x: &mut [f64], rel_tol: f64, s: &mut CgScratch) -> Result<usize> {
    let n = g.n();
    let b_norm = dense::dot(b, b).sqrt();
    x.fill(0.0);
    if b_norm == 0.0 {
        return Ok(0);
    }
    s.r.copy_from_slice(b);
    for u in 0..n {
        s.z[u] = s.r[u] / g.degree(u) as f64;
    }
    s.p.copy_from_slice(&s.z);
    let mut rz = dense::dot(&s.r, &s.z);
    let max_iter = 10 * n + 100;
    let target = rel_tol * b_norm;
    for iter in 1..=max_iter {
        apply_laplacian(g, &s.p, &mut s.q);
        let alpha = rz / dense::dot(&s.p, &s.q);
        for u in 0..n {
            x[u] += alpha * s.p[u];
            s.r[u] -= alpha * s.q[u];
        }
        let r_norm = dense::dot(&s.r, &s.r).sqrt();
        if r_norm <= target {
            return Ok(iter);
        }
        for u in 0..n {
            s.z[u] = s.r[u] / g.degree(u) as f64;
        }
        let rz_next = dense::dot(&s.r, &s.z);
        let beta = rz_next / rz;
        rz = rz_next;
        for u in 0..n {
            s.p[u] = s.z[u] + beta * s.p[u];
        }
    }
    let residual = dense::dot(&s.r, &s.r).sqrt() / b_norm;
    Err(Error::SolverStalled {
        iterations: max_iter,
        residual,
    })
}

fn deflated_trace(g: &Graph, rel_tol: f64) -> Result<f64> {
    let n = g.n();
    let mut scratch = CgScratch::new(n);
    let mut rhs = vec![-1.0 / n as f64; n];
    let mut x = vec![0.0; n];
    let mut trace = 0.0;
    for i in 0..n {
        rhs[i] += 1.0;
        cg_solve(g, &rhs, &mut x, rel_tol, &mut scratch)?;
        rhs[i] -= 1.0;
        let mean = x.iter().sum::<f64>() / n as f64;
        trace += x[i] - mean;
    }
    Ok(trace)
}

/// Symmetric matrix of pairwise effective resistances, zero on the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl ResistanceMatrix {
    /// `Ω_ij = L†_ii + L†_jj - 2 L†_ij`.
    pub fn from_pseudoinverse(pinv: &DMatrix<f64>) -> ResistanceMatrix {
        let n = pinv.nrows();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)];
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        ResistanceMatrix { n, entries }
    }

    /// Builds from a row-major buffer, symmetrizing and zeroing the diagonal.
    pub fn from_row_major(n: usize, mut entries: Vec<f64>) -> Result<ResistanceMatrix> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        for i in 0..n {
            entries[i * n + i] = 0.0;
            for j in i + 1..n {
                let v = 0.5 * (entries[i * n + j] + entries[j * n + i]);
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        Ok(ResistanceMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    fn weighted_pair_sum(&self, weight: impl Fn(usize, usize) -> f64) -> f64 {
        let mut total = 0.0;
        for i in 0..self.n {
            let row = self.row(i);
            for (j, &omega) in row.iter().enumerate().skip(i + 1) {
                total += weight(i, j) * omega;
            }
        }
        total
    }

    /// `R(G) = Σ_{i<j} Ω_ij`.
    pub fn kirchhoff_index(&self) -> f64 {
        self.weighted_pair_sum(|_, _| 1.0)
    }

    /// `R*(G) = Σ_{i<j} d_i d_j Ω_ij`.
    pub fn multiplicative_degree_kirchhoff(&self, g: &Graph) -> f64 {
        self.weighted_pair_sum(|i, j| (g.degree(i) * g.degree(j)) as f64)
    }

    /// `R+(G) = Σ_{i<j} (d_i + d_j) Ω_ij`.
    pub fn additive_degree_kirchhoff(&self, g: &Graph) -> f64 {
        self.weighted_pair_sum(|i, j| (g.degree(i) + g.degree(j)) as f64)
    }

    /// `|Σ_edges Ω_ij - (N - 1)|`.
    pub fn foster_residual(&self, g: &Graph) -> f64 {
        let sum: f64 = g.edges().map(|(i, j)| self.get(i, j)).sum();
        (sum - (g.n() as f64 - 1.0)).abs()
    }

    /// `|d_i Ω_ij + Σ_{k ∈ N(i)} (Ω_ik - Ω_jk) - 2|`.
    pub fn sum_rule_residual(&self, g: &Graph, i: usize, j: usize) -> Result<f64> {
        g.check_vertex(i)?;
        g.check_vertex(j)?;
        if i == j {
            return Err(Error::InvalidArgument(format!(
                "sum rule needs two distinct vertices, got {i} twice"
            )));
        }
        let mut lhs = g.degree(i) as f64 * self.get(i, j);
        for &k in g.neighbors(i) {
            lhs += self.get(i, k) - self.get(j, k);
        }
        Ok((lhs - 2.0).abs())
    }

    /// Row-major CSV, 12 significant digits, no header.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for i in 0..self.n {
            let line: Vec<String> = self.row(i).iter().map(|&x| sig12(x)).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        w.flush()
    }
}

/// Effective resistance between `i` and `j` from a single deflated solve.
pub fn resistance(g: &Graph, i: usize, j: usize) -> Result<f64> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if i == j {
        return Ok(0.0);
    }
    g.require_connected()?;
    let mut b = vec![0.0; g.n()];
    b[i] = 1.0;
    b[j] = -1.0;
    let x = deflated_solve(g, &b, 1e-13)?;
    Ok(x[i] - x[j])
}

/// All pairwise resistances from one dense pseudoinverse.
pub fn resistance_matrix(g: &Graph) -> Result<ResistanceMatrix> {
    Ok(ResistanceMatrix::from_pseudoinverse(&pseudoinverse(g)?))
}

pub fn kirchhoff_index(g: &Graph) -> Result<f64> {
    Ok(resistance_matrix(g)?.kirchhoff_index())
}

pub fn multiplicative_degree_kirchhoff(g: &Graph) -> Result<f64> {
    Ok(resistance_matrix(g)?.multiplicative_degree_kirchhoff(g))
}

pub fn additive_degree_kirchhoff(g: &Graph) -> Result<f64> {
    Ok(resistance_matrix(g)?.additive_degree_kirchhoff(g))
}

pub fn foster_residual(g: &Graph) -> Result<f64> {
    Ok(resistance_matrix(g)?.foster_residual(g))
}

pub fn sum_rule_residual(g: &Graph, i: usize, j: usize) -> Result<f64> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if i == j {
        return Err(Error::InvalidArgument(format!(
            "sum rule needs two distinct vertices, got {i} twice"
        )));
    }
    resistance_matrix(g)?.sum_rule_residual(g, i, j)
}
