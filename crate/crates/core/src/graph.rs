//! Random network models and their Laplacians.
//!
//! Three undirected distributions: Erdős–Rényi with a fixed link probability,
//! random location networks on the unit square with a communication radius,
//! and stochastic block models with per-population-pair link probabilities.
//! Samplers are pure functions of (spec, rng); connectivity is obtained by
//! rejection with a configurable retry cap.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default retry cap for connected-sample rejection.
pub const DEFAULT_MAX_RETRIES: usize = 100;

/// Parameters of a random network distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum NetworkModel {
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    RandomLocation {
        n: usize,
        radius: f64,
    },
    #[serde(rename = "sbm", alias = "stochastic_block_model")]
    StochasticBlockModel {
        sizes: Vec<usize>,
        probs: Vec<Vec<f64>>,
    },
}

impl NetworkModel {
    pub fn nodes(&self) -> usize {
        match self {
            NetworkModel::ErdosRenyi { n, .. } | NetworkModel::RandomLocation { n, .. } => *n,
            NetworkModel::StochasticBlockModel { sizes, .. } => sizes.iter().sum(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidModel(msg));
        if self.nodes() < 2 {
            return fail("node count must be at least 2".into());
        }
        match self {
            NetworkModel::ErdosRenyi { p, .. } => {
                if !(0.0..=1.0).contains(p) {
                    return fail(format!("link probability {p} outside [0, 1]"));
                }
            }
            NetworkModel::RandomLocation { radius, .. } => {
                if !(*radius > 0.0) || !radius.is_finite() {
                    return fail(format!("radius {radius} must be positive and finite"));
                }
            }
            NetworkModel::StochasticBlockModel { sizes, probs } => {
                if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
                    return fail("population sizes must be non-empty and positive".into());
                }
                let m = sizes.len();
                if probs.len() != m || probs.iter().any(|row| row.len() != m) {
                    return fail(format!("probability matrix must be {m}x{m}"));
                }
                for i in 0..m {
                    for j in 0..m {
                        if !(0.0..=1.0).contains(&probs[i][j]) {
                            return fail(format!(
                                "link probability probs[{i}][{j}] = {} outside [0, 1]",
                                probs[i][j]
                            ));
                        }
                        if probs[i][j] != probs[j][i] {
                            return fail("probability matrix must be symmetric".into());
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A network model together with the (optional) consensus step size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    #[serde(flatten)]
    pub model: NetworkModel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl ModelSpec {
    pub fn new(model: NetworkModel) -> Self {
        Self { model, alpha: None }
    }

    pub fn with_alpha(model: NetworkModel, alpha: f64) -> Self {
        Self { model, alpha: Some(alpha) }
    }

    pub fn nodes(&self) -> usize {
        self.model.nodes()
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if let Some(a) = self.alpha {
            if !(a > 0.0) || !a.is_finite() {
                return Err(Error::InvalidModel(format!(
                    "step size alpha {a} must be positive and finite"
                )));
            }
        }
        Ok(())
    }
}

/// One sampled undirected graph: edge list (i < j, no self loops) plus the
/// per-node degree vector.
#[derive(Debug, Clone)]
pub struct GraphSample {
    n: usize,
    edges: Vec<(u32, u32)>,
    degrees: Vec<u32>,
}

impl GraphSample {
    pub fn from_edges(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut degrees = vec![0u32; n];
        for &(i, j) in &edges {
            debug_assert!(i < j && (j as usize) < n);
            degrees[i as usize] += 1;
            degrees[j as usize] += 1;
        }
        Self { n, edges, degrees }
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbor lists, built on demand.
    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i as usize].push(j);
            adj[j as usize].push(i);
        }
        adj
    }

    /// Combinatorial Laplacian L = D - A as a dense matrix.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for k in 0..self.n {
            l[(k, k)] = self.degrees[k] as f64;
        }
        for &(i, j) in &self.edges {
            l[(i as usize, j as usize)] = -1.0;
            l[(j as usize, i as usize)] = -1.0;
        }
        l
    }

    /// y = L x without materializing the matrix.
    pub fn laplacian_matvec(&self, x: &[f64], y: &mut [f64]) {
        for k in 0..self.n {
            y[k] = self.degrees[k] as f64 * x[k];
        }
        for &(i, j) in &self.edges {
            y[i as usize] -= x[j as usize];
            y[j as usize] -= x[i as usize];
        }
    }
}

/// Combinatorial Laplacian of a sample (free function mirror of the method).
pub fn laplacian(g: &GraphSample) -> DMatrix<f64> {
    g.laplacian()
}

/// Breadth-first connectivity test.
pub fn is_connected(g: &GraphSample) -> bool {
    if g.n == 0 {
        return false;
    }
    let adj = g.adjacency_lists();
    let mut seen = vec![false; g.n];
    let mut queue = std::collections::VecDeque::new();
    seen[0] = true;
    queue.push_back(0u32);
    let mut visited = 1usize;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u as usize] {
            if !seen[v as usize] {
                seen[v as usize] = true;
                visited += 1;
                queue.push_back(v);
            }
        }
    }
    visited == g.n
}

/// Draw one graph from the model. Connectivity is not guaranteed here.
pub fn sample_graph<R: Rng + ?Sized>(spec: &ModelSpec, rng: &mut R) -> GraphSample {
    debug_assert!(spec.validate().is_ok());
    match &spec.model {
        NetworkModel::ErdosRenyi { n, p } => sample_erdos_renyi(*n, *p, rng),
        NetworkModel::RandomLocation { n, radius } => sample_random_location(*n, *radius, rng),
        NetworkModel::StochasticBlockModel { sizes, probs } => sample_sbm(sizes, probs, rng),
    }
}

/// Rejection-sample until connected. Returns the sample and the number of
/// rejected draws before it.
pub fn sample_connected<R: Rng + ?Sized>(
    spec: &ModelSpec,
    rng: &mut R,
    max_retries: usize,
) -> Result<(GraphSample, usize)> {
    assert!(max_retries >= 1);
    for retry in 0..max_retries {
        let g = sample_graph(spec, rng);
        if is_connected(&g) {
            return Ok((g, retry));
        }
    }
    Err(Error::RetriesExhausted { attempts: max_retries })
}

/// Geometric skip over the n(n-1)/2 pair slots, so each pair is an
/// independent Bernoulli(p) while the work stays O(n + edges).
fn sample_erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> GraphSample {
    let mut edges = Vec::new();
    if p >= 1.0 {
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                edges.push((i, j));
            }
        }
        return GraphSample::from_edges(n, edges);
    }
    if p > 0.0 {
        let log_q = (1.0 - p).ln();
        let mut i = 0usize;
        let mut j = 0usize; // last candidate column; next candidate is j+1
        loop {
            let u: f64 = rng.random();
            let mut skip = ((1.0 - u).ln() / log_q).floor() as usize;
            // advance the (i, j) cursor by skip + 1 candidate slots
            loop {
                let row_remaining = n - 1 - j;
                if skip < row_remaining {
                    j += skip + 1;
                    break;
                }
                skip -= row_remaining;
                i += 1;
                j = i;
                if i + 1 >= n {
                    return GraphSample::from_edges(n, edges);
                }
            }
            edges.push((i as u32, j as u32));
        }
    }
    GraphSample::from_edges(n, edges)
}

fn sample_random_location<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R) -> GraphSample {
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = pts[i].0 - pts[j].0;
            let dy = pts[i].1 - pts[j].1;
            if dx * dx + dy * dy <= r2 {
                edges.push((i as u32, j as u32));
            }
        }
    }
    GraphSample::from_edges(n, edges)
}

fn sample_sbm<R: Rng + ?Sized>(sizes: &[usize], probs: &[Vec<f64>], rng: &mut R) -> GraphSample {
    let n: usize = sizes.iter().sum();
    let mut population = Vec::with_capacity(n);
    for (pop, &size) in sizes.iter().enumerate() {
        population.extend(std::iter::repeat(pop).take(size));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let p = probs[population[i]][population[j]];
            if p > 0.0 && (p >= 1.0 || rng.random::<f64>() < p) {
                edges.push((i as u32, j as u32));
            }
        }
    }
    GraphSample::from_edges(n, edges)
}
