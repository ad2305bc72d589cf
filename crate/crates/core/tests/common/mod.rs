//! Shared fixtures: an independent transport LP solver and random instances.
#![allow(dead_code)]

use lspnw::rng::{stream, StreamRng};
use lspnw::simulate::LaggedData;
use lspnw::{DiscreteMeasure, KernelFamily, KernelSpec, NwParams, Series};
use rand::Rng;

/// Weights of the random measures are multiples of `1 / DYADIC`.
pub const DYADIC: u32 = 64;

/// A measure kept together with its integer masses (multiples of `1/DYADIC`).
#[derive(Debug, Clone)]
pub struct Dyadic {
    pub support: Vec<f64>,
    pub counts: Vec<u32>,
}

impl Dyadic {
    pub fn weights(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / DYADIC as f64).collect()
    }

    pub fn measure(&self) -> DiscreteMeasure {
        DiscreteMeasure::new(self.support.clone(), self.weights()).unwrap()
    }
}

/// Up to `max_atoms` atoms. Support points are sometimes drawn from a
/// coarse grid so that ties between and within measures occur.
pub fn random_dyadic(rng: &mut StreamRng, max_atoms: usize) -> Dyadic {
    let n = rng.random_range(1..=max_atoms);
    let coarse = rng.random_bool(0.3);
    let support = (0..n)
        .map(|_| {
            if coarse {
                rng.random_range(-3i32..=3) as f64
            } else {
                rng.random_range(-5.0..5.0)
            }
        })
        .collect();
    // A random composition of DYADIC into n positive parts.
    let mut cuts: Vec<u32> = Vec::with_capacity(n + 1);
    while cuts.len() < n - 1 {
        let c = rng.random_range(1..DYADIC);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.push(0);
    cuts.push(DYADIC);
    cuts.sort_unstable();
    let counts = cuts.windows(2).map(|w| w[1] - w[0]).collect();
    Dyadic { support, counts }
}

/// Optimal transport cost `min Σ π_ij c(x_i, y_j)` by successive shortest
/// paths on the integer-capacity bipartite network. Integral supplies make
/// the flow solution an exact LP optimum.
pub fn lp_transport(mu: &Dyadic, nu: &Dyadic, cost: impl Fn(f64, f64) -> f64) -> f64 {
    let (n, m) = (mu.support.len(), nu.support.len());
    let (source, sink) = (n + m, n + m + 1);
    let nodes = n + m + 2;

    struct Edge {
        to: usize,
        cap: i64,
        cost: f64,
    }
    let mut edges: Vec<Edge> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let add = |edges: &mut Vec<Edge>, adj: &mut Vec<Vec<usize>>, a: usize, b: usize, cap: i64, c: f64| {
        adj[a].push(edges.len());
        edges.push(Edge { to: b, cap, cost: c });
        adj[b].push(edges.len());
        edges.push(Edge { to: a, cap: 0, cost: -c });
    };
    for i in 0..n {
        add(&mut edges, &mut adj, source, i, mu.counts[i] as i64, 0.0);
        for j in 0..m {
            add(&mut edges, &mut adj, i, n + j, i64::MAX / 4, cost(mu.support[i], nu.support[j]));
        }
    }
    for j in 0..m {
        add(&mut edges, &mut adj, n + j, sink, nu.counts[j] as i64, 0.0);
    }

    let mut remaining = DYADIC as i64;
    let mut total = 0.0;
    while remaining > 0 {
        // Bellman-Ford: residual costs can be negative.
        let mut dist = vec![f64::INFINITY; nodes];
        let mut via: Vec<Option<usize>> = vec![None; nodes];
        dist[source] = 0.0;
        for _ in 0..nodes {
            let mut changed = false;
            for a in 0..nodes {
                if dist[a].is_infinite() {
                    continue;
                }
                for &e in &adj[a] {
                    let edge = &edges[e];
                    if edge.cap > 0 && dist[a] + edge.cost < dist[edge.to] - 1e-12 {
                        dist[edge.to] = dist[a] + edge.cost;
                        via[edge.to] = Some(e);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut path = Vec::new();
        let mut v = sink;
        while v != source {
            let e = via[v].expect("balanced supplies always admit a path");
            path.push(e);
            v = edges[e ^ 1].to;
        }
        let push = path.iter().map(|&e| edges[e].cap).min().unwrap().min(remaining);
        for &e in &path {
            edges[e].cap -= push;
            edges[e ^ 1].cap += push;
            total += push as f64 * edges[e].cost;
        }
        remaining -= push;
    }
    total / DYADIC as f64
}

pub fn lp_w1(mu: &Dyadic, nu: &Dyadic) -> f64 {
    lp_transport(mu, nu, |x, y| (x - y).abs())
}

/// A random estimation problem: lagged data from a short random series
/// plus a query, with a compact or Gaussian kernel pair.
#[derive(Debug, Clone)]
pub struct Instance {
    pub data: LaggedData,
    pub t: usize,
    pub x: Vec<f64>,
    pub params: NwParams,
}

const NONNEGATIVE: [KernelFamily; 6] = [
    KernelFamily::Uniform,
    KernelFamily::Rectangle,
    KernelFamily::Triangle,
    KernelFamily::Epanechnikov,
    KernelFamily::Tricube,
    KernelFamily::Gaussian,
];

pub fn random_instance(rng: &mut StreamRng) -> Instance {
    let t_len = rng.random_range(8..60);
    let d = rng.random_range(1..=2);
    let values: Vec<f64> = (0..t_len).map(|_| rng.random_range(-2.0..2.0)).collect();
    let series = Series::new(values).unwrap();
    let data = lspnw::lag_embed(&series, d).unwrap();
    let t = rng.random_range(d + 1..=t_len);
    let x = (0..d).map(|_| rng.random_range(-2.0..2.0)).collect();
    let k_time = KernelSpec::new(NONNEGATIVE[rng.random_range(0..NONNEGATIVE.len())]);
    let k_space = KernelSpec::new(NONNEGATIVE[rng.random_range(0..NONNEGATIVE.len())]);
    let h = rng.random_range(0.3..1.5);
    Instance {
        data,
        t,
        x,
        params: NwParams::new(k_time, k_space, h).force_boundary(true),
    }
}

pub fn rng(seed: u64) -> StreamRng {
    stream(seed)
}
