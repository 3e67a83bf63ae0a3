//! Topological characterization of word networks.
//!
//! Eight node-level measurements (PageRank, betweenness, eccentricity,
//! eigenvector centrality, average neighbor degree, average shortest
//! path length, degree, clustering coefficient) are aggregated into
//! mean / standard deviation / skewness, and joined by two graph-level
//! values (assortativity, diameter) for a fixed 26-feature vector.
//!
//! Conventions for degenerate inputs are chosen so the vector is
//! always finite: disconnected graphs average over reachable nodes
//! only, isolated nodes contribute zeros, regular graphs have
//! assortativity 0, and (near-)constant series have skewness 0.

use serde::{Deserialize, Serialize};

use crate::network::Network;

const UNREACHABLE: usize = usize::MAX;

/// Iteration parameters for the two spectral measurements.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MetricConfig {
    pub damping: f64,
    pub pagerank_max_iter: usize,
    pub pagerank_tol: f64,
    pub eigenvector_max_iter: usize,
    pub eigenvector_tol: f64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        MetricConfig {
            damping: 0.85,
            pagerank_max_iter: 1_000,
            pagerank_tol: 1e-12,
            eigenvector_max_iter: 100_000,
            eigenvector_tol: 1e-13,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PageRankResult {
    pub values: Vec<f64>,
    pub converged: bool,
}

/// PageRank by power iteration on the column-stochastic transition
/// matrix with uniform teleport. Mass of degree-zero nodes is
/// redistributed uniformly. Converged when the L1 change drops below
/// `tol`; values sum to 1 either way.
pub fn pagerank(net: &Network, damping: f64, max_iter: usize, tol: f64) -> PageRankResult {
    let n = net.node_count();
    assert!(n > 0, "pagerank needs a non-empty network");
    assert!(damping > 0.0 && damping < 1.0, "damping must lie in (0, 1)");

    let uniform = 1.0 / n as f64;
    let mut ranks = vec![uniform; n];
    let mut converged = false;
    for _ in 0..max_iter {
        let mut next = vec![0.0; n];
        let mut dangling = 0.0;
        for v in 0..n {
            let deg = net.degree(v);
            if deg == 0 {
                dangling += ranks[v];
            } else {
                let share = ranks[v] / deg as f64;
                for u in net.neighbors(v) {
                    next[u] += share;
                }
            }
        }
        let teleport = (1.0 - damping) * uniform;
        let dangling_share = damping * dangling * uniform;
        for value in &mut next {
            *value = teleport + damping * *value + dangling_share;
        }
        let delta: f64 = next.iter().zip(&ranks).map(|(a, b)| (a - b).abs()).sum();
        ranks = next;
        if delta < tol {
            converged = true;
            break;
        }
    }
    PageRankResult {
        values: ranks,
        converged,
    }
}

/// Breadth-first distances and shortest-path counts from `source`.
fn bfs_counts(net: &Network, source: usize) -> (Vec<usize>, Vec<f64>) {
    let n = net.node_count();
    let mut dist = vec![UNREACHABLE; n];
    let mut sigma = vec![0.0; n];
    dist[source] = 0;
    sigma[source] = 1.0;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for w in net.neighbors(v) {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
            }
        }
    }
    (dist, sigma)
}

/// Betweenness centrality: for every unordered pair `(s, t)` with
/// `s ≠ v ≠ t`, the fraction of shortest s–t paths passing through
/// `v`, summed without pair-count normalization.
pub fn betweenness(net: &Network) -> Vec<f64> {
    let n = net.node_count();
    let per_source: Vec<(Vec<usize>, Vec<f64>)> = (0..n).map(|s| bfs_counts(net, s)).collect();
    let mut centrality = vec![0.0; n];
    for v in 0..n {
        for s in 0..n {
            if s == v {
                continue;
            }
            let (dist_s, sigma_s) = &per_source[s];
            let (dist_v, sigma_v) = &per_source[v];
            for t in s + 1..n {
                if t == v || dist_s[t] == UNREACHABLE {
                    continue;
                }
                if dist_s[v] != UNREACHABLE
                    && dist_v[t] != UNREACHABLE
                    && dist_s[v] + dist_v[t] == dist_s[t]
                {
                    centrality[v] += sigma_s[v] * sigma_v[t] / sigma_s[t];
                }
            }
        }
    }
    centrality
}

#[derive(Debug, Clone)]
pub struct ShortestPathStats {
    /// Max distance to any reachable node; 0 for isolated nodes.
    pub eccentricity: Vec<f64>,
    /// Mean distance to reachable nodes; 0 for isolated nodes.
    pub avg_shortest_path: Vec<f64>,
    /// Maximum finite eccentricity.
    pub diameter: usize,
}

/// Unweighted shortest-path statistics. Unreachable pairs are excluded
/// rather than mapped to infinity, so disconnected graphs still yield
/// finite features.
pub fn shortest_path_stats(net: &Network) -> ShortestPathStats {
    let n = net.node_count();
    let mut eccentricity = vec![0.0; n];
    let mut avg = vec![0.0; n];
    let mut diameter = 0usize;
    for v in 0..n {
        let (dist, _) = bfs_counts(net, v);
        let mut max_d = 0usize;
        let mut sum = 0usize;
        let mut reachable = 0usize;
        for (u, &d) in dist.iter().enumerate() {
            if u == v || d == UNREACHABLE {
                continue;
            }
            max_d = max_d.max(d);
            sum += d;
            reachable += 1;
        }
        eccentricity[v] = max_d as f64;
        avg[v] = if reachable == 0 {
            0.0
        } else {
            sum as f64 / reachable as f64
        };
        diameter = diameter.max(max_d);
    }
    ShortestPathStats {
        eccentricity,
        avg_shortest_path: avg,
        diameter,
    }
}

#[derive(Debug, Clone)]
pub struct EigenvectorResult {
    pub values: Vec<f64>,
    pub converged: bool,
    /// Set when the graph has no edges and the measurement is all
    /// zeros by convention.
    pub degenerate: bool,
}

/// Eigenvector centrality by power iteration, L2-normalized each step.
/// The iteration runs on A + I, which has the same eigenvectors as A
/// and a unique dominant eigenvalue on every connected component, so
/// bipartite graphs converge too.
pub fn eigenvector_centrality(net: &Network, max_iter: usize, tol: f64) -> EigenvectorResult {
    let n = net.node_count();
    assert!(n > 0, "eigenvector centrality needs a non-empty network");
    if net.edge_count() == 0 {
        return EigenvectorResult {
            values: vec![0.0; n],
            converged: true,
            degenerate: true,
        };
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut converged = false;
    for _ in 0..max_iter {
        let mut y = x.clone();
        for v in 0..n {
            for u in net.neighbors(v) {
                y[v] += x[u];
            }
        }
        let norm = y.iter().map(|a| a * a).sum::<f64>().sqrt();
        for a in &mut y {
            *a /= norm;
        }
        let delta = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        x = y;
        if delta < tol {
            converged = true;
            break;
        }
    }
    EigenvectorResult {
        values: x,
        converged,
        degenerate: false,
    }
}

#[derive(Debug, Clone)]
pub struct DegreeStats {
    pub degree: Vec<f64>,
    /// Mean degree over each node's neighbors; 0 for isolated nodes.
    pub avg_neighbor_degree: Vec<f64>,
    /// Pearson correlation of degrees over both orientations of every
    /// edge; 0 when degenerate (regular or edgeless graph).
    pub assortativity: f64,
    pub assortativity_degenerate: bool,
}

pub fn degree_stats(net: &Network) -> DegreeStats {
    let n = net.node_count();
    let degree: Vec<f64> = (0..n).map(|v| net.degree(v) as f64).collect();
    let avg_neighbor_degree: Vec<f64> = (0..n)
        .map(|v| {
            let deg = net.degree(v);
            if deg == 0 {
                0.0
            } else {
                net.neighbors(v).map(|u| degree[u]).sum::<f64>() / deg as f64
            }
        })
        .collect();

    let mut xs: Vec<f64> = Vec::with_capacity(net.edge_count() * 2);
    let mut ys: Vec<f64> = Vec::with_capacity(net.edge_count() * 2);
    for (a, b, _) in net.edges() {
        xs.push(degree[a]);
        ys.push(degree[b]);
        xs.push(degree[b]);
        ys.push(degree[a]);
    }
    let (assortativity, assortativity_degenerate) = pearson(&xs, &ys);

    DegreeStats {
        degree,
        avg_neighbor_degree,
        assortativity,
        assortativity_degenerate,
    }
}

fn pearson(xs: &[f64], ys: &[f64]) -> (f64, bool) {
    if xs.is_empty() {
        return (0.0, true);
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    if vx <= 0.0 || vy <= 0.0 {
        return (0.0, true);
    }
    ((cov / (vx.sqrt() * vy.sqrt())).clamp(-1.0, 1.0), false)
}

/// Local clustering coefficient: triangles through a node over the
/// pairs of its neighbors. Nodes of degree < 2 score 0.
pub fn clustering(net: &Network) -> Vec<f64> {
    let n = net.node_count();
    (0..n)
        .map(|v| {
            let neigh: Vec<usize> = net.neighbors(v).collect();
            let deg = neigh.len();
            if deg < 2 {
                return 0.0;
            }
            let mut triangles = 0usize;
            for i in 0..deg {
                for j in i + 1..deg {
                    if net.has_edge(neigh[i], neigh[j]) {
                        triangles += 1;
                    }
                }
            }
            triangles as f64 / ((deg * (deg - 1) / 2) as f64)
        })
        .collect()
}

/// Per-node values for the eight node-level measurements.
#[derive(Debug, Clone)]
pub struct NodeMetricSet {
    pub pagerank: Vec<f64>,
    pub betweenness: Vec<f64>,
    pub eccentricity: Vec<f64>,
    pub eigenvector: Vec<f64>,
    pub avg_neighbor_degree: Vec<f64>,
    pub avg_shortest_path: Vec<f64>,
    pub degree: Vec<f64>,
    pub clustering: Vec<f64>,
}

/// Graph-level values and degeneracy flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphMetricSet {
    pub assortativity: f64,
    pub diameter: usize,
    pub assortativity_degenerate: bool,
    pub pagerank_converged: bool,
    pub eigenvector_converged: bool,
    pub eigenvector_degenerate: bool,
}

/// Names of the 26 features produced by [`aggregate`], in output order.
pub const TOPO_FEATURE_NAMES: [&str; 26] = [
    "pagerank_mean",
    "pagerank_std",
    "pagerank_skew",
    "betweenness_mean",
    "betweenness_std",
    "betweenness_skew",
    "eccentricity_mean",
    "eccentricity_std",
    "eccentricity_skew",
    "eigenvector_mean",
    "eigenvector_std",
    "eigenvector_skew",
    "neighbor_degree_mean",
    "neighbor_degree_std",
    "neighbor_degree_skew",
    "avg_path_mean",
    "avg_path_std",
    "avg_path_skew",
    "degree_mean",
    "degree_std",
    "degree_skew",
    "clustering_mean",
    "clustering_std",
    "clustering_skew",
    "assortativity",
    "diameter",
];

/// The fixed-order topological feature vector of one network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopoFeatureVector {
    values: Vec<f64>,
}

impl TopoFeatureVector {
    pub fn names() -> &'static [&'static str] {
        &TOPO_FEATURE_NAMES
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        TOPO_FEATURE_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| self.values[i])
    }
}

/// Population mean, standard deviation and skewness of a series.
/// Skewness is 0 for (near-)constant series.
pub fn moments(values: &[f64]) -> (f64, f64, f64) {
    assert!(!values.is_empty(), "moments of an empty series");
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let m2 = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m3 = values.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
    let std = m2.sqrt();
    let skew = if m2 < 1e-12 { 0.0 } else { m3 / m2.powf(1.5) };
    (mean, std, skew)
}

/// Collapse node metrics into the 26-entry feature vector.
pub fn aggregate(node: &NodeMetricSet, graph: &GraphMetricSet) -> TopoFeatureVector {
    let series: [&[f64]; 8] = [
        &node.pagerank,
        &node.betweenness,
        &node.eccentricity,
        &node.eigenvector,
        &node.avg_neighbor_degree,
        &node.avg_shortest_path,
        &node.degree,
        &node.clustering,
    ];
    let mut values = Vec::with_capacity(26);
    for s in series {
        let (mean, std, skew) = moments(s);
        values.push(mean);
        values.push(std);
        values.push(skew);
    }
    values.push(graph.assortativity);
    values.push(graph.diameter as f64);
    debug_assert!(values.iter().all(|v| v.is_finite()));
    TopoFeatureVector { values }
}

/// Run every measurement on a network and aggregate.
pub fn compute_features(net: &Network, cfg: &MetricConfig) -> (TopoFeatureVector, GraphMetricSet) {
    let pr = pagerank(net, cfg.damping, cfg.pagerank_max_iter, cfg.pagerank_tol);
    let bc = betweenness(net);
    let sp = shortest_path_stats(net);
    let ev = eigenvector_centrality(net, cfg.eigenvector_max_iter, cfg.eigenvector_tol);
    let ds = degree_stats(net);
    let cl = clustering(net);

    let node = NodeMetricSet {
        pagerank: pr.values,
        betweenness: bc,
        eccentricity: sp.eccentricity,
        eigenvector: ev.values,
        avg_neighbor_degree: ds.avg_neighbor_degree,
        avg_shortest_path: sp.avg_shortest_path,
        degree: ds.degree,
        clustering: cl,
    };
    let graph = GraphMetricSet {
        assortativity: ds.assortativity,
        diameter: sp.diameter,
        assortativity_degenerate: ds.assortativity_degenerate,
        pagerank_converged: pr.converged,
        eigenvector_converged: ev.converged,
        eigenvector_degenerate: ev.degenerate,
    };
    let features = aggregate(&node, &graph);
    (features, graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::EdgeKind;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Network {
        let mut net = Network::new();
        for i in 0..n {
            net.add_node(&format!("w{i}"));
        }
        for &(a, b) in edges {
            net.add_edge(a, b, EdgeKind::Cooccurrence);
        }
        net
    }

    fn triangle() -> Network {
        graph(3, &[(0, 1), (1, 2), (0, 2)])
    }

    fn path3() -> Network {
        graph(3, &[(0, 1), (1, 2)])
    }

    #[test]
    fn pagerank_uniform_on_triangle() {
        let pr = pagerank(&triangle(), 0.85, 1000, 1e-12);
        assert!(pr.converged);
        for v in pr.values {
            assert_relative_eq!(v, 1.0 / 3.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn pagerank_path_center_dominates() {
        let pr = pagerank(&path3(), 0.85, 1000, 1e-12);
        assert!(pr.values[1] > pr.values[0]);
        assert_relative_eq!(pr.values[0], pr.values[2], epsilon = 1e-12);
        // frozen from the dense linear solve of the 3-node system:
        // ends 19/74, center 18/37
        assert_relative_eq!(pr.values[0], 19.0 / 74.0, epsilon = 1e-9);
        assert_relative_eq!(pr.values[1], 18.0 / 37.0, epsilon = 1e-9);
        assert_relative_eq!(pr.values.iter().sum::<f64>(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn pagerank_handles_isolated_nodes() {
        let net = graph(3, &[(0, 1)]);
        let pr = pagerank(&net, 0.85, 1000, 1e-12);
        assert!(pr.converged);
        assert_relative_eq!(pr.values.iter().sum::<f64>(), 1.0, epsilon = 1e-9);
        assert!(pr.values.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn betweenness_path3() {
        assert_eq!(betweenness(&path3()), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn betweenness_path4() {
        let net = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(betweenness(&net), vec![0.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn betweenness_triangle_is_zero() {
        assert_eq!(betweenness(&triangle()), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn shortest_paths_path3() {
        let sp = shortest_path_stats(&path3());
        assert_eq!(sp.eccentricity, vec![2.0, 1.0, 2.0]);
        assert_eq!(sp.avg_shortest_path, vec![1.5, 1.0, 1.5]);
        assert_eq!(sp.diameter, 2);
    }

    #[test]
    fn shortest_paths_triangle() {
        let sp = shortest_path_stats(&triangle());
        assert_eq!(sp.eccentricity, vec![1.0, 1.0, 1.0]);
        assert_eq!(sp.diameter, 1);
    }

    #[test]
    fn shortest_paths_disconnected_uses_reachable_only() {
        let net = graph(4, &[(0, 1), (2, 3)]);
        let sp = shortest_path_stats(&net);
        assert_eq!(sp.eccentricity, vec![1.0; 4]);
        assert_eq!(sp.diameter, 1);
    }

    #[test]
    fn eigenvector_triangle_uniform() {
        let ev = eigenvector_centrality(&triangle(), 10_000, 1e-13);
        assert!(ev.converged);
        for v in ev.values {
            assert_relative_eq!(v, 1.0 / 3f64.sqrt(), epsilon = 1e-8);
        }
    }

    #[test]
    fn eigenvector_star_center_dominates() {
        let net = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let ev = eigenvector_centrality(&net, 10_000, 1e-13);
        assert!(ev.converged);
        assert!(ev.values[0] > ev.values[1]);
        assert!(ev.values[0] > ev.values[2]);
        assert!(ev.values[0] > ev.values[3]);
    }

    #[test]
    fn eigenvector_path3_known_vector() {
        let ev = eigenvector_centrality(&path3(), 100_000, 1e-14);
        // principal eigenvector of the 3-path: (1, √2, 1) / 2
        assert_relative_eq!(ev.values[0], 0.5, epsilon = 1e-7);
        assert_relative_eq!(ev.values[1], std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-7);
        assert_relative_eq!(ev.values[2], 0.5, epsilon = 1e-7);
    }

    #[test]
    fn eigenvector_edgeless_is_degenerate() {
        let net = graph(3, &[]);
        let ev = eigenvector_centrality(&net, 100, 1e-10);
        assert!(ev.degenerate);
        assert_eq!(ev.values, vec![0.0; 3]);
    }

    #[test]
    fn degree_stats_star_is_perfectly_disassortative() {
        let net = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let ds = degree_stats(&net);
        assert_eq!(ds.degree, vec![3.0, 1.0, 1.0, 1.0]);
        assert!(!ds.assortativity_degenerate);
        assert_relative_eq!(ds.assortativity, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn degree_stats_regular_graph_is_degenerate() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let ds = degree_stats(&c4);
        assert!(ds.assortativity_degenerate);
        assert_eq!(ds.assortativity, 0.0);
    }

    #[test]
    fn degree_stats_path3_neighbor_degrees() {
        let ds = degree_stats(&path3());
        assert_eq!(ds.avg_neighbor_degree, vec![2.0, 1.0, 2.0]);
    }

    #[test]
    fn clustering_triangle_is_one() {
        assert_eq!(clustering(&triangle()), vec![1.0; 3]);
    }

    #[test]
    fn clustering_path_is_zero() {
        assert_eq!(clustering(&path3()), vec![0.0; 3]);
    }

    #[test]
    fn clustering_k4_minus_edge() {
        let net = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        let cl = clustering(&net);
        // nodes 0 and 1 have degree 3 and sit on 2 of 3 neighbor pairs
        assert_relative_eq!(cl[0], 2.0 / 3.0);
        assert_relative_eq!(cl[1], 2.0 / 3.0);
        assert_relative_eq!(cl[2], 1.0);
        assert_relative_eq!(cl[3], 1.0);
    }

    #[test]
    fn moments_constant_series() {
        let (mean, std, skew) = moments(&[3.0, 3.0, 3.0]);
        assert_eq!((mean, std, skew), (3.0, 0.0, 0.0));
    }

    #[test]
    fn moments_symmetric_series() {
        let (mean, std, skew) = moments(&[1.0, 2.0, 3.0]);
        assert_relative_eq!(mean, 2.0);
        assert_relative_eq!(std, 0.81649658, max_relative = 1e-8);
        assert_eq!(skew, 0.0);
    }

    #[test]
    fn moments_skewed_series() {
        let (_, _, skew) = moments(&[1.0, 1.0, 4.0]);
        assert_relative_eq!(skew, 0.70710678, max_relative = 1e-8);
    }

    #[test]
    fn feature_vector_is_complete_and_finite() {
        for net in [triangle(), path3(), graph(1, &[]), graph(4, &[(0, 1), (2, 3)])] {
            let (features, _) = compute_features(&net, &MetricConfig::default());
            assert_eq!(features.values().len(), 26);
            assert!(features.values().iter().all(|v| v.is_finite()));
        }
        assert_eq!(TopoFeatureVector::names().len(), 26);
    }

    #[test]
    fn feature_lookup_by_name() {
        let (features, _) = compute_features(&triangle(), &MetricConfig::default());
        assert_relative_eq!(features.get("diameter").unwrap(), 1.0);
        assert_relative_eq!(features.get("clustering_mean").unwrap(), 1.0);
        assert!(features.get("nope").is_none());
    }

    proptest! {
        /// Every measurement is invariant under node relabeling.
        #[test]
        fn metrics_invariant_under_relabeling(
            n in 2usize..8,
            edge_bits in proptest::collection::vec(any::<bool>(), 28),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;

            let mut edges = Vec::new();
            let mut bit = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if edge_bits[bit % edge_bits.len()] {
                        edges.push((i, j));
                    }
                    bit += 1;
                }
            }
            let net = graph(n, &edges);

            let mut perm: Vec<usize> = (0..n).collect();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            perm.shuffle(&mut rng);
            let permuted_edges: Vec<(usize, usize)> =
                edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
            let permuted = graph(n, &permuted_edges);

            let cfg = MetricConfig::default();
            let (f1, g1) = compute_features(&net, &cfg);
            let (f2, g2) = compute_features(&permuted, &cfg);
            prop_assert_eq!(g1.diameter, g2.diameter);
            for (a, b) in f1.values().iter().zip(f2.values()) {
                prop_assert!((a - b).abs() < 1e-7, "feature mismatch: {} vs {}", a, b);
            }
        }

        /// PageRank is a probability distribution on any graph.
        #[test]
        fn pagerank_sums_to_one(
            n in 1usize..10,
            edge_bits in proptest::collection::vec(any::<bool>(), 45),
        ) {
            let mut edges = Vec::new();
            let mut bit = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if edge_bits[bit % edge_bits.len()] {
                        edges.push((i, j));
                    }
                    bit += 1;
                }
            }
            let net = graph(n, &edges);
            let pr = pagerank(&net, 0.85, 2000, 1e-13);
            let total: f64 = pr.values.iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-9);
        }
    }
}
