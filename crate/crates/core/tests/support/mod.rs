//! Test-only oracles, independent of the library's algorithms:
//! exhaustive path enumeration, direct triangle counting, and dense
//! linear algebra for the spectral measurements.

use cognet_core::network::{EdgeKind, Network};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const UNREACHABLE: usize = usize::MAX;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Network {
    let mut net = Network::new();
    for i in 0..n {
        net.add_node(&format!("w{i}"));
    }
    for &(a, b) in edges {
        net.add_edge(a, b, EdgeKind::Cooccurrence);
    }
    net
}

/// Seeded Erdős–Rényi style graph.
pub fn random_graph(rng: &mut ChaCha8Rng, max_nodes: usize, p: f64) -> Network {
    let n = rng.gen_range(1..=max_nodes);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    graph(n, &edges)
}

/// All-pairs distances by Floyd–Warshall.
pub fn floyd_warshall(net: &Network) -> Vec<Vec<usize>> {
    let n = net.node_count();
    let mut dist = vec![vec![UNREACHABLE; n]; n];
    for v in 0..n {
        dist[v][v] = 0;
        for u in net.neighbors(v) {
            dist[v][u] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if dist[i][k] == UNREACHABLE {
                continue;
            }
            for j in 0..n {
                if dist[k][j] == UNREACHABLE {
                    continue;
                }
                let through = dist[i][k] + dist[k][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    dist
}

/// Exhaustively enumerate every shortest s–t path (depth-limited DFS)
/// and count, per node, how many pass through it.
fn enumerate_shortest_paths(
    net: &Network,
    s: usize,
    t: usize,
    limit: usize,
) -> (u64, Vec<u64>) {
    let n = net.node_count();
    let mut total = 0u64;
    let mut through = vec![0u64; n];
    let mut path = vec![s];
    let mut on_path = vec![false; n];
    on_path[s] = true;

    fn dfs(
        net: &Network,
        t: usize,
        limit: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        total: &mut u64,
        through: &mut Vec<u64>,
    ) {
        let v = *path.last().expect("path never empty");
        if v == t {
            if path.len() == limit + 1 {
                *total += 1;
                for &w in path[1..path.len() - 1].iter() {
                    through[w] += 1;
                }
            }
            return;
        }
        if path.len() > limit {
            return;
        }
        for u in net.neighbors(v) {
            if !on_path[u] {
                on_path[u] = true;
                path.push(u);
                dfs(net, t, limit, path, on_path, total, through);
                path.pop();
                on_path[u] = false;
            }
        }
    }

    dfs(net, t, limit, &mut path, &mut on_path, &mut total, &mut through);
    (total, through)
}

/// Betweenness by exhaustive enumeration, accumulated pair-by-pair in
/// ascending (s, t) order per node — the same reduction order as the
/// implementation, so agreement is exact.
pub fn betweenness_oracle(net: &Network) -> Vec<f64> {
    let n = net.node_count();
    let dist = floyd_warshall(net);
    let mut sigma = vec![vec![0u64; n]; n];
    let mut through = vec![vec![vec![0u64; n]; n]; n]; // [s][t][v]
    for s in 0..n {
        for t in s + 1..n {
            if dist[s][t] == UNREACHABLE {
                continue;
            }
            let (total, via) = enumerate_shortest_paths(net, s, t, dist[s][t]);
            sigma[s][t] = total;
            through[s][t] = via;
        }
    }
    let mut centrality = vec![0.0; n];
    for v in 0..n {
        for s in 0..n {
            if s == v {
                continue;
            }
            for t in s + 1..n {
                if t == v || dist[s][t] == UNREACHABLE {
                    continue;
                }
                let (s0, t0) = if s < t { (s, t) } else { (t, s) };
                if sigma[s0][t0] > 0 {
                    centrality[v] += through[s0][t0][v] as f64 / sigma[s0][t0] as f64;
                }
            }
        }
    }
    centrality
}

/// Eccentricity, per-node average shortest path and diameter from
/// Floyd–Warshall distances, reachable pairs only.
pub fn shortest_path_oracle(net: &Network) -> (Vec<f64>, Vec<f64>, usize) {
    let n = net.node_count();
    let dist = floyd_warshall(net);
    let mut ecc = vec![0.0; n];
    let mut avg = vec![0.0; n];
    let mut diameter = 0usize;
    for v in 0..n {
        let mut max_d = 0usize;
        let mut sum = 0usize;
        let mut count = 0usize;
        for u in 0..n {
            if u == v || dist[v][u] == UNREACHABLE {
                continue;
            }
            max_d = max_d.max(dist[v][u]);
            sum += dist[v][u];
            count += 1;
        }
        ecc[v] = max_d as f64;
        avg[v] = if count == 0 { 0.0 } else { sum as f64 / count as f64 };
        diameter = diameter.max(max_d);
    }
    (ecc, avg, diameter)
}

/// Clustering by checking every unordered triple for triangles.
pub fn clustering_oracle(net: &Network) -> Vec<f64> {
    let n = net.node_count();
    let mut triangles = vec![0u64; n];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if net.has_edge(a, b) && net.has_edge(b, c) && net.has_edge(a, c) {
                    triangles[a] += 1;
                    triangles[b] += 1;
                    triangles[c] += 1;
                }
            }
        }
    }
    (0..n)
        .map(|v| {
            let d = net.degree(v) as u64;
            if d < 2 {
                0.0
            } else {
                triangles[v] as f64 / ((d * (d - 1) / 2) as f64)
            }
        })
        .collect()
}

/// Degrees and neighbor-degree averages by direct definition.
pub fn degree_oracle(net: &Network) -> (Vec<f64>, Vec<f64>) {
    let n = net.node_count();
    let degree: Vec<f64> = (0..n).map(|v| net.neighbors(v).count() as f64).collect();
    let neighbor_avg = (0..n)
        .map(|v| {
            let neigh: Vec<usize> = net.neighbors(v).collect();
            if neigh.is_empty() {
                0.0
            } else {
                neigh.iter().map(|&u| degree[u]).sum::<f64>() / neigh.len() as f64
            }
        })
        .collect();
    (degree, neighbor_avg)
}

/// Assortativity by the direct Pearson formula over raw sums.
pub fn assortativity_oracle(net: &Network) -> Option<f64> {
    let degree: Vec<f64> = (0..net.node_count())
        .map(|v| net.neighbors(v).count() as f64)
        .collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (a, b, _) in net.edges() {
        xs.push(degree[a]);
        ys.push(degree[b]);
        xs.push(degree[b]);
        ys.push(degree[a]);
    }
    if xs.is_empty() {
        return None;
    }
    let m = xs.len() as f64;
    let exy = xs.iter().zip(&ys).map(|(x, y)| x * y).sum::<f64>() / m;
    let ex = xs.iter().sum::<f64>() / m;
    let ey = ys.iter().sum::<f64>() / m;
    let exx = xs.iter().map(|x| x * x).sum::<f64>() / m;
    let eyy = ys.iter().map(|y| y * y).sum::<f64>() / m;
    let vx = exx - ex * ex;
    let vy = eyy - ey * ey;
    if vx <= 1e-12 || vy <= 1e-12 {
        return None;
    }
    Some((exy - ex * ey) / (vx.sqrt() * vy.sqrt()))
}

/// PageRank by a dense linear solve of
/// `(I − d·M − (d/n)·1·e_Dᵀ) x = ((1−d)/n)·1`, where `M` is the
/// column-stochastic walk matrix and `e_D` marks dangling columns.
pub fn pagerank_oracle(net: &Network, damping: f64) -> Vec<f64> {
    let n = net.node_count();
    let nf = n as f64;
    let mut a = DMatrix::<f64>::identity(n, n);
    for j in 0..n {
        let deg = net.degree(j);
        if deg == 0 {
            for i in 0..n {
                a[(i, j)] -= damping / nf;
            }
        } else {
            for i in net.neighbors(j) {
                a[(i, j)] -= damping / deg as f64;
            }
        }
    }
    let b = DVector::from_element(n, (1.0 - damping) / nf);
    let x = a.lu().solve(&b).expect("PageRank system is nonsingular");
    x.iter().copied().collect()
}

/// The limit of (A+I) power iteration from a uniform start: the
/// normalized projection of the start vector onto the dominant
/// eigenspace, via dense symmetric eigendecomposition.
pub fn eigenvector_oracle(net: &Network) -> Vec<f64> {
    let n = net.node_count();
    let mut a = DMatrix::<f64>::identity(n, n);
    for v in 0..n {
        for u in net.neighbors(v) {
            a[(v, u)] += 1.0;
        }
    }
    let eig = a.symmetric_eigen();
    let lambda_max = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let group_tol = 1e-9 * lambda_max.abs().max(1.0);

    let start = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut projection = DVector::zeros(n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if (lambda_max - lambda).abs() <= group_tol {
            let v = eig.eigenvectors.column(k);
            projection += v * v.dot(&start);
        }
    }
    let norm = projection.norm();
    assert!(norm > 1e-12, "start vector orthogonal to dominant eigenspace");
    (projection / norm).iter().copied().collect()
}
