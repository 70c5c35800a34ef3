//! Test graphs: classic families, the stored fixtures, seeded random
//! build-trees, and the third P4-sparse composition operation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::buildtree::BuildTree;
use crate::error::GenError;
use crate::graph::Graph;
use crate::io::parse_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `K_{a,a}` minus the perfect matching `i -- a+i`.
    CompleteBipartiteMinusMatching(usize),
}

pub fn classic(family: Family) -> Result<Graph, GenError> {
    let edges: Vec<(usize, usize)>;
    let n = match family {
        Family::Path(n) => {
            if n < 1 {
                return Err(GenError::Parameter("path needs n >= 1".into()));
            }
            edges = (1..n).map(|i| (i - 1, i)).collect();
            n
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(GenError::Parameter("cycle needs n >= 3".into()));
            }
            edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
            n
        }
        Family::Complete(n) => {
            if n < 1 {
                return Err(GenError::Parameter("complete graph needs n >= 1".into()));
            }
            edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            n
        }
        Family::CompleteBipartiteMinusMatching(a) => {
            if a < 1 {
                return Err(GenError::Parameter("bipartite side needs a >= 1".into()));
            }
            edges = (0..a)
                .flat_map(|i| (0..a).filter(move |&j| j != i).map(move |j| (i, a + j)))
                .collect();
            2 * a
        }
    };
    Ok(Graph::from_edges(n, &edges)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    pub expected_oat: bool,
    pub expected_chi: Option<usize>,
}

#[derive(Deserialize)]
struct Manifest {
    fixtures: Vec<ManifestEntry>,
}

#[derive(Deserialize)]
struct ManifestEntry {
    name: String,
    file: String,
    expected_oat: bool,
    expected_chi: Option<usize>,
}

const MANIFEST: &str = include_str!("../fixtures/manifest.json");

fn fixture_text(file: &str) -> Option<&'static str> {
    Some(match file {
        "domino.txt" => include_str!("../fixtures/domino.txt"),
        "house.txt" => include_str!("../fixtures/house.txt"),
        "gem.txt" => include_str!("../fixtures/gem.txt"),
        "fig2_imperfect.txt" => include_str!("../fixtures/fig2_imperfect.txt"),
        "fig4_dh_not_oat.txt" => include_str!("../fixtures/fig4_dh_not_oat.txt"),
        _ => return None,
    })
}

pub fn fixture_names() -> Vec<String> {
    let m: Manifest = serde_json::from_str(MANIFEST).expect("bundled manifest parses");
    m.fixtures.into_iter().map(|f| f.name).collect()
}

pub fn fixture(name: &str) -> Result<Fixture, GenError> {
    let m: Manifest = serde_json::from_str(MANIFEST).expect("bundled manifest parses");
    let entry = m
        .fixtures
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| GenError::UnknownFixture(name.to_string()))?;
    let text = fixture_text(&entry.file).ok_or_else(|| GenError::UnknownFixture(entry.file.clone()))?;
    Ok(Fixture {
        name: entry.name,
        graph: parse_graph(text)?,
        expected_oat: entry.expected_oat,
        expected_chi: entry.expected_chi,
    })
}

// union, join, comparable, clique
const OP_WEIGHTS: [f64; 4] = [0.2, 0.3, 0.3, 0.2];

/// A seeded random build-tree on vertices `0..n`.
pub fn random_oat(n: usize, seed: u64) -> Result<BuildTree, GenError> {
    if n < 1 {
        return Err(GenError::Parameter("random_oat needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let mut g = Graph::new(n)?;
    Ok(grow(&labels, &mut rng, &mut g))
}

fn pick_op(rng: &mut ChaCha8Rng) -> usize {
    let x: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, w) in OP_WEIGHTS.iter().enumerate() {
        acc += w;
        if x < acc {
            return i;
        }
    }
    OP_WEIGHTS.len() - 1
}

/// Builds a tree on `labels`, recording its edges in `g` as it goes.
fn grow(labels: &[usize], rng: &mut ChaCha8Rng, g: &mut Graph) -> BuildTree {
    let m = labels.len();
    if m == 1 {
        return BuildTree::leaf(labels[0]);
    }
    match pick_op(rng) {
        op @ (0 | 1) => {
            let a = rng.gen_range(1..m);
            let left = grow(&labels[..a], rng, g);
            let right = grow(&labels[a..], rng, g);
            if op == 0 {
                BuildTree::union(left, right).expect("disjoint labels")
            } else {
                for &x in &labels[..a] {
                    for &y in &labels[a..] {
                        g.connect(x, y);
                    }
                }
                BuildTree::join(left, right).expect("disjoint labels")
            }
        }
        2 => {
            let u = labels[m - 1];
            let child = grow(&labels[..m - 1], rng, g);
            let v = labels[rng.gen_range(0..m - 1)];
            let nv: Vec<usize> = g.neighbours(v).collect();
            let x: Vec<usize> = nv.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
            for &y in &x {
                g.connect(u, y);
            }
            BuildTree::comparable(child, u, v, x).expect("valid comparable vertex")
        }
        _ => {
            let size = rng.gen_range(1..m);
            let child = grow(&labels[..m - size], rng, g);
            let z = labels[rng.gen_range(0..m - size)];
            let mut q = labels[m - size..].to_vec();
            q.sort_unstable();
            for (i, &a) in q.iter().enumerate() {
                g.connect(a, z);
                for &b in &q[i + 1..] {
                    g.connect(a, b);
                }
            }
            BuildTree::clique_attach(child, z, q).expect("valid clique attachment")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThirdOpCase {
    /// `N(v) = {v'}`: each new vertex is pendant on its partner in `K`.
    Pendant,
    /// `N(v) = K - v'`: each new vertex sees all of `K` but its partner.
    Anti,
}

/// Adds `v1_size` independent vertices to `g2` following the P4-sparse
/// composition rule. `v` is the special vertex, `k` the clique and
/// `v_prime` the distinguished clique vertex; every other vertex of `g2`
/// forms `R`. New vertices get labels `g2.n()..`, and the `i`-th is paired
/// with the `i`-th vertex of `K - v'` in ascending order.
pub fn apply_third_op(
    g2: &Graph,
    v: usize,
    k: &[usize],
    v_prime: usize,
    v1_size: usize,
) -> Result<(Graph, ThirdOpCase), GenError> {
    let pre = |m: &str| Err(GenError::Precondition(m.to_string()));
    let n2 = g2.n();
    if v1_size < 1 || k.len() != v1_size + 1 {
        return pre("|K| = |V1| + 1 >= 2 does not hold");
    }
    if v >= n2 || k.iter().any(|&x| x >= n2 || x == v) {
        return pre("v and K must be distinct vertices of G2");
    }
    let mut ks = k.to_vec();
    ks.sort_unstable();
    if ks.windows(2).any(|w| w[0] == w[1]) {
        return pre("K has repeated vertices");
    }
    if !ks.contains(&v_prime) {
        return pre("v' is not in K");
    }
    if !crate::graph::is_clique(g2, &ks) {
        return pre("K is not a clique");
    }
    let r: Vec<usize> = (0..n2).filter(|&x| x != v && !ks.contains(&x)).collect();
    if r.iter().any(|&x| g2.has_edge(x, v)) {
        return pre("a vertex of R is adjacent to v");
    }
    if r.iter().any(|&x| ks.iter().any(|&y| !g2.has_edge(x, y))) {
        return pre("R is not joined to K");
    }
    let nv: Vec<usize> = g2.neighbours(v).collect();
    let others: Vec<usize> = ks.iter().copied().filter(|&x| x != v_prime).collect();
    let case = if nv == [v_prime] {
        ThirdOpCase::Pendant
    } else if nv == others {
        ThirdOpCase::Anti
    } else {
        return pre("N(v) is neither {v'} nor K - v'");
    };

    let mut edges: Vec<(usize, usize)> = g2.edges().collect();
    for (i, &partner) in others.iter().enumerate() {
        let x = n2 + i;
        match case {
            ThirdOpCase::Pendant => edges.push((partner, x)),
            ThirdOpCase::Anti => edges.extend(ks.iter().filter(|&&y| y != partner).map(|&y| (y, x))),
        }
    }
    Ok((Graph::from_edges(n2 + v1_size, &edges)?, case))
}

/// Assembles `G2 = {v} + K + R` (with `v = 0`, `K = 1..=v1_size+1`,
/// `v' = 1`, and `R` relabelled after `K`) and applies the third operation.
pub fn p4_sparse_third_op(v1_size: usize, r: Option<&Graph>, case: ThirdOpCase) -> Result<Graph, GenError> {
    if v1_size < 1 {
        return Err(GenError::Precondition("|K| = |V1| + 1 >= 2 does not hold".into()));
    }
    let ksize = v1_size + 1;
    let rn = r.map_or(0, Graph::n);
    let n2 = 1 + ksize + rn;
    let k: Vec<usize> = (1..=ksize).collect();
    let mut g2 = Graph::new(n2)?;
    for (i, &a) in k.iter().enumerate() {
        for &b in &k[i + 1..] {
            g2.connect(a, b);
        }
    }
    if let Some(r) = r {
        let base = 1 + ksize;
        for (a, b) in r.edges() {
            g2.connect(base + a, base + b);
        }
        for x in base..n2 {
            for &y in &k {
                g2.connect(x, y);
            }
        }
    }
    match case {
        ThirdOpCase::Pendant => g2.connect(0, 1),
        ThirdOpCase::Anti => {
            for &y in &k[1..] {
                g2.connect(0, y);
            }
        }
    }
    apply_third_op(&g2, 0, &k, 1, v1_size).map(|(g, _)| g)
}
