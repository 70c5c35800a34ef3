//! Brute-force ground truth for small graphs: explicit reconfiguration
//! graphs, exact chromatic and clique numbers, and an exhaustive search
//! over build-sequences.
//!
//! Nothing here shares code with the recognition or recolouring engines.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::colouring::{Colour, Palette};
use crate::error::OracleError;
use crate::graph::Graph;

pub const DEFAULT_NODE_BUDGET: u128 = 2_000_000;
pub const DEFAULT_CHI_LIMIT: usize = 16;
pub const DEFAULT_OAT_LIMIT: usize = 10;

/// The graph of all proper colourings of `g` from a palette, two colourings
/// adjacent when they differ on exactly one vertex.
#[derive(Debug, Clone)]
pub struct ReconfigGraph {
    n: usize,
    colours: Vec<Colour>,
    /// Mixed-radix code of each node, strictly increasing (vertex 0 most
    /// significant), so node order is lexicographic in the assignment.
    codes: Vec<u64>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    component: Vec<u32>,
    components: usize,
}

pub fn build_reconfig(g: &Graph, palette: &Palette) -> Result<ReconfigGraph, OracleError> {
    build_reconfig_with_budget(g, palette, DEFAULT_NODE_BUDGET)
}

pub fn build_reconfig_with_budget(g: &Graph, palette: &Palette, budget: u128) -> Result<ReconfigGraph, OracleError> {
    let n = g.n();
    let colours = palette.sorted();
    let k = colours.len();
    let bound = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if bound > budget {
        return Err(OracleError::Budget { bound, budget });
    }
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbours(v).collect()).collect();

    // digits[v] is the palette index of v's colour
    let mut codes = Vec::new();
    let mut digits = vec![0usize; n];
    enumerate(0, n, k, &nbrs, &mut digits, &mut codes);

    let weight: Vec<u64> = (0..n).map(|v| (k as u64).pow((n - 1 - v) as u32)).collect();
    let mut offsets = Vec::with_capacity(codes.len() + 1);
    let mut targets = Vec::new();
    offsets.push(0);
    for &code in &codes {
        let digits = decode(code, n, k);
        for v in 0..n {
            for d in 0..k {
                if d == digits[v] || nbrs[v].iter().any(|&w| digits[w] == d) {
                    continue;
                }
                let other = code - digits[v] as u64 * weight[v] + d as u64 * weight[v];
                let idx = codes.binary_search(&other).expect("neighbour colouring is proper");
                targets.push(idx as u32);
            }
        }
        offsets.push(targets.len());
    }

    let mut r = ReconfigGraph {
        n,
        colours,
        codes,
        offsets,
        targets,
        component: Vec::new(),
        components: 0,
    };
    r.label_components();
    Ok(r)
}

fn enumerate(v: usize, n: usize, k: usize, nbrs: &[Vec<usize>], digits: &mut Vec<usize>, out: &mut Vec<u64>) {
    if v == n {
        out.push(digits.iter().fold(0u64, |acc, &d| acc * k as u64 + d as u64));
        return;
    }
    for d in 0..k {
        if nbrs[v].iter().any(|&w| w < v && digits[w] == d) {
            continue;
        }
        digits[v] = d;
        enumerate(v + 1, n, k, nbrs, digits, out);
    }
}

fn decode(mut code: u64, n: usize, k: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for slot in d.iter_mut().rev() {
        *slot = (code % k as u64) as usize;
        code /= k as u64;
    }
    d
}

impl ReconfigGraph {
    fn label_components(&mut self) {
        let mut comp = vec![u32::MAX; self.len()];
        let mut next = 0;
        for s in 0..self.len() {
            if comp[s] != u32::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in self.neighbours(x) {
                    if comp[y as usize] == u32::MAX {
                        comp[y as usize] = next;
                        queue.push_back(y as usize);
                    }
                }
            }
            next += 1;
        }
        self.component = comp;
        self.components = next as usize;
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbours(&self, node: usize) -> &[u32] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn colouring(&self, node: usize) -> Vec<Colour> {
        decode(self.codes[node], self.n, self.colours.len())
            .into_iter()
            .map(|d| self.colours[d])
            .collect()
    }

    pub fn index_of(&self, assignment: &[Colour]) -> Option<usize> {
        if assignment.len() != self.n {
            return None;
        }
        let k = self.colours.len() as u64;
        let mut code = 0u64;
        for c in assignment {
            let d = self.colours.iter().position(|x| x == c)? as u64;
            code = code * k + d;
        }
        self.codes.binary_search(&code).ok()
    }

    pub fn component_of(&self, node: usize) -> usize {
        self.component[node] as usize
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Breadth-first distances from `source`; unreachable nodes are `None`.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].expect("queued nodes are reached");
            for &y in self.neighbours(x) {
                if dist[y as usize].is_none() {
                    dist[y as usize] = Some(d + 1);
                    queue.push_back(y as usize);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: &[Colour], b: &[Colour]) -> Option<usize> {
        let (a, b) = (self.index_of(a)?, self.index_of(b)?);
        self.distances_from(a)[b]
    }
}

/// Exact connectivity, diameter and frozen colourings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfigStats {
    pub nodes: usize,
    pub connected: bool,
    /// `None` when the reconfiguration graph is disconnected.
    pub diameter: Option<usize>,
    /// Diameter of each component, indexed by component id.
    pub component_diameters: Vec<usize>,
    pub frozen: Vec<Vec<Colour>>,
}

#[derive(Serialize)]
struct StatsJson {
    nodes: usize,
    connected: bool,
    diameter: Option<usize>,
    frozen_count: usize,
}

impl ReconfigStats {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(StatsJson {
            nodes: self.nodes,
            connected: self.connected,
            diameter: self.diameter,
            frozen_count: self.frozen.len(),
        })
        .expect("stats serialize")
    }
}

pub fn reconfig_stats(r: &ReconfigGraph) -> ReconfigStats {
    let mut component_diameters = vec![0; r.component_count()];
    for s in 0..r.len() {
        let ecc = r.distances_from(s).into_iter().flatten().max().unwrap_or(0);
        let c = r.component_of(s);
        component_diameters[c] = component_diameters[c].max(ecc);
    }
    let connected = r.component_count() == 1;
    ReconfigStats {
        nodes: r.len(),
        connected,
        diameter: connected.then(|| component_diameters[0]),
        component_diameters,
        frozen: (0..r.len())
            .filter(|&x| r.degree(x) == 0)
            .map(|x| r.colouring(x))
            .collect(),
    }
}

/// A colouring is frozen when every vertex sees every other palette colour
/// in its neighbourhood.
pub fn is_frozen(g: &Graph, palette: &Palette, assignment: &[Colour]) -> bool {
    (0..g.n()).all(|v| {
        palette
            .colours()
            .iter()
            .filter(|&&c| c != assignment[v])
            .all(|&c| g.neighbours(v).any(|w| assignment[w] == c))
    })
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbours(v).fold(0u32, |m, w| m | 1 << w))
        .collect()
}

fn check_limit(g: &Graph, limit: usize) -> Result<(), OracleError> {
    if g.n() > limit {
        return Err(OracleError::Budget {
            bound: g.n() as u128,
            budget: limit as u128,
        });
    }
    Ok(())
}

pub fn brute_chi(g: &Graph) -> Result<usize, OracleError> {
    check_limit(g, DEFAULT_CHI_LIMIT)?;
    let adj = masks(g);
    let n = g.n();
    fn colourable(v: usize, n: usize, k: usize, adj: &[u32], col: &mut Vec<usize>, used: usize) -> bool {
        if v == n {
            return true;
        }
        // symmetry: a new colour class is only ever opened as colour `used`
        for c in 0..k.min(used + 1) {
            if (0..v).any(|w| adj[v] >> w & 1 == 1 && col[w] == c) {
                continue;
            }
            col[v] = c;
            if colourable(v + 1, n, k, adj, col, used.max(c + 1)) {
                return true;
            }
        }
        false
    }
    let mut col = vec![0; n];
    Ok((1..=n)
        .find(|&k| colourable(0, n, k, &adj, &mut col, 0))
        .expect("n colours always suffice"))
}

pub fn brute_omega(g: &Graph) -> Result<usize, OracleError> {
    check_limit(g, DEFAULT_CHI_LIMIT)?;
    let adj = masks(g);
    fn grow(candidates: u32, size: usize, adj: &[u32], best: &mut usize) {
        if candidates == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        grow(candidates & adj[v], size + 1, adj, best);
        grow(candidates & !(1 << v), size, adj, best);
    }
    let mut best = 0;
    grow((1u32 << g.n()) - 1, 0, &adj, &mut best);
    Ok(best)
}

/// Decides membership by trying every way the last operation of a
/// build-sequence could have been applied, memoized over vertex subsets.
pub fn brute_is_oat(g: &Graph) -> Result<bool, OracleError> {
    check_limit(g, DEFAULT_OAT_LIMIT)?;
    let mut search = Exhaustive {
        adj: masks(g),
        memo: HashMap::new(),
    };
    Ok(search.is_oat((1u32 << g.n()) - 1))
}

struct Exhaustive {
    adj: Vec<u32>,
    memo: HashMap<u32, bool>,
}

fn bits(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

impl Exhaustive {
    fn nbr(&self, v: usize, within: u32, complement: bool) -> u32 {
        let a = if complement {
            !self.adj[v] & !(1 << v)
        } else {
            self.adj[v]
        };
        a & within
    }

    fn parts(&self, m: u32, complement: bool) -> Vec<u32> {
        let mut left = m;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = 1u32 << left.trailing_zeros();
            loop {
                let grown = bits(comp).fold(comp, |acc, v| acc | self.nbr(v, m, complement));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Some split of `parts` into two non-empty groups with both sides OAT.
    fn some_split(&mut self, parts: &[u32]) -> bool {
        if parts.len() < 2 {
            return false;
        }
        // the first part is pinned to side A so each split is seen once
        let rest = parts.len() - 1;
        for pick in 0..(1u32 << rest) - 1 {
            let mut a = parts[0];
            let mut b = 0;
            for (i, &p) in parts[1..].iter().enumerate() {
                if pick >> i & 1 == 1 {
                    a |= p;
                } else {
                    b |= p;
                }
            }
            if self.is_oat(a) && self.is_oat(b) {
                return true;
            }
        }
        false
    }

    fn is_oat(&mut self, m: u32) -> bool {
        if m.count_ones() <= 1 {
            return true;
        }
        if let Some(&r) = self.memo.get(&m) {
            return r;
        }
        let r = self.decide(m);
        self.memo.insert(m, r);
        r
    }

    fn decide(&mut self, m: u32) -> bool {
        let comps = self.parts(m, false);
        if self.some_split(&comps) {
            return true;
        }
        let cocomps = self.parts(m, true);
        if self.some_split(&cocomps) {
            return true;
        }
        // u was added comparable to some non-adjacent v
        for u in bits(m) {
            let nu = self.nbr(u, m, false);
            let comparable = bits(m).any(|v| v != u && nu >> v & 1 == 0 && nu & !self.nbr(v, m, false) == 0);
            if comparable && self.is_oat(m & !(1 << u)) {
                return true;
            }
        }
        // a clique Q was attached to z: every q in Q has closed neighbourhood Q + z
        for q0 in bits(m) {
            let closed = self.nbr(q0, m, false) | 1 << q0;
            for z in bits(self.nbr(q0, m, false)) {
                let q = closed & !(1 << z);
                let ok = bits(q).all(|x| self.nbr(x, m, false) | 1 << x == closed);
                if ok && self.is_oat(m & !q) {
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        g(n, &e)
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g(n, &e)
    }

    fn complete(n: usize) -> Graph {
        let mut e = vec![];
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        g(n, &e)
    }

    #[test]
    fn reconfig_p2() {
        let r = build_reconfig(&path(2), &Palette::first(2)).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.edge_count(), 0);

        let r = build_reconfig(&path(2), &Palette::first(3)).unwrap();
        assert_eq!(r.len(), 6);
        let st = reconfig_stats(&r);
        assert!(st.connected);
        assert_eq!(st.diameter, Some(3));
        assert!(st.frozen.is_empty());
        assert_eq!(r.colouring(0), vec![1, 2]);
        assert_eq!(r.colouring(5), vec![3, 2]);
    }

    #[test]
    fn reconfig_k3_all_frozen() {
        let k3 = complete(3);
        let s = Palette::first(3);
        let r = build_reconfig(&k3, &s).unwrap();
        let st = reconfig_stats(&r);
        assert_eq!(st.nodes, 6);
        assert!(!st.connected);
        assert_eq!(st.diameter, None);
        assert_eq!(st.frozen.len(), 6);
        assert!(st.frozen.iter().all(|a| is_frozen(&k3, &s, a)));
        let j = st.to_json_value();
        assert_eq!(j["diameter"], serde_json::Value::Null);
        assert_eq!(j["frozen_count"], 6);
    }

    #[test]
    fn budget_guard() {
        let err = build_reconfig_with_budget(&path(5), &Palette::first(3), 100).unwrap_err();
        assert_eq!(
            err,
            OracleError::Budget {
                bound: 243,
                budget: 100
            }
        );
    }

    #[test]
    fn index_round_trip() {
        let r = build_reconfig(&cycle(4), &Palette::first(3)).unwrap();
        for i in 0..r.len() {
            assert_eq!(r.index_of(&r.colouring(i)), Some(i));
        }
        assert_eq!(r.index_of(&[1, 1, 2, 3]), None);
    }

    #[test]
    fn chi_omega_examples() {
        assert_eq!((brute_chi(&cycle(5)).unwrap(), brute_omega(&cycle(5)).unwrap()), (3, 2));
        assert_eq!(
            (brute_chi(&complete(4)).unwrap(), brute_omega(&complete(4)).unwrap()),
            (4, 4)
        );
        assert_eq!((brute_chi(&path(1)).unwrap(), brute_omega(&path(1)).unwrap()), (1, 1));
        assert!(brute_chi(&path(17)).is_err());
    }

    #[test]
    fn oat_examples() {
        assert!(brute_is_oat(&path(4)).unwrap());
        assert!(!brute_is_oat(&cycle(6)).unwrap());
        assert!(!brute_is_oat(&cycle(5)).unwrap());
        assert!(brute_is_oat(&cycle(4)).unwrap());
        assert!(brute_is_oat(&complete(5)).unwrap());
        assert!(brute_is_oat(&path(11)).is_err());
    }
}
