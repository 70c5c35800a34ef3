//! Dense simple undirected graphs and the structural queries used by
//! recognition: components, complement components, cut vertices, blocks,
//! cliques, and the adjacency-square neighbourhood-containment test.

use std::fmt;

use crate::error::GraphError;

const WORD: usize = 64;

/// A simple undirected graph on vertices `0..n`, stored as one adjacency
/// bitset row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let words = n.div_ceil(WORD);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; rejects self-loops, out-of-range endpoints and duplicates.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::OutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.set(u, v);
        self.set(v, u);
        Ok(())
    }

    /// Adds `uv` if absent. Panics on self-loops or out-of-range endpoints.
    pub(crate) fn connect(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge {u}-{v}");
        self.set(u, v);
        self.set(v, u);
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    /// Edges `(u, v)` with `u < v` in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbours(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn complement(&self) -> Graph {
        let mut h = Graph::new(self.n).expect("n >= 1");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    h.connect(u, v);
                }
            }
        }
        h
    }

    /// Subgraph induced by `keep`, relabelled so that `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut h = Graph::new(keep.len()).expect("induced subgraph must be non-empty");
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(x, y) {
                    h.connect(i, j);
                }
            }
        }
        h
    }

    /// Subgraph induced by all vertices except `drop`, relabelled in
    /// ascending order. Returns the kept original labels alongside.
    pub fn without(&self, drop: &[usize]) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|v| !drop.contains(v)).collect();
        (self.induced(&keep), keep)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Ascending iterator over the set bits of a bitset row.
pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

fn full_mask(n: usize, words: usize) -> Vec<u64> {
    let mut mask = vec![u64::MAX; words];
    let tail = n % WORD;
    if tail != 0 {
        mask[words - 1] = (1u64 << tail) - 1;
    }
    mask
}

/// Shared BFS over either the graph or its complement.
fn components_impl(g: &Graph, complement: bool) -> Vec<Vec<usize>> {
    let mut unvisited = full_mask(g.n, g.words);
    let mut out = Vec::new();
    for start in 0..g.n {
        if unvisited[start / WORD] >> (start % WORD) & 1 == 0 {
            continue;
        }
        unvisited[start / WORD] &= !(1 << (start % WORD));
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            let row = g.row(x);
            for w in 0..g.words {
                let mut hits = if complement { !row[w] } else { row[w] } & unvisited[w];
                unvisited[w] &= !hits;
                while hits != 0 {
                    let b = hits.trailing_zeros() as usize;
                    hits &= hits - 1;
                    comp.push(w * WORD + b);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Connected components, ordered by minimum vertex, each sorted ascending.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    components_impl(g, false)
}

/// Connected components of the complement, computed without building it.
pub fn complement_components(g: &Graph) -> Vec<Vec<usize>> {
    components_impl(g, true)
}

/// Cut vertices and blocks (maximal biconnected vertex sets) of `g`.
#[derive(Debug, Clone)]
pub struct BlockStructure {
    pub is_cut: Vec<bool>,
    pub blocks: Vec<Vec<usize>>,
}

/// Lowpoint depth-first search, iterative so deep paths do not overflow
/// the stack.
pub fn block_structure(g: &Graph) -> BlockStructure {
    const UNSEEN: usize = usize::MAX;
    let n = g.n;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut vstack: Vec<usize> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        vstack.push(root);
        let mut root_children = 0;
        // (vertex, parent, neighbour iterator)
        let mut stack: Vec<(usize, usize, BitIter<'_>)> = vec![(root, UNSEEN, BitIter::new(g.row(root)))];
        while let Some((v, parent, iter)) = stack.last_mut() {
            let v = *v;
            let parent = *parent;
            match iter.next() {
                Some(w) if disc[w] == UNSEEN => {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    vstack.push(w);
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, BitIter::new(g.row(w))));
                }
                Some(w) => {
                    if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                }
                None => {
                    stack.pop();
                    if parent == UNSEEN {
                        continue;
                    }
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        if parent != root {
                            is_cut[parent] = true;
                        }
                        let mut block = vec![parent];
                        loop {
                            let x = vstack.pop().expect("vertex stack underflow");
                            block.push(x);
                            if x == v {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
        vstack.clear();
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    BlockStructure { is_cut, blocks }
}

/// Vertices whose removal increases the number of components, ascending.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let bs = block_structure(g);
    (0..g.n).filter(|&v| bs.is_cut[v]).collect()
}

/// True iff every pair in `s` is adjacent. Empty sets and singletons are cliques.
pub fn is_clique(g: &Graph, s: &[usize]) -> bool {
    let k = s.len();
    let edges: usize = s
        .iter()
        .enumerate()
        .map(|(i, &x)| s[i + 1..].iter().filter(|&&y| g.has_edge(x, y)).count())
        .sum();
    edges >= k * k.saturating_sub(1) / 2
}

/// The square of the adjacency matrix: off-diagonal entries count common
/// neighbours, diagonal entries are degrees.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjSquare {
    n: usize,
    matrix: Vec<u32>,
}

impl AdjSquare {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.matrix[x * self.n + y]
    }

    #[inline]
    pub(crate) fn get_mut(&mut self, x: usize, y: usize) -> &mut u32 {
        &mut self.matrix[x * self.n + y]
    }

    pub fn degree(&self, x: usize) -> u32 {
        self.get(x, x)
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.n).map(|x| self.get(x, x)).collect()
    }

    /// Principal submatrix on `keep` (in the given order).
    pub fn submatrix(&self, keep: &[usize]) -> AdjSquare {
        let k = keep.len();
        let mut matrix = Vec::with_capacity(k * k);
        for &x in keep {
            let row = &self.matrix[x * self.n..(x + 1) * self.n];
            matrix.extend(keep.iter().map(|&y| row[y]));
        }
        AdjSquare { n: k, matrix }
    }
}

impl fmt::Debug for AdjSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = self.matrix.chunks(self.n).collect();
        f.debug_struct("AdjSquare").field("matrix", &rows).finish()
    }
}

pub fn adjacency_square(g: &Graph) -> AdjSquare {
    let n = g.n;
    let mut matrix = vec![0u32; n * n];
    for x in 0..n {
        let rx = g.row(x);
        for y in x..n {
            let ry = g.row(y);
            let c: u32 = rx.iter().zip(ry).map(|(a, b)| (a & b).count_ones()).sum();
            matrix[x * n + y] = c;
            matrix[y * n + x] = c;
        }
    }
    AdjSquare { n, matrix }
}

/// Lexicographically smallest ordered pair `(u, v)` of distinct non-adjacent
/// vertices with `N(u) ⊆ N(v)`, detected as `a2[u][v] == d(u)`.
pub fn find_comparable_pair(g: &Graph, a2: &AdjSquare) -> Option<(usize, usize)> {
    debug_assert_eq!(g.n, a2.n);
    let n = g.n;
    for u in 0..n {
        let du = a2.get(u, u);
        let row = &a2.matrix[u * n..(u + 1) * n];
        for (v, &common) in row.iter().enumerate() {
            if v != u && common == du && !g.has_edge(u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

/// A cut vertex `z` together with a component `Q` of `g - z` that is a
/// clique joined to `z`. The smallest `(z, min Q)` is returned; cliques
/// themselves yield `None`.
pub fn clique_attachment(g: &Graph) -> Option<(usize, Vec<usize>)> {
    if g.n < 2 || g.is_complete() {
        return None;
    }
    let bs = block_structure(g);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for block in &bs.blocks {
        let mut cuts = block.iter().filter(|&&v| bs.is_cut[v]);
        let (Some(&z), None) = (cuts.next(), cuts.next()) else {
            continue;
        };
        if !is_clique(g, block) {
            continue;
        }
        let q: Vec<usize> = block.iter().copied().filter(|&v| v != z).collect();
        let better = match &best {
            None => true,
            Some((bz, bq)) => (z, q[0]) < (*bz, bq[0]),
        };
        if better {
            best = Some((z, q));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    fn p3() -> Graph {
        g(3, &[(0, 1), (1, 2)])
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g(n, &e)
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(0), Err(GraphError::Empty)));
        let mut h = Graph::new(3).unwrap();
        assert!(matches!(h.add_edge(1, 1), Err(GraphError::SelfLoop(1))));
        assert!(matches!(h.add_edge(0, 3), Err(GraphError::OutOfRange { .. })));
        h.add_edge(2, 0).unwrap();
        assert!(matches!(h.add_edge(0, 2), Err(GraphError::DuplicateEdge(0, 2))));
    }

    #[test]
    fn components_examples() {
        assert_eq!(connected_components(&p3()), vec![vec![0, 1, 2]]);
        assert_eq!(connected_components(&Graph::new(2).unwrap()), vec![vec![0], vec![1]]);
        let k3k2 = g(5, &[(0, 1), (0, 2), (1, 2), (3, 4)]);
        assert_eq!(connected_components(&k3k2), vec![vec![0, 1, 2], vec![3, 4]]);
    }

    #[test]
    fn complement_components_examples() {
        assert_eq!(complement_components(&p3()), vec![vec![0, 2], vec![1]]);
        assert_eq!(complement_components(&g(2, &[(0, 1)])), vec![vec![0], vec![1]]);
        assert_eq!(complement_components(&cycle(5)), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn components_span_word_boundary() {
        let n = 130;
        let e: Vec<_> = (0..n - 1).filter(|&i| i != 64).map(|i| (i, i + 1)).collect();
        let h = g(n, &e);
        let cc = connected_components(&h);
        assert_eq!(cc.len(), 2);
        assert_eq!(cc[1][0], 65);
        assert_eq!(complement_components(&h).len(), 1);
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(cut_vertices(&p3()), vec![1]);
        assert!(cut_vertices(&cycle(4)).is_empty());
        let bowtie = g(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]);
        assert_eq!(cut_vertices(&bowtie), vec![0]);
        let bs = block_structure(&bowtie);
        let mut blocks = bs.blocks.clone();
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![0, 3, 4]]);
    }

    #[test]
    fn clique_examples() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(is_clique(&k4, &[0, 1, 2, 3]));
        assert!(!is_clique(&p3(), &[0, 2]));
        assert!(is_clique(&p3(), &[2]));
        assert!(is_clique(&p3(), &[]));
    }

    #[test]
    fn adjacency_square_examples() {
        let a = adjacency_square(&p3());
        assert_eq!(a.get(0, 2), 1);
        assert_eq!(a.get(0, 0), 1);
        assert_eq!(a.get(1, 1), 2);
        let k3 = adjacency_square(&g(3, &[(0, 1), (0, 2), (1, 2)]));
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(k3.get(x, y), if x == y { 2 } else { 1 });
            }
        }
        let e = adjacency_square(&Graph::new(3).unwrap());
        assert!((0..3).all(|x| (0..3).all(|y| e.get(x, y) == 0)));
    }

    #[test]
    fn comparable_pair_examples() {
        let h = p3();
        assert_eq!(find_comparable_pair(&h, &adjacency_square(&h)), Some((0, 2)));
        let c6 = cycle(6);
        assert_eq!(find_comparable_pair(&c6, &adjacency_square(&c6)), None);
        let star = g(3, &[(0, 1), (0, 2)]);
        assert_eq!(find_comparable_pair(&star, &adjacency_square(&star)), Some((1, 2)));
    }

    #[test]
    fn clique_attachment_examples() {
        // triangle {1,2,3} fully joined to 0, which also carries the path 0-4-5
        let h = g(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 5)]);
        assert_eq!(clique_attachment(&h), Some((0, vec![1, 2, 3])));
        assert_eq!(clique_attachment(&p3()), Some((1, vec![0])));
        assert_eq!(clique_attachment(&cycle(4)), None);
        let k3 = g(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(clique_attachment(&k3), None);
    }

    #[test]
    fn edges_are_sorted() {
        let h = g(4, &[(3, 2), (1, 0), (0, 3)]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (2, 3)]);
        assert_eq!(h.edge_count(), 3);
    }
}
