//! Greedy deconstruction: peel off components, co-components, comparable
//! vertices and attached cliques until single vertices remain, keeping the
//! adjacency square up to date in quadratic time per step.

use crate::buildtree::BuildTree;
use crate::error::StepError;
use crate::graph::{
    adjacency_square, clique_attachment, complement_components, connected_components, find_comparable_pair, is_clique,
    AdjSquare, Graph,
};

/// Result of recognition: a certificate, or the induced subgraph on which
/// no operation could be undone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Oat(BuildTree),
    Stuck {
        graph: Graph,
        /// Original labels of the stuck subgraph's vertices, ascending.
        labels: Vec<usize>,
    },
}

impl Outcome {
    pub fn is_oat(&self) -> bool {
        matches!(self, Outcome::Oat(_))
    }

    pub fn tree(&self) -> Option<&BuildTree> {
        match self {
            Outcome::Oat(t) => Some(t),
            Outcome::Stuck { .. } => None,
        }
    }
}

/// One deconstruction move, in local vertex indices of the current graph.
#[derive(Debug, Clone, Copy)]
pub enum DeconstructionStep<'a> {
    /// Keep one connected component (or a union of them).
    Component { keep: &'a [usize] },
    /// Keep one side of a join; everything else is joined to it.
    JoinSide { keep: &'a [usize] },
    /// Delete a vertex comparable to some other vertex.
    Comparable { u: usize },
    /// Delete a clique attached to the cut vertex `z`.
    Clique { z: usize, q: &'a [usize] },
}

fn complement_of(n: usize, set: &[usize]) -> Vec<usize> {
    let mut mark = vec![false; n];
    for &v in set {
        mark[v] = true;
    }
    (0..n).filter(|&v| !mark[v]).collect()
}

fn check_sorted_subset(n: usize, set: &[usize]) -> Result<(), StepError> {
    if set.is_empty() {
        return Err(StepError("empty vertex set".into()));
    }
    if set.windows(2).any(|w| w[0] >= w[1]) || set[set.len() - 1] >= n {
        return Err(StepError("vertex set must be ascending and in range".into()));
    }
    Ok(())
}

/// Adjacency square of the graph left after `step`, derived from the
/// current one in `O(n^2)`. The result is indexed by the surviving
/// vertices in ascending order.
pub fn a2_after_step(g: &Graph, a2: &AdjSquare, step: DeconstructionStep<'_>) -> Result<AdjSquare, StepError> {
    let n = g.n();
    if a2.n() != n {
        return Err(StepError(format!("matrix is {}x{0}, graph has {n} vertices", a2.n())));
    }
    match step {
        DeconstructionStep::Component { keep } => {
            check_sorted_subset(n, keep)?;
            let rest = complement_of(n, keep);
            if keep.iter().any(|&x| rest.iter().any(|&y| g.has_edge(x, y))) {
                return Err(StepError("kept set has edges to the removed vertices".into()));
            }
            Ok(a2.submatrix(keep))
        }
        DeconstructionStep::JoinSide { keep } => {
            check_sorted_subset(n, keep)?;
            let rest = complement_of(n, keep);
            if keep.iter().any(|&x| rest.iter().any(|&y| !g.has_edge(x, y))) {
                return Err(StepError("kept set is not joined to the removed vertices".into()));
            }
            let removed = rest.len() as u32;
            let mut out = a2.submatrix(keep);
            let k = keep.len();
            for x in 0..k {
                for y in 0..k {
                    *out.get_mut(x, y) -= removed;
                }
            }
            Ok(out)
        }
        DeconstructionStep::Comparable { u } => {
            if u >= n || n < 2 {
                return Err(StepError(format!("vertex {u} cannot be removed")));
            }
            let keep: Vec<usize> = (0..n).filter(|&v| v != u).collect();
            let mut out = a2.submatrix(&keep);
            // local index of an original vertex after deleting u
            let shift = |x: usize| if x > u { x - 1 } else { x };
            let nbrs: Vec<usize> = g.neighbours(u).map(shift).collect();
            for &x in &nbrs {
                for &y in &nbrs {
                    *out.get_mut(x, y) -= 1;
                }
            }
            Ok(out)
        }
        DeconstructionStep::Clique { z, q } => {
            check_sorted_subset(n, q)?;
            if z >= n || q.contains(&z) {
                return Err(StepError(format!("anchor {z} is invalid")));
            }
            if !is_clique(g, q) || q.iter().any(|&x| !g.has_edge(x, z) || g.degree(x) != q.len()) {
                return Err(StepError("Q is not a clique attached only to z".into()));
            }
            let keep = complement_of(n, q);
            let mut out = a2.submatrix(&keep);
            let zl = keep.binary_search(&z).expect("z kept");
            *out.get_mut(zl, zl) -= q.len() as u32;
            Ok(out)
        }
    }
}

pub fn recognize(g: &Graph) -> Outcome {
    recognize_traced(g, &mut |_, _| {})
}

/// Like [`recognize`], calling `observe` with every intermediate graph and
/// its incrementally maintained adjacency square.
pub fn recognize_traced(g: &Graph, observe: &mut dyn FnMut(&Graph, &AdjSquare)) -> Outcome {
    let labels: Vec<usize> = (0..g.n()).collect();
    match deconstruct(g.clone(), labels, adjacency_square(g), observe) {
        Ok(t) => Outcome::Oat(t),
        Err((graph, labels)) => Outcome::Stuck { graph, labels },
    }
}

enum Wrap {
    Comparable { u: usize, v: usize, x: Vec<usize> },
    Clique { z: usize, q: Vec<usize> },
}

type Stuck = (Graph, Vec<usize>);

fn deconstruct(
    mut g: Graph,
    mut labels: Vec<usize>,
    mut a2: AdjSquare,
    observe: &mut dyn FnMut(&Graph, &AdjSquare),
) -> Result<BuildTree, Stuck> {
    // Comparable and clique moves shrink the graph by a chain of single
    // children; they are unwound iteratively to keep recursion shallow.
    let mut wraps: Vec<Wrap> = Vec::new();
    let core = loop {
        observe(&g, &a2);
        let n = g.n();
        if n == 1 {
            break BuildTree::leaf(labels[0]);
        }

        let parts = connected_components(&g);
        if parts.len() > 1 {
            break split(&g, &labels, &a2, &parts, false, observe)?;
        }
        let parts = complement_components(&g);
        if parts.len() > 1 {
            break split(&g, &labels, &a2, &parts, true, observe)?;
        }

        if let Some((u, v)) = find_comparable_pair(&g, &a2) {
            let x = g.neighbours(u).map(|y| labels[y]).collect();
            wraps.push(Wrap::Comparable {
                u: labels[u],
                v: labels[v],
                x,
            });
            a2 = a2_after_step(&g, &a2, DeconstructionStep::Comparable { u }).expect("comparable step is consistent");
            let (h, keep) = g.without(&[u]);
            labels = keep.iter().map(|&i| labels[i]).collect();
            g = h;
            continue;
        }

        if let Some((z, q)) = clique_attachment(&g) {
            wraps.push(Wrap::Clique {
                z: labels[z],
                q: q.iter().map(|&i| labels[i]).collect(),
            });
            a2 = a2_after_step(&g, &a2, DeconstructionStep::Clique { z, q: &q }).expect("clique step is consistent");
            let (h, keep) = g.without(&q);
            labels = keep.iter().map(|&i| labels[i]).collect();
            g = h;
            continue;
        }

        return Err((g, labels));
    };

    let mut tree = core;
    for w in wraps.into_iter().rev() {
        tree = match w {
            Wrap::Comparable { u, v, x } => BuildTree::comparable(tree, u, v, x),
            Wrap::Clique { z, q } => BuildTree::clique_attach(tree, z, q),
        }
        .expect("deconstruction yields a well-formed tree");
    }
    Ok(tree)
}

/// Recurses on each part and folds the results left to right.
fn split(
    g: &Graph,
    labels: &[usize],
    a2: &AdjSquare,
    parts: &[Vec<usize>],
    join: bool,
    observe: &mut dyn FnMut(&Graph, &AdjSquare),
) -> Result<BuildTree, Stuck> {
    let mut acc: Option<BuildTree> = None;
    for part in parts {
        let step = if join {
            DeconstructionStep::JoinSide { keep: part }
        } else {
            DeconstructionStep::Component { keep: part }
        };
        let sub_a2 = a2_after_step(g, a2, step).expect("split step is consistent");
        let sub = g.induced(part);
        let sub_labels = part.iter().map(|&i| labels[i]).collect();
        let t = deconstruct(sub, sub_labels, sub_a2, observe)?;
        acc = Some(match acc {
            None => t,
            Some(prev) if join => BuildTree::join(prev, t).expect("disjoint parts"),
            Some(prev) => BuildTree::union(prev, t).expect("disjoint parts"),
        });
    }
    Ok(acc.expect("at least two parts"))
}
