//! Build-tree certificates: the sequence of union, join, comparable-vertex
//! and clique-attachment operations that constructs a graph from single
//! vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring, Palette};
use crate::error::{ColouringError, TreeError};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf(usize),
    Union(Box<BuildTree>, Box<BuildTree>),
    Join(Box<BuildTree>, Box<BuildTree>),
    /// `u` is added non-adjacent to anchor `v` with neighbourhood `x ⊆ N(v)`.
    Comparable {
        child: Box<BuildTree>,
        u: usize,
        v: usize,
        x: Vec<usize>,
    },
    /// The clique `q` is attached to anchor `z`.
    CliqueAttach {
        child: Box<BuildTree>,
        z: usize,
        q: Vec<usize>,
    },
}

/// A build-tree node together with its (ascending) vertex set and
/// chromatic number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeRepr", into = "TreeRepr")]
pub struct BuildTree {
    node: Node,
    vertices: Vec<usize>,
    chi: usize,
}

fn disjoint_union(a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i] < b[j]);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else {
            if i < a.len() && a[i] == b[j] {
                return None;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    Some(out)
}

impl BuildTree {
    pub fn leaf(v: usize) -> Self {
        BuildTree {
            node: Node::Leaf(v),
            vertices: vec![v],
            chi: 1,
        }
    }

    pub fn union(left: BuildTree, right: BuildTree) -> Result<Self, TreeError> {
        let vertices = disjoint_union(&left.vertices, &right.vertices)
            .ok_or_else(|| TreeError::malformed("union", "children share a vertex"))?;
        let chi = left.chi.max(right.chi);
        Ok(BuildTree {
            node: Node::Union(Box::new(left), Box::new(right)),
            vertices,
            chi,
        })
    }

    pub fn join(left: BuildTree, right: BuildTree) -> Result<Self, TreeError> {
        let vertices = disjoint_union(&left.vertices, &right.vertices)
            .ok_or_else(|| TreeError::malformed("join", "children share a vertex"))?;
        let chi = left.chi + right.chi;
        Ok(BuildTree {
            node: Node::Join(Box::new(left), Box::new(right)),
            vertices,
            chi,
        })
    }

    /// `x` is sorted on construction.
    pub fn comparable(child: BuildTree, u: usize, v: usize, mut x: Vec<usize>) -> Result<Self, TreeError> {
        let name = || format!("comparable(u={u}, v={v})");
        if child.contains(u) {
            return Err(TreeError::malformed(name(), "u already in child"));
        }
        if !child.contains(v) {
            return Err(TreeError::malformed(name(), "anchor v not in child"));
        }
        x.sort_unstable();
        if x.windows(2).any(|w| w[0] == w[1]) {
            return Err(TreeError::malformed(name(), "X has duplicates"));
        }
        if let Some(bad) = x.iter().find(|&&y| !child.contains(y)) {
            return Err(TreeError::malformed(name(), format!("X vertex {bad} not in child")));
        }
        let vertices = disjoint_union(&child.vertices, &[u]).expect("u checked absent");
        let chi = child.chi;
        Ok(BuildTree {
            node: Node::Comparable {
                child: Box::new(child),
                u,
                v,
                x,
            },
            vertices,
            chi,
        })
    }

    /// `q` keeps the given order; it fixes the canonical colouring of the clique.
    pub fn clique_attach(child: BuildTree, z: usize, q: Vec<usize>) -> Result<Self, TreeError> {
        let name = || format!("clique(z={z})");
        if q.is_empty() {
            return Err(TreeError::malformed(name(), "Q is empty"));
        }
        if !child.contains(z) {
            return Err(TreeError::malformed(name(), "anchor z not in child"));
        }
        let mut sorted = q.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(TreeError::malformed(name(), "Q has duplicates"));
        }
        let vertices = disjoint_union(&child.vertices, &sorted)
            .ok_or_else(|| TreeError::malformed(name(), "Q intersects child"))?;
        let chi = child.chi.max(q.len() + 1);
        Ok(BuildTree {
            node: Node::CliqueAttach {
                child: Box::new(child),
                z,
                q,
            },
            vertices,
            chi,
        })
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    /// Vertex set, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Chromatic number of the graph this tree builds.
    pub fn chi(&self) -> usize {
        self.chi
    }

    /// `(χ, ω)` from the composition rules of the four operations.
    pub fn chi_omega(&self) -> (usize, usize) {
        fn omega(t: &BuildTree) -> usize {
            match &t.node {
                Node::Leaf(_) => 1,
                Node::Union(l, r) => omega(l).max(omega(r)),
                Node::Join(l, r) => omega(l) + omega(r),
                Node::Comparable { child, .. } => omega(child),
                Node::CliqueAttach { child, q, .. } => omega(child).max(q.len() + 1),
            }
        }
        (self.chi, omega(self))
    }

    /// Materializes the graph. The vertex set must be exactly `0..n`.
    pub fn replay(&self) -> Result<Graph, TreeError> {
        let n = self.vertices.len();
        if self.vertices.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(TreeError::malformed("root", format!("vertex set is not 0..{n}")));
        }
        let mut g = Graph::new(n).map_err(|e| TreeError::malformed("root", e.to_string()))?;
        self.replay_into(&mut g)?;
        Ok(g)
    }

    fn replay_into(&self, g: &mut Graph) -> Result<(), TreeError> {
        match &self.node {
            Node::Leaf(_) => {}
            Node::Union(l, r) => {
                l.replay_into(g)?;
                r.replay_into(g)?;
            }
            Node::Join(l, r) => {
                l.replay_into(g)?;
                r.replay_into(g)?;
                for &a in &l.vertices {
                    for &b in &r.vertices {
                        g.connect(a, b);
                    }
                }
            }
            Node::Comparable { child, u, v, x } => {
                child.replay_into(g)?;
                if let Some(bad) = x.iter().find(|&&y| !g.has_edge(*v, y)) {
                    return Err(TreeError::malformed(
                        format!("comparable(u={u}, v={v})"),
                        format!("X vertex {bad} is not a neighbour of v"),
                    ));
                }
                for &y in x {
                    g.connect(*u, y);
                }
            }
            Node::CliqueAttach { child, z, q } => {
                child.replay_into(g)?;
                for (i, &a) in q.iter().enumerate() {
                    g.connect(a, *z);
                    for &b in &q[i + 1..] {
                        g.connect(a, b);
                    }
                }
            }
        }
        Ok(())
    }

    /// True iff the tree replays to exactly `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        matches!(self.replay(), Ok(h) if &h == g)
    }

    /// The canonical colouring determined by this tree and the ordered
    /// colours `order`, which must number exactly `χ`.
    pub fn canonical_colouring(&self, order: &Palette) -> Result<Colouring, ColouringError> {
        if order.len() != self.chi {
            return Err(ColouringError::PaletteSize {
                expected: self.chi,
                got: order.len(),
            });
        }
        let n = self.vertices.len();
        if self.vertices.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(TreeError::malformed("root", format!("vertex set is not 0..{n}")).into());
        }
        let mut assignment = vec![0; n];
        self.canonical_into(order.colours(), &mut assignment);
        Colouring::new(order.clone(), assignment)
    }

    /// Writes the canonical colouring with respect to `order` into the
    /// entries of `out` belonging to this subtree.
    pub(crate) fn canonical_into(&self, order: &[Colour], out: &mut [Colour]) {
        debug_assert!(order.len() >= self.chi);
        match &self.node {
            Node::Leaf(v) => out[*v] = order[0],
            Node::Union(l, r) => {
                l.canonical_into(&order[..l.chi], out);
                r.canonical_into(&order[..r.chi], out);
            }
            Node::Join(l, r) => {
                l.canonical_into(&order[..l.chi], out);
                r.canonical_into(&order[l.chi..l.chi + r.chi], out);
            }
            Node::Comparable { child, u, v, .. } => {
                child.canonical_into(&order[..child.chi], out);
                out[*u] = out[*v];
            }
            Node::CliqueAttach { child, z, q } => {
                child.canonical_into(&order[..child.chi], out);
                let anchor = out[*z];
                let mut rest = order[..self.chi].iter().filter(|&&c| c != anchor);
                for &vertex in q {
                    out[vertex] = *rest.next().expect("chi >= |Q| + 1");
                }
            }
        }
    }

    /// Parses a tree, accepting either a bare node or a document with a
    /// `tree` field. Deeply nested trees are allowed.
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let mut de = serde_json::Deserializer::from_str(text);
        de.disable_recursion_limit();
        let value = serde_json::Value::deserialize(&mut de)?;
        de.end()?;
        let value = match value {
            serde_json::Value::Object(mut map) if map.contains_key("tree") => map.remove("tree").expect("checked"),
            v => v,
        };
        let repr = TreeRepr::deserialize(value)?;
        BuildTree::try_from(repr).map_err(serde::de::Error::custom)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(TreeRepr::from(self.clone())).expect("tree serialization is infallible")
    }
}

impl fmt::Display for BuildTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Leaf(v) => write!(f, "{v}"),
            Node::Union(l, r) => write!(f, "({l} + {r})"),
            Node::Join(l, r) => write!(f, "({l} * {r})"),
            Node::Comparable { child, u, v, .. } => write!(f, "cmp[{u}~{v}]({child})"),
            Node::CliqueAttach { child, z, q } => write!(f, "clq[{z}:{q:?}]({child})"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum TreeRepr {
    Leaf {
        v: usize,
    },
    Union {
        left: Box<TreeRepr>,
        right: Box<TreeRepr>,
    },
    Join {
        left: Box<TreeRepr>,
        right: Box<TreeRepr>,
    },
    Comparable {
        child: Box<TreeRepr>,
        u: usize,
        v: usize,
        #[serde(rename = "X")]
        x: Vec<usize>,
    },
    Clique {
        child: Box<TreeRepr>,
        z: usize,
        #[serde(rename = "Q")]
        q: Vec<usize>,
    },
}

impl TryFrom<TreeRepr> for BuildTree {
    type Error = TreeError;

    fn try_from(r: TreeRepr) -> Result<Self, Self::Error> {
        Ok(match r {
            TreeRepr::Leaf { v } => BuildTree::leaf(v),
            TreeRepr::Union { left, right } => BuildTree::union((*left).try_into()?, (*right).try_into()?)?,
            TreeRepr::Join { left, right } => BuildTree::join((*left).try_into()?, (*right).try_into()?)?,
            TreeRepr::Comparable { child, u, v, x } => BuildTree::comparable((*child).try_into()?, u, v, x)?,
            TreeRepr::Clique { child, z, q } => BuildTree::clique_attach((*child).try_into()?, z, q)?,
        })
    }
}

impl From<BuildTree> for TreeRepr {
    fn from(t: BuildTree) -> Self {
        match t.node {
            Node::Leaf(v) => TreeRepr::Leaf { v },
            Node::Union(l, r) => TreeRepr::Union {
                left: Box::new((*l).into()),
                right: Box::new((*r).into()),
            },
            Node::Join(l, r) => TreeRepr::Join {
                left: Box::new((*l).into()),
                right: Box::new((*r).into()),
            },
            Node::Comparable { child, u, v, x } => TreeRepr::Comparable {
                child: Box::new((*child).into()),
                u,
                v,
                x,
            },
            Node::CliqueAttach { child, z, q } => TreeRepr::Clique {
                child: Box::new((*child).into()),
                z,
                q,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(v: usize) -> BuildTree {
        BuildTree::leaf(v)
    }

    fn k(n: usize) -> BuildTree {
        (1..n).fold(leaf(0), |t, v| BuildTree::join(t, leaf(v)).unwrap())
    }

    #[test]
    fn replay_examples() {
        let g = leaf(0).replay().unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));
        let k2 = BuildTree::join(leaf(0), leaf(1)).unwrap().replay().unwrap();
        assert!(k2.has_edge(0, 1));
        let tri = BuildTree::clique_attach(leaf(0), 0, vec![1, 2])
            .unwrap()
            .replay()
            .unwrap();
        assert_eq!(tri, Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap());
    }

    #[test]
    fn replay_rejects_bad_comparable_neighbourhood() {
        let t = BuildTree::comparable(BuildTree::union(leaf(0), leaf(1)).unwrap(), 2, 0, vec![1]).unwrap();
        match t.replay() {
            Err(TreeError::Malformed { node, .. }) => assert!(node.contains("u=2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn replay_requires_dense_labels() {
        let t = BuildTree::join(leaf(0), leaf(2)).unwrap();
        assert!(t.replay().is_err());
    }

    #[test]
    fn structural_checks() {
        assert!(BuildTree::union(leaf(0), leaf(0)).is_err());
        assert!(BuildTree::comparable(leaf(0), 0, 0, vec![]).is_err());
        assert!(BuildTree::comparable(leaf(0), 1, 2, vec![]).is_err());
        assert!(BuildTree::clique_attach(leaf(0), 0, vec![0]).is_err());
        assert!(BuildTree::clique_attach(leaf(0), 0, vec![]).is_err());
        assert!(BuildTree::clique_attach(leaf(0), 3, vec![1]).is_err());
    }

    #[test]
    fn chi_omega_examples() {
        assert_eq!(BuildTree::join(leaf(0), leaf(1)).unwrap().chi_omega(), (2, 2));
        let t = BuildTree::clique_attach(k(4), 0, vec![4, 5, 6]).unwrap();
        assert_eq!(t.chi_omega(), (4, 4));
        let t = BuildTree::clique_attach(k(2), 0, vec![2, 3, 4]).unwrap();
        assert_eq!(t.chi_omega(), (4, 4));
    }

    #[test]
    fn canonical_examples() {
        let k2 = BuildTree::join(leaf(0), leaf(1)).unwrap();
        let c = k2.canonical_colouring(&Palette::first(2)).unwrap();
        assert_eq!(c.assignment(), &[1, 2]);

        let p3 = BuildTree::join(BuildTree::union(leaf(0), leaf(2)).unwrap(), leaf(1)).unwrap();
        let c = p3.canonical_colouring(&Palette::first(2)).unwrap();
        assert_eq!(c.assignment(), &[1, 2, 1]);

        let tri = BuildTree::clique_attach(leaf(0), 0, vec![1, 2]).unwrap();
        let c = tri.canonical_colouring(&Palette::first(3)).unwrap();
        assert_eq!(c.assignment(), &[1, 2, 3]);

        // the stored Q order decides which clique vertex takes which colour
        let tri = BuildTree::clique_attach(leaf(0), 0, vec![2, 1]).unwrap();
        let c = tri.canonical_colouring(&Palette::new(vec![3, 1, 2]).unwrap()).unwrap();
        assert_eq!(c.assignment(), &[3, 2, 1]);

        assert!(matches!(
            k2.canonical_colouring(&Palette::first(3)),
            Err(ColouringError::PaletteSize { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn validate_examples() {
        let k2 = BuildTree::join(leaf(0), leaf(1)).unwrap();
        assert!(k2.validate(&Graph::from_edges(2, &[(0, 1)]).unwrap()));
        assert!(!k2.validate(&Graph::new(2).unwrap()));
    }

    #[test]
    fn json_format() {
        let t = BuildTree::comparable(
            BuildTree::clique_attach(BuildTree::join(leaf(0), leaf(1)).unwrap(), 1, vec![3, 2]).unwrap(),
            4,
            0,
            vec![1],
        )
        .unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"{"op":"comparable","child":{"op":"clique","child":{"op":"join","left":{"op":"leaf","v":0},"right":{"op":"leaf","v":1}},"z":1,"Q":[3,2]},"u":4,"v":0,"X":[1]}"#
        );
        assert_eq!(BuildTree::from_json(&s).unwrap(), t);
        let wrapped = format!(r#"{{"format_version":1,"tree":{s}}}"#);
        assert_eq!(BuildTree::from_json(&wrapped).unwrap(), t);
        assert!(
            BuildTree::from_json(r#"{"op":"union","left":{"op":"leaf","v":0},"right":{"op":"leaf","v":0}}"#).is_err()
        );
    }

    #[test]
    fn deep_trees_parse() {
        let mut t = leaf(0);
        for v in 1..400 {
            t = BuildTree::clique_attach(t, v - 1, vec![v]).unwrap();
        }
        let s = t.to_json_value().to_string();
        assert_eq!(BuildTree::from_json(&s).unwrap(), t);
    }
}
