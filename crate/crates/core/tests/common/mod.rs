#![allow(dead_code)]

use oat::{BuildTree, Colour, Colouring, Graph, Palette};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// The graph on `n` vertices whose edge set is given by the bits of `mask`,
/// pairs taken in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// A random proper colouring from `palette`: the canonical colouring on the
/// `χ` smallest colours followed by a long random walk of single recolourings.
pub fn random_colouring(g: &Graph, t: &BuildTree, palette: &Palette, rng: &mut impl Rng) -> Colouring {
    let order = oat::recolouring::default_order(t, palette);
    let mut a: Vec<Colour> = t.canonical_colouring(&order).unwrap().into_assignment();
    let n = g.n();
    let mut colours = palette.colours().to_vec();
    for _ in 0..20 * n + 20 {
        let v = rng.gen_range(0..n);
        colours.shuffle(rng);
        if let Some(&c) = colours.iter().find(|&&c| g.neighbours(v).all(|w| a[w] != c)) {
            a[v] = c;
        }
    }
    // also permute colour names, so the start is far from canonical
    let mut perm = palette.colours().to_vec();
    perm.shuffle(rng);
    let sorted = palette.sorted();
    for x in &mut a {
        let i = sorted.binary_search(x).unwrap();
        *x = perm[i];
    }
    Colouring::new(palette.clone(), a).unwrap()
}
