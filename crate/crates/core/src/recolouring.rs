//! Explicit recolouring sequences between proper colourings of a graph
//! with a known build-tree.
//!
//! Every colouring is first driven to the canonical colouring of the tree,
//! recursing along the tree: disjoint parts are handled independently,
//! join sides are confined to disjoint sub-palettes and then renamed,
//! comparable vertices shadow their anchor, and attached cliques dodge
//! their anchor's moves before being renamed. A path between two
//! colourings is one such sequence followed by the reversal of the other.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::buildtree::{BuildTree, Node};
use crate::colouring::{classes_of, Colour, Colouring, Palette};
use crate::error::ColouringError;
use crate::graph::Graph;

/// Recolour vertex `v` with colour `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub v: usize,
    pub c: Colour,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecolouringSequence {
    initial: Colouring,
    steps: Vec<Step>,
}

impl RecolouringSequence {
    pub fn new(initial: Colouring, steps: Vec<Step>) -> Self {
        RecolouringSequence { initial, steps }
    }

    pub fn initial(&self) -> &Colouring {
        &self.initial
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of times each vertex is recoloured.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.initial.len()];
        for s in &self.steps {
            if let Some(c) = counts.get_mut(s.v) {
                *c += 1;
            }
        }
        counts
    }

    pub fn max_per_vertex(&self) -> usize {
        self.counts().into_iter().max().unwrap_or(0)
    }

    /// Assignment after all steps, without any validity checks.
    pub fn final_assignment(&self) -> Vec<Colour> {
        let mut a = self.initial.assignment().to_vec();
        for s in &self.steps {
            a[s.v] = s.c;
        }
        a
    }
}

/// Per-call diagnostics from [`to_canonical_traced`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CanonicalTrace {
    /// Largest per-vertex recolour count of each renaming performed, in order.
    pub rename_max: Vec<usize>,
}

fn sorted_set(colours: impl IntoIterator<Item = Colour>) -> Vec<Colour> {
    let set: BTreeSet<Colour> = colours.into_iter().collect();
    set.into_iter().collect()
}

fn used_on(state: &[Colour], vertices: &[usize]) -> Vec<Colour> {
    sorted_set(vertices.iter().map(|&v| state[v]))
}

/// Smallest colour of `palette` (ascending) not in `taken`.
fn smallest_absent(palette: &[Colour], taken: &[Colour]) -> Option<Colour> {
    palette.iter().copied().find(|c| !taken.contains(c))
}

/// Renames the colour classes of `state` on `vertices` to `target`,
/// recolouring each vertex at most twice. Classes must already agree.
fn rename_on(
    vertices: &[usize],
    state: &mut [Colour],
    target: &[Colour],
    palette: &[Colour],
    trace: &mut CanonicalTrace,
) -> Result<Vec<Step>, ColouringError> {
    let classes = classes_of(state, vertices.iter().copied());
    let mut want = Vec::with_capacity(classes.len());
    for class in &classes {
        let t = target[class[0]];
        if class.iter().any(|&v| target[v] != t) {
            return Err(ColouringError::PartitionMismatch);
        }
        want.push(t);
    }
    if sorted_set(want.iter().copied()).len() != want.len() {
        return Err(ColouringError::PartitionMismatch);
    }
    if palette.len() <= classes.len() {
        return Err(ColouringError::PaletteTooSmall {
            classes: classes.len(),
            got: palette.len(),
        });
    }
    for &c in want.iter().chain(vertices.iter().map(|&v| &state[v])) {
        if !palette.contains(&c) {
            return Err(ColouringError::ColourNotPermitted(c));
        }
    }

    let mut cur: Vec<Colour> = classes.iter().map(|cl| state[cl[0]]).collect();
    let mut steps = Vec::new();
    let mut recoloured = vec![0usize; classes.len()];
    let mut recolour = |i: usize, c: Colour, cur: &mut Vec<Colour>, state: &mut [Colour]| {
        for &v in &classes[i] {
            steps.push(Step { v, c });
            state[v] = c;
        }
        cur[i] = c;
        recoloured[i] += 1;
    };
    loop {
        let pending: Vec<usize> = (0..classes.len()).filter(|&i| cur[i] != want[i]).collect();
        let Some(&first) = pending.first() else {
            break;
        };
        // a class whose target colour is free can move straight there
        match pending.iter().copied().find(|&i| !cur.contains(&want[i])) {
            Some(i) => recolour(i, want[i], &mut cur, state),
            None => {
                // only cycles remain: park one class on an unused colour
                let free = smallest_absent(palette, &cur).expect("palette larger than class count");
                recolour(first, free, &mut cur, state);
            }
        }
    }
    trace.rename_max.push(recoloured.into_iter().max().unwrap_or(0));
    Ok(steps)
}

/// Transforms `alpha` into `beta`, which must induce the same colour
/// classes, using colours from `palette` only.
pub fn rename(alpha: &Colouring, beta: &Colouring, palette: &Palette) -> Result<RecolouringSequence, ColouringError> {
    if alpha.len() != beta.len() {
        return Err(ColouringError::LengthMismatch {
            expected: alpha.len(),
            got: beta.len(),
        });
    }
    for &c in alpha.palette().colours().iter().chain(beta.palette().colours()) {
        if !palette.contains(c) {
            return Err(ColouringError::ColourNotPermitted(c));
        }
    }
    let vertices: Vec<usize> = (0..alpha.len()).collect();
    let mut state = alpha.assignment().to_vec();
    let steps = rename_on(
        &vertices,
        &mut state,
        beta.assignment(),
        &palette.sorted(),
        &mut CanonicalTrace::default(),
    )?;
    Ok(RecolouringSequence::new(alpha.with_palette(palette.clone())?, steps))
}

/// Drives the colouring of `t`'s vertices in `state` to the canonical
/// colouring with respect to `order`, using only colours of `palette`
/// (ascending, at least `χ + 1` of them, containing `order`).
fn canonicalize(
    t: &BuildTree,
    state: &mut [Colour],
    palette: &[Colour],
    order: &[Colour],
    trace: &mut CanonicalTrace,
) -> Result<Vec<Step>, ColouringError> {
    debug_assert_eq!(order.len(), t.chi());
    debug_assert!(palette.len() > t.chi());
    match t.node() {
        Node::Leaf(v) => {
            if state[*v] == order[0] {
                return Ok(Vec::new());
            }
            state[*v] = order[0];
            Ok(vec![Step { v: *v, c: order[0] }])
        }
        Node::Union(l, r) => {
            let mut steps = canonicalize(l, state, palette, &order[..l.chi()], trace)?;
            steps.extend(canonicalize(r, state, palette, &order[..r.chi()], trace)?);
            Ok(steps)
        }
        Node::Join(l, r) => {
            let used_l = used_on(state, l.vertices());
            let used_r = used_on(state, r.vertices());
            let mut steps = Vec::new();
            if used_l.len() == l.chi() && used_r.len() == r.chi() {
                // both sides tight: lend each side one colour unused by G
                let spare = smallest_absent(palette, &used_on(state, t.vertices())).expect("|S| > χ");
                let sub = sorted_set(used_l.iter().copied().chain([spare]));
                steps.extend(canonicalize(l, state, &sub, &used_l[..l.chi()], trace)?);
                let spare = smallest_absent(palette, &used_on(state, t.vertices())).expect("|S| > χ");
                let sub = sorted_set(used_r.iter().copied().chain([spare]));
                steps.extend(canonicalize(r, state, &sub, &used_r[..r.chi()], trace)?);
            } else {
                // the side with a surplus goes first and frees a colour for the other
                let (first, first_used, second, second_used) = if used_l.len() > l.chi() {
                    (l, &used_l, r, &used_r)
                } else {
                    (r, &used_r, l, &used_l)
                };
                steps.extend(canonicalize(
                    first,
                    state,
                    first_used,
                    &first_used[..first.chi()],
                    trace,
                )?);
                let now = used_on(state, first.vertices());
                let freed = smallest_absent(first_used, &now).expect("surplus colour is released");
                let sub = sorted_set(second_used.iter().copied().chain([freed]));
                steps.extend(canonicalize(second, state, &sub, &second_used[..second.chi()], trace)?);
            }
            let mut target = state.to_vec();
            t.canonical_into(order, &mut target);
            steps.extend(rename_on(t.vertices(), state, &target, palette, trace)?);
            Ok(steps)
        }
        Node::Comparable { child, u, v, .. } => {
            let mut steps = Vec::new();
            if state[*u] != state[*v] {
                state[*u] = state[*v];
                steps.push(Step { v: *u, c: state[*v] });
            }
            for s in canonicalize(child, state, palette, order, trace)? {
                steps.push(s);
                if s.v == *v {
                    steps.push(Step { v: *u, c: s.c });
                }
            }
            state[*u] = state[*v];
            Ok(steps)
        }
        Node::CliqueAttach { child, z, q } => {
            let mut anchor = state[*z];
            let inner = canonicalize(child, state, palette, &order[..child.chi()], trace)?;
            let mut steps = Vec::with_capacity(inner.len());
            let mut by_index = q.clone();
            by_index.sort_unstable();
            for s in inner {
                if s.v == *z {
                    if let Some(&blocker) = by_index.iter().find(|&&x| state[x] == s.c) {
                        let mut seen: Vec<Colour> = q.iter().map(|&x| state[x]).collect();
                        seen.push(anchor);
                        seen.push(s.c);
                        let dodge = smallest_absent(palette, &seen).expect("|S| >= |Q| + 2");
                        state[blocker] = dodge;
                        steps.push(Step { v: blocker, c: dodge });
                    }
                    anchor = s.c;
                }
                steps.push(s);
            }
            let anchor_colour = state[*z];
            let rest: Vec<Colour> = order.iter().copied().filter(|&c| c != anchor_colour).collect();
            let mut target = state.to_vec();
            for (i, &x) in q.iter().enumerate() {
                target[x] = rest[i];
            }
            let sub: Vec<Colour> = palette.iter().copied().filter(|&c| c != anchor_colour).collect();
            steps.extend(rename_on(&by_index, state, &target, &sub, trace)?);
            Ok(steps)
        }
    }
}

/// Checks the shared preconditions and returns the replayed graph and the
/// ascending permissible set.
fn prepare(t: &BuildTree, alpha: &Colouring, palette: &Palette) -> Result<(Graph, Vec<Colour>), ColouringError> {
    let g = t.replay()?;
    alpha.check_proper(&g)?;
    if palette.len() <= t.chi() {
        return Err(ColouringError::PaletteTooSmall {
            classes: t.chi(),
            got: palette.len(),
        });
    }
    if let Some((vertex, &colour)) = alpha
        .assignment()
        .iter()
        .enumerate()
        .find(|(_, c)| !palette.contains(**c))
    {
        return Err(ColouringError::ColourOutsidePalette { vertex, colour });
    }
    Ok((g, palette.sorted()))
}

/// Recolours `alpha` into the canonical colouring of `t` with respect to
/// `order`, recolouring each vertex at most `2n` times.
pub fn to_canonical(
    t: &BuildTree,
    alpha: &Colouring,
    palette: &Palette,
    order: &Palette,
) -> Result<RecolouringSequence, ColouringError> {
    to_canonical_traced(t, alpha, palette, order).map(|(seq, _)| seq)
}

pub fn to_canonical_traced(
    t: &BuildTree,
    alpha: &Colouring,
    palette: &Palette,
    order: &Palette,
) -> Result<(RecolouringSequence, CanonicalTrace), ColouringError> {
    let (_, sorted) = prepare(t, alpha, palette)?;
    if order.len() != t.chi() {
        return Err(ColouringError::PaletteSize {
            expected: t.chi(),
            got: order.len(),
        });
    }
    if let Some(&c) = order.colours().iter().find(|&&c| !palette.contains(c)) {
        return Err(ColouringError::ColourNotPermitted(c));
    }
    let mut state = alpha.assignment().to_vec();
    let mut trace = CanonicalTrace::default();
    let steps = canonicalize(t, &mut state, &sorted, order.colours(), &mut trace)?;
    Ok((
        RecolouringSequence::new(alpha.with_palette(palette.clone())?, steps),
        trace,
    ))
}

/// The default ordered colour set: the `χ` smallest permissible colours.
pub fn default_order(t: &BuildTree, palette: &Palette) -> Palette {
    Palette::new(palette.sorted().into_iter().take(t.chi()).collect()).expect("palette colours are distinct")
}

/// Steps that undo `steps` (applied from `start`) in reverse order.
fn reversed(start: &[Colour], steps: &[Step]) -> Vec<Step> {
    let mut state = start.to_vec();
    let mut undo = Vec::with_capacity(steps.len());
    for s in steps {
        undo.push(Step { v: s.v, c: state[s.v] });
        state[s.v] = s.c;
    }
    undo.reverse();
    undo
}

/// Drops adjacent pairs where a vertex is recoloured and immediately
/// recoloured back.
fn cancel_backtracks(start: &[Colour], steps: impl IntoIterator<Item = Step>) -> Vec<Step> {
    let mut state = start.to_vec();
    // (step, colour the vertex had before it)
    let mut kept: Vec<(Step, Colour)> = Vec::new();
    for s in steps {
        let before = state[s.v];
        state[s.v] = s.c;
        match kept.last() {
            Some(&(top, prev)) if top.v == s.v && prev == s.c => {
                kept.pop();
            }
            _ => kept.push((s, before)),
        }
    }
    kept.into_iter().map(|(s, _)| s).collect()
}

/// A recolouring sequence from `alpha` to `beta` of length at most `4n^2`.
pub fn find_path(
    t: &BuildTree,
    alpha: &Colouring,
    beta: &Colouring,
    palette: &Palette,
) -> Result<RecolouringSequence, ColouringError> {
    let order = default_order(t, palette);
    let there = to_canonical(t, alpha, palette, &order)?;
    let back = to_canonical(t, beta, palette, &order)?;
    let undo = reversed(beta.assignment(), back.steps());
    let steps = cancel_backtracks(alpha.assignment(), there.steps().iter().copied().chain(undo));
    Ok(RecolouringSequence::new(alpha.with_palette(palette.clone())?, steps))
}

/// Outcome of replaying a sequence against a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub length: usize,
    pub max_per_vertex: usize,
    /// Index of the first offending step; `None` when valid or when the
    /// initial colouring itself is bad.
    pub first_invalid_step: Option<usize>,
    pub reason: Option<String>,
}

/// Replays `seq` on `g`, checking that every step recolours one vertex to a
/// different permissible colour and that the colouring stays proper.
pub fn verify_sequence(g: &Graph, seq: &RecolouringSequence) -> VerifyReport {
    let fail = |idx: Option<usize>, reason: String| VerifyReport {
        valid: false,
        length: seq.len(),
        max_per_vertex: seq.max_per_vertex(),
        first_invalid_step: idx,
        reason: Some(reason),
    };
    if let Err(e) = seq.initial.check_proper(g) {
        return fail(None, format!("initial colouring: {e}"));
    }
    let palette = seq.initial.palette();
    let mut state = seq.initial.assignment().to_vec();
    for (i, s) in seq.steps.iter().enumerate() {
        if s.v >= g.n() {
            return fail(Some(i), format!("vertex {} out of range", s.v));
        }
        if !palette.contains(s.c) {
            return fail(Some(i), format!("colour {} not in palette", s.c));
        }
        if state[s.v] == s.c {
            return fail(Some(i), format!("vertex {} already has colour {}", s.v, s.c));
        }
        if let Some(w) = g.neighbours(s.v).find(|&w| state[w] == s.c) {
            return fail(Some(i), format!("vertex {} would clash with neighbour {w}", s.v));
        }
        state[s.v] = s.c;
    }
    VerifyReport {
        valid: true,
        length: seq.len(),
        max_per_vertex: seq.max_per_vertex(),
        first_invalid_step: None,
        reason: None,
    }
}
