//! Palettes and vertex colourings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::ColouringError;
use crate::graph::Graph;

pub type Colour = u32;

/// An ordered list of distinct colours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Colour>", into = "Vec<Colour>")]
pub struct Palette(Vec<Colour>);

impl Palette {
    pub fn new(colours: Vec<Colour>) -> Result<Self, ColouringError> {
        let mut seen = BTreeSet::new();
        for &c in &colours {
            if !seen.insert(c) {
                return Err(ColouringError::DuplicatePaletteColour(c));
            }
        }
        Ok(Palette(colours))
    }

    /// The palette `1, 2, ..., k`.
    pub fn first(k: usize) -> Self {
        Palette((1..=k as Colour).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: Colour) -> bool {
        self.0.contains(&c)
    }

    pub fn colours(&self) -> &[Colour] {
        &self.0
    }

    /// Colours in ascending order, independent of the stored order.
    pub fn sorted(&self) -> Vec<Colour> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

impl TryFrom<Vec<Colour>> for Palette {
    type Error = ColouringError;

    fn try_from(v: Vec<Colour>) -> Result<Self, Self::Error> {
        Palette::new(v)
    }
}

impl From<Palette> for Vec<Colour> {
    fn from(p: Palette) -> Self {
        p.0
    }
}

/// A total assignment of palette colours to vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColouringRepr", into = "ColouringRepr")]
pub struct Colouring {
    palette: Palette,
    assignment: Vec<Colour>,
}

#[derive(Serialize, Deserialize)]
struct ColouringRepr {
    palette: Palette,
    assignment: Vec<Colour>,
}

impl TryFrom<ColouringRepr> for Colouring {
    type Error = ColouringError;

    fn try_from(r: ColouringRepr) -> Result<Self, Self::Error> {
        Colouring::new(r.palette, r.assignment)
    }
}

impl From<Colouring> for ColouringRepr {
    fn from(c: Colouring) -> Self {
        ColouringRepr {
            palette: c.palette,
            assignment: c.assignment,
        }
    }
}

impl Colouring {
    pub fn new(palette: Palette, assignment: Vec<Colour>) -> Result<Self, ColouringError> {
        if let Some((vertex, &colour)) = assignment.iter().enumerate().find(|(_, c)| !palette.contains(**c)) {
            return Err(ColouringError::ColourOutsidePalette { vertex, colour });
        }
        Ok(Colouring { palette, assignment })
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn assignment(&self) -> &[Colour] {
        &self.assignment
    }

    pub fn into_assignment(self) -> Vec<Colour> {
        self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn colour(&self, v: usize) -> Colour {
        self.assignment[v]
    }

    /// The same assignment over a different palette.
    pub fn with_palette(&self, palette: Palette) -> Result<Self, ColouringError> {
        Colouring::new(palette, self.assignment.clone())
    }

    /// Colours that actually appear, ascending.
    pub fn used(&self) -> Vec<Colour> {
        let set: BTreeSet<Colour> = self.assignment.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn check_proper(&self, g: &Graph) -> Result<(), ColouringError> {
        if self.assignment.len() != g.n() {
            return Err(ColouringError::LengthMismatch {
                expected: g.n(),
                got: self.assignment.len(),
            });
        }
        match g.edges().find(|&(u, v)| self.assignment[u] == self.assignment[v]) {
            Some((u, v)) => Err(ColouringError::Improper(u, v)),
            None => Ok(()),
        }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.check_proper(g).is_ok()
    }

    /// Colour classes ordered by minimum vertex.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        classes_of(&self.assignment, 0..self.assignment.len())
    }
}

/// Colour classes of `assignment` restricted to `vertices`, ordered by the
/// first vertex encountered.
pub(crate) fn classes_of(assignment: &[Colour], vertices: impl IntoIterator<Item = usize>) -> Vec<Vec<usize>> {
    let mut index: std::collections::HashMap<Colour, usize> = Default::default();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in vertices {
        let slot = *index.entry(assignment[v]).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(v);
    }
    classes
}
