//! Recognition of OAT graphs (graphs built from single vertices by disjoint
//! union, join, adding a comparable vertex, and attaching a clique) with
//! build-tree certificates, and explicit recolouring sequences of length at
//! most `4n^2` between any two `(k+1)`-colourings of a `k`-colourable OAT
//! graph.

pub mod buildtree;
pub mod cli;
pub mod colouring;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod recognition;
pub mod recolouring;

pub use buildtree::{BuildTree, Node};
pub use colouring::{Colour, Colouring, Palette};
pub use graph::{AdjSquare, Graph};
pub use recognition::{recognize, Outcome};
pub use recolouring::{find_path, rename, to_canonical, verify_sequence, RecolouringSequence, Step};
