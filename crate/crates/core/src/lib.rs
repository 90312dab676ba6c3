//! Plat presentations of links: braid words, Hilden double coset moves,
//! flips, a Kauffman-bracket oracle, tile graphs of foliated spheres, and a
//! bounded search for split and composite words.

pub mod braid;
pub mod diagram;
pub mod foliation;
pub mod invariants;
pub mod moves;
pub mod plat;
pub mod render;
pub mod search;
pub mod simplify;

pub use braid::{braids_equal, free_reduce, BraidError, BraidWord, Letter};
pub use diagram::LinkDiagram;
pub use foliation::{ReductionStep, SurfaceKind, Tile, TileGraph, TileType, TilingError};
pub use invariants::{invariant, invariants_equal, InvariantValue, LaurentPolynomial, OracleError};
pub use moves::{End, FlipCase, HildenWord, MoveError, MoveLog, MoveRecord};
pub use plat::{PlatError, PlatPresentation};
pub use render::RenderSpec;
pub use search::{MoveSet, SearchBudget};
pub use simplify::{SimplifyError, SimplifyResult};
