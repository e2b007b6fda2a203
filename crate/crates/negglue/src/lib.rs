//! Temperature-1 tile self-assembly with a single negative glue.
//!
//! The toolkit simulates the abstract Tile Assembly Model with restricted
//! glues (all magnitudes 1, one negative glue type, diagonal glue function),
//! generates N x N square tile sets in the rgTAS and prgTAS classes, compiles
//! Turing machines into compact zig-zag temperature-2 systems, and compiles
//! compact zig-zag systems down to temperature 1 as macro-tile paths,
//! verifying every construction by simulation.

pub mod assembly;
pub mod directed;
pub mod grid;
pub mod io;
pub mod model;
pub mod sim;
pub mod squares;
pub mod tm;
pub mod zigzag;

pub use assembly::{binding_graph, binding_strength, is_tau_stable, Assembly};
pub use directed::{check_directed, first_terminal, Directedness, DirectedOptions};
pub use grid::{pt, Dir, Point};
pub use model::{
    interaction_strength, validate_class, Glue, ModelError, SystemClass, TileId, TileSet,
    TileSetBuilder, TileSystem, Violation, ViolationKind,
};
pub use sim::{check_single_sequence, frontier, run, Policy, RunOutcome, Simulation, Termination};
