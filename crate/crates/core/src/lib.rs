//! GF(2) edge-space algebra of graphs: cycle, cut and triangle spaces, the
//! first Z/2 Betti number of the clique complex, tail-bound calculators,
//! exact small-scale extremal oracles, and a seeded Monte Carlo harness for
//! the triangle-space threshold in G(n, p).

pub mod bounds;
mod cuts;
pub mod error;
pub mod extremal;
pub mod gf2;
pub mod graph;
pub mod spaces;
pub mod spotcheck;
pub mod sweep;
pub mod verify;

pub use cuts::MAX_EXHAUSTIVE_VERTICES;
pub use error::{Error, Result};
