//! Exact birational-geometry computations for the GIT quotients of ordered
//! points on the projective line: cones of divisors and curves on blow-ups of
//! projective space at general points, Mori chamber walls, Cremona actions,
//! Hilbert polynomials of the natural embeddings, and Hassett weights.

pub mod cli;
pub mod cone_engine;
pub mod error;
pub mod exact_math;
pub mod linear_systems;
pub mod mori_chambers;
pub mod picard_lattice;
pub mod quotient_facts;
pub mod weights_bridge;

mod serde_big;
mod subsets;

pub use error::{Error, Result};
