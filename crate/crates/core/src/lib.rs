//! Executable pieces of the reduction from Diophantine solvability to
//! semantic program properties.
//!
//! - [`poly`]: signed and natural-coefficient polynomials, evaluation and
//!   the positive/negative split.
//! - [`cantor`]: Cantor pairing and the k-ary tuple codec.
//! - [`dio_search`]: fuel-bounded least-solution search.
//! - [`step_model`]: step-indexed programs, the search-then-behave
//!   construction and the induced separator.
//! - [`h10c`]: the `one`/`plus`/`mult` constraint language and its
//!   encodings into single polynomial equations.
//! - [`demos`], [`cubes`]: the demonstration searches.

pub mod cantor;
pub mod cubes;
pub mod demos;
pub mod dio_search;
pub mod error;
pub mod h10c;
pub mod poly;
pub mod step_model;

pub use cantor::{cantor_pair, cantor_unpair, decode_k, encode_tuple};
pub use dio_search::{bounded_solvable, check_solution, find_sol, SearchOutcome};
pub use error::{CheckpointError, H10cError, ModelError, PolyError};
pub use h10c::{H10cConstraint, H10cInst};
pub use poly::{Monomial, NatMonomial, NatPoly, Poly};
pub use step_model::Program;
