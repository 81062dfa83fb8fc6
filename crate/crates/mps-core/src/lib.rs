//! Construction, verification, and exhaustive search of type-p most-perfect
//! magic squares of order p^r.
//!
//! The pipeline: [`zp`] supplies exact arithmetic over Z_p, [`codec`] maps
//! symbols and grid locations to digit vectors, [`construction`] builds the
//! matrices whose linear action produces the squares, [`square`] holds the
//! resulting grids, [`verifier`] checks the defining properties, and
//! [`search`] enumerates candidate matrices to census which ones work.

pub mod codec;
pub mod construction;
pub mod error;
pub mod search;
pub mod square;
pub mod verifier;
pub mod zp;

pub use codec::{ConstructionParams, DigitPermutation, GridLocation};
pub use error::{Error, Result};
pub use search::{SearchMode, SearchResult, SearchSpace};
pub use square::{Square, SquareFormat};
pub use verifier::{LineFlags, MagicConstants, PropertyReport, Witness};
pub use zp::{is_prime, Residue, ZpMatrix, ZpVector};
