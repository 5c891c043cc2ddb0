pub mod error;
pub mod exact;
pub mod polytope;
pub mod triangulate;
pub mod compressed;
pub mod cutpoly;
pub mod margins;
pub mod bounds;
pub mod cli;

pub use error::{Error, Result};
