//! Low-degree cohomology of finite groups with finitely generated abelian
//! coefficients, group extensions, and the seven-term exact sequence of an
//! extension `1 → N → G → Q → 1`.

pub mod abelian;
pub mod ambient;
pub mod cochain;
pub mod cohomology;
pub mod complement;
pub mod derivation;
pub mod error;
pub mod extension;
pub mod group;
pub mod int;
pub mod lattice;
pub mod matrix;
pub mod module;
pub mod seven_term;
pub mod snf;
pub mod solve;

pub use error::{Error, Result};
