//! Exact combinatorics of parabolic cosets in classical Weyl groups and the
//! mod-p Hecke modules built on them.

pub mod chains;
pub mod error;
pub mod hecke;
pub mod jcomb;
pub mod linalg;
pub mod oracle;
pub mod roots;
pub mod special;
pub mod suite;
pub mod weyl;

pub use error::{Error, Result};
pub use roots::{CartanType, Family, Root, RootSet, RootSystem};
pub use weyl::{SubsetJ, WeylElement, WeylGroup};
