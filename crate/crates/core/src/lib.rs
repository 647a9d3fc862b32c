//! Classification machinery for connected solvable spherical subgroups of
//! connected reductive groups, driven by combinatorial data on root systems.

pub mod active;
pub mod build;
pub mod combdata;
pub mod enumerate;
pub mod error;
pub mod linalg;
pub mod rootsys;
pub mod transform;

pub use active::ActivePair;
pub use combdata::{CombTriple, TorusSpec};
pub use error::{Error, Result};
pub use rootsys::{Kind, Root, RootSystem, Support};
