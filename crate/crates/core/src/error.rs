use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system label {0:?}: {1}")]
    BadLabel(String, String),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i32>),
    #[error("coefficient vector has length {got}, expected {want}")]
    RankMismatch { got: usize, want: usize },
    #[error("simple root index {0} out of range")]
    BadIndex(usize),
    #[error("no active-root row matches ({root:?}, pi = {pi})")]
    NotActive { root: Vec<i32>, pi: usize },
    #[error("malformed triple: {0}")]
    Malformed(String),
    #[error("triple fails condition ({0}): {1}")]
    Invalid(&'static str, String),
    #[error("simple root {0} is not a regular active root of this triple")]
    NotRegular(usize),
    #[error("torus is inconsistent with the triple: {0}")]
    Torus(String),
    #[error("inconsistent functionals: {0}")]
    Functionals(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
