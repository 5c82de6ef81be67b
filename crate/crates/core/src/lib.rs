pub mod error;
pub mod maps;
pub mod oracle;
pub mod perms;
pub mod shapes;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/shapes.md")]
    pub struct Shapes;
    #[doc = include_str!("../../../book/src/permutations.md")]
    pub struct Permutations;
    #[doc = include_str!("../../../book/src/correspondences.md")]
    pub struct Correspondences;
    #[doc = include_str!("../../../book/src/oracles.md")]
    pub struct Oracles;
    #[doc = include_str!("../../../book/src/verification.md")]
    pub struct Verification;
}
