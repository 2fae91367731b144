//! Free-group words and the explicit construction of a non-hopfian
//! relatively free group: verbal words, a parameter ledger, a graded
//! presentation engine, the endomorphism with its witnesses, and a checker
//! for diagram certificates.

pub mod acceptance;
pub mod error;
pub mod graded;
pub mod homo;
pub mod lpp;
pub mod oracles;
pub mod verbal;
pub mod vkd;
pub mod word;

pub use error::{Error, Result};
pub use word::{Alphabet, CyclicWord, Letter, Run, Word, WordBuilder};
