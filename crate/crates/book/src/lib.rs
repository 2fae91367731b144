//! Compiles every chapter of the guide so `cargo test` runs its snippets.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}
#[doc = include_str!("../../../book/src/verbal.md")]
pub mod verbal {}
#[doc = include_str!("../../../book/src/ledger.md")]
pub mod ledger {}
#[doc = include_str!("../../../book/src/graded.md")]
pub mod graded {}
#[doc = include_str!("../../../book/src/endomorphism.md")]
pub mod endomorphism {}
#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
