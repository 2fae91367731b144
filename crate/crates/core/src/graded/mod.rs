//! Desk-scale graded presentations.
//!
//! Rank 0 is the free group and every question about it is answered
//! exactly. Higher ranks are queried through Dehn's algorithm with a
//! budget, and answers are three-valued: see [`Verdict`].

mod classify;
mod dehn;
mod letters;
mod oracle;
mod periods;
mod pieces;
mod presentation;
mod records;
mod symmetrized;

pub use classify::{
    a_exponent_sum, classify_pairs, pair_key, period_of, period_rank, reduced_words_up_to, synthesize_relator,
    verbal_membership_witness, ClassGroup, Classification, PairClass, Witness,
};
pub use dehn::{dehn_reduce, DehnIndex, DehnStep, DehnTrace};
pub use letters::free_conjugator;
pub use oracle::{DehnOracle, FreeOracle, Oracle, Verdict};
pub use periods::{cyclically_reduced_words, periods_rank, PeriodSet};
pub use pieces::{piece_stats, PieceStats};
pub use presentation::{build, Build, BuildOptions, GradedPresentation, Rank, RankReport};
pub use records::{a_exponents, build_relator, RelatorRecord, TripleRecord};

/// Free reduction of a signed-letter sequence.
pub fn free_reduce_letters(letters: &[i32]) -> Vec<i32> {
    letters::stack_reduce(letters.iter().copied())
}

/// Reads a relator list: either a presentation file (all ranks) or one word
/// per line over the smallest common alphabet. `#` starts a comment.
pub fn parse_relators(text: &str) -> crate::Result<Vec<crate::Word>> {
    use crate::{Alphabet, Word};
    if text.lines().any(|l| l.trim_start().starts_with("alphabet")) {
        let p: GradedPresentation = text.parse()?;
        return Ok(p.relators_up_to(p.top_rank()));
    }
    let lines: Vec<&str> =
        text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect();
    let mut rank = 1;
    for l in &lines {
        rank = rank.max(Word::infer_rank(l)?);
    }
    let alphabet = Alphabet::new(rank)?;
    lines.iter().map(|l| Word::parse(alphabet, l)).collect()
}
