//! The word text format: whitespace-separated `a<k>` / `a<k>^<e>` tokens,
//! `1` for the empty word.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{Alphabet, Word, WordBuilder};
use crate::error::{parse_err, Error, Result};

fn parse_token(tok: &str) -> Result<(i64, BigInt)> {
    let body = tok.strip_prefix('a').ok_or_else(|| parse_err(format!("bad token `{tok}`")))?;
    let (idx, exp) = match body.split_once('^') {
        Some((i, e)) => (i, e.parse::<BigInt>().map_err(|_| parse_err(format!("bad exponent in `{tok}`")))?),
        None => (body, BigInt::one()),
    };
    let idx: i64 = idx.parse().map_err(|_| parse_err(format!("bad generator in `{tok}`")))?;
    Ok((idx, exp))
}

impl Word {
    /// Parses and freely reduces a word over `alphabet`.
    pub fn parse(alphabet: Alphabet, s: &str) -> Result<Word> {
        let mut b = WordBuilder::new(alphabet);
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (idx, exp) = parse_token(tok)?;
            alphabet.check(idx)?;
            b.push_run(idx as u32, exp);
        }
        Ok(b.finish())
    }

    /// Parses over the smallest alphabet containing every mentioned
    /// generator.
    pub fn parse_inferred(s: &str) -> Result<Word> {
        Word::parse(Alphabet::new(Word::infer_rank(s)?)?, s)
    }

    /// Largest generator index mentioned in `s` (at least 1).
    pub fn infer_rank(s: &str) -> Result<u32> {
        let mut rank = 1u32;
        for tok in s.split_whitespace().filter(|t| *t != "1") {
            let (idx, _) = parse_token(tok)?;
            if idx < 1 || idx > u32::MAX as i64 {
                return Err(Error::InvalidLetter { index: idx, rank: 0 });
            }
            rank = rank.max(idx as u32);
        }
        Ok(rank)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("1");
        }
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if r.exp.is_one() {
                write!(f, "a{}", r.gen)?;
            } else {
                write!(f, "a{}^{}", r.gen, r.exp)?;
            }
        }
        Ok(())
    }
}
