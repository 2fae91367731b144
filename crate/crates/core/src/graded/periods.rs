//! Periods of rank `i`.

use crate::error::{Error, Result};
use crate::graded::oracle::{Oracle, Verdict};
use crate::word::{Alphabet, Letter, Word};

/// Result of [`periods_rank`]: kept periods and the words left out because
/// the oracle could not decide them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeriodSet {
    pub periods: Vec<Word>,
    pub indeterminate: Vec<Word>,
}

impl PeriodSet {
    /// Fails with [`Error::OracleBudgetExceeded`] when some word was undecided.
    pub fn into_strict(self) -> Result<Vec<Word>> {
        if self.indeterminate.is_empty() {
            Ok(self.periods)
        } else {
            Err(Error::OracleBudgetExceeded { indeterminate: self.indeterminate })
        }
    }
}

/// Cyclically reduced words of length `len`, in shortlex order.
pub fn cyclically_reduced_words(alphabet: Alphabet, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = alphabet.letters().collect();
    let mut out = Vec::new();
    let mut stack: Vec<Letter> = Vec::with_capacity(len);
    fn go(letters: &[Letter], len: usize, stack: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if stack.len() == len {
            if len < 2 || stack[0] != stack[len - 1].inverse() {
                out.push(stack.clone());
            }
            return;
        }
        for &l in letters {
            if stack.last() == Some(&l.inverse()) {
                continue;
            }
            stack.push(l);
            go(letters, len, stack, out);
            stack.pop();
        }
    }
    let mut raw = Vec::new();
    if len > 0 {
        go(&letters, len, &mut stack, &mut raw);
    }
    for ls in raw {
        out.push(Word::from_letters(alphabet, &ls).expect("letters of the alphabet"));
    }
    out
}

/// Greedy maximal set of periods of length `i`.
///
/// Words are visited in shortlex order. A word is kept when the oracle says
/// it is not conjugate to a power of a shorter word, and not conjugate to
/// any kept word or its inverse. Words the oracle leaves undecided are
/// skipped and listed.
///
/// ```
/// use relfree::Alphabet;
/// use relfree::graded::{periods_rank, FreeOracle};
///
/// let x2 = periods_rank(Alphabet::new(2).unwrap(), 2, &FreeOracle).periods;
/// let shown: Vec<String> = x2.iter().map(|w| w.to_string()).collect();
/// assert_eq!(shown, ["a1 a2", "a1 a2^-1"]);
/// ```
pub fn periods_rank(alphabet: Alphabet, i: usize, oracle: &dyn Oracle) -> PeriodSet {
    let mut set = PeriodSet::default();
    'words: for a in cyclically_reduced_words(alphabet, i) {
        match oracle.conjugate_to_short_power(&a, i as u64) {
            Verdict::Yes => continue,
            Verdict::Indeterminate => {
                set.indeterminate.push(a);
                continue;
            }
            Verdict::No => {}
        }
        let a_inv = a.inverse();
        let mut undecided = false;
        for b in &set.periods {
            for target in [&a, &a_inv] {
                match oracle.conjugate(target, b) {
                    Verdict::Yes => continue 'words,
                    Verdict::Indeterminate => undecided = true,
                    Verdict::No => {}
                }
            }
        }
        if undecided {
            set.indeterminate.push(a);
        } else {
            set.periods.push(a);
        }
    }
    set
}
