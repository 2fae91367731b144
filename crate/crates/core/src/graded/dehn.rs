//! Dehn's algorithm over a symmetrized relator set.

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graded::letters::{from_signed, stack_reduce, to_signed};
use crate::graded::symmetrized::{Hashed, Symmetrized};
use crate::word::{Alphabet, Word};

/// One replacement: the letters `position..position + matched` of the
/// current word were a prefix `u` of the shift `rotation` of relator
/// `relator` (or its inverse), and were replaced by the inverse of the
/// remaining suffix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnStep {
    pub position: usize,
    pub relator: usize,
    pub inverted: bool,
    pub rotation: usize,
    pub matched: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnTrace {
    pub input: Word,
    pub steps: Vec<DehnStep>,
    pub output: Word,
}

/// Prefix index of the closure: for each cycle length `L`, the hashes of
/// the length `L / 2 + 1` prefixes of all its shifts.
pub struct DehnIndex {
    alphabet: Alphabet,
    relators: Vec<Word>,
    sym: Symmetrized,
    groups: Vec<Group>,
}

struct Group {
    threshold: usize,
    entries: Vec<(u64, u32, u32)>,
}

impl DehnIndex {
    pub fn new(relators: &[Word]) -> Result<Self> {
        let alphabet = relators.first().ok_or(Error::EmptyInput("relators"))?.alphabet();
        for r in relators {
            alphabet.same(r.alphabet())?;
        }
        let sym = Symmetrized::new(relators)?;
        let mut lens: Vec<usize> = sym.cycles.iter().map(|c| c.len).collect();
        lens.sort_unstable();
        lens.dedup();
        let mut groups = Vec::new();
        for len in lens {
            let threshold = len / 2 + 1;
            let mut entries = Vec::new();
            for (ci, c) in sym.cycles.iter().enumerate().filter(|(_, c)| c.len == len) {
                for off in 0..len {
                    entries.push((c.doubled.hash(&sym.powers, off, threshold), ci as u32, off as u32));
                }
            }
            entries.sort_unstable();
            groups.push(Group { threshold, entries });
        }
        Ok(DehnIndex { alphabet, relators: relators.to_vec(), sym, groups })
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Leftmost match, longest at that position.
    fn find(&self, word: &Hashed) -> Option<(usize, usize, usize, usize)> {
        let n = word.letters.len();
        for pos in 0..n {
            let mut best: Option<(usize, usize, usize)> = None;
            for g in &self.groups {
                if pos + g.threshold > n {
                    continue;
                }
                let h = word.hash(&self.sym.powers, pos, g.threshold);
                let start = g.entries.partition_point(|e| e.0 < h);
                for &(eh, ci, off) in &g.entries[start..] {
                    if eh != h {
                        break;
                    }
                    let c = &self.sym.cycles[ci as usize];
                    let off = off as usize;
                    let mut m = 0;
                    while m < c.len && pos + m < n && word.letters[pos + m] == c.at(off, m) {
                        m += 1;
                    }
                    if m >= g.threshold && best.is_none_or(|b| m > b.0) {
                        best = Some((m, ci as usize, off));
                    }
                }
            }
            if let Some((m, ci, off)) = best {
                return Some((pos, m, ci, off));
            }
        }
        None
    }

    /// Runs Dehn's algorithm for at most `budget` replacements.
    pub fn trace(&self, w: &Word, budget: usize) -> Result<DehnTrace> {
        self.alphabet.same(w.alphabet())?;
        let mut letters = to_signed(w)?;
        let mut steps = Vec::new();
        loop {
            let hashed = Hashed::new(letters);
            let Some((pos, m, ci, off)) = self.find(&hashed) else {
                letters = hashed.letters;
                break;
            };
            if steps.len() == budget {
                return Err(Error::BudgetExceeded(budget));
            }
            let c = &self.sym.cycles[ci];
            steps.push(DehnStep { position: pos, relator: c.relator, inverted: c.inverted, rotation: off, matched: m });
            let old = hashed.letters;
            let replacement = (m..c.len).rev().map(|k| -c.at(off, k));
            let next: Vec<i32> =
                old[..pos].iter().copied().chain(replacement).chain(old[pos + m..].iter().copied()).collect();
            letters = stack_reduce(next);
        }
        Ok(DehnTrace { input: w.clone(), steps, output: from_signed(self.alphabet, &letters) })
    }

    pub fn reduce(&self, w: &Word, budget: usize) -> Result<Word> {
        Ok(self.trace(w, budget)?.output)
    }

    /// Largest cycle length, an upper bound for useful search windows.
    pub fn max_len(&self) -> usize {
        self.sym.max_len()
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.groups.iter().map(|g| 2 * g.threshold).collect();
        v.sort_by_key(|&x| Reverse(x));
        v
    }
}

/// Greedy Dehn reduction of `w` over the symmetrized closure of `relators`.
///
/// Every step replaces a subword that is more than half of some cyclic
/// shift of a relator (or its inverse) by the inverse of the rest of that
/// shift, then freely reduces. The result is never longer than `w`. After
/// `budget` replacements with a match still available the call fails
/// with [`Error::BudgetExceeded`].
pub fn dehn_reduce(w: &Word, relators: &[Word], budget: usize) -> Result<Word> {
    DehnIndex::new(relators)?.reduce(w, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface() -> (Alphabet, Vec<Word>) {
        let a = Alphabet::new(4).unwrap();
        (a, vec![Word::parse(a, "a1 a2 a1^-1 a2^-1 a3 a4 a3^-1 a4^-1").unwrap()])
    }

    #[test]
    fn relator_and_its_shifts_vanish() {
        let (a, rels) = surface();
        let idx = DehnIndex::new(&rels).unwrap();
        assert!(idx.reduce(&rels[0], 10).unwrap().is_empty());
        let shifted = Word::parse(a, "a3 a4 a3^-1 a4^-1 a1 a2 a1^-1 a2^-1").unwrap();
        assert!(idx.reduce(&shifted.inverse(), 10).unwrap().is_empty());
        let g = Word::parse(a, "a1").unwrap();
        assert_eq!(idx.reduce(&g, 10).unwrap(), g);
    }

    #[test]
    fn replaces_long_half_by_short_complement() {
        let (a, rels) = surface();
        // five letters of the relator become the inverse of the other three
        let w = Word::parse(a, "a1 a2 a1^-1 a2^-1 a3").unwrap();
        let t = DehnIndex::new(&rels).unwrap().trace(&w, 10).unwrap();
        assert_eq!(t.output, Word::parse(a, "a4 a3 a4^-1").unwrap());
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].matched, 5);
    }

    #[test]
    fn budget() {
        let (_, rels) = surface();
        let w = rels[0].power(3).unwrap();
        assert_eq!(dehn_reduce(&w, &rels, 1), Err(Error::BudgetExceeded(1)));
        assert!(dehn_reduce(&w, &rels, 3).unwrap().is_empty());
    }
}
