//! Cyclic reduction, canonical cyclic representatives and primitive roots.
//!
//! All three work on runs. The shortlex-least rotation of a cyclically
//! reduced word always starts at the head of a maximal cyclic run of its
//! smallest letter, so it suffices to compare rotations that start at run
//! boundaries. Those comparisons are encoded in [`RunSymbol`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::{Letter, Run, Word, WordBuilder};
use crate::error::{Error, Result};

/// Index of the lexicographically least rotation of `s` (first one on ties).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n < 2 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match s[(i + k) % n].cmp(&s[(j + k) % n]) {
            Ordering::Equal => {
                k += 1;
                continue;
            }
            Ordering::Greater => i += k + 1,
            Ordering::Less => j += k + 1,
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// A maximal cyclic run seen from the letter order.
///
/// Two rotations starting at run heads first differ at some run. When the
/// letters agree but the lengths do not, the shorter run is followed by a
/// different letter; that letter being smaller (`up == false`) makes the
/// shorter rotation smaller, being larger makes it larger. Hence the key
/// `(letter, up, len ascending if down, descending if up)`.
#[derive(PartialEq, Eq)]
struct RunSymbol<'a> {
    letter: Letter,
    up: bool,
    len: &'a BigUint,
}

impl Ord for RunSymbol<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letter.cmp(&other.letter).then(self.up.cmp(&other.up)).then_with(|| {
            if self.up {
                other.len.cmp(self.len)
            } else {
                self.len.cmp(other.len)
            }
        })
    }
}

impl PartialOrd for RunSymbol<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A conjugacy class of the free group, represented by the shortlex-least
/// rotation of its cyclically reduced core.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    rep: Word,
}

impl CyclicWord {
    pub fn rep(&self) -> &Word {
        &self.rep
    }

    pub fn into_word(self) -> Word {
        self.rep
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.rep)
    }
}

impl Word {
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.runs.first(), self.runs.last()) {
            (Some(a), Some(b)) if self.runs.len() > 1 => {
                !(a.gen == b.gen && a.exp.is_negative() != b.exp.is_negative())
            }
            _ => true,
        }
    }

    /// Splits `self = conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut runs: std::collections::VecDeque<Run> = self.runs.iter().cloned().collect();
        let mut conj = WordBuilder::new(self.alphabet);
        while runs.len() > 1 {
            let (first, last) = (&runs[0], &runs[runs.len() - 1]);
            if first.gen != last.gen || first.exp.is_negative() == last.exp.is_negative() {
                break;
            }
            let gen = first.gen;
            let m = first.exp.magnitude().min(last.exp.magnitude()).clone();
            let sign = if first.exp.is_negative() { -BigInt::from(m.clone()) } else { BigInt::from(m.clone()) };
            conj.push_run(gen, sign.clone());
            let front = &mut runs[0];
            front.exp -= &sign;
            if front.exp.is_zero() {
                runs.pop_front();
            }
            let back = runs.back_mut().expect("len > 1 before trimming");
            back.exp += &sign;
            if back.exp.is_zero() {
                runs.pop_back();
            }
        }
        let core = Word { alphabet: self.alphabet, runs: runs.into_iter().collect() };
        (core, conj.finish())
    }

    /// Runs of the cyclic core with the first and last runs merged when
    /// they share a letter, so that every run is maximal cyclically.
    /// Returns the runs and the number of letters moved from the back.
    fn cyclic_runs(core: &Word) -> (Vec<Run>, BigUint) {
        let runs = &core.runs;
        if runs.len() >= 2 && runs[0].gen == runs[runs.len() - 1].gen {
            let last = &runs[runs.len() - 1];
            let mut out = Vec::with_capacity(runs.len() - 1);
            out.push(Run { gen: last.gen, exp: &runs[0].exp + &last.exp });
            out.extend_from_slice(&runs[1..runs.len() - 1]);
            (out, last.exp.magnitude().clone())
        } else {
            (runs.clone(), BigUint::zero())
        }
    }

    /// The canonical representative of the conjugacy class of `self`.
    pub fn canonical_cyclic(&self) -> CyclicWord {
        let (core, _) = self.cyclic_reduce();
        let (runs, _) = Self::cyclic_runs(&core);
        if runs.len() <= 1 {
            return CyclicWord { rep: Word { alphabet: self.alphabet, runs } };
        }
        let n = runs.len();
        let symbols: Vec<RunSymbol<'_>> = (0..n)
            .map(|i| {
                let letter = runs[i].letter();
                RunSymbol { letter, up: runs[(i + 1) % n].letter() > letter, len: runs[i].exp.magnitude() }
            })
            .collect();
        let start = least_rotation(&symbols);
        drop(symbols);
        let mut rotated = runs;
        rotated.rotate_left(start);
        CyclicWord { rep: Word { alphabet: self.alphabet, runs: rotated } }
    }

    /// Conjugacy in the free group.
    pub fn conjugate_in_free(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet && self.canonical_cyclic() == other.canonical_cyclic()
    }

    /// Writes a nonempty cyclically reduced word as `root^k` with `root` not
    /// a proper power.
    pub fn primitive_root(&self) -> Result<(Word, BigUint)> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !self.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced(self.to_string()));
        }
        let (runs, _) = Self::cyclic_runs(self);
        if runs.len() == 1 {
            let r = &runs[0];
            let unit = if r.exp.is_negative() { -BigInt::from(1) } else { BigInt::from(1) };
            let root = Word::from_run_unchecked(self.alphabet, r.gen, unit);
            return Ok((root, r.exp.magnitude().clone()));
        }
        let n = runs.len();
        for q in (1..=n / 2).filter(|q| n % q == 0) {
            if (0..n).all(|i| runs[i] == runs[(i + q) % n]) {
                let k = n / q;
                let root_len = self.len() / BigUint::from(k);
                let root = self.prefix(&root_len);
                debug_assert_eq!(root.power(k as u64).ok().as_ref(), Some(self));
                return Ok((root, BigUint::from(k)));
            }
        }
        Ok((self.clone(), BigUint::from(1u32)))
    }

    /// Writes `self` letter-for-letter as `root^k` with `k` maximal.
    /// Words that are not cyclically reduced are only trivial powers.
    pub fn graphical_root(&self) -> Result<(Word, BigUint)> {
        if self.is_cyclically_reduced() {
            self.primitive_root()
        } else {
            Ok((self.clone(), BigUint::from(1u32)))
        }
    }

    /// The rotation of a cyclically reduced word that starts after `offset`
    /// letters.
    pub fn rotate_left(&self, offset: &BigUint) -> Word {
        let len = self.len();
        if len.is_zero() {
            return self.clone();
        }
        let offset = offset % &len;
        let mut b = WordBuilder::from_word(&self.drop_prefix(&offset));
        b.push_word(&self.prefix(&offset));
        b.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Word::parse(Alphabet::new(3).unwrap(), s).unwrap()
    }

    #[test]
    fn least_rotation_basics() {
        assert_eq!(least_rotation(&[3, 1, 2]), 1);
        assert_eq!(least_rotation(&[1, 1, 1]), 0);
        assert_eq!(least_rotation(&[2, 1, 2, 1]), 1);
        assert_eq!(least_rotation::<u8>(&[]), 0);
    }

    #[test]
    fn cyclic_reduce_conjugate() {
        let (core, conj) = w("a2 a1 a2^-1").cyclic_reduce();
        assert_eq!(core.to_string(), "a1");
        assert_eq!(conj.to_string(), "a2");
        let (core, conj) = w("a1^3 a2 a1^-1").cyclic_reduce();
        assert_eq!(core.to_string(), "a1^2 a2");
        assert_eq!(conj.to_string(), "a1");
        assert_eq!(core.conjugate(&conj).unwrap(), w("a1^3 a2 a1^-1"));
    }

    #[test]
    fn rotations_share_canonical_form() {
        assert_eq!(w("a1 a2").canonical_cyclic(), w("a2 a1").canonical_cyclic());
        assert!(w("a1 a2").conjugate_in_free(&w("a2 a1")));
        assert!(!w("a1").conjugate_in_free(&w("a2")));
        assert_eq!(w("a2 a1^2 a2 a1").canonical_cyclic().rep().to_string(), "a1^2 a2 a1 a2");
    }

    #[test]
    fn canonical_prefers_longer_minimal_run() {
        // rotations starting at a1^3 beat those starting at a1
        let c = w("a1 a2 a1^3 a3").canonical_cyclic();
        assert_eq!(c.rep().to_string(), "a1^3 a3 a1 a2");
        let c = w("a2 a1^-1 a2^2 a3").canonical_cyclic();
        assert_eq!(c.rep().to_string(), "a1^-1 a2^2 a3 a2");
        let c = w("a2 a3 a2^2 a3^-1").canonical_cyclic();
        assert_eq!(c.rep().to_string(), "a2^2 a3^-1 a2 a3");
    }

    #[test]
    fn primitive_roots() {
        let (r, k) = w("a1 a2 a1 a2 a1 a2").primitive_root().unwrap();
        assert_eq!((r.to_string(), k), ("a1 a2".to_string(), BigUint::from(3u32)));
        let (r, k) = w("a1").primitive_root().unwrap();
        assert_eq!((r.to_string(), k), ("a1".to_string(), BigUint::from(1u32)));
        let (r, k) = w("a1 a2 a1^2 a2 a1").primitive_root().unwrap();
        assert_eq!((r.to_string(), k), ("a1 a2 a1".to_string(), BigUint::from(2u32)));
        assert_eq!(w("1").primitive_root(), Err(Error::EmptyWord));
        assert!(matches!(w("a1 a2 a1^-1").primitive_root(), Err(Error::NotCyclicallyReduced(_))));
    }

    #[test]
    fn rotate_left_wraps() {
        assert_eq!(w("a1 a2 a3").rotate_left(&BigUint::from(4u32)).to_string(), "a2 a3 a1");
    }
}
