//! Pieces of a symmetrized relator set.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graded::symmetrized::Symmetrized;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceStats {
    /// Longest common prefix of two distinct elements of the closure.
    pub max_piece: u64,
    /// Shortest relator.
    pub min_len: u64,
    /// `max_piece / min_len`.
    pub lambda: BigRational,
}

impl PieceStats {
    /// Whether the set satisfies `C'(bound)`, i.e. `lambda < bound`.
    pub fn satisfies(&self, bound: &BigRational) -> bool {
        &self.lambda < bound
    }
}

/// Largest piece over all cyclic shifts of `relators` and their inverses.
///
/// ```
/// use relfree::{Alphabet, Word};
/// use relfree::graded::piece_stats;
///
/// let a = Alphabet::new(2).unwrap();
/// let s = piece_stats(&[Word::parse(a, "a1 a2 a1^-1 a2^-1").unwrap()]).unwrap();
/// assert_eq!(s.max_piece, 1);
/// ```
pub fn piece_stats(relators: &[Word]) -> Result<PieceStats> {
    if relators.is_empty() {
        return Err(Error::EmptyInput("relators"));
    }
    if let Some(r) = relators.iter().find(|r| !r.is_cyclically_reduced() || r.is_empty()) {
        return Err(Error::NotCyclicallyReduced(r.to_string()));
    }
    let sym = Symmetrized::new(relators)?;
    let min_len = sym.min_len().expect("relators are nonempty") as u64;
    let (mut lo, mut hi) = (0usize, sym.max_len());
    // largest length with a shared prefix; shared prefixes are closed
    // under shortening, so bisect
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if has_piece(&sym, mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(PieceStats { max_piece: lo as u64, min_len, lambda: BigRational::new(BigInt::from(lo), BigInt::from(min_len)) })
}

fn has_piece(sym: &Symmetrized, len: usize) -> bool {
    let mut seen: HashMap<u64, ((u64, usize), usize, usize)> = HashMap::new();
    for (ci, c) in sym.cycles.iter().enumerate() {
        if c.len < len {
            continue;
        }
        for off in 0..c.len {
            let h = c.doubled.hash(&sym.powers, off, len);
            let id = sym.identity(ci, off);
            match seen.get(&h) {
                None => {
                    seen.insert(h, (id, ci, off));
                }
                Some(&(other, oc, ooff)) if other != id => {
                    let a = &c.doubled.letters[off..off + len];
                    let b = &sym.cycles[oc].doubled.letters[ooff..ooff + len];
                    if a == b {
                        return true;
                    }
                }
                Some(_) => {}
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn w(m: u32, s: &str) -> Word {
        Word::parse(Alphabet::new(m).unwrap(), s).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn commutator() {
        let s = piece_stats(&[w(2, "a1 a2 a1^-1 a2^-1")]).unwrap();
        assert_eq!((s.max_piece, s.lambda.clone()), (1, q(1, 4)));
    }

    #[test]
    fn surface_genus_two() {
        let s = piece_stats(&[w(4, "a1 a2 a1^-1 a2^-1 a3 a4 a3^-1 a4^-1")]).unwrap();
        assert_eq!(s.lambda, q(1, 8));
        assert!(s.satisfies(&q(1, 6)));
    }

    #[test]
    fn disjoint_and_powers() {
        let s = piece_stats(&[w(2, "a1^3"), w(2, "a2^5")]).unwrap();
        assert_eq!(s.max_piece, 0);
        let s = piece_stats(&[w(2, "a1^3 a2"), w(2, "a1^2 a2^-1")]).unwrap();
        assert_eq!(s.max_piece, 2);
    }

    #[test]
    fn errors() {
        assert_eq!(piece_stats(&[]), Err(Error::EmptyInput("relators")));
        assert!(matches!(piece_stats(&[w(2, "a1 a2 a1^-1")]), Err(Error::NotCyclicallyReduced(_))));
    }
}
