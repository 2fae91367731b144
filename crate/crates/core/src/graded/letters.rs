//! Letter-level helpers for the desk-scale parts of the construction.

use crate::error::Result;
use crate::word::{Alphabet, Letter, Word, DEFAULT_RUN_BUDGET};

pub(crate) fn to_signed(w: &Word) -> Result<Vec<i32>> {
    Ok(w.to_letters(DEFAULT_RUN_BUDGET)?.into_iter().map(Letter::signed).collect())
}

pub(crate) fn from_signed(alphabet: Alphabet, letters: &[i32]) -> Word {
    let ls: Vec<Letter> = letters.iter().map(|&k| Letter::from_signed(k)).collect();
    Word::from_letters(alphabet, &ls).expect("letters come from a word over this alphabet")
}

pub(crate) fn stack_reduce(letters: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for x in letters {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub(crate) fn inverse(letters: &[i32]) -> Vec<i32> {
    letters.iter().rev().map(|x| -x).collect()
}

/// Least `r` with `rotate_left(a, r) == b`, by KMP over `a a`.
pub(crate) fn rotation_offset(a: &[i32], b: &[i32]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0);
    }
    let mut fail = vec![0usize; b.len()];
    let mut k = 0;
    for i in 1..b.len() {
        while k > 0 && b[i] != b[k] {
            k = fail[k - 1];
        }
        if b[i] == b[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut k = 0;
    for (i, x) in a.iter().chain(a.iter()).enumerate() {
        while k > 0 && *x != b[k] {
            k = fail[k - 1];
        }
        if *x == b[k] {
            k += 1;
        }
        if k == b.len() {
            return Some(i + 1 - b.len());
        }
    }
    None
}

/// A `W` with `W u W^-1 == v` in the free group, if `u` and `v` are conjugate.
pub fn free_conjugator(u: &Word, v: &Word) -> Result<Option<Word>> {
    u.alphabet().same(v.alphabet())?;
    if u == v {
        return Ok(Some(Word::empty(u.alphabet())));
    }
    let (cu, u0) = u.cyclic_reduce();
    let (cv, v0) = v.cyclic_reduce();
    let Some(r) = rotation_offset(&to_signed(&cu)?, &to_signed(&cv)?) else {
        return Ok(None);
    };
    let p = cu.prefix(&r.into());
    let w = v0.concat(&p.inverse())?.concat(&u0.inverse())?;
    debug_assert_eq!(&u.conjugate(&w)?, v);
    Ok(Some(w))
}
