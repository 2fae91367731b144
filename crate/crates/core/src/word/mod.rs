//! Words in a free group, stored as maximally merged runs `a_k^e` with
//! arbitrary-precision exponents.
//!
//! Every [`Word`] is freely reduced: construction goes through
//! [`WordBuilder`], a run-level stack reducer, so exponents such as `n^2 + h`
//! never have to be expanded into letters. Letter-level views are available
//! through [`Word::letters`] and the budget-guarded [`Word::to_letters`].

mod cyclic;
mod text;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use cyclic::{least_rotation, CyclicWord};

/// Upper bound on the number of runs a single constructed word may hold.
pub const DEFAULT_RUN_BUDGET: u64 = 1 << 23;

/// A finite alphabet `a_1, ..., a_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u32);

impl Alphabet {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet(rank))
    }

    pub fn rank(self) -> u32 {
        self.0
    }

    /// The generator `a_index` as a one-letter word.
    pub fn generator(self, index: u32) -> Result<Word> {
        self.check(index as i64)?;
        Ok(Word::from_run_unchecked(self, index, BigInt::one()))
    }

    pub fn generators(self) -> impl Iterator<Item = Word> {
        (1..=self.0).map(move |g| Word::from_run_unchecked(self, g, BigInt::one()))
    }

    /// All `2m` letters in the order `a1 < a1^-1 < a2 < a2^-1 < ...`.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (1..=self.0).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
    }

    pub(crate) fn check(self, index: i64) -> Result<()> {
        if index < 1 || index > self.0 as i64 {
            Err(Error::InvalidLetter { index, rank: self.0 })
        } else {
            Ok(())
        }
    }

    pub(crate) fn same(self, other: Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch { left: self.0, right: other.0 })
        }
    }
}

/// A single signed letter `a_k` or `a_k^-1`.
///
/// Letters are totally ordered by `a1 < a1^-1 < a2 < a2^-1 < ...`; shortlex
/// order on words and canonical cyclic representatives are built on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: u32, inverse: bool) -> Self {
        let g = generator as i32;
        Letter(if inverse { -g } else { g })
    }

    /// Interprets `k > 0` as `a_k` and `k < 0` as `a_{-k}^-1`.
    pub fn from_signed(k: i32) -> Self {
        debug_assert!(k != 0);
        Letter(k)
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    fn key(self) -> u32 {
        2 * (self.generator() - 1) + self.is_inverse() as u32
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "a{}^-1", self.generator())
        } else {
            write!(f, "a{}", self.generator())
        }
    }
}

/// A maximal block `a_gen^exp` of a word; `exp` is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Run {
    pub gen: u32,
    pub exp: BigInt,
}

impl Run {
    pub fn letter(&self) -> Letter {
        Letter::new(self.gen, self.exp.is_negative())
    }
}

/// A freely reduced word over a fixed alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    runs: Vec<Run>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, runs: Vec::new() }
    }

    pub(crate) fn from_run_unchecked(alphabet: Alphabet, gen: u32, exp: BigInt) -> Self {
        let runs = if exp.is_zero() { Vec::new() } else { vec![Run { gen, exp }] };
        Word { alphabet, runs }
    }

    /// `a_gen^exp` as a word.
    pub fn run(alphabet: Alphabet, gen: u32, exp: impl Into<BigInt>) -> Result<Self> {
        alphabet.check(gen as i64)?;
        Ok(Self::from_run_unchecked(alphabet, gen, exp.into()))
    }

    /// Free reduction of a letter sequence given as signed generator indices
    /// (`k` for `a_k`, `-k` for `a_k^-1`).
    pub fn free_reduce(alphabet: Alphabet, letters: &[i64]) -> Result<Self> {
        let mut b = WordBuilder::new(alphabet);
        for &k in letters {
            if k == 0 {
                return Err(Error::InvalidLetter { index: 0, rank: alphabet.rank() });
            }
            alphabet.check(k.abs())?;
            b.push_run(k.unsigned_abs() as u32, BigInt::from(k.signum()));
        }
        Ok(b.finish())
    }

    pub fn from_letters(alphabet: Alphabet, letters: &[Letter]) -> Result<Self> {
        let mut b = WordBuilder::new(alphabet);
        for l in letters {
            alphabet.check(l.generator() as i64)?;
            b.push_letter(*l);
        }
        Ok(b.finish())
    }

    /// Builds a word from runs, reducing as it goes.
    pub fn from_runs(alphabet: Alphabet, runs: impl IntoIterator<Item = (u32, BigInt)>) -> Result<Self> {
        let mut b = WordBuilder::new(alphabet);
        for (g, e) in runs {
            alphabet.check(g as i64)?;
            b.push_run(g, e);
        }
        Ok(b.finish())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Total letter length `sum |exp|`.
    pub fn len(&self) -> BigUint {
        self.runs.iter().map(|r| r.exp.magnitude().clone()).sum()
    }

    /// Letter length when it fits in a `u64`.
    pub fn len_u64(&self) -> Option<u64> {
        self.runs.iter().try_fold(0u64, |acc, r| acc.checked_add(r.exp.magnitude().to_u64()?))
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.runs.first().map(Run::letter)
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.runs.last().map(Run::letter)
    }

    /// Lazily expands the runs into letters.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs.iter().flat_map(|r| {
            let l = r.letter();
            let count = r.exp.magnitude().to_u64().unwrap_or(u64::MAX);
            (0..count).map(move |_| l)
        })
    }

    /// Materializes the letters, refusing words longer than `budget`.
    pub fn to_letters(&self, budget: u64) -> Result<Vec<Letter>> {
        match self.len_u64() {
            Some(n) if n <= budget => Ok(self.letters().collect()),
            _ => Err(Error::TooLarge { what: "letters", needed: self.len().to_string(), budget }),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.alphabet.same(other.alphabet)?;
        let mut b = WordBuilder::from_word(self);
        b.push_word(other);
        Ok(b.finish())
    }

    pub fn inverse(&self) -> Word {
        Word {
            alphabet: self.alphabet,
            runs: self.runs.iter().rev().map(|r| Run { gen: r.gen, exp: -&r.exp }).collect(),
        }
    }

    /// `self^k`, freely reduced.
    ///
    /// Powers of a single run stay a single run whatever the size of `k`;
    /// otherwise the cyclic core is repeated, guarded by [`DEFAULT_RUN_BUDGET`].
    pub fn power(&self, k: impl Into<BigInt>) -> Result<Word> {
        let mut b = WordBuilder::new(self.alphabet);
        b.push_power(self, &k.into())?;
        Ok(b.finish())
    }

    /// `by * self * by^-1`.
    pub fn conjugate(&self, by: &Word) -> Result<Word> {
        self.alphabet.same(by.alphabet)?;
        let mut b = WordBuilder::from_word(by);
        b.push_word(self);
        b.push_inverse(by);
        Ok(b.finish())
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.alphabet.same(other.alphabet)?;
        let mut b = WordBuilder::from_word(self);
        b.push_word(other);
        b.push_inverse(self);
        b.push_inverse(other);
        Ok(b.finish())
    }

    /// Signed exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: u32) -> Result<BigInt> {
        self.alphabet.check(g as i64)?;
        Ok(self.runs.iter().filter(|r| r.gen == g).map(|r| r.exp.clone()).sum())
    }

    /// The vector of exponent sums (the image in the abelianization).
    pub fn abelianization(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.alphabet.rank() as usize];
        for r in &self.runs {
            v[r.gen as usize - 1] += &r.exp;
        }
        v
    }

    /// The prefix of `len` letters.
    pub fn prefix(&self, len: &BigUint) -> Word {
        let mut left = len.clone();
        let mut runs = Vec::new();
        for r in &self.runs {
            if left.is_zero() {
                break;
            }
            let mag = r.exp.magnitude();
            if *mag <= left {
                left -= mag;
                runs.push(r.clone());
            } else {
                let sign = if r.exp.is_negative() { Sign::Minus } else { Sign::Plus };
                runs.push(Run { gen: r.gen, exp: BigInt::from_biguint(sign, left.clone()) });
                left = BigUint::zero();
            }
        }
        Word { alphabet: self.alphabet, runs }
    }

    /// The suffix that remains after dropping `len` letters.
    pub fn drop_prefix(&self, len: &BigUint) -> Word {
        let mut left = len.clone();
        let mut runs = Vec::new();
        for r in &self.runs {
            if left.is_zero() {
                runs.push(r.clone());
                continue;
            }
            let mag = r.exp.magnitude();
            if *mag <= left {
                left -= mag;
            } else {
                let sign = if r.exp.is_negative() { Sign::Minus } else { Sign::Plus };
                runs.push(Run { gen: r.gen, exp: BigInt::from_biguint(sign, mag - &left) });
                left = BigUint::zero();
            }
        }
        Word { alphabet: self.alphabet, runs }
    }

    /// Shortlex comparison: shorter words first, then letter by letter.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters().cmp(other.letters()))
    }

    /// Re-labels the word into a larger (or equal) alphabet.
    pub fn widen(&self, alphabet: Alphabet) -> Result<Word> {
        if let Some(max) = self.runs.iter().map(|r| r.gen).max() {
            alphabet.check(max as i64)?;
        }
        Ok(Word { alphabet, runs: self.runs.clone() })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Words compare by alphabet rank, then shortlex.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet.cmp(&other.alphabet).then_with(|| self.shortlex_cmp(other))
    }
}

/// Run-level stack reducer: pushing runs keeps the buffer freely reduced.
#[derive(Clone, Debug)]
pub struct WordBuilder {
    alphabet: Alphabet,
    runs: Vec<Run>,
    budget: u64,
}

impl WordBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        WordBuilder { alphabet, runs: Vec::new(), budget: DEFAULT_RUN_BUDGET }
    }

    pub fn from_word(w: &Word) -> Self {
        WordBuilder { alphabet: w.alphabet, runs: w.runs.clone(), budget: DEFAULT_RUN_BUDGET }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn push_run(&mut self, gen: u32, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some(top) = self.runs.last_mut() {
            if top.gen == gen {
                top.exp += exp;
                if top.exp.is_zero() {
                    self.runs.pop();
                }
                return;
            }
        }
        self.runs.push(Run { gen, exp });
    }

    pub fn push_letter(&mut self, l: Letter) {
        let e = if l.is_inverse() { -BigInt::one() } else { BigInt::one() };
        self.push_run(l.generator(), e);
    }

    /// Appends a word; the caller guarantees alphabets agree.
    pub fn push_word(&mut self, w: &Word) {
        debug_assert_eq!(w.alphabet, self.alphabet);
        for r in &w.runs {
            self.push_run(r.gen, r.exp.clone());
        }
    }

    pub fn push_inverse(&mut self, w: &Word) {
        debug_assert_eq!(w.alphabet, self.alphabet);
        for r in w.runs.iter().rev() {
            self.push_run(r.gen, -&r.exp);
        }
    }

    /// Appends `w^k`.
    pub fn push_power(&mut self, w: &Word, k: &BigInt) -> Result<()> {
        self.alphabet.same(w.alphabet)?;
        if k.is_zero() || w.is_empty() {
            return Ok(());
        }
        if w.runs.len() == 1 {
            let r = &w.runs[0];
            self.push_run(r.gen, &r.exp * k);
            return Ok(());
        }
        let (core, conj) = w.cyclic_reduce();
        let core = if k.is_negative() { core.inverse() } else { core };
        let reps = k.magnitude();
        if core.runs.len() == 1 {
            self.push_word(&conj);
            let r = &core.runs[0];
            self.push_run(r.gen, &r.exp * BigInt::from(reps.clone()));
            self.push_inverse(&conj);
            return Ok(());
        }
        let needed = BigUint::from(core.runs.len()) * reps + BigUint::from(self.runs.len());
        if needed > BigUint::from(self.budget) {
            return Err(Error::TooLarge { what: "runs", needed: needed.to_string(), budget: self.budget });
        }
        let reps = reps.to_u64().expect("bounded by budget");
        self.push_word(&conj);
        for _ in 0..reps {
            self.push_word(&core);
        }
        self.push_inverse(&conj);
        Ok(())
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn finish(self) -> Word {
        Word { alphabet: self.alphabet, runs: self.runs }
    }
}
