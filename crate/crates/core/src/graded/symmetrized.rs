//! The symmetrized closure of a relator set, with rolling hashes over every
//! cyclic shift of every relator and its inverse.

use crate::error::{Error, Result};
use crate::graded::letters::{inverse, to_signed};
use crate::word::Word;

const MODULUS: u64 = (1 << 61) - 1;
const BASE: u64 = 1_000_003;

fn mul(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let r = (p & MODULUS as u128) as u64 + (p >> 61) as u64;
    if r >= MODULUS {
        r - MODULUS
    } else {
        r
    }
}

fn code(x: i32) -> u64 {
    (x as i64 + (1 << 31)) as u64
}

/// Prefix hashes of a letter string.
#[derive(Clone, Debug)]
pub(crate) struct Hashed {
    pub letters: Vec<i32>,
    prefix: Vec<u64>,
}

impl Hashed {
    pub fn new(letters: Vec<i32>) -> Self {
        let mut prefix = Vec::with_capacity(letters.len() + 1);
        prefix.push(0);
        let mut h = 0;
        for &x in &letters {
            h = (mul(h, BASE) + code(x)) % MODULUS;
            prefix.push(h);
        }
        Hashed { letters, prefix }
    }

    /// Hash of `letters[start..start + len]`.
    pub fn hash(&self, powers: &Powers, start: usize, len: usize) -> u64 {
        let hi = self.prefix[start + len];
        let lo = mul(self.prefix[start], powers.get(len));
        (hi + MODULUS - lo) % MODULUS
    }
}

pub(crate) struct Powers(Vec<u64>);

impl Powers {
    pub fn new() -> Self {
        Powers(vec![1])
    }

    pub fn ensure(&mut self, n: usize) {
        while self.0.len() <= n {
            let last = *self.0.last().expect("nonempty");
            self.0.push(mul(last, BASE));
        }
    }

    fn get(&self, n: usize) -> u64 {
        self.0[n]
    }
}

/// One cyclic string of the closure: the cyclic core of a relator or of
/// its inverse, stored doubled so every shift is a plain slice.
#[derive(Clone, Debug)]
pub(crate) struct Cycle {
    pub relator: usize,
    pub inverted: bool,
    pub len: usize,
    pub doubled: Hashed,
}

impl Cycle {
    pub fn at(&self, offset: usize, k: usize) -> i32 {
        self.doubled.letters[offset + k]
    }
}

pub(crate) struct Symmetrized {
    pub cycles: Vec<Cycle>,
    pub powers: Powers,
}

impl Symmetrized {
    /// Uses the cyclic core of every relator; trivial relators are dropped.
    pub fn new(relators: &[Word]) -> Result<Self> {
        if relators.is_empty() {
            return Err(Error::EmptyInput("relators"));
        }
        let mut cycles = Vec::with_capacity(2 * relators.len());
        let mut powers = Powers::new();
        for (i, r) in relators.iter().enumerate() {
            let core = to_signed(&r.cyclic_reduce().0)?;
            if core.is_empty() {
                continue;
            }
            powers.ensure(2 * core.len());
            for (inverted, c) in [(false, core.clone()), (true, inverse(&core))] {
                let len = c.len();
                let mut doubled = c.clone();
                doubled.extend_from_slice(&c);
                cycles.push(Cycle { relator: i, inverted, len, doubled: Hashed::new(doubled) });
            }
        }
        Ok(Symmetrized { cycles, powers })
    }

    pub fn min_len(&self) -> Option<usize> {
        self.cycles.iter().map(|c| c.len).min()
    }

    pub fn max_len(&self) -> usize {
        self.cycles.iter().map(|c| c.len).max().unwrap_or(0)
    }

    /// Hash identifying the word of the shift `(cycle, offset)`; equal words
    /// are the same element of the closure.
    pub fn identity(&self, cycle: usize, offset: usize) -> (u64, usize) {
        let c = &self.cycles[cycle];
        (c.doubled.hash(&self.powers, offset, c.len), c.len)
    }
}
