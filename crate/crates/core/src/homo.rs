//! Endomorphisms of free groups given by generator images, and the map
//! `psi: a_2 -> v_1(a_1, a_2)` fixing every other generator.
//!
//! ```
//! use relfree::homo::kernel_witness;
//! use relfree::verbal::ParamSet;
//!
//! let k = kernel_witness(&ParamSet::new(20u32, 2u32, 3u32).unwrap()).unwrap();
//! assert!(k.check && k.cyclically_reduced && k.length_bound);
//! ```

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{DehnIndex, Verdict};
use crate::verbal::{make_v, make_w1, make_w2, w1_template, w2_template, ParamSet};
use crate::word::{Alphabet, Word, WordBuilder};

/// Replaces every `a_k` of `w` by `images[k - 1]` and freely reduces.
/// The images may live over another alphabet.
pub fn substitute(w: &Word, images: &[Word]) -> Result<Word> {
    let target = images.first().ok_or(Error::EmptyAlphabet)?.alphabet();
    if images.len() != w.alphabet().rank() as usize {
        return Err(Error::AlphabetMismatch { left: w.alphabet().rank(), right: images.len() as u32 });
    }
    for im in images {
        target.same(im.alphabet())?;
    }
    let mut b = WordBuilder::new(target);
    for run in w.runs() {
        b.push_power(&images[run.gen as usize - 1], &run.exp)?;
    }
    Ok(b.finish())
}

/// `a_k -> images[k - 1]` on the free group of rank `images.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.rank() as usize {
            return Err(Error::AlphabetMismatch { left: alphabet.rank(), right: images.len() as u32 });
        }
        for im in &images {
            alphabet.same(im.alphabet())?;
        }
        Ok(Endomorphism { alphabet, images })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        Endomorphism { alphabet, images: alphabet.generators().collect() }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.alphabet.same(w.alphabet())?;
        substitute(w, &self.images)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        self.alphabet.same(other.alphabet)?;
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<_>>()?;
        Ok(Endomorphism { alphabet: self.alphabet, images })
    }
}

/// `a_2 -> v_1(a_1, a_2)`, `a_j -> a_j` otherwise, on `m` generators.
pub fn psi_infinity(m: u32, p: &ParamSet) -> Result<Endomorphism> {
    if m < 2 {
        return Err(Error::RankTooSmall(m));
    }
    let alphabet = Alphabet::new(m)?;
    let mut images: Vec<Word> = alphabet.generators().collect();
    images[1] = make_v(1, &images[0], &images[1], p)?;
    Ok(Endomorphism { alphabet, images })
}

/// The word `U` with `psi(U) = w_1(a_1, a_2)` and the checks made on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelWitness {
    pub u: Word,
    /// `psi(U)` equals `w_1(a_1, a_2)` letter for letter.
    pub check: bool,
    pub cyclically_reduced: bool,
    /// `|U| < (n + h) h`.
    pub length_bound: bool,
    pub zero_exponent_sums: bool,
    /// Whether `U != 1` in the limit group. Not decidable here.
    pub group_claim: Verdict,
}

impl KernelWitness {
    pub fn passed(&self) -> bool {
        self.check && self.cyclically_reduced && self.length_bound && self.zero_exponent_sums && !self.u.is_empty()
    }

    /// Partial evidence for `U != 1`: Dehn's algorithm over `index` leaves
    /// `U` untouched.
    pub fn dehn_irreducible(&self, index: &DehnIndex, budget: usize) -> Result<bool> {
        Ok(index.reduce(&self.u, budget)? == self.u)
    }
}

/// `U = a_1^e1 a_2^n a_1^e2 a_2^(n+2) ...`, the `w_1` template with `a_2`
/// in the `v_1` slots.
pub fn kernel_witness(p: &ParamSet) -> Result<KernelWitness> {
    let alphabet = Alphabet::new(2)?;
    let (a1, a2) = (alphabet.generator(1)?, alphabet.generator(2)?);
    let u = w1_template(&a1, &a2, p)?;
    let psi = psi_infinity(2, p)?;
    let check = psi.apply(&u)? == make_w1(&a1, &a2, p)?;
    let bound: BigUint = (p.n() + p.h()) * p.h();
    Ok(KernelWitness {
        check,
        cyclically_reduced: u.is_cyclically_reduced(),
        length_bound: u.len() < bound,
        zero_exponent_sums: u.abelianization().iter().all(BigInt::is_zero),
        group_claim: Verdict::Indeterminate,
        u,
    })
}

/// The word `Tail(s_x, s_v)` with `y Tail(x, v_1(x, y)) = w_2(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityWitness {
    /// Over two symbols: `a1` stands for `s_x`, `a2` for `s_v`.
    pub tail: Word,
    /// `a_2 Tail(a_1, v_1(a_1, a_2)) = w_2(a_1, a_2)` letter for letter.
    pub check: bool,
    /// `P = Tail(a_1, a_2)^-1` satisfies `psi(P) = w_2^-1 a_2`, so `a_2` is
    /// in the image of `psi` once `w_2 = 1`.
    pub preimage: Word,
    pub preimage_check: bool,
    /// `a_2 Tail(a_1, a_2)` has zero exponent sums.
    pub zero_exponent_sums: bool,
}

impl SurjectivityWitness {
    pub fn passed(&self) -> bool {
        self.check && self.preimage_check && self.zero_exponent_sums
    }
}

/// Builds `Tail = v2^(n^2+1) s_v^e2 v2^(n^2+2) ... s_v^eh v2^(n^2+h)` with
/// `v2 = [s_v^d, s_x^d]`, and checks it.
pub fn surjectivity_witness(p: &ParamSet) -> Result<SurjectivityWitness> {
    let sym = Alphabet::new(2)?;
    let (sx, sv) = (sym.generator(1)?, sym.generator(2)?);
    let d = BigInt::from(p.d().clone());
    let v2 = sv.power(d.clone())?.commutator(&sx.power(d)?)?;
    let tail = w2_template(&Word::empty(sym), &v2, &sv, p)?;

    let (a1, a2) = (sym.generator(1)?, sym.generator(2)?);
    let v1 = make_v(1, &a1, &a2, p)?;
    let w2 = make_w2(&a1, &a2, p)?;
    let check = a2.concat(&substitute(&tail, &[a1.clone(), v1])?)? == w2;
    let preimage = substitute(&tail, &[a1.clone(), a2.clone()])?.inverse();
    let psi = psi_infinity(2, p)?;
    let preimage_check = psi.apply(&preimage)? == w2.inverse().concat(&a2)?;
    let plain = a2.concat(&substitute(&tail, &[a1, a2.clone()])?)?;
    Ok(SurjectivityWitness {
        zero_exponent_sums: plain.abelianization().iter().all(BigInt::is_zero),
        tail,
        check,
        preimage,
        preimage_check,
    })
}
