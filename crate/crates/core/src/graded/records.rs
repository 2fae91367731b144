//! Relators and the triples they are built from.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lpp::{bound_f, LppAssignment};
use crate::verbal::{w1_schedule, w1_template, w2_schedule, w2_template, ParamSet};
use crate::word::Word;

/// A defining relator `R_{A^f, j, z*}` with the words it is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorRecord {
    pub z_star: u8,
    pub period: Word,
    pub f: BigInt,
    pub j: usize,
    pub t: Word,
    pub u: Word,
    pub relator: Word,
    /// Empty when the magnitude bounds of the ledger hold.
    pub warnings: Vec<String>,
}

impl RelatorRecord {
    pub fn ledger_compliant(&self) -> bool {
        self.warnings.is_empty()
    }

    /// Rebuilds the relator word from the stored fields.
    pub fn regenerate(&self, p: &ParamSet) -> Result<Word> {
        Ok(build_relator(self.z_star, &self.period, &self.f, &self.t, &self.u, p)?.relator)
    }

    /// Records every magnitude bound that fails: `|A| > d`,
    /// `|T|, |U| < d |A|` and, given an assignment, `0 < |f| <= 100 / zeta`.
    pub fn check_bounds(&mut self, p: &ParamSet, assign: Option<&LppAssignment>) {
        self.warnings.clear();
        let a = self.period.len();
        let d = p.d();
        if &a <= d {
            self.warnings.push(format!("|A| = {a} <= d = {d}"));
        }
        let cap = d * &a;
        for (name, w) in [("T", &self.t), ("U", &self.u)] {
            if w.len() >= cap {
                self.warnings.push(format!("|{name}| = {} >= d|A| = {cap}", w.len()));
            }
        }
        if let Some(assign) = assign {
            let bf = bound_f(assign);
            if self.f.abs() > bf {
                self.warnings.push(format!("|f| = {} > {bf}", self.f.abs()));
            }
        }
    }
}

/// Exponents of the `A` slots of the `z*` template, in order, for `f = 1`.
pub fn a_exponents(z_star: u8, p: &ParamSet) -> Result<Vec<BigInt>> {
    match z_star {
        1 => Ok(w1_schedule(p)?.into_iter().map(|(_, e)| e).collect()),
        2 => w2_schedule(p),
        _ => Err(Error::InvalidIndex(z_star as i64)),
    }
}

/// Instantiates the `z*` relator template:
///
/// ```text
/// z* = 1:  T^e1 A^(nf) T^e2 A^((n+2)f) ... T^e(h/2) A^((n+h-2+h/2)f)
///          T^e1 A^-((n+1)f) ... T^e(h/2) A^-((n+h-1)f)
/// z* = 2:  U A^((n^2+1)f) T^e2 A^((n^2+2)f) ... T^eh A^((n^2+h)f)
/// ```
///
/// The result has `j = 0` and no bound checks.
pub fn build_relator(z_star: u8, period: &Word, f: &BigInt, t: &Word, u: &Word, p: &ParamSet) -> Result<RelatorRecord> {
    if f.is_zero() {
        return Err(Error::ZeroExponent);
    }
    if t.is_empty() || u.is_empty() || period.is_empty() {
        return Err(Error::EmptyWord);
    }
    let af = period.power(f.clone())?;
    let relator = match z_star {
        1 => w1_template(t, &af, p)?,
        2 => w2_template(u, &af, t, p)?,
        _ => return Err(Error::InvalidIndex(z_star as i64)),
    };
    Ok(RelatorRecord {
        z_star,
        period: period.clone(),
        f: f.clone(),
        j: 0,
        t: t.clone(),
        u: u.clone(),
        relator,
        warnings: Vec::new(),
    })
}

/// An `(A^f, j, z*)`-triple: `X ≡ B^k`, `Y ≡ Z C^e Z^-1` graphically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleRecord {
    pub x: Word,
    pub y: Word,
    pub z: Word,
    pub base_x: (Word, BigUint),
    pub base_y: (Word, BigUint),
    /// Conjugators up to this length were searched for a shorter `Z`.
    pub z_cap: usize,
}

impl TripleRecord {
    /// Decomposes `(x, y)`, searching for `Z` by length up to `z_cap`.
    pub fn new(x: &Word, y: &Word, z_cap: usize) -> Result<TripleRecord> {
        let base_x = x.graphical_root()?;
        let (core, z0) = y.cyclic_reduce();
        let z = shortest_graphical_conjugator(y, z_cap).unwrap_or(z0);
        let c = y.conjugate(&z.inverse())?;
        debug_assert_eq!(c, core);
        let base_y = c.primitive_root()?;
        Ok(TripleRecord { x: x.clone(), y: y.clone(), z, base_x, base_y, z_cap })
    }

    /// Whether `X = B^k` and `Y = Z C^e Z^-1` hold letter for letter.
    pub fn check(&self) -> Result<bool> {
        let (b, k) = &self.base_x;
        let (c, e) = &self.base_y;
        let x_ok = b.power(BigInt::from(k.clone()))? == self.x;
        let ce = c.power(BigInt::from(e.clone()))?;
        let glued = self.z.concat(&ce)?.concat(&self.z.inverse())?;
        let graphical = glued == self.y && self.y.len() == &self.z.len() * 2u32 + ce.len();
        Ok(x_ok && graphical && ce.is_cyclically_reduced())
    }
}

/// Shortest `Z` (by length, then shortlex) with `Z^-1 Y Z` cyclically
/// reduced and `|Y| = 2|Z| + |Z^-1 Y Z|`.
fn shortest_graphical_conjugator(y: &Word, cap: usize) -> Option<Word> {
    let alphabet = y.alphabet();
    let mut layer = vec![Word::empty(alphabet)];
    for len in 0..=cap {
        for z in &layer {
            let Ok(k) = y.conjugate(&z.inverse()) else { continue };
            if k.is_cyclically_reduced() && y.len() == &k.len() + BigUint::from(2 * len) {
                return Some(z.clone());
            }
        }
        let mut next = Vec::new();
        for z in &layer {
            for l in alphabet.letters() {
                if z.last_letter() != Some(l.inverse()) {
                    let mut b = crate::word::WordBuilder::from_word(z);
                    b.push_letter(l);
                    next.push(b.finish());
                }
            }
        }
        layer = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Word::parse(Alphabet::new(2).unwrap(), s).unwrap()
    }

    fn p() -> ParamSet {
        ParamSet::new(20u32, 2u32, 3u32).unwrap()
    }

    #[test]
    fn exponent_sums_of_templates() {
        let one = BigInt::from(1);
        let r1 = build_relator(1, &w("a2"), &one, &w("a1"), &w("a1"), &p()).unwrap();
        assert!(r1.relator.exponent_sum(2).unwrap().is_zero());
        let r2 = build_relator(2, &w("a2"), &one, &w("a1"), &w("a1"), &p()).unwrap();
        assert_eq!(r2.relator.exponent_sum(2).unwrap(), BigInt::from(390));
    }

    #[test]
    fn degenerate_inputs() {
        let one = BigInt::from(1);
        assert_eq!(build_relator(1, &w("a2"), &BigInt::zero(), &w("a1"), &w("a1"), &p()), Err(Error::ZeroExponent));
        assert_eq!(build_relator(2, &w("a2"), &one, &w("1"), &w("1"), &p()), Err(Error::EmptyWord));
        assert_eq!(build_relator(3, &w("a2"), &one, &w("a1"), &w("a1"), &p()), Err(Error::InvalidIndex(3)));
    }

    #[test]
    fn triples() {
        let t = TripleRecord::new(&w("a1^2 a2 a1^2 a2"), &w("a2 a1 a2 a1 a2^-1"), 3).unwrap();
        assert_eq!(t.base_x, (w("a1^2 a2"), BigUint::from(2u32)));
        assert_eq!(t.z, w("a2"));
        assert_eq!(t.base_y, (w("a1 a2 a1"), BigUint::from(1u32)));
        assert!(t.check().unwrap());
    }

    #[test]
    fn bounds_warnings() {
        let one = BigInt::from(1);
        let mut r = build_relator(1, &w("a2"), &one, &w("a1"), &w("a1"), &p()).unwrap();
        r.check_bounds(&p(), None);
        assert!(!r.ledger_compliant());
        assert_eq!(r.warnings.len(), 1);
        let mut r = build_relator(1, &w("a2 a1 a2 a1^-1"), &one, &w("a1"), &w("a1"), &p()).unwrap();
        r.check_bounds(&p(), None);
        assert!(r.ledger_compliant(), "{:?}", r.warnings);
        assert_eq!(r.regenerate(&p()).unwrap(), r.relator);
    }
}
