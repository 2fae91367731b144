//! Pair classes, relator synthesis and verbal membership.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graded::letters::{free_conjugator, rotation_offset, to_signed};
use crate::graded::oracle::{Oracle, Verdict};
use crate::graded::records::{build_relator, RelatorRecord, TripleRecord};
use crate::verbal::{make_v, make_w1, make_w2, ParamSet};
use crate::word::{Alphabet, Word};

/// Pairs with conjugate `(v_{z*}, w_{z*})`, with the triple of the
/// representative (the member with least `|X| + |Y|`, then shortlex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub key: (Word, Word),
    pub j: usize,
    pub members: Vec<(Word, Word)>,
    pub triple: TripleRecord,
}

/// All classes whose `v_{z*}` is conjugate to `A^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    pub period: Word,
    pub f: BigInt,
    pub classes: Vec<PairClass>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub groups: Vec<ClassGroup>,
    /// Pairs dropped because `v_{z*}` or `w_{z*}` is trivial.
    pub discarded: usize,
    /// Pairs whose `w_{z*}` the oracle could not decide.
    pub indeterminate: Vec<(Word, Word)>,
}

impl Classification {
    pub fn class_count(&self) -> usize {
        self.groups.iter().map(|g| g.classes.len()).sum()
    }

    pub fn into_strict(self) -> Result<Self> {
        if self.indeterminate.is_empty() {
            Ok(self)
        } else {
            let words = self.indeterminate.into_iter().flat_map(|(x, y)| [x, y]).collect();
            Err(Error::OracleBudgetExceeded { indeterminate: words })
        }
    }
}

/// Nonempty freely reduced words of length at most `max_len`, shortlex.
pub fn reduced_words_up_to(alphabet: Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty(alphabet)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in alphabet.letters() {
                if w.last_letter() != Some(l.inverse()) {
                    let mut b = crate::word::WordBuilder::from_word(w);
                    b.push_letter(l);
                    next.push(b.finish());
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `(A, f)` with `v` conjugate to `A^f` in the free group, `A` the
/// shortlex-least cyclic representative among the shifts of the primitive
/// root and of its inverse.
pub fn period_of(v: &Word) -> Result<Option<(Word, BigInt)>> {
    let (core, _) = v.cyclic_reduce();
    if core.is_empty() {
        return Ok(None);
    }
    let (root, k) = core.primitive_root()?;
    let up = root.canonical_cyclic().into_word();
    let down = root.inverse().canonical_cyclic().into_word();
    let k = BigInt::from(k);
    Ok(Some(if up <= down { (up, k) } else { (down, -k) }))
}

/// Canonical form of the pair `(v, w)` up to simultaneous conjugation in
/// the free group.
pub fn pair_key(v: &Word, w: &Word) -> Result<(Word, Word)> {
    let (core, outer) = v.cyclic_reduce();
    if core.is_empty() {
        return Ok((core, w.cyclic_reduce().0.canonical_cyclic().into_word()));
    }
    let canon = core.canonical_cyclic().into_word();
    let r = rotation_offset(&to_signed(&core)?, &to_signed(&canon)?).expect("canonical form is a rotation");
    let w0 = outer.concat(&core.prefix(&BigUint::from(r)))?;
    let q = w.conjugate(&w0.inverse())?;
    // the centralizer of the canonical core is generated by its root
    let (rho, _) = canon.primitive_root()?;
    let conj_by = |k: i64| -> Result<Word> { q.conjugate(&rho.power(k)?) };
    let mut k = 0i64;
    let mut best = conj_by(0)?;
    for dir in [1i64, -1] {
        loop {
            let cand = conj_by(k + dir)?;
            if cand.len() < best.len() {
                k += dir;
                best = cand;
            } else {
                break;
            }
        }
    }
    for dk in -2..=2 {
        let cand = conj_by(k + dk)?;
        if cand.shortlex_cmp(&best).is_lt() {
            best = cand;
        }
    }
    Ok((canon, best))
}

fn verbal_pair(z_star: u8, x: &Word, y: &Word, p: &ParamSet) -> Result<(Word, Word)> {
    let v = make_v(z_star, x, y, p)?;
    let w = match z_star {
        1 => make_w1(x, y, p)?,
        2 => make_w2(x, y, p)?,
        _ => return Err(Error::InvalidIndex(z_star as i64)),
    };
    Ok((v, w))
}

type PairsByKey = BTreeMap<(Word, Word), Vec<(Word, Word)>>;

/// Groups the pairs `(X, Y)` with `|X|, |Y| <= pair_budget` by the
/// conjugacy class of `(v_{z*}(X, Y), w_{z*}(X, Y))`.
///
/// Pairs with `v_{z*}` freely trivial or `w_{z*}` trivial according to
/// `oracle` are dropped. Class keys and `(A, f)` are computed in the free
/// group. Class indices `j` follow the shortlex order of the keys.
pub fn classify_pairs(
    alphabet: Alphabet,
    p: &ParamSet,
    z_star: u8,
    pair_budget: usize,
    oracle: &dyn Oracle,
    z_cap: usize,
) -> Result<Classification> {
    let words = reduced_words_up_to(alphabet, pair_budget);
    let mut out = Classification::default();
    let mut by_period: BTreeMap<(Word, BigInt), PairsByKey> = BTreeMap::new();
    for x in &words {
        for y in &words {
            let (v, w) = verbal_pair(z_star, x, y, p)?;
            let Some((a, f)) = period_of(&v)? else {
                out.discarded += 1;
                continue;
            };
            match oracle.is_trivial(&w) {
                Verdict::Yes => {
                    out.discarded += 1;
                    continue;
                }
                Verdict::Indeterminate => {
                    out.indeterminate.push((x.clone(), y.clone()));
                    continue;
                }
                Verdict::No => {}
            }
            let key = pair_key(&v, &w)?;
            by_period.entry((a, f)).or_default().entry(key).or_default().push((x.clone(), y.clone()));
        }
    }
    for ((period, f), classes) in by_period {
        let mut group = ClassGroup { period, f, classes: Vec::new() };
        for (j, (key, mut members)) in classes.into_iter().enumerate() {
            members.sort_by(|a, b| {
                let la = a.0.len() + a.1.len();
                let lb = b.0.len() + b.1.len();
                la.cmp(&lb).then_with(|| a.0.cmp(&b.0)).then_with(|| a.1.cmp(&b.1))
            });
            let (x, y) = &members[0];
            let triple = TripleRecord::new(x, y, z_cap)?;
            group.classes.push(PairClass { key, j, members, triple });
        }
        out.groups.push(group);
    }
    Ok(out)
}

/// The shortest `W` (then shortlex) with `v ≡ W A^f W^-1`.
fn conjugator_to_period(v: &Word, period: &Word, f: &BigInt) -> Result<Word> {
    let af = period.power(f.clone())?;
    let (core, outer) = v.cyclic_reduce();
    let r = rotation_offset(&to_signed(&af)?, &to_signed(&core)?)
        .ok_or_else(|| Error::WitnessNotFound(format!("{v} is not conjugate to ({period})^{f}")))?;
    let base = outer.concat(&af.prefix(&BigUint::from(r)).inverse())?;
    let mut best: Option<Word> = None;
    for k in -2i64..=2 {
        let cand = base.concat(&period.power(k)?)?;
        if best.as_ref().is_none_or(|b| cand.shortlex_cmp(b).is_lt()) {
            best = Some(cand);
        }
    }
    let w = best.expect("nonempty window");
    debug_assert_eq!(af.conjugate(&w)?, *v);
    Ok(w)
}

/// Builds the relator of a class: with `v_{z*}(X, Y) ≡ W A^f W^-1`,
/// `T = W^-1 v_{z*-1}(X, Y) W` and `U = W^-1 Y W`, so that the relator is
/// `W^-1 w_{z*}(X, Y) W` letter for letter.
pub fn synthesize_relator(
    z_star: u8,
    period: &Word,
    f: &BigInt,
    j: usize,
    triple: &TripleRecord,
    p: &ParamSet,
) -> Result<RelatorRecord> {
    let (x, y) = (&triple.x, &triple.y);
    let v = make_v(z_star, x, y, p)?;
    let w = conjugator_to_period(&v, period, f)?;
    let w_inv = w.inverse();
    let t = make_v(z_star - 1, x, y, p)?.conjugate(&w_inv)?;
    let u = y.conjugate(&w_inv)?;
    let mut rec = build_relator(z_star, period, f, &t, &u, p)?;
    rec.j = j;
    Ok(rec)
}

/// Result of [`verbal_membership_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `W` with `W R W^-1 = w_{z*}(X, Y)` letter for letter after free reduction.
    Found(Word),
    Indeterminate,
}

/// Finds `W` with `W · relator · W^-1 = w_{z*}(X, Y)` for the triple's
/// pair. Over the free group (`oracle.rank() == 0`) the check is exact and
/// failure is [`Error::WitnessNotFound`].
pub fn verbal_membership_witness(
    rec: &RelatorRecord,
    triple: &TripleRecord,
    p: &ParamSet,
    oracle: &dyn Oracle,
) -> Result<Witness> {
    let (_, target) = verbal_pair(rec.z_star, &triple.x, &triple.y, p)?;
    if let Some(w) = free_conjugator(&rec.relator, &target)? {
        if rec.relator.conjugate(&w)? == target {
            return Ok(Witness::Found(w));
        }
    }
    if oracle.rank() == 0 {
        return Err(Error::WitnessNotFound(format!(
            "relator z*={} j={} is not conjugate to w_{}(X, Y)",
            rec.z_star, rec.j, rec.z_star
        )));
    }
    match oracle.conjugate(&rec.relator, &target) {
        Verdict::No => Err(Error::WitnessNotFound(format!("relator z*={} j={}", rec.z_star, rec.j))),
        _ => Ok(Witness::Indeterminate),
    }
}

/// Sum of the `A` exponents of a relator template, from its slots.
pub fn a_exponent_sum(z_star: u8, f: &BigInt, p: &ParamSet) -> Result<BigInt> {
    Ok(crate::graded::records::a_exponents(z_star, p)?.into_iter().sum::<BigInt>() * f)
}

/// The period rank of a relator is the length of its period.
pub fn period_rank(rec: &RelatorRecord) -> Option<usize> {
    rec.period.len().to_usize()
}
