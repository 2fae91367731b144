//! The two-variable words `v_0, v_1, v_2, w_1, w_2` and their templates.
//!
//! With `[a, b] = a b a^-1 b^-1`:
//!
//! ```text
//! v_0(x, y) = x
//! v_1(x, y) = [((x^d y^d)^d x^d)^d, x^d]^d y
//! v_2(x, y) = [v_1(x, y)^d, x^d]
//! w_1(x, y) = x^e1 v_1^n x^e2 v_1^(n+2) ... x^e(h/2) v_1^((n+h-2)+h/2)
//!             x^e1 v_1^-(n+1) x^e2 v_1^-(n+3) ... x^e(h/2) v_1^-(n+h-1)
//! w_2(x, y) = y v_2^(n^2+1) v_1^e2 v_2^(n^2+2) ... v_1^eh v_2^(n^2+h)
//! ```
//!
//! where `e_i = epsilon(i)` and `h ≡ 0 (mod 20)`. The shapes of `w_1` and
//! `w_2` are exposed as [`w1_template`] and [`w2_template`] because the
//! relators of a graded presentation and the kernel word of the
//! endomorphism reuse them with other words in the slots.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{parse_err, Error, Result};
use crate::word::{Word, WordBuilder};

/// The integer parameters `(h, d, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamSet {
    h: BigUint,
    d: BigUint,
    n: BigUint,
}

impl ParamSet {
    pub fn new(h: impl Into<BigUint>, d: impl Into<BigUint>, n: impl Into<BigUint>) -> Result<Self> {
        let (h, d, n) = (h.into(), d.into(), n.into());
        if !(&h % 20u32).is_zero() {
            return Err(Error::InvalidParams(format!("h = {h} is not divisible by 20")));
        }
        if h.is_zero() {
            return Err(Error::InvalidParams("h must be at least 20".into()));
        }
        if d.is_zero() || n.is_zero() {
            return Err(Error::InvalidParams("d and n must be positive".into()));
        }
        Ok(ParamSet { h, d, n })
    }

    pub fn h(&self) -> &BigUint {
        &self.h
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    fn h_small(&self) -> Result<u64> {
        self.h.to_u64().ok_or(Error::TooLarge { what: "h", needed: self.h.to_string(), budget: u64::MAX })
    }

    fn di(&self) -> BigInt {
        BigInt::from(self.d.clone())
    }

    fn ni(&self) -> BigInt {
        BigInt::from(self.n.clone())
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={} d={} n={}", self.h, self.d, self.n)
    }
}

/// Parses `h = 20`, `d = 2`, `n = 3` lines (also `h=20` on one line,
/// whitespace separated). `#` starts a comment.
impl FromStr for ParamSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mut h, mut d, mut n) = (None, None, None);
        let cleaned: String = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join(" ")
            .replace(" = ", "=")
            .replace("= ", "=")
            .replace(" =", "=");
        for tok in cleaned.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| parse_err(format!("expected key=value, got `{tok}`")))?;
            let v: BigUint = v.parse().map_err(|_| parse_err(format!("bad value for {k}: `{v}`")))?;
            match k {
                "h" => h = Some(v),
                "d" => d = Some(v),
                "n" => n = Some(v),
                _ => return Err(parse_err(format!("unknown parameter `{k}`"))),
            }
        }
        match (h, d, n) {
            (Some(h), Some(d), Some(n)) => ParamSet::new(h, d, n),
            _ => Err(parse_err("parameter file must set h, d and n")),
        }
    }
}

/// The sign `epsilon_i`: `+1` when `i mod 10` is 1, 2, 3, 5 or 6 and `-1`
/// otherwise.
pub fn epsilon(i: u64) -> Result<i8> {
    match i % 10 {
        _ if i == 0 => Err(Error::InvalidIndex(0)),
        1 | 2 | 3 | 5 | 6 => Ok(1),
        _ => Ok(-1),
    }
}

/// One of the two-variable words built here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerbalWord {
    V0,
    V1,
    V2,
    W1,
    W2,
}

impl FromStr for VerbalWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "v0" => VerbalWord::V0,
            "v1" => VerbalWord::V1,
            "v2" => VerbalWord::V2,
            "w1" => VerbalWord::W1,
            "w2" => VerbalWord::W2,
            _ => return Err(parse_err(format!("unknown word `{s}`"))),
        })
    }
}

/// Exponents of the `v`-slots of `w_1`, each paired with the index of the
/// sign on the preceding `x`-slot.
pub fn w1_schedule(p: &ParamSet) -> Result<Vec<(u64, BigInt)>> {
    let h = p.h_small()?;
    let half = h / 2;
    let (n, hi) = (p.ni(), BigInt::from(h));
    let mut out = Vec::with_capacity(h as usize);
    for k in 1..=half {
        let e = if k == half { (&n + &hi - 2) + BigInt::from(half) } else { &n + BigInt::from(2 * (k - 1)) };
        out.push((k, e));
    }
    for k in 1..=half {
        out.push((k, -(&n + BigInt::from(2 * k - 1))));
    }
    Ok(out)
}

/// Exponents of the `v_2`-slots of `w_2`: `n^2 + i` for `i = 1..=h`.
pub fn w2_schedule(p: &ParamSet) -> Result<Vec<BigInt>> {
    let h = p.h_small()?;
    let n2 = p.ni() * p.ni();
    Ok((1..=h).map(|i| &n2 + BigInt::from(i)).collect())
}

/// `x^e1 v^s1 x^e2 v^s2 ...` following the `w_1` schedule.
pub fn w1_template(x: &Word, v: &Word, p: &ParamSet) -> Result<Word> {
    x.alphabet().same(v.alphabet())?;
    let mut b = WordBuilder::new(x.alphabet());
    for (k, e) in w1_schedule(p)? {
        b.push_power(x, &BigInt::from(epsilon(k)?))?;
        b.push_power(v, &e)?;
    }
    Ok(b.finish())
}

/// `lead v2^(n^2+1) v1^e2 v2^(n^2+2) ... v1^eh v2^(n^2+h)`.
pub fn w2_template(lead: &Word, v2: &Word, v1: &Word, p: &ParamSet) -> Result<Word> {
    lead.alphabet().same(v2.alphabet())?;
    lead.alphabet().same(v1.alphabet())?;
    let mut b = WordBuilder::from_word(lead);
    for (i, e) in (1u64..).zip(w2_schedule(p)?) {
        if i > 1 {
            b.push_power(v1, &BigInt::from(epsilon(i)?))?;
        }
        b.push_power(v2, &e)?;
    }
    Ok(b.finish())
}

/// `v_z(X, Y)` for `z` in `{0, 1, 2}`.
pub fn make_v(z: u8, x: &Word, y: &Word, p: &ParamSet) -> Result<Word> {
    x.alphabet().same(y.alphabet())?;
    match z {
        0 => Ok(x.clone()),
        1 => {
            let d = p.di();
            let xd = x.power(d.clone())?;
            let yd = y.power(d.clone())?;
            let inner = xd.concat(&yd)?.power(d.clone())?.concat(&xd)?;
            let c = inner.power(d.clone())?.commutator(&xd)?;
            c.power(d)?.concat(y)
        }
        2 => {
            let d = p.di();
            make_v(1, x, y, p)?.power(d.clone())?.commutator(&x.power(d)?)
        }
        _ => Err(Error::InvalidIndex(z as i64)),
    }
}

pub fn make_w1(x: &Word, y: &Word, p: &ParamSet) -> Result<Word> {
    w1_template(x, &make_v(1, x, y, p)?, p)
}

pub fn make_w2(x: &Word, y: &Word, p: &ParamSet) -> Result<Word> {
    let v1 = make_v(1, x, y, p)?;
    let v2 = v1.power(p.di())?.commutator(&x.power(p.di())?)?;
    w2_template(y, &v2, &v1, p)
}

/// `make_v(z, ...)` for `z < 3`, `make_w1`/`make_w2` for `w1`/`w2`.
pub fn make(which: VerbalWord, x: &Word, y: &Word, p: &ParamSet) -> Result<Word> {
    match which {
        VerbalWord::V0 => make_v(0, x, y, p),
        VerbalWord::V1 => make_v(1, x, y, p),
        VerbalWord::V2 => make_v(2, x, y, p),
        VerbalWord::W1 => make_w1(x, y, p),
        VerbalWord::W2 => make_w2(x, y, p),
    }
}

/// Letter count of the fully expanded, unreduced template of `which` when
/// `|X| = x_len` and `|Y| = y_len`. An upper bound for the reduced length.
pub fn word_length_symbolic(which: VerbalWord, x_len: &BigUint, y_len: &BigUint, p: &ParamSet) -> BigUint {
    let (d, n, h) = (p.d(), p.n(), p.h());
    let v1 = || {
        let inner = d * (d * x_len + d * y_len) + d * x_len;
        let comm = BigUint::from(2u32) * (d * inner) + BigUint::from(2u32) * d * x_len;
        d * comm + y_len
    };
    let v2 = |v1: &BigUint| BigUint::from(2u32) * d * v1 + BigUint::from(2u32) * d * x_len;
    match which {
        VerbalWord::V0 => x_len.clone(),
        VerbalWord::V1 => v1(),
        VerbalWord::V2 => v2(&v1()),
        VerbalWord::W1 => {
            // both halves carry h n / 2 + h^2 / 4 copies of v_1
            let copies = h * n + (h * h) / 2u32;
            h * x_len + copies * v1()
        }
        VerbalWord::W2 => {
            let v1 = v1();
            let copies = h * n * n + (h * (h + 1u32)) / 2u32;
            y_len + copies * v2(&v1) + (h - 1u32) * v1
        }
    }
}

/// Closed form `h n^2 + h (h + 1) / 2` for the sum of the `v_2` exponents
/// in `w_2`.
pub fn w2_total_exponent(p: &ParamSet) -> BigInt {
    let h = BigInt::from(p.h().clone());
    let n = p.ni();
    &h * &n * &n + (&h * (&h + BigInt::one())).div_floor(&BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use crate::word::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn g(i: u32) -> Word {
        ab().generator(i).unwrap()
    }

    fn letters(w: &Word) -> Vec<i64> {
        w.letters().map(|l| l.signed() as i64).collect()
    }

    fn p(h: u32, d: u32, n: u32) -> ParamSet {
        ParamSet::new(h, d, n).unwrap()
    }

    #[test]
    fn epsilon_schedule() {
        assert_eq!(epsilon(1).unwrap(), 1);
        assert_eq!(epsilon(4).unwrap(), -1);
        assert_eq!(epsilon(0), Err(Error::InvalidIndex(0)));
        assert_eq!((1..=10).map(|i| epsilon(i).unwrap() as i64).sum::<i64>(), 0);
        for i in 1..200 {
            assert_eq!(epsilon(i).unwrap() as i64, oracles::epsilon_table(i));
        }
    }

    #[test]
    fn params_validation() {
        assert!(matches!(ParamSet::new(30u32, 2u32, 3u32), Err(Error::InvalidParams(_))));
        assert!(ParamSet::new(0u32, 2u32, 3u32).is_err());
        assert!(ParamSet::new(20u32, 0u32, 3u32).is_err());
        let q: ParamSet = "h = 40\nd = 3 # comment\nn=5".parse().unwrap();
        assert_eq!(q, p(40, 3, 5));
        assert!("h=20 d=2".parse::<ParamSet>().is_err());
    }

    #[test]
    fn v_words() {
        let q = p(20, 2, 3);
        assert_eq!(make_v(0, &g(1), &g(2), &q).unwrap(), g(1));
        assert_eq!(make_v(1, &g(1), &g(1), &q).unwrap(), g(1));
        let v1 = make_v(1, &g(1), &g(2), &q).unwrap();
        let oracle = oracles::stack_reduce(&oracles::v1_letters(&[1], &[2], 2));
        assert_eq!(letters(&v1), oracle);
        let v2 = make_v(2, &g(1), &g(2), &q).unwrap();
        assert_eq!(v2, v1.power(2).unwrap().commutator(&g(1).power(2).unwrap()).unwrap());
        assert_eq!(make_v(3, &g(1), &g(2), &q), Err(Error::InvalidIndex(3)));
    }

    #[test]
    fn w_words_match_letter_oracle() {
        let q = p(20, 2, 3);
        let x = Word::parse(ab(), "a1 a2").unwrap();
        let y = Word::parse(ab(), "a2^-1").unwrap();
        let w1 = make_w1(&x, &y, &q).unwrap();
        assert_eq!(letters(&w1), oracles::stack_reduce(&oracles::w1_letters(&[1, 2], &[-2], 20, 2, 3)));
        let w2 = make_w2(&x, &y, &q).unwrap();
        assert_eq!(letters(&w2), oracles::stack_reduce(&oracles::w2_letters(&[1, 2], &[-2], 20, 2, 3)));
    }

    #[test]
    fn zero_exponent_sums() {
        for q in [p(20, 2, 3), p(40, 3, 5)] {
            for w in [make_w1(&g(1), &g(2), &q).unwrap(), make_w2(&g(1), &g(2), &q).unwrap()] {
                assert!(w.exponent_sum(1).unwrap().is_zero());
                assert!(w.exponent_sum(2).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn collapse_when_arguments_agree() {
        let q = p(20, 2, 3);
        assert!(make_w1(&g(1), &g(1), &q).unwrap().is_empty());
        let w2 = make_w2(&g(1), &g(2), &q).unwrap();
        assert_eq!(w2.runs()[0].gen, 2);
        assert_eq!(w2.runs()[0].exp, BigInt::one());
    }

    #[test]
    fn symbolic_lengths_match_expansion() {
        let q = p(20, 2, 3);
        let one = BigUint::one();
        for (which, expect) in [
            (VerbalWord::V1, oracles::v1_letters(&[1], &[2], 2).len()),
            (VerbalWord::V2, oracles::v2_letters(&[1], &[2], 2).len()),
            (VerbalWord::W1, oracles::w1_letters(&[1], &[2], 20, 2, 3).len()),
            (VerbalWord::W2, oracles::w2_letters(&[1], &[2], 20, 2, 3).len()),
        ] {
            assert_eq!(word_length_symbolic(which, &one, &one, &q), BigUint::from(expect), "{which:?}");
        }
        let three = BigUint::from(3u32);
        assert_eq!(word_length_symbolic(VerbalWord::V0, &three, &one, &q), three);
        let bigger = p(20, 2, 4);
        assert!(
            word_length_symbolic(VerbalWord::W1, &one, &one, &bigger)
                > word_length_symbolic(VerbalWord::W1, &one, &one, &q)
        );
    }

    #[test]
    fn schedule_closed_forms() {
        let q = p(40, 3, 7);
        let s1: BigInt = w1_schedule(&q).unwrap().into_iter().map(|(_, e)| e).sum();
        assert!(s1.is_zero());
        let s2: BigInt = w2_schedule(&q).unwrap().into_iter().sum();
        assert_eq!(s2, BigInt::from(40 * 49 + 40 * 41 / 2));
        assert_eq!(s2, w2_total_exponent(&q));
    }
}
