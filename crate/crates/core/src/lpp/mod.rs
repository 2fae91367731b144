//! The parameter chain `alpha > beta > gamma > delta > eps > zeta > eta > iota`
//! and the catalog of inequalities the construction needs from it.
//!
//! Every parameter is an exact positive rational. `h = 1/delta`,
//! `d = 1/eta` and `n = 1/iota` must be integers and `h` a multiple of 20.
//! An inequality is charged to the smallest parameter it mentions (its
//! *least parameter*); [`solve`] picks parameters largest first, each one
//! small enough for the inequalities charged to it.
//!
//! ```
//! use relfree::lpp::{solve, verify, Catalog};
//!
//! let cat = Catalog::builtin();
//! let assign = solve(&cat).unwrap();
//! assert!(verify(&assign, &cat).unwrap().passed());
//! ```

mod expr;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use expr::{fmt_rational, parse_rational, Expr, Inequality, Param, Relation, Var};

use crate::error::{parse_err, Error, Result};

const BUILTIN: &str = include_str!("../../data/lpp_catalog.txt");

/// Values for all eight parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LppAssignment {
    values: [BigRational; 8],
}

impl LppAssignment {
    pub fn new(values: [BigRational; 8]) -> Self {
        LppAssignment { values }
    }

    pub fn get(&self, p: Param) -> &BigRational {
        &self.values[p.index()]
    }

    pub fn set(&mut self, p: Param, value: BigRational) {
        self.values[p.index()] = value;
    }

    pub fn with(mut self, p: Param, value: BigRational) -> Self {
        self.set(p, value);
        self
    }

    /// `1/p` when `p` is a unit fraction.
    pub fn inverse_integer(&self, p: Param) -> Option<BigInt> {
        let v = self.get(p);
        (v.is_positive() && v.numer().is_one()).then(|| v.denom().clone())
    }

    pub fn h(&self) -> Option<BigInt> {
        self.inverse_integer(Param::Delta)
    }

    pub fn d(&self) -> Option<BigInt> {
        self.inverse_integer(Param::Eta)
    }

    pub fn n(&self) -> Option<BigInt> {
        self.inverse_integer(Param::Iota)
    }

    /// The verbal-word parameters `(h, d, n)`, if admissible.
    pub fn param_set(&self) -> Result<crate::verbal::ParamSet> {
        let get = |v: Option<BigInt>, what: &str| {
            v.and_then(|x| x.to_biguint()).ok_or_else(|| Error::InvalidParams(format!("{what} is not a unit fraction")))
        };
        crate::verbal::ParamSet::new(get(self.h(), "delta")?, get(self.d(), "eta")?, get(self.n(), "iota")?)
    }
}

/// One `name = value` per line; `h`, `d`, `n` may stand in for `delta`,
/// `eta`, `iota` as integers.
impl FromStr for LppAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut values: [Option<BigRational>; 8] = Default::default();
        for line in s.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| parse_err(format!("expected `name = value`, got `{line}`")))?;
            let (k, v) = (k.trim(), parse_rational(v)?);
            let (p, v) = match k {
                "h" | "d" | "n" => {
                    let p = match k {
                        "h" => Param::Delta,
                        "d" => Param::Eta,
                        _ => Param::Iota,
                    };
                    if v.is_zero() {
                        return Err(Error::NonPositiveParameter(p.name()));
                    }
                    (p, v.recip())
                }
                _ => (Param::from_name(k).ok_or_else(|| parse_err(format!("unknown parameter `{k}`")))?, v),
            };
            values[p.index()] = Some(v);
        }
        let mut out = Vec::with_capacity(8);
        for p in Param::ALL {
            out.push(values[p.index()].take().ok_or_else(|| parse_err(format!("missing parameter `{p}`")))?);
        }
        Ok(LppAssignment { values: out.try_into().expect("eight values") })
    }
}

impl fmt::Display for LppAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in Param::ALL {
            writeln!(f, "{} = {}", p, fmt_rational(self.get(p)))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogItem {
    pub id: String,
    pub source: String,
    pub inequality: Inequality,
    pub anchor: String,
    pub least: Option<Param>,
}

/// An ordered list of inequalities, read from `id | expression | anchor`
/// lines. Blank lines and `#` comments are skipped.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Catalog {
    items: Vec<CatalogItem>,
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> Catalog {
        BUILTIN.parse().expect("shipped catalog parses")
    }

    pub fn items(&self) -> &[CatalogItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&CatalogItem> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn prefix(&self, k: usize) -> Catalog {
        Catalog { items: self.items[..k.min(self.len())].to_vec() }
    }

    pub fn only(&self, ids: &[&str]) -> Catalog {
        Catalog { items: self.items.iter().filter(|i| ids.contains(&i.id.as_str())).cloned().collect() }
    }

    pub fn push(&mut self, id: &str, expression: &str, anchor: &str) -> Result<()> {
        if self.get(id).is_some() {
            return Err(parse_err(format!("duplicate item id `{id}`")));
        }
        let inequality = Inequality::parse(expression)?;
        self.items.push(CatalogItem {
            id: id.to_string(),
            source: expression.to_string(),
            least: inequality.least_param(),
            inequality,
            anchor: anchor.to_string(),
        });
        Ok(())
    }
}

impl FromStr for Catalog {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cat = Catalog::default();
        for (no, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.splitn(3, '|').map(str::trim).collect();
            if fields.len() < 2 || fields[0].is_empty() {
                return Err(parse_err(format!("line {}: expected `id | expression | anchor`", no + 1)));
            }
            cat.push(fields[0], fields[1], fields.get(2).copied().unwrap_or(""))
                .map_err(|e| parse_err(format!("line {}: {e}", no + 1)))?;
        }
        Ok(cat)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ItemReport {
    pub id: String,
    pub anchor: String,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precondition {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub preconditions: Vec<Precondition>,
    pub items: Vec<ItemReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.preconditions.iter().all(|p| p.pass) && self.items.iter().all(|i| i.pass)
    }

    /// Ids of failing items.
    pub fn failed_items(&self) -> Vec<&str> {
        self.items.iter().filter(|i| !i.pass).map(|i| i.id.as_str()).collect()
    }

    pub fn failed_preconditions(&self) -> Vec<&'static str> {
        self.preconditions.iter().filter(|p| !p.pass).map(|p| p.name).collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.preconditions {
            writeln!(f, "{} {}: {}", if p.pass { "PASS" } else { "FAIL" }, p.name, p.detail)?;
        }
        for i in &self.items {
            writeln!(
                f,
                "{} {}: lhs = {} rhs = {} [{}]",
                if i.pass { "PASS" } else { "FAIL" },
                i.id,
                fmt_rational(&i.lhs),
                fmt_rational(&i.rhs),
                i.anchor
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn check_chain(assign: &LppAssignment) -> Result<()> {
    for p in Param::ALL {
        if !assign.get(p).is_positive() {
            return Err(Error::NonPositiveParameter(p.name()));
        }
    }
    for w in Param::ALL.windows(2) {
        if assign.get(w[0]) <= assign.get(w[1]) {
            return Err(Error::BrokenChainOrder { larger: w[0].name(), smaller: w[1].name() });
        }
    }
    Ok(())
}

/// Evaluates every item of `cat` at `assign`.
pub fn verify(assign: &LppAssignment, cat: &Catalog) -> Result<VerifyReport> {
    if cat.is_empty() {
        return Err(Error::EmptyInput("catalog"));
    }
    check_chain(assign)?;
    let mut preconditions = Vec::new();
    for p in [Param::Delta, Param::Eta, Param::Iota] {
        let v = assign.get(p);
        preconditions.push(Precondition {
            name: match p {
                Param::Delta => "h integer",
                Param::Eta => "d integer",
                _ => "n integer",
            },
            pass: v.numer().is_one(),
            detail: format!("{} = {}", p, fmt_rational(v)),
        });
    }
    let h = assign.get(Param::Delta).recip();
    preconditions.push(Precondition {
        name: "h divisible by 20",
        pass: h.is_integer() && h.to_integer().is_multiple_of(&BigInt::from(20)),
        detail: format!("h = {}", fmt_rational(&h)),
    });
    let value = |p: Param| assign.get(p).clone();
    let mut items = Vec::with_capacity(cat.len());
    for item in cat.items() {
        let (lhs, rhs, pass) = item.inequality.evaluate(&value)?;
        items.push(ItemReport { id: item.id.clone(), anchor: item.anchor.clone(), lhs, rhs, pass });
    }
    Ok(VerifyReport { preconditions, items })
}

/// Parameters held fixed during [`solve_with`].
pub type Fixed = [(Param, BigRational)];

/// Picks values largest parameter first. See [`solve_with`].
pub fn solve(cat: &Catalog) -> Result<LppAssignment> {
    solve_with(cat, &[])
}

const MAX_HALVINGS: u32 = 256;
const MAX_BACKTRACKS: usize = 512;

/// Greedy search in chain order, with `fixed` parameters taken as given.
///
/// A rational parameter starts at the first unit fraction below its
/// predecessor and is halved until the items charged to it hold. `h`, `d`
/// and `n` start at the least admissible integer above the inverse of their
/// predecessor (`h` in steps of 20), are doubled until the items hold and
/// then bisected back down, so a monotone item gets the least passing
/// integer. When no value works, the largest free parameter mentioned by
/// the blocking item is halved and the search resumes from there.
pub fn solve_with(cat: &Catalog, fixed: &Fixed) -> Result<LppAssignment> {
    let mut fixed_at: [Option<BigRational>; 8] = Default::default();
    for (p, v) in fixed {
        if !v.is_positive() {
            return Err(Error::NonPositiveParameter(p.name()));
        }
        fixed_at[p.index()] = Some(v.clone());
    }
    for item in cat.items().iter().filter(|i| i.least.is_none()) {
        let (_, _, ok) = item.inequality.evaluate(&|_| BigRational::one())?;
        if !ok {
            return Err(Error::Unsatisfiable { item: item.id.clone(), param: "none" });
        }
    }
    let charged: Vec<Vec<&CatalogItem>> =
        Param::ALL.iter().map(|p| cat.items().iter().filter(|i| i.least == Some(*p)).collect()).collect();

    let mut values: Vec<BigRational> = vec![BigRational::one(); 8];
    let mut ceiling: [Option<BigRational>; 8] = Default::default();
    let mut backtracks = 0;
    let mut idx = 0;
    while idx < 8 {
        let p = Param::ALL[idx];
        let prev = if idx == 0 { BigRational::one() } else { values[idx - 1].clone() };
        // a free parameter must stay above every fixed one below it
        let floor = fixed_at[idx + 1..].iter().flatten().max().cloned();
        let outcome = match &fixed_at[idx] {
            Some(v) => {
                if *v >= prev {
                    return Err(Error::BrokenChainOrder { larger: Param::ALL[idx - 1].name(), smaller: p.name() });
                }
                values[idx] = v.clone();
                first_failure(&charged[idx], &values)?.map_or(Ok(()), |b| Err(Some(b)))
            }
            None => search(p, &prev, ceiling[idx].as_ref(), floor.as_ref(), &charged[idx], &mut values, idx)?,
        };
        match outcome {
            Ok(()) => idx += 1,
            Err(None) => {
                // squeezed between its predecessor and a fixed parameter below
                return Err(Error::Unsatisfiable { item: "chain order".into(), param: p.name() });
            }
            Err(Some(blocking)) => {
                backtracks += 1;
                let mut used = Vec::new();
                blocking.inequality.lhs.params(&mut used);
                blocking.inequality.rhs.params(&mut used);
                let target = used.into_iter().filter(|q| q.index() < idx && fixed_at[q.index()].is_none()).max();
                let Some(q) = target.filter(|_| backtracks <= MAX_BACKTRACKS) else {
                    return Err(Error::Unsatisfiable { item: blocking.id.clone(), param: p.name() });
                };
                let halved = shrink(q, &values[q.index()]);
                ceiling[q.index()] = Some(halved);
                for later in ceiling.iter_mut().skip(q.index() + 1) {
                    *later = None;
                }
                idx = q.index();
            }
        }
    }
    Ok(LppAssignment { values: values.try_into().expect("eight values") })
}

fn first_failure<'a>(items: &[&'a CatalogItem], values: &[BigRational]) -> Result<Option<&'a CatalogItem>> {
    let value = |p: Param| values[p.index()].clone();
    for item in items {
        let (_, _, ok) = item.inequality.evaluate(&value)?;
        if !ok {
            return Ok(Some(item));
        }
    }
    Ok(None)
}

fn step(p: Param) -> Option<u32> {
    match p {
        Param::Delta => Some(20),
        Param::Eta | Param::Iota => Some(1),
        _ => None,
    }
}

fn shrink(p: Param, v: &BigRational) -> BigRational {
    match step(p) {
        // keeps a unit fraction (and h a multiple of 20)
        Some(_) => BigRational::new(BigInt::one(), v.denom() * 2u32),
        None => v / BigInt::from(2),
    }
}

/// Least multiple of `step` strictly above `x`.
fn next_multiple_above(x: &BigRational, step: u32) -> BigInt {
    let s = BigInt::from(step);
    let k = x.floor().to_integer();
    (k.div_floor(&s) + 1) * s
}

fn search<'a>(
    p: Param,
    prev: &BigRational,
    ceiling: Option<&BigRational>,
    floor: Option<&BigRational>,
    items: &[&'a CatalogItem],
    values: &mut [BigRational],
    idx: usize,
) -> Result<std::result::Result<(), Option<&'a CatalogItem>>> {
    let above_floor = |v: &BigRational| floor.is_none_or(|f| v > f);
    let mut last_block = None;
    match step(p) {
        None => {
            let mut v = BigRational::new(BigInt::one(), prev.recip().floor().to_integer() + 1);
            if let Some(c) = ceiling.filter(|c| *c < &v) {
                v = c.clone();
            }
            for _ in 0..MAX_HALVINGS {
                if !above_floor(&v) {
                    break;
                }
                values[idx] = v.clone();
                match first_failure(items, values)? {
                    None => return Ok(Ok(())),
                    Some(b) => last_block = Some(b),
                }
                v /= BigInt::from(2);
            }
        }
        Some(s) => {
            let mut lo = next_multiple_above(&prev.recip(), s);
            if let Some(c) = ceiling {
                lo = lo.max(c.recip().ceil().to_integer());
            }
            let at = |k: &BigInt, values: &mut [BigRational]| -> Result<Option<&'a CatalogItem>> {
                values[idx] = BigRational::new(BigInt::one(), k.clone());
                first_failure(items, values)
            };
            let fits = |k: &BigInt| above_floor(&BigRational::new(BigInt::one(), k.clone()));
            if !fits(&lo) {
                return Ok(Err(items.first().copied()));
            }
            match at(&lo, values)? {
                None => return Ok(Ok(())),
                Some(b) => last_block = Some(b),
            }
            let mut failing = lo.clone();
            let mut hi = lo * 2;
            for _ in 0..MAX_HALVINGS {
                if !fits(&hi) {
                    break;
                }
                match at(&hi, values)? {
                    None => {
                        // bisect over multiples of the step in (failing, hi]
                        let s = BigInt::from(s);
                        let (mut a, mut b) = (&failing / &s, &hi / &s);
                        while &b - &a > BigInt::one() {
                            let mid: BigInt = (&a + &b) / 2;
                            if at(&(&mid * &s), values)?.is_none() {
                                b = mid;
                            } else {
                                a = mid;
                            }
                        }
                        at(&(&b * &s), values)?;
                        return Ok(Ok(()));
                    }
                    Some(blk) => last_block = Some(blk),
                }
                failing = hi.clone();
                hi *= 2;
            }
        }
    }
    Ok(Err(last_block))
}

/// `floor(100 / zeta)`, the bound on `|f|`.
pub fn bound_f(assign: &LppAssignment) -> BigInt {
    (BigRational::from_integer(100.into()) / assign.get(Param::Zeta)).floor().to_integer()
}

/// `d * |A|`, the bound on `|T|` and `|U|` of a relator with period `A`.
pub fn bound_tu(a_len: &BigUint, assign: &LppAssignment) -> Result<BigUint> {
    Ok(period_floor(assign)? * a_len)
}

/// `d`: periods feeding relators have `|A| > d`.
pub fn period_floor(assign: &LppAssignment) -> Result<BigUint> {
    assign.d().and_then(|d| d.to_biguint()).ok_or_else(|| Error::InvalidParams("eta is not a unit fraction".into()))
}

/// `true` when `v` needs more than `bits` bits; for tests and reports.
pub fn exceeds_bits(v: &BigInt, bits: u64) -> bool {
    v.bits() > bits || v.to_f64().is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn builtin_catalog_shape() {
        let cat = Catalog::builtin();
        assert!(cat.len() >= 25);
        assert!(cat.items().iter().all(|i| i.least.is_some()));
        assert_eq!(cat.get("L1.1").unwrap().least, Some(Param::Iota));
        assert_eq!(cat.get("L2.1").unwrap().least, Some(Param::Zeta));
        assert_eq!(cat.get("L12.1").unwrap().least, Some(Param::Iota));
    }

    #[test]
    fn catalog_parse_errors() {
        assert!("x | n > 1 | a\nx | n > 2 | b".parse::<Catalog>().is_err());
        assert!("just text".parse::<Catalog>().is_err());
        assert!("a | n >> 1 | b".parse::<Catalog>().is_err());
    }

    #[test]
    fn assignment_round_trip() {
        let a: LppAssignment =
            "alpha = 1/2\nbeta=1/3\ngamma = 1/9\nh = 20\neps = 1/21\nzeta=1/22\nd = 30\nn = 40".parse().unwrap();
        assert_eq!(a.h(), Some(20.into()));
        assert_eq!(a.get(Param::Eta), &q(1, 30));
        assert_eq!(a.to_string().parse::<LppAssignment>().unwrap(), a);
        assert!("alpha = 1/2".parse::<LppAssignment>().is_err());
    }

    #[test]
    fn chain_errors() {
        let a = LppAssignment::new([q(1, 2), q(1, 3), q(1, 4), q(1, 20), q(1, 21), q(1, 22), q(1, 23), q(1, 24)]);
        let cat = Catalog::builtin();
        assert!(verify(&a, &cat).is_ok());
        assert_eq!(verify(&a.clone().with(Param::Beta, q(0, 1)), &cat), Err(Error::NonPositiveParameter("beta")));
        assert_eq!(
            verify(&a.clone().with(Param::Eps, q(1, 2)), &cat),
            Err(Error::BrokenChainOrder { larger: "delta", smaller: "eps" })
        );
        assert_eq!(verify(&a, &Catalog::default()), Err(Error::EmptyInput("catalog")));
    }

    #[test]
    fn bounds() {
        let a = LppAssignment::new([q(1, 2), q(1, 3), q(1, 4), q(1, 20), q(1, 21), q(1, 100), q(1, 1000), q(1, 10000)]);
        assert_eq!(bound_f(&a), BigInt::from(10000));
        assert_eq!(bound_tu(&BigUint::from(1001u32), &a).unwrap(), BigUint::from(1001000u32));
        assert_eq!(period_floor(&a).unwrap(), BigUint::from(1000u32));
    }
}
