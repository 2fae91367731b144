//! The acceptance suite: ten end-to-end checks, each reporting pass or fail
//! with a one-line detail. Used by the `acceptance` test target and by
//! `relfree report`.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graded::{
    a_exponent_sum, build, build_relator, dehn_reduce, periods_rank, verbal_membership_witness, BuildOptions,
    DehnIndex, FreeOracle, Witness,
};
use crate::homo::{kernel_witness, psi_infinity, surjectivity_witness};
use crate::lpp::{solve, verify, Catalog};
use crate::oracles;
use crate::verbal::{make_w1, make_w2, w1_template, ParamSet};
use crate::vkd::{certify_dehn_trace, check_certificate, Perturbation};
use crate::word::{Alphabet, Word};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    pub dehn_budget: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: DEFAULT_SEED, dehn_budget: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {}: {} ({:.2}s)", self.id, self.name, self.detail, self.elapsed.as_secs_f64())
    }
}

type Check = fn(&Config) -> Result<(bool, String)>;

const CRITERIA: [(&str, Check, u64); 10] = [
    ("zero exponent sums", zero_exponent_sums, 1),
    ("kernel identity", kernel_identity, 30),
    ("surjectivity identity", surjectivity_identity, 30),
    ("length bound", length_bound, 30),
    ("word oracle equivalence", oracle_equivalence, 60),
    ("rank 1 and 2 periods", low_rank_periods, 60),
    ("relator round trip and verbal membership", relator_round_trip, 120),
    ("parameter ledger", parameter_ledger, 60),
    ("Dehn and certificate soundness", dehn_soundness, 60),
    ("A-exponent schedules", a_exponent_schedules, 10),
];

pub fn names() -> impl Iterator<Item = (usize, &'static str)> {
    CRITERIA.iter().enumerate().map(|(i, c)| (i + 1, c.0))
}

/// Runs criterion `id` (1-based). Errors count as failures, and so does
/// exceeding the time limit.
pub fn run(id: usize, cfg: &Config) -> Option<Outcome> {
    let &(name, check, limit) = CRITERIA.get(id.checked_sub(1)?)?;
    let start = Instant::now();
    let (mut passed, mut detail) = match check(cfg) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(limit) {
        passed = false;
        detail = format!("{detail}; over the {limit}s limit");
    }
    Some(Outcome { id, name, passed, detail, elapsed })
}

pub fn run_all(cfg: &Config) -> Vec<Outcome> {
    (1..=CRITERIA.len()).filter_map(|id| run(id, cfg)).collect()
}

fn params(h: u32, d: u32, n: u32) -> Result<ParamSet> {
    ParamSet::new(h, d, n)
}

fn gens() -> Result<(Word, Word)> {
    let ab = Alphabet::new(2)?;
    Ok((ab.generator(1)?, ab.generator(2)?))
}

/// `(20,2,3)` first; every grid point with `n <= 5` fits the run budget for
/// the `w_2` identities.
fn grid(max_n: u32) -> Result<Vec<ParamSet>> {
    let mut out = Vec::new();
    for h in [20, 40] {
        for d in [2, 3] {
            for n in [3, 5, 40].into_iter().filter(|&n| n <= max_n) {
                out.push(params(h, d, n)?);
            }
        }
    }
    Ok(out)
}

fn show(p: &ParamSet) -> String {
    format!("({},{},{})", p.h(), p.d(), p.n())
}

fn zero_exponent_sums(_: &Config) -> Result<(bool, String)> {
    let (x, y) = gens()?;
    for p in [params(20, 2, 3)?, params(40, 3, 5)?] {
        for (name, w) in [("w1", make_w1(&x, &y, &p)?), ("w2", make_w2(&x, &y, &p)?)] {
            let sums = w.abelianization();
            if !sums.iter().all(BigInt::is_zero) {
                return Ok((false, format!("{name} at {} has exponent sums {sums:?}", show(&p))));
            }
        }
    }
    Ok((true, "w1 and w2 at (20,2,3) and (40,3,5)".into()))
}

fn kernel_identity(_: &Config) -> Result<(bool, String)> {
    let grid = grid(40)?;
    for p in &grid {
        let start = Instant::now();
        if !kernel_witness(p)?.check {
            return Ok((false, format!("psi(U) != w1 at {}", show(p))));
        }
        if show(p) == "(20,2,3)" && start.elapsed() > Duration::from_secs(5) {
            return Ok((false, "over 5s at (20,2,3)".into()));
        }
    }
    // Letter-level cross-check against the oracle construction.
    let p = &grid[0];
    let (h, d, n) = (20, 2, 3);
    let v1 = oracles::v1_letters(&[1], &[2], d);
    let u = oracles::w1_letters_with(&[1], &[2], h, n);
    let image: Vec<i64> =
        u.iter().flat_map(|&k| if k.abs() == 2 { oracles::power(&v1, k.signum()) } else { vec![k] }).collect();
    let expect = oracles::stack_reduce(&oracles::w1_letters(&[1], &[2], h, d, n));
    let psi = psi_infinity(2, p)?;
    let (a1, a2) = gens()?;
    let got = psi.apply(&w1_template(&a1, &a2, p)?)?;
    if oracles::stack_reduce(&image) != expect || got != Word::free_reduce(got.alphabet(), &expect)? {
        return Ok((false, "oracle disagrees at (20,2,3)".into()));
    }
    Ok((true, format!("{} parameter sets", grid.len())))
}

fn surjectivity_identity(_: &Config) -> Result<(bool, String)> {
    let grid = grid(5)?;
    for p in &grid {
        if !surjectivity_witness(p)?.check {
            return Ok((false, format!("y Tail(x, v1) != w2 at {}", show(p))));
        }
    }
    Ok((true, format!("{} parameter sets", grid.len())))
}

fn length_bound(_: &Config) -> Result<(bool, String)> {
    for p in grid(40)? {
        if !kernel_witness(&p)?.length_bound {
            return Ok((false, format!("|U| >= (n+h)h at {}", show(&p))));
        }
    }
    let cat = Catalog::builtin();
    let assign = solve(&cat)?;
    let report = verify(&assign, &cat)?;
    let item = report.items.iter().find(|i| i.id == "L12.1");
    if !item.is_some_and(|i| i.pass) {
        return Ok((false, "ledger item (n+h)h < (1-alpha)(h-1)nd fails".into()));
    }
    let p = assign.param_set()?;
    let (a1, a2) = gens()?;
    let u = w1_template(&a1, &a2, &p)?;
    let bound: BigUint = (p.n() + p.h()) * p.h();
    if u.len() >= bound {
        return Ok((false, "|U| >= (n+h)h at the ledger parameters".into()));
    }
    Ok((true, format!("toy grid and ledger parameters (|U| has {} bits)", u.len().bits())))
}

fn oracle_equivalence(cfg: &Config) -> Result<(bool, String)> {
    let ab = Alphabet::new(2)?;
    let mut strings = Vec::new();
    for len in 0..=6 {
        strings.extend(oracles::all_strings(2, len));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=12);
        strings.push(oracles::random_letters(&mut rng, 2, len));
    }
    let mut words = Vec::with_capacity(strings.len());
    for s in &strings {
        let w = Word::free_reduce(ab, s)?;
        let expect = oracles::stack_reduce(s);
        let got: Vec<i64> = w.letters().map(|l| l.signed() as i64).collect();
        if got != expect {
            return Ok((false, format!("free reduction of {s:?}")));
        }
        match w.primitive_root() {
            Ok((root, k)) => {
                let (r, e) = oracles::primitive_root_by_divisors(&expect);
                let root: Vec<i64> = root.letters().map(|l| l.signed() as i64).collect();
                if root != r || k != BigUint::from(e) {
                    return Ok((false, format!("primitive root of {s:?}")));
                }
            }
            Err(_) if expect.is_empty() || oracles::cyclic_core(&expect) != expect => {}
            Err(e) => return Ok((false, format!("primitive root of {s:?}: {e}"))),
        }
        words.push((w, oracles::canonical_rotation(&expect)));
    }
    // Free conjugacy on every pair of reduced words of length at most 6.
    let mut reduced: Vec<usize> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, s) in strings.iter().enumerate().take_while(|(_, s)| s.len() <= 6) {
        if oracles::stack_reduce(s) == *s && seen.insert(s.clone()) {
            reduced.push(i);
        }
    }
    for &i in &reduced {
        for &j in &reduced {
            if words[i].0.conjugate_in_free(&words[j].0) != (words[i].1 == words[j].1) {
                return Ok((false, format!("conjugacy of {:?} and {:?}", strings[i], strings[j])));
            }
        }
    }
    // Random words against random conjugates of themselves and each other.
    let random = &words[words.len() - 10_000..];
    for (k, (w, canon)) in random.iter().enumerate() {
        let len = rng.gen_range(0..=4);
        let g = oracles::random_letters(&mut rng, 2, len);
        let conj =
            oracles::concat(&[&g, &w.letters().map(|l| l.signed() as i64).collect::<Vec<_>>(), &oracles::invert(&g)]);
        if !w.conjugate_in_free(&Word::free_reduce(ab, &conj)?) {
            return Ok((false, format!("{w} not conjugate to {conj:?}")));
        }
        let (other, other_canon) = &random[(k * 7919 + 1) % random.len()];
        if w.conjugate_in_free(other) != (canon == other_canon) {
            return Ok((false, format!("conjugacy of {w} and {other}")));
        }
    }
    Ok((true, format!("{} words, {} exhaustive conjugacy pairs", strings.len(), reduced.len() * reduced.len())))
}

fn low_rank_periods(_: &Config) -> Result<(bool, String)> {
    let ab = Alphabet::new(2)?;
    let expect = [vec!["a1", "a2"], vec!["a1 a2", "a1 a2^-1"]];
    for (i, names) in expect.iter().enumerate() {
        let got = periods_rank(ab, i + 1, &FreeOracle).into_strict()?;
        let listed: Vec<Word> = names.iter().map(|s| Word::parse(ab, s)).collect::<Result<_>>()?;
        let oracle: Vec<Word> = oracles::periods_by_enumeration(2, i + 1)
            .iter()
            .map(|u| Word::free_reduce(ab, u))
            .collect::<Result<_>>()?;
        if got != listed || got != oracle {
            let shown: Vec<String> = got.iter().map(Word::to_string).collect();
            return Ok((false, format!("X{} = {shown:?}", i + 1)));
        }
    }
    Ok((true, "X1 = {a1, a2}, X2 = {a1 a2, a1 a2^-1}".into()))
}

fn relator_round_trip(cfg: &Config) -> Result<(bool, String)> {
    let p = params(20, 2, 3)?;
    let opts = BuildOptions { pair_budget: 1, dehn_budget: cfg.dehn_budget, ..BuildOptions::default() };
    let b = build(Alphabet::new(2)?, p.clone(), 1, &opts)?;
    let rank = &b.presentation.ranks[0];
    if rank.relators.is_empty() {
        return Ok((false, "no rank 1 relators".into()));
    }
    for (rec, triple) in rank.relators.iter().zip(&b.ranks[0].triples) {
        if rec.regenerate(&p)?.to_string() != rec.relator.to_string() {
            return Ok((false, format!("relator {} does not regenerate", rec.relator)));
        }
        if !matches!(verbal_membership_witness(rec, triple, &p, &FreeOracle)?, Witness::Found(_)) {
            return Ok((false, format!("no witness for {}", rec.relator)));
        }
    }
    Ok((true, format!("{} rank 1 relators", rank.relators.len())))
}

fn parameter_ledger(_: &Config) -> Result<(bool, String)> {
    use crate::lpp::Param;
    use num_rational::BigRational;
    use num_traits::One;

    let cat = Catalog::builtin();
    let good = solve(&cat)?;
    if !verify(&good, &cat)?.passed() {
        return Ok((false, "solved assignment fails verify".into()));
    }
    let unit = |k: &BigInt| BigRational::new(BigInt::one(), k.clone());
    let zeta = good.get(Param::Zeta).clone();
    let n = good.n().unwrap_or_default();
    let small_n = zeta.recip().to_integer() * 100;
    let cases = [
        (
            good.clone().with(Param::Iota, unit(&small_n)).with(Param::Eta, unit(&(&small_n - 1))),
            cat.only(&["L1.1", "L12.1"]),
            vec!["L1.1"],
        ),
        (good.clone().with(Param::Alpha, BigRational::one() - unit(&(n * 1000))), cat.clone(), vec!["L12.1"]),
    ];
    for (bad, sub, expect) in cases {
        let report = verify(&bad, &sub)?;
        if report.failed_items() != expect || !report.failed_preconditions().is_empty() {
            return Ok((false, format!("corruption fails {:?}, expected {expect:?}", report.failed_items())));
        }
    }
    Ok((true, format!("{} items verified; corruptions fail L1.1 and L12.1 exactly", cat.len())))
}

fn surface() -> Result<Vec<Word>> {
    Ok(vec![Word::parse(Alphabet::new(4)?, "a1 a2 a1^-1 a2^-1 a3 a4 a3^-1 a4^-1")?])
}

fn random_identity(rng: &mut ChaCha8Rng, r: &Word) -> Result<Word> {
    let ab = r.alphabet();
    loop {
        let mut out = Word::empty(ab);
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(0..=2);
            let g = Word::free_reduce(ab, &oracles::random_reduced(rng, 4, len))?;
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            out = out.concat(&r.power(e)?.conjugate(&g)?)?;
        }
        if !out.is_empty() {
            return Ok(out);
        }
    }
}

fn dehn_soundness(cfg: &Config) -> Result<(bool, String)> {
    let rels = surface()?;
    let index = DehnIndex::new(&rels)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..100 {
        let w = random_identity(&mut rng, &rels[0])?;
        if !dehn_reduce(&w, &rels, cfg.dehn_budget)?.is_empty() {
            return Ok((false, format!("Dehn's algorithm leaves {w}")));
        }
        let cert = certify_dehn_trace(&index.trace(&w, cfg.dehn_budget)?, &rels)?;
        if !check_certificate(&cert, &rels)?.accepted() {
            return Ok((false, format!("certificate for {w} rejected")));
        }
        let Some(p) = Perturbation::random(&mut rng, &cert) else {
            return Ok((false, format!("no perturbation of the certificate for {w}")));
        };
        if check_certificate(&cert.perturbed(p), &rels)?.accepted() {
            return Ok((false, format!("{p:?} accepted for {w}")));
        }
    }
    Ok((true, "100 identities reduced and certified, 100 perturbations rejected".into()))
}

fn a_exponent_schedules(cfg: &Config) -> Result<(bool, String)> {
    let ab = Alphabet::new(2)?;
    let (a1, a2) = (ab.generator(1)?, ab.generator(2)?);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..20 {
        let (h, n) = (20 * rng.gen_range(1u64..=5), rng.gen_range(1u64..=50));
        let f = BigInt::from(rng.gen_range(1i64..=100) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let p = params(h as u32, 2, n as u32)?;
        for z in [1u8, 2] {
            let expect = if z == 1 { BigInt::zero() } else { &f * BigInt::from(h * n * n + h * (h + 1) / 2) };
            let rec = build_relator(z, &a2, &f, &a1, &a1, &p)?;
            if rec.relator.exponent_sum(2)? != expect || a_exponent_sum(z, &f, &p)? != expect {
                return Ok((false, format!("z*={z} at h={h} n={n} f={f}")));
            }
        }
    }
    Ok((true, "20 random (h, n, f)".into()))
}
