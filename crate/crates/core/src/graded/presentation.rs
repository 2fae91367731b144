//! Graded presentations, their text format and rank-by-rank construction.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{parse_err, Error, Result};
use crate::graded::classify::{classify_pairs, synthesize_relator};
use crate::graded::oracle::{DehnOracle, FreeOracle, Oracle};
use crate::graded::periods::periods_rank;
use crate::graded::records::{build_relator, RelatorRecord, TripleRecord};
use crate::lpp::LppAssignment;
use crate::verbal::ParamSet;
use crate::word::{Alphabet, Word};

/// Periods `X_i` and relators `S_i` of one rank.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rank {
    pub periods: Vec<Word>,
    pub relators: Vec<RelatorRecord>,
}

/// `G(i) = <A | R_i>` with `R_i = S_1 ∪ ... ∪ S_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    pub alphabet: Alphabet,
    pub params: ParamSet,
    pub ranks: Vec<Rank>,
}

impl GradedPresentation {
    pub fn new(alphabet: Alphabet, params: ParamSet) -> Self {
        GradedPresentation { alphabet, params, ranks: Vec::new() }
    }

    pub fn top_rank(&self) -> usize {
        self.ranks.len()
    }

    /// `R_i`, the relator words of ranks `1..=i`.
    pub fn relators_up_to(&self, i: usize) -> Vec<Word> {
        self.ranks.iter().take(i).flat_map(|r| r.relators.iter().map(|x| x.relator.clone())).collect()
    }

    /// The oracle for `G(i)`: exact when `R_i` is empty, Dehn otherwise.
    pub fn oracle(&self, i: usize, budget: usize, conjugator_cap: usize) -> Result<Box<dyn Oracle>> {
        let rels = self.relators_up_to(i);
        if rels.is_empty() {
            return Ok(Box::new(FreeOracle));
        }
        Ok(Box::new(DehnOracle::new(i, &rels, budget, conjugator_cap)?))
    }
}

impl fmt::Display for GradedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet {}", self.alphabet.rank())?;
        writeln!(f, "params h={} d={} n={}", self.params.h(), self.params.d(), self.params.n())?;
        for (i, rank) in self.ranks.iter().enumerate() {
            writeln!(f, "rank {}", i + 1)?;
            for p in &rank.periods {
                writeln!(f, "period {p}")?;
            }
            for r in &rank.relators {
                writeln!(f, "relator z*={} A={} f={} j={} T={} U={}", r.z_star, r.period, r.f, r.j, r.t, r.u)?;
            }
        }
        Ok(())
    }
}

/// Splits `k1=a b k2=c` into `[(k1, "a b"), (k2, "c")]`.
fn fields(s: &str) -> Result<Vec<(&str, String)>> {
    let mut out: Vec<(&str, String)> = Vec::new();
    for tok in s.split_whitespace() {
        match tok.split_once('=') {
            Some((k, v)) => out.push((k, v.to_string())),
            None => {
                let (_, v) = out.last_mut().ok_or_else(|| parse_err(format!("expected key=value, got `{tok}`")))?;
                v.push(' ');
                v.push_str(tok);
            }
        }
    }
    Ok(out)
}

impl FromStr for GradedPresentation {
    type Err = Error;

    /// Relator words are regenerated from their fields, not stored.
    fn from_str(s: &str) -> Result<Self> {
        let mut alphabet = None;
        let mut params: Option<ParamSet> = None;
        let mut ranks: Vec<Rank> = Vec::new();
        for (no, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |e: Error| parse_err(format!("line {}: {e}", no + 1));
            let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
            match head {
                "alphabet" => {
                    alphabet =
                        Some(Alphabet::new(rest.trim().parse().map_err(|_| at(parse_err("bad rank")))?).map_err(at)?)
                }
                "params" => params = Some(rest.parse().map_err(at)?),
                "rank" => {
                    let i: usize = rest.trim().parse().map_err(|_| at(parse_err("bad rank index")))?;
                    if i != ranks.len() + 1 {
                        return Err(at(parse_err(format!("expected rank {}", ranks.len() + 1))));
                    }
                    ranks.push(Rank::default());
                }
                "period" | "relator" => {
                    let a = alphabet.ok_or_else(|| at(parse_err("alphabet must come first")))?;
                    let rank = ranks.last_mut().ok_or_else(|| at(parse_err("`rank` must come first")))?;
                    if head == "period" {
                        rank.periods.push(Word::parse(a, rest).map_err(at)?);
                        continue;
                    }
                    let p = params.as_ref().ok_or_else(|| at(parse_err("params must come first")))?;
                    let mut z = None;
                    let (mut period, mut f, mut j, mut t, mut u) = (None, None, None, None, None);
                    for (k, v) in fields(rest).map_err(at)? {
                        match k {
                            "z*" => z = Some(v.parse::<u8>().map_err(|_| at(parse_err("bad z*")))?),
                            "A" => period = Some(Word::parse(a, &v).map_err(at)?),
                            "f" => f = Some(v.parse::<BigInt>().map_err(|_| at(parse_err("bad f")))?),
                            "j" => j = Some(v.parse::<usize>().map_err(|_| at(parse_err("bad j")))?),
                            "T" => t = Some(Word::parse(a, &v).map_err(at)?),
                            "U" => u = Some(Word::parse(a, &v).map_err(at)?),
                            _ => return Err(at(parse_err(format!("unknown field `{k}`")))),
                        }
                    }
                    let missing = || at(parse_err("relator needs z*, A, f, j, T and U"));
                    let mut rec = build_relator(
                        z.ok_or_else(missing)?,
                        &period.ok_or_else(missing)?,
                        &f.ok_or_else(missing)?,
                        &t.ok_or_else(missing)?,
                        &u.ok_or_else(missing)?,
                        p,
                    )
                    .map_err(at)?;
                    rec.j = j.ok_or_else(missing)?;
                    rec.check_bounds(p, None);
                    rank.relators.push(rec);
                }
                _ => return Err(at(parse_err(format!("unknown directive `{head}`")))),
            }
        }
        Ok(GradedPresentation {
            alphabet: alphabet.ok_or_else(|| parse_err("missing `alphabet` line"))?,
            params: params.ok_or_else(|| parse_err("missing `params` line"))?,
            ranks,
        })
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub pair_budget: usize,
    pub dehn_budget: usize,
    pub conjugator_cap: usize,
    pub z_cap: usize,
    /// When present, relators are also checked against `|f| <= 100 / zeta`.
    pub assignment: Option<LppAssignment>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { pair_budget: 1, dehn_budget: 10_000, conjugator_cap: 2, z_cap: 4, assignment: None }
    }
}

/// What one rank of [`build`] produced besides the presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankReport {
    pub triples: Vec<TripleRecord>,
    pub undecided_periods: Vec<Word>,
    pub undecided_pairs: Vec<(Word, Word)>,
    pub discarded_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Build {
    pub presentation: GradedPresentation,
    /// One per rank; `triples[k]` belongs to `relators[k]` of that rank.
    pub ranks: Vec<RankReport>,
}

/// Builds ranks `1..=top`: periods of rank `i` and relators from every
/// pair class found with the oracle of rank `i - 1`.
pub fn build(alphabet: Alphabet, params: ParamSet, top: usize, opts: &BuildOptions) -> Result<Build> {
    let mut pres = GradedPresentation::new(alphabet, params.clone());
    let mut reports = Vec::with_capacity(top);
    for i in 1..=top {
        let oracle = pres.oracle(i - 1, opts.dehn_budget, opts.conjugator_cap)?;
        let periods = periods_rank(alphabet, i, oracle.as_ref());
        let mut report = RankReport { undecided_periods: periods.indeterminate, ..Default::default() };
        let mut rank = Rank { periods: periods.periods, relators: Vec::new() };
        for z_star in [1u8, 2] {
            let classes = classify_pairs(alphabet, &params, z_star, opts.pair_budget, oracle.as_ref(), opts.z_cap)?;
            report.discarded_pairs += classes.discarded;
            report.undecided_pairs.extend(classes.indeterminate);
            for group in classes.groups {
                for class in group.classes {
                    let mut rec = synthesize_relator(z_star, &group.period, &group.f, class.j, &class.triple, &params)?;
                    rec.check_bounds(&params, opts.assignment.as_ref());
                    rank.relators.push(rec);
                    report.triples.push(class.triple);
                }
            }
        }
        pres.ranks.push(rank);
        reports.push(report);
    }
    Ok(Build { presentation: pres, ranks: reports })
}
