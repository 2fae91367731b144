//! Diagram certificates: polygons glued along edges into a disk, annulus
//! or punctured sphere, checked against a relator set.
//!
//! A certificate lists edges with single-letter labels, face cycles,
//! boundary cycles and a pairing of edges. Every edge id occurs in exactly
//! one cycle, as `id+` (read as its label) or `id-` (read inverted). Faces
//! are read counterclockwise; boundary cycles are read the way the claim
//! words are written. Glued edges must read
//!
//! - inverse letters between two faces or two boundary cycles,
//! - the same letter between a face and a boundary cycle.
//!
//! ```text
//! edge 1 a1
//! edge 2 a2
//! edge 3 a1
//! edge 4 a2
//! edge 5 a1
//! edge 6 a2
//! edge 7 a1
//! edge 8 a2
//! face 1+ 2+ 3- 4-
//! boundary 5+ 6+ 7- 8-
//! pair 1 5
//! pair 2 6
//! pair 3 7
//! pair 4 8
//! claim equality a1 a2 a1^-1 a2^-1
//! ```
//!
//! Boundary words are compared with the claim after free reduction, and
//! up to conjugacy (cyclic reduction and rotation) for annuli and spheres.
//!
//! Checks run in a fixed order and the first failure is reported: pairing
//! labels, Euler characteristic `V - E + F = 2 - k` for `k` boundary cycles,
//! unpaired edges, connectedness, face labels, the claim.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graded::DehnTrace;
use crate::word::{Alphabet, Letter, Word, DEFAULT_RUN_BUDGET};

/// One side of a cycle: an edge id read forwards (`true`) or backwards.
pub type Side = (u32, bool);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    Equality(Word),
    Conjugacy(Word, Word),
    Sphere(Vec<Word>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub edges: BTreeMap<u32, Letter>,
    pub pairs: Vec<(u32, u32)>,
    pub faces: Vec<Vec<Side>>,
    pub boundaries: Vec<Vec<Side>>,
    pub claim: Claim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    PairingLabel(u32, u32),
    EulerCharacteristic { expected: i64, found: i64 },
    UnpairedSlot(u32),
    Disconnected,
    FaceLabel(usize),
    Claim(String),
    Unsupported(usize),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::PairingLabel(a, b) => write!(f, "edges {a} and {b} are glued with mismatched labels"),
            Rejection::EulerCharacteristic { expected, found } => {
                write!(f, "Euler characteristic {found}, expected {expected}")
            }
            Rejection::UnpairedSlot(e) => write!(f, "edge {e} is not glued"),
            Rejection::Disconnected => write!(f, "the diagram is disconnected"),
            Rejection::FaceLabel(i) => write!(f, "face {i} is not labelled by a relator"),
            Rejection::Claim(why) => write!(f, "claim fails: {why}"),
            Rejection::Unsupported(k) => write!(f, "{k} boundary cycles are not supported"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: std::result::Result<(), Rejection>,
    /// Pairs of mirror-image faces; the diagram is not reduced.
    pub warnings: Vec<String>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.verdict.is_ok()
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCertificate(msg.into())
}

/// Where an edge id sits: cycle index (faces first, then boundaries) and
/// position.
#[derive(Clone, Copy, Debug)]
struct Slot {
    cycle: usize,
    pos: usize,
}

struct Layout<'a> {
    cert: &'a Certificate,
    slots: BTreeMap<u32, Slot>,
    partner: BTreeMap<u32, u32>,
}

impl Certificate {
    fn cycles(&self) -> impl Iterator<Item = &Vec<Side>> {
        self.faces.iter().chain(self.boundaries.iter())
    }

    fn is_face(&self, cycle: usize) -> bool {
        cycle < self.faces.len()
    }

    /// Letter read along a side.
    fn read(&self, side: Side) -> Letter {
        let l = self.edges[&side.0];
        if side.1 {
            l
        } else {
            l.inverse()
        }
    }

    fn cycle_word(&self, cycle: &[Side]) -> Vec<i32> {
        cycle.iter().map(|&s| self.read(s).signed()).collect()
    }

    fn layout(&self) -> Result<Layout<'_>> {
        let mut slots = BTreeMap::new();
        for (ci, cycle) in self.cycles().enumerate() {
            if ci < self.faces.len() && cycle.is_empty() {
                return Err(malformed(format!("face {ci} has no edges")));
            }
            for (pos, &(id, _)) in cycle.iter().enumerate() {
                if !self.edges.contains_key(&id) {
                    return Err(malformed(format!("cycle uses undeclared edge {id}")));
                }
                if slots.insert(id, Slot { cycle: ci, pos }).is_some() {
                    return Err(malformed(format!("edge {id} occurs twice")));
                }
            }
        }
        if let Some(id) = self.edges.keys().find(|id| !slots.contains_key(id)) {
            return Err(malformed(format!("edge {id} is in no cycle")));
        }
        let mut partner = BTreeMap::new();
        for &(a, b) in &self.pairs {
            for e in [a, b] {
                if !self.edges.contains_key(&e) {
                    return Err(malformed(format!("pair refers to unknown edge {e}")));
                }
            }
            if a == b || partner.insert(a, b).is_some() || partner.insert(b, a).is_some() {
                return Err(malformed(format!("edge in more than one pair ({a}, {b})")));
            }
        }
        Ok(Layout { cert: self, slots, partner })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

impl Layout<'_> {
    /// Letter of the side as seen from inside its polygon, with boundary
    /// cycles turned into counterclockwise hole polygons.
    fn polygon_letter(&self, id: u32) -> i32 {
        let s = self.slots[&id];
        let side = self.cycle_of(s.cycle)[s.pos];
        let l = self.cert.read(side).signed();
        if self.cert.is_face(s.cycle) {
            l
        } else {
            -l
        }
    }

    fn cycle_of(&self, ci: usize) -> &Vec<Side> {
        self.cert.cycles().nth(ci).expect("cycle index in range")
    }

    /// Start and end corner of a side in hole-polygon orientation.
    fn corners(&self, id: u32, base: &[usize]) -> (usize, usize) {
        let s = self.slots[&id];
        let len = self.cycle_of(s.cycle).len();
        let (start, end) =
            if self.cert.is_face(s.cycle) { (s.pos, (s.pos + 1) % len) } else { ((s.pos + 1) % len, s.pos) };
        (base[s.cycle] + start, base[s.cycle] + end)
    }
}

/// Checks a certificate against `relators`.
pub fn check_certificate(cert: &Certificate, relators: &[Word]) -> Result<CheckReport> {
    let lay = cert.layout()?;
    let verdict = verdict(cert, &lay, relators)?;
    let warnings = if verdict.is_ok() { mirror_warnings(cert, &lay) } else { Vec::new() };
    Ok(CheckReport { verdict, warnings })
}

fn verdict(cert: &Certificate, lay: &Layout<'_>, relators: &[Word]) -> Result<std::result::Result<(), Rejection>> {
    for &(a, b) in &cert.pairs {
        if lay.polygon_letter(a) != -lay.polygon_letter(b) {
            return Ok(Err(Rejection::PairingLabel(a, b)));
        }
    }
    let k = cert.boundaries.len();
    let cycles: Vec<&Vec<Side>> = cert.cycles().collect();
    let mut base = Vec::with_capacity(cycles.len());
    let mut total = 0;
    for c in &cycles {
        base.push(total);
        total += c.len();
    }
    let mut corners = UnionFind::new(total);
    for &(a, b) in &cert.pairs {
        let (sa, ea) = lay.corners(a, &base);
        let (sb, eb) = lay.corners(b, &base);
        corners.union(sa, eb);
        corners.union(ea, sb);
    }
    let mut vertices: BTreeSet<usize> = BTreeSet::new();
    for c in 0..total {
        vertices.insert(corners.find(c));
    }
    let empty_holes = cycles.iter().filter(|c| c.is_empty()).count();
    let v = (vertices.len() + empty_holes) as i64;
    let unpaired: Vec<u32> = cert.edges.keys().copied().filter(|e| !lay.partner.contains_key(e)).collect();
    let e = (cert.pairs.len() + unpaired.len()) as i64;
    let f = cert.faces.len() as i64;
    let expected = 2 - k as i64;
    if v - e + f != expected {
        return Ok(Err(Rejection::EulerCharacteristic { expected, found: v - e + f }));
    }
    if let Some(&id) = unpaired.first() {
        return Ok(Err(Rejection::UnpairedSlot(id)));
    }
    let mut polys = UnionFind::new(cycles.len());
    for &(a, b) in &cert.pairs {
        polys.union(lay.slots[&a].cycle, lay.slots[&b].cycle);
    }
    let roots: BTreeSet<usize> = (0..cycles.len()).map(|c| polys.find(c)).collect();
    if roots.len() > 1 {
        return Ok(Err(Rejection::Disconnected));
    }
    let rels = relator_cycles(relators)?;
    for (i, face) in cert.faces.iter().enumerate() {
        let word = cert.cycle_word(face);
        let freely_trivial = crate::graded::free_reduce_letters(&word).is_empty();
        if !freely_trivial && !rels.iter().any(|r| is_rotation(r, &word)) {
            return Ok(Err(Rejection::FaceLabel(i)));
        }
    }
    if k > 3 {
        return Ok(Err(Rejection::Unsupported(k)));
    }
    let words: Vec<Vec<i32>> = cert.boundaries.iter().map(|b| cert.cycle_word(b)).collect();
    Ok(check_claim(&cert.claim, &words))
}

fn letters(w: &Word) -> Result<Vec<i32>> {
    Ok(w.to_letters(DEFAULT_RUN_BUDGET)?.into_iter().map(Letter::signed).collect())
}

fn relator_cycles(relators: &[Word]) -> Result<Vec<Vec<i32>>> {
    let mut out = Vec::new();
    for r in relators {
        for w in [r.clone(), r.inverse(), r.cyclic_reduce().0, r.cyclic_reduce().0.inverse()] {
            let l = letters(&w)?;
            if !l.is_empty() && !out.contains(&l) {
                out.push(l);
            }
        }
    }
    Ok(out)
}

fn is_rotation(a: &[i32], b: &[i32]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter())))
}

fn cyclic_core(letters: &[i32]) -> Vec<i32> {
    let w = crate::graded::free_reduce_letters(letters);
    let mut k = 0;
    while 2 * k + 1 < w.len() && w[k] == -w[w.len() - 1 - k] {
        k += 1;
    }
    w[k..w.len() - k].to_vec()
}

fn check_claim(claim: &Claim, words: &[Vec<i32>]) -> std::result::Result<(), Rejection> {
    let fail = |s: String| Err(Rejection::Claim(s));
    let core = |w: &Word| cyclic_core(&letters(w).unwrap_or_default());
    let cores: Vec<Vec<i32>> = words.iter().map(|b| cyclic_core(b)).collect();
    match claim {
        Claim::Equality(w) => {
            if words.len() != 1 {
                return fail(format!("equality needs one boundary cycle, found {}", words.len()));
            }
            if crate::graded::free_reduce_letters(&words[0]) != letters(w).unwrap_or_default() {
                return fail("boundary does not read the claimed word".into());
            }
        }
        Claim::Conjugacy(u, v) => {
            if words.len() != 2 {
                return fail(format!("conjugacy needs two boundary cycles, found {}", words.len()));
            }
            let (u, vi) = (core(u), core(&v.inverse()));
            let direct = is_rotation(&cores[0], &u) && is_rotation(&cores[1], &vi);
            let swapped = is_rotation(&cores[1], &u) && is_rotation(&cores[0], &vi);
            if !direct && !swapped {
                return fail("boundaries do not read u and v^-1".into());
            }
        }
        Claim::Sphere(ws) => {
            if ws.len() != words.len() {
                return fail(format!("{} words for {} boundary cycles", ws.len(), words.len()));
            }
            for (i, (w, b)) in ws.iter().zip(&cores).enumerate() {
                if !is_rotation(b, &core(w)) {
                    return fail(format!("boundary {i} does not read its word"));
                }
            }
        }
    }
    Ok(())
}

fn mirror_warnings(cert: &Certificate, lay: &Layout<'_>) -> Vec<String> {
    let mut out = Vec::new();
    for &(a, b) in &cert.pairs {
        let (sa, sb) = (lay.slots[&a], lay.slots[&b]);
        if !cert.is_face(sa.cycle) || !cert.is_face(sb.cycle) {
            continue;
        }
        let fa = cert.cycle_word(&cert.faces[sa.cycle]);
        let fb = cert.cycle_word(&cert.faces[sb.cycle]);
        if fa.len() != fb.len() {
            continue;
        }
        let n = fa.len();
        let forward = (0..n).map(|k| fa[(sa.pos + k) % n]);
        let backward = (0..n).map(|k| -fb[(sb.pos + n - k) % n]);
        if forward.eq(backward) {
            out.push(format!("faces {} and {} are mirror images across edges {a}/{b}", sa.cycle, sb.cycle));
        }
    }
    out
}

/// Turns a Dehn reduction of `trace.input` to the empty word into a disk
/// certificate with one face per step.
pub fn certify_dehn_trace(trace: &DehnTrace, relators: &[Word]) -> Result<Certificate> {
    let w = &trace.input;
    let mismatch = |step: usize, reason: String| Error::TraceMismatch { step, reason };
    let mut next_id = 1u32;
    let mut edges = BTreeMap::new();
    let mut fresh = |l: i32, edges: &mut BTreeMap<u32, Letter>| {
        let id = next_id;
        next_id += 1;
        edges.insert(id, Letter::from_signed(l));
        id
    };
    let boundary_letters = letters(w)?;
    let mut boundary = Vec::new();
    let mut frontier: Vec<(u32, i32)> = Vec::new();
    for &l in &boundary_letters {
        let id = fresh(l, &mut edges);
        boundary.push((id, true));
        frontier.push((id, l));
    }
    let mut pairs = Vec::new();
    let mut faces = Vec::new();
    for (t, step) in trace.steps.iter().enumerate() {
        let rel = relators.get(step.relator).ok_or_else(|| mismatch(t, format!("no relator {}", step.relator)))?;
        let mut core = letters(&rel.cyclic_reduce().0)?;
        if step.inverted {
            core = core.iter().rev().map(|x| -x).collect();
        }
        let len = core.len();
        if len == 0 || step.rotation >= len || step.matched > len || 2 * step.matched <= len {
            return Err(mismatch(t, "step does not match more than half of a relator".into()));
        }
        let r: Vec<i32> = (0..len).map(|k| core[(step.rotation + k) % len]).collect();
        let end = step.position + step.matched;
        if end > frontier.len()
            || frontier[step.position..end].iter().map(|s| s.1).ne(r[..step.matched].iter().copied())
        {
            return Err(mismatch(t, "matched letters differ from the current word".into()));
        }
        let face: Vec<u32> = r.iter().map(|&l| fresh(l, &mut edges)).collect();
        for k in 0..step.matched {
            pairs.push((face[k], frontier[step.position + k].0));
        }
        let segment: Vec<(u32, i32)> = (step.matched..len).rev().map(|k| (face[k], -r[k])).collect();
        frontier.splice(step.position..end, segment);
        let mut reduced: Vec<(u32, i32)> = Vec::with_capacity(frontier.len());
        for s in frontier {
            match reduced.last() {
                Some(&(id, l)) if l == -s.1 => {
                    pairs.push((id, s.0));
                    reduced.pop();
                }
                _ => reduced.push(s),
            }
        }
        frontier = reduced;
        faces.push(face.into_iter().map(|id| (id, true)).collect());
    }
    if !frontier.is_empty() {
        return Err(mismatch(trace.steps.len(), "the trace does not end at the empty word".into()));
    }
    Ok(Certificate { edges, pairs, faces, boundaries: vec![boundary], claim: Claim::Equality(w.clone()) })
}

/// A single corruption of a certificate, for soundness testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturbation {
    /// Invert the label of an edge.
    FlipLabel(u32),
    /// Remove the pair at this index.
    DropPairing(usize),
    /// Shift the labels around a face by this many places.
    RotateFace(usize, usize),
}

impl Perturbation {
    /// A random perturbation that changes `cert`. Face rotations are only
    /// drawn with offsets that change at least one label.
    pub fn random<R: Rng>(rng: &mut R, cert: &Certificate) -> Option<Perturbation> {
        for _ in 0..64 {
            let p = match rng.gen_range(0..3) {
                0 if !cert.edges.is_empty() => {
                    let ids: Vec<u32> = cert.edges.keys().copied().collect();
                    Perturbation::FlipLabel(ids[rng.gen_range(0..ids.len())])
                }
                1 if !cert.pairs.is_empty() => Perturbation::DropPairing(rng.gen_range(0..cert.pairs.len())),
                2 if !cert.faces.is_empty() => {
                    let f = rng.gen_range(0..cert.faces.len());
                    let n = cert.faces[f].len();
                    if n < 2 {
                        continue;
                    }
                    Perturbation::RotateFace(f, rng.gen_range(1..n))
                }
                _ => continue,
            };
            if cert.perturbed(p) != *cert {
                return Some(p);
            }
        }
        None
    }
}

impl Certificate {
    pub fn perturbed(&self, p: Perturbation) -> Certificate {
        let mut c = self.clone();
        match p {
            Perturbation::FlipLabel(id) => {
                if let Some(l) = c.edges.get_mut(&id) {
                    *l = l.inverse();
                }
            }
            Perturbation::DropPairing(i) => {
                if i < c.pairs.len() {
                    c.pairs.remove(i);
                }
            }
            Perturbation::RotateFace(f, offset) => {
                if let Some(face) = c.faces.get(f) {
                    let read: Vec<Letter> = face.iter().map(|&s| self.read(s)).collect();
                    let n = read.len();
                    for (k, &(id, fwd)) in face.iter().enumerate() {
                        let l = read[(k + offset) % n];
                        c.edges.insert(id, if fwd { l } else { l.inverse() });
                    }
                }
            }
        }
        c
    }

    /// The alphabet rank needed for every label and claim word.
    fn rank(&self) -> u32 {
        let words: Vec<&Word> = match &self.claim {
            Claim::Equality(w) => vec![w],
            Claim::Conjugacy(u, v) => vec![u, v],
            Claim::Sphere(ws) => ws.iter().collect(),
        };
        self.edges
            .values()
            .map(|l| l.generator())
            .chain(words.iter().map(|w| w.alphabet().rank()))
            .max()
            .unwrap_or(1)
            .max(1)
    }
}

fn fmt_side(f: &mut fmt::Formatter<'_>, head: &str, cycle: &[Side]) -> fmt::Result {
    write!(f, "{head}")?;
    for &(id, fwd) in cycle {
        write!(f, " {id}{}", if fwd { '+' } else { '-' })?;
    }
    writeln!(f)
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, l) in &self.edges {
            writeln!(f, "edge {id} {l}")?;
        }
        for face in &self.faces {
            fmt_side(f, "face", face)?;
        }
        for b in &self.boundaries {
            fmt_side(f, "boundary", b)?;
        }
        for (a, b) in &self.pairs {
            writeln!(f, "pair {a} {b}")?;
        }
        match &self.claim {
            Claim::Equality(w) => writeln!(f, "claim equality {w}"),
            Claim::Conjugacy(u, v) => writeln!(f, "claim conjugacy {u} | {v}"),
            Claim::Sphere(ws) => {
                let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                writeln!(f, "claim sphere {}", shown.join(" | "))
            }
        }
    }
}

fn parse_side(tok: &str) -> Result<Side> {
    let (id, sign) = tok.split_at(tok.len().saturating_sub(1));
    let fwd = match sign {
        "+" => true,
        "-" => false,
        _ => return Err(malformed(format!("side `{tok}` needs a trailing + or -"))),
    };
    Ok((id.parse().map_err(|_| malformed(format!("bad edge id in `{tok}`")))?, fwd))
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut edges = BTreeMap::new();
        let (mut pairs, mut faces, mut boundaries) = (Vec::new(), Vec::new(), Vec::new());
        let mut claim_src: Option<(String, String)> = None;
        for line in s.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().expect("nonempty line");
            match head {
                "edge" => {
                    let (Some(id), Some(label), None) = (toks.next(), toks.next(), toks.next()) else {
                        return Err(malformed(format!("expected `edge <id> <label>`: `{line}`")));
                    };
                    let id: u32 = id.parse().map_err(|_| malformed(format!("bad edge id `{id}`")))?;
                    let rank = Word::infer_rank(label).map_err(|e| malformed(e.to_string()))?.max(1);
                    let w = Word::parse(Alphabet::new(rank)?, label).map_err(|e| malformed(e.to_string()))?;
                    let l = match (w.runs(), w.len_u64()) {
                        ([run], Some(1)) => run.letter(),
                        _ => return Err(malformed(format!("label `{label}` is not a single letter"))),
                    };
                    if edges.insert(id, l).is_some() {
                        return Err(malformed(format!("edge {id} declared twice")));
                    }
                }
                "pair" => {
                    let ids: Vec<u32> = toks
                        .map(|t| t.parse().map_err(|_| malformed(format!("bad edge id `{t}`"))))
                        .collect::<Result<_>>()?;
                    let [a, b] = ids[..] else {
                        return Err(malformed(format!("expected `pair <id> <id>`: `{line}`")));
                    };
                    pairs.push((a, b));
                }
                "face" => faces.push(toks.map(parse_side).collect::<Result<Vec<_>>>()?),
                "boundary" => boundaries.push(toks.map(parse_side).collect::<Result<Vec<_>>>()?),
                "claim" => {
                    let kind = toks.next().ok_or_else(|| malformed("claim needs a kind"))?;
                    claim_src = Some((kind.to_string(), toks.collect::<Vec<_>>().join(" ")));
                }
                _ => return Err(malformed(format!("unknown directive `{head}`"))),
            }
        }
        let (kind, rest) = claim_src.ok_or_else(|| malformed("missing claim"))?;
        let parts: Vec<&str> = rest.split('|').map(str::trim).collect();
        let mut rank = edges.values().map(|l: &Letter| l.generator()).max().unwrap_or(1);
        for p in &parts {
            rank = rank.max(Word::infer_rank(p).map_err(|e| malformed(e.to_string()))?);
        }
        let alphabet = Alphabet::new(rank.max(1))?;
        let words: Vec<Word> = parts
            .iter()
            .map(|p| Word::parse(alphabet, if p.is_empty() { "1" } else { p }).map_err(|e| malformed(e.to_string())))
            .collect::<Result<_>>()?;
        let claim = match (kind.as_str(), words.len()) {
            ("equality", 1) => Claim::Equality(words.into_iter().next().expect("one word")),
            ("conjugacy", 2) => {
                let mut it = words.into_iter();
                Claim::Conjugacy(it.next().expect("two words"), it.next().expect("two words"))
            }
            ("sphere", _) => Claim::Sphere(words),
            _ => return Err(malformed(format!("bad claim `{kind} {rest}`"))),
        };
        let cert = Certificate { edges, pairs, faces, boundaries, claim };
        debug_assert!(cert.rank() >= 1);
        Ok(cert)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_FACE: &str = "edge 1 a1\nedge 2 a2\nedge 3 a1\nedge 4 a2\nedge 5 a1\nedge 6 a2\nedge 7 a1\nedge 8 a2\n\
        face 1+ 2+ 3- 4-\nboundary 5+ 6+ 7- 8-\npair 1 5\npair 2 6\npair 3 7\npair 4 8\n\
        claim equality a1 a2 a1^-1 a2^-1\n";

    fn rels() -> Vec<Word> {
        vec![Word::parse(Alphabet::new(2).unwrap(), "a1 a2 a1^-1 a2^-1").unwrap()]
    }

    #[test]
    fn one_face_disk() {
        let c: Certificate = ONE_FACE.parse().unwrap();
        let r = check_certificate(&c, &rels()).unwrap();
        assert_eq!(r.verdict, Ok(()));
        assert_eq!(c.to_string().parse::<Certificate>().unwrap(), c);
    }

    #[test]
    fn annulus_without_faces() {
        let c: Certificate = "edge 1 a1\nedge 2 a2\nedge 3 a1\nedge 4 a2\nboundary 1+ 2+\nboundary 3- 4-\n\
            pair 1 3\npair 2 4\nclaim conjugacy a1 a2 | a2 a1\n"
            .parse()
            .unwrap();
        assert_eq!(check_certificate(&c, &rels()).unwrap().verdict, Ok(()));
        let dropped = c.perturbed(Perturbation::DropPairing(0));
        assert!(matches!(
            check_certificate(&dropped, &rels()).unwrap().verdict,
            Err(Rejection::EulerCharacteristic { .. })
        ));
    }

    #[test]
    fn one_face_negative_controls() {
        let c: Certificate = ONE_FACE.parse().unwrap();
        let dropped = c.perturbed(Perturbation::DropPairing(2));
        assert!(matches!(
            check_certificate(&dropped, &rels()).unwrap().verdict,
            Err(Rejection::EulerCharacteristic { .. })
        ));
        let flipped = c.perturbed(Perturbation::FlipLabel(2));
        assert!(matches!(check_certificate(&flipped, &rels()).unwrap().verdict, Err(Rejection::PairingLabel(..))));
        let other = vec![Word::parse(Alphabet::new(2).unwrap(), "a1 a2 a1 a2^-1").unwrap()];
        assert_eq!(check_certificate(&c, &other).unwrap().verdict, Err(Rejection::FaceLabel(0)));
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "edge 1 a1\nface 1+ 1+\nclaim equality 1",
            "edge 1 a1\nedge 2 a1\nface 1+\nclaim equality 1",
            "edge 1 a1\nface 1+\npair 1 9\nclaim equality 1",
            "face\nclaim equality 1",
        ] {
            let c: Certificate = bad.parse().unwrap();
            assert!(matches!(check_certificate(&c, &rels()), Err(Error::MalformedCertificate(_))), "{bad}");
        }
        for bad in ["edge 1 a1 a2\nclaim equality 1", "edge 1 a1\nface 1\nclaim equality 1", "edge 1 a1"] {
            assert!(bad.parse::<Certificate>().is_err(), "{bad}");
        }
    }

    #[test]
    fn trivial_word() {
        let c: Certificate = "boundary\nclaim equality 1".parse().unwrap();
        assert_eq!(check_certificate(&c, &rels()).unwrap().verdict, Ok(()));
    }
}
