use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relfree::graded::DehnIndex;
use relfree::oracles;
use relfree::vkd::*;
use relfree::{Alphabet, Error, Word};

fn ab(m: u32) -> Alphabet {
    Alphabet::new(m).unwrap()
}

fn w(m: u32, s: &str) -> Word {
    Word::parse(ab(m), s).unwrap()
}

fn surface() -> Vec<Word> {
    vec![w(4, "a1 a2 a1^-1 a2^-1 a3 a4 a3^-1 a4^-1")]
}

fn random_identity(rng: &mut ChaCha8Rng) -> Word {
    let r = &surface()[0];
    let mut out = Word::empty(ab(4));
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=2);
        let g = Word::free_reduce(ab(4), &oracles::random_reduced(rng, 4, len)).unwrap();
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        out = out.concat(&r.power(e).unwrap().conjugate(&g).unwrap()).unwrap();
    }
    out
}

fn nonempty_identity(rng: &mut ChaCha8Rng) -> Word {
    loop {
        let w = random_identity(rng);
        if !w.is_empty() {
            return w;
        }
    }
}

fn certify(word: &Word) -> Certificate {
    let idx = DehnIndex::new(&surface()).unwrap();
    let trace = idx.trace(word, 100).unwrap();
    assert!(trace.output.is_empty());
    certify_dehn_trace(&trace, &surface()).unwrap()
}

#[test]
fn relator_gives_one_face() {
    let c = certify(&surface()[0]);
    assert_eq!(c.faces.len(), 1);
    assert!(check_certificate(&c, &surface()).unwrap().accepted());
}

#[test]
fn two_conjugated_relators_give_two_faces() {
    let r = &surface()[0];
    let word = r.conjugate(&w(4, "a2 a3")).unwrap().concat(&r.inverse().conjugate(&w(4, "a4^-1")).unwrap()).unwrap();
    let c = certify(&word);
    assert_eq!(c.faces.len(), 2);
    let report = check_certificate(&c, &surface()).unwrap();
    assert!(report.accepted(), "{:?}", report.verdict);
    let text = c.to_string();
    assert_eq!(text.parse::<Certificate>().unwrap(), c);
}

#[test]
fn tampered_trace_is_a_mismatch() {
    let word = surface()[0].conjugate(&w(4, "a3")).unwrap();
    let idx = DehnIndex::new(&surface()).unwrap();
    let mut trace = idx.trace(&word, 100).unwrap();
    trace.steps[0].position += 1;
    assert!(matches!(certify_dehn_trace(&trace, &surface()), Err(Error::TraceMismatch { .. })));
    let mut short = idx.trace(&word, 100).unwrap();
    short.steps.clear();
    assert!(matches!(certify_dehn_trace(&short, &surface()), Err(Error::TraceMismatch { .. })));
}

#[test]
fn certificates_of_random_identities_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let c = certify(&nonempty_identity(&mut rng));
        let report = check_certificate(&c, &surface()).unwrap();
        assert!(report.accepted(), "{c}");
        let p = Perturbation::random(&mut rng, &c).unwrap();
        let bad = check_certificate(&c.perturbed(p), &surface()).unwrap();
        assert!(!bad.accepted(), "{p:?} accepted on\n{c}");
    }
}

/// Relabels edge ids by a random permutation and shuffles the face list.
fn scramble(c: &Certificate, rng: &mut ChaCha8Rng) -> Certificate {
    let mut ids: Vec<u32> = c.edges.keys().copied().collect();
    let old = ids.clone();
    ids.shuffle(rng);
    let map = |id: u32| ids[old.iter().position(|&o| o == id).unwrap()] + 1000;
    let side = |cycle: &Vec<Side>| cycle.iter().map(|&(id, f)| (map(id), f)).collect::<Vec<_>>();
    let mut faces: Vec<Vec<Side>> = c.faces.iter().map(side).collect();
    faces.shuffle(rng);
    let mut pairs: Vec<(u32, u32)> = c.pairs.iter().map(|&(a, b)| (map(b), map(a))).collect();
    pairs.shuffle(rng);
    Certificate {
        edges: c.edges.iter().map(|(&id, &l)| (map(id), l)).collect(),
        pairs,
        faces,
        boundaries: c.boundaries.iter().map(side).collect(),
        claim: c.claim.clone(),
    }
}

#[test]
fn verdict_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let c = certify(&nonempty_identity(&mut rng));
        let p = Perturbation::random(&mut rng, &c).unwrap();
        for cert in [c.clone(), c.perturbed(p)] {
            let a = check_certificate(&cert, &surface()).unwrap().accepted();
            let b = check_certificate(&scramble(&cert, &mut rng), &surface()).unwrap().accepted();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn mirror_faces_warn_but_accept() {
    // A relator and its mirror image glued along seven edges; the eighth
    // edges bound a disk reading a1 a1^-1.
    let letters = ["a1", "a2", "a1^-1", "a2^-1", "a3", "a4", "a3^-1", "a4^-1"];
    let mut text = String::new();
    for (i, l) in letters.iter().enumerate() {
        text += &format!("edge {} {l}\nedge {} {l}\n", i + 1, i + 11);
    }
    text += "edge 21 a1\nedge 22 a1\n";
    text += "face 1+ 2+ 3+ 4+ 5+ 6+ 7+ 8+\nface 18- 17- 16- 15- 14- 13- 12- 11-\nboundary 21+ 22-\n";
    for i in 2..=8 {
        text += &format!("pair {i} {}\n", i + 10);
    }
    text += "pair 1 21\npair 11 22\nclaim equality 1\n";
    let c: Certificate = text.parse().unwrap();
    let report = check_certificate(&c, &surface()).unwrap();
    assert_eq!(report.verdict, Ok(()));
    assert!(!report.warnings.is_empty());
    assert!(check_certificate(&certify(&surface()[0]), &surface()).unwrap().warnings.is_empty());
}

#[test]
fn thrice_punctured_sphere() {
    // Three boundary cycles glued pairwise along single edges: a theta graph.
    let text = "edge 1 a1\nedge 2 a2\nedge 3 a1\nedge 4 a2\nedge 5 a1\nedge 6 a1\n\
        boundary 1+ 2+\nboundary 3- 5+\nboundary 4- 6-\npair 1 3\npair 2 4\npair 5 6\n";
    let c: Certificate = format!("{text}claim sphere a1 a2 | a1^-1 a1 | a2^-1 a1^-1").parse().unwrap();
    assert_eq!(check_certificate(&c, &[]).unwrap().verdict, Ok(()));
    let wrong: Certificate = format!("{text}claim sphere a1 a2 | 1 | a2 a1").parse().unwrap();
    assert!(matches!(check_certificate(&wrong, &[]).unwrap().verdict, Err(Rejection::Claim(_))));
}

#[test]
fn more_than_three_boundaries_are_unsupported() {
    // A bouquet of three loops: three petals and the outside.
    let c: Certificate = "edge 1 a1\nedge 2 a1\nedge 3 a2\nedge 4 a1\nedge 5 a1\nedge 6 a2\n\
        boundary 1+\nboundary 2+\nboundary 3+\nboundary 6- 5- 4-\npair 1 4\npair 2 5\npair 3 6\n\
        claim sphere a1 | a1 | a2 | a2^-1 a1^-2"
        .parse()
        .unwrap();
    assert_eq!(check_certificate(&c, &[]).unwrap().verdict, Err(Rejection::Unsupported(4)));
}
