use proptest::prelude::*;
use relfree::homo::{kernel_witness, psi_infinity, substitute, surjectivity_witness, Endomorphism};
use relfree::oracles;
use relfree::verbal::{make_v, make_w2, ParamSet};
use relfree::{Alphabet, Word};

fn ab(m: u32) -> Alphabet {
    Alphabet::new(m).unwrap()
}

fn word(m: u32, letters: &[i64]) -> Word {
    Word::free_reduce(ab(m), letters).unwrap()
}

fn letters_strategy(m: i64, max: usize) -> impl Strategy<Value = Vec<i64>> {
    let alphabet: Vec<i64> = (1..=m).flat_map(|k| [k, -k]).collect();
    prop::collection::vec(prop::sample::select(alphabet), 0..max)
}

fn endo_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(letters_strategy(3, 5), 3)
}

fn endo(images: &[Vec<i64>]) -> Endomorphism {
    Endomorphism::new(ab(3), images.iter().map(|l| word(3, l)).collect()).unwrap()
}

fn grid() -> Vec<ParamSet> {
    let mut out = Vec::new();
    for h in [20u32, 40] {
        for d in [2u32, 3] {
            for n in [3u32, 5, 40] {
                out.push(ParamSet::new(h, d, n).unwrap());
            }
        }
    }
    out
}

#[test]
fn kernel_identity_on_grid() {
    for p in grid() {
        let k = kernel_witness(&p).unwrap();
        assert!(k.passed(), "{p}");
    }
}

/// `w_2` at `n = 40` runs into millions of runs; the two-word identities
/// stay on the smaller values of `n`.
fn small_grid() -> Vec<ParamSet> {
    grid().into_iter().filter(|p| p.n() <= &5u32.into()).collect()
}

#[test]
fn surjectivity_identity_on_grid() {
    for p in small_grid() {
        let s = surjectivity_witness(&p).unwrap();
        assert!(s.passed(), "{p}");
    }
}

#[test]
fn psi_maps_w2_to_w2_of_the_images() {
    // w_2(a_1, v_1) nests v_1 twice; d = 3 already exceeds the run budget
    for (h, n) in [(20u32, 3u32), (20, 5), (40, 3)] {
        let p = ParamSet::new(h, 2u32, n).unwrap();
        let psi = psi_infinity(2, &p).unwrap();
        let (a1, a2) = (ab(2).generator(1).unwrap(), ab(2).generator(2).unwrap());
        let v1 = make_v(1, &a1, &a2, &p).unwrap();
        assert_eq!(psi.apply(&make_w2(&a1, &a2, &p).unwrap()).unwrap(), make_w2(&a1, &v1, &p).unwrap());
    }
}

#[test]
fn psi_of_a2_matches_letter_expansion() {
    let p = ParamSet::new(20u32, 2u32, 3u32).unwrap();
    let psi = psi_infinity(2, &p).unwrap();
    let got = psi.apply(&ab(2).generator(2).unwrap()).unwrap();
    let expect = oracles::stack_reduce(&oracles::v1_letters(&[1], &[2], 2));
    assert_eq!(got, word(2, &expect));
}

#[test]
fn swap_is_an_involution() {
    let swap = Endomorphism::new(ab(2), vec![word(2, &[2]), word(2, &[1])]).unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    for _ in 0..200 {
        let w = word(2, &oracles::random_letters(&mut rng, 2, 12));
        assert_eq!(swap.apply(&swap.apply(&w).unwrap()).unwrap(), w);
        assert_eq!(Endomorphism::identity(ab(2)).apply(&w).unwrap(), w);
    }
}

#[test]
fn substitution_across_alphabets() {
    let tail = word(2, &[1, 2, -1]);
    let images = [word(3, &[3]), word(3, &[1, 2])];
    assert_eq!(substitute(&tail, &images).unwrap(), word(3, &[3, 1, 2, -3]));
}

proptest! {
    #[test]
    fn functorial(e1 in endo_strategy(), e2 in endo_strategy(), w in letters_strategy(3, 10)) {
        let (e1, e2, w) = (endo(&e1), endo(&e2), word(3, &w));
        let lhs = e1.compose(&e2).unwrap().apply(&w).unwrap();
        let rhs = e1.apply(&e2.apply(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homomorphic(e in endo_strategy(), u in letters_strategy(3, 8), v in letters_strategy(3, 8)) {
        let (e, u, v) = (endo(&e), word(3, &u), word(3, &v));
        let (eu, ev) = (e.apply(&u).unwrap(), e.apply(&v).unwrap());
        prop_assert_eq!(e.apply(&u.concat(&v).unwrap()).unwrap(), eu.concat(&ev).unwrap());
        prop_assert_eq!(e.apply(&u.commutator(&v).unwrap()).unwrap(), eu.commutator(&ev).unwrap());
    }

    #[test]
    fn compose_is_associative(a in endo_strategy(), b in endo_strategy(), c in endo_strategy()) {
        let (a, b, c) = (endo(&a), endo(&b), endo(&c));
        prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
    }
}
