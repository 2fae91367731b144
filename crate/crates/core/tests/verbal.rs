use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;
use relfree::homo::substitute;
use relfree::oracles;
use relfree::verbal::*;
use relfree::{Alphabet, Word};

fn ab(m: u32) -> Alphabet {
    Alphabet::new(m).unwrap()
}

fn toy() -> ParamSet {
    ParamSet::new(20u32, 2u32, 3u32).unwrap()
}

fn signed(w: &Word) -> Vec<i64> {
    w.letters().map(|l| l.signed() as i64).collect()
}

fn short_word() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop::sample::select(vec![1i64, -1, 2, -2, 3, -3]), 1..=3)
}

#[test]
fn lengths_at_the_toy_parameters() {
    let (a1, a2) = (ab(2).generator(1).unwrap(), ab(2).generator(2).unwrap());
    let p = toy();
    assert_eq!(make_v(1, &a1, &a2, &p).unwrap().len(), BigUint::from(77u32));
    assert_eq!(make_v(2, &a1, &a2, &p).unwrap().len(), BigUint::from(312u32));
    assert_eq!(make_w1(&a1, &a2, &p).unwrap().len(), BigUint::from(20022u32));
    assert_eq!(make_w2(&a1, &a2, &p).unwrap().len(), BigUint::from(120048u32));
}

#[test]
fn generators_match_letter_oracle() {
    let (a1, a2) = (ab(2).generator(1).unwrap(), ab(2).generator(2).unwrap());
    for (h, d, n) in [(20, 2, 3), (40, 3, 5), (20, 3, 4)] {
        let p = ParamSet::new(h as u32, d as u32, n as u32).unwrap();
        let w1 = make_w1(&a1, &a2, &p).unwrap();
        let w2 = make_w2(&a1, &a2, &p).unwrap();
        assert_eq!(signed(&w1), oracles::stack_reduce(&oracles::w1_letters(&[1], &[2], h, d, n)));
        assert_eq!(signed(&w2), oracles::stack_reduce(&oracles::w2_letters(&[1], &[2], h, d, n)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn commutator_subgroup(x in short_word(), y in short_word()) {
        let (x, y) = (Word::free_reduce(ab(3), &x).unwrap(), Word::free_reduce(ab(3), &y).unwrap());
        for w in [make_w1(&x, &y, &toy()).unwrap(), make_w2(&x, &y, &toy()).unwrap()] {
            prop_assert!(w.abelianization().iter().all(BigInt::is_zero));
        }
    }

    #[test]
    fn substitution_compatibility(x in short_word(), y in short_word()) {
        let (x, y) = (Word::free_reduce(ab(3), &x).unwrap(), Word::free_reduce(ab(3), &y).unwrap());
        let (s1, s2) = (ab(2).generator(1).unwrap(), ab(2).generator(2).unwrap());
        let p = toy();
        let images = [x.clone(), y.clone()];
        for which in [VerbalWord::V1, VerbalWord::V2, VerbalWord::W1, VerbalWord::W2] {
            let generic = make(which, &s1, &s2, &p).unwrap();
            prop_assert_eq!(substitute(&generic, &images).unwrap(), make(which, &x, &y, &p).unwrap());
        }
        let v1 = make_v(1, &x, &y, &p).unwrap();
        let d = BigInt::from(2);
        let v2 = v1.power(d.clone()).unwrap().commutator(&x.power(d).unwrap()).unwrap();
        prop_assert_eq!(make_v(2, &x, &y, &p).unwrap(), v2);
    }
}
