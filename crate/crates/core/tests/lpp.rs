use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use relfree::lpp::{solve, solve_with, verify, Catalog, LppAssignment, Param};
use relfree::Error;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn unit(k: &BigInt) -> BigRational {
    BigRational::new(BigInt::one(), k.clone())
}

#[test]
fn full_catalog_round_trip() {
    let cat = Catalog::builtin();
    let a = solve(&cat).unwrap();
    let report = verify(&a, &cat).unwrap();
    assert!(report.passed(), "{report}");
    let (h, d, n) = (a.h().unwrap(), a.d().unwrap(), a.n().unwrap());
    assert_eq!(h, BigInt::from(20));
    // d is in the millions and n far beyond 64 bits
    assert!(d > BigInt::from(1_000_000) && d < BigInt::from(1_000_000_000u64));
    assert!(n.bits() > 64);
    assert!(a.param_set().is_ok());
}

#[test]
fn every_prefix_round_trips() {
    let cat = Catalog::builtin();
    for k in 1..=cat.len() {
        let sub = cat.prefix(k);
        let a = solve(&sub).unwrap();
        assert!(verify(&a, &sub).unwrap().passed(), "prefix {k}");
    }
}

#[test]
fn no_inequalities_gives_minimal_chain() {
    let cat: Catalog = "only | 1 < 2 | trivial".parse().unwrap();
    let a = solve(&cat).unwrap();
    let expect = [q(1, 2), q(1, 3), q(1, 4), q(1, 20), q(1, 21), q(1, 22), q(1, 23), q(1, 24)];
    for (p, v) in Param::ALL.into_iter().zip(expect) {
        assert_eq!(a.get(p), &v, "{p}");
    }
    assert!(verify(&a, &cat).unwrap().passed());
}

/// Smallest `n > 100` with `n^2 > 100 * 100 * (n + 20)`, by scanning.
fn scan_n() -> i64 {
    (101..).find(|&n: &i64| n * n > 100 * 100 * (n + 20)).unwrap()
}

#[test]
fn singleton_catalog_matches_linear_scan() {
    let cat = Catalog::builtin().only(&["L1.1"]);
    let fixed = [(Param::Zeta, q(1, 100)), (Param::Delta, q(1, 20))];
    let a = solve_with(&cat, &fixed).unwrap();
    assert_eq!(a.n(), Some(BigInt::from(scan_n())));
    assert!(verify(&a, &cat).unwrap().passed());
}

#[test]
fn corrupted_assignments_fail_their_items() {
    let cat = Catalog::builtin();
    let good = solve(&cat).unwrap();
    let n = good.n().unwrap();
    let zeta = good.get(Param::Zeta).clone();

    // n = 100 / zeta gives n^2 = 100 zeta^-1 n < 100 zeta^-1 (n + h)
    let small_n = zeta.recip().to_integer() * 100;
    let bad = good.clone().with(Param::Iota, unit(&small_n)).with(Param::Eta, unit(&(&small_n - 1)));
    let report = verify(&bad, &cat.only(&["L1.1", "L12.1"])).unwrap();
    assert_eq!(report.failed_items(), vec!["L1.1"]);

    // alpha near 1 breaks only the lemma 12 length inequality
    let bad = good.clone().with(Param::Alpha, BigRational::one() - unit(&(n.clone() * 1000)));
    let report = verify(&bad, &cat).unwrap();
    assert_eq!(report.failed_items(), vec!["L12.1"]);
    assert!(report.failed_preconditions().is_empty());

    // h = 30
    let bad = good.clone().with(Param::Delta, q(1, 30)).with(Param::Eps, q(1, 31)).with(Param::Zeta, q(1, 32));
    let report = verify(&bad, &cat).unwrap();
    assert_eq!(report.failed_preconditions(), vec!["h divisible by 20"]);
}

#[test]
fn unsatisfiable_reports_blocking_item() {
    let cat: Catalog = "bad | zeta > 2 | nowhere".parse().unwrap();
    match solve(&cat) {
        Err(Error::Unsatisfiable { item, param }) => {
            assert_eq!(item, "bad");
            assert_eq!(param, "zeta");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn fixed_parameters_must_respect_order() {
    let cat: Catalog = "x | n > 1 | t".parse().unwrap();
    assert!(solve_with(&cat, &[(Param::Zeta, q(1, 2))]).is_err());
}

fn assignment_from_solution() -> LppAssignment {
    solve(&Catalog::builtin()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // items charged to iota that hold at n keep holding for larger n when
    // they are monotone along the sampled points
    #[test]
    fn iota_items_monotone(extra in 0u64..1_000_000_000u64, factor in 1u32..64) {
        let cat = Catalog::builtin();
        let a = assignment_from_solution();
        let n = a.n().unwrap();
        let bigger = &n * BigInt::from(factor) + BigInt::from(extra);
        let b = a.clone().with(Param::Iota, unit(&bigger));
        let ra = verify(&a, &cat).unwrap();
        let rb = verify(&b, &cat).unwrap();
        for (ia, ib) in ra.items.iter().zip(&rb.items) {
            if cat.get(&ia.id).unwrap().least == Some(Param::Iota) && ia.pass {
                prop_assert!(ib.pass, "{} broke at n = {}", ia.id, bigger);
            }
        }
    }
}
