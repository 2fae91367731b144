use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use num_bigint::BigInt;
use num_rational::BigRational;
use relfree::graded::{periods_rank, FreeOracle};
use relfree::homo::{kernel_witness, surjectivity_witness};
use relfree::lpp::{solve, Catalog, Param};
use relfree::verbal::{make_w1, ParamSet};
use relfree::{Alphabet, Word};

fn relfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relfree")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn kv(o: &Output, key: &str) -> Option<String> {
    stdout(o).lines().find_map(|l| l.strip_prefix(&format!("{key}=")).map(String::from))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn reduce_to_identity() {
    let o = relfree(&["word", "reduce", "a1 a1^-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn endo_check_matches_library() {
    let o = relfree(&["endo", "check", "--h", "20", "--d", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("kernel identity") && l.ends_with("PASS")));
    assert!(text.lines().any(|l| l.starts_with("surjectivity identity") && l.ends_with("PASS")));

    let p = ParamSet::new(20u32, 2u32, 3u32).unwrap();
    let k = kernel_witness(&p).unwrap();
    let s = surjectivity_witness(&p).unwrap();
    let o = relfree(&["endo", "check", "--output", "kv"]);
    assert_eq!(kv(&o, "u_length"), Some(k.u.len().to_string()));
    assert_eq!(kv(&o, "kernel").as_deref(), Some(if k.check { "PASS" } else { "FAIL" }));
    assert_eq!(kv(&o, "surjectivity").as_deref(), Some(if s.check { "PASS" } else { "FAIL" }));
    assert_eq!(kv(&o, "group_claim").as_deref(), Some("INDETERMINATE"));
}

#[test]
fn verify_names_the_violated_item() {
    let dir = tempfile::tempdir().unwrap();
    let listing = stdout(&relfree(&["lpp", "catalog"]));
    let ledger: String = listing
        .lines()
        .filter(|l| l.starts_with("L1.1 ") || l.starts_with("L12.1 "))
        .map(|l| format!("{l}\n"))
        .collect();
    let ledger = write(dir.path(), "ledger.txt", &ledger);

    let good = solve(&Catalog::builtin()).unwrap();
    let good_path = write(dir.path(), "good.txt", &good.to_string());
    assert_eq!(relfree(&["lpp", "verify", &ledger, "--assign", &good_path]).status.code(), Some(0));

    // n = 100 / zeta makes n^2 fall short of 100 zeta^-1 (n + h).
    let small_n: BigInt = good.get(Param::Zeta).recip().to_integer() * 100;
    let unit = |k: BigInt| BigRational::new(1.into(), k);
    let bad = good.with(Param::Iota, unit(small_n.clone())).with(Param::Eta, unit(small_n - 1));
    let bad = write(dir.path(), "bad.txt", &bad.to_string());
    let o = relfree(&["lpp", "verify", &ledger, "--assign", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL L1.1")));
    let o = relfree(&["lpp", "verify", &ledger, "--assign", &bad, "--output", "kv"]);
    assert_eq!(kv(&o, "failed").as_deref(), Some("L1.1"));

    // Ledger mode refuses the same assignment.
    let o = relfree(&["--mode", "ledger", "--ledger", &bad, "verbal", "length", "w1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("L1.1"));
}

#[test]
fn verbal_and_periods_match_library() {
    let p = ParamSet::new(20u32, 2u32, 3u32).unwrap();
    let ab = Alphabet::new(2).unwrap();
    let w1 = make_w1(&ab.generator(1).unwrap(), &ab.generator(2).unwrap(), &p).unwrap();
    let o = relfree(&["verbal", "make", "w1", "--output", "kv"]);
    assert_eq!(kv(&o, "word"), Some(w1.to_string()));
    assert_eq!(kv(&o, "length"), Some("20022".into()));

    let periods: Vec<String> = periods_rank(ab, 2, &FreeOracle).periods.iter().map(Word::to_string).collect();
    let o = relfree(&["graded", "periods", "--rank", "2", "--output", "kv"]);
    assert_eq!(kv(&o, "periods"), Some(periods.join(",")));
}

#[test]
fn certify_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let rels = write(dir.path(), "surface.txt", "# genus two\na1 a2 a1^-1 a2^-1 a3 a4 a3^-1 a4^-1\n");
    let word = "a3 a1 a2 a1^-1 a2^-1 a3 a4 a3^-1 a4^-1 a3^-1";
    let o = relfree(&["vkd", "certify", word, "--relators", &rels]);
    assert_eq!(o.status.code(), Some(0));
    let cert = write(dir.path(), "cert.txt", &stdout(&o));
    let o = relfree(&["vkd", "check", &cert, "--relators", &rels]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("ACCEPT"));

    let text = fs::read_to_string(&cert).unwrap();
    let dropped: String = text.lines().filter(|l| !l.starts_with("pair 1 ")).map(|l| format!("{l}\n")).collect();
    assert_ne!(dropped, text);
    let broken = write(dir.path(), "broken.txt", &dropped);
    let o = relfree(&["vkd", "check", &broken, "--relators", &rels, "--output", "kv"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(kv(&o, "verdict").as_deref(), Some("REJECT"));

    let o = relfree(&["graded", "dehn", "a1 a2", "--relators", &rels, "--output", "kv"]);
    assert_eq!(kv(&o, "trivial").as_deref(), Some("false"));
}

#[test]
fn exit_codes() {
    let o = relfree(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(relfree(&["word", "reduce", "b7"]).status.code(), Some(2));
    assert_eq!(relfree(&["word", "conj", "a1", "a2"]).status.code(), Some(1));
    let o = relfree(&["--mode", "ledger", "endo", "check"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("INDETERMINATE"));
}

#[test]
fn report_is_deterministic() {
    let a = relfree(&["report", "--criterion", "6", "--output", "kv"]);
    let b = relfree(&["report", "--criterion", "6", "--output", "kv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(kv(&a, "criterion.6.status").as_deref(), Some("PASS"));
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.contains("elapsed")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
}
