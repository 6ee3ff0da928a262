use std::collections::BTreeSet;

use geodesic_core::lab::verify_geodesic_language;
use geodesic_core::lamp::{canonical_geodesic, evaluate, is_geodesic};
use geodesic_core::machines::{
    build, counter_full_tta, counter_unique_tta, counter_unique_wreath, pda_full_wreath, pda_wreath_cases, Coverage,
};
use geodesic_core::oracle::{all_geodesics, Ball};
use geodesic_core::{AnyMachine, GenAlphabet, GroupWord, LampElement, StackOp};

#[test]
fn unique_wreath_accepts_canonical_g1() {
    let g1 = LampElement::g(2, 1).unwrap();
    let w = canonical_geodesic(&g1, GenAlphabet::Wreath).unwrap().to_string();
    let m = counter_unique_wreath(2).unwrap();
    assert!(m.accepts(&w).unwrap());
    assert!(!m.accepts("tT").unwrap());
}

#[test]
fn unique_machines_pick_the_canonical_word() {
    for m in 2..=4 {
        let machine = counter_unique_wreath(m).unwrap();
        let ball = Ball::new(m, GenAlphabet::Wreath, 6).unwrap();
        let accepted = machine.enumerate_language(6);
        let canon: BTreeSet<String> = ball
            .elements()
            .map(|(x, _)| canonical_geodesic(x, GenAlphabet::Wreath).unwrap().to_string())
            .collect();
        assert_eq!(accepted, canon, "m = {m}");
    }
    let machine = counter_unique_tta();
    let ball = Ball::new(2, GenAlphabet::Automaton, 8).unwrap();
    let canon: BTreeSet<String> = ball
        .elements()
        .map(|(x, _)| canonical_geodesic(x, GenAlphabet::Automaton).unwrap().to_string())
        .collect();
    assert_eq!(machine.enumerate_language(8), canon);
}

#[test]
fn unique_tta_g1_has_length_six() {
    let g1 = LampElement::g(2, 1).unwrap();
    let words: Vec<String> = counter_unique_tta()
        .enumerate_language(6)
        .into_iter()
        .filter(|w| evaluate(&GroupWord::parse(GenAlphabet::Automaton, w).unwrap(), 2).unwrap() == g1)
        .collect();
    assert_eq!(words.len(), 1);
    assert_eq!(words[0].len(), 6);
    assert!(counter_unique_tta().accepts("").unwrap());
}

#[test]
fn full_wreath_accepts_both_g_n_geodesics() {
    let m = pda_full_wreath();
    for n in 1..=4 {
        let g = LampElement::g(2, n).unwrap();
        let geos = all_geodesics(&g, GenAlphabet::Wreath, 40).unwrap();
        assert_eq!(geos.len(), 2);
        for w in geos {
            assert!(m.accepts(&w.to_string()).unwrap(), "{w}");
        }
    }
    assert!(m.accepts("ttaTTTTatt").unwrap());
    assert!(!m.accepts("tT").unwrap());
}

#[test]
fn full_tta_accepts_g_n_families() {
    let m = counter_full_tta();
    for n in 1..=5usize {
        let w = format!("{}S{}s{}", "t".repeat(n), "T".repeat(2 * n), "t".repeat(n));
        let mirror = format!("{}s{}S{}", "T".repeat(n), "t".repeat(2 * n), "T".repeat(n));
        for word in [w, mirror] {
            assert!(m.accepts(&word).unwrap(), "{word}");
            assert!(is_geodesic(&GroupWord::parse(GenAlphabet::Automaton, &word).unwrap(), 2).unwrap());
        }
    }
    assert!(m.accepts("").unwrap());
    assert!(!m.accepts("tT").unwrap());
}

#[test]
fn full_machines_match_oracle_to_length_ten() {
    let r = verify_geodesic_language(&pda_full_wreath().into(), 2, GenAlphabet::Wreath, 10, Coverage::Full).unwrap();
    assert!(r.passed(), "{r}");
    let r = verify_geodesic_language(&counter_full_tta().into(), 2, GenAlphabet::Automaton, 10, Coverage::Full).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn unique_machines_match_oracle_to_length_ten() {
    let r = verify_geodesic_language(&counter_unique_wreath(2).unwrap().into(), 2, GenAlphabet::Wreath, 10, Coverage::Unique)
        .unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn every_case_machine_is_sound() {
    for case in pda_wreath_cases() {
        for w in case.enumerate_language(10) {
            assert!(is_geodesic(&GroupWord::parse(GenAlphabet::Wreath, &w).unwrap(), 2).unwrap(), "{w}");
        }
    }
}

#[test]
fn storage_footprint() {
    assert_eq!(counter_full_tta().dim(), 1);
    assert_eq!(counter_unique_tta().dim(), 1);
    assert_eq!(counter_unique_wreath(5).unwrap().dim(), 1);
    let symbols: BTreeSet<char> = pda_full_wreath()
        .edges()
        .iter()
        .filter_map(|e| match e.effect {
            StackOp::Push(c) | StackOp::Pop(c) => Some(c),
            StackOp::None => None,
        })
        .collect();
    assert_eq!(symbols, BTreeSet::from(['$', '#', '0', '1']));
}

#[test]
fn machines_survive_json() {
    for name in ["pda_anbn", "counter_anbnan", "counter_unique_wreath", "pda_full_wreath", "counter_unique_tta", "counter_full_tta"] {
        let m = build(name, 2).unwrap();
        let back = AnyMachine::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m, "{name}");
    }
}
