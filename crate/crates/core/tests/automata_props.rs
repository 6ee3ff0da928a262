use std::collections::BTreeSet;

use geodesic_core::automata::{intersect_counter_regular, NoEffect};
use geodesic_core::machines::{counter_anbnan, pda_anbn};
use geodesic_core::{AnyMachine, CounterMachine, Delta, Fsa, PushdownMachine, StackOp};
use proptest::prelude::*;

fn all_words(alphabet: &str, max_len: usize) -> Vec<String> {
    let letters: Vec<char> = alphabet.chars().collect();
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &c in &letters {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn is_anbn(w: &str) -> bool {
    let n = w.len() / 2;
    w.len().is_multiple_of(2) && w == format!("{}{}", "a".repeat(n), "b".repeat(n))
}

fn is_anbnan(w: &str) -> bool {
    let n = w.len() / 3;
    w.len().is_multiple_of(3) && w == format!("{}{}{}", "a".repeat(n), "b".repeat(n), "a".repeat(n))
}

#[test]
fn textbook_languages_by_brute_force() {
    let p = pda_anbn();
    let c = counter_anbnan();
    for w in all_words("ab", 9) {
        assert_eq!(p.accepts(&w).unwrap(), is_anbn(&w), "{w}");
        assert_eq!(c.accepts(&w).unwrap(), is_anbnan(&w), "{w}");
    }
    let small: Vec<String> = p.enumerate_language(4).into_iter().collect();
    assert_eq!(small, vec!["", "aabb", "ab"]);
    let small: Vec<String> = c.enumerate_language(3).into_iter().collect();
    assert_eq!(small, vec!["", "aba"]);
}

#[test]
fn union_of_textbook_machines() {
    let u = AnyMachine::union(&[pda_anbn().into(), pda_anbn().into()]).unwrap();
    assert_eq!(u.enumerate_language(8), pda_anbn().enumerate_language(8));
    let u = AnyMachine::union(&[counter_anbnan().into(), counter_anbnan().into()]).unwrap();
    assert!(u.accepts("aba").unwrap());
}

fn starts_with_a() -> Fsa {
    let mut f = Fsa::new("ab", 0, "q0");
    let q1 = f.add_state("q1");
    f.add_accept(q1);
    f.add_edge(0, q1, "a", NoEffect);
    f.add_edge(q1, q1, "a", NoEffect);
    f.add_edge(q1, q1, "b", NoEffect);
    f
}

#[test]
fn intersection_with_prefix_language() {
    let c = counter_anbnan();
    let p = intersect_counter_regular(&c, &starts_with_a()).unwrap();
    let expected: BTreeSet<String> = c.enumerate_language(6).into_iter().filter(|w| w.starts_with('a')).collect();
    assert_eq!(p.enumerate_language(6), expected);
    assert_eq!(expected.len(), 2);
}

#[test]
fn normalizing_multi_letter_labels() {
    let mut c = CounterMachine::new("atT", 1, "q0");
    let acc = c.add_state("A");
    c.add_accept(acc);
    c.add_edge(0, 0, "taT", Delta(vec![2]));
    c.add_edge(0, acc, "", Delta(vec![0]));
    c.add_edge(acc, acc, "a", Delta(vec![-1]));
    let n = c.normalize_unit_moves();
    assert!(n.edges().iter().all(|e| e.label.chars().count() <= 1));
    assert_eq!(c.enumerate_language(8), n.enumerate_language(8));
    assert!(c.accepts("taTaa").unwrap());
}

#[test]
fn dot_of_small_machines() {
    let dot = AnyMachine::from(counter_anbnan()).to_dot("anbnan");
    assert_eq!(dot.matches("[label=\"q").count() + dot.matches("[label=\"A\"").count(), 3);
    assert!(AnyMachine::from(pda_anbn()).to_dot("anbn").contains("push $"));
}

#[derive(Debug, Clone)]
struct RawEdge {
    from: usize,
    to: usize,
    label: String,
    effect: i64,
}

fn arb_edges(states: usize) -> impl Strategy<Value = Vec<RawEdge>> {
    let edge = (0..states, 0..states, prop::sample::select(vec!["", "", "a", "b", "ab"]), -2i64..=2)
        .prop_map(|(from, to, label, effect)| RawEdge {
            from,
            to,
            label: label.to_string(),
            effect,
        });
    prop::collection::vec(edge, 1..10)
}

fn counter_from(edges: &[RawEdge], states: usize, accepts: &[bool]) -> CounterMachine {
    let mut c = CounterMachine::new("ab", 1, "s0");
    for i in 1..states {
        c.add_state(format!("s{i}"));
    }
    for (i, &a) in accepts.iter().enumerate().take(states) {
        if a {
            c.add_accept(i);
        }
    }
    for e in edges {
        c.add_edge(e.from, e.to, &e.label, Delta(vec![e.effect]));
    }
    c
}

fn pda_from(edges: &[RawEdge], states: usize, accepts: &[bool]) -> PushdownMachine {
    let mut p = PushdownMachine::new("ab", 0, "s0");
    for i in 1..states {
        p.add_state(format!("s{i}"));
    }
    for (i, &a) in accepts.iter().enumerate().take(states) {
        if a {
            p.add_accept(i);
        }
    }
    for e in edges {
        let op = match e.effect {
            -2 | -1 => StackOp::Pop(if e.effect == -1 { 'x' } else { 'y' }),
            0 => StackOp::None,
            1 => StackOp::Push('x'),
            _ => StackOp::Push('y'),
        };
        p.add_edge(e.from, e.to, &e.label, op);
    }
    p
}

fn fsa_from(edges: &[RawEdge], states: usize, accepts: &[bool]) -> Fsa {
    let mut f = Fsa::new("ab", 0, "s0");
    for i in 1..states {
        f.add_state(format!("s{i}"));
    }
    for (i, &a) in accepts.iter().enumerate().take(states) {
        if a {
            f.add_accept(i);
        }
    }
    for e in edges {
        f.add_edge(e.from, e.to, &e.label, NoEffect);
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn counter_search_is_consistent(edges in arb_edges(3), accepts in prop::collection::vec(any::<bool>(), 3)) {
        let c = counter_from(&edges, 3, &accepts);
        let l5 = c.enumerate_language(5);
        let l6 = c.enumerate_language(6);
        prop_assert!(l5.is_subset(&l6));
        for w in all_words("ab", 5) {
            prop_assert_eq!(c.accepts(&w).unwrap(), l5.contains(&w), "{}", w);
        }
        let n = c.normalize_unit_moves();
        prop_assert_eq!(n.enumerate_language(6), l6);
    }

    #[test]
    fn pda_search_is_consistent(edges in arb_edges(3), accepts in prop::collection::vec(any::<bool>(), 3)) {
        let p = pda_from(&edges, 3, &accepts);
        let l5 = p.enumerate_language(5);
        prop_assert!(l5.is_subset(&p.enumerate_language(6)));
        for w in all_words("ab", 5) {
            prop_assert_eq!(p.accepts(&w).unwrap(), l5.contains(&w), "{}", w);
        }
        let back = AnyMachine::from_json(&AnyMachine::from(p.clone()).to_json()).unwrap();
        prop_assert_eq!(back, AnyMachine::Pda(p));
    }

    #[test]
    fn product_is_intersection(
        ce in arb_edges(3), ca in prop::collection::vec(any::<bool>(), 3),
        fe in arb_edges(3), fa in prop::collection::vec(any::<bool>(), 3),
    ) {
        let c = counter_from(&ce, 3, &ca);
        let f = fsa_from(&fe, 3, &fa);
        let p = intersect_counter_regular(&c, &f).unwrap();
        for w in all_words("ab", 8) {
            let both = c.accepts(&w).unwrap() && f.accepts(&w).unwrap();
            prop_assert_eq!(p.accepts(&w).unwrap(), both, "{}", w);
        }
    }

    #[test]
    fn union_is_union(
        e1 in arb_edges(3), a1 in prop::collection::vec(any::<bool>(), 3),
        e2 in arb_edges(2), a2 in prop::collection::vec(any::<bool>(), 2),
    ) {
        let c1 = counter_from(&e1, 3, &a1);
        let c2 = counter_from(&e2, 2, &a2);
        let u = CounterMachine::union_counters(&[&c1, &c2]);
        let expected: BTreeSet<String> = c1.enumerate_language(5).union(&c2.enumerate_language(5)).cloned().collect();
        prop_assert_eq!(u.enumerate_language(5), expected);
    }
}
