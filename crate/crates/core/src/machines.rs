//! Concrete machines: the two textbook examples and the acceptors for
//! geodesic words in lamplighter groups.
//!
//! The wreath machines read words over `a, A, t, T`; for `m = 2` the letter
//! `A` is omitted since it names the same generator as `a`. The automaton
//! machines read `t, T, s, S` where `s = ta` and `S = (ta)^-1`.

use thiserror::Error;

use crate::automata::{AnyMachine, CounterMachine, Delta, PushdownMachine, StackOp};
use crate::lamp::GenAlphabet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineError {
    #[error("modulus {0} is not supported by this machine")]
    UnsupportedModulus(u32),
    #[error("unknown machine '{0}'")]
    UnknownMachine(String),
}

/// Machine alphabet for words over the given generators.
pub fn alphabet_letters(alphabet: GenAlphabet, m: u32) -> &'static str {
    match alphabet {
        GenAlphabet::Wreath if m == 2 => "atT",
        GenAlphabet::Wreath => "aAtT",
        GenAlphabet::Automaton => "tTsS",
    }
}

/// `a^n b^n`, accepting with empty stack.
pub fn pda_anbn() -> PushdownMachine {
    let mut p = PushdownMachine::new("ab", 0, "q0");
    let q1 = p.add_state("q1");
    let q2 = p.add_state("q2");
    let acc = p.add_state("A");
    p.add_accept(acc);
    p.add_edge(0, q1, "", StackOp::Push('$'));
    p.add_edge(q1, q1, "a", StackOp::Push('1'));
    p.add_edge(q1, q2, "", StackOp::None);
    p.add_edge(q2, q2, "b", StackOp::Pop('1'));
    p.add_edge(q2, acc, "", StackOp::Pop('$'));
    p
}

/// `a^n b^n a^n` with two counters.
pub fn counter_anbnan() -> CounterMachine {
    let mut c = CounterMachine::new("ab", 2, "q0");
    let q1 = c.add_state("q1");
    let acc = c.add_state("A");
    c.add_accept(acc);
    c.add_edge(0, 0, "a", Delta(vec![1, 1]));
    c.add_edge(0, q1, "", Delta(vec![0, 0]));
    c.add_edge(q1, q1, "b", Delta(vec![-1, 0]));
    c.add_edge(q1, acc, "", Delta(vec![0, 0]));
    c.add_edge(acc, acc, "a", Delta(vec![0, -1]));
    c
}

fn d1(x: i64) -> Delta {
    Delta(vec![x])
}

/// Labels that set one bulb: `a^k` for `k` in `-h..=h`, without `-h` when
/// `m` is even.
fn light_labels(m: u32) -> Vec<String> {
    let h = (m / 2) as usize;
    let mut out: Vec<String> = (1..=h).map(|k| "a".repeat(k)).collect();
    let neg = if m.is_multiple_of(2) { h.saturating_sub(1) } else { h };
    out.extend((1..=neg).map(|k| "A".repeat(k)));
    out
}

/// One half of the unique-geodesic wreath machine. The counter tracks the
/// cursor. `right_first` visits bulbs in decreasing order and accepts a
/// final cursor `< 0`; otherwise bulbs go in increasing order and the final
/// cursor is `>= 0`.
fn wreath_unique_half(m: u32, right_first: bool) -> CounterMachine {
    let (fwd, back, sf, sb) = if right_first { ("t", "T", 1, -1) } else { ("T", "t", -1, 1) };
    let lights = light_labels(m);
    let mut c = CounterMachine::new(alphabet_letters(GenAlphabet::Wreath, m), 1, "start");
    let out = c.add_state("out");
    let lit = c.add_state("lit");
    let walk = c.add_state("walk");
    let fin = c.add_state("fin");
    let acc = c.add_state("acc");
    c.add_accept(acc);
    // Heading away from the first lit bulb, then sweeping back over the rest.
    c.add_edge(0, out, fwd, d1(sf));
    c.add_edge(out, out, fwd, d1(sf));
    c.add_edge(0, walk, back, d1(sb));
    c.add_edge(walk, walk, back, d1(sb));
    for l in &lights {
        c.add_edge(0, lit, l, d1(0));
        c.add_edge(out, lit, l, d1(0));
        c.add_edge(walk, lit, l, d1(0));
    }
    c.add_edge(lit, walk, back, d1(sb));
    c.add_edge(lit, fin, fwd, d1(sf));
    c.add_edge(fin, fin, fwd, d1(sf));
    if right_first {
        for s in [lit, walk, fin] {
            c.add_edge(s, acc, "", d1(1));
        }
        c.add_edge(acc, acc, "", d1(1));
    } else {
        for s in [0, lit, walk, fin] {
            c.add_edge(s, acc, "", d1(0));
        }
        c.add_edge(acc, acc, "", d1(-1));
    }
    c
}

/// One geodesic word per element of `L_m` over `{a, t}`.
pub fn counter_unique_wreath(m: u32) -> Result<CounterMachine, MachineError> {
    if m < 2 {
        return Err(MachineError::UnsupportedModulus(m));
    }
    let rf = wreath_unique_half(m, true);
    let lf = wreath_unique_half(m, false);
    Ok(CounterMachine::union_counters(&[&rf, &lf]))
}

/// One geodesic word per element of `L_2` over `{t, ta}`.
///
/// When the cursor ends at or left of the origin the word runs right to the
/// rightmost lit bulb and sweeps left; otherwise it runs left first.
pub fn counter_unique_tta() -> CounterMachine {
    let rf = tta_unique_half(true);
    let lf = tta_unique_half(false);
    CounterMachine::union_counters(&[&rf, &lf])
}

fn tta_unique_half(right_first: bool) -> CounterMachine {
    // Letters in the direction of the opening run and of the sweep.
    let (run, sweep, sweep_lit, ret, sr, ss) = if right_first {
        ("t", "T", "S", "t", 1, -1)
    } else {
        ("T", "t", "s", "T", -1, 1)
    };
    let mut c = CounterMachine::new(alphabet_letters(GenAlphabet::Automaton, 2), 1, "start");
    let out = c.add_state("out");
    let any = c.add_state("sweep");
    let toggled = c.add_state("toggled");
    let back = c.add_state("back");
    let acc = c.add_state("acc");
    c.add_accept(acc);
    c.add_edge(0, out, run, d1(sr));
    c.add_edge(out, out, run, d1(sr));
    c.add_edge(out, toggled, sweep_lit, d1(ss));
    c.add_edge(0, any, "", d1(0));
    c.add_edge(any, any, sweep, d1(ss));
    c.add_edge(any, toggled, sweep_lit, d1(ss));
    c.add_edge(toggled, toggled, sweep_lit, d1(ss));
    c.add_edge(toggled, any, sweep, d1(ss));
    c.add_edge(toggled, back, ret, d1(sr));
    c.add_edge(back, back, ret, d1(sr));
    if right_first {
        // Final cursor <= 0.
        for s in [any, toggled, back] {
            c.add_edge(s, acc, "", d1(0));
        }
        c.add_edge(acc, acc, "", d1(1));
    } else {
        // Final cursor >= 1.
        for s in [any, toggled, back] {
            c.add_edge(s, acc, "", d1(-1));
        }
        c.add_edge(acc, acc, "", d1(-1));
    }
    c
}

#[derive(Clone, Copy)]
enum Dir {
    Right,
    Left,
}

/// Letters for a walk whose first move goes in direction `d`:
/// forward, forward-then-toggle, backward.
fn wreath_moves(d: Dir) -> (&'static str, &'static str, &'static str) {
    match d {
        Dir::Right => ("t", "ta", "T"),
        Dir::Left => ("T", "Ta", "t"),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    /// Final cursor on the forward side of the origin, or at it.
    Forward,
    /// Final cursor behind the origin, or at it.
    Behind,
}

/// Walks that never turn.
fn monotone(d: Dir) -> PushdownMachine {
    let (f, fa, _) = wreath_moves(d);
    let mut p = PushdownMachine::new("atT", 0, "start");
    let run = p.add_state("run");
    let acc = p.add_state("acc");
    p.add_accept(acc);
    p.add_edge(0, run, "", StackOp::Push('$'));
    p.add_edge(0, run, "a", StackOp::Push('#'));
    p.add_edge(run, run, f, StackOp::None);
    p.add_edge(run, run, fa, StackOp::None);
    p.add_edge(run, acc, "", StackOp::Pop('$'));
    p.add_edge(run, acc, "", StackOp::Pop('#'));
    p
}

/// The common opening of turning walks: a forward run recording which bulbs
/// were lit (`1`) or passed (`0`) above a marker for the origin (`#` if the
/// origin was lit, `$` otherwise), then a turn at a lit bulb and a backward
/// run that may light only bulbs passed unlit. Returns the machine, the
/// backward-run state and the accept state.
fn turning_prefix(d: Dir) -> (PushdownMachine, usize, usize) {
    let (f, fa, b) = wreath_moves(d);
    let mut p = PushdownMachine::new("atT", 0, "start");
    let out = p.add_state("out");
    let back = p.add_state("back");
    let acc = p.add_state("acc");
    p.add_accept(acc);
    p.add_edge(0, out, "", StackOp::Push('$'));
    p.add_edge(0, out, "a", StackOp::Push('#'));
    p.add_edge(out, out, f, StackOp::Push('0'));
    p.add_edge(out, out, fa, StackOp::Push('1'));
    p.add_edge(out, back, &format!("{fa}{b}"), StackOp::None);
    p.add_edge(back, back, b, StackOp::Pop('0'));
    p.add_edge(back, back, b, StackOp::Pop('1'));
    p.add_edge(back, back, &format!("a{b}"), StackOp::Pop('0'));
    (p, back, acc)
}

/// Stop where the stack top describes the current bulb, lighting it if it
/// is still dark, then empty the stack.
fn stop_and_drain(p: &mut PushdownMachine, from: usize, acc: usize) {
    let drain = p.add_state(format!("drain{from}"));
    p.add_edge(from, drain, "", StackOp::Pop('0'));
    p.add_edge(from, drain, "a", StackOp::Pop('0'));
    p.add_edge(from, drain, "", StackOp::Pop('1'));
    p.add_edge(drain, drain, "", StackOp::Pop('0'));
    p.add_edge(drain, drain, "", StackOp::Pop('1'));
    p.add_edge(drain, acc, "", StackOp::Pop('$'));
    p.add_edge(drain, acc, "", StackOp::Pop('#'));
    stop_at_origin(p, from, acc);
}

fn stop_at_origin(p: &mut PushdownMachine, from: usize, acc: usize) {
    p.add_edge(from, acc, "", StackOp::Pop('$'));
    p.add_edge(from, acc, "a", StackOp::Pop('$'));
    p.add_edge(from, acc, "", StackOp::Pop('#'));
}

/// One turn, at a lit bulb, ending anywhere short of it.
fn bounce(d: Dir, end: End) -> PushdownMachine {
    let (_, _, b) = wreath_moves(d);
    let (mut p, back, acc) = turning_prefix(d);
    match end {
        End::Forward => stop_and_drain(&mut p, back, acc),
        End::Behind => {
            let free = p.add_state("free");
            p.add_accept(free);
            p.add_edge(back, free, "", StackOp::Pop('$'));
            p.add_edge(back, free, "a", StackOp::Pop('$'));
            p.add_edge(back, free, "", StackOp::Pop('#'));
            p.add_edge(free, free, b, StackOp::None);
            p.add_edge(free, free, &format!("{b}a"), StackOp::None);
        }
    }
    p
}

/// Two turns, each at a lit bulb, the second behind the origin, ending
/// between the second turn and the origin.
fn zigzag(d: Dir) -> PushdownMachine {
    let (f, _, b) = wreath_moves(d);
    let (mut p, back, acc) = turning_prefix(d);
    let behind = p.add_state("behind");
    let lit_origin = p.add_state("lit_origin");
    let ret = p.add_state("return");
    // At the origin the marker is checked by popping and pushing it back;
    // the origin may be lit on the way past.
    for marker in ['$', '#'] {
        let check = p.add_state(format!("at_origin{marker}"));
        p.add_edge(back, check, "", StackOp::Pop(marker));
        p.add_edge(check, behind, "", StackOp::Push(marker));
    }
    p.add_edge(back, lit_origin, "a", StackOp::Pop('$'));
    p.add_edge(lit_origin, behind, "", StackOp::Push('#'));
    p.add_edge(behind, behind, b, StackOp::Push('0'));
    p.add_edge(behind, behind, &format!("{b}a"), StackOp::Push('1'));
    p.add_edge(behind, ret, &format!("{b}a{f}"), StackOp::None);
    p.add_edge(ret, ret, f, StackOp::Pop('0'));
    p.add_edge(ret, ret, f, StackOp::Pop('1'));
    p.add_edge(ret, ret, &format!("a{f}"), StackOp::Pop('0'));
    stop_and_drain(&mut p, ret, acc);
    p
}

/// The four case machines for geodesics in `L_2` over `{a, t}`.
pub fn pda_wreath_cases() -> [PushdownMachine; 4] {
    let union = |a: PushdownMachine, b: PushdownMachine| PushdownMachine::union(&[&a, &b]);
    [
        union(monotone(Dir::Left), bounce(Dir::Left, End::Forward)),
        union(monotone(Dir::Right), bounce(Dir::Right, End::Forward)),
        union(bounce(Dir::Right, End::Behind), zigzag(Dir::Right)),
        union(bounce(Dir::Left, End::Behind), zigzag(Dir::Left)),
    ]
}

/// Every geodesic word of `L_2` over `{a, t}`.
pub fn pda_full_wreath() -> PushdownMachine {
    let cases = pda_wreath_cases();
    let refs: Vec<&PushdownMachine> = cases.iter().collect();
    PushdownMachine::union(&refs)
}

/// Letters for `{t, ta}` walks whose first move goes in direction `d`:
/// forward, forward toggling, backward, backward toggling.
fn tta_moves(d: Dir) -> [&'static str; 4] {
    match d {
        Dir::Right => ["t", "s", "T", "S"],
        Dir::Left => ["T", "S", "t", "s"],
    }
}

/// Walks with at most one turn, which must happen at a lit bulb.
fn tta_sweep_bounce(d: Dir) -> CounterMachine {
    let [f, fs, b, bs] = tta_moves(d);
    let mut c = CounterMachine::new("tTsS", 1, "run");
    let back = c.add_state("back");
    c.add_accept(0);
    c.add_accept(back);
    for l in [f, fs] {
        c.add_edge(0, 0, l, d1(0));
    }
    c.add_edge(0, back, &format!("{fs}{b}"), d1(0));
    c.add_edge(0, back, &format!("{f}{bs}"), d1(0));
    for l in [b, bs] {
        c.add_edge(back, back, l, d1(0));
    }
    c
}

/// Walks with two turns at lit bulbs; the counter holds the cursor in
/// forward coordinates and must end at or behind the origin.
fn tta_zigzag(d: Dir) -> CounterMachine {
    let [f, fs, b, bs] = tta_moves(d);
    let mut c = CounterMachine::new("tTsS", 1, "out");
    let back = c.add_state("back");
    let ret = c.add_state("return");
    let acc = c.add_state("acc");
    c.add_accept(acc);
    for l in [f, fs] {
        c.add_edge(0, 0, l, d1(1));
        c.add_edge(ret, ret, l, d1(1));
    }
    c.add_edge(0, back, &format!("{fs}{b}"), d1(0));
    c.add_edge(0, back, &format!("{f}{bs}"), d1(0));
    for l in [b, bs] {
        c.add_edge(back, back, l, d1(-1));
    }
    c.add_edge(back, ret, &format!("{b}{fs}"), d1(0));
    c.add_edge(back, ret, &format!("{bs}{f}"), d1(0));
    c.add_edge(ret, acc, "", d1(0));
    c.add_edge(acc, acc, "", d1(1));
    c
}

/// Every geodesic word of `L_2` over `{t, ta}`, with one counter.
pub fn counter_full_tta() -> CounterMachine {
    let parts = [
        tta_sweep_bounce(Dir::Right),
        tta_sweep_bounce(Dir::Left),
        tta_zigzag(Dir::Right),
        tta_zigzag(Dir::Left),
    ];
    let refs: Vec<&CounterMachine> = parts.iter().collect();
    CounterMachine::union_counters(&refs)
}

/// Whether a machine accepts every geodesic or one per element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Full,
    Unique,
}

/// Registry entry for a named machine.
#[derive(Debug, Clone, Copy)]
pub struct NamedMachine {
    pub name: &'static str,
    /// Generators the machine's words are read over, if it is a geodesic
    /// acceptor.
    pub alphabet: Option<GenAlphabet>,
    pub coverage: Option<Coverage>,
    pub takes_modulus: bool,
}

pub const MACHINES: &[NamedMachine] = &[
    NamedMachine {
        name: "pda_anbn",
        alphabet: None,
        coverage: None,
        takes_modulus: false,
    },
    NamedMachine {
        name: "counter_anbnan",
        alphabet: None,
        coverage: None,
        takes_modulus: false,
    },
    NamedMachine {
        name: "counter_unique_wreath",
        alphabet: Some(GenAlphabet::Wreath),
        coverage: Some(Coverage::Unique),
        takes_modulus: true,
    },
    NamedMachine {
        name: "pda_full_wreath",
        alphabet: Some(GenAlphabet::Wreath),
        coverage: Some(Coverage::Full),
        takes_modulus: false,
    },
    NamedMachine {
        name: "counter_unique_tta",
        alphabet: Some(GenAlphabet::Automaton),
        coverage: Some(Coverage::Unique),
        takes_modulus: false,
    },
    NamedMachine {
        name: "counter_full_tta",
        alphabet: Some(GenAlphabet::Automaton),
        coverage: Some(Coverage::Full),
        takes_modulus: false,
    },
];

pub fn lookup(name: &str) -> Result<&'static NamedMachine, MachineError> {
    MACHINES
        .iter()
        .find(|n| n.name == name)
        .ok_or_else(|| MachineError::UnknownMachine(name.to_string()))
}

/// Builds a named machine. `m` only matters for machines over `L_m`; those
/// defined for `L_2` alone reject other moduli.
pub fn build(name: &str, m: u32) -> Result<AnyMachine, MachineError> {
    let entry = lookup(name)?;
    if entry.alphabet.is_some() && !entry.takes_modulus && m != 2 {
        return Err(MachineError::UnsupportedModulus(m));
    }
    Ok(match entry.name {
        "pda_anbn" => pda_anbn().into(),
        "counter_anbnan" => counter_anbnan().into(),
        "counter_unique_wreath" => counter_unique_wreath(m)?.into(),
        "pda_full_wreath" => pda_full_wreath().into(),
        "counter_unique_tta" => counter_unique_tta().into(),
        "counter_full_tta" => counter_full_tta().into(),
        _ => unreachable!("registry and builder disagree"),
    })
}
