//! Nondeterministic acceptors: finite state automata, blind `Z^k` counter
//! automata and pushdown automata.
//!
//! All three share one graph representation, [`Automaton`], parameterised by
//! the effect an edge has on the machine's storage. Edge labels are words
//! (possibly empty) over a character alphabet, so machines can be written
//! down with multi-letter labels such as `"taT"` and matched directly.
//!
//! Searches are exhaustive over configurations `(state, input offset,
//! storage)`. Storage is bounded by `(word length + state count + 1)` times
//! the largest per-edge effect; configurations are never revisited, so
//! every search terminates even with effect-free epsilon cycles.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::{self, Debug, Write as _};
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("letter '{letter}' is not in the machine alphabet {alphabet:?}")]
    AlphabetMismatch { letter: char, alphabet: String },
    #[error("cannot combine machines of different kinds ({0} and {1})")]
    MixedKinds(MachineKind, MachineKind),
    #[error("counter vector has length {got}, machine has {expected} counters")]
    DeltaLength { expected: usize, got: usize },
    #[error("malformed machine JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid machine description: {0}")]
    Schema(String),
}

/// What an edge does to the machine's storage.
pub trait Effect: Clone + PartialEq + Eq + Debug + Default {
    type Store: Clone + Eq + Hash + Ord + Debug;

    fn initial(dim: usize) -> Self::Store;
    /// `None` when the edge cannot fire (e.g. popping the wrong symbol).
    fn apply(&self, store: &Self::Store) -> Option<Self::Store>;
    fn accepting(store: &Self::Store) -> bool;
    /// Largest change this edge makes to any counter or to the stack height.
    fn magnitude(&self) -> usize;
    fn store_size(store: &Self::Store) -> usize;
    /// Splits the effect over `n >= magnitude()` consecutive unit edges.
    fn split(&self, n: usize) -> Vec<Self>;
    fn is_neutral(&self) -> bool {
        *self == Self::default()
    }
    fn describe(&self) -> String;
}

/// Edges of a plain finite state automaton carry no effect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NoEffect;

impl Effect for NoEffect {
    type Store = ();

    fn initial(_: usize) {}
    fn apply(&self, _: &()) -> Option<()> {
        Some(())
    }
    fn accepting(_: &()) -> bool {
        true
    }
    fn magnitude(&self) -> usize {
        0
    }
    fn store_size(_: &()) -> usize {
        0
    }
    fn split(&self, n: usize) -> Vec<Self> {
        vec![NoEffect; n]
    }
    fn describe(&self) -> String {
        String::new()
    }
}

/// A displacement in `Z^k`. The empty vector is the zero of any dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Delta(pub Vec<i64>);

impl Delta {
    pub fn zero(k: usize) -> Self {
        Delta(vec![0; k])
    }

    fn padded(&self, k: usize) -> Delta {
        let mut v = self.0.clone();
        v.resize(k, 0);
        Delta(v)
    }
}

impl Effect for Delta {
    type Store = Vec<i64>;

    fn initial(dim: usize) -> Vec<i64> {
        vec![0; dim]
    }
    fn apply(&self, store: &Vec<i64>) -> Option<Vec<i64>> {
        let mut out = store.clone();
        for (c, d) in out.iter_mut().zip(&self.0) {
            *c += d;
        }
        Some(out)
    }
    fn accepting(store: &Vec<i64>) -> bool {
        store.iter().all(|&c| c == 0)
    }
    fn magnitude(&self) -> usize {
        self.0.iter().map(|d| d.unsigned_abs() as usize).max().unwrap_or(0)
    }
    fn store_size(store: &Vec<i64>) -> usize {
        store.iter().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0)
    }
    fn split(&self, n: usize) -> Vec<Self> {
        (0..n)
            .map(|step| {
                Delta(
                    self.0
                        .iter()
                        .map(|&d| if (step as u64) < d.unsigned_abs() { d.signum() } else { 0 })
                        .collect(),
                )
            })
            .collect()
    }
    fn is_neutral(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }
    fn describe(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|d| if *d > 0 { format!("+{d}") } else { d.to_string() })
            .collect();
        format!("({})", parts.join(","))
    }
}

/// A single stack action; acceptance needs an empty stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StackOp {
    #[default]
    None,
    Push(char),
    Pop(char),
}

impl Effect for StackOp {
    type Store = Vec<char>;

    fn initial(_: usize) -> Vec<char> {
        Vec::new()
    }
    fn apply(&self, store: &Vec<char>) -> Option<Vec<char>> {
        match *self {
            StackOp::None => Some(store.clone()),
            StackOp::Push(c) => {
                let mut out = store.clone();
                out.push(c);
                Some(out)
            }
            StackOp::Pop(c) => {
                if store.last() == Some(&c) {
                    Some(store[..store.len() - 1].to_vec())
                } else {
                    None
                }
            }
        }
    }
    fn accepting(store: &Vec<char>) -> bool {
        store.is_empty()
    }
    fn magnitude(&self) -> usize {
        usize::from(*self != StackOp::None)
    }
    fn store_size(store: &Vec<char>) -> usize {
        store.len()
    }
    fn split(&self, n: usize) -> Vec<Self> {
        let mut v = vec![StackOp::None; n];
        if let Some(first) = v.first_mut() {
            *first = *self;
        }
        v
    }
    fn describe(&self) -> String {
        match self {
            StackOp::None => String::new(),
            StackOp::Push(c) => format!("push {c}"),
            StackOp::Pop(c) => format!("pop {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<E> {
    pub from: usize,
    pub to: usize,
    pub label: String,
    pub effect: E,
}

/// A nondeterministic machine over a character alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton<E> {
    alphabet: BTreeSet<char>,
    /// Number of counters; zero for FSAs and PDAs.
    dim: usize,
    states: Vec<String>,
    start: usize,
    accepts: BTreeSet<usize>,
    edges: Vec<Edge<E>>,
}

pub type Fsa = Automaton<NoEffect>;
pub type CounterMachine = Automaton<Delta>;
pub type PushdownMachine = Automaton<StackOp>;

impl<E: Effect> Automaton<E> {
    /// A machine with a single start state named `start`.
    pub fn new(alphabet: &str, dim: usize, start: &str) -> Self {
        Automaton {
            alphabet: alphabet.chars().collect(),
            dim,
            states: vec![start.to_string()],
            start: 0,
            accepts: BTreeSet::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.states.push(name.into());
        self.states.len() - 1
    }

    pub fn add_accept(&mut self, state: usize) {
        self.accepts.insert(state);
    }

    pub fn set_start(&mut self, state: usize) {
        self.start = state;
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: &str, effect: E) {
        debug_assert!(label.chars().all(|c| self.alphabet.contains(&c)), "label {label:?}");
        self.edges.push(Edge {
            from,
            to,
            label: label.to_string(),
            effect,
        });
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept_states(&self) -> &BTreeSet<usize> {
        &self.accepts
    }

    pub fn edges(&self) -> &[Edge<E>] {
        &self.edges
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    fn max_effect(&self) -> usize {
        self.edges.iter().map(|e| e.effect.magnitude()).max().unwrap_or(0).max(1)
    }

    fn store_bound(&self, word_len: usize) -> usize {
        (word_len + self.states.len() + 1) * self.max_effect()
    }

    fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.from].push(i);
        }
        out
    }

    fn check_word(&self, word: &str) -> Result<(), EngineError> {
        match word.chars().find(|c| !self.alphabet.contains(c)) {
            Some(letter) => Err(EngineError::AlphabetMismatch {
                letter,
                alphabet: self.alphabet.iter().collect(),
            }),
            None => Ok(()),
        }
    }

    fn is_accepting(&self, state: usize, store: &E::Store) -> bool {
        self.accepts.contains(&state) && E::accepting(store)
    }

    /// Whether some path from the start spells `word` and ends in an accept
    /// state with empty stack / zero counters.
    pub fn accepts(&self, word: &str) -> Result<bool, EngineError> {
        self.check_word(word)?;
        let input: Vec<char> = word.chars().collect();
        let out = self.out_edges();
        let bound = self.store_bound(input.len());
        let init = (self.start, 0usize, E::initial(self.dim));
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(init.clone());
        queue.push_back(init);
        while let Some((state, pos, store)) = queue.pop_front() {
            if pos == input.len() && self.is_accepting(state, &store) {
                return Ok(true);
            }
            for &ei in &out[state] {
                let e = &self.edges[ei];
                let n = e.label.chars().count();
                if pos + n > input.len() || !e.label.chars().eq(input[pos..pos + n].iter().copied()) {
                    continue;
                }
                let Some(next) = e.effect.apply(&store) else { continue };
                if E::store_size(&next) > bound {
                    continue;
                }
                let cfg = (e.to, pos + n, next);
                if seen.insert(cfg.clone()) {
                    queue.push_back(cfg);
                }
            }
        }
        Ok(false)
    }

    fn epsilon_closure(
        &self,
        out: &[Vec<usize>],
        seeds: HashSet<(usize, E::Store)>,
        bound: usize,
    ) -> HashSet<(usize, E::Store)> {
        let mut closed = seeds.clone();
        let mut stack: Vec<_> = seeds.into_iter().collect();
        while let Some((state, store)) = stack.pop() {
            for &ei in &out[state] {
                let e = &self.edges[ei];
                if !e.label.is_empty() {
                    continue;
                }
                let Some(next) = e.effect.apply(&store) else { continue };
                if E::store_size(&next) > bound {
                    continue;
                }
                let cfg = (e.to, next);
                if closed.insert(cfg.clone()) {
                    stack.push(cfg);
                }
            }
        }
        closed
    }

    /// All accepted words of length at most `max_len`, in lexicographic order.
    pub fn enumerate_language(&self, max_len: usize) -> BTreeSet<String> {
        let out = self.out_edges();
        let bound = self.store_bound(max_len);
        let mut buckets: Vec<HashMap<String, HashSet<(usize, E::Store)>>> =
            (0..=max_len).map(|_| HashMap::new()).collect();
        buckets[0]
            .entry(String::new())
            .or_default()
            .insert((self.start, E::initial(self.dim)));
        let mut accepted = BTreeSet::new();
        for len in 0..=max_len {
            let level = std::mem::take(&mut buckets[len]);
            for (word, seeds) in level {
                let configs = self.epsilon_closure(&out, seeds, bound);
                if configs.iter().any(|(s, st)| self.is_accepting(*s, st)) {
                    accepted.insert(word.clone());
                }
                for (state, store) in &configs {
                    for &ei in &out[*state] {
                        let e = &self.edges[ei];
                        let n = e.label.chars().count();
                        if n == 0 || len + n > max_len {
                            continue;
                        }
                        let Some(next) = e.effect.apply(store) else { continue };
                        if E::store_size(&next) > bound {
                            continue;
                        }
                        let mut w = word.clone();
                        w.push_str(&e.label);
                        buckets[len + n].entry(w).or_default().insert((e.to, next));
                    }
                }
            }
        }
        accepted
    }

    /// Language-equivalent machine whose labels have at most one letter and
    /// whose edges change storage by at most one unit.
    pub fn normalize_unit_moves(&self) -> Self {
        let mut m = Automaton {
            alphabet: self.alphabet.clone(),
            dim: self.dim,
            states: self.states.clone(),
            start: self.start,
            accepts: self.accepts.clone(),
            edges: Vec::new(),
        };
        for (ei, e) in self.edges.iter().enumerate() {
            let letters: Vec<char> = e.label.chars().collect();
            let n = letters.len().max(e.effect.magnitude()).max(1);
            if n == 1 {
                m.edges.push(e.clone());
                continue;
            }
            let effects = e.effect.split(n);
            let mut from = e.from;
            for (step, effect) in effects.into_iter().enumerate() {
                let to = if step + 1 == n {
                    e.to
                } else {
                    m.add_state(format!("e{ei}.{}", step + 1))
                };
                let label = letters.get(step).map(|c| c.to_string()).unwrap_or_default();
                m.edges.push(Edge { from, to, label, effect });
                from = to;
            }
        }
        m
    }

    /// Disjoint union with a fresh start state and epsilon edges.
    pub fn union(machines: &[&Self]) -> Self {
        let dim = machines.iter().map(|m| m.dim).max().unwrap_or(0);
        let alphabet: String = machines
            .iter()
            .flat_map(|m| m.alphabet.iter().copied())
            .collect::<BTreeSet<char>>()
            .into_iter()
            .collect();
        let mut u = Automaton::new(&alphabet, dim, "start");
        for (k, m) in machines.iter().enumerate() {
            let offset = u.states.len();
            u.states.extend(m.states.iter().map(|s| format!("m{k}.{s}")));
            u.accepts.extend(m.accepts.iter().map(|a| a + offset));
            u.edges.push(Edge {
                from: 0,
                to: m.start + offset,
                label: String::new(),
                effect: E::default(),
            });
            for e in &m.edges {
                u.edges.push(Edge {
                    from: e.from + offset,
                    to: e.to + offset,
                    label: e.label.clone(),
                    effect: e.effect.clone(),
                });
            }
        }
        u
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=LR;");
        let _ = writeln!(s, "  __start [shape=point];");
        for (i, st) in self.states.iter().enumerate() {
            let shape = if self.accepts.contains(&i) { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  s{i} [label=\"{st}\", shape={shape}];");
        }
        let _ = writeln!(s, "  __start -> s{};", self.start);
        for e in &self.edges {
            let label = if e.label.is_empty() { "ε" } else { e.label.as_str() };
            let effect = e.effect.describe();
            let text = if effect.is_empty() {
                label.to_string()
            } else {
                format!("{label}, {effect}")
            };
            let _ = writeln!(s, "  s{} -> s{} [label=\"{text}\"];", e.from, e.to);
        }
        s.push_str("}\n");
        s
    }
}

impl CounterMachine {
    /// Checks that every delta vector has one entry per counter.
    pub fn validate(&self) -> Result<(), EngineError> {
        for e in &self.edges {
            if e.effect.0.len() != self.dim {
                return Err(EngineError::DeltaLength {
                    expected: self.dim,
                    got: e.effect.0.len(),
                });
            }
        }
        Ok(())
    }

    /// Pads deltas so a union of machines with different counter counts is
    /// well formed.
    pub fn union_counters(machines: &[&CounterMachine]) -> CounterMachine {
        let mut u = Automaton::union(machines);
        let k = u.dim;
        for e in &mut u.edges {
            e.effect = e.effect.padded(k);
        }
        u
    }
}

impl Fsa {
    /// The FSA accepting every word over `alphabet`.
    pub fn universal(alphabet: &str) -> Fsa {
        let mut f = Fsa::new(alphabet, 0, "q");
        f.add_accept(0);
        for c in alphabet.chars() {
            f.add_edge(0, 0, &c.to_string(), NoEffect);
        }
        f
    }

    /// The FSA accepting nothing.
    pub fn empty(alphabet: &str) -> Fsa {
        Fsa::new(alphabet, 0, "q")
    }
}

/// Product of a counter machine with a finite state automaton, accepting
/// `L(c) ∩ L(r)` with the same counters as `c`.
pub fn intersect_counter_regular(c: &CounterMachine, r: &Fsa) -> Result<CounterMachine, EngineError> {
    if c.alphabet != r.alphabet {
        let letter = c
            .alphabet
            .symmetric_difference(&r.alphabet)
            .next()
            .copied()
            .unwrap_or('?');
        return Err(EngineError::AlphabetMismatch {
            letter,
            alphabet: c.alphabet.iter().collect(),
        });
    }
    let c = c.normalize_unit_moves();
    let r = r.normalize_unit_moves();
    let nr = r.states.len();
    let idx = |i: usize, j: usize| i * nr + j;
    let alphabet: String = c.alphabet.iter().collect();
    let mut p = CounterMachine::new(&alphabet, c.dim, "");
    p.states.clear();
    for si in &c.states {
        for sj in &r.states {
            p.states.push(format!("{si}|{sj}"));
        }
    }
    p.start = idx(c.start, r.start);
    for &i in &c.accepts {
        for &j in &r.accepts {
            p.accepts.insert(idx(i, j));
        }
    }
    for e in &c.edges {
        if e.label.is_empty() {
            for j in 0..nr {
                p.add_edge(idx(e.from, j), idx(e.to, j), "", e.effect.clone());
            }
        } else {
            for f in r.edges.iter().filter(|f| f.label == e.label) {
                p.add_edge(idx(e.from, f.from), idx(e.to, f.to), &e.label, e.effect.clone());
            }
        }
    }
    for f in r.edges.iter().filter(|f| f.label.is_empty()) {
        for i in 0..c.states.len() {
            p.add_edge(idx(i, f.from), idx(i, f.to), "", Delta::zero(c.dim));
        }
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MachineKind {
    Fsa,
    Counter,
    Pda,
}

impl fmt::Display for MachineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MachineKind::Fsa => "fsa",
            MachineKind::Counter => "counter",
            MachineKind::Pda => "pda",
        })
    }
}

/// A machine of any of the three kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMachine {
    Fsa(Fsa),
    Counter(CounterMachine),
    Pda(PushdownMachine),
}

impl From<Fsa> for AnyMachine {
    fn from(m: Fsa) -> Self {
        AnyMachine::Fsa(m)
    }
}

impl From<CounterMachine> for AnyMachine {
    fn from(m: CounterMachine) -> Self {
        AnyMachine::Counter(m)
    }
}

impl From<PushdownMachine> for AnyMachine {
    fn from(m: PushdownMachine) -> Self {
        AnyMachine::Pda(m)
    }
}

#[derive(Serialize, Deserialize)]
struct RawMachine {
    kind: MachineKind,
    #[serde(default)]
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet: Option<Vec<String>>,
    states: Vec<String>,
    start: String,
    accepts: Vec<String>,
    edges: Vec<RawEdge>,
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    from: String,
    to: String,
    #[serde(default)]
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stack: Option<RawStack>,
}

#[derive(Serialize, Deserialize)]
struct RawStack {
    op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sym: Option<String>,
}

fn raw_of<E: Effect>(
    m: &Automaton<E>,
    kind: MachineKind,
    edge: impl Fn(&E) -> (Option<Vec<i64>>, Option<RawStack>),
) -> RawMachine {
    RawMachine {
        kind,
        k: m.dim,
        alphabet: Some(m.alphabet.iter().map(|c| c.to_string()).collect()),
        states: m.states.clone(),
        start: m.states[m.start].clone(),
        accepts: m.accepts.iter().map(|&a| m.states[a].clone()).collect(),
        edges: m
            .edges
            .iter()
            .map(|e| {
                let (delta, stack) = edge(&e.effect);
                RawEdge {
                    from: m.states[e.from].clone(),
                    to: m.states[e.to].clone(),
                    label: e.label.clone(),
                    delta,
                    stack,
                }
            })
            .collect(),
    }
}

fn from_raw<E: Effect>(
    raw: &RawMachine,
    effect: impl Fn(&RawEdge) -> Result<E, EngineError>,
) -> Result<Automaton<E>, EngineError> {
    let mut index = BTreeMap::new();
    for (i, s) in raw.states.iter().enumerate() {
        if index.insert(s.as_str(), i).is_some() {
            return Err(EngineError::Schema(format!("duplicate state '{s}'")));
        }
    }
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| EngineError::Schema(format!("unknown state '{name}'")))
    };
    let alphabet: BTreeSet<char> = match &raw.alphabet {
        Some(letters) => {
            let mut set = BTreeSet::new();
            for l in letters {
                let mut it = l.chars();
                match (it.next(), it.next()) {
                    (Some(c), None) => {
                        set.insert(c);
                    }
                    _ => return Err(EngineError::Schema(format!("alphabet entry '{l}' is not one character"))),
                }
            }
            set
        }
        None => raw.edges.iter().flat_map(|e| e.label.chars()).collect(),
    };
    let mut m = Automaton {
        alphabet,
        dim: raw.k,
        states: raw.states.clone(),
        start: lookup(&raw.start)?,
        accepts: BTreeSet::new(),
        edges: Vec::new(),
    };
    for a in &raw.accepts {
        m.accepts.insert(lookup(a)?);
    }
    for e in &raw.edges {
        if let Some(c) = e.label.chars().find(|c| !m.alphabet.contains(c)) {
            return Err(EngineError::Schema(format!("label '{}' uses letter '{c}' outside the alphabet", e.label)));
        }
        m.edges.push(Edge {
            from: lookup(&e.from)?,
            to: lookup(&e.to)?,
            label: e.label.clone(),
            effect: effect(e)?,
        });
    }
    Ok(m)
}

fn single_char(sym: &Option<String>) -> Result<char, EngineError> {
    let s = sym
        .as_deref()
        .ok_or_else(|| EngineError::Schema("stack action needs a symbol".into()))?;
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(EngineError::Schema(format!("stack symbol '{s}' is not one character"))),
    }
}

impl AnyMachine {
    pub fn kind(&self) -> MachineKind {
        match self {
            AnyMachine::Fsa(_) => MachineKind::Fsa,
            AnyMachine::Counter(_) => MachineKind::Counter,
            AnyMachine::Pda(_) => MachineKind::Pda,
        }
    }

    pub fn accepts(&self, word: &str) -> Result<bool, EngineError> {
        match self {
            AnyMachine::Fsa(m) => m.accepts(word),
            AnyMachine::Counter(m) => m.accepts(word),
            AnyMachine::Pda(m) => m.accepts(word),
        }
    }

    pub fn enumerate_language(&self, max_len: usize) -> BTreeSet<String> {
        match self {
            AnyMachine::Fsa(m) => m.enumerate_language(max_len),
            AnyMachine::Counter(m) => m.enumerate_language(max_len),
            AnyMachine::Pda(m) => m.enumerate_language(max_len),
        }
    }

    pub fn state_count(&self) -> usize {
        match self {
            AnyMachine::Fsa(m) => m.states.len(),
            AnyMachine::Counter(m) => m.states.len(),
            AnyMachine::Pda(m) => m.states.len(),
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        match self {
            AnyMachine::Fsa(m) => m.to_dot(name),
            AnyMachine::Counter(m) => m.to_dot(name),
            AnyMachine::Pda(m) => m.to_dot(name),
        }
    }

    /// Union of machines of one kind; the empty union is an FSA with no
    /// accept states.
    pub fn union(machines: &[AnyMachine]) -> Result<AnyMachine, EngineError> {
        let Some(first) = machines.first() else {
            return Ok(AnyMachine::Fsa(Fsa::new("", 0, "start")));
        };
        if let Some(other) = machines.iter().find(|m| m.kind() != first.kind()) {
            return Err(EngineError::MixedKinds(first.kind(), other.kind()));
        }
        Ok(match first.kind() {
            MachineKind::Fsa => {
                let v: Vec<&Fsa> = machines
                    .iter()
                    .map(|m| match m {
                        AnyMachine::Fsa(f) => f,
                        _ => unreachable!(),
                    })
                    .collect();
                AnyMachine::Fsa(Automaton::union(&v))
            }
            MachineKind::Counter => {
                let v: Vec<&CounterMachine> = machines
                    .iter()
                    .map(|m| match m {
                        AnyMachine::Counter(c) => c,
                        _ => unreachable!(),
                    })
                    .collect();
                AnyMachine::Counter(CounterMachine::union_counters(&v))
            }
            MachineKind::Pda => {
                let v: Vec<&PushdownMachine> = machines
                    .iter()
                    .map(|m| match m {
                        AnyMachine::Pda(p) => p,
                        _ => unreachable!(),
                    })
                    .collect();
                AnyMachine::Pda(Automaton::union(&v))
            }
        })
    }

    pub fn to_json(&self) -> String {
        let raw = match self {
            AnyMachine::Fsa(m) => raw_of(m, MachineKind::Fsa, |_| (None, None)),
            AnyMachine::Counter(m) => raw_of(m, MachineKind::Counter, |d| (Some(d.0.clone()), None)),
            AnyMachine::Pda(m) => raw_of(m, MachineKind::Pda, |op| {
                let stack = match op {
                    StackOp::None => RawStack {
                        op: "none".into(),
                        sym: None,
                    },
                    StackOp::Push(c) => RawStack {
                        op: "push".into(),
                        sym: Some(c.to_string()),
                    },
                    StackOp::Pop(c) => RawStack {
                        op: "pop".into(),
                        sym: Some(c.to_string()),
                    },
                };
                (None, Some(stack))
            }),
        };
        serde_json::to_string_pretty(&raw).expect("machine serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<AnyMachine, EngineError> {
        let raw: RawMachine = serde_json::from_str(text)?;
        Ok(match raw.kind {
            MachineKind::Fsa => AnyMachine::Fsa(from_raw(&raw, |_| Ok(NoEffect))?),
            MachineKind::Counter => {
                let m = from_raw(&raw, |e| {
                    Ok(Delta(e.delta.clone().unwrap_or_else(|| vec![0; raw.k])))
                })?;
                m.validate()?;
                AnyMachine::Counter(m)
            }
            MachineKind::Pda => AnyMachine::Pda(from_raw(&raw, |e| match &e.stack {
                None => Ok(StackOp::None),
                Some(s) => match s.op.as_str() {
                    "none" => Ok(StackOp::None),
                    "push" => Ok(StackOp::Push(single_char(&s.sym)?)),
                    "pop" => Ok(StackOp::Pop(single_char(&s.sym)?)),
                    other => Err(EngineError::Schema(format!("unknown stack op '{other}'"))),
                },
            })?),
        })
    }
}
