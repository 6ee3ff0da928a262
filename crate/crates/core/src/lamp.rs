//! Elements of the lamplighter groups `L_m = Z_m wr Z`.
//!
//! An element is a finite configuration of bulbs, each in a state mod `m`,
//! together with a cursor position. Words are read over one of two
//! generating sets:
//!
//! * the wreath product generators `{a, t}`, where `a` increments the bulb
//!   under the cursor and `t` moves the cursor one unit to the right;
//! * the automata generators `{t, ta}` of `L_2`, where the letter `s`
//!   stands for the product `ta` (move right, then toggle the new bulb).
//!
//! Word lengths are computed in closed form (`d_length`, `dprime_length`)
//! and canonical geodesics are produced by `canonical_geodesic`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LampError {
    #[error("invalid modulus {0}: bulbs need at least two states")]
    InvalidModulus(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("the {alphabet} generating set is only supported for m = 2 (got m = {m})")]
    UnsupportedModulus { alphabet: GenAlphabet, m: u32 },
    #[error("letter '{letter}' at offset {offset} is not in the {alphabet} alphabet")]
    BadLetter {
        letter: char,
        offset: usize,
        alphabet: GenAlphabet,
    },
    #[error("bulb at position {0} has state {1}, expected a residue in 1..m")]
    BadBulbState(i64, u32),
}

/// A single generator letter. `S` is the product `ta`, `SInv` its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    T,
    TInv,
    S,
    SInv,
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_char(self.to_char())
    }
}

impl Letter {
    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::T => 't',
            Letter::TInv => 'T',
            Letter::S => 's',
            Letter::SInv => 'S',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c {
            'a' => Letter::A,
            'A' => Letter::AInv,
            't' => Letter::T,
            'T' => Letter::TInv,
            's' => Letter::S,
            'S' => Letter::SInv,
            _ => return None,
        })
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
            Letter::S => Letter::SInv,
            Letter::SInv => Letter::S,
        }
    }
}

/// Which generating set a word is written over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenAlphabet {
    /// `{a, a^-1, t, t^-1}`, text letters `a A t T`.
    Wreath,
    /// `{t, t^-1, ta, (ta)^-1}`, text letters `t T s S`.
    Automaton,
}

impl GenAlphabet {
    pub fn letters(self) -> &'static [Letter] {
        match self {
            GenAlphabet::Wreath => &[Letter::A, Letter::AInv, Letter::T, Letter::TInv],
            GenAlphabet::Automaton => &[Letter::T, Letter::TInv, Letter::S, Letter::SInv],
        }
    }

    pub fn contains(self, letter: Letter) -> bool {
        self.letters().contains(&letter)
    }

    /// Letters labelling distinct Cayley-graph edges out of every vertex.
    ///
    /// For `m = 2` under the wreath generators `a = a^-1`, so `A` is dropped.
    pub fn generators(self, m: u32) -> Vec<Letter> {
        match self {
            GenAlphabet::Wreath if m == 2 => vec![Letter::A, Letter::T, Letter::TInv],
            _ => self.letters().to_vec(),
        }
    }

    /// The two "positive" generators `X`, used by the seesaw definition.
    pub fn positive_generators(self) -> [Letter; 2] {
        match self {
            GenAlphabet::Wreath => [Letter::A, Letter::T],
            GenAlphabet::Automaton => [Letter::T, Letter::S],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenAlphabet::Wreath => "wreath",
            GenAlphabet::Automaton => "automaton",
        }
    }
}

impl fmt::Display for GenAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GenAlphabet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wreath" => Ok(GenAlphabet::Wreath),
            "automaton" | "tta" => Ok(GenAlphabet::Automaton),
            other => Err(format!("unknown generating set '{other}' (expected wreath|automaton)")),
        }
    }
}

/// A word over one of the two lamplighter alphabets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    alphabet: GenAlphabet,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn empty(alphabet: GenAlphabet) -> Self {
        GroupWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn new(alphabet: GenAlphabet, letters: Vec<Letter>) -> Result<Self, LampError> {
        for (offset, &l) in letters.iter().enumerate() {
            if !alphabet.contains(l) {
                return Err(LampError::BadLetter {
                    letter: l.to_char(),
                    offset,
                    alphabet,
                });
            }
        }
        Ok(GroupWord { alphabet, letters })
    }

    /// Parses the single-character text encoding. Whitespace is ignored.
    pub fn parse(alphabet: GenAlphabet, text: &str) -> Result<Self, LampError> {
        let mut letters = Vec::with_capacity(text.len());
        for (offset, c) in text.chars().enumerate() {
            if c.is_whitespace() {
                continue;
            }
            match Letter::from_char(c) {
                Some(l) if alphabet.contains(l) => letters.push(l),
                _ => {
                    return Err(LampError::BadLetter {
                        letter: c,
                        offset,
                        alphabet,
                    })
                }
            }
        }
        Ok(GroupWord { alphabet, letters })
    }

    pub fn alphabet(&self) -> GenAlphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        debug_assert!(self.alphabet.contains(letter));
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord, LampError> {
        if let Some(&l) = other.letters.iter().find(|l| !self.alphabet.contains(**l)) {
            return Err(LampError::BadLetter {
                letter: l.to_char(),
                offset: 0,
                alphabet: self.alphabet,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(GroupWord {
            alphabet: self.alphabet,
            letters,
        })
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            alphabet: self.alphabet,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// A group element: bulb states (sparse, nonzero residues) and a cursor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawElement", into = "RawElement")]
pub struct LampElement {
    modulus: u32,
    bulbs: BTreeMap<i64, u32>,
    cursor: i64,
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    m: u32,
    #[serde(default)]
    bulbs: BTreeMap<i64, u32>,
    #[serde(default)]
    cursor: i64,
}

impl TryFrom<RawElement> for LampElement {
    type Error = LampError;

    fn try_from(raw: RawElement) -> Result<Self, Self::Error> {
        LampElement::new(raw.m, raw.bulbs, raw.cursor)
    }
}

impl From<LampElement> for RawElement {
    fn from(x: LampElement) -> Self {
        RawElement {
            m: x.modulus,
            bulbs: x.bulbs,
            cursor: x.cursor,
        }
    }
}

fn check_modulus(m: u32) -> Result<(), LampError> {
    if m < 2 {
        Err(LampError::InvalidModulus(m))
    } else {
        Ok(())
    }
}

impl LampElement {
    pub fn identity(m: u32) -> Result<Self, LampError> {
        check_modulus(m)?;
        Ok(LampElement {
            modulus: m,
            bulbs: BTreeMap::new(),
            cursor: 0,
        })
    }

    /// Builds an element; every stored state must lie in `1..m`.
    pub fn new(m: u32, bulbs: BTreeMap<i64, u32>, cursor: i64) -> Result<Self, LampError> {
        check_modulus(m)?;
        if let Some((&p, &s)) = bulbs.iter().find(|(_, &s)| s == 0 || s >= m) {
            return Err(LampError::BadBulbState(p, s));
        }
        Ok(LampElement {
            modulus: m,
            bulbs,
            cursor,
        })
    }

    /// Convenience constructor: the listed positions lit to state 1.
    pub fn with_lit(m: u32, positions: &[i64], cursor: i64) -> Result<Self, LampError> {
        let mut x = LampElement::identity(m)?;
        for &p in positions {
            x.bump(p, 1);
        }
        x.cursor = cursor;
        Ok(x)
    }

    /// `g_n = a_n a_{-n}`: bulbs at `n` and `-n` lit, cursor at the origin.
    pub fn g(m: u32, n: i64) -> Result<Self, LampError> {
        LampElement::with_lit(m, &[n, -n], 0)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn cursor(&self) -> i64 {
        self.cursor
    }

    pub fn bulbs(&self) -> &BTreeMap<i64, u32> {
        &self.bulbs
    }

    pub fn state(&self, pos: i64) -> u32 {
        self.bulbs.get(&pos).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.bulbs.is_empty() && self.cursor == 0
    }

    fn bump(&mut self, pos: i64, delta: i64) {
        let m = i64::from(self.modulus);
        let s = (i64::from(self.state(pos)) + delta).rem_euclid(m) as u32;
        if s == 0 {
            self.bulbs.remove(&pos);
        } else {
            self.bulbs.insert(pos, s);
        }
    }

    /// Right-multiplies by one generator letter.
    pub fn apply(&mut self, letter: Letter) {
        match letter {
            Letter::A => self.bump(self.cursor, 1),
            Letter::AInv => self.bump(self.cursor, -1),
            Letter::T => self.cursor += 1,
            Letter::TInv => self.cursor -= 1,
            Letter::S => {
                self.cursor += 1;
                self.bump(self.cursor, 1);
            }
            Letter::SInv => {
                self.bump(self.cursor, -1);
                self.cursor -= 1;
            }
        }
    }

    pub fn applied(&self, letter: Letter) -> LampElement {
        let mut y = self.clone();
        y.apply(letter);
        y
    }

    pub fn multiply(&self, other: &LampElement) -> Result<LampElement, LampError> {
        if self.modulus != other.modulus {
            return Err(LampError::ModulusMismatch(self.modulus, other.modulus));
        }
        let mut out = self.clone();
        for (&p, &s) in &other.bulbs {
            out.bump(self.cursor + p, i64::from(s));
        }
        out.cursor = self.cursor + other.cursor;
        Ok(out)
    }

    pub fn inverse(&self) -> LampElement {
        let m = self.modulus;
        let bulbs = self
            .bulbs
            .iter()
            .map(|(&p, &s)| (p - self.cursor, m - s))
            .collect();
        LampElement {
            modulus: m,
            bulbs,
            cursor: -self.cursor,
        }
    }

    /// Cheapest number of `a^{±1}` letters that set a bulb to its state.
    fn bulb_cost(&self) -> u64 {
        let m = self.modulus;
        self.bulbs.values().map(|&s| u64::from(s.min(m - s))).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("element serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Evaluates a word in `L_m`.
pub fn evaluate(word: &GroupWord, m: u32) -> Result<LampElement, LampError> {
    let mut x = LampElement::identity(m)?;
    for &l in word.letters() {
        x.apply(l);
    }
    Ok(x)
}

/// Which side of the origin the normal form lights first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    RightFirst,
    LeftFirst,
}

/// How the origin bulb is grouped: with the nonnegative positions (wreath)
/// or with the nonpositive ones (automaton).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideConvention {
    Wreath,
    Automaton,
}

/// `rf(w)` / `lf(w)` as lists of conjugates `a_k^e = t^k a^e t^-k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LampNormalForm {
    pub modulus: u32,
    /// `(position, state)` with positions ascending.
    pub positives: Vec<(i64, u32)>,
    /// `(position, state)` with positions descending (moving away from the origin).
    pub negatives: Vec<(i64, u32)>,
    pub r: i64,
    pub side: Side,
    pub convention: SideConvention,
}

pub fn normal_form(x: &LampElement, side: Side, convention: SideConvention) -> LampNormalForm {
    let on_positive_side = |p: i64| match convention {
        SideConvention::Wreath => p >= 0,
        SideConvention::Automaton => p > 0,
    };
    let positives = x
        .bulbs
        .iter()
        .filter(|(&p, _)| on_positive_side(p))
        .map(|(&p, &s)| (p, s))
        .collect();
    let negatives = x
        .bulbs
        .iter()
        .rev()
        .filter(|(&p, _)| !on_positive_side(p))
        .map(|(&p, &s)| (p, s))
        .collect();
    LampNormalForm {
        modulus: x.modulus,
        positives,
        negatives,
        r: x.cursor,
        side,
        convention,
    }
}

impl LampNormalForm {
    /// The product of conjugates in the form's order, written over `{a, t}`.
    pub fn to_word(&self) -> GroupWord {
        let (first, second) = match self.side {
            Side::RightFirst => (&self.positives, &self.negatives),
            Side::LeftFirst => (&self.negatives, &self.positives),
        };
        let mut w = GroupWord::empty(GenAlphabet::Wreath);
        for &(p, s) in first.iter().chain(second.iter()) {
            push_moves(&mut w, p);
            for _ in 0..s {
                w.push(Letter::A);
            }
            push_moves(&mut w, -p);
        }
        push_moves(&mut w, self.r);
        w
    }

    pub fn evaluate(&self) -> LampElement {
        evaluate(&self.to_word(), self.modulus).expect("modulus validated at construction")
    }
}

fn push_moves(w: &mut GroupWord, delta: i64) {
    let l = if delta >= 0 { Letter::T } else { Letter::TInv };
    for _ in 0..delta.unsigned_abs() {
        w.push(l);
    }
}

/// Word length over `{a, t}` for any `m`.
///
/// With `i` the rightmost lit position `>= 0` (or 0) and `j` the distance of
/// the leftmost lit negative position (or 0), the cursor travel is
/// `min(2j + i + |r - i|, 2i + j + |r + j|)`; each bulb adds the cheaper of
/// `a^s` and `a^-(m-s)`.
pub fn d_length(x: &LampElement) -> u64 {
    let i = x.bulbs.keys().copied().filter(|&p| p >= 0).max().unwrap_or(0);
    let j = x
        .bulbs
        .keys()
        .copied()
        .filter(|&p| p < 0)
        .map(|p| -p)
        .max()
        .unwrap_or(0);
    let r = x.cursor;
    let travel = (2 * j + i + (r - i).abs()).min(2 * i + j + (r + j).abs());
    x.bulb_cost() + travel as u64
}

/// Word length of an `L_2` element over `{t, ta}`.
pub fn dprime_length(x: &LampElement) -> Result<u64, LampError> {
    if x.modulus != 2 {
        return Err(LampError::UnsupportedModulus {
            alphabet: GenAlphabet::Automaton,
            m: x.modulus,
        });
    }
    let i = x.bulbs.keys().copied().filter(|&p| p > 0).max().unwrap_or(0);
    let r = x.cursor;
    let left = x.bulbs.keys().copied().filter(|&p| p <= 0).map(|p| -p).max();
    let len = match left {
        None => i + (r - i).abs(),
        Some(j) => {
            let j1 = j + 1;
            (2 * j1 + i + (r - i).abs()).min(2 * i + j1 + (r + j1).abs())
        }
    };
    Ok(len as u64)
}

/// Word length under the given generating set.
pub fn word_length(x: &LampElement, alphabet: GenAlphabet) -> Result<u64, LampError> {
    match alphabet {
        GenAlphabet::Wreath => Ok(d_length(x)),
        GenAlphabet::Automaton => dprime_length(x),
    }
}

/// Letters that set a bulb to `state`, using `a^k` with `k` in `-h..=h`
/// (and `+h` rather than `-h` when `m` is even).
pub fn bulb_letters(state: u32, m: u32) -> Vec<Letter> {
    if 2 * state <= m {
        vec![Letter::A; state as usize]
    } else {
        vec![Letter::AInv; (m - state) as usize]
    }
}

/// The unique representative chosen by the unique-geodesic machines.
///
/// Wreath: bulbs are lit in decreasing position order when the cursor ends
/// left of the origin and in increasing order otherwise. Automaton (`m = 2`):
/// sweep right to the rightmost lit bulb first when the cursor ends at or
/// left of the origin, left first otherwise; bulbs are toggled by `(ta)^-1`
/// on the leftward sweep or by `ta` on the rightward sweep.
pub fn canonical_geodesic(x: &LampElement, alphabet: GenAlphabet) -> Result<GroupWord, LampError> {
    match alphabet {
        GenAlphabet::Wreath => Ok(canonical_wreath(x)),
        GenAlphabet::Automaton => canonical_automaton(x),
    }
}

fn canonical_wreath(x: &LampElement) -> GroupWord {
    let mut order: Vec<(i64, u32)> = x.bulbs.iter().map(|(&p, &s)| (p, s)).collect();
    if x.cursor < 0 {
        order.reverse();
    }
    let mut w = GroupWord::empty(GenAlphabet::Wreath);
    let mut at = 0;
    for (p, s) in order {
        push_moves(&mut w, p - at);
        for l in bulb_letters(s, x.modulus) {
            w.push(l);
        }
        at = p;
    }
    push_moves(&mut w, x.cursor - at);
    w
}

fn canonical_automaton(x: &LampElement) -> Result<GroupWord, LampError> {
    if x.modulus != 2 {
        return Err(LampError::UnsupportedModulus {
            alphabet: GenAlphabet::Automaton,
            m: x.modulus,
        });
    }
    let lit = |p: i64| x.state(p) != 0;
    let hi = x.bulbs.keys().copied().filter(|&p| p > 0).max().unwrap_or(0);
    let lo = x
        .bulbs
        .keys()
        .copied()
        .filter(|&p| p <= 0)
        .min()
        .map_or(0, |p| p - 1);
    let r = x.cursor;
    let mut w = GroupWord::empty(GenAlphabet::Automaton);
    let push_n = |w: &mut GroupWord, l: Letter, n: i64| {
        for _ in 0..n {
            w.push(l);
        }
    };
    if r <= 0 {
        push_n(&mut w, Letter::T, hi);
        for p in (lo + 1..=hi).rev() {
            w.push(if lit(p) { Letter::SInv } else { Letter::TInv });
        }
        if r < lo {
            push_n(&mut w, Letter::TInv, lo - r);
        } else {
            push_n(&mut w, Letter::T, r - lo);
        }
    } else {
        push_n(&mut w, Letter::TInv, -lo);
        for p in lo + 1..=hi {
            w.push(if lit(p) { Letter::S } else { Letter::T });
        }
        if r > hi {
            push_n(&mut w, Letter::T, r - hi);
        } else {
            push_n(&mut w, Letter::TInv, hi - r);
        }
    }
    Ok(w)
}

/// Whether `word` has the length of the element it spells.
pub fn is_geodesic(word: &GroupWord, m: u32) -> Result<bool, LampError> {
    let x = evaluate(word, m)?;
    Ok(word_length(&x, word.alphabet())? == word.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(alphabet: GenAlphabet, s: &str) -> GroupWord {
        GroupWord::parse(alphabet, s).unwrap()
    }

    fn scattered() -> LampElement {
        LampElement::with_lit(2, &[4, 5, 6, -1, -6], -2).unwrap()
    }

    /// Moves the cursor and lights bulbs one letter at a time, independently
    /// of `LampElement::apply`.
    fn interpret(word: &str, m: i64) -> (BTreeMap<i64, i64>, i64) {
        let mut bulbs: BTreeMap<i64, i64> = BTreeMap::new();
        let mut c = 0i64;
        for ch in word.chars() {
            match ch {
                't' => c += 1,
                'T' => c -= 1,
                'a' => *bulbs.entry(c).or_insert(0) += 1,
                'A' => *bulbs.entry(c).or_insert(0) -= 1,
                's' => {
                    c += 1;
                    *bulbs.entry(c).or_insert(0) += 1;
                }
                'S' => {
                    *bulbs.entry(c).or_insert(0) -= 1;
                    c -= 1;
                }
                _ => unreachable!(),
            }
        }
        bulbs = bulbs
            .into_iter()
            .map(|(p, s)| (p, s.rem_euclid(m)))
            .filter(|&(_, s)| s != 0)
            .collect();
        (bulbs, c)
    }

    #[test]
    fn scattered_word_evaluates_to_configuration() {
        let nf = normal_form(&scattered(), Side::RightFirst, SideConvention::Wreath);
        let word = nf.to_word();
        let x = evaluate(&word, 2).unwrap();
        assert_eq!(x, scattered());
        assert_eq!(x.bulbs().keys().copied().collect::<Vec<_>>(), vec![-6, -1, 4, 5, 6]);
        assert_eq!(x.cursor(), -2);
    }

    #[test]
    fn empty_word_is_identity() {
        let x = evaluate(&GroupWord::empty(GenAlphabet::Wreath), 2).unwrap();
        assert!(x.is_identity());
    }

    #[test]
    fn hand_simulation_matches() {
        let x = evaluate(&w(GenAlphabet::Wreath, "taTa"), 2).unwrap();
        assert_eq!(x, LampElement::with_lit(2, &[0, 1], 0).unwrap());
        let (bulbs, c) = interpret("taTa", 2);
        assert_eq!(bulbs.len(), 2);
        assert_eq!(c, 0);
    }

    #[test]
    fn invalid_modulus() {
        assert_eq!(
            evaluate(&GroupWord::empty(GenAlphabet::Wreath), 1),
            Err(LampError::InvalidModulus(1))
        );
        assert!(LampElement::identity(0).is_err());
    }

    #[test]
    fn a1_times_a_minus1_is_g1() {
        let a1 = LampElement::with_lit(2, &[1], 0).unwrap();
        let am1 = LampElement::with_lit(2, &[-1], 0).unwrap();
        assert_eq!(a1.multiply(&am1).unwrap(), LampElement::g(2, 1).unwrap());
    }

    #[test]
    fn modulus_mismatch() {
        let x = LampElement::identity(2).unwrap();
        let y = LampElement::identity(3).unwrap();
        assert_eq!(x.multiply(&y), Err(LampError::ModulusMismatch(2, 3)));
    }

    #[test]
    fn inverse_of_a1() {
        for m in 2..6 {
            let a1 = LampElement::with_lit(m, &[1], 0).unwrap();
            let inv = a1.inverse();
            assert_eq!(inv.state(1), m - 1);
            assert_eq!(inv.cursor(), 0);
            assert!(a1.multiply(&inv).unwrap().is_identity());
        }
        assert!(LampElement::identity(3).unwrap().inverse().is_identity());
    }

    #[test]
    fn normal_forms_of_examples() {
        let g = LampElement::g(2, 3).unwrap();
        let nf = normal_form(&g, Side::RightFirst, SideConvention::Wreath);
        assert_eq!(nf.positives, vec![(3, 1)]);
        assert_eq!(nf.negatives, vec![(-3, 1)]);
        assert_eq!(nf.r, 0);

        let nf = normal_form(&scattered(), Side::LeftFirst, SideConvention::Wreath);
        assert_eq!(nf.positives, vec![(4, 1), (5, 1), (6, 1)]);
        assert_eq!(nf.negatives, vec![(-1, 1), (-6, 1)]);
        assert_eq!(nf.r, -2);
        assert_eq!(nf.evaluate(), scattered());

        let id = LampElement::identity(2).unwrap();
        let nf = normal_form(&id, Side::RightFirst, SideConvention::Wreath);
        assert!(nf.positives.is_empty() && nf.negatives.is_empty() && nf.r == 0);
    }

    #[test]
    fn automaton_convention_groups_origin_left() {
        let x = LampElement::with_lit(2, &[0, 2], 1).unwrap();
        let nf = normal_form(&x, Side::RightFirst, SideConvention::Automaton);
        assert_eq!(nf.positives, vec![(2, 1)]);
        assert_eq!(nf.negatives, vec![(0, 1)]);
        let nf = normal_form(&x, Side::RightFirst, SideConvention::Wreath);
        assert_eq!(nf.positives, vec![(0, 1), (2, 1)]);
        assert!(nf.negatives.is_empty());
    }

    #[test]
    fn d_length_examples() {
        assert_eq!(d_length(&scattered()), 27);
        assert_eq!(d_length(&LampElement::identity(2).unwrap()), 0);
        for n in 1..=20 {
            assert_eq!(d_length(&LampElement::g(2, n).unwrap()), 4 * n as u64 + 2);
        }
        // a at the origin plus cursor moves: 2 + min(0 + 1 + 1, 2 + 0) = 4
        assert_eq!(d_length(&LampElement::with_lit(2, &[0, 1], 0).unwrap()), 4);
    }

    #[test]
    fn d_length_uses_cheaper_exponent() {
        let mut x = LampElement::identity(5).unwrap();
        x.apply(Letter::AInv);
        assert_eq!(x.state(0), 4);
        assert_eq!(d_length(&x), 1);
    }

    #[test]
    fn dprime_examples() {
        let a = LampElement::with_lit(2, &[0], 0).unwrap();
        assert_eq!(dprime_length(&a).unwrap(), 2);
        for n in 1..=20 {
            assert_eq!(dprime_length(&LampElement::g(2, n).unwrap()).unwrap(), 4 * n as u64 + 2);
        }
        for r in -5..=5 {
            let x = LampElement::with_lit(2, &[], r).unwrap();
            assert_eq!(dprime_length(&x).unwrap(), r.unsigned_abs());
        }
        let x = LampElement::identity(3).unwrap();
        assert!(matches!(dprime_length(&x), Err(LampError::UnsupportedModulus { .. })));
    }

    #[test]
    fn canonical_examples() {
        let g1 = LampElement::g(2, 1).unwrap();
        let word = canonical_geodesic(&g1, GenAlphabet::Wreath).unwrap();
        assert_eq!(word.to_string(), "TattaT");
        assert_eq!(evaluate(&word, 2).unwrap(), g1);
        assert_eq!(word.len(), 6);

        let word = canonical_geodesic(&g1, GenAlphabet::Automaton).unwrap();
        assert_eq!(word.to_string(), "tSTStt");
        assert_eq!(word.len(), 6);

        let x = LampElement::with_lit(2, &[1, -1], -1).unwrap();
        let word = canonical_geodesic(&x, GenAlphabet::Automaton).unwrap();
        assert_eq!(word.to_string(), "tSTSt");
        assert_eq!(evaluate(&word, 2).unwrap(), x);
        assert_eq!(word.len() as u64, dprime_length(&x).unwrap());

        let id = LampElement::identity(2).unwrap();
        assert!(canonical_geodesic(&id, GenAlphabet::Wreath).unwrap().is_empty());
        assert!(canonical_geodesic(&id, GenAlphabet::Automaton).unwrap().is_empty());
    }

    #[test]
    fn canonical_uses_signed_exponents() {
        let mut x = LampElement::identity(5).unwrap();
        x.apply(Letter::T);
        for _ in 0..3 {
            x.apply(Letter::A);
        }
        let word = canonical_geodesic(&x, GenAlphabet::Wreath).unwrap();
        assert_eq!(word.to_string(), "tAA");
        assert_eq!(evaluate(&word, 5).unwrap(), x);

        // m even: state h is written a^h, never a^-h
        let mut y = LampElement::identity(4).unwrap();
        y.apply(Letter::A);
        y.apply(Letter::A);
        assert_eq!(canonical_geodesic(&y, GenAlphabet::Wreath).unwrap().to_string(), "aa");
    }

    #[test]
    fn geodesic_checks() {
        assert!(!is_geodesic(&w(GenAlphabet::Wreath, "tT"), 2).unwrap());
        assert!(is_geodesic(&w(GenAlphabet::Wreath, "taTTat"), 2).unwrap());
        assert!(is_geodesic(&w(GenAlphabet::Wreath, "taTa"), 2).unwrap());
        assert!(is_geodesic(&w(GenAlphabet::Automaton, "StSt"), 2).is_ok());
        assert!(!is_geodesic(&w(GenAlphabet::Automaton, "sS"), 2).unwrap());
    }

    #[test]
    fn parse_rejects_foreign_letters() {
        assert!(matches!(
            GroupWord::parse(GenAlphabet::Wreath, "tas"),
            Err(LampError::BadLetter { letter: 's', offset: 2, .. })
        ));
        assert!(GroupWord::parse(GenAlphabet::Automaton, "a").is_err());
        assert_eq!(w(GenAlphabet::Wreath, "t a T").to_string(), "taT");
    }

    #[test]
    fn element_json_format() {
        let json = scattered().to_json();
        assert_eq!(json, r#"{"m":2,"bulbs":{"-6":1,"-1":1,"4":1,"5":1,"6":1},"cursor":-2}"#);
        assert_eq!(LampElement::from_json(&json).unwrap(), scattered());
        assert!(LampElement::from_json(r#"{"m":2,"bulbs":{"1":0},"cursor":0}"#).is_err());
        assert!(LampElement::from_json(r#"{"m":1,"bulbs":{},"cursor":0}"#).is_err());
    }

    #[test]
    fn automaton_letters_match_interpreter() {
        for text in ["sStS", "tsTTS", "SSSttt", "s"] {
            let x = evaluate(&w(GenAlphabet::Automaton, text), 2).unwrap();
            let (bulbs, c) = interpret(text, 2);
            assert_eq!(x.cursor(), c);
            let got: BTreeMap<i64, i64> = x.bulbs().iter().map(|(&p, &s)| (p, i64::from(s))).collect();
            assert_eq!(got, bulbs, "{text}");
        }
    }
}
