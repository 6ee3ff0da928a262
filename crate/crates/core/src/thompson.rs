//! Thompson's group `F`: words over `x0, x1`, normal forms in the infinite
//! presentation `x_i^-1 x_j x_i = x_{j+1}` (`i < j`), the seesaw family and
//! a capped bidirectional distance search.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FError {
    #[error("unrecognised token '{token}' at offset {offset}; expected x0, X0, x1 or X1")]
    BadToken { token: String, offset: usize },
    #[error("generator index must be at least {min}, got {got}")]
    IndexTooSmall { min: u32, got: u32 },
}

/// One of `x0, x0^-1, x1, x1^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FLetter {
    pub index: u8,
    pub inverse: bool,
}

impl FLetter {
    pub const ALL: [FLetter; 4] = [
        FLetter { index: 0, inverse: false },
        FLetter { index: 0, inverse: true },
        FLetter { index: 1, inverse: false },
        FLetter { index: 1, inverse: true },
    ];

    pub fn x0() -> Self {
        FLetter { index: 0, inverse: false }
    }

    pub fn x1() -> Self {
        FLetter { index: 1, inverse: false }
    }

    pub fn inv(self) -> Self {
        FLetter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for FLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.inverse { 'X' } else { 'x' }, self.index)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FWord {
    pub letters: Vec<FLetter>,
}

impl FWord {
    /// Reads tokens `x0 X0 x1 X1`; whitespace between tokens is optional.
    pub fn parse(text: &str) -> Result<FWord, FError> {
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        for pair in chars.chunks(2) {
            let offset = pair[0].0;
            let token: String = pair.iter().map(|(_, c)| c).collect();
            let letter = match token.as_str() {
                "x0" => FLetter { index: 0, inverse: false },
                "X0" => FLetter { index: 0, inverse: true },
                "x1" => FLetter { index: 1, inverse: false },
                "X1" => FLetter { index: 1, inverse: true },
                _ => return Err(FError::BadToken { token, offset }),
            };
            letters.push(letter);
        }
        Ok(FWord { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FWord {
        FWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &FWord) -> FWord {
        let mut letters = self.letters.clone();
        letters.extend(&other.letters);
        FWord { letters }
    }

    pub fn free_reduce(&self) -> FWord {
        let mut out: Vec<FLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FWord { letters: out }
    }

    pub fn power(letter: FLetter, n: usize) -> FWord {
        FWord {
            letters: vec![letter; n],
        }
    }
}

impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `x_{p_1} ... x_{p_k} x_{n_l}^-1 ... x_{n_1}^-1` with both index lists
/// nondecreasing, and whenever `i` occurs in both lists `i + 1` occurs in
/// one of them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FNormalForm {
    pub positive: Vec<u32>,
    pub negative: Vec<u32>,
}

impl FNormalForm {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    /// The generator `x_n`.
    pub fn generator(n: u32) -> Self {
        FNormalForm {
            positive: vec![n],
            negative: Vec::new(),
        }
    }

    fn insert_sorted(list: &mut Vec<u32>, k: u32) {
        let at = list.partition_point(|&p| p <= k);
        list.insert(at, k);
    }

    /// Right multiplication by `x_k`.
    fn push_gen(&mut self, mut k: u32) {
        let mut i = 0;
        while i < self.negative.len() {
            let n = self.negative[i];
            if n < k {
                k += 1;
                i += 1;
            } else if n == k {
                self.negative.remove(i);
                self.reduce();
                return;
            } else {
                for m in &mut self.negative[i..] {
                    *m += 1;
                }
                break;
            }
        }
        for p in &mut self.positive {
            if *p > k {
                *p += 1;
            }
        }
        Self::insert_sorted(&mut self.positive, k);
        self.reduce();
    }

    /// Right multiplication by `x_k^-1`.
    fn push_inv(&mut self, mut k: u32) {
        let mut at = 0;
        while at < self.negative.len() && self.negative[at] < k {
            k += 1;
            at += 1;
        }
        self.negative.insert(at, k);
        self.reduce();
    }

    /// Cancels pairs `x_i ... x_i^-1` that have no `x_{i+1}^{±1}` between them.
    fn reduce(&mut self) {
        loop {
            let bad = self.positive.iter().copied().find(|i| {
                self.negative.contains(i) && !self.positive.contains(&(i + 1)) && !self.negative.contains(&(i + 1))
            });
            let Some(i) = bad else { return };
            let pi = self.positive.iter().position(|&p| p == i).expect("present");
            let ni = self.negative.iter().position(|&n| n == i).expect("present");
            self.positive.remove(pi);
            self.negative.remove(ni);
            for x in self.positive.iter_mut().chain(self.negative.iter_mut()) {
                if *x > i {
                    *x -= 1;
                }
            }
        }
    }

    pub fn apply(&mut self, letter: FLetter) {
        if letter.inverse {
            self.push_inv(u32::from(letter.index));
        } else {
            self.push_gen(u32::from(letter.index));
        }
    }

    pub fn applied(&self, letter: FLetter) -> Self {
        let mut y = self.clone();
        y.apply(letter);
        y
    }

    /// Spelling over `x0, x1` through `x_n = x0^-(n-1) x1 x0^(n-1)`.
    pub fn to_word(&self) -> FWord {
        let mut w = FWord::default();
        for &p in &self.positive {
            w = w.concat(&x_index_word(p));
        }
        for &n in self.negative.iter().rev() {
            w = w.concat(&x_index_word(n).inverse());
        }
        w.free_reduce()
    }

    pub fn multiply(&self, other: &FNormalForm) -> FNormalForm {
        let mut out = self.clone();
        for &l in &other.to_word().letters {
            out.apply(l);
        }
        out
    }
}

impl fmt::Display for FNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = self.positive.iter().map(|p| format!("x{p}")).collect();
        parts.extend(self.negative.iter().rev().map(|n| format!("x{n}^-1")));
        f.write_str(&parts.join(" "))
    }
}

pub fn rewrite_to_nf(w: &FWord) -> FNormalForm {
    let mut nf = FNormalForm::identity();
    for &l in &w.letters {
        nf.apply(l);
    }
    nf
}

fn x_index_word(n: u32) -> FWord {
    match n {
        0 => FWord::power(FLetter::x0(), 1),
        _ => {
            let k = (n - 1) as usize;
            FWord::power(FLetter::x0().inv(), k)
                .concat(&FWord::power(FLetter::x1(), 1))
                .concat(&FWord::power(FLetter::x0(), k))
        }
    }
}

/// `x_n` for `n >= 1` as the word `x0^-(n-1) x1 x0^(n-1)`.
pub fn x_n_expansion(n: u32) -> Result<FWord, FError> {
    if n < 1 {
        return Err(FError::IndexTooSmall { min: 1, got: n });
    }
    Ok(x_index_word(n))
}

/// `[x0 x1^-1, x0^-1 x1 x0]` and `[x0 x1^-1, x0^-2 x1 x0^2]`.
pub fn relators() -> [FWord; 2] {
    let a = FWord::parse("x0 X1").expect("static word");
    let b1 = FWord::parse("X0 x1 x0").expect("static word");
    let b2 = FWord::parse("X0 X0 x1 x0 x0").expect("static word");
    let comm = |a: &FWord, b: &FWord| a.inverse().concat(&b.inverse()).concat(a).concat(b);
    [comm(&a, &b1), comm(&a, &b2)]
}

/// Indices of the family member: `x0^k x1 x_{3k+3}` followed by inverses of
/// `x_{3k+2}, x_{3k}, ..., x_{k+2}` and `x0^-(k+1)`.
pub fn seesaw_indices(k: u32) -> (u32, Vec<u32>) {
    let tail = (0..=k).map(|i| 3 * k + 2 - 2 * i).collect();
    (3 * k + 3, tail)
}

/// The seesaw family member of swing `k`, freely reduced over `x0, x1`.
pub fn seesaw_element(k: u32) -> Result<FWord, FError> {
    if k < 1 {
        return Err(FError::IndexTooSmall { min: 1, got: k });
    }
    let (top, tail) = seesaw_indices(k);
    let mut w = FWord::power(FLetter::x0(), k as usize)
        .concat(&FWord::power(FLetter::x1(), 1))
        .concat(&x_index_word(top));
    for n in tail {
        w = w.concat(&x_index_word(n).inverse());
    }
    w = w.concat(&FWord::power(FLetter::x0().inv(), k as usize + 1));
    Ok(w.free_reduce())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "value")]
pub enum FDistance {
    Exact(u32),
    /// Longer than the cap.
    CapExceeded,
    /// The node budget ran out before the cap was reached.
    BudgetExceeded,
}

pub const DEFAULT_NODE_BUDGET: usize = 4_000_000;

/// Word length over `x0^{±1}, x1^{±1}` if at most `cap`, by meeting
/// breadth-first searches from the identity and from the target.
pub fn distance_bidirectional(target: &FWord, cap: u32, budget: usize) -> FDistance {
    let goal = rewrite_to_nf(target);
    if goal.is_identity() {
        return FDistance::Exact(0);
    }
    if cap == 0 {
        return FDistance::CapExceeded;
    }
    let start = FNormalForm::identity();
    let mut seen = [HashMap::from([(start.clone(), 0u32)]), HashMap::from([(goal.clone(), 0u32)])];
    let mut frontier = [vec![start], vec![goal]];
    let mut depth = [0u32; 2];
    while depth[0] + depth[1] < cap {
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let other = 1 - side;
        let expanded: Vec<Vec<FNormalForm>> = frontier[side]
            .par_iter()
            .map(|y| FLetter::ALL.iter().map(|&l| y.applied(l)).collect())
            .collect();
        let mut next = Vec::new();
        let mut best: Option<u32> = None;
        for z in expanded.into_iter().flatten() {
            if seen[side].contains_key(&z) {
                continue;
            }
            if let Some(&d) = seen[other].get(&z) {
                let total = depth[side] + 1 + d;
                best = Some(best.map_or(total, |b| b.min(total)));
            }
            seen[side].insert(z.clone(), depth[side] + 1);
            next.push(z);
        }
        if let Some(b) = best {
            return FDistance::Exact(b);
        }
        if seen[0].len() + seen[1].len() > budget {
            return FDistance::BudgetExceeded;
        }
        depth[side] += 1;
        frontier[side] = next;
    }
    FDistance::CapExceeded
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseStatus {
    Verified,
    Refuted,
    CapExceeded,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClauseReport {
    pub clause: &'static str,
    pub status: ClauseStatus,
    /// Elements measured for this clause, as `(suffix, distance)`.
    pub measurements: Vec<(String, FDistance)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeesawReport {
    pub k: u32,
    pub cap: u32,
    pub word: String,
    pub length: FDistance,
    pub clauses: Vec<ClauseReport>,
}

impl SeesawReport {
    pub fn verified(&self) -> bool {
        self.clauses.iter().all(|c| c.status == ClauseStatus::Verified)
    }

    pub fn cap_exceeded(&self) -> bool {
        self.clauses.iter().any(|c| c.status == ClauseStatus::CapExceeded)
    }
}

/// `a = b - 1` for exact values; anything past the cap is unknown.
fn drop_by_one(a: FDistance, b: FDistance) -> Option<bool> {
    match (a, b) {
        (FDistance::Exact(a), FDistance::Exact(b)) => Some(a + 1 == b),
        _ => None,
    }
}

/// `a >= b`; a value past the cap is at least any exact value.
fn not_shorter(a: FDistance, b: FDistance) -> Option<bool> {
    match (a, b) {
        (FDistance::Exact(a), FDistance::Exact(b)) => Some(a >= b),
        (FDistance::CapExceeded, FDistance::Exact(_)) => Some(true),
        _ => None,
    }
}

struct Measurer {
    base: FWord,
    cap: u32,
    budget: usize,
    cache: HashMap<Vec<FLetter>, FDistance>,
}

impl Measurer {
    fn get(&mut self, suffix: &[FLetter]) -> FDistance {
        if let Some(&d) = self.cache.get(suffix) {
            return d;
        }
        let w = self.base.concat(&FWord {
            letters: suffix.to_vec(),
        });
        let d = distance_bidirectional(&w, self.cap, self.budget);
        self.cache.insert(suffix.to_vec(), d);
        d
    }
}

fn clause(name: &'static str, checks: Vec<Option<bool>>, measurements: Vec<(String, FDistance)>) -> ClauseReport {
    let status = if checks.contains(&Some(false)) {
        ClauseStatus::Refuted
    } else if checks.contains(&None) {
        ClauseStatus::CapExceeded
    } else {
        ClauseStatus::Verified
    };
    ClauseReport {
        clause: name,
        status,
        measurements,
    }
}

fn suffix_name(s: &[FLetter]) -> String {
    if s.is_empty() {
        "w".into()
    } else {
        format!("w {}", FWord { letters: s.to_vec() })
    }
}

/// Checks the three seesaw clauses for `seesaw_element(k)` and generator
/// `x0` with distances capped at `cap`.
pub fn verify_seesaw(k: u32, cap: u32, budget: usize) -> Result<SeesawReport, FError> {
    let word = seesaw_element(k)?;
    let g = FLetter::x0();
    let h = FLetter::x1();
    let mut ms = Measurer {
        base: word.clone(),
        cap,
        budget,
        cache: HashMap::new(),
    };
    let length = ms.get(&[]);

    let mut first = Vec::new();
    let mut first_m = vec![("w".to_string(), length)];
    for s in [g, g.inv()] {
        let d = ms.get(&[s]);
        first_m.push((suffix_name(&[s]), d));
        first.push(drop_by_one(d, length));
    }
    for s in [h, h.inv()] {
        let d = ms.get(&[s]);
        first_m.push((suffix_name(&[s]), d));
        first.push(not_shorter(d, length));
    }
    let mut clauses = vec![clause("both directions shorten, others do not", first, first_m)];

    for (name, dir) in [("forward run", g), ("backward run", g.inv())] {
        let mut checks = Vec::new();
        let mut measured = Vec::new();
        for l in 1..=k as usize {
            let prev: Vec<FLetter> = vec![dir; l - 1];
            let cur: Vec<FLetter> = vec![dir; l];
            let (dp, dc) = (ms.get(&prev), ms.get(&cur));
            measured.push((suffix_name(&cur), dc));
            checks.push(drop_by_one(dc, dp));
            if l < k as usize {
                for side in [h, h.inv()] {
                    let mut s = cur.clone();
                    s.push(side);
                    let ds = ms.get(&s);
                    measured.push((suffix_name(&s), ds));
                    checks.push(not_shorter(ds, dc));
                }
            }
        }
        clauses.push(clause(name, checks, measured));
    }
    Ok(SeesawReport {
        k,
        cap,
        word: word.to_string(),
        length,
        clauses,
    })
}
