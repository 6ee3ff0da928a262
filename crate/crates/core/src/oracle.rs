//! Brute-force ground truth for lamplighter word metrics: breadth-first balls
//! in the Cayley graph, geodesic enumeration, bounded cone types and a
//! seesaw scan.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lamp::{word_length, GenAlphabet, GroupWord, LampElement, LampError, Letter};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Lamp(#[from] LampError),
    #[error("element at distance {distance} exceeds the enumeration cap {cap}")]
    CapExceeded { distance: u64, cap: u64 },
    #[error("ball of radius {radius} is too small; need radius {needed}")]
    InsufficientBall { radius: u32, needed: u64 },
}

/// Every element within `radius` of the identity, with its exact distance.
#[derive(Debug, Clone)]
pub struct Ball {
    modulus: u32,
    alphabet: GenAlphabet,
    radius: u32,
    dist: HashMap<LampElement, u32>,
    spheres: Vec<Vec<LampElement>>,
}

impl Ball {
    pub fn new(m: u32, alphabet: GenAlphabet, radius: u32) -> Result<Ball, OracleError> {
        let id = LampElement::identity(m)?;
        let gens = alphabet.generators(m);
        let mut dist = HashMap::new();
        dist.insert(id.clone(), 0);
        let mut spheres = vec![vec![id]];
        for d in 1..=radius {
            let frontier = &spheres[d as usize - 1];
            let candidates: Vec<Vec<LampElement>> = frontier
                .par_iter()
                .map(|x| gens.iter().map(|&g| x.applied(g)).collect())
                .collect();
            let mut next: Vec<LampElement> = Vec::new();
            for y in candidates.into_iter().flatten() {
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d);
                    next.push(y);
                }
            }
            next.sort();
            spheres.push(next);
        }
        Ok(Ball {
            modulus: m,
            alphabet,
            radius,
            dist,
            spheres,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn alphabet(&self) -> GenAlphabet {
        self.alphabet
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn distance(&self, x: &LampElement) -> Option<u32> {
        self.dist.get(x).copied()
    }

    /// Elements at exactly distance `d`, sorted.
    pub fn sphere(&self, d: u32) -> &[LampElement] {
        self.spheres.get(d as usize).map_or(&[], Vec::as_slice)
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }

    /// All elements in order of distance, then canonical key.
    pub fn elements(&self) -> impl Iterator<Item = (&LampElement, u32)> {
        self.spheres
            .iter()
            .enumerate()
            .flat_map(|(d, s)| s.iter().map(move |x| (x, d as u32)))
    }

    fn require(&self, x: &LampElement) -> Result<u32, OracleError> {
        self.distance(x).ok_or(OracleError::InsufficientBall {
            radius: self.radius,
            needed: u64::from(self.radius) + 1,
        })
    }
}

/// Summary used by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct BallStats {
    pub m: u32,
    pub alphabet: GenAlphabet,
    pub radius: u32,
    pub total: usize,
    pub sphere_sizes: Vec<usize>,
}

impl From<&Ball> for BallStats {
    fn from(b: &Ball) -> Self {
        BallStats {
            m: b.modulus,
            alphabet: b.alphabet,
            radius: b.radius,
            total: b.len(),
            sphere_sizes: b.sphere_sizes(),
        }
    }
}

/// Exact word length by bidirectional breadth-first search.
pub fn distance(x: &LampElement, alphabet: GenAlphabet) -> Result<u64, OracleError> {
    let m = x.modulus();
    let id = LampElement::identity(m)?;
    if *x == id {
        return Ok(0);
    }
    let gens = alphabet.generators(m);
    // Both searches step by right multiplication.
    let mut seen = [HashMap::from([(id.clone(), 0u64)]), HashMap::from([(x.clone(), 0u64)])];
    let mut frontier = [vec![id], vec![x.clone()]];
    let mut depth = [0u64; 2];
    loop {
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let other = 1 - side;
        let mut next = Vec::new();
        let mut best: Option<u64> = None;
        for y in &frontier[side] {
            for &g in &gens {
                let z = y.applied(g);
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
        }
        if let Some(b) = best {
            return Ok(b);
        }
        depth[side] += 1;
        frontier[side] = next;
    }
}

/// Every geodesic word for `x`, found by walking back through the layers of
/// a ball of radius `distance(x)`.
pub fn all_geodesics(x: &LampElement, alphabet: GenAlphabet, cap: u64) -> Result<BTreeSet<GroupWord>, OracleError> {
    let d = distance(x, alphabet)?;
    if d > cap {
        return Err(OracleError::CapExceeded { distance: d, cap });
    }
    let ball = Ball::new(x.modulus(), alphabet, d as u32)?;
    geodesics_in_ball(x, &ball)
}

/// Geodesics for an element of a precomputed ball.
pub fn geodesics_in_ball(x: &LampElement, ball: &Ball) -> Result<BTreeSet<GroupWord>, OracleError> {
    let d = ball.require(x)?;
    let gens = ball.alphabet.generators(ball.modulus);
    let mut out = BTreeSet::new();
    let mut suffix = Vec::new();
    walk_back(x, d, ball, &gens, &mut suffix, &mut out);
    Ok(out)
}

fn walk_back(
    y: &LampElement,
    d: u32,
    ball: &Ball,
    gens: &[Letter],
    suffix: &mut Vec<Letter>,
    out: &mut BTreeSet<GroupWord>,
) {
    if d == 0 {
        let letters: Vec<Letter> = suffix.iter().rev().copied().collect();
        out.insert(GroupWord::new(ball.alphabet, letters).expect("generators belong to the alphabet"));
        return;
    }
    for &g in gens {
        let prev = y.applied(g.inverse());
        if ball.distance(&prev) == Some(d - 1) {
            suffix.push(g);
            walk_back(&prev, d - 1, ball, gens, suffix, out);
            suffix.pop();
        }
    }
}

/// Element with bulb 0 lit, one lit bulb on each side and `k` lit bulbs that
/// every geodesic passes twice, cursor at the origin.
pub fn extreme_witness(k: u32) -> LampElement {
    let lit: Vec<i64> = (-1..=i64::from(k) + 1).collect();
    LampElement::with_lit(2, &lit, 0).expect("modulus 2 is valid")
}

/// Number of wreath geodesics of [`extreme_witness`]; `6 * 2^k`.
pub fn geodesic_count_extreme(k: u32) -> Result<usize, OracleError> {
    Ok(all_geodesics(&extreme_witness(k), GenAlphabet::Wreath, u64::MAX)?.len())
}

/// Word length provider for cone types and seesaw checks.
pub trait Metric {
    fn alphabet(&self) -> GenAlphabet;
    fn modulus(&self) -> u32;
    fn length(&self, x: &LampElement) -> Result<u64, OracleError>;
}

impl Metric for Ball {
    fn alphabet(&self) -> GenAlphabet {
        self.alphabet
    }
    fn modulus(&self) -> u32 {
        self.modulus
    }
    fn length(&self, x: &LampElement) -> Result<u64, OracleError> {
        self.require(x).map(u64::from)
    }
}

/// Word length from the closed-form formulas, usable at any radius.
#[derive(Debug, Clone, Copy)]
pub struct FormulaMetric {
    pub m: u32,
    pub alphabet: GenAlphabet,
}

impl Metric for FormulaMetric {
    fn alphabet(&self) -> GenAlphabet {
        self.alphabet
    }
    fn modulus(&self) -> u32 {
        self.m
    }
    fn length(&self, x: &LampElement) -> Result<u64, OracleError> {
        Ok(word_length(x, self.alphabet)?)
    }
}

/// Outbound extensions of `base` of length at most `depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeType {
    pub base: LampElement,
    pub depth: u32,
    pub extensions: BTreeSet<String>,
}

impl ConeType {
    /// Extensions of length at most `depth`.
    pub fn truncated(&self, depth: u32) -> BTreeSet<String> {
        self.extensions
            .iter()
            .filter(|w| w.chars().count() <= depth as usize)
            .cloned()
            .collect()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.extensions.contains(word)
    }
}

pub fn cone_type<M: Metric>(x: &LampElement, depth: u32, metric: &M) -> Result<ConeType, OracleError> {
    let gens = metric.alphabet().generators(metric.modulus());
    let mut extensions = BTreeSet::new();
    let mut stack = vec![(x.clone(), metric.length(x)?, String::new())];
    while let Some((y, len, word)) = stack.pop() {
        let n = word.chars().count() as u32;
        extensions.insert(word.clone());
        if n == depth {
            continue;
        }
        for &g in &gens {
            let z = y.applied(g);
            let lz = metric.length(&z)?;
            if lz == len + 1 {
                let mut w = word.clone();
                w.push(g.to_char());
                stack.push((z, lz, w));
            }
        }
    }
    Ok(ConeType {
        base: x.clone(),
        depth,
        extensions,
    })
}

/// Groups family members (by index) whose bounded cone types coincide.
/// Classes are listed in order of first appearance.
pub fn distinct_cone_types<M: Metric>(
    family: &[LampElement],
    depth: u32,
    metric: &M,
) -> Result<Vec<Vec<usize>>, OracleError> {
    let mut classes: Vec<(BTreeSet<String>, Vec<usize>)> = Vec::new();
    for (i, x) in family.iter().enumerate() {
        let cone = cone_type(x, depth, metric)?.extensions;
        match classes.iter_mut().find(|(c, _)| *c == cone) {
            Some((_, members)) => members.push(i),
            None => classes.push((cone, vec![i])),
        }
    }
    Ok(classes.into_iter().map(|(_, m)| m).collect())
}

/// `t^n a t^-2n a`, the prefix of `g_n` whose cone type separates `n`.
pub fn wreath_cone_witness(n: i64) -> LampElement {
    LampElement::with_lit(2, &[n, -n], -n).expect("modulus 2 is valid")
}

/// `g_n t^-k` for the automaton generators.
pub fn automaton_cone_witness(n: i64, k: i64) -> LampElement {
    LampElement::with_lit(2, &[n, -n], -k).expect("modulus 2 is valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Seesaw {
    pub element: LampElement,
    pub generator: Letter,
    pub swing: u32,
}

fn power(x: &LampElement, g: Letter, l: u32) -> LampElement {
    let mut y = x.clone();
    for _ in 0..l {
        y.apply(g);
    }
    y
}

/// Whether `w` satisfies every seesaw clause for generator `g` at swing `k`.
pub fn is_seesaw<M: Metric>(w: &LampElement, g: Letter, k: u32, metric: &M) -> Result<bool, OracleError> {
    if k == 0 {
        return Ok(false);
    }
    let alphabet = metric.alphabet();
    let others: Vec<Letter> = alphabet
        .positive_generators()
        .into_iter()
        .filter(|&h| h != g)
        .flat_map(|h| [h, h.inverse()])
        .collect();
    let len_w = metric.length(w)?;
    for h in &others {
        if metric.length(&w.applied(*h))? < len_w {
            return Ok(false);
        }
    }
    for dir in [g, g.inverse()] {
        let mut prev = len_w;
        for l in 1..=k {
            let y = power(w, dir, l);
            let ly = metric.length(&y)?;
            if ly + 1 != prev {
                return Ok(false);
            }
            prev = ly;
            if l < k {
                for &h in &others {
                    if metric.length(&y.applied(h))? < ly {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Every element `w` with `|w| < radius` of a ball and generator `g` in
/// `X` such that `w` is a seesaw of swing at least `min_swing`; the reported
/// swing is the largest one that holds.
pub fn find_seesaw(ball: &Ball, min_swing: u32) -> Result<Vec<Seesaw>, OracleError> {
    let min_swing = min_swing.max(1);
    let gens = ball.alphabet.positive_generators();
    let candidates: Vec<&LampElement> = ball
        .elements()
        .filter(|(_, d)| *d < ball.radius)
        .map(|(x, _)| x)
        .collect();
    let found: Vec<Vec<Seesaw>> = candidates
        .par_iter()
        .map(|w| {
            let mut out = Vec::new();
            for &g in &gens {
                let mut swing = 0;
                let len = ball.distance(w).unwrap_or(0);
                while swing < len && is_seesaw(w, g, swing + 1, ball).unwrap_or(false) {
                    swing += 1;
                }
                if swing >= min_swing {
                    out.push(Seesaw {
                        element: (*w).clone(),
                        generator: g,
                        swing,
                    });
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Group elements hit by a set of words, with multiplicities.
pub fn evaluate_all(words: &BTreeSet<String>, alphabet: GenAlphabet, m: u32) -> Result<BTreeMap<LampElement, Vec<String>>, OracleError> {
    let mut out: BTreeMap<LampElement, Vec<String>> = BTreeMap::new();
    for w in words {
        let x = crate::lamp::evaluate(&GroupWord::parse(alphabet, w)?, m)?;
        out.entry(x).or_default().push(w.clone());
    }
    Ok(out)
}

/// All geodesic words of length at most `max_len` in a ball of that radius.
pub fn geodesic_words(ball: &Ball, max_len: u32) -> Result<BTreeSet<String>, OracleError> {
    if max_len > ball.radius {
        return Err(OracleError::InsufficientBall {
            radius: ball.radius,
            needed: u64::from(max_len),
        });
    }
    // Forward closure: a word is geodesic iff each letter raises the distance.
    let gens = ball.alphabet.generators(ball.modulus);
    let mut out = BTreeSet::new();
    let mut layer: Vec<(LampElement, String)> = vec![(LampElement::identity(ball.modulus)?, String::new())];
    for d in 0..=max_len {
        let mut next = Vec::new();
        for (x, w) in &layer {
            out.insert(w.clone());
            if d == max_len {
                continue;
            }
            for &g in &gens {
                let y = x.applied(g);
                if ball.distance(&y) == Some(d + 1) {
                    let mut v = w.clone();
                    v.push(g.to_char());
                    next.push((y, v));
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Distinct group elements reachable in a set, as a hash set; handy in tests.
pub fn element_set(ball: &Ball) -> HashSet<LampElement> {
    ball.dist.keys().cloned().collect()
}
