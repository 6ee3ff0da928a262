//! Machine-versus-oracle verification and executable versions of the
//! pumping and swapping arguments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::automata::{AnyMachine, EngineError};
use crate::lamp::{evaluate, word_length, GenAlphabet, GroupWord, LampElement, LampError, Letter};
use crate::machines::Coverage;
use crate::oracle::{geodesic_words, Ball, OracleError};

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Lamp(#[from] LampError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("word is not a sequence of blocks t^e a^{h} with 1 <= |e| <= 3 (offset {offset})")]
    NotRestricted { offset: usize, h: u32 },
    #[error("exponent {0} is outside ±1..±3")]
    BadExponent(i8),
    #[error("need at least {min}, got {got}")]
    TooShort { min: usize, got: usize },
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct UniquenessViolation {
    pub element: LampElement,
    pub words: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub m: u32,
    pub alphabet: GenAlphabet,
    pub max_len: u32,
    pub mode: &'static str,
    pub accepted: usize,
    pub geodesics: usize,
    /// Accepted words that are not geodesic.
    pub soundness_violations: Vec<String>,
    /// Geodesics the machine rejects (full mode only).
    pub completeness_violations: Vec<String>,
    /// Elements with zero or several accepted words (unique mode only).
    pub uniqueness_violations: Vec<UniquenessViolation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.soundness_violations.is_empty()
            && self.completeness_violations.is_empty()
            && self.uniqueness_violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} over {} (m = {}), words up to length {}: {}",
            self.mode,
            self.alphabet,
            self.m,
            self.max_len,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        writeln!(f, "  accepted words: {}", self.accepted)?;
        writeln!(f, "  oracle geodesics: {}", self.geodesics)?;
        let show = |f: &mut fmt::Formatter<'_>, name: &str, items: &[String]| -> fmt::Result {
            writeln!(f, "  {name}: {}", items.len())?;
            for w in items.iter().take(10) {
                writeln!(f, "    {}", if w.is_empty() { "ε" } else { w })?;
            }
            Ok(())
        };
        show(f, "soundness violations", &self.soundness_violations)?;
        show(f, "completeness violations", &self.completeness_violations)?;
        writeln!(f, "  uniqueness violations: {}", self.uniqueness_violations.len())?;
        for v in self.uniqueness_violations.iter().take(10) {
            writeln!(f, "    {} <- {:?}", v.element.to_json(), v.words)?;
        }
        Ok(())
    }
}

/// Compares the words a machine accepts up to `max_len` with the geodesics
/// found by breadth-first search.
pub fn verify_geodesic_language(
    machine: &AnyMachine,
    m: u32,
    alphabet: GenAlphabet,
    max_len: u32,
    mode: Coverage,
) -> Result<VerificationReport, LabError> {
    let ball = Ball::new(m, alphabet, max_len)?;
    verify_with_ball(machine, &ball, max_len, mode)
}

/// As [`verify_geodesic_language`] with a precomputed ball of radius at
/// least `max_len`.
pub fn verify_with_ball(
    machine: &AnyMachine,
    ball: &Ball,
    max_len: u32,
    mode: Coverage,
) -> Result<VerificationReport, LabError> {
    let accepted = machine.enumerate_language(max_len as usize);
    let geodesics = geodesic_words(ball, max_len)?;
    let soundness: Vec<String> = accepted.difference(&geodesics).cloned().collect();
    let mut report = VerificationReport {
        m: ball.modulus(),
        alphabet: ball.alphabet(),
        max_len,
        mode: match mode {
            Coverage::Full => "full",
            Coverage::Unique => "unique",
        },
        accepted: accepted.len(),
        geodesics: geodesics.len(),
        soundness_violations: soundness,
        completeness_violations: Vec::new(),
        uniqueness_violations: Vec::new(),
    };
    match mode {
        Coverage::Full => {
            report.completeness_violations = geodesics.difference(&accepted).cloned().collect();
        }
        Coverage::Unique => {
            let mut reps: BTreeMap<LampElement, Vec<String>> = BTreeMap::new();
            for w in accepted.intersection(&geodesics) {
                let x = evaluate(&GroupWord::parse(ball.alphabet(), w)?, ball.modulus())?;
                reps.entry(x).or_default().push(w.clone());
            }
            for (x, d) in ball.elements() {
                if d > max_len {
                    continue;
                }
                let words = reps.remove(x).unwrap_or_default();
                if words.len() != 1 {
                    report.uniqueness_violations.push(UniquenessViolation {
                        element: x.clone(),
                        words,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct Pump {
    /// Length of the part before the pumped piece.
    pub i: usize,
    /// Length of the pumped piece.
    pub j: usize,
    pub word: String,
    pub length: u64,
    pub distance: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PumpingRecord {
    pub n: usize,
    pub alphabet: GenAlphabet,
    pub word: String,
    pub length: u64,
    pub distance: u64,
    pub pumps: Vec<Pump>,
}

impl PumpingRecord {
    /// Whether every pumped word is longer than its element.
    pub fn all_pumps_fail(&self) -> bool {
        self.pumps.iter().all(|p| p.length > p.distance)
    }
}

fn g_word(n: usize, lead: usize, alphabet: GenAlphabet) -> String {
    match alphabet {
        GenAlphabet::Wreath => format!("{}a{}a{}", "t".repeat(lead), "T".repeat(2 * n), "t".repeat(n)),
        GenAlphabet::Automaton => format!("{}S{}s{}", "t".repeat(lead), "T".repeat(2 * n), "t".repeat(n)),
    }
}

/// Pumps the leading `t^n` of the geodesic for `g_n` at every split
/// `t^i t^j t^(n-i-j)` with `j > 0`, doubling the middle piece.
pub fn pumping_witness(n: usize, alphabet: GenAlphabet) -> Result<PumpingRecord, LabError> {
    if n < 1 {
        return Err(LabError::TooShort { min: 1, got: n });
    }
    let measure = |w: &str| -> Result<(u64, u64), LabError> {
        let gw = GroupWord::parse(alphabet, w)?;
        let x = evaluate(&gw, 2)?;
        Ok((gw.len() as u64, word_length(&x, alphabet)?))
    };
    let word = g_word(n, n, alphabet);
    let (length, distance) = measure(&word)?;
    let mut pumps = Vec::new();
    for i in 0..n {
        for j in 1..=n - i {
            let w = g_word(n, n + j, alphabet);
            let (length, distance) = measure(&w)?;
            pumps.push(Pump {
                i,
                j,
                word: w,
                length,
                distance,
            });
        }
    }
    Ok(PumpingRecord {
        n,
        alphabet,
        word,
        length,
        distance,
        pumps,
    })
}

/// Thue–Morse bit `k`.
fn thue_morse(k: u64) -> u32 {
    k.count_ones() % 2
}

/// A square-free word over `1, 2, 3`: one more than the number of ones
/// between consecutive zeros of the Thue–Morse sequence.
pub fn squarefree_word(len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    let mut k = 1u64;
    while out.len() < len {
        let mut ones = 0u8;
        while thue_morse(k) == 1 {
            ones += 1;
            k += 1;
        }
        out.push(ones + 1);
        k += 1;
    }
    out
}

/// Whether a sequence contains a factor `XX` with `X` nonempty.
pub fn has_square<T: PartialEq>(w: &[T]) -> bool {
    (1..=w.len() / 2).any(|half| w.windows(2 * half).any(|f| f[..half] == f[half..]))
}

/// Signed `t`-exponents of a word made of blocks `t^e a^h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EncodedWord {
    pub exponents: Vec<i8>,
}

impl fmt::Display for EncodedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.exponents {
            if e < 0 {
                write!(f, "({e})")?;
            } else {
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

pub fn bulb_half(m: u32) -> u32 {
    m / 2
}

pub fn encode_t_exponents(word: &GroupWord, m: u32) -> Result<EncodedWord, LabError> {
    let h = bulb_half(m) as usize;
    let letters = word.letters();
    let mut exponents = Vec::new();
    let mut at = 0;
    while at < letters.len() {
        let start = at;
        let step = letters[at];
        if step != Letter::T && step != Letter::TInv {
            return Err(LabError::NotRestricted { offset: at, h: h as u32 });
        }
        while at < letters.len() && letters[at] == step && at - start < 3 {
            at += 1;
        }
        let e = (at - start) as i8;
        let lights = letters[at..].iter().take_while(|&&l| l == Letter::A).count();
        if lights != h {
            return Err(LabError::NotRestricted { offset: at, h: h as u32 });
        }
        at += h;
        exponents.push(if step == Letter::T { e } else { -e });
    }
    Ok(EncodedWord { exponents })
}

pub fn decode(e: &EncodedWord, m: u32) -> Result<GroupWord, LabError> {
    let h = bulb_half(m) as usize;
    let mut w = GroupWord::empty(GenAlphabet::Wreath);
    for &x in &e.exponents {
        if x == 0 || x.abs() > 3 {
            return Err(LabError::BadExponent(x));
        }
        let step = if x > 0 { Letter::T } else { Letter::TInv };
        for _ in 0..x.abs() {
            w.push(step);
        }
        for _ in 0..h {
            w.push(Letter::A);
        }
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SwapFailure {
    /// A bulb received `2h = m` and went dark again.
    TurnedOff,
    /// A bulb received `2h = m - 1`, reachable more cheaply the other way.
    OverLit,
    /// The swapped word is still geodesic.
    None,
}

#[derive(Debug, Clone, Serialize)]
pub struct SwapCase {
    pub index: usize,
    pub encoding: String,
    pub length: u64,
    pub distance: u64,
    pub geodesic: bool,
    pub failure: SwapFailure,
}

#[derive(Debug, Clone, Serialize)]
pub struct SwapDemo {
    pub m: u32,
    pub h: u32,
    pub positive: String,
    pub suffix: String,
    pub word: String,
    pub length: u64,
    pub distance: u64,
    pub geodesic: bool,
    /// Adjacent equal blocks, where the swap changes nothing.
    pub skipped: Vec<usize>,
    pub swaps: Vec<SwapCase>,
}

impl SwapDemo {
    pub fn all_swaps_fail(&self) -> bool {
        self.swaps.iter().all(|s| !s.geodesic)
    }
}

/// Steps leftward from the end of the positive part that visit every bulb
/// in `1..=total` not lit by it.
fn suffix_for(positive: &[i8]) -> Vec<i8> {
    let mut lit = BTreeSet::new();
    let mut at = 0i64;
    for &e in positive {
        at += i64::from(e);
        lit.insert(at);
    }
    let mut steps = Vec::new();
    let mut cur = at;
    for p in (1..at).rev() {
        if !lit.contains(&p) {
            steps.push((p - cur) as i8);
            cur = p;
        }
    }
    steps
}

/// Builds a geodesic lighting every bulb in `1..=S` to state `h` from a
/// square-free positive encoding of `len_positive` blocks, then swaps each
/// pair of adjacent distinct blocks and measures the result.
pub fn swap_demo(len_positive: usize, m: u32) -> Result<SwapDemo, LabError> {
    if len_positive < 2 {
        return Err(LabError::TooShort {
            min: 2,
            got: len_positive,
        });
    }
    if m < 2 {
        return Err(LampError::InvalidModulus(m).into());
    }
    let positive: Vec<i8> = squarefree_word(len_positive).into_iter().map(|d| d as i8).collect();
    let suffix = suffix_for(&positive);
    let measure = |pos: &[i8]| -> Result<(GroupWord, u64, u64, LampElement), LabError> {
        let mut all = pos.to_vec();
        all.extend(&suffix);
        let w = decode(&EncodedWord { exponents: all }, m)?;
        let x = evaluate(&w, m)?;
        let d = word_length(&x, GenAlphabet::Wreath)?;
        Ok((w.clone(), w.len() as u64, d, x))
    };
    let (word, length, distance, _) = measure(&positive)?;
    let h = bulb_half(m);
    let mut swaps = Vec::new();
    let mut skipped = Vec::new();
    for i in 0..positive.len() - 1 {
        if positive[i] == positive[i + 1] {
            skipped.push(i);
            continue;
        }
        let mut swapped = positive.clone();
        swapped.swap(i, i + 1);
        let (_, length, distance, x) = measure(&swapped)?;
        let geodesic = length == distance;
        let failure = if geodesic {
            SwapFailure::None
        } else if (1..=positive.iter().map(|&e| i64::from(e)).sum()).any(|p| x.state(p) == 0) {
            SwapFailure::TurnedOff
        } else {
            SwapFailure::OverLit
        };
        swaps.push(SwapCase {
            index: i,
            encoding: EncodedWord { exponents: swapped }.to_string(),
            length,
            distance,
            geodesic,
            failure,
        });
    }
    Ok(SwapDemo {
        m,
        h,
        positive: EncodedWord {
            exponents: positive.clone(),
        }
        .to_string(),
        suffix: EncodedWord { exponents: suffix.clone() }.to_string(),
        word: word.to_string(),
        length,
        distance,
        geodesic: length == distance,
        skipped,
        swaps,
    })
}
