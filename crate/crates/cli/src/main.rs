use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geodesic_core::lab::{pumping_witness, squarefree_word, swap_demo, verify_geodesic_language, VerificationReport};
use geodesic_core::lamp::{canonical_geodesic, d_length, dprime_length, evaluate};
use geodesic_core::machines::{self, Coverage};
use geodesic_core::oracle::{
    all_geodesics, automaton_cone_witness, distinct_cone_types, find_seesaw, wreath_cone_witness, Ball, BallStats,
    FormulaMetric, Metric,
};
use geodesic_core::thompson::{rewrite_to_nf, verify_seesaw, FWord, DEFAULT_NODE_BUDGET};
use geodesic_core::{GenAlphabet, GroupWord, LampElement};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "geodesic", version, about = "Geodesics in lamplighter groups and Thompson's group F")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for commands that draw random words.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gens {
    Wreath,
    #[value(alias = "tta")]
    Automaton,
}

impl From<Gens> for GenAlphabet {
    fn from(g: Gens) -> Self {
        match g {
            Gens::Wreath => GenAlphabet::Wreath,
            Gens::Automaton => GenAlphabet::Automaton,
        }
    }
}

#[derive(Args)]
struct Group {
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, value_enum, default_value = "wreath")]
    gens: Gens,
}

#[derive(Args)]
struct Target {
    /// Element as JSON, e.g. {"m":2,"bulbs":{"1":1},"cursor":0}.
    #[arg(long, conflicts_with_all = ["word", "random_len"])]
    element: Option<String>,
    /// Word over the chosen generators.
    #[arg(long, conflicts_with = "random_len")]
    word: Option<String>,
    /// Use a random word of this length, drawn with --seed.
    #[arg(long)]
    random_len: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Unique,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricKind {
    Bfs,
    Formula,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word to an element.
    Eval {
        #[command(flatten)]
        group: Group,
        #[command(flatten)]
        target: Target,
    },
    /// Word length of an element by the closed-form formula.
    Length {
        #[command(flatten)]
        group: Group,
        #[command(flatten)]
        target: Target,
    },
    /// Every geodesic word for an element.
    Geodesics {
        #[command(flatten)]
        group: Group,
        #[command(flatten)]
        target: Target,
        /// Give up past this distance.
        #[arg(long, default_value_t = 30)]
        cap: u64,
    },
    /// Ball around the identity in the Cayley graph.
    Ball {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        radius: u32,
        /// Only print sphere sizes.
        #[arg(long)]
        stats: bool,
    },
    /// Bounded cone types of the standard witness family.
    ConeTypes {
        #[arg(long, value_enum, default_value = "wreath")]
        gens: Gens,
        /// Family size: witnesses 1..=n for wreath, g_n t^-k for k in 0..=n otherwise.
        #[arg(long, default_value_t = 4)]
        n: u32,
        /// Extension depth; defaults to n + 1.
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long, value_enum, default_value = "formula")]
        metric: MetricKind,
    },
    /// Scan a ball for seesaw elements.
    FindSeesaw {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        radius: u32,
        #[arg(long, default_value_t = 1)]
        min_swing: u32,
    },
    /// Print one of the built-in machines.
    ExportMachine {
        #[arg(long)]
        name: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
    /// Compare a machine against the Cayley-graph oracle.
    Verify {
        #[arg(long)]
        machine: String,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 10)]
        max_len: u32,
        /// Defaults to the machine's own coverage.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Pumped copies of the g_n geodesic and their true lengths.
    PumpingDemo {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value = "wreath")]
        gens: Gens,
    },
    /// Swap adjacent blocks of a square-free geodesic and re-measure.
    SwapDemo {
        #[arg(long, default_value_t = 12)]
        len: usize,
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
    /// A square-free word over 1, 2, 3.
    Squarefree {
        #[arg(long)]
        len: usize,
    },
    /// Thompson's group F.
    Thompson {
        #[command(subcommand)]
        command: ThompsonCommand,
    },
}

#[derive(Subcommand)]
enum ThompsonCommand {
    /// Normal form of a word in x0, x1, X0, X1.
    Nf {
        #[arg(long)]
        word: String,
    },
    /// Check the seesaw clauses for the family member of swing k.
    Seesaw {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 24)]
        cap: u32,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lamp(#[from] geodesic_core::LampError),
    #[error(transparent)]
    Oracle(#[from] geodesic_core::oracle::OracleError),
    #[error(transparent)]
    Lab(#[from] geodesic_core::lab::LabError),
    #[error(transparent)]
    Machine(#[from] geodesic_core::machines::MachineError),
    #[error(transparent)]
    Thompson(#[from] geodesic_core::thompson::FError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Whether a command's check came out clean.
enum Verdict {
    Pass,
    Fail,
}

fn element_of(target: &Target, group: &Group, seed: u64) -> Result<LampElement, CliError> {
    let alphabet = GenAlphabet::from(group.gens);
    if let Some(text) = &target.element {
        let x = LampElement::from_json(text)?;
        if x.modulus() != group.m {
            return Err(CliError::Usage(format!("element has m = {} but --m is {}", x.modulus(), group.m)));
        }
        return Ok(x);
    }
    Ok(evaluate(&word_of(target, alphabet, group.m, seed)?, group.m)?)
}

fn word_of(target: &Target, alphabet: GenAlphabet, m: u32, seed: u64) -> Result<GroupWord, CliError> {
    match (&target.word, target.random_len) {
        (Some(text), _) => Ok(GroupWord::parse(alphabet, text)?),
        (None, Some(len)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let letters = alphabet.generators(m);
            let picks = (0..len).map(|_| *letters.choose(&mut rng).expect("nonempty alphabet")).collect();
            Ok(GroupWord::new(alphabet, picks)?)
        }
        (None, None) => Err(CliError::Usage("give one of --element, --word or --random-len".into())),
    }
}

fn formula_length(x: &LampElement, alphabet: GenAlphabet) -> Result<u64, CliError> {
    Ok(match alphabet {
        GenAlphabet::Wreath => d_length(x),
        GenAlphabet::Automaton => dprime_length(x)?,
    })
}

fn print_json(value: &impl serde::Serialize) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn print_report(r: &VerificationReport, json: bool) -> Result<Verdict, CliError> {
    if json {
        print_json(r)?;
    } else {
        println!("{r}");
    }
    Ok(if r.passed() { Verdict::Pass } else { Verdict::Fail })
}

fn cone_classes<M: Metric>(family: &[LampElement], depth: u32, metric: &M) -> Result<Vec<Vec<usize>>, CliError> {
    Ok(distinct_cone_types(family, depth, metric)?)
}

fn run(cli: Cli) -> Result<Verdict, CliError> {
    let json = cli.json;
    match cli.command {
        Command::Eval { group, target } => {
            let x = element_of(&target, &group, cli.seed)?;
            println!("{}", x.to_json());
        }
        Command::Length { group, target } => {
            let alphabet = GenAlphabet::from(group.gens);
            let x = element_of(&target, &group, cli.seed)?;
            let len = formula_length(&x, alphabet)?;
            if json {
                let geodesic = canonical_geodesic(&x, alphabet)?.to_string();
                print_json(&json!({ "element": x, "length": len, "geodesic": geodesic }))?;
            } else {
                println!("{len}");
            }
        }
        Command::Geodesics { group, target, cap } => {
            let x = element_of(&target, &group, cli.seed)?;
            let words: Vec<String> = all_geodesics(&x, group.gens.into(), cap)?
                .iter()
                .map(ToString::to_string)
                .collect();
            if json {
                print_json(&words)?;
            } else {
                for w in &words {
                    println!("{}", if w.is_empty() { "(empty)" } else { w });
                }
            }
        }
        Command::Ball { group, radius, stats } => {
            let ball = Ball::new(group.m, group.gens.into(), radius)?;
            if stats {
                let s = BallStats::from(&ball);
                if json {
                    print_json(&s)?;
                } else {
                    println!("{}", serde_json::to_string(&s)?);
                }
            } else if json {
                let all: Vec<_> = ball.elements().map(|(x, d)| json!({ "element": x, "distance": d })).collect();
                print_json(&all)?;
            } else {
                for (x, d) in ball.elements() {
                    println!("{d}\t{}", x.to_json());
                }
            }
        }
        Command::ConeTypes { gens, n, depth, metric } => {
            let alphabet = GenAlphabet::from(gens);
            let depth = depth.unwrap_or(n + 1);
            let family: Vec<LampElement> = match alphabet {
                GenAlphabet::Wreath => (1..=i64::from(n)).map(wreath_cone_witness).collect(),
                GenAlphabet::Automaton => (0..=i64::from(n)).map(|k| automaton_cone_witness(i64::from(n), k)).collect(),
            };
            let classes = match metric {
                MetricKind::Formula => cone_classes(&family, depth, &FormulaMetric { m: 2, alphabet })?,
                MetricKind::Bfs => {
                    let needed = family.iter().map(|x| formula_length(x, alphabet)).collect::<Result<Vec<_>, _>>()?;
                    let radius = needed.into_iter().max().unwrap_or(0) as u32 + depth;
                    eprintln!("building ball of radius {radius}");
                    cone_classes(&family, depth, &Ball::new(2, alphabet, radius)?)?
                }
            };
            if json {
                let members: Vec<Vec<&LampElement>> =
                    classes.iter().map(|c| c.iter().map(|&i| &family[i]).collect()).collect();
                print_json(&json!({ "depth": depth, "classes": members }))?;
            } else {
                println!("{} classes at depth {depth}", classes.len());
                for class in &classes {
                    let names: Vec<String> = class.iter().map(|&i| family[i].to_json()).collect();
                    if names.len() > 1 {
                        println!("not distinguished at depth {depth}: {}", names.join(" "));
                    } else {
                        println!("{}", names[0]);
                    }
                }
            }
        }
        Command::FindSeesaw { group, radius, min_swing } => {
            let ball = Ball::new(group.m, group.gens.into(), radius)?;
            let found = find_seesaw(&ball, min_swing)?;
            if json {
                print_json(&found)?;
            } else {
                for s in &found {
                    println!("{}\t{}\tswing {}", s.element.to_json(), s.generator.to_char(), s.swing);
                }
                eprintln!("{} seesaw pairs", found.len());
            }
        }
        Command::ExportMachine { name, format, m } => {
            let machine = machines::build(&name, m)?;
            match format {
                Format::Dot => print!("{}", machine.to_dot(&name)),
                Format::Json => println!("{}", machine.to_json()),
            }
        }
        Command::Verify { machine, m, max_len, mode } => {
            let entry = machines::lookup(&machine)?;
            let alphabet = entry
                .alphabet
                .ok_or_else(|| CliError::Usage(format!("{machine} is not a geodesic acceptor")))?;
            let coverage = match mode {
                Some(Mode::Full) => Coverage::Full,
                Some(Mode::Unique) => Coverage::Unique,
                None => entry.coverage.unwrap_or(Coverage::Full),
            };
            let built = machines::build(&machine, m)?;
            eprintln!("checking {machine} against the oracle up to length {max_len}");
            let report = verify_geodesic_language(&built, m, alphabet, max_len, coverage)?;
            return print_report(&report, json);
        }
        Command::PumpingDemo { n, gens } => {
            let rec = pumping_witness(n, gens.into())?;
            if json {
                print_json(&rec)?;
            } else {
                println!("{} length {} distance {}", rec.word, rec.length, rec.distance);
                for p in &rec.pumps {
                    println!("i={} j={} {} length {} distance {}", p.i, p.j, p.word, p.length, p.distance);
                }
            }
            if !rec.all_pumps_fail() {
                return Ok(Verdict::Fail);
            }
        }
        Command::SwapDemo { len, m } => {
            let demo = swap_demo(len, m)?;
            if json {
                print_json(&demo)?;
            } else {
                println!("encoding {} + {}", demo.positive, demo.suffix);
                println!("word {} length {} distance {}", demo.word, demo.length, demo.distance);
                for s in &demo.swaps {
                    println!(
                        "swap {}: {} length {} distance {} {:?}",
                        s.index, s.encoding, s.length, s.distance, s.failure
                    );
                }
            }
            if !demo.geodesic || !demo.all_swaps_fail() {
                return Ok(Verdict::Fail);
            }
        }
        Command::Squarefree { len } => {
            let w: String = squarefree_word(len).iter().map(|d| char::from(b'0' + d)).collect();
            if json {
                print_json(&json!({ "word": w }))?;
            } else {
                println!("{w}");
            }
        }
        Command::Thompson { command } => match command {
            ThompsonCommand::Nf { word } => {
                let nf = rewrite_to_nf(&FWord::parse(&word)?);
                if json {
                    print_json(&nf)?;
                } else {
                    println!("{nf}");
                }
            }
            ThompsonCommand::Seesaw { k, cap, budget } => {
                let r = verify_seesaw(k, cap, budget)?;
                if json {
                    print_json(&r)?;
                } else {
                    println!("w = {} (length {:?})", r.word, r.length);
                    for c in &r.clauses {
                        println!("{}: {:?}", c.clause, c.status);
                    }
                }
                if !r.verified() && !r.cap_exceeded() {
                    return Ok(Verdict::Fail);
                }
            }
        },
    }
    Ok(Verdict::Pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run with --help for usage");
            }
            ExitCode::from(2)
        }
    }
}
