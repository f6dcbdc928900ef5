use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use braidobf::acceptance::{self, CRITERIA};
use braidobf::attacks::{
    dictionary_attack, gcd_experiment, peel_circuit, peel_experiment, ExperimentConfig, PeelFailure,
    PeelOptions,
};
use braidobf::braid::{left_gcd_nf, NormalForm};
use braidobf::compiler::{compile_circuit, encoding_seed, Layout, ToffoliCircuit};
use braidobf::formats::{self, BraidKind, Report};
use braidobf::obfuscator::{obfuscate_circuit, obfuscate_rcircuit, salt, Mode};
use braidobf::qdouble::{
    class_breakdown, generated_subgroup, orbit_under_r, simulate, simulate_normal_form, ybe_search, GElem,
    GroupTable, PairGate,
};
use clap::{Parser, Subcommand, ValueEnum};

/// Braid-group normal forms, Toffoli-to-braid compilation and obfuscation attacks.
#[derive(Parser, Debug)]
#[command(name = "braidobf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Braid file to normal form file.
    Normalize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Normal form file to braid file.
    Wordof {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write an `rcirc` header instead of `braid`.
        #[arg(long)]
        rcirc: bool,
    },
    /// Circuit file to braid file.
    Compile {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Circuit file to obfuscated normal form (and optionally the emitted word).
    Obfuscate {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Naive)]
        mode: ModeArg,
        #[arg(long, required_if_eq_any([("mode", "randomized"), ("mode", "salted")]))]
        seed: Option<u64>,
        /// Salt wires added in salted mode.
        #[arg(long, default_value_t = 1)]
        salt_wires: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the emitted R-circuit here.
        #[arg(long)]
        word: Option<PathBuf>,
    },
    /// Runs a braid, R-circuit or normal form file on a dit state.
    Simulate {
        circuit: PathBuf,
        state: PathBuf,
        #[arg(long, default_value = "a5")]
        group: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Last-gate peeling on one normal form, or an experiment with --trials.
    AttackPeel {
        #[arg(required_unless_present = "trials")]
        input: Option<PathBuf>,
        /// Logical wires of the hidden circuit (single mode), or a comma
        /// separated list to draw from (experiment mode).
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4])]
        wires: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        max_gates: usize,
        #[arg(long)]
        backtrack: bool,
        #[arg(long, requires = "seed")]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Obfuscate experiment instances in randomized mode.
        #[arg(long)]
        randomized: bool,
        /// Write the recovered circuit here (single mode).
        #[arg(long)]
        circuit_out: Option<PathBuf>,
    },
    /// Compares a normal form against a directory of candidate circuits.
    AttackDict {
        input: PathBuf,
        candidates: PathBuf,
    },
    /// Left gcd of two normal forms, or a prefix-sharing experiment with --pairs.
    AttackGcd {
        #[arg(required_unless_present = "pairs", num_args = 2)]
        inputs: Vec<PathBuf>,
        #[arg(long, requires = "seed")]
        pairs: Option<usize>,
        #[arg(long, default_value_t = 4)]
        wires: usize,
        #[arg(long, default_value_t = 2)]
        prefix_gates: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Orbit of a seed set under the R gate, with its class breakdown.
    Orbit {
        #[arg(long, default_value = "a5")]
        group: String,
        /// Seed elements as cycles (`(345)`) or indices; defaults to the
        /// catalyst and bit encodings with their inverses.
        #[arg(long, value_delimiter = ',')]
        elements: Vec<String>,
    },
    /// All pair bijections on d-state dits that satisfy Yang-Baxter.
    YbeSearch {
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Checks Yang-Baxter for a gate file or the R gate of a group.
    YbeCheck {
        #[arg(required_unless_present = "group")]
        gate: Option<PathBuf>,
        #[arg(long, conflicts_with = "gate")]
        group: Option<String>,
    },
    /// Runs the acceptance criteria.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Naive,
    Randomized,
    Salted,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    /// The command ran but found a violated property.
    Verdict,
}

impl From<braidobf::Error> for Failure {
    fn from(e: braidobf::Error) -> Self {
        if e.is_format() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Wraps a parse so the message names the file.
fn parse<T>(path: &Path, f: impl FnOnce(&str) -> braidobf::Result<T>) -> CliResult<T> {
    f(&read(path)?).map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        Failure::Domain(m) => Failure::Domain(format!("{}: {m}", path.display())),
        v => v,
    })
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn group(name: &str) -> CliResult<GroupTable> {
    let path = Path::new(name);
    if path.exists() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("custom");
        return parse(path, |t| formats::parse_group(t, stem));
    }
    Ok(GroupTable::builtin(name)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Normalize { input, output } => {
            let (w, _) = parse(&input, formats::parse_braid)?;
            emit(output.as_deref(), &formats::write_nf(&NormalForm::of(&w)))
        }
        Command::Wordof { input, output, rcirc } => {
            let nf = parse(&input, formats::parse_nf)?;
            let kind = if rcirc { BraidKind::RCircuit } else { BraidKind::Braid };
            emit(output.as_deref(), &formats::write_braid(&nf.word(), kind))
        }
        Command::Compile { input, output } => {
            let c = parse(&input, formats::parse_circuit)?;
            emit(output.as_deref(), &formats::write_braid(&compile_circuit(&c), BraidKind::Braid))
        }
        Command::Obfuscate {
            input,
            mode,
            seed,
            salt_wires,
            output,
            word,
        } => {
            let c = parse(&input, formats::parse_circuit)?;
            let result = match mode {
                ModeArg::Naive => obfuscate_circuit(&c, Mode::Naive),
                ModeArg::Randomized => obfuscate_circuit(&c, Mode::Randomized { seed: seed.expect("clap") }),
                ModeArg::Salted => obfuscate_circuit(&salt(&c, salt_wires, seed.expect("clap"))?, Mode::Naive),
            };
            if let Some(p) = word {
                emit(Some(&p), &formats::write_braid(&result.word, BraidKind::RCircuit))?;
            }
            emit(output.as_deref(), &formats::write_nf(&result.nf))
        }
        Command::Simulate {
            circuit,
            state,
            group: name,
            output,
        } => {
            let g = group(&name)?;
            let s = parse(&state, |t| formats::parse_state(t, &g))?;
            let text = read(&circuit)?;
            let out = if first_keyword(&text) == Some("nf") {
                let nf = parse(&circuit, formats::parse_nf)?;
                simulate_normal_form(&g, &nf, &s)?
            } else {
                let (w, _) = parse(&circuit, formats::parse_braid)?;
                simulate(&g, &w, &s)?
            };
            emit(output.as_deref(), &formats::write_state(&out, &g))
        }
        Command::AttackPeel {
            input,
            wires,
            max_gates,
            backtrack,
            trials,
            seed,
            randomized,
            circuit_out,
        } => match (input, trials) {
            (Some(input), _) => {
                let [w] = wires[..] else {
                    return Err(Failure::Usage("single-instance peeling needs exactly one --wires value".into()));
                };
                let nf = parse(&input, formats::parse_nf)?;
                let options = PeelOptions {
                    max_gates,
                    backtrack,
                    ..PeelOptions::default()
                };
                let outcome = peel_circuit(&nf, &Layout::new(w)?, options)?;
                let mut r = Report::new();
                r.push("experiment", "peel-single");
                r.push("strips_evaluated", outcome.strips_evaluated);
                r.push("ambiguous_steps", outcome.ambiguous_steps);
                match &outcome.result {
                    Ok(c) => {
                        r.push("recovered", true);
                        r.push("gates", c.gates().len());
                        if let Some(p) = circuit_out {
                            emit(Some(&p), &formats::write_circuit(c))?;
                        }
                    }
                    Err(f) => {
                        r.push("recovered", false);
                        r.push("failure", describe_failure(f));
                    }
                }
                print!("{r}");
                if outcome.recovered().is_some() {
                    Ok(())
                } else {
                    Err(Failure::Verdict)
                }
            }
            (None, Some(trials)) => {
                let config = ExperimentConfig {
                    trials,
                    wires,
                    max_gates,
                    seed: seed.expect("clap"),
                    randomized,
                    backtrack,
                };
                let e = peel_experiment(&config)?;
                print!("{}", e.report(&config));
                Ok(())
            }
            (None, None) => unreachable!("clap requires input or trials"),
        },
        Command::AttackDict { input, candidates } => {
            let nf = parse(&input, formats::parse_nf)?;
            let obf = obfuscate_rcircuit(&nf.word());
            let mut paths: Vec<PathBuf> = fs::read_dir(&candidates)
                .map_err(|e| Failure::Usage(format!("{}: {e}", candidates.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            paths.sort();
            let circuits: Vec<ToffoliCircuit> =
                paths.iter().map(|p| parse(p, formats::parse_circuit)).collect::<CliResult<_>>()?;
            let mut r = Report::new();
            r.push("experiment", "dictionary");
            r.push("candidates", circuits.len());
            match dictionary_attack(&obf, &circuits, Mode::Naive) {
                Some(i) => {
                    r.push("match", paths[i].file_name().unwrap_or_default().to_string_lossy());
                    print!("{r}");
                    Ok(())
                }
                None => {
                    r.push("match", "none");
                    print!("{r}");
                    Err(Failure::Verdict)
                }
            }
        }
        Command::AttackGcd {
            inputs,
            pairs,
            wires,
            prefix_gates,
            seed,
            output,
        } => match pairs {
            Some(pairs) if inputs.is_empty() => {
                let seed = seed.expect("clap");
                let e = gcd_experiment(pairs, wires, prefix_gates, seed)?;
                emit(output.as_deref(), &e.report(seed).to_string())
            }
            _ => {
                let a = parse(&inputs[0], formats::parse_nf)?;
                let b = parse(&inputs[1], formats::parse_nf)?;
                emit(output.as_deref(), &formats::write_braid(&left_gcd_nf(&a, &b)?, BraidKind::Braid))
            }
        },
        Command::Orbit { group: name, elements } => {
            let g = group(&name)?;
            let seed: BTreeSet<GElem> = if elements.is_empty() {
                encoding_seed(&g)?.into_iter().collect()
            } else {
                elements.iter().map(|e| element(&g, e)).collect::<CliResult<_>>()?
            };
            let orbit = orbit_under_r(&g, &seed);
            let mut r = Report::new();
            r.push("group", g.name());
            r.push("seed_size", seed.len());
            r.push("orbit_size", orbit.len());
            r.push("subgroup_size", generated_subgroup(&g, &seed).len());
            for c in class_breakdown(&g, &orbit) {
                r.push(&format!("class.{}", g.describe(c.representative)), format!("{}/{}", c.in_set, c.class_size));
            }
            print!("{r}");
            Ok(())
        }
        Command::YbeSearch { dim } => {
            let found = ybe_search(dim)?;
            let mut r = Report::new();
            r.push("dim", dim);
            r.push("solutions", found.len());
            for (i, gate) in found.iter().enumerate() {
                let map: Vec<String> = gate.map().iter().map(u32::to_string).collect();
                r.push(&format!("solution.{i}"), map.join(" "));
            }
            print!("{r}");
            Ok(())
        }
        Command::YbeCheck { gate, group: name } => {
            let gate: PairGate = match (gate, name) {
                (Some(p), _) => parse(&p, formats::parse_gate)?,
                (None, Some(n)) => PairGate::r_gate(&group(&n)?),
                (None, None) => unreachable!("clap requires gate or group"),
            };
            let mut r = Report::new();
            r.push("dim", gate.d());
            let violation = gate.yang_baxter_violation();
            r.push("holds", violation.is_none());
            if let Some((a, b, c)) = violation {
                r.push("violation", format!("{a} {b} {c}"));
            }
            print!("{r}");
            if violation.is_none() {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Command::Selftest { only } => {
            let ids: Vec<u8> = if only.is_empty() {
                CRITERIA.iter().map(|(id, _)| *id).collect()
            } else {
                only
            };
            let mut all_passed = true;
            for id in ids {
                let result = acceptance::run(id)?;
                all_passed &= result.passed;
                println!("{result}");
            }
            if all_passed {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
    }
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines().find_map(|l| l.split('#').next().unwrap_or("").split_whitespace().next())
}

fn element(g: &GroupTable, text: &str) -> CliResult<GElem> {
    match text.parse::<usize>() {
        Ok(i) => Ok(g.element(i)?),
        Err(_) => Ok(g.parse_cycles(text)?),
    }
}

fn describe_failure(f: &PeelFailure) -> String {
    match f {
        PeelFailure::NoPassingGuess { peeled } => format!("no-passing-guess after {peeled}"),
        PeelFailure::Ambiguous { peeled, candidates } => {
            format!("ambiguous after {peeled} ({} candidates)", candidates.len())
        }
        PeelFailure::TooManyGates => "too-many-gates".into(),
        PeelFailure::BudgetExhausted => "budget-exhausted".into(),
    }
}
