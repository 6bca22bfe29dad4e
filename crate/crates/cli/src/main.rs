//! `cark` — command-line access to the dictionary between indefinite binary
//! quadratic forms, hyperbolic elements of the modular group, and çarks.
//!
//! Input grammars: forms are `A,B,C`, matrices `p,q,r,s`, words
//! `a1,b1;a2,b2;...`, necklaces raw binary strings. Output is line-oriented
//! text, or JSON with `--json`. Exit codes: 0 success, 1 domain error,
//! 2 malformed input.

use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cark_core::bqf::Form;
use cark_core::cark::{cark_document, cark_of_form, to_dot};
use cark_core::class_group::{carks_of_trace_parallel, discriminant_report_parallel};
use cark_core::combinatorics::{aperiodic_count, bracelet_count, lyndon_words, necklace_count};
use cark_core::invariants::{invariants_of, markoff_value};
use cark_core::pell::{
    form_to_matrices, fundamental_automorphism, matrix_to_form, pell4_fundamental,
};
use cark_core::psl2::{matrix_to_word, word_to_matrix, BlockWord, ProjMat};
use cark_core::Error;

#[derive(Parser)]
#[command(
    name = "cark",
    about = "Indefinite binary quadratic forms, the modular group, and çarks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gauss-reduce a form
    Reduce {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the reduction cycle of a form's class
    Cycle {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        json: bool,
    },
    /// Fundamental solution of X^2 - delta Y^2 = 4
    Pell {
        #[arg(allow_hyphen_values = true)]
        delta: String,
        #[arg(long)]
        json: bool,
    },
    /// The two fundamental automorphism matrices of a form
    Form2mat {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        json: bool,
    },
    /// The primitive form attached to a hyperbolic matrix
    Mat2form {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Conjugacy normal form of a hyperbolic matrix as a block word
    Mat2word {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a block word to a matrix
    Word2mat {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// The çark of a form class, as DOT (default) or JSON
    Cark {
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// Farey branch truncation depth in the DOT rendering
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long)]
        json: bool,
    },
    /// Exact and floating invariants of a form's çark
    Invariants {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        json: bool,
    },
    /// The Markoff value sqrt(delta)/min|f|
    Markoff {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        json: bool,
    },
    /// Class- and word-level symmetry predicates of a form
    Symmetry {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        json: bool,
    },
    /// Class number of a discriminant
    Classnum {
        #[arg(allow_hyphen_values = true)]
        delta: String,
        /// Print one line per reduction cycle instead of the bare count
        #[arg(long)]
        cycles: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// All çarks of a given trace, via tau^2 - 4 = delta y^2
    TraceList {
        #[arg(allow_hyphen_values = true)]
        trace: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Necklace, bracelet, or aperiodic-necklace counts
    Count {
        kind: CountKind,
        n: u64,
        /// Print a table for 1..=max instead of a single count
        #[arg(long)]
        max: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// All binary Lyndon words of length <= n (n <= 40), in lexicographic order
    Lyndon {
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

fn float_repr(x: f64) -> String {
    // 15 significant digits
    format!("{x:.14e}")
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn domain_failure(message: &str) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn parse_bigint(text: &str, what: &str) -> Result<BigInt, Failure> {
    BigInt::from_str(text.trim())
        .map_err(|_| Error::Parse(format!("bad integer {text:?} for {what}")).into())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Reduce { form, json } => {
            let form: Form = form.parse()?;
            let (reduced, transform, steps) = form.reduce()?;
            if json {
                emit(json!({
                    "reduced": reduced.to_string(),
                    "transform": transform.to_string(),
                    "steps": steps,
                }));
            } else {
                println!("reduced: {reduced} steps: {steps}");
            }
        }
        Command::Cycle { form, json } => {
            let form: Form = form.parse()?;
            let cycle = form.cycle()?;
            if json {
                let members: Vec<String> = cycle.members().iter().map(Form::to_string).collect();
                emit(json!({ "cycle": members }));
            } else {
                for member in cycle.members() {
                    println!("{member}");
                }
            }
        }
        Command::Pell { delta, json } => {
            let delta = parse_bigint(&delta, "delta")?;
            let s = pell4_fundamental(&delta)?;
            if json {
                emit(json!({ "x": s.x().to_string(), "y": s.y().to_string() }));
            } else {
                println!("x={} y={}", s.x(), s.y());
            }
        }
        Command::Form2mat { form, json } => {
            let form: Form = form.parse()?;
            let (plus, minus) = form_to_matrices(&form)?;
            if json {
                emit(json!({
                    "matrix": plus.to_string(),
                    "inverse": minus.to_string(),
                }));
            } else {
                println!("{plus}");
                println!("{minus}");
            }
        }
        Command::Mat2form { matrix, json } => {
            let m: ProjMat = matrix.parse()?;
            let form = matrix_to_form(&m)?;
            if json {
                emit(json!({ "form": form.to_string() }));
            } else {
                println!("{form}");
            }
        }
        Command::Mat2word { matrix, json } => {
            let m: ProjMat = matrix.parse()?;
            let (word, conjugator) = matrix_to_word(&m)?;
            if json {
                emit(json!({
                    "word": word.to_string(),
                    "generators": word.to_rs_string(),
                    "conjugator": conjugator.to_string(),
                }));
            } else {
                println!("{word}");
                println!("conjugator: {conjugator}");
            }
        }
        Command::Word2mat { word, json } => {
            let word: BlockWord = word.parse()?;
            let m = word_to_matrix(&word);
            if json {
                emit(json!({ "matrix": m.to_string() }));
            } else {
                println!("{m}");
            }
        }
        Command::Cark { form, depth, json } => {
            let form: Form = form.parse()?;
            if json {
                let doc = cark_document(&form)?;
                emit(serde_json::to_value(doc).expect("documents serialize"));
            } else {
                let necklace = cark_of_form(&form)?;
                print!("{}", to_dot(&necklace, depth));
            }
        }
        Command::Invariants { form, json } => {
            let form: Form = form.parse()?;
            let delta = form.discriminant();
            let m = fundamental_automorphism(&form)?;
            let inv = invariants_of(&m)?;
            let pell = pell4_fundamental(&delta)?;
            let min = form.minimum()?;
            let markoff = markoff_value(&form)?;
            if json {
                emit(json!({
                    "tau": inv.trace.to_string(),
                    "delta_matrix": inv.matrix_discriminant.to_string(),
                    "delta_form": delta.to_string(),
                    "y": pell.y().to_string(),
                    "l_c": inv.spine_length.to_string(),
                    "min": min.to_string(),
                    "l_h": inv.hyperbolic_length,
                    "alpha": inv.multiplier,
                    "modulus": inv.modulus,
                    "markoff": markoff,
                }));
            } else {
                println!("tau={}", inv.trace);
                println!("delta_matrix={}", inv.matrix_discriminant);
                println!("delta_form={delta}");
                println!("y={}", pell.y());
                println!("l_c={}", inv.spine_length);
                println!("min={min}");
                println!("l_h={}", float_repr(inv.hyperbolic_length));
                println!("alpha={}", float_repr(inv.multiplier));
                println!("modulus={}", float_repr(inv.modulus));
                println!("markoff={}", float_repr(markoff));
            }
        }
        Command::Markoff { form, json } => {
            let form: Form = form.parse()?;
            let value = markoff_value(&form)?;
            if json {
                emit(json!({ "markoff": value }));
            } else {
                println!("{}", float_repr(value));
            }
        }
        Command::Symmetry { form, json } => {
            let form: Form = form.parse()?;
            let ambiguous = form.is_ambiguous_class()?;
            let reciprocal = form.is_reciprocal_class()?;
            let necklace = cark_of_form(&form)?;
            let reversal_fixed = necklace.reverse_r() == necklace;
            let reversal_swap_fixed = necklace.reverse_r().swap_m() == necklace;
            let primitive_cark = necklace.is_primitive();
            if json {
                emit(json!({
                    "ambiguous": ambiguous,
                    "reciprocal": reciprocal,
                    "reversal_fixed": reversal_fixed,
                    "reversal_swap_fixed": reversal_swap_fixed,
                    "primitive_cark": primitive_cark,
                }));
            } else {
                println!("ambiguous={ambiguous}");
                println!("reciprocal={reciprocal}");
                println!("reversal_fixed={reversal_fixed}");
                println!("reversal_swap_fixed={reversal_swap_fixed}");
                println!("primitive_cark={primitive_cark}");
            }
        }
        Command::Classnum {
            delta,
            cycles,
            jobs,
            json,
        } => {
            let delta = parse_bigint(&delta, "delta")?;
            let report = discriminant_report_parallel(&delta, jobs)?;
            if json {
                let cycle_lists: Vec<Vec<String>> = report
                    .cycles
                    .iter()
                    .map(|c| c.members().iter().map(Form::to_string).collect())
                    .collect();
                emit(json!({
                    "delta": delta.to_string(),
                    "class_number": report.class_number,
                    "cycles": cycle_lists,
                }));
            } else if cycles {
                for cycle in &report.cycles {
                    let members: Vec<String> =
                        cycle.members().iter().map(Form::to_string).collect();
                    println!("{}", members.join(" "));
                }
            } else {
                println!("{}", report.class_number);
            }
        }
        Command::TraceList { trace, jobs, json } => {
            let tau = parse_bigint(&trace, "trace")?;
            let entries = carks_of_trace_parallel(&tau, jobs)?;
            if json {
                let list: Vec<Value> = entries
                    .iter()
                    .map(|e| {
                        json!({
                            "delta": e.delta.to_string(),
                            "y": e.y.to_string(),
                            "classes": e
                                .representatives
                                .iter()
                                .map(Form::to_string)
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit(Value::Array(list));
            } else {
                for e in &entries {
                    let classes: Vec<String> =
                        e.representatives.iter().map(Form::to_string).collect();
                    println!("delta={} y={} classes={}", e.delta, e.y, classes.join(";"));
                }
            }
        }
        Command::Count { kind, n, max, json } => {
            let count = |n: u64| match kind {
                CountKind::Necklace => necklace_count(n),
                CountKind::Bracelet => bracelet_count(n),
                CountKind::Aperiodic => aperiodic_count(n),
            };
            match max {
                Some(limit) => {
                    if json {
                        let mut rows = Vec::new();
                        for k in 1..=limit {
                            rows.push(json!({ "n": k, "count": count(k)?.to_string() }));
                        }
                        emit(Value::Array(rows));
                    } else {
                        for k in 1..=limit {
                            println!("{k}\t{}", count(k)?);
                        }
                    }
                }
                None => {
                    let value = count(n)?;
                    if json {
                        emit(json!({ "n": n, "count": value.to_string() }));
                    } else {
                        println!("{value}");
                    }
                }
            }
        }
        Command::Lyndon { n, json } => {
            if n > 40 {
                return Err(domain_failure(
                    "lyndon enumeration is limited to n <= 40; the output volume grows as 2^n",
                ));
            }
            let render =
                |w: Vec<u8>| -> String { w.into_iter().map(|b| char::from(b'0' + b)).collect() };
            if json {
                let words: Vec<String> = lyndon_words(n).map(render).collect();
                emit(json!(words));
            } else {
                for word in lyndon_words(n) {
                    println!("{}", render(word));
                }
            }
        }
    }
    Ok(())
}

fn emit(value: Value) {
    println!("{}", serde_json::to_string(&value).expect("JSON output"));
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Necklace,
    Bracelet,
    Aperiodic,
}

fn main() {
    let cli = Cli::parse();
    if let Err(failure) = run(cli.command) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}
