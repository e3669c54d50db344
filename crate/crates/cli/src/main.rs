//! `semicomm`: commutators, classification and cross-verification for finite
//! semigroups from the command line.

mod input;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use semicomm::commutator::{DEFAULT_ARITY_CAP, DEFAULT_TUPLE_CAP};
use semicomm::harness::{enumerate, Dedup, EnumerationJob, Filter, Suite, VerifyConfig};
use semicomm::semigroup::{rees_matrix, ReesSpec, DEFAULT_ORDER_CAP};
use semicomm::structure::{self, is_completely_simple};
use semicomm::words::{self, Coverage, DEFAULT_SUBSTITUTION_CAP, DEFAULT_WORD_CAP};
use semicomm::{classify_definitional, classify_structural, Commutators, Limits, SeriesKind};

use render::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] semicomm::Error),
    #[error("verification failed: {0} counterexample(s)")]
    Verification(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Core(semicomm::Error::ResourceLimit { .. }) => 2,
            CliError::Core(_) => 1,
            CliError::Verification(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "semicomm", version, about = "Term-condition commutators for finite semigroups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, env = "SEMICOMM_FORMAT")]
    format: Format,
    /// Largest commutator arity tried for supernilpotence.
    #[arg(long, global = true, default_value_t = DEFAULT_ARITY_CAP, env = "SEMICOMM_ARITY_CAP")]
    arity_cap: usize,
    /// Largest tuple algebra generated before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_TUPLE_CAP, env = "SEMICOMM_TUPLE_CAP")]
    tuple_cap: usize,
    /// Worker threads for `verify`.
    #[arg(long, global = true, env = "SEMICOMM_JOBS")]
    jobs: Option<usize>,
    /// Seed for sampling modes.
    #[arg(long, global = true, default_value_t = 0, env = "SEMICOMM_SEED")]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a table and report identity, zero and idempotents.
    Validate { table: Option<String> },
    /// Solvable, nilpotent and supernilpotent classes.
    Classify {
        table: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Definitional)]
        method: MethodArg,
    },
    /// The commutator of a list of congruences.
    Commutator {
        table: Option<String>,
        /// Comma-separated `0`, `1` or partitions like `[[0,1],[2]]`.
        #[arg(long, default_value = "1,1")]
        args: String,
    },
    /// A descending commutator series from `1`.
    Series {
        table: Option<String>,
        #[arg(long, value_enum, default_value_t = SeriesArg::Derived)]
        kind: SeriesArg,
    },
    /// Kernel, its simplicity and the least `m` with `S^m` inside it.
    Kernel { table: Option<String> },
    /// Rees matrix semigroups.
    Rees {
        #[command(subcommand)]
        command: ReesCommand,
    },
    /// Free-monoid and `q_n` tools.
    Words {
        #[command(subcommand)]
        command: WordsCommand,
    },
    /// Semigroups of one order, up to isomorphism by default.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// none, iso or iso-anti.
        #[arg(long, default_value = "iso")]
        dedup: Dedup,
        /// all, monoid or with-zero.
        #[arg(long, default_value = "all")]
        filter: Filter,
        /// Print only the count.
        #[arg(long)]
        count: bool,
        /// Order 5 takes seconds and produces 1915 tables.
        #[arg(long)]
        allow_order_5: bool,
    },
    /// Run the cross-verification suites.
    Verify {
        #[arg(long = "n", default_value_t = 4)]
        n_max: usize,
        /// Comma-separated suite names or `all`.
        #[arg(long, default_value = "all")]
        suites: String,
        /// Monoid order for the `n = 1` checks; defaults to `--n`.
        #[arg(long)]
        monoid_n1_order: Option<usize>,
        /// Random congruence tuples at order 4.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Word length for the free-monoid suite.
        #[arg(long, default_value_t = 8)]
        free_maxlen: usize,
    },
}

#[derive(Subcommand)]
enum ReesCommand {
    /// Rees coordinates of the kernel.
    Decompose { table: Option<String> },
    /// Build `M(G; I, Λ; P)` and print its table.
    Build {
        /// Group table file or fixture name.
        #[arg(long)]
        group: String,
        #[arg(long = "i")]
        i_size: usize,
        #[arg(long = "lambda")]
        lambda_size: usize,
        /// `Λ × I` matrix of group indices, e.g. `[[0,0],[0,1]]`.
        #[arg(long)]
        sandwich: String,
    },
}

#[derive(Subcommand)]
enum WordsCommand {
    /// Whether `q_n(x,y,z) ≈ q_n(y,x,z)` holds.
    QnCheck {
        table: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Check this many random substitutions instead of all.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// `ρ_n` of a table, or its classes in the free monoid with `--free`.
    Rho {
        table: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        free: bool,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        /// Include every class member, not just normal forms.
        #[arg(long)]
        full: bool,
    },
    /// Left and right cancellativity.
    Cancellative { table: Option<String> },
    /// Embeddability into an `n`-nilpotent group.
    Embed {
        table: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Lallement shapes of two-letter words.
    Lallement { words: Vec<String> },
    /// Bounded search for a cancellation failure of `ρ_2`.
    Search {
        #[arg(long, default_value_t = 3)]
        alphabet: usize,
        #[arg(long, default_value_t = 8)]
        maxlen: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Definitional,
    Structural,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Derived,
    Left,
    Right,
    /// `[1,1] ≥ [1,1,1] ≥ …` up to the arity cap.
    Super,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let limits = Limits {
        arity_cap: cli.arity_cap,
        tuple_cap: cli.tuple_cap,
    };
    let fmt = cli.format;
    match cli.command {
        Command::Validate { table } => {
            let s = input::load_table(table.as_deref())?;
            let info = json!({
                "order": s.order(),
                "identity": s.identity(),
                "zero": s.zero(),
                "idempotents": s.idempotents(),
                "commutative": s.is_commutative(),
            });
            render::emit(fmt, &info, || render::key_values(&info), None)
        }
        Command::Classify { table, method } => {
            let s = input::load_table(table.as_deref())?;
            match method {
                MethodArg::Definitional => {
                    let r = classify_definitional(&s, &limits)?;
                    render::emit(fmt, &r, || render::report(&r), None)
                }
                MethodArg::Structural => {
                    let r = classify_structural(&s)?;
                    render::emit(fmt, &r, || render::report(&r), None)
                }
                MethodArg::Both => {
                    let d = classify_definitional(&s, &limits)?;
                    let st = classify_structural(&s)?;
                    let text = || format!("{}\n{}", render::report(&d), render::report(&st));
                    render::emit(fmt, &json!({ "definitional": d, "structural": st }), text, None)
                }
            }
        }
        Command::Commutator { table, args } => {
            let s = input::load_table(table.as_deref())?;
            let args = input::parse_congruences(&s, &args)?;
            if args.len() < 2 {
                return Err(CliError::Input("a commutator needs at least two arguments".into()));
            }
            let c = semicomm::tc_commutator(&s, &args, &limits)?;
            render::emit(fmt, &c, || c.to_string(), None)
        }
        Command::Series { table, kind } => {
            let s = input::load_table(table.as_deref())?;
            let terms = match kind {
                SeriesArg::Super => semicomm::supernilpotent_chain(&s, limits.arity_cap, &limits)?,
                k => {
                    let kind = match k {
                        SeriesArg::Derived => SeriesKind::Derived,
                        SeriesArg::Left => SeriesKind::Left,
                        _ => SeriesKind::Right,
                    };
                    Commutators::new(&s, limits).series(kind)?
                }
            };
            let text = || terms.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
            render::emit(fmt, &terms, text, None)
        }
        Command::Kernel { table } => {
            let s = input::load_table(table.as_deref())?;
            let k = structure::kernel(&s);
            let (simple, witness) = is_completely_simple(&s, &k)?;
            let info = json!({
                "kernel": k,
                "completely_simple": simple,
                "witness": witness,
                "extension_index": structure::extension_index(&s, &k),
            });
            render::emit(fmt, &info, || render::key_values(&info), None)
        }
        Command::Rees { command } => rees(fmt, command),
        Command::Words { command } => words_cmd(fmt, cli.seed, command),
        Command::Enumerate {
            order,
            dedup,
            filter,
            count,
            allow_order_5,
        } => {
            if order == 5 && !allow_order_5 {
                return Err(CliError::Input("order 5 needs --allow-order-5".into()));
            }
            let tables = enumerate(EnumerationJob { order, dedup, filter })?;
            let row = format!("order\tcount\n{order}\t{}\n", tables.len());
            if count {
                let c = json!({ "order": order, "count": tables.len() });
                return render::emit(fmt, &c, || tables.len().to_string(), Some(row));
            }
            let json: Vec<_> = tables.iter().map(|t| t.to_json()).collect();
            let text = || tables.iter().map(|t| t.to_text()).collect::<Vec<_>>().join("\n");
            render::emit(fmt, &json, text, Some(row))
        }
        Command::Verify {
            n_max,
            suites,
            monoid_n1_order,
            samples,
            free_maxlen,
        } => {
            let mut config = VerifyConfig::new(n_max, Suite::parse_list(&suites)?);
            config.limits = limits;
            config.seed = cli.seed;
            config.jobs = cli.jobs;
            config.containment_samples = samples;
            config.free_max_len = free_maxlen;
            if let Some(m) = monoid_n1_order {
                config.monoid_n1_order = m;
            }
            let report = semicomm::harness::verify(&config)?;
            render::emit(fmt, &report, || render::verification(&report), Some(report.to_tsv()))?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Verification(report.total_failed))
            }
        }
    }
}

fn rees(fmt: Format, command: ReesCommand) -> Result<(), CliError> {
    match command {
        ReesCommand::Decompose { table } => {
            let s = input::load_table(table.as_deref())?;
            let k = structure::kernel(&s);
            let d = structure::rees_decompose(&s, &k)?;
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                decomposition: &'a structure::KernelDecomposition,
                group_table: Vec<Vec<usize>>,
            }
            let out = Out {
                decomposition: &d,
                group_table: d.group.rows(),
            };
            let text = || {
                let mut t = format!(
                    "kernel {:?}\n|I| = {}, |Λ| = {}, |G| = {}\nsandwich {:?}\n",
                    d.kernel,
                    d.i_count,
                    d.lambda_count,
                    d.group.order(),
                    d.sandwich
                );
                for (x, c) in d.coords.iter().enumerate() {
                    if let Some(c) = c {
                        t.push_str(&format!("{x} = ({}, {}, {})\n", c.i, c.g, c.lambda));
                    }
                }
                t.trim_end().to_string()
            };
            render::emit(fmt, &out, text, None)
        }
        ReesCommand::Build {
            group,
            i_size,
            lambda_size,
            sandwich,
        } => {
            let group = input::load_table(Some(&group))?;
            let sandwich: Vec<Vec<usize>> =
                serde_json::from_str(&sandwich).map_err(|e| CliError::Input(format!("sandwich: {e}")))?;
            let r = rees_matrix(
                &ReesSpec {
                    group,
                    i_size,
                    lambda_size,
                    sandwich,
                },
                DEFAULT_ORDER_CAP,
            )?;
            render::emit(fmt, &r.semigroup.to_json(), || r.semigroup.to_text(), None)
        }
    }
}

fn words_cmd(fmt: Format, seed: u64, command: WordsCommand) -> Result<(), CliError> {
    match command {
        WordsCommand::QnCheck { table, n, samples } => {
            let s = input::load_table(table.as_deref())?;
            let coverage = match samples {
                Some(samples) => Coverage::Sampled { samples, seed },
                None => Coverage::default(),
            };
            let r = words::check_qn_identity(&s, n, coverage)?;
            render::emit(fmt, &r, || render::key_values(&serde_json::to_value(&r).unwrap()), None)
        }
        WordsCommand::Rho {
            table,
            n,
            free,
            alphabet,
            maxlen,
            full,
        } => {
            if free {
                let classes = words::free_rho_classes(alphabet, n, maxlen, DEFAULT_WORD_CAP)?;
                let (json, text, tsv) = render::free_classes(&classes, full);
                render::emit(fmt, &json, || text, Some(tsv))
            } else {
                let s = input::load_table(table.as_deref())?;
                let c = words::rho_n(&s, n, DEFAULT_SUBSTITUTION_CAP)?;
                render::emit(fmt, &c, || c.to_string(), None)
            }
        }
        WordsCommand::Cancellative { table } => {
            let s = input::load_table(table.as_deref())?;
            let w = words::cancellation_failure(&s);
            let info = json!({ "cancellative": w.is_none(), "witness": w });
            render::emit(fmt, &info, || render::key_values(&info), None)
        }
        WordsCommand::Embed { table, n } => {
            let s = input::load_table(table.as_deref())?;
            let v = words::nt_embeddable(&s, n)?;
            render::emit(fmt, &v, || render::key_values(&serde_json::to_value(&v).unwrap()), None)
        }
        WordsCommand::Lallement { words: ws } => {
            let rows = ws
                .iter()
                .map(|w| {
                    let word = words::parse_word(w)?;
                    Ok(json!({ "word": w, "shape": words::lallement_shape(&word) }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let text = || {
                rows.iter()
                    .map(|r| format!("{}\t{}", r["word"].as_str().unwrap(), r["shape"]))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            render::emit(fmt, &rows, text, None)
        }
        WordsCommand::Search { alphabet, maxlen } => {
            let r = words::search_cancellation_failure(alphabet, maxlen, DEFAULT_WORD_CAP)?;
            let text = || match &r {
                words::CancellationSearch::Found { failure } => format!(
                    "found: {:?} letter {}: {} and {} are not equivalent but become so",
                    failure.side,
                    words::word_to_string(&[failure.letter]),
                    words::word_to_string(&failure.b),
                    words::word_to_string(&failure.c)
                ),
                words::CancellationSearch::Inconclusive { max_len } => {
                    format!("inconclusive up to length {max_len}")
                }
            };
            let info = match &r {
                words::CancellationSearch::Found { failure } => json!({
                    "result": "found",
                    "side": failure.side,
                    "letter": words::word_to_string(&[failure.letter]),
                    "b": words::word_to_string(&failure.b),
                    "c": words::word_to_string(&failure.c),
                }),
                words::CancellationSearch::Inconclusive { max_len } => {
                    json!({ "result": "inconclusive", "max_len": max_len })
                }
            };
            render::emit(fmt, &info, text, None)
        }
    }
}
