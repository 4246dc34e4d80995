//! Command-line driver. [`run`] returns an [`Outcome`] instead of printing,
//! so the binary is a thin wrapper and tests can inspect everything.
//!
//! Exit codes: 0 success or "yes", 1 a checked property fails or "no",
//! 2 bad input, 3 internal inconsistency.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{VerifiedDba, DEFAULT_VIOLATION_CAP};
use crate::boolean::FiniteBooleanAlgebra;
use crate::catalog::{self, CatalogEntry};
use crate::congruence::{all_congruences, simple_by_criterion, Congruence};
use crate::construct::glued_sum;
use crate::enumerate::{enumerate_dbas_with, enumerate_verified, summary_table, EnumerateOptions};
use crate::error::DbaError;
use crate::format::{load_algebra, to_json_line, to_json_pretty, LabeledDba};
use crate::ideals::congruence_pairs;
use crate::report::{axiom_status, AlgebraReport};
use crate::skeleton::{is_pure, Skeleton};

/// Above this size `simple`/`si` skip the brute-force cross-check unless
/// `--oracle` is given.
pub const ORACLE_DEFAULT_MAX_SIZE: usize = 8;

/// Environment variable naming a directory that replaces the embedded catalog.
pub const DATA_ENV: &str = "DBA_LAB_DATA";

#[derive(Debug, Parser)]
#[command(
    name = "dba-lab",
    version,
    about = "Finite double Boolean algebra workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the defining identities; exit 0 iff all hold.
    Check {
        /// Algebra file, or a catalog name such as D3I.
        input: String,
        #[arg(long)]
        json: bool,
        /// Violations reported per identity (0 stops at the first).
        #[arg(long, default_value_t = DEFAULT_VIOLATION_CAP)]
        cap: usize,
    },
    /// Structure, types and congruence summary.
    Classify {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// The congruence lattice and, for pure algebras, the generating pairs.
    Congruences {
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Exit 0 iff the algebra is simple.
    Simple {
        input: String,
        #[arg(long)]
        json: bool,
        /// Decide by enumerating congruences and compare with the criterion.
        #[arg(long)]
        oracle: bool,
    },
    /// Exit 0 iff the algebra is subdirectly irreducible.
    Si {
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        oracle: bool,
    },
    /// Glued sum of two Boolean algebras stored in the algebra format.
    GluedSum {
        p: String,
        q: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All algebras of the given size up to isomorphism, as JSON lines.
    Enumerate {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        /// Allow sizes whose completeness is not certified.
        #[arg(long)]
        allow_uncertified: bool,
    },
    /// List the built-in algebras, or write them to a directory.
    Catalog {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Simple and SI algebras by type over all algebras of size at most 3.
    Table {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
}

/// What a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Settings normally taken from the environment.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub data_dir: Option<PathBuf>,
}

impl Context {
    pub fn from_env() -> Context {
        Context {
            data_dir: std::env::var_os(DATA_ENV).map(PathBuf::from),
        }
    }
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<DbaError> for Failure {
    fn from(e: DbaError) -> Self {
        match e {
            DbaError::Internal(_) => Failure::Internal(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn ok(stdout: String) -> CmdResult {
    Ok(Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

fn answer(yes: bool, stdout: String) -> CmdResult {
    Ok(Outcome {
        code: if yes { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, ctx: &Context) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli.command, ctx) {
        Ok(outcome) => outcome,
        Err(Failure::Input(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Internal(msg)) => Outcome {
            code: 3,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn dispatch(command: Command, ctx: &Context) -> CmdResult {
    match command {
        Command::Check { input, json, cap } => cmd_check(ctx, &input, json, cap),
        Command::Classify { input, json } => cmd_classify(ctx, &input, json),
        Command::Congruences {
            input,
            json,
            workers,
        } => with_workers(workers, || cmd_congruences(ctx, &input, json)),
        Command::Simple {
            input,
            json,
            oracle,
        } => cmd_predicate(ctx, &input, json, oracle, Predicate::Simple),
        Command::Si {
            input,
            json,
            oracle,
        } => cmd_predicate(ctx, &input, json, oracle, Predicate::Si),
        Command::GluedSum { p, q, out } => cmd_glued_sum(ctx, &p, &q, out.as_deref()),
        Command::Enumerate {
            n,
            out,
            workers,
            allow_uncertified,
        } => cmd_enumerate(
            n,
            out.as_deref(),
            EnumerateOptions {
                allow_uncertified,
                workers,
            },
        ),
        Command::Catalog { out, json } => cmd_catalog(ctx, out.as_deref(), json),
        Command::Table { json, workers } => with_workers(workers, || cmd_table(json)),
    }
}

fn with_workers(workers: Option<usize>, f: impl FnOnce() -> CmdResult + Send) -> CmdResult {
    match workers {
        None => f(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Failure::Internal(format!("worker pool: {e}")))?
            .install(f),
    }
}

fn catalog_entries(ctx: &Context) -> Result<Vec<CatalogEntry>, DbaError> {
    match &ctx.data_dir {
        Some(dir) => catalog::catalog_from_dir(dir),
        None => Ok(catalog::catalog()),
    }
}

/// A file path if it exists, otherwise a catalog name.
fn resolve(ctx: &Context, input: &str) -> Result<(String, LabeledDba), Failure> {
    let path = Path::new(input);
    if path.exists() {
        let name = path
            .file_stem()
            .map_or_else(|| input.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok((name, load_algebra(path)?));
    }
    let entries = catalog_entries(ctx)?;
    match catalog::find(&entries, input) {
        Ok(e) => Ok((
            e.name.to_string(),
            LabeledDba {
                algebra: e.algebra.as_dba().clone(),
                labels: Some(e.labels.clone()),
            },
        )),
        Err(_) => Err(Failure::Input(format!(
            "`{input}` is neither a readable file nor a catalog algebra"
        ))),
    }
}

fn resolve_verified(
    ctx: &Context,
    input: &str,
) -> Result<(String, LabeledDba, VerifiedDba), Failure> {
    let (name, labeled) = resolve(ctx, input)?;
    let verified = labeled
        .algebra
        .clone()
        .verify()
        .map_err(|e| Failure::Input(format!("{name} is not a double Boolean algebra: {e}")))?;
    Ok((name, labeled, verified))
}

fn cmd_check(ctx: &Context, input: &str, json: bool, cap: usize) -> CmdResult {
    let (name, labeled) = resolve(ctx, input)?;
    let statuses = axiom_status(&labeled.algebra, cap);
    let holds = statuses.iter().all(|s| s.pass);
    let stdout = if json {
        to_json(&json!({ "name": name, "is_dba": holds, "axioms": statuses }))
    } else {
        let mut s = String::new();
        if holds {
            writeln!(s, "{name}: all {} identities hold", statuses.len()).unwrap();
        } else {
            for st in statuses.iter().filter(|s| !s.pass) {
                for v in &st.violations {
                    let w: Vec<String> = v.witness.iter().map(|&x| labeled.label(x)).collect();
                    writeln!(
                        s,
                        "{name}: ({}) fails at ({}): {} != {}",
                        st.axiom,
                        w.join(", "),
                        labeled.label(v.lhs),
                        labeled.label(v.rhs)
                    )
                    .unwrap();
                }
            }
        }
        s
    };
    answer(holds, stdout)
}

fn cmd_classify(ctx: &Context, input: &str, json: bool) -> CmdResult {
    let (name, labeled, _) = resolve_verified(ctx, input)?;
    let report = AlgebraReport::build(&name, &labeled, 1)?;
    ok(if json {
        to_json(&report)
    } else {
        report.to_string()
    })
}

fn classes(labeled: &LabeledDba, c: &Congruence) -> Vec<Vec<String>> {
    c.classes()
        .iter()
        .map(|b| b.iter().map(|&x| labeled.label(x)).collect())
        .collect()
}

fn cmd_congruences(ctx: &Context, input: &str, json: bool) -> CmdResult {
    let (name, labeled, a) = resolve_verified(ctx, input)?;
    let con = all_congruences(&a);
    let partitions: Vec<Vec<Vec<String>>> = con
        .elements()
        .iter()
        .map(|c| classes(&labeled, c))
        .collect();
    let pairs = is_pure(&a).then(|| {
        let s = Skeleton::new(&a);
        congruence_pairs(&s)
            .pairs
            .iter()
            .map(|p| {
                let ideal: Vec<String> = p
                    .ideal_in_parent(&s)
                    .iter()
                    .map(|&x| labeled.label(x))
                    .collect();
                let filter: Vec<String> = p
                    .filter_in_parent(&s)
                    .iter()
                    .map(|&x| labeled.label(x))
                    .collect();
                (ideal, filter)
            })
            .collect::<Vec<_>>()
    });
    let distributive = con.is_distributive();
    let stdout = if json {
        to_json(&json!({
            "name": name,
            "con_size": con.len(),
            "distributive": distributive,
            "congruences": partitions,
            "pairs": pairs.as_ref().map(|ps| ps.iter().map(|(i, f)| json!({"ideal": i, "filter": f})).collect::<Vec<_>>()),
        }))
    } else {
        let mut s = String::new();
        writeln!(
            s,
            "{name}: |Con| = {} (distributive: {distributive})",
            con.len()
        )
        .unwrap();
        for p in &partitions {
            let blocks: Vec<String> = p.iter().map(|b| format!("{{{}}}", b.join(", "))).collect();
            writeln!(s, "  {}", blocks.join(" ")).unwrap();
        }
        if let Some(ps) = &pairs {
            writeln!(s, "generating pairs: {}", ps.len()).unwrap();
            for (i, f) in ps {
                writeln!(s, "  ({{{}}}, {{{}}})", i.join(", "), f.join(", ")).unwrap();
            }
        }
        s
    };
    ok(stdout)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Predicate {
    Simple,
    Si,
}

fn cmd_predicate(
    ctx: &Context,
    input: &str,
    json: bool,
    oracle: bool,
    which: Predicate,
) -> CmdResult {
    let (name, _, a) = resolve_verified(ctx, input)?;
    let by_criterion = {
        let simple = simple_by_criterion(&a)?;
        match which {
            Predicate::Simple => simple,
            // Finite algebras are SI exactly when simple, or trivially small.
            Predicate::Si => simple || a.size() == 1,
        }
    };
    let by_oracle = (oracle || a.size() <= ORACLE_DEFAULT_MAX_SIZE).then(|| {
        let con = all_congruences(&a);
        match which {
            Predicate::Simple => con.is_simple(),
            Predicate::Si => con.is_subdirectly_irreducible(),
        }
    });
    if let Some(o) = by_oracle {
        if o != by_criterion {
            return Err(Failure::Internal(format!(
                "{name}: criterion says {by_criterion}, congruence lattice says {o}"
            )));
        }
    }
    let verdict = if oracle {
        by_oracle.expect("oracle ran")
    } else {
        by_criterion
    };
    let label = match which {
        Predicate::Simple => "simple",
        Predicate::Si => "si",
    };
    let stdout = if json {
        to_json(&json!({
            "name": name,
            label: verdict,
            "criterion": by_criterion,
            "oracle": by_oracle,
            "agree": by_oracle.is_none_or(|o| o == by_criterion),
        }))
    } else {
        let mut s = format!("{label}: {verdict}\n");
        if let Some(o) = by_oracle {
            writeln!(
                s,
                "criterion: {by_criterion}, oracle: {o}, agree: {}",
                o == by_criterion
            )
            .unwrap();
        }
        s
    };
    answer(verdict, stdout)
}

fn boolean_input(ctx: &Context, input: &str) -> Result<FiniteBooleanAlgebra, Failure> {
    let (name, labeled) = resolve(ctx, input)?;
    FiniteBooleanAlgebra::from_dba(&labeled.algebra)
        .map(|b| b.into_inner())
        .map_err(|e| Failure::Input(format!("{name} is not a Boolean algebra: {e}")))
}

fn write_or_print(out: Option<&Path>, content: String, what: &str) -> CmdResult {
    match out {
        Some(path) => {
            std::fs::write(path, content).map_err(DbaError::from)?;
            ok(format!("wrote {what} to {}\n", path.display()))
        }
        None => ok(content),
    }
}

fn cmd_glued_sum(ctx: &Context, p: &str, q: &str, out: Option<&Path>) -> CmdResult {
    let p = boolean_input(ctx, p)?;
    let q = boolean_input(ctx, q)?;
    let sum = glued_sum(&p, &q)?;
    let mut text = to_json_pretty(&sum, None);
    text.push('\n');
    write_or_print(
        out,
        text,
        &format!("a glued sum with {} elements", sum.size()),
    )
}

fn cmd_enumerate(n: usize, out: Option<&Path>, opts: EnumerateOptions) -> CmdResult {
    let forms = enumerate_dbas_with(n, opts)?;
    let mut lines = String::new();
    for f in &forms {
        lines.push_str(&to_json_line(&f.to_dba()));
        lines.push('\n');
    }
    write_or_print(out, lines, &format!("{} algebras", forms.len()))
}

fn cmd_catalog(ctx: &Context, out: Option<&Path>, json: bool) -> CmdResult {
    let entries = catalog_entries(ctx)?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(DbaError::from)?;
        for e in &entries {
            let mut text = to_json_pretty(&e.algebra, Some(e.labels.clone()));
            text.push('\n');
            std::fs::write(dir.join(format!("{}.json", e.alias)), text).map_err(DbaError::from)?;
        }
        return ok(format!(
            "wrote {} algebras to {}\n",
            entries.len(),
            dir.display()
        ));
    }
    let stdout = if json {
        to_json(
            &entries
                .iter()
                .map(|e| json!({ "alias": e.alias, "name": e.name, "size": e.algebra.size() }))
                .collect::<Vec<_>>(),
        )
    } else {
        entries
            .iter()
            .map(|e| {
                format!(
                    "{:<6} {:<8} {} elements\n",
                    e.alias,
                    e.name,
                    e.algebra.size()
                )
            })
            .collect()
    };
    ok(stdout)
}

fn cmd_table(json: bool) -> CmdResult {
    let mut universe = Vec::new();
    for n in 1..=crate::enumerate::CERTIFIED_MAX_SIZE {
        universe.extend(enumerate_verified(n, EnumerateOptions::default())?);
    }
    let table = summary_table(&universe);
    let matches = table.matches_expected();
    let stdout = if json {
        to_json(&json!({
            "universe": table.universe,
            "columns": table.columns,
            "matches_expected": matches,
        }))
    } else {
        let mut s = table.to_string();
        writeln!(
            s,
            "universe: {} algebras; matches expected cells: {matches}",
            table.universe
        )
        .unwrap();
        s
    };
    answer(matches, stdout)
}
