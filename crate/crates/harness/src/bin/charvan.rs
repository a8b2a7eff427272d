use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use charvan::{
    cached_table, evaluate, load_group, run_corpus, Analysis, HarnessError, NamedGroup, Outcome,
    Param, Result, TheoremCase, TheoremId,
};
use charvan_core::{irreducible_characters, CharacterTable, PiSet};
use clap::{Parser, Subcommand};
use serde::Serialize;

/// Character tables and vanishing elements of permutation groups.
///
/// FILE is a group definition file or `builtin:NAME` for a catalog group.
#[derive(Parser)]
#[command(name = "charvan", version)]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table.
    Table {
        file: String,
        #[arg(long)]
        json: bool,
        /// Read and write tables in this directory.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Print the conjugacy classes.
    Classes { file: String },
    /// Print the vanishing data of each class, as JSON.
    Vanishing {
        file: String,
        /// Restrict to the classes inside this normal subgroup.
        #[arg(long)]
        normal: Option<String>,
    },
    /// Check one theorem on one group.
    Verify {
        file: String,
        #[arg(long)]
        theorem: String,
        #[arg(long, conflicts_with = "pi")]
        p: Option<u64>,
        /// Comma-separated primes; a trailing `'` takes the complement.
        #[arg(long)]
        pi: Option<String>,
        #[arg(long)]
        normal: Option<String>,
    },
    /// Sweep theorems over the built-in corpus.
    Corpus {
        /// Theorems to run (all when omitted).
        #[arg(long = "theorem")]
        theorems: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_pi(text: &str) -> Result<PiSet> {
    let (list, complement) = match text.trim().strip_suffix('\'') {
        Some(rest) => (rest, true),
        None => (text.trim(), false),
    };
    let list = list.trim_start_matches('{').trim_end_matches('}');
    let primes = list
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| HarnessError::input(format!("bad prime {p:?} in --pi")))
        })
        .collect::<Result<Vec<u64>>>()?;
    let pi = PiSet::new(primes)?;
    Ok(if complement { pi.complement() } else { pi })
}

fn render_table(named: &NamedGroup, t: &CharacterTable) -> String {
    let cd = t.classes();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}  order {}  {} classes",
        named.name,
        t.group().order(),
        cd.len()
    );
    for (i, c) in cd.classes().iter().enumerate() {
        let _ = writeln!(
            out,
            "c{i}: {} order {} size {}",
            c.rep, c.element_order, c.size
        );
    }
    let cells: Vec<Vec<String>> = (0..t.len())
        .map(|chi| t.row(chi).iter().map(|v| v.to_string()).collect())
        .collect();
    let width: Vec<usize> = (0..cd.len())
        .map(|c| {
            cells
                .iter()
                .map(|r| r[c].len())
                .max()
                .unwrap_or(1)
                .max(format!("c{c}").len())
        })
        .collect();
    let mut line = format!("{:<6}", "");
    for (c, w) in width.iter().enumerate() {
        let _ = write!(line, " {:>w$}", format!("c{c}"));
    }
    let _ = writeln!(out, "{}", line.trim_end());
    for (chi, row) in cells.iter().enumerate() {
        let mut line = format!("{:<6}", format!("X.{}", chi + 1));
        for (cell, w) in row.iter().zip(&width) {
            let _ = write!(line, " {cell:>w$}");
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}

#[derive(Serialize)]
struct VanishingEntry {
    rep: String,
    order: u64,
    size: u64,
    vanishing: bool,
    witness: Option<usize>,
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Table {
            file,
            json,
            cache_dir,
        } => {
            let named = load_group(&file)?;
            let table = match &cache_dir {
                Some(dir) => cached_table(dir, &named.name, &named.group)?.0,
                None => irreducible_characters(&named.group)?,
            };
            if json {
                let text = serde_json::to_string_pretty(&table.to_json(&named.name))
                    .expect("table serialises");
                println!("{text}");
            } else {
                print!("{}", render_table(&named, &table));
            }
            Ok(0)
        }
        Command::Classes { file } => {
            let named = load_group(&file)?;
            let cd = charvan_core::conjugacy_classes(&named.group);
            println!(
                "{}  order {}  {} classes",
                named.name,
                named.order(),
                cd.len()
            );
            for (i, c) in cd.classes().iter().enumerate() {
                println!(
                    "c{i}: {} order {} size {} centraliser {}",
                    c.rep,
                    c.element_order,
                    c.size,
                    named.order() / c.size
                );
            }
            Ok(0)
        }
        Command::Vanishing { file, normal } => {
            let named = load_group(&file)?;
            let table = irreducible_characters(&named.group)?;
            let cd = table.classes();
            let classes: Vec<usize> = match &normal {
                Some(id) => {
                    let n = named.normal(id).ok_or_else(|| {
                        HarnessError::input(format!(
                            "{} has no normal subgroup named {id}",
                            named.name
                        ))
                    })?;
                    charvan_core::vanishing::classes_in(&table, n)?
                }
                None => (0..cd.len()).collect(),
            };
            let entries: Vec<VanishingEntry> = classes
                .into_iter()
                .map(|c| {
                    let class = cd.class(c);
                    let witness = table.zero_at(c);
                    VanishingEntry {
                        rep: class.rep.to_string(),
                        order: class.element_order,
                        size: class.size,
                        vanishing: witness.is_some(),
                        witness,
                    }
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&entries).expect("serialises")
            );
            Ok(0)
        }
        Command::Verify {
            file,
            theorem,
            p,
            pi,
            normal,
        } => {
            let named = load_group(&file)?;
            let theorem: TheoremId = theorem.parse()?;
            let param = match (p, pi) {
                (Some(p), _) => Param::Prime(p),
                (None, Some(pi)) => Param::Pi(parse_pi(&pi)?),
                (None, None) => Param::None,
            };
            let case = TheoremCase::new(theorem, Analysis::new(named), normal, param)?;
            let r = evaluate(&case);
            println!("{}: {}", case.label(), r.outcome);
            println!("hypothesis: {:?}", r.hypothesis);
            println!("conclusion: {:?}", r.conclusion);
            for w in &r.witnesses {
                println!("  {w}");
            }
            Ok(match r.outcome {
                Outcome::Counterexample | Outcome::Error => 1,
                Outcome::ResourceCap => 3,
                _ => 0,
            })
        }
        Command::Corpus { theorems, json } => {
            let selection: Vec<TheoremId> = if theorems.is_empty() {
                TheoremId::ALL.to_vec()
            } else {
                theorems.iter().map(|t| t.parse()).collect::<Result<_>>()?
            };
            let jobs = cli.jobs.unwrap_or_else(rayon::current_num_threads);
            let report = run_corpus(&selection, jobs)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serialises")
                );
            } else {
                print!("{}", report.render());
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("charvan: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("charvan: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
