//! `redup`: compile grammars, generate word forms, parse surface strings.
//!
//! Exit status: 0 on success or ACCEPT, 1 on REJECT or an empty result,
//! 2 on usage, IO, syntax and compile errors.

mod settings;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use redup::dump;
use redup::enumerate::{enumerate_paths_capped, surface_forms_capped};
use redup::interpret;
use redup::lazy::{materialize, DEFAULT_BUDGET};
use redup::normalize::minimize;
use redup::regex::{parse_source, Expr, Grammar};
use redup::Fsa;

use settings::{Engine, Format, Settings};

#[derive(Parser)]
#[command(name = "redup", version, about = "Finite-state reduplication grammars")]
struct Cli {
    /// TOML file with defaults for engine, format, max and max_len.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Grammar file.
    grammar: PathBuf,

    /// Definition name or expression; defaults to `main`, else the last
    /// zero-argument definition.
    entry: Option<String>,

    /// Use the entry exactly as written, without word-form resolution.
    #[arg(long)]
    as_is: bool,
}

#[derive(Args, Default)]
struct EngineFlags {
    #[arg(long, conflicts_with = "eager")]
    lazy: bool,
    #[arg(long)]
    eager: bool,
}

impl EngineFlags {
    fn get(&self) -> Option<Engine> {
        match (self.lazy, self.eager) {
            (true, _) => Some(Engine::Lazy),
            (_, true) => Some(Engine::Eager),
            _ => None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compile an entry and write its minimized dump.
    Compile {
        #[command(flatten)]
        target: Target,
        /// Output file; stdout if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// List the forms of an entry, sorted and deduplicated.
    Generate {
        #[command(flatten)]
        target: Target,
        /// Print surface spellings (default).
        #[arg(long, conflicts_with = "raw")]
        surface: bool,
        /// Print symbol paths including repeat and skip.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        engine: EngineFlags,
        /// Stop after this many results.
        #[arg(long)]
        max: Option<usize>,
        /// Longest path considered.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Decide whether a surface string is a form of an entry.
    Parse {
        grammar: PathBuf,
        /// `[entry] <string>`
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
        #[arg(long)]
        as_is: bool,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Print an entry as a Graphviz digraph.
    DumpDot {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        engine: EngineFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let file = match &cli.config {
        Some(path) => Some(settings::load(path)?),
        None => None,
    };
    let env = std::env::var("REDUP_ENGINE").ok();
    match cli.command {
        Command::Compile { target, output, engine } => {
            let s = Settings::resolve(engine.get(), None, None, None, file.as_ref(), env.as_deref())?;
            let a = minimize(&build(&target, s.engine)?);
            let text = dump::to_text(&a);
            match output {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            eprintln!("states: {} arcs: {}", a.num_states(), a.num_arcs());
            Ok(status(!a.is_empty()))
        }
        Command::Generate { target, surface, raw, engine, max, max_len } => {
            let format = match (surface, raw) {
                (true, _) => Some(Format::Surface),
                (_, true) => Some(Format::Raw),
                _ => None,
            };
            let s = Settings::resolve(engine.get(), format, max, max_len, file.as_ref(), env.as_deref())?;
            let a = minimize(&build(&target, s.engine)?);
            let (lines, truncated) = match s.format {
                Format::Surface => {
                    let r = surface_forms_capped(&a, s.max_len, s.max)?;
                    (r.items.into_iter().collect::<Vec<_>>(), r.truncated)
                }
                Format::Raw => {
                    let inv = a.inventory().clone();
                    let r = enumerate_paths_capped(&a, s.max_len, s.max)?;
                    let mut lines: Vec<String> = r
                        .items
                        .iter()
                        .map(|p| p.iter().map(|l| inv.format_set(&l.symbols)).collect::<Vec<_>>().join(" "))
                        .collect();
                    lines.sort();
                    lines.dedup();
                    (lines, r.truncated)
                }
            };
            for line in &lines {
                println!("{line}");
            }
            if truncated {
                eprintln!("warning: stopped after {} results; raise --max for more", s.max);
            }
            Ok(status(!lines.is_empty()))
        }
        Command::Parse { grammar, mut args, as_is, engine } => {
            let text = args.pop().expect("clap requires the string");
            let target = Target { grammar, entry: args.pop(), as_is };
            let s = Settings::resolve(engine.get(), None, None, None, file.as_ref(), env.as_deref())?;
            let a = build(&target, s.engine)?;
            let accepted = interpret::accepts(&a, &text)?;
            println!("{}", if accepted { "ACCEPT" } else { "REJECT" });
            Ok(status(accepted))
        }
        Command::DumpDot { target, engine } => {
            let s = Settings::resolve(engine.get(), None, None, None, file.as_ref(), env.as_deref())?;
            let a = minimize(&build(&target, s.engine)?);
            let name = target.entry.as_deref().unwrap_or("main");
            print!("{}", dump::to_dot(&a, name));
            Ok(status(!a.is_empty()))
        }
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load_grammar(path: &Path) -> Result<Grammar> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_source(&text).with_context(|| format!("{}", path.display()))
}

fn build(target: &Target, engine: Engine) -> Result<Fsa> {
    let g = load_grammar(&target.grammar)?;
    let entry = match &target.entry {
        Some(e) => e.clone(),
        None => match g.default_entry() {
            Some(e) => e.to_string(),
            None => bail!("{} defines no zero-argument entry", target.grammar.display()),
        },
    };
    let mut expr = g.parse_expr(&entry).with_context(|| format!("entry `{entry}`"))?;
    if !target.as_is {
        expr = word_form(&g, expr);
    }
    let a = match engine {
        Engine::Eager => g.compile(&expr)?,
        Engine::Lazy => materialize(&g.compile_lazy(&expr)?, DEFAULT_BUDGET)?,
    };
    Ok(a.trim())
}

/// An entry that is not already a closed interpretation is a lexicon entry:
/// run it through the grammar's `wordform(..)` if there is one, else close it.
fn word_form(g: &Grammar, e: Expr) -> Expr {
    if is_closed(g, &e, 0) {
        return e;
    }
    let wrapper = match g.macros().get("wordform") {
        Some(m) if m.params.len() == 1 => "wordform",
        _ => "closed_interpretation",
    };
    Expr::call(wrapper, vec![e])
}

fn is_closed(g: &Grammar, e: &Expr, depth: usize) -> bool {
    if depth > 64 {
        return false;
    }
    match e {
        Expr::Call { name, .. } if name == "closed_interpretation" => true,
        Expr::Call { name, args, .. } => g.expand_call(name, args).is_some_and(|b| is_closed(g, &b, depth + 1)),
        Expr::Name { name, .. } => g.expand_call(name, &[]).is_some_and(|b| is_closed(g, &b, depth + 1)),
        Expr::Union(items) => items.iter().all(|x| is_closed(g, x, depth + 1)),
        _ => false,
    }
}
