//! Command-line front end: `chartab`, `enumerate`, `analyze` and `verify`.

pub mod analysis;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use superchar::chartab::{dixon_with_bound, format_table, ingest_table};
use superchar::group::{catalog_group, parse_permutation_text, parse_table_text};
use superchar::supertheory::enumerate_scts;
use superchar::verifier::{default_catalog, run_corpus, CorpusEntry, CorpusOptions};
use superchar::{CharacterTable, GroupTable, SuperTheory};

#[derive(Parser)]
#[command(name = "superchar", version, about = "Supercharacter theories of small finite groups")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Refuse groups larger than this
    #[arg(long, global = true, default_value_t = 256)]
    max_order: usize,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table
    Chartab {
        #[arg(long)]
        group: String,
        /// Validate this table file instead of computing one
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// List every supercharacter theory
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Report the structure of one theory
    Analyze {
        #[arg(long)]
        group: String,
        /// finest, coarsest or index:k
        #[arg(long, default_value = "finest")]
        sct: String,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Check every result over a corpus
    Verify {
        /// Groups to check (repeatable)
        #[arg(long, conflicts_with = "catalog")]
        group: Vec<String>,
        /// Named corpus
        #[arg(long)]
        catalog: Option<String>,
        /// Enumerate all theories instead of finest and coarsest only
        #[arg(long)]
        all_scts: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn stem(path: &str) -> String {
    Path::new(path)
        .file_stem()
        .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned())
}

fn load_group(spec: &str, max_order: usize) -> Result<GroupTable> {
    let g = if let Some(path) = spec.strip_prefix("file:") {
        parse_table_text(&stem(path), &read(Path::new(path))?)?
    } else if let Some(path) = spec.strip_prefix("perm:") {
        parse_permutation_text(&stem(path), &read(Path::new(path))?)?
    } else {
        catalog_group(spec)?
    };
    if g.order() > max_order {
        bail!(superchar::Error::TooLarge {
            order: g.order(),
            bound: max_order
        });
    }
    Ok(g)
}

fn load_table(g: &GroupTable, table: Option<&Path>, max_order: usize) -> Result<Arc<CharacterTable>> {
    let t = match table {
        Some(path) => ingest_table(&read(path)?, g)?,
        None => dixon_with_bound(g, max_order)?,
    };
    Ok(Arc::new(t))
}

fn select(table: &Arc<CharacterTable>, sct: &str) -> Result<SuperTheory> {
    match sct {
        "finest" => Ok(SuperTheory::finest(table)),
        "coarsest" => Ok(SuperTheory::coarsest(table)?),
        _ => {
            let k: usize = sct
                .strip_prefix("index:")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| anyhow!("bad theory selector `{sct}` (finest, coarsest or index:k)"))?;
            let all = enumerate_scts(table)?;
            let count = all.len();
            all.into_iter()
                .nth(k)
                .ok_or_else(|| anyhow!("index {k} out of range: {count} theories"))
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(cli: &Cli, text: String) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Chartab { group, table } => {
            let g = load_group(group, cli.max_order)?;
            let t = load_table(&g, table.as_deref(), cli.max_order)?;
            let out = match cli.format {
                Format::Text => format_table(&t),
                Format::Json => json(&serde_json::json!({
                    "group": g.label(),
                    "order": g.order(),
                    "classes": t.classes().blocks(),
                    "degrees": t.degrees(),
                    "values": t.values(),
                })),
            };
            emit(cli, out)?;
        }
        Command::Enumerate { group, table } => {
            let g = load_group(group, cli.max_order)?;
            let t = load_table(&g, table.as_deref(), cli.max_order)?;
            let all = enumerate_scts(&t)?;
            let out = match cli.format {
                Format::Text => {
                    let mut s = String::new();
                    for (i, th) in all.iter().enumerate() {
                        s.push_str(&format!("theory {i}\n{}\n", th.to_text()));
                    }
                    s.push_str(&format!("count {}\n", all.len()));
                    s
                }
                Format::Json => {
                    let theories: Vec<_> = all.iter().map(|t| t.export()).collect();
                    json(&serde_json::json!({
                        "group": g.label(),
                        "count": all.len(),
                        "theories": theories,
                    }))
                }
            };
            emit(cli, out)?;
        }
        Command::Analyze { group, sct, table } => {
            let g = load_group(group, cli.max_order)?;
            let t = load_table(&g, table.as_deref(), cli.max_order)?;
            let s = select(&t, sct)?;
            let a = analysis::analyze(g.label(), &s)?;
            let out = match cli.format {
                Format::Text => a.to_text(),
                Format::Json => json(&a),
            };
            emit(cli, out)?;
        }
        Command::Verify {
            group,
            catalog,
            all_scts,
        } => {
            let entries = match catalog.as_deref() {
                Some("default") => default_catalog()?,
                Some(other) => bail!("unknown catalog `{other}`"),
                None if group.is_empty() => bail!("verify needs --group or --catalog"),
                None => group
                    .iter()
                    .map(|spec| {
                        let g = load_group(spec, cli.max_order)?;
                        Ok(CorpusEntry {
                            label: g.label().to_string(),
                            group: g,
                        })
                    })
                    .collect::<Result<_>>()?,
            };
            if let Some(e) = entries.iter().find(|e| e.group.order() > cli.max_order) {
                bail!(superchar::Error::TooLarge {
                    order: e.group.order(),
                    bound: cli.max_order
                });
            }
            let report = run_corpus(
                &entries,
                CorpusOptions {
                    all_scts: *all_scts,
                    jobs: cli.jobs,
                },
            )?;
            let out = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            emit(cli, out)?;
            if cli.out.is_some() {
                let s = report.summary;
                eprintln!("pass {}, fail {}, vacuous {}, n/a {}", s.pass, s.fail, s.vacuous, s.na);
            }
            if report.summary.fail > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(j) = cli.jobs {
        // enumeration runs on the global pool
        std::env::set_var("RAYON_NUM_THREADS", j.max(1).to_string());
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
