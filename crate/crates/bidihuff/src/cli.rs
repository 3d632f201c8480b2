//! Command-line front end.
//!
//! Every machine-readable report is either CSV or a JSON envelope carrying
//! the schema version and, for stochastic runs, the fully resolved
//! simulation configuration (including the master seed), so any output can
//! be reproduced from the report alone.
//!
//! Exit codes: 0 success, 1 domain error (invalid length vector, cap
//! exceeded, bad stream), 2 usage error.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::backtrie::{list_size_bound, BackwardTrie};
use crate::codebook::{BitString, Codebook, LengthVector};
use crate::decoder::{backward_decode, backward_decode_trace};
use crate::enumerator::{count_equivalent, enumerate_codes, complete_length_vectors};
use crate::measures::{m_measure, select_min_delay_code, EtaMode, MeasureReport};
use crate::published;
use crate::simlab::{
    anti_uniform_delay_closed, anti_uniform_delay_series, simulate_code, sweep_family, table3,
    SimConfig, SweepOutcome,
};

pub const SCHEMA_VERSION: u32 = 1;
const DEFAULT_FAMILY_CAP: u64 = 1_000_000;

#[derive(Parser)]
#[command(name = "bidihuff", version, about = "Backward-decoding delay toolkit for prefix codes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CodeArgs {
    /// Length vector as comma-separated bits; uses the canonical code.
    #[arg(short = 'L', long = "lengths", value_parser = parse_lengths)]
    lengths: Option<std::vec::Vec<u32>>,
    /// Codebook text file: one codeword per line, `#` comments.
    #[arg(long)]
    code_file: Option<PathBuf>,
    /// Canonical anti-uniform code for this alphabet size.
    #[arg(long, value_name = "N")]
    anti_uniform: Option<usize>,
}

#[derive(Args)]
struct SimArgs {
    /// Master seed for the per-string RNG streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random strings.
    #[arg(long)]
    strings: Option<u64>,
    /// Symbols per string.
    #[arg(long)]
    symbols: Option<u32>,
    /// Commit a decision early when the code tree forces the next codeword.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set, num_args = 0..=1, require_equals = false, default_missing_value = "true")]
    early_commit: bool,
    /// Disable early commits (overrides --early-commit).
    #[arg(long)]
    no_early_commit: bool,
    /// Reduced profile: 2000 strings instead of 20000.
    #[arg(long)]
    fast: bool,
}

impl SimArgs {
    fn resolve(&self) -> SimConfig {
        let mut cfg = if self.fast {
            SimConfig::fast(self.seed)
        } else {
            SimConfig::with_seed(self.seed)
        };
        if let Some(s) = self.strings {
            cfg.n_strings = s;
        }
        if let Some(s) = self.symbols {
            cfg.symbols_per_string = s;
        }
        cfg.early_commit = self.early_commit && !self.no_early_commit;
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that a length vector is a complete code (Kraft sum exactly 1).
    Validate {
        #[arg(short = 'L', long = "lengths", value_parser = parse_lengths)]
        lengths: std::vec::Vec<u32>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List (or count) every prefix code with the given length vector.
    Enumerate {
        #[arg(short = 'L', long = "lengths", value_parser = parse_lengths)]
        lengths: std::vec::Vec<u32>,
        /// Print only the family size.
        #[arg(long)]
        count_only: bool,
        /// Abort if the family is larger than this.
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP)]
        cap: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Find the minimum-delay code of a family by the M-measure search.
    Search {
        #[arg(short = 'L', long = "lengths", value_parser = parse_lengths)]
        lengths: std::vec::Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP)]
        cap: u64,
        /// Score leaf squares +1 instead of 0 in the eta function.
        #[arg(long)]
        eta_leaves_positive: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Report the m+, m-delta and M measures of a code.
    Measure {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        eta_leaves_positive: bool,
        /// Also write the backward code tree in Graphviz DOT form.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Backward-decode a bit string and report every decision and delay.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Forward-order encoded bits, e.g. 0100110.
        #[arg(long)]
        bits: String,
        /// Print the per-bit scenario-list log.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        no_early_commit: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Monte Carlo delay statistics for one code.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Simulate a whole code family and report min/max/selected mean delay.
    Sweep {
        #[arg(short = 'L', long = "lengths", value_parser = parse_lengths)]
        lengths: std::vec::Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP)]
        cap: u64,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Closed-form anti-uniform delay theory.
    Theory {
        /// Alphabet size of the canonical anti-uniform code.
        #[arg(short = 'n', long, value_name = "N")]
        n: usize,
        /// Also print the truncated series with this many terms.
        #[arg(long)]
        terms: Option<u32>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Re-run a published reference table and print both value sets.
    Reproduce {
        /// One of: table3, table4, table5, table6.
        table: String,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP)]
        cap: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_lengths(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad length {p:?}: {e}")))
        .collect()
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema_version: u32,
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<SimConfig>,
    result: T,
}

struct Report {
    command: &'static str,
    config: Option<SimConfig>,
    csv: String,
    json: serde_json::Value,
}

fn resolve_code(args: &CodeArgs) -> Result<Codebook, String> {
    match (&args.lengths, &args.code_file, args.anti_uniform) {
        (Some(raw), None, None) => {
            let lv = LengthVector::new(raw).map_err(|e| e.to_string())?;
            Ok(Codebook::canonical(&lv))
        }
        (None, Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Codebook::from_text(&text).map_err(|e| e.to_string())
        }
        (None, None, Some(n)) => Codebook::anti_uniform(n).map_err(|e| e.to_string()),
        _ => Err("give exactly one of --lengths, --code-file, --anti-uniform".into()),
    }
}

fn rational_view(r: &num_rational::BigRational) -> serde_json::Value {
    serde_json::json!({
        "fraction": r.to_string(),
        "value": r.to_f64(),
    })
}

fn measure_json(report: &MeasureReport) -> serde_json::Value {
    serde_json::json!({
        "m_plus": rational_view(&report.m_plus),
        "m_delta": rational_view(&report.m_delta),
        "m_total": rational_view(&report.m_total),
    })
}

fn code_line(code: &Codebook) -> String {
    code.codewords()
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn lengths_label(lengths: &[u32]) -> String {
    let inner = lengths
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("({inner})")
}

fn sweep_csv_row(out: &mut String, o: &SweepOutcome) {
    let _ = writeln!(
        out,
        "{},{},{:.3},{:.3},{:.3},{:.3}",
        lengths_label(&o.lengths),
        o.count,
        o.min_dbar,
        o.max_dbar,
        o.selected_dbar,
        o.delta_d
    );
}

pub fn run(cli: Cli) -> Result<(), String> {
    let (out, report) = build_report(cli.command)?;
    emit_with(&out, &report)
}

fn build_report(command: Command) -> Result<(OutputArgs, Report), String> {
    match command {
        Command::Validate { lengths, out } => {
            let lv = LengthVector::new(&lengths).map_err(|e| e.to_string())?;
            finish(out, Report {
                command: "validate",
                config: None,
                csv: format!("{}\n", lengths_label(lv.lengths())),
                json: serde_json::json!({
                    "lengths": lv.lengths(),
                    "alphabet_size": lv.alphabet_size(),
                }),
            })
        }
        Command::Enumerate { lengths, count_only, cap, out } => {
            let lv = LengthVector::new(&lengths).map_err(|e| e.to_string())?;
            let count = count_equivalent(&lv);
            if count_only {
                return finish(out, Report {
                    command: "enumerate",
                    config: None,
                    csv: format!("{count}\n"),
                    json: serde_json::json!({ "count": count.to_string() }),
                });
            }
            let family = enumerate_codes(&lv, cap).map_err(|e| e.to_string())?;
            let codes: Vec<Codebook> = family.iter().collect();
            let mut csv = String::new();
            for c in &codes {
                let _ = writeln!(csv, "{}", code_line(c));
            }
            finish(out, Report {
                command: "enumerate",
                config: None,
                csv,
                json: serde_json::json!({
                    "count": count.to_string(),
                    "codes": codes.iter().map(code_line).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Search { lengths, cap, eta_leaves_positive, out } => {
            let lv = LengthVector::new(&lengths).map_err(|e| e.to_string())?;
            let mode = if eta_leaves_positive {
                EtaMode::LeavesPositive
            } else {
                EtaMode::LeavesZero
            };
            let (code, report) = select_min_delay_code(&lv, cap, mode).map_err(|e| e.to_string())?;
            finish(out, Report {
                command: "search",
                config: None,
                csv: format!(
                    "{}\n{}\n",
                    code_line(&code),
                    format_args!(
                        "m_plus={} m_delta={} m_total={}",
                        report.m_plus, report.m_delta, report.m_total
                    )
                ),
                json: serde_json::json!({
                    "code": code_line(&code),
                    "measures": measure_json(&report),
                }),
            })
        }
        Command::Measure { code, eta_leaves_positive, dot, out } => {
            let code = resolve_code(&code)?;
            let mode = if eta_leaves_positive {
                EtaMode::LeavesPositive
            } else {
                EtaMode::LeavesZero
            };
            if let Some(path) = dot {
                let trie = BackwardTrie::build(&code);
                fs::write(&path, trie.to_dot()).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let report = m_measure(&code, mode);
            finish(out, Report {
                command: "measure",
                config: None,
                csv: format!(
                    "m_plus,m_delta,m_total\n{},{},{}\n",
                    report.m_plus, report.m_delta, report.m_total
                ),
                json: serde_json::json!({
                    "code": code_line(&code),
                    "measures": measure_json(&report),
                    "list_size_bound": list_size_bound(&code),
                }),
            })
        }
        Command::Decode { code, bits, trace, no_early_commit, out } => {
            let code = resolve_code(&code)?;
            let bits: BitString = bits.parse().map_err(|e: crate::codebook::CodebookError| e.to_string())?;
            let trie = BackwardTrie::build(&code);
            let early = !no_early_commit;
            let (result, log) = if trace {
                let (r, log) = backward_decode_trace(&trie, &bits, early).map_err(|e| e.to_string())?;
                (r, Some(log))
            } else {
                (backward_decode(&trie, &bits, early).map_err(|e| e.to_string())?, None)
            };
            let mut csv = String::new();
            if let Some(log) = &log {
                for line in log {
                    let _ = writeln!(csv, "{line}");
                }
            }
            let _ = writeln!(csv, "decision_index,commit_time,first_end,delay,symbols");
            for e in &result.events {
                let syms = e
                    .symbols
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(csv, "{},{},{},{},{}", e.index, e.commit_time, e.first_end, e.delay, syms);
            }
            finish(out, Report {
                command: "decode",
                config: None,
                csv,
                json: serde_json::json!({
                    "result": result,
                    "trace": log,
                }),
            })
        }
        Command::Simulate { code, sim, out } => {
            let code = resolve_code(&code)?;
            let cfg = sim.resolve();
            let stats = simulate_code(&code, &cfg).map_err(|e| e.to_string())?;
            let mut csv = String::from("decision_index,mean_delay,count\n");
            for p in &stats.per_index_profile {
                let _ = writeln!(csv, "{},{:.6},{}", p.index, p.mean_delay, p.count);
            }
            finish(out, Report {
                command: "simulate",
                config: Some(cfg),
                csv,
                json: serde_json::json!({
                    "code": code_line(&code),
                    "stats": stats,
                }),
            })
        }
        Command::Sweep { lengths, cap, sim, out } => {
            let lv = LengthVector::new(&lengths).map_err(|e| e.to_string())?;
            let cfg = sim.resolve();
            let row = sweep_family(&lv, &cfg, cap).map_err(|e| e.to_string())?;
            let mut csv = String::from("length_vector,count,min_dbar,max_dbar,selected_dbar,delta_d\n");
            sweep_csv_row(&mut csv, &row);
            finish(out, Report {
                command: "sweep",
                config: Some(cfg),
                csv,
                json: serde_json::json!({ "row": row }),
            })
        }
        Command::Theory { n, terms, out } => {
            if n < 2 {
                return Err("alphabet size must be at least 2".into());
            }
            let closed = anti_uniform_delay_closed(n);
            let mut json = serde_json::json!({
                "n": n,
                "closed_form": rational_view(&closed),
            });
            let mut csv = format!("n,theory\n{},{:.6}\n", n, closed.to_f64().unwrap());
            if let Some(t) = terms {
                let p = crate::codebook::Codebook::anti_uniform(n)
                    .map_err(|e| e.to_string())?
                    .probability((n - 1) as u16);
                let series = anti_uniform_delay_series(n, &p, t);
                let _ = writeln!(csv, "series[{t}],{:.6}", series.to_f64().unwrap());
                json["series"] = rational_view(&series);
                json["terms"] = serde_json::json!(t);
            }
            finish(out, Report { command: "theory", config: None, csv, json })
        }
        Command::Reproduce { table, sim, cap, out } => reproduce(&table, sim, cap, out),
    }
}

fn reproduce(
    table: &str,
    sim: SimArgs,
    cap: u64,
    out: OutputArgs,
) -> Result<(OutputArgs, Report), String> {
    let cfg = sim.resolve();
    match table {
        "table3" => {
            let rows = table3(3..=12, &cfg).map_err(|e| e.to_string())?;
            let mut csv = String::from("n,theory,simulation,printed_theory,printed_simulation\n");
            let mut json_rows = Vec::new();
            for (row, printed) in rows.iter().zip(published::ANTI_UNIFORM_DELAYS) {
                let _ = writeln!(
                    csv,
                    "{},{:.4},{:.4},{},{}",
                    row.n, row.theory, row.simulation, printed.theory, printed.simulation
                );
                json_rows.push(serde_json::json!({
                    "n": row.n,
                    "theory": row.theory,
                    "simulation": row.simulation,
                    "stderr": row.stderr,
                    "printed_theory": printed.theory,
                    "printed_simulation": printed.simulation,
                }));
            }
            finish(out, Report {
                command: "reproduce",
                config: Some(cfg),
                csv,
                json: serde_json::json!({ "table": "table3", "rows": json_rows }),
            })
        }
        "table4" | "table5" | "table6" => {
            let m = match table {
                "table4" => 7,
                "table5" => 8,
                _ => 9,
            };
            let printed = published::sweep_rows(m).expect("published for 7..9");
            let vectors = complete_length_vectors(m);
            let mut csv = String::from(
                "length_vector,count,min_dbar,max_dbar,selected_dbar,delta_d,printed_min,printed_max,printed_selected,printed_delta\n",
            );
            let mut json_rows = Vec::new();
            for lv in &vectors {
                let row = sweep_family(lv, &cfg, cap).map_err(|e| e.to_string())?;
                let p = printed
                    .iter()
                    .find(|r| r.lengths == lv.lengths())
                    .expect("every complete vector is printed");
                let _ = writeln!(
                    csv,
                    "{},{},{:.3},{:.3},{:.3},{:.3},{},{},{},{}",
                    lengths_label(&row.lengths),
                    row.count,
                    row.min_dbar,
                    row.max_dbar,
                    row.selected_dbar,
                    row.delta_d,
                    p.min_dbar,
                    p.max_dbar,
                    p.selected_dbar,
                    p.delta_d
                );
                json_rows.push(serde_json::json!({
                    "row": row,
                    "printed": {
                        "count": p.family_size,
                        "min_dbar": p.min_dbar,
                        "max_dbar": p.max_dbar,
                        "selected_dbar": p.selected_dbar,
                        "delta_d": p.delta_d,
                    },
                }));
            }
            finish(out, Report {
                command: "reproduce",
                config: Some(cfg),
                csv,
                json: serde_json::json!({ "table": table, "rows": json_rows }),
            })
        }
        other => Err(format!("unknown table {other:?}; use table3|table4|table5|table6")),
    }
}

fn finish(out: OutputArgs, report: Report) -> Result<(OutputArgs, Report), String> {
    Ok((out, report))
}

fn emit_with(out: &OutputArgs, report: &Report) -> Result<(), String> {
    let body = match out.format {
        Format::Csv => report.csv.clone(),
        Format::Json => {
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command: report.command.to_string(),
                config: report.config.clone(),
                result: report.json.clone(),
            };
            let mut s = serde_json::to_string_pretty(&envelope).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
    };
    match &out.output {
        Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
