//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text to print, so it can be tested without a process.

use std::fmt::Write as _;
use std::fs::File;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::homs::{abelianise, in_commutator};
use crate::metrics::{bfs_ball, distortion_report, MetricReport, Subgroup, DEFAULT_CAP};
use crate::normal_form::{check_presentation, normalize, to_seminormal, NormalFormWord};
use crate::tree::{NodePath, Tree};
use crate::word::Word;
use crate::ztau::ZTau;

#[derive(Debug, Parser)]
#[command(
    name = "ftau",
    version,
    about = "Computations in the golden-ratio Thompson group F_tau"
)]
struct Cli {
    /// Aligned tables instead of terse output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of a word.
    Nf { word: String },
    /// Image of a point `a,b` (meaning a + b tau) under the element.
    Eval { word: String, point: String },
    /// Normal form of the product, first word applied first.
    Mul { first: String, second: String },
    /// Normal form of the inverse.
    Inv { word: String },
    /// Image in the abelianisation, as `(c_x1, c_y0, c_z)`.
    Ab { word: String },
    /// Whether the element lies in the commutator subgroup.
    InComm { word: String },
    /// D, N and, when within the ball, the exact word length.
    Metric {
        word: String,
        /// Radius of the ball used for exact lengths.
        #[arg(long, default_value_t = 5)]
        ball: u32,
    },
    /// Checks the defining relators of the presentation.
    CheckRelations {
        #[arg(long, default_value_t = 8)]
        max_index: u32,
    },
    /// Enumerates the ball of radius R in x0, x1, y0, y1.
    Ball {
        radius: u32,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
    },
    /// Compares subgroup and ambient lengths for fx, fy or fz.
    Distortion {
        subgroup: Subgroup,
        radius: u32,
        /// Radius of the ambient ball used for exact lengths (0 to skip).
        #[arg(long, default_value_t = 5)]
        ambient: u32,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
    },
    /// Breakpoints and leaf levels of a tree.
    TreePartition { tree: String },
    /// Applies a basic move at a path of `L`/`R` steps.
    BasicMove { tree: String, path: String },
}

/// Parses `argv` (program name first) and executes the command.
///
/// Exit codes: 0 on success, 1 on domain errors or failed checks, 2 on
/// unparsable input.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e @ Error::Parse(_)) => (2, format!("error: {e}\n")),
        Err(e) => (1, format!("error: {e}\n")),
    }
}

fn word(s: &str) -> Result<Word> {
    Ok(s.parse()?)
}

fn element(s: &str) -> Result<Element> {
    Ok(word(s)?.to_element())
}

fn nf_output(nf: &NormalFormWord, pretty: bool) -> String {
    if !pretty {
        return format!("{nf}\n");
    }
    let mut out = format!("{nf}\n");
    let _ = writeln!(out, "{:>4} {:>4} {:>4} {:>4}", "i", "a", "eps", "b");
    for line in nf.table().lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let _ = writeln!(
            out,
            "{:>4} {:>4} {:>4} {:>4}",
            cols[0], cols[1], cols[2], cols[3]
        );
    }
    out
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let pretty = cli.pretty;
    let ok = |s: String| Ok((0, s));
    match &cli.command {
        Command::Nf { word: w } => ok(nf_output(&normalize(&word(w)?), pretty)),
        Command::Eval { word: w, point } => {
            let g = element(w)?;
            let p: ZTau = point.parse()?;
            ok(format!("{}\n", g.eval(p)?))
        }
        Command::Mul { first, second } => {
            let g = element(first)?.multiply(&element(second)?);
            ok(nf_output(&NormalFormWord::of_element(&g), pretty))
        }
        Command::Inv { word: w } => ok(nf_output(&normalize(&word(w)?.inverse()), pretty)),
        Command::Ab { word: w } => ok(format!("{}\n", abelianise(&word(w)?))),
        Command::InComm { word: w } => {
            let g = to_seminormal(&element(w)?);
            ok(format!("{}\n", in_commutator(&g)?))
        }
        Command::Metric { word: w, ball } => {
            let nf = normalize(&word(w)?);
            let ball = bfs_ball(*ball, DEFAULT_CAP)?;
            let r = MetricReport::of(&nf, ball.length(&nf).map(u64::from));
            let len = r
                .exact_length
                .map(|l| l.to_string())
                .unwrap_or_else(|| "-".to_string());
            if pretty {
                ok(format!(
                    "normal form  {nf}\nD            {}\nN            {}\nlength       {len}\n",
                    r.d, r.n
                ))
            } else {
                ok(format!("D={} N={} length={len}\n", r.d, r.n))
            }
        }
        Command::CheckRelations { max_index } => {
            let report = check_presentation(*max_index)?;
            let failed: Vec<_> = report.iter().filter(|r| !r.holds).collect();
            let mut out = String::new();
            for r in &failed {
                let _ = writeln!(out, "FAIL ({}) {} = {}", r.family, r.lhs, r.rhs);
            }
            let _ = writeln!(
                out,
                "{} of {} relators hold",
                report.len() - failed.len(),
                report.len()
            );
            Ok((i32::from(!failed.is_empty()), out))
        }
        Command::Ball { radius, csv, cap } => {
            let ball = bfs_ball(*radius, *cap)?;
            if let Some(path) = csv {
                ball.write_csv(File::create(path).map_err(|e| Error::Io(e.to_string()))?)?;
            }
            let mut out = String::new();
            if pretty {
                let _ = writeln!(out, "{:>6} {:>10}", "length", "elements");
                for (l, n) in ball.sphere_sizes().iter().enumerate() {
                    let _ = writeln!(out, "{l:>6} {n:>10}");
                }
                let _ = writeln!(out, "{:>6} {:>10}", "total", ball.len());
            } else {
                out.push_str("length,elements\n");
                for (l, n) in ball.sphere_sizes().iter().enumerate() {
                    let _ = writeln!(out, "{l},{n}");
                }
            }
            ok(out)
        }
        Command::Distortion {
            subgroup,
            radius,
            ambient,
            csv,
            cap,
        } => {
            let ball = if *ambient > 0 {
                Some(bfs_ball(*ambient, *cap)?)
            } else {
                None
            };
            let report = distortion_report(*subgroup, *radius, *cap, ball.as_ref())?;
            if let Some(path) = csv {
                report.write_csv(File::create(path).map_err(|e| Error::Io(e.to_string()))?)?;
            }
            ok(format!("{}\n", report.summary()))
        }
        Command::TreePartition { tree } => {
            let t: Tree = tree.parse()?;
            let p = t.partition()?;
            if pretty {
                let mut out = format!(
                    "{:>4} {:>10} {:>10} {:>6}\n",
                    "leaf", "start", "end", "level"
                );
                for (i, level) in p.levels.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{i:>4} {:>10} {:>10} {level:>6}",
                        p.breakpoints[i].to_string(),
                        p.breakpoints[i + 1].to_string()
                    );
                }
                ok(out)
            } else {
                let levels: Vec<String> = p.levels.iter().map(i64::to_string).collect();
                ok(format!("{p}\n{}\n", levels.join(",")))
            }
        }
        Command::BasicMove { tree, path } => {
            let t: Tree = tree.parse()?;
            let p: NodePath = path.parse()?;
            ok(format!("{}\n", t.apply_basic_move(&p)?))
        }
    }
}
