//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{alpha_report, f_of_rank, parse_levi, rank_constants, BoundConstants, RankConstants};
use crate::chartab::character_table;
use crate::coset::{corpus, run_corpus_entry, CorpusSummary};
use crate::error::{Error, Result};
use crate::gl2::{run_gl2_suite, VerifyReport};
use crate::group::named;
use crate::roots::{weyl_data, CartanType, RootSystem, SimpleType};

#[derive(Parser, Debug)]
#[command(
    name = "charbound",
    version,
    about = "Character-bound constants and verification harness"
)]
struct Cli {
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// α for a Levi subsystem, with the constant ledger of the ambient type.
    Alpha {
        /// Cartan type letter (A-G).
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        rank: usize,
        /// `id`, `graph`, `triality`, or 1-based images of the simple roots.
        #[arg(long, default_value = "id")]
        twist: String,
        /// `torus`, `full`, `GL2xGL2`, `GL1xC2`, or 1-based simple roots `1,3`.
        #[arg(long, default_value = "torus")]
        levi: String,
    },
    /// D(r), B(r) and f(r).
    Constants {
        #[arg(long)]
        rank: usize,
    },
    /// Character table of a permutation group (`S4`, `D8`, `gens:4:(1 2 3 4),(1 3)`).
    Table {
        #[arg(long)]
        group: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Field size for the GL2 suite.
        #[arg(long)]
        q: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Gl2,
    Coset,
}

enum Outcome {
    Pass,
    Fail,
}

/// Runs the CLI on `argv` and returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut out = std::io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Data(_) | Error::Checksum { .. } | Error::Io(_) | Error::Json(_) | Error::CharacterTable(_) => 1,
                _ => 2,
            }
        }
    }
}

fn emit<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn parse_twist(t: SimpleType, spec: &str) -> Result<Option<Vec<usize>>> {
    let autos = weyl_data().get(&t).map(|e| e.automorphisms.clone()).unwrap_or_default();
    match spec.trim().to_ascii_lowercase().as_str() {
        "id" | "identity" | "none" | "" => Ok(None),
        "graph" => autos
            .iter()
            .find(|a| a.iter().enumerate().any(|(i, &j)| i != j) && is_involution(a))
            .cloned()
            .map(Some)
            .ok_or_else(|| Error::InvalidTwist(format!("{t} has no graph automorphism"))),
        "triality" => autos
            .iter()
            .find(|a| !is_involution(a))
            .cloned()
            .map(Some)
            .ok_or_else(|| Error::InvalidTwist(format!("{t} has no triality"))),
        list => {
            let images: Vec<usize> = list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&i| i >= 1)
                        .map(|i| i - 1)
                        .ok_or_else(|| Error::InvalidTwist(format!("bad twist entry {s:?}")))
                })
                .collect::<Result<_>>()?;
            Ok(Some(images))
        }
    }
}

fn is_involution(a: &[usize]) -> bool {
    a.iter().enumerate().all(|(i, &j)| a[j] == i)
}

#[derive(Serialize)]
struct ConstantsOutput {
    rank: usize,
    witness: String,
    rank_constants: RankConstants,
    constants: BoundConstants,
}

#[derive(Serialize)]
struct CosetOutput {
    passed: bool,
    entries: Vec<CorpusSummary>,
}

#[derive(Serialize)]
struct Gl2Output {
    q: u32,
    passed: bool,
    reports: Vec<VerifyReport>,
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<Outcome> {
    match &cli.command {
        Command::Alpha {
            kind,
            rank,
            twist,
            levi,
        } => {
            let mut letters = kind.trim().chars();
            let letter = match (letters.next(), letters.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "--type expects one letter, got {kind:?}"
                    )))
                }
            };
            let t = SimpleType::new(CartanType::parse(letter)?, *rank)?;
            let tw = parse_twist(t, twist)?;
            let r = RootSystem::parse(&t.to_string(), tw)?;
            let subset = parse_levi(&r, levi)?;
            let report = alpha_report(&r, &subset)?;
            if cli.pretty {
                writeln!(out, "ambient      {}", report.type_label)?;
                writeln!(
                    out,
                    "levi         {} {:?}",
                    report.levi.label,
                    one_based(&report.levi.simple_roots)
                )?;
                writeln!(out, "alpha        {}/{}", report.alpha.numer(), report.alpha.denom())?;
                if let Some(w) = &report.witness {
                    writeln!(
                        out,
                        "witness      {} -> {}  ({}/{})",
                        w.levi_class, w.ambient_class, w.levi_dim, w.ambient_dim
                    )?;
                }
                write_constants(out, &report.constants)?;
                writeln!(out, "B(M)^4|W|    {}", report.levi_constant)?;
            } else {
                emit(out, &report)?;
            }
            Ok(Outcome::Pass)
        }
        Command::Constants { rank } => {
            let rc = rank_constants(*rank)?;
            let fr = f_of_rank(*rank)?;
            let output = ConstantsOutput {
                rank: *rank,
                witness: fr.witness,
                rank_constants: rc,
                constants: fr.constants,
            };
            if cli.pretty {
                writeln!(out, "rank         {}", output.rank)?;
                writeln!(out, "witness      {}", output.witness)?;
                writeln!(out, "D witness    {}", output.rank_constants.d_witness)?;
                writeln!(out, "B witness    {}", output.rank_constants.b_witness)?;
                write_constants(out, &output.constants)?;
            } else {
                emit(out, &output)?;
            }
            Ok(Outcome::Pass)
        }
        Command::Table { group } => {
            let g = Arc::new(named::parse(group)?);
            let table = character_table(&g)?;
            let dump = table.to_dump();
            if cli.pretty {
                writeln!(out, "|G| = {}, {} classes", dump.group_order, dump.class_sizes.len())?;
                let sizes: Vec<String> = dump.class_sizes.iter().map(|s| format!("{s:>8}")).collect();
                writeln!(out, "{:>6}  {}", "size", sizes.join(""))?;
                for (i, row) in table.rows().iter().enumerate() {
                    let cells: Vec<String> = row
                        .values()
                        .iter()
                        .map(|&z| format!("{:>8}", format_value(z)))
                        .collect();
                    writeln!(out, "{:>6}  {}", format!("X{}", i + 1), cells.join(""))?;
                }
            } else {
                emit(out, &dump)?;
            }
            Ok(Outcome::Pass)
        }
        Command::Verify { suite, q } => match suite {
            Suite::Gl2 => {
                let q = q.ok_or_else(|| Error::InvalidArgument("--suite gl2 needs --q".into()))?;
                let reports = run_gl2_suite(q)?;
                let passed = reports.iter().all(VerifyReport::passed);
                if cli.pretty {
                    writeln!(
                        out,
                        "{:<28}{:>10}{:>10}{:>14}",
                        "check", "instances", "failures", "worst"
                    )?;
                    for r in &reports {
                        writeln!(
                            out,
                            "{:<28}{:>10}{:>10}{:>14.6}",
                            r.check, r.instances, r.failures, r.worst_margin
                        )?;
                    }
                    writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
                } else {
                    emit(out, &Gl2Output { q, passed, reports })?;
                }
                Ok(if passed { Outcome::Pass } else { Outcome::Fail })
            }
            Suite::Coset => {
                let mut entries = Vec::new();
                for entry in corpus() {
                    entries.push(run_corpus_entry(&entry, |_| {})?);
                }
                let passed = entries.iter().all(|s| {
                    s.lemma_failures == 0 && s.norm_failures == 0 && s.identity_mismatches == 0 && s.lemma_pairs > 0
                });
                if cli.pretty {
                    writeln!(
                        out,
                        "{:<6}{:<12}{:>10}{:>10}{:>10}{:>10}{:>12}",
                        "group", "phi", "subcosets", "pairs", "failures", "norm", "max norm"
                    )?;
                    for s in &entries {
                        writeln!(
                            out,
                            "{:<6}{:<12}{:>10}{:>10}{:>10}{:>10}{:>12.3}",
                            s.group,
                            s.automorphism,
                            s.subcosets,
                            s.lemma_pairs,
                            s.lemma_failures + s.norm_failures + s.identity_mismatches,
                            s.norm_pairs,
                            s.max_norm_value
                        )?;
                    }
                    writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
                } else {
                    emit(out, &CosetOutput { passed, entries })?;
                }
                Ok(if passed { Outcome::Pass } else { Outcome::Fail })
            }
        },
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn write_constants(out: &mut impl Write, c: &BoundConstants) -> Result<()> {
    writeln!(out, "type         {}", c.type_label)?;
    writeln!(out, "|W|          {}", c.weyl_order)?;
    writeln!(out, "D, B         {}, {}", c.d, c.b)?;
    writeln!(out, "f1           {}", c.f1)?;
    writeln!(out, "f2'          {}", c.f2_prime)?;
    writeln!(out, "f3           {}", c.f3)?;
    writeln!(out, "f            {}  (~{:.6e})", c.f, c.f_float)?;
    writeln!(out, "ceil f       {}", c.f_ceil)?;
    Ok(())
}

fn format_value(z: num_complex::Complex64) -> String {
    let r = |x: f64| if x.abs() < 1e-9 { 0.0 } else { x };
    let (re, im) = (r(z.re), r(z.im));
    if im == 0.0 {
        format!("{}", (re * 1e4).round() / 1e4)
    } else {
        format!("{:.2}{:+.2}i", re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (Outcome, String) {
        let cli = Cli::try_parse_from(args).unwrap();
        let mut buf = Vec::new();
        let outcome = run(&cli, &mut buf).unwrap();
        (outcome, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn constants_rank_one() {
        let (_, s) = run_capture(&["charbound", "constants", "--rank", "1"]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["constants"]["f_ceil"].to_string(), "136");
        assert_eq!(v["constants"]["f_exact"], "96*sqrt(2)");
    }

    #[test]
    fn alpha_gl2_gl2() {
        let (_, s) = run_capture(&["charbound", "alpha", "--type", "A", "--rank", "3", "--levi", "GL2xGL2"]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["alpha"]["num"].to_string(), "1");
        assert_eq!(v["alpha"]["den"].to_string(), "2");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(cli_main(["charbound", "bogus"]), 2);
        assert_eq!(cli_main(["charbound", "constants", "--rank", "0"]), 2);
        assert_eq!(
            cli_main(["charbound", "alpha", "--type", "G", "--rank", "2", "--levi", "1"]),
            2
        );
        assert_eq!(cli_main(["charbound", "verify", "--suite", "gl2"]), 2);
    }

    #[test]
    fn twists_resolve() {
        let d4 = SimpleType::parse("D4").unwrap();
        assert_eq!(parse_twist(d4, "graph").unwrap(), Some(vec![0, 1, 3, 2]));
        assert!(parse_twist(d4, "triality").unwrap().is_some());
        assert!(parse_twist(SimpleType::parse("B3").unwrap(), "graph").is_err());
    }
}
