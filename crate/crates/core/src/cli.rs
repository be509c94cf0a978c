//! Command-line front end. Output is tab-separated with a `#` header.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::catalog::{AlgebraRef, Catalog, ExpectedRow};
use crate::degeneration::{parse_certificate, CertStore, Comparator, DegenerationCertificate, Verdict};
use crate::error::{Error, Result};
use crate::field::parse_expr;
use crate::hasse;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lievar", version, about = "Invariants and degenerations of Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariant row of one algebra: h_0..h_n, b_1..b_n, n, s, dim O.
    Invariants {
        label: String,
        /// Parameter binding `name=value`; values may use `w`.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
    /// Invariant rows for every member of a named set.
    Table {
        set: String,
        /// Compare against the shipped expected table.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Verify certificate files.
    Verify {
        paths: Vec<PathBuf>,
        /// Verify the shipped corpus.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Decide whether SRC degenerates to DST.
    Compare {
        src: String,
        dst: String,
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
    /// Degeneration diagram of a named set in DOT format.
    Hasse {
        set: String,
        /// Keep only covering edges.
        #[arg(long)]
        reduce: bool,
        /// Draw undecided pairs dashed.
        #[arg(long)]
        unknown: bool,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Also write the pair table.
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::UnknownLabel(_) | Error::UnknownSet(_) | Error::Binding(_) | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn with_params(mut r: AlgebraRef, params: &[(String, crate::field::Expr)], catalog: &Catalog) -> Result<AlgebraRef> {
    let e = catalog.entry(&r.label)?;
    for (name, v) in params {
        if e.param(name).is_some() && !r.bindings.iter().any(|(n, _)| n == name) {
            r = r.with(name, v.clone());
        }
    }
    Ok(r)
}

fn parse_params(params: &[String]) -> Result<Vec<(String, crate::field::Expr)>> {
    params
        .iter()
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Error::Binding(format!("`{p}` is not of the form name=value")))?;
            Ok((k.trim().to_string(), parse_expr(v.trim())?))
        })
        .collect()
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Io(e.to_string()))
}

const TABLE_HEADER: &str = "# ref\th_0..h_n\tb_1..b_n\tn\ts\tdimO";

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let catalog = Catalog::load()?;
    match cmd {
        Command::Invariants { label, params } => {
            let params = parse_params(&params)?;
            let r = with_params(AlgebraRef::parse(&label)?, &params, &catalog)?;
            if !r.bindings.is_empty() {
                for w in catalog.get(&r)?.1 {
                    writeln!(err, "warning: {w}").map_err(io)?;
                }
            }
            let fp = catalog.fingerprint(&r)?;
            if !fp.stable {
                writeln!(err, "warning: invariants of {r} vary between sampled parameter values").map_err(io)?;
            }
            writeln!(out, "{TABLE_HEADER}").map_err(io)?;
            writeln!(out, "{}", ExpectedRow::from_fingerprint(r.to_string(), &fp.fingerprint)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Table { set, check, jobs } => {
            let members = catalog.set(&set)?.members.clone();
            let rows: Vec<Result<ExpectedRow>> = pool(jobs)?.install(|| {
                members
                    .par_iter()
                    .map(|r| Ok(ExpectedRow::from_fingerprint(r.to_string(), &catalog.fingerprint(r)?.fingerprint)))
                    .collect()
            });
            let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
            writeln!(out, "{TABLE_HEADER}").map_err(io)?;
            for row in &rows {
                writeln!(out, "{row}").map_err(io)?;
            }
            if !check {
                return Ok(EXIT_OK);
            }
            let Some(expected) = catalog.expected(&set) else {
                writeln!(err, "no expected table for `{set}`").map_err(io)?;
                return Ok(EXIT_FAILURE);
            };
            let mut bad = 0;
            for want in expected {
                match rows.iter().find(|r| r.reference == want.reference) {
                    Some(got) if got == want => {}
                    Some(got) => {
                        bad += 1;
                        writeln!(err, "MISMATCH\n  expected {want}\n  computed {got}").map_err(io)?;
                    }
                    None => {
                        bad += 1;
                        writeln!(err, "MISSING {}", want.reference).map_err(io)?;
                    }
                }
            }
            for got in &rows {
                if !expected.iter().any(|w| w.reference == got.reference) {
                    bad += 1;
                    writeln!(err, "UNEXPECTED {}", got.reference).map_err(io)?;
                }
            }
            writeln!(err, "checked {} rows, {bad} mismatches", expected.len()).map_err(io)?;
            Ok(if bad == 0 { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Verify { paths, all, jobs } => {
            if paths.is_empty() && !all {
                writeln!(err, "verify: give certificate paths or --all").map_err(io)?;
                return Ok(EXIT_USAGE);
            }
            let mut certs: Vec<DegenerationCertificate> = Vec::new();
            for p in &paths {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                match parse_certificate(&text) {
                    Ok(c) => certs.push(c),
                    Err(e) => {
                        writeln!(err, "{}: {e}", p.display()).map_err(io)?;
                        return Ok(exit_code(&e));
                    }
                }
            }
            if all {
                certs.extend(catalog.certificates().iter().cloned());
            }
            let verdicts = pool(jobs)?.install(|| crate::degeneration::verify_all(&certs, &catalog));
            writeln!(out, "# id\tsource\ttarget\tverdict").map_err(io)?;
            let mut failed = 0;
            for (c, v) in certs.iter().zip(verdicts) {
                let verdict = match v {
                    Ok(Verdict::Ok) => "OK".to_string(),
                    Ok(m) => {
                        failed += 1;
                        format!("FAIL {m}")
                    }
                    Err(e) => {
                        failed += 1;
                        format!("FAIL {e}")
                    }
                };
                writeln!(out, "{}\t{}\t{}\t{verdict}", c.id, c.source, c.target).map_err(io)?;
            }
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Compare { src, dst, params } => {
            let params = parse_params(&params)?;
            let src = with_params(AlgebraRef::parse(&src)?, &params, &catalog)?;
            let dst = with_params(AlgebraRef::parse(&dst)?, &params, &catalog)?;
            let store = CertStore::verified(&catalog)?;
            let cmp = Comparator::new(&catalog, &store);
            writeln!(out, "{}", cmp.compare(&src, &dst)?).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Hasse {
            set,
            reduce,
            unknown,
            output,
            tsv,
        } => {
            let set = catalog.set(&set)?;
            let store = CertStore::verified(&catalog)?;
            let cmp = Comparator::new(&catalog, &store);
            let mut g = hasse::build(set, &cmp)?;
            if reduce {
                g = hasse::transitive_reduction(&g)?;
            }
            let dot = hasse::emit_dot(&g, unknown);
            match output {
                Some(p) => std::fs::write(&p, dot).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => out.write_all(dot.as_bytes()).map_err(io)?,
            }
            if let Some(p) = tsv {
                std::fs::write(&p, hasse::to_tsv(&g)).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            }
            Ok(EXIT_OK)
        }
    }
}
