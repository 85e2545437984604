use std::fmt::Write as _;

use exceptional_core::candidates::{
    cardinality_f, cardinality_f_plus, cardinality_search_space, cardinality_search_space_cubic, enumerate_f,
    enumerate_f_plus,
};
use exceptional_core::highprec::{t_schedule, Psi};
use exceptional_core::lattice::enumerate_lattice;
use exceptional_core::verifier::{
    oracle_crosscheck_schedule, refine_switch, switch_profile, verify_main, CandidateSet, PrimePairContext,
};
use serde::Serialize;

use crate::config::{Cli, Command, Format, RunConfig, SetKind, SwitchSet};
use crate::output::{self, ArgminRecord, CertificateRecord, OracleRecord, SwitchReport};
use crate::Failure;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_AMBIGUOUS: i32 = 3;

/// Rendered output plus the exit code it implies.
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn execute(cli: &Cli, rc: &RunConfig) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Verify { n, .. } => verify(*n, rc),
        Command::Stable { max_i, .. } => stable(*max_i, rc),
        Command::Enumerate {
            n, set, limit, force, ..
        } => enumerate(*n, *set, *limit, *force, rc),
        Command::Card { n, .. } => card(*n, rc),
        Command::OracleCheck { n, .. } => oracle(*n, rc),
        Command::Switch {
            p, q, n, refine, ..
        } => switch(p.clone(), q.clone(), *n, *refine, rc),
    }
}

fn verify(n: usize, rc: &RunConfig) -> Result<Outcome, Failure> {
    let mode = rc.schedule.clone().expect("resolved for verify");
    let sch = t_schedule(n, mode, &rc.precision)?;
    let cert = verify_main(&sch, &rc.precision)?;
    let body = match rc.format {
        Format::Json => output::certificate_json(&cert),
        Format::Csv => output::certificate_csv(&cert)?,
        Format::Text => output::certificate_text(&cert),
    };
    let code = if cert.holds() {
        EXIT_OK
    } else if cert.any_ambiguous() {
        EXIT_AMBIGUOUS
    } else {
        EXIT_FAILED
    };
    Ok(Outcome { body, code })
}

fn stable(max_i: usize, rc: &RunConfig) -> Result<Outcome, Failure> {
    let mode = rc.schedule.clone().expect("resolved for stable");
    let sch = t_schedule(max_i + 1, mode, &rc.precision)?;
    let rows = output::stable_rows(&sch);
    let body = match rc.format {
        Format::Csv => output::stable_csv(&rows)?,
        Format::Json => json(&rows),
        Format::Text => output::stable_text(&rows),
    };
    Ok(Outcome { body, code: EXIT_OK })
}

fn enumerate(n: usize, set: SetKind, limit: Option<usize>, force: bool, rc: &RunConfig) -> Result<Outcome, Failure> {
    let body = match set {
        SetKind::F | SetKind::Fplus => {
            let ys = if set == SetKind::F {
                enumerate_f(n)?
            } else {
                enumerate_f_plus(n)?
            };
            match rc.format {
                Format::Json => json(&ys.iter().map(ArgminRecord::from).collect::<Vec<_>>()),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["k", "l", "entries"])?;
                    for y in &ys {
                        w.write_record([y.k().to_string(), y.l().to_string(), y.entry_strings().join(" ")])?;
                    }
                    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
                }
                Format::Text => {
                    let mut s = String::new();
                    for y in &ys {
                        let _ = writeln!(s, "{y}");
                    }
                    let _ = writeln!(s, "{} vectors", ys.len());
                    s
                }
            }
        }
        SetKind::Lattice => {
            let pts = enumerate_lattice(n, limit, force)?;
            let rows: Vec<Vec<String>> = pts
                .iter()
                .map(|p| p.entries().iter().map(|e| e.to_string()).collect())
                .collect();
            match rc.format {
                Format::Json => json(&rows),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record((1..=n).map(|i| format!("x{i}")))?;
                    for r in &rows {
                        w.write_record(r)?;
                    }
                    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
                }
                Format::Text => {
                    let mut s = String::new();
                    for r in &rows {
                        let _ = writeln!(s, "({})", r.join(", "));
                    }
                    let _ = writeln!(s, "{} lattice points", rows.len());
                    s
                }
            }
        }
    };
    Ok(Outcome { body, code: EXIT_OK })
}

#[derive(Serialize)]
struct CardRecord {
    n: usize,
    f: String,
    f_plus: String,
    search_space: String,
    search_space_cubic: String,
}

fn card(n: usize, rc: &RunConfig) -> Result<Outcome, Failure> {
    let r = CardRecord {
        n,
        f: cardinality_f(n).to_string(),
        f_plus: cardinality_f_plus(n).to_string(),
        search_space: cardinality_search_space(n).to_string(),
        search_space_cubic: cardinality_search_space_cubic(n).to_string(),
    };
    let body = match rc.format {
        Format::Json => json(&r),
        Format::Csv => format!(
            "n,f,f_plus,search_space,search_space_cubic\n{},{},{},{},{}\n",
            r.n, r.f, r.f_plus, r.search_space, r.search_space_cubic
        ),
        Format::Text => format!(
            "n = {}\n|F_n| = {}\n|F_n^+| = {}\nsearch space |F_n^+|(n-1) = {}\ncubic bound = {}\n",
            r.n, r.f, r.f_plus, r.search_space, r.search_space_cubic
        ),
    };
    Ok(Outcome { body, code: EXIT_OK })
}

fn oracle(n: usize, rc: &RunConfig) -> Result<Outcome, Failure> {
    let mode = rc.schedule.clone().expect("resolved for oracle-check");
    let sch = t_schedule(n, mode, &rc.precision)?;
    let reps = oracle_crosscheck_schedule(&sch, &rc.precision, rc.oracle_max_n)?;
    let body = match rc.format {
        Format::Json => json(&reps.iter().map(OracleRecord::from).collect::<Vec<_>>()),
        Format::Csv => output::oracle_csv(&reps)?,
        Format::Text => output::oracle_text(n, &reps),
    };
    let code = if reps.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Ok(Outcome { body, code })
}

fn switch(p: Option<String>, q: Option<String>, n: usize, refine: usize, rc: &RunConfig) -> Result<Outcome, Failure> {
    let pair = match &rc.pair {
        Some((p, q)) => PrimePairContext::new(p.clone(), q.clone(), n)?,
        None => PrimePairContext::synthetic(Psi::Golden, n)?,
    };
    let set = match rc.switch_set {
        SwitchSet::Fplus => CandidateSet::FPlus,
        SwitchSet::Lattice => CandidateSet::Lattice,
    };
    let prof = switch_profile(&pair, set, &rc.t_lo, &rc.t_hi, rc.grid, &rc.precision, rc.oracle_max_n)?;
    let refined = prof
        .switches
        .iter()
        .map(|s| refine_switch(&pair, &prof, s, refine, &rc.precision))
        .collect::<Result<Vec<_>, _>>()?;
    let names = if rc.pair.is_some() { (p, q) } else { (None, None) };
    let report = SwitchReport::new(names, n, pair.primality_unchecked(), &prof, &refined);
    let body = match rc.format {
        Format::Json => json(&report),
        Format::Csv => report.csv()?,
        Format::Text => report.text(),
    };
    Ok(Outcome { body, code: EXIT_OK })
}

/// Writes the rendered output to the requested destination.
pub fn emit(body: &str, rc: &RunConfig, stdout: &mut dyn std::io::Write) -> Result<(), Failure> {
    match &rc.output {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

/// Parses a certificate written by `verify --format json`.
pub fn read_certificate(text: &str) -> serde_json::Result<CertificateRecord> {
    serde_json::from_str(text)
}
