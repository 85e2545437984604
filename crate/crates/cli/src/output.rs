//! Serializable records and renderers for each subcommand.

use std::fmt::Write as _;

use exceptional_core::candidates::CandidateVector;
use exceptional_core::highprec::{format_sig, BoundedReal, Decimal, TSchedule};
use exceptional_core::verifier::{Certificate, MinimizationResult, OracleReport, SwitchProfile};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Significant digits used for printed values.
pub const VALUE_DIGITS: u32 = 12;

/// A certified value: midpoint and an upward-rounded radius.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ValueRecord {
    pub value: String,
    pub radius: String,
}

impl ValueRecord {
    pub fn from_ball(b: &BoundedReal) -> Self {
        Self::shifted(b, &BigRational::from_integer(0.into()))
    }

    /// The ball minus `offset`, printed at full relative precision.
    pub fn shifted(b: &BoundedReal, offset: &BigRational) -> Self {
        ValueRecord {
            value: format_sig(&(b.mid().to_rational() - offset), VALUE_DIGITS),
            radius: radius_string(b),
        }
    }
}

pub fn radius_string(b: &BoundedReal) -> String {
    Decimal::round_sig(&b.rad().to_rational(), 3, true).to_string()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ArgminRecord {
    pub k: usize,
    pub l: usize,
    pub entries: Vec<String>,
}

impl From<&CandidateVector> for ArgminRecord {
    fn from(y: &CandidateVector) -> Self {
        ArgminRecord {
            k: y.k(),
            l: y.l(),
            entries: y.entry_strings(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub i: usize,
    pub t_minus_1: String,
    pub argmin: ArgminRecord,
    pub min_value: ValueRecord,
    pub gap: Option<ValueRecord>,
    pub bits_used: u32,
    pub status: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ambiguous_with: Vec<ArgminRecord>,
}

impl ResultRecord {
    fn new(r: &MinimizationResult, t_minus_1: &Decimal) -> Self {
        ResultRecord {
            i: r.i.unwrap_or(0),
            t_minus_1: t_minus_1.to_string(),
            argmin: (&r.argmin).into(),
            min_value: ValueRecord::from_ball(&r.min_value),
            gap: r.gap.as_ref().map(ValueRecord::from_ball),
            bits_used: r.bits_used,
            status: r.status.as_str().to_string(),
            ambiguous_with: r.ambiguous_with.iter().map(ArgminRecord::from).collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ScheduleRecord {
    pub mode: String,
    pub t_minus_1: Vec<String>,
}

impl From<&TSchedule> for ScheduleRecord {
    fn from(s: &TSchedule) -> Self {
        ScheduleRecord {
            mode: s.mode().name().to_string(),
            t_minus_1: s.t_minus_1().iter().map(Decimal::to_string).collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionRecord {
    pub bits: u32,
    pub max_bits: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    #[serde(rename = "A")]
    pub a: bool,
    #[serde(rename = "B")]
    pub b: bool,
    #[serde(rename = "C")]
    pub c: bool,
}

/// The JSON certificate written by `verify`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CertificateRecord {
    pub n: usize,
    pub schedule: ScheduleRecord,
    pub precision: PrecisionRecord,
    pub results: Vec<ResultRecord>,
    pub verdicts: Verdicts,
    pub expected_pattern_matched: bool,
    pub exceptional_points_at_least: Option<usize>,
    pub conclusion: Option<String>,
    pub ambiguous_indices: Vec<usize>,
}

impl From<&Certificate> for CertificateRecord {
    fn from(c: &Certificate) -> Self {
        let tm1 = c.schedule.t_minus_1();
        CertificateRecord {
            n: c.n,
            schedule: (&c.schedule).into(),
            precision: PrecisionRecord {
                bits: c.bits,
                max_bits: c.max_bits,
            },
            results: c
                .results
                .iter()
                .zip(tm1)
                .map(|(r, t)| ResultRecord::new(r, t))
                .collect(),
            verdicts: Verdicts {
                a: c.verdict_a,
                b: c.verdict_b,
                c: c.verdict_c,
            },
            expected_pattern_matched: c.expected_pattern_matched,
            exceptional_points_at_least: c.exceptional_points_at_least(),
            conclusion: c.conclusion(),
            ambiguous_indices: c.ambiguous_indices.clone(),
        }
    }
}

pub fn certificate_json(c: &Certificate) -> String {
    let mut s = serde_json::to_string_pretty(&CertificateRecord::from(c)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn certificate_csv(c: &Certificate) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "t_minus_1", "k", "l", "argmin", "min_value", "gap", "gap_radius", "bits_used", "status"])?;
    for r in CertificateRecord::from(c).results {
        let (gap, gap_rad) = r
            .gap
            .map(|g| (g.value, g.radius))
            .unwrap_or_default();
        w.write_record([
            r.i.to_string(),
            r.t_minus_1,
            r.argmin.k.to_string(),
            r.argmin.l.to_string(),
            r.argmin.entries.join(" "),
            r.min_value.value,
            gap,
            gap_rad,
            r.bits_used.to_string(),
            r.status,
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8"))
}

pub fn certificate_text(c: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n = {}, schedule {}, precision {}..{} bits",
        c.n,
        c.schedule.mode().name(),
        c.bits,
        c.max_bits
    );
    for (r, t) in c.results.iter().zip(c.schedule.t_minus_1()) {
        let gap = r
            .gap
            .as_ref()
            .map(|g| format_sig(&g.mid().to_rational(), 6))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "i={:>2}  t-1={:<10} {:<9} bits={:<5} gap={:<14} {}",
            r.i.unwrap_or(0),
            t.to_string(),
            r.status.as_str(),
            r.bits_used,
            gap,
            r.argmin
        );
    }
    let _ = writeln!(
        s,
        "A (unique minimizers): {}\nB (integral minimizers): {}\nC (consecutive minimizers differ): {}",
        c.verdict_a, c.verdict_b, c.verdict_c
    );
    let _ = writeln!(s, "expected pattern y_n(i,i+1): {}", c.expected_pattern_matched);
    if c.any_ambiguous() {
        let _ = writeln!(s, "ambiguous at max precision: {:?}", c.ambiguous_indices);
    }
    match c.conclusion() {
        Some(line) => {
            let _ = writeln!(s, "{line}");
        }
        None => s.push_str("no conclusion\n"),
    }
    s
}

/// One row of the `stable` table.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct StableRow {
    pub i: usize,
    pub s_minus_1: String,
    pub t_minus_1: String,
    pub radius: String,
}

pub fn stable_rows(s: &TSchedule) -> Vec<StableRow> {
    let one = BigRational::one();
    s.s()
        .iter()
        .zip(s.t_minus_1())
        .enumerate()
        .map(|(j, (si, ti))| {
            let v = ValueRecord::shifted(si, &one);
            StableRow {
                i: j + 1,
                s_minus_1: v.value,
                t_minus_1: ti.to_string(),
                radius: v.radius,
            }
        })
        .collect()
}

pub fn stable_csv(rows: &[StableRow]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8"))
}

pub fn stable_text(rows: &[StableRow]) -> String {
    let mut s = format!("{:>3}  {:<20} {:<10} {}\n", "i", "s_i - 1", "t_i - 1", "radius");
    for r in rows {
        let _ = writeln!(s, "{:>3}  {:<20} {:<10} {}", r.i, r.s_minus_1, r.t_minus_1, r.radius);
    }
    s
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct OracleRecord {
    pub i: Option<usize>,
    pub t: String,
    pub lattice_min: ValueRecord,
    pub lattice_argmin: Vec<u64>,
    pub lattice_unique: bool,
    pub lattice_count: u64,
    pub fplus_min: ValueRecord,
    pub fplus_argmin: ArgminRecord,
    pub fplus_status: String,
    pub equal: bool,
    pub unique_match: Option<bool>,
    pub passed: bool,
}

impl From<&OracleReport> for OracleRecord {
    fn from(r: &OracleReport) -> Self {
        OracleRecord {
            i: r.i,
            t: format_sig(&r.t, VALUE_DIGITS),
            lattice_min: ValueRecord::from_ball(&r.lattice_min),
            lattice_argmin: r.lattice_argmin.clone(),
            lattice_unique: r.lattice_unique,
            lattice_count: r.lattice_count,
            fplus_min: ValueRecord::from_ball(&r.fplus.min_value),
            fplus_argmin: (&r.fplus.argmin).into(),
            fplus_status: r.fplus.status.as_str().to_string(),
            equal: r.equal,
            unique_match: r.unique_match,
            passed: r.passed(),
        }
    }
}

pub fn oracle_text(n: usize, reps: &[OracleReport]) -> String {
    let mut s = String::new();
    if let Some(r) = reps.first() {
        let _ = writeln!(s, "n = {n}, {} lattice points", r.lattice_count);
    }
    for r in reps.iter().map(OracleRecord::from) {
        let _ = writeln!(
            s,
            "i={:>2}  t={:<16} lattice min {} at {:?}  F+ min {} at y_{}({},{})  {}",
            r.i.unwrap_or(0),
            r.t,
            r.lattice_min.value,
            r.lattice_argmin,
            r.fplus_min.value,
            n,
            r.fplus_argmin.k,
            r.fplus_argmin.l,
            if r.passed { "ok" } else { "MISMATCH" }
        );
    }
    let ok = reps.iter().all(OracleReport::passed);
    let _ = writeln!(s, "oracle: {}", if ok { "pass" } else { "fail" });
    s
}

pub fn oracle_csv(reps: &[OracleReport]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "t", "lattice_min", "lattice_argmin", "fplus_min", "k", "l", "equal", "unique_match", "passed"])?;
    for r in reps.iter().map(OracleRecord::from) {
        w.write_record([
            r.i.map(|i| i.to_string()).unwrap_or_default(),
            r.t,
            r.lattice_min.value,
            join_u64(&r.lattice_argmin),
            r.fplus_min.value,
            r.fplus_argmin.k.to_string(),
            r.fplus_argmin.l.to_string(),
            r.equal.to_string(),
            r.unique_match.map(|b| b.to_string()).unwrap_or_default(),
            r.passed.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8"))
}

fn join_u64(x: &[u64]) -> String {
    x.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct GridRecord {
    pub t: String,
    pub argmin: String,
    pub status: String,
    pub min_value: ValueRecord,
    pub measure_candidate: Option<ValueRecord>,
    pub bits_used: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SwitchRecord {
    pub t_left: String,
    pub t_right: String,
    pub before: String,
    pub after: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SwitchReport {
    pub p: Option<String>,
    pub q: Option<String>,
    pub n: usize,
    pub set: String,
    pub primality_unchecked: bool,
    pub points: Vec<GridRecord>,
    pub switches: Vec<SwitchRecord>,
    pub ambiguous_points: Vec<usize>,
}

impl SwitchReport {
    pub fn new(
        pair: (Option<String>, Option<String>),
        n: usize,
        unchecked: bool,
        prof: &SwitchProfile,
        refined: &[exceptional_core::verifier::SwitchInterval],
    ) -> Self {
        let label = |j: usize| prof.candidates.labels[j].clone();
        SwitchReport {
            p: pair.0,
            q: pair.1,
            n,
            set: match prof.set {
                exceptional_core::verifier::CandidateSet::FPlus => "fplus".into(),
                exceptional_core::verifier::CandidateSet::Lattice => "lattice".into(),
            },
            primality_unchecked: unchecked,
            points: prof
                .points
                .iter()
                .map(|g| GridRecord {
                    t: format_sig(&g.t, VALUE_DIGITS),
                    argmin: label(g.argmin),
                    status: g.status.as_str().to_string(),
                    min_value: ValueRecord::from_ball(&g.min_value),
                    measure_candidate: g.measure_candidate.as_ref().map(ValueRecord::from_ball),
                    bits_used: g.bits_used,
                })
                .collect(),
            switches: refined
                .iter()
                .map(|s| SwitchRecord {
                    t_left: format_sig(&s.t_left, VALUE_DIGITS),
                    t_right: format_sig(&s.t_right, VALUE_DIGITS),
                    before: label(s.argmin_before),
                    after: label(s.argmin_after),
                })
                .collect(),
            ambiguous_points: prof.ambiguous_points.clone(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        match (&self.p, &self.q) {
            (Some(p), Some(q)) => {
                let _ = writeln!(s, "p = {p}, q = {q}, n = {}, set {}", self.n, self.set);
            }
            _ => {
                let _ = writeln!(s, "synthetic psi = phi, n = {}, set {}", self.n, self.set);
            }
        }
        if self.primality_unchecked {
            s.push_str("note: primes above 64 bits were not tested\n");
        }
        if self.set == "fplus" {
            s.push_str("note: minimizing over F_n^+ only; switches are indicative\n");
        }
        for g in &self.points {
            let m = g
                .measure_candidate
                .as_ref()
                .map(|v| format!("  measure candidate {}", v.value))
                .unwrap_or_default();
            let _ = writeln!(s, "t={:<16} {:<9} {:<14} min {}{}", g.t, g.status, g.argmin, g.min_value.value, m);
        }
        let _ = writeln!(s, "{} switch(es)", self.switches.len());
        for w in &self.switches {
            let _ = writeln!(s, "  [{}, {}]  {} -> {}", w.t_left, w.t_right, w.before, w.after);
        }
        if !self.ambiguous_points.is_empty() {
            let _ = writeln!(s, "ambiguous grid points: {:?}", self.ambiguous_points);
        }
        s
    }

    pub fn csv(&self) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["t", "argmin", "status", "min_value", "min_radius", "measure_candidate", "bits_used"])?;
        for g in &self.points {
            w.write_record([
                g.t.clone(),
                g.argmin.clone(),
                g.status.clone(),
                g.min_value.value.clone(),
                g.min_value.radius.clone(),
                g.measure_candidate.as_ref().map(|v| v.value.clone()).unwrap_or_default(),
                g.bits_used.to_string(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8"))
    }
}
