use std::io::{Read, Write};

use serde::Serialize;

use super::ExperimentError;
use crate::dynamics::{OutcomeClass, RunOutcome};
use crate::format::{float, list};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    BudgetExceeded,
    Error,
}

impl RunStatus {
    pub fn label(self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::BudgetExceeded => "budget_exceeded",
            RunStatus::Error => "error",
        }
    }

    fn from_label(s: &str) -> Option<Self> {
        [RunStatus::Ok, RunStatus::BudgetExceeded, RunStatus::Error].into_iter().find(|st| st.label() == s)
    }
}

/// One replicate of a sweep. Failed runs keep their row with `outcome = None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub q_index: usize,
    pub n_index: usize,
    pub replicate: u64,
    pub q: f64,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub status: RunStatus,
    pub outcome: Option<RunOutcome>,
    /// Never written to runs.csv.
    pub wall_time: f64,
    pub error: Option<String>,
}

pub const RUNS_HEADER: [&str; 20] = [
    "q_index",
    "n_index",
    "replicate",
    "q",
    "N",
    "K",
    "seed",
    "status",
    "outcome_class",
    "eps_consensus",
    "strong_segregation",
    "tau_abs",
    "final_opinion_counts",
    "z_min_final",
    "component_sizes",
    "n_components",
    "edges_remaining",
    "min_degree_final",
    "s_op_final",
    "s_del_final",
];

fn row(r: &RunRecord) -> Vec<String> {
    let mut f = vec![
        r.q_index.to_string(),
        r.n_index.to_string(),
        r.replicate.to_string(),
        float(r.q),
        r.n.to_string(),
        r.k.to_string(),
        r.seed.to_string(),
        r.status.label().to_string(),
    ];
    match &r.outcome {
        Some(o) => f.extend([
            o.outcome_class.label().to_string(),
            o.eps_consensus.to_string(),
            o.strong_segregation.to_string(),
            o.tau_abs.to_string(),
            list(&o.final_opinion_counts),
            o.z_min_final.to_string(),
            list(&o.component_sizes),
            o.component_sizes.len().to_string(),
            o.edges_remaining.to_string(),
            o.min_degree_final.to_string(),
            o.s_op_final.to_string(),
            o.s_del_final.to_string(),
        ]),
        None => f.extend(std::iter::repeat_n(String::new(), RUNS_HEADER.len() - 8)),
    }
    f
}

pub(crate) fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

pub(crate) fn csv_error(e: csv::Error) -> ExperimentError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => ExperimentError::Io(io),
        other => ExperimentError::SchemaMismatch(format!("{other:?}")),
    }
}

/// Rows in the order given; callers sort first.
pub fn write_runs_csv<W: Write>(records: &[RunRecord], out: W) -> Result<(), ExperimentError> {
    let mut w = csv_writer(out);
    w.write_record(RUNS_HEADER).map_err(csv_error)?;
    for r in records {
        w.write_record(row(r)).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a CSV whose header must match `expected` exactly.
pub(crate) fn read_table<R: Read>(
    input: R,
    expected: &[&str],
) -> Result<Vec<csv::StringRecord>, ExperimentError> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rd.headers().map_err(csv_error)?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(ExperimentError::SchemaMismatch(format!(
            "header {:?}, expected {:?}",
            header.iter().collect::<Vec<_>>(),
            expected
        )));
    }
    rd.records().map(|r| r.map_err(csv_error)).collect()
}

fn parse<T: std::str::FromStr>(s: &str, col: &str) -> Result<T, ExperimentError> {
    s.parse().map_err(|_| ExperimentError::SchemaMismatch(format!("bad {col} value {s:?}")))
}

fn parse_list<T: std::str::FromStr>(s: &str, col: &str) -> Result<Vec<T>, ExperimentError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(|x| parse(x, col)).collect()
}

/// Inverse of [`write_runs_csv`]; wall times and error texts come back empty.
pub fn read_runs_csv<R: Read>(input: R) -> Result<Vec<RunRecord>, ExperimentError> {
    let mut out = Vec::new();
    for rec in read_table(input, &RUNS_HEADER)? {
        let c = |i: usize| &rec[i];
        let status = RunStatus::from_label(c(7))
            .ok_or_else(|| ExperimentError::SchemaMismatch(format!("bad status {:?}", c(7))))?;
        let seed = parse(c(6), "seed")?;
        let outcome = if status == RunStatus::Ok {
            Some(RunOutcome {
                outcome_class: OutcomeClass::from_label(c(8)).ok_or_else(|| {
                    ExperimentError::SchemaMismatch(format!("bad outcome_class {:?}", c(8)))
                })?,
                eps_consensus: parse(c(9), "eps_consensus")?,
                strong_segregation: parse(c(10), "strong_segregation")?,
                tau_abs: parse(c(11), "tau_abs")?,
                final_opinion_counts: parse_list(c(12), "final_opinion_counts")?,
                z_min_final: parse(c(13), "z_min_final")?,
                component_sizes: parse_list(c(14), "component_sizes")?,
                edges_remaining: parse(c(16), "edges_remaining")?,
                min_degree_final: parse(c(17), "min_degree_final")?,
                s_op_final: parse(c(18), "s_op_final")?,
                s_del_final: parse(c(19), "s_del_final")?,
                seed,
            })
        } else {
            None
        };
        out.push(RunRecord {
            q_index: parse(c(0), "q_index")?,
            n_index: parse(c(1), "n_index")?,
            replicate: parse(c(2), "replicate")?,
            q: parse(c(3), "q")?,
            n: parse(c(4), "N")?,
            k: parse(c(5), "K")?,
            seed,
            status,
            outcome,
            wall_time: 0.0,
            error: None,
        });
    }
    Ok(out)
}
