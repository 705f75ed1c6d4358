use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use super::aggregate::AGGREGATE_HEADER;
use super::records::{csv_error, csv_writer, read_runs_csv, read_table, RunRecord};
use super::ExperimentError;
use crate::asymptotics::theorem31_bound;
use crate::dynamics::{OutcomeClass, RunOutcome};
use crate::format::float;

#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub path: PathBuf,
    pub header: Vec<String>,
    pub rows: usize,
}

/// The segregation lower bound with `c = 1/2, c' = 0`, extended by its limits at
/// `q = 0` and `q = 1`.
fn beta_bound(q: f64) -> f64 {
    if q <= 0.0 {
        1.0
    } else if q >= 1.0 {
        0.0
    } else {
        theorem31_bound(q, 0.5, 0.0).unwrap_or(f64::NAN)
    }
}

fn pairs(n: usize) -> f64 {
    n as f64 * (n as f64 - 1.0) / 2.0
}

/// Writes `fig<which>.csv` next to the sweep's `runs.csv` / `aggregate.csv`.
///
/// * 1: `q,N,p_hat,ci_lo,ci_hi,beta_bound` per grid point (segregation).
/// * 2: `q,N,tau_abs,outcome_class,reference` per run, with
///   `reference = C(N,2) / (1 - q)`.
/// * 3: `q,N,C1,C2,edges_remaining,n_components` per segregation run.
/// * 4: `q,N,count_0..count_{K-1},C1,C2,C3,strong_segregation` per run.
///
/// Runs that failed are left out of 2–4.
pub fn figure_datasets(sweep_dir: &Path, which: u8) -> Result<FigureData, ExperimentError> {
    let path = sweep_dir.join(format!("fig{which}.csv"));
    let (header, rows) = match which {
        1 => fig1(sweep_dir)?,
        2..=4 => {
            let records = read_runs_csv(File::open(sweep_dir.join("runs.csv"))?)?;
            match which {
                2 => fig2(&records),
                3 => fig3(&records),
                _ => fig4(&records)?,
            }
        }
        _ => return Err(ExperimentError::Config(format!("no figure {which}; expected 1-4"))),
    };
    let mut w = csv_writer(BufWriter::new(File::create(&path)?));
    w.write_record(&header).map_err(csv_error)?;
    for r in &rows {
        w.write_record(r).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(FigureData { path, header, rows: rows.len() })
}

type Table = (Vec<String>, Vec<Vec<String>>);

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn fig1(dir: &Path) -> Result<Table, ExperimentError> {
    let col = |name: &str| AGGREGATE_HEADER.iter().position(|h| *h == name).unwrap();
    let (q, n, p, lo, hi) =
        (col("q"), col("N"), col("p_segregation"), col("p_segregation_lo"), col("p_segregation_hi"));
    let mut rows = Vec::new();
    for rec in read_table(File::open(dir.join("aggregate.csv"))?, &AGGREGATE_HEADER)? {
        let qv: f64 = rec[q]
            .parse()
            .map_err(|_| ExperimentError::SchemaMismatch(format!("bad q value {:?}", &rec[q])))?;
        rows.push(vec![
            float(qv),
            rec[n].to_string(),
            rec[p].to_string(),
            rec[lo].to_string(),
            rec[hi].to_string(),
            float(beta_bound(qv)),
        ]);
    }
    Ok((strings(&["q", "N", "p_hat", "ci_lo", "ci_hi", "beta_bound"]), rows))
}

fn completed(records: &[RunRecord]) -> impl Iterator<Item = (&RunRecord, &RunOutcome)> {
    records.iter().filter_map(|r| r.outcome.as_ref().map(|o| (r, o)))
}

fn fig2(records: &[RunRecord]) -> Table {
    let rows = completed(records)
        .map(|(r, o)| {
            let reference = if r.q < 1.0 { pairs(r.n) / (1.0 - r.q) } else { f64::INFINITY };
            vec![
                float(r.q),
                r.n.to_string(),
                o.tau_abs.to_string(),
                o.outcome_class.label().to_string(),
                float(reference),
            ]
        })
        .collect();
    (strings(&["q", "N", "tau_abs", "outcome_class", "reference"]), rows)
}

fn fig3(records: &[RunRecord]) -> Table {
    let rows = completed(records)
        .filter(|(_, o)| o.outcome_class == OutcomeClass::Segregation)
        .map(|(r, o)| {
            vec![
                float(r.q),
                r.n.to_string(),
                o.component(0).to_string(),
                o.component(1).to_string(),
                o.edges_remaining.to_string(),
                o.component_sizes.len().to_string(),
            ]
        })
        .collect();
    (strings(&["q", "N", "C1", "C2", "edges_remaining", "n_components"]), rows)
}

fn fig4(records: &[RunRecord]) -> Result<Table, ExperimentError> {
    let k = records.first().map_or(3, |r| r.k);
    if records.iter().any(|r| r.k != k) {
        return Err(ExperimentError::SchemaMismatch("runs.csv mixes several K".into()));
    }
    let mut header = strings(&["q", "N"]);
    header.extend((0..k).map(|i| format!("count_{i}")));
    header.extend(strings(&["C1", "C2", "C3", "strong_segregation"]));
    let mut rows = Vec::new();
    for (r, o) in completed(records) {
        if o.final_opinion_counts.len() != k {
            return Err(ExperimentError::SchemaMismatch(format!(
                "run {} has {} opinion counts, K = {k}",
                r.replicate,
                o.final_opinion_counts.len()
            )));
        }
        let mut row = vec![float(r.q), r.n.to_string()];
        row.extend(o.final_opinion_counts.iter().map(u32::to_string));
        row.extend((0..3).map(|i| o.component(i).to_string()));
        row.push(o.strong_segregation.to_string());
        rows.push(row);
    }
    Ok((header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{run_sweep, ExperimentConfig};

    fn sweep(dir: &Path, q_grid: Vec<f64>, k: usize) {
        let mut c = ExperimentConfig::new("t", q_grid, vec![12], 15, 11);
        c.k = k;
        c.output_dir = dir.to_path_buf();
        run_sweep(&c).unwrap();
    }

    #[test]
    fn all_four_figures() {
        let tmp = tempfile::tempdir().unwrap();
        sweep(tmp.path(), vec![0.0, 0.3, 1.0], 2);
        let f1 = figure_datasets(tmp.path(), 1).unwrap();
        assert_eq!(f1.rows, 3);
        let text = std::fs::read_to_string(&f1.path).unwrap();
        let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
        let bound: f64 = row[5].parse().unwrap();
        assert!((bound - 0.4422129364428534).abs() < 1e-12);
        assert_eq!(figure_datasets(tmp.path(), 2).unwrap().rows, 45);
        // q = 0 segregates every run, q = 1 never does
        let f3 = figure_datasets(tmp.path(), 3).unwrap();
        assert!((15..=30).contains(&f3.rows));
        let f4 = figure_datasets(tmp.path(), 4).unwrap();
        assert_eq!(f4.header.len(), 2 + 2 + 4);
        assert!(matches!(figure_datasets(tmp.path(), 5), Err(ExperimentError::Config(_))));
    }

    #[test]
    fn fig3_without_segregation_is_header_only() {
        let tmp = tempfile::tempdir().unwrap();
        sweep(tmp.path(), vec![1.0], 2);
        let f = figure_datasets(tmp.path(), 3).unwrap();
        assert_eq!(f.rows, 0);
        assert_eq!(std::fs::read_to_string(&f.path).unwrap(), "q,N,C1,C2,edges_remaining,n_components\n");
    }

    #[test]
    fn fig2_reference_value() {
        assert!((pairs(1024) / 0.7 - 748_251.428_571_428_5).abs() < 1e-6);
    }

    #[test]
    fn schema_mismatch() {
        let tmp = tempfile::tempdir().unwrap();
        std::fs::write(tmp.path().join("aggregate.csv"), "q,N,p\n0.1,4,0.5\n").unwrap();
        assert!(matches!(figure_datasets(tmp.path(), 1), Err(ExperimentError::SchemaMismatch(_))));
    }
}
