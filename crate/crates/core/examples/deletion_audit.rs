//! The deletion graph up to the min-degree horizon n2: connected and with
//! minimum degree at least kappa N in nearly every run.

use offended_voter::delayed::{deletion_graph_audit, write_audit_csv, ConnectivityThresholds};
use offended_voter::dynamics::ModelParams;

fn main() {
    let (n, q, kappa, eps) = (128, 0.5, 0.5, 0.2);
    let t = ConnectivityThresholds::new(n, kappa, eps, q).unwrap();
    println!("N={n} q={q}: n1 = {:.0}, n2 = {:.0}", t.n1, t.n2);

    let rep = deletion_graph_audit(&ModelParams::balanced(n, q), kappa, eps, 20, 9).unwrap();
    println!("pass rate {:.2} over {} runs", rep.pass_rate, rep.rows.len());
    for row in rep.rows.iter().take(3) {
        println!(
            "  run {}: {} steps, min degree {}, connected {}",
            row.run, row.steps, row.min_degree, row.connected
        );
    }
    write_audit_csv(&rep, std::io::stdout().lock()).unwrap();
}
