//! Communication cost tables.

use std::fmt::Write;

use clap::{Args, ValueEnum};
use meqsim::fingerprint::default_code_length;
use meqsim::meq::{copies_for_epsilon, register_qubits_for};
use meqsim::strategies::mham_depth;
use serde::Serialize;

use crate::config::{ExperimentConfig, Problem};
use crate::error::{CliError, Result};
use crate::problems::declared_depth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CostArgs {
    /// Input lengths.
    #[arg(long, value_delimiter = ',', default_values_t = vec![4, 16, 64])]
    pub n: Vec<usize>,
    /// Player counts.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3, 5, 8])]
    pub k: Vec<usize>,
    /// Query depths.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1, 10, 100])]
    pub depth: Vec<usize>,
    /// Target errors.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.01])]
    pub delta: Vec<f64>,
    /// Isolation bound for the isolated_cliques and MHAM depths.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Code length override; defaults to the smallest power of two ≥ 4n.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

impl Default for CostArgs {
    fn default() -> Self {
        Self { n: vec![4, 16, 64], k: vec![2, 3, 5, 8], depth: vec![1, 10, 100], delta: vec![0.1, 0.01], d: 1, m: None, format: Format::Text }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostRow {
    pub n: usize,
    pub k: usize,
    pub depth: usize,
    pub delta: f64,
    pub copies: usize,
    pub m: usize,
    pub per_player: usize,
    pub total: usize,
    pub register_qubits: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthRow {
    pub problem: &'static str,
    pub k: usize,
    pub n: usize,
    pub d: Option<usize>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostTables {
    pub qubits: Vec<CostRow>,
    pub depths: Vec<DepthRow>,
}

pub fn cost_row(n: usize, k: usize, depth: usize, delta: f64, m: Option<usize>) -> CostRow {
    let copies = copies_for_epsilon(delta / (4.0 * depth as f64));
    let m = m.unwrap_or_else(|| default_code_length(n));
    let width = m.trailing_zeros() as usize;
    CostRow {
        n,
        k,
        depth,
        delta,
        copies,
        m,
        per_player: copies * width,
        total: k * copies * width,
        register_qubits: register_qubits_for(k, copies, width),
    }
}

const PROBLEMS: [Problem; 8] = [
    Problem::GroupByEq,
    Problem::AllEq,
    Problem::ExistsEq,
    Problem::FrequencyMoment,
    Problem::P3Freeness,
    Problem::NeighborhoodDiversity,
    Problem::DhReconstruct,
    Problem::IsolatedCliques,
];

pub fn cmd_cost(args: &CostArgs) -> Result<CostTables> {
    if let Some(delta) = args.delta.iter().find(|&&d| !(d > 0.0 && d < 1.0)) {
        return Err(CliError::Config(format!("delta = {delta} outside (0, 1)")));
    }
    if args.depth.contains(&0) {
        return Err(CliError::Config("depths must be at least 1".into()));
    }
    if let Some(m) = args.m.filter(|m| !m.is_power_of_two() || *m < 2) {
        return Err(CliError::Config(format!("m = {m} is not a power of two")));
    }
    let mut qubits = Vec::new();
    for &n in &args.n {
        for &k in &args.k {
            for &depth in &args.depth {
                for &delta in &args.delta {
                    qubits.push(cost_row(n, k, depth, delta, args.m));
                }
            }
        }
    }
    let mut depths = Vec::new();
    for &k in args.k.iter().filter(|&&k| k >= 2) {
        for problem in PROBLEMS {
            let n = if problem.is_graph() { k } else { args.n.first().copied().unwrap_or(k) };
            let config = ExperimentConfig { d: args.d, ..ExperimentConfig::new(problem, k, n) };
            let d = (problem == Problem::IsolatedCliques).then_some(args.d);
            depths.push(DepthRow { problem: problem.name(), k, n: config.n, d, depth: declared_depth(&config) });
        }
    }
    for &n in &args.n {
        depths.push(DepthRow { problem: "mham", k: 1, n, d: Some(args.d), depth: mham_depth(n, args.d) });
    }
    Ok(CostTables { qubits, depths })
}

pub fn render_text(tables: &CostTables) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>5} {:>3} {:>6} {:>8} {:>3} {:>4} {:>10} {:>6} {:>9}", "n", "k", "D", "delta", "t", "m", "per_player", "total", "register");
    for r in &tables.qubits {
        let _ = writeln!(
            out,
            "{:>5} {:>3} {:>6} {:>8} {:>3} {:>4} {:>10} {:>6} {:>9}",
            r.n, r.k, r.depth, r.delta, r.copies, r.m, r.per_player, r.total, r.register_qubits
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<24} {:>3} {:>5} {:>3} {:>8}", "problem", "k", "n", "d", "depth");
    for r in &tables.depths {
        let d = r.d.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(out, "{:<24} {:>3} {:>5} {:>3} {:>8}", r.problem, r.k, r.n, d, r.depth);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_player_example() {
        let row = cost_row(2, 3, 1, 0.4, Some(8));
        assert_eq!((row.copies, row.m, row.per_player, row.total), (5, 8, 15, 45));
        assert_eq!(row.register_qubits, 45 + 15 + 5 + 1);
    }

    #[test]
    fn depth_columns() {
        let tables = cmd_cost(&CostArgs { k: vec![5], n: vec![6], d: 2, ..CostArgs::default() }).unwrap();
        let depth = |name: &str| tables.depths.iter().find(|r| r.problem == name).unwrap().depth;
        assert_eq!(depth("group_by_eq"), 10);
        assert_eq!(depth("dh_reconstruct"), 3 * 4 * 10);
        assert_eq!(depth("mham"), 1 + 6 + 15);
    }

    #[test]
    fn rejects_bad_delta() {
        assert!(cmd_cost(&CostArgs { delta: vec![1.0], ..CostArgs::default() }).is_err());
    }
}
