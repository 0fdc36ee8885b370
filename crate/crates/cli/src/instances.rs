use std::path::Path;

use itertools::Itertools;
use meqsim::{oracle, BitString, Graph};
use rand::{Rng, RngCore};
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, InputSource, Problem};
use crate::error::{CliError, Result};

/// Exhaustive enumeration is refused beyond this many input bits.
pub const MAX_EXHAUSTIVE_BITS: usize = 20;

/// One problem input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Strings(Vec<BitString>),
    Graph(Graph),
}

impl Instance {
    /// Player inputs; neighborhood vectors for graphs.
    pub fn inputs(&self) -> Vec<BitString> {
        match self {
            Instance::Strings(x) => x.clone(),
            Instance::Graph(g) => g.nih_inputs(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Instance::Strings(x) => json!(x.iter().map(ToString::to_string).collect::<Vec<_>>()),
            Instance::Graph(g) => json!({ "k": g.k(), "edges": g.edges() }),
        }
    }
}

/// Random instances are one per trial; exhaustive and file instances are
/// each run `trials` times.
pub fn load(config: &ExperimentConfig, rng: &mut dyn RngCore) -> Result<Vec<Instance>> {
    let instances = match &config.input {
        InputSource::Random => (0..config.trials).map(|_| random_instance(config, rng)).collect(),
        InputSource::Exhaustive => exhaustive(config)?,
        InputSource::File(path) => from_file(config, path)?,
    };
    if instances.is_empty() {
        return Err(CliError::Input("no instances".into()));
    }
    Ok(instances)
}

pub fn random_instance(config: &ExperimentConfig, rng: &mut dyn RngCore) -> Instance {
    let k = config.k;
    match config.problem {
        Problem::DhReconstruct => Instance::Graph(oracle::gen_dh_graph(k, rng)),
        p if p.is_graph() => {
            let edges: Vec<(usize, usize)> = (0..k).tuple_combinations().filter(|_| rng.random_bool(0.5)).collect();
            Instance::Graph(Graph::from_edges(k, &edges).expect("pairs are in range"))
        }
        _ => {
            let mask = (1u128 << config.n) - 1;
            Instance::Strings((0..k).map(|_| BitString::from_u128(config.n, rng.random::<u128>() & mask)).collect())
        }
    }
}

fn exhaustive(config: &ExperimentConfig) -> Result<Vec<Instance>> {
    let (k, n) = (config.k, config.n);
    let bits = if config.problem.is_graph() { k * (k - 1) / 2 } else { k * n };
    if bits > MAX_EXHAUSTIVE_BITS {
        return Err(CliError::Input(format!("exhaustive input needs 2^{bits} instances; limit is 2^{MAX_EXHAUSTIVE_BITS}")));
    }
    Ok(if config.problem.is_graph() {
        Graph::all(k).map(Instance::Graph).collect()
    } else {
        (0..k).map(|_| BitString::all(n)).multi_cartesian_product().map(Instance::Strings).collect()
    })
}

/// Instances separated by lines holding `---`. String problems take one
/// bitstring per player per block; graph problems take either graph format.
fn from_file(config: &ExperimentConfig, path: &Path) -> Result<Vec<Instance>> {
    let text = std::fs::read_to_string(path)?;
    let mut blocks = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "---" {
            blocks.push(String::new());
        } else {
            let block = blocks.last_mut().expect("never empty");
            block.push_str(line);
            block.push('\n');
        }
    }
    blocks
        .iter()
        .filter(|b| b.lines().any(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')))
        .enumerate()
        .map(|(i, block)| parse_block(config, block).map_err(|e| CliError::Input(format!("{}: instance {i}: {e}", path.display()))))
        .collect()
}

fn parse_block(config: &ExperimentConfig, block: &str) -> Result<Instance, String> {
    if config.problem.is_graph() {
        let g = Graph::parse(block).map_err(|e| e.to_string())?;
        if g.k() != config.k {
            return Err(format!("graph has {} nodes, expected {}", g.k(), config.k));
        }
        return Ok(Instance::Graph(g));
    }
    let inputs = block
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<BitString>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if inputs.len() != config.k {
        return Err(format!("{} inputs, expected {}", inputs.len(), config.k));
    }
    if let Some(x) = inputs.iter().find(|x| x.len() != config.n) {
        return Err(format!("input {x} has length {}, expected {}", x.len(), config.n));
    }
    Ok(Instance::Strings(inputs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exhaustive_counts() {
        let config = ExperimentConfig { input: InputSource::Exhaustive, ..ExperimentConfig::new(Problem::AllEq, 3, 2) };
        assert_eq!(load(&config, &mut ChaCha8Rng::seed_from_u64(0)).unwrap().len(), 64);
        let config = ExperimentConfig { input: InputSource::Exhaustive, ..ExperimentConfig::new(Problem::P3Freeness, 4, 4) };
        assert_eq!(load(&config, &mut ChaCha8Rng::seed_from_u64(0)).unwrap().len(), 64);
    }

    #[test]
    fn file_blocks() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("in.txt");
        std::fs::write(&path, "01\n01\n---\n# second\n10\n11\n").unwrap();
        let config = ExperimentConfig { input: InputSource::File(path.clone()), ..ExperimentConfig::new(Problem::AllEq, 2, 2) };
        let got = load(&config, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[1].inputs()[1].to_string(), "11");

        std::fs::write(&path, "01\n").unwrap();
        assert!(matches!(load(&config, &mut ChaCha8Rng::seed_from_u64(0)), Err(CliError::Input(_))));
    }

    #[test]
    fn graph_file_blocks() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        std::fs::write(&path, "3\n0 1\n1 2\n---\n011\n100\n100\n").unwrap();
        let config = ExperimentConfig { input: InputSource::File(path), ..ExperimentConfig::new(Problem::P3Freeness, 3, 3) };
        let got = load(&config, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(got, vec![Instance::Graph(Graph::path(3)), Instance::Graph(Graph::star(2))]);
    }
}
