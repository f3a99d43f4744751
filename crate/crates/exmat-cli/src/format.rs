//! Matroid file format, result documents, and input digests.
//!
//! Files and documents serialize through one canonical form: compact JSON
//! with a fixed field order, grounds sorted, graph edges sorted by label.
//! Parsing an equivalent document and re-serializing it always reproduces
//! the canonical bytes, which keeps digests and golden outputs stable.

use std::collections::BTreeMap;

use exmat::models::{Gf2Matrix, Instance, MultiGraph};
use exmat::ElementId;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Failure category, carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Input did not parse or violates the file format. Exit 2.
    Parse(String),
    /// Well-formed input that the command cannot accept. Exit 3.
    Precondition(String),
    /// The library detected an internal inconsistency. Exit 4.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) | CliError::Internal(m) => m,
        }
    }
}

pub fn lib_err(e: exmat::Error) -> CliError {
    if e.is_internal() {
        CliError::Internal(e.to_string())
    } else {
        CliError::Precondition(e.to_string())
    }
}

/// On-disk matroid description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidFile {
    Uniform {
        rank: usize,
        ground: Vec<String>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize, String)>,
    },
    Gf2 {
        columns: BTreeMap<String, Vec<u8>>,
    },
}

impl MatroidFile {
    /// Parse, validate, and normalize to canonical field order.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut file: MatroidFile = serde_json::from_str(text)
            .map_err(|e| CliError::Parse(format!("matroid file: {e}")))?;
        file.normalize()?;
        Ok(file)
    }

    fn normalize(&mut self) -> Result<(), CliError> {
        match self {
            MatroidFile::Uniform { rank, ground } => {
                ground.sort();
                if ground.windows(2).any(|w| w[0] == w[1]) {
                    return Err(CliError::Parse("duplicate ground label".into()));
                }
                if *rank > ground.len() {
                    return Err(CliError::Parse(format!(
                        "rank {rank} exceeds ground size {}",
                        ground.len()
                    )));
                }
            }
            MatroidFile::Graphic { vertices, edges } => {
                edges.sort_by(|a, b| a.2.cmp(&b.2));
                for (u, v, label) in edges.iter() {
                    if u >= vertices || v >= vertices {
                        return Err(CliError::Parse(format!(
                            "edge {label} endpoint out of range 0..{vertices}"
                        )));
                    }
                }
                if edges.windows(2).any(|w| w[0].2 == w[1].2) {
                    return Err(CliError::Parse("duplicate edge label".into()));
                }
            }
            MatroidFile::Gf2 { columns } => {
                let mut len = None;
                for (label, bits) in columns.iter() {
                    if bits.iter().any(|&b| b > 1) {
                        return Err(CliError::Parse(format!(
                            "column {label} has a bit outside {{0,1}}"
                        )));
                    }
                    match len {
                        None => len = Some(bits.len()),
                        Some(l) if l != bits.len() => {
                            return Err(CliError::Parse(format!(
                                "column {label} has {} rows, expected {l}",
                                bits.len()
                            )));
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(())
    }

    /// Canonical compact serialization.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("matroid files always serialize")
    }

    pub fn to_instance(&self) -> Result<Instance, CliError> {
        match self {
            MatroidFile::Uniform { rank, ground } => Ok(Instance::Uniform {
                rank: *rank,
                ground: ground.iter().map(ElementId::new).collect(),
            }),
            MatroidFile::Graphic { vertices, edges } => {
                let edges = edges
                    .iter()
                    .map(|(u, v, label)| (ElementId::new(label), *u, *v))
                    .collect();
                let graph = MultiGraph::new(*vertices, edges)
                    .map_err(|e| CliError::Parse(e.to_string()))?;
                Ok(Instance::Graphic(graph))
            }
            MatroidFile::Gf2 { columns } => {
                let columns = columns
                    .iter()
                    .map(|(label, bits)| {
                        (
                            ElementId::new(label),
                            bits.iter().map(|&b| b == 1).collect(),
                        )
                    })
                    .collect();
                let matrix =
                    Gf2Matrix::new(columns).map_err(|e| CliError::Parse(e.to_string()))?;
                Ok(Instance::Gf2(matrix))
            }
        }
    }

    pub fn from_instance(instance: &Instance) -> Self {
        match instance {
            Instance::Uniform { rank, ground } => MatroidFile::Uniform {
                rank: *rank,
                ground: ground.iter().map(|e| e.as_str().to_owned()).collect(),
            },
            Instance::Graphic(graph) => {
                let mut edges: Vec<(usize, usize, String)> = graph
                    .edges()
                    .iter()
                    .map(|(label, u, v)| (*u, *v, label.as_str().to_owned()))
                    .collect();
                edges.sort_by(|a, b| a.2.cmp(&b.2));
                MatroidFile::Graphic {
                    vertices: graph.n_vertices(),
                    edges,
                }
            }
            Instance::Gf2(matrix) => MatroidFile::Gf2 {
                columns: matrix
                    .columns()
                    .map(|(label, bits)| {
                        (
                            label.as_str().to_owned(),
                            bits.iter().map(|&b| u8::from(b)).collect(),
                        )
                    })
                    .collect(),
            },
        }
    }
}

/// Output schema shared by every command.
#[derive(Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub input_digest: String,
    pub certificates: Vec<Value>,
    pub valid: bool,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result documents always serialize")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

/// Digest of a canonical input description. `serde_json` objects keep sorted
/// keys, so equal inputs hash equally regardless of argument spelling.
pub fn input_digest(input: &Value) -> String {
    sha256_hex(input.to_string().as_bytes())
}
