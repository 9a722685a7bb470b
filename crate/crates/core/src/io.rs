//! JSON file formats for instances, colour patterns and embedded cycles.
//!
//! Instance: `{"n":…, "m":…, "graphs":[[[u,v], …], …]}`
//!
//! Pattern: `{"host":{"kind":"cycle"|"path"|"connector","n_or_r":…,"k":…,"a":…,"b":…},
//! "colours":[[i,j,c], …]}`. `a` and `b` are only present for connectors,
//! whose `n_or_r` is the connector order `a + k + b`.
//!
//! Cycle: `{"k":…, "vertices":[…]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::PowerCycle;
use crate::graph::{Colour, Graph, GraphCollection};
use crate::host::{ColourPattern, HostTemplate};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Invalid {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    n: usize,
    m: usize,
    graphs: Vec<Vec<[usize; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct HostFile {
    kind: String,
    n_or_r: usize,
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct PatternFile {
    host: HostFile,
    colours: Vec<[usize; 3]>,
}

pub fn parse_instance(text: &str) -> Result<GraphCollection, FormatError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.graphs.len() != file.m {
        return Err(invalid(
            "m",
            format!("declares {} graphs but {} are listed", file.m, file.graphs.len()),
        ));
    }
    let graphs = file
        .graphs
        .iter()
        .enumerate()
        .map(|(gi, edges)| {
            let mut g = Graph::empty(file.n);
            for (ei, &[u, v]) in edges.iter().enumerate() {
                let field = || format!("graphs[{gi}][{ei}]");
                match g.add_edge(u, v) {
                    Ok(true) => {}
                    Ok(false) => return Err(invalid(field(), format!("duplicate edge ({u}, {v})"))),
                    Err(e) => return Err(invalid(field(), e)),
                }
            }
            Ok(g)
        })
        .collect::<Result<Vec<_>, _>>()?;
    GraphCollection::new(file.n, graphs).map_err(|e| invalid("graphs", e))
}

pub fn instance_to_string(collection: &GraphCollection) -> String {
    let file = InstanceFile {
        n: collection.n(),
        m: collection.m(),
        graphs: collection
            .graphs()
            .iter()
            .map(|g| g.edges().into_iter().map(|(u, v)| [u, v]).collect())
            .collect(),
    };
    serde_json::to_string(&file).expect("instance serialises")
}

fn host_from_file(h: &HostFile) -> Result<HostTemplate, FormatError> {
    let host = match h.kind.as_str() {
        "cycle" => HostTemplate::PowerCycle {
            order: h.n_or_r,
            k: h.k,
        },
        "path" => HostTemplate::PowerPath {
            order: h.n_or_r,
            k: h.k,
        },
        "connector" => {
            let a = h.a.ok_or_else(|| invalid("host.a", "required for connectors"))?;
            let b = h.b.ok_or_else(|| invalid("host.b", "required for connectors"))?;
            if a + h.k + b != h.n_or_r {
                return Err(invalid(
                    "host.n_or_r",
                    format!("connector order must be a + k + b = {}", a + h.k + b),
                ));
            }
            HostTemplate::Connector {
                head: a,
                tail: b,
                k: h.k,
            }
        }
        other => {
            return Err(invalid(
                "host.kind",
                format!("unknown kind `{other}` (expected cycle, path or connector)"),
            ))
        }
    };
    host.validate().map_err(|e| invalid("host", e))?;
    Ok(host)
}

fn host_to_file(host: HostTemplate) -> HostFile {
    match host {
        HostTemplate::PowerCycle { order, k } => HostFile {
            kind: "cycle".into(),
            n_or_r: order,
            k,
            a: None,
            b: None,
        },
        HostTemplate::PowerPath { order, k } => HostFile {
            kind: "path".into(),
            n_or_r: order,
            k,
            a: None,
            b: None,
        },
        HostTemplate::Connector { head, tail, k } => HostFile {
            kind: "connector".into(),
            n_or_r: host.order(),
            k,
            a: Some(head),
            b: Some(tail),
        },
    }
}

pub fn parse_pattern(text: &str) -> Result<ColourPattern, FormatError> {
    let file: PatternFile = serde_json::from_str(text)?;
    let host = host_from_file(&file.host)?;
    let triples: Vec<(usize, usize, Colour)> =
        file.colours.iter().map(|&[i, j, c]| (i, j, c)).collect();
    ColourPattern::from_triples(host, &triples).map_err(|e| invalid("colours", e))
}

pub fn pattern_to_string(pattern: &ColourPattern) -> String {
    let file = PatternFile {
        host: host_to_file(pattern.host()),
        colours: pattern.triples().map(|(i, j, c)| [i, j, c]).collect(),
    };
    serde_json::to_string(&file).expect("pattern serialises")
}

pub fn parse_cycle(text: &str) -> Result<PowerCycle, FormatError> {
    let raw: PowerCycle = serde_json::from_str(text)?;
    PowerCycle::new(raw.k, raw.vertices).map_err(|e| invalid("vertices", e))
}

pub fn cycle_to_string(cycle: &PowerCycle) -> String {
    serde_json::to_string(cycle).expect("cycle serialises")
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_instance(path: &Path) -> Result<GraphCollection, FormatError> {
    parse_instance(&read_text(path)?)
}

pub fn read_pattern(path: &Path) -> Result<ColourPattern, FormatError> {
    parse_pattern(&read_text(path)?)
}

pub fn read_cycle(path: &Path) -> Result<PowerCycle, FormatError> {
    parse_cycle(&read_text(path)?)
}
