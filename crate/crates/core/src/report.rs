//! Versioned, canonical report envelope shared by the CLI and result files.
//!
//! JSON output has sorted keys, no insignificant whitespace and a trailing
//! newline, so identical runs produce identical bytes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2r::FieldDescriptor;
use crate::planarity::{MonomialSpec, PlanarityVerdict};
use crate::search::SearchResult;
use crate::theorems::VerifierReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldInfo {
    pub q: u64,
    pub has_log_table: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus_poly: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonomialCheck {
    pub spec: MonomialSpec,
    pub verdict: PlanarityVerdict,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Field(FieldInfo),
    Check(MonomialCheck),
    Verifier(VerifierReport),
    Search(SearchResult),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub field: FieldDescriptor,
    pub payload: Payload,
    pub exit_status: i32,
    /// Wall-clock timing; omitted unless requested so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: &str, field: FieldDescriptor, payload: Payload, exit_status: i32) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_owned(),
            field,
            payload,
            exit_status,
            timing: None,
        }
    }

    pub fn to_bytes(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => to_canonical_json(self),
            Format::Csv => match &self.payload {
                Payload::Search(result) => result.to_csv(),
                _ => Err(Error::usage("csv output is only available for search results")),
            },
        }
    }

    pub fn from_json(bytes: &[u8]) -> Result<Report> {
        let report: Report = serde_json::from_slice(bytes)?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::usage(format!("unsupported schema_version {}", report.schema_version)));
        }
        Ok(report)
    }
}

/// Sorted keys, compact, newline-terminated.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    // serde_json::Value maps are BTreeMaps, which sorts every object's keys
    let value = serde_json::to_value(value)?;
    let mut out = serde_json::to_vec(&value)?;
    out.push(b'\n');
    Ok(out)
}
