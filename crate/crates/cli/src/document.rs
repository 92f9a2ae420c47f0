//! JSON result documents.

use ndt_core::decompose::{DensityCertificate, Violation};
use ndt_core::{Decomposition, DensityMode, DensityWitness, NdtError, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Infeasible,
    Certificate,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub command: String,
    /// SHA-256 of the input bytes, hex encoded.
    pub input_digest: Option<String>,
    pub status: Status,
    pub payload: Value,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn rational(r: Rational) -> Value {
    json!({ "num": *r.numer(), "den": *r.denom() })
}

fn mode_name(mode: DensityMode) -> &'static str {
    match mode {
        DensityMode::Arb => "gamma",
        DensityMode::Mad => "mad",
    }
}

pub fn density(value: Rational, witness: &DensityWitness) -> Value {
    json!({ "value": rational(value), "witness": witness.vertices })
}

/// Assignment with parts numbered from 1.
pub fn decomposition(dec: &Decomposition, budget: Option<usize>) -> Value {
    let sizes: Vec<usize> = (0..dec.parts).map(|p| dec.part_arcs(p).len()).collect();
    json!({
        "kind": dec.kind.name(),
        "parts": dec.parts,
        "last_part_budget": budget,
        "assignment": dec.assignment.iter().map(|&p| p + 1).collect::<Vec<_>>(),
        "part_sizes": sizes,
    })
}

pub fn certificate(c: &DensityCertificate) -> Value {
    json!({
        "vertices": c.vertices,
        "arc_count": c.arc_count,
        "ratio": rational(c.ratio),
        "bound": rational(c.bound),
    })
}

pub fn violation(v: &Violation) -> Value {
    match v {
        Violation::AssignmentLength { expected, got } => {
            json!({ "violation": "assignment-length", "expected": expected, "got": got })
        }
        Violation::PartOutOfRange { arc, part, parts } => json!({
            "violation": "part-out-of-range", "arc": arc, "part": part + 1, "parts": parts,
        }),
        Violation::InDegree { part, vertex, arcs } => json!({
            "violation": "in-degree", "part": part + 1, "vertex": vertex, "arcs": [arcs.0, arcs.1],
        }),
        Violation::Cycle { part, arcs } => {
            json!({ "violation": "cycle", "part": part + 1, "arcs": arcs })
        }
        Violation::OutDegree {
            part,
            vertex,
            out_degree,
            budget,
        } => json!({
            "violation": "out-degree", "part": part + 1, "vertex": vertex,
            "out_degree": out_degree, "budget": budget,
        }),
    }
}

/// Exit code, status and payload for a core error.
pub fn core_error(err: &NdtError) -> (i32, Status, Value) {
    let message = err.to_string();
    match err {
        NdtError::InDegreeExceeded {
            vertex,
            in_degree,
            bound,
        } => (
            2,
            Status::Infeasible,
            json!({
                "reason": "in-degree", "message": message,
                "vertex": vertex, "in_degree": in_degree, "bound": bound,
            }),
        ),
        NdtError::DensityExceeded { witness, bound } => (
            2,
            Status::Infeasible,
            json!({
                "reason": "density", "message": message,
                "measure": mode_name(witness.mode), "witness": witness.vertices,
                "ratio": rational(witness.ratio), "bound": rational(*bound),
            }),
        ),
        NdtError::HallViolated(v) => (
            2,
            Status::Infeasible,
            json!({
                "reason": "hall", "message": message,
                "witness": v.set, "deficiency": v.deficiency,
            }),
        ),
        NdtError::Unsupported { .. } => (
            3,
            Status::Error,
            json!({
                "reason": "unsupported", "message": message,
                "hint": "run `ndt oracle FILE -k K -d D --kind branching` for small inputs",
            }),
        ),
        NdtError::BudgetExceeded { .. } | NdtError::TimeLimit => (
            4,
            Status::Error,
            json!({ "reason": "budget", "message": message }),
        ),
        _ => (
            1,
            Status::Error,
            json!({ "reason": "input", "message": message }),
        ),
    }
}
