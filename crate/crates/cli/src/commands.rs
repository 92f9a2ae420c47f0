use clap::{Parser, Subcommand, ValueEnum};
use ndt_core::decompose::PseudoOutcome;
use ndt_core::families::{
    gen_sharp_base, gen_sharp_glued, gen_tree_family, SharpnessParams, TreeFamilyParams,
};
use ndt_core::{
    brute_decompose, fractional_arboricity, frank_decompose, max_average_degree,
    ndt_branching_decompose, pseudo_ndt_decompose, Decomposition, DecompositionKind,
    DecompositionQuery, Digraph, NdtError, OracleBudget, OracleVerdict,
};
use serde_json::{json, Value};

use crate::document::{self, ResultDocument, Status};
use crate::format::{parse_digraph, read_input, write_digraph, FormatError};

#[derive(Debug, Parser)]
#[command(
    name = "ndt",
    version,
    about = "Branching decompositions of digraphs with a degree-bounded last part"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Branching,
    #[value(alias = "pseudo")]
    PseudoBranching,
}

impl From<KindArg> for DecompositionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Branching => DecompositionKind::Branching,
            KindArg::PseudoBranching => DecompositionKind::PseudoBranching,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fractional arboricity with a maximising vertex set.
    Gamma { file: String },
    /// Maximum average degree with a maximising vertex set.
    Mad { file: String },
    /// Split into k branchings.
    DecomposeFrank {
        file: String,
        #[arg(short)]
        k: usize,
    },
    /// Split into k+1 branchings, the last of out-degree at most d (d <= k).
    DecomposeNdt {
        file: String,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        d: usize,
    },
    /// Split into k+1 pseudo-branchings, the last of out-degree at most d.
    DecomposePseudo {
        file: String,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        d: usize,
    },
    /// Write a generated digraph to standard output.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check an assignment of arcs to parts (numbered from 1).
    Verify {
        file: String,
        /// Result document, JSON array, or whitespace separated list.
        assignment: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Out-degree budget of the last part.
        #[arg(short)]
        d: Option<usize>,
        #[arg(long)]
        parts: Option<usize>,
    },
    /// Exhaustive search: k parts, or k+1 parts with budget d on the last.
    Oracle {
        file: String,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        d: Option<usize>,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = OracleBudget::default().max_arcs)]
        max_arcs: usize,
        /// Give up after this many milliseconds.
        #[arg(long)]
        time_limit_ms: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Sharpness digraph D0(k, d, n), or the glued copy pair.
    Sharp {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        glued: bool,
    },
    /// Tree family D_n(k).
    Tree {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
    },
}

/// Text for standard output plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gamma { .. } => "gamma",
            Command::Mad { .. } => "mad",
            Command::DecomposeFrank { .. } => "decompose-frank",
            Command::DecomposeNdt { .. } => "decompose-ndt",
            Command::DecomposePseudo { .. } => "decompose-pseudo",
            Command::Gen(_) => "gen",
            Command::Verify { .. } => "verify",
            Command::Oracle { .. } => "oracle",
        }
    }
}

enum Failure {
    Format(FormatError),
    Core(NdtError),
    Usage(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Format(e)
    }
}

impl From<NdtError> for Failure {
    fn from(e: NdtError) -> Self {
        Failure::Core(e)
    }
}

struct Reply {
    status: Status,
    payload: Value,
    code: i32,
}

fn ok(payload: Value) -> Reply {
    Reply {
        status: Status::Ok,
        payload,
        code: 0,
    }
}

pub fn run(command: &Command) -> Output {
    if let Command::Gen(g) = command {
        return match generate(g) {
            Ok(text) => Output {
                stdout: text,
                code: 0,
            },
            Err(e) => finish(command, None, Err(Failure::Core(e))),
        };
    }
    let (file, extra) = match command {
        Command::Gamma { file }
        | Command::Mad { file }
        | Command::DecomposeFrank { file, .. }
        | Command::DecomposeNdt { file, .. }
        | Command::DecomposePseudo { file, .. }
        | Command::Oracle { file, .. } => (file, None),
        Command::Verify {
            file, assignment, ..
        } => (file, Some(assignment)),
        Command::Gen(_) => unreachable!(),
    };
    if file == "-" && extra.is_some_and(|a| a == "-") {
        let err = Failure::Usage("FILE and ASSIGNMENT cannot both be standard input".into());
        return finish(command, None, Err(err));
    }
    let bytes = match read_input(file) {
        Ok(b) => b,
        Err(e) => return finish(command, None, Err(e.into())),
    };
    let digest = document::digest(&bytes);
    let result = parse_digraph(&bytes)
        .map_err(Failure::from)
        .and_then(|dg| execute(command, &dg));
    finish(command, Some(digest), result)
}

fn finish(command: &Command, digest: Option<String>, result: Result<Reply, Failure>) -> Output {
    let reply = result.unwrap_or_else(|failure| match failure {
        Failure::Core(e) => {
            let (code, status, payload) = document::core_error(&e);
            Reply {
                status,
                payload,
                code,
            }
        }
        Failure::Format(e) => Reply {
            status: Status::Error,
            payload: json!({ "reason": "input", "message": e.to_string() }),
            code: 1,
        },
        Failure::Usage(message) => Reply {
            status: Status::Error,
            payload: json!({ "reason": "usage", "message": message }),
            code: 1,
        },
    });
    let doc = ResultDocument {
        command: command.name().to_string(),
        input_digest: digest,
        status: reply.status,
        payload: reply.payload,
    };
    Output {
        stdout: doc.to_json(),
        code: reply.code,
    }
}

fn generate(g: &GenCommand) -> Result<String, NdtError> {
    match *g {
        GenCommand::Sharp { k, d, n, glued } => {
            let p = SharpnessParams::new(k, d, n)?;
            if glued {
                let (dg, star) = gen_sharp_glued(&p)?;
                let note =
                    format!("glued sharpness digraph k={k} d={d} n={n}, shared vertex {star}");
                Ok(write_digraph(&dg, Some(&note)))
            } else {
                let note = format!("sharpness digraph k={k} d={d} n={n}");
                Ok(write_digraph(&gen_sharp_base(&p)?, Some(&note)))
            }
        }
        GenCommand::Tree { k, n } => {
            let dg = gen_tree_family(&TreeFamilyParams { k, n })?;
            Ok(write_digraph(
                &dg,
                Some(&format!("tree family k={k} n={n}")),
            ))
        }
    }
}

fn execute(command: &Command, dg: &Digraph) -> Result<Reply, Failure> {
    match command {
        Command::Gamma { .. } => {
            let (value, witness) = fractional_arboricity(dg)?;
            Ok(ok(document::density(value, &witness)))
        }
        Command::Mad { .. } => {
            let (value, witness) = max_average_degree(dg)?;
            Ok(ok(document::density(value, &witness)))
        }
        Command::DecomposeFrank { k, .. } => {
            let dec = frank_decompose(dg, *k)?;
            Ok(ok(document::decomposition(&dec, None)))
        }
        Command::DecomposeNdt { k, d, .. } => {
            let dec = ndt_branching_decompose(dg, *k, *d)?;
            Ok(ok(document::decomposition(&dec, Some(*d))))
        }
        Command::DecomposePseudo { k, d, .. } => match pseudo_ndt_decompose(dg, *k, *d)? {
            PseudoOutcome::Decomposed {
                decomposition,
                stats,
            } => {
                let mut payload = document::decomposition(&decomposition, Some(*d));
                payload["swaps"] = json!(stats.swaps);
                Ok(ok(payload))
            }
            PseudoOutcome::Certificate(c) => Ok(Reply {
                status: Status::Certificate,
                payload: document::certificate(&c),
                code: 2,
            }),
        },
        Command::Verify {
            assignment,
            kind,
            d,
            parts,
            ..
        } => verify(dg, assignment, (*kind).into(), *d, *parts),
        Command::Oracle {
            k,
            d,
            kind,
            max_arcs,
            time_limit_ms,
            ..
        } => {
            let kind = DecompositionKind::from(*kind);
            let query = match d {
                Some(d) => DecompositionQuery::bounded(*k, *d, kind),
                None => DecompositionQuery::plain(*k, kind),
            };
            let budget = OracleBudget {
                max_arcs: *max_arcs,
                time_limit: time_limit_ms.map(std::time::Duration::from_millis),
                ..OracleBudget::default()
            };
            match brute_decompose(dg, &query, &budget)? {
                OracleVerdict::Decomposable(dec) => {
                    let mut payload = document::decomposition(&dec, *d);
                    payload["verdict"] = json!("decomposable");
                    Ok(ok(payload))
                }
                OracleVerdict::Infeasible => Ok(Reply {
                    status: Status::Infeasible,
                    payload: json!({
                        "verdict": "proven-infeasible",
                        "kind": kind.name(),
                        "parts": query.parts,
                        "last_part_budget": d,
                    }),
                    code: 0,
                }),
            }
        }
        Command::Gen(_) => unreachable!(),
    }
}

struct AssignmentInput {
    parts: Vec<usize>,
    declared_parts: Option<usize>,
    declared_budget: Option<usize>,
}

fn parse_assignment(bytes: &[u8]) -> Result<AssignmentInput, String> {
    let text =
        std::str::from_utf8(bytes).map_err(|_| "assignment is not valid UTF-8".to_string())?;
    let numbers = |values: &[Value]| -> Result<Vec<usize>, String> {
        values
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| format!("not a part index: {v}"))
            })
            .collect()
    };
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Array(values)) => Ok(AssignmentInput {
            parts: numbers(&values)?,
            declared_parts: None,
            declared_budget: None,
        }),
        Ok(Value::Object(_)) => {
            let doc: ResultDocument =
                serde_json::from_str(text).map_err(|e| format!("not a result document: {e}"))?;
            let values = doc.payload["assignment"]
                .as_array()
                .ok_or("result document has no assignment")?;
            Ok(AssignmentInput {
                parts: numbers(values)?,
                declared_parts: doc.payload["parts"].as_u64().map(|x| x as usize),
                declared_budget: doc.payload["last_part_budget"].as_u64().map(|x| x as usize),
            })
        }
        _ => {
            let parts = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| format!("not a part index: {t}")))
                .collect::<Result<_, _>>()?;
            Ok(AssignmentInput {
                parts,
                declared_parts: None,
                declared_budget: None,
            })
        }
    }
}

fn verify(
    dg: &Digraph,
    path: &str,
    kind: DecompositionKind,
    d: Option<usize>,
    parts: Option<usize>,
) -> Result<Reply, Failure> {
    let bytes = read_input(path)?;
    let input = parse_assignment(&bytes).map_err(Failure::Usage)?;
    if input.parts.contains(&0) {
        return Err(Failure::Usage("part indices start at 1".into()));
    }
    let budget = d.or(input.declared_budget);
    let parts = parts
        .or(input.declared_parts)
        .unwrap_or_else(|| input.parts.iter().copied().max().unwrap_or(1));
    let dec = Decomposition {
        parent: dg.clone(),
        parts,
        assignment: input.parts.iter().map(|&p| p - 1).collect(),
        kind,
    };
    Ok(match dec.verify(budget) {
        Ok(()) => ok(json!({
            "kind": kind.name(),
            "parts": parts,
            "last_part_budget": budget,
        })),
        Err(v) => Reply {
            status: Status::Infeasible,
            payload: document::violation(&v),
            code: 2,
        },
    })
}
