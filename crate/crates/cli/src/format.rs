//! The plain-text digraph format.
//!
//! ```text
//! # comment
//! p ndt <n> <m>
//! a <tail> <head>     (m lines, 0-based ids)
//! ```

use std::fmt::Write as _;
use std::io::Read;

use ndt_core::Digraph;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("input is not valid UTF-8")]
    Utf8,
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Reads a file, or standard input when `path` is `-`.
pub fn read_input(path: &str) -> Result<Vec<u8>, FormatError> {
    let io = |source| FormatError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io)?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(io)
    }
}

fn field<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, FormatError> {
    token
        .ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what}")))
}

pub fn parse_digraph(bytes: &[u8]) -> Result<Digraph, FormatError> {
    let text = std::str::from_utf8(bytes).map_err(|_| FormatError::Utf8)?;
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                if tokens.next() != Some("ndt") {
                    return Err(parse_err(line, "header must read `p ndt <n> <m>`"));
                }
                let n = field(tokens.next(), line, "vertex count")?;
                let m = field(tokens.next(), line, "arc count")?;
                header = Some((n, m));
            }
            Some("a") => {
                let (n, m) = header.ok_or_else(|| parse_err(line, "arc before header"))?;
                let tail: usize = field(tokens.next(), line, "tail")?;
                let head: usize = field(tokens.next(), line, "head")?;
                if tail >= n || head >= n {
                    return Err(parse_err(line, format!("vertex out of range 0..{n}")));
                }
                if tail == head {
                    return Err(parse_err(line, format!("loop at vertex {tail}")));
                }
                if arcs.len() == m {
                    return Err(parse_err(line, format!("more than {m} arc lines")));
                }
                arcs.push((tail, head));
            }
            Some(other) => return Err(parse_err(line, format!("unknown record `{other}`"))),
            None => unreachable!(),
        }
        if tokens.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p ndt` header"))?;
    if arcs.len() != m {
        return Err(parse_err(
            0,
            format!("header promises {m} arcs, found {}", arcs.len()),
        ));
    }
    Digraph::new(n, arcs).map_err(|e| parse_err(0, e.to_string()))
}

pub fn write_digraph(digraph: &Digraph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    let _ = writeln!(
        out,
        "p ndt {} {}",
        digraph.vertex_count(),
        digraph.arc_count()
    );
    for &(u, v) in digraph.arcs() {
        let _ = writeln!(out, "a {u} {v}");
    }
    out
}
