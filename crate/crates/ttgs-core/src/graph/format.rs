//! The `ttgn` text format, version 1.
//!
//! ```text
//! ttgn 1
//! n <vertex-count>
//! s <source-index>
//! e <from> <to> <cost> <time> <risk>
//! ```
//!
//! One record per line, in that order, with any number of `e` records.
//! `#` starts a comment, blank lines are skipped, and every diagnostic
//! names the offending line. Edge components must be finite; negative
//! components are only accepted when the caller allows them.

use super::{EdgeTriple, GraphError, Network};

enum Stage {
    Header,
    VertexCount,
    Source,
    Edges,
}

fn fail(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

pub(super) fn parse(text: &str, allow_negative: bool) -> Result<Network, GraphError> {
    let mut stage = Stage::Header;
    let mut n = 0usize;
    let mut source = 0usize;
    let mut edges: Vec<(usize, usize, EdgeTriple)> = Vec::new();
    let mut last_line = 0usize;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match stage {
            Stage::Header => {
                if tokens != ["ttgn", "1"] {
                    return Err(fail(line, "expected header `ttgn 1`"));
                }
                stage = Stage::VertexCount;
            }
            Stage::VertexCount => {
                let &[keyword, count] = tokens.as_slice() else {
                    return Err(fail(line, "expected `n <vertex-count>`"));
                };
                if keyword != "n" {
                    return Err(fail(line, "expected `n <vertex-count>`"));
                }
                n = count
                    .parse()
                    .map_err(|_| fail(line, format!("`{count}` is not a vertex count")))?;
                if n == 0 {
                    return Err(fail(line, "vertex count must be at least 1"));
                }
                stage = Stage::Source;
            }
            Stage::Source => {
                let &[keyword, index] = tokens.as_slice() else {
                    return Err(fail(line, "expected `s <source-index>`"));
                };
                if keyword != "s" {
                    return Err(fail(line, "expected `s <source-index>`"));
                }
                source = index
                    .parse()
                    .map_err(|_| fail(line, format!("`{index}` is not a vertex index")))?;
                if source >= n {
                    return Err(fail(
                        line,
                        format!("source {source} out of range (n = {n})"),
                    ));
                }
                stage = Stage::Edges;
            }
            Stage::Edges => {
                let &[keyword, from, to, cost, time, risk] = tokens.as_slice() else {
                    return Err(fail(line, "expected `e <from> <to> <cost> <time> <risk>`"));
                };
                if keyword != "e" {
                    return Err(fail(line, format!("unexpected record `{keyword}`")));
                }
                let from: usize = from
                    .parse()
                    .map_err(|_| fail(line, format!("`{from}` is not a vertex index")))?;
                let to: usize = to
                    .parse()
                    .map_err(|_| fail(line, format!("`{to}` is not a vertex index")))?;
                for vertex in [from, to] {
                    if vertex >= n {
                        return Err(fail(
                            line,
                            format!("vertex {vertex} out of range (n = {n})"),
                        ));
                    }
                }
                let mut components = [0.0f64; 3];
                for (slot, token) in components.iter_mut().zip([cost, time, risk]) {
                    let value: f64 = token
                        .parse()
                        .map_err(|_| fail(line, format!("`{token}` is not a number")))?;
                    if !value.is_finite() {
                        return Err(fail(
                            line,
                            format!("edge component `{token}` must be finite"),
                        ));
                    }
                    if value < 0.0 && !allow_negative {
                        return Err(fail(
                            line,
                            format!(
                                "negative component `{token}` requires allow_negative"
                            ),
                        ));
                    }
                    *slot = value;
                }
                let triple = EdgeTriple {
                    cost: components[0],
                    time: components[1],
                    risk: components[2],
                };
                edges.push((from, to, triple));
            }
        }
    }

    match stage {
        Stage::Header => Err(fail(last_line + 1, "missing header `ttgn 1`")),
        Stage::VertexCount => Err(fail(last_line + 1, "missing `n` record")),
        Stage::Source => Err(fail(last_line + 1, "missing `s` record")),
        Stage::Edges => {
            // Every line has been validated, so this cannot fail.
            Network::new(n, source, edges, allow_negative)
        }
    }
}

pub(super) fn serialize(net: &Network) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    writeln!(out, "ttgn 1").unwrap();
    writeln!(out, "n {}", net.n()).unwrap();
    writeln!(out, "s {}", net.source()).unwrap();
    for edge in net.edges() {
        writeln!(
            out,
            "e {} {} {} {} {}",
            edge.from, edge.to, edge.triple.cost, edge.triple.time, edge.triple.risk
        )
        .unwrap();
    }
    out
}
