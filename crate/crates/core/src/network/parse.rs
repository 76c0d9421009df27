//! Line-oriented network description.
//!
//! ```text
//! # comment
//! QUBITS 5            optional; defaults to the highest qubit id + 1
//! PENALTY 2.0         optional; defaults to 1
//! NOT q0 q1
//! WIRE q2 q3
//! PIN q4 1
//! CUSTOM q0 q1 q2 : 000 011 101 110
//! ```

use crate::error::{Error, Result};

use super::{ConstraintElement, ConstraintNetwork, ElementKind};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn qubit(token: &str, line: usize) -> Result<usize> {
    let digits = token.strip_prefix('q').unwrap_or(token);
    digits
        .parse()
        .map_err(|_| err(line, format!("bad qubit id `{token}`")))
}

fn arity(tokens: &[&str], n: usize, keyword: &str, line: usize) -> Result<()> {
    if tokens.len() != n {
        return Err(err(
            line,
            format!("{keyword} takes {n} arguments, got {}", tokens.len()),
        ));
    }
    Ok(())
}

pub fn parse_network(text: &str) -> Result<ConstraintNetwork> {
    let mut declared: Option<(usize, usize)> = None;
    let mut penalty = 1.0;
    let mut elements = Vec::new();
    let mut element_lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap_or_default().to_ascii_uppercase();
        let args: Vec<&str> = tokens.collect();
        match keyword.as_str() {
            "QUBITS" => {
                arity(&args, 1, "QUBITS", line)?;
                let n = args[0]
                    .parse()
                    .map_err(|_| err(line, format!("bad qubit count `{}`", args[0])))?;
                declared = Some((n, line));
            }
            "PENALTY" => {
                arity(&args, 1, "PENALTY", line)?;
                penalty = args[0]
                    .parse()
                    .map_err(|_| err(line, format!("bad penalty `{}`", args[0])))?;
            }
            "NOT" | "WIRE" => {
                arity(&args, 2, &keyword, line)?;
                let (a, b) = (qubit(args[0], line)?, qubit(args[1], line)?);
                elements.push(if keyword == "NOT" {
                    ConstraintElement::not(a, b)
                } else {
                    ConstraintElement::wire(a, b)
                });
                element_lines.push(line);
            }
            "PIN" => {
                arity(&args, 2, "PIN", line)?;
                let q = qubit(args[0], line)?;
                let v = match args[1] {
                    "0" => 0,
                    "1" => 1,
                    other => return Err(err(line, format!("pin value `{other}` is not 0 or 1"))),
                };
                elements.push(ConstraintElement::pin(q, v));
                element_lines.push(line);
            }
            "CUSTOM" => {
                let split = args
                    .iter()
                    .position(|&t| t == ":")
                    .ok_or_else(|| err(line, "CUSTOM needs `:` before the allowed rows"))?;
                let qubits = args[..split]
                    .iter()
                    .map(|t| qubit(t, line))
                    .collect::<Result<Vec<_>>>()?;
                let rows = args[split + 1..]
                    .iter()
                    .map(|row| {
                        row.chars()
                            .map(|ch| match ch {
                                '0' => Ok(0),
                                '1' => Ok(1),
                                _ => Err(err(line, format!("bad row `{row}`"))),
                            })
                            .collect::<Result<Vec<u8>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let e = ConstraintElement::custom(qubits, rows).map_err(|e| err(line, e.to_string()))?;
                elements.push(e);
                element_lines.push(line);
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }

    let highest = elements.iter().flat_map(|e| e.qubits().iter().copied()).max();
    let n_qubits = match (declared, highest) {
        (Some((n, line)), Some(h)) if h >= n => {
            let at = elements
                .iter()
                .zip(&element_lines)
                .find(|(e, _)| e.qubits().iter().any(|&q| q >= n))
                .map(|(_, &l)| l)
                .unwrap_or(line);
            return Err(err(at, format!("qubit q{h} exceeds declared count {n}")));
        }
        (Some((n, _)), _) => n,
        (None, Some(h)) => h + 1,
        (None, None) => return Err(err(0, "network declares no qubits")),
    };
    ConstraintNetwork::new(n_qubits, elements, penalty)
}

/// Inverse of [`parse_network`] (always writes the QUBITS and PENALTY lines).
pub fn format_network(net: &ConstraintNetwork) -> String {
    let mut out = format!("QUBITS {}\nPENALTY {}\n", net.n_qubits(), net.penalty_energy());
    for e in net.elements() {
        let q: Vec<String> = e.qubits().iter().map(|q| format!("q{q}")).collect();
        let line = match e.kind() {
            ElementKind::Not => format!("NOT {}", q.join(" ")),
            ElementKind::Wire => format!("WIRE {}", q.join(" ")),
            ElementKind::Pin(v) => format!("PIN {} {v}", q[0]),
            ElementKind::Custom => {
                let rows: Vec<String> = e
                    .allowed()
                    .iter()
                    .map(|r| r.iter().map(|b| b.to_string()).collect())
                    .collect();
                format!("CUSTOM {} : {}", q.join(" "), rows.join(" "))
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
