//! The `.hg` text format.
//!
//! ```text
//! # comment
//! vertices A B C D
//! hedge red weight 2.5 : A B ; C D
//! hedge blue : A C D
//! ```
//!
//! Tokens are whitespace separated; `:` ends the hedge header and `;`
//! separates hyperedges. Blank lines and `#` lines are ignored, and the first
//! remaining line must be the `vertices` declaration.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::One;

use crate::graph::{GraphError, Hedge, Hedgegraph, Hyperedge, VertexId};
use crate::rational::{format_decimal, parse_decimal, DecimalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected a `vertices` declaration before anything else")]
    MissingVertices { line: usize },
    #[error("line {line}: `vertices` declared twice")]
    RepeatedVertices { line: usize },
    #[error("line {line}: `vertices` needs at least one vertex")]
    NoVertices { line: usize },
    #[error("line {line}: duplicate vertex `{name}`")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: duplicate hedge `{name}`")]
    DuplicateHedge { line: usize, name: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: hedge `{name}` has no hyperedges")]
    EmptyHedge { line: usize, name: String },
    #[error("line {line}: hedge `{name}` has an empty hyperedge between `;` separators")]
    EmptyHyperedge { line: usize, name: String },
    #[error("line {line}: negative weight `{value}`")]
    NegativeWeight { line: usize, value: String },
    #[error("line {line}: malformed weight `{value}`")]
    BadWeight { line: usize, value: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("empty input: no `vertices` declaration")]
    EmptyInput,
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        use ParseError::*;
        match self {
            MissingVertices { line }
            | RepeatedVertices { line }
            | NoVertices { line }
            | DuplicateVertex { line, .. }
            | DuplicateHedge { line, .. }
            | UnknownVertex { line, .. }
            | EmptyHedge { line, .. }
            | EmptyHyperedge { line, .. }
            | NegativeWeight { line, .. }
            | BadWeight { line, .. }
            | Syntax { line, .. } => Some(*line),
            EmptyInput => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: Hedgegraph,
    pub warnings: Vec<ParseWarning>,
}

/// Parses `.hg` text into a normalized hedgegraph.
pub fn parse_hedgegraph(text: &str) -> Result<Hedgegraph, ParseError> {
    parse_with_warnings(text).map(|p| p.graph)
}

/// Like [`parse_hedgegraph`] but also returns warnings (singleton hyperedges).
pub fn parse_with_warnings(text: &str) -> Result<Parsed, ParseError> {
    let mut vertex_names: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut hedges: Vec<Hedge> = Vec::new();
    let mut hedge_lines: HashMap<String, usize> = HashMap::new();
    let mut warnings = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let keyword = content.split_whitespace().next().unwrap_or_default();
        match keyword {
            "vertices" => {
                if vertex_names.is_some() {
                    return Err(ParseError::RepeatedVertices { line });
                }
                let names: Vec<String> = content.split_whitespace().skip(1).map(str::to_string).collect();
                if names.is_empty() {
                    return Err(ParseError::NoVertices { line });
                }
                for (k, name) in names.iter().enumerate() {
                    if name.contains([':', ';']) {
                        return Err(ParseError::Syntax {
                            line,
                            message: format!("vertex name `{name}` contains a separator"),
                        });
                    }
                    if index.insert(name.clone(), k).is_some() {
                        return Err(ParseError::DuplicateVertex {
                            line,
                            name: name.clone(),
                        });
                    }
                }
                vertex_names = Some(names);
            }
            "hedge" => {
                if vertex_names.is_none() {
                    return Err(ParseError::MissingVertices { line });
                }
                let hedge = parse_hedge_line(content, line, &index)?;
                if hedge_lines.insert(hedge.name.clone(), line).is_some() {
                    return Err(ParseError::DuplicateHedge { line, name: hedge.name });
                }
                if hedge.hyperedges().iter().any(|h| h.len() == 1) {
                    let message = format!("hedge `{}` has a singleton hyperedge, which never crosses a cut", hedge.name);
                    log::warn!("line {line}: {message}");
                    warnings.push(ParseWarning { line, message });
                }
                hedges.push(hedge);
            }
            _ => {
                if vertex_names.is_none() {
                    return Err(ParseError::MissingVertices { line });
                }
                return Err(ParseError::Syntax {
                    line,
                    message: format!("unknown directive `{keyword}`"),
                });
            }
        }
    }

    let vertex_names = vertex_names.ok_or(ParseError::EmptyInput)?;
    let graph = Hedgegraph::new(vertex_names, hedges).map_err(|e| match e {
        // Names were checked above; anything else is a bug in the parser.
        GraphError::DuplicateHedge(name) => ParseError::DuplicateHedge {
            line: hedge_lines.get(&name).copied().unwrap_or(0),
            name,
        },
        other => ParseError::Syntax {
            line: 0,
            message: other.to_string(),
        },
    })?;
    Ok(Parsed { graph, warnings })
}

fn parse_hedge_line(content: &str, line: usize, index: &HashMap<String, usize>) -> Result<Hedge, ParseError> {
    let (header, body) = content.split_once(':').ok_or_else(|| ParseError::Syntax {
        line,
        message: "hedge line needs `:` before its hyperedges".into(),
    })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let (name, weight) = match head.as_slice() {
        ["hedge", name] => (name.to_string(), Rational::one()),
        ["hedge", name, "weight", value] => {
            let w = parse_decimal(value).map_err(|e| match e {
                DecimalError::Negative(_) => ParseError::NegativeWeight {
                    line,
                    value: value.to_string(),
                },
                _ => ParseError::BadWeight {
                    line,
                    value: value.to_string(),
                },
            })?;
            (name.to_string(), w)
        }
        _ => {
            return Err(ParseError::Syntax {
                line,
                message: "expected `hedge <name> [weight <decimal>] :`".into(),
            })
        }
    };
    if body.trim().is_empty() {
        return Err(ParseError::EmptyHedge { line, name });
    }
    let mut hyperedges = Vec::new();
    for segment in body.split(';') {
        let mut vertices = Vec::new();
        for tok in segment.split_whitespace() {
            let v = index.get(tok).ok_or_else(|| ParseError::UnknownVertex {
                line,
                name: tok.to_string(),
            })?;
            vertices.push(VertexId(*v));
        }
        let h = Hyperedge::new(vertices).ok_or_else(|| ParseError::EmptyHyperedge {
            line,
            name: name.clone(),
        })?;
        hyperedges.push(h);
    }
    Ok(Hedge::new(name, hyperedges, weight))
}

/// Canonical `.hg` text: declared vertex order, hedges in id order, normalized hyperedges.
pub fn serialize_hedgegraph(g: &Hedgegraph) -> String {
    let mut out = String::from("vertices");
    for name in g.vertex_names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for hedge in g.hedges() {
        let _ = write!(out, "hedge {}", hedge.name);
        if hedge.weight != Rational::one() {
            let _ = write!(out, " weight {}", format_decimal(&hedge.weight));
        }
        out.push_str(" :");
        for (i, h) in hedge.hyperedges().iter().enumerate() {
            if i > 0 {
                out.push_str(" ;");
            }
            for &v in h.vertices() {
                out.push(' ');
                out.push_str(g.vertex_name(v));
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "vertices A B C D E F\n\
        hedge black : A B C ; D E F\n\
        hedge red : B D ; E F\n\
        hedge blue : C E ; B D\n";

    #[test]
    fn parses_three_hedge_example() {
        let g = parse_hedgegraph(FIG1).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.hedge_count(), 3);
        assert_eq!(g.size(), 14);
    }

    #[test]
    fn minimal_input() {
        let parsed = parse_with_warnings("vertices A\nhedge h : A\n").unwrap();
        assert_eq!(parsed.graph.vertex_count(), 1);
        assert_eq!(parsed.graph.hedge(crate::graph::HedgeId(0)).hyperedges().len(), 1);
        assert_eq!(parsed.warnings.len(), 1);
        assert_eq!(parsed.warnings[0].line, 2);
    }

    #[test]
    fn overlapping_hyperedges_merge() {
        let g = parse_hedgegraph("vertices A B C\nhedge x : A B ; B C\n").unwrap();
        let h = g.hedge(crate::graph::HedgeId(0));
        assert_eq!(h.hyperedges().len(), 1);
        assert_eq!(h.hyperedges()[0].len(), 3);
    }

    #[test]
    fn compact_separators_and_comments() {
        let text = "# a comment\n\nvertices A B C D E F\nhedge black : A B C;D E F  # not a comment token\n";
        // Inline `#` is not a comment: the token is unknown.
        assert!(matches!(parse_hedgegraph(text), Err(ParseError::UnknownVertex { line: 4, .. })));
        let g = parse_hedgegraph("# c\nvertices A B C D\nhedge k : A B;C D\n").unwrap();
        assert_eq!(g.hedges()[0].hyperedges().len(), 2);
    }

    #[test]
    fn distinct_errors_with_line_numbers() {
        type Check = fn(&ParseError) -> bool;
        let cases: Vec<(&str, Check)> = vec![
            ("vertices A A", |e| matches!(e, ParseError::DuplicateVertex { line: 1, .. })),
            ("vertices A B\nhedge x : A B\nhedge x : A", |e| {
                matches!(e, ParseError::DuplicateHedge { line: 3, .. })
            }),
            ("vertices A B\nhedge x : A Z", |e| matches!(e, ParseError::UnknownVertex { line: 2, .. })),
            ("vertices A B\nhedge x :   ", |e| matches!(e, ParseError::EmptyHedge { line: 2, .. })),
            ("vertices A B\nhedge x : A ; ; B", |e| {
                matches!(e, ParseError::EmptyHyperedge { line: 2, .. })
            }),
            ("vertices A B\nhedge x weight -2 : A B", |e| {
                matches!(e, ParseError::NegativeWeight { line: 2, .. })
            }),
            ("vertices A B\nhedge x weight two : A B", |e| {
                matches!(e, ParseError::BadWeight { line: 2, .. })
            }),
            ("hedge x : A", |e| matches!(e, ParseError::MissingVertices { line: 1 })),
            ("vertices A\nvertices B", |e| matches!(e, ParseError::RepeatedVertices { line: 2 })),
            ("vertices A B\nhedge x A B", |e| matches!(e, ParseError::Syntax { line: 2, .. })),
            ("# only comments", |e| matches!(e, ParseError::EmptyInput)),
        ];
        for (text, check) in cases {
            let err = parse_hedgegraph(text).unwrap_err();
            assert!(check(&err), "{text:?} gave {err:?}");
        }
    }

    #[test]
    fn serializer_round_trip() {
        let text = "vertices A B C D\nhedge p weight 0.25 : B A ; D C\nhedge q : A C ; C D\nhedge r : B\n";
        let g = parse_hedgegraph(text).unwrap();
        let out = serialize_hedgegraph(&g);
        assert_eq!(out, "vertices A B C D\nhedge p weight 0.25 : A B ; C D\nhedge q : A C D\nhedge r : B\n");
        assert_eq!(parse_hedgegraph(&out).unwrap(), g);
    }
}
