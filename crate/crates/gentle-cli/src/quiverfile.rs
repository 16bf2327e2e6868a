//! Line-oriented quiver description parser.
//!
//! Grammar, one directive per line, `#` starts a comment:
//!   vertex <id>
//!   arrow <id> : <src> -> <tgt>
//!   relation <id2> <id1>      (the path id2.id1 is a relation)

use gentle_core::quiver::BoundQuiver;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col, message: message.into() }
}

/// Column (1-based) of the nth whitespace-separated token of the line.
fn token_col(line: &str, n: usize) -> usize {
    let mut count = 0;
    let mut in_tok = false;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            in_tok = false;
        } else if !in_tok {
            in_tok = true;
            if count == n {
                return i + 1;
            }
            count += 1;
        }
    }
    line.len() + 1
}

pub fn parse_quiver(text: &str) -> Result<BoundQuiver, ParseError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relations: Vec<Vec<String>> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        match toks[0] {
            "vertex" => {
                if toks.len() != 2 {
                    return Err(err(line_no, token_col(line, 0), "expected `vertex <id>`"));
                }
                vertices.push(toks[1].to_string());
            }
            "arrow" => {
                if toks.len() != 6 || toks[2] != ":" || toks[4] != "->" {
                    return Err(err(
                        line_no,
                        token_col(line, 0),
                        "expected `arrow <id> : <src> -> <tgt>`",
                    ));
                }
                arrows.push((toks[1].to_string(), toks[3].to_string(), toks[5].to_string()));
            }
            "relation" => {
                if toks.len() != 3 {
                    return Err(err(
                        line_no,
                        token_col(line, 0),
                        "expected `relation <id2> <id1>`",
                    ));
                }
                relations.push(vec![toks[1].to_string(), toks[2].to_string()]);
            }
            other => {
                return Err(err(
                    line_no,
                    token_col(line, 0),
                    format!("unknown directive `{}`", other),
                ));
            }
        }
    }
    let vrefs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let arefs: Vec<(&str, &str, &str)> =
        arrows.iter().map(|(n, s, t)| (n.as_str(), s.as_str(), t.as_str())).collect();
    let rrefs: Vec<Vec<&str>> =
        relations.iter().map(|r| r.iter().map(|s| s.as_str()).collect()).collect();
    BoundQuiver::build(&vrefs, &arefs, &rrefs)
        .map_err(|e| err(0, 0, format!("quiver construction failed: {}", e)))
}
