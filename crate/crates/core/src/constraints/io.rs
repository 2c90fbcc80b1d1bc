//! Relation files: `arity m`, then one tuple per line as a string of `m`
//! bits, character `j` giving row `j + 1`. `#` starts a comment.

use super::Relation;
use crate::error::{Error, Result};

pub fn parse_relation_file(text: &str) -> Result<Relation> {
    let mut arity = None;
    let mut tuples = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| Error::input(format!("line {}: {msg}", no + 1));
        match arity {
            None => {
                let m = line
                    .strip_prefix("arity")
                    .map(str::trim)
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| at("expected `arity m`".into()))?;
                if m > super::MAX_RELATION_ARITY {
                    return Err(at(format!("arity {m} exceeds {}", super::MAX_RELATION_ARITY)));
                }
                arity = Some(m);
            }
            Some(m) => {
                if line.chars().count() != m {
                    return Err(at(format!("expected {m} bits, found `{line}`")));
                }
                let mut t = 0u64;
                for (j, c) in line.chars().enumerate() {
                    match c {
                        '0' => {}
                        '1' => t |= 1 << j,
                        _ => return Err(at(format!("unexpected character `{c}`"))),
                    }
                }
                tuples.push(t);
            }
        }
    }
    let m = arity.ok_or_else(|| Error::input("missing `arity` header"))?;
    Relation::new(m, tuples)
}

pub fn write_relation_file(r: &Relation) -> String {
    let mut out = format!("arity {}\n", r.arity());
    for t in r.tuples() {
        out.extend((0..r.arity()).map(|j| if (t >> j) & 1 == 1 { '1' } else { '0' }));
        out.push('\n');
    }
    out
}
