//! Class files: `max_arity N`, then one function literal per line. `#`
//! starts a comment.

use super::FunctionClass;
use crate::boolfn::TruthTable;
use crate::error::{Error, Result};

pub fn parse_class_file(text: &str) -> Result<FunctionClass> {
    let mut bound = None;
    let mut tables = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| Error::input(format!("line {}: {e}", no + 1));
        match bound {
            None => {
                let n = line
                    .strip_prefix("max_arity")
                    .map(str::trim)
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| at(Error::input("expected `max_arity N`")))?;
                bound = Some(n);
            }
            Some(_) => tables.push(line.parse::<TruthTable>().map_err(at)?),
        }
    }
    let n = bound.ok_or_else(|| Error::input("missing `max_arity` header"))?;
    FunctionClass::from_tables(n, &tables)
}

/// Canonical members, one per line, after the header and `comments`.
pub fn write_class_file(class: &FunctionClass, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("max_arity {}\n", class.max_arity()));
    for t in class.canonical_members() {
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = FunctionClass::from_tables(3, &["2:D".parse().unwrap(), "0:1".parse().unwrap()]).unwrap();
        let text = write_class_file(&c, &["exact"]);
        assert_eq!(text, "# exact\nmax_arity 3\n0:1\n2:D\n");
        assert_eq!(parse_class_file(&text).unwrap(), c);
        let alt = parse_class_file("max_arity 3 # bound\n\n2:B # swapped\n1:3\n").unwrap();
        assert_eq!(alt, c);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_class_file("").is_err());
        assert!(parse_class_file("max_arity x\n").is_err());
        assert!(parse_class_file("max_arity 2\n3:E8\n").is_err());
        assert!(parse_class_file("max_arity 2\nzz\n").is_err());
        assert!(parse_class_file("max_arity 9\n").is_err());
    }
}
