//! Function arguments: `n:HEX` literals, `expr:<formula>` and builtins.

use std::str::FromStr;

use postlat::boolfn::builders::{majority, minority, two_thirds_minority, v_j, w_k};
use postlat::constraints::build_f;
use postlat::{Error, Expr, Result, TruthTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnSpec {
    pub text: String,
    pub table: TruthTable,
}

fn numbered(s: &str, prefix: &str) -> Option<usize> {
    s.strip_prefix(prefix).filter(|r| !r.is_empty()).and_then(|r| r.parse().ok())
}

fn resolve(s: &str) -> Result<TruthTable> {
    if let Some(e) = s.strip_prefix("expr:") {
        return Expr::parse(e)?.to_table(None);
    }
    match s {
        "maj" => return Ok(majority()),
        "minr" => return Ok(minority()),
        "tmin" => return Ok(two_thirds_minority()),
        _ => {}
    }
    if let Some(k) = numbered(s, "w") {
        return w_k(k);
    }
    if let Some(j) = numbered(s, "v") {
        return v_j(j);
    }
    if let Some(n) = numbered(s, "fn") {
        return build_f(n);
    }
    if s.contains(':') {
        return s.parse();
    }
    Err(Error::Input(format!(
        "unrecognized function {s:?}; expected n:HEX, expr:..., w<k>, v<j>, maj, minr, tmin or fn<n>"
    )))
}

impl FromStr for FnSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(FnSpec { text: s.to_string(), table: resolve(s.trim())? })
    }
}
