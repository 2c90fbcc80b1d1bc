//! Exact membership tests for the named classes.

use std::fmt;
use std::str::FromStr;

use super::anf::anf;
use super::table::TruthTable;
use crate::error::{Error, Result};

/// `k` in `W^k`, `B^k`, ...: a finite number or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(k) => write!(f, "{k}"),
            Depth::Infinite => f.write_str("∞"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// All functions.
    Omega,
    Monotone,
    SelfDual,
    Linear,
    /// Conjunctions and constants.
    Meet,
    /// Disjunctions and constants.
    Join,
    /// At most one essential variable.
    EssentiallyUnary,
    /// `f(¬a) = f(a)`.
    Reflexive,
    Antimonotone,
    W(Depth),
    U(Depth),
    B(Depth),
    D(Depth),
}

/// Condition on `f(0,...,0)` and `f(1,...,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Any,
    Pair(bool, bool),
    /// `f(0,...,0) = 0`.
    Zero0,
    /// `f(1,...,1) = 1`.
    One1,
    /// `f(0,...,0) = f(1,...,1)`.
    Equal,
}

impl Endpoint {
    pub fn holds(self, f: &TruthTable) -> bool {
        let lo = f.bit(0);
        let hi = f.bit(f.len() - 1);
        match self {
            Endpoint::Any => true,
            Endpoint::Pair(a, b) => lo == a && hi == b,
            Endpoint::Zero0 => !lo,
            Endpoint::One1 => hi,
            Endpoint::Equal => lo == hi,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Endpoint::Any => "",
            Endpoint::Pair(false, false) => "_00",
            Endpoint::Pair(false, true) => "_01",
            Endpoint::Pair(true, false) => "_10",
            Endpoint::Pair(true, true) => "_11",
            Endpoint::Zero0 => "_0*",
            Endpoint::One1 => "_*1",
            Endpoint::Equal => "_=",
        }
    }
}

/// A named class, e.g. `Ω_=`, `L_00`, `W^3_=`, `B^∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassName {
    pub family: Family,
    pub endpoint: Endpoint,
}

impl ClassName {
    pub const fn new(family: Family, endpoint: Endpoint) -> Self {
        ClassName { family, endpoint }
    }

    pub const fn plain(family: Family) -> Self {
        ClassName { family, endpoint: Endpoint::Any }
    }

    pub fn contains(&self, f: &TruthTable) -> bool {
        self.endpoint.holds(f) && family_contains(self.family, f)
    }
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Omega => f.write_str("Ω")?,
            Family::Monotone => f.write_str("M")?,
            Family::SelfDual => f.write_str("S")?,
            Family::Linear => f.write_str("L")?,
            Family::Meet => f.write_str("Λ")?,
            Family::Join => f.write_str("V")?,
            Family::EssentiallyUnary => f.write_str("Ω^(1)")?,
            Family::Reflexive => f.write_str("R")?,
            Family::Antimonotone => f.write_str("antimonotone")?,
            Family::W(d) => write!(f, "W^{d}")?,
            Family::U(d) => write!(f, "U^{d}")?,
            Family::B(d) => write!(f, "B^{d}")?,
            Family::D(d) => write!(f, "D^{d}")?,
        }
        f.write_str(self.endpoint.suffix())
    }
}

fn parse_depth(s: &str) -> Option<Depth> {
    let s = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(s);
    match s {
        "∞" | "inf" | "oo" => Some(Depth::Infinite),
        _ => s.parse::<usize>().ok().filter(|&k| k >= 2).map(Depth::Finite),
    }
}

impl FromStr for ClassName {
    type Err = Error;

    /// Accepts the display form and ASCII aliases (`Omega`, `Lambda`,
    /// `inf`, `Omega^(1)`), e.g. `Omega_0*`, `W^inf`, `L_=`, `W^3_=`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::input(format!("unknown class name {s:?}"));
        let t = s.trim();
        let (head, endpoint) = match t.rsplit_once('_') {
            Some((h, sub)) => {
                let e = match sub {
                    "00" => Endpoint::Pair(false, false),
                    "01" => Endpoint::Pair(false, true),
                    "10" => Endpoint::Pair(true, false),
                    "11" => Endpoint::Pair(true, true),
                    "0*" => Endpoint::Zero0,
                    "*1" => Endpoint::One1,
                    "=" => Endpoint::Equal,
                    _ => return Err(unknown()),
                };
                (h, e)
            }
            None => (t, Endpoint::Any),
        };
        let family = match head {
            "Ω" | "Omega" => Family::Omega,
            "M" => Family::Monotone,
            "S" => Family::SelfDual,
            "L" => Family::Linear,
            "Λ" | "Lambda" => Family::Meet,
            "V" => Family::Join,
            "Ω^(1)" | "Omega^(1)" | "Omega^1" | "Ω^1" => Family::EssentiallyUnary,
            "R" => Family::Reflexive,
            "antimonotone" => Family::Antimonotone,
            _ => {
                let (fam, rest) = head.split_once('^').ok_or_else(unknown)?;
                let d = parse_depth(rest).ok_or_else(unknown)?;
                match fam {
                    "W" => Family::W(d),
                    "U" => Family::U(d),
                    "B" => Family::B(d),
                    "D" => Family::D(d),
                    _ => return Err(unknown()),
                }
            }
        };
        Ok(ClassName { family, endpoint })
    }
}

/// Exact membership of `f` in `name`.
pub fn predicate(f: &TruthTable, name: &ClassName) -> bool {
    name.contains(f)
}

fn family_contains(family: Family, f: &TruthTable) -> bool {
    match family {
        Family::Omega => true,
        Family::Monotone => is_monotone(f),
        Family::SelfDual => f.dual() == *f,
        Family::Linear => anf(f).degree() <= 1,
        Family::Meet => is_meet(f),
        Family::Join => is_meet(&f.dual()),
        Family::EssentiallyUnary => f.essential_vars().len() <= 1,
        Family::Reflexive => f.reflect() == *f,
        Family::Antimonotone => is_monotone(&f.negate()),
        Family::W(d) => in_w(f, d),
        Family::U(d) => in_w(&f.dual(), d),
        Family::B(d) => in_b(f, d),
        Family::D(d) => in_b(&f.dual(), d),
    }
}

pub fn is_monotone(f: &TruthTable) -> bool {
    if let Some(t) = f.as_u64() {
        return (0..f.arity()).all(|v| {
            let s = 1u32 << v;
            t & !(t >> s) & super::table::VAR_LOW[v] == 0
        });
    }
    (0..f.arity()).all(|v| (0..f.len()).all(|i| (i >> v) & 1 == 1 || !f.bit(i) || f.bit(i | (1 << v))))
}

/// Constant, or the conjunction of its essential variables.
fn is_meet(f: &TruthTable) -> bool {
    if f.is_constant().is_some() {
        return true;
    }
    let ess = f.essential_vars();
    let mask: usize = ess.iter().map(|&v| 1usize << v).sum();
    (0..f.len()).all(|i| f.bit(i) == (i & mask == mask))
}

/// Zero rows as bit masks with duplicate and dominated rows removed.
///
/// A row contained (as a set of 1-positions) in another row never helps to
/// cover all columns, so only maximal rows matter for the `W^k` tests.
fn maximal_rows(rows: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut rows: Vec<usize> = rows.into_iter().collect();
    rows.sort_unstable_by_key(|r| std::cmp::Reverse(r.count_ones()));
    rows.dedup();
    let mut out: Vec<usize> = Vec::new();
    for r in rows {
        if !out.iter().any(|&o| o & r == r) {
            out.push(r);
        }
    }
    out
}

/// Whether at most `budget` of `rows` have 1s in every column of `full`.
fn covers(rows: &[usize], full: usize, covered: usize, budget: usize) -> bool {
    if covered == full {
        return true;
    }
    if budget == 0 {
        return false;
    }
    let c = (!covered & full).trailing_zeros();
    rows.iter().filter(|&&r| (r >> c) & 1 == 1).any(|&r| covers(rows, full, covered | r, budget - 1))
}

/// Smallest number of zero rows whose union of 1-positions is every
/// column, or `None` if the zero set has a constant 0 column.
fn min_cover(rows: &[usize], n: usize) -> Option<usize> {
    let full = (1usize << n) - 1;
    if rows.is_empty() || rows.iter().fold(0, |a, &r| a | r) != full {
        return None;
    }
    (1..=n.max(1)).find(|&b| covers(rows, full, 0, b))
}

fn violates_w(rows: Vec<usize>, n: usize, d: Depth) -> bool {
    if rows.is_empty() {
        return false;
    }
    let full = (1usize << n) - 1;
    let rows = maximal_rows(rows);
    match d {
        Depth::Infinite => rows.iter().fold(0, |a, &r| a | r) == full,
        Depth::Finite(k) => covers(&rows, full, 0, k),
    }
}

/// Every at most `k`-row submatrix of the zero set has a constant 0 column.
pub fn in_w(f: &TruthTable, d: Depth) -> bool {
    !violates_w(f.zero_set(), f.arity(), d)
}

/// Every at most `k`-row submatrix of the zero set has a constant 0 and a
/// constant 1 column.
pub fn in_b(f: &TruthTable, d: Depth) -> bool {
    let n = f.arity();
    let full = (1usize << n) - 1;
    let zeros = f.zero_set();
    let complements: Vec<usize> = zeros.iter().map(|&r| !r & full).collect();
    !violates_w(zeros, n, d) && !violates_w(complements, n, d)
}

/// The largest `k` with `f ∈ W^k` (`W^1` being `Ω_*1`), or `∞`.
pub fn w_depth(f: &TruthTable) -> Depth {
    let rows = maximal_rows(f.zero_set());
    match min_cover(&rows, f.arity()) {
        None => Depth::Infinite,
        Some(c) => Depth::Finite(c - 1),
    }
}

/// The largest `k` with `f ∈ B^k`, or `∞`. Zero means some single zero row
/// is constant, i.e. `f ∉ Ω_11`.
pub fn b_depth(f: &TruthTable) -> Depth {
    let n = f.arity();
    let full = (1usize << n) - 1;
    let zeros = f.zero_set();
    let comp = maximal_rows(zeros.iter().map(|&r| !r & full));
    let a = min_cover(&maximal_rows(zeros), n);
    let b = min_cover(&comp, n);
    match (a, b) {
        (None, None) => Depth::Infinite,
        (Some(x), None) | (None, Some(x)) => Depth::Finite(x - 1),
        (Some(x), Some(y)) => Depth::Finite(x.min(y) - 1),
    }
}
