//! The intervals `I(C)`: idempotent classes generating the clone `C`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::classify::CloneSignature;
use super::skeleton::skeleton_of;
use crate::boolfn::{ClassName, Depth, Endpoint, Family};
use crate::classes::{
    equational_closure, is_composition_closed, is_composition_closed_by_patterns, is_composition_closed_local,
    z_operator, FunctionClass,
};
use crate::error::{Error, Result};

/// Cap on the number of classes collected while exploring `I(W^k)`.
pub const MAX_INTERVAL_CLASSES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalTarget {
    Omega,
    OmegaZero,
    OmegaOne,
    Linear,
    LinearZero,
    LinearOne,
    W(usize),
    U(usize),
}

impl IntervalTarget {
    /// Parses `Omega`, `Omega_0*`, `Omega_*1`, `L`, `L_0*`, `L_*1` (also in
    /// their symbolic forms), or `W`/`U` with the parameter `k ≥ 2`.
    pub fn parse(name: &str, k: Option<usize>) -> Result<Self> {
        let need_k = || match k {
            Some(k) if k >= 2 => Ok(k),
            _ => Err(Error::input(format!("{name} needs a parameter k ≥ 2"))),
        };
        match name.trim() {
            "W" => return Ok(IntervalTarget::W(need_k()?)),
            "U" => return Ok(IntervalTarget::U(need_k()?)),
            _ => {}
        }
        let c: ClassName = name.parse()?;
        use Endpoint::*;
        match (c.family, c.endpoint) {
            (Family::Omega, Any) => Ok(IntervalTarget::Omega),
            (Family::Omega, Zero0) => Ok(IntervalTarget::OmegaZero),
            (Family::Omega, One1) => Ok(IntervalTarget::OmegaOne),
            (Family::Linear, Any) => Ok(IntervalTarget::Linear),
            (Family::Linear, Zero0) => Ok(IntervalTarget::LinearZero),
            (Family::Linear, One1) => Ok(IntervalTarget::LinearOne),
            (Family::W(Depth::Finite(k)), Any) => Ok(IntervalTarget::W(k)),
            (Family::U(Depth::Finite(k)), Any) => Ok(IntervalTarget::U(k)),
            _ => Err(Error::input(format!("no interval exploration for {name}"))),
        }
    }

    pub fn clone_name(self) -> ClassName {
        use Endpoint::*;
        match self {
            IntervalTarget::Omega => ClassName::plain(Family::Omega),
            IntervalTarget::OmegaZero => ClassName::new(Family::Omega, Zero0),
            IntervalTarget::OmegaOne => ClassName::new(Family::Omega, One1),
            IntervalTarget::Linear => ClassName::plain(Family::Linear),
            IntervalTarget::LinearZero => ClassName::new(Family::Linear, Zero0),
            IntervalTarget::LinearOne => ClassName::new(Family::Linear, One1),
            IntervalTarget::W(k) => ClassName::plain(Family::W(Depth::Finite(k))),
            IntervalTarget::U(k) => ClassName::plain(Family::U(Depth::Finite(k))),
        }
    }

    /// The interval as named classes, where it is known in closed form.
    fn closed_form(self) -> Option<Vec<ClassName>> {
        use Endpoint::*;
        let (fam, top, eq, refl) = match self {
            IntervalTarget::Omega => (Family::Omega, Any, Equal, Some(Any)),
            IntervalTarget::OmegaZero => (Family::Omega, Zero0, Pair(false, false), Some(Pair(false, false))),
            IntervalTarget::OmegaOne => (Family::Omega, One1, Pair(true, true), Some(Pair(true, true))),
            IntervalTarget::Linear => (Family::Linear, Any, Equal, None),
            IntervalTarget::LinearZero => (Family::Linear, Zero0, Pair(false, false), None),
            IntervalTarget::LinearOne => (Family::Linear, One1, Pair(true, true), None),
            _ => return None,
        };
        let mut out = vec![ClassName::new(fam, top), ClassName::new(fam, eq)];
        out.extend(refl.map(|e| ClassName::new(Family::Reflexive, e)));
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalNode {
    pub label: String,
    pub class: FunctionClass,
    /// Skeleton digest, for the `W^k` and `U^k` intervals. For `U^k` it is
    /// taken over one rows, which is the skeleton of the dual class.
    pub skeleton: Option<String>,
    pub composition_closed: bool,
    /// Whether the clone generated by the class is the target clone at the
    /// bound.
    pub generates_clone: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub target: String,
    pub bound: usize,
    /// Sorted from the largest class down.
    pub nodes: Vec<IntervalNode>,
    /// Covering pairs `(larger, smaller)` as node indices.
    pub edges: Vec<(usize, usize)>,
    /// Whether `nodes` is the whole interval (closed forms) or a lower
    /// bound on it.
    pub complete: bool,
    /// Candidates dropped because they failed a check at the bound.
    pub rejected: usize,
}

impl Interval {
    pub fn diagram(&self) -> Diagram {
        Diagram { labels: self.nodes.iter().map(|n| n.label.clone()).collect(), edges: self.edges.clone() }
    }
}

/// Labeled nodes with covering edges `(upper, lower)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

/// Covering pairs of the containment order among distinct classes.
pub fn hasse_edges(classes: &[FunctionClass]) -> Result<Vec<(usize, usize)>> {
    let n = classes.len();
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            below[i][j] = i != j && classes[j].is_subset(&classes[i])?;
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if below[i][j] && !(0..n).any(|m| below[i][m] && below[m][j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn export_dot(d: &Diagram) -> String {
    let mut out = String::from("digraph interval {\n");
    if !d.labels.is_empty() {
        out.push_str("  rankdir=TB;\n");
    }
    for (i, l) in d.labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(l));
    }
    for &(a, b) in &d.edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// Whether `K` is minor-closed at its bound and upward closed in the
/// pointwise order, i.e. `Z_∞ K = K`.
pub fn is_sqsubseteq_ideal(k: &FunctionClass) -> Result<bool> {
    Ok(k.is_equational() && z_operator(k, Depth::Infinite)? == *k)
}

fn order_nodes(mut nodes: Vec<IntervalNode>) -> Vec<IntervalNode> {
    nodes.sort_by(|a, b| {
        let sa: usize = a.class.level_sizes().iter().sum();
        let sb: usize = b.class.level_sizes().iter().sum();
        sb.cmp(&sa).then_with(|| a.label.cmp(&b.label))
    });
    nodes
}

/// Whether the clone generated by `class` is the one generated by
/// `target`. Clones are compared by their signatures, which determine a
/// clone of the Post lattice.
fn generates(class: &FunctionClass, target: &FunctionClass) -> bool {
    CloneSignature::of(&class.canonical_members()) == CloneSignature::of(&target.canonical_members())
}

/// Tries the pattern check with point sets of up to three points before
/// the generic one.
fn composition_closed(class: &FunctionClass) -> bool {
    (1..=3).find_map(|d| is_composition_closed_by_patterns(class, d)).unwrap_or_else(|| is_composition_closed(class))
}

fn closed_form_interval(target: IntervalTarget, names: Vec<ClassName>, n: usize) -> Result<Interval> {
    let clone = FunctionClass::from_predicate(n, |f| target.clone_name().contains(f))?;
    let mut nodes = Vec::new();
    for name in names {
        let class = FunctionClass::from_predicate(n, |f| name.contains(f))?;
        let generates = generates(&class, &clone);
        nodes.push(IntervalNode {
            label: name.to_string(),
            composition_closed: composition_closed(&class),
            generates_clone: generates,
            class,
            skeleton: None,
        });
    }
    finish(target, n, nodes, true, 0)
}

fn finish(
    target: IntervalTarget,
    n: usize,
    nodes: Vec<IntervalNode>,
    complete: bool,
    rejected: usize,
) -> Result<Interval> {
    let nodes = order_nodes(nodes);
    let classes: Vec<FunctionClass> = nodes.iter().map(|x| x.class.clone()).collect();
    let edges = hasse_edges(&classes)?;
    Ok(Interval { target: target.clone_name().to_string(), bound: n, nodes, edges, complete, rejected })
}

/// Smallest equational, `Z_k`-closed class at the bound containing `base`.
fn ez_closure(base: &FunctionClass, k: usize) -> Result<FunctionClass> {
    let n = base.max_arity();
    let mut cur = base.clone();
    loop {
        let e = equational_closure(&cur.canonical_members(), n)?;
        let z = z_operator(&e, Depth::Finite(k))?;
        if z == cur {
            return Ok(z);
        }
        cur = z;
    }
}

fn explore_w(k: usize, n: usize) -> Result<Interval> {
    let target = IntervalTarget::W(k);
    let wk = FunctionClass::from_predicate(n, |f| crate::boolfn::in_w(f, Depth::Finite(k)))?;
    let bk = FunctionClass::from_predicate(n, |f| crate::boolfn::in_b(f, Depth::Finite(k)))?;
    let mut seeds: Vec<(String, FunctionClass)> = vec![
        (format!("W^{k}"), wk.clone()),
        (
            format!("W^{k}_="),
            FunctionClass::from_predicate(n, |f| {
                f.bit(0) == f.bit(f.len() - 1) && crate::boolfn::in_w(f, Depth::Finite(k))
            })?,
        ),
    ];
    for j in 2..=k {
        let label = if j == k { format!("B^{k}") } else { format!("B^{j}∩W^{k}") };
        let bj = FunctionClass::from_predicate(n, |f| crate::boolfn::in_b(f, Depth::Finite(j)))?;
        seeds.push((label, bj.intersection(&wk)?));
    }
    // classes keyed by their tables, each with its first label
    let mut found: BTreeMap<Vec<Vec<u64>>, (Option<String>, FunctionClass)> = BTreeMap::new();
    let key = |c: &FunctionClass| (0..=n).map(|i| c.level(i).to_vec()).collect::<Vec<_>>();
    for (label, c) in seeds {
        found.entry(key(&c)).or_insert((Some(label), c));
    }
    for f in wk.canonical_members() {
        let base = bk.union(&FunctionClass::from_tables(n, &[f])?)?;
        let c = ez_closure(&base, k)?;
        found.entry(key(&c)).or_insert((None, c));
    }
    // close under intersections and joins
    loop {
        let classes: Vec<FunctionClass> = found.values().map(|(_, c)| c.clone()).collect();
        let mut added = false;
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                let meet = classes[i].intersection(&classes[j])?;
                let join = ez_closure(&classes[i].union(&classes[j])?, k)?;
                for c in [meet, join] {
                    if let std::collections::btree_map::Entry::Vacant(e) = found.entry(key(&c)) {
                        e.insert((None, c));
                        added = true;
                        if found.len() > MAX_INTERVAL_CLASSES {
                            return Err(Error::resource(format!(
                                "interval exploration exceeded {MAX_INTERVAL_CLASSES} classes"
                            )));
                        }
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut nodes = Vec::new();
    let mut rejected = 0;
    for (label, class) in found.into_values() {
        let ok = class.is_equational()
            && bk.is_subset(&class)?
            && class.is_subset(&wk)?
            && z_operator(&class, Depth::Finite(k))? == class
            && is_composition_closed_local(&class, k)?;
        if !ok {
            rejected += 1;
            continue;
        }
        let skeleton = skeleton_of(&class, k)?.digest();
        let generates = generates(&class, &wk);
        nodes.push(IntervalNode {
            label: label.unwrap_or_else(|| format!("K[{skeleton}]")),
            class,
            skeleton: Some(skeleton),
            composition_closed: true,
            generates_clone: generates,
        });
    }
    finish(target, n, nodes, false, rejected)
}

/// Explores `I(C)` at bound `n`. The closed-form intervals are returned in
/// full with each class checked; for `W^k` (`n ≤ 4`) the result is the set
/// of classes reachable from the seeds and principal closures, each
/// checked at the bound. `U^k` is the dual of `W^k`.
pub fn interval_explore(target: IntervalTarget, n: usize) -> Result<Interval> {
    if let Some(names) = target.closed_form() {
        return closed_form_interval(target, names, n);
    }
    match target {
        IntervalTarget::W(k) => explore_w(k, n),
        IntervalTarget::U(k) => {
            let w = explore_w(k, n)?;
            let nodes = w
                .nodes
                .into_iter()
                .map(|x| {
                    let label = match x.label.strip_prefix("K[") {
                        Some(_) => format!("K^d[{}]", x.skeleton.as_deref().unwrap_or("")),
                        None => x.label.replace('W', "U").replace('B', "D"),
                    };
                    IntervalNode { label, class: x.class.dual(), ..x }
                })
                .collect();
            finish(target, n, nodes, false, w.rejected)
        }
        _ => unreachable!("closed forms handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::TruthTable;

    #[test]
    fn omega_chain() {
        let i = interval_explore(IntervalTarget::Omega, 3).unwrap();
        let labels: Vec<&str> = i.nodes.iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels, vec!["Ω", "Ω_=", "R"]);
        assert_eq!(i.edges, vec![(0, 1), (1, 2)]);
        assert!(i.nodes.iter().all(|n| n.composition_closed && n.generates_clone));
        let dot = export_dot(&i.diagram());
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("n0 [label=\"Ω\"];"));
    }

    #[test]
    fn linear_chains() {
        for (t, want) in [(IntervalTarget::Linear, ["L", "L_="]), (IntervalTarget::LinearZero, ["L_0*", "L_00"])] {
            let i = interval_explore(t, 4).unwrap();
            let labels: Vec<&str> = i.nodes.iter().map(|n| n.label.as_str()).collect();
            assert_eq!(labels, want);
            assert!(i.nodes.iter().all(|n| n.composition_closed && n.generates_clone));
        }
    }

    #[test]
    fn w2_chain() {
        let i = interval_explore(IntervalTarget::W(2), 4).unwrap();
        let labels: Vec<&str> = i.nodes.iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels, vec!["W^2", "W^2_=", "B^2"]);
        assert_eq!(i.edges, vec![(0, 1), (1, 2)]);
        let sizes: Vec<usize> = i.nodes.iter().map(|n| n.class.level(4).len()).collect();
        assert_eq!(sizes, vec![1376, 688, 139]);
        let mut digests: Vec<&str> = i.nodes.iter().filter_map(|n| n.skeleton.as_deref()).collect();
        digests.dedup();
        assert_eq!(digests.len(), 3);
        assert!(!i.complete && i.nodes.iter().all(|n| n.composition_closed));
    }

    #[test]
    fn parse_targets() {
        assert_eq!(IntervalTarget::parse("Omega", None).unwrap(), IntervalTarget::Omega);
        assert_eq!(IntervalTarget::parse("Ω_*1", None).unwrap(), IntervalTarget::OmegaOne);
        assert_eq!(IntervalTarget::parse("W", Some(3)).unwrap(), IntervalTarget::W(3));
        assert_eq!(IntervalTarget::parse("W^2", None).unwrap(), IntervalTarget::W(2));
        assert!(IntervalTarget::parse("W", None).is_err());
        assert!(IntervalTarget::parse("M", None).is_err());
    }

    #[test]
    fn empty_dot() {
        assert_eq!(export_dot(&Diagram::default()), "digraph interval {\n}\n");
    }

    #[test]
    fn ideals() {
        let b = FunctionClass::from_predicate(3, |f| crate::boolfn::in_b(f, Depth::Infinite)).unwrap();
        assert!(is_sqsubseteq_ideal(&b).unwrap());
        let e = equational_closure(&["2:D".parse::<TruthTable>().unwrap()], 3).unwrap();
        assert!(!is_sqsubseteq_ideal(&e).unwrap());
    }
}
