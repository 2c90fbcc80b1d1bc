//! Classification of the clone generated by a set of functions.

use std::fmt;

use crate::boolfn::{is_monotone, w_depth, ClassName, Depth, Endpoint, Family, TruthTable};
use crate::classes::{clone_closure, FunctionClass};

/// Which of the unary functions `0, 1, id, ¬` a clone contains.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnaryContent {
    pub zero: bool,
    pub one: bool,
    pub id: bool,
    pub neg: bool,
}

impl fmt::Display for UnaryContent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [(self.zero, "0"), (self.one, "1"), (self.id, "id"), (self.neg, "¬")];
        let present: Vec<&str> = names.iter().filter(|(b, _)| *b).map(|(_, n)| *n).collect();
        write!(f, "{{{}}}", present.join(","))
    }
}

/// Membership of a clone in the maximal and parametrized clones of the
/// Post lattice. Together these fields determine the clone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CloneSignature {
    pub preserves_0: bool,
    pub preserves_1: bool,
    pub monotone: bool,
    pub selfdual: bool,
    pub linear: bool,
    /// Largest `k` with every generator in `W^k`; 1 when not in `W^2`.
    pub w_depth: Depth,
    /// The same for `U^k`.
    pub u_depth: Depth,
    /// Generated by conjunctions and constants.
    pub meet: bool,
    /// Generated by disjunctions and constants.
    pub join: bool,
    pub essentially_unary: bool,
    pub unary_content: UnaryContent,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for CloneSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ω_0*:{} Ω_*1:{} M:{} S:{} L:{} W-depth:{} U-depth:{} Λ:{} V:{} Ω^(1):{} unary:{}",
            yes(self.preserves_0),
            yes(self.preserves_1),
            yes(self.monotone),
            yes(self.selfdual),
            yes(self.linear),
            self.w_depth,
            self.u_depth,
            yes(self.meet),
            yes(self.join),
            yes(self.essentially_unary),
            self.unary_content
        )
    }
}

fn clamp(d: Depth) -> Depth {
    match d {
        Depth::Finite(k) => Depth::Finite(k.max(1)),
        Depth::Infinite => Depth::Infinite,
    }
}

fn w_of(f: &TruthTable) -> Depth {
    clamp(w_depth(f))
}

impl CloneSignature {
    /// The signature of `[gens]`.
    pub fn of(gens: &[TruthTable]) -> Self {
        let all = |p: &dyn Fn(&TruthTable) -> bool| gens.iter().all(p);
        let name = |f: Family| ClassName::plain(f);
        let unary = clone_closure(gens, 1).expect("bound 1");
        let has = |t: u64| unary.level(1).binary_search(&t).is_ok();
        CloneSignature {
            preserves_0: all(&|f| ClassName::new(Family::Omega, Endpoint::Zero0).contains(f)),
            preserves_1: all(&|f| ClassName::new(Family::Omega, Endpoint::One1).contains(f)),
            monotone: all(&is_monotone),
            selfdual: all(&|f| name(Family::SelfDual).contains(f)),
            linear: all(&|f| name(Family::Linear).contains(f)),
            w_depth: gens.iter().map(w_of).min().unwrap_or(Depth::Infinite),
            u_depth: gens.iter().map(|f| w_of(&f.dual())).min().unwrap_or(Depth::Infinite),
            meet: all(&|f| name(Family::Meet).contains(f)),
            join: all(&|f| name(Family::Join).contains(f)),
            essentially_unary: all(&|f| name(Family::EssentiallyUnary).contains(f)),
            unary_content: UnaryContent { zero: has(0b00), one: has(0b11), id: has(0b10), neg: has(0b01) },
        }
    }

    /// Named classes (among the maximal and parametrized ones) that
    /// contain the clone.
    pub fn containing_classes(&self) -> Vec<String> {
        let mut out = Vec::new();
        let flags = [
            (self.preserves_0, "Ω_0*"),
            (self.preserves_1, "Ω_*1"),
            (self.monotone, "M"),
            (self.selfdual, "S"),
            (self.linear, "L"),
            (self.meet, "Λ"),
            (self.join, "V"),
            (self.essentially_unary, "Ω^(1)"),
        ];
        out.extend(flags.iter().filter(|(b, _)| *b).map(|(_, n)| n.to_string()));
        if self.w_depth != Depth::Finite(1) {
            out.push(format!("W^{}", self.w_depth));
        }
        if self.u_depth != Depth::Finite(1) {
            out.push(format!("U^{}", self.u_depth));
        }
        out
    }
}

/// A signature with the display name of the clone, when it is one of the
/// labeled clones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub signature: CloneSignature,
    pub name: Option<String>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => f.write_str(n),
            None => {
                let inside = self.signature.containing_classes();
                if inside.is_empty() {
                    f.write_str("intersection: (none)")
                } else {
                    write!(f, "intersection: {}", inside.join(" ∩ "))
                }
            }
        }
    }
}

/// Signature of a named clone, read off its members with at most three
/// variables. Every labeled clone other than `W^k`, `U^k` (`k ≥ 3`) is
/// generated at that arity; for those two families the depth is set from
/// the label.
fn fragment_signature(name: ClassName) -> CloneSignature {
    let frag = FunctionClass::from_predicate(3, |f| name.contains(f)).expect("bound 3");
    CloneSignature::of(&frag.canonical_members())
}

/// The labeled clones with their signatures, `W^k`, `U^k` for
/// `2 ≤ k ≤ k_max`.
pub fn post_labels(k_max: usize) -> Vec<(String, CloneSignature)> {
    use Endpoint::*;
    use Family::*;
    let mut names = vec![
        ClassName::plain(Omega),
        ClassName::new(Omega, Zero0),
        ClassName::new(Omega, One1),
        ClassName::new(Omega, Pair(false, true)),
        ClassName::plain(Monotone),
        ClassName::plain(SelfDual),
        ClassName::plain(Linear),
        ClassName::new(Linear, Zero0),
        ClassName::new(Linear, One1),
        ClassName::plain(Meet),
        ClassName::plain(Join),
        ClassName::plain(EssentiallyUnary),
        ClassName::plain(W(Depth::Infinite)),
        ClassName::plain(U(Depth::Infinite)),
    ];
    names.extend(
        (2..=k_max).flat_map(|k| [ClassName::plain(W(Depth::Finite(k))), ClassName::plain(U(Depth::Finite(k)))]),
    );
    names
        .into_iter()
        .map(|name| {
            let mut sig = fragment_signature(name);
            match name.family {
                W(d) => sig.w_depth = d,
                U(d) => sig.u_depth = d,
                _ => {}
            }
            (name.to_string(), sig)
        })
        .collect()
}

/// Signature and name of `[gens]`. Finite depths above `k_max` are
/// reported exactly but not named.
pub fn classify_clone(gens: &[TruthTable], k_max: usize) -> Classification {
    let signature = CloneSignature::of(gens);
    let name = post_labels(k_max.min(8)).into_iter().find(|(_, s)| *s == signature).map(|(n, _)| n);
    Classification { signature, name }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::builders::w_k;

    fn tt(s: &str) -> TruthTable {
        s.parse().unwrap()
    }

    fn name(gens: &[&str]) -> String {
        let gens: Vec<TruthTable> = gens.iter().map(|s| tt(s)).collect();
        classify_clone(&gens, 6).to_string()
    }

    #[test]
    fn spot_checks() {
        assert_eq!(name(&["2:D"]), "W^∞");
        assert_eq!(name(&["2:B"]), "W^∞");
        assert_eq!(name(&["2:6", "0:1"]), "L");
        assert_eq!(name(&["2:8", "2:E", "0:0", "0:1"]), "M");
        assert_eq!(name(&["2:8", "1:1"]), "Ω");
        assert_eq!(name(&["2:6"]), "L_0*");
        assert_eq!(name(&["2:9"]), "L_*1");
        assert_eq!(name(&["2:8", "0:0", "0:1"]), "Λ");
        assert_eq!(name(&["1:1", "0:0"]), "Ω^(1)");
        assert_eq!(name(&["3:E8", "1:1"]), "S");
        assert_eq!(name(&["2:E", "3:82"]), "Ω_01");
        assert_eq!(name(&["2:4"]), "U^∞");
        for k in 2..=4 {
            let w = w_k(k).unwrap();
            assert_eq!(classify_clone(std::slice::from_ref(&w), 6).to_string(), format!("W^{k}"));
            assert_eq!(classify_clone(&[w.dual()], 6).to_string(), format!("U^{k}"));
        }
        assert!(name(&["2:8"]).starts_with("intersection: "));
    }

    #[test]
    fn signatures() {
        let s = classify_clone(&[tt("2:E"), tt("0:0")], 4).signature;
        assert!(s.preserves_0 && !s.preserves_1 && s.join && s.monotone);
        assert_eq!(s.unary_content.to_string(), "{0,id}");
        assert_eq!(s.w_depth, Depth::Finite(1));
        let empty = classify_clone(&[], 4).signature;
        assert!(empty.essentially_unary && empty.meet);
        assert_eq!(empty.unary_content.to_string(), "{id}");
    }
}
