//! Self-checking suites, one per acceptance criterion. Each suite returns a
//! pass/fail line with its running time; exceeding the time limit fails.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::boolfn::builders::{v_j, w_k};
use crate::boolfn::{in_b, in_w, ClassName, Depth, TruthTable};
use crate::catalog::{classify_clone, interval_explore, unary_idempotent_enumeration, IntervalTarget};
use crate::classes::{
    clone_closure, compose_classes, equational_closure, idempotent_closure, is_composition_closed, z_operator,
    FunctionClass,
};
use crate::constraints::{
    build_f, catalog_constraints, find_violation_by_enumeration, gadget_claim, outer_witness, strongly_satisfies,
    witness_compositions, Constraint, HatOp, Relation,
};
use crate::error::{Error, Result};
use crate::formula::Expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Unary,
    XorClosure,
    ImpClosure,
    Hat,
    Gadgets,
    Wchain,
    Zlaws,
    Galois,
    CloneCompose,
    Intervals,
    Classify,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Unary,
        Suite::XorClosure,
        Suite::ImpClosure,
        Suite::Hat,
        Suite::Gadgets,
        Suite::Wchain,
        Suite::Zlaws,
        Suite::Galois,
        Suite::CloneCompose,
        Suite::Intervals,
        Suite::Classify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Unary => "unary",
            Suite::XorClosure => "xor-closure",
            Suite::ImpClosure => "imp-closure",
            Suite::Hat => "hat",
            Suite::Gadgets => "gadgets",
            Suite::Wchain => "wchain",
            Suite::Zlaws => "zlaws",
            Suite::Galois => "galois",
            Suite::CloneCompose => "clone-compose",
            Suite::Intervals => "intervals",
            Suite::Classify => "classify",
        }
    }

    /// Acceptance criterion number.
    pub fn criterion(self) -> usize {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") + 1
    }

    pub fn time_limit(self) -> Duration {
        let secs = match self {
            Suite::Unary => 1,
            Suite::XorClosure => 10,
            Suite::ImpClosure | Suite::Hat | Suite::Wchain | Suite::Galois | Suite::CloneCompose => 60,
            Suite::Gadgets | Suite::Intervals => 120,
            Suite::Zlaws => 30,
            Suite::Classify => 5,
        };
        Duration::from_secs(secs)
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Unary => "the 10 composition-closed classes of unary functions",
            Suite::XorClosure => "⌊+⌋ = L_00 and ⌊¬+⌋ = L_11 at N=4",
            Suite::ImpClosure => "⌊→⌋ = B^∞ at N=4",
            Suite::Hat => "outer witnesses over → and + give Ω_= and R at arity ≤ 3",
            Suite::Gadgets => "f_n strongly satisfies (P_m, {0,1}^m∖{0}) iff m ≠ n",
            Suite::Wchain => "W^3 ⊃ W^3_= ⊃ B^2∩W^3 ⊃ B^3 at N=5",
            Suite::Zlaws => "Z_2 ⊇ Z_3 ⊇ Z_∞ and Z_k B^k = B^k at N=4",
            Suite::Galois => "strongly definable classes are closed at N=3",
            Suite::CloneCompose => "C∘K = K, K∘C = C and ⌊K⌋ = [K]∘K at N=3",
            Suite::Intervals => "intervals of Ω, Ω_*1, L, L_0* and W^2",
            Suite::Classify => "clone classifier spot checks",
        }
    }

    fn check(self) -> Result<Vec<String>> {
        match self {
            Suite::Unary => unary(),
            Suite::XorClosure => xor_closure(),
            Suite::ImpClosure => imp_closure(),
            Suite::Hat => hat(),
            Suite::Gadgets => gadgets(),
            Suite::Wchain => wchain(),
            Suite::Zlaws => zlaws(),
            Suite::Galois => galois(),
            Suite::CloneCompose => clone_compose(),
            Suite::Intervals => intervals(),
            Suite::Classify => classify(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| Error::input(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub suite: Suite,
    pub passed: bool,
    pub elapsed: Duration,
    /// Failure messages, empty on success.
    pub failures: Vec<String>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {:<10} {:>9.3}s (limit {}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite.criterion(),
            self.suite.name(),
            self.elapsed.as_secs_f64(),
            self.suite.time_limit().as_secs(),
            self.suite.description()
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite) -> Outcome {
    let start = Instant::now();
    let mut failures = match suite.check() {
        Ok(f) => f,
        Err(e) => vec![format!("error: {e}")],
    };
    let elapsed = start.elapsed();
    if elapsed > suite.time_limit() {
        failures.push(format!("exceeded the time limit of {}s", suite.time_limit().as_secs()));
    }
    Outcome { suite, passed: failures.is_empty(), elapsed, failures }
}

/// Runs one suite by name, or every suite for `all`.
pub fn run(name: &str) -> Result<Vec<Outcome>> {
    if name == "all" {
        return Ok(Suite::ALL.iter().map(|&s| run_suite(s)).collect());
    }
    Ok(vec![run_suite(name.parse()?)])
}

/// Collects failure messages.
struct Checks(Vec<String>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.0.push(msg());
        }
    }

    fn done(self) -> Result<Vec<String>> {
        Ok(self.0)
    }
}

fn named(name: &str, n: usize) -> Result<FunctionClass> {
    let c: ClassName = name.parse()?;
    FunctionClass::from_predicate(n, |f| c.contains(f))
}

fn table(expr: &str, arity: usize) -> Result<TruthTable> {
    Expr::parse(expr)?.to_table(Some(arity))
}

fn unary() -> Result<Vec<String>> {
    let mut c = Checks::new();
    let got: BTreeSet<Vec<u64>> = unary_idempotent_enumeration().iter().map(|k| k.level(1).to_vec()).collect();
    // 0 = 00, 1 = 11, id = 10, ¬ = 01
    let want: BTreeSet<Vec<u64>> = [
        vec![],
        vec![0b00],
        vec![0b11],
        vec![0b00, 0b11],
        vec![0b10],
        vec![0b00, 0b10],
        vec![0b10, 0b11],
        vec![0b00, 0b10, 0b11],
        vec![0b01, 0b10],
        vec![0b00, 0b01, 0b10, 0b11],
    ]
    .into_iter()
    .collect();
    c.expect(got == want, || format!("got {got:?}"));
    c.done()
}

fn xor_closure() -> Result<Vec<String>> {
    let mut c = Checks::new();
    for (expr, name) in [("x1 + x2", "L_00"), ("!(x1 + x2)", "L_11")] {
        let got = idempotent_closure(&[table(expr, 2)?], 4)?;
        let want = named(name, 4)?;
        c.expect(got.class == want, || format!("⌊{expr}⌋ differs from {name} at N=4"));
        c.expect(got.exact, || format!("⌊{expr}⌋ fixpoint disagrees with [S]∘E(S)"));
    }
    c.done()
}

fn imp_closure() -> Result<Vec<String>> {
    let mut c = Checks::new();
    let got = idempotent_closure(&[table("x1 -> x2", 2)?], 4)?;
    let want = FunctionClass::from_predicate(4, |f| in_b(f, Depth::Infinite))?;
    c.expect(got.class == want, || "⌊→⌋ differs from B^∞ at N=4".into());
    c.expect(got.exact, || "⌊→⌋ fixpoint disagrees with [S]∘E(S)".into());
    let inside = table("x1 -> (x2 -> x3)", 3)?;
    let outside = table("(x1 -> x2) -> x3", 3)?;
    c.expect(got.class.contains(&inside), || format!("{inside} missing"));
    c.expect(!got.class.contains(&outside), || format!("{outside} present"));
    c.done()
}

fn hat() -> Result<Vec<String>> {
    let mut c = Checks::new();
    let eq = named("Ω_=", 3)?;
    let refl = named("R", 3)?;
    let one: ClassName = "Ω_*1".parse()?;
    let eleven = named("Ω_11", 3)?;
    for k in 1..=3 {
        for (op, class, name) in [(HatOp::Implication, &eq, "Ω_="), (HatOp::Xor, &refl, "R")] {
            let got: Vec<u64> =
                witness_compositions(k, op, false)?.iter().map(|h| h.as_u64().expect("small")).collect();
            c.expect(got == class.level(k), || format!("{op:?} witnesses at arity {k} differ from {name}"));
        }
        // with fill value 1 the witness for h ∈ Ω_11 lies in Ω_*1
        for &t in eleven.level(k) {
            let h = TruthTable::from_u64(k, t)?;
            let f = outer_witness(&h, HatOp::Implication, true)?;
            c.expect(f.as_ref().is_some_and(|f| f.arity() == k * k && one.contains(f)), || {
                format!("no Ω_*1 witness for {h}")
            });
        }
    }
    c.done()
}

fn gadgets() -> Result<Vec<String>> {
    let mut c = Checks::new();
    for m in [3, 5] {
        for n in [3, 4, 5] {
            let got = gadget_claim(m, n, crate::DEFAULT_MAX_MATRICES)?;
            c.expect(got == (m != n), || format!("gadget_claim({m}, {n}) = {got}"));
        }
    }
    // the preservation half at (3, 3) by enumerating all Q-matrices
    let q = Relation::nonzero(3)?;
    let f3 = build_f(3)?;
    let by_enum =
        find_violation_by_enumeration(&f3, &Constraint::new(q.clone(), q)?, crate::DEFAULT_MAX_MATRICES)?.is_none();
    c.expect(by_enum == in_w(&f3, Depth::Finite(3)), || "Q-matrix enumeration disagrees with the W^3 test".into());
    c.expect(by_enum, || "f_3 does not preserve {0,1}^3∖{0}".into());
    c.done()
}

/// Functions of arity 5 with at most three zeros. The four classes of the
/// chain are decided by the subsets of at most three zeros, so a failed
/// containment between them is witnessed by such a function.
fn sparse_zero_functions(n: usize, max_zeros: usize) -> Vec<TruthTable> {
    fn rec(n: usize, from: usize, left: usize, zeros: &mut Vec<usize>, out: &mut Vec<TruthTable>) {
        out.push(TruthTable::from_fn(n, |i| !zeros.contains(&i)).expect("small arity"));
        if left == 0 {
            return;
        }
        for p in from..(1 << n) {
            zeros.push(p);
            rec(n, p + 1, left - 1, zeros, out);
            zeros.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, max_zeros, &mut Vec::new(), &mut out);
    out
}

fn wchain() -> Result<Vec<String>> {
    let mut c = Checks::new();
    let w3 = |f: &TruthTable| in_w(f, Depth::Finite(3));
    let w3eq = |f: &TruthTable| w3(f) && f.bit(0) == f.bit(f.len() - 1);
    let b2w3 = |f: &TruthTable| w3(f) && in_b(f, Depth::Finite(2));
    let b3 = |f: &TruthTable| in_b(f, Depth::Finite(3));
    let chain: [(&str, &dyn Fn(&TruthTable) -> bool); 4] =
        [("W^3", &w3), ("W^3_=", &w3eq), ("B^2∩W^3", &b2w3), ("B^3", &b3)];
    let mut candidates = sparse_zero_functions(5, 3);
    for n in 0..=3 {
        candidates.extend((0..1u64 << (1 << n)).map(|t| TruthTable::from_u64(n, t).expect("small")));
    }
    for f in &candidates {
        for pair in chain.windows(2) {
            let (big, small) = (pair[0], pair[1]);
            c.expect(!small.1(f) || big.1(f), || format!("{f} ∈ {} but ∉ {}", small.0, big.0));
        }
    }
    let witnesses =
        [table("x1", 1)?, TruthTable::from_fn(3, |i| i != 0b001 && i != 0b010)?, v_j(2)?, table("x1 -> x2", 2)?];
    for (i, w) in witnesses.iter().enumerate() {
        c.expect(chain[i].1(w), || format!("{w} ∉ {}", chain[i].0));
        if i + 1 < chain.len() {
            c.expect(!chain[i + 1].1(w), || format!("{w} ∈ {}", chain[i + 1].0));
        }
    }
    c.expect(witnesses[2].arity() <= 5, || "v_2 exceeds the bound".into());
    c.done()
}

fn zlaws() -> Result<Vec<String>> {
    let mut c = Checks::new();
    let classes = [
        ("E(→)", equational_closure(&[table("x1 -> x2", 2)?], 4)?),
        ("E(w_2)", equational_closure(&[w_k(2)?], 4)?),
        ("B^∞", FunctionClass::from_predicate(4, |f| in_b(f, Depth::Infinite))?),
        ("Ω_=", named("Ω_=", 4)?),
        ("M", named("M", 4)?),
    ];
    for (name, k) in &classes {
        let z2 = z_operator(k, Depth::Finite(2))?;
        let z3 = z_operator(k, Depth::Finite(3))?;
        let zi = z_operator(k, Depth::Infinite)?;
        c.expect(z3.is_subset(&z2)?, || format!("Z_3 ⊄ Z_2 on {name}"));
        c.expect(zi.is_subset(&z3)?, || format!("Z_∞ ⊄ Z_3 on {name}"));
        c.expect(k.is_subset(&zi)?, || format!("{name} ⊄ Z_∞ {name}"));
    }
    for k in [2, 3] {
        let b = FunctionClass::from_predicate(4, |f| in_b(f, Depth::Finite(k)))?;
        c.expect(z_operator(&b, Depth::Finite(k))? == b, || format!("Z_{k} B^{k} ≠ B^{k}"));
    }
    c.done()
}

fn galois() -> Result<Vec<String>> {
    let mut c = Checks::new();
    for (name, constraint) in catalog_constraints() {
        let err = std::cell::RefCell::new(None);
        let class = FunctionClass::from_predicate(3, |f| {
            strongly_satisfies(f, &constraint).unwrap_or_else(|e| {
                err.borrow_mut().get_or_insert(e);
                false
            })
        })?;
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        c.expect(class.is_equational(), || format!("{name}: not minor-closed"));
        c.expect(is_composition_closed(&class), || format!("{name}: not composition-closed"));
        c.expect(class == named(name, 3)?, || format!("{name}: differs from the named class"));
    }
    c.done()
}

fn clone_compose() -> Result<Vec<String>> {
    let mut c = Checks::new();
    for name in ["R", "Ω_=", "B^2"] {
        let k = named(name, 3)?;
        let gens = k.canonical_members();
        let clone = clone_closure(&gens, 3)?;
        c.expect(compose_classes(&clone, &k)? == k, || format!("C∘K ≠ K for {name}"));
        c.expect(compose_classes(&k, &clone)? == clone, || format!("K∘C ≠ C for {name}"));
        let lower = idempotent_closure(&gens, 3)?;
        c.expect(lower.exact, || format!("the two computations of ⌊{name}⌋ differ"));
        c.expect(lower.class == k, || format!("⌊{name}⌋ ≠ {name}"));
    }
    c.done()
}

fn intervals() -> Result<Vec<String>> {
    let mut c = Checks::new();
    let closed = [
        (IntervalTarget::Omega, 3, vec!["Ω", "Ω_=", "R"]),
        (IntervalTarget::OmegaOne, 3, vec!["Ω_*1", "Ω_11", "R_11"]),
        (IntervalTarget::Linear, 4, vec!["L", "L_="]),
        (IntervalTarget::LinearZero, 4, vec!["L_0*", "L_00"]),
    ];
    for (target, n, names) in closed {
        let i = interval_explore(target, n)?;
        let labels: Vec<&str> = i.nodes.iter().map(|x| x.label.as_str()).collect();
        c.expect(labels == names, || format!("{target:?}: got {labels:?}"));
        for node in &i.nodes {
            c.expect(node.class == named(&node.label, n)?, || format!("{}: wrong class", node.label));
            c.expect(node.composition_closed && node.generates_clone, || format!("{}: check failed", node.label));
        }
        let chain: Vec<(usize, usize)> = (1..names.len()).map(|j| (j - 1, j)).collect();
        c.expect(i.edges == chain, || format!("{target:?}: edges {:?}", i.edges));
    }
    let w = interval_explore(IntervalTarget::W(2), 4)?;
    c.expect(w.nodes.len() >= 3, || format!("W^2: only {} classes", w.nodes.len()));
    let skeletons: BTreeSet<&Option<String>> = w.nodes.iter().map(|x| &x.skeleton).collect();
    c.expect(skeletons.len() == w.nodes.len(), || "W^2: repeated skeletons".into());
    c.expect(w.nodes.iter().all(|x| x.composition_closed && x.generates_clone), || {
        "W^2: a class failed its checks".into()
    });
    let idx = |l: &str| w.nodes.iter().position(|x| x.label == l);
    match (idx("W^2_="), idx("B^2")) {
        (Some(a), Some(b)) => c.expect(w.edges.contains(&(a, b)), || "W^2: no edge W^2_= → B^2".into()),
        _ => c.expect(false, || "W^2: chain classes missing".into()),
    }
    c.done()
}

fn classify() -> Result<Vec<String>> {
    let mut c = Checks::new();
    let mut cases: Vec<(Vec<TruthTable>, String)> = vec![
        (vec![table("x1 -> x2", 2)?], "W^∞".into()),
        (vec![table("x1 + x2", 2)?, TruthTable::constant(0, true)?], "L".into()),
        (
            vec![
                table("x1 & x2", 2)?,
                table("x1 | x2", 2)?,
                TruthTable::constant(0, false)?,
                TruthTable::constant(0, true)?,
            ],
            "M".into(),
        ),
    ];
    for k in 2..=4 {
        cases.push((vec![w_k(k)?], format!("W^{k}")));
    }
    for (gens, want) in cases {
        let got = classify_clone(&gens, 8).to_string();
        c.expect(got == want, || format!("expected {want}, got {got}"));
    }
    c.done()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::Classify.criterion(), 11);
        assert!("nope".parse::<Suite>().is_err());
        assert!(run("nope").is_err());
    }

    #[test]
    fn sparse_functions() {
        assert_eq!(sparse_zero_functions(5, 3).len(), 1 + 32 + 496 + 4960);
    }

    #[test]
    fn quick_suites_pass() {
        for s in [Suite::Unary, Suite::Classify, Suite::Wchain] {
            let o = run_suite(s);
            assert!(o.passed, "{o}");
        }
    }
}
