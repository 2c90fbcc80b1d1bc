use std::fmt::Write as _;
use std::path::Path;

use postlat::boolfn::{anf, b_depth, decode, w_depth, ClassName, Depth, Endpoint, Family};
use postlat::catalog::{classify_clone, export_dot, interval_explore, IntervalTarget};
use postlat::classes::{
    clone_closure, equational_closure, idempotent_closure, iterative_closure, parse_class_file, write_class_file,
};
use postlat::constraints::{find_violation, parse_relation_file};
use postlat::{verify, Constraint, Error, FunctionClass, Result, TruthTable};

use crate::spec::FnSpec;

/// Largest bound accepted by `closure`.
pub const MAX_CLOSURE_ARITY: usize = 6;

/// Text to print and the exit status.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub code: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }
}

pub enum FnCommand {
    Table,
    Anf,
    Props,
    Classify,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn zero_set(f: &TruthTable) -> String {
    let zeros: Vec<String> = f
        .zero_set()
        .into_iter()
        .map(|i| decode(i, f.arity()).iter().map(|&b| if b { '1' } else { '0' }).collect())
        .collect();
    format!("{{{}}}", zeros.join(","))
}

/// Every named class containing `f`. Families with a depth are listed once,
/// at the largest depth.
fn memberships(f: &TruthTable) -> Vec<String> {
    use Endpoint::*;
    use Family::*;
    let endpoints =
        [Any, Zero0, One1, Equal, Pair(false, false), Pair(false, true), Pair(true, false), Pair(true, true)];
    let plain = [Omega, Monotone, SelfDual, Linear, Meet, Join, EssentiallyUnary, Reflexive, Antimonotone];
    let mut out: Vec<String> = Vec::new();
    for family in plain {
        for e in endpoints {
            let name = ClassName::new(family, e);
            if name.contains(f) {
                out.push(name.to_string());
            }
        }
    }
    let depths =
        [(W as fn(Depth) -> Family, w_depth(f)), (U, w_depth(&f.dual())), (B, b_depth(f)), (D, b_depth(&f.dual()))];
    for (family, d) in depths {
        if d >= Depth::Finite(2) {
            out.push(ClassName::plain(family(d)).to_string());
        }
    }
    out
}

pub fn cmd_fn(which: FnCommand, specs: &[FnSpec]) -> Result<Report> {
    if specs.is_empty() {
        return Err(Error::Input("at least one function is required".into()));
    }
    let mut out = String::new();
    match which {
        FnCommand::Table => {
            for s in specs {
                writeln!(out, "{} zeros {}", s.table, zero_set(&s.table)).unwrap();
            }
        }
        FnCommand::Anf => {
            for s in specs {
                writeln!(out, "{}", anf(&s.table)).unwrap();
            }
        }
        FnCommand::Props => {
            for s in specs {
                writeln!(out, "{}", s.table).unwrap();
                writeln!(out, "  member of: {}", memberships(&s.table).join(" ")).unwrap();
                writeln!(
                    out,
                    "  depths: W {} U {} B {} D {}",
                    w_depth(&s.table),
                    w_depth(&s.table.dual()),
                    b_depth(&s.table),
                    b_depth(&s.table.dual())
                )
                .unwrap();
            }
        }
        FnCommand::Classify => {
            let gens: Vec<TruthTable> = specs.iter().map(|s| s.table.clone()).collect();
            let c = classify_clone(&gens, 8);
            writeln!(out, "{c}").unwrap();
            writeln!(out, "signature: {}", c.signature).unwrap();
        }
    }
    Ok(Report::ok(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ClosureKind {
    Equational,
    Clone,
    Idempotent,
    Iterative,
}

pub fn cmd_closure(kind: ClosureKind, max_arity: usize, input: Option<&Path>, specs: &[FnSpec]) -> Result<Report> {
    if max_arity > MAX_CLOSURE_ARITY {
        return Err(Error::Input(format!("--max-arity must be at most {MAX_CLOSURE_ARITY}")));
    }
    let mut gens: Vec<TruthTable> = specs.iter().map(|s| s.table.clone()).collect();
    if let Some(path) = input {
        gens.extend(parse_class_file(&read(path)?)?.canonical_members());
    }
    if let Some(big) = gens.iter().find(|g| g.arity() > max_arity && g.essential_vars().len() > max_arity) {
        return Err(Error::Input(format!("{big} has more than {max_arity} essential variables")));
    }
    let (class, exact): (FunctionClass, bool) = match kind {
        ClosureKind::Equational => (equational_closure(&gens, max_arity)?, true),
        ClosureKind::Clone => (clone_closure(&gens, max_arity)?, true),
        ClosureKind::Idempotent => {
            let r = idempotent_closure(&gens, max_arity)?;
            (r.class, r.exact)
        }
        ClosureKind::Iterative => (iterative_closure(&gens, max_arity)?, true),
    };
    let header = if exact { "exact" } else { "approximate" };
    Ok(Report::ok(write_class_file(&class, &[header])))
}

pub fn cmd_constraint(p: &Path, q: &Path, strong: bool, spec: &FnSpec, max_matrices: u64) -> Result<Report> {
    let p = parse_relation_file(&read(p)?)?;
    let q = parse_relation_file(&read(q)?)?;
    let c = Constraint::new(p, q)?;
    let f = &spec.table;
    let mut checks = vec![("(P, Q)", c.clone())];
    if strong {
        checks.push(("(Q, Q)", c.preservation()));
    }
    let mut out = String::new();
    for (what, check) in checks {
        if let Some(m) = find_violation(f, &check, max_matrices)? {
            writeln!(out, "{f} violates {what}").unwrap();
            let rows = m.to_string();
            writeln!(out, "matrix rows {}", rows.lines().collect::<Vec<_>>().join(" ")).unwrap();
            let image = m.apply(f)?;
            let bits: String = (0..m.rows()).map(|r| if (image >> r) & 1 == 1 { '1' } else { '0' }).collect();
            writeln!(out, "image {bits}").unwrap();
            return Ok(Report { text: out, code: 1 });
        }
    }
    let what = if strong { "strongly satisfies" } else { "satisfies" };
    writeln!(out, "{f} {what} the constraint").unwrap();
    Ok(Report::ok(out))
}

pub fn cmd_interval(name: &str, k: Option<usize>, max_arity: usize, dot: Option<&Path>) -> Result<Report> {
    let target = IntervalTarget::parse(name, k)?;
    let interval = interval_explore(target, max_arity)?;
    let mut out = String::new();
    writeln!(
        out,
        "interval {} at max arity {}: {} classes ({})",
        interval.target,
        interval.bound,
        interval.nodes.len(),
        if interval.complete { "complete" } else { "lower bound" }
    )
    .unwrap();
    for node in &interval.nodes {
        let sizes: Vec<String> = node.class.level_sizes().iter().map(usize::to_string).collect();
        write!(out, "{}  sizes {}", node.label, sizes.join(",")).unwrap();
        if let Some(s) = &node.skeleton {
            write!(out, "  skeleton {s}").unwrap();
        }
        writeln!(
            out,
            "  closed {}  generates {}",
            if node.composition_closed { "yes" } else { "no" },
            if node.generates_clone { "yes" } else { "no" }
        )
        .unwrap();
    }
    for &(a, b) in &interval.edges {
        writeln!(out, "{} > {}", interval.nodes[a].label, interval.nodes[b].label).unwrap();
    }
    if interval.rejected > 0 {
        writeln!(out, "rejected candidates: {}", interval.rejected).unwrap();
    }
    if let Some(path) = dot {
        std::fs::write(path, export_dot(&interval.diagram()))
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(Report::ok(out))
}

pub fn cmd_verify(name: &str) -> Result<Report> {
    let outcomes = verify::run(name)?;
    let mut out = String::new();
    for o in &outcomes {
        writeln!(out, "{o}").unwrap();
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    writeln!(out, "{passed} of {} passed", outcomes.len()).unwrap();
    Ok(Report { text: out, code: if passed == outcomes.len() { 0 } else { 1 } })
}
