//! Named classes, the clone classifier, skeletons and interval exploration.

mod classify;
mod interval;
mod skeleton;

use std::fmt;
use std::str::FromStr;

use crate::boolfn::{ClassName, TruthTable};
use crate::classes::{is_composition_closed, FunctionClass};
use crate::error::{Error, Result};

pub use classify::{classify_clone, post_labels, Classification, CloneSignature, UnaryContent};
pub use interval::{
    export_dot, hasse_edges, interval_explore, is_sqsubseteq_ideal, Diagram, Interval, IntervalNode, IntervalTarget,
    MAX_INTERVAL_CLASSES,
};
pub use skeleton::{skeleton_of, Skeleton, SkeletonMatrix};

/// An intersection of named classes, written with `∩` or `&`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassExpr(Vec<ClassName>);

impl ClassExpr {
    pub fn new(parts: Vec<ClassName>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::input("empty class expression"));
        }
        Ok(ClassExpr(parts))
    }

    pub fn parts(&self) -> &[ClassName] {
        &self.0
    }

    pub fn contains(&self, f: &TruthTable) -> bool {
        self.0.iter().all(|c| c.contains(f))
    }

    /// The members with at most `n` variables (`n ≤ 4`).
    pub fn fragment(&self, n: usize) -> Result<FunctionClass> {
        FunctionClass::from_predicate(n, |f| self.contains(f))
    }
}

impl From<ClassName> for ClassExpr {
    fn from(c: ClassName) -> Self {
        ClassExpr(vec![c])
    }
}

impl FromStr for ClassExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s.split(['∩', '&']).map(str::parse).collect::<Result<Vec<ClassName>>>()?;
        ClassExpr::new(parts)
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("∩")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn named_class_membership(f: &TruthTable, name: &ClassExpr) -> bool {
    name.contains(f)
}

/// The composition-closed subsets of `{0, 1, id, ¬}`, each as a class at
/// bound 1. Every subset is minor-closed at this bound.
pub fn unary_idempotent_enumeration() -> Vec<FunctionClass> {
    let unary: [TruthTable; 4] = [0b00, 0b11, 0b10, 0b01].map(|t| TruthTable::from_u64_unchecked(1, t));
    (0u32..16)
        .map(|mask| {
            let members: Vec<TruthTable> = (0..4).filter(|&i| (mask >> i) & 1 == 1).map(|i| unary[i].clone()).collect();
            FunctionClass::from_tables(1, &members).expect("bound 1")
        })
        .filter(is_composition_closed)
        .collect()
}
