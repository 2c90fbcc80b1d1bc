//! Skeletons: the matrices formed by at most `k` zero rows of the members
//! of a class, with repeated columns deleted.

use std::collections::BTreeSet;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::boolfn::small;
use crate::classes::FunctionClass;
use crate::error::{Error, Result};

/// A 0/1 matrix with distinct columns, each column a word over the rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkeletonMatrix {
    pub rows: usize,
    pub columns: Vec<u64>,
}

impl SkeletonMatrix {
    /// Deduplicates and sorts columns, taking the least result over all
    /// orders of the rows.
    fn canonical(rows: usize, columns: &[u64]) -> Self {
        let perms = small::permutations(rows);
        let best = perms
            .iter()
            .map(|p| {
                let mut cols: Vec<u64> =
                    columns.iter().map(|&c| (0..rows).fold(0u64, |acc, r| acc | (((c >> r) & 1) << p[r]))).collect();
                cols.sort_unstable();
                cols.dedup();
                cols
            })
            .min()
            .unwrap_or_default();
        SkeletonMatrix { rows, columns: best }
    }
}

impl fmt::Display for SkeletonMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(",")?;
            }
            for &c in &self.columns {
                f.write_str(if (c >> r) & 1 == 1 { "1" } else { "0" })?;
            }
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Skeleton {
    pub k: usize,
    pub matrices: BTreeSet<SkeletonMatrix>,
}

impl Skeleton {
    /// Hex SHA-256 of the textual form, shortened to 12 characters.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_string().as_bytes());
        hash.iter().take(6).map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}:", self.k)?;
        for m in &self.matrices {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

/// Chooses `size` rows out of `rows` (distinct) and records the resulting
/// matrices.
fn add_subsets(rows: &[usize], n: usize, k: usize, out: &mut BTreeSet<SkeletonMatrix>) {
    fn rec(
        rows: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
        n: usize,
        k: usize,
        out: &mut BTreeSet<SkeletonMatrix>,
    ) {
        let columns: Vec<u64> = (0..n)
            .map(|j| chosen.iter().enumerate().fold(0u64, |acc, (r, &row)| acc | ((((row >> j) & 1) as u64) << r)))
            .collect();
        out.insert(SkeletonMatrix::canonical(chosen.len(), &columns));
        if chosen.len() == k {
            return;
        }
        for i in from..rows.len() {
            chosen.push(rows[i]);
            rec(rows, i + 1, chosen, n, k, out);
            chosen.pop();
        }
    }
    rec(rows, 0, &mut Vec::new(), n, k, out);
}

/// Skeleton of the members of `class` at its top arity (lower-arity members
/// appear there with dummy variables).
pub fn skeleton_of(class: &FunctionClass, k: usize) -> Result<Skeleton> {
    if !(1..=6).contains(&k) {
        return Err(Error::input(format!("skeleton row bound must be in 1..=6, got {k}")));
    }
    let n = class.max_arity();
    let mut matrices = BTreeSet::new();
    let perms = small::permutations(n);
    for &t in class.level(n) {
        // one table per permutation orbit
        if perms.iter().any(|p| small::minor(t, p, n) < t) {
            continue;
        }
        let zeros: Vec<usize> = (0..1usize << n).filter(|&i| (t >> i) & 1 == 0).collect();
        add_subsets(&zeros, n, k, &mut matrices);
    }
    Ok(Skeleton { k, matrices })
}
