//! The matrices `J_n`, functions `f_n` and relations `P_n` used to embed
//! the subsets of the odd numbers into the clones between `⌊→⌋` and `W^∞`.

use super::{find_violation_by_enumeration, Constraint, Relation, TupleMatrix};
use crate::boolfn::{in_w, Depth, TruthTable};
use crate::error::{Error, Result};

const MAX_GADGET: usize = 15;

fn check(n: usize) -> Result<()> {
    if !(3..=MAX_GADGET).contains(&n) {
        return Err(Error::input(format!("gadget size must be in 3..={MAX_GADGET}, got {n}")));
    }
    Ok(())
}

/// Row indices of `J_n`: row `i < n` has ones at columns `i, i+1`, row `n`
/// at columns `1` and `n`; column `n + 1` is zero.
fn rows(n: usize) -> Vec<usize> {
    let mut rows: Vec<usize> = (0..n - 1).map(|i| 0b11 << i).collect();
    rows.push(1 | (1 << (n - 1)));
    rows
}

/// The `n × (n+1)` matrix `J_n`.
pub fn build_j(n: usize) -> Result<TupleMatrix> {
    check(n)?;
    TupleMatrix::from_rows(n + 1, &rows(n))
}

/// The `(n+1)`-ary function whose zeros are the rows of `J_n`.
pub fn build_f(n: usize) -> Result<TruthTable> {
    check(n)?;
    let zeros = rows(n);
    TruthTable::from_fn(n + 1, |i| !zeros.contains(&i))
}

/// The `n`-ary relation formed by the columns of `J_n`.
pub fn build_p(n: usize) -> Result<Relation> {
    let j = build_j(n)?;
    Relation::new(n, j.columns().iter().copied())
}

/// Whether `f_n` strongly satisfies `(P_m, {0,1}^m ∖ {0})`, for odd `m`.
/// Preservation of the right-hand side is the `W^m` test; the other half
/// enumerates all `(m+1)^(n+1)` `P_m`-matrices.
pub fn gadget_claim(m: usize, n: usize, max_matrices: u64) -> Result<bool> {
    if m.is_multiple_of(2) {
        return Err(Error::input(format!("m must be odd, got {m}")));
    }
    let f = build_f(n)?;
    let c = Constraint::new(build_p(m)?, Relation::nonzero(m)?)?;
    let preserves = in_w(&f, Depth::Finite(m));
    let satisfies = find_violation_by_enumeration(&f, &c, max_matrices)?.is_none();
    Ok(preserves && satisfies)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j3_and_f3() {
        let j = build_j(3).unwrap();
        assert_eq!(j.to_string(), "1100\n0110\n1010\n");
        let f = build_f(3).unwrap();
        assert_eq!(f.to_string(), "4:FF97");
        assert_eq!(f.zero_set(), vec![3, 5, 6]);
        assert_eq!(j.apply(&f).unwrap(), 0);
        assert_eq!(build_p(3).unwrap().tuples().collect::<Vec<_>>(), vec![0, 3, 5, 6]);
        assert!(build_j(2).is_err() && build_f(16).is_err());
    }

    #[test]
    fn j8_shape() {
        let j = build_j(8).unwrap();
        assert_eq!((j.rows(), j.cols()), (8, 9));
        assert_eq!(j.columns()[8], 0);
        assert_eq!(j.row(7), 0b1000_0001);
        assert!((0..7).all(|i| j.row(i) == 0b11 << i));
        assert_eq!(build_p(8).unwrap().len(), 9);
    }

    #[test]
    fn claim_grid() {
        assert!(!gadget_claim(3, 3, 1 << 20).unwrap());
        assert!(gadget_claim(3, 4, 1 << 20).unwrap());
        assert!(gadget_claim(3, 5, 1 << 20).unwrap());
        assert!(gadget_claim(5, 3, 1 << 20).unwrap());
        assert!(!gadget_claim(5, 5, 1 << 20).unwrap());
        assert!(gadget_claim(4, 3, 1 << 20).is_err());
        assert!(gadget_claim(5, 5, 100).is_err());
    }
}
