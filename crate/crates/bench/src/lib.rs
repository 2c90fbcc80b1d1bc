//! Fixtures shared by the benchmarks.

use postlat::TruthTable;

/// Generator sets exercised by the closure benchmarks, by name.
pub fn generator_sets() -> Vec<(&'static str, Vec<TruthTable>)> {
    let t = |s: &str| s.parse::<TruthTable>().expect("valid literal");
    vec![("xor", vec![t("2:6")]), ("implication", vec![t("2:D")]), ("majority", vec![t("3:E8")])]
}
