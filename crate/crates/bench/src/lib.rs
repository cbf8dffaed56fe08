//! Fixed inputs shared by the benchmarks.

use covpar_core::{parse_cover, CoverDatum, Perm};

/// `(1 2 ... n)` and `(1 2)`, generating `S_n`.
pub fn symmetric_generators(n: usize) -> Vec<Perm> {
    vec![
        Perm::from_cycles(n, &[(1..=n).collect()]).unwrap(),
        Perm::from_cycles(n, &[vec![1, 2]]).unwrap(),
    ]
}

/// Degree 7 cover of the line with twelve simple branch points and
/// monodromy `S_7`.
pub fn simple_cover_s7() -> CoverDatum {
    parse_cover(
        r#"{"version": 1, "base_genus": 0, "degree": 7, "branch": [
            {"label": "x1", "perm": "(1 2)"}, {"label": "x2", "perm": "(2 3)"},
            {"label": "x3", "perm": "(3 4)"}, {"label": "x4", "perm": "(4 5)"},
            {"label": "x5", "perm": "(5 6)"}, {"label": "x6", "perm": "(6 7)"},
            {"label": "x7", "perm": "(6 7)"}, {"label": "x8", "perm": "(5 6)"},
            {"label": "x9", "perm": "(4 5)"}, {"label": "x10", "perm": "(3 4)"},
            {"label": "x11", "perm": "(2 3)"}, {"label": "x12", "perm": "(1 2)"}
        ]}"#,
    )
    .unwrap()
}
