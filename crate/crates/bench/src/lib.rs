//! Shared fixtures for the criterion benchmarks.

use thue_core::{parse_form, BinaryForm};

/// Sparse forms of increasing degree, as `(label, form)`.
pub fn fixture_forms() -> Vec<(&'static str, BinaryForm)> {
    [
        ("r3_s2", "r=3; 0:1, 3:-2"),
        ("r6_s3", "r=6; 0:-2, 4:-5, 6:-4"),
        ("r9_s3", "r=9; 0:3, 5:-7, 9:2"),
        ("r12_s3", "r=12; 0:5, 7:9, 12:-3"),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_form(text).expect("fixture parses")))
    .collect()
}
