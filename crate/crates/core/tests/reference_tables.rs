mod common;

use common::reference::{matches, references};

#[test]
fn computed_tables_match_references() {
    for r in references() {
        matches(&r, 1e-6).unwrap();
    }
}
