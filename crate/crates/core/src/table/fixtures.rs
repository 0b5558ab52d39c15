//! Bundled Cayley tables. Every table is parsed and re-verified on load;
//! nothing here is trusted to be a gyrogroup until [`verify_table`] says so.
//!
//! [`verify_table`]: super::verify_table

use super::{parse_table, verify_table, FiniteGyrogroup};

const SOURCES: &[(&str, &str)] = &[
    ("trivial", include_str!("../../fixtures/trivial.tbl")),
    ("z4", include_str!("../../fixtures/z4.tbl")),
    ("klein4", include_str!("../../fixtures/klein4.tbl")),
    ("z6", include_str!("../../fixtures/z6.tbl")),
    ("gyro8", include_str!("../../fixtures/gyro8.tbl")),
];

/// Z4 with one cell changed; a known non-gyrogroup.
pub const Z4_CORRUPT: &str = include_str!("../../fixtures/invalid/z4_corrupt.tbl");

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(name, _)| *name)
}

pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Parses and verifies a bundled fixture.
///
/// Panics if the bundled text is malformed or fails verification, which
/// would mean the fixture files themselves are broken.
pub fn load(name: &str) -> Option<FiniteGyrogroup> {
    let text = source(name)?;
    let table = parse_table(text).unwrap_or_else(|e| panic!("fixture {name}: {e}"));
    let (verdict, g) = verify_table(&table).unwrap_or_else(|e| panic!("fixture {name}: {e}"));
    assert!(verdict.valid, "fixture {name} failed verification: {:?}", verdict.failures);
    g
}

/// Every bundled fixture, smallest first.
pub fn all() -> Vec<(&'static str, FiniteGyrogroup)> {
    names().map(|n| (n, load(n).unwrap())).collect()
}

/// The group fixtures (trivial, Z4, Klein four-group, Z6).
pub fn groups() -> Vec<(&'static str, FiniteGyrogroup)> {
    all().into_iter().filter(|(_, g)| g.has_trivial_gyrations()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        let all = all();
        assert_eq!(all.len(), 5);
        assert_eq!(groups().len(), 4);
    }

    #[test]
    fn gyro8_is_a_proper_gyrogroup() {
        let g = load("gyro8").unwrap();
        assert!(!g.is_associative());
        assert!(!g.has_trivial_gyrations());
        assert_eq!(g.distinct_gyrations().len(), 2);
    }

    #[test]
    fn corrupt_fixture_is_rejected() {
        let t = parse_table(Z4_CORRUPT).unwrap();
        assert!(!verify_table(&t).unwrap().0.valid);
    }
}
