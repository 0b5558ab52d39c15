use gyrokit::table::{cyclic_table, elementary_abelian_table, fixtures, parse_table, verify_table};

/// Every single-cell change of `table`, in row-major order.
fn single_cell_mutations(table: &[Vec<usize>]) -> Vec<(usize, usize, usize, Vec<Vec<usize>>)> {
    let n = table.len();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            for v in (0..n).filter(|&v| v != table[r][c]) {
                let mut t = table.to_vec();
                t[r][c] = v;
                out.push((r, c, v, t));
            }
        }
    }
    out
}

#[test]
fn every_single_cell_mutation_of_small_groups_is_rejected() {
    for table in [cyclic_table(4), elementary_abelian_table(2), cyclic_table(6)] {
        for (r, c, v, t) in single_cell_mutations(&table) {
            let (verdict, g) = verify_table(&t).unwrap();
            assert!(!verdict.valid, "({r},{c}) := {v} accepted");
            assert!(g.is_none());
            assert!(!verdict.failures.is_empty());
            for f in &verdict.failures {
                assert!(f.reproduces(&t), "({r},{c}) := {v}: {f:?} does not replay");
                assert!(!f.reproduces(&table), "({r},{c}) := {v}: {f:?} also fires on the original");
            }
        }
    }
}

#[test]
fn gyro8_mutations_are_rejected() {
    let table = fixtures::load("gyro8").unwrap().table();
    for (r, c, v, t) in single_cell_mutations(&table).into_iter().step_by(7) {
        let (verdict, _) = verify_table(&t).unwrap();
        assert!(!verdict.valid, "({r},{c}) := {v} accepted");
        assert!(verdict.failures.iter().all(|f| f.reproduces(&t)));
    }
}

#[test]
fn corrupt_fixture_reports_a_replayable_witness() {
    let t = parse_table(fixtures::Z4_CORRUPT).unwrap();
    let (verdict, _) = verify_table(&t).unwrap();
    assert!(!verdict.valid);
    assert!(verdict.failures.iter().all(|f| f.reproduces(&t)));
}
