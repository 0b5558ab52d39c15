//! Finite gyrogroups given by Cayley tables.
//!
//! Elements are the indices `0..n`. The identity is detected rather than
//! assumed to be `0`, and gyrations are always derived from the table via
//! `gyr[a,b](c) = ⊖(a⊕b) ⊕ (a⊕(b⊕c))`, deduplicated and cached.

mod io;
pub mod fixtures;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::Gyrogroup;

pub use io::{format_table, parse_table, read_table, write_table, TableIoError};

/// Largest order accepted for verification.
pub const MAX_ORDER: usize = 4096;

/// Witnesses kept per failing axiom.
const WITNESSES_PER_AXIOM: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table has no rows")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry {value} at row {row}, column {col} is out of range for order {n}")]
    IndexOutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("order {n} exceeds the resource limit {limit}")]
    ResourceLimit { n: usize, limit: usize },
    #[error("not a group: {law} fails at {witness:?}")]
    NotAGroup { law: GroupLaw, witness: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupLaw {
    /// Witness `[a, b, c]` with `(ab)c ≠ a(bc)`.
    Associativity,
    /// Witness `[e, x]` for the closest candidate `e`.
    Identity,
    /// Witness `[x]`.
    Inverse,
}

impl fmt::Display for GroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupLaw::Associativity => "associativity",
            GroupLaw::Identity => "identity",
            GroupLaw::Inverse => "inverse",
        })
    }
}

/// One item of the verification checklist.
///
/// The witness layout for each axiom is documented on the variant and is
/// what [`TableFailure::reproduces`] re-evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableAxiom {
    /// `[e, x]`: the candidate `e` closest to an identity, and an `x` with
    /// `e⊕x ≠ x` or `x⊕e ≠ x`.
    Identity,
    /// `[x]`: no `y` with `x⊕y = 0 = y⊕x`.
    Inverse,
    /// `[a, x, y]` with `x ≠ y` and `a⊕x = a⊕y`.
    LeftTranslation,
    /// `[b, x, y]` with `x ≠ y` and `x⊕b = y⊕b`.
    RightTranslation,
    /// `[a, b, c]` with `a⊕(b⊕c) ≠ (a⊕b)⊕gyr[a,b]c`.
    LeftGyroassociative,
    /// `[a, b, x, y]` with `x ≠ y` and `gyr[a,b]x = gyr[a,b]y`.
    GyrationBijective,
    /// `[a, b, x, y]` with `gyr[a,b](x⊕y) ≠ gyr[a,b]x ⊕ gyr[a,b]y`.
    GyrationAutomorphism,
    /// `[a, b, c]` with `gyr[a⊕b, b]c ≠ gyr[a,b]c`.
    LeftLoop,
}

impl TableAxiom {
    pub fn label(self) -> &'static str {
        match self {
            TableAxiom::Identity => "G1-identity",
            TableAxiom::Inverse => "G2-inverse",
            TableAxiom::LeftTranslation => "left-translation-bijective",
            TableAxiom::RightTranslation => "right-translation-bijective",
            TableAxiom::LeftGyroassociative => "G3-left-gyroassociative",
            TableAxiom::GyrationBijective => "G3-gyration-bijective",
            TableAxiom::GyrationAutomorphism => "G3-gyration-automorphism",
            TableAxiom::LeftLoop => "G4-left-loop",
        }
    }

    pub const ALL: [TableAxiom; 8] = [
        TableAxiom::Identity,
        TableAxiom::Inverse,
        TableAxiom::LeftTranslation,
        TableAxiom::RightTranslation,
        TableAxiom::LeftGyroassociative,
        TableAxiom::GyrationBijective,
        TableAxiom::GyrationAutomorphism,
        TableAxiom::LeftLoop,
    ];

    pub fn from_label(label: &str) -> Option<TableAxiom> {
        TableAxiom::ALL.iter().copied().find(|a| a.label() == label)
    }
}

impl fmt::Display for TableAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for TableAxiom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableFailure {
    pub axiom: TableAxiom,
    pub witness: Vec<usize>,
}

impl TableFailure {
    /// Re-evaluates this failure against a raw table. Returns `true` when
    /// the witness still exhibits the violation.
    pub fn reproduces(&self, table: &[Vec<usize>]) -> bool {
        let w = &self.witness;
        let n = table.len();
        if w.iter().any(|&i| i >= n) {
            return false;
        }
        let add = |a: usize, b: usize| table[a][b];
        let identity = || (0..n).find(|&e| (0..n).all(|x| add(e, x) == x && add(x, e) == x));
        let neg = |e: usize, x: usize| (0..n).find(|&y| add(x, y) == e && add(y, x) == e);
        let gyr = |e: usize, a: usize, b: usize, c: usize| -> Option<usize> {
            Some(add(neg(e, add(a, b))?, add(a, add(b, c))))
        };
        match (self.axiom, w.as_slice()) {
            (TableAxiom::Identity, &[e, x]) => {
                identity().is_none() && (add(e, x) != x || add(x, e) != x)
            }
            (TableAxiom::Inverse, &[x]) => identity().is_some_and(|e| neg(e, x).is_none()),
            (TableAxiom::LeftTranslation, &[a, x, y]) => x != y && add(a, x) == add(a, y),
            (TableAxiom::RightTranslation, &[b, x, y]) => x != y && add(x, b) == add(y, b),
            (TableAxiom::LeftGyroassociative, &[a, b, c]) => identity().is_some_and(|e| {
                gyr(e, a, b, c).is_some_and(|g| add(a, add(b, c)) != add(add(a, b), g))
            }),
            (TableAxiom::GyrationBijective, &[a, b, x, y]) => identity().is_some_and(|e| {
                x != y && gyr(e, a, b, x).is_some() && gyr(e, a, b, x) == gyr(e, a, b, y)
            }),
            (TableAxiom::GyrationAutomorphism, &[a, b, x, y]) => identity().is_some_and(|e| {
                match (gyr(e, a, b, add(x, y)), gyr(e, a, b, x), gyr(e, a, b, y)) {
                    (Some(l), Some(gx), Some(gy)) => l != add(gx, gy),
                    _ => false,
                }
            }),
            (TableAxiom::LeftLoop, &[a, b, c]) => identity().is_some_and(|e| {
                match (gyr(e, add(a, b), b, c), gyr(e, a, b, c)) {
                    (Some(l), Some(r)) => l != r,
                    _ => false,
                }
            }),
            _ => false,
        }
    }
}

/// Outcome of [`verify_table`]. `valid` holds exactly when `failures` is
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableVerdict {
    pub valid: bool,
    pub failures: Vec<TableFailure>,
}

impl TableVerdict {
    fn from_failures(failures: Vec<TableFailure>) -> Self {
        Self { valid: failures.is_empty(), failures }
    }

    pub fn failed_axioms(&self) -> Vec<TableAxiom> {
        let mut axioms: Vec<_> = self.failures.iter().map(|f| f.axiom).collect();
        axioms.sort();
        axioms.dedup();
        axioms
    }
}

/// A verified finite gyrogroup. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGyrogroup {
    n: usize,
    add: Vec<usize>,
    identity: usize,
    neg: Vec<usize>,
    /// `n × n` indices into `gyrations`.
    gyr_index: Vec<u32>,
    /// Distinct gyration permutations in order of first appearance.
    gyrations: Vec<Vec<usize>>,
}

impl FiniteGyrogroup {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    pub fn identity_element(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// `gyr[a, b]` as a permutation of `0..n`.
    pub fn gyration(&self, a: usize, b: usize) -> &[usize] {
        &self.gyrations[self.gyr_index[a * self.n + b] as usize]
    }

    /// Index of `gyr[a, b]` in [`Self::distinct_gyrations`].
    pub fn gyration_id(&self, a: usize, b: usize) -> usize {
        self.gyr_index[a * self.n + b] as usize
    }

    pub fn gyrate(&self, a: usize, b: usize, c: usize) -> usize {
        self.gyration(a, b)[c]
    }

    /// Distinct gyrations; the identity permutation is always among them.
    pub fn distinct_gyrations(&self) -> &[Vec<usize>] {
        &self.gyrations
    }

    pub fn has_trivial_gyrations(&self) -> bool {
        self.gyrations.len() == 1 && is_identity_perm(&self.gyrations[0])
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.op(self.op(a, b), c) == self.op(a, self.op(b, c)))))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

impl Gyrogroup for FiniteGyrogroup {
    type Element = usize;

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.op(*a, *b)
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn neg(&self, a: &usize) -> usize {
        self.neg[*a]
    }

    fn residual(&self, lhs: &usize, rhs: &usize) -> f64 {
        if lhs == rhs {
            0.0
        } else {
            1.0
        }
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.n).collect())
    }

    fn gyr(&self, a: &usize, b: &usize, c: &usize) -> usize {
        self.gyrate(*a, *b, *c)
    }
}

fn is_identity_perm(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

fn check_shape(table: &[Vec<usize>], limit: usize) -> Result<(usize, Vec<usize>), TableError> {
    let n = table.len();
    if n == 0 {
        return Err(TableError::Empty);
    }
    if n > limit {
        return Err(TableError::ResourceLimit { n, limit });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(TableError::NotSquare { row, len: r.len(), n });
        }
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(TableError::IndexOutOfRange { row, col, value, n });
            }
        }
        flat.extend_from_slice(r);
    }
    Ok((n, flat))
}

/// Failures collected per axiom with a cap on stored witnesses.
#[derive(Default)]
struct FailureLog {
    failures: Vec<TableFailure>,
    counts: HashMap<TableAxiom, usize>,
}

impl FailureLog {
    fn push(&mut self, axiom: TableAxiom, witness: Vec<usize>) {
        let count = self.counts.entry(axiom).or_default();
        if *count < WITNESSES_PER_AXIOM {
            *count += 1;
            self.failures.push(TableFailure { axiom, witness });
        }
    }

    fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Gyrations of one row `a`, locally deduplicated.
struct RowGyrations {
    perms: Vec<Vec<usize>>,
    index: Vec<u32>,
    failures: Vec<TableFailure>,
}

fn row_gyrations(n: usize, add: &[usize], neg: &[usize], a: usize) -> RowGyrations {
    let op = |x: usize, y: usize| add[x * n + y];
    let mut local: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut perms = Vec::new();
    let mut index = Vec::with_capacity(n);
    let mut failures = Vec::new();
    let mut assoc_failures = 0;
    let mut bij_failures = 0;
    let mut seen = vec![usize::MAX; n];
    for b in 0..n {
        let ab = op(a, b);
        let nab = neg[ab];
        let perm: Vec<usize> = (0..n).map(|c| op(nab, op(a, op(b, c)))).collect();
        for c in 0..n {
            if assoc_failures < WITNESSES_PER_AXIOM && op(a, op(b, c)) != op(ab, perm[c]) {
                assoc_failures += 1;
                failures.push(TableFailure {
                    axiom: TableAxiom::LeftGyroassociative,
                    witness: vec![a, b, c],
                });
            }
        }
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for (x, &img) in perm.iter().enumerate() {
            if seen[img] != usize::MAX {
                if bij_failures < WITNESSES_PER_AXIOM {
                    bij_failures += 1;
                    failures.push(TableFailure {
                        axiom: TableAxiom::GyrationBijective,
                        witness: vec![a, b, seen[img], x],
                    });
                }
                break;
            }
            seen[img] = x;
        }
        let id = match local.get(&perm) {
            Some(&id) => id,
            None => {
                let id = perms.len() as u32;
                local.insert(perm.clone(), id);
                perms.push(perm);
                id
            }
        };
        index.push(id);
    }
    RowGyrations { perms, index, failures }
}

/// Computes and deduplicates every gyration of the table. Rows are
/// processed in parallel; ids are assigned in row-major order of first
/// appearance so the result is deterministic.
fn compute_gyrations(
    n: usize,
    add: &[usize],
    neg: &[usize],
) -> (Vec<u32>, Vec<Vec<usize>>, Vec<(usize, usize)>, Vec<TableFailure>) {
    let rows: Vec<RowGyrations> = (0..n)
        .into_par_iter()
        .map(|a| row_gyrations(n, add, neg, a))
        .collect();
    let mut global: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut gyrations: Vec<Vec<usize>> = Vec::new();
    let mut first_pair: Vec<(usize, usize)> = Vec::new();
    let mut gyr_index = Vec::with_capacity(n * n);
    let mut failures = Vec::new();
    for (a, row) in rows.into_iter().enumerate() {
        let remap: Vec<u32> = row
            .perms
            .into_iter()
            .enumerate()
            .map(|(local_id, perm)| {
                if let Some(&id) = global.get(&perm) {
                    return id;
                }
                let b = row.index.iter().position(|&i| i as usize == local_id).unwrap();
                let id = gyrations.len() as u32;
                global.insert(perm.clone(), id);
                gyrations.push(perm);
                first_pair.push((a, b));
                id
            })
            .collect();
        gyr_index.extend(row.index.iter().map(|&i| remap[i as usize]));
        failures.extend(row.failures);
    }
    (gyr_index, gyrations, first_pair, failures)
}

/// Runs the gyrogroup checklist on a Cayley table.
///
/// 1. a two-sided identity exists;
/// 2. every element has a two-sided inverse;
/// 3. every left and right translation is a permutation;
/// 4. every `gyr[a,b]` computed from the table satisfies the left
///    gyroassociative law, is bijective, and is an automorphism;
/// 5. the left loop property `gyr[a⊕b, b] = gyr[a, b]` holds.
///
/// Steps 4 and 5 need 1–3, so they only run when those pass. Automorphism
/// checks run once per distinct gyration.
pub fn verify_table(
    table: &[Vec<usize>],
) -> Result<(TableVerdict, Option<FiniteGyrogroup>), TableError> {
    verify_table_with_limit(table, MAX_ORDER)
}

pub fn verify_table_with_limit(
    table: &[Vec<usize>],
    limit: usize,
) -> Result<(TableVerdict, Option<FiniteGyrogroup>), TableError> {
    let (n, add) = check_shape(table, limit.min(MAX_ORDER))?;
    let op = |x: usize, y: usize| add[x * n + y];
    let mut log = FailureLog::default();

    let is_identity = |e: usize| (0..n).all(|x| op(e, x) == x && op(x, e) == x);
    let Some(identity) = (0..n).find(|&e| is_identity(e)) else {
        let score = |e: usize| (0..n).filter(|&x| op(e, x) == x && op(x, e) == x).count();
        let best = (0..n).max_by_key(|&e| (score(e), std::cmp::Reverse(e))).unwrap();
        let x = (0..n).find(|&x| op(best, x) != x || op(x, best) != x).unwrap();
        log.push(TableAxiom::Identity, vec![best, x]);
        return Ok((TableVerdict::from_failures(log.failures), None));
    };

    let mut neg = vec![usize::MAX; n];
    for x in 0..n {
        match (0..n).find(|&y| op(x, y) == identity && op(y, x) == identity) {
            Some(y) => neg[x] = y,
            None => log.push(TableAxiom::Inverse, vec![x]),
        }
    }

    let mut col_seen = vec![usize::MAX; n];
    for a in 0..n {
        col_seen.iter_mut().for_each(|s| *s = usize::MAX);
        for x in 0..n {
            let v = op(a, x);
            if col_seen[v] != usize::MAX {
                log.push(TableAxiom::LeftTranslation, vec![a, col_seen[v], x]);
                break;
            }
            col_seen[v] = x;
        }
    }
    for b in 0..n {
        col_seen.iter_mut().for_each(|s| *s = usize::MAX);
        for x in 0..n {
            let v = op(x, b);
            if col_seen[v] != usize::MAX {
                log.push(TableAxiom::RightTranslation, vec![b, col_seen[v], x]);
                break;
            }
            col_seen[v] = x;
        }
    }
    if !log.is_empty() {
        return Ok((TableVerdict::from_failures(log.failures), None));
    }

    let (gyr_index, gyrations, first_pair, gyr_failures) = compute_gyrations(n, &add, &neg);
    for f in gyr_failures {
        log.push(f.axiom, f.witness);
    }

    let auto_failures: Vec<Vec<usize>> = gyrations
        .par_iter()
        .zip(first_pair.par_iter())
        .filter_map(|(perm, &(a, b))| {
            for x in 0..n {
                for y in 0..n {
                    if perm[op(x, y)] != op(perm[x], perm[y]) {
                        return Some(vec![a, b, x, y]);
                    }
                }
            }
            None
        })
        .collect();
    for w in auto_failures {
        log.push(TableAxiom::GyrationAutomorphism, w);
    }

    for a in 0..n {
        for b in 0..n {
            let lhs = gyr_index[op(a, b) * n + b];
            let rhs = gyr_index[a * n + b];
            if lhs != rhs {
                let (p, q) = (&gyrations[lhs as usize], &gyrations[rhs as usize]);
                let c = (0..n).find(|&c| p[c] != q[c]).unwrap();
                log.push(TableAxiom::LeftLoop, vec![a, b, c]);
            }
        }
    }

    if !log.is_empty() {
        return Ok((TableVerdict::from_failures(log.failures), None));
    }
    let g = FiniteGyrogroup { n, add, identity, neg, gyr_index, gyrations };
    Ok((TableVerdict::from_failures(Vec::new()), Some(g)))
}

/// Builds a gyrogroup from a group Cayley table after checking the group
/// axioms. All gyrations of the result are the identity map.
pub fn from_group(cayley: &[Vec<usize>]) -> Result<FiniteGyrogroup, TableError> {
    let (n, add) = check_shape(cayley, MAX_ORDER)?;
    let op = |x: usize, y: usize| add[x * n + y];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if op(op(a, b), c) != op(a, op(b, c)) {
                    return Err(TableError::NotAGroup {
                        law: GroupLaw::Associativity,
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }
    let identity = match (0..n).find(|&e| (0..n).all(|x| op(e, x) == x && op(x, e) == x)) {
        Some(e) => e,
        None => {
            let x = (0..n).find(|&x| op(0, x) != x || op(x, 0) != x).unwrap();
            return Err(TableError::NotAGroup { law: GroupLaw::Identity, witness: vec![0, x] });
        }
    };
    let mut neg = Vec::with_capacity(n);
    for x in 0..n {
        match (0..n).find(|&y| op(x, y) == identity && op(y, x) == identity) {
            Some(y) => neg.push(y),
            None => return Err(TableError::NotAGroup { law: GroupLaw::Inverse, witness: vec![x] }),
        }
    }
    let (gyr_index, gyrations, _, failures) = compute_gyrations(n, &add, &neg);
    debug_assert!(failures.is_empty());
    debug_assert!(gyrations.len() == 1 && is_identity_perm(&gyrations[0]));
    Ok(FiniteGyrogroup { n, add, identity, neg, gyr_index, gyrations })
}

/// Cayley table of `Z_n`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Cayley table of `(Z_2)^k` under bitwise xor.
pub fn elementary_abelian_table(k: u32) -> Vec<Vec<usize>> {
    let n = 1usize << k;
    (0..n).map(|a| (0..n).map(|b| a ^ b).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corrupted_z4() -> Vec<Vec<usize>> {
        let mut t = cyclic_table(4);
        t[1][1] = 3;
        t
    }

    #[test]
    fn z4_and_klein_are_valid_with_trivial_gyrations() {
        for t in [cyclic_table(4), elementary_abelian_table(2)] {
            let (verdict, g) = verify_table(&t).unwrap();
            assert!(verdict.valid);
            let g = g.unwrap();
            assert!(g.has_trivial_gyrations());
            assert_eq!(g, from_group(&t).unwrap());
        }
    }

    #[test]
    fn trivial_gyrogroup() {
        let (verdict, g) = verify_table(&[vec![0]]).unwrap();
        assert!(verdict.valid);
        assert_eq!(g.unwrap().order(), 1);
    }

    #[test]
    fn corrupted_z4_is_not_a_group() {
        let err = from_group(&corrupted_z4()).unwrap_err();
        let TableError::NotAGroup { law, witness } = err else { panic!("{err:?}") };
        assert_eq!(law, GroupLaw::Associativity);
        let t = corrupted_z4();
        let [a, b, c] = witness[..] else { panic!() };
        assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
    }

    #[test]
    fn corrupted_z4_fails_verification_with_replayable_witness() {
        let t = corrupted_z4();
        let (verdict, g) = verify_table(&t).unwrap();
        assert!(!verdict.valid);
        assert!(g.is_none());
        assert_eq!(verdict.failures[0].axiom, TableAxiom::LeftTranslation);
        assert_eq!(verdict.failures[0].witness, vec![1, 1, 2]);
        for f in &verdict.failures {
            assert!(f.reproduces(&t), "{f:?}");
        }
    }

    #[test]
    fn identity_detected_away_from_zero() {
        // Z3 relabelled so that 2 is the identity.
        let relabel = [1, 2, 0];
        let base = cyclic_table(3);
        let mut t = vec![vec![0; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                t[relabel[a]][relabel[b]] = relabel[base[a][b]];
            }
        }
        let (verdict, g) = verify_table(&t).unwrap();
        assert!(verdict.valid);
        assert_eq!(g.unwrap().identity_element(), 1);
    }

    #[test]
    fn missing_identity_reports_closest_candidate() {
        let t = vec![vec![1, 1], vec![0, 0]];
        let (verdict, _) = verify_table(&t).unwrap();
        assert_eq!(verdict.failures.len(), 1);
        assert_eq!(verdict.failures[0].axiom, TableAxiom::Identity);
        assert!(verdict.failures[0].reproduces(&t));
    }

    #[test]
    fn shape_errors() {
        assert_eq!(verify_table(&[]), Err(TableError::Empty));
        assert!(matches!(
            verify_table(&[vec![0, 1], vec![1]]),
            Err(TableError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            verify_table(&[vec![0, 2], vec![1, 0]]),
            Err(TableError::IndexOutOfRange { value: 2, .. })
        ));
        assert_eq!(
            verify_table_with_limit(&cyclic_table(5), 4),
            Err(TableError::ResourceLimit { n: 5, limit: 4 })
        );
    }

    #[test]
    fn order_above_global_limit_is_refused() {
        let n = MAX_ORDER + 1;
        let big = vec![Vec::new(); n];
        assert_eq!(
            verify_table(&big),
            Err(TableError::ResourceLimit { n, limit: MAX_ORDER })
        );
    }
}
