//! Subgyrogroups of finite gyrogroups and their left cosets.
//!
//! A nonempty `H ⊆ G` is a subgyrogroup when it is closed under `⊖` and
//! `⊕`. It is an L-subgyrogroup when `gyr[a, h](H) = H` for all `a ∈ G`,
//! `h ∈ H`, and strong when `gyr[x, y](H) = H` for all `x, y ∈ G`. Left
//! cosets `a ⊕ H` of an L-subgyrogroup partition `G`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::set::ElementSet;
use crate::table::FiniteGyrogroup;

/// Default cap on the order accepted by [`enumerate_subgyrogroups`].
pub const ENUMERATION_LIMIT: usize = 256;

/// Largest order for which the powerset strategy is allowed.
pub const POWERSET_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubgyroError {
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset is over a carrier of size {got}, expected {expected}")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("subset is not a subgyrogroup: {0}")]
    NotASubgyrogroup(ClosureWitness),
    #[error("subgyrogroup is not an L-subgyrogroup: {0}")]
    NotAnLSubgyrogroup(GyrationWitness),
    #[error("order {n} exceeds the resource limit {limit}")]
    ResourceLimit { n: usize, limit: usize },
    #[error("left cosets do not partition the carrier: {0}")]
    PartitionFailure(String),
}

/// Why a subset fails to be a subgyrogroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClosureWitness {
    /// `a, b ∈ S` but `a ⊕ b ∉ S`.
    Sum { a: usize, b: usize, sum: usize },
    /// `a ∈ S` but `⊖a ∉ S`.
    Inverse { a: usize, inverse: usize },
}

impl std::fmt::Display for ClosureWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosureWitness::Sum { a, b, sum } => write!(f, "{a} ⊕ {b} = {sum} is outside the subset"),
            ClosureWitness::Inverse { a, inverse } => write!(f, "⊖{a} = {inverse} is outside the subset"),
        }
    }
}

/// `gyr[x, y](element) = image` with `image` outside the subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GyrationWitness {
    pub x: usize,
    pub y: usize,
    pub element: usize,
    pub image: usize,
}

impl std::fmt::Display for GyrationWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "gyr[{}, {}]({}) = {} is outside the subset",
            self.x, self.y, self.element, self.image
        )
    }
}

/// A yes/no answer with the first counterexample when it is no.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub holds: bool,
    pub witness: Option<GyrationWitness>,
}

impl Classification {
    fn from_witness(witness: Option<GyrationWitness>) -> Self {
        Self { holds: witness.is_none(), witness }
    }
}

/// A subset with its classification. `is_l` and `is_strong` are `None`
/// until evaluated, and are never evaluated for non-subgyrogroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgyrogroupInfo {
    pub elements: ElementSet,
    pub is_subgyrogroup: bool,
    pub is_l: Option<bool>,
    pub is_strong: Option<bool>,
    pub closure_witness: Option<ClosureWitness>,
    pub l_witness: Option<GyrationWitness>,
    pub strong_witness: Option<GyrationWitness>,
}

fn check_universe(g: &FiniteGyrogroup, s: &ElementSet) -> Result<(), SubgyroError> {
    if s.universe() != g.order() {
        return Err(SubgyroError::UniverseMismatch { expected: g.order(), got: s.universe() });
    }
    Ok(())
}

/// First violation of closure under `⊕` (pairs in lexicographic order),
/// then under `⊖`.
pub fn closure_witness(g: &FiniteGyrogroup, s: &ElementSet) -> Option<ClosureWitness> {
    for a in s.iter() {
        for b in s.iter() {
            let sum = g.op(a, b);
            if !s.contains(sum) {
                return Some(ClosureWitness::Sum { a, b, sum });
            }
        }
    }
    s.iter().find_map(|a| {
        let inverse = g.inverse(a);
        (!s.contains(inverse)).then_some(ClosureWitness::Inverse { a, inverse })
    })
}

/// Tests closure under `⊖` and `⊕`. L and strong flags are left unset.
pub fn is_subgyrogroup(g: &FiniteGyrogroup, s: &ElementSet) -> Result<SubgyrogroupInfo, SubgyroError> {
    check_universe(g, s)?;
    if s.is_empty() {
        return Err(SubgyroError::EmptySubset);
    }
    let witness = closure_witness(g, s);
    Ok(SubgyrogroupInfo {
        elements: s.clone(),
        is_subgyrogroup: witness.is_none(),
        is_l: None,
        is_strong: None,
        closure_witness: witness,
        l_witness: None,
        strong_witness: None,
    })
}

fn require_subgyrogroup(g: &FiniteGyrogroup, h: &ElementSet) -> Result<(), SubgyroError> {
    let info = is_subgyrogroup(g, h)?;
    match info.closure_witness {
        Some(w) => Err(SubgyroError::NotASubgyrogroup(w)),
        None => Ok(()),
    }
}

/// Returns the first `(x, element)` for which `perm[element] ∉ h`.
fn escape(perm: &[usize], h: &ElementSet) -> Option<(usize, usize)> {
    h.iter().find_map(|e| (!h.contains(perm[e])).then_some((e, perm[e])))
}

/// Whether `gyr[a, h](H) = H` for every `a ∈ G` and `h ∈ H`.
pub fn classify_l(g: &FiniteGyrogroup, h: &ElementSet) -> Result<Classification, SubgyroError> {
    require_subgyrogroup(g, h)?;
    let members = h.to_vec();
    let witness = (0..g.order()).into_par_iter().find_map_first(|a| {
        members.iter().find_map(|&y| {
            escape(g.gyration(a, y), h).map(|(element, image)| GyrationWitness { x: a, y, element, image })
        })
    });
    Ok(Classification::from_witness(witness))
}

/// Whether `gyr[x, y](H) = H` for every `x, y ∈ G`.
///
/// Each distinct gyration is tested once; the witness names the first
/// `(x, y)` in row-major order whose gyration moves `H`.
pub fn classify_strong(g: &FiniteGyrogroup, h: &ElementSet) -> Result<Classification, SubgyroError> {
    require_subgyrogroup(g, h)?;
    Ok(Classification::from_witness(gyr_invariance_witness(g, h)))
}

/// First `(x, y, element)` with `gyr[x, y](element) ∉ s`, for any subset.
pub fn gyr_invariance_witness(g: &FiniteGyrogroup, s: &ElementSet) -> Option<GyrationWitness> {
    let moving: Vec<Option<(usize, usize)>> = g
        .distinct_gyrations()
        .iter()
        .map(|perm| escape(perm, s))
        .collect();
    if moving.iter().all(Option::is_none) {
        return None;
    }
    let n = g.order();
    (0..n).into_par_iter().find_map_first(|x| {
        (0..n).find_map(|y| {
            moving[g.gyration_id(x, y)].map(|(element, image)| GyrationWitness { x, y, element, image })
        })
    })
}

/// Classifies a subset fully: closure, then L and strong when it is a
/// subgyrogroup.
pub fn classify(g: &FiniteGyrogroup, s: &ElementSet) -> Result<SubgyrogroupInfo, SubgyroError> {
    let mut info = is_subgyrogroup(g, s)?;
    if info.is_subgyrogroup {
        let l = classify_l(g, s)?;
        let strong = classify_strong(g, s)?;
        info.is_l = Some(l.holds);
        info.l_witness = l.witness;
        info.is_strong = Some(strong.holds);
        info.strong_witness = strong.witness;
    }
    Ok(info)
}

/// Smallest subgyrogroup containing `seeds` and the identity.
pub fn closure(g: &FiniteGyrogroup, seeds: &ElementSet) -> ElementSet {
    let mut set = seeds.clone();
    set.insert(g.identity_element());
    let mut members = set.to_vec();
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        let mut fresh = Vec::new();
        let mut push = |v: usize, set: &mut ElementSet| {
            if !set.contains(v) {
                set.insert(v);
                fresh.push(v);
            }
        };
        push(g.inverse(x), &mut set);
        for j in 0..=i {
            let y = members[j];
            push(g.op(x, y), &mut set);
            push(g.op(y, x), &mut set);
        }
        members.extend(fresh);
        i += 1;
    }
    set
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationStrategy {
    /// Breadth-first search over closures `⟨S ∪ {x}⟩`, starting at `{0}`.
    #[default]
    Closure,
    /// Filters all `2^n` subsets; only for `n ≤ POWERSET_LIMIT`.
    Powerset,
}

/// All subgyrogroups, fully classified, sorted by size then members.
pub fn enumerate_subgyrogroups(
    g: &FiniteGyrogroup,
    strategy: EnumerationStrategy,
    limit: usize,
) -> Result<Vec<SubgyrogroupInfo>, SubgyroError> {
    let n = g.order();
    if n > limit {
        return Err(SubgyroError::ResourceLimit { n, limit });
    }
    let mut found: Vec<ElementSet> = match strategy {
        EnumerationStrategy::Closure => closure_search(g),
        EnumerationStrategy::Powerset => {
            if n > POWERSET_LIMIT {
                return Err(SubgyroError::ResourceLimit { n, limit: POWERSET_LIMIT });
            }
            let e = g.identity_element();
            (1u64..1 << n)
                .into_par_iter()
                .filter(|m| m >> e & 1 == 1)
                .map(|m| ElementSet::from_mask(n, m))
                .filter(|s| closure_witness(g, s).is_none())
                .collect()
        }
    };
    found.sort_by_key(|s| (s.len(), s.to_vec()));
    found.iter().map(|s| classify(g, s)).collect()
}

fn closure_search(g: &FiniteGyrogroup) -> Vec<ElementSet> {
    let n = g.order();
    let start = closure(g, &ElementSet::empty(n));
    let mut seen: HashSet<ElementSet> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let candidates: Vec<ElementSet> = frontier
            .par_iter()
            .flat_map_iter(|s| {
                (0..n).filter(|&x| !s.contains(x)).map(move |x| {
                    let mut seeds = s.clone();
                    seeds.insert(x);
                    closure(g, &seeds)
                })
            })
            .collect();
        frontier = candidates.into_iter().filter(|c| seen.insert(c.clone())).collect();
    }
    seen.into_iter().collect()
}

/// The left cosets `G/H` of an L-subgyrogroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetPartition {
    pub subgroup: ElementSet,
    /// Blocks sorted by representative.
    pub blocks: Vec<ElementSet>,
    /// Smallest member of each block.
    pub reps: Vec<usize>,
    /// Block id of every element.
    pub index_of: Vec<usize>,
}

impl CosetPartition {
    /// The quotient map `π(a)`, as a block id.
    pub fn project(&self, a: usize) -> usize {
        self.index_of[a]
    }

    /// `π⁻¹(block)`.
    pub fn preimage(&self, block: usize) -> &ElementSet {
        &self.blocks[block]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// `a ⊕ H`.
pub fn left_coset(g: &FiniteGyrogroup, a: usize, h: &ElementSet) -> ElementSet {
    h.map(|x| g.op(a, x))
}

/// Computes `G/H`, refusing subgyrogroups that are not L-subgyrogroups.
///
/// The partition laws (disjoint, covering, equal block size, and
/// `a ⊕ H` equal to the block containing `a` for every `a`) are verified
/// before returning.
pub fn coset_partition(g: &FiniteGyrogroup, h: &ElementSet) -> Result<CosetPartition, SubgyroError> {
    let l = classify_l(g, h)?;
    if let Some(w) = l.witness {
        return Err(SubgyroError::NotAnLSubgyrogroup(w));
    }
    let n = g.order();
    let mut blocks: Vec<ElementSet> = Vec::new();
    let mut reps = Vec::new();
    let mut index_of = vec![usize::MAX; n];
    for a in 0..n {
        if index_of[a] != usize::MAX {
            continue;
        }
        let coset = left_coset(g, a, h);
        if let Some(x) = coset.iter().find(|&x| index_of[x] != usize::MAX) {
            return Err(SubgyroError::PartitionFailure(format!(
                "{a} ⊕ H overlaps the coset of {} at {x}",
                reps[index_of[x]]
            )));
        }
        for x in coset.iter() {
            index_of[x] = blocks.len();
        }
        reps.push(a);
        blocks.push(coset);
    }
    for a in 0..n {
        let block = &blocks[index_of[a]];
        if block.len() != h.len() {
            return Err(SubgyroError::PartitionFailure(format!(
                "block of {a} has {} elements, expected {}",
                block.len(),
                h.len()
            )));
        }
        if left_coset(g, a, h) != *block {
            return Err(SubgyroError::PartitionFailure(format!("{a} ⊕ H differs from the block containing {a}")));
        }
    }
    Ok(CosetPartition { subgroup: h.clone(), blocks, reps, index_of })
}

/// Two distinct cosets that share an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CosetOverlap {
    pub a: usize,
    pub b: usize,
    pub shared: usize,
}

/// The family `{a ⊕ H}` for any nonempty subset, with overlaps reported
/// instead of rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetFamily {
    /// Distinct cosets with the first `a` producing each.
    pub cosets: Vec<(usize, ElementSet)>,
    pub overlaps: Vec<CosetOverlap>,
    pub is_partition: bool,
}

pub fn coset_family(g: &FiniteGyrogroup, h: &ElementSet) -> Result<CosetFamily, SubgyroError> {
    check_universe(g, h)?;
    if h.is_empty() {
        return Err(SubgyroError::EmptySubset);
    }
    let mut cosets: Vec<(usize, ElementSet)> = Vec::new();
    for a in 0..g.order() {
        let c = left_coset(g, a, h);
        if !cosets.iter().any(|(_, d)| *d == c) {
            cosets.push((a, c));
        }
    }
    let mut overlaps = Vec::new();
    for i in 0..cosets.len() {
        for j in i + 1..cosets.len() {
            if let Some(shared) = cosets[i].1.intersection(&cosets[j].1).first() {
                overlaps.push(CosetOverlap { a: cosets[i].0, b: cosets[j].0, shared });
            }
        }
    }
    let covered = cosets
        .iter()
        .fold(ElementSet::empty(g.order()), |acc, (_, c)| acc.union(c));
    let is_partition = overlaps.is_empty() && covered.len() == g.order();
    Ok(CosetFamily { cosets, overlaps, is_partition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::fixtures;

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn z4_closure_checks() {
        let z4 = fixtures::load("z4").unwrap();
        assert!(is_subgyrogroup(&z4, &set(4, &[0, 2])).unwrap().is_subgyrogroup);
        let info = is_subgyrogroup(&z4, &set(4, &[0, 1])).unwrap();
        assert!(!info.is_subgyrogroup);
        assert_eq!(info.closure_witness, Some(ClosureWitness::Sum { a: 1, b: 1, sum: 2 }));
        assert_eq!(is_subgyrogroup(&z4, &ElementSet::empty(4)), Err(SubgyroError::EmptySubset));
        assert!(matches!(
            is_subgyrogroup(&z4, &set(5, &[0])),
            Err(SubgyroError::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn inverse_closure_witness() {
        let z6 = fixtures::load("z6").unwrap();
        // 2 ⊕ 2 = 4 is the first sum to leave the set.
        let info = is_subgyrogroup(&z6, &set(6, &[0, 2])).unwrap();
        assert_eq!(info.closure_witness, Some(ClosureWitness::Sum { a: 2, b: 2, sum: 4 }));
        let g8 = fixtures::load("gyro8").unwrap();
        assert!(is_subgyrogroup(&g8, &set(8, &[0, 2])).unwrap().is_subgyrogroup);
    }

    #[test]
    fn identity_singleton_is_always_strong() {
        for (_, g) in fixtures::all() {
            let e = set(g.order(), &[g.identity_element()]);
            let info = classify(&g, &e).unwrap();
            assert_eq!((info.is_subgyrogroup, info.is_l, info.is_strong), (true, Some(true), Some(true)));
        }
    }

    #[test]
    fn z4_enumeration() {
        let z4 = fixtures::load("z4").unwrap();
        let subs: Vec<Vec<usize>> = enumerate_subgyrogroups(&z4, EnumerationStrategy::Closure, ENUMERATION_LIMIT)
            .unwrap()
            .into_iter()
            .map(|i| i.elements.to_vec())
            .collect();
        assert_eq!(subs, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn enumeration_limits() {
        let z6 = fixtures::load("z6").unwrap();
        assert_eq!(
            enumerate_subgyrogroups(&z6, EnumerationStrategy::Closure, 4),
            Err(SubgyroError::ResourceLimit { n: 6, limit: 4 })
        );
    }

    #[test]
    fn gyro8_has_non_l_subgyrogroups() {
        let g = fixtures::load("gyro8").unwrap();
        let h = set(8, &[0, 2]);
        let l = classify_l(&g, &h).unwrap();
        assert!(!l.holds);
        let w = l.witness.unwrap();
        assert!(h.contains(w.y));
        assert_eq!(g.gyrate(w.x, w.y, w.element), w.image);
        assert!(!h.contains(w.image));
        assert!(matches!(coset_partition(&g, &h), Err(SubgyroError::NotAnLSubgyrogroup(_))));
    }

    #[test]
    fn z4_cosets() {
        let z4 = fixtures::load("z4").unwrap();
        let p = coset_partition(&z4, &set(4, &[0, 2])).unwrap();
        assert_eq!(p.blocks, vec![set(4, &[0, 2]), set(4, &[1, 3])]);
        assert_eq!(p.reps, vec![0, 1]);
        assert_eq!(p.index_of, vec![0, 1, 0, 1]);
        assert_eq!(p.preimage(p.project(3)), &set(4, &[1, 3]));
    }

    #[test]
    fn trivial_and_full_cosets() {
        for (_, g) in fixtures::all() {
            let n = g.order();
            let p = coset_partition(&g, &set(n, &[g.identity_element()])).unwrap();
            assert_eq!(p.len(), n);
            let p = coset_partition(&g, &ElementSet::full(n)).unwrap();
            assert_eq!(p.len(), 1);
        }
    }

    #[test]
    fn coset_partition_rejects_non_subgyrogroups() {
        let z4 = fixtures::load("z4").unwrap();
        assert!(matches!(
            coset_partition(&z4, &set(4, &[0, 1])),
            Err(SubgyroError::NotASubgyrogroup(_))
        ));
    }

    #[test]
    fn coset_family_reports_overlaps_for_non_subgroups() {
        let z4 = fixtures::load("z4").unwrap();
        let fam = coset_family(&z4, &set(4, &[0, 1])).unwrap();
        assert!(!fam.is_partition);
        let o = fam.overlaps[0];
        let a = left_coset(&z4, o.a, &set(4, &[0, 1]));
        let b = left_coset(&z4, o.b, &set(4, &[0, 1]));
        assert!(a.contains(o.shared) && b.contains(o.shared) && a != b);
        let fam = coset_family(&z4, &set(4, &[0, 2])).unwrap();
        assert!(fam.is_partition);
    }
}
