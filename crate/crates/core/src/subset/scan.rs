//! Sweeps over every hypothesis-satisfying tuple (or a seeded sample of
//! them) for each subset check, counting violations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    add_sets, coadd_chain, find_inverse_coset_neighborhood, inverse_coset_sides, invariant_closure, is_gyr_invariant,
    is_symmetric, neutrality_verdicts, product_chain, reassociation_sides, GyroSubset, Search, SubsetError,
};
use crate::set::ElementSet;
use crate::subgyro::{enumerate_subgyrogroups, EnumerationStrategy, SubgyrogroupInfo, ENUMERATION_LIMIT};
use crate::table::FiniteGyrogroup;

/// Largest order accepted by [`ScanScope::Exhaustive`].
pub const EXHAUSTIVE_SCAN_LIMIT: usize = 6;

/// Rejected draws allowed per requested sample before a sampled scan
/// gives up on finding more hypothesis-satisfying tuples.
const ATTEMPTS_PER_SAMPLE: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanScope {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

impl ScanScope {
    fn label(self) -> &'static str {
        match self {
            ScanScope::Exhaustive => "exhaustive",
            ScanScope::Sampled { .. } => "sampled",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub check: &'static str,
    pub scope: &'static str,
    pub instances: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

impl ScanSummary {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    violations: u64,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    /// Combines in order, so the first violation is the first in scan order.
    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.violations += other.violations;
        if self.first.is_none() {
            self.first = other.first;
        }
        self
    }

    fn finish(self, check: &'static str, scope: ScanScope) -> ScanSummary {
        ScanSummary {
            check,
            scope: scope.label(),
            instances: self.instances,
            violations: self.violations,
            first_violation: self.first,
        }
    }
}

fn ordered_sum(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

/// Orbits of `0..n` under the distinct gyrations (and `⊖` when
/// `symmetric`), sorted by smallest member. Gyr-invariant subsets are
/// exactly the unions of gyration orbits.
pub fn gyr_orbits(g: &FiniteGyrogroup, symmetric: bool) -> Vec<ElementSet> {
    let n = g.order();
    let mut seen = ElementSet::empty(n);
    let mut orbits = Vec::new();
    for x in 0..n {
        if !seen.contains(x) {
            let orbit = invariant_closure(g, &ElementSet::from_indices(n, [x]), symmetric);
            seen.union_with(&orbit);
            orbits.push(orbit);
        }
    }
    orbits
}

/// Every union of the given orbits, in mask order. Panics on more than 63
/// orbits.
pub fn invariant_subsets<'a>(g: &FiniteGyrogroup, orbits: &'a [ElementSet]) -> impl Iterator<Item = ElementSet> + 'a {
    assert!(orbits.len() < 64, "too many orbits to enumerate");
    let n = g.order();
    (0u64..1 << orbits.len()).map(move |mask| union_of(n, orbits, mask))
}

fn union_of(n: usize, orbits: &[ElementSet], mask: u64) -> ElementSet {
    let mut s = ElementSet::empty(n);
    for (i, orbit) in orbits.iter().enumerate() {
        if mask >> i & 1 == 1 {
            s.union_with(orbit);
        }
    }
    s
}

fn all_subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << n).map(move |m| ElementSet::from_mask(n, m))
}

/// Supersets of `base` within `0..n`.
fn supersets(n: usize, base: &ElementSet) -> Vec<ElementSet> {
    let free: Vec<usize> = (0..n).filter(|&x| !base.contains(x)).collect();
    (0u64..1 << free.len())
        .map(|m| {
            let mut s = base.clone();
            for (i, &x) in free.iter().enumerate() {
                if m >> i & 1 == 1 {
                    s.insert(x);
                }
            }
            s
        })
        .collect()
}

/// Subsets of `u` that are unions of orbits.
fn invariant_subsets_of(g: &FiniteGyrogroup, orbits: &[ElementSet], u: &ElementSet) -> Vec<ElementSet> {
    let inside: Vec<ElementSet> = orbits.iter().filter(|o| o.is_subset(u)).cloned().collect();
    invariant_subsets(g, &inside).collect()
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> ElementSet {
    ElementSet::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)))
}

fn random_union(rng: &mut ChaCha8Rng, n: usize, orbits: &[ElementSet]) -> ElementSet {
    let mut s = ElementSet::empty(n);
    for orbit in orbits {
        if rng.random_bool(0.5) {
            s.union_with(orbit);
        }
    }
    s
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> Option<&'a T> {
    (!items.is_empty()).then(|| &items[rng.random_range(0..items.len())])
}

fn check_scope(g: &FiniteGyrogroup, scope: ScanScope) -> Result<(), SubsetError> {
    if scope == ScanScope::Exhaustive && g.order() > EXHAUSTIVE_SCAN_LIMIT {
        return Err(SubsetError::ResourceLimit { n: g.order(), limit: EXHAUSTIVE_SCAN_LIMIT });
    }
    Ok(())
}

fn subgyrogroups(g: &FiniteGyrogroup) -> Result<Vec<SubgyrogroupInfo>, SubsetError> {
    enumerate_subgyrogroups(g, EnumerationStrategy::Closure, ENUMERATION_LIMIT)
        .map_err(|_| SubsetError::ResourceLimit { n: g.order(), limit: ENUMERATION_LIMIT })
}

fn with_identity(g: &FiniteGyrogroup, mut s: ElementSet) -> ElementSet {
    s.insert(g.identity_element());
    s
}

/// Runs `draw` until `samples` tuples have been checked or the attempt
/// budget runs out. `draw` returns `false` when its tuple misses a
/// hypothesis.
fn sampled(samples: u64, seed: u64, mut draw: impl FnMut(&mut ChaCha8Rng, &mut Tally) -> bool) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let mut attempts = 0;
    while tally.instances < samples && attempts < samples.saturating_mul(ATTEMPTS_PER_SAMPLE) {
        attempts += 1;
        draw(&mut rng, &mut tally);
    }
    tally
}

/// `(W ⊕ U) ⊕ V = W ⊕ (U ⊕ V)` over all `W`, `U` and gyr-invariant `V`.
pub fn scan_reassociation(g: &FiniteGyrogroup, scope: ScanScope) -> Result<ScanSummary, SubsetError> {
    check_scope(g, scope)?;
    let n = g.order();
    let orbits = gyr_orbits(g, false);
    let check = |w: &ElementSet, u: &ElementSet, v: &ElementSet, tally: &mut Tally| {
        let (lhs, rhs) = reassociation_sides(g, w, u, v);
        tally.record(lhs == rhs, || format!("W={{{w}}} U={{{u}}} V={{{v}}}: {{{lhs}}} ≠ {{{rhs}}}"));
    };
    let tally = match scope {
        ScanScope::Exhaustive => {
            let vs: Vec<ElementSet> = invariant_subsets(g, &orbits).collect();
            let ws: Vec<ElementSet> = all_subsets(n).collect();
            ordered_sum(
                ws.par_iter()
                    .map(|w| {
                        let mut t = Tally::default();
                        for u in &ws {
                            for v in &vs {
                                check(w, u, v, &mut t);
                            }
                        }
                        t
                    })
                    .collect(),
            )
        }
        ScanScope::Sampled { samples, seed } => sampled(samples, seed, |rng, t| {
            let (w, u) = (random_subset(rng, n), random_subset(rng, n));
            let v = random_union(rng, n, &orbits);
            check(&w, &u, &v, t);
            true
        }),
    };
    Ok(tally.finish("reassociation", scope))
}

/// `⊖(W ⊕ H) ⊆ H ⊕ V` for L-subgyrogroups `H`, `V ∋ 0` and gyr-invariant
/// symmetric `W` with `0 ∈ W ⊆ V`. Also checks that the greedy search for
/// `W` returns an admissible subset.
pub fn scan_inverse_coset(g: &FiniteGyrogroup, scope: ScanScope) -> Result<ScanSummary, SubsetError> {
    check_scope(g, scope)?;
    let n = g.order();
    let e = g.identity_element();
    let hs: Vec<ElementSet> =
        subgyrogroups(g)?.into_iter().filter(|i| i.is_l == Some(true)).map(|i| i.elements).collect();
    let sym_orbits = gyr_orbits(g, true);
    let check_w = |h: &ElementSet, v: &ElementSet, w: &ElementSet, t: &mut Tally| {
        let (lhs, rhs) = inverse_coset_sides(g, h, v, w);
        t.record(lhs.is_subset(&rhs), || {
            format!("H={{{h}}} V={{{v}}} W={{{w}}}: {} ∈ ⊖(W⊕H) \\ H⊕V", lhs.first_outside(&rhs).unwrap())
        });
    };
    let check_search = |h: &ElementSet, v: &ElementSet, t: &mut Tally| {
        let hh = GyroSubset::new(g, h.clone()).expect("same carrier");
        let vv = GyroSubset::new(g, v.clone()).expect("same carrier");
        let ok = match find_inverse_coset_neighborhood(&hh, &vv, Search::Greedy) {
            Ok(r) => r.verdict.holds && r.w.contains(e) && is_symmetric(g, &r.w) && is_gyr_invariant(g, &r.w),
            Err(_) => false,
        };
        t.record(ok, || format!("H={{{h}}} V={{{v}}}: greedy search returned an inadmissible W"));
    };
    let tally = match scope {
        ScanScope::Exhaustive => {
            let vs: Vec<ElementSet> = all_subsets(n).filter(|v| v.contains(e)).collect();
            let pairs: Vec<(&ElementSet, &ElementSet)> = hs.iter().flat_map(|h| vs.iter().map(move |v| (h, v))).collect();
            ordered_sum(
                pairs
                    .par_iter()
                    .map(|&(h, v)| {
                        let mut t = Tally::default();
                        for w in invariant_subsets_of(g, &sym_orbits, v).iter().filter(|w| w.contains(e)) {
                            check_w(h, v, w, &mut t);
                        }
                        check_search(h, v, &mut t);
                        t
                    })
                    .collect(),
            )
        }
        ScanScope::Sampled { samples, seed } => sampled(samples, seed, |rng, t| {
            let Some(h) = pick(rng, &hs) else { return false };
            let v = with_identity(g, random_subset(rng, n));
            let inside: Vec<ElementSet> = sym_orbits.iter().filter(|o| o.is_subset(&v)).cloned().collect();
            let w = with_identity(g, random_union(rng, n, &inside));
            check_w(h, &v, &w, t);
            check_search(h, &v, t);
            true
        }),
    };
    Ok(tally.finish("inverse-coset", scope))
}

/// For every subgyrogroup `H` and `U ∋ 0`, the greedy neutral `V` contains
/// `0`, satisfies both inclusions and is maximal: every `x ∉ V` breaks one
/// of them on its own.
pub fn scan_neutrality(g: &FiniteGyrogroup, scope: ScanScope) -> Result<ScanSummary, SubsetError> {
    check_scope(g, scope)?;
    let n = g.order();
    let e = g.identity_element();
    let hs: Vec<ElementSet> = subgyrogroups(g)?.into_iter().map(|i| i.elements).collect();
    let check = |h: &ElementSet, u: &ElementSet, t: &mut Tally| {
        let hh = GyroSubset::new(g, h.clone()).expect("same carrier");
        let uu = GyroSubset::new(g, u.clone()).expect("same carrier");
        let ok = match super::check_neutrality(&hh, &uu) {
            Ok(r) => {
                let singleton_ok = |x: usize| {
                    let (inner, outer) = neutrality_verdicts(g, h, u, &ElementSet::from_indices(n, [x]));
                    inner.holds && outer.holds
                };
                r.v.contains(e)
                    && r.inner.holds
                    && r.outer.holds
                    && (0..n).all(|x| r.v.contains(x) == singleton_ok(x))
            }
            Err(_) => false,
        };
        t.record(ok, || format!("H={{{h}}} U={{{u}}}: neutral V is inadmissible or not maximal"));
    };
    let tally = match scope {
        ScanScope::Exhaustive => {
            let us: Vec<ElementSet> = all_subsets(n).filter(|u| u.contains(e)).collect();
            ordered_sum(
                hs.par_iter()
                    .map(|h| {
                        let mut t = Tally::default();
                        for u in &us {
                            check(h, u, &mut t);
                        }
                        t
                    })
                    .collect(),
            )
        }
        ScanScope::Sampled { samples, seed } => sampled(samples, seed, |rng, t| {
            let Some(h) = pick(rng, &hs) else { return false };
            let u = with_identity(g, random_subset(rng, n));
            check(h, &u, t);
            true
        }),
    };
    Ok(tally.finish("neutrality", scope))
}

fn strong_subgyrogroups(g: &FiniteGyrogroup) -> Result<Vec<ElementSet>, SubsetError> {
    Ok(subgyrogroups(g)?.into_iter().filter(|i| i.is_strong == Some(true)).map(|i| i.elements).collect())
}

fn chain_violation(report: &super::ChainReport) -> String {
    match report.first_failure {
        Some(i) => {
            let s = &report.steps[i];
            format!("step {} ({} {} {}) fails at {:?}", i + 1, s.lhs_expr, s.verdict.relation.symbol(), s.rhs_expr, s.verdict.witness)
        }
        None => format!("overall inclusion fails at {:?}", report.overall.witness),
    }
}

/// The product chain over strong `H` and gyr-invariant `W ⊆ U` with
/// `H ⊕ W ⊆ U ⊕ H`.
pub fn scan_product_chain(g: &FiniteGyrogroup, scope: ScanScope) -> Result<ScanSummary, SubsetError> {
    check_scope(g, scope)?;
    let n = g.order();
    let hs = strong_subgyrogroups(g)?;
    let orbits = gyr_orbits(g, false);
    let check = |h: &ElementSet, u: &ElementSet, w: &ElementSet, t: &mut Tally| -> bool {
        if !add_sets(g, h, w).is_subset(&add_sets(g, u, h)) {
            return false;
        }
        let r = product_chain(g, w, u, h, Vec::new());
        t.record(r.holds, || format!("W={{{w}}} U={{{u}}} H={{{h}}}: {}", chain_violation(&r)));
        true
    };
    let tally = match scope {
        ScanScope::Exhaustive => {
            let us: Vec<ElementSet> = invariant_subsets(g, &orbits).collect();
            let pairs: Vec<(&ElementSet, &ElementSet)> = hs.iter().flat_map(|h| us.iter().map(move |u| (h, u))).collect();
            ordered_sum(
                pairs
                    .par_iter()
                    .map(|&(h, u)| {
                        let mut t = Tally::default();
                        for w in invariant_subsets_of(g, &orbits, u) {
                            check(h, u, &w, &mut t);
                        }
                        t
                    })
                    .collect(),
            )
        }
        ScanScope::Sampled { samples, seed } => sampled(samples, seed, |rng, t| {
            let Some(h) = pick(rng, &hs) else { return false };
            let u = random_union(rng, n, &orbits);
            let inside: Vec<ElementSet> = orbits.iter().filter(|o| o.is_subset(&u)).cloned().collect();
            let w = random_union(rng, n, &inside);
            check(h, &u, &w, t)
        }),
    };
    Ok(tally.finish("product-chain", scope))
}

/// The coaddition chain over every `a`, strong `H`, gyr-invariant `U` and
/// `W` with `H ⊕ W ⊆ U ⊕ H`, and `V ⊇ U ⊕ U`.
pub fn scan_coadd_chain(g: &FiniteGyrogroup, scope: ScanScope) -> Result<ScanSummary, SubsetError> {
    check_scope(g, scope)?;
    let n = g.order();
    let hs = strong_subgyrogroups(g)?;
    let orbits = gyr_orbits(g, false);
    let check = |a: usize, h: &ElementSet, u: &ElementSet, v: &ElementSet, w: &ElementSet, t: &mut Tally| {
        let r = coadd_chain(g, w, u, v, h, a, Vec::new());
        t.record(r.holds, || format!("a={a} W={{{w}}} U={{{u}}} V={{{v}}} H={{{h}}}: {}", chain_violation(&r)));
    };
    let tally = match scope {
        ScanScope::Exhaustive => {
            let inv: Vec<ElementSet> = invariant_subsets(g, &orbits).collect();
            let inv = &inv;
            let triples: Vec<(&ElementSet, &ElementSet, &ElementSet)> = hs
                .iter()
                .flat_map(|h| inv.iter().flat_map(move |u| inv.iter().map(move |w| (h, u, w))))
                .filter(|(h, u, w)| add_sets(g, h, w).is_subset(&add_sets(g, u, h)))
                .collect();
            ordered_sum(
                triples
                    .par_iter()
                    .map(|&(h, u, w)| {
                        let mut t = Tally::default();
                        let vs = supersets(n, &add_sets(g, u, u));
                        for a in 0..n {
                            for v in &vs {
                                check(a, h, u, v, w, &mut t);
                            }
                        }
                        t
                    })
                    .collect(),
            )
        }
        ScanScope::Sampled { samples, seed } => sampled(samples, seed, |rng, t| {
            let Some(h) = pick(rng, &hs) else { return false };
            let u = random_union(rng, n, &orbits);
            let w = random_union(rng, n, &orbits);
            if !add_sets(g, h, &w).is_subset(&add_sets(g, &u, h)) {
                return false;
            }
            let v = add_sets(g, &u, &u).union(&random_subset(rng, n));
            let a = rng.random_range(0..n);
            check(a, h, &u, &v, &w, t);
            true
        }),
    };
    Ok(tally.finish("coadd-chain", scope))
}

/// All five scans in a fixed order.
pub fn scan_all(g: &FiniteGyrogroup, scope: ScanScope) -> Result<Vec<ScanSummary>, SubsetError> {
    Ok(vec![
        scan_reassociation(g, scope)?,
        scan_inverse_coset(g, scope)?,
        scan_neutrality(g, scope)?,
        scan_product_chain(g, scope)?,
        scan_coadd_chain(g, scope)?,
    ])
}
