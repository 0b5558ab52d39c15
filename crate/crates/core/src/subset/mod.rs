//! Subset arithmetic over a finite gyrogroup and mechanical checks of the
//! inclusion chains that hold for gyr-invariant subsets.
//!
//! `A ⊕ B = {a ⊕ b : a ∈ A, b ∈ B}` and `⊖A = {⊖a : a ∈ A}`. A subset `A`
//! is gyr-invariant when `gyr[x, y](A) = A` for all `x, y`.
//!
//! Statements phrased with neighborhoods of the identity are read on a
//! finite carrier as statements about subsets containing the identity.
//! Every check here is a consequence of the gyrogroup axioms, so a failing
//! verdict on a verified table points at a bug in the arithmetic.

mod scan;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{coadd, coadd_alt};
use crate::set::ElementSet;
use crate::subgyro::{classify_l, classify_strong, closure_witness, gyr_invariance_witness, GyrationWitness};
use crate::table::FiniteGyrogroup;

pub use scan::{
    gyr_orbits, invariant_subsets, scan_all, scan_coadd_chain, scan_inverse_coset, scan_neutrality,
    scan_product_chain, scan_reassociation, ScanScope, ScanSummary, EXHAUSTIVE_SCAN_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubsetError {
    #[error("subsets belong to different gyrogroups")]
    ParentMismatch,
    #[error("subset is over a carrier of size {got}, expected {expected}")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("element {element} is out of range for order {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("hypothesis {hypothesis} does not hold: {detail}")]
    PreconditionUnmet { hypothesis: Hypothesis, detail: String },
    #[error("order {n} exceeds the resource limit {limit}")]
    ResourceLimit { n: usize, limit: usize },
}

/// A subset of a particular finite gyrogroup.
#[derive(Clone)]
pub struct GyroSubset<'g> {
    parent: &'g FiniteGyrogroup,
    bits: ElementSet,
}

impl<'g> GyroSubset<'g> {
    pub fn new(parent: &'g FiniteGyrogroup, bits: ElementSet) -> Result<Self, SubsetError> {
        if bits.universe() != parent.order() {
            return Err(SubsetError::UniverseMismatch { expected: parent.order(), got: bits.universe() });
        }
        Ok(Self { parent, bits })
    }

    pub fn from_indices(
        parent: &'g FiniteGyrogroup,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, SubsetError> {
        let n = parent.order();
        let mut bits = ElementSet::empty(n);
        for i in indices {
            if i >= n {
                return Err(SubsetError::ElementOutOfRange { element: i, n });
            }
            bits.insert(i);
        }
        Ok(Self { parent, bits })
    }

    pub fn empty(parent: &'g FiniteGyrogroup) -> Self {
        Self { parent, bits: ElementSet::empty(parent.order()) }
    }

    pub fn full(parent: &'g FiniteGyrogroup) -> Self {
        Self { parent, bits: ElementSet::full(parent.order()) }
    }

    /// `{0}`.
    pub fn identity(parent: &'g FiniteGyrogroup) -> Self {
        Self { parent, bits: ElementSet::from_indices(parent.order(), [parent.identity_element()]) }
    }

    pub fn parent(&self) -> &'g FiniteGyrogroup {
        self.parent
    }

    pub fn bits(&self) -> &ElementSet {
        &self.bits
    }

    pub fn into_bits(self) -> ElementSet {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.bits.contains(a)
    }

    pub fn contains_identity(&self) -> bool {
        self.bits.contains(self.parent.identity_element())
    }

    fn same_parent(&self, other: &GyroSubset<'_>) -> Result<(), SubsetError> {
        if std::ptr::eq(self.parent, other.parent) {
            Ok(())
        } else {
            Err(SubsetError::ParentMismatch)
        }
    }

    fn wrap(&self, bits: ElementSet) -> Self {
        Self { parent: self.parent, bits }
    }

    /// `self ⊕ other`.
    pub fn add(&self, other: &GyroSubset<'_>) -> Result<Self, SubsetError> {
        self.same_parent(other)?;
        Ok(self.wrap(add_sets(self.parent, &self.bits, &other.bits)))
    }

    /// `⊖self`.
    pub fn neg(&self) -> Self {
        self.wrap(neg_set(self.parent, &self.bits))
    }

    /// `gyr[x, y](self)`.
    pub fn gyrate(&self, x: usize, y: usize) -> Self {
        self.wrap(gyrate_set(self.parent, x, y, &self.bits))
    }

    /// First `gyr[x, y]` moving an element out of the subset, if any.
    pub fn gyr_invariance_witness(&self) -> Option<GyrationWitness> {
        gyr_invariance_witness(self.parent, &self.bits)
    }

    pub fn is_gyr_invariant(&self) -> bool {
        self.gyr_invariance_witness().is_none()
    }

    /// `⊖A = A`.
    pub fn is_symmetric(&self) -> bool {
        is_symmetric(self.parent, &self.bits)
    }

    pub fn is_subset(&self, other: &GyroSubset<'_>) -> Result<bool, SubsetError> {
        self.same_parent(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }
}

impl PartialEq for GyroSubset<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.bits == other.bits
    }
}

impl Eq for GyroSubset<'_> {}

impl fmt::Debug for GyroSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.bits, f)
    }
}

impl fmt::Display for GyroSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.bits)
    }
}

pub fn add_sets(g: &FiniteGyrogroup, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(g.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(g.op(x, y));
        }
    }
    out
}

pub fn neg_set(g: &FiniteGyrogroup, a: &ElementSet) -> ElementSet {
    a.map(|x| g.inverse(x))
}

pub fn gyrate_set(g: &FiniteGyrogroup, x: usize, y: usize, a: &ElementSet) -> ElementSet {
    let perm = g.gyration(x, y);
    a.map(|c| perm[c])
}

pub fn is_symmetric(g: &FiniteGyrogroup, a: &ElementSet) -> bool {
    a.iter().all(|x| a.contains(g.inverse(x)))
}

pub fn is_gyr_invariant(g: &FiniteGyrogroup, a: &ElementSet) -> bool {
    gyr_invariance_witness(g, a).is_none()
}

/// Smallest gyr-invariant superset; symmetric as well when `symmetric`.
pub fn invariant_closure(g: &FiniteGyrogroup, a: &ElementSet, symmetric: bool) -> ElementSet {
    let mut set = a.clone();
    let mut stack = set.to_vec();
    while let Some(x) = stack.pop() {
        let images = g
            .distinct_gyrations()
            .iter()
            .map(|perm| perm[x])
            .chain(symmetric.then(|| g.inverse(x)));
        for y in images {
            if !set.contains(y) {
                set.insert(y);
                stack.push(y);
            }
        }
    }
    set
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Subset,
    Equal,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Subset => "⊆",
            Relation::Equal => "=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Lhs,
    Rhs,
}

/// An element of one side that the other side lacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InclusionWitness {
    pub element: usize,
    pub only_in: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InclusionVerdict {
    pub relation: Relation,
    pub holds: bool,
    pub witness: Option<InclusionWitness>,
}

impl InclusionVerdict {
    /// `lhs ⊆ rhs`; the witness is the smallest element of `lhs \ rhs`.
    pub fn subset(lhs: &ElementSet, rhs: &ElementSet) -> Self {
        let witness = lhs.first_outside(rhs).map(|element| InclusionWitness { element, only_in: Side::Lhs });
        Self { relation: Relation::Subset, holds: witness.is_none(), witness }
    }

    /// `lhs = rhs`; `lhs \ rhs` is searched before `rhs \ lhs`.
    pub fn equal(lhs: &ElementSet, rhs: &ElementSet) -> Self {
        let witness = lhs
            .first_outside(rhs)
            .map(|element| InclusionWitness { element, only_in: Side::Lhs })
            .or_else(|| rhs.first_outside(lhs).map(|element| InclusionWitness { element, only_in: Side::Rhs }));
        Self { relation: Relation::Equal, holds: witness.is_none(), witness }
    }

    pub fn evaluate(relation: Relation, lhs: &ElementSet, rhs: &ElementSet) -> Self {
        match relation {
            Relation::Subset => Self::subset(lhs, rhs),
            Relation::Equal => Self::equal(lhs, rhs),
        }
    }

    /// Whether the witness still separates the two sides.
    pub fn reproduces(&self, lhs: &ElementSet, rhs: &ElementSet) -> bool {
        match self.witness {
            None => false,
            Some(InclusionWitness { element, only_in: Side::Lhs }) => lhs.contains(element) && !rhs.contains(element),
            Some(InclusionWitness { element, only_in: Side::Rhs }) => rhs.contains(element) && !lhs.contains(element),
        }
    }
}

/// Named hypotheses of the subset checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Hypothesis {
    #[serde(rename = "W-gyr-invariant")]
    WGyrInvariant,
    #[serde(rename = "U-gyr-invariant")]
    UGyrInvariant,
    #[serde(rename = "V-gyr-invariant")]
    VGyrInvariant,
    #[serde(rename = "H-subgyrogroup")]
    HSubgyrogroup,
    #[serde(rename = "H-L-subgyrogroup")]
    HLSubgyrogroup,
    #[serde(rename = "H-strong")]
    HStrong,
    #[serde(rename = "identity-in-U")]
    IdentityInU,
    #[serde(rename = "identity-in-V")]
    IdentityInV,
    #[serde(rename = "W-within-U")]
    WWithinU,
    #[serde(rename = "HW-within-UH")]
    HwWithinUh,
    #[serde(rename = "UU-within-V")]
    UuWithinV,
}

impl Hypothesis {
    pub fn label(self) -> &'static str {
        match self {
            Hypothesis::WGyrInvariant => "W-gyr-invariant",
            Hypothesis::UGyrInvariant => "U-gyr-invariant",
            Hypothesis::VGyrInvariant => "V-gyr-invariant",
            Hypothesis::HSubgyrogroup => "H-subgyrogroup",
            Hypothesis::HLSubgyrogroup => "H-L-subgyrogroup",
            Hypothesis::HStrong => "H-strong",
            Hypothesis::IdentityInU => "identity-in-U",
            Hypothesis::IdentityInV => "identity-in-V",
            Hypothesis::WWithinU => "W-within-U",
            Hypothesis::HwWithinUh => "HW-within-UH",
            Hypothesis::UuWithinV => "UU-within-V",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Hypothesis::WGyrInvariant => "W is gyr-invariant",
            Hypothesis::UGyrInvariant => "U is gyr-invariant",
            Hypothesis::VGyrInvariant => "V is gyr-invariant",
            Hypothesis::HSubgyrogroup => "H is a subgyrogroup",
            Hypothesis::HLSubgyrogroup => "H is an L-subgyrogroup",
            Hypothesis::HStrong => "H is a strong subgyrogroup",
            Hypothesis::IdentityInU => "0 ∈ U",
            Hypothesis::IdentityInV => "0 ∈ V",
            Hypothesis::WWithinU => "W ⊆ U",
            Hypothesis::HwWithinUh => "H ⊕ W ⊆ U ⊕ H",
            Hypothesis::UuWithinV => "U ⊕ U ⊆ V",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.label(), self.statement())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnmetHypothesis {
    pub hypothesis: Hypothesis,
    pub detail: String,
}

/// `Enforce` refuses to evaluate when a hypothesis fails; `Diagnostic`
/// evaluates anyway and lists the unmet hypotheses in the report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Enforce,
    Diagnostic,
}

#[derive(Default)]
struct Preconditions {
    unmet: Vec<UnmetHypothesis>,
}

impl Preconditions {
    fn require(&mut self, hypothesis: Hypothesis, failure: Option<String>) {
        if let Some(detail) = failure {
            self.unmet.push(UnmetHypothesis { hypothesis, detail });
        }
    }

    fn invariant(&mut self, g: &FiniteGyrogroup, hypothesis: Hypothesis, s: &ElementSet) {
        self.require(hypothesis, gyr_invariance_witness(g, s).map(|w| w.to_string()));
    }

    fn identity_in(&mut self, g: &FiniteGyrogroup, hypothesis: Hypothesis, s: &ElementSet) {
        let e = g.identity_element();
        self.require(hypothesis, (!s.contains(e)).then(|| format!("{e} is missing")));
    }

    fn within(&mut self, hypothesis: Hypothesis, lhs: &ElementSet, rhs: &ElementSet) {
        self.require(hypothesis, lhs.first_outside(rhs).map(|x| format!("{x} is in the left side only")));
    }

    fn subgyrogroup(&mut self, g: &FiniteGyrogroup, h: &ElementSet) -> bool {
        let failure = if h.is_empty() {
            Some("H is empty".to_string())
        } else {
            closure_witness(g, h).map(|w| w.to_string())
        };
        let ok = failure.is_none();
        self.require(Hypothesis::HSubgyrogroup, failure);
        ok
    }

    fn l_subgyrogroup(&mut self, g: &FiniteGyrogroup, h: &ElementSet) {
        if self.subgyrogroup(g, h) {
            let c = classify_l(g, h).expect("H was checked to be a subgyrogroup");
            self.require(Hypothesis::HLSubgyrogroup, c.witness.map(|w| w.to_string()));
        }
    }

    fn strong(&mut self, g: &FiniteGyrogroup, h: &ElementSet) {
        if self.subgyrogroup(g, h) {
            let c = classify_strong(g, h).expect("H was checked to be a subgyrogroup");
            self.require(Hypothesis::HStrong, c.witness.map(|w| w.to_string()));
        }
    }

    /// Fails on the first unmet hypothesis.
    fn enforce(self) -> Result<(), SubsetError> {
        match self.unmet.into_iter().next() {
            None => Ok(()),
            Some(u) => Err(SubsetError::PreconditionUnmet { hypothesis: u.hypothesis, detail: u.detail }),
        }
    }
}

fn same_parent<'g>(sets: &[&GyroSubset<'g>]) -> Result<&'g FiniteGyrogroup, SubsetError> {
    let g = sets[0].parent;
    if sets.iter().all(|s| std::ptr::eq(s.parent, g)) {
        Ok(g)
    } else {
        Err(SubsetError::ParentMismatch)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReassociationReport {
    /// `(W ⊕ U) ⊕ V`.
    pub lhs: ElementSet,
    /// `W ⊕ (U ⊕ V)`.
    pub rhs: ElementSet,
    pub verdict: InclusionVerdict,
    pub unmet: Vec<UnmetHypothesis>,
}

/// `(W ⊕ U) ⊕ V = W ⊕ (U ⊕ V)` for gyr-invariant `V`.
pub fn check_reassociation(
    w: &GyroSubset<'_>,
    u: &GyroSubset<'_>,
    v: &GyroSubset<'_>,
    mode: Mode,
) -> Result<ReassociationReport, SubsetError> {
    let g = same_parent(&[w, u, v])?;
    let mut pre = Preconditions::default();
    pre.invariant(g, Hypothesis::VGyrInvariant, &v.bits);
    let unmet = finish_all(pre, mode)?;
    let (lhs, rhs) = reassociation_sides(g, &w.bits, &u.bits, &v.bits);
    let verdict = InclusionVerdict::equal(&lhs, &rhs);
    Ok(ReassociationReport { lhs, rhs, verdict, unmet })
}

pub(crate) fn reassociation_sides(
    g: &FiniteGyrogroup,
    w: &ElementSet,
    u: &ElementSet,
    v: &ElementSet,
) -> (ElementSet, ElementSet) {
    (add_sets(g, &add_sets(g, w, u), v), add_sets(g, w, &add_sets(g, u, v)))
}

/// Enforces the hypotheses, or returns every unmet one in diagnostic mode.
fn finish_all(pre: Preconditions, mode: Mode) -> Result<Vec<UnmetHypothesis>, SubsetError> {
    match mode {
        Mode::Diagnostic => Ok(pre.unmet),
        Mode::Enforce => pre.enforce().map(|()| Vec::new()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Search {
    /// Grow from `{0}` in ascending index order, keeping each candidate
    /// whose closure still satisfies the target.
    #[default]
    Greedy,
    /// Try every admissible subset (`n ≤ POWERSET_LIMIT` orbits) and keep
    /// the largest; ties go to the lexicographically smallest member list.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseCosetReport {
    pub w: ElementSet,
    pub w_gyr_invariant: bool,
    pub w_symmetric: bool,
    /// `⊖(W ⊕ H)`.
    pub lhs: ElementSet,
    /// `H ⊕ V`.
    pub rhs: ElementSet,
    pub verdict: InclusionVerdict,
    pub unmet: Vec<UnmetHypothesis>,
}

pub(crate) fn inverse_coset_sides(g: &FiniteGyrogroup, h: &ElementSet, v: &ElementSet, w: &ElementSet) -> (ElementSet, ElementSet) {
    (neg_set(g, &add_sets(g, w, h)), add_sets(g, h, v))
}

/// Evaluates `⊖(W ⊕ H) ⊆ H ⊕ V` for a supplied `W`.
pub fn check_inverse_coset(
    h: &GyroSubset<'_>,
    v: &GyroSubset<'_>,
    w: &GyroSubset<'_>,
    mode: Mode,
) -> Result<InverseCosetReport, SubsetError> {
    let g = same_parent(&[h, v, w])?;
    let mut pre = Preconditions::default();
    pre.l_subgyrogroup(g, &h.bits);
    pre.identity_in(g, Hypothesis::IdentityInV, &v.bits);
    let unmet = finish_all(pre, mode)?;
    Ok(inverse_coset_report(g, &h.bits, &v.bits, w.bits.clone(), unmet))
}

fn inverse_coset_report(
    g: &FiniteGyrogroup,
    h: &ElementSet,
    v: &ElementSet,
    w: ElementSet,
    unmet: Vec<UnmetHypothesis>,
) -> InverseCosetReport {
    let (lhs, rhs) = inverse_coset_sides(g, h, v, &w);
    let verdict = InclusionVerdict::subset(&lhs, &rhs);
    InverseCosetReport {
        w_gyr_invariant: is_gyr_invariant(g, &w),
        w_symmetric: is_symmetric(g, &w),
        w,
        lhs,
        rhs,
        verdict,
        unmet,
    }
}

/// Finds a large gyr-invariant symmetric `W ∋ 0` with `⊖(W ⊕ H) ⊆ H ⊕ V`.
///
/// `W = {0}` always qualifies, so the search never comes back empty-handed
/// on a valid input.
pub fn find_inverse_coset_neighborhood(
    h: &GyroSubset<'_>,
    v: &GyroSubset<'_>,
    search: Search,
) -> Result<InverseCosetReport, SubsetError> {
    let g = same_parent(&[h, v])?;
    let mut pre = Preconditions::default();
    pre.l_subgyrogroup(g, &h.bits);
    pre.identity_in(g, Hypothesis::IdentityInV, &v.bits);
    pre.enforce()?;
    let accepts = |w: &ElementSet| {
        let (lhs, rhs) = inverse_coset_sides(g, &h.bits, &v.bits, w);
        lhs.is_subset(&rhs)
    };
    let start = invariant_closure(g, &ElementSet::from_indices(g.order(), [g.identity_element()]), true);
    let w = match search {
        Search::Greedy => greedy_grow(g, start, true, accepts),
        Search::Exhaustive => {
            let orbits = gyr_orbits(g, true);
            if orbits.len() > crate::subgyro::POWERSET_LIMIT {
                return Err(SubsetError::ResourceLimit { n: orbits.len(), limit: crate::subgyro::POWERSET_LIMIT });
            }
            let e = g.identity_element();
            invariant_subsets(g, &orbits)
                .filter(|w| w.contains(e) && accepts(w))
                .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.to_vec().cmp(&a.to_vec())))
                .unwrap_or(start)
        }
    };
    Ok(inverse_coset_report(g, &h.bits, &v.bits, w, Vec::new()))
}

fn greedy_grow(
    g: &FiniteGyrogroup,
    start: ElementSet,
    symmetric: bool,
    accepts: impl Fn(&ElementSet) -> bool,
) -> ElementSet {
    let mut w = start;
    for x in 0..g.order() {
        if w.contains(x) {
            continue;
        }
        let mut seeds = w.clone();
        seeds.insert(x);
        let candidate = invariant_closure(g, &seeds, symmetric);
        if accepts(&candidate) {
            w = candidate;
        }
    }
    w
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeutralityReport {
    pub v: ElementSet,
    /// `H ⊕ V ⊆ U ⊕ H`.
    pub inner: InclusionVerdict,
    /// `V ⊕ H ⊆ H ⊕ U`.
    pub outer: InclusionVerdict,
    pub unmet: Vec<UnmetHypothesis>,
}

pub(crate) fn neutrality_verdicts(
    g: &FiniteGyrogroup,
    h: &ElementSet,
    u: &ElementSet,
    v: &ElementSet,
) -> (InclusionVerdict, InclusionVerdict) {
    let inner = InclusionVerdict::subset(&add_sets(g, h, v), &add_sets(g, u, h));
    let outer = InclusionVerdict::subset(&add_sets(g, v, h), &add_sets(g, h, u));
    (inner, outer)
}

/// Largest `V` found by greedy growth from `{0}` with both
/// `H ⊕ V ⊆ U ⊕ H` and `V ⊕ H ⊆ H ⊕ U`.
pub fn check_neutrality(h: &GyroSubset<'_>, u: &GyroSubset<'_>) -> Result<NeutralityReport, SubsetError> {
    let g = same_parent(&[h, u])?;
    let mut pre = Preconditions::default();
    pre.subgyrogroup(g, &h.bits);
    pre.identity_in(g, Hypothesis::IdentityInU, &u.bits);
    pre.enforce()?;
    let n = g.order();
    let mut v = ElementSet::from_indices(n, [g.identity_element()]);
    for x in 0..n {
        if v.contains(x) {
            continue;
        }
        let mut candidate = v.clone();
        candidate.insert(x);
        let (inner, outer) = neutrality_verdicts(g, &h.bits, &u.bits, &candidate);
        if inner.holds && outer.holds {
            v = candidate;
        }
    }
    let (inner, outer) = neutrality_verdicts(g, &h.bits, &u.bits, &v);
    Ok(NeutralityReport { v, inner, outer, unmet: Vec::new() })
}

/// Evaluates both neutrality inclusions for a supplied `V`.
pub fn check_neutrality_of(
    h: &GyroSubset<'_>,
    u: &GyroSubset<'_>,
    v: &GyroSubset<'_>,
    mode: Mode,
) -> Result<NeutralityReport, SubsetError> {
    let g = same_parent(&[h, u, v])?;
    let mut pre = Preconditions::default();
    pre.subgyrogroup(g, &h.bits);
    pre.identity_in(g, Hypothesis::IdentityInU, &u.bits);
    let unmet = finish_all(pre, mode)?;
    let (inner, outer) = neutrality_verdicts(g, &h.bits, &u.bits, &v.bits);
    Ok(NeutralityReport { v: v.bits.clone(), inner, outer, unmet })
}

/// One link `lhs (relation) rhs` in a chain of set expressions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub lhs_expr: &'static str,
    pub rhs_expr: &'static str,
    pub lhs: ElementSet,
    pub rhs: ElementSet,
    pub verdict: InclusionVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub holds: bool,
    /// Index into `steps` of the first link that fails.
    pub first_failure: Option<usize>,
    pub steps: Vec<ChainStep>,
    /// The first expression against the last, with the weakest relation
    /// used along the way.
    pub overall: InclusionVerdict,
    pub unmet: Vec<UnmetHypothesis>,
}

impl ChainReport {
    fn build(exprs: Vec<(&'static str, ElementSet)>, relations: &[Relation], unmet: Vec<UnmetHypothesis>) -> Self {
        assert_eq!(exprs.len(), relations.len() + 1);
        let steps: Vec<ChainStep> = exprs
            .windows(2)
            .zip(relations)
            .map(|(pair, &relation)| ChainStep {
                lhs_expr: pair[0].0,
                rhs_expr: pair[1].0,
                verdict: InclusionVerdict::evaluate(relation, &pair[0].1, &pair[1].1),
                lhs: pair[0].1.clone(),
                rhs: pair[1].1.clone(),
            })
            .collect();
        let first_failure = steps.iter().position(|s| !s.verdict.holds);
        let overall_relation = if relations.iter().all(|&r| r == Relation::Equal) {
            Relation::Equal
        } else {
            Relation::Subset
        };
        let overall = InclusionVerdict::evaluate(overall_relation, &exprs[0].1, &exprs[exprs.len() - 1].1);
        Self { holds: first_failure.is_none() && overall.holds, first_failure, steps, overall, unmet }
    }
}

/// The product chain
///
/// ```text
/// (W⊕H)⊕(W⊕H) = (W⊕(H⊕W))⊕H ⊆ (U⊕(U⊕H))⊕H = ((U⊕U)⊕H)⊕H = (U⊕U)⊕H
/// ```
///
/// for gyr-invariant `W ⊆ U`, strong `H` and `H ⊕ W ⊆ U ⊕ H`.
pub fn check_product_chain(
    w: &GyroSubset<'_>,
    u: &GyroSubset<'_>,
    h: &GyroSubset<'_>,
    mode: Mode,
) -> Result<ChainReport, SubsetError> {
    let g = same_parent(&[w, u, h])?;
    let (w, u, h) = (&w.bits, &u.bits, &h.bits);
    let mut pre = Preconditions::default();
    pre.invariant(g, Hypothesis::WGyrInvariant, w);
    pre.invariant(g, Hypothesis::UGyrInvariant, u);
    pre.strong(g, h);
    pre.within(Hypothesis::WWithinU, w, u);
    pre.within(Hypothesis::HwWithinUh, &add_sets(g, h, w), &add_sets(g, u, h));
    let unmet = finish_all(pre, mode)?;
    Ok(product_chain(g, w, u, h, unmet))
}

pub(crate) fn product_chain(
    g: &FiniteGyrogroup,
    w: &ElementSet,
    u: &ElementSet,
    h: &ElementSet,
    unmet: Vec<UnmetHypothesis>,
) -> ChainReport {
    let add = |a: &ElementSet, b: &ElementSet| add_sets(g, a, b);
    let wh = add(w, h);
    let uu = add(u, u);
    let exprs = vec![
        ("(W⊕H)⊕(W⊕H)", add(&wh, &wh)),
        ("(W⊕(H⊕W))⊕H", add(&add(w, &add(h, w)), h)),
        ("(U⊕(U⊕H))⊕H", add(&add(u, &add(u, h)), h)),
        ("((U⊕U)⊕H)⊕H", add(&add(&uu, h), h)),
        ("(U⊕U)⊕H", add(&uu, h)),
    ];
    let relations = [Relation::Equal, Relation::Subset, Relation::Equal, Relation::Equal];
    ChainReport::build(exprs, &relations, unmet)
}

/// The coaddition chain starting from `((a⊕U)⊕H)⊞W` and ending in
/// `(a⊕V)⊕H`, for gyr-invariant `U` and `W`, strong `H`, `U ⊕ U ⊆ V` and
/// `H ⊕ W ⊆ U ⊕ H`.
///
/// The first expression is evaluated with [`coadd_alt`], the second with
/// the gyration expansion `x ⊕ gyr[x, ⊖w](w)`, and the two are compared
/// before the rest of the chain.
pub fn check_coadd_chain(
    w: &GyroSubset<'_>,
    u: &GyroSubset<'_>,
    v: &GyroSubset<'_>,
    h: &GyroSubset<'_>,
    a: usize,
    mode: Mode,
) -> Result<ChainReport, SubsetError> {
    let g = same_parent(&[w, u, v, h])?;
    let n = g.order();
    if a >= n {
        return Err(SubsetError::ElementOutOfRange { element: a, n });
    }
    let (w, u, v, h) = (&w.bits, &u.bits, &v.bits, &h.bits);
    let mut pre = Preconditions::default();
    pre.invariant(g, Hypothesis::UGyrInvariant, u);
    pre.invariant(g, Hypothesis::WGyrInvariant, w);
    pre.strong(g, h);
    pre.within(Hypothesis::UuWithinV, &add_sets(g, u, u), v);
    pre.within(Hypothesis::HwWithinUh, &add_sets(g, h, w), &add_sets(g, u, h));
    let unmet = finish_all(pre, mode)?;
    Ok(coadd_chain(g, w, u, v, h, a, unmet))
}

pub(crate) fn coadd_chain(
    g: &FiniteGyrogroup,
    w: &ElementSet,
    u: &ElementSet,
    v: &ElementSet,
    h: &ElementSet,
    a: usize,
    unmet: Vec<UnmetHypothesis>,
) -> ChainReport {
    let n = g.order();
    let add = |x: &ElementSet, y: &ElementSet| add_sets(g, x, y);
    let single = ElementSet::from_indices(n, [a]);

    let base = add(&add(&single, u), h);
    let mut coadded = ElementSet::empty(n);
    let mut expanded = ElementSet::empty(n);
    for x in base.iter() {
        for y in w.iter() {
            coadded.insert(coadd_alt(g, &x, &y));
            expanded.insert(g.op(x, g.gyrate(x, g.inverse(y), y)));
        }
    }
    debug_assert!(base.iter().all(|x| w.iter().all(|y| coadd(g, &x, &y) == g.op(x, g.gyrate(x, g.inverse(y), y)))));

    let exprs = vec![
        ("((a⊕U)⊕H)⊞W", coadded),
        ("{x⊕gyr[x,⊖w](w) : x ∈ (a⊕U)⊕H, w ∈ W}", expanded),
        ("((a⊕U)⊕H)⊕W", add(&base, w)),
        ("(a⊕U)⊕(H⊕W)", add(&add(&single, u), &add(h, w))),
        ("a⊕(U⊕(H⊕W))", add(&single, &add(u, &add(h, w)))),
        ("a⊕(U⊕(U⊕H))", add(&single, &add(u, &add(u, h)))),
        ("a⊕((U⊕U)⊕H)", add(&single, &add(&add(u, u), h))),
        ("a⊕(V⊕H)", add(&single, &add(v, h))),
        ("(a⊕V)⊕H", add(&add(&single, v), h)),
    ];
    let relations = [
        Relation::Equal,
        Relation::Subset,
        Relation::Equal,
        Relation::Equal,
        Relation::Subset,
        Relation::Equal,
        Relation::Subset,
        Relation::Equal,
    ];
    ChainReport::build(exprs, &relations, unmet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::fixtures;

    fn set<'g>(g: &'g FiniteGyrogroup, xs: &[usize]) -> GyroSubset<'g> {
        GyroSubset::from_indices(g, xs.iter().copied()).unwrap()
    }

    #[test]
    fn z4_arithmetic() {
        let g = fixtures::load("z4").unwrap();
        assert_eq!(set(&g, &[1, 2]).add(&set(&g, &[1])).unwrap(), set(&g, &[2, 3]));
        assert_eq!(set(&g, &[0]).add(&set(&g, &[1, 3])).unwrap(), set(&g, &[1, 3]));
        assert!(set(&g, &[1, 2]).add(&GyroSubset::empty(&g)).unwrap().is_empty());
        assert_eq!(set(&g, &[1, 2]).neg(), set(&g, &[2, 3]));
        assert_eq!(set(&g, &[0]).neg(), set(&g, &[0]));
    }

    #[test]
    fn parent_mismatch_is_detected() {
        let a = fixtures::load("z4").unwrap();
        let b = fixtures::load("z4").unwrap();
        assert_eq!(set(&a, &[0]).add(&set(&b, &[0])), Err(SubsetError::ParentMismatch));
        assert!(matches!(GyroSubset::from_indices(&a, [4]), Err(SubsetError::ElementOutOfRange { .. })));
    }

    #[test]
    fn gyro8_invariance() {
        let g = fixtures::load("gyro8").unwrap();
        // The only nontrivial gyration swaps 2 with 6 and 3 with 7.
        assert!(set(&g, &[0, 2, 6]).is_gyr_invariant());
        let w = set(&g, &[0, 2]).gyr_invariance_witness().unwrap();
        assert_eq!((w.element, w.image), (2, 6));
        assert_eq!(invariant_closure(&g, set(&g, &[3]).bits(), false).to_vec(), vec![3, 7]);
    }

    #[test]
    fn verdict_witnesses_replay() {
        let a = ElementSet::from_indices(4, [0, 1]);
        let b = ElementSet::from_indices(4, [0, 2]);
        let v = InclusionVerdict::subset(&a, &b);
        assert_eq!(v.witness, Some(InclusionWitness { element: 1, only_in: Side::Lhs }));
        assert!(v.reproduces(&a, &b));
        let e = InclusionVerdict::equal(&a, &a.union(&b));
        assert_eq!(e.witness, Some(InclusionWitness { element: 2, only_in: Side::Rhs }));
        assert!(InclusionVerdict::subset(&a, &a.union(&b)).holds);
    }

    #[test]
    fn reassociation_requires_invariant_v() {
        let g = fixtures::load("gyro8").unwrap();
        let v = set(&g, &[0, 2]);
        let w = set(&g, &[1]);
        let err = check_reassociation(&w, &w, &v, Mode::Enforce).unwrap_err();
        assert!(matches!(err, SubsetError::PreconditionUnmet { hypothesis: Hypothesis::VGyrInvariant, .. }));
        let diag = check_reassociation(&w, &w, &v, Mode::Diagnostic).unwrap();
        assert_eq!(diag.unmet.len(), 1);
        let ok = check_reassociation(&w, &set(&g, &[3, 5]), &GyroSubset::identity(&g), Mode::Enforce).unwrap();
        assert!(ok.verdict.holds);
    }

    #[test]
    fn inverse_coset_in_z4() {
        let g = fixtures::load("z4").unwrap();
        let h = set(&g, &[0, 2]);
        let r = check_inverse_coset(&h, &set(&g, &[0, 1]), &set(&g, &[0, 1, 3]), Mode::Enforce).unwrap();
        assert!(r.verdict.holds && r.w_symmetric && r.w_gyr_invariant);

        // ⊖({0,1} ⊕ {0,2}) = {0,3,2,1} is not inside H ⊕ {0} = {0,2}.
        let r = check_inverse_coset(&h, &set(&g, &[0]), &set(&g, &[0, 1]), Mode::Enforce).unwrap();
        assert!(!r.verdict.holds);
        assert_eq!(r.verdict.witness.unwrap().element, 1);
        assert!(r.verdict.reproduces(&r.lhs, &r.rhs));

        let found = find_inverse_coset_neighborhood(&h, &set(&g, &[0, 1]), Search::Greedy).unwrap();
        assert_eq!(found.w.len(), 4);
        let found = find_inverse_coset_neighborhood(&h, &set(&g, &[0]), Search::Exhaustive).unwrap();
        assert_eq!(found.w.to_vec(), vec![0, 2]);
    }

    #[test]
    fn inverse_coset_rejects_non_l_subgyrogroups() {
        let g = fixtures::load("gyro8").unwrap();
        let err = find_inverse_coset_neighborhood(&set(&g, &[0, 2]), &set(&g, &[0]), Search::Greedy).unwrap_err();
        assert!(matches!(err, SubsetError::PreconditionUnmet { hypothesis: Hypothesis::HLSubgyrogroup, .. }));
    }

    #[test]
    fn neutrality_with_a_normal_subgroup() {
        let g = fixtures::load("z4").unwrap();
        let h = set(&g, &[0, 2]);
        let u = set(&g, &[0, 1]);
        let r = check_neutrality_of(&h, &u, &u, Mode::Enforce).unwrap();
        assert!(r.inner.holds && r.outer.holds);
        let found = check_neutrality(&h, &u).unwrap();
        assert_eq!(found.v.to_vec(), vec![0, 1, 2, 3]);
        let r = check_neutrality_of(&set(&g, &[0]), &u, &set(&g, &[0, 2]), Mode::Enforce).unwrap();
        assert_eq!(r.inner.witness.unwrap().element, 2);
        assert_eq!(r.outer.witness.unwrap().element, 2);
    }

    #[test]
    fn product_chain_collapses_for_identity() {
        let g = fixtures::load("klein4").unwrap();
        let e = GyroSubset::identity(&g);
        let r = check_product_chain(&e, &e, &set(&g, &[0, 3]), Mode::Enforce).unwrap();
        assert!(r.holds);
        assert_eq!(r.steps.len(), 4);
        assert_eq!(r.steps[0].lhs.to_vec(), vec![0, 3]);
    }

    #[test]
    fn product_chain_names_the_violated_hypothesis() {
        let g = fixtures::load("z4").unwrap();
        let err = check_product_chain(&set(&g, &[0, 1]), &set(&g, &[0]), &set(&g, &[0]), Mode::Enforce).unwrap_err();
        assert!(matches!(err, SubsetError::PreconditionUnmet { hypothesis: Hypothesis::WWithinU, .. }));
        let err = check_product_chain(&set(&g, &[0]), &set(&g, &[0]), &set(&g, &[1]), Mode::Enforce).unwrap_err();
        assert!(matches!(err, SubsetError::PreconditionUnmet { hypothesis: Hypothesis::HSubgyrogroup, .. }));
    }

    #[test]
    fn coadd_chain_in_gyro8() {
        let g = fixtures::load("gyro8").unwrap();
        let u = set(&g, &[0, 1]);
        let v = u.add(&u).unwrap();
        let h = set(&g, &[0, 4]);
        let w = set(&g, &[0]);
        for a in 0..8 {
            let r = check_coadd_chain(&w, &u, &v, &h, a, Mode::Enforce).unwrap();
            assert!(r.holds, "{a}: {:?}", r.first_failure);
            assert_eq!(r.steps.len(), 8);
        }
        assert!(check_coadd_chain(&w, &u, &v, &h, 8, Mode::Enforce).is_err());
    }

    #[test]
    fn diagnostic_mode_reports_failing_steps() {
        let g = fixtures::load("gyro8").unwrap();
        // H = {0, 2} is neither L nor strong, W ⊄ U.
        let r = check_product_chain(&set(&g, &[0, 1]), &set(&g, &[0]), &set(&g, &[0, 2]), Mode::Diagnostic).unwrap();
        assert!(r.unmet.len() >= 2);
        if let Some(i) = r.first_failure {
            assert!(r.steps[i].verdict.reproduces(&r.steps[i].lhs, &r.steps[i].rhs));
        }
    }
}
