use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use super::{coadd_alt, gyr_apply, Gyrogroup};

/// Maximum number of witnesses kept per law.
const WITNESS_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuiteError {
    #[error("tolerance must be positive for numeric carriers, got {0}")]
    ToleranceNotPositive(f64),
}

/// A named gyrogroup law checked by [`identity_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    /// `0 ⊕ x = x = x ⊕ 0`
    Identity,
    /// `⊖x ⊕ x = 0 = x ⊕ ⊖x`
    Inverse,
    /// `gyr[a,b](x ⊕ y) = gyr[a,b]x ⊕ gyr[a,b]y`
    GyrationAutomorphism,
    /// `gyr[a,b]` is a bijection of the carrier.
    GyrationBijective,
    /// `gyr[a ⊕ b, b] = gyr[a, b]`, the left loop axiom.
    LeftLoopAxiom,
    RightGyroassociative,
    LeftGyroassociative,
    RightLoop,
    LeftLoop,
    LeftCancellation,
    /// `(a ⊖ b) ⊞ b = a`
    CoaddRightCancellation,
    /// `(a ⊟ b) ⊕ b = a`
    CosubRightCancellation,
    /// A carrier's own `gyr` agrees with the defining formula.
    GyrationFormula,
    GyrosumInversion,
    /// `gyr[a,b](⊖x) = ⊖gyr[a,b]x`
    GyrationCommutesWithInverse,
    InversiveSymmetry,
    CogyroautomorphicInverse,
    EvenSymmetry,
    /// `gyr[a,0] = gyr[0,b] = id`
    TrivialGyrations,
    /// `a ⊞ b = b ⊕ ((⊖b ⊕ a) ⊕ b)`
    CoaddAlternateForm,
}

impl Law {
    pub const ALL: [Law; 20] = [
        Law::Identity,
        Law::Inverse,
        Law::GyrationAutomorphism,
        Law::GyrationBijective,
        Law::LeftLoopAxiom,
        Law::RightGyroassociative,
        Law::LeftGyroassociative,
        Law::RightLoop,
        Law::LeftLoop,
        Law::LeftCancellation,
        Law::CoaddRightCancellation,
        Law::CosubRightCancellation,
        Law::GyrationFormula,
        Law::GyrosumInversion,
        Law::GyrationCommutesWithInverse,
        Law::InversiveSymmetry,
        Law::CogyroautomorphicInverse,
        Law::EvenSymmetry,
        Law::TrivialGyrations,
        Law::CoaddAlternateForm,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Law::Identity => "G1-identity",
            Law::Inverse => "G2-inverse",
            Law::GyrationAutomorphism => "G3-gyration-automorphism",
            Law::GyrationBijective => "G3-gyration-bijective",
            Law::LeftLoopAxiom => "G4-left-loop",
            Law::RightGyroassociative => "right-gyroassociative",
            Law::LeftGyroassociative => "left-gyroassociative",
            Law::RightLoop => "right-loop",
            Law::LeftLoop => "left-loop",
            Law::LeftCancellation => "left-cancellation",
            Law::CoaddRightCancellation => "coadd-right-cancellation",
            Law::CosubRightCancellation => "cosub-right-cancellation",
            Law::GyrationFormula => "gyration-formula",
            Law::GyrosumInversion => "gyrosum-inversion",
            Law::GyrationCommutesWithInverse => "gyration-commutes-with-inverse",
            Law::InversiveSymmetry => "inversive-symmetry",
            Law::CogyroautomorphicInverse => "cogyroautomorphic-inverse",
            Law::EvenSymmetry => "even-symmetry",
            Law::TrivialGyrations => "trivial-gyrations",
            Law::CoaddAlternateForm => "coadd-alternate-form",
        }
    }

    pub fn from_label(label: &str) -> Option<Law> {
        Law::ALL.iter().copied().find(|l| l.label() == label)
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Law {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LawResult {
    pub passed: bool,
    pub checks: u64,
    pub failures: u64,
    /// Largest residual seen; infinite when a comparison produced NaN.
    pub max_residual: f64,
}

impl Default for LawResult {
    fn default() -> Self {
        Self {
            passed: true,
            checks: 0,
            failures: 0,
            max_residual: 0.0,
        }
    }
}

/// A concrete failing instance: the law's inputs and both sides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness<E> {
    pub law: Law,
    pub inputs: Vec<E>,
    pub lhs: E,
    pub rhs: E,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport<E> {
    pub tolerance: f64,
    pub exact: bool,
    pub samples: u64,
    pub results: BTreeMap<Law, LawResult>,
    pub witnesses: Vec<Witness<E>>,
}

impl<E> IdentityReport<E> {
    pub fn all_passed(&self) -> bool {
        self.results.values().all(|r| r.passed)
    }

    pub fn passed(&self, law: Law) -> bool {
        self.results.get(&law).is_some_and(|r| r.passed)
    }

    pub fn failing_laws(&self) -> Vec<Law> {
        self.results
            .iter()
            .filter(|(_, r)| !r.passed)
            .map(|(l, _)| *l)
            .collect()
    }

    /// Largest residual over all laws.
    pub fn max_residual(&self) -> f64 {
        self.results
            .values()
            .map(|r| r.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn witnesses_for(&self, law: Law) -> impl Iterator<Item = &Witness<E>> {
        self.witnesses.iter().filter(move |w| w.law == law)
    }
}

struct Recorder<'g, G: Gyrogroup + ?Sized> {
    g: &'g G,
    tol: f64,
    results: BTreeMap<Law, LawResult>,
    witnesses: Vec<Witness<G::Element>>,
    kept: BTreeMap<Law, usize>,
}

impl<'g, G: Gyrogroup + ?Sized> Recorder<'g, G> {
    fn check(&mut self, law: Law, inputs: &[&G::Element], lhs: G::Element, rhs: G::Element) {
        let residual = self.g.residual(&lhs, &rhs);
        let ok = self.g.approx_eq(&lhs, &rhs, self.tol);
        let entry = self.results.entry(law).or_default();
        entry.checks += 1;
        let shown = if residual.is_nan() { f64::INFINITY } else { residual };
        entry.max_residual = entry.max_residual.max(shown);
        if !ok {
            entry.failures += 1;
            entry.passed = false;
            let kept = self.kept.entry(law).or_default();
            if *kept < WITNESS_CAP {
                *kept += 1;
                self.witnesses.push(Witness {
                    law,
                    inputs: inputs.iter().map(|e| (*e).clone()).collect(),
                    lhs,
                    rhs,
                    residual: shown,
                });
            }
        }
    }
}

/// Checks every law in [`Law::ALL`] on each sampled triple `(a, b, c)`.
///
/// Functional identities (loop properties, inversive symmetry, even
/// symmetry) are compared pointwise at `c`. On finite carriers the
/// automorphism and bijectivity laws are additionally checked against every
/// element as second argument, so an exhaustive triple sampler makes the
/// whole suite exhaustive. On numeric carriers the automorphism law pairs
/// `c` with the previous triple's `c`, and bijectivity is checked as
/// `gyr[b,a](gyr[a,b]c) = c` and `gyr[a,b](gyr[b,a]c) = c`.
///
/// `tol` is ignored for exact carriers and must be positive otherwise.
pub fn identity_suite<G, I>(
    g: &G,
    triples: I,
    tol: f64,
) -> Result<IdentityReport<G::Element>, SuiteError>
where
    G: Gyrogroup + ?Sized,
    I: IntoIterator<Item = (G::Element, G::Element, G::Element)>,
{
    let exact = g.is_exact();
    if !exact && !(tol > 0.0) {
        return Err(SuiteError::ToleranceNotPositive(tol));
    }
    let mut rec = Recorder {
        g,
        tol,
        results: Law::ALL.iter().map(|l| (*l, LawResult::default())).collect(),
        witnesses: Vec::new(),
        kept: BTreeMap::new(),
    };
    let carrier = g.elements();
    let zero = g.identity();
    let mut previous: Option<G::Element> = None;
    let mut samples = 0u64;

    for (a, b, c) in triples {
        samples += 1;
        let ab = g.add(&a, &b);
        let ba = g.add(&b, &a);
        let na = g.neg(&a);
        let nb = g.neg(&b);
        let gyr_c = g.gyr(&a, &b, &c);

        rec.check(Law::Identity, &[&a], g.add(&zero, &a), a.clone());
        rec.check(Law::Identity, &[&a], g.add(&a, &zero), a.clone());
        rec.check(Law::Inverse, &[&a], g.add(&na, &a), zero.clone());
        rec.check(Law::Inverse, &[&a], g.add(&a, &na), zero.clone());

        match &carrier {
            Some(all) => {
                for y in all {
                    let lhs = g.gyr(&a, &b, &g.add(&c, y));
                    let rhs = g.add(&gyr_c, &g.gyr(&a, &b, y));
                    rec.check(Law::GyrationAutomorphism, &[&a, &b, &c, y], lhs, rhs);
                }
                // Injectivity at c: no other y shares c's image.
                let collision = all.iter().find(|y| {
                    g.residual(y, &c) != 0.0 && g.residual(&g.gyr(&a, &b, y), &gyr_c) == 0.0
                });
                match collision {
                    Some(y) => rec.check(Law::GyrationBijective, &[&a, &b, &c, y], c.clone(), y.clone()),
                    None => rec.check(Law::GyrationBijective, &[&a, &b, &c], c.clone(), c.clone()),
                }
            }
            None => {
                let y = previous.take().unwrap_or_else(|| b.clone());
                let lhs = g.gyr(&a, &b, &g.add(&c, &y));
                let rhs = g.add(&gyr_c, &g.gyr(&a, &b, &y));
                rec.check(Law::GyrationAutomorphism, &[&a, &b, &c, &y], lhs, rhs);
                let back = g.gyr(&b, &a, &gyr_c);
                rec.check(Law::GyrationBijective, &[&a, &b, &c], back, c.clone());
                let forth = g.gyr(&a, &b, &g.gyr(&b, &a, &c));
                rec.check(Law::GyrationBijective, &[&a, &b, &c], forth, c.clone());
                previous = Some(c.clone());
            }
        }

        let left_loop = g.gyr(&ab, &b, &c);
        rec.check(Law::LeftLoopAxiom, &[&a, &b, &c], left_loop.clone(), gyr_c.clone());
        rec.check(Law::LeftLoop, &[&a, &b, &c], gyr_c.clone(), left_loop);

        // (a ⊕ b) ⊕ c = a ⊕ (b ⊕ gyr[b,a]c)
        let lhs = g.add(&ab, &c);
        let rhs = g.add(&a, &g.add(&b, &g.gyr(&b, &a, &c)));
        rec.check(Law::RightGyroassociative, &[&a, &b, &c], lhs, rhs);

        // a ⊕ (b ⊕ c) = (a ⊕ b) ⊕ gyr[a,b]c
        let lhs = g.add(&a, &g.add(&b, &c));
        let rhs = g.add(&ab, &gyr_c);
        rec.check(Law::LeftGyroassociative, &[&a, &b, &c], lhs, rhs);

        rec.check(Law::RightLoop, &[&a, &b, &c], gyr_c.clone(), g.gyr(&a, &ba, &c));

        rec.check(Law::LeftCancellation, &[&a, &b], g.add(&na, &ab), b.clone());

        let lhs = g.coadd(&g.sub(&a, &b), &b);
        rec.check(Law::CoaddRightCancellation, &[&a, &b], lhs, a.clone());

        let lhs = g.add(&g.cosub(&a, &b), &b);
        rec.check(Law::CosubRightCancellation, &[&a, &b], lhs, a.clone());

        rec.check(Law::GyrationFormula, &[&a, &b, &c], gyr_c.clone(), gyr_apply(g, &a, &b, &c));

        // ⊖(a ⊕ b) = gyr[a,b](⊖b ⊖ a)
        let lhs = g.neg(&ab);
        let rhs = g.gyr(&a, &b, &g.add(&nb, &na));
        rec.check(Law::GyrosumInversion, &[&a, &b], lhs, rhs);

        let lhs = g.gyr(&a, &b, &g.neg(&c));
        rec.check(Law::GyrationCommutesWithInverse, &[&a, &b, &c], lhs, g.neg(&gyr_c));

        rec.check(Law::InversiveSymmetry, &[&a, &b, &c], g.gyr(&b, &a, &gyr_c), c.clone());

        // ⊖(a ⊞ b) = (⊖b) ⊞ (⊖a)
        let lhs = g.neg(&g.coadd(&a, &b));
        rec.check(Law::CogyroautomorphicInverse, &[&a, &b], lhs, g.coadd(&nb, &na));

        rec.check(Law::EvenSymmetry, &[&a, &b, &c], g.gyr(&na, &nb, &c), gyr_c.clone());

        rec.check(Law::TrivialGyrations, &[&a, &c], g.gyr(&a, &zero, &c), c.clone());
        rec.check(Law::TrivialGyrations, &[&b, &c], g.gyr(&zero, &b, &c), c.clone());

        rec.check(Law::CoaddAlternateForm, &[&a, &b], g.coadd(&a, &b), coadd_alt(g, &a, &b));
    }

    Ok(IdentityReport {
        tolerance: tol,
        exact,
        samples,
        results: rec.results,
        witnesses: rec.witnesses,
    })
}

/// Every ordered triple over a finite carrier.
pub fn exhaustive_triples<E: Clone>(elements: &[E]) -> impl Iterator<Item = (E, E, E)> + '_ {
    elements.iter().flat_map(move |a| {
        elements.iter().flat_map(move |b| {
            elements
                .iter()
                .map(move |c| (a.clone(), b.clone(), c.clone()))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CyclicGroup;

    #[test]
    fn z4_passes_every_law_exhaustively() {
        let z = CyclicGroup::new(4);
        let elems = z.elements().unwrap();
        let report = identity_suite(&z, exhaustive_triples(&elems), 0.0).unwrap();
        assert!(report.all_passed(), "{:?}", report.failing_laws());
        assert_eq!(report.samples, 64);
        assert!(report.witnesses.is_empty());
        for law in Law::ALL {
            assert!(report.results[&law].checks > 0, "{law} never checked");
        }
    }

    #[test]
    fn labels_round_trip() {
        for law in Law::ALL {
            assert_eq!(Law::from_label(law.label()), Some(law));
        }
    }

    /// A carrier that lies about its gyrations.
    struct BadCache(CyclicGroup);

    impl Gyrogroup for BadCache {
        type Element = u64;
        fn add(&self, a: &u64, b: &u64) -> u64 {
            self.0.add(a, b)
        }
        fn identity(&self) -> u64 {
            0
        }
        fn neg(&self, a: &u64) -> u64 {
            self.0.neg(a)
        }
        fn residual(&self, l: &u64, r: &u64) -> f64 {
            self.0.residual(l, r)
        }
        fn is_exact(&self) -> bool {
            true
        }
        fn elements(&self) -> Option<Vec<u64>> {
            self.0.elements()
        }
        fn gyr(&self, a: &u64, b: &u64, c: &u64) -> u64 {
            if *a == 1 && *b == 1 {
                self.0.neg(c)
            } else {
                *c
            }
        }
    }

    #[test]
    fn stale_gyration_cache_is_reported() {
        let g = BadCache(CyclicGroup::new(4));
        let elems = g.elements().unwrap();
        let report = identity_suite(&g, exhaustive_triples(&elems), 0.0).unwrap();
        assert!(!report.passed(Law::GyrationFormula));
        let w = report.witnesses_for(Law::GyrationFormula).next().unwrap();
        assert_eq!(w.inputs[..2], [1, 1]);
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn failing_laws_always_carry_witnesses() {
        let g = BadCache(CyclicGroup::new(4));
        let elems = g.elements().unwrap();
        let report = identity_suite(&g, exhaustive_triples(&elems), 0.0).unwrap();
        for law in report.failing_laws() {
            assert!(report.witnesses_for(law).count() > 0);
        }
    }
}
