//! Finite-carrier results checked against brute force computed directly
//! from the raw Cayley table, without the cached gyrations.

use gyrokit::algebra::exhaustive_triples;
use gyrokit::subgyro::{
    classify, coset_partition, enumerate_subgyrogroups, EnumerationStrategy, ENUMERATION_LIMIT,
};
use gyrokit::subset::is_gyr_invariant;
use gyrokit::table::fixtures;
use gyrokit::{coadd, coadd_alt, identity_suite, ElementSet, FiniteGyrogroup, Law};

struct Raw {
    n: usize,
    t: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl Raw {
    fn new(g: &FiniteGyrogroup) -> Self {
        let t = g.table();
        let n = t.len();
        let e = (0..n).find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x)).unwrap();
        let inv = (0..n).map(|a| (0..n).find(|&b| t[b][a] == e).unwrap()).collect();
        Self { n, t, inv }
    }

    fn gyr(&self, a: usize, b: usize, c: usize) -> usize {
        let t = &self.t;
        t[self.inv[t[a][b]]][t[a][t[b][c]]]
    }

    fn closed(&self, mask: u64) -> bool {
        let has = |x: usize| mask >> x & 1 == 1;
        (0..self.n).filter(|&a| has(a)).all(|a| {
            has(self.inv[a]) && (0..self.n).filter(|&b| has(b)).all(|b| has(self.t[a][b]))
        })
    }

    /// Orbit closure of `mask` under every `gyr[x, y]`, one element at a time.
    fn orbit_closure(&self, mask: u64) -> u64 {
        let mut m = mask;
        loop {
            let mut next = m;
            for c in (0..self.n).filter(|&c| m >> c & 1 == 1) {
                for x in 0..self.n {
                    for y in 0..self.n {
                        next |= 1 << self.gyr(x, y, c);
                    }
                }
            }
            if next == m {
                return m;
            }
            m = next;
        }
    }
}

#[test]
fn identity_suite_passes_on_every_fixture() {
    for (name, g) in fixtures::all() {
        let elems: Vec<usize> = (0..g.order()).collect();
        let report = identity_suite(&g, exhaustive_triples(&elems), 0.0).unwrap();
        assert!(report.all_passed(), "{name}: {:?}", report.failing_laws());
        assert_eq!(report.results.len(), Law::ALL.len());
        assert_eq!(report.samples, (g.order() as u64).pow(3));
    }
}

#[test]
fn coaddition_forms_agree_on_every_pair() {
    for (name, g) in fixtures::all() {
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(coadd(&g, &a, &b), coadd_alt(&g, &a, &b), "{name}: {a}, {b}");
            }
        }
    }
}

#[test]
fn cached_gyrations_match_the_formula() {
    for (name, g) in fixtures::all() {
        let raw = Raw::new(&g);
        for a in 0..raw.n {
            for b in 0..raw.n {
                for c in 0..raw.n {
                    assert_eq!(g.gyrate(a, b, c), raw.gyr(a, b, c), "{name}: gyr[{a},{b}]{c}");
                }
            }
        }
    }
}

#[test]
fn enumeration_matches_powerset_brute_force() {
    for (name, g) in fixtures::all().into_iter().filter(|(_, g)| g.order() <= 8) {
        let raw = Raw::new(&g);
        let n = raw.n;
        let mut expected: Vec<Vec<usize>> = (1u64..1 << n)
            .filter(|&m| raw.closed(m))
            .map(|m| (0..n).filter(|x| m >> x & 1 == 1).collect())
            .collect();
        expected.sort_by_key(|v| (v.len(), v.clone()));
        for strategy in [EnumerationStrategy::Closure, EnumerationStrategy::Powerset] {
            let got: Vec<Vec<usize>> = enumerate_subgyrogroups(&g, strategy, ENUMERATION_LIMIT)
                .unwrap()
                .into_iter()
                .map(|i| i.elements.to_vec())
                .collect();
            assert_eq!(got, expected, "{name} {strategy:?}");
        }
    }
}

#[test]
fn z4_subgyrogroups_are_exactly_three() {
    let g = fixtures::load("z4").unwrap();
    let got: Vec<Vec<usize>> = enumerate_subgyrogroups(&g, EnumerationStrategy::Closure, ENUMERATION_LIMIT)
        .unwrap()
        .into_iter()
        .map(|i| i.elements.to_vec())
        .collect();
    assert_eq!(got, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
}

#[test]
fn gyr_invariance_matches_orbit_closure() {
    for (name, g) in fixtures::all().into_iter().filter(|(_, g)| g.order() <= 8) {
        let raw = Raw::new(&g);
        for m in 0u64..1 << raw.n {
            let s = ElementSet::from_mask(raw.n, m);
            assert_eq!(is_gyr_invariant(&g, &s), raw.orbit_closure(m) == m, "{name}: {s:?}");
        }
    }
}

#[test]
fn l_and_strong_flags_match_brute_force() {
    for (name, g) in fixtures::all() {
        let raw = Raw::new(&g);
        let n = raw.n;
        for info in enumerate_subgyrogroups(&g, EnumerationStrategy::Closure, ENUMERATION_LIMIT).unwrap() {
            let h = &info.elements;
            let moves = |x: usize, y: usize| h.iter().any(|c| !h.contains(raw.gyr(x, y, c)));
            let is_l = (0..n).all(|a| h.iter().all(|y| !moves(a, y)));
            let is_strong = (0..n).all(|x| (0..n).all(|y| !moves(x, y)));
            assert_eq!(info.is_l, Some(is_l), "{name}: {h:?}");
            assert_eq!(info.is_strong, Some(is_strong), "{name}: {h:?}");
            if let Some(w) = info.l_witness {
                assert!(h.contains(w.element) && !h.contains(raw.gyr(w.x, w.y, w.element)));
            }
        }
    }
}

#[test]
fn gyro8_has_non_l_subgyrogroups() {
    let g = fixtures::load("gyro8").unwrap();
    let all = enumerate_subgyrogroups(&g, EnumerationStrategy::Closure, ENUMERATION_LIMIT).unwrap();
    assert_eq!(all.len(), 12);
    let non_l: Vec<Vec<usize>> =
        all.iter().filter(|i| i.is_l == Some(false)).map(|i| i.elements.to_vec()).collect();
    assert_eq!(non_l, vec![vec![0, 2], vec![0, 3], vec![0, 6], vec![0, 7]]);
}

#[test]
fn coset_partitions_satisfy_the_partition_laws() {
    let mut checked = 0;
    for (name, g) in fixtures::all() {
        let n = g.order();
        for info in enumerate_subgyrogroups(&g, EnumerationStrategy::Closure, ENUMERATION_LIMIT).unwrap() {
            if info.is_l != Some(true) {
                assert!(coset_partition(&g, &info.elements).is_err(), "{name}: {:?}", info.elements);
                continue;
            }
            let h = &info.elements;
            let p = coset_partition(&g, h).unwrap();
            let mut seen = ElementSet::empty(n);
            for block in &p.blocks {
                assert!(block.is_disjoint(&seen), "{name}: overlapping blocks");
                assert_eq!(block.len(), h.len());
                seen.union_with(block);
            }
            assert_eq!(seen, ElementSet::full(n));
            assert_eq!(p.len() * h.len(), n);
            for a in 0..n {
                let coset = ElementSet::from_indices(n, h.iter().map(|x| g.op(a, x)));
                assert_eq!(&coset, p.preimage(p.project(a)));
            }
            checked += 1;
        }
    }
    assert!(checked >= 15);
}

#[test]
fn z4_mod_two_cosets() {
    let g = fixtures::load("z4").unwrap();
    let p = coset_partition(&g, &ElementSet::from_indices(4, [0, 2])).unwrap();
    let blocks: Vec<Vec<usize>> = p.blocks.iter().map(ElementSet::to_vec).collect();
    assert_eq!(blocks, vec![vec![0, 2], vec![1, 3]]);
}

#[test]
fn classification_is_stable_under_relabeling() {
    use gyrokit::verify_table;
    let g = fixtures::load("gyro8").unwrap();
    let t = g.table();
    let n = t.len();
    // σ: a fixed permutation of the labels, applied to rows, columns and entries.
    let sigma = [5, 3, 7, 0, 6, 1, 4, 2];
    let mut relabeled = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            relabeled[sigma[a]][sigma[b]] = sigma[t[a][b]];
        }
    }
    let (verdict, h) = verify_table(&relabeled).unwrap();
    assert!(verdict.valid);
    let h = h.unwrap();
    assert_eq!(h.identity_element(), sigma[g.identity_element()]);
    let before = enumerate_subgyrogroups(&g, EnumerationStrategy::Closure, ENUMERATION_LIMIT).unwrap();
    let after = enumerate_subgyrogroups(&h, EnumerationStrategy::Closure, ENUMERATION_LIMIT).unwrap();
    assert_eq!(before.len(), after.len());
    for info in &before {
        let image = info.elements.map(|x| sigma[x]);
        let mapped = classify(&h, &image).unwrap();
        assert_eq!((mapped.is_l, mapped.is_strong), (info.is_l, info.is_strong));
    }
}
