use approx::assert_relative_eq;
use gyrokit::einstein::{
    einstein_add, einstein_add_variant, einstein_interface, gamma, AdditionVariant, EinsteinConfig, Velocity,
    VelocitySampler,
};
use gyrokit::{coadd, coadd_alt, identity_suite, Gyrogroup, Law};
use proptest::prelude::*;

fn cfg(max_beta: f64, tol: f64, seed: u64) -> EinsteinConfig {
    EinsteinConfig { max_beta, tol, seed, ..EinsteinConfig::default() }
}

#[test]
fn collinear_addition_matches_the_one_dimensional_rule() {
    for i in 1..=9 {
        for j in 1..=9 {
            let (b1, b2) = (i as f64 / 10.0, j as f64 / 10.0);
            let w = einstein_add(
                &Velocity::from_beta(b1, 0.0, 0.0, 1.0).unwrap(),
                &Velocity::from_beta(b2, 0.0, 0.0, 1.0).unwrap(),
            )
            .unwrap();
            let expected = (b1 + b2) / (1.0 + b1 * b2);
            assert_relative_eq!(w.vx, expected, max_relative = 1e-12);
            assert_eq!((w.vy, w.vz), (0.0, 0.0));
        }
    }
}

#[test]
fn suite_passes_at_099() {
    let c = cfg(0.99, 1e-9, 1);
    let g = einstein_interface(&c).unwrap();
    let mut s = VelocitySampler::new(&c).unwrap();
    let r = identity_suite(&g, s.triples().take(2000), c.tol).unwrap();
    assert!(r.all_passed(), "{:?} max residual {}", r.failing_laws(), r.max_residual());
}

#[test]
fn suite_passes_near_the_boundary() {
    let c = cfg(0.999, 1e-6, 2);
    let g = einstein_interface(&c).unwrap();
    let mut s = VelocitySampler::new(&c).unwrap();
    let r = identity_suite(&g, s.triples().take(2000), c.tol).unwrap();
    assert!(r.all_passed(), "{:?}", r.failing_laws());
}

#[test]
fn physical_speed_of_light() {
    let c = EinsteinConfig { c: 299_792_458.0, ..cfg(0.99, 1e-9, 3) };
    let g = einstein_interface(&c).unwrap();
    let mut s = VelocitySampler::new(&c).unwrap();
    let r = identity_suite(&g, s.triples().take(500), c.tol).unwrap();
    assert!(r.all_passed(), "{:?}", r.failing_laws());
}

#[test]
fn gamma_v_coefficient_breaks_the_axioms() {
    let c = cfg(0.99, 1e-9, 4);
    let g = einstein_interface(&c).unwrap().with_variant(AdditionVariant::GammaV);
    let mut s = VelocitySampler::new(&c).unwrap();
    let r = identity_suite(&g, s.triples().take(200), c.tol).unwrap();
    assert!(!r.passed(Law::LeftCancellation));
    let w = r.witnesses_for(Law::LeftCancellation).next().unwrap();
    let (a, b) = (&w.inputs[0], &w.inputs[1]);
    // The witness replays: ⊖a ⊕ (a ⊕ b) misses b.
    let back = g.add(&g.neg(a), &g.add(a, b));
    assert!(g.residual(&back, b) > c.tol);
}

#[test]
fn coaddition_forms_agree_on_sampled_pairs() {
    let c = cfg(0.99, 1e-10, 5);
    let g = einstein_interface(&c).unwrap();
    let mut s = VelocitySampler::new(&c).unwrap();
    for _ in 0..10_000 {
        let (a, b) = (s.sample_velocity(), s.sample_velocity());
        let r = g.residual(&coadd(&g, &a, &b), &coadd_alt(&g, &a, &b));
        assert!(r <= 1e-10, "{a:?} {b:?}: {r}");
    }
}

#[test]
fn sums_stay_inside_the_ball_near_the_boundary() {
    let c = cfg(0.999, 1e-6, 6);
    let mut s = VelocitySampler::new(&c).unwrap();
    for _ in 0..10_000 {
        let w = einstein_add(&s.sample_velocity(), &s.sample_velocity()).unwrap();
        assert!(w.speed() < 1.0);
        assert!(gamma(&w).unwrap().is_finite());
    }
}

fn velocity() -> impl Strategy<Value = Velocity> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, 0.0f64..0.99).prop_filter_map("zero direction", |(x, y, z, b)| {
        let norm = (x * x + y * y + z * z).sqrt();
        (norm > 1e-3).then(|| Velocity::from_beta(x / norm * b, y / norm * b, z / norm * b, 1.0).unwrap())
    })
}

proptest! {
    #[test]
    fn gyrations_preserve_norms_and_inner_products(a in velocity(), b in velocity(), x in velocity(), y in velocity()) {
        let g = einstein_interface(&EinsteinConfig::default()).unwrap();
        let gx = g.gyr(&a, &b, &x);
        let gy = g.gyr(&a, &b, &y);
        prop_assert!((gx.speed() - x.speed()).abs() <= 1e-12);
        prop_assert!((gx.dot(&gy) - x.dot(&y)).abs() <= 1e-12);
    }

    #[test]
    fn addition_is_closed_and_loop_like(a in velocity(), b in velocity()) {
        let g = einstein_interface(&EinsteinConfig::default()).unwrap();
        let s = einstein_add(&a, &b).unwrap();
        prop_assert!(s.speed() < 1.0);
        let back = g.add(&g.neg(&a), &s);
        prop_assert!(g.residual(&back, &b) <= 1e-9);
    }

    #[test]
    fn variants_agree_when_speeds_match(a in velocity(), b in velocity()) {
        // With ‖u‖ = ‖v‖ the two coefficients coincide.
        let k = a.speed() / b.speed();
        if let Ok(v) = Velocity::new(b.vx * k, b.vy * k, b.vz * k, 1.0) {
            let p = einstein_add(&a, &v).unwrap();
            let q = einstein_add_variant(&a, &v, AdditionVariant::GammaV).unwrap();
            prop_assert!((p.vector() - q.vector()).amax() <= 1e-12);
        }
    }
}
