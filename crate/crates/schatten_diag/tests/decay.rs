use model_zoo::{Coupling, ModelHandle, ModelKind, ModelParams};
use num_complex::Complex64;
use numkernel::ComplexMatrix;
use proptest::prelude::*;
use schatten_diag::{bound_verdict, decay_report, entity_singular_values, matrix_decay, sv_decay, Entity, Verdict};

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

fn handle(kind: ModelKind) -> ModelHandle {
    ModelHandle::new(ModelParams::new(kind, 1.0)).unwrap()
}

#[test]
fn zero_entity_passes() {
    let r = matrix_decay(Entity::ImWeylAtZ, "zero", i(), &ComplexMatrix::zeros(6, 6), 1.0).unwrap();
    assert!(r.singular_values.iter().all(|s| *s == 0.0));
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn circle_dirichlet_free_is_trace_class() {
    let r = sv_decay(Entity::ImWeylAtZ, &handle(ModelKind::CircleDirichletFree), i(), 64, None).unwrap();
    assert_eq!(r.predicted_exponent, 1.0);
    assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    assert!(r.singular_values.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn neumann_robin_krein_difference() {
    let r = sv_decay(Entity::KreinDifference, &handle(ModelKind::DiskNeumannRobin), i(), 64, None).unwrap();
    assert_eq!(r.predicted_exponent, 3.0);
    assert_eq!(r.verdict, Verdict::Pass);
    // the mode symbols decay like m^{-3}: the bound is attained, not beaten
    let fit = r.fitted_exponent.unwrap();
    assert!((fit - 3.0).abs() < 0.2, "{fit}");
}

#[test]
fn sphere_shell_krein_difference() {
    let r = sv_decay(Entity::KreinDifference, &handle(ModelKind::SphereDeltaShell), i(), 128, None).unwrap();
    assert_eq!(r.predicted_exponent, 1.5);
    assert_eq!(r.singular_values.len(), 129 * 129);
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn dirichlet_robin_krein_difference() {
    let r = sv_decay(Entity::KreinDifference, &handle(ModelKind::DiskDirichletRobin), i(), 64, None).unwrap();
    assert_eq!(r.predicted_exponent, 2.0);
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn too_strong_claim_fails() {
    // the Neumann-Robin symbols decay like j^{-3}, so j^{-4} must fail
    let r = sv_decay(Entity::KreinDifference, &handle(ModelKind::DiskNeumannRobin), i(), 64, Some(4.0)).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
}

#[test]
fn dense_route_matches_diagonal_route() {
    // a Fourier coupling with only a_0 is diagonal in content but takes the
    // dense path
    let dense = ModelHandle::new(
        ModelParams::new(ModelKind::DiskNeumannRobin, 1.0).with_coupling(Coupling::Fourier(vec![(0, Complex64::new(1.0, 0.0))])),
    )
    .unwrap();
    let diag = handle(ModelKind::DiskNeumannRobin);
    for e in [Entity::ImWeylAtZ, Entity::GammaField, Entity::KreinDifference] {
        let mut a = entity_singular_values(e, &dense, i(), 10).unwrap();
        let mut b = entity_singular_values(e, &diag, i(), 10).unwrap();
        a.sort_by(|x, y| y.total_cmp(x));
        b.sort_by(|x, y| y.total_cmp(x));
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-12 * (1.0 + y), "{e:?}: {x} {y}");
        }
    }
}

#[test]
fn real_point_rejected() {
    assert!(sv_decay(Entity::ImWeylAtZ, &handle(ModelKind::CircleDirichletFree), Complex64::new(1.0, 0.0), 4, None).is_err());
}

proptest! {
    #[test]
    fn power_laws(p in 0.5f64..4.0, q in 0.0f64..2.0, n in 8usize..200) {
        let s: Vec<f64> = (1..=n).map(|j| (j as f64).powf(-(p + q))).collect();
        prop_assert_eq!(bound_verdict(&s, p).2, Verdict::Pass);
        if q > 0.2 {
            prop_assert_eq!(bound_verdict(&s, p + q + 0.3).2, Verdict::Fail);
        }
    }

    #[test]
    fn reports_are_sorted(v in prop::collection::vec(0.0f64..10.0, 1..50)) {
        let r = decay_report(Entity::ImWeylAtZ, "x", Complex64::new(0.0, 1.0), v, 1.0).unwrap();
        prop_assert!(r.singular_values.windows(2).all(|w| w[1] <= w[0]));
    }
}
