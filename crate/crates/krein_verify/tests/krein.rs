use krein_verify::{
    bump_probes, gamma_field_audit, krein_residual, random_probes, FdDeltaLineDiscretization, GammaIdentity, JacobiDiscretization, KreinConvergence,
    KreinError, KreinModel,
};
use model_zoo::Closure;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn jacobi_krein_residual() {
    let model = JacobiDiscretization::new(0.7, 2000);
    let probes = random_probes(&model, 16, 7);
    let r = krein_residual(&model, c(0.5, 0.5), &probes).unwrap();
    assert!(r <= 1e-8, "{r:e}");
}

#[test]
fn jacobi_uncoupled_is_exact() {
    let model = JacobiDiscretization::new(0.0, 500);
    let r = krein_residual(&model, c(0.5, 0.5), &random_probes(&model, 4, 1)).unwrap();
    assert!(r <= 1e-12, "{r:e}");
}

#[test]
fn jacobi_truncation_convergence() {
    // near the band the defect decays like |m|^N, so short chains show it
    let z = c(0.3, 0.05);
    let mut prev = f64::INFINITY;
    for n in [80usize, 160, 320] {
        let model = JacobiDiscretization::new(1.2, n);
        let r = krein_residual(&model, z, &random_probes(&model, 4, 3)).unwrap();
        assert!(r < prev, "N = {n}: {r:e} vs {prev:e}");
        prev = r;
    }
    // the transparent closure removes the truncation error
    let exact = JacobiDiscretization::new(1.2, 80).with_closure(Closure::Transparent);
    assert!(krein_residual(&exact, z, &random_probes(&exact, 4, 3)).unwrap() < 1e-12);
}

#[test]
fn delta_line_fd_residual_and_order() {
    let z = c(0.0, 1.0);
    let model = FdDeltaLineDiscretization::new(2.0, 200.0, 0.01).unwrap();
    let r = krein_residual(&model, z, &bump_probes(&model, 8, 11)).unwrap();
    assert!(r <= 1e-4, "{r:e}");
    let conv = KreinConvergence::measure(2.0, 200.0, &[0.02, 0.01, 0.005], z, 8, 11).unwrap();
    for ratio in &conv.ratios {
        assert!((3.0..5.5).contains(ratio), "ratios {:?}", conv.ratios);
    }
    assert!((conv.observed_order - 2.0).abs() < 0.3, "order {}", conv.observed_order);
}

#[test]
fn jacobi_gamma_identities() {
    let model = JacobiDiscretization::new(0.7, 2000);
    let zs = [c(0.5, 0.5), c(-1.0, 1.0), c(0.3, 2.0)];
    let audit = gamma_field_audit(&model, &zs).unwrap();
    assert_eq!(audit.rows.len(), 3 * 2 + 9 * 2);
    for id in [GammaIdentity::Gutgut, GammaIdentity::Imm, GammaIdentity::Gform1, GammaIdentity::Range] {
        assert!(audit.max_residual(id) <= 1e-8, "{id:?}: {:e}", audit.max_residual(id));
    }
}

#[test]
fn degenerate_pairs() {
    let model = JacobiDiscretization::new(0.7, 200);
    let z = c(0.2, 0.8);
    let audit = gamma_field_audit(&model, &[z, z.conj()]).unwrap();
    for row in &audit.rows {
        if row.identity == GammaIdentity::Gform1 && row.z == row.xi {
            assert_eq!(row.residual, 0.0);
        }
        if row.identity == GammaIdentity::Gutgut && row.xi == row.z.conj() {
            assert_eq!(row.residual, 0.0);
        }
    }
}

#[test]
fn delta_line_fd_gamma_identities() {
    let model = FdDeltaLineDiscretization::new(1.0, 200.0, 0.01).unwrap();
    let audit = gamma_field_audit(&model, &[c(0.0, 1.0), c(1.0, 0.5)]).unwrap();
    // continuum γ and M are exact; the quadrature is O(h²) at the kink
    assert!(audit.max_residual(GammaIdentity::Imm) < 1e-4);
    assert!(audit.max_residual(GammaIdentity::Gutgut) < 1e-4);
    assert!(audit.max_residual(GammaIdentity::Range) < 1e-4);
    assert!(audit.max_residual(GammaIdentity::Gform1) < 1e-4);
}

#[test]
fn errors() {
    let model = JacobiDiscretization::new(0.7, 10);
    assert!(matches!(krein_residual(&model, c(0.5, 0.0), &[]), Err(KreinError::ResolventUnavailable(_))));
    assert!(matches!(krein_residual(&model, c(0.5, 1.0), &[vec![c(1.0, 0.0)]]), Err(KreinError::InvalidProbe { .. })));
    let fd = FdDeltaLineDiscretization::new(0.0, 20.0, 0.5).unwrap();
    assert!(matches!(fd.weyl(c(0.0, 1.0)), Err(KreinError::SingularWeylValue { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn krein_holds_on_transparent_chain(alpha in -3.0f64..3.0, re in -3.0f64..3.0, im in 0.05f64..3.0, seed in 0u64..1000) {
        let model = JacobiDiscretization::new(alpha, 200).with_closure(Closure::Transparent);
        let z = c(re, im);
        prop_assume!((1.0 + alpha * model_zoo::jacobi::m_function(z)).norm() > 1e-3);
        let r = krein_residual(&model, z, &random_probes(&model, 3, seed)).unwrap();
        prop_assert!(r <= 1e-10 * (1.0 + 1.0 / im), "{}", r);
    }

    #[test]
    fn imm_on_chain(re in -4.0f64..4.0, im in 0.2f64..4.0) {
        let model = JacobiDiscretization::new(0.5, 400).with_closure(Closure::Transparent);
        let audit = gamma_field_audit(&model, &[c(re, im)]).unwrap();
        prop_assert!(audit.max_residual(GammaIdentity::Imm) <= 1e-10);
    }
}
