use model_zoo::{analytic_oracle_smatrix, ModelHandle, ModelKind, ModelParams};
use num_complex::Complex64;
use proptest::prelude::*;
use scatter_engine::{model_smatrix, SmatrixOptions};
use stationary_oracle::*;
use weyl_core::{BoundaryOptions, BoundaryStrategy, ChannelTruncation};

fn model(alpha: f64) -> StationaryModel {
    StationaryModel::new(alpha, StationaryConfig::default()).unwrap()
}

#[test]
fn factorization_residual_is_small() {
    let m = model(0.7);
    assert!(m.factorization().residual <= 1e-12, "{:e}", m.factorization().residual);
}

#[test]
fn q_star_q_two_ways() {
    let m = model(0.7);
    let (a, b) = m.factorization().q_star_q(&m.chain);
    assert!((a - b).norm() <= 1e-10, "{a} vs {b}");
    assert!(a.im.abs() < 1e-14 && a.re > 0.0);
}

#[test]
fn density_matches_im_m() {
    let m = model(0.7);
    for &l in &[-1.5, -0.5, 0.0, 0.3, 1.5] {
        let k = m.spectral_density(l).unwrap();
        assert!(k.im_m_residual <= 1e-8, "λ {l}: {:e}", k.im_m_residual);
        assert!(k.k[(0, 0)].re > 0.0);
    }
    for &l in &[-2.5, 2.0, 3.0] {
        assert_eq!(m.spectral_density(l).unwrap().k[(0, 0)].norm(), 0.0);
    }
}

#[test]
fn z_identity() {
    let m = model(0.7);
    for &l in &[-1.5, -0.5, 0.0, 0.5, 1.5] {
        let z = m.z_function(l).unwrap();
        assert!(z.residual <= 1e-6, "λ {l}: {:e}", z.residual);
    }
    assert!(matches!(m.z_function(2.5), Err(StationaryError::OutsideBand(_))));
}

#[test]
fn zero_coupling_is_identity() {
    let m = model(0.0);
    let s = m.stationary_smatrix(0.3).unwrap();
    assert!((s.s[(0, 0)] - 1.0).norm() < 1e-12);
}

#[test]
fn three_routes_agree() {
    let alpha = 0.7;
    let st = model(alpha);
    let handle = ModelHandle::new(ModelParams::new(ModelKind::JacobiHalfline, alpha)).unwrap();
    for &l in &[-1.5, -0.5, 0.0, 0.3, 0.5, 1.5] {
        let s_st = st.stationary_smatrix(l).unwrap();
        let s_eng = model_smatrix(&handle, l, &ChannelTruncation::scalar(), BoundaryStrategy::Direct, BoundaryOptions::default(), &SmatrixOptions::default()).unwrap();
        let s_or = analytic_oracle_smatrix(&handle, l, &ChannelTruncation::scalar()).unwrap();
        let classical = rank_one_smatrix(alpha, l);
        let a = s_st.s[(0, 0)];
        assert!((a - s_eng.s[(0, 0)]).norm() <= 1e-6, "λ {l}: {a} vs engine {}", s_eng.s[(0, 0)]);
        assert!((a - s_or.s[(0, 0)]).norm() <= 1e-6, "λ {l}: oracle");
        assert!((a - classical).norm() <= 1e-6, "λ {l}: classical");
        assert!(s_st.unitarity_defect <= 1e-6);
    }
}

#[test]
fn outside_band_has_no_channels() {
    let s = model(0.7).stationary_smatrix(2.4).unwrap();
    assert_eq!(s.s.rows(), 0);
}

#[test]
fn very_short_chain_fails_the_factorization_gate() {
    let cfg = StationaryConfig { sites: 12, ..Default::default() };
    assert!(matches!(StationaryModel::new(0.7, cfg), Err(StationaryError::FactorizationResidual { .. })));
}

#[test]
fn short_chain_fails_the_doubling_test() {
    let cfg = StationaryConfig { sites: 40, ..Default::default() };
    let m = StationaryModel::new(0.7, cfg).unwrap();
    assert!(matches!(m.spectral_density(0.3), Err(StationaryError::TruncationTooSmall { .. })));
    assert!(matches!(m.z_function(0.3), Err(StationaryError::TruncationTooSmall { .. })));
}

#[test]
fn phi_is_unimodular() {
    for &t in &[-3.0, 0.0, 0.5, 10.0] {
        assert!((phi(t).norm() - 1.0).abs() < 1e-15);
    }
    assert_eq!(phi(0.0), Complex64::new(-1.0, 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn stationary_is_unitary(alpha in -3.0f64..3.0, l in -1.9f64..1.9) {
        let cfg = StationaryConfig { sites: 400, ..Default::default() };
        let m = StationaryModel::new(alpha, cfg).unwrap();
        let s = m.stationary_smatrix(l).unwrap();
        prop_assert!(s.unitarity_defect <= 1e-6, "{:e}", s.unitarity_defect);
        prop_assert!((s.s[(0, 0)] - rank_one_smatrix(alpha, l)).norm() <= 1e-6);
    }
}
