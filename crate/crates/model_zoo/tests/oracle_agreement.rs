use model_zoo::{analytic_oracle_smatrix, Coupling, ModelHandle, ModelKind, ModelParams, ZooError};
use num_complex::Complex64;
use numkernel::ComplexMatrix;
use scatter_engine::{model_smatrix, ScatteringMatrixSample, SmatrixOptions};
use weyl_core::{BoundaryOptions, BoundaryStrategy, ChannelTruncation, WeylModel};

const GRID: [f64; 7] = [0.05, 0.3, 1.0, 2.0, 4.5, 9.0, 20.0];
const CHAIN_GRID: [f64; 7] = [-1.9, -1.2, -0.5, 0.0, 0.4, 1.1, 1.85];

fn engine_sample(model: &ModelHandle, lambda: f64, trunc: &ChannelTruncation) -> ScatteringMatrixSample {
    model_smatrix(model, lambda, trunc, BoundaryStrategy::Direct, BoundaryOptions::default(), &SmatrixOptions::default())
        .unwrap_or_else(|e| panic!("{} λ = {lambda}: {e}", model.name()))
}

fn engine(model: &ModelHandle, lambda: f64, trunc: &ChannelTruncation) -> ComplexMatrix {
    engine_sample(model, lambda, trunc).embedded()
}

fn oracle(model: &ModelHandle, lambda: f64, trunc: &ChannelTruncation) -> ComplexMatrix {
    analytic_oracle_smatrix(model, lambda, trunc).unwrap_or_else(|e| panic!("{} λ = {lambda}: {e}", model.name())).embedded()
}

fn off_diagonal(m: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

fn check(model: &ModelHandle, grid: &[f64], trunc: &ChannelTruncation) {
    for &lambda in grid {
        let sample = engine_sample(model, lambda, trunc);
        let e = sample.embedded();
        let o = oracle(model, lambda, trunc);
        // S acts on the channel space ran Im M(λ+i0); compare there
        let p = &sample.channel_isometry;
        let on_channels = (&(&p.adjoint() * &o) * p).max_abs_diff(&sample.s);
        assert!(on_channels <= 1e-8, "{} {:?} λ = {lambda}: engine vs oracle {on_channels:.3e}", model.name(), model.params().alpha);
        // modes below the rank tolerance scatter only at that level
        let full = e.max_abs_diff(&o);
        assert!(full <= 1e-6, "{} λ = {lambda}: outside the channel space {full:.3e}", model.name());
        assert!(off_diagonal(&e) <= 1e-12 && off_diagonal(&o) <= 1e-12, "{} λ = {lambda}: not mode-diagonal", model.name());
    }
}

fn handle(kind: ModelKind, alpha: f64) -> ModelHandle {
    ModelHandle::new(ModelParams::new(kind, alpha)).unwrap()
}

#[test]
fn delta_line_matches_transfer_matrix() {
    for alpha in [2.0, 0.5, -1.0, -3.0] {
        check(&handle(ModelKind::DeltaLine, alpha), &GRID, &ChannelTruncation::scalar());
    }
}

#[test]
fn delta_line_example_value() {
    // α = 2, λ = 1: r = -α/(2ik + α), t = 2ik/(2ik + α)
    let m = handle(ModelKind::DeltaLine, 2.0);
    let s = oracle(&m, 1.0, &ChannelTruncation::scalar())[(0, 0)];
    let want = Complex64::new(-2.0, 2.0) / Complex64::new(2.0, 2.0);
    assert!((s - want).norm() < 1e-15);
    assert!((engine(&m, 1.0, &ChannelTruncation::scalar())[(0, 0)] - s).norm() < 1e-12);
}

#[test]
fn zero_coupling_is_transparent() {
    let s = oracle(&handle(ModelKind::DeltaLine, 0.0), 1.3, &ChannelTruncation::scalar());
    assert_eq!(s[(0, 0)], Complex64::new(1.0, 0.0));
    let t = ChannelTruncation::spherical(4);
    let s = oracle(&handle(ModelKind::SphereDeltaShell, 0.0), 2.0, &t);
    assert!(s.max_abs_diff(&ComplexMatrix::identity(t.n())) == 0.0);
    let s = engine(&handle(ModelKind::SphereDeltaShell, 0.0), 2.0, &t);
    assert!(s.max_abs_diff(&ComplexMatrix::identity(t.n())) < 1e-14);
}

#[test]
fn jacobi_matches_rank_one_formula() {
    for alpha in [0.8, -1.5, 3.0, 0.0] {
        check(&handle(ModelKind::JacobiHalfline, alpha), &CHAIN_GRID, &ChannelTruncation::scalar());
    }
}

#[test]
fn disk_models_match_partial_waves() {
    let t = ChannelTruncation::fourier(16);
    for kind in [ModelKind::DiskNeumannRobin, ModelKind::DiskDirichletRobin] {
        for (alpha, radius) in [(1.0, 1.0), (-0.7, 1.5), (4.0, 0.6)] {
            let m = ModelHandle::new(ModelParams::new(kind, alpha).with_radius(radius)).unwrap();
            check(&m, &GRID, &t);
        }
    }
    // Dirichlet-Robin allows α = 0 (S relative to Dirichlet is then the
    // Neumann-versus-Dirichlet matrix)
    check(&handle(ModelKind::DiskDirichletRobin, 0.0), &GRID, &t);
}

#[test]
fn delta_shells_match_partial_waves() {
    for (alpha, radius, v0) in [(1.0, 1.0, 0.0), (-2.0, 0.8, 0.0), (0.6, 1.2, 0.02), (3.0, 1.0, -1.5)] {
        let circle = ModelHandle::new(ModelParams::new(ModelKind::CircleDeltaShell, alpha).with_radius(radius).with_v0(v0)).unwrap();
        check(&circle, &GRID, &ChannelTruncation::fourier(16));
        let sphere = ModelHandle::new(ModelParams::new(ModelKind::SphereDeltaShell, alpha).with_radius(radius).with_v0(v0)).unwrap();
        check(&sphere, &GRID, &ChannelTruncation::spherical(6));
    }
}

#[test]
fn per_order_coupling_stays_diagonal() {
    let p = ModelParams::new(ModelKind::DiskNeumannRobin, 1.0).with_coupling(Coupling::PerOrder(vec![1.0, 0.5, -2.0, 3.0]));
    check(&ModelHandle::new(p).unwrap(), &GRID, &ChannelTruncation::fourier(8));
}

#[test]
fn below_continuum_has_no_channels() {
    let m = handle(ModelKind::DiskNeumannRobin, 1.0);
    let t = ChannelTruncation::fourier(3);
    let s = analytic_oracle_smatrix(&m, -1.0, &t).unwrap();
    assert_eq!(s.rank(), 0);
    let e = model_smatrix(&m, -1.0, &t, BoundaryStrategy::Direct, BoundaryOptions::default(), &SmatrixOptions::default()).unwrap();
    assert_eq!(e.rank(), 0);
}

#[test]
fn coupling_continuity() {
    let t = ChannelTruncation::fourier(8);
    for kind in [ModelKind::DeltaLine, ModelKind::DiskNeumannRobin, ModelKind::CircleDeltaShell, ModelKind::SphereDeltaShell] {
        let trunc = match kind {
            ModelKind::DeltaLine => ChannelTruncation::scalar(),
            ModelKind::SphereDeltaShell => ChannelTruncation::spherical(4),
            _ => t.clone(),
        };
        let mut prev = f64::INFINITY;
        for alpha in [1e-2, 1e-4, 1e-6] {
            let s = engine(&handle(kind, alpha), 1.5, &trunc);
            let d = (&s - &ComplexMatrix::identity(trunc.n())).frobenius_norm();
            assert!(d < prev, "{kind} α = {alpha}: {d} not below {prev}");
            prev = d;
        }
        assert!(prev < 1e-5, "{kind}: ‖S - I‖ = {prev}");
    }
}

#[test]
fn unsupported_models() {
    let t = ChannelTruncation::fourier(2);
    for kind in [ModelKind::CircleDirichletFree, ModelKind::CircleNeumannFree] {
        let r = analytic_oracle_smatrix(&handle(kind, 0.0), 1.0, &t);
        assert!(matches!(r, Err(ZooError::OracleUnavailable(_))));
    }
    let fourier = Coupling::Fourier(vec![(0, Complex64::new(1.0, 0.0)), (1, Complex64::new(0.1, 0.0)), (-1, Complex64::new(0.1, 0.0))]);
    let m = ModelHandle::new(ModelParams::new(ModelKind::DiskNeumannRobin, 1.0).with_coupling(fourier)).unwrap();
    assert!(matches!(analytic_oracle_smatrix(&m, 1.0, &t), Err(ZooError::OracleUnavailable(_))));
}
