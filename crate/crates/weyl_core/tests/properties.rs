use numkernel::{c64, ComplexMatrix};
use proptest::prelude::*;
use weyl_core::{boundary_limit_from_matrix, richardson, BoundaryOptions, ChannelTruncation, EpsSchedule};

fn psd_im_matrix(n: usize, seed: Vec<f64>) -> ComplexMatrix {
    // M = H + i B B* with H Hermitian, so Im M = B B* ⪰ 0 (rank ≤ n-1).
    let b = ComplexMatrix::from_fn(n, n - 1, |i, j| c64(seed[(i * 7 + j) % seed.len()], seed[(i + 3 * j + 1) % seed.len()]));
    let bb = &b * &b.adjoint();
    let h = ComplexMatrix::from_fn(n, n, |i, j| c64(seed[(i + j) % seed.len()], if i == j { 0.0 } else { (i as f64 - j as f64) * 0.1 }));
    let h = h.hermitian_part();
    &h + &bb.scale(c64(0.0, 1.0))
}

proptest! {
    #[test]
    fn isometry_is_orthonormal_and_spans_range(k in 1usize..5, seed in prop::collection::vec(-1.0f64..1.0, 16)) {
        let t = ChannelTruncation::fourier(k);
        let n = t.n();
        let m = psd_im_matrix(n, seed);
        let bl = boundary_limit_from_matrix(0.7, m.clone(), &t, BoundaryOptions::default(), None).unwrap();
        let p = &bl.channel_isometry;
        let gram = &p.adjoint() * p;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(bl.rank())) < 1e-10);
        // Im M = P P* Im M P P*
        let proj = p * &p.adjoint();
        let back = &(&proj * &bl.im_m) * &proj;
        prop_assert!(back.max_abs_diff(&bl.im_m) < 1e-9 * (1.0 + bl.im_m.max_abs()));
        prop_assert!(bl.rank() <= n - 1);
    }

    #[test]
    fn quadratic_in_epsilon_extrapolates_exactly(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0) {
        let r = richardson(&EpsSchedule::default(), |e| Ok(ComplexMatrix::scalar(c64(a + b * e + c * e * e, b * e)))).unwrap();
        prop_assert!((r.value[(0, 0)] - c64(a, 0.0)).norm() < 1e-12 * (1.0 + a.abs()));
    }
}
