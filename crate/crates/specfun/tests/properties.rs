use proptest::prelude::*;
use specfun::{bessel_jy_seq, spherical_jyh_seq};

fn log_x() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn cylindrical_wronskian(m in 0usize..=64, x in log_x()) {
        for e in bessel_jy_seq(m, x).unwrap() {
            if e.y.is_finite() && e.dy.is_finite() {
                prop_assert!(e.wronskian_residual() <= 1e-10, "m {} x {}: {:e}", e.order, x, e.wronskian_residual());
            }
        }
    }

    #[test]
    fn spherical_wronskian(l in 0usize..=64, x in log_x()) {
        for e in spherical_jyh_seq(l, x).unwrap() {
            if e.y.is_finite() && e.dy.is_finite() {
                prop_assert!(e.wronskian_residual() <= 1e-10, "l {} x {}: {:e}", e.order, x, e.wronskian_residual());
            }
        }
    }

    #[test]
    fn three_term_recurrence(m in 1usize..=63, x in log_x()) {
        let s = bessel_jy_seq(m + 1, x).unwrap();
        let lhs = s[m - 1].j + s[m + 1].j;
        let rhs = 2.0 * m as f64 / x * s[m].j;
        let scale = lhs.abs().max(rhs.abs()).max(s[m - 1].j.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-9 * scale, "m {} x {}: {:e} vs {:e}", m, x, lhs, rhs);
    }

    #[test]
    fn spherical_matches_half_order_relation(l in 0usize..=10, x in 0.5f64..40.0) {
        // j_0 = sin x / x and j_{l+1} = (2l+1)/x j_l - j_{l-1}
        let s = spherical_jyh_seq(l + 1, x).unwrap();
        prop_assert!((s[0].j - x.sin() / x).abs() < 1e-14);
        if l >= 1 {
            let rhs = (2 * l + 1) as f64 / x * s[l].j - s[l - 1].j;
            let scale = s[l + 1].j.abs().max(s[l - 1].j.abs());
            prop_assert!((s[l + 1].j - rhs).abs() <= 1e-9 * scale);
        }
    }
}
