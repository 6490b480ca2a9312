//! Scattering matrices from direct solution matching, independent of the
//! Weyl-function route: a transfer matrix on the line, the classical
//! rank-one formula on the chain, and partial waves for the radial models.

use num_complex::Complex64;
use numkernel::ComplexMatrix;
use scatter_engine::{eigenphases, ScatteringMatrixSample};
use specfun::{bessel_jy_seq, spherical_jyh_seq};
use weyl_core::{ChannelTruncation, EpsSchedule, WeylModel};

use crate::jacobi::{m_boundary, JacobiChain, BAND_EDGE};
use crate::{ModelHandle, ModelKind, ZooError};

/// Sites in the plainly truncated chain used for the second m evaluation.
pub const ORACLE_CHAIN_SITES: usize = 60_000;
/// Allowed gap between the two m evaluations.
pub const ORACLE_M_AGREEMENT: f64 = 1e-6;

/// S(λ) on the full truncation, one channel per mode (identity isometry),
/// or no channel below the continuum.
pub fn analytic_oracle_smatrix(model: &ModelHandle, lambda: f64, trunc: &ChannelTruncation) -> Result<ScatteringMatrixSample, ZooError> {
    model.check_truncation(trunc)?;
    let p = model.params();
    if !lambda.is_finite() {
        return Err(ZooError::InvalidParameters(format!("λ = {lambda}")));
    }
    if !p.alpha.is_diagonal() {
        return Err(ZooError::OracleUnavailable("non-constant coupling on the circle".into()));
    }
    let open = match p.kind {
        ModelKind::JacobiHalfline => lambda.abs() < BAND_EDGE,
        _ => lambda > 0.0,
    };
    if !open {
        return Ok(sample(lambda, None, trunc.n()));
    }
    let diag: Vec<Complex64> = match p.kind {
        ModelKind::DeltaLine => vec![delta_line_even(p.alpha.scalar().unwrap_or(0.0), lambda.sqrt())],
        ModelKind::JacobiHalfline => vec![jacobi_s(p.alpha.scalar().unwrap_or(0.0), lambda)?],
        ModelKind::DiskNeumannRobin | ModelKind::DiskDirichletRobin | ModelKind::CircleDeltaShell | ModelKind::SphereDeltaShell => {
            let per_order = partial_waves(model, lambda, trunc.max_order())?;
            trunc.labels().iter().map(|l| per_order[l.order()]).collect()
        }
        other => return Err(ZooError::OracleUnavailable(format!("{other} has no partial-wave oracle"))),
    };
    Ok(sample(lambda, Some(diag), trunc.n()))
}

fn sample(lambda: f64, diag: Option<Vec<Complex64>>, n: usize) -> ScatteringMatrixSample {
    let (s, iso, labels) = match diag {
        Some(d) => (ComplexMatrix::from_diag(&d), ComplexMatrix::identity(n), (0..n).map(|j| format!("c{j}")).collect()),
        None => (ComplexMatrix::identity(0), ComplexMatrix::zeros(n, 0), Vec::new()),
    };
    let r = s.rows();
    let defect = (&(&s * &s.adjoint()) - &ComplexMatrix::identity(r)).frobenius_norm();
    let phases = eigenphases(&s).map(|v| v.into_iter().map(|(p, _)| p).collect()).unwrap_or_default();
    ScatteringMatrixSample {
        lambda,
        s,
        channel_isometry: iso,
        channel_labels: labels,
        unitarity_defect: defect,
        eigenphases: phases,
        flagged: false,
        condition: 1.0,
    }
}

/// Even-channel S = t + r for -ψ'' - αδψ = k²ψ. The jump condition
/// ψ'(0⁺) - ψ'(0⁻) = -αψ(0) is the transfer matrix [[1, 0], [-α, 1]]
/// acting on (ψ, ψ'); the left state is e^{ikx} + r e^{-ikx}, the right
/// state t e^{ikx}.
pub fn delta_line_even(alpha: f64, k: f64) -> Complex64 {
    let ik = Complex64::new(0.0, k);
    let t = [[1.0, 0.0], [-alpha, 1.0]];
    // T·(1 + r, ik(1 - r)) = (t, ik t), unknowns (r, t)
    // row 0: t00(1 + r) + t01·ik(1 - r) - t = 0
    // row 1: t10(1 + r) + t11·ik(1 - r) - ik t = 0
    let a = [[t[0][0] - t[0][1] * ik, Complex64::new(-1.0, 0.0)], [t[1][0] - t[1][1] * ik, -ik]];
    let b = [-(t[0][0] + t[0][1] * ik), -(t[1][0] + t[1][1] * ik)];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let r = (b[0] * a[1][1] - a[0][1] * b[1]) / det;
    let tt = (a[0][0] * b[1] - b[0] * a[1][0]) / det;
    tt + r
}

/// S = (1 + α·conj m)/(1 + α·m) with m(λ + i0) checked against the
/// ε-extrapolated resolvent of a plainly truncated chain.
pub fn jacobi_s(alpha: f64, lambda: f64) -> Result<Complex64, ZooError> {
    let closed = m_boundary(lambda);
    let schedule = EpsSchedule { eps0: 0.05, levels: 6, order: 2 };
    let (trunc_m, _) = JacobiChain::new(alpha).truncated_m_boundary(lambda, ORACLE_CHAIN_SITES, &schedule)?;
    let gap = (closed - trunc_m).norm();
    if gap > ORACLE_M_AGREEMENT {
        return Err(ZooError::OracleUnavailable(format!("m(λ+i0) evaluations differ by {gap:.3e} at λ = {lambda}")));
    }
    Ok((1.0 + alpha * closed.conj()) / (1.0 + alpha * closed))
}

/// Outgoing data at one order: J, kJ' (interior, possibly shifted k) and
/// H, kH' (exterior), with H = J + iY.
struct Waves {
    j: f64,
    kdj: f64,
    h: Complex64,
    kdh: Complex64,
}

fn partial_waves(model: &ModelHandle, lambda: f64, max_order: usize) -> Result<Vec<Complex64>, ZooError> {
    let p = model.params();
    let k = lambda.sqrt();
    let x = k * p.radius;
    let inside = lambda - p.v0;
    if p.kind.has_interior() && inside <= 0.0 {
        return Err(ZooError::OracleUnavailable(format!("λ = {lambda} is below the interior potential {}", p.v0)));
    }
    let kin = inside.sqrt();
    let xin = kin * p.radius;
    let sphere = p.kind == ModelKind::SphereDeltaShell;
    let waves: Vec<Waves> = if sphere {
        let ext = spherical_jyh_seq(max_order, x)?;
        let int = spherical_jyh_seq(max_order, xin)?;
        ext.iter().zip(&int).map(|(e, i)| Waves { j: i.j, kdj: kin * i.dj, h: e.h(), kdh: k * e.dh() }).collect()
    } else {
        let ext = bessel_jy_seq(max_order, x)?;
        let int = bessel_jy_seq(max_order, xin)?;
        ext.iter()
            .zip(&int)
            .map(|(e, i)| {
                let h = e.hankel();
                Waves { j: i.j, kdj: kin * i.dj, h: h.h, kdh: k * h.dh }
            })
            .collect()
    };
    let mut out = Vec::with_capacity(max_order + 1);
    for (order, w) in waves.iter().enumerate() {
        let a = p.alpha.for_order(order).unwrap_or(0.0);
        let (h1, dh1, h2, dh2) = (w.h, w.kdh, w.h.conj(), w.kdh.conj());
        let s = match p.kind {
            // Robin relative to Neumann
            ModelKind::DiskNeumannRobin => (a * h2 + dh2) * dh1 / ((a * h1 + dh1) * dh2),
            // Robin relative to Dirichlet
            ModelKind::DiskDirichletRobin => (a * h2 + dh2) * h1 / ((a * h1 + dh1) * h2),
            // δ-shell of strength a relative to the same operator with a = 0
            _ => {
                let shell = |a: f64| {
                    let c = a * w.j - w.kdj;
                    -(c * h2 + w.j * dh2) / (c * h1 + w.j * dh1)
                };
                shell(a) / shell(0.0)
            }
        };
        out.push(s);
    }
    Ok(out)
}
