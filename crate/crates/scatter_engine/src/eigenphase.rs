use std::f64::consts::PI;

use num_complex::Complex64;
use numkernel::{herm_eig, ComplexMatrix, LinalgError};
use serde::Serialize;

use crate::{ScatterError, ScatteringMatrixSample};

/// Eigenvalues of (S+S*)/2 closer than this are diagonalized together in
/// (S-S*)/(2i) to separate conjugate pairs e^{±iθ}.
const CLUSTER_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenphaseRow {
    pub lambda: f64,
    pub channel: usize,
    pub phase_rad: f64,
}

/// Eigenphases of a unitary matrix as (phase, channel) pairs, where the
/// channel is the index of the largest component of the eigenvector.
/// Phases lie in (-π, π] and are sorted ascending, ties by channel.
pub fn eigenphases(s: &ComplexMatrix) -> Result<Vec<(f64, usize)>, LinalgError> {
    let r = s.rows();
    if r == 0 {
        return Ok(Vec::new());
    }
    let h1 = s.hermitian_part();
    let h2 = s.imag_part();
    let e1 = herm_eig(&h1)?;
    let mut out = Vec::with_capacity(r);
    let mut start = 0;
    while start < r {
        let mut end = start + 1;
        while end < r && e1.eigenvalues[end] - e1.eigenvalues[end - 1] < CLUSTER_TOL {
            end += 1;
        }
        let idx: Vec<usize> = (start..end).collect();
        let u = e1.eigenvectors.select(&(0..r).collect::<Vec<_>>(), &idx);
        let vectors = if idx.len() == 1 {
            u
        } else {
            let block = &(&u.adjoint() * &h2) * &u;
            let e2 = herm_eig(&block.hermitian_part())?;
            &u * &e2.eigenvectors
        };
        for c in 0..vectors.cols() {
            let v = vectors.col(c);
            let sv = s.matvec(&v);
            let rq: Complex64 = v.iter().zip(&sv).map(|(a, b)| a.conj() * b).sum();
            let mut phase = rq.arg();
            if phase <= -PI {
                phase = PI;
            }
            let channel = (0..r).fold(0, |b, i| if v[i].norm() > v[b].norm() * (1.0 + 1e-12) { i } else { b });
            out.push((phase, channel));
        }
        start = end;
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// One row per eigenphase per sample, in sample order.
pub fn eigenphase_report(samples: &[ScatteringMatrixSample], tol: f64) -> Result<Vec<EigenphaseRow>, ScatterError> {
    let mut rows = Vec::new();
    for s in samples {
        if !(s.unitarity_defect <= tol) {
            return Err(ScatterError::NonUnitarySample { lambda: s.lambda, defect: s.unitarity_defect });
        }
        for (phase, channel) in eigenphases(&s.s)? {
            rows.push(EigenphaseRow { lambda: s.lambda, channel, phase_rad: phase });
        }
    }
    Ok(rows)
}
