//! Lorentzian frames: the ambient arena for all tensor operations.
//!
//! A [`LorentzFrame`] holds the dimension, the metric components g_ab with
//! signature (−,+,…,+), an orientation, and a designated future timelike
//! axis. Frames are validated once at construction and shared behind an
//! [`Arc`] by every tensor that lives in them.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::tol;

/// Supported dimension range. Dense storage keeps N^rank arrays small.
pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 6;
/// Rank cap for stored tensors (N^8 <= 6^8 ~ 1.7M entries).
pub const MAX_RANK: usize = 8;

/// Shared handle to a validated frame.
pub type Frame = Arc<LorentzFrame>;

/// An N-dimensional vector space with a Lorentzian metric of signature
/// (−,+,…,+), an orientation, and a declared future timelike direction.
#[derive(Debug, Clone)]
pub struct LorentzFrame {
    dim: usize,
    metric: Vec<f64>,     // N x N, row-major, symmetric
    metric_inv: Vec<f64>, // N x N, row-major
    sqrt_abs_det: f64,
    orientation: i8,
    future_axis: Vec<f64>,        // contravariant, timelike, future
    ortho_basis: Vec<Vec<f64>>,   // e_0 .. e_{N-1}; g(e_0,e_0) = -1, e_0 future
}

impl PartialEq for LorentzFrame {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.orientation == other.orientation
            && self.metric == other.metric
            && self.future_axis == other.future_axis
    }
}

impl LorentzFrame {
    /// Builds a frame, validating the metric signature and the future axis.
    ///
    /// `metric` defaults to diag(−1,1,…,1) and `future_axis` to the first
    /// coordinate axis. The orientation defaults to +1; see
    /// [`LorentzFrame::with_orientation`].
    pub fn new(
        dim: usize,
        metric: Option<Vec<f64>>,
        future_axis: Option<Vec<f64>>,
    ) -> Result<Frame> {
        Self::with_orientation(dim, metric, future_axis, 1)
    }

    /// As [`LorentzFrame::new`] with an explicit orientation (±1).
    pub fn with_orientation(
        dim: usize,
        metric: Option<Vec<f64>>,
        future_axis: Option<Vec<f64>>,
        orientation: i8,
    ) -> Result<Frame> {
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(Error::DimensionOutOfRange(dim));
        }
        if !(orientation == 1 || orientation == -1) {
            return Err(Error::BadParams("orientation must be +1 or -1".into()));
        }

        let metric = match metric {
            Some(m) => {
                if m.len() != dim * dim {
                    return Err(Error::ComponentLength {
                        got: m.len(),
                        dim,
                        rank: 2,
                        want: dim * dim,
                    });
                }
                let scale = m.iter().fold(0.0f64, |a, x| a.max(x.abs()));
                for i in 0..dim {
                    for j in 0..i {
                        if (m[i * dim + j] - m[j * dim + i]).abs() > tol::ALG * scale.max(1.0) {
                            return Err(Error::NotSymmetric);
                        }
                    }
                }
                // store the exactly symmetric part
                let mut sym = m.clone();
                for i in 0..dim {
                    for j in 0..i {
                        let v = 0.5 * (m[i * dim + j] + m[j * dim + i]);
                        sym[i * dim + j] = v;
                        sym[j * dim + i] = v;
                    }
                }
                sym
            }
            None => {
                let mut m = vec![0.0; dim * dim];
                m[0] = -1.0;
                for i in 1..dim {
                    m[i * dim + i] = 1.0;
                }
                m
            }
        };

        let scale = metric.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1e-300);
        let gm = DMatrix::from_row_slice(dim, dim, &metric);
        let eig = gm.clone().symmetric_eigen();
        let mut neg = 0usize;
        let mut pos = 0usize;
        let mut det = 1.0f64;
        for &ev in eig.eigenvalues.iter() {
            det *= ev;
            if ev < -tol::DEGENERATE * scale {
                neg += 1;
            } else if ev > tol::DEGENERATE * scale {
                pos += 1;
            }
        }
        if neg + pos < dim || det.abs() <= tol::DEGENERATE * scale.powi(dim as i32) {
            return Err(Error::DegenerateMetric(det.abs()));
        }
        if neg != 1 || pos != dim - 1 {
            return Err(Error::WrongSignature { neg, pos });
        }

        let metric_inv = invert_symmetric(&metric, dim)?;

        // g-orthonormal basis: exact for diagonal metrics, eigenbasis otherwise.
        let mut basis = if is_diagonal(&metric, dim) {
            let mut b = Vec::with_capacity(dim);
            let mut order: Vec<usize> = (0..dim).collect();
            order.sort_by(|&a, &bx| {
                metric[a * dim + a]
                    .partial_cmp(&metric[bx * dim + bx])
                    .unwrap()
            });
            for &i in &order {
                let mut e = vec![0.0; dim];
                e[i] = 1.0 / metric[i * dim + i].abs().sqrt();
                b.push(e);
            }
            b
        } else {
            let mut pairs: Vec<(f64, Vec<f64>)> = (0..dim)
                .map(|k| {
                    let ev = eig.eigenvalues[k];
                    let col: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
                    (ev, col)
                })
                .collect();
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            pairs
                .into_iter()
                .map(|(ev, mut col)| {
                    let s = 1.0 / ev.abs().sqrt();
                    for c in col.iter_mut() {
                        *c *= s;
                    }
                    col
                })
                .collect()
        };
        // sign-normalize spatial vectors for determinism
        for e in basis.iter_mut().skip(1) {
            let k = e
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                .map(|(i, _)| i)
                .unwrap_or(0);
            if e[k] < 0.0 {
                for c in e.iter_mut() {
                    *c = -*c;
                }
            }
        }

        let future_axis = match future_axis {
            Some(u) => {
                if u.len() != dim {
                    return Err(Error::VectorLength {
                        got: u.len(),
                        want: dim,
                    });
                }
                u
            }
            None => basis[0].clone(),
        };
        let uu = quad(&metric, dim, &future_axis, &future_axis);
        let uscale = future_axis.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if uu >= -tol::CLASS * uscale * uscale * scale {
            return Err(Error::NonTimelikeFutureAxis(uu));
        }
        // orient e_0 to the future
        if quad(&metric, dim, &basis[0], &future_axis) > 0.0 {
            for c in basis[0].iter_mut() {
                *c = -*c;
            }
        }

        Ok(Arc::new(LorentzFrame {
            dim,
            metric,
            metric_inv,
            sqrt_abs_det: det.abs().sqrt(),
            orientation,
            future_axis,
            ortho_basis: basis,
        }))
    }

    /// The Minkowski frame diag(−1,1,…,1) with e_0 future.
    pub fn minkowski(dim: usize) -> Result<Frame> {
        Self::new(dim, None, None)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Metric components g_ab, row-major.
    pub fn metric(&self) -> &[f64] {
        &self.metric
    }

    /// Inverse metric components g^ab, row-major.
    pub fn metric_inv(&self) -> &[f64] {
        &self.metric_inv
    }

    pub fn sqrt_abs_det(&self) -> f64 {
        self.sqrt_abs_det
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn future_axis(&self) -> &[f64] {
        &self.future_axis
    }

    /// A g-orthonormal basis e_0 … e_{N−1} with g(e_0,e_0) = −1, e_0
    /// future-pointing, and g(e_i,e_i) = +1.
    pub fn ortho_basis(&self) -> &[Vec<f64>] {
        &self.ortho_basis
    }

    /// g(u, v) for contravariant u, v.
    pub fn dot(&self, u: &[f64], v: &[f64]) -> f64 {
        quad(&self.metric, self.dim, u, v)
    }

    /// g^{-1}(a, b) for covariant a, b.
    pub fn inv_dot(&self, a: &[f64], b: &[f64]) -> f64 {
        quad(&self.metric_inv, self.dim, a, b)
    }

    /// Lowers a contravariant vector with g.
    pub fn lower_vec(&self, u: &[f64]) -> Vec<f64> {
        mat_vec(&self.metric, self.dim, u)
    }

    /// Raises a covariant vector with g^{-1}.
    pub fn raise_vec(&self, a: &[f64]) -> Vec<f64> {
        mat_vec(&self.metric_inv, self.dim, a)
    }
}

/// Causal kind of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalKind {
    Timelike,
    Null,
    Spacelike,
    Zero,
}

/// Time orientation of a causal vector; `NotApplicable` exactly for
/// spacelike and zero vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeOrientation {
    Future,
    Past,
    NotApplicable,
}

/// Causal classification of a vector relative to a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CausalClass {
    pub kind: CausalKind,
    pub time_orientation: TimeOrientation,
}

/// Classifies a contravariant vector by the sign of g(v,v), with the time
/// orientation read off the sign of g(v, future_axis) (negative means
/// future in the (−,+,…,+) convention).
pub fn classify_vector(frame: &LorentzFrame, v: &[f64]) -> Result<CausalClass> {
    if v.len() != frame.dim() {
        return Err(Error::VectorLength {
            got: v.len(),
            want: frame.dim(),
        });
    }
    let vscale = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if vscale == 0.0 {
        return Ok(CausalClass {
            kind: CausalKind::Zero,
            time_orientation: TimeOrientation::NotApplicable,
        });
    }
    let gscale = frame
        .metric()
        .iter()
        .fold(0.0f64, |a, x| a.max(x.abs()))
        .max(1e-300);
    let q = frame.dot(v, v);
    let eps = tol::CLASS * vscale * vscale * gscale;
    let kind = if q.abs() <= eps {
        CausalKind::Null
    } else if q < 0.0 {
        CausalKind::Timelike
    } else {
        CausalKind::Spacelike
    };
    let time_orientation = match kind {
        CausalKind::Timelike | CausalKind::Null => {
            if frame.dot(v, frame.future_axis()) < 0.0 {
                TimeOrientation::Future
            } else {
                TimeOrientation::Past
            }
        }
        _ => TimeOrientation::NotApplicable,
    };
    Ok(CausalClass {
        kind,
        time_orientation,
    })
}

fn is_diagonal(m: &[f64], n: usize) -> bool {
    for i in 0..n {
        for j in 0..n {
            if i != j && m[i * n + j] != 0.0 {
                return false;
            }
        }
    }
    true
}

fn quad(m: &[f64], n: usize, u: &[f64], v: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += m[i * n + j] * v[j];
        }
        s += u[i] * row;
    }
    s
}

fn mat_vec(m: &[f64], n: usize, v: &[f64]) -> Vec<f64> {
    (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum())
        .collect()
}

fn invert_symmetric(m: &[f64], n: usize) -> Result<Vec<f64>> {
    if is_diagonal(m, n) {
        let mut inv = vec![0.0; n * n];
        for i in 0..n {
            inv[i * n + i] = 1.0 / m[i * n + i];
        }
        return Ok(inv);
    }
    let gm = DMatrix::from_row_slice(n, n, m);
    let inv = gm
        .try_inverse()
        .ok_or(Error::DegenerateMetric(0.0))?;
    // symmetrize against roundoff
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = 0.5 * (inv[(i, j)] + inv[(j, i)]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_frame_is_minkowski() {
        let f = LorentzFrame::minkowski(4).unwrap();
        assert_eq!(f.dim(), 4);
        assert_eq!(f.metric()[0], -1.0);
        assert_eq!(f.metric()[5], 1.0);
        assert_eq!(f.sqrt_abs_det(), 1.0);
        assert_eq!(f.future_axis(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn riemannian_metric_rejected() {
        let m = vec![
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ];
        match LorentzFrame::new(4, Some(m), None) {
            Err(Error::WrongSignature { neg: 0, pos: 4 }) => {}
            other => panic!("expected WrongSignature, got {other:?}"),
        }
    }

    #[test]
    fn scaled_time_axis_stores_sqrt_det() {
        let m = vec![
            -4.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ];
        let f = LorentzFrame::new(4, Some(m), None).unwrap();
        assert!((f.sqrt_abs_det() - 2.0).abs() < 1e-15);
        // basis is exactly orthonormal: e_0 = (1/2, 0, 0, 0)
        assert!((f.dot(&f.ortho_basis()[0], &f.ortho_basis()[0]) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_metric_rejected() {
        let m = vec![
            -1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 0.0,
        ];
        assert!(matches!(
            LorentzFrame::new(4, Some(m), None),
            Err(Error::DegenerateMetric(_))
        ));
    }

    #[test]
    fn spacelike_future_axis_rejected() {
        let r = LorentzFrame::new(4, None, Some(vec![0.0, 1.0, 0.0, 0.0]));
        assert!(matches!(r, Err(Error::NonTimelikeFutureAxis(_))));
    }

    #[test]
    fn classify_examples() {
        let f = LorentzFrame::minkowski(4).unwrap();
        let c = classify_vector(&f, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(c.kind, CausalKind::Timelike);
        assert_eq!(c.time_orientation, TimeOrientation::Future);

        let c = classify_vector(&f, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(c.kind, CausalKind::Null);
        assert_eq!(c.time_orientation, TimeOrientation::Future);

        let c = classify_vector(&f, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(c.kind, CausalKind::Spacelike);
        assert_eq!(c.time_orientation, TimeOrientation::NotApplicable);

        let c = classify_vector(&f, &[0.0; 4]).unwrap();
        assert_eq!(c.kind, CausalKind::Zero);
    }

    #[test]
    fn classification_flips_under_negation() {
        let f = LorentzFrame::minkowski(4).unwrap();
        let c = classify_vector(&f, &[-2.0, 0.0, 1.0, 0.0]).unwrap();
        assert_eq!(c.kind, CausalKind::Timelike);
        assert_eq!(c.time_orientation, TimeOrientation::Past);
    }

    #[test]
    fn boosted_metric_basis_is_orthonormal() {
        // g = L^T diag(-1,1,1,1) L for a boost L: still Lorentzian
        let phi: f64 = 0.7;
        let (ch, sh) = (phi.cosh(), phi.sinh());
        let l = [
            [ch, sh, 0.0, 0.0],
            [sh, ch, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        let eta = [-1.0, 1.0, 1.0, 1.0];
        let mut g = vec![0.0; 16];
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for k in 0..4 {
                    s += l[k][i] * eta[k] * l[k][j];
                }
                g[i * 4 + j] = s;
            }
        }
        let f = LorentzFrame::new(4, Some(g), None).unwrap();
        let b = f.ortho_basis();
        for a in 0..4 {
            for c in 0..4 {
                let want = if a != c {
                    0.0
                } else if a == 0 {
                    -1.0
                } else {
                    1.0
                };
                assert!(
                    (f.dot(&b[a], &b[c]) - want).abs() < 1e-12,
                    "basis not orthonormal at ({a},{c})"
                );
            }
        }
    }
}
