//! Dense covariant tensors and their metric algebra.
//!
//! A [`Tensor`] is a rank-m array of N^m real components over a shared
//! [`Frame`], stored row-major with every slot covariant. Mixed-variance
//! values appear only transiently, as the raw output of [`Tensor::raise`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::{Frame, MAX_RANK};

/// Dense rank-m covariant tensor over a Lorentzian frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    frame: Frame,
    rank: usize,
    components: Vec<f64>,
}

/// Walks all rank-length multi-indices over 0..dim in row-major order.
pub(crate) fn for_each_index(dim: usize, rank: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; rank];
    if rank == 0 {
        f(&idx);
        return;
    }
    loop {
        f(&idx);
        let mut k = rank;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < dim {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Sign of a permutation given as an index list (0 for repeats).
pub(crate) fn permutation_sign(idx: &[usize]) -> i32 {
    let mut sign = 1i32;
    for i in 0..idx.len() {
        for j in (i + 1)..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Plain row-major matrix product: a is ra x k, b is k x cb.
pub(crate) fn matmul(a: &[f64], ra: usize, k: usize, b: &[f64], cb: usize) -> Vec<f64> {
    let mut out = vec![0.0; ra * cb];
    for i in 0..ra {
        for p in 0..k {
            let av = a[i * k + p];
            if av == 0.0 {
                continue;
            }
            let brow = &b[p * cb..(p + 1) * cb];
            let orow = &mut out[i * cb..(i + 1) * cb];
            for j in 0..cb {
                orow[j] += av * brow[j];
            }
        }
    }
    out
}

impl Tensor {
    /// Wraps a component array of length dim^rank.
    pub fn new(frame: &Frame, rank: usize, components: Vec<f64>) -> Result<Tensor> {
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank, MAX_RANK));
        }
        let want = frame.dim().pow(rank as u32);
        if components.len() != want {
            return Err(Error::ComponentLength {
                got: components.len(),
                dim: frame.dim(),
                rank,
                want,
            });
        }
        Ok(Tensor {
            frame: Arc::clone(frame),
            rank,
            components,
        })
    }

    pub fn zeros(frame: &Frame, rank: usize) -> Result<Tensor> {
        let len = frame.dim().pow(rank as u32);
        Tensor::new(frame, rank, vec![0.0; len])
    }

    pub fn scalar(frame: &Frame, value: f64) -> Tensor {
        Tensor {
            frame: Arc::clone(frame),
            rank: 0,
            components: vec![value],
        }
    }

    pub fn from_fn(frame: &Frame, rank: usize, mut f: impl FnMut(&[usize]) -> f64) -> Result<Tensor> {
        let mut t = Tensor::zeros(frame, rank)?;
        let dim = frame.dim();
        let mut off = 0;
        for_each_index(dim, rank, |idx| {
            t.components[off] = f(idx);
            off += 1;
        });
        Ok(t)
    }

    /// Covariant 1-form from raw components.
    pub fn one_form(frame: &Frame, components: &[f64]) -> Result<Tensor> {
        Tensor::new(frame, 1, components.to_vec())
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn into_components(self) -> Vec<f64> {
        self.components
    }

    fn offset(&self, idx: &[usize]) -> usize {
        let n = self.dim();
        idx.iter().fold(0, |acc, &i| acc * n + i)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.rank);
        self.components[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let off = self.offset(idx);
        self.components[off] = value;
    }

    /// Largest absolute component.
    pub fn sup_norm(&self) -> f64 {
        self.components.iter().fold(0.0f64, |a, x| a.max(x.abs()))
    }

    pub fn is_zero(&self, tol_abs: f64) -> bool {
        self.sup_norm() <= tol_abs
    }

    pub fn scale(&self, s: f64) -> Tensor {
        Tensor {
            frame: Arc::clone(&self.frame),
            rank: self.rank,
            components: self.components.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            frame: Arc::clone(&self.frame),
            rank: self.rank,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            frame: Arc::clone(&self.frame),
            rank: self.rank,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check_same_shape(&self, other: &Tensor) -> Result<()> {
        if **self.frame() != **other.frame() {
            return Err(Error::FrameMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    /// Tensor product, slots of `self` first.
    pub fn tensor_product(&self, other: &Tensor) -> Result<Tensor> {
        if **self.frame() != **other.frame() {
            return Err(Error::FrameMismatch);
        }
        if self.rank + other.rank > MAX_RANK {
            return Err(Error::RankTooLarge(self.rank + other.rank, MAX_RANK));
        }
        let la = self.components.len();
        let lb = other.components.len();
        let mut out = vec![0.0; la * lb];
        for (i, &a) in self.components.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let row = &mut out[i * lb..(i + 1) * lb];
            for (j, &b) in other.components.iter().enumerate() {
                row[j] = a * b;
            }
        }
        Tensor::new(&self.frame, self.rank + other.rank, out)
    }

    /// Reorders slots: slot k of `self` becomes slot `dest[k]` of the result.
    pub fn permute(&self, dest: &[usize]) -> Result<Tensor> {
        if dest.len() != self.rank {
            return Err(Error::BadStructure(format!(
                "permutation length {} != rank {}",
                dest.len(),
                self.rank
            )));
        }
        let mut seen = vec![false; self.rank];
        for &d in dest {
            if d >= self.rank || seen[d] {
                return Err(Error::BadStructure("not a permutation".into()));
            }
            seen[d] = true;
        }
        let n = self.dim();
        // stride of destination slot dest[k]
        let mut strides = vec![0usize; self.rank];
        for k in 0..self.rank {
            strides[k] = n.pow((self.rank - 1 - dest[k]) as u32);
        }
        let mut out = vec![0.0; self.components.len()];
        let mut pos = 0usize;
        for_each_index(n, self.rank, |idx| {
            let mut off = 0usize;
            for (k, &i) in idx.iter().enumerate() {
                off += i * strides[k];
            }
            out[off] = self.components[pos];
            pos += 1;
        });
        Tensor::new(&self.frame, self.rank, out)
    }

    /// Plain contraction of `slot` with a contravariant vector (no metric).
    pub fn contract_vector(&self, slot: usize, v: &[f64]) -> Result<Tensor> {
        if slot >= self.rank {
            return Err(Error::SlotOutOfRange {
                slot,
                rank: self.rank,
            });
        }
        if v.len() != self.dim() {
            return Err(Error::VectorLength {
                got: v.len(),
                want: self.dim(),
            });
        }
        let n = self.dim();
        let stride = n.pow((self.rank - 1 - slot) as u32);
        let outer = n.pow(slot as u32);
        let mut out = vec![0.0; self.components.len() / n];
        for o in 0..outer {
            let src = o * stride * n;
            let dst = o * stride;
            for (a, &va) in v.iter().enumerate() {
                if va == 0.0 {
                    continue;
                }
                let block = &self.components[src + a * stride..src + (a + 1) * stride];
                let orow = &mut out[dst..dst + stride];
                for i in 0..stride {
                    orow[i] += va * block[i];
                }
            }
        }
        Tensor::new(&self.frame, self.rank - 1, out)
    }

    /// Full evaluation T(v_1, …, v_m) on contravariant vectors.
    pub fn evaluate(&self, vectors: &[&[f64]]) -> Result<f64> {
        if vectors.len() != self.rank {
            return Err(Error::ArityMismatch {
                expected: self.rank,
                got: vectors.len(),
            });
        }
        let mut cur = self.clone();
        for v in vectors {
            cur = cur.contract_vector(0, v)?;
        }
        Ok(cur.components[0])
    }

    /// Raises `slot` with g^{-1} (the metric dual). Involutive with
    /// [`Tensor::lower`].
    pub fn raise(&self, slot: usize) -> Result<Tensor> {
        self.apply_metric(slot, self.frame.metric_inv().to_vec())
    }

    /// Lowers `slot` with g.
    pub fn lower(&self, slot: usize) -> Result<Tensor> {
        self.apply_metric(slot, self.frame.metric().to_vec())
    }

    fn apply_metric(&self, slot: usize, m: Vec<f64>) -> Result<Tensor> {
        if slot >= self.rank {
            return Err(Error::SlotOutOfRange {
                slot,
                rank: self.rank,
            });
        }
        let n = self.dim();
        let stride = n.pow((self.rank - 1 - slot) as u32);
        let outer = n.pow(slot as u32);
        let mut out = vec![0.0; self.components.len()];
        for o in 0..outer {
            let base = o * stride * n;
            for a in 0..n {
                let orow = base + a * stride;
                for b in 0..n {
                    let w = m[a * n + b];
                    if w == 0.0 {
                        continue;
                    }
                    let irow = base + b * stride;
                    for i in 0..stride {
                        out[orow + i] += w * self.components[irow + i];
                    }
                }
            }
        }
        Tensor::new(&self.frame, self.rank, out)
    }

    /// The product T1 ᵢ×ⱼ T2: metric contraction of slot `i` of `self`
    /// with slot `j` of `other`. Result slots are the remaining slots of
    /// `self` in order, then the remaining slots of `other`.
    pub fn contract_ij(&self, i: usize, other: &Tensor, j: usize) -> Result<Tensor> {
        if **self.frame() != **other.frame() {
            return Err(Error::FrameMismatch);
        }
        if i >= self.rank {
            return Err(Error::SlotOutOfRange {
                slot: i,
                rank: self.rank,
            });
        }
        if j >= other.rank {
            return Err(Error::SlotOutOfRange {
                slot: j,
                rank: other.rank,
            });
        }
        let n = self.dim();
        // move slot i last, slot j first
        let dest_a: Vec<usize> = (0..self.rank)
            .map(|k| {
                if k == i {
                    self.rank - 1
                } else if k < i {
                    k
                } else {
                    k - 1
                }
            })
            .collect();
        let dest_b: Vec<usize> = (0..other.rank)
            .map(|k| {
                if k == j {
                    0
                } else if k < j {
                    k + 1
                } else {
                    k
                }
            })
            .collect();
        let a = self.permute(&dest_a)?;
        let b = other.permute(&dest_b)?;
        let ra = a.components.len() / n;
        let cb = b.components.len() / n;
        let ag = matmul(&a.components, ra, n, self.frame.metric_inv(), n);
        let out = matmul(&ag, ra, n, &b.components, cb);
        Tensor::new(&self.frame, self.rank + other.rank - 2, out)
    }

    /// Complete contraction g(B1, B2) of two equal-rank tensors, every slot
    /// paired in order through g^{-1}.
    pub fn inner_full(&self, other: &Tensor) -> Result<f64> {
        self.check_same_shape(other)?;
        let mut raised = self.clone();
        for s in 0..self.rank {
            raised = raised.raise(s)?;
        }
        Ok(raised
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Whether swapping slots `i`, `j` negates the tensor within
    /// `tol_abs` (absolute).
    pub fn negates_under_swap(&self, i: usize, j: usize, tol_abs: f64) -> bool {
        let n = self.dim();
        let mut ok = true;
        let mut swapped = vec![0usize; self.rank];
        for_each_index(n, self.rank, |idx| {
            if !ok || idx[i] > idx[j] {
                return;
            }
            swapped.copy_from_slice(idx);
            swapped.swap(i, j);
            let a = self.components[self.offset(idx)];
            let b = self.components[self.offset(&swapped)];
            if (a + b).abs() > tol_abs {
                ok = false;
            }
        });
        ok
    }

    /// Whether swapping slots `i`, `j` leaves the tensor unchanged within
    /// `tol_abs`.
    pub fn symmetric_under_swap(&self, i: usize, j: usize, tol_abs: f64) -> bool {
        let n = self.dim();
        let mut ok = true;
        let mut swapped = vec![0usize; self.rank];
        for_each_index(n, self.rank, |idx| {
            if !ok || idx[i] >= idx[j] {
                return;
            }
            swapped.copy_from_slice(idx);
            swapped.swap(i, j);
            let a = self.components[self.offset(idx)];
            let b = self.components[self.offset(&swapped)];
            if (a - b).abs() > tol_abs {
                ok = false;
            }
        });
        ok
    }

    pub fn is_symmetric2(&self, tol_rel: f64) -> bool {
        self.rank == 2 && self.symmetric_under_swap(0, 1, tol_rel * self.sup_norm().max(1e-300))
    }

    /// Total antisymmetry over a contiguous or scattered slot set.
    pub fn is_antisymmetric_on(&self, slots: &[usize], tol_abs: f64) -> bool {
        for (a, &i) in slots.iter().enumerate() {
            for &j in &slots[a + 1..] {
                if !self.negates_under_swap(i, j, tol_abs) {
                    return false;
                }
            }
        }
        true
    }

    /// Antisymmetrizes over the given slots (average with signs).
    pub fn antisymmetrize(&self, slots: &[usize]) -> Result<Tensor> {
        let p = slots.len();
        let mut perm: Vec<usize> = (0..p).collect();
        let mut out = Tensor::zeros(&self.frame, self.rank)?;
        let mut count = 0usize;
        heap_permutations(&mut perm, &mut |sigma| {
            let sign = permutation_sign(sigma) as f64;
            let mut dest: Vec<usize> = (0..self.rank).collect();
            for (k, &s) in slots.iter().enumerate() {
                dest[s] = slots[sigma[k]];
            }
            let t = self.permute(&dest).expect("valid permutation");
            out = out.add(&t.scale(sign)).expect("same shape");
            count += 1;
        });
        Ok(out.scale(1.0 / count as f64))
    }

    /// Max-norm of the difference, as a fraction of the larger sup norm.
    pub fn rel_diff(&self, other: &Tensor) -> f64 {
        let scale = self.sup_norm().max(other.sup_norm());
        if scale == 0.0 {
            return 0.0;
        }
        self.components
            .iter()
            .zip(&other.components)
            .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()))
            / scale
    }
}

fn heap_permutations(items: &mut [usize], f: &mut impl FnMut(&[usize])) {
    let n = items.len();
    if n == 0 {
        f(items);
        return;
    }
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// The metric as a rank-2 tensor.
pub fn metric_tensor(frame: &Frame) -> Tensor {
    Tensor::new(frame, 2, frame.metric().to_vec()).expect("metric shape is valid")
}

/// The canonical volume form: totally antisymmetric rank-N tensor with
/// η_{01…N−1} = orientation · √|det g|.
pub fn volume_form(frame: &Frame) -> Tensor {
    let n = frame.dim();
    let top = frame.orientation() as f64 * frame.sqrt_abs_det();
    Tensor::from_fn(frame, n, |idx| permutation_sign(idx) as f64 * top)
        .expect("rank N <= MAX_RANK for N <= 6")
}

/// Wedge product of covariant 1-forms, normalized so that
/// (a ∧ b)_{ij} = a_i b_j − a_j b_i.
pub fn wedge_1forms(frame: &Frame, forms: &[Vec<f64>]) -> Result<Tensor> {
    let p = forms.len();
    if p == 0 {
        return Ok(Tensor::scalar(frame, 1.0));
    }
    for f in forms {
        if f.len() != frame.dim() {
            return Err(Error::VectorLength {
                got: f.len(),
                want: frame.dim(),
            });
        }
    }
    let mut out = Tensor::zeros(frame, p)?;
    let mut perm: Vec<usize> = (0..p).collect();
    let n = frame.dim();
    heap_permutations(&mut perm, &mut |sigma| {
        let sign = permutation_sign(sigma) as f64;
        let mut pos = 0usize;
        for_each_index(n, p, |idx| {
            let mut v = sign;
            for (k, &s) in sigma.iter().enumerate() {
                v *= forms[s][idx[k]];
            }
            out.components[pos] += v;
            pos += 1;
        });
    });
    Ok(out)
}

/// Shorthand used by classifiers: the mixed trace g^{ab} T_{ab}.
pub fn trace2(t: &Tensor) -> Result<f64> {
    if t.rank() != 2 {
        return Err(Error::RankMismatch(t.rank(), 2));
    }
    let n = t.dim();
    let ginv = t.frame().metric_inv();
    let c = t.components();
    let mut s = 0.0;
    for a in 0..n {
        for b in 0..n {
            s += ginv[a * n + b] * c[b * n + a];
        }
    }
    Ok(s)
}

/// Checks `x ≈ c·g` and returns `c = tr x / N` on success.
pub fn proportional_to_metric(x: &Tensor, tol_rel: f64) -> Result<Option<f64>> {
    if x.rank() != 2 {
        return Err(Error::RankMismatch(x.rank(), 2));
    }
    let c = trace2(x)? / x.dim() as f64;
    let g = metric_tensor(x.frame());
    let resid = x.sub(&g.scale(c))?.sup_norm();
    if resid <= tol_rel * x.sup_norm().max(g.sup_norm() * c.abs()).max(1e-300) {
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

/// Helper: builds the outer product of a list of covariant 1-forms.
pub fn outer_1forms(frame: &Frame, forms: &[Vec<f64>]) -> Result<Tensor> {
    let mut t = Tensor::scalar(frame, 1.0);
    for f in forms {
        let o = Tensor::one_form(frame, f)?;
        t = t.tensor_product(&o)?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::LorentzFrame;

    fn mink4() -> Frame {
        LorentzFrame::minkowski(4).unwrap()
    }

    fn dx(frame: &Frame, i: usize) -> Tensor {
        let mut c = vec![0.0; frame.dim()];
        c[i] = 1.0;
        Tensor::one_form(frame, &c).unwrap()
    }

    fn f01(frame: &Frame) -> Tensor {
        wedge_1forms(
            frame,
            &[dx(frame, 0).into_components(), dx(frame, 1).into_components()],
        )
        .unwrap()
    }

    #[test]
    fn raise_dx0_flips_sign() {
        let f = mink4();
        let t = dx(&f, 0).raise(0).unwrap();
        assert_eq!(t.components(), &[-1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn raise_then_lower_is_identity() {
        let f = mink4();
        let t = Tensor::from_fn(&f, 3, |idx| (idx[0] * 7 + idx[1] * 3 + idx[2]) as f64 * 0.25
            - 1.0)
        .unwrap();
        for s in 0..3 {
            let round = t.raise(s).unwrap().lower(s).unwrap();
            assert!(t.rel_diff(&round) < 1e-15);
        }
    }

    #[test]
    fn mixed_two_form_components() {
        let f = mink4();
        let raised = f01(&f).raise(0).unwrap();
        assert_eq!(raised.get(&[0, 1]), -1.0);
        assert_eq!(raised.get(&[1, 0]), -1.0);
    }

    #[test]
    fn metric_contraction_is_identity() {
        let f = mink4();
        let g = metric_tensor(&f);
        let t = Tensor::from_fn(&f, 2, |idx| (idx[0] + 2 * idx[1]) as f64 - 2.5).unwrap();
        // g 0x0 T has slots (g's slot 1, T's slot 1) = T itself
        let r = g.contract_ij(0, &t, 0).unwrap();
        assert!(r.rel_diff(&t) < 1e-15);
    }

    #[test]
    fn null_contraction_vanishes() {
        let f = mink4();
        let ell = Tensor::one_form(&f, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        let ll = ell.tensor_product(&ell).unwrap();
        let r = ll.contract_ij(0, &ll, 0).unwrap();
        assert!(r.sup_norm() < 1e-15);
    }

    #[test]
    fn two_form_self_contraction() {
        let f = mink4();
        let ff = f01(&f);
        let r = ff.contract_ij(0, &ff, 0).unwrap();
        let mut want = Tensor::zeros(&f, 2).unwrap();
        want.set(&[0, 0], 1.0);
        want.set(&[1, 1], -1.0);
        assert!(r.rel_diff(&want) < 1e-15);
    }

    #[test]
    fn inner_products() {
        let f = mink4();
        assert_eq!(dx(&f, 0).inner_full(&dx(&f, 0)).unwrap(), -1.0);
        let g = metric_tensor(&f);
        assert_eq!(g.inner_full(&g).unwrap(), 4.0);
        let ff = f01(&f);
        assert_eq!(ff.inner_full(&ff).unwrap(), -2.0);
    }

    #[test]
    fn volume_form_components() {
        let f = mink4();
        let eta = volume_form(&f);
        assert_eq!(eta.get(&[0, 1, 2, 3]), 1.0);
        assert_eq!(eta.get(&[1, 0, 2, 3]), -1.0);
        assert_eq!(eta.get(&[0, 0, 2, 3]), 0.0);

        let scaled = LorentzFrame::new(
            4,
            Some(vec![
                -4.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ]),
            None,
        )
        .unwrap();
        assert_eq!(volume_form(&scaled).get(&[0, 1, 2, 3]), 2.0);
    }

    #[test]
    fn volume_form_norm_is_minus_factorial() {
        for n in 2..=5 {
            let f = LorentzFrame::minkowski(n).unwrap();
            let eta = volume_form(&f);
            let want = -((1..=n as u64).product::<u64>() as f64);
            assert!((eta.inner_full(&eta).unwrap() - want).abs() < 1e-9);
        }
    }

    #[test]
    fn antisymmetrize_projects() {
        let f = mink4();
        let t = Tensor::from_fn(&f, 2, |idx| (3 * idx[0] + idx[1]) as f64).unwrap();
        let a = t.antisymmetrize(&[0, 1]).unwrap();
        assert!(a.negates_under_swap(0, 1, 1e-14));
        // antisymmetrization is idempotent
        assert!(a.antisymmetrize(&[0, 1]).unwrap().rel_diff(&a) < 1e-15);
    }

    #[test]
    fn permute_round_trip() {
        let f = mink4();
        let t = Tensor::from_fn(&f, 3, |idx| (idx[0] * 16 + idx[1] * 4 + idx[2]) as f64).unwrap();
        let dest = [2usize, 0, 1];
        let p = t.permute(&dest).unwrap();
        // invert
        let mut inv = [0usize; 3];
        for (k, &d) in dest.iter().enumerate() {
            inv[d] = k;
        }
        assert!(p.permute(&inv).unwrap().rel_diff(&t) < 1e-15);
        assert_eq!(p.get(&[1, 2, 0]), t.get(&[0, 1, 2]) , "slot k moves to dest[k]");
    }

    #[test]
    fn evaluate_matches_components() {
        let f = mink4();
        let ff = f01(&f);
        let e0 = [1.0, 0.0, 0.0, 0.0];
        let e1 = [0.0, 1.0, 0.0, 0.0];
        assert_eq!(ff.evaluate(&[&e0, &e1]).unwrap(), 1.0);
        assert_eq!(ff.evaluate(&[&e1, &e0]).unwrap(), -1.0);
    }
}
