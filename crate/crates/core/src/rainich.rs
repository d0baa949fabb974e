//! Algebraic Rainich-type classification of symmetric rank-2 tensors.
//!
//! The tests here decide whether a tensor is algebraically the
//! energy-momentum tensor of a simple p-form square, a Maxwell field
//! (N = 4), a minimally coupled massless scalar field, a perfect fluid, or
//! dust, and recover the matter parameters. They are written in the
//! (−,+,…,+) convention throughout:
//!
//! * p-form squares: T² = g, with p read from tr(sT) = N − 2p for the DP⁺
//!   sign s;
//! * scalar field: T² ∝ g with tr T = β √(tr T²/N), β = N−2 for a timelike
//!   gradient and β = 2−N for a spacelike one;
//! * perfect fluid: T² = −2λT + (μ²−λ²)g with tr T = (N−2)μ − Nλ, where
//!   λ = (ρ−p)/2 and μ = (ρ+p)/2;
//! * dust: T² = (tr T)·T with tr T < 0.

use crate::cones::{check_dp2_exact, square_sym2, DpMethod, DpSign};
use crate::error::{Error, Result};
use crate::folded::superenergy;
use crate::frame::Frame;
use crate::tensor::{metric_tensor, outer_1forms, proportional_to_metric, trace2, Tensor};
use crate::tol;

/// Causal character of a scalar-field gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarCharacter {
    Timelike,
    Spacelike,
    Null,
}

/// Tagged classification result with recovered parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum EmKind {
    /// T = s·T{Ω_p} for a simple p-form; `sign` is s.
    PForm { sign: i8, p: usize },
    /// Maxwell energy-momentum tensor in N = 4; `scale` is c in T² = c·g.
    Maxwell { scale: f64 },
    /// Massless scalar field; β and the gradient character.
    Scalar { beta: f64, character: ScalarCharacter },
    /// Perfect fluid with λ = (ρ−p)/2, μ = (ρ+p)/2.
    PerfectFluid { lambda: f64, mu: f64 },
    /// Dust with energy density ρ = −tr T.
    Dust { rho: f64 },
    Unknown,
}

/// Classification plus the residuals of every identity that was checked.
#[derive(Debug, Clone)]
pub struct EmClassification {
    pub kind: EmKind,
    pub residuals: Vec<(String, f64)>,
}

/// Square-root-of-the-metric test: accepts iff T² = g, with the sign s
/// chosen so that sT ∈ DP⁺ and the form rank p recovered from
/// tr(sT) = N − 2p. Requires p in 1..N (integer to tolerance).
pub fn pform_test(t: &Tensor) -> Result<Option<(i8, usize)>> {
    let sq = square_sym2(t)?;
    let g = metric_tensor(t.frame());
    let resid = sq.sub(&g)?.sup_norm();
    if resid > tol::ALG * sq.sup_norm().max(g.sup_norm()) {
        return Ok(None);
    }
    let n = t.dim();
    let mut sign = 0i8;
    for s in [1i8, -1i8] {
        let v = check_dp2_exact(&t.scale(s as f64), DpSign::Plus)?;
        if v.member && v.method == DpMethod::ExactEigen {
            sign = s;
            break;
        }
    }
    if sign == 0 {
        return Ok(None);
    }
    let tr = sign as f64 * trace2(t)?;
    let p_real = (n as f64 - tr) / 2.0;
    let p = p_real.round();
    if (p_real - p).abs() > tol::ALG * n as f64 || p < 1.0 || p > (n - 1) as f64 {
        return Ok(None);
    }
    Ok(Some((sign, p as usize)))
}

/// Classical Rainich test in four dimensions: T is (up to sign and scale)
/// a Maxwell energy-momentum tensor iff T² ∝ g with a nonnegative factor
/// and tr T = 0. Returns the factor c.
pub fn is_maxwell4(t: &Tensor) -> Result<Option<f64>> {
    if t.dim() != 4 {
        return Err(Error::WrongDimension(t.dim()));
    }
    if !t.is_symmetric2(tol::ALG) {
        return Err(Error::NotSymmetric);
    }
    let sq = square_sym2(t)?;
    let c = match proportional_to_metric(&sq, tol::ALG)? {
        Some(c) => c,
        None => return Ok(None),
    };
    let scale = t.sup_norm().max(1e-300);
    if c < -tol::ALG * scale * scale {
        return Ok(None);
    }
    let tr = trace2(t)?;
    if tr.abs() > tol::ALG * scale {
        return Ok(None);
    }
    Ok(Some(c.max(0.0)))
}

/// Scalar-field test: T² ∝ g (nonnegative factor) with
/// tr T = β √(tr T²/N) for β = ±(N−2). The character is timelike for
/// β = N−2, spacelike for β = 2−N, null when tr T = 0 = tr T².
pub fn is_scalar_field(t: &Tensor) -> Result<Option<(f64, ScalarCharacter)>> {
    if !t.is_symmetric2(tol::ALG) {
        return Err(Error::NotSymmetric);
    }
    let sq = square_sym2(t)?;
    let c = match proportional_to_metric(&sq, tol::ALG)? {
        Some(c) => c,
        None => return Ok(None),
    };
    let scale = t.sup_norm().max(1e-300);
    if c < -tol::ALG * scale * scale {
        return Ok(None);
    }
    let n = t.dim() as f64;
    let tr = trace2(t)?;
    let tr_sq = trace2(&sq)?;
    if tr.abs() <= tol::ALG * scale && tr_sq.abs() <= tol::ALG * scale * scale {
        return Ok(Some((0.0, ScalarCharacter::Null)));
    }
    let root = (tr_sq / n).max(0.0).sqrt();
    for beta in [n - 2.0, 2.0 - n] {
        if (tr - beta * root).abs() <= tol::ALG * scale * n {
            let character = if beta > 0.0 {
                ScalarCharacter::Timelike
            } else {
                ScalarCharacter::Spacelike
            };
            return Ok(Some((beta, character)));
        }
    }
    Ok(None)
}

/// Perfect-fluid test: solves the trace equations for (λ, μ) and then
/// verifies the full tensor identity T² = −2λT + (μ²−λ²)g together with
/// tr T = (N−2)μ − Nλ. All root pairs with λ ≥ 0, μ > 0 and a passing
/// tensor residual are returned.
pub fn is_perfect_fluid(t: &Tensor) -> Result<Vec<(f64, f64)>> {
    if !t.is_symmetric2(tol::ALG) {
        return Err(Error::NotSymmetric);
    }
    let n = t.dim() as f64;
    let sq = square_sym2(t)?;
    let tr = trace2(t)?;
    let q = trace2(&sq)?;
    let scale = t.sup_norm().max(1e-300);

    // eliminate μ = (tr + Nλ)/(N−2):
    // 4N(N−1) λ² + 8(N−1) tr λ + (N tr² − (N−2)² q) = 0
    let a = 4.0 * n * (n - 1.0);
    let b = 8.0 * (n - 1.0) * tr;
    let c = n * tr * tr - (n - 2.0) * (n - 2.0) * q;
    let disc = b * b - 4.0 * a * c;
    if disc < -tol::ALG * scale * scale * a * a {
        return Ok(Vec::new());
    }
    let sd = disc.max(0.0).sqrt();
    let mut out: Vec<(f64, f64)> = Vec::new();
    let g = metric_tensor(t.frame());
    for lam in [(-b + sd) / (2.0 * a), (-b - sd) / (2.0 * a)] {
        let lam = if lam.abs() <= tol::ALG * scale { 0.0 } else { lam };
        if lam < 0.0 {
            continue;
        }
        let mu = (tr + n * lam) / (n - 2.0);
        if mu <= tol::ALG * scale {
            continue;
        }
        // full identity: T² + 2λT − (μ²−λ²) g = 0
        let lhs = sq
            .add(&t.scale(2.0 * lam))?
            .sub(&g.scale(mu * mu - lam * lam))?;
        if lhs.sup_norm() <= tol::ALG * sq.sup_norm().max(scale * scale).max(1.0)
            && !out
                .iter()
                .any(|&(l, m)| (l - lam).abs() < 1e-12 && (m - mu).abs() < 1e-12)
        {
            out.push((lam, mu));
        }
    }
    Ok(out)
}

/// Dust test: T² = (tr T)·T with tr T < 0; returns ρ = −tr T.
pub fn is_dust(t: &Tensor) -> Result<Option<f64>> {
    if !t.is_symmetric2(tol::ALG) {
        return Err(Error::NotSymmetric);
    }
    let sq = square_sym2(t)?;
    let tr = trace2(t)?;
    let scale = t.sup_norm().max(1e-300);
    if tr >= -tol::ALG * scale {
        return Ok(None);
    }
    let resid = sq.sub(&t.scale(tr))?.sup_norm();
    if resid > tol::ALG * sq.sup_norm().max(scale * scale) {
        return Ok(None);
    }
    Ok(Some(-tr))
}

/// Generator parameters for [`build_em`].
#[derive(Debug, Clone)]
pub enum EmModel {
    /// Maxwell tensor of an antisymmetric 2-form.
    Maxwell { field: Tensor },
    /// Scalar field with covariant gradient dφ.
    Scalar { dphi: Vec<f64> },
    /// Perfect fluid (ρ ≥ |p|) with covariant timelike velocity u.
    PerfectFluid { rho: f64, p: f64, u: Vec<f64> },
    /// Dust: the p = 0 fluid.
    Dust { rho: f64, u: Vec<f64> },
}

/// Emits the energy-momentum tensor of the requested matter model.
pub fn build_em(frame: &Frame, model: &EmModel) -> Result<Tensor> {
    match model {
        EmModel::Maxwell { field } => {
            if field.rank() != 2 || !field.negates_under_swap(0, 1, tol::ALG * field.sup_norm()) {
                return Err(Error::BadParams("Maxwell field must be a 2-form".into()));
            }
            Ok(superenergy(field)?.into_tensor())
        }
        EmModel::Scalar { dphi } => {
            let omega = Tensor::one_form(frame, dphi)?;
            if omega.sup_norm() == 0.0 {
                return Err(Error::BadParams("zero gradient".into()));
            }
            Ok(superenergy(&omega)?.into_tensor())
        }
        EmModel::PerfectFluid { rho, p, u } => {
            if *rho < p.abs() {
                return Err(Error::BadParams("fluid needs rho >= |p|".into()));
            }
            let uu = frame.inv_dot(u, u);
            if uu >= 0.0 {
                return Err(Error::BadParams("velocity must be timelike".into()));
            }
            let norm = (-uu).sqrt();
            let un: Vec<f64> = u.iter().map(|x| x / norm).collect();
            let uo = outer_1forms(frame, &[un.clone(), un])?;
            uo.scale(rho + p).add(&metric_tensor(frame).scale(*p))
        }
        EmModel::Dust { rho, u } => build_em(
            frame,
            &EmModel::PerfectFluid {
                rho: *rho,
                p: 0.0,
                u: u.clone(),
            },
        ),
    }
}

/// Runs every classifier and reports the most specific accepted kind,
/// in the order dust, Maxwell (N = 4), scalar, perfect fluid, p-form.
/// Residual entries record the deviation of each checked identity.
pub fn classify_em(t: &Tensor) -> Result<EmClassification> {
    if !t.is_symmetric2(tol::ALG) {
        return Err(Error::NotSymmetric);
    }
    let sq = square_sym2(t)?;
    let g = metric_tensor(t.frame());
    let tr = trace2(t)?;
    let scale = t.sup_norm().max(1e-300);
    let mut residuals: Vec<(String, f64)> = Vec::new();

    let dust = is_dust(t)?;
    residuals.push((
        "dust: |T^2 - (tr T) T|".into(),
        sq.sub(&t.scale(tr))?.sup_norm() / scale.powi(2),
    ));

    let maxwell = if t.dim() == 4 { is_maxwell4(t)? } else { None };
    let c_guess = trace2(&sq)? / t.dim() as f64;
    residuals.push((
        "square: |T^2 - c g|".into(),
        sq.sub(&g.scale(c_guess))?.sup_norm() / scale.powi(2),
    ));

    let scalar = is_scalar_field(t)?;
    let fluids = is_perfect_fluid(t)?;
    if let Some(&(lam, mu)) = fluids.first() {
        let lhs = sq
            .add(&t.scale(2.0 * lam))?
            .sub(&g.scale(mu * mu - lam * lam))?;
        residuals.push((
            "fluid: tensor identity".into(),
            lhs.sup_norm() / scale.powi(2),
        ));
    }
    let pform = pform_test(t)?;
    residuals.push((
        "pform: |T^2 - g|".into(),
        sq.sub(&g)?.sup_norm() / sq.sup_norm().max(1.0),
    ));

    let kind = if let Some(rho) = dust {
        EmKind::Dust { rho }
    } else if let Some(c) = maxwell {
        EmKind::Maxwell { scale: c }
    } else if let Some((beta, character)) = scalar {
        EmKind::Scalar { beta, character }
    } else if let Some(&(lambda, mu)) = fluids.first() {
        EmKind::PerfectFluid { lambda, mu }
    } else if let Some((sign, p)) = pform {
        EmKind::PForm { sign, p }
    } else {
        EmKind::Unknown
    };

    Ok(EmClassification { kind, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::LorentzFrame;
    use crate::tensor::wedge_1forms;

    fn mink4() -> Frame {
        LorentzFrame::minkowski(4).unwrap()
    }

    fn diag2(frame: &Frame, d: &[f64]) -> Tensor {
        Tensor::from_fn(frame, 2, |idx| if idx[0] == idx[1] { d[idx[0]] } else { 0.0 }).unwrap()
    }

    #[test]
    fn pform_examples() {
        let f = mink4();
        // normalized Maxwell square: 2·T{dx0∧dx1}
        let t = diag2(&f, &[1.0, -1.0, 1.0, 1.0]);
        assert_eq!(pform_test(&t).unwrap(), Some((1, 2)));

        let t = diag2(&f, &[1.0, 1.0, 1.0, 1.0]); // 2·T{dx0}
        assert_eq!(pform_test(&t).unwrap(), Some((1, 1)));

        let g2 = metric_tensor(&f).scale(2.0);
        assert_eq!(pform_test(&g2).unwrap(), None);
    }

    #[test]
    fn maxwell_examples() {
        let f = mink4();
        let t = diag2(&f, &[0.5, -0.5, 0.5, 0.5]);
        let c = is_maxwell4(&t).unwrap().unwrap();
        assert!((c - 0.25).abs() < 1e-12);

        assert!(is_maxwell4(&metric_tensor(&f)).unwrap().is_none());
        assert!(is_maxwell4(&diag2(&f, &[1.0, 2.0, 3.0, 4.0]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn scalar_examples() {
        let f = mink4();
        let (beta, ch) = is_scalar_field(&diag2(&f, &[0.5, 0.5, 0.5, 0.5]))
            .unwrap()
            .unwrap();
        assert!((beta - 2.0).abs() < 1e-12);
        assert_eq!(ch, ScalarCharacter::Timelike);

        let (beta, ch) = is_scalar_field(&diag2(&f, &[0.5, 0.5, -0.5, -0.5]))
            .unwrap()
            .unwrap();
        assert!((beta + 2.0).abs() < 1e-12);
        assert_eq!(ch, ScalarCharacter::Spacelike);

        let ell = vec![1.0, 1.0, 0.0, 0.0];
        let ll = outer_1forms(&f, &[ell.clone(), ell]).unwrap();
        let (_, ch) = is_scalar_field(&ll).unwrap().unwrap();
        assert_eq!(ch, ScalarCharacter::Null);
    }

    #[test]
    fn fluid_examples() {
        let f = mink4();
        let got = is_perfect_fluid(&diag2(&f, &[3.0, 1.0, 1.0, 1.0])).unwrap();
        assert_eq!(got.len(), 1);
        assert!((got[0].0 - 1.0).abs() < 1e-12 && (got[0].1 - 2.0).abs() < 1e-12);

        // dust sits on the λ = μ boundary
        let got = is_perfect_fluid(&diag2(&f, &[2.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(got.len(), 1);
        assert!((got[0].0 - 1.0).abs() < 1e-12 && (got[0].1 - 1.0).abs() < 1e-12);

        // p > ρ violates dominance: λ < 0
        assert!(is_perfect_fluid(&diag2(&f, &[1.0, 2.0, 2.0, 2.0]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn dust_examples() {
        let f = mink4();
        let rho = is_dust(&diag2(&f, &[2.0, 0.0, 0.0, 0.0])).unwrap().unwrap();
        assert!((rho - 2.0).abs() < 1e-12);
        assert!(is_dust(&diag2(&f, &[3.0, 1.0, 1.0, 1.0])).unwrap().is_none());
        assert!(is_dust(&diag2(&f, &[-2.0, 0.0, 0.0, 0.0]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn build_em_examples() {
        let f = mink4();
        let fld = wedge_1forms(&f, &[vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]]).unwrap();
        let t = build_em(&f, &EmModel::Maxwell { field: fld }).unwrap();
        assert!(t.rel_diff(&diag2(&f, &[0.5, -0.5, 0.5, 0.5])) < 1e-14);

        let u = vec![-1.0, 0.0, 0.0, 0.0]; // covariant e_0
        let t = build_em(
            &f,
            &EmModel::PerfectFluid {
                rho: 3.0,
                p: 1.0,
                u: u.clone(),
            },
        )
        .unwrap();
        assert!(t.rel_diff(&diag2(&f, &[3.0, 1.0, 1.0, 1.0])) < 1e-14);

        let t = build_em(
            &f,
            &EmModel::Scalar {
                dphi: vec![1.0, 0.0, 0.0, 0.0],
            },
        )
        .unwrap();
        assert!(t.rel_diff(&diag2(&f, &[0.5, 0.5, 0.5, 0.5])) < 1e-14);

        assert!(build_em(&f, &EmModel::PerfectFluid { rho: 1.0, p: 2.0, u }).is_err());
    }

    #[test]
    fn classify_precedence() {
        let f = mink4();
        let dust = classify_em(&diag2(&f, &[2.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(matches!(dust.kind, EmKind::Dust { .. }));

        let fluid = classify_em(&diag2(&f, &[3.0, 1.0, 1.0, 1.0])).unwrap();
        assert!(matches!(fluid.kind, EmKind::PerfectFluid { .. }));

        let maxwell = classify_em(&diag2(&f, &[0.5, -0.5, 0.5, 0.5])).unwrap();
        assert!(matches!(maxwell.kind, EmKind::Maxwell { .. }));

        let unknown = classify_em(&diag2(&f, &[1.0, 2.0, 3.0, 4.0])).unwrap();
        assert!(matches!(unknown.kind, EmKind::Unknown));
    }
}
