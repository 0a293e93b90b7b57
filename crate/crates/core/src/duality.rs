//! Compact/non-compact duality 𝔤 ↦ 𝔤₀ ⊕ i𝔤₁ for the homogeneous model.
//!
//! The dual basis is θ(ξ_i) = −ξ_i, θ(e_s) = i e_s, θ(h_r) = h_r, so θ is the identity in
//! coordinates and the spinor modules are identified coefficientwise.

use num_traits::Zero;

use crate::error::Result;
use crate::exterior::Endo;
use crate::homogeneous::{h_killing_solutions, part, HomogeneousModel, NomizuMap, Part, G, M};
use crate::sasaki::{cyclic, IdentityReport};
use crate::scalar::{int, ExactScalar, Rational};
use crate::spin::{joint_kernel, same_span, Spinor};

const N: usize = 2;

/// θ-sign of a basis element of 𝔤: −1 on 𝔨, +1 elsewhere.
fn theta_sign(a: usize) -> i64 {
    if part(a) == Part::Vertical {
        -1
    } else {
        1
    }
}

/// A model together with its dual.
#[derive(Clone, Debug)]
pub struct DualModel {
    pub source: HomogeneousModel,
    pub dual: HomogeneousModel,
}

/// Structure constants of 𝔤′ in the θ-basis; parameters become (α, −δ).
pub fn dualize(model: &HomogeneousModel) -> Result<HomogeneousModel> {
    let src = model.brackets();
    let mut out = vec![vec![vec![ExactScalar::zero(); G]; G]; G];
    for a in 0..G {
        for b in 0..G {
            // [iy₁, iy₂] = −[y₁, y₂]; the remaining brackets keep their coefficients in the (x, iy) basis
            let flip = if part(a) == Part::Horizontal && part(b) == Part::Horizontal { -1 } else { 1 };
            for c in 0..G {
                let s = flip * theta_sign(a) * theta_sign(b) * theta_sign(c);
                let v = &src[a][b][c];
                out[a][b][c] = if s < 0 { -v } else { v.clone() };
            }
        }
    }
    HomogeneousModel::from_brackets(&model.alpha, &(-&model.delta), out)
}

impl DualModel {
    pub fn new(source: HomogeneousModel) -> Result<Self> {
        let dual = dualize(&source)?;
        Ok(DualModel { source, dual })
    }

    pub fn build(alpha: &Rational, delta: &Rational) -> Result<Self> {
        Self::new(HomogeneousModel::build_s7(alpha, delta)?)
    }
}

/// Is A block-diagonal (𝔰𝔬(𝔪)₀) or block-off-diagonal (𝔰𝔬(𝔪)₁) for 𝔪 = 𝔨 ⊕ 𝔪₁?
pub fn graded_part(a: &Endo) -> Option<u8> {
    let mut even = true;
    let mut odd = true;
    for r in 0..M {
        for c in 0..M {
            if a.get(r, c).is_zero() {
                continue;
            }
            if (r < 3) == (c < 3) {
                odd = false;
            } else {
                even = false;
            }
        }
    }
    match (even, odd) {
        (true, _) => Some(0),
        (false, true) => Some(1),
        _ => None,
    }
}

/// Conjugation from the (x, iy) basis of 𝔪′ to the θ-basis.
fn to_theta(e: &Endo) -> Endo {
    let mut out = Endo::zero(M);
    for r in 0..M {
        for c in 0..M {
            let s = theta_sign(r) * theta_sign(c);
            let v = e.get(r, c);
            out.set(r, c, if s < 0 { -v } else { v.clone() });
        }
    }
    out
}

/// τ(A + iB) on 𝔪′: τ(A)x = Ax, τ(A)(iy) = iAy, τ(iB)x = iBx, τ(iB)(iy) = By; in θ-coordinates.
pub fn tau(a0: &Endo, b1: &Endo) -> Endo {
    to_theta(&a0.add(b1))
}

/// [[A + iB, C + iD]] = ([A,C] + [B,D]) + i([A,D] + [B,C]).
fn twisted_bracket(x: &(Endo, Endo), y: &(Endo, Endo)) -> (Endo, Endo) {
    let even = x.0.commutator(&y.0).add(&x.1.commutator(&y.1));
    let odd = x.0.commutator(&y.1).add(&x.1.commutator(&y.0));
    (even, odd)
}

fn elementary_skew(p: usize, q: usize) -> Endo {
    let mut e = Endo::zero(M);
    e.set(q, p, ExactScalar::one());
    e.set(p, q, -ExactScalar::one());
    e
}

/// τ is skew-valued and bracket-preserving on the elementary basis.
pub fn tau_isomorphism_check() -> IdentityReport {
    let mut rep = IdentityReport::default();
    let zero = Endo::zero(M);
    let mut span: Vec<(Endo, Endo)> = Vec::new();
    for p in 0..M {
        for q in (p + 1)..M {
            let e = elementary_skew(p, q);
            if (p < 3) == (q < 3) {
                span.push((e, zero.clone()));
            } else {
                span.push((zero.clone(), e));
            }
        }
    }
    for x in &span {
        rep.record(tau(&x.0, &x.1).is_skew(), || "τ leaves 𝔰𝔬(𝔪′)".into());
        for y in &span {
            let br = twisted_bracket(x, y);
            let lhs = tau(&br.0, &br.1);
            let rhs = tau(&x.0, &x.1).commutator(&tau(&y.0, &y.1));
            rep.record(lhs == rhs, || "τ does not preserve brackets".into());
        }
    }
    rep
}

/// proj∘ad and Λ^g are even along 𝔨 and odd along 𝔪₁.
pub fn verify_graded_parts(model: &HomogeneousModel) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let lc = model.nomizu_lc();
    for a in 0..M {
        let want = if a < 3 { 0 } else { 1 };
        rep.record(graded_part(&model.ad_m(a)) == Some(want), || format!("proj∘ad(b_{}) has the wrong parity", a + 1));
        rep.record(graded_part(&lc[a]) == Some(want), || format!("Λ^g(b_{}) has the wrong parity", a + 1));
    }
    rep
}

/// Levi-Civita map of the dual predicted from the source through τ, in θ-coordinates.
pub fn predicted_dual_lc(model: &HomogeneousModel) -> NomizuMap {
    let lc = model.nomizu_lc();
    let zero = Endo::zero(M);
    (0..M)
        .map(|a| {
            let in_xiy = if a < 3 {
                // Λ^{g′}(x)x₂ = τ(Λ^g(x))x₂, Λ^{g′}(x)(iy) = −τ(Λ^g(x))(iy) + 2i[x,y]
                let t = tau_xiy(&lc[a], &zero);
                let ad = model.ad_m(a);
                let mut e = Endo::zero(M);
                for r in 0..M {
                    for c in 0..M {
                        let v = if c < 3 {
                            t.get(r, c).clone()
                        } else {
                            &(-t.get(r, c)) + &(&ExactScalar::from_int(2) * ad.get(r, c))
                        };
                        e.set(r, c, v);
                    }
                }
                e
            } else {
                // Λ^{g′}(iy) = −τ(iΛ^g(y))
                tau_xiy(&zero, &lc[a]).scale(&-ExactScalar::one())
            };
            let sign = ExactScalar::from_int(theta_sign(a));
            to_theta(&in_xiy).scale(&sign)
        })
        .collect()
}

fn tau_xiy(a0: &Endo, b1: &Endo) -> Endo {
    a0.add(b1)
}

/// Canonical map of the dual predicted from the source: τ(Λ(V)) − (4α′/δ′) ad(V) on 𝔰𝔭(1), zero on i𝔪₁.
pub fn predicted_dual_canonical(model: &HomogeneousModel) -> NomizuMap {
    let can = model.nomizu_canonical();
    let alpha_p = model.alpha.clone();
    let delta_p = -&model.delta;
    let c = ExactScalar::real(int(4) * &alpha_p / &delta_p);
    (0..M)
        .map(|a| {
            if a >= 3 {
                return Endo::zero(M);
            }
            // [V, W] in 𝔤′ has the same (x, iy) coefficients as in 𝔤 when V ∈ 𝔨
            let in_xiy = tau_xiy(&can[a], &Endo::zero(M)).sub(&model.ad_m(a).scale(&c));
            to_theta(&in_xiy).scale(&ExactScalar::from_int(theta_sign(a)))
        })
        .collect()
}

/// Structure-level checks of the dual: involutivity, agreement with the formal (α, −δ) model,
/// calibration and θ-compatibility of Φ_i.
pub fn verify_dual_structure(pair: &DualModel) -> Result<IdentityReport> {
    let mut rep = IdentityReport::default();
    let (s, d) = (&pair.source, &pair.dual);
    let back = dualize(d)?;
    rep.record(back.brackets() == s.brackets(), || "dualize is not involutive".into());
    let formal = HomogeneousModel::build_formal(&s.alpha, &(-&s.delta))?;
    rep.record(formal.brackets() == d.brackets(), || "dual differs from the formal (α, −δ) model".into());
    for v in d.check_lie_structure().into_iter().chain(d.check_calibration()) {
        rep.record(false, || format!("dual: {v}"));
    }
    for i in 1..=3 {
        rep.record(d.frame.big_phi(i) == s.frame.big_phi(i), || format!("Φ′_{i} ≠ θ(Φ_{i})"));
    }
    Ok(rep)
}

/// The isotropy action and its spin lift agree on both sides, so the lift of 𝔥 into 𝔰𝔬(𝔪′) is the source lift.
pub fn verify_dual_spin_lift(pair: &DualModel) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let (s, d) = (&pair.source, &pair.dual);
    let (is, id) = (s.isotropy_spin(), d.isotropy_spin());
    for r in 0..3 {
        rep.record(s.isotropy(r) == d.isotropy(r), || format!("ad′(h_{}) ≠ θ(ad(h_{}))", r + 1, r + 1));
        rep.record(is[r] == id[r], || format!("lifted isotropy h_{} differs on the dual", r + 1));
    }
    rep
}

/// Predicted dual Levi-Civita map against the direct U-tensor and closed-formula computations on the dual.
pub fn verify_dual_lc(pair: &DualModel) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let pred = predicted_dual_lc(&pair.source);
    let direct = pair.dual.nomizu_lc();
    let explicit = pair.dual.nomizu_lc_explicit();
    for a in 0..M {
        rep.record(pred[a] == direct[a], || format!("predicted Λ^{{g′}} differs from the U-tensor map along b_{}", a + 1));
        rep.record(pred[a] == explicit[a], || format!("predicted Λ^{{g′}} differs from the closed formula along b_{}", a + 1));
    }
    rep
}

/// Predicted dual canonical map against the closed formula applied to the dual.
pub fn verify_dual_canonical(pair: &DualModel) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let pred = predicted_dual_canonical(&pair.source);
    let direct = pair.dual.nomizu_canonical();
    for a in 0..M {
        rep.record(pred[a] == direct[a], || format!("predicted canonical map differs along b_{}", a + 1));
    }
    rep
}

pub fn verify_dual_nomizu(pair: &DualModel) -> IdentityReport {
    let mut rep = verify_dual_lc(pair);
    rep.merge(verify_dual_canonical(pair));
    rep
}

/// H-Killing ↔ H′-Killing correspondence and the parallel-case dual equation.
pub fn verify_dual_spinors(pair: &DualModel) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let (s, d) = (&pair.source, &pair.dual);
    let inv_s = joint_kernel(N, &s.isotropy_spin());
    let inv_d = joint_kernel(N, &d.isotropy_spin());
    rep.record(same_span(&inv_s, &inv_d), || "invariant spinors differ across the duality".into());
    let e = crate::catalog::e_sum_basis(&s.frame);
    for u in &e {
        let src_ok = crate::homogeneous::verify_h_killing(s, u).map(|r| r.ok()).unwrap_or(false);
        let dual_ok = crate::homogeneous::verify_h_killing(d, u).map(|r| r.ok()).unwrap_or(false);
        rep.record(src_ok, || format!("E spinor {u} is not H-Killing on the source"));
        rep.record(dual_ok, || format!("E spinor {u} is not H′-Killing on the dual"));
    }
    // both directions over all invariant spinors
    let sol_s = h_killing_solutions(s);
    let sol_d = h_killing_solutions(d);
    rep.record(same_span(&sol_s, &sol_d), || "H-Killing solution spaces differ across the duality".into());
    if s.beta().is_zero() {
        if let Ok(par) = crate::homogeneous::parallel_spinors(s) {
            let lam = d.spin_nomizu(&d.nomizu_canonical());
            let two_alpha = ExactScalar::real(int(2) * &d.alpha);
            for u in &par {
                for a in 0..M {
                    let expect = if a < 3 {
                        let i = a + 1;
                        let (j, k) = cyclic(i);
                        u.clifford_form(d.frame.big_phi(i)).sub(&u.clifford_basis(k).clifford_basis(j)).scale(&two_alpha)
                    } else {
                        Spinor::zero(N)
                    };
                    rep.record(lam[a].apply(u) == expect, || format!("dual canonical derivative of {u} along b_{} differs", a + 1));
                }
            }
        }
    }
    // the canonical spinor stays parallel on the dual
    let psi0 = crate::homogeneous::canonical_spinor_unnormalized();
    let lam = d.spin_nomizu(&d.nomizu_canonical());
    for (a, l) in lam.iter().enumerate() {
        rep.record(l.apply(&psi0).is_zero(), || format!("ψ′₀ not parallel along b_{}", a + 1));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: i64, d: i64) -> DualModel {
        DualModel::build(&int(a), &int(d)).unwrap()
    }

    #[test]
    fn dual_structure() {
        for (a, d) in [(1, 1), (1, 2), (2, 3), (-1, -4)] {
            let p = pair(a, d);
            let mut rep = verify_dual_structure(&p).unwrap();
            rep.merge(verify_dual_spin_lift(&p));
            assert!(rep.ok(), "({a},{d}): {:?}", rep.violations);
        }
        let p = pair(1, 1);
        assert_eq!(p.dual.delta, int(-1));
        // [ie₄, ie₅] lands in 𝔤₀ with flipped sign
        assert_eq!(p.dual.bracket_basis(3, 4)[7], ExactScalar::from_int(2));
        assert_eq!(p.source.bracket_basis(3, 4)[7], ExactScalar::from_int(-2));
    }

    #[test]
    fn tau_is_a_lie_isomorphism() {
        for (a, d) in [(1, 1), (1, 4)] {
            let rep = tau_isomorphism_check();
            assert!(rep.ok(), "{:?}", rep.violations);
            assert!(verify_graded_parts(&pair(a, d).source).ok());
        }
    }

    #[test]
    fn dual_nomizu_maps() {
        for (a, d) in [(1, 1), (1, 2), (3, 1), (1, 4), (-2, -1)] {
            let rep = verify_dual_nomizu(&pair(a, d));
            assert!(rep.ok(), "({a},{d}): {:?}", rep.violations);
        }
    }

    #[test]
    fn dual_spinors() {
        for (a, d) in [(1, 1), (1, 2), (2, 4), (1, 4)] {
            let rep = verify_dual_spinors(&pair(a, d));
            assert!(rep.ok(), "({a},{d}): {:?}", rep.violations);
        }
    }

    #[test]
    fn graded_parts() {
        let m = pair(1, 4).source;
        assert_eq!(graded_part(&m.nomizu_lc()[0]), Some(0));
        assert_eq!(graded_part(&m.nomizu_lc()[3]), Some(1));
        assert_eq!(graded_part(&Endo::zero(M)), Some(0));
    }
}
