//! Seven-dimensional specializations: the G₂ 3-form, canonical and auxiliary spinors,
//! Dirac eigenvalues and the Friedrich bound.

use num_traits::Zero;

use crate::catalog::e_sum_basis;
use crate::error::{Error, Result};
use crate::exterior::MultiForm;
use crate::homogeneous::{dirac_on_invariant, HomogeneousModel, M};
use crate::linalg;
use crate::sasaki::{cyclic, IdentityReport, SasakiFrame};
use crate::scalar::{field_sqrt, int, ExactScalar, Rational};
use crate::spin::{clifford_form, hermitian, joint_kernel, omega_spin, SpinOperator, Spinor};

const N: usize = 2;

#[derive(Clone, Debug)]
pub struct Dim7Package {
    pub frame: SasakiFrame,
    pub omega_g2: MultiForm,
    /// ψ₀ and the auxiliary spinors ψ_i = ξ_i·ψ₀.
    pub psi: [Spinor; 4],
    /// Scalar curvature 6(δ² + 8αδ − 2α²).
    pub r0: Rational,
}

/// ω = η₁₂₃ + Σ η_i∧Φ_i^𝓗.
pub fn g2_form(frame: &SasakiFrame) -> Result<MultiForm> {
    let mut w = MultiForm::basis(M, &[1, 2, 3])?;
    for i in 1..=3 {
        w = w.add(&frame.eta(i).wedge(&frame.big_phi(i).restrict(frame.horizontal))?)?;
    }
    Ok(w)
}

fn eigenspace(op: &SpinOperator, lambda: i64) -> Vec<Spinor> {
    joint_kernel(N, &[op.sub(&SpinOperator::scalar(N, &ExactScalar::from_int(lambda)))])
}

pub fn scalar_curvature(alpha: &Rational, delta: &Rational) -> Rational {
    int(6) * (delta * delta + int(8) * alpha * delta - int(2) * alpha * alpha)
}

pub fn build_dim7(alpha: &Rational, delta: &Rational) -> Result<Dim7Package> {
    let frame = SasakiFrame::build(N, alpha.clone(), delta.clone())?;
    let omega_g2 = g2_form(&frame)?;
    let op = clifford_form(N, &omega_g2);
    let space = eigenspace(&op, -7);
    if space.len() != 1 {
        return Err(Error::Failed(format!("(−7)-eigenspace of the G₂ form has dimension {}", space.len())));
    }
    // fix the phase by making the ω_spin coefficient 1, then normalize
    let w = omega_spin(N);
    let c = hermitian(&space[0], &w).div(&hermitian(&w, &w))?;
    let v = space[0].scale(&c.inv()?);
    let norm_sq = hermitian(&v, &v).as_rational().ok_or_else(|| Error::Failed("non-real norm".into()))?;
    let norm = field_sqrt(&norm_sq).ok_or_else(|| Error::Failed("|ψ₀| has no exact square root".into()))?;
    let psi0 = v.scale(&norm.inv()?);
    let psi = [psi0.clone(), psi0.clifford_basis(1), psi0.clifford_basis(2), psi0.clifford_basis(3)];
    Ok(Dim7Package { frame, omega_g2, psi, r0: scalar_curvature(alpha, delta) })
}

impl Dim7Package {
    /// Dimensions of the −7 and +1 eigenspaces of the G₂ form; together they exhaust Σ.
    pub fn g2_spectrum(&self) -> (usize, usize) {
        let op = clifford_form(N, &self.omega_g2);
        (eigenspace(&op, -7).len(), eigenspace(&op, 1).len())
    }
}

/// Φ_iψ₀ = ψ_i.
pub fn verify_phi_on_canonical(pkg: &Dim7Package) -> IdentityReport {
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        let lhs = pkg.psi[0].clifford_form(pkg.frame.big_phi(i));
        rep.record(lhs == pkg.psi[i], || format!("Φ_{i}·ψ₀ ≠ ψ_{i}"));
    }
    rep
}

/// Φ_iψ_i = ξ_iψ_i.
pub fn verify_phi_on_own_auxiliary(pkg: &Dim7Package) -> IdentityReport {
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        let lhs = pkg.psi[i].clifford_form(pkg.frame.big_phi(i));
        rep.record(lhs == pkg.psi[i].clifford_basis(i), || format!("Φ_{i}·ψ_{i} ≠ ξ_{i}·ψ_{i}"));
    }
    rep
}

/// Φ_iψ_j = −3ξ_iψ_j for i ≠ j.
pub fn verify_phi_on_other_auxiliary(pkg: &Dim7Package) -> IdentityReport {
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        for j in (1..=3).filter(|&j| j != i) {
            let lhs = pkg.psi[j].clifford_form(pkg.frame.big_phi(i));
            let rhs = pkg.psi[j].clifford_basis(i).scale(&ExactScalar::from_int(-3));
            rep.record(lhs == rhs, || format!("Φ_{i}·ψ_{j} ≠ −3ξ_{i}·ψ_{j}"));
        }
    }
    rep
}

/// (Φ_i − ξ_j·ξ_k)·ψ₀ = 0 for cyclic (i, j, k).
pub fn verify_canonical_relation(pkg: &Dim7Package) -> IdentityReport {
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        let (j, k) = cyclic(i);
        let p0 = &pkg.psi[0];
        let v = p0.clifford_form(pkg.frame.big_phi(i)).sub(&p0.clifford_basis(k).clifford_basis(j));
        rep.record(v.is_zero(), || format!("(Φ_{i} − ξ_{j}ξ_{k})·ψ₀ ≠ 0"));
    }
    rep
}

pub fn verify_clifford_lemma(pkg: &Dim7Package) -> IdentityReport {
    let mut rep = verify_phi_on_canonical(pkg);
    rep.merge(verify_phi_on_own_auxiliary(pkg));
    rep.merge(verify_phi_on_other_auxiliary(pkg));
    rep.merge(verify_canonical_relation(pkg));
    rep
}

fn half(r: Rational) -> ExactScalar {
    ExactScalar::real(r / int(2))
}

/// Right-hand side of the auxiliary-spinor equation for ψ_i along basis vector e_a (1-based).
pub fn auxiliary_rhs(pkg: &Dim7Package, i: usize, a: usize) -> Spinor {
    let (al, de) = (&pkg.frame.alpha, &pkg.frame.delta);
    let p = &pkg.psi[i];
    if a == i {
        p.clifford_basis(a).scale(&half(int(2) * al - de))
    } else if a <= 3 {
        p.clifford_basis(a).scale(&half(int(3) * de - int(2) * al))
    } else {
        p.clifford_basis(a).scale(&half(al.clone()))
    }
}

/// Right-hand side of the H-Killing equation along e_a (1-based).
pub fn h_killing_rhs(frame: &SasakiFrame, a: usize, u: &Spinor) -> Spinor {
    let mut out = u.clifford_basis(a).scale(&half(frame.alpha.clone()));
    if a <= 3 {
        out = out.add(&u.clifford_form(frame.big_phi(a)).scale(&half(&frame.alpha - &frame.delta)));
    }
    out
}

/// The two right-hand sides agree on the ψ_i and, by linearity, on every spinor of E.
pub fn verify_equation_equivalence(pkg: &Dim7Package) -> Result<IdentityReport> {
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        for a in 1..=M {
            rep.record(h_killing_rhs(&pkg.frame, a, &pkg.psi[i]) == auxiliary_rhs(pkg, i, a), || {
                format!("right-hand sides differ for ψ_{i} along e_{a}")
            });
        }
    }
    let aux: Vec<Vec<ExactScalar>> = pkg.psi[1..].iter().map(|p| p.coeffs.clone()).collect();
    for u in e_sum_basis(&pkg.frame) {
        let coords = linalg::express_in_span(&aux, &u.coeffs);
        let Some(coords) = coords else {
            rep.record(false, || format!("E spinor {u} is not spanned by the auxiliary spinors"));
            continue;
        };
        for a in 1..=M {
            let mut rhs = Spinor::zero(N);
            for (t, c) in coords.iter().enumerate() {
                rhs = rhs.add(&auxiliary_rhs(pkg, t + 1, a).scale(c));
            }
            rep.record(h_killing_rhs(&pkg.frame, a, &u) == rhs, || format!("right-hand sides differ for {u} along e_{a}"));
        }
    }
    Ok(rep)
}

/// The generalized Killing equations of ψ₀ … ψ₃ for the Levi-Civita map of a model.
pub fn verify_generalized_killing(model: &HomogeneousModel, pkg: &Dim7Package) -> IdentityReport {
    let lam = model.spin_nomizu(&model.nomizu_lc());
    let mut rep = IdentityReport::default();
    let (al, de) = (&model.alpha, &model.delta);
    for a in 1..=M {
        let lhs = lam[a - 1].apply(&pkg.psi[0]);
        let c = if a <= 3 { half(int(2) * al - de) } else { half(int(-3) * al) };
        rep.record(lhs == pkg.psi[0].clifford_basis(a).scale(&c), || format!("ψ₀ equation fails along e_{a}"));
        for i in 1..=3 {
            rep.record(lam[a - 1].apply(&pkg.psi[i]) == auxiliary_rhs(pkg, i, a), || format!("ψ_{i} equation fails along e_{a}"));
        }
    }
    let can = model.spin_nomizu(&model.nomizu_canonical());
    for (a, l) in can.iter().enumerate() {
        rep.record(l.apply(&pkg.psi[0]).is_zero(), || format!("ψ₀ not parallel along e_{}", a + 1));
    }
    rep
}

/// Dirac eigenvalues against the closed forms, and the Friedrich-bound comparison on squares.
pub fn verify_dirac_and_friedrich(pkg: &Dim7Package, model: &HomogeneousModel) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let (al, de) = (&pkg.frame.alpha, &pkg.frame.delta);
    let lam_e = -(int(2) * al + int(5) * de) / int(2);
    let lam_0 = (int(6) * al + int(3) * de) / int(2);
    for u in e_sum_basis(&pkg.frame) {
        rep.record(dirac_on_invariant(model, &u) == u.scale(&ExactScalar::real(lam_e.clone())), || format!("D{u} is not −(2α+5δ)/2·u"));
    }
    let p0 = &pkg.psi[0];
    rep.record(dirac_on_invariant(model, p0) == p0.scale(&ExactScalar::real(lam_0.clone())), || "Dψ₀ is not (6α+3δ)/2·ψ₀".into());
    rep.record(pkg.r0 == scalar_curvature(al, de), || "R₀ mismatch".into());
    // 4(λ² − 7R₀/24) factors as 18(α−δ)² for E and 2(5α−δ)² for ψ₀
    let gap_e = |a: &Rational, d: &Rational| {
        let l = -(int(2) * a + int(5) * d) / int(2);
        int(4) * (&l * &l - int(7) * scalar_curvature(a, d) / int(24))
    };
    let gap_0 = |a: &Rational, d: &Rational| {
        let l = (int(6) * a + int(3) * d) / int(2);
        int(4) * (&l * &l - int(7) * scalar_curvature(a, d) / int(24))
    };
    // both sides are quadratic forms in (α, δ); agreement on a 3×3 grid proves the identity
    for a in [-1, 1, 2] {
        for d in [-2, 1, 3] {
            let (a, d) = (int(a), int(d));
            let diff = &a - &d;
            let five = int(5) * &a - &d;
            rep.record(gap_e(&a, &d) == int(18) * &diff * &diff, || "E factorization fails".into());
            rep.record(gap_0(&a, &d) == int(2) * &five * &five, || "ψ₀ factorization fails".into());
        }
    }
    rep.record(gap_e(al, de).is_zero() == (al == de), || "E spinors: equality case is not δ = α".into());
    rep.record(gap_0(al, de).is_zero() == (de == &(int(5) * al)), || "ψ₀: equality case is not δ = 5α".into());
    rep
}

/// Squared Friedrich bound 7R₀/24.
pub fn friedrich_bound_sq(alpha: &Rational, delta: &Rational) -> Rational {
    int(7) * scalar_curvature(alpha, delta) / int(24)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn canonical_spinor() {
        let pkg = build_dim7(&int(1), &int(4)).unwrap();
        assert_eq!(pkg.g2_spectrum(), (1, 7));
        let r2 = ExactScalar::sqrt2().inv().unwrap();
        let expect = omega_spin(2).add(&Spinor::y(2, 1).scale(&ExactScalar::i())).scale(&r2);
        assert_eq!(pkg.psi[0], expect);
        let psi1 = omega_spin(2).scale(&ExactScalar::i()).add(&Spinor::y(2, 1)).scale(&r2);
        assert!(pkg.psi[1] == psi1 || pkg.psi[1] == psi1.neg());
        assert_eq!(hermitian(&pkg.psi[0], &pkg.psi[0]), ExactScalar::one());
        // the G₂ form does not depend on (α, δ)
        assert_eq!(build_dim7(&int(-2), &int(3)).unwrap().omega_g2, pkg.omega_g2);
    }

    #[test]
    fn clifford_lemma() {
        let pkg = build_dim7(&int(1), &int(1)).unwrap();
        for rep in [
            verify_phi_on_canonical(&pkg),
            verify_phi_on_own_auxiliary(&pkg),
            verify_phi_on_other_auxiliary(&pkg),
            verify_canonical_relation(&pkg),
        ] {
            assert!(rep.ok() && rep.checked > 0, "{:?}", rep.violations);
        }
    }

    #[test]
    fn equivalence_of_equations() {
        for (a, d) in [(1, 1), (1, 4), (-2, 3)] {
            let pkg = build_dim7(&int(a), &int(d)).unwrap();
            assert!(verify_equation_equivalence(&pkg).unwrap().ok());
        }
    }

    #[test]
    fn generalized_killing_on_model_and_dual() {
        for (a, d) in [(1, 1), (1, 4), (3, 2)] {
            let m = HomogeneousModel::build_s7(&int(a), &int(d)).unwrap();
            let pkg = build_dim7(&int(a), &int(d)).unwrap();
            assert!(verify_generalized_killing(&m, &pkg).ok());
            let dual = crate::duality::dualize(&m).unwrap();
            let pkg_d = build_dim7(&int(a), &int(-d)).unwrap();
            assert_eq!(pkg_d.psi, pkg.psi);
            assert!(verify_generalized_killing(&dual, &pkg_d).ok());
        }
    }

    #[test]
    fn dirac_and_friedrich() {
        assert_eq!(scalar_curvature(&int(1), &int(1)), int(42));
        assert_eq!(friedrich_bound_sq(&int(1), &int(1)), rat(49, 4));
        assert_eq!(scalar_curvature(&int(1), &int(5)), int(378));
        assert_eq!(friedrich_bound_sq(&int(1), &int(5)), rat(441, 4));
        assert_eq!(scalar_curvature(&int(1), &int(4)), int(276));
        assert_eq!(friedrich_bound_sq(&int(1), &int(4)), rat(161, 2));
        assert_ne!(friedrich_bound_sq(&int(1), &int(4)), int(121));
        for (a, d) in [(1, 1), (1, 5), (1, 4), (2, 3)] {
            let m = HomogeneousModel::build_s7(&int(a), &int(d)).unwrap();
            let pkg = build_dim7(&int(a), &int(d)).unwrap();
            let rep = verify_dirac_and_friedrich(&pkg, &m);
            assert!(rep.ok(), "({a},{d}): {:?}", rep.violations);
        }
    }
}
