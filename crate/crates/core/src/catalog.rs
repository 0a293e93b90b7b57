//! Explicit invariant spinors and the rank-two bundles E₁, E₂, E₃.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exterior::MultiForm;
use crate::scalar::{int, ExactScalar, Rational};
use crate::sasaki::{cyclic, IdentityReport, SasakiFrame};
use crate::spin::{echelon_basis, joint_kernel_by, omega_spin, project, same_span, Spinor};

fn factorial(k: u64) -> Rational {
    (1..=k).fold(int(1), |acc, j| acc * int(j as i64))
}

/// ψ_k = ω^{k+1} − i(k+1) y₁∧ω^k for −1 ≤ k ≤ n−1.
pub fn psi_k(n: usize, k: i64) -> Result<Spinor> {
    if n < 2 || k < -1 || k > n as i64 - 1 {
        return Err(Error::InvalidParameter(format!("ψ_k needs −1 ≤ k ≤ n−1, got k = {k}, n = {n}")));
    }
    let w = omega_spin(n);
    let top = w.wedge_power((k + 1) as usize);
    if k == -1 {
        return Ok(top);
    }
    let coef = ExactScalar::i() * ExactScalar::from_int(-(k + 1));
    Ok(top.add(&Spinor::y(n, 1).wedge(&w.wedge_power(k as usize)).scale(&coef)))
}

/// Ψ_{E_i,b} from the closed sums over ψ_k; ψ_{−1} = 1 enters the b = 1 sums.
pub fn psi_ei(n: usize, i: usize, b: usize) -> Result<Spinor> {
    if n < 2 || !(1..=3).contains(&i) || b > 1 {
        return Err(Error::InvalidParameter(format!("no catalog spinor Ψ_(E_{i},{b}) for n = {n}")));
    }
    if i == 1 {
        return Ok(if b == 0 {
            Spinor::one(n)
        } else {
            Spinor::y(n, 1).wedge(&omega_spin(n).wedge_power(n - 1))
        });
    }
    let alternating = i == 2;
    let mut out = Spinor::zero(n);
    let (top, odd_index) = if b == 0 { ((n - 1) / 2, 0) } else { (n / 2, 1) };
    for k in 0..=top {
        let kk = k as i64;
        let (index, fact) = if odd_index == 0 { (2 * kk, 2 * k as u64 + 1) } else { (2 * kk - 1, 2 * k as u64) };
        let mut c = int(1) / factorial(fact);
        if alternating && k % 2 == 1 {
            c = -c;
        }
        out = out.add(&psi_k(n, index)?.scale_rational(&c));
    }
    Ok(out)
}

/// The low-dimensional table of E_i bases exactly as printed (n = 2, 3, 4).
pub fn printed_table_entry(n: usize, i: usize, b: usize) -> Option<Spinor> {
    if !(2..=4).contains(&n) {
        return None;
    }
    let w = omega_spin(n);
    let y1 = Spinor::y(n, 1);
    let one = Spinor::one(n);
    let im = ExactScalar::i();
    let q = |p: i64, r: i64| ExactScalar::from_ratio(p, r);
    let wp = |k: usize| w.wedge_power(k);
    let yw = |k: usize| y1.wedge(&w.wedge_power(k));
    let base0 = w.sub(&y1.scale(&im));
    let v = match (i, b, n) {
        (1, 0, _) => one,
        (1, 1, _) => yw(n - 1),
        (2, 0, 2) | (3, 0, 2) => base0,
        (2, 0, 3) => base0.add(&yw(2).scale(&(&im * &q(1, 2)))),
        (3, 0, 3) => base0.sub(&yw(2).scale(&q(1, 2))),
        (2, 0, 4) => base0.add(&yw(2).scale(&(&im * &q(1, 2)))).sub(&wp(3).scale(&q(1, 6))),
        (3, 0, 4) => base0.sub(&yw(2).scale(&q(1, 2))).add(&wp(2).scale(&q(1, 6))),
        (2, 1, 2) => one.add(&yw(1).scale(&im)),
        (3, 1, 2) => one.sub(&yw(1).scale(&im)),
        (2, 1, 3) => one.add(&yw(1).scale(&im)).sub(&wp(2).scale(&q(1, 2))),
        (3, 1, 3) => one.sub(&yw(1).scale(&im)).add(&wp(2).scale(&q(1, 2))),
        (2, 1, 4) => one.add(&yw(1).scale(&im)).sub(&wp(2).scale(&q(1, 2))).sub(&yw(3).scale(&(&im * &q(1, 6)))),
        (3, 1, 4) => one.sub(&yw(1).scale(&im)).add(&wp(2).scale(&q(1, 2))).sub(&yw(3).scale(&(&im * &q(1, 6)))),
        _ => return None,
    };
    Some(v)
}

/// Fiber of E_i: the common kernel of A_i(e_s) = −2φ_i(e_s) + ξ_i·e_s − e_s·ξ_i over all s.
#[derive(Clone, Debug)]
pub struct EiBundle {
    pub n: usize,
    pub i: usize,
    pub basis: Vec<Spinor>,
}

impl EiBundle {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, psi: &Spinor) -> bool {
        crate::spin::in_span(&self.basis, psi)
    }

    pub fn project(&self, psi: &Spinor) -> Spinor {
        project(&self.basis, psi)
    }
}

fn compute_ei(n: usize, i: usize) -> EiBundle {
    let frame = SasakiFrame::build(n, int(1), int(1)).expect("n ≥ 2");
    let m = frame.dim();
    let basis = joint_kernel_by(n, m, |s, psi| frame.e_operator(i, &frame.basis(s + 1), psi));
    EiBundle { n, i, basis }
}

/// The E_i operators only involve φ_i and ξ_i, so the fiber depends on n alone.
pub fn build_ei(frame: &SasakiFrame, i: usize) -> Arc<EiBundle> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<EiBundle>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (frame.n, i);
    if let Some(b) = cache.lock().expect("cache lock").get(&key) {
        return b.clone();
    }
    let b = Arc::new(compute_ei(frame.n, i));
    cache.lock().expect("cache lock").insert(key, b.clone());
    b
}

/// Basis of the non-direct sum E = E₁ + E₂ + E₃.
pub fn e_sum_basis(frame: &SasakiFrame) -> Vec<Spinor> {
    let all: Vec<Spinor> = (1..=3).flat_map(|i| build_ei(frame, i).basis.clone()).collect();
    echelon_basis(frame.n, &all)
}

/// Do the catalog spinors Ψ_{E_i,0}, Ψ_{E_i,1} span the kernel fiber?
pub fn catalog_spans_fiber(frame: &SasakiFrame, i: usize) -> Result<bool> {
    let bundle = build_ei(frame, i);
    let cat = vec![psi_ei(frame.n, i, 0)?, psi_ei(frame.n, i, 1)?];
    Ok(same_span(&cat, &bundle.basis))
}

/// The three projection identities for every basis spinor of E_i and every even (p, q, r).
pub fn verify_projection_lemma(frame: &SasakiFrame, i: usize) -> IdentityReport {
    let bundle = build_ei(frame, i);
    let n = frame.n as i64;
    let mut rep = IdentityReport::default();
    let coeff_iii = ExactScalar::real(int(-2) * &frame.delta + int(8 * (n - 1)) * (&frame.alpha - &frame.delta));
    for (bi, psi) in bundle.basis.iter().enumerate() {
        let xi_psi = psi.clifford_basis(i);
        for p in 1..=3 {
            let (q, r) = cyclic(p);
            // (i) pr(Φ_p ψ) = −δ_{ip}(2n−1) ξ_i ψ
            let lhs = bundle.project(&psi.clifford_form(frame.big_phi(p)));
            let rhs = if p == i { xi_psi.scale(&ExactScalar::from_int(-(2 * n - 1))) } else { Spinor::zero(frame.n) };
            rep.record(lhs == rhs, || format!("item (i) fails for basis spinor {bi}, p = {p}"));
            // (ii) pr([Φ_p, Φ_q] ψ) = 2δ_{ir}(4n−3) ξ_i ψ
            let pq = psi.clifford_form(frame.big_phi(q)).clifford_form(frame.big_phi(p));
            let qp = psi.clifford_form(frame.big_phi(p)).clifford_form(frame.big_phi(q));
            let lhs = bundle.project(&pq.sub(&qp));
            let rhs = if r == i { xi_psi.scale(&ExactScalar::from_int(2 * (4 * n - 3))) } else { Spinor::zero(frame.n) };
            rep.record(lhs == rhs, || format!("item (ii) fails for basis spinor {bi}, (p,q) = ({p},{q})"));
            // (iii) pr((∇_{ξ_p}Φ_q − ∇_{ξ_q}Φ_p) ψ) = δ_{ir}[−2δ + 8(n−1)(α−δ)] ξ_i ψ
            let form: MultiForm = frame
                .lc_derivative_big_phi(q, &frame.xi(p))
                .sub(&frame.lc_derivative_big_phi(p, &frame.xi(q)))
                .expect("same dim");
            let lhs = bundle.project(&psi.clifford_form(&form));
            let rhs = if r == i { xi_psi.scale(&coeff_iii) } else { Spinor::zero(frame.n) };
            rep.record(lhs == rhs, || format!("item (iii) fails for basis spinor {bi}, (p,q) = ({p},{q})"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sasaki::verify_e_bundle_clifford_lemmas;
    use crate::spin::{hermitian, in_span};

    fn frame(n: usize) -> SasakiFrame {
        SasakiFrame::build(n, int(1), int(1)).unwrap()
    }

    #[test]
    fn psi_k_examples() {
        assert_eq!(psi_k(2, -1).unwrap(), Spinor::one(2));
        assert_eq!(psi_k(2, 0).unwrap().notation(), "ω − i·y_1");
        let w = omega_spin(3);
        let expect = w.wedge_power(2).sub(&Spinor::y(3, 1).wedge(&w).scale(&(ExactScalar::i() * ExactScalar::from_int(2))));
        assert_eq!(psi_k(3, 1).unwrap(), expect);
        assert!(psi_k(2, 2).is_err());
        assert!(psi_k(2, -2).is_err());
    }

    #[test]
    fn fibers_have_rank_two_and_match_closed_sums() {
        for n in 2..=4 {
            let f = frame(n);
            for i in 1..=3 {
                assert_eq!(build_ei(&f, i).dim(), 2, "n={n}, i={i}");
                assert!(catalog_spans_fiber(&f, i).unwrap(), "n={n}, i={i}");
            }
        }
    }

    #[test]
    fn dim7_fibers() {
        let f = frame(2);
        let e1 = build_ei(&f, 1);
        assert!(same_span(&e1.basis, &[Spinor::one(2), psi_ei(2, 1, 1).unwrap()]));
        assert_eq!(e_sum_basis(&f).len(), 3);
        // canonical spinor ∝ ω + i y₁
        let psi0 = omega_spin(2).add(&Spinor::y(2, 1).scale(&ExactScalar::i()));
        let psi1 = psi0.clifford_basis(1);
        assert!(build_ei(&f, 2).contains(&psi1));
        assert!(build_ei(&f, 3).contains(&psi1));
        assert!(!e1.contains(&psi1));
    }

    #[test]
    fn printed_table_against_kernels() {
        let mut mismatches = Vec::new();
        for n in 2..=4 {
            let f = frame(n);
            for i in 1..=3 {
                for b in 0..=1 {
                    let printed = printed_table_entry(n, i, b).unwrap();
                    if !in_span(&build_ei(&f, i).basis, &printed) {
                        mismatches.push((n, i, b));
                    }
                }
            }
        }
        // two misprints: a dropped i in dim 11 and ω² for ω³ in dim 15
        assert_eq!(mismatches, vec![(3, 3, 0), (4, 3, 0)]);
    }

    #[test]
    fn projection_examples_dim7() {
        let f = frame(2);
        let e1 = build_ei(&f, 1);
        let one = Spinor::one(2);
        assert_eq!(e1.project(&one.clifford_form(f.big_phi(1))), one.clifford_basis(1).scale(&ExactScalar::from_int(-3)));
        assert!(e1.project(&one.clifford_form(f.big_phi(2))).is_zero());
        assert_eq!(e1.project(&one), one);
    }

    #[test]
    fn projection_lemma_all_dims() {
        for n in 2..=3 {
            for (a, d) in [(1, 1), (2, 3), (-1, 2)] {
                let f = SasakiFrame::build(n, int(a), int(d)).unwrap();
                for i in 1..=3 {
                    let rep = verify_projection_lemma(&f, i);
                    assert!(rep.ok(), "{:?}", rep.violations);
                }
            }
        }
    }

    #[test]
    fn clifford_lemmas_hold_on_every_fiber() {
        for n in 2..=3 {
            let f = frame(n);
            for i in 1..=3 {
                for psi in &build_ei(&f, i).basis {
                    assert!(verify_e_bundle_clifford_lemmas(&f, i, psi).unwrap().ok());
                }
            }
        }
    }

    #[test]
    fn projection_is_self_adjoint() {
        let f = frame(2);
        let e2 = build_ei(&f, 2);
        let a = Spinor::y(2, 1).add(&Spinor::one(2));
        let b = omega_spin(2).scale(&ExactScalar::i()).add(&Spinor::y(2, 3));
        assert_eq!(hermitian(&e2.project(&a), &b), hermitian(&a, &e2.project(&b)));
        let pa = e2.project(&a);
        assert_eq!(e2.project(&pa), pa);
    }
}
