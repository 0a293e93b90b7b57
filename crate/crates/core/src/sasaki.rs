//! Pointwise algebra of a 3-(α,δ)-Sasaki structure in an adapted orthonormal frame.
//!
//! The frame is e₁, e₂, e₃ = ξ₁, ξ₂, ξ₃ followed by the horizontal vectors
//! e₄ … e_{4n−1}, grouped into quaternionic blocks (e_{4p}, …, e_{4p+3}), p = 1 … n−1.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{bitmask, lower_to_form, raise_to_endo, unit_vector, vec_add, vec_dot, vec_scale, vec_sub, Endo, MultiForm, Vector};
use crate::scalar::{field_sqrt, fmt_rational, int, ExactScalar, Rational};
use crate::spin::Spinor;

/// (j, k) completing i to an even permutation of (1, 2, 3).
pub fn cyclic(i: usize) -> (usize, usize) {
    match i {
        1 => (2, 3),
        2 => (3, 1),
        3 => (1, 2),
        _ => panic!("structure index {i} not in 1..=3"),
    }
}

/// Φ_i in the adapted frame; the horizontal sum runs over the blocks p = 1 … n−1.
fn structure_form(n: usize, i: usize) -> MultiForm {
    let m = 4 * n - 1;
    let (vertical, blocks): ((usize, usize, i64), [(usize, usize, i64); 2]) = match i {
        1 => ((2, 3, -1), [(0, 1, -1), (2, 3, -1)]),
        2 => ((1, 3, 1), [(0, 2, -1), (1, 3, 1)]),
        3 => ((1, 2, -1), [(0, 3, -1), (1, 2, -1)]),
        _ => unreachable!(),
    };
    let mut f = MultiForm::zero(m);
    f.add_term(bitmask([vertical.0, vertical.1]), ExactScalar::from_int(vertical.2));
    for p in 1..n {
        let base = 4 * p;
        for &(a, b, s) in &blocks {
            f.add_term(bitmask([base + a, base + b]), ExactScalar::from_int(s));
        }
    }
    f
}

/// Structure tensors of an adapted frame together with the canonical torsion.
#[derive(Clone, Debug)]
pub struct SasakiFrame {
    pub n: usize,
    pub alpha: Rational,
    pub delta: Rational,
    pub beta: Rational,
    eta: [MultiForm; 3],
    big_phi: [MultiForm; 3],
    phi: [Endo; 3],
    /// Canonical torsion 3-form.
    pub torsion: MultiForm,
    /// Exterior derivative of the torsion, from its closed formula.
    pub dtorsion: MultiForm,
    pub horizontal: u64,
    pub vertical: u64,
}

impl SasakiFrame {
    pub fn build(n: usize, alpha: Rational, delta: Rational) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n}, need n ≥ 2")));
        }
        if alpha.is_zero() {
            return Err(Error::InvalidParameter("α must be non-zero".into()));
        }
        let m = 4 * n - 1;
        let eta = [1, 2, 3].map(|i| MultiForm::one_form(m, i));
        let big_phi = [1, 2, 3].map(|i| structure_form(n, i));
        let phi = big_phi.clone().map(|f| raise_to_endo(&f).expect("2-form"));
        let beta = int(2) * (&delta - int(2) * &alpha);
        let vertical = bitmask([1, 2, 3]);
        let horizontal = bitmask(4..=m);
        let mut frame = SasakiFrame {
            n,
            alpha,
            delta,
            beta,
            eta,
            big_phi,
            phi,
            torsion: MultiForm::zero(m),
            dtorsion: MultiForm::zero(m),
            horizontal,
            vertical,
        };
        frame.torsion = frame.torsion_from_horizontal_forms();
        frame.dtorsion = frame.dtorsion_formula();
        Ok(frame)
    }

    pub fn dim(&self) -> usize {
        4 * self.n - 1
    }

    pub fn alpha_s(&self) -> ExactScalar {
        ExactScalar::real(self.alpha.clone())
    }

    pub fn delta_s(&self) -> ExactScalar {
        ExactScalar::real(self.delta.clone())
    }

    pub fn xi(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    pub fn eta(&self, i: usize) -> &MultiForm {
        &self.eta[i - 1]
    }

    pub fn big_phi(&self, i: usize) -> &MultiForm {
        &self.big_phi[i - 1]
    }

    pub fn phi(&self, i: usize) -> &Endo {
        &self.phi[i - 1]
    }

    pub fn basis(&self, j: usize) -> Vector {
        unit_vector(self.dim(), j)
    }

    pub fn is_horizontal_index(&self, j: usize) -> bool {
        j >= 4
    }

    /// η_i(X) is just the i-th coordinate.
    pub fn eta_at(&self, i: usize, x: &[ExactScalar]) -> ExactScalar {
        x[i - 1].clone()
    }

    pub fn horizontal_part(&self, x: &[ExactScalar]) -> Vector {
        let mut v = x.to_vec();
        for c in v.iter_mut().take(3) {
            *c = ExactScalar::zero();
        }
        v
    }

    pub fn vertical_part(&self, x: &[ExactScalar]) -> Vector {
        vec_sub(x, &self.horizontal_part(x))
    }

    fn eta123(&self) -> MultiForm {
        MultiForm::basis(self.dim(), &[1, 2, 3]).expect("in range")
    }

    fn eta_jk(&self, i: usize) -> MultiForm {
        let (j, k) = cyclic(i);
        self.eta(j).wedge(self.eta(k)).expect("same dim")
    }

    /// dη_i = 2αΦ_i + 2(α−δ)η_j∧η_k.
    pub fn d_eta(&self, i: usize) -> MultiForm {
        let two_alpha = int(2) * &self.alpha;
        let c = int(2) * (&self.alpha - &self.delta);
        self.big_phi(i).scale_rational(&two_alpha).add(&self.eta_jk(i).scale_rational(&c)).expect("same dim")
    }

    /// T = Σ η_i∧dη_i + 8(δ−α)η₁₂₃.
    pub fn torsion_from_d_eta(&self) -> MultiForm {
        let mut t = self.eta123().scale_rational(&(int(8) * (&self.delta - &self.alpha)));
        for i in 1..=3 {
            t = t.add(&self.eta(i).wedge(&self.d_eta(i)).expect("same dim")).expect("same dim");
        }
        t
    }

    /// T = 2α Σ η_i∧Φ_i^H + 2(δ−4α)η₁₂₃.
    pub fn torsion_from_horizontal_forms(&self) -> MultiForm {
        let mut t = self.eta123().scale_rational(&(int(2) * (&self.delta - int(4) * &self.alpha)));
        let two_alpha = int(2) * &self.alpha;
        for i in 1..=3 {
            let ph = self.big_phi(i).restrict(self.horizontal);
            t = t.add(&self.eta(i).wedge(&ph).expect("same dim").scale_rational(&two_alpha)).expect("same dim");
        }
        t
    }

    /// dT = 4α² Σ Φ_p^H∧Φ_p^H + 8α(δ−2α) 𝔖 Φ_i^H∧η_{jk}.
    fn dtorsion_formula(&self) -> MultiForm {
        let a2 = int(4) * &self.alpha * &self.alpha;
        let c = int(8) * &self.alpha * (&self.delta - int(2) * &self.alpha);
        let mut d = MultiForm::zero(self.dim());
        for i in 1..=3 {
            let ph = self.big_phi(i).restrict(self.horizontal);
            d = d.add(&ph.wedge(&ph).expect("same dim").scale_rational(&a2)).expect("same dim");
            d = d.add(&ph.wedge(&self.eta_jk(i)).expect("same dim").scale_rational(&c)).expect("same dim");
        }
        d
    }

    /// T(X, Y) = 2α Σ [η_p(Y)φ_pX − η_p(X)φ_pY + Φ_p(X,Y)ξ_p] − 2(α−δ) 𝔖 η_{ij}(X,Y)ξ_k.
    pub fn torsion_vector(&self, x: &[ExactScalar], y: &[ExactScalar]) -> Vector {
        let m = self.dim();
        let two_alpha = ExactScalar::real(int(2) * &self.alpha);
        let mut out = vec![ExactScalar::zero(); m];
        for p in 1..=3 {
            let a = vec_scale(&self.phi(p).apply(x), &self.eta_at(p, y));
            let b = vec_scale(&self.phi(p).apply(y), &self.eta_at(p, x));
            let c = vec_scale(&self.xi(p), &self.big_phi(p).eval(&[x, y]));
            out = vec_add(&out, &vec_scale(&vec_add(&vec_sub(&a, &b), &c), &two_alpha));
        }
        let coef = ExactScalar::real(int(-2) * (&self.alpha - &self.delta));
        for k in 1..=3 {
            let v = vec_scale(&self.xi(k), &(&self.eta_jk(k).eval(&[x, y]) * &coef));
            out = vec_add(&out, &v);
        }
        out
    }

    /// Every violated structural identity, described in words.
    pub fn check_invariants(&self) -> Vec<String> {
        let m = self.dim();
        let id = Endo::identity(m);
        let mut bad = Vec::new();
        for i in 1..=3 {
            let (j, k) = cyclic(i);
            if lower_to_form(self.phi(i)).ok().as_ref() != Some(self.big_phi(i)) {
                bad.push(format!("Φ_{i} ≠ g(·, φ_{i}·)"));
            }
            if self.phi(i).apply(&self.xi(j)) != self.xi(k) {
                bad.push(format!("φ_{i}(ξ_{j}) ≠ ξ_{k}"));
            }
            if self.phi(j).apply(&self.xi(i)) != vec_scale(&self.xi(k), &-ExactScalar::one()) {
                bad.push(format!("φ_{j}(ξ_{i}) ≠ −ξ_{k}"));
            }
            let hi = self.phi(i).restrict(self.horizontal);
            let hj = self.phi(j).restrict(self.horizontal);
            let hk = self.phi(k).restrict(self.horizontal);
            if hi.compose(&hj) != hk {
                bad.push(format!("φ_{i}^H φ_{j}^H ≠ φ_{k}^H"));
            }
            // g(φ_i ·, φ_i ·) = g − η_i⊗η_i
            let gram = self.phi(i).transpose().compose(self.phi(i));
            let mut expected = id.clone();
            expected.set(i - 1, i - 1, ExactScalar::zero());
            if gram != expected {
                bad.push(format!("g(φ_{i}·, φ_{i}·) ≠ g − η_{i}⊗η_{i}"));
            }
            // φ_i = φ_j φ_k − η_k⊗ξ_j
            let mut rhs = self.phi(j).compose(self.phi(k));
            let prev = rhs.get(j - 1, k - 1).clone();
            rhs.set(j - 1, k - 1, prev - ExactScalar::one());
            if &rhs != self.phi(i) {
                bad.push(format!("φ_{i} ≠ φ_{j}φ_{k} − η_{k}⊗ξ_{j}"));
            }
            for c in 1..=m {
                let e = self.basis(c);
                if self.eta_at(i, &e) != self.eta_at(j, &self.phi(k).apply(&e)) {
                    bad.push(format!("η_{i} ≠ η_{j}∘φ_{k} on e_{c}"));
                    break;
                }
            }
        }
        if self.torsion_from_d_eta() != self.torsion_from_horizontal_forms() {
            bad.push("the two closed forms of T disagree".into());
        }
        for a in 1..=m {
            for b in 1..=m {
                let (x, y) = (self.basis(a), self.basis(b));
                let tv = self.torsion_vector(&x, &y);
                for c in 1..=m {
                    if tv[c - 1] != self.torsion.eval_basis(&[a, b, c]) {
                        bad.push(format!("g(T(e_{a},e_{b}), e_{c}) ≠ T(e_{a},e_{b},e_{c})"));
                    }
                }
            }
        }
        bad
    }

    /// (∇^g_Y φ_i) as an endomorphism, from the closed Levi-Civita formula.
    pub fn lc_derivative_phi(&self, i: usize, y: &[ExactScalar]) -> Endo {
        let m = self.dim();
        let (j, k) = cyclic(i);
        let a = self.alpha_s();
        let amd = ExactScalar::real(&self.alpha - &self.delta);
        let cols: Vec<Vector> = (1..=m)
            .map(|c| {
                let x = self.basis(c);
                let gxy = vec_dot(&x, y);
                let mut v = vec_scale(&vec_sub(&vec_scale(&self.xi(i), &gxy), &vec_scale(y, &self.eta_at(i, &x))), &a);
                let t2 = vec_sub(
                    &vec_scale(&self.phi(j).apply(&x), &self.eta_at(k, y)),
                    &vec_scale(&self.phi(k).apply(&x), &self.eta_at(j, y)),
                );
                v = vec_sub(&v, &vec_scale(&t2, &(&amd * &ExactScalar::from_int(2))));
                let s3 = &self.eta_at(j, y) * &self.eta_at(j, &x) + &self.eta_at(k, y) * &self.eta_at(k, &x);
                v = vec_add(&v, &vec_scale(&self.xi(i), &(&amd * &s3)));
                let t4 = vec_add(&vec_scale(&self.xi(j), &self.eta_at(j, y)), &vec_scale(&self.xi(k), &self.eta_at(k, y)));
                vec_sub(&v, &vec_scale(&t4, &(&amd * &self.eta_at(i, &x))))
            })
            .collect();
        Endo::from_columns(&cols)
    }

    /// ∇^g_Y Φ_i = g(·, (∇^g_Y φ_i)·).
    pub fn lc_derivative_big_phi(&self, i: usize, y: &[ExactScalar]) -> MultiForm {
        lower_to_form(&self.lc_derivative_phi(i, y)).expect("derivative of a skew tensor is skew")
    }

    /// ∇^g_Y ξ_i = −αφ_i(Y) − (α−δ)[η_k(Y)ξ_j − η_j(Y)ξ_k].
    pub fn lc_derivative_xi(&self, i: usize, y: &[ExactScalar]) -> Vector {
        let (j, k) = cyclic(i);
        let amd = ExactScalar::real(&self.alpha - &self.delta);
        let first = vec_scale(&self.phi(i).apply(y), &-self.alpha_s());
        let br = vec_sub(&vec_scale(&self.xi(j), &self.eta_at(k, y)), &vec_scale(&self.xi(k), &self.eta_at(j, y)));
        vec_sub(&first, &vec_scale(&br, &amd))
    }

    /// (−2φ_i(X) + ξ_i·X − X·ξ_i)·ψ, the operator cutting out E_i.
    pub fn e_operator(&self, i: usize, x: &[ExactScalar], psi: &Spinor) -> Spinor {
        let a = psi.clifford_vector(&self.phi(i).apply(x)).scale(&ExactScalar::from_int(-2));
        let b = psi.clifford_vector(x).clifford_basis(i);
        let c = psi.clifford_basis(i).clifford_vector(x);
        a.add(&b).sub(&c)
    }

    pub fn in_e_fiber(&self, i: usize, psi: &Spinor) -> bool {
        (1..=self.dim()).all(|s| self.e_operator(i, &self.basis(s), psi).is_zero())
    }
}

/// Outcome of checking an identity over many inputs.
#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, holds: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !holds {
            self.violations.push(what());
        }
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

/// The two degree-three product identities and the Friedrich–Kath identity for ψ ∈ E_i,
/// over all frame vectors X (and Y).
pub fn verify_e_bundle_clifford_lemmas(frame: &SasakiFrame, i: usize, psi: &Spinor) -> Result<IdentityReport> {
    let mut rep = verify_degree_three_products(frame, i, psi)?;
    rep.merge(verify_friedrich_kath_identity(frame, i, psi));
    Ok(rep)
}

/// A_i(X)Φ_jψ and A_i(X)Φ_kψ in closed form for ψ ∈ E_i and every frame vector X.
pub fn verify_degree_three_products(frame: &SasakiFrame, i: usize, psi: &Spinor) -> Result<IdentityReport> {
    if !frame.in_e_fiber(i, psi) {
        return Err(Error::NotInFiber(format!("E_{i}")));
    }
    let (j, k) = cyclic(i);
    let m = frame.dim();
    let four = ExactScalar::from_int(4);
    let two = ExactScalar::from_int(2);
    let mut rep = IdentityReport::default();
    let phi_j_psi = psi.clifford_form(frame.big_phi(j));
    let phi_k_psi = psi.clifford_form(frame.big_phi(k));
    for s in 1..=m {
        let x = frame.basis(s);
        // A_i(X) Φ_j ψ = [8φ_k X − 2ξ_k X + 2X ξ_k − 4η_i(X)ξ_j + 4η_j(X)ξ_i] ψ
        let lhs = frame.e_operator(i, &x, &phi_j_psi);
        let rhs = psi
            .clifford_vector(&frame.phi(k).apply(&x))
            .scale(&ExactScalar::from_int(8))
            .sub(&psi.clifford_vector(&x).clifford_basis(k).scale(&two))
            .add(&psi.clifford_basis(k).clifford_vector(&x).scale(&two))
            .sub(&psi.clifford_basis(j).scale(&(&four * &frame.eta_at(i, &x))))
            .add(&psi.clifford_basis(i).scale(&(&four * &frame.eta_at(j, &x))));
        rep.record(lhs == rhs, || format!("product identity with Φ_{j} fails at X = e_{s}"));
        // A_i(X) Φ_k ψ = [−8φ_j X + 2ξ_j X − 2X ξ_j − 4η_i(X)ξ_k + 4η_k(X)ξ_i] ψ
        let lhs = frame.e_operator(i, &x, &phi_k_psi);
        let rhs = psi
            .clifford_vector(&frame.phi(j).apply(&x))
            .scale(&ExactScalar::from_int(-8))
            .add(&psi.clifford_vector(&x).clifford_basis(j).scale(&two))
            .sub(&psi.clifford_basis(j).clifford_vector(&x).scale(&two))
            .sub(&psi.clifford_basis(k).scale(&(&four * &frame.eta_at(i, &x))))
            .add(&psi.clifford_basis(i).scale(&(&four * &frame.eta_at(k, &x))));
        rep.record(lhs == rhs, || format!("product identity with Φ_{k} fails at X = e_{s}"));
    }
    Ok(rep)
}

/// [−2(g(X,Y)ξ_i − η_i(X)Y) − φ_i(Y)·X + X·φ_i(Y)]·ψ + A_i(X)(½ Y·ψ) = 0 for all frame X, Y.
pub fn verify_friedrich_kath_identity(frame: &SasakiFrame, i: usize, psi: &Spinor) -> IdentityReport {
    let m = frame.dim();
    let half = ExactScalar::from_ratio(1, 2);
    let mut rep = IdentityReport::default();
    for a in 1..=m {
        let x = frame.basis(a);
        for b in 1..=m {
            let y = frame.basis(b);
            let phy = frame.phi(i).apply(&y);
            let v = vec_sub(&vec_scale(&frame.xi(i), &vec_dot(&x, &y)), &vec_scale(&y, &frame.eta_at(i, &x)));
            let total = psi
                .clifford_vector(&v)
                .scale(&ExactScalar::from_int(-2))
                .sub(&psi.clifford_vector(&x).clifford_vector(&phy))
                .add(&psi.clifford_vector(&phy).clifford_vector(&x))
                .add(&frame.e_operator(i, &x, &psi.clifford_vector(&y).scale(&half)));
            rep.record(total.is_zero(), || format!("Friedrich–Kath identity fails at X = e_{a}, Y = e_{b}"));
        }
    }
    rep
}

/// Parameters of an H-homothetic deformation (α₀, δ₀) → (α, δ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub source: (Rational, Rational),
    pub target: (Rational, Rational),
}

impl DeformationParams {
    /// (α₀c/a, δ₀/c).
    pub fn deformed(&self) -> (Rational, Rational) {
        let (a0, d0) = &self.source;
        (a0 * &self.c / &self.a, d0 / &self.c)
    }

    pub fn constraints_hold(&self) -> bool {
        self.a.is_positive()
            && (&self.a + &self.b).is_positive()
            && !self.c.is_zero()
            && &self.c * &self.c == &self.a + &self.b
    }
}

pub fn deformation_params(alpha0: &Rational, delta0: &Rational, alpha: &Rational, delta: &Rational) -> Result<DeformationParams> {
    if delta.is_zero() || delta0.is_zero() || alpha.is_zero() || alpha0.is_zero() {
        return Err(Error::InvalidParameter("deformations need α, δ, α₀, δ₀ non-zero".into()));
    }
    let prod0 = alpha0 * delta0;
    let prod = alpha * delta;
    if prod0.is_positive() != prod.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "αδ = {} and α₀δ₀ = {} differ in sign: a deformation cannot change type",
            fmt_rational(&prod),
            fmt_rational(&prod0)
        )));
    }
    let c = delta0 / delta;
    let a = &prod0 / &prod;
    let b = &c * &c - &a;
    Ok(DeformationParams {
        a,
        b,
        c,
        source: (alpha0.clone(), delta0.clone()),
        target: (alpha.clone(), delta.clone()),
    })
}

/// H-homothetic deformation of the 3-Sasakian structure to a positive (α, δ) structure,
/// described in the 3-Sasakian adapted frame.
#[derive(Clone, Debug)]
pub struct Deformation {
    pub frame: SasakiFrame,
    pub alpha: Rational,
    pub delta: Rational,
    /// √(αδ) ∈ ℚ(√2).
    pub root: ExactScalar,
}

impl Deformation {
    pub fn new(n: usize, alpha: &Rational, delta: &Rational) -> Result<Self> {
        let prod = alpha * delta;
        if !alpha.is_positive() || !delta.is_positive() {
            return Err(Error::InvalidParameter("deformed Killing spinors need α, δ > 0".into()));
        }
        let root = field_sqrt(&prod).ok_or_else(|| {
            Error::InvalidParameter(format!("αδ = {} has no exact square root", fmt_rational(&prod)))
        })?;
        Ok(Deformation { frame: SasakiFrame::build(n, int(1), int(1))?, alpha: alpha.clone(), delta: delta.clone(), root })
    }

    fn alpha_s(&self) -> ExactScalar {
        ExactScalar::real(self.alpha.clone())
    }

    fn delta_s(&self) -> ExactScalar {
        ExactScalar::real(self.delta.clone())
    }

    /// Per-direction scale of σ: √(αδ) on H, δ on V.
    pub fn sigma_scales(&self) -> Vec<ExactScalar> {
        (1..=self.frame.dim()).map(|j| if j <= 3 { self.delta_s() } else { self.root.clone() }).collect()
    }

    pub fn sigma(&self) -> Endo {
        Endo::diagonal(&self.sigma_scales())
    }

    pub fn sigma_inverse(&self) -> Endo {
        let inv: Vec<ExactScalar> = self.sigma_scales().iter().map(|s| s.inv().expect("non-zero")).collect();
        Endo::diagonal(&inv)
    }

    /// Diagonal of g′ = (1/(αδ))g + ((α−δ)/(αδ²))Σ η_i⊗η_i in the reference frame.
    pub fn deformed_gram(&self) -> Vec<ExactScalar> {
        let prod = &self.alpha * &self.delta;
        let h = ExactScalar::real(int(1) / &prod);
        let v = ExactScalar::real(int(1) / &prod + (&self.alpha - &self.delta) / (&prod * &self.delta));
        (1..=self.frame.dim()).map(|j| if j <= 3 { v.clone() } else { h.clone() }).collect()
    }

    /// g′(σe_a, σe_b) = δ_ab for all frame pairs.
    pub fn sigma_is_isometry(&self) -> bool {
        let g = self.deformed_gram();
        let m = self.frame.dim();
        let sig = self.sigma();
        (0..m).all(|a| {
            (0..m).all(|b| {
                let sa = sig.column(a);
                let sb = sig.column(b);
                let val: ExactScalar = (0..m).fold(ExactScalar::zero(), |acc, r| acc + &(&sa[r] * &sb[r]) * &g[r]);
                val == if a == b { ExactScalar::one() } else { ExactScalar::zero() }
            })
        })
    }

    /// ∇^{g′}_X − ∇^g_X as the endomorphism Y ↦ ((δ−α)/δ) Σ [η_p(X)φ_pY + η_p(Y)φ_pX].
    pub fn lc_correction(&self, x: &[ExactScalar]) -> Endo {
        let f = &self.frame;
        let coef = ExactScalar::real((&self.delta - &self.alpha) / &self.delta);
        let cols: Vec<Vector> = (1..=f.dim())
            .map(|c| {
                let y = f.basis(c);
                let mut v = vec![ExactScalar::zero(); f.dim()];
                for p in 1..=3 {
                    v = vec_add(&v, &vec_scale(&f.phi(p).apply(&y), &f.eta_at(p, x)));
                    v = vec_add(&v, &vec_scale(&f.phi(p).apply(x), &f.eta_at(p, &y)));
                }
                vec_scale(&v, &coef)
            })
            .collect();
        Endo::from_columns(&cols)
    }

    /// ∇^σ_X − ∇^g_X as an endomorphism.
    pub fn sigma_correction(&self, x: &[ExactScalar]) -> Endo {
        let f = &self.frame;
        let one = ExactScalar::one();
        let c1 = &one - &self.delta_s().div(&self.root).expect("non-zero");
        let c2 = &one - &self.root.div(&self.delta_s()).expect("non-zero");
        let c3 = &one - &self.root.div(&self.alpha_s()).expect("non-zero");
        let cols: Vec<Vector> = (1..=f.dim())
            .map(|c| {
                let y = f.basis(c);
                let mut v = vec![ExactScalar::zero(); f.dim()];
                for p in 1..=3 {
                    v = vec_add(&v, &vec_scale(&f.xi(p), &(&c1 * &f.big_phi(p).eval(&[x, &y]))));
                    let px = f.phi(p).apply(x);
                    let e = f.eta_at(p, &y);
                    v = vec_add(&v, &vec_scale(&f.horizontal_part(&px), &(&c2 * &e)));
                    v = vec_sub(&v, &vec_scale(&f.vertical_part(&px), &(&c3 * &e)));
                }
                v
            })
            .collect();
        Endo::from_columns(&cols)
    }

    /// η′_p = η_p/δ.
    pub fn deformed_eta(&self, p: usize) -> MultiForm {
        self.frame.eta(p).scale_rational(&(int(1) / &self.delta))
    }

    /// Φ′_p(Y, Z) = g′(Y, φ_p Z).
    pub fn deformed_big_phi(&self, p: usize) -> MultiForm {
        let g = self.deformed_gram();
        let phi = self.frame.phi(p);
        let m = self.frame.dim();
        let mut f = MultiForm::zero(m);
        for a in 0..m {
            for b in (a + 1)..m {
                f.add_term((1 << a) | (1 << b), &g[a] * phi.get(a, b));
            }
        }
        f
    }

    /// τ_X = (α−√(αδ)) Σ η′_p∧(X⌟Φ′_p) for X ∈ H.
    pub fn tau_horizontal(&self, x: &[ExactScalar]) -> MultiForm {
        let coef = &self.alpha_s() - &self.root;
        let mut t = MultiForm::zero(self.frame.dim());
        for p in 1..=3 {
            let c = self.deformed_big_phi(p).contract(x).expect("dimension");
            t = t.add(&self.deformed_eta(p).wedge(&c).expect("dimension")).expect("dimension");
        }
        t.scale(&coef)
    }

    /// τ_{ξ′_i} = (α−δ)(Φ′_i)^H, where ξ′_i = δξ_i.
    pub fn tau_deformed_xi(&self, i: usize) -> MultiForm {
        self.deformed_big_phi(i)
            .restrict(self.frame.horizontal)
            .scale_rational(&(&self.alpha - &self.delta))
    }

    /// τ_V for any V, by linearity.
    pub fn tau(&self, v: &[ExactScalar]) -> MultiForm {
        let mut t = self.tau_horizontal(&self.frame.horizontal_part(v));
        let inv_delta = ExactScalar::real(int(1) / &self.delta);
        for i in 1..=3 {
            if !v[i - 1].is_zero() {
                t = t.add(&self.tau_deformed_xi(i).scale(&(&v[i - 1] * &inv_delta))).expect("dimension");
            }
        }
        t
    }

    /// The endomorphism A with g′(A Y, Z) = τ_V(Y, Z).
    pub fn tau_endo(&self, v: &[ExactScalar]) -> Endo {
        form_to_endo_first_slot(&self.tau(v), &self.deformed_gram())
    }

    /// τ computed from the two connection corrections agrees with its closed form for every frame vector.
    pub fn check_difference_tensor(&self) -> IdentityReport {
        let mut rep = IdentityReport::default();
        for s in 1..=self.frame.dim() {
            let x = self.frame.basis(s);
            let from_corrections = self.lc_correction(&x).sub(&self.sigma_correction(&x));
            rep.record(from_corrections == self.tau_endo(&x), || format!("difference tensor mismatch at e_{s}"));
        }
        rep
    }
}

/// A with g(A e_c, e_r) = ω(e_c, e_r), for a diagonal metric g.
pub fn form_to_endo_first_slot(form: &MultiForm, gram: &[ExactScalar]) -> Endo {
    let m = gram.len();
    let mut e = Endo::zero(m);
    for c in 1..=m {
        for r in 1..=m {
            if r == c {
                continue;
            }
            let val = form.eval_basis(&[c, r]);
            if !val.is_zero() {
                e.set(r - 1, c - 1, val.div(&gram[r - 1]).expect("metric is non-degenerate"));
            }
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::spin::{omega_spin, Spinor};

    fn frame(n: usize, a: i64, d: i64) -> SasakiFrame {
        SasakiFrame::build(n, int(a), int(d)).unwrap()
    }

    #[test]
    fn invariants_hold_in_dims_7_11_15() {
        for n in 2..=4 {
            for (a, d) in [(1, 1), (1, 2), (2, -3), (-1, 4)] {
                let f = frame(n, a, d);
                assert!(f.check_invariants().is_empty(), "{:?}", f.check_invariants());
            }
        }
    }

    #[test]
    fn horizontal_blocks_start_at_e4() {
        let f = frame(3, 1, 1);
        // φ₁ e₄ = e₅, φ₂ e₄ = e₆, φ₃ e₄ = e₇, and the last block ends at e_{4n−1}
        assert_eq!(f.phi(1).apply_basis(4), f.basis(5));
        assert_eq!(f.phi(2).apply_basis(4), f.basis(6));
        assert_eq!(f.phi(3).apply_basis(4), f.basis(7));
        assert_eq!(f.phi(1).apply_basis(10), f.basis(11));
        for i in 1..=3 {
            for (key, _) in f.big_phi(i).terms() {
                assert!(key >> f.dim() == 0);
            }
        }
    }

    #[test]
    fn big_phi_is_minus_half_sum_e_wedge_phi_e() {
        let f = frame(2, 1, 1);
        for i in 1..=3 {
            let mut s = MultiForm::zero(7);
            for j in 1..=7 {
                let w = MultiForm::one_form(7, j).wedge(&MultiForm::from_vector(&f.phi(i).apply_basis(j))).unwrap();
                s = s.add(&w).unwrap();
            }
            assert_eq!(s.scale_rational(&rat(-1, 2)), *f.big_phi(i));
        }
    }

    #[test]
    fn torsion_on_vertical_pair() {
        let f = frame(2, 1, 1);
        let t = f.torsion_vector(&f.xi(2), &f.xi(3));
        assert_eq!(t, vec_scale(&f.xi(1), &ExactScalar::from_int(-6)));
        assert_eq!(f.torsion_from_d_eta(), f.torsion);
    }

    #[test]
    fn parallel_case_has_zero_beta() {
        assert!(frame(2, 1, 2).beta.is_zero());
        assert_eq!(frame(2, 1, 1).beta, int(-2));
    }

    #[test]
    fn rejects_small_n_and_zero_alpha() {
        assert!(SasakiFrame::build(1, int(1), int(1)).is_err());
        assert!(SasakiFrame::build(2, int(0), int(1)).is_err());
    }

    #[test]
    fn deformation_parameter_examples() {
        let p = deformation_params(&int(1), &int(1), &int(1), &int(4)).unwrap();
        assert_eq!((p.a.clone(), p.b.clone(), p.c.clone()), (rat(1, 4), rat(-3, 16), rat(1, 4)));
        assert!(p.constraints_hold());
        assert_eq!(p.deformed(), (int(1), int(4)));
        let id = deformation_params(&int(1), &int(1), &int(1), &int(1)).unwrap();
        assert_eq!((id.a, id.b, id.c), (int(1), int(0), int(1)));
        // parallel source (α₀, 2α₀)
        let (a0, a, d) = (int(3), int(2), int(5));
        let p = deformation_params(&a0, &(int(2) * &a0), &a, &d).unwrap();
        assert_eq!(p.a, int(2) * &a0 * &a0 / (&a * &d));
        assert_eq!(p.b, int(2) * &a0 * &a0 * (int(2) * &a - &d) / (&a * &d * &d));
        assert_eq!(p.c, int(2) * &a0 / &d);
        assert!(p.constraints_hold());
        assert_eq!(p.deformed(), (a, d));
        assert!(deformation_params(&int(1), &int(1), &int(1), &int(-1)).is_err());
    }

    #[test]
    fn sigma_examples() {
        let id = Deformation::new(2, &int(1), &int(1)).unwrap();
        assert_eq!(id.sigma(), Endo::identity(7));
        let d = Deformation::new(2, &int(1), &int(4)).unwrap();
        let s = d.sigma();
        assert_eq!(s.apply_basis(4), vec_scale(&d.frame.basis(4), &ExactScalar::from_int(2)));
        assert_eq!(s.apply_basis(1), vec_scale(&d.frame.basis(1), &ExactScalar::from_int(4)));
        assert!(d.sigma_is_isometry());
        assert!(Deformation::new(2, &int(1), &int(3)).is_err());
        assert!(Deformation::new(2, &int(1), &int(2)).unwrap().sigma_is_isometry());
    }

    #[test]
    fn difference_tensor_matches_connection_corrections() {
        for (a, d) in [(1, 4), (4, 1), (1, 1), (9, 1), (1, 2)] {
            let def = Deformation::new(3, &int(a), &int(d)).unwrap();
            assert!(def.check_difference_tensor().ok(), "({a},{d})");
        }
        let id = Deformation::new(2, &int(2), &int(2)).unwrap();
        for s in 1..=7 {
            assert!(id.tau(&id.frame.basis(s)).is_zero());
        }
        let d = Deformation::new(2, &int(1), &int(4)).unwrap();
        let expect = d.deformed_big_phi(1).restrict(d.frame.horizontal).scale_rational(&int(-3));
        assert_eq!(d.tau_deformed_xi(1), expect);
    }

    #[test]
    fn lc_derivative_of_xi_is_skew_in_frame() {
        let f = frame(2, 2, 3);
        // g(∇_Y ξ_i, ξ_i) = 0
        for i in 1..=3 {
            for s in 1..=7 {
                let v = f.lc_derivative_xi(i, &f.basis(s));
                assert!(v[i - 1].is_zero());
            }
            assert!(f.lc_derivative_phi(i, &f.basis(5)).is_skew());
        }
    }

    #[test]
    fn clifford_lemmas_on_catalog_spinors() {
        let f = frame(2, 1, 1);
        let one = Spinor::one(2);
        let rep = verify_e_bundle_clifford_lemmas(&f, 1, &one).unwrap();
        assert!(rep.ok(), "{:?}", rep.violations);
        let w = omega_spin(3);
        let i = ExactScalar::i();
        // dim 11: Ψ_{E₂,0} = ω − i y₁ + ½ i y₁∧ω²
        let y1 = Spinor::y(3, 1);
        let psi = w.sub(&y1.scale(&i)).add(&y1.wedge(&w.wedge_power(2)).scale(&(&i * &ExactScalar::from_ratio(1, 2))));
        let f3 = frame(3, 1, 1);
        let rep = verify_e_bundle_clifford_lemmas(&f3, 2, &psi).unwrap();
        assert!(rep.ok(), "{:?}", rep.violations);
        assert!(verify_e_bundle_clifford_lemmas(&f, 1, &Spinor::y(2, 1)).is_err());
    }
}
