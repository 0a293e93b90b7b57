//! The homogeneous 3-(α,δ)-Sasaki model on Sp(2)/Sp(1) and its invariant connections.
//!
//! 𝔰𝔭(2) is realized by 2×2 quaternionic anti-Hermitian matrices:
//! 𝔨 = diag(Im ℍ, 0), 𝔥 = diag(0, Im ℍ), 𝔤₁ = off-diagonal [[0, b], [−b̄, 0]].
//! The model basis is ξ₁, ξ₂, ξ₃, e₄ … e₇ (adapted, orthonormal) followed by h₁, h₂, h₃.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::catalog::{build_ei, e_sum_basis};
use crate::error::{Error, Result};
use crate::exterior::{key_indices, lower_to_form, unit_vector, vec_is_zero, vec_scale, Endo, MultiForm, Vector};
use crate::sasaki::{cyclic, Deformation, IdentityReport, SasakiFrame};
use crate::scalar::{field_sqrt, fmt_rational, int, ExactScalar, Rational};
use crate::spin::{clifford_form, clifford_vector, joint_kernel, omega_spin, spin_lift, SpinOperator, Spinor};

/// Dimension of 𝔪.
pub const M: usize = 7;
/// Dimension of 𝔤.
pub const G: usize = 10;
const N: usize = 2;

pub const BASIS_NAMES: [&str; G] = ["xi1", "xi2", "xi3", "e4", "e5", "e6", "e7", "h1", "h2", "h3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Vertical,
    Horizontal,
    Isotropy,
}

pub fn part(a: usize) -> Part {
    match a {
        0..=2 => Part::Vertical,
        3..=6 => Part::Horizontal,
        _ => Part::Isotropy,
    }
}

/// Quaternion a + b i + c j + d k.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Quat([Rational; 4]);

impl Quat {
    fn zero() -> Self {
        Quat([int(0), int(0), int(0), int(0)])
    }

    fn unit(t: usize) -> Self {
        let mut q = Self::zero();
        q.0[t] = int(1);
        q
    }

    fn add(&self, o: &Quat) -> Quat {
        Quat([0, 1, 2, 3].map(|t| &self.0[t] + &o.0[t]))
    }

    fn sub(&self, o: &Quat) -> Quat {
        Quat([0, 1, 2, 3].map(|t| &self.0[t] - &o.0[t]))
    }

    fn conj(&self) -> Quat {
        Quat([self.0[0].clone(), -&self.0[1], -&self.0[2], -&self.0[3]])
    }

    fn mul(&self, o: &Quat) -> Quat {
        let [a1, b1, c1, d1] = &self.0;
        let [a2, b2, c2, d2] = &o.0;
        Quat([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

type QMat = [[Quat; 2]; 2];

fn qmat_mul(x: &QMat, y: &QMat) -> QMat {
    let e = |r: usize, c: usize| x[r][0].mul(&y[0][c]).add(&x[r][1].mul(&y[1][c]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn qmat_sub(x: &QMat, y: &QMat) -> QMat {
    let e = |r: usize, c: usize| x[r][c].sub(&y[r][c]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn raw_element(a: usize) -> QMat {
    let z = Quat::zero;
    match part(a) {
        Part::Vertical => [[Quat::unit(a + 1), z()], [z(), z()]],
        Part::Horizontal => {
            let b = Quat::unit(a - 3);
            let lower = Quat::zero().sub(&b.conj());
            [[z(), b], [lower, z()]]
        }
        Part::Isotropy => [[z(), z()], [z(), Quat::unit(a - 6)]],
    }
}

fn raw_decompose(x: &QMat) -> Vec<Rational> {
    let mut v = vec![int(0); G];
    for r in 0..3 {
        v[r] = x[0][0].0[r + 1].clone();
        v[7 + r] = x[1][1].0[r + 1].clone();
    }
    for t in 0..4 {
        v[3 + t] = x[0][1].0[t].clone();
    }
    v
}

/// Structure constants of 𝔰𝔭(2) in the raw matrix basis k₁..k₃, w₁, w_i, w_j, w_k, h₁..h₃.
fn raw_brackets() -> Vec<Vec<Vec<Rational>>> {
    let els: Vec<QMat> = (0..G).map(raw_element).collect();
    (0..G)
        .map(|a| {
            (0..G)
                .map(|b| raw_decompose(&qmat_sub(&qmat_mul(&els[a], &els[b]), &qmat_mul(&els[b], &els[a]))))
                .collect()
        })
        .collect()
}

fn killing_matrix(c: &[Vec<Vec<ExactScalar>>]) -> Vec<Vec<ExactScalar>> {
    // κ(a, b) = Σ_{c,d} C_{ac}^d C_{bd}^c
    (0..G)
        .map(|a| {
            (0..G)
                .map(|b| {
                    let mut s = ExactScalar::zero();
                    for x in 0..G {
                        for y in 0..G {
                            let l = &c[a][x][y];
                            let r = &c[b][y][x];
                            if !l.is_zero() && !r.is_zero() {
                                s += l * r;
                            }
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Operators on which invariant-connection curvature can be formed.
pub trait LinOp: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, c: &ExactScalar) -> Self;
    fn then(&self, o: &Self) -> Self;
}

impl LinOp for Endo {
    fn zero_like(&self) -> Self {
        Endo::zero(self.m)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, c: &ExactScalar) -> Self {
        self.scale(c)
    }
    fn then(&self, o: &Self) -> Self {
        self.compose(o)
    }
}

impl LinOp for SpinOperator {
    fn zero_like(&self) -> Self {
        SpinOperator::zero(self.n)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, c: &ExactScalar) -> Self {
        self.scale(c)
    }
    fn then(&self, o: &Self) -> Self {
        self.compose(o)
    }
}

fn combine<T: LinOp>(ops: &[T], coeffs: &[ExactScalar]) -> T {
    let mut out = ops[0].zero_like();
    for (op, c) in ops.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.plus(&op.times(c));
        }
    }
    out
}

/// A Nomizu map: Λ(e_a) for each 𝔪-basis vector.
pub type NomizuMap = Vec<Endo>;

/// Lie-algebra data of the model at (α, δ) in the adapted basis.
#[derive(Clone, Debug)]
pub struct HomogeneousModel {
    pub alpha: Rational,
    pub delta: Rational,
    /// bracket[a][b][c]: coefficient of basis element c in [b_a, b_b].
    bracket: Vec<Vec<Vec<ExactScalar>>>,
    pub lambda0: Rational,
    pub lambda1: Rational,
    /// Scale of ξ_i relative to the raw 𝔨 generators, and the square of the 𝔤₁ scale.
    pub xi_scale: Rational,
    pub horizontal_scale_sq: Rational,
    pub frame: SasakiFrame,
}

impl HomogeneousModel {
    /// The compact model Sp(2)/Sp(1); requires αδ > 0.
    pub fn build_s7(alpha: &Rational, delta: &Rational) -> Result<Self> {
        if !(alpha * delta).is_positive() {
            return Err(Error::InvalidParameter(format!(
                "S⁷ model needs αδ > 0, got α = {}, δ = {}",
                fmt_rational(alpha),
                fmt_rational(delta)
            )));
        }
        Self::build_formal(alpha, delta)
    }

    /// Same construction for any non-zero α, δ; αδ < 0 realizes the non-compact dual inside 𝔰𝔭(2)^ℂ.
    pub fn build_formal(alpha: &Rational, delta: &Rational) -> Result<Self> {
        if alpha.is_zero() || delta.is_zero() {
            return Err(Error::InvalidParameter("model needs α ≠ 0 and δ ≠ 0".into()));
        }
        let frame = SasakiFrame::build(N, alpha.clone(), delta.clone())?;
        let raw = raw_brackets();
        // Calibrate the scales from dη_i = 2αΦ_i + 2(α−δ)η_j∧η_k on (ξ₂, ξ₃) and (e₄, e₅).
        // With ξ_i = c₀k_i: dη₁(ξ₂, ξ₃) = −c₀·C, where [k₂, k₃] = C k₁.
        let c_vert = &raw[1][2][0];
        let target_vv = (frame.d_eta(1).eval_basis(&[2, 3])).as_rational().expect("rational");
        let c0 = -target_vv / c_vert;
        // With e = ρ w: dη₁(e₄, e₅) = −(ρ²/c₀)·C′, where [w₁, w_i]_𝔨 = C′ k₁.
        let c_hor = &raw[3][4][0];
        let target_hh = frame.d_eta(1).eval_basis(&[4, 5]).as_rational().expect("rational");
        let rho_sq = -target_hh * &c0 / c_hor;
        // scale of b_a as (rational factor, power of ρ)
        let scale = |a: usize| -> (Rational, u32) {
            match part(a) {
                Part::Vertical => (c0.clone(), 0),
                Part::Horizontal => (int(1), 1),
                Part::Isotropy => (int(1), 0),
            }
        };
        let mut bracket = vec![vec![vec![ExactScalar::zero(); G]; G]; G];
        for a in 0..G {
            for b in 0..G {
                for c in 0..G {
                    let r = &raw[a][b][c];
                    if r.is_zero() {
                        continue;
                    }
                    let (fa, pa) = scale(a);
                    let (fb, pb) = scale(b);
                    let (fc, pc) = scale(c);
                    let power = pa as i32 + pb as i32 - pc as i32;
                    debug_assert!(power % 2 == 0, "odd power of ρ");
                    let mut coef = r * &fa * &fb / &fc;
                    for _ in 0..(power / 2).max(0) {
                        coef *= &rho_sq;
                    }
                    for _ in 0..(-power / 2).max(0) {
                        coef /= &rho_sq;
                    }
                    bracket[a][b][c] = ExactScalar::real(coef);
                }
            }
        }
        let kappa = killing_matrix(&bracket);
        let lambda0 = int(1) / kappa[0][0].as_rational().expect("rational");
        let lambda1 = int(1) / kappa[3][3].as_rational().expect("rational");
        Ok(HomogeneousModel {
            alpha: alpha.clone(),
            delta: delta.clone(),
            bracket,
            lambda0,
            lambda1,
            xi_scale: c0,
            horizontal_scale_sq: rho_sq,
            frame,
        })
    }

    /// Data with prescribed structure constants (used by the dual construction).
    pub fn from_brackets(alpha: &Rational, delta: &Rational, bracket: Vec<Vec<Vec<ExactScalar>>>) -> Result<Self> {
        let frame = SasakiFrame::build(N, alpha.clone(), delta.clone())?;
        let kappa = killing_matrix(&bracket);
        let k0 = kappa[0][0].as_rational().ok_or_else(|| Error::Failed("non-real Killing form".into()))?;
        let k1 = kappa[3][3].as_rational().ok_or_else(|| Error::Failed("non-real Killing form".into()))?;
        if k0.is_zero() || k1.is_zero() {
            return Err(Error::Failed("degenerate Killing form".into()));
        }
        Ok(HomogeneousModel {
            alpha: alpha.clone(),
            delta: delta.clone(),
            bracket,
            lambda0: int(1) / k0,
            lambda1: int(1) / k1,
            xi_scale: Rational::zero(),
            horizontal_scale_sq: Rational::zero(),
            frame,
        })
    }

    pub fn brackets(&self) -> &Vec<Vec<Vec<ExactScalar>>> {
        &self.bracket
    }

    pub fn alpha_s(&self) -> ExactScalar {
        ExactScalar::real(self.alpha.clone())
    }

    pub fn delta_s(&self) -> ExactScalar {
        ExactScalar::real(self.delta.clone())
    }

    pub fn beta(&self) -> Rational {
        self.frame.beta.clone()
    }

    /// [b_a, b_b] as a 10-vector.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[ExactScalar] {
        &self.bracket[a][b]
    }

    pub fn bracket(&self, x: &[ExactScalar], y: &[ExactScalar]) -> Vector {
        let mut out = vec![ExactScalar::zero(); G];
        for a in 0..G {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..G {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for c in 0..G {
                    let k = &self.bracket[a][b][c];
                    if !k.is_zero() {
                        out[c] += &xy * k;
                    }
                }
            }
        }
        out
    }

    /// proj_𝔪[e_a, e_b] (0-based 𝔪 indices).
    pub fn bracket_m(&self, a: usize, b: usize) -> Vector {
        self.bracket[a][b][..M].to_vec()
    }

    /// proj_𝔥[e_a, e_b] in the h₁, h₂, h₃ basis.
    pub fn bracket_h(&self, a: usize, b: usize) -> Vector {
        self.bracket[a][b][M..].to_vec()
    }

    /// ad(b_a) restricted to 𝔪 and projected to 𝔪.
    pub fn ad_m(&self, a: usize) -> Endo {
        let cols: Vec<Vector> = (0..M).map(|c| self.bracket[a][c][..M].to_vec()).collect();
        Endo::from_columns(&cols)
    }

    /// Isotropy action of h_r (r = 0, 1, 2) on 𝔪.
    pub fn isotropy(&self, r: usize) -> Endo {
        self.ad_m(M + r)
    }

    pub fn killing_form(&self) -> Vec<Vec<ExactScalar>> {
        killing_matrix(&self.bracket)
    }

    /// φ_i = (1/(2δ)) ad(ξ_i)|_𝔨 + (1/δ) ad(ξ_i)|_𝔤₁.
    pub fn phi_from_ad(&self, i: usize) -> Endo {
        let ad = self.ad_m(i - 1);
        let vert = ExactScalar::real(int(1) / (int(2) * &self.delta));
        let hor = ExactScalar::real(int(1) / &self.delta);
        let cols: Vec<Vector> = (0..M)
            .map(|c| {
                let s = if c < 3 { &vert } else { &hor };
                vec_scale(&ad.column(c), s)
            })
            .collect();
        Endo::from_columns(&cols)
    }

    /// Grading, [𝔥,𝔨] = 0 and Jacobi; returns the violations.
    pub fn check_lie_structure(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let graded = |a: usize| if part(a) == Part::Horizontal { 1 } else { 0 };
        for a in 0..G {
            for b in 0..G {
                let v = &self.bracket[a][b];
                if v.iter().zip(self.bracket[b][a].iter()).any(|(x, y)| !(x + y).is_zero()) {
                    bad.push(format!("bracket not antisymmetric on ({}, {})", BASIS_NAMES[a], BASIS_NAMES[b]));
                }
                let deg = (graded(a) + graded(b)) % 2;
                for c in 0..G {
                    if !v[c].is_zero() && graded(c) != deg {
                        bad.push(format!("grading broken: [{}, {}] has a {} component", BASIS_NAMES[a], BASIS_NAMES[b], BASIS_NAMES[c]));
                    }
                }
                if part(a) == Part::Isotropy && part(b) == Part::Vertical && !vec_is_zero(v) {
                    bad.push(format!("[{}, {}] ≠ 0", BASIS_NAMES[a], BASIS_NAMES[b]));
                }
            }
        }
        for a in 0..G {
            for b in (a + 1)..G {
                for c in (b + 1)..G {
                    let e = |j: usize| unit_vector(G, j + 1);
                    let t1 = self.bracket(&e(a), &self.bracket(&e(b), &e(c)));
                    let t2 = self.bracket(&e(b), &self.bracket(&e(c), &e(a)));
                    let t3 = self.bracket(&e(c), &self.bracket(&e(a), &e(b)));
                    if (0..G).any(|k| !(&(&t1[k] + &t2[k]) + &t3[k]).is_zero()) {
                        bad.push(format!("Jacobi fails on ({}, {}, {})", BASIS_NAMES[a], BASIS_NAMES[b], BASIS_NAMES[c]));
                    }
                }
            }
        }
        bad
    }

    /// dη-axiom, orthonormality of the Killing-form metric, and the adapted shape of Φ_i.
    pub fn check_calibration(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let f = &self.frame;
        for i in 1..=3 {
            let target = f.d_eta(i);
            for a in 0..M {
                for b in 0..M {
                    // dη_i(X, Y) = −η_i(proj_𝔪[X, Y])
                    let lhs = -&self.bracket[a][b][i - 1];
                    if lhs != target.eval_basis(&[a + 1, b + 1]) {
                        bad.push(format!("dη_{i}({}, {}) off", BASIS_NAMES[a], BASIS_NAMES[b]));
                    }
                }
            }
            match lower_to_form(&self.phi_from_ad(i)) {
                Ok(form) if &form == f.big_phi(i) => {}
                _ => bad.push(format!("φ_{i} from ad(ξ_{i}) does not match the adapted frame")),
            }
        }
        let kappa = self.killing_form();
        let l0 = ExactScalar::real(self.lambda0.clone());
        let l1 = ExactScalar::real(self.lambda1.clone());
        for a in 0..M {
            for b in 0..M {
                let g = match (part(a), part(b)) {
                    (Part::Vertical, Part::Vertical) => &l0 * &kappa[a][b],
                    (Part::Horizontal, Part::Horizontal) => &l1 * &kappa[a][b],
                    _ => ExactScalar::zero(),
                };
                let expect = if a == b { ExactScalar::one() } else { ExactScalar::zero() };
                if g != expect {
                    bad.push(format!("g({}, {}) = {} in the calibrated basis", BASIS_NAMES[a], BASIS_NAMES[b], g.short()));
                }
            }
            // 𝔨 ⟂ 𝔤₁ for the Killing form itself
            for b in 3..M {
                if a < 3 && !kappa[a][b].is_zero() {
                    bad.push("Killing form pairs 𝔨 with 𝔤₁".into());
                }
            }
        }
        bad
    }

    /// Λ^g from ½proj_𝔪[X,Y] + U(X,Y) for a diagonal metric on 𝔪.
    pub fn nomizu_lc_from_u(&self, gram: &[ExactScalar]) -> NomizuMap {
        let half = ExactScalar::from_ratio(1, 2);
        (0..M)
            .map(|a| {
                let cols: Vec<Vector> = (0..M)
                    .map(|b| {
                        (0..M)
                            .map(|c| {
                                // 2 g(U(e_a,e_b), e_c) = g([e_c,e_a]_𝔪, e_b) + g(e_a, [e_c,e_b]_𝔪)
                                let u2 = &(&gram[b] * &self.bracket[c][a][b]) + &(&gram[a] * &self.bracket[c][b][a]);
                                let u = &u2 * &half;
                                let u = u.div(&gram[c]).expect("metric non-degenerate");
                                &(&self.bracket[a][b][c] * &half) + &u
                            })
                            .collect()
                    })
                    .collect();
                Endo::from_columns(&cols)
            })
            .collect()
    }

    pub fn nomizu_lc(&self) -> NomizuMap {
        self.nomizu_lc_from_u(&vec![ExactScalar::one(); M])
    }

    /// Case-split closed formula for Λ^g.
    pub fn nomizu_lc_explicit(&self) -> NomizuMap {
        let half = ExactScalar::from_ratio(1, 2);
        let ratio = ExactScalar::real(&self.alpha / &self.delta);
        let vh = &ExactScalar::one() - &ratio;
        (0..M)
            .map(|a| {
                let cols: Vec<Vector> = (0..M)
                    .map(|b| {
                        let c = match (part(a), part(b)) {
                            (Part::Vertical, Part::Horizontal) => &vh,
                            (Part::Horizontal, Part::Vertical) => &ratio,
                            _ => &half,
                        };
                        vec_scale(&self.bracket_m(a, b), c)
                    })
                    .collect();
                Endo::from_columns(&cols)
            })
            .collect()
    }

    /// Canonical connection: ((δ−2α)/δ) ad on vertical V, zero on horizontal V.
    pub fn nomizu_canonical(&self) -> NomizuMap {
        let c = ExactScalar::real((&self.delta - int(2) * &self.alpha) / &self.delta);
        (0..M)
            .map(|a| if a < 3 { self.ad_m(a).scale(&c) } else { Endo::zero(M) })
            .collect()
    }

    /// T(e_a, e_b) = Λ(e_a)e_b − Λ(e_b)e_a − proj_𝔪[e_a, e_b].
    pub fn torsion_vector(&self, lam: &NomizuMap, a: usize, b: usize) -> Vector {
        (0..M)
            .map(|c| &(lam[a].get(c, b) - lam[b].get(c, a)) - &self.bracket[a][b][c])
            .collect()
    }

    /// Torsion lowered to a 3-form with the orthonormal metric; fails if not totally skew.
    pub fn torsion_form(&self, lam: &NomizuMap) -> Result<MultiForm> {
        let mut t = MultiForm::zero(M);
        for a in 0..M {
            for b in 0..M {
                let v = self.torsion_vector(lam, a, b);
                for c in (b + 1)..M {
                    if a < b {
                        t.add_term((1 << a) | (1 << b) | (1 << c), v[c].clone());
                    }
                }
            }
        }
        for a in 0..M {
            for b in 0..M {
                let v = self.torsion_vector(lam, a, b);
                for c in 0..M {
                    if v[c] != t.eval_basis(&[a + 1, b + 1, c + 1]) {
                        return Err(Error::Failed("torsion is not a 3-form".into()));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Exterior derivative of an invariant form: dω(X₀…X_k) = Σ_{i<j} (−1)^{i+j} ω([X_i,X_j]_𝔪, X₀ … X̂_i … X̂_j … X_k).
    pub fn invariant_d(&self, form: &MultiForm) -> MultiForm {
        let k = form.degree().unwrap_or(0);
        let mut out = MultiForm::zero(M);
        for key in 0u64..(1 << M) {
            if key.count_ones() as usize != k + 1 {
                continue;
            }
            let idx: Vec<usize> = key_indices(key).iter().map(|j| j - 1).collect();
            let mut total = ExactScalar::zero();
            for i in 0..idx.len() {
                for j in (i + 1)..idx.len() {
                    let br = self.bracket_m(idx[i], idx[j]);
                    if vec_is_zero(&br) {
                        continue;
                    }
                    let rest: Vec<Vector> = idx
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != i && t != j)
                        .map(|(_, &x)| unit_vector(M, x + 1))
                        .collect();
                    let mut args: Vec<&[ExactScalar]> = vec![&br];
                    args.extend(rest.iter().map(|v| v.as_slice()));
                    let val = form.eval(&args);
                    if (i + j) % 2 == 1 {
                        total -= &val;
                    } else {
                        total += &val;
                    }
                }
            }
            out.add_term(key, total);
        }
        out
    }

    /// R(e_a, e_b) = [A(e_a), A(e_b)] − A(proj_𝔪[e_a,e_b]) − ρ(proj_𝔥[e_a,e_b]).
    pub fn curvature<T: LinOp>(&self, lam: &[T], iso: &[T], a: usize, b: usize) -> T {
        let comm = lam[a].then(&lam[b]).minus(&lam[b].then(&lam[a]));
        comm.minus(&combine(lam, &self.bracket_m(a, b))).minus(&combine(iso, &self.bracket_h(a, b)))
    }

    pub fn isotropy_endos(&self) -> Vec<Endo> {
        (0..3).map(|r| self.isotropy(r)).collect()
    }

    pub fn isotropy_spin(&self) -> Vec<SpinOperator> {
        self.isotropy_endos().iter().map(|e| spin_lift(N, e)).collect()
    }

    pub fn spin_nomizu(&self, lam: &NomizuMap) -> Vec<SpinOperator> {
        lam.iter().map(|e| spin_lift(N, e)).collect()
    }

    /// Λ(ad(h)X) = [ad(h), Λ(X)] for the isotropy generators.
    pub fn nomizu_is_equivariant(&self, lam: &NomizuMap) -> bool {
        (0..3).all(|r| {
            let h = self.isotropy(r);
            (0..M).all(|a| combine(lam, &h.column(a)) == h.commutator(&lam[a]))
        })
    }

    pub fn is_invariant(&self, u: &Spinor) -> bool {
        self.isotropy_spin().iter().all(|op| op.apply(u).is_zero())
    }

    /// Sectional-curvature-one oracle: R(X,Y)Z = g(Y,Z)X − g(X,Z)Y.
    pub fn is_round_sphere(&self, lam: &NomizuMap) -> bool {
        let iso = self.isotropy_endos();
        (0..M).all(|a| {
            (0..M).all(|b| {
                let r = self.curvature(lam, &iso, a, b);
                (0..M).all(|c| {
                    let mut expect = vec![ExactScalar::zero(); M];
                    if b == c {
                        expect[a] += ExactScalar::one();
                    }
                    if a == c {
                        expect[b] -= ExactScalar::one();
                    }
                    r.column(c) == expect
                })
            })
        })
    }

    /// Versioned plain-text dump for regression diffs.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "sasaki-model v1");
        let _ = writeln!(s, "alpha {}", fmt_rational(&self.alpha));
        let _ = writeln!(s, "delta {}", fmt_rational(&self.delta));
        let _ = writeln!(s, "lambda0 {}", fmt_rational(&self.lambda0));
        let _ = writeln!(s, "lambda1 {}", fmt_rational(&self.lambda1));
        let _ = writeln!(s, "basis {}", BASIS_NAMES.join(" "));
        for a in 0..G {
            for b in (a + 1)..G {
                let v = &self.bracket[a][b];
                if vec_is_zero(v) {
                    continue;
                }
                let terms: Vec<String> = (0..G)
                    .filter(|&c| !v[c].is_zero())
                    .map(|c| format!("{}*{}", v[c].short(), BASIS_NAMES[c]))
                    .collect();
                let _ = writeln!(s, "[{},{}] = {}", BASIS_NAMES[a], BASIS_NAMES[b], terms.join(" + "));
            }
        }
        s
    }
}

fn field(x: &Rational) -> ExactScalar {
    ExactScalar::real(x.clone())
}

/// Explicit vs U-tensor Levi-Civita maps: equal, skew, torsion-free and equivariant.
pub fn verify_lc_maps(model: &HomogeneousModel) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let lc_u = model.nomizu_lc();
    let lc_x = model.nomizu_lc_explicit();
    for a in 0..M {
        rep.record(lc_u[a] == lc_x[a], || format!("Levi-Civita Nomizu maps differ at {}", BASIS_NAMES[a]));
        rep.record(lc_u[a].is_skew(), || format!("Λ^g({}) not skew", BASIS_NAMES[a]));
        for b in 0..M {
            rep.record(vec_is_zero(&model.torsion_vector(&lc_u, a, b)), || {
                format!("Λ^g has torsion on ({}, {})", BASIS_NAMES[a], BASIS_NAMES[b])
            });
        }
    }
    rep.record(model.nomizu_is_equivariant(&lc_u), || "Λ^g is not isotropy-equivariant".into());
    rep
}

/// Canonical map: equivariant, torsion and dT equal to their closed formulas, φ_i rotated by β.
pub fn verify_canonical_map(model: &HomogeneousModel) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let can = model.nomizu_canonical();
    rep.record(model.nomizu_is_equivariant(&can), || "Λ is not isotropy-equivariant".into());
    match model.torsion_form(&can) {
        Ok(t) => rep.record(t == model.frame.torsion, || "canonical torsion differs from the closed formula".into()),
        Err(e) => rep.record(false, || e.to_string()),
    }
    // Λ(X)·φ_i = β(η_k(X)φ_j − η_j(X)φ_k)
    let beta = field(&model.beta());
    let f = &model.frame;
    for i in 1..=3 {
        let (j, k) = cyclic(i);
        for a in 0..M {
            let lhs = can[a].commutator(f.phi(i));
            let x = unit_vector(M, a + 1);
            let rhs = f.phi(j).scale(&f.eta_at(k, &x)).sub(&f.phi(k).scale(&f.eta_at(j, &x))).scale(&beta);
            rep.record(lhs == rhs, || format!("∇φ_{i} along {} is not β-rotation", BASIS_NAMES[a]));
        }
    }
    rep.record(model.invariant_d(&model.frame.torsion) == model.frame.dtorsion, || "dT differs from its closed formula".into());
    rep
}

/// Levi-Civita derivatives of φ_i and ξ_i on the model against the pointwise closed formulas.
pub fn verify_lc_derivatives(model: &HomogeneousModel) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let lc_u = model.nomizu_lc();
    let f = &model.frame;
    for i in 1..=3 {
        for a in 0..M {
            let x = unit_vector(M, a + 1);
            let lhs = lc_u[a].commutator(f.phi(i));
            rep.record(lhs == f.lc_derivative_phi(i, &x), || format!("∇^g φ_{i} along {} differs", BASIS_NAMES[a]));
            let lhs = lc_u[a].apply(&f.xi(i));
            rep.record(lhs == f.lc_derivative_xi(i, &x), || format!("∇^g ξ_{i} along {} differs", BASIS_NAMES[a]));
        }
    }
    rep
}

pub fn verify_connections(model: &HomogeneousModel) -> IdentityReport {
    let mut rep = verify_lc_maps(model);
    rep.merge(verify_canonical_map(model));
    rep.merge(verify_lc_derivatives(model));
    rep
}

/// Pointwise checks behind the flatness argument: twisted traces, the curvature difference identity
/// and the E_i projections of R^g.
pub fn verify_curvature_traces(model: &HomogeneousModel) -> IdentityReport {
    verify_curvature_family(model, &[CurvatureFamily::Difference, CurvatureFamily::TwistedCurvature, CurvatureFamily::TwistedTorsion, CurvatureFamily::Projection])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvatureFamily {
    /// R^g against R, g(T,T) and dT on all basis quadruples.
    Difference,
    /// φ_i-twisted trace of the canonical curvature.
    TwistedCurvature,
    /// φ_i-twisted traces of g(T,T) and dT.
    TwistedTorsion,
    /// E_i projections of the spinorial R^g.
    Projection,
}

pub fn verify_curvature_family(model: &HomogeneousModel, families: &[CurvatureFamily]) -> IdentityReport {
    let want = |f: CurvatureFamily| families.contains(&f);
    let mut rep = IdentityReport::default();
    let f = &model.frame;
    let n = int(N as i64);
    let (al, de, be) = (model.alpha.clone(), model.delta.clone(), model.beta());
    let lc = model.nomizu_lc();
    let can = model.nomizu_canonical();
    let iso = model.isotropy_endos();
    let table = |lam: &NomizuMap, needed: bool| -> Vec<Vec<Endo>> {
        if !needed {
            return Vec::new();
        }
        (0..M).map(|a| (0..M).map(|b| model.curvature(lam, &iso, a, b)).collect()).collect()
    };
    let rg = table(&lc, want(CurvatureFamily::Difference));
    let rc = table(&can, want(CurvatureFamily::Difference) || want(CurvatureFamily::TwistedCurvature));
    let dt = model.invariant_d(&f.torsion);
    let tvt: Vec<Vec<Vector>> =
        (0..M).map(|a| (0..M).map(|b| f.torsion_vector(&unit_vector(M, a + 1), &unit_vector(M, b + 1))).collect()).collect();
    let tv = |a: usize, b: usize| &tvt[a][b];
    let four_t = |a: usize, b: usize, c: usize, d: usize| {
        tv(a, b).iter().zip(tv(c, d)).fold(ExactScalar::zero(), |acc, (p, q)| acc + p * q)
    };
    let quarter = ExactScalar::from_ratio(1, 4);
    let eighth = ExactScalar::from_ratio(1, 8);
    // R^g(X,Y,Z,V) = R(X,Y,Z,V) − ¼ g(T(X,Y), T(Z,V)) − ⅛ dT(X,Y,Z,V), with R(X,Y,Z,V) = g(R(X,Y)Z, V)
    for a in (0..M).filter(|_| want(CurvatureFamily::Difference)) {
        for b in 0..M {
            for c in 0..M {
                for d in 0..M {
                    let lhs = rg[a][b].get(d, c).clone();
                    let rhs = &(rc[a][b].get(d, c) - &(&quarter * &four_t(a, b, c, d)))
                        - &(&eighth * &dt.eval_basis(&[a + 1, b + 1, c + 1, d + 1]));
                    rep.record(lhs == rhs, || format!("curvature difference fails at ({a},{b},{c},{d})"));
                }
            }
        }
    }
    // twisted traces
    let twisted = want(CurvatureFamily::TwistedCurvature) || want(CurvatureFamily::TwistedTorsion);
    for i in (1..=3).filter(|_| twisted) {
        let phi = f.phi(i);
        for a in 0..M {
            for b in 0..M {
                let pa = part(a);
                let pb = part(b);
                let phi_ab = f.big_phi(i).eval_basis(&[a + 1, b + 1]);
                let (mut tr_r, mut tr_t, mut tr_dt) = (ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero());
                for s in 0..M {
                    let es = unit_vector(M, s + 1);
                    let pes = phi.apply(&es);
                    if want(CurvatureFamily::TwistedCurvature) {
                        let rs = rc[a][b].column(s);
                        tr_r += rs.iter().zip(&pes).fold(ExactScalar::zero(), |acc, (p, q)| acc + p * q);
                    }
                    let tab = tv(a, b);
                    let ts = f.torsion_vector(&es, &pes);
                    tr_t += tab.iter().zip(&ts).fold(ExactScalar::zero(), |acc, (p, q)| acc + p * q);
                    let ea = unit_vector(M, a + 1);
                    let eb = unit_vector(M, b + 1);
                    tr_dt += dt.eval(&[&ea, &eb, &es, &pes]);
                }
                let (er, et, edt) = match (pa, pb) {
                    (Part::Horizontal, Part::Horizontal) => (
                        int(4) * &n * &al * &be,
                        int(-16) * (&n - int(1)) * &al * &al + int(8) * &al * (&de - int(4) * &al),
                        int(-16) * &al * &al * (int(2) * &n - int(1)) + int(8) * &al * &be,
                    ),
                    (Part::Vertical, Part::Vertical) => (
                        int(8) * &n * &al * &be,
                        int(8) * (&de - int(4) * &al) * (int(2) * (&n + int(1)) * &al - &de),
                        int(32) * (&n - int(1)) * &al * (&de - int(2) * &al),
                    ),
                    _ => (int(0), int(0), int(0)),
                };
                if want(CurvatureFamily::TwistedCurvature) {
                    rep.record(tr_r == &field(&er) * &phi_ab, || format!("twisted trace of R, i={i}, ({a},{b})"));
                }
                if want(CurvatureFamily::TwistedTorsion) {
                    rep.record(tr_t == &field(&et) * &phi_ab, || format!("twisted trace of g(T,T), i={i}, ({a},{b})"));
                    rep.record(tr_dt == &field(&edt) * &phi_ab, || format!("twisted trace of dT, i={i}, ({a},{b})"));
                }
            }
        }
    }
    // E_i projections of the spinorial Levi-Civita curvature
    let lam_s = model.spin_nomizu(&lc);
    let iso_s = model.isotropy_spin();
    let vv = int(-2) * (&n - int(1)) * &al * (&al - &de) + &de * &de / int(2);
    let hh = (int(2) * &n - int(1)) * &al * &de - (int(2) * &n - rat32()) * &al * &al;
    for i in (1..=3).filter(|_| want(CurvatureFamily::Projection)) {
        let bundle = build_ei(f, i);
        for a in 0..M {
            for b in 0..M {
                let r = model.curvature(&lam_s, &iso_s, a, b);
                let coef = match (part(a), part(b)) {
                    (Part::Vertical, Part::Vertical) => vv.clone(),
                    (Part::Horizontal, Part::Horizontal) => hh.clone(),
                    _ => int(0),
                };
                let c = &field(&coef) * &f.big_phi(i).eval_basis(&[a + 1, b + 1]);
                for psi in &bundle.basis {
                    let lhs = bundle.project(&r.apply(psi));
                    let rhs = psi.clifford_basis(i).scale(&c);
                    rep.record(lhs == rhs, || format!("E_{i} projection of R^g({a},{b}) off"));
                }
            }
        }
    }
    rep
}

fn rat32() -> Rational {
    int(3) / int(2)
}

/// Right-hand side (α/2)V·u + ((α−δ)/2)Σ η_p(V)Φ_p·u of the H-Killing equation.
pub fn h_killing_rhs(model: &HomogeneousModel, a: usize, u: &Spinor) -> Spinor {
    let half_alpha = ExactScalar::real(&model.alpha / int(2));
    let mut out = u.clifford_basis(a + 1).scale(&half_alpha);
    if a < 3 {
        let c = ExactScalar::real((&model.alpha - &model.delta) / int(2));
        out = out.add(&u.clifford_form(model.frame.big_phi(a + 1)).scale(&c));
    }
    out
}

/// Λ̃^g(V)u against the H-Killing right-hand side for every basis V.
pub fn verify_h_killing(model: &HomogeneousModel, u: &Spinor) -> Result<IdentityReport> {
    if !model.is_invariant(u) {
        return Err(Error::NotInFiber("spinor is not isotropy-invariant".into()));
    }
    let lam = model.spin_nomizu(&model.nomizu_lc());
    let mut rep = IdentityReport::default();
    for a in 0..M {
        rep.record(lam[a].apply(u) == h_killing_rhs(model, a, u), || format!("H-Killing equation fails along {}", BASIS_NAMES[a]));
    }
    Ok(rep)
}

/// Joint solution space of the H-Killing equation among invariant spinors.
pub fn h_killing_solutions(model: &HomogeneousModel) -> Vec<Spinor> {
    let lam = model.spin_nomizu(&model.nomizu_lc());
    let mut ops = model.isotropy_spin();
    for (a, l) in lam.iter().enumerate() {
        let rhs = SpinOperator::from_fn(N, |u| h_killing_rhs(model, a, u));
        ops.push(l.sub(&rhs));
    }
    joint_kernel(N, &ops)
}

/// D u = Σ_s e_s·Λ̃^g(e_s)u.
pub fn dirac_on_invariant(model: &HomogeneousModel, u: &Spinor) -> Spinor {
    let lam = model.spin_nomizu(&model.nomizu_lc());
    (0..M).fold(Spinor::zero(N), |acc, s| acc.add(&lam[s].apply(u).clifford_basis(s + 1)))
}

/// −((4n−1)α/2)u + ((α−δ)/2)Σ ξ_p·Φ_p·u.
pub fn dirac_h_killing_formula(model: &HomogeneousModel, u: &Spinor) -> Spinor {
    let c0 = ExactScalar::real(-(int(4 * N as i64 - 1)) * &model.alpha / int(2));
    let c1 = ExactScalar::real((&model.alpha - &model.delta) / int(2));
    let mut out = u.scale(&c0);
    for p in 1..=3 {
        out = out.add(&u.clifford_form(model.frame.big_phi(p)).clifford_basis(p).scale(&c1));
    }
    out
}

/// The modified connection A(V) = Λ̃^g(V) − (α/2)V· − ((α−δ)/2)Σ η_p(V)Φ_p·.
pub fn modified_connection(model: &HomogeneousModel) -> Vec<SpinOperator> {
    let lam = model.spin_nomizu(&model.nomizu_lc());
    let half_alpha = ExactScalar::real(&model.alpha / int(2));
    let c = ExactScalar::real((&model.alpha - &model.delta) / int(2));
    (0..M)
        .map(|a| {
            let mut op = lam[a].sub(&clifford_vector(N, a + 1).expect("index").scale(&half_alpha));
            if a < 3 {
                op = op.sub(&clifford_form(N, model.frame.big_phi(a + 1)).scale(&c));
            }
            op
        })
        .collect()
}

/// R̂(X,Y)u = 0 for every basis pair and every u in E; also records whether R̂ is non-zero somewhere off E.
pub fn verify_modified_flatness(model: &HomogeneousModel) -> (IdentityReport, bool) {
    let a = modified_connection(model);
    let iso = model.isotropy_spin();
    let e = e_sum_basis(&model.frame);
    let mut rep = IdentityReport::default();
    let mut nonflat_elsewhere = false;
    for x in 0..M {
        for y in 0..M {
            let r = model.curvature(&a, &iso, x, y);
            for u in &e {
                rep.record(r.apply(u).is_zero(), || format!("R̂({}, {}) does not annihilate E", BASIS_NAMES[x], BASIS_NAMES[y]));
            }
            if !r.is_zero() {
                nonflat_elsewhere = true;
            }
        }
    }
    (rep, nonflat_elsewhere)
}

/// Canonical spinor of the dim-7 model up to scale: the (−7)-eigenspinor ω + i y₁.
pub fn canonical_spinor_unnormalized() -> Spinor {
    omega_spin(N).add(&Spinor::y(N, 1).scale(&ExactScalar::i()))
}

/// Joint kernel of the lifted canonical Nomizu map and the isotropy action; needs δ = 2α.
pub fn parallel_spinors(model: &HomogeneousModel) -> Result<Vec<Spinor>> {
    if !model.beta().is_zero() {
        return Err(Error::InvalidParameter("parallel spinor count needs δ = 2α".into()));
    }
    let mut ops = model.spin_nomizu(&model.nomizu_canonical());
    ops.extend(model.isotropy_spin());
    Ok(joint_kernel(N, &ops))
}

/// Λ̃(X)ψ_i = β(η_k(X)ξ_j − η_j(X)ξ_k)·ψ₀ for the auxiliary spinors ψ_i = ξ_i·ψ₀.
pub fn verify_auxiliary_derivatives(model: &HomogeneousModel) -> IdentityReport {
    let lam = model.spin_nomizu(&model.nomizu_canonical());
    let psi0 = canonical_spinor_unnormalized();
    let beta = field(&model.beta());
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        let (j, k) = cyclic(i);
        let psi_i = psi0.clifford_basis(i);
        for a in 0..M {
            let x = unit_vector(M, a + 1);
            let v: Vector = (0..M)
                .map(|c| {
                    if c == j - 1 {
                        x[k - 1].clone()
                    } else if c == k - 1 {
                        -&x[j - 1]
                    } else {
                        ExactScalar::zero()
                    }
                })
                .collect();
            let rhs = psi0.clifford_vector(&v).scale(&beta);
            rep.record(lam[a].apply(&psi_i) == rhs, || format!("∇ψ_{i} along {} differs", BASIS_NAMES[a]));
        }
    }
    rep
}

/// Nomizu-level and spinor-level checks of the deformation of the (1,1) model to (α, δ).
pub fn verify_deformed_killing(alpha: &Rational, delta: &Rational) -> Result<IdentityReport> {
    let def = Deformation::new(N, alpha, delta)?;
    let source = HomogeneousModel::build_s7(&int(1), &int(1))?;
    let target = HomogeneousModel::build_s7(alpha, delta)?;
    let mut rep = IdentityReport::default();
    let lc = source.nomizu_lc();
    let gram = def.deformed_gram();
    let lc_def = source.nomizu_lc_from_u(&gram);
    let sigma = def.sigma();
    let sigma_inv = def.sigma_inverse();
    let scales = def.sigma_scales();
    for a in 0..M {
        let x = unit_vector(M, a + 1);
        // (a) Λ^{g′} = Λ^g + the closed correction
        rep.record(lc_def[a] == lc[a].add(&def.lc_correction(&x)), || format!("deformed Levi-Civita correction off along {}", BASIS_NAMES[a]));
        // (b) σ∘Λ^g∘σ⁻¹ = Λ^g + the closed correction
        let conj = sigma.compose(&lc[a]).compose(&sigma_inv);
        rep.record(conj == lc[a].add(&def.sigma_correction(&x)), || format!("∇^σ formula off along {}", BASIS_NAMES[a]));
        // τ = Λ^{g′} − Λ^σ as a g′-skew endomorphism
        rep.record(lc_def[a].sub(&conj) == def.tau_endo(&x), || format!("difference tensor off along {}", BASIS_NAMES[a]));
    }
    // in the g′-orthonormal frame e′_a = σ(e_a), Λ^{g′} is the Levi-Civita map of the (α, δ) model
    let lc_target = target.nomizu_lc_explicit();
    let lc_prime: NomizuMap = (0..M).map(|a| sigma_inv.compose(&lc_def[a]).compose(&sigma).scale(&scales[a])).collect();
    for a in 0..M {
        rep.record(lc_prime[a] == lc_target[a], || format!("deformed (1,1) model differs from the ({},{}) model along {}", fmt_rational(alpha), fmt_rational(delta), BASIS_NAMES[a]));
    }
    let root = def.root.clone();
    let lam_t = target.spin_nomizu(&lc_prime);
    let lam_src = source.spin_nomizu(&lc);
    let can_t = target.spin_nomizu(&target.nomizu_canonical());
    let f = &target.frame;
    let half = ExactScalar::from_ratio(1, 2);
    for k in -1..=(N as i64 - 1) {
        let psi = crate::catalog::psi_k(N, k)?;
        rep.record(source.is_invariant(&psi), || format!("ψ_{k} is not invariant"));
        // Killing on the source with Killing number ½
        for a in 0..M {
            rep.record(lam_src[a].apply(&psi) == psi.clifford_basis(a + 1).scale(&half), || format!("ψ_{k} not Killing along {}", BASIS_NAMES[a]));
        }
        for a in 0..M {
            let lhs = lam_t[a].apply(&psi);
            let rhs = if a < 3 {
                // (δ/2)ξ_i ψ + ((α−δ)/2)Φ_i^H ψ
                let c = ExactScalar::real((alpha - delta) / int(2));
                psi.clifford_basis(a + 1)
                    .scale(&ExactScalar::real(delta / int(2)))
                    .add(&psi.clifford_form(&f.big_phi(a + 1).restrict(f.horizontal)).scale(&c))
            } else {
                // (√(αδ)/2)X ψ + ((√(αδ)−α)/2)Σ ξ_p·φ_p(X)·ψ
                let x = unit_vector(M, a + 1);
                let c = &(&root - &target.alpha_s()) * &half;
                let mut s = psi.clifford_basis(a + 1).scale(&(&root * &half));
                for p in 1..=3 {
                    s = s.add(&psi.clifford_vector(&f.phi(p).apply(&x)).clifford_basis(p).scale(&c));
                }
                s
            };
            rep.record(lhs == rhs, || format!("ψ_{k} fails the deformed Killing equation along {}", BASIS_NAMES[a]));
            // ∇^σ_{e′_a} ψ = ½ s_a e′_a·ψ: in the e′ frame Λ^σ(e_a) has the matrix of Λ^g(e_a)
            let sig = lam_src[a].apply(&psi).scale(&scales[a]);
            rep.record(sig == psi.clifford_basis(a + 1).scale(&(&scales[a] * &half)), || format!("∇^σ equation fails for ψ_{k} along {}", BASIS_NAMES[a]));
            // canonical connection
            let lhs = can_t[a].apply(&psi);
            let rhs = if a < 3 {
                let (j, kk) = cyclic(a + 1);
                psi.clifford_basis(a + 1)
                    .scale(&ExactScalar::real(delta / int(2)))
                    .add(&psi.clifford_form(&f.big_phi(a + 1).restrict(f.horizontal)).scale(&ExactScalar::real((int(2) * alpha - delta) / int(2))))
                    .add(&psi.clifford_basis(kk).clifford_basis(j).scale(&ExactScalar::real((delta - int(4) * alpha) / int(2))))
            } else {
                let x = unit_vector(M, a + 1);
                let mut s = psi.clifford_basis(a + 1).scale(&(&root * &half));
                for p in 1..=3 {
                    s = s.add(&psi.clifford_vector(&f.phi(p).apply(&x)).clifford_basis(p).scale(&(&root * &half)));
                }
                s
            };
            rep.record(lhs == rhs, || format!("canonical equation fails for ψ_{k} along {}", BASIS_NAMES[a]));
        }
    }
    let sols: Vec<Spinor> = (-1..=(N as i64 - 1)).map(|k| crate::catalog::psi_k(N, k)).collect::<Result<_>>()?;
    rep.record(crate::spin::rank(&sols) == N + 1, || "fewer than n+1 independent deformed Killing spinors".into());
    Ok(rep)
}

/// Does αδ admit an exact square root in the field?
pub fn has_exact_root(alpha: &Rational, delta: &Rational) -> bool {
    let p = alpha * delta;
    p.is_positive() && field_sqrt(&p).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn model(a: i64, d: i64) -> HomogeneousModel {
        HomogeneousModel::build_s7(&int(a), &int(d)).unwrap()
    }

    #[test]
    fn quaternion_relations() {
        let (i, j, k) = (Quat::unit(1), Quat::unit(2), Quat::unit(3));
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&k), i);
        assert_eq!(k.mul(&i), j);
        assert_eq!(i.mul(&i), Quat::zero().sub(&Quat::unit(0)));
    }

    #[test]
    fn lie_structure_and_calibration() {
        for (a, d) in [(1, 1), (1, 4), (2, 3), (-1, -2), (3, 1)] {
            let m = model(a, d);
            assert!(m.check_lie_structure().is_empty(), "{:?}", m.check_lie_structure());
            assert!(m.check_calibration().is_empty(), "{:?}", m.check_calibration());
        }
        assert!(HomogeneousModel::build_s7(&int(1), &int(-1)).is_err());
    }

    #[test]
    fn calibrated_constants() {
        let m = model(1, 4);
        assert_eq!(m.xi_scale, int(4));
        assert_eq!(m.horizontal_scale_sq, int(4));
        // κ(k,k) = −12, κ(w,w) = −24
        assert_eq!(m.lambda0, rat(-1, 192));
        assert_eq!(m.lambda1, rat(-1, 96));
        // [ξ₂, ξ₃] = 2δ ξ₁, [ξ₁, e₄] = δ e₅, [e₄, e₅] = 2α ξ₁ − 2αδ h₁
        assert_eq!(m.bracket_basis(1, 2)[0], ExactScalar::from_int(8));
        assert_eq!(m.bracket_basis(0, 3)[4], ExactScalar::from_int(4));
        assert_eq!(m.bracket_basis(3, 4)[0], ExactScalar::from_int(2));
        assert_eq!(m.bracket_basis(3, 4)[7], ExactScalar::from_int(-8));
        assert_eq!(m.phi_from_ad(1).apply_basis(2), unit_vector(M, 3));
    }

    #[test]
    fn round_sphere_at_one_one() {
        let m = model(1, 1);
        assert!(m.is_round_sphere(&m.nomizu_lc()));
        assert!(!model(1, 4).is_round_sphere(&model(1, 4).nomizu_lc()));
    }

    #[test]
    fn connection_checks() {
        for (a, d) in [(1, 1), (1, 4), (2, 1), (1, 2), (-1, -3)] {
            let rep = verify_connections(&model(a, d));
            assert!(rep.ok(), "({a},{d}): {:?}", rep.violations);
        }
        let m = model(1, 2);
        assert!(m.nomizu_canonical().iter().all(|e| e.is_zero()));
    }

    #[test]
    fn curvature_identities() {
        for (a, d) in [(1, 1), (1, 4), (3, 2)] {
            let rep = verify_curvature_traces(&model(a, d));
            assert!(rep.ok(), "({a},{d}): {:?}", &rep.violations[..rep.violations.len().min(5)]);
        }
    }

    #[test]
    fn h_killing_on_e_fiber() {
        for (a, d) in [(1, 1), (1, 4), (2, 5), (-1, -1)] {
            let m = model(a, d);
            let e = e_sum_basis(&m.frame);
            for u in &e {
                assert!(verify_h_killing(&m, u).unwrap().ok());
            }
            let sols = h_killing_solutions(&m);
            assert!(crate::spin::same_span(&sols, &e), "({a},{d}): {} solutions", sols.len());
        }
        let m = model(1, 4);
        let psi0 = canonical_spinor_unnormalized();
        assert!(!verify_h_killing(&m, &psi0).unwrap().ok());
    }

    #[test]
    fn dirac_values() {
        let m = model(1, 4);
        for u in &e_sum_basis(&m.frame) {
            assert_eq!(dirac_on_invariant(&m, u), u.scale(&ExactScalar::from_int(-11)));
            assert_eq!(dirac_on_invariant(&m, u), dirac_h_killing_formula(&m, u));
        }
        let psi0 = canonical_spinor_unnormalized();
        assert_eq!(dirac_on_invariant(&m, &psi0), psi0.scale(&ExactScalar::from_int(9)));
        let one = model(1, 1);
        let u = Spinor::one(2);
        assert_eq!(dirac_on_invariant(&one, &u), u.scale(&ExactScalar::from_ratio(-7, 2)));
    }

    #[test]
    fn flatness_on_e() {
        for (a, d) in [(1, 1), (1, 4), (2, -1)] {
            let al = int(a);
            let de = int(d);
            let m = HomogeneousModel::build_formal(&al, &de).unwrap();
            let (rep, elsewhere) = verify_modified_flatness(&m);
            assert!(rep.ok(), "({a},{d})");
            // the round sphere carries a full space of Killing spinors
            assert_eq!(elsewhere, a != d);
        }
    }

    #[test]
    fn parallel_case() {
        for (a, d) in [(1, 2), (2, 4)] {
            let m = model(a, d);
            let ker = parallel_spinors(&m).unwrap();
            assert!(ker.len() >= 4);
            let psi0 = canonical_spinor_unnormalized();
            assert!(crate::spin::in_span(&ker, &psi0));
            for i in 1..=3 {
                assert!(crate::spin::in_span(&ker, &psi0.clifford_basis(i)));
            }
        }
        assert!(parallel_spinors(&model(1, 1)).is_err());
        assert!(verify_auxiliary_derivatives(&model(1, 1)).ok());
    }

    #[test]
    fn deformed_killing_spinors() {
        for (a, d) in [(1, 1), (1, 4), (4, 1), (1, 9), (1, 2)] {
            let rep = verify_deformed_killing(&int(a), &int(d)).unwrap();
            assert!(rep.ok(), "({a},{d}): {:?}", rep.violations);
        }
        assert!(verify_deformed_killing(&int(1), &int(3)).is_err());
    }

    #[test]
    fn dump_is_stable() {
        let d = model(1, 1).dump();
        assert!(d.starts_with("sasaki-model v1\nalpha 1\ndelta 1\n"));
        assert!(d.contains("[xi2,xi3] = 2*xi1"));
        assert_eq!(d, model(1, 1).dump());
    }
}
