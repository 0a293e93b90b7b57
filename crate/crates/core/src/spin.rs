//! The spin representation Σ = Λ•ℂ^(2n−1) of Spin(4n−1) and Clifford multiplication.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exterior::{key_indices, Endo, MultiForm};
use crate::linalg;
use crate::scalar::{ExactScalar, Rational};
use crate::sasaki::IdentityReport;

/// Multiply by i^p.
pub fn mul_i_pow(x: &ExactScalar, p: u8) -> ExactScalar {
    if x.is_zero() {
        return ExactScalar::zero();
    }
    let [a, b, c, d] = x.parts();
    match p % 4 {
        0 => x.clone(),
        1 => ExactScalar::from_parts(-b, a, -d, c),
        2 => -x,
        _ => ExactScalar::from_parts(b, -a, d, -c),
    }
}

/// Action of one frame vector on the monomial basis: y_S ↦ i^phase[S] · y_{target[S]}.
#[derive(Clone, Debug)]
struct MonomialAction {
    target: Vec<usize>,
    phase: Vec<u8>,
}

/// Per-n table of the Clifford action of e_1, …, e_{4n−1}.
#[derive(Debug)]
pub struct CliffordTable {
    pub n: usize,
    actions: Vec<MonomialAction>,
}

fn build_table(n: usize) -> CliffordTable {
    let k = 2 * n - 1;
    let dim = 1usize << k;
    let m = 4 * n - 1;
    let mut actions = Vec::with_capacity(m);
    for e in 1..=m {
        let mut target = vec![0; dim];
        let mut phase = vec![0u8; dim];
        for s in 0..dim {
            if e == 1 {
                target[s] = s;
                phase[s] = if (s as u64).count_ones() % 2 == 0 { 1 } else { 3 };
                continue;
            }
            let j = e / 2;
            let b = 1usize << (j - 1);
            let below = ((s & (b - 1)) as u64).count_ones();
            let sign_phase = if below % 2 == 0 { 0 } else { 2 };
            if s & b != 0 {
                // contraction x_j ⌟ y_S = (−1)^below y_{S∖j}
                target[s] = s & !b;
                phase[s] = if e % 2 == 0 { (1 + sign_phase) % 4 } else { (2 + sign_phase) % 4 };
            } else {
                // wedge y_j ∧ y_S = (−1)^below y_{S∪j}
                target[s] = s | b;
                phase[s] = if e % 2 == 0 { (1 + sign_phase) % 4 } else { sign_phase };
            }
        }
        actions.push(MonomialAction { target, phase });
    }
    CliffordTable { n, actions }
}

/// Shared read-only Clifford table for the given n.
pub fn clifford_table(n: usize) -> Arc<CliffordTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CliffordTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("clifford cache");
    guard.entry(n).or_insert_with(|| Arc::new(build_table(n))).clone()
}

pub fn spinor_dim(n: usize) -> usize {
    1usize << (2 * n - 1)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Spinor {
    pub n: usize,
    pub coeffs: Vec<ExactScalar>,
}

impl Spinor {
    pub fn zero(n: usize) -> Self {
        Spinor { n, coeffs: vec![ExactScalar::zero(); spinor_dim(n)] }
    }

    /// The monomial y_S for S given as a bitset over {1,…,2n−1}.
    pub fn monomial(n: usize, set: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[set] = ExactScalar::one();
        s
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0)
    }

    /// y_j (1-based).
    pub fn y(n: usize, j: usize) -> Self {
        Self::monomial(n, 1 << (j - 1))
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Spinor) -> Spinor {
        Spinor { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Spinor) -> Spinor {
        Spinor { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &ExactScalar) -> Spinor {
        Spinor { n: self.n, coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Spinor {
        self.scale(&ExactScalar::real(r.clone()))
    }

    pub fn neg(&self) -> Spinor {
        self.scale(&ExactScalar::from_int(-1))
    }

    /// Exterior product in Λ•ℂ^(2n−1).
    pub fn wedge(&self, o: &Spinor) -> Spinor {
        let mut out = Spinor::zero(self.n);
        for (s, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() || s & t != 0 {
                    continue;
                }
                let mut swaps = 0u32;
                let mut rest = t;
                while rest != 0 {
                    let low = rest.trailing_zeros();
                    swaps += ((s >> (low + 1)) as u64).count_ones();
                    rest &= rest - 1;
                }
                let c = a * b;
                out.coeffs[s | t] += if swaps % 2 == 0 { c } else { -c };
            }
        }
        out
    }

    pub fn wedge_power(&self, k: usize) -> Spinor {
        let mut out = Spinor::one(self.n);
        for _ in 0..k {
            out = out.wedge(self);
        }
        out
    }

    /// e_j · ψ for a frame index j ∈ 1..=4n−1.
    pub fn clifford_basis(&self, j: usize) -> Spinor {
        let table = clifford_table(self.n);
        let act = &table.actions[j - 1];
        let mut out = Spinor::zero(self.n);
        for (s, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[act.target[s]] = mul_i_pow(c, act.phase[s]);
            }
        }
        out
    }

    /// X · ψ for a frame vector X given by real or complex coordinates.
    pub fn clifford_vector(&self, v: &[ExactScalar]) -> Spinor {
        let mut out = Spinor::zero(self.n);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.clifford_basis(j + 1).scale(c));
            }
        }
        out
    }

    /// a · ψ with e_{i1}∧…∧e_{il} acting as e_{i1}·…·e_{il}.
    pub fn clifford_form(&self, a: &MultiForm) -> Spinor {
        let mut out = Spinor::zero(self.n);
        for (key, c) in a.terms() {
            let mut t = self.clone();
            for &j in key_indices(*key).iter().rev() {
                t = t.clifford_basis(j);
            }
            out = out.add(&t.scale(c));
        }
        out
    }

    pub fn conj(&self) -> Spinor {
        Spinor { n: self.n, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&s| !self.coeffs[s].is_zero()).collect()
    }
}

/// ⟨φ, ψ⟩ = Σ φ_S · conj(ψ_S): linear in the first slot, monomials orthonormal.
pub fn hermitian(phi: &Spinor, psi: &Spinor) -> ExactScalar {
    let mut s = ExactScalar::zero();
    for (a, b) in phi.coeffs.iter().zip(&psi.coeffs) {
        if !a.is_zero() && !b.is_zero() {
            s += a * &b.conj();
        }
    }
    s
}

/// ω_spin = Σ_{p=1}^{n−1} y_{2p} ∧ y_{2p+1}.
pub fn omega_spin(n: usize) -> Spinor {
    let mut w = Spinor::zero(n);
    for p in 1..n {
        w = w.add(&Spinor::y(n, 2 * p).wedge(&Spinor::y(n, 2 * p + 1)));
    }
    w
}

fn monomial_label(set: usize) -> String {
    let idx = key_indices(set as u64);
    match idx.len() {
        0 => "1".into(),
        1 => format!("y_{}", idx[0]),
        _ => {
            let s: Vec<String> = idx.iter().map(|j| j.to_string()).collect();
            format!("y_{{{}}}", s.join(","))
        }
    }
}

fn join_terms(terms: Vec<(ExactScalar, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (c, label)) in terms.into_iter().enumerate() {
        let (neg, mag) = crate::exterior::split_sign(&c);
        if n == 0 {
            if neg {
                out.push('−');
            }
        } else {
            out.push_str(if neg { " − " } else { " + " });
        }
        match mag {
            None => out.push_str(&label),
            Some(m) if label == "1" => out.push_str(&m),
            Some(m) => out.push_str(&format!("{m}·{label}")),
        }
    }
    out
}

impl Spinor {
    /// Render in terms of ω_spin and y₁ when possible, otherwise by monomials.
    pub fn notation(&self) -> String {
        let n = self.n;
        let w = omega_spin(n);
        let y1 = Spinor::y(n, 1);
        let mut pieces = Vec::new();
        let mut labels = Vec::new();
        for k in 0..n {
            pieces.push(w.wedge_power(k));
            labels.push(match k {
                0 => "1".to_string(),
                1 => "ω".to_string(),
                _ => format!("ω^{k}"),
            });
        }
        for k in 0..n {
            pieces.push(y1.wedge(&w.wedge_power(k)));
            labels.push(match k {
                0 => "y_1".to_string(),
                1 => "y_1∧ω".to_string(),
                _ => format!("y_1∧ω^{k}"),
            });
        }
        let cols: Vec<Vec<ExactScalar>> = pieces.iter().map(|p| p.coeffs.clone()).collect();
        let nonzero: Vec<usize> = (0..cols.len()).filter(|&i| !pieces[i].is_zero()).collect();
        let basis: Vec<Vec<ExactScalar>> = nonzero.iter().map(|&i| cols[i].clone()).collect();
        if let Some(c) = linalg::express_in_span(&basis, &self.coeffs) {
            let terms = nonzero
                .iter()
                .zip(c)
                .filter(|(_, x)| !x.is_zero())
                .map(|(&i, x)| (x, labels[i].clone()))
                .collect();
            return join_terms(terms);
        }
        let terms = self.support().into_iter().map(|s| (self.coeffs[s].clone(), monomial_label(s))).collect();
        join_terms(terms)
    }
}

impl fmt::Display for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}

impl fmt::Debug for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}

/// Linear operator on Σ, stored by the images of the monomial basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SpinOperator {
    pub n: usize,
    cols: Vec<Spinor>,
}

impl SpinOperator {
    pub fn from_fn(n: usize, f: impl Fn(&Spinor) -> Spinor) -> Self {
        let cols = (0..spinor_dim(n)).map(|s| f(&Spinor::monomial(n, s))).collect();
        SpinOperator { n, cols }
    }

    pub fn zero(n: usize) -> Self {
        SpinOperator { n, cols: vec![Spinor::zero(n); spinor_dim(n)] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |s| s.clone())
    }

    pub fn scalar(n: usize, c: &ExactScalar) -> Self {
        Self::from_fn(n, |s| s.scale(c))
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, psi: &Spinor) -> Spinor {
        let mut out = Spinor::zero(self.n);
        for (s, c) in psi.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, a) in self.cols[s].coeffs.iter().enumerate() {
                if !a.is_zero() {
                    out.coeffs[t] += a * c;
                }
            }
        }
        out
    }

    /// self ∘ other
    pub fn compose(&self, other: &SpinOperator) -> SpinOperator {
        SpinOperator { n: self.n, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn commutator(&self, other: &SpinOperator) -> SpinOperator {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn add(&self, o: &SpinOperator) -> SpinOperator {
        SpinOperator { n: self.n, cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &SpinOperator) -> SpinOperator {
        SpinOperator { n: self.n, cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &ExactScalar) -> SpinOperator {
        SpinOperator { n: self.n, cols: self.cols.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Matrix entry (row, col).
    pub fn entry(&self, r: usize, c: usize) -> &ExactScalar {
        &self.cols[c].coeffs[r]
    }
}

impl fmt::Debug for SpinOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|c| self.entry(r, c).short()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// e_j·e_k + e_k·e_j = −2δ_jk on every monomial spinor.
pub fn verify_clifford_relations(n: usize) -> IdentityReport {
    let m = 4 * n - 1;
    let minus_two = ExactScalar::from_int(-2);
    let mut rep = IdentityReport::default();
    for s in 0..spinor_dim(n) {
        let psi = Spinor::monomial(n, s);
        for j in 1..=m {
            for k in j..=m {
                let ac = psi.clifford_basis(k).clifford_basis(j).add(&psi.clifford_basis(j).clifford_basis(k));
                let want = if j == k { psi.scale(&minus_two) } else { Spinor::zero(n) };
                rep.record(ac == want, || format!("e_{j}e_{k} + e_{k}e_{j} wrong on monomial {s}"));
            }
        }
    }
    rep
}

pub fn clifford_vector(n: usize, j: usize) -> Result<SpinOperator> {
    let m = 4 * n - 1;
    if j == 0 || j > m {
        return Err(Error::IndexOutOfRange(j, m));
    }
    Ok(SpinOperator::from_fn(n, |s| s.clifford_basis(j)))
}

pub fn clifford_vector_op(n: usize, v: &[ExactScalar]) -> SpinOperator {
    SpinOperator::from_fn(n, |s| s.clifford_vector(v))
}

pub fn clifford_form(n: usize, a: &MultiForm) -> SpinOperator {
    SpinOperator::from_fn(n, |s| s.clifford_form(a))
}

/// The 2-form-plus-scalar whose Clifford action is ¼ Σ_{a,b} g(A e_a, e_b) e_a·e_b.
pub fn spin_lift_form(a: &Endo) -> MultiForm {
    let m = a.m;
    let mut f = MultiForm::zero(m);
    let quarter = ExactScalar::from_ratio(1, 4);
    let mut trace = ExactScalar::zero();
    for p in 0..m {
        trace += a.get(p, p);
        for q in (p + 1)..m {
            // e_p e_q terms: ¼(A_{qp} − A_{pq})
            let c = (a.get(q, p) - a.get(p, q)) * &quarter;
            f.add_term((1 << p) | (1 << q), c);
        }
    }
    // e_a·e_a = −1
    f.add_term(0, -(trace * &quarter));
    f
}

pub fn spin_lift(n: usize, a: &Endo) -> SpinOperator {
    clifford_form(n, &spin_lift_form(a))
}

/// Exact basis of the common kernel, in reduced echelon form.
pub fn joint_kernel(n: usize, ops: &[SpinOperator]) -> Vec<Spinor> {
    joint_kernel_by(n, ops.len(), |i, s| ops[i].apply(s))
}

/// Common kernel of `count` operators given by their action.
pub fn joint_kernel_by(n: usize, count: usize, apply: impl Fn(usize, &Spinor) -> Spinor) -> Vec<Spinor> {
    let dim = spinor_dim(n);
    let mut basis: Vec<Spinor> = (0..dim).map(|s| Spinor::monomial(n, s)).collect();
    for i in 0..count {
        if basis.is_empty() {
            break;
        }
        let images: Vec<Spinor> = basis.iter().map(|b| apply(i, b)).collect();
        if images.iter().all(|s| s.is_zero()) {
            continue;
        }
        let rows: linalg::Matrix =
            (0..dim).map(|r| images.iter().map(|im| im.coeffs[r].clone()).collect()).collect();
        let ns = linalg::nullspace(&rows, basis.len());
        basis = ns
            .iter()
            .map(|c| {
                let mut acc = Spinor::zero(n);
                for (k, ck) in c.iter().enumerate() {
                    if !ck.is_zero() {
                        acc = acc.add(&basis[k].scale(ck));
                    }
                }
                acc
            })
            .collect();
    }
    echelon_basis(n, &basis)
}

/// Reduced row echelon basis of the span of the given spinors.
pub fn echelon_basis(n: usize, vs: &[Spinor]) -> Vec<Spinor> {
    if vs.is_empty() {
        return Vec::new();
    }
    let mut rows: linalg::Matrix = vs.iter().map(|v| v.coeffs.clone()).collect();
    linalg::rref(&mut rows, spinor_dim(n));
    rows.into_iter().map(|coeffs| Spinor { n, coeffs }).collect()
}

/// Do two families span the same subspace?
pub fn same_span(a: &[Spinor], b: &[Spinor]) -> bool {
    if a.is_empty() || b.is_empty() {
        return a.iter().all(|s| s.is_zero()) && b.iter().all(|s| s.is_zero());
    }
    let n = a[0].n;
    echelon_basis(n, a) == echelon_basis(n, b)
}

pub fn in_span(basis: &[Spinor], v: &Spinor) -> bool {
    let cols: Vec<Vec<ExactScalar>> = basis.iter().map(|b| b.coeffs.clone()).collect();
    v.is_zero() || linalg::express_in_span(&cols, &v.coeffs).is_some()
}

pub fn rank(vs: &[Spinor]) -> usize {
    let rows: Vec<Vec<ExactScalar>> = vs.iter().map(|v| v.coeffs.clone()).collect();
    linalg::rank_of_vectors(&rows)
}

/// Orthogonal projection onto span(basis) via the Gram matrix.
pub fn project(basis: &[Spinor], psi: &Spinor) -> Spinor {
    let k = basis.len();
    if k == 0 {
        return Spinor::zero(psi.n);
    }
    // Σ_a c_a ⟨b_a, b_b⟩ = ⟨ψ, b_b⟩
    let a: linalg::Matrix = (0..k).map(|b| (0..k).map(|a| hermitian(&basis[a], &basis[b])).collect()).collect();
    let rhs: Vec<ExactScalar> = (0..k).map(|b| hermitian(psi, &basis[b])).collect();
    let c = linalg::solve(&a, &rhs).expect("basis is independent");
    let mut out = Spinor::zero(psi.n);
    for (ca, ba) in c.iter().zip(basis) {
        out = out.add(&ba.scale(ca));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::raise_to_endo;
    use proptest::prelude::*;

    fn spinor_strategy(n: usize) -> impl Strategy<Value = Spinor> {
        let dim = spinor_dim(n);
        proptest::collection::vec((-3i64..4, -3i64..4), dim).prop_map(move |v| Spinor {
            n,
            coeffs: v
                .into_iter()
                .map(|(a, b)| ExactScalar::from_int(a) + ExactScalar::i() * ExactScalar::from_int(b))
                .collect(),
        })
    }

    fn skew_strategy(m: usize) -> impl Strategy<Value = Endo> {
        proptest::collection::vec(-2i64..3, m * (m - 1) / 2).prop_map(move |v| {
            let mut f = MultiForm::zero(m);
            let mut it = v.into_iter();
            for p in 0..m {
                for q in (p + 1)..m {
                    f.add_term((1 << p) | (1 << q), ExactScalar::from_int(it.next().unwrap()));
                }
            }
            raise_to_endo(&f).unwrap()
        })
    }

    #[test]
    fn basic_clifford_values() {
        let one = Spinor::one(2);
        assert_eq!(one.clifford_basis(1), one.scale(&ExactScalar::i()));
        assert_eq!(one.clifford_basis(2), Spinor::y(2, 1).scale(&ExactScalar::i()));
        assert_eq!(one.clifford_basis(3), Spinor::y(2, 1));
        // x_1 ⌟ y_1 = 1: e_2 − i e_3 sends y_1 to 2i
        let y1 = Spinor::y(2, 1);
        let lhs = y1.clifford_basis(2).sub(&y1.clifford_basis(3).scale(&ExactScalar::i()));
        assert_eq!(lhs, Spinor::one(2).scale(&(ExactScalar::i() * ExactScalar::from_int(2))));
        assert!(clifford_vector(2, 8).is_err());
    }

    #[test]
    fn clifford_relations_all_dims() {
        for n in 2..=4 {
            let m = 4 * n - 1;
            let ops: Vec<SpinOperator> = (1..=m).map(|j| clifford_vector(n, j).unwrap()).collect();
            let minus_two = SpinOperator::scalar(n, &ExactScalar::from_int(-2));
            for j in 0..m {
                for k in j..m {
                    let ac = ops[j].compose(&ops[k]).add(&ops[k].compose(&ops[j]));
                    if j == k {
                        assert_eq!(ac, minus_two);
                    } else {
                        assert!(ac.is_zero(), "e_{} e_{} anticommutator", j + 1, k + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_extremes() {
        assert!(joint_kernel(2, &[SpinOperator::identity(2)]).is_empty());
        assert_eq!(joint_kernel(2, &[]).len(), 8);
    }

    #[test]
    fn hermitian_normalization() {
        assert!(hermitian(&Spinor::one(2), &Spinor::one(2)).is_one());
        let half = ExactScalar::sqrt2().scale(&crate::scalar::rat(1, 2));
        let psi0 = omega_spin(2).add(&Spinor::y(2, 1).scale(&ExactScalar::i())).scale(&half);
        assert!(hermitian(&psi0, &psi0).is_one());
    }

    #[test]
    fn notation_uses_omega() {
        let s = omega_spin(2).sub(&Spinor::y(2, 1).scale(&ExactScalar::i()));
        assert_eq!(s.notation(), "ω − i·y_1");
        assert_eq!(Spinor::y(3, 2).notation(), "y_2");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn vectors_are_skew_hermitian(a in spinor_strategy(2), b in spinor_strategy(2), j in 1usize..=7) {
            let lhs = hermitian(&a.clifford_basis(j), &b);
            let rhs = -hermitian(&a, &b.clifford_basis(j));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn lift_is_a_homomorphism(a in skew_strategy(7), b in skew_strategy(7)) {
            let lhs = spin_lift(2, &a.commutator(&b));
            let rhs = spin_lift(2, &a).commutator(&spin_lift(2, &b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn lift_intertwines_vectors(a in skew_strategy(7), j in 1usize..=7) {
            // [lift(A), e_j] = (A e_j)·
            let la = spin_lift(2, &a);
            let ej = clifford_vector(2, j).unwrap();
            let lhs = la.commutator(&ej);
            let rhs = clifford_vector_op(2, &a.apply_basis(j));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn projection_is_orthogonal(p in spinor_strategy(2), q in spinor_strategy(2)) {
            let basis = vec![Spinor::one(2), omega_spin(2).sub(&Spinor::y(2, 1).scale(&ExactScalar::i()))];
            let pp = project(&basis, &p);
            prop_assert_eq!(project(&basis, &pp), pp.clone());
            prop_assert_eq!(hermitian(&pp, &q), hermitian(&p, &project(&basis, &q)));
        }
    }
}
