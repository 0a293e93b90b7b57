//! Forms on ℝ^m in an orthonormal frame, stored sparsely by index bitset.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Rational};

pub type Vector = Vec<ExactScalar>;

/// Unit vector e_j (1-based).
pub fn unit_vector(m: usize, j: usize) -> Vector {
    let mut v = vec![ExactScalar::zero(); m];
    v[j - 1] = ExactScalar::one();
    v
}

pub fn vec_add(a: &[ExactScalar], b: &[ExactScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[ExactScalar], b: &[ExactScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[ExactScalar], s: &ExactScalar) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_is_zero(a: &[ExactScalar]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Euclidean inner product of real frame vectors (bilinear, no conjugation).
pub fn vec_dot(a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
    let mut s = ExactScalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

fn bit(j: usize) -> u64 {
    1u64 << (j - 1)
}

/// Indices (1-based, increasing) contained in a key.
pub fn key_indices(key: u64) -> Vec<usize> {
    (0..64).filter(|b| key & (1u64 << b) != 0).map(|b| b + 1).collect()
}

/// Sign of e_S ∧ e_T relative to e_{S∪T}; zero if they overlap.
fn merge_sign(s: u64, t: u64) -> i32 {
    if s & t != 0 {
        return 0;
    }
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let low = rest.trailing_zeros();
        let above = s & !((1u64 << (low + 1)) - 1);
        swaps += above.count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiForm {
    dim: usize,
    terms: BTreeMap<u64, ExactScalar>,
}

impl MultiForm {
    pub fn zero(dim: usize) -> Self {
        MultiForm { dim, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: ExactScalar) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(0, c);
        f
    }

    /// e_{i1} ∧ … ∧ e_{ik} for indices in any order.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut f = Self::scalar(dim, ExactScalar::one());
        for &j in indices {
            if j == 0 || j > dim {
                return Err(Error::IndexOutOfRange(j, dim));
            }
            f = f.wedge(&Self::one_form(dim, j))?;
        }
        Ok(f)
    }

    pub fn one_form(dim: usize, j: usize) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(bit(j), ExactScalar::one());
        f
    }

    pub fn from_vector(v: &[ExactScalar]) -> Self {
        let mut f = Self::zero(v.len());
        for (j, c) in v.iter().enumerate() {
            f.add_term(bit(j + 1), c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, indices: &[usize]) -> ExactScalar {
        let mut key = 0u64;
        for &j in indices {
            key |= bit(j);
        }
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: u64, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut f = self.clone();
        for (k, c) in &other.terms {
            f.add_term(*k, c.clone());
        }
        Ok(f)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&ExactScalar::from_int(-1)))
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        let mut f = Self::zero(self.dim);
        for (k, c) in &self.terms {
            f.add_term(*k, c * s);
        }
        f
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&ExactScalar::real(r.clone()))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut f = Self::zero(self.dim);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let sign = merge_sign(*s, *t);
                if sign == 0 {
                    continue;
                }
                let c = a * b;
                f.add_term(s | t, if sign > 0 { c } else { -c });
            }
        }
        Ok(f)
    }

    /// Interior product by a frame vector (identified with its metric dual).
    pub fn contract(&self, v: &[ExactScalar]) -> Result<Self> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(v.len(), self.dim));
        }
        let mut f = Self::zero(self.dim);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let b = 1u64 << j;
            for (s, c) in &self.terms {
                if s & b == 0 {
                    continue;
                }
                let below = (s & (b - 1)).count_ones();
                let t = vj * c;
                f.add_term(s & !b, if below % 2 == 0 { t } else { -t });
            }
        }
        Ok(f)
    }

    pub fn contract_basis(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.dim {
            return Err(Error::IndexOutOfRange(j, self.dim));
        }
        self.contract(&unit_vector(self.dim, j))
    }

    /// Evaluate the degree-k part on k vectors.
    pub fn eval(&self, vs: &[&[ExactScalar]]) -> ExactScalar {
        let mut f = self.clone();
        // ω(v1,…,vk) = (v_k ⌟ … ⌟ v_1 ⌟ ω) restricted to degree 0
        for v in vs {
            f = f.contract(v).expect("vector dimension");
        }
        f.terms.get(&0).cloned().unwrap_or_default()
    }

    pub fn eval_basis(&self, idx: &[usize]) -> ExactScalar {
        let vs: Vec<Vector> = idx.iter().map(|&j| unit_vector(self.dim, j)).collect();
        let refs: Vec<&[ExactScalar]> = vs.iter().map(|v| v.as_slice()).collect();
        self.eval(&refs)
    }

    pub fn degree_part(&self, k: usize) -> Self {
        let mut f = Self::zero(self.dim);
        for (s, c) in &self.terms {
            if s.count_ones() as usize == k {
                f.add_term(*s, c.clone());
            }
        }
        f
    }

    /// Homogeneous degree, or None for mixed/zero forms.
    pub fn degree(&self) -> Option<usize> {
        let mut deg = None;
        for s in self.terms.keys() {
            let d = s.count_ones() as usize;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Keep only terms whose indices all lie in `allowed`.
    pub fn restrict(&self, allowed: u64) -> Self {
        let mut f = Self::zero(self.dim);
        for (s, c) in &self.terms {
            if s & !allowed == 0 {
                f.add_term(*s, c.clone());
            }
        }
        f
    }

    pub fn to_vector(&self) -> Vector {
        let mut v = vec![ExactScalar::zero(); self.dim];
        for (s, c) in &self.terms {
            if s.count_ones() == 1 {
                v[s.trailing_zeros() as usize] = c.clone();
            }
        }
        v
    }

    pub fn conj(&self) -> Self {
        let mut f = Self::zero(self.dim);
        for (s, c) in &self.terms {
            f.add_term(*s, c.conj());
        }
        f
    }
}

pub fn bitmask(indices: impl IntoIterator<Item = usize>) -> u64 {
    indices.into_iter().fold(0, |acc, j| acc | bit(j))
}

fn index_label(idx: &[usize]) -> String {
    let name = |set: &[usize], sym: &str| -> String {
        if set.len() == 1 {
            format!("{sym}_{}", set[0])
        } else {
            let s: Vec<String> = set.iter().map(|j| j.to_string()).collect();
            format!("{sym}_{{{}}}", s.join(","))
        }
    };
    let v: Vec<usize> = idx.iter().copied().filter(|&j| j <= 3).collect();
    let h: Vec<usize> = idx.iter().copied().filter(|&j| j > 3).collect();
    match (v.is_empty(), h.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => name(&v, "ξ"),
        (true, false) => name(&h, "e"),
        (false, false) => format!("{}∧{}", name(&v, "ξ"), name(&h, "e")),
    }
}

impl fmt::Display for MultiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (n, (s, c)) in self.terms.iter().enumerate() {
            let label = index_label(&key_indices(*s));
            let (neg, mag) = split_sign(c);
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
        write!(f, "{out}")
    }
}

impl fmt::Debug for MultiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Leading-sign split for pretty printing: (is_negative, magnitude or None if it is 1).
pub(crate) fn split_sign(c: &ExactScalar) -> (bool, Option<String>) {
    if c.is_one() {
        return (false, None);
    }
    let neg = -c;
    if neg.is_one() {
        return (true, None);
    }
    if let Some(r) = c.as_rational() {
        let negative = r < Rational::from_integer(0.into());
        let m = if negative { -r } else { r };
        return (negative, Some(crate::scalar::fmt_rational(&m)));
    }
    let [a, b, cc, d] = c.parts();
    let zero = Rational::from_integer(0.into());
    if a == zero && cc == zero && d == zero {
        let negative = b < zero;
        let m = if negative { -b } else { b };
        let s = if m == Rational::from_integer(1.into()) {
            "i".to_string()
        } else {
            format!("{}i", crate::scalar::fmt_rational(&m))
        };
        return (negative, Some(s));
    }
    (false, Some(format!("({})", c.short())))
}

/// Square matrix over the frame: entry (r, c) is the e_r-component of A(e_c).
#[derive(Clone, PartialEq, Eq)]
pub struct Endo {
    pub m: usize,
    rows: Vec<Vec<ExactScalar>>,
}

impl Endo {
    pub fn zero(m: usize) -> Self {
        Endo { m, rows: vec![vec![ExactScalar::zero(); m]; m] }
    }

    pub fn identity(m: usize) -> Self {
        let mut e = Self::zero(m);
        for j in 0..m {
            e.rows[j][j] = ExactScalar::one();
        }
        e
    }

    pub fn diagonal(d: &[ExactScalar]) -> Self {
        let mut e = Self::zero(d.len());
        for (j, x) in d.iter().enumerate() {
            e.rows[j][j] = x.clone();
        }
        e
    }

    /// Build from images of the basis vectors.
    pub fn from_columns(cols: &[Vector]) -> Self {
        let m = cols.len();
        let mut e = Self::zero(m);
        for (c, col) in cols.iter().enumerate() {
            for r in 0..m {
                e.rows[r][c] = col[r].clone();
            }
        }
        e
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.rows[r][c] = v;
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.m).map(|r| self.rows[r][c].clone()).collect()
    }

    pub fn apply(&self, v: &[ExactScalar]) -> Vector {
        let mut out = vec![ExactScalar::zero(); self.m];
        for (c, vc) in v.iter().enumerate() {
            if vc.is_zero() {
                continue;
            }
            for r in 0..self.m {
                let a = &self.rows[r][c];
                if !a.is_zero() {
                    out[r] += a * vc;
                }
            }
        }
        out
    }

    /// Image of the basis vector e_j (1-based).
    pub fn apply_basis(&self, j: usize) -> Vector {
        self.column(j - 1)
    }

    pub fn compose(&self, other: &Endo) -> Endo {
        let cols: Vec<Vector> = (0..self.m).map(|c| self.apply(&other.column(c))).collect();
        Endo::from_columns(&cols)
    }

    pub fn commutator(&self, other: &Endo) -> Endo {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn add(&self, o: &Endo) -> Endo {
        let mut e = self.clone();
        for r in 0..self.m {
            for c in 0..self.m {
                if !o.rows[r][c].is_zero() {
                    e.rows[r][c] += &o.rows[r][c];
                }
            }
        }
        e
    }

    pub fn sub(&self, o: &Endo) -> Endo {
        self.add(&o.scale(&ExactScalar::from_int(-1)))
    }

    pub fn scale(&self, s: &ExactScalar) -> Endo {
        let mut e = self.clone();
        for row in e.rows.iter_mut() {
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * s;
                }
            }
        }
        e
    }

    pub fn scale_rational(&self, r: &Rational) -> Endo {
        self.scale(&ExactScalar::real(r.clone()))
    }

    pub fn transpose(&self) -> Endo {
        let mut e = Self::zero(self.m);
        for r in 0..self.m {
            for c in 0..self.m {
                e.rows[c][r] = self.rows[r][c].clone();
            }
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn is_skew(&self) -> bool {
        self.add(&self.transpose()).is_zero()
    }

    /// P ∘ A ∘ P where P is the coordinate projection onto `mask` (1-based bitmask).
    pub fn restrict(&self, mask: u64) -> Endo {
        let mut e = Self::zero(self.m);
        for r in 0..self.m {
            for c in 0..self.m {
                if mask & (1 << r) != 0 && mask & (1 << c) != 0 {
                    e.rows[r][c] = self.rows[r][c].clone();
                }
            }
        }
        e
    }

    /// Zero out the columns outside `mask`: A ∘ P.
    pub fn precompose_projection(&self, mask: u64) -> Endo {
        let mut e = self.clone();
        for row in e.rows.iter_mut() {
            for (c, x) in row.iter_mut().enumerate() {
                if mask & (1 << c) == 0 {
                    *x = ExactScalar::zero();
                }
            }
        }
        e
    }
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let s: Vec<String> = row.iter().map(|x| x.short()).collect();
            writeln!(f, "[{}]", s.join(", "))?;
        }
        Ok(())
    }
}

/// Skew endomorphism A with g(X, A Y) = a(X, Y).
pub fn raise_to_endo(a: &MultiForm) -> Result<Endo> {
    let m = a.dim();
    let mut e = Endo::zero(m);
    for (s, c) in a.terms() {
        let idx = key_indices(*s);
        if idx.len() != 2 {
            return Err(Error::WrongDegree(idx.len(), 2));
        }
        let (p, q) = (idx[0] - 1, idx[1] - 1);
        e.rows[p][q] += c;
        e.rows[q][p] -= c;
    }
    Ok(e)
}

/// The 2-form (X, Y) ↦ g(X, A Y) of a skew endomorphism.
pub fn lower_to_form(a: &Endo) -> Result<MultiForm> {
    if !a.is_skew() {
        return Err(Error::NotSkew);
    }
    let mut f = MultiForm::zero(a.m);
    for p in 0..a.m {
        for q in (p + 1)..a.m {
            f.add_term((1 << p) | (1 << q), a.rows[p][q].clone());
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn s(v: i64) -> ExactScalar {
        ExactScalar::from_int(v)
    }

    fn form_strategy(dim: usize, deg: usize) -> impl Strategy<Value = MultiForm> {
        proptest::collection::vec((proptest::collection::btree_set(1..=dim, deg), -3i64..4), 0..6).prop_map(
            move |terms| {
                let mut f = MultiForm::zero(dim);
                for (idx, c) in terms {
                    let idx: Vec<usize> = idx.into_iter().collect();
                    f = f.add(&MultiForm::basis(dim, &idx).unwrap().scale(&s(c))).unwrap();
                }
                f
            },
        )
    }

    #[test]
    fn wedge_basics() {
        let e1 = MultiForm::one_form(7, 1);
        let e2 = MultiForm::one_form(7, 2);
        assert_eq!(e1.wedge(&e2).unwrap(), MultiForm::basis(7, &[1, 2]).unwrap());
        assert!(e1.wedge(&e1).unwrap().is_zero());
        assert_eq!(MultiForm::basis(7, &[2, 1]).unwrap(), MultiForm::basis(7, &[1, 2]).unwrap().scale(&s(-1)));
        assert!(e1.wedge(&MultiForm::one_form(11, 2)).is_err());
    }

    #[test]
    fn contraction_basics() {
        let e23 = MultiForm::basis(7, &[2, 3]).unwrap();
        assert_eq!(e23.contract_basis(2).unwrap(), MultiForm::one_form(7, 3));
        assert_eq!(e23.contract_basis(3).unwrap(), MultiForm::one_form(7, 2).scale(&s(-1)));
        let e123 = MultiForm::basis(7, &[1, 2, 3]).unwrap();
        assert!(e123.contract_basis(5).unwrap().is_zero());
    }

    #[test]
    fn raise_sign_convention() {
        // raise(e_{1,2}) sends e_2 ↦ e_1 and e_1 ↦ −e_2
        let a = raise_to_endo(&MultiForm::basis(7, &[1, 2]).unwrap()).unwrap();
        assert_eq!(a.apply_basis(2), unit_vector(7, 1));
        assert_eq!(a.apply_basis(1), vec_scale(&unit_vector(7, 2), &s(-1)));
    }

    #[test]
    fn lower_rejects_non_skew() {
        assert!(matches!(lower_to_form(&Endo::identity(3)), Err(Error::NotSkew)));
    }

    #[test]
    fn eval_matches_determinant() {
        let f = MultiForm::basis(7, &[1, 2]).unwrap();
        let x = vec_add(&unit_vector(7, 1), &vec_scale(&unit_vector(7, 2), &s(3)));
        let y = vec_add(&unit_vector(7, 1), &vec_scale(&unit_vector(7, 2), &s(5)));
        // det [[1,1],[3,5]] = 2
        assert_eq!(f.eval(&[&x, &y]), s(2));
    }

    #[test]
    fn display_shorthand() {
        let f = MultiForm::basis(7, &[2, 3])
            .unwrap()
            .add(&MultiForm::basis(7, &[4, 5]).unwrap())
            .unwrap()
            .add(&MultiForm::basis(7, &[6, 7]).unwrap())
            .unwrap()
            .scale(&s(-1));
        assert_eq!(f.to_string(), "−ξ_{2,3} − e_{4,5} − e_{6,7}");
        let g = MultiForm::basis(7, &[1, 4]).unwrap().scale(&ExactScalar::from_ratio(1, 2));
        assert_eq!(g.to_string(), "1/2·ξ_1∧e_4");
        let _ = rat(1, 2);
    }

    proptest! {
        #[test]
        fn graded_anticommutativity(a in form_strategy(7, 2), b in form_strategy(7, 3), c in form_strategy(7, 1)) {
            prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
            prop_assert_eq!(b.wedge(&c).unwrap(), c.wedge(&b).unwrap().scale(&s(-1)));
            prop_assert_eq!(c.wedge(&c).unwrap(), MultiForm::zero(7));
        }

        #[test]
        fn contraction_is_antiderivation(a in form_strategy(7, 2), b in form_strategy(7, 3), j in 1usize..=7) {
            let v = unit_vector(7, j);
            let lhs = a.wedge(&b).unwrap().contract(&v).unwrap();
            let rhs = a.contract(&v).unwrap().wedge(&b).unwrap()
                .add(&a.wedge(&b.contract(&v).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn raise_lower_round_trip(a in form_strategy(7, 2)) {
            let e = raise_to_endo(&a).unwrap();
            prop_assert!(e.is_skew());
            prop_assert_eq!(lower_to_form(&e).unwrap(), a);
        }
    }
}
