//! Exact arithmetic in the field ℚ(i, √2).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| Error::Parse(s.to_string()))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| Error::Parse(s.to_string()))?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(p, q))
    } else {
        let p = BigInt::from_str(t).map_err(|_| Error::Parse(s.to_string()))?;
        Ok(BigRational::from_integer(p))
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = num_integer::Roots::sqrt(x.numer());
    let d = num_integer::Roots::sqrt(x.denom());
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Square root of a non-negative rational inside ℚ(√2): works for q² and 2q².
pub fn field_sqrt(x: &Rational) -> Option<ExactScalar> {
    if let Some(r) = rational_sqrt(x) {
        return Some(ExactScalar::real(r));
    }
    let half = x / int(2);
    rational_sqrt(&half).map(|r| ExactScalar::from_parts(int(0), int(0), r, int(0)))
}

pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `a + b·i + c·√2 + d·i·√2`. Zero is stored without allocation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar(Option<Box<[Rational; 4]>>);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(None)
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn from_parts(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        if a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() {
            ExactScalar(None)
        } else {
            ExactScalar(Some(Box::new([a, b, c, d])))
        }
    }

    pub fn real(a: Rational) -> Self {
        Self::from_parts(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(int(v))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::real(rat(p, q))
    }

    pub fn i() -> Self {
        Self::from_parts(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Self::from_parts(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_none()
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Some(p) => p[0].is_one() && p[1].is_zero() && p[2].is_zero() && p[3].is_zero(),
            None => false,
        }
    }

    pub fn parts(&self) -> [Rational; 4] {
        match &self.0 {
            Some(p) => (**p).clone(),
            None => [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    /// The rational value, if the scalar lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        match &self.0 {
            None => Some(Rational::zero()),
            Some(p) if p[1].is_zero() && p[2].is_zero() && p[3].is_zero() => Some(p[0].clone()),
            _ => None,
        }
    }

    /// Complex conjugation: negates the i-components.
    pub fn conj(&self) -> Self {
        match &self.0 {
            None => Self::zero(),
            Some(p) => Self::from_parts(p[0].clone(), -&p[1], p[2].clone(), -&p[3]),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        match &self.0 {
            None => Self::zero(),
            Some(_) if r.is_zero() => Self::zero(),
            Some(p) => Self::from_parts(&p[0] * r, &p[1] * r, &p[2] * r, &p[3] * r),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        // x = p + i q with p, q ∈ ℚ(√2); x⁻¹ = (p − i q) / (p² + q²).
        let [a, b, c, d] = match &self.0 {
            None => return Err(Error::DivisionByZero),
            Some(p) => (**p).clone(),
        };
        let two = int(2);
        // p² + q² = (a² + 2c² + b² + 2d²) + 2(ac + bd)√2 =: u + v√2
        let u = &a * &a + &two * &c * &c + &b * &b + &two * &d * &d;
        let v = &two * (&a * &c + &b * &d);
        let norm = &u * &u - &two * &v * &v;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (u + v√2)⁻¹ = (u − v√2)/norm
        let ru = &u / &norm;
        let rv = -(&v / &norm);
        let conj = Self::from_parts(a, -b, c, -d);
        Ok(conj * Self::from_parts(ru, Rational::zero(), rv, Rational::zero()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Real and imaginary parts as elements of ℚ(√2) encoded as (rational, √2-coefficient).
    pub fn re_im(&self) -> ((Rational, Rational), (Rational, Rational)) {
        let [a, b, c, d] = self.parts();
        ((a, c), (b, d))
    }

    pub fn is_positive_real(&self) -> bool {
        let ((a, c), (b, d)) = self.re_im();
        if !b.is_zero() || !d.is_zero() {
            return false;
        }
        sign_qsqrt2(&a, &c) > 0
    }
}

/// Sign of `a + c√2`.
pub fn sign_qsqrt2(a: &Rational, c: &Rational) -> i32 {
    let sa = if a.is_zero() { 0 } else if a.is_positive() { 1 } else { -1 };
    let sc = if c.is_zero() { 0 } else if c.is_positive() { 1 } else { -1 };
    if sa == 0 {
        return sc;
    }
    if sc == 0 || sa == sc {
        return sa;
    }
    let lhs = a * a;
    let rhs = int(2) * c * c;
    if lhs > rhs {
        sa
    } else if lhs < rhs {
        sc
    } else {
        0
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.parts();
        write!(
            f,
            "({}) + ({})i + ({})r2 + ({})ir2",
            fmt_rational(&a),
            fmt_rational(&b),
            fmt_rational(&c),
            fmt_rational(&d)
        )
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.short())
    }
}

impl ExactScalar {
    /// Compact rendering that omits zero components, e.g. `-1/2i` or `1 + r2`.
    pub fn short(&self) -> String {
        let [a, b, c, d] = self.parts();
        let mut terms = Vec::new();
        for (v, unit) in [(a, ""), (b, "i"), (c, "r2"), (d, "ir2")] {
            if v.is_zero() {
                continue;
            }
            if unit.is_empty() {
                terms.push(fmt_rational(&v));
            } else if v.is_one() {
                terms.push(unit.to_string());
            } else if v == -Rational::one() {
                terms.push(format!("-{unit}"));
            } else {
                terms.push(format!("{}{}", fmt_rational(&v), unit));
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        ExactScalar::real(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::from_int(v)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        match (&self.0, &o.0) {
            (None, _) => o.clone(),
            (_, None) => self.clone(),
            (Some(p), Some(q)) => ExactScalar::from_parts(&p[0] + &q[0], &p[1] + &q[1], &p[2] + &q[2], &p[3] + &q[3]),
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        match (&self.0, &o.0) {
            (_, None) => self.clone(),
            (None, _) => -o,
            (Some(p), Some(q)) => ExactScalar::from_parts(&p[0] - &q[0], &p[1] - &q[1], &p[2] - &q[2], &p[3] - &q[3]),
        }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        let (p, q) = match (&self.0, &o.0) {
            (Some(p), Some(q)) => (p, q),
            _ => return ExactScalar::zero(),
        };
        // basis 1, i, s, is with i² = −1, s² = 2
        let two = int(2);
        let (a1, b1, c1, d1) = (&p[0], &p[1], &p[2], &p[3]);
        let (a2, b2, c2, d2) = (&q[0], &q[1], &q[2], &q[3]);
        let a = a1 * a2 - b1 * b2 + &two * (c1 * c2 - d1 * d2);
        let b = a1 * b2 + b1 * a2 + &two * (c1 * d2 + d1 * c2);
        let c = a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2;
        let d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2;
        ExactScalar::from_parts(a, b, c, d)
    }
}

impl<'a> Neg for &'a ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match &self.0 {
            None => ExactScalar::zero(),
            Some(p) => ExactScalar(Some(Box::new([-&p[0], -&p[1], -&p[2], -&p[3]]))),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                self.$m(&o)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        if o.is_zero() {
            return;
        }
        *self = &*self + o;
    }
}

impl AddAssign<ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: ExactScalar) {
        *self += &o;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        if o.is_zero() {
            return;
        }
        *self = &*self - o;
    }
}

impl SubAssign<ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: ExactScalar) {
        *self -= &o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..9).prop_map(|(p, q)| rat(p, q))
    }

    fn scalar() -> impl Strategy<Value = ExactScalar> {
        (small_rat(), small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c, d)| ExactScalar::from_parts(a, b, c, d))
    }

    #[test]
    fn defining_relations() {
        assert_eq!(ExactScalar::sqrt2() * ExactScalar::sqrt2(), ExactScalar::from_int(2));
        assert_eq!(ExactScalar::i() * ExactScalar::i(), ExactScalar::from_int(-1));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let x = ExactScalar::one() + ExactScalar::sqrt2();
        let expected = ExactScalar::from_int(-1) + ExactScalar::sqrt2();
        assert_eq!(x.inv().unwrap(), expected);
        assert!((x * expected).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(ExactScalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn display_format() {
        let x = ExactScalar::from_parts(rat(1, 2), int(-3), int(0), int(2));
        assert_eq!(x.to_string(), "(1/2) + (-3)i + (0)r2 + (2)ir2");
        assert_eq!(x.short(), "1/2 - 3i + 2ir2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn perfect_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&int(6)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
        assert_eq!(field_sqrt(&int(8)), Some(ExactScalar::sqrt2() * ExactScalar::from_int(2)));
        assert_eq!(field_sqrt(&int(3)), None);
    }

    #[test]
    fn sign_of_quadratic_surd() {
        assert_eq!(sign_qsqrt2(&int(-1), &int(1)), 1);
        assert_eq!(sign_qsqrt2(&int(-2), &int(1)), -1);
        assert_eq!(sign_qsqrt2(&int(3), &int(-2)), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!((&x * &y).conj(), x.conj() * y.conj());
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }
}
