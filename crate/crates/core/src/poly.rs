//! Integer polynomials in `q` and reduced rational functions over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. The highest stored coefficient is never zero; the zero polynomial
/// has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `q^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        )
    }

    /// Primitive part with non-negative leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Exact division in `Z[q]`. Returns `None` when `divisor` does not divide
    /// `self` with an integral quotient.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let sd = rem.len() - 1;
        if sd < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Pseudo-remainder of `self` by `divisor`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) * self`.
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - dd;
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &top * dc;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        IntPoly::new(rem)
    }

    /// gcd in `Z[q]`, normalised to a non-negative leading coefficient.
    ///
    /// Primitive Euclidean remainder sequence; the content gcd is multiplied
    /// back in at the end.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&content)
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match d {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !unit {
                        write!(f, "{abs}")?;
                    }
                    write!(f, "q")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reduced fraction `num / den` of integer polynomials.
///
/// Canonical form: `gcd(num, den) = 1` in `Z[q]` and `den` has a positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    /// Builds and canonicalises `num / den`. Returns `None` if `den` is zero.
    pub fn new(num: IntPoly, den: IntPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::canonical(num, den))
    }

    fn canonical(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.leading().is_some_and(Signed::is_negative) {
            num = -&num;
            den = -&den;
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    /// Re-applies canonicalisation; a no-op on values built through [`RatFunc::new`].
    pub fn recanonicalize(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    /// Taylor coefficients at `q = 0` through degree `order`. Requires the
    /// constant term of the denominator to be `±1`, which holds for every
    /// magnitude.
    pub fn taylor(&self, order: usize) -> Option<Vec<BigInt>> {
        let d0 = self.den.coeff(0);
        if !(d0.is_one() || (-&d0).is_one()) {
            return None;
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut acc = self.num.coeff(m);
            for i in 1..=m.min(self.den.coeffs.len().saturating_sub(1)) {
                acc -= &self.den.coeffs[i] * &out[m - i];
            }
            out.push(acc * &d0);
        }
        Some(out)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == IntPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-6, -10, 4, 2]).to_string(), "2q^3 + 4q^2 - 10q - 6");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
        assert_eq!(p(&[]).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 0, 1]);
        assert_eq!(b.div_exact(&a), Some(p(&[-1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&a), None);
        assert_eq!(p(&[1, 2]).div_exact(&p(&[2])), None);
    }

    #[test]
    fn gcd_includes_content() {
        let g = p(&[2, 2]).gcd(&p(&[-4, 0, 4]));
        assert_eq!(g, p(&[2, 2]));
        assert_eq!(p(&[3]).gcd(&p(&[0, 6])), p(&[3]));
    }

    #[test]
    fn canonical_form() {
        // (2 - 2q) / (1 - q^2) = 2 / (1 + q)
        let r = RatFunc::new(p(&[2, -2]), p(&[1, 0, -1])).unwrap();
        assert_eq!(r.num(), &p(&[2]));
        assert_eq!(r.den(), &p(&[1, 1]));
        assert_eq!(r.recanonicalize(), r);
        assert!(RatFunc::new(p(&[1]), p(&[])).is_none());
        let z = RatFunc::new(p(&[]), p(&[0, 5])).unwrap();
        assert_eq!(z.den(), &IntPoly::one());
    }

    #[test]
    fn taylor_of_geometric_series() {
        let r = RatFunc::new(p(&[1]), p(&[1, 1])).unwrap();
        let t: Vec<i64> = r
            .taylor(4)
            .unwrap()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(t, vec![1, -1, 1, -1, 1]);
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-9i64..=9, 0..5).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(a.div_exact(&g).is_some());
            prop_assert!(b.div_exact(&g).is_some());
        }

        #[test]
        fn canonicalization_is_idempotent(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let r = RatFunc::new(&a * &c, &b * &c).unwrap();
            prop_assert_eq!(r.recanonicalize(), r.clone());
            prop_assert_eq!(r, RatFunc::new(a, b).unwrap());
        }

        #[test]
        fn mul_then_divide(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}
