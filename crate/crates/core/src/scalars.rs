//! Exact scalar arithmetic: arbitrary-precision rationals and truncated
//! formal power series in the deformation parameter.
//!
//! A [`ZSeries`] stores the coefficients of `z^0 .. z^K` for a fixed
//! truncation order `K`; everything above `K` is absent by construction.
//! Binary operations on series of different orders re-truncate to the
//! minimum, so a result never claims accuracy that was not computed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar, always reduced, denominator positive.
pub type Rational = BigRational;

/// `n/d` as an exact rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as an exact rational.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as an exact rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Truncated formal power series in the deformation parameter with exact
/// rational coefficients. `coeffs[k]` is the coefficient of `z^k`;
/// `coeffs.len() == order + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    coeffs: Vec<Rational>,
}

impl ZSeries {
    pub fn zero(order: usize) -> Self {
        ZSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, rint(1))
    }

    /// `c * z^k`, dropped to zero when `k` exceeds the truncation order.
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the z^0 coefficient");
        ZSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest power with a nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drop coefficients above `order` (never pads upward).
    pub fn truncate(&self, order: usize) -> Self {
        let len = (order + 1).min(self.coeffs.len());
        ZSeries { coeffs: self.coeffs[..len].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        ZSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ZSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Cauchy product, truncated to the minimum order of the operands.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > order || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        ZSeries { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ZSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `z^k`; top coefficients fall off the truncation window.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= self.order() && !c.is_zero() {
                s.coeffs[i + k] = c.clone();
            }
        }
        s
    }

    /// Divide by `z^k`. Requires valuation >= `k`. The result keeps the same
    /// truncation order; its top `k` coefficients are only meaningful when the
    /// caller computed the input with headroom.
    pub fn shift_down(&self, k: usize) -> Result<Self, crate::ncpoly::AlgebraError> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(crate::ncpoly::AlgebraError::DivisionValuation(k));
        }
        let mut s = Self::zero(self.order());
        for i in k..self.coeffs.len() {
            s.coeffs[i - k] = self.coeffs[i].clone();
        }
        Ok(s)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self, crate::ncpoly::AlgebraError> {
        if self.coeffs[0].is_zero() {
            return Err(crate::ncpoly::AlgebraError::NonInvertible);
        }
        let order = self.order();
        let mut inv = vec![Rational::zero(); order + 1];
        inv[0] = self.coeffs[0].recip();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=n {
                acc += &self.coeffs[i] * &inv[n - i];
            }
            inv[n] = -acc / &self.coeffs[0];
        }
        Ok(ZSeries { coeffs: inv })
    }

    /// `exp(c z)` truncated: coefficient of `z^n` is `c^n / n!`.
    pub fn scalar_exp(c: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut pow = Rational::one();
        for n in 0..=order {
            if n > 0 {
                pow *= c;
            }
            coeffs.push(&pow / factorial(n));
        }
        ZSeries { coeffs }
    }

    /// Substitute `z -> r * z'`: coefficient of `z^n` picks up `r^n`.
    pub fn rescale_param(&self, r: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut pow = Rational::one();
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                pow *= r;
            }
            coeffs.push(c * &pow);
        }
        ZSeries { coeffs }
    }

    /// Order-zero part, padded back to the original truncation order.
    pub fn classical_part(&self) -> Self {
        Self::monomial(self.order(), 0, self.coeffs[0].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exp_expansion(c: i64, order: usize) -> ZSeries {
        // Independent oracle: n-th coefficient of exp(c z) is c^n / n!.
        let mut coeffs = Vec::new();
        for n in 0..=order {
            let mut num = rint(1);
            for _ in 0..n {
                num *= rint(c);
            }
            coeffs.push(num / factorial(n));
        }
        ZSeries::from_coeffs(coeffs)
    }

    #[test]
    fn add_identity_and_rationals() {
        let k = 4;
        let one_plus_z = ZSeries::one(k).add(&ZSeries::monomial(k, 1, rint(1)));
        assert_eq!(one_plus_z.add(&ZSeries::zero(k)), one_plus_z);

        let half_z = ZSeries::monomial(k, 1, rat(1, 2));
        assert_eq!(half_z.add(&half_z), ZSeries::monomial(k, 1, rint(1)));
    }

    #[test]
    fn add_exponential_quotients_cancel() {
        // (1 - e^{-z})/z plus (e^{-z} - 1)/z vanishes identically.
        let k = 6;
        let em = exp_expansion(-1, k + 1);
        let lhs = ZSeries::one(k + 1).sub(&em).shift_down(1).unwrap().truncate(k);
        let rhs = em.sub(&ZSeries::one(k + 1)).shift_down(1).unwrap().truncate(k);
        assert!(lhs.add(&rhs).is_zero());
        // and the quotient itself matches the termwise oracle (-1)^{n+1} z^{n-1}/n!
        for n in 1..=k + 1 {
            let expect = if n % 2 == 1 { rint(1) } else { rint(-1) } / factorial(n);
            if n - 1 <= k {
                assert_eq!(lhs.coeff(n - 1), expect);
            }
        }
    }

    #[test]
    fn mul_truncates_and_multiplies() {
        let z1 = ZSeries::monomial(1, 1, rint(1));
        assert!(z1.mul(&z1).is_zero());

        let k = 2;
        let a = ZSeries::one(k).sub(&ZSeries::monomial(k, 1, rat(1, 2)));
        let b = ZSeries::one(k).add(&ZSeries::monomial(k, 1, rat(1, 2)));
        let expect = ZSeries::one(k).sub(&ZSeries::monomial(k, 2, rat(1, 4)));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn mul_exp_inverse() {
        let k = 8;
        let e = exp_expansion(1, k);
        let em = exp_expansion(-1, k);
        assert_eq!(e.mul(&em), ZSeries::one(k));
    }

    #[test]
    fn scalar_exp_expansion() {
        assert_eq!(ZSeries::scalar_exp(&rint(0), 5), ZSeries::one(5));
        let s = ZSeries::scalar_exp(&rint(1), 3);
        assert_eq!(
            s,
            ZSeries::from_coeffs(vec![rint(1), rint(1), rat(1, 2), rat(1, 6)])
        );
        assert_eq!(s, exp_expansion(1, 3));
    }

    #[test]
    fn inversion_round_trip() {
        let k = 6;
        let a = ZSeries::from_coeffs(vec![
            rint(2),
            rat(1, 3),
            rint(0),
            rint(-1),
            rat(5, 7),
            rint(4),
            rat(-2, 9),
        ]);
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv), ZSeries::one(k));
    }

    fn series_from(raw: &[(i64, i64)], order: usize) -> ZSeries {
        ZSeries::from_coeffs(raw[..=order].iter().map(|&(n, d)| rat(n, d)).collect())
    }

    proptest! {
        #[test]
        fn ring_axioms(
            k in 0usize..=8,
            ra in proptest::collection::vec((-20i64..20, 1i64..10), 9),
            rb in proptest::collection::vec((-20i64..20, 1i64..10), 9),
            rc in proptest::collection::vec((-20i64..20, 1i64..10), 9),
        ) {
            let a = series_from(&ra, k);
            let b = series_from(&rb, k);
            let c = series_from(&rc, k);
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
        }

        #[test]
        fn truncation_coherence(
            k in 0usize..=6,
            extra in 1usize..=3,
            ra in proptest::collection::vec((-20i64..20, 1i64..10), 10),
            rb in proptest::collection::vec((-20i64..20, 1i64..10), 10),
        ) {
            let a = series_from(&ra, k + extra);
            let b = series_from(&rb, k + extra);
            prop_assert_eq!(a.mul(&b).truncate(k), a.truncate(k).mul(&b.truncate(k)));
            prop_assert_eq!(a.add(&b).truncate(k), a.truncate(k).add(&b.truncate(k)));
        }

        #[test]
        fn exp_additivity(k in 0usize..=8, an in -6i64..6, ad in 1i64..5, bn in -6i64..6, bd in 1i64..5) {
            let a = rat(an, ad);
            let b = rat(bn, bd);
            let lhs = ZSeries::scalar_exp(&a, k).mul(&ZSeries::scalar_exp(&b, k));
            let rhs = ZSeries::scalar_exp(&(&a + &b), k);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
