//! Exact arithmetic in `Q(√5)`, used to compare integers with powers of the
//! golden ratio without floating point.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// `rational + irrational·√5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSqrt5 {
    pub rational: BigRational,
    pub irrational: BigRational,
}

impl QSqrt5 {
    pub fn new(rational: BigRational, irrational: BigRational) -> Self {
        QSqrt5 {
            rational,
            irrational,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QSqrt5::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(r: BigRational) -> Self {
        QSqrt5::new(r, BigRational::zero())
    }

    pub fn one() -> Self {
        QSqrt5::from_int(1)
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        QSqrt5::new(half.clone(), half)
    }

    /// The conjugate `(1 − √5)/2`.
    pub fn phi_conjugate() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        QSqrt5::new(half.clone(), -half)
    }

    pub fn sqrt5() -> Self {
        QSqrt5::new(BigRational::zero(), BigRational::one())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = QSqrt5::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact sign of the real number represented.
    pub fn signum(&self) -> Ordering {
        let a = &self.rational;
        let b = &self.irrational;
        let sa = a.cmp(&BigRational::zero());
        let sb = b.cmp(&BigRational::zero());
        if sa == sb || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // Opposite signs: compare a² with 5b².
        let five = BigRational::from_integer(5.into());
        match (a * a).cmp(&(five * b * b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn floor(&self) -> BigInt {
        let approx = self.rational.to_f64().unwrap_or(0.0)
            + self.irrational.to_f64().unwrap_or(0.0) * 5f64.sqrt();
        let mut n = BigInt::from(approx.floor() as i128);
        // Correct the float estimate with exact comparisons.
        loop {
            if (self - &QSqrt5::from_int(n.clone())).signum() == Ordering::Less {
                n -= 1;
            } else if (self - &QSqrt5::from_int(&n + 1)).signum() != Ordering::Less {
                n += 1;
            } else {
                return n;
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.irrational.is_zero()
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt5 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a QSqrt5> for &'a QSqrt5 {
    type Output = QSqrt5;
    fn add(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.rational + &o.rational, &self.irrational + &o.irrational)
    }
}

impl<'a> Sub<&'a QSqrt5> for &'a QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.rational - &o.rational, &self.irrational - &o.irrational)
    }
}

impl<'a> Mul<&'a QSqrt5> for &'a QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, o: &QSqrt5) -> QSqrt5 {
        let five = BigRational::from_integer(5.into());
        QSqrt5::new(
            &self.rational * &o.rational + five * &self.irrational * &o.irrational,
            &self.rational * &o.irrational + &self.irrational * &o.rational,
        )
    }
}

impl Neg for QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        QSqrt5::new(-self.rational, -self.irrational)
    }
}

/// `φ^k` for any integer exponent, computed by repeated multiplication.
pub fn golden_power(k: i64) -> QSqrt5 {
    if k >= 0 {
        QSqrt5::phi().pow(k as u32)
    } else {
        // φ⁻¹ = φ − 1
        let inv = &QSqrt5::phi() - &QSqrt5::one();
        inv.pow((-k) as u32)
    }
}

/// Exact test of `value ≥ φ^k` for a rational `value`.
pub fn at_least_golden_power(value: &BigRational, k: i64) -> bool {
    QSqrt5::from_ratio(value.clone()) >= golden_power(k)
}

/// A rational as `"p/q"` (or `"p"` when integral).
pub fn ratio_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn golden_power_bounds() {
        // φ ≈ 1.618, φ² ≈ 2.618, φ⁻¹ ≈ 0.618
        assert!(at_least_golden_power(&int(2), 1));
        assert!(!at_least_golden_power(&int(1), 1));
        assert!(at_least_golden_power(&int(3), 2));
        assert!(!at_least_golden_power(&int(2), 2));
        assert!(at_least_golden_power(&int(1), 0));
        assert!(at_least_golden_power(&BigRational::new(2.into(), 3.into()), -1));
        assert!(!at_least_golden_power(&BigRational::new(3.into(), 5.into()), -1));
    }

    #[test]
    fn floor_is_exact() {
        assert_eq!(QSqrt5::phi().floor(), BigInt::from(1));
        assert_eq!(QSqrt5::sqrt5().floor(), BigInt::from(2));
        assert_eq!((-QSqrt5::phi()).floor(), BigInt::from(-2));
        assert_eq!(golden_power(20).floor(), BigInt::from(15126));
    }

    #[test]
    fn phi_satisfies_its_polynomial() {
        let p = QSqrt5::phi();
        let lhs = &p * &p;
        let rhs = &p + &QSqrt5::one();
        assert_eq!(lhs, rhs);
        assert_eq!((&golden_power(-3) * &golden_power(3)), QSqrt5::one());
    }
}
