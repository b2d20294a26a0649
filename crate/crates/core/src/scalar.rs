//! Scalar abstractions.
//!
//! Every decision path works with exact ratios of set sizes. The integer type
//! behind those ratios is a type parameter so the same code runs on `u64` for
//! sweeps and on [`num_bigint::BigUint`] where products of powers can grow
//! without bound. Floating point only appears in exponent reports, generic
//! over [`num_traits::Float`].

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, One, ToPrimitive, Unsigned};

/// Unsigned integer usable as a set-size scalar.
pub trait Count:
    Integer + Unsigned + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn from_size(n: usize) -> Self {
        Self::from_usize(n).expect("set size fits in the scalar type")
    }
}

impl<T> Count for T where
    T: Integer + Unsigned + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Exact `num / den` built from two set sizes. `den` must be non-zero.
pub fn size_ratio<T: Count>(num: usize, den: usize) -> Ratio<T> {
    Ratio::new(T::from_size(num), T::from_size(den))
}

/// `base^exp` in `T`.
pub fn pow<T: Count>(base: &T, exp: u32) -> T {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

pub fn ratio_pow<T: Count>(r: &Ratio<T>, exp: u32) -> Ratio<T> {
    Ratio::new(pow(r.numer(), exp), pow(r.denom(), exp))
}

/// Natural-log ratio `ln(top) / ln(bottom)`, `None` when `bottom` is 1 or
/// either argument is below 1. Report-only.
pub fn log_ratio<F, T>(top: &Ratio<T>, bottom: &Ratio<T>) -> Option<F>
where
    F: Float + FromPrimitive,
    T: Count,
{
    let to_float = |r: &Ratio<T>| -> Option<F> {
        let n = F::from_f64(r.numer().to_f64()?)?;
        let d = F::from_f64(r.denom().to_f64()?)?;
        Some(n / d)
    };
    if bottom.is_one() || *bottom < Ratio::one() || *top < Ratio::one() {
        return None;
    }
    let t = to_float(top)?;
    let b = to_float(bottom)?;
    Some(t.ln() / b.ln())
}

/// Outcome of checking a claimed inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Strict,
    Equal,
    Violated,
}

impl Bound {
    /// Classifies `lhs.cmp(rhs)`.
    pub fn of(ord: std::cmp::Ordering) -> Self {
        match ord {
            std::cmp::Ordering::Less => Bound::Strict,
            std::cmp::Ordering::Equal => Bound::Equal,
            std::cmp::Ordering::Greater => Bound::Violated,
        }
    }

    pub fn compare<V: Ord + ?Sized>(lhs: &V, rhs: &V) -> Self {
        Self::of(lhs.cmp(rhs))
    }

    pub fn holds(self) -> bool {
        self != Bound::Violated
    }
}

/// Renders a ratio as `num/den`, always with an explicit denominator.
pub fn fraction<T: Count>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn ratios_reduce() {
        let r: Ratio<u64> = size_ratio(6, 4);
        assert_eq!((*r.numer(), *r.denom()), (3, 2));
        let b: Ratio<BigUint> = size_ratio(6, 4);
        assert_eq!(b, Ratio::new(BigUint::from(3u8), BigUint::from(2u8)));
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&3u64, 0), 1);
        assert_eq!(pow(&3u64, 4), 81);
        let big = pow(&BigUint::from(30u32), 30);
        assert_eq!(big.to_string(), "205891132094649000000000000000000000000000000");
        let r: Ratio<u64> = size_ratio(3, 2);
        assert_eq!(ratio_pow(&r, 3), Ratio::new(27, 8));
    }

    #[test]
    fn log_ratio_generic_over_float() {
        let s: Ratio<u64> = size_ratio(26, 8);
        let d: Ratio<u64> = size_ratio(25, 8);
        let e64: f64 = log_ratio(&s, &d).unwrap();
        let e32: f32 = log_ratio(&s, &d).unwrap();
        assert!((e64 - 1.0345).abs() < 1e-3);
        assert!((f64::from(e32) - e64).abs() < 1e-5);
        assert_eq!(log_ratio::<f64, u64>(&s, &Ratio::one()), None);
    }
}
