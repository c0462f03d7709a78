//! Exact dyadic probabilities.
//!
//! Every probability this crate certifies is a count of assignments (or
//! seeds) over a power-of-two denominator, so it is stored exactly as
//! `num / 2^log2_den` with the numerator odd (or zero). Sums, differences
//! and comparisons are exact; `to_f64` is only for reporting.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// After normalization exponents stay small; anything close to this limit
/// indicates a bug upstream (caps keep real exponents below ~60).
const MAX_LOG2_DEN: u32 = 100;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BiasValue {
    num: u128,
    log2_den: u32,
}

impl BiasValue {
    pub const ZERO: BiasValue = BiasValue { num: 0, log2_den: 0 };
    pub const ONE: BiasValue = BiasValue { num: 1, log2_den: 0 };

    /// `count / 2^log2_den`, normalized.
    pub fn from_count(count: u128, log2_den: u32) -> Self {
        let mut v = BiasValue {
            num: count,
            log2_den,
        };
        v.normalize();
        assert!(
            v.log2_den <= MAX_LOG2_DEN,
            "dyadic exponent {} out of range",
            v.log2_den
        );
        v
    }

    /// Probability of a single width-`w` term: `2^-w`.
    pub fn pow2_inverse(w: u32) -> Self {
        BiasValue::from_count(1, w)
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.log2_den = 0;
            return;
        }
        let tz = (self.num.trailing_zeros()).min(self.log2_den);
        self.num >>= tz;
        self.log2_den -= tz;
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.log2_den == 0
    }

    /// Numerators over the common denominator `2^max(e1,e2)`.
    fn aligned(&self, other: &Self) -> (u128, u128, u32) {
        let e = self.log2_den.max(other.log2_den);
        let a = self.num << (e - self.log2_den);
        let b = other.num << (e - other.log2_den);
        (a, b, e)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        BiasValue::from_count(a + b, e)
    }

    /// `|self - other|`.
    pub fn abs_diff(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        BiasValue::from_count(a.abs_diff(b), e)
    }

    /// `1 - self`; panics if `self > 1`.
    pub fn complement(&self) -> Self {
        let e = self.log2_den;
        let one = 1u128 << e;
        assert!(self.num <= one, "complement of a value above one");
        BiasValue::from_count(one - self.num, e)
    }

    /// Average of two probabilities (the Shannon-expansion combiner).
    pub fn avg(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        BiasValue::from_count(a + b, e + 1)
    }

    /// Exact product; both operands must be in `[0,1]`.
    pub fn mul(&self, other: &Self) -> Self {
        BiasValue::from_count(
            self.num.checked_mul(other.num).expect("dyadic overflow"),
            self.log2_den + other.log2_den,
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / (self.log2_den as f64).exp2()
    }

    /// Natural log of `self`, for gamma reporting. Requires `self > 0`.
    pub fn ln(&self) -> f64 {
        assert!(self.num > 0);
        (self.num as f64).ln() - self.log2_den as f64 * std::f64::consts::LN_2
    }

    pub fn as_fraction_string(&self) -> String {
        format!("{}/2^{}", self.num, self.log2_den)
    }
}

impl PartialOrd for BiasValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BiasValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl Serialize for BiasValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BiasValue", 2)?;
        s.serialize_field("exact", &self.as_fraction_string())?;
        s.serialize_field("value", &self.to_f64())?;
        s.end()
    }
}
