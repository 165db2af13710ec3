//! Exact arithmetic in the cyclotomic ring `Z[ζ]`, `ζ = e^{2πi/2^k}`.
//!
//! The ring is realized as `Z[x]/(x^N + 1)` with `N = 2^{k-1}`. Elements are
//! stored as coefficient vectors in the power basis `1, ζ, …, ζ^{N-1}`, which
//! is a basis of `Q(ζ)`: two elements are equal iff their coefficient vectors
//! are equal. Every decision in the crate relies on that fact; the floating
//! point rendering exists for display only.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported level.
pub const MAX_LEVEL: u32 = 6;

/// A validated level `k` in `1..=6`: the ring is `Z[ζ_{2^k}]`, the value
/// set of a generalized Boolean function is `Z_{2^k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Level(u32);

impl Level {
    pub fn new(k: u32) -> Result<Self> {
        if (1..=MAX_LEVEL).contains(&k) {
            Ok(Level(k))
        } else {
            Err(Error::LevelOutOfRange(k))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `2^k`, the order of `ζ`.
    #[inline]
    pub fn order(self) -> usize {
        1 << self.0
    }

    /// `2^{k-1}`, the ring dimension (and the exponent with `ζ^N = -1`).
    #[inline]
    pub fn dim(self) -> usize {
        1 << (self.0 - 1)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z[ζ_{2^k}]` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    level: Level,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(level: Level) -> Self {
        CycInt {
            level,
            coeffs: vec![BigInt::zero(); level.dim()],
        }
    }

    pub fn one(level: Level) -> Self {
        Self::from_int(level, 1)
    }

    pub fn from_int(level: Level, c: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = c.into();
        z
    }

    /// Builds an element from its power-basis coefficients.
    pub fn from_coeffs<T: Into<BigInt>>(level: Level, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != level.dim() {
            return Err(Error::WrongLength {
                expected: level.dim(),
                found: coeffs.len(),
            });
        }
        Ok(CycInt {
            level,
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        })
    }

    /// `ζ^e`; the exponent is reduced modulo `2^k`.
    pub fn root_power(level: Level, e: i64) -> Self {
        let r = e.rem_euclid(level.order() as i64) as usize;
        let n = level.dim();
        let mut z = Self::zero(level);
        if r >= n {
            z.coeffs[r - n] = BigInt::from(-1);
        } else {
            z.coeffs[r] = BigInt::one();
        }
        z
    }

    #[inline]
    pub fn level(&self) -> Level {
        self.level
    }

    #[inline]
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_level(&self, other: &CycInt) -> Result<()> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(Error::LevelMismatch(self.level.get(), other.level.get()))
        }
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check_level(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt {
            level: self.level,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check_level(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt {
            level: self.level,
            coeffs,
        })
    }

    pub fn scale(&self, c: &BigInt) -> CycInt {
        CycInt {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Schoolbook negacyclic convolution: terms past degree `N-1` wrap around
    /// with a sign flip, realizing `ζ^N = -1`.
    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check_level(other)?;
        let n = self.level.dim();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let d = i + j;
                if d < n {
                    out[d] += p;
                } else {
                    out[d - n] -= p;
                }
            }
        }
        Ok(CycInt {
            level: self.level,
            coeffs: out,
        })
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycInt {
        let n = self.level.dim();
        let mut out = vec![BigInt::zero(); n];
        out[0] = self.coeffs[0].clone();
        for j in 1..n {
            out[n - j] = -&self.coeffs[j];
        }
        CycInt {
            level: self.level,
            coeffs: out,
        }
    }

    /// `a · conj(a)`, i.e. `|a|^2` as a (real) ring element.
    pub fn norm_sq(&self) -> CycInt {
        self.try_mul(&self.conj()).expect("same level")
    }

    /// Equal to its own conjugate, i.e. a real algebraic integer.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Lifts into `Z[ζ_{2^t}]` through `ζ_{2^k} = ζ_{2^t}^{2^{t-k}}`.
    pub fn embed(&self, target: Level) -> Result<CycInt> {
        if target < self.level {
            return Err(Error::EmbedDown {
                from: self.level.get(),
                to: target.get(),
            });
        }
        let stride = 1usize << (target.get() - self.level.get());
        let mut out = CycInt::zero(target);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j * stride] = c.clone();
        }
        Ok(out)
    }

    /// Approximate complex value `(re, im)`. Display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let order = self.level.order() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * j as f64 / order;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }

    /// Coefficients as `i64`, when they all fit.
    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            match j {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}·ζ")?,
                _ => write!(f, "{mag}·ζ^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        let (re, im) = self.to_complex();
        write!(f, "  (≈ {re:.4}{im:+.4}i)")
    }
}

/// A single coefficient rendered as a JSON integer when it fits in `i64`,
/// otherwise as a decimal string.
struct ExactInt<'a>(&'a BigInt);

impl Serialize for ExactInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<ExactInt<'_>> = self.coeffs.iter().map(ExactInt).collect();
        let mut st = s.serialize_struct("CycInt", 2)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("k", &self.level)?;
        st.end()
    }
}

impl Add<&CycInt> for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("cyclotomic level mismatch")
    }
}

impl Sub<&CycInt> for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("cyclotomic level mismatch")
    }
}

impl Mul<&CycInt> for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic level mismatch")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.level, rhs.level, "cyclotomic level mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycInt> for CycInt {
    fn sub_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.level, rhs.level, "cyclotomic level mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lv(k: u32) -> Level {
        Level::new(k).unwrap()
    }

    fn cyc(k: u32, c: &[i64]) -> CycInt {
        CycInt::from_coeffs(lv(k), c.to_vec()).unwrap()
    }

    #[test]
    fn level_bounds() {
        assert_eq!(Level::new(0), Err(Error::LevelOutOfRange(0)));
        assert_eq!(Level::new(7), Err(Error::LevelOutOfRange(7)));
        assert_eq!(lv(4).dim(), 8);
        assert_eq!(lv(1).dim(), 1);
    }

    #[test]
    fn root_powers() {
        assert_eq!(CycInt::root_power(lv(4), 0), cyc(4, &[1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(CycInt::root_power(lv(4), 9), cyc(4, &[0, -1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(CycInt::root_power(lv(2), 3), cyc(2, &[0, -1]));
        assert_eq!(CycInt::root_power(lv(2), -1), cyc(2, &[0, -1]));
        assert_eq!(CycInt::root_power(lv(1), 1), cyc(1, &[-1]));
    }

    #[test]
    fn addition() {
        assert_eq!(&cyc(2, &[1, 0]) + &cyc(2, &[0, 1]), cyc(2, &[1, 1]));
        let z = cyc(3, &[4, -2, 7, 1]);
        assert!((&z + &(-&z)).is_zero());
        assert_eq!(&cyc(3, &[2, 1, 0, -1]) + &cyc(3, &[0, -1, 0, 1]), cyc(3, &[2, 0, 0, 0]));
        assert_eq!(
            cyc(2, &[1, 0]).try_add(&cyc(3, &[0; 4])),
            Err(Error::LevelMismatch(2, 3))
        );
    }

    #[test]
    fn multiplication() {
        assert_eq!(&cyc(2, &[1, 1]) * &cyc(2, &[1, -1]), cyc(2, &[2, 0]));
        assert_eq!(&cyc(3, &[0, 1, 0, 0]) * &cyc(3, &[0, 0, 0, 1]), cyc(3, &[-1, 0, 0, 0]));
        let one_plus = cyc(4, &[1, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&one_plus * &one_plus, cyc(4, &[1, 2, 1, 0, 0, 0, 0, 0]));
        assert!(cyc(2, &[1, 0]).try_mul(&cyc(1, &[1])).is_err());
    }

    #[test]
    fn conjugation_and_norms() {
        assert_eq!(
            cyc(4, &[0, 1, 0, 0, 0, 0, 0, 0]).conj(),
            cyc(4, &[0, 0, 0, 0, 0, 0, 0, -1])
        );
        assert_eq!(CycInt::from_int(lv(3), 17).conj(), CycInt::from_int(lv(3), 17));
        assert_eq!(cyc(2, &[3, 5]).conj(), cyc(2, &[3, -5]));

        assert_eq!(cyc(2, &[1, 1]).norm_sq(), cyc(2, &[2, 0]));
        for e in 0..16 {
            assert_eq!(CycInt::root_power(lv(4), e).norm_sq(), CycInt::one(lv(4)));
        }
        assert_eq!(
            cyc(4, &[1, 1, 0, 0, 0, 0, 0, 0]).norm_sq(),
            cyc(4, &[2, 1, 0, 0, 0, 0, 0, -1])
        );
    }

    #[test]
    fn integer_extraction() {
        assert_eq!(cyc(3, &[5, 0, 0, 0]).as_integer(), Some(&BigInt::from(5)));
        assert_eq!(cyc(3, &[0, 1, 0, 0]).as_integer(), None);
    }

    #[test]
    fn embedding() {
        assert_eq!(
            cyc(3, &[1, 2, 3, 4]).embed(lv(4)).unwrap(),
            cyc(4, &[1, 0, 2, 0, 3, 0, 4, 0])
        );
        assert_eq!(
            cyc(2, &[0, 1]).embed(lv(4)).unwrap(),
            CycInt::root_power(lv(4), 4)
        );
        assert_eq!(
            cyc(3, &[1, 0, 0, 0]).embed(lv(2)),
            Err(Error::EmbedDown { from: 3, to: 2 })
        );
    }

    #[test]
    fn display_renders_terms() {
        let s = cyc(2, &[1, -1]).to_string();
        assert!(s.starts_with("1 - 1·ζ"), "{s}");
        assert!(CycInt::zero(lv(3)).to_string().starts_with('0'));
    }

    #[test]
    fn serializes_exact_integers() {
        let v = serde_json::to_value(cyc(2, &[3, -4])).unwrap();
        assert_eq!(v, serde_json::json!({"k": 2, "coeffs": [3, -4]}));
    }

    fn arb_cyc(k: u32) -> impl Strategy<Value = CycInt> {
        proptest::collection::vec(-50i64..50, 1usize << (k - 1))
            .prop_map(move |c| CycInt::from_coeffs(Level::new(k).unwrap(), c).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
        (1u32..=5).prop_flat_map(|k| (arb_cyc(k), arb_cyc(k), arb_cyc(k)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn conj_is_involution((a, b, _c) in arb_triple()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert!(a.norm_sq().is_real());
        }

        #[test]
        fn embed_is_homomorphism((a, b, _c) in arb_triple(), extra in 0u32..2) {
            let t = Level::new((a.level().get() + extra).min(MAX_LEVEL)).unwrap();
            let ea = a.embed(t).unwrap();
            let eb = b.embed(t).unwrap();
            prop_assert_eq!((&a * &b).embed(t).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).embed(t).unwrap(), &ea + &eb);
            prop_assert_eq!(a.conj().embed(t).unwrap(), ea.conj());
        }

        #[test]
        fn root_powers_compose(k in 1u32..=6, e1 in -100i64..100, e2 in -100i64..100) {
            let l = Level::new(k).unwrap();
            prop_assert_eq!(
                &CycInt::root_power(l, e1) * &CycInt::root_power(l, e2),
                CycInt::root_power(l, e1 + e2)
            );
        }
    }
}
