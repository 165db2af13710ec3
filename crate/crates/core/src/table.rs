//! Truth tables for generalized (`Z_{2^k}`-valued) and plain Boolean functions.
//!
//! Index convention shared by every module: the input `(x_1, …, x_n)` sits at
//! index `Σ x_i 2^{i-1}`, so coordinate 1 is the least significant bit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Level;
use crate::error::{Error, Result};

/// Largest `n` accepted for a generalized table.
pub const MAX_VARS: u32 = 24;
/// Largest `n` accepted for a Boolean table (Gray images add `k - 1` variables).
pub const MAX_BOOL_VARS: u32 = MAX_VARS + 5;

/// Parity of the inner product `u · x` over `F_2^n`.
#[inline]
pub fn dot(u: usize, x: usize) -> u32 {
    (u & x).count_ones() & 1
}

/// A function `F_2^n → Z_{2^k}` as its full value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct GbfTable {
    n: u32,
    k: Level,
    values: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    n: u32,
    k: u32,
    values: Vec<u64>,
}

impl TryFrom<RawTable> for GbfTable {
    type Error = Error;
    fn try_from(raw: RawTable) -> Result<Self> {
        let k = Level::new(raw.k)?;
        check_vars(raw.n, MAX_VARS)?;
        let values = checked_values(raw.n, k, raw.values.into_iter())?;
        Ok(GbfTable { n: raw.n, k, values })
    }
}

impl From<GbfTable> for RawTable {
    fn from(t: GbfTable) -> Self {
        RawTable {
            n: t.n,
            k: t.k.get(),
            values: t.values.into_iter().map(u64::from).collect(),
        }
    }
}

fn check_vars(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        Err(Error::TooManyVariables(n, cap))
    } else {
        Ok(())
    }
}

fn checked_values(n: u32, k: Level, it: impl ExactSizeIterator<Item = u64>) -> Result<Vec<u8>> {
    let expected = 1usize << n;
    if it.len() != expected {
        return Err(Error::WrongLength {
            expected,
            found: it.len(),
        });
    }
    let bound = k.order() as u64;
    it.enumerate()
        .map(|(index, value)| {
            if value < bound {
                Ok(value as u8)
            } else {
                Err(Error::ValueOutOfRange {
                    index,
                    value,
                    k: k.get(),
                })
            }
        })
        .collect()
}

impl GbfTable {
    pub fn new(n: u32, k: Level, values: Vec<u8>) -> Result<Self> {
        check_vars(n, MAX_VARS)?;
        let values = checked_values(n, k, values.into_iter().map(u64::from))?;
        Ok(GbfTable { n, k, values })
    }

    /// Tabulates `f`, reducing every value modulo `2^k`.
    pub fn from_fn(n: u32, k: Level, mut f: impl FnMut(usize) -> u64) -> Result<Self> {
        check_vars(n, MAX_VARS)?;
        let mask = k.order() as u64 - 1;
        let values = (0..1usize << n).map(|x| (f(x) & mask) as u8).collect();
        Ok(GbfTable { n, k, values })
    }

    pub fn constant(n: u32, k: Level, c: u8) -> Result<Self> {
        Self::from_fn(n, k, |_| u64::from(c))
    }

    /// `2^{k-1} · b`, the embedding of a Boolean function at level `k`.
    pub fn from_boolean(b: &BoolTable, k: Level) -> Result<Self> {
        let top = 1u64 << (k.get() - 1);
        Self::from_fn(b.n(), k, |x| if b.get(x) { top } else { 0 })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> Level {
        self.k
    }

    #[inline]
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize) -> u8 {
        self.values[x]
    }

    /// Pointwise map, reduced modulo `2^k` of the target level.
    pub fn map_to(&self, k: Level, f: impl Fn(u64) -> u64) -> GbfTable {
        let mask = k.order() as u64 - 1;
        GbfTable {
            n: self.n,
            k,
            values: self
                .values
                .iter()
                .map(|&v| (f(u64::from(v)) & mask) as u8)
                .collect(),
        }
    }

    /// Pointwise combination of two tables on the same inputs, reduced modulo
    /// `2^k` of the target level.
    pub fn zip_to(
        &self,
        other: &GbfTable,
        k: Level,
        f: impl Fn(u64, u64) -> u64,
    ) -> Result<GbfTable> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "n = {} vs n = {}",
                self.n, other.n
            )));
        }
        let mask = k.order() as u64 - 1;
        Ok(GbfTable {
            n: self.n,
            k,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| (f(u64::from(a), u64::from(b)) & mask) as u8)
                .collect(),
        })
    }

    /// Bit planes `(a_1, …, a_k)` with `f = Σ 2^{i-1} a_i`.
    pub fn components(&self) -> Vec<BoolTable> {
        (0..self.k.get())
            .map(|i| BoolTable::from_fn(self.n, |x| (self.values[x] >> i) & 1 == 1))
            .collect()
    }

    /// Inverse of [`GbfTable::components`].
    pub fn combine(parts: &[BoolTable], k: Level) -> Result<GbfTable> {
        if parts.len() != k.get() as usize {
            return Err(Error::ShapeMismatch(format!(
                "{} parts for level {}",
                parts.len(),
                k
            )));
        }
        let n = parts[0].n();
        if let Some(p) = parts.iter().find(|p| p.n() != n) {
            return Err(Error::ShapeMismatch(format!(
                "part with n = {} among n = {}",
                p.n(),
                n
            )));
        }
        check_vars(n, MAX_VARS)?;
        let values = (0..1usize << n)
            .map(|x| {
                parts
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, p)| acc | (u8::from(p.get(x)) << i))
            })
            .collect();
        Ok(GbfTable { n, k, values })
    }

    /// Splits `f = low + 2^j · high` with `low` at level `j` and `high` at
    /// level `k - j`.
    pub fn regroup(&self, j: u32) -> Result<(GbfTable, GbfTable)> {
        let k = self.k.get();
        if j == 0 || j >= k {
            return Err(Error::SplitOutOfRange { j, k });
        }
        let low = self.map_to(Level::new(j)?, |v| v);
        let high = self.map_to(Level::new(k - j)?, |v| v >> j);
        Ok((low, high))
    }

    /// Generalized Gray image `ψ(f)(x, y) = ⊕_{i<k} a_i(x) y_i ⊕ a_k(x)` on
    /// `n + k - 1` variables; `x` occupies bits `0..n`, `y_j` is bit `n + j - 1`.
    pub fn gray_map(&self) -> Result<BoolTable> {
        let k = self.k.get();
        if k < 2 {
            return Err(Error::Unsupported("Gray map needs k >= 2".into()));
        }
        let n = self.n;
        let low_mask = (1usize << (k - 1)) - 1;
        let x_mask = (1usize << n) - 1;
        Ok(BoolTable::from_fn(n + k - 1, |idx| {
            let v = self.values[idx & x_mask] as usize;
            let y = idx >> n;
            (((v & low_mask & y).count_ones() as usize + (v >> (k - 1))) & 1) == 1
        }))
    }

    /// `f(x) + g(y)` on `n_f + n_g` variables, `x` in the low bits.
    pub fn direct_sum(&self, other: &GbfTable) -> Result<GbfTable> {
        if self.k != other.k {
            return Err(Error::LevelMismatch(self.k.get(), other.k.get()));
        }
        let n = self.n + other.n;
        check_vars(n, MAX_VARS)?;
        let low = (1usize << self.n) - 1;
        let shift = self.n;
        Self::from_fn(n, self.k, |x| {
            u64::from(self.values[x & low]) + u64::from(other.values[x >> shift])
        })
    }

    /// Text form `k:n:hexdigits`, one digit per value. Only for `k <= 4`.
    pub fn to_hex_string(&self) -> Option<String> {
        if self.k.get() > 4 {
            return None;
        }
        let digits: String = self
            .values
            .iter()
            .map(|&v| char::from_digit(u32::from(v), 16).expect("k <= 4"))
            .collect();
        Some(format!("{}:{}:{}", self.k, self.n, digits))
    }

    /// Parses `k:n:v0,v1,…` (decimal) or `k:n:hex` (one hex digit per value,
    /// `k <= 4` only).
    pub fn parse(text: &str) -> Result<GbfTable> {
        let text = text.trim();
        let mut parts = text.splitn(3, ':');
        let (Some(k), Some(n), Some(body)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("expected `k:n:values`, got {text:?}")));
        };
        let k: u32 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad level {k:?}")))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable count {n:?}")))?;
        let k = Level::new(k)?;
        check_vars(n, MAX_VARS)?;
        let body = body.trim();
        let len = 1usize << n;

        let raw: Vec<u64> = if !body.contains(',')
            && k.get() <= 4
            && body.len() == len
            && body.chars().all(|c| c.is_ascii_hexdigit())
        {
            body.chars()
                .map(|c| u64::from(c.to_digit(16).expect("checked hex digit")))
                .collect()
        } else {
            body.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad value {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        let values = checked_values(n, k, raw.into_iter())?;
        Ok(GbfTable { n, k, values })
    }
}

impl fmt::Display for GbfTable {
    /// Canonical decimal text form `k:n:v0,v1,…`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.k, self.n)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for GbfTable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GbfTable::parse(s)
    }
}

/// A Boolean function `F_2^n → F_2`, bit-packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolTable {
    n: u32,
    words: Vec<u64>,
}

impl BoolTable {
    pub fn zeros(n: u32) -> Self {
        assert!(n <= MAX_BOOL_VARS, "{n} variables exceeds {MAX_BOOL_VARS}");
        let len = 1usize << n;
        BoolTable {
            n,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut t = Self::zeros(n);
        for x in 0..1usize << n {
            if f(x) {
                t.words[x >> 6] |= 1 << (x & 63);
            }
        }
        t
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if !bits.len().is_power_of_two() {
            return Err(Error::WrongLength {
                expected: bits.len().next_power_of_two(),
                found: bits.len(),
            });
        }
        let n = bits.len().trailing_zeros();
        check_vars(n, MAX_BOOL_VARS)?;
        Ok(Self::from_fn(n, |x| bits[x]))
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: usize) -> bool {
        (self.words[x >> 6] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: usize, bit: bool) {
        if bit {
            self.words[x >> 6] |= 1 << (x & 63);
        } else {
            self.words[x >> 6] &= !(1 << (x & 63));
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(|x| self.get(x))
    }

    fn check_shape(&self, other: &BoolTable) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "n = {} vs n = {}",
                self.n, other.n
            )))
        }
    }

    pub fn xor(&self, other: &BoolTable) -> Result<BoolTable> {
        self.check_shape(other)?;
        Ok(BoolTable {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub fn and(&self, other: &BoolTable) -> Result<BoolTable> {
        self.check_shape(other)?;
        Ok(BoolTable {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        })
    }

    pub fn complement(&self) -> BoolTable {
        BoolTable::from_fn(self.n, |x| !self.get(x))
    }

    /// Signs `(-1)^{b(x)}` as integers.
    pub fn signs(&self) -> Vec<i64> {
        self.iter().map(|b| if b { -1 } else { 1 }).collect()
    }

    /// Linear function `x ↦ u · x`.
    pub fn linear(n: u32, u: usize) -> BoolTable {
        BoolTable::from_fn(n, |x| dot(u, x) == 1)
    }
}

impl fmt::Display for BoolTable {
    /// Truth table as a bit string, index ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}
