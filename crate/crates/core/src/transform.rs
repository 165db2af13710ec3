//! Generalized and plain Walsh–Hadamard transforms, value distributions and
//! correlations.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cyclotomic::{CycInt, Level};
use crate::error::{Error, Result};
use crate::table::{dot, BoolTable, GbfTable};

/// Largest `n` accepted by [`gwht_naive`].
pub const NAIVE_MAX_VARS: u32 = 14;

/// All `2^n` values `H_f(u) = Σ_x ζ^{f(x)} (-1)^{u·x}` together with their
/// squared moduli.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwhtSpectrum {
    n: u32,
    k: Level,
    values: Vec<CycInt>,
    moduli_sq: Vec<CycInt>,
}

impl GwhtSpectrum {
    /// Wraps spectrum values, caching squared moduli.
    ///
    /// Panics if the values violate Parseval (`Σ_u |H(u)|^2 = 4^n`), which
    /// can only happen if they are not the spectrum of any function.
    fn from_values(n: u32, k: Level, values: Vec<CycInt>) -> Self {
        let moduli_sq: Vec<CycInt> = values.iter().map(CycInt::norm_sq).collect();
        let mut total = CycInt::zero(k);
        for m in &moduli_sq {
            total += m;
        }
        let expected = BigInt::from(1u8) << (2 * n);
        assert_eq!(
            total.as_integer(),
            Some(&expected),
            "Parseval violated for a level-{k} spectrum on {n} variables"
        );
        GwhtSpectrum {
            n,
            k,
            values,
            moduli_sq,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> Level {
        self.k
    }

    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    pub fn value(&self, u: usize) -> &CycInt {
        &self.values[u]
    }

    pub fn moduli_sq(&self) -> &[CycInt] {
        &self.moduli_sq
    }

    /// `|H(u)|^2` as a rational integer, when it is one.
    pub fn modulus_sq_int(&self, u: usize) -> Option<&BigInt> {
        self.moduli_sq[u].as_integer()
    }
}

/// Integer Walsh–Hadamard spectrum `W_b(u) = Σ_x (-1)^{b(x) ⊕ u·x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSpectrum {
    n: u32,
    values: Vec<i64>,
}

impl IntSpectrum {
    fn from_values(n: u32, values: Vec<i64>) -> Self {
        let total: i128 = values.iter().map(|&w| i128::from(w) * i128::from(w)).sum();
        assert_eq!(total, 1i128 << (2 * n), "Parseval violated");
        IntSpectrum { n, values }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, u: usize) -> i64 {
        self.values[u]
    }
}

/// Counts `b_j = |{x : f(x) + 2^{k-1}(u·x) = j}|` for `j ∈ Z_{2^k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueDistribution {
    pub u: usize,
    pub counts: Vec<u64>,
}

impl ValueDistribution {
    /// `Σ_j b_j ζ^j`, which equals `H_f(u)`.
    pub fn to_cyc(&self, k: Level) -> CycInt {
        let dim = k.dim();
        let mut coeffs = vec![0i64; dim];
        for (j, &c) in self.counts.iter().enumerate() {
            let c = c as i64;
            if j < dim {
                coeffs[j] += c;
            } else {
                coeffs[j - dim] -= c;
            }
        }
        CycInt::from_coeffs(k, coeffs).expect("dimension matches")
    }
}

fn flat_to_cyc(k: Level, flat: &[i64]) -> Vec<CycInt> {
    flat.chunks_exact(k.dim())
        .map(|c| CycInt::from_coeffs(k, c.to_vec()).expect("dimension matches"))
        .collect()
}

/// Fast generalized transform: `n` butterfly stages of add/sub on ring
/// elements held as flat coefficient rows.
///
/// Coefficients are bounded by `2^n <= 2^24` in absolute value at every
/// stage, so the `i64` rows are exact.
pub fn gwht(f: &GbfTable) -> GwhtSpectrum {
    let k = f.k();
    let dim = k.dim();
    let len = f.len();
    let mut buf = vec![0i64; len * dim];
    for (x, &v) in f.values().iter().enumerate() {
        let v = v as usize;
        if v >= dim {
            buf[x * dim + v - dim] = -1;
        } else {
            buf[x * dim + v] = 1;
        }
    }
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (lo, hi) = buf.split_at_mut((i + h) * dim);
                let a = &mut lo[i * dim..(i + 1) * dim];
                let b = &mut hi[..dim];
                for (p, q) in a.iter_mut().zip(b.iter_mut()) {
                    let s = *p + *q;
                    *q = *p - *q;
                    *p = s;
                }
            }
        }
        h *= 2;
    }
    GwhtSpectrum::from_values(f.n(), k, flat_to_cyc(k, &buf))
}

/// Literal double sum over `(u, x)`; the reference for [`gwht`].
pub fn gwht_naive(f: &GbfTable) -> Result<GwhtSpectrum> {
    if f.n() > NAIVE_MAX_VARS {
        return Err(Error::NaiveTooLarge(f.n()));
    }
    let k = f.k();
    let order = k.order() as i64;
    let half = order / 2;
    let values = (0..f.len())
        .map(|u| {
            let mut acc = CycInt::zero(k);
            for (x, &v) in f.values().iter().enumerate() {
                let e = i64::from(v) + half * i64::from(dot(u, x));
                acc += &CycInt::root_power(k, e);
            }
            acc
        })
        .collect();
    Ok(GwhtSpectrum::from_values(f.n(), k, values))
}

/// In-place Hadamard butterfly on ring elements. Applying it to a spectrum
/// returns `2^n ζ^{f(x)}` pointwise.
pub fn hadamard_in_place(values: &mut [CycInt]) {
    assert!(values.len().is_power_of_two());
    let len = values.len();
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let s = &values[i] + &values[i + h];
                let d = &values[i] - &values[i + h];
                values[i] = s;
                values[i + h] = d;
            }
        }
        h *= 2;
    }
}

/// Fast integer Walsh–Hadamard transform.
pub fn wht(b: &BoolTable) -> IntSpectrum {
    let mut buf = b.signs();
    let len = buf.len();
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (p, q) = (buf[i], buf[i + h]);
                buf[i] = p + q;
                buf[i + h] = p - q;
            }
        }
        h *= 2;
    }
    IntSpectrum::from_values(b.n(), buf)
}

pub fn value_distribution(f: &GbfTable, u: usize) -> ValueDistribution {
    let order = f.k().order();
    let half = order / 2;
    let mut counts = vec![0u64; order];
    for (x, &v) in f.values().iter().enumerate() {
        let j = (v as usize + half * dot(u, x) as usize) % order;
        counts[j] += 1;
    }
    ValueDistribution { u, counts }
}

/// `C_{f,g}(z) = Σ_x ζ^{f(x) - g(x ⊕ z)}`.
pub fn crosscorrelation(f: &GbfTable, g: &GbfTable, z: usize) -> Result<CycInt> {
    if f.n() != g.n() || f.k() != g.k() {
        return Err(Error::ShapeMismatch(format!(
            "({}, {}) vs ({}, {})",
            f.n(),
            f.k(),
            g.n(),
            g.k()
        )));
    }
    if z >= f.len() {
        return Err(Error::ShapeMismatch(format!("shift {z} outside 2^{}", f.n())));
    }
    let k = f.k();
    let mut acc = CycInt::zero(k);
    for x in 0..f.len() {
        let e = i64::from(f.get(x)) - i64::from(g.get(x ^ z));
        acc += &CycInt::root_power(k, e);
    }
    Ok(acc)
}

pub fn autocorrelation(f: &GbfTable, z: usize) -> Result<CycInt> {
    crosscorrelation(f, f, z)
}

/// Boolean autocorrelation `Σ_x (-1)^{b(x) ⊕ b(x ⊕ z)}`.
pub fn bool_autocorrelation(b: &BoolTable, z: usize) -> i64 {
    (0..b.len())
        .map(|x| if b.get(x) ^ b.get(x ^ z) { -1 } else { 1 })
        .sum()
}

/// Whether `C_f(z) + C_g(z) = 0` for every nonzero shift `z`.
pub fn complementary_autocorrelation(f: &BoolTable, g: &BoolTable) -> Result<bool> {
    if f.n() != g.n() {
        return Err(Error::ShapeMismatch(format!(
            "n = {} vs n = {}",
            f.n(),
            g.n()
        )));
    }
    Ok((1..f.len()).all(|z| bool_autocorrelation(f, z) + bool_autocorrelation(g, z) == 0))
}

/// Converts a rational-integer ring element to `i64`.
pub fn cyc_to_i64(c: &CycInt) -> Option<i64> {
    c.as_integer().and_then(ToPrimitive::to_i64)
}
