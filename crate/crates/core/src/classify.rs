//! Spectral classification: gbent, generalized plateaued, regularity and
//! duals, and the Boolean bent/plateaued classes.
//!
//! Every decision goes through [`CycInt::as_integer`] or exact ring
//! equality; nothing here looks at floating point values.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::cyclotomic::{CycInt, Level};
use crate::error::{Error, Result};
use crate::table::{BoolTable, GbfTable};
use crate::transform::{gwht, value_distribution, wht, GwhtSpectrum, IntSpectrum};

/// Outcome of the generalized plateau test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlateauResult {
    /// `|H_f(u)|^2 ∈ {0, 2^{n+s}}` for every `u`.
    Plateaued { s: u32 },
    /// `witness` has a squared modulus that breaks the pattern.
    NotPlateaued { witness: usize },
}

impl PlateauResult {
    pub fn level(self) -> Option<u32> {
        match self {
            PlateauResult::Plateaued { s } => Some(s),
            PlateauResult::NotPlateaued { .. } => None,
        }
    }

    pub fn is_gbent(self) -> bool {
        self.level() == Some(0)
    }

    pub fn is_gsemibent(self) -> bool {
        self.level() == Some(1)
    }
}

/// If `v = 2^e` with `e >= floor`, returns `e - floor`.
fn excess_power_of_two(v: &BigInt, floor: u64) -> Option<u32> {
    if v.sign() != num_bigint::Sign::Plus {
        return None;
    }
    let e = v.trailing_zeros()?;
    if v != &(BigInt::one() << e) || e < floor {
        return None;
    }
    u32::try_from(e - floor).ok()
}

pub fn plateau_of_spectrum(s: &GwhtSpectrum) -> PlateauResult {
    let mut level: Option<(usize, &BigInt)> = None;
    for (u, m) in s.moduli_sq().iter().enumerate() {
        let Some(v) = m.as_integer() else {
            return PlateauResult::NotPlateaued { witness: u };
        };
        if v.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        match level {
            None => level = Some((u, v)),
            Some((_, w)) if w == v => {}
            Some(_) => return PlateauResult::NotPlateaued { witness: u },
        }
    }
    let (u, v) = level.expect("Parseval forces a nonzero value");
    match excess_power_of_two(v, u64::from(s.n())) {
        Some(s) => PlateauResult::Plateaued { s },
        None => PlateauResult::NotPlateaued { witness: u },
    }
}

pub fn plateau_level(f: &GbfTable) -> PlateauResult {
    plateau_of_spectrum(&gwht(f))
}

pub fn is_gbent_spectrum(s: &GwhtSpectrum) -> bool {
    let target = BigInt::one() << s.n();
    (0..s.values().len()).all(|u| s.modulus_sq_int(u) == Some(&target))
}

/// `|H_f(u)|^2 = 2^n` for every `u`.
pub fn is_gbent(f: &GbfTable) -> bool {
    is_gbent_spectrum(&gwht(f))
}

/// Outcome of dual extraction for a gbent function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DualResult {
    /// `H_f(u) = 2^{n/2} ζ^{dual(u)}` for every `u`.
    Regular { dual: GbfTable },
    NotRegular { witness: usize },
    /// `2^{n/2} ζ^j` does not lie in `Z[i]` (level 2, odd `n`).
    NotRepresentable,
}

impl DualResult {
    pub fn dual(&self) -> Option<&GbfTable> {
        match self {
            DualResult::Regular { dual } => Some(dual),
            _ => None,
        }
    }
}

/// The `2^k` exact targets `2^{n/2} ζ^j` for one `(n, k)`.
#[derive(Clone, Debug)]
pub struct DualPatterns {
    targets: Vec<CycInt>,
}

impl DualPatterns {
    /// `None` when the targets are not ring elements (level 2 with odd `n`,
    /// or level 1 with odd `n`).
    pub fn new(n: u32, k: Level) -> Option<Self> {
        let order = k.order() as i64;
        let targets = if n % 2 == 0 {
            let scale = BigInt::one() << (n / 2);
            (0..order)
                .map(|j| CycInt::root_power(k, j).scale(&scale))
                .collect()
        } else if k.get() >= 3 {
            // √2 = ζ_8 + ζ_8^{-1}, and ζ_8 = ζ^{2^{k-3}}
            let eighth = 1i64 << (k.get() - 3);
            let scale = BigInt::one() << ((n - 1) / 2);
            (0..order)
                .map(|j| {
                    (&CycInt::root_power(k, j + eighth) + &CycInt::root_power(k, j - eighth))
                        .scale(&scale)
                })
                .collect()
        } else {
            return None;
        };
        Some(DualPatterns { targets })
    }

    pub fn exponent_of(&self, value: &CycInt) -> Option<usize> {
        self.targets.iter().position(|t| t == value)
    }
}

pub fn dual_of_spectrum(s: &GwhtSpectrum) -> Result<DualResult> {
    if !is_gbent_spectrum(s) {
        return Err(Error::NotGbent);
    }
    let Some(patterns) = DualPatterns::new(s.n(), s.k()) else {
        return Ok(DualResult::NotRepresentable);
    };
    let mut dual = Vec::with_capacity(s.values().len());
    for (u, v) in s.values().iter().enumerate() {
        match patterns.exponent_of(v) {
            Some(j) => dual.push(j as u8),
            None => return Ok(DualResult::NotRegular { witness: u }),
        }
    }
    Ok(DualResult::Regular {
        dual: GbfTable::new(s.n(), s.k(), dual)?,
    })
}

/// Extracts the dual `f*` of a gbent function.
pub fn regular_dual(f: &GbfTable) -> Result<DualResult> {
    dual_of_spectrum(&gwht(f))
}

/// Gbent test through value counts: for every `u` there is a `ρ` with
/// `b_{N+ρ} = b_ρ ± 2^{n/2}` and `b_{N+j} = b_j` for all other `j`
/// (`N = 2^{k-1}`). Defined for even `n` only.
pub fn gbent_by_distribution(f: &GbfTable) -> Result<bool> {
    if f.n() % 2 == 1 {
        return Err(Error::OddVariableCount(f.n()));
    }
    let half = f.k().dim();
    let step = 1i64 << (f.n() / 2);
    Ok((0..f.len()).all(|u| {
        let b = value_distribution(f, u).counts;
        let mut special = 0;
        for j in 0..half {
            let diff = b[half + j] as i64 - b[j] as i64;
            if diff == 0 {
                continue;
            }
            if diff.abs() == step {
                special += 1;
            } else {
                return false;
            }
        }
        special == 1
    }))
}

/// Boolean spectral class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoolClass {
    Bent,
    /// `W(u) ∈ {0, ±2^{(n+s)/2}}`, `s >= 1`.
    Plateaued {
        s: u32,
    },
    NotPlateaued {
        witness: usize,
    },
}

impl BoolClass {
    /// Plateau level, with bent as level 0.
    pub fn plateau(self) -> Option<u32> {
        match self {
            BoolClass::Bent => Some(0),
            BoolClass::Plateaued { s } => Some(s),
            BoolClass::NotPlateaued { .. } => None,
        }
    }

    pub fn is_bent(self) -> bool {
        self == BoolClass::Bent
    }

    /// Semibent: 1-plateaued for odd `n`, 2-plateaued for even `n`.
    pub fn is_semibent(self, n: u32) -> bool {
        self.plateau() == Some(if n % 2 == 1 { 1 } else { 2 })
    }
}

pub fn class_of_spectrum(w: &IntSpectrum) -> BoolClass {
    let mut level: Option<(usize, u64)> = None;
    for (u, &v) in w.values().iter().enumerate() {
        let a = v.unsigned_abs();
        if a == 0 {
            continue;
        }
        match level {
            None => level = Some((u, a)),
            Some((_, b)) if a == b => {}
            Some(_) => return BoolClass::NotPlateaued { witness: u },
        }
    }
    let (u, a) = level.expect("Parseval forces a nonzero value");
    if !a.is_power_of_two() {
        return BoolClass::NotPlateaued { witness: u };
    }
    let t = a.trailing_zeros();
    match (2 * t).checked_sub(w.n()) {
        Some(0) => BoolClass::Bent,
        Some(s) => BoolClass::Plateaued { s },
        None => BoolClass::NotPlateaued { witness: u },
    }
}

pub fn boolean_class(b: &BoolTable) -> BoolClass {
    class_of_spectrum(&wht(b))
}

/// `|H_f(u)|^2` as an `i64`, if it is a rational integer that fits.
pub fn modulus_sq_i64(s: &GwhtSpectrum, u: usize) -> Option<i64> {
    s.modulus_sq_int(u).and_then(ToPrimitive::to_i64)
}
