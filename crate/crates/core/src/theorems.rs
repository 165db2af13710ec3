//! Checkers for the characterization theorems and exact identities that
//! tie generalized spectra to the spectra of Boolean component functions.
//!
//! Component masks: bit `i - 1` of `c` selects `a_i`, so
//! `g_c = c_1 a_1 ⊕ … ⊕ c_{k-1} a_{k-1} ⊕ a_k`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::classify::{boolean_class, is_gbent_spectrum, BoolClass};
use crate::cyclotomic::{CycInt, Level};
use crate::error::{Error, Result};
use crate::table::{dot, GbfTable};
use crate::transform::{
    complementary_autocorrelation, gwht, wht, GwhtSpectrum, IntSpectrum,
};

/// Point where a checker failed, with the values it saw there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: usize,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub holds: bool,
    /// Matched case per point.
    pub detail: BTreeMap<usize, String>,
    pub failure_witness: Option<Witness>,
}

#[derive(Default)]
struct VerdictBuilder {
    detail: BTreeMap<usize, String>,
    witness: Option<Witness>,
}

impl VerdictBuilder {
    fn matched(&mut self, u: usize, case: String) {
        self.detail.insert(u, case);
    }

    fn failed(&mut self, u: usize, observed: String) {
        if self.witness.is_none() {
            self.witness = Some(Witness { u, observed });
        }
    }

    fn finish(self) -> TheoremVerdict {
        TheoremVerdict {
            holds: self.witness.is_none(),
            detail: self.detail,
            failure_witness: self.witness,
        }
    }
}

fn tuple_string<T: std::fmt::Display>(xs: &[T]) -> String {
    let mut s = String::from("(");
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

/// Walsh spectra of all `2^{k-1}` functions `g_c`, indexed by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSpectra {
    n: u32,
    spectra: Vec<IntSpectrum>,
}

impl ComponentSpectra {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.spectra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spectra.is_empty()
    }

    pub fn get(&self, mask: usize) -> &IntSpectrum {
        &self.spectra[mask]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &IntSpectrum)> {
        self.spectra.iter().enumerate()
    }

    /// Values of every `g_c` at `u`, in the given mask order.
    pub fn at(&self, u: usize, order: &[usize]) -> Vec<i64> {
        order.iter().map(|&c| self.spectra[c].at(u)).collect()
    }
}

fn require_level(f: &GbfTable, k: u32) -> Result<()> {
    if f.k().get() == k {
        Ok(())
    } else {
        Err(Error::LevelMismatch(f.k().get(), k))
    }
}

fn require_at_least_two(f: &GbfTable) -> Result<()> {
    if f.k().get() >= 2 {
        Ok(())
    } else {
        Err(Error::Unsupported("needs k >= 2".into()))
    }
}

pub fn component_spectra(f: &GbfTable) -> Result<ComponentSpectra> {
    require_at_least_two(f)?;
    let k = f.k().get();
    let top = k - 1;
    let spectra = (0..1usize << top)
        .map(|c| {
            let g = crate::table::BoolTable::from_fn(f.n(), |x| {
                let v = f.get(x) as usize;
                (dot(v, c) ^ (v >> top) as u32) & 1 == 1
            });
            wht(&g)
        })
        .collect();
    Ok(ComponentSpectra { n: f.n(), spectra })
}

/// Divides each entry by `scale`; `None` unless every quotient is in {-1, 0, 1}.
fn normalize(values: &[i64], scale: i64) -> Option<Vec<i8>> {
    values
        .iter()
        .map(|&v| match v {
            0 => Some(0),
            _ if v == scale => Some(1),
            _ if v == -scale => Some(-1),
            _ => None,
        })
        .collect()
}

fn row_of<const L: usize>(table: &[[i8; L]], t: &[i8]) -> Option<usize> {
    table.iter().position(|row| row.as_slice() == t)
}

/// Level 3, even `n`:
/// `2^{-n/2}(W_{a3}, W_{a3⊕a1}, W_{a3⊕a2}, W_{a3⊕a2⊕a1})`, in the order listed.
pub const K3_EVEN: [[i8; 4]; 8] = [
    [-1, -1, -1, -1],
    [-1, 1, -1, 1],
    [-1, -1, 1, 1],
    [-1, 1, 1, -1],
    [1, -1, -1, 1],
    [1, 1, -1, -1],
    [1, -1, 1, -1],
    [1, 1, 1, 1],
];

/// Level 3, odd `n`: the same quadruple scaled by `2^{-(n+1)/2}`.
pub const K3_ODD: [[i8; 4]; 8] = [
    [-1, -1, 0, 0],
    [0, 0, -1, -1],
    [-1, 1, 0, 0],
    [0, 0, -1, 1],
    [0, 0, 1, -1],
    [1, -1, 0, 0],
    [0, 0, 1, 1],
    [1, 1, 0, 0],
];

/// Masks of `(A, C, D, W, B, X, Y, Z)`:
/// `A = W_{a4}`, `C = W_{a2⊕a4}`, `D = W_{a3⊕a4}`, `W = W_{a2⊕a3⊕a4}`,
/// `B = W_{a1⊕a4}`, `X = W_{a1⊕a2⊕a4}`, `Y = W_{a1⊕a3⊕a4}`, `Z = W_{a1⊕a2⊕a3⊕a4}`.
pub const K4_ORDER: [usize; 8] = [0, 2, 4, 6, 1, 3, 5, 7];

/// Level 4, even `n`: `2^{-n/2}(A, C, D, W, B, X, Y, Z)`, two rows per line
/// as printed.
pub const K4_EVEN: [[i8; 8]; 16] = [
    [-1, -1, -1, -1, -1, -1, -1, -1],
    [-1, -1, 1, 1, -1, -1, 1, 1],
    [-1, 1, -1, 1, -1, 1, -1, 1],
    [-1, 1, 1, -1, -1, 1, 1, -1],
    [-1, -1, -1, -1, 1, 1, 1, 1],
    [-1, -1, 1, 1, 1, 1, -1, -1],
    [-1, 1, -1, 1, 1, -1, 1, -1],
    [-1, 1, 1, -1, 1, -1, -1, 1],
    [1, -1, -1, 1, -1, 1, 1, -1],
    [1, -1, 1, -1, -1, 1, -1, 1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, -1, 1, -1, 1, -1, 1, -1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, 1, 1, 1, 1, 1, 1, 1],
];

/// Level 4, odd `n`: `2^{-(n+1)/2}(A, C, D, W, B, X, Y, Z)`.
pub const K4_ODD: [[i8; 8]; 16] = [
    [-1, -1, 0, 0, -1, -1, 0, 0],
    [-1, 1, 0, 0, -1, 1, 0, 0],
    [-1, -1, 0, 0, 1, 1, 0, 0],
    [-1, 1, 0, 0, 1, -1, 0, 0],
    [0, 0, -1, -1, 0, 0, -1, -1],
    [0, 0, -1, 1, 0, 0, -1, 1],
    [0, 0, -1, -1, 0, 0, 1, 1],
    [0, 0, -1, 1, 0, 0, 1, -1],
    [0, 0, 1, -1, 0, 0, -1, 1],
    [0, 0, 1, 1, 0, 0, -1, -1],
    [0, 0, 1, -1, 0, 0, 1, -1],
    [0, 0, 1, 1, 0, 0, 1, 1],
    [1, -1, 0, 0, -1, 1, 0, 0],
    [1, 1, 0, 0, -1, -1, 0, 0],
    [1, -1, 0, 0, 1, -1, 0, 0],
    [1, 1, 0, 0, 1, 1, 0, 0],
];

/// Gaussian integer `(re, im)`.
pub type Gauss = (i64, i64);

/// Level-2 pairing, even `n`: families of
/// `2^{-n/2}(H_{3b1+b2}, H_{b1+b2}, H_{2b1+b2}, H_{b2})` at `ε = 1`;
/// `ε = -1` negates the row. The fourth row restores a dropped comma and
/// the eighth row is `(εi, -εi, -ε, ε)`; the literal eighth row repeats the
/// seventh under `ε ↦ -ε`.
pub const Z4_EVEN: [[Gauss; 4]; 8] = [
    [(1, 0), (1, 0), (1, 0), (1, 0)],
    [(1, 0), (1, 0), (-1, 0), (-1, 0)],
    [(1, 0), (-1, 0), (0, 1), (0, -1)],
    [(1, 0), (-1, 0), (0, -1), (0, 1)],
    [(0, 1), (0, 1), (0, 1), (0, 1)],
    [(0, 1), (0, 1), (0, -1), (0, -1)],
    [(0, 1), (0, -1), (1, 0), (-1, 0)],
    [(0, 1), (0, -1), (-1, 0), (1, 0)],
];

/// Level-2 pairing, odd `n`, scaled by `2^{-(n-1)/2}`, with `p = ε + μi`:
/// each entry is `(sign, conjugate)` applied to `p`.
pub const Z4_ODD: [[(i8, bool); 4]; 4] = [
    [(1, false), (1, false), (1, false), (1, false)],
    [(1, false), (1, false), (-1, false), (-1, false)],
    [(1, false), (-1, false), (1, true), (-1, true)],
    [(1, false), (-1, false), (-1, true), (1, true)],
];

fn z4_rows(n: u32) -> Vec<[Gauss; 4]> {
    if n % 2 == 0 {
        Z4_EVEN
            .iter()
            .flat_map(|row| [*row, row.map(|(a, b)| (-a, -b))])
            .collect()
    } else {
        let mut rows = Vec::new();
        for row in Z4_ODD {
            for (e, m) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                rows.push(row.map(|(s, c)| {
                    let im = if c { -m } else { m };
                    (i64::from(s) * e, i64::from(s) * im)
                }));
            }
        }
        rows
    }
}

fn gauss_of(z: &CycInt) -> Option<Gauss> {
    let c = z.to_i64_coeffs()?;
    Some((c[0], c[1]))
}

fn pow2(e: u32) -> i64 {
    1i64 << e
}

/// Level 2. Even `n`: `a_2` and `a_1 ⊕ a_2` bent, cross-checked against
/// "Gray image semibent and the two components have complementary
/// autocorrelation". Odd `n`: Gray image bent.
pub fn check_k2(f: &GbfTable) -> Result<TheoremVerdict> {
    require_level(f, 2)?;
    let n = f.n();
    let mut out = VerdictBuilder::default();
    if n % 2 == 0 {
        let cs = component_spectra(f)?;
        let r = pow2(n / 2);
        for u in 0..f.len() {
            let vals = cs.at(u, &[0, 1]);
            match normalize(&vals, r) {
                Some(t) if t.iter().all(|&x| x != 0) => out.matched(u, tuple_string(&t)),
                _ => out.failed(u, tuple_string(&vals)),
            }
        }
        let verdict = out.finish();
        let comps = f.components();
        let alt = boolean_class(&f.gray_map()?).is_semibent(n + 1)
            && complementary_autocorrelation(&comps[1], &comps[1].xor(&comps[0])?)?;
        if alt != verdict.holds {
            return Err(Error::Disagreement(format!(
                "level 2, {f}: bent-pair form says {}, Gray/autocorrelation form says {alt}",
                verdict.holds
            )));
        }
        Ok(verdict)
    } else {
        let w = wht(&f.gray_map()?);
        let r = pow2((n + 1) / 2);
        for u in 0..f.len() {
            let vals = [w.at(u), w.at(u + f.len())];
            match normalize(&vals, r) {
                Some(t) if t.iter().all(|&x| x != 0) => out.matched(u, tuple_string(&t)),
                _ => out.failed(u, tuple_string(&vals)),
            }
        }
        Ok(out.finish())
    }
}

/// Level 3: per-point membership of the normalized component quadruple in
/// [`K3_EVEN`] or [`K3_ODD`].
pub fn check_k3(f: &GbfTable) -> Result<TheoremVerdict> {
    require_level(f, 3)?;
    let n = f.n();
    let cs = component_spectra(f)?;
    let (table, scale) = if n % 2 == 0 {
        (&K3_EVEN, pow2(n / 2))
    } else {
        (&K3_ODD, pow2((n + 1) / 2))
    };
    let mut out = VerdictBuilder::default();
    for u in 0..f.len() {
        let vals = cs.at(u, &[0, 1, 2, 3]);
        match normalize(&vals, scale).and_then(|t| row_of(table, &t)) {
            Some(r) => out.matched(u, format!("row {r}")),
            None => out.failed(u, tuple_string(&vals)),
        }
    }
    Ok(out.finish())
}

fn k4_identities_even(v: &[i64], r: i64) -> bool {
    let [a, c, d, w, b, x, y, z] = v.try_into().expect("eight values");
    v.iter().all(|t| t.abs() == r)
        && a * c == d * w
        && d * w == b * x
        && b * x == y * z
        && a * d == b * y
}

/// Which support pattern holds at one point for odd `n`, if any.
fn k4_pattern_odd(v: &[i64], r: i64) -> Option<&'static str> {
    let [a, c, d, w, b, x, y, z] = v.try_into().expect("eight values");
    if !v.iter().all(|t| *t == 0 || t.abs() == r) {
        return None;
    }
    let sq = r * r;
    if a * c == b * x && (a * c).abs() == sq && [d, w, y, z] == [0; 4] {
        Some("AC = BX, D = W = Y = Z = 0")
    } else if [a, c, b, x] == [0; 4] && d * w == y * z && (d * w).abs() == sq {
        Some("DW = YZ, A = C = B = X = 0")
    } else {
        None
    }
}

/// Level 4 gbent characterization, evaluated both as the product identities
/// and as membership in [`K4_EVEN`] / [`K4_ODD`]. The two encodings must
/// agree at every point.
pub fn check_k4_gbent(f: &GbfTable) -> Result<TheoremVerdict> {
    require_level(f, 4)?;
    let n = f.n();
    let cs = component_spectra(f)?;
    let mut out = VerdictBuilder::default();
    for u in 0..f.len() {
        let vals = cs.at(u, &K4_ORDER);
        let (literal, row) = if n % 2 == 0 {
            let r = pow2(n / 2);
            let literal = k4_identities_even(&vals, r).then_some("AC = DW = BX = YZ, AD = BY");
            let row = normalize(&vals, r).and_then(|t| row_of(&K4_EVEN, &t));
            (literal, row)
        } else {
            let r = pow2((n + 1) / 2);
            let row = normalize(&vals, r).and_then(|t| row_of(&K4_ODD, &t));
            (k4_pattern_odd(&vals, r), row)
        };
        match (literal, row) {
            (Some(case), Some(r)) => out.matched(u, format!("row {r}; {case}")),
            (None, None) => out.failed(u, tuple_string(&vals)),
            _ => {
                return Err(Error::Disagreement(format!(
                    "level 4 gbent at {f}, u = {u}: identities {literal:?}, table row {row:?}"
                )))
            }
        }
    }
    Ok(out.finish())
}

/// The four level-2 functions `3b_1+b_2`, `b_1+b_2`, `2b_1+b_2`, `b_2`
/// (pointwise mod 4) where `f = b_1 + 4 b_2`.
pub fn z4_pairing(f: &GbfTable) -> Result<[GbfTable; 4]> {
    require_level(f, 4)?;
    let (b1, b2) = f.regroup(2)?;
    let two = Level::new(2)?;
    let make = |j: u64| b1.zip_to(&b2, two, |p, q| j * p + q);
    Ok([make(3)?, make(1)?, make(2)?, make(0)?])
}

/// Level 4 gbent characterization through the level-2 pairing.
pub fn check_k4_z4(f: &GbfTable) -> Result<TheoremVerdict> {
    let fs = z4_pairing(f)?;
    let n = f.n();
    let spectra: Vec<GwhtSpectrum> = fs.iter().map(gwht).collect();
    let scale = pow2(n / 2);
    let rows = z4_rows(n);
    let mut out = VerdictBuilder::default();
    for u in 0..f.len() {
        let raw: Vec<Gauss> = spectra
            .iter()
            .map(|s| gauss_of(s.value(u)).expect("level-2 spectra fit in i64"))
            .collect();
        let scaled: Option<Vec<Gauss>> = raw
            .iter()
            .map(|&(a, b)| (a % scale == 0 && b % scale == 0).then_some((a / scale, b / scale)))
            .collect();
        let row = scaled.and_then(|t| rows.iter().position(|r| r.as_slice() == t.as_slice()));
        let show: Vec<String> = raw.iter().map(|(a, b)| format!("{a}{b:+}i")).collect();
        match row {
            Some(r) => out.matched(u, format!("row {r}")),
            None => out.failed(u, tuple_string(&show)),
        }
    }
    Ok(out.finish())
}

/// Level 4 generalized semibent (odd `n`) / generalized 2-plateaued (even
/// `n`): every `g_c` semibent and, at each point, either all eight values
/// vanish or all are nonzero and satisfy the product identities
/// `AC = DW = BX = YZ`, `AD = BY`.
pub fn check_k4_gsemibent(f: &GbfTable) -> Result<TheoremVerdict> {
    require_level(f, 4)?;
    let n = f.n();
    let cs = component_spectra(f)?;
    let r = pow2((n + if n % 2 == 1 { 1 } else { 2 }) / 2);
    let mut out = VerdictBuilder::default();
    for u in 0..f.len() {
        let vals = cs.at(u, &K4_ORDER);
        if vals.iter().all(|&v| v == 0) {
            out.matched(u, "zero".into());
            continue;
        }
        let literal = k4_identities_even(&vals, r);
        let row = normalize(&vals, r).and_then(|t| row_of(&K4_EVEN, &t));
        match (literal, row) {
            (true, Some(r)) => out.matched(u, format!("row {r}")),
            (false, None) => out.failed(u, tuple_string(&vals)),
            _ => {
                return Err(Error::Disagreement(format!(
                    "level 4 semibent at {f}, u = {u}: identities {literal}, table row {row:?}"
                )))
            }
        }
    }
    Ok(out.finish())
}

/// `f = g + 2h` with `g` Boolean: returns `(h, h + 2^{k-2} g)` at level `k - 1`.
pub fn inductive_pair(f: &GbfTable) -> Result<(GbfTable, GbfTable)> {
    require_at_least_two(f)?;
    let (g, h) = f.regroup(1)?;
    let lower = h.k();
    let shift = 1u64 << (f.k().get() - 2);
    let h2 = h.zip_to(&g, lower, |a, b| a + shift * b)?;
    Ok((h, h2))
}

/// Inductive condition: `h` and `h + 2^{k-2} g` both gbent at level `k - 1`
/// and `conj(H_h(u)) · H_{h + 2^{k-2} g}(u)` real for all `u`.
pub fn check_inductive(f: &GbfTable) -> Result<TheoremVerdict> {
    let (h, h2) = inductive_pair(f)?;
    let (sh, sh2) = (gwht(&h), gwht(&h2));
    let target = BigInt::from(1) << f.n();
    let mut out = VerdictBuilder::default();
    for u in 0..f.len() {
        let bent = sh.modulus_sq_int(u) == Some(&target) && sh2.modulus_sq_int(u) == Some(&target);
        let p = &sh.value(u).conj() * sh2.value(u);
        if bent && p.is_real() {
            out.matched(u, format!("{}", p.coeffs()[0]));
        } else {
            out.failed(u, format!("H_h = {}, H_h' = {}", sh.value(u), sh2.value(u)));
        }
    }
    Ok(out.finish())
}

/// Necessary condition for even `n`: every `g_c` bent.
pub fn components_bent_necessary(f: &GbfTable) -> Result<TheoremVerdict> {
    if f.n() % 2 == 1 {
        return Err(Error::OddVariableCount(f.n()));
    }
    let cs = component_spectra(f)?;
    let r = pow2(f.n() / 2);
    let mut out = VerdictBuilder::default();
    let order: Vec<usize> = (0..cs.len()).collect();
    for u in 0..f.len() {
        let vals = cs.at(u, &order);
        if vals.iter().all(|v| v.abs() == r) {
            out.matched(u, "all bent".into());
        } else {
            out.failed(u, tuple_string(&vals));
        }
    }
    Ok(out.finish())
}

/// `α_c = ∏_{i=1}^{k-1} (1 + (-1)^{c_i} ζ^{2^{i-1}})`.
pub fn decomposition_weight(k: Level, c: usize) -> CycInt {
    let mut acc = CycInt::one(k);
    for i in 0..k.get() - 1 {
        let mut t = CycInt::root_power(k, 1 << i);
        if (c >> i) & 1 == 1 {
            t = -&t;
        }
        acc = &acc * &(&CycInt::one(k) + &t);
    }
    acc
}

fn require_small_level(f: &GbfTable) -> Result<()> {
    match f.k().get() {
        2..=4 => Ok(()),
        k => Err(Error::Unsupported(format!(
            "decomposition is checked for k in 2..=4, got {k}"
        ))),
    }
}

fn decomposition_holds(
    k: Level,
    s: &GwhtSpectrum,
    cs: &ComponentSpectra,
    weights: &[CycInt],
    u: usize,
) -> bool {
    let mut rhs = CycInt::zero(k);
    for (c, w) in weights.iter().enumerate() {
        rhs += &w.scale(&BigInt::from(cs.get(c).at(u)));
    }
    let lhs = s.value(u).scale(&BigInt::from(1u64 << (k.get() - 1)));
    lhs == rhs
}

/// `2^{k-1} H_f(u) = Σ_c α_c W_{g_c}(u)` at one point.
pub fn verify_walsh_decomposition(f: &GbfTable, u: usize) -> Result<bool> {
    require_small_level(f)?;
    let k = f.k();
    let weights: Vec<CycInt> = (0..k.dim()).map(|c| decomposition_weight(k, c)).collect();
    Ok(decomposition_holds(k, &gwht(f), &component_spectra(f)?, &weights, u))
}

/// First point where the decomposition fails, if any.
pub fn verify_walsh_decomposition_all(f: &GbfTable) -> Result<Option<usize>> {
    require_small_level(f)?;
    let k = f.k();
    let s = gwht(f);
    let cs = component_spectra(f)?;
    let weights: Vec<CycInt> = (0..k.dim()).map(|c| decomposition_weight(k, c)).collect();
    Ok((0..f.len()).find(|&u| !decomposition_holds(k, &s, &cs, &weights, u)))
}

struct SplitParts {
    whole: GwhtSpectrum,
    low: GwhtSpectrum,
    shifted: GwhtSpectrum,
    plus: CycInt,
    minus: CycInt,
}

fn split_parts(f: &GbfTable) -> Result<SplitParts> {
    let (h, h2) = inductive_pair(f)?;
    let k = f.k();
    let z = CycInt::root_power(k, 1);
    Ok(SplitParts {
        whole: gwht(f),
        low: gwht(&h),
        shifted: gwht(&h2),
        plus: &CycInt::one(k) + &z,
        minus: &CycInt::one(k) - &z,
    })
}

fn split_holds(p: &SplitParts, k: Level, u: usize) -> Result<bool> {
    let lhs = p.whole.value(u).scale(&BigInt::from(2));
    let rhs = &(&p.plus * &p.low.value(u).embed(k)?) + &(&p.minus * &p.shifted.value(u).embed(k)?);
    Ok(lhs == rhs)
}

/// `2 H_f(u) = (1+ζ) H_h(u) + (1-ζ) H_{h + 2^{k-2} g}(u)` with `f = g + 2h`,
/// the right side lifted from level `k - 1`.
pub fn verify_recursive_split(f: &GbfTable, u: usize) -> Result<bool> {
    let p = split_parts(f)?;
    split_holds(&p, f.k(), u)
}

pub fn verify_recursive_split_all(f: &GbfTable) -> Result<Option<usize>> {
    let p = split_parts(f)?;
    for u in 0..f.len() {
        if !split_holds(&p, f.k(), u)? {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

fn gray_sum(cs: &ComponentSpectra, u: usize, v: usize) -> i64 {
    cs.iter()
        .map(|(c, w)| if dot(c, v) == 1 { -w.at(u) } else { w.at(u) })
        .sum()
}

/// `W_{ψ(f)}(u, v) = Σ_c (-1)^{c·v} W_{g_c}(u)`.
pub fn verify_gray_wht(f: &GbfTable, u: usize, v: usize) -> Result<bool> {
    let w = wht(&f.gray_map()?);
    let cs = component_spectra(f)?;
    if u >= f.len() || v >= cs.len() {
        return Err(Error::ShapeMismatch(format!("point ({u}, {v}) out of range")));
    }
    Ok(w.at(u | (v << f.n())) == gray_sum(&cs, u, v))
}

/// First `(u, v)` where the Gray-image identity fails, if any.
pub fn verify_gray_wht_all(f: &GbfTable) -> Result<Option<(usize, usize)>> {
    let w = wht(&f.gray_map()?);
    let cs = component_spectra(f)?;
    for v in 0..cs.len() {
        for u in 0..f.len() {
            if w.at(u | (v << f.n())) != gray_sum(&cs, u, v) {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

/// Spectral class of the Gray image.
pub fn gray_classify(f: &GbfTable) -> Result<BoolClass> {
    Ok(boolean_class(&f.gray_map()?))
}

/// The Gray-image class that gbent functions are expected to have at
/// levels 2, 3 and 4 (`None` elsewhere).
pub fn expected_gray_plateau(n: u32, k: u32) -> Option<u32> {
    let odd = n % 2 == 1;
    match (k, odd) {
        (2, true) => Some(0),
        (2, false) | (3, true) | (4, true) => Some(1),
        (3, false) => Some(2),
        (4, false) => Some(3),
        _ => None,
    }
}

/// Verdicts of every checker that applies to `f`, keyed by name. Checkers
/// that reject the parameters are omitted.
pub fn all_verdicts(f: &GbfTable) -> Result<BTreeMap<&'static str, TheoremVerdict>> {
    let mut out = BTreeMap::new();
    let k = f.k().get();
    match k {
        2 => {
            out.insert("k2", check_k2(f)?);
        }
        3 => {
            out.insert("k3", check_k3(f)?);
        }
        4 => {
            out.insert("k4_gbent", check_k4_gbent(f)?);
            out.insert("k4_z4", check_k4_z4(f)?);
            out.insert("k4_gsemibent", check_k4_gsemibent(f)?);
        }
        _ => {}
    }
    if k >= 2 {
        out.insert("inductive", check_inductive(f)?);
        if f.n() % 2 == 0 {
            out.insert("components_bent", components_bent_necessary(f)?);
        }
    }
    Ok(out)
}

/// Whether some level-specific characterization disagrees with the
/// spectral definition on `f`. Returns a description of the first
/// disagreement.
pub fn discrepancy(f: &GbfTable) -> Result<Option<String>> {
    let s = gwht(f);
    let gbent = is_gbent_spectrum(&s);
    let n = f.n();
    let mut claims: Vec<(&str, bool, bool)> = Vec::new();
    match f.k().get() {
        2 => claims.push(("k2", check_k2(f)?.holds, gbent)),
        3 => claims.push(("k3", check_k3(f)?.holds, gbent)),
        4 => {
            claims.push(("k4_gbent", check_k4_gbent(f)?.holds, gbent));
            claims.push(("k4_z4", check_k4_z4(f)?.holds, gbent));
            let want = if n % 2 == 1 { 1 } else { 2 };
            let plateau = crate::classify::plateau_of_spectrum(&s).level() == Some(want);
            claims.push(("k4_gsemibent", check_k4_gsemibent(f)?.holds, plateau));
        }
        _ => {}
    }
    if f.k().get() >= 2 {
        let ind = check_inductive(f)?.holds;
        if n % 2 == 0 {
            claims.push(("inductive", ind, gbent));
        } else if ind && !gbent {
            return Ok(Some("inductive condition holds but f is not gbent".into()));
        }
        if n % 2 == 0 && gbent && !components_bent_necessary(f)?.holds {
            return Ok(Some("gbent but some component is not bent".into()));
        }
    }
    for (name, claim, truth) in claims {
        if claim != truth {
            return Ok(Some(format!("{name} says {claim}, spectrum says {truth}")));
        }
    }
    if gbent {
        if let Some(p) = expected_gray_plateau(n, f.k().get()) {
            let class = gray_classify(f)?;
            if class.plateau() != Some(p) {
                return Ok(Some(format!("gbent with Gray image {class:?}")));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{is_gbent, plateau_level};
    use crate::search::{mm_bent, random_gbf};
    use crate::table::BoolTable;

    fn lv(k: u32) -> Level {
        Level::new(k).unwrap()
    }

    fn x1x2() -> BoolTable {
        BoolTable::from_fn(2, |x| x == 3)
    }

    fn example_k4() -> GbfTable {
        // a_1 = x_1, a_2 = not a_1, a_3 = 0, a_4 = x_1 x_2 + x_3 x_4
        let a1 = BoolTable::from_fn(4, |x| x & 1 == 1);
        let a4 = BoolTable::from_fn(4, |x| (x & 3 == 3) ^ (x >> 2 == 3));
        GbfTable::combine(&[a1.clone(), a1.complement(), BoolTable::zeros(4), a4], lv(4)).unwrap()
    }

    fn all_tables(n: u32, k: u32) -> impl Iterator<Item = GbfTable> {
        let len = 1usize << n;
        let total = 1u64 << (k as usize * len);
        (0..total).map(move |i| {
            GbfTable::from_fn(n, lv(k), |x| (i >> (k as usize * x)) & ((1 << k) - 1)).unwrap()
        })
    }

    #[test]
    fn tables_match_their_identities() {
        for row in K4_EVEN {
            let v: Vec<i64> = row.iter().map(|&x| i64::from(x)).collect();
            assert!(k4_identities_even(&v, 1));
        }
        for row in K4_ODD {
            let v: Vec<i64> = row.iter().map(|&x| i64::from(x)).collect();
            assert!(k4_pattern_odd(&v, 1).is_some());
        }
        assert_eq!(z4_rows(2).len(), 16);
        assert_eq!(z4_rows(1).len(), 16);
        let mut all = z4_rows(2);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn component_spectra_shapes() {
        let f = GbfTable::from_boolean(&x1x2(), lv(3)).unwrap();
        let cs = component_spectra(&f).unwrap();
        assert_eq!(cs.len(), 4);
        for (_, s) in cs.iter() {
            assert_eq!(s.values(), &[2, 2, 2, -2]);
        }
        let cs = component_spectra(&example_k4()).unwrap();
        let base = wht(&example_k4().components()[3]);
        // g_c = (c_1 + c_2) a_1 + c_2 + a_4, so c_1 = c_2 leaves ±W_{a_4}
        for (c, s) in cs.iter().filter(|(c, _)| c & 1 == (c >> 1) & 1) {
            let flip = (c >> 1) & 1 == 1;
            let want: Vec<i64> = base.values().iter().map(|&v| if flip { -v } else { v }).collect();
            assert_eq!(s.values(), want.as_slice());
        }
    }

    #[test]
    fn k2_exhaustive() {
        for f in all_tables(2, 2) {
            assert_eq!(check_k2(&f).unwrap().holds, is_gbent(&f), "{f}");
        }
        for f in all_tables(1, 2) {
            assert_eq!(check_k2(&f).unwrap().holds, is_gbent(&f), "{f}");
        }
        let zero = GbfTable::constant(2, lv(2), 0).unwrap();
        let v = check_k2(&zero).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failure_witness.unwrap().u, 0);
    }

    #[test]
    fn k3_counterexample_fails() {
        let f = GbfTable::parse("3:3:01234567").unwrap();
        assert!(!check_k3(&f).unwrap().holds);
        let f = GbfTable::from_boolean(&x1x2(), lv(3)).unwrap();
        let v = check_k3(&f).unwrap();
        assert!(v.holds);
        assert_eq!(v.detail.len(), 4);
    }

    #[test]
    fn k4_examples() {
        let f = GbfTable::from_boolean(&x1x2(), lv(4)).unwrap();
        assert!(check_k4_gbent(&f).unwrap().holds);
        assert!(check_k4_z4(&f).unwrap().holds);

        // every component is bent and so are a_4 and a_1 + a_4, hence gbent
        let ex = example_k4();
        assert!(components_bent_necessary(&ex).unwrap().holds);
        assert!(is_gbent(&ex));
        assert!(check_k4_gbent(&ex).unwrap().holds);
        assert!(check_k4_z4(&ex).unwrap().holds);

        // components all bent without gbent
        let f = GbfTable::parse("4:2:0,1,2,11").unwrap();
        assert!(components_bent_necessary(&f).unwrap().holds);
        assert!(!is_gbent(&f));
        let v = check_k4_gbent(&f).unwrap();
        assert!(!v.holds);
        assert!(v.failure_witness.is_some());
        assert!(!check_k4_z4(&f).unwrap().holds);

        // a_1 + 8 a_4 with a_4 and a_1 + a_4 bent
        let a4 = x1x2();
        let a1 = BoolTable::from_fn(2, |x| x & 1 == 1);
        let f = GbfTable::combine(&[a1, BoolTable::zeros(2), BoolTable::zeros(2), a4], lv(4))
            .unwrap();
        assert!(is_gbent(&f));
        assert!(check_k4_gbent(&f).unwrap().holds);
    }

    #[test]
    fn k4_semibent_examples() {
        // a_1 + 8 a_4 with a_4 = x_1, a_1 + a_4 = x_1 + x_2 on three variables
        let a4 = BoolTable::from_fn(3, |x| x & 1 == 1);
        let a1 = BoolTable::from_fn(3, |x| x & 2 == 2);
        let z = BoolTable::zeros(3);
        let f = GbfTable::combine(&[a1, z.clone(), z, a4], lv(4)).unwrap();
        // both components are 2-plateaued on 3 variables, not semibent
        assert!(!check_k4_gsemibent(&f).unwrap().holds);

        let maj = BoolTable::from_fn(3, |x| x.count_ones() >= 2);
        let f = GbfTable::from_boolean(&maj, lv(4)).unwrap();
        assert_eq!(plateau_level(&f), crate::classify::PlateauResult::Plateaued { s: 1 });
        assert!(check_k4_gsemibent(&f).unwrap().holds);
    }

    #[test]
    fn level_errors() {
        let f = GbfTable::constant(2, lv(3), 0).unwrap();
        assert!(check_k2(&f).is_err());
        assert!(check_k4_gbent(&f).is_err());
        let g = GbfTable::constant(2, lv(1), 0).unwrap();
        assert!(check_inductive(&g).is_err());
        assert!(component_spectra(&g).is_err());
        let h = GbfTable::constant(3, lv(3), 0).unwrap();
        assert_eq!(components_bent_necessary(&h), Err(Error::OddVariableCount(3)));
        let big = GbfTable::constant(2, lv(5), 0).unwrap();
        assert!(verify_walsh_decomposition(&big, 0).is_err());
    }

    #[test]
    fn inductive_examples() {
        // g = 0, h gbent
        let f = GbfTable::from_boolean(&x1x2(), lv(3)).unwrap();
        assert!(check_inductive(&f).unwrap().holds);
        for f in all_tables(2, 2) {
            let ind = check_inductive(&f).unwrap().holds;
            let comps = f.components();
            let pair = crate::classify::boolean_class(&comps[1]).is_bent()
                && crate::classify::boolean_class(&comps[1].xor(&comps[0]).unwrap()).is_bent();
            assert_eq!(ind, pair, "{f}");
        }
    }

    #[test]
    fn decomposition_weights_k2() {
        let k = lv(2);
        assert_eq!(decomposition_weight(k, 0).coeffs(), &[1.into(), 1.into()] as &[BigInt]);
        assert_eq!(decomposition_weight(k, 1).coeffs(), &[1.into(), (-1).into()] as &[BigInt]);
    }

    #[test]
    fn identities_on_random_tables() {
        for k in 2..=4 {
            for n in 1..=4 {
                for seed in 0..10 {
                    let f = random_gbf(n, lv(k), seed);
                    assert_eq!(verify_walsh_decomposition_all(&f).unwrap(), None);
                    assert_eq!(verify_recursive_split_all(&f).unwrap(), None);
                    assert_eq!(verify_gray_wht_all(&f).unwrap(), None);
                    assert!(verify_walsh_decomposition(&f, 0).unwrap());
                    assert!(verify_recursive_split(&f, (1 << n) - 1).unwrap());
                    assert!(verify_gray_wht(&f, 0, (1 << (k - 1)) - 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn split_with_zero_low_plane() {
        for seed in 0..5 {
            let h = random_gbf(3, lv(3), seed);
            let f = h.map_to(lv(4), |v| 2 * v);
            assert_eq!(verify_recursive_split_all(&f).unwrap(), None);
        }
    }

    #[test]
    fn gray_classes_of_examples() {
        let f = GbfTable::parse("3:3:01234567").unwrap();
        assert_eq!(gray_classify(&f).unwrap(), BoolClass::Plateaued { s: 1 });
        let f = GbfTable::from_fn(4, lv(4), |x| {
            let b = |i: usize| ((x >> i) & 1) as u64;
            b(0) + 2 * b(1) + 4 + 8 * (b(2) ^ b(3))
        })
        .unwrap();
        assert_eq!(gray_classify(&f).unwrap(), BoolClass::Plateaued { s: 3 });
        let f = GbfTable::parse("2:2:0,0,0,2").unwrap();
        assert!(gray_classify(&f).unwrap().is_semibent(3));
    }

    #[test]
    fn discrepancy_free_on_constructions() {
        let b = mm_bent(2, &[1, 3, 0, 2], &BoolTable::zeros(2)).unwrap();
        for k in 2..=4 {
            let f = GbfTable::from_boolean(&b, lv(k)).unwrap();
            assert_eq!(discrepancy(&f).unwrap(), None);
        }
        assert_eq!(discrepancy(&example_k4()).unwrap(), None);
    }
}
