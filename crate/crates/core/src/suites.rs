//! Verification suites: run a checker over every function of a small
//! space, or over random and constructed samples, and count disagreements
//! with the spectral definitions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    dual_of_spectrum, is_gbent, is_gbent_spectrum, plateau_of_spectrum, DualResult,
};
use crate::cyclotomic::Level;
use crate::error::{Error, Result};
use crate::search::{
    exhaustive_count, exhaustive_table, par_chunks, random_gbf_with, Constructor, Family,
};
use crate::table::GbfTable;
use crate::theorems::{
    check_inductive, check_k2, check_k3, check_k4_gbent, check_k4_gsemibent, check_k4_z4,
    components_bent_necessary, expected_gray_plateau, gray_classify,
    verify_gray_wht_all, verify_recursive_split_all, verify_walsh_decomposition_all,
};
use crate::transform::gwht;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    K2,
    K3,
    K4,
    K4Z4,
    Gsemibent,
    Inductive,
    Gray,
    Regularity,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Identities,
        Suite::K2,
        Suite::K3,
        Suite::K4,
        Suite::K4Z4,
        Suite::Gsemibent,
        Suite::Inductive,
        Suite::Gray,
        Suite::Regularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::K2 => "k2",
            Suite::K3 => "k3",
            Suite::K4 => "k4",
            Suite::K4Z4 => "k4-z4",
            Suite::Gsemibent => "gsemibent",
            Suite::Inductive => "inductive",
            Suite::Gray => "gray",
            Suite::Regularity => "regularity",
        }
    }

    /// The level a suite is tied to, if any.
    pub fn fixed_level(self) -> Option<u32> {
        match self {
            Suite::K2 => Some(2),
            Suite::K3 => Some(3),
            Suite::K4 | Suite::K4Z4 | Suite::Gsemibent => Some(4),
            _ => None,
        }
    }

    fn level_range(self) -> (u32, u32) {
        match (self.fixed_level(), self) {
            (Some(k), _) => (k, k),
            (None, Suite::Identities | Suite::Gray) => (2, 4),
            (None, Suite::Regularity) => (1, 6),
            (None, _) => (2, 6),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub n: u32,
    /// Defaults to the suite's level, or 4.
    pub k: Option<u32>,
    /// Random samples when the space is too large to enumerate.
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: u32,
    pub k: u32,
    pub exhaustive: bool,
    pub tested: u64,
    pub discrepancies: u64,
    /// Tallies such as the number of gbent functions seen.
    pub counts: BTreeMap<String, u64>,
    pub first_witness: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.discrepancies == 0
    }
}

#[derive(Default)]
struct Outcome {
    discrepancy: Option<String>,
    tags: Vec<&'static str>,
}

impl Outcome {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.discrepancy.is_none() {
            self.discrepancy = Some(what());
        }
    }
}

fn check_identities(f: &GbfTable, out: &mut Outcome) -> Result<()> {
    if let Some(u) = verify_walsh_decomposition_all(f)? {
        out.expect(false, || format!("decomposition fails at u = {u}"));
    }
    if let Some(u) = verify_recursive_split_all(f)? {
        out.expect(false, || format!("recursive split fails at u = {u}"));
    }
    if let Some((u, v)) = verify_gray_wht_all(f)? {
        out.expect(false, || format!("Gray transform identity fails at ({u}, {v})"));
    }
    Ok(())
}

fn check_one(suite: Suite, f: &GbfTable) -> Result<Outcome> {
    let mut out = Outcome::default();
    if suite == Suite::Identities {
        check_identities(f, &mut out)?;
        return Ok(out);
    }
    let s = gwht(f);
    let gbent = is_gbent_spectrum(&s);
    if gbent {
        out.tags.push("gbent");
    }
    let n = f.n();
    let agree = |out: &mut Outcome, name: &str, claim: bool, truth: bool| {
        out.expect(claim == truth, || {
            format!("{name} says {claim}, spectrum says {truth}")
        })
    };
    match suite {
        Suite::K2 => agree(&mut out, "k2", check_k2(f)?.holds, gbent),
        Suite::K3 => agree(&mut out, "k3", check_k3(f)?.holds, gbent),
        Suite::K4 => {
            agree(&mut out, "k4", check_k4_gbent(f)?.holds, gbent);
            agree(&mut out, "k4-z4", check_k4_z4(f)?.holds, gbent);
        }
        Suite::K4Z4 => agree(&mut out, "k4-z4", check_k4_z4(f)?.holds, gbent),
        Suite::Gsemibent => {
            let want = if n % 2 == 1 { 1 } else { 2 };
            let truth = plateau_of_spectrum(&s).level() == Some(want);
            if truth {
                out.tags.push("plateaued");
            }
            agree(&mut out, "gsemibent", check_k4_gsemibent(f)?.holds, truth);
        }
        Suite::Inductive => {
            let ind = check_inductive(f)?.holds;
            if ind {
                out.tags.push("inductive");
            }
            if n % 2 == 0 {
                agree(&mut out, "inductive", ind, gbent);
                if gbent {
                    let nec = components_bent_necessary(f)?.holds;
                    out.expect(nec, || "gbent with a non-bent component".into());
                }
            } else {
                out.expect(!ind || gbent, || "inductive condition holds, not gbent".into());
            }
        }
        Suite::Gray => {
            if gbent {
                let class = gray_classify(f)?;
                let want = expected_gray_plateau(n, f.k().get());
                out.expect(want.is_none() || class.plateau() == want, || {
                    format!("gbent with Gray image {class:?}, expected level {want:?}")
                });
            }
        }
        Suite::Regularity => {
            if gbent {
                match dual_of_spectrum(&s)? {
                    DualResult::Regular { dual } => {
                        out.tags.push("regular");
                        let back = crate::classify::regular_dual(&dual)?;
                        out.expect(is_gbent(&dual) && back.dual() == Some(f), || {
                            "dual is not gbent or is not an involution".into()
                        });
                    }
                    DualResult::NotRepresentable => out.tags.push("not_representable"),
                    DualResult::NotRegular { witness } => {
                        out.expect(false, || format!("not regular at u = {witness}"))
                    }
                }
            }
        }
        Suite::Identities => unreachable!(),
    }
    Ok(out)
}

fn check_or_flag(suite: Suite, f: &GbfTable) -> Result<Outcome> {
    match check_one(suite, f) {
        Err(Error::Disagreement(d)) => Ok(Outcome {
            discrepancy: Some(d),
            tags: Vec::new(),
        }),
        other => other,
    }
}

#[derive(Default)]
struct Tally {
    tested: u64,
    discrepancies: u64,
    counts: BTreeMap<String, u64>,
    first: Option<String>,
}

impl Tally {
    fn add(&mut self, f: &GbfTable, o: Outcome) {
        self.tested += 1;
        for t in o.tags {
            *self.counts.entry(t.to_string()).or_default() += 1;
        }
        if let Some(d) = o.discrepancy {
            self.discrepancies += 1;
            self.first.get_or_insert_with(|| format!("{f}: {d}"));
        }
    }

    fn merge(&mut self, other: Tally) {
        self.tested += other.tested;
        self.discrepancies += other.discrepancies;
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        if self.first.is_none() {
            self.first = other.first;
        }
    }
}

fn run_over(suite: Suite, fs: &[GbfTable]) -> Result<Tally> {
    let parts = par_chunks(fs.len() as u64, 64, |r| -> Result<Tally> {
        let mut t = Tally::default();
        for i in r {
            let f = &fs[i as usize];
            t.add(f, check_or_flag(suite, f)?);
        }
        Ok(t)
    });
    let mut total = Tally::default();
    for p in parts {
        total.merge(p?);
    }
    Ok(total)
}

/// Random samples plus witnesses from every constructive family that
/// applies to `(n, k)`.
pub fn sample_set(n: u32, k: Level, samples: u64, seed: u64) -> Vec<GbfTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fs: Vec<GbfTable> = (0..samples).map(|_| random_gbf_with(n, k, &mut rng)).collect();
    let witnesses = (samples / 10).max(20);
    for fam in [Family::ScaledBent, Family::Sparse, Family::DirectSum] {
        if let Ok(c) = Constructor::new(fam, n, k) {
            fs.extend((0..witnesses).map(|_| c.sample(&mut rng)));
        }
    }
    fs
}

pub fn run_suite(suite: Suite, p: SuiteParams) -> Result<SuiteReport> {
    let k = p.k.or(suite.fixed_level()).unwrap_or(4);
    let (lo, hi) = suite.level_range();
    if k < lo || k > hi {
        return Err(Error::Unsupported(format!(
            "suite {suite} runs at k in {lo}..={hi}, got {k}"
        )));
    }
    let level = Level::new(k)?;
    let (exhaustive, tally) = match exhaustive_count(p.n, level) {
        Ok(total) if suite != Suite::Identities => {
            let parts = par_chunks(total, 1 << 12, |r| -> Result<Tally> {
                let mut t = Tally::default();
                for i in r {
                    let f = exhaustive_table(p.n, level, i);
                    let o = check_or_flag(suite, &f)?;
                    t.add(&f, o);
                }
                Ok(t)
            });
            let mut total = Tally::default();
            for t in parts {
                total.merge(t?);
            }
            (true, total)
        }
        _ => {
            if p.n > 16 {
                return Err(Error::Infeasible(format!(
                    "suites sample at most 16 variables, got {}",
                    p.n
                )));
            }
            let fs = if suite == Suite::Identities {
                let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
                (0..p.samples)
                    .map(|_| random_gbf_with(p.n, level, &mut rng))
                    .collect()
            } else {
                sample_set(p.n, level, p.samples, p.seed)
            };
            (false, run_over(suite, &fs)?)
        }
    };
    Ok(SuiteReport {
        suite,
        n: p.n,
        k,
        exhaustive,
        tested: tally.tested,
        discrepancies: tally.discrepancies,
        counts: tally.counts,
        first_witness: tally.first,
    })
}
