//! Witness constructions and exhaustive / random / constructive search with
//! JSONL output.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::Range;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{
    boolean_class, dual_of_spectrum, is_gbent_spectrum, plateau_of_spectrum, DualResult,
};
use crate::cyclotomic::Level;
use crate::error::{Error, Result};
use crate::table::{BoolTable, GbfTable};
use crate::theorems::{all_verdicts, discrepancy};
use crate::transform::gwht;

/// Exhaustive mode is limited to `k · 2^n <= EXHAUSTIVE_BITS`.
pub const EXHAUSTIVE_BITS: u32 = 20;

/// Maiorana–McFarland: `x · π(y) ⊕ h(y)` on `2m` variables, `x` in the low
/// `m` bits and `y` in the high `m` bits.
pub fn mm_bent(m: u32, perm: &[usize], h: &BoolTable) -> Result<BoolTable> {
    let size = 1usize << m;
    if perm.len() != size || h.n() != m {
        return Err(Error::ShapeMismatch(format!(
            "permutation of length {} and h on {} variables for m = {m}",
            perm.len(),
            h.n()
        )));
    }
    let mut seen = vec![false; size];
    for &p in perm {
        if p >= size || std::mem::replace(&mut seen[p], true) {
            return Err(Error::NotBijective(size));
        }
    }
    Ok(BoolTable::from_fn(2 * m, |i| {
        let (x, y) = (i & (size - 1), i >> m);
        ((x & perm[y]).count_ones() & 1 == 1) ^ h.get(y)
    }))
}

/// A Maiorana–McFarland bent function with random permutation and `h`.
pub fn random_mm_bent(m: u32, rng: &mut impl Rng) -> BoolTable {
    let mut perm: Vec<usize> = (0..1usize << m).collect();
    perm.shuffle(rng);
    let h = BoolTable::from_fn(m, |_| rng.gen());
    mm_bent(m, &perm, &h).expect("shuffled permutation is bijective")
}

fn both_pass(a: &BoolTable, b: &BoolTable, test: impl Fn(&BoolTable) -> bool) -> Result<bool> {
    Ok(test(a) && test(&a.xor(b)?))
}

/// `f = a_1 + 2^{k-1} a_k`. With `strict`, even `n` requires `a_k` and
/// `a_1 ⊕ a_k` bent and odd `n` requires both semibent.
pub fn sparse_gbent(a1: &BoolTable, ak: &BoolTable, k: Level, strict: bool) -> Result<GbfTable> {
    if a1.n() != ak.n() {
        return Err(Error::ShapeMismatch(format!(
            "a_1 has {} variables, a_k has {}",
            a1.n(),
            ak.n()
        )));
    }
    if k.get() < 2 {
        return Err(Error::Unsupported("sparse construction needs k >= 2".into()));
    }
    let n = ak.n();
    if strict {
        let ok = if n % 2 == 0 {
            both_pass(ak, a1, |b| boolean_class(b).is_bent())?
        } else {
            both_pass(ak, a1, |b| boolean_class(b).is_semibent(n))?
        };
        if !ok {
            return Err(Error::Infeasible(
                "a_k and a_1 + a_k do not have the required spectra".into(),
            ));
        }
    }
    let top = 1u64 << (k.get() - 1);
    GbfTable::from_fn(n, k, |x| u64::from(a1.get(x)) + top * u64::from(ak.get(x)))
}

/// Uniform table from a seeded ChaCha8 stream.
pub fn random_gbf(n: u32, k: Level, seed: u64) -> GbfTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_gbf_with(n, k, &mut rng)
}

pub fn random_gbf_with(n: u32, k: Level, rng: &mut impl Rng) -> GbfTable {
    let mask = (k.order() - 1) as u64;
    GbfTable::from_fn(n, k, |_| rng.gen::<u64>() & mask).expect("n within cap")
}

/// The table at position `index` in lexicographic order of value vectors,
/// with `values[0]` the most significant digit.
pub fn exhaustive_table(n: u32, k: Level, index: u64) -> GbfTable {
    let len = 1usize << n;
    let kb = k.get() as usize;
    let mask = (k.order() - 1) as u64;
    GbfTable::from_fn(n, k, |x| (index >> (kb * (len - 1 - x))) & mask).expect("n within cap")
}

pub fn exhaustive_count(n: u32, k: Level) -> Result<u64> {
    let bits = u64::from(k.get()) << n.min(6);
    if n > 5 || bits > u64::from(EXHAUSTIVE_BITS) {
        return Err(Error::Infeasible(format!(
            "exhaustive search over n = {n}, k = {k} exceeds k * 2^n <= {EXHAUSTIVE_BITS}"
        )));
    }
    Ok(1u64 << bits)
}

/// Worker count: `GBENT_THREADS` if set, else the available parallelism.
pub fn thread_count() -> usize {
    let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
    std::env::var("GBENT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(avail)
}

/// Splits `0..total` into fixed chunks and maps them on worker threads.
/// Results come back in chunk order.
pub fn par_chunks<T: Send>(total: u64, chunk: u64, f: impl Fn(Range<u64>) -> T + Sync) -> Vec<T> {
    let chunk = chunk.max(1);
    let n_chunks = total.div_ceil(chunk) as usize;
    let workers = thread_count().min(n_chunks).max(1);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..n_chunks).map(|_| None).collect();
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= n_chunks {
                    break;
                }
                let start = i as u64 * chunk;
                let out = f(start..(start + chunk).min(total));
                results.lock().expect("no worker panicked")[i] = Some(out);
            });
        }
    });
    slots.into_iter().map(|s| s.expect("every chunk ran")).collect()
}

/// Constructive families of gbent witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `2^{k-1} b + c` with `b` Maiorana–McFarland bent (even `n`).
    ScaledBent,
    /// `a_1 + 2^{k-1} a_k` with `a_k`, `a_1 ⊕ a_k` bent (even `n`).
    Sparse,
    /// Direct sums of gbent functions on one and two variables (k <= 4).
    DirectSum,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scaled-bent" | "scaled" => Ok(Family::ScaledBent),
            "sparse" => Ok(Family::Sparse),
            "direct-sum" => Ok(Family::DirectSum),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::ScaledBent => "scaled-bent",
            Family::Sparse => "sparse",
            Family::DirectSum => "direct-sum",
        })
    }
}

/// All gbent functions on `n` variables at level `k`, by brute force.
pub fn gbent_pool(n: u32, k: Level) -> Result<Vec<GbfTable>> {
    let total = exhaustive_count(n, k)?;
    let parts = par_chunks(total, 1 << 12, |r| {
        r.map(|i| exhaustive_table(n, k, i))
            .filter(|f| is_gbent_spectrum(&gwht(f)))
            .collect::<Vec<_>>()
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Generator for one constructive family at fixed `(n, k)`.
pub struct Constructor {
    family: Family,
    n: u32,
    k: Level,
    small: Vec<GbfTable>,
    pair: Vec<GbfTable>,
}

impl Constructor {
    pub fn new(family: Family, n: u32, k: Level) -> Result<Self> {
        let even_only = |what: &str| {
            if n % 2 == 1 || n == 0 {
                Err(Error::Unsupported(format!(
                    "{what} needs an even positive n, got {n}"
                )))
            } else {
                Ok(())
            }
        };
        let (mut small, mut pair) = (Vec::new(), Vec::new());
        match family {
            Family::ScaledBent => even_only("scaled-bent")?,
            Family::Sparse => {
                even_only("sparse")?;
                if k.get() < 2 {
                    return Err(Error::Unsupported("sparse needs k >= 2".into()));
                }
            }
            Family::DirectSum => {
                if k.get() > 4 || n == 0 {
                    return Err(Error::Unsupported(format!(
                        "direct-sum needs 1 <= n and k <= 4, got n = {n}, k = {k}"
                    )));
                }
                small = gbent_pool(1, k)?;
                pair = gbent_pool(2, k)?;
                if n % 2 == 1 && small.is_empty() {
                    return Err(Error::Infeasible(format!(
                        "no gbent functions on one variable at k = {k}"
                    )));
                }
            }
        }
        Ok(Constructor {
            family,
            n,
            k,
            small,
            pair,
        })
    }

    pub fn sample(&self, rng: &mut impl Rng) -> GbfTable {
        let (n, k) = (self.n, self.k);
        match self.family {
            Family::ScaledBent => {
                let b = random_mm_bent(n / 2, rng);
                let c = rng.gen_range(0..k.order() as u64);
                GbfTable::from_boolean(&b, k)
                    .expect("same n")
                    .map_to(k, |v| v + c)
            }
            Family::Sparse => {
                let ak = random_mm_bent(n / 2, rng);
                let other = random_mm_bent(n / 2, rng);
                let a1 = ak.xor(&other).expect("same n");
                sparse_gbent(&a1, &ak, k, false).expect("same n")
            }
            Family::DirectSum => {
                let mut f = if n % 2 == 1 {
                    self.small.choose(rng).expect("nonempty pool").clone()
                } else {
                    self.pair.choose(rng).expect("nonempty pool").clone()
                };
                while f.n() < n {
                    let piece = self.pair.choose(rng).expect("nonempty pool");
                    f = f.direct_sum(piece).expect("same level");
                }
                f
            }
        }
    }
}

/// `count` witnesses from `family`, reproducible from `seed`.
pub fn construct(family: Family, n: u32, k: Level, count: usize, seed: u64) -> Result<Vec<GbfTable>> {
    let c = Constructor::new(family, n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| c.sample(&mut rng)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    Gbent,
    Gsemibent,
    Plateaued(u32),
    TheoremDiscrepancy,
}

impl FromStr for Predicate {
    type Err = Error;

    /// `gbent`, `gsemibent`, `plateaued:<s>` (also `plateaued(<s>)`), or
    /// `theorem-discrepancy`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown predicate {s:?}"));
        match s {
            "gbent" => Ok(Predicate::Gbent),
            "gsemibent" => Ok(Predicate::Gsemibent),
            "theorem-discrepancy" => Ok(Predicate::TheoremDiscrepancy),
            _ => {
                let rest = s.strip_prefix("plateaued").ok_or_else(bad)?;
                let level = rest
                    .strip_prefix(':')
                    .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(bad)?;
                level.parse().map(Predicate::Plateaued).map_err(|_| bad())
            }
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Gbent => f.write_str("gbent"),
            Predicate::Gsemibent => f.write_str("gsemibent"),
            Predicate::Plateaued(s) => write!(f, "plateaued:{s}"),
            Predicate::TheoremDiscrepancy => f.write_str("theorem-discrepancy"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { count: u64, seed: u64 },
    Construct { family: Family, count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: u32,
    pub k: Level,
    pub mode: Mode,
    pub predicate: Predicate,
    /// JSONL sink; `None` counts matches without writing them.
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub tested: u64,
    pub matched: u64,
    pub written: u64,
}

/// The persisted record for one matched function.
pub fn record(f: &GbfTable) -> Result<Value> {
    let s = gwht(f);
    let gbent = is_gbent_spectrum(&s);
    let verdicts: serde_json::Map<String, Value> = all_verdicts(f)?
        .into_iter()
        .map(|(name, v)| (name.to_string(), Value::Bool(v.holds)))
        .collect();
    let mut rec = json!({
        "n": f.n(),
        "k": f.k().get(),
        "values": f.values(),
        "classification": {
            "gbent": gbent,
            "plateau": plateau_of_spectrum(&s),
        },
        "theorem_verdicts": verdicts,
    });
    if gbent {
        if let DualResult::Regular { dual } = dual_of_spectrum(&s)? {
            rec["dual"] = json!(dual.values());
        }
    }
    Ok(rec)
}

fn matches(p: Predicate, f: &GbfTable) -> Result<bool> {
    Ok(match p {
        Predicate::Gbent => is_gbent_spectrum(&gwht(f)),
        Predicate::Gsemibent => plateau_of_spectrum(&gwht(f)).level() == Some(1),
        Predicate::Plateaued(s) => plateau_of_spectrum(&gwht(f)).level() == Some(s),
        Predicate::TheoremDiscrepancy => match discrepancy(f) {
            Ok(d) => d.is_some(),
            Err(Error::Disagreement(_)) => true,
            Err(e) => return Err(e),
        },
    })
}

struct ChunkResult {
    tested: u64,
    lines: Vec<String>,
}

fn scan(
    spec: &SearchSpec,
    range: Range<u64>,
    mut candidate: impl FnMut(u64) -> GbfTable,
) -> Result<ChunkResult> {
    let mut out = ChunkResult {
        tested: 0,
        lines: Vec::new(),
    };
    for i in range {
        let f = candidate(i);
        out.tested += 1;
        if matches(spec.predicate, &f)? {
            out.lines.push(serde_json::to_string(&record(&f)?).expect("json"));
        }
    }
    Ok(out)
}

/// Runs a search. Output order is deterministic: lexicographic in
/// exhaustive mode, generation order otherwise.
pub fn run_search(spec: &SearchSpec) -> Result<SearchSummary> {
    let (n, k) = (spec.n, spec.k);
    let mut sink = match &spec.output {
        Some(p) => Some(BufWriter::new(File::create(p)?)),
        None => None,
    };
    let chunks: Vec<Result<ChunkResult>> = match &spec.mode {
        Mode::Exhaustive => {
            let total = exhaustive_count(n, k)?;
            par_chunks(total, 1 << 12, |r| scan(spec, r, |i| exhaustive_table(n, k, i)))
        }
        Mode::Random { count, seed } => {
            // one stream per chunk keeps output independent of thread count
            par_chunks(*count, 1 << 10, |r| {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(r.start >> 10);
                scan(spec, r, |_| random_gbf_with(n, k, &mut rng))
            })
        }
        Mode::Construct {
            family,
            count,
            seed,
        } => {
            let fs = construct(*family, n, k, *count as usize, *seed)?;
            par_chunks(fs.len() as u64, 64, |r| scan(spec, r, |i| fs[i as usize].clone()))
        }
    };
    let mut summary = SearchSummary::default();
    for c in chunks {
        let c = c?;
        summary.tested += c.tested;
        summary.matched += c.lines.len() as u64;
        if let Some(w) = sink.as_mut() {
            for line in &c.lines {
                writeln!(w, "{line}")?;
                summary.written += 1;
            }
        }
    }
    if let Some(mut w) = sink {
        w.flush()?;
    }
    Ok(summary)
}
