//! Distribution of the distance excess `delta = d' - (d - t)` over all
//! `t`-fold punctures of a mother code.
//!
//! Each index set (one per orbit) is a task; every task covers all
//! `(p+1)^t` tuples of canonical pairs. Punctured distances come from a word
//! table when possible: with `d > t`, a word `u` of `S_p^perp \ S_p` survives
//! puncturing at `I` exactly when each pair of `u` on `I` is zero or
//! proportional to the chosen pair, it stays outside the new stabilizer, and
//! its weight drops by `|supp(u) & I|`. So every punctured distance up to `d`
//! can be read off the words of weight at most `d + t`. Larger values, and
//! codes where `k` changed, fall back to a direct enumeration.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::code::StabilizerCode;
use crate::distance::{collect_words, min_distance, EnumBudget};
use crate::error::{Error, Result};
use crate::gfp::Residue;
use crate::puncture::puncture;
use crate::search::{orbits, OrbitGroup};
use crate::symplectic::{ProjPair, SympVec};

/// Runs with more `(index set, tuple)` combinations than this need [`Tier::Long`].
pub const SHORT_TIER_LIMIT: u64 = 10_000;

const CHECKPOINT_INTERVAL: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DedupeMode {
    /// Count every (index set, tuple) combination.
    Combos,
    /// Count distinct punctured codes.
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Short,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Word table when `n <= 64` and `p < 256`, direct enumeration otherwise.
    Auto,
    /// Enumerate every punctured code separately.
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaHistogram {
    pub t: usize,
    pub total_codes: u64,
    pub buckets: BTreeMap<i64, u64>,
    pub dedupe_mode: DedupeMode,
    pub orbit_group: String,
    /// (index set, tuple) combinations evaluated.
    pub combinations: u64,
    pub distinct_codes: u64,
    /// Combinations whose punctured code equals an earlier one.
    pub collisions: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub done_sets: usize,
    pub total_sets: usize,
}

pub struct EnumerateOptions<'a> {
    pub t: usize,
    pub group: OrbitGroup,
    pub dedupe: DedupeMode,
    pub tier: Tier,
    pub method: Method,
    pub budget: EnumBudget,
    pub checkpoint: Option<PathBuf>,
    pub progress: Option<&'a (dyn Fn(Progress) + Sync)>,
}

impl EnumerateOptions<'_> {
    pub fn new(t: usize) -> Self {
        EnumerateOptions {
            t,
            group: OrbitGroup::Identity,
            dedupe: DedupeMode::Combos,
            tier: Tier::Short,
            method: Method::Auto,
            budget: EnumBudget::default(),
            checkpoint: None,
            progress: None,
        }
    }
}

/// Words of `S_p^perp \ S_p` with weight at most `d + t`, row values flattened.
struct WordTable {
    n: usize,
    masks: Vec<u64>,
    weights: Vec<u8>,
    values: Vec<u8>,
}

impl WordTable {
    fn build(code: &StabilizerCode, max_weight: usize, budget: &EnumBudget) -> Result<Self> {
        let n = code.n();
        let words = collect_words(code, max_weight, budget, |v| {
            let mask = v.support().iter().fold(0u64, |m, &i| m | 1 << i);
            let vals: Vec<u8> = v.a().iter().chain(v.b()).map(|&x| x as u8).collect();
            (mask, vals)
        })?;
        let mut table = WordTable {
            n,
            masks: Vec::with_capacity(words.len()),
            weights: Vec::with_capacity(words.len()),
            values: Vec::with_capacity(words.len() * 2 * n),
        };
        for (mask, vals) in words {
            table.masks.push(mask);
            table.weights.push(mask.count_ones() as u8);
            table.values.extend(vals);
        }
        Ok(table)
    }

    fn pair(&self, w: usize, i: usize) -> (Residue, Residue) {
        let row = &self.values[w * 2 * self.n..(w + 1) * 2 * self.n];
        (row[i] as Residue, row[self.n + i] as Residue)
    }

    fn word(&self, code: &StabilizerCode, w: usize) -> SympVec {
        let row: Vec<Residue> = self.values[w * 2 * self.n..(w + 1) * 2 * self.n]
            .iter()
            .map(|&x| x as Residue)
            .collect();
        SympVec::from_row(code.field(), &row).expect("table rows hold residues")
    }
}

struct Context<'a> {
    code: &'a StabilizerCode,
    d: usize,
    t: usize,
    pairs: Vec<ProjPair>,
    table: Option<WordTable>,
    budget: EnumBudget,
}

/// Result of one tuple: hash of the punctured code and its delta.
type Outcome = (u128, i64);

fn key_hash(code: &StabilizerCode) -> u128 {
    let digest = Sha256::digest(code.canonical_key());
    u128::from_le_bytes(digest[..16].try_into().expect("16 bytes"))
}

/// Hex SHA-256 of the canonical key, used to tie checkpoints to their mother code.
pub fn code_hash(code: &StabilizerCode) -> String {
    Sha256::digest(code.canonical_key())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Context<'_> {
    fn classes(&self) -> usize {
        self.pairs.len()
    }

    /// Punctured codes for every tuple, indexed by the tuple read as a base-(p+1) number.
    fn punctured_family(&self, set: &[usize]) -> Result<Vec<StabilizerCode>> {
        let c = self.classes();
        let mut level = vec![(self.code.clone(), 0usize)];
        // descending positions: later positions go first so indices do not shift
        for j in (0..set.len()).rev() {
            let weight = c.pow((set.len() - 1 - j) as u32);
            let mut next = Vec::with_capacity(level.len() * c);
            for (code, idx) in &level {
                for (ci, &pair) in self.pairs.iter().enumerate() {
                    next.push((puncture(code, set[j], pair)?, idx + ci * weight));
                }
            }
            level = next;
        }
        let mut out: Vec<Option<StabilizerCode>> = vec![None; level.len()];
        for (code, idx) in level {
            out[idx] = Some(code);
        }
        Ok(out.into_iter().map(|c| c.expect("every tuple visited")).collect())
    }

    /// Least predicted weight per tuple and a word attaining it, for values up to `d`.
    fn table_minima(&self, table: &WordTable, set: &[usize]) -> Vec<Option<(usize, usize)>> {
        let f = self.code.field();
        let c = self.classes();
        let t = set.len();
        let mut best: Vec<Option<(usize, usize)>> = vec![None; c.pow(t as u32)];
        let imask = set.iter().fold(0u64, |m, &i| m | 1 << i);
        let mut frontier = Vec::new();
        let mut grown = Vec::new();
        for w in 0..table.masks.len() {
            let lost = (table.masks[w] & imask).count_ones() as usize;
            let val = table.weights[w] as usize - lost;
            if val > self.d {
                continue;
            }
            frontier.clear();
            frontier.push(0usize);
            for &i in set {
                grown.clear();
                match ProjPair::class_of(f, table.pair(w, i)) {
                    Some(k) => grown.extend(frontier.iter().map(|x| x * c + k)),
                    None => grown.extend(frontier.iter().flat_map(|x| (0..c).map(move |k| x * c + k))),
                }
                std::mem::swap(&mut frontier, &mut grown);
            }
            for &idx in &frontier {
                if best[idx].is_none_or(|(b, _)| val < b) {
                    best[idx] = Some((val, w));
                }
            }
        }
        best
    }

    fn direct_distance(&self, code: &StabilizerCode) -> Result<usize> {
        let floor = self.d.saturating_sub(self.t).max(1);
        let budget = EnumBudget {
            max_weight: Some(floor),
            workers: 1,
            ..self.budget
        };
        Ok(min_distance(code, &budget)?.d)
    }

    fn evaluate(&self, set: &[usize]) -> Result<Vec<Outcome>> {
        let family = self.punctured_family(set)?;
        let minima = self.table.as_ref().map(|tb| self.table_minima(tb, set));
        let floor = self.d as i64 - self.t as i64;
        family
            .iter()
            .enumerate()
            .map(|(idx, q)| {
                let from_table = match (&self.table, &minima) {
                    (Some(tb), Some(m)) if q.k() == self.code.k() => m[idx].filter(|&(_, w)| {
                        let row = tb.word(self.code, w).puncture_positions(set).to_row();
                        let ok = q.centralizer_space().contains(&row) && !q.stab_space().contains(&row);
                        debug_assert!(ok, "table word must stay logical after puncturing");
                        ok
                    }),
                    _ => None,
                };
                let dq = match from_table {
                    Some((v, _)) => v,
                    None => self.direct_distance(q)?,
                };
                Ok((key_hash(q), dq as i64 - floor))
            })
            .collect()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    mother_hash: String,
    t: usize,
    orbit_group: String,
    dedupe_mode: DedupeMode,
    completed: Vec<usize>,
    buckets: BTreeMap<i64, u64>,
    combinations: u64,
    /// `hash:delta` for every distinct punctured code seen so far.
    codes: Vec<String>,
    collisions: u64,
}

struct Tally {
    completed: Vec<bool>,
    combo_buckets: BTreeMap<i64, u64>,
    combinations: u64,
    codes: HashMap<u128, i64>,
    collisions: u64,
}

impl Tally {
    fn new(tasks: usize) -> Self {
        Tally {
            completed: vec![false; tasks],
            combo_buckets: BTreeMap::new(),
            combinations: 0,
            codes: HashMap::new(),
            collisions: 0,
        }
    }

    fn add(&mut self, task: usize, outcomes: &[Outcome]) {
        self.completed[task] = true;
        for &(key, delta) in outcomes {
            *self.combo_buckets.entry(delta).or_default() += 1;
            self.combinations += 1;
            if let Some(prev) = self.codes.insert(key, delta) {
                debug_assert_eq!(prev, delta, "equal codes must have equal distance");
                self.collisions += 1;
            }
        }
    }

    fn load(&mut self, path: &Path, header: &Checkpoint) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        let ck: Checkpoint = serde_json::from_str(&text).map_err(|e| Error::Checkpoint(e.to_string()))?;
        if (&ck.mother_hash, ck.t, &ck.orbit_group, ck.dedupe_mode)
            != (&header.mother_hash, header.t, &header.orbit_group, header.dedupe_mode)
        {
            return Err(Error::Checkpoint(format!(
                "{} belongs to a different run (code, t, group or dedupe mode differ)",
                path.display()
            )));
        }
        for &task in &ck.completed {
            let slot = self
                .completed
                .get_mut(task)
                .ok_or_else(|| Error::Checkpoint(format!("task id {task} out of range")))?;
            *slot = true;
        }
        self.combo_buckets = ck.buckets;
        self.combinations = ck.combinations;
        self.collisions = ck.collisions;
        for entry in &ck.codes {
            let parsed = entry
                .split_once(':')
                .and_then(|(k, d)| Some((u128::from_str_radix(k, 16).ok()?, d.parse().ok()?)));
            let (k, d) = parsed.ok_or_else(|| Error::Checkpoint(format!("bad code entry '{entry}'")))?;
            self.codes.insert(k, d);
        }
        Ok(())
    }

    fn save(&self, path: &Path, header: &Checkpoint) -> Result<()> {
        let mut codes: Vec<String> = self.codes.iter().map(|(k, d)| format!("{k:032x}:{d}")).collect();
        codes.sort_unstable();
        let ck = Checkpoint {
            mother_hash: header.mother_hash.clone(),
            t: header.t,
            orbit_group: header.orbit_group.clone(),
            dedupe_mode: header.dedupe_mode,
            completed: (0..self.completed.len()).filter(|&i| self.completed[i]).collect(),
            buckets: self.combo_buckets.clone(),
            combinations: self.combinations,
            codes,
            collisions: self.collisions,
        };
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(&ck).expect("checkpoint serializes");
        std::fs::write(&tmp, text)
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }
}

/// Punctures `code` at every orbit representative of `t`-sets with every
/// tuple of canonical pairs and tallies `delta`.
pub fn enumerate_punctures(code: &StabilizerCode, opts: &EnumerateOptions) -> Result<DeltaHistogram> {
    let t = opts.t;
    let group_name = opts.group.name().to_string();
    if t == 0 {
        return Ok(DeltaHistogram {
            t,
            total_codes: 1,
            buckets: BTreeMap::from([(0, 1)]),
            dedupe_mode: opts.dedupe,
            orbit_group: group_name,
            combinations: 1,
            distinct_codes: 1,
            collisions: 0,
        });
    }
    if t >= code.n() {
        return Err(Error::InvalidIndices(format!("t = {t} must be below n = {}", code.n())));
    }
    let mother_budget = EnumBudget {
        max_weight: None,
        ..opts.budget
    };
    let sets = orbits(code.n(), t, &opts.group)?;
    let pairs = ProjPair::all(code.field());
    let combos = sets.len() as u128 * (pairs.len() as u128).pow(t as u32);
    if opts.tier == Tier::Short && combos > SHORT_TIER_LIMIT as u128 {
        return Err(Error::Unsupported(format!(
            "{combos} combinations exceed the short tier limit of {SHORT_TIER_LIMIT}; use the long tier"
        )));
    }
    let d = min_distance(code, &mother_budget)?.d;
    if d <= t {
        return Err(Error::DistanceTooSmall { d, t });
    }
    let table = match opts.method {
        Method::Auto if code.n() <= 64 && code.p() < 256 => Some(WordTable::build(code, d + t, &mother_budget)?),
        _ => None,
    };
    let ctx = Context {
        code,
        d,
        t,
        pairs,
        table,
        budget: opts.budget,
    };

    let header = Checkpoint {
        mother_hash: code_hash(code),
        t,
        orbit_group: group_name.clone(),
        dedupe_mode: opts.dedupe,
        completed: Vec::new(),
        buckets: BTreeMap::new(),
        combinations: 0,
        codes: Vec::new(),
        collisions: 0,
    };
    let mut tally = Tally::new(sets.len());
    if let Some(path) = opts.checkpoint.as_deref().filter(|p| p.exists()) {
        tally.load(path, &header)?;
    }

    let pending: Vec<usize> = (0..sets.len()).filter(|&i| !tally.completed[i]).collect();
    let workers = opts.budget.workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let batch = (workers * 4).max(8);
    let mut last_save = Instant::now();
    for chunk in pending.chunks(batch) {
        let results: Vec<Result<Vec<Outcome>>> =
            pool.install(|| chunk.par_iter().map(|&task| ctx.evaluate(&sets[task].rep)).collect());
        for (&task, res) in chunk.iter().zip(results) {
            tally.add(task, &res?);
        }
        if let Some(cb) = opts.progress {
            cb(Progress {
                done_sets: tally.completed.iter().filter(|&&c| c).count(),
                total_sets: sets.len(),
            });
        }
        if let Some(path) = &opts.checkpoint {
            if last_save.elapsed() >= CHECKPOINT_INTERVAL {
                tally.save(path, &header)?;
                last_save = Instant::now();
            }
        }
    }
    if let Some(path) = &opts.checkpoint {
        tally.save(path, &header)?;
    }

    let distinct_codes = tally.codes.len() as u64;
    let (total_codes, buckets) = match opts.dedupe {
        DedupeMode::Combos => (tally.combinations, tally.combo_buckets),
        DedupeMode::Canonical => {
            let mut b = BTreeMap::new();
            for &delta in tally.codes.values() {
                *b.entry(delta).or_default() += 1;
            }
            (distinct_codes, b)
        }
    };
    Ok(DeltaHistogram {
        t,
        total_codes,
        buckets,
        dedupe_mode: opts.dedupe,
        orbit_group: group_name,
        combinations: tally.combinations,
        distinct_codes,
        collisions: tally.collisions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistogramFormat {
    Csv,
    Json,
}

/// Renders a histogram; CSV has columns `t,total_codes,delta,count`, one row per bucket.
pub fn emit_histogram(h: &DeltaHistogram, format: HistogramFormat) -> String {
    match format {
        HistogramFormat::Csv => {
            let mut out = String::from("t,total_codes,delta,count\n");
            for (delta, count) in &h.buckets {
                out.push_str(&format!("{},{},{},{}\n", h.t, h.total_codes, delta, count));
            }
            out
        }
        HistogramFormat::Json => serde_json::to_string_pretty(h).expect("histogram serializes") + "\n",
    }
}
