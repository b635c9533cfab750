//! Exhaustive and sampled sweeps over pairs of quadrics.
//!
//! `Q1` runs over one canonical representative per `(rank, type)` class, since
//! intersection counts are invariant under simultaneous changes of
//! coordinates. `Q2` runs over nonzero coefficient vectors up to scalar. The
//! sweep is split into chunks of consecutive `Q2` indices; chunks are
//! evaluated in parallel and merged strictly in chunk order, so output does
//! not depend on the number of workers.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::field::{Elem, ElemRepr, FieldSpec};
use crate::proj::{num_monomials, pi, PointTable};
use crate::quadric::{canonical_form, classify, split_linear_factors, QuadraticForm, QuadricType};

/// Default limit on `(number of Q2 forms) x pi_n` for one sweep.
pub const DEFAULT_WORK_CAP: u128 = 20_000_000_000;
pub const DEFAULT_CHUNK: u64 = 4096;
const DEFAULT_MAX_WITNESSES: usize = 8;

/// Nonzero coefficient vectors of length `N` up to scalar, indexed densely.
///
/// Index order: block `k` holds the vectors whose first nonzero entry is
/// `c_k = 1`, blocks in increasing `k`; inside a block the tail
/// `c_{k+1}, ..., c_{N-1}` counts up in base `q` with `c_{N-1}` least significant.
#[derive(Clone, Debug)]
pub struct Q2Space {
    width: usize,
    q: u32,
    total: u64,
}

impl Q2Space {
    pub fn new(n: usize, field: &FieldSpec) -> Result<Self> {
        let width = num_monomials(n);
        let q = field.q() as u128;
        let total = q
            .checked_pow(width as u32)
            .map(|v| (v - 1) / (q - 1))
            .filter(|&t| t <= u64::MAX as u128)
            .ok_or(Error::CapExceeded {
                what: "quadratic forms up to scalar",
                value: u128::MAX,
                cap: u64::MAX as u128,
            })?;
        Ok(Q2Space {
            width,
            q: field.q(),
            total: total as u64,
        })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    fn block_size(&self, k: usize) -> u64 {
        (self.q as u64).pow((self.width - 1 - k) as u32)
    }

    pub fn decode(&self, mut idx: u64) -> Vec<Elem> {
        let mut k = 0;
        while idx >= self.block_size(k) {
            idx -= self.block_size(k);
            k += 1;
        }
        let mut c = vec![Elem::ZERO; self.width];
        c[k] = Elem::ONE;
        for pos in (k + 1..self.width).rev() {
            c[pos] = Elem::from_code((idx % self.q as u64) as u16);
            idx /= self.q as u64;
        }
        c
    }

    /// Index of a normalized vector (first nonzero entry 1).
    pub fn index_of(&self, coeffs: &[Elem]) -> Option<u64> {
        let k = coeffs.iter().position(|c| !c.is_zero())?;
        if coeffs[k] != Elem::ONE {
            return None;
        }
        let before: u64 = (0..k).map(|j| self.block_size(j)).sum();
        let tail = coeffs[k + 1..]
            .iter()
            .fold(0u64, |acc, c| acc * self.q as u64 + c.code() as u64);
        Some(before + tail)
    }
}

/// Walks consecutive indices of a [`Q2Space`], reporting which coordinates change.
struct Q2Cursor<'a> {
    space: &'a Q2Space,
    coeffs: Vec<Elem>,
    lead: usize,
}

impl<'a> Q2Cursor<'a> {
    fn new(space: &'a Q2Space, start: u64) -> Self {
        let coeffs = space.decode(start);
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap();
        Q2Cursor { space, coeffs, lead }
    }

    /// Moves to the next index; pushes `(position, old, new)` for each change.
    fn advance(&mut self, changed: &mut Vec<(usize, Elem, Elem)>) {
        changed.clear();
        let q = self.space.q as u16;
        for pos in (self.lead + 1..self.space.width).rev() {
            let old = self.coeffs[pos];
            let next = old.code() as u16 + 1;
            if next < q {
                self.coeffs[pos] = Elem::from_code(next);
                changed.push((pos, old, self.coeffs[pos]));
                return;
            }
            self.coeffs[pos] = Elem::ZERO;
            changed.push((pos, old, Elem::ZERO));
        }
        // tail wrapped: next block
        changed.push((self.lead, Elem::ONE, Elem::ZERO));
        self.coeffs[self.lead] = Elem::ZERO;
        self.lead += 1;
        changed.push((self.lead, Elem::ZERO, Elem::ONE));
        self.coeffs[self.lead] = Elem::ONE;
    }
}

/// Which `Q1` forms a sweep uses.
#[derive(Clone, Debug)]
pub enum Q1Selector {
    AllCanonical,
    Explicit(QuadraticForm),
    Filter {
        rank: Option<usize>,
        qtype: Option<QuadricType>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SweepMode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub n: usize,
    pub field: FieldSpec,
    pub q1: Q1Selector,
    pub mode: SweepMode,
    pub chunk_size: u64,
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
    /// JSON-lines record stream.
    pub out: Option<PathBuf>,
    /// Completed-chunk log; an existing log resumes the run.
    pub checkpoint: Option<PathBuf>,
    pub work_cap: u128,
    pub max_witnesses: usize,
}

impl CensusConfig {
    pub fn new(n: usize, field: &FieldSpec) -> Self {
        CensusConfig {
            n,
            field: field.clone(),
            q1: Q1Selector::AllCanonical,
            mode: SweepMode::Exhaustive,
            chunk_size: DEFAULT_CHUNK,
            workers: 0,
            out: None,
            checkpoint: None,
            work_cap: DEFAULT_WORK_CAP,
            max_witnesses: DEFAULT_MAX_WITNESSES,
        }
    }
}

/// One checked pair, as streamed to the record file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub q1_class: String,
    pub q2: Vec<ElemRepr>,
    pub count: u64,
    pub bound: i64,
    pub in_hypothesis: bool,
    pub extremal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub q1_class: String,
    pub q1: String,
    pub q2_index: u64,
    pub q2: String,
    pub count: u64,
}

/// Mergeable per-class tallies; only in-hypothesis pairs feed the maxima.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassStats {
    pub pairs_checked: u64,
    pub in_hypothesis: u64,
    pub max_count: Option<u64>,
    pub max_witness: Option<Witness>,
    /// Largest count over all pairs, including out-of-hypothesis ones.
    pub max_count_any: Option<u64>,
    pub extremal_count: u64,
    pub extremal: Vec<Witness>,
    pub exceed_count: u64,
    pub exceeding: Vec<Witness>,
}

impl ClassStats {
    /// `self` followed by `later`; keeps the earliest witnesses.
    pub fn merge(&mut self, later: &ClassStats, cap: usize) {
        self.pairs_checked += later.pairs_checked;
        self.in_hypothesis += later.in_hypothesis;
        if later.max_count > self.max_count {
            self.max_count = later.max_count;
            self.max_witness = later.max_witness.clone();
        }
        self.max_count_any = self.max_count_any.max(later.max_count_any);
        self.extremal_count += later.extremal_count;
        self.exceed_count += later.exceed_count;
        for w in &later.extremal {
            if self.extremal.len() < cap {
                self.extremal.push(w.clone());
            }
        }
        for w in &later.exceeding {
            if self.exceeding.len() < cap {
                self.exceeding.push(w.clone());
            }
        }
    }
}

/// Per-class result of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub q1_class: String,
    pub q1: String,
    pub rank: usize,
    pub qtype: QuadricType,
    pub q1_points: u64,
    pub bound: i64,
    pub stats: ClassStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub n: usize,
    pub p: u32,
    pub m: u32,
    pub q: u32,
    pub mode: SweepMode,
    pub theorem_bound: i64,
    pub pairs_checked: u64,
    pub in_hypothesis: u64,
    pub max_in_hypothesis: Option<u64>,
    pub bound_attained: bool,
    pub extremal_witnesses: Vec<Witness>,
    pub violations: Vec<Witness>,
    pub classes: Vec<ClassSummary>,
    pub resumed_chunks: u64,
}

/// `(rank, type)` class label used in records.
pub fn class_id(rank: usize, qtype: QuadricType) -> String {
    format!("r{rank}-{qtype}")
}

/// One canonical form per `(rank, type)`, rank `1..=n+1`.
pub fn enumerate_canonical_q1(n: usize, field: &FieldSpec) -> Result<Vec<QuadraticForm>> {
    let mut out = Vec::new();
    for r in 1..=n + 1 {
        for &t in QuadricType::for_rank(r) {
            out.push(canonical_form(r, t, n, field)?);
        }
    }
    Ok(out)
}

struct ClassPlan {
    id: String,
    form: QuadraticForm,
    rank: usize,
    qtype: QuadricType,
    bound: i128,
    points: Vec<usize>,
    /// For each hyperplane contained in `Q1`, the positions (into `points`)
    /// of its points.
    hyperplanes: Vec<Vec<usize>>,
}

impl ClassPlan {
    fn new(id: String, form: QuadraticForm, bound: i128, table: &PointTable) -> Result<Self> {
        let form = form.normalized();
        let prof = classify(&form)?;
        let points = form.zero_indices(table)?;
        let mut hyperplanes: Vec<Vec<usize>> = Vec::new();
        if let Some((a, b)) = split_linear_factors(&form) {
            let mut ls = vec![a.normalized()];
            if !b.same_hyperplane(&a) {
                ls.push(b.normalized());
            }
            for l in ls {
                hyperplanes.push(
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, &i)| l.evaluate(table.point(i).coords()).is_zero())
                        .map(|(pos, _)| pos)
                        .collect(),
                );
            }
        }
        Ok(ClassPlan {
            id,
            form,
            rank: prof.rank,
            qtype: prof.qtype,
            bound,
            points,
            hyperplanes,
        })
    }
}

#[derive(Clone, Copy, Debug)]
struct Chunk {
    id: u64,
    class: usize,
    start: u64,
    len: u64,
}

struct ChunkOutput {
    stats: ClassStats,
    records: Vec<u8>,
}

struct Sweep<'a> {
    table: &'a PointTable,
    space: Q2Space,
    plans: Vec<ClassPlan>,
    mode: SweepMode,
    write_records: bool,
    max_witnesses: usize,
}

impl Sweep<'_> {
    fn chunks(&self, chunk_size: u64) -> Vec<Chunk> {
        let per_class = match self.mode {
            SweepMode::Exhaustive => self.space.len(),
            SweepMode::Random { samples, .. } => samples,
        };
        let size = chunk_size.max(1);
        let mut out = Vec::new();
        for class in 0..self.plans.len() {
            let mut start = 0;
            while start < per_class {
                let len = size.min(per_class - start);
                out.push(Chunk {
                    id: out.len() as u64,
                    class,
                    start,
                    len,
                });
                start += len;
            }
        }
        out
    }

    fn run_chunk(&self, chunk: Chunk) -> ChunkOutput {
        let plan = &self.plans[chunk.class];
        let field = self.table.field();
        let mons: Vec<&[Elem]> = plan.points.iter().map(|&i| self.table.monomials(i)).collect();
        let q1_norm = plan.form.coeffs();
        let mut stats = ClassStats::default();
        let mut records = Vec::new();
        let mut vals = vec![Elem::ZERO; mons.len()];

        let mut visit = |idx: u64, coeffs: &[Elem], vals: &[Elem]| {
            let count = vals.iter().filter(|v| v.is_zero()).count() as u64;
            let shares_hyperplane = plan
                .hyperplanes
                .iter()
                .any(|pos| pos.iter().all(|&j| vals[j].is_zero()));
            let in_hyp = !shares_hyperplane && coeffs != q1_norm;
            let extremal = in_hyp && count as i128 == plan.bound;
            stats.pairs_checked += 1;
            stats.max_count_any = stats.max_count_any.max(Some(count));
            let witness = || Witness {
                q1_class: plan.id.clone(),
                q1: plan.form.to_string(),
                q2_index: idx,
                q2: QuadraticForm::from_raw(self.table.n(), field, coeffs.to_vec()).to_string(),
                count,
            };
            if in_hyp {
                stats.in_hypothesis += 1;
                if Some(count) > stats.max_count {
                    stats.max_count = Some(count);
                    stats.max_witness = Some(witness());
                }
                if extremal {
                    stats.extremal_count += 1;
                    if stats.extremal.len() < self.max_witnesses {
                        stats.extremal.push(witness());
                    }
                }
                if count as i128 > plan.bound {
                    stats.exceed_count += 1;
                    if stats.exceeding.len() < self.max_witnesses {
                        stats.exceeding.push(witness());
                    }
                }
            }
            if self.write_records {
                let rec = CensusRecord {
                    q1_class: plan.id.clone(),
                    q2: coeffs.iter().map(|&c| field.repr(c)).collect(),
                    count,
                    bound: plan.bound as i64,
                    in_hypothesis: in_hyp,
                    extremal,
                };
                serde_json::to_writer(&mut records, &rec).expect("in-memory write");
                records.push(b'\n');
            }
        };

        let fill = |coeffs: &[Elem], vals: &mut [Elem]| {
            for (v, m) in vals.iter_mut().zip(&mons) {
                *v = field.dot(coeffs, m);
            }
        };

        match self.mode {
            SweepMode::Exhaustive => {
                let mut cursor = Q2Cursor::new(&self.space, chunk.start);
                fill(&cursor.coeffs, &mut vals);
                let mut changed = Vec::with_capacity(8);
                for step in 0..chunk.len {
                    visit(chunk.start + step, &cursor.coeffs, &vals);
                    if step + 1 == chunk.len {
                        break;
                    }
                    cursor.advance(&mut changed);
                    for &(pos, old, new) in &changed {
                        let delta = field.sub(new, old);
                        for (v, m) in vals.iter_mut().zip(&mons) {
                            *v = field.add(*v, field.mul(delta, m[pos]));
                        }
                    }
                }
            }
            SweepMode::Random { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk.id);
                for _ in 0..chunk.len {
                    let idx = rng.gen_range(0..self.space.len());
                    let coeffs = self.space.decode(idx);
                    fill(&coeffs, &mut vals);
                    visit(idx, &coeffs, &vals);
                }
            }
        }
        ChunkOutput { stats, records }
    }
}

#[derive(Serialize, Deserialize)]
struct CheckpointLine {
    fingerprint: String,
    chunk: u64,
    class: usize,
    offset: u64,
    stats: ClassStats,
}

struct SweepOutcome {
    stats: Vec<ClassStats>,
    resumed: u64,
}

fn fingerprint(cfg: &CensusConfig, plans: &[ClassPlan]) -> String {
    let ids: Vec<String> = plans.iter().map(|p| format!("{}:{}", p.id, p.form)).collect();
    format!(
        "n={};p={};m={};mode={};chunk={};q1={}",
        cfg.n,
        cfg.field.p(),
        cfg.field.m(),
        serde_json::to_string(&cfg.mode).unwrap(),
        cfg.chunk_size,
        ids.join(",")
    )
}

fn execute(cfg: &CensusConfig, sweep: &Sweep<'_>, stop_on_exceed: bool) -> Result<SweepOutcome> {
    let chunks = sweep.chunks(cfg.chunk_size);
    let fp = fingerprint(cfg, &sweep.plans);
    let mut stats = vec![ClassStats::default(); sweep.plans.len()];

    // resume from checkpoint
    let mut done = 0usize;
    let mut offset = 0u64;
    if let Some(path) = &cfg.checkpoint {
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                let Ok(entry) = serde_json::from_str::<CheckpointLine>(&line) else {
                    break;
                };
                if entry.fingerprint != fp {
                    return Err(Error::InvalidArgument(format!(
                        "checkpoint {} belongs to a different configuration",
                        path.display()
                    )));
                }
                if entry.chunk != done as u64 {
                    break;
                }
                stats[entry.class].merge(&entry.stats, cfg.max_witnesses);
                offset = entry.offset;
                done += 1;
            }
        }
    }
    let resumed = done as u64;

    let mut out = match &cfg.out {
        Some(path) => {
            let file = OpenOptions::new().create(true).write(true).truncate(false).open(path)?;
            file.set_len(offset)?;
            let mut w = BufWriter::new(file);
            std::io::Seek::seek(&mut w, std::io::SeekFrom::Start(offset))?;
            Some(w)
        }
        None => None,
    };
    let mut ckpt = match &cfg.checkpoint {
        Some(path) => {
            let file = OpenOptions::new().create(true).append(true).open(path)?;
            if done == 0 {
                file.set_len(0)?;
            }
            Some(BufWriter::new(file))
        }
        None => None,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let batch = pool.current_num_threads().max(1) * 4;

    let mut idx = done;
    while idx < chunks.len() {
        let end = (idx + batch).min(chunks.len());
        let outputs: Vec<ChunkOutput> =
            pool.install(|| chunks[idx..end].par_iter().map(|&c| sweep.run_chunk(c)).collect());
        for (chunk, output) in chunks[idx..end].iter().zip(outputs) {
            stats[chunk.class].merge(&output.stats, cfg.max_witnesses);
            if let Some(w) = out.as_mut() {
                w.write_all(&output.records)?;
                offset += output.records.len() as u64;
            }
            if stop_on_exceed && output.stats.exceed_count > 0 {
                if let Some(w) = out.as_mut() {
                    w.flush()?;
                }
                let wit = &output.stats.exceeding[0];
                let repro = serde_json::json!({
                    "p": cfg.field.p(),
                    "m": cfg.field.m(),
                    "n": cfg.n,
                    "q1": wit.q1,
                    "q2": wit.q2,
                    "count": wit.count,
                    "bound": sweep.plans[chunk.class].bound as i64,
                });
                return Err(Error::Violation(repro.to_string()));
            }
            if let Some(c) = ckpt.as_mut() {
                if let Some(w) = out.as_mut() {
                    w.flush()?;
                }
                let line = CheckpointLine {
                    fingerprint: fp.clone(),
                    chunk: chunk.id,
                    class: chunk.class,
                    offset,
                    stats: output.stats,
                };
                serde_json::to_writer(&mut *c, &line)?;
                c.write_all(b"\n")?;
                c.flush()?;
            }
        }
        idx = end;
    }
    if let Some(w) = out.as_mut() {
        w.flush()?;
    }
    Ok(SweepOutcome { stats, resumed })
}

fn check_work(cfg: &CensusConfig, space: &Q2Space, classes: usize) -> Result<()> {
    let per_class = match cfg.mode {
        SweepMode::Exhaustive => space.len() as u128,
        SweepMode::Random { samples, .. } => samples as u128,
    };
    let work = per_class * classes as u128 * pi(cfg.n as i64, cfg.field.q() as u64);
    if work > cfg.work_cap {
        return Err(Error::CapExceeded {
            what: "census work (forms x points)",
            value: work,
            cap: cfg.work_cap,
        });
    }
    Ok(())
}

fn select_q1(cfg: &CensusConfig) -> Result<Vec<(String, QuadraticForm)>> {
    let canonical = || -> Result<Vec<(String, QuadraticForm)>> {
        enumerate_canonical_q1(cfg.n, &cfg.field)?
            .into_iter()
            .map(|f| {
                let p = classify(&f)?;
                Ok((class_id(p.rank, p.qtype), f))
            })
            .collect()
    };
    Ok(match &cfg.q1 {
        Q1Selector::AllCanonical => canonical()?,
        Q1Selector::Explicit(f) => {
            if f.n() != cfg.n || f.field() != &cfg.field {
                return Err(Error::FieldMismatch);
            }
            let p = classify(f)?;
            vec![(format!("explicit-{}", class_id(p.rank, p.qtype)), f.clone())]
        }
        Q1Selector::Filter { rank, qtype } => {
            let mut out = Vec::new();
            for (id, f) in canonical()? {
                let p = classify(&f)?;
                if rank.is_none_or(|r| r == p.rank) && qtype.is_none_or(|t| t == p.qtype) {
                    out.push((id, f));
                }
            }
            if out.is_empty() {
                return Err(Error::InvalidArgument("no Q1 class matches the filter".into()));
            }
            out
        }
    })
}

fn summarize(plans: &[ClassPlan], stats: Vec<ClassStats>) -> Vec<ClassSummary> {
    plans
        .iter()
        .zip(stats)
        .map(|(p, s)| ClassSummary {
            q1_class: p.id.clone(),
            q1: p.form.to_string(),
            rank: p.rank,
            qtype: p.qtype,
            q1_points: p.points.len() as u64,
            bound: p.bound as i64,
            stats: s,
        })
        .collect()
}

/// Sweeps `Q1` classes against `Q2` forms and checks the no-common-hyperplane
/// bound `4q^{n-2} + pi_{n-3}` on every in-hypothesis pair.
///
/// A pair is in hypothesis when the forms are not proportional and share no
/// linear factor. An in-hypothesis pair above the bound aborts the run with
/// [`Error::Violation`] carrying a reproducer.
pub fn run_census(cfg: &CensusConfig) -> Result<CensusSummary> {
    if cfg.n < 2 {
        return Err(Error::InvalidArgument("census needs n >= 2".into()));
    }
    let q = cfg.field.q();
    let bound = bounds::edoukou_bound(cfg.n as i64, q as u64)?;
    let table = PointTable::new(cfg.n, &cfg.field)?;
    let space = Q2Space::new(cfg.n, &cfg.field)?;
    let selected = select_q1(cfg)?;
    check_work(cfg, &space, selected.len())?;
    let plans = selected
        .into_iter()
        .map(|(id, f)| ClassPlan::new(id, f, bound, &table))
        .collect::<Result<Vec<_>>>()?;
    let sweep = Sweep {
        table: &table,
        space,
        plans,
        mode: cfg.mode,
        write_records: cfg.out.is_some(),
        max_witnesses: cfg.max_witnesses,
    };
    let outcome = execute(cfg, &sweep, true)?;
    let classes = summarize(&sweep.plans, outcome.stats);

    let mut extremal = Vec::new();
    let mut violations = Vec::new();
    for c in &classes {
        extremal.extend(c.stats.extremal.iter().cloned());
        violations.extend(c.stats.exceeding.iter().cloned());
    }
    let max_in = classes.iter().filter_map(|c| c.stats.max_count).max();
    Ok(CensusSummary {
        n: cfg.n,
        p: cfg.field.p(),
        m: cfg.field.m(),
        q,
        mode: cfg.mode,
        theorem_bound: bound as i64,
        pairs_checked: classes.iter().map(|c| c.stats.pairs_checked).sum(),
        in_hypothesis: classes.iter().map(|c| c.stats.in_hypothesis).sum(),
        max_in_hypothesis: max_in,
        bound_attained: max_in.is_some_and(|m| m as i128 == bound),
        extremal_witnesses: extremal,
        violations,
        classes,
        resumed_chunks: outcome.resumed,
    })
}

/// Result of probing the degenerate-quadric conjecture for one rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjecture1Report {
    pub n: usize,
    pub q: u32,
    pub rank: usize,
    pub mode: SweepMode,
    pub conjectured_bound: i64,
    pub max_observed: Option<u64>,
    pub classes: Vec<ClassSummary>,
    /// Pairs above the conjectured bound; none are expected.
    pub counterexamples: Vec<Witness>,
    pub note: String,
}

impl Conjecture1Report {
    pub fn holds_on_sample(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Sweeps every `Q2` (or `samples` random ones) against the canonical rank-`r`
/// quadrics and compares with `EH(r-1, q) q^{n-r+1} + pi_{n-r}`.
///
/// Pairs with `Q2` proportional to `Q1` are excluded. Exceeding pairs are
/// reported, never raised as errors.
pub fn probe_conjecture1(
    n: usize,
    field: &FieldSpec,
    r: usize,
    samples: Option<u64>,
    seed: u64,
    workers: usize,
) -> Result<Conjecture1Report> {
    if r < 4 {
        return Err(Error::InvalidArgument(format!("conjecture probe needs r >= 4, got {r}")));
    }
    let bound = bounds::conj1_bound(n as i64, r as i64, field.q() as u64)?;
    let mut cfg = CensusConfig::new(n, field);
    cfg.q1 = Q1Selector::Filter {
        rank: Some(r),
        qtype: None,
    };
    cfg.mode = match samples {
        None => SweepMode::Exhaustive,
        Some(s) => SweepMode::Random { samples: s, seed },
    };
    cfg.workers = workers;
    let table = PointTable::new(n, field)?;
    let space = Q2Space::new(n, field)?;
    let selected = select_q1(&cfg)?;
    check_work(&cfg, &space, selected.len())?;
    let plans = selected
        .into_iter()
        .map(|(id, f)| ClassPlan::new(id, f, bound, &table))
        .collect::<Result<Vec<_>>>()?;
    let sweep = Sweep {
        table: &table,
        space,
        plans,
        mode: cfg.mode,
        write_records: false,
        max_witnesses: cfg.max_witnesses,
    };
    let outcome = execute(&cfg, &sweep, false)?;
    let classes = summarize(&sweep.plans, outcome.stats);
    let counterexamples: Vec<Witness> = classes
        .iter()
        .flat_map(|c| c.stats.exceeding.iter().cloned())
        .collect();
    let note = if counterexamples.is_empty() {
        "no pair above the conjectured bound in the examined range".to_string()
    } else {
        format!(
            "COUNTEREXAMPLE CANDIDATES: {} pair(s) exceed the conjectured bound",
            classes.iter().map(|c| c.stats.exceed_count).sum::<u64>()
        )
    };
    Ok(Conjecture1Report {
        n,
        q: field.q(),
        rank: r,
        mode: cfg.mode,
        conjectured_bound: bound as i64,
        max_observed: classes.iter().filter_map(|c| c.stats.max_count).max(),
        classes,
        counterexamples,
        note,
    })
}
