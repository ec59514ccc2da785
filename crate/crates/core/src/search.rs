//! Randomized hill climbing for functions whose restrictions to every
//! k-flat are good, i.e. `alpha(f, k) >= d` (degree) or `> m`
//! (nonlinearity).
//!
//! A step flips one or two random points and keeps the change unless the
//! number of bad flats went up. Only flats through a flipped point are
//! re-evaluated; their old badness comes from a per-flat bit cache.

use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{Evaluator, Metric};
use crate::boolfun::{used_mask, word_count, TruthTable};
use crate::error::{Error, Result};
use crate::flat::{gather, FlatSpace, DEFAULT_BUDGET};

/// Generator used for every restart; recorded in each outcome.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.3, seed_from_u64 + stream = restart index)";

/// Default memory allowed for the point-to-flat incidence table.
pub const DEFAULT_INDEX_MEMORY: u64 = 512 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IncidenceMode {
    /// Index when it fits the memory budget, stream otherwise.
    #[default]
    Auto,
    Indexed,
    Streaming,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n: u32,
    pub k: u32,
    pub metric: Metric,
    pub threshold: u64,
    pub steps: u64,
    pub restarts: u64,
    pub seed: u64,
    /// Probability of flipping a single point; otherwise two.
    pub p_one: f64,
    pub budget: u64,
    pub index_memory: u64,
    pub incidence: IncidenceMode,
    pub trace: bool,
}

impl SearchConfig {
    pub fn new(n: u32, k: u32, metric: Metric, threshold: u64, seed: u64) -> Self {
        Self {
            n,
            k,
            metric,
            threshold,
            steps: 50_000,
            restarts: 20,
            seed,
            p_one: 0.5,
            budget: DEFAULT_BUDGET,
            index_memory: DEFAULT_INDEX_MEMORY,
            incidence: IncidenceMode::Auto,
            trace: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1 <= self.k && self.k <= self.n) {
            return Err(Error::invalid(format!("need 1 <= k <= n, got n = {}, k = {}", self.n, self.k)));
        }
        let max = match self.metric {
            Metric::Degree => self.k as u64,
            Metric::Nonlinearity => (1u64 << (self.k - 1)).saturating_sub(1),
        };
        if self.threshold > max {
            return Err(Error::invalid(format!(
                "threshold {} is out of range for {} on {}-flats (at most {max})",
                self.threshold, self.metric, self.k
            )));
        }
        if self.steps == 0 || self.restarts == 0 {
            return Err(Error::invalid("steps and restarts must be positive"));
        }
        if !(0.0..=1.0).contains(&self.p_one) {
            return Err(Error::invalid("p_one must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// The k-flats of `F2^n` laid out for point updates: bases per subspace
/// and, when indexed, the offset index of the flat through each point.
#[derive(Debug)]
pub struct FlatLayout {
    n: u32,
    k: u32,
    bases: Vec<u32>,
    pivot_masks: Vec<u32>,
    subspaces: usize,
    // (offset index, reduced offset) per (point, subspace)
    incidence: Option<Vec<(u32, u32)>>,
    space: FlatSpace,
}

impl FlatLayout {
    pub fn new(n: u32, k: u32, budget: u64, index_memory: u64, mode: IncidenceMode) -> Result<Self> {
        let space = FlatSpace::new(n, k, budget)?;
        let subspaces = space.subspace_count() as usize;
        let mut bases = Vec::with_capacity(subspaces * k as usize);
        let mut pivot_masks = Vec::with_capacity(subspaces);
        space.for_each_subspace(0..space.subspace_count(), |_, basis, _, _| {
            bases.extend_from_slice(basis);
            pivot_masks.push(basis.iter().map(|b| b & b.wrapping_neg()).fold(0, |a, p| a | p));
        });
        let mut layout = Self {
            n,
            k,
            bases,
            pivot_masks,
            subspaces,
            incidence: None,
            space,
        };
        let bytes = (1u64 << n).saturating_mul(subspaces as u64).saturating_mul(8);
        let index = match mode {
            IncidenceMode::Indexed => true,
            IncidenceMode::Streaming => false,
            IncidenceMode::Auto => bytes <= index_memory,
        };
        if index {
            let mut table = Vec::with_capacity((1usize << n) * subspaces);
            for p in 0..1u32 << n {
                table.extend((0..subspaces).map(|s| layout.offset_index(s, p)));
            }
            layout.incidence = Some(table);
        }
        Ok(layout)
    }

    pub fn is_indexed(&self) -> bool {
        self.incidence.is_some()
    }

    pub fn flat_count(&self) -> u64 {
        self.space.flat_count()
    }

    fn basis(&self, s: usize) -> &[u32] {
        let k = self.k as usize;
        &self.bases[s * k..(s + 1) * k]
    }

    /// Offset index within subspace `s` and canonical offset of the flat
    /// containing `p`.
    fn offset_index(&self, s: usize, p: u32) -> (u32, u32) {
        let pivots = self.pivot_masks[s];
        let mut reduced = p;
        for &b in self.basis(s) {
            if reduced & b & b.wrapping_neg() != 0 {
                reduced ^= b;
            }
        }
        let mut out = 0;
        let mut t = 0;
        for c in 0..self.n {
            if pivots >> c & 1 == 0 {
                out |= (reduced >> c & 1) << t;
                t += 1;
            }
        }
        (out, reduced)
    }

    /// Global index and canonical offset of the flat through `p` in
    /// subspace `s`.
    fn flat_through(&self, s: usize, p: u32) -> (u64, u32) {
        let (o, offset) = match &self.incidence {
            Some(table) => table[p as usize * self.subspaces + s],
            None => self.offset_index(s, p),
        };
        (((s as u64) << (self.n - self.k)) | o as u64, offset)
    }
}

/// Current function of one restart plus the exact badness of every flat.
#[derive(Clone, Debug)]
pub struct SearchState {
    layout: Arc<FlatLayout>,
    metric: Metric,
    threshold: u64,
    words: Vec<u64>,
    bad: Vec<u64>,
    objective: u64,
}

/// Result of one proposed step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepResult {
    pub accepted: bool,
    pub objective: u64,
}

struct Scratch {
    eval: Evaluator,
    span: Vec<u32>,
    buf: Vec<u64>,
    pending: Vec<(u64, bool)>,
}

impl Scratch {
    fn new(k: u32, metric: Metric) -> Self {
        Self {
            eval: Evaluator::new(k, metric, true),
            span: vec![0; 1 << k],
            buf: vec![0; word_count(k)],
            pending: Vec::new(),
        }
    }
}

impl SearchState {
    pub fn new(layout: Arc<FlatLayout>, metric: Metric, threshold: u64, tt: &TruthTable) -> Result<Self> {
        if tt.n() != layout.n {
            return Err(Error::DimensionMismatch {
                expected: layout.n,
                actual: tt.n(),
            });
        }
        let mut state = Self {
            metric,
            threshold,
            words: tt.words().to_vec(),
            bad: vec![0; layout.flat_count().div_ceil(64) as usize],
            objective: 0,
            layout,
        };
        state.objective = state.rebuild();
        Ok(state)
    }

    fn rebuild(&mut self) -> u64 {
        let layout = Arc::clone(&self.layout);
        let mut eval = Evaluator::new(layout.k, self.metric, true);
        let mut buf = vec![0u64; word_count(layout.k)];
        let per = layout.space.offsets_per_subspace();
        let mut count = 0;
        self.bad.iter_mut().for_each(|w| *w = 0);
        layout
            .space
            .for_each_subspace(0..layout.space.subspace_count(), |s, _, span, offsets| {
                for (o, &off) in offsets.iter().enumerate() {
                    gather(&self.words, off, span, &mut buf);
                    if self.metric.is_bad(eval.value(&buf), self.threshold) {
                        let id = s * per + o as u64;
                        self.bad[(id >> 6) as usize] |= 1 << (id & 63);
                        count += 1;
                    }
                }
            });
        count
    }

    pub fn objective(&self) -> u64 {
        self.objective
    }

    /// Counts bad flats from scratch, ignoring the cache.
    pub fn recompute_objective(&self) -> u64 {
        let mut copy = self.clone();
        copy.rebuild()
    }

    pub fn function(&self) -> TruthTable {
        TruthTable::from_words(self.layout.n, self.words.clone()).expect("state words are well formed")
    }

    pub fn bad_cache(&self) -> &[u64] {
        &self.bad
    }

    pub fn is_bad(&self, flat_index: u64) -> bool {
        self.bad[(flat_index >> 6) as usize] >> (flat_index & 63) & 1 == 1
    }

    fn flip_bits(&mut self, points: &[u32]) {
        for &p in points {
            self.words[(p >> 6) as usize] ^= 1 << (p & 63);
        }
    }

    fn propose(&mut self, points: &[u32], scratch: &mut Scratch) -> i64 {
        let layout = Arc::clone(&self.layout);
        self.flip_bits(points);
        scratch.pending.clear();
        let mut delta = 0i64;
        for s in 0..layout.subspaces {
            let basis = layout.basis(s);
            let mut flats = [(u64::MAX, 0u32); 2];
            for (slot, &p) in points.iter().enumerate() {
                let f = layout.flat_through(s, p);
                if slot == 0 || flats[0].0 != f.0 {
                    flats[slot] = f;
                }
            }
            let mut span_ready = false;
            for &(id, offset) in flats.iter().filter(|f| f.0 != u64::MAX) {
                if !span_ready {
                    for y in 1..scratch.span.len() {
                        scratch.span[y] = scratch.span[y & (y - 1)] ^ basis[y.trailing_zeros() as usize];
                    }
                    span_ready = true;
                }
                gather(&self.words, offset, &scratch.span, &mut scratch.buf);
                let now = self.metric.is_bad(scratch.eval.value(&scratch.buf), self.threshold);
                let before = self.is_bad(id);
                if now != before {
                    delta += if now { 1 } else { -1 };
                    scratch.pending.push((id, now));
                }
            }
        }
        delta
    }

    fn commit(&mut self, delta: i64, scratch: &Scratch) {
        for &(id, now) in &scratch.pending {
            let bit = 1u64 << (id & 63);
            if now {
                self.bad[(id >> 6) as usize] |= bit;
            } else {
                self.bad[(id >> 6) as usize] &= !bit;
            }
        }
        self.objective = (self.objective as i64 + delta) as u64;
    }

    /// Flips the given distinct points, updating the cache. The change is
    /// kept unconditionally.
    pub fn apply_flips(&mut self, points: &[u32]) -> Result<u64> {
        self.check_points(points)?;
        let mut scratch = Scratch::new(self.layout.k, self.metric);
        let delta = self.propose(points, &mut scratch);
        self.commit(delta, &scratch);
        Ok(self.objective)
    }

    /// Proposes flipping `points`; keeps the change iff the objective did
    /// not increase, otherwise restores the previous state exactly.
    pub fn try_flips(&mut self, points: &[u32]) -> Result<StepResult> {
        self.check_points(points)?;
        let mut scratch = Scratch::new(self.layout.k, self.metric);
        Ok(self.try_flips_with(points, &mut scratch))
    }

    fn try_flips_with(&mut self, points: &[u32], scratch: &mut Scratch) -> StepResult {
        let delta = self.propose(points, scratch);
        if delta <= 0 {
            self.commit(delta, scratch);
            StepResult {
                accepted: true,
                objective: self.objective,
            }
        } else {
            self.flip_bits(points);
            StepResult {
                accepted: false,
                objective: self.objective,
            }
        }
    }

    fn check_points(&self, points: &[u32]) -> Result<()> {
        if points.is_empty() || points.len() > 2 || (points.len() == 2 && points[0] == points[1]) {
            return Err(Error::invalid("expected one or two distinct points"));
        }
        for &p in points {
            if (p as u64) >= 1u64 << self.layout.n {
                return Err(Error::IndexOutOfRange {
                    index: p as u64,
                    n: self.layout.n,
                });
            }
        }
        Ok(())
    }

    /// One random step: one point with probability `p_one`, else two
    /// distinct points.
    pub fn step(&mut self, rng: &mut impl Rng, p_one: f64) -> StepResult {
        let mut scratch = Scratch::new(self.layout.k, self.metric);
        self.step_with(rng, p_one, &mut scratch)
    }

    fn step_with(&mut self, rng: &mut impl Rng, p_one: f64, scratch: &mut Scratch) -> StepResult {
        let size = 1u32 << self.layout.n;
        let p1 = rng.gen_range(0..size);
        if size == 1 || rng.gen_bool(p_one) {
            return self.try_flips_with(&[p1], scratch);
        }
        let mut p2 = rng.gen_range(0..size - 1);
        if p2 >= p1 {
            p2 += 1;
        }
        self.try_flips_with(&[p1, p2], scratch)
    }
}

/// Number of bad flats of `tt` under the configuration.
pub fn objective(tt: &TruthTable, cfg: &SearchConfig) -> Result<u64> {
    cfg.validate()?;
    Ok(crate::analysis::bad_flat_count_with(
        tt,
        cfg.k,
        cfg.metric,
        cfg.threshold,
        crate::analysis::ScanOptions {
            budget: cfg.budget,
            parity_fast_path: true,
        },
    )?
    .bad_count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Found,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestartReport {
    pub restart: u64,
    pub best_objective: u64,
    pub final_objective: u64,
    pub steps: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    #[serde(serialize_with = "serialize_tt")]
    pub function: TruthTable,
    pub bad_flats: u64,
    pub restarts_used: u64,
    pub steps_used: u64,
    pub rng: String,
    pub indexed: bool,
    pub restarts: Vec<RestartReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<u64>>,
}

fn serialize_tt<S: serde::Serializer>(tt: &TruthTable, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&tt.to_hex())
}

struct RestartRun {
    report: RestartReport,
    best: TruthTable,
    trace: Option<Vec<u64>>,
}

fn random_function(n: u32, rng: &mut impl RngCore) -> TruthTable {
    let mut words: Vec<u64> = (0..word_count(n)).map(|_| rng.next_u64()).collect();
    let last = words.len() - 1;
    words[last] &= used_mask(n);
    TruthTable::from_words(n, words).expect("masked words are well formed")
}

fn run_restart(layout: &Arc<FlatLayout>, cfg: &SearchConfig, restart: u64) -> Result<RestartRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart);
    let start = random_function(cfg.n, &mut rng);
    let mut state = SearchState::new(Arc::clone(layout), cfg.metric, cfg.threshold, &start)?;
    let mut scratch = Scratch::new(cfg.k, cfg.metric);
    let mut trace = cfg.trace.then(|| vec![state.objective()]);
    let mut best = (state.objective(), state.function());
    let mut steps = 0;
    while state.objective() > 0 && steps < cfg.steps {
        let r = state.step_with(&mut rng, cfg.p_one, &mut scratch);
        steps += 1;
        if let Some(t) = trace.as_mut() {
            t.push(r.objective);
        }
        if r.objective < best.0 {
            best = (r.objective, state.function());
        }
    }
    Ok(RestartRun {
        report: RestartReport {
            restart,
            best_objective: best.0,
            final_objective: state.objective(),
            steps,
        },
        best: best.1,
        trace,
    })
}

/// Runs up to `restarts` independent climbs of up to `steps` steps. Climbs
/// run in parallel batches; the result is the first success by restart
/// index, so it depends only on the configuration.
pub fn search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let layout = Arc::new(FlatLayout::new(
        cfg.n,
        cfg.k,
        cfg.budget,
        cfg.index_memory,
        cfg.incidence,
    )?);
    let batch = rayon::current_num_threads().max(1) as u64;
    let mut runs: Vec<RestartRun> = Vec::new();
    let mut next = 0;
    while next < cfg.restarts {
        let end = (next + batch).min(cfg.restarts);
        let done: Vec<RestartRun> = (next..end)
            .into_par_iter()
            .map(|r| run_restart(&layout, cfg, r))
            .collect::<Result<_>>()?;
        next = end;
        log::debug!(
            "restarts {}..{}: best objectives {:?}",
            done[0].report.restart,
            end,
            done.iter().map(|r| r.report.best_objective).collect::<Vec<_>>()
        );
        runs.extend(done);
        if let Some(pos) = runs.iter().position(|r| r.report.best_objective == 0) {
            runs.truncate(pos + 1);
            break;
        }
    }
    let found = runs.last().is_some_and(|r| r.report.best_objective == 0);
    let chosen = if found {
        runs.len() - 1
    } else {
        // lowest objective, earliest restart on ties
        (0..runs.len()).min_by_key(|&i| runs[i].report.best_objective).unwrap_or(0)
    };
    let steps_used = runs.iter().map(|r| r.report.steps).sum();
    let restarts_used = runs.len() as u64;
    let function = runs[chosen].best.clone();
    let bad_flats = runs[chosen].report.best_objective;
    let trace = runs[chosen].trace.take();
    Ok(SearchOutcome {
        status: if found { SearchStatus::Found } else { SearchStatus::Exhausted },
        function,
        bad_flats,
        restarts_used,
        steps_used,
        rng: RNG_ALGORITHM.to_string(),
        indexed: layout.is_indexed(),
        restarts: runs.into_iter().map(|r| r.report).collect(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{alpha, bad_flat_count};
    use crate::corpus::corpus;

    fn layout(n: u32, k: u32, mode: IncidenceMode) -> Arc<FlatLayout> {
        Arc::new(FlatLayout::new(n, k, DEFAULT_BUDGET, DEFAULT_INDEX_MEMORY, mode).unwrap())
    }

    #[test]
    fn objective_examples() {
        let entries = corpus();
        let k3 = entries.iter().find(|e| e.id == "conj_k3").unwrap();
        let cfg = SearchConfig::new(5, 3, Metric::Degree, 2, 0);
        assert_eq!(objective(&k3.truth_table(), &cfg).unwrap(), 15);
        let zero = TruthTable::zero(5).unwrap();
        assert_eq!(objective(&zero, &cfg).unwrap(), 620);
        let f74 = entries.iter().find(|e| e.id == "f_7_4").unwrap();
        let cfg = SearchConfig::new(7, 4, Metric::Degree, 2, 0);
        assert_eq!(objective(&f74.truth_table(), &cfg).unwrap(), 0);
    }

    #[test]
    fn config_validation() {
        let mut cfg = SearchConfig::new(4, 5, Metric::Degree, 1, 0);
        assert!(cfg.validate().is_err());
        cfg.k = 3;
        assert!(cfg.validate().is_ok());
        cfg.threshold = 4;
        assert!(cfg.validate().is_err());
        cfg.threshold = 1;
        cfg.steps = 0;
        assert!(cfg.validate().is_err());
        let nl = SearchConfig::new(6, 4, Metric::Nonlinearity, 8, 0);
        assert!(nl.validate().is_err());
    }

    #[test]
    fn cache_matches_scratch_objective() {
        for mode in [IncidenceMode::Indexed, IncidenceMode::Streaming] {
            for metric in [Metric::Degree, Metric::Nonlinearity] {
                let threshold = if metric == Metric::Degree { 2 } else { 1 };
                let l = layout(5, 3, mode);
                let mut rng = ChaCha8Rng::seed_from_u64(3);
                let tt = random_function(5, &mut rng);
                let mut state = SearchState::new(l, metric, threshold, &tt).unwrap();
                assert_eq!(state.objective(), bad_flat_count(&tt, 3, metric, threshold).unwrap().bad_count);
                for i in 0..600 {
                    let r = state.step(&mut rng, 0.5);
                    assert_eq!(r.objective, state.objective());
                    if i % 100 == 0 {
                        assert_eq!(state.objective(), state.recompute_objective());
                        let fresh = SearchState::new(Arc::clone(&state.layout), metric, threshold, &state.function())
                            .unwrap();
                        assert_eq!(fresh.bad_cache(), state.bad_cache());
                    }
                }
            }
        }
    }

    #[test]
    fn flip_and_flip_back_restores_everything() {
        let l = layout(6, 3, IncidenceMode::Auto);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let tt = random_function(6, &mut rng);
        let mut state = SearchState::new(l, Metric::Degree, 2, &tt).unwrap();
        let before = state.clone();
        state.apply_flips(&[5, 40]).unwrap();
        assert_eq!(state.objective(), state.recompute_objective());
        state.apply_flips(&[40, 5]).unwrap();
        assert_eq!(state.objective(), before.objective());
        assert_eq!(state.bad_cache(), before.bad_cache());
        assert_eq!(state.function(), before.function());
        assert!(state.apply_flips(&[3, 3]).is_err());
        assert!(state.apply_flips(&[64]).is_err());
    }

    #[test]
    fn rejected_step_reverts_exactly() {
        // f_7_4 has no bad flats, so most perturbations increase the count
        let f74 = corpus().into_iter().find(|e| e.id == "f_7_4").unwrap().truth_table();
        let mut state = SearchState::new(layout(7, 4, IncidenceMode::Auto), Metric::Degree, 2, &f74).unwrap();
        let before = state.clone();
        let mut rejected = 0;
        for p in 0..128 {
            let r = state.try_flips(&[p]).unwrap();
            if r.accepted {
                state = before.clone();
            } else {
                rejected += 1;
                assert_eq!(state.function(), before.function());
                assert_eq!(state.bad_cache(), before.bad_cache());
                assert_eq!(state.objective(), 0);
            }
        }
        assert!(rejected > 0);
    }

    #[test]
    fn indexed_and_streaming_agree() {
        let mut a = SearchConfig::new(5, 3, Metric::Degree, 2, 99);
        a.steps = 300;
        a.restarts = 3;
        a.incidence = IncidenceMode::Indexed;
        let mut b = a.clone();
        b.incidence = IncidenceMode::Streaming;
        let (ra, rb) = (search(&a).unwrap(), search(&b).unwrap());
        assert!(ra.indexed && !rb.indexed);
        assert_eq!(ra.function, rb.function);
        assert_eq!(ra.restarts, rb.restarts);
    }

    #[test]
    fn threshold_zero_is_found_immediately() {
        let cfg = SearchConfig::new(4, 2, Metric::Degree, 0, 1);
        let out = search(&cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(out.steps_used, 0);
        assert_eq!(out.restarts_used, 1);
    }

    #[test]
    fn impossible_target_is_exhausted() {
        let mut cfg = SearchConfig::new(4, 3, Metric::Degree, 3, 5);
        cfg.steps = 2_000;
        cfg.restarts = 3;
        let out = search(&cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Exhausted);
        assert!(out.bad_flats > 0);
        assert_eq!(out.restarts_used, 3);
        assert_eq!(out.steps_used, 6_000);
        assert_eq!(objective(&out.function, &cfg).unwrap(), out.bad_flats);
    }

    #[test]
    fn search_is_deterministic_and_monotone() {
        let mut cfg = SearchConfig::new(5, 3, Metric::Degree, 2, 2024);
        cfg.steps = 2_000;
        cfg.restarts = 4;
        cfg.trace = true;
        let a = search(&cfg).unwrap();
        let b = search(&cfg).unwrap();
        assert_eq!(a, b);
        let trace = a.trace.as_ref().unwrap();
        assert!(trace.windows(2).all(|w| w[1] <= w[0]));
        if a.status == SearchStatus::Found {
            assert!(alpha(&a.function, 3, Metric::Degree).unwrap().value >= 2);
        }
    }

    #[test]
    fn found_functions_pass_independent_check() {
        for (n, k, d) in [(4, 3, 2), (5, 4, 3)] {
            let mut cfg = SearchConfig::new(n, k, Metric::Degree, d, 7);
            cfg.steps = 5_000;
            let out = search(&cfg).unwrap();
            assert_eq!(out.status, SearchStatus::Found);
            assert_eq!(out.bad_flats, 0);
            assert!(alpha(&out.function, k, Metric::Degree).unwrap().value >= d);
        }
    }
}
