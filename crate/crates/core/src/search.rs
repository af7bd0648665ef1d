//! Backtracking search for `k`-uniform representants.
//!
//! Words are grown left to right; at every step the letters with fewer than
//! `k` occurrences are tried in ascending id order. Four pruning rules cut the
//! tree, each of them sound on its own:
//!
//! * alternation: appending `x` as its `i`-th occurrence (`i >= 2`) needs every
//!   neighbour `y` of `x` to occur after `x^(i-1)`. Together with the same
//!   check on `y`'s side this forces exactly one `y` between consecutive `x`s.
//! * count gap: the counts of two adjacent letters never differ by more than 1,
//!   and a letter with a complete neighbour may only place its last occurrence.
//! * capacity: every letter's missing occurrences fit in the free positions.
//! * complete non-edge: two non-adjacent letters that both reached `k`
//!   occurrences must not alternate. The check fires as soon as the first of
//!   the two completes, since from then on the other letter can only extend
//!   an alternating restriction.
//! * precedence: for an adjacent pair that has started, the order of all its
//!   remaining occurrences is fixed. These orders must be acyclic, and they
//!   must not already fix an alternating non-adjacent pair to alternate to
//!   the end. Checked when at most 64 occurrences remain.
//!
//! A complete word is accepted only after [`Word::represents`] re-checks it.
//!
//! With `break_symmetry` only words starting with vertex 0 are enumerated.
//! Rotating a uniform word does not change which pairs alternate, so some
//! rotation of any representant starts with vertex 0.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{generate, FamilySpec, Graph};
use crate::report::{CheckRecord, Report, Status};
use crate::words::{Naming, Word};

/// Largest graph the search accepts (vertex sets are `u64` masks).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Which pruning rules are active.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pruning {
    pub alternation: bool,
    pub count_gap: bool,
    pub capacity: bool,
    pub complete_nonedge: bool,
    pub precedence: bool,
}

impl Pruning {
    pub const ALL: Pruning =
        Pruning { alternation: true, count_gap: true, capacity: true, complete_nonedge: true, precedence: true };
    pub const NONE: Pruning =
        Pruning { alternation: false, count_gap: false, capacity: false, complete_nonedge: false, precedence: false };
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning::ALL
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub k: usize,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub break_symmetry: bool,
    pub parallel: bool,
    /// Print a progress line to stderr every this many nodes.
    pub progress_interval: Option<u64>,
    pub pruning: Pruning,
}

impl SearchConfig {
    pub fn new(k: usize) -> Self {
        SearchConfig {
            k,
            node_budget: None,
            time_budget: None,
            break_symmetry: true,
            parallel: false,
            progress_interval: None,
            pruning: Pruning::ALL,
        }
    }

    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn with_time_budget(mut self, limit: Duration) -> Self {
        self.time_budget = Some(limit);
        self
    }

    pub fn with_symmetry_breaking(mut self, on: bool) -> Self {
        self.break_symmetry = on;
        self
    }

    pub fn with_parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn with_pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.k == 0 {
            return Err(SearchError::InvalidConfig("k must be at least 1".into()));
        }
        if self.k > u8::MAX as usize {
            return Err(SearchError::InvalidConfig(format!("k = {} is too large", self.k)));
        }
        if self.node_budget == Some(0) {
            return Err(SearchError::InvalidConfig("node budget must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStatus {
    Found,
    ExhaustedNoSolution,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub word: Option<Word>,
    pub nodes_expanded: u64,
    pub wall_time: Duration,
    pub parallel: bool,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

/// Mutable search state over one tree.
#[derive(Clone)]
struct Tree {
    n: usize,
    k: u8,
    len: usize,
    nbr: Vec<u64>,
    all: u64,
    rules: Pruning,
    word: Vec<u8>,
    count: Vec<u8>,
    /// 1-based position of the latest occurrence, 0 if none.
    last: Vec<u32>,
    /// Letters whose restriction with this one no longer alternates.
    broken: Vec<u64>,
    complete: u64,
    trail: Vec<(u32, u64)>,
}

/// Bits strictly above `x`.
fn above(x: usize) -> u64 {
    u64::MAX.checked_shl(x as u32 + 1).unwrap_or(0)
}

enum Flow {
    Found,
    Exhausted,
    Abort,
}

impl Tree {
    fn new(g: &Graph, k: usize, rules: Pruning) -> Self {
        let n = g.vertex_count();
        let nbr = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
        Tree {
            n,
            k: k as u8,
            len: n * k,
            nbr,
            all: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            rules,
            word: Vec::with_capacity(n * k),
            count: vec![0; n],
            last: vec![0; n],
            broken: vec![0; n],
            complete: 0,
            trail: Vec::with_capacity(n * k),
        }
    }

    fn full(&self) -> bool {
        self.word.len() == self.len
    }

    /// Appends `x` unless a pruning rule rejects it.
    #[inline]
    fn try_push(&mut self, x: usize) -> bool {
        let bit = 1u64 << x;
        let seen_before = self.count[x] > 0;
        let mut newly_broken = 0;
        if seen_before {
            let lx = self.last[x];
            let mut since = 0u64;
            for (y, &ly) in self.last.iter().enumerate() {
                if ly > lx {
                    since |= 1 << y;
                }
            }
            if self.rules.alternation && self.nbr[x] & !since != 0 {
                return false;
            }
            newly_broken = !since & self.all & !bit & !self.broken[x];
        }
        if self.rules.count_gap {
            let cx = self.count[x];
            // a non-final occurrence of x needs every neighbour once more
            if cx + 1 < self.k && self.complete & self.nbr[x] != 0 {
                return false;
            }
            let mut nbrs = self.nbr[x];
            while nbrs != 0 {
                let y = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if cx > self.count[y] {
                    return false;
                }
            }
        }
        if self.rules.capacity {
            let remaining = self.len - self.word.len() - 1;
            let k = self.k;
            let fits = self.count.iter().enumerate().all(|(y, &c)| (k - c - u8::from(y == x)) as usize <= remaining);
            if !fits {
                return false;
            }
        }
        let completes = self.count[x] + 1 == self.k;
        if self.rules.complete_nonedge && completes {
            // Once x is complete, an alternating non-neighbour y has k-1 or k
            // occurrences; its remaining ones can only keep the pair alternating.
            let alternating = !(self.broken[x] | newly_broken);
            if self.all & !self.nbr[x] & !bit & alternating != 0 {
                return false;
            }
        }

        self.word.push(x as u8);
        let pos = self.word.len() as u32;
        self.trail.push((self.last[x], newly_broken));
        self.last[x] = pos;
        self.count[x] += 1;
        self.broken[x] |= newly_broken;
        let mut nb = newly_broken;
        while nb != 0 {
            let y = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            self.broken[y] |= bit;
        }
        if completes {
            self.complete |= bit;
        }
        true
    }

    /// [`Tree::try_push`] followed by the precedence lookahead.
    fn advance(&mut self, x: usize) -> bool {
        if !self.try_push(x) {
            return false;
        }
        if self.rules.precedence && !self.precedence_ok() {
            self.pop();
            return false;
        }
        true
    }

    /// Remaining occurrences of `a` and `b` in the only order that keeps
    /// the pair alternating, or `None` if their counts already rule it out.
    /// The letter that occurred less recently goes first.
    fn continuation(&self, a: usize, b: usize, base: &[usize; 64]) -> Option<Vec<usize>> {
        let (f, s) = if self.last[a] < self.last[b] { (a, b) } else { (b, a) };
        let k = self.k as usize;
        let (rf, rs) = (k - self.count[f] as usize, k - self.count[s] as usize);
        if rf != rs && rf != rs + 1 {
            return None;
        }
        let mut seq = Vec::with_capacity(rf + rs);
        for j in 0..rf {
            seq.push(base[f] + j);
            if j < rs {
                seq.push(base[s] + j);
            }
        }
        Some(seq)
    }

    /// Orders the remaining occurrences as far as adjacent pairs force it.
    /// Fails if the forced order is cyclic, or if it already fixes some
    /// alternating non-adjacent pair to keep alternating to the end.
    fn precedence_ok(&self) -> bool {
        let k = self.k as usize;
        let mut base = [0usize; 64];
        let mut total = 0;
        for (b, &c) in base.iter_mut().zip(&self.count) {
            *b = total;
            total += k - c as usize;
        }
        if total == 0 || total > 64 {
            return true;
        }
        let mut pred = [0u64; 64];
        for v in 0..self.n {
            for j in 1..k - self.count[v] as usize {
                pred[base[v] + j] |= 1 << (base[v] + j - 1);
            }
        }
        for x in 0..self.n {
            let mut ys = self.nbr[x] & above(x);
            while ys != 0 {
                let y = ys.trailing_zeros() as usize;
                ys &= ys - 1;
                if self.count[x] == 0 && self.count[y] == 0 {
                    continue;
                }
                match self.continuation(x, y, &base) {
                    Some(seq) => {
                        for w in seq.windows(2) {
                            pred[w[1]] |= 1 << w[0];
                        }
                    }
                    None => return false,
                }
            }
        }

        // ancestors in topological order
        let mut anc = [0u64; 64];
        let mut left = if total == 64 { u64::MAX } else { (1u64 << total) - 1 };
        while left != 0 {
            let mut ready = 0u64;
            let mut it = left;
            while it != 0 {
                let e = it.trailing_zeros() as usize;
                it &= it - 1;
                if pred[e] & left == 0 {
                    ready |= 1 << e;
                }
            }
            if ready == 0 {
                return false;
            }
            left &= !ready;
            while ready != 0 {
                let e = ready.trailing_zeros() as usize;
                ready &= ready - 1;
                let mut ps = pred[e];
                let mut a = ps;
                while ps != 0 {
                    let p = ps.trailing_zeros() as usize;
                    ps &= ps - 1;
                    a |= anc[p];
                }
                anc[e] = a;
            }
        }

        for x in 0..self.n {
            let mut ys = self.all & !self.nbr[x] & !self.broken[x] & above(x);
            while ys != 0 {
                let y = ys.trailing_zeros() as usize;
                ys &= ys - 1;
                if self.count[x] == 0 && self.count[y] == 0 {
                    continue;
                }
                if let Some(seq) = self.continuation(x, y, &base) {
                    if seq.windows(2).all(|w| anc[w[1]] & (1 << w[0]) != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn pop(&mut self) {
        let x = self.word.pop().expect("pop on empty word") as usize;
        let bit = 1u64 << x;
        let (prev_last, newly_broken) = self.trail.pop().expect("trail matches word");
        self.complete &= !bit;
        self.count[x] -= 1;
        self.last[x] = prev_last;
        self.broken[x] &= !newly_broken;
        let mut nb = newly_broken;
        while nb != 0 {
            let y = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            self.broken[y] &= !bit;
        }
    }

    fn candidates(&self, break_symmetry: bool) -> impl Iterator<Item = usize> + '_ {
        let first_only = break_symmetry && self.word.is_empty();
        (0..self.n).filter(move |&x| self.count[x] < self.k && (!first_only || x == 0))
    }

    fn to_word(&self) -> Word {
        Word::from_ids(self.word.iter().map(|&l| l as usize), self.n).expect("letters in range")
    }
}

/// Node accounting shared by every subtree of one search.
struct Meter<'a> {
    local: u64,
    flushed: u64,
    shared: Option<&'a AtomicU64>,
    stop: Option<&'a AtomicBool>,
    budget: Option<u64>,
    deadline: Option<Instant>,
    progress: Option<u64>,
}

const FLUSH_EVERY: u64 = 1 << 12;

impl Meter<'_> {
    /// Counts one node; false when the search must stop.
    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if let Some(p) = self.progress {
            if self.local.is_multiple_of(p) {
                eprintln!("search: {} nodes", self.local);
            }
        }
        let total = match self.shared {
            None => self.local,
            Some(shared) => {
                if self.local - self.flushed < FLUSH_EVERY {
                    return self.within_budget(self.local);
                }
                let delta = self.local - self.flushed;
                self.flushed = self.local;
                shared.fetch_add(delta, Ordering::Relaxed) + delta
            }
        };
        if self.local.is_multiple_of(FLUSH_EVERY) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return false;
                }
            }
            if let Some(stop) = self.stop {
                if stop.load(Ordering::Relaxed) {
                    return false;
                }
            }
        }
        self.within_budget(total)
    }

    #[inline]
    fn within_budget(&self, total: u64) -> bool {
        self.budget.is_none_or(|b| total <= b)
    }

    fn finish(&mut self) {
        if let Some(shared) = self.shared {
            shared.fetch_add(self.local - self.flushed, Ordering::Relaxed);
            self.flushed = self.local;
        }
    }
}

fn dfs(tree: &mut Tree, g: &Graph, meter: &mut Meter<'_>, break_symmetry: bool) -> Flow {
    if tree.full() {
        return if tree.to_word().represents(g).unwrap_or(false) { Flow::Found } else { Flow::Exhausted };
    }
    let first_only = break_symmetry && tree.word.is_empty();
    for x in 0..tree.n {
        if tree.count[x] >= tree.k || (first_only && x != 0) {
            continue;
        }
        if !tree.advance(x) {
            continue;
        }
        if !meter.tick() {
            return Flow::Abort;
        }
        match dfs(tree, g, meter, break_symmetry) {
            Flow::Exhausted => tree.pop(),
            other => return other,
        }
    }
    Flow::Exhausted
}

fn check_input(g: &Graph) -> Result<(), SearchError> {
    if g.vertex_count() == 0 {
        return Err(SearchError::InvalidInput("graph has no vertices".into()));
    }
    if g.vertex_count() > MAX_VERTICES {
        return Err(SearchError::InvalidInput(format!(
            "graph has {} vertices, the search supports at most {MAX_VERTICES}",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Looks for a `cfg.k`-uniform word representing `g`.
pub fn search_k_word(g: &Graph, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    check_input(g)?;
    cfg.validate()?;
    let started = Instant::now();
    let deadline = cfg.time_budget.map(|d| started + d);
    let mut tree = Tree::new(g, cfg.k, cfg.pruning);

    let (status, word, nodes) = if cfg.parallel && tree.len > 2 {
        parallel_search(&tree, g, cfg, deadline)
    } else {
        let mut meter = Meter {
            local: 1,
            flushed: 0,
            shared: None,
            stop: None,
            budget: cfg.node_budget,
            deadline,
            progress: cfg.progress_interval,
        };
        let status = if meter.within_budget(1) {
            match dfs(&mut tree, g, &mut meter, cfg.break_symmetry) {
                Flow::Found => SearchStatus::Found,
                Flow::Exhausted => SearchStatus::ExhaustedNoSolution,
                Flow::Abort => SearchStatus::BudgetExceeded,
            }
        } else {
            SearchStatus::BudgetExceeded
        };
        let word = (status == SearchStatus::Found).then(|| tree.to_word());
        (status, word, meter.local)
    };

    if let Some(w) = &word {
        let ok = w.is_k_uniform(cfg.k) && w.represents(g).unwrap_or(false);
        assert!(ok, "search returned a word that does not represent the graph");
    }
    Ok(SearchOutcome { status, word, nodes_expanded: nodes, wall_time: started.elapsed(), parallel: cfg.parallel })
}

/// Splits the tree at depth 2 and searches the subtrees on the rayon pool.
fn parallel_search(
    root: &Tree,
    g: &Graph,
    cfg: &SearchConfig,
    deadline: Option<Instant>,
) -> (SearchStatus, Option<Word>, u64) {
    let mut prefixes = Vec::new();
    let mut nodes = 1u64;
    let mut tree = root.clone();
    let firsts: Vec<usize> = tree.candidates(cfg.break_symmetry).collect();
    for a in firsts {
        if !tree.advance(a) {
            continue;
        }
        nodes += 1;
        let seconds: Vec<usize> = tree.candidates(false).collect();
        for b in seconds {
            if tree.advance(b) {
                nodes += 1;
                prefixes.push(tree.clone());
                tree.pop();
            }
        }
        tree.pop();
    }
    if cfg.node_budget.is_some_and(|b| nodes > b) {
        return (SearchStatus::BudgetExceeded, None, nodes);
    }

    let shared = AtomicU64::new(nodes);
    let stop = AtomicBool::new(false);
    let results: Vec<(Flow, Option<Word>)> = prefixes
        .into_par_iter()
        .map(|mut sub| {
            if stop.load(Ordering::Relaxed) {
                return (Flow::Abort, None);
            }
            let mut meter = Meter {
                local: 0,
                flushed: 0,
                shared: Some(&shared),
                stop: Some(&stop),
                budget: cfg.node_budget,
                deadline,
                progress: cfg.progress_interval,
            };
            let flow = dfs(&mut sub, g, &mut meter, false);
            meter.finish();
            match flow {
                Flow::Found => {
                    stop.store(true, Ordering::Relaxed);
                    (Flow::Found, Some(sub.to_word()))
                }
                other => (other, None),
            }
        })
        .collect();
    let nodes = shared.load(Ordering::Relaxed);
    if let Some((_, word)) = results.iter().find(|(f, _)| matches!(f, Flow::Found)) {
        return (SearchStatus::Found, word.clone(), nodes);
    }
    if results.iter().any(|(f, _)| matches!(f, Flow::Abort)) {
        return (SearchStatus::BudgetExceeded, None, nodes);
    }
    (SearchStatus::ExhaustedNoSolution, None, nodes)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepnumResult {
    /// Set iff the bounds meet.
    pub value: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
    pub witness: Option<Word>,
    pub per_k: Vec<(usize, SearchOutcome)>,
}

/// Representation number of `g`, trying `k = 2, 3, ..., k_max` with the
/// budgets and switches of `template`. Complete graphs short-cut to 1.
pub fn representation_number(g: &Graph, k_max: usize, template: &SearchConfig) -> Result<RepnumResult, SearchError> {
    check_input(g)?;
    if k_max == 0 {
        return Err(SearchError::InvalidConfig("k_max must be at least 1".into()));
    }
    if g.is_complete() {
        let witness = Word::from_ids(0..g.vertex_count(), g.vertex_count()).expect("permutation");
        debug_assert!(witness.represents(g).unwrap());
        return Ok(RepnumResult {
            value: Some(1),
            lower_bound: 1,
            upper_bound: Some(1),
            witness: Some(witness),
            per_k: Vec::new(),
        });
    }
    let mut result = RepnumResult { value: None, lower_bound: 2, upper_bound: None, witness: None, per_k: Vec::new() };
    for k in 2..=k_max {
        let cfg = SearchConfig { k, ..template.clone() };
        let outcome = search_k_word(g, &cfg)?;
        let status = outcome.status;
        let word = outcome.word.clone();
        result.per_k.push((k, outcome));
        match status {
            SearchStatus::Found => {
                result.value = Some(k);
                result.lower_bound = k;
                result.upper_bound = Some(k);
                result.witness = word;
                break;
            }
            SearchStatus::ExhaustedNoSolution => result.lower_bound = k + 1,
            SearchStatus::BudgetExceeded => break,
        }
    }
    Ok(result)
}

fn outcome_details(record: CheckRecord, outcome: &SearchOutcome) -> CheckRecord {
    record
        .detail("status", format!("{:?}", outcome.status))
        .detail("nodes_expanded", outcome.nodes_expanded)
        .detail("parallel", outcome.parallel)
}

pub const GRID33_LOWER_BOUND_ANCHOR: &str = "R(Gr_{3,3}) >= 3: no 2-uniform word represents Gr_{3,3}";

#[derive(Clone, Debug)]
pub struct LowerBoundOptions {
    /// Node budget for the main leg; `None` runs it to completion.
    pub node_budget: Option<u64>,
    /// Wall-clock guard for the main leg.
    pub time_budget: Option<Duration>,
    /// Wall-clock budget for the leg without symmetry breaking.
    pub spot_check_time: Duration,
    pub parallel: bool,
}

impl Default for LowerBoundOptions {
    fn default() -> Self {
        LowerBoundOptions {
            node_budget: None,
            time_budget: Some(Duration::from_secs(15 * 60)),
            spot_check_time: Duration::from_secs(15 * 60),
            parallel: false,
        }
    }
}

/// Exhausts 2-uniform words for the 3x3 grid, repeats the exhaustion without
/// symmetry breaking, and runs the same search on `P_3` as a positive control.
pub fn verify_claim_lemma2(opts: &LowerBoundOptions) -> Report {
    let mut report = Report::new(vec!["verify-grid3x3-lower-bound".into()]);
    let g = generate(FamilySpec::grid(3, 3)).expect("valid family");

    let mut cfg = SearchConfig::new(2).with_parallel(opts.parallel);
    cfg.node_budget = opts.node_budget;
    cfg.time_budget = opts.time_budget;
    let main = search_k_word(&g, &cfg).expect("valid search input");
    let status = match main.status {
        SearchStatus::ExhaustedNoSolution => Status::Pass,
        SearchStatus::Found => Status::Fail,
        SearchStatus::BudgetExceeded => Status::Inconclusive,
    };
    let mut record =
        outcome_details(CheckRecord::new("grid3x3.k2-exhaustion", GRID33_LOWER_BOUND_ANCHOR, status), &main)
            .detail("graph", "grid(3,3)")
            .detail("k", 2)
            .detail("break_symmetry", true);
    if let Some(w) = &main.word {
        record = record.detail("counterexample", w.to_text(&Naming::grid(3, 3)).trim_end());
    }
    report.push(record);
    report.time("grid3x3.k2-exhaustion", main.wall_time.as_secs_f64());

    if main.status != SearchStatus::BudgetExceeded {
        let spot_cfg = SearchConfig::new(2)
            .with_symmetry_breaking(false)
            .with_parallel(opts.parallel)
            .with_time_budget(opts.spot_check_time);
        let spot = search_k_word(&g, &spot_cfg).expect("valid search input");
        let status = match (main.status, spot.status) {
            (_, SearchStatus::BudgetExceeded) => Status::Inconclusive,
            (a, b) if (a == SearchStatus::Found) == (b == SearchStatus::Found) => Status::Pass,
            _ => Status::Fail,
        };
        report.push(
            outcome_details(
                CheckRecord::new("grid3x3.k2-no-symmetry-breaking", GRID33_LOWER_BOUND_ANCHOR, status),
                &spot,
            )
            .detail("break_symmetry", false),
        );
        report.time("grid3x3.k2-no-symmetry-breaking", spot.wall_time.as_secs_f64());
    }

    let p3 = generate(FamilySpec::path(3)).expect("valid family");
    let control = search_k_word(&p3, &SearchConfig::new(2)).expect("valid search input");
    let status = if control.found() { Status::Pass } else { Status::Fail };
    let mut record = outcome_details(CheckRecord::new("control.path3-k2", "R(P_n) = 2", status), &control);
    if let Some(w) = &control.word {
        record = record.detail("witness", w.to_text(&Naming::grid(1, 3)).trim_end());
    }
    report.push(record);
    report.time("control.path3-k2", control.wall_time.as_secs_f64());
    report
}

pub const CONJECTURE_ANCHOR: &str = "conjecture: R(TGr_{m,n}) >= 4 when m,n >= 3 and m+n >= 8";

/// Bounded search for a `k`-uniform representant of the `m x n` torus.
///
/// `Found` and `ExhaustedNoSolution` are instance-level facts and pass;
/// `BudgetExceeded` is inconclusive. The record's `conclusion` never
/// settles the conjecture beyond the single instance searched.
pub fn explore_conjecture(m: usize, n: usize, k: usize, cfg: &SearchConfig) -> Result<Report, SearchError> {
    if m < 3 || n < 3 {
        return Err(SearchError::InvalidInput(format!("torus needs m, n >= 3, got {m}x{n}")));
    }
    let g = generate(FamilySpec::toroidal_grid(m, n)).map_err(|e| SearchError::InvalidInput(e.to_string()))?;
    let cfg = SearchConfig { k, ..cfg.clone() };
    let outcome = search_k_word(&g, &cfg)?;
    let in_scope = m + n >= 8;
    let claim = format!("torus.{m}x{n}.k{k}");
    let mut report = Report::new(vec!["explore-conjecture".into(), m.to_string(), n.to_string(), k.to_string()]);

    let (status, conclusion) = match outcome.status {
        SearchStatus::Found => {
            let w = outcome.word.as_ref().expect("found carries a word");
            let recheck = w.is_k_uniform(k) && w.graph().same_edges(&g);
            let conclusion = if !recheck {
                "witness failed re-verification".to_string()
            } else if k == 3 && in_scope {
                format!("3-uniform representant exists: conjecture refuted at {m}x{n}")
            } else {
                format!("R(TGr_{{{m},{n}}}) <= {k}")
            };
            (if recheck { Status::Pass } else { Status::Fail }, conclusion)
        }
        SearchStatus::ExhaustedNoSolution => (Status::Pass, format!("R(TGr_{{{m},{n}}}) >= {}", k + 1)),
        SearchStatus::BudgetExceeded => (Status::Inconclusive, "budget exceeded: no conclusion".to_string()),
    };
    let mut record = outcome_details(CheckRecord::new(claim.clone(), CONJECTURE_ANCHOR, status), &outcome)
        .detail("graph", format!("torus({m},{n})"))
        .detail("k", k)
        .detail("conclusion", conclusion)
        .detail("conjecture_instance", in_scope);
    if let Some(budget) = cfg.node_budget {
        record = record.detail("node_budget", budget);
    }
    if let Some(w) = &outcome.word {
        record = record.detail("witness", w.to_text(&Naming::grid(m, n)).trim_end());
    }
    report.push(record);
    report.time(&claim, outcome.wall_time.as_secs_f64());
    Ok(report)
}
