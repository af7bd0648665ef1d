//! The bundled verification suite: construction sweeps, structural laws of
//! the building-block words, the small exhaustions and known-value controls.
//!
//! Each claim becomes one [`CheckRecord`] carrying the statement it checks.
//! Constructors are injected through [`Constructors`] so that a broken
//! constructor can be swapped in and caught.

use std::time::{Duration, Instant};

use crate::constructions::{self, row_subword, ConstructionError};
use crate::graphs::{generate, FamilySpec, Graph};
use crate::report::{CheckRecord, Report, Status};
use crate::search::{self, representation_number, search_k_word, LowerBoundOptions, SearchConfig, SearchStatus};
use crate::words::{OccurrenceRef, Word};

type Build1 = fn(usize) -> Result<Word, ConstructionError>;
type Build2 = fn(usize, usize) -> Result<Word, ConstructionError>;

/// The constructors the suite exercises. Defaults to the unchecked builders:
/// the suite does its own verification.
#[derive(Clone, Copy)]
pub struct Constructors {
    pub path: Build1,
    pub od: Build1,
    pub ev: Build1,
    pub grid: Build2,
    pub cyl3: Build1,
    pub cyl: Build2,
    pub torus: Build2,
}

impl Default for Constructors {
    fn default() -> Self {
        Constructors {
            path: constructions::path_word_unchecked,
            od: constructions::od_word_unchecked,
            ev: constructions::ev_word_unchecked,
            grid: constructions::grid_word_unchecked,
            cyl3: constructions::cyl3_word_unchecked,
            cyl: constructions::cyl_word_unchecked,
            torus: constructions::torus_word_unchecked,
        }
    }
}

#[derive(Clone)]
pub struct PaperCheckOptions {
    /// Largest `m` and `n` of the construction sweeps.
    pub max_size: usize,
    /// Largest `n` for the path, Od and Ev property checks.
    pub word_property_max_n: usize,
    /// Wall-clock guard for each exhaustion leg.
    pub exhaustion_time: Duration,
    pub parallel: bool,
    pub constructors: Constructors,
}

impl Default for PaperCheckOptions {
    fn default() -> Self {
        PaperCheckOptions {
            max_size: 12,
            word_property_max_n: 50,
            exhaustion_time: Duration::from_secs(15 * 60),
            parallel: false,
            constructors: Constructors::default(),
        }
    }
}

pub mod anchors {
    pub const GRID: &str = "Gr_{m,n} is 3-representable for every n >= 3";
    pub const CYL3: &str = "CGr_{m,3} is 3-representable for all m >= 1";
    pub const CYL: &str = "CGr_{m,n} is 3-representable for all m >= 1 and n >= 4";
    pub const GRID_ROWS: &str = "row j of the grid word coincides with W after relabelling";
    pub const GRID_FACTORS: &str = "w_j has factors x_{j,2t+1}^2 x_{j,2t}^3 and x_{j,n}^2 x_{j,n-1}^3";
    pub const CYL_ROWS: &str = "row m of the cylinder word is Od (m odd) or Ev (m even)";
    pub const PATH_WORD: &str = "W is 3-uniform, represents P_n, and has properties (a) and (b)";
    pub const OD_EV: &str = "Od and Ev represent C_n and have properties (1)-(3)";
    pub const FACT1: &str = "xy in E implies x^i > y^(i-1) and y^i > x^(i-1)";
    pub const TORUS33: &str = "w(TGr_{3,3}) = abcdefgadhigbcaehbfdeighcfi";
    pub const TORUS34: &str = "w(TGr_{3,4}) = ajbkcdaeblfcgdjahkigehfdbelcifjgkhli";
    pub const GRID_REPNUM: &str = "R(Gr_{m,n}) = 3 for m,n >= 3";
    pub const PRISM: &str = "prisms Pr_n have representation number 3";
    pub const PATH_REPNUM: &str = "R(P_n) = 2";
    pub const CYCLE_REPNUM: &str = "R(C_n) = 2 for n >= 3";
    pub const COMPLETE_REPNUM: &str = "R(G) = 1 iff G is complete";
}

/// Result of checking one word against one graph.
fn check_word(word: &Word, g: &Graph) -> Result<(), String> {
    if !word.is_k_uniform(3) {
        return Err("not 3-uniform".into());
    }
    match word.first_mismatch(g) {
        Err(e) => Err(e.to_string()),
        Ok(Some(mm)) => Err(format!(
            "pair ({}, {}): edge={} alternates={}",
            g.name(mm.x.index()),
            g.name(mm.y.index()),
            mm.edge,
            mm.alternates
        )),
        Ok(None) => Ok(()),
    }
}

fn before(w: &Word, a: (usize, usize), b: (usize, usize)) -> bool {
    w.occurrence_before(OccurrenceRef::new(a.0, a.1), OccurrenceRef::new(b.0, b.1)).unwrap_or(false)
}

/// Properties (a) and (b) of the path word over `x1..xn` (ids `0..n`).
pub fn path_word_properties(w: &Word, n: usize) -> Result<(), String> {
    let x = |t: usize| t - 1;
    for t in 2..=n / 2 {
        if !before(w, (x(2 * t - 2), 3), (x(2 * t), 2)) {
            return Err(format!("(a) fails at t={t}"));
        }
    }
    for t in 1..n {
        for i in 1..=3 {
            if !before(w, (x(t), i), (x(t + 1), i)) {
                return Err(format!("(b) fails at t={t}, i={i}"));
            }
        }
    }
    Ok(())
}

/// Properties (1)-(3) of Od and Ev, and Ev being a rotation of Od.
pub fn od_ev_properties(od: &Word, ev: &Word, n: usize) -> Result<(), String> {
    let x = |t: usize| t - 1;
    for (name, w) in [("Od", od), ("Ev", ev)] {
        if w.letters().first().map(|l| l.index()) != Some(0) {
            return Err(format!("(1) {name} does not start with x1"));
        }
        for i in 1..=3 {
            if !before(w, (x(n), i), (x(n - 1), i)) {
                return Err(format!("(1) {name}: x_n^{i} not before x_(n-1)^{i}"));
            }
        }
    }
    if !before(od, (x(n - 2), 1), (x(n), 2)) {
        return Err("(2) Od: x_(n-2)^1 not before x_n^2".into());
    }
    for j in 1..n {
        if !before(ev, (x(j + 1), 2), (x(j), 3)) {
            return Err(format!("(2) Ev: x_{}^2 not before x_{j}^3", j + 1));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if !before(od, (x(j), 2), (x(i), 3)) {
                return Err(format!("(3) Od: x_{i}^3 not after x_{j}^2"));
            }
            if !before(ev, (x(j), 1), (x(i), 2)) {
                return Err(format!("(3) Ev: x_{i}^2 not after x_{j}^1"));
            }
        }
    }
    if od.rotate(od.len() - n) != *ev {
        return Err("Ev is not Od with its closing permutation moved to the front".into());
    }
    Ok(())
}

/// Factors `x_{j,2t+1}^2 x_{j,2t}^3` (t = 1..n/2-1) and `x_{j,n}^2 x_{j,n-1}^3`
/// of row `j` in the word for rows `1..=j`, for every `j`.
///
/// Row `j` is the newest row of that word. Adding row `j + 1` splices its
/// letters into exactly these factors, so in the full `m`-row word they
/// survive only for the last row.
pub fn grid_factor_law(w: &Word, m: usize, n: usize) -> Result<(), String> {
    for row in 1..=m {
        let stage = w.restrict(row * n, |l| (l.index() < row * n).then_some(l.index())).map_err(|e| e.to_string())?;
        row_factors(&stage, row, n)?;
    }
    Ok(())
}

/// The factors of [`grid_factor_law`] for one row of `w`.
pub fn row_factors(w: &Word, row: usize, n: usize) -> Result<(), String> {
    let id = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut factors: Vec<(usize, usize)> = (1..n / 2).map(|t| (2 * t + 1, 2 * t)).collect();
    factors.push((n, n - 1));
    for (a, b) in factors {
        let pattern = [OccurrenceRef::new(id(row, a), 2), OccurrenceRef::new(id(row, b), 3)];
        match w.find_factor(&pattern) {
            Ok(Some(_)) => {}
            _ => return Err(format!("row {row}: x_{{{row},{a}}}^2 x_{{{row},{b}}}^3 is not a factor")),
        }
    }
    Ok(())
}

struct Sweep {
    claim: &'static str,
    anchor: &'static str,
    checked: usize,
    failure: Option<String>,
    started: Instant,
}

impl Sweep {
    fn new(claim: &'static str, anchor: &'static str) -> Self {
        Sweep { claim, anchor, checked: 0, failure: None, started: Instant::now() }
    }

    fn check(&mut self, label: impl FnOnce() -> String, result: Result<(), String>) {
        self.checked += 1;
        if let (Err(e), None) = (result, &self.failure) {
            self.failure = Some(format!("{}: {e}", label()));
        }
    }

    fn finish(self, report: &mut Report) {
        let status = if self.failure.is_some() { Status::Fail } else { Status::Pass };
        let mut record = CheckRecord::new(self.claim, self.anchor, status).detail("instances", self.checked);
        if let Some(f) = self.failure {
            record = record.detail("first_failure", f);
        }
        report.push(record);
        report.time(self.claim, self.started.elapsed().as_secs_f64());
    }
}

fn built(result: Result<Word, ConstructionError>) -> Result<Word, String> {
    result.map_err(|e| e.to_string())
}

/// Runs the whole suite.
pub fn paper_check(opts: &PaperCheckOptions) -> Report {
    let mut report = Report::new(vec!["paper-check".into(), "--max-size".into(), opts.max_size.to_string()]);
    let c = opts.constructors;
    let max = opts.max_size;
    let mut fact1 = Sweep::new("fact1.constructed-words", anchors::FACT1);

    // grids
    let mut grid = Sweep::new("construction.grid", anchors::GRID);
    let mut rows = Sweep::new("law.grid-row-subwords", anchors::GRID_ROWS);
    let mut factors = Sweep::new("law.grid-factors", anchors::GRID_FACTORS);
    for n in 3..=max {
        let path = built((c.path)(n));
        for m in 1..=max {
            let label = || format!("grid({m},{n})");
            let g = generate(FamilySpec::grid(m, n)).expect("valid family");
            let word = match built((c.grid)(m, n)) {
                Ok(w) => w,
                Err(e) => {
                    grid.check(label, Err(e));
                    continue;
                }
            };
            let verdict = check_word(&word, &g);
            let represents = verdict.is_ok();
            grid.check(label, verdict);
            rows.check(
                label,
                match &path {
                    Ok(p) => (1..=m)
                        .find(|&r| row_subword(&word, n, r) != *p)
                        .map_or(Ok(()), |r| Err(format!("row {r} differs from W"))),
                    Err(e) => Err(e.clone()),
                },
            );
            factors.check(label, grid_factor_law(&word, m, n));
            if represents {
                fact1.check(label, if word.check_fact1(&g) { Ok(()) } else { Err("violated".into()) });
            }
        }
    }
    grid.finish(&mut report);
    rows.finish(&mut report);
    factors.finish(&mut report);

    // cylinders
    let mut cyl3 = Sweep::new("construction.cyl3", anchors::CYL3);
    for m in 1..=max {
        let label = || format!("cyl({m},3)");
        let g = generate(FamilySpec::cyl_grid(m, 3)).expect("valid family");
        let verdict = built((c.cyl3)(m)).and_then(|w| {
            check_word(&w, &g)?;
            fact1.check(label, if w.check_fact1(&g) { Ok(()) } else { Err("violated".into()) });
            Ok(())
        });
        cyl3.check(label, verdict);
    }
    cyl3.finish(&mut report);

    if max >= 4 {
        let mut cyl = Sweep::new("construction.cyl", anchors::CYL);
        let mut cyl_rows = Sweep::new("law.cyl-row-subwords", anchors::CYL_ROWS);
        for n in 4..=max {
            let od = built((c.od)(n));
            let ev = built((c.ev)(n));
            for m in 1..=max {
                let label = || format!("cyl({m},{n})");
                let g = generate(FamilySpec::cyl_grid(m, n)).expect("valid family");
                let word = match built((c.cyl)(m, n)) {
                    Ok(w) => w,
                    Err(e) => {
                        cyl.check(label, Err(e));
                        continue;
                    }
                };
                let verdict = check_word(&word, &g);
                if verdict.is_ok() {
                    fact1.check(label, if word.check_fact1(&g) { Ok(()) } else { Err("violated".into()) });
                }
                cyl.check(label, verdict);
                let row_law = (1..=m).try_for_each(|r| {
                    let expected = if r % 2 == 1 { &od } else { &ev };
                    match expected {
                        Ok(e) if row_subword(&word, n, r) == *e => Ok(()),
                        Ok(_) => Err(format!("row {r} differs from {}", if r % 2 == 1 { "Od" } else { "Ev" })),
                        Err(err) => Err(err.clone()),
                    }
                });
                cyl_rows.check(label, row_law);
            }
        }
        cyl.finish(&mut report);
        cyl_rows.finish(&mut report);
    }

    // building-block words
    let mut path_props = Sweep::new("word.path-properties", anchors::PATH_WORD);
    for n in 3..=opts.word_property_max_n {
        let label = || format!("W({n})");
        let p = generate(FamilySpec::path(n)).expect("valid family");
        path_props.check(
            label,
            built((c.path)(n)).and_then(|w| {
                check_word(&w, &p)?;
                path_word_properties(&w, n)
            }),
        );
    }
    path_props.finish(&mut report);

    let mut od_ev = Sweep::new("word.od-ev-properties", anchors::OD_EV);
    for n in 4..=opts.word_property_max_n {
        let label = || format!("Od/Ev({n})");
        let cycle = generate(FamilySpec::cycle(n)).expect("valid family");
        od_ev.check(
            label,
            built((c.od)(n)).and_then(|od| {
                let ev = built((c.ev)(n))?;
                check_word(&od, &cycle).map_err(|e| format!("Od: {e}"))?;
                check_word(&ev, &cycle).map_err(|e| format!("Ev: {e}"))?;
                od_ev_properties(&od, &ev, n)
            }),
        );
    }
    od_ev.finish(&mut report);

    // torus constants
    for (m, n, claim, anchor) in
        [(3, 3, "torus.word-3x3", anchors::TORUS33), (3, 4, "torus.word-3x4", anchors::TORUS34)]
    {
        let mut sweep = Sweep::new(claim, anchor);
        let g = generate(FamilySpec::toroidal_grid(m, n)).expect("valid family");
        let label = || format!("torus({m},{n})");
        sweep.check(
            label,
            built((c.torus)(m, n)).and_then(|w| {
                check_word(&w, &g)?;
                fact1.check(label, if w.check_fact1(&g) { Ok(()) } else { Err("violated".into()) });
                Ok(())
            }),
        );
        sweep.finish(&mut report);
    }
    fact1.finish(&mut report);

    // lower bound for the 3x3 grid
    let lower = search::verify_claim_lemma2(&LowerBoundOptions {
        node_budget: None,
        time_budget: Some(opts.exhaustion_time),
        spot_check_time: opts.exhaustion_time,
        parallel: opts.parallel,
    });
    let exhausted = lower.record("grid3x3.k2-exhaustion").map(|r| r.status) == Some(Status::Pass);
    report.extend(lower);
    let g33 = generate(FamilySpec::grid(3, 3)).expect("valid family");
    let upper = built((c.grid)(3, 3)).and_then(|w| check_word(&w, &g33));
    let status = match (exhausted, &upper) {
        (true, Ok(())) => Status::Pass,
        (_, Err(_)) => Status::Fail,
        (false, Ok(())) => Status::Inconclusive,
    };
    let mut record = CheckRecord::new("repnum.grid-3x3", anchors::GRID_REPNUM, status)
        .detail("lower_bound", if exhausted { 3 } else { 2 })
        .detail("upper_bound", if upper.is_ok() { 3 } else { 0 });
    if let Err(e) = upper {
        record = record.detail("first_failure", e);
    }
    report.push(record);

    // known values
    let guard = SearchConfig::new(2).with_time_budget(opts.exhaustion_time).with_parallel(opts.parallel);
    let controls = [
        ("control.repnum-k4", anchors::COMPLETE_REPNUM, FamilySpec::complete(4), 1usize),
        ("control.repnum-p4", anchors::PATH_REPNUM, FamilySpec::path(4), 2),
        ("control.repnum-c6", anchors::CYCLE_REPNUM, FamilySpec::cycle(6), 2),
        ("control.repnum-prism3", anchors::PRISM, FamilySpec::prism(3), 3),
    ];
    for (claim, anchor, spec, expected) in controls {
        let started = Instant::now();
        let g = generate(spec).expect("valid family");
        let record = match representation_number(&g, 3, &guard) {
            Ok(r) => {
                let status = match r.value {
                    Some(v) if v == expected => Status::Pass,
                    Some(_) => Status::Fail,
                    None => Status::Inconclusive,
                };
                let mut record = CheckRecord::new(claim, anchor, status)
                    .detail("graph", spec.to_string())
                    .detail("expected", expected)
                    .detail("lower_bound", r.lower_bound);
                if let Some(v) = r.value {
                    record = record.detail("value", v);
                }
                record
            }
            Err(e) => CheckRecord::new(claim, anchor, Status::Fail).detail("error", e.to_string()),
        };
        report.push(record);
        report.time(claim, started.elapsed().as_secs_f64());
    }

    // prism k=2 exhaustion as a separate, citable record
    let started = Instant::now();
    let pr3 = generate(FamilySpec::prism(3)).expect("valid family");
    let record = match search_k_word(&pr3, &guard) {
        Ok(out) => {
            let status = match out.status {
                SearchStatus::ExhaustedNoSolution => Status::Pass,
                SearchStatus::Found => Status::Fail,
                SearchStatus::BudgetExceeded => Status::Inconclusive,
            };
            CheckRecord::new("control.prism3-k2-exhaustion", anchors::PRISM, status)
                .detail("status", format!("{:?}", out.status))
                .detail("nodes_expanded", out.nodes_expanded)
        }
        Err(e) => CheckRecord::new("control.prism3-k2-exhaustion", anchors::PRISM, Status::Fail)
            .detail("error", e.to_string()),
    };
    report.push(record);
    report.time("control.prism3-k2-exhaustion", started.elapsed().as_secs_f64());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ev_word, grid_word, od_word, path_word};

    #[test]
    fn property_checkers_accept_constructions() {
        for n in 3..=12 {
            path_word_properties(&path_word(n).unwrap(), n).unwrap();
        }
        for n in 4..=12 {
            od_ev_properties(&od_word(n).unwrap(), &ev_word(n).unwrap(), n).unwrap();
        }
        grid_factor_law(&grid_word(4, 7).unwrap(), 4, 7).unwrap();
    }

    #[test]
    fn earlier_row_factors_are_split_by_the_next_row() {
        let w = grid_word(3, 6).unwrap();
        assert!(row_factors(&w, 3, 6).is_ok());
        assert!(row_factors(&w, 1, 6).is_err());
        assert!(row_factors(&w, 2, 6).is_err());
    }

    #[test]
    fn property_checkers_reject_wrong_words() {
        // swap Od and Ev
        assert!(od_ev_properties(&ev_word(6).unwrap(), &od_word(6).unwrap(), 6).is_err());
        // reversed path word breaks (b)
        let w = path_word(5).unwrap();
        let rev = Word::from_ids(w.letters().iter().rev().map(|l| l.index()), 5).unwrap();
        assert!(path_word_properties(&rev, 5).is_err());
        assert!(grid_factor_law(&rev, 1, 5).is_err());
    }
}
