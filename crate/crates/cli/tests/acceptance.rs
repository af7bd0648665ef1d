//! The acceptance criteria, one check each. Run with `--nocapture` to see the
//! PASS/FAIL line of every criterion.

use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;
use wordrep::check::{grid_factor_law, od_ev_properties, path_word_properties};
use wordrep::constructions::row_subword;
use wordrep::{
    cyl3_word, cyl_word, ev_word, generate, grid_word, od_word, path_word, representation_number, search_k_word,
    FamilySpec, Graph, Naming, SearchConfig, SearchStatus, Word,
};

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn wordrep(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordrep")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Alternation straight from the restriction, independent of the library.
fn alternates(word: &[usize], x: usize, y: usize) -> bool {
    let r: Vec<usize> = word.iter().copied().filter(|&l| l == x || l == y).collect();
    r.windows(2).all(|p| p[0] != p[1])
}

fn torus_edges(m: usize, n: usize) -> HashSet<(usize, usize)> {
    let id = |i: usize, j: usize| (i % m) * n + (j % n);
    let mut edges = HashSet::new();
    for i in 0..m {
        for j in 0..n {
            for (a, b) in [(id(i, j), id(i, j + 1)), (id(i, j), id(i + 1, j))] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    edges
}

/// Checks a word of row-major ids against the torus by brute force.
fn independently_represents_torus(word: &[usize], m: usize, n: usize, k: usize) -> bool {
    let v = m * n;
    let uniform = (0..v).all(|x| word.iter().filter(|&&l| l == x).count() == k) && word.len() == v * k;
    let edges = torus_edges(m, n);
    uniform && (0..v).all(|x| (x + 1..v).all(|y| alternates(word, x, y) == edges.contains(&(x, y))))
}

fn construction_sweep() -> Verdict {
    let started = Instant::now();
    let mut count = 0;
    let mut check = |w: Word, spec: FamilySpec| -> Result<(), String> {
        let g = generate(spec).map_err(|e| e.to_string())?;
        count += 1;
        ensure(w.is_k_uniform(3) && w.represents(&g).unwrap_or(false), format!("{spec} not represented"))
    };
    for m in 1..=12 {
        for n in 3..=12 {
            check(grid_word(m, n).map_err(|e| e.to_string())?, FamilySpec::grid(m, n))?;
            if n >= 4 {
                check(cyl_word(m, n).map_err(|e| e.to_string())?, FamilySpec::cyl_grid(m, n))?;
            }
        }
        check(cyl3_word(m).map_err(|e| e.to_string())?, FamilySpec::cyl_grid(m, 3))?;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("{count} words verified in {:.2}s", elapsed.as_secs_f64()))
}

fn structural_laws() -> Verdict {
    let mut fact1 = 0;
    for n in 3..=12 {
        let w_path = path_word(n).map_err(|e| e.to_string())?;
        for m in 1..=12 {
            let w = grid_word(m, n).map_err(|e| e.to_string())?;
            for r in 1..=m {
                ensure(row_subword(&w, n, r) == w_path, format!("grid({m},{n}) row {r}"))?;
            }
            grid_factor_law(&w, m, n).map_err(|e| format!("grid({m},{n}): {e}"))?;
            ensure(w.check_fact1(&generate(FamilySpec::grid(m, n)).unwrap()), format!("fact1 grid({m},{n})"))?;
            fact1 += 1;
            if n >= 4 {
                let c = cyl_word(m, n).map_err(|e| e.to_string())?;
                let (od, ev) = (od_word(n).unwrap(), ev_word(n).unwrap());
                for r in 1..=m {
                    let expected = if r % 2 == 1 { &od } else { &ev };
                    ensure(row_subword(&c, n, r) == *expected, format!("cyl({m},{n}) row {r}"))?;
                }
                ensure(c.check_fact1(&generate(FamilySpec::cyl_grid(m, n)).unwrap()), format!("fact1 cyl({m},{n})"))?;
                fact1 += 1;
            }
        }
    }
    for m in 1..=12 {
        let c = cyl3_word(m).unwrap();
        ensure(c.check_fact1(&generate(FamilySpec::cyl_grid(m, 3)).unwrap()), format!("fact1 cyl({m},3)"))?;
        fact1 += 1;
    }
    for n in 3..=50 {
        path_word_properties(&path_word(n).map_err(|e| e.to_string())?, n).map_err(|e| format!("W({n}): {e}"))?;
    }
    for n in 4..=50 {
        let (od, ev) = (od_word(n).map_err(|e| e.to_string())?, ev_word(n).map_err(|e| e.to_string())?);
        od_ev_properties(&od, &ev, n).map_err(|e| format!("Od/Ev({n}): {e}"))?;
    }
    Ok(format!("row and factor laws on the sweep, W/Od/Ev up to n = 50, Fact 1 on {fact1} words"))
}

fn grid_lower_bound(dir: &Path) -> Verdict {
    let g = generate(FamilySpec::grid(3, 3)).unwrap();
    let out = search_k_word(&g, &SearchConfig::new(2).with_time_budget(Duration::from_secs(15 * 60))).unwrap();
    ensure(out.status == SearchStatus::ExhaustedNoSolution, format!("k=2 search: {:?}", out.status))?;
    let file = dir.join("gr33.col");
    fs::write(&file, g.to_text()).unwrap();
    let cli = wordrep(&["repnum", "--graph", "gr33.col", "--max-k", "3"], dir);
    let line = stdout(&cli).lines().next().unwrap_or_default().to_string();
    ensure(cli.status.code() == Some(0) && line == "R = 3", format!("repnum printed `{line}`"))?;
    Ok(format!("k=2 exhausted in {} nodes ({:.2}s); repnum: {line}", out.nodes_expanded, out.wall_time.as_secs_f64()))
}

fn prism_lower_bound() -> Verdict {
    let g = generate(FamilySpec::cyl_grid(2, 3)).unwrap();
    ensure(g.same_edges(&generate(FamilySpec::prism(3)).unwrap()), "CGr_{2,3} differs from Pr_3")?;
    let out = search_k_word(&g, &SearchConfig::new(2)).unwrap();
    ensure(out.status == SearchStatus::ExhaustedNoSolution, format!("k=2 search: {:?}", out.status))?;
    let r = representation_number(&g, 3, &SearchConfig::new(2)).unwrap();
    ensure(r.value == Some(3), format!("repnum = {:?}", r.value))?;
    Ok(format!("k=2 exhausted in {} nodes; repnum = 3", out.nodes_expanded))
}

fn known_values() -> Verdict {
    let mut parts = Vec::new();
    for (name, spec, expected) in
        [("K_4", FamilySpec::complete(4), 1), ("P_4", FamilySpec::path(4), 2), ("C_6", FamilySpec::cycle(6), 2)]
    {
        let started = Instant::now();
        let r = representation_number(&generate(spec).unwrap(), 3, &SearchConfig::new(2)).unwrap();
        let elapsed = started.elapsed();
        ensure(r.value == Some(expected), format!("{name}: {:?}", r.value))?;
        ensure(elapsed < Duration::from_secs(1), format!("{name} took {elapsed:?}"))?;
        parts.push(format!("R({name}) = {expected}"));
    }
    Ok(parts.join(", "))
}

fn torus_constants(dir: &Path) -> Verdict {
    for (m, n, letters) in [(3, 3, "abcdefgadhigbcaehbfdeighcfi"), (3, 4, "ajbkcdaeblfcgdjahkigehfdbelcifjgkhli")] {
        // a, b, c, d, ... name x1_1, x2_1, x3_1, x1_2, ...
        let names: Vec<String> = letters
            .chars()
            .map(|c| {
                let l = c as usize - 'a' as usize;
                format!("x{}_{}", l % m + 1, l / m + 1)
            })
            .collect();
        let g = generate(FamilySpec::toroidal_grid(m, n)).unwrap();
        fs::write(dir.join("t.col"), g.to_text()).unwrap();
        fs::write(dir.join("t.w"), names.join(" ")).unwrap();
        let out = wordrep(&["verify", "t.col", "t.w"], dir);
        ensure(
            out.status.code() == Some(0) && stdout(&out).trim() == "REPRESENTS k=3",
            format!("torus {m}x{n}: exit {:?}, `{}`", out.status.code(), stdout(&out).trim()),
        )?;
    }
    Ok("both torus words verified, k=3".into())
}

fn pair_bit(n: usize, u: usize, v: usize) -> usize {
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn brute_force_masks(n: usize, k: usize) -> HashSet<u32> {
    fn extend(word: &mut Vec<usize>, left: &mut [usize], n: usize, out: &mut HashSet<u32>) {
        if left.iter().all(|&c| c == 0) {
            let mut mask = 0u32;
            for u in 0..n {
                for v in u + 1..n {
                    if alternates(word, u, v) {
                        mask |= 1 << pair_bit(n, u, v);
                    }
                }
            }
            out.insert(mask);
            return;
        }
        for x in 0..n {
            if left[x] > 0 {
                left[x] -= 1;
                word.push(x);
                extend(word, left, n, out);
                word.pop();
                left[x] += 1;
            }
        }
    }
    let mut out = HashSet::new();
    extend(&mut Vec::new(), &mut vec![k; n], n, &mut out);
    out
}

fn search_soundness() -> Verdict {
    let started = Instant::now();
    let mut graphs = 0;
    for n in 1..=5 {
        for k in 1..=2 {
            let masks = brute_force_masks(n, k);
            for mask in 0..1u32 << (n * (n - 1) / 2) {
                let edges = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| mask >> pair_bit(n, u, v) & 1 == 1);
                let g = Graph::from_edges(n, edges).unwrap();
                let expected = masks.contains(&mask);
                for sym in [true, false] {
                    let out = search_k_word(&g, &SearchConfig::new(k).with_symmetry_breaking(sym)).unwrap();
                    ensure(
                        out.status != SearchStatus::BudgetExceeded && out.found() == expected,
                        format!("n={n} k={k} mask={mask:#b} symmetry={sym}: {:?}, brute force {expected}", out.status),
                    )?;
                }
                graphs += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("{graphs} (graph, k) pairs agree, with and without symmetry breaking, in {:.1}s", elapsed.as_secs_f64()))
}

fn explore(dir: &Path, args: &[&str]) -> Result<(Value, Option<i32>), String> {
    let mut full = vec!["--json", "explore-conjecture"];
    full.extend_from_slice(args);
    let out = wordrep(&full, dir);
    let v: Value = serde_json::from_str(&stdout(&out)).map_err(|e| format!("{args:?}: bad JSON: {e}"))?;
    Ok((v, out.status.code()))
}

fn conjecture_exploration(dir: &Path) -> Verdict {
    let (v, code) = explore(dir, &["3", "5", "3", "--budget-nodes", "200000"])?;
    let rec = &v["records"][0];
    ensure(code == Some(0), format!("3x5 exit {code:?}"))?;
    ensure(
        v["overall"] == "inconclusive"
            && rec["status"] == "inconclusive"
            && rec["details"]["status"] == "BudgetExceeded"
            && rec["details"]["conclusion"] == "budget exceeded: no conclusion",
        format!("3x5 bounded run: {rec}"),
    )?;
    let mut found = Vec::new();
    for (m, n) in [(3usize, 3usize), (3, 4)] {
        let (v, code) = explore(dir, &[&m.to_string(), &n.to_string(), "3"])?;
        let rec = &v["records"][0];
        ensure(code == Some(0) && rec["details"]["status"] == "Found", format!("{m}x{n}: {rec}"))?;
        let text = rec["details"]["witness"].as_str().ok_or("no witness")?;
        let word = Word::parse(text, &Naming::grid(m, n)).map_err(|e| e.to_string())?;
        let ids: Vec<usize> = word.letters().iter().map(|l| l.index()).collect();
        ensure(independently_represents_torus(&ids, m, n, 3), format!("{m}x{n} witness fails re-verification"))?;
        found.push(format!("{m}x{n} Found ({} nodes)", rec["details"]["nodes_expanded"]));
    }
    Ok(format!("3x5 with 2e5 nodes: inconclusive; {}; witnesses re-verified", found.join(", ")))
}

fn paper_check_report(dir: &Path) -> Verdict {
    let out = wordrep(&["--json", "paper-check", "--max-size", "12"], dir);
    let v: Value = serde_json::from_str(&stdout(&out)).map_err(|e| format!("bad JSON: {e}"))?;
    let records = v["records"].as_array().ok_or("no records")?;
    ensure(out.status.code() == Some(0) && v["overall"] == "pass", format!("overall {}", v["overall"]))?;
    for r in records {
        ensure(r["anchor"].as_str().is_some_and(|a| !a.is_empty()), format!("record {} has no anchor", r["claim_id"]))?;
        ensure(r["status"] == "pass", format!("record {} is {}", r["claim_id"], r["status"]))?;
    }
    Ok(format!("overall pass, {} records, all anchored", records.len()))
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let criteria: Vec<Criterion> = vec![
        ("1 construction sweep", Box::new(construction_sweep)),
        ("2 structural laws", Box::new(structural_laws)),
        ("3 grid 3x3 lower bound", Box::new(|| grid_lower_bound(d))),
        ("4 prism lower bound", Box::new(prism_lower_bound)),
        ("5 known values", Box::new(known_values)),
        ("6 torus constants", Box::new(|| torus_constants(d))),
        ("7 search soundness", Box::new(search_soundness)),
        ("8 conjecture exploration", Box::new(|| conjecture_exploration(d))),
        ("9 paper-check report", Box::new(|| paper_check_report(d))),
    ];
    let mut failed = Vec::new();
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
