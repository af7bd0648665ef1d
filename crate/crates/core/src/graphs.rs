//! Simple undirected graphs, the grid-like families, and the edge-list file
//! format.
//!
//! Family generators number `x{i}_{j}` as `(i - 1) * n + (j - 1)`
//! (row-major); every other module relies on that convention.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidFamilyParams { family: Family, reason: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} vertex names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n], neighbors: vec![Vec::new(); n], names: None }
    }

    /// Graph from an edge list; rejects loops, duplicates and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::InvalidVertex { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u * self.n + v] {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        insert_sorted(&mut self.neighbors[u], v);
        insert_sorted(&mut self.neighbors[v], u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Name of vertex `v`; `v{v+1}` when the graph carries no names.
    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => format!("v{}", v + 1),
        }
    }

    /// Names for every vertex, defaults filled in.
    pub fn all_names(&self) -> Vec<String> {
        (0..self.n).map(|v| self.name(v)).collect()
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<(), GraphError> {
        if names.len() != self.n {
            return Err(GraphError::NameCount { expected: self.n, got: names.len() });
        }
        self.names = Some(names);
        Ok(())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GraphError> {
        self.set_names(names)?;
        Ok(self)
    }

    /// Same vertex count and edge set, names ignored.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj == other.adj
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Subgraph induced on `vertices`, renumbered densely in increasing order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::InvalidVertex { vertex: bad, n: self.n });
        }
        let kept: Vec<usize> = set.into_iter().collect();
        let mut sub = Graph::empty(kept.len());
        for (a, &u) in kept.iter().enumerate() {
            for (b, &v) in kept.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    sub.add_edge(a, b)?;
                }
            }
        }
        if let Some(names) = &self.names {
            sub.names = Some(kept.iter().map(|&v| names[v].clone()).collect());
        }
        Ok(sub)
    }

    /// Serializes to the edge-list format: `p edge`, then `n` name lines,
    /// then `e` lines in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p edge {} {}", self.n, self.edge_count()).unwrap();
        if let Some(names) = &self.names {
            for (i, name) in names.iter().enumerate() {
                writeln!(out, "n {} {}", i + 1, name).unwrap();
            }
        }
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let err = |line: usize, message: String| GraphError::Parse { line, message };
        let mut graph: Option<(Graph, usize)> = None;
        let mut names: Vec<Option<String>> = Vec::new();
        let mut any_name = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let mut fields = raw.split_ascii_whitespace();
            let Some(tag) = fields.next() else { continue };
            let rest: Vec<&str> = fields.collect();
            match tag {
                "c" => {}
                "p" => {
                    if graph.is_some() {
                        return Err(err(line, "second problem line".into()));
                    }
                    let [kind, n, m] = rest[..] else {
                        return Err(err(line, "expected `p edge <n> <m>`".into()));
                    };
                    if kind != "edge" {
                        return Err(err(line, format!("unsupported problem kind `{kind}`")));
                    }
                    let n = parse_num(n).ok_or_else(|| err(line, format!("bad vertex count `{n}`")))?;
                    let m = parse_num(m).ok_or_else(|| err(line, format!("bad edge count `{m}`")))?;
                    graph = Some((Graph::empty(n), m));
                    names = vec![None; n];
                }
                "n" | "e" => {
                    let Some((g, _)) = graph.as_mut() else {
                        return Err(err(line, format!("`{tag}` line before the problem line")));
                    };
                    let n = g.n;
                    let vertex = |s: &str| -> Result<usize, GraphError> {
                        match parse_num(s) {
                            Some(v) if (1..=n).contains(&v) => Ok(v - 1),
                            Some(v) => Err(err(line, format!("vertex {v} out of range 1..={n}"))),
                            None => Err(err(line, format!("bad vertex id `{s}`"))),
                        }
                    };
                    if tag == "n" {
                        let [id, name] = rest[..] else {
                            return Err(err(line, "expected `n <id> <name>`".into()));
                        };
                        let id = vertex(id)?;
                        if names[id].replace(name.to_string()).is_some() {
                            return Err(err(line, format!("vertex {} named twice", id + 1)));
                        }
                        any_name = true;
                    } else {
                        let [u, v] = rest[..] else {
                            return Err(err(line, "expected `e <u> <v>`".into()));
                        };
                        let (u, v) = (vertex(u)?, vertex(v)?);
                        g.add_edge(u, v).map_err(|e| {
                            let message = match e {
                                GraphError::SelfLoop(_) => format!("self-loop on vertex {}", u + 1),
                                GraphError::DuplicateEdge(..) => format!("duplicate edge {} {}", u + 1, v + 1),
                                other => other.to_string(),
                            };
                            err(line, message)
                        })?;
                    }
                }
                other => return Err(err(line, format!("unknown line type `{other}`"))),
            }
        }
        let Some((mut g, m)) = graph else {
            return Err(err(text.lines().count().max(1), "missing problem line".into()));
        };
        if g.edge_count() != m {
            return Err(err(
                text.lines().count().max(1),
                format!("problem line declares {m} edges, found {}", g.edge_count()),
            ));
        }
        if any_name {
            g.names = Some(
                names.into_iter().enumerate().map(|(i, name)| name.unwrap_or_else(|| format!("v{}", i + 1))).collect(),
            );
        }
        Ok(g)
    }
}

fn parse_num(s: &str) -> Option<usize> {
    s.parse().ok()
}

fn insert_sorted(list: &mut Vec<usize>, v: usize) {
    let at = list.partition_point(|&x| x < v);
    list.insert(at, v);
}

/// Graph families with generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    Ladder,
    Prism,
    Grid,
    CylGrid,
    ToroidalGrid,
    Complete,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Path,
        Family::Cycle,
        Family::Ladder,
        Family::Prism,
        Family::Grid,
        Family::CylGrid,
        Family::ToroidalGrid,
        Family::Complete,
    ];

    /// Families described by a single size.
    pub fn is_one_parameter(self) -> bool {
        matches!(self, Family::Path | Family::Cycle | Family::Ladder | Family::Prism | Family::Complete)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Ladder => "ladder",
            Family::Prism => "prism",
            Family::Grid => "grid",
            Family::CylGrid => "cyl",
            Family::ToroidalGrid => "torus",
            Family::Complete => "complete",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "ladder" => Family::Ladder,
            "prism" => Family::Prism,
            "grid" => Family::Grid,
            "cyl" | "cyl_grid" | "cylinder" => Family::CylGrid,
            "torus" | "toroidal_grid" => Family::ToroidalGrid,
            "complete" => Family::Complete,
            other => return Err(format!("unknown family `{other}`")),
        })
    }
}

/// A family member: `m` rows of `n` columns. One-parameter families keep
/// their size in `n` and have `m` fixed by the family (path and cycle use
/// one row, ladder and prism two; complete graphs ignore `m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, m: usize, n: usize) -> Self {
        FamilySpec { family, m, n }
    }

    pub fn path(n: usize) -> Self {
        FamilySpec::new(Family::Path, 1, n)
    }
    pub fn cycle(n: usize) -> Self {
        FamilySpec::new(Family::Cycle, 1, n)
    }
    pub fn ladder(n: usize) -> Self {
        FamilySpec::new(Family::Ladder, 2, n)
    }
    pub fn prism(n: usize) -> Self {
        FamilySpec::new(Family::Prism, 2, n)
    }
    pub fn grid(m: usize, n: usize) -> Self {
        FamilySpec::new(Family::Grid, m, n)
    }
    pub fn cyl_grid(m: usize, n: usize) -> Self {
        FamilySpec::new(Family::CylGrid, m, n)
    }
    pub fn toroidal_grid(m: usize, n: usize) -> Self {
        FamilySpec::new(Family::ToroidalGrid, m, n)
    }
    pub fn complete(n: usize) -> Self {
        FamilySpec::new(Family::Complete, 1, n)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let bad =
            |reason: &str| Err(GraphError::InvalidFamilyParams { family: self.family, reason: reason.to_string() });
        let (m, n) = (self.m, self.n);
        match self.family {
            Family::Cycle | Family::Prism | Family::CylGrid if n < 3 => bad("requires n >= 3"),
            Family::CylGrid if m < 1 => bad("requires m >= 1"),
            Family::ToroidalGrid if m < 3 || n < 3 => bad("requires m >= 3 and n >= 3"),
            Family::Path | Family::Ladder | Family::Complete if n < 1 => bad("requires n >= 1"),
            Family::Grid if m < 1 || n < 1 => bad("requires m >= 1 and n >= 1"),
            _ => Ok(()),
        }
    }

    /// Rows and columns of the generated vertex layout.
    pub fn shape(&self) -> (usize, usize) {
        match self.family {
            Family::Path | Family::Cycle => (1, self.n),
            Family::Ladder | Family::Prism => (2, self.n),
            Family::Complete => (1, self.n),
            Family::Grid | Family::CylGrid | Family::ToroidalGrid => (self.m, self.n),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_one_parameter() {
            write!(f, "{}({})", self.family, self.n)
        } else {
            write!(f, "{}({},{})", self.family, self.m, self.n)
        }
    }
}

/// `x{i}_{j}` in row-major order.
pub fn grid_names(m: usize, n: usize) -> Vec<String> {
    (1..=m).flat_map(|i| (1..=n).map(move |j| format!("x{i}_{j}"))).collect()
}

/// Row-major id of `x{i}_{j}` (1-based `i`, `j`) in a grid with `n` columns.
#[inline]
pub fn grid_id(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

pub fn generate(spec: FamilySpec) -> Result<Graph, GraphError> {
    spec.validate()?;
    if spec.family == Family::Complete {
        let n = spec.n;
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let names = (1..=n).map(|i| format!("v{i}")).collect();
        return Graph::from_edges(n, edges)?.with_names(names);
    }
    let (m, n) = spec.shape();
    let row_wrap = matches!(spec.family, Family::Cycle | Family::Prism | Family::CylGrid | Family::ToroidalGrid);
    let col_wrap = spec.family == Family::ToroidalGrid;
    let id = |i, j| grid_id(n, i, j);
    let mut edges = Vec::new();
    for i in 1..=m {
        for j in 1..n {
            edges.push((id(i, j), id(i, j + 1)));
        }
        if row_wrap {
            edges.push((id(i, 1), id(i, n)));
        }
    }
    for i in 1..m {
        for j in 1..=n {
            edges.push((id(i, j), id(i + 1, j)));
        }
    }
    if col_wrap {
        for j in 1..=n {
            edges.push((id(1, j), id(m, j)));
        }
    }
    Graph::from_edges(m * n, edges)?.with_names(grid_names(m, n))
}
