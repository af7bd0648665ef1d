//! Alternation words over a dense integer alphabet.
//!
//! A [`Word`] is a sequence of [`Letter`]s whose ids lie below the word's
//! alphabet size. Occurrences are addressed with [`OccurrenceRef`], the
//! `x^i` handle: the `i`-th appearance of `x`, counting from the left and
//! starting at 1. Every position that leaves this module (errors, factor
//! locations, occurrence lists) is 1-based.
//!
//! Two letters *alternate* when the word restricted to them has no two equal
//! neighbours. A restriction with at most one symbol counts as alternating;
//! for uniform words covering the whole alphabet that case never arises.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::graphs::Graph;

/// A vertex id used as a word symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Letter {
    fn from(id: usize) -> Self {
        Letter(id as u32)
    }
}

/// `letter^index`, with `index` starting at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OccurrenceRef {
    pub letter: Letter,
    pub index: usize,
}

impl OccurrenceRef {
    pub fn new(letter: impl Into<Letter>, index: usize) -> Self {
        OccurrenceRef { letter: letter.into(), index }
    }
}

impl fmt::Display for OccurrenceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}^{}", self.letter.0 + 1, self.index)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter id {letter} is outside the alphabet of size {alphabet_size}")]
    InvalidLetter { letter: u32, alphabet_size: usize },
    #[error("alternation needs two distinct letters, got {0} twice")]
    InvalidPair(u32),
    #[error("word alphabet has {alphabet} letters but the graph has {vertices} vertices")]
    SizeMismatch { alphabet: usize, vertices: usize },
    #[error("occurrence {0} does not exist in the word")]
    NoSuchOccurrence(OccurrenceRef),
    #[error("empty factor pattern")]
    EmptyPattern,
    #[error("line {line}: unknown vertex name `{token}`")]
    UnknownName { line: usize, token: String },
    #[error("word file contains no letters")]
    EmptyWord,
}

/// A finite word over the alphabet `0..alphabet_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet_size: usize,
}

impl Word {
    pub fn new(letters: Vec<Letter>, alphabet_size: usize) -> Result<Self, WordError> {
        if let Some(bad) = letters.iter().find(|l| l.index() >= alphabet_size) {
            return Err(WordError::InvalidLetter { letter: bad.0, alphabet_size });
        }
        Ok(Word { letters, alphabet_size })
    }

    /// Builds a word from raw ids.
    pub fn from_ids<I>(ids: I, alphabet_size: usize) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = usize>,
    {
        Word::new(ids.into_iter().map(Letter::from).collect(), alphabet_size)
    }

    /// Builds a word whose alphabet is `0..=max id`.
    pub fn from_ids_dense<I>(ids: I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        let letters: Vec<Letter> = ids.into_iter().map(Letter::from).collect();
        let alphabet_size = letters.iter().map(|l| l.index() + 1).max().unwrap_or(0);
        Word { letters, alphabet_size }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same letters over a larger alphabet.
    pub fn widen(mut self, alphabet_size: usize) -> Result<Self, WordError> {
        if alphabet_size < self.alphabet_size {
            if let Some(bad) = self.letters.iter().find(|l| l.index() >= alphabet_size) {
                return Err(WordError::InvalidLetter { letter: bad.0, alphabet_size });
            }
        }
        self.alphabet_size = alphabet_size;
        Ok(self)
    }

    fn check_letter(&self, x: Letter) -> Result<(), WordError> {
        if x.index() >= self.alphabet_size {
            Err(WordError::InvalidLetter { letter: x.0, alphabet_size: self.alphabet_size })
        } else {
            Ok(())
        }
    }

    /// Number of times each alphabet letter occurs.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.alphabet_size];
        for l in &self.letters {
            counts[l.index()] += 1;
        }
        counts
    }

    /// 1-based positions of `x`, in increasing order.
    pub fn occurrences(&self, x: Letter) -> Result<Vec<usize>, WordError> {
        self.check_letter(x)?;
        Ok(self.letters.iter().enumerate().filter(|(_, &l)| l == x).map(|(p, _)| p + 1).collect())
    }

    /// Positions of all letters, built in one pass.
    pub fn index(&self) -> OccurrenceIndex {
        OccurrenceIndex::new(self)
    }

    /// True iff every alphabet letter occurs exactly `k` times.
    pub fn is_k_uniform(&self, k: usize) -> bool {
        self.counts().iter().all(|&c| c == k)
    }

    /// The common multiplicity, if the word is uniform over its alphabet.
    pub fn uniformity(&self) -> Option<usize> {
        let counts = self.counts();
        let first = *counts.first()?;
        counts.iter().all(|&c| c == first).then_some(first)
    }

    pub fn alternates(&self, x: Letter, y: Letter) -> Result<bool, WordError> {
        self.check_letter(x)?;
        self.check_letter(y)?;
        if x == y {
            return Err(WordError::InvalidPair(x.0));
        }
        let mut last: Option<Letter> = None;
        for &l in &self.letters {
            if l == x || l == y {
                if last == Some(l) {
                    return Ok(false);
                }
                last = Some(l);
            }
        }
        Ok(true)
    }

    /// The graph on the word's alphabet whose edges are the alternating pairs.
    pub fn graph(&self) -> Graph {
        let index = self.index();
        let n = self.alphabet_size;
        let mut edges = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if index.alternates(x, y) {
                    edges.push((x, y));
                }
            }
        }
        Graph::from_edges(n, edges).expect("alternating pairs form a simple graph")
    }

    /// [`Word::graph`] carrying the given vertex names.
    pub fn graph_named(&self, names: &Naming) -> Graph {
        let mut g = self.graph();
        g.set_names(names.names().to_vec()).expect("naming matches alphabet");
        g
    }

    /// True iff the alternating pairs of the word are exactly the edges of `g`.
    pub fn represents(&self, g: &Graph) -> Result<bool, WordError> {
        Ok(self.first_mismatch(g)?.is_none())
    }

    /// The first vertex pair (in lexicographic order) on which the word and
    /// the graph disagree.
    pub fn first_mismatch(&self, g: &Graph) -> Result<Option<Mismatch>, WordError> {
        if self.alphabet_size != g.vertex_count() {
            return Err(WordError::SizeMismatch { alphabet: self.alphabet_size, vertices: g.vertex_count() });
        }
        let index = self.index();
        let n = self.alphabet_size;
        for x in 0..n {
            for y in x + 1..n {
                let alternates = index.alternates(x, y);
                let edge = g.has_edge(x, y);
                if alternates != edge {
                    return Ok(Some(Mismatch { x: Letter::from(x), y: Letter::from(y), edge, alternates }));
                }
            }
        }
        Ok(None)
    }

    /// 1-based position of an occurrence.
    pub fn position(&self, occ: OccurrenceRef) -> Result<usize, WordError> {
        self.check_letter(occ.letter)?;
        if occ.index == 0 {
            return Err(WordError::NoSuchOccurrence(occ));
        }
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == occ.letter)
            .nth(occ.index - 1)
            .map(|(p, _)| p + 1)
            .ok_or(WordError::NoSuchOccurrence(occ))
    }

    /// `a < b` in the order of positions.
    pub fn occurrence_before(&self, a: OccurrenceRef, b: OccurrenceRef) -> Result<bool, WordError> {
        Ok(self.position(a)? < self.position(b)?)
    }

    /// Start position of the factor formed by `pattern`, if its occurrences
    /// sit next to each other in the given order.
    pub fn find_factor(&self, pattern: &[OccurrenceRef]) -> Result<Option<usize>, WordError> {
        let (first, rest) = pattern.split_first().ok_or(WordError::EmptyPattern)?;
        let start = self.position(*first)?;
        let mut contiguous = true;
        for (offset, occ) in rest.iter().enumerate() {
            if self.position(*occ)? != start + offset + 1 {
                contiguous = false;
            }
        }
        Ok(contiguous.then_some(start))
    }

    /// Cyclic left rotation by `t` positions.
    pub fn rotate(&self, t: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let t = t % letters.len();
            letters.rotate_left(t);
        }
        Word { letters, alphabet_size: self.alphabet_size }
    }

    /// Checks that for every edge `xy` of `g` and every `i >= 2`,
    /// `x^i` follows `y^(i-1)` and `y^i` follows `x^(i-1)`.
    pub fn check_fact1(&self, g: &Graph) -> bool {
        if g.vertex_count() != self.alphabet_size {
            return false;
        }
        let index = self.index();
        g.edges().all(|(x, y)| {
            let (px, py) = (index.positions(x), index.positions(y));
            let upto = px.len().min(py.len());
            (2..=upto).all(|i| px[i - 1] > py[i - 2] && py[i - 1] > px[i - 2])
        })
    }

    /// The subword on the letters accepted by `keep`, relabelled through it.
    /// `keep(x)` returns the new id of `x`, or `None` to drop it.
    pub fn restrict<F>(&self, alphabet_size: usize, mut keep: F) -> Result<Word, WordError>
    where
        F: FnMut(Letter) -> Option<usize>,
    {
        Word::from_ids(self.letters.iter().filter_map(|&l| keep(l)), alphabet_size)
    }

    /// Word file text: tokens separated by single spaces, one line.
    pub fn to_text(&self, names: &Naming) -> String {
        let mut out = String::with_capacity(self.letters.len() * 5);
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(names.name(l.index()));
        }
        out.push('\n');
        out
    }

    /// Parses a word file. Tokens are looked up in `names`; plain integers are
    /// taken as 1-based vertex ids.
    pub fn parse(text: &str, names: &Naming) -> Result<Word, WordError> {
        let mut ids = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim_start().starts_with('#') {
                continue;
            }
            for token in line.split_ascii_whitespace() {
                let id = names
                    .lookup(token)
                    .ok_or_else(|| WordError::UnknownName { line: lineno + 1, token: token.to_string() })?;
                ids.push(id);
            }
        }
        if ids.is_empty() {
            return Err(WordError::EmptyWord);
        }
        Word::from_ids(ids, names.len())
    }
}

/// A pair on which a word and a graph disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub x: Letter,
    pub y: Letter,
    pub edge: bool,
    pub alternates: bool,
}

/// Positions of every letter of a word.
#[derive(Clone, Debug)]
pub struct OccurrenceIndex {
    positions: Vec<Vec<usize>>,
}

impl OccurrenceIndex {
    pub fn new(word: &Word) -> Self {
        let mut positions = vec![Vec::new(); word.alphabet_size()];
        for (p, l) in word.letters().iter().enumerate() {
            positions[l.index()].push(p + 1);
        }
        OccurrenceIndex { positions }
    }

    pub fn positions(&self, x: usize) -> &[usize] {
        &self.positions[x]
    }

    /// Alternation of `x` and `y`, from their sorted position lists.
    pub fn alternates(&self, x: usize, y: usize) -> bool {
        let (px, py) = (&self.positions[x], &self.positions[y]);
        if px.is_empty() || py.is_empty() {
            return px.len() <= 1 && py.len() <= 1;
        }
        // the restriction alternates iff it is x y x y ... or y x y x ...
        let (a, b) = if px[0] < py[0] { (px, py) } else { (py, px) };
        if a.len() != b.len() && a.len() != b.len() + 1 {
            return false;
        }
        for i in 0..b.len() {
            if b[i] < a[i] {
                return false;
            }
            if let Some(&next) = a.get(i + 1) {
                if next < b[i] {
                    return false;
                }
            }
        }
        true
    }
}

/// Vertex names with reverse lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naming {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Naming {
    pub fn new(names: Vec<String>) -> Self {
        let lookup = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Naming { names, lookup }
    }

    /// `x{i}_{j}` names for an `m x n` grid in row-major order.
    pub fn grid(m: usize, n: usize) -> Self {
        Naming::new(crate::graphs::grid_names(m, n))
    }

    /// `x1 .. xn`.
    pub fn indexed(n: usize) -> Self {
        Naming::new((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn lookup(&self, token: &str) -> Option<usize> {
        if let Some(&id) = self.lookup.get(token) {
            return Some(id);
        }
        match token.parse::<usize>() {
            Ok(v) if v >= 1 && v <= self.names.len() => Some(v - 1),
            _ => None,
        }
    }
}
