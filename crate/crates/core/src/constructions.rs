//! Explicit 3-uniform representants for paths, cycles, grids, cylinders and
//! the two small tori.
//!
//! The grid and cylinder words are built row by row. Each step takes the word
//! for rows `1..m-1` and splices the letters of row `m` around chosen
//! occurrences of row `m-1` letters. All anchors of a step are resolved
//! against the word *before* the step and applied at once (see [`splice`]).
//!
//! Letter ids follow the row-major grid numbering of [`crate::graphs`].
//! Checked constructors re-verify their output against the target graph and
//! fail with [`ConstructionError::VerificationFailed`] on any mismatch.

use thiserror::Error;

use crate::graphs::{generate, grid_id, FamilySpec, Graph};
use crate::words::{Letter, OccurrenceRef, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("anchor {0:?} not found in the base word")]
    AnchorNotFound(Vec<OccurrenceRef>),
    #[error("anchor {0:?} is not a factor of the base word")]
    NotAFactor(Vec<OccurrenceRef>),
    #[error("anchors {0:?} and {1:?} overlap")]
    OverlappingAnchors(Vec<OccurrenceRef>, Vec<OccurrenceRef>),
    #[error("replacement {replacement:?} does not contain the anchor letters {anchor:?} in order")]
    AnchorNotKept { anchor: Vec<OccurrenceRef>, replacement: Vec<Letter> },
    #[error("size out of range: {0}")]
    InvalidSize(String),
    #[error("no known 3-uniform word for the {m}x{n} torus; use the search instead")]
    NoKnownWord { m: usize, n: usize },
    #[error("constructed word for {target} failed verification: {reason}")]
    VerificationFailed { target: String, reason: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One "replace the anchor by this sequence" rule.
///
/// The anchor is a single occurrence or a factor of consecutive occurrences.
/// Its letters appear in `replacement` exactly at `anchor_slots`, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub anchor: Vec<OccurrenceRef>,
    pub replacement: Vec<Letter>,
    pub anchor_slots: Vec<usize>,
}

impl Substitution {
    /// Locates the anchor letters inside `replacement` left to right.
    pub fn new(anchor: Vec<OccurrenceRef>, replacement: Vec<Letter>) -> Result<Self, ConstructionError> {
        let mut slots = Vec::with_capacity(anchor.len());
        let mut from = 0;
        for occ in &anchor {
            match replacement[from..].iter().position(|&l| l == occ.letter) {
                Some(offset) => {
                    slots.push(from + offset);
                    from += offset + 1;
                }
                None => {
                    return Err(ConstructionError::AnchorNotKept { anchor, replacement });
                }
            }
        }
        Ok(Substitution { anchor, replacement, anchor_slots: slots })
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        let not_kept =
            || ConstructionError::AnchorNotKept { anchor: self.anchor.clone(), replacement: self.replacement.clone() };
        if self.anchor.is_empty() || self.anchor.len() != self.anchor_slots.len() {
            return Err(not_kept());
        }
        if self.anchor_slots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(not_kept());
        }
        for (occ, &slot) in self.anchor.iter().zip(&self.anchor_slots) {
            if self.replacement.get(slot) != Some(&occ.letter) {
                return Err(not_kept());
            }
        }
        Ok(())
    }
}

/// A set of substitutions applied simultaneously, producing a word over
/// `alphabet_size` letters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubstitutionPlan {
    pub targets: Vec<Substitution>,
    pub alphabet_size: usize,
}

impl SubstitutionPlan {
    pub fn new(alphabet_size: usize) -> Self {
        SubstitutionPlan { targets: Vec::new(), alphabet_size }
    }

    /// Adds a rule replacing `anchor` by `replacement`.
    pub fn replace(
        &mut self,
        anchor: Vec<OccurrenceRef>,
        replacement: Vec<Letter>,
    ) -> Result<&mut Self, ConstructionError> {
        self.targets.push(Substitution::new(anchor, replacement)?);
        Ok(self)
    }
}

/// Applies every substitution of `plan` to `base`. Anchors refer to
/// occurrence indices of `base` and must be pairwise disjoint.
pub fn splice(base: &Word, plan: &SubstitutionPlan) -> Result<Word, ConstructionError> {
    let index = base.index();
    let mut spans: Vec<(usize, usize, &Substitution)> = Vec::with_capacity(plan.targets.len());
    for sub in &plan.targets {
        sub.validate()?;
        let mut positions = Vec::with_capacity(sub.anchor.len());
        for occ in &sub.anchor {
            if occ.letter.index() >= base.alphabet_size() {
                return Err(ConstructionError::AnchorNotFound(sub.anchor.clone()));
            }
            let p = occ
                .index
                .checked_sub(1)
                .and_then(|i| index.positions(occ.letter.index()).get(i))
                .ok_or_else(|| ConstructionError::AnchorNotFound(sub.anchor.clone()))?;
            positions.push(*p);
        }
        if positions.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(ConstructionError::NotAFactor(sub.anchor.clone()));
        }
        spans.push((positions[0], positions[positions.len() - 1], sub));
    }
    spans.sort_by_key(|&(start, _, _)| start);
    for pair in spans.windows(2) {
        if pair[1].0 <= pair[0].1 {
            return Err(ConstructionError::OverlappingAnchors(pair[0].2.anchor.clone(), pair[1].2.anchor.clone()));
        }
    }

    let extra: usize = spans.iter().map(|(s, e, sub)| sub.replacement.len() - (e - s + 1)).sum();
    let mut out = Vec::with_capacity(base.len() + extra);
    let letters = base.letters();
    let mut next = 1;
    for (start, end, sub) in spans {
        out.extend_from_slice(&letters[next - 1..start - 1]);
        out.extend_from_slice(&sub.replacement);
        next = end + 1;
    }
    out.extend_from_slice(&letters[next - 1..]);
    Ok(Word::new(out, plan.alphabet_size)?)
}

fn sequence_word(ids: impl IntoIterator<Item = usize>, n: usize) -> Word {
    Word::from_ids(ids, n).expect("construction ids lie in the alphabet")
}

/// The path representant `x1 x2 x1 x3 x2 x1 ... xn x(n-1) x(n-2) xn x(n-1) xn`
/// over ids `0..n`. For `n = 1, 2` this is `x1 x1 x1` and `(x1 x2)^3`.
pub fn path_word_unchecked(n: usize) -> Result<Word, ConstructionError> {
    match n {
        0 => Err(ConstructionError::InvalidSize("path word needs n >= 1".into())),
        1 => Ok(sequence_word([0, 0, 0], 1)),
        2 => Ok(sequence_word([0, 1, 0, 1, 0, 1], 2)),
        _ => {
            // block t lists x_t, x_(t-1), x_(t-2), skipping indices outside 1..=n
            let ids = (1..=n + 2).flat_map(|t| {
                (0..3).filter_map(move |back| {
                    let s = t.checked_sub(back)?;
                    (1..=n).contains(&s).then(|| s - 1)
                })
            });
            Ok(sequence_word(ids, n))
        }
    }
}

/// The word `Od` for the cycle on `n >= 4` vertices.
pub fn od_word_unchecked(n: usize) -> Result<Word, ConstructionError> {
    if n < 4 {
        return Err(ConstructionError::InvalidSize(format!("Od needs n >= 4, got {n}")));
    }
    let mut ids = first_two_rounds(n);
    ids.extend(closing_permutation(n));
    Ok(sequence_word(ids, n))
}

/// The word `Ev`: `Od` with its closing permutation moved to the front.
pub fn ev_word_unchecked(n: usize) -> Result<Word, ConstructionError> {
    if n < 4 {
        return Err(ConstructionError::InvalidSize(format!("Ev needs n >= 4, got {n}")));
    }
    let mut ids = closing_permutation(n);
    ids.extend(first_two_rounds(n));
    Ok(sequence_word(ids, n))
}

// x1 xn x2 x1 x3 x2 ... x(n-1) x(n-2) xn x(n-1), 0-based
fn first_two_rounds(n: usize) -> Vec<usize> {
    let mut ids = vec![0, n - 1];
    for j in 2..n {
        ids.extend([j - 1, j - 2]);
    }
    ids.extend([n - 1, n - 2]);
    ids
}

// x1 x2 ... x(n-2) xn x(n-1), 0-based
fn closing_permutation(n: usize) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..n - 2).collect();
    ids.extend([n - 1, n - 2]);
    ids
}

/// Occurrence of `x{i}_{j}` in a grid with `n` columns.
fn at(n: usize, i: usize, j: usize, index: usize) -> OccurrenceRef {
    OccurrenceRef::new(grid_id(n, i, j), index)
}

/// Letters of row `i`, columns `cols`.
fn row_letters(n: usize, cells: &[(usize, usize)]) -> Vec<Letter> {
    cells.iter().map(|&(i, j)| Letter::from(grid_id(n, i, j))).collect()
}

/// Embeds a word over `0..n` as row 1 of a grid with `n` columns.
fn as_first_row(word: &Word, n: usize) -> Word {
    word.clone().widen(n).expect("row word fits")
}

/// Representant of the `m x n` grid graph, `n >= 3`.
pub fn grid_word_unchecked(m: usize, n: usize) -> Result<Word, ConstructionError> {
    if m < 1 || n < 3 {
        return Err(ConstructionError::InvalidSize(format!("grid word needs m >= 1, n >= 3, got {m}x{n}")));
    }
    let mut word = as_first_row(&path_word_unchecked(n)?, n);
    let k = n / 2;
    for r in 2..=m {
        let p = r - 1;
        let mut plan = SubstitutionPlan::new(r * n);
        plan.replace(vec![at(n, p, 1, 2)], row_letters(n, &[(r, 1), (p, 1), (r, 2), (r, 1)]))?;
        for t in 1..k {
            plan.replace(
                vec![at(n, p, 2 * t + 1, 2), at(n, p, 2 * t, 3)],
                row_letters(
                    n,
                    &[
                        (r, 2 * t + 1),
                        (p, 2 * t + 1),
                        (r, 2 * t),
                        (r, 2 * t - 1),
                        (r, 2 * t + 2),
                        (p, 2 * t),
                        (r, 2 * t + 1),
                        (r, 2 * t),
                    ],
                ),
            )?;
        }
        if n % 2 == 1 {
            plan.replace(
                vec![at(n, p, n, 2), at(n, p, n - 1, 3)],
                row_letters(n, &[(r, n), (p, n), (r, n - 1), (p, n - 1), (r, n - 2)]),
            )?;
        }
        plan.replace(vec![at(n, p, n, 3)], row_letters(n, &[(r, n), (r, n - 1), (p, n), (r, n)]))?;
        word = splice(&word, &plan)?;
    }
    Ok(word)
}

/// Representant of the cylindrical grid with three columns.
pub fn cyl3_word_unchecked(m: usize) -> Result<Word, ConstructionError> {
    if m < 1 {
        return Err(ConstructionError::InvalidSize("cylinder word needs m >= 1".into()));
    }
    let n = 3;
    let mut word = sequence_word([0, 1, 2, 0, 1, 2, 0, 1, 2], 3);
    for r in 2..=m {
        let p = r - 1;
        let mut plan = SubstitutionPlan::new(r * n);
        plan.replace(vec![at(n, p, 1, 2)], row_letters(n, &[(r, 1), (r, 2), (p, 1)]))?;
        plan.replace(vec![at(n, p, 3, 2)], row_letters(n, &[(r, 3), (p, 3), (r, 1)]))?;
        plan.replace(vec![at(n, p, 2, 3)], row_letters(n, &[(r, 2), (r, 3), (r, 1), (p, 2), (r, 2)]))?;
        plan.replace(vec![at(n, p, 3, 3)], row_letters(n, &[(p, 3), (r, 3)]))?;
        word = splice(&word, &plan)?;
    }
    Ok(word)
}

/// Representant of the cylindrical grid `m x n`, `n >= 3`.
pub fn cyl_word_unchecked(m: usize, n: usize) -> Result<Word, ConstructionError> {
    if n < 3 || m < 1 {
        return Err(ConstructionError::InvalidSize(format!("cylinder word needs m >= 1, n >= 3, got {m}x{n}")));
    }
    if n == 3 {
        return cyl3_word_unchecked(m);
    }
    let mut word = as_first_row(&od_word_unchecked(n)?, n);
    for r in 2..=m {
        let p = r - 1;
        let mut plan = SubstitutionPlan::new(r * n);
        if r % 2 == 0 {
            for j in 1..=n {
                plan.replace(vec![at(n, p, j, 2)], row_letters(n, &[(r, j), (p, j)]))?;
            }
            plan.replace(vec![at(n, p, 1, 3)], row_letters(n, &[(r, 1), (r, n), (p, 1)]))?;
            for j in 2..=n - 2 {
                plan.replace(vec![at(n, p, j, 3)], row_letters(n, &[(r, j), (r, j - 1), (p, j)]))?;
            }
            plan.replace(vec![at(n, p, n, 3)], row_letters(n, &[(r, n - 1), (r, n - 2), (p, n)]))?;
            plan.replace(vec![at(n, p, n - 1, 3)], row_letters(n, &[(r, n), (p, n - 1), (r, n - 1)]))?;
        } else {
            plan.replace(vec![at(n, p, 1, 2)], row_letters(n, &[(r, 1), (p, 1)]))?;
            plan.replace(vec![at(n, p, n, 2)], row_letters(n, &[(r, n), (p, n)]))?;
            for j in 2..n {
                plan.replace(vec![at(n, p, j, 2)], row_letters(n, &[(r, j), (r, j - 1), (p, j)]))?;
            }
            plan.replace(vec![at(n, p, n, 3)], row_letters(n, &[(r, n), (r, n - 1), (r, 1), (p, n)]))?;
            let mut tail: Vec<(usize, usize)> = (2..=n - 2).map(|j| (r, j)).collect();
            tail.extend([(r, n), (p, n - 1), (r, n - 1)]);
            plan.replace(vec![at(n, p, n - 1, 3)], row_letters(n, &tail))?;
        }
        word = splice(&word, &plan)?;
    }
    Ok(word)
}

/// Literal 3-uniform word for the 3x3 torus, letters `a, b, c, ...` naming
/// `x1_1, x2_1, x3_1, x1_2, ...` (column-major).
pub const TORUS_3X3_LETTERS: &str = "abcdefgadhigbcaehbfdeighcfi";
/// Literal 3-uniform word for the 3x4 torus, same lettering.
pub const TORUS_3X4_LETTERS: &str = "ajbkcdaeblfcgdjahkigehfdbelcifjgkhli";

/// Maps a column-major letter (`a` = `x1_1`) of an `m`-row torus with `n`
/// columns to its row-major id.
pub fn torus_letter_id(letter: char, m: usize, n: usize) -> Option<usize> {
    let l = (letter as u32).checked_sub('a' as u32)? as usize;
    if l >= m * n {
        return None;
    }
    Some(grid_id(n, l % m + 1, l / m + 1))
}

pub fn torus_word_unchecked(m: usize, n: usize) -> Result<Word, ConstructionError> {
    let literal = match (m, n) {
        (3, 3) => TORUS_3X3_LETTERS,
        (3, 4) => TORUS_3X4_LETTERS,
        _ => return Err(ConstructionError::NoKnownWord { m, n }),
    };
    let ids = literal.chars().map(|c| torus_letter_id(c, m, n).expect("literal uses the torus alphabet"));
    Ok(sequence_word(ids, m * n))
}

fn verified(word: Word, k: usize, spec: FamilySpec) -> Result<Word, ConstructionError> {
    let g = generate(spec).map_err(|e| ConstructionError::InvalidSize(e.to_string()))?;
    verify_against(word, k, &g, &spec.to_string())
}

fn verify_against(word: Word, k: usize, g: &Graph, target: &str) -> Result<Word, ConstructionError> {
    let fail = |reason: String| ConstructionError::VerificationFailed { target: target.to_string(), reason };
    if !word.is_k_uniform(k) {
        return Err(fail(format!("not {k}-uniform")));
    }
    match word.first_mismatch(g)? {
        None => Ok(word),
        Some(mm) => Err(fail(format!(
            "pair ({}, {}): edge={} alternates={}",
            g.name(mm.x.index()),
            g.name(mm.y.index()),
            mm.edge,
            mm.alternates
        ))),
    }
}

/// [`path_word_unchecked`], verified against the path graph.
pub fn path_word(n: usize) -> Result<Word, ConstructionError> {
    let word = path_word_unchecked(n)?;
    verified(word, 3, FamilySpec::path(n))
}

/// [`od_word_unchecked`], verified against the cycle.
pub fn od_word(n: usize) -> Result<Word, ConstructionError> {
    verified(od_word_unchecked(n)?, 3, FamilySpec::cycle(n))
}

/// [`ev_word_unchecked`], verified against the cycle.
pub fn ev_word(n: usize) -> Result<Word, ConstructionError> {
    verified(ev_word_unchecked(n)?, 3, FamilySpec::cycle(n))
}

pub fn grid_word(m: usize, n: usize) -> Result<Word, ConstructionError> {
    verified(grid_word_unchecked(m, n)?, 3, FamilySpec::grid(m, n))
}

pub fn cyl3_word(m: usize) -> Result<Word, ConstructionError> {
    verified(cyl3_word_unchecked(m)?, 3, FamilySpec::cyl_grid(m, 3))
}

pub fn cyl_word(m: usize, n: usize) -> Result<Word, ConstructionError> {
    verified(cyl_word_unchecked(m, n)?, 3, FamilySpec::cyl_grid(m, n))
}

pub fn torus_word(m: usize, n: usize) -> Result<Word, ConstructionError> {
    verified(torus_word_unchecked(m, n)?, 3, FamilySpec::toroidal_grid(m, n))
}

/// Row `row` of a grid word, relabelled to `x1 .. xn`.
pub fn row_subword(word: &Word, n: usize, row: usize) -> Word {
    let lo = (row - 1) * n;
    word.restrict(n, |l| (lo..lo + n).contains(&l.index()).then(|| l.index() - lo)).expect("relabelled ids lie below n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FamilySpec;

    fn ids(word: &Word) -> Vec<usize> {
        word.letters().iter().map(|l| l.index()).collect()
    }

    #[test]
    fn splice_examples() {
        let base = Word::from_ids([0, 1, 0], 3).unwrap();
        let mut plan = SubstitutionPlan::new(3);
        plan.replace(vec![OccurrenceRef::new(0usize, 2)], vec![Letter(2), Letter(0)]).unwrap();
        assert_eq!(ids(&splice(&base, &plan).unwrap()), [0, 1, 2, 0]);

        let mut overlapping = SubstitutionPlan::new(3);
        overlapping.replace(vec![OccurrenceRef::new(0usize, 2)], vec![Letter(0)]).unwrap();
        overlapping
            .replace(vec![OccurrenceRef::new(1usize, 1), OccurrenceRef::new(0usize, 2)], vec![Letter(1), Letter(0)])
            .unwrap();
        assert!(matches!(splice(&base, &overlapping), Err(ConstructionError::OverlappingAnchors(..))));
    }

    #[test]
    fn splice_errors() {
        let base = Word::from_ids([0, 1, 0], 3).unwrap();
        let mut missing = SubstitutionPlan::new(3);
        missing.replace(vec![OccurrenceRef::new(0usize, 3)], vec![Letter(0)]).unwrap();
        assert!(matches!(splice(&base, &missing), Err(ConstructionError::AnchorNotFound(_))));

        let mut gap = SubstitutionPlan::new(3);
        gap.replace(vec![OccurrenceRef::new(0usize, 1), OccurrenceRef::new(0usize, 2)], vec![Letter(0), Letter(0)])
            .unwrap();
        assert!(matches!(splice(&base, &gap), Err(ConstructionError::NotAFactor(_))));

        assert!(matches!(
            Substitution::new(vec![OccurrenceRef::new(0usize, 1)], vec![Letter(2)]),
            Err(ConstructionError::AnchorNotKept { .. })
        ));
    }

    #[test]
    fn splice_on_path_word_gives_two_row_grid() {
        let word = grid_word_unchecked(2, 4).unwrap();
        assert_eq!(word.len(), 24);
        assert!(word.is_k_uniform(3));
        let g = generate(FamilySpec::grid(2, 4)).unwrap();
        assert!(word.represents(&g).unwrap());
    }

    #[test]
    fn path_word_examples() {
        assert_eq!(ids(&path_word(3).unwrap()), [0, 1, 0, 2, 1, 0, 2, 1, 2]);
        let w4 = path_word(4).unwrap();
        assert_eq!(w4.len(), 12);
        // x4^2 after x2^3
        assert!(w4.occurrence_before(OccurrenceRef::new(1usize, 3), OccurrenceRef::new(3usize, 2)).unwrap());
        let w5 = path_word(5).unwrap();
        for t in 0..4usize {
            for i in 1..=3 {
                assert!(w5.occurrence_before(OccurrenceRef::new(t, i), OccurrenceRef::new(t + 1, i)).unwrap());
            }
        }
        assert_eq!(ids(&path_word(1).unwrap()), [0, 0, 0]);
        assert_eq!(ids(&path_word(2).unwrap()), [0, 1, 0, 1, 0, 1]);
        assert!(matches!(path_word(0), Err(ConstructionError::InvalidSize(_))));
    }

    #[test]
    fn od_ev_examples() {
        assert_eq!(ids(&od_word(4).unwrap()), [0, 3, 1, 0, 2, 1, 3, 2, 0, 1, 3, 2]);
        assert_eq!(ids(&ev_word(4).unwrap()), [0, 1, 3, 2, 0, 3, 1, 0, 2, 1, 3, 2]);
        assert!(od_word(3).is_err());
        assert!(ev_word(2).is_err());
    }

    #[test]
    fn grid_word_examples() {
        let g15 = grid_word(1, 5).unwrap();
        assert_eq!(g15, path_word(5).unwrap());
        let g33 = grid_word(3, 3).unwrap();
        assert_eq!(g33.len(), 27);
        assert!(matches!(grid_word(2, 2), Err(ConstructionError::InvalidSize(_))));
    }

    #[test]
    fn cylinder_examples() {
        assert_eq!(ids(&cyl3_word(1).unwrap()), [0, 1, 2, 0, 1, 2, 0, 1, 2]);
        assert_eq!(cyl3_word(2).unwrap().len(), 18);
        assert!(cyl3_word(0).is_err());
        assert_eq!(cyl_word(1, 5).unwrap(), od_word(5).unwrap());
        let c34 = cyl_word(3, 4).unwrap();
        assert_eq!(c34.len(), 36);
        assert_eq!(row_subword(&c34, 4, 3), od_word(4).unwrap());
        assert_eq!(row_subword(&c34, 4, 2), ev_word(4).unwrap());
        assert!(cyl_word(2, 2).is_err());
    }

    #[test]
    fn torus_examples() {
        assert_eq!(torus_word(3, 3).unwrap().len(), 27);
        assert_eq!(torus_word(3, 4).unwrap().len(), 36);
        assert_eq!(torus_word(3, 5), Err(ConstructionError::NoKnownWord { m: 3, n: 5 }));
        // b is x2_1, d is x1_2
        assert_eq!(torus_letter_id('b', 3, 4), Some(4));
        assert_eq!(torus_letter_id('d', 3, 4), Some(1));
        assert_eq!(torus_letter_id('m', 3, 4), None);
    }

    #[test]
    fn verification_catches_a_broken_word() {
        let g = generate(FamilySpec::grid(2, 3)).unwrap();
        let wrong = path_word_unchecked(6).unwrap();
        assert!(matches!(verify_against(wrong, 3, &g, "grid(2,3)"), Err(ConstructionError::VerificationFailed { .. })));
    }
}
