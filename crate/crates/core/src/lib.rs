//! Construction, verification and search of uniform word-representants for
//! grid-like graphs.
//!
//! * [`words`]: alternation words, occurrence indexing, the induced graph.
//! * [`graphs`]: simple graphs, path/cycle/ladder/prism/grid/cylinder/torus
//!   generators, the edge-list file format.
//! * [`constructions`]: explicit 3-uniform words for grids and cylinders,
//!   built by occurrence-anchored splicing, and the two known torus words.
//! * [`search`]: pruned backtracking for `k`-uniform representants and the
//!   representation number.
//! * [`check`]: the bundled verification suite behind `paper-check`.

pub mod check;
pub mod constructions;
pub mod graphs;
pub mod report;
pub mod search;
pub mod words;

pub use constructions::{
    cyl3_word, cyl_word, ev_word, grid_word, od_word, path_word, splice, torus_word, ConstructionError, Substitution,
    SubstitutionPlan,
};
pub use graphs::{generate, Family, FamilySpec, Graph, GraphError};
pub use report::{CheckRecord, Report, Status};
pub use search::{
    representation_number, search_k_word, Pruning, RepnumResult, SearchConfig, SearchError, SearchOutcome, SearchStatus,
};
pub use words::{Letter, Naming, OccurrenceRef, Word, WordError};
