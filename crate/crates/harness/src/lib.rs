//! Corpus construction, recognizer-gated fixture search, and the
//! verification run that checks the classification and its supporting
//! lemmas on every instance.

pub mod corpus;
pub mod fixtures;
pub mod sampler;
pub mod verify;

pub use corpus::{
    build_corpus, CorpusConfig, Expect, Instance, Object, RandomGraphs, Source, Sweep,
};
pub use fixtures::{fixture_search, load_fixtures, write_fixture};
pub use verify::{verify_theorems, Finding, Report, Suites, Summary, Toggles};
