//! Verification harness: built-in groups, group files, theorem predicates
//! over vanishing elements, a corpus runner and a persistent table cache.

pub mod analysis;
pub mod cache;
pub mod catalog;
pub mod corpus;
pub mod error;
pub mod groupfile;
pub mod theorems;

pub use analysis::Analysis;
pub use cache::{cache_key, cached_table, CacheStatus};
pub use catalog::{builtin_group, direct_product, NamedGroup};
pub use corpus::{corpus_cases, corpus_groups, run_cases, run_corpus, CorpusReport};
pub use error::{HarnessError, Result};
pub use groupfile::{format_group_file, load_group, parse_group_file};
pub use theorems::{
    evaluate, Conclusion, Hypothesis, Outcome, Param, ParamKind, TheoremCase, TheoremId,
    VerificationReport,
};
