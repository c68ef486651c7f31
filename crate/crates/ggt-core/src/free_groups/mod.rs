//! Exact arithmetic in free groups and Stallings-folding automata for
//! finitely generated subgroup membership.

pub mod automaton;
pub mod word;

pub use automaton::{is_free_basis, ShortlexWords, SubgroupAutomaton};
pub use word::{word, Generator, Letter, Sign, Word, WordParseError};
