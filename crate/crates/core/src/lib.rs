//! Bounded tandem duplication string systems.
//!
//! A system `(Σ, s, k)` contains every word obtainable from the seed `s` by
//! repeatedly copying a block of at most `k` symbols next to itself. This
//! crate generates and counts such systems, builds exact finite automata for
//! `k <= 3`, computes capacities, and decides full expressiveness with
//! explicit witnesses.

pub mod automaton;
pub mod capacity;
pub mod enumeration;
pub mod error;
pub mod expressiveness;
pub mod strand;

pub use enumeration::{Budget, CountTable, LanguageSlice};
pub use error::{Error, Result};
pub use strand::{Alphabet, DuplicationSystem, RepeatLocation, Symbol, Word};
