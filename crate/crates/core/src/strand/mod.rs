//! Alphabets, words, duplication systems, and the single-step rewriting
//! primitives everything else is built on.
//!
//! Symbols are stored as indices into their [`Alphabet`], so a [`Word`] is a
//! plain byte string and comparisons between words are lexicographic in
//! alphabet order.

mod squarefree;

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use squarefree::{thue_square_free, thue_word};

/// Index of a symbol inside its alphabet.
pub type Symbol = u8;

/// An ordered finite set of distinct, opaque symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if symbols.len() > usize::from(Symbol::MAX) {
            return Err(Error::AlphabetTooLarge);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::UnknownSymbol(String::new()));
            }
            if index.insert(s.clone(), i as Symbol).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self { symbols, index })
    }

    /// Parses `"012"` as three single-character symbols, or `"ab,cd"` as
    /// comma-separated multi-character symbols.
    pub fn parse(text: &str) -> Result<Self> {
        if text.contains(',') {
            Self::new(text.split(',').map(str::trim))
        } else {
            Self::new(text.chars().map(String::from))
        }
    }

    /// The alphabet `{0, 1, ..., size-1}` written with decimal digits.
    /// Sizes above 10 fall back to comma-separated decimal names.
    pub fn numeric(size: usize) -> Result<Self> {
        Self::new((0..size).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl ExactSizeIterator<Item = Symbol> {
        0..self.symbols.len() as Symbol
    }

    pub fn name(&self, symbol: Symbol) -> &str {
        &self.symbols[usize::from(symbol)]
    }

    pub fn lookup(&self, name: &str) -> Result<Symbol> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let symbols = if self.single_char() && !text.contains(',') {
            text.chars()
                .map(|c| self.lookup(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split(',')
                .map(|s| self.lookup(s.trim()))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(symbols))
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        let names = word.iter().map(|&s| self.name(s));
        if self.single_char() {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(",")
        }
    }

    pub fn contains_word(&self, word: &[Symbol]) -> bool {
        word.iter().all(|&s| usize::from(s) < self.len())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.single_char() {
            f.write_str(&self.symbols.concat())
        } else {
            f.write_str(&self.symbols.join(","))
        }
    }
}

/// A finite string of symbol indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    /// True iff `factor` occurs as a contiguous substring.
    pub fn contains_factor(&self, factor: &[Symbol]) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|w| w == factor)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }
}

impl From<&[Symbol]> for Word {
    fn from(symbols: &[Symbol]) -> Self {
        Self(symbols.to_vec())
    }
}

/// The string system generated from `seed` by tandem duplications of block
/// length at most `max_dup`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicationSystem {
    alphabet: Alphabet,
    seed: Word,
    max_dup: usize,
}

impl DuplicationSystem {
    pub fn new(alphabet: Alphabet, seed: Word, max_dup: usize) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::EmptySeed);
        }
        if max_dup == 0 {
            return Err(Error::InvalidMaxDup);
        }
        if let Some(&bad) = seed.iter().find(|&&s| usize::from(s) >= alphabet.len()) {
            return Err(Error::UnknownSymbol(bad.to_string()));
        }
        Ok(Self {
            alphabet,
            seed,
            max_dup,
        })
    }

    /// Builds a system from its textual parts, e.g. `("012", "012", 3)`.
    pub fn parse(alphabet: &str, seed: &str, max_dup: usize) -> Result<Self> {
        let alphabet = Alphabet::parse(alphabet)?;
        let seed = alphabet.parse_word(seed)?;
        Self::new(alphabet, seed, max_dup)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn seed(&self) -> &Word {
        &self.seed
    }

    pub fn max_dup(&self) -> usize {
        self.max_dup
    }

    pub fn with_max_dup(&self, max_dup: usize) -> Result<Self> {
        Self::new(self.alphabet.clone(), self.seed.clone(), max_dup)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        self.alphabet.render(word)
    }

    pub fn to_doc(&self) -> SystemDoc {
        SystemDoc {
            alphabet: self.alphabet.to_string(),
            seed: self.render(&self.seed),
            kmax: self.max_dup,
        }
    }
}

/// Wire form of a [`DuplicationSystem`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub alphabet: String,
    pub seed: String,
    pub kmax: usize,
}

impl TryFrom<SystemDoc> for DuplicationSystem {
    type Error = Error;

    fn try_from(doc: SystemDoc) -> Result<Self> {
        Self::parse(&doc.alphabet, &doc.seed, doc.kmax)
    }
}

/// A square `word[offset..offset+length] == word[offset+length..offset+2*length]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepeatLocation {
    pub offset: usize,
    pub length: usize,
}

impl RepeatLocation {
    pub fn new(offset: usize, length: usize) -> Self {
        Self { offset, length }
    }

    pub fn is_valid_in(&self, word: &[Symbol]) -> bool {
        let RepeatLocation { offset, length } = *self;
        length >= 1
            && offset + 2 * length <= word.len()
            && word[offset..offset + length] == word[offset + length..offset + 2 * length]
    }
}

/// `T_{i,k}`: copies the block `x[i..i+k]` right after itself. Out-of-range
/// positions leave the word unchanged.
pub fn tandem_duplicate(x: &[Symbol], i: usize, k: usize) -> Word {
    if i + k > x.len() {
        return Word::from(x);
    }
    let mut out = Vec::with_capacity(x.len() + k);
    out.extend_from_slice(&x[..i + k]);
    out.extend_from_slice(&x[i..]);
    Word(out)
}

/// Smallest square (by offset, then block length) with block length at most
/// `max_len`.
pub fn find_tandem_repeat(x: &[Symbol], max_len: usize) -> Option<RepeatLocation> {
    (0..x.len()).find_map(|offset| {
        (1..=max_len)
            .take_while(|len| offset + 2 * len <= x.len())
            .find(|&len| x[offset..offset + len] == x[offset + len..offset + 2 * len])
            .map(|len| RepeatLocation::new(offset, len))
    })
}

/// Every square with block length at most `max_len`, in `(offset, length)` order.
pub fn tandem_repeats(x: &[Symbol], max_len: usize) -> impl Iterator<Item = RepeatLocation> + '_ {
    (0..x.len()).flat_map(move |offset| {
        (1..=max_len)
            .take_while(move |len| offset + 2 * len <= x.len())
            .filter(move |&len| x[offset..offset + len] == x[offset + len..offset + 2 * len])
            .map(move |len| RepeatLocation::new(offset, len))
    })
}

pub fn is_k_irreducible(x: &[Symbol], k: usize) -> bool {
    find_tandem_repeat(x, k).is_none()
}

pub fn is_square_free(x: &[Symbol]) -> bool {
    is_k_irreducible(x, x.len() / 2)
}

/// Replaces the square at `loc` by a single copy of its block.
pub fn deduplicate(x: &[Symbol], loc: RepeatLocation) -> Result<Word> {
    if !loc.is_valid_in(x) {
        return Err(Error::InvalidLocation {
            offset: loc.offset,
            length: loc.length,
        });
    }
    Ok(dedup_unchecked(x, loc))
}

pub(crate) fn dedup_unchecked(x: &[Symbol], loc: RepeatLocation) -> Word {
    let mut out = Vec::with_capacity(x.len() - loc.length);
    out.extend_from_slice(&x[..loc.offset + loc.length]);
    out.extend_from_slice(&x[loc.offset + 2 * loc.length..]);
    Word(out)
}
