//! Brute-force ground truth: breadth-first closure of a system by length,
//! exact counts, membership by reverse search, substring profiles, and
//! deduplication roots and distances.
//!
//! Duplications strictly increase length, so expanding lengths in increasing
//! order visits every word of length `<= N` exactly once.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::strand::{dedup_unchecked, tandem_repeats, DuplicationSystem, Symbol, SystemDoc, Word};

/// Upper bound on the number of distinct words a search may hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Default for Budget {
    fn default() -> Self {
        Budget(10_000_000)
    }
}

/// Every word of the system with length between `|seed|` and `max_length`.
#[derive(Clone, Debug)]
pub struct LanguageSlice {
    system: DuplicationSystem,
    max_length: usize,
    by_length: BTreeMap<usize, HashSet<Word>>,
}

impl LanguageSlice {
    pub fn system(&self) -> &DuplicationSystem {
        &self.system
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Words of length `n`; empty outside `|seed|..=max_length`.
    pub fn words(&self, n: usize) -> impl Iterator<Item = &Word> {
        self.by_length.get(&n).into_iter().flatten()
    }

    pub fn sorted_words(&self, n: usize) -> BTreeSet<Word> {
        self.words(n).cloned().collect()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.by_length.get(&word.len()).is_some_and(|set| set.contains(word))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.by_length.values().flatten()
    }

    pub fn total(&self) -> usize {
        self.by_length.values().map(HashSet::len).sum()
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_length.keys().copied()
    }

    pub fn counts(&self) -> CountTable {
        CountTable {
            system: self.system.clone(),
            max_length: self.max_length,
            counts: self
                .by_length
                .iter()
                .map(|(&n, set)| (n, BigUint::from(set.len())))
                .collect(),
        }
    }

    pub fn to_doc(&self, with_words: bool) -> SliceDoc {
        let words = with_words.then(|| {
            self.by_length
                .keys()
                .map(|&n| {
                    let rendered = self.sorted_words(n).iter().map(|w| self.system.render(w)).collect();
                    (n, rendered)
                })
                .collect()
        });
        SliceDoc {
            system: self.system.to_doc(),
            max_length: self.max_length,
            counts: self.counts().counts.into_iter().map(|(n, c)| (n, Count(c))).collect(),
            words,
        }
    }
}

/// Exact values of `|S ∩ Σⁿ|` for `|seed| <= n <= max_length`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub system: DuplicationSystem,
    pub max_length: usize,
    pub counts: BTreeMap<usize, BigUint>,
}

impl CountTable {
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(&n)
    }

    pub fn to_doc(&self) -> SliceDoc {
        SliceDoc {
            system: self.system.to_doc(),
            max_length: self.max_length,
            counts: self.counts.iter().map(|(&n, c)| (n, Count(c.clone()))).collect(),
            words: None,
        }
    }

    pub fn from_doc(doc: SliceDoc) -> Result<Self> {
        Ok(Self {
            system: doc.system.try_into()?,
            max_length: doc.max_length,
            counts: doc.counts.into_iter().map(|(n, c)| (n, c.0)).collect(),
        })
    }
}

/// JSON form shared by [`LanguageSlice`] and [`CountTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDoc {
    pub system: SystemDoc,
    #[serde(rename = "maxLength")]
    pub max_length: usize,
    pub counts: BTreeMap<usize, Count>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<BTreeMap<usize, Vec<String>>>,
}

/// An exact count: a JSON number when it fits in 64 bits, otherwise a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Count(pub BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(small) => serializer.serialize_u64(small),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CountVisitor;

        impl Visitor<'_> for CountVisitor {
            type Value = Count;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or decimal string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Count, E> {
                Ok(Count(BigUint::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Count, E> {
                v.parse().map(Count).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(CountVisitor)
    }
}

/// Breadth-first closure of `system` up to length `max_len`.
pub fn enumerate(system: &DuplicationSystem, max_len: usize, budget: Budget) -> Result<LanguageSlice> {
    let seed = system.seed();
    if max_len < seed.len() {
        return Err(Error::InvalidLength(format!(
            "max length {max_len} is shorter than the seed ({})",
            seed.len()
        )));
    }
    let kmax = system.max_dup();
    let mut levels: Vec<HashSet<Word>> = vec![HashSet::new(); max_len + 1];
    levels[seed.len()].insert(seed.clone());
    let mut total = 1usize;

    for n in seed.len()..max_len {
        let level = std::mem::take(&mut levels[n]);
        let reach = kmax.min(max_len - n);
        let children = level
            .par_iter()
            .fold(
                || vec![HashSet::new(); reach],
                |mut acc: Vec<HashSet<Word>>, w| {
                    for k in 1..=reach.min(n) {
                        for i in 0..=n - k {
                            acc[k - 1].insert(crate::strand::tandem_duplicate(w, i, k));
                        }
                    }
                    acc
                },
            )
            .reduce(
                || vec![HashSet::new(); reach],
                |mut a, b| {
                    for (into, from) in a.iter_mut().zip(b) {
                        if into.len() < from.len() {
                            let small = std::mem::replace(into, from);
                            into.extend(small);
                        } else {
                            into.extend(from);
                        }
                    }
                    a
                },
            );
        levels[n] = level;
        for (k, set) in children.into_iter().enumerate() {
            let target = &mut levels[n + k + 1];
            let before = target.len();
            target.extend(set);
            total += target.len() - before;
        }
        if total > budget.0 {
            return Err(Error::BudgetExceeded {
                budget: budget.0,
                depth_reached: n,
            });
        }
    }

    let by_length = levels.into_iter().enumerate().skip(seed.len()).collect();
    Ok(LanguageSlice {
        system: system.clone(),
        max_length: max_len,
        by_length,
    })
}

pub fn count_words(system: &DuplicationSystem, max_len: usize, budget: Budget) -> Result<CountTable> {
    enumerate(system, max_len, budget).map(|slice| slice.counts())
}

/// Membership in the system, decided by searching deduplications of `x`
/// (block length `<= kmax`) for the seed.
pub fn derives_from(system: &DuplicationSystem, x: &[Symbol]) -> bool {
    let seed = system.seed();
    if !system.alphabet().contains_word(x) || x.len() < seed.len() {
        return false;
    }
    // Deduplication preserves the first and last symbol and the set of
    // symbols present.
    if x.first() != seed.first() || x.last() != seed.last() || symbol_set(x) != symbol_set(seed) {
        return false;
    }
    if x == &seed[..] {
        return true;
    }
    let kmax = system.max_dup();
    let start = Word::from(x);
    let mut visited = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(w) = stack.pop() {
        for loc in tandem_repeats(&w, kmax) {
            let y = dedup_unchecked(&w, loc);
            if y.len() < seed.len() {
                continue;
            }
            if y == *seed {
                return true;
            }
            if visited.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    false
}

fn symbol_set(x: &[Symbol]) -> BTreeSet<Symbol> {
    x.iter().copied().collect()
}

/// Length-`len` substrings occurring in some system word of length `<= depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstringProfile {
    pub length: usize,
    pub found: BTreeSet<Word>,
    pub search_depth: usize,
}

pub fn substrings_of_length(
    system: &DuplicationSystem,
    len: usize,
    depth: usize,
    budget: Budget,
) -> Result<SubstringProfile> {
    if len > depth {
        return Err(Error::InvalidLength(format!(
            "substring length {len} exceeds search depth {depth}"
        )));
    }
    let slice = enumerate(system, depth.max(system.seed().len()), budget)?;
    let found = slice
        .iter()
        .filter(|w| w.len() >= len)
        .collect::<Vec<_>>()
        .par_iter()
        .fold(BTreeSet::new, |mut acc, w| {
            acc.extend(w.windows(len).map(Word::from));
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(SubstringProfile {
        length: len,
        found,
        search_depth: depth,
    })
}

/// Irreducible words reachable from a word by deduplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedupResult {
    pub roots: BTreeSet<Word>,
    pub distance: Option<usize>,
}

/// All `kmax`-irreducible words reachable from `x` by deduplications of
/// block length `<= kmax`, over every repeat location.
pub fn dedup_roots(x: &[Symbol], kmax: usize, budget: Budget) -> Result<DedupResult> {
    let start = Word::from(x);
    let mut visited = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    let mut roots = BTreeSet::new();
    while let Some(w) = stack.pop() {
        let mut irreducible = true;
        for loc in tandem_repeats(&w, kmax) {
            irreducible = false;
            let y = dedup_unchecked(&w, loc);
            if visited.insert(y.clone()) {
                if visited.len() > budget.0 {
                    return Err(Error::BudgetExceeded {
                        budget: budget.0,
                        depth_reached: x.len() - w.len(),
                    });
                }
                stack.push(y);
            }
        }
        if irreducible {
            roots.insert(w);
        }
    }
    Ok(DedupResult { roots, distance: None })
}

/// Fewest deduplication steps (block length `<= kmax`) turning `x` into
/// `target`, or `None` if `target` is unreachable.
pub fn dedup_distance(x: &[Symbol], target: &[Symbol], kmax: usize, budget: Budget) -> Result<Option<usize>> {
    if target.len() > x.len() {
        return Ok(None);
    }
    let start = Word::from(x);
    let mut visited = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((w, steps)) = queue.pop_front() {
        if &w[..] == target {
            return Ok(Some(steps));
        }
        for loc in tandem_repeats(&w, kmax) {
            let y = dedup_unchecked(&w, loc);
            if y.len() < target.len() || !visited.insert(y.clone()) {
                continue;
            }
            if visited.len() > budget.0 {
                return Err(Error::BudgetExceeded {
                    budget: budget.0,
                    depth_reached: steps,
                });
            }
            queue.push_back((y, steps + 1));
        }
    }
    Ok(None)
}

/// Number of symbols strictly between the last `a` and the first `b`, when
/// every `a` precedes every `b`. `None` if some `b` comes before some `a` or
/// either symbol is absent.
pub fn occurrence_gap(x: &[Symbol], a: Symbol, b: Symbol) -> Option<usize> {
    let last_a = x.iter().rposition(|&s| s == a)?;
    let first_b = x.iter().position(|&s| s == b)?;
    (last_a < first_b).then(|| first_b - last_a - 1)
}
