//! Full expressiveness: whether every word over the alphabet occurs as a
//! factor of some system word. Verdicts follow the known characterization;
//! "no" verdicts come with an explicit word that can never occur.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{enumerate, substrings_of_length, Budget, CountTable};
use crate::error::{Error, Result};
use crate::strand::{thue_word, Alphabet, DuplicationSystem, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// The case of the characterization that decided a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// Some alphabet symbol never occurs in the seed.
    #[serde(rename = "missing-symbol")]
    MissingSymbol,
    #[serde(rename = "unary")]
    Unary,
    #[serde(rename = "binary-k1")]
    BinaryK1,
    #[serde(rename = "binary-k2")]
    BinaryK2,
    #[serde(rename = "ternary-k3")]
    TernaryK3,
    /// Ternary, `k >= 4`, seed is `012` up to renaming.
    #[serde(rename = "ternary-k4-012")]
    TernaryK4Abc,
    #[serde(rename = "sigma4-squarefree")]
    Sigma4SquareFree,
    #[serde(rename = "uncharacterized")]
    Uncharacterized,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::MissingSymbol => "missing-symbol",
            Rule::Unary => "unary",
            Rule::BinaryK1 => "binary-k1",
            Rule::BinaryK2 => "binary-k2",
            Rule::TernaryK3 => "ternary-k3",
            Rule::TernaryK4Abc => "ternary-k4-012",
            Rule::Sigma4SquareFree => "sigma4-squarefree",
            Rule::Uncharacterized => "uncharacterized",
        }
    }
}

/// The family a witness was drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessReason {
    #[serde(rename = "missing-symbol")]
    MissingSymbol,
    /// `(ab)^m` with `2m > |s|`.
    #[serde(rename = "binary-k1")]
    BinaryK1,
    /// `(abcb)^ℓ a` with `ℓ > |s|`.
    #[serde(rename = "ternary-k3")]
    TernaryK3,
    /// `x t x` with `t` square-free over three other symbols.
    #[serde(rename = "sigma4-squarefree")]
    Sigma4SquareFree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    pub reason: WitnessReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpressivenessVerdict {
    pub answer: Answer,
    pub rule: Rule,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictDoc {
    pub answer: Answer,
    pub rule: Rule,
    pub witness: Option<String>,
}

impl ExpressivenessVerdict {
    pub fn to_doc(&self, alphabet: &Alphabet) -> VerdictDoc {
        VerdictDoc {
            answer: self.answer,
            rule: self.rule,
            witness: self.witness.as_ref().map(|w| alphabet.render(&w.word)),
        }
    }
}

fn missing_symbol(system: &DuplicationSystem) -> Option<Symbol> {
    let present: BTreeSet<Symbol> = system.seed().iter().copied().collect();
    system.alphabet().symbols().find(|s| !present.contains(s))
}

/// True when the seed is `abc` for three distinct symbols.
fn is_renamed_abc(seed: &[Symbol]) -> bool {
    seed.len() == 3 && seed[0] != seed[1] && seed[1] != seed[2] && seed[0] != seed[2]
}

fn rule_for(system: &DuplicationSystem) -> (Answer, Rule) {
    let sigma = system.alphabet().len();
    let k = system.max_dup();
    if missing_symbol(system).is_some() {
        return (Answer::No, Rule::MissingSymbol);
    }
    match (sigma, k) {
        (1, _) => (Answer::Yes, Rule::Unary),
        (2, 1) => (Answer::No, Rule::BinaryK1),
        (2, _) => (Answer::Yes, Rule::BinaryK2),
        (3, k) if k <= 3 => (Answer::No, Rule::TernaryK3),
        (3, _) if is_renamed_abc(system.seed()) => (Answer::Yes, Rule::TernaryK4Abc),
        (3, _) => (Answer::Unknown, Rule::Uncharacterized),
        _ => (Answer::No, Rule::Sigma4SquareFree),
    }
}

pub fn is_fully_expressive(system: &DuplicationSystem) -> ExpressivenessVerdict {
    let (answer, rule) = rule_for(system);
    ExpressivenessVerdict {
        answer,
        rule,
        witness: witness(system),
    }
}

/// A word that is a factor of no system word, when the system is known not
/// to be fully expressive.
pub fn witness(system: &DuplicationSystem) -> Option<Witness> {
    if let Some(s) = missing_symbol(system) {
        return Some(Witness {
            word: Word::new(vec![s]),
            reason: WitnessReason::MissingSymbol,
        });
    }
    let n = system.seed().len();
    let (word, reason) = match rule_for(system).1 {
        Rule::BinaryK1 => {
            let m = n / 2 + 1;
            ([0, 1].repeat(m), WitnessReason::BinaryK1)
        }
        Rule::TernaryK3 => {
            let mut w = [0, 1, 2, 1].repeat(n + 1);
            w.push(0);
            (w, WitnessReason::TernaryK3)
        }
        Rule::Sigma4SquareFree => {
            let len = n.max(system.max_dup()) + 1;
            let mut w = vec![0];
            w.extend(thue_word(len).into_iter().map(|s| s + 1));
            w.push(0);
            (w, WitnessReason::Sigma4SquareFree)
        }
        _ => return None,
    };
    Some(Witness {
        word: Word::new(word),
        reason,
    })
}

/// The boundary conditions a `k`-irreducible word `x` would need to satisfy
/// (at least one of) for a duplication to create it across a block edge:
/// `x₁ = x₁₊ᵢ` and `xⱼ = xⱼ₋ᵢ` for `2 <= i <= k`, `j = |x|`. Returned as
/// `(i, first_holds, last_holds)`.
pub fn boundary_conditions(x: &[Symbol], k: usize) -> Vec<(usize, bool, bool)> {
    let j = x.len();
    (2..=k)
        .filter(|&i| i < j)
        .map(|i| (i, x[0] == x[i], x[j - 1] == x[j - 1 - i]))
        .collect()
}

/// Words of length `len` over the alphabet that occur in no system word of
/// length `<= depth`.
pub fn check_coverage(system: &DuplicationSystem, len: usize, depth: usize, budget: Budget) -> Result<BTreeSet<Word>> {
    let found = substrings_of_length(system, len, depth, budget)?.found;
    let sigma = system.alphabet().len();
    let total = sigma
        .checked_pow(len as u32)
        .ok_or_else(|| Error::InvalidLength(format!("|Σ|^{len} overflows")))?;
    Ok((0..total)
        .map(|mut code| {
            let mut w = vec![0 as Symbol; len];
            for s in w.iter_mut().rev() {
                *s = (code % sigma) as Symbol;
                code /= sigma;
            }
            Word::new(w)
        })
        .filter(|w| !found.contains(w))
        .collect())
}

/// True iff `w` is a factor of no system word of length `<= depth`.
pub fn verify_witness_absent(system: &DuplicationSystem, w: &[Symbol], depth: usize, budget: Budget) -> Result<bool> {
    if w.len() > depth {
        return Err(Error::InvalidLength(format!(
            "witness length {} exceeds search depth {depth}",
            w.len()
        )));
    }
    let slice = enumerate(system, depth.max(system.seed().len()), budget)?;
    let words: Vec<&Word> = slice.iter().collect();
    Ok(!words.par_iter().any(|x| x.contains_factor(w)))
}

/// `(|Σ|^m - 1)^⌊n/m⌋ · |Σ|^(n mod m)`: the number of length-`n` words
/// avoiding some fixed word of length `m` in each aligned block.
pub fn avoiding_count_bound(sigma: usize, m: usize, n: usize) -> BigUint {
    let sigma = BigUint::from(sigma);
    let block = sigma.pow(m as u32) - 1u32;
    block.pow((n / m) as u32) * sigma.pow((n % m) as u32)
}

/// Lengths whose count exceeds [`avoiding_count_bound`]; empty when the
/// table is consistent with a length-`m` witness.
pub fn count_bound_violations(table: &CountTable, sigma: usize, m: usize) -> Vec<usize> {
    table
        .counts
        .iter()
        .filter(|(&n, c)| **c > avoiding_count_bound(sigma, m, n))
        .map(|(&n, _)| n)
        .collect()
}
