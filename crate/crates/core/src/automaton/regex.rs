//! Regular expressions for the languages of systems with `k <= 3`, built
//! programmatically from a seed whose symbols have been made distinct.

use std::fmt;

use crate::error::{Error, Result};
use crate::strand::{DuplicationSystem, Symbol};

/// Expression tree over colored symbols (indices into a seed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Symbol(usize),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Plus(Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn plus(self) -> Regex {
        Regex::Plus(Box::new(self))
    }

    pub fn star(self) -> Regex {
        Regex::Star(Box::new(self))
    }

    fn run(symbol: usize) -> Regex {
        Regex::Symbol(symbol).plus()
    }

    /// `(a⁺b⁺)`
    fn pair(a: usize, b: usize) -> Regex {
        Regex::Concat(vec![Self::run(a), Self::run(b)])
    }

    /// `a⁺(c⁺a⁺)*b⁺(a⁺b⁺)*c⁺(b⁺c⁺)*`
    pub fn block3(a: usize, b: usize, c: usize) -> Regex {
        Regex::Concat(vec![
            Self::run(a),
            Self::pair(c, a).star(),
            Self::run(b),
            Self::pair(a, b).star(),
            Self::run(c),
            Self::pair(b, c).star(),
        ])
    }

    /// Every symbol id occurring in the expression, left to right.
    pub fn symbols(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<usize>) {
        match self {
            Regex::Symbol(s) => out.push(*s),
            Regex::Concat(parts) | Regex::Union(parts) => parts.iter().for_each(|p| p.collect_symbols(out)),
            Regex::Plus(inner) | Regex::Star(inner) => inner.collect_symbols(out),
        }
    }

    /// Renders with `name` for each symbol, writing closures as `+` and `*`.
    pub fn display<'a, F>(&'a self, name: F) -> impl fmt::Display + 'a
    where
        F: Fn(usize) -> String + 'a,
    {
        RegexDisplay { regex: self, name }
    }
}

struct RegexDisplay<'a, F> {
    regex: &'a Regex,
    name: F,
}

impl<F: Fn(usize) -> String> RegexDisplay<'_, F> {
    fn write(&self, r: &Regex, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match r {
            Regex::Symbol(s) => f.write_str(&(self.name)(*s)),
            Regex::Concat(parts) => parts.iter().try_for_each(|p| self.write(p, f)),
            Regex::Union(parts) => {
                f.write_str("(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    self.write(p, f)?;
                }
                f.write_str(")")
            }
            Regex::Plus(inner) | Regex::Star(inner) => {
                let op = if matches!(r, Regex::Plus(_)) { "+" } else { "*" };
                match **inner {
                    Regex::Symbol(_) | Regex::Union(_) => self.write(inner, f)?,
                    _ => {
                        f.write_str("(")?;
                        self.write(inner, f)?;
                        f.write_str(")")?;
                    }
                }
                f.write_str(op)
            }
        }
    }
}

impl<F: Fn(usize) -> String> fmt::Display for RegexDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.regex, f)
    }
}

/// A regular expression over the colored seed together with the decoloring
/// map: colored symbol `i` stands for `letter[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegexSpec {
    pub expr: Regex,
    pub letter: Vec<Symbol>,
}

impl RegexSpec {
    /// The expression for `system`, whose seed symbols are colored by their
    /// position so that they become distinct.
    ///
    /// * `k = 1`: `ã₁⁺ã₂⁺⋯ãₘ⁺`
    /// * `k = 2`: `(ã₁⁺ã₂⁺)⁺ ⋯ ãᵢ⁺(ãᵢ₋₁⁺ãᵢ⁺)* ⋯`
    /// * `k = 3`: as `k = 2`, with `B(ãᵢ₋₂ ãᵢ₋₁ ãᵢ)*` after each stage `i >= 3`
    pub fn for_system(system: &DuplicationSystem) -> Result<Self> {
        let k = system.max_dup();
        if k > 3 {
            return Err(Error::UnsupportedK(k));
        }
        let m = system.seed().len();
        let mut parts = Vec::new();
        for i in 0..m {
            if k >= 2 && i == 1 {
                // ã₁⁺ã₂⁺(ã₁⁺ã₂⁺)* written as (ã₁⁺ã₂⁺)⁺, which compiles to one
                // position per symbol.
                parts.pop();
                parts.push(Regex::pair(0, 1).plus());
                continue;
            }
            parts.push(Regex::run(i));
            if k >= 2 && i >= 1 {
                parts.push(Regex::pair(i - 1, i).star());
            }
            if k >= 3 && i >= 2 {
                parts.push(Regex::block3(i - 2, i - 1, i).star());
            }
        }
        Ok(Self {
            expr: Regex::Concat(parts),
            letter: system.seed().to_vec(),
        })
    }

    /// Renders the decolored expression using the system's symbol names.
    pub fn render(&self, system: &DuplicationSystem) -> String {
        self.expr
            .display(|c| system.alphabet().name(self.letter[c]).to_string())
            .to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(alphabet: &str, seed: &str, k: usize) -> String {
        let sys = DuplicationSystem::parse(alphabet, seed, k).unwrap();
        RegexSpec::for_system(&sys).unwrap().render(&sys)
    }

    fn b(a: char, b: char, c: char) -> String {
        format!("{a}+({c}+{a}+)*{b}+({a}+{b}+)*{c}+({b}+{c}+)*")
    }

    #[test]
    fn run_forms_for_k1() {
        assert_eq!(render("012", "0120", 1), "0+1+2+0+");
    }

    #[test]
    fn binary_k2_is_alternating_runs() {
        assert_eq!(render("01", "01", 2), "(0+1+)+");
        assert_eq!(render("012", "012", 2), "(0+1+)+2+(1+2+)*");
    }

    #[test]
    fn ternary_k3_matches_block_decomposition() {
        let expected = format!("(0+1+)+2+(1+2+)*({})*", b('0', '1', '2'));
        assert_eq!(render("012", "012", 3), expected);
    }

    #[test]
    fn four_symbol_seed() {
        let expected = format!(
            "(0+1+)+2+(1+2+)*({})*3+(2+3+)*({})*",
            b('0', '1', '2'),
            b('1', '2', '3')
        );
        assert_eq!(render("0123", "0123", 3), expected);
    }

    #[test]
    fn repeated_seed_symbols_decolor() {
        let expected = format!(
            "(0+1+)+1+(1+1+)*({})*2+(1+2+)*({})*",
            b('0', '1', '1'),
            b('1', '1', '2')
        );
        assert_eq!(render("012", "0112", 3), expected);
    }

    #[test]
    fn short_seeds_degenerate() {
        assert_eq!(render("01", "0", 3), "0+");
        assert_eq!(render("01", "10", 3), "(1+0+)+");
    }

    #[test]
    fn k4_is_unsupported() {
        let sys = DuplicationSystem::parse("012", "012", 4).unwrap();
        assert!(matches!(RegexSpec::for_system(&sys), Err(Error::UnsupportedK(4))));
    }
}
