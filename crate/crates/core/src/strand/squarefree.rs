use super::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Image of each symbol under the square-free morphism 0→012, 1→02, 2→1.
const MORPHISM: [&[Symbol]; 3] = [&[0, 1, 2], &[0, 2], &[1]];

/// Length-`n` prefix of the fixed point of 0→012, 1→02, 2→1 started at 0,
/// over the symbols `{0, 1, 2}`.
pub fn thue_word(n: usize) -> Vec<Symbol> {
    let mut word: Vec<Symbol> = vec![0];
    // Each iteration keeps the previous word as a prefix, so stopping as soon
    // as the length suffices yields a prefix of the fixed point.
    while word.len() < n {
        word = word
            .iter()
            .flat_map(|&s| MORPHISM[usize::from(s)].iter().copied())
            .collect();
    }
    word.truncate(n);
    word
}

/// A square-free word of length `n` over a three-symbol alphabet, with the
/// morphism's symbols 0, 1, 2 mapped to the alphabet in order.
pub fn thue_square_free(n: usize, alphabet: &Alphabet) -> Result<Word> {
    if alphabet.len() != 3 {
        return Err(Error::AlphabetSize {
            expected: 3,
            found: alphabet.len(),
        });
    }
    Ok(Word::new(thue_word(n)))
}
