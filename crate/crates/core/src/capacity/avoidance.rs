//! Capacity of the set of words avoiding a finite list of forbidden factors.

use std::collections::HashMap;

use super::spectral::spectral_radius;
use crate::error::{Error, Result};
use crate::strand::{Alphabet, Symbol, Word};

/// De Bruijn-style transfer matrix: states are the length-`(L-1)` words that
/// avoid every forbidden word, with an edge `w → (wa)[1..]` whenever `wa`
/// does not end in a forbidden word. `L` is the longest forbidden length.
pub fn avoidance_matrix(alphabet: &Alphabet, forbidden: &[Word]) -> Result<(Vec<Word>, Vec<Vec<f64>>)> {
    if forbidden.iter().any(|f| f.len() < 2) {
        return Err(Error::InvalidForbidden);
    }
    let window = forbidden.iter().map(|f| f.len()).max().unwrap_or(1) - 1;
    let clean = |w: &[Symbol]| !forbidden.iter().any(|f| w.windows(f.len()).any(|x| x == &f[..]));

    let sigma = alphabet.len();
    let total = sigma.pow(window as u32);
    let states: Vec<Word> = (0..total)
        .map(|mut code| {
            let mut w = vec![0 as Symbol; window];
            for s in w.iter_mut().rev() {
                *s = (code % sigma) as Symbol;
                code /= sigma;
            }
            Word::new(w)
        })
        .filter(|w| clean(w))
        .collect();

    let index: HashMap<&Word, usize> = states.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut matrix = vec![vec![0.0; states.len()]; states.len()];
    let mut extended = Vec::with_capacity(window + 1);
    for (i, w) in states.iter().enumerate() {
        for a in alphabet.symbols() {
            extended.clear();
            extended.extend_from_slice(w);
            extended.push(a);
            if forbidden.iter().any(|f| extended.ends_with(f)) {
                continue;
            }
            let next = Word::from(&extended[1..]);
            if let Some(&j) = index.get(&next) {
                matrix[i][j] += 1.0;
            }
        }
    }
    Ok((states, matrix))
}

/// `log_|Σ|` of the growth rate of words avoiding every word in `forbidden`.
pub fn avoidance_capacity(alphabet: &Alphabet, forbidden: &[Word], tol: f64) -> Result<f64> {
    if forbidden.is_empty() {
        return Ok(1.0);
    }
    if alphabet.len() < 2 {
        return Err(Error::DegenerateBase);
    }
    let (_, matrix) = avoidance_matrix(alphabet, forbidden)?;
    if matrix.iter().flatten().all(|&x| x == 0.0) {
        return Err(Error::EmptyLanguage);
    }
    let rho = spectral_radius(&matrix, tol)?;
    if rho <= 0.0 {
        return Ok(0.0);
    }
    Ok(rho.ln() / (alphabet.len() as f64).ln())
}
