//! Capacities: closed forms for `k <= 3`, the spectral radius of the
//! system automaton, finite-length growth estimates, and the capacity of
//! forbidden-factor constraints. All values are in `log base |Σ|`.

mod avoidance;
pub mod spectral;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::automaton::{build_automaton, TransferMatrix};
use crate::enumeration::CountTable;
use crate::error::{Error, Result};
use crate::strand::DuplicationSystem;

pub use avoidance::{avoidance_capacity, avoidance_matrix};
pub use spectral::{spectral_radius, strongly_connected_blocks, DEFAULT_TOLERANCE};

/// Largest eigenvalue of the transfer matrix of `B_abc`, `(3 + √5) / 2`.
pub fn golden_square() -> f64 {
    (3.0 + 5f64.sqrt()) / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapacityCase {
    /// Seed is a power of a single symbol: at most one word per length.
    UnarySeed,
    /// The dominant component alternates two symbols.
    TwoSymbol,
    /// `k = 3` and the seed has three consecutive distinct symbols.
    AbcSubstring,
    /// `k = 1`: only runs can grow, so growth is polynomial.
    #[serde(rename = "binary-k1")]
    SingleSymbolRuns,
    Empirical,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub value: f64,
    pub base: usize,
    pub case: CapacityCase,
    #[serde(rename = "exactForm", default, skip_serializing_if = "Option::is_none")]
    pub exact_form: Option<String>,
}

impl CapacityReport {
    /// The same capacity measured in bits per symbol.
    pub fn in_bits(&self) -> f64 {
        if self.base < 2 {
            0.0
        } else {
            self.value * (self.base as f64).log2()
        }
    }
}

fn is_unary(system: &DuplicationSystem) -> bool {
    system.seed().windows(2).all(|w| w[0] == w[1])
}

fn has_three_distinct_window(system: &DuplicationSystem) -> bool {
    system
        .seed()
        .windows(3)
        .any(|w| w[0] != w[1] && w[1] != w[2] && w[0] != w[2])
}

/// Closed-form capacity of a system with `k <= 3`.
pub fn exact_capacity(system: &DuplicationSystem) -> Result<CapacityReport> {
    let k = system.max_dup();
    if k > 3 {
        return Err(Error::UnsupportedK(k));
    }
    let base = system.alphabet().len();
    let report = |value: f64, case, form: String| CapacityReport {
        value,
        base,
        case,
        exact_form: Some(form),
    };
    let log_base = |x: f64| x.ln() / (base as f64).ln();
    Ok(if is_unary(system) {
        report(0.0, CapacityCase::UnarySeed, "0".into())
    } else if k == 1 {
        report(0.0, CapacityCase::SingleSymbolRuns, "0".into())
    } else if k == 3 && has_three_distinct_window(system) {
        report(
            log_base(golden_square()),
            CapacityCase::AbcSubstring,
            format!("log_{base}((3+sqrt(5))/2)"),
        )
    } else {
        report(log_base(2.0), CapacityCase::TwoSymbol, format!("log_{base}(2)"))
    })
}

/// Spectral radius of the transfer matrix of the system automaton and the
/// strongly connected block that attains it.
pub fn automaton_spectrum(system: &DuplicationSystem, tol: f64) -> Result<(f64, TransferMatrix)> {
    let tm = build_automaton(system)?.transfer_matrix();
    let m = tm.to_f64();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for block in strongly_connected_blocks(&m) {
        let sub = tm.restrict(&block).to_f64();
        let rho = spectral_radius(&sub, tol)?;
        if best.as_ref().is_none_or(|(b, _)| rho > *b) {
            best = Some((rho, block));
        }
    }
    Ok(match best {
        Some((rho, block)) => (rho, tm.restrict(&block)),
        None => (0.0, tm),
    })
}

/// `log_|Σ|` of the automaton's spectral radius; must agree with
/// [`exact_capacity`].
pub fn automaton_capacity(system: &DuplicationSystem, tol: f64) -> Result<f64> {
    let (rho, _) = automaton_spectrum(system, tol)?;
    let base = system.alphabet().len();
    if base < 2 || rho <= 1.0 {
        return Ok(0.0);
    }
    Ok(rho.ln() / (base as f64).ln())
}

/// Finite-length growth rates `log_base(c[n+1] / c[n])`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthEstimate {
    pub base: u32,
    pub ratios: BTreeMap<usize, f64>,
    pub window: usize,
    pub mean: f64,
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("fits in f64").ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Ratios for every consecutive pair of nonzero counts and their mean over
/// the last `window` ratios.
pub fn empirical_capacity(table: &CountTable, base: u32, window: usize) -> Result<GrowthEstimate> {
    if base < 2 {
        return Err(Error::DegenerateBase);
    }
    let ln_base = f64::from(base).ln();
    let ratios: BTreeMap<usize, f64> = table
        .counts
        .iter()
        .filter_map(|(&n, c)| {
            let next = table.counts.get(&(n + 1))?;
            (!c.is_zero() && !next.is_zero()).then(|| (n, (ln_big(next) - ln_big(c)) / ln_base))
        })
        .collect();
    let has_run = ratios.keys().any(|n| ratios.contains_key(&(n + 1)));
    if !has_run || window == 0 {
        return Err(Error::InsufficientData);
    }
    let tail: Vec<f64> = ratios.values().rev().take(window).copied().collect();
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    Ok(GrowthEstimate {
        base,
        ratios,
        window: tail.len(),
        mean,
    })
}
