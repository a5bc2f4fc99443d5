//! Dominant eigenvalue of small nonnegative matrices.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 100_000;

fn validate(m: &[Vec<f64>]) -> Result<()> {
    let n = m.len();
    let ok = m
        .iter()
        .all(|row| row.len() == n && row.iter().all(|x| x.is_finite() && *x >= 0.0));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidMatrix)
    }
}

/// Index sets of the strongly connected components of the support graph of
/// `m`, in reverse topological order.
pub fn strongly_connected_blocks(m: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..m.len()).map(|_| g.add_node(())).collect();
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x > 0.0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|scc| {
            let mut block: Vec<usize> = scc.into_iter().map(|n| n.index()).collect();
            block.sort_unstable();
            block
        })
        .collect()
}

/// Perron root of an irreducible block, by power iteration on `B + I` from
/// the all-ones vector. The shift makes the block primitive so the iteration
/// converges even for periodic blocks; the Collatz-Wielandt bounds
/// `min (Mx)_i/x_i <= ρ <= max (Mx)_i/x_i` give the stopping rule.
fn irreducible_radius(block: &[Vec<f64>], tol: f64, max_iter: usize) -> Result<f64> {
    let n = block.len();
    let mut x = vec![1.0; n];
    let mut last = f64::NAN;
    for _ in 0..max_iter {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + block[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        let (lo, hi) = y
            .iter()
            .zip(&x)
            .map(|(a, b)| a / b)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r), hi.max(r)));
        last = 0.5 * (lo + hi) - 1.0;
        if hi - lo < tol {
            return Ok(last);
        }
        let scale = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / scale).collect();
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        last,
    })
}

/// Largest eigenvalue modulus of a nonnegative square matrix, to within
/// `tol`. Reducible matrices are split into strongly connected blocks and
/// the largest block value is returned.
pub fn spectral_radius(m: &[Vec<f64>], tol: f64) -> Result<f64> {
    spectral_radius_with_cap(m, tol, MAX_ITERATIONS)
}

pub fn spectral_radius_with_cap(m: &[Vec<f64>], tol: f64, max_iter: usize) -> Result<f64> {
    validate(m)?;
    let mut best = 0.0f64;
    for block in strongly_connected_blocks(m) {
        let value = if block.len() == 1 {
            m[block[0]][block[0]]
        } else {
            let sub: Vec<Vec<f64>> = block
                .iter()
                .map(|&i| block.iter().map(|&j| m[i][j]).collect())
                .collect();
            irreducible_radius(&sub, tol, max_iter)?
        };
        best = best.max(value);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden_block() -> Vec<Vec<f64>> {
        [
            [1, 1, 0, 1, 0, 0],
            [0, 1, 1, 0, 1, 0],
            [1, 0, 1, 0, 0, 1],
            [1, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 1, 0],
            [0, 0, 1, 0, 0, 1],
        ]
        .iter()
        .map(|row| row.iter().map(|&x| x as f64).collect())
        .collect()
    }

    #[test]
    fn scc_block_of_ternary_system() {
        let rho = spectral_radius(&golden_block(), 1e-9).unwrap();
        assert!((rho - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9, "{rho}");
    }

    #[test]
    fn trivial_matrices() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!((spectral_radius(&id, 1e-9).unwrap() - 1.0).abs() < 1e-12);
        assert!((spectral_radius(&[vec![2.0]], 1e-9).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(spectral_radius(&[], 1e-9).unwrap(), 0.0);
        let nilpotent = vec![vec![0.0, 1.0], vec![0.0, 0.0]];
        assert_eq!(spectral_radius(&nilpotent, 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn periodic_block_converges() {
        let swap = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!((spectral_radius(&swap, 1e-10).unwrap() - 1.0).abs() < 1e-9);
        let cycle3 = vec![vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 2.0], vec![2.0, 0.0, 0.0]];
        assert!((spectral_radius(&cycle3, 1e-10).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn reducible_takes_largest_block() {
        // Fibonacci block feeding a self-loop of weight 1.
        let m = vec![vec![1.0, 1.0, 1.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((spectral_radius(&m, 1e-10).unwrap() - phi).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            spectral_radius(&[vec![1.0, 2.0]], 1e-9),
            Err(Error::InvalidMatrix)
        ));
        assert!(matches!(
            spectral_radius(&[vec![-1.0]], 1e-9),
            Err(Error::InvalidMatrix)
        ));
    }

    #[test]
    fn iteration_cap_reports_last_estimate() {
        match spectral_radius_with_cap(&golden_block(), 1e-15, 3) {
            Err(Error::NonConvergence { iterations: 3, last }) => assert!(last > 2.0 && last < 3.0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
