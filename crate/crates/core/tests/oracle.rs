//! The automaton, the breadth-first enumeration, and reverse deduplication
//! are three independent descriptions of the same language; they must agree.

use proptest::prelude::*;

use tandem_core::automaton::{build_automaton, build_colored_automaton, verify_duplication_closure};
use tandem_core::enumeration::{derives_from, enumerate};
use tandem_core::{Alphabet, Budget, DuplicationSystem, Word};

fn sys(alphabet: &str, seed: &str, k: usize) -> DuplicationSystem {
    DuplicationSystem::parse(alphabet, seed, k).unwrap()
}

/// Every word of length `n` over `sigma` symbols.
fn all_words(sigma: usize, n: usize) -> impl Iterator<Item = Word> {
    (0..sigma.pow(n as u32)).map(move |mut code| {
        let mut w = vec![0u8; n];
        for s in w.iter_mut().rev() {
            *s = (code % sigma) as u8;
            code /= sigma;
        }
        Word::new(w)
    })
}

#[test]
fn brute_force_scan_agrees_on_every_word() {
    for (a, seed, k) in [
        ("01", "01", 2),
        ("012", "012", 3),
        ("012", "0112", 3),
        ("012", "0120", 2),
        ("01", "0110", 1),
    ] {
        let s = sys(a, seed, k);
        let automaton = build_automaton(&s).unwrap();
        let slice = enumerate(&s, 8, Budget::default()).unwrap();
        for n in 0..=8 {
            for w in all_words(s.alphabet().len(), n) {
                let accepted = automaton.accepts(&w);
                assert_eq!(accepted, slice.contains(&w), "{} in ({a}, {seed}, {k})", s.render(&w));
                assert_eq!(accepted, derives_from(&s, &w), "{} in ({a}, {seed}, {k})", s.render(&w));
            }
        }
    }
}

#[test]
fn decoloring_is_sound() {
    // Every word accepted by the colored automaton decolors to a system word.
    for (a, seed, k) in [("012", "012", 3), ("012", "0112", 3), ("0123", "0123", 2)] {
        let s = sys(a, seed, k);
        let (colored, letter) = build_colored_automaton(&s).unwrap();
        let slice = enumerate(&s, 9, Budget::default()).unwrap();
        for n in 0..=9 {
            for w in colored.accepted_words(n) {
                let plain = Word::new(w.iter().map(|&c| letter[usize::from(c)]).collect());
                assert!(slice.contains(&plain), "{} not in ({a}, {seed}, {k})", s.render(&plain));
            }
        }
    }
}

#[test]
fn languages_grow_with_k() {
    let small = enumerate(&sys("012", "0121", 1), 10, Budget::default()).unwrap();
    let mid = enumerate(&sys("012", "0121", 2), 10, Budget::default()).unwrap();
    let large = enumerate(&sys("012", "0121", 3), 10, Budget::default()).unwrap();
    assert!(small.iter().all(|w| mid.contains(w)));
    assert!(mid.iter().all(|w| large.contains(w)));
    assert!(small.total() < mid.total() && mid.total() < large.total());
}

#[test]
fn canonical_seeds_are_closed_and_exact() {
    // Canonical seeds: the first occurrence of each symbol is in increasing
    // order, so every seed up to renaming is covered once.
    fn canonical(len: usize, sigma: usize) -> Vec<Vec<u8>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w: Vec<u8>| {
                    let next = w.iter().max().map_or(0, |&m| m + 1);
                    (0..=next.min(sigma as u8 - 1)).map(move |s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        out
    }
    for sigma in 1..=4 {
        for len in 1..=5 {
            for seed in canonical(len, sigma) {
                for k in 1..=3 {
                    let s =
                        DuplicationSystem::new(Alphabet::numeric(sigma).unwrap(), Word::new(seed.clone()), k).unwrap();
                    let a = build_automaton(&s).unwrap();
                    assert!(a.is_deterministic());
                    assert!(a.accepts(s.seed()));
                    let cert = verify_duplication_closure(&a, k);
                    assert!(cert.passed(), "closure fails for {} k={k}", s.render(s.seed()));
                    let slice = enumerate(&s, len + 4, Budget::default()).unwrap();
                    for n in 0..=len + 4 {
                        assert_eq!(
                            a.accepted_words(n),
                            slice.sorted_words(n),
                            "{} k={k} n={n}",
                            s.render(s.seed())
                        );
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_systems_match_enumeration(
        sigma in 2usize..=4,
        raw in proptest::collection::vec(0u8..4, 1..=5),
        k in 1usize..=3,
    ) {
        let seed: Vec<u8> = raw.into_iter().map(|s| s % sigma as u8).collect();
        let s = DuplicationSystem::new(Alphabet::numeric(sigma).unwrap(), Word::new(seed.clone()), k).unwrap();
        let a = build_automaton(&s).unwrap();
        let max = seed.len() + 5;
        let slice = enumerate(&s, max, Budget::default()).unwrap();
        for n in 0..=max {
            prop_assert_eq!(a.accepted_words(n), slice.sorted_words(n));
        }
        for w in slice.iter() {
            prop_assert!(derives_from(&s, w));
        }
    }
}
