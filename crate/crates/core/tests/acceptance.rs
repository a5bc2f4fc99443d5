//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tandem_core::automaton::{build_automaton, count_accepted, verify_duplication_closure, ClosureVerdict};
use tandem_core::capacity::{automaton_spectrum, avoidance_capacity, exact_capacity, golden_square, DEFAULT_TOLERANCE};
use tandem_core::enumeration::{count_words, dedup_distance, dedup_roots, derives_from, enumerate, occurrence_gap};
use tandem_core::expressiveness::{boundary_conditions, check_coverage, verify_witness_absent, witness};
use tandem_core::strand::{find_tandem_repeat, tandem_duplicate, thue_square_free};
use tandem_core::{Alphabet, Budget, DuplicationSystem, Word};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sys(alphabet: &str, seed: &str, k: usize) -> DuplicationSystem {
    DuplicationSystem::parse(alphabet, seed, k).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(value: f64, expected: f64, tol: f64, what: &str) -> Outcome {
    ensure(
        (value - expected).abs() <= tol,
        format!("{what}: {value} differs from {expected} by more than {tol}"),
    )
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Outcome {
    ensure(elapsed < limit, format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn golden_capacity() -> Outcome {
    let started = Instant::now();
    let s = sys("012", "012", 3);
    let report = exact_capacity(&s).map_err(|e| e.to_string())?;
    ensure(
        report.exact_form.as_deref() == Some("log_3((3+sqrt(5))/2)"),
        format!("exact form {:?}", report.exact_form),
    )?;
    close(report.value, golden_square().ln() / 3f64.ln(), 1e-12, "closed form")?;
    close(report.value, 0.876036, 1e-6, "capacity")?;
    let (rho, _) = automaton_spectrum(&s, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    close(rho, 2.6180340, 1e-6, "spectral radius")?;
    within(started.elapsed(), Duration::from_secs(1), "capacity computation")
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    for (a, seed, k, n_max) in [
        ("01", "01", 2, 16),
        ("012", "012", 3, 12),
        ("012", "0112", 3, 12),
        ("0123", "0123", 3, 10),
    ] {
        let s = sys(a, seed, k);
        let automaton = build_automaton(&s).map_err(|e| e.to_string())?;
        let slice = enumerate(&s, n_max, Budget::default()).map_err(|e| e.to_string())?;
        for n in 0..=n_max {
            let accepted = automaton.accepted_words(n);
            let generated = slice.sorted_words(n);
            ensure(
                accepted == generated,
                format!(
                    "({a}, {seed}, {k}) length {n}: automaton {} words, enumeration {}",
                    accepted.len(),
                    generated.len()
                ),
            )?;
        }
    }
    within(started.elapsed(), Duration::from_secs(120), "oracle equivalence")
}

fn binary_counts() -> Outcome {
    let s = sys("01", "01", 2);
    let automaton = build_automaton(&s).map_err(|e| e.to_string())?;
    let table = count_words(&s, 16, Budget::default()).map_err(|e| e.to_string())?;
    for n in 2..=16usize {
        let expected = BigUint::from(1u32) << (n - 2);
        let by_paths = count_accepted(&automaton, n).map_err(|e| e.to_string())?;
        ensure(by_paths == expected, format!("automaton count at {n}: {by_paths}"))?;
        ensure(
            table.get(n) == Some(&expected),
            format!("enumeration count at {n}: {:?}", table.get(n)),
        )?;
    }
    Ok(())
}

fn closed_form_examples() -> Outcome {
    let value = |a: &str, seed: &str| {
        exact_capacity(&sys(a, seed, 3))
            .map(|r| r.value)
            .map_err(|e| e.to_string())
    };
    close(value("0123", "0123")?, 0.694242, 1e-6, "({0,1,2,3}, 0123, 3)")?;
    close(value("012", "0112")?, 0.630930, 1e-6, "({0,1,2}, 0112, 3)")?;
    close(value("012", "0112")?, 2f64.ln() / 3f64.ln(), 1e-12, "log_3 2")?;
    ensure(value("012", "1111")? == 0.0, "unary seed capacity must be 0")?;
    ensure(value("0123", "2222")? == 0.0, "unary seed capacity must be 0")
}

fn avoidance_remark() -> Outcome {
    let abc = Alphabet::parse("012").unwrap();
    let forbidden: Vec<Word> = ["210", "021", "102"]
        .iter()
        .map(|w| abc.parse_word(w).unwrap())
        .collect();
    let value = avoidance_capacity(&abc, &forbidden, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    close(value, 0.914838, 1e-4, "avoidance capacity")?;
    let system = exact_capacity(&sys("012", "012", 3)).unwrap().value;
    ensure(
        value > system,
        format!("{value} is not above the system capacity {system}"),
    )
}

fn expressiveness_negative() -> Outcome {
    let s = sys("012", "012", 3);
    let missing = check_coverage(&s, 3, 12, Budget::default()).map_err(|e| e.to_string())?;
    let expected: BTreeSet<Word> = ["021", "102", "210"].iter().map(|w| s.word(w).unwrap()).collect();
    ensure(missing == expected, format!("missing factors {missing:?}"))?;

    let w = witness(&s).ok_or("no witness constructed")?.word;
    ensure(find_tandem_repeat(&w, 3).is_none(), "witness is not 3-irreducible")?;
    let j = w.len() - 1;
    let conditions = [
        ("x1 = x3", w[0] == w[2]),
        ("x1 = x4", w[0] == w[3]),
        ("xj = xj-2", w[j] == w[j - 2]),
        ("xj = xj-3", w[j] == w[j - 3]),
    ];
    for (name, holds) in conditions {
        ensure(!holds, format!("boundary condition {name} holds"))?;
    }
    ensure(
        boundary_conditions(&w, 3)
            .iter()
            .all(|&(_, first, last)| !first && !last),
        "boundary_conditions disagrees with the direct check",
    )?;

    // The witness is longer than 14, so check at its own length too.
    let depth = 14.max(w.len());
    let absent = verify_witness_absent(&s, &w, depth, Budget::default()).map_err(|e| e.to_string())?;
    ensure(absent, format!("witness occurs in a system word of length <= {depth}"))?;
    let automaton = build_automaton(&s).map_err(|e| e.to_string())?;
    ensure(!automaton.reads_factor(&w), "automaton reads the witness as a factor")
}

fn replay_chain(s: &DuplicationSystem, chain: &[&str]) -> Outcome {
    let words: Vec<Word> = chain.iter().map(|w| s.word(w).unwrap()).collect();
    ensure(words[0] == *s.seed(), "chain must start at the seed")?;
    for pair in words.windows(2) {
        let (from, to) = (&pair[0], &pair[1]);
        let k = to.len().saturating_sub(from.len());
        let one_step = (1..=s.max_dup().min(from.len())).contains(&k)
            && (0..=from.len() - k).any(|i| tandem_duplicate(from, i, k) == *to);
        ensure(
            one_step,
            format!("{} -> {} is not a single duplication", s.render(from), s.render(to)),
        )?;
        ensure(
            derives_from(s, to),
            format!("{} is not derived from the seed", s.render(to)),
        )?;
    }
    Ok(())
}

fn expressiveness_positive() -> Outcome {
    let s = sys("012", "012", 4);
    for (len, depth) in [(3, 12), (4, 14)] {
        let missing = check_coverage(&s, len, depth, Budget::default()).map_err(|e| e.to_string())?;
        ensure(
            missing.is_empty(),
            format!("length {len} factors missing at depth {depth}: {missing:?}"),
        )?;
    }
    replay_chain(&s, &["012", "01212", "012101212"])?;
    replay_chain(&s, &["012", "012012", "01202012", "012021202012"])?;
    replay_chain(&s, &["012", "012012", "01202012", "012020102012"])
}

fn closure_certificate() -> Outcome {
    let s = sys("012", "012", 3);
    let automaton = build_automaton(&s).map_err(|e| e.to_string())?;
    let cert = verify_duplication_closure(&automaton, 3);
    ensure(cert.passed(), format!("{} failing entries", cert.failures().count()))?;
    let states: BTreeSet<_> = cert.entries.iter().map(|e| e.state).collect();
    ensure(
        states.len() == automaton.num_states(),
        "certificate does not cover every state",
    )?;
    ensure(
        cert.entries.len() == automaton.num_states() * 3,
        "certificate does not cover every block length",
    )?;
    let length3_fallback = cert
        .superstate_entries()
        .any(|e| e.length == 3 && matches!(&e.verdict, ClosureVerdict::ViaSuperstate(v) if !v.is_empty()));
    ensure(length3_fallback, "no state needs a superstate on a length-3 label")?;
    ensure(automaton.accepts(s.seed()), "seed is rejected")
}

fn deduplication() -> Outcome {
    let abc = Alphabet::parse("012").unwrap();
    let x = abc.parse_word("012101212").unwrap();
    let roots = dedup_roots(&x, 4, Budget::default()).map_err(|e| e.to_string())?.roots;
    let expected: BTreeSet<Word> = ["012", "0121012"].iter().map(|w| abc.parse_word(w).unwrap()).collect();
    ensure(roots == expected, format!("roots {roots:?}"))?;
    let target = abc.parse_word("012").unwrap();
    let d = dedup_distance(&x, &target, 4, Budget::default()).map_err(|e| e.to_string())?;
    ensure(d == Some(2), format!("distance {d:?}"))
}

/// Square check by direct comparison of every pair of adjacent blocks.
fn has_square(w: &[u8]) -> bool {
    (1..=w.len() / 2).any(|len| (0..=w.len() - 2 * len).any(|i| w[i..i + len] == w[i + len..i + 2 * len]))
}

fn thue_generator() -> Outcome {
    let abc = Alphabet::parse("012").unwrap();
    let w = thue_square_free(1000, &abc).map_err(|e| e.to_string())?;
    ensure(w.len() == 1000, format!("length {}", w.len()))?;
    ensure(!has_square(&w), "square found in length-1000 word")?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let n = rng.gen_range(1..=1000);
        let prefix = thue_square_free(n, &abc).map_err(|e| e.to_string())?;
        ensure(prefix[..] == w[..n], format!("length-{n} word is not a prefix"))?;
        ensure(!has_square(&prefix), format!("square in length-{n} word"))?;
    }
    Ok(())
}

fn symbol_gap() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x6a9);
    for trial in 0..500 {
        let m = rng.gen_range(1..=6);
        let k = rng.gen_range(1..=3);
        let alphabet = Alphabet::numeric(m).unwrap();
        let seed = Word::new((0..m as u8).collect());
        let system = DuplicationSystem::new(alphabet, seed.clone(), k).unwrap();
        let mut w = seed;
        for _ in 0..rng.gen_range(0..=20) {
            let len = rng.gen_range(1..=k.min(w.len()));
            let at = rng.gen_range(0..=w.len() - len);
            w = tandem_duplicate(&w, at, len);
        }
        for i in 0..m.saturating_sub(k) {
            let (a, b) = (i as u8, (i + k) as u8);
            match occurrence_gap(&w, a, b) {
                Some(gap) if gap + 1 >= k => {}
                other => {
                    return Err(format!(
                        "trial {trial}: {} (k={k}) has gap {other:?} between {a} and {b}",
                        system.render(&w)
                    ))
                }
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("ternary capacity and spectral radius", golden_capacity),
        ("automaton equals enumeration", oracle_equivalence),
        ("binary counts are powers of two", binary_counts),
        ("closed-form capacities", closed_form_examples),
        ("forbidden-factor capacity", avoidance_remark),
        ("ternary k=3 is not fully expressive", expressiveness_negative),
        ("ternary k=4 covers all short factors", expressiveness_positive),
        ("duplication closure certificate", closure_certificate),
        ("deduplication roots and distance", deduplication),
        ("square-free generator", thue_generator),
        ("symbol gap invariant", symbol_gap),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}  {name} ({:.2?})", i + 1, started.elapsed());
        if let Err(why) = outcome {
            println!("             {why}");
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
