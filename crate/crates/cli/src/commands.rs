use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use tandem_core::automaton::{
    build_automaton, verify_duplication_closure, AutomatonDoc, ExportFormat, LabeledAutomaton,
};
use tandem_core::capacity::{
    automaton_capacity, avoidance_capacity, empirical_capacity, exact_capacity, CapacityCase, CapacityReport,
};
use tandem_core::enumeration::{count_words, dedup_distance, dedup_roots, derives_from, enumerate, CountTable};
use tandem_core::expressiveness::{is_fully_expressive, verify_witness_absent, witness as build_witness};
use tandem_core::strand::{is_square_free, thue_square_free};
use tandem_core::{Alphabet, Budget, DuplicationSystem, Error, Word};

use crate::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// Invalid user input (bad alphabet, seed or word) rather than a
    /// failure of the computation itself.
    pub fn usage(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_) | CliError::Io { .. } => 1,
        }
    }
}

/// A command result in every format it supports.
pub struct Output {
    json: Value,
    text: String,
    dot: Option<String>,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Self { json, text, dot: None }
    }

    pub fn render(self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).map_err(Error::from)? + "\n"),
            Format::Text => Ok(self.text),
            Format::Dot => self
                .dot
                .ok_or_else(|| CliError::Usage("--format dot is only available for `automaton`".into())),
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(v).map_err(Error::from)?)
}

fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, CliError> {
    alphabet.parse_word(text).map_err(CliError::usage)
}

fn count_text(table: &CountTable) -> String {
    table.counts.iter().fold(String::new(), |mut s, (n, c)| {
        let _ = writeln!(s, "{n}\t{c}");
        s
    })
}

pub fn generate(system: &DuplicationSystem, max_len: usize, budget: Budget) -> Result<Output, CliError> {
    let slice = enumerate(system, max_len, budget)?;
    let mut text = String::new();
    for n in slice.lengths() {
        let words = slice.sorted_words(n);
        let _ = writeln!(text, "# length {n}: {} words", words.len());
        for w in &words {
            let _ = writeln!(text, "{}", system.render(w));
        }
    }
    Ok(Output::new(to_value(&slice.to_doc(true))?, text))
}

pub fn count(
    system: &DuplicationSystem,
    max_len: usize,
    use_automaton: bool,
    budget: Budget,
) -> Result<Output, CliError> {
    let table = if use_automaton {
        let counts = build_automaton(system)?.count_accepted_upto(max_len)?;
        CountTable {
            system: system.clone(),
            max_length: max_len,
            counts: counts.into_iter().enumerate().skip(system.seed().len()).collect(),
        }
    } else {
        count_words(system, max_len, budget)?
    };
    Ok(Output::new(to_value(&table.to_doc())?, count_text(&table)))
}

pub fn member(system: &DuplicationSystem, word: &str) -> Result<Output, CliError> {
    let w = parse_word(system.alphabet(), word)?;
    let member = derives_from(system, &w);
    let text = format!("{word}\t{}\n", if member { "member" } else { "not a member" });
    Ok(Output::new(json!({ "word": word, "member": member }), text))
}

pub fn automaton(system: &DuplicationSystem) -> Result<Output, CliError> {
    let a = build_automaton(system)?;
    let mut text = format!(
        "states: {}\nstart: {}\naccepting: {:?}\n",
        a.num_states(),
        a.start(),
        a.accepting()
    );
    for &(f, s, t) in a.edges() {
        let _ = writeln!(text, "{f} -{}-> {t}", a.alphabet().name(s));
    }
    Ok(Output {
        json: to_value(&a.to_doc())?,
        text,
        dot: Some(a.export(ExportFormat::Dot)?),
    })
}

fn capacity_output(mut json: Value, value: f64, base: usize, bits: bool, label: &str) -> Output {
    let mut text = format!("{label}: {value} (log base {base})\n");
    if bits {
        let in_bits = value * (base as f64).log2();
        json["bits"] = json!(in_bits);
        let _ = writeln!(text, "bits per symbol: {in_bits}");
    }
    Output::new(json, text)
}

pub fn capacity(
    system: &DuplicationSystem,
    exact: bool,
    bits: bool,
    tolerance: f64,
    max_len: usize,
    budget: Budget,
) -> Result<Output, CliError> {
    let base = system.alphabet().len();
    let report = if exact {
        exact_capacity(system)?
    } else if system.max_dup() <= 3 {
        let closed = exact_capacity(system)?;
        CapacityReport {
            value: automaton_capacity(system, tolerance)?,
            ..closed
        }
    } else {
        let table = count_words(system, max_len, budget)?;
        let estimate = empirical_capacity(&table, base as u32, 3)?;
        CapacityReport {
            value: estimate.mean,
            base,
            case: CapacityCase::Empirical,
            exact_form: None,
        }
    };
    let mut out = capacity_output(to_value(&report)?, report.value, base, bits, "capacity");
    let case = report.case;
    let _ = writeln!(out.text, "case: {}", to_value(&case)?.as_str().unwrap_or_default());
    if let Some(form) = &report.exact_form {
        let _ = writeln!(out.text, "exact form: {form}");
    }
    Ok(out)
}

pub fn avoid(alphabet: &Alphabet, forbidden: &[String], tolerance: f64, bits: bool) -> Result<Output, CliError> {
    let words = forbidden
        .iter()
        .map(|f| parse_word(alphabet, f))
        .collect::<Result<Vec<_>, _>>()?;
    let value = avoidance_capacity(alphabet, &words, tolerance)?;
    let base = alphabet.len();
    let json = json!({ "value": value, "base": base, "forbidden": forbidden });
    Ok(capacity_output(json, value, base, bits, "avoidance capacity"))
}

pub fn express(system: &DuplicationSystem, with_reason: bool) -> Result<Output, CliError> {
    let verdict = is_fully_expressive(system);
    let mut json = to_value(&verdict.to_doc(system.alphabet()))?;
    let mut text = format!(
        "answer: {}\nrule: {}\n",
        json["answer"].as_str().unwrap_or_default(),
        verdict.rule.tag()
    );
    if let Some(w) = &verdict.witness {
        let _ = writeln!(text, "witness: {}", system.render(&w.word));
        if with_reason {
            let reason = to_value(&w.reason)?;
            let _ = writeln!(text, "witness family: {}", reason.as_str().unwrap_or_default());
            json["witnessReason"] = reason;
        }
    }
    Ok(Output::new(json, text))
}

pub fn witness(system: &DuplicationSystem, check_upto: Option<usize>, budget: Budget) -> Result<Output, CliError> {
    let Some(w) = build_witness(system) else {
        let json = json!({ "word": null, "reason": null });
        return Ok(Output::new(
            json,
            "no witness: the system is not known to be incomplete\n".into(),
        ));
    };
    let word = system.render(&w.word);
    let mut json = json!({ "word": word, "reason": w.reason, "length": w.word.len() });
    let mut text = format!(
        "{word}\nlength: {}\nfamily: {}\n",
        w.word.len(),
        json["reason"].as_str().unwrap_or_default()
    );
    if let Some(depth) = check_upto {
        let absent = verify_witness_absent(system, &w.word, depth, budget)?;
        json["checkedUpto"] = json!(depth);
        json["absent"] = json!(absent);
        let _ = writeln!(text, "absent up to length {depth}: {absent}");
    }
    Ok(Output::new(json, text))
}

pub fn dedup(
    alphabet: &Alphabet,
    max_dup: usize,
    word: &str,
    target: Option<&str>,
    budget: Budget,
) -> Result<Output, CliError> {
    if max_dup == 0 {
        return Err(CliError::usage(Error::InvalidMaxDup));
    }
    let x = parse_word(alphabet, word)?;
    if let Some(target) = target {
        let t = parse_word(alphabet, target)?;
        let distance = dedup_distance(&x, &t, max_dup, budget)?;
        let text = match distance {
            Some(d) => format!("{d}\n"),
            None => "unreachable\n".into(),
        };
        let json = json!({ "word": word, "target": target, "maxDup": max_dup, "distance": distance });
        return Ok(Output::new(json, text));
    }
    let roots: Vec<String> = dedup_roots(&x, max_dup, budget)?
        .roots
        .iter()
        .map(|r| alphabet.render(r))
        .collect();
    let text = roots.iter().map(|r| format!("{r}\n")).collect();
    Ok(Output::new(
        json!({ "word": word, "maxDup": max_dup, "roots": roots }),
        text,
    ))
}

fn load_automaton(path: &Path) -> Result<LabeledAutomaton, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let doc: AutomatonDoc = serde_json::from_str(&text).map_err(Error::from)?;
    Ok(LabeledAutomaton::from_doc(&doc)?)
}

pub fn verify(
    system: &DuplicationSystem,
    file: Option<&Path>,
    check_upto: Option<usize>,
    budget: Budget,
) -> Result<Output, CliError> {
    let a = match file {
        Some(path) => load_automaton(path)?,
        None => build_automaton(system)?,
    };
    let cert = verify_duplication_closure(&a, system.max_dup());
    let seed_text = system.render(system.seed());
    let seed_accepted = a.alphabet().parse_word(&seed_text).is_ok_and(|w| a.accepts(&w));
    let mut json = json!({
        "certificate": to_value(&cert.to_doc(&a))?,
        "seedAccepted": seed_accepted,
    });
    let mut text = format!(
        "closure certificate: {}\nentries: {} ({} via superstate, {} failing)\nseed accepted: {seed_accepted}\n",
        if cert.passed() { "passed" } else { "failed" },
        cert.entries.len(),
        cert.superstate_entries().count(),
        cert.failures().count(),
    );
    for f in cert.failures() {
        let _ = writeln!(text, "  state {} length {}: not duplicable", f.state, f.length);
    }

    if let Some(depth) = check_upto {
        let slice = enumerate(system, depth.max(system.seed().len()), budget)?;
        let mut mismatch: Option<(usize, String)> = None;
        let mut counts = BTreeMap::new();
        for n in 0..=depth {
            let accepted: BTreeSet<String> = a.accepted_words(n).iter().map(|w| a.alphabet().render(w)).collect();
            let expected: BTreeSet<String> = slice.words(n).map(|w| system.render(w)).collect();
            counts.insert(n, accepted.len());
            if mismatch.is_none() && accepted != expected {
                let detail = match accepted.difference(&expected).next() {
                    Some(w) => format!("automaton accepts {w}, which is not in the system"),
                    None => format!(
                        "automaton rejects system word {}",
                        expected.difference(&accepted).next().expect("sets differ")
                    ),
                };
                mismatch = Some((n, detail));
            }
        }
        let agrees = mismatch.is_none();
        json["oracle"] = json!({
            "checkedUpto": depth,
            "agrees": agrees,
            "mismatch": mismatch.as_ref().map(|(n, d)| json!({"length": n, "detail": d})),
            "acceptedCounts": counts,
        });
        match mismatch {
            None => {
                let _ = writeln!(text, "automaton matches enumeration up to length {depth}");
            }
            Some((n, d)) => {
                let _ = writeln!(text, "mismatch at length {n}: {d}");
            }
        }
    }
    Ok(Output::new(json, text))
}

pub fn squarefree(alphabet: &Alphabet, length: usize) -> Result<Output, CliError> {
    let w = thue_square_free(length, alphabet)?;
    let rendered = alphabet.render(&w);
    let ok = is_square_free(&w);
    let json = json!({ "length": length, "word": rendered, "squareFree": ok });
    Ok(Output::new(json, format!("{rendered}\n")))
}
