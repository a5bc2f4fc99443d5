//! Certificate that an automaton's language is closed under tandem
//! duplication of blocks of length `<= k`.
//!
//! For a state `u` and length `j`, let `P` be the labels of length-`j` paths
//! ending in `u` and `Q` the labels of length-`j` cycles through `u`. If
//! `P ⊆ Q`, any path `pqr` with `q` ending in `u` can read `q` once more and
//! come back to `u`. Otherwise each label in `P \ Q` must be readable from
//! `u` into some superstate of `u`, from which every suffix `r` still leads
//! to acceptance.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{right_language_subset, LabeledAutomaton, StateId};
use crate::strand::{Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureVerdict {
    /// Every length-`j` label into the state is also a cycle label.
    LabelSetsAgree,
    /// Some labels are not cycle labels; each is re-read from the state into
    /// the listed superstate.
    ViaSuperstate(Vec<(Word, StateId)>),
    /// A path with this label ends in the state and cannot be duplicated.
    Counterexample(Word),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureEntry {
    pub state: StateId,
    pub length: usize,
    pub verdict: ClosureVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCertificate {
    pub max_dup: usize,
    pub entries: Vec<ClosureEntry>,
}

impl ClosureCertificate {
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClosureEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.verdict, ClosureVerdict::Counterexample(_)))
    }

    pub fn superstate_entries(&self) -> impl Iterator<Item = &ClosureEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.verdict, ClosureVerdict::ViaSuperstate(_)))
    }

    pub fn entry(&self, state: StateId, length: usize) -> Option<&ClosureEntry> {
        self.entries.iter().find(|e| e.state == state && e.length == length)
    }

    pub fn to_doc(&self, a: &LabeledAutomaton) -> CertificateDoc {
        let render = |w: &Word| a.alphabet().render(w);
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let (verdict, labels, counterexample) = match &e.verdict {
                    ClosureVerdict::LabelSetsAgree => ("label-sets-agree", Vec::new(), None),
                    ClosureVerdict::ViaSuperstate(items) => (
                        "via-superstate",
                        items
                            .iter()
                            .map(|(w, d)| SuperstateDoc {
                                label: render(w),
                                superstate: *d,
                            })
                            .collect(),
                        None,
                    ),
                    ClosureVerdict::Counterexample(w) => ("counterexample", Vec::new(), Some(render(w))),
                };
                EntryDoc {
                    state: e.state,
                    length: e.length,
                    verdict,
                    superstates: labels,
                    counterexample,
                }
            })
            .collect();
        CertificateDoc {
            max_dup: self.max_dup,
            passed: self.passed(),
            entries,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateDoc {
    #[serde(rename = "maxDup")]
    pub max_dup: usize,
    pub passed: bool,
    pub entries: Vec<EntryDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryDoc {
    pub state: StateId,
    pub length: usize,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub superstates: Vec<SuperstateDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperstateDoc {
    pub label: String,
    pub superstate: StateId,
}

/// For every reachable state `from`, every length-`j` path label together
/// with the state it ends in.
fn paths_of_length(a: &LabeledAutomaton, sources: &[StateId], j: usize) -> Vec<(StateId, Word, StateId)> {
    let mut out = Vec::new();
    let mut label = Vec::with_capacity(j);
    for &from in sources {
        walk(a, from, from, j, &mut label, &mut out);
    }
    out
}

fn walk(
    a: &LabeledAutomaton,
    origin: StateId,
    at: StateId,
    remaining: usize,
    label: &mut Vec<Symbol>,
    out: &mut Vec<(StateId, Word, StateId)>,
) {
    if remaining == 0 {
        out.push((origin, Word::from(&label[..]), at));
        return;
    }
    for &(sym, to) in a.out_edges(at) {
        label.push(sym);
        walk(a, origin, to, remaining - 1, label, out);
        label.pop();
    }
}

/// Checks, for every reachable state and block length `1..=max_dup`, that
/// every path ending in the state is duplicable.
pub fn verify_duplication_closure(a: &LabeledAutomaton, max_dup: usize) -> ClosureCertificate {
    let reachable: Vec<StateId> = {
        let mut seen = BTreeSet::from([a.start()]);
        let mut stack = vec![a.start()];
        while let Some(s) = stack.pop() {
            for &(_, t) in a.out_edges(s) {
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen.into_iter().collect()
    };

    let mut entries = Vec::new();
    for j in 1..=max_dup {
        // ending state -> labels of paths into it, and labels of cycles at it
        let mut into: BTreeMap<StateId, BTreeSet<Word>> = BTreeMap::new();
        let mut cycles: BTreeMap<StateId, BTreeSet<Word>> = BTreeMap::new();
        for (from, label, to) in paths_of_length(a, &reachable, j) {
            if from == to {
                cycles.entry(to).or_default().insert(label.clone());
            }
            into.entry(to).or_default().insert(label);
        }
        for &u in &reachable {
            let empty = BTreeSet::new();
            let cyc = cycles.get(&u).unwrap_or(&empty);
            let offending: Vec<&Word> = into
                .get(&u)
                .into_iter()
                .flatten()
                .filter(|l| !cyc.contains(*l))
                .collect();
            let verdict = if offending.is_empty() {
                ClosureVerdict::LabelSetsAgree
            } else {
                let mut witnesses = Vec::new();
                let mut failed = None;
                for label in offending {
                    let target = a
                        .run_from(u, label)
                        .into_iter()
                        .find(|&d| right_language_subset(a, u, d).expect("states come from the automaton"));
                    match target {
                        Some(d) => witnesses.push((label.clone(), d)),
                        None => {
                            failed = Some(label.clone());
                            break;
                        }
                    }
                }
                match failed {
                    Some(label) => ClosureVerdict::Counterexample(label),
                    None => ClosureVerdict::ViaSuperstate(witnesses),
                }
            };
            entries.push(ClosureEntry {
                state: u,
                length: j,
                verdict,
            });
        }
    }
    entries.sort_by_key(|e| (e.state, e.length));
    ClosureCertificate { max_dup, entries }
}
