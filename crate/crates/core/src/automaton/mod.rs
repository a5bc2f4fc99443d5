//! Finite automata for systems with maximum duplication length at most 3.
//!
//! [`build_automaton`] colors the seed so its symbols are distinct, writes
//! the system's regular expression over the colored seed, compiles it into
//! a position automaton, decolors the edge labels, and finally applies the
//! subset construction and trims the result. The output is deterministic and
//! every state lies on some accepting path, which is what transfer-matrix
//! counting and the closure certificate rely on.

mod closure;
mod export;
mod glushkov;
pub mod regex;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::strand::{Alphabet, DuplicationSystem, Symbol, Word};

pub use closure::{
    verify_duplication_closure, CertificateDoc, ClosureCertificate, ClosureEntry, ClosureVerdict, EntryDoc,
    SuperstateDoc,
};
pub use export::{AutomatonDoc, ExportFormat};
pub use regex::{Regex, RegexSpec};

pub type StateId = usize;

/// A finite automaton with symbol-labeled edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledAutomaton {
    alphabet: Alphabet,
    num_states: usize,
    start: StateId,
    accepting: BTreeSet<StateId>,
    /// Sorted, duplicate-free.
    edges: Vec<(StateId, Symbol, StateId)>,
    out: Vec<Vec<(Symbol, StateId)>>,
}

impl LabeledAutomaton {
    pub fn new(
        alphabet: Alphabet,
        num_states: usize,
        start: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        edges: impl IntoIterator<Item = (StateId, Symbol, StateId)>,
    ) -> Result<Self> {
        let check = |s: StateId| {
            if s < num_states {
                Ok(s)
            } else {
                Err(Error::InvalidState(s))
            }
        };
        check(start)?;
        let accepting = accepting.into_iter().map(check).collect::<Result<BTreeSet<_>>>()?;
        let mut edges: Vec<_> = edges.into_iter().collect();
        for &(from, sym, to) in &edges {
            check(from)?;
            check(to)?;
            if usize::from(sym) >= alphabet.len() {
                return Err(Error::UnknownSymbol(sym.to_string()));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut out = vec![Vec::new(); num_states];
        for &(from, sym, to) in &edges {
            out[from].push((sym, to));
        }
        Ok(Self {
            alphabet,
            num_states,
            start,
            accepting,
            edges,
            out,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.num_states
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accepting.contains(&state)
    }

    pub fn edges(&self) -> &[(StateId, Symbol, StateId)] {
        &self.edges
    }

    pub fn out_edges(&self, state: StateId) -> &[(Symbol, StateId)] {
        &self.out[state]
    }

    /// No state has two outgoing edges with the same symbol.
    pub fn is_deterministic(&self) -> bool {
        self.out.iter().all(|edges| edges.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// States reachable from `states` by one edge labeled `symbol`.
    pub fn post(&self, states: &BTreeSet<StateId>, symbol: Symbol) -> BTreeSet<StateId> {
        states
            .iter()
            .flat_map(|&s| self.out[s].iter())
            .filter(|&&(sym, _)| sym == symbol)
            .map(|&(_, to)| to)
            .collect()
    }

    /// States reachable from `from` along a path labeled `word`.
    pub fn run_from(&self, from: StateId, word: &[Symbol]) -> BTreeSet<StateId> {
        word.iter()
            .fold(BTreeSet::from([from]), |set, &sym| self.post(&set, sym))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.run_from(self.start, word)
            .iter()
            .any(|s| self.accepting.contains(s))
    }

    /// Whether some path, starting anywhere, is labeled `word`. On a trim
    /// automaton this holds exactly when `word` is a factor of an accepted
    /// word.
    pub fn reads_factor(&self, word: &[Symbol]) -> bool {
        let all: BTreeSet<StateId> = self.states().collect();
        !word
            .iter()
            .try_fold(all, |set, &sym| {
                let next = self.post(&set, sym);
                (!next.is_empty()).then_some(next)
            })
            .is_none()
    }

    fn reachable_from(&self, roots: impl IntoIterator<Item = StateId>, backward: bool) -> Vec<bool> {
        let mut preds = vec![Vec::new(); self.num_states];
        if backward {
            for &(from, _, to) in &self.edges {
                preds[to].push(from);
            }
        }
        let mut seen = vec![false; self.num_states];
        let mut stack: Vec<StateId> = roots.into_iter().collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(s) = stack.pop() {
            let next: Vec<StateId> = if backward {
                preds[s].clone()
            } else {
                self.out[s].iter().map(|&(_, t)| t).collect()
            };
            for t in next {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// `useful[s]` iff `s` is reachable from the start and can reach an
    /// accepting state.
    pub fn useful_states(&self) -> Vec<bool> {
        let fwd = self.reachable_from([self.start], false);
        let bwd = self.reachable_from(self.accepting.iter().copied(), true);
        fwd.iter().zip(bwd).map(|(&a, b)| a && b).collect()
    }

    /// Keeps the start state and every useful state, renumbered in order.
    pub fn trim(&self) -> LabeledAutomaton {
        let mut keep = self.useful_states();
        keep[self.start] = true;
        let mut remap = vec![None; self.num_states];
        let mut next = 0;
        for (s, &k) in keep.iter().enumerate() {
            if k {
                remap[s] = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(f, sym, t)| Some((remap[f]?, sym, remap[t]?)));
        let accepting = self.accepting.iter().filter_map(|&s| remap[s]);
        LabeledAutomaton::new(
            self.alphabet.clone(),
            next,
            remap[self.start].expect("start is kept"),
            accepting,
            edges,
        )
        .expect("trimming preserves validity")
    }

    /// Subset construction; states are numbered in breadth-first order with
    /// symbols explored in alphabet order.
    pub fn determinize(&self) -> LabeledAutomaton {
        let start = BTreeSet::from([self.start]);
        let mut ids: HashMap<BTreeSet<StateId>, StateId> = HashMap::from([(start.clone(), 0)]);
        let mut queue = VecDeque::from([start]);
        let mut subsets = Vec::new();
        let mut edges = Vec::new();
        while let Some(set) = queue.pop_front() {
            let id = ids[&set];
            for sym in self.alphabet.symbols() {
                let target = self.post(&set, sym);
                if target.is_empty() {
                    continue;
                }
                let next_id = ids.len();
                let to = *ids.entry(target.clone()).or_insert_with(|| {
                    queue.push_back(target);
                    next_id
                });
                edges.push((id, sym, to));
            }
            subsets.push(set);
        }
        let accepting = subsets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|s| self.accepting.contains(s)))
            .map(|(i, _)| i);
        LabeledAutomaton::new(self.alphabet.clone(), subsets.len(), 0, accepting, edges)
            .expect("subset construction is valid")
    }

    /// Moore partition refinement of a deterministic automaton. Missing
    /// transitions go to an implicit rejecting sink.
    pub fn minimize(&self) -> Result<LabeledAutomaton> {
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        let trimmed = self.trim();
        let n = trimmed.num_states;
        let sink = n;
        let delta = |s: StateId, sym: Symbol| -> StateId {
            if s == sink {
                return sink;
            }
            trimmed.out[s]
                .iter()
                .find(|&&(x, _)| x == sym)
                .map_or(sink, |&(_, t)| t)
        };
        let mut class: Vec<usize> = (0..=n).map(|s| usize::from(s < n && trimmed.is_accepting(s))).collect();
        loop {
            let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
            let refined: Vec<usize> = (0..=n)
                .map(|s| {
                    let mut sig = vec![class[s]];
                    sig.extend(trimmed.alphabet.symbols().map(|sym| class[delta(s, sym)]));
                    let fresh = signatures.len();
                    *signatures.entry(sig).or_insert(fresh)
                })
                .collect();
            let stable = signatures.len() == class.iter().collect::<HashSet<_>>().len();
            class = refined;
            if stable {
                break;
            }
        }
        let sink_class = class[sink];
        let mut remap: BTreeMap<usize, StateId> = BTreeMap::new();
        // Number classes by their first member so the start stays at 0.
        for &c in &class[..n] {
            if c != sink_class {
                let next = remap.len();
                remap.entry(c).or_insert(next);
            }
        }
        let edges: BTreeSet<_> = trimmed
            .edges
            .iter()
            .filter(|&&(f, _, t)| class[f] != sink_class && class[t] != sink_class)
            .map(|&(f, sym, t)| (remap[&class[f]], sym, remap[&class[t]]))
            .collect();
        let accepting: Vec<_> = trimmed.accepting.iter().map(|&s| remap[&class[s]]).collect();
        let start = remap.get(&class[trimmed.start]).copied();
        match start {
            Some(start) => LabeledAutomaton::new(trimmed.alphabet.clone(), remap.len(), start, accepting, edges),
            None => LabeledAutomaton::new(trimmed.alphabet.clone(), 1, 0, [], []),
        }
    }

    /// Unique successor of `state` on `symbol` in a deterministic automaton.
    pub fn step(&self, state: StateId, symbol: Symbol) -> Option<StateId> {
        self.out[state].iter().find(|&&(s, _)| s == symbol).map(|&(_, t)| t)
    }

    /// Follows `word` from the start state of a deterministic automaton.
    pub fn state_after(&self, word: &[Symbol]) -> Option<StateId> {
        word.iter().try_fold(self.start, |s, &sym| self.step(s, sym))
    }

    /// Applies a letter-to-letter map to every edge label.
    pub fn relabel(&self, alphabet: Alphabet, map: impl Fn(Symbol) -> Symbol) -> Result<LabeledAutomaton> {
        LabeledAutomaton::new(
            alphabet,
            self.num_states,
            self.start,
            self.accepting.iter().copied(),
            self.edges.iter().map(|&(f, s, t)| (f, map(s), t)),
        )
    }

    /// Exact number of accepted words of each length `0..=n`.
    pub fn count_accepted_upto(&self, n: usize) -> Result<Vec<BigUint>> {
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        let mut paths = vec![BigUint::default(); self.num_states];
        paths[self.start] = BigUint::from(1u8);
        let mut counts = Vec::with_capacity(n + 1);
        for len in 0..=n {
            counts.push(self.accepting.iter().map(|&s| &paths[s]).sum());
            if len == n {
                break;
            }
            let mut next = vec![BigUint::default(); self.num_states];
            for &(from, _, to) in &self.edges {
                next[to] += &paths[from];
            }
            paths = next;
        }
        Ok(counts)
    }

    /// Every accepted word of length exactly `n`.
    pub fn accepted_words(&self, n: usize) -> BTreeSet<Word> {
        let dfa;
        let a = if self.is_deterministic() {
            self
        } else {
            dfa = self.determinize();
            &dfa
        };
        let mut out = BTreeSet::new();
        let mut prefix = Vec::with_capacity(n);
        a.collect_words(a.start, n, &mut prefix, &mut out);
        out
    }

    fn collect_words(&self, state: StateId, remaining: usize, prefix: &mut Vec<Symbol>, out: &mut BTreeSet<Word>) {
        if remaining == 0 {
            if self.is_accepting(state) {
                out.insert(Word::from(&prefix[..]));
            }
            return;
        }
        for &(sym, to) in &self.out[state] {
            prefix.push(sym);
            self.collect_words(to, remaining - 1, prefix, out);
            prefix.pop();
        }
    }

    /// Transfer matrix over the useful states.
    pub fn transfer_matrix(&self) -> TransferMatrix {
        let useful = self.useful_states();
        let states: Vec<StateId> = self.states().filter(|&s| useful[s]).collect();
        let index: HashMap<StateId, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut entries = vec![vec![0u64; states.len()]; states.len()];
        for &(from, _, to) in &self.edges {
            if let (Some(&i), Some(&j)) = (index.get(&from), index.get(&to)) {
                entries[i][j] += 1;
            }
        }
        TransferMatrix { states, entries }
    }

    pub fn to_doc(&self) -> AutomatonDoc {
        export::to_doc(self)
    }

    pub fn from_doc(doc: &AutomatonDoc) -> Result<Self> {
        export::from_doc(doc)
    }

    pub fn export(&self, format: ExportFormat) -> Result<String> {
        export::export(self, format)
    }
}

/// `entries[i][j]` is the number of symbols labeling an edge from
/// `states[i]` to `states[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub states: Vec<StateId>,
    pub entries: Vec<Vec<u64>>,
}

impl TransferMatrix {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&x| x as f64).collect())
            .collect()
    }

    /// Principal submatrix on the given positions.
    pub fn restrict(&self, rows: &[usize]) -> TransferMatrix {
        TransferMatrix {
            states: rows.iter().map(|&i| self.states[i]).collect(),
            entries: rows
                .iter()
                .map(|&i| rows.iter().map(|&j| self.entries[i][j]).collect())
                .collect(),
        }
    }
}

/// Deterministic, trimmed automaton accepting exactly the system's words.
pub fn build_automaton(system: &DuplicationSystem) -> Result<LabeledAutomaton> {
    let spec = RegexSpec::for_system(system)?;
    let nfa = position_nfa(&spec, system.alphabet().clone(), |c| spec.letter[c])?;
    Ok(nfa.determinize().trim())
}

/// The automaton of the colored system, before decoloring, together with the
/// decoloring map `h` from colored symbols to system symbols.
pub fn build_colored_automaton(system: &DuplicationSystem) -> Result<(LabeledAutomaton, Vec<Symbol>)> {
    let spec = RegexSpec::for_system(system)?;
    let names = spec
        .letter
        .iter()
        .enumerate()
        .map(|(i, &s)| format!("{}#{i}", system.alphabet().name(s)));
    let colored = Alphabet::new(names)?;
    let nfa = position_nfa(&spec, colored, |c| c as Symbol)?;
    Ok((nfa.determinize().trim(), spec.letter.clone()))
}

fn position_nfa(spec: &RegexSpec, alphabet: Alphabet, letter: impl Fn(usize) -> Symbol) -> Result<LabeledAutomaton> {
    let pa = glushkov::position_automaton(&spec.expr);
    let edges = pa.edges.iter().map(|&(from, to)| (from, letter(pa.labels[to - 1]), to));
    LabeledAutomaton::new(alphabet, pa.labels.len() + 1, 0, pa.accepting.iter().copied(), edges)
}

/// Accepted words of length `n` of a deterministic automaton, counted via
/// powers of its transfer structure.
pub fn count_accepted(a: &LabeledAutomaton, n: usize) -> Result<BigUint> {
    Ok(a.count_accepted_upto(n)?.pop().expect("n + 1 entries"))
}

/// True iff every label leading from `c` to acceptance also leads from `d`
/// to acceptance, i.e. `d` is a superstate of `c`.
pub fn right_language_subset(a: &LabeledAutomaton, c: StateId, d: StateId) -> Result<bool> {
    for s in [c, d] {
        if s >= a.num_states() {
            return Err(Error::InvalidState(s));
        }
    }
    let accepts = |set: &BTreeSet<StateId>| set.iter().any(|s| a.is_accepting(*s));
    let first = (BTreeSet::from([c]), BTreeSet::from([d]));
    let mut seen = HashSet::from([first.clone()]);
    let mut queue = VecDeque::from([first]);
    while let Some((left, right)) = queue.pop_front() {
        if accepts(&left) && !accepts(&right) {
            return Ok(false);
        }
        for sym in a.alphabet().symbols() {
            let l = a.post(&left, sym);
            if l.is_empty() {
                continue;
            }
            let pair = (l, a.post(&right, sym));
            if seen.insert(pair.clone()) {
                queue.push_back(pair);
            }
        }
    }
    Ok(true)
}
