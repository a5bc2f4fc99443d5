use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{LabeledAutomaton, StateId};
use crate::error::{Error, Result};
use crate::strand::Alphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

/// `{"alphabet", "states", "start", "accepting", "edges": [[from, "symbol", to]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,
    pub states: Vec<u64>,
    pub start: u64,
    pub accepting: Vec<u64>,
    pub edges: Vec<(u64, String, u64)>,
}

pub(super) fn to_doc(a: &LabeledAutomaton) -> AutomatonDoc {
    AutomatonDoc {
        alphabet: Some(a.alphabet().to_string()),
        states: a.states().map(|s| s as u64).collect(),
        start: a.start() as u64,
        accepting: a.accepting().iter().map(|&s| s as u64).collect(),
        edges: a
            .edges()
            .iter()
            .map(|&(f, sym, t)| (f as u64, a.alphabet().name(sym).to_string(), t as u64))
            .collect(),
    }
}

/// State ids are renumbered in increasing order. Without an explicit
/// alphabet, the edge symbols in first-seen order are used.
pub(super) fn from_doc(doc: &AutomatonDoc) -> Result<LabeledAutomaton> {
    let alphabet = match &doc.alphabet {
        Some(text) => Alphabet::parse(text)?,
        None => {
            let mut names: Vec<&str> = Vec::new();
            for (_, sym, _) in &doc.edges {
                if !names.contains(&sym.as_str()) {
                    names.push(sym);
                }
            }
            if names.is_empty() {
                return Err(Error::MalformedAutomaton(
                    "no alphabet and no edges to infer one from".into(),
                ));
            }
            Alphabet::new(names)?
        }
    };
    let mut ids: BTreeMap<u64, StateId> = BTreeMap::new();
    for &s in &doc.states {
        let next = ids.len();
        if ids.insert(s, next).is_some() {
            return Err(Error::MalformedAutomaton(format!("state {s} listed twice")));
        }
    }
    // BTreeMap iteration gives sorted ids; renumber accordingly.
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    let id = |s: u64| {
        ids.get(&s)
            .copied()
            .ok_or_else(|| Error::MalformedAutomaton(format!("unknown state {s}")))
    };
    let edges = doc
        .edges
        .iter()
        .map(|(f, sym, t)| Ok((id(*f)?, alphabet.lookup(sym)?, id(*t)?)))
        .collect::<Result<Vec<_>>>()?;
    let accepting = doc.accepting.iter().map(|&s| id(s)).collect::<Result<Vec<_>>>()?;
    LabeledAutomaton::new(alphabet, ids.len(), id(doc.start)?, accepting, edges)
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

fn to_dot(a: &LabeledAutomaton) -> String {
    let mut out = String::from("digraph automaton {\n    rankdir=LR;\n    __start [shape=point];\n");
    for s in a.states() {
        let shape = if a.is_accepting(s) { "doublecircle" } else { "circle" };
        writeln!(out, "    {s} [shape={shape}];").unwrap();
    }
    writeln!(out, "    __start -> {};", a.start()).unwrap();
    for &(f, sym, t) in a.edges() {
        writeln!(out, "    {f} -> {t} [label=\"{}\"];", escape(a.alphabet().name(sym))).unwrap();
    }
    out.push_str("}\n");
    out
}

pub(super) fn export(a: &LabeledAutomaton, format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Dot => Ok(to_dot(a)),
        ExportFormat::Json => Ok(serde_json::to_string(&to_doc(a))?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::build_automaton;
    use crate::strand::DuplicationSystem;

    fn loop_automaton() -> LabeledAutomaton {
        LabeledAutomaton::new(Alphabet::parse("0").unwrap(), 1, 0, [0], [(0, 0, 0)]).unwrap()
    }

    #[test]
    fn json_of_single_loop() {
        let json: serde_json::Value =
            serde_json::from_str(&loop_automaton().export(ExportFormat::Json).unwrap()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"alphabet": "0", "states": [0], "start": 0, "accepting": [0], "edges": [[0, "0", 0]]})
        );
        let bare = serde_json::json!({"states": [0], "start": 0, "accepting": [0], "edges": [[0, "0", 0]]});
        let doc: AutomatonDoc = serde_json::from_value(bare).unwrap();
        assert_eq!(LabeledAutomaton::from_doc(&doc).unwrap(), loop_automaton());
    }

    #[test]
    fn dot_of_single_loop() {
        let dot = loop_automaton().export(ExportFormat::Dot).unwrap();
        assert!(dot.contains("0 -> 0 [label=\"0\"]"));
        assert!(dot.contains("0 [shape=doublecircle]"));
    }

    #[test]
    fn json_round_trip() {
        let s = DuplicationSystem::parse("012", "012", 3).unwrap();
        let a = build_automaton(&s).unwrap();
        let text = a.export(ExportFormat::Json).unwrap();
        let doc: AutomatonDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(LabeledAutomaton::from_doc(&doc).unwrap(), a);
    }

    #[test]
    fn unknown_format() {
        assert!(matches!("svg".parse::<ExportFormat>(), Err(Error::UnknownFormat(f)) if f == "svg"));
        assert_eq!("DOT".parse::<ExportFormat>().unwrap(), ExportFormat::Dot);
    }

    #[test]
    fn malformed_documents() {
        let doc = AutomatonDoc {
            alphabet: Some("01".into()),
            states: vec![0],
            start: 0,
            accepting: vec![],
            edges: vec![(0, "0".into(), 7)],
        };
        assert!(matches!(
            LabeledAutomaton::from_doc(&doc),
            Err(Error::MalformedAutomaton(_))
        ));
        let doc = AutomatonDoc {
            edges: vec![(0, "2".into(), 0)],
            ..doc
        };
        assert!(matches!(LabeledAutomaton::from_doc(&doc), Err(Error::UnknownSymbol(_))));
    }
}
