//! Position (Glushkov) automaton of a regular expression: one state per
//! symbol occurrence plus an initial state, no ε-moves.

use std::collections::BTreeSet;

use super::regex::Regex;

pub(crate) struct PositionAutomaton {
    /// `labels[p]` is the symbol at position `p + 1`; state 0 is initial.
    pub labels: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub accepting: BTreeSet<usize>,
}

struct Summary {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

struct Builder {
    labels: Vec<usize>,
    follow: Vec<BTreeSet<usize>>,
}

impl Builder {
    fn visit(&mut self, r: &Regex) -> Summary {
        match r {
            Regex::Symbol(s) => {
                self.labels.push(*s);
                self.follow.push(BTreeSet::new());
                let p = self.labels.len();
                Summary {
                    nullable: false,
                    first: vec![p],
                    last: vec![p],
                }
            }
            Regex::Concat(parts) => {
                let mut acc = Summary {
                    nullable: true,
                    first: Vec::new(),
                    last: Vec::new(),
                };
                for part in parts {
                    let next = self.visit(part);
                    for &l in &acc.last {
                        self.follow[l - 1].extend(next.first.iter().copied());
                    }
                    if acc.nullable {
                        acc.first.extend(next.first.iter().copied());
                    }
                    acc.last = if next.nullable {
                        acc.last.into_iter().chain(next.last).collect()
                    } else {
                        next.last
                    };
                    acc.nullable &= next.nullable;
                }
                acc
            }
            Regex::Union(parts) => {
                let mut acc = Summary {
                    nullable: parts.is_empty(),
                    first: Vec::new(),
                    last: Vec::new(),
                };
                for part in parts {
                    let next = self.visit(part);
                    acc.nullable |= next.nullable;
                    acc.first.extend(next.first);
                    acc.last.extend(next.last);
                }
                acc
            }
            Regex::Plus(inner) | Regex::Star(inner) => {
                let mut s = self.visit(inner);
                for &l in &s.last {
                    self.follow[l - 1].extend(s.first.iter().copied());
                }
                if matches!(r, Regex::Star(_)) {
                    s.nullable = true;
                }
                s
            }
        }
    }
}

pub(crate) fn position_automaton(regex: &Regex) -> PositionAutomaton {
    let mut b = Builder {
        labels: Vec::new(),
        follow: Vec::new(),
    };
    let top = b.visit(regex);
    let mut edges: Vec<(usize, usize)> = top.first.iter().map(|&p| (0, p)).collect();
    for (i, follow) in b.follow.iter().enumerate() {
        edges.extend(follow.iter().map(|&q| (i + 1, q)));
    }
    let mut accepting: BTreeSet<usize> = top.last.into_iter().collect();
    if top.nullable {
        accepting.insert(0);
    }
    PositionAutomaton {
        labels: b.labels,
        edges,
        accepting,
    }
}
