//! Group words and geodesic canonical forms.
//!
//! A word is geodesic once no inverse pair can be brought together through
//! commuting letters; all geodesic representatives of an element differ only
//! by swaps of adjacent commuting letters, so the lexicographically least
//! one is a canonical form. Letter order: vertex id, then positive before
//! inverse.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub vertex: VertexId,
    pub inverse: bool,
}

impl Letter {
    pub fn new(vertex: VertexId) -> Letter {
        Letter { vertex, inverse: false }
    }

    pub fn inverted(self) -> Letter {
        Letter { vertex: self.vertex, inverse: !self.inverse }
    }
}

pub type GroupWord = Vec<Letter>;

/// The canonical geodesic representative of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm(GroupWord);

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl NormalForm {
    pub fn identity() -> NormalForm {
        NormalForm(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.0.iter().map(|l| l.vertex).collect()
    }

    /// Single-letter elements are exactly the Cayley neighbors of identity.
    pub fn single_letter(&self) -> Option<Letter> {
        (self.0.len() == 1).then(|| self.0[0])
    }

    pub fn display(&self, g: &SimplicialGraph) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}-", g.label(l.vertex))
                } else {
                    g.label(l.vertex).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn commutes(g: &SimplicialGraph, a: VertexId, b: VertexId) -> bool {
    a == b || g.adjacent(a, b)
}

/// Removes one cancellable pair at a time: letters i < j inverse to each
/// other with everything strictly between commuting with them.
fn reduce(g: &SimplicialGraph, mut word: GroupWord) -> GroupWord {
    'outer: loop {
        for i in 0..word.len() {
            'inner: for j in i + 1..word.len() {
                if word[j].vertex == word[i].vertex {
                    if word[j].inverse != word[i].inverse {
                        word.drain(j..j + 1);
                        word.drain(i..i + 1);
                        continue 'outer;
                    }
                    // Same letter blocks any farther cancellation partner.
                    break 'inner;
                }
                if !commutes(g, word[j].vertex, word[i].vertex) {
                    break 'inner;
                }
            }
        }
        return word;
    }
}

/// Lexicographically least representative of a geodesic word's swap class:
/// repeatedly extract the least letter that commutes past everything before
/// it.
fn lex_least(g: &SimplicialGraph, mut word: GroupWord) -> GroupWord {
    let mut out = GroupWord::with_capacity(word.len());
    while !word.is_empty() {
        let mut best: Option<usize> = None;
        for j in 0..word.len() {
            let movable = word[..j].iter().all(|w| commutes(g, w.vertex, word[j].vertex));
            if movable && best.is_none_or(|b| word[j] < word[b]) {
                best = Some(j);
            }
        }
        let j = best.expect("some prefix letter is always movable");
        out.push(word.remove(j));
    }
    out
}

fn canonicalize(g: &SimplicialGraph, word: GroupWord) -> NormalForm {
    NormalForm(lex_least(g, reduce(g, word)))
}

/// Canonical form of an arbitrary word; rejects letters naming no vertex.
pub fn normal_form(g: &SimplicialGraph, word: &[Letter]) -> Result<NormalForm> {
    for l in word {
        if l.vertex >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", l.vertex)));
        }
    }
    Ok(canonicalize(g, word.to_vec()))
}

pub fn multiply(g: &SimplicialGraph, a: &NormalForm, b: &NormalForm) -> NormalForm {
    let mut word = a.0.clone();
    word.extend_from_slice(&b.0);
    canonicalize(g, word)
}

pub fn inverse(g: &SimplicialGraph, a: &NormalForm) -> NormalForm {
    let word: GroupWord = a.0.iter().rev().map(|l| l.inverted()).collect();
    canonicalize(g, word)
}

/// Geodesic distance between two elements in the Cayley graph.
pub fn distance(g: &SimplicialGraph, a: &NormalForm, b: &NormalForm) -> usize {
    multiply(g, &inverse(g, a), b).len()
}

/// a · v^±1 for a single generator letter.
pub fn push_letter(g: &SimplicialGraph, a: &NormalForm, letter: Letter) -> NormalForm {
    let mut word = a.0.clone();
    word.push(letter);
    canonicalize(g, word)
}

/// Parses "a", "a-", "b" style tokens joined by '.' (as produced by
/// `NormalForm::display`).
pub fn parse_word(g: &SimplicialGraph, text: &str) -> Result<Vec<Letter>> {
    let trimmed = text.trim();
    if trimmed == "e" || trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split('.')
        .map(|token| {
            let (label, inverse) = match token.strip_suffix('-') {
                Some(rest) => (rest, true),
                None => (token, false),
            };
            Ok(Letter { vertex: g.vertex(label)?, inverse })
        })
        .collect()
}
