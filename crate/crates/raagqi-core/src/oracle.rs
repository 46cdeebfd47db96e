//! Independent test oracles. Everything here is deliberately brute force
//! and kept apart from the implementation paths it checks.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::graph::SimplicialGraph;
use crate::pocset::{Pocset, Side, Ultrafilter};
use crate::words::{GroupWord, Letter};

/// Exhaustive closure of a word under adjacent commuting swaps and adjacent
/// inverse cancellations. Every geodesic representative of the element is
/// reachable, so the (length, lex) least reachable word is the canonical
/// form — computed here without touching the implementation path.
pub fn normal_form_exhaustive(g: &SimplicialGraph, word: &[Letter]) -> GroupWord {
    if g.vertex_count() <= 8 && word.len() <= 12 {
        packed_closure(g, word)
    } else {
        generic_closure(g, word)
    }
}

fn generic_closure(g: &SimplicialGraph, word: &[Letter]) -> GroupWord {
    let mut seen: HashSet<GroupWord> = HashSet::new();
    let mut queue: VecDeque<GroupWord> = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    let mut best: GroupWord = word.to_vec();
    let better = |a: &GroupWord, b: &GroupWord| (a.len(), a.as_slice()) < (b.len(), b.as_slice());
    while let Some(current) = queue.pop_front() {
        if better(&current, &best) {
            best = current.clone();
        }
        for i in 0..current.len().saturating_sub(1) {
            let (x, y) = (current[i], current[i + 1]);
            if x.vertex == y.vertex && x.inverse != y.inverse {
                let mut cancelled = current.clone();
                cancelled.drain(i..=i + 1);
                if seen.insert(cancelled.clone()) {
                    queue.push_back(cancelled);
                }
            }
            if x.vertex != y.vertex && g.adjacent(x.vertex, y.vertex) {
                let mut swapped = current.clone();
                swapped.swap(i, i + 1);
                if seen.insert(swapped.clone()) {
                    queue.push_back(swapped);
                }
            }
        }
    }
    best
}

// Packed representation: letters as nibbles (vertex << 1 | inverse), word
// little-endian in the low 48 bits, length in the top bits. Nibble order
// agrees with the letter order.
const LEN_SHIFT: u32 = 52;
const BITS_MASK: u64 = (1 << LEN_SHIFT) - 1;

fn encode(word: &[Letter]) -> u64 {
    let mut bits: u64 = 0;
    for (i, l) in word.iter().enumerate() {
        let nibble = ((l.vertex as u64) << 1) | u64::from(l.inverse);
        bits |= nibble << (4 * i);
    }
    bits | ((word.len() as u64) << LEN_SHIFT)
}

fn decode(state: u64) -> GroupWord {
    let len = (state >> LEN_SHIFT) as usize;
    (0..len)
        .map(|i| {
            let nibble = (state >> (4 * i)) & 0xF;
            Letter { vertex: (nibble >> 1) as usize, inverse: nibble & 1 == 1 }
        })
        .collect()
}

thread_local! {
    static SCRATCH: std::cell::RefCell<(HashSet<u64>, Vec<u64>)> =
        std::cell::RefCell::new((HashSet::with_capacity(1 << 12), Vec::with_capacity(256)));
}

fn packed_closure(g: &SimplicialGraph, word: &[Letter]) -> GroupWord {
    let mut adjacency = [0u16; 8];
    for v in g.vertices() {
        for &w in g.neighbors(v) {
            adjacency[v] |= 1 << w;
        }
    }
    SCRATCH.with(|cell| {
        let (seen, stack) = &mut *cell.borrow_mut();
        seen.clear();
        stack.clear();
        packed_closure_inner(&adjacency, word, seen, stack)
    })
}

fn packed_closure_inner(
    adjacency: &[u16; 8],
    word: &[Letter],
    seen: &mut HashSet<u64>,
    stack: &mut Vec<u64>,
) -> GroupWord {
    let start = encode(word);
    stack.push(start);
    seen.insert(start);
    let mut min_len = word.len();
    while let Some(state) = stack.pop() {
        let len = (state >> LEN_SHIFT) as usize;
        min_len = min_len.min(len);
        for i in 0..len.saturating_sub(1) {
            let a = (state >> (4 * i)) & 0xF;
            let b = (state >> (4 * (i + 1))) & 0xF;
            let (va, vb) = ((a >> 1) as usize, (b >> 1) as usize);
            let next = if va == vb && (a & 1) != (b & 1) {
                let bits = state & BITS_MASK;
                let low = bits & ((1u64 << (4 * i)) - 1);
                let high = (bits >> (4 * (i + 2))) << (4 * i);
                (low | high) | (((len - 2) as u64) << LEN_SHIFT)
            } else if va != vb && adjacency[va] & (1 << vb) != 0 {
                let diff = (a ^ b) << (4 * i) | (a ^ b) << (4 * (i + 1));
                state ^ diff
            } else {
                continue;
            };
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.iter()
        .filter(|&&s| (s >> LEN_SHIFT) as usize == min_len)
        .map(|&s| decode(s))
        .min_by(|a, b| a.as_slice().cmp(b.as_slice()))
        .expect("start state is always present")
}

/// Distinct elements among all words of length ≤ r, deduplicated through the
/// exhaustive oracle — an implementation-independent ball size.
pub fn ball_size_by_words(g: &SimplicialGraph, r: usize) -> usize {
    let letters: Vec<Letter> = g
        .vertices()
        .flat_map(|v| [Letter::new(v), Letter::new(v).inverted()])
        .collect();
    let mut elements: BTreeSet<GroupWord> = BTreeSet::new();
    let mut frontier: Vec<GroupWord> = vec![Vec::new()];
    elements.insert(Vec::new());
    for _ in 0..r {
        let mut next = Vec::new();
        for word in &frontier {
            for &l in &letters {
                let mut w = word.clone();
                w.push(l);
                elements.insert(normal_form_exhaustive(g, &w));
                next.push(w);
            }
        }
        frontier = next;
    }
    elements.len()
}

/// Every side assignment that is pairwise compatible, by backtracking over
/// walls in order.
pub fn ultrafilters_backtracking(p: &Pocset) -> Vec<Ultrafilter> {
    let mut found = Vec::new();
    let mut sides: Vec<Side> = Vec::new();
    backtrack(p, &mut sides, &mut found);
    found.sort();
    found
}

fn backtrack(p: &Pocset, sides: &mut Vec<Side>, found: &mut Vec<Ultrafilter>) {
    if sides.len() == p.wall_count() {
        found.push(Ultrafilter { sides: sides.clone() });
        return;
    }
    let wall = sides.len();
    'sides: for side in [Side::Low, Side::High] {
        let h = 2 * wall + usize::from(side == Side::High);
        for (w, s) in sides.iter().enumerate() {
            let prev = 2 * w + usize::from(*s == Side::High);
            if !p.compatible(prev, h) {
                continue 'sides;
            }
        }
        sides.push(side);
        backtrack(p, sides, found);
        sides.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn packed_and_generic_paths_agree() {
        for g in [fixtures::cycle(5, "v"), fixtures::complete(3, "k"), fixtures::k13()] {
            let letters: Vec<Letter> = g
                .vertices()
                .flat_map(|v| [Letter::new(v), Letter::new(v).inverted()])
                .collect();
            let mut words: Vec<GroupWord> = vec![Vec::new()];
            for _ in 0..3 {
                let mut next = Vec::new();
                for word in &words {
                    for &l in &letters {
                        let mut w = word.clone();
                        w.push(l);
                        assert_eq!(packed_closure(&g, &w), generic_closure(&g, &w), "{w:?}");
                        next.push(w);
                    }
                }
                words = next;
            }
        }
    }
}
