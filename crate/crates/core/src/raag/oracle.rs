//! An independent solution of the word problem (pilings) and a breadth-first
//! search over literal letter moves. Used as ground truth in tests.

use super::{DefiningGraph, GroupElement, Letter, Word};
use crate::error::{Error, Result};
use std::collections::HashSet;

/// One column per generator; each column holds ±1 for letters of that
/// generator and 0 for tiles pushed by non-commuting letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piling {
    columns: Vec<Vec<i8>>,
}

impl Piling {
    pub fn identity(graph: &DefiningGraph) -> Self {
        Piling {
            columns: vec![Vec::new(); graph.len()],
        }
    }

    pub fn of(graph: &DefiningGraph, letters: &[Letter]) -> Self {
        let mut p = Piling::identity(graph);
        for &l in letters {
            p.push(graph, l);
        }
        p
    }

    pub fn push(&mut self, graph: &DefiningGraph, l: Letter) {
        let g = l.gen();
        let s = l.sign() as i8;
        let cancel = self.columns[g].last() == Some(&-s);
        for h in 0..graph.len() {
            if h == g || graph.commute(g, h) {
                continue;
            }
            if cancel {
                let top = self.columns[h].pop();
                debug_assert_eq!(top, Some(0));
            } else {
                self.columns[h].push(0);
            }
        }
        if cancel {
            self.columns[g].pop();
        } else {
            self.columns[g].push(s);
        }
    }

    /// Number of letter tiles, which is the word length of the element.
    pub fn length(&self) -> usize {
        self.columns
            .iter()
            .map(|c| c.iter().filter(|&&t| t != 0).count())
            .sum()
    }
}

/// Distance by breadth-first search from x, identifying vertices by pilings.
pub fn bfs_oracle_distance(
    graph: &DefiningGraph,
    x: &GroupElement,
    y: &GroupElement,
    radius: u32,
    cap: u32,
) -> Result<u32> {
    if radius > cap {
        return Err(Error::BallCapExceeded { radius, cap });
    }
    let target = Piling::of(graph, y.letters());
    let start = Piling::of(graph, x.letters());
    if start == target {
        return Ok(0);
    }
    let letters = graph.letters();
    let mut seen: HashSet<Piling> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    for depth in 1..=radius {
        let mut next = Vec::new();
        for p in &frontier {
            for &l in &letters {
                let mut q = p.clone();
                q.push(graph, l);
                if q == target {
                    return Ok(depth);
                }
                if seen.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    Err(Error::NotInBall(radius))
}

/// Every vertex of the radius-r ball about 1, as (a word reaching it, BFS depth).
pub fn oracle_ball(graph: &DefiningGraph, radius: u32) -> Vec<(Word, u32)> {
    let letters = graph.letters();
    let start = Piling::identity(graph);
    let mut seen: HashSet<Piling> = HashSet::new();
    seen.insert(start.clone());
    let mut out = vec![(Word::default(), 0)];
    let mut frontier = vec![(start, Word::default())];
    for depth in 1..=radius {
        let mut next = Vec::new();
        for (p, w) in &frontier {
            for &l in &letters {
                let mut q = p.clone();
                q.push(graph, l);
                if seen.insert(q.clone()) {
                    let mut v = w.clone();
                    v.0.push(l);
                    out.push((v.clone(), depth));
                    next.push((q, v));
                }
            }
        }
        frontier = next;
    }
    out
}
