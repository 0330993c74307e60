//! Right-angled Artin groups over a finite defining graph: letters, words,
//! shortlex normal forms and the group operations.

mod oracle;
mod power;

pub use oracle::{bfs_oracle_distance, oracle_ball, Piling};
pub use power::{PowerWord, Syllable};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

pub const MAX_GENERATORS: usize = 64;

/// Largest exponent accepted by the word parser.
pub const MAX_EXPONENT: i64 = 1 << 20;

#[inline]
pub(crate) fn bit(g: usize) -> u64 {
    1u64 << g
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphId(u64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    link: Vec<u64>,
    edges: Vec<(usize, usize)>,
    id: GraphId,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    generators: Vec<String>,
    edges: Vec<[String; 2]>,
}

pub(crate) fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl DefiningGraph {
    pub fn new<S: AsRef<str>>(generators: &[S], edges: &[(S, S)]) -> Result<Self> {
        if generators.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(generators.len()));
        }
        let mut names: Vec<String> = Vec::with_capacity(generators.len());
        for g in generators {
            let g = g.as_ref();
            if !valid_name(g) {
                return Err(Error::InvalidName(g.to_string()));
            }
            if names.iter().any(|n| n == g) {
                return Err(Error::DuplicateGenerator(g.to_string()));
            }
            names.push(g.to_string());
        }
        let mut link = vec![0u64; names.len()];
        let mut edge_list = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let i = names
                .iter()
                .position(|n| n == u)
                .ok_or_else(|| Error::UnknownGenerator(u.to_string()))?;
            let j = names
                .iter()
                .position(|n| n == v)
                .ok_or_else(|| Error::UnknownGenerator(v.to_string()))?;
            if i == j {
                return Err(Error::SelfLoop(u.to_string()));
            }
            if link[i] & bit(j) != 0 {
                return Err(Error::DuplicateEdge(u.to_string(), v.to_string()));
            }
            link[i] |= bit(j);
            link[j] |= bit(i);
            edge_list.push((i.min(j), i.max(j)));
        }
        let id = GraphId(fingerprint(&names, &link));
        Ok(DefiningGraph { names, link, edges: edge_list, id })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::GraphFile(e.to_string()))?;
        let edges: Vec<(String, String)> = file
            .edges
            .into_iter()
            .map(|[u, v]| (u, v))
            .collect();
        DefiningGraph::new(&file.generators, &edges)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            generators: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j)| [self.names[i].clone(), self.names[j].clone()])
                .collect(),
        };
        serde_json::to_string(&file).expect("graph serializes")
    }

    /// Z³ ∗ Z: a, b, c pairwise commuting, d free.
    pub fn z3_free_z() -> Self {
        DefiningGraph::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("a", "c")],
        )
        .expect("valid preset")
    }

    /// The path a - b - c - d.
    pub fn croke_kleiner() -> Self {
        DefiningGraph::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d")],
        )
        .expect("valid preset")
    }

    /// No commutation at all: the free group on `names`.
    pub fn free<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        DefiningGraph::new::<S>(names, &[])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Distinct and adjacent.
    pub fn commute(&self, g: usize, h: usize) -> bool {
        self.link[g] & bit(h) != 0
    }

    pub fn link_mask(&self, g: usize) -> u64 {
        self.link[g]
    }

    pub fn star_mask(&self, g: usize) -> u64 {
        self.link[g] | bit(g)
    }

    pub fn all_mask(&self) -> u64 {
        if self.names.len() == 64 {
            u64::MAX
        } else {
            bit(self.names.len()) - 1
        }
    }

    pub fn letter(&self, name: &str, sign: i64) -> Result<Letter> {
        let g = self
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Letter::new(g, sign))
    }

    /// All 2n letters in shortlex order.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.len())
            .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
            .collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(text, self)
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        Ok(self.normal_form(parse_word(text, self)?.letters()))
    }

    /// Renders letters in the word grammar, grouping repeated letters.
    pub fn format(&self, letters: &[Letter]) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i + 1;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let k = (j - i) as i64 * l.sign();
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(self.name(l.gen()));
            if k != 1 {
                out.push('^');
                out.push_str(&k.to_string());
            }
            i = j;
        }
        out
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            graph: self.id,
            letters: Vec::new(),
        }
    }

    pub fn normal_form(&self, letters: &[Letter]) -> GroupElement {
        let reduced = self.reduce(letters);
        GroupElement {
            graph: self.id,
            letters: self.shortlex(&reduced),
        }
    }

    /// Cancels every pair x … x⁻¹ whose intermediate letters commute with x.
    pub fn reduce(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            self.push_reduced(&mut out, l);
        }
        out
    }

    pub(crate) fn push_reduced(&self, out: &mut Vec<Letter>, l: Letter) {
        let lk = self.link[l.gen()];
        for i in (0..out.len()).rev() {
            let m = out[i];
            if m.gen == l.gen {
                if m == l.inverse() {
                    out.remove(i);
                    return;
                }
                break;
            }
            if lk & bit(m.gen()) == 0 {
                break;
            }
        }
        out.push(l);
    }

    /// Lexicographically least linearization of a reduced word's trace:
    /// repeatedly take the least letter that commutes with everything before it.
    pub fn shortlex(&self, reduced: &[Letter]) -> Vec<Letter> {
        let n = reduced.len();
        let mut used = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let mut blocked = 0u64;
            let mut best: Option<usize> = None;
            for i in 0..n {
                if used[i] {
                    continue;
                }
                let l = reduced[i];
                let g = l.gen();
                if blocked & !self.link[g] == 0 && best.map_or(true, |b| l < reduced[b]) {
                    best = Some(i);
                }
                blocked |= bit(g);
            }
            let b = best.expect("a reduced word always has a minimal letter");
            used[b] = true;
            out.push(reduced[b]);
        }
        out
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        if x.graph != self.id || y.graph != self.id {
            return Err(Error::MixedGraphs);
        }
        Ok(self.mul(x, y))
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        debug_assert_eq!(x.graph, y.graph);
        let mut reduced = x.letters.clone();
        for &l in &y.letters {
            self.push_reduced(&mut reduced, l);
        }
        GroupElement {
            graph: self.id,
            letters: self.shortlex(&reduced),
        }
    }

    pub fn mul_letters(&self, x: &GroupElement, letters: &[Letter]) -> GroupElement {
        let mut reduced = x.letters.clone();
        for &l in letters {
            self.push_reduced(&mut reduced, l);
        }
        GroupElement {
            graph: self.id,
            letters: self.shortlex(&reduced),
        }
    }

    pub fn invert(&self, x: &GroupElement) -> GroupElement {
        let inv: Vec<Letter> = x.letters.iter().rev().map(|l| l.inverse()).collect();
        GroupElement {
            graph: self.id,
            letters: self.shortlex(&inv),
        }
    }

    /// x⁻¹ y, the element labelling geodesics from x to y.
    pub fn between(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut reduced: Vec<Letter> = x.letters.iter().rev().map(|l| l.inverse()).collect();
        for &l in &y.letters {
            self.push_reduced(&mut reduced, l);
        }
        GroupElement {
            graph: self.id,
            letters: self.shortlex(&reduced),
        }
    }

    pub fn distance(&self, x: &GroupElement, y: &GroupElement) -> usize {
        let mut reduced: Vec<Letter> = x.letters.iter().rev().map(|l| l.inverse()).collect();
        for &l in &y.letters {
            self.push_reduced(&mut reduced, l);
        }
        reduced.len()
    }

    pub fn is_geodesic(&self, letters: &[Letter]) -> bool {
        self.reduce(letters).len() == letters.len()
    }

    /// Splits a reduced word into the letters with generator in `mask` that can
    /// be moved to the front, and the rest (both in original relative order).
    pub fn split_prefix(&self, letters: &[Letter], mask: u64) -> (Vec<Letter>, Vec<Letter>) {
        let mut head = Vec::new();
        let mut rest = Vec::new();
        let mut blocked = 0u64;
        for &l in letters {
            let g = l.gen();
            if mask & bit(g) != 0 && blocked & !self.link[g] == 0 {
                head.push(l);
            } else {
                rest.push(l);
                blocked |= bit(g);
            }
        }
        (head, rest)
    }

    /// Mirror of [`split_prefix`](Self::split_prefix): returns (rest, tail).
    pub fn split_suffix(&self, letters: &[Letter], mask: u64) -> (Vec<Letter>, Vec<Letter>) {
        let mut tail = Vec::new();
        let mut rest = Vec::new();
        let mut blocked = 0u64;
        for &l in letters.iter().rev() {
            let g = l.gen();
            if mask & bit(g) != 0 && blocked & !self.link[g] == 0 {
                tail.push(l);
            } else {
                rest.push(l);
                blocked |= bit(g);
            }
        }
        tail.reverse();
        rest.reverse();
        (rest, tail)
    }
}

fn fingerprint(names: &[String], link: &[u64]) -> u64 {
    // FNV-1a over names and adjacency, stable across runs.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    for n in names {
        n.bytes().for_each(&mut eat);
        eat(0xff);
    }
    for m in link {
        m.to_le_bytes().into_iter().for_each(&mut eat);
    }
    h
}

/// A generator or its inverse. Ordered by (generator, sign) with + first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u8,
    inv: bool,
}

impl Letter {
    pub fn new(gen: usize, sign: i64) -> Self {
        assert!(gen < MAX_GENERATORS && sign != 0);
        Letter {
            gen: gen as u8,
            inv: sign < 0,
        }
    }

    pub fn pos(gen: usize) -> Self {
        Letter::new(gen, 1)
    }

    pub fn neg(gen: usize) -> Self {
        Letter::new(gen, -1)
    }

    pub fn gen(self) -> usize {
        self.gen as usize
    }

    pub fn sign(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    pub fn is_inverse(self) -> bool {
        self.inv
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

/// A literal letter sequence, possibly unreduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
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

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }
}

/// A group element stored as its shortlex normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    graph: GraphId,
    letters: Vec<Letter>,
}

impl GroupElement {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn word(&self) -> Word {
        Word(self.letters.clone())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }
}

// Shortlex, so sorted vertex sets come out ball by ball.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.graph
            .cmp(&other.graph)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn parse_word(text: &str, graph: &DefiningGraph) -> Result<Word> {
    let mut letters = Vec::new();
    for token in text.split(' ').filter(|t| !t.is_empty()) {
        let (name, exp) = match token.split_once('^') {
            Some((name, e)) => (name, parse_exponent(token, e)?),
            None => (token, 1),
        };
        let gen = graph
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let l = Letter::new(gen, exp);
        letters.extend(std::iter::repeat(l).take(exp.unsigned_abs() as usize));
    }
    Ok(Word(letters))
}

fn parse_exponent(token: &str, e: &str) -> Result<i64> {
    let digits = e.strip_prefix(['-', '+']).unwrap_or(e);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedExponent(token.to_string()));
    }
    let value: i64 = e
        .parse()
        .map_err(|_| Error::MalformedExponent(token.to_string()))?;
    if value == 0 {
        return Err(Error::ZeroExponent(token.to_string()));
    }
    if value.abs() > MAX_EXPONENT {
        return Err(Error::MalformedExponent(token.to_string()));
    }
    Ok(value)
}

/// `graph.format` bound to a word, for use in `format!`.
pub struct Shown<'a>(pub &'a DefiningGraph, pub &'a [Letter]);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0.format(self.1);
        if s.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&s)
        }
    }
}
