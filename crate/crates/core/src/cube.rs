//! The 1-skeleton of the universal cover of the Salvetti complex: walls,
//! halfspaces, separation, transversality, strong separation and gates.
//!
//! A wall dual to the edge (g, g·v) is named by the minimal representative of
//! the coset g⟨lk v⟩ together with v. Its carrier is base·⟨lk v⟩·{1, v}.

use crate::error::{Error, Result};
use crate::raag::{bit, DefiningGraph, GroupElement, Letter, Word};
use crate::DEFAULT_CAP;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    pub base: GroupElement,
    pub gen: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub wall: Wall,
    pub side: Side,
}

/// A finite restriction of an ultrafilter on halfspaces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ultrafilter {
    pub assignments: BTreeMap<Wall, Side>,
}

impl Ultrafilter {
    /// Property (1): the chosen halfspaces pairwise intersect.
    pub fn is_consistent(&self, cx: &CubeComplex) -> bool {
        let items: Vec<(&Wall, &Side)> = self.assignments.iter().collect();
        for (i, (h, s)) in items.iter().enumerate() {
            for (k, t) in &items[i + 1..] {
                if !cx.halfspaces_meet(h, **s, k, **t) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingCount {
    pub count: usize,
    pub certified: bool,
    /// Distance between the carriers.
    pub carrier_distance: usize,
}

/// Outcome of an n-separation test.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Separation {
    /// At most n common crossing walls, proven.
    Certified,
    /// More than n common crossing walls were exhibited.
    Refuted,
    /// The bounded search was inconclusive.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    graph: DefiningGraph,
    cap: u32,
}

impl CubeComplex {
    pub fn new(graph: DefiningGraph) -> Self {
        CubeComplex {
            graph,
            cap: DEFAULT_CAP,
        }
    }

    pub fn with_cap(graph: DefiningGraph, cap: u32) -> Self {
        CubeComplex { graph, cap }
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Parses a vertex; `1` denotes the identity, as in [`format`](Self::format).
    pub fn element(&self, text: &str) -> Result<GroupElement> {
        if text.trim() == "1" {
            return Ok(self.graph.identity());
        }
        self.graph.parse_element(text)
    }

    /// Minimal representative of the coset x⟨mask⟩.
    pub fn min_coset_rep(&self, x: &GroupElement, mask: u64) -> GroupElement {
        let (rest, _) = self.graph.split_suffix(x.letters(), mask);
        self.graph.normal_form(&rest)
    }

    /// The wall dual to the edge (x, x·gen).
    pub fn wall(&self, x: &GroupElement, gen: usize) -> Wall {
        Wall {
            base: self.min_coset_rep(x, self.graph.link_mask(gen)),
            gen,
        }
    }

    pub fn wall_of_edge(&self, v: &GroupElement, letter: Letter) -> Wall {
        if letter.is_inverse() {
            let minus = self.graph.mul_letters(v, &[letter]);
            self.wall(&minus, letter.gen())
        } else {
            self.wall(v, letter.gen())
        }
    }

    /// Walls crossed by a geodesic from x to y, in crossing order.
    pub fn walls_between(&self, x: &GroupElement, y: &GroupElement) -> Vec<Wall> {
        let u = self.graph.between(x, y);
        self.walls_along(x, u.letters())
    }

    /// Walls dual to the successive edges of the path x·w.
    pub fn walls_along(&self, x: &GroupElement, letters: &[Letter]) -> Vec<Wall> {
        let mut cur = x.clone();
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            out.push(self.wall_of_edge(&cur, l));
            cur = self.graph.mul_letters(&cur, &[l]);
        }
        out
    }

    pub fn side(&self, h: &Wall, x: &GroupElement) -> Side {
        let u = self.graph.between(&h.base, x);
        let lk = self.graph.link_mask(h.gen);
        for l in u.letters() {
            if l.gen() == h.gen {
                return if l.is_inverse() { Side::Minus } else { Side::Plus };
            }
            if lk & bit(l.gen()) == 0 {
                return Side::Minus;
            }
        }
        Side::Minus
    }

    /// Transversality: the generators commute and base1⁻¹·base2 lies in
    /// ⟨lk v1⟩⟨lk v2⟩, i.e. the two carrier cosets share a vertex.
    pub fn crosses(&self, h1: &Wall, h2: &Wall) -> bool {
        if h1.gen == h2.gen || !self.graph.commute(h1.gen, h2.gen) {
            return false;
        }
        let u = self.graph.between(&h1.base, &h2.base);
        let (_, rest) = self
            .graph
            .split_prefix(u.letters(), self.graph.link_mask(h1.gen));
        let (rest, _) = self
            .graph
            .split_suffix(&rest, self.graph.link_mask(h2.gen));
        rest.is_empty()
    }

    pub fn carrier_contains(&self, h: &Wall, x: &GroupElement) -> bool {
        let u = self.graph.between(&h.base, x);
        let lk = self.graph.link_mask(h.gen);
        let mut seen_gen = false;
        for l in u.letters() {
            if l.gen() == h.gen {
                if seen_gen || l.is_inverse() {
                    return false;
                }
                seen_gen = true;
            } else if lk & bit(l.gen()) == 0 {
                return false;
            }
        }
        true
    }

    /// Nearest carrier vertex of h to x. The carrier is the product of the
    /// parabolic ⟨lk v⟩ with the edge {1, v}, so the gate is read off the
    /// projection to base·⟨st v⟩.
    pub fn gate(&self, x: &GroupElement, h: &Wall) -> GroupElement {
        let u = self.graph.between(&h.base, x);
        let (head, _) = self
            .graph
            .split_prefix(u.letters(), self.graph.star_mask(h.gen));
        let k: i64 = head
            .iter()
            .filter(|l| l.gen() == h.gen)
            .map(|l| l.sign())
            .sum();
        let mut path: Vec<Letter> = head.into_iter().filter(|l| l.gen() != h.gen).collect();
        if k >= 1 {
            path.push(Letter::pos(h.gen));
        }
        self.graph.mul_letters(&h.base, &path)
    }

    /// A pair of carrier vertices realizing the distance between carriers.
    pub fn gate_pair(&self, h1: &Wall, h2: &Wall) -> (GroupElement, GroupElement) {
        let b0 = self.gate(&h1.base, h2);
        let a = self.gate(&b0, h1);
        let b = self.gate(&a, h2);
        (a, b)
    }

    /// Walls crossing both h1 and h2.
    pub fn crossing_count(&self, h1: &Wall, h2: &Wall, slack: usize) -> Result<CrossingCount> {
        self.crossing_search(h1, h2, slack, None)
    }

    /// Decides whether at most n walls cross both h1 and h2.
    pub fn n_separated(&self, h1: &Wall, h2: &Wall, n: usize, slack: usize) -> Result<Separation> {
        let c = self.crossing_search(h1, h2, slack, Some(n + 1))?;
        Ok(if c.count > n {
            Separation::Refuted
        } else if c.certified {
            Separation::Certified
        } else {
            Separation::Unknown
        })
    }

    /// Generators that a wall crossing both h1 and h2 could carry. When this
    /// is empty no wall crosses both.
    pub fn common_crossing_generators(&self, h1: &Wall, h2: &Wall) -> u64 {
        let (a, b) = self.gate_pair(h1, h2);
        let mut mask = self.graph.link_mask(h1.gen) & self.graph.link_mask(h2.gen);
        for s in self.walls_between(&a, &b) {
            mask &= self.graph.link_mask(s.gen);
        }
        mask
    }

    /// Strong separation proven algebraically (no search).
    pub fn strongly_separated(&self, h1: &Wall, h2: &Wall) -> bool {
        h1 != h2 && !self.crosses(h1, h2) && self.common_crossing_generators(h1, h2) == 0
    }

    fn crossing_search(
        &self,
        h1: &Wall,
        h2: &Wall,
        slack: usize,
        stop_after: Option<usize>,
    ) -> Result<CrossingCount> {
        if h1 == h2 {
            return Err(Error::InvalidPair("equal walls".into()));
        }
        if self.crosses(h1, h2) {
            return Err(Error::WallsCross);
        }
        let (a, b) = self.gate_pair(h1, h2);
        let separating = self.walls_between(&a, &b);
        let d = separating.len();
        let mut cand = self.graph.link_mask(h1.gen) & self.graph.link_mask(h2.gen);
        for s in &separating {
            cand &= self.graph.link_mask(s.gen);
        }
        if cand == 0 {
            return Ok(CrossingCount {
                count: 0,
                certified: true,
                carrier_distance: d,
            });
        }
        // A wall crossing h1 meets it in a square based on the minus coset
        // base1·⟨lk v1⟩; search that coset around the gate.
        let start = if self.side(h1, &a) == Side::Plus {
            self.graph.mul_letters(&a, &[Letter::neg(h1.gen)])
        } else {
            a
        };
        let radius = d + slack;
        let lk1 = self.graph.link_mask(h1.gen);
        let moves: Vec<Letter> = self
            .graph
            .letters()
            .into_iter()
            .filter(|l| lk1 & bit(l.gen()) != 0)
            .collect();
        let probes: Vec<Letter> = moves
            .iter()
            .copied()
            .filter(|l| cand & bit(l.gen()) != 0)
            .collect();
        let mut found: HashMap<Wall, usize> = HashMap::new();
        let mut seen: HashSet<GroupElement> = HashSet::new();
        seen.insert(start.clone());
        let mut frontier = vec![start];
        'outer: for depth in 0..=radius {
            for g in &frontier {
                for &l in &probes {
                    let k = self.wall_of_edge(g, l);
                    if found.contains_key(&k) {
                        continue;
                    }
                    if self.crosses(&k, h2) {
                        found.insert(k, depth);
                        if stop_after.is_some_and(|m| found.len() >= m) {
                            break 'outer;
                        }
                    }
                }
            }
            if depth == radius {
                break;
            }
            let mut next = Vec::new();
            for g in &frontier {
                for &l in &moves {
                    let y = self.graph.mul_letters(g, &[l]);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let certified = found.values().all(|&depth| depth <= d);
        Ok(CrossingCount {
            count: found.len(),
            certified,
            carrier_distance: d,
        })
    }

    /// W(o, k): walls separating o from the whole of k.
    pub fn walls_separating_point_from_wall(&self, o: &GroupElement, k: &Wall) -> Vec<Wall> {
        let g = self.gate(o, k);
        self.walls_between(o, &g)
            .into_iter()
            .filter(|h| h != k && !self.crosses(h, k))
            .collect()
    }

    pub fn ball(&self, o: &GroupElement, r: u32) -> Result<Vec<GroupElement>> {
        if r > self.cap {
            return Err(Error::BallCapExceeded {
                radius: r,
                cap: self.cap,
            });
        }
        let letters = self.graph.letters();
        let mut seen: HashSet<GroupElement> = HashSet::new();
        seen.insert(o.clone());
        let mut frontier = vec![o.clone()];
        for _ in 0..r {
            let mut next = Vec::new();
            for x in &frontier {
                for &l in &letters {
                    let y = self.graph.mul_letters(x, &[l]);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<GroupElement> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Extends the geodesic `p` from `start` by `steps` edges whose walls are
    /// disjoint from all earlier ones. Inside a flat (x, y) the extension stays
    /// in the flat.
    pub fn extend_path(
        &self,
        start: &GroupElement,
        p: &Word,
        steps: usize,
        flat: Option<(usize, usize)>,
    ) -> Result<Word> {
        if !self.graph.is_geodesic(p.letters()) {
            return Err(Error::PreconditionFailed("path is not geodesic".into()));
        }
        let mut walls = self.walls_along(start, p.letters());
        let allowed: Vec<Letter> = match flat {
            Some((x, y)) => {
                if !self.graph.commute(x, y) {
                    return Err(Error::PreconditionFailed(format!(
                        "{} and {} do not span a flat",
                        self.graph.name(x),
                        self.graph.name(y)
                    )));
                }
                if p.letters().iter().any(|l| l.gen() != x && l.gen() != y) {
                    return Err(Error::PreconditionFailed("path leaves the flat".into()));
                }
                let mut v = vec![Letter::pos(x), Letter::neg(x), Letter::pos(y), Letter::neg(y)];
                v.sort();
                v
            }
            None => {
                for (i, h) in walls.iter().enumerate() {
                    if walls[i + 1..].iter().any(|k| self.crosses(h, k)) {
                        return Err(Error::PreconditionFailed(
                            "path crosses transverse walls".into(),
                        ));
                    }
                }
                self.graph.letters()
            }
        };
        let mut out = p.clone();
        let mut end = self.graph.mul_letters(start, p.letters());
        for _ in 0..steps {
            let next = allowed.iter().copied().find_map(|l| {
                let k = self.wall_of_edge(&end, l);
                let ok = walls.iter().all(|h| *h != k && !self.crosses(h, &k));
                ok.then_some((l, k))
            });
            let (l, k) = next.ok_or_else(|| {
                Error::NoExtension(format!("no disjoint wall at {}", self.format(&end)))
            })?;
            walls.push(k);
            out.0.push(l);
            end = self.graph.mul_letters(&end, &[l]);
        }
        Ok(out)
    }

    pub fn sigma(&self, y: &GroupElement, walls: &[Wall]) -> Ultrafilter {
        Ultrafilter {
            assignments: walls
                .iter()
                .map(|h| (h.clone(), self.side(h, y)))
                .collect(),
        }
    }

    /// Whether the halfspaces (h, s) and (k, t) intersect.
    pub fn halfspaces_meet(&self, h: &Wall, s: Side, k: &Wall, t: Side) -> bool {
        if h == k {
            return s == t;
        }
        if self.crosses(h, k) {
            return true;
        }
        // For disjoint walls only the two halfspaces facing away from each
        // other are disjoint.
        let k_in = self.side(h, &k.base);
        let h_in = self.side(k, &h.base);
        !(s == k_in.flip() && t == h_in.flip())
    }

    pub fn format(&self, x: &GroupElement) -> String {
        let s = self.graph.format(x.letters());
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    /// `gen@base`, with `1` for the identity base.
    pub fn format_wall(&self, h: &Wall) -> String {
        format!("{}@{}", self.graph.name(h.gen), self.format(&h.base))
    }

    /// Parses `gen`, `gen@1` or `gen@WORD` and canonicalizes the base.
    pub fn parse_wall(&self, text: &str) -> Result<Wall> {
        let (name, base) = match text.split_once('@') {
            Some((n, b)) => (n.trim(), b.trim()),
            None => (text.trim(), ""),
        };
        let gen = self
            .graph
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let base = if base == "1" {
            self.graph.identity()
        } else {
            self.graph.parse_element(base)?
        };
        Ok(self.wall(&base, gen))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CubeComplex {
        CubeComplex::new(DefiningGraph::z3_free_z())
    }

    fn ck() -> CubeComplex {
        CubeComplex::new(DefiningGraph::croke_kleiner())
    }

    fn e(cx: &CubeComplex, s: &str) -> GroupElement {
        cx.element(s).unwrap()
    }

    fn w(cx: &CubeComplex, s: &str) -> Wall {
        cx.parse_wall(s).unwrap()
    }

    #[test]
    fn wall_of_edge_examples() {
        let cx = z();
        let a = Letter::pos(0);
        assert_eq!(cx.wall_of_edge(&cx.graph().identity(), a), w(&cx, "a@1"));
        assert_eq!(cx.wall_of_edge(&e(&cx, "b"), a), w(&cx, "a@1"));
        let wd = cx.wall_of_edge(&e(&cx, "d"), a);
        assert_eq!(cx.format_wall(&wd), "a@d");
        assert_ne!(wd, w(&cx, "a@1"));
        // the inverse edge into 1 is dual to the wall based at a^-1
        assert_eq!(
            cx.format_wall(&cx.wall_of_edge(&cx.graph().identity(), Letter::neg(0))),
            "a@a^-1"
        );
    }

    #[test]
    fn walls_between_examples() {
        let cx = z();
        let one = cx.graph().identity();
        let got: Vec<String> = cx
            .walls_between(&one, &e(&cx, "a b c"))
            .iter()
            .map(|h| cx.format_wall(h))
            .collect();
        assert_eq!(got, ["a@1", "b@1", "c@1"]);
        assert!(cx.walls_between(&one, &one).is_empty());
        let got: Vec<String> = cx
            .walls_between(&one, &e(&cx, "c^2"))
            .iter()
            .map(|h| cx.format_wall(h))
            .collect();
        assert_eq!(got, ["c@1", "c@c"]);
    }

    #[test]
    fn side_examples() {
        let cx = z();
        let one = cx.graph().identity();
        assert_eq!(cx.side(&w(&cx, "a@1"), &one), Side::Minus);
        assert_eq!(cx.side(&w(&cx, "a@1"), &e(&cx, "a b")), Side::Plus);
        assert_eq!(cx.side(&w(&cx, "a@d"), &one), Side::Minus);
        assert_eq!(cx.side(&w(&cx, "a@d"), &e(&cx, "d a")), Side::Plus);
        assert_eq!(cx.side(&w(&cx, "a@1"), &e(&cx, "a^-1")), Side::Minus);
    }

    #[test]
    fn crosses_examples() {
        let cx = z();
        assert!(cx.crosses(&w(&cx, "a@1"), &w(&cx, "b@1")));
        assert!(!cx.crosses(&w(&cx, "a@1"), &w(&cx, "a@d")));
        assert!(!cx.crosses(&w(&cx, "a@1"), &w(&cx, "d@1")));
        assert!(cx.crosses(&w(&cx, "a@b^5"), &w(&cx, "b@a^-3 c")));
        assert!(!cx.crosses(&w(&cx, "a@d"), &w(&cx, "b@1")));
    }

    #[test]
    fn crossing_count_examples() {
        let cx = z();
        let c = cx.crossing_count(&w(&cx, "a@1"), &w(&cx, "a@d"), 4).unwrap();
        assert_eq!((c.count, c.certified), (0, true));
        let c = cx.crossing_count(&w(&cx, "a@1"), &w(&cx, "a@a"), 4).unwrap();
        assert!(c.count > 10 && !c.certified);
        assert!(matches!(
            cx.crossing_count(&w(&cx, "a@1"), &w(&cx, "a@1"), 4),
            Err(Error::InvalidPair(_))
        ));
        assert_eq!(
            cx.crossing_count(&w(&cx, "a@1"), &w(&cx, "b@1"), 4),
            Err(Error::WallsCross)
        );
    }

    #[test]
    fn gate_examples() {
        let cx = z();
        let one = cx.graph().identity();
        assert_eq!(cx.gate(&one, &w(&cx, "a@1")), one);
        assert_eq!(cx.gate(&e(&cx, "c^-2"), &w(&cx, "c@1")), one);
        assert_eq!(cx.gate(&e(&cx, "d"), &w(&cx, "a@1")), one);
        assert_eq!(cx.gate(&e(&cx, "a^3 b"), &w(&cx, "a@1")), e(&cx, "a b"));
    }

    #[test]
    fn separator_sets() {
        let cx = z();
        let one = cx.graph().identity();
        assert!(cx
            .walls_separating_point_from_wall(&one, &w(&cx, "b@1"))
            .is_empty());
        let got = cx.walls_separating_point_from_wall(&one, &w(&cx, "c@c"));
        assert_eq!(got, vec![w(&cx, "c@1")]);
        for m in 1..6 {
            let o = e(&cx, &format!("c^-{m}"));
            assert_eq!(
                cx.walls_separating_point_from_wall(&o, &w(&cx, "c@1")).len(),
                m
            );
        }
    }

    #[test]
    fn ball_examples() {
        let cx = z();
        let one = cx.graph().identity();
        assert_eq!(cx.ball(&one, 1).unwrap().len(), 9);
        assert_eq!(cx.ball(&one, 0).unwrap(), vec![one.clone()]);
        assert!(cx.ball(&one, 13).is_err());
        let ck = ck();
        let n = ck.ball(&ck.graph().identity(), 2).unwrap().len();
        assert_eq!(n, crate::raag::oracle_ball(ck.graph(), 2).len());
    }

    #[test]
    fn extend_examples() {
        let cx = z();
        let one = cx.graph().identity();
        let p = cx.graph().parse_word("a").unwrap();
        let ext = cx.extend_path(&one, &p, 1, None).unwrap();
        assert_eq!(cx.graph().format(ext.letters()), "a^2");
        assert_eq!(cx.extend_path(&one, &p, 0, None).unwrap(), p);
        let ck = ck();
        let p = ck.graph().parse_word("b").unwrap();
        let ext = ck.extend_path(&ck.graph().identity(), &p, 2, Some((1, 2))).unwrap();
        assert_eq!(ck.graph().format(ext.letters()), "b^3");
        let p = ck.graph().parse_word("b c").unwrap();
        assert!(matches!(
            ck.extend_path(&ck.graph().identity(), &p, 1, Some((1, 2))),
            Err(Error::NoExtension(_))
        ));
    }

    #[test]
    fn sigma_examples() {
        let cx = z();
        let one = cx.graph().identity();
        let u = cx.sigma(&one, &[w(&cx, "a@1")]);
        assert_eq!(u.assignments[&w(&cx, "a@1")], Side::Minus);
        let u = cx.sigma(&e(&cx, "a b"), &[w(&cx, "a@1"), w(&cx, "b@1")]);
        assert!(u.assignments.values().all(|&s| s == Side::Plus));
        assert!(cx.sigma(&one, &[]).assignments.is_empty());
    }
}
