//! Elements written as products of generator powers. Exponents may be far
//! too large to expand into letters, as in the long quasi-geodesics of the
//! Croke–Kleiner construction.

use super::{bit, DefiningGraph, Letter};
use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

impl Syllable {
    pub fn new(gen: usize, exp: i64) -> Self {
        Syllable { gen, exp }
    }
}

/// A reduced product of syllables: no two syllables of the same generator
/// can be brought together through commuting syllables. Equality is
/// syntactic; compare elements with [`PowerWord::distance`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PowerWord {
    syllables: Vec<Syllable>,
}

impl PowerWord {
    pub fn identity() -> Self {
        PowerWord::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Word length of the element.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn from_syllables(graph: &DefiningGraph, syllables: &[Syllable]) -> Self {
        let mut w = PowerWord::identity();
        for &s in syllables {
            w.append(graph, s);
        }
        w
    }

    pub fn from_letters(graph: &DefiningGraph, letters: &[Letter]) -> Self {
        let mut w = PowerWord::identity();
        for &l in letters {
            w.append(graph, Syllable::new(l.gen(), l.sign()));
        }
        w
    }

    /// Right-multiplies by g^e.
    pub fn append(&mut self, graph: &DefiningGraph, s: Syllable) {
        if s.exp == 0 {
            return;
        }
        let lk = graph.link_mask(s.gen);
        for i in (0..self.syllables.len()).rev() {
            let t = self.syllables[i];
            if t.gen == s.gen {
                let e = t.exp + s.exp;
                if e == 0 {
                    self.syllables.remove(i);
                } else {
                    self.syllables[i].exp = e;
                }
                return;
            }
            if lk & bit(t.gen) == 0 {
                break;
            }
        }
        self.syllables.push(s);
    }

    pub fn mul(&self, graph: &DefiningGraph, other: &PowerWord) -> PowerWord {
        let mut w = self.clone();
        for &s in &other.syllables {
            w.append(graph, s);
        }
        w
    }

    pub fn inverse(&self) -> PowerWord {
        PowerWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.gen, -s.exp))
                .collect(),
        }
    }

    /// self⁻¹ · other.
    pub fn between(&self, graph: &DefiningGraph, other: &PowerWord) -> PowerWord {
        self.inverse().mul(graph, other)
    }

    pub fn distance(&self, graph: &DefiningGraph, other: &PowerWord) -> u64 {
        self.between(graph, other).length()
    }

    /// Exponent of the g-syllable that can be moved to the front (0 if none).
    pub fn leading_exponent(&self, graph: &DefiningGraph, g: usize) -> i64 {
        let lk = graph.link_mask(g);
        for t in &self.syllables {
            if t.gen == g {
                return t.exp;
            }
            if lk & bit(t.gen) == 0 {
                return 0;
            }
        }
        0
    }

    /// Exponent of the g-syllable that can be moved to the end (0 if none).
    pub fn trailing_exponent(&self, graph: &DefiningGraph, g: usize) -> i64 {
        let lk = graph.link_mask(g);
        for t in self.syllables.iter().rev() {
            if t.gen == g {
                return t.exp;
            }
            if lk & bit(t.gen) == 0 {
                return 0;
            }
        }
        0
    }

    /// True when every syllable lies in the parabolic subgroup on `mask`.
    pub fn lies_in(&self, mask: u64) -> bool {
        self.syllables.iter().all(|s| mask & bit(s.gen) != 0)
    }

    /// Splits off the maximal front part lying in ⟨mask⟩: (head, rest).
    pub fn split_prefix(&self, graph: &DefiningGraph, mask: u64) -> (PowerWord, PowerWord) {
        let mut head = Vec::new();
        let mut rest = Vec::new();
        let mut blocked = 0u64;
        for &s in &self.syllables {
            if mask & bit(s.gen) != 0 && blocked & !graph.link_mask(s.gen) == 0 {
                head.push(s);
            } else {
                rest.push(s);
                blocked |= bit(s.gen);
            }
        }
        (
            PowerWord { syllables: head },
            PowerWord { syllables: rest },
        )
    }

    /// Nearest point of the coset h·⟨mask⟩ to self, and its distance.
    pub fn project_to_coset(
        &self,
        graph: &DefiningGraph,
        h: &PowerWord,
        mask: u64,
    ) -> (PowerWord, u64) {
        let u = h.between(graph, self);
        let (head, rest) = u.split_prefix(graph, mask);
        (h.mul(graph, &head), rest.length())
    }

    /// Expands into letters. Only for elements of modest length.
    pub fn to_letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for s in &self.syllables {
            let l = Letter::new(s.gen, s.exp.signum());
            out.extend(std::iter::repeat(l).take(s.exp.unsigned_abs() as usize));
        }
        out
    }

    pub fn format(&self, graph: &DefiningGraph) -> String {
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|s| {
                if s.exp == 1 {
                    graph.name(s.gen).to_string()
                } else {
                    format!("{}^{}", graph.name(s.gen), s.exp)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn merges_through_commuting_syllables() {
        let g = DefiningGraph::croke_kleiner();
        let w = PowerWord::from_syllables(
            &g,
            &[Syllable::new(1, 5), Syllable::new(2, 3), Syllable::new(1, -7)],
        );
        assert_eq!(w.syllables(), &[Syllable::new(1, -2), Syllable::new(2, 3)]);
        assert_eq!(w.length(), 5);
        let w = PowerWord::from_syllables(
            &g,
            &[Syllable::new(1, 5), Syllable::new(3, 1), Syllable::new(1, -5)],
        );
        assert_eq!(w.length(), 11);
    }

    #[test]
    fn coset_projection() {
        let g = DefiningGraph::croke_kleiner();
        // v = c^-9 b, coset b c ⟨c⟩
        let v = PowerWord::from_syllables(&g, &[Syllable::new(2, -9), Syllable::new(1, 1)]);
        let h = PowerWord::from_syllables(&g, &[Syllable::new(1, 1), Syllable::new(2, 1)]);
        let (p, d) = v.project_to_coset(&g, &h, 1 << 2);
        assert_eq!(d, 0);
        assert_eq!(p.distance(&g, &v), 0);
        let v = PowerWord::from_syllables(&g, &[Syllable::new(2, -9)]);
        let (_, d) = v.project_to_coset(&g, &h, 1 << 2);
        assert_eq!(d, 1);
    }

    fn letters_strategy() -> impl Strategy<Value = Vec<(usize, i64)>> {
        prop::collection::vec((0usize..4, prop_oneof![Just(-1i64), Just(1i64)]), 0..30)
    }

    proptest! {
        #[test]
        fn length_matches_letter_normal_form(ls in letters_strategy()) {
            for g in [DefiningGraph::croke_kleiner(), DefiningGraph::z3_free_z()] {
                let letters: Vec<Letter> = ls.iter().map(|&(x, s)| Letter::new(x, s)).collect();
                let w = PowerWord::from_letters(&g, &letters);
                prop_assert_eq!(w.length() as usize, g.normal_form(&letters).len());
                prop_assert_eq!(g.normal_form(&w.to_letters()), g.normal_form(&letters));
            }
        }

        #[test]
        fn syllables_match_expanded(sy in prop::collection::vec((0usize..4, -4i64..5), 0..10)) {
            let g = DefiningGraph::croke_kleiner();
            let syl: Vec<Syllable> = sy.iter().map(|&(x, e)| Syllable::new(x, e)).collect();
            let w = PowerWord::from_syllables(&g, &syl);
            let mut letters = Vec::new();
            for s in &syl {
                if s.exp != 0 {
                    let l = Letter::new(s.gen, s.exp.signum());
                    letters.extend(std::iter::repeat(l).take(s.exp.unsigned_abs() as usize));
                }
            }
            prop_assert_eq!(w.length() as usize, g.normal_form(&letters).len());
        }
    }
}
