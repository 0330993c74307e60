//! The Croke–Kleiner group on the path a - b - c - d: wall families, flats
//! and the contracting geodesic γ that zigzags through them.

use crate::boundary::BoundaryRay;
use crate::cube::{CubeComplex, Wall};
use crate::error::{Error, Result};
use crate::raag::{DefiningGraph, GroupElement, Letter, PowerWord, Syllable, Word};
use serde::Serialize;
use std::fmt;

pub const GEN_A: usize = 0;
pub const GEN_B: usize = 1;
pub const GEN_C: usize = 2;
pub const GEN_D: usize = 3;

/// Wall families A, B, C, D: walls dual to a-, b-, c- and d-edges.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn of_gen(g: usize) -> Family {
        match g {
            GEN_A => Family::A,
            GEN_B => Family::B,
            GEN_C => Family::C,
            GEN_D => Family::D,
            _ => panic!("generator {g} outside a, b, c, d"),
        }
    }

    pub fn gen(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Flat types: 𝒜 spanned by (a, b), ℬ by (b, c) and 𝒞 by (c, d).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FlatType {
    A,
    B,
    C,
}

impl FlatType {
    pub fn gens(self) -> (usize, usize) {
        match self {
            FlatType::A => (GEN_A, GEN_B),
            FlatType::B => (GEN_B, GEN_C),
            FlatType::C => (GEN_C, GEN_D),
        }
    }

    pub fn mask(self) -> u64 {
        let (g, h) = self.gens();
        (1 << g) | (1 << h)
    }

    /// The type spanned by two commuting generators, in either order.
    pub fn spanned_by(g: usize, h: usize) -> Option<FlatType> {
        match (g.min(h), g.max(h)) {
            (GEN_A, GEN_B) => Some(FlatType::A),
            (GEN_B, GEN_C) => Some(FlatType::B),
            (GEN_C, GEN_D) => Some(FlatType::C),
            _ => None,
        }
    }

    /// The generator shared with another type, if the flats can meet in a line.
    pub fn shared(self, other: FlatType) -> Option<usize> {
        let (a, b) = self.gens();
        let (c, d) = other.gens();
        [a, b].into_iter().find(|&g| g == c || g == d).filter(|_| self != other)
    }
}

/// The flat base·⟨gens of kind⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub base: PowerWord,
    pub kind: FlatType,
}

impl Flat {
    pub fn contains(&self, graph: &DefiningGraph, x: &PowerWord) -> bool {
        self.base.between(graph, x).lies_in(self.kind.mask())
    }
}

/// The cube complex of the Croke–Kleiner group.
#[derive(Clone, Debug)]
pub struct CrokeKleiner {
    cx: CubeComplex,
}

pub fn build_croke_kleiner() -> CrokeKleiner {
    CrokeKleiner {
        cx: CubeComplex::new(DefiningGraph::croke_kleiner()),
    }
}

impl CrokeKleiner {
    pub fn complex(&self) -> &CubeComplex {
        &self.cx
    }

    pub fn graph(&self) -> &DefiningGraph {
        self.cx.graph()
    }

    pub fn family(&self, h: &Wall) -> Family {
        Family::of_gen(h.gen)
    }

    /// The flat of the given type through x.
    pub fn flat_through(&self, x: &GroupElement, kind: FlatType) -> Flat {
        Flat {
            base: PowerWord::from_letters(self.graph(), x.letters()),
            kind,
        }
    }
}

/// Letters of γ_1 … γ_4 in crossing order. Each piece first leaves the line
/// it shares with the previous flat, so no flat holds more than three edges.
pub const GAMMA_PERIOD: [(usize, usize); 4] = [
    (GEN_C, GEN_B),
    (GEN_D, GEN_C),
    (GEN_B, GEN_C),
    (GEN_A, GEN_B),
];

/// The first L pieces γ_1 … γ_L of γ, each a diagonal of one square in the
/// flat F_l, so that γ runs through flats of type ℬ, 𝒞, ℬ, 𝒜, ℬ, …
///
/// Where the construction asks for a hyperplane of minimal distance and
/// several qualify, the one dual to the positive letter is taken.
#[derive(Clone, Debug)]
pub struct Gamma {
    /// γ_l as two positive letters.
    pub pieces: Vec<[Letter; 2]>,
    /// F_1 … F_L.
    pub flats: Vec<Flat>,
    /// w_0 = o, w_1, …, w_L: the endpoints of the pieces.
    pub endpoints: Vec<PowerWord>,
}

pub fn build_gamma(ck: &CrokeKleiner, flats: usize) -> Result<Gamma> {
    if flats < 1 {
        return Err(Error::Config("γ needs at least one flat".into()));
    }
    let g = ck.graph();
    let mut w = PowerWord::identity();
    let mut pieces = Vec::with_capacity(flats);
    let mut fl = Vec::with_capacity(flats);
    let mut endpoints = vec![w.clone()];
    for l in 0..flats {
        let (x, y) = GAMMA_PERIOD[l % 4];
        let kind = FlatType::spanned_by(x, y).expect("period pairs commute");
        fl.push(Flat {
            base: w.clone(),
            kind,
        });
        pieces.push([Letter::pos(x), Letter::pos(y)]);
        w.append(g, Syllable::new(x, 1));
        w.append(g, Syllable::new(y, 1));
        endpoints.push(w.clone());
    }
    Ok(Gamma {
        pieces,
        flats: fl,
        endpoints,
    })
}

impl Gamma {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.pieces.iter().flatten().copied().collect()
    }

    /// All 2L + 1 vertices.
    pub fn vertices(&self, graph: &DefiningGraph) -> Vec<PowerWord> {
        let mut v = vec![PowerWord::identity()];
        let mut w = PowerWord::identity();
        for l in self.letters() {
            w.append(graph, Syllable::new(l.gen(), l.sign()));
            v.push(w.clone());
        }
        v
    }

    pub fn walls(&self, cx: &CubeComplex) -> Vec<Wall> {
        cx.walls_along(&cx.graph().identity(), &self.letters())
    }

    /// Walls crossed by γ_l (1-based).
    pub fn piece_walls(&self, cx: &CubeComplex, l: usize) -> Vec<Wall> {
        let g = cx.graph();
        let start = g.normal_form(&self.endpoints[l - 1].to_letters());
        cx.walls_along(&start, &self.pieces[l - 1])
    }
}

/// γ as a boundary ray from the identity.
pub fn gamma_ray(ck: &CrokeKleiner) -> BoundaryRay {
    let period: Vec<Letter> = GAMMA_PERIOD
        .iter()
        .flat_map(|&(x, y)| [Letter::pos(x), Letter::pos(y)])
        .collect();
    BoundaryRay::new(ck.graph().identity(), Word::default(), Word::new(period))
        .expect("non-empty period")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{find_separated_chain, validate_ray};

    #[test]
    fn families_and_flats() {
        let ck = build_croke_kleiner();
        let cx = ck.complex();
        let o = cx.graph().identity();
        assert_eq!(ck.family(&cx.wall(&o, GEN_A)), Family::A);
        assert_eq!(FlatType::spanned_by(GEN_C, GEN_B), Some(FlatType::B));
        assert_eq!(FlatType::spanned_by(GEN_A, GEN_C), None);
        let f = ck.flat_through(&o, FlatType::B);
        assert!(f.contains(cx.graph(), &PowerWord::from_letters(cx.graph(), &[Letter::neg(GEN_C)])));
        assert_eq!(FlatType::A.shared(FlatType::B), Some(GEN_B));
        assert_eq!(FlatType::A.shared(FlatType::C), None);
        // an A-wall meets no C- or D-wall
        let x = cx.element("b c d").unwrap();
        let ha = cx.wall(&o, GEN_A);
        for gen in [GEN_C, GEN_D] {
            for v in cx.ball(&x, 2).unwrap() {
                assert!(!cx.crosses(&ha, &cx.wall(&v, gen)));
            }
        }
    }

    #[test]
    fn gamma_shape() {
        let ck = build_croke_kleiner();
        let cx = ck.complex();
        let gamma = build_gamma(&ck, 12).unwrap();
        let walls = gamma.walls(cx);
        let mut first: Vec<Family> = walls[..2].iter().map(|h| ck.family(h)).collect();
        first.sort();
        assert_eq!(first, [Family::B, Family::C]);
        assert!(cx.graph().is_geodesic(&gamma.letters()));
        assert_eq!(walls.len(), 24);
        let g = cx.graph();
        let kinds: Vec<FlatType> = gamma.flats.iter().map(|f| f.kind).collect();
        assert_eq!(&kinds[..5], &[FlatType::B, FlatType::C, FlatType::B, FlatType::A, FlatType::B]);
        let verts = gamma.vertices(g);
        for (l, f) in gamma.flats.iter().enumerate() {
            // each piece stays in its flat, and γ has at most three edges in it
            assert!(f.contains(g, &gamma.endpoints[l + 1]));
            let inside = verts
                .windows(2)
                .filter(|e| f.contains(g, &e[0]) && f.contains(g, &e[1]))
                .count();
            assert!(inside <= 3, "flat {l} holds {inside} edges of γ");
        }
        assert!(build_gamma(&ck, 0).is_err());
    }

    #[test]
    fn gamma_is_a_separated_ray() {
        let ck = build_croke_kleiner();
        let cx = ck.complex();
        let ray = gamma_ray(&ck);
        assert!(validate_ray(cx, &ray, 64));
        let chain = find_separated_chain(cx, &ray, 0, 5, 40, 4).unwrap();
        assert!(chain.len() >= 8);
    }
}
