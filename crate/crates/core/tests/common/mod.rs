//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use morse_cube::boundary::{hyp_member, BoundaryRay};
use morse_cube::cube::{CubeComplex, Side, Wall};
use morse_cube::raag::{DefiningGraph, GroupElement, Letter, Word};
use rand::Rng;

pub fn z3z() -> CubeComplex {
    CubeComplex::new(DefiningGraph::z3_free_z())
}

pub fn croke_kleiner() -> CubeComplex {
    CubeComplex::new(DefiningGraph::croke_kleiner())
}

/// Generators a period must use for the ray to leave every flat: d in
/// Z³∗Z, both a and d in the Croke–Kleiner group.
pub fn morse_mask(cx: &CubeComplex) -> u64 {
    let g = cx.graph();
    let d = bit(g.index("d").unwrap());
    if g.id() == DefiningGraph::croke_kleiner().id() {
        bit(g.index("a").unwrap()) | d
    } else {
        d
    }
}

pub fn bit(g: usize) -> u64 {
    1 << g
}

pub fn random_letters(cx: &CubeComplex, rng: &mut impl Rng, len: usize) -> Vec<Letter> {
    let letters = cx.graph().letters();
    (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
}

pub fn random_element(cx: &CubeComplex, rng: &mut impl Rng, len: usize) -> GroupElement {
    cx.graph().normal_form(&random_letters(cx, rng, len))
}

/// A random eventually periodic Morse ray from `o`.
pub fn random_morse_ray(cx: &CubeComplex, rng: &mut impl Rng, o: &GroupElement) -> BoundaryRay {
    let need = morse_mask(cx);
    loop {
        let n = rng.gen_range(0..7);
        let p = random_element(cx, rng, n);
        let n = rng.gen_range(1..5);
        let q = random_letters(cx, rng, n);
        let used = q.iter().fold(0u64, |m, l| m | bit(l.gen()));
        if used & need != need {
            continue;
        }
        if let Ok(r) = BoundaryRay::toward(cx, o, &p.word(), &Word::new(q)) {
            return r;
        }
    }
}

/// A random Morse ray from `o` whose truncation to `depth` crosses `k`.
pub fn random_ray_through(
    cx: &CubeComplex,
    rng: &mut impl Rng,
    o: &GroupElement,
    k: &Wall,
    depth: usize,
) -> BoundaryRay {
    let g = cx.graph();
    let gate = cx.gate(o, k);
    let step = if cx.side(k, &gate) == Side::Minus {
        Letter::pos(k.gen)
    } else {
        Letter::neg(k.gen)
    };
    let beyond = g.mul_letters(&gate, &[step]);
    let need = morse_mask(cx);
    loop {
        let n = rng.gen_range(0..5);
        let tail = random_letters(cx, rng, n);
        let end = g.mul_letters(&beyond, &tail);
        let n = rng.gen_range(1..5);
        let q = random_letters(cx, rng, n);
        let used = q.iter().fold(0u64, |m, l| m | bit(l.gen()));
        if used & need != need {
            continue;
        }
        let prefix = g.between(o, &end).word();
        let Ok(r) = BoundaryRay::new(o.clone(), prefix, Word::new(q)) else { continue };
        if hyp_member(cx, &r, std::slice::from_ref(k), depth) == Ok(true) {
            return r;
        }
    }
}
