//! Boundary points as eventually periodic geodesic rays, the two products
//! [ξ|η]_o and (ξ|η)_o, the metric d_o = e^{-[ξ|η]_o}, both cross ratios,
//! basic-open-set membership and strongly separated chains.
//!
//! Everything is computed from a finite truncation of the rays. A value is
//! reported as certified only when a combinatorial argument shows that no
//! wall beyond the truncation can change it.

use crate::cube::{CubeComplex, Separation, Wall};
use crate::error::{Error, Result};
use crate::raag::{GroupElement, Letter, Word};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

/// Longest gap scanned when looking for a strongly separated pair.
const PAIR_WINDOW: usize = 8;

/// The geodesic ray base · prefix · period^∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryRay {
    base: GroupElement,
    prefix: Word,
    period: Word,
}

impl BoundaryRay {
    /// The ray read literally from `base`. Geodesy is checked separately by
    /// [`validate_ray`].
    pub fn new(base: GroupElement, prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidRay("empty period".into()));
        }
        Ok(BoundaryRay {
            base,
            prefix,
            period,
        })
    }

    /// The geodesic ray from `o` to the boundary point named by the infinite
    /// word prefix·period^∞ read from the identity.
    ///
    /// The prefix of the rebased ray is nf(o⁻¹·prefix·period^j) for the least
    /// j making the result a geodesic ray.
    pub fn toward(cx: &CubeComplex, o: &GroupElement, prefix: &Word, period: &Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidRay("empty period".into()));
        }
        let g = cx.graph();
        let o_inv = g.invert(o);
        let mut head = g.mul_letters(&o_inv, prefix.letters());
        let limit = o.len() + prefix.len() + 2;
        for _ in 0..=limit.div_ceil(period.len()) {
            let ray = BoundaryRay::new(o.clone(), head.word(), period.clone())?;
            if validate_ray(cx, &ray, 0) {
                return Ok(ray);
            }
            head = g.mul_letters(&head, period.letters());
        }
        Err(Error::InvalidRay(format!(
            "{} | {} is not a geodesic ray",
            g.format(prefix.letters()),
            g.format(period.letters())
        )))
    }

    /// Parses `PREFIX | PERIOD` (left word may be empty) as a boundary point
    /// and anchors it at `o`.
    pub fn parse(cx: &CubeComplex, text: &str, o: &GroupElement) -> Result<Self> {
        let (p, q) = text
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("ray `{text}` lacks `|`")))?;
        let prefix = cx.graph().parse_word(p.trim())?;
        let period = cx.graph().parse_word(q.trim())?;
        BoundaryRay::toward(cx, o, &prefix, &period)
    }

    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// The first n letters of prefix·period^∞.
    pub fn letters(&self, n: usize) -> Vec<Letter> {
        let p = self.prefix.letters();
        let q = self.period.letters();
        (0..n)
            .map(|i| {
                if i < p.len() {
                    p[i]
                } else {
                    q[(i - p.len()) % q.len()]
                }
            })
            .collect()
    }

    pub fn format(&self, cx: &CubeComplex) -> String {
        let g = cx.graph();
        format!(
            "{} | {}",
            g.format(self.prefix.letters()),
            g.format(self.period.letters())
        )
    }
}

/// True iff prefix·period^K is geodesic for every K with
/// |prefix| + K|period| ≤ depth, and for K = 2 in any case.
///
/// A cancellation in prefix·period^K between a letter and a later copy of
/// the period would already occur against the nearer copy, so two clean
/// periods make the whole ray geodesic.
pub fn validate_ray(cx: &CubeComplex, ray: &BoundaryRay, depth: usize) -> bool {
    let n = depth.max(ray.prefix.len() + 2 * ray.period.len());
    cx.graph().is_geodesic(&ray.letters(n))
}

/// Vertices and dual walls along the first `depth` edges of a ray.
#[derive(Clone, Debug)]
pub struct RayTrace {
    /// depth + 1 vertices, starting at the base.
    pub vertices: Vec<GroupElement>,
    pub walls: Vec<Wall>,
    index: HashMap<Wall, usize>,
}

impl RayTrace {
    /// Position of `h` in the crossing order, if crossed within the trace.
    pub fn position(&self, h: &Wall) -> Option<usize> {
        self.index.get(h).copied()
    }

    pub fn depth(&self) -> usize {
        self.walls.len()
    }
}

pub fn trace(cx: &CubeComplex, ray: &BoundaryRay, depth: usize) -> Result<RayTrace> {
    if !validate_ray(cx, ray, depth) {
        return Err(Error::InvalidRay(ray.format(cx)));
    }
    let g = cx.graph();
    let mut vertices = Vec::with_capacity(depth + 1);
    let mut walls = Vec::with_capacity(depth);
    let mut index = HashMap::with_capacity(depth);
    let mut x = ray.base.clone();
    for (i, l) in ray.letters(depth).into_iter().enumerate() {
        let h = cx.wall_of_edge(&x, l);
        index.insert(h.clone(), i);
        walls.push(h);
        vertices.push(x.clone());
        x = g.mul_letters(&x, &[l]);
    }
    vertices.push(x);
    Ok(RayTrace {
        vertices,
        walls,
        index,
    })
}

/// Walls dual to the first `depth` edges, in crossing order.
pub fn ray_walls(cx: &CubeComplex, ray: &BoundaryRay, depth: usize) -> Result<Vec<Wall>> {
    Ok(trace(cx, ray, depth)?.walls)
}

/// A nonnegative integer or +∞.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(u64),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<u64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_u64(*v),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductValue {
    pub value: Extended,
    pub certified: bool,
    pub depth_used: usize,
}

/// True when the ray traced by `t` provably never crosses `k`: some wall u
/// it has already crossed is disjoint from k and has k on the side of the
/// base point, so the ray, which never recrosses u, stays away from k.
pub fn never_crosses(cx: &CubeComplex, t: &RayTrace, k: &Wall) -> bool {
    if t.position(k).is_some() {
        return false;
    }
    let o = &t.vertices[0];
    t.walls
        .iter()
        .any(|u| u != k && !cx.crosses(u, k) && cx.side(u, &k.base) == cx.side(u, o))
}

/// The latest pair (i, j), i < j, of strongly separated walls on the trace
/// with `accept(i)` true.
fn latest_separated_pair(
    cx: &CubeComplex,
    t: &RayTrace,
    accept: impl Fn(usize) -> bool,
) -> Option<(usize, usize)> {
    let n = t.walls.len();
    for i in (0..n).rev() {
        if !accept(i) {
            continue;
        }
        for j in i + 1..n.min(i + 1 + PAIR_WINDOW) {
            if cx.strongly_separated(&t.walls[i], &t.walls[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// A lower bound for #W(o, k) over every wall k the ray crosses after the
/// trace ends. With s_i, s_j strongly separated and crossed in that order,
/// any later wall lies beyond s_i, so W(o, s_i) ∪ {s_i} ⊆ W(o, k).
fn tail_bound(cx: &CubeComplex, t: &RayTrace) -> Option<u64> {
    let (i, _) = latest_separated_pair(cx, t, |_| true)?;
    let o = &t.vertices[0];
    Some(cx.walls_separating_point_from_wall(o, &t.walls[i]).len() as u64 + 1)
}

/// Both rays pass through a common vertex and continue with the same
/// letters forever, so they cross exactly the same walls.
fn certified_equal(xi: &BoundaryRay, eta: &BoundaryRay, a: &RayTrace, b: &RayTrace) -> bool {
    let n = a.vertices.len().min(b.vertices.len());
    let pos = (0..n).find(|&t| a.vertices[t] == b.vertices[t]);
    let Some(t) = pos else { return false };
    if (t..n).any(|s| a.vertices[s] != b.vertices[s]) {
        return false;
    }
    // beyond the prefixes both letter streams are periodic
    let lcm = num_integer::lcm(xi.period.len(), eta.period.len());
    let end = t.max(xi.prefix.len()).max(eta.prefix.len()) + lcm;
    xi.letters(end)[t..] == eta.letters(end)[t..]
}

fn check_pair(xi: &BoundaryRay, eta: &BoundaryRay) -> Result<()> {
    if xi.base != eta.base {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// [ξ|η]_o: the least #W(o, k) over walls k crossed by exactly one of the
/// two rays.
///
/// Walls of the symmetric difference that the other ray provably never
/// crosses are members. The value is certified when it is 0, or when every
/// undecided wall and every wall beyond the truncation is known to have at
/// least as many separators.
pub fn bracket_product(
    cx: &CubeComplex,
    xi: &BoundaryRay,
    eta: &BoundaryRay,
    depth: usize,
) -> Result<ProductValue> {
    check_pair(xi, eta)?;
    let a = trace(cx, xi, depth)?;
    let b = trace(cx, eta, depth)?;
    let o = xi.base();
    let mut member: Option<u64> = None;
    let mut unknown: Option<u64> = None;
    for (mine, other) in [(&a, &b), (&b, &a)] {
        for k in &mine.walls {
            if other.position(k).is_some() {
                continue;
            }
            let w = cx.walls_separating_point_from_wall(o, k).len() as u64;
            let slot = if never_crosses(cx, other, k) {
                &mut member
            } else {
                &mut unknown
            };
            *slot = Some(slot.map_or(w, |m| m.min(w)));
        }
    }
    let tails = [tail_bound(cx, &a), tail_bound(cx, &b)];
    let tail_floor = tails.iter().map(|t| t.unwrap_or(0)).min().unwrap_or(0);
    let (value, certified) = match member {
        Some(0) => (Extended::Finite(0), true),
        Some(v) => {
            let ok = unknown.map_or(true, |u| u >= v) && tails.iter().all(|t| t.is_some_and(|t| t >= v));
            (Extended::Finite(v), ok)
        }
        None if unknown.is_none() && certified_equal(xi, eta, &a, &b) => (Extended::Infinite, true),
        None => (Extended::Finite(unknown.unwrap_or(tail_floor)), false),
    };
    Ok(ProductValue {
        value,
        certified,
        depth_used: depth,
    })
}

/// (ξ|η)_o: the number of walls crossed by both rays.
///
/// Certified when each ray has a barrier: a strongly separated pair
/// (s_i, s_j) on it with s_i never crossed by the other ray. Every wall the
/// first ray crosses after s_j lies beyond s_i, out of reach of the other.
pub fn gromov_product(
    cx: &CubeComplex,
    xi: &BoundaryRay,
    eta: &BoundaryRay,
    depth: usize,
) -> Result<ProductValue> {
    check_pair(xi, eta)?;
    let a = trace(cx, xi, depth)?;
    let b = trace(cx, eta, depth)?;
    let common = a.walls.iter().filter(|h| b.position(h).is_some()).count() as u64;
    let barrier = |mine: &RayTrace, other: &RayTrace| {
        latest_separated_pair(cx, mine, |i| never_crosses(cx, other, &mine.walls[i])).is_some()
    };
    let certified = barrier(&a, &b) && barrier(&b, &a);
    Ok(ProductValue {
        value: Extended::Finite(common),
        certified,
        depth_used: depth,
    })
}

/// d_o(ξ, η) = e^{-exponent}; the exponent is [ξ|η]_o and +∞ means distance 0.
pub fn metric_d(
    cx: &CubeComplex,
    xi: &BoundaryRay,
    eta: &BoundaryRay,
    depth: usize,
) -> Result<ProductValue> {
    bracket_product(cx, xi, eta, depth)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossRatio {
    pub value: i64,
    pub certified: bool,
    /// The four terms (w|x), (y|z), (w|y), (x|z).
    pub terms: [ProductValue; 4],
}

fn combine(terms: [ProductValue; 4]) -> Result<CrossRatio> {
    let mut v = [0i64; 4];
    for (slot, t) in v.iter_mut().zip(&terms) {
        *slot = t.value.finite().ok_or(Error::InfiniteTerm)? as i64;
    }
    Ok(CrossRatio {
        value: v[0] + v[1] - v[2] - v[3],
        certified: terms.iter().all(|t| t.certified),
        terms,
    })
}

type Product = fn(&CubeComplex, &BoundaryRay, &BoundaryRay, usize) -> Result<ProductValue>;

fn cross_ratio_with(
    cx: &CubeComplex,
    quad: [&BoundaryRay; 4],
    depth: usize,
    product: Product,
) -> Result<CrossRatio> {
    let [w, x, y, z] = quad;
    combine([
        product(cx, w, x, depth)?,
        product(cx, y, z, depth)?,
        product(cx, w, y, depth)?,
        product(cx, x, z, depth)?,
    ])
}

/// cr_o(w,x,y,z) = [w|x] + [y|z] − [w|y] − [x|z].
pub fn cross_ratio_cr(cx: &CubeComplex, quad: [&BoundaryRay; 4], depth: usize) -> Result<CrossRatio> {
    cross_ratio_with(cx, quad, depth, bracket_product)
}

/// [w,x,y,z] = (w|x) + (y|z) − (w|y) − (x|z).
pub fn cross_ratio_bfm(cx: &CubeComplex, quad: [&BoundaryRay; 4], depth: usize) -> Result<CrossRatio> {
    cross_ratio_with(cx, quad, depth, gromov_product)
}

/// Whether the ray lies in U_{o,h_1,…,h_n}: it crosses every listed wall.
pub fn hyp_member(cx: &CubeComplex, ray: &BoundaryRay, walls: &[Wall], depth: usize) -> Result<bool> {
    let t = trace(cx, ray, depth)?;
    for h in walls {
        if t.position(h).is_none() {
            if never_crosses(cx, &t, h) {
                return Ok(false);
            }
            return Err(Error::UncertifiedDepth(depth));
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SeparatedChain {
    #[serde(skip)]
    pub walls: Vec<Wall>,
    /// Crossing positions along the ray.
    pub positions: Vec<usize>,
    /// Distances between consecutive crossing points.
    pub gaps: Vec<usize>,
    pub n: usize,
    pub r: usize,
}

impl SeparatedChain {
    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }
}

/// Longest greedy chain of ray walls whose consecutive members are
/// certified n-separated and crossed less than r apart. Chains of fewer than
/// two walls are reported empty.
pub fn find_separated_chain(
    cx: &CubeComplex,
    ray: &BoundaryRay,
    n: usize,
    r: usize,
    depth: usize,
    slack: usize,
) -> Result<SeparatedChain> {
    let empty = SeparatedChain {
        n,
        r,
        ..Default::default()
    };
    if depth == 0 {
        return Ok(empty);
    }
    let t = trace(cx, ray, depth)?;
    let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
    let mut ok = |i: usize, j: usize| -> Result<bool> {
        if let Some(&v) = memo.get(&(i, j)) {
            return Ok(v);
        }
        let (h, k) = (&t.walls[i], &t.walls[j]);
        let v = !cx.crosses(h, k) && cx.n_separated(h, k, n, slack)? == Separation::Certified;
        memo.insert((i, j), v);
        Ok(v)
    };
    let mut best: Vec<usize> = Vec::new();
    let mut covered: HashSet<usize> = HashSet::new();
    for start in 0..depth {
        if covered.contains(&start) {
            continue;
        }
        let mut chain = vec![start];
        'grow: loop {
            let i = *chain.last().unwrap();
            for j in i + 1..depth.min(i + r) {
                if ok(i, j)? {
                    chain.push(j);
                    continue 'grow;
                }
            }
            break;
        }
        // a greedy chain through an already visited wall follows the same path
        covered.extend(chain.iter().copied());
        if chain.len() > best.len() {
            best = chain;
        }
    }
    if best.len() < 2 {
        return Ok(empty);
    }
    Ok(SeparatedChain {
        walls: best.iter().map(|&i| t.walls[i].clone()).collect(),
        gaps: best.windows(2).map(|w| w[1] - w[0]).collect(),
        positions: best,
        n,
        r,
    })
}

/// The first chain wall k crossed after every input wall such that each
/// input wall separates the base point from k, so U_{o,k} ⊆ U_{o,walls}.
pub fn refine_to_single_wall(
    cx: &CubeComplex,
    ray: &BoundaryRay,
    walls: &[Wall],
    chain: &SeparatedChain,
) -> Result<Wall> {
    let o = ray.base();
    let depth = chain.positions.last().map_or(0, |p| p + 1);
    let t = trace(cx, ray, depth)?;
    let mut last = None;
    for h in walls {
        let p = t.position(h).ok_or(Error::ChainExhausted)?;
        last = Some(last.map_or(p, |q: usize| q.max(p)));
    }
    for (k, &p) in chain.walls.iter().zip(&chain.positions) {
        if last.is_some_and(|q| p <= q) {
            continue;
        }
        let sep: HashSet<Wall> = cx.walls_separating_point_from_wall(o, k).into_iter().collect();
        if walls.iter().all(|h| sep.contains(h)) {
            return Ok(k.clone());
        }
    }
    Err(Error::ChainExhausted)
}

/// Largest R such that some point of β lies within J of α ∖ B_R(o), with
/// B_R(o) the open ball; 0 when no point of β comes within J of α.
pub fn fellow_travel_radius<V>(
    alpha: &[V],
    beta: &[V],
    j: u64,
    o: &V,
    dist: impl Fn(&V, &V) -> u64,
) -> u64 {
    alpha
        .iter()
        .filter(|q| beta.iter().any(|p| dist(p, q) <= j))
        .map(|q| dist(o, q))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raag::DefiningGraph;

    fn z3z() -> CubeComplex {
        CubeComplex::new(DefiningGraph::z3_free_z())
    }

    fn ray(cx: &CubeComplex, text: &str, base: &str) -> BoundaryRay {
        let o = cx.element(base).unwrap();
        BoundaryRay::parse(cx, text, &o).unwrap()
    }

    fn literal(cx: &CubeComplex, p: &str, q: &str) -> BoundaryRay {
        let g = cx.graph();
        BoundaryRay::new(g.identity(), g.parse_word(p).unwrap(), g.parse_word(q).unwrap()).unwrap()
    }

    #[test]
    fn validation_examples() {
        let cx = z3z();
        assert!(validate_ray(&cx, &literal(&cx, "a^3", "d"), 40));
        assert!(!validate_ray(&cx, &literal(&cx, "a", "a^-1 a^-1"), 40));
        assert!(validate_ray(&cx, &literal(&cx, "a^-1 b^-1", "d"), 40));
        assert!(!validate_ray(&cx, &literal(&cx, "", "a d a^-1"), 4));
    }

    #[test]
    fn ray_wall_examples() {
        let cx = z3z();
        let w = ray_walls(&cx, &literal(&cx, "", "d"), 3).unwrap();
        let names: Vec<String> = w.iter().map(|h| cx.format_wall(h)).collect();
        assert_eq!(names, ["d@1", "d@d", "d@d^2"]);
        let w = ray_walls(&cx, &literal(&cx, "a", "d"), 1).unwrap();
        assert_eq!(w, vec![cx.parse_wall("a").unwrap()]);
    }

    #[test]
    fn rebasing_keeps_the_boundary_point() {
        let cx = z3z();
        let y = ray(&cx, "a^-1 b^-1 | d", "c^-3");
        assert_eq!(cx.graph().format(y.prefix().letters()), "a^-1 b^-1 c^3");
        // the period cancels the prefix, so the ray starts at the identity
        let r = ray(&cx, "a | a^-1", "1");
        assert!(r.prefix().is_empty());
    }

    #[test]
    fn section_example_at_identity() {
        let cx = z3z();
        let depth = 40;
        for n in 1..=4 {
            let w = ray(&cx, &format!("a^{n} | d"), "1");
            let x = ray(&cx, &format!("a^{n} b | d"), "1");
            let y = ray(&cx, "a^-1 b^-1 | d", "1");
            let z = ray(&cx, "a^-1 b^-1 c | d", "1");
            for (p, q) in [(&w, &x), (&w, &y), (&w, &z), (&x, &z), (&y, &z)] {
                let v = bracket_product(&cx, p, q, depth).unwrap();
                assert_eq!(v.value, Extended::Finite(0));
                assert!(v.certified);
            }
            let g = gromov_product(&cx, &w, &x, depth).unwrap();
            assert_eq!((g.value, g.certified), (Extended::Finite(n), true));
            for (p, q) in [(&w, &y), (&w, &z), (&x, &z)] {
                let g = gromov_product(&cx, p, q, depth).unwrap();
                assert_eq!((g.value, g.certified), (Extended::Finite(0), true));
            }
            // y and z both start a^-1 b^-1, so they share two walls
            let g = gromov_product(&cx, &y, &z, depth).unwrap();
            assert_eq!((g.value, g.certified), (Extended::Finite(2), true));
            let cr = cross_ratio_cr(&cx, [&w, &x, &y, &z], depth).unwrap();
            assert_eq!((cr.value, cr.certified), (0, true));
            let bfm = cross_ratio_bfm(&cx, [&w, &x, &y, &z], depth).unwrap();
            assert_eq!((bfm.value, bfm.certified), (n as i64 + 2, true));
        }
    }

    #[test]
    fn base_point_moves_the_cross_ratio() {
        let cx = z3z();
        for m in 1..=3 {
            let base = format!("c^-{m}");
            let w = ray(&cx, "a^4 | d", &base);
            let x = ray(&cx, "a^4 b | d", &base);
            let y = ray(&cx, "a^-1 b^-1 | d", &base);
            let z = ray(&cx, "a^-1 b^-1 c | d", &base);
            let v = bracket_product(&cx, &y, &z, 40).unwrap();
            assert_eq!((v.value, v.certified), (Extended::Finite(m), true));
            let cr = cross_ratio_cr(&cx, [&w, &x, &y, &z], 40).unwrap();
            assert_eq!((cr.value, cr.certified), (m as i64, true));
        }
    }

    #[test]
    fn equal_points_are_at_distance_zero() {
        let cx = z3z();
        let w = ray(&cx, "a^2 | d", "1");
        let v = bracket_product(&cx, &w, &w, 20).unwrap();
        assert_eq!((v.value, v.certified), (Extended::Infinite, true));
        let g = gromov_product(&cx, &w, &w, 20).unwrap();
        assert_eq!((g.value, g.certified), (Extended::Finite(20), false));
        // same point, different period phase
        let u = ray(&cx, "a^2 d | d", "1");
        let v = bracket_product(&cx, &w, &u, 20).unwrap();
        assert_eq!(v.value, Extended::Infinite);
        let err = cross_ratio_cr(&cx, [&w, &w, &u, &u], 20).unwrap_err();
        assert_eq!(err, Error::InfiniteTerm);
    }

    #[test]
    fn different_bases_are_rejected() {
        let cx = z3z();
        let w = ray(&cx, "a | d", "1");
        let u = ray(&cx, "a | d", "c");
        assert_eq!(bracket_product(&cx, &w, &u, 10), Err(Error::BaseMismatch));
    }

    #[test]
    fn membership_examples() {
        let cx = z3z();
        let w = ray(&cx, "a^3 | d", "1");
        let y = ray(&cx, "a^-1 b^-1 | d", "1");
        let a1 = cx.parse_wall("a").unwrap();
        assert_eq!(hyp_member(&cx, &w, &[a1.clone()], 20), Ok(true));
        assert_eq!(hyp_member(&cx, &y, &[a1], 20), Ok(false));
        assert_eq!(hyp_member(&cx, &y, &[], 20), Ok(true));
        // a far d-wall on the ray's own line is reached only beyond depth 3
        let far = cx.parse_wall("d@a^3 d^5").unwrap();
        assert_eq!(hyp_member(&cx, &w, &[far], 3), Err(Error::UncertifiedDepth(3)));
    }

    #[test]
    fn chains() {
        let ck = CubeComplex::new(DefiningGraph::croke_kleiner());
        let flat = ray(&ck, "| a", "1");
        assert!(find_separated_chain(&ck, &flat, 0, 5, 20, 4).unwrap().is_empty());
        let morse = ray(&ck, "| a d", "1");
        let c = find_separated_chain(&ck, &morse, 0, 5, 20, 4).unwrap();
        assert_eq!(c.len(), 20);
        assert!(find_separated_chain(&ck, &morse, 0, 5, 0, 4).unwrap().is_empty());
        let h = vec![c.walls[0].clone(), c.walls[1].clone()];
        let k = refine_to_single_wall(&ck, &morse, &h, &c).unwrap();
        let sep = ck.walls_separating_point_from_wall(morse.base(), &k);
        assert!(h.iter().all(|w| sep.contains(w)));
        assert_eq!(refine_to_single_wall(&ck, &morse, &[], &c).unwrap(), c.walls[0]);
        let short = SeparatedChain {
            walls: vec![c.walls[0].clone()],
            positions: vec![0],
            ..Default::default()
        };
        assert_eq!(
            refine_to_single_wall(&ck, &morse, &h, &short),
            Err(Error::ChainExhausted)
        );
    }

    #[test]
    fn fellow_travel_examples() {
        let d = |a: &i64, b: &i64| a.abs_diff(*b);
        let alpha: Vec<i64> = (0..=10).collect();
        assert_eq!(fellow_travel_radius(&alpha, &alpha, 0, &0, d), 10);
        let far: Vec<i64> = (100..110).collect();
        assert_eq!(fellow_travel_radius(&alpha, &far, 0, &0, d), 0);
        assert_eq!(fellow_travel_radius(&alpha, &[4], 1, &0, d), 5);
    }
}
