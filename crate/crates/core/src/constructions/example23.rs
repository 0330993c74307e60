//! The labelled graph Y built from a ray R with rays R_i hanging off R(i)
//! and segments S_i back to a common spine, on which geodesic fellow
//! travelling depends on the base point.
//!
//! Edge labels come from S = {a, b1…b6, c, d1…d6}. R spells a^∞, R_i spells
//! b1^f … b6^f c^∞ and S_i spells c^i b1 d6^f … d1^f from o, with f = f(i).
//! The initial c^i of all S_j are identified, so the S_i share the spine
//! o = C(0), C(1), …; o′ = C(1).

use crate::boundary::fellow_travel_radius;
use crate::error::{Error, Result};
use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};
use petgraph::visit::EdgeRef;
use serde::Serialize;
use std::fmt;

pub const ALPHABET: [&str; 14] = [
    "a", "b1", "b2", "b3", "b4", "b5", "b6", "c", "d1", "d2", "d3", "d4", "d5", "d6",
];
pub const SYM_A: usize = 0;
pub const SYM_C: usize = 7;

pub fn sym_b(k: usize) -> usize {
    assert!((1..=6).contains(&k));
    k
}

pub fn sym_d(k: usize) -> usize {
    assert!((1..=6).contains(&k));
    7 + k
}

/// An integer polynomial c0 + c1·x + c2·x² + …
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poly(pub Vec<i64>);

impl Poly {
    /// Parses `poly: c0 c1 c2 …`, coefficients in ascending degree.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix("poly:")
            .ok_or_else(|| Error::Parse(format!("`{text}` lacks `poly:`")))?;
        let coeffs = body
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("no coefficients".into()));
        }
        Ok(Poly(coeffs))
    }

    pub fn eval(&self, x: i64) -> Result<i64> {
        self.0
            .iter()
            .rev()
            .try_fold(0i64, |acc, &c| acc.checked_mul(x).and_then(|v| v.checked_add(c)))
            .ok_or_else(|| Error::Config(format!("f({x}) overflows")))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "poly: {}", parts.join(" "))
    }
}

/// f(1), …, f(i_max) after checking that f is injective with f(i) > i and
/// f(i)/i strictly increasing there.
pub fn check_superlinear(f: &Poly, i_max: usize) -> Result<Vec<u64>> {
    let mut vals = Vec::with_capacity(i_max);
    for i in 1..=i_max as i64 {
        let v = f.eval(i)?;
        if v <= i {
            return Err(Error::PreconditionFailed(format!("f({i}) = {v} ≤ {i}")));
        }
        vals.push(v);
    }
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if vals[i] == vals[j] {
                return Err(Error::PreconditionFailed(format!("f({}) = f({})", i + 1, j + 1)));
            }
        }
        if i + 1 < vals.len() {
            // f(i+1)/(i+1) > f(i)/i
            let (a, b) = (i as i64 + 1, i as i64 + 2);
            if vals[i + 1] * a <= vals[i] * b {
                return Err(Error::PreconditionFailed(format!(
                    "f(i)/i does not grow at i = {}",
                    i + 1
                )));
            }
        }
    }
    Ok(vals.into_iter().map(|v| v as u64).collect())
}

/// The finite truncation of Y.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: UnGraph<(), usize>,
    pub o: NodeIndex,
    pub o_prime: NodeIndex,
    /// R(0), …, R(i_max + tail).
    pub r: Vec<NodeIndex>,
    /// C(0), …, C(i_max).
    pub spine: Vec<NodeIndex>,
    /// R_i(0) = R(i), …, R_i(6f(i) + tail), for i = 1..=i_max.
    pub rays: Vec<Vec<NodeIndex>>,
    /// f(1), …, f(i_max).
    pub f: Vec<u64>,
    pub tail: usize,
}

pub fn build_example23(f: &Poly, i_max: usize, tail: usize) -> Result<LabeledGraph> {
    if i_max == 0 {
        return Err(Error::Config("i_max must be positive".into()));
    }
    let fv = check_superlinear(f, i_max)?;
    let mut g = UnGraph::<(), usize>::new_undirected();
    let o = g.add_node(());
    let chain = |g: &mut UnGraph<(), usize>, from: NodeIndex, labels: &[usize]| -> Vec<NodeIndex> {
        let mut out = vec![from];
        for &l in labels {
            let n = g.add_node(());
            g.add_edge(*out.last().expect("non-empty"), n, l);
            out.push(n);
        }
        out
    };
    let r = chain(&mut g, o, &vec![SYM_A; i_max + tail]);
    let spine = chain(&mut g, o, &vec![SYM_C; i_max]);
    let mut rays = Vec::with_capacity(i_max);
    for (idx, &fi) in fv.iter().enumerate() {
        let i = idx + 1;
        let fi = fi as usize;
        let mut labels = Vec::with_capacity(6 * fi + tail);
        for k in 1..=6 {
            labels.extend(std::iter::repeat(sym_b(k)).take(fi));
        }
        labels.extend(std::iter::repeat(SYM_C).take(tail));
        let ray = chain(&mut g, r[i], &labels);
        // S_i beyond the spine: b1, then d6^f … d1^f, ending on R_i(6f)
        let mut s_labels = vec![sym_b(1)];
        for k in (1..=6).rev() {
            s_labels.extend(std::iter::repeat(sym_d(k)).take(fi));
        }
        let last = s_labels.pop().expect("non-empty");
        let s = chain(&mut g, spine[i], &s_labels);
        g.add_edge(*s.last().expect("non-empty"), ray[6 * fi], last);
        rays.push(ray);
    }
    Ok(LabeledGraph {
        o_prime: spine[1],
        graph: g,
        o,
        r,
        spine,
        rays,
        f: fv,
        tail,
    })
}

impl LabeledGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Distances from `from` to every vertex, by node index.
    pub fn distances(&self, from: NodeIndex) -> Vec<u64> {
        let map = dijkstra(&self.graph, from, None, |_| 1u64);
        let mut out = vec![u64::MAX; self.graph.node_count()];
        for (n, d) in map {
            out[n.index()] = d;
        }
        out
    }

    /// A geodesic from s to t, taking the smallest node index at each tie.
    pub fn geodesic(&self, s: NodeIndex, t: NodeIndex) -> Vec<NodeIndex> {
        let ds = self.distances(s);
        let dt = self.distances(t);
        let total = ds[t.index()];
        let mut path = vec![s];
        let mut cur = s;
        while cur != t {
            cur = self
                .graph
                .edges(cur)
                .map(|e| if e.source() == cur { e.target() } else { e.source() })
                .filter(|n| ds[n.index()] == ds[cur.index()] + 1 && ds[n.index()] + dt[n.index()] == total)
                .min()
                .expect("a geodesic step exists");
            path.push(cur);
        }
        path
    }

    /// The word spelled along a vertex path, with ±1 for the direction of
    /// each edge relative to its construction.
    pub fn spell(&self, path: &[NodeIndex]) -> Vec<(usize, i8)> {
        path.windows(2)
            .map(|w| {
                let e = self.graph.find_edge(w[0], w[1]).expect("consecutive vertices are adjacent");
                let (src, _) = self.graph.edge_endpoints(e).expect("edge exists");
                (self.graph[e], if src == w[0] { 1 } else { -1 })
            })
            .collect()
    }
}

/// Closed-form vertex and edge counts of the truncation.
pub fn expected_counts(f: &[u64], tail: usize) -> (usize, usize) {
    let i_max = f.len();
    let six: usize = f.iter().map(|&x| 6 * x as usize).sum();
    let v = 1 + (i_max + tail) + i_max + (six + i_max * tail) + six;
    let e = (i_max + tail) + i_max + (six + i_max * tail) + (i_max + six);
    (v, e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentRow {
    pub i: usize,
    pub f: u64,
    /// Fellow-travel radius of the o-geodesic to R_i against R.
    pub from_o: u64,
    /// The same for o′, against the o′-geodesic towards R.
    pub from_o_prime: u64,
    /// Whether each geodesic runs through R(i) or through S_i.
    pub o_route: Route,
    pub o_prime_route: Route,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    AlongR,
    ThroughS,
}

/// For each i, geodesics from o and from o′ to the far end of R_i, and
/// their fellow-travel radii against the geodesic to the far end of R,
/// with tolerance J = κ.
pub fn basepoint_experiment(
    y: &LabeledGraph,
    kappa: u64,
    i_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<ExperimentRow>> {
    let r_end = *y.r.last().expect("R is non-empty");
    let alpha_o = y.geodesic(y.o, r_end);
    let alpha_p = y.geodesic(y.o_prime, r_end);
    let mut table: std::collections::HashMap<NodeIndex, Vec<u64>> = std::collections::HashMap::new();
    for &q in alpha_o.iter().chain(&alpha_p) {
        table.entry(q).or_insert_with(|| y.distances(q));
    }
    let dist = |p: &NodeIndex, q: &NodeIndex| -> u64 {
        match table.get(q) {
            Some(d) => d[p.index()],
            None => table[p][q.index()],
        }
    };
    let mut rows = Vec::new();
    for i in i_range {
        if i == 0 || i > y.rays.len() {
            return Err(Error::Config(format!("i = {i} outside 1..={}", y.rays.len())));
        }
        let target = *y.rays[i - 1].last().expect("ray is non-empty");
        let beta_o = y.geodesic(y.o, target);
        let beta_p = y.geodesic(y.o_prime, target);
        let route = |b: &[NodeIndex]| {
            if b.contains(&y.r[i]) {
                Route::AlongR
            } else {
                Route::ThroughS
            }
        };
        rows.push(ExperimentRow {
            i,
            f: y.f[i - 1],
            from_o: fellow_travel_radius(&alpha_o, &beta_o, kappa, &y.o, dist),
            from_o_prime: fellow_travel_radius(&alpha_p, &beta_p, kappa, &y.o_prime, dist),
            o_route: route(&beta_o),
            o_prime_route: route(&beta_p),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_plus_one() -> Poly {
        Poly::parse("poly: 1 0 1").unwrap()
    }

    #[test]
    fn polynomial_specs() {
        let f = square_plus_one();
        assert_eq!(f.eval(8), Ok(65));
        assert_eq!(f.to_string(), "poly: 1 0 1");
        assert!(Poly::parse("1 0 1").is_err());
        // linear growth is rejected, as is f(i) ≤ i
        assert!(check_superlinear(&Poly::parse("poly: 0 2").unwrap(), 5).is_err());
        assert!(check_superlinear(&Poly::parse("poly: 0 0 1").unwrap(), 5).is_err());
        assert!(check_superlinear(&f, 8).is_ok());
    }

    #[test]
    fn counts_and_spelling() {
        let f = square_plus_one();
        let tail = 75;
        let y = build_example23(&f, 8, tail).unwrap();
        assert_eq!((y.vertex_count(), y.edge_count()), expected_counts(&y.f, tail));
        let d = y.distances(y.o);
        assert_eq!(d[y.o_prime.index()], 1);
        // the relator loop: R to R(i), R_i to R_i(6f), S_i back to o
        let i = 3;
        let fi = y.f[i - 1] as usize;
        let mut lp = y.r[..=i].to_vec();
        lp.extend_from_slice(&y.rays[i - 1][1..=6 * fi]);
        let back = y.geodesic(y.rays[i - 1][6 * fi], y.spine[i]);
        lp.extend_from_slice(&back[1..]);
        lp.extend(y.spine[..i].iter().rev());
        let word = y.spell(&lp);
        assert_eq!(word.len(), 2 * i + 12 * fi + 1);
        assert_eq!(word[0], (SYM_A, 1));
        assert_eq!(word[i], (sym_b(1), 1));
        assert_eq!(word[i + 6 * fi], (sym_d(1), -1));
        assert_eq!(*word.last().unwrap(), (SYM_C, -1));
    }

    #[test]
    fn base_point_asymmetry() {
        let f = square_plus_one();
        let y = build_example23(&f, 8, 75).unwrap();
        let rows = basepoint_experiment(&y, 3, 1..=8).unwrap();
        assert_eq!(rows[0].i, 1);
        for r in &rows {
            assert!(r.from_o >= r.i as u64);
            assert!(r.from_o_prime <= 3 + 2);
            assert_eq!((r.o_route, r.o_prime_route), (Route::AlongR, Route::ThroughS));
        }
    }
}
