//! Paths in a RAAG Cayley graph made of long straight runs g^{±n}, and an
//! exact check of the (K, C)-quasi-geodesic inequalities over all pairs of
//! vertex times.
//!
//! Runs can be millions of edges long, so nothing is expanded. For times s
//! in run i and t in run j the distance is
//!
//!   |g_i^{σ_i(n_i − x)} · M · g_j^{σ_j y}|
//!
//! with M the product of the runs strictly between. Only the g_i-syllable of
//! M that moves to the front and the g_j-syllable that moves to the back can
//! absorb the outer powers, so the distance is a sum of absolute values of
//! affine functions of (x, y). Its minimum slack against the linear bound is
//! attained at a vertex of the arrangement cut out by their zero lines.

use crate::raag::{DefiningGraph, GroupElement, Letter, PowerWord, Syllable};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::collections::BTreeSet;

/// n edges along g^sign.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    pub gen: usize,
    pub sign: i64,
    pub count: u64,
}

impl Run {
    pub fn new(gen: usize, sign: i64, count: u64) -> Self {
        assert!(sign == 1 || sign == -1);
        Run { gen, sign, count }
    }

    fn syllable(&self, count: u64) -> Syllable {
        Syllable::new(self.gen, self.sign * count as i64)
    }
}

/// A unit-speed edge path: start, then the runs in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentPath {
    pub start: PowerWord,
    pub runs: Vec<Run>,
}

impl SegmentPath {
    pub fn new(start: PowerWord) -> Self {
        SegmentPath {
            start,
            runs: Vec::new(),
        }
    }

    /// Appends a run, merging it into the last one when it continues it.
    pub fn push(&mut self, run: Run) {
        if run.count == 0 {
            return;
        }
        if let Some(last) = self.runs.last_mut() {
            if last.gen == run.gen && last.sign == run.sign {
                last.count += run.count;
                return;
            }
        }
        self.runs.push(run);
    }

    pub fn from_letters(graph: &DefiningGraph, start: &GroupElement, letters: &[Letter]) -> Self {
        let mut p = SegmentPath::new(PowerWord::from_letters(graph, start.letters()));
        for l in letters {
            p.push(Run::new(l.gen(), l.sign(), 1));
        }
        p
    }

    pub fn length(&self) -> u64 {
        self.runs.iter().map(|r| r.count).sum()
    }

    /// Start vertex of every run, and the final vertex.
    pub fn run_starts(&self, graph: &DefiningGraph) -> Vec<PowerWord> {
        let mut out = vec![self.start.clone()];
        let mut w = self.start.clone();
        for r in &self.runs {
            w.append(graph, r.syllable(r.count));
            out.push(w.clone());
        }
        out
    }

    /// Times at which runs start, and the total length.
    pub fn run_times(&self) -> Vec<u64> {
        let mut out = vec![0];
        let mut t = 0;
        for r in &self.runs {
            t += r.count;
            out.push(t);
        }
        out
    }

    /// The vertex at time t.
    pub fn point(&self, graph: &DefiningGraph, t: u64) -> PowerWord {
        let mut w = self.start.clone();
        let mut left = t;
        for r in &self.runs {
            let k = left.min(r.count);
            w.append(graph, r.syllable(k));
            left -= k;
            if left == 0 {
                break;
            }
        }
        w
    }

    /// All vertices. Only for short paths.
    pub fn vertices(&self, graph: &DefiningGraph) -> Vec<PowerWord> {
        let mut out = vec![self.start.clone()];
        let mut w = self.start.clone();
        for r in &self.runs {
            for _ in 0..r.count {
                w.append(graph, r.syllable(1));
                out.push(w.clone());
            }
        }
        out
    }

    /// Distance between the vertices at times s ≤ t, by the closed form.
    pub fn distance(&self, graph: &DefiningGraph, s: u64, t: u64) -> u64 {
        let (s, t) = (s.min(t), s.max(t));
        let times = self.run_times();
        let locate = |u: u64| -> (usize, u64) {
            let i = match times.binary_search(&u) {
                Ok(i) => i.min(self.runs.len().saturating_sub(1)),
                Err(i) => i - 1,
            };
            (i, u - times[i])
        };
        if self.runs.is_empty() {
            return 0;
        }
        let (i, x) = locate(s);
        let (j, y) = locate(t);
        if i == j {
            return y - x;
        }
        PairForm::new(graph, self, i, j).eval(x as i64, y as i64) as u64
    }
}

/// d(x, y) for x ∈ [0, n_i] in run i and y ∈ [0, n_j] in run j, i < j.
#[derive(Clone, Debug)]
struct PairForm {
    base: i64,
    a_sign: i64,
    n_i: i64,
    b_sign: i64,
    kind: PairKind,
}

#[derive(Clone, Debug)]
enum PairKind {
    /// |σ_i(n_i − x) + c_l| + |c_r + σ_j y|
    Separate { c_l: i64, c_r: i64 },
    /// |σ_i(n_i − x) + c + σ_j y|
    Merged { c: i64 },
}

impl PairForm {
    fn new(graph: &DefiningGraph, path: &SegmentPath, i: usize, j: usize) -> Self {
        let (ri, rj) = (path.runs[i], path.runs[j]);
        let mut m = PowerWord::identity();
        for r in &path.runs[i + 1..j] {
            m.append(graph, r.syllable(r.count));
        }
        let len = m.length() as i64;
        let g = ri.gen;
        let merged = g == rj.gen && {
            let star = graph.star_mask(g);
            let ones = m.syllables().iter().filter(|s| s.gen == g).count();
            m.lies_in(star) && ones <= 1
        };
        let kind = if merged {
            let c = m
                .syllables()
                .iter()
                .find(|s| s.gen == g)
                .map_or(0, |s| s.exp);
            PairKind::Merged { c }
        } else {
            PairKind::Separate {
                c_l: m.leading_exponent(graph, g),
                c_r: m.trailing_exponent(graph, rj.gen),
            }
        };
        let base = match kind {
            PairKind::Merged { c } => len - c.abs(),
            PairKind::Separate { c_l, c_r } => len - c_l.abs() - c_r.abs(),
        };
        PairForm {
            base,
            a_sign: ri.sign,
            n_i: ri.count as i64,
            b_sign: rj.sign,
            kind,
        }
    }

    fn eval(&self, x: i64, y: i64) -> i64 {
        let a = self.a_sign * (self.n_i - x);
        let b = self.b_sign * y;
        self.base
            + match self.kind {
                PairKind::Separate { c_l, c_r } => (a + c_l).abs() + (c_r + b).abs(),
                PairKind::Merged { c } => (a + c + b).abs(),
            }
    }

    /// Vertices of the arrangement inside [0, n_i] × [0, n_j], with their
    /// lattice neighbours.
    fn candidates(&self, n_j: i64) -> Vec<(i64, i64)> {
        let n_i = self.n_i;
        let mut xs = BTreeSet::from([0, n_i]);
        let mut ys = BTreeSet::from([0, n_j]);
        // a = σ_i(n_i − x) = −k  ⟺  x = n_i + σ_i k
        let x_at = |k: i64| n_i + self.a_sign * k;
        // b = σ_j y = −k  ⟺  y = −σ_j k
        let y_at = |k: i64| -self.b_sign * k;
        let mut pts = Vec::new();
        match self.kind {
            PairKind::Separate { c_l, c_r } => {
                xs.insert(x_at(c_l));
                ys.insert(y_at(c_r));
            }
            PairKind::Merged { c } => {
                // the crease a + c + b = 0 against the rectangle edges
                for &x in &[0, n_i] {
                    let a = self.a_sign * (n_i - x);
                    pts.push((x, y_at(a + c)));
                }
                for &y in &[0, n_j] {
                    let b = self.b_sign * y;
                    pts.push((x_at(c + b), y));
                }
            }
        }
        for &x in &xs {
            for &y in &ys {
                pts.push((x, y));
            }
        }
        let mut out = BTreeSet::new();
        for (x, y) in pts {
            for dx in -1..=1 {
                for dy in -1..=1 {
                    let (u, v) = (x + dx, y + dy);
                    if (0..=n_i).contains(&u) && (0..=n_j).contains(&v) {
                        out.insert((u, v));
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

/// A pair of times and the slack of the lower bound there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QgWitness {
    pub s: u64,
    pub t: u64,
    pub distance: u64,
    /// d − ((t − s)/K − C), exact.
    #[serde(serialize_with = "ser_rational")]
    pub slack: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QgReport {
    pub pass: bool,
    #[serde(serialize_with = "ser_rational")]
    pub k: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub c: BigRational,
    pub length: u64,
    /// Pairs (s, t) evaluated.
    pub checked: u64,
    /// The smallest slack found.
    pub worst: Option<QgWitness>,
    /// A pair with d > t − s, which a unit-speed path cannot have.
    pub upper_violation: Option<(u64, u64)>,
    /// The CAT(0) constants implied in dimension two: (√2·K, C/√2).
    pub l2_constants: (f64, f64),
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    x: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn slack(d: i64, gap: i64, k: &BigRational, c: &BigRational) -> BigRational {
    BigRational::from_integer(BigInt::from(d)) - BigRational::from_integer(BigInt::from(gap)) / k + c
}

fn report(path: &SegmentPath, k: &BigRational, c: &BigRational) -> QgReport {
    let sqrt2 = std::f64::consts::SQRT_2;
    let kf = crate::constructions::kappa::to_f64(k);
    let cf = crate::constructions::kappa::to_f64(c);
    QgReport {
        pass: true,
        k: k.clone(),
        c: c.clone(),
        length: path.length(),
        checked: 0,
        worst: None,
        upper_violation: None,
        l2_constants: (sqrt2 * kf, cf / sqrt2),
    }
}

fn record(rep: &mut QgReport, s: u64, t: u64, d: i64, k: &BigRational, c: &BigRational) {
    rep.checked += 1;
    let gap = (t - s) as i64;
    if d > gap && rep.upper_violation.is_none() {
        rep.upper_violation = Some((s, t));
        rep.pass = false;
    }
    let sl = slack(d, gap, k, c);
    let better = match &rep.worst {
        None => true,
        Some(w) => sl < w.slack || (sl == w.slack && (s, t) < (w.s, w.t)),
    };
    if sl < BigRational::from_integer(BigInt::from(0)) {
        rep.pass = false;
    }
    if better {
        rep.worst = Some(QgWitness {
            s,
            t,
            distance: d as u64,
            slack: sl,
        });
    }
}

/// Checks (t − s)/K − C ≤ d(β(s), β(t)) ≤ t − s over all vertex times, with
/// d the ℓ¹ word metric.
pub fn certify_quasigeodesic(
    graph: &DefiningGraph,
    path: &SegmentPath,
    k: &BigRational,
    c: &BigRational,
) -> QgReport {
    let mut rep = report(path, k, c);
    let times = path.run_times();
    for (i, ri) in path.runs.iter().enumerate() {
        // within one run the path is straight: d = t − s
        for &(x, y) in &[(0, 0), (0, ri.count)] {
            record(&mut rep, times[i] + x, times[i] + y, (y - x) as i64, k, c);
        }
        for j in i + 1..path.runs.len() {
            let form = PairForm::new(graph, path, i, j);
            let n_j = path.runs[j].count as i64;
            for (x, y) in form.candidates(n_j) {
                let d = form.eval(x, y);
                record(&mut rep, times[i] + x as u64, times[j] + y as u64, d, k, c);
            }
        }
    }
    rep
}

/// The same inequalities by expanding every vertex and comparing all pairs.
pub fn certify_quasigeodesic_brute(
    graph: &DefiningGraph,
    path: &SegmentPath,
    k: &BigRational,
    c: &BigRational,
) -> QgReport {
    let mut rep = report(path, k, c);
    let v = path.vertices(graph);
    for s in 0..v.len() {
        for t in s..v.len() {
            let d = v[s].distance(graph, &v[t]) as i64;
            record(&mut rep, s as u64, t as u64, d, k, c);
        }
    }
    rep
}

/// For every run, the least distance from one of its vertices to any of
/// `targets`: d(start·g^{σx}, u) = |E| − |e| + |e − σx| with E = start⁻¹u
/// and e the g-exponent at the front of E.
pub fn run_distances_to(graph: &DefiningGraph, path: &SegmentPath, targets: &[PowerWord]) -> Vec<u64> {
    let starts = path.run_starts(graph);
    path.runs
        .iter()
        .zip(&starts)
        .map(|(r, s)| {
            targets
                .iter()
                .map(|u| {
                    let e_word = s.between(graph, u);
                    let e = e_word.leading_exponent(graph, r.gen);
                    let rest = e_word.length() as i64 - e.abs();
                    // |e − σx| over x ∈ [0, n]
                    let best = if e * r.sign > 0 {
                        (e.abs() - r.count as i64).max(0)
                    } else {
                        e.abs()
                    };
                    (rest + best) as u64
                })
                .min()
                .unwrap_or(u64::MAX)
        })
        .collect()
}

/// d(β(t), targets) for every t = 0..=length, computed run by run.
pub fn distance_profile(graph: &DefiningGraph, path: &SegmentPath, targets: &[PowerWord]) -> Vec<u64> {
    let starts = path.run_starts(graph);
    let mut out = Vec::with_capacity(path.length() as usize + 1);
    for (r, s) in path.runs.iter().zip(&starts) {
        let forms: Vec<(i64, i64)> = targets
            .iter()
            .map(|u| {
                let e_word = s.between(graph, u);
                let e = e_word.leading_exponent(graph, r.gen);
                (e_word.length() as i64 - e.abs(), e)
            })
            .collect();
        for x in 0..r.count as i64 {
            let d = forms
                .iter()
                .map(|&(rest, e)| rest + (e - r.sign * x).abs())
                .min()
                .unwrap_or(i64::MAX);
            out.push(d as u64);
        }
    }
    let end = starts.last().expect("at least the start");
    out.push(targets.iter().map(|u| end.distance(graph, u)).min().unwrap_or(u64::MAX));
    out
}
