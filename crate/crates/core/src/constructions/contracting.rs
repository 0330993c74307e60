//! Brute-force contraction checks for finite vertex paths, and the
//! stay-close-or-diverge dichotomy for quasi-geodesics near a contracting
//! set.

use super::kappa::{integer, kappa, kappa_prime, to_f64, SublinearFn};
use super::quasi::ser_rational;
use crate::cube::CubeComplex;
use crate::error::{Error, Result};
use crate::raag::GroupElement;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnulusRecord {
    /// d(S, y) for the points y of this annulus.
    pub distance: u64,
    pub points: usize,
    /// Largest diam(π_S(x) ∪ π_S(y)) over x with d(x, y) < d(S, y).
    pub max_diameter: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionWitness {
    pub x: String,
    pub y: String,
    pub d_xy: u64,
    pub d_sy: u64,
    pub diameter: u64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionReport {
    pub rho: SublinearFn,
    pub radius: u32,
    pub center: String,
    pub points: usize,
    pub pairs: u64,
    pub annuli: Vec<AnnulusRecord>,
    /// The least D for which S passes with ρ ≡ D.
    pub max_diameter: u64,
    pub passes: bool,
    pub witness: Option<ContractionWitness>,
}

/// Tests diam(π_S(x) ∪ π_S(y)) ≤ ρ(d(S, y)) for every y ∉ S in the ball of
/// the given radius about the middle vertex of S and every x ∉ S with
/// d(x, y) < d(S, y). Projections are the full sets of nearest points.
pub fn check_contracting(
    cx: &CubeComplex,
    s: &[GroupElement],
    rho: &SublinearFn,
    radius: u32,
) -> Result<ContractionReport> {
    if s.is_empty() {
        return Err(Error::PreconditionFailed("empty set".into()));
    }
    let g = cx.graph();
    let center = &s[s.len() / 2];
    let ball = cx.ball(center, radius)?;
    let offsets = cx.ball(&g.identity(), radius.saturating_sub(1))?;
    let members: HashSet<&GroupElement> = s.iter().collect();
    let mut s_dist = vec![vec![0u64; s.len()]; s.len()];
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let d = g.distance(&s[i], &s[j]) as u64;
            s_dist[i][j] = d;
            s_dist[j][i] = d;
        }
    }
    let mut cache: HashMap<GroupElement, (u64, Vec<usize>)> = HashMap::new();
    let mut project = |x: &GroupElement| -> (u64, Vec<usize>) {
        cache
            .entry(x.clone())
            .or_insert_with(|| {
                let d: Vec<u64> = s.iter().map(|v| g.distance(x, v) as u64).collect();
                let m = *d.iter().min().expect("non-empty");
                (m, (0..s.len()).filter(|&i| d[i] == m).collect())
            })
            .clone()
    };
    let mut annuli: BTreeMap<u64, AnnulusRecord> = BTreeMap::new();
    let mut pairs = 0u64;
    let mut witness = None;
    for y in &ball {
        if members.contains(y) {
            continue;
        }
        let (r, py) = project(y);
        let entry = annuli.entry(r).or_insert(AnnulusRecord {
            distance: r,
            points: 0,
            max_diameter: 0,
        });
        entry.points += 1;
        let mut worst = entry.max_diameter;
        for z in offsets.iter().filter(|z| (z.len() as u64) < r) {
            let x = g.mul(y, z);
            if members.contains(&x) {
                continue;
            }
            pairs += 1;
            let (_, px) = project(&x);
            let mut diam = 0;
            for &i in px.iter().chain(&py) {
                for &j in px.iter().chain(&py) {
                    diam = diam.max(s_dist[i][j]);
                }
            }
            worst = worst.max(diam);
            if witness.is_none() && !rho.bounds(diam, r) {
                witness = Some(ContractionWitness {
                    x: cx.format(&x),
                    y: cx.format(y),
                    d_xy: z.len() as u64,
                    d_sy: r,
                    diameter: diam,
                    bound: rho.eval_f64(r as f64),
                });
            }
        }
        annuli.get_mut(&r).expect("inserted").max_diameter = worst;
    }
    let annuli: Vec<AnnulusRecord> = annuli.into_values().collect();
    Ok(ContractionReport {
        rho: rho.clone(),
        radius,
        center: cx.format(center),
        points: ball.len(),
        pairs,
        max_diameter: annuli.iter().map(|a| a.max_diameter).max().unwrap_or(0),
        passes: witness.is_none(),
        annuli,
        witness,
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DichotomyCase {
    /// β stays in the κ′-neighbourhood of Z.
    StaysClose,
    /// β leaves for good after T_0 and diverges at least linearly.
    Diverges,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DichotomyReport {
    pub case: DichotomyCase,
    #[serde(serialize_with = "ser_rational")]
    pub kappa: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub kappa_prime: BigRational,
    pub length: u64,
    pub max_distance: u64,
    /// Last time with d(β_t, Z) ≤ κ.
    pub last_close: u64,
    /// T_0 in the diverging case.
    pub t0: Option<u64>,
    /// min over t of d(β_t, Z) − ((t − T_0)/2K′ − 2(C′ + κ)), at its argmin.
    #[serde(serialize_with = "ser_opt_rational")]
    pub min_residual: Option<BigRational>,
    pub argmin: Option<u64>,
    pub holds: bool,
}

fn ser_opt_rational<S: serde::Serializer>(
    x: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// d(β_t, Z) for every vertex of β, by brute force.
pub fn distance_profile<V>(z: &[V], beta: &[V], dist: impl Fn(&V, &V) -> u64) -> Vec<u64> {
    beta.iter()
        .map(|p| z.iter().map(|q| dist(p, q)).min().unwrap_or(u64::MAX))
        .collect()
}

/// Sorts a (K′, C′)-quasi-geodesic prefix, given by its distances to a
/// ρ-contracting Z, into the two cases of the divergence dichotomy and
/// checks the linear lower bound of the second case pointwise.
pub fn check_divergence_dichotomy(
    profile: &[u64],
    rho: &SublinearFn,
    k: &BigRational,
    c: &BigRational,
) -> Result<DichotomyReport> {
    let kap = kappa(rho, k, c)?;
    let kap_p = kappa_prime(rho, k, c)?;
    let first = *profile
        .first()
        .ok_or_else(|| Error::PreconditionFailed("empty path".into()))?;
    if integer(first as i64) > kap {
        return Err(Error::PreconditionFailed(format!(
            "d(β_0, Z) = {first} exceeds κ = {kap}"
        )));
    }
    // d ≤ κ for an integer d iff d ≤ ⌊κ⌋
    let floor = |x: &BigRational| x.floor().to_integer().to_u64().unwrap_or(u64::MAX);
    let kap_floor = floor(&kap);
    let last_close = profile.iter().rposition(|&d| d <= kap_floor).expect("β_0 is close") as u64;
    let max_distance = profile.iter().copied().max().unwrap_or(0);
    let mut rep = DichotomyReport {
        case: DichotomyCase::StaysClose,
        kappa: kap.clone(),
        kappa_prime: kap_p.clone(),
        length: profile.len() as u64 - 1,
        max_distance,
        last_close,
        t0: None,
        min_residual: None,
        argmin: None,
        holds: true,
    };
    if max_distance <= floor(&kap_p) {
        return Ok(rep);
    }
    rep.case = DichotomyCase::Diverges;
    rep.t0 = Some(last_close);
    // d_t − (t − T_0)/2K′ is minimised in floating point, then the residual
    // at the minimiser is evaluated exactly
    let slope = 1.0 / (2.0 * to_f64(k));
    let (arg, _) = profile
        .iter()
        .enumerate()
        .skip(last_close as usize)
        .map(|(t, &d)| (t, d as f64 - slope * (t as f64 - last_close as f64)))
        .fold((last_close as usize, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        });
    let two = integer(2);
    let elapsed = BigRational::from_integer(BigInt::from(arg as u64 - last_close));
    let bound = elapsed / (&two * k) - &two * (c + &kap);
    let residual = integer(profile[arg] as i64) - bound;
    rep.holds = residual >= integer(0);
    rep.min_residual = Some(residual);
    rep.argmin = Some(arg as u64);
    Ok(rep)
}
