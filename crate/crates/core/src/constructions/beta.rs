//! The quasi-geodesic β = β_1 ∗ β_2 ∗ … that leaves every neighbourhood of
//! γ while crossing the same walls far out: β_l = p_l ∗ q_l lies in the flat
//! F_l, p_l runs N_l edges parallel to the line F_l ∩ F_{l+1}, and q_l
//! returns to that line.

use super::croke_kleiner::{build_gamma, CrokeKleiner, Family, FlatType, Gamma};
use super::quasi::{certify_quasigeodesic, run_distances_to, QgReport, Run, SegmentPath};
use crate::error::{Error, Result};
use crate::raag::{Letter, PowerWord, Syllable};
use num_rational::BigRational;
use serde::Serialize;

/// The wall families crossed by p_1, q_1, p_2, q_2, … repeat with this period.
pub const FAMILY_PERIOD: [Family; 8] = [
    Family::C,
    Family::B,
    Family::C,
    Family::D,
    Family::B,
    Family::C,
    Family::B,
    Family::A,
];

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaConfig {
    pub delta: u64,
    pub flats: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// β_1, leaving o.
    Initial,
    /// F_l of type 𝒜.
    Case1,
    /// F_l of type 𝒞: Case1 with A, B played by D, C.
    Case2,
    /// F_l of type ℬ entered from 𝒜.
    Case3,
    /// F_l of type ℬ entered from 𝒞: A swapped with D and B with C.
    Case3Mirror,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatRecord {
    pub l: usize,
    pub flat: FlatType,
    pub case: CaseTag,
    /// d(v_{l−1}, F_l ∩ F_{l+1}).
    pub m: u64,
    pub n: u64,
    pub p: Run,
    pub q: Run,
    pub p_family: Family,
    pub q_family: Family,
    /// 2N_l ≥ 9M_l, i.e. N_l/2 − M_l ≥ N_l/4 + M_l/8.
    pub eq1: bool,
    /// Least distance from a vertex of β_l to a vertex of γ.
    pub distance_to_gamma: u64,
    pub end_distance_to_gamma: u64,
    /// v_{l−1} and v_l.
    pub start: String,
    pub end: String,
    #[serde(skip)]
    pub start_point: PowerWord,
    #[serde(skip)]
    pub end_point: PowerWord,
}

impl FlatRecord {
    pub fn length(&self) -> u64 {
        self.p.count + self.q.count
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BetaReport {
    pub config: BetaConfig,
    pub records: Vec<FlatRecord>,
    pub length: u64,
    pub eq1_all: bool,
    pub families: Vec<Family>,
    pub period_matches: bool,
    /// Every v_l lies in F_l ∩ F_{l+1}.
    pub endpoints_on_lines: bool,
    /// Every p_{l−1} ∗ q_{l−1} ∗ p_l is a combinatorial geodesic.
    pub triples_geodesic: bool,
    /// Least distance from β_k, k ≥ 2, to γ.
    pub min_distance_to_gamma: Option<u64>,
    pub quasi: Option<QgReport>,
    #[serde(skip)]
    pub path: SegmentPath,
}

/// Builds β_1 … β_L along `gamma`, which must have at least L + 1 pieces.
pub fn build_beta(ck: &CrokeKleiner, config: BetaConfig, gamma: &Gamma) -> Result<BetaReport> {
    let BetaConfig { delta, flats } = config;
    if delta <= 3 {
        return Err(Error::Config(format!("Δ = {delta} must exceed 3")));
    }
    if flats == 0 {
        return Err(Error::Config("β needs at least one flat".into()));
    }
    if gamma.len() < flats + 1 {
        return Err(Error::Config(format!(
            "γ has {} pieces, {} needed",
            gamma.len(),
            flats + 1
        )));
    }
    let cx = ck.complex();
    let g = ck.graph();
    let gamma_vertices = gamma.vertices(g);
    let mut v = PowerWord::identity();
    let mut path = SegmentPath::new(v.clone());
    let mut records: Vec<FlatRecord> = Vec::with_capacity(flats);
    let mut sum_len = 0u64;
    for l in 1..=flats {
        let here = &gamma.flats[l - 1];
        let next = &gamma.flats[l];
        let w_prev = &gamma.endpoints[l - 1];
        let w = &gamma.endpoints[l];
        let g_next = here.kind.shared(next.kind).expect("consecutive flats meet in a line");
        let other = {
            let (x, y) = here.kind.gens();
            if x == g_next {
                y
            } else {
                x
            }
        };
        let line_mask = 1u64 << g_next;
        let (case, g_prev) = if l == 1 {
            (CaseTag::Initial, None)
        } else {
            let prev = gamma.flats[l - 2].kind;
            let tag = match (here.kind, prev) {
                (FlatType::A, _) => CaseTag::Case1,
                (FlatType::C, _) => CaseTag::Case2,
                (FlatType::B, FlatType::A) => CaseTag::Case3,
                (FlatType::B, _) => CaseTag::Case3Mirror,
            };
            (tag, prev.shared(here.kind))
        };
        let sign = if g_prev == Some(g_next) {
            // away from w_{l−1} along the line they share
            let u = v.between(g, w_prev);
            match u.syllables() {
                [s] if s.gen == g_next => -s.exp.signum(),
                _ => {
                    return Err(Error::PreconditionFailed(format!(
                        "v_{} and w_{} are not on one {}-line",
                        l - 1,
                        l - 1,
                        g.name(g_next)
                    )))
                }
            }
        } else {
            // the g_next-wall at w_{l−1} that γ_l does not cross
            let w_el = g.normal_form(&w_prev.to_letters());
            let walls = gamma.piece_walls(cx, l);
            if walls.contains(&cx.wall_of_edge(&w_el, Letter::pos(g_next))) {
                -1
            } else {
                1
            }
        };
        let (_, m) = v.project_to_coset(g, w, line_mask);
        let n = if l == 1 {
            delta + 4
        } else {
            (delta + 3).max(5 * m).max(2 * sum_len)
        };
        let p = Run::new(g_next, sign, n);
        let mut x = v.clone();
        x.append(g, Syllable::new(g_next, sign * n as i64));
        let (proj, dq) = x.project_to_coset(g, w, line_mask);
        let back = x.between(g, &proj);
        let q = match back.syllables() {
            [] => Run::new(other, 1, 0),
            [s] if s.gen == other => Run::new(other, s.exp.signum(), s.exp.unsigned_abs()),
            _ => {
                return Err(Error::PreconditionFailed(format!(
                    "q_{l} leaves the flat: {}",
                    back.format(g)
                )))
            }
        };
        debug_assert_eq!(q.count, dq);
        let mut piece = SegmentPath::new(v.clone());
        piece.push(p);
        piece.push(q);
        let dists = run_distances_to(g, &piece, &gamma_vertices);
        records.push(FlatRecord {
            l,
            flat: here.kind,
            case,
            m,
            n,
            p,
            q,
            p_family: Family::of_gen(g_next),
            q_family: Family::of_gen(other),
            eq1: 2 * n >= 9 * m,
            distance_to_gamma: dists.iter().copied().min().unwrap_or(u64::MAX),
            end_distance_to_gamma: gamma_vertices
                .iter()
                .map(|u| proj.distance(g, u))
                .min()
                .unwrap_or(u64::MAX),
            start: v.format(g),
            end: proj.format(g),
            start_point: v.clone(),
            end_point: proj.clone(),
        });
        sum_len += n + q.count;
        path.push(p);
        path.push(q);
        v = proj;
    }

    let families: Vec<Family> = records.iter().flat_map(|r| [r.p_family, r.q_family]).collect();
    let period_matches = families
        .iter()
        .enumerate()
        .all(|(i, f)| *f == FAMILY_PERIOD[i % FAMILY_PERIOD.len()]);
    let endpoints_on_lines = records.iter().all(|r| {
        let l = r.l;
        gamma.flats[l - 1].contains(g, &r.end_point) && gamma.flats[l].contains(g, &r.end_point)
    });
    let triples_geodesic = records.windows(2).all(|pair| {
        let (a, b) = (&pair[0], &pair[1]);
        let mut end = b.start_point.clone();
        end.append(g, Syllable::new(b.p.gen, b.p.sign * b.p.count as i64));
        a.start_point.distance(g, &end) == a.length() + b.p.count
    });
    let min_distance_to_gamma = records.iter().skip(1).map(|r| r.distance_to_gamma).min();
    Ok(BetaReport {
        config,
        length: path.length(),
        eq1_all: records.iter().all(|r| r.eq1),
        records,
        families,
        period_matches,
        endpoints_on_lines,
        triples_geodesic,
        min_distance_to_gamma,
        quasi: None,
        path,
    })
}

/// γ with enough pieces for `flats` flats of β, plus three for the distance
/// checks: beyond that γ moves away from every β_k with k ≤ L.
pub fn gamma_for(ck: &CrokeKleiner, flats: usize) -> Result<Gamma> {
    build_gamma(ck, flats + 4)
}

impl BetaReport {
    /// Runs [`certify_quasigeodesic`] on β and stores the result.
    pub fn certify(&mut self, ck: &CrokeKleiner, k: &BigRational, c: &BigRational) -> &QgReport {
        let rep = certify_quasigeodesic(ck.graph(), &self.path, k, c);
        self.quasi.insert(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::croke_kleiner::build_croke_kleiner;
    use crate::constructions::kappa::integer;
    use crate::constructions::quasi::certify_quasigeodesic_brute;

    fn beta(delta: u64, flats: usize) -> (CrokeKleiner, BetaReport) {
        let ck = build_croke_kleiner();
        let gamma = gamma_for(&ck, flats).unwrap();
        let rep = build_beta(&ck, BetaConfig { delta, flats }, &gamma).unwrap();
        (ck, rep)
    }

    #[test]
    fn first_flats_by_hand() {
        let (ck, rep) = beta(4, 4);
        let g = ck.graph();
        let r = &rep.records;
        assert_eq!(r[0].case, CaseTag::Initial);
        assert_eq!((r[0].p, r[0].q), (Run::new(2, -1, 8), Run::new(1, 1, 1)));
        let v1 = PowerWord::from_letters(g, &g.parse_word("b c^-8").unwrap().0);
        assert_eq!(r[0].end_point.distance(g, &v1), 0);
        // β_1 has length 9, so N_2 = 18
        assert_eq!((r[1].case, r[1].n, r[1].m), (CaseTag::Case2, 18, 1));
        assert_eq!(r[1].p, Run::new(2, -1, 18));
        assert_eq!(r[1].q, Run::new(3, 1, 1));
        assert_eq!(r[2].case, CaseTag::Case3Mirror);
        assert_eq!(r[2].p.gen, 1);
        assert_eq!(r[3].case, CaseTag::Case1);
        assert!(rep.eq1_all && rep.period_matches && rep.endpoints_on_lines && rep.triples_geodesic);
        assert!(build_beta(&ck, BetaConfig { delta: 3, flats: 2 }, &gamma_for(&ck, 2).unwrap()).is_err());
    }

    #[test]
    fn invariants_hold_at_scale() {
        let (_, rep) = beta(4, 12);
        for r in &rep.records {
            assert!(r.eq1);
            if r.l > 1 {
                assert!(r.n >= 4 + 3 && r.n >= 5 * r.m);
                assert!(r.distance_to_gamma >= 4, "β_{} at {}", r.l, r.distance_to_gamma);
            }
            assert!(r.end_distance_to_gamma >= 4 + 3);
        }
        assert!(rep.period_matches && rep.endpoints_on_lines && rep.triples_geodesic);
        let cases: Vec<CaseTag> = rep.records.iter().map(|r| r.case).collect();
        assert!(cases.contains(&CaseTag::Case3) && cases.contains(&CaseTag::Case3Mirror));
    }

    #[test]
    fn segment_check_agrees_with_brute_force() {
        for flats in 1..=3 {
            let (ck, rep) = beta(4, flats);
            let (k, c) = (integer(8), integer(1));
            let fast = certify_quasigeodesic(ck.graph(), &rep.path, &k, &c);
            let slow = certify_quasigeodesic_brute(ck.graph(), &rep.path, &k, &c);
            assert_eq!(fast.pass, slow.pass);
            assert_eq!(fast.worst.unwrap().slack, slow.worst.unwrap().slack);
        }
    }

    #[test]
    fn quasi_geodesic_constants() {
        let (ck, mut rep) = beta(4, 12);
        let q = rep.certify(&ck, &integer(8), &integer(1));
        assert!(q.pass, "{:?}", q.worst);
        assert!(q.upper_violation.is_none());
    }
}
