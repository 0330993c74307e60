use crate::report::Outputs;
use crate::{Cli, Command, Global};
use morse_cube::boundary::{
    bracket_product, cross_ratio_bfm, cross_ratio_cr, find_separated_chain, gromov_product, hyp_member,
    metric_d, refine_to_single_wall, validate_ray, BoundaryRay, Extended, SeparatedChain,
};
use morse_cube::constructions::beta::{build_beta, gamma_for, BetaConfig};
use morse_cube::constructions::contracting::{check_contracting, check_divergence_dichotomy, distance_profile};
use morse_cube::constructions::croke_kleiner::{build_croke_kleiner, build_gamma};
use morse_cube::constructions::example23::{basepoint_experiment, build_example23, expected_counts, Poly};
use morse_cube::constructions::kappa::{kappa, kappa_prime, SublinearFn};
use morse_cube::constructions::small_cancellation::{parse_relator, relators, small_cancellation_check};
use morse_cube::cube::{CubeComplex, Separation, Wall};
use morse_cube::raag::{DefiningGraph, GroupElement};
use morse_cube::{Error, Result};
use num_rational::BigRational;

pub fn run(cli: &Cli) -> Result<Outputs> {
    let g = &cli.global;
    let mut out = Outputs::default();
    match &cli.command {
        Command::Nf { word } => {
            let cx = complex(g)?;
            let x = cx.element(word)?;
            out.exact("normal_form", cx.format(&x));
            out.exact("length", x.len());
        }
        Command::Dist { x, y } => {
            let cx = complex(g)?;
            let d = cx.graph().distance(&cx.element(x)?, &cx.element(y)?);
            out.exact("distance", d);
        }
        Command::Walls { x, y } => {
            let cx = complex(g)?;
            let walls = cx.walls_between(&cx.element(x)?, &cx.element(y)?);
            out.exact("count", walls.len());
            out.exact("walls", fmt_walls(&cx, &walls));
        }
        Command::Side { wall, x } => {
            let cx = complex(g)?;
            out.exact("side", cx.side(&cx.parse_wall(wall)?, &cx.element(x)?));
        }
        Command::Crosses { h1, h2 } => {
            let cx = complex(g)?;
            out.exact("crosses", cx.crosses(&cx.parse_wall(h1)?, &cx.parse_wall(h2)?));
        }
        Command::Separated { h1, h2, n } => {
            let cx = complex(g)?;
            let (a, b) = (cx.parse_wall(h1)?, cx.parse_wall(h2)?);
            let count = cx.crossing_count(&a, &b, g.slack)?;
            let sep = cx.n_separated(&a, &b, *n, g.slack)?;
            out.exact("crosses", cx.crosses(&a, &b));
            out.push("crossing_count", count.count, count.certified);
            out.exact("carrier_distance", count.carrier_distance);
            out.push("separation", sep, sep != Separation::Unknown);
        }
        Command::Chain { ray, n, r } => {
            let cx = complex(g)?;
            let (_, xi) = parse_ray(&cx, g, ray)?;
            let chain = find_separated_chain(&cx, &xi, *n, *r, g.depth, g.slack)?;
            chain_outputs(&mut out, &cx, &chain);
        }
        Command::Product { xi, eta } => {
            let cx = complex(g)?;
            let (a, b) = (parse_ray(&cx, g, xi)?.1, parse_ray(&cx, g, eta)?.1);
            let v = gromov_product(&cx, &a, &b, g.depth)?;
            out.push("gromov_product", v.value, v.certified);
        }
        Command::Bracket { xi, eta } => {
            let cx = complex(g)?;
            let (a, b) = (parse_ray(&cx, g, xi)?.1, parse_ray(&cx, g, eta)?.1);
            let v = bracket_product(&cx, &a, &b, g.depth)?;
            out.push("bracket_product", v.value, v.certified);
        }
        Command::Metric { xi, eta } => {
            let cx = complex(g)?;
            let (a, b) = (parse_ray(&cx, g, xi)?.1, parse_ray(&cx, g, eta)?.1);
            let v = metric_d(&cx, &a, &b, g.depth)?;
            let d = match v.value {
                Extended::Finite(e) => (-(e as f64)).exp(),
                Extended::Infinite => 0.0,
            };
            out.push("exponent", v.value, v.certified);
            out.push("distance", d, v.certified);
        }
        Command::Crossratio { w, x, y, z, bfm } => {
            let cx = complex(g)?;
            let rays = [w, x, y, z]
                .iter()
                .map(|r| parse_ray(&cx, g, r).map(|p| p.1))
                .collect::<Result<Vec<_>>>()?;
            let quad = [&rays[0], &rays[1], &rays[2], &rays[3]];
            let cr = cross_ratio_cr(&cx, quad, g.depth)?;
            out.push("cross_ratio", cr.value, cr.certified);
            out.push("terms", cr.terms.map(|t| t.value), cr.certified);
            if *bfm {
                let b = cross_ratio_bfm(&cx, quad, g.depth)?;
                out.push("bfm_cross_ratio", b.value, b.certified);
                out.push("bfm_terms", b.terms.map(|t| t.value), b.certified);
            }
        }
        Command::Hyp { ray, walls } => {
            let cx = complex(g)?;
            let (_, xi) = parse_ray(&cx, g, ray)?;
            let walls = parse_walls(&cx, walls)?;
            match hyp_member(&cx, &xi, &walls, g.depth) {
                Ok(m) => out.exact("member", m),
                Err(Error::UncertifiedDepth(_)) => out.push("member", serde_json::Value::Null, false),
                Err(e) => return Err(e),
            }
        }
        Command::Refine { ray, walls, n, r } => {
            let cx = complex(g)?;
            let (_, xi) = parse_ray(&cx, g, ray)?;
            let walls = parse_walls(&cx, walls)?;
            let chain = find_separated_chain(&cx, &xi, *n, *r, g.depth, g.slack)?;
            let k = refine_to_single_wall(&cx, &xi, &walls, &chain)?;
            out.exact("wall", cx.format_wall(&k));
            let sep: Vec<Wall> = cx.walls_separating_point_from_wall(xi.base(), &k);
            out.exact("separating_walls", sep.len());
        }
        Command::Kappa { rho, k, c } => {
            let rho = SublinearFn::parse(rho)?;
            let (k, c) = (rational(k)?, rational(c)?);
            out.exact("kappa", kappa(&rho, &k, &c)?.to_string());
            out.exact("kappa_prime", kappa_prime(&rho, &k, &c)?.to_string());
        }
        Command::Gamma { flats } => {
            let ck = build_croke_kleiner();
            let cx = ck.complex();
            let gamma = build_gamma(&ck, *flats)?;
            let walls = gamma.walls(cx);
            out.exact("letters", cx.graph().format(&gamma.letters()));
            out.exact("flats", gamma.flats.iter().map(|f| f.kind).collect::<Vec<_>>());
            out.exact("families", walls.iter().map(|h| ck.family(h)).collect::<Vec<_>>());
            out.exact("geodesic", cx.graph().is_geodesic(&gamma.letters()));
        }
        Command::Beta {
            delta,
            flats,
            certify,
            k,
            c,
        } => {
            let ck = build_croke_kleiner();
            let gamma = gamma_for(&ck, *flats)?;
            let mut rep = build_beta(
                &ck,
                BetaConfig {
                    delta: *delta,
                    flats: *flats,
                },
                &gamma,
            )?;
            out.exact("length", rep.length);
            out.push("eq1_all", rep.eq1_all, rep.eq1_all);
            out.push("period_matches", rep.period_matches, rep.period_matches);
            out.push("triples_geodesic", rep.triples_geodesic, rep.triples_geodesic);
            out.push("endpoints_on_lines", rep.endpoints_on_lines, rep.endpoints_on_lines);
            out.exact("min_distance_to_gamma", rep.min_distance_to_gamma);
            if *certify {
                let (k, c) = (rational(k)?, rational(c)?);
                let q = rep.certify(&ck, &k, &c).clone();
                out.push("quasi_geodesic", &q, q.pass);
            } else {
                out.push("quasi_geodesic", serde_json::Value::Null, false);
            }
            out.exact("records", &rep.records);
        }
        Command::Contracting {
            start,
            path,
            rho,
            radius,
        } => {
            let cx = complex(g)?;
            let s = vertex_path(&cx, start, path)?;
            let rep = check_contracting(&cx, &s, &SublinearFn::parse(rho)?, *radius)?;
            out.push("passes", rep.passes, rep.passes);
            out.exact("max_diameter", rep.max_diameter);
            out.exact("report", &rep);
        }
        Command::Dichotomy {
            z_start,
            z,
            path_start,
            path,
            rho,
            k,
            c,
        } => {
            let cx = complex(g)?;
            let zs = vertex_path(&cx, z_start, z)?;
            let beta = vertex_path(&cx, path_start, path)?;
            let profile = distance_profile(&zs, &beta, |x, y| cx.graph().distance(x, y) as u64);
            let rep = check_divergence_dichotomy(&profile, &SublinearFn::parse(rho)?, &rational(k)?, &rational(c)?)?;
            out.push("case", rep.case, rep.holds);
            out.exact("report", &rep);
        }
        Command::Example23 { f, imax, tail, kappa } => {
            let poly = Poly::parse(f)?;
            let tail = match tail {
                Some(t) => *t,
                None => poly.eval(*imax as i64)?.max(0) as usize + 10,
            };
            let y = build_example23(&poly, *imax, tail)?;
            let counts = (y.vertex_count(), y.edge_count());
            let expected = expected_counts(&y.f, tail);
            out.push("vertices", counts.0, counts.0 == expected.0);
            out.push("edges", counts.1, counts.1 == expected.1);
            let rows = basepoint_experiment(&y, *kappa, 1..=*imax)?;
            let linear = rows.iter().all(|r| r.from_o >= r.i as u64);
            let bounded = rows.iter().all(|r| r.from_o_prime <= kappa + 2);
            out.push("radius_from_o_at_least_i", linear, linear);
            out.push("radius_from_o_prime_at_most_kappa_plus_2", bounded, bounded);
            out.exact("rows", &rows);
        }
        Command::Smallcancel { f, n, relators: given } => {
            let rels = if given.is_empty() {
                relators(&Poly::parse(f)?, *n)?
            } else {
                given.iter().map(|r| parse_relator(r)).collect::<Result<Vec<_>>>()?
            };
            let rep = small_cancellation_check(&rels)?;
            out.exact("ratio", format!("{}/{}", rep.ratio.0, rep.ratio.1));
            out.exact("below_sixth", rep.below_sixth);
            out.exact("status", rep.status);
            out.exact("report", &rep);
        }
    }
    Ok(out)
}

fn complex(g: &Global) -> Result<CubeComplex> {
    let graph = match &g.graph {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::GraphFile(format!("{}: {e}", path.display())))?;
            DefiningGraph::from_json(&text)?
        }
        None => DefiningGraph::croke_kleiner(),
    };
    Ok(CubeComplex::with_cap(graph, g.cap))
}

fn rational(text: &str) -> Result<BigRational> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("`{text}` is not a rational number")))
}

/// `name:PREFIX|PERIOD` or `PREFIX|PERIOD`, anchored at --base.
fn parse_ray(cx: &CubeComplex, g: &Global, text: &str) -> Result<(String, BoundaryRay)> {
    let (name, body) = match text.split_once(':') {
        Some((n, b)) if !n.contains('|') => (n.trim().to_string(), b),
        _ => (String::new(), text),
    };
    let o = cx.element(&g.base)?;
    let ray = BoundaryRay::parse(cx, body.trim_matches('"'), &o)?;
    if !validate_ray(cx, &ray, g.depth) {
        return Err(Error::InvalidRay(body.to_string()));
    }
    Ok((name, ray))
}

fn parse_walls(cx: &CubeComplex, walls: &[String]) -> Result<Vec<Wall>> {
    walls.iter().map(|w| cx.parse_wall(w)).collect()
}

fn fmt_walls(cx: &CubeComplex, walls: &[Wall]) -> Vec<String> {
    walls.iter().map(|h| cx.format_wall(h)).collect()
}

fn vertex_path(cx: &CubeComplex, start: &str, word: &str) -> Result<Vec<GroupElement>> {
    let g = cx.graph();
    let mut x = cx.element(start)?;
    let mut out = vec![x.clone()];
    for l in g.parse_word(word)?.letters() {
        x = g.mul_letters(&x, &[*l]);
        out.push(x.clone());
    }
    Ok(out)
}

fn chain_outputs(out: &mut Outputs, cx: &CubeComplex, chain: &SeparatedChain) {
    out.exact("length", chain.len());
    out.exact("walls", fmt_walls(cx, &chain.walls));
    out.exact("positions", &chain.positions);
    out.exact("gaps", &chain.gaps);
}
