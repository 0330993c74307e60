//! Piece lengths for the presentation ⟨S | r_1, r_2, …⟩ read off the loops
//! of the labelled graph, with r_i = a^i b1^f … b6^f d1^-f … d6^-f b1^-1 c^-i.
//!
//! Pieces are common prefixes of two distinct elements of R*, the set of
//! cyclic conjugates of the relators and their inverses. Comparing the
//! longest piece with 1/6 of the shorter relator is the usual C′(1/6)
//! test; it only bounds pieces between whole relators, so a pass is reported
//! as a proxy for the graphical condition.

use super::example23::{sym_b, sym_d, Poly, ALPHABET, SYM_A, SYM_C};
use crate::error::{Error, Result};
use serde::Serialize;

/// A letter as (symbol, ±1).
pub type SLetter = (usize, i8);

pub fn relator(i: usize, f: usize) -> Vec<SLetter> {
    let mut r = vec![(SYM_A, 1); i];
    for k in 1..=6 {
        r.extend(std::iter::repeat((sym_b(k), 1)).take(f));
    }
    for k in 1..=6 {
        r.extend(std::iter::repeat((sym_d(k), -1)).take(f));
    }
    r.push((sym_b(1), -1));
    r.extend(std::iter::repeat((SYM_C, -1)).take(i));
    r
}

/// r_1 … r_n for the given f.
pub fn relators(f: &Poly, n: usize) -> Result<Vec<Vec<SLetter>>> {
    (1..=n as i64)
        .map(|i| {
            let v = f.eval(i)?;
            if v < 1 {
                return Err(Error::PreconditionFailed(format!("f({i}) = {v} < 1")));
            }
            Ok(relator(i as usize, v as usize))
        })
        .collect()
}

/// Parses a relator such as `a^2 b1^5 d1^-5 c^-2`.
pub fn parse_relator(text: &str) -> Result<Vec<SLetter>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| Error::MalformedExponent(tok.into()))?),
            None => (tok, 1),
        };
        let sym = ALPHABET
            .iter()
            .position(|&s| s == name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        if exp == 0 {
            return Err(Error::ZeroExponent(tok.into()));
        }
        let sign = if exp > 0 { 1 } else { -1 };
        out.extend(std::iter::repeat((sym, sign)).take(exp.unsigned_abs() as usize));
    }
    Ok(out)
}

pub fn format_relator(r: &[SLetter]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < r.len() {
        let mut j = i;
        while j < r.len() && r[j] == r[i] {
            j += 1;
        }
        let e = (j - i) as i64 * r[i].1 as i64;
        parts.push(if e == 1 {
            ALPHABET[r[i].0].to_string()
        } else {
            format!("{}^{}", ALPHABET[r[i].0], e)
        });
        i = j;
    }
    parts.join(" ")
}

fn cyclically_reduced(r: &[SLetter]) -> bool {
    !r.is_empty()
        && r.windows(2).all(|w| w[0].0 != w[1].0 || w[0].1 == w[1].1)
        && (r[0].0 != r[r.len() - 1].0 || r[0].1 == r[r.len() - 1].1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub relators: (usize, usize),
    pub length: usize,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceReport {
    pub relators: usize,
    pub lengths: Vec<usize>,
    /// The piece maximising |piece| / min(|r|, |r′|).
    pub worst: Option<Piece>,
    /// That ratio as (numerator, denominator).
    pub ratio: (usize, usize),
    pub below_sixth: bool,
    pub status: &'static str,
}

/// Longest piece relative to the relators containing it, over all pairs of
/// distinct elements of R*.
pub fn small_cancellation_check(rels: &[Vec<SLetter>]) -> Result<PieceReport> {
    for (k, r) in rels.iter().enumerate() {
        if !cyclically_reduced(r) {
            return Err(Error::PreconditionFailed(format!(
                "relator {} is not cyclically reduced",
                k + 1
            )));
        }
    }
    // (word, relator index)
    let mut star: Vec<(Vec<SLetter>, usize)> = Vec::new();
    for (k, r) in rels.iter().enumerate() {
        let inv: Vec<SLetter> = r.iter().rev().map(|&(s, e)| (s, -e)).collect();
        for w in [r, &inv] {
            for s in 0..w.len() {
                let mut c = w[s..].to_vec();
                c.extend_from_slice(&w[..s]);
                star.push((c, k));
            }
        }
    }
    star.sort();
    // equal conjugates of one relator mean it is a proper power
    let mut worst: Option<Piece> = None;
    let mut ratio = (0usize, 1usize);
    for pair in star.windows(2) {
        let ((u, i), (v, j)) = (&pair[0], &pair[1]);
        let lcp = u.iter().zip(v).take_while(|(x, y)| x == y).count();
        if lcp == u.len() && u.len() == v.len() {
            if i != j {
                return Err(Error::DuplicateRelator(*i.min(j) + 1, *i.max(j) + 1));
            }
            // a proper power: the whole relator is a piece
        }
        let den = u.len().min(v.len());
        if lcp * ratio.1 > ratio.0 * den || worst.is_none() {
            ratio = (lcp, den);
            worst = Some(Piece {
                relators: (*i.min(j) + 1, *i.max(j) + 1),
                length: lcp,
                word: format_relator(&u[..lcp]),
            });
        }
    }
    let below_sixth = 6 * ratio.0 < ratio.1;
    Ok(PieceReport {
        relators: rels.len(),
        lengths: rels.iter().map(Vec::len).collect(),
        worst,
        ratio,
        below_sixth,
        status: if below_sixth { "proxy-pass" } else { "fail" },
    })
}

/// Independent check: longest common subword of two cyclic words, by
/// dynamic programming over their doubled forms.
pub fn longest_common_cyclic_subword(u: &[SLetter], v: &[SLetter]) -> usize {
    let uu: Vec<SLetter> = u.iter().chain(u).copied().collect();
    let vv: Vec<SLetter> = v.iter().chain(v).copied().collect();
    let cap = u.len().min(v.len());
    let mut prev = vec![0usize; vv.len() + 1];
    let mut best = 0;
    for a in 0..uu.len() {
        let mut cur = vec![0usize; vv.len() + 1];
        for b in 0..vv.len() {
            if uu[a] == vv[b] {
                cur[b + 1] = (prev[b] + 1).min(cap);
                best = best.max(cur[b + 1]);
            }
        }
        prev = cur;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_shape() {
        let r = relator(2, 5);
        assert_eq!(r.len(), 2 * 2 + 12 * 5 + 1);
        assert_eq!(
            format_relator(&r),
            "a^2 b1^5 b2^5 b3^5 b4^5 b5^5 b6^5 d1^-5 d2^-5 d3^-5 d4^-5 d5^-5 d6^-5 b1^-1 c^-2"
        );
        assert_eq!(parse_relator(&format_relator(&r)).unwrap(), r);
        assert!(parse_relator("e^2").is_err());
    }

    #[test]
    fn square_plus_one_pieces() {
        let f = Poly::parse("poly: 1 0 1").unwrap();
        let rels = relators(&f, 6).unwrap();
        let rep = small_cancellation_check(&rels).unwrap();
        // b1^f b2^f with f = f(5) = 26 also sits in r_6, as do its neighbours
        assert_eq!(rep.ratio, (52, 323));
        assert_eq!(rep.worst.as_ref().unwrap().word, "b1^26 b2^26");
        assert!(rep.below_sixth);
        let brute = (0..rels.len())
            .flat_map(|i| (i + 1..rels.len()).map(move |j| (i, j)))
            .map(|(i, j)| {
                let inv: Vec<SLetter> = rels[j].iter().rev().map(|&(s, e)| (s, -e)).collect();
                let l = longest_common_cyclic_subword(&rels[i], &rels[j])
                    .max(longest_common_cyclic_subword(&rels[i], &inv));
                (l, rels[i].len().min(rels[j].len()))
            })
            .max_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)))
            .unwrap();
        assert_eq!(brute, (52, 323));
    }

    #[test]
    fn duplicates_and_reduction() {
        let r = relator(1, 2);
        assert_eq!(
            small_cancellation_check(&[r.clone(), r]),
            Err(Error::DuplicateRelator(1, 2))
        );
        let bad = parse_relator("a a^-1 c").unwrap();
        assert!(matches!(small_cancellation_check(&[bad]), Err(Error::PreconditionFailed(_))));
    }
}
