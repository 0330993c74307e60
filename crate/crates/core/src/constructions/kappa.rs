//! Sublinear gauges ρ and the constants κ(ρ, K, C), κ′(ρ, K, C) of the
//! fellow-travelling neighbourhoods.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// Bisection stops once the bracket is shorter than 2^-32.
const BISECTION_BITS: u32 = 32;

/// ρ(r) = c, a·r^α with 0 ≤ α < 1, or a·log(1 + r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SublinearFn {
    Constant(BigRational),
    Power { a: BigRational, alpha: BigRational },
    Log { a: BigRational },
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl SublinearFn {
    pub fn zero() -> Self {
        SublinearFn::Constant(BigRational::zero())
    }

    pub fn power(a: BigRational, alpha: BigRational) -> Result<Self> {
        if alpha.is_negative() || alpha >= BigRational::one() {
            return Err(Error::Config(format!("exponent {alpha} not in [0, 1)")));
        }
        if a.is_negative() {
            return Err(Error::Config("negative coefficient".into()));
        }
        Ok(SublinearFn::Power { a, alpha })
    }

    pub fn log(a: BigRational) -> Result<Self> {
        if a.is_negative() {
            return Err(Error::Config("negative coefficient".into()));
        }
        Ok(SublinearFn::Log { a })
    }

    /// Parses `const:C`, `power:A:ALPHA` or `log:A`, rationals written
    /// `p` or `p/q`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let num = |s: &str| -> Result<BigRational> {
            s.parse::<BigRational>()
                .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
        };
        match parts.as_slice() {
            ["const", c] => Ok(SublinearFn::Constant(num(c)?)),
            ["power", a, alpha] => SublinearFn::power(num(a)?, num(alpha)?),
            ["log", a] => SublinearFn::log(num(a)?),
            _ => Err(Error::Parse(format!("bad gauge `{text}`"))),
        }
    }

    /// ρ(r), approximately for the logarithm.
    pub fn eval_f64(&self, r: f64) -> f64 {
        match self {
            SublinearFn::Constant(c) => to_f64(c),
            SublinearFn::Power { a, alpha } => to_f64(a) * r.powf(to_f64(alpha)),
            SublinearFn::Log { a } => to_f64(a) * (1.0 + r).ln(),
        }
    }

    /// value ≤ ρ(r), exactly except for the logarithm.
    pub fn bounds(&self, value: u64, r: u64) -> bool {
        let v = integer(value as i64);
        match self {
            SublinearFn::Constant(c) => v <= *c,
            SublinearFn::Power { a, alpha } => {
                // v ≤ a·r^(p/q)  ⟺  v^q ≤ a^q·r^p
                let p = alpha.numer().to_usize().expect("small exponent numerator");
                let q = alpha.denom().to_usize().expect("small exponent denominator");
                num_traits::pow::pow(v, q)
                    <= num_traits::pow::pow(a.clone(), q) * num_traits::pow::pow(integer(r as i64), p)
            }
            SublinearFn::Log { .. } => value as f64 <= self.eval_f64(r as f64),
        }
    }

    /// Exact evaluation where ρ(r) is rational; the logarithm goes through f64.
    pub fn eval(&self, r: &BigRational) -> BigRational {
        match self {
            SublinearFn::Constant(c) => c.clone(),
            _ => BigRational::from_float(self.eval_f64(to_f64(r))).unwrap_or_else(BigRational::zero),
        }
    }
}

impl fmt::Display for SublinearFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SublinearFn::Constant(c) => write!(f, "const:{c}"),
            SublinearFn::Power { a, alpha } => write!(f, "power:{a}:{alpha}"),
            SublinearFn::Log { a } => write!(f, "log:{a}"),
        }
    }
}

impl Serialize for SublinearFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Whether ρ(r) ≤ s·r holds exactly for a power gauge: with α = p/q and
/// r > 0 this is (a/s)^q ≤ r^(q−p).
fn power_holds(a: &BigRational, alpha: &BigRational, s: &BigRational, r: &BigRational) -> bool {
    if r.is_zero() {
        return a.is_zero();
    }
    let p = alpha.numer().to_i32().expect("small exponent numerator");
    let q = alpha.denom().to_i32().expect("small exponent denominator");
    num_traits::pow::pow(a / s, q as usize) <= num_traits::pow::pow(r.clone(), (q - p) as usize)
}

/// Exact k-th root of a nonnegative rational, when it is one.
fn exact_root(x: &BigRational, k: u32) -> Option<BigRational> {
    let n = x.numer().nth_root(k);
    let d = x.denom().nth_root(k);
    (num_traits::pow::pow(n.clone(), k as usize) == *x.numer()
        && num_traits::pow::pow(d.clone(), k as usize) == *x.denom())
    .then(|| BigRational::new(n, d))
}

/// inf{R ≥ 0 : ρ(r) ≤ s·r for all r ≥ R}, exact or a certified upper bound.
pub fn crossover(rho: &SublinearFn, s: &BigRational) -> BigRational {
    match rho {
        SublinearFn::Constant(c) => {
            if c.is_positive() {
                c / s
            } else {
                BigRational::zero()
            }
        }
        SublinearFn::Power { a, alpha } => {
            if a.is_zero() {
                return BigRational::zero();
            }
            // r ≥ (a/s)^(q/(q−p))
            let p = alpha.numer().to_u32().expect("small exponent numerator");
            let q = alpha.denom().to_u32().expect("small exponent denominator");
            let base = num_traits::pow::pow(a / s, q as usize);
            if let Some(root) = exact_root(&base, q - p) {
                return root;
            }
            let mut lo = BigRational::zero();
            let mut hi = BigRational::one();
            while !power_holds(a, alpha, s, &hi) {
                lo = hi.clone();
                hi = &hi * integer(2);
            }
            let eps = BigRational::new(BigInt::one(), BigInt::one() << BISECTION_BITS);
            while &hi - &lo > eps {
                let mid = (&lo + &hi) / integer(2);
                if power_holds(a, alpha, s, &mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        }
        SublinearFn::Log { a } => {
            // a·log(1+r) ≤ a·r, so a ≤ s settles it at 0; otherwise the
            // concave curve meets the line once more, found in floating point.
            if a <= s {
                return BigRational::zero();
            }
            let (af, sf) = (to_f64(a), to_f64(s));
            let g = |r: f64| af * (1.0 + r).ln() - sf * r;
            let mut lo = 0.0f64;
            let mut hi = 1.0f64;
            while g(hi) > 0.0 {
                lo = hi;
                hi *= 2.0;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if g(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let bound = hi + 2f64.powi(-(BISECTION_BITS as i32));
            BigRational::from_float(bound).expect("finite bound")
        }
    }
}

fn check(k: &BigRational, c: &BigRational) -> Result<()> {
    if *k < BigRational::one() {
        return Err(Error::Config(format!("K = {k} < 1")));
    }
    if c.is_negative() {
        return Err(Error::Config(format!("C = {c} < 0")));
    }
    Ok(())
}

/// κ(ρ, K, C) = max(3K², 3C, 1 + inf{R : ρ(r) ≤ 3K²r for all r ≥ R}).
pub fn kappa(rho: &SublinearFn, k: &BigRational, c: &BigRational) -> Result<BigRational> {
    check(k, c)?;
    let three_k2 = integer(3) * k * k;
    let tail = BigRational::one() + crossover(rho, &three_k2);
    let three_c = integer(3) * c;
    Ok(three_k2.max(three_c).max(tail))
}

/// κ′(ρ, K, C) = (K² + 2)(2κ + C).
pub fn kappa_prime(rho: &SublinearFn, k: &BigRational, c: &BigRational) -> Result<BigRational> {
    let kap = kappa(rho, k, c)?;
    Ok((k * k + integer(2)) * (integer(2) * kap + c))
}
