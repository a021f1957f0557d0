//! Reduction types, Kodaira symbols and Tamagawa numbers at the good and
//! multiplicative branches of Tate's algorithm.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, reduce};
use crate::curve::WeierstrassCurve;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    Good,
    MultiplicativeSplit,
    MultiplicativeNonsplit,
    AdditiveUnsupported,
}

impl ReductionKind {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, Self::MultiplicativeSplit | Self::MultiplicativeNonsplit)
    }

    /// The trace `a_p` of the L-function's Euler factor for good-or-multiplicative kinds.
    pub fn bad_trace(self) -> Option<i64> {
        match self {
            Self::MultiplicativeSplit => Some(1),
            Self::MultiplicativeNonsplit => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Good => "good",
            Self::MultiplicativeSplit => "split multiplicative",
            Self::MultiplicativeNonsplit => "non-split multiplicative",
            Self::AdditiveUnsupported => "additive (unsupported)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub p: u64,
    pub kind: ReductionKind,
    /// `n` in the Kodaira symbol `I_n`.
    pub kodaira: u32,
    pub tamagawa: u32,
}

impl LocalData {
    pub fn kodaira_symbol(&self) -> String {
        format!("I{}", self.kodaira)
    }
}

/// Split test for a multiplicative prime: are the tangent directions at the
/// node rational? Brute force over F_p, so valid for every `p` including 2.
pub fn node_tangents_rational(c: &WeierstrassCurve, p: u64) -> Result<bool> {
    let [a1, a2, a3, a4, a6] = c.coeffs().clone().map(|a| reduce(&a, p));
    let pp = p as u128;
    let m = |v: u128| (v % pp) as u64;
    // F = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6
    let node = (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).find(|&(x, y)| {
        let (x, y) = (x as u128, y as u128);
        let (a1, a2, a3, a4, a6) = (a1 as u128, a2 as u128, a3 as u128, a4 as u128, a6 as u128);
        let f = m(y * y + a1 * x % pp * y + a3 * y + 3 * pp * pp * pp - x * x % pp * x - a2 * x % pp * x - a4 * x - a6);
        let fx = m(a1 * y + 3 * pp * pp - 3 * x * x % pp - 2 * a2 * x - a4);
        let fy = m(2 * y + a1 * x + a3);
        f == 0 && fx == 0 && fy == 0
    });
    let Some((x0, _)) = node else {
        return domain(format!("no singular point mod {p}"));
    };
    // tangent cone: Y^2 + a1 XY - (3 x0 + a2) X^2
    let k = m(3 * x0 as u128 + a2 as u128);
    Ok((0..p).any(|t| m(t as u128 * t as u128 + a1 as u128 * t as u128 + pp - k as u128) == 0))
}

pub fn reduction_type(c: &WeierstrassCurve, p: u64) -> Result<ReductionKind> {
    if !arith::is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let inv = c.invariants();
    let bp = BigInt::from(p);
    if !(&inv.disc % &bp).is_zero() {
        return Ok(ReductionKind::Good);
    }
    if !c.minimality_certified(p) {
        return domain(format!("model is not certified minimal at {p}"));
    }
    if (&inv.c4 % &bp).is_zero() {
        return Err(Error::UnsupportedReduction(p));
    }
    let split = if p == 2 {
        node_tangents_rational(c, p)?
    } else {
        arith::legendre_symbol(&-&inv.c6, p)? == 1
    };
    Ok(if split {
        ReductionKind::MultiplicativeSplit
    } else {
        ReductionKind::MultiplicativeNonsplit
    })
}

pub fn kodaira_and_tamagawa(c: &WeierstrassCurve, p: u64) -> Result<LocalData> {
    let kind = reduction_type(c, p)?;
    let (kodaira, tamagawa) = match kind {
        ReductionKind::Good => (0, 1),
        ReductionKind::MultiplicativeSplit | ReductionKind::MultiplicativeNonsplit => {
            let n = arith::valuation(&c.discriminant(), p)?;
            let t = if kind == ReductionKind::MultiplicativeSplit {
                n
            } else if n % 2 == 0 {
                2
            } else {
                1
            };
            (n, t)
        }
        ReductionKind::AdditiveUnsupported => return Err(Error::UnsupportedReduction(p)),
    };
    Ok(LocalData {
        p,
        kind,
        kodaira,
        tamagawa,
    })
}

/// Primes dividing the discriminant, ascending.
pub fn bad_primes(c: &WeierstrassCurve) -> Vec<u64> {
    arith::factor(&c.discriminant()).into_iter().map(|(p, _)| p).collect()
}

pub fn local_data_at_bad_primes(c: &WeierstrassCurve) -> Result<Vec<LocalData>> {
    bad_primes(c).into_iter().map(|p| kodaira_and_tamagawa(c, p)).collect()
}

pub fn tamagawa_product(c: &WeierstrassCurve) -> Result<BigInt> {
    Ok(local_data_at_bad_primes(c)?
        .iter()
        .map(|d| BigInt::from(d.tamagawa))
        .product())
}

/// Conductor of a semistable curve: the product of its bad primes.
pub fn conductor_semistable(c: &WeierstrassCurve) -> Result<BigInt> {
    let data = local_data_at_bad_primes(c)?;
    Ok(data.iter().fold(BigInt::one(), |acc, d| acc * BigInt::from(d.p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_projective_solutions;
    use proptest::prelude::*;

    #[test]
    fn e1_reduction_types() {
        let e1 = WeierstrassCurve::e1();
        assert_eq!(reduction_type(&e1, 3).unwrap(), ReductionKind::MultiplicativeNonsplit);
        assert_eq!(reduction_type(&e1, 5).unwrap(), ReductionKind::MultiplicativeSplit);
        assert_eq!(reduction_type(&e1, 7).unwrap(), ReductionKind::Good);
        assert_eq!(reduction_type(&e1, 2).unwrap(), ReductionKind::Good);
    }

    #[test]
    fn e1_local_data() {
        let e1 = WeierstrassCurve::e1();
        let d3 = kodaira_and_tamagawa(&e1, 3).unwrap();
        assert_eq!((d3.kodaira_symbol().as_str(), d3.tamagawa), ("I4", 2));
        let d5 = kodaira_and_tamagawa(&e1, 5).unwrap();
        assert_eq!((d5.kodaira_symbol().as_str(), d5.tamagawa), ("I4", 4));
        let d7 = kodaira_and_tamagawa(&e1, 7).unwrap();
        assert_eq!((d7.kodaira, d7.tamagawa), (0, 1));
        assert_eq!(tamagawa_product(&e1).unwrap(), BigInt::from(8));
        assert_eq!(conductor_semistable(&e1).unwrap(), BigInt::from(15));
    }

    #[test]
    fn e2_local_data() {
        let e2 = WeierstrassCurve::e2();
        assert_eq!(conductor_semistable(&e2).unwrap(), BigInt::from(15));
        let t = tamagawa_product(&e2).unwrap();
        let t: u64 = t.try_into().unwrap();
        assert!(t.is_power_of_two());
        assert_eq!(reduction_type(&e2, 3).unwrap(), ReductionKind::MultiplicativeNonsplit);
        assert_eq!(reduction_type(&e2, 5).unwrap(), ReductionKind::MultiplicativeSplit);
    }

    #[test]
    fn additive_is_unsupported() {
        let c: WeierstrassCurve = "0,0,0,0,1".parse().unwrap();
        assert_eq!(reduction_type(&c, 3).unwrap_err(), Error::UnsupportedReduction(3));
        assert_eq!(reduction_type(&c, 2).unwrap_err(), Error::UnsupportedReduction(2));
        assert!(tamagawa_product(&c).is_err());
        assert!(conductor_semistable(&c).is_err());
    }

    #[test]
    fn multiplicative_at_two() {
        // y^2 + xy + y = x^3 + 4x - 6 (conductor 14): I6 non-split at 2, I3 split at 7
        let c: WeierstrassCurve = "1,0,1,4,-6".parse().unwrap();
        assert_eq!(reduction_type(&c, 2).unwrap(), ReductionKind::MultiplicativeNonsplit);
        assert_eq!(kodaira_and_tamagawa(&c, 2).unwrap().tamagawa, 2);
        assert_eq!(reduction_type(&c, 7).unwrap(), ReductionKind::MultiplicativeSplit);
        assert_eq!(conductor_semistable(&c).unwrap(), BigInt::from(14));
        let c: WeierstrassCurve = "0,-1,1,-10,-20".parse().unwrap();
        assert_eq!(reduction_type(&c, 11).unwrap(), ReductionKind::MultiplicativeSplit);
    }

    #[test]
    fn trace_at_bad_primes_matches_counts() {
        for c in [
            WeierstrassCurve::e1(),
            WeierstrassCurve::e2(),
            "1,0,1,4,-6".parse().unwrap(),
        ] {
            for d in local_data_at_bad_primes(&c).unwrap() {
                let ap = d.p as i64 + 1 - count_projective_solutions(&c, d.p) as i64;
                assert_eq!(Some(ap), d.kind.bad_trace(), "{c} at {}", d.p);
            }
        }
    }

    proptest! {
        #[test]
        fn split_test_agrees_with_node_tangents(a in proptest::array::uniform5(-30i64..30), d in 1i64..12) {
            // quadratic twist of a random model by d: [0, a2*d + ..] via short form
            if let Ok(base) = WeierstrassCurve::from_ints(a) {
                let inv = base.invariants();
                let c4 = &inv.c4 * BigInt::from(d * d);
                let c6 = &inv.c6 * BigInt::from(d * d * d);
                let twisted = WeierstrassCurve::new([
                    BigInt::zero(), BigInt::zero(), BigInt::zero(),
                    BigInt::from(-27) * c4, BigInt::from(-54) * c6,
                ]);
                for c in [Some(base), twisted.ok()].into_iter().flatten() {
                    let inv = c.invariants();
                    for p in arith::primes_up_to(50).into_iter().skip(1) {
                        let bp = BigInt::from(p);
                        if (&inv.disc % &bp).is_zero() && !(&inv.c4 % &bp).is_zero() && c.minimality_certified(p) {
                            let kind = reduction_type(&c, p).unwrap();
                            let brute = node_tangents_rational(&c, p).unwrap();
                            prop_assert_eq!(kind == ReductionKind::MultiplicativeSplit, brute);
                        }
                    }
                }
            }
        }
    }
}
