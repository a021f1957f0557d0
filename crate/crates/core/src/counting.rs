//! Point counts over F_p, Frobenius traces and the ordinary-prime sweep.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, primes_up_to, reduce};
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusRecord {
    pub p: u64,
    pub count: u64,
    pub trace: i64,
    pub ordinary: bool,
}

impl FrobeniusRecord {
    fn new(p: u64, count: u64) -> Self {
        let trace = p as i64 + 1 - count as i64;
        assert!(
            (trace as i128).pow(2) <= 4 * p as i128,
            "Hasse bound violated at p = {p}: a_p = {trace}"
        );
        Self {
            p,
            count,
            trace,
            ordinary: trace.rem_euclid(p as i64) != 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrobeniusClass {
    Ordinary,
    Supersingular,
}

/// Number of projective solutions of the model over F_p, including any
/// singular point. Valid at every prime; at good primes it is `#E(F_p)`.
pub fn count_projective_solutions(c: &WeierstrassCurve, p: u64) -> u64 {
    if p == 2 {
        let [a1, a2, a3, a4, a6] = c.coeffs().clone().map(|a| reduce(&a, 2));
        let mut n = 1;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (lhs + rhs) % 2 == 0 {
                    n += 1;
                }
            }
        }
        return n;
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, and y <-> 2y + a1 x + a3
    // is a bijection for odd p, so count square roots of the right side.
    let inv = c.invariants();
    let b2 = reduce(&inv.b2, p);
    let b4x2 = reduce(&(BigInt::from(2) * &inv.b4), p);
    let b6 = reduce(&inv.b6, p);
    let mut is_square = vec![false; p as usize];
    for x in 0..p {
        is_square[(x * x % p) as usize] = true;
    }
    let mut n = 1u64;
    for x in 0..p {
        let f = (((4 * x + b2) % p * x + b4x2) % p * x + b6) % p;
        n += if f == 0 {
            1
        } else if is_square[f as usize] {
            2
        } else {
            0
        };
    }
    n
}

/// `#E(F_p)` at a prime of good reduction.
pub fn count_points(c: &WeierstrassCurve, p: u64) -> Result<u64> {
    if !arith::is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if (c.discriminant() % BigInt::from(p)).is_zero() {
        return Err(Error::BadReduction(p));
    }
    Ok(count_projective_solutions(c, p))
}

/// `a_p = p + 1 - #E(F_p)`.
pub fn trace_ap(c: &WeierstrassCurve, p: u64) -> Result<i64> {
    Ok(frobenius_record(c, p)?.trace)
}

pub fn frobenius_record(c: &WeierstrassCurve, p: u64) -> Result<FrobeniusRecord> {
    Ok(FrobeniusRecord::new(p, count_points(c, p)?))
}

pub fn classify_ordinary(c: &WeierstrassCurve, p: u64) -> Result<FrobeniusClass> {
    Ok(if frobenius_record(c, p)?.ordinary {
        FrobeniusClass::Ordinary
    } else {
        FrobeniusClass::Supersingular
    })
}

/// Frobenius records for all good primes up to `bound`, ascending.
pub fn good_traces(c: &WeierstrassCurve, bound: u64) -> Vec<FrobeniusRecord> {
    let disc = c.discriminant();
    primes_up_to(bound)
        .into_par_iter()
        .filter(|&p| !(&disc % BigInt::from(p)).is_zero())
        .map(|p| FrobeniusRecord::new(p, count_projective_solutions(c, p)))
        .collect()
}

/// Whether `t * p > p + 1 + 2 sqrt(p)` holds for every real `p >= 2`.
///
/// The difference `(t - 1) p - 1 - 2 sqrt(p)` has derivative
/// `t - 1 - 1/sqrt(p) > 0` on `p >= 2` whenever `t >= 2`, so it suffices to
/// check `p = 2`, i.e. `2t - 3 > 2 sqrt(2)`, i.e. `2t - 3 > 0` and
/// `(2t - 3)^2 > 8`.
pub fn hasse_contradiction_holds(torsion_order: u64) -> bool {
    if torsion_order < 2 {
        return false;
    }
    let k = 2 * torsion_order as i128 - 3;
    k > 0 && k * k > 8
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionRow {
    pub record: FrobeniusRecord,
    pub torsion_divides_count: bool,
    pub ap_not_one_mod_p: bool,
}

impl CriterionRow {
    pub fn passes(&self) -> bool {
        self.torsion_divides_count && self.ap_not_one_mod_p
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinaryCriterion {
    pub torsion_order: u64,
    pub bound: u64,
    pub rows: Vec<CriterionRow>,
    pub hasse_contradiction: bool,
}

impl OrdinaryCriterion {
    pub fn failures(&self) -> impl Iterator<Item = &CriterionRow> {
        self.rows.iter().filter(|r| !r.passes())
    }

    pub fn all_pass(&self) -> bool {
        self.hasse_contradiction && self.failures().next().is_none()
    }

    pub fn supersingular_primes(&self) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| !r.record.ordinary)
            .map(|r| r.record.p)
            .collect()
    }
}

/// For every good odd prime `p <= bound`: `torsion_order | #E(F_p)` and
/// `a_p != 1 (mod p)`.
pub fn verify_ordinary_criterion(c: &WeierstrassCurve, torsion_order: u64, bound: u64) -> OrdinaryCriterion {
    let rows = good_traces(c, bound)
        .into_iter()
        .filter(|r| r.p != 2)
        .map(|record| CriterionRow {
            torsion_divides_count: record.count % torsion_order == 0,
            ap_not_one_mod_p: (record.trace - 1).rem_euclid(record.p as i64) != 0,
            record,
        })
        .collect();
    OrdinaryCriterion {
        torsion_order,
        bound,
        rows,
        hasse_contradiction: hasse_contradiction_holds(torsion_order),
    }
}
