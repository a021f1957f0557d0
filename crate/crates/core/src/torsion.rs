//! Rational torsion via Nagell-Lutz on the completed-square model.
//!
//! With `u = 4x` and `w = 4(2y + a1 x + a3)` the curve becomes
//! `w^2 = u^3 + b2 u^2 + 8 b4 u + 16 b6`, a monic integral cubic model on
//! which every torsion point has integral coordinates and `w = 0` or
//! `w^2 | disc`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, rat_from_int, Rational};
use crate::counting;
use crate::curve::{integer_roots, Point, WeierstrassCurve};
use crate::error::{domain, Result};

/// Cap on point orders; Mazur's theorem bounds rational torsion orders by 12.
pub const ORDER_CAP: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointOrder {
    Finite(u32),
    ExceedsBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionGroup {
    pub order: u64,
    /// `(d1, d2)` with `d1 | d2`, meaning `Z/d1 + Z/d2`.
    pub structure: (u32, u32),
    pub generators: Vec<Point<Rational>>,
    /// Every torsion point, sorted.
    pub points: Vec<Point<Rational>>,
    pub two_torsion: Vec<Point<Rational>>,
    /// gcd of `#E(F_p)` over the primes used to bound the search.
    pub bound: u64,
}

pub fn point_order(c: &WeierstrassCurve, p: &Point<Rational>) -> Result<PointOrder> {
    let m = c.model();
    if !m.is_on_curve(p) {
        return domain(format!("point {p} is not on the curve"));
    }
    let mut acc = p.clone();
    for n in 1..=ORDER_CAP {
        if acc.is_infinity() {
            return Ok(PointOrder::Finite(n));
        }
        acc = m.add(&acc, p)?;
    }
    Ok(PointOrder::ExceedsBound)
}

/// gcd of `#E(F_p)` over the first `count` good odd primes.
pub fn torsion_bound(c: &WeierstrassCurve, count: usize) -> u64 {
    let disc = c.discriminant();
    arith::primes_up_to(10_000)
        .into_iter()
        .filter(|&p| p > 2 && !(&disc % BigInt::from(p)).is_zero())
        .take(count)
        .map(|p| counting::count_projective_solutions(c, p))
        .fold(0, |g, n| g.gcd(&n))
}

fn cubic_disc(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    // x^3 + a x^2 + b x + c
    a * a * b * b - BigInt::from(4) * b * b * b - BigInt::from(4) * a * a * a * c - BigInt::from(27) * c * c
        + BigInt::from(18) * a * b * c
}

/// Candidate torsion points from the Nagell-Lutz screen, on the long model.
fn nagell_lutz_candidates(c: &WeierstrassCurve) -> Vec<Point<Rational>> {
    let inv = c.invariants();
    let a = inv.b2.clone();
    let b = BigInt::from(8) * &inv.b4;
    let c0 = BigInt::from(16) * &inv.b6;
    let disc = cubic_disc(&a, &b, &c0);
    let mut ws = vec![BigInt::zero()];
    for d in arith::divisors(&disc) {
        if (&disc % (&d * &d)).is_zero() {
            ws.push(d.clone());
            ws.push(-d);
        }
    }
    let [a1, _, a3, _, _] = c.coeffs().clone().map(|x| rat_from_int(&x));
    let four = arith::rat(4, 1);
    let mut out = Vec::new();
    for w in ws {
        let shifted = [&c0 - &w * &w, b.clone(), a.clone(), BigInt::one()];
        for u in integer_roots(&shifted) {
            let x = BigRational::new(u, BigInt::from(4));
            let eta = rat_from_int(&w) / &four;
            let y = (eta - &a1 * &x - &a3) / arith::rat(2, 1);
            out.push(Point::Affine(x, y));
        }
    }
    out
}

pub fn torsion_subgroup(c: &WeierstrassCurve) -> TorsionGroup {
    let m = c.model();
    let bound = torsion_bound(c, 8);
    let mut points: BTreeSet<Point<Rational>> = BTreeSet::from([Point::Infinity]);
    for cand in nagell_lutz_candidates(c) {
        debug_assert!(m.is_on_curve(&cand));
        if let Ok(PointOrder::Finite(n)) = point_order(c, &cand) {
            if bound % n as u64 == 0 {
                points.insert(cand);
            }
        }
    }
    // close under the group law
    loop {
        let current: Vec<_> = points.iter().cloned().collect();
        let mut grew = false;
        for p in &current {
            for q in &current {
                if points.insert(m.add(p, q).expect("torsion points lie on the curve")) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let points: Vec<_> = points.into_iter().collect();
    let order_of = |p: &Point<Rational>| match point_order(c, p) {
        Ok(PointOrder::Finite(n)) => n,
        _ => unreachable!("torsion points have finite order"),
    };
    let orders: Vec<u32> = points.iter().map(order_of).collect();
    let n = points.len() as u32;
    let d2 = *orders.iter().max().unwrap_or(&1);
    let d1 = n / d2;
    let idx = orders.iter().position(|&o| o == d2).unwrap();
    let big = points[idx].clone();
    let mut generators = vec![big.clone()];
    if d1 > 1 {
        let cyclic: BTreeSet<_> = (0..d2 as i64).map(|k| m.multiply(&big, k).unwrap()).collect();
        let second = points
            .iter()
            .zip(&orders)
            .find(|(p, &o)| o == d1 && (1..d1 as i64).all(|k| !cyclic.contains(&m.multiply(p, k).unwrap())));
        generators.push(second.expect("complement generator exists").0.clone());
    }
    let two_torsion = points
        .iter()
        .zip(&orders)
        .filter(|(_, &o)| o == 2)
        .map(|(p, _)| p.clone())
        .collect();
    TorsionGroup {
        order: n as u64,
        structure: (d1, d2),
        generators,
        points,
        two_torsion,
        bound,
    }
}

/// Structures allowed by Mazur's theorem.
pub fn mazur_admissible(structure: (u32, u32)) -> bool {
    match structure {
        (1, n) => (1..=10).contains(&n) || n == 12,
        (2, n) => [2, 4, 6, 8].contains(&n),
        _ => false,
    }
}

pub fn describe_structure(structure: (u32, u32)) -> String {
    match structure {
        (1, 1) => "trivial".into(),
        (1, n) => format!("Z/{n}"),
        (a, b) => format!("Z/{a} + Z/{b}"),
    }
}

impl TorsionGroup {
    pub fn x_coordinates_of_two_torsion(&self) -> Vec<String> {
        self.two_torsion
            .iter()
            .filter_map(|p| match p {
                Point::Affine(x, _) => Some(x.to_string()),
                Point::Infinity => None,
            })
            .collect()
    }
}
