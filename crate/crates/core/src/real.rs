//! Fixed-point real balls: `(mid ± rad) · 2^-prec` with integer `mid`, `rad`.
//!
//! Every operation returns a ball containing the exact result for every
//! choice of inputs inside the argument balls. Truncations are absorbed into
//! `rad`, so the arithmetic is reproducible bit-for-bit across platforms.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealApprox {
    mid: BigInt,
    rad: BigInt,
    prec: u32,
}

fn shr_floor(x: &BigInt, d: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << d))
}

fn shr_ceil(x: &BigInt, d: u32) -> BigInt {
    -shr_floor(&-x, d)
}

fn div_ceil_pos(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

impl RealApprox {
    pub fn from_parts(mid: BigInt, rad: BigInt, prec: u32) -> Self {
        assert!(!rad.is_negative());
        Self { mid, rad, prec }
    }

    pub fn exact_int(n: i64, prec: u32) -> Self {
        Self {
            mid: BigInt::from(n) << prec,
            rad: BigInt::zero(),
            prec,
        }
    }

    pub fn from_integer(n: &BigInt, prec: u32) -> Self {
        Self {
            mid: n << prec,
            rad: BigInt::zero(),
            prec,
        }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (mid, rem) = (q.numer() << prec).div_mod_floor(q.denom());
        let exact = rem.is_zero();
        Self {
            mid,
            rad: if exact { BigInt::zero() } else { BigInt::one() },
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad(&self) -> &BigInt {
        &self.rad
    }

    /// Lower end of the enclosure, exactly.
    pub fn lo(&self) -> Rational {
        Rational::new(&self.mid - &self.rad, BigInt::one() << self.prec)
    }

    pub fn hi(&self) -> Rational {
        Rational::new(&self.mid + &self.rad, BigInt::one() << self.prec)
    }

    /// The radius as an exact rational: the error bound of this approximation.
    pub fn error_bound(&self) -> Rational {
        Rational::new(self.rad.clone(), BigInt::one() << self.prec)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo() <= q && q <= &self.hi()
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.lo() <= o.hi() && o.lo() <= self.hi()
    }

    pub fn is_positive(&self) -> bool {
        self.mid > self.rad
    }

    pub fn is_negative(&self) -> bool {
        -&self.mid > self.rad
    }

    pub fn to_f64(&self) -> f64 {
        scaled_to_f64(&self.mid, self.prec)
    }

    pub fn error_f64(&self) -> f64 {
        scaled_to_f64(&self.rad, self.prec)
    }

    /// Change working precision; decreasing it rounds outward.
    pub fn with_prec(&self, prec: u32) -> Self {
        if prec >= self.prec {
            let d = prec - self.prec;
            Self {
                mid: &self.mid << d,
                rad: &self.rad << d,
                prec,
            }
        } else {
            let d = self.prec - prec;
            Self {
                mid: shr_floor(&self.mid, d),
                rad: shr_ceil(&self.rad, d) + 1,
                prec,
            }
        }
    }

    /// Smallest ball at this precision containing both.
    pub fn hull(&self, o: &Self) -> Self {
        let o = o.with_prec(self.prec);
        let lo = (&self.mid - &self.rad).min(&o.mid - &o.rad);
        let hi = (&self.mid + &self.rad).max(&o.mid + &o.rad);
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        let rad = (&hi - &mid).max(&mid - &lo);
        Self {
            mid,
            rad,
            prec: self.prec,
        }
    }

    fn align(&self, o: &Self) -> (Self, Self) {
        let p = self.prec.max(o.prec);
        (self.with_prec(p), o.with_prec(p))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        Self {
            mid: a.mid + b.mid,
            rad: a.rad + b.rad,
            prec: a.prec,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        let p = a.prec;
        let prod = &a.mid * &b.mid;
        let err = a.mid.abs() * &b.rad + b.mid.abs() * &a.rad + &a.rad * &b.rad;
        Self {
            mid: shr_floor(&prod, p),
            rad: shr_ceil(&err, p) + 1,
            prec: p,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self {
            mid: &self.mid * k,
            rad: &self.rad * k.unsigned_abs(),
            prec: self.prec,
        }
    }

    /// Exact division by `2^k`, rounded outward.
    pub fn shr(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self {
            mid: shr_floor(&self.mid, k),
            rad: shr_ceil(&self.rad, k) + 1,
            prec: self.prec,
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.align(o);
        let p = a.prec;
        let denom = b.mid.abs() - &b.rad;
        if !denom.is_positive() {
            return domain("division by a ball containing zero");
        }
        let q = (&a.mid << p).div_floor(&b.mid);
        let num = (&a.rad << p) + (q.abs() + 1u32) * &b.rad;
        Ok(Self {
            mid: q,
            rad: div_ceil_pos(&num, &denom) + 1,
            prec: p,
        })
    }

    pub fn div_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return domain("division by zero");
        }
        let k = BigInt::from(k);
        Ok(Self {
            mid: self.mid.div_floor(&k),
            rad: div_ceil_pos(&self.rad, &k.abs()) + 1,
            prec: self.prec,
        })
    }

    pub fn sqrt(&self) -> Result<Self> {
        let p = self.prec;
        let lo = &self.mid - &self.rad;
        if !lo.is_positive() {
            return domain("square root of a ball not strictly positive");
        }
        let mid = (&self.mid << p).sqrt();
        let lo_root = (&lo << p).sqrt();
        if lo_root.is_zero() {
            return domain("square root argument below working precision");
        }
        // |sqrt((m+e) S) - sqrt(m S)| <= r S / (2 sqrt((m-r) S))
        let err = div_ceil_pos(&(&self.rad << p), &(lo_root * 2u32));
        Ok(Self {
            mid,
            rad: err + 1,
            prec: p,
        })
    }

    /// `exp(x)` by halving, Taylor series and repeated squaring at guard
    /// precision.
    pub fn exp(&self) -> Self {
        let p = self.prec;
        let mag = (self.mid.abs() + &self.rad).bits() as i64 - p as i64;
        let s = (mag + 10).max(0) as u32;
        let w = p + s + 40;
        let r = self.with_prec(w).shr(s);
        // |r| < 2^-9 so terms shrink by 2^-9 each
        let terms = w / 9 + 2;
        let mut sum = Self::exact_int(1, w);
        let mut term = Self::exact_int(1, w);
        for k in 1..=terms {
            term = term.mul(&r).div_int(k as i64).expect("nonzero");
            sum = sum.add(&term);
        }
        // remainder <= 2 |r|^(K+1) / (K+1)! < 2^-w
        sum.rad += 1;
        for _ in 0..s {
            sum = sum.mul(&sum);
        }
        sum.with_prec(p)
    }

    /// `pi` by Machin's formula.
    pub fn pi(prec: u32) -> Self {
        let w = prec + 20;
        let (a5, e5) = atan_inv(5, w);
        let (a239, e239) = atan_inv(239, w);
        let mid = a5 * 16 - a239 * 4;
        let rad = BigInt::from(16 * e5 + 4 * e239);
        Self { mid, rad, prec: w }.with_prec(prec)
    }

    /// Decimal string with `digits` fractional digits (rounded toward -inf).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let v = (&self.mid * &scale).div_floor(&(BigInt::one() << self.prec));
        let neg = v.sign() == Sign::Minus;
        let a = v.abs().to_string();
        let a = format!("{a:0>width$}", width = digits + 1);
        let (int, frac) = a.split_at(a.len() - digits);
        format!("{}{int}.{frac}", if neg { "-" } else { "" })
    }
}

fn scaled_to_f64(x: &BigInt, prec: u32) -> f64 {
    let shift = (x.bits() as u32).saturating_sub(60);
    let top = shr_floor(x, shift).to_f64().unwrap_or(f64::NAN);
    top * 2f64.powi(shift as i32 - prec as i32)
}

/// `atan(1/k) · 2^w` and its absolute error in units.
fn atan_inv(k: u64, w: u32) -> (BigInt, u64) {
    let k2 = BigInt::from(k * k);
    let mut power = (BigInt::one() << w) / k;
    let mut sum = BigInt::zero();
    let mut n = 0u64;
    let mut err = 0u64;
    while !power.is_zero() {
        let t = &power / (2 * n + 1);
        if n % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &k2;
        n += 1;
        err += 2;
    }
    (sum, err + 1)
}

/// Arithmetic-geometric mean of two positive balls, with an enclosure valid
/// for every pair of inputs in the balls: `b_n <= agm <= a_n` at every step.
/// Returns the value and the number of iterations.
pub fn agm(a: &RealApprox, b: &RealApprox) -> Result<(RealApprox, u32)> {
    if !a.is_positive() || !b.is_positive() {
        return domain("agm needs positive arguments");
    }
    let (mut a, mut b) = a.align(b);
    let p = a.prec;
    let mut iters = 0;
    loop {
        let gap = (&a.mid - &b.mid).abs();
        if gap <= BigInt::from(4) || iters > 2 * p + 64 {
            break;
        }
        let a2 = a.add(&b).shr(1);
        let b2 = a.mul(&b).sqrt()?;
        a = a2;
        b = b2;
        iters += 1;
    }
    Ok((a.hull(&b), iters))
}

/// Enclosures of the real roots of the integer cubic
/// `c3 x^3 + c2 x^2 + c1 x + c0` (squarefree), ascending. Roots are bracketed
/// by the Cauchy bound and dyadic points near the critical points, then
/// refined by exact dyadic bisection.
pub fn cubic_real_roots(coeffs: [&BigInt; 4], expected: usize, prec: u32) -> Result<Vec<RealApprox>> {
    let [c0, c1, c2, c3] = coeffs;
    if c3.is_zero() || !(expected == 1 || expected == 3) {
        return domain("need a cubic and 1 or 3 expected real roots");
    }
    let w = prec + 4;
    // sign of f(k / 2^w)
    let sign_at = |k: &BigInt| -> i8 {
        let s = BigInt::one() << w;
        let v = c3 * k * k * k + c2 * k * k * &s + c1 * k * &s * &s + c0 * &s * &s * &s;
        match v.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    };
    let lead = if c3.is_positive() { 1 } else { -1 };
    let mx = [c0, c1, c2].iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = (mx / c3.abs() + 2u32) << w;
    let mut cuts = vec![-bound.clone()];
    if expected == 3 {
        // critical points (-c2 -+ sqrt(c2^2 - 3 c3 c1)) / (3 c3)
        let disc = c2 * c2 - BigInt::from(3) * c3 * c1;
        if !disc.is_positive() {
            return domain("three real roots need two real critical points");
        }
        let r = RealApprox::from_integer(&disc, w).sqrt()?;
        let m2 = RealApprox::from_integer(&-c2, w);
        let den = RealApprox::from_integer(&(BigInt::from(3) * c3), w);
        let mut crit = [m2.sub(&r).div(&den)?, m2.add(&r).div(&den)?];
        crit.sort_by(|a, b| a.mid.cmp(&b.mid));
        for (k, c) in crit.iter().enumerate() {
            let want = if k == 0 { lead } else { -lead };
            if sign_at(&c.mid) != want {
                return domain("roots too close to separate at this precision");
            }
            cuts.push(c.mid.clone());
        }
    }
    cuts.push(bound);
    cuts.windows(2)
        .map(|ab| bisect(ab[0].clone(), ab[1].clone(), &sign_at, w).with_prec(prec))
        .map(Ok)
        .collect()
}

fn bisect(mut a: BigInt, mut b: BigInt, sign_at: &dyn Fn(&BigInt) -> i8, w: u32) -> RealApprox {
    let sa = sign_at(&a);
    if sa == 0 {
        return RealApprox {
            mid: a,
            rad: BigInt::zero(),
            prec: w,
        };
    }
    while &b - &a > BigInt::one() {
        let m = (&a + &b).div_floor(&BigInt::from(2));
        match sign_at(&m) {
            0 => {
                return RealApprox {
                    mid: m,
                    rad: BigInt::zero(),
                    prec: w,
                }
            }
            s if s == sa => a = m,
            _ => b = m,
        }
    }
    if sign_at(&b) == 0 {
        return RealApprox {
            mid: b,
            rad: BigInt::zero(),
            prec: w,
        };
    }
    RealApprox {
        mid: a,
        rad: BigInt::one(),
        prec: w,
    }
}

impl fmt::Display for RealApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.3e}", self.to_decimal(30), self.error_f64())
    }
}
