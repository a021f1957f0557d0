//! Fixed-precision p-adic numbers, the q-expansion of `j`, Tate parameters
//! and the Iwasawa-branch L-invariant `log_p(q) / ord_p(q)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, Rational};
use crate::curve::WeierstrassCurve;
use crate::error::{domain, Error, Result};
use crate::local_data::{self, ReductionKind};

/// `p^valuation * unit + O(p^(valuation + rel_prec))`; a zero `unit` means
/// the value is only known to be `O(p^valuation)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicNumber {
    p: u64,
    valuation: i64,
    /// Canonical residue in `[0, p^rel_prec)`, prime to `p` unless zero.
    unit: BigInt,
    rel_prec: u32,
}

fn pow(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

fn int_valuation(n: &BigInt, p: u64) -> u32 {
    arith::valuation(n, p).expect("nonzero")
}

impl PadicNumber {
    /// `O(p^abs_prec)`.
    pub fn zero(p: u64, abs_prec: i64) -> Self {
        Self {
            p,
            valuation: abs_prec,
            unit: BigInt::zero(),
            rel_prec: 0,
        }
    }

    /// `p^v * u` to `rel` digits; `u` must be prime to `p`.
    fn from_unit(p: u64, valuation: i64, u: &BigInt, rel: u32) -> Self {
        if rel == 0 {
            return Self::zero(p, valuation);
        }
        Self {
            p,
            valuation,
            unit: u.mod_floor(&pow(p, rel)),
            rel_prec: rel,
        }
    }

    /// Value of the integer residue `n mod p^abs` as a p-adic number known to
    /// absolute precision `abs`.
    pub fn from_residue(n: &BigInt, p: u64, abs: i64) -> Self {
        if abs <= 0 {
            return Self::zero(p, abs);
        }
        let n = n.mod_floor(&pow(p, abs as u32));
        if n.is_zero() {
            return Self::zero(p, abs);
        }
        let v = int_valuation(&n, p);
        Self::from_unit(p, v as i64, &(n / pow(p, v)), abs as u32 - v)
    }

    /// Exact rational to `rel` significant digits.
    pub fn from_rational(q: &Rational, p: u64, rel: u32) -> Self {
        if q.is_zero() {
            return Self::zero(p, rel as i64);
        }
        let vn = int_valuation(q.numer(), p);
        let vd = int_valuation(q.denom(), p);
        let modulus = pow(p, rel);
        let num = q.numer() / pow(p, vn);
        let den = q.denom() / pow(p, vd);
        let inv = mod_inverse(&den, &modulus).expect("unit denominator");
        Self::from_unit(p, vn as i64 - vd as i64, &(num * inv), rel)
    }

    pub fn from_integer(n: &BigInt, p: u64, rel: u32) -> Self {
        Self::from_rational(&Rational::from_integer(n.clone()), p, rel)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// `None` when the value is indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }

    pub fn rel_prec(&self) -> u32 {
        self.rel_prec
    }

    pub fn abs_prec(&self) -> i64 {
        self.valuation + self.rel_prec as i64
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// Base-`p` digits of the unit part, least significant first.
    pub fn digits(&self) -> Vec<u64> {
        let mut u = self.unit.clone();
        let p = BigInt::from(self.p);
        (0..self.rel_prec)
            .map(|_| {
                let (q, r) = u.div_mod_floor(&p);
                u = q;
                r.to_u64().unwrap()
            })
            .collect()
    }

    /// Same value with relative precision capped at `rel`.
    pub fn truncate(&self, rel: u32) -> Self {
        if rel >= self.rel_prec || self.is_zero() {
            return self.clone();
        }
        Self::from_unit(self.p, self.valuation, &self.unit, rel)
    }

    fn check_prime(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return domain(format!("mixed primes {} and {}", self.p, o.p));
        }
        Ok(())
    }

    /// `p^(v - m) * unit` as an integer, for `m <= v`.
    fn shifted(&self, m: i64) -> BigInt {
        &self.unit * pow(self.p, (self.valuation - m) as u32)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_prime(o)?;
        let abs = self.abs_prec().min(o.abs_prec());
        let m = self.valuation.min(o.valuation);
        if abs <= m {
            return Ok(Self::zero(self.p, abs));
        }
        let s = (self.shifted(m) + o.shifted(m)).mod_floor(&pow(self.p, (abs - m) as u32));
        Ok(Self::from_residue(&s, self.p, abs - m).scaled(m))
    }

    /// Multiply by `p^k`.
    fn scaled(mut self, k: i64) -> Self {
        self.valuation += k;
        self
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_unit(self.p, self.valuation, &-&self.unit, self.rel_prec)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_prime(o)?;
        let v = self.valuation + o.valuation;
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Ok(Self::zero(self.p, v)),
            (true, false) | (false, true) => {
                // O(p^a) * p^b u = O(p^(a + b))
                Ok(Self::zero(self.p, v))
            }
            (false, false) => {
                let rel = self.rel_prec.min(o.rel_prec);
                Ok(Self::from_unit(self.p, v, &(&self.unit * &o.unit), rel))
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("inverse of a p-adic zero");
        }
        let m = pow(self.p, self.rel_prec);
        let u = mod_inverse(&self.unit, &m).expect("unit");
        Ok(Self::from_unit(self.p, -self.valuation, &u, self.rel_prec))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    /// Agreement to `digits` significant digits.
    pub fn agrees_with(&self, o: &Self, digits: u32) -> bool {
        self.p == o.p
            && match (self.valuation(), o.valuation()) {
                (Some(a), Some(b)) => {
                    a == b
                        && self.rel_prec >= digits
                        && o.rel_prec >= digits
                        && self.unit.mod_floor(&pow(self.p, digits)) == o.unit.mod_floor(&pow(self.p, digits))
                }
                _ => false,
            }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl fmt::Display for PadicNumber {
    /// `p=5;v=4;d=3,0,2` with unit digits least significant first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.digits().iter().map(u64::to_string).collect();
        write!(f, "p={};v={};d={}", self.p, self.valuation, d.join(","))
    }
}

impl FromStr for PadicNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("p-adic number {s:?}: {why}"));
        let mut parts = s.split(';');
        let mut field = |name: &str| -> Result<&str> {
            let part = parts.next().ok_or_else(|| bad("missing field"))?;
            part.strip_prefix(name)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| bad(&format!("expected {name}=")))
        };
        let p: u64 = field("p")?.parse().map_err(|_| bad("bad prime"))?;
        let v: i64 = field("v")?.parse().map_err(|_| bad("bad valuation"))?;
        let d = field("d")?;
        if parts.next().is_some() {
            return Err(bad("trailing fields"));
        }
        if p > 1 << 31 || !arith::is_prime(p) {
            return Err(bad("p is not a prime below 2^31"));
        }
        if d.len() > 1_000_000 || v.unsigned_abs() > 1 << 40 {
            return Err(bad("out of range"));
        }
        let digits: Vec<u64> = if d.is_empty() {
            Vec::new()
        } else {
            d.split(',')
                .map(|x| x.parse::<u64>().ok().filter(|&x| x < p))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("bad digit"))?
        };
        if digits.first() == Some(&0) {
            return Err(bad("leading unit digit is zero"));
        }
        let unit = digits.iter().rev().fold(BigInt::zero(), |acc, &x| acc * p + x);
        let x = if digits.is_empty() {
            Self::zero(p, v)
        } else {
            Self {
                p,
                valuation: v,
                unit,
                rel_prec: digits.len() as u32,
            }
        };
        // only the canonical spelling is accepted
        if x.to_string() != s {
            return Err(bad("not in canonical form"));
        }
        Ok(x)
    }
}

/// Coefficients `c_{-1}, c_0, c_1, ...` of a Laurent series in `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    coefficients: Vec<BigInt>,
}

impl QExpansion {
    /// `c_n` for `n >= -1`.
    pub fn coeff(&self, n: i64) -> &BigInt {
        &self.coefficients[(n + 1) as usize]
    }

    /// Highest index `T` available.
    pub fn top(&self) -> i64 {
        self.coefficients.len() as i64 - 2
    }
}

fn sigma(k: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(k)).sum()
}

fn series_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a / b` for power series with `b_0 = 1`.
fn series_div(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    assert!(b[0].is_one());
    let mut out: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        let mut c = a[n].clone();
        for k in 1..=n.min(b.len() - 1) {
            c -= &b[k] * &out[n - k];
        }
        out.push(c);
    }
    out
}

/// `E_4 = 1 + 240 sum sigma_3(n) q^n` to `len` terms.
fn eisenstein4(len: usize) -> Vec<BigInt> {
    (0..len)
        .map(|n| {
            if n == 0 {
                BigInt::one()
            } else {
                sigma(3, n as u64) * 240
            }
        })
        .collect()
}

/// `j(q) = E_4^3 / (q prod (1 - q^n)^24)` through `q^T`.
pub fn j_q_expansion(t: usize) -> QExpansion {
    let len = t + 2;
    let e4 = eisenstein4(len);
    let e4_cubed = series_mul(&series_mul(&e4, &e4, len), &e4, len);
    let mut eta24 = vec![BigInt::zero(); len];
    eta24[0] = BigInt::one();
    for n in 1..len {
        // multiply by (1 - q^n)^24 via 24 passes of (1 - q^n)
        for _ in 0..24 {
            for i in (n..len).rev() {
                let sub = eta24[i - n].clone();
                eta24[i] -= sub;
            }
        }
    }
    QExpansion {
        coefficients: series_div(&e4_cubed, &eta24, len),
    }
}

/// Branch of the logarithm at `p`; `Iwasawa` sets `log p = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogBranch {
    Iwasawa,
    /// `log p = lambda`.
    Custom(PadicNumber),
}

/// Tate parameter of a curve with split multiplicative reduction at `p`, to
/// `digits` significant digits, using `terms` coefficients of `j`.
pub fn tate_parameter_with_terms(c: &WeierstrassCurve, p: u64, digits: u32, terms: usize) -> Result<PadicNumber> {
    match local_data::reduction_type(c, p)? {
        ReductionKind::MultiplicativeSplit => {}
        kind => {
            return domain(format!(
                "Tate parameter needs split multiplicative reduction at {p}, found {kind}"
            ))
        }
    }
    let inv = c.invariants();
    let n = arith::valuation(&inv.disc, p)? as i64 - 3 * arith::valuation(&inv.c4, p)? as i64;
    if n <= 0 {
        return domain(format!("j is {p}-integral"));
    }
    let guard = n;
    let abs = n + digits as i64 + guard;
    // omitted terms c_k q^k of q * j(q) have valuation >= n (T + 2)
    if n * (terms as i64 + 2) < abs {
        return Err(Error::InsufficientTerms(format!(
            "{terms} j-coefficients give only {} digits at {p}",
            n * (terms as i64 + 2) - n
        )));
    }
    let modulus = pow(p, abs as u32);
    let jq = j_q_expansion(terms);
    let coeffs: Vec<BigInt> = (0..=terms as i64 + 1)
        .map(|k| jq.coeff(k - 1).mod_floor(&modulus))
        .collect();
    // w = 1/j = disc / c4^3, a p-adic integer of valuation n
    let c43 = inv.c4.pow(3);
    let w = (&inv.disc * mod_inverse(&c43, &modulus).ok_or_else(|| Error::Domain("c4 not a unit".into()))?)
        .mod_floor(&modulus);
    // q = w * J(q) with J(q) = q j(q) = 1 + 744 q + ...
    let big_j = |q: &BigInt| {
        coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, ck| (acc * q + ck).mod_floor(&modulus))
    };
    let mut q = w.clone();
    for _ in 0..(abs / n + 3) {
        let next = (&w * big_j(&q)).mod_floor(&modulus);
        if next == q {
            break;
        }
        q = next;
    }
    let result = PadicNumber::from_residue(&q, p, abs);
    if result.valuation() != Some(n) {
        return domain("Tate parameter has the wrong valuation");
    }
    Ok(result.truncate(digits))
}

/// Series length for `digits` digits when `ord_p(q) = n`: digits + n + 10.
pub fn default_terms(digits: u32, n: u32) -> usize {
    (digits + n + 10) as usize
}

pub fn tate_parameter(c: &WeierstrassCurve, p: u64, digits: u32) -> Result<PadicNumber> {
    let n = arith::valuation(&c.discriminant(), p)?;
    tate_parameter_with_terms(c, p, digits, default_terms(digits, n))
}

/// `1/j(q) = q / J(q)` with `J(q) = q j(q)` truncated after `c_T q^(T+1)`.
pub fn inverse_j_of(q: &PadicNumber, terms: usize) -> Result<PadicNumber> {
    let jq = j_q_expansion(terms);
    let (p, rel) = (q.prime(), q.rel_prec() + 8);
    let mut acc = PadicNumber::from_integer(jq.coeff(terms as i64), p, rel);
    for k in (-1..terms as i64).rev() {
        acc = acc.mul(q)?.add(&PadicNumber::from_integer(jq.coeff(k), p, rel))?;
    }
    q.div(&acc)
}

/// Iwasawa logarithm (`log p = 0`) to the precision of `x`.
pub fn iwasawa_log(x: &PadicNumber) -> Result<PadicNumber> {
    if x.is_zero() {
        return domain("log of zero");
    }
    let p = x.p;
    let r = x.rel_prec;
    let e: u64 = if p == 2 { 2 } else { p - 1 };
    // log u = log(u^e) / e with u^e = 1 + z, v(z) >= 1 (>= 3 when p = 2).
    // v(z^k / k) >= k - log2(k) >= r once k >= K, and dividing by k costs at
    // most `extra` digits, so work modulo p^(r + extra).
    let bits = |n: u64| 64 - n.leading_zeros();
    let big_k = r as u64 + 2 * bits(r as u64 + 2) as u64 + 4;
    let extra = bits(big_k);
    let m = pow(p, r + extra);
    let z = (x.unit.modpow(&BigInt::from(e), &pow(p, r)) - 1u32).mod_floor(&pow(p, r));
    let mut sum = BigInt::zero();
    let mut zk = BigInt::one();
    for k in 1..=big_k {
        zk = (&zk * &z).mod_floor(&m);
        let vk = int_valuation(&BigInt::from(k), p);
        let unit_k = BigInt::from(k / p.pow(vk));
        let term = (&zk / pow(p, vk)) * mod_inverse(&unit_k, &m).expect("unit");
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let log_ue = PadicNumber::from_residue(&sum, p, r as i64);
    log_ue.div(&PadicNumber::from_integer(&BigInt::from(e), p, r))
}

/// `log(x)` on a given branch: `log(p^v u) = v * log(p) + log(u)`.
pub fn log_on_branch(x: &PadicNumber, branch: &LogBranch) -> Result<PadicNumber> {
    let unit_part = iwasawa_log(x)?;
    match branch {
        LogBranch::Iwasawa => Ok(unit_part),
        LogBranch::Custom(lambda) => {
            let v = PadicNumber::from_integer(&BigInt::from(x.valuation), x.p, x.rel_prec);
            unit_part.add(&v.mul(lambda)?)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LInvariant {
    pub p: u64,
    pub tate_parameter: PadicNumber,
    pub log_q: PadicNumber,
    pub value: PadicNumber,
    /// `valuation(value) == 1`, i.e. the value lies in `p Z_p^*`.
    pub in_p_times_units: bool,
}

pub fn l_invariant_on_branch(c: &WeierstrassCurve, p: u64, digits: u32, branch: &LogBranch) -> Result<LInvariant> {
    let q = tate_parameter(c, p, digits)?;
    let ord = q.valuation().expect("nonzero Tate parameter");
    let log_q = log_on_branch(&q, branch)?;
    let value = log_q.div(&PadicNumber::from_integer(&BigInt::from(ord), p, digits))?;
    let in_p_times_units = value.valuation() == Some(1);
    Ok(LInvariant {
        p,
        tate_parameter: q,
        log_q,
        value,
        in_p_times_units,
    })
}

/// `log_p(q) / ord_p(q)` on the Iwasawa branch.
pub fn l_invariant(c: &WeierstrassCurve, p: u64, digits: u32) -> Result<LInvariant> {
    l_invariant_on_branch(c, p, digits, &LogBranch::Iwasawa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Oracle: `j = 1728 E4^3 / (E4^3 - E6^2)` by independent series division.
    fn j_oracle(t: usize) -> Vec<BigInt> {
        let len = t + 3;
        let e4 = eisenstein4(len);
        let e6: Vec<BigInt> = (0..len)
            .map(|n| if n == 0 { int(1) } else { sigma(5, n as u64) * -504 })
            .collect();
        let e4c = series_mul(&series_mul(&e4, &e4, len), &e4, len);
        let e6s = series_mul(&e6, &e6, len);
        // E4^3 - E6^2 = 1728 q (1 - 24 q + ...)
        let diff: Vec<BigInt> = e4c.iter().zip(&e6s).map(|(a, b)| a - b).collect();
        assert!(diff[0].is_zero());
        let d1728 = int(1728);
        let shifted: Vec<BigInt> = diff[1..]
            .iter()
            .map(|x: &BigInt| {
                assert!((x % &d1728).is_zero());
                x / &d1728
            })
            .collect();
        series_div(&e4c, &shifted, len - 1)
    }

    #[test]
    fn j_coefficients() {
        let j = j_q_expansion(12);
        assert_eq!(j.coeff(-1), &int(1));
        assert_eq!(j.coeff(0), &int(744));
        assert_eq!(j.coeff(1), &int(196884));
        assert_eq!(j.coeff(2), &int(21493760));
        assert_eq!(j.top(), 12);
        let oracle = j_oracle(12);
        for k in -1..=12 {
            assert_eq!(j.coeff(k), &oracle[(k + 1) as usize], "c_{k}");
        }
    }

    #[test]
    fn arithmetic_basics() {
        let a = PadicNumber::from_rational(&rat(50, 3), 5, 10);
        assert_eq!(a.valuation(), Some(2));
        let b = a.inv().unwrap();
        assert_eq!(b.valuation(), Some(-2));
        let one = a.mul(&b).unwrap();
        assert!(one.agrees_with(&PadicNumber::from_integer(&int(1), 5, 10), 10));
        let z = a.sub(&a).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.abs_prec(), 12);
        assert!(PadicNumber::zero(5, 3).inv().is_err());
        // 1 + (-1) loses everything
        let s = PadicNumber::from_integer(&int(1), 5, 4)
            .add(&PadicNumber::from_integer(&int(-1), 5, 4))
            .unwrap();
        assert!(s.is_zero());
        assert!(PadicNumber::from_integer(&int(1), 5, 4)
            .add(&PadicNumber::from_integer(&int(1), 7, 4))
            .is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = PadicNumber::from_rational(&rat(-7, 15), 5, 8);
        let s = a.to_string();
        assert!(s.starts_with("p=5;v=-1;d="));
        assert_eq!(s.parse::<PadicNumber>().unwrap(), a);
        let z = PadicNumber::zero(3, 7);
        assert_eq!(z.to_string(), "p=3;v=7;d=");
        assert_eq!(z.to_string().parse::<PadicNumber>().unwrap(), z);
        for bad in [
            "",
            "p=4;v=0;d=1",
            "p=5;v=0;d=0,1",
            "p=5;v=0;d=5",
            "p=5;v=x;d=1",
            "p=5;v=0;d=1;x=2",
            "v=0;p=5;d=1",
            "p=5;v=0;d=+1",
        ] {
            assert!(bad.parse::<PadicNumber>().is_err(), "{bad}");
        }
    }

    #[test]
    fn log_examples() {
        let six = PadicNumber::from_integer(&int(6), 5, 20);
        assert_eq!(iwasawa_log(&six).unwrap().valuation(), Some(1));
        let five = PadicNumber::from_integer(&int(5), 5, 20);
        assert!(iwasawa_log(&five).unwrap().is_zero());
        assert!(iwasawa_log(&PadicNumber::zero(5, 3)).is_err());
        // log(-1) = 0 since (-1)^(p-1) = 1
        assert!(iwasawa_log(&PadicNumber::from_integer(&int(-1), 5, 20))
            .unwrap()
            .is_zero());
        // log(1 + p) vs the series computed directly with rationals
        let mut direct = Rational::zero();
        for k in 1..60i64 {
            let t = Rational::from_integer(int(5).pow(k as u32)) / int(k);
            direct += if k % 2 == 1 { t } else { -t };
        }
        let direct = PadicNumber::from_rational(&direct, 5, 40);
        assert!(iwasawa_log(&six).unwrap().agrees_with(&direct.truncate(19), 19));
        // p = 2 uses u^2
        let l = iwasawa_log(&PadicNumber::from_integer(&int(5), 2, 20)).unwrap();
        assert_eq!(l.valuation(), Some(2));
    }

    #[test]
    fn e1_tate_parameter() {
        let e1 = WeierstrassCurve::e1();
        let q = tate_parameter(&e1, 5, 20).unwrap();
        assert_eq!(q.valuation(), Some(4));
        assert_eq!(q.rel_prec(), 20);
        // j(q) = j(E1): compare 1/j
        let inv = e1.invariants();
        let w = PadicNumber::from_rational(&Rational::new(inv.disc.clone(), inv.c4.pow(3)), 5, 20);
        let back = inverse_j_of(&q, 30).unwrap();
        assert!(back.agrees_with(&w, 16), "{back} vs {w}");
        assert!(matches!(tate_parameter(&e1, 3, 20), Err(Error::Domain(_))));
        assert!(tate_parameter(&e1, 7, 20).is_err());
        assert!(matches!(
            tate_parameter_with_terms(&e1, 5, 20, 3),
            Err(Error::InsufficientTerms(_))
        ));
    }

    #[test]
    fn e1_l_invariant() {
        let e1 = WeierstrassCurve::e1();
        let l = l_invariant(&e1, 5, 20).unwrap();
        assert!(l.in_p_times_units);
        assert_eq!(l.value.valuation(), Some(1));
        // stable when precision doubles
        let l2 = l_invariant(&e1, 5, 40).unwrap();
        let d = l.value.rel_prec();
        assert!(l2.value.agrees_with(&l.value, d));
        // isogeny invariance: E2's L-invariant agrees
        let le2 = l_invariant(&WeierstrassCurve::e2(), 5, 20).unwrap();
        assert_eq!(le2.tate_parameter.valuation(), Some(2));
        let dd = d.min(le2.value.rel_prec());
        assert!(le2.value.agrees_with(&l.value, dd));
    }

    #[test]
    fn branch_dependence() {
        let e1 = WeierstrassCurve::e1();
        let base = l_invariant(&e1, 5, 20).unwrap();
        // branches with v(log p) >= 2 keep valuation 1
        for lam in [25i64, 125, -50, 0] {
            let b = LogBranch::Custom(PadicNumber::from_integer(&int(lam), 5, 20));
            let l = l_invariant_on_branch(&e1, 5, 20, &b).unwrap();
            assert_eq!(l.value.valuation(), Some(1), "lambda = {lam}");
        }
        // but not every branch: log p = -L(Iwasawa) kills the value entirely
        let lam = base.value.neg();
        let l = l_invariant_on_branch(&e1, 5, 20, &LogBranch::Custom(lam)).unwrap();
        assert_ne!(l.value.valuation(), Some(1));
    }

    proptest! {
        #[test]
        fn ultrametric(a in -10_000i64..10_000, b in -10_000i64..10_000, c in 1i64..500) {
            prop_assume!(a != 0 && b != 0);
            let p = 5;
            let x = PadicNumber::from_rational(&rat(a, c), p, 12);
            let y = PadicNumber::from_integer(&int(b), p, 12);
            let vx = x.valuation().unwrap();
            let vy = y.valuation().unwrap();
            prop_assert_eq!(x.mul(&y).unwrap().valuation(), Some(vx + vy));
            let s = x.add(&y).unwrap();
            match s.valuation() {
                Some(vs) => {
                    prop_assert!(vs >= vx.min(vy));
                    if vx != vy { prop_assert_eq!(vs, vx.min(vy)); }
                }
                None => prop_assert!(s.abs_prec() >= vx.min(vy)),
            }
            // agreement with exact rational arithmetic
            let exact = PadicNumber::from_rational(&(rat(a, c) + rat(b, 1)), p, 30);
            if let (Some(_), Some(_)) = (s.valuation(), exact.valuation()) {
                prop_assert!(s.agrees_with(&exact, s.rel_prec()));
            }
        }

        #[test]
        fn log_is_a_homomorphism(a in 1i64..100_000, b in 1i64..100_000) {
            let p = 5;
            prop_assume!(a % 5 != 0 && b % 5 != 0);
            let x = PadicNumber::from_integer(&int(a), p, 15);
            let y = PadicNumber::from_integer(&int(b), p, 15);
            let lhs = iwasawa_log(&x.mul(&y).unwrap()).unwrap();
            let rhs = iwasawa_log(&x).unwrap().add(&iwasawa_log(&y).unwrap()).unwrap();
            let diff = lhs.sub(&rhs).unwrap();
            prop_assert!(diff.is_zero() || diff.valuation().unwrap() >= 15);
        }

        #[test]
        fn text_round_trips(a in -1_000_000i64..1_000_000, c in 1i64..1000, rel in 1u32..30) {
            prop_assume!(a != 0);
            let x = PadicNumber::from_rational(&rat(a, c), 7, rel);
            prop_assert_eq!(x.to_string().parse::<PadicNumber>().unwrap(), x);
        }
    }
}
