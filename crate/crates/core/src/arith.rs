//! Exact integer, rational and modular arithmetic.
//!
//! Integers and rationals are the `num` crate's arbitrary precision types;
//! rationals are kept in lowest terms with a positive denominator by
//! `Ratio::new`. Residue classes modulo word-sized primes use `u64`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(n: &Integer) -> Rational {
    BigRational::from_integer(n.clone())
}

/// Parse a decimal integer (optional leading sign).
pub fn parse_integer(s: &str) -> Result<Integer> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a decimal integer: {s:?}")));
    }
    t.parse::<BigInt>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// Parse `n` or `n/d` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        None => Ok(rat_from_int(&parse_integer(s)?)),
        Some((n, d)) => {
            let n = parse_integer(n)?;
            let d = parse_integer(d)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// A residue `value mod modulus` with `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueClass {
    value: u64,
    modulus: u64,
}

impl ResidueClass {
    pub fn new(value: i128, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return domain(format!("modulus {modulus} < 2"));
        }
        let v = value.rem_euclid(modulus as i128) as u64;
        Ok(Self { value: v, modulus })
    }

    pub fn from_integer(value: &Integer, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return domain(format!("modulus {modulus} < 2"));
        }
        Ok(Self {
            value: reduce(value, modulus),
            modulus,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// `n mod m` in `[0, m)`.
pub fn reduce(n: &Integer, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Largest `e` with `p^e | n`.
pub fn valuation(n: &Integer, p: u64) -> Result<u32> {
    if n.is_zero() {
        return domain("valuation of zero");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

/// Valuation of a nonzero rational: `v(num) - v(den)`.
pub fn valuation_rational(x: &Rational, p: u64) -> Result<i64> {
    Ok(valuation(x.numer(), p)? as i64 - valuation(x.denom(), p)? as i64)
}

/// Legendre symbol `(a / p)` for an odd prime `p`.
pub fn legendre_symbol(a: &Integer, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    Ok(legendre_u64(reduce(a, p), p))
}

/// Euler's criterion on a reduced residue; `p` must be an odd prime.
pub(crate) fn legendre_u64(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// A square root of `a` modulo the prime `a.modulus()`, via Tonelli-Shanks.
pub fn sqrt_mod(a: ResidueClass) -> Option<ResidueClass> {
    let p = a.modulus;
    let n = a.value;
    if n == 0 || p == 2 {
        return Some(a);
    }
    if !is_prime(p) || legendre_u64(n, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre_u64(z, p) == -1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(ResidueClass { value: r, modulus: p })
}

/// Prime factorisation by trial division, ascending primes with exponents.
pub fn factor(n: &Integer) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d: u64 = 2;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push((n.to_u64().expect("cofactor exceeds trial-division range"), 1));
    }
    out
}

/// Positive divisors of `n != 0`, ascending.
pub fn divisors(n: &Integer) -> Vec<Integer> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n) {
        let bp = BigInt::from(p);
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &bp;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Exact rational `n`-th root, if one exists.
pub fn rational_nth_root(x: &Rational, n: u32) -> Option<Rational> {
    fn int_root(v: &BigInt, n: u32) -> Option<BigInt> {
        if v.is_negative() && n % 2 == 0 {
            return None;
        }
        let r = v.nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == *v).then_some(r)
    }
    Some(BigRational::new(int_root(x.numer(), n)?, int_root(x.denom(), n)?))
}
