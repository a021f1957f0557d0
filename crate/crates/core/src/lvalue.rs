//! `L(E, 1)` from the rapidly convergent `a_n` series, the real period by
//! AGM, and rational reconstruction of their ratio.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::join;

use crate::arith::Rational;
use crate::counting;
use crate::curve::WeierstrassCurve;
use crate::error::{domain, Error, Result};
use crate::local_data;
use crate::real::{agm, cubic_real_roots, RealApprox};

/// Convention string recorded next to every period.
pub const PERIOD_CONVENTION: &str = "integral of |dx/(2y+a1x+a3)| over all of E(R) (both components when disc > 0)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnSeries {
    pub conductor: BigInt,
    /// `a_1 .. a_M`; index 0 holds `a_1`.
    coefficients: Vec<i64>,
    /// Primes dividing the conductor.
    bad: Vec<u64>,
    root_number: i32,
}

impl AnSeries {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `a_n` for `1 <= n <= M`.
    pub fn get(&self, n: usize) -> i64 {
        self.coefficients[n - 1]
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// Global root number `-prod_{p | N} (-a_p)` of a semistable curve.
    pub fn root_number(&self) -> i32 {
        self.root_number
    }

    /// Checks multiplicativity and the prime-power recurrences for all `n <= M`.
    pub fn satisfies_hecke(&self) -> bool {
        let m = self.len();
        if m == 0 || self.get(1) != 1 {
            return m == 0;
        }
        for n in 2..=m {
            let p = smallest_prime_factor(n);
            let mut pk = p;
            while n % (pk * p) == 0 {
                pk *= p;
            }
            let rest = n / pk;
            if rest > 1 {
                if self.get(n) != self.get(pk) * self.get(rest) {
                    return false;
                }
            } else if pk > p {
                let bad = self.bad.contains(&(p as u64));
                let expect =
                    self.get(p) * self.get(pk / p) - if bad { 0 } else { p as i64 * a_or_one(self, pk / p / p) };
                if self.get(n) != expect {
                    return false;
                }
            }
        }
        true
    }
}

fn a_or_one(s: &AnSeries, n: usize) -> i64 {
    if n <= 1 {
        1
    } else {
        s.get(n)
    }
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..)
        .find(|p| n % p == 0 || p * p > n)
        .map(|p| if n % p == 0 { p } else { n })
        .unwrap()
}

/// `a_1 .. a_M` by the Hecke recurrences from `a_p`.
pub fn an_coefficients(c: &WeierstrassCurve, m: usize) -> Result<AnSeries> {
    let local = local_data::local_data_at_bad_primes(c)?;
    let conductor = local_data::conductor_semistable(c)?;
    let mut ap = vec![0i64; m + 1];
    for r in counting::good_traces(c, m as u64) {
        ap[r.p as usize] = r.trace;
    }
    let bad: Vec<u64> = local.iter().map(|d| d.p).collect();
    let mut root_number = -1;
    for d in &local {
        let t = d.kind.bad_trace().ok_or(Error::UnsupportedReduction(d.p))?;
        root_number *= -t as i32;
        if (d.p as usize) <= m {
            ap[d.p as usize] = t;
        }
    }
    let mut spf = vec![0usize; m + 1];
    for i in 2..=m {
        if spf[i] == 0 {
            for j in (i..=m).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    let mut a = vec![0i64; m + 1];
    if m >= 1 {
        a[1] = 1;
    }
    for n in 2..=m {
        let p = spf[n];
        let mut pk = p;
        while n % (pk * p) == 0 {
            pk *= p;
        }
        a[n] = if pk < n {
            a[pk] * a[n / pk]
        } else if pk == p {
            ap[p]
        } else if bad.contains(&(p as u64)) {
            ap[p] * a[pk / p]
        } else {
            ap[p] * a[pk / p] - p as i64 * a[pk / p / p]
        };
    }
    Ok(AnSeries {
        conductor,
        coefficients: a[1..].to_vec(),
        bad,
        root_number,
    })
}

/// Real period for the given model, in the convention [`PERIOD_CONVENTION`].
pub fn real_period(c: &WeierstrassCurve, prec: u32) -> Result<RealApprox> {
    let inv = c.invariants();
    let w = prec + 32;
    // roots of 4x^3 + b2 x^2 + 2 b4 x + b6
    let two_b4 = &inv.b4 * 2;
    let four = BigInt::from(4);
    let pi = RealApprox::pi(w);
    let period = if inv.disc.is_positive() {
        let e = cubic_real_roots([&inv.b6, &two_b4, &inv.b2, &four], 3, w)?;
        let (e3, e2, e1) = (&e[0], &e[1], &e[2]);
        let (m, _) = agm(&e1.sub(e3).sqrt()?, &e1.sub(e2).sqrt()?)?;
        pi.mul_int(2).div(&m)?
    } else {
        let e = cubic_real_roots([&inv.b6, &two_b4, &inv.b2, &four], 1, w)?;
        let e1 = &e[0];
        let b2 = RealApprox::from_integer(&inv.b2, w);
        let b4 = RealApprox::from_integer(&inv.b4, w);
        // alpha = 3 e1 + b2/4, beta = sqrt(3 e1^2 + (b2/2) e1 + b4/2)
        let alpha = e1.mul_int(3).add(&b2.shr(2));
        let beta = e1.mul(e1).mul_int(3).add(&b2.mul(e1).shr(1)).add(&b4.shr(1)).sqrt()?;
        let (m, _) = agm(&beta.sqrt()?.mul_int(2), &beta.mul_int(2).add(&alpha).sqrt()?)?;
        pi.mul_int(2).div(&m)?
    };
    Ok(period.with_prec(prec))
}

/// Rigorous bound on `sum_{n > M} 2 |a_n| / n q^n` using `|a_n| <= d(n) sqrt n <= 2n`:
/// at most `4 q^(M+1) / (1 - q)`.
fn tail_bound(q: &RealApprox, m: usize) -> Result<Rational> {
    let p = q.prec();
    let hi = RealApprox::from_rational(&q.hi(), p);
    let mut pow = RealApprox::exact_int(1, p);
    let mut base = hi.clone();
    let mut e = m + 1;
    while e > 0 {
        if e & 1 == 1 {
            pow = pow.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    Ok(pow.mul_int(4).div(&RealApprox::exact_int(1, p).sub(&hi))?.hi())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LValue {
    pub value: RealApprox,
    pub terms: usize,
    pub tail_bound: Rational,
    pub root_number: i32,
}

/// `L(E, 1) = 2 sum a_n/n exp(-2 pi n / sqrt N)` when the root number is +1;
/// exactly zero (by the functional equation) when it is -1.
/// Fails with `InsufficientTerms` when the tail bound exceeds `tolerance`.
pub fn l_value_at_1(series: &AnSeries, prec: u32, tolerance: &Rational) -> Result<LValue> {
    let m = series.len();
    let root_number = series.root_number();
    if root_number == -1 {
        return Ok(LValue {
            value: RealApprox::exact_int(0, prec),
            terms: m,
            tail_bound: Rational::zero(),
            root_number,
        });
    }
    let w = prec + 32;
    let n = RealApprox::from_integer(&series.conductor, w);
    let q = RealApprox::pi(w).mul_int(-2).div(&n.sqrt()?)?.exp();
    let tail = tail_bound(&q, m)?;
    if &tail > tolerance {
        return Err(Error::InsufficientTerms(format!(
            "{m} terms leave a tail bound {:.3e} above the tolerance",
            tail.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let mut qn = RealApprox::exact_int(1, w);
    let mut sum = RealApprox::exact_int(0, w);
    for k in 1..=m {
        qn = qn.mul(&q);
        let a = series.get(k);
        if a != 0 {
            sum = sum.add(&qn.mul_int(a).div_int(k as i64)?);
        }
    }
    let mut value = sum.mul_int(2);
    let tail_units = RealApprox::from_rational(&tail, w);
    value = value.add(&RealApprox::from_parts(
        BigInt::zero(),
        tail_units.mid() + tail_units.rad(),
        w,
    ));
    Ok(LValue {
        value: value.with_prec(prec),
        terms: m,
        tail_bound: tail,
        root_number,
    })
}

/// The simplest rational in the enclosure of `x`, provided it is the unique
/// one with denominator `<= max_den` (guaranteed when the error is below
/// `1 / (2 max_den^2)`).
pub fn rational_reconstruct(x: &RealApprox, max_den: u64) -> Result<Rational> {
    let d = BigInt::from(max_den);
    let limit = Rational::new(BigInt::one(), &d * &d * 2);
    if x.error_bound() >= limit {
        return domain(format!(
            "precision insufficient: error {:.3e} is not below 1/(2*{max_den}^2)",
            x.error_f64()
        ));
    }
    let q = simplest_between(&x.lo(), &x.hi());
    if q.denom() > &d {
        return domain(format!("no rational with denominator <= {max_den} in the enclosure"));
    }
    Ok(q)
}

/// Simplest fraction in `[lo, hi]` via continued fractions.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let c = lo.ceil();
    if &c <= hi {
        // an integer lies in the interval; pick the one nearest zero
        let f = hi.floor();
        return if c.is_positive() {
            c
        } else if f.is_negative() {
            f
        } else {
            Rational::zero()
        };
    }
    let fl = lo.floor();
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Everything the ratio check needs, computed at one working precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCheck {
    pub l_value: LValue,
    pub period: RealApprox,
    pub ratio: RealApprox,
    pub reconstructed: Result<Rational>,
}

pub fn l_over_omega(c: &WeierstrassCurve, terms: usize, prec: u32, tolerance: &Rational) -> Result<RatioCheck> {
    let (series, period) = join(|| an_coefficients(c, terms), || real_period(c, prec));
    let l_value = l_value_at_1(&series?, prec, tolerance)?;
    let period = period?;
    let ratio = l_value.value.div(&period)?;
    let reconstructed = rational_reconstruct(&ratio, 100);
    Ok(RatioCheck {
        l_value,
        period,
        ratio,
        reconstructed,
    })
}

/// Default tolerance on the series tail: `10^-12`.
pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// Number of terms that brings the tail bound below `tolerance` for
/// conductor `n` (a convenience for other curves).
pub fn suggested_terms(n: &BigInt, tolerance: &Rational) -> usize {
    // q = exp(-2 pi / sqrt N); need 4 q^(M+1) / (1 - q) < tol
    let nf: f64 = n.to_string().parse().unwrap_or(f64::MAX);
    let q = (-2.0 * std::f64::consts::PI / nf.sqrt()).exp();
    let tol = tolerance.to_f64().unwrap_or(1e-12);
    let m = ((tol * (1.0 - q) / 4.0).ln() / q.ln()).ceil() as usize;
    m.max(1) + 10
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{self, rat};

    const P: u32 = 128;

    #[test]
    fn e1_coefficients() {
        let s = an_coefficients(&WeierstrassCurve::e1(), 2000).unwrap();
        assert_eq!(s.get(1), 1);
        assert_eq!(s.get(2), -1);
        assert_eq!(s.get(3), -1);
        assert_eq!(s.get(5), 1);
        assert_eq!(s.get(15), -1);
        assert_eq!(s.get(4), -1);
        assert_eq!(s.get(9), 1);
        assert!(s.satisfies_hecke());
        assert_eq!(s.conductor, BigInt::from(15));
    }

    #[test]
    fn coefficients_bounded_and_match_counts() {
        let c = WeierstrassCurve::e1();
        let s = an_coefficients(&c, 2000).unwrap();
        for n in 1..=2000usize {
            let d = arith::divisors(&BigInt::from(n)).len() as f64;
            assert!((s.get(n) as f64).abs() <= d * (n as f64).sqrt() + 1e-9, "n = {n}");
        }
        for p in arith::primes_up_to(300) {
            if p != 3 && p != 5 {
                assert_eq!(s.get(p as usize), counting::trace_ap(&c, p).unwrap());
            }
        }
    }

    #[test]
    fn broken_series_fails_hecke() {
        let mut s = an_coefficients(&WeierstrassCurve::e1(), 100).unwrap();
        s.coefficients[5] += 1;
        assert!(!s.satisfies_hecke());
    }

    #[test]
    fn additive_curve_unsupported() {
        let c: WeierstrassCurve = "0,0,0,0,1".parse().unwrap();
        assert!(an_coefficients(&c, 10).is_err());
    }

    /// Independent f64 oracle: adaptive Simpson for the period integral
    /// `k * int_{e1}^inf dx / sqrt(f(x))` after `x = e1 + t^2`.
    fn quadrature_period(c: &WeierstrassCurve) -> f64 {
        let inv = c.invariants();
        let f = |v: &BigInt| -> f64 { v.to_string().parse().unwrap() };
        let (b2, b4, b6) = (f(&inv.b2), f(&inv.b4), f(&inv.b6));
        let poly = |x: f64| ((4.0 * x + b2) * x + 2.0 * b4) * x + b6;
        // largest real root by bisection in f64
        // scan down from the right to bracket the largest root, then bisect
        let mut hi = 1e4;
        while poly(hi - 0.01) > 0.0 {
            hi -= 0.01;
        }
        let mut lo = hi - 0.01;
        for _ in 0..200 {
            let m = (lo + hi) / 2.0;
            if poly(m) > 0.0 {
                hi = m
            } else {
                lo = m
            }
        }
        let e1 = lo;
        let d1 = (12.0 * e1 + 2.0 * b2) * e1 + 2.0 * b4;
        let d2 = 12.0 * e1 + b2;
        assert!(d1 > 0.0);
        // f(e1 + t^2) / t^2 = d1 + d2 t^2 + 4 t^4
        let g = |t: f64| 2.0 / (d1 + d2 * t * t + 4.0 * t.powi(4)).sqrt();
        // on [1, inf) substitute t = 1/v
        let h = |v: f64| 2.0 / (d1 * v.powi(4) + d2 * v * v + 4.0).sqrt();
        let integral = simpson(&g, 0.0, 1.0, 1e-13, 40) + simpson(&h, 0.0, 1.0, 1e-13, 40);
        let components = if inv.disc.is_positive() { 2.0 } else { 1.0 };
        // each real loop contributes 2 int_{e1}^inf dx / sqrt(f)
        components * 2.0 * integral
    }

    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
        let c = (a + b) / 2.0;
        let whole = (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
        fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, whole: f64, depth: u32) -> f64 {
            let c = (a + b) / 2.0;
            let (l, r) = ((a + c) / 2.0, (c + b) / 2.0);
            let left = (c - a) / 6.0 * (f(a) + 4.0 * f(l) + f(c));
            let right = (b - c) / 6.0 * (f(c) + 4.0 * f(r) + f(b));
            if depth == 0 || (left + right - whole).abs() <= 15.0 * eps.max(1e-15 * (left + right).abs()) {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, c, eps / 2.0, left, depth - 1) + rec(f, c, b, eps / 2.0, right, depth - 1)
            }
        }
        rec(f, a, b, eps, whole, depth)
    }

    #[test]
    fn period_matches_quadrature() {
        for c in [
            WeierstrassCurve::e1(),
            WeierstrassCurve::e2(),
            "0,-1,1,-10,-20".parse().unwrap(),
        ] {
            let omega = real_period(&c, P).unwrap();
            let oracle = quadrature_period(&c);
            assert!(
                (omega.to_f64() - oracle).abs() < 1e-9,
                "{c}: {} vs {oracle}",
                omega.to_f64()
            );
        }
    }

    #[test]
    fn period_of_11a1() {
        // negative discriminant branch; tabulated real period 1.26920930427955...
        let c: WeierstrassCurve = "0,-1,1,-10,-20".parse().unwrap();
        let omega = real_period(&c, P).unwrap();
        assert!(omega.to_decimal(14).starts_with("1.26920930427955"));
    }

    #[test]
    fn period_stable_under_doubling() {
        let e1 = WeierstrassCurve::e1();
        let a = real_period(&e1, P).unwrap();
        let b = real_period(&e1, 2 * P).unwrap();
        assert!(a.error_f64() < 1e-20);
        assert!(a.overlaps(&b));
        assert_eq!(a.to_decimal(20), b.to_decimal(20));
    }

    #[test]
    fn e1_ratio_is_one_eighth() {
        let r = l_over_omega(&WeierstrassCurve::e1(), 2000, P, &default_tolerance()).unwrap();
        assert!(r.l_value.value.error_f64() < 1e-12);
        assert!((r.ratio.to_f64() - 0.125).abs() < 1e-8);
        assert_eq!(r.reconstructed.unwrap(), rat(1, 8));
    }

    #[test]
    fn e2_value_positive() {
        let r = l_over_omega(&WeierstrassCurve::e2(), 2000, P, &default_tolerance()).unwrap();
        assert!(r.l_value.value.is_positive());
        // L(E,1) is an isogeny invariant
        let r1 = l_over_omega(&WeierstrassCurve::e1(), 2000, P, &default_tolerance()).unwrap();
        assert!(r.l_value.value.overlaps(&r1.l_value.value));
    }

    #[test]
    fn root_numbers() {
        // 11a1 and 15a1 have rank 0, 37a1 has rank 1
        for (c, w) in [
            ("0,-1,1,-10,-20", 1),
            ("1,1,1,-10,-10", 1),
            ("1,1,1,-5,2", 1),
            ("0,0,1,-1,0", -1),
        ] {
            let s = an_coefficients(&c.parse().unwrap(), 50).unwrap();
            assert_eq!(s.root_number(), w, "{c}");
        }
        let r = l_over_omega(&"0,0,1,-1,0".parse().unwrap(), 200, P, &default_tolerance()).unwrap();
        assert_eq!(r.l_value.root_number, -1);
        assert_eq!(r.reconstructed.unwrap(), Rational::zero());
    }

    #[test]
    fn too_few_terms_is_an_error() {
        let s = an_coefficients(&WeierstrassCurve::e1(), 10).unwrap();
        assert!(matches!(
            l_value_at_1(&s, P, &default_tolerance()),
            Err(Error::InsufficientTerms(_))
        ));
    }

    #[test]
    fn partial_sums_within_tail_bound() {
        let e1 = WeierstrassCurve::e1();
        let loose = rat(1, 1);
        for m in [20usize, 40, 80] {
            let a = l_value_at_1(&an_coefficients(&e1, m).unwrap(), P, &loose).unwrap();
            let b = l_value_at_1(&an_coefficients(&e1, 2 * m).unwrap(), P, &loose).unwrap();
            let gap = (a.value.to_f64() - b.value.to_f64()).abs();
            assert!(gap <= a.tail_bound.to_f64().unwrap() + 1e-30, "M = {m}");
            assert!(a.value.overlaps(&b.value));
        }
    }

    #[test]
    fn reconstruction_examples() {
        let p = 96;
        let ball = |q: Rational, err: Rational| {
            let b = RealApprox::from_rational(&q, p);
            let e = RealApprox::from_rational(&err, p);
            RealApprox::from_parts(b.mid().clone(), b.rad() + e.mid() + 1, p)
        };
        let tenth = |k: u32| Rational::new(BigInt::one(), BigInt::from(10u64).pow(k));
        assert_eq!(
            rational_reconstruct(&ball(rat(1, 8), tenth(10)), 100).unwrap(),
            rat(1, 8)
        );
        let third = ball(
            Rational::new(BigInt::from(3333333333u64), BigInt::from(10u64).pow(10)),
            tenth(8),
        );
        assert_eq!(rational_reconstruct(&third, 100).unwrap(), rat(1, 3));
        assert!(rational_reconstruct(&ball(rat(124, 1000), tenth(2)), 100).is_err());
        assert_eq!(
            rational_reconstruct(&ball(rat(-7, 3), tenth(12)), 100).unwrap(),
            rat(-7, 3)
        );
        assert_eq!(
            rational_reconstruct(&ball(rat(5, 1), tenth(12)), 100).unwrap(),
            rat(5, 1)
        );
    }

    proptest::proptest! {
        #[test]
        fn reconstruction_recovers_small_fractions(n in -500i64..500, d in 1i64..100) {
            let q = rat(n, d);
            let b = RealApprox::from_rational(&q, 64);
            proptest::prop_assert_eq!(rational_reconstruct(&b, 100).unwrap(), q);
        }
    }
}
