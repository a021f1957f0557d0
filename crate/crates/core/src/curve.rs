//! Long Weierstrass models `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`,
//! their invariants, the group law over Q and F_p, isomorphisms over Q and
//! degree-2 isogenies.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{self, inv_mod, mul_mod, rat_from_int, Integer, Rational};
use crate::error::{domain, Error, Result};

/// Field operations needed by the group law.
pub trait BaseField: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn from_int(&self, n: &Integer) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn zero(&self) -> Self::Elem {
        self.from_int(&BigInt::zero())
    }
    fn small(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl BaseField for Rationals {
    type Elem = Rational;

    fn from_int(&self, n: &Integer) -> Rational {
        rat_from_int(n)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// The prime field F_p with elements stored as reduced `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(Self { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

impl BaseField for PrimeField {
    type Elem = u64;

    fn from_int(&self, n: &Integer) -> u64 {
        arith::reduce(n, self.p)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// A point on a curve: the point at infinity or an affine pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

impl<E> Point<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl Point<Rational> {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::Affine(arith::rat(x, 1), arith::rat(y, 1))
    }
}

impl<E: fmt::Display> fmt::Display for Point<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// Standard quantities attached to a Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BInvariants<E> {
    pub b2: E,
    pub b4: E,
    pub b6: E,
    pub b8: E,
    pub c4: E,
    pub c6: E,
    pub disc: E,
}

fn b_invariants<K: BaseField>(k: &K, a: &[K::Elem; 5]) -> BInvariants<K::Elem> {
    let [a1, a2, a3, a4, a6] = a;
    let s = |n| k.small(n);
    let b2 = k.add(&k.mul(a1, a1), &k.mul(&s(4), a2));
    let b4 = k.add(&k.mul(&s(2), a4), &k.mul(a1, a3));
    let b6 = k.add(&k.mul(a3, a3), &k.mul(&s(4), a6));
    // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
    let b8 = {
        let t1 = k.mul(&k.mul(a1, a1), a6);
        let t2 = k.mul(&s(4), &k.mul(a2, a6));
        let t3 = k.mul(&k.mul(a1, a3), a4);
        let t4 = k.mul(a2, &k.mul(a3, a3));
        let t5 = k.mul(a4, a4);
        k.sub(&k.add(&k.sub(&k.add(&t1, &t2), &t3), &t4), &t5)
    };
    let c4 = k.sub(&k.mul(&b2, &b2), &k.mul(&s(24), &b4));
    let c6 = k.add(
        &k.neg(&k.mul(&b2, &k.mul(&b2, &b2))),
        &k.sub(&k.mul(&s(36), &k.mul(&b2, &b4)), &k.mul(&s(216), &b6)),
    );
    // disc = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    let disc = {
        let t1 = k.mul(&k.mul(&b2, &b2), &b8);
        let t2 = k.mul(&s(8), &k.mul(&b4, &k.mul(&b4, &b4)));
        let t3 = k.mul(&s(27), &k.mul(&b6, &b6));
        let t4 = k.mul(&s(9), &k.mul(&b2, &k.mul(&b4, &b6)));
        k.add(&k.neg(&k.add(&k.add(&t1, &t2), &t3)), &t4)
    };
    BInvariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        c6,
        disc,
    }
}

/// A Weierstrass model with coefficients in an arbitrary base field.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveModel<K: BaseField> {
    pub field: K,
    pub a: [K::Elem; 5],
}

impl<K: BaseField> CurveModel<K> {
    pub fn new(field: K, a: [K::Elem; 5]) -> Self {
        Self { field, a }
    }

    pub fn b_invariants(&self) -> BInvariants<K::Elem> {
        b_invariants(&self.field, &self.a)
    }

    pub fn is_singular(&self) -> bool {
        self.field.is_zero(&self.b_invariants().disc)
    }

    /// Left side minus right side of the curve equation at `(x, y)`.
    fn equation(&self, x: &K::Elem, y: &K::Elem) -> K::Elem {
        let k = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = k.add(&k.mul(y, y), &k.add(&k.mul(&k.mul(a1, x), y), &k.mul(a3, y)));
        let x2 = k.mul(x, x);
        let rhs = k.add(&k.add(&k.mul(&x2, x), &k.mul(a2, &x2)), &k.add(&k.mul(a4, x), a6));
        k.sub(&lhs, &rhs)
    }

    pub fn is_on_curve(&self, p: &Point<K::Elem>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => self.field.is_zero(&self.equation(x, y)),
        }
    }

    fn check(&self, p: &Point<K::Elem>) -> Result<()> {
        if self.is_on_curve(p) {
            Ok(())
        } else {
            domain(format!("point {p:?} is not on the curve"))
        }
    }

    fn neg_unchecked(&self, p: &Point<K::Elem>) -> Point<K::Elem> {
        let k = &self.field;
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let [a1, _, a3, _, _] = &self.a;
                let ny = k.sub(&k.neg(y), &k.add(&k.mul(a1, x), a3));
                Point::Affine(x.clone(), ny)
            }
        }
    }

    fn add_unchecked(&self, p: &Point<K::Elem>, q: &Point<K::Elem>) -> Point<K::Elem> {
        let k = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if x1 != x2 {
            let dx = k.inv(&k.sub(x2, x1)).expect("distinct x");
            let lambda = k.mul(&k.sub(y2, y1), &dx);
            let nu = k.mul(&k.sub(&k.mul(y1, x2), &k.mul(y2, x1)), &dx);
            (lambda, nu)
        } else {
            // same x: either Q = -P or Q = P
            if y1 != y2 {
                return Point::Infinity;
            }
            let denom = k.add(&k.add(&k.mul(&k.small(2), y1), &k.mul(a1, x1)), a3);
            let Some(inv) = k.inv(&denom) else {
                return Point::Infinity;
            };
            let x1sq = k.mul(x1, x1);
            let num = k.sub(
                &k.add(
                    &k.add(&k.mul(&k.small(3), &x1sq), &k.mul(&k.small(2), &k.mul(a2, x1))),
                    a4,
                ),
                &k.mul(a1, y1),
            );
            let lambda = k.mul(&num, &inv);
            let x1cu = k.mul(&x1sq, x1);
            let num_nu = k.sub(
                &k.add(&k.sub(&k.mul(a4, x1), &x1cu), &k.mul(&k.small(2), a6)),
                &k.mul(a3, y1),
            );
            let nu = k.mul(&num_nu, &inv);
            (lambda, nu)
        };
        let x3 = k.sub(
            &k.sub(&k.add(&k.mul(&lambda, &lambda), &k.mul(a1, &lambda)), a2),
            &k.add(x1, x2),
        );
        let y3 = k.sub(&k.sub(&k.mul(&k.neg(&k.add(&lambda, a1)), &x3), &nu), a3);
        Point::Affine(x3, y3)
    }

    pub fn negate(&self, p: &Point<K::Elem>) -> Result<Point<K::Elem>> {
        self.check(p)?;
        Ok(self.neg_unchecked(p))
    }

    pub fn add(&self, p: &Point<K::Elem>, q: &Point<K::Elem>) -> Result<Point<K::Elem>> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    /// `n * P` by double-and-add; negative `n` multiplies `-P`.
    pub fn multiply(&self, p: &Point<K::Elem>, n: i64) -> Result<Point<K::Elem>> {
        self.check(p)?;
        let base = if n < 0 { self.neg_unchecked(p) } else { p.clone() };
        let mut m = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut pow = base;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            m >>= 1;
            if m > 0 {
                pow = self.add_unchecked(&pow, &pow);
            }
        }
        Ok(acc)
    }
}

/// Invariants of an integral model over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Integer,
    pub b4: Integer,
    pub b6: Integer,
    pub b8: Integer,
    pub c4: Integer,
    pub c6: Integer,
    pub disc: Integer,
    pub j: Rational,
}

/// An elliptic curve over Q given by an integral long Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    coeffs: [Integer; 5],
}

impl WeierstrassCurve {
    /// Builds the curve `[a1, a2, a3, a4, a6]`, rejecting singular models.
    pub fn new(coeffs: [Integer; 5]) -> Result<Self> {
        let bi = b_invariants(&Rationals, &coeffs.clone().map(|c| rat_from_int(&c)));
        if bi.disc.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(BigInt::from))
    }

    /// `y^2 + xy + y = x^3 + x^2 - 10x - 10`.
    pub fn e1() -> Self {
        Self::from_ints([1, 1, 1, -10, -10]).expect("nonsingular")
    }

    /// `y^2 + xy + y = x^3 + x^2 - 5x + 2`.
    pub fn e2() -> Self {
        Self::from_ints([1, 1, 1, -5, 2]).expect("nonsingular")
    }

    pub fn coeffs(&self) -> &[Integer; 5] {
        &self.coeffs
    }

    pub fn invariants(&self) -> Invariants {
        let bi = b_invariants(&Rationals, &self.coeffs.clone().map(|c| rat_from_int(&c)));
        let int = |r: Rational| r.to_integer();
        let j = BigRational::new(num_traits::pow(bi.c4.to_integer(), 3), bi.disc.to_integer());
        Invariants {
            b2: int(bi.b2),
            b4: int(bi.b4),
            b6: int(bi.b6),
            b8: int(bi.b8),
            c4: int(bi.c4),
            c6: int(bi.c6),
            disc: int(bi.disc),
            j,
        }
    }

    pub fn discriminant(&self) -> Integer {
        self.invariants().disc
    }

    /// The model with coefficients viewed in Q.
    pub fn model(&self) -> CurveModel<Rationals> {
        CurveModel::new(Rationals, self.coeffs.clone().map(|c| rat_from_int(&c)))
    }

    pub fn is_on_curve(&self, p: &Point<Rational>) -> bool {
        self.model().is_on_curve(p)
    }

    /// Sufficient criterion for minimality at `p`: `v_p(disc) < 12` or `v_p(c4) < 4`.
    pub fn minimality_certified(&self, p: u64) -> bool {
        let inv = self.invariants();
        let vd = arith::valuation(&inv.disc, p).unwrap_or(u32::MAX);
        let vc = if inv.c4.is_zero() {
            u32::MAX
        } else {
            arith::valuation(&inv.c4, p).unwrap_or(u32::MAX)
        };
        vd < 12 || vc < 4
    }

    /// Reduction modulo a prime of good reduction.
    pub fn reduce_mod_p(&self, p: u64) -> Result<CurveModel<PrimeField>> {
        let field = PrimeField::new(p)?;
        if (self.discriminant() % BigInt::from(p)).is_zero() {
            return Err(Error::BadReduction(p));
        }
        Ok(CurveModel::new(field, self.coeffs.clone().map(|c| field.from_int(&c))))
    }

    /// Reduce a rational point modulo `p`; points whose coordinates are not
    /// p-integral reduce to infinity.
    pub fn reduce_point(&self, p: u64, pt: &Point<Rational>) -> Result<Point<u64>> {
        let field = PrimeField::new(p)?;
        match pt {
            Point::Infinity => Ok(Point::Infinity),
            Point::Affine(x, y) => {
                let bp = BigInt::from(p);
                if (x.denom() % &bp).is_zero() || (y.denom() % &bp).is_zero() {
                    return Ok(Point::Infinity);
                }
                let red = |r: &Rational| {
                    let d = field.from_int(r.denom());
                    field.mul(&field.from_int(r.numer()), &field.inv(&d).expect("unit"))
                };
                Ok(Point::Affine(red(x), red(y)))
            }
        }
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.coeffs;
        write!(f, "{a1},{a2},{a3},{a4},{a6}")
    }
}

impl FromStr for WeierstrassCurve {
    type Err = Error;

    /// Parses `a1,a2,a3,a4,a6`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(Error::Parse(format!(
                "expected 5 comma-separated coefficients, got {}",
                parts.len()
            )));
        }
        let mut coeffs: [Integer; 5] = Default::default();
        for (c, part) in coeffs.iter_mut().zip(&parts) {
            *c = arith::parse_integer(part)?;
        }
        Self::new(coeffs)
    }
}

/// The change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveIsomorphism {
    pub u: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl CurveIsomorphism {
    pub fn identity() -> Self {
        let z = Rational::zero();
        Self {
            u: Rational::one(),
            r: z.clone(),
            s: z.clone(),
            t: z,
        }
    }

    pub fn scaling(u: Rational) -> Self {
        Self { u, ..Self::identity() }
    }

    /// Coefficients of the transformed model.
    pub fn apply(&self, a: &[Rational; 5]) -> [Rational; 5] {
        let [a1, a2, a3, a4, a6] = a;
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let two = arith::rat(2, 1);
        let three = arith::rat(3, 1);
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let n1 = a1 + &two * s;
        let n2 = a2 - s * a1 + &three * r - s * s;
        let n3 = a3 + r * a1 + &two * t;
        let n4 = a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        [n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6]
    }

    /// Image of a point under the change of variables.
    pub fn map_point(&self, p: &Point<Rational>) -> Point<Rational> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = &self.u * &self.u;
                let xp = (x - &self.r) / &u2;
                let yp = (y - &self.s * &u2 * &xp - &self.t) / (&u2 * &self.u);
                Point::Affine(xp, yp)
            }
        }
    }
}

fn j_of(a: &[Rational; 5]) -> Option<Rational> {
    let bi = b_invariants(&Rationals, a);
    if bi.disc.is_zero() {
        return None;
    }
    Some(&bi.c4 * &bi.c4 * &bi.c4 / &bi.disc)
}

/// An isomorphism over Q carrying model `a` to model `b`, if one exists.
pub fn isomorphism_over_q(a: &[Rational; 5], b: &[Rational; 5]) -> Option<CurveIsomorphism> {
    if j_of(a)? != j_of(b)? {
        return None;
    }
    let da = b_invariants(&Rationals, a).disc;
    let db = b_invariants(&Rationals, b).disc;
    let root = arith::rational_nth_root(&(da / db), 12)?;
    let two = arith::rat(2, 1);
    let three = arith::rat(3, 1);
    for u in [root.clone(), -root] {
        let s = (&u * &b[0] - &a[0]) / &two;
        let r = (&u * &u * &b[1] - &a[1] + &s * &a[0] + &s * &s) / &three;
        let t = (&u * &u * &u * &b[2] - &a[2] - &r * &a[0]) / &two;
        let iso = CurveIsomorphism { u, r, s, t };
        if iso.apply(a) == *b {
            return Some(iso);
        }
    }
    None
}

/// Isomorphism between two integral curves over Q.
pub fn curves_isomorphic(c1: &WeierstrassCurve, c2: &WeierstrassCurve) -> Option<CurveIsomorphism> {
    isomorphism_over_q(&c1.model().a, &c2.model().a)
}

/// A separable isogeny of degree 2 from Velu's formulas.
#[derive(Debug, Clone)]
pub struct TwoIsogeny {
    pub domain: WeierstrassCurve,
    pub kernel: Point<Rational>,
    /// Velu's quantities `t = v_K` and `w = x_K v_K`.
    pub t: Rational,
    pub w: Rational,
    /// The codomain exactly as Velu's formulas produce it (rational coefficients).
    pub raw_codomain: [Rational; 5],
    /// Scaling from the raw codomain to `codomain`.
    pub to_integral: CurveIsomorphism,
    pub codomain: WeierstrassCurve,
}

impl TwoIsogeny {
    /// Image of a point on the domain in the raw codomain.
    pub fn map_point_raw(&self, p: &Point<Rational>) -> Point<Rational> {
        let Point::Affine(x, y) = p else {
            return Point::Infinity;
        };
        let Point::Affine(xk, yk) = &self.kernel else {
            unreachable!("kernel is affine")
        };
        if x == xk {
            return Point::Infinity;
        }
        let a1 = rat_from_int(&self.domain.coeffs[0]);
        let dx = x - xk;
        let v = &self.t;
        let nx = x + v / &dx;
        let ny = y - v * (&a1 * &dx + y - yk) / (&dx * &dx);
        Point::Affine(nx, ny)
    }

    /// Image of a point in the integral codomain.
    pub fn map_point(&self, p: &Point<Rational>) -> Point<Rational> {
        self.to_integral.map_point(&self.map_point_raw(p))
    }
}

/// Smallest `m > 0` with `m^i a_i` integral for the weights `1, 2, 3, 4, 6`.
fn integral_scale(a: &[Rational; 5]) -> Integer {
    const WEIGHTS: [u32; 5] = [1, 2, 3, 4, 6];
    let mut primes: Vec<u64> = a
        .iter()
        .flat_map(|c| arith::factor(c.denom()))
        .map(|(p, _)| p)
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let mut m = BigInt::one();
    for p in primes {
        let e = a
            .iter()
            .zip(WEIGHTS)
            .map(|(c, w)| arith::valuation(c.denom(), p).unwrap().div_ceil(w))
            .max()
            .unwrap_or(0);
        m *= num_traits::pow(BigInt::from(p), e as usize);
    }
    m
}

/// Velu's formulas for the quotient by a rational point of order 2.
pub fn velu_2_isogeny(c: &WeierstrassCurve, kernel: &Point<Rational>) -> Result<TwoIsogeny> {
    let model = c.model();
    if !model.is_on_curve(kernel) {
        return domain(format!("kernel point {kernel} is not on the curve"));
    }
    let Point::Affine(xk, yk) = kernel else {
        return domain("kernel point must be affine");
    };
    if !model.multiply(kernel, 2)?.is_infinity() {
        return domain(format!("kernel point {kernel} does not have order 2"));
    }
    let [a1, a2, a3, a4, a6] = &model.a;
    let b2 = model.b_invariants().b2;
    let gx = arith::rat(3, 1) * xk * xk + arith::rat(2, 1) * a2 * xk + a4 - a1 * yk;
    let t = gx;
    let w = xk * &t;
    let raw = [
        a1.clone(),
        a2.clone(),
        a3.clone(),
        a4 - arith::rat(5, 1) * &t,
        a6 - &b2 * &t - arith::rat(7, 1) * &w,
    ];
    let m = integral_scale(&raw);
    let to_integral = CurveIsomorphism::scaling(BigRational::new(BigInt::one(), m));
    let scaled = to_integral.apply(&raw);
    debug_assert!(scaled.iter().all(|c| c.is_integer()));
    let codomain = WeierstrassCurve::new(scaled.map(|c| c.to_integer()))?;
    Ok(TwoIsogeny {
        domain: c.clone(),
        kernel: kernel.clone(),
        t,
        w,
        raw_codomain: raw,
        to_integral,
        codomain,
    })
}

/// Rational points of order 2: roots of `4x^3 + b2 x^2 + 2 b4 x + b6` with
/// `y = -(a1 x + a3) / 2`. Sorted by x.
pub fn rational_two_torsion(c: &WeierstrassCurve) -> Vec<Point<Rational>> {
    let inv = c.invariants();
    // 16 * (4x^3 + b2 x^2 + 2 b4 x + b6) in u = 4x is monic:
    // u^3 + b2 u^2 + 8 b4 u + 16 b6.
    let coeffs = [
        BigInt::from(16) * &inv.b6,
        BigInt::from(8) * &inv.b4,
        inv.b2.clone(),
        BigInt::one(),
    ];
    let mut roots = integer_roots(&coeffs);
    roots.sort();
    let [a1, _, a3, _, _] = c.coeffs();
    roots
        .into_iter()
        .map(|u| {
            let x = BigRational::new(u, BigInt::from(4));
            let y = -(rat_from_int(a1) * &x + rat_from_int(a3)) / arith::rat(2, 1);
            Point::Affine(x, y)
        })
        .collect()
}

/// Distinct integer roots of the polynomial `sum coeffs[i] x^i`, which must
/// have leading coefficient 1.
pub fn integer_roots(coeffs: &[Integer]) -> Vec<Integer> {
    let eval = |x: &Integer| coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
    let mut roots = Vec::new();
    let lowest = coeffs.iter().position(|c| !c.is_zero());
    let Some(lowest) = lowest else { return roots };
    if lowest > 0 {
        roots.push(BigInt::zero());
    }
    let c0 = &coeffs[lowest];
    for d in arith::divisors(c0) {
        for cand in [d.clone(), -d] {
            if eval(&cand).is_zero() && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
    }
    roots
}
