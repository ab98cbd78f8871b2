//! Exact arithmetic over real multi-quadratic towers.
//!
//! An [`ExactScalar`] is a finite sum `a_0 + sum_j a_j * sqrt(d_j)` with
//! rational coefficients and distinct square-free radicands `d_j > 1`. The
//! representation is always canonical: products of radicals reduce through
//! `sqrt(d) * sqrt(e) = gcd(d,e) * sqrt(d*e / gcd(d,e)^2)`, coefficients are
//! stored in lowest terms, and zero coefficients are never stored. Since
//! square roots of distinct square-free integers are linearly independent
//! over `Q`, a scalar is zero exactly when it has no stored terms, and signs
//! are decided by refining integer square-root brackets until the enclosing
//! interval excludes zero.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer pair, panicking on zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer square-free test by trial division; radicands are desk-scale.
pub fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn square_free_split(n: u64) -> (u64, u64) {
    // n = outer^2 * inner with inner square-free
    let mut inner = 1u64;
    let mut outer = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            outer *= p.pow(e / 2);
            if e % 2 == 1 {
                inner *= p;
            }
        }
        p += 1;
    }
    inner *= m;
    (outer, inner)
}

/// An exact real scalar in a multi-quadratic tower.
///
/// Key `1` holds the rational part; every other key is a square-free
/// radicand `d > 1` whose value is the coefficient of `sqrt(d)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: BTreeMap<u64, Rational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        ExactScalar::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        ExactScalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::from_rational(Rational::from(BigInt::from(n)))
    }

    /// The scalar `c * sqrt(d)`; `d` must be square-free and `> 1`.
    pub fn radical(d: u64, c: Rational) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::InvalidRadicand(d));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(d, c);
        }
        Ok(ExactScalar { terms })
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Result<Self> {
        ExactScalar::radical(d, Rational::one())
    }

    /// Builds from explicit (radicand, coefficient) terms; radicand 1 is the
    /// rational part. Repeated radicands accumulate.
    pub fn from_terms<I: IntoIterator<Item = (u64, Rational)>>(it: I) -> Result<Self> {
        let mut s = ExactScalar::zero();
        for (d, c) in it {
            if d == 1 {
                s += &ExactScalar::from_rational(c);
            } else {
                s += &ExactScalar::radical(d, c)?;
            }
        }
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the scalar lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    /// The exact rational value, if the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.rational_part())
        } else {
            None
        }
    }

    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(Rational::zero)
    }

    /// Radical terms `(d, coeff)` with `d > 1`, in increasing radicand order.
    pub fn radical_terms(&self) -> Vec<(u64, Rational)> {
        self.terms
            .iter()
            .filter(|(&d, _)| d != 1)
            .map(|(&d, c)| (d, c.clone()))
            .collect()
    }

    /// Coefficient of `sqrt(d)` (of the rational part when `d == 1`).
    pub fn coeff(&self, d: u64) -> Rational {
        self.terms.get(&d).cloned().unwrap_or_else(Rational::zero)
    }

    fn insert_term(terms: &mut BTreeMap<u64, Rational>, d: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(d) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Exact sign: `-1`, `0` or `1`.
    ///
    /// Zero is decided by coefficient vanishing (canonical forms make this
    /// complete); otherwise integer square-root brackets of each radicand are
    /// refined, doubling precision, until the enclosing interval excludes 0.
    pub fn signum(&self) -> i32 {
        if self.terms.is_empty() {
            return 0;
        }
        if self.terms.len() == 1 {
            // single term: sign of its coefficient (sqrt(d) > 0)
            let (_, c) = self.terms.iter().next().unwrap();
            return if c.is_positive() { 1 } else { -1 };
        }
        let mut bits: u32 = 32;
        loop {
            let (lo, hi) = self.bracket(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
            debug_assert!(bits < 1 << 20, "sign refinement runaway");
        }
    }

    /// Rational bracket `[lo, hi]` with `sqrt` terms bounded to `bits` bits.
    fn bracket(&self, bits: u32) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        let scale = BigInt::one() << bits;
        for (&d, c) in &self.terms {
            if d == 1 {
                lo += c;
                hi += c;
                continue;
            }
            // floor(sqrt(d * 4^bits)) / 2^bits <= sqrt(d) <= (floor+1)/2^bits
            let n = BigInt::from(d) << (2 * bits);
            let root = n.sqrt();
            let rlo = Rational::new(root.clone(), scale.clone());
            let rhi = Rational::new(root + 1, scale.clone());
            if c.is_positive() {
                lo += c * &rlo;
                hi += c * &rhi;
            } else {
                lo += c * &rhi;
                hi += c * &rlo;
            }
        }
        (lo, hi)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> ExactScalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact floor. Terminates because a scalar with radical terms is
    /// irrational, so a shrinking bracket eventually avoids all integers.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        let mut bits: u32 = 32;
        loop {
            let (lo, hi) = self.bracket(bits);
            let flo = lo.floor().to_integer();
            let fhi = hi.floor().to_integer();
            if flo == fhi {
                return flo;
            }
            bits *= 2;
            debug_assert!(bits < 1 << 20, "floor refinement runaway");
        }
    }

    /// Nearest integer; exact halves (only possible for rationals) round up.
    pub fn round_nearest(&self) -> BigInt {
        (self + &ExactScalar::from_rational(ratio(1, 2))).floor()
    }

    /// Multiplicative inverse. Rationalises one prime at a time: writing
    /// `x = u + sqrt(p) v` with `u, v` free of the prime `p`,
    /// `1/x = (u - sqrt(p) v) / (u^2 - p v^2)`.
    pub fn inv(&self) -> Result<ExactScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(ExactScalar::from_rational(r.recip()));
        }
        // pick the smallest prime dividing any radicand
        let p = self
            .terms
            .keys()
            .filter(|&&d| d > 1)
            .map(|&d| smallest_prime_factor(d))
            .min()
            .unwrap();
        let mut u = ExactScalar::zero();
        let mut v = ExactScalar::zero();
        for (&d, c) in &self.terms {
            if d % p == 0 {
                let rest = d / p;
                if rest == 1 {
                    Self::insert_term(&mut v.terms, 1, c.clone());
                } else {
                    Self::insert_term(&mut v.terms, rest, c.clone());
                }
            } else {
                Self::insert_term(&mut u.terms, d, c.clone());
            }
        }
        let p_scalar = ExactScalar::from_int(p as i64);
        let norm = &(&u * &u) - &(&p_scalar * &(&v * &v));
        let norm_inv = norm.inv()?;
        let sqrt_p = ExactScalar::sqrt(p)?;
        let conj = &u - &(&sqrt_p * &v);
        Ok(&conj * &norm_inv)
    }

    /// Approximate `f64` value; used only as a search filter, never on a
    /// decision path.
    pub fn to_f64_approx(&self) -> f64 {
        let mut acc = 0.0;
        for (&d, c) in &self.terms {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            if d == 1 {
                acc += cf;
            } else {
                acc += cf * libm::sqrt(d as f64);
            }
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> ExactScalar {
        if r.is_zero() {
            return ExactScalar::zero();
        }
        let mut terms = BTreeMap::new();
        for (&d, c) in &self.terms {
            terms.insert(d, c * r);
        }
        ExactScalar { terms }
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 1;
    }
    n
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self - other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if d == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*sqrt({d})")?;
            }
        }
        Ok(())
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        ExactScalar::from_rational(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        ExactScalar::from_rational(Rational::from(n))
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut terms = self.terms.clone();
        for (&d, c) in &rhs.terms {
            ExactScalar::insert_term(&mut terms, d, c.clone());
        }
        ExactScalar { terms }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let mut terms = self.terms.clone();
        for (&d, c) in &rhs.terms {
            ExactScalar::insert_term(&mut terms, d, -c.clone());
        }
        ExactScalar { terms }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        let mut terms = BTreeMap::new();
        for (&d, c) in &self.terms {
            terms.insert(d, -c.clone());
        }
        ExactScalar { terms }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut terms = BTreeMap::new();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                let c = c1 * c2;
                if d1 == 1 {
                    ExactScalar::insert_term(&mut terms, d2, c);
                } else if d2 == 1 {
                    ExactScalar::insert_term(&mut terms, d1, c);
                } else {
                    // sqrt(d1)*sqrt(d2) = g * sqrt(d1*d2/g^2), g = gcd
                    let g = d1.gcd(&d2);
                    let (extra, inner) = square_free_split((d1 / g) * (d2 / g));
                    debug_assert_eq!(extra, 1, "square-free inputs");
                    let factor = Rational::from(BigInt::from(g));
                    ExactScalar::insert_term(&mut terms, inner.max(1), c * factor);
                }
            }
        }
        ExactScalar { terms }
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        let inv = rhs.inv().expect("division by zero ExactScalar");
        self * &inv
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (&d, c) in &rhs.terms {
            ExactScalar::insert_term(&mut self.terms, d, c.clone());
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        for (&d, c) in &rhs.terms {
            ExactScalar::insert_term(&mut self.terms, d, -c.clone());
        }
    }
}

impl Mul<&Rational> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &Rational) -> ExactScalar {
        self.scale(rhs)
    }
}

/// Formats a rational as `p/q` (or `p` when integral).
pub fn rational_to_string(r: &Rational) -> String {
    use alloc::format;
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p`; used by the IO layer and tests.
pub fn rational_from_str(s: &str) -> Result<Rational> {
    use core::str::FromStr;
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim())
            .map_err(|_| Error::InvalidInput(String::from("bad rational numerator")))?;
        let den = BigInt::from_str(d.trim())
            .map_err(|_| Error::InvalidInput(String::from("bad rational denominator")))?;
        if den.is_zero() {
            return Err(Error::InvalidInput(String::from("zero denominator")));
        }
        Ok(Rational::new(num, den))
    } else {
        let num = BigInt::from_str(s)
            .map_err(|_| Error::InvalidInput(String::from("bad rational")))?;
        Ok(Rational::from(num))
    }
}

/// Sign of a BigInt as -1/0/1.
pub fn int_sign(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn sqrt2() -> ExactScalar {
        ExactScalar::sqrt(2).unwrap()
    }

    #[test]
    fn canonical_zero() {
        let x = &sqrt2() - &sqrt2();
        assert!(x.is_zero());
        assert_eq!(x.signum(), 0);
    }

    #[test]
    fn radicand_validation() {
        assert!(ExactScalar::sqrt(4).is_err());
        assert!(ExactScalar::sqrt(12).is_err());
        assert!(ExactScalar::sqrt(1).is_err());
        assert!(ExactScalar::sqrt(6).is_ok());
    }

    #[test]
    fn product_of_radicals_reduces() {
        let x = &sqrt2() * &ExactScalar::sqrt(3).unwrap();
        assert_eq!(x, ExactScalar::sqrt(6).unwrap());
        let y = &sqrt2() * &sqrt2();
        assert_eq!(y, ExactScalar::from_int(2));
        let z = &ExactScalar::sqrt(6).unwrap() * &ExactScalar::sqrt(10).unwrap();
        // sqrt(6)*sqrt(10) = 2*sqrt(15)
        assert_eq!(
            z,
            ExactScalar::radical(15, Rational::from(BigInt::from(2))).unwrap()
        );
    }

    #[test]
    fn sign_of_small_difference() {
        // 3/2 - sqrt(2) > 0, sqrt(2) - 7/5 > 0
        let a = &ExactScalar::from_rational(ratio(3, 2)) - &sqrt2();
        assert_eq!(a.signum(), 1);
        let b = &sqrt2() - &ExactScalar::from_rational(ratio(7, 5));
        assert_eq!(b.signum(), 1);
        // sqrt(2) + sqrt(3) - sqrt(5) - 0.9 > 0? sqrt2+sqrt3 = 3.146, sqrt5 = 2.236
        let c = ExactScalar::from_terms([
            (2, Rational::one()),
            (3, Rational::one()),
            (5, -Rational::one()),
            (1, ratio(-9, 10)),
        ])
        .unwrap();
        assert_eq!(c.signum(), 1);
    }

    #[test]
    fn inverse_round_trips() {
        let x = ExactScalar::from_terms([
            (1, ratio(1, 3)),
            (2, ratio(-2, 5)),
            (3, ratio(1, 7)),
        ])
        .unwrap();
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, ExactScalar::one());
    }

    #[test]
    fn floor_and_round() {
        assert_eq!(sqrt2().floor(), BigInt::from(1));
        assert_eq!((-&sqrt2()).floor(), BigInt::from(-2));
        assert_eq!(sqrt2().round_nearest(), BigInt::from(1));
        let x = sqrt2().scale(&ratio(5, 1)); // 7.071
        assert_eq!(x.round_nearest(), BigInt::from(7));
        assert_eq!(
            ExactScalar::from_rational(ratio(7, 2)).round_nearest(),
            BigInt::from(4)
        );
    }

    fn random_scalar(rng: &mut StdRng) -> ExactScalar {
        let rads = [1u64, 2, 3, 5, 6];
        let mut s = ExactScalar::zero();
        for &d in &rads {
            if rng.gen_bool(0.6) {
                let num = rng.gen_range(-6i64..=6);
                let den = rng.gen_range(1i64..=5);
                let term = if d == 1 {
                    ExactScalar::from_rational(ratio(num, den))
                } else {
                    ExactScalar::radical(d, ratio(num, den)).unwrap()
                };
                s += &term;
            }
        }
        s
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let a = random_scalar(&mut rng);
            let b = random_scalar(&mut rng);
            let c = random_scalar(&mut rng);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                assert_eq!(&a * &a.inv().unwrap(), ExactScalar::one());
            }
        }
    }

    #[test]
    fn sign_multiplicativity_random() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = random_scalar(&mut rng);
            let b = random_scalar(&mut rng);
            assert_eq!(a.signum() * b.signum(), (&a * &b).signum());
        }
    }

    #[test]
    fn ordering_consistent() {
        let a = sqrt2();
        let b = ExactScalar::from_rational(ratio(3, 2));
        assert!(a < b);
        assert!(ExactScalar::from_rational(ratio(7, 5)) < a);
    }
}
