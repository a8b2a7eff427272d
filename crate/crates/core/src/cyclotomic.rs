//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! A value is stored as a polynomial in `zeta_n` of degree below `phi(n)`,
//! reduced modulo the cyclotomic polynomial `Phi_n`. Values with different
//! moduli are lifted to the lcm of the moduli before combining. Values are
//! not reduced to their conductor, so `zeta_4` lifted to modulus 8 prints
//! as `zeta_8^2`; equality still compares mathematically.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, gcd, lcm};

/// Coefficient rings usable for cyclotomic values.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> + FromPrimitive
{
}

impl<T> Coefficient for T where
    T: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> + FromPrimitive
{
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<[i64]>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<[i64]>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<[i64]> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let poly: Arc<[i64]> = num.into();
    phi_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert(poly)
        .clone()
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Reduces a polynomial in `zeta_n` modulo `Phi_n`.
fn reduce<R: Coefficient>(n: u64, mut poly: Vec<R>) -> Vec<R> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for d in (deg..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[d], R::zero());
        if c.is_zero() {
            continue;
        }
        for (j, &pj) in phi[..deg].iter().enumerate() {
            if pj != 0 {
                let term = c.clone() * R::from_i64(pj).unwrap();
                poly[d - deg + j] = poly[d - deg + j].clone() - term;
            }
        }
    }
    poly.resize(deg, R::zero());
    poly
}

/// An element of `Q(zeta_n)` (or `R[zeta_n]` for a general coefficient ring).
#[derive(Clone)]
pub struct CyclotomicOver<R> {
    n: u64,
    coeffs: Vec<R>,
}

impl<R: Coefficient> CyclotomicOver<R> {
    /// `sum_k c_k zeta_n^k` for arbitrary integer exponents `k`.
    pub fn from_powers(n: u64, terms: impl IntoIterator<Item = (i64, R)>) -> Self {
        assert!(n >= 1, "modulus must be positive");
        let mut poly = vec![R::zero(); n as usize];
        for (k, c) in terms {
            let k = k.rem_euclid(n as i64) as usize;
            poly[k] = poly[k].clone() + c;
        }
        CyclotomicOver {
            n,
            coeffs: reduce(n, poly),
        }
    }

    /// Builds a value from coefficients already in the reduced basis.
    pub fn from_coeffs(n: u64, coeffs: Vec<R>) -> Option<Self> {
        (n >= 1 && coeffs.len() as u64 == euler_phi(n)).then_some(CyclotomicOver { n, coeffs })
    }

    pub fn root_of_unity(n: u64, k: i64) -> Self {
        Self::from_powers(n, [(k, R::one())])
    }

    pub fn from_rational(r: R) -> Self {
        CyclotomicOver {
            n: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(R::from_i64(k).unwrap())
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Coefficients of `1, zeta_n, ..., zeta_n^(phi(n)-1)`.
    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational, if it is one.
    pub fn to_rational(&self) -> Option<R> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The same value expressed in `Q(zeta_m)`; requires `n | m`.
    pub fn lift(&self, m: u64) -> Self {
        assert!(
            m.is_multiple_of(self.n),
            "cannot lift modulus {} to {}",
            self.n,
            m
        );
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as i64;
        Self::from_powers(
            m,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as i64 * step, c.clone())),
        )
    }

    /// Image under `zeta_n -> zeta_n^k`, an automorphism when `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        debug_assert_eq!(gcd(k.rem_euclid(self.n as i64) as u64, self.n), 1);
        Self::from_powers(
            self.n,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as i64 * k, c.clone())),
        )
    }

    /// Complex conjugate, `zeta_n -> zeta_n^-1`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, r: &R) -> Self {
        CyclotomicOver {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.clone() * r.clone()).collect(),
        }
    }

    fn add_rational(&self, r: &R) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].clone() + r.clone();
        out
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.n, b.n);
        (a.lift(m), b.lift(m))
    }

    fn add_ref(&self, other: &Self) -> Self {
        if let Some(r) = other.to_rational() {
            return self.add_rational(&r);
        }
        if let Some(r) = self.to_rational() {
            return other.add_rational(&r);
        }
        let (a, b) = Self::common(self, other);
        CyclotomicOver {
            n: a.n,
            coeffs: a
                .coeffs
                .into_iter()
                .zip(b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if let Some(r) = other.to_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rational() {
            return other.scale(&r);
        }
        let (a, b) = Self::common(self, other);
        let len = 2 * a.coeffs.len() - 1;
        let mut poly = vec![R::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] = poly[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        CyclotomicOver {
            n: a.n,
            coeffs: reduce(a.n, poly),
        }
    }
}

impl<R: Coefficient> PartialEq for CyclotomicOver<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        match (self.to_rational(), other.to_rational()) {
            (Some(a), Some(b)) => a == b,
            (Some(_), None) | (None, Some(_)) => false,
            (None, None) => {
                let (a, b) = Self::common(self, other);
                a.coeffs == b.coeffs
            }
        }
    }
}

impl<R: Coefficient + Eq> Eq for CyclotomicOver<R> {}

impl<R: Coefficient> Zero for CyclotomicOver<R> {
    fn zero() -> Self {
        Self::from_rational(R::zero())
    }

    fn is_zero(&self) -> bool {
        CyclotomicOver::is_zero(self)
    }
}

impl<R: Coefficient> One for CyclotomicOver<R> {
    fn one() -> Self {
        Self::from_rational(R::one())
    }
}

impl<R: Coefficient> Add<&CyclotomicOver<R>> for &CyclotomicOver<R> {
    type Output = CyclotomicOver<R>;
    fn add(self, rhs: &CyclotomicOver<R>) -> CyclotomicOver<R> {
        self.add_ref(rhs)
    }
}

impl<R: Coefficient> Sub<&CyclotomicOver<R>> for &CyclotomicOver<R> {
    type Output = CyclotomicOver<R>;
    fn sub(self, rhs: &CyclotomicOver<R>) -> CyclotomicOver<R> {
        self.add_ref(&-rhs)
    }
}

impl<R: Coefficient> Mul<&CyclotomicOver<R>> for &CyclotomicOver<R> {
    type Output = CyclotomicOver<R>;
    fn mul(self, rhs: &CyclotomicOver<R>) -> CyclotomicOver<R> {
        self.mul_ref(rhs)
    }
}

impl<R: Coefficient> Neg for &CyclotomicOver<R> {
    type Output = CyclotomicOver<R>;
    fn neg(self) -> CyclotomicOver<R> {
        CyclotomicOver {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<R: Coefficient> Neg for CyclotomicOver<R> {
    type Output = CyclotomicOver<R>;
    fn neg(self) -> CyclotomicOver<R> {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<R: Coefficient> $tr for CyclotomicOver<R> {
            type Output = CyclotomicOver<R>;
            fn $f(self, rhs: CyclotomicOver<R>) -> CyclotomicOver<R> {
                (&self).$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<R: Coefficient> Sum for CyclotomicOver<R> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl<'a, R: Coefficient> Sum<&'a CyclotomicOver<R>> for CyclotomicOver<R> {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + x)
    }
}

impl<R: Coefficient + fmt::Display> fmt::Display for CyclotomicOver<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.n)?,
                _ => write!(f, "({c})*z{}^{j}", self.n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: Coefficient> fmt::Debug for CyclotomicOver<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cyclotomic")
            .field("n", &self.n)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

fn rational_text(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (
            BigInt::from_str(a.trim()).ok()?,
            BigInt::from_str(b.trim()).ok()?,
        ),
        None => (BigInt::from_str(s.trim()).ok()?, BigInt::one()),
    };
    (!den.is_zero()).then(|| BigRational::new(num, den))
}

struct NonzeroCoeffs<'a>(&'a [BigRational]);

impl Serialize for NonzeroCoeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let nonzero: Vec<_> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut map = s.serialize_map(Some(nonzero.len()))?;
        for (j, c) in nonzero {
            map.serialize_entry(&j.to_string(), &rational_text(c))?;
        }
        map.end()
    }
}

impl Serialize for CyclotomicOver<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("c", &NonzeroCoeffs(&self.coeffs))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CyclotomicOver<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n: u64,
            c: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.n == 0 {
            return Err(de::Error::custom("modulus must be positive"));
        }
        let phi = euler_phi(raw.n) as usize;
        let mut coeffs = vec![BigRational::zero(); phi];
        for (k, v) in raw.c {
            let j: usize = k
                .parse()
                .map_err(|_| de::Error::custom(format!("bad basis index {k:?}")))?;
            if j >= phi {
                return Err(de::Error::custom(format!(
                    "basis index {j} out of range for modulus {}",
                    raw.n
                )));
            }
            coeffs[j] = parse_rational(&v)
                .ok_or_else(|| de::Error::custom(format!("bad rational {v:?}")))?;
        }
        Ok(CyclotomicOver { n: raw.n, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyclotomic;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(cyclotomic_polynomial(105).len() as u64, euler_phi(105) + 1);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(4, 2).to_rational(), Some(q(-1, 1)));
        assert_eq!((&z(3, 1) + &z(3, 2)).to_rational(), Some(q(-1, 1)));
        assert_eq!(z(1, 0), Cyclotomic::one());
        assert_eq!(&z(8, 1) * &z(8, 1), z(4, 1));
        assert_eq!(&z(8, 1) * &z(8, 1), z(8, 2));
        let a = &Cyclotomic::one() + &z(3, 1);
        let b = &Cyclotomic::one() + &z(3, 2);
        assert_eq!(&a * &b, Cyclotomic::one());
        assert!((&a * &Cyclotomic::zero()).is_zero());
        assert_eq!(z(5, 1).to_rational(), None);
        assert_eq!(Cyclotomic::zero().to_rational(), Some(q(0, 1)));
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(4, 1).conjugate(), -z(4, 1));
        let r = Cyclotomic::from_rational(q(3, 7));
        assert_eq!(r.conjugate(), r);
        let a = &z(12, 5) + &z(12, 2).scale(&q(2, 3));
        assert_eq!(a.conjugate().conjugate(), a);
        // z + z^-1 is real.
        let re = &z(7, 1) + &z(7, -1);
        assert_eq!(re.conjugate(), re);
    }

    #[test]
    fn mixed_moduli() {
        let a = &z(3, 1) + &z(4, 1);
        assert_eq!(a.modulus(), 12);
        assert_eq!(&a - &z(4, 1), z(3, 1));
        assert_ne!(z(3, 1), z(6, 2).conjugate());
        assert_eq!(z(3, 1), z(6, 2));
    }

    #[test]
    fn integer_coefficients() {
        let a: CyclotomicOver<i64> = CyclotomicOver::root_of_unity(5, 1);
        let s: CyclotomicOver<i64> = (0..5).map(|k| CyclotomicOver::root_of_unity(5, k)).sum();
        assert!(s.is_zero());
        assert_eq!((&a * &a.conjugate()).to_rational(), Some(1));
    }

    #[test]
    fn json_round_trip() {
        let a = &z(8, 3).scale(&q(-5, 2)) + &Cyclotomic::from_rational(q(1, 3));
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"n":8,"c":{"0":"1/3","3":"-5/2"}}"#);
        let back: Cyclotomic = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"n":4,"c":{"2":"1"}}"#).is_err());
        let zero: Cyclotomic = serde_json::from_str(r#"{"n":1,"c":{}}"#).unwrap();
        assert!(zero.is_zero());
    }
}
