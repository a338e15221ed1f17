//! Exact arithmetic in the cyclotomic field Q(ζ_p) for an odd prime p.
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{p-2}; the relation
//! 1 + ζ + … + ζ^{p-1} = 0 is applied eagerly, so equality is coefficientwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{fmt_q, fmt_q_slash, parse_q, Q};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks `p` is an odd prime.
pub fn check_prime(p: u64) -> Result<()> {
    if p >= 3 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    prime: u64,
    coeffs: Vec<Q>,
}

impl Cyclo {
    pub fn zero(p: u64) -> Self {
        Cyclo {
            prime: p,
            coeffs: vec![Q::zero(); (p - 1) as usize],
        }
    }

    pub fn one(p: u64) -> Self {
        Self::from_q(Q::one(), p)
    }

    fn from_q(v: Q, p: u64) -> Self {
        let mut c = Self::zero(p);
        c.coeffs[0] = v;
        c
    }

    /// Constant-term embedding of a rational.
    pub fn embed_rational(v: Q, p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::from_q(v, p))
    }

    /// ζ^k, any integer k.
    pub fn zeta_pow(k: i64, p: u64) -> Self {
        let e = k.rem_euclid(p as i64) as usize;
        let mut c = Self::zero(p);
        let last = (p - 1) as usize;
        if e == last {
            for v in c.coeffs.iter_mut() {
                *v = -Q::one();
            }
        } else {
            c.coeffs[e] = Q::one();
        }
        c
    }

    /// Builds an element from coordinates in the basis 1, ζ, …, ζ^{p-2}.
    pub fn from_coeffs(p: u64, coeffs: Vec<Q>) -> Result<Self> {
        check_prime(p)?;
        if coeffs.len() != (p - 1) as usize {
            return Err(Error::Json(format!(
                "expected {} coefficients for p = {p}, got {}",
                p - 1,
                coeffs.len()
            )));
        }
        Ok(Cyclo { prime: p, coeffs })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Q> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.prime, other.prime))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.prime, other.prime, "prime mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign_ref(other);
        r
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if let Some(a) = self.as_rational() {
            return other.scale(a);
        }
        if let Some(b) = other.as_rational() {
            return self.scale(b);
        }
        let p = self.prime as usize;
        // Fold exponents mod p, then eliminate ζ^{p-1}.
        let mut acc = vec![Q::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % p] += a * b;
                }
            }
        }
        let top = acc.pop().unwrap();
        if !top.is_zero() {
            for v in acc.iter_mut() {
                *v -= &top;
            }
        }
        Cyclo {
            prime: self.prime,
            coeffs: acc,
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(self.prime);
        }
        Cyclo {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(a) = self.as_rational() {
            return Some(Self::from_q(Q::one() / a, self.prime));
        }
        // Column j of the multiplication matrix is self * ζ^j.
        let n = (self.prime - 1) as usize;
        let cols: Vec<Cyclo> = (0..n)
            .map(|j| self.mul_unchecked(&Self::zeta_pow(j as i64, self.prime)))
            .collect();
        let m: linalg::Matrix = (0..n)
            .map(|i| cols.iter().map(|c| c.coeffs[i].clone()).collect())
            .collect();
        let mut e0 = vec![Q::zero(); n];
        e0[0] = Q::one();
        let x = linalg::solve(&m, &e0)?;
        Some(Cyclo {
            prime: self.prime,
            coeffs: x,
        })
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let mut acc = Self::zero(self.prime);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc.add_assign_ref(&Self::zeta_pow(-(k as i64), self.prime).scale(c));
            }
        }
        acc
    }

    /// Complex approximation, for display only.
    pub fn approx(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let p = self.prime as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / p;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

/// ψ_λ(a) = ζ^{λ a}.
pub fn psi(a: i64, lambda: i64, p: u64) -> Result<Cyclo> {
    check_prime(p)?;
    if lambda.rem_euclid(p as i64) == 0 {
        return Err(Error::DegenerateCharacter(p));
    }
    let e = (a.rem_euclid(p as i64) * lambda.rem_euclid(p as i64)) % p as i64;
    Ok(Cyclo::zeta_pow(e, p))
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        self.try_add(rhs).expect("prime mismatch")
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self.try_sub(rhs).expect("prime mismatch")
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        self.try_mul(rhs).expect("prime mismatch")
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Q::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_q(&mag))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[p={}]({})", self.prime, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    prime: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloWire {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(fmt_q_slash).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CycloWire::deserialize(d)?;
        let coeffs = w
            .coeffs
            .iter()
            .map(|c| parse_q(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Cyclo::from_coeffs(w.prime, coeffs).map_err(D::Error::custom)
    }
}
