//! Trace-function model of the quotient categories E(X).
//!
//! An object over a finite set X is a table X × F_p → Q(ζ_p). Two tables
//! define the same class when they differ by a function of x alone; the
//! mean-zero representative (`canonical_rep`) is the normal form used for
//! every equality test.
//!
//! On finite sets `f_*` coincides with `f_!` and `f^!` with `f^*`, and the
//! `*`- and `!`-convolutions agree, so each pair is implemented once.

mod functors;
mod fourier;

pub use functors::*;
pub use fourier::*;

use num_traits::Zero;
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::{check_prime, Cyclo};
use crate::error::{Error, Result};
use crate::rat::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    size: usize,
}

impl FiniteSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidMap("finite sets are nonempty".into()));
        }
        Ok(FiniteSet { size })
    }

    pub fn point() -> Self {
        FiniteSet { size: 1 }
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMap {
    source: FiniteSet,
    target: FiniteSet,
    table: Vec<usize>,
}

impl FiniteMap {
    pub fn new(source: FiniteSet, target: FiniteSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.size {
            return Err(Error::InvalidMap(format!(
                "table has {} entries for a source of size {}",
                table.len(),
                source.size
            )));
        }
        if let Some(bad) = table.iter().find(|&&y| y >= target.size) {
            return Err(Error::InvalidMap(format!(
                "entry {bad} outside target of size {}",
                target.size
            )));
        }
        Ok(FiniteMap {
            source,
            target,
            table,
        })
    }

    pub fn from_fn(source: FiniteSet, target: FiniteSet, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(source, target, (0..source.size).map(f).collect())
    }

    pub fn identity(x: FiniteSet) -> Self {
        FiniteMap {
            source: x,
            target: x,
            table: (0..x.size).collect(),
        }
    }

    pub fn constant(source: FiniteSet, target: FiniteSet, y: usize) -> Result<Self> {
        Self::new(source, target, vec![y; source.size])
    }

    pub fn to_point(source: FiniteSet) -> Self {
        FiniteMap {
            source,
            target: FiniteSet::point(),
            table: vec![0; source.size],
        }
    }

    pub fn source(&self) -> FiniteSet {
        self.source
    }

    pub fn target(&self) -> FiniteSet {
        self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FiniteMap) -> Result<FiniteMap> {
        if self.target != other.source {
            return Err(Error::InvalidMap("composition of incompatible maps".into()));
        }
        Ok(FiniteMap {
            source: self.source,
            target: other.target,
            table: self.table.iter().map(|&y| other.table[y]).collect(),
        })
    }

    pub fn random<R: Rng>(rng: &mut R, source: FiniteSet, target: FiniteSet) -> Self {
        FiniteMap {
            source,
            target,
            table: (0..source.size).map(|_| rng.gen_range(0..target.size)).collect(),
        }
    }
}

/// The cartesian square of `f: X → Y` and `g: Y' → Y`.
#[derive(Debug, Clone)]
pub struct FiberSquare {
    /// X' → Y'
    pub f_prime: FiniteMap,
    /// X' → X
    pub g_prime: FiniteMap,
}

pub fn fiber_product(f: &FiniteMap, g: &FiniteMap) -> Result<Option<FiberSquare>> {
    if f.target != g.target {
        return Err(Error::InvalidMap("fiber product over different targets".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..f.source.size)
        .flat_map(|x| (0..g.source.size).map(move |yp| (x, yp)))
        .filter(|&(x, yp)| f.table[x] == g.table[yp])
        .collect();
    if pairs.is_empty() {
        return Ok(None);
    }
    let xp = FiniteSet::new(pairs.len())?;
    Ok(Some(FiberSquare {
        f_prime: FiniteMap::new(xp, g.source, pairs.iter().map(|p| p.1).collect())?,
        g_prime: FiniteMap::new(xp, f.source, pairs.iter().map(|p| p.0).collect())?,
    }))
}

/// A table X × F_p → Q(ζ_p), stored row-major by x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpObject {
    base: FiniteSet,
    prime: u64,
    values: Vec<Cyclo>,
}

impl ExpObject {
    pub fn zero(base: FiniteSet, prime: u64) -> Result<Self> {
        check_prime(prime)?;
        Ok(ExpObject {
            base,
            prime,
            values: vec![Cyclo::zero(prime); base.size * prime as usize],
        })
    }

    pub fn from_fn(
        base: FiniteSet,
        prime: u64,
        mut f: impl FnMut(usize, usize) -> Cyclo,
    ) -> Result<Self> {
        check_prime(prime)?;
        let p = prime as usize;
        let mut values = Vec::with_capacity(base.size * p);
        for x in 0..base.size {
            for t in 0..p {
                let v = f(x, t);
                if v.prime() != prime {
                    return Err(Error::PrimeMismatch(prime, v.prime()));
                }
                values.push(v);
            }
        }
        Ok(ExpObject {
            base,
            prime,
            values,
        })
    }

    /// Rational-valued table.
    pub fn from_rational_fn(
        base: FiniteSet,
        prime: u64,
        mut f: impl FnMut(usize, usize) -> Q,
    ) -> Result<Self> {
        Self::from_fn(base, prime, |x, t| {
            Cyclo::embed_rational(f(x, t), prime).expect("prime checked")
        })
    }

    /// δ at (x0, t0).
    pub fn delta(base: FiniteSet, prime: u64, x0: usize, t0: usize) -> Result<Self> {
        let mut h = Self::zero(base, prime)?;
        *h.at_mut(x0, t0) = Cyclo::one(prime);
        Ok(h)
    }

    pub fn base(&self) -> FiniteSet {
        self.base
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn at(&self, x: usize, t: usize) -> &Cyclo {
        &self.values[x * self.prime as usize + t]
    }

    pub fn at_mut(&mut self, x: usize, t: usize) -> &mut Cyclo {
        let p = self.prime as usize;
        &mut self.values[x * p + t]
    }

    pub fn row(&self, x: usize) -> &[Cyclo] {
        let p = self.prime as usize;
        &self.values[x * p..(x + 1) * p]
    }

    pub fn add(&self, other: &ExpObject) -> Result<ExpObject> {
        self.compatible(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ExpObject {
            values,
            ..self.clone_shape()
        })
    }

    pub fn scale(&self, s: &Q) -> ExpObject {
        ExpObject {
            values: self.values.iter().map(|v| v.scale(s)).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> ExpObject {
        ExpObject {
            base: self.base,
            prime: self.prime,
            values: Vec::new(),
        }
    }

    pub(crate) fn compatible(&self, other: &ExpObject) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.base != other.base {
            return Err(Error::BaseMismatch(format!(
                "{} vs {}",
                self.base.size, other.base.size
            )));
        }
        Ok(())
    }

    /// Adds the t-independent function `g(x)`; the class is unchanged.
    pub fn add_pullback_from_base(&self, g: &[Cyclo]) -> Result<ExpObject> {
        if g.len() != self.base.size {
            return Err(Error::BaseMismatch("function length".into()));
        }
        let p = self.prime as usize;
        let mut out = self.clone();
        for (i, v) in out.values.iter_mut().enumerate() {
            v.add_assign_ref(&g[i / p]);
        }
        Ok(out)
    }

    /// Random table with small rational coordinates in Q(ζ_p).
    pub fn random<R: Rng>(rng: &mut R, base: FiniteSet, prime: u64, density: f64) -> Result<Self> {
        Self::from_fn(base, prime, |_, _| random_cyclo(rng, prime, density))
    }
}

pub fn random_cyclo<R: Rng>(rng: &mut R, prime: u64, density: f64) -> Cyclo {
    let coeffs = (0..prime - 1)
        .map(|_| {
            if rng.gen_bool(density) {
                crate::rat::qf(rng.gen_range(-5..6), rng.gen_range(1..4))
            } else {
                Q::zero()
            }
        })
        .collect();
    Cyclo::from_coeffs(prime, coeffs).expect("valid prime")
}

/// h(x,t) − (1/p) Σ_s h(x,s): the mean-zero representative of the class.
pub fn canonical_rep(h: &ExpObject) -> ExpObject {
    let p = h.prime as usize;
    let inv_p = Q::new(1.into(), (h.prime as i64).into());
    let mut out = h.clone();
    for x in 0..h.base.size {
        let row = h.row(x);
        let mut mean = Cyclo::zero(h.prime);
        for v in row {
            mean.add_assign_ref(v);
        }
        if mean.is_zero() {
            continue;
        }
        let mean = -&mean.scale(&inv_p);
        for v in &mut out.values[x * p..(x + 1) * p] {
            v.add_assign_ref(&mean);
        }
    }
    out
}

/// An object of E(X): any representative table, compared through
/// `canonical_rep`.
#[derive(Debug, Clone)]
pub struct ExpClass {
    rep: ExpObject,
}

impl ExpClass {
    pub fn new(rep: ExpObject) -> Self {
        ExpClass { rep }
    }

    pub fn rep(&self) -> &ExpObject {
        &self.rep
    }

    pub fn into_rep(self) -> ExpObject {
        self.rep
    }

    pub fn canonical(&self) -> ExpObject {
        canonical_rep(&self.rep)
    }

    pub fn base(&self) -> FiniteSet {
        self.rep.base
    }

    pub fn prime(&self) -> u64 {
        self.rep.prime
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().values.iter().all(Cyclo::is_zero)
    }

    pub fn add(&self, other: &ExpClass) -> Result<ExpClass> {
        Ok(ExpClass::new(self.rep.add(&other.rep)?))
    }

    pub fn scale(&self, s: &Q) -> ExpClass {
        ExpClass::new(self.rep.scale(s))
    }
}

impl PartialEq for ExpClass {
    fn eq(&self, other: &Self) -> bool {
        self.rep.prime == other.rep.prime
            && self.rep.base == other.rep.base
            && self.canonical() == other.canonical()
    }
}

impl From<ExpObject> for ExpClass {
    fn from(rep: ExpObject) -> Self {
        ExpClass::new(rep)
    }
}

#[derive(Serialize, Deserialize)]
struct ExpObjectWire {
    base: usize,
    prime: u64,
    values: Vec<Vec<Cyclo>>,
}

impl Serialize for ExpObject {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let p = self.prime as usize;
        ExpObjectWire {
            base: self.base.size,
            prime: self.prime,
            values: self.values.chunks(p).map(<[Cyclo]>::to_vec).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExpObject {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ExpObjectWire::deserialize(d)?;
        check_prime(w.prime).map_err(D::Error::custom)?;
        let base = FiniteSet::new(w.base).map_err(D::Error::custom)?;
        let p = w.prime as usize;
        if w.values.len() != w.base || w.values.iter().any(|r| r.len() != p) {
            return Err(D::Error::custom(format!(
                "values must be a {} x {} table",
                w.base, p
            )));
        }
        if w.values.iter().flatten().any(|c| c.prime() != w.prime) {
            return Err(D::Error::custom("prime mismatch inside values"));
        }
        Ok(ExpObject {
            base,
            prime: w.prime,
            values: w.values.into_iter().flatten().collect(),
        })
    }
}

impl ExpObject {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.coeffs().iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qf};

    #[test]
    fn constant_dies() {
        let h = ExpObject::from_rational_fn(FiniteSet::new(3).unwrap(), 5, |_, _| q(7)).unwrap();
        assert!(canonical_rep(&h).is_zero());
        assert!(ExpClass::new(h).is_zero());
    }

    #[test]
    fn delta_mean_subtraction_p3() {
        let base = FiniteSet::new(2).unwrap();
        let h = ExpObject::from_rational_fn(base, 3, |_, t| if t == 0 { q(1) } else { q(0) }).unwrap();
        let c = canonical_rep(&h);
        for x in 0..2 {
            let row: Vec<Q> = c.row(x).iter().map(|v| v.as_rational().unwrap().clone()).collect();
            assert_eq!(row, vec![qf(2, 3), qf(-1, 3), qf(-1, 3)]);
        }
    }

    #[test]
    fn canonical_rep_is_idempotent() {
        let mut rng = rand::thread_rng();
        let h = ExpObject::random(&mut rng, FiniteSet::new(3).unwrap(), 5, 0.5).unwrap();
        let c = canonical_rep(&h);
        assert_eq!(canonical_rep(&c), c);
        assert_eq!(ExpClass::new(h), ExpClass::new(c));
    }

    #[test]
    fn map_validation() {
        let x = FiniteSet::new(2).unwrap();
        assert!(FiniteMap::new(x, FiniteSet::point(), vec![0, 1]).is_err());
        assert!(FiniteMap::new(x, FiniteSet::point(), vec![0]).is_err());
        assert!(FiniteSet::new(0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let h = ExpObject::delta(FiniteSet::new(2).unwrap(), 3, 1, 2).unwrap();
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["base"], 2);
        assert_eq!(v["prime"], 3);
        assert_eq!(v["values"].as_array().unwrap().len(), 2);
        assert_eq!(v["values"][1][2]["coeffs"], serde_json::json!(["1/1", "0/1"]));
        let back: ExpObject = serde_json::from_value(v).unwrap();
        assert_eq!(back, h);
        let bad = serde_json::json!({"base": 2, "prime": 3, "values": [[]]});
        assert!(serde_json::from_value::<ExpObject>(bad).is_err());
    }
}
