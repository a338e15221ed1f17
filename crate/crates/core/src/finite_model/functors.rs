use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::rat::{sign_pow, Q};

use super::{ExpClass, ExpObject, FiniteMap, FiniteSet};

fn check_prime_match(a: u64, b: u64) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::PrimeMismatch(a, b))
    }
}

/// `f^*`: result(x, t) = h(f(x), t).
pub fn pullback(f: &FiniteMap, h: &ExpClass) -> Result<ExpClass> {
    if f.target() != h.base() {
        return Err(Error::BaseMismatch(format!(
            "pullback along a map into a set of size {}, class lives on size {}",
            f.target().size(),
            h.base().size()
        )));
    }
    let p = h.prime() as usize;
    let src = h.rep();
    let mut values = Vec::with_capacity(f.source().size() * p);
    for &y in f.table() {
        values.extend_from_slice(src.row(y));
    }
    Ok(ExpClass::new(ExpObject {
        base: f.source(),
        prime: h.prime(),
        values,
    }))
}

/// `f_!` (= `f_*` here): result(y, t) = Σ_{f(x) = y} h(x, t).
pub fn pushforward(f: &FiniteMap, h: &ExpClass) -> Result<ExpClass> {
    if f.source() != h.base() {
        return Err(Error::BaseMismatch(format!(
            "pushforward along a map from a set of size {}, class lives on size {}",
            f.source().size(),
            h.base().size()
        )));
    }
    let prime = h.prime();
    let p = prime as usize;
    let mut out = ExpObject::zero(f.target(), prime)?;
    for (x, &y) in f.table().iter().enumerate() {
        for t in 0..p {
            let v = h.rep().at(x, t);
            if !v.is_zero() {
                out.values[y * p + t].add_assign_ref(v);
            }
        }
    }
    Ok(ExpClass::new(out))
}

/// Additive convolution in the F_p direction, fiberwise over X.
pub fn conv(h1: &ExpClass, h2: &ExpClass) -> Result<ExpClass> {
    check_prime_match(h1.prime(), h2.prime())?;
    h1.rep().compatible(h2.rep())?;
    let prime = h1.prime();
    let p = prime as usize;
    let mut out = ExpObject::zero(h1.base(), prime)?;
    for x in 0..h1.base().size() {
        let r1 = h1.rep().row(x);
        let r2 = h2.rep().row(x);
        for (u, a) in r1.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (v, b) in r2.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.values[x * p + (u + v) % p].add_assign_ref(&(a * b));
            }
        }
    }
    Ok(ExpClass::new(out))
}

/// The exponential kernel: class on G_a (a base of size p) of δ_{s = t}.
pub fn kernel_e(prime: u64) -> Result<ExpClass> {
    let base = FiniteSet::new(prime as usize)?;
    let rep = ExpObject::from_fn(base, prime, |s, t| {
        if s == t {
            Cyclo::one(prime)
        } else {
            Cyclo::zero(prime)
        }
    })?;
    Ok(ExpClass::new(rep))
}

/// The convolution unit on X: δ_{t = 0}.
pub fn unit_1(x: FiniteSet, prime: u64) -> Result<ExpClass> {
    let rep = ExpObject::from_fn(x, prime, |_, t| {
        if t == 0 {
            Cyclo::one(prime)
        } else {
            Cyclo::zero(prime)
        }
    })?;
    Ok(ExpClass::new(rep))
}

/// Scales by (−1)^shift · p^{−twist}: the trace of `[shift](twist)`.
pub fn twist_scale(h: &ExpClass, shift: i64, twist: i64) -> ExpClass {
    let p = Q::from_integer((h.prime() as i64).into());
    let mut s = sign_pow(shift);
    for _ in 0..twist.unsigned_abs() {
        if twist > 0 {
            s /= &p;
        } else {
            s *= &p;
        }
    }
    h.scale(&s)
}

/// f_*; fibers are finite, so it agrees with f_!.
pub fn pushforward_star(f: &FiniteMap, h: &ExpClass) -> Result<ExpClass> {
    pushforward(f, h)
}

/// f^!; agrees with f^* on finite sets.
pub fn pullback_shriek(f: &FiniteMap, h: &ExpClass) -> Result<ExpClass> {
    pullback(f, h)
}

/// G_a as a finite set.
pub fn affine_line(prime: u64) -> FiniteSet {
    FiniteSet { size: prime as usize }
}

/// Pointwise sum `f + g` of two maps X → G_a.
pub fn map_sum(f: &FiniteMap, g: &FiniteMap, prime: u64) -> Result<FiniteMap> {
    let line = affine_line(prime);
    if f.source() != g.source() || f.target() != line || g.target() != line {
        return Err(Error::InvalidMap("sum of maps needs two maps X -> G_a".into()));
    }
    let p = prime as usize;
    FiniteMap::from_fn(f.source(), line, |x| (f.apply(x) + g.apply(x)) % p)
}

/// The negation map [−1] on G_a.
pub fn negation(prime: u64) -> FiniteMap {
    let p = prime as usize;
    let line = affine_line(prime);
    FiniteMap::from_fn(line, line, |s| (p - s) % p).expect("in range")
}
