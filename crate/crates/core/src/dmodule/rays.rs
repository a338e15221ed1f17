//! Symbolic images of the infinite families of standard monomials in A_1.
//!
//! For a Gröbner basis with leading monomials x^{a_i}∂^{b_i}, the standard
//! monomials of large degree lie on finitely many rays: x^{e−c}∂^c with
//! c < min b_i, and x^c∂^{e−c} with c < min a_i. Normal forms of A·(ray
//! element) are computed once with polynomial coefficients in the free
//! exponent u, valid for all u beyond a recorded threshold.

use std::collections::BTreeMap;

use num_traits::One;

use super::poly::Poly;
use crate::rat::Q;
use crate::weyl::{WeylElt, WeylMonomial};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub(crate) enum Side {
    X,
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub(crate) struct Ray {
    pub side: Side,
    pub c: u32,
}

impl Ray {
    /// The element of Bernstein degree e (requires e ≥ c).
    pub fn element(&self, e: u32) -> WeylMonomial {
        match self.side {
            Side::X => WeylMonomial::new(vec![e - self.c], vec![self.c]),
            Side::D => WeylMonomial::new(vec![self.c], vec![e - self.c]),
        }
    }
}

/// Shape data of the staircase in A_1.
#[derive(Clone, Debug)]
pub(crate) struct Staircase {
    pub lms: Vec<(u32, u32)>,
    pub alpha0: u32,
    pub beta0: u32,
    /// Standard monomials of degree ≥ zone lie on exactly one ray.
    pub zone: u32,
}

impl Staircase {
    pub fn new(basis: &[WeylElt]) -> Self {
        let lms: Vec<(u32, u32)> = basis
            .iter()
            .map(|g| {
                let m = g.leading_monomial().expect("nonzero");
                (m.alpha[0], m.beta[0])
            })
            .collect();
        let alpha0 = lms.iter().map(|l| l.0).min().unwrap_or(u32::MAX);
        let beta0 = lms.iter().map(|l| l.1).min().unwrap_or(u32::MAX);
        let max_a = lms.iter().map(|l| l.0).max().unwrap_or(0);
        let max_b = lms.iter().map(|l| l.1).max().unwrap_or(0);
        Staircase {
            zone: max_a + max_b + alpha0 + beta0 + 1,
            lms,
            alpha0,
            beta0,
        }
    }

    pub fn rays(&self) -> Vec<Ray> {
        (0..self.beta0)
            .map(|c| Ray { side: Side::X, c })
            .chain((0..self.alpha0).map(|c| Ray { side: Side::D, c }))
            .collect()
    }

    /// The ray carrying a standard monomial of degree ≥ zone.
    pub fn locate(&self, m: &WeylMonomial) -> Option<(Ray, u32)> {
        let (a, b) = (m.alpha[0], m.beta[0]);
        if a + b < self.zone {
            return None;
        }
        if b < self.beta0 {
            Some((Ray { side: Side::X, c: b }, a + b))
        } else if a < self.alpha0 {
            Some((Ray { side: Side::D, c: a }, a + b))
        } else {
            None
        }
    }
}

/// One term of a ray image: coefficient P(u) on `target` at degree e + shift.
#[derive(Clone, Debug)]
pub(crate) struct RayTerm {
    pub target: Ray,
    pub shift: i64,
    pub coeff: Poly,
}

#[derive(Clone, Debug)]
pub(crate) struct RayImage {
    /// Terms in decreasing monomial order; the first is the leading term.
    pub terms: Vec<RayTerm>,
    /// The formula holds for u ≥ threshold, where u = e − c.
    pub threshold: i64,
}

/// Symbolic monomial: on side X it is x^{u+s}∂^q, on side D x^q∂^{u+s}.
/// Keys sort like the underlying monomials for large u.
fn key(side: Side, s: i64, q: i64) -> (i64, i64) {
    match side {
        Side::X => (s + q, -q),
        Side::D => (s + q, q),
    }
}

fn unkey(side: Side, k: (i64, i64)) -> (i64, i64) {
    let q = match side {
        Side::X => -k.1,
        Side::D => k.1,
    };
    (k.0 - q, q)
}

fn binom(n: i64, k: i64) -> Q {
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * Q::from_integer((n - i).into()) / Q::from_integer((i + 1).into());
    }
    acc
}

fn factorial(k: i64) -> Q {
    (1..=k).fold(Q::one(), |acc, i| acc * Q::from_integer(i.into()))
}

struct SymElt {
    side: Side,
    terms: BTreeMap<(i64, i64), Poly>,
    threshold: i64,
}

impl SymElt {
    fn add(&mut self, s: i64, q: i64, c: Poly) {
        if c.is_zero() {
            return;
        }
        self.threshold = self.threshold.max(-s);
        let k = key(self.side, s, q);
        let entry = self.terms.entry(k).or_insert_with(Poly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }
}

/// Normal form of A·(element of `ray` at degree u + c), symbolically in u.
/// Returns None when the reduction leaves the ray regime.
pub(crate) fn ray_image(a: &WeylElt, ray: Ray, basis: &[WeylElt], stairs: &Staircase) -> Option<RayImage> {
    let side = ray.side;
    let c = ray.c as i64;
    let mut elt = SymElt {
        side,
        terms: BTreeMap::new(),
        threshold: 0,
    };
    for (m, coef) in a.terms() {
        let (i, j) = (m.alpha[0] as i64, m.beta[0] as i64);
        match side {
            // x^i ∂^j · x^u ∂^c
            Side::X => {
                for l in 0..=j {
                    let p = Poly::falling(0, l as u32).scale(&(coef * binom(j, l)));
                    elt.add(i - l, j + c - l, p);
                }
            }
            // x^i ∂^j · x^c ∂^u
            Side::D => {
                for l in 0..=j.min(c) {
                    let w = binom(j, l) * binom(c, l) * factorial(l);
                    elt.add(j - l, i + c - l, Poly::constant(coef * w));
                }
            }
        }
    }

    let span = a.bernstein_degree().ok()? as i64
        + stairs.lms.iter().map(|l| (l.0 + l.1) as i64).max().unwrap_or(0)
        + c;
    let floor = -4 * (span + 2);
    let mut out: Vec<RayTerm> = Vec::new();
    let mut steps = 0usize;
    while let Some((&k, _)) = elt.terms.iter().next_back() {
        steps += 1;
        if steps > 100_000 {
            return None;
        }
        let coef = elt.terms[&k].clone();
        let (s, q) = unkey(side, k);
        if s < floor {
            return None;
        }
        let divisor = basis.iter().position(|g| {
            let lm = g.leading_monomial().expect("nonzero");
            let (la, lb) = (lm.alpha[0] as i64, lm.beta[0] as i64);
            match side {
                Side::X => q >= lb,
                Side::D => q >= la,
            }
        });
        let Some(gi) = divisor else {
            elt.terms.remove(&k);
            let target = Ray {
                side,
                c: u32::try_from(q).ok()?,
            };
            out.push(RayTerm {
                target,
                shift: s + q - c,
                coeff: coef,
            });
            continue;
        };
        let g = &basis[gi];
        let (lm, lc) = g.leading().expect("nonzero");
        let (la, lb) = (lm.alpha[0] as i64, lm.beta[0] as i64);
        let factor = coef.scale(&(-Q::one() / lc));
        match side {
            Side::X => {
                // multiplier x^{u+S} ∂^{Q}
                let (big_s, big_q) = (s - la, q - lb);
                elt.threshold = elt.threshold.max(la - s);
                for (gm, gc) in g.terms() {
                    let (i, j) = (gm.alpha[0] as i64, gm.beta[0] as i64);
                    for l in 0..=big_q.min(i) {
                        let w = binom(big_q, l) * binom(i, l) * factorial(l) * gc;
                        elt.add(big_s + i - l, big_q + j - l, factor.scale(&w));
                    }
                }
            }
            Side::D => {
                // multiplier x^{P} ∂^{u+S}
                let (big_p, big_s) = (q - la, s - lb);
                elt.threshold = elt.threshold.max(lb - s);
                for (gm, gc) in g.terms() {
                    let (i, j) = (gm.alpha[0] as i64, gm.beta[0] as i64);
                    for l in 0..=i {
                        let p = Poly::falling(big_s, l as u32).scale(&(binom(i, l) * gc));
                        elt.add(big_s + j - l, big_p + i - l, factor.mul(&p));
                    }
                }
            }
        }
        if elt.terms.contains_key(&k) {
            // the leading term must cancel exactly
            return None;
        }
    }
    Some(RayImage {
        terms: out,
        threshold: elt.threshold,
    })
}
