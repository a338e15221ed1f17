//! Left Gröbner bases in A_n for the Bernstein-graded degrevlex order.

use std::collections::{BTreeSet, VecDeque};

use num_traits::One;

use crate::error::{Error, Result};
use crate::rat::Q;
use crate::weyl::{WeylElt, WeylMonomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    n: usize,
    generators: Vec<WeylElt>,
    basis: Vec<WeylElt>,
}

impl GroebnerBasis {
    /// The zero ideal, which has the empty basis.
    pub fn zero_ideal(n: usize) -> Self {
        GroebnerBasis {
            n,
            generators: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[WeylElt] {
        &self.generators
    }

    /// Reduced, monic, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[WeylElt] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<WeylMonomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0] == WeylElt::one(self.n)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn normal_form(&self, p: &WeylElt) -> WeylElt {
        left_normal_form(p, &self.basis)
    }

    pub fn contains(&self, p: &WeylElt) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_standard(&self, m: &WeylMonomial) -> bool {
        !self
            .basis
            .iter()
            .any(|g| g.leading_monomial().expect("nonzero").divides(m))
    }

    /// Standard monomials of Bernstein degree ≤ d, in increasing order.
    pub fn standard_monomials(&self, d: u32) -> Vec<WeylMonomial> {
        let lms = self.leading_monomials();
        let mut out: Vec<WeylMonomial> = monomials_up_to(self.n, d)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .collect();
        out.sort();
        out
    }

    pub fn count_standard(&self, d: u32) -> usize {
        let lms = self.leading_monomials();
        monomials_up_to(self.n, d)
            .iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .count()
    }

    /// Dimension of the monomial staircase: the largest set U of the 2n
    /// symbol variables such that no leading monomial is supported in U.
    pub fn hilbert_dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::ZeroModule);
        }
        let vars = 2 * self.n;
        let supports: Vec<u32> = self
            .leading_monomials()
            .iter()
            .map(|m| m.support().iter().fold(0u32, |acc, &i| acc | (1 << i)))
            .collect();
        Ok((0u32..1 << vars)
            .filter(|u| supports.iter().all(|s| s & !u != 0))
            .map(|u| u.count_ones() as usize)
            .max()
            .unwrap_or(0))
    }

    /// Growth degree of d ↦ #standard monomials of degree ≤ d, read off the
    /// finite differences over the window [d0, d0 + 2n].
    pub fn hilbert_dimension_by_counting(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::ZeroModule);
        }
        let d0: u32 = self
            .leading_monomials()
            .iter()
            .fold(WeylMonomial::one(self.n), |acc, m| acc.lcm(m))
            .degree()
            + 1;
        let mut diffs: Vec<i64> = (0..=2 * self.n as u32)
            .map(|k| self.count_standard(d0 + k) as i64)
            .collect();
        let mut degree = 0;
        for k in 1..diffs.len() {
            diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
            if diffs.iter().any(|v| *v != 0) {
                degree = k;
            }
        }
        Ok(degree)
    }

    pub fn is_holonomic(&self) -> Result<bool> {
        Ok(self.hilbert_dimension()? == self.n)
    }

    /// Reduced bases are canonical, so equality is termwise.
    pub fn ideal_eq(&self, other: &GroebnerBasis) -> bool {
        self.n == other.n && self.basis == other.basis
    }
}

/// All monomials in 2n variables of total degree ≤ d.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<WeylMonomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; 2 * n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, n: usize, out: &mut Vec<WeylMonomial>) {
        if i == exps.len() {
            out.push(WeylMonomial::new(exps[..n].to_vec(), exps[n..].to_vec()));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, n, out);
        }
        exps[i] = 0;
    }
    rec(0, d, &mut exps, n, &mut out);
    out
}

/// Full left reduction: no term of the result is divisible by a leading
/// monomial of `basis`.
pub fn left_normal_form(p: &WeylElt, basis: &[WeylElt]) -> WeylElt {
    let lead: Vec<(&WeylMonomial, &Q)> = basis
        .iter()
        .map(|g| g.leading().expect("nonzero basis element"))
        .collect();
    let mut rest = p.clone();
    let mut out = WeylElt::zero(p.n());
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match lead.iter().position(|(l, _)| l.divides(&m)) {
            Some(k) => {
                let (l, lc) = lead[k];
                let factor = l.quotient(&m);
                let sub = basis[k].mul_monomial_left(&factor, &(&c / lc));
                rest = &rest - &sub;
            }
            None => {
                rest.add_term(m.clone(), -c.clone());
                out.add_term(m, c);
            }
        }
    }
    out
}

fn spoly(f: &WeylElt, g: &WeylElt) -> WeylElt {
    let (mf, cf) = f.leading().expect("nonzero");
    let (mg, cg) = g.leading().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_monomial_left(&mf.quotient(&l), &(Q::one() / cf));
    let b = g.mul_monomial_left(&mg.quotient(&l), &(Q::one() / cg));
    &a - &b
}

fn variable_indices(p: &WeylElt) -> BTreeSet<usize> {
    let n = p.n();
    p.terms()
        .keys()
        .flat_map(|m| m.support().into_iter().map(move |i| i % n))
        .collect()
}

/// f and g commute when they involve disjoint sets of variable indices; only
/// then does coprimality of leading monomials force the S-pair to reduce to 0.
fn coprime_and_commuting(f: &WeylElt, g: &WeylElt) -> bool {
    let (mf, _) = f.leading().expect("nonzero");
    let (mg, _) = g.leading().expect("nonzero");
    let coprime = mf.exponents().zip(mg.exponents()).all(|(a, b)| a == 0 || b == 0);
    coprime && variable_indices(f).is_disjoint(&variable_indices(g))
}

pub fn buchberger(gens: &[WeylElt]) -> Result<GroebnerBasis> {
    let n = match gens.first() {
        Some(g) => g.n(),
        None => return Err(Error::ZeroIdealInput),
    };
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return Err(Error::VariableMismatch(n, g.n()));
    }
    let mut work: Vec<WeylElt> = Vec::new();
    for g in gens {
        let r = left_normal_form(g, &work);
        if !r.is_zero() {
            work.push(r.monic());
        }
    }
    if work.is_empty() {
        return Err(Error::ZeroIdealInput);
    }
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..work.len() {
        for i in 0..j {
            pairs.push_back((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        if coprime_and_commuting(&work[i], &work[j]) {
            continue;
        }
        let r = left_normal_form(&spoly(&work[i], &work[j]), &work);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.bernstein_degree()? == 0 {
            return Ok(GroebnerBasis {
                n,
                generators: gens.to_vec(),
                basis: vec![WeylElt::one(n)],
            });
        }
        let k = work.len();
        work.push(r);
        for i in 0..k {
            pairs.push_back((i, k));
        }
    }
    Ok(GroebnerBasis {
        n,
        generators: gens.to_vec(),
        basis: reduce_basis(work),
    })
}

/// Minimalizes, inter-reduces and normalizes a Gröbner basis.
fn reduce_basis(mut work: Vec<WeylElt>) -> Vec<WeylElt> {
    work.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<WeylElt> = Vec::new();
    for g in work {
        let lm = g.leading_monomial().expect("nonzero");
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().expect("nonzero").divides(lm))
        {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let (lm, lc) = g.leading().expect("nonzero");
        let others: Vec<WeylElt> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, h)| h.clone())
            .collect();
        let mut tail = g.clone();
        tail.add_term(lm.clone(), -lc.clone());
        let mut r = left_normal_form(&tail, &others);
        r.add_term(lm.clone(), lc.clone());
        reduced.push(r.monic());
    }
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qf};
    use crate::weyl::parse_weyl;
    use proptest::prelude::*;

    fn w(s: &str, n: usize) -> WeylElt {
        parse_weyl(s, n).unwrap()
    }

    fn gb(gens: &[&str], n: usize) -> GroebnerBasis {
        buchberger(&gens.iter().map(|s| w(s, n)).collect::<Vec<_>>()).unwrap()
    }

    fn strings(g: &GroebnerBasis) -> Vec<String> {
        g.basis().iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let g = gb(&["d - 3"], 1);
        assert_eq!(g.normal_form(&w("d^2", 1)), WeylElt::constant(q(9), 1));
        assert!(g.normal_form(&WeylElt::zero(1)).is_zero());
        assert!(g.normal_form(&g.basis()[0]).is_zero());
        // x*d reduces to 3*x
        assert_eq!(g.normal_form(&w("x*d", 1)), w("3*x", 1));
        // d*x = x*d + 1 reduces to 3*x + 1
        assert_eq!(g.normal_form(&w("d*x", 1)), w("3*x + 1", 1));
    }

    #[test]
    fn buchberger_examples() {
        assert_eq!(strings(&gb(&["d - 1/2"], 1)), ["d - 1/2"]);
        assert_eq!(strings(&gb(&["d1 - 2", "d2 - 2"], 2)), ["d2 - 2", "d1 - 2"]);
        assert!(gb(&["d + 2", "x"], 1).is_unit());
        assert!(gb(&["2*x*d - 4"], 1).basis()[0] == w("x*d - 2", 1));
        assert_eq!(buchberger(&[]), Err(Error::ZeroIdealInput));
        assert_eq!(buchberger(&[WeylElt::zero(1)]), Err(Error::ZeroIdealInput));
    }

    #[test]
    fn commuting_coprime_pairs_are_skipped_only_when_safe() {
        // leading monomials d and x are coprime but the elements do not commute
        let f = w("d + 1", 1);
        let g = w("x", 1);
        assert!(!coprime_and_commuting(&f, &g));
        assert!(coprime_and_commuting(&w("d1 - 1", 2), &w("d2 - 1", 2)));
    }

    #[test]
    fn standard_monomial_examples() {
        let sm = gb(&["d - 5"], 1).standard_monomials(3);
        let names: Vec<String> = sm.iter().map(|m| WeylElt::monomial(m.clone(), q(1)).to_string()).collect();
        assert_eq!(names, ["1", "x", "x^2", "x^3"]);
        let sm = gb(&["x"], 1).standard_monomials(2);
        let names: Vec<String> = sm.iter().map(|m| WeylElt::monomial(m.clone(), q(1)).to_string()).collect();
        assert_eq!(names, ["1", "d", "d^2"]);
        assert!(gb(&["x", "d"], 1).standard_monomials(4).is_empty());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(gb(&["d - 1"], 1).hilbert_dimension().unwrap(), 1);
        assert_eq!(gb(&["d"], 1).hilbert_dimension().unwrap(), 1);
        assert_eq!(GroebnerBasis::zero_ideal(1).hilbert_dimension().unwrap(), 2);
        assert_eq!(gb(&["x", "d"], 1).hilbert_dimension(), Err(Error::ZeroModule));
        let g = gb(&["d1 - 1"], 2);
        assert_eq!(g.hilbert_dimension().unwrap(), 3);
        assert!(!g.is_holonomic().unwrap());
        let e = gb(&["x1 - d2", "d1 - x2"], 2);
        assert!(e.is_holonomic().unwrap());
        assert_eq!(e.hilbert_dimension_by_counting().unwrap(), 2);
        for g in [gb(&["x*d - 1/3"], 1), gb(&["x^2*d + 1"], 1), gb(&["x1*d1 - 1", "d2"], 2)] {
            assert_eq!(g.hilbert_dimension().unwrap(), g.hilbert_dimension_by_counting().unwrap());
        }
    }

    #[test]
    fn ideal_equality() {
        let a = gb(&["d1 - 2", "d2 - 2"], 2);
        let b = gb(&["d2 - 2", "d1 - 2"], 2);
        assert!(a.ideal_eq(&b));
        assert!(!gb(&["d - 1"], 1).ideal_eq(&gb(&["d - 2"], 1)));
        // same ideal, different presentation
        let c = gb(&["d1 + d2 - 4", "d1 - d2"], 2);
        assert!(a.ideal_eq(&c));
    }

    #[test]
    fn commutative_cross_check() {
        // monomial ideals in x only: the staircase count is a plain lattice count
        let g = gb(&["x1^2", "x1*x2^3"], 2);
        for d in 0..6u32 {
            let mut brute = 0;
            for a1 in 0..=d {
                for a2 in 0..=d {
                    for b1 in 0..=d {
                        for b2 in 0..=d {
                            if a1 + a2 + b1 + b2 <= d && a1 < 2 && !(a1 >= 1 && a2 >= 3) {
                                brute += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(g.count_standard(d), brute);
        }
        // and the x-only ideal is closed under the commutative S-pairs
        let h = gb(&["x1^2 - x2", "x1*x2 - 1"], 2);
        assert!(h.basis().iter().all(|e| e.d_order() == 0));
        assert!(h.contains(&w("x2^2 - x1", 2)));
    }

    fn elt1() -> impl Strategy<Value = WeylElt> {
        (prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4)).prop_map(|ts| {
            WeylElt::from_terms(1, ts.into_iter().map(|(a, b, c)| (WeylMonomial::new(vec![a], vec![b]), q(c))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn membership_soundness(a in elt1(), b in elt1(), num in -3i64..4) {
            let lam = qf(num, 2);
            let gens = vec![
                &w("x*d", 1) - &WeylElt::constant(lam.clone(), 1),
                w("x^2*d - x", 1),
            ];
            let g = buchberger(&gens).unwrap();
            let combo = &(&a * &gens[0]) + &(&b * &gens[1]);
            prop_assert!(g.contains(&combo));
            let rev: Vec<WeylElt> = gens.iter().rev().cloned().collect();
            prop_assert!(g.ideal_eq(&buchberger(&rev).unwrap()));
        }

        #[test]
        fn normal_form_is_linear(a in elt1(), b in elt1()) {
            let g = gb(&["x*d^2 - d + x"], 1);
            let lhs = g.normal_form(&(&a + &b));
            prop_assert_eq!(lhs, &g.normal_form(&a) + &g.normal_form(&b));
            let lms = g.leading_monomials();
            for m in g.normal_form(&a).terms().keys() {
                prop_assert!(!lms.iter().any(|l| l.divides(m)));
            }
        }
    }
}
