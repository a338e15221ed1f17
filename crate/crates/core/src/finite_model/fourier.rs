use crate::cyclotomic::{check_prime, psi, Cyclo};
use crate::error::{Error, Result};

use super::functors::{affine_line, kernel_e, pullback, pushforward, twist_scale};
use super::{ExpClass, ExpObject, FiniteMap, FiniteSet};

/// The trivial bundle V = S × F_p^r with the standard dot pairing.
///
/// Points of V are indexed `s * p^r + x`, points of V ×_S V^∨ as
/// `(s * p^r + x) * p^r + y`, with vectors in F_p^r written in base p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bundle {
    pub fiber_count: usize,
    pub rank: usize,
    pub prime: u64,
}

impl Bundle {
    pub fn new(fiber_count: usize, rank: usize, prime: u64) -> Result<Self> {
        check_prime(prime)?;
        if fiber_count == 0 || rank == 0 {
            return Err(Error::InvalidMap("bundle needs |S| >= 1 and rank >= 1".into()));
        }
        Ok(Bundle {
            fiber_count,
            rank,
            prime,
        })
    }

    /// Reads S off a base of size |S|·p^{dims·r}.
    fn from_size(size: usize, rank: usize, prime: u64, dims: usize) -> Result<Self> {
        check_prime(prime)?;
        let malformed = || Error::MalformedBase {
            size,
            prime,
            dims: dims * rank,
        };
        if rank == 0 {
            return Err(malformed());
        }
        let per = (prime as usize)
            .checked_pow((dims * rank) as u32)
            .ok_or_else(malformed)?;
        if !size.is_multiple_of(per) {
            return Err(malformed());
        }
        Self::new(size / per, rank, prime)
    }

    pub fn of_total_space(base: FiniteSet, rank: usize, prime: u64) -> Result<Self> {
        Self::from_size(base.size(), rank, prime, 1)
    }

    pub fn of_pair_space(base: FiniteSet, rank: usize, prime: u64) -> Result<Self> {
        Self::from_size(base.size(), rank, prime, 2)
    }

    pub fn fiber_size(&self) -> usize {
        (self.prime as usize).pow(self.rank as u32)
    }

    pub fn base_set(&self) -> FiniteSet {
        FiniteSet { size: self.fiber_count }
    }

    pub fn total(&self) -> FiniteSet {
        FiniteSet {
            size: self.fiber_count * self.fiber_size(),
        }
    }

    pub fn pair_space(&self) -> FiniteSet {
        FiniteSet {
            size: self.fiber_count * self.fiber_size() * self.fiber_size(),
        }
    }

    fn digits(&self, mut v: usize) -> impl Iterator<Item = usize> {
        let p = self.prime as usize;
        (0..self.rank).map(move |_| {
            let d = v % p;
            v /= p;
            d
        })
    }

    /// Σ x_i y_i mod p.
    pub fn dot(&self, x: usize, y: usize) -> usize {
        let p = self.prime as usize;
        self.digits(x)
            .zip(self.digits(y))
            .map(|(a, b)| a * b)
            .sum::<usize>()
            % p
    }

    pub fn neg_vec(&self, x: usize) -> usize {
        let p = self.prime as usize;
        self.digits(x)
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .fold(0, |acc, d| acc * p + (p - d) % p)
    }

    /// Splits a point of V ×_S V^∨ into (s, x, y).
    pub fn split_pair(&self, i: usize) -> (usize, usize, usize) {
        let n = self.fiber_size();
        (i / (n * n), (i / n) % n, i % n)
    }

    pub fn pair_index(&self, s: usize, x: usize, y: usize) -> usize {
        let n = self.fiber_size();
        (s * n + x) * n + y
    }

    /// p: V ×_S V^∨ → V.
    pub fn first_projection(&self) -> FiniteMap {
        let n = self.fiber_size();
        FiniteMap::from_fn(self.pair_space(), self.total(), |i| {
            let (s, x, _) = self.split_pair(i);
            s * n + x
        })
        .expect("in range")
    }

    /// q: V ×_S V^∨ → V^∨.
    pub fn second_projection(&self) -> FiniteMap {
        let n = self.fiber_size();
        FiniteMap::from_fn(self.pair_space(), self.total(), |i| {
            let (s, _, y) = self.split_pair(i);
            s * n + y
        })
        .expect("in range")
    }

    /// m: V ×_S V^∨ → G_a.
    pub fn pairing(&self) -> FiniteMap {
        FiniteMap::from_fn(self.pair_space(), affine_line(self.prime), |i| {
            let (_, x, y) = self.split_pair(i);
            self.dot(x, y)
        })
        .expect("in range")
    }

    /// v ↦ −v on V; identifies V with V^∨∨ through a(v) = −m(v, −).
    pub fn negation(&self) -> FiniteMap {
        let n = self.fiber_size();
        FiniteMap::from_fn(self.total(), self.total(), |i| {
            (i / n) * n + self.neg_vec(i % n)
        })
        .expect("in range")
    }

    pub fn zero_section(&self) -> FiniteMap {
        let n = self.fiber_size();
        FiniteMap::from_fn(self.base_set(), self.total(), |s| s * n).expect("in range")
    }
}

/// τ_!: result(x, y, t) = h(x, y, t − m(x, y)).
pub fn shear(h: &ExpClass, rank: usize) -> Result<ExpClass> {
    shear_by(h, rank, 1)
}

/// Inverse of `shear`.
pub fn unshear(h: &ExpClass, rank: usize) -> Result<ExpClass> {
    shear_by(h, rank, -1)
}

fn shear_by(h: &ExpClass, rank: usize, sign: i64) -> Result<ExpClass> {
    shear_owned(h.clone(), rank, sign)
}

/// Rotates each t-row by ±m(x, y) in place.
fn shear_owned(h: ExpClass, rank: usize, sign: i64) -> Result<ExpClass> {
    let prime = h.prime();
    let bundle = Bundle::of_pair_space(h.base(), rank, prime)?;
    let p = prime as usize;
    let mut rep = h.into_rep();
    for (i, row) in rep.values.chunks_mut(p).enumerate() {
        let (_, x, y) = bundle.split_pair(i);
        let m = (sign * bundle.dot(x, y) as i64).rem_euclid(p as i64) as usize;
        row.rotate_right(m);
    }
    Ok(ExpClass::new(rep))
}

/// Fourier transform E(V) → E(V^∨): q_!(p^*h ⊗+ m^*𝔼)[r].
///
/// The convolution with m^*𝔼 is realized as the shear τ_!.
pub fn ft(h: &ExpClass, rank: usize) -> Result<ExpClass> {
    let bundle = Bundle::of_total_space(h.base(), rank, h.prime())?;
    let lifted = pullback(&bundle.first_projection(), h)?;
    let sheared = shear_owned(lifted, rank, 1)?;
    let pushed = pushforward(&bundle.second_projection(), &sheared)?;
    Ok(twist_scale(&pushed, rank as i64, 0))
}

/// The same transform with the convolution computed literally against the
/// pulled-back kernel m^*𝔼.
pub fn ft_via_kernel(h: &ExpClass, rank: usize) -> Result<ExpClass> {
    let bundle = Bundle::of_total_space(h.base(), rank, h.prime())?;
    let lifted = pullback(&bundle.first_projection(), h)?;
    let kernel = pullback(&bundle.pairing(), &kernel_e(h.prime())?)?;
    let convolved = super::functors::conv(&lifted, &kernel)?;
    let pushed = pushforward(&bundle.second_projection(), &convolved)?;
    Ok(twist_scale(&pushed, rank as i64, 0))
}

fn check_lambda(lambda: i64, prime: u64) -> Result<()> {
    if lambda.rem_euclid(prime as i64) == 0 {
        Err(Error::NotRealizationKernel(prime))
    } else {
        Ok(())
    }
}

/// real_ψ(h)(x) = Σ_t h(x, t) ψ(λ t).
pub fn real_psi(h: &ExpClass, lambda: i64) -> Result<Vec<Cyclo>> {
    let prime = h.prime();
    check_lambda(lambda, prime)?;
    let chars: Vec<Cyclo> = (0..prime as i64)
        .map(|t| psi(t, lambda, prime))
        .collect::<Result<_>>()?;
    Ok((0..h.base().size())
        .map(|x| {
            let mut acc = Cyclo::zero(prime);
            for (v, c) in h.rep().row(x).iter().zip(&chars) {
                if !v.is_zero() {
                    acc.add_assign_ref(&(v * c));
                }
            }
            acc
        })
        .collect())
}

/// Classical transform of a function on S × F_p^r:
/// (−1)^r Σ_x g(s, x) ψ(λ m(x, y)).
pub fn classical_ft(g: &[Cyclo], lambda: i64, rank: usize, prime: u64) -> Result<Vec<Cyclo>> {
    check_prime(prime)?;
    if lambda.rem_euclid(prime as i64) == 0 {
        return Err(Error::DegenerateCharacter(prime));
    }
    let base = FiniteSet::new(g.len())?;
    let bundle = Bundle::of_total_space(base, rank, prime)?;
    let n = bundle.fiber_size();
    let sign = crate::rat::sign_pow(rank as i64);
    let mut out = Vec::with_capacity(g.len());
    for s in 0..bundle.fiber_count {
        for y in 0..n {
            let mut acc = Cyclo::zero(prime);
            for x in 0..n {
                let v = &g[s * n + x];
                if !v.is_zero() {
                    acc.add_assign_ref(&(v * &psi(bundle.dot(x, y) as i64, lambda, prime)?));
                }
            }
            out.push(acc.scale(&sign));
        }
    }
    Ok(out)
}

/// π_! of 𝔼 pulled back along x ↦ x + a/x on F_p^×: a class on a point
/// whose realization is the Kloosterman sum Σ_x ψ(x + a/x).
pub fn kloosterman_class(prime: u64, a: i64) -> Result<ExpClass> {
    check_prime(prime)?;
    let p = prime as i64;
    let units = FiniteSet::new((prime - 1) as usize)?;
    let phi = FiniteMap::from_fn(units, affine_line(prime), |i| {
        let x = i as i64 + 1;
        let inv = mod_inverse(x, p);
        (x + a * inv).rem_euclid(p) as usize
    })?;
    let pulled = pullback(&phi, &kernel_e(prime)?)?;
    pushforward(&FiniteMap::to_point(units), &pulled)
}

/// Quadratic-character class t ↦ (t/p) on a point; also π_! of 𝔼 pulled
/// back along the squaring map, up to a constant.
pub fn legendre_class(prime: u64) -> Result<ExpClass> {
    check_prime(prime)?;
    let p = prime as i64;
    let rep = ExpObject::from_rational_fn(FiniteSet::point(), prime, |_, t| {
        crate::rat::q(legendre(t as i64, p))
    })?;
    Ok(ExpClass::new(rep))
}

/// π_! of 𝔼 pulled back along x ↦ x² on F_p.
pub fn square_pushforward_class(prime: u64) -> Result<ExpClass> {
    check_prime(prime)?;
    let line = affine_line(prime);
    let p = prime as usize;
    let sq = FiniteMap::from_fn(line, line, |x| (x * x) % p)?;
    let pulled = pullback(&sq, &kernel_e(prime)?)?;
    pushforward(&FiniteMap::to_point(line), &pulled)
}

pub fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    if (1..p).any(|x| (x * x) % p == a) {
        1
    } else {
        -1
    }
}

pub fn mod_inverse(x: i64, p: i64) -> i64 {
    (1..p).find(|y| (x * y).rem_euclid(p) == 1).expect("unit mod p")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_model::{conv, unit_1};
    use crate::rat::q;

    fn rational_table(h: &ExpClass) -> Vec<Vec<i64>> {
        let p = h.prime() as usize;
        (0..h.base().size())
            .map(|x| {
                (0..p)
                    .map(|t| {
                        let v = h.rep().at(x, t).as_rational().unwrap();
                        assert!(v.is_integer());
                        i64::try_from(v.numer().clone()).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn shear_of_single_delta() {
        let b = Bundle::new(1, 1, 3).unwrap();
        let h = ExpObject::delta(b.pair_space(), 3, b.pair_index(0, 1, 1), 0).unwrap();
        let out = shear(&ExpClass::new(h), 1).unwrap();
        let expected = ExpObject::delta(b.pair_space(), 3, b.pair_index(0, 1, 1), 1).unwrap();
        assert_eq!(out.rep(), &expected);
    }

    #[test]
    fn shear_round_trip_and_pullback_invariance() {
        let mut rng = rand::thread_rng();
        let b = Bundle::new(2, 1, 5).unwrap();
        let h = ExpClass::new(ExpObject::random(&mut rng, b.pair_space(), 5, 0.4).unwrap());
        assert_eq!(unshear(&shear(&h, 1).unwrap(), 1).unwrap().rep(), h.rep());
        let g: Vec<Cyclo> = (0..b.pair_space().size())
            .map(|_| crate::finite_model::random_cyclo(&mut rng, 5, 0.5))
            .collect();
        let flat = ExpClass::new(
            ExpObject::zero(b.pair_space(), 5).unwrap().add_pullback_from_base(&g).unwrap(),
        );
        assert!(shear(&flat, 1).unwrap().is_zero());
        assert_eq!(shear(&flat, 1).unwrap().rep(), flat.rep());
    }

    #[test]
    fn malformed_bases_are_rejected() {
        let h = ExpClass::new(ExpObject::zero(FiniteSet::new(4).unwrap(), 3).unwrap());
        assert!(matches!(ft(&h, 1), Err(Error::MalformedBase { .. })));
        assert!(shear(&h, 1).is_err());
    }

    #[test]
    fn ft_of_delta_at_origin() {
        let b = Bundle::new(1, 1, 3).unwrap();
        let h = ExpClass::new(ExpObject::delta(b.total(), 3, 0, 0).unwrap());
        let out = ft(&h, 1).unwrap();
        let expected = ExpObject::from_rational_fn(b.total(), 3, |_, t| q(-i64::from(t == 0))).unwrap();
        assert_eq!(out.rep(), &expected);
    }

    #[test]
    fn incidence_counts_p3_r1() {
        // #{x : x y = t} by enumeration
        let b = Bundle::new(1, 1, 3).unwrap();
        let counts = pushforward(
            &b.second_projection(),
            &pullback(&b.pairing(), &kernel_e(3).unwrap()).unwrap(),
        )
        .unwrap();
        let mut oracle = vec![vec![0i64; 3]; 3];
        for x in 0..3 {
            for y in 0..3 {
                oracle[y][(x * y) % 3] += 1;
            }
        }
        assert_eq!(oracle, vec![vec![3, 0, 0], vec![1, 1, 1], vec![1, 1, 1]]);
        assert_eq!(rational_table(&counts), oracle);
        // ft of the unit reproduces the same table up to the sign (−1)^r
        let ft_unit = ft(&unit_1(b.total(), 3).unwrap(), 1).unwrap();
        assert_eq!(ft_unit.rep(), twist_scale(&counts, 1, 0).rep());
    }

    #[test]
    fn classical_ft_examples() {
        let b = Bundle::new(1, 1, 3).unwrap();
        let mut delta = vec![Cyclo::zero(3); 3];
        delta[0] = Cyclo::one(3);
        for v in classical_ft(&delta, 1, 1, 3).unwrap() {
            assert_eq!(v, Cyclo::one(3).scale(&q(-1)));
        }
        let ones = vec![Cyclo::one(3); b.total().size()];
        let out = classical_ft(&ones, 1, 1, 3).unwrap();
        assert_eq!(out[0], Cyclo::one(3).scale(&q(-3)));
        assert!(out[1].is_zero() && out[2].is_zero());
    }

    #[test]
    fn real_psi_examples() {
        let e = kernel_e(5).unwrap();
        for lambda in 1..5 {
            let r = real_psi(&e, lambda).unwrap();
            for (s, v) in r.iter().enumerate() {
                assert_eq!(v, &psi(s as i64, lambda, 5).unwrap());
            }
        }
        let u = unit_1(FiniteSet::new(3).unwrap(), 7).unwrap();
        assert!(real_psi(&u, 3).unwrap().iter().all(Cyclo::is_one));
        assert!(matches!(real_psi(&u, 7), Err(Error::NotRealizationKernel(7))));
    }

    #[test]
    fn kloosterman_matches_double_loop() {
        let p = 7i64;
        let k = kloosterman_class(7, 1).unwrap();
        let pipeline = real_psi(&k, 1).unwrap();
        let mut direct = Cyclo::zero(7);
        for x in 1..p {
            for y in 1..p {
                if (x * y) % p == 1 {
                    direct.add_assign_ref(&Cyclo::zeta_pow(x + y, 7));
                }
            }
        }
        assert_eq!(pipeline, vec![direct]);
    }

    #[test]
    fn shear_equals_convolution_with_pulled_back_kernel() {
        let mut rng = rand::thread_rng();
        let b = Bundle::new(1, 1, 5).unwrap();
        let h = ExpClass::new(ExpObject::random(&mut rng, b.pair_space(), 5, 0.3).unwrap());
        let kernel = pullback(&b.pairing(), &kernel_e(5).unwrap()).unwrap();
        assert_eq!(shear(&h, 1).unwrap().rep(), conv(&h, &kernel).unwrap().rep());
    }

    #[test]
    fn neg_vec_digits() {
        let b = Bundle::new(1, 2, 5).unwrap();
        // (1, 2) -> (4, 3)
        assert_eq!(b.neg_vec(1 + 2 * 5), 4 + 3 * 5);
        assert_eq!(b.dot(1 + 2 * 5, 3 + 4 * 5), (3 + 8) % 5);
    }

    #[test]
    fn legendre_and_square_pushforward_share_a_class() {
        let a = legendre_class(7).unwrap();
        let b = square_pushforward_class(7).unwrap();
        assert_eq!(a, b);
    }
}
