use super::{verdict, Case, Outcome, SuiteParams};
use crate::cyclotomic::{psi, Cyclo};
use crate::dmodule::{delta, derham_pushforward, kummer, make_l, real_at, structure_sheaf, CyclicModule};
use crate::error::Result;
use crate::finite_model::{
    kernel_e, kloosterman_class, legendre_class, pushforward, real_psi,
    square_pushforward_class, unit_1, ExpClass, ExpObject, FiniteMap, FiniteSet,
};
use crate::rat::{q, qf, Q};

const A_REAL: &str = r"\mathrm{real}_{\mathcal{L}}(K) = \pi_{X!}(K\otimes\mu^*\mathcal{L})";
const A_UNIT: &str = r"\mathbf{1}_X = (\mathrm{id}\times i_0)_!";
const A_QUOTIENT: &str = r"E(X) = D(X\times G_a)/\pi_X^*D(X)";
const A_PI_SHRIEK: &str = r"\pi_!\mathcal{L}_{\lambda}=0";
const A_KLOOSTERMAN: &str = r"\sum_{x\neq 0}\psi(x + a x^{-1})";

pub(super) fn cases(params: &SuiteParams) -> Vec<Case> {
    let mut primes = params.primes.clone();
    if !primes.contains(&7) {
        primes.push(7);
    }
    let mut out = Vec::new();
    for &p in &params.primes {
        out.push(Case::new(format!("cross-delta-p{p}"), A_REAL, move || delta_case(p)));
        out.push(Case::new(format!("cross-unit-p{p}"), A_UNIT, move || unit_case(p)));
        out.push(Case::new(format!("cross-constant-p{p}"), A_QUOTIENT, move || constant_case(p)));
        out.push(Case::new(format!("cross-square-pushforward-p{p}"), A_REAL, move || square_case(p)));
        out.push(Case::new(format!("cross-kernel-pushforward-p{p}"), A_PI_SHRIEK, move || {
            kernel_pushforward_case(p)
        }));
    }
    for p in primes {
        out.push(Case::new(format!("kloosterman-p{p}"), A_KLOOSTERMAN, move || kloosterman_case(p)));
    }
    out
}

/// Matched characters: λ = 1 and λ = −2 on both sides.
fn lambdas() -> [i64; 2] {
    [1, -2]
}

/// |z|² as an exact rational.
fn norm(z: &Cyclo) -> Q {
    (z * &z.conj()).as_rational().cloned().expect("norms are rational")
}

/// Compares a trace on a point with a cohomology dimension: zero exactly
/// together, and a nonzero trace of norm p^w for a rank-one output.
fn coherent(trace: &Cyclo, dim: usize, weight: u32, p: u64) -> bool {
    if trace.is_zero() {
        return dim == 0;
    }
    dim == 1 && norm(trace) == q((p as i64).pow(weight))
}

fn on_point(p: u64, f: impl Fn(usize) -> Q) -> Result<ExpClass> {
    Ok(ExpClass::new(ExpObject::from_rational_fn(FiniteSet::point(), p, |_, t| f(t))?))
}

fn real_point(h: &ExpClass, lambda: i64) -> Result<Cyclo> {
    Ok(real_psi(h, lambda)?.remove(0))
}

fn delta_case(p: u64) -> Result<Outcome> {
    for c in 0..p as usize {
        let h = on_point(p, |t| if t == c { q(1) } else { q(0) })?;
        for lam in lambdas() {
            let tr = real_point(&h, lam)?;
            if tr != psi(c as i64, lam, p)? {
                return Ok(Err(format!("trace of delta_{c} at {lam}")));
            }
            let dm = real_at(&delta(&q(c as i64)), &q(lam))?;
            if !coherent(&tr, dm.total_dim(), 0, p) || dm.dim_in_degree(0) != 1 {
                return Ok(Err(format!("delta_{c} at {lam}: trace vs ({}, {})", dm.dim_ker, dm.dim_coker)));
            }
        }
    }
    Ok(Ok(format!("{p} points: trace psi(lc) of norm 1, real_at dimension 1")))
}

fn unit_case(p: u64) -> Result<Outcome> {
    let u = unit_1(FiniteSet::point(), p)?;
    for lam in lambdas() {
        let tr = real_point(&u, lam)?;
        let dm = real_at(&delta(&q(0)), &q(lam))?;
        if !tr.is_one() || !coherent(&tr, dm.total_dim(), 0, p) {
            return Ok(Err(format!("lambda {lam}: unit trace {tr}, dimension {}", dm.total_dim())));
        }
    }
    Ok(Ok("unit: trace 1, delta_0: dimension 1".into()))
}

fn constant_case(p: u64) -> Result<Outcome> {
    let h = on_point(p, |_| qf(3, 2))?;
    for lam in lambdas() {
        let tr = real_point(&h, lam)?;
        let dm = real_at(&structure_sheaf(), &q(lam))?;
        if !coherent(&tr, dm.total_dim(), 0, p) || !h.is_zero() {
            return Ok(Err(format!("lambda {lam}: constant trace {tr}, O dimension {}", dm.total_dim())));
        }
    }
    Ok(Ok("constant class: zero class, trace 0; O: dimension 0".into()))
}

/// π_! of 𝔼 along the squaring map against the Kummer module of exponent 1/2.
fn square_case(p: u64) -> Result<Outcome> {
    let h = square_pushforward_class(p)?;
    let leg = legendre_class(p)?;
    if h != leg {
        return Ok(Err("square pushforward and Legendre classes differ".into()));
    }
    for lam in lambdas() {
        let tr = real_point(&h, lam)?;
        for alpha in [qf(1, 2), qf(-1, 2)] {
            let dm = real_at(&kummer(&alpha), &q(lam))?;
            if !coherent(&tr, dm.total_dim(), 1, p) {
                return Ok(Err(format!(
                    "lambda {lam}: Gauss sum norm {}, kummer {alpha} dimension {}",
                    norm(&tr),
                    dm.total_dim()
                )));
            }
        }
    }
    Ok(Ok(format!("Gauss sum of norm {p}; kummer 1/2: dimension 1")))
}

/// π_!𝔼 on G_a is constant, hence zero; de Rham pushforward of L_λ vanishes.
fn kernel_pushforward_case(p: u64) -> Result<Outcome> {
    let e = kernel_e(p)?;
    let pushed = pushforward(&FiniteMap::to_point(e.base()), &e)?;
    for lam in lambdas() {
        let tr = real_point(&pushed, lam)?;
        let dm = derham_pushforward(&make_l(&q(lam)).0)?;
        if !tr.is_zero() || dm.total_dim() != 0 || !pushed.is_zero() {
            return Ok(Err(format!("lambda {lam}: trace {tr}, dimension {}", dm.total_dim())));
        }
    }
    let two = CyclicModule::parse(1, &["d - 1"])?;
    Ok(verdict(
        derham_pushforward(&two)?.certificate.label() == "exact-triangular",
        "pi_!E is zero, trace 0; pi_!L_l = 0",
        "certificate",
    ))
}

fn kloosterman_case(p: u64) -> Result<Outcome> {
    let pi = p as i64;
    for a in 1..pi {
        let h = kloosterman_class(p, a)?;
        for lam in 1..pi {
            let pipeline = real_point(&h, lam)?;
            let mut direct = Cyclo::zero(p);
            for x in 1..pi {
                for y in 1..pi {
                    if (x * y).rem_euclid(pi) == 1 {
                        direct.add_assign_ref(&psi(x + a * y, lam, p)?);
                    }
                }
            }
            if pipeline != direct {
                return Ok(Err(format!("a = {a}, lambda = {lam}: pipeline {pipeline} vs direct {direct}")));
            }
            if pipeline.conj() != pipeline {
                return Ok(Err(format!("a = {a}: Kloosterman sum is not real")));
            }
        }
    }
    let kl = real_point(&kloosterman_class(p, 1)?, 1)?;
    Ok(Ok(format!("Kl(1) = {kl}; all a, lambda match the double loop")))
}
