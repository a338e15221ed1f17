use std::sync::{Arc, OnceLock};

use rand::Rng;

use super::{rng_for, verdict, Case, Outcome, SuiteParams};
use crate::cyclotomic::{psi, Cyclo};
use crate::error::{Error, Result};
use crate::finite_model::{
    affine_line, canonical_rep, classical_ft, conv, fiber_product, ft, ft_via_kernel, kernel_e,
    map_sum, negation, pullback, pushforward, random_cyclo, real_psi, shear, twist_scale, unit_1,
    unshear, Bundle, ExpClass, ExpObject, FiniteMap, FiniteSet,
};
use crate::rat::{q, sign_pow};

const A_QUOTIENT: &str = r"E(X) = D(X\times G_a)/\pi_X^*D(X)";
const A_ADDITIVITY: &str = r"\bm{f^*}\EE \overset{+}{\otimes} \bm{g^*}\EE \simeq \bm{(f+g)^*}\EE";
const A_INVERTIBLE: &str = r"\EE \overset{+}{\otimes} [-1]^*\EE \simeq \mathbf{1}_{\GG_a}";
const A_ORTHOGONALITY: &str = r"\bm{q_!m^*}\EE \simeq \bm{s_!}\mathbf{1}_S[-2r](-r)";
const A_INVERSION: &str = r"\mathbf{FT}_{V^{\vee}}\circ\mathbf{FT}_{V}(K) \simeq \bm{a_!}K(-r)";
const A_SHEAR: &str = r"(x,y,t)\mapsto(x,y,t+m(x,y))";
const A_FT: &str = r"\mathbf{FT}_V(K) = q_!(p^*K\overset{+}{\otimes}m^*\EE)[r]";
const A_FT_REAL: &str = r"\mathrm{real}_{1} \circ \mathbf{FT}_V \simeq \mathbf{FT}^{\mathrm{dR}}_V \circ \mathrm{real}_{1}";
const A_REAL_KERNEL: &str = r"\mathrm{real}_{\mathcal{L}}(\EE) \simeq \mathcal{L}";
const A_UNIT: &str = r"\mathbf{1}_X = (\mathrm{id}\times i_0)_!";
const A_CONV: &str = r"K\overset{+}{\otimes}L = (\mathrm{id}\times\mathrm{sum})_!(p_{12}^*K\otimes p_{13}^*L)";
const A_BASE_CHANGE: &str = r"(f\times \mathrm{id}_{\GG_a})_!";
const A_PROJECTION: &str = r"f_!(K\overset{+}{\otimes}f^*L)\simeq f_!K\overset{+}{\otimes}L";
const A_TWIST: &str = r"[1] \mapsto -1,\ (1) \mapsto p^{-1}";

pub(super) fn cases(params: &SuiteParams) -> Vec<Case> {
    let mut out = Vec::new();
    let seed = params.seed;
    let count = params.random_cases;
    for &p in &params.primes {
        out.push(Case::new(format!("fm-canonical-rep-p{p}"), A_QUOTIENT, move || {
            canonical_rep_case(p, seed)
        }));
        out.push(Case::new(format!("fm-additivity-p{p}"), A_ADDITIVITY, move || {
            additivity_case(p, seed, count)
        }));
        out.push(Case::new(format!("fm-invertibility-p{p}"), A_INVERTIBLE, move || {
            invertibility_case(p)
        }));
        out.push(Case::new(format!("fm-real-kernel-p{p}"), A_REAL_KERNEL, move || {
            real_kernel_case(p)
        }));
        out.push(Case::new(format!("fm-unit-p{p}"), A_UNIT, move || unit_case(p, seed)));
        out.push(Case::new(format!("fm-conv-p{p}"), A_CONV, move || conv_case(p, seed)));
        out.push(Case::new(format!("fm-base-change-p{p}"), A_BASE_CHANGE, move || {
            base_change_case(p, seed, count)
        }));
        out.push(Case::new(format!("fm-projection-formula-p{p}"), A_PROJECTION, move || {
            projection_case(p, seed, count)
        }));
        out.push(Case::new(format!("fm-well-defined-p{p}"), A_QUOTIENT, move || {
            well_defined_case(p, seed, count)
        }));
        out.push(Case::new(format!("fm-twist-scale-p{p}"), A_TWIST, move || twist_case(p, seed)));
        for &r in &params.ranks {
            let shared: Shared = Arc::new(OnceLock::new());
            let tag = format!("p{p}-r{r}");
            out.push(Case::new(format!("fm-orthogonality-{tag}"), A_ORTHOGONALITY, move || {
                orthogonality_case(p, r)
            }));
            let s = shared.clone();
            out.push(Case::new(format!("fm-inversion-{tag}"), A_INVERSION, move || {
                inversion_case(basis(&s, p, r)?)
            }));
            let s = shared.clone();
            out.push(Case::new(format!("fm-shear-oracle-{tag}"), A_SHEAR, move || {
                shear_oracle_case(basis(&s, p, r)?)
            }));
            let s = shared;
            out.push(Case::new(format!("fm-ft-realization-{tag}"), A_FT_REAL, move || {
                ft_realization_case(basis(&s, p, r)?)
            }));
            out.push(Case::new(format!("fm-ft-kernel-{tag}"), A_FT, move || {
                ft_kernel_case(p, r, seed, count)
            }));
        }
    }
    out
}

/// The delta basis of E(V) and its transforms, shared by the cases of one (p, r).
pub(crate) struct DeltaBasis {
    pub bundle: Bundle,
    pub deltas: Vec<ExpClass>,
    pub transforms: Vec<ExpClass>,
}

type Shared = Arc<OnceLock<Result<DeltaBasis>>>;

fn basis(cell: &Shared, p: u64, r: usize) -> Result<&DeltaBasis> {
    cell.get_or_init(|| delta_basis(p, r)).as_ref().map_err(Clone::clone)
}

/// S has two points in rank 1, one otherwise.
pub(crate) fn delta_basis(p: u64, r: usize) -> Result<DeltaBasis> {
    let bundle = Bundle::new(if r == 1 { 2 } else { 1 }, r, p)?;
    let total = bundle.total();
    let mut deltas = Vec::new();
    for v in 0..total.size() {
        for t in 0..p as usize {
            deltas.push(ExpClass::new(ExpObject::delta(total, p, v, t)?));
        }
    }
    let transforms = deltas.iter().map(|h| ft(h, r)).collect::<Result<_>>()?;
    Ok(DeltaBasis {
        bundle,
        deltas,
        transforms,
    })
}

/// (−1)^r Σ_x h(s, x, t − m(x, y)), summed directly.
pub(crate) fn ft_closed_formula(h: &ExpObject, b: &Bundle) -> Result<ExpObject> {
    let p = b.prime as usize;
    let n = b.fiber_size();
    let mut out = ExpObject::zero(b.total(), b.prime)?;
    for s in 0..b.fiber_count {
        for x in 0..n {
            for t0 in 0..p {
                let v = h.at(s * n + x, t0);
                if v.is_zero() {
                    continue;
                }
                for y in 0..n {
                    let t = (t0 + b.dot(x, y)) % p;
                    out.at_mut(s * n + y, t).add_assign_ref(v);
                }
            }
        }
    }
    Ok(out.scale(&sign_pow(b.rank as i64)))
}

fn inversion_case(b: &DeltaBasis) -> Result<Outcome> {
    let r = b.bundle.rank;
    for (i, (h, f)) in b.deltas.iter().zip(&b.transforms).enumerate() {
        let lhs = ft(f, r)?;
        let rhs = twist_scale(&pullback(&b.bundle.negation(), h)?, 0, -(r as i64));
        if lhs != rhs {
            return Ok(Err(format!("ft(ft(delta #{i})) differs from p^r a^*delta")));
        }
    }
    Ok(Ok(format!("{} delta classes: ft o ft = p^r [-1]^*", b.deltas.len())))
}

fn shear_oracle_case(b: &DeltaBasis) -> Result<Outcome> {
    for (i, (h, f)) in b.deltas.iter().zip(&b.transforms).enumerate() {
        let oracle = ExpClass::new(ft_closed_formula(h.rep(), &b.bundle)?);
        if *f != oracle {
            return Ok(Err(format!("pipeline ft of delta #{i} differs from the direct sum")));
        }
        // the shear alone, before any quotient: a permutation of entries
        let lifted = pullback(&b.bundle.first_projection(), h)?;
        if unshear(&shear(&lifted, b.bundle.rank)?, b.bundle.rank)?.rep() != lifted.rep() {
            return Ok(Err(format!("unshear o shear moved delta #{i}")));
        }
    }
    Ok(Ok(format!("{} delta classes match the closed formula", b.deltas.len())))
}

fn ft_realization_case(b: &DeltaBasis) -> Result<Outcome> {
    let p = b.bundle.prime;
    let r = b.bundle.rank;
    for lambda in 1..p as i64 {
        for (i, (h, f)) in b.deltas.iter().zip(&b.transforms).enumerate() {
            let lhs = real_psi(f, lambda)?;
            let rhs = classical_ft(&real_psi(h, lambda)?, lambda, r, p)?;
            if lhs != rhs {
                return Ok(Err(format!("lambda {lambda}, delta #{i}: real o ft != classical ft o real")));
            }
        }
    }
    Ok(Ok(format!("{} delta classes x {} characters", b.deltas.len(), p - 1)))
}

/// ft through the literal convolution with m^*𝔼 agrees with the shear
/// pipeline on sparse random inputs.
fn ft_kernel_case(p: u64, r: usize, seed: u64, count: usize) -> Result<Outcome> {
    let bundle = Bundle::new(1, r, p)?;
    let mut rng = rng_for(seed, &format!("fm-ft-kernel-p{p}-r{r}"));
    let trials = count.clamp(1, 5);
    for k in 0..trials {
        let h = sparse_random(&mut rng, bundle.total(), p, 4)?;
        if ft(&h, r)? != ft_via_kernel(&h, r)? {
            return Ok(Err(format!("trial {k}: shear pipeline != convolution with m^*E")));
        }
    }
    Ok(Ok(format!("{trials} sparse random inputs")))
}

fn orthogonality_case(p: u64, r: usize) -> Result<Outcome> {
    let b = Bundle::new(1, r, p)?;
    let lhs = pushforward(&b.second_projection(), &pullback(&b.pairing(), &kernel_e(p)?)?)?;
    // raw incidence counts #{x : m(x, y) = t}
    let n = b.fiber_size();
    for y in 0..n {
        for t in 0..p as usize {
            let count = (0..n).filter(|&x| b.dot(x, y) == t).count() as i64;
            let expected = if y == 0 {
                if t == 0 { n as i64 } else { 0 }
            } else {
                n as i64 / p as i64
            };
            if count != expected || lhs.rep().at(y, t).as_rational() != Some(&q(count)) {
                return Ok(Err(format!("incidence count at y={y}, t={t}")));
            }
        }
    }
    let rhs = twist_scale(&pushforward(&b.zero_section(), &unit_1(FiniteSet::point(), p)?)?, 0, -(r as i64));
    Ok(verdict(
        lhs == rhs,
        format!("zero row {n}*delta_(t=0), other rows constant {}", n as u64 / p),
        "q_!m^*E differs from p^r s_!1",
    ))
}

fn canonical_rep_case(p: u64, seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, &format!("fm-canonical-rep-p{p}"));
    let base = FiniteSet::new(3)?;
    let h = ExpObject::random(&mut rng, base, p, 0.5)?;
    let c = canonical_rep(&h);
    if canonical_rep(&c) != c {
        return Ok(Err("canonical_rep is not idempotent".into()));
    }
    for x in 0..3 {
        let mut s = Cyclo::zero(p);
        for v in c.row(x) {
            s.add_assign_ref(v);
        }
        if !s.is_zero() {
            return Ok(Err(format!("row {x} of the canonical rep has nonzero mean")));
        }
    }
    let constant = ExpObject::from_fn(base, p, |x, _| Cyclo::zeta_pow(x as i64, p))?;
    if !ExpClass::new(constant).is_zero() {
        return Ok(Err("t-independent table has nonzero class".into()));
    }
    let d = canonical_rep(&ExpObject::delta(FiniteSet::point(), p, 0, 0)?);
    let inv = crate::rat::qf(1, p as i64);
    let ok = (0..p as usize).all(|t| {
        let want = if t == 0 { q(1) - &inv } else { -inv.clone() };
        d.at(0, t).as_rational() == Some(&want)
    });
    Ok(verdict(ok, "idempotent, mean zero, constants vanish", "delta_(t=0) mean subtraction"))
}

fn all_maps(size: usize, p: u64) -> Vec<FiniteMap> {
    let total = (p as usize).pow(size as u32);
    let src = FiniteSet::new(size).expect("size >= 1");
    (0..total)
        .map(|mut code| {
            let table = (0..size)
                .map(|_| {
                    let d = code % p as usize;
                    code /= p as usize;
                    d
                })
                .collect();
            FiniteMap::new(src, affine_line(p), table).expect("in range")
        })
        .collect()
}

fn additivity_holds(f: &FiniteMap, g: &FiniteMap, e: &ExpClass, p: u64) -> Result<bool> {
    let lhs = conv(&pullback(f, e)?, &pullback(g, e)?)?;
    let rhs = pullback(&map_sum(f, g, p)?, e)?;
    // exact, before passing to classes
    Ok(lhs.rep() == rhs.rep())
}

/// Exhaustive over all pairs of maps for |X| ≤ 4 when p ≤ 5; random pairs
/// on |X| = 5 otherwise.
fn additivity_case(p: u64, seed: u64, count: usize) -> Result<Outcome> {
    let e = kernel_e(p)?;
    if p <= 5 {
        let mut pairs = 0usize;
        for size in 1..=4 {
            let maps = all_maps(size, p);
            for f in &maps {
                for g in &maps {
                    if !additivity_holds(f, g, &e, p)? {
                        return Ok(Err(format!("f = {:?}, g = {:?}", f.table(), g.table())));
                    }
                    pairs += 1;
                }
            }
        }
        return Ok(Ok(format!("exhaustive: {pairs} pairs of maps on |X| <= 4")));
    }
    let mut rng = rng_for(seed, &format!("fm-additivity-p{p}"));
    let x = FiniteSet::new(5)?;
    for _ in 0..count {
        let f = FiniteMap::random(&mut rng, x, affine_line(p));
        let g = FiniteMap::random(&mut rng, x, affine_line(p));
        if !additivity_holds(&f, &g, &e, p)? {
            return Ok(Err(format!("f = {:?}, g = {:?}", f.table(), g.table())));
        }
    }
    Ok(Ok(format!("{count} random pairs on |X| = 5")))
}

fn invertibility_case(p: u64) -> Result<Outcome> {
    let e = kernel_e(p)?;
    let lhs = conv(&e, &pullback(&negation(p), &e)?)?;
    let unit = unit_1(affine_line(p), p)?;
    Ok(verdict(
        lhs.rep() == unit.rep(),
        "E * [-1]^*E = delta_(t=0) on every row",
        "E * [-1]^*E is not the unit",
    ))
}

fn real_kernel_case(p: u64) -> Result<Outcome> {
    let e = kernel_e(p)?;
    for lambda in 1..p as i64 {
        let r = real_psi(&e, lambda)?;
        for (s, v) in r.iter().enumerate() {
            if *v != psi(s as i64, lambda, p)? {
                return Ok(Err(format!("real_psi(E, {lambda})({s}) != psi")));
            }
        }
        // π_! of the character vanishes
        let mut total = Cyclo::zero(p);
        for v in &r {
            total.add_assign_ref(v);
        }
        if !total.is_zero() {
            return Ok(Err(format!("sum of psi(., {lambda}) is nonzero")));
        }
    }
    if real_psi(&e, p as i64) != Err(Error::NotRealizationKernel(p)) {
        return Ok(Err("lambda = 0 mod p accepted".into()));
    }
    Ok(Ok(format!("real_psi(E, lambda) = psi_lambda for lambda = 1..{}", p - 1)))
}

fn unit_case(p: u64, seed: u64) -> Result<Outcome> {
    let x = FiniteSet::new(3)?;
    let u = unit_1(x, p)?;
    for lambda in 1..p as i64 {
        if real_psi(&u, lambda)?.iter().any(|v| !v.is_one()) {
            return Ok(Err(format!("real_psi(1, {lambda}) is not 1")));
        }
    }
    if conv(&u, &u)? != u {
        return Ok(Err("1 * 1 != 1".into()));
    }
    let mut rng = rng_for(seed, &format!("fm-unit-p{p}"));
    let h = ExpClass::new(ExpObject::random(&mut rng, x, p, 0.4)?);
    Ok(verdict(conv(&h, &u)? == h, "real(1) = 1, 1 neutral", "h * 1 != h"))
}

fn conv_case(p: u64, seed: u64) -> Result<Outcome> {
    let line = FiniteSet::point();
    let d = |t: usize| -> Result<ExpClass> { Ok(ExpClass::new(ExpObject::delta(line, p, 0, t % p as usize)?)) };
    for a in 0..p as usize {
        for b in 0..p as usize {
            if conv(&d(a)?, &d(b)?)?.rep() != d(a + b)?.rep() {
                return Ok(Err(format!("delta_{a} * delta_{b}")));
            }
        }
    }
    let mut rng = rng_for(seed, &format!("fm-conv-p{p}"));
    let x = FiniteSet::new(2)?;
    let h: Vec<ExpClass> = (0..3)
        .map(|_| ExpObject::random(&mut rng, x, p, 0.3).map(ExpClass::new))
        .collect::<Result<_>>()?;
    let comm = conv(&h[0], &h[1])? == conv(&h[1], &h[0])?;
    let assoc = conv(&conv(&h[0], &h[1])?, &h[2])? == conv(&h[0], &conv(&h[1], &h[2])?)?;
    Ok(verdict(comm && assoc, "deltas add, commutative, associative", "convolution identities"))
}

fn random_set<R: Rng>(rng: &mut R, max: usize) -> FiniteSet {
    FiniteSet::new(rng.gen_range(1..=max)).expect("nonempty")
}

fn base_change_case(p: u64, seed: u64, count: usize) -> Result<Outcome> {
    let mut rng = rng_for(seed, &format!("fm-base-change-p{p}"));
    let mut empty = 0;
    for k in 0..count {
        let (x, y, y2) = (random_set(&mut rng, 5), random_set(&mut rng, 4), random_set(&mut rng, 4));
        let f = FiniteMap::random(&mut rng, x, y);
        let g = FiniteMap::random(&mut rng, y2, y);
        let h = ExpClass::new(ExpObject::random(&mut rng, x, p, 0.3)?);
        let lhs = pullback(&g, &pushforward(&f, &h)?)?;
        let ok = match fiber_product(&f, &g)? {
            Some(sq) => lhs == pushforward(&sq.f_prime, &pullback(&sq.g_prime, &h)?)?,
            None => {
                empty += 1;
                lhs.rep().is_zero()
            }
        };
        if !ok {
            return Ok(Err(format!("square {k}: g^*f_! != f'_!g'^*")));
        }
    }
    Ok(Ok(format!("{count} random cartesian squares ({empty} with empty fiber product)")))
}

fn projection_case(p: u64, seed: u64, count: usize) -> Result<Outcome> {
    let mut rng = rng_for(seed, &format!("fm-projection-formula-p{p}"));
    for k in 0..count {
        let (x, y) = (random_set(&mut rng, 5), random_set(&mut rng, 4));
        let f = FiniteMap::random(&mut rng, x, y);
        let h = ExpClass::new(ExpObject::random(&mut rng, x, p, 0.3)?);
        let l = ExpClass::new(ExpObject::random(&mut rng, y, p, 0.3)?);
        let lhs = pushforward(&f, &conv(&h, &pullback(&f, &l)?)?)?;
        let rhs = conv(&pushforward(&f, &h)?, &l)?;
        if lhs != rhs {
            return Ok(Err(format!("case {k}: f_!(h * f^*l) != f_!h * l")));
        }
    }
    Ok(Ok(format!("{count} random cases")))
}

fn random_pullback<R: Rng>(rng: &mut R, h: &ExpClass) -> Result<ExpClass> {
    let g: Vec<Cyclo> = (0..h.base().size())
        .map(|_| random_cyclo(rng, h.prime(), 0.5))
        .collect();
    Ok(ExpClass::new(h.rep().add_pullback_from_base(&g)?))
}

/// Adding a function of x alone to any input never changes an output class.
fn well_defined_case(p: u64, seed: u64, count: usize) -> Result<Outcome> {
    let mut rng = rng_for(seed, &format!("fm-well-defined-p{p}"));
    let trials = count.clamp(1, 20);
    let bundle = Bundle::new(1, 1, p)?;
    for k in 0..trials {
        let x = random_set(&mut rng, 4);
        let y = random_set(&mut rng, 3);
        let f = FiniteMap::random(&mut rng, x, y);
        let h = ExpClass::new(ExpObject::random(&mut rng, x, p, 0.3)?);
        let h2 = random_pullback(&mut rng, &h)?;
        let k2 = ExpClass::new(ExpObject::random(&mut rng, x, p, 0.3)?);
        let on_y = ExpClass::new(ExpObject::random(&mut rng, y, p, 0.3)?);
        let on_y2 = random_pullback(&mut rng, &on_y)?;
        let on_v = sparse_random(&mut rng, bundle.total(), p, 3)?;
        let on_v2 = random_pullback(&mut rng, &on_v)?;
        let on_pair = sparse_random(&mut rng, bundle.pair_space(), p, 3)?;
        let on_pair2 = random_pullback(&mut rng, &on_pair)?;
        let lambda = rng.gen_range(1..p as i64);
        let checks = [
            ("pushforward", pushforward(&f, &h)? == pushforward(&f, &h2)?),
            ("pullback", pullback(&f, &on_y)? == pullback(&f, &on_y2)?),
            ("conv", conv(&h, &k2)? == conv(&h2, &k2)?),
            ("twist_scale", twist_scale(&h, 1, 2) == twist_scale(&h2, 1, 2)),
            ("shear", shear(&on_pair, 1)? == shear(&on_pair2, 1)?),
            ("ft", ft(&on_v, 1)? == ft(&on_v2, 1)?),
            ("real_psi", real_psi(&h, lambda)? == real_psi(&h2, lambda)?),
        ];
        if let Some((name, _)) = checks.iter().find(|c| !c.1) {
            return Ok(Err(format!("trial {k}: {name} depends on the representative")));
        }
    }
    Ok(Ok(format!("{trials} trials over 7 operations")))
}

fn twist_case(p: u64, seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, &format!("fm-twist-scale-p{p}"));
    let h = ExpClass::new(ExpObject::random(&mut rng, FiniteSet::new(2)?, p, 0.5)?);
    let ok = twist_scale(&h, 0, 0).rep() == h.rep()
        && twist_scale(&h, 4, 0).rep() == h.rep()
        && twist_scale(&h, 0, -1).rep() == h.scale(&q(p as i64)).rep()
        && twist_scale(&twist_scale(&h, 3, 2), -3, -2).rep() == h.rep();
    Ok(verdict(ok, "[2r] trivial, (-1) multiplies by p", "twist_scale scalars"))
}

/// A few random deltas with random coefficients.
fn sparse_random<R: Rng>(rng: &mut R, base: FiniteSet, p: u64, terms: usize) -> Result<ExpClass> {
    let mut h = ExpObject::zero(base, p)?;
    for _ in 0..terms {
        let x = rng.gen_range(0..base.size());
        let t = rng.gen_range(0..p as usize);
        h.at_mut(x, t).add_assign_ref(&random_cyclo(rng, p, 0.6));
    }
    Ok(ExpClass::new(h))
}
