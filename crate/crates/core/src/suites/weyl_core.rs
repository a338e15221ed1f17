use rand::seq::SliceRandom;
use rand::Rng;

use super::{rng_for, verdict, Case, Outcome, SuiteParams};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, monomials_up_to, GroebnerBasis};
use crate::rat::{q, qf, Q};
use crate::weyl::{parse_weyl, WeylElt, WeylMonomial};

const A_RELATION: &str = r"\partial_t t = t\partial_t + 1";
const A_ADJOINT: &str = r"(\partial_t-\lambda)^t = -\partial_t-\lambda";
const A_WEDGE_TWICE: &str = r"K^{\wedge\wedge} \simeq a^*K";
const A_TWIST: &str = r"K\otimes\mu^*\mathcal{L}";
const A_SYMBOL: &str = r"\sigma(PQ) = \sigma(P)\sigma(Q)";
const A_PARSE: &str = r"x^2*d^2 + 4*x*d + 2";
const A_UNIT_IDEAL: &str = r"(\partial+\lambda)t - t(\partial+\lambda) = 1";
const A_GB: &str = r"P \in I \iff \mathrm{NF}(P) = 0";
const A_HOLONOMIC: &str = r"D_{\mathrm{hol}}(X)";

/// Every ideal the suites work with, as (name, n, generators).
pub(crate) fn suite_ideals() -> Vec<(&'static str, usize, Vec<&'static str>)> {
    vec![
        ("L_1", 1, vec!["d - 1"]),
        ("L_-1", 1, vec!["d + 1"]),
        ("L_2", 1, vec!["d - 2"]),
        ("L_-2", 1, vec!["d + 2"]),
        ("L_1/2", 1, vec!["d - 1/2"]),
        ("O", 1, vec!["d"]),
        ("delta_0", 1, vec!["x"]),
        ("delta_3/2", 1, vec!["x - 3/2"]),
        ("kummer_1/3", 1, vec!["x*d - 1/3"]),
        ("kummer_1/2", 1, vec!["x*d - 1/2"]),
        ("kummer_2", 1, vec!["x*d - 2"]),
        ("two_points_1/3", 1, vec!["x^2*d - x*d - 1/3"]),
        ("two_points_1/2", 1, vec!["x^2*d - x*d - 1/2"]),
        ("two_points_2", 1, vec!["x^2*d - x*d - 2"]),
        ("airy", 1, vec!["d^2 - x"]),
        ("sum_side", 2, vec!["d1 - 1", "d2 - d1"]),
        ("box_side", 2, vec!["d1 - 1", "d2 - 1"]),
        ("constant_2", 2, vec!["d1", "d2"]),
        ("kernel_module", 2, vec!["x1 - x2", "d1 + d2"]),
        ("kernel_wedge", 2, vec!["x1 - d2", "d1 - x2"]),
        ("line_delta", 2, vec!["d1 - 1", "x2"]),
    ]
}

pub(super) fn cases(params: &SuiteParams) -> Vec<Case> {
    let seed = params.seed;
    vec![
        Case::new("weyl-relations", A_RELATION, relations_case),
        Case::new("weyl-adjoint", A_ADJOINT, move || adjoint_case(seed)),
        Case::new("weyl-fourier", A_WEDGE_TWICE, move || fourier_case(seed)),
        Case::new("weyl-exp-twist", A_TWIST, move || twist_case(seed)),
        Case::new("weyl-symbols", A_SYMBOL, move || symbol_case(seed)),
        Case::new("weyl-parse", A_PARSE, move || parse_case(seed)),
        Case::new("gb-examples", A_UNIT_IDEAL, gb_examples_case),
        Case::new("gb-canonicity", A_GB, move || canonicity_case(seed)),
        Case::new("gb-membership", A_GB, move || membership_case(seed)),
        Case::new("gb-commutative", A_GB, commutative_case),
        Case::new("gb-hilbert", A_HOLONOMIC, hilbert_case),
    ]
}

fn w(s: &str, n: usize) -> Result<WeylElt> {
    parse_weyl(s, n)
}

fn random_pair<R: Rng>(rng: &mut R) -> (WeylElt, WeylElt) {
    let n = rng.gen_range(1..=2);
    (WeylElt::random(rng, n, 3, 4), WeylElt::random(rng, n, 3, 4))
}

fn relations_case() -> Result<Outcome> {
    let checks = [
        (&w("d", 1)? * &w("x", 1)?, w("x*d + 1", 1)?),
        (&w("d^2", 1)? * &w("x^2", 1)?, w("x^2*d^2 + 4*x*d + 2", 1)?),
        (&w("x*d", 1)? * &w("x*d", 1)?, w("x^2*d^2 + x*d", 1)?),
        (w("d1*x1", 2)?, w("x1*d1 + 1", 2)?),
        (w("d2*x1", 2)?, w("x1*d2", 2)?),
    ];
    let bad = checks.iter().position(|(a, b)| a != b);
    Ok(verdict(
        bad.is_none(),
        "dx = xd + 1, d^2x^2 = x^2d^2 + 4xd + 2, (xd)^2 = x^2d^2 + xd",
        format!("relation #{} fails", bad.unwrap_or(0)),
    ))
}

fn adjoint_case(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, "weyl-adjoint");
    for lam in [q(1), q(-2), qf(1, 2)] {
        let p = &w("d", 1)? - &WeylElt::constant(lam.clone(), 1);
        let want = &w("-d", 1)? - &WeylElt::constant(lam, 1);
        if p.adjoint() != want {
            return Ok(Err(format!("adjoint({p}) = {}", p.adjoint())));
        }
    }
    if w("x", 1)?.adjoint() != w("x", 1)? {
        return Ok(Err("adjoint(x) != x".into()));
    }
    for k in 0..50 {
        let (p, q2) = random_pair(&mut rng);
        if (&p * &q2).adjoint() != &q2.adjoint() * &p.adjoint() {
            return Ok(Err(format!("pair {k}: (PQ)^t != Q^t P^t")));
        }
        if p.adjoint().adjoint() != p {
            return Ok(Err(format!("pair {k}: adjoint is not involutive")));
        }
    }
    Ok(Ok("50 random pairs: anti-homomorphism and involution".into()))
}

fn fourier_case(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, "weyl-fourier");
    if w("d - 3", 1)?.fourier_auto(&[0]) != w("-x - 3", 1)? || w("x*d", 1)?.fourier_auto(&[0]) != w("-x*d - 1", 1)? {
        return Ok(Err("substitution examples".into()));
    }
    for k in 0..50 {
        let (p, q2) = random_pair(&mut rng);
        let n = p.n();
        let vars: Vec<usize> = if n == 1 || rng.gen_bool(0.5) { (0..n).collect() } else { vec![rng.gen_range(0..n)] };
        if (&p * &q2).fourier_auto(&vars) != &p.fourier_auto(&vars) * &q2.fourier_auto(&vars) {
            return Ok(Err(format!("element {k}: not a homomorphism")));
        }
        if p.fourier_auto(&vars).fourier_auto(&vars) != p.negate_vars(&vars) {
            return Ok(Err(format!("element {k}: square is not x -> -x, d -> -d")));
        }
        if p.fourier_auto(&vars).fourier_auto_inverse(&vars) != p {
            return Ok(Err(format!("element {k}: inverse")));
        }
    }
    Ok(Ok("50 random elements: homomorphism, square = sign substitution".into()))
}

fn twist_case(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, "weyl-exp-twist");
    if w("d - 2", 1)?.exp_twist(&q(-2), 0) != w("d", 1)? || w("d", 1)?.exp_twist(&q(3), 0) != w("d - 3", 1)? {
        return Ok(Err("twist examples".into()));
    }
    for k in 0..50 {
        let (p, q2) = random_pair(&mut rng);
        let lam: Q = qf(rng.gen_range(-4..5), rng.gen_range(1..4));
        let var = rng.gen_range(0..p.n());
        if p.exp_twist(&lam, var).exp_twist(&-lam.clone(), var) != p {
            return Ok(Err(format!("element {k}: twist round trip")));
        }
        if (&p * &q2).exp_twist(&lam, var) != &p.exp_twist(&lam, var) * &q2.exp_twist(&lam, var) {
            return Ok(Err(format!("element {k}: twist is not multiplicative")));
        }
    }
    Ok(Ok("untwists L_2 to O; 50 round trips".into()))
}

fn symbol_case(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, "weyl-symbols");
    let mut tested = 0;
    for k in 0..50 {
        let (p, q2) = random_pair(&mut rng);
        if p.is_zero() || q2.is_zero() {
            continue;
        }
        tested += 1;
        let pq = &p * &q2;
        if pq.bernstein_degree()? != p.bernstein_degree()? + q2.bernstein_degree()? {
            return Ok(Err(format!("pair {k}: degree is not additive")));
        }
        if pq.top_symbol() != p.top_symbol().commutative_mul(&q2.top_symbol()) {
            return Ok(Err(format!("pair {k}: symbols do not multiply")));
        }
        let commutator = &pq - &(&q2 * &p);
        if !commutator.is_zero() && commutator.bernstein_degree()? + 2 > pq.bernstein_degree()? {
            return Ok(Err(format!("pair {k}: commutator degree does not drop by 2")));
        }
    }
    if WeylElt::zero(1).bernstein_degree() != Err(Error::ZeroElement) {
        return Ok(Err("zero element has a degree".into()));
    }
    Ok(Ok(format!("{tested} random pairs")))
}

fn parse_case(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, "weyl-parse");
    let fixed = "x^2*d^2 + 4*x*d + 2";
    if w(fixed, 1)?.to_string() != fixed {
        return Ok(Err("canonical string does not round-trip".into()));
    }
    for k in 0..50 {
        let n = rng.gen_range(1..=2);
        let p = WeylElt::random(&mut rng, n, 4, 5);
        let s = p.to_string();
        let back = w(&s, n)?;
        if back != p || back.to_string() != s {
            return Ok(Err(format!("element {k}: '{s}' does not round-trip")));
        }
    }
    let positioned = matches!(w("x +* d", 1), Err(Error::Syntax { column: 4, .. }));
    let unknown = matches!(w("x3", 2), Err(Error::UnknownVariable { .. }));
    Ok(verdict(
        positioned && unknown,
        "50 random print/parse round trips; errors carry positions",
        "error reporting",
    ))
}

fn gb_examples_case() -> Result<Outcome> {
    for lam in [q(1), q(-3), qf(1, 2)] {
        let p = &w("d", 1)? - &WeylElt::constant(lam.clone(), 1);
        let g = buchberger(std::slice::from_ref(&p))?;
        if g.basis() != [p] {
            return Ok(Err(format!("{{d - {lam}}} is not its own basis")));
        }
        if g.normal_form(&w("d^2", 1)?) != WeylElt::constant(&lam * &lam, 1) {
            return Ok(Err("NF(d^2) != lambda^2".into()));
        }
        let unit = buchberger(&[&w("d", 1)? + &WeylElt::constant(lam.clone(), 1), w("x", 1)?])?;
        if !unit.is_unit() {
            return Ok(Err(format!("{{d + {lam}, x}} not detected as the unit ideal")));
        }
    }
    let two = [w("d1 - 1", 2)?, w("d2 - 1", 2)?];
    let g = buchberger(&two)?;
    let mut sorted = two.to_vec();
    sorted.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    if g.basis() != sorted.as_slice() {
        return Ok(Err("{d1 - 1, d2 - 1} is not its own basis".into()));
    }
    if buchberger(&[WeylElt::zero(1)]).err() != Some(Error::ZeroIdealInput) {
        return Ok(Err("zero input accepted".into()));
    }
    Ok(Ok("NF(d^2) = lambda^2; {d + lambda, x} is the unit ideal".into()))
}

fn canonicity_case(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, "gb-canonicity");
    let ideals = suite_ideals();
    for (name, n, gens) in &ideals {
        let elts: Vec<WeylElt> = gens.iter().map(|g| w(g, *n)).collect::<Result<_>>()?;
        let g = buchberger(&elts)?;
        for _ in 0..3 {
            let mut shuffled = elts.clone();
            shuffled.shuffle(&mut rng);
            // redundant generators must not change the basis either
            let extra = &WeylElt::random(&mut rng, *n, 2, 2) * &elts[0];
            shuffled.push(extra);
            if !buchberger(&shuffled)?.ideal_eq(&g) {
                return Ok(Err(format!("{name}: basis depends on the generators")));
            }
        }
        if g.hilbert_dimension()? < *n {
            return Ok(Err(format!("{name}: Bernstein inequality fails")));
        }
    }
    if buchberger(&[w("d - 1", 1)?])?.ideal_eq(&buchberger(&[w("d - 2", 1)?])?) {
        return Ok(Err("{d - 1} = {d - 2}".into()));
    }
    Ok(Ok(format!("{} suite ideals: order-independent, dimension >= n", ideals.len())))
}

fn membership_case(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, "gb-membership");
    let ideals = suite_ideals();
    for (name, n, gens) in &ideals {
        let elts: Vec<WeylElt> = gens.iter().map(|g| w(g, *n)).collect::<Result<_>>()?;
        let g = buchberger(&elts)?;
        for b in g.basis() {
            if !g.normal_form(b).is_zero() {
                return Ok(Err(format!("{name}: basis element does not reduce to 0")));
            }
        }
        for _ in 0..5 {
            let mut combo = WeylElt::zero(*n);
            for e in &elts {
                combo = &combo + &(&WeylElt::random(&mut rng, *n, 3, 3) * e);
            }
            if !g.contains(&combo) {
                return Ok(Err(format!("{name}: left combination not in the ideal")));
            }
        }
    }
    Ok(Ok(format!("{} ideals x 5 random left combinations", ideals.len())))
}

/// For ideals in x's only (or d's only) the Weyl basis is commutative; count
/// standard monomials by brute force against the generators' monomials.
fn commutative_case() -> Result<Outcome> {
    let cases: [(usize, &[&str]); 4] = [
        (1, &["x^3"]),
        (2, &["x1^2", "x1*x2^3"]),
        (2, &["d1*d2", "d2^2"]),
        (2, &["x1^2*x2", "x2^4", "x1^3"]),
    ];
    for (n, gens) in cases {
        let elts: Vec<WeylElt> = gens.iter().map(|g| w(g, n)).collect::<Result<_>>()?;
        let lms: Vec<WeylMonomial> = elts.iter().filter_map(|e| e.leading_monomial().cloned()).collect();
        let g = buchberger(&elts)?;
        for d in 0..8 {
            let brute = monomials_up_to(n, d)
                .into_iter()
                .filter(|m| !lms.iter().any(|l| l.divides(m)))
                .count();
            if brute != g.count_standard(d) {
                return Ok(Err(format!("{gens:?}: count at degree {d}")));
            }
        }
    }
    Ok(Ok("monomial ideals agree with brute-force counts up to degree 7".into()))
}

fn hilbert_case() -> Result<Outcome> {
    let gb = |n: usize, gens: &[&str]| -> Result<GroebnerBasis> {
        buchberger(&gens.iter().map(|g| w(g, n)).collect::<Result<Vec<_>>>()?)
    };
    let std3 = gb(1, &["d - 5"])?.standard_monomials(3);
    let want: Vec<WeylMonomial> = (0..4).map(|k| WeylMonomial::new(vec![k], vec![0])).collect();
    if std3 != want {
        return Ok(Err("standard monomials of {d - 5} up to 3".into()));
    }
    let std2 = gb(1, &["x"])?.standard_monomials(2);
    let want: Vec<WeylMonomial> = (0..3).map(|k| WeylMonomial::new(vec![0], vec![k])).collect();
    if std2 != want || !gb(1, &["d + 1", "x"])?.standard_monomials(4).is_empty() {
        return Ok(Err("standard monomials of {x} / unit".into()));
    }
    let checks = [
        (gb(1, &["d - 1"])?.hilbert_dimension()?, 1),
        (gb(1, &["d"])?.hilbert_dimension()?, 1),
        (GroebnerBasis::zero_ideal(1).hilbert_dimension()?, 2),
        (gb(2, &["d1 - 1"])?.hilbert_dimension()?, 3),
        (gb(2, &["x1 - d2", "d1 - x2"])?.hilbert_dimension()?, 2),
    ];
    if let Some(i) = checks.iter().position(|(a, b)| a != b) {
        return Ok(Err(format!("dimension check #{i}: got {}", checks[i].0)));
    }
    for (name, n, gens) in suite_ideals() {
        let g = gb(n, &gens)?;
        if g.hilbert_dimension()? != g.hilbert_dimension_by_counting()? {
            return Ok(Err(format!("{name}: staircase and counting disagree")));
        }
    }
    let unit_err = gb(1, &["x", "d"])?.hilbert_dimension() == Err(Error::ZeroModule);
    let flags = gb(1, &["d - 1"])?.is_holonomic()? && !gb(2, &["d1 - 1"])?.is_holonomic()?;
    Ok(verdict(
        unit_err && flags,
        "dimensions 1, 1, 2, 3, 2; staircase = counting on all suite ideals",
        "holonomicity flags",
    ))
}
