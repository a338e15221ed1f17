use std::sync::{Arc, OnceLock};

use super::{verdict, Case, Outcome, SuiteParams};
use crate::dmodule::{
    delta, derham_pushforward, dual, external_product, fourier_module, holonomic_rank,
    injectivity_check, kummer, make_l, mult_complex, negate_module, partial_restrict_last,
    point_complex, real_at, structure_sheaf, sum_pullback, twist, CyclicModule, TwoTermComplex,
};
use crate::error::{Error, Result};
use crate::rat::{fmt_q, q, qf, Q};
use crate::weyl::{parse_weyl, WeylElt};

const A_DUAL: &str = r"\DD\mathcal{L}_{\lambda}\simeq\mathcal{L}_{-\lambda}[2]";
const A_L_EQUATION: &str = r"f'(t)-\lambda f(t)=0";
const A_PI_SHRIEK: &str = r"\pi_!\mathcal{L}_{\lambda}=0";
const A_POINT: &str = r"[\CC[t,\partial_t]/(\partial_t+\lambda) \mapright{t} \CC[t,\partial_t]/(\partial_t+\lambda)]";
const A_SUM: &str = r"\text{sum}^*\mathcal{L}_{\lambda} \simeq \mathcal{L}_{\lambda} \boxtimes \mathcal{L}_{\lambda}";
const A_WEDGE_TWICE: &str = r"K^{\wedge\wedge}\simeq a^*K";
const A_WEDGE_COMPLEX: &str = r"[K^{\wedge}\mapright{t-\lambda}K^{\wedge}]";
const A_REAL: &str = r"i^*_{\lambda}K^{\wedge}[-1]\simeq\mathrm{real}_{\lambda}(K)";
const A_T_EXACT: &str = r"\mathrm{real}_{\lambda}\colon E(X)\to D_{\mathrm{hol}}(X)\ \text{t-exact}";
const A_FAITHFUL: &str = r"\mathrm{real}_{\lambda}(K) = 0 \Rightarrow K = 0";
const A_KERNEL: &str = r"\mathrm{real}_{\mathcal{L}}(\EE)\simeq\mathcal{L}";
const A_TWIST: &str = r"K\otimes\mu^*\mathcal{L}";
const A_RANK: &str = r"\mathrm{rank}\,A_1/A_1P = \mathrm{ord}_{\partial}P";

/// λ values for the exponential-module identities.
fn lambdas() -> Vec<Q> {
    vec![q(1), q(-1), q(2), q(-2), qf(1, 2)]
}

/// λ values for the realization runs.
pub(crate) fn real_lambdas() -> Vec<Q> {
    vec![q(1), q(-2)]
}

/// The regular inputs: O, δ_c, Kummer t∂ − α and t(t−1)∂ − β.
pub(crate) fn regular_modules() -> Result<Vec<(String, CyclicModule, bool)>> {
    // (name, module, nonzero class in E(point))
    let mut out = vec![("O".to_string(), structure_sheaf(), false)];
    for c in [q(0), qf(3, 2)] {
        out.push((format!("delta_{}", fmt_q(&c)), delta(&c), true));
    }
    for a in [qf(1, 3), qf(1, 2), q(2)] {
        out.push((format!("kummer_{}", fmt_q(&a)), kummer(&a), true));
    }
    for b in [qf(1, 3), qf(1, 2), q(2)] {
        let m = CyclicModule::parse(1, &[&format!("x^2*d - x*d - {}", fmt_q(&b))])?;
        out.push((format!("two_points_{}", fmt_q(&b)), m, true));
    }
    Ok(out)
}

pub(crate) struct RealRow {
    pub name: String,
    pub lambda: Q,
    pub nonzero_class: bool,
    pub real: TwoTermComplex,
    pub injective: bool,
    pub inj: TwoTermComplex,
}

pub(crate) fn realization_table() -> Result<Vec<RealRow>> {
    let mut rows = Vec::new();
    for (name, m, nonzero_class) in regular_modules()? {
        for lambda in real_lambdas() {
            let real = real_at(&m, &lambda)?;
            let (injective, inj) = injectivity_check(&m, &lambda)?;
            rows.push(RealRow {
                name: name.clone(),
                lambda,
                nonzero_class,
                real,
                injective,
                inj,
            });
        }
    }
    Ok(rows)
}

type Shared = Arc<OnceLock<Result<Vec<RealRow>>>>;

fn table(cell: &Shared) -> Result<&[RealRow]> {
    cell.get_or_init(realization_table).as_ref().map(Vec::as_slice).map_err(Clone::clone)
}

pub(super) fn cases(_params: &SuiteParams) -> Vec<Case> {
    let shared: Shared = Arc::new(OnceLock::new());
    let (s1, s2, s3, s4, s5) = (shared.clone(), shared.clone(), shared.clone(), shared.clone(), shared);
    let mut out = vec![
        Case::new("dual-L-lambda", A_DUAL, dual_case),
        Case::new("make-L", A_L_EQUATION, make_l_case),
        Case::new("pushforward-L-lambda", A_PI_SHRIEK, pushforward_case),
        Case::new("point-L-lambda", A_POINT, point_l_case),
        Case::new("sum-pullback-L-lambda", A_SUM, sum_case),
        Case::new("wedge-involution", A_WEDGE_TWICE, wedge_case),
        Case::new("mult-complex-examples", A_WEDGE_COMPLEX, mult_examples_case),
        Case::new("holonomic-rank", A_RANK, rank_case),
        Case::new("exp-twist-untwist", A_TWIST, twist_case),
        Case::new("real-at-values", A_REAL, move || real_values_case(table(&s1)?)),
        Case::new("real-at-t-exact", A_T_EXACT, move || t_exact_case(table(&s2)?)),
        Case::new("real-at-faithful", A_FAITHFUL, move || faithful_case(table(&s3)?)),
        Case::new("injectivity-regular", A_WEDGE_COMPLEX, move || injective_case(table(&s4)?)),
        Case::new("injectivity-counterexample", A_WEDGE_COMPLEX, move || counterexample_case(table(&s5)?)),
        Case::new("restriction-examples", A_KERNEL, restriction_examples_case),
    ];
    for lam in [q(1), q(2), q(-1)] {
        let id = format!("kernel-restriction-lambda{}", fmt_q(&lam).replace('/', "_"));
        out.push(Case::new(id, A_KERNEL, move || kernel_restriction_case(&lam)));
    }
    out
}

fn show(c: &TwoTermComplex) -> String {
    format!("({}, {}) {}", c.dim_ker, c.dim_coker, c.certificate.label())
}

fn dual_case() -> Result<Outcome> {
    for lam in lambdas() {
        let d = dual(&make_l(&lam).0)?;
        if d != make_l(&-lam.clone()).0 {
            return Ok(Err(format!("dual(L_{lam}) = {}", d.ideal().basis()[0])));
        }
    }
    for name in ["d^2 - x", "x*d - 1/3", "x^2*d - x*d - 1/2", "x*d^2 + d - 3"] {
        let m = CyclicModule::parse(1, &[name])?;
        if dual(&dual(&m)?)? != m {
            return Ok(Err(format!("dual is not involutive on {name}")));
        }
    }
    let airy = CyclicModule::parse(1, &["d^2 - x"])?;
    Ok(verdict(
        dual(&airy)? == airy && dual(&delta(&q(0))) == Err(Error::ZeroOrder),
        "dual(L_l) = L_-l for l in {1, -1, 2, -2, 1/2}; involutive",
        "Airy self-duality / order-0 rejection",
    ))
}

fn make_l_case() -> Result<Outcome> {
    let (l1, warn) = make_l(&q(1));
    if l1.ideal().basis() != [parse_weyl("d - 1", 1)?] || warn.is_some() {
        return Ok(Err("make_L(1) != {d - 1}".into()));
    }
    let (o, warn) = make_l(&q(0));
    Ok(verdict(
        o == structure_sheaf() && warn.is_some(),
        "{d - 1}; lambda = 0 flagged",
        "lambda = 0 not flagged",
    ))
}

fn pushforward_case() -> Result<Outcome> {
    for lam in lambdas() {
        let c = derham_pushforward(&make_l(&lam).0)?;
        if (c.dim_ker, c.dim_coker) != (0, 0) || c.certificate.label() != "exact-triangular" {
            return Ok(Err(format!("L_{lam}: {}", show(&c))));
        }
    }
    let o = derham_pushforward(&structure_sheaf())?;
    let d = derham_pushforward(&delta(&q(0)))?;
    Ok(verdict(
        (o.dim_ker, o.dim_coker, d.dim_ker, d.dim_coker) == (1, 0, 0, 1),
        "L_l -> (0, 0) exact-triangular; O -> (1, 0); delta_0 -> (0, 1)",
        format!("O: {}, delta_0: {}", show(&o), show(&d)),
    ))
}

fn point_l_case() -> Result<Outcome> {
    for lam in lambdas() {
        let c = point_complex(&make_l(&-lam.clone()).0, &q(0))?;
        if (c.dim_ker, c.dim_coker) != (0, 1) || c.degree_labels != (-1, 0) || !c.certificate.is_conclusive() {
            return Ok(Err(format!("d + {lam}: {}", show(&c))));
        }
    }
    Ok(Ok("t on A_1/(d + l): H^-1 = 0, H^0 = 1-dimensional".into()))
}

fn sum_case() -> Result<Outcome> {
    for lam in lambdas() {
        let l = make_l(&lam).0;
        let lhs = sum_pullback(&l)?;
        let rhs = external_product(&l, &l)?;
        if !lhs.ideal().ideal_eq(rhs.ideal()) {
            return Ok(Err(format!("lambda {lam}: sum^* and box differ")));
        }
    }
    Ok(Ok("sum^*L_l = L_l [x] L_l as reduced bases".into()))
}

fn wedge_case() -> Result<Outcome> {
    let (l3, _) = make_l(&q(3));
    if fourier_module(&l3, &[0])? != delta(&q(-3)) || fourier_module(&delta(&q(0)), &[0])? != structure_sheaf() {
        return Ok(Err("wedge examples".into()));
    }
    let mut count = 0;
    for (name, n, gens) in super::weyl_core::suite_ideals() {
        let m = CyclicModule::parse(n, &gens)?;
        let vars: Vec<usize> = (0..n).collect();
        let twice = fourier_module(&fourier_module(&m, &vars)?, &vars)?;
        if twice != negate_module(&m, &vars)? {
            return Ok(Err(format!("{name}: wedge twice is not a^*")));
        }
        count += 1;
    }
    Ok(Ok(format!("L_3 -> delta_-3, delta_0 -> O; wedge twice = a^* on {count} modules")))
}

fn mult_examples_case() -> Result<Outcome> {
    let lam = q(2);
    let t = parse_weyl("x", 1)?;
    let d = parse_weyl("d", 1)?;
    let checks = [
        (mult_complex(&make_l(&-lam.clone()).0, &t, None)?, (0, 1)),
        (mult_complex(&make_l(&lam).0, &d, None)?, (0, 0)),
        (mult_complex(&structure_sheaf(), &d, None)?, (1, 0)),
        (mult_complex(&delta(&q(0)), &d, None)?, (0, 1)),
    ];
    for (i, (c, want)) in checks.iter().enumerate() {
        if (c.dim_ker, c.dim_coker) != *want || !c.certificate.is_conclusive() {
            return Ok(Err(format!("example {i}: {}", show(c))));
        }
    }
    let o = structure_sheaf();
    for c in [q(0), q(5), qf(-1, 2)] {
        let pc = point_complex(&o, &c)?;
        if (pc.dim_ker, pc.dim_coker) != (0, 1) {
            return Ok(Err(format!("O at {c}: {}", show(&pc))));
        }
    }
    // δ at −λ: t + λ kills the generator and is onto
    let dm = delta(&-lam.clone());
    let at = point_complex(&dm, &-lam.clone())?;
    let off = point_complex(&dm, &q(1))?;
    Ok(verdict(
        (at.dim_ker, at.dim_coker, off.dim_ker, off.dim_coker) == (1, 0, 0, 0),
        "t on L_-l: (0, 1); d on L_l: (0, 0); d on O: (1, 0); d on delta_0: (0, 1); delta_c at c: (1, 0)",
        format!("delta at -l: {}, off support: {}", show(&at), show(&off)),
    ))
}

fn rank_case() -> Result<Outcome> {
    let airy = CyclicModule::parse(1, &["d^2 - x"])?;
    let got = (
        holonomic_rank(&make_l(&q(2)).0)?,
        holonomic_rank(&airy)?,
        holonomic_rank(&delta(&q(0)))?,
    );
    let two = CyclicModule::parse(1, &["x*d - 1", "d^2"])?;
    Ok(verdict(
        got == (1, 2, 0) && holonomic_rank(&two) == Err(Error::NonPrincipal("rank")),
        "L: 1, Airy: 2, delta: 0",
        format!("{got:?}"),
    ))
}

fn twist_case() -> Result<Outcome> {
    let ok = twist(&make_l(&q(2)).0, &q(-2), 0)? == structure_sheaf()
        && twist(&structure_sheaf(), &qf(1, 2), 0)? == make_l(&qf(1, 2)).0;
    Ok(verdict(ok, "L_2 (x) L_-2 = O; O (x) L_l = L_l", "twist"))
}

fn row_label(r: &RealRow) -> String {
    format!("{} at {}", r.name, fmt_q(&r.lambda))
}

/// Expected dimension: the fiber at −λ of the Fourier transform of the
/// adjoint operator, i.e. its ∂-order when the leading coefficient does not
/// vanish there.
fn fiber_rank(m: &CyclicModule, lambda: &Q) -> Result<Option<u32>> {
    let p = m.principal_generator("realization")?.adjoint().fourier_auto(&[0]);
    let ord = p.d_order();
    let mut lead = q(0);
    for (mono, c) in p.terms() {
        if mono.beta[0] == ord {
            lead += c * crate::rat::pow_q(&-lambda.clone(), mono.alpha[0]);
        }
    }
    Ok((lead != q(0)).then_some(ord))
}

fn real_values_case(rows: &[RealRow]) -> Result<Outcome> {
    let modules = regular_modules()?;
    let mut summary = Vec::new();
    for r in rows {
        if !r.real.certificate.is_conclusive() {
            return Ok(Err(format!("{}: inconclusive", row_label(r))));
        }
        let m = &modules.iter().find(|x| x.0 == r.name).expect("listed").1;
        let Some(want) = fiber_rank(m, &r.lambda)? else {
            return Ok(Err(format!("{}: singular fiber", row_label(r))));
        };
        if r.real.total_dim() != want as usize || r.real.dim_in_degree(0) != want as usize {
            return Ok(Err(format!("{}: {} but fiber rank {want}", row_label(r), show(&r.real))));
        }
        if r.lambda == q(1) {
            summary.push(format!("{} {} [{}]", r.name, want, r.real.certificate.label()));
        }
    }
    Ok(Ok(format!("degree-0 dims at l = 1: {}", summary.join(", "))))
}

fn t_exact_case(rows: &[RealRow]) -> Result<Outcome> {
    for r in rows {
        if r.real.dim_in_degree(-1) != 0 || r.real.dim_ker != 0 {
            return Ok(Err(format!("{}: degree -1 part {}", row_label(r), show(&r.real))));
        }
    }
    Ok(Ok(format!("{} runs, nothing outside degree 0", rows.len())))
}

fn faithful_case(rows: &[RealRow]) -> Result<Outcome> {
    let mut n = 0;
    for r in rows.iter().filter(|r| r.nonzero_class) {
        if r.real.total_dim() == 0 {
            return Ok(Err(format!("{}: realization vanishes", row_label(r))));
        }
        n += 1;
    }
    Ok(Ok(format!("{n} nonzero-class runs realize nontrivially")))
}

fn injective_case(rows: &[RealRow]) -> Result<Outcome> {
    let mut certs = std::collections::BTreeSet::new();
    for r in rows {
        if !r.injective || !r.inj.certificate.is_conclusive() {
            return Ok(Err(format!("{}: {}", row_label(r), show(&r.inj))));
        }
        certs.insert(r.inj.certificate.label());
    }
    let certs: Vec<String> = certs.into_iter().collect();
    Ok(Ok(format!("{} runs injective ({})", rows.len(), certs.join(", "))))
}

fn counterexample_case(_rows: &[RealRow]) -> Result<Outcome> {
    for lam in real_lambdas() {
        let (inj, c) = injectivity_check(&make_l(&-lam.clone()).0, &lam)?;
        if inj || c.dim_ker != 1 || !c.certificate.is_conclusive() {
            return Ok(Err(format!("L_-{lam}: {}", show(&c))));
        }
    }
    Ok(Ok("L_-l is not injective at l: kernel of dimension 1".into()))
}

/// The kernel module A_2/(x_1 − x_2, ∂_1 + ∂_2), wedge in the second variable,
/// restricted to x_2 = λ.
fn kernel_restriction_case(lam: &Q) -> Result<Outcome> {
    let e = CyclicModule::parse(2, &["x1 - x2", "d1 + d2"])?;
    let wedge = fourier_module(&e, &[1])?;
    let expected_wedge = CyclicModule::parse(2, &["x1 - d2", "d1 - x2"])?;
    if wedge != expected_wedge {
        return Ok(Err("partial wedge is not (x1 - d2, d1 - x2)".into()));
    }
    let res = partial_restrict_last(&wedge, lam)?;
    let want = &WeylElt::d(0, 1) - &WeylElt::constant(lam.clone(), 1);
    Ok(verdict(
        res.cyclic && res.ideal_out.basis() == [want.clone()],
        format!("ideal {{{want}}} at relation degree {}", res.degree),
        format!("got {:?}", res.ideal_out.basis().iter().map(ToString::to_string).collect::<Vec<_>>()),
    ))
}

fn restriction_examples_case() -> Result<Outcome> {
    let constant = CyclicModule::parse(2, &["d1", "d2"])?;
    let res = partial_restrict_last(&constant, &q(0))?;
    if res.ideal_out.basis() != [WeylElt::d(0, 1)] {
        return Ok(Err("constant sheaf does not restrict to O".into()));
    }
    let off = CyclicModule::parse(2, &["d1 - 1", "x2"])?;
    Ok(verdict(
        matches!(partial_restrict_last(&off, &q(1)), Err(Error::RestrictionUnsupported(_))),
        "O restricts to O; a module on x2 = 0 is refused at x2 = 1",
        "zero cokernel not reported",
    ))
}
