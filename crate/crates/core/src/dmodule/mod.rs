//! Cyclic modules A_n/I and the functors computed on them.

mod complex;
mod poly;
mod rays;
mod restrict;

pub use complex::{max_degree, mult_complex, Certificate, TwoTermComplex, DEFAULT_MAX_DEGREE};
pub use restrict::{partial_restrict_last, RestrictionResult};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::rat::Q;
use crate::weyl::{parse_weyl, WeylElt};

#[derive(Clone, Debug)]
pub struct CyclicModule {
    ideal: GroebnerBasis,
}

/// Equality of presented modules is equality of ideals.
impl PartialEq for CyclicModule {
    fn eq(&self, other: &Self) -> bool {
        self.ideal.ideal_eq(&other.ideal)
    }
}

impl Eq for CyclicModule {}

/// Wire format `{"n": n, "generators": ["d - 1", ...]}`.
#[derive(Serialize, Deserialize)]
struct ModuleWire {
    n: usize,
    generators: Vec<String>,
}

impl CyclicModule {
    pub fn new(gens: Vec<WeylElt>) -> Result<Self> {
        Ok(CyclicModule {
            ideal: buchberger(&gens)?,
        })
    }

    pub fn from_ideal(ideal: GroebnerBasis) -> Self {
        CyclicModule { ideal }
    }

    pub fn parse(n: usize, gens: &[&str]) -> Result<Self> {
        Self::new(gens.iter().map(|g| parse_weyl(g, n)).collect::<Result<_>>()?)
    }

    pub fn n(&self) -> usize {
        self.ideal.n()
    }

    pub fn ideal(&self) -> &GroebnerBasis {
        &self.ideal
    }

    pub fn is_zero(&self) -> bool {
        self.ideal.is_unit()
    }

    pub fn is_holonomic(&self) -> Result<bool> {
        self.ideal.is_holonomic()
    }

    pub fn principal_generator(&self, op: &'static str) -> Result<&WeylElt> {
        match self.ideal.basis() {
            [p] => Ok(p),
            _ => Err(Error::NonPrincipal(op)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ModuleWire {
            n: self.n(),
            generators: self.ideal.basis().iter().map(ToString::to_string).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let w: ModuleWire = serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        let gens: Vec<&str> = w.generators.iter().map(String::as_str).collect();
        Self::parse(w.n, &gens)
    }
}

fn principal(p: WeylElt) -> CyclicModule {
    CyclicModule::new(vec![p]).expect("nonzero generator")
}

/// A_1/A_1(∂ − λ); λ = 0 gives O, reported through the warning.
pub fn make_l(lambda: &Q) -> (CyclicModule, Option<&'static str>) {
    let p = &WeylElt::d(0, 1) - &WeylElt::constant(lambda.clone(), 1);
    let warning = lambda.is_zero().then_some("not an exponential module: lambda = 0 gives O");
    (principal(p), warning)
}

/// O = A_1/A_1∂.
pub fn structure_sheaf() -> CyclicModule {
    principal(WeylElt::d(0, 1))
}

/// δ_c = A_1/A_1(x − c).
pub fn delta(c: &Q) -> CyclicModule {
    principal(&WeylElt::x(0, 1) - &WeylElt::constant(c.clone(), 1))
}

/// A_1/A_1(x∂ − α).
pub fn kummer(alpha: &Q) -> CyclicModule {
    let p = &(&WeylElt::x(0, 1) * &WeylElt::d(0, 1)) - &WeylElt::constant(alpha.clone(), 1);
    principal(p)
}

/// A_1/A_1 P^t for a principal ideal with a generator of positive ∂-order.
pub fn dual(m: &CyclicModule) -> Result<CyclicModule> {
    if m.n() != 1 {
        return Err(Error::Unsupported("duality implemented for n = 1".into()));
    }
    let p = m.principal_generator("duality")?;
    if p.d_order() == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(principal(p.adjoint().monic()))
}

/// A_n/A_n σ(I) for the Fourier automorphism σ on `vars`.
pub fn fourier_module(m: &CyclicModule, vars: &[usize]) -> Result<CyclicModule> {
    if let Some(&v) = vars.iter().find(|&&v| v >= m.n()) {
        return Err(Error::UnknownVariable {
            name: format!("x{}", v + 1),
            n: m.n(),
        });
    }
    let gens = m.ideal.basis().iter().map(|g| g.fourier_auto(vars)).collect();
    CyclicModule::new(gens)
}

/// The image of the ideal under x_i ↦ −x_i, ∂_i ↦ −∂_i.
pub fn negate_module(m: &CyclicModule, vars: &[usize]) -> Result<CyclicModule> {
    CyclicModule::new(m.ideal.basis().iter().map(|g| g.negate_vars(vars)).collect())
}

/// K ⊗ L_λ in the variable `var`: ∂_var ↦ ∂_var − λ.
pub fn twist(m: &CyclicModule, lambda: &Q, var: usize) -> Result<CyclicModule> {
    CyclicModule::new(m.ideal.basis().iter().map(|g| g.exp_twist(lambda, var)).collect())
}

pub fn holonomic_rank(m: &CyclicModule) -> Result<u32> {
    if m.n() != 1 {
        return Err(Error::Unsupported("rank implemented for n = 1".into()));
    }
    Ok(m.principal_generator("rank")?.d_order())
}

fn require_n1(m: &CyclicModule) -> Result<()> {
    if m.n() == 1 {
        Ok(())
    } else {
        Err(Error::Unsupported("operation implemented for n = 1".into()))
    }
}

/// [M --(t − c)--> M] in degrees −1, 0.
pub fn point_complex(m: &CyclicModule, c: &Q) -> Result<TwoTermComplex> {
    require_n1(m)?;
    let a = &WeylElt::x(0, 1) - &WeylElt::constant(c.clone(), 1);
    mult_complex(m, &a, None)
}

/// [M --∂--> M] in degrees −1, 0.
pub fn derham_pushforward(m: &CyclicModule) -> Result<TwoTermComplex> {
    require_n1(m)?;
    mult_complex(m, &WeylElt::d(0, 1), None)
}

/// Cohomology of real_λ(M): dual, Fourier, the point complex at −λ, then
/// the duality flip k ↦ −k of the degree labels.
pub fn real_at(m: &CyclicModule, lambda: &Q) -> Result<TwoTermComplex> {
    require_n1(m)?;
    if lambda.is_zero() {
        return Err(Error::Unsupported("lambda must be nonzero".into()));
    }
    // δ-type generators have ∂-order 0; their adjoint presentation is still the dual
    let dm = principal(m.principal_generator("realization")?.adjoint().monic());
    let wedge = fourier_module(&dm, &[0])?;
    let pc = point_complex(&wedge, &-lambda.clone())?;
    let (a, b) = pc.degree_labels;
    Ok(pc.with_labels((-a, -b)))
}

/// Multiplication by t − λ on the Fourier transform of M.
pub fn injectivity_check(m: &CyclicModule, lambda: &Q) -> Result<(bool, TwoTermComplex)> {
    require_n1(m)?;
    if lambda.is_zero() {
        return Err(Error::Unsupported("lambda must be nonzero".into()));
    }
    let wedge = fourier_module(m, &[0])?;
    let pc = point_complex(&wedge, lambda)?;
    Ok((pc.dim_ker == 0, pc))
}

/// Pullback along sum: A^2 → A^1 of A_1/A_1 P: the ideal
/// (P(x_1 + x_2, ∂_1), ∂_2 − ∂_1).
pub fn sum_pullback(m: &CyclicModule) -> Result<CyclicModule> {
    require_n1(m)?;
    let s = &WeylElt::x(0, 2) + &WeylElt::x(1, 2);
    let d1 = WeylElt::d(0, 2);
    let mut gens: Vec<WeylElt> = m
        .ideal
        .basis()
        .iter()
        .map(|p| substitute_1(p, &s, &d1))
        .collect();
    gens.push(&WeylElt::d(1, 2) - &d1);
    CyclicModule::new(gens)
}

/// M ⊠ N for two modules on A^1.
pub fn external_product(m: &CyclicModule, n: &CyclicModule) -> Result<CyclicModule> {
    require_n1(m)?;
    require_n1(n)?;
    let mut gens: Vec<WeylElt> = m.ideal.basis().iter().map(|p| p.extend(1)).collect();
    for p in n.ideal.basis() {
        gens.push(substitute_1(p, &WeylElt::x(1, 2), &WeylElt::d(1, 2)));
    }
    CyclicModule::new(gens)
}

/// P(x, ∂) ↦ P(x', ∂') for images with [∂', x'] = 1.
fn substitute_1(p: &WeylElt, x: &WeylElt, d: &WeylElt) -> WeylElt {
    let mut out = WeylElt::zero(x.n());
    for (m, c) in p.terms() {
        let term = &x.pow(m.alpha[0]) * &d.pow(m.beta[0]);
        out = &out + &term.scale(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qf};

    fn w(s: &str) -> WeylElt {
        parse_weyl(s, 1).unwrap()
    }

    fn lambdas() -> Vec<Q> {
        vec![q(1), q(-1), q(2), q(-2), qf(1, 2)]
    }

    #[test]
    fn exponential_modules() {
        let (l1, warn) = make_l(&q(1));
        assert_eq!(l1.ideal().basis(), &[w("d - 1")]);
        assert!(warn.is_none());
        let (o, warn) = make_l(&q(0));
        assert_eq!(o, structure_sheaf());
        assert!(warn.unwrap().contains("not an exponential module"));
        for lam in lambdas() {
            let (l, _) = make_l(&lam);
            assert_eq!(holonomic_rank(&l).unwrap(), 1);
            assert_eq!(dual(&l).unwrap(), make_l(&-lam.clone()).0);
        }
    }

    #[test]
    fn duality_examples() {
        let airy = CyclicModule::new(vec![w("d^2 - x")]).unwrap();
        assert_eq!(dual(&airy).unwrap(), airy);
        assert_eq!(holonomic_rank(&airy).unwrap(), 2);
        assert_eq!(holonomic_rank(&delta(&q(0))).unwrap(), 0);
        assert_eq!(dual(&delta(&q(0))), Err(Error::ZeroOrder));
        let two = CyclicModule::parse(1, &["x*d - 1", "d^2"]).unwrap();
        assert_eq!(dual(&two), Err(Error::NonPrincipal("duality")));
        let mut rng = rand::thread_rng();
        for _ in 0..20 {
            let p = WeylElt::random(&mut rng, 1, 3, 4);
            if p.d_order() == 0 {
                continue;
            }
            let m = CyclicModule::new(vec![p]).unwrap();
            assert_eq!(dual(&dual(&m).unwrap()).unwrap(), m);
        }
    }

    #[test]
    fn fourier_examples() {
        let (l, _) = make_l(&q(3));
        assert_eq!(fourier_module(&l, &[0]).unwrap(), delta(&q(-3)));
        assert_eq!(fourier_module(&delta(&q(0)), &[0]).unwrap(), structure_sheaf());
        for m in [kummer(&qf(1, 3)), make_l(&q(2)).0, CyclicModule::new(vec![w("x^2*d - x*d - 1/2")]).unwrap()] {
            let twice = fourier_module(&fourier_module(&m, &[0]).unwrap(), &[0]).unwrap();
            assert_eq!(twice, negate_module(&m, &[0]).unwrap());
        }
    }

    #[test]
    fn twist_untwists_exponential() {
        let (l, _) = make_l(&q(2));
        assert_eq!(twist(&l, &q(-2), 0).unwrap(), structure_sheaf());
    }

    #[test]
    fn exponential_triple() {
        for lam in lambdas() {
            let (l, _) = make_l(&lam);
            let c = derham_pushforward(&l).unwrap();
            assert_eq!((c.dim_ker, c.dim_coker), (0, 0));
            assert_eq!(c.certificate.label(), "exact-triangular");
            let dm = make_l(&-lam.clone()).0;
            let pc = point_complex(&dm, &q(0)).unwrap();
            assert_eq!((pc.dim_ker, pc.dim_coker), (0, 1));
            let lhs = sum_pullback(&l).unwrap();
            let rhs = external_product(&l, &l).unwrap();
            assert!(lhs.ideal().ideal_eq(rhs.ideal()));
        }
    }

    #[test]
    fn point_complex_examples() {
        let o = structure_sheaf();
        for c in [q(0), q(5), qf(-1, 2)] {
            let pc = point_complex(&o, &c).unwrap();
            assert_eq!((pc.dim_ker, pc.dim_coker), (0, 1));
        }
        let d = delta(&q(-2));
        let pc = point_complex(&d, &q(-2)).unwrap();
        assert_eq!((pc.dim_ker, pc.dim_coker), (1, 0));
        let pc = point_complex(&d, &q(1)).unwrap();
        assert_eq!((pc.dim_ker, pc.dim_coker), (0, 0));
    }

    #[test]
    fn realization_examples() {
        for lam in [q(1), q(-2), qf(1, 2)] {
            let r = real_at(&delta(&q(0)), &lam).unwrap();
            assert_eq!((r.dim_in_degree(0), r.total_dim()), (1, 1));
            assert_eq!(real_at(&structure_sheaf(), &lam).unwrap().total_dim(), 0);
            for alpha in [qf(1, 3), qf(1, 2), q(2)] {
                let r = real_at(&kummer(&alpha), &lam).unwrap();
                assert_eq!((r.dim_in_degree(0), r.total_dim()), (1, 1), "alpha {alpha}");
                assert!(r.certificate.is_conclusive());
            }
        }
    }

    #[test]
    fn injectivity_examples() {
        let (inj, pc) = injectivity_check(&kummer(&qf(1, 3)), &q(1)).unwrap();
        assert!(inj);
        assert_eq!(pc.certificate.label(), "exact-triangular");
        let (inj, pc) = injectivity_check(&make_l(&q(-1)).0, &q(1)).unwrap();
        assert!(!inj);
        assert_eq!(pc.dim_ker, 1);
        assert!(injectivity_check(&structure_sheaf(), &q(3)).unwrap().0);
    }

    #[test]
    fn json_round_trip() {
        let m = CyclicModule::parse(2, &["d1 - 1", "d2 - 1"]).unwrap();
        let v = m.to_json();
        assert_eq!(v["n"], 2);
        assert_eq!(CyclicModule::from_json(&v).unwrap(), m);
    }
}
