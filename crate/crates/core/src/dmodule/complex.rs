//! Kernel and cokernel of left multiplication on a cyclic module.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::rays::{ray_image, Ray, Staircase};
use super::CyclicModule;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{q, Q};
use crate::weyl::{WeylElt, WeylMonomial};

pub const DEFAULT_MAX_DEGREE: u32 = 60;

/// Hard cap on truncation degrees, overridable through EXPLAB_MAX_DEGREE.
pub fn max_degree() -> u32 {
    std::env::var("EXPLAB_MAX_DEGREE")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Proven exact; the ray triangularity holds from `from_degree` on.
    ExactTriangular { from_degree: u32 },
    /// Equal dimensions at truncation degrees d, d + 1, d + 2.
    Stabilized { d: u32 },
    Inconclusive,
}

impl Certificate {
    pub fn label(&self) -> String {
        match self {
            Certificate::ExactTriangular { .. } => "exact-triangular".into(),
            Certificate::Stabilized { d } => format!("stabilized({d}, {})", d + 2),
            Certificate::Inconclusive => "inconclusive".into(),
        }
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Certificate::Inconclusive)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermComplex {
    pub dim_ker: usize,
    pub dim_coker: usize,
    /// Cohomological degrees of the kernel and the cokernel.
    pub degree_labels: (i32, i32),
    pub ker_witnesses: Vec<WeylElt>,
    pub coker_witnesses: Vec<WeylElt>,
    pub certificate: Certificate,
}

impl TwoTermComplex {
    /// Dimension of the cohomology in degree k.
    pub fn dim_in_degree(&self, k: i32) -> usize {
        let mut d = 0;
        if self.degree_labels.0 == k {
            d += self.dim_ker;
        }
        if self.degree_labels.1 == k {
            d += self.dim_coker;
        }
        d
    }

    pub fn total_dim(&self) -> usize {
        self.dim_ker + self.dim_coker
    }

    pub fn with_labels(mut self, labels: (i32, i32)) -> Self {
        self.degree_labels = labels;
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strings = |v: &[WeylElt]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        serde_json::json!({
            "ker": self.dim_ker,
            "coker": self.dim_coker,
            "degrees": [self.degree_labels.0, self.degree_labels.1],
            "certificate": self.certificate.label(),
            "witnesses": {
                "ker": strings(&self.ker_witnesses),
                "coker": strings(&self.coker_witnesses),
            },
        })
    }
}

/// Left multiplication m ↦ A·m on a cyclic module, as normal forms.
struct MulMap<'a> {
    module: &'a CyclicModule,
    a: &'a WeylElt,
    cache: HashMap<WeylMonomial, WeylElt>,
}

impl<'a> MulMap<'a> {
    fn new(module: &'a CyclicModule, a: &'a WeylElt) -> Self {
        MulMap {
            module,
            a,
            cache: HashMap::new(),
        }
    }

    fn image(&mut self, m: &WeylMonomial) -> &WeylElt {
        if !self.cache.contains_key(m) {
            let v = self
                .module
                .ideal()
                .normal_form(&self.a.mul_monomial_right(m));
            self.cache.insert(m.clone(), v);
        }
        &self.cache[m]
    }

    fn apply(&mut self, v: &WeylElt) -> WeylElt {
        let mut out = WeylElt::zero(v.n());
        for (m, c) in v.terms() {
            let img = self.image(m).scale(c);
            out = &out + &img;
        }
        out
    }
}

/// Kernel and cokernel of A·(−) on M with labels (−1, 0).
///
/// For n = 1 the ray certificate is tried first; otherwise, or when it does
/// not apply, truncations are escalated until three consecutive degrees agree.
pub fn mult_complex(module: &CyclicModule, a: &WeylElt, start: Option<u32>) -> Result<TwoTermComplex> {
    if a.n() != module.n() {
        return Err(Error::VariableMismatch(module.n(), a.n()));
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if module.ideal().is_unit() {
        return Ok(TwoTermComplex {
            dim_ker: 0,
            dim_coker: 0,
            degree_labels: (-1, 0),
            ker_witnesses: Vec::new(),
            coker_witnesses: Vec::new(),
            certificate: Certificate::ExactTriangular { from_degree: 0 },
        });
    }
    let dim = module.ideal().hilbert_dimension()?;
    if dim != module.n() {
        return Err(Error::NotHolonomic(dim));
    }
    if module.n() == 1 {
        if let Some(done) = exact_triangular(module, a) {
            return Ok(done);
        }
    }
    stabilized(module, a, start)
}

struct Lead {
    target: Ray,
    shift: i64,
}

fn exact_triangular(module: &CyclicModule, a: &WeylElt) -> Option<TwoTermComplex> {
    let basis = module.ideal().basis();
    let stairs = Staircase::new(basis);
    let rays = stairs.rays();
    let mut leads: BTreeMap<Ray, Lead> = BTreeMap::new();
    let mut e0 = stairs.zone as i64;
    for &ray in &rays {
        let img = ray_image(a, ray, basis, &stairs)?;
        let first = img.terms.first()?;
        e0 = e0
            .max(img.threshold + ray.c as i64)
            .max(first.coeff.root_bound().checked_add(1 + ray.c as i64)?);
        leads.insert(
            ray,
            Lead {
                target: first.target,
                shift: first.shift,
            },
        );
    }
    // the leading terms must permute the rays
    let mut preimage: BTreeMap<Ray, Ray> = BTreeMap::new();
    for (r, l) in &leads {
        if preimage.insert(l.target, *r).is_some() {
            return None;
        }
    }
    if preimage.len() != rays.len() {
        return None;
    }
    let kmin = leads.values().map(|l| l.shift).min().unwrap_or(0);
    let kmax = leads.values().map(|l| l.shift).max().unwrap_or(0);
    e0 = e0.max(stairs.zone as i64 - kmin) + 1;
    let e0 = u32::try_from(e0).ok()?;

    let in_tail_image = |m: &WeylMonomial| -> Option<(Ray, u32)> {
        let (target, deg) = stairs.locate(m)?;
        let r = preimage[&target];
        let e = deg as i64 - leads[&r].shift;
        (e >= e0 as i64).then_some((r, e as u32))
    };

    let ideal = module.ideal();
    let fin = ideal.standard_monomials(e0 - 1);
    let top = (e0 as i64 + kmax.max(0)) as u32;
    let cok: Vec<WeylMonomial> = ideal
        .standard_monomials(top)
        .into_iter()
        .filter(|m| in_tail_image(m).is_none())
        .collect();
    let cok_index: HashMap<&WeylMonomial, usize> = cok.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut map = MulMap::new(module, a);
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(fin.len());
    let mut corrections: Vec<WeylElt> = Vec::with_capacity(fin.len());
    for f in &fin {
        let mut v = map.image(f).clone();
        let mut t = WeylElt::zero(1);
        loop {
            let hit = v
                .terms()
                .iter()
                .rev()
                .find_map(|(m, c)| in_tail_image(m).map(|re| (m.clone(), c.clone(), re)));
            let Some((m, c, (r, e))) = hit else { break };
            let b = r.element(e);
            let w = map.image(&b).clone();
            if w.leading_monomial() != Some(&m) {
                return None;
            }
            let factor = c / w.coeff(&m);
            v = &v - &w.scale(&factor);
            t.add_term(b, factor);
        }
        let mut row = vec![Q::zero(); cok.len()];
        for (m, c) in v.terms() {
            row[*cok_index.get(m)?] = c.clone();
        }
        rows.push(row);
        corrections.push(t);
    }

    // columns indexed by fin
    let matrix = linalg::transpose(&rows, cok.len());
    let kernel = linalg::nullspace(&matrix, fin.len());
    let rank = fin.len() - kernel.len();
    let mut ker_witnesses = Vec::with_capacity(kernel.len());
    for z in &kernel {
        let mut w = WeylElt::zero(1);
        for (i, zi) in z.iter().enumerate() {
            if !zi.is_zero() {
                w.add_term(fin[i].clone(), zi.clone());
                w = &w - &corrections[i].scale(zi);
            }
        }
        if !map.apply(&w).is_zero() {
            return None;
        }
        ker_witnesses.push(w);
    }
    let mut echelon = rows;
    let pivots = linalg::rref(&mut echelon);
    let coker_witnesses = (0..cok.len())
        .filter(|j| !pivots.contains(j))
        .map(|j| WeylElt::monomial(cok[j].clone(), q(1)))
        .collect();
    Some(TwoTermComplex {
        dim_ker: kernel.len(),
        dim_coker: cok.len() - rank,
        degree_labels: (-1, 0),
        ker_witnesses,
        coker_witnesses,
        certificate: Certificate::ExactTriangular { from_degree: e0 },
    })
}

/// (ker_d, coker_d) from truncations: ker_d is the nullity on F_d; coker_d
/// is dim F_d minus the dimension of φ(F_{2d}) ∩ F_d.
fn truncated_dims(map: &mut MulMap, d: u32) -> (usize, Vec<WeylElt>, usize) {
    let ideal = map.module.ideal();
    let small = ideal.standard_monomials(d);
    let big = ideal.standard_monomials(2 * d);

    let images: Vec<WeylElt> = big.iter().map(|m| map.image(m).clone()).collect();
    let mut row_index: BTreeMap<WeylMonomial, usize> = BTreeMap::new();
    for img in &images {
        for m in img.terms().keys() {
            let k = row_index.len();
            row_index.entry(m.clone()).or_insert(k);
        }
    }
    let build = |cols: usize, keep: &dyn Fn(&WeylMonomial) -> bool| -> linalg::Matrix {
        let mut mtx = linalg::zeros(row_index.len(), cols);
        for (j, img) in images.iter().take(cols).enumerate() {
            for (m, c) in img.terms() {
                if keep(m) {
                    mtx[row_index[m]][j] = c.clone();
                }
            }
        }
        mtx
    };
    let small_ker = linalg::nullspace(&build(small.len(), &|_| true), small.len());
    let ker_witnesses = small_ker
        .iter()
        .map(|z| {
            WeylElt::from_terms(
                map.module.n(),
                z.iter().zip(&small).map(|(c, m)| (m.clone(), c.clone())),
            )
        })
        .collect();
    // `big` is sorted by the term order, which refines degree, so F_d is a prefix.
    let nullity_all = linalg::nullspace(&build(big.len(), &|_| true), big.len()).len();
    let nullity_high = linalg::nullspace(&build(big.len(), &|m| m.degree() > d), big.len()).len();
    let coker = small.len() - (nullity_high - nullity_all);
    (small_ker.len(), ker_witnesses, coker)
}

fn stabilized(module: &CyclicModule, a: &WeylElt, start: Option<u32>) -> Result<TwoTermComplex> {
    let cap = max_degree();
    let data_degree = module
        .ideal()
        .basis()
        .iter()
        .chain(std::iter::once(a))
        .filter_map(|g| g.bernstein_degree().ok())
        .max()
        .unwrap_or(0);
    let d0 = start.unwrap_or(4 * (1 + data_degree));
    let mut map = MulMap::new(module, a);
    let mut history: Vec<(usize, usize)> = Vec::new();
    let mut d = d0;
    while d <= cap {
        let (k, witnesses, c) = truncated_dims(&mut map, d);
        history.push((k, c));
        let n = history.len();
        if n >= 3 && history[n - 1] == history[n - 2] && history[n - 2] == history[n - 3] {
            return Ok(TwoTermComplex {
                dim_ker: k,
                dim_coker: c,
                degree_labels: (-1, 0),
                ker_witnesses: witnesses,
                coker_witnesses: Vec::new(),
                certificate: Certificate::Stabilized { d: d - 2 },
            });
        }
        d += 1;
    }
    Err(Error::NoCertificate(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::parse_weyl;

    fn module(g: &str) -> CyclicModule {
        CyclicModule::new(vec![parse_weyl(g, 1).unwrap()]).unwrap()
    }

    fn dims(g: &str, a: &str) -> (usize, usize, Certificate) {
        let c = mult_complex(&module(g), &parse_weyl(a, 1).unwrap(), None).unwrap();
        (c.dim_ker, c.dim_coker, c.certificate)
    }

    // Brute-force oracle: matrix of A on F_D against F_{D+deg A}, for a large D;
    // kernel from the nullity on F_{D/2}, cokernel from the rank deficit in degrees ≤ D/2.
    fn brute(g: &str, a: &str, big: u32) -> (usize, usize) {
        let m = module(g);
        let a = parse_weyl(a, 1).unwrap();
        let mut map = MulMap::new(&m, &a);
        let (k, _, c) = truncated_dims(&mut map, big);
        (k, c)
    }

    #[test]
    fn examples_are_exact() {
        assert!(matches!(dims("d + 2", "x"), (0, 1, Certificate::ExactTriangular { .. })));
        assert!(matches!(dims("d - 3", "d"), (0, 0, Certificate::ExactTriangular { .. })));
        assert!(matches!(dims("d", "d"), (1, 0, Certificate::ExactTriangular { .. })));
        assert!(matches!(dims("x", "d"), (0, 1, Certificate::ExactTriangular { .. })));
        assert!(matches!(dims("x + 2", "x + 2"), (1, 0, Certificate::ExactTriangular { .. })));
        assert!(matches!(dims("x + 2", "x - 1"), (0, 0, Certificate::ExactTriangular { .. })));
        assert!(matches!(dims("d", "x - 5"), (0, 1, Certificate::ExactTriangular { .. })));
    }

    #[test]
    fn exact_agrees_with_brute_force() {
        for (g, a) in [
            ("x*d - 1/2", "x + 1"),
            ("x*d - 1/3", "d"),
            ("x*d - 2", "d"),
            ("x*d - 2", "x - 1"),
            ("x*d + 1", "x"),
            ("d^2 - 1", "d"),
            ("x^2*d + 1", "x + 1"),
        ] {
            let c = mult_complex(&module(g), &parse_weyl(a, 1).unwrap(), None).unwrap();
            assert_eq!((c.dim_ker, c.dim_coker), brute(g, a, 24), "{g} with {a}");
        }
    }

    #[test]
    fn kernel_witnesses_are_annihilated() {
        let m = module("x*d + 2");
        let a = parse_weyl("d", 1).unwrap();
        let c = mult_complex(&m, &a, None).unwrap();
        assert_eq!((c.dim_ker, c.dim_coker), (1, 1));
        for w in &c.ker_witnesses {
            let img = m.ideal().normal_form(&(&a * w));
            assert!(img.is_zero());
        }
    }

    #[test]
    fn non_holonomic_is_rejected() {
        let m = CyclicModule::new(vec![parse_weyl("d1", 2).unwrap()]).unwrap();
        assert_eq!(
            mult_complex(&m, &parse_weyl("x1", 2).unwrap(), None),
            Err(Error::NotHolonomic(3))
        );
    }

    #[test]
    fn json_shape() {
        let c = mult_complex(&module("d + 1"), &parse_weyl("x", 1).unwrap(), None).unwrap();
        let v = c.to_json();
        assert_eq!(v["ker"], 0);
        assert_eq!(v["coker"], 1);
        assert_eq!(v["degrees"], serde_json::json!([-1, 0]));
        assert_eq!(v["certificate"], "exact-triangular");
    }
}
