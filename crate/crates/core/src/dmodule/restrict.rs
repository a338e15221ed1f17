//! Restriction of a module on A^2 to the line x_2 = c, for cyclic cokernels.

use num_traits::Zero;

use super::CyclicModule;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, monomials_up_to, GroebnerBasis};
use crate::linalg;
use crate::rat::{q, Q};
use crate::weyl::{WeylElt, WeylMonomial};

const MAX_RELATION_DEGREE: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionResult {
    /// Annihilator of the image of 1 in M/(x_2 − c)M, in A_1.
    pub ideal_out: GroebnerBasis,
    pub cyclic: bool,
    /// Relation degree at which the annihilator stabilized.
    pub degree: u32,
}

fn embed(m: &WeylMonomial) -> WeylMonomial {
    WeylMonomial::new(vec![m.alpha[0], 0], vec![m.beta[0], 0])
}

/// Vectors of normal forms in a common coordinate system.
struct Columns {
    index: std::collections::HashMap<WeylMonomial, usize>,
    cols: Vec<Vec<(usize, Q)>>,
}

impl Columns {
    fn new() -> Self {
        Columns {
            index: Default::default(),
            cols: Vec::new(),
        }
    }

    fn push(&mut self, v: &WeylElt) {
        let mut col = Vec::new();
        for (m, c) in v.terms() {
            let k = self.index.len();
            let i = *self.index.entry(m.clone()).or_insert(k);
            col.push((i, c.clone()));
        }
        self.cols.push(col);
    }

    fn matrix(&self) -> linalg::Matrix {
        let mut mtx = linalg::zeros(self.index.len(), self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                mtx[*i][j] = c.clone();
            }
        }
        mtx
    }
}

/// Relations a ∈ A_1 of degree ≤ d with a·1 ∈ (x_2 − c)M, witnessed by
/// u of degree ≤ d + slack.
fn relations(module: &CyclicModule, y: &WeylElt, d: u32, slack: u32) -> Result<Vec<WeylElt>> {
    let ideal = module.ideal();
    let a_monos = monomials_up_to(1, d);
    let u_monos = ideal.standard_monomials(d + slack);
    let mut cols = Columns::new();
    for m in &a_monos {
        cols.push(&ideal.normal_form(&WeylElt::monomial(embed(m), q(1))));
    }
    for m in &u_monos {
        cols.push(&ideal.normal_form(&y.mul_monomial_right(m)).neg());
    }
    let null = linalg::nullspace(&cols.matrix(), a_monos.len() + u_monos.len());
    let mut a_parts: linalg::Matrix = Vec::new();
    for z in &null {
        let a_part = z[..a_monos.len()].to_vec();
        if a_part.iter().all(Zero::is_zero) {
            return Err(Error::RestrictionUnsupported(format!(
                "x_2 - c is not injective up to degree {}",
                d + slack
            )));
        }
        a_parts.push(a_part);
    }
    linalg::rref(&mut a_parts);
    Ok(a_parts
        .into_iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| WeylElt::from_terms(1, a_monos.iter().cloned().zip(r)))
        .collect())
}

/// Every standard monomial of degree ≤ d lies in A_1·1 + (x_2 − c)M.
fn cyclic_up_to(module: &CyclicModule, y: &WeylElt, d: u32, slack: u32) -> bool {
    let ideal = module.ideal();
    let mut cols = Columns::new();
    for m in monomials_up_to(1, d + slack) {
        cols.push(&ideal.normal_form(&WeylElt::monomial(embed(&m), q(1))));
    }
    for m in ideal.standard_monomials(d + slack) {
        cols.push(&ideal.normal_form(&y.mul_monomial_right(&m)));
    }
    let base = linalg::rank(&cols.matrix());
    for m in ideal.standard_monomials(d) {
        cols.push(&WeylElt::monomial(m, q(1)));
    }
    linalg::rank(&cols.matrix()) == base
}

pub fn partial_restrict_last(module: &CyclicModule, c: &Q) -> Result<RestrictionResult> {
    if module.n() != 2 {
        return Err(Error::Unsupported("restriction implemented for n = 2".into()));
    }
    if module.ideal().is_unit() {
        return Err(Error::RestrictionUnsupported("zero module".into()));
    }
    let y = &WeylElt::x(1, 2) - &WeylElt::constant(c.clone(), 2);
    let data_degree = module
        .ideal()
        .basis()
        .iter()
        .filter_map(|g| g.bernstein_degree().ok())
        .max()
        .unwrap_or(1);
    let mut previous: Option<GroebnerBasis> = None;
    for d in data_degree..=MAX_RELATION_DEGREE {
        let slack = d + 2;
        let rels = relations(module, &y, d, slack)?;
        if rels.is_empty() {
            previous = None;
            continue;
        }
        let gb = buchberger(&rels)?;
        if gb.is_unit() {
            return Err(Error::RestrictionUnsupported(
                "the cokernel of x_2 - c is zero".into(),
            ));
        }
        if previous.as_ref().is_some_and(|p| p.ideal_eq(&gb)) {
            if !cyclic_up_to(module, &y, d, slack) {
                return Err(Error::RestrictionUnsupported(
                    "the cokernel is not generated by the image of 1".into(),
                ));
            }
            return Ok(RestrictionResult {
                ideal_out: gb,
                cyclic: true,
                degree: d,
            });
        }
        previous = Some(gb);
    }
    Err(Error::RestrictionUnsupported(format!(
        "relations did not stabilize up to degree {MAX_RELATION_DEGREE}"
    )))
}
