//! Exchange documents shared by the library and the command-line front end.
//!
//! Rationals travel as strings in lowest terms ("-3/2"); elements may be
//! written either as `{"free": [...], "torsion": [...]}` or as a bare array
//! holding the free coordinates followed by the torsion coordinates.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::difference::{compositions, mixed_delta, DifferenceWitness};
use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{GroupDescriptor, GroupElement, SemigroupDescriptor, SemigroupKind};
use crate::linalg::Matrix;
use crate::polynomial::{monomial_to_newton, newton_interpolate, MonomialForm, MultiIndex, NewtonForm};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDoc {
    Plain(Vec<i64>),
    Full {
        free: Vec<i64>,
        #[serde(default)]
        torsion: Vec<i64>,
    },
}

impl ElementDoc {
    pub fn resolve(&self, g: &GroupDescriptor) -> Result<GroupElement> {
        match self {
            ElementDoc::Plain(v) => {
                let k = g.free_rank();
                if v.len() == k {
                    g.element(v.clone(), vec![0; g.torsion_orders().len()])
                } else if v.len() == k + g.torsion_orders().len() {
                    g.element(v[..k].to_vec(), v[k..].to_vec())
                } else {
                    Err(Error::DescriptorMismatch(format!(
                        "element {v:?} does not fit {g}"
                    )))
                }
            }
            ElementDoc::Full { free, torsion } => {
                let torsion = if torsion.is_empty() {
                    vec![0; g.torsion_orders().len()]
                } else {
                    torsion.clone()
                };
                g.element(free.clone(), torsion)
            }
        }
    }
}

impl From<&GroupElement> for ElementDoc {
    fn from(t: &GroupElement) -> Self {
        ElementDoc::Full {
            free: t.free_coords().to_vec(),
            torsion: t.torsion_coords().iter().map(|&x| x as i64).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Newton,
    Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffDoc {
    pub index: MultiIndex,
    pub value: Scalar,
}

/// A polynomial given by coefficients, either against the binomial basis
/// C(t, α) or against ordinary monomials t^α.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDoc {
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    pub coeffs: Vec<CoeffDoc>,
}

fn coeff_docs<'a>(coeffs: impl Iterator<Item = (&'a MultiIndex, &'a Scalar)>) -> Vec<CoeffDoc> {
    coeffs
        .map(|(index, value)| CoeffDoc {
            index: index.clone(),
            value: value.clone(),
        })
        .collect()
}

fn group_fields(g: &GroupDescriptor) -> (Option<GroupDescriptor>, Option<usize>) {
    if g.torsion_orders().is_empty() && g.formal_real_rank() == 0 {
        (None, Some(g.free_rank()))
    } else {
        (Some(g.clone()), None)
    }
}

impl PolynomialDoc {
    pub fn from_newton(p: &NewtonForm) -> Self {
        let (group, free_rank) = group_fields(p.group());
        PolynomialDoc {
            basis: Basis::Newton,
            group,
            free_rank,
            degree_bound: Some(p.degree_bound()),
            coeffs: coeff_docs(p.coeffs().iter()),
        }
    }

    pub fn from_monomial(p: &MonomialForm) -> Self {
        let (group, free_rank) = group_fields(p.group());
        PolynomialDoc {
            basis: Basis::Monomial,
            group,
            free_rank,
            degree_bound: None,
            coeffs: coeff_docs(p.coeffs().iter()),
        }
    }

    pub fn group(&self) -> Result<GroupDescriptor> {
        match (&self.group, self.free_rank) {
            (Some(g), Some(k)) if g.free_rank() != k => Err(Error::DescriptorMismatch(format!(
                "free_rank {k} disagrees with group {g}"
            ))),
            (Some(g), _) => Ok(g.clone()),
            (None, Some(k)) => Ok(GroupDescriptor::lattice(k)),
            (None, None) => Err(Error::Parse("polynomial needs `group` or `free_rank`".into())),
        }
    }

    fn entries(&self) -> impl Iterator<Item = (MultiIndex, Scalar)> + '_ {
        self.coeffs.iter().map(|c| (c.index.clone(), c.value.clone()))
    }

    pub fn to_newton(&self) -> Result<NewtonForm> {
        let g = self.group()?;
        let p = match self.basis {
            Basis::Newton => {
                let top = self.coeffs.iter().map(|c| c.index.order()).max().unwrap_or(0);
                NewtonForm::new(g, self.degree_bound.unwrap_or(top), self.entries())?
            }
            Basis::Monomial => monomial_to_newton(&MonomialForm::new(g, self.entries())?),
        };
        match self.degree_bound {
            Some(n) => p.with_degree_bound(n),
            None => Ok(p),
        }
    }

    pub fn to_monomial(&self) -> Result<MonomialForm> {
        match self.basis {
            Basis::Monomial => {
                let q = MonomialForm::new(self.group()?, self.entries())?;
                if let (Some(n), Some(d)) = (self.degree_bound, q.degree()) {
                    if d > n {
                        return Err(Error::DegreeViolation { actual: d, bound: n });
                    }
                }
                Ok(q)
            }
            Basis::Newton => Ok(self.to_newton()?.to_monomial()),
        }
    }
}

/// Finitely many values of a function on a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub group: GroupDescriptor,
    pub table: Vec<(ElementDoc, Scalar)>,
}

impl TableDoc {
    pub fn entries(&self) -> Result<Vec<(GroupElement, Scalar)>> {
        self.table
            .iter()
            .map(|(t, v)| Ok((t.resolve(&self.group)?, v.clone())))
            .collect()
    }

    pub fn to_function(&self) -> Result<GroupFunction> {
        GroupFunction::from_table(self.group.clone(), self.entries()?)
    }

    /// A nonzero order-(n+1) generator difference all of whose points lie
    /// in the table.
    pub fn degree_witness(&self, n: usize) -> Result<Option<DifferenceWitness>> {
        let entries = self.entries()?;
        let f = GroupFunction::from_table(self.group.clone(), entries.clone())?;
        let gens = self.group.generators()?;
        let mut points: Vec<GroupElement> = entries.into_iter().map(|(t, _)| t).collect();
        points.sort();
        points.dedup();
        for t in &points {
            for counts in compositions(n + 1, gens.len()) {
                let steps: Vec<(GroupElement, usize)> = gens
                    .iter()
                    .cloned()
                    .zip(counts)
                    .filter(|(_, c)| *c > 0)
                    .collect();
                match mixed_delta(&f, &steps, t) {
                    Ok(v) if !v.is_zero() => {
                        return Ok(Some(DifferenceWitness { point: t.clone(), steps, value: v }))
                    }
                    Ok(_) | Err(Error::OutOfDomain(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(None)
    }

    /// Interpolates the table at degree n and confirms the interpolant
    /// reproduces every entry.
    pub fn to_newton(&self, n: usize) -> Result<NewtonForm> {
        let entries = self.entries()?;
        let f = GroupFunction::from_table(self.group.clone(), entries.clone())?;
        let p = newton_interpolate(&f, n)?;
        for (t, v) in &entries {
            if p.eval(t)? != *v {
                return Err(Error::NotAPolynomial(n));
            }
        }
        Ok(p)
    }
}

/// A polynomial supplied either by coefficients or by values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Table(TableDoc),
    Coefficients(PolynomialDoc),
}

impl PolyInput {
    pub fn group(&self) -> Result<GroupDescriptor> {
        match self {
            PolyInput::Table(t) => Ok(t.group.clone()),
            PolyInput::Coefficients(p) => p.group(),
        }
    }

    /// The Newton form; tables are interpolated at degree `n`, coefficient
    /// documents default to their own degree bound.
    pub fn to_newton(&self, n: Option<usize>) -> Result<NewtonForm> {
        match (self, n) {
            (PolyInput::Table(t), Some(n)) => t.to_newton(n),
            (PolyInput::Table(_), None) => Err(Error::InvalidArgument(
                "a degree is required to interpolate a table".into(),
            )),
            (PolyInput::Coefficients(p), Some(n)) => p.to_newton()?.with_degree_bound(n),
            (PolyInput::Coefficients(p), None) => p.to_newton(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupDoc {
    pub kind: SemigroupKind,
    #[serde(default)]
    pub generators: Vec<ElementDoc>,
}

impl SemigroupDoc {
    pub fn to_descriptor(&self, g: &GroupDescriptor) -> Result<SemigroupDescriptor> {
        match self.kind {
            SemigroupKind::FullGroup => SemigroupDescriptor::full_group(g.clone()),
            SemigroupKind::StandardOrthant => SemigroupDescriptor::standard_orthant(g.clone()),
            SemigroupKind::GeneratorList => {
                let gens = self
                    .generators
                    .iter()
                    .map(|e| e.resolve(g))
                    .collect::<Result<Vec<_>>>()?;
                SemigroupDescriptor::generator_list(g.clone(), gens)
            }
        }
    }
}

/// Row-major rational entries.
pub type MatrixDoc = Vec<Vec<Scalar>>;

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<Matrix> {
    if doc.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    let rows = doc
        .iter()
        .map(|row| row.iter().map(Scalar::to_real).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn matrix_to_doc(m: &Matrix) -> MatrixDoc {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(Scalar::from).collect())
        .collect()
}

/// Values of f on the box [lo, hi]^k × F, in enumeration order.
pub fn value_table(f: &GroupFunction, lo: i64, hi: i64) -> Result<Vec<(GroupElement, Scalar)>> {
    f.group()
        .box_elements(lo, hi)?
        .into_iter()
        .map(|t| f.eval(&t).map(|v| (t, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn square_table(hi: i64) -> TableDoc {
        TableDoc {
            group: GroupDescriptor::lattice(1),
            table: (0..=hi).map(|t| (ElementDoc::Plain(vec![t]), Scalar::from_int(t * t))).collect(),
        }
    }

    #[test]
    fn element_forms() {
        let g = GroupDescriptor::new(1, vec![4]).unwrap();
        let a: ElementDoc = serde_json::from_str("[3, 5]").unwrap();
        let b: ElementDoc = serde_json::from_str(r#"{"free": [3], "torsion": [1]}"#).unwrap();
        assert_eq!(a.resolve(&g).unwrap(), b.resolve(&g).unwrap());
        let c: ElementDoc = serde_json::from_str("[3]").unwrap();
        assert_eq!(c.resolve(&g).unwrap().torsion_coords(), &[0]);
        assert!(ElementDoc::Plain(vec![1, 2, 3]).resolve(&g).is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let text = r#"{"basis":"monomial","free_rank":2,"coeffs":[{"index":[1,1],"value":"1/2"},{"index":[0,1],"value":"-3"}]}"#;
        let doc: PolynomialDoc = serde_json::from_str(text).unwrap();
        let p = doc.to_newton().unwrap();
        assert_eq!(p.to_monomial(), doc.to_monomial().unwrap());
        let back = PolynomialDoc::from_newton(&p);
        assert_eq!(back.to_monomial().unwrap(), doc.to_monomial().unwrap());
        let json = serde_json::to_string(&PolynomialDoc::from_monomial(&p.to_monomial())).unwrap();
        assert_eq!(json, r#"{"basis":"monomial","free_rank":2,"coeffs":[{"index":[0,1],"value":"-3"},{"index":[1,1],"value":"1/2"}]}"#);
    }

    #[test]
    fn degree_bound_enforced() {
        let text = r#"{"basis":"newton","free_rank":1,"degree_bound":1,"coeffs":[{"index":[2],"value":"1"}]}"#;
        let doc: PolynomialDoc = serde_json::from_str(text).unwrap();
        assert_eq!(doc.to_newton().unwrap_err().code(), "degree_violation");
        let missing = r#"{"basis":"newton","coeffs":[]}"#;
        let doc: PolynomialDoc = serde_json::from_str(missing).unwrap();
        assert!(doc.to_newton().is_err());
    }

    #[test]
    fn table_interpolation() {
        let t = square_table(5);
        let p = t.to_newton(2).unwrap();
        assert_eq!(p.eval(&GroupElement::free([-3])).unwrap(), Scalar::from_int(9));
        assert_eq!(t.to_newton(1).unwrap_err().code(), "not_a_polynomial");
        assert_eq!(square_table(1).to_newton(2).unwrap_err().code(), "out_of_domain");
        assert_eq!(square_table(2).to_newton(2).unwrap(), p);
    }

    #[test]
    fn table_witness() {
        assert!(square_table(6).degree_witness(2).unwrap().is_none());
        let w = square_table(6).degree_witness(1).unwrap().unwrap();
        assert_eq!(w.value, Scalar::from_int(2));
        let z6 = GroupDescriptor::new(0, vec![6]).unwrap();
        let id = TableDoc {
            group: z6,
            table: (0..6).map(|x| (ElementDoc::Plain(vec![x]), Scalar::from_int(x))).collect(),
        };
        assert!(id.degree_witness(10).unwrap().is_some());
    }

    #[test]
    fn torsion_tables() {
        let g = GroupDescriptor::new(0, vec![3]).unwrap();
        let full = TableDoc {
            group: g.clone(),
            table: (0..3).map(|x| (ElementDoc::Plain(vec![x]), Scalar::from_int(2))).collect(),
        };
        assert_eq!(full.to_newton(3).unwrap().degree(), Some(0));
        let mut varying = full.clone();
        varying.table[1].1 = Scalar::from_int(5);
        assert_eq!(varying.to_newton(3).unwrap_err().code(), "not_a_polynomial");
    }

    #[test]
    fn poly_input_dispatch() {
        let table: PolyInput = serde_json::from_str(r#"{"group":{"free_rank":1},"table":[[[0],"1"],[[1],"1"]]}"#).unwrap();
        assert!(matches!(table, PolyInput::Table(_)));
        assert_eq!(table.to_newton(Some(0)).unwrap().degree(), Some(0));
        let coeffs: PolyInput = serde_json::from_str(r#"{"basis":"newton","free_rank":1,"coeffs":[]}"#).unwrap();
        assert!(matches!(coeffs, PolyInput::Coefficients(_)));
    }

    #[test]
    fn semigroup_and_matrix_docs() {
        let g = GroupDescriptor::lattice(2);
        let doc: SemigroupDoc = serde_json::from_str(r#"{"kind":"generator_list","generators":[[1,0],[1,1]]}"#).unwrap();
        let j = doc.to_descriptor(&g).unwrap();
        assert!(j.contains(&GroupElement::free([2, 1])).unwrap());
        let m: MatrixDoc = serde_json::from_str(r#"[["1","1/2"],["1/2","-3"]]"#).unwrap();
        let mat = matrix_from_doc(&m).unwrap();
        assert!(mat.is_symmetric());
        assert_eq!(matrix_to_doc(&mat), m);
        let bad: MatrixDoc = serde_json::from_str(r#"[["i"]]"#).unwrap();
        assert_eq!(matrix_from_doc(&bad).unwrap_err().code(), "not_real");
    }
}
