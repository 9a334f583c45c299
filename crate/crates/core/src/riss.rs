//! Quadratic forms as signed sums of squares of independent linear maps.
//!
//! A homogeneous degree-2 polynomial p(x) = Σ c_ij x_i x_j on Z^k is
//! stored as its symmetric coefficient matrix C and diagonalized by a
//! rational congruence PᵀCP = diag(d). Diagonal entries stay rational: the
//! ±1 normalization would need √d_j. The signs are kept in the signature,
//! which is invariant under congruence.
//!
//! Every form handled here is finite-dimensional, so it always admits such
//! a representation; non-representable quadratic forms only exist on
//! infinite-dimensional spaces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupDescriptor;
use crate::linalg::Matrix;
use crate::polynomial::{MonomialForm, MultiIndex};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    matrix: Matrix,
}

impl SymmetricForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::InvalidArgument("matrix is not symmetric".into()));
        }
        Ok(SymmetricForm { matrix })
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Σ_{i,j} c_ij t_i t_j as a monomial form on Z^dim.
    pub fn to_polynomial(&self) -> MonomialForm {
        let n = self.dim();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                terms.push((MultiIndex::new(e), Scalar::real(self.matrix[(i, j)].clone())));
            }
        }
        MonomialForm::new(GroupDescriptor::lattice(n), terms).expect("index lengths match")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InertiaDecomposition {
    pub transform: Matrix,
    pub diagonal: Vec<BigRational>,
    pub signature: Signature,
}

fn signature_of(diagonal: &[BigRational]) -> Signature {
    Signature {
        positive: diagonal.iter().filter(|d| d.is_positive()).count(),
        negative: diagonal.iter().filter(|d| d.is_negative()).count(),
        zero: diagonal.iter().filter(|d| d.is_zero()).count(),
    }
}

/// Symmetric elimination recording the congruence. When no diagonal pivot
/// remains but an off-diagonal entry c_ij does, row/column i += j exposes
/// the pivot 2c_ij.
pub fn sylvester_diagonalize(form: &SymmetricForm) -> InertiaDecomposition {
    let n = form.dim();
    let mut a = form.matrix.clone();
    let mut p = Matrix::identity(n);
    let one = BigRational::from_integer(BigInt::from(1));
    for i in 0..n {
        if a[(i, i)].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                a.swap_rows(i, j);
                a.swap_cols(i, j);
                p.swap_cols(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a[(i, j)].is_zero()) {
                a.add_col_multiple(i, j, &one);
                a.add_row_multiple(i, j, &one);
                p.add_col_multiple(i, j, &one);
            } else {
                continue;
            }
        }
        let pivot = a[(i, i)].clone();
        for j in i + 1..n {
            if a[(j, i)].is_zero() {
                continue;
            }
            let f = -(&a[(j, i)] / &pivot);
            a.add_col_multiple(j, i, &f);
            a.add_row_multiple(j, i, &f);
            p.add_col_multiple(j, i, &f);
        }
    }
    let diagonal: Vec<BigRational> = (0..n).map(|i| a[(i, i)].clone()).collect();
    InertiaDecomposition {
        transform: p,
        signature: signature_of(&diagonal),
        diagonal,
    }
}

/// One term d·(α·x)² of a sum-of-squares representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareTerm {
    pub coefficient: BigRational,
    pub functional: Vec<BigRational>,
}

/// p(x) = Σ_j d_j (α_j·x)² with d_j ≠ 0 and the α_j linearly independent
/// (rows of P⁻¹ for PᵀCP = diag(d)).
pub fn squares_decomposition(form: &SymmetricForm) -> Result<Vec<SquareTerm>> {
    let dec = sylvester_diagonalize(form);
    let inv = dec
        .transform
        .inverse()
        .ok_or(Error::InternalIdentity("congruence transform is singular"))?;
    Ok(dec
        .diagonal
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(j, d)| SquareTerm {
            coefficient: d.clone(),
            functional: inv.row(j).to_vec(),
        })
        .collect())
}

/// The symmetric matrix Σ_j d_j α_j α_jᵀ of a sum of squares.
pub fn squares_to_form(dim: usize, terms: &[SquareTerm]) -> Result<SymmetricForm> {
    let mut m = Matrix::zeros(dim, dim);
    for term in terms {
        if term.functional.len() != dim {
            return Err(Error::InvalidArgument("functional length differs from dimension".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                let v = &term.coefficient * &term.functional[i] * &term.functional[j];
                m[(i, j)] += v;
            }
        }
    }
    SymmetricForm::new(m)
}

/// The coefficient matrix of a homogeneous real quadratic on Z^k:
/// c_ii is the t_i² coefficient, c_ij half the t_i t_j coefficient.
pub fn riss_form_of(p: &MonomialForm) -> Result<SymmetricForm> {
    if !p.is_homogeneous(2) {
        return Err(Error::NotHomogeneousQuadratic);
    }
    let k = p.free_rank();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut m = Matrix::zeros(k, k);
    for (idx, c) in p.coeffs() {
        let c = c.to_real()?;
        let vars: Vec<usize> = idx
            .entries()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e))
            .collect();
        let (i, j) = (vars[0], vars[1]);
        if i == j {
            m[(i, i)] = c;
        } else {
            let h = &c * &half;
            m[(i, j)] = h.clone();
            m[(j, i)] = h;
        }
    }
    SymmetricForm::new(m)
}
