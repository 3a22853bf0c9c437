//! Basis transforms between Newton, Lagrange, and canonical coefficients.
//!
//! For a fixed `(A, P_A)`, the matrix `NL[alpha][beta] = N_beta(p_alpha)` is
//! lower triangular with nonzero diagonal, and the Newton coefficients of
//! the monomials make `CN` upper triangular. Their inverses `LN`, `NC` come
//! from triangular substitution, which keeps the zero pattern exact, and the
//! multivariate Vandermonde matrix factors as `V(P_A) = NL * CN`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::multiindex::{ChainStep, MultiIndexSet};
use crate::newton::{self, divided_differences, NewtonPolynomial};
use crate::nodes::{GeneratingNodes, UnisolventNodes};

/// Which basis a coefficient vector is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Newton,
    Lagrange,
    Canonical,
}

/// Coefficients tagged with their basis, aligned with the lex order of `A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub basis: Basis,
    pub values: Vec<f64>,
}

/// Lagrange coefficients: function values on the reference nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagrangeCoefficients(pub Vec<f64>);

impl LagrangeCoefficients {
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All Newton basis values `N_beta(x)` for `beta` in lex order, computed in
/// `O(|A|)` multiplications by extending each value from its increment-chain
/// parent. Entries that must vanish (a node below the index) come out as
/// exact zeros because the vanishing factor is an exact difference of
/// bit-identical values.
pub fn newton_basis_values(
    set: &MultiIndexSet,
    chain: &[ChainStep],
    gp: &GeneratingNodes,
    x: &[f64],
) -> Vec<f64> {
    let mut vals = vec![0.0; set.len()];
    if set.is_empty() {
        return vals;
    }
    vals[0] = 1.0;
    for (q, step) in chain.iter().enumerate() {
        vals[q + 1] = vals[step.parent] * (x[step.dim] - gp.value(step.dim, step.level - 1));
    }
    vals
}

/// All monomial values `x^beta` for `beta` in lex order, via the same chain.
pub fn monomial_values(set: &MultiIndexSet, chain: &[ChainStep], x: &[f64]) -> Vec<f64> {
    let mut vals = vec![0.0; set.len()];
    if set.is_empty() {
        return vals;
    }
    vals[0] = 1.0;
    for (q, step) in chain.iter().enumerate() {
        vals[q + 1] = vals[step.parent] * x[step.dim];
    }
    vals
}

/// Multivariate Vandermonde matrix `V[alpha][beta] = p_alpha^beta`,
/// rows and columns in lex order.
pub fn vandermonde(nodes: &UnisolventNodes) -> Matrix {
    let set = nodes.set();
    let chain = set.increment_chain();
    let mut v = Matrix::zeros(set.len(), set.len());
    for (r, p) in nodes.points().iter().enumerate() {
        let vals = monomial_values(set, &chain, p);
        v.row_mut(r).copy_from_slice(&vals);
    }
    v
}

/// Newton-to-Lagrange matrix `NL[alpha][beta] = N_beta(p_alpha)`; lower
/// triangular, `O(|A|^2)` arithmetic via shared prefix products.
pub fn build_nl(nodes: &UnisolventNodes) -> Matrix {
    let set = nodes.set();
    let chain = set.increment_chain();
    let mut nl = Matrix::zeros(set.len(), set.len());
    for (r, p) in nodes.points().iter().enumerate() {
        let vals = newton_basis_values(set, &chain, nodes.gp(), p);
        nl.row_mut(r).copy_from_slice(&vals);
    }
    nl
}

/// Lagrange-to-Newton matrix: the lower-triangular inverse of `NL`, by
/// forward substitution on unit vectors. Column `beta` holds the Newton
/// coefficients of the Lagrange polynomial `L_beta`.
pub fn build_ln(nl: &Matrix) -> Result<Matrix> {
    nl.invert_lower_triangular()
}

/// Canonical-to-Newton matrix: column `beta` holds the Newton coefficients
/// of the monomial `x^beta`. Upper triangular because `x^beta` lies in the
/// span of the Newton polynomials up to `beta`; the scheme runs on exactly
/// that lex prefix, so the lower part is structurally zero.
pub fn build_cn(nodes: &UnisolventNodes) -> Matrix {
    let set = nodes.set();
    let chain = set.increment_chain();
    let k = set.len();
    let mut cn = Matrix::zeros(k, k);
    // Monomial values on the nodes, one column at a time.
    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(k); k];
    for p in nodes.points() {
        let vals = monomial_values(set, &chain, p);
        for (c, v) in columns.iter_mut().zip(vals) {
            c.push(v);
        }
    }
    for (b, col) in columns.iter_mut().enumerate() {
        col.truncate(b + 1);
        newton::dds_prefix(&set.indices()[..=b], nodes.gp(), col);
        for (a, &v) in col.iter().enumerate() {
            cn.set(a, b, v);
        }
    }
    cn
}

/// Newton-to-canonical matrix: the upper-triangular inverse of `CN`.
pub fn build_nc(cn: &Matrix) -> Result<Matrix> {
    cn.invert_upper_triangular()
}

/// Precomputed transform matrices for a fixed node family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformSet {
    nodes: UnisolventNodes,
    nl: Matrix,
    ln: Matrix,
    cn: Matrix,
    nc: Matrix,
}

impl TransformSet {
    pub fn build(nodes: UnisolventNodes) -> Result<Self> {
        let nl = build_nl(&nodes);
        let ln = build_ln(&nl)?;
        let cn = build_cn(&nodes);
        let nc = build_nc(&cn)?;
        Ok(Self {
            nodes,
            nl,
            ln,
            cn,
            nc,
        })
    }

    #[inline]
    pub fn nodes(&self) -> &UnisolventNodes {
        &self.nodes
    }

    #[inline]
    pub fn set(&self) -> &MultiIndexSet {
        self.nodes.set()
    }

    #[inline]
    pub fn nl(&self) -> &Matrix {
        &self.nl
    }

    #[inline]
    pub fn ln(&self) -> &Matrix {
        &self.ln
    }

    #[inline]
    pub fn cn(&self) -> &Matrix {
        &self.cn
    }

    #[inline]
    pub fn nc(&self) -> &Matrix {
        &self.nc
    }

    /// Newton coefficients from function values in one triangular
    /// matrix-vector product: `C_Newt = LN * F`.
    pub fn interpolate_fast(&self, values: &[f64]) -> Result<NewtonPolynomial> {
        let k = self.set().len();
        if values.len() != k {
            return Err(Error::SizeMismatch {
                what: "function values",
                expected: k,
                got: values.len(),
            });
        }
        let mut coeffs = vec![0.0; k];
        for i in 0..k {
            let row = self.ln.row(i);
            coeffs[i] = row[..=i]
                .iter()
                .zip(&values[..=i])
                .map(|(a, b)| a * b)
                .sum();
        }
        NewtonPolynomial::new(self.set().clone(), self.nodes.gp().clone(), coeffs)
    }

    /// Evaluate the Lagrange-form interpolant `sum_alpha F_alpha L_alpha(x)`
    /// by converting to Newton form and running the Horner scheme.
    pub fn lagrange_eval(&self, values: &[f64], x: &[f64]) -> Result<f64> {
        self.interpolate_fast(values)?.eval(x)
    }

    /// Values of all Lagrange basis polynomials at `x`:
    /// `L(x)^T = N(x)^T * LN`, one basis sweep plus a triangular product.
    pub fn lagrange_basis_values(&self, x: &[f64]) -> Vec<f64> {
        let chain = self.set().increment_chain();
        let nvals = newton_basis_values(self.set(), &chain, self.nodes.gp(), x);
        self.ln.transpose_matvec(&nvals)
    }

    /// Convert a tagged coefficient vector between bases.
    pub fn convert(&self, c: &CoefficientVector, to: Basis) -> Result<CoefficientVector> {
        let k = self.set().len();
        if c.values.len() != k {
            return Err(Error::SizeMismatch {
                what: "coefficient vector",
                expected: k,
                got: c.values.len(),
            });
        }
        let newton = match c.basis {
            Basis::Newton => c.values.clone(),
            Basis::Lagrange => self.ln.matvec(&c.values),
            Basis::Canonical => self.cn.matvec(&c.values),
        };
        let values = match to {
            Basis::Newton => newton,
            Basis::Lagrange => self.nl.matvec(&newton),
            Basis::Canonical => self.nc.matvec(&newton),
        };
        Ok(CoefficientVector { basis: to, values })
    }

    /// Content key identifying `(A, GP)` for cache files: a SHA-256 over the
    /// lex-ordered indices and the exact bit patterns of the node values.
    pub fn content_key(nodes: &UnisolventNodes) -> String {
        let mut hasher = Sha256::new();
        hasher.update((nodes.set().dim() as u64).to_le_bytes());
        for idx in nodes.set().indices() {
            for &e in idx.entries() {
                hasher.update((e as u64).to_le_bytes());
            }
        }
        for d in 0..nodes.gp().dim() {
            hasher.update((nodes.gp().len(d) as u64).to_le_bytes());
            for &v in nodes.gp().values(d) {
                hasher.update(v.to_bits().to_le_bytes());
            }
        }
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn key(&self) -> String {
        Self::content_key(&self.nodes)
    }
}

/// One-off Lagrange-form evaluation without a precomputed transform:
/// converts the node values to Newton form by divided differences and
/// evaluates there. The Lagrange basis stays implicit.
pub fn lagrange_eval(nodes: &UnisolventNodes, values: &[f64], x: &[f64]) -> Result<f64> {
    divided_differences(nodes, values)?.eval(x)
}

/// Repeated evaluation of all reference Lagrange basis polynomials at
/// arbitrary points. Holds only `NL`'s inverse plus the increment chain, so
/// it is cheaper to build than a full [`TransformSet`].
#[derive(Debug, Clone)]
pub struct LagrangeEvaluator {
    nodes: UnisolventNodes,
    chain: Vec<ChainStep>,
    ln: Matrix,
}

impl LagrangeEvaluator {
    pub fn new(nodes: UnisolventNodes) -> Result<Self> {
        let chain = nodes.set().increment_chain();
        let nl = build_nl(&nodes);
        let ln = build_ln(&nl)?;
        Ok(Self { nodes, chain, ln })
    }

    #[inline]
    pub fn nodes(&self) -> &UnisolventNodes {
        &self.nodes
    }

    #[inline]
    pub fn set(&self) -> &MultiIndexSet {
        self.nodes.set()
    }

    #[inline]
    pub fn ln(&self) -> &Matrix {
        &self.ln
    }

    /// `(L_beta(x))_beta` in lex order: one Newton basis sweep plus a
    /// triangular transpose product.
    pub fn values_at(&self, x: &[f64]) -> Vec<f64> {
        let nvals = newton_basis_values(self.set(), &self.chain, self.nodes.gp(), x);
        self.ln.transpose_matvec(&nvals)
    }

    /// Matrix with row `i` holding the Lagrange basis values at `points[i]`.
    pub fn rows(&self, points: &[Vec<f64>]) -> Matrix {
        let k = self.set().len();
        let mut r = Matrix::zeros(points.len(), k);
        for (i, p) in points.iter().enumerate() {
            let vals = self.values_at(p);
            r.row_mut(i).copy_from_slice(&vals);
        }
        r
    }
}
