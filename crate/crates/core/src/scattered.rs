//! Interpolation on arbitrary given (scattered) node sets.
//!
//! For a given family `P̄_A` of `|A|` nodes, the change-of-nodes matrix
//! `R[alpha][beta] = L_beta(p̄_alpha)` relates the reference Lagrange basis
//! to the given nodes. When `R` is numerically invertible the given nodes
//! are unisolvent, the Lagrange coefficients of the interpolant are
//! `C_Lag = S F` with `S = R^{-1}`, and `||S||_inf` measures how much
//! approximation quality the node change can cost.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PivotedLu};
use crate::nodes::UnisolventNodes;
use crate::transform::{LagrangeCoefficients, LagrangeEvaluator};

/// Condition-estimate threshold above which a scattered node set is
/// rejected as not unisolvent: `1 / (50 * machine epsilon)`.
pub fn singularity_threshold() -> f64 {
    1.0 / (50.0 * f64::EPSILON)
}

/// Precomputed scattered-node system for a fixed reference family.
#[derive(Debug, Clone)]
pub struct ScatteredSystem {
    evaluator: LagrangeEvaluator,
    given_nodes: Vec<Vec<f64>>,
    r: Matrix,
    s: Matrix,
    s_inf: f64,
}

/// Build the system: evaluates every reference Lagrange polynomial at every
/// given node (`O(|A|^3)` total) and inverts `R` by partial-pivoting LU.
/// A pivot-ratio condition estimate above [`singularity_threshold`] is a
/// diagnosed unisolvence failure, not a crash.
pub fn build_scattered(
    reference: &UnisolventNodes,
    given_nodes: Vec<Vec<f64>>,
) -> Result<ScatteredSystem> {
    let k = reference.len();
    if given_nodes.len() != k {
        return Err(Error::SizeMismatch {
            what: "given nodes",
            expected: k,
            got: given_nodes.len(),
        });
    }
    for p in &given_nodes {
        if p.len() != reference.dim() {
            return Err(Error::DimensionMismatch {
                expected: reference.dim(),
                got: p.len(),
            });
        }
    }
    let evaluator = LagrangeEvaluator::new(reference.clone())?;
    let r = evaluator.rows(&given_nodes);
    let lu = match PivotedLu::factor(&r) {
        Ok(lu) => lu,
        Err(Error::SingularMatrix) => {
            return Err(Error::NotUnisolvent {
                cond_estimate: f64::INFINITY,
            })
        }
        Err(e) => return Err(e),
    };
    let cond = lu.cond_estimate();
    if cond > singularity_threshold() {
        return Err(Error::NotUnisolvent {
            cond_estimate: cond,
        });
    }
    let s = lu.inverse();
    let s_inf = s.inf_norm();
    Ok(ScatteredSystem {
        evaluator,
        given_nodes,
        r,
        s,
        s_inf,
    })
}

impl ScatteredSystem {
    #[inline]
    pub fn reference(&self) -> &UnisolventNodes {
        self.evaluator.nodes()
    }

    #[inline]
    pub fn given_nodes(&self) -> &[Vec<f64>] {
        &self.given_nodes
    }

    #[inline]
    pub fn r(&self) -> &Matrix {
        &self.r
    }

    #[inline]
    pub fn s(&self) -> &Matrix {
        &self.s
    }

    /// `||S||_inf`, the conditioning measure of the node change.
    #[inline]
    pub fn s_inf(&self) -> f64 {
        self.s_inf
    }

    #[inline]
    pub fn evaluator(&self) -> &LagrangeEvaluator {
        &self.evaluator
    }

    /// Lagrange coefficients (on the reference nodes) of the interpolant of
    /// `values` given at the scattered nodes: `C_Lag = S F`.
    pub fn interpolate(&self, values: &[f64]) -> Result<LagrangeCoefficients> {
        if values.len() != self.given_nodes.len() {
            return Err(Error::SizeMismatch {
                what: "function values",
                expected: self.given_nodes.len(),
                got: values.len(),
            });
        }
        Ok(LagrangeCoefficients(self.s.matvec(values)))
    }

    /// Error-amplification factor `s_n = 1 + ||S||_inf * Lambda(P_A)` that
    /// scales the reference-grid error into a bound for the scattered grid.
    pub fn error_factor(&self, lebesgue_reference: f64) -> f64 {
        1.0 + self.s_inf * lebesgue_reference
    }
}

/// Boundary-distance-scaled random perturbation of a reference grid.
///
/// Every coordinate moves by `rho * d(p)` with `rho` uniform in
/// `[-amplitude, amplitude]` and `d(p)` the distance of the coordinate to
/// the nearer cube face, so boundary nodes stay on the boundary while
/// interior nodes wander with radius proportional to their clearance.
pub fn perturb_grid<R: Rng>(
    reference: &UnisolventNodes,
    amplitude: f64,
    rng: &mut R,
) -> Vec<Vec<f64>> {
    reference
        .points()
        .iter()
        .map(|p| {
            p.iter()
                .map(|&c| {
                    let rho: f64 = rng.gen_range(-1.0..1.0) * amplitude;
                    let dist = (1.0 - c.abs()).max(0.0);
                    c + rho * dist
                })
                .collect()
        })
        .collect()
}
