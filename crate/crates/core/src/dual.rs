//! Dual unisolvence: maximal unisolvent subsets, interpolation bases, and
//! kernels of polynomials vanishing on given nodes.
//!
//! For arbitrary input nodes the matrix `R[i][beta] = L_beta(p_i)` over the
//! reference Lagrange basis is eliminated with row partial pivoting; columns
//! whose pivot falls below the rank threshold are skipped, which is the
//! double-pivot scheme with the column interchange folded into the sweep.
//! The accepted pivot rows name the node subset `P0`, the pivot columns span
//! the interpolable directions, and each skipped column yields one kernel
//! polynomial vanishing on all input nodes. Applied to samples drawn from an
//! algebraic variety, the kernel recovers level-set polynomials and the
//! pivot space supports least-squares fitting of restricted functions.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{least_squares, Matrix, PivotedLu};
use crate::nodes::{leja_chebyshev_second, GeneratingNodes, UnisolventNodes};
use crate::transform::{LagrangeCoefficients, LagrangeEvaluator};

/// Default pivot threshold relative to the largest accepted pivot.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Rank-revealing split of the polynomial space over a set of input nodes.
#[derive(Debug, Clone)]
pub struct DualDecomposition {
    rank: usize,
    p0_indices: Vec<usize>,
    p0: Vec<Vec<f64>>,
    pivot_columns: Vec<usize>,
    interp_basis: Vec<LagrangeCoefficients>,
    kernel_basis: Vec<LagrangeCoefficients>,
}

impl DualDecomposition {
    /// Numerical rank `k`: the dimension of the polynomial space restricted
    /// to the input nodes.
    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Positions (into the input list) of the selected nodes, pivot order.
    #[inline]
    pub fn p0_indices(&self) -> &[usize] {
        &self.p0_indices
    }

    /// The selected maximal unisolvent node subset, pivot order.
    #[inline]
    pub fn p0(&self) -> &[Vec<f64>] {
        &self.p0
    }

    /// Positions (into the lex order of `A`) of the pivot basis directions.
    #[inline]
    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_columns
    }

    /// Lagrange coordinates of `rho_1..rho_k` with `rho_i(p0_j) = delta_ij`.
    #[inline]
    pub fn interp_basis(&self) -> &[LagrangeCoefficients] {
        &self.interp_basis
    }

    /// Lagrange coordinates of a basis of all polynomials in the space that
    /// vanish on every input node, each normalized to unit infinity norm.
    #[inline]
    pub fn kernel_basis(&self) -> &[LagrangeCoefficients] {
        &self.kernel_basis
    }

    /// `k + dim(kernel) = |A|` by construction.
    #[inline]
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }
}

/// Decompose the space over `input_nodes`. `rank_tol` is the relative pivot
/// threshold (see [`DEFAULT_RANK_TOL`]).
pub fn dual_decompose(
    reference: &UnisolventNodes,
    input_nodes: &[Vec<f64>],
    rank_tol: f64,
) -> Result<DualDecomposition> {
    let evaluator = LagrangeEvaluator::new(reference.clone())?;
    let r = evaluator.rows(input_nodes);
    decompose_rows(&r, input_nodes, rank_tol).map(|(d, _)| d)
}

/// Elimination core shared with [`variety_fit`]; returns the decomposition
/// plus the untouched row matrix for reuse.
fn decompose_rows(
    r: &Matrix,
    input_nodes: &[Vec<f64>],
    rank_tol: f64,
) -> Result<(DualDecomposition, Matrix)> {
    let l = r.rows();
    let ncols = r.cols();
    if l == 0 {
        return Err(Error::DegenerateInput);
    }
    let mut e = r.clone();
    let mut row_perm: Vec<usize> = (0..l).collect();
    let mut pivot_columns: Vec<usize> = Vec::new();
    let mut max_pivot = 0.0f64;
    let mut t = 0usize;

    for c in 0..ncols {
        if t == l {
            break;
        }
        let mut best_row = t;
        let mut best = e.get(t, c).abs();
        for rr in t + 1..l {
            let v = e.get(rr, c).abs();
            if v > best {
                best = v;
                best_row = rr;
            }
        }
        if best == 0.0 || (max_pivot > 0.0 && best <= rank_tol * max_pivot) {
            continue; // column carries no new pivot
        }
        e.swap_rows(t, best_row);
        row_perm.swap(t, best_row);
        max_pivot = max_pivot.max(best);
        let pivot = e.get(t, c);
        for rr in t + 1..l {
            let factor = e.get(rr, c) / pivot;
            if factor != 0.0 {
                for cc in c..ncols {
                    let v = e.get(rr, cc) - factor * e.get(t, cc);
                    e.set(rr, cc, v);
                }
            }
            e.set(rr, c, 0.0);
        }
        pivot_columns.push(c);
        t += 1;
    }

    let k = t;
    if k == 0 {
        return Err(Error::DegenerateInput);
    }
    let p0_indices: Vec<usize> = row_perm[..k].to_vec();
    let p0: Vec<Vec<f64>> = p0_indices.iter().map(|&i| input_nodes[i].clone()).collect();

    // Interpolation basis: invert the leading k x k pivot block of R.
    let mut r1 = Matrix::zeros(k, k);
    for (i, &ri) in p0_indices.iter().enumerate() {
        for (j, &cj) in pivot_columns.iter().enumerate() {
            r1.set(i, j, r.get(ri, cj));
        }
    }
    let r1_inv = PivotedLu::factor(&r1)?.inverse();
    let mut interp_basis = Vec::with_capacity(k);
    for i in 0..k {
        let mut coeffs = vec![0.0; ncols];
        for (j, &cj) in pivot_columns.iter().enumerate() {
            coeffs[cj] = r1_inv.get(j, i);
        }
        interp_basis.push(LagrangeCoefficients(coeffs));
    }

    // Kernel basis: one vector per skipped column, by back substitution on
    // the echelon rows over the pivot columns.
    let mut kernel_basis = Vec::with_capacity(ncols - k);
    for c in 0..ncols {
        if pivot_columns.contains(&c) {
            continue;
        }
        let mut d = vec![0.0; k];
        for i in (0..k).rev() {
            if pivot_columns[i] > c {
                // Echelon row i starts right of column c; nothing to cancel.
                d[i] = 0.0;
                continue;
            }
            let mut s = -e.get(i, c);
            for (j, &cj) in pivot_columns.iter().enumerate().skip(i + 1) {
                s -= e.get(i, cj) * d[j];
            }
            d[i] = s / e.get(i, pivot_columns[i]);
        }
        let mut z = vec![0.0; ncols];
        z[c] = 1.0;
        for (j, &cj) in pivot_columns.iter().enumerate() {
            z[cj] = d[j];
        }
        // Normalize so the largest-magnitude coordinate is exactly one.
        let lead = z
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.abs().total_cmp(&b.abs()))
            .map(|(i, _)| i)
            .unwrap();
        let scale = z[lead];
        for v in z.iter_mut() {
            *v /= scale;
        }
        kernel_basis.push(LagrangeCoefficients(z));
    }

    Ok((
        DualDecomposition {
            rank: k,
            p0_indices,
            p0,
            pivot_columns,
            interp_basis,
            kernel_basis,
        },
        e,
    ))
}

/// Result of fitting function samples on an algebraic variety.
#[derive(Debug, Clone)]
pub struct VarietyFit {
    pub decomposition: DualDecomposition,
    /// Lagrange coefficients (reference nodes) of the fitted interpolant,
    /// supported on the pivot directions.
    pub interpolant: LagrangeCoefficients,
    /// Largest absolute residual `|Q(p_i) - f_i|` over the samples.
    pub residual_max: f64,
    /// Root-mean-square residual over the samples.
    pub residual_rms: f64,
}

/// Fit values sampled on a variety: decompose the space over the sample
/// locations, then least-squares solve `R C ≈ F` restricted to the
/// `k`-dimensional pivot subspace.
pub fn variety_fit(
    reference: &UnisolventNodes,
    samples: &[Vec<f64>],
    values: &[f64],
    rank_tol: f64,
) -> Result<VarietyFit> {
    if values.len() != samples.len() {
        return Err(Error::SizeMismatch {
            what: "sample values",
            expected: samples.len(),
            got: values.len(),
        });
    }
    let evaluator = LagrangeEvaluator::new(reference.clone())?;
    let r = evaluator.rows(samples);
    let (decomposition, _) = decompose_rows(&r, samples, rank_tol)?;
    let k = decomposition.rank();

    let mut sub = Matrix::zeros(samples.len(), k);
    for i in 0..samples.len() {
        for (j, &cj) in decomposition.pivot_columns().iter().enumerate() {
            sub.set(i, j, r.get(i, cj));
        }
    }
    let c = least_squares(&sub, values)?;
    let mut full = vec![0.0; reference.len()];
    for (j, &cj) in decomposition.pivot_columns().iter().enumerate() {
        full[cj] = c[j];
    }
    let fitted = sub.matvec(&c);
    let mut residual_max = 0.0f64;
    let mut sq = 0.0f64;
    for (a, b) in fitted.iter().zip(values) {
        let d = (a - b).abs();
        residual_max = residual_max.max(d);
        sq += d * d;
    }
    let residual_rms = (sq / values.len() as f64).sqrt();
    Ok(VarietyFit {
        decomposition,
        interpolant: LagrangeCoefficients(full),
        residual_max,
        residual_rms,
    })
}

/// Implicit torus polynomial
/// `(x^2 + y^2 + z^2 + R^2 - r^2)^2 - 4 R^2 (x^2 + y^2)`.
pub fn torus_level_set(big_r: f64, small_r: f64) -> impl Fn(&[f64]) -> f64 {
    move |p: &[f64]| {
        let s = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        let t = s + big_r * big_r - small_r * small_r;
        t * t - 4.0 * big_r * big_r * (p[0] * p[0] + p[1] * p[1])
    }
}

/// Uniformly random angles in the standard torus parametrization
/// `((R + r cos v) cos u, (R + r cos v) sin u, r sin v)`.
pub fn sample_torus<R: Rng>(big_r: f64, small_r: f64, count: usize, rng: &mut R) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| {
            let u = rng.gen_range(0.0..std::f64::consts::TAU);
            let v = rng.gen_range(0.0..std::f64::consts::TAU);
            let ring = big_r + small_r * v.cos();
            vec![ring * u.cos(), ring * u.sin(), small_r * v.sin()]
        })
        .collect()
}

/// Reference grid for torus experiments: Leja-ordered Chebyshev nodes of the
/// second kind in `x` and `y`, scaled by `r` in `z` so the grid hugs the
/// sampled surface.
pub fn torus_reference(set: crate::multiindex::MultiIndexSet, small_r: f64) -> UnisolventNodes {
    assert_eq!(set.dim(), 3, "torus reference is three-dimensional");
    let degrees = set.max_degrees();
    let gp = GeneratingNodes::new(vec![
        leja_chebyshev_second(degrees[0]),
        leja_chebyshev_second(degrees[1]),
        leja_chebyshev_second(degrees[2])
            .into_iter()
            .map(|v| small_r * v)
            .collect(),
    ])
    .expect("chebyshev sequences are distinct and inside [-1,1]");
    UnisolventNodes::generate(set, gp).expect("grid covers its own set")
}
