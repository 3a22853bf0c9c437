//! Multivariate Newton basis: divided differences and evaluation.
//!
//! A complete lex-ordered index set splits into contiguous layers by its
//! last coordinate, and each layer is again complete in one dimension less.
//! Divided differences run classic 1D sweeps along the last dimension over
//! all slices sharing a prefix (in place, ragged layers included), then
//! recurse into the layers. Evaluation runs the same layer structure as a
//! nested Horner scheme, giving `O(|A|^2)` interpolation and `O(|A|)`
//! evaluation with `O(|A|)` working memory.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::{MultiIndex, MultiIndexSet};
use crate::nodes::{GeneratingNodes, UnisolventNodes};

/// Function values sampled on a node family, aligned with its lex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionValues(pub Vec<f64>);

impl FunctionValues {
    /// Evaluate `f` at every node of the family, in lex order.
    pub fn sample<F: Fn(&[f64]) -> f64>(nodes: &UnisolventNodes, f: F) -> Self {
        Self(nodes.points().iter().map(|p| f(p)).collect())
    }

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

impl AsRef<[f64]> for FunctionValues {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for FunctionValues {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// Polynomial in the multivariate Newton basis of a fixed `(A, GP)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NewtonPolynomial {
    set: MultiIndexSet,
    gp: GeneratingNodes,
    coefficients: Vec<f64>,
}

impl NewtonPolynomial {
    pub fn new(set: MultiIndexSet, gp: GeneratingNodes, coefficients: Vec<f64>) -> Result<Self> {
        gp.covers(&set)?;
        if coefficients.len() != set.len() {
            return Err(Error::SizeMismatch {
                what: "newton coefficients",
                expected: set.len(),
                got: coefficients.len(),
            });
        }
        Ok(Self {
            set,
            gp,
            coefficients,
        })
    }

    #[inline]
    pub fn set(&self) -> &MultiIndexSet {
        &self.set
    }

    #[inline]
    pub fn gp(&self) -> &GeneratingNodes {
        &self.gp
    }

    #[inline]
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Evaluate at one point with the nested Horner factorization.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.set.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.set.dim(),
                got: x.len(),
            });
        }
        if self.set.is_empty() {
            return Ok(0.0);
        }
        Ok(eval_range(
            self.set.indices(),
            &self.coefficients,
            &self.gp,
            self.set.dim() - 1,
            0,
            self.set.len(),
            x,
        ))
    }

    /// Elementwise [`NewtonPolynomial::eval`]; points are independent, so the
    /// batch runs in parallel. Results are identical to per-point calls.
    pub fn eval_batch(&self, xs: &[Vec<f64>]) -> Result<Vec<f64>> {
        for x in xs {
            if x.len() != self.set.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.set.dim(),
                    got: x.len(),
                });
            }
        }
        Ok(xs.par_iter().map(|x| self.eval(x).unwrap()).collect())
    }
}

/// Single multivariate Newton basis polynomial
/// `N_alpha(x) = prod_i prod_{j < alpha_i} (x_i - p_{j,i})`.
pub fn newton_basis_eval(alpha: &MultiIndex, gp: &GeneratingNodes, x: &[f64]) -> Result<f64> {
    if x.len() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            got: x.len(),
        });
    }
    if gp.dim() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            got: gp.dim(),
        });
    }
    let mut prod = 1.0;
    for d in 0..alpha.dim() {
        let k = alpha.get(d);
        if gp.len(d) < k {
            return Err(Error::InsufficientNodes {
                dim: d,
                needed: k,
                got: gp.len(d),
            });
        }
        for j in 0..k {
            prod *= x[d] - gp.value(d, j);
        }
    }
    Ok(prod)
}

/// Newton coefficients of the unique interpolant of `values` on the node
/// family, by the multivariate divided-difference scheme.
pub fn divided_differences(nodes: &UnisolventNodes, values: &[f64]) -> Result<NewtonPolynomial> {
    divided_differences_with_op_count(nodes, values).map(|(p, _)| p)
}

/// As [`divided_differences`], additionally reporting the number of
/// subtract-divide updates performed (for complexity diagnostics).
pub fn divided_differences_with_op_count(
    nodes: &UnisolventNodes,
    values: &[f64],
) -> Result<(NewtonPolynomial, u64)> {
    let set = nodes.set();
    if values.len() != set.len() {
        return Err(Error::SizeMismatch {
            what: "function values",
            expected: set.len(),
            got: values.len(),
        });
    }
    let mut coeffs = values.to_vec();
    let mut ops = 0u64;
    if set.len() > 1 {
        dds_range(
            set.indices(),
            &mut coeffs,
            nodes.gp(),
            set.dim() - 1,
            0,
            set.len(),
            &mut ops,
        );
    }
    let poly = NewtonPolynomial::new(set.clone(), nodes.gp().clone(), coeffs)?;
    Ok((poly, ops))
}

/// In-place divided differences over a lex prefix of a complete set.
/// Prefixes of complete sets are complete, so the transform builder can run
/// the scheme on leading sub-blocks without materializing sub-sets.
pub(crate) fn dds_prefix(indices: &[MultiIndex], gp: &GeneratingNodes, values: &mut [f64]) {
    debug_assert_eq!(indices.len(), values.len());
    if indices.len() <= 1 {
        return;
    }
    let mut ops = 0u64;
    dds_range(
        indices,
        values,
        gp,
        indices[0].dim() - 1,
        0,
        indices.len(),
        &mut ops,
    );
}

/// Contiguous layer ranges of `indices[lo..hi]` grouped by coordinate `d`.
/// Completeness guarantees layer values are consecutive from zero.
fn layer_ranges(indices: &[MultiIndex], d: usize, lo: usize, hi: usize) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut start = lo;
    for q in lo + 1..hi {
        if indices[q].get(d) != indices[start].get(d) {
            blocks.push((start, q));
            start = q;
        }
    }
    blocks.push((start, hi));
    blocks
}

#[inline]
fn prefix_eq(a: &MultiIndex, b: &MultiIndex, d: usize) -> bool {
    a.entries()[..d] == b.entries()[..d]
}

/// In-place divided differences over `indices[lo..hi]`, whose coordinates
/// above `d` are constant. Sweeps 1D differences along dimension `d` across
/// all slices sharing the same prefix, then recurses into each layer.
fn dds_range(
    indices: &[MultiIndex],
    values: &mut [f64],
    gp: &GeneratingNodes,
    d: usize,
    lo: usize,
    hi: usize,
    ops: &mut u64,
) {
    if hi - lo <= 1 {
        return;
    }
    if d == 0 {
        // Pure 1D run: coordinate 0 takes the consecutive values 0..len-1.
        let len = hi - lo;
        for j in 1..len {
            for k in (j..len).rev() {
                let denom = gp.value(0, k) - gp.value(0, k - j);
                values[lo + k] = (values[lo + k] - values[lo + k - 1]) / denom;
                *ops += 1;
            }
        }
        return;
    }

    let blocks = layer_ranges(indices, d, lo, hi);
    let top = blocks.len() - 1;

    // Position of the prefix-matching entry one layer down, per entry of
    // each layer k >= 1. Layers are nested, so a two-pointer walk suffices.
    let mut below: Vec<Vec<usize>> = Vec::with_capacity(top);
    for k in 1..=top {
        let (blo, bhi) = blocks[k];
        let (plo, _phi) = blocks[k - 1];
        let mut map = Vec::with_capacity(bhi - blo);
        let mut r = plo;
        for q in blo..bhi {
            while !prefix_eq(&indices[r], &indices[q], d) {
                r += 1;
            }
            map.push(r);
        }
        below.push(map);
    }

    for j in 1..=top {
        for k in (j..=top).rev() {
            let (blo, bhi) = blocks[k];
            let denom = gp.value(d, k) - gp.value(d, k - j);
            let map = &below[k - 1];
            for (q, &prev) in (blo..bhi).zip(map) {
                values[q] = (values[q] - values[prev]) / denom;
                *ops += 1;
            }
        }
    }
    drop(below);

    for &(blo, bhi) in &blocks {
        dds_range(indices, values, gp, d - 1, blo, bhi, ops);
    }
}

/// Nested Horner evaluation over `indices[lo..hi]` at dimension `d`.
fn eval_range(
    indices: &[MultiIndex],
    coeffs: &[f64],
    gp: &GeneratingNodes,
    d: usize,
    lo: usize,
    hi: usize,
    x: &[f64],
) -> f64 {
    if d == 0 {
        let len = hi - lo;
        let mut acc = coeffs[hi - 1];
        for k in (0..len - 1).rev() {
            acc = coeffs[lo + k] + (x[0] - gp.value(0, k)) * acc;
        }
        return acc;
    }
    let blocks = layer_ranges(indices, d, lo, hi);
    let top = blocks.len() - 1;
    let (blo, bhi) = blocks[top];
    let mut acc = eval_range(indices, coeffs, gp, d - 1, blo, bhi, x);
    for k in (0..top).rev() {
        let (blo, bhi) = blocks[k];
        let inner = eval_range(indices, coeffs, gp, d - 1, blo, bhi, x);
        acc = inner + (x[d] - gp.value(d, k)) * acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::DegreeNorm;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn nodes_1d(values: &[f64]) -> UnisolventNodes {
        let set = MultiIndexSet::complete(1, values.len() - 1, DegreeNorm::L1).unwrap();
        let gp = GeneratingNodes::new(vec![values.to_vec()]).unwrap();
        UnisolventNodes::generate(set, gp).unwrap()
    }

    /// Independent oracle: the full classic divided-difference table; the
    /// Newton coefficients are its first row.
    fn dd_table_1d(xs: &[f64], fs: &[f64]) -> Vec<f64> {
        let n = xs.len();
        let mut table = vec![vec![0.0; n]; n];
        for (i, &f) in fs.iter().enumerate() {
            table[i][0] = f;
        }
        for j in 1..n {
            for i in 0..n - j {
                table[i][j] = (table[i + 1][j - 1] - table[i][j - 1]) / (xs[i + j] - xs[i]);
            }
        }
        (0..n).map(|j| table[0][j]).collect()
    }

    #[test]
    fn basis_eval_examples() {
        let gp2 = GeneratingNodes::new(vec![vec![1.0, -1.0], vec![1.0, -1.0]]).unwrap();
        let zero = MultiIndex::new(vec![0, 0]);
        assert_eq!(newton_basis_eval(&zero, &gp2, &[0.3, -0.7]).unwrap(), 1.0);

        let gp1 = GeneratingNodes::new(vec![vec![1.0, -1.0, 0.0]]).unwrap();
        let a2 = MultiIndex::new(vec![2]);
        assert_eq!(newton_basis_eval(&a2, &gp1, &[2.0]).unwrap(), 3.0);

        let a11 = MultiIndex::new(vec![1, 1]);
        assert_eq!(newton_basis_eval(&a11, &gp2, &[0.0, 0.0]).unwrap(), 1.0);

        assert!(matches!(
            newton_basis_eval(&a11, &gp2, &[0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn divided_differences_square_1d() {
        let nodes = nodes_1d(&[1.0, -1.0, 0.0]);
        let f = FunctionValues::sample(&nodes, |p| p[0] * p[0]);
        let q = divided_differences(&nodes, f.as_slice()).unwrap();
        assert_eq!(q.coefficients(), &[1.0, 0.0, 1.0]);
        assert_eq!(q.eval(&[2.0]).unwrap(), 4.0);
    }

    #[test]
    fn divided_differences_constant() {
        let set = MultiIndexSet::complete(2, 3, DegreeNorm::L2).unwrap();
        let nodes = UnisolventNodes::default_for(set);
        let f = FunctionValues::sample(&nodes, |_| 7.0);
        let q = divided_differences(&nodes, f.as_slice()).unwrap();
        assert_eq!(q.coefficients()[0], 7.0);
        assert!(q.coefficients()[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn divided_differences_bilinear_2d() {
        let set = MultiIndexSet::complete(2, 1, DegreeNorm::LInf).unwrap();
        let gp = GeneratingNodes::new(vec![vec![1.0, -1.0], vec![1.0, -1.0]]).unwrap();
        let nodes = UnisolventNodes::generate(set, gp).unwrap();
        let f = FunctionValues::sample(&nodes, |p| p[0] * p[1]);
        let q = divided_differences(&nodes, f.as_slice()).unwrap();
        assert_eq!(q.coefficients(), &[1.0, 1.0, 1.0, 1.0]);
        // 1 + (x-1) + (y-1) + (x-1)(y-1) at (0,0) = 1 - 1 - 1 + 1 = 0 = f(0,0).
        assert_eq!(q.eval(&[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn interpolation_conditions_hold_on_nodes() {
        // Small 3D set and a ~1000-coefficient 2D set.
        for (m, n) in [(3usize, 4usize), (2, 34)] {
            let set = MultiIndexSet::complete(m, n, DegreeNorm::L2).unwrap();
            assert!(set.len() <= 1000);
            let nodes = UnisolventNodes::default_for(set);
            let f =
                FunctionValues::sample(&nodes, |p| (p[0] + 0.5 * p[1]).sin() + p.last().unwrap());
            let q = divided_differences(&nodes, f.as_slice()).unwrap();
            let back = q.eval_batch(nodes.points()).unwrap();
            for (a, b) in back.iter().zip(f.as_slice()) {
                assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn matches_classic_1d_table_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..20 {
            let n = rng.gen_range(1..=30);
            // Distinct random nodes in [-1,1] via a jittered interior grid.
            let xs: Vec<f64> = (0..=n)
                .map(|k| -0.95 + 1.9 * k as f64 / n as f64 + rng.gen_range(-0.04..0.04) / n as f64)
                .collect();
            let fs: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let nodes = nodes_1d(&xs);
            let mine = divided_differences(&nodes, &fs).unwrap();
            let oracle = dd_table_1d(&xs, &fs);
            let scale = oracle.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for (a, b) in mine.coefficients().iter().zip(&oracle) {
                assert!((a - b).abs() <= 1e-13 * scale, "trial {trial}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn newton_basis_reproduced_exactly() {
        // Interpolating the values of N_gamma returns the gamma-th unit vector.
        let set = MultiIndexSet::complete(2, 3, DegreeNorm::L1).unwrap();
        let nodes = UnisolventNodes::default_for(set.clone());
        for gamma in 0..set.len() {
            let alpha = set.index(gamma).clone();
            let f: Vec<f64> = nodes
                .points()
                .iter()
                .map(|p| newton_basis_eval(&alpha, nodes.gp(), p).unwrap())
                .collect();
            let q = divided_differences(&nodes, &f).unwrap();
            for (j, &c) in q.coefficients().iter().enumerate() {
                let expect = if j == gamma { 1.0 } else { 0.0 };
                assert!((c - expect).abs() <= 1e-12, "gamma={gamma} j={j} c={c}");
            }
        }
    }

    #[test]
    fn eval_batch_matches_pointwise_and_handles_empty() {
        let set = MultiIndexSet::complete(2, 5, DegreeNorm::L2).unwrap();
        let nodes = UnisolventNodes::default_for(set);
        let f = FunctionValues::sample(&nodes, |p| 1.0 / (1.0 + p[0] * p[0] + p[1] * p[1]));
        let q = divided_differences(&nodes, f.as_slice()).unwrap();
        assert!(q.eval_batch(&[]).unwrap().is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let xs: Vec<Vec<f64>> = (0..50)
            .map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect();
        let batch = q.eval_batch(&xs).unwrap();
        for (x, v) in xs.iter().zip(&batch) {
            assert_eq!(*v, q.eval(x).unwrap());
        }
    }

    #[test]
    fn eval_agrees_with_compensated_direct_summation() {
        let set = MultiIndexSet::complete(3, 7, DegreeNorm::L2).unwrap();
        assert!(set.len() <= 1000);
        let nodes = UnisolventNodes::default_for(set.clone());
        let f = FunctionValues::sample(&nodes, |p| (3.0 * p[0]).cos() * (p[1] - p[2]).exp());
        let q = divided_differences(&nodes, f.as_slice()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            // Kahan-compensated direct sum of c_alpha * N_alpha(x).
            let mut sum = 0.0f64;
            let mut comp = 0.0f64;
            for (alpha, &c) in set.indices().iter().zip(q.coefficients()) {
                let term = c * newton_basis_eval(alpha, nodes.gp(), &x).unwrap();
                let y = term - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            let fast = q.eval(&x).unwrap();
            assert!(
                (fast - sum).abs() <= 1e-12 * (1.0 + sum.abs()),
                "{fast} vs {sum}"
            );
        }
    }

    #[test]
    fn op_count_scales_quadratically() {
        // Empirical multiply-add counts over growing |A| must fit an
        // exponent of at most 2.15 in log-log coordinates.
        let mut sizes = Vec::new();
        let mut counts = Vec::new();
        for n in [9usize, 15, 22, 32, 45, 61] {
            let set = MultiIndexSet::complete(2, n, DegreeNorm::L1).unwrap();
            let nodes = UnisolventNodes::default_for(set.clone());
            let f = FunctionValues::sample(&nodes, |p| (p[0] + p[1]).exp());
            let (_, ops) = divided_differences_with_op_count(&nodes, f.as_slice()).unwrap();
            sizes.push(set.len() as f64);
            counts.push(ops as f64);
        }
        assert!(*sizes.first().unwrap() >= 50.0 && *sizes.last().unwrap() >= 1900.0);
        // Least-squares slope of log(ops) against log(|A|).
        let lx: Vec<f64> = sizes.iter().map(|v| v.ln()).collect();
        let ly: Vec<f64> = counts.iter().map(|v| v.ln()).collect();
        let n = lx.len() as f64;
        let mx = lx.iter().sum::<f64>() / n;
        let my = ly.iter().sum::<f64>() / n;
        let slope: f64 = lx
            .iter()
            .zip(&ly)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum::<f64>()
            / lx.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
        assert!(slope <= 2.15, "fitted exponent {slope}");
    }

    #[test]
    fn size_mismatch_is_reported() {
        let set = MultiIndexSet::complete(2, 2, DegreeNorm::L1).unwrap();
        let nodes = UnisolventNodes::default_for(set);
        assert!(matches!(
            divided_differences(&nodes, &[1.0, 2.0]),
            Err(Error::SizeMismatch { .. })
        ));
    }
}
