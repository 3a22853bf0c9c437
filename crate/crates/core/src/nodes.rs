//! 1D node families, Leja ordering, and grid-generated unisolvent nodes.
//!
//! Node coordinates flow from per-dimension generating sequences into the
//! multivariate grid by index lookup, so a grid point's coordinates are
//! bit-identical to the generating values. Divided differences later divide
//! by differences of exactly these stored values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndexSet;

/// Chebyshev nodes of the first kind, `cos((2k-1) pi / (2(n+1)))` for
/// `k = 1..=n+1`, returned in descending order.
///
/// Computed through `sin` of the half-angle offset so that symmetric pairs
/// are exact negations and the midpoint (odd count) is exactly zero.
pub fn chebyshev_first(n: usize) -> Vec<f64> {
    let denom = 2.0 * (n as f64 + 1.0);
    (1..=n + 1)
        .map(|k| {
            let numer = n as i64 - 2 * k as i64 + 2;
            (std::f64::consts::PI * numer as f64 / denom).sin()
        })
        .collect()
}

/// Chebyshev nodes of the second kind (Chebyshev extrema),
/// `cos(k pi / n)` for `k = 0..=n`, containing exactly `1` and `-1`.
///
/// `n = 0` returns `{1}` by convention.
pub fn chebyshev_second(n: usize) -> Vec<f64> {
    if n == 0 {
        return vec![1.0];
    }
    let denom = 2.0 * n as f64;
    (0..=n)
        .map(|k| {
            let numer = n as i64 - 2 * k as i64;
            (std::f64::consts::PI * numer as f64 / denom).sin()
        })
        .collect()
}

/// Leja ordering of a set of distinct reals: the first node maximizes `|p|`,
/// and each following node maximizes the product of distances to all nodes
/// already placed. Ties pick the larger signed value, then the earlier
/// original position, so the result is deterministic.
///
/// Distance products are accumulated as sums of `ln |p - p_i|` to avoid
/// under/overflow for long sequences; an exact-zero factor (impossible for
/// distinct inputs) short-circuits to minus infinity.
pub fn leja_order(points: &[f64]) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateValues);
    }

    let n = points.len();
    let mut taken = vec![false; n];
    let mut logsum = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);

    let mut best = 0;
    for i in 1..n {
        if points[i].abs() > points[best].abs()
            || (points[i].abs() == points[best].abs() && points[i] > points[best])
        {
            best = i;
        }
    }
    taken[best] = true;
    order.push(best);

    for _ in 1..n {
        let last = *order.last().unwrap();
        for i in 0..n {
            if taken[i] {
                continue;
            }
            let d = (points[i] - points[last]).abs();
            logsum[i] += if d == 0.0 { f64::NEG_INFINITY } else { d.ln() };
        }
        let mut best: Option<usize> = None;
        for i in 0..n {
            if taken[i] {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    if logsum[i] > logsum[b] || (logsum[i] == logsum[b] && points[i] > points[b]) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let b = best.expect("candidates remain");
        taken[b] = true;
        order.push(b);
    }
    Ok(order.into_iter().map(|i| points[i]).collect())
}

/// Leja-ordered Chebyshev nodes of the second kind: the default generating
/// sequence. Starts with `1, -1` for every `n >= 1`.
pub fn leja_chebyshev_second(n: usize) -> Vec<f64> {
    leja_order(&chebyshev_second(n)).expect("chebyshev nodes are distinct")
}

/// Leja-ordered Chebyshev nodes of the first kind.
pub fn leja_chebyshev_first(n: usize) -> Vec<f64> {
    leja_order(&chebyshev_first(n)).expect("chebyshev nodes are distinct")
}

/// Per-dimension 1D generating sequences `P_1, ..., P_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratingNodes {
    per_dimension: Vec<Vec<f64>>,
    /// True when values were accepted outside the standard cube `[-1,1]`.
    unscaled: bool,
}

impl GeneratingNodes {
    /// Standard constructor: values must lie in `[-1, 1]` and be pairwise
    /// distinct within each dimension.
    pub fn new(per_dimension: Vec<Vec<f64>>) -> Result<Self> {
        Self::validate(&per_dimension, true)?;
        Ok(Self {
            per_dimension,
            unscaled: false,
        })
    }

    /// Accept values outside `[-1, 1]`; distinctness is still required.
    pub fn new_unscaled(per_dimension: Vec<Vec<f64>>) -> Result<Self> {
        Self::validate(&per_dimension, false)?;
        Ok(Self {
            per_dimension,
            unscaled: true,
        })
    }

    fn validate(per_dimension: &[Vec<f64>], check_range: bool) -> Result<()> {
        assert!(!per_dimension.is_empty(), "need at least one dimension");
        for (d, values) in per_dimension.iter().enumerate() {
            if values.is_empty() {
                return Err(Error::EmptyInput);
            }
            let mut sorted = values.clone();
            sorted.sort_by(f64::total_cmp);
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateNodes { dim: d });
            }
            if check_range && values.iter().any(|v| !v.is_finite() || v.abs() > 1.0) {
                return Err(Error::Format(format!(
                    "generating nodes in dimension {d} leave [-1,1]; use new_unscaled"
                )));
            }
        }
        Ok(())
    }

    /// `m` copies of the Leja-ordered Chebyshev nodes of the second kind of
    /// degree `n`: the crate-wide default.
    pub fn cheb2_leja(m: usize, n: usize) -> Self {
        let values = leja_chebyshev_second(n);
        Self {
            per_dimension: vec![values; m],
            unscaled: false,
        }
    }

    /// `m` copies of the Leja-ordered Chebyshev nodes of the first kind.
    pub fn cheb1_leja(m: usize, n: usize) -> Self {
        let values = leja_chebyshev_first(n);
        Self {
            per_dimension: vec![values; m],
            unscaled: false,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.per_dimension.len()
    }

    #[inline]
    pub fn len(&self, dim: usize) -> usize {
        self.per_dimension[dim].len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.per_dimension.iter().all(Vec::is_empty)
    }

    #[inline]
    pub fn value(&self, dim: usize, k: usize) -> f64 {
        self.per_dimension[dim][k]
    }

    #[inline]
    pub fn values(&self, dim: usize) -> &[f64] {
        &self.per_dimension[dim]
    }

    pub fn unscaled(&self) -> bool {
        self.unscaled
    }

    /// Verify the sequences cover the degrees required by `set`.
    pub fn covers(&self, set: &MultiIndexSet) -> Result<()> {
        if self.dim() != set.dim() {
            return Err(Error::DimensionMismatch {
                expected: set.dim(),
                got: self.dim(),
            });
        }
        for (d, &needed) in set.max_degrees().iter().enumerate() {
            if self.len(d) < needed + 1 {
                return Err(Error::InsufficientNodes {
                    dim: d,
                    needed: needed + 1,
                    got: self.len(d),
                });
            }
        }
        Ok(())
    }
}

/// Grid-sub-sampled unisolvent node family `P_A`, aligned index-for-index
/// with the lex order of its multi-index set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnisolventNodes {
    set: MultiIndexSet,
    gp: GeneratingNodes,
    points: Vec<Vec<f64>>,
}

impl UnisolventNodes {
    /// `p_alpha = (p_{alpha_1,1}, ..., p_{alpha_m,m})` for every `alpha` in
    /// lex order. Coordinates are copied bitwise from the generating values.
    pub fn generate(set: MultiIndexSet, gp: GeneratingNodes) -> Result<Self> {
        gp.covers(&set)?;
        let points = set
            .indices()
            .iter()
            .map(|alpha| {
                (0..set.dim())
                    .map(|d| gp.value(d, alpha.get(d)))
                    .collect::<Vec<f64>>()
            })
            .collect();
        Ok(Self { set, gp, points })
    }

    /// Default grid for `A`: Leja-ordered Chebyshev nodes of the second kind
    /// in every dimension.
    pub fn default_for(set: MultiIndexSet) -> Self {
        let degrees = set.max_degrees();
        let per_dimension = degrees.iter().map(|&n| leja_chebyshev_second(n)).collect();
        let gp = GeneratingNodes {
            per_dimension,
            unscaled: false,
        };
        Self::generate(set, gp).expect("default grid covers its own set")
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
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    #[inline]
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::DegreeNorm;

    const SQRT2_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn chebyshev_first_small_degrees() {
        assert_eq!(chebyshev_first(0), vec![0.0]);
        let c1 = chebyshev_first(1);
        assert!(close(c1[0], SQRT2_HALF, 1e-15));
        assert!(close(c1[1], -SQRT2_HALF, 1e-15));
        assert_eq!(c1[0], -c1[1]); // exact symmetry
        let c2 = chebyshev_first(2);
        assert!(close(c2[0], 0.75f64.sqrt(), 1e-15));
        assert_eq!(c2[1], 0.0);
        assert_eq!(c2[2], -c2[0]);
    }

    #[test]
    fn chebyshev_second_small_degrees() {
        assert_eq!(chebyshev_second(0), vec![1.0]);
        assert_eq!(chebyshev_second(1), vec![1.0, -1.0]);
        assert_eq!(chebyshev_second(2), vec![1.0, 0.0, -1.0]);
        let c4 = chebyshev_second(4);
        assert_eq!(c4[0], 1.0);
        assert!(close(c4[1], SQRT2_HALF, 1e-15));
        assert_eq!(c4[2], 0.0);
        assert!(close(c4[3], -SQRT2_HALF, 1e-15));
        assert_eq!(c4[4], -1.0);
    }

    #[test]
    fn leja_order_known_examples() {
        assert_eq!(leja_order(&[1.0, 0.0, -1.0]).unwrap(), vec![1.0, -1.0, 0.0]);
        assert_eq!(leja_order(&[-2.0, 1.0]).unwrap(), vec![-2.0, 1.0]);
        let lc = leja_order(&chebyshev_second(4)).unwrap();
        assert_eq!(&lc[..2], &[1.0, -1.0]);
    }

    #[test]
    fn leja_starts_with_both_endpoints_for_cheb2() {
        for n in 1..=40 {
            let lc = leja_chebyshev_second(n);
            assert_eq!(lc[0], 1.0, "n={n}");
            assert_eq!(lc[1], -1.0, "n={n}");
        }
    }

    #[test]
    fn leja_rejects_duplicates_and_empty() {
        assert!(matches!(
            leja_order(&[0.5, 0.5]),
            Err(Error::DuplicateValues)
        ));
        assert!(matches!(leja_order(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn generate_1d_reduces_to_identity() {
        let n = 5;
        let set = MultiIndexSet::complete(1, n, DegreeNorm::L1).unwrap();
        let values = leja_chebyshev_second(n);
        let gp = GeneratingNodes::new(vec![values.clone()]).unwrap();
        let nodes = UnisolventNodes::generate(set, gp).unwrap();
        for (i, v) in values.iter().enumerate() {
            assert_eq!(nodes.point(i), &[*v]);
        }
    }

    #[test]
    fn generate_2d_linf_example() {
        let set = MultiIndexSet::complete(2, 1, DegreeNorm::LInf).unwrap();
        let gp = GeneratingNodes::new(vec![vec![1.0, -1.0], vec![1.0, -1.0]]).unwrap();
        let nodes = UnisolventNodes::generate(set, gp).unwrap();
        let expect: [[f64; 2]; 4] = [[1.0, 1.0], [-1.0, 1.0], [1.0, -1.0], [-1.0, -1.0]];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(nodes.point(i), e);
        }
    }

    #[test]
    fn generate_rejects_short_gp() {
        let set = MultiIndexSet::complete(2, 2, DegreeNorm::LInf).unwrap();
        let gp = GeneratingNodes::new(vec![vec![1.0, -1.0], vec![1.0, -1.0, 0.0]]).unwrap();
        assert!(matches!(
            UnisolventNodes::generate(set, gp),
            Err(Error::InsufficientNodes { dim: 0, .. })
        ));
    }

    #[test]
    fn grid_coordinates_are_bit_identical_to_gp() {
        let set = MultiIndexSet::complete(3, 4, DegreeNorm::L2).unwrap();
        let nodes = UnisolventNodes::default_for(set);
        for (i, alpha) in nodes.set().indices().iter().enumerate() {
            for d in 0..3 {
                let from_gp = nodes.gp().value(d, alpha.get(d));
                assert_eq!(nodes.point(i)[d].to_bits(), from_gp.to_bits());
            }
        }
    }

    #[test]
    fn unscaled_flag_and_range_check() {
        let out_of_range = vec![vec![0.0, 2.0]];
        assert!(GeneratingNodes::new(out_of_range.clone()).is_err());
        let gp = GeneratingNodes::new_unscaled(out_of_range).unwrap();
        assert!(gp.unscaled());
    }
}
