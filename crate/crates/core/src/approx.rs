//! Error diagnostics and the convergence benchmark harness.
//!
//! Covers the sampled Lebesgue function (a lower bound of the operator
//! norm), the closed-form 1D Lebesgue growth for Chebyshev nodes, the
//! derivative-based a-priori error bound summed over the outer boundary of
//! `A`, seeded convergence runs against reference functions, exponential
//! rate fitting `y = c * rho^{-n}`, and the perturbed-grid study.

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::{DegreeNorm, MultiIndex, MultiIndexSet};
use crate::newton::{divided_differences, FunctionValues};
use crate::nodes::{GeneratingNodes, UnisolventNodes};
use crate::scattered::{build_scattered, perturb_grid};
use crate::transform::LagrangeEvaluator;

/// Euler-Mascheroni constant as used in the 1D Lebesgue growth formula.
pub const EULER_MASCHERONI: f64 = 0.5772156649;

/// Sampled estimate of the Lebesgue function `sup_x sum_alpha |L_alpha(x)|`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LebesgueEstimate {
    /// Max over the samples; a lower bound of the true sup.
    pub value: f64,
    pub sample_count: usize,
    /// How the samples were laid out (informational).
    pub scheme: String,
}

/// One benchmark measurement at a single degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub m: usize,
    pub n: usize,
    pub p: DegreeNorm,
    pub cardinality: usize,
    pub max_error: f64,
    pub seconds: f64,
    pub seed: u64,
}

/// Fitted exponential decay `error ≈ c * rho^{-n}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RateFit {
    pub rho: f64,
    pub c: f64,
    pub n_lo: usize,
    pub n_hi: usize,
    pub r_squared: f64,
    /// Set when the fitted decay does not actually decrease.
    pub non_converging: bool,
    /// Records floored at the 1e-16 error floor and left out of the fit.
    pub excluded: usize,
}

/// One row of the perturbation study: measured and estimated errors for a
/// perturbation amplitude at one degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerturbationRecord {
    pub amplitude: f64,
    pub n: usize,
    pub cardinality: usize,
    /// Measured max error on the seeded test points (AP-nu).
    pub ap: f64,
    /// Estimated bound `s_n * AP-0` (EST-nu).
    pub est: f64,
    pub s_inf: f64,
    /// Singular perturbed grids that had to be re-sampled.
    pub retries: usize,
}

/// Full output of [`run_perturbation_study`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerturbationStudy {
    pub m: usize,
    pub p: DegreeNorm,
    pub seed: u64,
    pub records: Vec<PerturbationRecord>,
}

/// Which 1D family generates the grids in benchmark runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeFamily {
    /// Leja-ordered Chebyshev nodes of the second kind (default).
    ChebyshevSecondLeja,
    /// Leja-ordered Chebyshev nodes of the first kind.
    ChebyshevFirstLeja,
}

impl NodeFamily {
    pub fn generating(self, m: usize, n: usize) -> GeneratingNodes {
        match self {
            Self::ChebyshevSecondLeja => GeneratingNodes::cheb2_leja(m, n),
            Self::ChebyshevFirstLeja => GeneratingNodes::cheb1_leja(m, n),
        }
    }
}

/// The Runge-type reference function `1 / (1 + factor * ||x||^2)`.
pub fn runge(factor: f64) -> impl Fn(&[f64]) -> f64 + Sync + Send + Copy {
    move |x: &[f64]| {
        let sq: f64 = x.iter().map(|v| v * v).sum();
        1.0 / (1.0 + factor * sq)
    }
}

/// Default sample layout for Lebesgue estimation: the interpolation nodes, a
/// quasi-uniform tensor grid (dense in 1D, `33^m` capped in higher
/// dimensions), and for `m >= 3` an extra `10^4` seeded random points.
pub fn default_lebesgue_samples(nodes: &UnisolventNodes, seed: u64) -> Vec<Vec<f64>> {
    let m = nodes.dim();
    let mut samples: Vec<Vec<f64>> = nodes.points().to_vec();
    if m == 1 {
        let count = 100_001usize;
        for q in 0..count {
            let t = -1.0 + 2.0 * q as f64 / (count - 1) as f64;
            samples.push(vec![t]);
        }
        return samples;
    }
    // Per-dimension resolution capped so the grid stays near 50k points.
    let mut per_dim = 33usize;
    while (per_dim as f64).powi(m as i32) > 50_000.0 && per_dim > 2 {
        per_dim -= 1;
    }
    let mut idx = vec![0usize; m];
    loop {
        samples.push(
            idx.iter()
                .map(|&i| -1.0 + 2.0 * i as f64 / (per_dim - 1) as f64)
                .collect(),
        );
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] < per_dim {
                break;
            }
            idx[d] = 0;
            d += 1;
            if d == m {
                if m >= 3 {
                    let mut rng = ChaCha20Rng::seed_from_u64(seed);
                    for _ in 0..10_000 {
                        samples.push((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
                    }
                }
                return samples;
            }
        }
    }
}

/// Sampled Lebesgue function on the given point set. The sup is attained at
/// a node only for trivial cases, so this is a lower bound, flagged as
/// sampled via the scheme tag.
pub fn lebesgue_estimate(
    nodes: &UnisolventNodes,
    samples: &[Vec<f64>],
    scheme: &str,
) -> Result<LebesgueEstimate> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let evaluator = LagrangeEvaluator::new(nodes.clone())?;
    let value = samples
        .par_iter()
        .map(|x| evaluator.values_at(x).iter().map(|v| v.abs()).sum::<f64>())
        .reduce(|| 0.0, f64::max);
    Ok(LebesgueEstimate {
        value,
        sample_count: samples.len(),
        scheme: scheme.to_string(),
    })
}

/// Closed-form growth of the 1D Chebyshev Lebesgue constant:
/// `(2/pi) (log n + gamma + log(8/pi))`.
pub fn lebesgue_1d_formula(n: usize) -> f64 {
    assert!(n >= 1, "formula needs n >= 1");
    std::f64::consts::FRAC_2_PI
        * ((n as f64).ln() + EULER_MASCHERONI + (8.0 / std::f64::consts::PI).ln())
}

/// A-priori interpolation error bound from derivative bounds on the outer
/// boundary: `sum_beta M_beta / beta! * sup_Omega |N_beta|`.
///
/// The per-dimension sups of the node-difference products are taken over a
/// dense 4096-point grid (endpoints included) and inflated by a relative
/// `1e-3` safety margin to stay an upper bound between grid points.
pub fn error_bound(
    set: &MultiIndexSet,
    gp: &GeneratingNodes,
    derivative_bounds: &HashMap<MultiIndex, f64>,
) -> Result<f64> {
    const GRID: usize = 4096;
    const INFLATION: f64 = 1.0 + 1e-3;
    gp.covers(set)?;
    let boundaries = set.boundaries();
    let m = set.dim();

    // Levels needed per dimension.
    let mut levels = vec![0usize; m];
    for beta in &boundaries.outer {
        for d in 0..m {
            levels[d] = levels[d].max(beta.get(d));
        }
    }
    // sup over t in [-1,1] of prod_{j<k} |t - p_{j,d}|, for every d and k.
    let mut sups: Vec<Vec<f64>> = Vec::with_capacity(m);
    for d in 0..m {
        let mut sup_dk = vec![0.0f64; levels[d] + 1];
        sup_dk[0] = 1.0;
        for q in 0..GRID {
            let t = -1.0 + 2.0 * q as f64 / (GRID - 1) as f64;
            let mut prod = 1.0;
            for k in 1..=levels[d] {
                prod *= (t - gp.value(d, k - 1)).abs();
                sup_dk[k] = sup_dk[k].max(prod);
            }
        }
        sups.push(sup_dk);
    }

    let mut bound = 0.0;
    for beta in &boundaries.outer {
        let m_beta = *derivative_bounds
            .get(beta)
            .ok_or_else(|| Error::MissingDerivativeBound(beta.clone()))?;
        let mut sup_n = 1.0;
        for d in 0..m {
            sup_n *= sups[d][beta.get(d)] * INFLATION;
        }
        bound += m_beta / beta.factorial() * sup_n;
    }
    Ok(bound)
}

fn seed_for_degree(seed: u64, n: usize) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Uniform random points in the cube, seeded.
pub fn random_points(m: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

/// Convergence run: for every degree, build the grid, interpolate `f`, and
/// measure the max error on freshly seeded random test points. Degrees run
/// in parallel; records come back sorted by degree and are bit-reproducible
/// for a fixed seed.
pub fn run_convergence<F>(
    f: F,
    m: usize,
    p: DegreeNorm,
    degrees: &[usize],
    family: NodeFamily,
    test_points: usize,
    seed: u64,
) -> Result<Vec<BenchmarkRecord>>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut records: Vec<BenchmarkRecord> = degrees
        .par_iter()
        .map(|&n| -> Result<BenchmarkRecord> {
            let start = Instant::now();
            let set = MultiIndexSet::complete(m, n, p)?;
            let cardinality = set.len();
            let gp = family.generating(m, n);
            let nodes = UnisolventNodes::generate(set, gp)?;
            let values = FunctionValues::sample(&nodes, &f);
            let q = divided_differences(&nodes, values.as_slice())?;
            let seconds = start.elapsed().as_secs_f64();
            let points = random_points(m, test_points, seed_for_degree(seed, n));
            let mut max_error = 0.0f64;
            for x in &points {
                max_error = max_error.max((f(x) - q.eval(x)?).abs());
            }
            Ok(BenchmarkRecord {
                m,
                n,
                p,
                cardinality,
                max_error,
                seconds,
                seed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| r.n);
    Ok(records)
}

/// Least-squares fit of `log(error) = log(c) - n log(rho)` over the records
/// with `n_lo <= n <= n_hi`. Records at or below the `1e-16` floor are
/// excluded (they sit in the roundoff plateau).
pub fn fit_rate(records: &[BenchmarkRecord], n_lo: usize, n_hi: usize) -> Result<RateFit> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut excluded = 0usize;
    for r in records {
        if r.n < n_lo || r.n > n_hi {
            continue;
        }
        if r.max_error <= 1e-16 {
            excluded += 1;
            continue;
        }
        xs.push(r.n as f64);
        ys.push(r.max_error.ln());
    }
    if xs.len() < 4 {
        return Err(Error::RateFitUnderdetermined { usable: xs.len() });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let fit = intercept + slope * x;
            (y - fit) * (y - fit)
        })
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    let rho = (-slope).exp();
    Ok(RateFit {
        rho,
        c: intercept.exp(),
        n_lo,
        n_hi,
        r_squared,
        non_converging: rho <= 1.0 + 1e-9,
        excluded,
    })
}

/// Perturbed-grid study: interpolates `1/(1 + ||x||^2)` on
/// boundary-distance-perturbed Chebyshev grids and compares the measured
/// errors (AP) against the estimated bounds (EST) built from `s_n` times the
/// unperturbed baseline. The Lebesgue factor in `s_n` uses the 1D growth
/// formula raised to the power `m`. Singular perturbed grids are re-sampled
/// up to five times.
pub fn run_perturbation_study(
    m: usize,
    p: DegreeNorm,
    degrees: &[usize],
    amplitudes: &[f64],
    seed: u64,
) -> Result<PerturbationStudy> {
    let f = runge(1.0);
    let test_count = 200usize;
    let mut records: Vec<PerturbationRecord> = degrees
        .par_iter()
        .map(|&n| -> Result<Vec<PerturbationRecord>> {
            let set = MultiIndexSet::complete(m, n, p)?;
            let cardinality = set.len();
            let reference = UnisolventNodes::generate(set, GeneratingNodes::cheb2_leja(m, n))?;
            let test = random_points(m, test_count, seed_for_degree(seed, n));

            // Unperturbed baseline AP-0.
            let base_values = FunctionValues::sample(&reference, f);
            let base_q = divided_differences(&reference, base_values.as_slice())?;
            let mut ap0 = 0.0f64;
            for x in &test {
                ap0 = ap0.max((f(x) - base_q.eval(x)?).abs());
            }
            let lambda = lebesgue_1d_formula(n.max(1)).powi(m as i32);

            let mut rows = Vec::with_capacity(amplitudes.len());
            for (ai, &amplitude) in amplitudes.iter().enumerate() {
                let mut rng = ChaCha20Rng::seed_from_u64(
                    seed_for_degree(seed, n).wrapping_add(ai as u64 + 1),
                );
                let mut retries = 0usize;
                let sys = loop {
                    let perturbed = perturb_grid(&reference, amplitude, &mut rng);
                    match build_scattered(&reference, perturbed) {
                        Ok(sys) => break sys,
                        Err(Error::NotUnisolvent { .. }) if retries < 5 => {
                            retries += 1;
                        }
                        Err(e) => return Err(e),
                    }
                };
                let values: Vec<f64> = sys.given_nodes().iter().map(|q| f(q)).collect();
                let c_lag = sys.interpolate(&values)?;
                let q = divided_differences(&reference, c_lag.as_slice())?;
                let mut ap = 0.0f64;
                for x in &test {
                    ap = ap.max((f(x) - q.eval(x)?).abs());
                }
                let s_inf = sys.s_inf();
                let est = sys.error_factor(lambda) * ap0;
                rows.push(PerturbationRecord {
                    amplitude,
                    n,
                    cardinality,
                    ap,
                    est,
                    s_inf,
                    retries,
                });
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    records.sort_by(|a, b| a.amplitude.total_cmp(&b.amplitude).then(a.n.cmp(&b.n)));
    Ok(PerturbationStudy {
        m,
        p,
        seed,
        records,
    })
}
