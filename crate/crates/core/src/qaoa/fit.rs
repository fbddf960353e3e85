//! Power-law extrapolation of depth-p QAOA performance.
//!
//! On a 4-regular tree the depth-p QAOA reaches swap ratio r_p = 1 − 2 v_p/√3,
//! where v_p is the tree value for D = 3. The values v_p are fitted to
//! v_p ≈ d − a / (p^b + c), and the limit d gives the logarithmic-depth
//! ratio 1 − 2d/√3.

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Swap ratios of depth-p QAOA on the infinite tree, p = 1…7.
pub const TREE_RATIOS: [(u32, f64); 7] = [
    (1, 0.675),
    (2, 0.568),
    (3, 0.503),
    (4, 0.462),
    (5, 0.432),
    (6, 0.410),
    (7, 0.393),
];

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// r = 1 − 2v/√3.
pub fn ratio_from_tree_value(v: f64) -> f64 {
    1.0 - 2.0 * v / SQRT3
}

/// v = √3 (1 − r) / 2.
pub fn tree_value_from_ratio(r: f64) -> f64 {
    SQRT3 * (1.0 - r) / 2.0
}

/// The embedded (p, r_p) rows with their derived tree values.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeValueTable {
    pub rows: Vec<(u32, f64)>,
}

impl Default for TreeValueTable {
    fn default() -> Self {
        TreeValueTable {
            rows: TREE_RATIOS.to_vec(),
        }
    }
}

impl TreeValueTable {
    pub fn from_rows(rows: Vec<(u32, f64)>) -> Self {
        TreeValueTable { rows }
    }

    /// (p, v_p) pairs ready for [`powerlaw_fit`].
    pub fn tree_values(&self) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .map(|&(p, r)| (f64::from(p), tree_value_from_ratio(r)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub sigma_a: f64,
    pub sigma_b: f64,
    pub sigma_c: f64,
    pub sigma_d: f64,
    /// Residual sum of squares over total sum of squares.
    pub one_minus_r2: f64,
    pub rss: f64,
    pub points: usize,
}

impl FitResult {
    pub fn predict(&self, p: f64) -> f64 {
        model(&[self.a, self.b, self.c, self.d], p)
    }

    /// Extrapolated swap ratio 1 − 2d/√3.
    pub fn asymptotic_ratio(&self) -> f64 {
        ratio_from_tree_value(self.d)
    }

    /// Ratios at d + σ_d and d − σ_d, in increasing order.
    pub fn asymptotic_ratio_range(&self) -> (f64, f64) {
        (
            ratio_from_tree_value(self.d + self.sigma_d),
            ratio_from_tree_value(self.d - self.sigma_d),
        )
    }
}

type Params = [f64; 4];

fn model(theta: &Params, p: f64) -> f64 {
    let [a, b, c, d] = *theta;
    d - a / (p.powf(b) + c)
}

/// ∂f/∂(a, b, c, d).
fn gradient(theta: &Params, p: f64) -> Vector4<f64> {
    let [a, b, c, _] = *theta;
    let pb = p.powf(b);
    let den = pb + c;
    Vector4::new(-1.0 / den, a * pb * p.ln() / (den * den), a / (den * den), 1.0)
}

fn rss(theta: &Params, points: &[(f64, f64)]) -> f64 {
    points.iter().map(|&(p, y)| (y - model(theta, p)).powi(2)).sum()
}

fn normal_equations(theta: &Params, points: &[(f64, f64)]) -> (Matrix4<f64>, Vector4<f64>) {
    let mut jtj = Matrix4::zeros();
    let mut jtr = Vector4::zeros();
    for &(p, y) in points {
        let g = gradient(theta, p);
        jtj += g * g.transpose();
        jtr += g * (y - model(theta, p));
    }
    (jtj, jtr)
}

struct Converged {
    theta: Params,
    rss: f64,
}

const MAX_ITERATIONS: usize = 20_000;
const RELATIVE_TOLERANCE: f64 = 1e-12;

/// Damped Gauss–Newton (Levenberg–Marquardt with Marquardt scaling) from one
/// starting point.
fn levenberg_marquardt(start: Params, points: &[(f64, f64)]) -> Option<Converged> {
    let mut theta = start;
    let mut current = rss(&theta, points);
    if !current.is_finite() {
        return None;
    }
    let mut lambda = 1e-3;
    for _ in 0..MAX_ITERATIONS {
        let (jtj, jtr) = normal_equations(&theta, points);
        let mut damped = jtj;
        for k in 0..4 {
            damped[(k, k)] += lambda * jtj[(k, k)].max(1e-300);
        }
        let Some(step) = damped.lu().solve(&jtr) else {
            lambda *= 10.0;
            if lambda > 1e20 {
                return None;
            }
            continue;
        };
        let candidate = [
            theta[0] + step[0],
            theta[1] + step[1],
            theta[2] + step[2],
            theta[3] + step[3],
        ];
        let trial = rss(&candidate, points);
        if trial.is_finite() && trial <= current {
            let change = current - trial;
            theta = candidate;
            current = trial;
            lambda = (lambda / 10.0).max(1e-15);
            if change <= RELATIVE_TOLERANCE * current || current < 1e-30 {
                return Some(Converged { theta, rss: current });
            }
        } else {
            lambda *= 10.0;
            if lambda > 1e20 {
                // No downhill direction left: a (local) minimum.
                return Some(Converged { theta, rss: current });
            }
        }
    }
    None
}

/// Least-squares fit of v ≈ d − a/(p^b + c).
///
/// Runs Levenberg–Marquardt from the grid b ∈ {0.5, 1, 2} × c ∈ {0.5, 2, 5}
/// with d starting at max(v) + 0.1 and a chosen so the first point is met,
/// and keeps the lowest residual. Standard errors come from
/// s² (JᵀJ)⁻¹ with s² = RSS / (N − 4); they are infinite when N = 4.
pub fn powerlaw_fit(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 4 {
        return Err(Error::invalid(format!(
            "a four-parameter fit needs at least 4 points, got {}",
            points.len()
        )));
    }
    if points
        .iter()
        .any(|&(p, v)| !(p > 0.0 && p.is_finite() && v.is_finite()))
    {
        return Err(Error::invalid("points must have finite values and positive depth"));
    }
    let v_max = points.iter().map(|&(_, v)| v).fold(f64::NEG_INFINITY, f64::max);
    let (p0, v0) = points[0];
    let d0 = v_max + 0.1;

    let mut best: Option<Converged> = None;
    let mut attempts = Vec::new();
    for b0 in [0.5, 1.0, 2.0] {
        for c0 in [0.5, 2.0, 5.0] {
            let a0 = (d0 - v0) * (p0.powf(b0) + c0);
            match levenberg_marquardt([a0, b0, c0, d0], points) {
                Some(fit) => {
                    attempts.push(format!("b0={b0} c0={c0}: rss={:.3e}", fit.rss));
                    if best.as_ref().is_none_or(|b| fit.rss < b.rss) {
                        best = Some(fit);
                    }
                }
                None => attempts.push(format!("b0={b0} c0={c0}: diverged")),
            }
        }
    }
    let Some(Converged { theta, rss: residual }) = best else {
        return Err(Error::FitFailure(format!(
            "no start converged ({})",
            attempts.join("; ")
        )));
    };

    let n = points.len();
    let mean = points.iter().map(|&(_, v)| v).sum::<f64>() / n as f64;
    let total: f64 = points.iter().map(|&(_, v)| (v - mean).powi(2)).sum();
    let one_minus_r2 = if total > 0.0 {
        residual / total
    } else if residual == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };

    let (jtj, _) = normal_equations(&theta, points);
    let sigmas = if n > 4 {
        let s2 = residual / (n - 4) as f64;
        let cov = jtj
            .try_inverse()
            .ok_or_else(|| Error::FitFailure(format!("singular Jacobian at {theta:?}")))?;
        [0, 1, 2, 3].map(|k| (s2 * cov[(k, k)]).max(0.0).sqrt())
    } else {
        [f64::INFINITY; 4]
    };

    let [a, b, c, d] = theta;
    Ok(FitResult {
        a,
        b,
        c,
        d,
        sigma_a: sigmas[0],
        sigma_b: sigmas[1],
        sigma_c: sigmas[2],
        sigma_d: sigmas[3],
        one_minus_r2,
        rss: residual,
        points: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_conversions() {
        assert!(ratio_from_tree_value(SQRT3 / 2.0).abs() < 1e-15);
        assert!((tree_value_from_ratio(0.393) - 0.525_700).abs() < 1e-4);
        assert!((tree_value_from_ratio(0.675) - 0.281_458).abs() < 1e-4);
        for r in [0.0, 0.269, 0.5, 0.9] {
            assert!((ratio_from_tree_value(tree_value_from_ratio(r)) - r).abs() < 1e-12);
        }
    }

    #[test]
    fn table_is_strictly_decreasing() {
        assert!(TREE_RATIOS.windows(2).all(|w| w[1].1 < w[0].1));
    }

    #[test]
    fn recovers_noiseless_parameters() {
        let truth = [1.0, 1.0, 2.0, 0.6];
        let points: Vec<_> = (1..=7).map(|p| (p as f64, model(&truth, p as f64))).collect();
        let fit = powerlaw_fit(&points).unwrap();
        for (got, want) in [fit.a, fit.b, fit.c, fit.d].iter().zip(truth) {
            assert!((got - want).abs() < 1e-6, "{got} vs {want}");
        }
        assert!(fit.one_minus_r2 < 1e-12);
    }

    #[test]
    fn exactly_determined_fit_has_infinite_uncertainty() {
        let truth = [0.8, 1.5, 1.0, 0.7];
        let points: Vec<_> = (1..=4).map(|p| (p as f64, model(&truth, p as f64))).collect();
        let fit = powerlaw_fit(&points).unwrap();
        assert!(fit.sigma_d.is_infinite());
        assert!((fit.d - 0.7).abs() < 1e-6);
    }

    #[test]
    fn too_few_points() {
        let err = powerlaw_fit(&[(1.0, 0.1), (2.0, 0.2), (3.0, 0.3)]).unwrap_err();
        assert_eq!(err.kind(), "invalid-argument");
        assert!(powerlaw_fit(&[(0.0, 0.1), (2.0, 0.2), (3.0, 0.3), (4.0, 0.3)]).is_err());
    }
}
