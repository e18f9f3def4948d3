//! Multi-criteria decision making primitives: TOPSIS ranking, AHP pairwise
//! weighting and Shannon-entropy weighting.
//!
//! All three operate on a plain decision matrix — one row per alternative,
//! one column per criterion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether larger criterion values are desirable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Benefit,
    Cost,
}

/// Result of a TOPSIS run.
#[derive(Clone, Debug)]
pub struct TopsisRanking {
    /// Closeness coefficient per alternative, in input row order. Always in
    /// `[0, 1]`; `0.5` when an alternative is equidistant from both ideals
    /// (in particular when all alternatives are identical).
    pub closeness: Vec<f64>,
    /// Row indices ordered best-first: descending closeness, ties broken by
    /// ascending row index.
    pub order: Vec<usize>,
}

fn check_matrix(matrix: &[Vec<f64>]) -> Result<usize> {
    let Some(first) = matrix.first() else {
        return Err(Error::Parameter("decision matrix has no alternatives".into()));
    };
    let n_criteria = first.len();
    if n_criteria == 0 {
        return Err(Error::Parameter("decision matrix has no criteria".into()));
    }
    for row in matrix {
        if row.len() != n_criteria {
            return Err(Error::Parameter("decision matrix rows have unequal lengths".into()));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("decision matrix contains a non-finite value".into()));
        }
    }
    Ok(n_criteria)
}

/// Rank alternatives by the Technique for Order of Preference by Similarity
/// to Ideal Solution.
///
/// Columns are vector-normalized (divided by their Euclidean norm; an
/// all-zero column stays zero), weighted, and compared against the ideal best
/// and worst per orientation. The closeness coefficient is
/// `d⁻ / (d⁺ + d⁻)`; when both distances vanish it is defined as `0.5`.
///
/// `weights` must be non-negative and sum to 1. Callers that rank players
/// should present rows sorted by player id so the index tie-break matches the
/// id tie-break.
pub fn topsis_rank(
    matrix: &[Vec<f64>],
    orientations: &[Orientation],
    weights: &[f64],
) -> Result<TopsisRanking> {
    let n_criteria = check_matrix(matrix)?;
    if orientations.len() != n_criteria || weights.len() != n_criteria {
        return Err(Error::Parameter(format!(
            "expected {n_criteria} orientations and weights, got {} and {}",
            orientations.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
        return Err(Error::Parameter("criterion weights must be non-negative".into()));
    }
    let weight_sum: f64 = weights.iter().sum();
    if (weight_sum - 1.0).abs() > 1e-6 {
        return Err(Error::Parameter(format!(
            "criterion weights must sum to 1, got {weight_sum}"
        )));
    }

    let m = matrix.len();
    // Weighted, vector-normalized matrix.
    let mut scaled = vec![vec![0.0; n_criteria]; m];
    for j in 0..n_criteria {
        let norm = matrix.iter().map(|row| row[j] * row[j]).sum::<f64>().sqrt();
        for (i, row) in matrix.iter().enumerate() {
            let v = if norm > 0.0 { row[j] / norm } else { 0.0 };
            scaled[i][j] = v * weights[j];
        }
    }

    let mut ideal_best = vec![0.0; n_criteria];
    let mut ideal_worst = vec![0.0; n_criteria];
    for j in 0..n_criteria {
        let column = scaled.iter().map(|row| row[j]);
        let max = column.clone().fold(f64::NEG_INFINITY, f64::max);
        let min = column.fold(f64::INFINITY, f64::min);
        match orientations[j] {
            Orientation::Benefit => {
                ideal_best[j] = max;
                ideal_worst[j] = min;
            }
            Orientation::Cost => {
                ideal_best[j] = min;
                ideal_worst[j] = max;
            }
        }
    }

    let closeness: Vec<f64> = scaled
        .iter()
        .map(|row| {
            let d_best = row
                .iter()
                .zip(&ideal_best)
                .map(|(v, b)| (v - b) * (v - b))
                .sum::<f64>()
                .sqrt();
            let d_worst = row
                .iter()
                .zip(&ideal_worst)
                .map(|(v, w)| (v - w) * (v - w))
                .sum::<f64>()
                .sqrt();
            let denom = d_best + d_worst;
            if denom == 0.0 {
                0.5
            } else {
                d_worst / denom
            }
        })
        .collect();

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        closeness[b].partial_cmp(&closeness[a]).expect("closeness is finite").then(a.cmp(&b))
    });

    Ok(TopsisRanking { closeness, order })
}

/// Result of an AHP weighting run.
#[derive(Clone, Debug)]
pub struct AhpWeights {
    /// Normalized principal eigenvector (sums to 1).
    pub weights: Vec<f64>,
    /// Principal eigenvalue estimate.
    pub lambda_max: f64,
    /// Saaty consistency ratio; 0 for orders below 3.
    pub consistency_ratio: f64,
}

/// Saaty random-index values by matrix order.
const RANDOM_INDEX: [f64; 16] = [
    0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49, 1.51, 1.54, 1.56, 1.57, 1.59,
];

/// Derive criterion weights from a positive reciprocal pairwise-comparison
/// matrix as the normalized principal eigenvector (power iteration to a
/// relative tolerance of 1e-10, at most 10,000 iterations).
pub fn ahp_weights(pairwise: &[Vec<f64>]) -> Result<AhpWeights> {
    let n = pairwise.len();
    if n == 0 {
        return Err(Error::Parameter("pairwise matrix is empty".into()));
    }
    for (i, row) in pairwise.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parameter("pairwise matrix is not square".into()));
        }
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Parameter(format!(
                    "pairwise entry ({i},{j}) = {v} is not positive"
                )));
            }
            let reciprocal = pairwise[j][i];
            if (v * reciprocal - 1.0).abs() > 1e-6 {
                return Err(Error::Parameter(format!(
                    "pairwise matrix is not reciprocal at ({i},{j}): {v} vs {reciprocal}"
                )));
            }
        }
    }

    let mut weights = vec![1.0 / n as f64; n];
    let mut lambda_max = n as f64;
    for _ in 0..10_000 {
        let mut next: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| pairwise[i][j] * weights[j]).sum::<f64>())
            .collect();
        let total: f64 = next.iter().sum();
        for v in &mut next {
            *v /= total;
        }
        // Rayleigh-style eigenvalue estimate from the un-normalized image.
        lambda_max = (0..n)
            .map(|i| {
                let image: f64 = (0..n).map(|j| pairwise[i][j] * next[j]).sum();
                image / next[i]
            })
            .sum::<f64>()
            / n as f64;
        let delta = weights
            .iter()
            .zip(&next)
            .map(|(old, new)| ((old - new) / new.max(f64::MIN_POSITIVE)).abs())
            .fold(0.0, f64::max);
        weights = next;
        if delta <= 1e-10 {
            break;
        }
    }

    let consistency_ratio = if n < 3 {
        0.0
    } else {
        let ri = RANDOM_INDEX.get(n).copied().unwrap_or(1.6);
        let ci = (lambda_max - n as f64) / (n as f64 - 1.0);
        ci / ri
    };

    Ok(AhpWeights { weights, lambda_max, consistency_ratio })
}

/// Criterion weights from column dispersion, via Shannon entropy.
///
/// Column proportions `p_ij = x_ij / Σ_i x_ij` give per-column entropy
/// `e_j = -(1/ln m) Σ_i p_ij ln p_ij` (with `0·ln 0 = 0`); weights are the
/// normalized divergences `1 - e_j`. An all-zero column carries no
/// information and is treated as maximally entropic (weight 0). If every
/// column is maximally entropic the weights fall back to uniform — this also
/// covers single-alternative matrices, where entropy is undefined.
pub fn shannon_entropy_weights(matrix: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n_criteria = check_matrix(matrix)?;
    for row in matrix {
        if row.iter().any(|v| *v < 0.0) {
            return Err(Error::Parameter("entropy weighting requires non-negative entries".into()));
        }
    }

    let m = matrix.len();
    let uniform = vec![1.0 / n_criteria as f64; n_criteria];
    if m < 2 {
        return Ok(uniform);
    }

    let ln_m = (m as f64).ln();
    let mut divergence = vec![0.0; n_criteria];
    for (j, d) in divergence.iter_mut().enumerate() {
        let column_sum: f64 = matrix.iter().map(|row| row[j]).sum();
        let entropy = if column_sum == 0.0 {
            1.0
        } else {
            let sum: f64 = matrix
                .iter()
                .map(|row| {
                    let p = row[j] / column_sum;
                    if p > 0.0 {
                        p * p.ln()
                    } else {
                        0.0
                    }
                })
                .sum();
            -sum / ln_m
        };
        // Entropies within rounding of 1 count as maximal so a constant
        // column gets exactly zero weight.
        *d = (1.0 - entropy).max(0.0);
        if *d < 1e-12 {
            *d = 0.0;
        }
    }

    let total: f64 = divergence.iter().sum();
    if total == 0.0 {
        return Ok(uniform);
    }
    Ok(divergence.into_iter().map(|d| d / total).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn topsis_two_alternatives_single_criterion() {
        let ranking =
            topsis_rank(&[vec![10.0], vec![5.0]], &[Orientation::Benefit], &[1.0]).unwrap();
        assert_eq!(ranking.closeness, vec![1.0, 0.0]);
        assert_eq!(ranking.order, vec![0, 1]);
    }

    #[test]
    fn topsis_dominant_alternative_ranks_first() {
        let matrix = vec![
            vec![3.0, 2.0, 8.0],
            vec![9.0, 1.0, 9.0], // dominates: higher benefits, lower cost
            vec![4.0, 5.0, 2.0],
        ];
        let orientations = [Orientation::Benefit, Orientation::Cost, Orientation::Benefit];
        let weights = [0.4, 0.3, 0.3];
        let ranking = topsis_rank(&matrix, &orientations, &weights).unwrap();
        assert_eq!(ranking.order[0], 1);
    }

    #[test]
    fn topsis_identical_rows_all_half() {
        let matrix = vec![vec![2.0, 7.0]; 4];
        let ranking =
            topsis_rank(&matrix, &[Orientation::Benefit, Orientation::Cost], &[0.5, 0.5]).unwrap();
        assert_eq!(ranking.closeness, vec![0.5; 4]);
        assert_eq!(ranking.order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn topsis_rejects_negative_weight() {
        let err = topsis_rank(&[vec![1.0], vec![2.0]], &[Orientation::Benefit], &[-1.0]);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }

    #[test]
    fn topsis_ordering_invariant_under_column_rescale() {
        let matrix = vec![vec![3.0, 20.0], vec![9.0, 12.0], vec![5.0, 31.0]];
        let orientations = [Orientation::Benefit, Orientation::Cost];
        let weights = [0.6, 0.4];
        let base = topsis_rank(&matrix, &orientations, &weights).unwrap();
        let rescaled: Vec<Vec<f64>> =
            matrix.iter().map(|row| vec![row[0] * 37.5, row[1]]).collect();
        let scaled = topsis_rank(&rescaled, &orientations, &weights).unwrap();
        assert_eq!(base.order, scaled.order);
    }

    #[test]
    fn ahp_uniform_for_all_ones() {
        let matrix = vec![vec![1.0; 4]; 4];
        let result = ahp_weights(&matrix).unwrap();
        for w in &result.weights {
            assert_abs_diff_eq!(*w, 0.25, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(result.consistency_ratio, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn ahp_consistent_two_by_two() {
        let result = ahp_weights(&[vec![1.0, 3.0], vec![1.0 / 3.0, 1.0]]).unwrap();
        assert_abs_diff_eq!(result.weights[0], 0.75, epsilon = 1e-10);
        assert_abs_diff_eq!(result.weights[1], 0.25, epsilon = 1e-10);
    }

    #[test]
    fn ahp_recovers_generating_weights() {
        let w = [0.5, 0.3, 0.2];
        let matrix: Vec<Vec<f64>> =
            (0..3).map(|i| (0..3).map(|j| w[i] / w[j]).collect()).collect();
        let result = ahp_weights(&matrix).unwrap();
        for (computed, expected) in result.weights.iter().zip(&w) {
            assert_abs_diff_eq!(*computed, *expected, epsilon = 1e-8);
        }
        assert!(result.consistency_ratio.abs() < 1e-8);
    }

    #[test]
    fn ahp_rejects_non_reciprocal() {
        let err = ahp_weights(&[vec![1.0, 2.0], vec![1.0, 1.0]]);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }

    #[test]
    fn entropy_constant_column_gets_zero_weight() {
        // Column 0 is constant; column 1 is (1, 3): hand-computed entropy
        // 0.25 ln 0.25 + 0.75 ln 0.75 over ln 2 gives ~0.8113, so all weight
        // lands on column 1.
        let weights = shannon_entropy_weights(&[vec![1.0, 1.0], vec![1.0, 3.0]]).unwrap();
        assert_eq!(weights[0], 0.0);
        assert_abs_diff_eq!(weights[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_all_constant_falls_back_to_uniform() {
        let weights = shannon_entropy_weights(&[vec![2.0, 5.0], vec![2.0, 5.0]]).unwrap();
        assert_eq!(weights, vec![0.5, 0.5]);
    }

    #[test]
    fn entropy_zero_column_counts_as_maximal() {
        let weights = shannon_entropy_weights(&[vec![0.0, 1.0], vec![0.0, 3.0]]).unwrap();
        assert_eq!(weights[0], 0.0);
        assert_abs_diff_eq!(weights[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_rejects_negative_entries() {
        let err = shannon_entropy_weights(&[vec![-1.0], vec![2.0]]);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }
}
