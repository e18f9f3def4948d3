//! Tournament evaluation: per-match strategy summaries, the eight-metric
//! matrix, its (0,1) normalization, the Average-4 composite ranking, subset
//! competitions, and payoff summaries.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::contest::{ContestResult, PayoffStructure, StrategyRoster};
use crate::error::{Error, Result};
use crate::rng::StreamKey;
use crate::scoring::ScoringRules;
use crate::sim::{identity_sequence, run_season, SeasonOutcome};
use crate::strategy::{StrategyId, StrategyParams};
use crate::types::{ConstraintSet, TournamentDataset};

// ---------------------------------------------------------------------------
// Per-match summaries
// ---------------------------------------------------------------------------

/// Rank and point aggregates for one strategy in one contest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchStrategySummary {
    pub strategy: StrategyId,
    /// Arithmetic mean of the strategy's agents' ranks.
    pub average_rank: f64,
    /// Arithmetic mean of the strategy's agents' points.
    pub average_points: f64,
    /// Numerically smallest (i.e. best) rank among the strategy's agents.
    pub best_rank: u32,
}

/// Summarize one contest per strategy, in canonical strategy order.
///
/// Strategies from `expected` that fielded no agents are returned separately
/// as a warning list rather than being summarized.
pub fn match_strategy_summary(
    result: &ContestResult,
    expected: &[StrategyId],
) -> (Vec<MatchStrategySummary>, Vec<StrategyId>) {
    let mut rank_sums: HashMap<StrategyId, (f64, f64, u32, u32)> = HashMap::new();
    for outcome in &result.outcomes {
        let entry = rank_sums
            .entry(outcome.agent.strategy)
            .or_insert((0.0, 0.0, u32::MAX, 0));
        entry.0 += outcome.rank as f64;
        entry.1 += outcome.points;
        entry.2 = entry.2.min(outcome.rank);
        entry.3 += 1;
    }
    let mut summaries = Vec::new();
    let mut missing = Vec::new();
    for &strategy in expected {
        match rank_sums.get(&strategy) {
            Some(&(rank_sum, point_sum, best_rank, count)) if count > 0 => {
                summaries.push(MatchStrategySummary {
                    strategy,
                    average_rank: rank_sum / count as f64,
                    average_points: point_sum / count as f64,
                    best_rank,
                });
            }
            _ => missing.push(strategy),
        }
    }
    (summaries, missing)
}

// ---------------------------------------------------------------------------
// The eight metrics
// ---------------------------------------------------------------------------

/// The eight tournament-level performance metrics, in column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    WinBestRank,
    WinAverageRank,
    MeanAveragePoints,
    MedianAveragePoints,
    MeanAverageRank,
    MedianAverageRank,
    MeanBestRank,
    MedianBestRank,
}

impl MetricKind {
    pub const ALL: [MetricKind; 8] = [
        MetricKind::WinBestRank,
        MetricKind::WinAverageRank,
        MetricKind::MeanAveragePoints,
        MetricKind::MedianAveragePoints,
        MetricKind::MeanAverageRank,
        MetricKind::MedianAverageRank,
        MetricKind::MeanBestRank,
        MetricKind::MedianBestRank,
    ];

    /// Rank-oriented columns are better when smaller and get the orientation
    /// flip after normalization.
    pub fn is_rank_oriented(self) -> bool {
        matches!(
            self,
            MetricKind::MeanAverageRank
                | MetricKind::MedianAverageRank
                | MetricKind::MeanBestRank
                | MetricKind::MedianBestRank
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            MetricKind::WinBestRank => "win_pct_best_rank",
            MetricKind::WinAverageRank => "win_pct_average_rank",
            MetricKind::MeanAveragePoints => "mean_average_points",
            MetricKind::MedianAveragePoints => "median_average_points",
            MetricKind::MeanAverageRank => "mean_average_rank",
            MetricKind::MedianAverageRank => "median_average_rank",
            MetricKind::MeanBestRank => "mean_best_rank",
            MetricKind::MedianBestRank => "median_best_rank",
        }
    }
}

/// Strategies x metrics table of raw values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricMatrix {
    pub strategies: Vec<StrategyId>,
    /// One row per strategy, columns in [`MetricKind::ALL`] order.
    pub raw: Vec<[f64; 8]>,
}

/// Raw matrix plus its (0,1) normalization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedMetricMatrix {
    pub strategies: Vec<StrategyId>,
    pub raw: Vec<[f64; 8]>,
    /// After per-column scaling into (0,1) and the orientation flip of the
    /// rank columns: larger is better everywhere.
    pub normalized: Vec<[f64; 8]>,
}

/// Inclusive-median quantile helpers.
fn median_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    assert!(n > 0, "median of empty slice");
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    median_sorted(&sorted)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Quartiles by the inclusive median-of-halves convention: with an odd count
/// the median element belongs to both halves.
pub fn quartiles(values: &[f64]) -> (f64, f64, f64) {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let n = sorted.len();
    let med = median_sorted(&sorted);
    if n == 1 {
        return (med, med, med);
    }
    let half = if n % 2 == 1 { n / 2 + 1 } else { n / 2 };
    let q1 = median_sorted(&sorted[..half]);
    let q3 = median_sorted(&sorted[n - half..]);
    (q1, med, q3)
}

/// Build the raw eight-metric matrix from per-match summaries.
///
/// Win%(Best Rank) credits the strategy holding the contest's rank-1 agent
/// (unique by the tie-break); Win%(Average Rank) requires a strict unique
/// minimum — ties credit nobody for that match.
pub fn eight_metric_matrix(per_match: &[Vec<MatchStrategySummary>]) -> Result<MetricMatrix> {
    if per_match.is_empty() {
        return Err(Error::Parameter("no match summaries to aggregate".into()));
    }
    let strategies: Vec<StrategyId> =
        per_match[0].iter().map(|summary| summary.strategy).collect();
    if strategies.is_empty() {
        return Err(Error::Parameter("match summaries cover no strategies".into()));
    }
    for summaries in per_match {
        let same: Vec<StrategyId> = summaries.iter().map(|s| s.strategy).collect();
        if same != strategies {
            return Err(Error::Parameter(
                "match summaries cover differing strategy sets".into(),
            ));
        }
    }

    let n_matches = per_match.len() as f64;
    let mut raw = Vec::with_capacity(strategies.len());
    for (row, &strategy) in strategies.iter().enumerate() {
        let avg_points: Vec<f64> =
            per_match.iter().map(|m| m[row].average_points).collect();
        let avg_ranks: Vec<f64> = per_match.iter().map(|m| m[row].average_rank).collect();
        let best_ranks: Vec<f64> =
            per_match.iter().map(|m| m[row].best_rank as f64).collect();

        let best_rank_wins = per_match
            .iter()
            .filter(|m| m[row].best_rank == 1)
            .count() as f64;
        let avg_rank_wins = per_match
            .iter()
            .filter(|m| {
                let own = m[row].average_rank;
                m.iter().all(|other| other.strategy == strategy || other.average_rank > own)
            })
            .count() as f64;

        raw.push([
            100.0 * best_rank_wins / n_matches,
            100.0 * avg_rank_wins / n_matches,
            mean(&avg_points),
            median(&avg_points),
            mean(&avg_ranks),
            median(&avg_ranks),
            mean(&best_ranks),
            median(&best_ranks),
        ]);
    }
    Ok(MetricMatrix { strategies, raw })
}

/// Scale every column into the open interval (0,1) and flip the rank-oriented
/// columns so that larger always means better.
///
/// Per column: `x' = (x - (min - 1)) / (max - min + 2)`; rank columns then
/// take `x'' = 1 - x'`. A constant column lands on 0.5 everywhere — the
/// padding keeps the denominator at 2.
pub fn normalize_metric_matrix(matrix: &MetricMatrix) -> NormalizedMetricMatrix {
    let rows = matrix.raw.len();
    let mut normalized = vec![[0.0; 8]; rows];
    for (column, kind) in MetricKind::ALL.iter().enumerate() {
        let values: Vec<f64> = matrix.raw.iter().map(|row| row[column]).collect();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (row, value) in values.iter().enumerate() {
            let scaled = (value - (min - 1.0)) / (max - min + 2.0);
            normalized[row][column] =
                if kind.is_rank_oriented() { 1.0 - scaled } else { scaled };
        }
    }
    NormalizedMetricMatrix {
        strategies: matrix.strategies.clone(),
        raw: matrix.raw.clone(),
        normalized,
    }
}

/// Apply the (0,1) scaling of [`normalize_metric_matrix`] to one raw column.
pub fn normalize_column(values: &[f64]) -> Vec<f64> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values.iter().map(|v| (v - (min - 1.0)) / (max - min + 2.0)).collect()
}

/// One strategy's composite score.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Average4Entry {
    pub strategy: StrategyId,
    pub score: f64,
}

/// The Average-4 composite: the mean of four normalized cells — Win%(Best
/// Rank), Win%(Average Rank), Mean(Average Points) and Mean(Best Rank) —
/// ordered best-first, ties broken by strategy label.
pub fn average4_ranking(matrix: &NormalizedMetricMatrix) -> Vec<Average4Entry> {
    let picks = [
        MetricKind::WinBestRank,
        MetricKind::WinAverageRank,
        MetricKind::MeanAveragePoints,
        MetricKind::MeanBestRank,
    ];
    let columns: Vec<usize> = picks
        .iter()
        .map(|pick| MetricKind::ALL.iter().position(|k| k == pick).unwrap())
        .collect();
    let mut entries: Vec<Average4Entry> = matrix
        .strategies
        .iter()
        .zip(&matrix.normalized)
        .map(|(&strategy, row)| Average4Entry {
            strategy,
            score: columns.iter().map(|&c| row[c]).sum::<f64>() / 4.0,
        })
        .collect();
    entries.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .expect("scores are finite")
            .then_with(|| a.strategy.label().cmp(b.strategy.label()))
    });
    entries
}

// ---------------------------------------------------------------------------
// Payoff summaries
// ---------------------------------------------------------------------------

/// Distribution of per-agent season-total net payoffs within one strategy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgentPayoffSummary {
    pub strategy: StrategyId,
    pub min: i64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub mean: f64,
    pub max: i64,
}

/// Match-level payoff aggregates for one strategy, combined across matches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyPayoffSummary {
    pub strategy: StrategyId,
    pub min: i64,
    pub median: f64,
    pub mean: f64,
    pub max: i64,
}

/// How match-level figures combine into the strategy summary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyAggregation {
    /// Mean of match means, median of match medians, min of match minima,
    /// max of match maxima.
    #[default]
    PerMatch,
    /// Pool every (agent, match) net payoff and summarize the pool directly.
    Pooled,
}

/// Player-specific and strategy-specific payoff summaries for one season.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PayoffSummary {
    pub agents: Vec<AgentPayoffSummary>,
    pub strategies: Vec<StrategyPayoffSummary>,
    pub aggregation: StrategyAggregation,
}

/// Summarize a simulated season's payoffs.
///
/// Agent summaries describe season-total payoffs per agent; strategy
/// summaries describe per-match payoffs, combined per `aggregation`.
pub fn payoff_summaries(
    outcome: &SeasonOutcome,
    aggregation: StrategyAggregation,
) -> PayoffSummary {
    let agents = outcome.roster.agents();
    let present: Vec<StrategyId> = StrategyId::ALL
        .into_iter()
        .filter(|s| outcome.roster.count(*s) > 0)
        .collect();

    let mut agent_rows = Vec::new();
    for &strategy in &present {
        let totals: Vec<f64> = agents
            .iter()
            .zip(&outcome.agent_totals)
            .filter(|(agent, _)| agent.strategy == strategy)
            .map(|(_, &total)| total as f64)
            .collect();
        let (q1, med, q3) = quartiles(&totals);
        agent_rows.push(AgentPayoffSummary {
            strategy,
            min: totals.iter().copied().fold(f64::INFINITY, f64::min) as i64,
            q1,
            median: med,
            q3,
            mean: mean(&totals),
            max: totals.iter().copied().fold(f64::NEG_INFINITY, f64::max) as i64,
        });
    }

    let mut strategy_rows = Vec::new();
    for &strategy in &present {
        let per_match: Vec<Vec<f64>> = outcome
            .contests
            .iter()
            .map(|contest| {
                contest
                    .outcomes
                    .iter()
                    .filter(|o| o.agent.strategy == strategy)
                    .map(|o| o.net_payoff as f64)
                    .collect::<Vec<f64>>()
            })
            .collect();
        let row = match aggregation {
            StrategyAggregation::PerMatch => {
                let mins: Vec<f64> = per_match
                    .iter()
                    .map(|m| m.iter().copied().fold(f64::INFINITY, f64::min))
                    .collect();
                let maxs: Vec<f64> = per_match
                    .iter()
                    .map(|m| m.iter().copied().fold(f64::NEG_INFINITY, f64::max))
                    .collect();
                let medians: Vec<f64> = per_match.iter().map(|m| median(m)).collect();
                let means: Vec<f64> = per_match.iter().map(|m| mean(m)).collect();
                StrategyPayoffSummary {
                    strategy,
                    min: mins.iter().copied().fold(f64::INFINITY, f64::min) as i64,
                    median: median(&medians),
                    mean: mean(&means),
                    max: maxs.iter().copied().fold(f64::NEG_INFINITY, f64::max) as i64,
                }
            }
            StrategyAggregation::Pooled => {
                let pooled: Vec<f64> = per_match.into_iter().flatten().collect();
                StrategyPayoffSummary {
                    strategy,
                    min: pooled.iter().copied().fold(f64::INFINITY, f64::min) as i64,
                    median: median(&pooled),
                    mean: mean(&pooled),
                    max: pooled.iter().copied().fold(f64::NEG_INFINITY, f64::max) as i64,
                }
            }
        };
        strategy_rows.push(row);
    }

    PayoffSummary { agents: agent_rows, strategies: strategy_rows, aggregation }
}

// ---------------------------------------------------------------------------
// Subset competition
// ---------------------------------------------------------------------------

/// Win percentages of one strategy within a subset run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetStanding {
    pub strategy: StrategyId,
    pub win_best_rank: f64,
    pub win_average_rank: f64,
}

/// Outcome of one subset's competition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub strategies: Vec<StrategyId>,
    /// Standings per run, each in subset order.
    pub per_run: Vec<Vec<SubsetStanding>>,
    /// Mean standings over runs, in subset order.
    pub aggregated: Vec<SubsetStanding>,
    /// Pairs `(a, b)` where `a` beats `b` on both aggregated win metrics.
    pub uniformly_better: Vec<(StrategyId, StrategyId)>,
}

/// Run each subset of strategies as its own tournament, `runs` times, and
/// report which members are uniformly better — ahead on both Win%(Best Rank)
/// and Win%(Average Rank) after aggregating the runs.
#[allow(clippy::too_many_arguments)]
pub fn subset_competition(
    dataset: &TournamentDataset,
    subsets: &[Vec<StrategyId>],
    runs: u32,
    agents_per_strategy: u32,
    structure: &PayoffStructure,
    params: &StrategyParams,
    rules: &ScoringRules,
    constraints: &ConstraintSet,
    key: StreamKey,
) -> Result<Vec<SubsetReport>> {
    if runs == 0 {
        return Err(Error::Config("subset competition needs at least one run".into()));
    }
    let sequence = identity_sequence(dataset);
    let mut reports = Vec::with_capacity(subsets.len());
    for (subset_idx, subset) in subsets.iter().enumerate() {
        if subset.len() < 2 {
            return Err(Error::Config(format!(
                "subset {} has {} strategies; competition needs at least 2",
                subset_idx,
                subset.len()
            )));
        }
        let roster = StrategyRoster::uniform(subset, agents_per_strategy);
        let subset_key = key.child(subset_idx as u64);
        let mut per_run = Vec::with_capacity(runs as usize);
        for run in 0..runs {
            let outcome = run_season(
                dataset,
                &sequence,
                &roster,
                structure,
                params,
                rules,
                constraints,
                subset_key.child(run as u64),
            )?;
            let summaries: Vec<Vec<MatchStrategySummary>> = outcome
                .contests
                .iter()
                .map(|contest| match_strategy_summary(contest, subset).0)
                .collect();
            let matrix = eight_metric_matrix(&summaries)?;
            let standings: Vec<SubsetStanding> = matrix
                .strategies
                .iter()
                .zip(&matrix.raw)
                .map(|(&strategy, row)| SubsetStanding {
                    strategy,
                    win_best_rank: row[0],
                    win_average_rank: row[1],
                })
                .collect();
            per_run.push(standings);
        }

        let aggregated: Vec<SubsetStanding> = subset
            .iter()
            .enumerate()
            .map(|(idx, &strategy)| SubsetStanding {
                strategy,
                win_best_rank: mean(
                    &per_run.iter().map(|run| run[idx].win_best_rank).collect::<Vec<f64>>(),
                ),
                win_average_rank: mean(
                    &per_run.iter().map(|run| run[idx].win_average_rank).collect::<Vec<f64>>(),
                ),
            })
            .collect();

        let mut uniformly_better = Vec::new();
        for a in &aggregated {
            for b in &aggregated {
                if a.strategy != b.strategy
                    && a.win_best_rank > b.win_best_rank
                    && a.win_average_rank > b.win_average_rank
                {
                    uniformly_better.push((a.strategy, b.strategy));
                }
            }
        }

        reports.push(SubsetReport {
            strategies: subset.clone(),
            per_run,
            aggregated,
            uniformly_better,
        });
    }
    Ok(reports)
}

/// The four homogeneous strategy groups used by default.
pub fn default_subsets() -> Vec<Vec<StrategyId>> {
    vec![
        vec![StrategyId::Random1, StrategyId::Random2, StrategyId::FavTeam],
        vec![
            StrategyId::CareerAverages,
            StrategyId::AllrounderSelectAll,
            StrategyId::TournamentStats,
        ],
        vec![
            StrategyId::Ma1,
            StrategyId::Ma5,
            StrategyId::MeanVarOptimization,
            StrategyId::AllrounderPref,
        ],
        vec![
            StrategyId::TopsisSynthesis,
            StrategyId::TopsisShannon,
            StrategyId::TopsisAhp,
            StrategyId::CareerPoints,
        ],
    ]
}
