//! Season-level simulation: run every match of a sequence as a contest with a
//! persistent agent population, accumulating per-agent payoffs.
//!
//! A *sequence* is an ordered list of indices into the dataset's matches —
//! the dataset chronology itself, or a bootstrap resample of it. Learning
//! strategies treat sequence position as time. Contests at different
//! positions are independent given the sequence (selection only reads earlier
//! scorecards, which are data, not simulation output), so they run in
//! parallel with deterministic results.

use rayon::prelude::*;

use crate::contest::{run_contest, ContestEnv, ContestResult, PayoffStructure, StrategyRoster};
use crate::error::{Error, Result};
use crate::rng::{tag, StreamKey};
use crate::scoring::{build_match_point_table, PointTable, ScoringRules};
use crate::strategy::{SeasonHistory, StrategyParams};
use crate::types::{
    build_selection_pool, pool_teams, ConstraintSet, PlayerRecord, TeamId, TournamentDataset,
};

/// All contests of one season plus per-agent payoff totals.
#[derive(Clone, Debug)]
pub struct SeasonOutcome {
    pub roster: StrategyRoster,
    /// One result per sequence position, in order.
    pub contests: Vec<ContestResult>,
    /// Season-total net payoff per agent, in canonical agent order.
    pub agent_totals: Vec<i64>,
}

struct MatchFixture {
    pool: Vec<PlayerRecord>,
    teams: [TeamId; 2],
    point_table: PointTable,
}

/// The identity sequence: the dataset's own chronology.
pub fn identity_sequence(dataset: &TournamentDataset) -> Vec<usize> {
    (0..dataset.matches.len()).collect()
}

/// Simulate every position of `sequence` as a full contest.
///
/// Byte-stable: the outcome is a pure function of the inputs and `key`,
/// independent of thread scheduling.
pub fn run_season(
    dataset: &TournamentDataset,
    sequence: &[usize],
    roster: &StrategyRoster,
    structure: &PayoffStructure,
    params: &StrategyParams,
    rules: &ScoringRules,
    constraints: &ConstraintSet,
    key: StreamKey,
) -> Result<SeasonOutcome> {
    if sequence.iter().any(|&idx| idx >= dataset.matches.len()) {
        return Err(Error::Parameter(format!(
            "sequence references match index beyond the {} available",
            dataset.matches.len()
        )));
    }

    let player_table = dataset.player_table();
    let careers = dataset.career_table();

    // Pool, team pair and point table per distinct match in the sequence.
    let mut fixtures: Vec<Option<MatchFixture>> = Vec::new();
    fixtures.resize_with(dataset.matches.len(), || None);
    for &idx in sequence {
        if fixtures[idx].is_none() {
            let scorecard = &dataset.matches[idx];
            let pool = build_selection_pool(scorecard, &dataset.players)?;
            let teams = pool_teams(&pool)?;
            let point_table = build_match_point_table(scorecard, &pool, rules)?;
            fixtures[idx] = Some(MatchFixture { pool, teams, point_table });
        }
    }

    let scorecards: Vec<&crate::types::MatchScorecard> =
        sequence.iter().map(|&idx| &dataset.matches[idx]).collect();
    let history = SeasonHistory::build(&scorecards, &player_table, rules);

    let season_key = key.child(tag::SEASON);
    let contests: Vec<ContestResult> = sequence
        .par_iter()
        .enumerate()
        .map(|(position, &idx)| {
            let fixture = fixtures[idx].as_ref().expect("fixture precomputed");
            let env = ContestEnv {
                match_id: &dataset.matches[idx].match_id,
                pool: &fixture.pool,
                teams: &fixture.teams,
                history: history.before(position as u32),
                careers: &careers,
                rules,
                params,
                constraints,
                point_table: &fixture.point_table,
            };
            run_contest(&env, roster, structure, season_key.child(position as u64))
        })
        .collect::<Result<_>>()?;

    let total_agents = roster.total() as usize;
    let mut agent_totals = vec![0i64; total_agents];
    for contest in &contests {
        debug_assert_eq!(contest.outcomes.len(), total_agents);
        for (idx, outcome) in contest.outcomes.iter().enumerate() {
            agent_totals[idx] += outcome.net_payoff;
        }
    }

    Ok(SeasonOutcome { roster: roster.clone(), contests, agent_totals })
}

/// Run a single match of the dataset chronology as a contest, with history
/// equal to all earlier matches. Convenience wrapper over the season driver's
/// machinery for tests and exploration.
pub fn run_match_contest(
    dataset: &TournamentDataset,
    match_position: usize,
    roster: &StrategyRoster,
    structure: &PayoffStructure,
    params: &StrategyParams,
    rules: &ScoringRules,
    constraints: &ConstraintSet,
    key: StreamKey,
) -> Result<ContestResult> {
    if match_position >= dataset.matches.len() {
        return Err(Error::Parameter(format!(
            "match position {match_position} beyond the {} available",
            dataset.matches.len()
        )));
    }
    let player_table = dataset.player_table();
    let careers = dataset.career_table();
    let scorecard = &dataset.matches[match_position];
    let pool = build_selection_pool(scorecard, &dataset.players)?;
    let teams = pool_teams(&pool)?;
    let point_table = build_match_point_table(scorecard, &pool, rules)?;
    let scorecards: Vec<&crate::types::MatchScorecard> = dataset.matches.iter().collect();
    let history = SeasonHistory::build(&scorecards, &player_table, rules);
    let env = ContestEnv {
        match_id: &scorecard.match_id,
        pool: &pool,
        teams: &teams,
        history: history.before(match_position as u32),
        careers: &careers,
        rules,
        params,
        constraints,
        point_table: &point_table,
    };
    run_contest(&env, roster, structure, key.child(tag::SEASON).child(match_position as u64))
}
