//! Fantasy point computation: a configurable per-event point table, per-player
//! scores, per-match point tables and team totals.
//!
//! Scoring is additive — a team's score is exactly the sum of its members'
//! individual scores — and a pure function of the inputs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{FantasyTeam, MatchScorecard, PlayerId, PlayerMatchStats, PlayerRecord, PlayerRole};

/// Per-event point values.
///
/// Every value is configurable; [`ScoringRules::default`] is the table used
/// throughout the test-suite and documentation:
///
/// | event | points |
/// |---|---|
/// | run | 1 |
/// | four bonus | 1 |
/// | six bonus | 2 |
/// | fifty bonus | 8 |
/// | hundred bonus | 16 |
/// | duck penalty | -2 |
/// | wicket | 25 |
/// | maiden | 12 |
/// | three-wicket bonus | 4 |
/// | catch | 8 |
/// | stumping | 12 |
/// | run-out | 12 |
///
/// Milestone bonuses are cumulative (a century earns both the fifty and the
/// hundred bonus). The duck penalty applies to non-bowlers who bat and score
/// zero. A run-out awards the full value to the single credited fielder.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScoringRules {
    pub run: f64,
    pub four_bonus: f64,
    pub six_bonus: f64,
    pub fifty_bonus: f64,
    pub hundred_bonus: f64,
    pub duck_penalty: f64,
    pub wicket: f64,
    pub maiden: f64,
    pub three_wicket_bonus: f64,
    pub catch: f64,
    pub stumping: f64,
    pub runout: f64,
}

impl Default for ScoringRules {
    fn default() -> Self {
        ScoringRules {
            run: 1.0,
            four_bonus: 1.0,
            six_bonus: 2.0,
            fifty_bonus: 8.0,
            hundred_bonus: 16.0,
            duck_penalty: -2.0,
            wicket: 25.0,
            maiden: 12.0,
            three_wicket_bonus: 4.0,
            catch: 8.0,
            stumping: 12.0,
            runout: 12.0,
        }
    }
}

impl ScoringRules {
    pub fn validate(&self) -> Result<()> {
        let values = [
            self.run,
            self.four_bonus,
            self.six_bonus,
            self.fifty_bonus,
            self.hundred_bonus,
            self.duck_penalty,
            self.wicket,
            self.maiden,
            self.three_wicket_bonus,
            self.catch,
            self.stumping,
            self.runout,
        ];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("scoring rules contain a non-finite value".into()));
        }
        Ok(())
    }
}

/// Points scored by one player in one match.
pub fn score_player_match(stats: &PlayerMatchStats, role: PlayerRole, rules: &ScoringRules) -> f64 {
    batting_points(stats, role, rules) + bowling_points(stats, rules) + fielding_points(stats, rules)
}

fn batting_points(stats: &PlayerMatchStats, role: PlayerRole, rules: &ScoringRules) -> f64 {
    let mut points = stats.runs as f64 * rules.run
        + stats.fours as f64 * rules.four_bonus
        + stats.sixes as f64 * rules.six_bonus;
    if stats.runs >= 50 {
        points += rules.fifty_bonus;
    }
    if stats.runs >= 100 {
        points += rules.hundred_bonus;
    }
    if stats.did_bat && stats.runs == 0 && role != PlayerRole::Bowler {
        points += rules.duck_penalty;
    }
    points
}

fn bowling_points(stats: &PlayerMatchStats, rules: &ScoringRules) -> f64 {
    let mut points = stats.wickets as f64 * rules.wicket + stats.maidens as f64 * rules.maiden;
    if stats.wickets >= 3 {
        points += rules.three_wicket_bonus;
    }
    points
}

fn fielding_points(stats: &PlayerMatchStats, rules: &ScoringRules) -> f64 {
    stats.catches as f64 * rules.catch
        + stats.stumpings as f64 * rules.stumping
        + stats.runouts as f64 * rules.runout
}

/// Points for every rostered player of a match.
pub type PointTable = HashMap<PlayerId, f64>;

/// Score every rostered player of a match.
///
/// `players` must cover the roster — [`crate::types::build_selection_pool`]
/// output is exactly the right input.
pub fn build_match_point_table(
    scorecard: &MatchScorecard,
    players: &[PlayerRecord],
    rules: &ScoringRules,
) -> Result<PointTable> {
    let roles: HashMap<&PlayerId, PlayerRole> =
        players.iter().map(|p| (&p.id, p.role)).collect();
    let mut table = PointTable::with_capacity(scorecard.roster.len());
    for (id, stats) in &scorecard.roster {
        let role = roles.get(id).copied().ok_or_else(|| {
            Error::DataIntegrity(format!(
                "match {}: no player record for rostered {id}",
                scorecard.match_id
            ))
        })?;
        table.insert(id.clone(), score_player_match(stats, role, rules));
    }
    Ok(table)
}

/// Total points of a fantasy team: the sum of its members' entries.
pub fn score_team(team: &FantasyTeam, point_table: &PointTable) -> Result<f64> {
    let mut total = 0.0;
    for member in team.members() {
        total += point_table.get(member).ok_or_else(|| {
            Error::DataIntegrity(format!("team member {member} missing from point table"))
        })?;
    }
    Ok(total)
}
