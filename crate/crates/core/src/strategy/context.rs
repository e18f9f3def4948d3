//! What a strategy is allowed to see when picking a team: the selection pool,
//! derived views of earlier matches in the season, career figures, the point
//! table in force, and teams already entered in the current contest.
//!
//! The current match's own stat lines are deliberately absent — selection
//! happens before play.

use std::collections::HashMap;

use crate::scoring::{score_player_match, ScoringRules};
use crate::types::{
    CareerStats, CareerTable, ConstraintSet, FantasyTeam, MatchScorecard, PlayerId, PlayerRecord,
    TeamId,
};

/// Cumulative per-player figures over the matches played so far in a season.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TournamentTotals {
    pub runs: u32,
    pub wickets: u32,
    /// Fours plus sixes.
    pub boundaries: u32,
}

/// Criterion inputs derived from season history for MCDM-based selection.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HistoryFigures {
    /// Runs per innings batted; 0 before the first innings.
    pub batting_average: f64,
    /// Runs per 100 balls faced; 0 before the first ball.
    pub strike_rate: f64,
    pub wickets: f64,
    /// Runs conceded per over; 0 before the first ball bowled.
    pub economy: f64,
}

#[derive(Clone, Debug, Default)]
struct PlayerTrack {
    /// Season positions (0-based) at which the player appeared, ascending.
    positions: Vec<u32>,
    // Prefix sums over appearances; index 0 is the empty prefix.
    points: Vec<f64>,
    points_sq: Vec<f64>,
    runs: Vec<u32>,
    balls_faced: Vec<u32>,
    innings_batted: Vec<u32>,
    boundaries: Vec<u32>,
    wickets: Vec<u32>,
    runs_conceded: Vec<u32>,
    balls_bowled: Vec<u32>,
}

impl PlayerTrack {
    fn new() -> Self {
        PlayerTrack {
            positions: Vec::new(),
            points: vec![0.0],
            points_sq: vec![0.0],
            runs: vec![0],
            balls_faced: vec![0],
            innings_batted: vec![0],
            boundaries: vec![0],
            wickets: vec![0],
            runs_conceded: vec![0],
            balls_bowled: vec![0],
        }
    }

    fn push(&mut self, position: u32, points: f64, stats: &crate::types::PlayerMatchStats) {
        self.positions.push(position);
        self.points.push(self.points.last().unwrap() + points);
        self.points_sq.push(self.points_sq.last().unwrap() + points * points);
        self.runs.push(self.runs.last().unwrap() + stats.runs);
        self.balls_faced.push(self.balls_faced.last().unwrap() + stats.balls_faced);
        self.innings_batted
            .push(self.innings_batted.last().unwrap() + u32::from(stats.did_bat));
        self.boundaries.push(self.boundaries.last().unwrap() + stats.fours + stats.sixes);
        self.wickets.push(self.wickets.last().unwrap() + stats.wickets);
        self.runs_conceded.push(self.runs_conceded.last().unwrap() + stats.runs_conceded);
        self.balls_bowled.push(self.balls_bowled.last().unwrap() + stats.balls_bowled);
    }

    /// Number of appearances strictly before `position`.
    fn appearances_before(&self, position: u32) -> usize {
        self.positions.partition_point(|&p| p < position)
    }
}

/// Indexed per-player appearance history for one season sequence.
///
/// A season is an ordered sequence of scorecards — the dataset's own
/// chronology or a bootstrap resample of it. Sequence position plays the role
/// of time: the view at position `k` exposes exactly positions `0..k`.
#[derive(Clone, Debug)]
pub struct SeasonHistory {
    tracks: HashMap<PlayerId, PlayerTrack>,
    length: u32,
}

impl SeasonHistory {
    /// Score and index every appearance in the sequence.
    pub fn build(
        sequence: &[&MatchScorecard],
        players: &HashMap<PlayerId, PlayerRecord>,
        rules: &ScoringRules,
    ) -> Self {
        let mut tracks: HashMap<PlayerId, PlayerTrack> = HashMap::new();
        for (position, scorecard) in sequence.iter().enumerate() {
            for (id, stats) in &scorecard.roster {
                let role = players
                    .get(id)
                    .map(|p| p.role)
                    .unwrap_or(crate::types::PlayerRole::Batter);
                let points = score_player_match(stats, role, rules);
                tracks
                    .entry(id.clone())
                    .or_insert_with(PlayerTrack::new)
                    .push(position as u32, points, stats);
            }
        }
        SeasonHistory { tracks, length: sequence.len() as u32 }
    }

    pub fn len(&self) -> u32 {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    /// View of everything strictly before `position`.
    pub fn before(&self, position: u32) -> HistoryAt<'_> {
        HistoryAt { season: self, position }
    }
}

/// Read-only view of a season prefix.
#[derive(Clone, Copy, Debug)]
pub struct HistoryAt<'a> {
    season: &'a SeasonHistory,
    position: u32,
}

impl<'a> HistoryAt<'a> {
    pub fn position(&self) -> u32 {
        self.position
    }

    pub fn appearances(&self, id: &PlayerId) -> u32 {
        self.season
            .tracks
            .get(id)
            .map_or(0, |t| t.appearances_before(self.position) as u32)
    }

    /// Mean fantasy points over the player's last `min(window, appearances)`
    /// appearances; `fallback` when the player has not appeared yet.
    pub fn form(&self, id: &PlayerId, window: u32, fallback: f64) -> f64 {
        self.form_stats(id, window).map_or(fallback, |(mean, _)| mean)
    }

    /// Mean and population variance of points over the last
    /// `min(window, appearances)` appearances; `None` before the first
    /// appearance. Variance is 0 when fewer than two appearances enter the
    /// window.
    pub fn form_stats(&self, id: &PlayerId, window: u32) -> Option<(f64, f64)> {
        let track = self.season.tracks.get(id)?;
        let seen = track.appearances_before(self.position);
        if seen == 0 {
            return None;
        }
        let k = (window as usize).min(seen).max(1);
        let sum = track.points[seen] - track.points[seen - k];
        let sum_sq = track.points_sq[seen] - track.points_sq[seen - k];
        let mean = sum / k as f64;
        let variance = if k < 2 { 0.0 } else { (sum_sq / k as f64 - mean * mean).max(0.0) };
        Some((mean, variance))
    }

    pub fn totals(&self, id: &PlayerId) -> TournamentTotals {
        let Some(track) = self.season.tracks.get(id) else {
            return TournamentTotals::default();
        };
        let seen = track.appearances_before(self.position);
        TournamentTotals {
            runs: track.runs[seen],
            wickets: track.wickets[seen],
            boundaries: track.boundaries[seen],
        }
    }

    pub fn figures(&self, id: &PlayerId) -> HistoryFigures {
        let Some(track) = self.season.tracks.get(id) else {
            return HistoryFigures::default();
        };
        let seen = track.appearances_before(self.position);
        let runs = track.runs[seen] as f64;
        let innings = track.innings_batted[seen];
        let balls_faced = track.balls_faced[seen];
        let balls_bowled = track.balls_bowled[seen];
        HistoryFigures {
            batting_average: if innings > 0 { runs / innings as f64 } else { 0.0 },
            strike_rate: if balls_faced > 0 { 100.0 * runs / balls_faced as f64 } else { 0.0 },
            wickets: track.wickets[seen] as f64,
            economy: if balls_bowled > 0 {
                6.0 * track.runs_conceded[seen] as f64 / balls_bowled as f64
            } else {
                0.0
            },
        }
    }
}

/// Mean fantasy points over a player's last `min(window, appearances)`
/// appearances in a scorecard slice, scoring each appearance with `rules`;
/// `fallback` when the player never appears.
///
/// This is the direct, single-player form computation; season drivers use the
/// indexed [`SeasonHistory`] equivalent, which must agree with it.
pub fn compute_form(
    player: &PlayerRecord,
    history: &[MatchScorecard],
    rules: &ScoringRules,
    window: u32,
    fallback: f64,
) -> f64 {
    let points: Vec<f64> = history
        .iter()
        .flat_map(|scorecard| {
            scorecard
                .roster
                .iter()
                .filter(|(id, _)| *id == player.id)
                .map(|(_, stats)| score_player_match(stats, player.role, rules))
        })
        .collect();
    if points.is_empty() {
        return fallback;
    }
    let k = (window as usize).min(points.len()).max(1);
    points[points.len() - k..].iter().sum::<f64>() / k as f64
}

/// Per-innings fantasy point rate computed from career totals.
///
/// Batting events divide by innings batted, bowling events by innings bowled,
/// fielding events by whichever is larger; every divisor is floored at 1 so a
/// blank career rates 0. Per-innings milestones (fifties, ducks) cannot be
/// reconstructed from totals and do not contribute.
pub fn career_point_rate(career: &CareerStats, rules: &ScoringRules) -> f64 {
    let batting_events = career.career_runs as f64 * rules.run
        + career.career_fours as f64 * rules.four_bonus
        + career.career_sixes as f64 * rules.six_bonus;
    let bowling_events =
        career.career_wickets as f64 * rules.wicket + career.career_maidens as f64 * rules.maiden;
    let fielding_events = career.career_catches as f64 * rules.catch
        + career.career_stumpings as f64 * rules.stumping;
    batting_events / career.innings_batted.max(1) as f64
        + bowling_events / career.innings_bowled.max(1) as f64
        + fielding_events / career.innings_batted.max(career.innings_bowled).max(1) as f64
}

/// Teams already entered in the running contest, with an incrementally
/// maintained popularity count per player.
#[derive(Clone, Debug, Default)]
pub struct EntryBoard {
    teams: Vec<FantasyTeam>,
    counts: HashMap<PlayerId, u32>,
}

impl EntryBoard {
    pub fn new() -> Self {
        EntryBoard::default()
    }

    pub fn push(&mut self, team: FantasyTeam) {
        for member in team.members() {
            *self.counts.entry(member.clone()).or_insert(0) += 1;
        }
        self.teams.push(team);
    }

    pub fn teams(&self) -> &[FantasyTeam] {
        &self.teams
    }

    pub fn is_empty(&self) -> bool {
        self.teams.is_empty()
    }

    pub fn len(&self) -> usize {
        self.teams.len()
    }

    /// How many entered teams include the player.
    pub fn popularity(&self, id: &PlayerId) -> u32 {
        self.counts.get(id).copied().unwrap_or(0)
    }
}

/// Everything a strategy may consult when selecting a team for one match.
#[derive(Clone, Copy)]
pub struct MatchContext<'a> {
    /// Selection pool for the match, sorted by player id.
    pub pool: &'a [PlayerRecord],
    /// The two competing real teams.
    pub teams: &'a [TeamId; 2],
    /// View of all earlier matches in the current season sequence.
    pub history: HistoryAt<'a>,
    pub careers: &'a CareerTable,
    /// Entries already made in this contest, in entry order.
    pub prior_entries: &'a EntryBoard,
    pub rules: &'a ScoringRules,
    /// Baseline composition constraints; strategies may tighten them.
    pub constraints: &'a ConstraintSet,
}
