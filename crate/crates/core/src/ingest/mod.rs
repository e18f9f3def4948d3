//! File ingestion and emission.
//!
//! Two file formats are normative:
//!
//! * **Scorecard file** — UTF-8, newline-delimited JSON, one record per
//!   (match, player) with keys `match_id, match_index, team_a, team_b,
//!   player_id, team_id, role, runs, balls_faced, fours, sixes, did_bat,
//!   wickets, balls_bowled, maidens, runs_conceded, catches, stumpings,
//!   runouts`.
//! * **Career file** — UTF-8 CSV with header `player_id, innings_batted,
//!   innings_bowled, career_runs, batting_average, fours, sixes, wickets,
//!   maidens, catches, stumpings`.
//!
//! Parsing is strict about dataset invariants (unknown players, duplicate
//! ids, impossible stat lines are integrity errors) but lenient about role
//! spelling, which goes through [`PlayerRole::parse`].

pub mod fixture;

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{
    CareerStats, MatchScorecard, PlayerId, PlayerMatchStats, PlayerRecord, PlayerRole, TeamId,
    TournamentDataset,
};

pub use fixture::{generate_fixture, FixtureConfig, RoleMix, SkillProfile};

/// Convert decimal overs ("3.4" = 3 overs and 4 balls) to balls.
///
/// The digit after the point counts balls (0-5), not tenths; going through
/// floating point here is a classic source of off-by-one-ball bugs.
pub fn balls_from_overs(overs: &str) -> Result<u32> {
    let text = overs.trim();
    let (whole, balls) = match text.split_once('.') {
        Some((whole, fraction)) => (whole, fraction),
        None => (text, "0"),
    };
    let whole: u32 = whole
        .parse()
        .map_err(|_| Error::parse("overs", format!("invalid overs value {overs:?}")))?;
    let balls: u32 = balls
        .parse()
        .map_err(|_| Error::parse("overs", format!("invalid overs value {overs:?}")))?;
    if balls > 5 {
        return Err(Error::parse(
            "overs",
            format!("ball digit must be 0-5 in {overs:?}"),
        ));
    }
    Ok(whole * 6 + balls)
}

// ---------------------------------------------------------------------------
// Scorecard records
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct ScorecardRow {
    match_id: String,
    match_index: u32,
    team_a: String,
    team_b: String,
    player_id: String,
    team_id: String,
    role: String,
    runs: u32,
    balls_faced: u32,
    fours: u32,
    sixes: u32,
    did_bat: bool,
    wickets: u32,
    balls_bowled: u32,
    maidens: u32,
    runs_conceded: u32,
    catches: u32,
    stumpings: u32,
    runouts: u32,
}

fn parse_rows(content: &str, source: &str) -> Result<Vec<(usize, ScorecardRow)>> {
    let mut rows = Vec::new();
    for (line_no, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: ScorecardRow = serde_json::from_str(line).map_err(|err| {
            Error::parse(format!("{source}:{}", line_no + 1), err.to_string())
        })?;
        rows.push((line_no + 1, row));
    }
    Ok(rows)
}

struct AssembledScorecards {
    matches: Vec<MatchScorecard>,
    players: Vec<PlayerRecord>,
}

fn assemble(rows: Vec<(usize, ScorecardRow)>, source: &str) -> Result<AssembledScorecards> {
    // Group rows per match in first-seen order, checking header consistency.
    let mut order: Vec<String> = Vec::new();
    let mut headers: HashMap<String, (u32, TeamId, TeamId)> = HashMap::new();
    let mut rosters: HashMap<String, Vec<(PlayerId, PlayerMatchStats)>> = HashMap::new();
    let mut players: HashMap<PlayerId, PlayerRecord> = HashMap::new();

    for (line_no, row) in rows {
        let locator = format!("{source}:{line_no}");
        let role = PlayerRole::parse(&row.role)
            .map_err(|err| Error::parse(&locator, err.to_string()))?;
        let player_id = PlayerId::from(row.player_id.trim());
        let team_id = TeamId::from(row.team_id.trim());
        let team_a = TeamId::from(row.team_a.trim());
        let team_b = TeamId::from(row.team_b.trim());

        match headers.get(&row.match_id) {
            None => {
                order.push(row.match_id.clone());
                headers.insert(
                    row.match_id.clone(),
                    (row.match_index, team_a.clone(), team_b.clone()),
                );
            }
            Some((index, a, b)) => {
                if *index != row.match_index || *a != team_a || *b != team_b {
                    return Err(Error::DataIntegrity(format!(
                        "{locator}: match {} header disagrees with earlier records",
                        row.match_id
                    )));
                }
            }
        }

        if team_id != team_a && team_id != team_b {
            return Err(Error::DataIntegrity(format!(
                "{locator}: player {player_id} team {team_id} is not playing in {}",
                row.match_id
            )));
        }

        let stats = PlayerMatchStats {
            runs: row.runs,
            balls_faced: row.balls_faced,
            fours: row.fours,
            sixes: row.sixes,
            did_bat: row.did_bat,
            wickets: row.wickets,
            balls_bowled: row.balls_bowled,
            maidens: row.maidens,
            runs_conceded: row.runs_conceded,
            catches: row.catches,
            stumpings: row.stumpings,
            runouts: row.runouts,
        };
        stats
            .validate()
            .map_err(|msg| Error::DataIntegrity(format!("{locator}: {msg}")))?;

        match players.get(&player_id) {
            None => {
                players.insert(
                    player_id.clone(),
                    PlayerRecord {
                        id: player_id.clone(),
                        name: player_id.to_string(),
                        role,
                        team_id: team_id.clone(),
                    },
                );
            }
            Some(existing) => {
                if existing.role != role {
                    return Err(Error::DataIntegrity(format!(
                        "{locator}: player {player_id} role {role} conflicts with {}",
                        existing.role
                    )));
                }
                if existing.team_id != team_id {
                    return Err(Error::DataIntegrity(format!(
                        "{locator}: player {player_id} team {team_id} conflicts with {}",
                        existing.team_id
                    )));
                }
            }
        }

        let roster = rosters.entry(row.match_id.clone()).or_default();
        if roster.iter().any(|(id, _)| *id == player_id) {
            return Err(Error::DataIntegrity(format!(
                "{locator}: player {player_id} appears twice in match {}",
                row.match_id
            )));
        }
        roster.push((player_id, stats));
    }

    let mut matches: Vec<MatchScorecard> = order
        .into_iter()
        .map(|match_id| {
            let (match_index, team_a, team_b) = headers.remove(&match_id).unwrap();
            let roster = rosters.remove(&match_id).unwrap();
            MatchScorecard { match_id, match_index, team_a, team_b, roster }
        })
        .collect();
    matches.sort_by_key(|m| m.match_index);

    let mut player_list: Vec<PlayerRecord> = players.into_values().collect();
    player_list.sort_by(|a, b| a.id.cmp(&b.id));

    Ok(AssembledScorecards { matches, players: player_list })
}

/// Parse a scorecard file into chronologically ordered scorecards.
pub fn parse_scorecards(path: &Path) -> Result<Vec<MatchScorecard>> {
    let content = fs::read_to_string(path).map_err(|err| Error::io(path, err))?;
    parse_scorecards_str(&content, &path.display().to_string())
}

/// As [`parse_scorecards`], from an in-memory string.
pub fn parse_scorecards_str(content: &str, source: &str) -> Result<Vec<MatchScorecard>> {
    let assembled = assemble(parse_rows(content, source)?, source)?;
    let table = assembled.players.iter().map(|p| (p.id.clone(), p.clone())).collect();
    let mut last_index = None;
    for scorecard in &assembled.matches {
        scorecard.validate(&table)?;
        if let Some(prev) = last_index {
            if scorecard.match_index <= prev {
                return Err(Error::DataIntegrity(format!(
                    "match {} reuses or decreases match_index {}",
                    scorecard.match_id, scorecard.match_index
                )));
            }
        }
        last_index = Some(scorecard.match_index);
    }
    Ok(assembled.matches)
}

/// Serialize scorecards to the newline-delimited record format.
///
/// `players` supplies each rostered player's role and team.
pub fn serialize_scorecards(
    matches: &[MatchScorecard],
    players: &[PlayerRecord],
) -> Result<String> {
    let by_id: HashMap<&PlayerId, &PlayerRecord> = players.iter().map(|p| (&p.id, p)).collect();
    let mut out = String::new();
    for scorecard in matches {
        for (player_id, stats) in &scorecard.roster {
            let record = by_id.get(player_id).ok_or_else(|| {
                Error::DataIntegrity(format!(
                    "match {}: no player record for {player_id}",
                    scorecard.match_id
                ))
            })?;
            let row = ScorecardRow {
                match_id: scorecard.match_id.clone(),
                match_index: scorecard.match_index,
                team_a: scorecard.team_a.to_string(),
                team_b: scorecard.team_b.to_string(),
                player_id: player_id.to_string(),
                team_id: record.team_id.to_string(),
                role: record.role.name().to_string(),
                runs: stats.runs,
                balls_faced: stats.balls_faced,
                fours: stats.fours,
                sixes: stats.sixes,
                did_bat: stats.did_bat,
                wickets: stats.wickets,
                balls_bowled: stats.balls_bowled,
                maidens: stats.maidens,
                runs_conceded: stats.runs_conceded,
                catches: stats.catches,
                stumpings: stats.stumpings,
                runouts: stats.runouts,
            };
            out.push_str(&serde_json::to_string(&row).expect("rows serialize"));
            out.push('\n');
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Career records
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct CareerRow {
    player_id: String,
    innings_batted: u32,
    innings_bowled: u32,
    career_runs: u32,
    batting_average: Option<f64>,
    fours: u32,
    sixes: u32,
    wickets: u32,
    maidens: u32,
    catches: u32,
    stumpings: u32,
}

/// Parse a career-stats CSV.
pub fn parse_career_stats(path: &Path) -> Result<Vec<CareerStats>> {
    let content = fs::read_to_string(path).map_err(|err| Error::io(path, err))?;
    parse_career_stats_str(&content, &path.display().to_string())
}

/// As [`parse_career_stats`], from an in-memory string.
pub fn parse_career_stats_str(content: &str, source: &str) -> Result<Vec<CareerStats>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(content.as_bytes());
    let mut careers = Vec::new();
    let mut seen: HashMap<PlayerId, usize> = HashMap::new();
    for (idx, row) in reader.deserialize::<CareerRow>().enumerate() {
        let locator = format!("{source}:record {}", idx + 1);
        let row = row.map_err(|err| Error::parse(&locator, err.to_string()))?;
        let player_id = PlayerId::from(row.player_id.as_str());
        if seen.insert(player_id.clone(), idx).is_some() {
            return Err(Error::DataIntegrity(format!(
                "{locator}: duplicate career row for {player_id}"
            )));
        }
        let career = CareerStats {
            player_id,
            innings_batted: row.innings_batted,
            innings_bowled: row.innings_bowled,
            career_runs: row.career_runs,
            // A blank average with no innings batted is a zero average.
            batting_average: row.batting_average.unwrap_or(0.0),
            career_fours: row.fours,
            career_sixes: row.sixes,
            career_wickets: row.wickets,
            career_maidens: row.maidens,
            career_catches: row.catches,
            career_stumpings: row.stumpings,
        };
        career.validate()?;
        careers.push(career);
    }
    Ok(careers)
}

/// Serialize careers to the CSV format.
pub fn serialize_career_stats(careers: &[CareerStats]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for career in careers {
        let row = CareerRow {
            player_id: career.player_id.to_string(),
            innings_batted: career.innings_batted,
            innings_bowled: career.innings_bowled,
            career_runs: career.career_runs,
            batting_average: Some(career.batting_average),
            fours: career.career_fours,
            sixes: career.career_sixes,
            wickets: career.career_wickets,
            maidens: career.career_maidens,
            catches: career.career_catches,
            stumpings: career.career_stumpings,
        };
        writer.serialize(row).map_err(|err| Error::parse("career csv", err.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|err| Error::parse("career csv", err.to_string()))?;
    String::from_utf8(bytes).map_err(|err| Error::parse("career csv", err.to_string()))
}

// ---------------------------------------------------------------------------
// Whole datasets
// ---------------------------------------------------------------------------

/// Load a complete dataset from a scorecard file and a career file.
///
/// Player identities derive from the scorecard records. Players without a
/// career row get all-zero careers; both that and career rows for unknown
/// players are reported in the warning list.
pub fn load_dataset(
    scorecards_path: &Path,
    careers_path: &Path,
) -> Result<(TournamentDataset, Vec<String>)> {
    let content =
        fs::read_to_string(scorecards_path).map_err(|err| Error::io(scorecards_path, err))?;
    let assembled = assemble(
        parse_rows(&content, &scorecards_path.display().to_string())?,
        &scorecards_path.display().to_string(),
    )?;
    let careers = parse_career_stats(careers_path)?;

    let mut warnings = Vec::new();
    let known: HashMap<&PlayerId, ()> = assembled.players.iter().map(|p| (&p.id, ())).collect();
    let with_career: HashMap<&PlayerId, ()> = careers.iter().map(|c| (&c.player_id, ())).collect();
    for player in &assembled.players {
        if !with_career.contains_key(&player.id) {
            warnings.push(format!("player {} has no career row; using zeros", player.id));
        }
    }
    for career in &careers {
        if !known.contains_key(&career.player_id) {
            warnings.push(format!(
                "career row for {} matches no rostered player",
                career.player_id
            ));
        }
    }

    let dataset =
        TournamentDataset { players: assembled.players, careers, matches: assembled.matches };
    dataset.validate()?;
    Ok((dataset, warnings))
}

/// Write a dataset to the two normative files.
pub fn write_dataset(
    dataset: &TournamentDataset,
    scorecards_path: &Path,
    careers_path: &Path,
) -> Result<()> {
    let scorecards = serialize_scorecards(&dataset.matches, &dataset.players)?;
    fs::write(scorecards_path, scorecards).map_err(|err| Error::io(scorecards_path, err))?;
    let careers = serialize_career_stats(&dataset.careers)?;
    fs::write(careers_path, careers).map_err(|err| Error::io(careers_path, err))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_row(match_id: &str, index: u32, player: &str, team: &str, role: &str) -> String {
        format!(
            concat!(
                r#"{{"match_id":"{}","match_index":{},"team_a":"TA","team_b":"TB","#,
                r#""player_id":"{}","team_id":"{}","role":"{}","runs":10,"balls_faced":8,"#,
                r#""fours":1,"sixes":1,"did_bat":true,"wickets":0,"balls_bowled":0,"maidens":0,"#,
                r#""runs_conceded":0,"catches":0,"stumpings":0,"runouts":0}}"#
            ),
            match_id, index, player, team, role
        )
    }

    fn full_match_rows(match_id: &str, index: u32) -> Vec<String> {
        let mut rows = Vec::new();
        for team in ["TA", "TB"] {
            for (role, count) in
                [("Batter", 5), ("Bowler", 4), ("Allrounder", 1), ("Wicketkeeper", 1)]
            {
                for i in 0..count {
                    let player = format!("{team}-{}{i}", &role[..3].to_uppercase());
                    rows.push(sample_row(match_id, index, &player, team, role));
                }
            }
        }
        rows
    }

    #[test]
    fn parse_single_match() {
        let content = full_match_rows("M1", 1).join("\n");
        let matches = parse_scorecards_str(&content, "test").unwrap();
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].roster.len(), 22);
    }

    #[test]
    fn role_whitespace_is_trimmed() {
        let mut rows = full_match_rows("M1", 1);
        rows[0] = rows[0].replace("\"Batter\"", "\"Batter \"");
        let matches = parse_scorecards_str(&rows.join("\n"), "test").unwrap();
        assert_eq!(matches.len(), 1);
    }

    #[test]
    fn impossible_boundary_count_is_integrity_error() {
        let mut rows = full_match_rows("M1", 1);
        // 4 fours + 2 sixes = 28 boundary runs from only 10 runs.
        rows[0] = rows[0].replace("\"fours\":1,\"sixes\":1", "\"fours\":4,\"sixes\":2");
        let err = parse_scorecards_str(&rows.join("\n"), "test");
        assert!(matches!(err, Err(Error::DataIntegrity(_))));
    }

    #[test]
    fn malformed_json_names_line() {
        let mut rows = full_match_rows("M1", 1);
        rows[3] = "{not json".to_string();
        match parse_scorecards_str(&rows.join("\n"), "cards") {
            Err(Error::Parse { locator, .. }) => assert_eq!(locator, "cards:4"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn career_parsing_defaults_blank_average() {
        let content = "\
player_id,innings_batted,innings_bowled,career_runs,batting_average,fours,sixes,wickets,maidens,catches,stumpings
P1,10,0,300,30.5,25,10,0,0,5,0
P2,0,120,10,,1,0,150,12,30,0
";
        let careers = parse_career_stats_str(content, "careers").unwrap();
        assert_eq!(careers.len(), 2);
        assert_eq!(careers[1].batting_average, 0.0);
        assert_eq!(careers[0].batting_average, 30.5);
    }

    #[test]
    fn duplicate_career_rows_rejected() {
        let content = "\
player_id,innings_batted,innings_bowled,career_runs,batting_average,fours,sixes,wickets,maidens,catches,stumpings
P1,10,0,300,30.0,25,10,0,0,5,0
P1,11,0,301,31.0,25,10,0,0,5,0
";
        assert!(matches!(
            parse_career_stats_str(content, "careers"),
            Err(Error::DataIntegrity(_))
        ));
    }

    #[test]
    fn careers_round_trip() {
        let careers = vec![
            CareerStats {
                player_id: PlayerId::from("P1"),
                innings_batted: 10,
                innings_bowled: 2,
                career_runs: 300,
                batting_average: 30.5,
                career_fours: 25,
                career_sixes: 10,
                career_wickets: 1,
                career_maidens: 0,
                career_catches: 5,
                career_stumpings: 0,
            },
            CareerStats::zero(PlayerId::from("P2")),
        ];
        let text = serialize_career_stats(&careers).unwrap();
        let parsed = parse_career_stats_str(&text, "roundtrip").unwrap();
        assert_eq!(parsed, careers);
    }

    #[test]
    fn overs_conversion() {
        assert_eq!(balls_from_overs("3.4").unwrap(), 22);
        assert_eq!(balls_from_overs("4").unwrap(), 24);
        assert_eq!(balls_from_overs("0.5").unwrap(), 5);
        assert!(balls_from_overs("3.7").is_err());
        assert!(balls_from_overs("x").is_err());
    }
}
