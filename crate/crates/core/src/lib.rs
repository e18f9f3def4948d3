//! # elevens
//!
//! A seedable laboratory for fantasy-cricket contests: build eleven-player
//! teams under fifteen selection strategies, score them against real or
//! synthetic match data, rank whole agent populations inside prize-band
//! contests, compute tournament-level skill metrics, and evolve the strategy
//! mix with a softmax-reweighted dynamic tournament.
//!
//! The crate is organized around the pipeline:
//!
//! 1. [`ingest`] — parse scorecard/career files or generate seeded synthetic
//!    tournaments.
//! 2. [`types`] — domain values: players, scorecards, fantasy teams,
//!    composition constraints.
//! 3. [`scoring`] — per-event point tables and team totals.
//! 4. [`strategy`] — the fifteen selection rules plus their machinery
//!    (recent form, career rates, TOPSIS/AHP/entropy, exact mean-variance
//!    optimization).
//! 5. [`contest`] — entry shuffling, ranking with the earlier-entry
//!    tie-break, and prize-band payoffs.
//! 6. [`sim`] — full seasons with persistent agent populations.
//! 7. [`metrics`] — the eight-metric matrix, its (0,1) normalization, the
//!    Average-4 composite, subset competitions and payoff summaries.
//! 8. [`dynamics`] — bootstrap-resampled iterations with softmax agent
//!    reallocation.
//!
//! Everything random flows from a single master seed through [`rng::StreamKey`]
//! paths, so identical inputs give identical results on any platform and
//! under any thread schedule.
//!
//! ```
//! use elevens::contest::{make_payoff_structure, ContestKind};
//!
//! let mega = make_payoff_structure(ContestKind::Mega);
//! assert_eq!(mega.prize_pool(), 527_245);
//! assert_eq!(mega.capacity(), 1500);
//! ```

pub mod contest;
pub mod dynamics;
pub mod error;
pub mod ingest;
pub mod metrics;
pub mod rng;
pub mod scoring;
pub mod sim;
pub mod strategy;
pub mod types;

pub use error::{Error, Result};

/// Version stamp written into every emitted report and record file.
pub const SCHEMA_VERSION: u32 = 1;

#[cfg(doctest)]
mod book;
