//! Runs every code snippet in the guide (`book/`) as a doctest, so the book
//! can never drift from the library. Each chapter becomes one hidden module;
//! a failing snippet points at its chapter.

macro_rules! chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        mod $name {}
    };
}

chapter!(teams, "../../../book/src/teams.md");
chapter!(scoring, "../../../book/src/scoring.md");
chapter!(strategies, "../../../book/src/strategies.md");
chapter!(mcdm, "../../../book/src/mcdm.md");
chapter!(mean_variance, "../../../book/src/mean-variance.md");
chapter!(contests, "../../../book/src/contests.md");
chapter!(metrics, "../../../book/src/metrics.md");
chapter!(dynamics, "../../../book/src/dynamics.md");
chapter!(fixtures, "../../../book/src/fixtures.md");
