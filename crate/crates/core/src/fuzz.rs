//! Seeded random arcs and the fuzz campaign over both scans.
//!
//! Every trial draws from its own generator, seeded from `(seed, trial)`,
//! so trials can run in any order or in parallel with identical output.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arc::{backtracks, build_arc, segments_touch, PolygonalArc};
use crate::error::{Error, Result};
use crate::geometry::{Point2, Tolerances};
use crate::hull::melkman_hull;
use crate::pairs::{
    corollary_check, find_pair, jump_gap_distance, unique_count, verify_triple, ScanMode,
};
use crate::profile::{build_profile, SupportProfile};

/// Total rejected candidates allowed per trial.
pub const REJECTION_CAP: usize = 10_000;
/// Consecutive rejections of one vertex before the chain is restarted.
const STUCK_LIMIT: usize = 200;
/// Margin kept from both ends of the safe range.
pub const SAFE_MARGIN: f64 = 1e-3;
/// Distance to a jump-to-jump gap below which a trial counts as a near-tie.
pub const NEAR_TIE_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaPolicy {
    /// Uniform inside the mode's safe range, `SAFE_MARGIN` from both ends.
    SafeRange,
    /// Uniform over `(0, 2π)`.
    FullRange,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzConfig {
    pub trials: u64,
    pub seed: u64,
    /// Inclusive vertex-count range; the lower end is at least 3.
    pub vertex_range: (usize, usize),
    /// Vertices are drawn uniformly from `[0, coordinate_box]²`.
    pub coordinate_box: f64,
    pub delta_policy: DeltaPolicy,
    pub tol: Tolerances,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 100,
            seed: 42,
            vertex_range: (4, 12),
            coordinate_box: 1.0,
            delta_policy: DeltaPolicy::SafeRange,
            tol: Tolerances::default(),
        }
    }
}

impl FuzzConfig {
    pub fn is_valid(&self) -> bool {
        self.trials >= 1
            && self.vertex_range.0 >= 3
            && self.vertex_range.0 <= self.vertex_range.1
            && self.coordinate_box > 0.0
            && self.tol.is_valid()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for one trial: ChaCha8 seeded with
/// `splitmix64(seed ^ splitmix64(trial))`, on the given stream. Stream 0
/// draws the arc, stream 1 draws everything else.
pub fn trial_rng(seed: u64, trial: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial)));
    rng.set_stream(stream);
    rng
}

/// Whether appending `c` keeps the chain simple.
fn extends_simply(chain: &[Point2], c: Point2, tol: &Tolerances, slack: f64) -> bool {
    let last = *chain.last().unwrap();
    if last.distance(c) <= slack {
        return false;
    }
    let n = chain.len();
    if n >= 2 && backtracks(chain[n - 2], last, c, tol) {
        return false;
    }
    // every segment except the one ending at `last`
    (0..n.saturating_sub(2)).all(|i| !segments_touch(chain[i], chain[i + 1], last, c, tol, slack))
}

/// A deterministic random simple arc for `trial`.
///
/// Vertices are drawn uniformly in the coordinate box one at a time; a
/// candidate that would break simplicity is rejected and redrawn. A chain
/// that stalls is restarted. Straight arcs are rejected as a whole.
pub fn random_simple_arc(config: &FuzzConfig, trial: u64) -> Result<PolygonalArc> {
    let mut rng = trial_rng(config.seed, trial, 0);
    let (lo, hi) = config.vertex_range;
    let n = rng.gen_range(lo..=hi);
    let side = config.coordinate_box;
    let slack = config.tol.eps_touch * side * std::f64::consts::SQRT_2;
    let draw = |rng: &mut ChaCha8Rng| Point2::new(rng.gen::<f64>() * side, rng.gen::<f64>() * side);
    let mut rejections = 0usize;

    'restart: loop {
        let mut chain = vec![draw(&mut rng)];
        while chain.len() < n {
            let mut stuck = 0;
            loop {
                let c = draw(&mut rng);
                if extends_simply(&chain, c, &config.tol, slack) {
                    chain.push(c);
                    break;
                }
                rejections += 1;
                stuck += 1;
                if rejections >= REJECTION_CAP {
                    return Err(Error::GenerationExhausted { trial, rejections });
                }
                if stuck >= STUCK_LIMIT {
                    continue 'restart;
                }
            }
        }
        match build_arc(&chain, &config.tol) {
            Ok(arc) if melkman_hull(&arc, &config.tol).is_ok() => return Ok(arc),
            _ => {
                rejections += 1;
                if rejections >= REJECTION_CAP {
                    return Err(Error::GenerationExhausted { trial, rejections });
                }
            }
        }
    }
}

/// The range of `δ` where `mode` is guaranteed a strict triple, shrunk by
/// `margin` at both ends. May be empty (`lo > hi`).
pub fn safe_range(profile: &SupportProfile, mode: ScanMode, margin: f64) -> (f64, f64) {
    match mode {
        ScanMode::Mountain => (profile.delta_n + margin, TAU - profile.delta_1 - margin),
        ScanMode::Valley => (profile.delta_1 + margin, TAU - profile.delta_n - margin),
    }
}

/// Trials alternate between the two scans.
pub fn mode_for_trial(trial: u64) -> ScanMode {
    if trial.is_multiple_of(2) {
        ScanMode::Mountain
    } else {
        ScanMode::Valley
    }
}

/// One row of the fuzz report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FuzzRow {
    pub trial: u64,
    pub n: usize,
    pub delta: f64,
    pub mode: ScanMode,
    pub strict: bool,
    pub unique_count: usize,
    pub verified: bool,
    pub near_tie: bool,
    pub guaranteed: bool,
    /// `δ` lies in the mode's safe range (no margin).
    pub in_safe_range: bool,
    /// Both scans agree at `δ = π`.
    pub corollary_identical: bool,
}

impl FuzzRow {
    /// A missing strict triple, a failed verification, or a non-unique
    /// configuration away from ties.
    pub fn is_anomaly(&self) -> bool {
        !self.strict
            || !self.verified
            || (self.guaranteed && !self.near_tie && self.unique_count != 1)
    }
}

pub fn run_trial(config: &FuzzConfig, trial: u64) -> Result<FuzzRow> {
    let arc = random_simple_arc(config, trial)?;
    let hull = melkman_hull(&arc, &config.tol)?;
    let profile = build_profile(&hull)?;
    let mode = mode_for_trial(trial);
    let mut rng = trial_rng(config.seed, trial, 1);
    let (lo, hi) = safe_range(&profile, mode, SAFE_MARGIN);
    let delta = match config.delta_policy {
        DeltaPolicy::SafeRange if lo <= hi => rng.gen_range(lo..=hi),
        DeltaPolicy::SafeRange => 0.5 * (lo + hi),
        DeltaPolicy::FullRange => loop {
            let d = rng.gen::<f64>() * TAU;
            if d > 0.0 {
                break d;
            }
        },
        DeltaPolicy::Fixed(d) => d,
    };

    let pair = find_pair(&profile, &arc, delta, mode)?;
    let verified = verify_triple(&arc, &pair, &config.tol)?.passed();
    let count = unique_count(&profile, &arc, &pair)?;
    let corollary = corollary_check(&profile, &arc, PI)?;
    let (safe_lo, safe_hi) = safe_range(&profile, mode, 0.0);
    Ok(FuzzRow {
        trial,
        n: arc.len(),
        delta,
        mode,
        strict: pair.strict,
        unique_count: count,
        verified,
        near_tie: pair.near_tie || jump_gap_distance(&profile, delta) < NEAR_TIE_GAP,
        guaranteed: pair.guaranteed,
        in_safe_range: delta >= safe_lo && delta <= safe_hi,
        corollary_identical: corollary.identical,
    })
}

/// Runs every trial (in parallel) and returns the rows in trial order.
pub fn run_campaign(config: &FuzzConfig) -> Result<Vec<FuzzRow>> {
    (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect()
}

pub const CSV_HEADER: &str = "trial,n,delta,mode,strict,unique_count,verified,near_tie";

pub fn to_csv(rows: &[FuzzRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.trial, r.n, r.delta, r.mode, r.strict, r.unique_count, r.verified, r.near_tie
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub trials: usize,
    pub strict: usize,
    pub verified: usize,
    /// Strict, non-tied trials whose configuration is unique.
    pub unique: usize,
    pub uniqueness_checked: usize,
    pub corollary_identical: usize,
    pub anomalies: Vec<u64>,
    /// Anomalies whose `δ` lies inside the safe range.
    pub anomalies_in_safe_range: Vec<u64>,
}

pub fn summarize(rows: &[FuzzRow]) -> FuzzSummary {
    let checked: Vec<&FuzzRow> = rows.iter().filter(|r| r.strict && !r.near_tie).collect();
    let anomalies: Vec<&FuzzRow> = rows.iter().filter(|r| r.is_anomaly()).collect();
    FuzzSummary {
        trials: rows.len(),
        strict: rows.iter().filter(|r| r.strict).count(),
        verified: rows.iter().filter(|r| r.verified).count(),
        unique: checked.iter().filter(|r| r.unique_count == 1).count(),
        uniqueness_checked: checked.len(),
        corollary_identical: rows.iter().filter(|r| r.corollary_identical).count(),
        anomalies: anomalies.iter().map(|r| r.trial).collect(),
        anomalies_in_safe_range: anomalies
            .iter()
            .filter(|r| r.in_safe_range && !r.near_tie)
            .map(|r| r.trial)
            .collect(),
    }
}

impl std::fmt::Display for FuzzSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "strict existence: {}/{}", self.strict, self.trials)?;
        writeln!(f, "verified: {}/{}", self.verified, self.trials)?;
        writeln!(f, "uniqueness: {}/{}", self.unique, self.uniqueness_checked)?;
        writeln!(
            f,
            "corollary at pi: {}/{}",
            self.corollary_identical, self.trials
        )?;
        let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(
            f,
            "anomalies: {} [{}]",
            self.anomalies.len(),
            list(&self.anomalies)
        )?;
        write!(
            f,
            "anomalies inside safe range: {} [{}]",
            self.anomalies_in_safe_range.len(),
            list(&self.anomalies_in_safe_range)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let cfg = FuzzConfig {
            vertex_range: (4, 4),
            ..Default::default()
        };
        let a = random_simple_arc(&cfg, 0).unwrap();
        let b = random_simple_arc(&cfg, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
        let c = random_simple_arc(&cfg, 1).unwrap();
        assert_ne!(a.vertices(), c.vertices());
    }

    #[test]
    fn generated_arcs_validate() {
        let cfg = FuzzConfig::default();
        for t in 0..50 {
            let a = random_simple_arc(&cfg, t).unwrap();
            assert!((4..=12).contains(&a.len()));
            assert!(build_arc(a.vertices(), &cfg.tol).is_ok());
            assert!(melkman_hull(&a, &cfg.tol).is_ok());
        }
    }

    #[test]
    fn tiny_cap_exhausts() {
        // 3-vertex arcs from a box too small to hold anything but duplicates
        let cfg = FuzzConfig {
            coordinate_box: 1e-300,
            vertex_range: (12, 12),
            ..Default::default()
        };
        assert!(matches!(
            random_simple_arc(&cfg, 0),
            Err(Error::GenerationExhausted { .. })
        ));
    }

    #[test]
    fn csv_is_stable() {
        let cfg = FuzzConfig {
            trials: 6,
            ..Default::default()
        };
        let a = to_csv(&run_campaign(&cfg).unwrap());
        let b = to_csv(&run_campaign(&cfg).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with(CSV_HEADER));
        assert_eq!(a.lines().count(), 7);
    }

    #[test]
    fn config_validation() {
        assert!(FuzzConfig::default().is_valid());
        assert!(!FuzzConfig {
            vertex_range: (2, 5),
            ..Default::default()
        }
        .is_valid());
        assert!(!FuzzConfig {
            trials: 0,
            ..Default::default()
        }
        .is_valid());
    }
}
