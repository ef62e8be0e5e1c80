//! ASI assembly: observed mistakes, the uniformly random null model and
//! the exact empirical p-value.
//!
//! The null model reshuffles whole coordinate tuples among nodes. Each
//! reshuffle draws its permutation from a dedicated ChaCha8 stream keyed
//! by the report seed and the reshuffle index, so results are identical
//! whether the reshuffles run sequentially or in parallel.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::asi2d::{mistakes_2d, worst_case_theoretical};
use crate::asi3d::mistakes_3d;
use crate::coords::AngularCoords;
use crate::error::{Error, Result};
use crate::geometry::circular_ranks;
use crate::labels::GroupLabeling;

/// How the denominator of the index is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorstCaseMode {
    /// Largest total over the reshuffles. Works in 2D and 3D.
    Empirical,
    /// Closed-form bound for evenly spread groups. 2D only.
    Theoretical,
}

#[derive(Debug, Clone)]
pub struct AsiConfig {
    pub reshuffles: usize,
    pub seed: u64,
    pub worst_case: WorstCaseMode,
}

impl Default for AsiConfig {
    fn default() -> Self {
        AsiConfig {
            reshuffles: 1000,
            seed: 0,
            worst_case: WorstCaseMode::Empirical,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroupOutcome {
    pub name: String,
    pub size: usize,
    pub mistakes: usize,
}

#[derive(Debug, Clone)]
pub struct AsiReport {
    /// Separation index clamped into [0, 1].
    pub asi: f64,
    /// Unclamped value; negative when the observation beats the denominator.
    pub raw_asi: f64,
    pub p_value: f64,
    pub total_mistakes: usize,
    /// Denominator of the index, per the configured mode.
    pub worst_case: usize,
    pub per_group: Vec<GroupOutcome>,
    /// One reshuffled index per reshuffle, in stream order.
    pub null_asis: Vec<f64>,
    pub dims: u8,
    pub reshuffles: usize,
    pub seed: u64,
    pub mode: WorstCaseMode,
}

/// Per-group and total mistake counts for one set of coordinates.
pub fn total_mistakes(coords: &AngularCoords, labels: &GroupLabeling) -> Result<(Vec<usize>, usize)> {
    if coords.len() != labels.node_count() {
        return Err(Error::InvalidInput(format!(
            "{} coordinates for {} labeled nodes",
            coords.len(),
            labels.node_count()
        )));
    }
    let ranks = circular_ranks(coords.azimuths())?;
    let per_group = (0..labels.group_count())
        .map(|g| match coords {
            AngularCoords::TwoD { .. } => mistakes_2d(&ranks, labels, g),
            AngularCoords::ThreeD { theta, phi } => mistakes_3d(theta, phi, &ranks, labels, g),
        })
        .collect::<Result<Vec<usize>>>()?;
    let total = per_group.iter().sum();
    Ok((per_group, total))
}

fn reshuffle_rng(seed: u64, reshuffle: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(reshuffle);
    rng
}

/// Total mistakes for each of `reshuffles` uniformly random reassignments
/// of the coordinate tuples.
pub fn null_totals(
    coords: &AngularCoords,
    labels: &GroupLabeling,
    reshuffles: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    if reshuffles == 0 {
        return Err(Error::InvalidInput("at least one reshuffle is required".into()));
    }
    let n = coords.len();
    (1..=reshuffles as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = reshuffle_rng(seed, r);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let shuffled = coords.permuted(&perm);
            total_mistakes(&shuffled, labels).map(|(_, total)| total)
        })
        .collect()
}

/// `(clamped, raw)` index values for an observed total against a
/// denominator. A zero denominator forces zero observed mistakes, in which
/// case the groups are perfectly separated by definition and the index
/// is 1.
pub fn asi_score(observed: usize, denominator: usize) -> Result<(f64, f64)> {
    if denominator == 0 {
        if observed > 0 {
            return Err(Error::Internal(format!(
                "denominator 0 with {observed} observed mistakes"
            )));
        }
        return Ok((1.0, 1.0));
    }
    let raw = 1.0 - observed as f64 / denominator as f64;
    Ok((raw.clamp(0.0, 1.0), raw))
}

/// Reshuffled index values against the empirical worst case (the maximum
/// of the totals themselves).
pub fn null_asi_scores(null_totals: &[usize]) -> Vec<f64> {
    let max = null_totals.iter().copied().max().unwrap_or(0);
    scores_against(null_totals, max)
}

fn scores_against(totals: &[usize], denominator: usize) -> Vec<f64> {
    if denominator == 0 {
        return vec![1.0; totals.len()];
    }
    totals
        .iter()
        .map(|&w| 1.0 - w as f64 / denominator as f64)
        .collect()
}

/// Exact empirical p-value: `(1 + #{ASI_r >= ASI}) / (1 + R)`.
pub fn p_value(asi: f64, null_asis: &[f64]) -> f64 {
    let exceed = null_asis.iter().filter(|&&x| x >= asi).count();
    (1 + exceed) as f64 / (1 + null_asis.len()) as f64
}

/// Run the whole pipeline: observed mistakes, reshuffled null, index and
/// p-value.
pub fn evaluate(coords: &AngularCoords, labels: &GroupLabeling, config: &AsiConfig) -> Result<AsiReport> {
    let (per_group, total) = total_mistakes(coords, labels)?;
    let nulls = null_totals(coords, labels, config.reshuffles, config.seed)?;
    let denominator = match config.worst_case {
        WorstCaseMode::Empirical => nulls.iter().copied().max().unwrap_or(0),
        WorstCaseMode::Theoretical => {
            if coords.dims() != 2 {
                return Err(Error::InvalidInput(
                    "the theoretical worst case is defined on the circle only".into(),
                ));
            }
            worst_case_theoretical(labels.node_count(), labels.sizes())
        }
    };
    let (asi, raw_asi) = asi_score(total, denominator)?;
    // both modes score the same reshuffled totals, only the common
    // denominator changes, so the p-value is mode-independent
    let null_asis = scores_against(&nulls, denominator);
    let p = p_value(asi, &null_asis);
    let per_group = per_group
        .into_iter()
        .enumerate()
        .map(|(g, mistakes)| GroupOutcome {
            name: labels.name(g).to_string(),
            size: labels.size(g),
            mistakes,
        })
        .collect();
    Ok(AsiReport {
        asi,
        raw_asi,
        p_value: p,
        total_mistakes: total,
        worst_case: denominator,
        per_group,
        null_asis,
        dims: coords.dims(),
        reshuffles: config.reshuffles,
        seed: config.seed,
        mode: config.worst_case,
    })
}
