//! Mistake counting on the circle.
//!
//! Rank the nodes by azimuth, look at one group's ranks and measure the
//! circular gaps between consecutive members. Reading the group's extent
//! as "everything except its widest gap", the foreign nodes inside that
//! extent are exactly the nodes sitting in all the narrower gaps, so the
//! mistake count is the gap sum minus the widest gap.

use crate::error::{Error, Result};
use crate::geometry::order_from_ranks;
use crate::labels::GroupLabeling;

/// Circular gap structure of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapProfile {
    pub group: usize,
    /// Ranks of the group members, ascending, values in `1..=N`.
    pub sorted_ranks: Vec<usize>,
    /// `gaps[i]` counts foreign nodes between member `i` and the next
    /// member; the last entry wraps past rank `N` back to the first member.
    pub gaps: Vec<usize>,
}

fn check_ranks(ranks: &[usize], n: usize) -> Result<()> {
    if ranks.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} ranks for {n} labeled nodes",
            ranks.len()
        )));
    }
    let mut seen = vec![false; n];
    for &r in ranks {
        if r < 1 || r > n || seen[r - 1] {
            return Err(Error::InvalidInput(format!("ranks are not a permutation of 1..={n}")));
        }
        seen[r - 1] = true;
    }
    Ok(())
}

pub fn gap_profile(ranks: &[usize], labels: &GroupLabeling, group: usize) -> Result<GapProfile> {
    labels.check_group(group)?;
    check_ranks(ranks, labels.node_count())?;
    let mut sorted_ranks: Vec<usize> = labels.members(group).map(|i| ranks[i]).collect();
    sorted_ranks.sort_unstable();
    let n = ranks.len();
    let k = sorted_ranks.len();
    let mut gaps = Vec::with_capacity(k);
    for i in 0..k - 1 {
        gaps.push(sorted_ranks[i + 1] - sorted_ranks[i] - 1);
    }
    gaps.push(n - sorted_ranks[k - 1] + sorted_ranks[0] - 1);
    Ok(GapProfile { group, sorted_ranks, gaps })
}

/// Foreign nodes inside the group's angular extent: gap sum minus the
/// widest gap.
pub fn mistakes_2d(ranks: &[usize], labels: &GroupLabeling, group: usize) -> Result<usize> {
    let profile = gap_profile(ranks, labels, group)?;
    let total: usize = profile.gaps.iter().sum();
    let widest = *profile.gaps.iter().max().expect("groups are never empty");
    Ok(total - widest)
}

/// Closed-form worst-case total: each group contributes
/// `ceil((N - N_g) * (N_g - 1) / N_g)`, the mistake count when its members
/// are spread as evenly as possible. Never below what any arrangement can
/// produce, occasionally slightly above the jointly achievable maximum.
pub fn worst_case_theoretical(n: usize, sizes: &[usize]) -> usize {
    debug_assert_eq!(sizes.iter().sum::<usize>(), n);
    sizes
        .iter()
        .map(|&sz| {
            if sz == 0 {
                0
            } else {
                ((n - sz) * (sz - 1)).div_ceil(sz)
            }
        })
        .sum()
}

/// Azimuths of the two members bounding the group's widest gap, with
/// `theta_lo <= theta_hi`.
///
/// `wraps = false`: the occupied arc is `(theta_lo, theta_hi)`.
/// `wraps = true`: the arc crosses zero, so interior azimuths satisfy
/// `θ < theta_lo` or `θ > theta_hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AzimuthExtremes {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub wraps: bool,
}

pub fn azimuth_extremes(
    thetas: &[f64],
    ranks: &[usize],
    labels: &GroupLabeling,
    group: usize,
) -> Result<AzimuthExtremes> {
    if thetas.len() != ranks.len() {
        return Err(Error::InvalidInput(format!(
            "{} azimuths for {} ranks",
            thetas.len(),
            ranks.len()
        )));
    }
    let profile = gap_profile(ranks, labels, group)?;
    let order = order_from_ranks(ranks);
    let s = &profile.sorted_ranks;
    let k = s.len();
    let mut widest = 0;
    for i in 1..k {
        if profile.gaps[i] > profile.gaps[widest] {
            widest = i;
        }
    }
    let node_at = |rank: usize| order[rank - 1];
    if widest == k - 1 {
        // the wrap gap is excluded, so the occupied arc runs from the
        // lowest- to the highest-ranked member without crossing zero;
        // for singleton groups the extremes coincide
        Ok(AzimuthExtremes {
            theta_lo: thetas[node_at(s[0])],
            theta_hi: thetas[node_at(s[k - 1])],
            wraps: false,
        })
    } else {
        Ok(AzimuthExtremes {
            theta_lo: thetas[node_at(s[widest])],
            theta_hi: thetas[node_at(s[widest + 1])],
            wraps: true,
        })
    }
}
