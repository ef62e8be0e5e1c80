//! Mistake counting on the sphere.
//!
//! A group's extent is bounded by its azimuth extremes (from the 2D gap
//! machinery) and its elevation extremes. Nodes strictly inside that
//! band-and-window region are candidates; candidates and group members are
//! projected into the rectangle spanned by the extremes, and a candidate
//! counts as a mistake when it is foreign and falls inside the convex hull
//! of the projected group.

use crate::asi2d::{azimuth_extremes, AzimuthExtremes};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, map_to_rectangle, polygon_contains, Point, Polygon};
use crate::labels::GroupLabeling;

/// The spherical region occupied by one group.
#[derive(Debug, Clone)]
pub struct RegionSpec {
    pub group: usize,
    pub azimuth: AzimuthExtremes,
    pub phi_lo: f64,
    pub phi_hi: f64,
    /// Convex hull of every group member after projection, extremes
    /// included.
    pub hull: Polygon,
}

impl RegionSpec {
    pub fn project(&self, theta: f64, phi: f64) -> Point {
        map_to_rectangle(
            theta,
            phi,
            self.azimuth.theta_lo,
            self.azimuth.theta_hi,
            self.phi_lo,
            self.azimuth.wraps,
        )
    }
}

/// Minimum and maximum elevation over the group members.
pub fn elevation_extremes(phi: &[f64], labels: &GroupLabeling, group: usize) -> Result<(f64, f64)> {
    labels.check_group(group)?;
    if phi.len() != labels.node_count() {
        return Err(Error::InvalidInput(format!(
            "{} elevations for {} labeled nodes",
            phi.len(),
            labels.node_count()
        )));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for node in labels.members(group) {
        lo = lo.min(phi[node]);
        hi = hi.max(phi[node]);
    }
    Ok((lo, hi))
}

pub fn region_spec(
    theta: &[f64],
    phi: &[f64],
    ranks: &[usize],
    labels: &GroupLabeling,
    group: usize,
) -> Result<RegionSpec> {
    let azimuth = azimuth_extremes(theta, ranks, labels, group)?;
    let (phi_lo, phi_hi) = elevation_extremes(phi, labels, group)?;
    // the hull uses every member, even those failing the strict candidate
    // filter, so the group's own extremes shape its extent
    let member_points: Vec<Point> = labels
        .members(group)
        .map(|i| map_to_rectangle(theta[i], phi[i], azimuth.theta_lo, azimuth.theta_hi, phi_lo, azimuth.wraps))
        .collect();
    let hull = convex_hull(&member_points)?;
    Ok(RegionSpec { group, azimuth, phi_lo, phi_hi, hull })
}

/// Nodes strictly inside the region's elevation band and azimuth window.
/// The inequalities are strict: nodes sitting exactly at an extreme are
/// not candidates.
pub fn candidate_nodes(theta: &[f64], phi: &[f64], region: &RegionSpec) -> Vec<usize> {
    let az = &region.azimuth;
    (0..theta.len())
        .filter(|&i| {
            let in_band = region.phi_lo < phi[i] && phi[i] < region.phi_hi;
            let in_window = if az.wraps {
                theta[i] < az.theta_lo || theta[i] > az.theta_hi
            } else {
                az.theta_lo < theta[i] && theta[i] < az.theta_hi
            };
            in_band && in_window
        })
        .collect()
}

/// Foreign candidates inside (or on the boundary of) the projected hull.
pub fn mistakes_3d(
    theta: &[f64],
    phi: &[f64],
    ranks: &[usize],
    labels: &GroupLabeling,
    group: usize,
) -> Result<usize> {
    if theta.len() != phi.len() {
        return Err(Error::InvalidInput(format!(
            "{} azimuths but {} elevations",
            theta.len(),
            phi.len()
        )));
    }
    let region = region_spec(theta, phi, ranks, labels, group)?;
    let count = candidate_nodes(theta, phi, &region)
        .into_iter()
        .filter(|&i| labels.group_of(i) != group)
        .filter(|&i| {
            polygon_contains(&region.hull, region.project(theta[i], phi[i])).is_contained()
        })
        .count();
    Ok(count)
}
