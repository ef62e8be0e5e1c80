//! Per-node angular coordinates on the circle or the sphere.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geometry::normalize_azimuth;

/// Angular coordinates for a set of nodes.
///
/// Azimuths are stored normalized into `[0, 2π)`. Elevations measure the
/// angle from the equatorial plane and must lie in `[-π/2, π/2]`.
#[derive(Debug, Clone, PartialEq)]
pub enum AngularCoords {
    TwoD { theta: Vec<f64> },
    ThreeD { theta: Vec<f64>, phi: Vec<f64> },
}

impl AngularCoords {
    /// Coordinates on the circle. Azimuths are normalized, so any finite
    /// input angle is accepted.
    pub fn circle(theta: Vec<f64>) -> Result<Self> {
        let theta = normalize_all(theta)?;
        Ok(AngularCoords::TwoD { theta })
    }

    /// Coordinates on the sphere: azimuth and elevation per node.
    pub fn sphere(theta: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        if theta.len() != phi.len() {
            return Err(Error::InvalidInput(format!(
                "{} azimuths but {} elevations",
                theta.len(),
                phi.len()
            )));
        }
        let theta = normalize_all(theta)?;
        for (i, &p) in phi.iter().enumerate() {
            if !p.is_finite() || !(-FRAC_PI_2..=FRAC_PI_2).contains(&p) {
                return Err(Error::InvalidInput(format!(
                    "elevation {p} at node {i} is outside [-pi/2, pi/2]"
                )));
            }
        }
        Ok(AngularCoords::ThreeD { theta, phi })
    }

    pub fn len(&self) -> usize {
        match self {
            AngularCoords::TwoD { theta } | AngularCoords::ThreeD { theta, .. } => theta.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dims(&self) -> u8 {
        match self {
            AngularCoords::TwoD { .. } => 2,
            AngularCoords::ThreeD { .. } => 3,
        }
    }

    pub fn azimuths(&self) -> &[f64] {
        match self {
            AngularCoords::TwoD { theta } | AngularCoords::ThreeD { theta, .. } => theta,
        }
    }

    pub fn elevations(&self) -> Option<&[f64]> {
        match self {
            AngularCoords::TwoD { .. } => None,
            AngularCoords::ThreeD { phi, .. } => Some(phi),
        }
    }

    /// Reassign whole coordinate tuples: node `i` receives the coordinates
    /// of node `perm[i]`. This is the move the null model makes, so that
    /// azimuth and elevation always travel together.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let pick = |v: &[f64]| perm.iter().map(|&j| v[j]).collect::<Vec<_>>();
        match self {
            AngularCoords::TwoD { theta } => AngularCoords::TwoD { theta: pick(theta) },
            AngularCoords::ThreeD { theta, phi } => AngularCoords::ThreeD {
                theta: pick(theta),
                phi: pick(phi),
            },
        }
    }
}

fn normalize_all(mut theta: Vec<f64>) -> Result<Vec<f64>> {
    if theta.is_empty() {
        return Err(Error::InvalidInput("no nodes given".into()));
    }
    for (i, t) in theta.iter_mut().enumerate() {
        if !t.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite azimuth at node {i}")));
        }
        *t = normalize_azimuth(*t);
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, TAU};

    use super::*;

    #[test]
    fn azimuths_are_normalized() {
        let c = AngularCoords::circle(vec![-PI, TAU + 0.5, 1.0]).unwrap();
        let t = c.azimuths();
        assert!((t[0] - PI).abs() < 1e-12);
        assert!((t[1] - 0.5).abs() < 1e-12);
        assert_eq!(t[2], 1.0);
    }

    #[test]
    fn rejects_non_finite_and_out_of_band() {
        assert!(AngularCoords::circle(vec![f64::NAN]).is_err());
        assert!(AngularCoords::sphere(vec![0.0], vec![1.6]).is_err());
        assert!(AngularCoords::sphere(vec![0.0, 1.0], vec![0.0]).is_err());
        assert!(AngularCoords::circle(vec![]).is_err());
    }

    #[test]
    fn permutation_moves_tuples_together() {
        let c = AngularCoords::sphere(vec![0.1, 0.2, 0.3], vec![-0.5, 0.0, 0.5]).unwrap();
        let p = c.permuted(&[2, 0, 1]);
        assert_eq!(p.azimuths(), &[0.3, 0.1, 0.2]);
        assert_eq!(p.elevations().unwrap(), &[0.5, -0.5, 0.0]);
    }
}
