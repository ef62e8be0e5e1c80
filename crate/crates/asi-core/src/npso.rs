//! nPSO random networks: popularity-similarity growth in the hyperbolic
//! disk with a Gaussian-mixture angular distribution planting communities.
//!
//! Nodes join one at a time at radius `r_t = 2 ln t` while earlier nodes
//! drift inward (`r_s(t) = β·2 ln s + (1-β)·2 ln t`, `β = 1/(γ-1)`).
//! Angles are drawn from an equally weighted, equally spaced mixture of
//! Gaussians on the circle; each node's ground-truth community is the
//! mixture component whose mean is circularly closest to its angle. At
//! temperature 0 a new node links the `m` hyperbolically closest existing
//! nodes; at positive temperature candidates are accepted with
//! Fermi-Dirac probabilities around a cutoff radius calibrated so that a
//! node gains `m` links on average.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::geometry::normalize_azimuth;
use crate::graph::Graph;
use crate::labels::GroupLabeling;

const ANGLE_STREAM: u64 = 0;
const GROWTH_STREAM: u64 = 1;

/// Cap on rejection-sampling trials per node, as a multiple of `m`.
const TRIAL_CAP_FACTOR: usize = 10_000;

#[derive(Debug, Clone)]
pub struct NpsoParams {
    pub nodes: usize,
    /// Links created by each incoming node (up to availability).
    pub m: usize,
    /// Fermi-Dirac temperature in `[0, 1)`.
    pub temperature: f64,
    /// Power-law exponent `γ >= 2` of the expected degree distribution.
    pub gamma: f64,
    /// Number of mixture components.
    pub communities: usize,
    pub seed: u64,
}

impl NpsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 || self.nodes <= self.m {
            return Err(Error::InvalidInput(format!(
                "need nodes > m >= 1, got nodes = {}, m = {}",
                self.nodes, self.m
            )));
        }
        if !(0.0..1.0).contains(&self.temperature) {
            return Err(Error::InvalidInput(format!(
                "temperature {} outside [0, 1)",
                self.temperature
            )));
        }
        if !self.gamma.is_finite() || self.gamma < 2.0 {
            return Err(Error::InvalidInput(format!("gamma {} below 2", self.gamma)));
        }
        if self.communities < 1 {
            return Err(Error::InvalidInput("at least one community required".into()));
        }
        Ok(())
    }

    /// Popularity-fading exponent `β = 1/(γ-1)`, in `(0, 1]`.
    pub fn beta(&self) -> f64 {
        1.0 / (self.gamma - 1.0)
    }
}

/// The angular mixture: equally spaced means, a common standard deviation
/// of one sixth of the component spacing, equal weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    pub means: Vec<f64>,
    pub sigma: f64,
    pub weight: f64,
}

impl MixtureSpec {
    pub fn new(communities: usize) -> Self {
        let c = communities as f64;
        MixtureSpec {
            means: (0..communities).map(|i| TAU * i as f64 / c).collect(),
            sigma: TAU / (6.0 * c),
            weight: 1.0 / c,
        }
    }

    /// Index of the component whose mean is circularly closest to `theta`;
    /// ties go to the lowest index.
    pub fn closest_component(&self, theta: f64) -> usize {
        let mut best = 0;
        let mut best_d = circular_distance(theta, self.means[0]);
        for (i, &mu) in self.means.iter().enumerate().skip(1) {
            let d = circular_distance(theta, mu);
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % TAU;
    d.min(TAU - d)
}

#[derive(Debug, Clone)]
pub struct GeneratedNetwork {
    pub graph: Graph,
    /// Angular coordinate per node.
    pub theta: Vec<f64>,
    /// Final radial coordinate per node (after fading, at time `N`).
    pub radii: Vec<f64>,
    /// Ground-truth community per node: the mixture component closest to
    /// the node's angle, not the component that generated it.
    pub community: Vec<usize>,
}

impl GeneratedNetwork {
    /// Communities as a labeling, named "1".."C" by component index.
    pub fn labeling(&self) -> GroupLabeling {
        let tags: Vec<String> = self.community.iter().map(|c| (c + 1).to_string()).collect();
        GroupLabeling::new(&tags).expect("generated networks are never empty")
    }
}

fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draw every node's angle and ground-truth community. This is exactly the
/// angular part of [`generate`]: same seed, same angles.
pub fn sample_community_angles(params: &NpsoParams) -> Result<(Vec<f64>, Vec<usize>)> {
    params.validate()?;
    let mixture = MixtureSpec::new(params.communities);
    let mut rng = substream(params.seed, ANGLE_STREAM);
    Ok(sample_angles(params, &mixture, &mut rng))
}

fn sample_angles(
    params: &NpsoParams,
    mixture: &MixtureSpec,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, Vec<usize>) {
    let mut theta = Vec::with_capacity(params.nodes);
    let mut community = Vec::with_capacity(params.nodes);
    for _ in 0..params.nodes {
        let component = rng.gen_range(0..params.communities);
        let normal = Normal::new(mixture.means[component], mixture.sigma)
            .expect("sigma is finite and positive");
        let angle = normalize_azimuth(normal.sample(rng));
        community.push(mixture.closest_component(angle));
        theta.push(angle);
    }
    (theta, community)
}

/// Hyperbolic distance between `(r1, θ1)` and `(r2, θ2)`.
///
/// Evaluated as `acosh(cosh(r1-r2) + sinh r1 sinh r2 · 2 sin²(Δθ/2))`,
/// which keeps the argument's distance from 1 additive and avoids the
/// catastrophic cancellation of the textbook
/// `cosh r1 cosh r2 - sinh r1 sinh r2 cos Δθ` at small angles.
pub fn hyperbolic_distance(r1: f64, theta1: f64, r2: f64, theta2: f64) -> f64 {
    let dtheta = PI - (PI - (theta1 - theta2).abs()).abs();
    let half = (dtheta / 2.0).sin();
    let arg = (r1 - r2).cosh() + r1.sinh() * r2.sinh() * 2.0 * half * half;
    arg.max(1.0).acosh()
}

/// Fermi-Dirac connection cutoff for the node joining at time `t`.
fn cutoff_radius(t: usize, r_t: f64, beta: f64, temperature: f64, m: usize) -> f64 {
    let lt = (t as f64).ln();
    let fading = 1.0 - beta;
    // stable 1 - t^(-(1-β)) over 1-β, with the β -> 1 limit ln t
    let factor = if fading > 0.0 {
        -(-fading * lt).exp_m1() / fading
    } else {
        lt
    };
    r_t - 2.0 * ((2.0 * temperature * factor) / ((temperature * PI).sin() * m as f64)).ln()
}

/// Grow an nPSO network.
///
/// Every joining node receives exactly `min(m, t-1)` links, so the final
/// edge count is `m·N - m(m+1)/2`. The graph is connected by construction.
pub fn generate(params: &NpsoParams) -> Result<GeneratedNetwork> {
    params.validate()?;
    let n = params.nodes;
    let m = params.m;
    let beta = params.beta();
    let mixture = MixtureSpec::new(params.communities);
    let (theta, community) = sample_angles(params, &mixture, &mut substream(params.seed, ANGLE_STREAM));

    let birth_radius: Vec<f64> = (0..n).map(|i| 2.0 * ((i + 1) as f64).ln()).collect();
    let mut rng = substream(params.seed, GROWTH_STREAM);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m * n);

    for t_idx in 1..n {
        let t = t_idx + 1;
        let r_t = birth_radius[t_idx];
        let faded = |s: usize| beta * birth_radius[s] + (1.0 - beta) * r_t;
        let distance =
            |s: usize| hyperbolic_distance(faded(s), theta[s], r_t, theta[t_idx]);
        let want = m.min(t_idx);

        if t_idx <= m {
            for s in 0..t_idx {
                edges.push((s, t_idx));
            }
        } else if params.temperature == 0.0 {
            let mut by_distance: Vec<(u64, usize)> =
                (0..t_idx).map(|s| (distance(s).to_bits(), s)).collect();
            by_distance.sort_unstable();
            for &(_, s) in by_distance.iter().take(want) {
                edges.push((s, t_idx));
            }
        } else {
            let cutoff = cutoff_radius(t, r_t, beta, params.temperature, m);
            let mut pool: Vec<usize> = (0..t_idx).collect();
            let mut made = 0;
            let mut trials = 0;
            let cap = TRIAL_CAP_FACTOR * m;
            while made < want && trials < cap {
                trials += 1;
                let pick = rng.gen_range(0..pool.len());
                let s = pool[pick];
                let accept = 1.0 / (1.0 + ((distance(s) - cutoff) / (2.0 * params.temperature)).exp());
                if rng.gen::<f64>() < accept {
                    edges.push((s, t_idx));
                    pool.swap_remove(pick);
                    made += 1;
                }
            }
            if made < want {
                // acceptance stalled; fall back to the closest remaining
                let mut by_distance: Vec<(u64, usize)> =
                    pool.iter().map(|&s| (distance(s).to_bits(), s)).collect();
                by_distance.sort_unstable();
                for &(_, s) in by_distance.iter().take(want - made) {
                    edges.push((s, t_idx));
                }
            }
        }
    }

    let radii: Vec<f64> = (0..n).map(|s| beta * birth_radius[s] + (1.0 - beta) * birth_radius[n - 1]).collect();
    let graph = Graph::from_edges(n, edges)?;
    Ok(GeneratedNetwork { graph, theta, radii, community })
}
