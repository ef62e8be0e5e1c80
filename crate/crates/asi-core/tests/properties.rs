//! Randomized invariants, each checked against straightforward
//! brute-force re-implementations that share no code with the library
//! beyond the hull builder.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use asi_core::asi2d::{gap_profile, mistakes_2d, worst_case_theoretical};
use asi_core::geometry::{circular_ranks, convex_hull, polygon_contains, Point};
use asi_core::significance::{evaluate, total_mistakes, AsiConfig, WorstCaseMode};
use asi_core::{AngularCoords, GroupLabeling};

const EPS: f64 = 1e-12;

/// Single-letter tags for compacted group ids, so that the library's
/// name-sorted group indexing coincides with the ids.
fn letter_tags(groups: &[usize]) -> Vec<String> {
    groups.iter().map(|&g| ((b'a' + g as u8) as char).to_string()).collect()
}

/// Compact arbitrary group draws to dense ids `0..k` by sorted value.
fn compact(raw: Vec<usize>) -> Vec<usize> {
    let mut present: Vec<usize> = raw.clone();
    present.sort_unstable();
    present.dedup();
    raw.into_iter().map(|g| present.binary_search(&g).unwrap()).collect()
}

fn labeled_circle(max_n: usize, max_g: usize) -> impl Strategy<Value = (Vec<f64>, Vec<usize>)> {
    (3..=max_n)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(0.0..TAU, n),
                prop::collection::vec(0..max_g, n),
            )
        })
        .prop_map(|(theta, raw)| (theta, compact(raw)))
}

fn labeled_sphere(
    max_n: usize,
    max_g: usize,
) -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<usize>)> {
    (4..=max_n)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(0.0..TAU, n),
                prop::collection::vec(-1.5..1.5f64, n),
                prop::collection::vec(0..max_g, n),
            )
        })
        .prop_map(|(theta, phi, raw)| (theta, phi, compact(raw)))
}

/// Nodes in circle order: sorted by angle, ties by index.
fn circle_order(theta: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..theta.len()).collect();
    order.sort_by(|&a, &b| theta[a].partial_cmp(&theta[b]).unwrap().then(a.cmp(&b)));
    order
}

/// Brute-force 2D count: for every candidate excluded gap, walk the whole
/// circle from the member after the gap around to the member before it,
/// counting foreigners; take the minimum.
fn oracle_mistakes_2d(theta: &[f64], groups: &[usize], g: usize) -> usize {
    let n = theta.len();
    let order = circle_order(theta);
    let members: Vec<usize> = (0..n).filter(|&p| groups[order[p]] == g).collect();
    let k = members.len();
    let mut best = usize::MAX;
    for j in 0..k {
        let start = members[(j + 1) % k];
        let end = members[j];
        let mut count = 0;
        let mut p = start;
        loop {
            if groups[order[p]] != g {
                count += 1;
            }
            if p == end {
                break;
            }
            p = (p + 1) % n;
        }
        best = best.min(count);
    }
    best
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return (p.x - a.x).hypot(p.y - a.y);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    (p.x - (a.x + t * dx)).hypot(p.y - (a.y + t * dy))
}

/// Independent containment test: boundary by distance to the edges, the
/// interior by ray casting.
fn ray_cast_contains(vertices: &[Point], p: Point) -> bool {
    match vertices.len() {
        0 => false,
        1 => (p.x - vertices[0].x).hypot(p.y - vertices[0].y) <= EPS,
        2 => segment_distance(p, vertices[0], vertices[1]) <= EPS,
        n => {
            for i in 0..n {
                if segment_distance(p, vertices[i], vertices[(i + 1) % n]) <= EPS {
                    return true;
                }
            }
            let mut inside = false;
            let mut j = n - 1;
            for i in 0..n {
                let (a, b) = (vertices[i], vertices[j]);
                if (a.y > p.y) != (b.y > p.y) {
                    let x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                    if p.x < x_cross {
                        inside = !inside;
                    }
                }
                j = i;
            }
            inside
        }
    }
}

/// Brute-force 3D count, re-deriving extremes, candidates and the
/// projection from scratch and testing containment by ray casting.
fn oracle_mistakes_3d(theta: &[f64], phi: &[f64], groups: &[usize], g: usize) -> usize {
    let n = theta.len();
    let order = circle_order(theta);
    let member_pos: Vec<usize> = (0..n).filter(|&p| groups[order[p]] == g).collect();
    let k = member_pos.len();
    let mut gap_len = vec![0usize; k];
    for j in 0..k {
        let mut p = (member_pos[j] + 1) % n;
        while groups[order[p]] != g {
            gap_len[j] += 1;
            p = (p + 1) % n;
        }
    }
    let mut widest = 0;
    for j in 1..k {
        if gap_len[j] > gap_len[widest] {
            widest = j;
        }
    }
    let (theta_lo, theta_hi, wraps) = if widest == k - 1 {
        (theta[order[member_pos[0]]], theta[order[member_pos[k - 1]]], false)
    } else {
        (
            theta[order[member_pos[widest]]],
            theta[order[member_pos[widest + 1]]],
            true,
        )
    };
    let mut phi_lo = f64::INFINITY;
    let mut phi_hi = f64::NEG_INFINITY;
    for i in 0..n {
        if groups[i] == g {
            phi_lo = phi_lo.min(phi[i]);
            phi_hi = phi_hi.max(phi[i]);
        }
    }
    let project = |i: usize| {
        let x = if wraps {
            if theta[i] >= theta_hi {
                theta[i] - theta_hi
            } else {
                theta[i] + (TAU - theta_hi)
            }
        } else {
            theta[i] - theta_lo
        };
        Point::new(x, phi[i] - phi_lo)
    };
    let member_points: Vec<Point> = (0..n).filter(|&i| groups[i] == g).map(project).collect();
    let hull = convex_hull(&member_points).unwrap();
    (0..n)
        .filter(|&i| groups[i] != g)
        .filter(|&i| phi_lo < phi[i] && phi[i] < phi_hi)
        .filter(|&i| {
            if wraps {
                theta[i] < theta_lo || theta[i] > theta_hi
            } else {
                theta_lo < theta[i] && theta[i] < theta_hi
            }
        })
        .filter(|&i| ray_cast_contains(hull.vertices(), project(i)))
        .count()
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Gift-wrapping hull, exact on integer coordinates. Collinear candidates
/// resolve to the farthest, so intermediate points never become vertices.
fn jarvis_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let (first, last) = (pts[0], *pts.last().unwrap());
    if pts.iter().all(|&p| cross(first, last, p).abs() <= EPS) {
        return vec![first, last];
    }
    let start = *pts
        .iter()
        .min_by(|p, q| (p.y, p.x).partial_cmp(&(q.y, q.x)).unwrap())
        .unwrap();
    let dist2 = |a: Point, b: Point| (a.x - b.x).powi(2) + (a.y - b.y).powi(2);
    let mut hull = vec![start];
    let mut cur = start;
    for _ in 0..=pts.len() {
        let mut next = if pts[0] == cur { pts[1] } else { pts[0] };
        for &cand in &pts {
            if cand == cur {
                continue;
            }
            let c = cross(cur, next, cand);
            if c < -EPS || (c.abs() <= EPS && dist2(cur, cand) > dist2(cur, next)) {
                next = cand;
            }
        }
        if next == start {
            return hull;
        }
        hull.push(next);
        cur = next;
    }
    panic!("gift wrapping failed to close");
}

fn point_bits(p: &Point) -> (u64, u64) {
    (p.x.to_bits(), p.y.to_bits())
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

proptest! {
    #[test]
    fn circle_scan_oracle_agrees((theta, groups) in labeled_circle(50, 6)) {
        let labels = GroupLabeling::new(&letter_tags(&groups)).unwrap();
        let ranks = circular_ranks(&theta).unwrap();
        for g in 0..labels.group_count() {
            prop_assert_eq!(
                mistakes_2d(&ranks, &labels, g).unwrap(),
                oracle_mistakes_2d(&theta, &groups, g)
            );
        }
    }

    #[test]
    fn gap_sums_count_the_foreigners((theta, groups) in labeled_circle(40, 6)) {
        let labels = GroupLabeling::new(&letter_tags(&groups)).unwrap();
        let ranks = circular_ranks(&theta).unwrap();
        for g in 0..labels.group_count() {
            let profile = gap_profile(&ranks, &labels, g).unwrap();
            prop_assert_eq!(profile.gaps.iter().sum::<usize>(), theta.len() - labels.size(g));
            prop_assert_eq!(profile.gaps.len(), labels.size(g));
        }
    }

    #[test]
    fn rotation_preserves_mistakes((theta, groups) in labeled_circle(40, 5), rot in 0.0..TAU) {
        let labels = GroupLabeling::new(&letter_tags(&groups)).unwrap();
        let original = AngularCoords::circle(theta.clone()).unwrap();
        let rotated = AngularCoords::circle(theta.iter().map(|t| t + rot).collect()).unwrap();
        prop_assert_eq!(
            total_mistakes(&original, &labels).unwrap(),
            total_mistakes(&rotated, &labels).unwrap()
        );
    }

    #[test]
    fn hull_matches_gift_wrapping(raw in prop::collection::vec((0i32..=12, 0i32..=12), 1..=40)) {
        let points: Vec<Point> = raw.iter().map(|&(x, y)| Point::new(x as f64, y as f64)).collect();
        let hull = convex_hull(&points).unwrap();
        let expected = jarvis_hull(&points);
        let got: BTreeSet<_> = hull.vertices().iter().map(point_bits).collect();
        let want: BTreeSet<_> = expected.iter().map(point_bits).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn hull_contains_its_inputs(raw in prop::collection::vec((0.0..10.0, 0.0..10.0), 1..=50)) {
        let points: Vec<Point> = raw.iter().map(|&(x, y)| Point::new(x, y)).collect();
        let hull = convex_hull(&points).unwrap();
        for &p in &points {
            prop_assert!(polygon_contains(&hull, p).is_contained());
        }
    }

    #[test]
    fn permuting_coords_equals_permuting_labels(
        (theta, groups) in labeled_circle(30, 4),
        seed in any::<u64>(),
    ) {
        let n = theta.len();
        let perm = permutation(n, seed);
        let mut inverse = vec![0usize; n];
        for (i, &j) in perm.iter().enumerate() {
            inverse[j] = i;
        }
        let tags = letter_tags(&groups);
        let moved_tags: Vec<String> = (0..n).map(|j| tags[inverse[j]].clone()).collect();

        let coords = AngularCoords::circle(theta).unwrap();
        let by_coords = total_mistakes(
            &coords.permuted(&perm),
            &GroupLabeling::new(&tags).unwrap(),
        )
        .unwrap();
        let by_labels = total_mistakes(&coords, &GroupLabeling::new(&moved_tags).unwrap()).unwrap();
        prop_assert_eq!(by_coords, by_labels);
    }

    #[test]
    fn evaluation_bounds_and_mode_agreement(
        (theta, groups) in labeled_circle(25, 4),
        seed in any::<u64>(),
    ) {
        let coords = AngularCoords::circle(theta).unwrap();
        let labels = GroupLabeling::new(&letter_tags(&groups)).unwrap();
        let reshuffles = 30;
        let emp = evaluate(&coords, &labels, &AsiConfig {
            reshuffles,
            seed,
            worst_case: WorstCaseMode::Empirical,
        }).unwrap();
        let theo = evaluate(&coords, &labels, &AsiConfig {
            reshuffles,
            seed,
            worst_case: WorstCaseMode::Theoretical,
        }).unwrap();

        prop_assert!((0.0..=1.0).contains(&emp.asi));
        prop_assert!(emp.p_value >= 1.0 / (reshuffles + 1) as f64);
        prop_assert!(emp.p_value <= 1.0);
        prop_assert_eq!(emp.p_value, theo.p_value);
        prop_assert!(theo.worst_case >= emp.worst_case);
        prop_assert!(theo.asi >= emp.asi);
        prop_assert_eq!(emp.total_mistakes, theo.total_mistakes);
        // the closed-form worst case dominates the observed arrangement too
        prop_assert!(emp.total_mistakes <= worst_case_theoretical(coords.len(), labels.sizes()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn containment_oracle_agrees_on_spheres((theta, phi, groups) in labeled_sphere(40, 5)) {
        let labels = GroupLabeling::new(&letter_tags(&groups)).unwrap();
        let ranks = circular_ranks(&theta).unwrap();
        for g in 0..labels.group_count() {
            prop_assert_eq!(
                asi_core::asi3d::mistakes_3d(&theta, &phi, &ranks, &labels, g).unwrap(),
                oracle_mistakes_3d(&theta, &phi, &groups, g)
            );
        }
    }

    #[test]
    fn sphere_permutation_equivalence(
        (theta, phi, groups) in labeled_sphere(25, 4),
        seed in any::<u64>(),
    ) {
        let n = theta.len();
        let perm = permutation(n, seed);
        let mut inverse = vec![0usize; n];
        for (i, &j) in perm.iter().enumerate() {
            inverse[j] = i;
        }
        let tags = letter_tags(&groups);
        let moved_tags: Vec<String> = (0..n).map(|j| tags[inverse[j]].clone()).collect();

        let coords = AngularCoords::sphere(theta, phi).unwrap();
        let by_coords = total_mistakes(
            &coords.permuted(&perm),
            &GroupLabeling::new(&tags).unwrap(),
        )
        .unwrap();
        let by_labels = total_mistakes(&coords, &GroupLabeling::new(&moved_tags).unwrap()).unwrap();
        prop_assert_eq!(by_coords, by_labels);
    }
}
