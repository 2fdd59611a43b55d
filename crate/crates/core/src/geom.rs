//! Planar primitives over integer grid coordinates.
//!
//! Branching predicates (orientation, crossing, hull membership) are exact:
//! determinants are evaluated in `i128`. Distances and angles are `f64` and
//! only feed metrics and reports.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use crate::error::Error;

/// A labeled grid point. Labels are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub id: u32,
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(id: u32, x: i32, y: i32) -> Self {
        Point { id, x, y }
    }

    fn sub(self, other: Point) -> (i128, i128) {
        (self.x as i128 - other.x as i128, self.y as i128 - other.y as i128)
    }
}

/// Sign of `(q - p) x (r - p)`: `1` left turn, `-1` right turn, `0` collinear.
pub fn orient(p: Point, q: Point, r: Point) -> i8 {
    let (ax, ay) = q.sub(p);
    let (bx, by) = r.sub(p);
    match (ax * by - ay * bx).cmp(&0) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// True iff the open segments `ab` and `cd` cross at a single interior point.
///
/// Only the strict straddle test is used, so touching endpoints and shared
/// endpoints never count.
pub fn segments_properly_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let abc = orient(a, b, c);
    let abd = orient(a, b, d);
    let cda = orient(c, d, a);
    let cdb = orient(c, d, b);
    abc * abd < 0 && cda * cdb < 0
}

/// Euclidean distance.
pub fn distance(p: Point, q: Point) -> f64 {
    let (dx, dy) = p.sub(q);
    libm::sqrt((dx * dx + dy * dy) as f64)
}

/// Angle at `v` between the rays towards `u` and `w`, in `[0, π]`.
pub fn angle_at(u: Point, v: Point, w: Point) -> f64 {
    let (ax, ay) = u.sub(v);
    let (bx, by) = w.sub(v);
    let cross = ax * by - ay * bx;
    let dot = ax * bx + ay * by;
    libm::atan2(cross.unsigned_abs() as f64, dot as f64)
}

/// Convex hull in counterclockwise order, starting from the lexicographically
/// smallest point (by `x`, then `y`). Returns point labels.
///
/// Monotone chain with exact orientation; collinear boundary points are
/// dropped, although valid instances never contain any.
pub fn convex_hull(points: &[Point]) -> Result<Vec<u32>, Error> {
    if points.len() < 3 {
        return Err(Error::TooSmall(points.len()));
    }
    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort_unstable_by_key(|p| (p.x, p.y));

    let mut hull: Vec<Point> = Vec::with_capacity(2 * sorted.len());
    for &p in &sorted {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in sorted.iter().rev().skip(1) {
        while hull.len() >= lower_len && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    Ok(hull.into_iter().map(|p| p.id).collect())
}

/// True iff `p` lies strictly inside the counterclockwise polygon `ring`.
pub fn strictly_inside_convex(ring: &[Point], p: Point) -> bool {
    let n = ring.len();
    (0..n).all(|i| orient(ring[i], ring[(i + 1) % n], p) > 0)
}

/// Derived geometric constants of a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceMetrics {
    pub d_min: f64,
    pub d_max: f64,
    /// Smallest angle formed at the middle point of any triple (radians).
    pub epsilon: f64,
    pub gamma: f64,
    /// Lower bound on the gain of any uncrossing inversion:
    /// `2 d_min (1 - cos ε) / cos ε`.
    pub min_uncross_gain: f64,
}

/// `cos ε / (1 - cos ε)`, evaluated through `1 - cos ε = 2 sin²(ε/2)` so it
/// stays finite for the tiny angles of large grids.
pub fn cos_ratio(epsilon: f64) -> f64 {
    let half = libm::sin(epsilon / 2.0);
    libm::cos(epsilon) / (2.0 * half * half)
}

/// `γ(ε) = (d_max / d_min - 1) · cos ε / (1 - cos ε)`.
pub fn gamma_of(d_min: f64, d_max: f64, epsilon: f64) -> f64 {
    (d_max / d_min - 1.0) * cos_ratio(epsilon)
}

/// `2 d_min (1 - cos ε) / cos ε`.
pub fn min_uncross_gain(d_min: f64, epsilon: f64) -> f64 {
    2.0 * d_min / cos_ratio(epsilon)
}

/// Distances, minimum angle, `γ` and the uncrossing gain of a point set.
///
/// Plain O(n³) scan over ordered triples. Fails on fewer than three points,
/// on duplicates and on any collinear triple (the angle bound would be 0).
pub fn instance_metrics(points: &[Point]) -> Result<InstanceMetrics, Error> {
    let n = points.len();
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let mut d_min = f64::INFINITY;
    let mut d_max = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let d = distance(points[i], points[j]);
            if d == 0.0 {
                return Err(Error::DuplicatePoint(points[i].id, points[j].id));
            }
            d_min = d_min.min(d);
            d_max = d_max.max(d);
        }
    }
    let mut epsilon = PI;
    for v in 0..n {
        for u in 0..n {
            if u == v {
                continue;
            }
            for w in u + 1..n {
                if w == v {
                    continue;
                }
                if orient(points[u], points[v], points[w]) == 0 {
                    return Err(Error::CollinearTriple(points[u].id, points[v].id, points[w].id));
                }
                epsilon = epsilon.min(angle_at(points[u], points[v], points[w]));
            }
        }
    }
    Ok(InstanceMetrics {
        d_min,
        d_max,
        epsilon,
        gamma: gamma_of(d_min, d_max, epsilon),
        min_uncross_gain: min_uncross_gain(d_min, epsilon),
    })
}

/// `arctan(1 / (2 (m - 2)²))`, the closed-form angle bound for an `m × m` grid.
///
/// Evaluated as `atan2(1, 2(m-2)²)` so it is bit-comparable with the angles
/// [`angle_at`] produces for the extremal lattice triple. Brute force shows
/// the bound holds for every `m >= 4`; on the 3×3 grid the true minimum is
/// `arctan(1/3)`, below the returned value.
pub fn grid_angle_lower_bound(m: u32) -> Result<f64, Error> {
    if m < 3 {
        return Err(Error::invalid("grid angle bound needs m >= 3"));
    }
    let side = (m - 2) as f64;
    Ok(libm::atan2(1.0, 2.0 * side * side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn pt(id: u32, x: i32, y: i32) -> Point {
        Point::new(id, x, y)
    }

    fn pts(coords: &[(i32, i32)]) -> Vec<Point> {
        coords.iter().enumerate().map(|(i, &(x, y))| pt(i as u32 + 1, x, y)).collect()
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(pt(1, 0, 0), pt(2, 1, 0), pt(3, 0, 1)), 1);
        assert_eq!(orient(pt(1, 0, 0), pt(2, 1, 0), pt(3, 2, 0)), 0);
        assert_eq!(orient(pt(1, 0, 0), pt(2, 0, 1), pt(3, 1, 1)), -1);
    }

    #[test]
    fn orient_is_exact_at_the_extremes_of_i32() {
        let a = pt(1, i32::MIN, i32::MIN);
        let b = pt(2, i32::MAX, i32::MAX);
        let c = pt(3, i32::MAX - 1, i32::MAX);
        assert_eq!(orient(a, b, pt(4, 0, 0)), 0);
        assert_eq!(orient(a, b, c), 1);
        assert_eq!(orient(a, c, b), -1);
    }

    #[test]
    fn crossing_examples() {
        let s = |x, y| pt(0, x, y);
        assert!(segments_properly_intersect(s(0, 0), s(2, 2), s(0, 2), s(2, 0)));
        assert!(!segments_properly_intersect(s(0, 0), s(1, 1), s(2, 0), s(3, 1)));
        assert!(!segments_properly_intersect(s(0, 0), s(1, 1), s(1, 1), s(2, 0)));
    }

    #[test]
    fn hull_of_square_starts_at_origin_ccw() {
        let square = pts(&[(2, 2), (0, 2), (0, 0), (2, 0)]);
        assert_eq!(convex_hull(&square).unwrap(), vec![3, 4, 1, 2]);
    }

    #[test]
    fn hull_skips_strict_interior_point() {
        let p = pts(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)]);
        assert_eq!(convex_hull(&p).unwrap(), vec![1, 2, 3, 4]);
        let ring: Vec<Point> = p[..4].to_vec();
        assert!(strictly_inside_convex(&ring, p[4]));
    }

    #[test]
    fn hull_rejects_two_points() {
        assert_eq!(convex_hull(&pts(&[(0, 0), (1, 0)])), Err(Error::TooSmall(2)));
    }

    /// O(n³) hull: a point is a hull vertex iff some pair `(p, q)` has every
    /// other point strictly to the left of `p -> q`.
    fn brute_hull_set(points: &[Point]) -> Vec<u32> {
        let mut ids = Vec::new();
        for &p in points {
            let on_hull = points.iter().any(|&q| {
                q != p && points.iter().all(|&r| r == p || r == q || orient(p, q, r) > 0)
            });
            if on_hull {
                ids.push(p.id);
            }
        }
        ids.sort_unstable();
        ids
    }

    fn general_position(points: &[Point]) -> bool {
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                if (points[i].x, points[i].y) == (points[j].x, points[j].y) {
                    return false;
                }
                for k in j + 1..n {
                    if orient(points[i], points[j], points[k]) == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn point_set(max_n: usize, m: i32) -> impl Strategy<Value = Vec<Point>> {
        proptest::collection::vec((0..m, 0..m), 3..=max_n)
            .prop_map(|c| pts(&c))
            .prop_filter("general position", |p| general_position(p))
    }

    #[test]
    fn seven_point_hull_matches_brute_force() {
        let p = pts(&[(0, 3), (5, 0), (15, 2), (9, 14), (3, 11), (7, 6), (11, 9)]);
        assert!(general_position(&p));
        let mut fast = convex_hull(&p).unwrap();
        fast.sort_unstable();
        assert_eq!(fast, brute_hull_set(&p));
    }

    #[test]
    fn metrics_of_unit_square() {
        let m = instance_metrics(&pts(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        assert_eq!(m.d_min, 1.0);
        assert_eq!(m.d_max, core::f64::consts::SQRT_2);
        assert!((m.epsilon - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn triangle_epsilon_matches_dot_product_angles() {
        let p = pts(&[(0, 0), (2, 0), (1, 2)]);
        let m = instance_metrics(&p).unwrap();
        let angle = |u: Point, v: Point, w: Point| {
            let (ax, ay) = ((u.x - v.x) as f64, (u.y - v.y) as f64);
            let (bx, by) = ((w.x - v.x) as f64, (w.y - v.y) as f64);
            libm::acos((ax * bx + ay * by) / (libm::hypot(ax, ay) * libm::hypot(bx, by)))
        };
        let expected = angle(p[1], p[0], p[2])
            .min(angle(p[0], p[1], p[2]))
            .min(angle(p[0], p[2], p[1]));
        assert!((m.epsilon - expected).abs() < 1e-12);
        // the apex angle is the smallest one: π - 2 arctan 2
        assert!((m.epsilon - (PI - 2.0 * libm::atan(2.0))).abs() < 1e-12);
    }

    #[test]
    fn metrics_reject_collinear() {
        let p = pts(&[(0, 0), (1, 1), (2, 2), (0, 2)]);
        assert!(matches!(instance_metrics(&p), Err(Error::CollinearTriple(..))));
    }

    #[test]
    fn gamma_definition() {
        assert!((gamma_of(1.0, 2.0, PI / 3.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_bound_values() {
        assert!((grid_angle_lower_bound(3).unwrap() - libm::atan(0.5)).abs() < 1e-15);
        assert!((grid_angle_lower_bound(4).unwrap() - 0.124_354_994_546_761_4).abs() < 1e-12);
        assert!(grid_angle_lower_bound(2).is_err());
    }

    /// Smallest positive angle between two lattice directions with
    /// components in `-(m-1)..=(m-1)`, enumerated exhaustively.
    fn brute_min_lattice_angle(m: i32) -> f64 {
        let mut best = PI;
        let r = -(m - 1)..m;
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        let cross = a as i64 * d as i64 - b as i64 * c as i64;
                        if cross == 0 {
                            continue;
                        }
                        let dot = a as i64 * c as i64 + b as i64 * d as i64;
                        best = best.min(libm::atan2(cross.unsigned_abs() as f64, dot as f64));
                    }
                }
            }
        }
        best
    }

    #[test]
    fn grid_bound_is_tight_for_m_4_to_12() {
        for m in 4..=12 {
            let brute = brute_min_lattice_angle(m);
            assert_eq!(brute, grid_angle_lower_bound(m as u32).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn grid_bound_fails_on_three_by_three() {
        let tri = pts(&[(0, 0), (2, 1), (1, 1)]);
        let eps = instance_metrics(&tri).unwrap().epsilon;
        assert!(eps < grid_angle_lower_bound(3).unwrap());
        assert!((brute_min_lattice_angle(3) - libm::atan(1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn cos_ratio_grows_like_m_to_the_fourth() {
        let mut prev = 0.0;
        for m in (3..=10_000u32).step_by(7) {
            let k = cos_ratio(grid_angle_lower_bound(m).unwrap()) / (m as f64).powi(4);
            assert!(k.is_finite() && k <= 8.0 + 1e-9);
            assert!(k >= prev * (1.0 - 1e-9));
            prev = k;
        }
    }

    proptest! {
        #[test]
        fn orient_antisymmetric(ax in -1000i32..1000, ay in -1000i32..1000,
                                bx in -1000i32..1000, by in -1000i32..1000,
                                cx in -1000i32..1000, cy in -1000i32..1000) {
            let (a, b, c) = (pt(1, ax, ay), pt(2, bx, by), pt(3, cx, cy));
            prop_assert_eq!(orient(a, b, c), -orient(a, c, b));
        }

        #[test]
        fn crossing_is_symmetric_and_exclusive(p in point_set(4, 24).prop_filter("four", |p| p.len() == 4)) {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            let x = segments_properly_intersect(a, b, c, d);
            prop_assert_eq!(x, segments_properly_intersect(c, d, a, b));
            prop_assert_eq!(x, segments_properly_intersect(b, a, c, d));
            let crossings = [x, segments_properly_intersect(a, c, b, d), segments_properly_intersect(a, d, b, c)];
            prop_assert!(crossings.iter().filter(|&&c| c).count() <= 1);
        }

        #[test]
        fn hull_matches_brute_force(p in point_set(12, 16)) {
            let hull = convex_hull(&p).unwrap();
            let mut sorted = hull.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, brute_hull_set(&p));
            let ring: Vec<Point> = hull.iter().map(|&id| p[id as usize - 1]).collect();
            let first = p.iter().min_by_key(|q| (q.x, q.y)).unwrap().id;
            prop_assert_eq!(hull[0], first);
            for q in &p {
                if !hull.contains(&q.id) {
                    prop_assert!(strictly_inside_convex(&ring, *q));
                }
            }
        }
    }
}
