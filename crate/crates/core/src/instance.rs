//! Validated point sets and the seeded instance generators.
//!
//! Generator distributions (uniform grid cells, jittered circle, rejection
//! sampled interior points) are choices of this crate, not part of any
//! published benchmark.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::Error;
use crate::geom::{self, InstanceMetrics, Point};
use crate::rng::{self, SearchRng};

/// Total point draws a generator may spend before giving up.
pub const DRAW_BUDGET: u64 = 1_000_000;

/// Fine-grained jitter resolution for the convex generator.
const JITTER_STEPS: u64 = 1 << 20;

/// A validated instance: distinct points, no three collinear.
///
/// Point `i` (0-based) carries label `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    points: Vec<Point>,
    grid_size: u32,
    hull: Vec<u32>,
    distances: Vec<f64>,
}

impl Instance {
    /// Validates raw coordinates. `grid_size = 0` means free-form.
    pub fn validate(coords: &[(i32, i32)], grid_size: u32) -> Result<Self, Error> {
        let n = coords.len();
        if n < 3 {
            return Err(Error::TooSmall(n));
        }
        let points: Vec<Point> = coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Point::new(i as u32 + 1, x, y))
            .collect();
        if grid_size > 0 {
            let hi = grid_size as i64 - 1;
            if let Some(p) = points.iter().find(|p| !(0..=hi).contains(&(p.x as i64)) || !(0..=hi).contains(&(p.y as i64))) {
                return Err(Error::CoordinateOutOfRange { label: p.id, x: p.x, y: p.y, m: grid_size });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if (points[i].x, points[i].y) == (points[j].x, points[j].y) {
                    return Err(Error::DuplicatePoint(points[i].id, points[j].id));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if geom::orient(points[i], points[j], points[k]) == 0 {
                        return Err(Error::CollinearTriple(points[i].id, points[j].id, points[k].id));
                    }
                }
            }
        }
        let hull = geom::convex_hull(&points)?;
        let mut distances = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                distances[i * n + j] = geom::distance(points[i], points[j]);
            }
        }
        Ok(Instance { points, grid_size, hull, distances })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, label: u32) -> Point {
        self.points[label as usize - 1]
    }

    pub fn coords(&self) -> Vec<(i32, i32)> {
        self.points.iter().map(|p| (p.x, p.y)).collect()
    }

    /// Side `m` of the generating grid, 0 for free-form instances.
    pub fn grid_size(&self) -> u32 {
        self.grid_size
    }

    /// Hull labels in counterclockwise order from the lexicographically
    /// smallest point.
    pub fn hull(&self) -> &[u32] {
        &self.hull
    }

    /// Number of points strictly inside the hull (`k`).
    pub fn inner_count(&self) -> usize {
        self.n() - self.hull.len()
    }

    pub fn is_hull_vertex(&self, label: u32) -> bool {
        self.hull.contains(&label)
    }

    /// Distance between two labels, from the precomputed matrix.
    #[inline]
    pub fn dist(&self, a: u32, b: u32) -> f64 {
        self.distances[(a as usize - 1) * self.n() + (b as usize - 1)]
    }

    /// Computed on demand (O(n³)); cache it if you need it more than once.
    pub fn metrics(&self) -> InstanceMetrics {
        geom::instance_metrics(&self.points).expect("validated instances have well-defined metrics")
    }
}

/// Accumulates candidate points, enforcing distinctness and general position.
struct Builder {
    coords: Vec<(i32, i32)>,
    draws: u64,
}

impl Builder {
    fn new() -> Self {
        Builder { coords: Vec::new(), draws: 0 }
    }

    fn charge(&mut self) -> Result<(), Error> {
        self.draws += 1;
        if self.draws > DRAW_BUDGET {
            Err(Error::GenerationExhausted(DRAW_BUDGET))
        } else {
            Ok(())
        }
    }

    fn fits(&self, c: (i32, i32)) -> bool {
        let p = Point::new(0, c.0, c.1);
        let pts: Vec<Point> = self.coords.iter().map(|&(x, y)| Point::new(0, x, y)).collect();
        if self.coords.contains(&c) {
            return false;
        }
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if geom::orient(pts[i], pts[j], p) == 0 {
                    return false;
                }
            }
        }
        true
    }
}

fn check_grid(m: u32) -> Result<(), Error> {
    if m < 3 {
        return Err(Error::invalid("grid side m must be at least 3"));
    }
    if m > i32::MAX as u32 {
        return Err(Error::invalid("grid side m must fit in i32"));
    }
    Ok(())
}

/// `n` points drawn uniformly from the `m × m` grid, rejecting duplicates and
/// collinear candidates one point at a time.
pub fn generate_grid(n: usize, m: u32, seed: u64) -> Result<Instance, Error> {
    check_grid(m)?;
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let mut rng = rng::seeded(seed);
    let mut b = Builder::new();
    while b.coords.len() < n {
        b.charge()?;
        let c = (rng::below(&mut rng, m as u64) as i32, rng::below(&mut rng, m as u64) as i32);
        if b.fits(c) {
            b.coords.push(c);
        }
    }
    Instance::validate(&b.coords, m)
}

/// Places `n` points near the circle inscribed in the grid, in convex position.
fn convex_ring(b: &mut Builder, rng: &mut SearchRng, n: usize, m: u32) -> Result<(), Error> {
    let center = (m - 1) as f64 / 2.0;
    let radius = center;
    let spacing = 2.0 * PI / n as f64;
    let jitter = PI / (4.0 * n as f64);
    loop {
        b.coords.clear();
        for i in 0..n {
            loop {
                b.charge()?;
                let u = rng::below(rng, JITTER_STEPS) as f64 / (JITTER_STEPS - 1) as f64;
                let theta = i as f64 * spacing + (2.0 * u - 1.0) * jitter;
                let x = libm::round(center + radius * libm::cos(theta));
                let y = libm::round(center + radius * libm::sin(theta));
                let c = (x.clamp(0.0, (m - 1) as f64) as i32, y.clamp(0.0, (m - 1) as f64) as i32);
                if b.fits(c) {
                    b.coords.push(c);
                    break;
                }
            }
        }
        let pts: Vec<Point> = b.coords.iter().enumerate().map(|(i, &(x, y))| Point::new(i as u32, x, y)).collect();
        if geom::convex_hull(&pts)?.len() == n {
            return Ok(());
        }
    }
}

fn check_headroom(n: usize, m: u32) -> Result<(), Error> {
    if (m as u64) < 8 * n as u64 {
        return Err(Error::invalid(format!("convex generation needs m >= 8n (n = {n}, m = {m})")));
    }
    Ok(())
}

/// `n` points in convex position on the `m × m` grid (`m >= 8n`).
///
/// Angles are equally spaced with a uniform jitter of ±π/(4n), then rounded
/// to the grid; a point that would duplicate or be collinear with an earlier
/// pair is redrawn, and the whole ring is redrawn if some point ends up off
/// the hull.
pub fn generate_convex(n: usize, m: u32, seed: u64) -> Result<Instance, Error> {
    generate_with_inner(n, 0, m, seed)
}

/// `h` points in convex position plus `k` points strictly inside their hull.
pub fn generate_with_inner(h: usize, k: usize, m: u32, seed: u64) -> Result<Instance, Error> {
    check_grid(m)?;
    if h < 3 {
        return Err(Error::TooSmall(h));
    }
    check_headroom(h + k, m)?;
    let mut rng = rng::seeded(seed);
    let mut b = Builder::new();
    convex_ring(&mut b, &mut rng, h, m)?;

    let mut ring: Vec<Point> = b.coords.iter().enumerate().map(|(i, &(x, y))| Point::new(i as u32 + 1, x, y)).collect();
    let order = geom::convex_hull(&ring)?;
    ring = order.iter().map(|&id| ring[id as usize - 1]).collect();
    let (lo_x, hi_x) = (ring.iter().map(|p| p.x).min().unwrap(), ring.iter().map(|p| p.x).max().unwrap());
    let (lo_y, hi_y) = (ring.iter().map(|p| p.y).min().unwrap(), ring.iter().map(|p| p.y).max().unwrap());

    let mut placed = 0;
    while placed < k {
        b.charge()?;
        let x = lo_x + rng::below(&mut rng, (hi_x - lo_x + 1) as u64) as i32;
        let y = lo_y + rng::below(&mut rng, (hi_y - lo_y + 1) as u64) as i32;
        if geom::strictly_inside_convex(&ring, Point::new(0, x, y)) && b.fits((x, y)) {
            b.coords.push((x, y));
            placed += 1;
        }
    }
    Instance::validate(&b.coords, m)
}
