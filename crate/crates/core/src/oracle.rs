//! Exact optimum tours at desk scale.
//!
//! Three independent routes: exhaustive cycle enumeration, the Held–Karp
//! subset DP, and enumeration of hull-order interleavings (every crossing-free
//! tour, hence the optimum, keeps the hull vertices in hull order). All of
//! them report `tour_length(canonical_form(best))`, so equal optimal tours
//! give bit-identical values across oracles.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::instance::Instance;
use crate::tour::{self, canonical_form, tour_length, Tour};

pub const BRUTE_FORCE_MAX_N: usize = 11;
pub const HELD_KARP_MAX_N: usize = 18;
/// Cap on `binom(n, k) · k!` for the hull-order routes.
pub const INTERLEAVING_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    Brute,
    HeldKarp,
    HullOrder,
}

impl OracleMethod {
    pub fn name(self) -> &'static str {
        match self {
            OracleMethod::Brute => "brute",
            OracleMethod::HeldKarp => "held_karp",
            OracleMethod::HullOrder => "hull_order",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub optimum_value: f64,
    /// Canonical form of an optimal tour.
    pub optimum_tour: Tour,
    pub method: OracleMethod,
}

/// Keeps the shortest tour seen, ties broken by the smaller canonical form.
struct Best {
    value: f64,
    tour: Option<Tour>,
}

impl Best {
    fn new() -> Self {
        Best { value: f64::INFINITY, tour: None }
    }

    fn offer(&mut self, inst: &Instance, candidate: Tour) {
        let canon = canonical_form(&candidate);
        let value = tour_length(inst, &canon);
        let better = match &self.tour {
            None => true,
            Some(t) => value < self.value || (value == self.value && canon < *t),
        };
        if better {
            self.value = value;
            self.tour = Some(canon);
        }
    }

    fn finish(self, method: OracleMethod) -> OracleResult {
        OracleResult { optimum_value: self.value, optimum_tour: self.tour.expect("at least one candidate"), method }
    }
}

/// Reorders `v` into its lexicographic successor; false when `v` was the last.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Scans all `(n-1)!/2` distinct cycles (label 1 fixed first, one
/// orientation per cycle).
pub fn brute_force_optimum(inst: &Instance) -> Result<OracleResult, Error> {
    let n = inst.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge(format!("brute force handles n <= {BRUTE_FORCE_MAX_N}, got {n}")));
    }
    let mut rest: Vec<u32> = (2..=n as u32).collect();
    let mut perm = alloc::vec![0u32; n];
    perm[0] = 1;
    let mut best_value = f64::INFINITY;
    let mut best: Option<Tour> = None;
    loop {
        if rest[0] < rest[rest.len() - 1] {
            perm[1..].copy_from_slice(&rest);
            let cand = Tour::from_perm_unchecked(perm.clone());
            // already canonical: 1 first, second label below the last
            let value = tour_length(inst, &cand);
            if best.is_none() || value < best_value {
                best_value = value;
                best = Some(cand);
            }
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    Ok(OracleResult { optimum_value: best_value, optimum_tour: best.expect("n >= 3"), method: OracleMethod::Brute })
}

/// Bitmask DP over subsets of labels `2..=n`, rooted at label 1.
pub fn held_karp_optimum(inst: &Instance) -> Result<OracleResult, Error> {
    let n = inst.n();
    if n > HELD_KARP_MAX_N {
        return Err(Error::TooLarge(format!("Held-Karp handles n <= {HELD_KARP_MAX_N}, got {n}")));
    }
    let m = n - 1;
    let full = (1usize << m) - 1;
    let label = |v: usize| v as u32 + 2;
    // cost[mask * m + v]: shortest path from label 1 through `mask`, ending at v
    let mut cost = alloc::vec![f64::INFINITY; (1usize << m) * m];
    let mut parent = alloc::vec![u8::MAX; (1usize << m) * m];
    for v in 0..m {
        cost[(1 << v) * m + v] = inst.dist(1, label(v));
    }
    for mask in 1..=full {
        for v in 0..m {
            if mask & (1 << v) == 0 {
                continue;
            }
            let here = cost[mask * m + v];
            if here == f64::INFINITY {
                continue;
            }
            for w in 0..m {
                if mask & (1 << w) != 0 {
                    continue;
                }
                let next = mask | (1 << w);
                let cand = here + inst.dist(label(v), label(w));
                if cand < cost[next * m + w] {
                    cost[next * m + w] = cand;
                    parent[next * m + w] = v as u8;
                }
            }
        }
    }
    let mut end = 0;
    let mut end_cost = f64::INFINITY;
    for v in 0..m {
        let c = cost[full * m + v] + inst.dist(label(v), 1);
        if c < end_cost {
            end_cost = c;
            end = v;
        }
    }
    let mut perm = Vec::with_capacity(n);
    let (mut mask, mut v) = (full, end);
    loop {
        perm.push(label(v));
        let p = parent[mask * m + v];
        mask &= !(1 << v);
        if p == u8::MAX {
            break;
        }
        v = p as usize;
    }
    perm.push(1);
    perm.reverse();
    let mut best = Best::new();
    best.offer(inst, Tour::from_perm_unchecked(perm));
    Ok(best.finish(OracleMethod::HeldKarp))
}

/// `binom(n, k) · k!`, saturating.
pub fn interleaving_bound(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc.saturating_mul((n - t) as u128);
    }
    acc
}

fn check_interleaving_budget(inst: &Instance) -> Result<(), Error> {
    let (n, k) = (inst.n(), inst.inner_count());
    if interleaving_bound(n, k) > INTERLEAVING_BUDGET {
        return Err(Error::TooLarge(format!("binom({n},{k})*{k}! exceeds {INTERLEAVING_BUDGET}")));
    }
    Ok(())
}

/// Calls `visit` on every sequence that starts at the first hull vertex,
/// lists the hull in its cyclic order, and places each inner point into any
/// gap. Every cycle that respects hull order is produced exactly once.
pub fn for_each_hull_interleaving(inst: &Instance, mut visit: impl FnMut(&Tour)) {
    let inner: Vec<u32> = (1..=inst.n() as u32).filter(|&l| !inst.is_hull_vertex(l)).collect();
    let mut seq: Vec<u32> = inst.hull().to_vec();
    fn place(seq: &mut Vec<u32>, inner: &[u32], visit: &mut dyn FnMut(&Tour)) {
        match inner.split_first() {
            None => visit(&Tour::from_perm_unchecked(seq.clone())),
            Some((&p, rest)) => {
                for gap in 1..=seq.len() {
                    seq.insert(gap, p);
                    place(seq, rest, visit);
                    seq.remove(gap);
                }
            }
        }
    }
    place(&mut seq, &inner, &mut visit);
}

/// All distinct intersection-free cycles, as sorted canonical tours.
pub fn enumerate_intersection_free(inst: &Instance) -> Result<Vec<Tour>, Error> {
    if inst.n() > 10 {
        check_interleaving_budget(inst)?;
    }
    let mut out = Vec::new();
    for_each_hull_interleaving(inst, |t| {
        if tour::is_intersection_free(inst, t) {
            out.push(canonical_form(t));
        }
    });
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Shortest tour among all hull-order interleavings.
///
/// Instances up to the brute-force size are always accepted, since there are
/// at most `(n-1)!/2` interleavings; larger ones must fit the interleaving
/// budget.
pub fn hull_order_optimum(inst: &Instance) -> Result<OracleResult, Error> {
    if inst.n() > BRUTE_FORCE_MAX_N {
        check_interleaving_budget(inst)?;
    }
    let mut best = Best::new();
    for_each_hull_interleaving(inst, |t| best.offer(inst, t.clone()));
    Ok(best.finish(OracleMethod::HullOrder))
}

/// The cheapest applicable oracle: hull order when its enumeration fits the
/// budget, else Held–Karp, else brute force; `None` if nothing applies.
pub fn strongest_optimum(inst: &Instance) -> Option<OracleResult> {
    let hull_order = match check_interleaving_budget(inst) {
        Ok(()) => hull_order_optimum(inst),
        Err(e) => Err(e),
    };
    hull_order
        .or_else(|_| held_karp_optimum(inst))
        .or_else(|_| brute_force_optimum(inst))
        .ok()
}

/// Jumps that carry a crossing-free tour `x` to an optimal permutation.
///
/// The target is `optimum` read in the direction and rotation that make its
/// hull subsequence equal to `x`'s. Each inner point is then moved, at most
/// once, next to its predecessor among the already placed points. Returns
/// the jump list and the resulting permutation, or `None` if `x` does not
/// respect hull order.
pub fn jumps_to_optimum(inst: &Instance, x: &Tour, optimum: &Tour) -> Option<(Vec<(usize, usize)>, Tour)> {
    if !tour::respects_hull_order(inst, x) {
        return None;
    }
    let n = x.len();
    let hull_in_x: Vec<u32> = x.as_slice().iter().copied().filter(|&l| inst.is_hull_vertex(l)).collect();
    let first = hull_in_x[0];
    let second = hull_in_x[1];

    let opt = optimum.as_slice();
    let start = opt.iter().position(|&l| l == first)?;
    let forward: Vec<u32> = (0..n).map(|t| opt[(start + t) % n]).collect();
    let backward: Vec<u32> = (0..n).map(|t| opt[(start + n - t) % n]).collect();
    let next_hull = |seq: &[u32]| seq.iter().copied().skip(1).find(|&l| inst.is_hull_vertex(l));
    let target = if next_hull(&forward) == Some(second) { forward } else { backward };

    let mut rank = alloc::vec![0usize; n + 1];
    for (pos, &l) in target.iter().enumerate() {
        rank[l as usize] = pos;
    }
    let mut placed = alloc::vec![false; n + 1];
    for &l in &hull_in_x {
        placed[l as usize] = true;
    }
    let mut y = x.clone();
    let mut jumps = Vec::new();
    let inner: Vec<u32> = target.iter().copied().filter(|&l| !inst.is_hull_vertex(l)).collect();
    for e in inner {
        let pos = |t: &Tour, l: u32| t.as_slice().iter().position(|&v| v == l).unwrap() + 1;
        let pred = target[..rank[e as usize]].iter().rev().copied().find(|&l| placed[l as usize]);
        let succ = target[rank[e as usize] + 1..].iter().copied().find(|&l| placed[l as usize]);
        let q = pos(&y, e);
        let after_pred = pred.is_none_or(|p| pos(&y, p) < q);
        let before_succ = succ.is_none_or(|s| q < pos(&y, s));
        if !(after_pred && before_succ) {
            let j = match pred {
                Some(p) => {
                    let r = pos(&y, p);
                    if q > r { r + 1 } else { r }
                }
                None => {
                    let r = pos(&y, succ.expect("hull is non-empty"));
                    if q > r { r } else { r - 1 }
                }
            };
            y.jump(q, j).expect("positions in range");
            jumps.push((q, j));
        }
        placed[e as usize] = true;
    }
    Some((jumps, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_convex, generate_grid, generate_with_inner};
    use crate::tour::respects_hull_order;

    fn square() -> Instance {
        Instance::validate(&[(0, 0), (1, 0), (1, 1), (0, 1)], 0).unwrap()
    }

    #[test]
    fn square_oracles() {
        let sq = square();
        for r in [brute_force_optimum(&sq), held_karp_optimum(&sq), hull_order_optimum(&sq)] {
            let r = r.unwrap();
            assert_eq!(r.optimum_value, 4.0);
            assert_eq!(r.optimum_tour.as_slice(), &[1, 2, 3, 4]);
        }
    }

    #[test]
    fn next_permutation_counts() {
        let mut v = [1, 2, 3, 4];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn convex_optimum_is_hull_tour() {
        for n in 3..=9 {
            let inst = generate_convex(n, 128, n as u64).unwrap();
            let hull = canonical_form(&Tour::new(inst.hull().to_vec()).unwrap());
            let brute = brute_force_optimum(&inst).unwrap();
            assert_eq!(brute.optimum_tour, hull);
            assert_eq!(enumerate_intersection_free(&inst).unwrap(), alloc::vec![hull]);
        }
    }

    #[test]
    fn oracles_agree_on_random_instances() {
        for seed in 0..25 {
            let n = 5 + (seed as usize % 6);
            let inst = generate_grid(n, 64, seed).unwrap();
            let b = brute_force_optimum(&inst).unwrap();
            let h = held_karp_optimum(&inst).unwrap();
            let o = hull_order_optimum(&inst).unwrap();
            assert_eq!(b.optimum_value, h.optimum_value, "seed {seed}");
            assert_eq!(b.optimum_value, o.optimum_value, "seed {seed}");
            assert!(tour::is_intersection_free(&inst, &b.optimum_tour));
            assert!(respects_hull_order(&inst, &b.optimum_tour));
        }
    }

    #[test]
    fn hull_order_agrees_with_held_karp_beyond_brute_force() {
        let inst = generate_with_inner(12, 2, 256, 4).unwrap();
        let h = held_karp_optimum(&inst).unwrap();
        let o = hull_order_optimum(&inst).unwrap();
        assert_eq!(h.optimum_value, o.optimum_value);
        assert!(brute_force_optimum(&inst).is_err());
    }

    #[test]
    fn oracle_size_limits() {
        let inst = generate_grid(20, 200, 1).unwrap();
        assert!(matches!(brute_force_optimum(&inst), Err(Error::TooLarge(_))));
        assert!(matches!(held_karp_optimum(&inst), Err(Error::TooLarge(_))));
    }

    /// All cycles with a crossing filter, enumerated without hull structure.
    fn all_crossing_free_cycles(inst: &Instance) -> Vec<Tour> {
        let n = inst.n();
        let mut rest: Vec<u32> = (2..=n as u32).collect();
        let mut out = Vec::new();
        loop {
            if rest[0] < rest[rest.len() - 1] {
                let mut perm = alloc::vec![1];
                perm.extend_from_slice(&rest);
                let t = Tour::new(perm).unwrap();
                if tour::is_intersection_free(inst, &t) {
                    out.push(t);
                }
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn triangle_plus_inner_point() {
        let inst = Instance::validate(&[(0, 0), (6, 0), (2, 5), (2, 2)], 0).unwrap();
        assert_eq!(inst.inner_count(), 1);
        let free = enumerate_intersection_free(&inst).unwrap();
        assert_eq!(free, all_crossing_free_cycles(&inst));
        assert!(free.len() as u128 <= interleaving_bound(4, 1));
    }

    #[test]
    fn square_plus_inner_point() {
        let inst = Instance::validate(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)], 0).unwrap();
        let free = enumerate_intersection_free(&inst).unwrap();
        assert_eq!(free, all_crossing_free_cycles(&inst));
        assert!(free.len() as u128 <= interleaving_bound(5, 1));
        assert!(free.iter().all(|t| respects_hull_order(&inst, t)));
    }

    #[test]
    fn interleaving_enumeration_matches_full_enumeration() {
        for seed in 0..12 {
            let inst = generate_with_inner(5 + seed as usize % 3, 1 + seed as usize % 2, 128, seed).unwrap();
            assert_eq!(enumerate_intersection_free(&inst).unwrap(), all_crossing_free_cycles(&inst));
        }
    }

    #[test]
    fn jumps_reach_optimum_within_k() {
        for seed in 0..10 {
            let inst = generate_with_inner(6, 2, 128, seed).unwrap();
            let opt = hull_order_optimum(&inst).unwrap();
            for x in enumerate_intersection_free(&inst).unwrap() {
                let (jumps, y) = jumps_to_optimum(&inst, &x, &opt.optimum_tour).unwrap();
                assert!(jumps.len() <= 2);
                assert_eq!(canonical_form(&y), opt.optimum_tour);
                let mut replay = x.clone();
                for &(i, j) in &jumps {
                    for (a, b) in tour::jump_as_inversions(i, j).unwrap() {
                        replay.invert(a, b).unwrap();
                    }
                }
                assert_eq!(replay, y);
            }
        }
    }

    /// What does hold: from a crossing-free tour, the two edges added by a
    /// strictly improving inversion never cross each other.
    #[test]
    fn improving_inversion_new_edges_do_not_cross_each_other() {
        for seed in 0..15 {
            let inst = generate_with_inner(6, 2, 128, seed).unwrap();
            for x in enumerate_intersection_free(&inst).unwrap() {
                let n = x.len();
                for i in 1..n {
                    for j in i + 1..=n {
                        if tour::inversion_is_noop(n, i, j) || tour::inversion_delta(&inst, &x, i, j) >= 0.0 {
                            continue;
                        }
                        let (a, b, c, d) = (x.at(i - 1), x.at(i), x.at(j), x.at(j + 1));
                        let p = |l| inst.point(l);
                        assert!(!crate::geom::segments_properly_intersect(p(a), p(c), p(b), p(d)));
                    }
                }
            }
        }
    }
}
