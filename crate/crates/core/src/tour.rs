//! Permutations read as Hamiltonian cycles.
//!
//! Positions are 1-based at this API, as are labels. The cycle `C(x)`
//! induced by `x` has edges `{x_p, x_{p+1}}` for `p = 1..n`, with position
//! `n + 1` wrapping to 1; edge `p` below always means that edge.

use alloc::vec::Vec;

use crate::error::Error;
use crate::geom;
use crate::instance::Instance;

/// A permutation of the labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tour {
    perm: Vec<u32>,
}

impl Tour {
    pub fn new(perm: Vec<u32>) -> Result<Self, Error> {
        let n = perm.len();
        let mut seen = alloc::vec![false; n + 1];
        for &l in &perm {
            let l = l as usize;
            if l == 0 || l > n || seen[l] {
                return Err(Error::NotAPermutation(n));
            }
            seen[l] = true;
        }
        Ok(Tour { perm })
    }

    /// `1, 2, ..., n`.
    pub fn identity(n: usize) -> Self {
        Tour { perm: (1..=n as u32).collect() }
    }

    pub(crate) fn from_perm_unchecked(perm: Vec<u32>) -> Self {
        Tour { perm }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.perm
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.perm
    }

    /// Label at 1-based position `p`, wrapping modulo `n` (so `at(0) == at(n)`).
    #[inline]
    pub fn at(&self, p: usize) -> u32 {
        let n = self.perm.len();
        self.perm[(p + n - 1) % n]
    }

    /// Undirected edge `p` as an ordered label pair `(x_p, x_{p+1})`.
    pub fn edge(&self, p: usize) -> (u32, u32) {
        (self.at(p), self.at(p + 1))
    }

    /// Undirected edge set of the cycle, each edge as `(min, max)`, sorted.
    pub fn edge_set(&self) -> Vec<(u32, u32)> {
        let mut edges: Vec<(u32, u32)> = (1..=self.len())
            .map(|p| {
                let (a, b) = self.edge(p);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    fn check_inversion(&self, i: usize, j: usize) -> Result<(), Error> {
        if i == 0 || j > self.len() || i >= j {
            return Err(Error::invalid(alloc::format!("inversion ({i}, {j}) needs 1 <= i < j <= {}", self.len())));
        }
        Ok(())
    }

    /// In-place inversion of positions `i..=j`.
    pub fn invert(&mut self, i: usize, j: usize) -> Result<(), Error> {
        self.check_inversion(i, j)?;
        self.perm[i - 1..j].reverse();
        Ok(())
    }

    /// In-place jump: the element at position `i` moves to position `j`.
    pub fn jump(&mut self, i: usize, j: usize) -> Result<(), Error> {
        let n = self.len();
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::invalid(alloc::format!("jump ({i}, {j}) needs distinct positions in 1..={n}")));
        }
        if i < j {
            self.perm[i - 1..j].rotate_left(1);
        } else {
            self.perm[j - 1..i].rotate_right(1);
        }
        Ok(())
    }
}

/// Sum of the edge lengths of `C(x)`, accumulated in position order.
///
/// This is the single routine every oracle and every optimum comparison
/// goes through, so equal tours always produce bit-identical values.
pub fn tour_length(inst: &Instance, tour: &Tour) -> f64 {
    let perm = tour.as_slice();
    let n = perm.len();
    let mut total = 0.0;
    for p in 0..n {
        total += inst.dist(perm[p], perm[(p + 1) % n]);
    }
    total
}

/// `inv(i, j)[x]`: reverses the subsequence at positions `i..=j`.
pub fn apply_inversion(tour: &Tour, i: usize, j: usize) -> Result<Tour, Error> {
    let mut out = tour.clone();
    out.invert(i, j)?;
    Ok(out)
}

/// `jmp(i, j)[x]`: moves the element at position `i` to position `j`,
/// shifting the elements in between.
pub fn apply_jump(tour: &Tour, i: usize, j: usize) -> Result<Tour, Error> {
    let mut out = tour.clone();
    out.jump(i, j)?;
    Ok(out)
}

/// True for the three inversions that leave the cycle unchanged:
/// `(1, n)`, `(2, n)` and `(1, n-1)`.
pub fn inversion_is_noop(n: usize, i: usize, j: usize) -> bool {
    (i, j) == (1, n) || (i, j) == (2, n) || (i + 1, j) == (2, n - 1)
}

/// `f(inv(i,j)[x]) - f(x)` from the two removed and two added edges.
///
/// Added and removed pairs are each summed before subtracting, so the
/// no-op inversions give exactly zero.
pub fn inversion_delta(inst: &Instance, tour: &Tour, i: usize, j: usize) -> f64 {
    if (i, j) == (1, tour.len()) {
        return 0.0;
    }
    let (a, b) = (tour.at(i - 1), tour.at(i));
    let (c, d) = (tour.at(j), tour.at(j + 1));
    (inst.dist(a, c) + inst.dist(b, d)) - (inst.dist(a, b) + inst.dist(c, d))
}

/// Simulates `jmp(i, j)` by one or two inversions, applied in list order.
pub fn jump_as_inversions(i: usize, j: usize) -> Result<Vec<(usize, usize)>, Error> {
    if i == j {
        return Err(Error::invalid("jump needs distinct positions"));
    }
    Ok(if i.abs_diff(j) == 1 {
        alloc::vec![(i.min(j), i.max(j))]
    } else if i < j {
        alloc::vec![(i, j), (i, j - 1)]
    } else {
        alloc::vec![(j, i), (j + 1, i)]
    })
}

fn edges_cross(inst: &Instance, e: (u32, u32), f: (u32, u32)) -> bool {
    if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
        return false;
    }
    geom::segments_properly_intersect(inst.point(e.0), inst.point(e.1), inst.point(f.0), inst.point(f.1))
}

/// Every pair of edge positions `(p, q)`, `p < q`, whose segments properly
/// cross, in lexicographic order. Adjacent edges are never reported.
pub fn crossing_pairs(inst: &Instance, tour: &Tour) -> Vec<(usize, usize)> {
    let n = tour.len();
    let mut out = Vec::new();
    for p in 1..=n {
        let e = tour.edge(p);
        for q in p + 2..=n {
            if p == 1 && q == n {
                continue;
            }
            if edges_cross(inst, e, tour.edge(q)) {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn is_intersection_free(inst: &Instance, tour: &Tour) -> bool {
    let n = tour.len();
    for p in 1..=n {
        let e = tour.edge(p);
        for q in p + 2..=n {
            if !(p == 1 && q == n) && edges_cross(inst, e, tour.edge(q)) {
                return false;
            }
        }
    }
    true
}

/// The inversion that uncrosses the lexicographically first crossing pair.
///
/// For crossing edges `p < q` this is `inv(p + 1, q)`: it removes
/// `{x_p, x_{p+1}}` and `{x_q, x_{q+1}}` and reconnects with two edges that
/// do not cross each other. `None` iff the tour is intersection-free.
pub fn find_uncrossing_inversion(inst: &Instance, tour: &Tour) -> Option<(usize, usize)> {
    let n = tour.len();
    for p in 1..=n {
        let e = tour.edge(p);
        for q in p + 2..=n {
            if !(p == 1 && q == n) && edges_cross(inst, e, tour.edge(q)) {
                return Some((p + 1, q));
            }
        }
    }
    None
}

/// True iff the hull labels, read cyclically along the tour, follow the
/// hull's cyclic order in one direction or the other.
pub fn respects_hull_order(inst: &Instance, tour: &Tour) -> bool {
    let hull = inst.hull();
    let induced: Vec<u32> = tour.as_slice().iter().copied().filter(|&l| inst.is_hull_vertex(l)).collect();
    let h = hull.len();
    if induced.len() != h {
        return false;
    }
    let start = induced.iter().position(|&l| l == hull[0]).expect("hull label present");
    let forward = (0..h).all(|t| induced[(start + t) % h] == hull[t]);
    let backward = (0..h).all(|t| induced[(start + h - t) % h] == hull[t]);
    forward || backward
}

/// True iff no inversion yields a strictly shorter cycle.
///
/// Compares the exact two-edge exchange delta against zero. The three
/// no-op inversions are skipped since they reproduce the same cycle.
pub fn is_two_opt_local_optimum(inst: &Instance, tour: &Tour) -> bool {
    improving_inversion(inst, tour).is_none()
}

/// First strictly improving inversion in lexicographic order, if any.
pub fn improving_inversion(inst: &Instance, tour: &Tour) -> Option<(usize, usize)> {
    let n = tour.len();
    for i in 1..n {
        for j in i + 1..=n {
            if !inversion_is_noop(n, i, j) && inversion_delta(inst, tour, i, j) < 0.0 {
                return Some((i, j));
            }
        }
    }
    None
}

/// Representative of the cycle: rotated so label 1 comes first, read in the
/// direction whose second label is smaller.
pub fn canonical_form(tour: &Tour) -> Tour {
    let perm = tour.as_slice();
    let n = perm.len();
    if n == 0 {
        return tour.clone();
    }
    let start = perm.iter().position(|&l| l == 1).expect("label 1 present");
    let next = perm[(start + 1) % n];
    let prev = perm[(start + n - 1) % n];
    let out: Vec<u32> = if n < 3 || next <= prev {
        (0..n).map(|t| perm[(start + t) % n]).collect()
    } else {
        (0..n).map(|t| perm[(start + n - t) % n]).collect()
    };
    Tour { perm: out }
}
