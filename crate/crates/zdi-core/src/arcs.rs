//! Open arcs on the circle [0, 2π) and a sweep-line maximum-stabbing count.
//!
//! The normal fast path stabs half-circle arcs around eigenvalue arguments;
//! the weighted-permutation fast path stabs the per-cycle negativity arcs of
//! `(−1)^{(n_j−1)/2} cos(n_jθ − α_j)`.

use crate::scalar::{wrap_two_pi, Scalar};

/// Open arc `(start, end)` with `0 ≤ start < 2π` and `start < end ≤ start + 2π`;
/// `end` may exceed 2π, meaning the arc wraps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc<T> {
    pub start: T,
    pub end: T,
}

impl<T: Scalar> Arc<T> {
    /// Normalized arc from a raw start angle and positive length ≤ 2π.
    pub fn new(start: T, length: T) -> Self {
        debug_assert!(length > T::zero() && length <= T::TAU());
        let s = wrap_two_pi(start);
        Arc {
            start: s,
            end: s + length,
        }
    }

    pub fn length(&self) -> T {
        self.end - self.start
    }

    /// Open-arc membership of an angle (taken mod 2π).
    pub fn contains(&self, theta: T) -> bool {
        let t = wrap_two_pi(theta);
        if t > self.start && t < self.end {
            return true;
        }
        // wrapped part
        let t2 = t + T::TAU();
        t2 > self.start && t2 < self.end
    }
}

/// A set of open arcs, e.g. one cycle's negativity set S_j.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSet<T> {
    pub arcs: Vec<Arc<T>>,
}

impl<T: Scalar> ArcSet<T> {
    pub fn new(arcs: Vec<Arc<T>>) -> Self {
        Self { arcs }
    }

    /// Total measure of the set (arcs assumed disjoint).
    pub fn measure(&self) -> T {
        self.arcs
            .iter()
            .fold(T::zero(), |acc, a| acc + a.length())
    }

    pub fn contains(&self, theta: T) -> bool {
        self.arcs.iter().any(|a| a.contains(theta))
    }
}

/// Maximum number of arcs sharing a common interior point, with a witness
/// angle chosen in the widest interval attaining the maximum.
///
/// Arcs are open, so endpoint coincidences never count; the sweep evaluates
/// the count on the open intervals between consecutive event angles.
pub fn max_stabbing<T: Scalar>(arcs: &[Arc<T>]) -> (usize, T) {
    if arcs.is_empty() {
        return (0, T::zero());
    }
    let tau = T::TAU();
    // Split wrapping arcs at 2π.
    let mut events: Vec<(T, i32)> = Vec::with_capacity(arcs.len() * 2 + 2);
    for a in arcs {
        if a.end <= tau {
            events.push((a.start, 1));
            events.push((a.end, -1));
        } else {
            events.push((a.start, 1));
            events.push((tau, -1));
            events.push((T::zero(), 1));
            events.push((a.end - tau, -1));
        }
    }
    events.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());

    // Endpoints that agree up to float jitter are one event: arcs are open,
    // so a touching pair must not register a sliver of overlap.
    let eps = T::lit(1e-9).max(T::epsilon() * T::lit(64.0));

    let mut best_count = 0usize;
    let mut best_width = T::neg_infinity();
    let mut best_witness = T::zero();
    let mut active: i32 = 0;
    let mut idx = 0;
    while idx < events.len() {
        let group_start = events[idx].0;
        let mut group_end = group_start;
        while idx < events.len() && events[idx].0 - group_start <= eps {
            group_end = events[idx].0;
            active += events[idx].1;
            idx += 1;
        }
        let next = if idx < events.len() { events[idx].0 } else { tau };
        let width = next - group_end;
        if width > eps {
            let count = active.max(0) as usize;
            if count > best_count || (count == best_count && width > best_width) {
                best_count = count;
                best_width = width;
                best_witness = (group_end + next) * T::lit(0.5);
            }
        }
    }
    (best_count, best_witness)
}
