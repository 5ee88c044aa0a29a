//! Canonical multi-index orbits of a symmetric tensor.
//!
//! A symmetric tensor of order `m` and dimension `n` is determined by its
//! values on nondecreasing index tuples. Each such tuple stands for the set
//! of its distinct permutations (its orbit); the size of that set is the
//! multinomial coefficient of the tuple's repetition pattern.

use alloc::vec::Vec;
use core::cmp::Ordering;

/// One canonical orbit as seen from outside the crate: 1-based sorted key,
/// number of distinct permutations, and the stored value.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiIndexOrbit {
    pub key: Vec<usize>,
    pub multiplicity: u64,
    pub value: f64,
}

/// `m! / Π cᵢ!` for the repetition counts of a sorted key.
pub fn multiplicity(sorted_key: &[usize]) -> u64 {
    // Build the multinomial as a product of binomials to stay in u64.
    let mut acc = 1u64;
    let mut placed = 0u64;
    let mut i = 0;
    while i < sorted_key.len() {
        let mut j = i;
        while j < sorted_key.len() && sorted_key[j] == sorted_key[i] {
            j += 1;
        }
        let run = (j - i) as u64;
        placed += run;
        acc *= crate::math::binomial(placed, run);
        i = j;
    }
    acc
}

/// Per-orbit data shared by every tensor of a given shape.
#[derive(Debug)]
pub(crate) struct OrbitTable {
    order: usize,
    dim: usize,
    /// Flattened 0-based keys, `order` entries per orbit, in lexicographic order.
    keys: Vec<u16>,
    mult: Vec<f64>,
    /// For each orbit, its distinct indices with the number of permutations
    /// that start with that index.
    rows: Vec<(u16, f64)>,
    row_start: Vec<u32>,
}

impl OrbitTable {
    pub(crate) fn new(order: usize, dim: usize) -> Self {
        debug_assert!(order >= 1 && dim >= 1 && dim <= u16::MAX as usize);
        let mut keys = Vec::new();
        let mut mult = Vec::new();
        let mut rows = Vec::new();
        let mut row_start = Vec::new();
        let mut key = alloc::vec![0usize; order];
        loop {
            let m = multiplicity(&key) as f64;
            keys.extend(key.iter().map(|&k| k as u16));
            mult.push(m);
            row_start.push(rows.len() as u32);
            let mut i = 0;
            while i < order {
                let mut j = i;
                while j < order && key[j] == key[i] {
                    j += 1;
                }
                // permutations with index key[i] pinned to the front
                rows.push((key[i] as u16, m * (j - i) as f64 / order as f64));
                i = j;
            }
            // advance to the next nondecreasing tuple
            let mut p = order;
            while p > 0 && key[p - 1] == dim - 1 {
                p -= 1;
            }
            if p == 0 {
                break;
            }
            let v = key[p - 1] + 1;
            for k in &mut key[p - 1..] {
                *k = v;
            }
        }
        row_start.push(rows.len() as u32);
        Self {
            order,
            dim,
            keys,
            mult,
            rows,
            row_start,
        }
    }

    #[inline]
    pub(crate) fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.mult.len()
    }

    #[inline]
    pub(crate) fn key(&self, orbit: usize) -> &[u16] {
        &self.keys[orbit * self.order..(orbit + 1) * self.order]
    }

    #[inline]
    pub(crate) fn multiplicity(&self, orbit: usize) -> f64 {
        self.mult[orbit]
    }

    #[inline]
    pub(crate) fn rows(&self, orbit: usize) -> &[(u16, f64)] {
        &self.rows[self.row_start[orbit] as usize..self.row_start[orbit + 1] as usize]
    }

    /// Position of a sorted 0-based key.
    pub(crate) fn position(&self, sorted_key: &[u16]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.key(mid).cmp(sorted_key) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}
