//! Enumeration of the 3D multi-indices carried by an order-M expansion.
//!
//! All alpha in N^3 with |alpha| <= M + 1 are stored densely in graded order
//! (by total degree, lexicographic within a degree). Neighbor lookups for
//! alpha +- e_j and alpha - 2 e_j are precomputed; an out-of-range neighbor
//! maps to [`NO_INDEX`], meaning the corresponding coefficient is zero.

use std::collections::HashMap;
use std::sync::Arc;

pub const DIM: usize = 3;

/// Sentinel for "no such multi-index"; the coefficient is taken as zero.
pub const NO_INDEX: u32 = u32::MAX;

#[derive(Debug)]
pub struct MultiIndexTable {
    order: usize,
    indices: Vec<[u8; DIM]>,
    lookup: HashMap<[u8; DIM], u32>,
    plus: Vec<[u32; DIM]>,
    minus: Vec<[u32; DIM]>,
    minus2: Vec<[u32; DIM]>,
    degree_start: Vec<usize>,
}

impl MultiIndexTable {
    /// Table for state order M: enumerates all |alpha| <= M + 1.
    pub fn new(order: usize) -> Arc<Self> {
        let max_deg = order + 1;
        let mut indices = Vec::new();
        let mut degree_start = Vec::with_capacity(max_deg + 2);
        for k in 0..=max_deg {
            degree_start.push(indices.len());
            for a0 in (0..=k).rev() {
                for a1 in (0..=k - a0).rev() {
                    let a2 = k - a0 - a1;
                    indices.push([a0 as u8, a1 as u8, a2 as u8]);
                }
            }
        }
        degree_start.push(indices.len());

        let lookup: HashMap<_, _> = indices
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i as u32))
            .collect();

        let neighbor = |a: [u8; DIM], d: usize, step: i32| -> u32 {
            let v = a[d] as i32 + step;
            if v < 0 {
                return NO_INDEX;
            }
            let mut b = a;
            b[d] = v as u8;
            lookup.get(&b).copied().unwrap_or(NO_INDEX)
        };

        let mut plus = Vec::with_capacity(indices.len());
        let mut minus = Vec::with_capacity(indices.len());
        let mut minus2 = Vec::with_capacity(indices.len());
        for &a in &indices {
            let mut p = [NO_INDEX; DIM];
            let mut m = [NO_INDEX; DIM];
            let mut m2 = [NO_INDEX; DIM];
            for d in 0..DIM {
                p[d] = neighbor(a, d, 1);
                m[d] = neighbor(a, d, -1);
                m2[d] = neighbor(a, d, -2);
            }
            plus.push(p);
            minus.push(m);
            minus2.push(m2);
        }

        Arc::new(MultiIndexTable {
            order,
            indices,
            lookup,
            plus,
            minus,
            minus2,
            degree_start,
        })
    }

    /// State order M of this table.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Total number of indices, |alpha| <= M + 1.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Number of indices with |alpha| <= M, i.e. the state coefficients.
    pub fn state_len(&self) -> usize {
        self.degree_start[self.order + 1]
    }

    /// Dense offset of the first index with |alpha| = k.
    pub fn degree_start(&self, k: usize) -> usize {
        self.degree_start[k]
    }

    pub fn multi_index(&self, idx: usize) -> [u8; DIM] {
        self.indices[idx]
    }

    pub fn degree(&self, idx: usize) -> usize {
        let a = self.indices[idx];
        a[0] as usize + a[1] as usize + a[2] as usize
    }

    pub fn index_of(&self, alpha: [u8; DIM]) -> Option<usize> {
        self.lookup.get(&alpha).map(|&i| i as usize)
    }

    /// Offset of alpha + e_d, or NO_INDEX.
    pub fn plus(&self, idx: usize, d: usize) -> u32 {
        self.plus[idx][d]
    }

    /// Offset of alpha - e_d, or NO_INDEX.
    pub fn minus(&self, idx: usize, d: usize) -> u32 {
        self.minus[idx][d]
    }

    /// Offset of alpha - 2 e_d, or NO_INDEX.
    pub fn minus2(&self, idx: usize, d: usize) -> u32 {
        self.minus2[idx][d]
    }

    /// Offsets of the unit indices e_d.
    pub fn unit(&self, d: usize) -> usize {
        let mut a = [0u8; DIM];
        a[d] = 1;
        self.index_of(a).expect("order >= 0 always stores degree 1")
    }

    /// Offsets of the doubled indices 2 e_d.
    pub fn double(&self, d: usize) -> usize {
        let mut a = [0u8; DIM];
        a[d] = 2;
        self.index_of(a).expect("tables store degree 2 for M >= 1")
    }
}
