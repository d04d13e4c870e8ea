use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};

/// Permutation of `{0, .., n-1}` stored by images: `self.0[i] = π(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidParameter(format!(
                    "not a permutation: {images:?}"
                )));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    /// Adjacent transposition `(j, j+1)` in `S_n`.
    pub fn coxeter(n: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(j, j + 1);
        Self(v)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Self(v)
    }

    /// Cycle `0 -> 1 -> .. -> k-1 -> 0` on the first `k` points, then fixed.
    pub fn from_cycle_type(mu: &Partition) -> Self {
        let n = mu.size();
        let mut v: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in mu.parts() {
            for i in 0..len {
                v[start + i] = start + (i + 1) % len;
            }
            start += len;
        }
        Self(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            lens.push(len);
        }
        Partition::from_unsorted(lens)
    }

    pub fn inversions(&self) -> usize {
        let n = self.0.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count()
    }

    pub fn sign(&self) -> i64 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Reduced word `[j_1, .., j_k]` with `self = s_{j_1} ∘ .. ∘ s_{j_k}`,
    /// `s_j = (j, j+1)`, of length equal to the inversion count.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut swaps = Vec::new();
        loop {
            let Some(j) = (0..w.len().saturating_sub(1)).find(|&j| w[j] > w[j + 1]) else {
                break;
            };
            w.swap(j, j + 1);
            swaps.push(j);
        }
        swaps.reverse();
        swaps
    }

    /// All permutations of `{0..n-1}` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Extend to a permutation of `{0..m-1}` fixing the new points.
    pub fn extend(&self, m: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len()..m);
        Perm(v)
    }
}
