//! Permutations of `{0, .., n-1}`.
//!
//! Composition is left-to-right: `a.compose(&b)` first applies `a`, then `b`,
//! so `(a∘b)(x) = b(a(x))`. Every module in the crate relies on this.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{0, .., degree-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} outside degree {degree}"
                    )));
                }
                if touched[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears twice in cycle notation"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked left-to-right product; panics on degree mismatch.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self^-1 * other * self`, i.e. `other` conjugated by `self`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        self.inverse().mul(other).mul(self)
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// Non-trivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Least point moved by the permutation.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Places `self` on the points `offset .. offset + degree` of a larger set.
    pub fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }

    /// Cycle notation with 1-based points, as accepted by the expression parser.
    pub fn to_one_based(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect()
    }
}

/// Sort key for the fixed element order: element order first, then images.
pub(crate) fn element_key(p: &Permutation) -> (u64, &[u32]) {
    (p.order(), p.images())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}; {}]", self.degree(), self)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
