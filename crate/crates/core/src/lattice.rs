//! Subgroup lattices of small groups.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::table::{Bits, GroupTable, Subgroup};

/// Every subgroup of a group, with inclusion covers and Möbius values
/// `μ(H, G)`.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    /// Sorted by order, then by element list.
    pub subgroups: Vec<Subgroup>,
    /// `covers[i]`: indices of the subgroups that cover subgroup `i`.
    pub covers: Vec<Vec<usize>>,
    pub mobius: Vec<i64>,
}

/// Distinct cyclic subgroups, each with its least generator, ordered by
/// that generator.
pub fn cyclic_subgroups(t: &GroupTable) -> Vec<Subgroup> {
    let mut seen: HashMap<Bits, ()> = HashMap::new();
    let mut out = Vec::new();
    for x in 0..t.order() as u32 {
        let c = t.closure(&[x]);
        if seen.insert(c.bits.clone(), ()).is_none() {
            out.push(c);
        }
    }
    out
}

impl SubgroupLattice {
    pub fn build(t: &GroupTable, cap: usize) -> Result<Self> {
        if t.order() > cap {
            return Err(Error::cap("subgroup lattice", t.order() as u128, cap as u128));
        }
        let cyclic = cyclic_subgroups(t);
        let mut registry: HashMap<Bits, usize> = HashMap::new();
        let mut subs: Vec<Subgroup> = Vec::new();

        let mut register_class = |k: Subgroup, registry: &mut HashMap<Bits, usize>| -> bool {
            if registry.contains_key(&k.bits) {
                return false;
            }
            let mut class = vec![k];
            let mut head = 0;
            registry.insert(class[0].bits.clone(), subs.len());
            subs.push(class[0].clone());
            while head < class.len() {
                let h = class[head].clone();
                head += 1;
                for &g in t.gens() {
                    let c = t.conjugate_subgroup(&h, g);
                    if !registry.contains_key(&c.bits) {
                        registry.insert(c.bits.clone(), subs.len());
                        subs.push(c.clone());
                        class.push(c);
                    }
                }
            }
            true
        };

        let trivial = t.trivial();
        register_class(trivial.clone(), &mut registry);
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for c in &cyclic {
                let x = c.gens.first().copied().unwrap_or(0);
                if h.contains(x) {
                    continue;
                }
                let k = t.join(&h, x);
                if registry.contains_key(&k.bits) {
                    continue;
                }
                if register_class(k.clone(), &mut registry) {
                    queue.push_back(k);
                }
            }
        }

        subs.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        let s = subs.len();
        let supersets: Vec<Vec<usize>> = (0..s)
            .map(|i| {
                (i + 1..s)
                    .filter(|&j| {
                        subs[j].order() > subs[i].order()
                            && subs[j].order().is_multiple_of(subs[i].order())
                            && subs[i].bits.is_subset(&subs[j].bits)
                    })
                    .collect()
            })
            .collect();
        let covers: Vec<Vec<usize>> = supersets
            .iter()
            .map(|sup| {
                let mut minimal: Vec<usize> = Vec::new();
                for &k in sup {
                    if !minimal.iter().any(|&j| subs[j].bits.is_subset(&subs[k].bits)) {
                        minimal.push(k);
                    }
                }
                minimal
            })
            .collect();
        let mut mobius = vec![0i64; s];
        for i in (0..s).rev() {
            mobius[i] = if i == s - 1 {
                1
            } else {
                -supersets[i].iter().map(|&j| mobius[j]).sum::<i64>()
            };
        }
        Ok(SubgroupLattice {
            subgroups: subs,
            covers,
            mobius,
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Maximal subgroups (those covered by the whole group).
    pub fn maximal(&self) -> Vec<&Subgroup> {
        let top = self.top();
        self.covers
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&top))
            .map(|(i, _)| &self.subgroups[i])
            .collect()
    }

    /// Intersection of the maximal subgroups.
    pub fn frattini(&self, t: &GroupTable) -> Subgroup {
        let maximal = self.maximal();
        if maximal.is_empty() {
            return t.whole();
        }
        let mut bits = maximal[0].bits.clone();
        for m in &maximal[1..] {
            bits.intersect_with(&m.bits);
        }
        t.subgroup_from_bits(&bits)
    }

    /// `Σ_H μ(H, G)·|H|^m`: the number of generating `m`-tuples.
    pub fn eulerian(&self, m: u32) -> i128 {
        self.subgroups
            .iter()
            .zip(&self.mobius)
            .filter(|(_, &mu)| mu != 0)
            .map(|(h, &mu)| mu as i128 * (h.order() as i128).pow(m))
            .sum()
    }

    pub fn index_of(&self, bits: &Bits) -> Option<usize> {
        self.subgroups.iter().position(|h| &h.bits == bits)
    }
}
