//! Permutation groups given by generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::perm::Permutation;

/// A permutation group: a degree, a generator list and a lazily built
/// stabilizer chain.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Group generated by `generators`; identity generators are dropped.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// `H ≤ self`, tested on generators of `H`.
    pub fn contains_group(&self, h: &PermGroup) -> bool {
        h.degree == self.degree && h.generators.iter().all(|g| self.contains(g))
    }

    /// Same element set (same degree, mutual containment).
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    /// `H` is normalised by every generator of `self`.
    pub fn normalizes(&self, h: &PermGroup) -> bool {
        self.generators
            .iter()
            .all(|g| h.generators.iter().all(|x| h.contains(&g.conjugate(x))))
    }

    /// Visits every element. Refuses groups larger than `cap`.
    pub fn for_each_element(&self, cap: usize, f: impl FnMut(&Permutation)) -> Result<()> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::cap("element iteration", order, cap as u128));
        }
        self.chain().for_each_element(f);
        Ok(())
    }

    /// All elements, refusing groups larger than `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        self.for_each_element(cap, |g| out.push(g.clone()))?;
        Ok(out)
    }

    /// Uniformly random element.
    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        self.chain().element_from_choices(|n| rng.random_range(0..n))
    }

    /// Orbits of the group on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }
}

/// Smallest group containing `elements`; the empty set gives the trivial group.
pub fn closure(degree: usize, elements: &[Permutation]) -> Result<PermGroup> {
    PermGroup::new(degree, elements.to_vec())
}

pub fn group_order(g: &PermGroup) -> u128 {
    g.order()
}

pub fn contains(g: &PermGroup, x: &Permutation) -> Result<bool> {
    if x.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: x.degree(),
        });
    }
    Ok(g.contains(x))
}

/// Smallest normal subgroup of `g` containing `s`.
pub fn normal_closure(g: &PermGroup, s: &[Permutation]) -> Result<PermGroup> {
    for x in s {
        if !contains(g, x)? {
            return Err(Error::NotMember);
        }
    }
    Ok(normal_closure_unchecked(g, s))
}

pub(crate) fn normal_closure_unchecked(g: &PermGroup, s: &[Permutation]) -> PermGroup {
    let degree = g.degree();
    let mut gens: Vec<Permutation> = s.iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut h = PermGroup::new(degree, gens.clone()).expect("degrees checked");
    let mut i = 0;
    while i < gens.len() {
        let x = gens[i].clone();
        for y in g.generators() {
            let c = y.conjugate(&x);
            if !h.contains(&c) {
                gens.push(c);
                h = PermGroup::new(degree, gens.clone()).expect("degrees checked");
            }
        }
        i += 1;
    }
    h
}

/// `C_G(A)`: elements of `g` commuting with every generator of `a`.
pub fn centralizer_of_subgroup(g: &PermGroup, a: &PermGroup, cap: usize) -> Result<PermGroup> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(g.degree());
    let agens = a.generators().to_vec();
    g.for_each_element(cap, |x| {
        if current.contains(x) {
            return;
        }
        if agens.iter().all(|y| x.mul(y) == y.mul(x)) {
            gens.push(x.clone());
            current = PermGroup::new(g.degree(), gens.clone()).expect("degrees checked");
        }
    })?;
    Ok(current)
}

/// `G/N` as the action on right cosets `N x`, with the projection.
///
/// Cosets are numbered in breadth-first order from `N`, multiplying by the
/// generators of `G`; each coset is represented by the first element found.
pub fn quotient(g: &PermGroup, n: &PermGroup, cap: usize) -> Result<(PermGroup, Homomorphism)> {
    if !g.contains_group(n) || !g.normalizes(n) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    if order > cap as u128 {
        return Err(Error::cap("quotient", order, cap as u128));
    }
    let n_elems = n.elements(cap)?;
    let mut coset_of: HashMap<Permutation, u32> = HashMap::new();
    let mut reps: Vec<Permutation> = Vec::new();
    let add_coset = |rep: Permutation,
                     reps: &mut Vec<Permutation>,
                     coset_of: &mut HashMap<Permutation, u32>| {
        let id = reps.len() as u32;
        for x in &n_elems {
            coset_of.insert(x.mul(&rep), id);
        }
        reps.push(rep);
    };
    add_coset(g.identity(), &mut reps, &mut coset_of);
    let mut head = 0;
    while head < reps.len() {
        let rep = reps[head].clone();
        head += 1;
        for s in g.generators() {
            let y = rep.mul(s);
            if !coset_of.contains_key(&y) {
                add_coset(y, &mut reps, &mut coset_of);
            }
        }
    }
    let index = reps.len();
    let images: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|s| {
            let img: Vec<u32> = reps.iter().map(|r| coset_of[&r.mul(s)]).collect();
            Permutation::from_images_unchecked(img)
        })
        .collect();
    let q = PermGroup::new(index, images.clone())?;
    let hom = Homomorphism::new(g.clone(), q.clone(), images)?;
    Ok((q, hom))
}

/// Derived subgroup `[G, G]`.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_unchecked(g, &comms)
}

/// Derived series from `G` down to the first repeated term.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![g.clone()];
    loop {
        let last = out.last().unwrap();
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            return out;
        }
        out.push(next);
    }
}

pub fn is_soluble(g: &PermGroup) -> bool {
    derived_series(g).last().unwrap().order() == 1
}

/// Order is a power of a prime (the trivial group counts).
pub fn is_pgroup(g: &PermGroup) -> bool {
    prime_factors(g.order()).len() <= 1
}

/// Cyclic of prime-power order (including the trivial group).
pub fn is_cyclic_of_prime_power_order(g: &PermGroup, cap: usize) -> Result<bool> {
    let order = g.order();
    if prime_factors(order).len() > 1 {
        return Ok(false);
    }
    if order == 1 || g.generators().len() == 1 {
        return Ok(true);
    }
    // A p-group is cyclic iff some generator has full order; for p-groups the
    // generator of largest order works once the group is abelian.
    if !g.is_abelian() {
        return Ok(false);
    }
    if g
        .generators()
        .iter()
        .any(|x| x.order() as u128 == order)
    {
        return Ok(true);
    }
    let mut found = false;
    g.for_each_element(cap, |x| {
        if !found && x.order() as u128 == order {
            found = true;
        }
    })?;
    Ok(found)
}

/// Prime factorisation as `(p, multiplicity)` pairs in increasing order.
pub fn prime_factors(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of prime factors counted with multiplicity.
pub fn big_omega(n: u128) -> u32 {
    prime_factors(n).iter().map(|&(_, e)| e).sum()
}

/// Deterministic RNG used by the randomized probes.
pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let c: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![cyc(n, &[&c]), cyc(n, &[&[0, 1]])]).unwrap()
    }

    fn alt4() -> PermGroup {
        PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])]).unwrap()
    }

    fn klein() -> PermGroup {
        PermGroup::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])]).unwrap()
    }

    fn brute_closure(n: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut set: HashSet<Permutation> = HashSet::new();
        let mut queue = vec![Permutation::identity(n)];
        set.insert(queue[0].clone());
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.mul(g);
                if set.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn orders_of_standard_groups() {
        assert_eq!(sym(4).order(), 24);
        let s5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])]).unwrap();
        assert_eq!(s5.order(), 120);
    }

    #[test]
    fn membership() {
        assert!(!alt4().contains(&cyc(4, &[&[0, 1]])));
        assert!(alt4().contains(&Permutation::identity(4)));
        let c6 = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert!(c6.contains(&cyc(6, &[&[0, 2, 4], &[1, 3, 5]])));
        assert!(matches!(
            contains(&c6, &Permutation::identity(5)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn closures() {
        assert_eq!(closure(4, klein().generators()).unwrap().order(), 4);
        let s3 = closure(3, &[cyc(3, &[&[0, 1, 2]]), cyc(3, &[&[0, 1]])]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(closure(3, &[]).unwrap().order(), 1);
    }

    #[test]
    fn normal_closure_of_double_transposition_in_s4() {
        let s4 = sym(4);
        let n = normal_closure(&s4, &[cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert!(n.same_group(&klein()));
        // Brute-force check: normal and minimal among normal subgroups containing it.
        let elems = brute_closure(4, n.generators());
        for g in brute_closure(4, s4.generators()) {
            for x in &elems {
                assert!(elems.contains(&g.conjugate(x)));
            }
        }
        assert_eq!(normal_closure(&s4, &[s4.identity()]).unwrap().order(), 1);
        assert!(normal_closure(&alt4(), &[cyc(4, &[&[0, 1]])]).is_err());
    }

    #[test]
    fn normal_closure_in_simple_group_is_everything() {
        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        for x in a5.elements(1000).unwrap().iter().filter(|x| !x.is_identity()) {
            assert_eq!(normal_closure(&a5, std::slice::from_ref(x)).unwrap().order(), 60);
        }
    }

    #[test]
    fn centralizers() {
        let s4 = sym(4);
        let c = centralizer_of_subgroup(&s4, &klein(), 1000).unwrap();
        // Brute force over the 24 elements.
        let brute: Vec<_> = s4
            .elements(100)
            .unwrap()
            .into_iter()
            .filter(|x| klein().generators().iter().all(|y| x.mul(y) == y.mul(x)))
            .collect();
        assert_eq!(brute.len(), 4);
        assert!(c.same_group(&klein()));
        let triv = PermGroup::trivial(4);
        assert_eq!(centralizer_of_subgroup(&s4, &triv, 1000).unwrap().order(), 24);
        let c6 = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        let c3 = PermGroup::new(6, vec![cyc(6, &[&[0, 2, 4], &[1, 3, 5]])]).unwrap();
        assert_eq!(centralizer_of_subgroup(&c6, &c3, 1000).unwrap().order(), 6);
        assert!(centralizer_of_subgroup(&s4, &klein(), 10).is_err());
    }

    #[test]
    fn quotients() {
        let s4 = sym(4);
        let (q, hom) = quotient(&s4, &klein(), 1000).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.degree(), 6);
        assert!(!q.is_abelian());
        assert!(hom.is_well_defined());
        let (q1, _) = quotient(&s4, &PermGroup::trivial(4), 1000).unwrap();
        assert_eq!(q1.order(), 24);
        assert_eq!(q1.degree(), 24);
        let c6 = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        let c2 = PermGroup::new(6, vec![cyc(6, &[&[0, 3], &[1, 4], &[2, 5]])]).unwrap();
        let (q2, _) = quotient(&c6, &c2, 1000).unwrap();
        assert_eq!(q2.order(), 3);
        let not_normal = PermGroup::new(4, vec![cyc(4, &[&[0, 1]])]).unwrap();
        assert_eq!(quotient(&s4, &not_normal, 1000).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn derived_series_of_s4() {
        let series = derived_series(&sym(4));
        let orders: Vec<u128> = series.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(series[1].same_group(&alt4()));
        assert!(series[2].same_group(&klein()));
        // Brute-force commutator closure of A4.
        let a4: Vec<_> = alt4().elements(100).unwrap();
        let comms: Vec<Permutation> = a4
            .iter()
            .flat_map(|a| a4.iter().map(move |b| a.inverse().mul(&b.inverse()).mul(a).mul(b)))
            .collect();
        assert_eq!(brute_closure(4, &comms).len(), 4);
    }

    #[test]
    fn predicates() {
        assert!(is_soluble(&sym(4)));
        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert!(!is_soluble(&a5));
        let c8 = PermGroup::new(8, vec![cyc(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]])]).unwrap();
        assert!(is_cyclic_of_prime_power_order(&c8, 1000).unwrap());
        let c6 = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert!(!is_cyclic_of_prime_power_order(&c6, 1000).unwrap());
        assert!(!is_cyclic_of_prime_power_order(&klein(), 1000).unwrap());
        assert!(is_pgroup(&klein()));
        assert!(!is_pgroup(&sym(3)));
    }

    #[test]
    fn factorisation() {
        assert_eq!(prime_factors(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(big_omega(60), 4);
        assert_eq!(big_omega(1), 0);
    }
}
