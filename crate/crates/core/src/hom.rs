use rand::Rng;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A homomorphism between permutation groups given by generator images.
///
/// Internally the graph `{(g, φ(g))}` is kept as a permutation group on the
/// disjoint union of both point sets. The map is well defined exactly when
/// the graph has the order of the source; images are read off by sifting.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: PermGroup,
    target: PermGroup,
    images: Vec<Permutation>,
    graph: StabChain,
}

impl Homomorphism {
    /// Builds the map, rejecting generator assignments that do not extend to
    /// a homomorphism.
    pub fn new(source: PermGroup, target: PermGroup, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        for img in &images {
            if !target.contains(img) {
                return Err(Error::NotMember);
            }
        }
        let n = source.degree();
        let total = n + target.degree();
        let graph_gens: Vec<Permutation> = source
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, h)| join_disjoint(g, h, total))
            .collect();
        let graph = StabChain::new(total, &graph_gens);
        if graph.order() != source.order() {
            return Err(Error::InvalidArgument(
                "generator images do not define a homomorphism".into(),
            ));
        }
        Ok(Homomorphism {
            source,
            target,
            images,
            graph,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    /// The graph has the order of the source; always true after `new`.
    pub fn is_well_defined(&self) -> bool {
        self.graph.order() == self.source.order()
    }

    /// Image of a source element.
    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        if !self.source.contains(g) {
            return Err(Error::NotMember);
        }
        let n = self.source.degree();
        let m = self.target.degree();
        let lifted = join_disjoint(g, &Permutation::identity(m), n + m);
        let residue = self
            .graph
            .sift_prefix(&lifted, n)
            .ok_or(Error::NotMember)?;
        let target_part: Vec<u32> = residue.images()[n..]
            .iter()
            .map(|&x| x - n as u32)
            .collect();
        Ok(Permutation::from_images_unchecked(target_part).inverse())
    }

    /// Kernel as a subgroup of the source.
    pub fn kernel(&self, cap: usize) -> Result<PermGroup> {
        let mut gens = Vec::new();
        let mut current = PermGroup::trivial(self.source.degree());
        let mut err = None;
        self.source.for_each_element(cap, |x| {
            if err.is_some() || current.contains(x) {
                return;
            }
            match self.apply(x) {
                Ok(img) if img.is_identity() => {
                    gens.push(x.clone());
                    current = PermGroup::new(self.source.degree(), gens.clone()).unwrap();
                }
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(current),
        }
    }

    /// Evaluates a word `(generator index, exponent)` in source and target.
    pub fn evaluate_word(&self, word: &[(usize, i64)]) -> (Permutation, Permutation) {
        let mut s = self.source.identity();
        let mut t = self.target.identity();
        for &(i, e) in word {
            s = s.mul(&self.source.generators()[i].pow(e));
            t = t.mul(&self.images[i].pow(e));
        }
        (s, t)
    }

    /// Checks `φ(w(source gens)) = w(images)` on `count` random words. In
    /// particular every relator of the source maps to the identity.
    pub fn spot_check(&self, count: usize, rng: &mut impl Rng) -> Result<bool> {
        let k = self.source.generators().len();
        if k == 0 {
            return Ok(true);
        }
        for _ in 0..count {
            let len = rng.random_range(1..12);
            let word: Vec<(usize, i64)> = (0..len)
                .map(|_| (rng.random_range(0..k), if rng.random_bool(0.5) { 1 } else { -1 }))
                .collect();
            let (s, t) = self.evaluate_word(&word);
            if self.apply(&s)? != t {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(a, b)` acting on the disjoint union of the two point sets.
pub(crate) fn join_disjoint(a: &Permutation, b: &Permutation, total: usize) -> Permutation {
    let n = a.degree();
    let mut images: Vec<u32> = a.images().to_vec();
    images.extend(b.images().iter().map(|&x| x + n as u32));
    debug_assert_eq!(images.len(), total);
    Permutation::from_images_unchecked(images)
}
