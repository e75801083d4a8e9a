//! Semidirect products `N ⋊ H` from automorphisms given on generators.
//!
//! The result acts on the disjoint union of a copy of `H`'s points and
//! either `N`'s own points (when every automorphism is induced by a point
//! permutation) or the elements of `N` (right regular action).

use crate::crowns::{extend_to_hom, is_automorphism};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::table::GroupTable;

/// Which realisation a semidirect product received.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Degree `deg N + deg H`.
    Points,
    /// Degree `|N| + deg H`.
    Regular,
}

/// `N ⋊ H` where generator `i` of `H` acts on `N` by sending the generators
/// of `N` to `autos[i]`. Conjugation is `n^h = h⁻¹ n h`.
pub fn semidirect(
    n: &PermGroup,
    h: &PermGroup,
    autos: &[Vec<Permutation>],
    limits: &Limits,
) -> Result<(PermGroup, Route)> {
    if autos.len() != h.generators().len() {
        return Err(Error::InvalidAction(format!(
            "{} automorphisms for {} acting generators",
            autos.len(),
            h.generators().len()
        )));
    }
    let t = GroupTable::from_group(n, limits.table_cap)?;
    let mut maps = Vec::with_capacity(autos.len());
    for (i, images) in autos.iter().enumerate() {
        if images.len() != n.generators().len() {
            return Err(Error::InvalidAction(format!(
                "generator g{} gives {} images for {} normal generators",
                i + 1,
                images.len(),
                n.generators().len()
            )));
        }
        let idx: Vec<u32> = images
            .iter()
            .map(|p| t.index_of(p))
            .collect::<Option<_>>()
            .ok_or_else(|| {
                Error::InvalidAction(format!("images for g{} leave the normal subgroup", i + 1))
            })?;
        let map = extend_to_hom(&t, t.gens(), &idx)
            .filter(|m| is_automorphism(&t, m))
            .ok_or_else(|| {
                Error::InvalidAction(format!("images for g{} do not define an automorphism", i + 1))
            })?;
        maps.push(map);
    }
    let element_perms: Vec<Permutation> = maps
        .iter()
        .map(|m| Permutation::from_images(m.clone()))
        .collect::<Result<_>>()?;
    let aut_image = PermGroup::new(t.order(), element_perms.clone())?;
    Homomorphism::new(h.clone(), aut_image, element_perms.clone()).map_err(|_| {
        Error::InvalidAction("the automorphisms do not define an action of the acting group".into())
    })?;

    let expected = n.order() * h.order();
    let inducing: Option<Vec<Permutation>> = autos
        .iter()
        .map(|images| inducing_permutation(n, images))
        .collect();
    if let Some(pis) = inducing {
        let g = assemble(n.generators(), &pis, n.degree(), h)?;
        if g.order() == expected {
            return Ok((g, Route::Points));
        }
    }
    let regular: Vec<Permutation> = t
        .gens()
        .iter()
        .map(|&x| {
            Permutation::from_images((0..t.order() as u32).map(|y| t.mul(y, x)).collect())
        })
        .collect::<Result<_>>()?;
    let g = assemble(&regular, &element_perms, t.order(), h)?;
    if g.order() != expected {
        return Err(Error::InvalidAction(format!(
            "semidirect product has order {}, expected {expected}",
            g.order()
        )));
    }
    Ok((g, Route::Regular))
}

fn assemble(
    normal: &[Permutation],
    acting: &[Permutation],
    degree: usize,
    h: &PermGroup,
) -> Result<PermGroup> {
    let total = degree + h.degree();
    let mut gens: Vec<Permutation> = normal.iter().map(|x| x.shifted(0, total)).collect();
    for (a, y) in acting.iter().zip(h.generators()) {
        gens.push(a.shifted(0, total).mul(&y.shifted(degree, total)));
    }
    PermGroup::new(total, gens)
}

/// A point permutation `π` with `π⁻¹ n_j π = images[j]` for every
/// generator `n_j` of `n`, found by backtracking over orbit images.
pub(crate) fn inducing_permutation(n: &PermGroup, images: &[Permutation]) -> Option<Permutation> {
    let gens = n.generators();
    let degree = n.degree();
    if gens.iter().zip(images).all(|(a, b)| a == b) {
        return Some(Permutation::identity(degree));
    }
    let orbits = n.orbits();
    let mut pi = vec![u32::MAX; degree];
    let mut used = vec![false; degree];
    if search(gens, images, &orbits, 0, &mut pi, &mut used) {
        Permutation::from_images(pi).ok()
    } else {
        None
    }
}

fn search(
    gens: &[Permutation],
    images: &[Permutation],
    orbits: &[Vec<usize>],
    k: usize,
    pi: &mut Vec<u32>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(orbit) = orbits.get(k) else {
        return true;
    };
    let x0 = orbit[0];
    for y0 in 0..pi.len() {
        if used[y0] {
            continue;
        }
        let mut assigned = Vec::new();
        if propagate(gens, images, x0, y0, pi, used, &mut assigned)
            && search(gens, images, orbits, k + 1, pi, used)
        {
            return true;
        }
        for x in assigned {
            used[pi[x] as usize] = false;
            pi[x] = u32::MAX;
        }
    }
    false
}

/// Extends `π(x0) = y0` along `π(n_j(x)) = m_j(π(x))`.
fn propagate(
    gens: &[Permutation],
    images: &[Permutation],
    x0: usize,
    y0: usize,
    pi: &mut [u32],
    used: &mut [bool],
    assigned: &mut Vec<usize>,
) -> bool {
    pi[x0] = y0 as u32;
    used[y0] = true;
    assigned.push(x0);
    let mut head = assigned.len() - 1;
    while head < assigned.len() {
        let x = assigned[head];
        head += 1;
        for (a, b) in gens.iter().zip(images) {
            let nx = a.apply(x);
            let ny = b.apply(pi[x] as usize);
            if pi[nx] == u32::MAX {
                if used[ny] {
                    return false;
                }
                pi[nx] = ny as u32;
                used[ny] = true;
                assigned.push(nx);
            } else if pi[nx] as usize != ny {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::atoms;

    #[test]
    fn frobenius_21_on_points() {
        let n = atoms::cyclic(7).unwrap();
        let h = atoms::cyclic(3).unwrap();
        let x = n.generators()[0].clone();
        let (g, route) = semidirect(&n, &h, &[vec![x.pow(2)]], &Limits::default()).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(route, Route::Points);
    }

    #[test]
    fn non_action_rejected() {
        // C3 cannot act on C5 by inversion.
        let n = atoms::cyclic(5).unwrap();
        let h = atoms::cyclic(3).unwrap();
        let x = n.generators()[0].clone();
        let r = semidirect(&n, &h, &[vec![x.pow(-1)]], &Limits::default());
        assert!(matches!(r, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn regular_route_when_not_induced() {
        // Swapping generators with different supports is not induced on points.
        let a = Permutation::from_cycles(6, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(6, &[vec![2, 3], vec![4, 5]]).unwrap();
        let n = PermGroup::new(6, vec![a.clone(), b.clone()]).unwrap();
        let h = atoms::cyclic(2).unwrap();
        let (g, route) = semidirect(&n, &h, &[vec![b, a]], &Limits::default()).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(route, Route::Regular);
    }
}
