//! Standard permutation representations of the atoms.

use crate::error::{Error, Result};
use crate::group::{prime_factors, PermGroup};
use crate::perm::Permutation;

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let c: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[c]).expect("points below degree")
}

fn positive(name: &str, n: u32, least: u32) -> Result<usize> {
    if n < least {
        return Err(Error::InvalidArgument(format!("{name}{n}: parameter must be at least {least}")));
    }
    Ok(n as usize)
}

/// `C_n` generated by an `n`-cycle; degree `n`.
pub fn cyclic(n: u32) -> Result<PermGroup> {
    let n = positive("C", n, 1)?;
    PermGroup::new(n, vec![cycle(n, 0..n)])
}

/// `S_n` generated by an `n`-cycle and a transposition; degree `n`.
pub fn symmetric(n: u32) -> Result<PermGroup> {
    let n = positive("S", n, 1)?;
    let mut gens = vec![cycle(n, 0..n)];
    if n >= 2 {
        gens.push(cycle(n, [0, 1]));
    }
    PermGroup::new(n, gens)
}

/// `A_n` generated by `(0 1 2)` and an `n`-cycle (odd `n`) or the cycle on
/// `1..n` (even `n`); degree `n`.
pub fn alternating(n: u32) -> Result<PermGroup> {
    let n = positive("A", n, 1)?;
    if n < 3 {
        return Ok(PermGroup::trivial(n));
    }
    let long = if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) };
    PermGroup::new(n, vec![cycle(n, [0, 1, 2]), long])
}

/// Dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn dihedral(n: u32) -> Result<PermGroup> {
    let n = positive("Dih", n, 3)?;
    let reflection = Permutation::from_images((0..n).map(|i| ((n - i) % n) as u32).collect())?;
    PermGroup::new(n, vec![cycle(n, 0..n), reflection])
}

pub fn klein() -> PermGroup {
    PermGroup::new(
        4,
        vec![
            Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).expect("valid"),
            Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).expect("valid"),
        ],
    )
    .expect("degree 4")
}

fn check_field(name: &str, q: u32) -> Result<u64> {
    let prime = prime_factors(q as u128) == vec![(q as u128, 1)];
    if !prime || q > 23 {
        return Err(Error::InvalidArgument(format!("{name}({q}): q must be a prime ≤ 23")));
    }
    Ok(q as u64)
}

fn inv_mod(x: u64, q: u64) -> u64 {
    (1..q).find(|y| x * y % q == 1).expect("q is prime")
}

fn primitive_root(q: u64) -> u64 {
    (1..q)
        .find(|&z| (1..q - 1).all(|k| mod_pow(z, k, q) != 1))
        .unwrap_or(1)
}

fn mod_pow(b: u64, e: u64, q: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % q)
}

/// Projective-line maps for `x ↦ x+1`, `x ↦ −1/x` and optionally `x ↦ ζx`;
/// point `q` is infinity.
fn projective(q: u64, with_diagonal: bool) -> Result<PermGroup> {
    let inf = q as u32;
    let degree = q as usize + 1;
    let translate = Permutation::from_images(
        (0..=q).map(|x| if x == q { inf } else { ((x + 1) % q) as u32 }).collect(),
    )?;
    let invert = Permutation::from_images(
        (0..=q)
            .map(|x| match x {
                x if x == q => 0,
                0 => inf,
                x => ((q - inv_mod(x, q)) % q) as u32,
            })
            .collect(),
    )?;
    let mut gens = vec![translate, invert];
    if with_diagonal {
        let z = primitive_root(q);
        gens.push(Permutation::from_images(
            (0..=q).map(|x| if x == q { inf } else { (x * z % q) as u32 }).collect(),
        )?);
    }
    PermGroup::new(degree, gens)
}

/// `PSL2(q)` on the `q+1` points of the projective line.
pub fn psl2(q: u32) -> Result<PermGroup> {
    let q = check_field("PSL2", q)?;
    let g = projective(q, false)?;
    let expected = (q * (q * q - 1) / if q == 2 { 1 } else { 2 }) as u128;
    debug_assert_eq!(g.order(), expected);
    Ok(g)
}

/// `PGL2(q)` on the `q+1` points of the projective line.
pub fn pgl2(q: u32) -> Result<PermGroup> {
    let q = check_field("PGL2", q)?;
    let g = projective(q, true)?;
    debug_assert_eq!(g.order(), (q * (q * q - 1)) as u128);
    Ok(g)
}
