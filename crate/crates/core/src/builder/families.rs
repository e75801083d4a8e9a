//! The example families `EX1`, `EX2A`, `EX2B`, `EX3` and `WREATH`.

use super::ast::Ex3Action;
use super::atoms;
use super::semidirect::semidirect;
use super::direct_product;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::perm::Permutation;

fn at_least_one(name: &str, t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidArgument(format!("{name}: parameter must be at least 1")));
    }
    Ok(())
}

/// `S3 × C2^t`; degree `3 + 2t`.
pub fn ex1(t: u32) -> Result<PermGroup> {
    at_least_one("EX1", t)?;
    let mut factors = vec![atoms::symmetric(3)?];
    factors.extend((0..t).map(|_| atoms::cyclic(2).expect("C2")));
    direct_product(&factors)
}

/// `S4` on 4 points.
pub fn ex2a() -> Result<PermGroup> {
    atoms::symmetric(4)
}

/// `(C3^t ⋊ C2) × C2`; degree `3t + 2`. The first `C2` inverts every `C3`.
pub fn ex2b(t: u32) -> Result<PermGroup> {
    at_least_one("EX2B", t)?;
    let t = t as usize;
    let degree = 3 * t + 2;
    let mut gens = Vec::new();
    let mut inversion = Vec::new();
    for i in 0..t {
        let b = 3 * i;
        gens.push(Permutation::from_cycles(degree, &[vec![b, b + 1, b + 2]])?);
        inversion.push(vec![b + 1, b + 2]);
    }
    gens.push(Permutation::from_cycles(degree, &inversion)?);
    gens.push(Permutation::from_cycles(degree, &[vec![3 * t, 3 * t + 1]])?);
    PermGroup::new(degree, gens)
}

/// `K ⋊ (S3 × C2^{t−1})` with `K = C2²`, built as a semidirect product.
pub fn ex3(t: u32, action: Ex3Action, limits: &Limits) -> Result<PermGroup> {
    at_least_one("EX3", t)?;
    let k = atoms::klein();
    let mut factors = vec![atoms::symmetric(3)?];
    factors.extend((1..t).map(|_| atoms::cyclic(2).expect("C2")));
    let h = direct_product(&factors)?;
    // S3 = ⟨(0 1 2), (0 1)⟩ sits in S4 as the stabiliser of point 3.
    let rotation = Permutation::from_cycles(4, &[vec![0, 1, 2]])?;
    let transposition = Permutation::from_cycles(4, &[vec![0, 1]])?;
    let by = |x: &Permutation| -> Vec<Permutation> {
        k.generators().iter().map(|n| x.conjugate(n)).collect()
    };
    let fixed = k.generators().to_vec();
    let mut autos = Vec::new();
    let (r, s, extra) = match action {
        Ex3Action::Transposition => (fixed.clone(), by(&transposition), by(&transposition)),
        Ex3Action::Trivial => (by(&rotation), by(&transposition), fixed.clone()),
        Ex3Action::None => (fixed.clone(), fixed.clone(), fixed.clone()),
        Ex3Action::Literal => (by(&rotation), by(&transposition), by(&transposition)),
    };
    autos.push(r);
    autos.push(s);
    autos.extend((1..t).map(|_| extra.clone()));
    Ok(semidirect(&k, &h, &autos, limits)?.0)
}

/// `⟨PSL2(7)^n, γ⟩` with `n = 2^t`, on `8n` points: `γ` applies `x ↦ 3x` on
/// the first block, then shifts the blocks cyclically.
pub fn wreath(t: u32, limits: &Limits) -> Result<PermGroup> {
    at_least_one("WREATH", t)?;
    let n = 1usize
        .checked_shl(t)
        .filter(|_| t < 16)
        .ok_or_else(|| Error::InvalidArgument(format!("WREATH({t}): parameter too large")))?;
    let projected = 168u128.checked_pow(n as u32).map(|x| x * 2 * n as u128);
    match projected {
        Some(o) if o <= limits.max_order => {}
        _ => {
            return Err(Error::cap(
                "group order",
                projected.unwrap_or(u128::MAX),
                limits.max_order,
            ))
        }
    }
    let s = atoms::psl2(7)?;
    let total = 8 * n;
    let mut gens = Vec::new();
    for b in 0..n {
        for x in s.generators() {
            gens.push(x.shifted(8 * b, total));
        }
    }
    let a = Permutation::from_images((0..8u32).map(|x| if x == 7 { 7 } else { x * 3 % 7 }).collect())?;
    let shift = Permutation::from_images(
        (0..total as u32).map(|p| (p + 8) % total as u32).collect(),
    )?;
    gens.push(a.shifted(0, total).mul(&shift));
    PermGroup::new(total, gens)
}

/// The socle `PSL2(7)^n` of the `WREATH(t)` group.
pub fn wreath_socle(t: u32) -> Result<PermGroup> {
    let n = 1usize << t;
    let s = atoms::psl2(7)?;
    let total = 8 * n;
    let gens = (0..n)
        .flat_map(|b| s.generators().iter().map(move |x| x.shifted(8 * b, total)))
        .collect();
    PermGroup::new(total, gens)
}
