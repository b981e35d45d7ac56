//! Deterministic random inputs for the property suites. Every trial gets
//! its own stream of one seeded generator, so results are identical no
//! matter how trials are scheduled.

use kloc_core::{
    chain_map_basis, ChainMap, FgAbGroup, FreeComplex, GradedGroup, GroupHom, GroupValue,
    IntMatrix, PrimeSet, TheoryMap,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn trial_rng(seed: u64, suite: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.wrapping_mul(0x9E37_79B9).wrapping_add(trial));
    rng
}

pub fn group(
    rng: &mut ChaCha8Rng,
    max_rank: usize,
    factor_pool: &[u64],
    max_factors: usize,
) -> FgAbGroup {
    let rank = rng.gen_range(0..=max_rank);
    let count = rng.gen_range(0..=max_factors);
    let factors: Vec<BigUint> = (0..count)
        .map(|_| BigUint::from(factor_pool[rng.gen_range(0..factor_pool.len())]))
        .collect();
    FgAbGroup::from_cyclic_orders(rank, &factors)
}

/// A uniform-ish valid homomorphism: each matrix entry is a random multiple
/// of the smallest value allowed by the generator orders.
pub fn hom(rng: &mut ChaCha8Rng, dom: &FgAbGroup, cod: &FgAbGroup, amp: i64) -> GroupHom {
    let m = IntMatrix::from_fn(cod.ngens(), dom.ngens(), |i, j| {
        let n = dom.gen_order(j);
        let k = BigInt::from(rng.gen_range(-amp..=amp));
        if n.is_zero() {
            return k;
        }
        let m_i = cod.gen_order(i);
        if m_i.is_zero() {
            return BigInt::from(0);
        }
        let step = &m_i / m_i.gcd(&n);
        k * BigInt::from(step)
    });
    GroupHom::new(dom.clone(), cod.clone(), m).expect("entries respect the generator orders")
}

/// One of the prime sets the randomised suites quantify over.
pub fn prime_set(rng: &mut ChaCha8Rng) -> PrimeSet {
    match rng.gen_range(0..4) {
        0 => PrimeSet::single(2).unwrap(),
        1 => PrimeSet::single(3).unwrap(),
        2 => PrimeSet::finite(&[2, 3]).unwrap(),
        _ => PrimeSet::all(),
    }
}

/// A wider mix, including the empty set, `odd` and other cofinite sets.
pub fn any_prime_set(rng: &mut ChaCha8Rng) -> PrimeSet {
    match rng.gen_range(0..7) {
        0 => PrimeSet::empty(),
        1 => PrimeSet::single(2).unwrap(),
        2 => PrimeSet::single(5).unwrap(),
        3 => PrimeSet::finite(&[2, 3]).unwrap(),
        4 => PrimeSet::odd(),
        5 => PrimeSet::cofinite(&[3, 5]).unwrap(),
        _ => PrimeSet::all(),
    }
}

/// A finitely generated theory on a random grading: periodic of period 1,
/// 2 or 4, or bounded near zero.
pub fn graded_fg(
    rng: &mut ChaCha8Rng,
    max_rank: usize,
    factor_pool: &[u64],
    max_factors: usize,
) -> GradedGroup {
    if rng.gen_bool(0.75) {
        let period = [1u32, 2, 4][rng.gen_range(0..3)];
        let values = (0..period)
            .map(|_| group(rng, max_rank, factor_pool, max_factors))
            .collect();
        GradedGroup::periodic_fg(period, values).expect("period matches the entry count")
    } else {
        let mut entries = BTreeMap::new();
        for n in -1..=2 {
            if rng.gen_bool(0.6) {
                entries.insert(
                    n,
                    GroupValue::Fg(group(rng, max_rank, factor_pool, max_factors)),
                );
            }
        }
        GradedGroup::bounded(entries)
    }
}

/// A random natural transformation. A third of the draws are identities and
/// a third are global scalings, so both verdicts of the detection
/// equivalence show up with useful frequency.
pub fn theory_map(rng: &mut ChaCha8Rng, factor_pool: &[u64]) -> TheoryMap {
    let source = graded_fg(rng, 2, factor_pool, 2);
    match rng.gen_range(0..3) {
        0 => {
            let maps = source
                .representatives()
                .into_iter()
                .map(|n| {
                    let g = source.fg_at(n).expect("finitely generated by construction");
                    (n, GroupHom::identity(&g))
                })
                .collect();
            TheoryMap::new(source.clone(), source, maps).expect("identity is degreewise valid")
        }
        1 => {
            let k = BigInt::from(rng.gen_range(-6i64..=6));
            let maps = source
                .representatives()
                .into_iter()
                .map(|n| {
                    let g = source.fg_at(n).expect("finitely generated by construction");
                    (n, GroupHom::mul_by(&g, &k))
                })
                .collect();
            TheoryMap::new(source.clone(), source, maps).expect("scaling is degreewise valid")
        }
        _ => {
            let target = match source.grading() {
                kloc_core::Grading::Periodic(p) => GradedGroup::periodic_fg(
                    p,
                    (0..p).map(|_| group(rng, 2, factor_pool, 2)).collect(),
                )
                .expect("period matches the entry count"),
                kloc_core::Grading::Bounded => {
                    let entries = source
                        .representatives()
                        .into_iter()
                        .map(|n| (n, GroupValue::Fg(group(rng, 2, factor_pool, 2))))
                        .collect();
                    GradedGroup::bounded(entries)
                }
            };
            let maps = source
                .representatives()
                .into_iter()
                .map(|n| {
                    let d = source.fg_at(n).expect("finitely generated by construction");
                    let c = target.fg_at(n).expect("finitely generated by construction");
                    (n, hom(rng, &d, &c, 3))
                })
                .collect();
            TheoryMap::new(source, target, maps).expect("degreewise homs are valid")
        }
    }
}

/// A bounded complex of free modules with `d^2 = 0`, assembled from cells
/// and two-term pieces so the differential squares to zero by construction.
pub fn complex(
    rng: &mut ChaCha8Rng,
    max_len: usize,
    max_rank: usize,
    max_entry: i64,
) -> FreeComplex {
    let lo = rng.gen_range(-1..=1i64);
    let len = rng.gen_range(1..=max_len as i64);
    let mut acc = FreeComplex::zero();
    for _ in 0..rng.gen_range(0..=max_rank + 1) {
        let piece = if len > 1 && rng.gen_bool(0.7) {
            let top = rng.gen_range(lo + 1..lo + len);
            let d = rng.gen_range(-max_entry..=max_entry);
            FreeComplex::two_term(top, IntMatrix::from_rows_i64(&[vec![d]], 1))
        } else {
            FreeComplex::concentrated(rng.gen_range(lo..lo + len), 1)
        };
        let candidate = acc.direct_sum(&piece);
        let within = (lo..lo + len).all(|n| candidate.rank_at(n) <= max_rank);
        if within {
            acc = candidate;
        }
    }
    acc
}

/// A random chain map: a small integer combination of a basis of the space
/// of all chain maps.
pub fn chain_map(rng: &mut ChaCha8Rng, a: &FreeComplex, b: &FreeComplex) -> ChainMap {
    let basis = chain_map_basis(a, b);
    if basis.is_empty() {
        return ChainMap::zero(a, b);
    }
    let coeffs: Vec<BigInt> = basis
        .iter()
        .map(|_| BigInt::from(rng.gen_range(-2i64..=2)))
        .collect();
    let mut parts = BTreeMap::new();
    if let Some((lo, hi)) = a.window() {
        for n in lo..=hi {
            let blocks: Vec<IntMatrix> = basis.iter().map(|f| f.part_at(n)).collect();
            let m = IntMatrix::from_fn(b.rank_at(n), a.rank_at(n), |i, j| {
                blocks
                    .iter()
                    .zip(&coeffs)
                    .map(|(block, k)| block.get(i, j) * k)
                    .sum()
            });
            parts.insert(n, m);
        }
    }
    ChainMap::new(a.clone(), b.clone(), parts).expect("combinations of chain maps are chain maps")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draws(seed: u64, suite: u64, trial: u64) -> Vec<u64> {
        let mut rng = trial_rng(seed, suite, trial);
        (0..8).map(|_| rng.gen()).collect()
    }

    #[test]
    fn trial_streams_are_reproducible_and_independent() {
        assert_eq!(draws(7, 3, 41), draws(7, 3, 41));
        assert_ne!(draws(7, 3, 41), draws(7, 3, 42));
        assert_ne!(draws(7, 3, 41), draws(7, 4, 41));
        assert_ne!(draws(8, 3, 41), draws(7, 3, 41));
    }

    #[test]
    fn generators_build_valid_objects() {
        for t in 0..50 {
            let mut rng = trial_rng(0xC0FFEE, 99, t);
            let phi = theory_map(&mut rng, &[2, 3, 4, 5]);
            assert!(!phi.representatives().is_empty());
            let a = complex(&mut rng, 4, 3, 6);
            let b = complex(&mut rng, 4, 3, 6);
            let f = chain_map(&mut rng, &a, &b);
            assert_eq!(f.source(), &a);
            assert_eq!(f.target(), &b);
        }
    }
}
