//! Finitely generated abelian groups in canonical form, their
//! homomorphisms, and the classical bifunctors.

mod bifunctor;
mod hom;
mod matrix;

pub use bifunctor::{bifunctor, BifunctorKind};
pub use hom::{
    cokernel_with_maps, enumerate_homs, is_exact_at, lift_through, map_subquotients,
    prime_to_s_projection, s_torsion_inclusion, s_torsion_retraction, GroupHom, SubquotientData,
};
pub(crate) use hom::{quotient_by_lattice, ConcatGroup};
pub use matrix::{smith_normal_form, IntMatrix, SmithDecomposition};

use crate::coefrings::PrimeSet;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

/// A finitely generated abelian group in canonical form: a free part of
/// the given rank plus cyclic factors `Z/f_1 + ... + Z/f_k` with
/// `f_1 | f_2 | ... | f_k` and every `f_i >= 2`.
///
/// Equality of values is isomorphism of groups.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    rank: usize,
    factors: Vec<BigUint>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup { rank: 0, factors: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { rank, factors: vec![] }
    }

    /// Cyclic group of order `n`; `n = 0` means the infinite cyclic group
    /// (the order-zero convention of Smith diagonals) and `n = 1` the
    /// trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(0, &[BigUint::from(n)])
    }

    /// Canonicalises a direct sum of cyclic groups given by arbitrary
    /// orders (0 meaning Z) plus `rank` extra free summands.
    pub fn from_cyclic_orders(rank: usize, orders: &[BigUint]) -> Self {
        let extra_rank = orders.iter().filter(|n| n.is_zero()).count();
        let finite: Vec<BigInt> = orders
            .iter()
            .filter(|n| !n.is_zero())
            .map(|n| BigInt::from(n.clone()))
            .collect();
        let snf = smith_normal_form(&IntMatrix::diagonal(&finite));
        let factors = snf
            .diagonal()
            .into_iter()
            .filter(|d| *d > BigInt::one())
            .map(|d| d.to_biguint().expect("snf diagonal is non-negative"))
            .collect();
        FgAbGroup { rank: rank + extra_rank, factors }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Number of canonical generators: free generators first, then one per
    /// invariant factor in ascending order.
    pub fn ngens(&self) -> usize {
        self.rank + self.factors.len()
    }

    /// Order of the `i`-th canonical generator; zero for free generators.
    pub fn gen_order(&self, i: usize) -> BigUint {
        if i < self.rank {
            BigUint::zero()
        } else {
            self.factors[i - self.rank].clone()
        }
    }

    pub fn order(&self) -> Option<BigUint> {
        if self.rank > 0 {
            return None;
        }
        Some(self.factors.iter().product())
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigUint {
        self.factors.last().cloned().unwrap_or_else(BigUint::one)
    }

    pub fn torsion_subgroup(&self) -> FgAbGroup {
        FgAbGroup { rank: 0, factors: self.factors.clone() }
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let orders: Vec<BigUint> = self
            .factors
            .iter()
            .chain(other.factors.iter())
            .cloned()
            .collect();
        Self::from_cyclic_orders(self.rank + other.rank, &orders)
    }

    pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a FgAbGroup>) -> FgAbGroup {
        parts
            .into_iter()
            .fold(FgAbGroup::trivial(), |acc, g| acc.direct_sum(g))
    }

    /// Relation matrix of the canonical presentation: one column `f_i *
    /// e_{rank+i}` per invariant factor.
    pub fn relation_matrix(&self) -> IntMatrix {
        let g = self.ngens();
        let mut m = IntMatrix::zero(g, self.factors.len());
        for (j, f) in self.factors.iter().enumerate() {
            m.set(self.rank + j, j, BigInt::from(f.clone()));
        }
        m
    }

    /// Multiplicity-respecting scalar: `G^n`.
    pub fn power(&self, n: usize) -> FgAbGroup {
        let mut acc = FgAbGroup::trivial();
        for _ in 0..n {
            acc = acc.direct_sum(self);
        }
        acc
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for n in &self.factors {
            parts.push(format!("Z/{n}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cokernel of `relations: Z^cols -> Z^rows` in canonical form. Rows index
/// generators, columns index relations.
pub fn group_from_presentation(relations: &IntMatrix) -> FgAbGroup {
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let rank = relations.rows() - snf.rank();
    let orders: Vec<BigUint> = diag
        .into_iter()
        .filter(|d| !d.is_zero())
        .map(|d| d.to_biguint().expect("snf diagonal is non-negative"))
        .collect();
    FgAbGroup::from_cyclic_orders(rank, &orders)
}

/// S-primary torsion subgroup of `m` together with the exponent of the
/// full torsion subgroup.
///
/// The S-part of each invariant factor is obtained by dividing out the
/// named primes only, so cofinite sets never require enumerating primes.
pub fn torsion_data(m: &FgAbGroup, s: &PrimeSet) -> (FgAbGroup, BigUint) {
    let parts: Vec<BigUint> = m
        .invariant_factors()
        .iter()
        .map(|f| s.s_part(f))
        .collect();
    (
        FgAbGroup::from_cyclic_orders(0, &parts),
        m.torsion_exponent(),
    )
}

/// Splits `m` as (S-primary torsion) + (prime-to-S torsion) + free part,
/// returning the two torsion pieces.
pub fn torsion_split(m: &FgAbGroup, s: &PrimeSet) -> (FgAbGroup, FgAbGroup) {
    let s_parts: Vec<BigUint> = m.invariant_factors().iter().map(|f| s.s_part(f)).collect();
    let co_parts: Vec<BigUint> = m
        .invariant_factors()
        .iter()
        .map(|f| s.coprime_part(f))
        .collect();
    (
        FgAbGroup::from_cyclic_orders(0, &s_parts),
        FgAbGroup::from_cyclic_orders(0, &co_parts),
    )
}

/// Enumerates every element order multiset of a finite group; test oracle
/// helper, kept here because it only depends on the canonical form.
pub fn element_orders(m: &FgAbGroup) -> Option<Vec<BigUint>> {
    let order = m.order()?;
    let order = order.to_u64()?;
    if order > 1 << 20 {
        return None;
    }
    let factors: Vec<u64> = m
        .invariant_factors()
        .iter()
        .map(|f| f.to_u64().expect("element_orders bound"))
        .collect();
    let mut orders = Vec::with_capacity(order as usize);
    let mut idx = vec![0u64; factors.len()];
    loop {
        let ord = idx
            .iter()
            .zip(&factors)
            .fold(1u64, |acc, (&x, &n)| num_integer::lcm(acc, n / num_integer::gcd(x, n)));
        orders.push(BigUint::from(ord));
        let mut k = 0;
        loop {
            if k == factors.len() {
                orders.sort();
                return Some(orders);
            }
            idx[k] += 1;
            if idx[k] < factors[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rank: usize, factors: &[u64]) -> FgAbGroup {
        let orders: Vec<BigUint> = factors.iter().map(|&n| BigUint::from(n)).collect();
        FgAbGroup::from_cyclic_orders(rank, &orders)
    }

    #[test]
    fn presentation_single_relation() {
        let m = IntMatrix::from_rows_i64(&[vec![12]], 1);
        assert_eq!(group_from_presentation(&m), g(0, &[12]));
    }

    #[test]
    fn presentation_rank_and_torsion() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 0]], 2);
        assert_eq!(group_from_presentation(&m), g(1, &[2]));
    }

    #[test]
    fn presentation_no_relations() {
        let m = IntMatrix::zero(2, 0);
        assert_eq!(group_from_presentation(&m), FgAbGroup::free(2));
    }

    #[test]
    fn canonical_form_merges_coprime_factors() {
        assert_eq!(g(0, &[4, 3]), g(0, &[12]));
        assert_eq!(g(0, &[4, 3]).to_string(), "Z/12");
        assert_eq!(g(0, &[2, 4, 3]).to_string(), "Z/2 + Z/12");
        assert_eq!(g(2, &[6]).to_string(), "Z^2 + Z/6");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn invariant_factor_chain() {
        let grp = g(0, &[6, 10, 15]);
        // 6, 10, 15 -> 1, 30, 30: chain [30, 30]
        assert_eq!(
            grp.invariant_factors(),
            &[BigUint::from(30u32), BigUint::from(30u32)]
        );
        assert_eq!(grp.order(), Some(BigUint::from(900u32)));
    }

    #[test]
    fn torsion_data_examples() {
        let (t, e) = torsion_data(&g(0, &[12]), &PrimeSet::finite(&[2]).unwrap());
        assert_eq!(t, g(0, &[4]));
        assert_eq!(e, BigUint::from(12u32));

        let (t, e) = torsion_data(&g(0, &[6, 10]), &PrimeSet::finite(&[2, 5]).unwrap());
        assert_eq!(t, g(0, &[2, 10]));
        assert_eq!(e, BigUint::from(30u32));
    }

    #[test]
    fn torsion_data_matches_annihilator_enumeration() {
        // independent oracle: collect the orders of all elements of
        // Z/6 + Z/10 annihilated by a {2,5}-number and compare with the
        // claimed subgroup's element order multiset
        let grp = g(0, &[6, 10]);
        let s = PrimeSet::finite(&[2, 5]).unwrap();
        let (t, _) = torsion_data(&grp, &s);
        let all = element_orders(&grp).unwrap();
        let annihilated: Vec<BigUint> = all
            .into_iter()
            .filter(|o| s.is_s_number(o))
            .collect();
        let mut expected = element_orders(&t).unwrap();
        expected.sort();
        assert_eq!(annihilated, expected);
    }

    #[test]
    fn free_part_untouched_by_torsion_data() {
        let (t, e) = torsion_data(&g(2, &[9]), &PrimeSet::finite(&[2]).unwrap());
        assert_eq!(t, FgAbGroup::trivial());
        assert_eq!(e, BigUint::from(9u32));
    }
}
