use super::FgAbGroup;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BifunctorKind {
    Hom,
    Ext,
    Tensor,
    Tor,
}

impl BifunctorKind {
    pub fn name(self) -> &'static str {
        match self {
            BifunctorKind::Hom => "Hom",
            BifunctorKind::Ext => "Ext",
            BifunctorKind::Tensor => "Tensor",
            BifunctorKind::Tor => "Tor",
        }
    }
}

/// Value on a pair of cyclic atoms, where order 0 encodes `Z`.
/// Returns the order of the resulting cyclic group (0 for `Z`, 1 for the
/// trivial group).
fn on_atoms(kind: BifunctorKind, a: &BigUint, b: &BigUint) -> BigUint {
    use BifunctorKind::*;
    let one = BigUint::from(1u32);
    match kind {
        Hom => match (a.is_zero(), b.is_zero()) {
            (true, _) => b.clone(),      // Hom(Z, B) = B
            (false, true) => one,        // Hom(Z/a, Z) = 0
            (false, false) => a.gcd(b),  // Hom(Z/a, Z/b) = Z/gcd
        },
        Ext => match (a.is_zero(), b.is_zero()) {
            (true, _) => one,            // Ext(Z, B) = 0
            (false, true) => a.clone(),  // Ext(Z/a, Z) = Z/a
            (false, false) => a.gcd(b),  // Ext(Z/a, Z/b) = Z/gcd
        },
        Tensor => match (a.is_zero(), b.is_zero()) {
            (true, _) => b.clone(),      // Z tensor B = B
            (_, true) => a.clone(),
            _ => a.gcd(b),               // Z/a tensor Z/b = Z/gcd
        },
        Tor => match (a.is_zero(), b.is_zero()) {
            (true, _) | (_, true) => one, // Tor with a free argument vanishes
            _ => a.gcd(b),                // Tor(Z/a, Z/b) = Z/gcd
        },
    }
}

/// `Hom`, `Ext^1`, tensor or `Tor_1` of two finitely generated groups,
/// extended bilinearly over the cyclic decompositions.
pub fn bifunctor(kind: BifunctorKind, a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let a_atoms: Vec<BigUint> = std::iter::repeat(BigUint::zero())
        .take(a.rank())
        .chain(a.invariant_factors().iter().cloned())
        .collect();
    let b_atoms: Vec<BigUint> = std::iter::repeat(BigUint::zero())
        .take(b.rank())
        .chain(b.invariant_factors().iter().cloned())
        .collect();
    let mut orders = Vec::with_capacity(a_atoms.len() * b_atoms.len());
    for x in &a_atoms {
        for y in &b_atoms {
            orders.push(on_atoms(kind, x, y));
        }
    }
    FgAbGroup::from_cyclic_orders(0, &orders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(rank: usize, factors: &[u64]) -> FgAbGroup {
        let orders: Vec<BigUint> = factors.iter().map(|&n| BigUint::from(n)).collect();
        FgAbGroup::from_cyclic_orders(rank, &orders)
    }

    #[test]
    fn table_on_cyclic_atoms() {
        use BifunctorKind::*;
        let z = FgAbGroup::free(1);
        let z4 = g(0, &[4]);
        let z6 = g(0, &[6]);
        assert_eq!(bifunctor(Hom, &z, &z6), z6);
        assert_eq!(bifunctor(Hom, &z4, &z), FgAbGroup::trivial());
        assert_eq!(bifunctor(Hom, &z4, &z6), g(0, &[2]));
        assert_eq!(bifunctor(Ext, &z, &z6), FgAbGroup::trivial());
        assert_eq!(bifunctor(Ext, &z4, &z), z4);
        assert_eq!(bifunctor(Ext, &z4, &z6), g(0, &[2]));
        assert_eq!(bifunctor(Tensor, &z4, &z6), g(0, &[2]));
        assert_eq!(bifunctor(Tensor, &z, &z4), z4);
        assert_eq!(bifunctor(Tor, &z4, &z6), g(0, &[2]));
        assert_eq!(bifunctor(Tor, &z, &z6), FgAbGroup::trivial());
    }

    #[test]
    fn mixed_rank_example() {
        use BifunctorKind::*;
        // Hom(Z^2 + Z/4, Z + Z/6) = Z^2 + (Z/6)^2 + Z/2
        let a = g(2, &[4]);
        let b = g(1, &[6]);
        assert_eq!(bifunctor(Hom, &a, &b), g(2, &[6, 6, 2]));
        // Ext(Z^2 + Z/4, Z + Z/6) = Z/4 + Z/2
        assert_eq!(bifunctor(Ext, &a, &b), g(0, &[4, 2]));
    }

    fn small_group() -> impl Strategy<Value = FgAbGroup> {
        (
            0usize..=2,
            proptest::collection::vec(1u64..=30, 0..=3),
        )
            .prop_map(|(rank, factors)| g(rank, &factors))
    }

    fn kind() -> impl Strategy<Value = BifunctorKind> {
        prop_oneof![
            Just(BifunctorKind::Hom),
            Just(BifunctorKind::Ext),
            Just(BifunctorKind::Tensor),
            Just(BifunctorKind::Tor),
        ]
    }

    proptest! {
        #[test]
        fn additive_in_both_arguments(k in kind(), a in small_group(), a2 in small_group(), b in small_group()) {
            let left = bifunctor(k, &a.direct_sum(&a2), &b);
            let right = bifunctor(k, &a, &b).direct_sum(&bifunctor(k, &a2, &b));
            prop_assert_eq!(left, right);
            let left = bifunctor(k, &b, &a.direct_sum(&a2));
            let right = bifunctor(k, &b, &a).direct_sum(&bifunctor(k, &b, &a2));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn tensor_and_tor_symmetric(a in small_group(), b in small_group()) {
            prop_assert_eq!(
                bifunctor(BifunctorKind::Tensor, &a, &b),
                bifunctor(BifunctorKind::Tensor, &b, &a)
            );
            prop_assert_eq!(
                bifunctor(BifunctorKind::Tor, &a, &b),
                bifunctor(BifunctorKind::Tor, &b, &a)
            );
        }

        #[test]
        fn finite_inputs_give_finite_outputs(k in kind(), a in small_group(), b in small_group()) {
            if a.is_finite() && b.is_finite() {
                prop_assert!(bifunctor(k, &a, &b).is_finite());
            }
        }
    }
}
