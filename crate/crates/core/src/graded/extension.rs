use super::GradedGroup;
use crate::coefrings::factorize;
use crate::error::{Error, Result};
use crate::fgab::{
    cokernel_with_maps, group_from_presentation, is_exact_at, map_subquotients, ConcatGroup,
    FgAbGroup, GroupHom, IntMatrix,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ResolutionPolicy {
    /// Resolve to the direct sum.
    Split,
    /// List every middle group admitting a certified short exact sequence.
    Enumerate,
}

/// A possible middle term, certified by the witnessing injection and
/// surjection with exact composite.
#[derive(Clone, Debug)]
pub struct ExtensionCandidate {
    pub group: FgAbGroup,
    /// sub -> group
    pub inclusion: GroupHom,
    /// group -> quot
    pub projection: GroupHom,
}

/// A group known only up to extension: sub ↣ E ↠ quot.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    pub degree: i64,
    pub sub: FgAbGroup,
    pub quot: FgAbGroup,
    pub candidates: Vec<ExtensionCandidate>,
    pub resolved: Option<FgAbGroup>,
}

impl ExtensionProblem {
    pub fn new(degree: i64, sub: FgAbGroup, quot: FgAbGroup) -> Self {
        ExtensionProblem {
            degree,
            sub,
            quot,
            candidates: Vec::new(),
            resolved: None,
        }
    }

    /// The split middle term with its canonical witnesses.
    pub fn split_candidate(&self) -> ExtensionCandidate {
        let concat = ConcatGroup::new(&self.sub, &self.quot);
        let k1 = self.sub.ngens();
        let k2 = self.quot.ngens();
        let incl_raw = IntMatrix::identity(k1).vstack(&IntMatrix::zero(k2, k1));
        let proj_raw = IntMatrix::zero(k2, k1).hstack(&IntMatrix::identity(k2));
        let inclusion = GroupHom::new(
            self.sub.clone(),
            concat.group.clone(),
            &concat.projection * &incl_raw,
        )
        .expect("split inclusion is valid");
        let projection = GroupHom::new(
            concat.group.clone(),
            self.quot.clone(),
            &proj_raw * &concat.section,
        )
        .expect("split projection is valid");
        debug_assert!(is_exact_at(&inclusion, &projection));
        ExtensionCandidate {
            group: concat.group,
            inclusion,
            projection,
        }
    }

    pub fn middle_order(&self) -> Option<BigUint> {
        Some(self.sub.order()? * self.quot.order()?)
    }
}

/// Fills in candidates for an extension problem.
///
/// `Split` records the direct sum as resolved. `Enumerate` brute-forces all
/// abelian groups whose order is the product of the sub and quot orders and
/// keeps exactly those admitting a certified short exact sequence; the
/// result is resolved only when a single class survives. The middle order
/// must stay within `max_order`.
pub fn resolve_extension(
    p: &ExtensionProblem,
    policy: ResolutionPolicy,
    max_order: u64,
) -> Result<ExtensionProblem> {
    let mut out = p.clone();
    match policy {
        ResolutionPolicy::Split => {
            let split = out.split_candidate();
            if !out.candidates.iter().any(|c| c.group == split.group) {
                out.candidates.push(split.clone());
            }
            out.candidates.sort_by(|a, b| {
                a.group.invariant_factors().cmp(b.group.invariant_factors())
            });
            out.resolved = Some(split.group);
            Ok(out)
        }
        ResolutionPolicy::Enumerate => {
            let order = out.middle_order().ok_or_else(|| {
                Error::InvalidArgument(
                    "enumeration needs finite sub and quot".to_string(),
                )
            })?;
            if order > BigUint::from(max_order) {
                return Err(Error::BoundExceeded {
                    order: order.to_string(),
                    bound: max_order,
                });
            }
            let mut candidates = Vec::new();
            for e in abelian_groups_of_order(&order) {
                if !passes_filters(&out.sub, &out.quot, &e) {
                    continue;
                }
                if let Some((inclusion, projection)) =
                    embeds_with_quotient(&out.sub, &out.quot, &e)?
                {
                    debug_assert!(is_exact_at(&inclusion, &projection));
                    candidates.push(ExtensionCandidate {
                        group: e,
                        inclusion,
                        projection,
                    });
                }
            }
            candidates.sort_by(|a, b| {
                a.group.invariant_factors().cmp(b.group.invariant_factors())
            });
            debug_assert!(
                candidates
                    .iter()
                    .any(|c| c.group == out.sub.direct_sum(&out.quot)),
                "split extension must always appear"
            );
            out.resolved = if candidates.len() == 1 {
                Some(candidates[0].group.clone())
            } else {
                None
            };
            out.candidates = candidates;
            Ok(out)
        }
    }
}

/// The mod-s value of a graded theory, one extension problem per degree:
/// coker(s on F_n) ↣ F_n(;s) ↠ ker(s on F_{n-1}), candidates enumerated.
pub fn finite_coefficients(
    f: &GradedGroup,
    s: u64,
    max_order: u64,
) -> Result<Vec<ExtensionProblem>> {
    if s <= 1 {
        return Err(Error::InvalidArgument(format!(
            "coefficient modulus must be at least 2, got {s}"
        )));
    }
    let mut problems = Vec::new();
    for n in f.paired_degrees() {
        problems.push(resolve_extension(
            &coefficient_problem(f, s, n)?,
            ResolutionPolicy::Enumerate,
            max_order,
        )?);
    }
    Ok(problems)
}

/// The unresolved degree-n problem of `finite_coefficients`.
pub(crate) fn coefficient_problem(f: &GradedGroup, s: u64, n: i64) -> Result<ExtensionProblem> {
    let mul_n = GroupHom::mul_by(&f.fg_at(n)?, &BigInt::from(s));
    let mul_below = GroupHom::mul_by(&f.fg_at(n - 1)?, &BigInt::from(s));
    let sub = map_subquotients(&mul_n).cokernel;
    let quot = map_subquotients(&mul_below).kernel;
    Ok(ExtensionProblem::new(n, sub, quot))
}

fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

/// Every isomorphism class of abelian groups of the given finite order.
pub fn abelian_groups_of_order(n: &BigUint) -> Vec<FgAbGroup> {
    let mut classes = vec![Vec::<BigUint>::new()];
    for (p, e) in factorize(n) {
        let p = BigUint::from(p);
        let mut next = Vec::new();
        for lambda in partitions(e) {
            let orders: Vec<BigUint> = lambda.iter().map(|&a| p.pow(a)).collect();
            for base in &classes {
                let mut combined = base.clone();
                combined.extend(orders.iter().cloned());
                next.push(combined);
            }
        }
        classes = next;
    }
    classes
        .into_iter()
        .map(|orders| FgAbGroup::from_cyclic_orders(0, &orders))
        .collect()
}

fn p_rank(g: &FgAbGroup, p: u64) -> usize {
    let p = BigUint::from(p);
    g.invariant_factors()
        .iter()
        .filter(|f| (*f % &p).is_zero())
        .count()
}

/// Cheap necessary conditions for sub ↣ e ↠ quot to exist.
fn passes_filters(sub: &FgAbGroup, quot: &FgAbGroup, e: &FgAbGroup) -> bool {
    let exp_e = e.torsion_exponent();
    let exp_product = sub.torsion_exponent() * quot.torsion_exponent();
    if !(&exp_e % sub.torsion_exponent()).is_zero()
        || !(&exp_e % quot.torsion_exponent()).is_zero()
        || !(exp_product % &exp_e).is_zero()
    {
        return false;
    }
    e.order().map_or(false, |o| {
        factorize(&o).iter().all(|&(p, _)| {
            let re = p_rank(e, p);
            re >= p_rank(sub, p).max(p_rank(quot, p)) && re <= p_rank(sub, p) + p_rank(quot, p)
        })
    })
}

/// Coordinate tuples of the elements of `e` annihilated by `m`, tagged with
/// their exact order.
fn annihilated_elements(e: &FgAbGroup, m: &BigUint) -> Vec<(Vec<BigInt>, BigUint)> {
    let gens = e.ngens();
    let mut steps = Vec::with_capacity(gens);
    for i in 0..gens {
        let d = e.gen_order(i);
        let g = d.gcd(m);
        steps.push((&d / &g, g));
    }
    let mut out = Vec::new();
    let mut counters: Vec<BigUint> = vec![BigUint::zero(); gens];
    'emit: loop {
        let mut coords = Vec::with_capacity(gens);
        let mut order = BigUint::one();
        for i in 0..gens {
            let x = &steps[i].0 * &counters[i];
            let d = e.gen_order(i);
            if !x.is_zero() {
                order = order.lcm(&(&d / x.gcd(&d)));
            }
            coords.push(BigInt::from(x));
        }
        out.push((coords, order));
        let mut j = 0;
        loop {
            if j == gens {
                break 'emit;
            }
            counters[j] += 1u32;
            if counters[j] < steps[j].1 {
                break;
            }
            counters[j] = BigUint::zero();
            j += 1;
        }
    }
    out
}

const EMBEDDING_SEARCH_STEPS: u64 = 5_000_000;

/// Searches for an injection of `sub` into `e` whose cokernel is `quot`;
/// returns the witnessing pair on success. Generators are matched largest
/// order first and partial choices are pruned by the order of the subgroup
/// they generate.
fn embeds_with_quotient(
    sub: &FgAbGroup,
    quot: &FgAbGroup,
    e: &FgAbGroup,
) -> Result<Option<(GroupHom, GroupHom)>> {
    let k = sub.ngens();
    let e_order = e.order().expect("enumeration is over finite groups");
    let pools: Vec<Vec<Vec<BigInt>>> = (0..k)
        .map(|j| {
            let m = sub.gen_order(j);
            annihilated_elements(e, &m)
                .into_iter()
                .filter(|(_, order)| *order == m)
                .map(|(coords, _)| coords)
                .collect()
        })
        .collect();

    // columns are filled right to left so the largest invariant factor is
    // matched first
    fn go(
        sub: &FgAbGroup,
        quot: &FgAbGroup,
        e: &FgAbGroup,
        e_order: &BigUint,
        pools: &[Vec<Vec<BigInt>>],
        x: &mut IntMatrix,
        depth: usize,
        steps: &mut u64,
    ) -> Result<Option<(GroupHom, GroupHom)>> {
        let k = sub.ngens();
        if depth == k {
            let hom = GroupHom::new(sub.clone(), e.clone(), x.clone())
                .expect("annihilated images give a valid homomorphism");
            let (coker, projection, _) = cokernel_with_maps(&hom);
            if &coker == quot {
                return Ok(Some((hom, projection)));
            }
            return Ok(None);
        }
        let col = k - 1 - depth;
        let expected: BigUint = (0..=depth).map(|d| sub.gen_order(k - 1 - d)).product();
        for candidate in &pools[col] {
            *steps += 1;
            if *steps > EMBEDDING_SEARCH_STEPS {
                return Err(Error::SearchBoundExceeded(format!(
                    "extension search for {sub} in {e} exceeded {EMBEDDING_SEARCH_STEPS} steps"
                )));
            }
            for i in 0..e.ngens() {
                x.set(i, col, candidate[i].clone());
            }
            let span = x.submatrix(0..e.ngens(), col..k);
            let quotient = group_from_presentation(&span.hstack(&e.relation_matrix()));
            let span_order = e_order / quotient.order().expect("finite quotient");
            if span_order != expected {
                continue;
            }
            if let Some(found) = go(sub, quot, e, e_order, pools, x, depth + 1, steps)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    let mut x = IntMatrix::zero(e.ngens(), k);
    let mut steps = 0u64;
    go(sub, quot, e, &e_order, &pools, &mut x, 0, &mut steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefrings::PrimeSet;
    use crate::graded::torsion_theory;
    use proptest::prelude::*;

    fn g(rank: usize, factors: &[u64]) -> FgAbGroup {
        let orders: Vec<BigUint> = factors.iter().map(|&n| BigUint::from(n)).collect();
        FgAbGroup::from_cyclic_orders(rank, &orders)
    }

    fn groups(problem: &ExtensionProblem) -> Vec<String> {
        problem
            .candidates
            .iter()
            .map(|c| c.group.to_string())
            .collect()
    }

    #[test]
    fn partitions_of_small_numbers() {
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(12).len(), 77);
    }

    #[test]
    fn group_classes_of_order() {
        let classes = abelian_groups_of_order(&BigUint::from(72u32));
        // 72 = 8 * 9: p(3) * p(2) = 3 * 2
        assert_eq!(classes.len(), 6);
        let classes = abelian_groups_of_order(&BigUint::from(1u32));
        assert_eq!(classes, vec![FgAbGroup::trivial()]);
    }

    #[test]
    fn two_by_two_extensions() {
        let p = ExtensionProblem::new(0, g(0, &[2]), g(0, &[2]));
        let r = resolve_extension(&p, ResolutionPolicy::Enumerate, 4096).unwrap();
        assert_eq!(groups(&r), vec!["Z/2 + Z/2", "Z/4"]);
        assert!(r.resolved.is_none());
    }

    #[test]
    fn coprime_extensions_split() {
        let p = ExtensionProblem::new(0, g(0, &[2]), g(0, &[3]));
        let r = resolve_extension(&p, ResolutionPolicy::Enumerate, 4096).unwrap();
        assert_eq!(groups(&r), vec!["Z/6"]);
        assert_eq!(r.resolved, Some(g(0, &[6])));
    }

    #[test]
    fn trivial_sub_resolves_to_quot() {
        let p = ExtensionProblem::new(0, FgAbGroup::trivial(), g(0, &[2, 4]));
        let r = resolve_extension(&p, ResolutionPolicy::Enumerate, 4096).unwrap();
        assert_eq!(groups(&r), vec!["Z/2 + Z/4"]);
        assert_eq!(r.resolved, Some(g(0, &[2, 4])));
    }

    #[test]
    fn even_coefficient_ambiguity() {
        // the mod-q problem with sub Z/2 and quot Z/q, q even
        let p = ExtensionProblem::new(0, g(0, &[2]), g(0, &[4]));
        let r = resolve_extension(&p, ResolutionPolicy::Enumerate, 4096).unwrap();
        assert_eq!(groups(&r), vec!["Z/2 + Z/4", "Z/8"]);
    }

    #[test]
    fn candidates_carry_certificates() {
        let p = ExtensionProblem::new(0, g(0, &[4]), g(0, &[2, 2]));
        let r = resolve_extension(&p, ResolutionPolicy::Enumerate, 4096).unwrap();
        assert!(!r.candidates.is_empty());
        for c in &r.candidates {
            assert!(map_subquotients(&c.inclusion).kernel.is_trivial());
            assert!(map_subquotients(&c.projection).cokernel.is_trivial());
            assert!(is_exact_at(&c.inclusion, &c.projection));
        }
    }

    #[test]
    fn split_policy_keeps_candidates() {
        let p = ExtensionProblem::new(0, g(0, &[2]), g(0, &[2]));
        let r = resolve_extension(&p, ResolutionPolicy::Split, 4096).unwrap();
        assert_eq!(r.resolved, Some(g(0, &[2, 2])));
        assert_eq!(groups(&r), vec!["Z/2 + Z/2"]);
    }

    #[test]
    fn bound_is_enforced() {
        let p = ExtensionProblem::new(0, g(0, &[64]), g(0, &[64]));
        let err = resolve_extension(&p, ResolutionPolicy::Enumerate, 64).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }));
    }

    #[test]
    fn point_theory_coefficients() {
        let f = crate::graded::GradedGroup::periodic_fg(
            2,
            vec![FgAbGroup::free(1), FgAbGroup::trivial()],
        )
        .unwrap();
        for q in [2u64, 3, 5, 12] {
            let problems = finite_coefficients(&f, q, 4096).unwrap();
            let at0 = problems.iter().find(|p| p.degree == 0).unwrap();
            assert_eq!(at0.resolved, Some(g(0, &[q])));
            let at1 = problems.iter().find(|p| p.degree == 1).unwrap();
            assert_eq!(at1.resolved, Some(FgAbGroup::trivial()));
        }
    }

    #[test]
    fn rejects_degenerate_modulus() {
        let f = crate::graded::GradedGroup::periodic_fg(2, vec![g(1, &[]), g(0, &[])]).unwrap();
        assert!(finite_coefficients(&f, 1, 4096).is_err());
    }

    fn small_torsion() -> impl Strategy<Value = FgAbGroup> {
        proptest::collection::vec(prop_oneof![Just(2u64), Just(3), Just(4), Just(6), Just(9), Just(12), Just(36)], 0..=2)
            .prop_map(|factors| g(0, &factors))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn square_annihilates_candidates(
            f0 in small_torsion(),
            f1 in small_torsion(),
            s in 2u64..=12,
        ) {
            let f = crate::graded::GradedGroup::periodic_fg(2, vec![f0, f1]).unwrap();
            let s_sq = BigUint::from(s) * BigUint::from(s);
            match finite_coefficients(&f, s, 4096) {
                Ok(problems) => {
                    for p in &problems {
                        for c in &p.candidates {
                            prop_assert!((s_sq.clone() % c.group.torsion_exponent()).is_zero());
                        }
                    }
                }
                Err(Error::BoundExceeded { .. }) => {}
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            }
        }

        #[test]
        fn torsion_route_matches_mod_s_problems(
            f0 in proptest::collection::vec(prop_oneof![Just(2u64), Just(4), Just(3), Just(9), Just(6), Just(12)], 0..=2),
            f1 in proptest::collection::vec(prop_oneof![Just(2u64), Just(4), Just(3), Just(9), Just(6), Just(12)], 0..=2),
            s in prop_oneof![Just(2u64), Just(3), Just(4), Just(6), Just(9), Just(12)],
        ) {
            // S-torsion valued theories: the mod-s problem of the torsion
            // theory in degree n+1 agrees with the original in degree n
            let set = PrimeSet::finite(&[2, 3]).unwrap();
            let f = crate::graded::GradedGroup::periodic_fg(2, vec![g(0, &f0), g(0, &f1)]).unwrap();
            let fprime = torsion_theory(&f, &set).unwrap();
            let s_big = BigUint::from(s);
            for n in 0..2i64 {
                let problem = coefficient_problem(&f, s, n).unwrap();
                prop_assert_eq!(&problem.sub, &fprime.value_at(n + 1).mul_cokernel(&s_big));
                prop_assert_eq!(&problem.quot, &fprime.value_at(n).mul_kernel(&s_big));
            }
        }
    }
}
