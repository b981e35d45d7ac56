//! Universal-coefficient pairings between K-theory objects, with the named
//! fixtures the command line exposes.

use crate::coefrings::{atom_bifunctor, ext_bifunctor, Atom, ExtModule};
use crate::error::{Error, Result};
use crate::fgab::{
    cokernel_with_maps, is_exact_at, map_subquotients, BifunctorKind, FgAbGroup, GroupHom,
};
use crate::graded::{
    coefficient_problem, resolve_extension, ExactSequenceReport, ExtensionProblem, GradedGroup,
    Grading, GroupValue, ResolutionPolicy, SequenceNode,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    Complex,
    Real,
}

impl Flavor {
    pub fn period(self) -> u32 {
        match self {
            Flavor::Complex => 2,
            Flavor::Real => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Complex => "complex",
            Flavor::Real => "real",
        }
    }
}

/// A named object known through its K-theory groups alone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KTheoryObject {
    name: String,
    k_groups: GradedGroup,
    flavor: Flavor,
}

impl KTheoryObject {
    pub fn new(name: impl Into<String>, k_groups: GradedGroup, flavor: Flavor) -> Result<Self> {
        if k_groups.grading() != Grading::Periodic(flavor.period()) {
            return Err(Error::InvalidArgument(format!(
                "{} objects need period {}, got {:?}",
                flavor.name(),
                flavor.period(),
                k_groups.grading()
            )));
        }
        Ok(KTheoryObject {
            name: name.into(),
            k_groups,
            flavor,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k_groups(&self) -> &GradedGroup {
        &self.k_groups
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }
}

/// The K-theory of the real point in degrees 0..8.
pub fn ko_point_table() -> Vec<FgAbGroup> {
    let z = FgAbGroup::free(1);
    let z2 = FgAbGroup::from_cyclic_orders(0, &[BigUint::from(2u32)]);
    let zero = FgAbGroup::trivial;
    vec![z.clone(), z2.clone(), z2, zero(), z, zero(), zero(), zero()]
}

pub fn point_complex() -> KTheoryObject {
    let groups = GradedGroup::periodic_fg(2, vec![FgAbGroup::free(1), FgAbGroup::trivial()])
        .expect("point table has period 2");
    KTheoryObject::new("point-complex", groups, Flavor::Complex).expect("fixture is valid")
}

pub fn point_real() -> KTheoryObject {
    let groups = GradedGroup::periodic_fg(8, ko_point_table()).expect("point table has period 8");
    KTheoryObject::new("point-real", groups, Flavor::Real).expect("fixture is valid")
}

/// The mapping-cone object of multiplication by `q` on the complex point.
pub fn cone_of_multiplication(q: u64) -> Result<KTheoryObject> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "cone modulus must be at least 2, got {q}"
        )));
    }
    let groups = GradedGroup::periodic_fg(
        2,
        vec![
            FgAbGroup::from_cyclic_orders(0, &[BigUint::from(q)]),
            FgAbGroup::trivial(),
        ],
    )?;
    KTheoryObject::new(format!("Cq({q})"), groups, Flavor::Complex)
}

/// The complex object with rational K-theory in even degree.
pub fn divisible_rational() -> KTheoryObject {
    let groups = GradedGroup::periodic(
        2,
        vec![GroupValue::Ext(ExtModule::rationals()), GroupValue::zero()],
    )
    .expect("two entries");
    KTheoryObject::new("DQ", groups, Flavor::Complex).expect("fixture is valid")
}

/// The complex object with divisible torsion K-theory in even degree.
pub fn divisible_torsion() -> KTheoryObject {
    let groups = GradedGroup::periodic(
        2,
        vec![
            GroupValue::Ext(ExtModule::rationals_mod_z()),
            GroupValue::zero(),
        ],
    )
    .expect("two entries");
    KTheoryObject::new("DQZ", groups, Flavor::Complex).expect("fixture is valid")
}

/// Looks up a fixture by its command-line name.
pub fn fixture(name: &str) -> Result<KTheoryObject> {
    match name {
        "point-complex" => return Ok(point_complex()),
        "point-real" => return Ok(point_real()),
        "DQ" => return Ok(divisible_rational()),
        "DQZ" => return Ok(divisible_torsion()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("Cq(") {
        if let Some(digits) = rest.strip_suffix(')') {
            let q = digits.parse::<u64>().map_err(|_| {
                Error::InvalidArgument(format!("bad cone modulus in fixture name {name:?}"))
            })?;
            return cone_of_multiplication(q);
        }
    }
    Err(Error::InvalidArgument(format!(
        "unknown fixture {name:?}; expected point-complex, point-real, Cq(q), DQ, or DQZ"
    )))
}

/// One degree of the pairing: the hom layer, the derived layer one degree
/// up, and whatever resolution the layers admit.
#[derive(Clone, Debug)]
pub struct UctEntry {
    pub degree: i64,
    pub sub: ExtModule,
    pub quot: ExtModule,
    /// present when both layers are finitely generated and nontrivial
    pub problem: Option<ExtensionProblem>,
    pub resolved: Option<ExtModule>,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct UctResult {
    pub source: String,
    pub target: String,
    pub period: u32,
    pub entries: Vec<UctEntry>,
}

/// The bootstrap-class pairing formula, degree by degree: the hom layer
/// pairs matching degrees, the derived layer reaches one degree higher, and
/// ambiguous finite extensions are enumerated up to `max_order`.
pub fn uct_kk(a: &KTheoryObject, b: &KTheoryObject, max_order: u64) -> Result<UctResult> {
    if a.flavor != b.flavor {
        return Err(Error::InvalidArgument(format!(
            "cannot pair a {} object with a {} one",
            a.flavor.name(),
            b.flavor.name()
        )));
    }
    let period = a.flavor.period();
    let mut entries = Vec::new();
    for n in 0..period as i64 {
        entries.push(uct_kk_at(a, b, n, max_order)?);
    }
    Ok(UctResult {
        source: a.name.clone(),
        target: b.name.clone(),
        period,
        entries,
    })
}

/// A single degree of the pairing formula; degrees where some layer leaves
/// the representable class can be sidestepped this way.
pub fn uct_kk_at(a: &KTheoryObject, b: &KTheoryObject, n: i64, max_order: u64) -> Result<UctEntry> {
    if a.flavor != b.flavor {
        return Err(Error::InvalidArgument(format!(
            "cannot pair a {} object with a {} one",
            a.flavor.name(),
            b.flavor.name()
        )));
    }
    let period = a.flavor.period();
    let mut quot = ExtModule::zero();
    let mut sub = ExtModule::zero();
    for i in 0..period as i64 {
        let ka = a.k_groups.value_at(i).as_ext();
        quot = quot.direct_sum(&ext_bifunctor(
            BifunctorKind::Hom,
            &ka,
            &b.k_groups.value_at(i + n).as_ext(),
        )?)?;
        sub = sub.direct_sum(&ext_bifunctor(
            BifunctorKind::Ext,
            &ka,
            &b.k_groups.value_at(i + n + 1).as_ext(),
        )?)?;
    }
    Ok(resolve_layers(n, sub, quot, max_order))
}

fn resolve_layers(degree: i64, sub: ExtModule, quot: ExtModule, max_order: u64) -> UctEntry {
    let mut entry = UctEntry {
        degree,
        sub: sub.clone(),
        quot: quot.clone(),
        problem: None,
        resolved: None,
        note: None,
    };
    if sub.is_zero() {
        entry.resolved = Some(quot);
        return entry;
    }
    if quot.is_zero() {
        entry.resolved = Some(sub);
        return entry;
    }
    match (sub.as_fg(), quot.as_fg()) {
        (Some(s), Some(q)) => {
            let problem = ExtensionProblem::new(degree, s, q);
            match resolve_extension(&problem, ResolutionPolicy::Enumerate, max_order) {
                Ok(solved) => {
                    entry.resolved = solved.resolved.clone().map(|g| ExtModule::from_fg(&g));
                    entry.problem = Some(solved);
                }
                Err(e) => {
                    entry.note = Some(format!("enumeration skipped: {e}"));
                    entry.problem = Some(problem);
                }
            }
        }
        _ => {
            entry.note =
                Some("two-layer extension outside the finitely generated class".to_string());
        }
    }
    entry
}

/// The mod-q object, one extension problem per degree. `object` is present
/// exactly when every degree resolved to a single group.
#[derive(Clone, Debug)]
pub struct CoefficientObject {
    pub base: String,
    pub modulus: u64,
    pub problems: Vec<ExtensionProblem>,
    pub object: Option<KTheoryObject>,
}

/// Finite-coefficient K-theory under the flavor's resolution policy:
/// complex theories split, real theories carry every candidate.
pub fn coefficient_object(b: &KTheoryObject, q: u64, max_order: u64) -> Result<CoefficientObject> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "coefficient modulus must be at least 2, got {q}"
        )));
    }
    let policy = match b.flavor {
        Flavor::Complex => ResolutionPolicy::Split,
        Flavor::Real => ResolutionPolicy::Enumerate,
    };
    let mut problems = Vec::new();
    for n in 0..b.flavor.period() as i64 {
        problems.push(resolve_extension(
            &coefficient_problem(&b.k_groups, q, n)?,
            policy,
            max_order,
        )?);
    }
    let object = problems
        .iter()
        .map(|p| p.resolved.clone())
        .collect::<Option<Vec<_>>>()
        .map(|groups| {
            KTheoryObject::new(
                format!("{} mod {}", b.name, q),
                GradedGroup::periodic_fg(b.flavor.period(), groups)
                    .expect("one entry per residue"),
                b.flavor,
            )
            .expect("period preserved")
        });
    Ok(CoefficientObject {
        base: b.name.clone(),
        modulus: q,
        problems,
        object,
    })
}

/// The real pairing of a multiplication cone against the point in degrees 0
/// and -1, derived by running the six-term stretch of the long exact
/// sequence that the three classical point groups support.
#[derive(Clone, Debug)]
pub struct CqRealSequence {
    pub modulus: u64,
    pub kko_0: FgAbGroup,
    pub kko_minus1: FgAbGroup,
    pub les: ExactSequenceReport,
}

pub fn kko_cq_r(q: u64) -> Result<CqRealSequence> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "cone modulus must be at least 2, got {q}"
        )));
    }
    let z = FgAbGroup::free(1);
    let z2 = FgAbGroup::from_cyclic_orders(0, &[BigUint::from(2u32)]);
    let scalar = BigInt::from(q);

    let mul_z2 = GroupHom::mul_by(&z2, &scalar);
    let mul_z = GroupHom::mul_by(&z, &scalar);
    let (coker_z2, proj_z2, _) = cokernel_with_maps(&mul_z2);
    let (coker_z, proj_z, _) = cokernel_with_maps(&mul_z);

    // degree 0 extends the kernel on the point by the cokernel one degree up;
    // the kernel of an injective multiplication is trivial, so the extension
    // problem resolves outright
    let kko_0 = resolve_extension(
        &ExtensionProblem::new(0, coker_z2, map_subquotients(&mul_z).kernel),
        ResolutionPolicy::Enumerate,
        4 * q.max(2),
    )?
    .resolved
    .ok_or_else(|| Error::Undetermined("degree-0 extension did not resolve".into()))?;
    let kko_minus1 = resolve_extension(
        &ExtensionProblem::new(-1, coker_z, FgAbGroup::trivial()),
        ResolutionPolicy::Enumerate,
        4 * q.max(2),
    )?
    .resolved
    .ok_or_else(|| Error::Undetermined("degree -1 extension did not resolve".into()))?;

    let into_kko0 = GroupHom::new(z2.clone(), kko_0.clone(), proj_z2.matrix().clone())
        .expect("projection retargets onto the resolved group");
    let kko0_to_z = GroupHom::zero(&kko_0, &z);
    let into_kkom1 = GroupHom::new(z.clone(), kko_minus1.clone(), proj_z.matrix().clone())
        .expect("projection retargets onto the resolved group");
    let end = GroupHom::zero(&kko_minus1, &FgAbGroup::trivial());
    let out_of_end = GroupHom::zero(&FgAbGroup::trivial(), &FgAbGroup::trivial());

    let trivial = FgAbGroup::trivial();
    let mut les = ExactSequenceReport::default();
    let checks = [
        ("KO_1", &z2, format!("x{q} from KO_1"), "to KKO_0(Cq,R)", is_exact_at(&mul_z2, &into_kko0)),
        ("KKO_0(Cq,R)", &kko_0, "from KO_1".to_string(), "to KO_0", is_exact_at(&into_kko0, &kko0_to_z)),
        ("KO_0", &z, "from KKO_0(Cq,R)".to_string(), "x q to KO_0", is_exact_at(&kko0_to_z, &mul_z)),
        ("KO_0", &z, format!("x{q} from KO_0"), "to KKO_-1(Cq,R)", is_exact_at(&mul_z, &into_kkom1)),
        ("KKO_-1(Cq,R)", &kko_minus1, "from KO_0".to_string(), "to 0", is_exact_at(&into_kkom1, &end)),
        ("KO_-1", &trivial, "from KKO_-1(Cq,R)".to_string(), "", is_exact_at(&end, &out_of_end)),
    ];
    for (label, group, incoming, outgoing, exact) in checks {
        les.nodes.push(SequenceNode {
            label: label.to_string(),
            group: group.to_string(),
            incoming,
            outgoing: outgoing.to_string(),
        });
        les.exact_at.push(exact);
        if !exact {
            les.witnesses.push(format!("exactness fails at {label}"));
        }
    }
    Ok(CqRealSequence {
        modulus: q,
        kko_0,
        kko_minus1,
        les,
    })
}

/// Exponent bound for the self-pairing of a multiplication cone over the
/// reals: the derived layer is the 2-torsion tensor, the hom layer the
/// torsion product, and every admissible middle group obeys the stated
/// annihilator.
#[derive(Clone, Debug)]
pub struct CqSelfBound {
    pub modulus: u64,
    pub problem: ExtensionProblem,
    pub exponent_bound: BigUint,
    pub exponent_bound_holds: bool,
    pub conclusion: String,
}

pub fn kko_cq_cq_bound(q: u64, max_order: u64) -> Result<CqSelfBound> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "cone modulus must be at least 2, got {q}"
        )));
    }
    let zq = Atom::Cyclic(BigUint::from(q));
    let z2 = Atom::Cyclic(BigUint::from(2u32));
    let sub = atom_bifunctor(BifunctorKind::Tensor, &z2, &zq)?
        .as_fg()
        .expect("finite tensor value");
    let quot = atom_bifunctor(BifunctorKind::Tor, &zq, &zq)?
        .as_fg()
        .expect("finite torsion product");
    let policy = if q % 2 == 0 {
        ResolutionPolicy::Enumerate
    } else {
        ResolutionPolicy::Split
    };
    let problem = resolve_extension(&ExtensionProblem::new(0, sub, quot), policy, max_order)?;
    let exponent_bound = BigUint::from(if q % 2 == 0 { 2 * q } else { q });
    let exponent_bound_holds = problem
        .candidates
        .iter()
        .all(|c| exponent_bound.is_multiple_of(&c.group.torsion_exponent()));
    let conclusion = format!(
        "annihilated by {} ({} modulus)",
        exponent_bound,
        if q % 2 == 0 { "even" } else { "odd" }
    );
    Ok(CqSelfBound {
        modulus: q,
        problem,
        exponent_bound,
        exponent_bound_holds,
        conclusion,
    })
}

/// The divisible-coefficient computations: the rational object pairs with
/// itself to the rationals, pairs trivially with the point, and the
/// divisible torsion object's self-pairing stays honestly out of reach.
#[derive(Debug)]
pub struct DivisibleReport {
    pub self_pairing: ExtModule,
    pub against_point: ExtModule,
    pub against_point_rationalised: ExtModule,
    pub torsion_tensor: ExtModule,
    pub divisible_self_pairing: Result<ExtModule>,
}

pub fn dq_examples(max_order: u64) -> Result<DivisibleReport> {
    let dq = divisible_rational();
    let point = point_complex();
    let resolved = |e: UctEntry| -> Result<ExtModule> {
        e.resolved
            .ok_or_else(|| Error::Undetermined("degree-0 pairing did not resolve".into()))
    };
    let self_pairing = resolved(uct_kk_at(&dq, &dq, 0, max_order)?)?;
    let against_point = resolved(uct_kk_at(&dq, &point, 0, max_order)?)?;
    let against_point_rationalised = ext_bifunctor(
        BifunctorKind::Tensor,
        &against_point,
        &ExtModule::rationals(),
    )?;
    let torsion_tensor = ext_bifunctor(
        BifunctorKind::Tensor,
        &ExtModule::rationals_mod_z(),
        &ExtModule::rationals(),
    )?;
    let dqz = divisible_torsion();
    let divisible_self_pairing = uct_kk_at(&dqz, &dqz, 0, max_order).and_then(resolved);
    Ok(DivisibleReport {
        self_pairing,
        against_point,
        against_point_rationalised,
        torsion_tensor,
        divisible_self_pairing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{induced_map, theta_map, FreeComplex};
    use crate::fgab::IntMatrix;

    fn cyclic(n: u64) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(0, &[BigUint::from(n)])
    }

    #[test]
    fn fixtures_resolve_by_name() {
        assert_eq!(fixture("point-complex").unwrap(), point_complex());
        assert_eq!(fixture("point-real").unwrap(), point_real());
        assert_eq!(fixture("Cq(6)").unwrap().k_groups().fg_at(0).unwrap(), cyclic(6));
        assert_eq!(fixture("DQ").unwrap(), divisible_rational());
        assert_eq!(fixture("DQZ").unwrap(), divisible_torsion());
        assert!(fixture("Cq(1)").is_err());
        assert!(fixture("mystery").is_err());
    }

    #[test]
    fn point_pairs_to_the_integers() {
        let pt = point_complex();
        let r = uct_kk(&pt, &pt, 64).unwrap();
        assert_eq!(r.entries[0].resolved, Some(ExtModule::from_fg(&FgAbGroup::free(1))));
        assert!(r.entries[1].resolved.as_ref().unwrap().is_zero());
    }

    #[test]
    fn cone_self_pairing_is_cyclic() {
        for q in 2..30 {
            let cq = cone_of_multiplication(q).unwrap();
            let r = uct_kk(&cq, &cq, 4096).unwrap();
            let resolved = r.entries[0].resolved.clone().unwrap().as_fg().unwrap();
            assert_eq!(resolved, cyclic(q), "degree 0 self-pairing at q={q}");
            assert_eq!(resolved.torsion_exponent(), BigUint::from(q));
        }
    }

    #[test]
    fn mixed_flavors_are_rejected() {
        assert!(uct_kk(&point_complex(), &point_real(), 64).is_err());
    }

    #[test]
    fn complex_coefficients_split() {
        let co = coefficient_object(&point_complex(), 12, 4096).unwrap();
        let object = co.object.unwrap();
        assert_eq!(object.k_groups().fg_at(0).unwrap(), cyclic(12));
        assert!(object.k_groups().fg_at(1).unwrap().is_trivial());
    }

    #[test]
    fn real_mod_two_table_has_one_ambiguous_degree() {
        let co = coefficient_object(&point_real(), 2, 4096).unwrap();
        assert!(co.object.is_none());
        let z2 = cyclic(2);
        let expect_resolved = [
            (0, Some(z2.clone())),
            (1, Some(z2.clone())),
            (2, None),
            (3, Some(z2.clone())),
            (4, Some(z2.clone())),
            (5, Some(FgAbGroup::trivial())),
            (6, Some(FgAbGroup::trivial())),
            (7, Some(FgAbGroup::trivial())),
        ];
        for (n, expected) in expect_resolved {
            assert_eq!(co.problems[n as usize].resolved, expected, "degree {n}");
        }
        let ambiguous = &co.problems[2];
        let names: Vec<String> = ambiguous
            .candidates
            .iter()
            .map(|c| c.group.to_string())
            .collect();
        assert_eq!(names, vec!["Z/2 + Z/2", "Z/4"]);
    }

    #[test]
    fn invertible_modulus_kills_a_finite_theory() {
        let odd = KTheoryObject::new(
            "odd-torsion",
            GradedGroup::periodic_fg(2, vec![cyclic(9), cyclic(3)]).unwrap(),
            Flavor::Complex,
        )
        .unwrap();
        let co = coefficient_object(&odd, 2, 64).unwrap();
        let object = co.object.unwrap();
        assert!(object.k_groups().fg_at(0).unwrap().is_trivial());
        assert!(object.k_groups().fg_at(1).unwrap().is_trivial());
    }

    #[test]
    fn candidate_exponents_divide_the_modulus_squared() {
        let theories = [
            point_real(),
            KTheoryObject::new(
                "mixed",
                GradedGroup::periodic_fg(
                    8,
                    vec![
                        FgAbGroup::from_cyclic_orders(1, &[BigUint::from(4u32)]),
                        cyclic(2),
                        FgAbGroup::free(2),
                        cyclic(8),
                        FgAbGroup::trivial(),
                        cyclic(6),
                        cyclic(2),
                        FgAbGroup::trivial(),
                    ],
                )
                .unwrap(),
                Flavor::Real,
            )
            .unwrap(),
        ];
        for theory in &theories {
            for q in [2u64, 3, 4, 6] {
                let co = coefficient_object(theory, q, 1 << 20).unwrap();
                let bound = BigUint::from(q * q);
                for p in &co.problems {
                    for c in &p.candidates {
                        assert!(
                            bound.is_multiple_of(&c.group.torsion_exponent()),
                            "{} mod {q} degree {}",
                            theory.name(),
                            p.degree
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn real_cone_sequence_even_and_odd() {
        for (q, want0) in [(2u64, cyclic(2)), (6, cyclic(2)), (3, FgAbGroup::trivial())] {
            let r = kko_cq_r(q).unwrap();
            assert_eq!(r.kko_0, want0, "q={q}");
            assert_eq!(r.kko_minus1, cyclic(q), "q={q}");
            assert!(r.les.all_exact(), "q={q}: {:?}", r.les.witnesses);
        }
        let r = kko_cq_r(2).unwrap();
        assert_eq!(r.les.nodes.len(), 6);
    }

    #[test]
    fn cone_self_bound_even_and_odd() {
        let r = kko_cq_cq_bound(2, 4096).unwrap();
        let names: Vec<String> = r.problem.candidates.iter().map(|c| c.group.to_string()).collect();
        assert_eq!(names, vec!["Z/2 + Z/2", "Z/4"]);
        assert_eq!(r.exponent_bound, BigUint::from(4u32));
        assert!(r.exponent_bound_holds);

        let r = kko_cq_cq_bound(6, 4096).unwrap();
        let names: Vec<String> = r.problem.candidates.iter().map(|c| c.group.to_string()).collect();
        assert_eq!(names, vec!["Z/2 + Z/6", "Z/12"]);
        assert_eq!(r.exponent_bound, BigUint::from(12u32));
        assert!(r.exponent_bound_holds);

        let r = kko_cq_cq_bound(3, 4096).unwrap();
        assert_eq!(r.problem.resolved, Some(cyclic(3)));
        assert_eq!(r.exponent_bound, BigUint::from(3u32));
        assert!(r.exponent_bound_holds);
    }

    #[test]
    fn divisible_examples() {
        let r = dq_examples(4096).unwrap();
        assert_eq!(r.self_pairing, ExtModule::rationals());
        assert!(r.against_point.is_zero());
        assert!(r.against_point_rationalised.is_zero());
        assert!(r.torsion_tensor.is_zero());
        assert!(matches!(
            r.divisible_self_pairing,
            Err(Error::NotRepresentable { .. })
        ));
    }

    #[test]
    fn coefficient_tower_matches_the_cone_comparison_maps() {
        let point_cx = FreeComplex::concentrated(0, 1);
        for (q, p) in [(2u64, 4u64), (2, 8), (3, 6), (4, 12), (2, 6)] {
            let kq = coefficient_object(&point_complex(), q, 4096)
                .unwrap()
                .object
                .unwrap();
            let kp = coefficient_object(&point_complex(), p, 4096)
                .unwrap()
                .object
                .unwrap();
            let theta = theta_map(&point_cx, q, p).unwrap();
            let induced = induced_map(&theta, 0);
            assert_eq!(induced.domain(), &kq.k_groups().fg_at(0).unwrap());
            assert_eq!(induced.codomain(), &kp.k_groups().fg_at(0).unwrap());
            let formula = GroupHom::new(
                kq.k_groups().fg_at(0).unwrap(),
                kp.k_groups().fg_at(0).unwrap(),
                IntMatrix::from_rows_i64(&[vec![(p / q) as i64]], 1),
            )
            .unwrap();
            assert_eq!(induced, formula, "tower map at {q} | {p}");
        }
    }
}
