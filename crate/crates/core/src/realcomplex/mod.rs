//! The comparison long exact sequence between an eight-periodic real theory
//! and its two-periodic complexification, plus the coefficient splittings
//! that become available once 2 is invertible.

use crate::coefrings::{Atom, ExtModule, PrimeSet};
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, GroupHom, IntMatrix};
use crate::graded::{
    coefficient_problem, localize_theory, torsion_theory, ExactSequenceReport, GradedGroup,
    Grading,
};
use num_bigint::BigInt;

const REAL_PERIOD: i64 = 8;

/// A real theory, its complexification, and the three comparison maps,
/// indexed by the real degree `m` in `0..8`: `chi[m]` raises degree by one,
/// `c[m]` passes to the complex theory, `delta[m]` drops back two degrees.
#[derive(Clone, Debug)]
pub struct RCPair {
    real_theory: GradedGroup,
    complex_theory: GradedGroup,
    chi: Vec<GroupHom>,
    c: Vec<GroupHom>,
    delta: Vec<GroupHom>,
}

impl RCPair {
    pub fn new(
        real_theory: GradedGroup,
        complex_theory: GradedGroup,
        chi: Vec<GroupHom>,
        c: Vec<GroupHom>,
        delta: Vec<GroupHom>,
    ) -> Result<Self> {
        if real_theory.grading() != Grading::Periodic(8) || !real_theory.is_fg_valued() {
            return Err(Error::InvalidArgument(
                "real theory must be eight-periodic with finitely generated entries".into(),
            ));
        }
        if complex_theory.grading() != Grading::Periodic(2) || !complex_theory.is_fg_valued() {
            return Err(Error::InvalidArgument(
                "complex theory must be two-periodic with finitely generated entries".into(),
            ));
        }
        for (name, family) in [("chi", &chi), ("c", &c), ("delta", &delta)] {
            if family.len() != REAL_PERIOD as usize {
                return Err(Error::InvalidArgument(format!(
                    "{name} needs one map per degree 0..8, got {}",
                    family.len()
                )));
            }
        }
        for m in 0..REAL_PERIOD {
            let ko_m = real_theory.fg_at(m)?;
            let chi_m = &chi[m as usize];
            if chi_m.domain() != &ko_m || chi_m.codomain() != &real_theory.fg_at(m + 1)? {
                return Err(Error::IllFormedHom(format!(
                    "chi[{m}] must go from degree {m} to degree {}",
                    (m + 1).rem_euclid(REAL_PERIOD)
                )));
            }
            let doubled = GroupHom::new(
                chi_m.domain().clone(),
                chi_m.codomain().clone(),
                chi_m.matrix().scaled(&BigInt::from(2)),
            )
            .expect("doubling a valid map stays valid");
            if doubled != GroupHom::zero(chi_m.domain(), chi_m.codomain()) {
                return Err(Error::IllFormedHom(format!(
                    "chi[{m}] is not two-torsion"
                )));
            }
            let c_m = &c[m as usize];
            if c_m.domain() != &ko_m || c_m.codomain() != &complex_theory.fg_at(m)? {
                return Err(Error::IllFormedHom(format!(
                    "c[{m}] must go from real degree {m} to complex degree {}",
                    m.rem_euclid(2)
                )));
            }
            let delta_m = &delta[m as usize];
            if delta_m.domain() != &complex_theory.fg_at(m)?
                || delta_m.codomain() != &real_theory.fg_at(m - 2)?
            {
                return Err(Error::IllFormedHom(format!(
                    "delta[{m}] must go from complex degree {} to real degree {}",
                    m.rem_euclid(2),
                    (m - 2).rem_euclid(REAL_PERIOD)
                )));
            }
        }
        Ok(RCPair {
            real_theory,
            complex_theory,
            chi,
            c,
            delta,
        })
    }

    pub fn real_theory(&self) -> &GradedGroup {
        &self.real_theory
    }

    pub fn complex_theory(&self) -> &GradedGroup {
        &self.complex_theory
    }

    pub fn chi_at(&self, m: i64) -> &GroupHom {
        &self.chi[m.rem_euclid(REAL_PERIOD) as usize]
    }

    pub fn c_at(&self, m: i64) -> &GroupHom {
        &self.c[m.rem_euclid(REAL_PERIOD) as usize]
    }

    pub fn delta_at(&self, m: i64) -> &GroupHom {
        &self.delta[m.rem_euclid(REAL_PERIOD) as usize]
    }

    /// The composite dropping two degrees and coming back through the
    /// periodic identification; the splitting argument needs it to be
    /// doubling.
    pub fn doubling_composite(&self, m: i64) -> GroupHom {
        let c_m = self.c_at(m);
        let delta_next = self.delta_at(m + 2);
        GroupHom::new(
            c_m.domain().clone(),
            delta_next.codomain().clone(),
            delta_next.matrix() * c_m.matrix(),
        )
        .expect("composite of valid maps is valid")
    }
}

fn constant_hom(dom: &FgAbGroup, cod: &FgAbGroup, k: i64) -> GroupHom {
    let matrix = IntMatrix::from_fn(cod.ngens(), dom.ngens(), |_, _| BigInt::from(k));
    GroupHom::new(dom.clone(), cod.clone(), matrix).expect("fixture map entry is valid")
}

/// The standard pair over the point: the classical eight-periodic real
/// table against the two-periodic complex one, with the comparison maps the
/// tables force through exactness.
pub fn point_rc() -> RCPair {
    let real = GradedGroup::periodic_fg(8, crate::ktheory::ko_point_table())
        .expect("eight point entries");
    let complex = GradedGroup::periodic_fg(2, vec![FgAbGroup::free(1), FgAbGroup::trivial()])
        .expect("two point entries");
    let ko = |m: i64| real.fg_at(m).expect("table entry");
    let k = |m: i64| complex.fg_at(m).expect("table entry");

    let chi_scales = [1, 1, 0, 0, 0, 0, 0, 0];
    let c_scales = [1, 0, 0, 0, 2, 0, 0, 0];
    let delta_scales = [0, 0, 2, 0, 1, 0, 1, 0];
    let chi = (0..8).map(|m| constant_hom(&ko(m), &ko(m + 1), chi_scales[m as usize])).collect();
    let c = (0..8).map(|m| constant_hom(&ko(m), &k(m), c_scales[m as usize])).collect();
    let delta = (0..8).map(|m| constant_hom(&k(m), &ko(m - 2), delta_scales[m as usize])).collect();
    RCPair::new(real, complex, chi, c, delta).expect("point tables form a valid pair")
}

/// A pair of everywhere-trivial theories.
pub fn zero_rc() -> RCPair {
    let real = GradedGroup::periodic_fg(8, vec![FgAbGroup::trivial(); 8]).expect("eight entries");
    let complex = GradedGroup::periodic_fg(2, vec![FgAbGroup::trivial(); 2]).expect("two entries");
    let zero = GroupHom::zero(&FgAbGroup::trivial(), &FgAbGroup::trivial());
    RCPair::new(
        real,
        complex,
        vec![zero.clone(); 8],
        vec![zero.clone(); 8],
        vec![zero; 8],
    )
    .expect("trivial pair is valid")
}

/// Checks the full comparison cycle: twenty-four nodes, three per real
/// degree, wrapping around the eight-periodic table.
pub fn eta_les_check(p: &RCPair) -> ExactSequenceReport {
    let mut labels = Vec::new();
    let mut groups = Vec::new();
    let mut map_labels = Vec::new();
    let mut maps = Vec::new();
    for n in (0..REAL_PERIOD).rev() {
        labels.push(format!("KKO_{n}"));
        groups.push(p.real_theory.fg_at(n).expect("validated entry"));
        map_labels.push("c".into());
        maps.push(p.c_at(n).clone());
        labels.push(format!("KK_{}", n.rem_euclid(2)));
        groups.push(p.complex_theory.fg_at(n).expect("validated entry"));
        map_labels.push("delta".into());
        maps.push(p.delta_at(n).clone());
        labels.push(format!("KKO_{}", (n - 2).rem_euclid(REAL_PERIOD)));
        groups.push(p.real_theory.fg_at(n - 2).expect("validated entry"));
        map_labels.push("chi".into());
        maps.push(p.chi_at(n - 2).clone());
    }
    ExactSequenceReport::from_chain(labels, groups, map_labels, maps, true)
}

/// The coefficient rings for which the comparison sequence splits.
#[derive(Clone, Debug)]
pub enum SplitCoefficient {
    /// `S^-1 Z`; the set must invert 2
    Localisation(PrimeSet),
    /// `Z/s` for odd `s`
    FiniteModulus(u64),
    /// `S^-1 Z / Z` for odd support
    Torsion(PrimeSet),
}

impl SplitCoefficient {
    fn validate(&self) -> Result<()> {
        match self {
            SplitCoefficient::Localisation(s) => {
                if !s.contains(2) {
                    return Err(Error::InvalidArgument(
                        "localisation coefficients must invert 2".into(),
                    ));
                }
            }
            SplitCoefficient::FiniteModulus(s) => {
                if *s < 2 || *s % 2 == 0 {
                    return Err(Error::InvalidArgument(format!(
                        "finite coefficients need an odd modulus at least 3, got {s}"
                    )));
                }
            }
            SplitCoefficient::Torsion(s) => {
                if s.contains(2) {
                    return Err(Error::InvalidArgument(
                        "torsion coefficients need odd support".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn describe(&self) -> String {
        match self {
            SplitCoefficient::Localisation(s) => Atom::Free(s.clone()).to_string(),
            SplitCoefficient::FiniteModulus(s) => format!("Z/{s}"),
            SplitCoefficient::Torsion(s) => Atom::Pruefer(s.clone()).to_string(),
        }
    }

    /// The coefficient construction applied to one theory, degree by degree
    /// over representatives `0..8`.
    fn apply(&self, theory: &GradedGroup) -> Result<Vec<ExtModule>> {
        match self {
            SplitCoefficient::Localisation(s) => {
                let localized = localize_theory(theory, s)?;
                (0..REAL_PERIOD).map(|n| Ok(localized.value_at(n).as_ext())).collect()
            }
            SplitCoefficient::FiniteModulus(s) => (0..REAL_PERIOD)
                .map(|n| {
                    let problem = coefficient_problem(theory, *s, n)?;
                    Ok(ExtModule::from_fg(&problem.split_candidate().group))
                })
                .collect(),
            SplitCoefficient::Torsion(s) => {
                let torsion = torsion_theory(theory, s)?;
                (0..REAL_PERIOD).map(|n| Ok(torsion.value_at(n).as_ext())).collect()
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplitDegree {
    pub degree: i64,
    pub left: ExtModule,
    pub right: ExtModule,
    pub iso: bool,
}

#[derive(Clone, Debug)]
pub struct SplittingReport {
    pub coefficient: String,
    /// constructor invariant, re-asserted: doubling every chi kills it
    pub chi_two_torsion: bool,
    /// degree `m` entry: the drop-two round trip on real degree `m` equals
    /// multiplication by 2
    pub doubling_composites: Vec<(i64, bool)>,
    pub per_degree: Vec<SplitDegree>,
    pub all_iso: bool,
}

/// Compares the coefficient complex theory against the two-degree sum of
/// coefficient real theories, and re-checks the two ingredients that make
/// the splitting work.
pub fn splitting_check(p: &RCPair, h: &SplitCoefficient) -> Result<SplittingReport> {
    h.validate()?;
    let left_theory = h.apply(&p.complex_theory)?;
    let right_theory = h.apply(&p.real_theory)?;

    let chi_two_torsion = (0..REAL_PERIOD).all(|m| {
        let chi = p.chi_at(m);
        let doubled = GroupHom::new(
            chi.domain().clone(),
            chi.codomain().clone(),
            chi.matrix().scaled(&BigInt::from(2)),
        )
        .expect("doubling a valid map stays valid");
        doubled == GroupHom::zero(chi.domain(), chi.codomain())
    });
    let doubling_composites = (0..REAL_PERIOD)
        .map(|m| {
            let composite = p.doubling_composite(m);
            let doubling = GroupHom::mul_by(composite.domain(), &BigInt::from(2));
            (m, composite == doubling)
        })
        .collect();

    let mut per_degree = Vec::new();
    for n in 0..REAL_PERIOD {
        let left = left_theory[n as usize].clone();
        let right = right_theory[n as usize]
            .direct_sum(&right_theory[(n - 2).rem_euclid(REAL_PERIOD) as usize])?;
        let iso = left == right;
        per_degree.push(SplitDegree {
            degree: n,
            left,
            right,
            iso,
        });
    }
    let all_iso = per_degree.iter().all(|d| d.iso);
    Ok(SplittingReport {
        coefficient: h.describe(),
        chi_two_torsion,
        doubling_composites,
        per_degree,
        all_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_integer::Integer;

    #[test]
    fn point_cycle_is_exact_at_all_24_nodes() {
        let report = eta_les_check(&point_rc());
        assert_eq!(report.nodes.len(), 24);
        assert!(report.all_exact(), "{:?}", report.witnesses);
    }

    #[test]
    fn zero_pair_is_exact() {
        let report = eta_les_check(&zero_rc());
        assert!(report.all_exact());
    }

    #[test]
    fn corrupted_complexification_is_caught_by_name() {
        let good = point_rc();
        let mut c = good.c.clone();
        c[0] = constant_hom(c[0].domain(), c[0].codomain(), 2);
        let bad = RCPair::new(
            good.real_theory.clone(),
            good.complex_theory.clone(),
            good.chi.clone(),
            c,
            good.delta.clone(),
        )
        .unwrap();
        let report = eta_les_check(&bad);
        assert!(!report.all_exact());
        let failing: Vec<&str> = report
            .nodes
            .iter()
            .zip(&report.exact_at)
            .filter(|(_, &ok)| !ok)
            .map(|(node, _)| node.label.as_str())
            .collect();
        assert_eq!(failing, vec!["KK_0"]);
        assert!(report.witnesses.iter().any(|w| w.contains("KK_0")));
    }

    #[test]
    fn point_splits_after_inverting_two() {
        let h = SplitCoefficient::Localisation(PrimeSet::single(2).unwrap());
        let report = splitting_check(&point_rc(), &h).unwrap();
        assert!(report.chi_two_torsion);
        assert!(report.doubling_composites.iter().all(|&(_, ok)| ok));
        assert!(report.all_iso, "{:?}", report.per_degree);
        let rendered: Vec<String> = report
            .per_degree
            .iter()
            .map(|d| d.left.to_string())
            .collect();
        assert_eq!(
            rendered,
            vec!["Z[1/2]", "0", "Z[1/2]", "0", "Z[1/2]", "0", "Z[1/2]", "0"]
        );
    }

    #[test]
    fn point_splits_with_odd_moduli() {
        for s in [3u64, 5, 7, 9] {
            let report =
                splitting_check(&point_rc(), &SplitCoefficient::FiniteModulus(s)).unwrap();
            assert!(report.all_iso, "s={s}: {:?}", report.per_degree);
            let bound = BigUint::from(s);
            for d in &report.per_degree {
                let left = d.left.as_fg().expect("finite coefficients stay f.g.");
                assert!(
                    bound.is_multiple_of(&left.torsion_exponent()),
                    "s={s} degree {}",
                    d.degree
                );
                assert_eq!(
                    !left.is_trivial(),
                    d.degree % 2 == 0,
                    "support pattern at s={s}"
                );
            }
        }
    }

    #[test]
    fn point_splits_with_odd_torsion_coefficients() {
        let h = SplitCoefficient::Torsion(PrimeSet::single(3).unwrap());
        let report = splitting_check(&point_rc(), &h).unwrap();
        assert!(report.all_iso, "{:?}", report.per_degree);
        for d in &report.per_degree {
            assert_eq!(
                !d.left.is_zero(),
                d.degree % 2 == 0,
                "divisible layer sits where the rank was"
            );
        }
    }

    #[test]
    fn disallowed_coefficients_are_rejected() {
        let p = point_rc();
        let no_two = SplitCoefficient::Localisation(PrimeSet::single(3).unwrap());
        assert!(splitting_check(&p, &no_two).is_err());
        assert!(splitting_check(&p, &SplitCoefficient::FiniteModulus(2)).is_err());
        assert!(splitting_check(&p, &SplitCoefficient::FiniteModulus(4)).is_err());
        let with_two = SplitCoefficient::Torsion(PrimeSet::finite(&[2, 3]).unwrap());
        assert!(splitting_check(&p, &with_two).is_err());
    }

    #[test]
    fn sign_flip_breaks_the_doubling_composite_but_not_exactness() {
        let good = point_rc();
        let mut delta = good.delta.clone();
        delta[6] = constant_hom(delta[6].domain(), delta[6].codomain(), -1);
        let flipped = RCPair::new(
            good.real_theory.clone(),
            good.complex_theory.clone(),
            good.chi.clone(),
            good.c.clone(),
            delta,
        )
        .unwrap();
        assert!(eta_les_check(&flipped).all_exact());
        let h = SplitCoefficient::Localisation(PrimeSet::single(2).unwrap());
        let report = splitting_check(&flipped, &h).unwrap();
        let at_four = report
            .doubling_composites
            .iter()
            .find(|(m, _)| *m == 4)
            .unwrap();
        assert!(!at_four.1, "flipped sign must break the round trip");
        assert!(report.all_iso, "group comparison is sign-blind");
    }

    #[test]
    fn mismatched_maps_are_rejected() {
        let good = point_rc();
        let mut chi = good.chi.clone();
        chi[0] = GroupHom::zero(&FgAbGroup::free(2), good.chi[0].codomain());
        assert!(RCPair::new(
            good.real_theory.clone(),
            good.complex_theory.clone(),
            chi,
            good.c.clone(),
            good.delta.clone(),
        )
        .is_err());

        let mut chi = good.chi.clone();
        chi[4] = constant_hom(good.chi[4].domain(), good.chi[4].codomain(), 0);
        let mut c = good.c.clone();
        c[4] = constant_hom(c[4].domain(), c[4].codomain(), 1);
        assert!(RCPair::new(
            good.real_theory.clone(),
            good.complex_theory.clone(),
            chi,
            c,
            good.delta.clone(),
        )
        .is_ok(), "changing a unit keeps the shape valid");
    }

    #[test]
    fn non_two_torsion_chi_is_rejected() {
        let real = GradedGroup::periodic_fg(
            8,
            vec![
                FgAbGroup::from_cyclic_orders(0, &[BigUint::from(4u32)]),
                FgAbGroup::from_cyclic_orders(0, &[BigUint::from(4u32)]),
                FgAbGroup::trivial(),
                FgAbGroup::trivial(),
                FgAbGroup::trivial(),
                FgAbGroup::trivial(),
                FgAbGroup::trivial(),
                FgAbGroup::trivial(),
            ],
        )
        .unwrap();
        let complex =
            GradedGroup::periodic_fg(2, vec![FgAbGroup::trivial(); 2]).unwrap();
        let chi: Vec<GroupHom> = (0..8)
            .map(|m| {
                constant_hom(
                    &real.fg_at(m).unwrap(),
                    &real.fg_at(m + 1).unwrap(),
                    if m == 0 { 1 } else { 0 },
                )
            })
            .collect();
        let c: Vec<GroupHom> = (0..8)
            .map(|m| {
                GroupHom::zero(&real.fg_at(m).unwrap(), &complex.fg_at(m).unwrap())
            })
            .collect();
        let delta: Vec<GroupHom> = (0..8)
            .map(|m| {
                GroupHom::zero(&complex.fg_at(m).unwrap(), &real.fg_at(m - 2).unwrap())
            })
            .collect();
        let err = RCPair::new(real, complex, chi, c, delta).unwrap_err();
        assert!(err.to_string().contains("two-torsion"), "{err}");
    }
}
