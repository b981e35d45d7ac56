//! Graded homology-theory values and the coefficient constructions that
//! compare a theory with its localisation: degreewise localisation, torsion
//! coefficients, mod-s coefficients, the long exact sequences tying them
//! together, and the isomorphism detectors built on top.

mod detector;
mod extension;
mod les;

pub use detector::{iso_detector, DegreeDetection, DetectionReport};
pub use extension::{
    finite_coefficients, resolve_extension, ExtensionCandidate, ExtensionProblem,
    ResolutionPolicy,
};
pub(crate) use extension::coefficient_problem;
pub use les::{assemble_loc_coloc_les, coefficient_les, ExactSequenceReport, SequenceNode};

use crate::coefrings::{localize_group, tor_coefficients, ExtModule, PrimeSet};
use crate::error::{Error, Result};
use crate::fgab::{map_subquotients, FgAbGroup, GroupHom};
use num_bigint::{BigInt, BigUint};
use std::collections::BTreeMap;
use std::fmt;

/// Degree structure of a graded group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    /// Degrees repeat with the given period; representatives are 0..period.
    Periodic(u32),
    /// Finitely many nonzero degrees at explicit integer positions.
    Bounded,
}

/// A single graded entry: a finitely generated group, or one of the
/// localised closed forms.
#[derive(Clone, PartialEq, Eq)]
pub enum GroupValue {
    Fg(FgAbGroup),
    Ext(ExtModule),
}

impl GroupValue {
    pub fn zero() -> Self {
        GroupValue::Fg(FgAbGroup::trivial())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupValue::Fg(g) => g.is_trivial(),
            GroupValue::Ext(e) => e.is_zero(),
        }
    }

    pub fn as_fg(&self) -> Option<FgAbGroup> {
        match self {
            GroupValue::Fg(g) => Some(g.clone()),
            GroupValue::Ext(e) => e.as_fg(),
        }
    }

    pub fn as_ext(&self) -> ExtModule {
        match self {
            GroupValue::Fg(g) => ExtModule::from_fg(g),
            GroupValue::Ext(e) => e.clone(),
        }
    }

    /// Kernel of multiplication by `s`, finite for every stored value.
    pub fn mul_kernel(&self, s: &BigUint) -> FgAbGroup {
        match self {
            GroupValue::Fg(g) => {
                let hom = GroupHom::mul_by(g, &BigInt::from(s.clone()));
                map_subquotients(&hom).kernel
            }
            GroupValue::Ext(e) => e.mul_kernel(s),
        }
    }

    /// Cokernel of multiplication by `s`, finite for every stored value.
    pub fn mul_cokernel(&self, s: &BigUint) -> FgAbGroup {
        match self {
            GroupValue::Fg(g) => {
                let hom = GroupHom::mul_by(g, &BigInt::from(s.clone()));
                map_subquotients(&hom).cokernel
            }
            GroupValue::Ext(e) => e.mul_cokernel(s),
        }
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupValue::Fg(g) => fmt::Display::fmt(g, f),
            GroupValue::Ext(e) => fmt::Display::fmt(e, f),
        }
    }
}

impl fmt::Debug for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Graded group, periodic or supported on finitely many degrees.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedGroup {
    grading: Grading,
    entries: BTreeMap<i64, GroupValue>,
}

impl GradedGroup {
    /// One value per residue class, listed for degrees 0..period.
    pub fn periodic(period: u32, values: Vec<GroupValue>) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        if values.len() != period as usize {
            return Err(Error::InvalidArgument(format!(
                "period {} needs exactly {} entries, got {}",
                period,
                period,
                values.len()
            )));
        }
        let entries = (0i64..).zip(values).collect();
        Ok(GradedGroup {
            grading: Grading::Periodic(period),
            entries,
        })
    }

    pub fn periodic_fg(period: u32, groups: Vec<FgAbGroup>) -> Result<Self> {
        Self::periodic(period, groups.into_iter().map(GroupValue::Fg).collect())
    }

    pub fn bounded(entries: BTreeMap<i64, GroupValue>) -> Self {
        let entries = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        GradedGroup {
            grading: Grading::Bounded,
            entries,
        }
    }

    pub fn bounded_fg(entries: BTreeMap<i64, FgAbGroup>) -> Self {
        Self::bounded(
            entries
                .into_iter()
                .map(|(n, g)| (n, GroupValue::Fg(g)))
                .collect(),
        )
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// The representative a degree reduces to.
    pub fn reduce(&self, n: i64) -> i64 {
        match self.grading {
            Grading::Periodic(p) => n.rem_euclid(p as i64),
            Grading::Bounded => n,
        }
    }

    pub fn value_at(&self, n: i64) -> GroupValue {
        self.entries
            .get(&self.reduce(n))
            .cloned()
            .unwrap_or_else(GroupValue::zero)
    }

    pub fn fg_at(&self, n: i64) -> Result<FgAbGroup> {
        self.value_at(n).as_fg().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "degree {} entry is not finitely generated",
                self.reduce(n)
            ))
        })
    }

    pub fn is_fg_valued(&self) -> bool {
        self.entries.values().all(|v| v.as_fg().is_some())
    }

    /// Representative degrees: 0..period, or the support.
    pub fn representatives(&self) -> Vec<i64> {
        match self.grading {
            Grading::Periodic(p) => (0..p as i64).collect(),
            Grading::Bounded => self.entries.keys().copied().collect(),
        }
    }

    /// Degrees where either this entry or the one below can contribute to a
    /// degree-n construction pairing F_n with F_{n-1}.
    pub(crate) fn paired_degrees(&self) -> Vec<i64> {
        match self.grading {
            Grading::Periodic(p) => (0..p as i64).collect(),
            Grading::Bounded => {
                let mut degrees: Vec<i64> = self
                    .entries
                    .keys()
                    .flat_map(|&n| [n, n + 1])
                    .collect();
                degrees.sort_unstable();
                degrees.dedup();
                degrees
            }
        }
    }

    fn rebuild(&self, degrees: &[i64], mut value: impl FnMut(i64) -> Result<GroupValue>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for &n in degrees {
            entries.insert(n, value(n)?);
        }
        if let Grading::Bounded = self.grading {
            entries.retain(|_, v| !v.is_zero());
        }
        Ok(GradedGroup {
            grading: self.grading,
            entries,
        })
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.grading {
            Grading::Periodic(p) => {
                let parts: Vec<String> = (0..p as i64)
                    .map(|n| self.value_at(n).to_string())
                    .collect();
                write!(f, "period={}: [{}]", p, parts.join(", "))
            }
            Grading::Bounded => {
                let parts: Vec<String> = self
                    .entries
                    .iter()
                    .map(|(n, v)| format!("{n}: {v}"))
                    .collect();
                write!(f, "bounded: {{{}}}", parts.join(", "))
            }
        }
    }
}

impl fmt::Debug for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Degreewise homomorphism between two finitely generated graded groups
/// with the same grading.
#[derive(Clone)]
pub struct TheoryMap {
    source: GradedGroup,
    target: GradedGroup,
    maps: BTreeMap<i64, GroupHom>,
}

impl TheoryMap {
    pub fn new(
        source: GradedGroup,
        target: GradedGroup,
        maps: BTreeMap<i64, GroupHom>,
    ) -> Result<Self> {
        if source.grading() != target.grading() {
            return Err(Error::InvalidArgument(
                "source and target gradings differ".into(),
            ));
        }
        if !source.is_fg_valued() || !target.is_fg_valued() {
            return Err(Error::InvalidArgument(
                "theory maps act on finitely generated values".into(),
            ));
        }
        let mut reduced: BTreeMap<i64, GroupHom> = BTreeMap::new();
        for (n, hom) in maps {
            let r = source.reduce(n);
            if hom.domain() != &source.fg_at(r)? || hom.codomain() != &target.fg_at(r)? {
                return Err(Error::IllFormedHom(format!(
                    "degree {r} map does not match the graded entries"
                )));
            }
            reduced.insert(r, hom);
        }
        for n in source
            .representatives()
            .into_iter()
            .chain(target.representatives())
        {
            if !reduced.contains_key(&n)
                && !(source.fg_at(n)?.is_trivial() && target.fg_at(n)?.is_trivial())
            {
                return Err(Error::IllFormedHom(format!(
                    "missing map in degree {n} between nonzero entries"
                )));
            }
        }
        Ok(TheoryMap {
            source,
            target,
            maps: reduced,
        })
    }

    pub fn source(&self) -> &GradedGroup {
        &self.source
    }

    pub fn target(&self) -> &GradedGroup {
        &self.target
    }

    pub fn map_at(&self, n: i64) -> GroupHom {
        let r = self.source.reduce(n);
        self.maps.get(&r).cloned().unwrap_or_else(|| {
            GroupHom::zero(
                &self.source.fg_at(r).expect("validated on construction"),
                &self.target.fg_at(r).expect("validated on construction"),
            )
        })
    }

    /// Degrees that carry information: representatives of either side.
    pub fn representatives(&self) -> Vec<i64> {
        let mut degrees = self.source.representatives();
        degrees.extend(self.target.representatives());
        degrees.sort_unstable();
        degrees.dedup();
        degrees
    }
}

/// Degreewise `S^-1 F`.
pub fn localize_theory(f: &GradedGroup, s: &PrimeSet) -> Result<GradedGroup> {
    f.rebuild(&f.representatives(), |n| {
        Ok(GroupValue::Ext(localize_group(&f.fg_at(n)?, s)))
    })
}

/// Degreewise value of the theory with `S^-1 Z / Z` coefficients: the
/// degree-n entry is the extension of the S-torsion of F_{n-1} by a sum of
/// rank(F_n) Pruefer groups. The divisible part is injective, so the
/// extension is returned split; the isomorphism class is canonical, the
/// splitting is not.
pub fn torsion_theory(f: &GradedGroup, s: &PrimeSet) -> Result<GradedGroup> {
    f.rebuild(&f.paired_degrees(), |n| {
        let (tor0, _) = tor_coefficients(&f.fg_at(n)?, s);
        let (_, tor1) = tor_coefficients(&f.fg_at(n - 1)?, s);
        let entry = tor0
            .direct_sum(&ExtModule::from_fg(&tor1))
            .expect("divisible plus finite is always well-formed");
        Ok(GroupValue::Ext(entry))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefrings::colimit_truncation_oracle;

    fn g(rank: usize, factors: &[u64]) -> FgAbGroup {
        let orders: Vec<BigUint> = factors.iter().map(|&n| BigUint::from(n)).collect();
        FgAbGroup::from_cyclic_orders(rank, &orders)
    }

    fn k_point() -> GradedGroup {
        GradedGroup::periodic_fg(2, vec![FgAbGroup::free(1), FgAbGroup::trivial()]).unwrap()
    }

    #[test]
    fn localize_examples() {
        let loc = localize_theory(&k_point(), &PrimeSet::all()).unwrap();
        assert_eq!(loc.value_at(0).to_string(), "Q");
        assert!(loc.value_at(1).is_zero());

        let two = GradedGroup::periodic_fg(2, vec![g(0, &[2]), g(0, &[2])]).unwrap();
        let loc = localize_theory(&two, &PrimeSet::odd()).unwrap();
        assert_eq!(loc.value_at(0).to_string(), "Z/2");
        assert_eq!(loc.value_at(1).to_string(), "Z/2");

        let mixed = GradedGroup::periodic_fg(2, vec![g(1, &[4]), g(0, &[3])]).unwrap();
        let loc = localize_theory(&mixed, &PrimeSet::single(3).unwrap()).unwrap();
        assert_eq!(loc.value_at(0).to_string(), "Z[1/3] + Z/4");
        assert!(loc.value_at(1).is_zero());
    }

    #[test]
    fn torsion_theory_point() {
        let tor = torsion_theory(&k_point(), &PrimeSet::all()).unwrap();
        assert_eq!(tor.value_at(0).to_string(), "Q/Z");
        assert!(tor.value_at(1).is_zero());
    }

    #[test]
    fn torsion_theory_two_torsion_degrees() {
        let f = GradedGroup::periodic_fg(2, vec![g(0, &[12]), g(0, &[9])]).unwrap();
        let s = PrimeSet::single(3).unwrap();
        let tor = torsion_theory(&f, &s).unwrap();
        assert_eq!(tor.value_at(0).to_string(), "Z/9");
        assert_eq!(tor.value_at(1).to_string(), "Z/3");
    }

    #[test]
    fn torsion_theory_of_zero() {
        let f = GradedGroup::periodic_fg(2, vec![FgAbGroup::trivial(), FgAbGroup::trivial()])
            .unwrap();
        let tor = torsion_theory(&f, &PrimeSet::single(2).unwrap()).unwrap();
        assert!(tor.value_at(0).is_zero() && tor.value_at(1).is_zero());
    }

    #[test]
    fn torsion_entries_match_truncation_oracle() {
        // for S the support of s, the kernel of a high power of s recovers
        // the finite layer of the torsion theory
        for (rank, factors, s) in [(0usize, vec![9u64, 27], 3u64), (1, vec![8, 12], 2), (0, vec![6, 36], 6)] {
            let m = g(rank, &factors);
            let set = PrimeSet::finite(&crate::coefrings::factorize(&BigUint::from(s))
                .iter()
                .map(|&(p, _)| p)
                .collect::<Vec<_>>())
            .unwrap();
            let f = GradedGroup::periodic_fg(2, vec![FgAbGroup::trivial(), m.clone()]).unwrap();
            let tor = torsion_theory(&f, &set).unwrap();
            let (stable_kernel, _) = colimit_truncation_oracle(&m, s, 8);
            assert_eq!(tor.value_at(0).as_fg().unwrap(), stable_kernel);
        }
    }

    #[test]
    fn bounded_support_shifts() {
        let mut entries = BTreeMap::new();
        entries.insert(3i64, g(1, &[4]));
        let f = GradedGroup::bounded_fg(entries);
        let s = PrimeSet::single(2).unwrap();
        let tor = torsion_theory(&f, &s).unwrap();
        assert_eq!(tor.value_at(3).to_string(), "Prufer(2)");
        assert_eq!(tor.value_at(4).to_string(), "Z/4");
        assert!(tor.value_at(2).is_zero());
    }

    #[test]
    fn theory_map_validation() {
        let f = k_point();
        let id = GroupHom::identity(&FgAbGroup::free(1));
        let phi = TheoryMap::new(f.clone(), f.clone(), BTreeMap::from([(0, id)]));
        assert!(phi.is_ok());
        assert!(phi.unwrap().map_at(1).is_zero_hom());

        let wrong = GroupHom::identity(&g(0, &[5]));
        assert!(TheoryMap::new(f.clone(), f.clone(), BTreeMap::from([(0, wrong)])).is_err());

        let other = GradedGroup::periodic_fg(8, vec![FgAbGroup::trivial(); 8]).unwrap();
        assert!(TheoryMap::new(f, other, BTreeMap::new()).is_err());
    }

    #[test]
    fn display_matches_literal_grammar() {
        assert_eq!(k_point().to_string(), "period=2: [Z, 0]");
        let mut entries = BTreeMap::new();
        entries.insert(0i64, g(0, &[4]));
        entries.insert(1i64, g(1, &[]));
        let b = GradedGroup::bounded_fg(entries);
        assert_eq!(b.to_string(), "bounded: {0: Z/4, 1: Z}");
    }

    #[test]
    fn group_value_mul_routes_agree() {
        // closed forms on the localised side against honest Smith kernels
        let m = g(2, &[4, 18]);
        let fg = GroupValue::Fg(m.clone());
        let ext = GroupValue::Ext(ExtModule::from_fg(&m));
        for s in [2u32, 3, 6, 12] {
            let s = BigUint::from(s);
            assert_eq!(fg.mul_kernel(&s), ext.mul_kernel(&s));
            assert_eq!(fg.mul_cokernel(&s), ext.mul_cokernel(&s));
        }
    }
}
