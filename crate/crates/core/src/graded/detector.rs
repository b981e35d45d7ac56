use super::TheoryMap;
use crate::coefrings::PrimeSet;
use crate::fgab::{
    cokernel_with_maps, lift_through, map_subquotients, s_torsion_inclusion, FgAbGroup, GroupHom,
};
use num_bigint::BigInt;
use num_traits::One;

/// Detection data for the map in one degree.
#[derive(Clone, Debug)]
pub struct DegreeDetection {
    pub degree: i64,
    /// the map itself is an isomorphism
    pub phi_iso: bool,
    /// the localised map is an isomorphism
    pub loc_iso: bool,
    /// the induced map on the divisible layer is an isomorphism
    pub tor0_iso: bool,
    /// the induced map on S-torsion is an isomorphism
    pub tor1_iso: bool,
    /// mod-q reduction and q-torsion maps are both isomorphisms, per listed prime
    pub mod_prime_iso: Vec<(u64, bool)>,
}

/// Aggregated detection verdicts over all degrees.
#[derive(Clone, Debug)]
pub struct DetectionReport {
    pub per_degree: Vec<DegreeDetection>,
    pub phi_iso: bool,
    pub loc_iso: bool,
    pub tor_iso: bool,
    /// empty when the prime set is cofinite
    pub per_prime: Vec<(u64, bool)>,
}

fn s_torsion_group(g: &FgAbGroup, s: &PrimeSet) -> bool {
    g.rank() == 0 && s.is_s_number(&g.torsion_exponent())
}

/// Whether the map becomes an isomorphism on the divisible layer of the
/// torsion theory: equal ranks and a free block whose determinant carries
/// no prime from S.
fn divisible_layer_iso(f: &GroupHom, s: &PrimeSet) -> bool {
    let ra = f.domain().rank();
    let rb = f.codomain().rank();
    if ra != rb {
        return false;
    }
    if ra == 0 {
        return true;
    }
    let det = f.matrix().submatrix(0..rb, 0..ra).determinant();
    !num_traits::Zero::is_zero(&det) && s.s_part(det.magnitude()).is_one()
}

fn s_torsion_layer_iso(f: &GroupHom, s: &PrimeSet) -> bool {
    let into_domain = s_torsion_inclusion(f.domain(), s);
    let into_codomain = s_torsion_inclusion(f.codomain(), s);
    lift_through(&into_codomain, &f.compose(&into_domain))
        .expect("S-torsion lands in S-torsion")
        .is_iso()
}

/// Both halves of the mod-q comparison: the reduced map A/q -> B/q and the
/// restricted map on q-torsion. Each alone misses a class of failures.
fn mod_prime_comparison(f: &GroupHom, q: u64) -> bool {
    let scale = BigInt::from(q);
    let (dom_red, _, dom_sec) =
        cokernel_with_maps(&GroupHom::mul_by(f.domain(), &scale));
    let (cod_red, cod_proj, _) =
        cokernel_with_maps(&GroupHom::mul_by(f.codomain(), &scale));
    let reduced = GroupHom::new(
        dom_red,
        cod_red,
        &(cod_proj.matrix() * f.matrix()) * &dom_sec,
    )
    .expect("reduction mod q is well defined");

    let dom_ker = map_subquotients(&GroupHom::mul_by(f.domain(), &scale));
    let cod_ker = map_subquotients(&GroupHom::mul_by(f.codomain(), &scale));
    let restricted = lift_through(
        &cod_ker.kernel_inclusion,
        &f.compose(&dom_ker.kernel_inclusion),
    )
    .expect("q-torsion lands in q-torsion");

    reduced.is_iso() && restricted.is_iso()
}

/// Checks, degree by degree, whether the map is an isomorphism, whether its
/// localisation is, whether the two torsion-theory layers are, and (for a
/// finite prime set) whether all mod-q comparisons are. The aggregate
/// verdicts are conjunctions over the degrees.
pub fn iso_detector(phi: &TheoryMap, s: &PrimeSet) -> DetectionReport {
    let primes: Vec<u64> = s.primes().map(<[u64]>::to_vec).unwrap_or_default();
    let mut per_degree = Vec::new();
    for n in phi.representatives() {
        let f = phi.map_at(n);
        let data = map_subquotients(&f);
        per_degree.push(DegreeDetection {
            degree: n,
            phi_iso: data.kernel.is_trivial() && data.cokernel.is_trivial(),
            loc_iso: s_torsion_group(&data.kernel, s) && s_torsion_group(&data.cokernel, s),
            tor0_iso: divisible_layer_iso(&f, s),
            tor1_iso: s_torsion_layer_iso(&f, s),
            mod_prime_iso: primes
                .iter()
                .map(|&q| (q, mod_prime_comparison(&f, q)))
                .collect(),
        });
    }
    let per_prime = primes
        .iter()
        .enumerate()
        .map(|(k, &q)| {
            (
                q,
                per_degree.iter().all(|d| d.mod_prime_iso[k].1),
            )
        })
        .collect();
    DetectionReport {
        phi_iso: per_degree.iter().all(|d| d.phi_iso),
        loc_iso: per_degree.iter().all(|d| d.loc_iso),
        tor_iso: per_degree.iter().all(|d| d.tor0_iso && d.tor1_iso),
        per_prime,
        per_degree,
    }
}
