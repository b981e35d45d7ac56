//! Exact homological algebra over the integers.
//!
//! The crate is organised in layers. `fgab` provides arbitrary-precision
//! integer matrices, Smith normal forms and finitely generated abelian
//! groups together with their homomorphisms. `coefrings` adds prime sets,
//! localised coefficient modules and the bifunctor tables on atoms.
//! `graded` lifts everything to periodic or bounded graded groups and the
//! long exact sequences relating a theory, its localisation and its
//! torsion counterpart. `complexes` is a small triangulated playground of
//! bounded complexes of free modules, and `ktheory` / `realcomplex` put
//! the pieces together for universal-coefficient computations.

pub mod coefrings;
pub mod error;
pub mod fgab;
pub mod complexes;
pub mod graded;
pub mod ktheory;
pub mod literal;
pub mod realcomplex;

pub use coefrings::{
    atom_bifunctor, colimit_truncation_oracle, ext_bifunctor, localize_group, tor_coefficients,
    Atom, ExtModule, PrimeSet,
};
pub use complexes::{
    chain_map_basis, chain_maps_mod_homotopy, cone, cone_les_check, hom_set, homology,
    homology_at, homology_map, induced_map, is_nullhomotopic, octahedron_check,
    s_equivalence_test, s_finite_test, theta_composite_check, theta_map, ChainMap, ConeTriangle,
    FreeComplex, HomotopyCertificate, SEquivalenceReport, SFiniteness,
};
pub use error::Error;
pub use fgab::{
    bifunctor, group_from_presentation, map_subquotients, smith_normal_form, torsion_data,
    BifunctorKind, FgAbGroup, GroupHom, IntMatrix, SmithDecomposition,
};
pub use literal::{
    parse_complex, parse_ext_module, parse_graded, parse_group, parse_prime_set, print_complex,
};
pub use realcomplex::{
    eta_les_check, point_rc, splitting_check, zero_rc, RCPair, SplitCoefficient, SplitDegree,
    SplittingReport,
};
pub use ktheory::{
    coefficient_object, cone_of_multiplication, divisible_rational, divisible_torsion,
    dq_examples, fixture, kko_cq_cq_bound, kko_cq_r, ko_point_table, point_complex, point_real,
    uct_kk, uct_kk_at, CoefficientObject, CqRealSequence, CqSelfBound, DivisibleReport, Flavor,
    KTheoryObject, UctEntry, UctResult,
};
pub use graded::{
    assemble_loc_coloc_les, coefficient_les, finite_coefficients, iso_detector, localize_theory,
    resolve_extension, torsion_theory, DegreeDetection, DetectionReport, ExactSequenceReport,
    ExtensionCandidate, ExtensionProblem, GradedGroup, Grading, GroupValue, ResolutionPolicy,
    SequenceNode, TheoryMap,
};
