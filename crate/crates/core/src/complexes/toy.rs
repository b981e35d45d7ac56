use super::{
    chain_operator, cone, homology_at, homotopy_operator, induced_between, induced_map,
    is_nullhomotopic, ChainMap, FreeComplex,
};
use crate::coefrings::PrimeSet;
use crate::error::{Error, Result};
use crate::fgab::{bifunctor, BifunctorKind, FgAbGroup, IntMatrix};
use crate::graded::ExactSequenceReport;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Degree-n morphism group in the homotopy category, computed by the split
/// formula over homology: Hom terms in matching degrees plus Ext terms one
/// degree up.
pub fn hom_set(a: &FreeComplex, b: &FreeComplex, n: i64) -> FgAbGroup {
    let mut parts: Vec<FgAbGroup> = Vec::new();
    if let Some((lo, hi)) = a.window() {
        for i in lo..=hi {
            let ha = homology_at(a, i);
            if ha.is_trivial() {
                continue;
            }
            parts.push(bifunctor(BifunctorKind::Hom, &ha, &homology_at(b, i + n)));
            parts.push(bifunctor(BifunctorKind::Ext, &ha, &homology_at(b, i + n + 1)));
        }
    }
    FgAbGroup::direct_sum_all(parts.iter())
}

fn ascending_divisors(n: &BigUint) -> Vec<BigUint> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            let mut e = 0;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            factors.push((p.clone(), e));
        }
        p += 1u32;
    }
    if !m.is_one() {
        factors.push((m, 1));
    }
    let mut divisors = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut power = BigUint::one();
            for _ in 0..=e {
                next.push(d * &power);
                power *= &p;
            }
        }
        divisors = next;
    }
    divisors.sort();
    divisors
}

fn scaling_by(c: &FreeComplex, k: &BigUint) -> ChainMap {
    let scale = BigInt::from(k.clone());
    let parts = c
        .window()
        .map(|(lo, hi)| {
            (lo..=hi)
                .filter(|&n| c.rank_at(n) > 0)
                .map(|n| (n, IntMatrix::identity(c.rank_at(n)).scaled(&scale)))
                .collect()
        })
        .unwrap_or_default();
    ChainMap::new(c.clone(), c.clone(), parts).expect("scalar multiple of the identity")
}

/// Outcome of asking whether some S-number annihilates the object up to
/// homotopy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SFiniteness {
    /// the identity itself is nullhomotopic
    ZeroObject,
    /// least S-number whose scaling of the identity is nullhomotopic
    Annihilated(BigUint),
    NotSFinite,
}

impl SFiniteness {
    pub fn is_finite(&self) -> bool {
        !matches!(self, SFiniteness::NotSFinite)
    }

    pub fn annihilator(&self) -> Option<BigUint> {
        match self {
            SFiniteness::ZeroObject => Some(BigUint::one()),
            SFiniteness::Annihilated(s) => Some(s.clone()),
            SFiniteness::NotSFinite => None,
        }
    }
}

fn torsion_exponent_of_homology(c: &FreeComplex) -> (usize, BigUint) {
    let mut free_rank = 0;
    let mut exponent = BigUint::one();
    if let Some((lo, hi)) = c.window() {
        for n in lo..=hi {
            let h = homology_at(c, n);
            free_rank += h.rank();
            exponent = exponent.lcm(&h.torsion_exponent());
        }
    }
    (free_rank, exponent)
}

/// Least S-number `s` with `s·id` nullhomotopic, searched over ascending
/// divisors of the homology exponent. Free homology or torsion outside S
/// rules the search out before it starts.
pub fn s_finite_test(c: &FreeComplex, s: &PrimeSet) -> SFiniteness {
    let (free_rank, exponent) = torsion_exponent_of_homology(c);
    if free_rank == 0 && exponent.is_one() {
        debug_assert!(is_nullhomotopic(&ChainMap::identity(c)).is_some());
        return SFiniteness::ZeroObject;
    }
    if free_rank > 0 || !s.is_s_number(&exponent) {
        return SFiniteness::NotSFinite;
    }
    for d in ascending_divisors(&exponent) {
        if d.is_one() {
            continue;
        }
        if is_nullhomotopic(&scaling_by(c, &d)).is_some() {
            return SFiniteness::Annihilated(d);
        }
    }
    SFiniteness::NotSFinite
}

/// The two sides of the S-equivalence criterion: whether the cone is
/// S-finite, and whether a homotopy inverse up to an S-number scalar exists.
#[derive(Clone, Debug)]
pub struct SEquivalenceReport {
    pub cone_finiteness: SFiniteness,
    /// scalar for which `g f ~ s id` and `f g ~ s id` were solved
    pub inverse_witness: Option<BigUint>,
    /// the inverse search exhausted its candidates while the cone test
    /// passed; counts as disagreement
    pub bound_exceeded: bool,
    pub agree: bool,
}

/// Solves the combined integer linear system for a scaled homotopy inverse:
/// unknowns are a chain map `g` in the reverse direction and two homotopies,
/// equations are the commuting constraints together with `g f - s id = dH + Hd`
/// and `f g - s id = dH' + H'd`. One Smith reduction serves every candidate
/// `s`, since only the right-hand side depends on it.
pub fn s_equivalence_test(f: &ChainMap, s: &PrimeSet) -> SEquivalenceReport {
    let a = f.source();
    let b = f.target();
    let tri = cone(f);
    let cone_finiteness = s_finite_test(&tri.cone, s);

    let (_, cone_exponent) = torsion_exponent_of_homology(&tri.cone);
    let s_part = s.s_part(&cone_exponent);
    let candidates = ascending_divisors(&(&s_part * &s_part));

    let (g_op, g_vars, g_eqs) = chain_operator(b, a);
    let (l_aa, _, out_a) = homotopy_operator(a, a);
    let (l_bb, _, out_b) = homotopy_operator(b, b);
    let rows = g_eqs.total + out_a.total + out_b.total;
    let cols = g_vars.total + l_aa.cols() + l_bb.cols();
    let mut m = IntMatrix::zero(rows, cols);
    for i in 0..g_eqs.total {
        for j in 0..g_vars.total {
            m.set(i, j, g_op.get(i, j).clone());
        }
    }
    let r2 = g_eqs.total;
    for (&n, &(rows_n, cols_n, offset)) in &out_a.blocks {
        let f_n = f.part_at(n);
        for i in 0..rows_n {
            for j in 0..cols_n {
                let row = r2 + offset + i * cols_n + j;
                for k in 0..b.rank_at(n) {
                    if let Some(col) = g_vars.position(n, i, k) {
                        m.set(row, col, f_n.get(k, j).clone());
                    }
                }
            }
        }
    }
    for i in 0..out_a.total {
        for j in 0..l_aa.cols() {
            m.set(r2 + i, g_vars.total + j, -l_aa.get(i, j).clone());
        }
    }
    let r3 = r2 + out_a.total;
    for (&n, &(rows_n, cols_n, offset)) in &out_b.blocks {
        let f_n = f.part_at(n);
        for i in 0..rows_n {
            for j in 0..cols_n {
                let row = r3 + offset + i * cols_n + j;
                for k in 0..a.rank_at(n) {
                    if let Some(col) = g_vars.position(n, k, j) {
                        m.set(row, col, f_n.get(i, k).clone());
                    }
                }
            }
        }
    }
    for i in 0..out_b.total {
        for j in 0..l_bb.cols() {
            m.set(r3 + i, g_vars.total + l_aa.cols() + j, -l_bb.get(i, j).clone());
        }
    }

    let snf = crate::fgab::smith_normal_form(&m);
    let mut inverse_witness = None;
    for d in &candidates {
        let scale = BigInt::from(d.clone());
        let mut rhs = IntMatrix::zero(rows, 1);
        let ids_a = out_a.flatten(|n| IntMatrix::identity(a.rank_at(n)).scaled(&scale));
        for i in 0..out_a.total {
            rhs.set(r2 + i, 0, ids_a.get(i, 0).clone());
        }
        let ids_b = out_b.flatten(|n| IntMatrix::identity(b.rank_at(n)).scaled(&scale));
        for i in 0..out_b.total {
            rhs.set(r3 + i, 0, ids_b.get(i, 0).clone());
        }
        if snf.solve(&rhs).is_some() {
            inverse_witness = Some(d.clone());
            break;
        }
    }

    let bound_exceeded = cone_finiteness.is_finite() && inverse_witness.is_none();
    let agree = (cone_finiteness.is_finite() == inverse_witness.is_some()) && !bound_exceeded;
    SEquivalenceReport {
        cone_finiteness,
        inverse_witness,
        bound_exceeded,
        agree,
    }
}

/// Homology long exact sequence of a cone triangle, checked node by node.
pub fn cone_les_check(f: &ChainMap) -> ExactSequenceReport {
    let a = f.source();
    let b = f.target();
    let tri = cone(f);
    let top = a
        .window()
        .map(|w| w.1 + 1)
        .unwrap_or(0)
        .max(b.window().map(|w| w.1).unwrap_or(0));
    let bottom = a
        .window()
        .map(|w| w.0)
        .unwrap_or(0)
        .min(b.window().map(|w| w.0).unwrap_or(0));

    let mut labels = Vec::new();
    let mut groups = Vec::new();
    let mut map_labels = Vec::new();
    let mut maps = Vec::new();
    for n in (bottom..=top).rev() {
        labels.push(format!("H_{n}(source)"));
        groups.push(homology_at(a, n));
        map_labels.push("H(f)".into());
        maps.push(induced_map(f, n));
        labels.push(format!("H_{n}(target)"));
        groups.push(homology_at(b, n));
        map_labels.push("into cone".into());
        maps.push(induced_map(&tri.from_target, n));
        labels.push(format!("H_{n}(cone)"));
        groups.push(homology_at(&tri.cone, n));
        if n > bottom {
            let connecting = IntMatrix::zero(a.rank_at(n - 1), b.rank_at(n))
                .hstack(&IntMatrix::identity(a.rank_at(n - 1)));
            map_labels.push("boundary".into());
            maps.push(induced_between(&tri.cone, n, a, n - 1, &connecting));
        }
    }
    ExactSequenceReport::from_chain(labels, groups, map_labels, maps, false)
}

/// Builds the three multiplication cones and the comparison maps between
/// them, then checks exactness of the induced homology sequence.
pub fn octahedron_check(c: &FreeComplex, s: u64, t: u64) -> Result<ExactSequenceReport> {
    if s < 2 || t < 2 {
        return Err(Error::InvalidArgument(format!(
            "octahedron scalars must be at least 2, got {s} and {t}"
        )));
    }
    let st = s.checked_mul(t).ok_or_else(|| {
        Error::InvalidArgument("octahedron scalar product overflows".to_string())
    })?;
    let cone_s = cone(&scaling_by(c, &BigUint::from(s))).cone;
    let cone_st = cone(&scaling_by(c, &BigUint::from(st))).cone;
    let cone_t = cone(&scaling_by(c, &BigUint::from(t))).cone;

    let (bottom, top) = c.window().map(|(lo, hi)| (lo, hi + 1)).unwrap_or((0, 0));
    let mut labels = Vec::new();
    let mut groups = Vec::new();
    let mut map_labels = Vec::new();
    let mut maps = Vec::new();
    let scale = |k: u64, size: usize| IntMatrix::identity(size).scaled(&BigInt::from(k));
    for n in (bottom..=top).rev() {
        let r_here = c.rank_at(n);
        let r_down = c.rank_at(n - 1);
        let r_down2 = c.rank_at(n - 2);
        labels.push(format!("H_{n}(cone {s})"));
        groups.push(homology_at(&cone_s, n));
        let into_st = IntMatrix::block2x2(
            &scale(t, r_here),
            &IntMatrix::zero(r_here, r_down),
            &IntMatrix::zero(r_down, r_here),
            &IntMatrix::identity(r_down),
        );
        map_labels.push(format!("x{t} on the top copy"));
        maps.push(induced_between(&cone_s, n, &cone_st, n, &into_st));
        labels.push(format!("H_{n}(cone {st})"));
        groups.push(homology_at(&cone_st, n));
        let into_t = IntMatrix::block2x2(
            &IntMatrix::identity(r_here),
            &IntMatrix::zero(r_here, r_down),
            &IntMatrix::zero(r_down, r_here),
            &scale(s, r_down),
        );
        map_labels.push(format!("x{s} on the shifted copy"));
        maps.push(induced_between(&cone_st, n, &cone_t, n, &into_t));
        labels.push(format!("H_{n}(cone {t})"));
        groups.push(homology_at(&cone_t, n));
        if n > bottom {
            let connecting = IntMatrix::block2x2(
                &IntMatrix::zero(r_down, r_here),
                &IntMatrix::identity(r_down),
                &IntMatrix::zero(r_down2, r_here),
                &IntMatrix::zero(r_down2, r_down),
            );
            map_labels.push("boundary".into());
            maps.push(induced_between(&cone_t, n, &cone_s, n - 1, &connecting));
        }
    }
    Ok(ExactSequenceReport::from_chain(
        labels, groups, map_labels, maps, false,
    ))
}

/// Canonical comparison map between multiplication cones for `q | p`:
/// multiplication by `p/q` on the plain copy, identity on the shifted copy.
pub fn theta_map(c: &FreeComplex, q: u64, p: u64) -> Result<ChainMap> {
    if q < 2 || p < 2 || p % q != 0 {
        return Err(Error::InvalidArgument(format!(
            "theta needs 2 <= q | p, got q={q}, p={p}"
        )));
    }
    let ratio = BigInt::from(p / q);
    let cone_q = cone(&scaling_by(c, &BigUint::from(q))).cone;
    let cone_p = cone(&scaling_by(c, &BigUint::from(p))).cone;
    let mut parts = std::collections::BTreeMap::new();
    if let Some((lo, hi)) = cone_q.window() {
        for n in lo..=hi {
            let r_here = c.rank_at(n);
            let r_down = c.rank_at(n - 1);
            if r_here + r_down == 0 {
                continue;
            }
            parts.insert(
                n,
                IntMatrix::block2x2(
                    &IntMatrix::identity(r_here).scaled(&ratio),
                    &IntMatrix::zero(r_here, r_down),
                    &IntMatrix::zero(r_down, r_here),
                    &IntMatrix::identity(r_down),
                ),
            );
        }
    }
    ChainMap::new(cone_q, cone_p, parts)
}

/// Checks that the comparison maps compose transitively up to homotopy
/// through an intermediate modulus.
pub fn theta_composite_check(c: &FreeComplex, q: u64, r: u64, p: u64) -> Result<bool> {
    let through = theta_map(c, r, p)?.compose(&theta_map(c, q, r)?);
    let direct = theta_map(c, q, p)?;
    Ok(is_nullhomotopic(&direct.sub(&through)).is_some())
}
