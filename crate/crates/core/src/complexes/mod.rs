//! Bounded complexes of free modules over the integers, up to chain
//! homotopy. Everything here is matrix-level: homology via Smith forms,
//! cones as block differentials, and homotopy questions as integer linear
//! systems.

mod toy;

pub use toy::{
    cone_les_check, hom_set, octahedron_check, s_equivalence_test, s_finite_test,
    theta_composite_check, theta_map, SEquivalenceReport, SFiniteness,
};

use crate::error::{Error, Result};
use crate::fgab::{smith_normal_form, FgAbGroup, GroupHom, IntMatrix};
use crate::graded::{GradedGroup, TheoryMap};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Bounded complex of finitely generated free modules. `diffs[j]` is the
/// differential leaving degree `lo + j + 1`, so it has `ranks[j]` rows and
/// `ranks[j + 1]` columns. Construction trims zero ranks at both ends and
/// checks that consecutive differentials compose to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl FreeComplex {
    pub fn new(lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if diffs.len() != ranks.len().saturating_sub(1) {
            return Err(Error::InvalidArgument(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (j, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[j] || d.cols() != ranks[j + 1] {
                return Err(Error::InvalidArgument(format!(
                    "differential into degree {} must be {}x{}, got {}x{}",
                    lo + j as i64,
                    ranks[j],
                    ranks[j + 1],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for j in 1..diffs.len() {
            if !(&diffs[j - 1] * &diffs[j]).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "differentials out of degrees {} and {} do not compose to zero",
                    lo + j as i64,
                    lo + j as i64 + 1
                )));
            }
        }
        let mut c = FreeComplex { lo, ranks, diffs };
        c.trim();
        Ok(c)
    }

    fn trim(&mut self) {
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        if self.ranks.is_empty() {
            self.lo = 0;
        }
    }

    pub fn zero() -> Self {
        FreeComplex {
            lo: 0,
            ranks: vec![],
            diffs: vec![],
        }
    }

    pub fn concentrated(degree: i64, rank: usize) -> Self {
        if rank == 0 {
            return Self::zero();
        }
        FreeComplex {
            lo: degree,
            ranks: vec![rank],
            diffs: vec![],
        }
    }

    /// Two-term complex with the given matrix as its only differential,
    /// leaving degree `top`.
    pub fn two_term(top: i64, d: IntMatrix) -> Self {
        let ranks = vec![d.rows(), d.cols()];
        let mut c = FreeComplex {
            lo: top - 1,
            ranks,
            diffs: vec![d],
        };
        c.trim();
        c
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        if self.ranks.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.ranks.len() as i64 - 1))
        }
    }

    pub fn rank_at(&self, n: i64) -> usize {
        if n < self.lo {
            return 0;
        }
        usize::try_from(n - self.lo)
            .ok()
            .and_then(|i| self.ranks.get(i).copied())
            .unwrap_or(0)
    }

    /// The differential leaving degree `n`, zero-filled outside the window.
    pub fn diff_at(&self, n: i64) -> IntMatrix {
        let rows = self.rank_at(n - 1);
        let cols = self.rank_at(n);
        if rows == 0 || cols == 0 {
            return IntMatrix::zero(rows, cols);
        }
        let i = (n - self.lo) as usize;
        if i >= 1 && i < self.ranks.len() {
            self.diffs[i - 1].clone()
        } else {
            IntMatrix::zero(rows, cols)
        }
    }

    pub fn is_zero_complex(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn shift(&self, k: i64) -> FreeComplex {
        let sign = if k.rem_euclid(2) == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(-1)
        };
        FreeComplex {
            lo: self.lo + k,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.scaled(&sign)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FreeComplex) -> FreeComplex {
        if self.is_zero_complex() {
            return other.clone();
        }
        if other.is_zero_complex() {
            return self.clone();
        }
        let (alo, ahi) = self.window().expect("nonzero");
        let (blo, bhi) = other.window().expect("nonzero");
        let lo = alo.min(blo);
        let hi = ahi.max(bhi);
        let ranks: Vec<usize> = (lo..=hi)
            .map(|n| self.rank_at(n) + other.rank_at(n))
            .collect();
        let diffs: Vec<IntMatrix> = (lo + 1..=hi)
            .map(|n| {
                let da = self.diff_at(n);
                let db = other.diff_at(n);
                IntMatrix::block2x2(
                    &da,
                    &IntMatrix::zero(da.rows(), db.cols()),
                    &IntMatrix::zero(db.rows(), da.cols()),
                    &db,
                )
            })
            .collect();
        FreeComplex::new(lo, ranks, diffs).expect("block sum of valid complexes")
    }
}

/// Degreewise matrices commuting with the differentials. Blocks are stored
/// sparsely; missing degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    parts: BTreeMap<i64, IntMatrix>,
}

fn joint_degrees(a: &FreeComplex, b: &FreeComplex) -> std::ops::RangeInclusive<i64> {
    let lo = a
        .window()
        .map(|w| w.0)
        .unwrap_or(0)
        .min(b.window().map(|w| w.0).unwrap_or(0));
    let hi = a
        .window()
        .map(|w| w.1)
        .unwrap_or(0)
        .max(b.window().map(|w| w.1).unwrap_or(0));
    lo - 1..=hi + 1
}

impl ChainMap {
    pub fn new(
        source: FreeComplex,
        target: FreeComplex,
        parts: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        for (&n, m) in &parts {
            if m.rows() != target.rank_at(n) || m.cols() != source.rank_at(n) {
                return Err(Error::IllFormedHom(format!(
                    "degree {} block must be {}x{}, got {}x{}",
                    n,
                    target.rank_at(n),
                    source.rank_at(n),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let map = ChainMap {
            source,
            target,
            parts,
        };
        for n in joint_degrees(&map.source, &map.target) {
            let lhs = &map.target.diff_at(n) * &map.part_at(n);
            let rhs = &map.part_at(n - 1) * &map.source.diff_at(n);
            if lhs != rhs {
                return Err(Error::IllFormedHom(format!(
                    "square at degree {n} does not commute"
                )));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn part_at(&self, n: i64) -> IntMatrix {
        self.parts.get(&n).cloned().unwrap_or_else(|| {
            IntMatrix::zero(self.target.rank_at(n), self.source.rank_at(n))
        })
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            parts: BTreeMap::new(),
        }
    }

    pub fn identity(c: &FreeComplex) -> Self {
        Self::scaling(c, 1)
    }

    /// Multiplication by `k` as a chain self-map.
    pub fn scaling(c: &FreeComplex, k: i64) -> Self {
        let scale = BigInt::from(k);
        let parts = c
            .window()
            .map(|(lo, hi)| {
                (lo..=hi)
                    .filter(|&n| c.rank_at(n) > 0)
                    .map(|n| (n, IntMatrix::identity(c.rank_at(n)).scaled(&scale)))
                    .collect()
            })
            .unwrap_or_default();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            parts,
        }
    }

    pub fn compose(&self, rhs: &ChainMap) -> ChainMap {
        assert_eq!(
            rhs.target, self.source,
            "compose: inner complexes must agree"
        );
        let mut parts = BTreeMap::new();
        for n in joint_degrees(&rhs.source, &self.target) {
            let m = &self.part_at(n) * &rhs.part_at(n);
            if !m.is_zero() {
                parts.insert(n, m);
            }
        }
        ChainMap {
            source: rhs.source.clone(),
            target: self.target.clone(),
            parts,
        }
    }

    pub fn add(&self, rhs: &ChainMap) -> ChainMap {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &ChainMap) -> ChainMap {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &ChainMap, negate: bool) -> ChainMap {
        assert_eq!(self.source, rhs.source, "combine: sources must agree");
        assert_eq!(self.target, rhs.target, "combine: targets must agree");
        let mut parts = BTreeMap::new();
        for n in joint_degrees(&self.source, &self.target) {
            let l = self.part_at(n);
            let r = rhs.part_at(n);
            let m = IntMatrix::from_fn(l.rows(), l.cols(), |i, j| {
                if negate {
                    l.get(i, j) - r.get(i, j)
                } else {
                    l.get(i, j) + r.get(i, j)
                }
            });
            if !m.is_zero() {
                parts.insert(n, m);
            }
        }
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            parts,
        }
    }
}

/// Cone of a chain map with its two canonical triangle maps.
pub struct ConeTriangle {
    pub cone: FreeComplex,
    /// target -> cone
    pub from_target: ChainMap,
    /// cone -> shifted source
    pub to_shifted_source: ChainMap,
}

/// Builds `cone(f)_n = target_n (+) source_{n-1}` with the differential
/// [[d, f], [0, -d]].
pub fn cone(f: &ChainMap) -> ConeTriangle {
    let a = f.source();
    let b = f.target();
    let lo = b
        .window()
        .map(|w| w.0)
        .unwrap_or(i64::MAX)
        .min(a.window().map(|w| w.0 + 1).unwrap_or(i64::MAX));
    if lo == i64::MAX {
        let zero = FreeComplex::zero();
        return ConeTriangle {
            cone: zero.clone(),
            from_target: ChainMap::zero(b, &zero),
            to_shifted_source: ChainMap::zero(&zero, &a.shift(1)),
        };
    }
    let hi = b
        .window()
        .map(|w| w.1)
        .unwrap_or(i64::MIN)
        .max(a.window().map(|w| w.1 + 1).unwrap_or(i64::MIN));
    let ranks: Vec<usize> = (lo..=hi)
        .map(|n| b.rank_at(n) + a.rank_at(n - 1))
        .collect();
    let minus_one = BigInt::from(-1);
    let diffs: Vec<IntMatrix> = (lo + 1..=hi)
        .map(|n| {
            let db = b.diff_at(n);
            let da = a.diff_at(n - 1).scaled(&minus_one);
            IntMatrix::block2x2(
                &db,
                &f.part_at(n - 1),
                &IntMatrix::zero(da.rows(), db.cols()),
                &da,
            )
        })
        .collect();
    let cone = FreeComplex::new(lo, ranks, diffs).expect("cone differential squares to zero");

    let mut incl = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in lo..=hi {
        let rb = b.rank_at(n);
        let ra = a.rank_at(n - 1);
        if cone.rank_at(n) == 0 {
            continue;
        }
        if rb > 0 {
            incl.insert(
                n,
                IntMatrix::identity(rb).vstack(&IntMatrix::zero(ra, rb)),
            );
        }
        if ra > 0 {
            proj.insert(
                n,
                IntMatrix::zero(ra, rb).hstack(&IntMatrix::identity(ra)),
            );
        }
    }
    let from_target =
        ChainMap::new(b.clone(), cone.clone(), incl).expect("cone inclusion is a chain map");
    let to_shifted_source = ChainMap::new(cone.clone(), a.shift(1), proj)
        .expect("cone projection is a chain map");
    ConeTriangle {
        cone,
        from_target,
        to_shifted_source,
    }
}

struct HomologySlot {
    group: FgAbGroup,
    /// columns span the cycle lattice inside the degree's free module
    cycles: IntMatrix,
    /// canonical generators from cycle coordinates
    proj: IntMatrix,
    /// cycle coordinates of the canonical generators
    sect: IntMatrix,
}

fn homology_slot(c: &FreeComplex, n: i64) -> HomologySlot {
    let d_out = c.diff_at(n);
    let cycles = smith_normal_form(&d_out).kernel_basis();
    let d_in = c.diff_at(n + 1);
    let boundaries = smith_normal_form(&cycles)
        .solve(&d_in)
        .expect("boundaries are cycles");
    let (group, proj, sect) = crate::fgab::quotient_by_lattice(cycles.cols(), &boundaries);
    HomologySlot {
        group,
        cycles,
        proj,
        sect,
    }
}

pub fn homology_at(c: &FreeComplex, n: i64) -> FgAbGroup {
    homology_slot(c, n).group
}

pub fn homology(c: &FreeComplex) -> GradedGroup {
    let mut entries = BTreeMap::new();
    if let Some((lo, hi)) = c.window() {
        for n in lo..=hi {
            entries.insert(n, homology_at(c, n));
        }
    }
    GradedGroup::bounded_fg(entries)
}

/// Induced map on homology of a degreewise matrix that carries cycles to
/// cycles and boundaries to boundaries (any block of a chain-level map,
/// including degree-shifting connecting maps).
pub(crate) fn induced_between(
    src: &FreeComplex,
    src_degree: i64,
    dst: &FreeComplex,
    dst_degree: i64,
    m: &IntMatrix,
) -> GroupHom {
    let s = homology_slot(src, src_degree);
    let d = homology_slot(dst, dst_degree);
    let carried = m * &s.cycles;
    let in_cycle_coords = smith_normal_form(&d.cycles)
        .solve(&carried)
        .expect("chain-level map carries cycles to cycles");
    let matrix = &(&d.proj * &in_cycle_coords) * &s.sect;
    GroupHom::new(s.group, d.group, matrix).expect("induced map is well defined")
}

pub fn induced_map(f: &ChainMap, n: i64) -> GroupHom {
    induced_between(f.source(), n, f.target(), n, &f.part_at(n))
}

/// All induced maps bundled as a map of bounded graded groups.
pub fn homology_map(f: &ChainMap) -> TheoryMap {
    let mut maps = BTreeMap::new();
    for n in joint_degrees(f.source(), f.target()) {
        let hom = induced_map(f, n);
        if !hom.domain().is_trivial() || !hom.codomain().is_trivial() {
            maps.insert(n, hom);
        }
    }
    TheoryMap::new(homology(f.source()), homology(f.target()), maps)
        .expect("induced maps match homology entries")
}

/// Positions of the degreewise blocks of a graded map inside one flattened
/// coordinate vector. A block at degree `n` has `dst.rank_at(n + shift)`
/// rows and `src.rank_at(n)` columns.
struct BlockLayout {
    blocks: BTreeMap<i64, (usize, usize, usize)>,
    total: usize,
}

impl BlockLayout {
    fn build(src: &FreeComplex, dst: &FreeComplex, shift: i64) -> Self {
        let mut blocks = BTreeMap::new();
        let mut total = 0;
        for n in joint_degrees(src, dst) {
            let rows = dst.rank_at(n + shift);
            let cols = src.rank_at(n);
            if rows > 0 && cols > 0 {
                blocks.insert(n, (rows, cols, total));
                total += rows * cols;
            }
        }
        BlockLayout { blocks, total }
    }

    fn position(&self, n: i64, i: usize, j: usize) -> Option<usize> {
        self.blocks
            .get(&n)
            .map(|&(_, cols, offset)| offset + i * cols + j)
    }

    fn flatten(&self, part: impl Fn(i64) -> IntMatrix) -> IntMatrix {
        let mut v = IntMatrix::zero(self.total, 1);
        for (&n, &(rows, cols, offset)) in &self.blocks {
            let m = part(n);
            assert_eq!((m.rows(), m.cols()), (rows, cols), "flatten shape");
            for i in 0..rows {
                for j in 0..cols {
                    v.set(offset + i * cols + j, 0, m.get(i, j).clone());
                }
            }
        }
        v
    }

    fn unflatten(&self, v: &IntMatrix) -> BTreeMap<i64, IntMatrix> {
        assert_eq!(v.rows(), self.total, "unflatten length");
        let mut out = BTreeMap::new();
        for (&n, &(rows, cols, offset)) in &self.blocks {
            let m = IntMatrix::from_fn(rows, cols, |i, j| v.get(offset + i * cols + j, 0).clone());
            if !m.is_zero() {
                out.insert(n, m);
            }
        }
        out
    }
}

/// Matrix of `f -> d_dst f - f d_src` from degree-0 block coordinates to
/// degree-(-1) block coordinates. Chain maps are exactly its kernel.
fn chain_operator(src: &FreeComplex, dst: &FreeComplex) -> (IntMatrix, BlockLayout, BlockLayout) {
    let vars = BlockLayout::build(src, dst, 0);
    let eqs = BlockLayout::build(src, dst, -1);
    let mut op = IntMatrix::zero(eqs.total, vars.total);
    for (&n, &(rows, cols, offset)) in &eqs.blocks {
        let d_dst = dst.diff_at(n);
        let d_src = src.diff_at(n);
        for i in 0..rows {
            for j in 0..cols {
                let row = offset + i * cols + j;
                for k in 0..dst.rank_at(n) {
                    if let Some(col) = vars.position(n, k, j) {
                        op.set(row, col, d_dst.get(i, k).clone());
                    }
                }
                for k in 0..src.rank_at(n - 1) {
                    if let Some(col) = vars.position(n - 1, i, k) {
                        op.set(row, col, -d_src.get(k, j).clone());
                    }
                }
            }
        }
    }
    (op, vars, eqs)
}

/// Matrix of `H -> d_dst H + H d_src` from degree-(+1) block coordinates to
/// degree-0 block coordinates (the chain-map coordinate space).
fn homotopy_operator(src: &FreeComplex, dst: &FreeComplex) -> (IntMatrix, BlockLayout, BlockLayout) {
    let hvars = BlockLayout::build(src, dst, 1);
    let out = BlockLayout::build(src, dst, 0);
    let mut op = IntMatrix::zero(out.total, hvars.total);
    for (&n, &(rows, cols, offset)) in &out.blocks {
        let d_dst = dst.diff_at(n + 1);
        let d_src = src.diff_at(n);
        for i in 0..rows {
            for j in 0..cols {
                let row = offset + i * cols + j;
                for k in 0..dst.rank_at(n + 1) {
                    if let Some(col) = hvars.position(n, k, j) {
                        op.set(row, col, d_dst.get(i, k).clone());
                    }
                }
                for k in 0..src.rank_at(n - 1) {
                    if let Some(col) = hvars.position(n - 1, i, k) {
                        let v = op.get(row, col) + d_src.get(k, j);
                        op.set(row, col, v);
                    }
                }
            }
        }
    }
    (op, hvars, out)
}

/// Witness that a chain map is nullhomotopic: `H_n` goes from source degree
/// `n` to target degree `n + 1`.
#[derive(Clone, Debug)]
pub struct HomotopyCertificate {
    parts: BTreeMap<i64, IntMatrix>,
}

impl HomotopyCertificate {
    pub fn part_at(&self, f: &ChainMap, n: i64) -> IntMatrix {
        self.parts.get(&n).cloned().unwrap_or_else(|| {
            IntMatrix::zero(f.target().rank_at(n + 1), f.source().rank_at(n))
        })
    }

    pub fn verifies(&self, f: &ChainMap) -> bool {
        for n in joint_degrees(f.source(), f.target()) {
            let dh = &f.target().diff_at(n + 1) * &self.part_at(f, n);
            let hd = &self.part_at(f, n - 1) * &f.source().diff_at(n);
            let sum = IntMatrix::from_fn(dh.rows(), dh.cols(), |i, j| dh.get(i, j) + hd.get(i, j));
            if sum != f.part_at(n) {
                return false;
            }
        }
        true
    }
}

/// Decides nullhomotopy by solving `f = dH + Hd` over the integers in one
/// Smith reduction of the assembled operator.
pub fn is_nullhomotopic(f: &ChainMap) -> Option<HomotopyCertificate> {
    let (op, hvars, out) = homotopy_operator(f.source(), f.target());
    let rhs = out.flatten(|n| f.part_at(n));
    if out.total == 0 {
        return Some(HomotopyCertificate {
            parts: BTreeMap::new(),
        });
    }
    let x = smith_normal_form(&op).solve(&rhs)?;
    let cert = HomotopyCertificate {
        parts: hvars.unflatten(&x),
    };
    debug_assert!(cert.verifies(f));
    Some(cert)
}

/// Basis of the lattice of chain maps between two complexes, one generator
/// per column of the kernel of the commuting-constraint operator.
pub fn chain_map_basis(src: &FreeComplex, dst: &FreeComplex) -> Vec<ChainMap> {
    let (op, vars, _) = chain_operator(src, dst);
    if vars.total == 0 {
        return vec![];
    }
    let kernel = smith_normal_form(&op).kernel_basis();
    (0..kernel.cols())
        .map(|j| {
            let col = kernel.submatrix(0..kernel.rows(), j..j + 1);
            ChainMap {
                source: src.clone(),
                target: dst.clone(),
                parts: vars.unflatten(&col),
            }
        })
        .collect()
}

/// Chain maps modulo chain homotopy as an abstract group: the kernel of the
/// commuting operator divided by the image of the homotopy operator. This is
/// the brute-force side of the split homology formula.
pub fn chain_maps_mod_homotopy(src: &FreeComplex, dst: &FreeComplex) -> FgAbGroup {
    let (op, vars, _) = chain_operator(src, dst);
    if vars.total == 0 {
        return FgAbGroup::trivial();
    }
    let kernel = smith_normal_form(&op).kernel_basis();
    let (homotopies, _, _) = homotopy_operator(src, dst);
    let in_kernel_coords = smith_normal_form(&kernel)
        .solve(&homotopies)
        .expect("nullhomotopic maps are chain maps");
    crate::fgab::group_from_presentation(&in_kernel_coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn scale_complex(q: i64) -> FreeComplex {
        FreeComplex::two_term(1, IntMatrix::from_rows_i64(&[vec![q]], 1))
    }

    fn point() -> FreeComplex {
        FreeComplex::concentrated(0, 1)
    }

    fn cyclic(n: u64) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(0, &[BigUint::from(n)])
    }

    #[test]
    fn two_term_homology() {
        let h = homology(&scale_complex(5));
        assert_eq!(h.fg_at(0).unwrap(), cyclic(5));
        assert!(h.fg_at(1).unwrap().is_trivial());
        assert!(homology(&FreeComplex::zero()).fg_at(0).unwrap().is_trivial());
        let id_cone = cone(&ChainMap::identity(&point())).cone;
        assert!(homology(&id_cone).fg_at(0).unwrap().is_trivial());
        assert!(homology(&id_cone).fg_at(1).unwrap().is_trivial());
    }

    #[test]
    fn cone_of_scaling_is_the_mod_q_complex() {
        let t = cone(&ChainMap::scaling(&point(), 7));
        assert_eq!(homology_at(&t.cone, 0), cyclic(7));
        assert!(homology_at(&t.cone, 1).is_trivial());
    }

    #[test]
    fn cone_of_zero_map_is_the_shifted_source() {
        let a = scale_complex(4);
        let t = cone(&ChainMap::zero(&a, &FreeComplex::zero()));
        assert_eq!(homology_at(&t.cone, 1), homology_at(&a, 0));
        assert_eq!(homology_at(&t.cone, 2), homology_at(&a, 1));
    }

    #[test]
    fn doubling_on_the_mod_two_complex_is_nullhomotopic() {
        let c = scale_complex(2);
        let f = ChainMap::scaling(&c, 2);
        let cert = is_nullhomotopic(&f).expect("2 annihilates the mod-2 complex");
        assert!(cert.verifies(&f));
        assert!(is_nullhomotopic(&ChainMap::identity(&c)).is_none());
        let into_zero = ChainMap::zero(&c, &FreeComplex::zero());
        assert!(is_nullhomotopic(&into_zero).is_some());
    }

    #[test]
    fn induced_maps_compose_through_canonical_forms() {
        let c = scale_complex(4);
        let f = ChainMap::scaling(&c, 2);
        let h0 = induced_map(&f, 0);
        assert_eq!(h0.domain(), &cyclic(4));
        assert!(!h0.is_iso());
        let theory = homology_map(&ChainMap::identity(&c));
        assert!(theory.map_at(0).is_iso());
    }

    #[test]
    fn chain_map_lattice_between_stalks() {
        let a = FreeComplex::concentrated(0, 2);
        let b = FreeComplex::concentrated(0, 1);
        assert_eq!(chain_map_basis(&a, &b).len(), 2);
        assert_eq!(chain_maps_mod_homotopy(&a, &b), FgAbGroup::free(2));
    }

    fn small_complex() -> impl Strategy<Value = FreeComplex> {
        proptest::collection::vec((0i64..=2, -4i64..=4, any::<bool>()), 0..=2).prop_map(|pieces| {
            pieces
                .into_iter()
                .map(|(degree, scale, concentrated)| {
                    if concentrated {
                        FreeComplex::concentrated(degree, 1)
                    } else {
                        FreeComplex::two_term(degree, IntMatrix::from_rows_i64(&[vec![scale]], 1))
                    }
                })
                .fold(FreeComplex::zero(), |acc, c| acc.direct_sum(&c))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn random_chain_maps_commute_and_certify(
            a in small_complex(),
            b in small_complex(),
            coeffs in proptest::collection::vec(-3i64..=3, 8),
        ) {
            let basis = chain_map_basis(&a, &b);
            let mut f = ChainMap::zero(&a, &b);
            for (k, base) in basis.iter().enumerate() {
                let c = coeffs[k % coeffs.len()];
                if c != 0 {
                    f = f.add(&ChainMap::scaling(&b, c).compose(base));
                }
            }
            // rebuilt through the validating constructor
            let parts = (-2..=4).map(|n| (n, f.part_at(n))).filter(|(_, m)| !m.is_zero()).collect();
            let rebuilt = ChainMap::new(a.clone(), b.clone(), parts);
            prop_assert!(rebuilt.is_ok());
        }
    }
}
