//! Sets of primes, localised coefficient modules and the operations that
//! move a finitely generated group into the localised world.

mod atoms;

pub use atoms::{atom_bifunctor, ext_bifunctor, Atom};

use crate::error::{Error, Result};
use crate::fgab::{map_subquotients, FgAbGroup, GroupHom};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

/// A set of primes, either a finite list or the complement of one.
///
/// Membership and S-part extraction divide by the named primes only, so no
/// operation ever enumerates the primes of a cofinite set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeSet {
    /// The listed primes (sorted, deduplicated); empty list = empty set.
    Finite(Vec<u64>),
    /// All primes except the listed ones; empty list = all primes.
    Cofinite(Vec<u64>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_prime_list(primes: &[u64]) -> Result<Vec<u64>> {
    let mut list: Vec<u64> = primes.to_vec();
    list.sort_unstable();
    list.dedup();
    for &p in &list {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
    }
    Ok(list)
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet::Finite(vec![])
    }

    pub fn all() -> Self {
        PrimeSet::Cofinite(vec![])
    }

    /// All odd primes.
    pub fn odd() -> Self {
        PrimeSet::Cofinite(vec![2])
    }

    pub fn finite(primes: &[u64]) -> Result<Self> {
        Ok(PrimeSet::Finite(checked_prime_list(primes)?))
    }

    pub fn cofinite(excluded: &[u64]) -> Result<Self> {
        Ok(PrimeSet::Cofinite(checked_prime_list(excluded)?))
    }

    pub fn single(p: u64) -> Result<Self> {
        Self::finite(&[p])
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(v) if v.is_empty())
    }

    pub fn is_all(&self) -> bool {
        matches!(self, PrimeSet::Cofinite(v) if v.is_empty())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PrimeSet::Finite(_))
    }

    /// The listed primes of a finite set.
    pub fn primes(&self) -> Option<&[u64]> {
        match self {
            PrimeSet::Finite(v) => Some(v),
            PrimeSet::Cofinite(_) => None,
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        debug_assert!(is_prime(p), "membership asked for non-prime {p}");
        match self {
            PrimeSet::Finite(v) => v.binary_search(&p).is_ok(),
            PrimeSet::Cofinite(v) => v.binary_search(&p).is_err(),
        }
    }

    pub fn complement(&self) -> PrimeSet {
        match self {
            PrimeSet::Finite(v) => PrimeSet::Cofinite(v.clone()),
            PrimeSet::Cofinite(v) => PrimeSet::Finite(v.clone()),
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => {
                let mut v = a.clone();
                v.extend(b);
                v.sort_unstable();
                v.dedup();
                Finite(v)
            }
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => {
                Cofinite(b.iter().copied().filter(|p| !a.contains(p)).collect())
            }
            (Cofinite(a), Cofinite(b)) => {
                Cofinite(a.iter().copied().filter(|p| b.contains(p)).collect())
            }
        }
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &PrimeSet) -> PrimeSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset_of(&self, other: &PrimeSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Largest divisor of `n` composed of primes in the set. Finite sets
    /// divide by their members; cofinite sets divide out the excluded
    /// primes instead.
    pub fn s_part(&self, n: &BigUint) -> BigUint {
        assert!(!n.is_zero(), "s_part of zero");
        match self {
            PrimeSet::Finite(v) => {
                let mut part = BigUint::one();
                let mut rest = n.clone();
                for &p in v {
                    let bp = BigUint::from(p);
                    while (&rest % &bp).is_zero() {
                        rest /= &bp;
                        part *= &bp;
                    }
                }
                part
            }
            PrimeSet::Cofinite(v) => {
                let mut rest = n.clone();
                for &p in v {
                    let bp = BigUint::from(p);
                    while (&rest % &bp).is_zero() {
                        rest /= &bp;
                    }
                }
                rest
            }
        }
    }

    pub fn coprime_part(&self, n: &BigUint) -> BigUint {
        n / self.s_part(n)
    }

    pub fn is_s_number(&self, n: &BigUint) -> bool {
        self.coprime_part(n).is_one()
    }

    /// Primes of the set dividing `n`; factors `n` by trial division.
    pub fn primes_dividing(&self, n: &BigUint) -> Vec<u64> {
        factorize(n)
            .into_iter()
            .map(|(p, _)| p)
            .filter(|&p| self.contains(p))
            .collect()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(v: &[u64]) -> String {
            v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        }
        match self {
            PrimeSet::Finite(v) => write!(f, "{{{}}}", list(v)),
            PrimeSet::Cofinite(v) if v.is_empty() => write!(f, "all"),
            PrimeSet::Cofinite(v) if v == &[2] => write!(f, "odd"),
            PrimeSet::Cofinite(v) => write!(f, "all\\{{{}}}", list(v)),
        }
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Factors `n` by trial division. Inputs here are invariant factors of
/// desk-size presentations, so the quadratic search is fine.
pub fn factorize(n: &BigUint) -> Vec<(u64, u32)> {
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut push = |p: u64, rest: &mut BigUint| {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&*rest % &bp).is_zero() {
            *rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut d = 5u64;
    while BigUint::from(d) * BigUint::from(d) <= rest {
        push(d, &mut rest);
        push(d + 2, &mut rest);
        d += 6;
    }
    if !rest.is_one() {
        let p = rest
            .to_u64()
            .expect("prime factor beyond machine range; inputs are desk-size");
        out.push((p, 1));
    }
    out.sort_unstable();
    out
}

/// A module in the smallest class containing the localisations of
/// finitely generated groups and closed under the torsion constructions:
///
/// `Z[S0^-1]^free_rank + torsion + sum of Pruefer parts`
///
/// where `torsion` is finite with no S0-primary factors, and each Pruefer
/// part is a sum of `Z(p^∞)` over a support set of primes.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtModule {
    base: PrimeSet,
    free_rank: usize,
    torsion: FgAbGroup,
    pruefer: Vec<(PrimeSet, usize)>,
}

/// Canonicalises a formal sum of Pruefer parts via its multiplicity
/// function on primes: finite supports explode to single primes, layers
/// with cofinite support are rebuilt from the background multiplicity.
fn normalize_pruefer(parts: &[(PrimeSet, usize)]) -> Vec<(PrimeSet, usize)> {
    let mut background = 0usize;
    let mut relevant: Vec<u64> = Vec::new();
    for (s, m) in parts {
        if *m == 0 {
            continue;
        }
        match s {
            PrimeSet::Finite(v) => relevant.extend(v),
            PrimeSet::Cofinite(v) => {
                background += m;
                relevant.extend(v);
            }
        }
    }
    relevant.sort_unstable();
    relevant.dedup();
    let mult = |p: u64| -> usize {
        parts
            .iter()
            .filter(|(s, m)| *m > 0 && s.contains(p))
            .map(|(_, m)| m)
            .sum()
    };
    let mut out: Vec<(PrimeSet, usize)> = Vec::new();
    // cofinite layers, one per multiplicity threshold, grouped when equal
    let mut t = 1;
    while t <= background {
        let missing: Vec<u64> = relevant.iter().copied().filter(|&p| mult(p) < t).collect();
        let mut count = 1;
        while t + count <= background {
            let next: Vec<u64> = relevant
                .iter()
                .copied()
                .filter(|&p| mult(p) < t + count)
                .collect();
            if next == missing {
                count += 1;
            } else {
                break;
            }
        }
        out.push((PrimeSet::Cofinite(missing), count));
        t += count;
    }
    for &p in &relevant {
        let m = mult(p);
        if m > background {
            out.push((PrimeSet::Finite(vec![p]), m - background));
        }
    }
    out
}

impl ExtModule {
    pub fn new(
        base: PrimeSet,
        free_rank: usize,
        torsion: FgAbGroup,
        pruefer: Vec<(PrimeSet, usize)>,
    ) -> Result<Self> {
        if !torsion.is_finite() {
            return Err(Error::InvalidArgument(
                "torsion part of a coefficient module must be finite".into(),
            ));
        }
        for f in torsion.invariant_factors() {
            if !base.s_part(f).is_one() {
                return Err(Error::InvalidArgument(format!(
                    "torsion factor {f} is divisible by an inverted prime of {base}"
                )));
            }
        }
        Ok(ExtModule {
            base,
            free_rank,
            torsion,
            pruefer: normalize_pruefer(&pruefer),
        })
    }

    pub fn zero() -> Self {
        ExtModule {
            base: PrimeSet::empty(),
            free_rank: 0,
            torsion: FgAbGroup::trivial(),
            pruefer: vec![],
        }
    }

    pub fn from_fg(g: &FgAbGroup) -> Self {
        ExtModule {
            base: PrimeSet::empty(),
            free_rank: g.rank(),
            torsion: g.torsion_subgroup(),
            pruefer: vec![],
        }
    }

    pub fn rationals() -> Self {
        ExtModule {
            base: PrimeSet::all(),
            free_rank: 1,
            torsion: FgAbGroup::trivial(),
            pruefer: vec![],
        }
    }

    pub fn rationals_mod_z() -> Self {
        ExtModule {
            base: PrimeSet::empty(),
            free_rank: 0,
            torsion: FgAbGroup::trivial(),
            pruefer: vec![(PrimeSet::all(), 1)],
        }
    }

    pub fn base(&self) -> &PrimeSet {
        &self.base
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &FgAbGroup {
        &self.torsion
    }

    pub fn pruefer_parts(&self) -> &[(PrimeSet, usize)] {
        &self.pruefer
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_trivial() && self.pruefer.is_empty()
    }

    /// Whether the value is a plain finitely generated group over Z.
    pub fn as_fg(&self) -> Option<FgAbGroup> {
        if self.pruefer.is_empty() && (self.base.is_empty() || self.free_rank == 0) {
            Some(FgAbGroup::free(self.free_rank).direct_sum(&self.torsion))
        } else {
            None
        }
    }

    /// Kernel of multiplication by `s`, always finite: the free layer is
    /// torsion-free, the Pruefer layer contributes `Z/s_P` per copy with
    /// `s_P` the part of `s` supported on the Pruefer primes.
    pub fn mul_kernel(&self, s: &BigUint) -> FgAbGroup {
        assert!(!s.is_zero(), "multiplication by zero");
        let mut parts: Vec<FgAbGroup> = Vec::new();
        let torsion_hom = GroupHom::mul_by(&self.torsion, &BigInt::from(s.clone()));
        parts.push(map_subquotients(&torsion_hom).kernel);
        for (set, mult) in &self.pruefer {
            let p_part = set.s_part(s);
            if !p_part.is_one() {
                parts.push(FgAbGroup::from_cyclic_orders(0, &vec![p_part; *mult]));
            }
        }
        FgAbGroup::direct_sum_all(parts.iter())
    }

    /// Cokernel of multiplication by `s`, always finite: the Pruefer layer
    /// is divisible, and on `Z[base^-1]` only the prime-to-base part of `s`
    /// remains non-invertible.
    pub fn mul_cokernel(&self, s: &BigUint) -> FgAbGroup {
        assert!(!s.is_zero(), "multiplication by zero");
        let free_quot = self.base.coprime_part(s);
        let mut parts: Vec<FgAbGroup> = Vec::new();
        if !free_quot.is_one() {
            parts.push(FgAbGroup::from_cyclic_orders(
                0,
                &vec![free_quot; self.free_rank],
            ));
        }
        let torsion_hom = GroupHom::mul_by(&self.torsion, &BigInt::from(s.clone()));
        parts.push(map_subquotients(&torsion_hom).cokernel);
        FgAbGroup::direct_sum_all(parts.iter())
    }

    pub fn direct_sum(&self, other: &ExtModule) -> Result<ExtModule> {
        let base = if self.free_rank == 0 {
            other.base.clone()
        } else if other.free_rank == 0 || self.base == other.base {
            self.base.clone()
        } else {
            return Err(Error::InvalidArgument(format!(
                "direct sum of free parts over different base rings {} and {}",
                self.base, other.base
            )));
        };
        // the torsion constraint may force the larger base on both parts
        let torsion = self.torsion.direct_sum(&other.torsion);
        let mut pruefer = self.pruefer.clone();
        pruefer.extend(other.pruefer.iter().cloned());
        ExtModule::new(base, self.free_rank + other.free_rank, torsion, pruefer)
    }

    pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a ExtModule>) -> Result<ExtModule> {
        let mut acc = ExtModule::zero();
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Atom decomposition: free rank copies of `Z[base^-1]`, one cyclic
    /// atom per invariant factor, and the Pruefer parts.
    pub fn atoms(&self) -> Vec<(Atom, usize)> {
        let mut out = Vec::new();
        if self.free_rank > 0 {
            out.push((Atom::Free(self.base.clone()), self.free_rank));
        }
        for f in self.torsion.invariant_factors() {
            out.push((Atom::Cyclic(f.clone()), 1));
        }
        for (s, m) in &self.pruefer {
            out.push((Atom::Pruefer(s.clone()), *m));
        }
        out
    }
}

impl fmt::Display for ExtModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            let stem = match &self.base {
                PrimeSet::Finite(v) if v.is_empty() => "Z".to_string(),
                PrimeSet::Finite(v) => {
                    let m: u64 = v.iter().product();
                    format!("Z[1/{m}]")
                }
                PrimeSet::Cofinite(v) if v.is_empty() => "Q".to_string(),
                s => format!("Z[1/({s})]"),
            };
            if self.free_rank == 1 {
                parts.push(stem);
            } else {
                parts.push(format!("{stem}^{}", self.free_rank));
            }
        }
        for n in self.torsion.invariant_factors() {
            parts.push(format!("Z/{n}"));
        }
        for (s, m) in &self.pruefer {
            let stem = match s {
                PrimeSet::Cofinite(v) if v.is_empty() => "Q/Z".to_string(),
                PrimeSet::Finite(v) if v.len() == 1 => format!("Prufer({})", v[0]),
                s => format!("Prufer({s})"),
            };
            if *m == 1 {
                parts.push(stem);
            } else {
                parts.push(format!("{stem}^{m}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ExtModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `S^-1 M` for a finitely generated `M`: the free rank survives over the
/// bigger ring and exactly the prime-to-S torsion remains.
pub fn localize_group(m: &FgAbGroup, s: &PrimeSet) -> ExtModule {
    let co_parts: Vec<BigUint> = m
        .invariant_factors()
        .iter()
        .map(|f| s.coprime_part(f))
        .collect();
    ExtModule::new(
        s.clone(),
        m.rank(),
        FgAbGroup::from_cyclic_orders(0, &co_parts),
        vec![],
    )
    .expect("prime-to-S torsion is coprime to S by construction")
}

/// Kernel and cokernel of `M -> S^-1 M`:
/// the kernel is the S-primary torsion of `M` and the cokernel is a sum of
/// `rank(M)` copies of `S^-1 Z / Z`.
pub fn tor_coefficients(m: &FgAbGroup, s: &PrimeSet) -> (ExtModule, FgAbGroup) {
    let (tor1, _) = crate::fgab::torsion_data(m, s);
    let tor0 = ExtModule::new(
        PrimeSet::empty(),
        0,
        FgAbGroup::trivial(),
        vec![(s.clone(), m.rank())],
    )
    .expect("pure divisible part is always well-formed");
    (tor0, tor1)
}

/// Kernel and cokernel of multiplication by `s^k` on `m`; the directed
/// system these assemble into stabilises to `tor_coefficients` data.
pub fn colimit_truncation_oracle(m: &FgAbGroup, s: u64, k: u32) -> (FgAbGroup, FgAbGroup) {
    let power = BigInt::from(s).pow(k);
    let hom = GroupHom::mul_by(m, &power);
    let data = map_subquotients(&hom);
    (data.kernel, data.cokernel)
}
