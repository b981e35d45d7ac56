use super::{ExtModule, PrimeSet};
use crate::error::{Error, Result};
use crate::fgab::{BifunctorKind, FgAbGroup};
use num_bigint::BigUint;
use num_integer::Integer;
use std::fmt;

/// The building blocks of the localised module class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Atom {
    /// `Z[S^-1]`; the empty set gives `Z`, all primes give `Q`.
    Free(PrimeSet),
    /// `Z/n` with `n >= 2`.
    Cyclic(BigUint),
    /// Sum of one `Z(p^∞)` per prime of the support; all primes give `Q/Z`.
    Pruefer(PrimeSet),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Free(s) if s.is_empty() => write!(f, "Z"),
            Atom::Free(s) if s.is_all() => write!(f, "Q"),
            Atom::Free(s) => match s.primes() {
                Some(v) => {
                    let m: u64 = v.iter().product();
                    write!(f, "Z[1/{m}]")
                }
                None => write!(f, "Z[1/({s})]"),
            },
            Atom::Cyclic(n) => write!(f, "Z/{n}"),
            Atom::Pruefer(s) if s.is_all() => write!(f, "Q/Z"),
            Atom::Pruefer(s) => write!(f, "Prufer({s})"),
        }
    }
}

impl Atom {
    pub fn as_module(&self) -> ExtModule {
        match self {
            Atom::Free(s) => ExtModule::new(s.clone(), 1, FgAbGroup::trivial(), vec![])
                .expect("free atom is well-formed"),
            Atom::Cyclic(n) => {
                ExtModule::from_fg(&FgAbGroup::from_cyclic_orders(0, &[n.clone()]))
            }
            Atom::Pruefer(s) => ExtModule::new(
                PrimeSet::empty(),
                0,
                FgAbGroup::trivial(),
                vec![(s.clone(), 1)],
            )
            .expect("Pruefer atom is well-formed"),
        }
    }
}

fn cyclic(n: BigUint) -> ExtModule {
    ExtModule::from_fg(&FgAbGroup::from_cyclic_orders(0, &[n]))
}

fn free_over(s: &PrimeSet) -> ExtModule {
    Atom::Free(s.clone()).as_module()
}

fn pruefer_over(s: &PrimeSet) -> ExtModule {
    Atom::Pruefer(s.clone()).as_module()
}

fn not_representable(kind: BifunctorKind, a: &Atom, b: &Atom) -> Error {
    Error::NotRepresentable {
        kind: kind.name().to_string(),
        lhs: a.to_string(),
        rhs: b.to_string(),
    }
}

/// Bifunctor values on single atoms.
///
/// Every entry returned is an identity of abelian groups with a short
/// standard derivation; pairs whose value falls outside the representable
/// class (completions, adele-sized groups) are reported as
/// `NotRepresentable` rather than being approximated.
pub fn atom_bifunctor(kind: BifunctorKind, a: &Atom, b: &Atom) -> Result<ExtModule> {
    use Atom::*;
    use BifunctorKind::*;
    let value = match (kind, a, b) {
        // ----- Hom -----
        // Hom(Z[S^-1], Z[T^-1]): a map is determined by the image of 1,
        // which must be infinitely divisible by every prime of S
        (Hom, Free(s), Free(t)) => {
            if s.is_subset_of(t) {
                free_over(t)
            } else {
                ExtModule::zero()
            }
        }
        // Hom(Z[S^-1], Z/n) is the inverse limit of multiplication by
        // S-numbers on Z/n: the prime-to-S part survives
        (Hom, Free(s), Cyclic(n)) => cyclic(s.coprime_part(n)),
        // with disjoint supports every prime of S acts invertibly on the
        // target, otherwise the value is a p-adic module
        (Hom, Free(s), Pruefer(t)) => {
            if s.intersection(t).is_empty() {
                pruefer_over(t)
            } else {
                return Err(not_representable(kind, a, b));
            }
        }
        // torsion into torsion-free
        (Hom, Cyclic(_), Free(_)) => ExtModule::zero(),
        (Hom, Cyclic(n), Cyclic(m)) => cyclic(n.gcd(m)),
        // n-torsion of the Pruefer sum
        (Hom, Cyclic(n), Pruefer(t)) => cyclic(t.s_part(n)),
        // divisible torsion into anything reduced or torsion-free
        (Hom, Pruefer(_), Free(_)) | (Hom, Pruefer(_), Cyclic(_)) => ExtModule::zero(),
        // endomorphisms of Z(p^∞) form the p-adic integers
        (Hom, Pruefer(p), Pruefer(t)) => {
            if p.intersection(t).is_empty() {
                ExtModule::zero()
            } else {
                return Err(not_representable(kind, a, b));
            }
        }

        // ----- Ext -----
        // colim description of Z[S^-1] turns Ext into a lim^1 of finite
        // groups, which vanishes; for S not inverted in T the value is
        // adele-sized
        (Ext, Free(s), Free(t)) => {
            if s.is_empty() || s.is_subset_of(t) {
                ExtModule::zero()
            } else {
                return Err(not_representable(kind, a, b));
            }
        }
        (Ext, Free(_), Cyclic(_)) => ExtModule::zero(),
        // divisible targets are injective
        (Ext, _, Pruefer(_)) => ExtModule::zero(),
        (Ext, Cyclic(n), Free(t)) => cyclic(t.coprime_part(n)),
        (Ext, Cyclic(n), Cyclic(m)) => cyclic(n.gcd(m)),
        // from 0 -> Z -> Z[1/p] -> Z(p^∞) -> 0: Ext(Z(p^∞), B) = B for
        // finite p-groups B, completion-sized when Z survives
        (Ext, Pruefer(p), Free(t)) => {
            if p.is_subset_of(t) {
                ExtModule::zero()
            } else {
                return Err(not_representable(kind, a, b));
            }
        }
        (Ext, Pruefer(p), Cyclic(n)) => cyclic(p.s_part(n)),

        // ----- Tensor -----
        (Tensor, Free(s), Free(t)) => free_over(&s.union(t)),
        (Tensor, Free(s), Cyclic(n)) | (Tensor, Cyclic(n), Free(s)) => {
            cyclic(s.coprime_part(n))
        }
        // tensoring with Z[S^-1] localises: the S-supported Pruefer parts die
        (Tensor, Free(s), Pruefer(t)) | (Tensor, Pruefer(t), Free(s)) => {
            pruefer_over(&t.difference(s))
        }
        (Tensor, Cyclic(n), Cyclic(m)) => cyclic(n.gcd(m)),
        // divisible tensor torsion vanishes
        (Tensor, Cyclic(_), Pruefer(_)) | (Tensor, Pruefer(_), Cyclic(_)) => ExtModule::zero(),
        (Tensor, Pruefer(_), Pruefer(_)) => ExtModule::zero(),

        // ----- Tor -----
        // flat arguments kill Tor
        (Tor, Free(_), _) | (Tor, _, Free(_)) => ExtModule::zero(),
        (Tor, Cyclic(n), Cyclic(m)) => cyclic(n.gcd(m)),
        // Tor(Z/n, A) is the n-torsion of A
        (Tor, Cyclic(n), Pruefer(t)) | (Tor, Pruefer(t), Cyclic(n)) => cyclic(t.s_part(n)),
        (Tor, Pruefer(p), Pruefer(t)) => pruefer_over(&p.intersection(t)),
    };
    Ok(value)
}

/// Bilinear extension of `atom_bifunctor` over atom decompositions.
pub fn ext_bifunctor(kind: BifunctorKind, a: &ExtModule, b: &ExtModule) -> Result<ExtModule> {
    let mut acc = ExtModule::zero();
    for (x, mx) in a.atoms() {
        for (y, my) in b.atoms() {
            let v = atom_bifunctor(kind, &x, &y)?;
            for _ in 0..mx * my {
                acc = acc.direct_sum(&v)?;
            }
        }
    }
    Ok(acc)
}
