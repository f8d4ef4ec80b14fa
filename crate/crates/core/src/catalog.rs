//! Named constructors for the finite Coxeter groups in scope.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{ClassShortcut, GroupHandle};
use crate::perm::Permutation;
use crate::roots::{RootSystem, RootType};
use crate::signed::{SignVector, SignedPermutation, MAX_RANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    /// Hyperoctahedral group `B_n`.
    B(usize),
    /// Index-two subgroup `D_n` of `B_n`.
    D(usize),
    G2,
    H3,
    H4,
    F4,
    E6,
    E7,
}

impl GroupSpec {
    pub fn validate(self) -> Result<Self> {
        let bad =
            |what: &str, min: usize, n: usize| Err(Error::Precondition(format!("{what} needs n ≥ {min}, got {n}")));
        match self {
            GroupSpec::Dihedral(n) if n < 3 => bad("Dih", 3, n),
            GroupSpec::Symmetric(n) if n < 2 => bad("S", 2, n),
            GroupSpec::B(n) if n < 3 => bad("B", 3, n),
            GroupSpec::D(n) if n < 3 => bad("D", 3, n),
            GroupSpec::B(n) | GroupSpec::D(n) if n > MAX_RANK => Err(Error::Capability(format!(
                "signed permutations support rank ≤ {MAX_RANK}"
            ))),
            other => Ok(other),
        }
    }

    pub fn rank(self) -> Option<usize> {
        match self {
            GroupSpec::Dihedral(n) | GroupSpec::Symmetric(n) | GroupSpec::B(n) | GroupSpec::D(n) => Some(n),
            _ => None,
        }
    }

    /// Order from the closed form (or the known table size for the
    /// exceptional types).
    pub fn closed_order(self) -> BigUint {
        let fact = |n: usize| (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k));
        match self {
            GroupSpec::Dihedral(n) => BigUint::from(2 * n),
            GroupSpec::Symmetric(n) => fact(n),
            GroupSpec::B(n) => fact(n) << n,
            GroupSpec::D(n) => fact(n) << (n - 1),
            GroupSpec::G2 => BigUint::from(12u32),
            GroupSpec::H3 => BigUint::from(120u32),
            GroupSpec::H4 => BigUint::from(14_400u32),
            GroupSpec::F4 => BigUint::from(1_152u32),
            GroupSpec::E6 => BigUint::from(51_840u32),
            GroupSpec::E7 => BigUint::from(2_903_040u32),
        }
    }

    /// Whether every generating pair has at most one odd entry: true for
    /// `Σ_n` and `D_n`, which map onto `Σ_n` so the sign character applies.
    pub fn parity_prune(self) -> bool {
        matches!(self, GroupSpec::Symmetric(_) | GroupSpec::D(_))
    }

    /// Realized through signed permutations on `{±1..±n}`.
    pub fn is_signed(self) -> bool {
        matches!(self, GroupSpec::B(_) | GroupSpec::D(_))
    }

    /// Known isomorphism to report alongside the result.
    pub fn redirect_note(self) -> Option<&'static str> {
        match self {
            GroupSpec::D(3) => Some("D3 = S4"),
            GroupSpec::Symmetric(3) => Some("S3 is dihedral of order 6"),
            GroupSpec::G2 => Some("G2 is dihedral of order 12"),
            _ => None,
        }
    }

    fn root_type(self) -> Option<RootType> {
        match self {
            GroupSpec::H3 => Some(RootType::H3),
            GroupSpec::H4 => Some(RootType::H4),
            GroupSpec::F4 => Some(RootType::F4),
            GroupSpec::E6 => Some(RootType::E6),
            GroupSpec::E7 => Some(RootType::E7),
            _ => None,
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let upper = s.to_ascii_uppercase();
        let fixed = match upper.as_str() {
            "G2" => Some(GroupSpec::G2),
            "H3" | "I3" => Some(GroupSpec::H3),
            "H4" | "I4" => Some(GroupSpec::H4),
            "F4" => Some(GroupSpec::F4),
            "E6" => Some(GroupSpec::E6),
            "E7" => Some(GroupSpec::E7),
            "E8" => return Err(Error::Capability("E8 is out of scope".into())),
            _ => None,
        };
        if let Some(spec) = fixed {
            return Ok(spec);
        }
        let (family, digits): (fn(usize) -> GroupSpec, &str) = if let Some(d) = upper.strip_prefix("DIH") {
            (GroupSpec::Dihedral, d)
        } else if let Some(d) = upper.strip_prefix('S') {
            (GroupSpec::Symmetric, d)
        } else if let Some(d) = upper.strip_prefix('B') {
            (GroupSpec::B, d)
        } else if let Some(d) = upper.strip_prefix('D') {
            (GroupSpec::D, d)
        } else {
            return Err(Error::Parse(format!("unknown group {s:?}")));
        };
        let n: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in group {s:?}")))?;
        family(n).validate()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Dihedral(n) => write!(f, "Dih{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::B(n) => write!(f, "B{n}"),
            GroupSpec::D(n) => write!(f, "D{n}"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// How the group acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realization {
    /// Natural action on `{1..n}` (symmetric groups, dihedral on an n-gon).
    Points,
    /// Signed permutations on `{±1..±n}`, degree `2n`.
    Signed,
    /// Action of the reflection group on its roots.
    Roots(RootType),
}

#[derive(Debug)]
pub struct Realized {
    pub spec: GroupSpec,
    pub group: GroupHandle,
    pub realization: Realization,
}

impl Realized {
    /// Cycle notation, or `[cycles | digits]` for signed realizations.
    pub fn format_element(&self, x: &Permutation) -> String {
        if self.realization == Realization::Signed {
            if let Ok(s) = SignedPermutation::from_degree_2n(x) {
                return s.to_string();
            }
        }
        x.to_string()
    }

    /// Every reflection of `Σ_n`, `B_n` or `D_n` in the realized action;
    /// empty for the other families.
    pub fn reflections(&self) -> Vec<Permutation> {
        let swap = |deg: usize, pairs: &[(usize, usize)]| {
            let mut images: Vec<usize> = (0..deg).collect();
            for &(a, b) in pairs {
                images.swap(a, b);
            }
            Permutation::from_images(images).expect("valid degree")
        };
        let mut out = Vec::new();
        match self.spec {
            GroupSpec::Symmetric(n) => {
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(swap(n, &[(i, j)]));
                    }
                }
            }
            GroupSpec::B(n) | GroupSpec::D(n) => {
                let deg = 2 * n;
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(swap(deg, &[(i, j), (n + i, n + j)]));
                        out.push(swap(deg, &[(i, n + j), (j, n + i)]));
                    }
                    if matches!(self.spec, GroupSpec::B(_)) {
                        out.push(swap(deg, &[(i, n + i)]));
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Inverse of [`Realized::format_element`].
    pub fn parse_element(&self, text: &str) -> Result<Permutation> {
        match self.realization {
            Realization::Signed => {
                let s = SignedPermutation::parse(text)?;
                if Some(s.rank()) != self.spec.rank() {
                    return Err(Error::Parse(format!("element {text:?} has the wrong rank")));
                }
                Ok(s.to_degree_2n())
            }
            _ => Permutation::parse(self.group.degree(), text),
        }
    }
}

fn dihedral_generators(n: usize) -> Result<Vec<Permutation>> {
    let rotation = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    Ok(vec![rotation, reflection])
}

fn symmetric_generators(n: usize) -> Result<Vec<Permutation>> {
    let t = if n >= 2 {
        Permutation::from_cycles(n, &[vec![0, 1]])?
    } else {
        Permutation::identity(n)
    };
    let c = Permutation::from_cycles(n, &[(0..n).collect()])?;
    Ok(vec![t, c])
}

/// `[(1 2), 0]`, `[(1 … n), 0]` and `[1, e_n]` (B) or `[1, e_{n−1} + e_n]` (D).
pub fn signed_generators(n: usize, demi: bool) -> Result<Vec<SignedPermutation>> {
    let mut gens: Vec<SignedPermutation> = symmetric_generators(n)?
        .into_iter()
        .map(SignedPermutation::unsigned)
        .collect();
    let flip = if demi {
        SignVector::from_positions(n, &[n - 2, n - 1])
    } else {
        SignVector::unit(n, n - 1)
    };
    gens.push(SignedPermutation::flip(flip));
    Ok(gens)
}

pub fn realize(spec: GroupSpec) -> Result<Realized> {
    let spec = spec.validate()?;
    let (group, realization) = match spec {
        GroupSpec::Dihedral(n) => (GroupHandle::build(dihedral_generators(n)?)?, Realization::Points),
        GroupSpec::G2 => (GroupHandle::build(dihedral_generators(6)?)?, Realization::Points),
        GroupSpec::Symmetric(n) => (
            GroupHandle::build(symmetric_generators(n)?)?.with_shortcut(ClassShortcut::Symmetric(n)),
            Realization::Points,
        ),
        GroupSpec::B(n) | GroupSpec::D(n) => {
            let demi = matches!(spec, GroupSpec::D(_));
            let gens = signed_generators(n, demi)?.iter().map(|g| g.to_degree_2n()).collect();
            let shortcut = if demi {
                ClassShortcut::Demihyperoctahedral(n)
            } else {
                ClassShortcut::Hyperoctahedral(n)
            };
            (GroupHandle::build(gens)?.with_shortcut(shortcut), Realization::Signed)
        }
        _ => {
            let kind = spec.root_type().expect("exceptional type");
            let rs = RootSystem::close(kind)?;
            (GroupHandle::build(rs.as_permutation_group())?, Realization::Roots(kind))
        }
    };
    if group.order() != &spec.closed_order() {
        return Err(Error::Invariant(format!(
            "{spec} realized with order {}, expected {}",
            group.order(),
            spec.closed_order()
        )));
    }
    Ok(Realized {
        spec,
        group,
        realization,
    })
}

/// A homomorphism onto a quotient group, as a map on realized elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientMap {
    /// `[σ, b] ↦ σ`, kernel `(Z2)^n` from `B_n`, `(Z2)^{n−1}` from `D_n`.
    Pi,
    /// `B_n → D_n` for odd `n`: multiply odd elements by the central `[1, 1…1]`.
    ModCenter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub source: GroupSpec,
    pub target: GroupSpec,
    pub kernel_order: BigUint,
    pub map: QuotientMap,
}

impl Quotient {
    /// Applies the projection to a degree-`2n` element of the source.
    pub fn apply(&self, x: &Permutation) -> Result<Permutation> {
        let s = SignedPermutation::from_degree_2n(x)?;
        match self.map {
            QuotientMap::Pi => Ok(s.pi().clone()),
            QuotientMap::ModCenter => {
                let folded = if s.is_in_dn() {
                    s
                } else {
                    s.then(&SignedPermutation::flip(SignVector::ones(s.rank())))
                };
                Ok(folded.to_degree_2n())
            }
        }
    }
}

/// The quotient relations among in-scope groups with `spec` as the source.
pub fn quotient_images(spec: GroupSpec) -> Result<Vec<Quotient>> {
    let spec = spec.validate()?;
    let mut out = Vec::new();
    match spec {
        GroupSpec::B(n) => {
            out.push(quotient_to(spec, GroupSpec::Symmetric(n))?);
            if n % 2 == 1 {
                out.push(quotient_to(spec, GroupSpec::D(n))?);
            }
        }
        GroupSpec::D(n) => out.push(quotient_to(spec, GroupSpec::Symmetric(n))?),
        _ => {}
    }
    Ok(out)
}

pub fn quotient_to(source: GroupSpec, target: GroupSpec) -> Result<Quotient> {
    let q = |kernel_order: BigUint, map| {
        Ok(Quotient {
            source,
            target,
            kernel_order,
            map,
        })
    };
    match (source, target) {
        (GroupSpec::B(n), GroupSpec::Symmetric(m)) if n == m => q(BigUint::one() << n, QuotientMap::Pi),
        (GroupSpec::D(n), GroupSpec::Symmetric(m)) if n == m => q(BigUint::one() << (n - 1), QuotientMap::Pi),
        (GroupSpec::B(n), GroupSpec::D(m)) if n == m => {
            if n % 2 == 0 {
                Err(Error::Precondition(format!(
                    "B{n} → D{n} modulo the center needs n odd"
                )))
            } else {
                q(BigUint::from(2u32), QuotientMap::ModCenter)
            }
        }
        _ => Err(Error::Precondition(format!("no quotient map {source} → {target}"))),
    }
}

/// Groups having `spec` as a quotient.
pub fn covers_of(spec: GroupSpec) -> Vec<GroupSpec> {
    match spec {
        GroupSpec::Symmetric(n) if n >= 3 => vec![GroupSpec::B(n), GroupSpec::D(n)],
        GroupSpec::D(n) if n % 2 == 1 => vec![GroupSpec::B(n)],
        _ => vec![],
    }
}
