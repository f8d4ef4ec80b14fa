//! Root systems of the exceptional finite Coxeter groups and the permutation
//! action of their simple reflections on roots.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::golden::GoldenScalar;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    H3,
    H4,
    F4,
    E6,
    E7,
}

impl RootType {
    pub const ALL: [RootType; 5] = [RootType::H3, RootType::H4, RootType::F4, RootType::E6, RootType::E7];

    pub fn rank(self) -> usize {
        match self {
            RootType::H3 => 3,
            RootType::H4 | RootType::F4 => 4,
            RootType::E6 => 6,
            RootType::E7 => 7,
        }
    }

    /// Known number of roots.
    pub fn root_count(self) -> usize {
        match self {
            RootType::H3 => 30,
            RootType::H4 => 120,
            RootType::F4 => 48,
            RootType::E6 => 72,
            RootType::E7 => 126,
        }
    }

    /// Coxeter labels `m_ij` between simple reflections, in the order of
    /// [`RootType::simple_roots`].
    pub fn coxeter_matrix(self) -> Vec<Vec<u64>> {
        let rank = self.rank();
        let mut m = vec![vec![2u64; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let edges: &[(usize, usize, u64)] = match self {
            RootType::H3 => &[(0, 1, 5), (1, 2, 3)],
            RootType::H4 => &[(0, 1, 5), (1, 2, 3), (2, 3, 3)],
            RootType::F4 => &[(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            // Bourbaki numbering: 1-3-4-5-6(-7) with 2 attached to 4.
            RootType::E6 => &[(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (1, 3, 3)],
            RootType::E7 => &[(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (1, 3, 3)],
        };
        for &(i, j, label) in edges {
            m[i][j] = label;
            m[j][i] = label;
        }
        m
    }

    /// Simple roots in Bourbaki conventions (H-types in the standard
    /// icosian coordinates, all roots of norm 1).
    pub fn simple_roots(self) -> Vec<Vec<GoldenScalar>> {
        let z = GoldenScalar::ZERO;
        let one = GoldenScalar::ONE;
        let h = GoldenScalar::half;
        let int = |v: &[i64]| -> Vec<GoldenScalar> { v.iter().map(|&x| GoldenScalar::integer(x)).collect() };
        // φ/2, (1 − φ)/2, (φ − 1)/2
        let phi_2 = GoldenScalar::new(0, 1, 2);
        let one_minus_phi_2 = GoldenScalar::new(1, -1, 2);
        let phi_minus_one_2 = GoldenScalar::new(-1, 1, 2);
        match self {
            RootType::H3 => vec![vec![-one, z, z], vec![phi_2, h(-1), one_minus_phi_2], vec![z, one, z]],
            RootType::H4 => vec![
                vec![-one, z, z, z],
                vec![phi_2, h(-1), one_minus_phi_2, z],
                vec![z, h(1), phi_2, one_minus_phi_2],
                vec![z, phi_minus_one_2, h(-1), phi_2],
            ],
            RootType::F4 => vec![
                int(&[0, 1, -1, 0]),
                int(&[0, 0, 1, -1]),
                int(&[0, 0, 0, 1]),
                vec![h(1), h(-1), h(-1), h(-1)],
            ],
            RootType::E6 | RootType::E7 => {
                let mut simple = vec![
                    vec![h(1), h(-1), h(-1), h(-1), h(-1), h(-1), h(-1), h(1)],
                    int(&[1, 1, 0, 0, 0, 0, 0, 0]),
                ];
                for k in 0..self.rank() - 2 {
                    let mut v = vec![0; 8];
                    v[k] = -1;
                    v[k + 1] = 1;
                    simple.push(int(&v));
                }
                simple
            }
        }
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "H3" | "I3" => Ok(RootType::H3),
            "H4" | "I4" => Ok(RootType::H4),
            "F4" => Ok(RootType::F4),
            "E6" => Ok(RootType::E6),
            "E7" => Ok(RootType::E7),
            other => Err(Error::Parse(format!("unknown root system type {other:?}"))),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub type Vector = Vec<GoldenScalar>;

fn dot(u: &[GoldenScalar], v: &[GoldenScalar]) -> GoldenScalar {
    u.iter().zip(v).fold(GoldenScalar::ZERO, |acc, (&x, &y)| acc + x * y)
}

/// `v − (2(v·α)/(α·α)) α`.
pub fn reflect(v: &[GoldenScalar], alpha: &[GoldenScalar]) -> Vector {
    let c = GoldenScalar::integer(2) * dot(v, alpha) / dot(alpha, alpha);
    v.iter().zip(alpha).map(|(&x, &a)| x - c * a).collect()
}

/// A closed root system with the permutation action of each simple
/// reflection on the (sorted) root list.
#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootType,
    roots: Vec<Vector>,
    simple: Vec<usize>,
    actions: Vec<Permutation>,
}

impl RootSystem {
    /// Orbit closure of the simple roots under the simple reflections.
    pub fn close(kind: RootType) -> Result<RootSystem> {
        let simple_roots = kind.simple_roots();
        let mut index: HashMap<Vector, usize> = HashMap::new();
        let mut roots: Vec<Vector> = Vec::new();
        for r in &simple_roots {
            if index.insert(r.clone(), roots.len()).is_none() {
                roots.push(r.clone());
            }
        }
        let mut next = 0;
        while next < roots.len() {
            let v = roots[next].clone();
            next += 1;
            for alpha in &simple_roots {
                let w = reflect(&v, alpha);
                if !index.contains_key(&w) {
                    index.insert(w.clone(), roots.len());
                    roots.push(w);
                }
            }
            if roots.len() > 10_000 {
                return Err(Error::Invariant(format!("{kind} closure did not terminate")));
            }
        }
        roots.sort();
        let index: HashMap<&Vector, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let simple = simple_roots.iter().map(|r| index[r]).collect();
        let mut actions = Vec::with_capacity(simple_roots.len());
        for alpha in &simple_roots {
            let images = roots
                .iter()
                .map(|v| {
                    index
                        .get(&reflect(v, alpha))
                        .copied()
                        .ok_or_else(|| Error::Invariant(format!("{kind} not closed under reflection")))
                })
                .collect::<Result<Vec<_>>>()?;
            actions.push(Permutation::from_images(images)?);
        }
        let rs = RootSystem {
            kind,
            roots,
            simple,
            actions,
        };
        rs.check()?;
        Ok(rs)
    }

    fn check(&self) -> Result<()> {
        for r in &self.roots {
            if r.iter().any(|c| c.parts().2 > 2) {
                return Err(Error::Invariant(format!("root {r:?} has denominator above 2")));
            }
        }
        self.negation()?;
        if self.roots.len() != self.kind.root_count() {
            return Err(Error::Invariant(format!(
                "{} has {} roots, expected {}",
                self.kind,
                self.roots.len(),
                self.kind.root_count()
            )));
        }
        Ok(())
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    /// One generator per simple reflection, acting on root indices.
    pub fn as_permutation_group(&self) -> Vec<Permutation> {
        self.actions.clone()
    }

    /// The permutation of root indices induced by `v ↦ −v`.
    pub fn negation(&self) -> Result<Permutation> {
        let index: HashMap<&Vector, usize> = self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let images = self
            .roots
            .iter()
            .map(|r| {
                let neg: Vector = r.iter().map(|&c| -c).collect();
                index
                    .get(&neg)
                    .copied()
                    .ok_or_else(|| Error::Invariant("roots do not come in ± pairs".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    /// Deterministic text dump for regression snapshots.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "root-system {} rank {} roots {}",
            self.kind,
            self.rank(),
            self.roots.len()
        );
        for (i, r) in self.roots.iter().enumerate() {
            let coords: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "{:>4} ({})", i + 1, coords.join(", "));
        }
        for (k, (s, g)) in self.simple.iter().zip(&self.actions).enumerate() {
            let _ = writeln!(out, "s{} root {} : {}", k + 1, s + 1, g);
        }
        out
    }
}
