//! Conjugacy classes: generic orbit computation under conjugation for small
//! groups, cycle-type indexing for `Σ_n`, `B_n` and `D_n`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use super::GroupHandle;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::signed::{SignVector, SignedPermutation, MAX_RANK};

/// Largest order for which classes are computed by enumerating the group.
pub const GENERIC_CLASS_LIMIT: u64 = 1_000_000;

/// Families whose classes are indexed by (signed) cycle types. `B_n` and
/// `D_n` are assumed realized through [`SignedPermutation::to_degree_2n`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassShortcut {
    Symmetric(usize),
    Hyperoctahedral(usize),
    Demihyperoctahedral(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub rep: Permutation,
    pub size: BigUint,
    pub order: u64,
}

fn sort_classes(classes: &mut [ConjugacyClass]) {
    classes.sort_by(|a, b| (a.order, &a.rep).cmp(&(b.order, &b.rep)));
}

pub(crate) fn generic_classes(group: &GroupHandle) -> Vec<ConjugacyClass> {
    let elements: Vec<Permutation> = group.elements().expect("checked by caller").collect();
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let gens: Vec<(Permutation, Permutation)> = group.generators().iter().map(|g| (g.inverse(), g.clone())).collect();
    let mut seen = vec![false; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let c = &elements[members[k]];
            for (ginv, g) in &gens {
                let d = ginv.then(c).then(g);
                let j = index[&d];
                if !seen[j] {
                    seen[j] = true;
                    members.push(j);
                }
            }
            k += 1;
        }
        let rep = members.iter().map(|&i| &elements[i]).min().expect("nonempty").clone();
        classes.push(ConjugacyClass {
            order: rep.order(),
            size: BigUint::from(members.len()),
            rep,
        });
    }
    sort_classes(&mut classes);
    classes
}

/// Partitions of `n` with parts in non-increasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn multiplicities(parts: &[usize]) -> HashMap<usize, usize> {
    let mut m = HashMap::new();
    for &p in parts {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}

/// Consecutive cycles of the given lengths, starting at point `offset`.
fn cycles_from(parts: &[usize], offset: usize) -> Vec<Vec<usize>> {
    let mut start = offset;
    parts
        .iter()
        .map(|&len| {
            let c: Vec<usize> = (start..start + len).collect();
            start += len;
            c
        })
        .collect()
}

fn symmetric_classes(n: usize) -> Result<Vec<ConjugacyClass>> {
    let total = factorial(n);
    let mut classes = Vec::new();
    for parts in partitions(n) {
        let rep = Permutation::from_cycles(n, &cycles_from(&parts, 0))?;
        let centralizer = multiplicities(&parts).iter().fold(BigUint::one(), |acc, (&k, &m)| {
            acc * BigUint::from(k).pow(m as u32) * factorial(m)
        });
        classes.push(ConjugacyClass {
            order: rep.order(),
            size: &total / centralizer,
            rep,
        });
    }
    sort_classes(&mut classes);
    Ok(classes)
}

/// Signed cycle types `(λ, μ)`: `λ` positive cycles, `μ` negative cycles.
fn signed_types(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for a in 0..=n {
        let lambdas = if a == 0 { vec![vec![]] } else { partitions(a) };
        let mus = if a == n { vec![vec![]] } else { partitions(n - a) };
        for l in &lambdas {
            for m in &mus {
                out.push((l.clone(), m.clone()));
            }
        }
    }
    out
}

fn signed_rep(n: usize, positive: &[usize], negative: &[usize]) -> Result<SignedPermutation> {
    let mut cycles = cycles_from(positive, 0);
    let offset: usize = positive.iter().sum();
    let neg_cycles = cycles_from(negative, offset);
    let flips: Vec<usize> = neg_cycles.iter().map(|c| c[0]).collect();
    cycles.extend(neg_cycles);
    SignedPermutation::new(
        Permutation::from_cycles(n, &cycles)?,
        SignVector::from_positions(n, &flips),
    )
}

fn hyperoctahedral_centralizer(positive: &[usize], negative: &[usize]) -> BigUint {
    let mut c = BigUint::one();
    for parts in [positive, negative] {
        for (&k, &m) in &multiplicities(parts) {
            c *= BigUint::from(2 * k).pow(m as u32) * factorial(m);
        }
    }
    c
}

fn signed_classes(n: usize, demi: bool) -> Result<Vec<ConjugacyClass>> {
    if n > MAX_RANK {
        return Err(Error::Capability(format!("rank {n} above {MAX_RANK}")));
    }
    let bn_order = factorial(n) << n;
    let mut classes = Vec::new();
    for (pos, neg) in signed_types(n) {
        if demi && neg.len() % 2 == 1 {
            continue;
        }
        let rep = signed_rep(n, &pos, &neg)?;
        let size = &bn_order / hyperoctahedral_centralizer(&pos, &neg);
        let splits = demi && neg.is_empty() && pos.iter().all(|k| k % 2 == 0);
        if splits {
            // the two halves are swapped by conjugating with an odd flip
            let flip = SignedPermutation::flip(SignVector::unit(n, 0));
            let other = flip.inverse().then(&rep).then(&flip);
            let half: BigUint = &size >> 1usize;
            for r in [rep, other] {
                let image = r.to_degree_2n();
                classes.push(ConjugacyClass {
                    order: image.order(),
                    size: half.clone(),
                    rep: image,
                });
            }
        } else {
            let image = rep.to_degree_2n();
            classes.push(ConjugacyClass {
                order: image.order(),
                size,
                rep: image,
            });
        }
    }
    sort_classes(&mut classes);
    Ok(classes)
}

pub(crate) fn shortcut_classes(shortcut: ClassShortcut) -> Result<Vec<ConjugacyClass>> {
    match shortcut {
        ClassShortcut::Symmetric(n) => symmetric_classes(n),
        ClassShortcut::Hyperoctahedral(n) => signed_classes(n, false),
        ClassShortcut::Demihyperoctahedral(n) => signed_classes(n, true),
    }
}
