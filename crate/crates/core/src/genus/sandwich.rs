use super::TripleSignature;
use crate::catalog::{covers_of, quotient_images, GroupSpec};

/// Bracket on the minimal triple of a group from known results on related
/// groups. A pair of `G` maps onto a pair of `G/N` whose orders divide
/// `(p,q,r)`, so a quotient can do no worse and a cover no better.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichBound {
    /// Best conceivable triple: the minimal triple of a quotient.
    pub best: Option<(GroupSpec, TripleSignature)>,
    /// Worst possible triple: the minimal triple of a cover.
    pub worst: Option<(GroupSpec, TripleSignature)>,
}

impl SandwichBound {
    /// The minimal triple when the two bounds have the same reciprocal sum.
    /// The cover's pair then projects onto a pair of exactly its own type.
    pub fn forced(&self) -> Option<TripleSignature> {
        match (&self.best, &self.worst) {
            (Some((_, b)), Some((_, w))) if b.reciprocal_sum() == w.reciprocal_sum() => Some(*w),
            _ => None,
        }
    }
}

/// Combines `known` minimal triples of `spec` itself, its quotients and its
/// covers. Returns `None` when nothing relevant is known.
pub fn sandwich_bound(spec: GroupSpec, known: impl Fn(GroupSpec) -> Option<TripleSignature>) -> Option<SandwichBound> {
    let mut best: Option<(GroupSpec, TripleSignature)> = None;
    let mut worst: Option<(GroupSpec, TripleSignature)> = None;
    let mut quotients = vec![spec];
    quotients.extend(quotient_images(spec).ok()?.into_iter().map(|q| q.target));
    let mut covers = vec![spec];
    covers.extend(covers_of(spec));
    for q in quotients {
        if let Some(t) = known(q) {
            // the tightest ceiling on the reciprocal sum
            if best
                .as_ref()
                .is_none_or(|(_, b)| t.reciprocal_sum() < b.reciprocal_sum())
            {
                best = Some((q, t));
            }
        }
    }
    for c in covers {
        if let Some(t) = known(c) {
            if worst
                .as_ref()
                .is_none_or(|(_, w)| t.reciprocal_sum() > w.reciprocal_sum())
            {
                worst = Some((c, t));
            }
        }
    }
    if best.is_none() && worst.is_none() {
        return None;
    }
    Some(SandwichBound { best, worst })
}
