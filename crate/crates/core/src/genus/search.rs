use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{GenusResult, PairWitness, Provenance, Rational, TripleSignature};
use crate::catalog::GroupSpec;
use crate::error::{Error, Result};
use crate::group::enumerate::{shard_count, visit_shard};
use crate::group::GroupHandle;
use crate::perm::{compose_into, order_of, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the ambient rayon pool.
    pub jobs: usize,
    /// Skip spherical triples whose triangle group is smaller than `|G|`.
    pub spherical_prune: bool,
    /// Skip triples with two or more odd entries.
    pub parity_prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 0,
            spherical_prune: true,
            parity_prune: false,
        }
    }
}

impl SearchOptions {
    pub fn for_spec(spec: GroupSpec) -> Self {
        SearchOptions {
            parity_prune: spec.parity_prune(),
            ..Self::default()
        }
    }
}

/// Runs `f` on a pool with `jobs` threads (the ambient pool when 0).
pub(crate) fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// All triples over `spectrum` in enumeration order.
pub fn enumerate_triples(spectrum: &BTreeSet<u64>, parity_prune: bool) -> std::vec::IntoIter<TripleSignature> {
    let s: Vec<u64> = spectrum.iter().copied().filter(|&k| k > 0).collect();
    let mut out = Vec::new();
    for (i, &p) in s.iter().enumerate() {
        for (j, &q) in s.iter().enumerate().skip(i) {
            for &r in &s[j..] {
                let t = TripleSignature::from_sorted(p, q, r);
                if !parity_prune || t.passes_parity_prune() {
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    out.into_iter()
}

/// Exhaustive search for a generating pair of type `t`. The first entry
/// role goes to the order with the fewest classes, which ranges over class
/// representatives; the second streams over all of `G`.
pub fn search_triple(g: &GroupHandle, t: TripleSignature) -> Result<Option<PairWitness>> {
    if !g.within_threshold() {
        return Err(Error::Capability(format!(
            "exhaustive search over {} elements exceeds the threshold {}; use heuristic mode",
            g.order(),
            g.threshold()
        )));
    }
    let classes = g.class_representatives()?;
    if t.p() == 1 {
        // x = 1 forces G = ⟨y⟩ cyclic of order q = r
        if t.q() != t.r() || g.order_u64() != Some(t.q()) {
            return Ok(None);
        }
        return Ok(classes.iter().find(|c| c.order == t.q()).map(|c| PairWitness {
            triple: t,
            x: Permutation::identity(g.degree()),
            y: c.rep.clone(),
            provenance: Provenance::Exhaustive,
        }));
    }
    let count = |k: u64| classes.iter().filter(|c| c.order == k).count();
    let e = t.entries();
    let a_idx = (0..3).min_by_key(|&i| (count(e[i]), e[i])).expect("three entries");
    let rest: Vec<u64> = (0..3).filter(|&i| i != a_idx).map(|i| e[i]).collect();
    let (a, b, c) = (e[a_idx], rest[0], rest[1]);

    let chain = g.chain();
    let shards = shard_count(chain);
    let n = g.degree();
    for class in classes.iter().filter(|cl| cl.order == a) {
        let x = &class.rep;
        let hit = (0..shards).into_par_iter().find_map_first(|shard| {
            let mut seen = vec![false; n];
            let mut xy = vec![0u16; n];
            let flow = visit_shard(chain, shard, |y| {
                if order_of(y, &mut seen) != b {
                    return ControlFlow::Continue(());
                }
                compose_into(x.images(), y, &mut xy);
                if order_of(&xy, &mut seen) != c {
                    return ControlFlow::Continue(());
                }
                let y = Permutation::from_raw(y.into());
                if g.generates(x, &y) {
                    ControlFlow::Break(y)
                } else {
                    ControlFlow::Continue(())
                }
            });
            match flow {
                ControlFlow::Break(y) => Some(y),
                ControlFlow::Continue(()) => None,
            }
        });
        if let Some(y) = hit {
            let w = PairWitness::canonical(x.clone(), y, Provenance::Exhaustive)?;
            if w.triple != t {
                return Err(Error::Invariant(format!(
                    "witness has type {} instead of {t}",
                    w.triple
                )));
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Walks the triples in enumeration order and stops at the first one with a
/// generating pair.
pub fn minimal_pair(g: &GroupHandle, spec: GroupSpec, opts: &SearchOptions) -> Result<GenusResult> {
    with_jobs(opts.jobs, || minimal_pair_inner(g, spec, opts))?
}

fn minimal_pair_inner(g: &GroupHandle, spec: GroupSpec, opts: &SearchOptions) -> Result<GenusResult> {
    let spectrum = g.order_spectrum()?;
    let order = g
        .order_u64()
        .and_then(|o| o.to_i128())
        .ok_or_else(|| Error::Capability(format!("group order {} too large for exhaustive search", g.order())))?;
    let order_q = Rational::from_integer(order);
    for t in enumerate_triples(&spectrum, opts.parity_prune) {
        if opts.spherical_prune && t.spherical_order_bound().is_some_and(|b| b < order_q) {
            continue;
        }
        if let Some(w) = search_triple(g, t)? {
            if spec.parity_prune() && !w.triple.passes_parity_prune() {
                return Err(Error::Invariant(format!(
                    "{spec} pair of type {} has two odd orders",
                    w.triple
                )));
            }
            return GenusResult::from_witness(spec, g.order().clone(), w, true);
        }
    }
    Err(Error::Invariant(format!("{spec} has no generating pair")))
}
