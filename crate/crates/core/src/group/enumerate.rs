//! Streaming element enumeration from a stabilizer chain.
//!
//! Every element factors uniquely as `u_{k-1} · … · u_1 · u_0` with `u_l`
//! from the level-`l` transversal. Enumeration walks those factors with
//! level 0 outermost, keeping one partial product per level.

use std::ops::ControlFlow;

use super::chain::Chain;
use crate::perm::Permutation;

pub struct Elements<'a> {
    chain: &'a Chain<Permutation>,
    indices: Vec<usize>,
    partials: Vec<Box<[u16]>>,
    started: bool,
    finished: bool,
}

impl<'a> Elements<'a> {
    pub(crate) fn new(chain: &'a Chain<Permutation>) -> Self {
        let depth = chain.levels().len();
        let n = chain.degree();
        Elements {
            chain,
            indices: vec![0; depth],
            partials: vec![vec![0u16; n].into_boxed_slice(); depth],
            started: false,
            finished: false,
        }
    }

    fn refresh_from(&mut self, start: usize) {
        for l in start..self.indices.len() {
            let rep = self.chain.levels()[l].reps()[self.indices[l]].images();
            if l == 0 {
                self.partials[0].copy_from_slice(rep);
            } else {
                let (done, rest) = self.partials.split_at_mut(l);
                let prev = &done[l - 1];
                for (o, &r) in rest[0].iter_mut().zip(rep) {
                    *o = prev[r as usize];
                }
            }
        }
    }

    fn current(&self) -> Permutation {
        match self.partials.last() {
            Some(p) => Permutation::from_raw(p.clone()),
            None => Permutation::identity(self.chain.degree()),
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
            self.refresh_from(0);
            if self.indices.is_empty() {
                self.finished = true;
            }
            return Some(self.current());
        }
        let levels = self.chain.levels();
        let mut l = self.indices.len();
        loop {
            if l == 0 {
                self.finished = true;
                return None;
            }
            l -= 1;
            self.indices[l] += 1;
            if self.indices[l] < levels[l].reps().len() {
                break;
            }
            self.indices[l] = 0;
        }
        self.refresh_from(l);
        Some(self.current())
    }
}

/// Number of top-level shards (the size of the first basic orbit).
pub(crate) fn shard_count(chain: &Chain<Permutation>) -> usize {
    chain.levels().first().map_or(1, |l| l.reps().len())
}

/// Visits, in enumeration order, every element whose level-0 factor is
/// `u_0 = reps[shard]`. Stops early when `visit` breaks.
pub(crate) fn visit_shard<B>(
    chain: &Chain<Permutation>,
    shard: usize,
    mut visit: impl FnMut(&[u16]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let levels = chain.levels();
    let n = chain.degree();
    if levels.is_empty() {
        let id: Vec<u16> = (0..n as u16).collect();
        return visit(&id);
    }
    let mut partials = vec![vec![0u16; n]; levels.len()];
    partials[0].copy_from_slice(levels[0].reps()[shard].images());
    fn rec<B>(
        chain: &Chain<Permutation>,
        l: usize,
        partials: &mut [Vec<u16>],
        visit: &mut impl FnMut(&[u16]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let levels = chain.levels();
        if l == levels.len() {
            return visit(&partials[l - 1]);
        }
        for rep in levels[l].reps() {
            {
                let (done, rest) = partials.split_at_mut(l);
                let prev = &done[l - 1];
                for (o, &r) in rest[0].iter_mut().zip(rep.images()) {
                    *o = prev[r as usize];
                }
            }
            rec(chain, l + 1, partials, visit)?;
        }
        ControlFlow::Continue(())
    }
    rec(chain, 1, &mut partials, &mut visit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupHandle;
    use std::collections::HashSet;

    #[test]
    fn shards_cover_the_stream_in_order() {
        let g = GroupHandle::build(vec![
            Permutation::parse(5, "(1 2)").unwrap(),
            Permutation::parse(5, "(1 2 3 4 5)").unwrap(),
        ])
        .unwrap();
        let stream: Vec<Permutation> = g.elements().unwrap().collect();
        let mut sharded = Vec::new();
        for s in 0..shard_count(g.chain()) {
            let _ = visit_shard::<()>(g.chain(), s, |x| {
                sharded.push(Permutation::from_raw(x.into()));
                ControlFlow::Continue(())
            });
        }
        assert_eq!(stream, sharded);
        let distinct: HashSet<_> = stream.iter().collect();
        assert_eq!(distinct.len(), 120);
        assert!(stream.iter().all(|x| g.contains(x)));
    }

    #[test]
    fn trivial_group_has_one_element() {
        let g = GroupHandle::build(vec![Permutation::identity(3)]).unwrap();
        assert_eq!(g.elements().unwrap().count(), 1);
    }
}
