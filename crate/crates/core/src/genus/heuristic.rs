use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{PairWitness, Provenance, TripleSignature};
use crate::group::GroupHandle;
use crate::perm::Permutation;

/// Trials per independently seeded stream.
pub const HEURISTIC_CHUNK: u64 = 256;

/// Steps of one local-search walk before it restarts from fresh elements.
pub const WALK_LENGTH: u64 = 128;

/// Resamples allowed when powering a random element down to a given order.
const POWER_ATTEMPTS: usize = 32;

fn element_of_order(g: &GroupHandle, k: u64, rng: &mut ChaCha8Rng) -> Option<Permutation> {
    for _ in 0..POWER_ATTEMPTS {
        let z = g.random_element(rng);
        let o = z.order();
        if o.is_multiple_of(k) {
            return Some(z.pow(o / k));
        }
    }
    None
}

/// Randomized search for a pair of type `t` using at most `budget` trials.
/// Stream `c` uses seed `seed` on ChaCha stream `c`; the first stream with a
/// hit wins, so the result does not depend on the thread count.
pub fn heuristic_pair(g: &GroupHandle, t: TripleSignature, budget: u64, seed: u64) -> Option<PairWitness> {
    let chunks = budget.div_ceil(HEURISTIC_CHUNK);
    (0..chunks).into_par_iter().find_map_first(|c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        let trials = HEURISTIC_CHUNK.min(budget - c * HEURISTIC_CHUNK);
        for _ in 0..trials {
            let Some(x) = element_of_order(g, t.p(), &mut rng) else {
                continue;
            };
            let Some(y) = element_of_order(g, t.q(), &mut rng) else {
                continue;
            };
            if x.then(&y).order() == t.r() && g.generates(&x, &y) {
                return Some(PairWitness {
                    triple: t,
                    x,
                    y,
                    provenance: Provenance::Heuristic,
                });
            }
        }
        None
    })
}

/// Distance of `x`, `y` from a pair of type `t`: points on cycles of `xy`
/// whose length does not divide `r`, plus surplus orbits of `<x, y>`, plus
/// one if the order still differs from `r`.
fn penalty(x: &Permutation, y: &Permutation, r: u64, target_orbits: usize, dsu: &mut Vec<usize>) -> u64 {
    let xy = x.then(y);
    let mut bad = 0;
    let mut order = 1u64;
    for c in xy.cycles() {
        let len = c.len() as u64;
        if !r.is_multiple_of(len) {
            bad += len;
        } else {
            order = num_integer::lcm(order, len);
        }
    }
    let n = x.degree();
    dsu.clear();
    dsu.extend(0..n);
    fn find(d: &mut [usize], mut a: usize) -> usize {
        while d[a] != a {
            d[a] = d[d[a]];
            a = d[a];
        }
        a
    }
    let mut orbits = n;
    for g in [x, y] {
        for i in 0..n {
            let (a, b) = (find(dsu, i), find(dsu, g.apply(i)));
            if a != b {
                dsu[a] = b;
                orbits -= 1;
            }
        }
    }
    bad + orbits.saturating_sub(target_orbits) as u64 + u64::from(bad == 0 && order != r)
}

/// Candidates drawn per start. A transitive pair needs `x`, `y`, `xy` to
/// have few cycles in total, so starts favour high support.
const START_SAMPLES: usize = 8;

/// Walk `w` accepts candidates within `w % START_SLACK` cycles of the best.
const START_SLACK: u64 = 3;

fn high_support(g: &GroupHandle, k: u64, slack: usize, rng: &mut ChaCha8Rng) -> Option<Permutation> {
    let mut c: Vec<Permutation> = (0..START_SAMPLES).filter_map(|_| element_of_order(g, k, rng)).collect();
    let best = c.iter().map(|z| z.cycle_type().num_cycles()).min()?;
    c.retain(|z| z.cycle_type().num_cycles() <= best + slack);
    // uniform over cycle types, so rarer shapes still get tried
    let mut types: Vec<_> = c.iter().map(|z| z.cycle_type()).collect();
    types.sort_by_key(|ct| ct.lengths());
    types.dedup();
    let pick = types.swap_remove(rng.gen_range(0..types.len()));
    c.into_iter().find(|z| z.cycle_type() == pick)
}

/// Conjugation fixes parity, so a start with both elements even can never
/// generate a group with odd elements.
fn start_pair(
    g: &GroupHandle,
    t: TripleSignature,
    odd_group: bool,
    slack: usize,
    rng: &mut ChaCha8Rng,
) -> Option<(Permutation, Permutation)> {
    for _ in 0..POWER_ATTEMPTS {
        let x = high_support(g, t.p(), slack, rng)?;
        let y = high_support(g, t.q(), slack, rng)?;
        if !odd_group || !x.is_even() || !y.is_even() {
            return Some((x, y));
        }
    }
    None
}

/// Local search for a pair of type `t`: starting from random elements of
/// orders `p` and `q`, conjugates one of them by a random element of `moves`
/// (involutions of `g`) and keeps the step unless it moves `xy` further from
/// order `r`. Walks of [`WALK_LENGTH`] steps run on independent streams as in
/// [`heuristic_pair`]; `budget` bounds the total number of steps.
pub fn local_search_pair(
    g: &GroupHandle,
    t: TripleSignature,
    moves: &[Permutation],
    budget: u64,
    seed: u64,
) -> Option<PairWitness> {
    local_search(g, t, moves, budget, seed, |x, y, _| {
        g.generates(x, y).then(|| PairWitness {
            triple: t,
            x: x.clone(),
            y: y.clone(),
            provenance: Provenance::Heuristic,
        })
    })
}

/// [`local_search_pair`] with a caller-supplied acceptance step: every state
/// of type `t` is offered to `finish`, and the walk continues through such
/// states until `finish` returns a value.
pub fn local_search<T: Send>(
    g: &GroupHandle,
    t: TripleSignature,
    moves: &[Permutation],
    budget: u64,
    seed: u64,
    finish: impl Fn(&Permutation, &Permutation, &mut ChaCha8Rng) -> Option<T> + Sync,
) -> Option<T> {
    if moves.is_empty() {
        return None;
    }
    let mut labels = g.orbit_labels().to_vec();
    labels.sort_unstable();
    labels.dedup();
    let target_orbits = labels.len();
    let odd_group = g.generators().iter().any(|s| !s.is_even());
    let walks = budget.div_ceil(WALK_LENGTH);
    (0..walks).into_par_iter().find_map_first(|w| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(w);
        let mut dsu = Vec::new();
        let (mut x, mut y) = start_pair(g, t, odd_group, (w % START_SLACK) as usize, &mut rng)?;
        let mut score = penalty(&x, &y, t.r(), target_orbits, &mut dsu);
        let mut offered = false;
        let steps = WALK_LENGTH.min(budget - w * WALK_LENGTH);
        for _ in 0..steps {
            if score == 0 && !offered {
                if let Some(found) = finish(&x, &y, &mut rng) {
                    return Some(found);
                }
                offered = true;
            }
            let m = &moves[rng.gen_range(0..moves.len())];
            let move_x = rng.gen_bool(0.5);
            let (nx, ny) = if move_x {
                (m.then(&x).then(m), y.clone())
            } else {
                (x.clone(), m.then(&y).then(m))
            };
            let s = penalty(&nx, &ny, t.r(), target_orbits, &mut dsu);
            if s <= score {
                offered &= nx == x && ny == y;
                (x, y, score) = (nx, ny, s);
            }
        }
        None
    })
}
