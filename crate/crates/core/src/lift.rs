//! Subgroups of `B_n` surjecting onto `Σ_n`, and the lift of `Σ_n`
//! generating pairs to `D_n` generating pairs with the same orders.
//!
//! For `n ≥ 5` a subgroup `H ≤ B_n` with `π(H) = Σ_n` is a split extension
//! of `Σ_n` by `K = H ∩ ker π`, and `K` is one of `0`, the center, the even
//! subspace or everything. `K` falls out of one stabilizer chain on the
//! degree-`n` action, with trivially acting sift residues spanning `K`.

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{realize, GroupSpec};
use crate::error::{Error, Result};
use crate::genus::TripleSignature;
use crate::group::enumerate::{shard_count, visit_shard};
use crate::group::{Chain, GroupHandle};
use crate::perm::{compose_into, order_of, Permutation};
use crate::signed::{SignVector, SignedPermutation, MAX_RANK};

/// Degrees `n ≥ 168` at which the published `(2,3,8)` generators of `Σ_n`
/// do not meet the lift hypotheses. Recorded data, not re-derived.
pub const UNLIFTABLE_238_DEGREES: [usize; 17] = [
    171, 173, 174, 181, 185, 188, 194, 201, 202, 206, 209, 214, 230, 250, 257, 265, 286,
];

/// Violated lift hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftViolation {
    DegreeMismatch,
    SamePoint,
    NoFixedPoints,
    NotSameCycle,
    MissingThirdFixedPoint,
    OddOrderSigma,
    OddOrderProduct,
    NotGenerating,
}

impl LiftViolation {
    pub fn name(self) -> &'static str {
        match self {
            LiftViolation::DegreeMismatch => "degree-mismatch",
            LiftViolation::SamePoint => "same-point",
            LiftViolation::NoFixedPoints => "no-fixed-points",
            LiftViolation::NotSameCycle => "not-same-cycle",
            LiftViolation::MissingThirdFixedPoint => "missing-third-fixed-point",
            LiftViolation::OddOrderSigma => "odd-order-sigma",
            LiftViolation::OddOrderProduct => "odd-order-product",
            LiftViolation::NotGenerating => "not-generating",
        }
    }
}

impl fmt::Display for LiftViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::error::Error for LiftViolation {}

impl From<LiftViolation> for Error {
    fn from(v: LiftViolation) -> Self {
        Error::Precondition(format!("lift recipe: {v}"))
    }
}

/// A `Σ_n` generating pair `σ, τ` with two `σ`-fixed points `i, j` in one
/// cycle of `στ`, plus a third fixed point `k` when `n` is even. Points are
/// 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftRecipe {
    sigma: Permutation,
    tau: Permutation,
    i: usize,
    j: usize,
    k: Option<usize>,
}

impl LiftRecipe {
    pub fn new(
        sigma: Permutation,
        tau: Permutation,
        i: usize,
        j: usize,
        k: Option<usize>,
    ) -> Result<Self, LiftViolation> {
        let n = sigma.degree();
        if tau.degree() != n || i >= n || j >= n || k.is_some_and(|k| k >= n) {
            return Err(LiftViolation::DegreeMismatch);
        }
        if i == j {
            return Err(LiftViolation::SamePoint);
        }
        if sigma.apply(i) != i || sigma.apply(j) != j {
            return Err(LiftViolation::NoFixedPoints);
        }
        let prod = sigma.then(&tau);
        if !prod.cycle_of(i).contains(&j) {
            return Err(LiftViolation::NotSameCycle);
        }
        if n.is_multiple_of(2) {
            match k {
                Some(k) if k != i && k != j && sigma.apply(k) == k => {}
                _ => return Err(LiftViolation::MissingThirdFixedPoint),
            }
        }
        if sigma.order() % 2 == 1 {
            return Err(LiftViolation::OddOrderSigma);
        }
        if prod.order() % 2 == 1 {
            return Err(LiftViolation::OddOrderProduct);
        }
        if !generates_symmetric(&sigma, &tau) {
            return Err(LiftViolation::NotGenerating);
        }
        Ok(LiftRecipe { sigma, tau, i, j, k })
    }

    /// Picks the smallest valid `i < j` and `k`.
    pub fn find_points(sigma: Permutation, tau: Permutation) -> Result<Self, LiftViolation> {
        let (i, j, k) = choose_points(&sigma, &sigma.then(&tau)).ok_or_else(|| match sigma.fixed_points().len() {
            0 | 1 => LiftViolation::NoFixedPoints,
            _ => LiftViolation::NotSameCycle,
        })?;
        Self::new(sigma, tau, i, j, k)
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    pub fn points(&self) -> (usize, usize, Option<usize>) {
        (self.i, self.j, self.k)
    }

    pub fn rank(&self) -> usize {
        self.sigma.degree()
    }

    /// `a`: ones exactly at `i` and `j`.
    pub fn a(&self) -> SignVector {
        SignVector::from_positions(self.rank(), &[self.i, self.j])
    }

    pub fn triple(&self) -> TripleSignature {
        TripleSignature::new(self.sigma.order(), self.tau.order(), self.sigma.then(&self.tau).order())
            .expect("orders are positive")
    }
}

/// Smallest `i < j` fixed by `σ` in one cycle of `prod`, and the smallest
/// further fixed point `k` when the degree is even.
fn choose_points(sigma: &Permutation, prod: &Permutation) -> Option<(usize, usize, Option<usize>)> {
    let fixed = sigma.fixed_points();
    let even = sigma.degree().is_multiple_of(2);
    for (a, &i) in fixed.iter().enumerate() {
        let cycle = prod.cycle_of(i);
        for &j in &fixed[a + 1..] {
            if !cycle.contains(&j) {
                continue;
            }
            if !even {
                return Some((i, j, None));
            }
            if let Some(&k) = fixed.iter().find(|&&k| k != i && k != j) {
                return Some((i, j, Some(k)));
            }
        }
    }
    None
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

fn generates_symmetric(sigma: &Permutation, tau: &Permutation) -> bool {
    Chain::reaches_order(&[sigma.clone(), tau.clone()], &factorial(sigma.degree()))
}

/// `[σ, a]` and `[τ, 0]`.
pub fn lift(recipe: &LiftRecipe) -> (SignedPermutation, SignedPermutation) {
    let n = recipe.rank();
    let x = SignedPermutation::new(recipe.sigma.clone(), recipe.a()).expect("ranks agree");
    let y = SignedPermutation::new(recipe.tau.clone(), SignVector::zeros(n)).expect("ranks agree");
    (x, y)
}

/// `(xy)^k` for `k` the length of the `στ`-cycle through `i`; its sign
/// vector is zero.
pub fn product_cycle_power(recipe: &LiftRecipe) -> SignedPermutation {
    let (x, y) = lift(recipe);
    let k = recipe.sigma.then(&recipe.tau).cycle_of(recipe.i).len();
    x.then(&y).pow(k as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionClass {
    /// `K = 0`, `H ≅ Σ_n`.
    TrivialSection,
    /// `K` is the center `{0, 1…1}`, `H ≅ Σ_n × Z2`. Inside `D_n` this needs
    /// `n` even.
    CenterSplit,
    /// `K` is the even subspace and `H = D_n`.
    DemiFull,
    /// `K` is the even subspace, `b` even exactly when `σ` is even.
    AlternatingTwisted,
    /// `H = B_n`.
    Full,
}

impl ExtensionClass {
    pub fn kernel_dim(self, n: usize) -> usize {
        match self {
            ExtensionClass::TrivialSection => 0,
            ExtensionClass::CenterSplit => 1,
            ExtensionClass::DemiFull | ExtensionClass::AlternatingTwisted => n - 1,
            ExtensionClass::Full => n,
        }
    }

    /// `|H| = n! · 2^{dim K}`.
    pub fn order(self, n: usize) -> BigUint {
        factorial(n) << self.kernel_dim(n)
    }
}

/// Shape of `⟨x, y⟩` for `π`-surjective pairs in `B_n`, `n ≥ 5`.
pub fn classify(x: &SignedPermutation, y: &SignedPermutation) -> Result<ExtensionClass> {
    let n = x.rank();
    if y.rank() != n {
        return Err(Error::Structural(format!("ranks {n} and {} differ", y.rank())));
    }
    if n < 5 {
        return Err(Error::Capability(format!(
            "subgroup classification needs n ≥ 5, got {n}; use the generic engine"
        )));
    }
    if !generates_symmetric(x.pi(), y.pi()) {
        return Err(Error::Precondition("π-images do not generate Σ_n".into()));
    }
    let chain = Chain::build(&[x.clone(), y.clone()]);
    let kernel = chain.kernel();
    let in_dn = x.is_in_dn() && y.is_in_dn();
    let ones = SignVector::ones(n).bits();
    let class = match kernel.dim() {
        0 => ExtensionClass::TrivialSection,
        1 if kernel.contains(ones) => ExtensionClass::CenterSplit,
        d if d == n - 1 && kernel.is_even_weight() => {
            if in_dn {
                ExtensionClass::DemiFull
            } else {
                let twisted = |g: &SignedPermutation| g.signs().is_even() == g.pi().is_even();
                if !(twisted(x) && twisted(y)) {
                    return Err(Error::Invariant("even kernel with a mixed-parity generator".into()));
                }
                ExtensionClass::AlternatingTwisted
            }
        }
        d if d == n => ExtensionClass::Full,
        d => {
            return Err(Error::Invariant(format!(
                "kernel of dimension {d} is not one of the four possible shapes"
            )))
        }
    };
    if class == ExtensionClass::CenterSplit && in_dn && n % 2 == 1 {
        return Err(Error::Invariant("center split inside D_n with n odd".into()));
    }
    Ok(class)
}

/// Bit `k < n` stands for `a_k`, bit `n + k` for `b_k`.
type SignPair = (u128, u128);

fn mask(points: impl IntoIterator<Item = usize>) -> u128 {
    points.into_iter().fold(0, |m, i| m | 1 << i)
}

/// Basis of the GF(2) solutions of `rows · v = 0`.
fn nullspace(rows: &[SignPair], n: usize) -> Vec<SignPair> {
    let bit = |v: &SignPair, k: usize| {
        if k < n {
            v.0 >> k & 1 == 1
        } else {
            v.1 >> (k - n) & 1 == 1
        }
    };
    let xor = |a: &mut SignPair, b: &SignPair| {
        a.0 ^= b.0;
        a.1 ^= b.1;
    };
    let mut rows = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for k in 0..2 * n {
        let Some(p) = (rank..rows.len()).find(|&i| bit(&rows[i], k)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && bit(row, k) {
                xor(row, &pivot);
            }
        }
        pivots.push(k);
        rank += 1;
    }
    let unit = |k: usize| if k < n { (1u128 << k, 0) } else { (0, 1u128 << (k - n)) };
    (0..2 * n)
        .filter(|k| !pivots.contains(k))
        .map(|free| {
            let mut v = unit(free);
            for (row, &pk) in rows.iter().zip(&pivots) {
                if bit(row, free) {
                    xor(&mut v, &unit(pk));
                }
            }
            v
        })
        .collect()
}

/// Sign vectors `a`, `b` that may turn a `Σ_n` pair `(σ, τ)` into a pair
/// `[σ, a]`, `[τ, b]` of `B_n` (of `D_n` when `demi`) with the same orders.
/// Cycles whose doubled length would break an order are held to an even
/// sign sum; that leaves a GF(2) subspace, which contains every
/// order-preserving choice and some that double an order and are filtered.
#[derive(Clone, Debug)]
pub struct SignSpace {
    sigma: Permutation,
    tau: Permutation,
    demi: bool,
    basis: Vec<SignPair>,
}

impl SignSpace {
    pub fn new(sigma: &Permutation, tau: &Permutation, demi: bool) -> Result<Self> {
        let n = sigma.degree();
        if tau.degree() != n {
            return Err(Error::Structural(format!("degrees {n} and {} differ", tau.degree())));
        }
        if n > MAX_RANK {
            return Err(Error::Capability(format!("rank {n} exceeds {MAX_RANK}")));
        }
        let prod = sigma.then(tau);
        let tau_inv = tau.inverse();
        let mut rows: Vec<SignPair> = Vec::new();
        let keep = |len: usize, order: u64| !order.is_multiple_of(2 * len as u64);
        for c in sigma.cycles().into_iter().filter(|c| keep(c.len(), sigma.order())) {
            rows.push((mask(c), 0));
        }
        for c in tau.cycles().into_iter().filter(|c| keep(c.len(), tau.order())) {
            rows.push((0, mask(c)));
        }
        // signs of the product are pushed(a) + b, and pushed(a)_j = a at τ⁻¹(j)
        for c in prod.cycles().into_iter().filter(|c| keep(c.len(), prod.order())) {
            rows.push((mask(c.iter().map(|&j| tau_inv.apply(j))), mask(c.iter().copied())));
        }
        if demi {
            rows.push((mask(0..n), 0));
            rows.push((0, mask(0..n)));
        }
        Ok(SignSpace {
            sigma: sigma.clone(),
            tau: tau.clone(),
            demi,
            basis: nullspace(&rows, n),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The pair for the basis combination `selector`, if it keeps all three
    /// orders.
    pub fn pair(&self, selector: impl Fn(usize) -> bool) -> Option<(SignedPermutation, SignedPermutation)> {
        let n = self.sigma.degree();
        let (mut a, mut b) = (0u128, 0u128);
        for (i, v) in self.basis.iter().enumerate() {
            if selector(i) {
                a ^= v.0;
                b ^= v.1;
            }
        }
        let x = SignedPermutation::new(self.sigma.clone(), SignVector::from_bits(n, a)).ok()?;
        let y = SignedPermutation::new(self.tau.clone(), SignVector::from_bits(n, b)).ok()?;
        let keeps = x.order() == self.sigma.order()
            && y.order() == self.tau.order()
            && x.then(&y).order() == self.sigma.then(&self.tau).order();
        keeps.then_some((x, y))
    }

    /// Every order-preserving pair; `None` above `max_dim`.
    pub fn all_pairs(&self, max_dim: usize) -> Option<Vec<(SignedPermutation, SignedPermutation)>> {
        if self.dim() > max_dim {
            return None;
        }
        Some(
            (0u64..1 << self.dim())
                .filter_map(|m| self.pair(|i| m >> i & 1 == 1))
                .collect(),
        )
    }

    /// The target shape: all of `B_n`, or `D_n` when `demi`.
    pub fn wanted(&self) -> ExtensionClass {
        if self.demi {
            ExtensionClass::DemiFull
        } else {
            ExtensionClass::Full
        }
    }
}

/// Samples [`SignSpace`] `attempts` times for a pair generating `B_n`, or
/// `D_n` when `demi`.
pub fn choose_signs<R: Rng + ?Sized>(
    sigma: &Permutation,
    tau: &Permutation,
    demi: bool,
    attempts: usize,
    rng: &mut R,
) -> Option<(SignedPermutation, SignedPermutation)> {
    if sigma.degree() < 5 || !generates_symmetric(sigma, tau) {
        return None;
    }
    let space = SignSpace::new(sigma, tau, demi).ok()?;
    let want = space.wanted();
    (0..attempts).find_map(|_| {
        let picks: Vec<bool> = (0..space.dim()).map(|_| rng.gen_bool(0.5)).collect();
        let (x, y) = space.pair(|i| picks[i])?;
        (classify(&x, &y).ok() == Some(want)).then_some((x, y))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftSearchMode {
    Exhaustive,
    Heuristic,
}

/// Orders `(ord σ, ord τ, ord στ)` from `t` with `σ` and `στ` even.
fn role_assignments(t: TripleSignature) -> Vec<(u64, u64, u64)> {
    let e = t.entries();
    let mut out = Vec::new();
    for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
        let roles = (e[a], e[b], e[c]);
        if roles.0.is_multiple_of(2) && roles.2.is_multiple_of(2) && !out.contains(&roles) {
            out.push(roles);
        }
    }
    out
}

/// A `Σ_n` pair of type `t` meeting the lift hypotheses. In exhaustive mode
/// `None` is authoritative; `budget` and `seed` only apply to heuristic mode.
pub fn find_liftable_pair(
    n: usize,
    t: TripleSignature,
    mode: LiftSearchMode,
    budget: u64,
    seed: u64,
) -> Result<Option<LiftRecipe>> {
    if n < 5 {
        return Err(Error::Capability(format!("lifting needs n ≥ 5, got {n}")));
    }
    if !t.passes_parity_prune() {
        return Ok(None);
    }
    let sym = realize(GroupSpec::Symmetric(n))?;
    let g = &sym.group;
    let need = if n.is_multiple_of(2) { 3 } else { 2 };
    let recipe = match mode {
        LiftSearchMode::Exhaustive => exhaustive_lift(g, t, need)?,
        LiftSearchMode::Heuristic => heuristic_lift(g, t, need, budget, seed),
    };
    if let Some(r) = &recipe {
        // the returned recipe must pass validation again
        LiftRecipe::new(r.sigma.clone(), r.tau.clone(), r.i, r.j, r.k)
            .map_err(|v| Error::Invariant(format!("found recipe fails revalidation: {v}")))?;
    }
    Ok(recipe)
}

fn exhaustive_lift(g: &GroupHandle, t: TripleSignature, need: usize) -> Result<Option<LiftRecipe>> {
    if !g.within_threshold() {
        return Err(Error::Capability(format!(
            "exhaustive lift search over {} elements exceeds the threshold {}",
            g.order(),
            g.threshold()
        )));
    }
    let classes = g.class_representatives()?;
    let chain = g.chain();
    let n = g.degree();
    for (a, b, c) in role_assignments(t) {
        for class in classes.iter().filter(|cl| cl.order == a) {
            let sigma = &class.rep;
            if sigma.fixed_points().len() < need {
                continue;
            }
            let hit = (0..shard_count(chain)).into_par_iter().find_map_first(|shard| {
                let mut seen = vec![false; n];
                let mut prod = vec![0u16; n];
                let flow = visit_shard(chain, shard, |tau| {
                    if order_of(tau, &mut seen) != b {
                        return ControlFlow::Continue(());
                    }
                    compose_into(sigma.images(), tau, &mut prod);
                    if order_of(&prod, &mut seen) != c {
                        return ControlFlow::Continue(());
                    }
                    let tau = Permutation::from_raw(tau.into());
                    match LiftRecipe::find_points(sigma.clone(), tau) {
                        Ok(r) => ControlFlow::Break(r),
                        Err(_) => ControlFlow::Continue(()),
                    }
                });
                match flow {
                    ControlFlow::Break(r) => Some(r),
                    ControlFlow::Continue(()) => None,
                }
            });
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

fn heuristic_lift(g: &GroupHandle, t: TripleSignature, need: usize, budget: u64, seed: u64) -> Option<LiftRecipe> {
    const CHUNK: u64 = 256;
    let roles = role_assignments(t);
    let chunks = budget.div_ceil(CHUNK);
    (0..chunks).into_par_iter().find_map_first(|ch| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(ch);
        let trials = CHUNK.min(budget - ch * CHUNK);
        for trial in 0..trials {
            let (a, b, c) = roles[(trial as usize) % roles.len()];
            let Some(sigma) = power_to(g, a, &mut rng) else {
                continue;
            };
            if sigma.fixed_points().len() < need {
                continue;
            }
            let Some(tau) = power_to(g, b, &mut rng) else { continue };
            if sigma.then(&tau).order() != c {
                continue;
            }
            if let Ok(r) = LiftRecipe::find_points(sigma, tau) {
                return Some(r);
            }
        }
        None
    })
}

fn power_to(g: &GroupHandle, k: u64, rng: &mut ChaCha8Rng) -> Option<Permutation> {
    for _ in 0..32 {
        let z = g.random_element(rng);
        let o = z.order();
        if o.is_multiple_of(k) {
            return Some(z.pow(o / k));
        }
    }
    None
}
