//! Genus pipeline, JSON reports, witness files and table reproduction.

use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::catalog::{realize, GroupSpec, Realized};
use crate::error::{Error, Result};
use crate::genus::{
    enumerate_triples, heuristic_pair, local_search, local_search_pair, minimal_pair, sandwich_bound, search_triple,
    Exactness, GenusResult, PairWitness, Provenance, SearchOptions, TripleKind, TripleSignature,
};
use crate::group::DEFAULT_ENUMERATION_THRESHOLD;
use crate::lift::{choose_signs, find_liftable_pair, lift, LiftSearchMode};
use crate::tables::{self, ExpectedRow, RowCheck, TableKind, Tier};

/// Decimal-string serde for big integers.
mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom(format!("bad integer {s:?}")))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            match Option::<String>::deserialize(d)? {
                None => Ok(None),
                Some(s) => BigUint::parse_bytes(s.as_bytes(), 10)
                    .map(Some)
                    .ok_or_else(|| D::Error::custom(format!("bad integer {s:?}"))),
            }
        }
    }
}

/// Largest entry tried when walking triples without a known spectrum.
pub const HEURISTIC_MAX_ENTRY: u64 = 30;

pub const DEFAULT_BUDGET: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineParams {
    pub threshold: u64,
    pub heuristic: bool,
    pub budget: u64,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for EngineParams {
    fn default() -> Self {
        EngineParams {
            threshold: DEFAULT_ENUMERATION_THRESHOLD,
            heuristic: false,
            budget: DEFAULT_BUDGET,
            seed: 0,
            jobs: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    SandwichBound,
    Lifted,
    Heuristic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::SandwichBound => "sandwich-bound",
            Method::Lifted => "lifted",
            Method::Heuristic => "heuristic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub x: String,
    pub y: String,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PaperStatus {
    Match,
    Mismatch,
    NotInPaper,
}

impl fmt::Display for PaperStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PaperStatus::Match => "match",
            PaperStatus::Mismatch => "mismatch",
            PaperStatus::NotInPaper => "not-in-paper",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperComparison {
    pub status: PaperStatus,
    pub triple: Option<TripleSignature>,
    #[serde(with = "decimal::option")]
    pub genus: Option<BigUint>,
}

/// One group's result. Field order is the serialized order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub group: String,
    #[serde(with = "decimal")]
    pub order: BigUint,
    pub triple: TripleSignature,
    #[serde(with = "decimal")]
    pub genus: BigUint,
    pub exactness: Exactness,
    pub method: Method,
    pub witness: WitnessRecord,
    pub paper: PaperComparison,
    pub notes: Vec<String>,
    pub timing_ms: u64,
    pub params: EngineParams,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))
    }

    pub fn spec(&self) -> Result<GroupSpec> {
        self.group.parse()
    }

    /// `n,family,triple,genus`, in the layout of the `Σ_n/B_n/D_n` table.
    pub fn csv_row(&self) -> String {
        let (n, family) = match self.spec() {
            Ok(GroupSpec::Symmetric(n)) => (n.to_string(), "S".to_string()),
            Ok(GroupSpec::B(n)) => (n.to_string(), "B".to_string()),
            Ok(GroupSpec::D(n)) => (n.to_string(), "D".to_string()),
            Ok(GroupSpec::Dihedral(n)) => (n.to_string(), "Dih".to_string()),
            _ => (String::new(), self.group.clone()),
        };
        format!("{n},{family},\"{}\",{}", self.triple, self.genus)
    }

    pub fn witness_file(&self) -> WitnessFile {
        WitnessFile {
            format: WITNESS_FORMAT.to_string(),
            version: WITNESS_VERSION,
            group: self.group.clone(),
            triple: self.triple,
            x: self.witness.x.clone(),
            y: self.witness.y.clone(),
            provenance: self.witness.provenance,
        }
    }
}

pub const CSV_HEADER: &str = "n,family,triple,genus";

pub const WITNESS_FORMAT: &str = "ssgenus-witness";
pub const WITNESS_VERSION: u32 = 1;

/// Serialized generating pair: cycle notation, or `[cycles | digits]` for
/// signed permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub format: String,
    pub version: u32,
    pub group: String,
    pub triple: TripleSignature,
    pub x: String,
    pub y: String,
    pub provenance: Provenance,
}

impl WitnessFile {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Malformed input is a parse error.
    pub fn from_json(text: &str) -> Result<Self> {
        let w: WitnessFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("witness file: {e}")))?;
        if w.format != WITNESS_FORMAT {
            return Err(Error::Parse(format!(
                "witness format {:?} is not {WITNESS_FORMAT:?}",
                w.format
            )));
        }
        if w.version != WITNESS_VERSION {
            return Err(Error::Parse(format!("unsupported witness version {}", w.version)));
        }
        Ok(w)
    }

    /// Rebuilds the group and re-checks orders and generation. Returns the
    /// genus the witness certifies as an upper bound.
    pub fn verify(&self) -> Result<BigUint> {
        let spec: GroupSpec = self.group.parse()?;
        let r = realize(spec)?;
        let x = r.parse_element(&self.x)?;
        let y = r.parse_element(&self.y)?;
        let w = PairWitness {
            triple: self.triple,
            x,
            y,
            provenance: self.provenance,
        };
        w.verify(&r.group)?;
        self.triple.genus(r.group.order())
    }
}

fn paper_comparison(spec: GroupSpec, triple: TripleSignature, genus: &BigUint) -> PaperComparison {
    let row = tables::sporadic_rows()
        .into_iter()
        .chain(tables::exceptional_rows())
        .find(|r| r.spec == spec);
    match row {
        Some(row) => {
            let expected = row.genus();
            let status = if row.triple == triple && &expected == genus {
                PaperStatus::Match
            } else {
                PaperStatus::Mismatch
            };
            PaperComparison {
                status,
                triple: Some(row.triple),
                genus: Some(expected),
            }
        }
        None => PaperComparison {
            status: PaperStatus::NotInPaper,
            triple: None,
            genus: None,
        },
    }
}

fn build_report(
    r: &Realized,
    result: &GenusResult,
    method: Method,
    mut notes: Vec<String>,
    start: Instant,
    params: &EngineParams,
) -> Result<Report> {
    if let Err(e) = result.witness.verify(&r.group) {
        return Err(Error::Invariant(format!(
            "self-produced witness failed re-verification: {e}"
        )));
    }
    if let Some(note) = r.spec.redirect_note() {
        notes.insert(0, note.to_string());
    }
    Ok(Report {
        group: r.spec.to_string(),
        order: result.order.clone(),
        triple: result.triple,
        genus: result.genus.clone(),
        exactness: result.exactness,
        method,
        witness: WitnessRecord {
            x: r.format_element(&result.witness.x),
            y: r.format_element(&result.witness.y),
            provenance: result.witness.provenance,
        },
        paper: paper_comparison(r.spec, result.triple, &result.genus),
        notes,
        timing_ms: start.elapsed().as_millis() as u64,
        params: params.clone(),
    })
}

/// Triples tried by the randomized walk: hyperbolic, entries up to
/// [`HEURISTIC_MAX_ENTRY`], with the abelianization constraints of the family.
fn heuristic_candidates(spec: GroupSpec) -> Vec<TripleSignature> {
    let entries = (2..=HEURISTIC_MAX_ENTRY).collect();
    enumerate_triples(&entries, spec.parity_prune())
        .filter(|t| t.kind() == TripleKind::Hyperbolic)
        .filter(|t| !matches!(spec, GroupSpec::B(_)) || t.odd_entries() == 0)
        .collect()
}

/// A witness for `t`: through the lift for `D_n` when possible, then by
/// local search over reflection conjugates, then by plain sampling.
fn randomized_witness(r: &Realized, t: TripleSignature, params: &EngineParams) -> Result<Option<PairWitness>> {
    if let GroupSpec::D(n) = r.spec {
        if n >= 5 {
            if let Some(recipe) = find_liftable_pair(n, t, LiftSearchMode::Heuristic, params.budget, params.seed)? {
                let (x, y) = lift(&recipe);
                let w = PairWitness::canonical(x.to_degree_2n(), y.to_degree_2n(), Provenance::Lifted)?;
                return Ok(Some(w));
            }
        }
    }
    if let GroupSpec::B(n) | GroupSpec::D(n) = r.spec {
        if n >= 5 {
            if let Some(w) = signed_from_symmetric(n, matches!(r.spec, GroupSpec::D(_)), t, params)? {
                return Ok(Some(w));
            }
        }
    }
    let moves = r.reflections();
    if let Some(w) = local_search_pair(&r.group, t, &moves, params.budget, params.seed) {
        return Ok(Some(w));
    }
    Ok(heuristic_pair(&r.group, t, params.budget, params.seed))
}

/// Sign samples per `Σ_n` pair.
const SIGN_SAMPLES: usize = 16;

/// A `Σ_n` pair of type `t` from local search that admits signs making it
/// a generating pair of `B_n`, or `D_n` when `demi`.
fn signed_from_symmetric(
    n: usize,
    demi: bool,
    t: TripleSignature,
    params: &EngineParams,
) -> Result<Option<PairWitness>> {
    let sym = realize(GroupSpec::Symmetric(n))?;
    let moves = sym.reflections();
    let pair = local_search(&sym.group, t, &moves, params.budget, params.seed, |x, y, rng| {
        choose_signs(x, y, demi, SIGN_SAMPLES, rng)
    });
    match pair {
        Some((x, y)) => PairWitness::canonical(x.to_degree_2n(), y.to_degree_2n(), Provenance::Heuristic).map(Some),
        None => Ok(None),
    }
}

/// The full pipeline: exhaustive search within the threshold, otherwise (with
/// `heuristic` set) a sandwich-forced triple for `D_n` or a randomized walk.
pub fn run_genus(spec: GroupSpec, params: &EngineParams) -> Result<Report> {
    let start = Instant::now();
    let mut r = realize(spec)?;
    r.group.set_threshold(params.threshold);
    if r.group.within_threshold() {
        let opts = SearchOptions {
            jobs: params.jobs,
            ..SearchOptions::for_spec(spec)
        };
        let result = minimal_pair(&r.group, r.spec, &opts)?;
        return build_report(&r, &result, Method::Exhaustive, vec![], start, params);
    }
    if !params.heuristic {
        return Err(Error::Capability(format!(
            "{spec} has order {} above the threshold {}; rerun with --heuristic",
            r.group.order(),
            params.threshold
        )));
    }
    crate::genus::with_jobs(params.jobs, || randomized_pipeline(&r, params, start))?
}

fn randomized_pipeline(r: &Realized, params: &EngineParams, start: Instant) -> Result<Report> {
    let spec = r.spec;
    if let Some(bound) = sandwich_bound(spec, |g| (g != spec).then(|| tables::published_triple(g)).flatten()) {
        if let Some(forced) = bound.forced() {
            if let Some(w) = randomized_witness(r, forced, params)? {
                let mut notes = vec![];
                if let Some((g, t)) = &bound.best {
                    notes.push(format!("quotient {g} has published minimal triple {t}"));
                }
                if let Some((g, t)) = &bound.worst {
                    notes.push(format!("cover {g} has published minimal triple {t}"));
                }
                let result = GenusResult::from_witness(spec, r.group.order().clone(), w, true)?;
                return build_report(r, &result, Method::SandwichBound, notes, start, params);
            }
        }
    }
    for t in heuristic_candidates(spec) {
        if let Some(w) = randomized_witness(r, t, params)? {
            let method = if w.provenance == Provenance::Lifted {
                Method::Lifted
            } else {
                Method::Heuristic
            };
            let notes = vec![format!(
                "randomized search with budget {} per triple; failures on earlier triples are not proofs of absence",
                params.budget
            )];
            let result = GenusResult::from_witness(spec, r.group.order().clone(), w, false)?;
            return build_report(r, &result, method, notes, start, params);
        }
    }
    Err(Error::Capability(format!(
        "no witness found for {spec} within budget {} per triple",
        params.budget
    )))
}

/// Lifts a `Σ_n` pair of type `t` to a `D_n` witness.
pub fn run_lift(n: usize, t: TripleSignature, params: &EngineParams) -> Result<Report> {
    let start = Instant::now();
    let spec = GroupSpec::D(n).validate()?;
    let sym_order = GroupSpec::Symmetric(n).closed_order();
    let mode = if sym_order <= BigUint::from(params.threshold) {
        LiftSearchMode::Exhaustive
    } else if params.heuristic {
        LiftSearchMode::Heuristic
    } else {
        return Err(Error::Capability(format!(
            "Σ{n} has order {sym_order} above the threshold; rerun with --heuristic"
        )));
    };
    let recipe = crate::genus::with_jobs(params.jobs, || {
        find_liftable_pair(n, t, mode, params.budget, params.seed)
    })??
    .ok_or_else(|| {
        let why = if mode == LiftSearchMode::Exhaustive {
            "no Σ_n pair of this type meets the lift hypotheses"
        } else {
            "no liftable pair found within the budget"
        };
        Error::Capability(format!("lift of {t} to D{n}: {why}"))
    })?;
    let (x, y) = lift(&recipe);
    let class = crate::lift::classify(&x, &y)?;
    if class != crate::lift::ExtensionClass::DemiFull {
        return Err(Error::Invariant(format!("lifted pair classified as {class:?}")));
    }
    let r = realize(spec)?;
    let w = PairWitness::canonical(x.to_degree_2n(), y.to_degree_2n(), Provenance::Lifted)?;
    let result = GenusResult::from_witness(spec, r.group.order().clone(), w, false)?;
    let (i, j, k) = recipe.points();
    let mut notes = vec![format!(
        "sigma = {}, tau = {}, i = {}, j = {}",
        recipe.sigma(),
        recipe.tau(),
        i + 1,
        j + 1
    )];
    if let Some(k) = k {
        notes.push(format!("third fixed point k = {}", k + 1));
    }
    build_report(&r, &result, Method::Lifted, notes, start, params)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub group: String,
    #[serde(with = "decimal")]
    pub order: BigUint,
    pub classes: usize,
    pub orders: Vec<u64>,
}

pub fn run_spectrum(spec: GroupSpec, params: &EngineParams) -> Result<Spectrum> {
    let mut r = realize(spec)?;
    r.group.set_threshold(params.threshold);
    let classes = r.group.class_representatives()?;
    Ok(Spectrum {
        group: spec.to_string(),
        order: r.group.order().clone(),
        classes: classes.len(),
        orders: r.group.order_spectrum()?.into_iter().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Match,
    Mismatch,
    Error,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Match => "match",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowOutcome {
    pub group: String,
    pub expected_triple: TripleSignature,
    #[serde(with = "decimal")]
    pub expected_genus: BigUint,
    pub status: RowStatus,
    pub verify_only: bool,
    pub report: Option<Report>,
    pub error: Option<String>,
}

fn verify_only_row(row: &ExpectedRow, params: &EngineParams) -> Result<Report> {
    let start = Instant::now();
    let r = realize(row.spec)?;
    let w = crate::genus::with_jobs(params.jobs, || {
        heuristic_pair(&r.group, row.triple, params.budget, params.seed)
    })?
    .ok_or_else(|| Error::Capability(format!("no {} witness for {} within budget", row.triple, row.spec)))?;
    let result = GenusResult::from_witness(row.spec, r.group.order().clone(), w, false)?;
    let notes = vec!["verify-only: witness re-verified, minimality not searched".to_string()];
    build_report(&r, &result, Method::Heuristic, notes, start, params)
}

/// Recomputes every row of `kind` in `tier` and diffs triple and genus.
pub fn reproduce_table(kind: TableKind, tier: Tier, params: &EngineParams) -> Vec<RowOutcome> {
    let mut out = Vec::new();
    for (row, check) in tables::tier_rows(kind, tier) {
        let mut p = params.clone();
        p.threshold = p.threshold.max(tier.threshold());
        let computed = match check {
            RowCheck::Search => run_genus(row.spec, &p),
            RowCheck::VerifyOnly => verify_only_row(&row, &p),
        };
        let expected_genus = row.genus();
        let (status, report, error) = match computed {
            Ok(rep) => {
                let ok = rep.triple == row.triple && rep.genus == expected_genus;
                (if ok { RowStatus::Match } else { RowStatus::Mismatch }, Some(rep), None)
            }
            Err(e) => (RowStatus::Error, None, Some(e.to_string())),
        };
        out.push(RowOutcome {
            group: row.spec.to_string(),
            expected_triple: row.triple,
            expected_genus,
            status,
            verify_only: check == RowCheck::VerifyOnly,
            report,
            error,
        });
    }
    out
}

/// Checks `t` directly, as a cross-check on a tie-broken minimum.
pub fn triple_has_witness(spec: GroupSpec, t: TripleSignature, params: &EngineParams) -> Result<bool> {
    let mut r = realize(spec)?;
    r.group.set_threshold(params.threshold);
    Ok(search_triple(&r.group, t)?.is_some())
}
