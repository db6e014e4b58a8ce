//! Exhaustive checks of product bounds and simultaneous-placement lemmas.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use pebble_core::families::{build_tk, cartesian_product, path, product_index};
use pebble_core::number::{group_for, rooted_in_group, Mode};
use pebble_core::properties::{check_property_with, Property, PropertyReport};
use pebble_core::sweep::{sweep, SweepLimits};
use pebble_core::{
    Compositions, DemandVector, Distribution, EngineError, EngineOptions, Graph, PebblingNumber,
    PropertyError, SweepError, SymmetryGroup, UnsolvableAtlas, VertexId,
};
use rayon::prelude::*;
use thiserror::Error;

/// Candidates examined per parallel batch. Fixed so that counts and the
/// first counterexample do not depend on the worker count.
const BATCH: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    /// A state budget ran out before a decision.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub claim: String,
    /// Instance parameters in a fixed order.
    pub params: Vec<(String, String)>,
    pub verdict: Verdict,
    pub counterexample: Option<Distribution>,
    /// Graph the counterexample lives on.
    pub host: Graph,
    pub distributions_checked: u64,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Graph(#[from] pebble_core::GraphError),
    #[error("the auxiliary graph fails the odd two-pebbling property")]
    Hypothesis(Box<PropertyReport>),
    #[error("the lemma fixes the pebble count at {expected}, got {got}")]
    PebbleCount { expected: u64, got: u64 },
    #[error("k must be at least {min} for this lemma, got {got}")]
    BadK { min: usize, got: usize },
    #[error("pebble count {0} is too large to enumerate")]
    TooManyPebbles(u64),
}

impl From<PropertyError> for HarnessError {
    fn from(e: PropertyError) -> Self {
        match e {
            PropertyError::Engine(e) => HarnessError::Engine(e),
            PropertyError::TooFewVertices(_) => {
                unreachable!("only the inequality needs 5 vertices")
            }
        }
    }
}

/// `f_t(G)` with the orbit representatives spread over the rayon pool.
/// Same result as [`pebble_core::pebbling_number_with`].
pub fn pebbling_number_par(
    g: &Graph,
    t: u32,
    opts: &EngineOptions,
) -> Result<PebblingNumber, EngineError> {
    let group = group_for(g, opts);
    let per_root = group
        .orbit_representatives()
        .into_par_iter()
        .map(|v| {
            let stab = group.stabilizer_of_vertex(v);
            rooted_in_group(g, VertexId(v), t, Mode::Discover, &stab, opts.budget)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PebblingNumber::from_roots(per_root))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrahamMode {
    /// Compute `f(G × H)` exactly.
    Exact,
    /// Only confirm that every distribution of `f(G)f(H)` pebbles is solvable.
    BoundOnly,
}

/// Drops pebbles from the highest-index vertices until `size` remain.
fn trim(d: &Distribution, size: u64) -> Distribution {
    let mut counts = d.counts().to_vec();
    let mut excess = d.total().saturating_sub(size);
    for c in counts.iter_mut().rev() {
        let take = (*c as u64).min(excess);
        *c -= take as u32;
        excess -= take;
    }
    Distribution::new(counts)
}

fn is_budget(e: &EngineError) -> bool {
    matches!(e, EngineError::Sweep(SweepError::BudgetExceeded { .. }))
}

/// Checks `f(G × H) ≤ f(G) f(H)`. A budget overrun yields an inconclusive
/// report rather than an error.
pub fn verify_graham(
    g: &Graph,
    h: &Graph,
    mode: GrahamMode,
    opts: &EngineOptions,
) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let prod = cartesian_product(g, h)?;
    let mut report = VerificationReport {
        claim: format!(
            "f({}) <= f({}) f({})",
            prod.family(),
            g.family(),
            h.family()
        ),
        params: vec![
            ("g".to_string(), g.family().to_string()),
            ("h".to_string(), h.family().to_string()),
        ],
        verdict: Verdict::Inconclusive,
        counterexample: None,
        host: prod.clone(),
        distributions_checked: 0,
        elapsed: Duration::ZERO,
    };
    let (fg, fh) = match (
        pebbling_number_par(g, 1, opts),
        pebbling_number_par(h, 1, opts),
    ) {
        (Ok(a), Ok(b)) => (a.value, b.value),
        (Err(e), _) | (_, Err(e)) if is_budget(&e) => {
            report.elapsed = start.elapsed();
            return Ok(report);
        }
        (Err(e), _) | (_, Err(e)) => return Err(e.into()),
    };
    let bound = fg * fh;
    let mut params = std::mem::take(&mut report.params);
    params.push(("f_g".to_string(), fg.to_string()));
    params.push(("f_h".to_string(), fh.to_string()));
    params.push(("bound".to_string(), bound.to_string()));
    match mode {
        GrahamMode::Exact => match pebbling_number_par(&prod, 1, opts) {
            Ok(f) => {
                params.push(("f_product".to_string(), f.value.to_string()));
                params.push((
                    "argmax".to_string(),
                    prod.label(f.argmax.index()).to_string(),
                ));
                report.distributions_checked = f.explored() as u64;
                if f.value <= bound {
                    report.verdict = Verdict::Verified;
                } else {
                    report.verdict = Verdict::Refuted;
                    report.counterexample = Some(trim(&f.witness, bound));
                    params.push((
                        "target".to_string(),
                        prod.label(f.argmax.index()).to_string(),
                    ));
                }
            }
            Err(e) if is_budget(&e) => {}
            Err(e) => return Err(e.into()),
        },
        GrahamMode::BoundOnly => {
            let group = group_for(&prod, opts);
            let reps = group.orbit_representatives();
            let results: Vec<_> = reps
                .par_iter()
                .map(|&v| {
                    let demand =
                        DemandVector::single(prod.n(), VertexId(v), 1).expect("positive demand");
                    let limits = SweepLimits {
                        max_level: Some(bound),
                        budget: opts.budget,
                    };
                    sweep(&prod, &demand, &group.stabilizer_of_vertex(v), limits)
                })
                .collect();
            report.verdict = Verdict::Verified;
            for (&v, r) in reps.iter().zip(results) {
                match r {
                    Ok(s) => {
                        report.distributions_checked += s.explored() as u64;
                        if s.threshold.is_none() && report.verdict == Verdict::Verified {
                            report.verdict = Verdict::Refuted;
                            report.counterexample = Some(s.witness);
                            params.push(("target".to_string(), prod.label(v).to_string()));
                        }
                    }
                    Err(SweepError::BudgetExceeded { .. }) => {
                        if report.verdict == Verdict::Verified {
                            report.verdict = Verdict::Inconclusive;
                        }
                    }
                    Err(e) => return Err(EngineError::from(e).into()),
                }
            }
        }
    }
    params.push((
        "mode".to_string(),
        match mode {
            GrahamMode::Exact => "exact",
            GrahamMode::BoundOnly => "bound",
        }
        .to_string(),
    ));
    report.params = params;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Simultaneous-placement lemmas over `host × G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// `(2^1 + 2^3 + … + 2^{2k−1}) f(G)` pebbles on `P_2k × G` cover
    /// `(x_i, g)` for odd `i < 2k`.
    L2_5,
    /// `(2^2 + 2^4 + … + 2^{2k}) f(G)` pebbles on `P_{2k+1} × G` cover
    /// `(x_i, g)` for `i = 1, 3, …, 2k − 1`.
    L2_6,
    /// `(2^k − 1) f(G)` pebbles on `P_k × G` cover every `(x_i, g)`.
    L3_5,
    /// `(2^k − 2) f(G)` pebbles on the fiber `x_k × G` cover `(x_i, g)`,
    /// `i < k`.
    L3_6,
    /// `(2^k + k − 3) f(G)` pebbles on `T_k × G` cover `(x_i, g)` for
    /// `i < k`, or put two pebbles on `(x_1, g)`.
    L3_7,
}

impl LemmaId {
    pub const ALL: [LemmaId; 5] = [
        LemmaId::L2_5,
        LemmaId::L2_6,
        LemmaId::L3_5,
        LemmaId::L3_6,
        LemmaId::L3_7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::L2_5 => "2.5",
            LemmaId::L2_6 => "2.6",
            LemmaId::L3_5 => "3.5",
            LemmaId::L3_6 => "3.6",
            LemmaId::L3_7 => "3.7",
        }
    }

    fn min_k(self) -> usize {
        match self {
            LemmaId::L3_6 | LemmaId::L3_7 => 2,
            _ => 1,
        }
    }

    /// Pebble count as a multiple of `f(G)`.
    pub fn multiplier(self, k: usize) -> Result<u64, HarnessError> {
        if k < self.min_k() {
            return Err(HarnessError::BadK {
                min: self.min_k(),
                got: k,
            });
        }
        let big = HarnessError::TooManyPebbles(u64::MAX);
        let pow = |e: usize| 1u64.checked_shl(e as u32).filter(|_| e < 63);
        let m = match self {
            LemmaId::L2_5 => (1..=k).try_fold(0u64, |acc, i| acc.checked_add(pow(2 * i - 1)?)),
            LemmaId::L2_6 => (1..=k).try_fold(0u64, |acc, i| acc.checked_add(pow(2 * i)?)),
            LemmaId::L3_5 => pow(k).map(|x| x - 1),
            LemmaId::L3_6 => pow(k).map(|x| x - 2),
            LemmaId::L3_7 => pow(k).map(|x| x + k as u64 - 3),
        };
        m.ok_or(big)
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown lemma '{s}' (expected 2.5, 2.6, 3.5, 3.6 or 3.7)"))
    }
}

/// A lemma instance for one vertex `g` of the auxiliary graph.
struct Instance {
    host: Graph,
    /// Alternatives; the lemma holds for a distribution when any is met.
    demands: Vec<DemandVector>,
    /// Vertices allowed to hold pebbles.
    support: Vec<usize>,
    pebbles: u64,
}

fn instance(
    id: LemmaId,
    k: usize,
    g: &Graph,
    gv: usize,
    pebbles: u64,
) -> Result<Instance, HarnessError> {
    let base = match id {
        LemmaId::L2_5 => path(2 * k)?,
        LemmaId::L2_6 => path(2 * k + 1)?,
        LemmaId::L3_5 | LemmaId::L3_6 => path(k)?,
        LemmaId::L3_7 => build_tk(k)?,
    };
    let ng = g.n();
    let host = cartesian_product(&base, g)?;
    // x_i sits at index i − 1 in both the paths and T_k
    let at = |i: usize| product_index(i - 1, gv, ng);
    let cover = |xs: Vec<usize>| {
        let vs: Vec<usize> = xs.into_iter().map(at).collect();
        DemandVector::cover(host.n(), &vs).expect("non-empty cover")
    };
    let demands = match id {
        LemmaId::L2_5 | LemmaId::L2_6 => vec![cover((1..2 * k).step_by(2).collect())],
        LemmaId::L3_5 => vec![cover((1..=k).collect())],
        LemmaId::L3_6 => vec![cover((1..k).collect())],
        LemmaId::L3_7 => vec![
            cover((1..k).collect()),
            DemandVector::single(host.n(), VertexId(at(1)), 2).expect("positive demand"),
        ],
    };
    let support = match id {
        LemmaId::L3_6 => (0..ng).map(|b| product_index(k - 1, b, ng)).collect(),
        _ => (0..host.n()).collect(),
    };
    Ok(Instance {
        host,
        demands,
        support,
        pebbles,
    })
}

/// Checks a simultaneous-placement lemma exhaustively for every vertex of
/// `g` (one per orbit). `pebbles`, when given, must equal the lemma's count.
pub fn verify_cover_lemma(
    id: LemmaId,
    k: usize,
    g: &Graph,
    pebbles: Option<u64>,
    opts: &EngineOptions,
) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let mult = id.multiplier(k)?;
    let odd = check_property_with(g, Property::OddTwoPebbling, opts, None)?;
    if !odd.holds {
        return Err(HarnessError::Hypothesis(Box::new(odd)));
    }
    let fg = odd.f_value;
    let count = mult
        .checked_mul(fg)
        .filter(|&c| c <= u32::MAX as u64)
        .ok_or(HarnessError::TooManyPebbles(u64::MAX))?;
    if let Some(p) = pebbles {
        if p != count {
            return Err(HarnessError::PebbleCount {
                expected: count,
                got: p,
            });
        }
    }
    let aux_group = group_for(g, opts);
    let mut checked = 0u64;
    let mut failure = None;
    let mut host = None;
    for gv in aux_group.orbit_representatives() {
        let inst = instance(id, k, g, gv, count)?;
        let (n, bad) = check_instance(&inst, opts)?;
        checked += n;
        if host.is_none() {
            host = Some(inst.host.clone());
        }
        if let Some(d) = bad {
            failure = Some((d, gv, inst.host));
            break;
        }
    }
    let host = host.expect("graphs have a vertex");
    let mut params = vec![
        ("lemma".to_string(), id.to_string()),
        ("k".to_string(), k.to_string()),
        ("aux".to_string(), g.family().to_string()),
        ("f_aux".to_string(), fg.to_string()),
        ("pebbles".to_string(), count.to_string()),
        ("host".to_string(), host.family().to_string()),
    ];
    let (verdict, counterexample, host) = match failure {
        Some((d, gv, h)) => {
            params.push(("aux_vertex".to_string(), g.label(gv).to_string()));
            (Verdict::Refuted, Some(d), h)
        }
        None => (Verdict::Verified, None, host),
    };
    Ok(VerificationReport {
        claim: format!("lemma {id}, k={k}, G={}", g.family()),
        params,
        verdict,
        counterexample,
        host,
        distributions_checked: checked,
        elapsed: start.elapsed(),
    })
}

pub fn verify_lemma_37(
    k: usize,
    g: &Graph,
    opts: &EngineOptions,
) -> Result<VerificationReport, HarnessError> {
    verify_cover_lemma(LemmaId::L3_7, k, g, None, opts)
}

/// Enumerates every distribution of the instance (one per orbit of the
/// symmetries fixing its demands and support) and returns the number
/// examined and the first failure.
fn check_instance(
    inst: &Instance,
    opts: &EngineOptions,
) -> Result<(u64, Option<Distribution>), HarnessError> {
    let host = &inst.host;
    let n = host.n();
    let mut in_support = vec![false; n];
    for &w in &inst.support {
        in_support[w] = true;
    }
    let key: Vec<(Vec<u32>, bool)> = (0..n)
        .map(|w| {
            (
                inst.demands.iter().map(|d| d.required()[w]).collect(),
                in_support[w],
            )
        })
        .collect();
    let group: SymmetryGroup = group_for(host, opts).stabilizer_of(&key);
    let limits = SweepLimits {
        max_level: Some(inst.pebbles),
        budget: opts.budget,
    };
    let atlases = inst
        .demands
        .iter()
        .map(|d| UnsolvableAtlas::build_limited(host, d, group.clone(), limits))
        .collect::<Result<Vec<_>, _>>()
        .map_err(EngineError::from)?;
    let fails = |c: &[u32]| atlases.iter().all(|a| a.is_unsolvable(c));

    let mut comps = Compositions::over(n, inst.support.clone(), inst.pebbles as u32);
    let mut checked = 0u64;
    loop {
        let batch: Vec<Vec<u32>> = comps.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return Ok((checked, None));
        }
        let marks: Vec<(bool, bool)> = batch
            .par_iter()
            .map(|c| {
                let canon = group.is_canonical(c);
                (canon, canon && fails(c))
            })
            .collect();
        if let Some(i) = marks.iter().position(|m| m.1) {
            checked += marks[..=i].iter().filter(|m| m.0).count() as u64;
            return Ok((checked, Some(Distribution::new(batch[i].clone()))));
        }
        checked += marks.iter().filter(|m| m.0).count() as u64;
    }
}

/// The demands a lemma instance must meet, for replaying counterexamples.
pub fn lemma_demands(
    id: LemmaId,
    k: usize,
    g: &Graph,
    gv: usize,
) -> Result<(Graph, Vec<DemandVector>), HarnessError> {
    let inst = instance(id, k, g, gv, 0)?;
    Ok((inst.host, inst.demands))
}
