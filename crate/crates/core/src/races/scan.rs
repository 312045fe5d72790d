use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::{mertens_value, pi_value, zhang_value, RaceError, RaceKind, RacePoint, RaceState};
use crate::primes::{prime_stream_from, DEFAULT_SEGMENT};

/// Which races a scan evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindSet {
    pub pi: bool,
    pub mertens: bool,
    pub zhang: bool,
}

impl KindSet {
    pub const ALL: KindSet = KindSet { pi: true, mertens: true, zhang: true };

    pub fn only(kind: RaceKind) -> Self {
        Self::from_kinds(&[kind])
    }

    pub fn from_kinds(kinds: &[RaceKind]) -> Self {
        Self {
            pi: kinds.contains(&RaceKind::Pi),
            mertens: kinds.contains(&RaceKind::Mertens),
            zhang: kinds.contains(&RaceKind::Zhang),
        }
    }

    pub fn contains(&self, kind: RaceKind) -> bool {
        match kind {
            RaceKind::Pi => self.pi,
            RaceKind::Mertens => self.mertens,
            RaceKind::Zhang => self.zhang,
        }
    }

    pub fn kinds(&self) -> Vec<RaceKind> {
        RaceKind::ALL.into_iter().filter(|&k| self.contains(k)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub kinds: KindSet,
    /// Pass every `n`-th prime (by global index, so resumed scans agree) to
    /// the sink. Zero disables periodic output.
    pub emit_every: u64,
    /// Also pass every exceptional point to the sink.
    pub emit_exceptional: bool,
    pub checkpoint: Option<PathBuf>,
    /// Save the checkpoint after this many primes (and always at the end).
    pub checkpoint_every: u64,
    pub segment_size: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            kinds: KindSet::ALL,
            emit_every: 0,
            emit_exceptional: true,
            checkpoint: None,
            checkpoint_every: 1 << 22,
            segment_size: DEFAULT_SEGMENT,
        }
    }
}

/// Per-race counts for one scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KindTally {
    pub kind: RaceKind,
    /// Primes on the unusual side: members of `Π`, or non-Mertens/non-Zhang.
    pub exceptional: u64,
    pub indeterminate: u64,
    /// The first exceptional or indeterminate primes, capped at
    /// [`KindTally::KEEP`].
    pub examples: Vec<u64>,
    /// Largest budget seen.
    pub max_budget: f64,
    /// Smallest `|E| / budget` seen; classification is safe when this is > 1.
    #[serde(with = "crate::format::nonfinite")]
    pub min_margin: f64,
}

impl KindTally {
    pub const KEEP: usize = 64;

    fn new(kind: RaceKind) -> Self {
        Self {
            kind,
            exceptional: 0,
            indeterminate: 0,
            examples: Vec::new(),
            max_budget: 0.0,
            min_margin: f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    /// Primes below this were already absorbed when the scan started.
    pub start: u64,
    pub limit: u64,
    pub primes_scanned: u64,
    pub tallies: Vec<KindTally>,
}

impl ScanSummary {
    pub fn tally(&self, kind: RaceKind) -> Option<&KindTally> {
        self.tallies.iter().find(|t| t.kind == kind)
    }
}

/// Evaluate the requested races at every prime `p` with
/// `state.x_reached() ≤ p ≤ limit`, each just before `p` is absorbed.
/// Afterwards the state sits at `limit + 1`. A state already past `limit`
/// is left alone and the summary is empty.
pub fn scan<F: FnMut(&RacePoint)>(
    state: &mut RaceState,
    limit: u64,
    config: &ScanConfig,
    mut sink: F,
) -> Result<ScanSummary, RaceError> {
    if limit < 3 {
        return Err(RaceError::LimitTooSmall(limit));
    }
    let kinds = config.kinds;
    let mut summary = ScanSummary {
        start: state.x_reached(),
        limit,
        primes_scanned: 0,
        tallies: kinds.kinds().into_iter().map(KindTally::new).collect(),
    };
    if state.x_reached() > limit {
        return Ok(summary);
    }
    let mut since_checkpoint = 0u64;
    for p in prime_stream_from(state.x_reached(), limit, config.segment_size)? {
        state.skip_to(p);
        let x = p as f64;
        let point = RacePoint {
            x,
            pi: kinds.pi.then(|| pi_value(x, state.pi_count() + 1)),
            mertens: kinds.mertens.then(|| mertens_value(x, state.mertens_log_sum().value())),
            zhang: kinds.zhang.then(|| zhang_value(x, state)),
        };
        for t in summary.tallies.iter_mut() {
            let v = point.get(t.kind).expect("requested race evaluated");
            t.max_budget = t.max_budget.max(v.budget);
            if v.budget > 0.0 {
                t.min_margin = t.min_margin.min(v.value.abs() / v.budget);
            }
            let unusual = match v.member() {
                None => {
                    t.indeterminate += 1;
                    true
                }
                Some(m) => {
                    let rare = m == t.kind.member_is_rare();
                    if rare {
                        t.exceptional += 1;
                    }
                    rare
                }
            };
            if unusual && t.examples.len() < KindTally::KEEP {
                t.examples.push(p);
            }
        }
        let index = state.pi_count() + 1;
        let periodic = config.emit_every > 0 && index.is_multiple_of(config.emit_every);
        if periodic || (config.emit_exceptional && point.is_exceptional()) {
            sink(&point);
        }
        state.absorb(p);
        summary.primes_scanned += 1;
        since_checkpoint += 1;
        if let Some(path) = &config.checkpoint {
            if config.checkpoint_every > 0 && since_checkpoint >= config.checkpoint_every {
                state.save(path)?;
                since_checkpoint = 0;
            }
        }
    }
    state.skip_to(limit + 1);
    if let Some(path) = &config.checkpoint {
        state.save(path)?;
    }
    Ok(summary)
}
