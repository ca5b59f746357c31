//! Runs the claim registry over a corpus and aggregates the verdicts.

pub mod claims;
pub mod facts;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{Analysis, RingAnalysis};
use crate::corpus::{Descriptor, Instance};
use crate::error::{Error, Result};

pub use claims::{claim, registry, Cases, Claim, Env, Mode, Witness};
pub use facts::{evaluate, reverify, Fact, Mismatch, Query, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Vacuous,
    #[serde(rename = "FAILED")]
    Failed,
    /// The instance exceeded a size bound.
    Skipped,
    /// The instance could not be analysed.
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Vacuous => "vacuous",
            Verdict::Failed => "FAILED",
            Verdict::Skipped => "skipped",
            Verdict::Error => "error",
        }
    }
}

/// One structured record per (claim, instance).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub instance: String,
    pub verdict: Verdict,
    /// Cases examined and cases whose hypothesis held.
    pub cases: usize,
    pub applicable: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Present whenever a witness is, so the record reproduces on its own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<Descriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub micros: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub claim: String,
    pub holds: usize,
    pub vacuous: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
    /// Total applicable cases over all instances.
    pub applicable: usize,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.holds + self.vacuous + self.failed + self.skipped + self.errors
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Claim IDs to run; all when `None`.
    pub claims: Option<BTreeSet<String>>,
    /// Evaluate this claim with its conclusion negated. Used to exercise
    /// the failure path.
    pub negate: Option<String>,
    /// Record timings. Off by default so that identical runs produce
    /// identical records.
    pub timings: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub corpus: String,
    pub instances: usize,
    pub tallies: Vec<Tally>,
    pub results: Vec<ClaimResult>,
    pub wall_micros: u64,
}

fn selected(opts: &SuiteOptions) -> Result<Vec<&'static Claim>> {
    if let Some(id) = &opts.negate {
        if claim(id).is_none() {
            return Err(Error::Config(format!("unknown claim {id}")));
        }
    }
    match &opts.claims {
        None => Ok(registry().iter().collect()),
        Some(ids) => {
            for id in ids {
                if claim(id).is_none() {
                    return Err(Error::Config(format!("unknown claim {id}")));
                }
            }
            Ok(registry()
                .iter()
                .filter(|c| ids.iter().any(|i| i.eq_ignore_ascii_case(c.id)))
                .collect())
        }
    }
}

/// Ring analyses shared across a corpus, keyed by ring fingerprint.
pub fn ring_analyses(corpus: &[Instance]) -> HashMap<u64, std::result::Result<Arc<RingAnalysis>, String>> {
    let mut rings = HashMap::new();
    for inst in corpus {
        let r = inst.module.ring();
        rings.entry(r.fingerprint()).or_insert_with(|| r.clone());
    }
    rings
        .into_par_iter()
        .map(|(k, r)| (k, RingAnalysis::new(r).map(Arc::new).map_err(|e| e.to_string())))
        .collect()
}

fn verdict_of(mode: Mode, cases: &Cases) -> Verdict {
    match (mode, &cases.witness) {
        (Mode::Existence, Some(_)) => Verdict::Holds,
        (Mode::Existence, None) => Verdict::Vacuous,
        (_, Some(_)) => Verdict::Failed,
        (_, None) if cases.applicable > 0 => Verdict::Holds,
        _ => Verdict::Vacuous,
    }
}

/// Evaluates the selected claims on every instance. Results are ordered by
/// instance ID, then claim ID, independent of scheduling.
pub fn run_suite(corpus: &[Instance], corpus_label: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let claims = selected(opts)?;
    let mut order: Vec<&Instance> = corpus.iter().collect();
    order.sort_by(|a, b| a.id.cmp(&b.id));

    let rings = ring_analyses(corpus);
    let analyses: Vec<std::result::Result<Analysis, Error>> = order
        .par_iter()
        .map(|inst| match &rings[&inst.module.ring().fingerprint()] {
            Ok(ra) => Analysis::new(inst.module.clone(), ra.clone()),
            Err(e) => Err(Error::Inconsistency(e.clone())),
        })
        .collect();

    // A ring counts as absolutely radical when every analysed corpus module
    // over it has β(N) = N throughout.
    let mut absolutely_radical: HashMap<u64, bool> = HashMap::new();
    for (inst, a) in order.iter().zip(&analyses) {
        let flag = match a {
            Ok(a) => (0..a.len()).all(|i| a.ctx.beta(i) == i),
            Err(_) => false,
        };
        *absolutely_radical.entry(inst.module.ring().fingerprint()).or_insert(true) &= flag;
    }

    let negate = opts.negate.as_deref();
    let results: Vec<Vec<ClaimResult>> = order
        .par_iter()
        .zip(analyses.par_iter())
        .map(|(inst, a)| {
            claims
                .iter()
                .map(|c| {
                    let t = Instant::now();
                    let mut r = match a {
                        Ok(a) => {
                            let env = Env {
                                instance: inst,
                                a,
                                absolutely_radical: absolutely_radical[&inst.module.ring().fingerprint()],
                            };
                            let neg = negate.is_some_and(|id| id.eq_ignore_ascii_case(c.id));
                            let mut cases = Cases::new(c.mode, neg);
                            (c.eval)(&env, &mut cases);
                            let verdict = verdict_of(c.mode, &cases);
                            ClaimResult {
                                claim: c.id.into(),
                                instance: inst.id.clone(),
                                verdict,
                                cases: cases.examined,
                                applicable: cases.applicable,
                                descriptor: cases.witness.as_ref().map(|_| inst.descriptor()),
                                witness: cases.witness,
                                reason: None,
                                micros: 0,
                            }
                        }
                        Err(e) => ClaimResult {
                            claim: c.id.into(),
                            instance: inst.id.clone(),
                            verdict: if matches!(e, Error::SizeLimit { .. }) {
                                Verdict::Skipped
                            } else {
                                Verdict::Error
                            },
                            cases: 0,
                            applicable: 0,
                            witness: None,
                            descriptor: Some(inst.descriptor()),
                            reason: Some(e.to_string()),
                            micros: 0,
                        },
                    };
                    if opts.timings {
                        r.micros = t.elapsed().as_micros() as u64;
                    }
                    r
                })
                .collect()
        })
        .collect();
    let results: Vec<ClaimResult> = results.into_iter().flatten().collect();

    let mut tallies: Vec<Tally> = claims
        .iter()
        .map(|c| Tally {
            claim: c.id.into(),
            ..Tally::default()
        })
        .collect();
    let pos: HashMap<&str, usize> = claims.iter().enumerate().map(|(i, c)| (c.id, i)).collect();
    for r in &results {
        let t = &mut tallies[pos[r.claim.as_str()]];
        t.applicable += r.applicable;
        match r.verdict {
            Verdict::Holds => t.holds += 1,
            Verdict::Vacuous => t.vacuous += 1,
            Verdict::Failed => t.failed += 1,
            Verdict::Skipped => t.skipped += 1,
            Verdict::Error => t.errors += 1,
        }
    }
    Ok(SuiteReport {
        corpus: corpus_label.into(),
        instances: order.len(),
        tallies,
        results,
        wall_micros: if opts.timings {
            start.elapsed().as_micros() as u64
        } else {
            0
        },
    })
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.results.iter().filter(|r| r.verdict == Verdict::Failed)
    }

    pub fn errors(&self) -> impl Iterator<Item = &ClaimResult> {
        self.results.iter().filter(|r| r.verdict == Verdict::Error)
    }

    /// 0 when nothing failed, 1 on any FAILED verdict or analysis error.
    pub fn exit_code(&self) -> i32 {
        if self.failures().next().is_some() || self.errors().next().is_some() {
            1
        } else {
            0
        }
    }

    /// Claims (other than existence targets) with no non-vacuous
    /// evaluation on this corpus.
    pub fn unexercised(&self) -> Vec<&str> {
        self.tallies
            .iter()
            .filter(|t| t.holds + t.failed == 0)
            .filter(|t| claim(&t.claim).is_some_and(|c| c.mode != Mode::Existence))
            .map(|t| t.claim.as_str())
            .collect()
    }

    /// Human-readable summary. Contains no timings, so identical runs give
    /// identical text.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "corpus: {} ({} instances)", self.corpus, self.instances);
        let _ = writeln!(
            s,
            "{:<5} {:>6} {:>8} {:>7} {:>8} {:>6} {:>9}  statement",
            "claim", "holds", "vacuous", "FAILED", "skipped", "errors", "cases"
        );
        for t in &self.tallies {
            let c = claim(&t.claim).expect("tallies use registry ids");
            let mut statement = c.statement.to_string();
            if c.corpus_relative {
                statement.push_str(" [corpus-relative]");
            }
            if c.mode == Mode::Existence {
                statement.push_str(" [search target]");
            }
            let _ = writeln!(
                s,
                "{:<5} {:>6} {:>8} {:>7} {:>8} {:>6} {:>9}  {}",
                t.claim, t.holds, t.vacuous, t.failed, t.skipped, t.errors, t.applicable, statement
            );
        }
        for id in self.unexercised() {
            let _ = writeln!(s, "warning: {id} has no non-vacuous evaluation on this corpus");
        }
        for r in self.failures() {
            let _ = writeln!(s, "FAILED {} on {}", r.claim, r.instance);
            if let Some(w) = &r.witness {
                let _ = writeln!(s, "  at {}", w.subject);
                for f in &w.facts {
                    let _ = writeln!(s, "  {}", serde_json::to_string(f).unwrap_or_default());
                }
            }
            if let Some(d) = &r.descriptor {
                let _ = writeln!(s, "  recipe {}", serde_json::to_string(&d.recipe).unwrap_or_default());
            }
        }
        for r in self.errors() {
            let _ = writeln!(
                s,
                "error {} on {}: {}",
                r.claim,
                r.instance,
                r.reason.as_deref().unwrap_or("")
            );
        }
        let failed: usize = self.tallies.iter().map(|t| t.failed).sum();
        let errors: usize = self.tallies.iter().map(|t| t.errors).sum();
        let _ = writeln!(
            s,
            "{} results, {failed} FAILED, {errors} errors",
            self.results.len()
        );
        s
    }

    /// One JSON record per claim result.
    pub fn write_jsonl(&self, w: &mut dyn Write) -> std::io::Result<()> {
        for r in &self.results {
            serde_json::to_writer(&mut *w, r)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Rebuilds the instance of a witnessed result from its descriptor and
/// recomputes every fact with the one-shot primitives.
pub fn reverify_result(r: &ClaimResult) -> Result<Vec<Mismatch>> {
    let (Some(w), Some(d)) = (&r.witness, &r.descriptor) else {
        return Err(Error::InvalidParameter(format!("{} on {} has no witness", r.claim, r.instance)));
    };
    let inst = d.rebuild()?;
    Ok(reverify(&inst.module, &w.facts))
}
