//! Targeted searches over the corpus. Hits are candidate witnesses only:
//! each carries its reproduction recipe and the facts that make the target
//! predicate true, and [`reverify_hit`] rechecks both from scratch.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::corpus::{generate_corpus, CorpusSpec, Descriptor, Instance};
use crate::error::{Error, Result};
use crate::suite::facts::{reverify, Fact, Query, Value};
use crate::suite::ring_analyses;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HuntTarget {
    /// {0} prime, not completely prime, E(0) = {0}.
    Q1,
    /// {0} completely semiprime, not completely prime, β(0) = {0}.
    Q2,
    /// RF at {0} while M is not 2-primal.
    #[serde(rename = "RF_NOT_2PRIMAL")]
    RfNot2Primal,
    /// β_co(M) not contained in ⟨E(0)⟩.
    #[serde(rename = "INCLUSION3_FAIL")]
    Inclusion3Fail,
}

impl HuntTarget {
    pub const ALL: [HuntTarget; 4] = [
        HuntTarget::Q1,
        HuntTarget::Q2,
        HuntTarget::RfNot2Primal,
        HuntTarget::Inclusion3Fail,
    ];

    pub fn id(self) -> &'static str {
        match self {
            HuntTarget::Q1 => "Q1",
            HuntTarget::Q2 => "Q2",
            HuntTarget::RfNot2Primal => "RF_NOT_2PRIMAL",
            HuntTarget::Inclusion3Fail => "INCLUSION3_FAIL",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            HuntTarget::Q1 => "prime module, not completely prime, with E(0) = 0",
            HuntTarget::Q2 => "completely semiprime module, not completely prime, with beta(M) = 0",
            HuntTarget::RfNot2Primal => "module satisfying the radical formula at 0 that is not 2-primal",
            HuntTarget::Inclusion3Fail => "module with beta_co(M) not contained in <E(0)>",
        }
    }

    /// The facts deciding the predicate on `a`, and whether it holds.
    pub fn evaluate(self, a: &Analysis) -> (bool, Vec<Fact>) {
        let z = a.zero();
        let zero = a.sub(z).to_vec();
        let ctx = &a.ctx;
        let facts = match self {
            HuntTarget::Q1 => vec![
                Fact::new(Query::Prime { n: zero.clone() }, ctx.is_prime(z)),
                Fact::new(Query::CompletelyPrime { n: zero.clone() }, ctx.is_completely_prime(z)),
                Fact::new(Query::EnvelopeRaw { n: zero }, &a.subs[z].envelope.raw),
            ],
            HuntTarget::Q2 => vec![
                Fact::new(
                    Query::CompletelySemiprime { n: zero.clone() },
                    ctx.is_completely_semiprime(z),
                ),
                Fact::new(Query::CompletelyPrime { n: zero.clone() }, ctx.is_completely_prime(z)),
                Fact::new(Query::Beta { n: zero }, a.sub(ctx.beta(z))),
            ],
            HuntTarget::RfNot2Primal => vec![
                Fact::new(Query::RadicalFormula { n: zero.clone() }, a.subs[z].rf),
                Fact::new(Query::TwoPrimal { n: zero }, a.subs[z].two_primal),
            ],
            HuntTarget::Inclusion3Fail => vec![
                Fact::new(Query::BetaCo { n: zero.clone() }, a.sub(ctx.beta_co(z))),
                Fact::new(Query::EnvelopeGenerated { n: zero }, a.sub(a.subs[z].generated)),
            ],
        };
        (self.decide(&facts), facts)
    }

    /// The predicate read off the values of the facts produced by
    /// [`HuntTarget::evaluate`].
    pub fn decide(self, facts: &[Fact]) -> bool {
        let b = |i: usize| matches!(facts.get(i).map(|f| &f.value), Some(Value::Bool(true)));
        let set = |i: usize| match facts.get(i).map(|f| &f.value) {
            Some(Value::Set(s)) => Some(s.as_slice()),
            _ => None,
        };
        let is_zero = |i: usize| set(i).is_some_and(|s| s.len() == 1);
        match self {
            HuntTarget::Q1 => b(0) && !b(1) && is_zero(2),
            HuntTarget::Q2 => b(0) && !b(1) && is_zero(2),
            HuntTarget::RfNot2Primal => b(0) && !b(1),
            HuntTarget::Inclusion3Fail => match (set(0), set(1)) {
                (Some(co), Some(e)) => co.iter().any(|x| !e.contains(x)),
                _ => false,
            },
        }
    }
}

impl fmt::Display for HuntTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for HuntTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HuntTarget::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown hunt target {s}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub instance: Descriptor,
    pub facts: Vec<Fact>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Findings {
    pub target: HuntTarget,
    pub description: String,
    pub hits: Vec<Hit>,
    /// Instances whose predicate was decided.
    pub examined: usize,
    /// Instances taken from the corpus, including ones that could not be
    /// analysed.
    pub budget_consumed: usize,
    /// Instances that could not be analysed, with the reason.
    pub skipped: Vec<(String, String)>,
}

/// Searches the first `budget` corpus instances (in ID order) on a pool of
/// `threads` workers; 0 threads means the rayon default. The result does
/// not depend on `threads`.
pub fn hunt(target: HuntTarget, spec: &CorpusSpec, budget: Option<usize>, threads: usize) -> Result<Findings> {
    let mut corpus = generate_corpus(spec)?;
    corpus.truncate(budget.unwrap_or(usize::MAX));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(|| hunt_in(target, &corpus)))
}

/// Searches the given instances.
pub fn hunt_in(target: HuntTarget, corpus: &[Instance]) -> Findings {
    let rings = ring_analyses(corpus);
    let mut outcomes: Vec<(String, std::result::Result<Option<Hit>, String>)> = corpus
        .par_iter()
        .map(|inst| {
            let outcome = rings[&inst.module.ring().fingerprint()]
                .clone()
                .and_then(|ra| Analysis::new(inst.module.clone(), ra).map_err(|e| e.to_string()))
                .map(|a| {
                    let (hit, facts) = target.evaluate(&a);
                    hit.then(|| Hit {
                        instance: inst.descriptor(),
                        facts,
                    })
                });
            (inst.id.clone(), outcome)
        })
        .collect();
    outcomes.sort_by(|x, y| x.0.cmp(&y.0));

    let mut findings = Findings {
        target,
        description: target.description().into(),
        hits: vec![],
        examined: 0,
        budget_consumed: outcomes.len(),
        skipped: vec![],
    };
    for (id, outcome) in outcomes {
        match outcome {
            Ok(hit) => {
                findings.examined += 1;
                findings.hits.extend(hit);
            }
            Err(reason) => findings.skipped.push((id, reason)),
        }
    }
    findings
}

/// Rebuilds the hit's instance from its descriptor, recomputes every fact
/// with the one-shot primitives and re-decides the predicate.
pub fn reverify_hit(target: HuntTarget, hit: &Hit) -> Result<()> {
    let inst = hit.instance.rebuild()?;
    let bad = reverify(&inst.module, &hit.facts);
    if let Some(m) = bad.first() {
        return Err(Error::Inconsistency(format!(
            "{}: fact {} does not re-verify",
            hit.instance.id,
            serde_json::to_string(&m.fact).unwrap_or_default()
        )));
    }
    if !target.decide(&hit.facts) {
        return Err(Error::Inconsistency(format!(
            "{}: facts do not satisfy {target}",
            hit.instance.id
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_parse() {
        for t in HuntTarget::ALL {
            assert_eq!(t.id().parse::<HuntTarget>().unwrap(), t);
            assert_eq!(serde_json::to_string(&t).unwrap(), format!("\"{}\"", t.id()));
        }
        assert!("Q3".parse::<HuntTarget>().is_err());
    }

    #[test]
    fn column_module_is_examined_and_rejected_for_q1() {
        let spec = CorpusSpec {
            cyclic_max: 1,
            ..CorpusSpec::default()
        };
        let f = hunt(HuntTarget::Q1, &spec, None, 1).unwrap();
        assert!(f.examined > 0);
        assert!(f.hits.iter().all(|h| !h.instance.label.starts_with("COL")));
        let corpus = generate_corpus(&spec).unwrap();
        let col = corpus.iter().find(|i| i.label == "COL2F2").unwrap();
        let rings = ring_analyses(std::slice::from_ref(col));
        let ra = rings.values().next().unwrap().clone().unwrap();
        let a = Analysis::new(col.module.clone(), ra).unwrap();
        let (hit, facts) = HuntTarget::Q1.evaluate(&a);
        assert!(!hit);
        // prime, not completely prime, but E(0) is everything
        assert_eq!(facts[0].value, Value::Bool(true));
        assert_eq!(facts[1].value, Value::Bool(false));
        assert_eq!(facts[2].value, Value::Set(vec![0, 1, 2, 3]));
    }

    #[test]
    fn commutative_corpus_has_no_rf_without_2primal() {
        let spec = CorpusSpec::default().commutative_only();
        let f = hunt(HuntTarget::RfNot2Primal, &spec, None, 0).unwrap();
        assert!(f.hits.is_empty());
        assert!(f.skipped.is_empty());
        assert_eq!(f.examined, f.budget_consumed);
    }

    #[test]
    fn budget_truncates_and_zero_budget_is_empty() {
        let spec = CorpusSpec::default().commutative_only();
        let f = hunt(HuntTarget::Q2, &spec, Some(5), 2).unwrap();
        assert_eq!(f.budget_consumed, 5);
        let f = hunt(HuntTarget::Q2, &spec, Some(0), 2).unwrap();
        assert_eq!((f.examined, f.hits.len()), (0, 0));
    }

    #[test]
    fn hits_reverify_and_tampered_hits_do_not() {
        let spec = CorpusSpec {
            cyclic_max: 8,
            ..CorpusSpec::default()
        };
        for t in HuntTarget::ALL {
            let f = hunt(t, &spec, None, 0).unwrap();
            for h in &f.hits {
                reverify_hit(t, h).unwrap();
            }
        }
        // A forged Q1 hit on Z4: {0} is not prime there.
        let inst = Instance::build(
            "Z4:reg",
            crate::recipe::ModuleSpec::Regular {
                ring: crate::recipe::RingSpec::Cyclic { n: 4 },
            },
        )
        .unwrap();
        let forged = Hit {
            instance: inst.descriptor(),
            facts: vec![
                Fact::new(Query::Prime { n: vec![0] }, true),
                Fact::new(Query::CompletelyPrime { n: vec![0] }, false),
                Fact::new(Query::EnvelopeRaw { n: vec![0] }, Value::Set(vec![0])),
            ],
        };
        assert!(reverify_hit(HuntTarget::Q1, &forged).is_err());
    }
}
