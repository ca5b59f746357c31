//! Witness facts: named quantities that can be recomputed from an instance
//! recipe through the one-shot primitives, independently of [`Analysis`].
//!
//! [`Analysis`]: crate::analysis::Analysis

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::classes;
use crate::error::{Error, Result};
use crate::ideal::{jacobson_radical, sqrt_ideal, Ideal, IdealLattice};
use crate::lattice::{check_submodule, ideal_submodule_product, Submodule};
use crate::module::{quotient_module, Module};
use crate::primal::{self, PrimalContext};
use crate::subset::SubSet;

/// A quantity of the instance module M. Sets are listed by member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "q", rename_all = "snake_case")]
pub enum Query {
    Beta { n: Vec<usize> },
    BetaCo { n: Vec<usize> },
    EnvelopeRaw { n: Vec<usize> },
    EnvelopeGenerated { n: Vec<usize> },
    RadicalFormula { n: Vec<usize> },
    TwoPrimal { n: Vec<usize> },
    Prime { n: Vec<usize> },
    CompletelyPrime { n: Vec<usize> },
    CompletelySemiprime { n: Vec<usize> },
    LzCs { n: Vec<usize> },
    Symmetric { n: Vec<usize> },
    Ifp { n: Vec<usize> },
    SemiSymmetric { n: Vec<usize> },
    IsSubmodule { set: Vec<usize> },
    /// First submodule at which the radical formula fails, if any.
    ModuleRadicalFormula,
    /// Queries in M/K; `n` is a submodule of M/K in quotient numbering.
    QuotientRadicalFormula { kernel: Vec<usize>, n: Vec<usize> },
    QuotientBeta { kernel: Vec<usize>, n: Vec<usize> },
    QuotientBetaCo { kernel: Vec<usize>, n: Vec<usize> },
    /// Reduced-module characterisation 1, 2 or 3.
    Reduced { form: u8 },
    RingCommutative,
    RingBeta,
    RingBetaCo,
    RingNil,
    Jacobson,
    Sqrt { ideal: Vec<usize> },
    /// Intersection of the prime ideals containing `ideal`.
    IdealPrimeRadical { ideal: Vec<usize> },
    IdealPrime { ideal: Vec<usize> },
    IdealCompletelyPrime { ideal: Vec<usize> },
    /// β(R)M
    BetaRingTimesModule,
    /// β_co(R)M
    BetaCoRingTimesModule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Set(Vec<usize>),
    /// Serialized as null.
    Absent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    #[serde(flatten)]
    pub query: Query,
    pub value: Value,
}

impl Fact {
    pub fn new(query: Query, value: impl Into<Value>) -> Self {
        Fact {
            query,
            value: value.into(),
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&SubSet> for Value {
    fn from(s: &SubSet) -> Self {
        Value::Set(s.to_vec())
    }
}

impl From<Option<&SubSet>> for Value {
    fn from(s: Option<&SubSet>) -> Self {
        s.map_or(Value::Absent, |s| Value::Set(s.to_vec()))
    }
}

fn sub(m: &Module, n: &[usize]) -> Result<Submodule> {
    if let Some(&x) = n.iter().find(|&&x| x >= m.order()) {
        return Err(Error::InvalidParameter(format!("element {x} outside {}", m.label())));
    }
    Submodule::new(m, SubSet::from_indices(m.order(), n.iter().copied()))
}

fn ideal(m: &Module, s: &[usize]) -> Result<Ideal> {
    let r = m.ring();
    if let Some(&x) = s.iter().find(|&&x| x >= r.order()) {
        return Err(Error::InvalidParameter(format!("element {x} outside {}", r.label())));
    }
    Ideal::new(r, SubSet::from_indices(r.order(), s.iter().copied()))
}

fn quotient_sub(m: &Arc<Module>, kernel: &[usize], n: &[usize]) -> Result<(Arc<Module>, Submodule)> {
    let k = sub(m, kernel)?;
    let (q, _) = quotient_module(m, k.members())?;
    let s = sub(&q, n)?;
    Ok((q, s))
}

/// Recomputes a query from scratch.
pub fn evaluate(m: &Arc<Module>, q: &Query) -> Result<Value> {
    let r = m.ring();
    let set = |s: &SubSet| Value::Set(s.to_vec());
    Ok(match q {
        Query::Beta { n } => set(primal::prime_radical(m, &sub(m, n)?)?.members()),
        Query::BetaCo { n } => set(primal::completely_prime_radical(m, &sub(m, n)?)?.members()),
        Query::EnvelopeRaw { n } => set(&primal::envelope(m, &sub(m, n)?)?.raw),
        Query::EnvelopeGenerated { n } => set(&primal::envelope(m, &sub(m, n)?)?.generated),
        Query::RadicalFormula { n } => primal::satisfies_radical_formula(m, &sub(m, n)?)?.holds.into(),
        Query::TwoPrimal { n } => primal::is_2primal_submodule(m, &sub(m, n)?)?.into(),
        Query::Prime { n } => primal::is_prime_submodule(m, &sub(m, n)?)?.into(),
        Query::CompletelyPrime { n } => primal::is_completely_prime_submodule(m, &sub(m, n)?)?.into(),
        Query::CompletelySemiprime { n } => primal::is_completely_semiprime_submodule(m, &sub(m, n)?)?.into(),
        Query::LzCs { n } => classes::is_lz_completely_semiprime(m, &sub(m, n)?)?.into(),
        Query::Symmetric { n } => classes::is_symmetric_submodule(m, &sub(m, n)?)?.into(),
        Query::Ifp { n } => classes::is_ifp_submodule(m, &sub(m, n)?)?.into(),
        Query::SemiSymmetric { n } => classes::is_semi_symmetric_submodule(m, &sub(m, n)?)?.into(),
        Query::IsSubmodule { set: s } => {
            if let Some(&x) = s.iter().find(|&&x| x >= m.order()) {
                return Err(Error::InvalidParameter(format!("element {x} outside {}", m.label())));
            }
            check_submodule(m, &SubSet::from_indices(m.order(), s.iter().copied()))
                .is_ok()
                .into()
        }
        Query::ModuleRadicalFormula => primal::module_satisfies_rf(m)?.as_ref().map(Submodule::members).into(),
        Query::QuotientRadicalFormula { kernel, n } => {
            let (q, s) = quotient_sub(m, kernel, n)?;
            primal::satisfies_radical_formula(&q, &s)?.holds.into()
        }
        Query::QuotientBeta { kernel, n } => {
            let (q, s) = quotient_sub(m, kernel, n)?;
            set(primal::prime_radical(&q, &s)?.members())
        }
        Query::QuotientBetaCo { kernel, n } => {
            let (q, s) = quotient_sub(m, kernel, n)?;
            set(primal::completely_prime_radical(&q, &s)?.members())
        }
        Query::Reduced { form } => match form {
            1 => classes::reduced_by_intersection(&PrimalContext::new(m.clone())?).into(),
            2 => classes::reduced_by_square(m).into(),
            3 => classes::reduced_by_split(m).into(),
            _ => return Err(Error::InvalidParameter(format!("no reduced form {form}"))),
        },
        Query::RingCommutative => r.is_commutative().into(),
        Query::RingBeta => set(&crate::ideal::ring_prime_radical(r)?),
        Query::RingBetaCo => set(&crate::ideal::ring_completely_prime_radical(r)?),
        Query::RingNil => set(&sqrt_ideal(r, &Ideal::zero(r))?),
        Query::Jacobson => set(jacobson_radical(r)?.members()),
        Query::Sqrt { ideal: i } => set(&sqrt_ideal(r, &ideal(m, i)?)?),
        Query::IdealPrimeRadical { ideal: i } => {
            let i = ideal(m, i)?;
            set(&IdealLattice::new(r.clone())?.prime_radical_of(i.members()))
        }
        Query::IdealPrime { ideal: i } => crate::ideal::is_prime_ideal(r, &ideal(m, i)?)?.into(),
        Query::IdealCompletelyPrime { ideal: i } => crate::ideal::is_completely_prime_ideal(r, &ideal(m, i)?)?.into(),
        Query::BetaRingTimesModule | Query::BetaCoRingTimesModule => {
            let radical = if *q == Query::BetaRingTimesModule {
                crate::ideal::ring_prime_radical(r)?
            } else {
                crate::ideal::ring_completely_prime_radical(r)?
            };
            set(ideal_submodule_product(m, &Ideal::new(r, radical)?, &Submodule::whole(m))?.members())
        }
    })
}

/// A fact whose recorded value differs from the recomputed one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub fact: Fact,
    pub recomputed: Option<Value>,
    pub error: Option<String>,
}

/// Recomputes every fact; returns the ones that do not match.
pub fn reverify(m: &Arc<Module>, facts: &[Fact]) -> Vec<Mismatch> {
    facts
        .iter()
        .filter_map(|f| match evaluate(m, &f.query) {
            Ok(v) if v == f.value => None,
            Ok(v) => Some(Mismatch {
                fact: f.clone(),
                recomputed: Some(v),
                error: None,
            }),
            Err(e) => Some(Mismatch {
                fact: f.clone(),
                recomputed: None,
                error: Some(e.to_string()),
            }),
        })
        .collect()
}
