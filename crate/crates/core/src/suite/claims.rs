//! The claim registry. Each claim is evaluated on one instance as a list of
//! cases (one per submodule, ideal or quotient, depending on the claim);
//! every case carries a hypothesis, a conclusion and a lazily built list of
//! facts that document it.

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::corpus::Instance;
use crate::ideal::sqrt_of;
use crate::subset::SubSet;

use super::facts::{Fact, Query};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Implication,
    Equality,
    /// Searched for, never failed.
    Existence,
}

/// What a claim sees of one instance.
pub struct Env<'a> {
    pub instance: &'a Instance,
    pub a: &'a Analysis,
    /// β(N) = N for every submodule N of every corpus module over this ring.
    pub absolutely_radical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub subject: String,
    pub facts: Vec<Fact>,
}

/// Case collector for one (claim, instance) pair.
#[derive(Debug)]
pub struct Cases {
    mode: Mode,
    negate: bool,
    pub examined: usize,
    pub applicable: usize,
    /// First case whose conclusion failed (for existence claims: first
    /// case exhibiting the searched property).
    pub witness: Option<Witness>,
}

impl Cases {
    pub fn new(mode: Mode, negate: bool) -> Self {
        Cases {
            mode,
            negate,
            examined: 0,
            applicable: 0,
            witness: None,
        }
    }

    pub fn case(
        &mut self,
        subject: impl FnOnce() -> String,
        hypothesis: bool,
        conclusion: bool,
        facts: impl FnOnce() -> Vec<Fact>,
    ) {
        self.examined += 1;
        if !hypothesis {
            return;
        }
        self.applicable += 1;
        let conclusion = conclusion != self.negate;
        let record = match self.mode {
            Mode::Existence => conclusion,
            _ => !conclusion,
        };
        if record && self.witness.is_none() {
            self.witness = Some(Witness {
                subject: subject(),
                facts: facts(),
            });
        }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub mode: Mode,
    /// The conclusion quantifies over all modules or submodules of a ring
    /// and is only checked on the corpus.
    pub corpus_relative: bool,
    pub eval: fn(&Env, &mut Cases),
}

impl std::fmt::Debug for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Claim").field("id", &self.id).finish()
    }
}

fn n(a: &Analysis, i: usize) -> Vec<usize> {
    a.sub(i).to_vec()
}

fn at(a: &Analysis, i: usize) -> impl FnOnce() -> String + '_ {
    move || format!("N = {}", a.sub(i))
}

fn fact(q: Query, s: &SubSet) -> Fact {
    Fact::new(q, s)
}

fn beta(a: &Analysis, i: usize) -> Fact {
    fact(Query::Beta { n: n(a, i) }, a.sub(a.ctx.beta(i)))
}

fn beta_co(a: &Analysis, i: usize) -> Fact {
    fact(Query::BetaCo { n: n(a, i) }, a.sub(a.ctx.beta_co(i)))
}

fn generated(a: &Analysis, i: usize) -> Fact {
    fact(Query::EnvelopeGenerated { n: n(a, i) }, a.sub(a.subs[i].generated))
}

fn raw(a: &Analysis, i: usize) -> Fact {
    fact(Query::EnvelopeRaw { n: n(a, i) }, &a.subs[i].envelope.raw)
}

fn rf(a: &Analysis, i: usize) -> Fact {
    Fact::new(Query::RadicalFormula { n: n(a, i) }, a.subs[i].rf)
}

fn two_primal(a: &Analysis, i: usize) -> Fact {
    Fact::new(Query::TwoPrimal { n: n(a, i) }, a.subs[i].two_primal)
}

fn commutative(a: &Analysis) -> Fact {
    Fact::new(Query::RingCommutative, a.ring.commutative)
}

fn module_rf(a: &Analysis) -> Fact {
    Fact::new(Query::ModuleRadicalFormula, a.rf_failure().map(|i| a.sub(i)))
}

fn cs(a: &Analysis, i: usize) -> Fact {
    Fact::new(Query::CompletelySemiprime { n: n(a, i) }, a.ctx.is_completely_semiprime(i))
}

fn class_facts(a: &Analysis, i: usize) -> Vec<Fact> {
    let c = &a.subs[i].classes;
    let mut f = vec![
        Fact::new(Query::LzCs { n: n(a, i) }, c.lz_cs),
        Fact::new(Query::Symmetric { n: n(a, i) }, c.symmetric),
        Fact::new(Query::Ifp { n: n(a, i) }, c.ifp),
        Fact::new(Query::SemiSymmetric { n: n(a, i) }, c.semi_symmetric),
        two_primal(a, i),
    ];
    if !a.sub(i).is_full() {
        f.push(cs(a, i));
    }
    f
}

fn in_some_class(a: &Analysis, i: usize) -> bool {
    let c = &a.subs[i].classes;
    c.lz_cs || c.ifp || c.symmetric || c.semi_symmetric
}

fn proper(a: &Analysis, i: usize) -> bool {
    !a.sub(i).is_full()
}

/// Hypotheses of the zero-submodule lemma: a projective (or free) module
/// that is 2-primal, semi-symmetric, IFP, symmetric or reduced, or any
/// projective module over a commutative ring.
fn zero_lemma_hypothesis(e: &Env) -> bool {
    let a = e.a;
    let c = &a.subs[a.zero()].classes;
    let projective = e.instance.tags.free || e.instance.tags.projective;
    projective && (c.two_primal || c.semi_symmetric || c.ifp || c.symmetric || c.lz_cs || a.ring.commutative)
}

fn c1(e: &Env, c: &mut Cases) {
    let ra = &e.a.ring;
    for (i, s) in ra.ideals.ideals().iter().enumerate() {
        let sqrt = sqrt_of(&ra.ring, s);
        let radical = ra.ideals.prime_radical_of(s);
        let agree = s.is_full() || ra.ideals.is_prime(i) == ra.ideals.is_completely_prime(i);
        c.case(
            || format!("I = {s}"),
            ra.commutative,
            sqrt == radical && agree,
            || {
                let mut f = vec![
                    commutative(e.a),
                    fact(Query::Sqrt { ideal: s.to_vec() }, &sqrt),
                    fact(Query::IdealPrimeRadical { ideal: s.to_vec() }, &radical),
                ];
                if !s.is_full() {
                    f.push(Fact::new(Query::IdealPrime { ideal: s.to_vec() }, ra.ideals.is_prime(i)));
                    f.push(Fact::new(
                        Query::IdealCompletelyPrime { ideal: s.to_vec() },
                        ra.ideals.is_completely_prime(i),
                    ));
                }
                f
            },
        );
    }
}

fn c2(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in 0..a.len() {
        let ok = a.sub(a.subs[i].generated).is_subset(a.sub(a.ctx.beta_co(i)));
        c.case(at(a, i), true, ok, || vec![generated(a, i), beta_co(a, i)]);
    }
}

fn c3(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in 0..a.len() {
        let hyp = proper(a, i) && a.ctx.is_completely_semiprime(i);
        c.case(at(a, i), hyp, a.subs[i].envelope.raw == *a.sub(i), || vec![cs(a, i), raw(a, i)]);
    }
}

fn c4(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in 0..a.len() {
        let hyp = proper(a, i) && a.ctx.is_completely_semiprime(i);
        let d = &a.subs[i];
        c.case(at(a, i), hyp, d.raw_is_submodule, || {
            vec![
                cs(a, i),
                raw(a, i),
                Fact::new(Query::IsSubmodule { set: d.envelope.raw.to_vec() }, d.raw_is_submodule),
            ]
        });
    }
}

fn c5(e: &Env, c: &mut Cases) {
    let a = e.a;
    let all = (0..a.len()).filter(|&i| proper(a, i)).all(|i| a.ctx.is_completely_semiprime(i));
    for i in 0..a.len() {
        let d = &a.subs[i];
        c.case(at(a, i), all, d.raw_is_submodule, || {
            let mut f: Vec<Fact> = (0..a.len()).filter(|&j| proper(a, j)).map(|j| cs(a, j)).collect();
            f.push(raw(a, i));
            f.push(Fact::new(Query::IsSubmodule { set: d.envelope.raw.to_vec() }, d.raw_is_submodule));
            f
        });
    }
}

fn c6(e: &Env, c: &mut Cases) {
    let a = e.a;
    let z = a.zero();
    let b = a.ctx.beta(z);
    c.case(
        || "N = 0".into(),
        a.two_primal_module(),
        a.subs[b].envelope.raw == *a.sub(b),
        || vec![two_primal(a, z), beta(a, z), raw(a, b)],
    );
}

fn c7(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in 0..a.len() {
        let b = a.ctx.beta(i);
        let ok = a.sub(a.subs[i].generated).is_subset(a.sub(b)) && a.subs[b].generated == b;
        c.case(at(a, i), a.subs[i].two_primal, ok, || {
            vec![two_primal(a, i), generated(a, i), beta(a, i), generated(a, b)]
        });
    }
}

fn c8(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in 0..a.len() {
        let q = &a.quotients[i];
        let qz = q.zero();
        let conds = [
            a.ctx.beta(i) == i,
            a.ctx.beta_co(i) == i,
            q.ctx.beta_co(qz) == qz,
            q.ctx.beta(qz) == qz,
        ];
        let ok = conds.iter().all(|&x| x == conds[0]) && (!conds[0] || a.subs[i].rf);
        c.case(at(a, i), a.subs[i].two_primal, ok, || {
            let zero = q.ctx.sub(qz).to_vec();
            vec![
                two_primal(a, i),
                beta(a, i),
                beta_co(a, i),
                fact(
                    Query::QuotientBetaCo {
                        kernel: n(a, i),
                        n: zero.clone(),
                    },
                    q.ctx.sub(q.ctx.beta_co(qz)),
                ),
                fact(Query::QuotientBeta { kernel: n(a, i), n: zero }, q.ctx.sub(q.ctx.beta(qz))),
                rf(a, i),
            ]
        });
    }
}

fn c9(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in (0..a.len()).filter(|&i| proper(a, i)) {
        let hyp = (a.ring.commutative && a.ctx.is_prime(i)) || a.ctx.is_completely_prime(i);
        c.case(at(a, i), hyp, a.subs[i].rf, || {
            vec![
                commutative(a),
                Fact::new(Query::Prime { n: n(a, i) }, a.ctx.is_prime(i)),
                Fact::new(Query::CompletelyPrime { n: n(a, i) }, a.ctx.is_completely_prime(i)),
                rf(a, i),
            ]
        });
    }
}

fn ring_times_module(a: &Analysis) -> [Fact; 2] {
    [
        fact(Query::BetaRingTimesModule, a.sub(a.beta_r_m)),
        fact(Query::BetaCoRingTimesModule, a.sub(a.beta_co_r_m)),
    ]
}

fn c10(e: &Env, c: &mut Cases) {
    let a = e.a;
    let z = a.zero();
    let eq = a.ctx.beta(z) == a.beta_r_m || a.ctx.beta_co(z) == a.beta_co_r_m;
    c.case(|| "N = 0".into(), a.two_primal_module() && eq, a.subs[z].rf, || {
        let mut f = vec![two_primal(a, z), beta(a, z), beta_co(a, z)];
        f.extend(ring_times_module(a));
        f.push(rf(a, z));
        f
    });
}

fn c11(e: &Env, c: &mut Cases) {
    let a = e.a;
    let z = a.zero();
    let tags = e.instance.tags;
    let ok = a.ctx.beta(z) == a.beta_r_m && a.ctx.beta_co(z) == a.beta_co_r_m;
    c.case(|| format!("M ({tags:?})"), tags.free || tags.projective, ok, || {
        let mut f = vec![beta(a, z), beta_co(a, z)];
        f.extend(ring_times_module(a));
        f
    });
}

fn c12(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in 0..a.len() {
        let cv = &a.subs[i].classes;
        let ok = cv.chain_violation(proper(a, i)).is_none() && (!a.ring.commutative || cv.symmetric);
        c.case(at(a, i), true, ok, || {
            let mut f = class_facts(a, i);
            f.push(commutative(a));
            f
        });
    }
}

fn c13(e: &Env, c: &mut Cases) {
    let a = e.a;
    let z = a.zero();
    c.case(|| "N = 0".into(), zero_lemma_hypothesis(e), a.subs[z].rf, || {
        let mut f = class_facts(a, z);
        f.push(commutative(a));
        f.push(rf(a, z));
        f
    });
}

fn c14(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in 0..a.len() {
        let hyp = in_some_class(a, i) && a.ctx.beta(i) == i;
        c.case(at(a, i), hyp, a.subs[i].rf, || {
            let mut f = class_facts(a, i);
            f.push(beta(a, i));
            f.push(rf(a, i));
            f
        });
    }
}

fn c15(e: &Env, c: &mut Cases) {
    let a = e.a;
    for (k, q) in a.quotients.iter().enumerate() {
        let quotient_rf = |j: usize| {
            Fact::new(
                Query::QuotientRadicalFormula {
                    kernel: n(a, k),
                    n: q.ctx.sub(j).to_vec(),
                },
                q.rf[j],
            )
        };
        for i in 0..a.len() {
            if let Some(j) = q.image[i] {
                c.case(
                    || format!("K = {}, N = {}", a.sub(k), a.sub(i)),
                    a.subs[i].rf,
                    q.rf[j],
                    || vec![rf(a, i), quotient_rf(j)],
                );
            }
        }
        for (j, &p) in q.preimage.iter().enumerate() {
            c.case(
                || format!("K = {}, N' = {} in M/K", a.sub(k), q.ctx.sub(j)),
                q.rf[j],
                a.subs[p].rf,
                || vec![quotient_rf(j), rf(a, p)],
            );
        }
    }
}

fn c16(e: &Env, c: &mut Cases) {
    let a = e.a;
    let z = a.zero();
    let tags = e.instance.tags;
    let hyp = zero_lemma_hypothesis(e) || (a.two_primal_module() && (tags.free || tags.projective));
    c.case(|| format!("M ({tags:?})"), hyp, a.rf_failure().is_none(), || {
        let mut f = class_facts(a, z);
        f.push(commutative(a));
        f.push(module_rf(a));
        f
    });
}

fn c17(e: &Env, c: &mut Cases) {
    let a = e.a;
    let z = a.zero();
    let hyp = a.ring.semisimple() && (a.two_primal_module() || a.ring.commutative);
    c.case(|| "M".into(), hyp, a.rf_failure().is_none(), || {
        vec![
            fact(Query::Jacobson, &a.ring.jacobson),
            two_primal(a, z),
            commutative(a),
            module_rf(a),
        ]
    });
}

fn c18(e: &Env, c: &mut Cases) {
    let a = e.a;
    let hyp = e.absolutely_radical && (0..a.len()).all(|i| in_some_class(a, i));
    c.case(|| "M".into(), hyp, a.rf_failure().is_none(), || {
        let mut f: Vec<Fact> = (0..a.len()).map(|i| beta(a, i)).collect();
        f.push(module_rf(a));
        f
    });
}

fn c19(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in 0..a.len() {
        let inclusion = a.inclusion(i);
        let d = &a.subs[i];
        let q = &a.quotients[i];
        let qz = q.zero();
        c.case(at(a, i), d.rf && inclusion, d.two_primal, || {
            vec![rf(a, i), beta_co(a, i), generated(a, i), two_primal(a, i)]
        });
        c.case(at(a, i), d.two_primal && inclusion, q.rf[qz], || {
            vec![
                two_primal(a, i),
                beta_co(a, i),
                generated(a, i),
                Fact::new(
                    Query::QuotientRadicalFormula {
                        kernel: n(a, i),
                        n: q.ctx.sub(qz).to_vec(),
                    },
                    q.rf[qz],
                ),
            ]
        });
    }
}

fn c20(e: &Env, c: &mut Cases) {
    let a = e.a;
    let z = a.zero();
    c.case(
        || "N = 0".into(),
        a.inclusion(z),
        a.subs[z].rf == a.two_primal_module(),
        || vec![beta_co(a, z), generated(a, z), rf(a, z), two_primal(a, z)],
    );
}

fn c21(e: &Env, c: &mut Cases) {
    let a = e.a;
    for i in 0..a.len() {
        let hyp = a.ctx.beta_co(i) == i || a.subs[i].generated == a.full();
        c.case(at(a, i), hyp, a.inclusion(i), || vec![beta_co(a, i), generated(a, i)]);
    }
}

fn c22(e: &Env, c: &mut Cases) {
    let a = e.a;
    let z = a.zero();
    c.case(|| "N = 0".into(), true, !a.inclusion(z), || vec![beta_co(a, z), generated(a, z)]);
}

fn c23(e: &Env, c: &mut Cases) {
    let r = e.a.reduced;
    c.case(
        || "M".into(),
        true,
        r[0] == r[1] && r[1] == r[2],
        || {
            (0..3)
                .map(|k| Fact::new(Query::Reduced { form: k as u8 + 1 }, r[k]))
                .collect()
        },
    );
}

macro_rules! claim {
    ($id:literal, $mode:ident, $rel:literal, $f:ident, $s:literal) => {
        Claim {
            id: $id,
            statement: $s,
            mode: Mode::$mode,
            corpus_relative: $rel,
            eval: $f,
        }
    };
}

static REGISTRY: [Claim; 23] = [
    claim!("C1", Equality, false, c1, "R commutative => sqrt(I) = beta(I) and prime <=> completely prime, for every ideal I"),
    claim!("C2", Implication, false, c2, "<E(N)> is contained in beta_co(N) for every submodule N"),
    claim!("C3", Equality, false, c3, "N completely semiprime => E(N) = N"),
    claim!("C4", Implication, false, c4, "N completely semiprime => E(N) is a submodule"),
    claim!("C5", Implication, false, c5, "every proper submodule completely semiprime => E(N) is a submodule for every N"),
    claim!("C6", Equality, false, c6, "M 2-primal => E(beta(M)) = beta(M)"),
    claim!("C7", Equality, false, c7, "N 2-primal => <E(N)> in beta(N) and <E(beta(N))> = beta(N)"),
    claim!("C8", Equality, false, c8, "N 2-primal => beta(N) = N <=> beta_co(N) = N <=> beta_co(M/N) = 0 <=> beta(M/N) = 0, and beta(N) = N => RF(N)"),
    claim!("C9", Implication, false, c9, "(R commutative and N prime) or N completely prime => RF(N)"),
    claim!("C10", Implication, false, c10, "M 2-primal and (beta(M) = beta(R)M or beta_co(M) = beta_co(R)M) => RF(0)"),
    claim!("C11", Equality, false, c11, "M free or an idempotent image => beta(M) = beta(R)M and beta_co(M) = beta_co(R)M"),
    claim!("C12", Implication, false, c12, "Lee-Zhou => symmetric => IFP => semi-symmetric => 2-primal; Lee-Zhou => completely semiprime; R commutative => symmetric"),
    claim!("C13", Implication, false, c13, "M projective and one of 2-primal, semi-symmetric, IFP, symmetric, reduced, R commutative => RF(0)"),
    claim!("C14", Implication, false, c14, "N Lee-Zhou, IFP, symmetric or semi-symmetric and beta(N) = N => RF(N)"),
    claim!("C15", Implication, false, c15, "phi: M -> M/K; RF(N) => RF(phi(N)) for N containing K; RF(N') => RF(phi^-1(N'))"),
    claim!("C16", Implication, true, c16, "M as in C13, or M 2-primal and projective => RF at every submodule"),
    claim!("C17", Implication, true, c17, "J(R) = 0 and (M 2-primal or R commutative) => RF at every submodule"),
    claim!("C18", Implication, true, c18, "beta(N) = N across the corpus over R and every submodule of M is Lee-Zhou, IFP, symmetric or semi-symmetric => RF at every submodule"),
    claim!("C19", Implication, false, c19, "RF(N) and beta_co(N) in <E(N)> => N 2-primal; N 2-primal and beta_co(N) in <E(N)> => RF(0) in M/N"),
    claim!("C20", Equality, false, c20, "beta_co(M) in <E(0)> => (RF(0) <=> M 2-primal)"),
    claim!("C21", Implication, false, c21, "beta_co(N) = N or <E(N)> = M => beta_co(N) in <E(N)>"),
    claim!("C22", Existence, false, c22, "some M has beta_co(M) not contained in <E(0)>"),
    claim!("C23", Equality, false, c23, "(am = 0 => Rm cap aM = 0) <=> (a^2m = 0 => aRm = 0) <=> (am = 0 => aRm = 0 and a^2m = 0 => am = 0)"),
];

/// All claims in ID order.
pub fn registry() -> &'static [Claim] {
    &REGISTRY
}

pub fn claim(id: &str) -> Option<&'static Claim> {
    REGISTRY.iter().find(|c| c.id.eq_ignore_ascii_case(id))
}
