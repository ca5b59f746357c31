//! Deterministic generation of the instance corpus.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{ideal_generated, IdealLattice};
use crate::lattice::{submodule_generated, SubmoduleLattice};
use crate::module::Module;
use crate::recipe::{ModuleSpec, RingSpec, Tags};
use crate::ring::Ring;
use crate::subset::SubSet;

/// Environment variable holding a corpus spec (inline JSON or a file path)
/// that replaces the default.
pub const CORPUS_ENV: &str = "RADFORM_CORPUS";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusSpec {
    /// Cyclic rings Z_n for 1 <= n <= cyclic_max.
    pub cyclic_max: usize,
    /// Bound on every ring in the catalog.
    pub ring_order_max: usize,
    /// Bound on free modules (and hence on their quotients).
    pub module_order_max: usize,
    pub free_rank_max: usize,
    /// Full and upper-triangular matrix rings over F_2 and F_3, and column
    /// modules.
    pub include_matrix: bool,
    /// Quotient rings and quotient modules.
    pub include_quotients: bool,
    /// Products Z_a x Z_b (2 <= a <= b <= cyclic_max) with ab at most this.
    pub product_order_max: usize,
    /// Images Re of idempotents e of R acting on the right of R.
    pub include_images: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            cyclic_max: 12,
            ring_order_max: 16,
            module_order_max: 256,
            free_rank_max: 2,
            include_matrix: true,
            include_quotients: true,
            product_order_max: 8,
            include_images: true,
        }
    }
}

impl CorpusSpec {
    /// The default spec, or the one named by [`CORPUS_ENV`].
    pub fn from_env() -> Result<Self> {
        match std::env::var(CORPUS_ENV) {
            Ok(v) if !v.trim().is_empty() => {
                let text = if v.trim_start().starts_with('{') {
                    v
                } else {
                    std::fs::read_to_string(&v).map_err(|e| Error::Config(format!("{CORPUS_ENV}={v}: {e}")))?
                };
                serde_json::from_str(&text).map_err(|e| Error::Config(format!("{CORPUS_ENV}: {e}")))
            }
            _ => Ok(CorpusSpec::default()),
        }
    }

    /// Only rings that commute: no matrix rings or column modules.
    pub fn commutative_only(mut self) -> Self {
        self.include_matrix = false;
        self
    }
}

/// A module together with how to rebuild it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub label: String,
    pub recipe: ModuleSpec,
    pub tags: Tags,
    pub module: Arc<Module>,
}

/// The reproducible part of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descriptor {
    pub id: String,
    pub label: String,
    pub recipe: ModuleSpec,
    pub tags: Tags,
}

pub fn instance_id(label: &str, m: &Module) -> String {
    format!("{label}#{:016x}", m.fingerprint())
}

impl Instance {
    pub fn new(label: impl Into<String>, recipe: ModuleSpec, module: Arc<Module>) -> Self {
        let label = label.into();
        Instance {
            id: instance_id(&label, &module),
            tags: recipe.tags(),
            label,
            recipe,
            module,
        }
    }

    pub fn build(label: impl Into<String>, recipe: ModuleSpec) -> Result<Self> {
        let module = recipe.build()?;
        Ok(Self::new(label, recipe, module))
    }

    pub fn descriptor(&self) -> Descriptor {
        Descriptor {
            id: self.id.clone(),
            label: self.label.clone(),
            recipe: self.recipe.clone(),
            tags: self.tags,
        }
    }
}

impl Descriptor {
    /// Rebuilds the instance and checks it still has the recorded ID.
    pub fn rebuild(&self) -> Result<Instance> {
        let mut inst = Instance::build(self.label.clone(), self.recipe.clone())?;
        inst.tags = self.tags;
        if inst.id != self.id {
            return Err(Error::Inconsistency(format!(
                "recipe for {} rebuilt as {}",
                self.id, inst.id
            )));
        }
        Ok(inst)
    }
}

fn generators(universe: &SubSet, close: impl Fn(&SubSet) -> SubSet) -> Vec<usize> {
    let mut gens = vec![];
    let mut cur = close(&SubSet::empty(universe.universe()));
    for x in universe.iter() {
        if !cur.contains(x) {
            gens.push(x);
            cur = close(&SubSet::from_indices(universe.universe(), gens.iter().copied()));
        }
    }
    gens
}

fn ring_catalog(spec: &CorpusSpec) -> Vec<(String, RingSpec)> {
    let mut out = vec![];
    for n in 1..=spec.cyclic_max.min(spec.ring_order_max) {
        out.push((format!("Z{n}"), RingSpec::Cyclic { n }));
    }
    for a in 2..=spec.cyclic_max {
        for b in a..=spec.cyclic_max {
            if a * b <= spec.product_order_max.min(spec.ring_order_max) {
                out.push((
                    format!("Z{a}xZ{b}"),
                    RingSpec::Product {
                        a: Box::new(RingSpec::Cyclic { n: a }),
                        b: Box::new(RingSpec::Cyclic { n: b }),
                    },
                ));
            }
        }
    }
    if spec.include_matrix {
        for p in [2usize, 3] {
            for k in 2..=3usize {
                if p.pow((k * (k + 1) / 2) as u32) <= spec.ring_order_max {
                    out.push((format!("U{k}F{p}"), RingSpec::Triangular { p, k }));
                }
                if p.pow((k * k) as u32) <= spec.ring_order_max {
                    out.push((format!("M{k}F{p}"), RingSpec::Matrix { p, k }));
                }
            }
        }
    }
    out
}

/// Every instance described by `spec`, sorted by ID, one per distinct pair
/// of (ring, module) tables.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<Instance>> {
    let mut rings: Vec<(String, RingSpec, Arc<Ring>)> = vec![];
    let mut seen_rings = HashSet::new();
    for (label, rs) in ring_catalog(spec) {
        let r = Arc::new(rs.build_within(spec.ring_order_max)?);
        if !seen_rings.insert(r.fingerprint()) {
            continue;
        }
        rings.push((label.clone(), rs.clone(), r.clone()));
        if spec.include_quotients {
            let lat = IdealLattice::new(r.clone())?;
            for ideal in lat.ideals() {
                if ideal.count() == 1 || ideal.is_full() {
                    continue;
                }
                let gens = generators(ideal, |s| ideal_generated(&r, s).into_members());
                let qs = RingSpec::Quotient {
                    ring: Box::new(rs.clone()),
                    generators: gens.clone(),
                };
                let q = Arc::new(qs.build_within(spec.ring_order_max)?);
                if seen_rings.insert(q.fingerprint()) {
                    rings.push((format!("{label}/({})", join(&gens)), qs, q));
                }
            }
        }
    }

    // A module reached by several constructions keeps its first label and
    // collects the tags of all of them.
    let mut found: BTreeMap<String, Instance> = BTreeMap::new();
    let mut seen: HashMap<u64, String> = HashMap::new();
    let mut push = |inst: Instance| match seen.get(&inst.module.fingerprint()) {
        Some(id) => {
            let first = found.get_mut(id).expect("seen ids are stored");
            first.tags.free |= inst.tags.free;
            first.tags.projective |= inst.tags.projective;
        }
        None => {
            seen.insert(inst.module.fingerprint(), inst.id.clone());
            found.insert(inst.id.clone(), inst);
        }
    };
    if spec.include_matrix {
        for p in [2usize, 3] {
            for k in 2..=3usize {
                if p.pow((k * k) as u32) <= spec.ring_order_max {
                    let cspec = ModuleSpec::Column { p, k };
                    let m = cspec.build_within(spec.ring_order_max, spec.module_order_max)?;
                    push(Instance::new(format!("COL{k}F{p}"), cspec, m));
                }
            }
        }
    }
    for (label, rs, r) in &rings {
        let mut bases = vec![(format!("{label}:reg"), ModuleSpec::Regular { ring: rs.clone() })];
        let mut size = r.order();
        for rank in 2..=spec.free_rank_max {
            size = size.saturating_mul(r.order());
            if size > spec.module_order_max {
                break;
            }
            bases.push((
                format!("{label}:free{rank}"),
                ModuleSpec::Free {
                    ring: rs.clone(),
                    rank,
                },
            ));
        }
        for (blabel, bspec) in bases {
            let m = bspec.build_within(spec.ring_order_max, spec.module_order_max)?;
            push(Instance::new(blabel.clone(), bspec.clone(), m.clone()));
            if !spec.include_quotients {
                continue;
            }
            let lat = SubmoduleLattice::of(&m)?;
            for s in lat.submodules() {
                if s.count() == 1 {
                    continue;
                }
                let gens = generators(s, |t| submodule_generated(&m, t).into_members());
                let qspec = ModuleSpec::Quotient {
                    module: Box::new(bspec.clone()),
                    generators: gens.clone(),
                };
                let q = qspec.build_within(spec.ring_order_max, spec.module_order_max)?;
                push(Instance::new(format!("{blabel}/<{}>", join(&gens)), qspec, q));
            }
        }
        if spec.include_images {
            for e in r.elements() {
                if e == r.zero() || e == r.one() || r.mul(e, e) != e {
                    continue;
                }
                let ispec = ModuleSpec::Image {
                    ring: rs.clone(),
                    rank: 1,
                    matrix: vec![vec![e]],
                };
                let m = ispec.build_within(spec.ring_order_max, spec.module_order_max)?;
                push(Instance::new(format!("{label}:R*{e}"), ispec, m));
            }
        }
    }
    Ok(found.into_values().collect())
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_has_the_fixtures() {
        let corpus = generate_corpus(&CorpusSpec::default()).unwrap();
        let labels: Vec<&str> = corpus.iter().map(|i| i.label.as_str()).collect();
        for l in ["Z4:reg", "Z2:free2", "COL2F2", "U2F2:reg", "M2F2:reg", "Z2xZ4:reg", "M2F2:free2"] {
            assert!(labels.contains(&l), "{l} missing");
        }
        let ids: std::collections::HashSet<&str> = corpus.iter().map(|i| i.id.as_str()).collect();
        assert_eq!(ids.len(), corpus.len());
        let mut sorted = corpus.iter().map(|i| i.id.clone()).collect::<Vec<_>>();
        sorted.sort();
        assert_eq!(sorted, corpus.iter().map(|i| i.id.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn tiny_spec() {
        let spec = CorpusSpec {
            cyclic_max: 1,
            include_matrix: false,
            ..CorpusSpec::default()
        };
        let corpus = generate_corpus(&spec).unwrap();
        assert_eq!(corpus.len(), 1);
        assert_eq!(corpus[0].module.order(), 1);
    }

    #[test]
    fn ring_bound_one_leaves_the_zero_module() {
        let spec = CorpusSpec {
            ring_order_max: 1,
            ..CorpusSpec::default()
        };
        let corpus = generate_corpus(&spec).unwrap();
        assert_eq!(corpus.len(), 1);
        assert_eq!(corpus[0].module.ring().order(), 1);
    }

    #[test]
    fn ring_bound_excludes_large_matrix_rings() {
        let corpus = generate_corpus(&CorpusSpec::default()).unwrap();
        assert!(corpus.iter().all(|i| i.module.ring().order() <= 16));
        assert!(!corpus.iter().any(|i| i.label.starts_with("COL2F3") || i.label.starts_with("M2F3")));
    }

    #[test]
    fn descriptors_rebuild() {
        let spec = CorpusSpec {
            cyclic_max: 4,
            include_matrix: false,
            ..CorpusSpec::default()
        };
        for inst in generate_corpus(&spec).unwrap() {
            let d = inst.descriptor();
            let text = serde_json::to_string(&d).unwrap();
            let back: Descriptor = serde_json::from_str(&text).unwrap();
            assert_eq!(back.rebuild().unwrap().id, inst.id);
        }
    }
}
