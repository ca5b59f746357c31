//! JSON-compatible construction trees for rings and modules.
//!
//! A recipe is a self-contained description: rebuilding it always yields the
//! same tables, so an instance can be reproduced from its recipe alone.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::ideal_generated;
use crate::lattice::submodule_generated;
use crate::module::{
    column_module, free_module_within, idempotent_image, quotient_module, regular_module, Module, ModuleHom,
    ModuleTables, MODULE_ORDER_BOUND,
};
use crate::ring::{
    make_cyclic_ring, make_matrix_ring_within, make_product_ring_within, make_quotient_ring, Ring, RingTables,
    RING_ORDER_BOUND,
};
use crate::subset::SubSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Cyclic {
        n: usize,
    },
    Matrix {
        p: usize,
        k: usize,
    },
    Triangular {
        p: usize,
        k: usize,
    },
    Product {
        a: Box<RingSpec>,
        b: Box<RingSpec>,
    },
    /// R / (generators)
    Quotient {
        ring: Box<RingSpec>,
        generators: Vec<usize>,
    },
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default)]
        label: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Regular {
        ring: RingSpec,
    },
    Free {
        ring: RingSpec,
        rank: usize,
    },
    Column {
        p: usize,
        k: usize,
    },
    /// M / submodule generated by `generators`
    Quotient {
        module: Box<ModuleSpec>,
        generators: Vec<usize>,
    },
    /// R^rank / submodule generated by `generators`
    Presentation {
        ring: RingSpec,
        rank: usize,
        generators: Vec<usize>,
    },
    /// Image of the idempotent endomorphism x ↦ x·E of R^rank.
    Image {
        ring: RingSpec,
        rank: usize,
        matrix: Vec<Vec<usize>>,
    },
    Tables {
        ring: RingSpec,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
        #[serde(default)]
        label: Option<String>,
    },
}

/// Structural facts known from the construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    pub free: bool,
    pub projective: bool,
}

impl RingSpec {
    pub fn build(&self) -> Result<Ring> {
        self.build_within(RING_ORDER_BOUND)
    }

    pub fn build_within(&self, bound: usize) -> Result<Ring> {
        match self {
            RingSpec::Cyclic { n } => {
                if *n > bound {
                    return Err(Error::SizeLimit {
                        what: format!("Z_{n}"),
                        order: *n,
                        bound,
                    });
                }
                make_cyclic_ring(*n)
            }
            RingSpec::Matrix { p, k } => make_matrix_ring_within(*p, *k, false, bound),
            RingSpec::Triangular { p, k } => make_matrix_ring_within(*p, *k, true, bound),
            RingSpec::Product { a, b } => {
                make_product_ring_within(&a.build_within(bound)?, &b.build_within(bound)?, bound)
            }
            RingSpec::Quotient { ring, generators } => {
                let r = ring.build_within(bound)?;
                let gens = element_set(r.order(), generators, "ring")?;
                Ok(make_quotient_ring(&r, &ideal_generated(&r, &gens))?.0)
            }
            RingSpec::Tables { add, mul, label } => {
                if add.len() > bound {
                    return Err(Error::SizeLimit {
                        what: "ring tables".into(),
                        order: add.len(),
                        bound,
                    });
                }
                Ring::validate(RingTables {
                    add: add.clone(),
                    mul: mul.clone(),
                    zero: None,
                    one: None,
                    label: label.clone().unwrap_or_else(|| "tables".into()),
                })
            }
        }
    }
}

impl ModuleSpec {
    pub fn build(&self) -> Result<Arc<Module>> {
        self.build_within(RING_ORDER_BOUND, MODULE_ORDER_BOUND)
    }

    pub fn build_within(&self, ring_bound: usize, module_bound: usize) -> Result<Arc<Module>> {
        let ring = |r: &RingSpec| r.build_within(ring_bound).map(Arc::new);
        Ok(match self {
            ModuleSpec::Regular { ring: r } => Arc::new(regular_module(ring(r)?)),
            ModuleSpec::Free { ring: r, rank } => Arc::new(free_module_within(ring(r)?, *rank, module_bound)?),
            ModuleSpec::Column { p, k } => {
                let order = p.checked_pow((k * k) as u32).unwrap_or(usize::MAX);
                if order > ring_bound {
                    return Err(Error::SizeLimit {
                        what: format!("M_{k}(F_{p})"),
                        order,
                        bound: ring_bound,
                    });
                }
                Arc::new(column_module(*p, *k)?)
            }
            ModuleSpec::Quotient { module, generators } => {
                let m = module.build_within(ring_bound, module_bound)?;
                quotient_by_generators(&m, generators)?
            }
            ModuleSpec::Presentation { ring: r, rank, generators } => {
                let f = Arc::new(free_module_within(ring(r)?, *rank, module_bound)?);
                quotient_by_generators(&f, generators)?
            }
            ModuleSpec::Image { ring: r, rank, matrix } => {
                let f = Arc::new(free_module_within(ring(r)?, *rank, module_bound)?);
                let e = ModuleHom::free_matrix(f.clone(), matrix)?;
                idempotent_image(&f, &e)?.0
            }
            ModuleSpec::Tables { ring: r, add, act, label } => Arc::new(Module::validate(
                ring(r)?,
                ModuleTables {
                    add: add.clone(),
                    act: act.clone(),
                    zero: None,
                    label: label.clone().unwrap_or_else(|| "tables".into()),
                },
            )?),
        })
    }

    /// Free and projective tags implied by the construction.
    pub fn tags(&self) -> Tags {
        match self {
            ModuleSpec::Regular { .. } | ModuleSpec::Free { .. } => Tags {
                free: true,
                projective: true,
            },
            ModuleSpec::Image { .. } => Tags {
                free: false,
                projective: true,
            },
            _ => Tags::default(),
        }
    }
}

fn element_set(order: usize, elems: &[usize], what: &str) -> Result<SubSet> {
    if let Some(&x) = elems.iter().find(|&&x| x >= order) {
        return Err(Error::InvalidParameter(format!("{what} element {x} out of range (order {order})")));
    }
    Ok(SubSet::from_indices(order, elems.iter().copied()))
}

fn quotient_by_generators(m: &Arc<Module>, generators: &[usize]) -> Result<Arc<Module>> {
    let gens = element_set(m.order(), generators, "module")?;
    let n = submodule_generated(m, &gens);
    Ok(quotient_module(m, n.members())?.0)
}

/// Parses a JSON value into `T`, reporting the JSON path of the failure.
pub fn from_json<T: for<'de> Deserialize<'de>>(v: &serde_json::Value) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Config(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_rebuild() {
        let spec = ModuleSpec::Quotient {
            module: Box::new(ModuleSpec::Free {
                ring: RingSpec::Cyclic { n: 4 },
                rank: 2,
            }),
            generators: vec![2],
        };
        let text = serde_json::to_string(&spec).unwrap();
        let back: ModuleSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let a = spec.build().unwrap();
        let b = back.build().unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.order(), 8);
    }

    #[test]
    fn parses_user_shapes() {
        let v = json!({"kind": "regular", "ring": {"kind": "product",
            "a": {"kind": "cyclic", "n": 2}, "b": {"kind": "cyclic", "n": 3}}});
        let m: ModuleSpec = from_json(&v).unwrap();
        assert_eq!(m.build().unwrap().order(), 6);
        assert!(m.tags().free);

        let bad = json!({"kind": "regular", "ring": {"kind": "cyclic"}});
        assert!(matches!(from_json::<ModuleSpec>(&bad), Err(Error::Config(_))));
    }

    #[test]
    fn image_of_first_coordinate_projection() {
        let spec = ModuleSpec::Image {
            ring: RingSpec::Cyclic { n: 4 },
            rank: 2,
            matrix: vec![vec![1, 0], vec![0, 0]],
        };
        let m = spec.build().unwrap();
        assert_eq!(m.order(), 4);
        assert!(spec.tags().projective && !spec.tags().free);
    }

    #[test]
    fn broken_tables_report_axiom() {
        let spec = RingSpec::Tables {
            add: vec![vec![0, 1], vec![1, 0]],
            mul: vec![vec![0, 0], vec![0, 0]],
            label: None,
        };
        assert!(matches!(spec.build(), Err(Error::Axiom(crate::Axiom::NoUnit))));
    }
}
