mod common;

use std::sync::Arc;

use common::{mask, ModuleOracle, RingOracle};
use proptest::prelude::*;
use radform::ideal::sqrt_ideal;
use radform::ideal::Ideal;
use radform::lattice::{submodule_generated, Submodule, SubmoduleLattice};
use radform::module::{quotient_module, Module};
use radform::primal::{self, PrimalContext};
use radform::recipe::{ModuleSpec, RingSpec};
use radform::{Error, SubSet};

fn small_specs() -> Vec<ModuleSpec> {
    let cyc = |n| RingSpec::Cyclic { n };
    let mut v: Vec<ModuleSpec> = (1..=12).map(|n| ModuleSpec::Regular { ring: cyc(n) }).collect();
    v.push(ModuleSpec::Free { ring: cyc(2), rank: 2 });
    v.push(ModuleSpec::Free { ring: cyc(3), rank: 2 });
    v.push(ModuleSpec::Free { ring: cyc(4), rank: 2 });
    v.push(ModuleSpec::Regular {
        ring: RingSpec::Product {
            a: Box::new(cyc(2)),
            b: Box::new(cyc(4)),
        },
    });
    v.push(ModuleSpec::Regular {
        ring: RingSpec::Triangular { p: 2, k: 2 },
    });
    v.push(ModuleSpec::Regular {
        ring: RingSpec::Matrix { p: 2, k: 2 },
    });
    v.push(ModuleSpec::Column { p: 2, k: 2 });
    v.push(ModuleSpec::Quotient {
        module: Box::new(ModuleSpec::Free { ring: cyc(4), rank: 2 }),
        generators: vec![2],
    });
    v.push(ModuleSpec::Image {
        ring: RingSpec::Matrix { p: 2, k: 2 },
        rank: 1,
        matrix: vec![vec![8]],
    });
    v
}

fn pick() -> impl Strategy<Value = (Arc<Module>, usize)> {
    let specs = small_specs();
    (0..specs.len(), any::<usize>()).prop_map(move |(i, seed)| (specs[i].build().unwrap(), seed))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn radicals_match_the_oracle((m, seed) in pick()) {
        let ctx = PrimalContext::new(m.clone()).unwrap();
        let i = seed % ctx.len();
        let n = mask(&ctx.sub(i).to_vec());
        let o = ModuleOracle::new(&m);
        prop_assert_eq!(mask(&ctx.sub(ctx.beta(i)).to_vec()), o.beta(n));
        prop_assert_eq!(mask(&ctx.sub(ctx.beta_co(i)).to_vec()), o.beta_co(n));
        prop_assert_eq!(mask(&ctx.envelope(ctx.sub(i)).raw.to_vec()), o.envelope(n));
        prop_assert_eq!(ctx.radical_formula(i).holds, o.radical_formula(n));
    }

    #[test]
    fn radical_ordering((m, seed) in pick()) {
        let ctx = PrimalContext::new(m.clone()).unwrap();
        let i = seed % ctx.len();
        let n = ctx.sub(i);
        let b = ctx.beta(i);
        let bc = ctx.beta_co(i);
        prop_assert!(n.is_subset(ctx.sub(b)));
        prop_assert!(ctx.sub(b).is_subset(ctx.sub(bc)));
        prop_assert_eq!(ctx.beta(b), b);
        prop_assert_eq!(ctx.beta_co(bc), bc);
        let env = ctx.envelope(n);
        prop_assert!(n.is_subset(&env.raw));
        prop_assert!(env.generated.is_subset(ctx.sub(bc)));
        if ctx.is_completely_prime(i) {
            prop_assert!(ctx.is_prime(i));
            prop_assert!(ctx.is_completely_semiprime(i));
        }
        if ctx.is_prime(i) {
            prop_assert!(ctx.is_semiprime(i));
        }
    }

    #[test]
    fn generated_submodule_is_least((m, _seed) in pick(), picks in proptest::collection::vec(any::<usize>(), 0..4)) {
        let gens = SubSet::from_indices(m.order(), picks.iter().map(|p| p % m.order()));
        let s = submodule_generated(&m, &gens);
        prop_assert!(gens.is_subset(s.members()));
        let lat = SubmoduleLattice::of(&m).unwrap();
        prop_assert!(lat.index_of(s.members()).is_some());
        for t in lat.submodules() {
            if gens.is_subset(t) {
                prop_assert!(s.members().is_subset(t));
            }
        }
    }

    #[test]
    fn quotients_have_the_right_order((m, seed) in pick()) {
        let lat = SubmoduleLattice::of(&m).unwrap();
        let n = lat.get(seed % lat.len()).clone();
        let (q, phi) = quotient_module(&m, &n).unwrap();
        prop_assert_eq!(q.order() * n.count(), m.order());
        prop_assert_eq!(phi.kernel(), n.clone());
        prop_assert!(phi.is_surjective());
        // the correspondence: submodules of M/N match those of M above N
        let above = lat.submodules().iter().filter(|t| n.is_subset(t)).count();
        prop_assert_eq!(SubmoduleLattice::of(&q).unwrap().len(), above);
    }

    #[test]
    fn one_shot_and_context_agree((m, seed) in pick()) {
        let ctx = PrimalContext::new(m.clone()).unwrap();
        let i = seed % ctx.len();
        let n = Submodule::new(&m, ctx.sub(i).clone()).unwrap();
        let beta = primal::prime_radical(&m, &n).unwrap();
        prop_assert_eq!(beta.members(), ctx.sub(ctx.beta(i)));
        if n.is_proper() {
            prop_assert_eq!(primal::is_prime_submodule(&m, &n).unwrap(), ctx.is_prime(i));
            prop_assert_eq!(primal::is_completely_prime_submodule(&m, &n).unwrap(), ctx.is_completely_prime(i));
        } else {
            prop_assert!(matches!(primal::is_prime_submodule(&m, &n), Err(Error::ImproperSubmodule)));
            prop_assert!(!ctx.is_prime(i) && !ctx.is_completely_prime(i));
        }
    }

    #[test]
    fn nil_radical_matches_oracle((m, _seed) in pick()) {
        let r = m.ring();
        let o = RingOracle::new(r);
        let nil = sqrt_ideal(r, &Ideal::zero(r)).unwrap();
        prop_assert_eq!(mask(&nil.to_vec()), o.nilpotents());
        prop_assert_eq!(mask(&radform::ideal::ring_prime_radical(r).unwrap().to_vec()), o.beta());
        prop_assert_eq!(mask(&radform::ideal::ring_completely_prime_radical(r).unwrap().to_vec()), o.beta_co());
    }

    #[test]
    fn recipes_round_trip(i in 0usize..20) {
        let specs = small_specs();
        let spec = &specs[i % specs.len()];
        let text = serde_json::to_string(spec).unwrap();
        let back: ModuleSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, spec);
        prop_assert_eq!(back.build().unwrap().fingerprint(), spec.build().unwrap().fingerprint());
    }
}
