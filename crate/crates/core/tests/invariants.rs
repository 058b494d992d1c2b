//! Structural invariants checked on the group corpus and on random diagrams.

use std::sync::Arc;

use normdec_core::category::*;
use normdec_core::fusion::{CollectionKind, FusionSystem};
use normdec_core::group::{library::*, FiniteGroup};
use normdec_core::homology::{chains_of, betti_of};
use normdec_core::linking::LinkingSystem;
use normdec_core::subdivision::{conj_classes_of_chains, enumerate_chains, linking_subdivision, DEFAULT_SUBDIVISION_BUDGET};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<(FiniteGroup, u32)> {
    vec![
        (cyclic(2), 2),
        (symmetric3(), 2),
        (dihedral8(), 2),
        (quaternion8(), 2),
        (alternating4(), 2),
        (symmetric4(), 2),
        (s3_times_c3(), 2),
        (alternating4(), 3),
    ]
}

fn fusion(i: usize) -> Arc<FusionSystem> {
    let (g, p) = corpus().swap_remove(i % 8);
    Arc::new(FusionSystem::new(g, p).unwrap())
}

fn linking(i: usize) -> LinkingSystem {
    let f = fusion(i);
    let c = f.build_collection(CollectionKind::Centric, None).unwrap();
    LinkingSystem::build(f, &c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transporter_to_self_is_normaliser(sys in 0usize..8, i in 0usize..64) {
        let f = fusion(sys);
        let g = f.group();
        let p = &f.subgroups()[i % f.subgroups().len()];
        prop_assert_eq!(g.transporter(p, p), g.normalizer(p).elements().to_vec());
    }

    #[test]
    fn fusion_hom_counts(sys in 0usize..8, i in 0usize..64, j in 0usize..64) {
        let f = fusion(sys);
        let n = f.subgroups().len();
        let (a, b) = (i % n, j % n);
        let g = f.group();
        let t = g.transporter(f.subgroup(a), f.subgroup(b)).len();
        prop_assert_eq!(f.hom(a, b).len() * f.centralizer_in_g(a).order(), t);
    }

    #[test]
    fn centricity_is_a_class_invariant(sys in 0usize..8, i in 0usize..64) {
        let f = fusion(sys);
        let a = i % f.subgroups().len();
        let c = f.is_centric(a);
        prop_assert!(f.class_of(a).into_iter().all(|b| f.is_centric(b) == c));
    }

    #[test]
    fn projection_is_a_functor(sys in 0usize..8, x in 0usize..4096, y in 0usize..4096) {
        let l = linking(sys);
        let cat = l.category();
        let f = (x % cat.n_morphisms()) as u32;
        let out: Vec<u32> = cat.out_of(cat.tgt(f)).collect();
        let g = out[y % out.len()];
        let fusion = l.fusion();
        prop_assert_eq!(l.project(cat.compose(g, f)), fusion.compose(l.project(g), l.project(f)));
        prop_assert_eq!(l.project(cat.identity(cat.src(f))), fusion.identity(l.subgroup_id(cat.src(f))));
    }

    #[test]
    fn factorise_then_recompose(sys in 0usize..8, x in 0usize..4096) {
        let l = linking(sys);
        let cat = l.category();
        let phi = (x % cat.n_morphisms()) as u32;
        let (iso, iota) = l.factorize(phi).unwrap();
        prop_assert!(cat.is_iso(iso));
        prop_assert_eq!(cat.compose(iota, iso), phi);
    }

    #[test]
    fn thomason_on_random_diagrams(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_poset_diagram(&mut rng, 4);
        let h = hocolim_homology_two_ways(&u, 3, 2, DEFAULT_SIMPLEX_BUDGET).unwrap();
        prop_assert!(h.agree(), "{:?}", h);
    }

    #[test]
    fn grothendieck_is_functorial_in_the_fibres(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_poset_diagram(&mut rng, 4);
        let t = grothendieck(&u);
        t.cat.check_axioms().unwrap();
        for k in u.base.objects() {
            prop_assert!(t.fiber_inclusion(&u, k).check(u.value(k), &t.cat).is_ok());
        }
        let proj = t.projection();
        prop_assert!(proj.check(&t.cat, &u.base).is_ok());
        // nerve maps of functors commute with faces, and boundaries square to zero
        let nt = nerve_truncated(&t.cat, 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        let nb = nerve_truncated(&u.base, 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        prop_assert!(nerve_map(&proj, &nt, &nb, &u.base).commutes_with_faces(&nt.sset, &nb.sset));
        prop_assert!(chains_of(&nt.sset, 2).check_boundaries().is_ok());
    }
}

#[test]
fn chain_posets_are_posets_and_chains_are_short() {
    for i in 0..8 {
        let f = fusion(i);
        let c = f.build_collection(CollectionKind::Centric, None).unwrap();
        let chains = enumerate_chains(&f, &c, None);
        let bound = (f.sylow().order() as f64).log2() + 1.0;
        assert!(chains.iter().all(|ch| (ch.len() as f64) < bound + 1e-9));
        let cp = conj_classes_of_chains(&f, chains);
        assert!(cp.poset.is_poset());
        for a in cp.poset.objects() {
            for b in cp.poset.objects() {
                assert!(cp.poset.hom(a, b).len() <= 1);
            }
        }
    }
}

#[test]
fn subdivision_hom_sets_are_free_transitive_orbits() {
    for i in 0..8 {
        let l = linking(i);
        let sd = linking_subdivision(&l, DEFAULT_SUBDIVISION_BUDGET).unwrap().sd.cat;
        for a in sd.objects() {
            for b in sd.objects() {
                let hom: Vec<u32> = sd.hom(a, b).collect();
                if hom.is_empty() {
                    continue;
                }
                let mut orbit: Vec<u32> = sd.hom(b, b).map(|g| sd.compose(g, hom[0])).collect();
                orbit.sort_unstable();
                let n = orbit.len();
                orbit.dedup();
                assert_eq!(orbit.len(), n, "free");
                assert_eq!(orbit, hom, "transitive");
            }
        }
    }
}

#[test]
fn classifying_spaces_of_the_corpus() {
    // mod-2 Betti numbers of BG in degrees 0..3 for G = C_2, D_8, Q_8, S_4
    let expect: [(FiniteGroup, [usize; 3]); 4] =
        [(cyclic(2), [1, 1, 1]), (dihedral8(), [1, 2, 3]), (quaternion8(), [1, 2, 2]), (symmetric4(), [1, 1, 2])];
    for (g, b) in expect {
        let n = nerve_truncated(&FinCategory::one_object(&g), 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(betti_of(&n.sset, 2).unwrap(), b);
    }
}
