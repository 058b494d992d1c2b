//! Empirical cofinality checks and the two routes to the homology of a
//! homotopy colimit.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use super::*;
use crate::error::Result;
use crate::group::library::cyclic;
use crate::homology::{betti_of, reduced_vanishing};

/// Outcome of the cofinality scan at one object of the target.
///
/// Vanishing reduced homology in low degrees is necessary for a contractible
/// nerve, not sufficient; the report says no more than that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalityAtObject {
    pub object: Obj,
    pub comma_objects: usize,
    pub betti: Vec<usize>,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalityReport {
    pub cap: usize,
    pub per_object: Vec<CofinalityAtObject>,
}

impl CofinalityReport {
    pub fn passes(&self) -> bool {
        self.per_object.iter().all(|o| o.passes)
    }
}

/// For every `l ∈ L`, the nerve of `(l ↓ F)` truncated at `cap` must be
/// nonempty, connected and have no homology in degrees `1..cap`.
pub fn check_right_cofinal(k: &FinCategory, l: &FinCategory, f: &FinFunctor, cap: usize, p: u32, budget: usize) -> Result<CofinalityReport> {
    let mut per_object = Vec::with_capacity(l.n_objects());
    for d in l.objects() {
        let comma = comma_category(k, l, f, d, CommaSide::Under);
        let nerve = nerve_truncated(&comma.cat, cap, budget)?;
        let (betti, passes) = if comma.cat.n_objects() == 0 {
            (Vec::new(), false)
        } else {
            let b = betti_of(&nerve.sset, p)?;
            let ok = reduced_vanishing(&nerve.sset, p, cap - 1)?;
            (b, ok)
        };
        per_object.push(CofinalityAtObject { object: d, comma_objects: comma.cat.n_objects(), betti, passes });
    }
    Ok(CofinalityReport { cap, per_object })
}

/// `J: C → D` with a left adjoint `L` such that `L ∘ J = Id`, the adjunction
/// given by its unit `η: Id → J L`. Checks `L J = Id` strictly, naturality of
/// `η` and both triangle identities (the counit is the identity).
pub fn check_adjoint_cofinality(c: &FinCategory, d: &FinCategory, j: &FinFunctor, left: &FinFunctor, unit: &[Mor]) -> bool {
    if j.check(c, d).is_err() || left.check(d, c).is_err() {
        return false;
    }
    if j.then(left) != FinFunctor::identity(c) {
        return false;
    }
    let jl = left.then(j);
    if check_natural(d, d, &FinFunctor::identity(d), &jl, unit).is_err() {
        return false;
    }
    // L η_d = id_{L d}
    if d.objects().any(|x| left.on_mor(unit[x as usize]) != c.identity(left.on_obj(x))) {
        return false;
    }
    // η_{J c} = id_{J c}
    c.objects().all(|x| unit[j.on_obj(x) as usize] == d.identity(j.on_obj(x)))
}

/// Betti numbers of `hocolim U` in degrees `0..cap` computed from the nerve
/// of `Tr_K U` and from the diagonal of the simplicial replacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HocolimHomology {
    pub via_grothendieck: Vec<usize>,
    pub via_diagonal: Vec<usize>,
}

impl HocolimHomology {
    pub fn agree(&self) -> bool {
        self.via_grothendieck == self.via_diagonal
    }
}

pub fn hocolim_homology_two_ways(u: &CatDiagram, cap: usize, p: u32, budget: usize) -> Result<HocolimHomology> {
    let tr = grothendieck(u);
    let nerve = nerve_truncated(&tr.cat, cap, budget)?;
    let via_grothendieck = betti_of(&nerve.sset, p)?;
    let diag = simplicial_replacement_diagonal(u, cap, budget)?;
    let via_diagonal = betti_of(&diag, p)?;
    Ok(HocolimHomology { via_grothendieck, via_diagonal })
}

/// A random poset on `n` objects refining the order `0 < 1 < … < n-1`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> FinCategory {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
        for cell in &mut row[i + 1..] {
            *cell = rng.gen_bool(0.5);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    FinCategory::poset(n, |i, j| leq[i][j]).expect("transitive and antisymmetric")
}

/// A random diagram over a random poset with at most `max_objects`
/// objects. Its values are full subcategories of one ambient category `D`
/// (a random poset or `BC_2`, `BC_3`) growing along the order, and its
/// maps are the inclusions. Object `0` of `D` lies in every value.
pub fn random_poset_diagram<R: Rng>(rng: &mut R, max_objects: usize) -> CatDiagram {
    let n = rng.gen_range(1..=max_objects.max(1));
    let base = Arc::new(random_poset(rng, n));
    let d = match rng.gen_range(0..4) {
        0 => FinCategory::one_object(&cyclic(2)),
        1 => FinCategory::one_object(&cyclic(3)),
        _ => {
            let m = rng.gen_range(1..=4);
            random_poset(rng, m)
        }
    };
    let birth: Vec<Option<usize>> = d.objects().map(|x| if x == 0 { None } else { Some(rng.gen_range(0..n)) }).collect();
    let born = |x: Obj, k: Obj| birth[x as usize].is_none_or(|b| !base.hom(b as Obj, k).is_empty());
    let subs: Vec<(FinCategory, FinFunctor)> =
        base.objects().map(|k| d.full_subcategory(&d.objects().filter(|&x| born(x, k)).collect::<Vec<_>>())).collect();
    let index: Vec<(BTreeMap<Obj, Obj>, BTreeMap<Mor, Mor>)> = subs
        .iter()
        .map(|(_, inc)| {
            (
                inc.obj.iter().enumerate().map(|(i, &x)| (x, i as Obj)).collect(),
                inc.mor.iter().enumerate().map(|(i, &f)| (f, i as Mor)).collect(),
            )
        })
        .collect();
    let maps = base
        .morphisms()
        .map(|f| {
            let (a, b) = (base.src(f) as usize, base.tgt(f) as usize);
            let inc = &subs[a].1;
            let (objs, mors) = &index[b];
            Arc::new(FinFunctor::new_unchecked(
                inc.obj.iter().map(|x| objs[x]).collect(),
                inc.mor.iter().map(|m| mors[m]).collect(),
            ))
        })
        .collect();
    let values = subs.into_iter().map(|(c, _)| Arc::new(c)).collect();
    CatDiagram::new(base, values, maps).expect("inclusions of growing full subcategories")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::*;
    use crate::homology::betti_of;
    use alloc::sync::Arc;
    use alloc::vec;

    const B: usize = DEFAULT_SIMPLEX_BUDGET;

    #[test]
    fn identity_is_cofinal() {
        let c = FinCategory::one_object(&symmetric3());
        let r = check_right_cofinal(&c, &c, &FinFunctor::identity(&c), 3, 2, B).unwrap();
        assert!(r.passes());
        let c = FinCategory::linear(2);
        let r = check_right_cofinal(&c, &c, &FinFunctor::identity(&c), 3, 2, B).unwrap();
        assert!(r.passes());
        // the under-category (d ↓ id) has an initial object
        let comma = comma_category(&c, &c, &FinFunctor::identity(&c), 1, CommaSide::Under);
        assert!(comma.cat.is_initial(comma.object(1, c.identity(1)).unwrap()));
    }

    #[test]
    fn empty_comma_fails() {
        // inclusion of {0} into 0 < 1 is not right cofinal: (1 ↓ incl) is empty
        let c = FinCategory::linear(1);
        let (sub, incl) = c.full_subcategory(&[0]);
        let r = check_right_cofinal(&sub, &c, &incl, 2, 2, B).unwrap();
        assert!(!r.passes());
        assert_eq!(r.per_object[1].comma_objects, 0);
        // the inclusion of the top is cofinal
        let (sub, incl) = c.full_subcategory(&[1]);
        assert!(check_right_cofinal(&sub, &c, &incl, 2, 2, B).unwrap().passes());
    }

    #[test]
    fn constant_functor_into_empty_hom() {
        let c = FinCategory::discrete(2);
        let k = FinCategory::point();
        let f = FinFunctor::constant(&k, &c, 1);
        let comma = comma_category(&k, &c, &f, 0, CommaSide::Under);
        assert_eq!(comma.cat.n_objects(), 0);
    }

    #[test]
    fn adjoint_pairs() {
        let c = FinCategory::linear(2);
        let id = FinFunctor::identity(&c);
        let unit: Vec<Mor> = c.objects().map(|a| c.identity(a)).collect();
        assert!(check_adjoint_cofinality(&c, &c, &id, &id, &unit));
        // J: {2} ⊂ 0<1<2 with L constant at the top, unit x → 2
        let (top, j) = c.full_subcategory(&[2]);
        let left = FinFunctor::new(&c, &top, vec![0; 3], vec![0; c.n_morphisms()]).unwrap();
        let unit: Vec<Mor> = c.objects().map(|a| c.hom(a, 2).start).collect();
        assert!(check_adjoint_cofinality(&top, &c, &j, &left, &unit));
        assert!(check_right_cofinal(&top, &c, &j, 3, 2, B).unwrap().passes());
        let mut broken = unit.clone();
        broken[2] = c.hom(1, 2).start;
        assert!(!check_adjoint_cofinality(&top, &c, &j, &left, &broken));
    }

    #[test]
    fn grothendieck_of_point_is_base() {
        let k = Arc::new(FinCategory::one_object(&symmetric3()));
        let u = CatDiagram::point(k.clone());
        u.check().unwrap();
        let t = grothendieck(&u);
        let iso = point_grothendieck_iso(&t);
        iso.check(&t.cat, &k).unwrap();
        assert!(iso.is_isomorphism(&t.cat, &k));
        let inv = point_grothendieck_inverse(&t, &k);
        assert_eq!(inv.then(&iso), FinFunctor::identity(&k));
    }

    /// A `G`-set as a diagram over `BG` of discrete categories.
    fn action_diagram(g: &crate::group::FiniteGroup, points: usize, act: impl Fn(u32, u32) -> u32) -> CatDiagram {
        let base = Arc::new(FinCategory::one_object(g));
        let value = Arc::new(FinCategory::discrete(points));
        let maps = g
            .elements()
            .map(|x| {
                let obj: Vec<Obj> = (0..points as u32).map(|i| act(x, i)).collect();
                let mor = obj.clone();
                Arc::new(FinFunctor::new_unchecked(obj, mor))
            })
            .collect();
        CatDiagram::new(base, vec![value], maps).unwrap()
    }

    #[test]
    fn translation_groupoid() {
        // S_3 acting on {0, 1, 2}
        let g = symmetric3();
        let perms: Vec<[u32; 3]> = g
            .elements()
            .map(|x| {
                let l = g.label(x);
                let mut p = [0, 1, 2];
                for cyc in l.split(')').filter(|c| c.len() > 1) {
                    let pts: Vec<u32> = cyc.trim_start_matches('(').split_whitespace().map(|t| t.parse().unwrap()).collect();
                    for w in 0..pts.len() {
                        p[pts[w] as usize] = pts[(w + 1) % pts.len()];
                    }
                }
                p
            })
            .collect();
        let u = action_diagram(&g, 3, |x, i| perms[x as usize][i as usize]);
        let t = grothendieck(&u);
        assert_eq!(t.cat.n_objects(), 3);
        assert_eq!(t.cat.n_morphisms(), 18);
        t.cat.check_axioms().unwrap();
        // connected groupoid with stabiliser C_2: same homology as BC_2
        let n = nerve_truncated(&t.cat, 3, B).unwrap();
        assert_eq!(betti_of(&n.sset, 2).unwrap(), [1, 1, 1]);
        let two = hocolim_homology_two_ways(&u, 3, 2, B).unwrap();
        assert!(two.agree(), "{two:?}");
    }

    #[test]
    fn one_object_values() {
        // K = BC_2 acting trivially on BC_3: Tr has |G|·|H| morphisms
        let g = cyclic(2);
        let h = cyclic(3);
        let base = Arc::new(FinCategory::one_object(&g));
        let value = Arc::new(FinCategory::one_object(&h));
        let id = Arc::new(FinFunctor::identity(&value));
        let u = CatDiagram::new(base, vec![value], vec![id.clone(), id]).unwrap();
        let t = grothendieck(&u);
        assert_eq!(t.cat.n_morphisms(), 6);
        t.cat.check_axioms().unwrap();
        let inc = t.fiber_inclusion(&u, 0);
        inc.check(u.value(0), &t.cat).unwrap();
    }

    #[test]
    fn thomason_on_bc2() {
        let base = Arc::new(FinCategory::one_object(&cyclic(2)));
        let u = CatDiagram::point(base.clone());
        let two = hocolim_homology_two_ways(&u, 4, 2, B).unwrap();
        assert_eq!(two.via_grothendieck, [1, 1, 1, 1]);
        assert!(two.agree());
        let k = Arc::new(FinCategory::linear(2));
        let two = hocolim_homology_two_ways(&CatDiagram::point(k), 3, 2, B).unwrap();
        assert_eq!(two.via_diagonal, [1, 0, 0]);
    }

    #[test]
    fn random_diagrams_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let u = random_poset_diagram(&mut rng, 4);
            assert!(u.base.is_poset() && u.base.n_objects() <= 4);
            u.check().unwrap();
            assert!(hocolim_homology_two_ways(&u, 3, 2, B).unwrap().agree());
        }
    }

    #[test]
    fn kan_extension_along_identity_and_to_terminal() {
        let k = Arc::new(FinCategory::linear(2));
        let u = CatDiagram::point(k.clone());
        let id = FinFunctor::identity(&k);
        let kan = kan_extension_cat(&k, k.clone(), &id, &u);
        kan.diagram.check().unwrap();
        // value at l is (id ↓ l) = objects ≤ l
        for l in k.objects() {
            assert_eq!(kan.diagram.value(l).n_objects(), l as usize + 1);
        }
        // F: K → • gives Tr(K, U)
        let pt = Arc::new(FinCategory::point());
        let to_pt = FinFunctor::constant(&k, &pt, 0);
        let kan = kan_extension_cat(&k, pt.clone(), &to_pt, &u);
        assert_eq!(kan.diagram.value(0).n_objects(), 3);
        // F_# for a terminal target is an isomorphism
        let outer = grothendieck(&kan.diagram);
        let inner = grothendieck(&u);
        let sharp = f_sharp(&kan, &outer, &inner);
        sharp.check(&outer.cat, &inner.cat).unwrap();
        assert!(sharp.is_isomorphism(&outer.cat, &inner.cat));
    }

    #[test]
    fn f_sharp_is_a_homology_equivalence() {
        // K = 0 < 1 < 2 (with an extra 0 < 2' ) → L = 0 < 1 collapsing
        let k = Arc::new(FinCategory::poset(4, |a, b| a == b || (a == 0) || (a == 1 && b == 2)).unwrap());
        let l = Arc::new(FinCategory::linear(1));
        let f = FinFunctor::new(&k, &l, vec![0, 0, 1, 1], {
            let mut m = Vec::new();
            for x in k.morphisms() {
                let (a, b) = (k.src(x), k.tgt(x));
                let (fa, fb) = ([0, 0, 1, 1][a as usize], [0, 0, 1, 1][b as usize]);
                m.push(l.hom(fa, fb).start);
            }
            m
        })
        .unwrap();
        let u = CatDiagram::point(k.clone());
        let kan = kan_extension_cat(&k, l.clone(), &f, &u);
        kan.diagram.check().unwrap();
        let outer = grothendieck(&kan.diagram);
        let inner = grothendieck(&u);
        let sharp = f_sharp(&kan, &outer, &inner);
        sharp.check(&outer.cat, &inner.cat).unwrap();
        let (no, ni) = (nerve_truncated(&outer.cat, 3, B).unwrap(), nerve_truncated(&inner.cat, 3, B).unwrap());
        let m = nerve_map(&sharp, &no, &ni, &inner.cat);
        let cx = crate::homology::chains_of(&no.sset, 2);
        let cy = crate::homology::chains_of(&ni.sset, 2);
        let im = crate::homology::induced_map(&cx, &cy, &crate::homology::chain_map_of(&m, &no.sset, &ni.sset)).unwrap();
        assert!(im.all_iso());
        // F_! over identity is the identity
        let pulled = grothendieck(&u.pullback(&FinFunctor::identity(&k), k.clone()));
        let shriek = f_shriek(&FinFunctor::identity(&k), &pulled, &inner);
        assert_eq!(shriek, FinFunctor::identity(&inner.cat));
    }

    #[test]
    fn natural_transformations_induce_functors() {
        let k = Arc::new(FinCategory::linear(1));
        let two = Arc::new(FinCategory::linear(1));
        let pt = Arc::new(FinCategory::point());
        // U = [1] at both, identity; V = ★
        let id = Arc::new(FinFunctor::identity(&two));
        let u = CatDiagram::new(k.clone(), vec![two.clone(), two.clone()], vec![id.clone(), id.clone(), id]).unwrap();
        let v = CatDiagram::point(k.clone());
        let eta: Vec<FinFunctor> = (0..2).map(|_| FinFunctor::constant(&two, &pt, 0)).collect();
        let (tu, tv) = (grothendieck(&u), grothendieck(&v));
        let m = grothendieck_map(&tu, &tv, &u, &v, &eta).unwrap();
        m.check(&tu.cat, &tv.cat).unwrap();
    }
}
