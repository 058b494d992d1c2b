//! `δ̃_C = π_*(★)` over `s̄(s_I(L^C))` and its comparison with `L^C`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::error::{Error, Result};
use crate::fusion::SubgroupId;
use crate::linking::LinkingSystem;
use crate::subdivision::{
    aut_l_chain, first_vertex_functor, linking_subdivision, projection_pi, ChainAut, LinkingSubdivision, Projection,
    SdMorphism, SimplexChain,
};

#[derive(Clone, Debug)]
pub struct TheoremA {
    pub diagram: DecompositionDiagram,
    pub subdivision: LinkingSubdivision,
    pub projection: Projection,
    /// `π_*(★)` with its comma categories.
    pub kan: KanExtension,
    /// `★` over `s_I(L^C)`.
    pub star: CatDiagram,
}

/// Builds `δ̃_C` and the comparison `Tr(δ̃_C) → Tr(★) ≅ s_I(L^C) → L^C`,
/// the last functor taking a chain to its first vertex.
pub fn theorem_a_diagram(l: &LinkingSystem, budget: usize) -> Result<TheoremA> {
    let subdivision = linking_subdivision(l, budget)?;
    let projection = projection_pi(&subdivision.sd.cat);
    let s_i = Arc::new(subdivision.sd.cat.clone());
    let star = CatDiagram::point(s_i.clone());
    let kan = kan_extension_cat(&s_i, Arc::new(projection.poset.clone()), &projection.functor, &star);
    let total = grothendieck(&kan.diagram);
    let inner = grothendieck(&star);
    let comparison = f_sharp(&kan, &total, &inner)
        .then(&point_grothendieck_iso(&inner))
        .then(&first_vertex_functor(&subdivision.sd, l.category()));
    let diagram = DecompositionDiagram::assemble(
        DecompositionKind::TheoremA,
        kan.diagram.clone(),
        total,
        comparison,
        Arc::new(l.category().clone()),
    )?;
    Ok(TheoremA { diagram, subdivision, projection, kan, star })
}

/// `BAut_L(P) → δ̃_C([P])` for a chain `P`.
#[derive(Clone, Debug)]
pub struct BautToDelta {
    pub chain: SimplexChain,
    pub aut: ChainAut,
    /// `P` as an object of `s_I(L^C)`.
    pub object: Obj,
    pub class: Obj,
    pub orbit: OrbitFunctor,
    /// `BAut_L(P) ≅ Tr_{BAut(P)}(★)` through the ladders.
    pub to_orbit: FinFunctor,
    pub to_orbit_iso: bool,
    pub functor: FinFunctor,
    /// The composite `BAut_L(P) → δ̃_C([P]) → Tr(δ̃_C) → L^C` is the
    /// inclusion of `BAut_L(P)` into `L^C`.
    pub factorization_holds: bool,
}

pub fn baut_to_delta(ta: &TheoremA, l: &LinkingSystem, chain: &[SubgroupId]) -> Result<BautToDelta> {
    let object = ta
        .subdivision
        .object_of_chain(chain)
        .ok_or_else(|| Error::InvalidCollection("chain is not a simplex of the collection".into()))?;
    let aut = aut_l_chain(l, chain)?;
    let sd = &ta.subdivision.sd;
    let orbit = orbit_functor(&sd.cat, &ta.projection, &ta.kan, &ta.star, object);
    let k = chain.len() as u32;
    let mor = aut
        .ladders
        .iter()
        .map(|ladder| {
            let m = SdMorphism { eps: (0..k).collect(), phi: ladder.clone() };
            let s = sd.morphism(object, object, &m).expect("ladders are automorphisms of the chain");
            let i = orbit.aut_inclusion.mor.iter().position(|&x| x == s).expect("automorphism") as Mor;
            orbit.orbit.morphism(0, 0, i, 0).expect("orbit morphism")
        })
        .collect();
    let baut = aut.baut();
    let to_orbit = FinFunctor::new_unchecked(vec![0], mor);
    let to_orbit_iso = to_orbit.is_isomorphism(&baut, &orbit.orbit.cat);
    let functor = to_orbit.then(&orbit.functor);
    let class = orbit.class;
    let composite = functor
        .then(&ta.diagram.total.fiber_inclusion(&ta.kan.diagram, class))
        .then(&ta.diagram.comparison);
    let inclusion = FinFunctor::new_unchecked(vec![aut.chain[0]], aut.first.clone());
    let factorization_holds = composite == inclusion;
    Ok(BautToDelta { chain: chain.to_vec(), aut, object, class, orbit, to_orbit, to_orbit_iso, functor, factorization_holds })
}

impl BautToDelta {
    /// `H_*(BAut_L(P)) → H_*(δ̃_C([P]))`.
    pub fn homology(&self, ta: &TheoremA, h: HomologySettings) -> Result<HomologyReport> {
        functor_homology(&self.functor, &self.aut.baut(), &ta.kan.values[self.class as usize].cat, h.cap, h.p, h.budget)
    }
}

/// The squares for every morphism `ψ: P → P'` of `s_I(L^C)` between
/// distinct objects, one morphism per pair of objects.
pub fn theorem_a_squares(ta: &TheoremA, hom: Option<HomologySettings>) -> Result<Vec<SquareCheck>> {
    let cat = &ta.subdivision.sd.cat;
    let mut out = Vec::new();
    for a in cat.objects() {
        for b in cat.objects() {
            if a != b && !cat.hom(a, b).is_empty() {
                let psi = cat.hom(a, b).start;
                out.push(orbit_square(cat, &ta.projection, &ta.kan, &ta.star, psi, hom)?);
            }
        }
    }
    Ok(out)
}

/// Cofinality of `p: s_I(L^C) → L^C` and the adjunction `Π_P ⊆ (π ↓ [P])`
/// at every class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalityChecks {
    pub first_vertex: CofinalityReport,
    pub adjoint: Vec<bool>,
}

impl CofinalityChecks {
    pub fn passes(&self) -> bool {
        self.first_vertex.passes() && self.adjoint.iter().all(|&b| b)
    }
}

pub fn theorem_a_cofinality(ta: &TheoremA, l: &LinkingSystem, h: HomologySettings) -> Result<CofinalityChecks> {
    let sd = &ta.subdivision.sd;
    let p = first_vertex_functor(sd, l.category());
    let first_vertex = check_right_cofinal(&sd.cat, l.category(), &p, h.cap, h.p, h.budget)?;
    let adjoint = ta
        .projection
        .poset
        .objects()
        .map(|c| pi_adjoint_check(sd, l.category(), &ta.projection, &ta.kan.commas[c as usize], c))
        .collect::<Result<_>>()?;
    Ok(CofinalityChecks { first_vertex, adjoint })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{CollectionKind, FusionSystem};
    use crate::group::library::*;
    use crate::group::FiniteGroup;
    use crate::subdivision::DEFAULT_SUBDIVISION_BUDGET;

    fn centric(g: FiniteGroup) -> LinkingSystem {
        let f = Arc::new(FusionSystem::new(g, 2).unwrap());
        let c = f.build_collection(CollectionKind::Centric, None).unwrap();
        LinkingSystem::build(f, &c).unwrap()
    }

    fn settings(cap: usize) -> HomologySettings {
        HomologySettings { cap, p: 2, budget: DEFAULT_SIMPLEX_BUDGET }
    }

    #[test]
    fn s3_is_bc2_on_both_sides() {
        let l = centric(symmetric3());
        let ta = theorem_a_diagram(&l, DEFAULT_SUBDIVISION_BUDGET).unwrap();
        assert_eq!(ta.diagram.base.n_objects(), 1);
        assert!(ta.diagram.comparison.is_isomorphism(&ta.diagram.total.cat, &ta.diagram.target));
        let r = verify_decomposition(&ta.diagram, 4, 2, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(r.homology.source_betti, [1, 1, 1, 1]);
        assert_eq!(r.homology.target_betti, [1, 1, 1, 1]);
        assert!(r.all_iso());
    }

    #[test]
    fn d8_and_s4_comparison() {
        for g in [dihedral8(), symmetric4()] {
            let l = centric(g);
            let ta = theorem_a_diagram(&l, DEFAULT_SUBDIVISION_BUDGET).unwrap();
            let r = verify_decomposition(&ta.diagram, 3, 2, DEFAULT_SIMPLEX_BUDGET).unwrap();
            assert!(r.all_iso(), "{}", r.homology.summary());
        }
    }

    #[test]
    fn baut_factorisation_and_squares() {
        let l = centric(symmetric4());
        let ta = theorem_a_diagram(&l, DEFAULT_SUBDIVISION_BUDGET).unwrap();
        assert!(ta.diagram.base.n_objects() >= 4);
        for chain in ta.subdivision.chains.clone() {
            let b = baut_to_delta(&ta, &l, &chain).unwrap();
            assert!(b.to_orbit_iso);
            assert!(b.factorization_holds, "{chain:?}");
            assert!(b.homology(&ta, settings(3)).unwrap().all_iso(), "{chain:?}");
        }
        let squares = theorem_a_squares(&ta, Some(settings(3))).unwrap();
        assert!(!squares.is_empty());
        for s in &squares {
            assert!(s.natural && s.homology_agrees == Some(true), "{s:?}");
        }
        // the two composites differ on objects: (P, [P] → [P']) against (P', id)
        assert!(squares.iter().all(|s| !s.strict));
        let c = theorem_a_cofinality(&ta, &l, settings(3)).unwrap();
        assert!(c.passes());
    }

    #[test]
    fn full_and_skeletal_nerves_agree() {
        let l = centric(dihedral8());
        let ta = theorem_a_diagram(&l, DEFAULT_SUBDIVISION_BUDGET).unwrap();
        let full = verify_decomposition_with(&ta.diagram, 3, 2, DEFAULT_SIMPLEX_BUDGET, NerveModel::Full).unwrap();
        let skel = verify_decomposition_with(&ta.diagram, 3, 2, DEFAULT_SIMPLEX_BUDGET, NerveModel::Skeleton).unwrap();
        assert_eq!(full.homology, skel.homology);
        assert!(skel.model_objects <= full.model_objects);
    }

    #[test]
    fn empty_collection() {
        let f = Arc::new(FusionSystem::new(symmetric4(), 2).unwrap());
        let c = f.build_collection(CollectionKind::Custom, Some(&[])).unwrap();
        let l = LinkingSystem::build(f, &c).unwrap();
        let ta = theorem_a_diagram(&l, DEFAULT_SUBDIVISION_BUDGET).unwrap();
        assert_eq!(ta.diagram.total.cat.n_objects(), 0);
        assert_eq!(ta.diagram.target.n_objects(), 0);
    }
}
