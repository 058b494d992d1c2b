//! `δ̃_E = π_* μ^* ζ_*(★)` over `s̄(s_I(F^E))`, the categories `C̄_L(C;E)`
//! and `N̆_L(C;E)`, and the embedding `ε` between them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::error::{Error, Result};
use crate::fusion::{FusionMorphism, FusionSystem, SubgroupId};
use crate::group::{Elem, FiniteGroup, Validation};
use crate::linking::LinkingSystem;
use crate::subdivision::{
    first_vertex_functor, projection_pi, skeletal_subdivision, subdivision_category, HeightedEICategory, Projection,
    SdMorphism, SdObject, SimplexChain, Subdivision,
};

/// `ζ: L^C → (F^E)^op`, `P ↦ Ω_p Z(P)`.
#[derive(Clone, Debug)]
pub struct ZetaFunctor {
    /// `E`; object `i` of `F^E` is `members[i]`.
    pub members: Vec<SubgroupId>,
    pub fe: FinCategory,
    pub fe_payload: Vec<FusionMorphism>,
    pub feop: Arc<FinCategory>,
    /// Id in `(F^E)^op` of each morphism of `F^E`.
    pub op: Vec<Mor>,
    /// Inverse of `op`.
    pub unop: Vec<Mor>,
    pub functor: FinFunctor,
}

impl ZetaFunctor {
    pub fn index_of(&self, id: SubgroupId) -> Option<Obj> {
        self.members.iter().position(|&m| m == id).map(|i| i as Obj)
    }

    /// The morphism `c_g: E_a → E_b` of `F^E`.
    pub fn fe_morphism(&self, fusion: &FusionSystem, a: Obj, b: Obj, g: Elem) -> Option<Mor> {
        let m = fusion.morphism(self.members[a as usize], self.members[b as usize], g)?;
        self.fe.hom(a, b).find(|&f| self.fe_payload[f as usize] == m)
    }
}

pub fn zeta_functor(l: &LinkingSystem, members: &[SubgroupId]) -> Result<ZetaFunctor> {
    let fusion = l.fusion();
    let grp = fusion.group();
    let (fe, fe_payload) = fusion.category_on(members);
    let (feop, op) = fe.opposite();
    let mut unop = vec![0; op.len()];
    for (f, &g) in op.iter().enumerate() {
        unop[g as usize] = f as Mor;
    }
    let mut z = ZetaFunctor {
        members: members.to_vec(),
        fe,
        fe_payload,
        feop: Arc::new(feop),
        op,
        unop,
        functor: FinFunctor::new_unchecked(Vec::new(), Vec::new()),
    };
    let mut obj = Vec::with_capacity(l.n_objects());
    for a in l.category().objects() {
        let omega = grp.omega_p(&fusion.center(l.subgroup_id(a)), fusion.p());
        let id = fusion.id_of(&omega).expect("subgroups of S are indexed");
        let i = z.index_of(id).ok_or_else(|| Error::CollectionTooSmall {
            missing: format!("{omega}"),
            subgroup: format!("{}", l.subgroup(a)),
        })?;
        obj.push(i);
    }
    let cat = l.category();
    let mor = cat
        .morphisms()
        .map(|f| {
            let (a, b) = (cat.src(f), cat.tgt(f));
            let g = l.morphism(f).rep;
            let back = z.fe_morphism(fusion, obj[b as usize], obj[a as usize], grp.inv(g)).expect("Z(P') is conjugated into Z(P)");
            z.op[back as usize]
        })
        .collect();
    z.functor = FinFunctor::new_unchecked(obj, mor);
    z.functor.check(cat, &z.feop)?;
    Ok(z)
}

/// `Hom_F(E, Z(P)) = Hom_F(E, ζ(P))` for every `E` in the collection and
/// every object `P`.
pub fn zeta_hom_check(l: &LinkingSystem, z: &ZetaFunctor) -> bool {
    let fusion = l.fusion();
    l.category().objects().all(|a| {
        let zp = fusion.center_id(l.subgroup_id(a));
        let omega = z.members[z.functor.on_obj(a) as usize];
        z.members.iter().all(|&e| {
            let into_z: BTreeSet<Elem> = fusion.hom(e, zp).iter().map(|m| m.rep).collect();
            let into_omega: BTreeSet<Elem> = fusion.hom(e, omega).iter().map(|m| m.rep).collect();
            into_z == into_omega
        })
    })
}

/// `C̄_L(C;E)`: objects `(P, f: E → Z(P))`, morphisms `ψ ∈ L(P, Q)` with
/// `g = π(ψ) ∘ f`.
#[derive(Clone, Debug)]
pub struct CentralizerPairCategory {
    pub e: SubgroupId,
    pub cat: FinCategory,
    /// Sorted.
    pub objects: Vec<(Obj, FusionMorphism)>,
    /// The morphism of `L^C` behind each morphism.
    pub morphisms: Vec<Mor>,
}

impl CentralizerPairCategory {
    pub fn object(&self, p: Obj, f: FusionMorphism) -> Option<Obj> {
        self.objects.binary_search(&(p, f)).ok().map(|i| i as Obj)
    }

    pub fn morphism(&self, a: Obj, b: Obj, psi: Mor) -> Option<Mor> {
        self.cat.hom(a, b).find(|&m| self.morphisms[m as usize] == psi)
    }
}

pub fn cbar_direct(l: &LinkingSystem, e: SubgroupId) -> CentralizerPairCategory {
    let fusion = l.fusion();
    let cat = l.category();
    let mut objects = Vec::new();
    for a in cat.objects() {
        let zp = fusion.center_id(l.subgroup_id(a));
        objects.extend(fusion.hom(e, zp).iter().map(|&f| (a, f)));
    }
    objects.sort();
    let mut morphisms = Vec::new();
    for (i, &(a, f)) in objects.iter().enumerate() {
        for (j, &(b, g)) in objects.iter().enumerate() {
            for psi in cat.hom(a, b) {
                let h = fusion.group().mul(l.morphism(psi).rep, f.rep);
                if fusion.morphism(e, g.target, h) == Some(g) {
                    morphisms.push((i as Obj, j as Obj, psi));
                }
            }
        }
    }
    let ids = objects.iter().map(|&(a, _)| cat.identity(a)).collect();
    let (c, payload) = FinCategory::build(objects.len(), morphisms, ids, |&g, &f| cat.compose(g, f)).expect("C̄ is a category");
    CentralizerPairCategory { e, cat: c, objects, morphisms: payload }
}

/// `C̄_L(C;E)` built directly, together with its isomorphism onto the comma
/// category `(ζ ↓ E)`, i.e. onto the value of `ζ_*(★)` at `E`.
#[derive(Clone, Debug)]
pub struct CbarWithComma {
    pub cbar: CentralizerPairCategory,
    /// `E` as an object of `F^E`.
    pub e_index: Obj,
    /// `(P, f) ↦ (P, op(f))`, into `kan_zeta.values[e_index]`.
    pub to_value: FinFunctor,
}

pub fn cbar_category(l: &LinkingSystem, z: &ZetaFunctor, kan_zeta: &KanExtension, e_index: Obj) -> CbarWithComma {
    let fusion = l.fusion();
    let cbar = cbar_direct(l, z.members[e_index as usize]);
    let comma = &kan_zeta.commas[e_index as usize];
    let value = &kan_zeta.values[e_index as usize];
    let obj: Vec<Obj> = cbar
        .objects
        .iter()
        .map(|&(a, f)| {
            let zeta = z.functor.on_obj(a);
            let u = z.op[z.fe_morphism(fusion, e_index, zeta, f.rep).expect("f lands in ζ(P)") as usize];
            value.object(comma.object(a, u).expect("(P, op f) is a comma object"), 0)
        })
        .collect();
    let mor = cbar
        .cat
        .morphisms()
        .map(|m| {
            let (s, t) = (obj[cbar.cat.src(m) as usize], obj[cbar.cat.tgt(m) as usize]);
            let (cs, ct) = (value.objects[s as usize].0, value.objects[t as usize].0);
            let cm = comma.morphism(cs, ct, cbar.morphisms[m as usize]).expect("same condition as the comma");
            value.morphism(s, t, cm, 0).expect("value morphism")
        })
        .collect();
    let to_value = FinFunctor::new_unchecked(obj, mor);
    assert!(
        to_value.is_isomorphism(&cbar.cat, &value.cat),
        "C̄_L(C;E) and (ζ ↓ E) are not isomorphic"
    );
    CbarWithComma { cbar, e_index, to_value }
}

/// `N̆_L(C;E)`: objects `P` with `E_k ≤ Z(P)`, morphisms `φ` whose
/// restriction to `E_k` lies in `Aut_F(E)`.
#[derive(Clone, Debug)]
pub struct ChainNormalizerCategory {
    pub chain: SimplexChain,
    pub cat: FinCategory,
    /// Objects of `L^C`.
    pub objects: Vec<Obj>,
    /// Morphisms of `L^C`.
    pub morphisms: Vec<Mor>,
    pub inclusion: FinFunctor,
}

pub fn nol_category(l: &LinkingSystem, chain: &[SubgroupId]) -> ChainNormalizerCategory {
    let fusion = l.fusion();
    let grp = fusion.group();
    let top = fusion.subgroup(*chain.last().expect("nonempty chain"));
    let cat = l.category();
    let objects: Vec<Obj> = cat.objects().filter(|&a| top.is_subgroup_of(&fusion.center(l.subgroup_id(a)))).collect();
    let mut morphisms = Vec::new();
    for (i, &a) in objects.iter().enumerate() {
        for (j, &b) in objects.iter().enumerate() {
            for f in cat.hom(a, b) {
                let g = l.morphism(f).rep;
                if chain.iter().all(|&e| grp.conjugate(g, fusion.subgroup(e)) == *fusion.subgroup(e)) {
                    morphisms.push((i as Obj, j as Obj, f));
                }
            }
        }
    }
    let ids = objects.iter().map(|&a| cat.identity(a)).collect();
    let (c, payload) = FinCategory::build(objects.len(), morphisms, ids, |&g, &f| cat.compose(g, f)).expect("N̆ is a category");
    let inclusion = FinFunctor::new_unchecked(objects.clone(), payload.clone());
    ChainNormalizerCategory { chain: chain.to_vec(), cat: c, objects, morphisms: payload, inclusion }
}

/// `Tr_{BAut_F(E)} C̄_L(C;E_k)`, where `h` acts by `(P, f) ↦ (P, f ∘ h⁻¹)`.
#[derive(Clone, Debug)]
pub struct HomotopyOrbit {
    pub auts: Vec<FusionMorphism>,
    pub group: FiniteGroup,
    pub diagram: CatDiagram,
    pub total: Grothendieck,
}

pub fn homotopy_orbit(l: &LinkingSystem, chain: &[SubgroupId], cbar: &CentralizerPairCategory) -> Result<HomotopyOrbit> {
    let fusion = l.fusion();
    let auts = fusion.aut_f_chain(chain);
    let pos = |m: FusionMorphism| auts.binary_search(&m).expect("closed under composition") as Elem;
    let mut table = Vec::with_capacity(auts.len() * auts.len());
    for &a in &auts {
        for &b in &auts {
            table.push(pos(fusion.compose(a, b)));
        }
    }
    let group = FiniteGroup::from_cayley_table(auts.len(), table, Validation::Default)?;
    let base = Arc::new(FinCategory::one_object(&group));
    let value = Arc::new(cbar.cat.clone());
    let maps = auts
        .iter()
        .map(|&h| {
            let hinv = fusion.inverse(h);
            let obj: Vec<Obj> = cbar
                .objects
                .iter()
                .map(|&(a, f)| cbar.object(a, fusion.compose(f, hinv)).expect("precomposition stays in C̄"))
                .collect();
            let mor = cbar
                .cat
                .morphisms()
                .map(|m| {
                    let (s, t) = (obj[cbar.cat.src(m) as usize], obj[cbar.cat.tgt(m) as usize]);
                    cbar.morphism(s, t, cbar.morphisms[m as usize]).expect("precomposition keeps morphisms")
                })
                .collect();
            Arc::new(FinFunctor::new_unchecked(obj, mor))
        })
        .collect();
    let diagram = CatDiagram::new(base, vec![value], maps)?;
    let total = grothendieck(&diagram);
    Ok(HomotopyOrbit { auts, group, diagram, total })
}

/// `ε: N̆_L(C;E) → Tr_{BAut_F(E)} C̄_L(C;E_k)`, `P ↦ (P, E_k ≤ Z(P))` and
/// `φ ↦ (π(φ)|_{E_k}, φ)`.
#[derive(Clone, Debug)]
pub struct EpsilonCheck {
    pub functor: FinFunctor,
    pub injective_on_objects: bool,
    pub fully_faithful: bool,
    pub fully_centralised: bool,
    /// Checked only when `E_k` is fully centralised.
    pub essentially_surjective: Option<bool>,
}

pub fn epsilon_embedding(l: &LinkingSystem, nol: &ChainNormalizerCategory, cbar: &CentralizerPairCategory, orbit: &HomotopyOrbit) -> EpsilonCheck {
    let fusion = l.fusion();
    let ek = *nol.chain.last().expect("nonempty chain");
    let incl = |a: Obj| fusion.inclusion(ek, fusion.center_id(l.subgroup_id(a)));
    let obj: Vec<Obj> = nol
        .objects
        .iter()
        .map(|&a| orbit.total.object(0, cbar.object(a, incl(a)).expect("E_k ≤ Z(P)")))
        .collect();
    let mor = nol
        .cat
        .morphisms()
        .map(|m| {
            let phi = nol.morphisms[m as usize];
            let h = fusion.morphism(ek, ek, l.morphism(phi).rep).expect("normalises E_k");
            let i = orbit.auts.binary_search(&h).expect("restriction lies in Aut_F(E)") as Mor;
            let (s, t) = (obj[nol.cat.src(m) as usize], obj[nol.cat.tgt(m) as usize]);
            let moved = orbit.diagram.map(i).on_obj(orbit.total.objects[s as usize].1);
            let xi = cbar.morphism(moved, orbit.total.objects[t as usize].1, phi).expect("π(φ) ∘ incl ∘ h⁻¹ = incl");
            orbit.total.morphism(s, t, i, xi).expect("ε morphism")
        })
        .collect();
    let functor = FinFunctor::new_unchecked(obj, mor);
    let injective_on_objects = functor.obj.iter().collect::<BTreeSet<_>>().len() == functor.obj.len();
    let fully_faithful = functor.check(&nol.cat, &orbit.total.cat).is_ok() && functor.is_fully_faithful(&nol.cat, &orbit.total.cat);
    let fully_centralised = fusion.is_fully_centralised(ek);
    let essentially_surjective = fully_centralised.then(|| functor.is_essentially_surjective(&orbit.total.cat));
    EpsilonCheck { functor, injective_on_objects, fully_faithful, fully_centralised, essentially_surjective }
}

/// `μ: s(A) → A^op`, `E ↦ E_k` and `(ε, φ) ↦ op(E(ε(k') → k) ∘ φ_{k'}⁻¹)`.
pub fn mu_functor(sd: &Subdivision, a: &FinCategory, op: &[Mor]) -> FinFunctor {
    let obj = sd.objects.iter().map(|o| *o.vertices.last().expect("nonempty")).collect();
    let mor = sd
        .cat
        .morphisms()
        .map(|f| {
            let m = &sd.morphisms[f as usize];
            let src = &sd.objects[sd.cat.src(f) as usize];
            let last = m.eps.len() - 1;
            let back = a.inverse(m.phi[last]).expect("components are isomorphisms");
            let arrow = crate::subdivision::chain_arrow(a, src, m.eps[last] as usize, src.vertices.len() - 1);
            op[a.compose(arrow, back) as usize]
        })
        .collect();
    FinFunctor::new_unchecked(obj, mor)
}

fn heighted_fe(l: &LinkingSystem, z: &ZetaFunctor) -> Result<HeightedEICategory> {
    let fusion = l.fusion();
    HeightedEICategory::new(z.fe.clone(), z.members.iter().map(|&e| fusion.subgroup(e).order()).collect())
}

#[derive(Clone, Debug)]
pub struct TheoremB {
    pub diagram: DecompositionDiagram,
    pub zeta: ZetaFunctor,
    /// `ζ_*(★)`.
    pub kan_zeta: KanExtension,
    /// `s_I(F^E)`, `I` the inclusions.
    pub subdivision: Subdivision,
    pub projection: Projection,
    pub mu: FinFunctor,
    /// `μ^* ζ_*(★)`.
    pub pulled: CatDiagram,
    /// `π_* μ^* ζ_*(★)`.
    pub kan: KanExtension,
}

/// Builds `δ̃_E` and the comparison
/// `Tr(δ̃_E) → Tr(μ^*ζ_*★) → Tr(ζ_*★) → Tr(★) ≅ L^C` from `π_#`, `μ_!`
/// and `ζ_#`.
pub fn theorem_b_diagram(l: &LinkingSystem, members: &[SubgroupId], budget: usize) -> Result<TheoremB> {
    let zeta = zeta_functor(l, members)?;
    let lc = Arc::new(l.category().clone());
    let star = CatDiagram::point(lc.clone());
    let kan_zeta = kan_extension_cat(&lc, zeta.feop.clone(), &zeta.functor, &star);
    let fe = heighted_fe(l, &zeta)?;
    let fusion = l.fusion();
    let is_incl = |f: Mor| {
        let m = zeta.fe_payload[f as usize];
        fusion.subgroup(m.source).is_subgroup_of(fusion.subgroup(m.target)) && m == fusion.inclusion(m.source, m.target)
    };
    let subdivision = skeletal_subdivision(&fe, &is_incl, budget)?;
    let projection = projection_pi(&subdivision.cat);
    let mu = mu_functor(&subdivision, &zeta.fe, &zeta.op);
    mu.check(&subdivision.cat, &zeta.feop)?;
    let s_i = Arc::new(subdivision.cat.clone());
    let pulled = kan_zeta.diagram.pullback(&mu, s_i.clone());
    let kan = kan_extension_cat(&s_i, Arc::new(projection.poset.clone()), &projection.functor, &pulled);
    let total = grothendieck(&kan.diagram);
    let over_s = grothendieck(&pulled);
    let over_fe = grothendieck(&kan_zeta.diagram);
    let inner = grothendieck(&star);
    let comparison = f_sharp(&kan, &total, &over_s)
        .then(&f_shriek(&mu, &over_s, &over_fe))
        .then(&f_sharp(&kan_zeta, &over_fe, &inner))
        .then(&point_grothendieck_iso(&inner));
    let diagram = DecompositionDiagram::assemble(DecompositionKind::TheoremB, kan.diagram.clone(), total, comparison, lc)?;
    Ok(TheoremB { diagram, zeta, kan_zeta, subdivision, projection, mu, pulled, kan })
}

/// The value of `δ̃_E` at a chain `E` compared with
/// `Tr_{BAut_F(E)} C̄_L(C;E_k)`, and the factorisation through `ε`.
#[derive(Clone, Debug)]
pub struct ChainCheck {
    pub chain: SimplexChain,
    pub object: Obj,
    pub class: Obj,
    pub cbar: CbarWithComma,
    pub orbit: HomotopyOrbit,
    /// `Tr_{BAut_F(E)} C̄ ≅ Tr_{BAut(E)} μ^*ζ_*★(E)`.
    pub orbit_iso: bool,
    /// The functor `Tr_{BAut_F(E)} C̄ → δ̃_E([E])`.
    pub functor: FinFunctor,
    pub nol: ChainNormalizerCategory,
    pub epsilon: EpsilonCheck,
    /// `N̆ → Tr_{BAut_F(E)} C̄ → δ̃_E([E]) ⊆ Tr(δ̃_E) → L^C` is the
    /// inclusion `N̆ ⊆ L^C`.
    pub factorization_holds: bool,
}

impl TheoremB {
    /// `E` as an object of `s_I(F^E)`.
    pub fn object_of_chain(&self, fusion: &FusionSystem, chain: &[SubgroupId]) -> Option<Obj> {
        let vertices: Vec<Obj> = chain.iter().map(|&e| self.zeta.index_of(e)).collect::<Option<_>>()?;
        let e = fusion.group().identity();
        let arrows = vertices.windows(2).map(|w| self.zeta.fe_morphism(fusion, w[0], w[1], e)).collect::<Option<_>>()?;
        self.subdivision.object_of(&SdObject { vertices, arrows })
    }

    /// Subgroup chain of an object of `s_I(F^E)`.
    pub fn chain_of(&self, o: Obj) -> SimplexChain {
        self.subdivision.objects[o as usize].vertices.iter().map(|&v| self.zeta.members[v as usize]).collect()
    }
}

pub fn theorem_b_chain(tb: &TheoremB, l: &LinkingSystem, chain: &[SubgroupId]) -> Result<ChainCheck> {
    let fusion = l.fusion();
    let object = tb
        .object_of_chain(fusion, chain)
        .ok_or_else(|| Error::InvalidCollection("chain is not a simplex of inclusions in E".into()))?;
    let sd = &tb.subdivision;
    let k = chain.len() - 1;
    let ek = sd.objects[object as usize].vertices[k];
    let cbar = cbar_category(l, &tb.zeta, &tb.kan_zeta, ek);
    let orbit = homotopy_orbit(l, chain, &cbar.cbar)?;
    let of = orbit_functor(&sd.cat, &tb.projection, &tb.kan, &tb.pulled, object);
    let aut_index: Vec<Mor> = orbit
        .auts
        .iter()
        .map(|h| {
            let top = tb.zeta.fe_morphism(fusion, ek, ek, h.rep).expect("automorphism of E_k");
            let s = sd.cat.hom(object, object).find(|&m| sd.morphisms[m as usize].phi[k] == top).expect("Aut_F(E) lifts");
            of.aut_inclusion.mor.iter().position(|&x| x == s).expect("automorphism") as Mor
        })
        .collect();
    let obj: Vec<Obj> = orbit.total.objects.iter().map(|&(_, x)| of.orbit.object(0, cbar.to_value.on_obj(x))).collect();
    let mor = orbit
        .total
        .cat
        .morphisms()
        .map(|m| {
            let (h, xi) = orbit.total.morphisms[m as usize];
            let (s, t) = (obj[orbit.total.cat.src(m) as usize], obj[orbit.total.cat.tgt(m) as usize]);
            // fails unless precomposition with h⁻¹ matches the action of the
            // automorphism through μ
            of.orbit.morphism(s, t, aut_index[h as usize], cbar.to_value.on_mor(xi)).expect("the two actions agree")
        })
        .collect();
    let iso = FinFunctor::new_unchecked(obj, mor);
    let orbit_iso = iso.check(&orbit.total.cat, &of.orbit.cat).is_ok() && iso.is_isomorphism(&orbit.total.cat, &of.orbit.cat);
    let functor = iso.then(&of.functor);
    let nol = nol_category(l, chain);
    let epsilon = epsilon_embedding(l, &nol, &cbar.cbar, &orbit);
    let composite = epsilon
        .functor
        .then(&functor)
        .then(&tb.diagram.total.fiber_inclusion(&tb.kan.diagram, of.class))
        .then(&tb.diagram.comparison);
    let factorization_holds = composite == nol.inclusion;
    Ok(ChainCheck {
        chain: chain.to_vec(),
        object,
        class: of.class,
        cbar,
        orbit,
        orbit_iso,
        functor,
        nol,
        epsilon,
        factorization_holds,
    })
}

impl ChainCheck {
    /// `H_*(Tr_{BAut_F(E)} C̄) → H_*(δ̃_E([E]))`.
    pub fn homology(&self, tb: &TheoremB, h: HomologySettings) -> Result<HomologyReport> {
        functor_homology(&self.functor, &self.orbit.total.cat, &tb.kan.values[self.class as usize].cat, h.cap, h.p, h.budget)
    }
}

/// One square per pair of distinct objects of `s_I(F^E)` joined by a
/// morphism.
pub fn theorem_b_squares(tb: &TheoremB, hom: Option<HomologySettings>) -> Result<Vec<SquareCheck>> {
    let cat = &tb.subdivision.cat;
    let mut out = Vec::new();
    for a in cat.objects() {
        for b in cat.objects() {
            if a != b && !cat.hom(a, b).is_empty() {
                out.push(orbit_square(cat, &tb.projection, &tb.kan, &tb.pulled, cat.hom(a, b).start, hom)?);
            }
        }
    }
    Ok(out)
}

/// Right cofinality of `μ` and the adjunctions `Π_E ⊆ (π ↓ [E])`.
pub fn theorem_b_cofinality(tb: &TheoremB, h: HomologySettings) -> Result<CofinalityChecks> {
    let first_vertex = check_right_cofinal(&tb.subdivision.cat, &tb.zeta.feop, &tb.mu, h.cap, h.p, h.budget)?;
    let adjoint = tb
        .projection
        .poset
        .objects()
        .map(|c| pi_adjoint_check(&tb.subdivision, &tb.zeta.fe, &tb.projection, &tb.kan.commas[c as usize], c))
        .collect::<Result<_>>()?;
    Ok(CofinalityChecks { first_vertex, adjoint })
}

/// `τ: s((F^E)^op) → s(F^E)`, reversing chains and inverting the
/// components, and the identity `p = μ ∘ τ` on `s((F^E)^op)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauCheck {
    pub objects: usize,
    pub morphisms: usize,
    pub isomorphism: bool,
    pub first_vertex_factorises: bool,
}

pub fn tau_check(l: &LinkingSystem, z: &ZetaFunctor, budget: usize) -> Result<TauCheck> {
    let fusion = l.fusion();
    let s_order = fusion.sylow().order();
    let fe = heighted_fe(l, z)?;
    let feop = HeightedEICategory::new((*z.feop).clone(), z.members.iter().map(|&e| s_order - fusion.subgroup(e).order()).collect())?;
    let sd = subdivision_category(&fe, None, budget)?;
    let sd_op = subdivision_category(&feop, None, budget)?;
    let opc = &*z.feop;
    let mut obj = Vec::with_capacity(sd_op.objects.len());
    for o in &sd_op.objects {
        let vertices: Vec<Obj> = o.vertices.iter().rev().copied().collect();
        let arrows: Vec<Mor> = o.arrows.iter().rev().map(|&a| z.unop[a as usize]).collect();
        obj.push(sd.object_of(&SdObject { vertices, arrows }).ok_or_else(|| Error::InvalidFunctor("τ misses an object".into()))?);
    }
    let mut mor = Vec::with_capacity(sd_op.morphisms.len());
    for f in sd_op.cat.morphisms() {
        let m = &sd_op.morphisms[f as usize];
        let (k, k1) = (sd_op.objects[sd_op.cat.src(f) as usize].len(), m.eps.len() - 1);
        let eps = (0..=k1).map(|i| (k - m.eps[k1 - i] as usize) as u32).collect();
        let phi = (0..=k1)
            .map(|i| z.fe.inverse(z.unop[m.phi[k1 - i] as usize]).expect("components are isomorphisms"))
            .collect();
        let (a, b) = (obj[sd_op.cat.src(f) as usize], obj[sd_op.cat.tgt(f) as usize]);
        mor.push(sd.morphism(a, b, &SdMorphism { eps, phi }).ok_or_else(|| Error::InvalidFunctor("τ misses a morphism".into()))?);
    }
    let tau = FinFunctor::new_unchecked(obj, mor);
    let isomorphism = tau.check(&sd_op.cat, &sd.cat).is_ok() && tau.is_isomorphism(&sd_op.cat, &sd.cat);
    let mu = mu_functor(&sd, &z.fe, &z.op);
    let first_vertex_factorises = first_vertex_functor(&sd_op, opc) == tau.then(&mu);
    Ok(TauCheck { objects: sd_op.objects.len(), morphisms: sd_op.morphisms.len(), isomorphism, first_vertex_factorises })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{CollectionKind, FusionSystem};
    use crate::group::library::*;
    use crate::subdivision::DEFAULT_SUBDIVISION_BUDGET;

    fn setup(g: FiniteGroup) -> (LinkingSystem, Vec<SubgroupId>) {
        let f = Arc::new(FusionSystem::new(g, 2).unwrap());
        let c = f.build_collection(CollectionKind::Centric, None).unwrap();
        let e = f.build_collection(CollectionKind::ElementaryAbelian, None).unwrap();
        (LinkingSystem::build(f, &c).unwrap(), e.members)
    }

    fn settings(cap: usize) -> HomologySettings {
        HomologySettings { cap, p: 2, budget: DEFAULT_SIMPLEX_BUDGET }
    }

    #[test]
    fn s3_single_class() {
        let (l, e) = setup(symmetric3());
        assert_eq!(e.len(), 1);
        let tb = theorem_b_diagram(&l, &e, DEFAULT_SUBDIVISION_BUDGET).unwrap();
        assert_eq!(tb.diagram.base.n_objects(), 1);
        let r = verify_decomposition(&tb.diagram, 4, 2, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(r.homology.source_betti, [1, 1, 1, 1]);
        assert!(r.all_iso());
        let full = verify_decomposition_with(&tb.diagram, 4, 2, DEFAULT_SIMPLEX_BUDGET, NerveModel::Full).unwrap();
        assert_eq!(full.homology, r.homology);
    }

    #[test]
    fn zeta_on_s4() {
        let (l, e) = setup(symmetric4());
        let z = zeta_functor(&l, &e).unwrap();
        assert!(zeta_hom_check(&l, &z));
        let fusion = l.fusion();
        let grp = fusion.group();
        for a in l.category().objects() {
            let omega = grp.omega_p(&fusion.center(l.subgroup_id(a)), 2);
            assert_eq!(*fusion.subgroup(z.members[z.functor.on_obj(a) as usize]), omega);
        }
        let a = l
            .category()
            .objects()
            .find(|&a| fusion.subgroup(l.subgroup_id(a)).order() == 4 && !fusion.is_elementary_abelian(l.subgroup_id(a)))
            .expect("C_4 is centric");
        assert_eq!(fusion.subgroup(z.members[z.functor.on_obj(a) as usize]).order(), 2);
        // dropping Ω_2 Z(C_4) = Z(S) trips the gate
        let zs = fusion.center_id(fusion.sylow_id());
        let small: Vec<SubgroupId> = e.iter().copied().filter(|&x| x != zs).collect();
        assert!(matches!(zeta_functor(&l, &small), Err(Error::CollectionTooSmall { .. })));
    }

    #[test]
    fn cbar_and_nol_on_s4() {
        let (l, e) = setup(symmetric4());
        let fusion = l.fusion();
        let zs = fusion.center_id(fusion.sylow_id());
        let expected: usize = l.category().objects().map(|a| fusion.hom(zs, fusion.center_id(l.subgroup_id(a))).len()).sum();
        let tb = theorem_b_diagram(&l, &e, DEFAULT_SUBDIVISION_BUDGET).unwrap();
        let cb = cbar_category(&l, &tb.zeta, &tb.kan_zeta, tb.zeta.index_of(zs).unwrap());
        assert_eq!(cb.cbar.cat.n_objects(), expected);
        let nol = nol_category(&l, &[zs]);
        let members: Vec<Obj> =
            l.category().objects().filter(|&a| fusion.subgroup(zs).is_subgroup_of(&fusion.center(l.subgroup_id(a)))).collect();
        assert_eq!(nol.objects, members);
        assert!(!nol.objects.is_empty());
    }

    #[test]
    fn s4_chains_and_squares() {
        let (l, e) = setup(symmetric4());
        let tb = theorem_b_diagram(&l, &e, DEFAULT_SUBDIVISION_BUDGET).unwrap();
        let mut not_centralised = 0;
        for o in tb.subdivision.cat.objects() {
            let chain = tb.chain_of(o);
            let c = theorem_b_chain(&tb, &l, &chain).unwrap();
            assert!(c.orbit_iso, "{chain:?}");
            assert!(c.factorization_holds, "{chain:?}");
            assert!(c.epsilon.injective_on_objects && c.epsilon.fully_faithful, "{chain:?}");
            match c.epsilon.essentially_surjective {
                Some(b) => assert!(b, "{chain:?}"),
                None => not_centralised += 1,
            }
            assert!(c.homology(&tb, settings(3)).unwrap().all_iso(), "{chain:?}");
        }
        // <(1,2)(3,4)> is conjugate to Z(S) but has a smaller centraliser in S
        assert!(not_centralised > 0);
        for s in theorem_b_squares(&tb, Some(settings(3))).unwrap() {
            assert!(s.natural && s.homology_agrees == Some(true), "{s:?}");
        }
        assert!(theorem_b_cofinality(&tb, settings(3)).unwrap().passes());
        let t = tau_check(&l, &tb.zeta, DEFAULT_SUBDIVISION_BUDGET).unwrap();
        assert!(t.isomorphism && t.first_vertex_factorises, "{t:?}");
        let r = verify_decomposition(&tb.diagram, 3, 2, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert!(r.all_iso(), "{}", r.homology.summary());
    }

    #[test]
    fn d8_and_a4_pipelines() {
        for g in [dihedral8(), alternating4()] {
            let (l, e) = setup(g);
            let tb = theorem_b_diagram(&l, &e, DEFAULT_SUBDIVISION_BUDGET).unwrap();
            let r = verify_decomposition(&tb.diagram, 3, 2, DEFAULT_SIMPLEX_BUDGET).unwrap();
            assert!(r.all_iso(), "{}", r.homology.summary());
        }
    }
}
