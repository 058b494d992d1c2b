//! The normaliser decompositions of a centric linking system `L^C`.
//!
//! Both decompositions are diagrams of finite categories over a poset of
//! chain classes, built as homotopy left Kan extensions along the projection
//! `π: s → s̄` of a subdivision category, together with a comparison functor
//! from their Grothendieck construction to `L^C`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::*;
use crate::error::{Error, Result};
use crate::homology::{chain_map_of, chains_of, induced_map, HomologyReport, InducedMap};
use crate::subdivision::{chain_arrow, phi_star, subchain_indices, Projection, SdMorphism, SdObject, Subdivision};

mod dwyer;
mod theorem_a;
mod theorem_b;

pub use dwyer::*;
pub use theorem_a::*;
pub use theorem_b::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DecompositionKind {
    TheoremA,
    TheoremB,
}

/// A diagram `δ̃` over a poset `base` with its Grothendieck construction and
/// the comparison functor `Tr_{base}(δ̃) → L^C`.
#[derive(Clone, Debug)]
pub struct DecompositionDiagram {
    pub kind: DecompositionKind,
    pub base: Arc<FinCategory>,
    pub value: CatDiagram,
    pub total: Grothendieck,
    pub comparison: FinFunctor,
    /// `L^C`.
    pub target: Arc<FinCategory>,
}

impl DecompositionDiagram {
    pub(crate) fn assemble(
        kind: DecompositionKind,
        value: CatDiagram,
        total: Grothendieck,
        comparison: FinFunctor,
        target: Arc<FinCategory>,
    ) -> Result<DecompositionDiagram> {
        if !value.base.is_poset() {
            return Err(Error::InvalidDiagram("base of a decomposition must be a poset".into()));
        }
        comparison.check(&total.cat, &target)?;
        Ok(DecompositionDiagram { kind, base: value.base.clone(), value, total, comparison, target })
    }
}

/// Homology of both sides of a decomposition and of the comparison map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub homology: HomologyReport,
    pub total_objects: usize,
    /// Objects of the category whose nerve was taken.
    pub model_objects: usize,
    pub total_simplices: usize,
    pub target_simplices: usize,
}

impl DecompositionReport {
    pub fn all_iso(&self) -> bool {
        self.homology.all_iso()
    }
}

pub(crate) fn induced_between(f: &FinFunctor, source: &Nerve, target: &Nerve, target_cat: &FinCategory, p: u32) -> Result<InducedMap> {
    let s = nerve_map(f, source, target, target_cat);
    let cm = chain_map_of(&s, &source.sset, &target.sset);
    induced_map(&chains_of(&source.sset, p), &chains_of(&target.sset, p), &cm)
}

/// A skeleton of a finite category: the full subcategory on the first
/// object of every isomorphism class, its inclusion `I` and the retraction
/// `R` with `R(f: x → y) = θ_y ∘ f ∘ θ_x⁻¹` for chosen isomorphisms
/// `θ_x: x → rep(x)`. `R ∘ I` is the identity and both are equivalences,
/// so homology may be computed on the skeleton.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub cat: FinCategory,
    pub inclusion: FinFunctor,
    pub retraction: FinFunctor,
}

pub fn skeleton(c: &FinCategory) -> Result<Skeleton> {
    let classes = c.isomorphism_classes();
    let reps: Vec<Obj> = classes.iter().map(|cl| cl[0]).collect();
    let (cat, inclusion) = c.full_subcategory(&reps);
    let mut rep_of = vec![0 as Obj; c.n_objects()];
    let mut theta = vec![0 as Mor; c.n_objects()];
    for (i, cl) in classes.iter().enumerate() {
        for &x in cl {
            rep_of[x as usize] = i as Obj;
            theta[x as usize] = c
                .hom(x, cl[0])
                .find(|&f| c.is_iso(f))
                .ok_or_else(|| Error::InvalidCategory("isomorphism class without an isomorphism".into()))?;
        }
        theta[cl[0] as usize] = c.identity(cl[0]);
    }
    let mut local = vec![Mor::MAX; c.n_morphisms()];
    for (m, &f) in inclusion.mor.iter().enumerate() {
        local[f as usize] = m as Mor;
    }
    let mor = c
        .morphisms()
        .map(|f| {
            let (x, y) = (c.src(f), c.tgt(f));
            let back = c.inverse(theta[x as usize]).expect("θ is invertible");
            local[c.compose(theta[y as usize], c.compose(f, back)) as usize]
        })
        .collect();
    let retraction = FinFunctor::new_unchecked(rep_of, mor);
    retraction.check(c, &cat)?;
    if inclusion.then(&retraction) != FinFunctor::identity(&cat) {
        return Err(Error::InvalidFunctor("retraction does not split the skeleton inclusion".into()));
    }
    Ok(Skeleton { cat, inclusion, retraction })
}

/// The map `H_*(F): H_*(N C; F_p) → H_*(N D; F_p)` in degrees below `cap`,
/// computed as `R_D ∘ F ∘ I_C` between skeletons.
pub fn functor_homology(f: &FinFunctor, source: &FinCategory, target: &FinCategory, cap: usize, p: u32, budget: usize) -> Result<HomologyReport> {
    let (ss, ts) = (skeleton(source)?, skeleton(target)?);
    let g = ss.inclusion.then(f).then(&ts.retraction);
    let sn = nerve_truncated(&ss.cat, cap, budget)?;
    let tn = nerve_truncated(&ts.cat, cap, budget)?;
    Ok(HomologyReport::from_induced(cap, &induced_between(&g, &sn, &tn, &ts.cat, p)?))
}

/// Whether the nerves are taken of the categories themselves or of their
/// skeletons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NerveModel {
    Full,
    Skeleton,
}

/// Betti numbers of `Tr(δ̃)` and `L^C` in degrees `0..cap`, and the
/// comparison map on homology, computed on skeletons.
pub fn verify_decomposition(d: &DecompositionDiagram, cap: usize, p: u32, budget: usize) -> Result<DecompositionReport> {
    verify_decomposition_with(d, cap, p, budget, NerveModel::Skeleton)
}

pub fn verify_decomposition_with(d: &DecompositionDiagram, cap: usize, p: u32, budget: usize, model: NerveModel) -> Result<DecompositionReport> {
    let (source, target, f) = match model {
        NerveModel::Full => (d.total.cat.clone(), (*d.target).clone(), d.comparison.clone()),
        NerveModel::Skeleton => {
            let (ss, ts) = (skeleton(&d.total.cat)?, skeleton(&d.target)?);
            let f = ss.inclusion.then(&d.comparison).then(&ts.retraction);
            (ss.cat, ts.cat, f)
        }
    };
    let sn = nerve_truncated(&source, cap, budget)?;
    let tn = nerve_truncated(&target, cap, budget)?;
    let m = induced_between(&f, &sn, &tn, &target, p)?;
    Ok(DecompositionReport {
        homology: HomologyReport::from_induced(cap, &m),
        total_objects: d.total.cat.n_objects(),
        model_objects: source.n_objects(),
        total_simplices: sn.sset.total(),
        target_simplices: tn.sset.total(),
    })
}

/// The functor `Tr_{BAut(A)} U(A) → (π_* U)([A])`, `(∗, x) ↦ ((A, id), x)`,
/// for an object `A` of the source `K` of `π`.
#[derive(Clone, Debug)]
pub struct OrbitFunctor {
    pub object: Obj,
    pub class: Obj,
    /// `BAut_K(A)` and its inclusion into `K`.
    pub aut: FinCategory,
    pub aut_inclusion: FinFunctor,
    /// `Tr_{BAut(A)}(U|)`.
    pub orbit: Grothendieck,
    /// Into `kan.values[class]`.
    pub functor: FinFunctor,
}

pub fn orbit_functor(k: &FinCategory, proj: &Projection, kan: &KanExtension, u: &CatDiagram, a: Obj) -> OrbitFunctor {
    let (aut, aut_inclusion) = k.full_subcategory(&[a]);
    let class = proj.class_of[a as usize];
    let comma = &kan.commas[class as usize];
    let o = comma.object(a, proj.poset.identity(class)).expect("(A, id) is a comma object");
    let j = FinFunctor::new_unchecked(
        vec![o],
        aut.morphisms().map(|m| comma.morphism(o, o, aut_inclusion.on_mor(m)).expect("automorphisms lie over id")).collect(),
    );
    let orbit = grothendieck(&u.pullback(&aut_inclusion, Arc::new(aut.clone())));
    let functor = f_shriek(&j, &orbit, &kan.values[class as usize]);
    OrbitFunctor { object: a, class, aut, aut_inclusion, orbit, functor }
}

/// The square formed by `ψ: A → B` in `K`: across the top
/// `Tr_{BAut(A)} U(A) → (π_*U)([A]) → (π_*U)([B])`, down the left
/// `Tr_{ψ_*} U(ψ)` followed by the orbit functor of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareCheck {
    pub psi: Mor,
    /// Both composites are the same functor.
    pub strict: bool,
    /// The comma morphisms given by `ψ` form a natural transformation from
    /// the top composite to the bottom one.
    pub natural: bool,
    /// Both composites induce the same map on homology in trusted degrees.
    pub homology_agrees: Option<bool>,
}

/// Cap, prime and simplex budget of a homology computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologySettings {
    pub cap: usize,
    pub p: u32,
    pub budget: usize,
}

pub fn orbit_square(k: &FinCategory, proj: &Projection, kan: &KanExtension, u: &CatDiagram, psi: Mor, hom: Option<HomologySettings>) -> Result<SquareCheck> {
    let (a, b) = (k.src(psi), k.tgt(psi));
    let top_o = orbit_functor(k, proj, kan, u, a);
    let bot_o = orbit_functor(k, proj, kan, u, b);
    let lam = proj.functor.on_mor(psi);
    let top = top_o.functor.then(kan.diagram.map(lam));
    let pairs = phi_star(k, psi)?;
    let beta_of = |alpha: Mor| -> Mor {
        let beta = pairs.iter().find(|p| p.0 == alpha).expect("every automorphism is conjugated").1;
        bot_o.aut_inclusion.mor.iter().position(|&m| m == beta).expect("automorphism of B") as Mor
    };
    let u_psi = u.map(psi);
    let (oa, ob) = (&top_o.orbit, &bot_o.orbit);
    let left_obj: Vec<Obj> = oa.objects.iter().map(|&(_, x)| ob.object(0, u_psi.on_obj(x))).collect();
    let left_mor: Vec<Mor> = oa
        .cat
        .morphisms()
        .map(|m| {
            let (alpha, xi) = oa.morphisms[m as usize];
            let beta = beta_of(top_o.aut_inclusion.on_mor(alpha));
            ob.morphism(left_obj[oa.cat.src(m) as usize], left_obj[oa.cat.tgt(m) as usize], beta, u_psi.on_mor(xi))
                .expect("conjugated orbit morphism")
        })
        .collect();
    let left = FinFunctor::new_unchecked(left_obj, left_mor);
    left.check(&oa.cat, &ob.cat)?;
    let bottom = left.then(&bot_o.functor);
    let value = &kan.values[bot_o.class as usize];
    let comma = &kan.commas[bot_o.class as usize];
    let from = comma.object(a, lam).expect("(A, [ψ])");
    let to = comma.object(b, proj.poset.identity(bot_o.class)).expect("(B, id)");
    let kappa = comma.morphism(from, to, psi).expect("ψ lies over [ψ]");
    let components: Vec<Mor> = oa
        .cat
        .objects()
        .map(|x| {
            let (s, t) = (top.on_obj(x), bottom.on_obj(x));
            let y = u_psi.on_obj(oa.objects[x as usize].1);
            value.morphism(s, t, kappa, u.value(b).identity(y)).expect("τ component")
        })
        .collect();
    let natural = check_natural(&oa.cat, &value.cat, &top, &bottom, &components).is_ok();
    let homology_agrees = match hom {
        None => None,
        Some(h) => {
            let (ss, ts) = (skeleton(&oa.cat)?, skeleton(&value.cat)?);
            let sn = nerve_truncated(&ss.cat, h.cap, h.budget)?;
            let tn = nerve_truncated(&ts.cat, h.cap, h.budget)?;
            let through = |f: &FinFunctor| ss.inclusion.then(f).then(&ts.retraction);
            let mt = induced_between(&through(&top), &sn, &tn, &ts.cat, h.p)?;
            let mb = induced_between(&through(&bottom), &sn, &tn, &ts.cat, h.p)?;
            Some(match (&mt.matrices, &mb.matrices) {
                (Some(x), Some(y)) => x == y,
                _ => mt.ranks == mb.ranks,
            })
        }
    };
    Ok(SquareCheck { psi, strict: top == bottom, natural, homology_agrees })
}

/// `J: Π_A ⊆ (π ↓ [A])` together with its left adjoint
/// `(B, u) ↦ ε^*B`, the unique subchain of `B` in the class `[A]`.
pub fn pi_adjoint_check(sd: &Subdivision, a: &FinCategory, proj: &Projection, comma: &Comma, class: Obj) -> Result<bool> {
    let pi_objs: Vec<Obj> = comma
        .cat
        .objects()
        .filter(|&x| proj.class_of[comma.objects[x as usize].0 as usize] == class)
        .collect();
    let (pi_cat, j) = comma.cat.full_subcategory(&pi_objs);
    let id_class = proj.poset.identity(class);
    let mut left_obj = Vec::with_capacity(comma.cat.n_objects());
    let mut unit = Vec::with_capacity(comma.cat.n_objects());
    for x in comma.cat.objects() {
        let b = comma.objects[x as usize].0;
        let chain = &sd.objects[b as usize];
        let mut found = Vec::new();
        for idx in subchain_indices(chain.vertices.len()) {
            let sub = SdObject {
                vertices: idx.iter().map(|&i| chain.vertices[i]).collect(),
                arrows: idx.windows(2).map(|w| chain_arrow(a, chain, w[0], w[1])).collect(),
            };
            if let Some(o) = sd.object_of(&sub) {
                if proj.class_of[o as usize] == class {
                    found.push((idx, o));
                }
            }
        }
        if found.len() != 1 {
            return Err(Error::FactorizationHypothesisFails(alloc::format!(
                "{} subchains of object {b} in class {class}",
                found.len()
            )));
        }
        let (idx, o) = found.pop().expect("one");
        let target = comma.object(o, id_class).expect("(ε^*B, id)");
        let m = SdMorphism {
            eps: idx.iter().map(|&i| i as u32).collect(),
            phi: idx.iter().map(|&i| a.identity(chain.vertices[i])).collect(),
        };
        let s = sd.morphism(b, o, &m).ok_or_else(|| Error::InvalidCategory("restriction to a subchain is missing".into()))?;
        unit.push(comma.morphism(x, target, s).expect("unit lies over u"));
        left_obj.push(pi_objs.iter().position(|&y| y == target).expect("in Π_A") as Obj);
    }
    let mut left_mor = Vec::with_capacity(comma.cat.n_morphisms());
    for kappa in comma.cat.morphisms() {
        let (x, y) = (comma.cat.src(kappa), comma.cat.tgt(kappa));
        let goal = comma.cat.compose(unit[y as usize], kappa);
        let sols: Vec<Mor> = pi_cat
            .hom(left_obj[x as usize], left_obj[y as usize])
            .filter(|&n| comma.cat.compose(j.on_mor(n), unit[x as usize]) == goal)
            .collect();
        if sols.len() != 1 {
            return Ok(false);
        }
        left_mor.push(sols[0]);
    }
    let left = FinFunctor::new_unchecked(left_obj, left_mor);
    Ok(check_adjoint_cofinality(&pi_cat, &comma.cat, &j, &left, &unit))
}
