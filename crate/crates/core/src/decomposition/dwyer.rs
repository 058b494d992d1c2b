//! The transporter category `T^C` and the comparison of its chain
//! automorphism groups with those of `L^C`.

use alloc::vec::Vec;

use super::*;
use crate::error::Result;
use crate::fusion::SubgroupId;
use crate::group::{Elem, Subgroup};
use crate::homology::betti_of;
use crate::linking::LinkingSystem;
use crate::subdivision::{aut_l_chain, conj_classes_of_chains, enumerate_chains, SimplexChain};

/// Largest `|Aut_T(P)|` for which group homology is computed.
pub const DWYER_HOMOLOGY_LIMIT: usize = 24;

/// `T^C`: objects the members of `C`, morphisms `P → Q` the elements
/// `g` with `gPg⁻¹ ≤ Q`, composed by multiplication.
pub fn transporter_category(l: &LinkingSystem) -> (FinCategory, Vec<Elem>) {
    let fusion = l.fusion();
    let grp = fusion.group();
    let n = l.n_objects();
    let mut morphisms = Vec::new();
    for a in 0..n as Obj {
        for b in 0..n as Obj {
            morphisms.extend(grp.transporter(l.subgroup(a), l.subgroup(b)).into_iter().map(|g| (a, b, g)));
        }
    }
    let ids = (0..n).map(|_| grp.identity()).collect();
    FinCategory::build(n, morphisms, ids, |&h, &g| grp.mul(h, g)).expect("transporter category")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DwyerHomology {
    pub transporter_betti: Vec<usize>,
    pub linking_betti: Vec<usize>,
    /// `BAut_T(P) → BAut_L(P)` induces isomorphisms in degrees `0..=2`.
    pub induced_iso: bool,
}

/// One chain class `[P]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DwyerClass {
    pub chain: SimplexChain,
    /// `|∩_i N_G(P_i)|`.
    pub transporter_aut: usize,
    pub linking_aut: usize,
    pub kernel: usize,
    /// The kernel equals `∩_i N_G(P_i) ∩ C'_G(P_0)`.
    pub kernel_matches: bool,
    pub surjective: bool,
    pub kernel_coprime: bool,
    pub homology: Option<DwyerHomology>,
}

impl DwyerClass {
    pub fn passes(&self) -> bool {
        self.kernel_matches && self.surjective && self.kernel_coprime && self.homology.as_ref().is_none_or(|h| h.induced_iso)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DwyerReport {
    pub transporter_objects: usize,
    pub transporter_morphisms: usize,
    /// `T^C → L^C`, `g ↦ [g]`, is a functor.
    pub projection_is_functor: bool,
    pub classes: Vec<DwyerClass>,
}

impl DwyerReport {
    pub fn passes(&self) -> bool {
        self.projection_is_functor && self.classes.iter().all(DwyerClass::passes)
    }
}

/// Compares `Aut_T(P) = ∩_i N_G(P_i)` with `Aut_L(P)` for one chain per
/// class. Group homology is compared when `with_homology` is set and
/// `|Aut_T(P)| ≤ DWYER_HOMOLOGY_LIMIT`.
pub fn dwyer_comparison(l: &LinkingSystem, with_homology: bool, budget: usize) -> Result<DwyerReport> {
    let fusion = l.fusion();
    let grp = fusion.group();
    let p = fusion.p();
    let (t, elems) = transporter_category(l);
    let to_l = FinFunctor::new_unchecked(
        t.objects().collect(),
        t.morphisms().map(|f| l.find(t.src(f), t.tgt(f), elems[f as usize]).expect("transporter element")).collect(),
    );
    let projection_is_functor = to_l.check(&t, l.category()).is_ok();
    let chains = enumerate_chains(fusion, l.collection(), None);
    let cp = conj_classes_of_chains(fusion, chains);
    let mut classes = Vec::with_capacity(cp.classes.len());
    for cl in &cp.classes {
        let chain = cl.representative.clone();
        let subgroups: Vec<&Subgroup> = chain.iter().map(|&id| fusion.subgroup(id)).collect();
        let normaliser: Vec<Elem> =
            grp.elements().filter(|&g| subgroups.iter().all(|s| grp.conjugate(g, s) == **s)).collect();
        let aut = aut_l_chain(l, &chain)?;
        let a0 = aut.chain[0];
        let image: Vec<Mor> = normaliser.iter().map(|&g| l.find(a0, a0, g).expect("normalises P_0")).collect();
        let id = l.category().identity(a0);
        let kernel: Vec<Elem> = normaliser.iter().zip(&image).filter(|p| *p.1 == id).map(|p| *p.0).collect();
        let cprime = l.cprime(a0);
        let expected: Vec<Elem> = normaliser.iter().copied().filter(|&g| cprime.contains(g)).collect();
        let mut hit = image.clone();
        hit.sort_unstable();
        hit.dedup();
        let surjective = hit == aut.first;
        let homology = if with_homology && normaliser.len() <= DWYER_HOMOLOGY_LIMIT {
            let h = grp.subgroup_from_elements(&normaliser)?;
            let (ht, map) = grp.restrict_to(&h);
            let bt = FinCategory::one_object(&ht);
            let bl = aut.baut();
            let f = FinFunctor::new_unchecked(
                vec![0],
                map.iter()
                    .map(|&g| aut.first.binary_search(&l.find(a0, a0, g).expect("normalises P_0")).expect("in Aut_L") as Mor)
                    .collect(),
            );
            f.check(&bt, &bl)?;
            let nt = nerve_truncated(&bt, 3, budget)?;
            let nl = nerve_truncated(&bl, 3, budget)?;
            let induced = induced_between(&f, &nt, &nl, &bl, p)?;
            Some(DwyerHomology {
                transporter_betti: betti_of(&nt.sset, p)?,
                linking_betti: betti_of(&nl.sset, p)?,
                induced_iso: induced.all_iso(),
            })
        } else {
            None
        };
        classes.push(DwyerClass {
            chain,
            transporter_aut: normaliser.len(),
            linking_aut: aut.order(),
            kernel: kernel.len(),
            kernel_matches: kernel == expected,
            surjective,
            kernel_coprime: !kernel.len().is_multiple_of(p as usize),
            homology,
        });
    }
    Ok(DwyerReport {
        transporter_objects: t.n_objects(),
        transporter_morphisms: t.n_morphisms(),
        projection_is_functor,
        classes,
    })
}

/// Chains of a Dwyer report by subgroup ids, for callers that only need
/// the representatives.
pub fn dwyer_chains(report: &DwyerReport) -> Vec<&[SubgroupId]> {
    report.classes.iter().map(|c| c.chain.as_slice()).collect()
}
