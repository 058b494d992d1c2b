//! The fusion system `F_S(G)` of a finite group at a prime.
//!
//! Subgroups of the Sylow subgroup `S` are addressed by [`SubgroupId`], their
//! position in the sorted list of all subgroups of `S`. A morphism `P → Q`
//! is conjugation by an element of the transporter `N_G(P, Q)`, stored as the
//! canonical representative of its `C_G(P)`-coset.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::category::{FinCategory, Obj};
use crate::error::{Error, Result};
use crate::group::{p_part, Elem, FiniteGroup, Subgroup, DEFAULT_SUBGROUP_CAP};

/// Position of a subgroup in [`FusionSystem::subgroups`].
pub type SubgroupId = usize;

/// A morphism of `F_S(G)`: conjugation `x ↦ g x g⁻¹` from `source` into
/// `target`, with `rep` the minimal element of `g·C_G(source)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FusionMorphism {
    pub source: SubgroupId,
    pub target: SubgroupId,
    pub rep: Elem,
}

pub struct FusionSystem {
    group: FiniteGroup,
    p: u32,
    sylow: Subgroup,
    subgroups: Vec<Subgroup>,
    index: BTreeMap<Subgroup, SubgroupId>,
    centralizers: Vec<Subgroup>,
    homs: Vec<OnceBox<Vec<FusionMorphism>>>,
}

impl core::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FusionSystem")
            .field("order", &self.group.order())
            .field("p", &self.p)
            .field("sylow", &self.sylow)
            .finish()
    }
}

impl FusionSystem {
    pub fn new(group: FiniteGroup, p: u32) -> Result<Self> {
        Self::with_cap(group, p, DEFAULT_SUBGROUP_CAP)
    }

    pub fn with_cap(group: FiniteGroup, p: u32, subgroup_cap: usize) -> Result<Self> {
        let sylow = group.sylow(p, subgroup_cap)?;
        let subgroups = group.subgroups_of(&sylow, subgroup_cap)?;
        let index = subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let centralizers = subgroups.iter().map(|s| group.centralizer(s)).collect();
        let n = subgroups.len();
        let homs = (0..n * n).map(|_| OnceBox::new()).collect();
        Ok(FusionSystem { group, p, sylow, subgroups, index, centralizers, homs })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    pub fn sylow_id(&self) -> SubgroupId {
        self.subgroups.len() - 1
    }

    /// All subgroups of `S`, sorted by `(order, element list)`.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn id_of(&self, s: &Subgroup) -> Option<SubgroupId> {
        self.index.get(s).copied()
    }

    /// `C_G(P)`.
    pub fn centralizer_in_g(&self, id: SubgroupId) -> &Subgroup {
        &self.centralizers[id]
    }

    pub fn centralizer_in_s(&self, id: SubgroupId) -> Subgroup {
        self.centralizers[id].intersection(&self.sylow)
    }

    pub fn normalizer_in_s(&self, id: SubgroupId) -> Subgroup {
        self.group.normalizer_in(&self.sylow, &self.subgroups[id])
    }

    pub fn center(&self, id: SubgroupId) -> Subgroup {
        self.group.center(&self.subgroups[id])
    }

    pub fn center_id(&self, id: SubgroupId) -> SubgroupId {
        self.id_of(&self.center(id)).expect("Z(P) ≤ S")
    }

    fn canonical(&self, source: SubgroupId, target: SubgroupId, g: Elem) -> FusionMorphism {
        FusionMorphism { source, target, rep: self.group.coset_rep(g, &self.centralizers[source]) }
    }

    /// `Hom_F(P, Q)`: one morphism per `C_G(P)`-coset of `N_G(P, Q)`, sorted by rep.
    pub fn hom(&self, source: SubgroupId, target: SubgroupId) -> &[FusionMorphism] {
        let n = self.subgroups.len();
        self.homs[source * n + target].get_or_init(|| {
            let t = self.group.transporter(&self.subgroups[source], &self.subgroups[target]);
            let set: BTreeSet<FusionMorphism> =
                t.into_iter().map(|g| self.canonical(source, target, g)).collect();
            alloc::boxed::Box::new(set.into_iter().collect())
        })
    }

    /// The morphism `P → Q` induced by conjugation with `g`, if `g P g⁻¹ ≤ Q`.
    pub fn morphism(&self, source: SubgroupId, target: SubgroupId, g: Elem) -> Option<FusionMorphism> {
        let image = self.group.conjugate(g, &self.subgroups[source]);
        image
            .is_subgroup_of(&self.subgroups[target])
            .then(|| self.canonical(source, target, g))
    }

    pub fn identity(&self, id: SubgroupId) -> FusionMorphism {
        self.canonical(id, id, self.group.identity())
    }

    pub fn inclusion(&self, source: SubgroupId, target: SubgroupId) -> FusionMorphism {
        debug_assert!(self.subgroups[source].is_subgroup_of(&self.subgroups[target]));
        self.canonical(source, target, self.group.identity())
    }

    /// `ψ ∘ φ`.
    pub fn compose(&self, psi: FusionMorphism, phi: FusionMorphism) -> FusionMorphism {
        debug_assert_eq!(phi.target, psi.source);
        self.canonical(phi.source, psi.target, self.group.mul(psi.rep, phi.rep))
    }

    pub fn apply(&self, phi: FusionMorphism, x: Elem) -> Elem {
        self.group.conj(phi.rep, x)
    }

    /// `φ(P)` as a subgroup id.
    pub fn image(&self, phi: FusionMorphism) -> SubgroupId {
        self.id_of(&self.group.conjugate(phi.rep, &self.subgroups[phi.source]))
            .expect("images of subgroups of S lie in S")
    }

    /// Inverse of an isomorphism `P → φ(P)`.
    pub fn inverse(&self, phi: FusionMorphism) -> FusionMorphism {
        let image = self.image(phi);
        self.canonical(image, phi.source, self.group.inv(phi.rep))
    }

    /// Restriction of `φ` to a subgroup `R ≤ P`, with target `φ(R)`
    /// (or `target` when given).
    pub fn restrict(&self, phi: FusionMorphism, to: SubgroupId, target: Option<SubgroupId>) -> FusionMorphism {
        let target = target.unwrap_or_else(|| {
            self.id_of(&self.group.conjugate(phi.rep, &self.subgroups[to])).expect("in S")
        });
        self.canonical(to, target, phi.rep)
    }

    /// `Iso_F(P, Q)`.
    pub fn iso(&self, source: SubgroupId, target: SubgroupId) -> &[FusionMorphism] {
        if self.subgroups[source].order() != self.subgroups[target].order() {
            return &[];
        }
        self.hom(source, target)
    }

    pub fn are_conjugate(&self, a: SubgroupId, b: SubgroupId) -> bool {
        !self.iso(a, b).is_empty()
    }

    /// The F-conjugacy class of `P` among all subgroups of `S`.
    pub fn class_of(&self, id: SubgroupId) -> Vec<SubgroupId> {
        (0..self.subgroups.len()).filter(|&q| self.are_conjugate(id, q)).collect()
    }

    /// Partition of `members` into F-conjugacy classes. Each class is sorted
    /// and the classes are ordered by their minimal member.
    pub fn conjugacy_classes(&self, members: &[SubgroupId]) -> Vec<Vec<SubgroupId>> {
        let mut sorted: Vec<SubgroupId> = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut classes: Vec<Vec<SubgroupId>> = Vec::new();
        for m in sorted {
            match classes.iter_mut().find(|c| self.are_conjugate(c[0], m)) {
                Some(c) => c.push(m),
                None => classes.push(alloc::vec![m]),
            }
        }
        classes
    }

    pub fn is_fully_centralised(&self, id: SubgroupId) -> bool {
        let own = self.centralizer_in_s(id).order();
        self.class_of(id).into_iter().all(|q| self.centralizer_in_s(q).order() <= own)
    }

    pub fn is_fully_normalised(&self, id: SubgroupId) -> bool {
        let own = self.normalizer_in_s(id).order();
        self.class_of(id).into_iter().all(|q| self.normalizer_in_s(q).order() <= own)
    }

    /// `N_φ = { g ∈ N_S(P) : φ c_g φ⁻¹ ∈ Aut_S(φ(P)) }`.
    pub fn n_phi(&self, phi: FusionMorphism) -> Subgroup {
        let g = &self.group;
        let image = self.image(phi);
        let image_sub = &self.subgroups[image];
        let n_s_image = self.normalizer_in_s(image);
        let c_image = &self.centralizers[image];
        let elems: Vec<Elem> = self
            .normalizer_in_s(phi.source)
            .elements()
            .iter()
            .copied()
            .filter(|&x| {
                // φ c_x φ⁻¹ = c_{h x h⁻¹} on φ(P); it lies in Aut_S(φ(P)) iff
                // h x h⁻¹ ∈ N_S(φ(P))·C_G(φ(P))
                let y = g.conj(phi.rep, x);
                debug_assert!(g.conjugate(y, image_sub) == *image_sub);
                n_s_image.elements().iter().any(|&s| c_image.contains(g.mul(g.inv(s), y)))
            })
            .collect();
        Subgroup::from_sorted(elems)
    }

    /// `P` is F-centric: `C_S(P') = Z(P')` for every F-conjugate `P'`.
    pub fn is_centric(&self, id: SubgroupId) -> bool {
        self.class_of(id).into_iter().all(|q| self.centralizer_in_s(q) == self.center(q))
    }

    /// `Aut_F(P)` as an abstract group, with the morphism for each element.
    pub fn aut_group(&self, id: SubgroupId) -> (FiniteGroup, Vec<FusionMorphism>) {
        let auts = self.hom(id, id).to_vec();
        let pos = |m: FusionMorphism| auts.binary_search(&m).expect("closed under composition") as Elem;
        let mut table = Vec::with_capacity(auts.len() * auts.len());
        for &a in &auts {
            for &b in &auts {
                table.push(pos(self.compose(a, b)));
            }
        }
        let grp = FiniteGroup::from_cayley_table(auts.len(), table, crate::group::Validation::Default)
            .expect("Aut_F(P) is a group");
        (grp, auts)
    }

    /// `Out_F(P) = Aut_F(P) / Inn(P)`.
    pub fn out_group(&self, id: SubgroupId) -> FiniteGroup {
        let (aut, auts) = self.aut_group(id);
        let inner: Vec<Elem> = self.subgroups[id]
            .elements()
            .iter()
            .map(|&x| auts.binary_search(&self.canonical(id, id, x)).expect("inner") as Elem)
            .collect();
        let inn = aut.generate(&inner);
        aut.quotient(&aut.whole(), &inn).0
    }

    /// F-radical in the usual sense: `O_p(Out_F(P)) = 1`. This notion is
    /// imported; it is not derived from the decomposition itself.
    pub fn is_radical(&self, id: SubgroupId) -> bool {
        self.out_group(id).o_p(self.p, DEFAULT_SUBGROUP_CAP).expect("small group").order() == 1
    }

    pub fn is_elementary_abelian(&self, id: SubgroupId) -> bool {
        self.group.is_elementary_abelian(&self.subgroups[id], self.p)
    }

    /// Builds a collection of the given kind. With `custom` members the
    /// collection is their closure under F-conjugacy, checked against `kind`.
    pub fn build_collection(&self, kind: CollectionKind, custom: Option<&[SubgroupId]>) -> Result<Collection> {
        let passes = |id: SubgroupId| match kind {
            CollectionKind::Centric => self.is_centric(id),
            CollectionKind::CentricRadical => self.is_centric(id) && self.is_radical(id),
            CollectionKind::ElementaryAbelian => self.subgroups[id].order() > 1 && self.is_elementary_abelian(id),
            CollectionKind::Custom => true,
        };
        let members: BTreeSet<SubgroupId> = match custom {
            None => (0..self.subgroups.len()).filter(|&id| passes(id)).collect(),
            Some(given) => {
                for &id in given {
                    if id >= self.subgroups.len() {
                        return Err(Error::InvalidCollection(format!("no subgroup with id {id}")));
                    }
                    if !passes(id) {
                        let name = format!("{}", self.subgroups[id]);
                        return Err(match kind {
                            CollectionKind::Centric | CollectionKind::CentricRadical => Error::NotCentric(name),
                            _ => Error::InvalidCollection(format!("{name} is not elementary abelian")),
                        });
                    }
                }
                given.iter().flat_map(|&id| self.class_of(id)).collect()
            }
        };
        Ok(Collection { members: members.into_iter().collect(), kind })
    }

    /// `Aut_F(E)` for a chain `E_0 < … < E_k`: automorphisms of `E_k` that
    /// preserve every `E_i`.
    pub fn aut_f_chain(&self, chain: &[SubgroupId]) -> Vec<FusionMorphism> {
        let top = *chain.last().expect("nonempty chain");
        self.hom(top, top)
            .iter()
            .copied()
            .filter(|&f| {
                chain
                    .iter()
                    .all(|&e| self.group.conjugate(f.rep, &self.subgroups[e]) == self.subgroups[e])
            })
            .collect()
    }

    /// The full subcategory of `F` on `members`, object `i` being
    /// `members[i]`, with the fusion morphism behind every morphism id.
    pub fn category_on(&self, members: &[SubgroupId]) -> (FinCategory, Vec<FusionMorphism>) {
        let mut morphisms = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                morphisms.extend(self.hom(a, b).iter().map(|&m| (i as Obj, j as Obj, m)));
            }
        }
        let ids = members.iter().map(|&a| self.identity(a)).collect();
        FinCategory::build(members.len(), morphisms, ids, |&g, &f| self.compose(g, f)).expect("F is a category")
    }

    /// The fusion system as an explicit table of element maps.
    pub fn to_table(&self) -> FusionTable {
        let n = self.subgroups.len();
        let mut homs = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                homs.push(
                    self.hom(a, b)
                        .iter()
                        .map(|&m| self.subgroups[a].elements().iter().map(|&x| self.apply(m, x)).collect())
                        .collect(),
                );
            }
        }
        FusionTable {
            group: self.group.clone(),
            p: self.p,
            sylow: self.sylow.clone(),
            subgroups: self.subgroups.clone(),
            homs,
        }
    }
}

/// What a collection is meant to contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CollectionKind {
    Centric,
    CentricRadical,
    ElementaryAbelian,
    Custom,
}

/// A set of subgroups of `S` closed under F-conjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection {
    pub members: Vec<SubgroupId>,
    pub kind: CollectionKind,
}

impl Collection {
    pub fn contains(&self, id: SubgroupId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A fusion system over `S` given extensionally: for each pair of subgroups
/// the list of morphisms, each as the images of the source's sorted
/// elements. The saturation checker works on this form so it does not rely
/// on the group that produced it.
#[derive(Clone, Debug)]
pub struct FusionTable {
    group: FiniteGroup,
    p: u32,
    sylow: Subgroup,
    subgroups: Vec<Subgroup>,
    homs: Vec<Vec<Vec<Elem>>>,
}

/// Which saturation axiom a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationWitness {
    pub axiom: Axiom,
    pub subgroup: SubgroupId,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SaturationReport {
    pub axiom_i_witnesses: Vec<SaturationWitness>,
    pub axiom_ii_witnesses: Vec<SaturationWitness>,
    pub fully_normalised_checked: usize,
    pub morphisms_checked: usize,
}

impl SaturationReport {
    pub fn ok(&self) -> bool {
        self.axiom_i_witnesses.is_empty() && self.axiom_ii_witnesses.is_empty()
    }
}

impl FusionTable {
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn hom(&self, a: SubgroupId, b: SubgroupId) -> &[Vec<Elem>] {
        &self.homs[a * self.subgroups.len() + b]
    }

    /// Deletes one morphism from `Hom(a, b)`; used to build invalid inputs.
    pub fn remove_morphism(&mut self, a: SubgroupId, b: SubgroupId, index: usize) -> Vec<Elem> {
        let n = self.subgroups.len();
        self.homs[a * n + b].remove(index)
    }

    fn id_of(&self, s: &Subgroup) -> Option<SubgroupId> {
        self.subgroups.binary_search(s).ok()
    }

    fn image_id(&self, map: &[Elem]) -> Option<SubgroupId> {
        let mut e = map.to_vec();
        e.sort_unstable();
        self.id_of(&Subgroup::from_sorted(e))
    }

    fn conjugate_class(&self, a: SubgroupId) -> Vec<SubgroupId> {
        let order = self.subgroups[a].order();
        (0..self.subgroups.len())
            .filter(|&b| self.subgroups[b].order() == order && !self.hom(a, b).is_empty())
            .collect()
    }

    fn conj_map(&self, s: Elem, on: SubgroupId) -> Vec<Elem> {
        self.subgroups[on].elements().iter().map(|&x| self.group.conj(s, x)).collect()
    }

    /// `Aut_S(P)` as a set of element maps.
    fn aut_s(&self, a: SubgroupId) -> BTreeSet<Vec<Elem>> {
        let n_s = self.group.normalizer_in(&self.sylow, &self.subgroups[a]);
        n_s.elements().iter().map(|&s| self.conj_map(s, a)).collect()
    }

    /// Checks saturation axioms I and II exhaustively.
    pub fn check_saturation(&self) -> SaturationReport {
        let g = &self.group;
        let mut report = SaturationReport::default();
        let n = self.subgroups.len();
        let c_s = |a: SubgroupId| g.centralizer_in(&self.sylow, &self.subgroups[a]).order();
        let n_s = |a: SubgroupId| g.normalizer_in(&self.sylow, &self.subgroups[a]).order();
        let fully_centralised = |a: SubgroupId| self.conjugate_class(a).into_iter().all(|b| c_s(b) <= c_s(a));
        let fully_normalised = |a: SubgroupId| self.conjugate_class(a).into_iter().all(|b| n_s(b) <= n_s(a));

        for a in 0..n {
            if !fully_normalised(a) {
                continue;
            }
            report.fully_normalised_checked += 1;
            let mut fail = |detail: String| {
                report.axiom_i_witnesses.push(SaturationWitness { axiom: Axiom::I, subgroup: a, detail })
            };
            if !fully_centralised(a) {
                fail(format!("{} is fully normalised but not fully centralised", self.subgroups[a]));
                continue;
            }
            let aut_f: BTreeSet<Vec<Elem>> = self.hom(a, a).iter().cloned().collect();
            let aut_s = self.aut_s(a);
            if let Some(missing) = aut_s.iter().find(|m| !aut_f.contains(*m)) {
                fail(format!("Aut_S({}) contains {:?} outside Aut_F", self.subgroups[a], missing));
                continue;
            }
            if !self.is_closed(a, &aut_f) {
                fail(format!("Aut_F({}) is not closed under composition", self.subgroups[a]));
                continue;
            }
            if aut_s.len() != p_part(aut_f.len(), self.p) {
                fail(format!(
                    "|Aut_S({})| = {} is not the {}-part of |Aut_F| = {}",
                    self.subgroups[a],
                    aut_s.len(),
                    self.p,
                    aut_f.len()
                ));
            }
        }

        let s_id = n - 1;
        for a in 0..n {
            for phi in self.hom(a, s_id) {
                let Some(image) = self.image_id(phi) else {
                    report.axiom_ii_witnesses.push(SaturationWitness {
                        axiom: Axiom::II,
                        subgroup: a,
                        detail: format!("image of {phi:?} is not a subgroup"),
                    });
                    continue;
                };
                if !fully_centralised(image) {
                    continue;
                }
                report.morphisms_checked += 1;
                let n_phi = self.n_phi(a, phi, image);
                let Some(n_id) = self.id_of(&n_phi) else { continue };
                let source = &self.subgroups[a];
                let domain = self.subgroups[n_id].elements();
                let extends = self.hom(n_id, s_id).iter().any(|psi| {
                    source.elements().iter().zip(phi).all(|(&x, &fx)| {
                        let at = domain.binary_search(&x).expect("P ≤ N_φ");
                        psi[at] == fx
                    })
                });
                if !extends {
                    report.axiom_ii_witnesses.push(SaturationWitness {
                        axiom: Axiom::II,
                        subgroup: a,
                        detail: format!("{phi:?} on {source} does not extend to N_φ = {n_phi}"),
                    });
                }
            }
        }
        report
    }

    fn is_closed(&self, a: SubgroupId, auts: &BTreeSet<Vec<Elem>>) -> bool {
        let elems = self.subgroups[a].elements();
        let pos = |x: Elem| elems.binary_search(&x).ok();
        auts.iter().all(|f| {
            auts.iter().all(|h| {
                // f ∘ h
                let comp: Option<Vec<Elem>> = h.iter().map(|&y| pos(y).map(|i| f[i])).collect();
                comp.is_some_and(|c| auts.contains(&c))
            })
        })
    }

    fn n_phi(&self, a: SubgroupId, phi: &[Elem], image: SubgroupId) -> Subgroup {
        let g = &self.group;
        let source = self.subgroups[a].elements();
        let aut_s_image = self.aut_s(image);
        let image_elems = self.subgroups[image].elements();
        let pre = |y: Elem| source[phi.iter().position(|&v| v == y).expect("y in φ(P)")];
        let elems = g
            .normalizer_in(&self.sylow, &self.subgroups[a])
            .elements()
            .iter()
            .copied()
            .filter(|&x| {
                let map: Vec<Elem> = image_elems
                    .iter()
                    .map(|&y| {
                        let z = g.conj(x, pre(y));
                        phi[source.binary_search(&z).expect("x normalises P")]
                    })
                    .collect();
                aut_s_image.contains(&map)
            })
            .collect();
        Subgroup::from_sorted(elems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::*;

    fn f(g: FiniteGroup, p: u32) -> FusionSystem {
        FusionSystem::new(g, p).unwrap()
    }

    fn normal_klein(fs: &FusionSystem) -> SubgroupId {
        (0..fs.subgroups().len())
            .find(|&i| fs.subgroup(i).order() == 4 && fs.group().is_normal_in(fs.subgroup(i), &fs.group().whole()))
            .unwrap()
    }

    #[test]
    fn hom_sets() {
        let fs = f(symmetric3(), 2);
        let s = fs.sylow_id();
        assert_eq!(fs.hom(s, s).len(), 1);
        assert!(fs.hom(s, s).contains(&fs.identity(s)));
        let fs = f(symmetric4(), 2);
        let v = normal_klein(&fs);
        assert_eq!(fs.hom(v, v).len(), 6);
        for a in 0..fs.subgroups().len() {
            for b in 0..fs.subgroups().len() {
                let t = fs.group().transporter(fs.subgroup(a), fs.subgroup(b));
                assert_eq!(fs.hom(a, b).len(), t.len() / fs.centralizer_in_g(a).order());
            }
        }
    }

    #[test]
    fn composition_closure_and_factorisation() {
        let fs = f(symmetric4(), 2);
        let n = fs.subgroups().len();
        for a in 0..n {
            for b in 0..n {
                for &phi in fs.hom(a, b) {
                    let im = fs.image(phi);
                    let iso = fs.restrict(phi, a, Some(im));
                    assert!(fs.iso(a, im).contains(&iso));
                    assert_eq!(fs.compose(fs.inclusion(im, b), iso), phi);
                    for c in 0..n {
                        for &psi in fs.hom(b, c) {
                            assert!(fs.hom(a, c).contains(&fs.compose(psi, phi)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conjugacy_classes() {
        let fs = f(symmetric4(), 2);
        let s = fs.sylow_id();
        assert_eq!(fs.conjugacy_classes(&[s]), [[s]]);
        let involutions: Vec<SubgroupId> = (0..fs.subgroups().len()).filter(|&i| fs.subgroup(i).order() == 2).collect();
        let classes = fs.conjugacy_classes(&involutions);
        // transpositions {2}, double transpositions {3}
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, [2, 3]);
        let mixed = fs.conjugacy_classes(&[involutions[0], s]);
        assert_eq!(mixed.len(), 2);
    }

    #[test]
    fn fully_centralised_and_normalised() {
        let fs = f(symmetric4(), 2);
        let s = fs.sylow_id();
        assert!(fs.is_fully_centralised(s) && fs.is_fully_normalised(s));
        let z = fs.center_id(s);
        let class = fs.class_of(z);
        assert_eq!(class.len(), 3);
        for q in class {
            let expect = q == z;
            assert_eq!(fs.is_fully_centralised(q), expect);
            assert_eq!(fs.centralizer_in_s(q).order(), if expect { 8 } else { 4 });
        }
        let fs = f(symmetric3(), 2);
        assert!(fs.is_fully_centralised(fs.sylow_id()));
    }

    #[test]
    fn n_phi_cases() {
        let fs = f(symmetric4(), 2);
        let n = fs.subgroups().len();
        for a in 0..n {
            assert_eq!(fs.n_phi(fs.identity(a)), fs.normalizer_in_s(a));
            for &phi in fs.hom(a, fs.sylow_id()) {
                let np = fs.n_phi(phi);
                let pc = fs.group().generate(
                    &fs.subgroup(a).elements().iter().chain(fs.centralizer_in_s(a).elements()).copied().collect::<Vec<_>>(),
                );
                assert!(pc.is_subgroup_of(&np));
            }
        }
        let s = fs.sylow_id();
        assert_eq!(fs.n_phi(fs.identity(s)), *fs.sylow());
    }

    #[test]
    fn centric_and_radical() {
        let fs = f(symmetric4(), 2);
        let centric: Vec<SubgroupId> = (0..fs.subgroups().len()).filter(|&i| fs.is_centric(i)).collect();
        let orders: Vec<usize> = centric.iter().map(|&i| fs.subgroup(i).order()).collect();
        assert_eq!(orders, [4, 4, 4, 8]);
        let v = normal_klein(&fs);
        assert!(fs.is_centric(v) && fs.is_radical(v));
        assert_eq!(fs.out_group(v).order(), 6);
        let c4 = centric
            .iter()
            .copied()
            .find(|&i| fs.subgroup(i).elements().iter().any(|&x| fs.group().element_order(x) == 4) && fs.subgroup(i).order() == 4)
            .unwrap();
        assert_eq!(fs.out_group(c4).order(), 2);
        assert!(!fs.is_radical(c4));
        assert!(fs.is_radical(fs.sylow_id()));
        let z = fs.center_id(fs.sylow_id());
        assert!(!fs.is_centric(z));
        let radical: Vec<SubgroupId> = centric.iter().copied().filter(|&i| fs.is_radical(i)).collect();
        assert_eq!(radical, [v, fs.sylow_id()]);
    }

    #[test]
    fn collections() {
        let fs = f(symmetric3(), 2);
        let c = fs.build_collection(CollectionKind::Centric, None).unwrap();
        assert_eq!(c.members, [fs.sylow_id()]);
        let fs = f(symmetric4(), 2);
        let c = fs.build_collection(CollectionKind::Centric, None).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(fs.conjugacy_classes(&c.members).len(), 4);
        let z = fs.center_id(fs.sylow_id());
        let custom = fs.build_collection(CollectionKind::Custom, Some(&[z])).unwrap();
        assert_eq!(custom.len(), 3);
        assert_eq!(
            fs.build_collection(CollectionKind::Centric, Some(&[z])),
            Err(Error::NotCentric(format!("{}", fs.subgroup(z))))
        );
        let e = fs.build_collection(CollectionKind::ElementaryAbelian, None).unwrap();
        assert_eq!(e.len(), 7);
        for id in &c.members {
            for q in fs.class_of(*id) {
                assert!(c.contains(q));
            }
        }
    }

    #[test]
    fn chain_automorphisms() {
        let fs = f(symmetric4(), 2);
        let v = normal_klein(&fs);
        assert_eq!(fs.aut_f_chain(&[v]).len(), 6);
        let z = fs.center_id(fs.sylow_id());
        let chain = fs.aut_f_chain(&[z, v]);
        assert_eq!(chain.len(), 2);
        // closed under composition and inverse
        for &a in &chain {
            assert!(chain.contains(&fs.inverse(a)));
            for &b in &chain {
                assert!(chain.contains(&fs.compose(a, b)));
            }
        }
        // Z(S) in S is characteristic under Aut_F(S)
        let s = fs.sylow_id();
        assert_eq!(fs.aut_f_chain(&[z, s]).len(), fs.hom(s, s).len());
    }

    #[test]
    fn saturation_of_group_fusion() {
        for (g, p) in [
            (cyclic(2), 2),
            (symmetric3(), 2),
            (dihedral8(), 2),
            (quaternion8(), 2),
            (alternating4(), 2),
            (alternating4(), 3),
            (symmetric4(), 2),
            (s3_times_c3(), 2),
            (symmetric3(), 5),
        ] {
            let report = f(g, p).to_table().check_saturation();
            assert!(report.ok(), "{report:?}");
        }
    }

    #[test]
    fn saturation_detects_deleted_automorphism() {
        let fs = f(symmetric4(), 2);
        let v = normal_klein(&fs);
        let mut table = fs.to_table();
        let inner: BTreeSet<Vec<Elem>> = table.aut_s(v);
        let idx = table.hom(v, v).iter().position(|m| !inner.contains(m)).unwrap();
        table.remove_morphism(v, v, idx);
        let report = table.check_saturation();
        assert!(!report.ok());
        assert!(report.axiom_i_witnesses.iter().any(|w| w.subgroup == v));
    }
}
