//! The centric linking system of a finite group restricted to a collection.
//!
//! A morphism `P → Q` is a coset `g·C'_G(P)` with `g ∈ N_G(P, Q)`, where
//! `C'_G(P)` is the `p'`-part of `C_G(P)`. The category is materialised as a
//! [`FinCategory`] whose object `i` is the `i`-th member of the collection.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{FinCategory, Mor, Obj};
use crate::error::{Error, Result};
use crate::fusion::{Collection, FusionMorphism, FusionSystem, SubgroupId};
use crate::group::{Elem, Subgroup};

/// A morphism of the linking system. `rep` is the least element of its
/// `C'_G(P)`-coset; `source` and `target` are object indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkMorphism {
    pub source: Obj,
    pub target: Obj,
    pub rep: Elem,
}

#[derive(Debug)]
pub struct LinkingSystem {
    fusion: Arc<FusionSystem>,
    collection: Collection,
    cprime: Vec<Subgroup>,
    index: BTreeMap<SubgroupId, Obj>,
    cat: FinCategory,
    payload: Vec<LinkMorphism>,
}

/// Default bound on the number of composites examined by [`LinkingSystem::verify_axioms`].
pub const DEFAULT_AXIOM_BUDGET: usize = 20_000_000;

impl LinkingSystem {
    /// Builds `L_S(G)` on the members of `collection`, all of which must be
    /// F-centric.
    pub fn build(fusion: Arc<FusionSystem>, collection: &Collection) -> Result<LinkingSystem> {
        let g = fusion.group();
        let mut cprime = Vec::with_capacity(collection.len());
        for &id in &collection.members {
            if !fusion.is_centric(id) {
                return Err(Error::NotCentric(format!("{}", fusion.subgroup(id))));
            }
            cprime.push(g.p_prime_part(fusion.centralizer_in_g(id), fusion.p())?);
        }
        let objs = &collection.members;
        let n = objs.len();
        let mut morphisms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let t = g.transporter(fusion.subgroup(objs[a]), fusion.subgroup(objs[b]));
                let mut reps: Vec<Elem> = t.into_iter().map(|x| g.coset_rep(x, &cprime[a])).collect();
                reps.sort_unstable();
                reps.dedup();
                morphisms.extend(reps.into_iter().map(|rep| {
                    (a as Obj, b as Obj, LinkMorphism { source: a as Obj, target: b as Obj, rep })
                }));
            }
        }
        let identities = (0..n)
            .map(|a| LinkMorphism { source: a as Obj, target: a as Obj, rep: g.coset_rep(g.identity(), &cprime[a]) })
            .collect();
        let (cat, payload) = FinCategory::build(n, morphisms, identities, |psi: &LinkMorphism, phi: &LinkMorphism| {
            LinkMorphism {
                source: phi.source,
                target: psi.target,
                rep: g.coset_rep(g.mul(psi.rep, phi.rep), &cprime[phi.source as usize]),
            }
        })?;
        let index = objs.iter().enumerate().map(|(i, &id)| (id, i as Obj)).collect();
        Ok(LinkingSystem { fusion, collection: collection.clone(), cprime, index, cat, payload })
    }

    pub fn fusion(&self) -> &FusionSystem {
        &self.fusion
    }

    pub fn fusion_arc(&self) -> &Arc<FusionSystem> {
        &self.fusion
    }

    pub fn collection(&self) -> &Collection {
        &self.collection
    }

    pub fn category(&self) -> &FinCategory {
        &self.cat
    }

    /// Mutable access to the materialised category, for corrupting it in
    /// checker tests.
    pub fn category_mut(&mut self) -> &mut FinCategory {
        &mut self.cat
    }

    pub fn n_objects(&self) -> usize {
        self.collection.len()
    }

    /// The subgroup id behind object `a`.
    pub fn subgroup_id(&self, a: Obj) -> SubgroupId {
        self.collection.members[a as usize]
    }

    pub fn subgroup(&self, a: Obj) -> &Subgroup {
        self.fusion.subgroup(self.subgroup_id(a))
    }

    pub fn object_of(&self, id: SubgroupId) -> Option<Obj> {
        self.index.get(&id).copied()
    }

    /// `C'_G(P)` for object `a`.
    pub fn cprime(&self, a: Obj) -> &Subgroup {
        &self.cprime[a as usize]
    }

    pub fn morphism(&self, f: Mor) -> LinkMorphism {
        self.payload[f as usize]
    }

    /// The morphism `a → b` represented by `g`, if `g` conjugates `a` into `b`.
    pub fn find(&self, a: Obj, b: Obj, g: Elem) -> Option<Mor> {
        let key = LinkMorphism { source: a, target: b, rep: self.fusion.group().coset_rep(g, &self.cprime[a as usize]) };
        let r = self.cat.hom(a, b);
        self.payload[r.start as usize..r.end as usize]
            .binary_search(&key)
            .ok()
            .map(|i| r.start + i as Mor)
    }

    /// `δ_P(g)` for `g ∈ P`.
    pub fn delta(&self, a: Obj, g: Elem) -> Mor {
        debug_assert!(self.subgroup(a).contains(g));
        self.find(a, a, g).expect("elements of P normalise P")
    }

    /// `π(f)`.
    pub fn project(&self, f: Mor) -> FusionMorphism {
        let m = self.payload[f as usize];
        self.fusion
            .morphism(self.subgroup_id(m.source), self.subgroup_id(m.target), m.rep)
            .expect("rep conjugates source into target")
    }

    /// `|Aut_L(P)| = |N_G(P)| / |C'_G(P)|`, computed from the group.
    pub fn aut_order_formula(&self, a: Obj) -> usize {
        self.fusion.group().normalizer(self.subgroup(a)).order() / self.cprime[a as usize].order()
    }

    /// Checks axioms (A), (B) and (C) against the materialised composition
    /// table. Exhaustive within `budget` composites; beyond it either fails
    /// with [`Error::Budget`] or, with `sample = Some(seed)`, checks a random
    /// selection of `budget` instances of (C).
    pub fn verify_axioms_with(&self, budget: usize, sample: Option<u64>) -> Result<AxiomReport> {
        let g = self.fusion.group();
        let cat = &self.cat;
        let mut report = AxiomReport::default();

        // (A): Z(P) acts freely by precomposition and the orbits are the fibres of π.
        for a in cat.objects() {
            let z = self.fusion.center(self.subgroup_id(a));
            let deltas: Vec<Mor> = z.elements().iter().map(|&x| self.delta(a, x)).collect();
            for b in cat.objects() {
                let homs = cat.hom(a, b);
                let mut fibres: BTreeMap<FusionMorphism, Vec<Mor>> = BTreeMap::new();
                for f in homs.clone() {
                    fibres.entry(self.project(f)).or_default().push(f);
                }
                let fusion_count = self.fusion.hom(self.subgroup_id(a), self.subgroup_id(b)).len();
                if report.a.is_none() && fibres.len() != fusion_count {
                    report.a = Some(AxiomWitness {
                        objects: (a, b),
                        morphism: None,
                        element: None,
                        detail: format!("π hits {} of {} fusion morphisms", fibres.len(), fusion_count),
                    });
                }
                for f in homs {
                    if report.a.is_some() {
                        break;
                    }
                    let mut orbit: Vec<Mor> = deltas.iter().map(|&d| cat.compose(f, d)).collect();
                    orbit.sort_unstable();
                    orbit.dedup();
                    let mut fibre = fibres[&self.project(f)].clone();
                    fibre.sort_unstable();
                    if orbit.len() != z.order() {
                        report.a = Some(AxiomWitness {
                            objects: (a, b),
                            morphism: Some(f),
                            element: None,
                            detail: format!("Z(P)-orbit has {} elements, |Z(P)| = {}", orbit.len(), z.order()),
                        });
                    } else if orbit != fibre {
                        report.a = Some(AxiomWitness {
                            objects: (a, b),
                            morphism: Some(f),
                            element: None,
                            detail: "Z(P)-orbit differs from the fibre of π".into(),
                        });
                    }
                }
            }
        }

        // (B): π(δ_P(x)) = c_x.
        'b: for a in cat.objects() {
            let id = self.subgroup_id(a);
            for &x in self.subgroup(a).elements() {
                let d = self.delta(a, x);
                if self.project(d) != self.fusion.morphism(id, id, x).expect("inner") {
                    report.b = Some(AxiomWitness { objects: (a, a), morphism: Some(d), element: Some(x), detail: "π∘δ_P differs from c_x".into() });
                    break 'b;
                }
            }
        }

        // (C): f∘δ_P(x) = δ_Q(π(f)(x))∘f.
        let mut instances: Vec<(Mor, Elem)> = Vec::new();
        let total: usize = cat.morphisms().map(|f| self.subgroup(cat.src(f)).order()).sum();
        let check_c = |f: Mor, x: Elem| -> bool {
            let (a, b) = (cat.src(f), cat.tgt(f));
            let m = self.payload[f as usize];
            cat.compose(f, self.delta(a, x)) == cat.compose(self.delta(b, g.conj(m.rep, x)), f)
        };
        if total > budget {
            let Some(seed) = sample else {
                return Err(Error::Budget { stage: "linking axioms".into(), detail: format!("{total} instances of (C) exceed {budget}") });
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = cat.n_morphisms() as u32;
            for _ in 0..budget {
                let f = rng.gen_range(0..n);
                let elems = self.subgroup(cat.src(f)).elements();
                instances.push((f, elems[rng.gen_range(0..elems.len())]));
            }
            instances.sort_unstable();
            report.sampled = true;
        } else {
            for f in cat.morphisms() {
                instances.extend(self.subgroup(cat.src(f)).elements().iter().map(|&x| (f, x)));
            }
        }
        report.c_checked = instances.len();
        for (f, x) in instances {
            if !check_c(f, x) {
                report.c = Some(AxiomWitness {
                    objects: (cat.src(f), cat.tgt(f)),
                    morphism: Some(f),
                    element: Some(x),
                    detail: "f∘δ_P(x) differs from δ_Q(π(f)(x))∘f".into(),
                });
                break;
            }
        }

        // π is a functor.
        'pi: for f in cat.morphisms() {
            for h in cat.out_of(cat.tgt(f)) {
                if self.project(cat.compose(h, f)) != self.fusion.compose(self.project(h), self.project(f)) {
                    report.functor = Some(AxiomWitness {
                        objects: (cat.src(f), cat.tgt(h)),
                        morphism: Some(f),
                        element: None,
                        detail: format!("π does not preserve the composite with {h}"),
                    });
                    break 'pi;
                }
            }
        }
        for a in cat.objects() {
            if report.functor.is_none() && self.project(cat.identity(a)) != self.fusion.identity(self.subgroup_id(a)) {
                report.functor = Some(AxiomWitness { objects: (a, a), morphism: Some(cat.identity(a)), element: None, detail: "π(id) is not the identity".into() });
            }
        }
        Ok(report)
    }

    pub fn verify_axioms(&self) -> Result<AxiomReport> {
        self.verify_axioms_with(DEFAULT_AXIOM_BUDGET, None)
    }

    /// `ι_P^Q` for every pair `P ≤ Q` of objects: the coset of the identity.
    pub fn distinguished_inclusions(&self) -> BTreeMap<(Obj, Obj), Mor> {
        let e = self.fusion.group().identity();
        let mut out = BTreeMap::new();
        for a in self.cat.objects() {
            for b in self.cat.objects() {
                if self.subgroup(a).is_subgroup_of(self.subgroup(b)) {
                    out.insert((a, b), self.find(a, b, e).expect("e conjugates P into Q"));
                }
            }
        }
        out
    }

    /// Checks `ι_P^P = id`, `ι_Q^R ∘ ι_P^Q = ι_P^R` and that `π(ι_P^Q)` is
    /// the inclusion. Returns the first offending pair or triple.
    pub fn check_inclusions(&self) -> Option<String> {
        let iota = self.distinguished_inclusions();
        for (&(a, b), &f) in &iota {
            if a == b && f != self.cat.identity(a) {
                return Some(format!("ι at object {a} is not the identity"));
            }
            if self.project(f) != self.fusion.inclusion(self.subgroup_id(a), self.subgroup_id(b)) {
                return Some(format!("π(ι) from {a} to {b} is not the inclusion"));
            }
            for c in self.cat.objects() {
                if let Some(&h) = iota.get(&(b, c)) {
                    if self.cat.compose(h, f) != iota[&(a, c)] {
                        return Some(format!("ι does not compose along {a} ≤ {b} ≤ {c}"));
                    }
                }
            }
        }
        None
    }

    /// Splits `φ: P → Q` as `ι_{P'}^Q ∘ iso` with `P' = π(φ)(P)`. Returns
    /// `(iso, ι)`.
    pub fn factorize(&self, phi: Mor) -> Result<(Mor, Mor)> {
        let m = self.payload[phi as usize];
        let image = self.fusion.image(self.project(phi));
        let a1 = self.object_of(image).ok_or_else(|| {
            Error::InvalidCollection(format!("image {} of a morphism is not in the collection", self.fusion.subgroup(image)))
        })?;
        let iso = self.find(m.source, a1, m.rep).expect("rep maps P onto P'");
        let incl = self.find(a1, m.target, self.fusion.group().identity()).expect("P' ≤ Q");
        Ok((iso, incl))
    }

    /// For `g̃: Q → Q'` with `π(g̃)(P) ≤ P'`, the unique `f̃: P → P'` with
    /// `ι_{P'}^{Q'} ∘ f̃ = g̃ ∘ ι_P^Q`. The solution is located by scanning the
    /// hom-set and cross-checked against the coset of the same representative.
    pub fn restrict_lift(&self, g_tilde: Mor, p: Obj, p1: Obj) -> Result<Mor> {
        let cat = &self.cat;
        let (q, q1) = (cat.src(g_tilde), cat.tgt(g_tilde));
        let grp = self.fusion.group();
        let rep = self.payload[g_tilde as usize].rep;
        if !self.subgroup(p).is_subgroup_of(self.subgroup(q)) || !self.subgroup(p1).is_subgroup_of(self.subgroup(q1)) {
            return Err(Error::InvalidCollection("restriction needs P ≤ Q and P' ≤ Q'".into()));
        }
        if !grp.conjugate(rep, self.subgroup(p)).is_subgroup_of(self.subgroup(p1)) {
            return Err(Error::SquareDoesNotCommute);
        }
        let e = grp.identity();
        let iota = self.find(p, q, e).expect("P ≤ Q");
        let iota1 = self.find(p1, q1, e).expect("P' ≤ Q'");
        let goal = cat.compose(g_tilde, iota);
        let solutions: Vec<Mor> = cat.hom(p, p1).filter(|&f| cat.compose(iota1, f) == goal).collect();
        if solutions.len() != 1 {
            return Err(Error::InvalidCategory(format!("{} solutions to the restriction square", solutions.len())));
        }
        let by_rep = self.find(p, p1, rep).expect("rep conjugates P into P'");
        assert_eq!(solutions[0], by_rep, "scan and coset arithmetic disagree");
        Ok(by_rep)
    }

    /// Every morphism is a monomorphism and an epimorphism.
    pub fn mono_epi_check(&self) -> bool {
        self.cat.cancellation_witness().is_none()
    }
}

/// Convenience wrapper for [`LinkingSystem::build`].
pub fn build_linking_system(fusion: Arc<FusionSystem>, collection: &Collection) -> Result<LinkingSystem> {
    LinkingSystem::build(fusion, collection)
}

/// A failure of one linking-system axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomWitness {
    pub objects: (Obj, Obj),
    pub morphism: Option<Mor>,
    pub element: Option<Elem>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub a: Option<AxiomWitness>,
    pub b: Option<AxiomWitness>,
    pub c: Option<AxiomWitness>,
    /// Failure of `π` to be a functor.
    pub functor: Option<AxiomWitness>,
    pub c_checked: usize,
    pub sampled: bool,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.a.is_none() && self.b.is_none() && self.c.is_none() && self.functor.is_none()
    }
}
