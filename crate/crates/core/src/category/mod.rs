//! Finite categories and the constructions built on them.
//!
//! A [`FinCategory`] numbers its objects `0..n` and its morphisms `0..m`.
//! Morphisms are sorted by `(source, target)`, so every hom-set is a
//! contiguous id range. Composition is a materialised table, so a corrupted
//! entry is visible to the axiom checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

mod diagram;
mod nerve;
mod cofinal;

pub use cofinal::*;
pub use diagram::*;
pub use nerve::*;

pub type Obj = u32;
pub type Mor = u32;

/// A finite category with materialised composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    n_obj: usize,
    hom_offsets: Vec<u32>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    identity: Vec<Mor>,
    /// Row of `f` starts at `comp_rows[f]`; entry `g - out_start(tgt f)`
    /// holds `g ∘ f`.
    comp_rows: Vec<usize>,
    comp: Vec<Mor>,
}

impl FinCategory {
    /// Builds a category from payload-labelled morphisms.
    ///
    /// `compose(g, f)` must return the payload of `g ∘ f`. Payloads need only
    /// be distinct inside one hom-set. The returned vector gives the payload
    /// of every morphism id.
    pub fn build<P, C>(n_obj: usize, morphisms: Vec<(Obj, Obj, P)>, identities: Vec<P>, mut compose: C) -> Result<(FinCategory, Vec<P>)>
    where
        P: Ord + Clone,
        C: FnMut(&P, &P) -> P,
    {
        if identities.len() != n_obj {
            return Err(Error::InvalidCategory(format!("{} identities for {} objects", identities.len(), n_obj)));
        }
        let mut morphisms = morphisms;
        for (s, t, _) in &morphisms {
            if *s as usize >= n_obj || *t as usize >= n_obj {
                return Err(Error::InvalidCategory(format!("morphism {s} -> {t} out of range")));
            }
        }
        morphisms.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        if morphisms.windows(2).any(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1 && w[0].2 == w[1].2) {
            return Err(Error::InvalidCategory("duplicate morphism".into()));
        }
        let mut hom_offsets = vec![0u32; n_obj * n_obj + 1];
        for (s, t, _) in &morphisms {
            hom_offsets[*s as usize * n_obj + *t as usize + 1] += 1;
        }
        for i in 0..n_obj * n_obj {
            hom_offsets[i + 1] += hom_offsets[i];
        }
        let src: Vec<Obj> = morphisms.iter().map(|m| m.0).collect();
        let tgt: Vec<Obj> = morphisms.iter().map(|m| m.1).collect();
        let payloads: Vec<P> = morphisms.into_iter().map(|m| m.2).collect();
        let find = |s: usize, t: usize, p: &P| -> Option<Mor> {
            let lo = hom_offsets[s * n_obj + t] as usize;
            let hi = hom_offsets[s * n_obj + t + 1] as usize;
            payloads[lo..hi].binary_search(p).ok().map(|i| (lo + i) as Mor)
        };
        let mut identity = Vec::with_capacity(n_obj);
        for (a, p) in identities.iter().enumerate() {
            identity.push(find(a, a, p).ok_or_else(|| Error::InvalidCategory(format!("identity of {a} missing")))?);
        }
        let mut comp_rows = Vec::with_capacity(payloads.len() + 1);
        let mut comp = Vec::new();
        for f in 0..payloads.len() {
            comp_rows.push(comp.len());
            let (a, b) = (src[f] as usize, tgt[f] as usize);
            let out_lo = hom_offsets[b * n_obj] as usize;
            let out_hi = hom_offsets[b * n_obj + n_obj] as usize;
            for g in out_lo..out_hi {
                let c = tgt[g] as usize;
                let p = compose(&payloads[g], &payloads[f]);
                let h = find(a, c, &p).ok_or_else(|| {
                    Error::InvalidCategory(format!("composite of {f} then {g} is not a morphism {a} -> {c}"))
                })?;
                comp.push(h);
            }
        }
        comp_rows.push(comp.len());
        Ok((FinCategory { n_obj, hom_offsets, src, tgt, identity, comp_rows, comp }, payloads))
    }

    /// The empty category.
    pub fn empty() -> FinCategory {
        FinCategory::build::<(), _>(0, Vec::new(), Vec::new(), |_, _| ()).expect("empty").0
    }

    /// One object, one morphism.
    pub fn point() -> FinCategory {
        FinCategory::build(1, vec![(0, 0, ())], vec![()], |_, _| ()).expect("point").0
    }

    /// `n` objects and identities only.
    pub fn discrete(n: usize) -> FinCategory {
        let morphisms = (0..n as Obj).map(|a| (a, a, ())).collect();
        FinCategory::build(n, morphisms, vec![(); n], |_, _| ()).expect("discrete").0
    }

    /// The poset on `0..n` with `a → b` iff `leq(a, b)`; `leq` must be a
    /// partial order (or preorder).
    pub fn poset(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FinCategory> {
        let mut morphisms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    morphisms.push((a as Obj, b as Obj, ()));
                }
            }
        }
        FinCategory::build(n, morphisms, vec![(); n], |_, _| ())
            .map(|(c, _)| c)
            .map_err(|_| Error::InvalidCategory("relation is not reflexive and transitive".into()))
    }

    /// The linear poset `0 → 1 → … → k`.
    pub fn linear(k: usize) -> FinCategory {
        FinCategory::poset(k + 1, |a, b| a <= b).expect("total order")
    }

    /// `BG`: one object whose morphisms are the elements of `g`, with
    /// morphism id equal to the element index.
    pub fn one_object(g: &FiniteGroup) -> FinCategory {
        let morphisms = g.elements().map(|x| (0, 0, x)).collect();
        FinCategory::build(1, morphisms, vec![g.identity()], |&a, &b| g.mul(a, b)).expect("group").0
    }

    pub fn n_objects(&self) -> usize {
        self.n_obj
    }

    pub fn n_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> Range<Obj> {
        0..self.n_obj as Obj
    }

    pub fn morphisms(&self) -> Range<Mor> {
        0..self.src.len() as Mor
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.src[f as usize]
    }

    pub fn tgt(&self, f: Mor) -> Obj {
        self.tgt[f as usize]
    }

    pub fn hom(&self, a: Obj, b: Obj) -> Range<Mor> {
        let i = a as usize * self.n_obj + b as usize;
        self.hom_offsets[i]..self.hom_offsets[i + 1]
    }

    /// All morphisms with source `a`.
    pub fn out_of(&self, a: Obj) -> Range<Mor> {
        let i = a as usize * self.n_obj;
        self.hom_offsets[i]..self.hom_offsets[i + self.n_obj]
    }

    pub fn identity(&self, a: Obj) -> Mor {
        self.identity[a as usize]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identity[self.src(f) as usize] == f
    }

    /// `g ∘ f`. Panics unless `tgt f = src g`.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        let b = self.tgt(f);
        assert_eq!(b, self.src(g), "morphisms are not composable");
        let start = self.out_of(b).start;
        self.comp[self.comp_rows[f as usize] + (g - start) as usize]
    }

    /// Composite of a path given in order of traversal (first arrow first).
    pub fn compose_path(&self, path: &[Mor]) -> Mor {
        let mut it = path.iter();
        let mut acc = *it.next().expect("nonempty path");
        for &g in it {
            acc = self.compose(g, acc);
        }
        acc
    }

    /// Overwrites one composition entry. Only meant for producing corrupted
    /// inputs to the axiom checks.
    pub fn set_composite(&mut self, g: Mor, f: Mor, h: Mor) {
        let start = self.out_of(self.tgt(f)).start;
        let at = self.comp_rows[f as usize] + (g - start) as usize;
        self.comp[at] = h;
    }

    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a)
            .find(|&g| self.compose(g, f) == self.identity(a) && self.compose(f, g) == self.identity(b))
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse(f).is_some()
    }

    /// Every endomorphism is invertible.
    pub fn is_ei(&self) -> bool {
        self.objects().all(|a| self.hom(a, a).all(|f| self.is_iso(f)))
    }

    /// At most one morphism between any two objects and no two distinct
    /// isomorphic objects.
    pub fn is_poset(&self) -> bool {
        self.objects().all(|a| {
            self.objects()
                .all(|b| self.hom(a, b).len() <= 1 && (a == b || self.hom(a, b).is_empty() || self.hom(b, a).is_empty()))
        })
    }

    /// Checks identities, composition closure and associativity on every
    /// composable pair and triple. Returns the first failure.
    pub fn check_axioms(&self) -> Result<()> {
        for f in self.morphisms() {
            let (a, b) = (self.src(f), self.tgt(f));
            if self.compose(self.identity(b), f) != f || self.compose(f, self.identity(a)) != f {
                return Err(Error::InvalidCategory(format!("identity law fails at morphism {f}")));
            }
            for g in self.out_of(b) {
                let gf = self.compose(g, f);
                if self.src(gf) != a || self.tgt(gf) != self.tgt(g) {
                    return Err(Error::InvalidCategory(format!("composite of {f} then {g} has wrong ends")));
                }
                for h in self.out_of(self.tgt(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(Error::InvalidCategory(format!("associativity fails at ({f}, {g}, {h})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The opposite category, with `op[f]` the id of `f` in it.
    pub fn opposite(&self) -> (FinCategory, Vec<Mor>) {
        let morphisms = self.morphisms().map(|f| (self.tgt(f), self.src(f), f)).collect();
        let ids = self.identity.clone();
        let (cat, payload) =
            FinCategory::build(self.n_obj, morphisms, ids, |&g, &f| self.compose(f, g)).expect("opposite");
        let mut op = vec![0; payload.len()];
        for (new, &old) in payload.iter().enumerate() {
            op[old as usize] = new as Mor;
        }
        (cat, op)
    }

    /// The full subcategory on `objects` (in the given order), with its
    /// inclusion functor.
    pub fn full_subcategory(&self, objects: &[Obj]) -> (FinCategory, FinFunctor) {
        let pos: BTreeMap<Obj, Obj> = objects.iter().enumerate().map(|(i, &o)| (o, i as Obj)).collect();
        let mut morphisms = Vec::new();
        for (i, &a) in objects.iter().enumerate() {
            for (j, &b) in objects.iter().enumerate() {
                morphisms.extend(self.hom(a, b).map(|f| (i as Obj, j as Obj, f)));
            }
        }
        let ids = objects.iter().map(|&a| self.identity(a)).collect();
        let (cat, payload) = FinCategory::build(objects.len(), morphisms, ids, |&g, &f| self.compose(g, f)).expect("full subcategory");
        debug_assert!(payload.iter().all(|&f| pos.contains_key(&self.src(f))));
        let functor = FinFunctor::new_unchecked(objects.to_vec(), payload);
        (cat, functor)
    }

    /// Objects `x` with a morphism `x → y` and a morphism `y → x`.
    pub fn isomorphism_classes(&self) -> Vec<Vec<Obj>> {
        let mut class_of: Vec<Option<usize>> = vec![None; self.n_obj];
        let mut classes: Vec<Vec<Obj>> = Vec::new();
        for a in self.objects() {
            if class_of[a as usize].is_some() {
                continue;
            }
            let members: Vec<Obj> = self
                .objects()
                .filter(|&b| class_of[b as usize].is_none() && self.hom(a, b).clone().any(|f| self.is_iso(f)))
                .collect();
            for &m in &members {
                class_of[m as usize] = Some(classes.len());
            }
            classes.push(members);
        }
        classes
    }

    /// Whether `a` is initial: exactly one morphism to every object.
    pub fn is_initial(&self, a: Obj) -> bool {
        self.objects().all(|b| self.hom(a, b).len() == 1)
    }

    /// Whether `a` is terminal.
    pub fn is_terminal(&self, a: Obj) -> bool {
        self.objects().all(|b| self.hom(b, a).len() == 1)
    }

    /// Left and right cancellation for every composable pair.
    /// Returns the first morphism that fails to be mono or epi.
    pub fn cancellation_witness(&self) -> Option<Mor> {
        for f in self.morphisms() {
            let (a, b) = (self.src(f), self.tgt(f));
            // mono: f∘g = f∘h ⇒ g = h
            for x in self.objects() {
                let mut seen = BTreeMap::new();
                for g in self.hom(x, a) {
                    if seen.insert(self.compose(f, g), g).is_some() {
                        return Some(f);
                    }
                }
            }
            // epi: g∘f = h∘f ⇒ g = h
            for y in self.objects() {
                let mut seen = BTreeMap::new();
                for g in self.hom(b, y) {
                    if seen.insert(self.compose(g, f), g).is_some() {
                        return Some(f);
                    }
                }
            }
        }
        None
    }
}

/// A functor between finite categories, as object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    pub obj: Vec<Obj>,
    pub mor: Vec<Mor>,
}

impl FinFunctor {
    /// Validates the maps against `source` and `target`.
    pub fn new(source: &FinCategory, target: &FinCategory, obj: Vec<Obj>, mor: Vec<Mor>) -> Result<FinFunctor> {
        let f = FinFunctor { obj, mor };
        f.check(source, target)?;
        Ok(f)
    }

    pub fn new_unchecked(obj: Vec<Obj>, mor: Vec<Mor>) -> FinFunctor {
        FinFunctor { obj, mor }
    }

    pub fn identity(c: &FinCategory) -> FinFunctor {
        FinFunctor { obj: c.objects().collect(), mor: c.morphisms().collect() }
    }

    /// Constant functor at object `d` of `target`.
    pub fn constant(source: &FinCategory, target: &FinCategory, d: Obj) -> FinFunctor {
        FinFunctor { obj: vec![d; source.n_objects()], mor: vec![target.identity(d); source.n_morphisms()] }
    }

    pub fn on_obj(&self, a: Obj) -> Obj {
        self.obj[a as usize]
    }

    pub fn on_mor(&self, f: Mor) -> Mor {
        self.mor[f as usize]
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &FinFunctor) -> FinFunctor {
        FinFunctor {
            obj: self.obj.iter().map(|&a| after.on_obj(a)).collect(),
            mor: self.mor.iter().map(|&f| after.on_mor(f)).collect(),
        }
    }

    pub fn check(&self, source: &FinCategory, target: &FinCategory) -> Result<()> {
        let bad = |what: alloc::string::String| Err(Error::InvalidFunctor(what));
        if self.obj.len() != source.n_objects() || self.mor.len() != source.n_morphisms() {
            return bad("map sizes do not match the source".into());
        }
        if self.obj.iter().any(|&o| o as usize >= target.n_objects())
            || self.mor.iter().any(|&m| m as usize >= target.n_morphisms())
        {
            return bad("image out of range".into());
        }
        for f in source.morphisms() {
            let m = self.on_mor(f);
            if target.src(m) != self.on_obj(source.src(f)) || target.tgt(m) != self.on_obj(source.tgt(f)) {
                return bad(format!("morphism {f} is sent to a morphism with the wrong ends"));
            }
        }
        for a in source.objects() {
            if self.on_mor(source.identity(a)) != target.identity(self.on_obj(a)) {
                return bad(format!("identity of {a} is not preserved"));
            }
        }
        for f in source.morphisms() {
            for g in source.out_of(source.tgt(f)) {
                if self.on_mor(source.compose(g, f)) != target.compose(self.on_mor(g), self.on_mor(f)) {
                    return bad(format!("composite of {f} then {g} is not preserved"));
                }
            }
        }
        Ok(())
    }

    /// Checks that this functor is an isomorphism of categories.
    pub fn is_isomorphism(&self, source: &FinCategory, target: &FinCategory) -> bool {
        let bij = |v: &[u32], n: usize| {
            let mut seen = vec![false; n];
            v.len() == n && v.iter().all(|&x| !core::mem::replace(&mut seen[x as usize], true))
        };
        self.obj.len() == source.n_objects()
            && self.mor.len() == source.n_morphisms()
            && bij(&self.obj, target.n_objects())
            && bij(&self.mor, target.n_morphisms())
    }

    /// Fully faithful: bijective on every hom-set.
    pub fn is_fully_faithful(&self, source: &FinCategory, target: &FinCategory) -> bool {
        source.objects().all(|a| {
            source.objects().all(|b| {
                let image = target.hom(self.on_obj(a), self.on_obj(b));
                let mut hit: Vec<Mor> = source.hom(a, b).map(|f| self.on_mor(f)).collect();
                hit.sort_unstable();
                hit.dedup();
                hit.len() == source.hom(a, b).len() && hit.len() == image.len()
            })
        })
    }

    /// Every object of `target` is isomorphic to an object in the image.
    pub fn is_essentially_surjective(&self, target: &FinCategory) -> bool {
        target.objects().all(|t| {
            self.obj.iter().any(|&s| target.hom(s, t).clone().any(|f| target.is_iso(f)))
        })
    }
}

/// A natural transformation `F ⇒ G` as one component per source object.
/// Returns the first object or morphism where naturality fails.
pub fn check_natural(source: &FinCategory, target: &FinCategory, f: &FinFunctor, g: &FinFunctor, components: &[Mor]) -> Result<()> {
    for a in source.objects() {
        let c = components[a as usize];
        if target.src(c) != f.on_obj(a) || target.tgt(c) != g.on_obj(a) {
            return Err(Error::InvalidFunctor(format!("component at {a} has the wrong ends")));
        }
    }
    for m in source.morphisms() {
        let (a, b) = (source.src(m), source.tgt(m));
        let left = target.compose(components[b as usize], f.on_mor(m));
        let right = target.compose(g.on_mor(m), components[a as usize]);
        if left != right {
            return Err(Error::InvalidFunctor(format!("naturality fails at morphism {m}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::*;

    #[test]
    fn group_category() {
        let g = symmetric3();
        let bg = FinCategory::one_object(&g);
        assert_eq!(bg.n_morphisms(), 6);
        bg.check_axioms().unwrap();
        assert!(bg.is_ei());
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(bg.compose(a, b), g.mul(a, b));
            }
        }
        assert_eq!(bg.cancellation_witness(), None);
    }

    #[test]
    fn posets_and_opposites() {
        let c = FinCategory::linear(2);
        assert_eq!(c.n_morphisms(), 6);
        assert!(c.is_poset());
        assert!(c.is_initial(0) && c.is_terminal(2));
        let (op, map) = c.opposite();
        op.check_axioms().unwrap();
        for f in c.morphisms() {
            assert_eq!(op.src(map[f as usize]), c.tgt(f));
        }
        assert!(op.is_initial(2));
        assert!(FinCategory::poset(2, |a, b| a == b || (a, b) == (0, 1)).is_ok());
        // not transitive
        assert!(FinCategory::poset(3, |a, b| a == b || b == a + 1).is_err());
    }

    #[test]
    fn corrupted_table_is_detected() {
        let g = cyclic(3);
        let mut bg = FinCategory::one_object(&g);
        bg.set_composite(1, 1, 0);
        assert!(bg.check_axioms().is_err());
    }

    #[test]
    fn full_subcategories_and_functors() {
        let c = FinCategory::linear(3);
        let (sub, incl) = c.full_subcategory(&[0, 2]);
        assert_eq!(sub.n_morphisms(), 3);
        incl.check(&sub, &c).unwrap();
        assert!(incl.is_fully_faithful(&sub, &c));
        assert!(!incl.is_essentially_surjective(&c));
        let id = FinFunctor::identity(&c);
        assert!(id.is_isomorphism(&c, &c));
        assert_eq!(incl.then(&id), incl);
        let bad = FinFunctor::new_unchecked(vec![1, 0], vec![0, 1, 2]);
        assert!(bad.check(&sub, &c).is_err());
    }

    #[test]
    fn non_cancellable_arrow() {
        // objects 0, 1; f, g: 0 → 1 and e: 1 → 1 idempotent with e∘f = e∘g = f
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
        enum M {
            Id0,
            Id1,
            F,
            G,
            E,
        }
        let morphisms = vec![(0, 0, M::Id0), (1, 1, M::Id1), (0, 1, M::F), (0, 1, M::G), (1, 1, M::E)];
        let (c, _) = FinCategory::build(2, morphisms, vec![M::Id0, M::Id1], |g, f| match (g, f) {
            (M::Id0, x) | (M::Id1, x) => x.clone(),
            (x, M::Id0) | (x, M::Id1) => x.clone(),
            (M::E, M::F) | (M::E, M::G) => M::F,
            (M::E, M::E) => M::E,
            _ => unreachable!(),
        })
        .unwrap();
        c.check_axioms().unwrap();
        assert!(c.cancellation_witness().is_some());
        assert!(!c.is_ei());
    }

    #[test]
    fn naturality() {
        let c = FinCategory::linear(1);
        let id = FinFunctor::identity(&c);
        let to_one = FinFunctor::constant(&c, &c, 1);
        let up = [c.hom(0, 1).start, c.identity(1)];
        check_natural(&c, &c, &id, &to_one, &up).unwrap();
        let bad = [c.identity(0), c.identity(1)];
        assert!(check_natural(&c, &c, &id, &to_one, &bad).is_err());
    }
}
