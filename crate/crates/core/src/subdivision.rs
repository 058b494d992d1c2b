//! Chains of subgroups, their conjugacy classes and the subdivision of a
//! heighted EI category.
//!
//! An object of `s(A)` is a chain `a_0 → a_1 → … → a_k` of arrows of `A`
//! along which the height strictly increases. A morphism `(ε, φ): A → A'`
//! has `ε: [k'] → [k]` strictly increasing and `φ_i: A(ε(i)) → A'(i)`
//! isomorphisms commuting with the arrows, so morphisms go from a chain to
//! (a conjugate of) one of its subchains.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{FinCategory, FinFunctor, Mor, Obj};
use crate::error::{Error, Result};
use crate::fusion::{Collection, FusionSystem, SubgroupId};
use crate::group::{Elem, FiniteGroup, Validation};
use crate::linking::LinkingSystem;

/// A chain `P_0 < P_1 < … < P_k` of subgroups of `S`, by id.
pub type SimplexChain = Vec<SubgroupId>;

/// Default cap on objects plus morphisms of a materialised subdivision.
pub const DEFAULT_SUBDIVISION_BUDGET: usize = 2_000_000;

/// All strictly increasing chains of members of `collection`, shortest
/// first and lexicographic within a length.
pub fn enumerate_chains(fusion: &FusionSystem, collection: &Collection, max_len: Option<usize>) -> Vec<SimplexChain> {
    let members = &collection.members;
    let mut levels: Vec<Vec<SimplexChain>> = vec![members.iter().map(|&m| vec![m]).collect()];
    loop {
        if max_len.is_some_and(|m| levels.len() > m) {
            break;
        }
        let mut next = Vec::new();
        for ch in levels.last().expect("nonempty") {
            let top = fusion.subgroup(*ch.last().expect("nonempty chain"));
            for &m in members {
                let q = fusion.subgroup(m);
                if q.order() > top.order() && top.is_subgroup_of(q) {
                    let mut c = ch.clone();
                    c.push(m);
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

/// The chains `f(P)` for every F-isomorphism `f` out of `P_k`.
pub fn chain_orbit(fusion: &FusionSystem, chain: &[SubgroupId]) -> BTreeSet<SimplexChain> {
    let top = *chain.last().expect("nonempty chain");
    let g = fusion.group();
    let mut out = BTreeSet::new();
    for x in fusion.class_of(top) {
        for f in fusion.iso(top, x) {
            let image = chain
                .iter()
                .map(|&p| fusion.id_of(&g.conjugate(f.rep, fusion.subgroup(p))).expect("images lie in S"))
                .collect();
            out.insert(image);
        }
    }
    out
}

/// One conjugacy class of chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    /// The least member in id order.
    pub representative: SimplexChain,
    /// Indices into [`ChainPoset::chains`].
    pub members: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The chains of a collection, their conjugacy classes, and the poset
/// `s̄dC` on the classes with `[P] → [P']` iff `P'` is conjugate to a
/// subchain of `P`.
#[derive(Clone, Debug)]
pub struct ChainPoset {
    pub chains: Vec<SimplexChain>,
    pub class_of: Vec<usize>,
    pub classes: Vec<ConjClass>,
    pub poset: FinCategory,
}

impl ChainPoset {
    pub fn index_of(&self, chain: &[SubgroupId]) -> Option<usize> {
        self.chains.iter().position(|c| c == chain)
    }

    pub fn class_of_chain(&self, chain: &[SubgroupId]) -> Option<usize> {
        self.index_of(chain).map(|i| self.class_of[i])
    }
}

/// Nonempty subsequences of `chain`, each as the list of kept indices.
pub fn subchain_indices(len: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << len)).map(|mask| (0..len).filter(|&i| mask & (1 << i) != 0).collect()).collect()
}

pub fn conj_classes_of_chains(fusion: &FusionSystem, chains: Vec<SimplexChain>) -> ChainPoset {
    let index: BTreeMap<&SimplexChain, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut class_of = vec![usize::MAX; chains.len()];
    let mut classes = Vec::new();
    for i in 0..chains.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = chain_orbit(fusion, &chains[i])
            .iter()
            .map(|c| *index.get(c).expect("collections are closed under conjugation"))
            .collect();
        members.sort_unstable();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(ConjClass { representative: chains[members[0]].clone(), members });
    }
    let n = classes.len();
    let mut below = vec![vec![false; n]; n];
    for (c, class) in classes.iter().enumerate() {
        let rep = &class.representative;
        for sub in subchain_indices(rep.len()) {
            let s: SimplexChain = sub.iter().map(|&i| rep[i]).collect();
            below[c][class_of[index[&s]]] = true;
        }
    }
    let poset = FinCategory::poset(n, |a, b| below[a][b]).expect("subchain relation is a partial order");
    drop(index);
    ChainPoset { chains, class_of, classes, poset }
}

/// A finite EI category with a height function.
#[derive(Clone, Debug)]
pub struct HeightedEICategory {
    pub cat: FinCategory,
    pub height: Vec<usize>,
}

impl HeightedEICategory {
    /// Validates the EI property and that heights weakly increase along
    /// arrows, with equality exactly on isomorphisms.
    pub fn new(cat: FinCategory, height: Vec<usize>) -> Result<HeightedEICategory> {
        if height.len() != cat.n_objects() {
            return Err(Error::InvalidCategory("one height per object required".into()));
        }
        if !cat.is_ei() {
            return Err(Error::InvalidCategory("not an EI category".into()));
        }
        for f in cat.morphisms() {
            let (ha, hb) = (height[cat.src(f) as usize], height[cat.tgt(f) as usize]);
            if ha > hb || (ha == hb) != cat.is_iso(f) {
                return Err(Error::InvalidCategory(format!("height function fails at morphism {f}")));
            }
        }
        Ok(HeightedEICategory { cat, height })
    }
}

/// An object of `s(A)`: `vertices[i] = A(i)` and `arrows[i] = A(i → i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SdObject {
    pub vertices: Vec<Obj>,
    pub arrows: Vec<Mor>,
}

impl SdObject {
    /// The dimension `k`; the chain has `k + 1` vertices.
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A morphism `(ε, φ)` of `s(A)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SdMorphism {
    pub eps: Vec<u32>,
    pub phi: Vec<Mor>,
}

/// A materialised subdivision category.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub cat: FinCategory,
    pub objects: Vec<SdObject>,
    pub morphisms: Vec<SdMorphism>,
}

impl Subdivision {
    pub fn object_of(&self, o: &SdObject) -> Option<Obj> {
        self.objects.iter().position(|x| x == o).map(|i| i as Obj)
    }

    /// Finds the morphism with the given data.
    pub fn morphism(&self, a: Obj, b: Obj, m: &SdMorphism) -> Option<Mor> {
        let r = self.cat.hom(a, b);
        self.morphisms[r.start as usize..r.end as usize].binary_search(m).ok().map(|i| r.start + i as Mor)
    }
}

/// `A(i → j)` for `i ≤ j`.
pub(crate) fn chain_arrow(a: &FinCategory, o: &SdObject, i: usize, j: usize) -> Mor {
    if i == j {
        a.identity(o.vertices[i])
    } else {
        a.compose_path(&o.arrows[i..j])
    }
}

/// Strictly increasing maps `[m] → [n]`.
fn increasing_maps(m: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(cur: &mut Vec<u32>, m: usize, n: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map_or(0, |&x| x + 1);
        let remaining = (m + 1 - cur.len()) as u32;
        for x in start..=(n as u32 + 1 - remaining) {
            cur.push(x);
            go(cur, m, n, out);
            cur.pop();
        }
    }
    if m <= n {
        go(&mut cur, m, n, &mut out);
    }
    out
}

/// Natural isomorphisms `ε^*A → A'` for a fixed `ε`.
fn natural_isos(a: &FinCategory, isos: &[Vec<Mor>], n: usize, src: &SdObject, tgt: &SdObject, eps: &[u32]) -> Vec<Vec<Mor>> {
    struct Search<'a> {
        a: &'a FinCategory,
        isos: &'a [Vec<Mor>],
        n: usize,
        src: &'a SdObject,
        tgt: &'a SdObject,
        eps: &'a [u32],
    }
    impl Search<'_> {
        fn go(&self, cur: &mut Vec<Mor>, out: &mut Vec<Vec<Mor>>) {
            let i = cur.len();
            if i == self.eps.len() {
                out.push(cur.clone());
                return;
            }
            let x = self.src.vertices[self.eps[i] as usize];
            let y = self.tgt.vertices[i];
            for &phi in &self.isos[x as usize * self.n + y as usize] {
                if i > 0 {
                    let c = chain_arrow(self.a, self.src, self.eps[i - 1] as usize, self.eps[i] as usize);
                    if self.a.compose(self.tgt.arrows[i - 1], cur[i - 1]) != self.a.compose(phi, c) {
                        continue;
                    }
                }
                cur.push(phi);
                self.go(cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    Search { a, isos, n, src, tgt, eps }.go(&mut Vec::with_capacity(eps.len()), &mut out);
    out
}

/// Isomorphisms of `A` grouped by `(source, target)`.
fn iso_table(a: &FinCategory) -> Vec<Vec<Mor>> {
    let n = a.n_objects();
    let mut isos = vec![Vec::new(); n * n];
    for f in a.morphisms() {
        if a.is_iso(f) {
            isos[a.src(f) as usize * n + a.tgt(f) as usize].push(f);
        }
    }
    isos
}

/// Objects of `s(A)` whose arrows all satisfy `keep`.
pub fn subdivision_objects(a: &HeightedEICategory, keep: &dyn Fn(Mor) -> bool, budget: usize) -> Result<Vec<SdObject>> {
    let c = &a.cat;
    let mut level: Vec<SdObject> = c.objects().map(|x| SdObject { vertices: vec![x], arrows: Vec::new() }).collect();
    let mut all = level.clone();
    let mut dim = 0;
    while !level.is_empty() {
        dim += 1;
        let mut next = Vec::new();
        for o in &level {
            let end = *o.vertices.last().expect("nonempty");
            for f in c.out_of(end) {
                let t = c.tgt(f);
                if a.height[t as usize] > a.height[end as usize] && keep(f) {
                    let mut n = o.clone();
                    n.vertices.push(t);
                    n.arrows.push(f);
                    next.push(n);
                }
            }
        }
        if all.len() + next.len() > budget {
            return Err(Error::SimplexBudgetExceeded { dim, budget });
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

/// The full subcategory of `s(A)` on the given objects.
pub fn subdivision_on(a: &HeightedEICategory, objects: Vec<SdObject>, budget: usize) -> Result<Subdivision> {
    let c = &a.cat;
    let isos = iso_table(c);
    let n = c.n_objects();
    let mut morphisms = Vec::new();
    for (i, s) in objects.iter().enumerate() {
        for (j, t) in objects.iter().enumerate() {
            for eps in increasing_maps(t.len(), s.len()) {
                for phi in natural_isos(c, &isos, n, s, t, &eps) {
                    morphisms.push((i as Obj, j as Obj, SdMorphism { eps: eps.clone(), phi }));
                }
            }
            if objects.len() + morphisms.len() > budget {
                return Err(Error::SimplexBudgetExceeded { dim: 1, budget });
            }
        }
    }
    let identities = objects
        .iter()
        .map(|o| SdMorphism { eps: (0..=o.len() as u32).collect(), phi: o.vertices.iter().map(|&x| c.identity(x)).collect() })
        .collect();
    let (cat, payload) = FinCategory::build(objects.len(), morphisms, identities, |g: &SdMorphism, f: &SdMorphism| {
        // (ε', φ') ∘ (ε, φ) = (ε ∘ ε', i ↦ φ'_i ∘ φ_{ε'(i)})
        SdMorphism {
            eps: g.eps.iter().map(|&e| f.eps[e as usize]).collect(),
            phi: g.phi.iter().zip(&g.eps).map(|(&p, &e)| c.compose(p, f.phi[e as usize])).collect(),
        }
    })?;
    Ok(Subdivision { cat, objects, morphisms: payload })
}

/// `s(A)`, optionally restricted to chains whose arrows satisfy `filter`.
pub fn subdivision_category(a: &HeightedEICategory, filter: Option<&dyn Fn(Mor) -> bool>, budget: usize) -> Result<Subdivision> {
    let keep_all = |_: Mor| true;
    let keep: &dyn Fn(Mor) -> bool = filter.unwrap_or(&keep_all);
    let objects = subdivision_objects(a, keep, budget)?;
    subdivision_on(a, objects, budget)
}

/// Isomorphisms `x → y` in `s(A)` whose last component is an identity.
fn top_fixing_isos(c: &FinCategory, isos: &[Vec<Mor>], x: &SdObject, y: &SdObject) -> usize {
    if x.len() != y.len() || x.vertices.last() != y.vertices.last() {
        return 0;
    }
    let eps: Vec<u32> = (0..=x.len() as u32).collect();
    natural_isos(c, isos, c.n_objects(), x, y, &eps)
        .iter()
        .filter(|phi| c.is_identity(*phi.last().expect("nonempty")))
        .count()
}

/// `s_I(A)`, the full subcategory on chains of arrows in `I`.
///
/// Checks first that every arrow of `A` factors uniquely as an isomorphism
/// followed by an arrow of `I`. Afterwards checks that every object of
/// `s(A)` has exactly one normal form in `s_I(A)`: a chain with the same
/// last vertex reached by an isomorphism whose last component is the
/// identity. In particular the inclusion `s_I(A) ⊆ s(A)` is an equivalence.
pub fn skeletal_subdivision(a: &HeightedEICategory, in_i: &dyn Fn(Mor) -> bool, budget: usize) -> Result<Subdivision> {
    let c = &a.cat;
    let isos = iso_table(c);
    let n = c.n_objects();
    for f in c.morphisms() {
        let (x, y) = (c.src(f), c.tgt(f));
        let mut count = 0;
        for z in c.objects() {
            for &u in &isos[x as usize * n + z as usize] {
                count += c.hom(z, y).filter(|&i| in_i(i) && c.compose(i, u) == f).count();
            }
        }
        if count != 1 {
            return Err(Error::FactorizationHypothesisFails(format!("morphism {f} has {count} factorisations")));
        }
    }
    let full = subdivision_objects(a, &|_| true, budget)?;
    let skel: Vec<SdObject> = full.iter().filter(|o| o.arrows.iter().all(|&f| in_i(f))).cloned().collect();
    for o in &full {
        let forms: usize = skel.iter().map(|s| top_fixing_isos(c, &isos, o, s)).sum();
        if forms != 1 {
            return Err(Error::FactorizationHypothesisFails(format!(
                "a chain of length {} has {forms} normal forms",
                o.len()
            )));
        }
    }
    subdivision_on(a, skel, budget)
}

/// The poset `s̄(A)` of isomorphism classes of a subdivision, with the
/// projection `π: s(A) → s̄(A)`.
#[derive(Clone, Debug)]
pub struct Projection {
    pub poset: FinCategory,
    pub classes: Vec<Vec<Obj>>,
    pub class_of: Vec<Obj>,
    pub functor: FinFunctor,
}

pub fn projection_pi(sd: &FinCategory) -> Projection {
    let classes = sd.isomorphism_classes();
    let mut class_of = vec![0 as Obj; sd.n_objects()];
    for (i, cl) in classes.iter().enumerate() {
        for &o in cl {
            class_of[o as usize] = i as Obj;
        }
    }
    let poset = FinCategory::poset(classes.len(), |x, y| !sd.hom(classes[x][0], classes[y][0]).is_empty())
        .expect("classes of an EI subdivision form a poset");
    let mor = sd
        .morphisms()
        .map(|f| {
            let (x, y) = (class_of[sd.src(f) as usize], class_of[sd.tgt(f) as usize]);
            poset.hom(x, y).start
        })
        .collect();
    let functor = FinFunctor::new_unchecked(class_of.clone(), mor);
    Projection { poset, classes, class_of, functor }
}

/// `p: s(A) → A`, `A ↦ A(0)` and `(ε, φ) ↦ φ_0 ∘ A(0 → ε(0))`.
pub fn first_vertex_functor(sd: &Subdivision, a: &FinCategory) -> FinFunctor {
    let obj = sd.objects.iter().map(|o| o.vertices[0]).collect();
    let mor = sd
        .cat
        .morphisms()
        .map(|f| {
            let m = &sd.morphisms[f as usize];
            let src = &sd.objects[sd.cat.src(f) as usize];
            a.compose(m.phi[0], chain_arrow(a, src, 0, m.eps[0] as usize))
        })
        .collect();
    FinFunctor::new_unchecked(obj, mor)
}

/// `φ_*: Aut(A) → Aut(A')` for `ψ: A → A'`, the unique `β` with
/// `β ∘ ψ = ψ ∘ α`. Returned as pairs `(α, β)` in order of `α`.
pub fn phi_star(sd: &FinCategory, psi: Mor) -> Result<Vec<(Mor, Mor)>> {
    let (a, b) = (sd.src(psi), sd.tgt(psi));
    let mut out = Vec::new();
    for alpha in sd.hom(a, a) {
        let goal = sd.compose(psi, alpha);
        let betas: Vec<Mor> = sd.hom(b, b).filter(|&beta| sd.compose(beta, psi) == goal).collect();
        if betas.len() != 1 {
            return Err(Error::InvalidCategory(format!("{} solutions for the conjugated automorphism", betas.len())));
        }
        out.push((alpha, betas[0]));
    }
    for &(x, bx) in &out {
        for &(y, by) in &out {
            let xy = sd.compose(x, y);
            let image = out.iter().find(|p| p.0 == xy).expect("closed").1;
            if image != sd.compose(bx, by) {
                return Err(Error::InvalidCategory("conjugated automorphisms do not form a homomorphism".into()));
            }
        }
    }
    Ok(out)
}

/// `Aut_L(P)` of a chain: all ladders `(φ_0, …, φ_k)` with
/// `φ_i ∈ Aut_L(P_i)` commuting with the distinguished inclusions, and the
/// group of their first components.
#[derive(Clone, Debug)]
pub struct ChainAut {
    /// Chain as linking-system objects.
    pub chain: Vec<Obj>,
    /// Ladders sorted by first component.
    pub ladders: Vec<Vec<Mor>>,
    /// First components, sorted; an abstract group via [`ChainAut::group`].
    pub first: Vec<Mor>,
    pub group: FiniteGroup,
}

impl ChainAut {
    pub fn order(&self) -> usize {
        self.first.len()
    }

    /// `BAut_L(P)` as a one-object category; morphism `i` is `first[i]`.
    pub fn baut(&self) -> FinCategory {
        FinCategory::one_object(&self.group)
    }
}

/// Bound on the number of candidate ladders examined by [`aut_l_chain`].
pub const LADDER_BUDGET: usize = 50_000_000;

/// Computes `Aut_L(P)` by scanning every candidate ladder, and checks the
/// result against `(∩_i N_G(P_i)) / C'_G(P_0)`.
pub fn aut_l_chain(l: &LinkingSystem, chain: &[SubgroupId]) -> Result<ChainAut> {
    let cat = l.category();
    let objs: Vec<Obj> = chain
        .iter()
        .map(|&id| l.object_of(id).ok_or_else(|| Error::InvalidCollection(format!("{} is not an object", l.fusion().subgroup(id)))))
        .collect::<Result<_>>()?;
    let grp = l.fusion().group();
    let e = grp.identity();
    let iotas: Vec<Mor> = objs.windows(2).map(|w| l.find(w[0], w[1], e).expect("chain of inclusions")).collect();
    let auts: Vec<Vec<Mor>> = objs.iter().map(|&a| cat.hom(a, a).collect()).collect();
    let candidates: usize = auts.iter().map(|v| v.len()).product();
    if candidates > LADDER_BUDGET {
        return Err(Error::Budget { stage: "ladder scan".into(), detail: format!("{candidates} candidate ladders") });
    }
    let mut ladders = Vec::new();
    let mut idx = vec![0usize; objs.len()];
    'scan: loop {
        let tuple: Vec<Mor> = idx.iter().zip(&auts).map(|(&i, a)| a[i]).collect();
        if (0..iotas.len()).all(|i| cat.compose(iotas[i], tuple[i]) == cat.compose(tuple[i + 1], iotas[i])) {
            ladders.push(tuple);
        }
        for pos in (0..idx.len()).rev() {
            idx[pos] += 1;
            if idx[pos] < auts[pos].len() {
                continue 'scan;
            }
            idx[pos] = 0;
        }
        break;
    }
    ladders.sort();
    let first: Vec<Mor> = ladders.iter().map(|t| t[0]).collect();
    if first.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidCategory("a ladder is not determined by its first component".into()));
    }
    // group-theoretic route
    let mut by_formula: Vec<Mor> = grp
        .elements()
        .filter(|&g| chain.iter().all(|&p| grp.conjugate(g, l.fusion().subgroup(p)) == *l.fusion().subgroup(p)))
        .map(|g| l.find(objs[0], objs[0], g).expect("normalises P_0"))
        .collect();
    by_formula.sort_unstable();
    by_formula.dedup();
    assert_eq!(first, by_formula, "ladder scan and normaliser formula disagree on Aut_L of a chain");
    let pos = |f: Mor| first.binary_search(&f).expect("closed under composition") as Elem;
    let mut table = Vec::with_capacity(first.len() * first.len());
    for &x in &first {
        for &y in &first {
            table.push(pos(cat.compose(x, y)));
        }
    }
    let group = FiniteGroup::from_cayley_table(first.len(), table, Validation::Default)?;
    Ok(ChainAut { chain: objs, ladders, first, group })
}

/// The restriction `Aut_L(P) → Aut_L(P')` to a subchain.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    /// Position of each entry of `P'` inside `P`.
    pub positions: Vec<usize>,
    /// `(α, ρ(α))` on first components, in order of `α`.
    pub pairs: Vec<(Mor, Mor)>,
    pub injective: bool,
}

pub fn restriction_map(l: &LinkingSystem, chain: &[SubgroupId], sub: &[SubgroupId]) -> Result<RestrictionMap> {
    let mut positions = Vec::with_capacity(sub.len());
    let mut from = 0;
    for s in sub {
        let i = chain[from..].iter().position(|c| c == s).ok_or(Error::NotASubsimplex)? + from;
        positions.push(i);
        from = i + 1;
    }
    if sub.is_empty() {
        return Err(Error::NotASubsimplex);
    }
    let big = aut_l_chain(l, chain)?;
    let small = aut_l_chain(l, sub)?;
    let mut pairs = Vec::with_capacity(big.order());
    for ladder in &big.ladders {
        let restricted: Vec<Mor> = positions.iter().map(|&i| ladder[i]).collect();
        if small.ladders.binary_search(&restricted).is_err() {
            return Err(Error::InvalidCategory("restricted ladder is not a ladder".into()));
        }
        pairs.push((ladder[0], restricted[0]));
    }
    let identity = l.category().identity(small.chain[0]);
    let kernel = pairs.iter().filter(|p| p.1 == identity).count();
    Ok(RestrictionMap { positions, pairs, injective: kernel == 1 })
}

/// `L^C` with heights `|P|` as a heighted EI category.
pub fn linking_heighted(l: &LinkingSystem) -> Result<HeightedEICategory> {
    let heights = l.category().objects().map(|a| l.subgroup(a).order()).collect();
    HeightedEICategory::new(l.category().clone(), heights)
}

/// `s_I(L^C)` with `I` the distinguished inclusions. Objects correspond to
/// subgroup chains in the collection.
#[derive(Clone, Debug)]
pub struct LinkingSubdivision {
    pub sd: Subdivision,
    /// Subgroup chain of each object.
    pub chains: Vec<SimplexChain>,
}

impl LinkingSubdivision {
    pub fn object_of_chain(&self, chain: &[SubgroupId]) -> Option<Obj> {
        self.chains.iter().position(|c| c == chain).map(|i| i as Obj)
    }
}

pub fn linking_subdivision(l: &LinkingSystem, budget: usize) -> Result<LinkingSubdivision> {
    let a = linking_heighted(l)?;
    let e = l.fusion().group().identity();
    let cat = l.category();
    let is_iota = |f: Mor| l.find(cat.src(f), cat.tgt(f), e) == Some(f);
    let sd = skeletal_subdivision(&a, &is_iota, budget)?;
    let chains = sd.objects.iter().map(|o| o.vertices.iter().map(|&v| l.subgroup_id(v)).collect()).collect();
    Ok(LinkingSubdivision { sd, chains })
}

/// Checks that `s̄(s_I(L^C))` and `s̄dC` are isomorphic posets via
/// `[P] ↦ [P]`. Returns the class bijection (from projection classes to
/// chain-poset classes).
pub fn compare_chain_posets(ls: &LinkingSubdivision, proj: &Projection, cp: &ChainPoset) -> Option<Vec<usize>> {
    if proj.classes.len() != cp.classes.len() {
        return None;
    }
    let mut map = vec![usize::MAX; proj.classes.len()];
    for (i, cl) in proj.classes.iter().enumerate() {
        let targets: BTreeSet<usize> = cl.iter().map(|&o| cp.class_of_chain(&ls.chains[o as usize])).collect::<Option<_>>()?;
        if targets.len() != 1 {
            return None;
        }
        map[i] = *targets.iter().next().expect("one");
    }
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != map.len() {
        return None;
    }
    for x in 0..map.len() {
        for y in 0..map.len() {
            let here = !proj.poset.hom(x as Obj, y as Obj).is_empty();
            let there = !cp.poset.hom(map[x] as Obj, map[y] as Obj).is_empty();
            if here != there {
                return None;
            }
        }
    }
    // class sizes must agree too
    for (i, cl) in proj.classes.iter().enumerate() {
        if cl.len() != cp.classes[map[i]].size() {
            return None;
        }
    }
    Some(map)
}
