//! Diagrams of categories and the constructions over them: the Grothendieck
//! construction, comma categories, homotopy left Kan extensions and the
//! functors `F_!` and `F_#` relating them.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{FinCategory, FinFunctor, Mor, Obj};
use crate::error::{Error, Result};

/// A functor `U: K → Cat` with finite values.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    pub base: Arc<FinCategory>,
    pub values: Vec<Arc<FinCategory>>,
    pub maps: Vec<Arc<FinFunctor>>,
}

impl CatDiagram {
    /// Validates every value functor and functoriality over the base.
    pub fn new(base: Arc<FinCategory>, values: Vec<Arc<FinCategory>>, maps: Vec<Arc<FinFunctor>>) -> Result<CatDiagram> {
        let d = CatDiagram { base, values, maps };
        d.check()?;
        Ok(d)
    }

    pub fn new_unchecked(base: Arc<FinCategory>, values: Vec<Arc<FinCategory>>, maps: Vec<Arc<FinFunctor>>) -> CatDiagram {
        CatDiagram { base, values, maps }
    }

    pub fn check(&self) -> Result<()> {
        let k = &self.base;
        if self.values.len() != k.n_objects() || self.maps.len() != k.n_morphisms() {
            return Err(Error::InvalidDiagram("sizes do not match the base".into()));
        }
        for f in k.morphisms() {
            let (a, b) = (k.src(f) as usize, k.tgt(f) as usize);
            self.maps[f as usize]
                .check(&self.values[a], &self.values[b])
                .map_err(|e| Error::InvalidDiagram(format!("value at morphism {f}: {e}")))?;
        }
        for a in k.objects() {
            if *self.maps[k.identity(a) as usize] != FinFunctor::identity(&self.values[a as usize]) {
                return Err(Error::InvalidDiagram(format!("identity of {a} does not act trivially")));
            }
        }
        for f in k.morphisms() {
            for g in k.out_of(k.tgt(f)) {
                let composite = self.maps[f as usize].then(&self.maps[g as usize]);
                if *self.maps[k.compose(g, f) as usize] != composite {
                    return Err(Error::InvalidDiagram(format!("composite of {f} then {g} is not respected")));
                }
            }
        }
        Ok(())
    }

    /// The constant diagram on the one-morphism category `★`.
    pub fn point(base: Arc<FinCategory>) -> CatDiagram {
        let pt = Arc::new(FinCategory::point());
        let id = Arc::new(FinFunctor::identity(&pt));
        CatDiagram {
            values: vec![pt; base.n_objects()],
            maps: vec![id; base.n_morphisms()],
            base,
        }
    }

    pub fn value(&self, k: Obj) -> &FinCategory {
        &self.values[k as usize]
    }

    pub fn map(&self, f: Mor) -> &FinFunctor {
        &self.maps[f as usize]
    }

    /// `F^*U = U ∘ F` for `F: source → base`.
    pub fn pullback(&self, f: &FinFunctor, source: Arc<FinCategory>) -> CatDiagram {
        CatDiagram {
            values: f.obj.iter().map(|&o| self.values[o as usize].clone()).collect(),
            maps: f.mor.iter().map(|&m| self.maps[m as usize].clone()).collect(),
            base: source,
        }
    }
}

/// `Tr_K U`: objects `(k, x)` with `x ∈ U(k)`, morphisms `(κ, ξ)` with
/// `ξ: U(κ)(x₀) → x₁`.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub cat: FinCategory,
    pub objects: Vec<(Obj, Obj)>,
    pub morphisms: Vec<(Mor, Mor)>,
    offsets: Vec<Obj>,
}

impl Grothendieck {
    pub fn object(&self, k: Obj, x: Obj) -> Obj {
        self.offsets[k as usize] + x
    }

    /// The morphism `(κ, ξ)` between two given objects, if it exists.
    pub fn morphism(&self, a: Obj, b: Obj, kappa: Mor, xi: Mor) -> Option<Mor> {
        let r = self.cat.hom(a, b);
        self.morphisms[r.start as usize..r.end as usize]
            .binary_search(&(kappa, xi))
            .ok()
            .map(|i| r.start + i as Mor)
    }

    /// The projection `Tr_K U → K`.
    pub fn projection(&self) -> FinFunctor {
        FinFunctor::new_unchecked(
            self.objects.iter().map(|o| o.0).collect(),
            self.morphisms.iter().map(|m| m.0).collect(),
        )
    }

    /// The cone inclusion `U(k) → Tr_K U`, `x ↦ (k, x)`.
    pub fn fiber_inclusion(&self, u: &CatDiagram, k: Obj) -> FinFunctor {
        let value = u.value(k);
        let id = u.base.identity(k);
        let obj = value.objects().map(|x| self.object(k, x)).collect();
        let mor = value
            .morphisms()
            .map(|xi| {
                let (a, b) = (self.object(k, value.src(xi)), self.object(k, value.tgt(xi)));
                self.morphism(a, b, id, xi).expect("fiber morphism")
            })
            .collect();
        FinFunctor::new_unchecked(obj, mor)
    }
}

/// The Grothendieck construction of a diagram, composing by
/// `(κ₁, ξ₁) ∘ (κ₀, ξ₀) = (κ₁ ∘ κ₀, ξ₁ ∘ U(κ₁)(ξ₀))`.
pub fn grothendieck(u: &CatDiagram) -> Grothendieck {
    let k = &*u.base;
    let mut offsets = Vec::with_capacity(k.n_objects() + 1);
    let mut objects = Vec::new();
    for a in k.objects() {
        offsets.push(objects.len() as Obj);
        objects.extend(u.value(a).objects().map(|x| (a, x)));
    }
    offsets.push(objects.len() as Obj);
    let mut morphisms = Vec::new();
    for kappa in k.morphisms() {
        let (a, b) = (k.src(kappa), k.tgt(kappa));
        let ua = u.value(a);
        let ub = u.value(b);
        let push = u.map(kappa);
        for x0 in ua.objects() {
            let y = push.on_obj(x0);
            for x1 in ub.objects() {
                for xi in ub.hom(y, x1) {
                    morphisms.push((offsets[a as usize] + x0, offsets[b as usize] + x1, (kappa, xi)));
                }
            }
        }
    }
    let identities = objects.iter().map(|&(a, x)| (k.identity(a), u.value(a).identity(x))).collect();
    let (cat, payloads) = FinCategory::build(objects.len(), morphisms, identities, |&(k1, x1), &(k0, x0)| {
        let b = k.tgt(k1);
        (k.compose(k1, k0), u.value(b).compose(x1, u.map(k1).on_mor(x0)))
    })
    .expect("Grothendieck construction of a valid diagram");
    Grothendieck { cat, objects, morphisms: payloads, offsets }
}

/// A natural transformation `U ⇒ V` given by component functors induces
/// `Tr_K U → Tr_K V`, `(k, x) ↦ (k, η_k x)`, `(κ, ξ) ↦ (κ, η ξ)`.
pub fn grothendieck_map(tu: &Grothendieck, tv: &Grothendieck, u: &CatDiagram, v: &CatDiagram, eta: &[FinFunctor]) -> Result<FinFunctor> {
    let k = &*u.base;
    for kappa in k.morphisms() {
        let (a, b) = (k.src(kappa) as usize, k.tgt(kappa) as usize);
        if u.map(kappa).then(&eta[b]) != eta[a].then(v.map(kappa)) {
            return Err(Error::InvalidFunctor(format!("components are not natural at {kappa}")));
        }
    }
    let obj = tu.objects.iter().map(|&(a, x)| tv.object(a, eta[a as usize].on_obj(x))).collect();
    let mor = tu
        .cat
        .morphisms()
        .map(|m| {
            let (kappa, xi) = tu.morphisms[m as usize];
            let b = k.tgt(kappa);
            let (s, t) = (tu.objects[tu.cat.src(m) as usize], tu.objects[tu.cat.tgt(m) as usize]);
            let s = tv.object(s.0, eta[s.0 as usize].on_obj(s.1));
            let t = tv.object(t.0, eta[t.0 as usize].on_obj(t.1));
            tv.morphism(s, t, kappa, eta[b as usize].on_mor(xi)).expect("image morphism")
        })
        .collect();
    Ok(FinFunctor::new_unchecked(obj, mor))
}

/// `Tr_K(★) → K`, `(k, ★) ↦ k`.
pub fn point_grothendieck_iso(t: &Grothendieck) -> FinFunctor {
    t.projection()
}

/// `K → Tr_K(★)`, inverse to [`point_grothendieck_iso`].
pub fn point_grothendieck_inverse(t: &Grothendieck, k: &FinCategory) -> FinFunctor {
    let obj = k.objects().map(|a| t.object(a, 0)).collect();
    let mor = k
        .morphisms()
        .map(|f| t.morphism(t.object(k.src(f), 0), t.object(k.tgt(f), 0), f, 0).expect("point value"))
        .collect();
    FinFunctor::new_unchecked(obj, mor)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommaSide {
    /// `(d ↓ F)`: objects `(k, u: d → F k)`.
    Under,
    /// `(F ↓ d)`: objects `(k, u: F k → d)`.
    Over,
}

/// A comma category with its projection to the source of `F`.
#[derive(Clone, Debug)]
pub struct Comma {
    pub cat: FinCategory,
    pub objects: Vec<(Obj, Mor)>,
    pub morphisms: Vec<Mor>,
    pub projection: FinFunctor,
}

impl Comma {
    pub fn object(&self, k: Obj, u: Mor) -> Option<Obj> {
        self.objects.binary_search(&(k, u)).ok().map(|i| i as Obj)
    }

    pub fn morphism(&self, a: Obj, b: Obj, kappa: Mor) -> Option<Mor> {
        let r = self.cat.hom(a, b);
        self.morphisms[r.start as usize..r.end as usize]
            .binary_search(&kappa)
            .ok()
            .map(|i| r.start + i as Mor)
    }
}

/// The comma category of `F: K → L` at `d ∈ L`.
pub fn comma_category(k: &FinCategory, l: &FinCategory, f: &FinFunctor, d: Obj, side: CommaSide) -> Comma {
    let mut objects = Vec::new();
    for a in k.objects() {
        let fa = f.on_obj(a);
        let arrows = match side {
            CommaSide::Under => l.hom(d, fa),
            CommaSide::Over => l.hom(fa, d),
        };
        objects.extend(arrows.map(|u| (a, u)));
    }
    let mut morphisms = Vec::new();
    for (i, &(a, u)) in objects.iter().enumerate() {
        for (j, &(b, v)) in objects.iter().enumerate() {
            for kappa in k.hom(a, b) {
                let ok = match side {
                    CommaSide::Under => l.compose(f.on_mor(kappa), u) == v,
                    CommaSide::Over => l.compose(v, f.on_mor(kappa)) == u,
                };
                if ok {
                    morphisms.push((i as Obj, j as Obj, kappa));
                }
            }
        }
    }
    let ids = objects.iter().map(|&(a, _)| k.identity(a)).collect();
    let (cat, payload) =
        FinCategory::build(objects.len(), morphisms, ids, |&g, &h| k.compose(g, h)).expect("comma category");
    let projection = FinFunctor::new_unchecked(objects.iter().map(|o| o.0).collect(), payload.clone());
    Comma { cat, objects, morphisms: payload, projection }
}

/// `F_*U` for `F: K → L`: the value at `l` is `Tr((F ↓ l) → K → Cat)`;
/// `λ: l → l'` acts by `(k, u, x) ↦ (k, λ ∘ u, x)`.
#[derive(Clone, Debug)]
pub struct KanExtension {
    pub diagram: CatDiagram,
    pub commas: Vec<Comma>,
    pub values: Vec<Grothendieck>,
}

pub fn kan_extension_cat(k: &FinCategory, l: Arc<FinCategory>, f: &FinFunctor, u: &CatDiagram) -> KanExtension {
    let mut commas = Vec::with_capacity(l.n_objects());
    let mut values = Vec::with_capacity(l.n_objects());
    for d in l.objects() {
        let comma = comma_category(k, &l, f, d, CommaSide::Over);
        let restricted = u.pullback(&comma.projection, Arc::new(comma.cat.clone()));
        values.push(grothendieck(&restricted));
        commas.push(comma);
    }
    let mut maps = Vec::with_capacity(l.n_morphisms());
    for lam in l.morphisms() {
        let (d0, d1) = (l.src(lam) as usize, l.tgt(lam) as usize);
        let (c0, c1) = (&commas[d0], &commas[d1]);
        let (t0, t1) = (&values[d0], &values[d1]);
        let obj_c: Vec<Obj> = c0
            .objects
            .iter()
            .map(|&(a, v)| c1.object(a, l.compose(lam, v)).expect("pushed comma object"))
            .collect();
        let obj = t0.objects.iter().map(|&(c, x)| t1.object(obj_c[c as usize], x)).collect();
        let mor = t0
            .cat
            .morphisms()
            .map(|m| {
                let (cm, xi) = t0.morphisms[m as usize];
                let (s, t) = (c0.cat.src(cm), c0.cat.tgt(cm));
                let cm1 = c1.morphism(obj_c[s as usize], obj_c[t as usize], c0.morphisms[cm as usize]).expect("pushed comma morphism");
                let (ts, tt) = (t0.objects[t0.cat.src(m) as usize], t0.objects[t0.cat.tgt(m) as usize]);
                t1.morphism(t1.object(obj_c[ts.0 as usize], ts.1), t1.object(obj_c[tt.0 as usize], tt.1), cm1, xi)
                    .expect("pushed morphism")
            })
            .collect();
        maps.push(Arc::new(FinFunctor::new_unchecked(obj, mor)));
    }
    let diagram = CatDiagram::new_unchecked(l, values.iter().map(|g| Arc::new(g.cat.clone())).collect(), maps);
    KanExtension { diagram, commas, values }
}

/// `F_!: Tr_K(F^*U) → Tr_L(U)`, `(k, x) ↦ (F k, x)`, `(κ, ξ) ↦ (F κ, ξ)`.
pub fn f_shriek(f: &FinFunctor, pulled: &Grothendieck, target: &Grothendieck) -> FinFunctor {
    let obj = pulled.objects.iter().map(|&(a, x)| target.object(f.on_obj(a), x)).collect();
    let mor = pulled
        .cat
        .morphisms()
        .map(|m| {
            let (kappa, xi) = pulled.morphisms[m as usize];
            let s = pulled.objects[pulled.cat.src(m) as usize];
            let t = pulled.objects[pulled.cat.tgt(m) as usize];
            target
                .morphism(target.object(f.on_obj(s.0), s.1), target.object(f.on_obj(t.0), t.1), f.on_mor(kappa), xi)
                .expect("F_! morphism")
        })
        .collect();
    FinFunctor::new_unchecked(obj, mor)
}

/// `F_#: Tr_L(F_*U) → Tr_K(U)`, `(l, (k, u, x)) ↦ (k, x)` and
/// `(λ, (κ, ξ)) ↦ (κ, ξ)`.
pub fn f_sharp(kan: &KanExtension, outer: &Grothendieck, target: &Grothendieck) -> FinFunctor {
    let inner_obj = |l: Obj, y: Obj| -> (Obj, Obj) {
        let (c, x) = kan.values[l as usize].objects[y as usize];
        (kan.commas[l as usize].objects[c as usize].0, x)
    };
    let obj = outer
        .objects
        .iter()
        .map(|&(l, y)| {
            let (a, x) = inner_obj(l, y);
            target.object(a, x)
        })
        .collect();
    let mor = outer
        .cat
        .morphisms()
        .map(|m| {
            let eta = outer.morphisms[m as usize].1;
            let s = outer.objects[outer.cat.src(m) as usize];
            let t = outer.objects[outer.cat.tgt(m) as usize];
            let l1 = t.0;
            let (cm, xi) = kan.values[l1 as usize].morphisms[eta as usize];
            let kappa = kan.commas[l1 as usize].morphisms[cm as usize];
            let (sa, sx) = inner_obj(s.0, s.1);
            let (ta, tx) = inner_obj(t.0, t.1);
            target.morphism(target.object(sa, sx), target.object(ta, tx), kappa, xi).expect("F_# morphism")
        })
        .collect();
    FinFunctor::new_unchecked(obj, mor)
}

