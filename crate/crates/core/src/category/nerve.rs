//! Truncated simplicial sets: nerves of finite categories and the diagonal
//! of the simplicial replacement of a diagram.
//!
//! Only nondegenerate simplices are stored. A face that is degenerate is
//! recorded as [`DEGENERATE`], which is all the normalised chain complex
//! needs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{CatDiagram, FinCategory, FinFunctor, Mor};
use crate::error::{Error, Result};

/// Marker for a degenerate face or image.
pub const DEGENERATE: u32 = u32::MAX;

/// Default cap on the number of nondegenerate simplices of one complex.
pub const DEFAULT_SIMPLEX_BUDGET: usize = 5_000_000;

/// Nondegenerate simplices in dimensions `0..=cap` with their faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSSet {
    cap: usize,
    counts: Vec<usize>,
    /// `faces[n]` holds `n + 1` entries per `n`-simplex; `faces[0]` is empty.
    faces: Vec<Vec<u32>>,
}

impl TruncatedSSet {
    pub fn new(cap: usize, counts: Vec<usize>, faces: Vec<Vec<u32>>) -> Result<TruncatedSSet> {
        let bad = || Error::InvalidCategory("malformed truncated simplicial set".into());
        if counts.len() != cap + 1 || faces.len() != cap + 1 {
            return Err(bad());
        }
        for n in 1..=cap {
            if faces[n].len() != counts[n] * (n + 1) {
                return Err(bad());
            }
            if faces[n].iter().any(|&f| f != DEGENERATE && f as usize >= counts[n - 1]) {
                return Err(bad());
            }
        }
        Ok(TruncatedSSet { cap, counts, faces })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `d_i` of simplex `s` in dimension `n ≥ 1`, or `None` if degenerate.
    pub fn face(&self, n: usize, s: usize, i: usize) -> Option<u32> {
        let f = self.faces[n][s * (n + 1) + i];
        (f != DEGENERATE).then_some(f)
    }

    pub fn faces_of(&self, n: usize, s: usize) -> &[u32] {
        &self.faces[n][s * (n + 1)..(s + 1) * (n + 1)]
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` wherever both first faces
    /// are nondegenerate. Returns the first violation `(n, s, i, j)`.
    pub fn simplicial_identity_violation(&self) -> Option<(usize, usize, usize, usize)> {
        for n in 2..=self.cap {
            for s in 0..self.counts[n] {
                for j in 1..=n {
                    for i in 0..j {
                        let (Some(dj), Some(di)) = (self.face(n, s, j), self.face(n, s, i)) else { continue };
                        let left = self.faces[n - 1][dj as usize * n + i];
                        let right = self.faces[n - 1][di as usize * n + j - 1];
                        if left != right {
                            return Some((n, s, i, j));
                        }
                    }
                }
            }
        }
        None
    }
}

/// A map of truncated simplicial sets, dimensionwise, with degenerate
/// images recorded as [`DEGENERATE`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub images: Vec<Vec<u32>>,
}

impl SimplicialMap {
    /// `self` followed by `after`.
    pub fn then(&self, after: &SimplicialMap) -> SimplicialMap {
        let images = self
            .images
            .iter()
            .zip(&after.images)
            .map(|(a, b)| a.iter().map(|&x| if x == DEGENERATE { DEGENERATE } else { b[x as usize] }).collect())
            .collect();
        SimplicialMap { images }
    }

    /// Checks that faces commute with the map where the image is
    /// nondegenerate.
    pub fn commutes_with_faces(&self, source: &TruncatedSSet, target: &TruncatedSSet) -> bool {
        for n in 1..=source.cap().min(target.cap()) {
            for s in 0..source.count(n) {
                let t = self.images[n][s];
                if t == DEGENERATE {
                    continue;
                }
                for i in 0..=n {
                    let via_source = match source.face(n, s, i) {
                        Some(f) => self.images[n - 1][f as usize],
                        None => DEGENERATE,
                    };
                    let via_target = target.faces_of(n, t as usize)[i];
                    if via_source != via_target {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The nerve of a category truncated at dimension `cap`, with the chain of
/// morphisms behind every simplex.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: TruncatedSSet,
    /// `chains[n]` holds `n` morphism ids per `n`-simplex, in lexicographic order.
    pub chains: Vec<Vec<Mor>>,
}

impl Nerve {
    pub fn chain(&self, n: usize, s: usize) -> &[Mor] {
        &self.chains[n][s * n..(s + 1) * n]
    }

    /// Index of a nondegenerate chain of length `n ≥ 1`.
    pub fn index_of(&self, chain: &[Mor]) -> Option<usize> {
        let n = chain.len();
        let data = &self.chains[n];
        let (mut lo, mut hi) = (0, data.len() / n.max(1));
        while lo < hi {
            let mid = (lo + hi) / 2;
            match data[mid * n..(mid + 1) * n].cmp(chain) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Nondegenerate `n`-simplices are chains of `n` composable non-identity
/// morphisms. `d_0` drops the first arrow, `d_n` the last, and `d_i`
/// composes arrows `i` and `i + 1`; a composite that is an identity gives a
/// degenerate face.
pub fn nerve_truncated(c: &FinCategory, cap: usize, budget: usize) -> Result<Nerve> {
    let mut counts = vec![c.n_objects()];
    let mut chains: Vec<Vec<Mor>> = vec![Vec::new()];
    let mut faces: Vec<Vec<u32>> = vec![Vec::new()];
    let mut total = c.n_objects();
    if total > budget {
        return Err(Error::SimplexBudgetExceeded { dim: 0, budget });
    }
    let non_identity: Vec<Vec<Mor>> =
        c.objects().map(|a| c.out_of(a).filter(|&f| !c.is_identity(f)).collect()).collect();
    for n in 1..=cap {
        let mut next = Vec::new();
        if n == 1 {
            for a in c.objects() {
                next.extend(non_identity[a as usize].iter().copied());
            }
        } else {
            let prev = &chains[n - 1];
            for s in 0..counts[n - 1] {
                let ch = &prev[s * (n - 1)..(s + 1) * (n - 1)];
                let end = c.tgt(*ch.last().expect("n >= 2"));
                for &f in &non_identity[end as usize] {
                    next.extend_from_slice(ch);
                    next.push(f);
                }
            }
        }
        let count = next.len() / n;
        total += count;
        if total > budget {
            return Err(Error::SimplexBudgetExceeded { dim: n, budget });
        }
        counts.push(count);
        chains.push(next);
        faces.push(Vec::new());
    }
    let mut nerve = Nerve { sset: TruncatedSSet { cap, counts, faces: Vec::new() }, chains };
    for n in 1..=cap {
        let mut fs = Vec::with_capacity(nerve.sset.counts[n] * (n + 1));
        let mut buf = Vec::with_capacity(n);
        for s in 0..nerve.sset.counts[n] {
            let ch = nerve.chain(n, s);
            if n == 1 {
                fs.push(c.tgt(ch[0]));
                fs.push(c.src(ch[0]));
                continue;
            }
            for i in 0..=n {
                buf.clear();
                let mut degenerate = false;
                if i == 0 {
                    buf.extend_from_slice(&ch[1..]);
                } else if i == n {
                    buf.extend_from_slice(&ch[..n - 1]);
                } else {
                    buf.extend_from_slice(&ch[..i - 1]);
                    let composite = c.compose(ch[i], ch[i - 1]);
                    degenerate = c.is_identity(composite);
                    buf.push(composite);
                    buf.extend_from_slice(&ch[i + 1..]);
                }
                if degenerate {
                    fs.push(DEGENERATE);
                } else {
                    fs.push(nerve.index_of(&buf).expect("face of a chain is a chain") as u32);
                }
            }
        }
        faces[n] = fs;
    }
    nerve.sset.faces = faces;
    Ok(nerve)
}

/// The map of nerves induced by a functor.
pub fn nerve_map(f: &FinFunctor, source: &Nerve, target: &Nerve, target_cat: &FinCategory) -> SimplicialMap {
    let cap = source.sset.cap().min(target.sset.cap());
    let mut images = vec![f.obj.clone()];
    let mut buf = Vec::new();
    for n in 1..=cap {
        let mut im = Vec::with_capacity(source.sset.count(n));
        for s in 0..source.sset.count(n) {
            buf.clear();
            buf.extend(source.chain(n, s).iter().map(|&m| f.on_mor(m)));
            if buf.iter().any(|&m| target_cat.is_identity(m)) {
                im.push(DEGENERATE);
            } else {
                im.push(target.index_of(&buf).expect("image chain") as u32);
            }
        }
        images.push(im);
    }
    SimplicialMap { images }
}

/// The diagonal of the simplicial replacement of `U: K → Cat`.
///
/// An `n`-simplex is a chain `σ` of `n` arrows of `K` starting at `k₀`
/// together with a chain `τ` of `n` arrows of `U(k₀)`, identities allowed in
/// both. The pair is degenerate exactly when some position holds an
/// identity in both chains. `d_0` pushes `τ` forward along `U(σ₁)`.
pub fn simplicial_replacement_diagonal(u: &CatDiagram, cap: usize, budget: usize) -> Result<TruncatedSSet> {
    let k = &*u.base;
    // key: [k0, σ.., x0, τ..]
    let mut levels: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut index: Vec<BTreeMap<Vec<u32>, u32>> = Vec::new();
    let mut total = 0usize;
    let mut all_k_chains: Vec<Vec<Mor>> = k.objects().map(|a| vec![a]).collect();
    for n in 0..=cap {
        if n > 0 {
            let mut next = Vec::new();
            for ch in &all_k_chains {
                let end = match ch.len() {
                    1 => ch[0],
                    _ => k.tgt(*ch.last().unwrap()),
                };
                for f in k.out_of(end) {
                    let mut c2 = ch.clone();
                    c2.push(f);
                    next.push(c2);
                }
            }
            all_k_chains = next;
        }
        let mut simplices = Vec::new();
        for sigma in &all_k_chains {
            let k0 = sigma[0];
            let value = u.value(k0);
            let mut taus: Vec<Vec<u32>> = value.objects().map(|x| vec![x]).collect();
            for _ in 0..n {
                let mut next = Vec::new();
                for t in &taus {
                    let end = if t.len() == 1 { t[0] } else { value.tgt(*t.last().unwrap()) };
                    for g in value.out_of(end) {
                        let mut t2 = t.clone();
                        t2.push(g);
                        next.push(t2);
                    }
                }
                taus = next;
            }
            for tau in taus {
                let degenerate =
                    (1..=n).any(|i| k.is_identity(sigma[i]) && value.is_identity(tau[i]));
                if !degenerate {
                    let mut key = sigma.clone();
                    key.extend_from_slice(&tau);
                    simplices.push(key);
                }
            }
        }
        total += simplices.len();
        if total > budget {
            return Err(Error::SimplexBudgetExceeded { dim: n, budget });
        }
        simplices.sort();
        index.push(simplices.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect());
        levels.push(simplices);
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=cap {
        let mut fs = Vec::with_capacity(levels[n].len() * (n + 1));
        for key in &levels[n] {
            let (sigma, tau) = key.split_at(n + 1);
            for i in 0..=n {
                let face = diagonal_face(u, sigma, tau, i);
                fs.push(match face {
                    Some(f) => *index[n - 1].get(&f).expect("face is stored"),
                    None => DEGENERATE,
                });
            }
        }
        faces.push(fs);
    }
    TruncatedSSet::new(cap, levels.iter().map(|l| l.len()).collect(), faces)
}

/// The `i`-th diagonal face of `(σ, τ)`, each given as `[start, arrows..]`,
/// or `None` when it is degenerate.
fn diagonal_face(u: &CatDiagram, sigma: &[u32], tau: &[u32], i: usize) -> Option<Vec<u32>> {
    let k = &*u.base;
    let n = sigma.len() - 1;
    let value = u.value(sigma[0]);
    let (new_sigma, new_tau, new_value): (Vec<u32>, Vec<u32>, &FinCategory) = if i == 0 {
        let s1 = sigma[1];
        let push = u.map(s1);
        let mut s = vec![k.tgt(s1)];
        s.extend_from_slice(&sigma[2..]);
        let x1 = if n == 1 { value.tgt(tau[1]) } else { value.src(tau[2]) };
        let mut t = vec![push.on_obj(x1)];
        t.extend(tau[2..].iter().map(|&g| push.on_mor(g)));
        (s, t, u.value(k.tgt(s1)))
    } else if i == n {
        let mut s = sigma[..n].to_vec();
        let mut t = tau[..n].to_vec();
        if n == 1 {
            s = vec![sigma[0]];
            t = vec![tau[0]];
        }
        (s, t, value)
    } else {
        let mut s = sigma[..i].to_vec();
        s.push(k.compose(sigma[i + 1], sigma[i]));
        s.extend_from_slice(&sigma[i + 2..]);
        let mut t = tau[..i].to_vec();
        t.push(value.compose(tau[i + 1], tau[i]));
        t.extend_from_slice(&tau[i + 2..]);
        (s, t, value)
    };
    let m = new_sigma.len() - 1;
    if (1..=m).any(|j| k.is_identity(new_sigma[j]) && new_value.is_identity(new_tau[j])) {
        return None;
    }
    let mut key = new_sigma;
    key.extend(new_tau);
    Some(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::*;
    use alloc::sync::Arc;

    #[test]
    fn small_nerves() {
        let pt = nerve_truncated(&FinCategory::point(), 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(pt.sset.counts(), [1, 0, 0, 0]);
        let bc2 = nerve_truncated(&FinCategory::one_object(&cyclic(2)), 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(bc2.sset.counts(), [1, 1, 1, 1]);
        // d_1 of (g, g) composes to the identity
        assert_eq!(bc2.sset.face(2, 0, 1), None);
        assert_eq!(bc2.sset.face(2, 0, 0), Some(0));
        let arrow = nerve_truncated(&FinCategory::linear(1), 2, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(arrow.sset.counts(), [2, 1, 0]);
        assert_eq!(arrow.sset.faces_of(1, 0), [1, 0]);
    }

    #[test]
    fn nerve_simplicial_identities() {
        for c in [
            FinCategory::one_object(&symmetric3()),
            FinCategory::linear(3),
            FinCategory::one_object(&cyclic(4)),
        ] {
            let n = nerve_truncated(&c, 4, DEFAULT_SIMPLEX_BUDGET).unwrap();
            assert_eq!(n.sset.simplicial_identity_violation(), None);
        }
        // B S_3 has 5^n chains of non-identity arrows
        let n = nerve_truncated(&FinCategory::one_object(&symmetric3()), 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(n.sset.counts(), [1, 5, 25, 125]);
    }

    #[test]
    fn budget_is_enforced() {
        let c = FinCategory::one_object(&symmetric3());
        assert_eq!(
            nerve_truncated(&c, 3, 40).unwrap_err(),
            Error::SimplexBudgetExceeded { dim: 3, budget: 40 }
        );
    }

    #[test]
    fn functor_induces_simplicial_map() {
        let g = symmetric3();
        let bg = FinCategory::one_object(&g);
        let (sub, incl) = bg.full_subcategory(&[0]);
        let a = nerve_truncated(&sub, 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        let b = nerve_truncated(&bg, 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        let m = nerve_map(&incl, &a, &b, &bg);
        assert!(m.commutes_with_faces(&a.sset, &b.sset));
        // collapse BS_3 → point
        let pt = FinCategory::point();
        let collapse = FinFunctor::constant(&bg, &pt, 0);
        let np = nerve_truncated(&pt, 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        let cm = nerve_map(&collapse, &b, &np, &pt);
        assert!(cm.images[1].iter().all(|&x| x == DEGENERATE));
        assert!(cm.commutes_with_faces(&b.sset, &np.sset));
    }

    #[test]
    fn diagonal_of_point_diagram_is_nerve() {
        let k = Arc::new(FinCategory::linear(2));
        let u = CatDiagram::point(k.clone());
        let diag = simplicial_replacement_diagonal(&u, 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        let nerve = nerve_truncated(&k, 3, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(diag.counts(), nerve.sset.counts());
        assert_eq!(diag.simplicial_identity_violation(), None);
    }
}
