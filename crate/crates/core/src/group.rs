//! Finite groups as multiplication tables on element indices.
//!
//! Every group in this crate is a [`FiniteGroup`]: elements are the indices
//! `0..order` and multiplication is a full table. Subgroups are sorted index
//! lists, so subgroup equality is list equality and iteration order is fixed.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Index of a group element.
pub type Elem = u32;

/// Default cap on group orders accepted from input.
pub const DEFAULT_ORDER_CAP: usize = 200;
/// Default cap on the number of subgroups enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 2000;
/// Tables up to this order are checked for associativity on every triple.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 64;

/// How thoroughly a Cayley table is validated for associativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    /// Full triple loop up to [`FULL_ASSOCIATIVITY_LIMIT`], `10·n²` sampled triples above.
    Default,
    /// Full triple loop regardless of order.
    Strict,
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    identity: Elem,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table, `table[a * n + b] = a·b`.
    pub fn from_cayley_table(n: usize, table: Vec<Elem>, validation: Validation) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCayleyTable {
                row: 0,
                col: 0,
                reason: "a group has at least one element".into(),
            });
        }
        if table.len() != n * n {
            return Err(Error::InvalidCayleyTable {
                row: table.len() / n,
                col: table.len() % n,
                reason: format!("expected {} entries, found {}", n * n, table.len()),
            });
        }
        for (i, &v) in table.iter().enumerate() {
            if v as usize >= n {
                return Err(Error::InvalidCayleyTable {
                    row: i / n,
                    col: i % n,
                    reason: format!("entry {v} is out of range 0..{n}"),
                });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e * n + g] as usize == g && table[g * n + e] as usize == g))
            .ok_or_else(|| Error::InvalidCayleyTable {
                row: 0,
                col: 0,
                reason: "no two-sided identity".into(),
            })? as Elem;
        let mut inv = vec![0; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g * n + h] == identity && table[h * n + g] == identity)
                .ok_or_else(|| Error::InvalidCayleyTable {
                    row: g,
                    col: 0,
                    reason: format!("element {g} has no two-sided inverse"),
                })?;
            inv[g] = h as Elem;
        }
        let group = FiniteGroup { order: n, mul: table, inv, identity, labels: None };
        group.check_associativity(validation)?;
        Ok(group)
    }

    fn check_associativity(&self, validation: Validation) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            let (a_, b_, c_) = (a as Elem, b as Elem, c as Elem);
            if self.mul(self.mul(a_, b_), c_) != self.mul(a_, self.mul(b_, c_)) {
                return Err(Error::NotAssociative { a, b, c });
            }
            Ok(())
        };
        if validation == Validation::Strict || n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ n as u64);
            for _ in 0..10 * n * n {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    /// The group generated by permutations of `0..points`, enumerated by
    /// breadth-first closure from the identity. Element `0` is the identity
    /// and new elements are discovered as `x·g` for generators `g` in the
    /// given order. Permutations compose as functions: `(a·b)(i) = a(b(i))`.
    pub fn from_permutations(points: usize, gens: &[Vec<u32>], cap: usize) -> Result<Self> {
        for (index, g) in gens.iter().enumerate() {
            let mut seen = vec![false; points];
            let ok = g.len() == points
                && g.iter().all(|&x| {
                    let x = x as usize;
                    x < points && !core::mem::replace(&mut seen[x], true)
                });
            if !ok {
                return Err(Error::InvalidPermutation { index, points });
            }
        }
        let identity: Vec<u32> = (0..points as u32).collect();
        let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { b.iter().map(|&i| a[i as usize]).collect() };
        let mut index: BTreeMap<Vec<u32>, Elem> = BTreeMap::new();
        let mut elems: Vec<Vec<u32>> = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(&elems[x], g);
                if !index.contains_key(&y) {
                    if elems.len() >= cap {
                        return Err(Error::ClosureExceedsCap { cap });
                    }
                    index.insert(y.clone(), elems.len() as Elem);
                    queue.push_back(elems.len());
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                mul.push(index[&compose(a, b)]);
            }
        }
        let mut inv = vec![0; n];
        for (i, a) in elems.iter().enumerate() {
            let mut ai = vec![0u32; points];
            for (p, &q) in a.iter().enumerate() {
                ai[q as usize] = p as u32;
            }
            inv[i] = index[&ai];
        }
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        Ok(FiniteGroup { order: n, mul, inv, identity: 0, labels: Some(labels) })
    }

    /// The direct product `self × other`, with `(a, b)` at index `a·|other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let mut mul = Vec::with_capacity(n * m * n * m);
        for a in 0..n * m {
            for b in 0..n * m {
                let x = self.mul((a / m) as Elem, (b / m) as Elem);
                let y = other.mul((a % m) as Elem, (b % m) as Elem);
                mul.push(x * m as Elem + y);
            }
        }
        let inv = (0..n * m)
            .map(|a| self.inv((a / m) as Elem) * m as Elem + other.inv((a % m) as Elem))
            .collect();
        let labels = match (&self.labels, &other.labels) {
            (Some(l), Some(r)) => Some(
                (0..n * m).map(|a| format!("({},{})", l[a / m], r[a % m])).collect(),
            ),
            _ => None,
        };
        FiniteGroup {
            order: n * m,
            mul,
            inv,
            identity: self.identity * m as Elem + other.identity,
            labels,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    /// The row-major multiplication table.
    pub fn table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn label(&self, g: Elem) -> String {
        match &self.labels {
            Some(l) => l[g as usize].clone(),
            None => format!("{g}"),
        }
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: self.elements().collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity] }
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        self.closure_from(&[self.identity], gens)
    }

    fn closure_from(&self, seed: &[Elem], gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; self.order];
        let mut queue: VecDeque<Elem> = VecDeque::new();
        for &s in seed.iter().chain(core::iter::once(&self.identity)) {
            if !core::mem::replace(&mut seen[s as usize], true) {
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !core::mem::replace(&mut seen[y as usize], true) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(&seen)
    }

    /// Checks whether `elements` is a subgroup (contains the identity and is
    /// closed under multiplication; finiteness gives inverses).
    pub fn subgroup_from_elements(&self, elements: &[Elem]) -> Result<Subgroup> {
        let mut mask = vec![false; self.order];
        for &e in elements {
            mask[e as usize] = true;
        }
        if !mask[self.identity as usize] {
            return Err(Error::NotASubgroup);
        }
        for &a in elements {
            for &b in elements {
                if !mask[self.mul(a, b) as usize] {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup::from_mask(&mask))
    }

    /// Every subgroup of `self`, sorted by `(order, element list)`.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        self.subgroups_of(&self.whole(), cap)
    }

    /// Every subgroup of `h`, sorted by `(order, element list)`.
    ///
    /// Grows subgroups one generator at a time from the trivial group; every
    /// subgroup is reached because it is generated by finitely many elements.
    pub fn subgroups_of(&self, h: &Subgroup, cap: usize) -> Result<Vec<Subgroup>> {
        let mut found: BTreeMap<Subgroup, Vec<Elem>> = BTreeMap::new();
        found.insert(self.trivial(), Vec::new());
        let mut queue = VecDeque::from([self.trivial()]);
        while let Some(k) = queue.pop_front() {
            let gens = found[&k].clone();
            for &g in h.elements() {
                if k.contains(g) {
                    continue;
                }
                let mut new_gens = gens.clone();
                new_gens.push(g);
                let j = self.closure_from(k.elements(), &new_gens);
                if !found.contains_key(&j) {
                    if found.len() >= cap {
                        return Err(Error::SubgroupCountExceedsCap { cap });
                    }
                    found.insert(j.clone(), new_gens);
                    queue.push_back(j);
                }
            }
        }
        Ok(found.into_keys().collect())
    }

    /// The Sylow `p`-subgroup that is minimal in `(order, element list)`
    /// order; trivial when `p ∤ |G|`.
    pub fn sylow(&self, p: u32, cap: usize) -> Result<Subgroup> {
        let target = p_part(self.order, p);
        if target == 1 {
            return Ok(self.trivial());
        }
        Ok(self
            .all_subgroups(cap)?
            .into_iter()
            .find(|s| s.order() == target)
            .expect("Sylow subgroups exist"))
    }

    /// `N_G(P, Q) = { g : g P g⁻¹ ≤ Q }`, sorted.
    pub fn transporter(&self, p: &Subgroup, q: &Subgroup) -> Vec<Elem> {
        if p.order() > q.order() {
            return Vec::new();
        }
        let qmask = q.mask(self.order);
        self.elements()
            .filter(|&g| p.elements().iter().all(|&x| qmask[self.conj(g, x) as usize]))
            .collect()
    }

    /// `N_H(P, Q)` for `g` ranging over a subgroup `h`.
    pub fn transporter_in(&self, h: &Subgroup, p: &Subgroup, q: &Subgroup) -> Vec<Elem> {
        let qmask = q.mask(self.order);
        h.elements()
            .iter()
            .copied()
            .filter(|&g| p.elements().iter().all(|&x| qmask[self.conj(g, x) as usize]))
            .collect()
    }

    /// `C_G(P)`.
    pub fn centralizer(&self, p: &Subgroup) -> Subgroup {
        self.centralizer_in(&self.whole(), p)
    }

    /// `C_H(P)`.
    pub fn centralizer_in(&self, h: &Subgroup, p: &Subgroup) -> Subgroup {
        let elems: Vec<Elem> = h
            .elements()
            .iter()
            .copied()
            .filter(|&g| p.elements().iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Subgroup { elements: elems }
    }

    /// `N_G(P)`.
    pub fn normalizer(&self, p: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.whole(), p)
    }

    /// `N_H(P)`.
    pub fn normalizer_in(&self, h: &Subgroup, p: &Subgroup) -> Subgroup {
        Subgroup { elements: self.transporter_in(h, p, p) }
    }

    /// `Z(P)`, the centraliser of `P` computed inside `P`.
    pub fn center(&self, p: &Subgroup) -> Subgroup {
        self.centralizer_in(p, p)
    }

    /// `g P g⁻¹`.
    pub fn conjugate(&self, g: Elem, p: &Subgroup) -> Subgroup {
        let mut e: Vec<Elem> = p.elements().iter().map(|&x| self.conj(g, x)).collect();
        e.sort_unstable();
        Subgroup { elements: e }
    }

    /// The elements of `c` of order prime to `p`, which must form a subgroup.
    pub fn p_prime_part(&self, c: &Subgroup, p: u32) -> Result<Subgroup> {
        let elems: Vec<Elem> = c
            .elements()
            .iter()
            .copied()
            .filter(|&g| !self.element_order(g).is_multiple_of(p as usize))
            .collect();
        self.subgroup_from_elements(&elems)
    }

    /// `Ω_p(H)`, generated by the elements of order `p`.
    pub fn omega_p(&self, h: &Subgroup, p: u32) -> Subgroup {
        let gens: Vec<Elem> = h
            .elements()
            .iter()
            .copied()
            .filter(|&g| self.element_order(g) == p as usize)
            .collect();
        self.generate(&gens)
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        h.elements()
            .iter()
            .all(|&a| h.elements().iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_elementary_abelian(&self, h: &Subgroup, p: u32) -> bool {
        self.is_abelian(h)
            && h.elements()
                .iter()
                .all(|&g| g == self.identity || self.element_order(g) == p as usize)
    }

    /// Elementary abelian subgroups of `s`, in `(order, element list)` order.
    pub fn elementary_abelian_subgroups(
        &self,
        s: &Subgroup,
        p: u32,
        include_trivial: bool,
        cap: usize,
    ) -> Result<Vec<Subgroup>> {
        Ok(self
            .subgroups_of(s, cap)?
            .into_iter()
            .filter(|h| (include_trivial || h.order() > 1) && self.is_elementary_abelian(h, p))
            .collect())
    }

    pub fn is_normal_in(&self, n: &Subgroup, h: &Subgroup) -> bool {
        let mask = n.mask(self.order);
        h.elements()
            .iter()
            .all(|&g| n.elements().iter().all(|&x| mask[self.conj(g, x) as usize]))
    }

    /// The quotient `H / N` for `N` normal in `H`, together with the map
    /// sending each element of `H` to its coset index. Cosets are numbered by
    /// their minimal element.
    pub fn quotient(&self, h: &Subgroup, n: &Subgroup) -> (FiniteGroup, BTreeMap<Elem, Elem>) {
        let mut coset_of: BTreeMap<Elem, Elem> = BTreeMap::new();
        let mut reps: Vec<Elem> = Vec::new();
        for &g in h.elements() {
            if coset_of.contains_key(&g) {
                continue;
            }
            let idx = reps.len() as Elem;
            reps.push(g);
            for &x in n.elements() {
                coset_of.insert(self.mul(g, x), idx);
            }
        }
        let m = reps.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                mul.push(coset_of[&self.mul(a, b)]);
            }
        }
        let inv = reps.iter().map(|&a| coset_of[&self.inv(a)]).collect();
        let identity = coset_of[&self.identity];
        let labels = reps.iter().map(|&r| format!("[{}]", self.label(r))).collect();
        (
            FiniteGroup { order: m, mul, inv, identity, labels: Some(labels) },
            coset_of,
        )
    }

    /// The subgroup `h` re-presented as a group in its own right; the second
    /// component maps new indices back to elements of `self`.
    pub fn restrict_to(&self, h: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let elems = h.elements().to_vec();
        let pos = |x: Elem| elems.binary_search(&x).expect("closed") as Elem;
        let m = elems.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &elems {
            for &b in &elems {
                mul.push(pos(self.mul(a, b)));
            }
        }
        let inv = elems.iter().map(|&a| pos(self.inv(a))).collect();
        let labels = self.labels.as_ref().map(|l| elems.iter().map(|&a| l[a as usize].clone()).collect());
        (
            FiniteGroup { order: m, mul, inv, identity: pos(self.identity), labels },
            elems,
        )
    }

    /// Left coset representative `min(g·H)`.
    pub fn coset_rep(&self, g: Elem, h: &Subgroup) -> Elem {
        h.elements().iter().map(|&x| self.mul(g, x)).min().expect("subgroups are nonempty")
    }

    /// The largest normal `p`-subgroup `O_p(G)`.
    pub fn o_p(&self, p: u32, cap: usize) -> Result<Subgroup> {
        let whole = self.whole();
        Ok(self
            .all_subgroups(cap)?
            .into_iter()
            .filter(|h| is_p_power(h.order(), p) && self.is_normal_in(h, &whole))
            .max_by_key(|h| h.order())
            .expect("the trivial subgroup is a normal p-subgroup"))
    }

    /// A short fingerprint used in reports: order and whether abelian.
    pub fn fingerprint(&self) -> String {
        format!("order {} {}", self.order, if self.is_abelian(&self.whole()) { "abelian" } else { "nonabelian" })
    }
}

/// A subgroup as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Subgroup {
    elements: Vec<Elem>,
}

impl Subgroup {
    fn from_mask(mask: &[bool]) -> Self {
        Subgroup {
            elements: mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as Elem).collect(),
        }
    }

    /// Wraps an already sorted, deduplicated element list. The caller is
    /// responsible for closure.
    pub fn from_sorted(elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&g| other.contains(g)).collect() }
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &g in &self.elements {
            m[g as usize] = true;
        }
        m
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// A left coset `rep·H` with canonical (minimal) representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElementCoset {
    pub subgroup: Subgroup,
    pub rep: Elem,
}

impl GroupElementCoset {
    pub fn new(group: &FiniteGroup, g: Elem, subgroup: Subgroup) -> Self {
        let rep = group.coset_rep(g, &subgroup);
        GroupElementCoset { subgroup, rep }
    }

    pub fn contains(&self, group: &FiniteGroup, g: Elem) -> bool {
        group.coset_rep(g, &self.subgroup) == self.rep
    }
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: u32) -> usize {
    let p = p as usize;
    let mut r = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

pub fn is_p_power(n: usize, p: u32) -> bool {
    p_part(n, p) == n
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Cycle notation of a permutation in image form, `()` for the identity.
pub fn cycle_notation(perm: &[u32]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&format!("{x}"));
            first = false;
            x = perm[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Standard small groups used by the test corpus and the self-test.
pub mod library {
    use super::*;

    fn perm_group(points: usize, gens: &[&[u32]]) -> FiniteGroup {
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| g.to_vec()).collect();
        FiniteGroup::from_permutations(points, &gens, DEFAULT_ORDER_CAP).expect("library group")
    }

    pub fn trivial() -> FiniteGroup {
        perm_group(1, &[])
    }

    /// Cyclic group of order `n` acting on `n` points.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let g: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        perm_group(n, &[&g])
    }

    pub fn symmetric3() -> FiniteGroup {
        perm_group(3, &[&[1, 0, 2], &[1, 2, 0]])
    }

    pub fn symmetric4() -> FiniteGroup {
        perm_group(4, &[&[1, 0, 2, 3], &[1, 2, 3, 0]])
    }

    pub fn alternating4() -> FiniteGroup {
        perm_group(4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]])
    }

    /// Dihedral group of order 8 as symmetries of a square.
    pub fn dihedral8() -> FiniteGroup {
        perm_group(4, &[&[1, 2, 3, 0], &[0, 3, 2, 1]])
    }

    /// Quaternion group of order 8 from its multiplication rules; element
    /// `2u + s` is `(-1)^s · u` for `u` in `1, i, j, k`.
    pub fn quaternion8() -> FiniteGroup {
        // unit products as (sign, unit)
        const UNITS: [[(u32, u32); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let mut table = Vec::with_capacity(64);
        for a in 0..8u32 {
            for b in 0..8u32 {
                let (s, u) = UNITS[(a / 2) as usize][(b / 2) as usize];
                table.push(2 * u + (s + a % 2 + b % 2) % 2);
            }
        }
        let mut g = FiniteGroup::from_cayley_table(8, table, Validation::Strict).expect("Q8 table");
        let names = ["1", "i", "j", "k"];
        g.labels = Some(
            (0..8).map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2])).collect(),
        );
        g
    }

    pub fn s3_times_c3() -> FiniteGroup {
        symmetric3().direct_product(&cyclic(3))
    }

    /// Finds elements by their cycle-notation label.
    pub fn by_label(g: &FiniteGroup, label: &str) -> Elem {
        g.elements().find(|&x| g.label(x) == label).expect("label present")
    }
}
