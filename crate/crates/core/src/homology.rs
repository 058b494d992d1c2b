//! Normalised chain complexes over `F_p`, Betti numbers and induced maps.
//!
//! Ranks are computed by sparse column reduction with first-nonzero
//! pivoting. The rank of an induced map on homology is read off the mapping
//! cone, which keeps everything sparse; for small complexes the homology
//! matrices are also computed directly from lifted cycles.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::category::{SimplicialMap, TruncatedSSet};
use crate::error::{Error, Result};

/// Largest dimension handled by the dense routines.
pub const DENSE_LIMIT: usize = 2000;

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// A sparse matrix over `F_p` stored by columns; each column is sorted by
/// row with nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(u32, u32)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Builds a column from unsorted entries, summing duplicates mod `p`.
    pub fn column(mut entries: Vec<(u32, u32)>, p: u32) -> Vec<(u32, u32)> {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == r => last.1 = (last.1 + v) % p,
                _ => out.push((r, v % p)),
            }
        }
        out.retain(|e| e.1 != 0);
        out
    }

    /// `self · v` for a sparse vector `v`.
    pub fn apply(&self, v: &[(u32, u32)], p: u32) -> Vec<(u32, u32)> {
        let mut acc = Vec::new();
        for &(c, x) in v {
            for &(r, y) in &self.cols[c as usize] {
                acc.push((r, ((x as u64 * y as u64) % p as u64) as u32));
            }
        }
        SparseMatrix::column(acc, p)
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix, p: u32) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c, p)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zero(self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                d.data[i as usize][j] = v;
            }
        }
        d
    }

    /// Rank over `F_p` by column reduction with first-nonzero pivots.
    pub fn rank(&self, p: u32) -> usize {
        let mut pivot_col: Vec<u32> = vec![u32::MAX; self.rows];
        let mut reduced: Vec<Vec<(u32, u32)>> = Vec::new();
        let mut scratch = Vec::new();
        for col in &self.cols {
            let mut c = col.clone();
            while let Some(&(r, v)) = c.first() {
                let pc = pivot_col[r as usize];
                if pc == u32::MAX {
                    let inv = inv_mod(v, p);
                    for e in &mut c {
                        e.1 = ((e.1 as u64 * inv as u64) % p as u64) as u32;
                    }
                    pivot_col[r as usize] = reduced.len() as u32;
                    reduced.push(c);
                    break;
                }
                // c -= v · reduced[pc]   (pivot entry of reduced[pc] is 1)
                axpy(&mut c, &reduced[pc as usize], p - v, p, &mut scratch);
            }
        }
        reduced.len()
    }

    /// Writes the matrix in coordinate text form, one-based indices.
    pub fn matrix_market(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "%%MatrixMarket matrix coordinate integer general");
        let _ = writeln!(s, "{} {} {}", self.rows, self.cols.len(), self.nnz());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                let _ = writeln!(s, "{} {} {}", i + 1, j + 1, v);
            }
        }
        s
    }
}

/// `c += a · d` over `F_p`, both sorted sparse.
fn axpy(c: &mut Vec<(u32, u32)>, d: &[(u32, u32)], a: u32, p: u32, scratch: &mut Vec<(u32, u32)>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < c.len() || j < d.len() {
        let take_c = j >= d.len() || (i < c.len() && c[i].0 < d[j].0);
        let take_d = i >= c.len() || (j < d.len() && d[j].0 < c[i].0);
        if take_c {
            scratch.push(c[i]);
            i += 1;
        } else if take_d {
            scratch.push((d[j].0, ((d[j].1 as u64 * a as u64) % p as u64) as u32));
            j += 1;
        } else {
            let v = ((c[i].1 as u64 + d[j].1 as u64 * a as u64) % p as u64) as u32;
            if v != 0 {
                scratch.push((c[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    core::mem::swap(c, scratch);
}

/// A dense matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<u32>>,
}

impl DenseMatrix {
    pub fn zero(rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix { rows, cols, data: vec![vec![0; cols]; rows] }
    }

    pub fn identity(n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zero(n, n);
        for i in 0..n {
            m.data[i][i] = 1;
        }
        m
    }

    pub fn mul(&self, other: &DenseMatrix, p: u32) -> DenseMatrix {
        let mut out = DenseMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i][k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] = ((out.data[i][j] as u64 + a * other.data[k][j] as u64) % p as u64) as u32;
                }
            }
        }
        out
    }

    /// Row echelon form in place; returns the pivot columns.
    pub fn row_reduce(&mut self, p: u32) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i][c] != 0) else { continue };
            self.data.swap(r, pr);
            let inv = inv_mod(self.data[r][c], p) as u64;
            for x in &mut self.data[r] {
                *x = ((*x as u64 * inv) % p as u64) as u32;
            }
            for i in 0..self.rows {
                if i != r && self.data[i][c] != 0 {
                    let f = (p - self.data[i][c]) as u64;
                    for j in 0..self.cols {
                        let v = self.data[r][j] as u64;
                        if v != 0 {
                            self.data[i][j] = ((self.data[i][j] as u64 + f * v) % p as u64) as u32;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, p: u32) -> usize {
        self.clone().row_reduce(p).len()
    }

    /// A basis of the null space, as column vectors.
    pub fn null_space(&self, p: u32) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.row_reduce(p);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m.data[r][free]) % p;
            }
            basis.push(v);
        }
        basis
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> DenseMatrix {
        let mut m = DenseMatrix::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.data[i][j] = c[i];
            }
        }
        m
    }

    pub fn apply(&self, v: &[u32], p: u32) -> Vec<u32> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0u64, |acc, j| (acc + self.data[i][j] as u64 * v[j] as u64) % p as u64) as u32)
            .collect()
    }
}

/// A normalised chain complex truncated at its top degree.
#[derive(Clone, Debug)]
pub struct ChainComplexFp {
    pub p: u32,
    pub dims: Vec<usize>,
    /// `boundaries[n]: C_n → C_{n-1}`; `boundaries[0]` is the zero map to 0.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplexFp {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Hard check of `∂∂ = 0` in every stored degree.
    pub fn check_boundaries(&self) -> Result<()> {
        for n in 2..=self.top() {
            let dd = self.boundaries[n - 1].mul(&self.boundaries[n], self.p);
            if !dd.is_zero() {
                return Err(Error::BoundaryCompositionNonzero { degree: n });
            }
        }
        Ok(())
    }

    /// `rank ∂_n` for `n = 0..=top`.
    pub fn boundary_ranks(&self) -> Vec<usize> {
        self.boundaries.iter().map(|b| b.rank(self.p)).collect()
    }

    /// Betti numbers in degrees `0..top`, where they are exact.
    pub fn betti(&self) -> Result<Vec<usize>> {
        self.check_boundaries()?;
        let ranks = self.boundary_ranks();
        Ok((0..self.top()).map(|n| self.dims[n] - ranks[n] - ranks[n + 1]).collect())
    }

    /// Betti numbers from dense elimination; an independent route for
    /// small complexes.
    pub fn betti_dense(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(|b| b.to_dense().rank(self.p)).collect();
        (0..self.top()).map(|n| self.dims[n] - ranks[n] - ranks[n + 1]).collect()
    }
}

/// The normalised chains of a truncated simplicial set: the boundary is the
/// alternating sum of faces with degenerate faces dropped.
pub fn chains_of(x: &TruncatedSSet, p: u32) -> ChainComplexFp {
    let mut boundaries = vec![SparseMatrix::zero(0, x.count(0))];
    for n in 1..=x.cap() {
        let cols = (0..x.count(n))
            .map(|s| {
                let entries = x
                    .faces_of(n, s)
                    .iter()
                    .enumerate()
                    .filter(|(_, &f)| f != crate::category::DEGENERATE)
                    .map(|(i, &f)| (f, if i % 2 == 0 { 1 } else { p - 1 }))
                    .collect();
                SparseMatrix::column(entries, p)
            })
            .collect();
        boundaries.push(SparseMatrix { rows: x.count(n - 1), cols });
    }
    ChainComplexFp { p, dims: x.counts().to_vec(), boundaries }
}

/// Betti numbers of a truncated simplicial set in its trusted degrees.
pub fn betti_of(x: &TruncatedSSet, p: u32) -> Result<Vec<usize>> {
    chains_of(x, p).betti()
}

/// A chain map, one matrix `C_n(X) → C_n(Y)` per degree.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub matrices: Vec<SparseMatrix>,
}

pub fn chain_map_of(f: &SimplicialMap, source: &TruncatedSSet, target: &TruncatedSSet) -> ChainMap {
    let top = source.cap().min(target.cap());
    let matrices = (0..=top)
        .map(|n| SparseMatrix {
            rows: target.count(n),
            cols: f.images[n]
                .iter()
                .map(|&t| if t == crate::category::DEGENERATE { Vec::new() } else { vec![(t, 1)] })
                .collect(),
        })
        .collect();
    ChainMap { matrices }
}

/// The effect of a chain map on homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source_betti: Vec<usize>,
    pub target_betti: Vec<usize>,
    /// Rank of `H_n(f)` in each trusted degree, from the mapping cone.
    pub ranks: Vec<usize>,
    /// Matrices of `H_n(f)` in chosen bases (small complexes only).
    pub matrices: Option<Vec<DenseMatrix>>,
    pub iso: Vec<bool>,
}

impl InducedMap {
    pub fn all_iso(&self) -> bool {
        self.iso.iter().all(|&b| b)
    }
}

/// Mapping cone `Cone_n = Y_n ⊕ X_{n-1}` with `∂(y, x) = (∂y + f x, -∂x)`.
fn mapping_cone(x: &ChainComplexFp, y: &ChainComplexFp, f: &ChainMap) -> ChainComplexFp {
    let p = x.p;
    let top = x.top().min(y.top());
    let mut dims = Vec::with_capacity(top + 1);
    let mut boundaries = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let xn1 = if n == 0 { 0 } else { x.dims[n - 1] };
        dims.push(y.dims[n] + xn1);
    }
    for n in 0..=top {
        let rows = if n == 0 { 0 } else { dims[n - 1] };
        let mut cols: Vec<Vec<(u32, u32)>> = Vec::with_capacity(dims[n]);
        for j in 0..y.dims[n] {
            cols.push(if n == 0 { Vec::new() } else { y.boundaries[n].cols[j].clone() });
        }
        if n >= 1 {
            let offset = y.dims[n - 1] as u32;
            for j in 0..x.dims[n - 1] {
                let mut entries: Vec<(u32, u32)> = f.matrices[n - 1].cols[j].clone();
                if n >= 2 {
                    entries.extend(x.boundaries[n - 1].cols[j].iter().map(|&(r, v)| (offset + r, (p - v) % p)));
                }
                cols.push(SparseMatrix::column(entries, p));
            }
        }
        boundaries.push(SparseMatrix { rows, cols });
    }
    ChainComplexFp { p, dims, boundaries }
}

/// Homology classes of `cx` in degree `n` as cycle representatives, plus
/// a basis of boundaries; dense, for small complexes.
fn homology_basis(cx: &ChainComplexFp, n: usize) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let p = cx.p;
    let cycles = cx.boundaries[n].to_dense().null_space(p);
    let bd = cx.boundaries[n + 1].to_dense();
    let mut span: Vec<Vec<u32>> = (0..bd.cols).map(|j| (0..bd.rows).map(|i| bd.data[i][j]).collect()).collect();
    let boundaries = span.clone();
    let mut rank = DenseMatrix::from_columns(cx.dims[n], &span).rank(p);
    let mut reps = Vec::new();
    for z in cycles {
        span.push(z.clone());
        let r = DenseMatrix::from_columns(cx.dims[n], &span).rank(p);
        if r > rank {
            rank = r;
            reps.push(z);
        } else {
            span.pop();
        }
    }
    (reps, boundaries)
}

/// Solves `[B | H] c = v` and returns the coordinates on `H`.
fn coordinates(dim: usize, boundaries: &[Vec<u32>], reps: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    let mut columns: Vec<Vec<u32>> = boundaries.to_vec();
    columns.extend(reps.iter().cloned());
    columns.push(v.to_vec());
    let mut m = DenseMatrix::from_columns(dim, &columns);
    let pivots = m.row_reduce(p);
    let total = columns.len() - 1;
    assert!(!pivots.contains(&total), "image of a cycle is a cycle");
    let mut sol = vec![0u32; total];
    for (r, &pc) in pivots.iter().enumerate() {
        sol[pc] = m.data[r][total];
    }
    // pivots among boundary columns may be dependent; the H-coordinates of a
    // reduced echelon solution are well defined because H reps are
    // independent modulo boundaries.
    sol[boundaries.len()..].to_vec()
}

/// The map on homology induced by `f` in the trusted degrees
/// `0..min(top) `. The chain-map condition is a hard check.
pub fn induced_map(x: &ChainComplexFp, y: &ChainComplexFp, f: &ChainMap) -> Result<InducedMap> {
    let p = x.p;
    let top = x.top().min(y.top());
    for n in 1..=top {
        let left = y.boundaries[n].mul(&f.matrices[n], p);
        let right = f.matrices[n - 1].mul(&x.boundaries[n], p);
        if left != right {
            return Err(Error::NotAChainMap { degree: n });
        }
    }
    let bx = x.betti()?;
    let by = y.betti()?;
    let cone = mapping_cone(x, y, f);
    let bc = cone.betti()?;
    let mut ranks = Vec::with_capacity(top);
    let mut prev_rank = 0usize;
    for n in 0..top {
        let bx_prev = if n == 0 { 0 } else { bx[n - 1] };
        let r = by[n] + bx_prev - prev_rank - bc[n];
        ranks.push(r);
        prev_rank = r;
    }
    let small = x.dims.iter().chain(&y.dims).all(|&d| d <= DENSE_LIMIT);
    let matrices = small.then(|| {
        (0..top)
            .map(|n| {
                let (xr, _) = homology_basis(x, n);
                let (yr, yb) = homology_basis(y, n);
                let fx = f.matrices[n].to_dense();
                let cols: Vec<Vec<u32>> =
                    xr.iter().map(|z| coordinates(y.dims[n], &yb, &yr, &fx.apply(z, p), p)).collect();
                DenseMatrix::from_columns(yr.len(), &cols)
            })
            .collect::<Vec<_>>()
    });
    if let Some(ms) = &matrices {
        for (n, m) in ms.iter().enumerate() {
            assert_eq!(m.rank(p), ranks[n], "cone and cycle-lifting ranks disagree in degree {n}");
        }
    }
    let iso = (0..top).map(|n| ranks[n] == bx[n] && ranks[n] == by[n]).collect();
    Ok(InducedMap { source_betti: bx, target_betti: by, ranks, matrices, iso })
}

/// `b_0 = 1` and `b_i = 0` for `i` in `1..=max_degree`.
pub fn reduced_vanishing(x: &TruncatedSSet, p: u32, max_degree: usize) -> Result<bool> {
    if x.count(0) == 0 {
        return Err(Error::EmptyComplex);
    }
    assert!(max_degree < x.cap(), "degree {max_degree} is not trusted at cap {}", x.cap());
    let b = betti_of(x, p)?;
    Ok(b[0] == 1 && b[1..=max_degree].iter().all(|&v| v == 0))
}

/// Betti numbers and, optionally, the verdict of a comparison map, with
/// the degrees in which they are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomologyReport {
    pub cap: usize,
    /// Degrees `0..=trusted_max` are exact.
    pub trusted_max: usize,
    pub source_betti: Vec<usize>,
    pub target_betti: Vec<usize>,
    pub induced_ranks: Option<Vec<usize>>,
    pub iso: Option<Vec<bool>>,
}

impl HomologyReport {
    pub fn from_induced(cap: usize, m: &InducedMap) -> HomologyReport {
        HomologyReport {
            cap,
            trusted_max: cap - 1,
            source_betti: m.source_betti.clone(),
            target_betti: m.target_betti.clone(),
            induced_ranks: Some(m.ranks.clone()),
            iso: Some(m.iso.clone()),
        }
    }

    pub fn all_iso(&self) -> bool {
        self.iso.as_ref().is_some_and(|v| v.iter().all(|&b| b))
    }

    pub fn summary(&self) -> String {
        format!("betti {:?} -> {:?}, iso {:?}", self.source_betti, self.target_betti, self.iso)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::*;
    use crate::group::library::*;
    use proptest::prelude::*;

    fn nerve(c: &FinCategory, cap: usize) -> Nerve {
        nerve_truncated(c, cap, DEFAULT_SIMPLEX_BUDGET).unwrap()
    }

    #[test]
    fn point_and_discrete() {
        let pt = nerve(&FinCategory::point(), 4);
        assert_eq!(betti_of(&pt.sset, 2).unwrap(), [1, 0, 0, 0]);
        let three = nerve(&FinCategory::discrete(3), 2);
        assert_eq!(betti_of(&three.sset, 3).unwrap()[0], 3);
        assert!(reduced_vanishing(&pt.sset, 2, 3).unwrap());
        assert!(!reduced_vanishing(&three.sset, 2, 1).unwrap());
        let empty = nerve(&FinCategory::empty(), 2);
        assert_eq!(reduced_vanishing(&empty.sset, 2, 1), Err(Error::EmptyComplex));
    }

    #[test]
    fn classifying_spaces() {
        let bc2 = nerve(&FinCategory::one_object(&cyclic(2)), 4);
        let cx = chains_of(&bc2.sset, 2);
        assert_eq!(cx.dims, [1, 1, 1, 1, 1]);
        assert!(cx.boundaries.iter().all(|b| b.is_zero()));
        assert_eq!(cx.betti().unwrap(), [1, 1, 1, 1]);
        assert_eq!(cx.betti_dense(), [1, 1, 1, 1]);
        // odd p kills the homology of BC_2
        assert_eq!(betti_of(&bc2.sset, 3).unwrap(), [1, 0, 0, 0]);
        // H_*(BC_3; F_3) = F_3 in every degree, over F_2 trivial
        let bc3 = nerve(&FinCategory::one_object(&cyclic(3)), 4);
        assert_eq!(betti_of(&bc3.sset, 3).unwrap(), [1, 1, 1, 1]);
        assert_eq!(betti_of(&bc3.sset, 2).unwrap(), [1, 0, 0, 0]);
        // H_1(BS_3; F_2) = F_2, H_2 = F_2 (Sylow C_2 controls)
        let bs3 = nerve(&FinCategory::one_object(&symmetric3()), 3);
        assert_eq!(betti_of(&bs3.sset, 2).unwrap(), [1, 1, 1]);
        // V_4: Poincaré series 1/(1-t)^2
        let bv = nerve(&FinCategory::one_object(&cyclic(2).direct_product(&cyclic(2))), 3);
        assert_eq!(betti_of(&bv.sset, 2).unwrap(), [1, 2, 3]);
    }

    #[test]
    fn circle_from_two_edges() {
        // two objects, two parallel arrows: nerve is a circle
        let morphisms = alloc::vec![(0, 0, 0u8), (1, 1, 1), (0, 1, 2), (0, 1, 3)];
        let (c, _) = FinCategory::build(2, morphisms, alloc::vec![0, 1], |&g, &f| if g <= 1 { f } else { g }).unwrap();
        let n = nerve(&c, 2);
        let cx = chains_of(&n.sset, 2);
        assert_eq!(cx.boundaries[1].rank(2), 1);
        assert_eq!(cx.betti().unwrap(), [1, 1]);
    }

    #[test]
    fn induced_maps() {
        let bc2 = FinCategory::one_object(&cyclic(2));
        let pt = FinCategory::point();
        let (na, nb) = (nerve(&bc2, 4), nerve(&pt, 4));
        let id = FinFunctor::identity(&bc2);
        let m = nerve_map(&id, &na, &na, &bc2);
        let cx = chains_of(&na.sset, 2);
        let im = induced_map(&cx, &cx, &chain_map_of(&m, &na.sset, &na.sset)).unwrap();
        assert!(im.all_iso());
        for mat in im.matrices.unwrap() {
            assert_eq!(mat, DenseMatrix::identity(1));
        }
        let collapse = FinFunctor::constant(&bc2, &pt, 0);
        let m = nerve_map(&collapse, &na, &nb, &pt);
        let cy = chains_of(&nb.sset, 2);
        let im = induced_map(&cx, &cy, &chain_map_of(&m, &na.sset, &nb.sset)).unwrap();
        assert_eq!(im.iso, [true, false, false, false]);
        assert_eq!(im.ranks, [1, 0, 0, 0]);
    }

    #[test]
    fn induced_map_of_composite() {
        // C_2 → C_4 → C_4/C_2: composite is trivial on H_1
        let c4 = cyclic(4);
        let c2 = cyclic(2);
        let b4 = FinCategory::one_object(&c4);
        let b2 = FinCategory::one_object(&c2);
        // x ↦ 2x and x ↦ x mod 2
        let inc = FinFunctor::new(&b2, &b4, alloc::vec![0], alloc::vec![0, 2]).unwrap();
        let quo = FinFunctor::new(&b4, &b2, alloc::vec![0], alloc::vec![0, 1, 0, 1]).unwrap();
        let (n2, n4) = (nerve(&b2, 3), nerve(&b4, 3));
        let (c2x, c4x) = (chains_of(&n2.sset, 2), chains_of(&n4.sset, 2));
        let mi = nerve_map(&inc, &n2, &n4, &b4);
        let mq = nerve_map(&quo, &n4, &n2, &b2);
        let hi = induced_map(&c2x, &c4x, &chain_map_of(&mi, &n2.sset, &n4.sset)).unwrap();
        let hq = induced_map(&c4x, &c2x, &chain_map_of(&mq, &n4.sset, &n2.sset)).unwrap();
        let comp = mi.then(&mq);
        let hc = induced_map(&c2x, &c2x, &chain_map_of(&comp, &n2.sset, &n2.sset)).unwrap();
        for n in 0..2 {
            let prod = hq.matrices.as_ref().unwrap()[n].mul(&hi.matrices.as_ref().unwrap()[n], 2);
            assert_eq!(prod, hc.matrices.as_ref().unwrap()[n]);
        }
        assert_eq!(hc.ranks, [1, 0, 0]);
    }

    #[test]
    fn not_a_chain_map() {
        let b = FinCategory::linear(1);
        let n = nerve(&b, 2);
        // over F_2 the swap happens to commute with the boundary
        let cx = chains_of(&n.sset, 3);
        // swap the two vertices but keep the edge
        let bad = ChainMap {
            matrices: alloc::vec![
                SparseMatrix { rows: 2, cols: alloc::vec![alloc::vec![(1, 1)], alloc::vec![(0, 1)]] },
                SparseMatrix { rows: 1, cols: alloc::vec![alloc::vec![(0, 1)]] },
                SparseMatrix::zero(0, 0),
            ],
        };
        assert_eq!(induced_map(&cx, &cx, &bad).unwrap_err(), Error::NotAChainMap { degree: 1 });
    }

    #[test]
    fn euler_characteristic() {
        // a poset with a top dimension below the cap is truncation stable
        let c = FinCategory::poset(4, |a, b| a == b || (a < 2 && b >= 2)).unwrap();
        let n = nerve(&c, 3);
        assert_eq!(n.sset.count(2), 0);
        let b = betti_of(&n.sset, 5).unwrap();
        let chi_cells: i64 = n.sset.counts().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        let chi_betti: i64 = b.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        assert_eq!(chi_cells, chi_betti);
        assert_eq!(b, [1, 1, 0]);
    }

    #[test]
    fn matrix_market_dump() {
        let m = SparseMatrix { rows: 2, cols: alloc::vec![alloc::vec![(0, 1), (1, 1)]] };
        assert_eq!(m.matrix_market(), "%%MatrixMarket matrix coordinate integer general\n2 1 2\n1 1 1\n2 1 1\n");
    }

    proptest! {
        #[test]
        fn sparse_and_dense_ranks_agree(
            rows in 1usize..12,
            cols in 1usize..12,
            entries in proptest::collection::vec((0u32..12, 0u32..12, 1u32..5), 0..60),
            p in prop_oneof![Just(2u32), Just(3), Just(5)],
        ) {
            let mut columns = alloc::vec![Vec::new(); cols];
            for (r, c, v) in entries {
                if (r as usize) < rows && (c as usize) < cols {
                    columns[c as usize].push((r, v % p));
                }
            }
            let m = SparseMatrix { rows, cols: columns.into_iter().map(|c| SparseMatrix::column(c, p)).collect() };
            prop_assert_eq!(m.rank(p), m.to_dense().rank(p));
        }
    }
}
