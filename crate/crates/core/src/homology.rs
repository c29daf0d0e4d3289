//! Integral homology of finite simplicial sets through Smith normal form.
//!
//! Coefficients are generic over any signed Euclidean integer type. `i128` is
//! the default; [`BigInt`] removes any overflow concern at a speed cost.
//!
//! A map `f : X → Y` induces isomorphisms on `H_i` for all `i < K` exactly when
//! its mapping cone is acyclic below `K` and the connecting map
//! `H_K(Cf) → H_{K-1}(X)` vanishes. Both only need chains up to degree `K`, so
//! the test is meaningful on `K`-skeleta of larger complexes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::complex::{CellId, SimplicialSet};
use crate::map::SimplicialMap;

/// Coefficient rings accepted by the linear algebra below.
pub trait Coefficient: Integer + Signed + Clone + fmt::Display + fmt::Debug {}
impl<T: Integer + Signed + Clone + fmt::Display + fmt::Debug> Coefficient for T {}

pub type Matrix<T> = Vec<Vec<T>>;

fn identity<T: Coefficient>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// `U A V = diag(d_1, …, d_r, 0, …)` with `d_i | d_{i+1}` and `d_i > 0`.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub diagonal: Vec<T>,
    /// Row transform (`rows × rows`), present when tracked.
    pub u: Option<Matrix<T>>,
    /// Column transform (`cols × cols`), present when tracked.
    pub v: Option<Matrix<T>>,
    rows: usize,
    cols: usize,
}

struct Work<T> {
    a: Matrix<T>,
    u: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
}

impl<T: Coefficient> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// `row_i += q · row_j`
    fn add_row(&mut self, i: usize, j: usize, q: &T) {
        fn go<T: Coefficient>(m: &mut Matrix<T>, i: usize, j: usize, q: &T) {
            for c in 0..m[i].len() {
                let x = m[j][c].clone() * q.clone();
                m[i][c] = m[i][c].clone() + x;
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(u) = &mut self.u {
            go(u, i, j, q);
        }
    }

    /// `col_i += q · col_j`
    fn add_col(&mut self, i: usize, j: usize, q: &T) {
        fn go<T: Coefficient>(m: &mut Matrix<T>, i: usize, j: usize, q: &T) {
            for row in m {
                let x = row[j].clone() * q.clone();
                row[i] = row[i].clone() + x;
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(v) = &mut self.v {
            go(v, i, j, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -x.clone();
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -x.clone();
            }
        }
    }
}

pub fn smith<T: Coefficient>(a: &Matrix<T>, cols: usize, track: bool) -> Smith<T> {
    let rows = a.len();
    let mut w = Work {
        a: a.clone(),
        u: track.then(|| identity(rows)),
        v: track.then(|| identity(cols)),
    };
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !w.a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| w.a[i][j].abs().cmp(&w.a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let best_row = (t..rows)
                    .filter(|&i| !w.a[i][t].is_zero())
                    .min_by(|&i, &k| w.a[i][t].abs().cmp(&w.a[k][t].abs()))
                    .unwrap();
                let best_col = (t..cols)
                    .filter(|&j| !w.a[t][j].is_zero())
                    .min_by(|&j, &l| w.a[t][j].abs().cmp(&w.a[t][l].abs()))
                    .unwrap();
                if w.a[best_row][t].abs() <= w.a[t][best_col].abs() {
                    w.swap_rows(t, best_row);
                } else {
                    w.swap_cols(t, best_col);
                }
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a[i][j].is_multiple_of(&w.a[t][t]));
            match bad {
                Some((i, _)) => w.add_row(t, i, &T::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        diagonal.push(w.a[t][t].clone());
    }
    Smith {
        diagonal,
        u: w.u,
        v: w.v,
        rows,
        cols,
    }
}

impl<T: Coefficient> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// A basis of the kernel, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let v = self.v.as_ref().expect("kernel needs tracked transforms");
        (self.rank()..self.cols)
            .map(|j| (0..self.cols).map(|i| v[i][j].clone()).collect())
            .collect()
    }

    /// Whether `b` lies in the integer column span of the matrix.
    pub fn in_image(&self, b: &[T]) -> bool {
        let u = self.u.as_ref().expect("image test needs tracked transforms");
        (0..self.rows).all(|i| {
            let w = u[i]
                .iter()
                .zip(b)
                .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
            match self.diagonal.get(i) {
                Some(d) => w.is_multiple_of(d),
                None => w.is_zero(),
            }
        })
    }
}

/// `Z^rank ⊕ Z/t_1 ⊕ …`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup<T> {
    pub rank: usize,
    pub torsion: Vec<T>,
}

impl<T: Coefficient> HomologyGroup<T> {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }
}

impl<T: Coefficient> fmt::Display for HomologyGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Normalized chains: one generator per nondegenerate cell.
struct Chains {
    /// Cells of each dimension, and their positions.
    cells: Vec<Vec<CellId>>,
    position: Vec<usize>,
}

impl Chains {
    fn new(x: &SimplicialSet) -> Self {
        let top = x.dim().map_or(0, |d| d + 1);
        let cells: Vec<Vec<CellId>> = (0..=top).map(|n| x.cells_of([n]).collect()).collect();
        let mut position = vec![0; x.len()];
        for list in &cells {
            for (i, c) in list.iter().enumerate() {
                position[c.index()] = i;
            }
        }
        Chains { cells, position }
    }

    fn size(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, Vec::len)
    }
}

/// `∂_n : C_n → C_{n-1}` as a `size(n-1) × size(n)` matrix.
fn boundary_matrix<T: Coefficient>(x: &SimplicialSet, ch: &Chains, n: usize) -> Matrix<T> {
    let rows = if n == 0 { 0 } else { ch.size(n - 1) };
    let mut m = vec![vec![T::zero(); ch.size(n)]; rows];
    if n == 0 {
        return m;
    }
    for (j, &c) in ch.cells.get(n).into_iter().flatten().enumerate() {
        for (i, f) in x.cell(c).faces[0].iter().enumerate() {
            if !f.is_nondegenerate() {
                continue;
            }
            let r = ch.position[f.cell.index()];
            let s = if i % 2 == 0 { T::one() } else { -T::one() };
            m[r][j] = m[r][j].clone() + s;
        }
    }
    m
}

/// `H_n(X; Z)` for `n = 0 ..= dim X`.
pub fn homology<T: Coefficient>(x: &SimplicialSet) -> Vec<HomologyGroup<T>> {
    let Some(top) = x.dim() else { return Vec::new() };
    let ch = Chains::new(x);
    let snfs: Vec<Smith<T>> = (0..=top + 1)
        .map(|n| smith(&boundary_matrix::<T>(x, &ch, n), ch.size(n), false))
        .collect();
    (0..=top)
        .map(|n| {
            let out = &snfs[n + 1];
            HomologyGroup {
                rank: ch.size(n) - snfs[n].rank() - out.rank(),
                torsion: out.diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
            }
        })
        .collect()
}

pub fn integral_homology(x: &SimplicialSet) -> Vec<HomologyGroup<i128>> {
    homology(x)
}

pub fn big_homology(x: &SimplicialSet) -> Vec<HomologyGroup<BigInt>> {
    homology(x)
}

/// Chains of the mapping cone `Cf_n = Y_n ⊕ X_{n-1}`, `d(y, x) = (dy + fx, -dx)`.
struct Cone<'a> {
    f: &'a SimplicialMap,
    x: Chains,
    y: Chains,
}

impl Cone<'_> {
    fn size(&self, n: usize) -> usize {
        self.y.size(n) + if n == 0 { 0 } else { self.x.size(n - 1) }
    }

    /// `f_# : C_n(X) → C_n(Y)`, with degenerate images dropped.
    fn chain_map<T: Coefficient>(&self, n: usize) -> Matrix<T> {
        let mut m = vec![vec![T::zero(); self.x.size(n)]; self.y.size(n)];
        for (j, &c) in self.x.cells.get(n).into_iter().flatten().enumerate() {
            let img = self.f.image(c);
            if img.is_nondegenerate() {
                m[self.y.position[img.cell.index()]][j] = T::one();
            }
        }
        m
    }

    fn boundary<T: Coefficient>(&self, n: usize) -> Matrix<T> {
        let (xs, ys) = (self.f.source(), self.f.target());
        let rows = if n == 0 { 0 } else { self.size(n - 1) };
        let mut m = vec![vec![T::zero(); self.size(n)]; rows];
        if n == 0 {
            return m;
        }
        let dy = boundary_matrix::<T>(ys, &self.y, n);
        let y_rows = self.y.size(n - 1);
        let y_cols = self.y.size(n);
        for (i, row) in dy.iter().enumerate() {
            m[i][..y_cols].clone_from_slice(row);
        }
        let fx = self.chain_map::<T>(n - 1);
        for (i, row) in fx.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[i][y_cols + j] = v.clone();
            }
        }
        if n >= 2 {
            let dx = boundary_matrix::<T>(xs, &self.x, n - 1);
            for (i, row) in dx.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    m[y_rows + i][y_cols + j] = -v.clone();
                }
            }
        }
        m
    }
}

/// Outcome of comparing `f_*` with an isomorphism below degree `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyComparison {
    IsoBelow(usize),
    /// `H_n` of the cone is nonzero.
    ConeNonzero(usize),
    /// `f_*` is not injective on `H_{K-1}`.
    KernelAt(usize),
}

/// Whether `f_* : H_i(X) → H_i(Y)` is an isomorphism for all `i < k`.
/// Uses chains of `X` and `Y` only up to degree `k`.
pub fn induces_iso_below<T: Coefficient>(f: &SimplicialMap, k: usize) -> HomologyComparison {
    if k == 0 {
        return HomologyComparison::IsoBelow(0);
    }
    let cone = Cone {
        f,
        x: Chains::new(f.source()),
        y: Chains::new(f.target()),
    };
    let snf: Vec<Smith<T>> = (0..=k)
        .map(|n| smith(&cone.boundary::<T>(n), cone.size(n), n == k))
        .collect();
    for n in 0..k {
        let rank = cone.size(n) - snf[n].rank() - snf[n + 1].rank();
        if rank != 0 || snf[n + 1].diagonal.iter().any(|d| !d.is_one()) {
            return HomologyComparison::ConeNonzero(n);
        }
    }
    // every cycle of Cf_k must project to a boundary of X
    let y_k = cone.y.size(k);
    let dx = boundary_matrix::<T>(f.source(), &cone.x, k);
    let dx_snf = smith(&dx, cone.x.size(k), true);
    for z in snf[k].kernel() {
        let x_part = &z[y_k..];
        if !dx_snf.in_image(x_part) {
            return HomologyComparison::KernelAt(k - 1);
        }
    }
    HomologyComparison::IsoBelow(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjunction::unit_map;
    use crate::category::FiniteCategory;
    use crate::nerve::Nerve;
    use crate::standard::{boundary, boundary_inclusion, horn, standard, to_terminal};
    use std::sync::Arc;

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    #[test]
    fn spheres_and_simplices() {
        let h = integral_homology(&boundary(2).unwrap());
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(1)]);
        let h = integral_homology(&boundary(3).unwrap());
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(1)]);
        for n in 0..4 {
            let h = integral_homology(&standard(n));
            assert_eq!(h[0], HomologyGroup::free(1));
            assert!(h[1..].iter().all(|g| g.is_zero()));
        }
        assert!(integral_homology(&horn(3, 1).unwrap())[1..].iter().all(|g| g.is_zero()));
    }

    #[test]
    fn projective_plane_torsion() {
        // the nerve of Z/2 carries the homology of RP^∞
        let z2 = FiniteCategory::monoid(&[vec![0, 1], vec![1, 0]]).unwrap();
        let nv = Nerve::new(&arc(z2), 4);
        let h = integral_homology(&nv.complex);
        assert_eq!(h[1], HomologyGroup { rank: 0, torsion: vec![2] });
        assert!(h[2].is_zero());
        assert_eq!(h[3], HomologyGroup { rank: 0, torsion: vec![2] });
        let hb = big_homology(&nv.complex);
        assert_eq!(hb[1].torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn chaotic_nerve_is_a_truncated_sphere_pattern() {
        let nv = Nerve::new(&arc(FiniteCategory::chaotic(1)), 4);
        let h = integral_homology(&nv.complex);
        assert_eq!(h[0], HomologyGroup::free(1));
        assert!(h[1..4].iter().all(|g| g.is_zero()));
        assert_eq!(h[4], HomologyGroup::free(1));
    }

    #[test]
    fn smith_transforms() {
        let a: Matrix<i128> = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3, true);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        let b: Matrix<i128> = vec![vec![1, 1], vec![1, 1]];
        let s = smith(&b, 2, true);
        assert_eq!(s.kernel().len(), 1);
        assert!(s.in_image(&[3, 3]));
        assert!(!s.in_image(&[1, 0]));
    }

    #[test]
    fn unit_is_iso_below_bound() {
        for x in [standard(1), boundary(2).unwrap(), horn(2, 0).unwrap()] {
            let u = unit_map(&arc(x), 4).unwrap();
            assert_eq!(induces_iso_below::<i128>(&u, 4), HomologyComparison::IsoBelow(4));
        }
    }

    #[test]
    fn collapses_are_detected() {
        let b = arc(boundary(2).unwrap());
        assert_eq!(induces_iso_below::<i128>(&to_terminal(&b), 3), HomologyComparison::ConeNonzero(2));
        let i = boundary_inclusion(2).unwrap();
        assert_eq!(induces_iso_below::<i128>(&i, 3), HomologyComparison::ConeNonzero(2));
        assert_eq!(induces_iso_below::<i128>(&i, 2), HomologyComparison::KernelAt(1));
        assert_eq!(induces_iso_below::<i128>(&i, 1), HomologyComparison::IsoBelow(1));
    }
}
