//! Finite multisimplicial sets in Eilenberg–Zilber normal form.
//!
//! A [`Complex<D>`] stores only its nondegenerate cells. A cell of multidegree
//! `(p_1, …, p_D)` carries, for each direction, the list of its faces in that
//! direction. Every simplex, degenerate or not, is a [`Simplex`]: one monotone
//! surjection per direction applied to a nondegenerate cell. `D = 1` gives
//! simplicial sets and `D = 2` bisimplicial sets (direction 0 is horizontal,
//! direction 1 vertical).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::ops::{self, Op};

/// Opaque identifier of a nondegenerate cell inside one complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId(pub u32);

impl CellId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A simplex `σ^* c`: a monotone surjection per direction applied to the cell `c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex<const D: usize> {
    pub ops: [Op; D],
    pub cell: CellId,
}

impl<const D: usize> Simplex<D> {
    /// The cell itself, with identity operators in every direction.
    pub fn cell(cell: CellId, degree: [usize; D]) -> Self {
        Simplex {
            ops: std::array::from_fn(|d| ops::identity(degree[d])),
            cell,
        }
    }

    pub fn degree(&self) -> [usize; D] {
        std::array::from_fn(|d| self.ops[d].len() - 1)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.ops
            .iter()
            .all(|op| op.iter().enumerate().all(|(i, &v)| v as usize == i))
    }

    pub fn is_degenerate_in(&self, dir: usize) -> bool {
        self.ops[dir].windows(2).any(|w| w[0] == w[1])
    }
}

impl Simplex<1> {
    pub fn dim(&self) -> usize {
        self.ops[0].len() - 1
    }

    /// The degeneracy word, strictly decreasing.
    pub fn word(&self) -> Vec<usize> {
        ops::word_of(&self.ops[0])
    }

    /// Build from a strictly decreasing word applied to a nondegenerate cell of dimension `base`.
    pub fn from_word(word: &[usize], cell: CellId, base: usize) -> Result<Self> {
        for (pos, &i) in word.iter().enumerate() {
            if pos > 0 && word[pos - 1] <= i {
                return Err(Error::Malformed(
                    "degeneracy word must be strictly decreasing".into(),
                ));
            }
            // word[len-1] is applied first, to a simplex of dimension base
            let stage_dim = base + (word.len() - 1 - pos);
            if i > stage_dim {
                return Err(Error::DegeneracyOutOfRange {
                    index: i,
                    dim: stage_dim,
                });
            }
        }
        Ok(Simplex {
            ops: [ops::surjection_of_word(base, word)],
            cell,
        })
    }
}

impl<const D: usize> fmt::Debug for Simplex<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.cell.0)?;
        for op in &self.ops {
            write!(f, "{:?}", op.as_slice())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell<const D: usize> {
    pub degree: [usize; D],
    /// `faces[dir][i]` is the `i`-th face in direction `dir`.
    pub faces: [Vec<Simplex<D>>; D],
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex<const D: usize> {
    cells: Vec<Cell<D>>,
    by_degree: BTreeMap<[usize; D], Range<u32>>,
}

pub type SimplicialSet = Complex<1>;
pub type BisimplicialSet = Complex<2>;
pub type SimplexRef = Simplex<1>;
pub type BiSimplex = Simplex<2>;

/// Incremental construction; cells must arrive in nondecreasing
/// (lexicographic) multidegree order so faces always point backwards.
#[derive(Debug, Default)]
pub struct ComplexBuilder<const D: usize> {
    cells: Vec<Cell<D>>,
}

impl<const D: usize> ComplexBuilder<D> {
    pub fn new() -> Self {
        ComplexBuilder { cells: Vec::new() }
    }

    pub fn add_cell(
        &mut self,
        degree: [usize; D],
        faces: [Vec<Simplex<D>>; D],
        label: impl Into<String>,
    ) -> CellId {
        if let Some(last) = self.cells.last() {
            assert!(last.degree <= degree, "cells must be added in degree order");
        }
        let id = CellId(self.cells.len() as u32);
        self.cells.push(Cell {
            degree,
            faces,
            label: label.into(),
        });
        id
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn finish(self) -> Complex<D> {
        Complex::from_cells(self.cells)
    }
}

impl<const D: usize> Complex<D> {
    pub fn empty() -> Self {
        Complex {
            cells: Vec::new(),
            by_degree: BTreeMap::new(),
        }
    }

    fn from_cells(cells: Vec<Cell<D>>) -> Self {
        let mut by_degree: BTreeMap<[usize; D], Range<u32>> = BTreeMap::new();
        for (i, c) in cells.iter().enumerate() {
            let i = i as u32;
            by_degree
                .entry(c.degree)
                .and_modify(|r| r.end = i + 1)
                .or_insert(i..i + 1);
        }
        Complex { cells, by_degree }
    }

    /// Checked construction from raw cells (used by parsers).
    pub fn try_from_cells(cells: Vec<Cell<D>>) -> Result<Self> {
        for w in cells.windows(2) {
            if w[0].degree > w[1].degree {
                return Err(Error::Malformed("cells out of degree order".into()));
            }
        }
        let c = Complex::from_cells(cells);
        c.validate()?;
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell<D>] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell<D> {
        &self.cells[id.index()]
    }

    pub fn label(&self, id: CellId) -> &str {
        &self.cells[id.index()].label
    }

    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len() as u32).map(CellId)
    }

    /// Multidegrees that carry at least one cell, in lexicographic order.
    pub fn degrees(&self) -> impl Iterator<Item = [usize; D]> + '_ {
        self.by_degree.keys().copied()
    }

    pub fn cells_of(&self, degree: [usize; D]) -> impl Iterator<Item = CellId> {
        self.by_degree
            .get(&degree)
            .cloned()
            .unwrap_or(0..0)
            .map(CellId)
    }

    pub fn count(&self, degree: [usize; D]) -> usize {
        self.by_degree.get(&degree).map_or(0, |r| r.len())
    }

    /// Largest degree reached in each direction (zeros when empty).
    pub fn max_degree(&self) -> [usize; D] {
        let mut m = [0; D];
        for d in self.by_degree.keys() {
            for i in 0..D {
                m[i] = m[i].max(d[i]);
            }
        }
        m
    }

    pub fn nondegenerate(&self, id: CellId) -> Simplex<D> {
        Simplex::cell(id, self.cells[id.index()].degree)
    }

    pub fn degeneracy(&self, x: &Simplex<D>, dir: usize, i: usize) -> Simplex<D> {
        let p = x.ops[dir].len() - 1;
        debug_assert!(i <= p);
        let mut y = x.clone();
        y.ops[dir] = ops::compose(&x.ops[dir], &ops::codegeneracy(p, i));
        y
    }

    pub fn face(&self, x: &Simplex<D>, dir: usize, i: usize) -> Simplex<D> {
        let p = x.ops[dir].len() - 1;
        debug_assert!(p >= 1 && i <= p);
        self.apply(x, dir, &ops::coface(p, i))
    }

    /// Apply the simplicial operator `theta^*` in direction `dir`, where
    /// `theta : [q] → [p]` is monotone and `p` is the current degree of `x`.
    pub fn apply(&self, x: &Simplex<D>, dir: usize, theta: &[u8]) -> Simplex<D> {
        debug_assert!(ops::is_monotone(theta));
        let mut cur = x.clone();
        let mut phi = ops::compose(&cur.ops[dir], theta);
        loop {
            let cell = &self.cells[cur.cell.index()];
            let k = cell.degree[dir];
            match ops::first_missing(&phi, k) {
                None => {
                    cur.ops[dir] = phi;
                    return cur;
                }
                Some(i) => {
                    // phi = δ^i ∘ phi', so phi^* c = phi'^* (d_i c)
                    let face = &cell.faces[dir][i];
                    let reduced = ops::drop_value(&phi, i);
                    let mut next = face.clone();
                    for e in 0..D {
                        if e != dir {
                            next.ops[e] = ops::compose(&face.ops[e], &cur.ops[e]);
                        }
                    }
                    phi = ops::compose(&face.ops[dir], &reduced);
                    cur = next;
                }
            }
        }
    }

    /// Every simplex (degenerate or not) of the given multidegree.
    pub fn simplices(&self, degree: [usize; D]) -> Vec<Simplex<D>> {
        let mut out = Vec::new();
        for (cd, range) in &self.by_degree {
            if (0..D).any(|d| cd[d] > degree[d]) {
                continue;
            }
            let per_dir: Vec<Vec<Op>> = (0..D)
                .map(|d| ops::surjections(degree[d], cd[d]))
                .collect();
            for id in range.clone() {
                let mut idx = [0usize; D];
                loop {
                    out.push(Simplex {
                        ops: std::array::from_fn(|d| per_dir[d][idx[d]].clone()),
                        cell: CellId(id),
                    });
                    // odometer
                    let mut d = D;
                    let mut done = true;
                    while d > 0 {
                        d -= 1;
                        idx[d] += 1;
                        if idx[d] < per_dir[d].len() {
                            done = false;
                            break;
                        }
                        idx[d] = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Number of simplices of a multidegree, without listing them.
    pub fn simplex_count(&self, degree: [usize; D]) -> usize {
        self.by_degree
            .iter()
            .filter(|(cd, _)| (0..D).all(|d| cd[d] <= degree[d]))
            .map(|(cd, r)| {
                r.len() * (0..D).map(|d| binomial(degree[d], cd[d])).product::<usize>()
            })
            .sum()
    }

    /// Check face degrees, backwards references and the simplicial identities.
    pub fn validate(&self) -> Result<()> {
        for (idx, cell) in self.cells.iter().enumerate() {
            for dir in 0..D {
                let p = cell.degree[dir];
                let expected = if p == 0 { 0 } else { p + 1 };
                if cell.faces[dir].len() != expected {
                    return Err(Error::Malformed(format!(
                        "cell {} has {} faces in direction {dir}, expected {expected}",
                        cell.label,
                        cell.faces[dir].len()
                    )));
                }
                for f in &cell.faces[dir] {
                    if f.cell.index() >= idx {
                        return Err(Error::Malformed(format!(
                            "cell {} has a face that is not an earlier cell",
                            cell.label
                        )));
                    }
                    let fc = &self.cells[f.cell.index()];
                    for e in 0..D {
                        let want = if e == dir { p - 1 } else { cell.degree[e] };
                        if f.ops[e].len() != want + 1
                            || !ops::is_monotone(&f.ops[e])
                            || !ops::is_surjective_onto(&f.ops[e], fc.degree[e])
                        {
                            return Err(Error::Malformed(format!(
                                "cell {} has a face of the wrong shape",
                                cell.label
                            )));
                        }
                    }
                }
            }
            let x = self.nondegenerate(CellId(idx as u32));
            for dir in 0..D {
                let p = cell.degree[dir];
                for j in 0..=p {
                    for i in 0..j {
                        if p < 2 {
                            continue;
                        }
                        let lhs = self.face(&self.face(&x, dir, j), dir, i);
                        let rhs = self.face(&self.face(&x, dir, i), dir, j - 1);
                        if lhs != rhs {
                            return Err(Error::Malformed(format!(
                                "simplicial identity d{i} d{j} = d{} d{i} fails on cell {}",
                                j - 1,
                                cell.label
                            )));
                        }
                    }
                }
                for e in dir + 1..D {
                    if p == 0 || cell.degree[e] == 0 {
                        continue;
                    }
                    for i in 0..=p {
                        for j in 0..=cell.degree[e] {
                            let lhs = self.face(&self.face(&x, dir, i), e, j);
                            let rhs = self.face(&self.face(&x, e, j), dir, i);
                            if lhs != rhs {
                                return Err(Error::Malformed(format!(
                                    "faces in directions {dir} and {e} do not commute on cell {}",
                                    cell.label
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl Complex<1> {
    /// Largest dimension of a nondegenerate cell, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_degree.keys().last().map(|d| d[0])
    }

    /// Nondegenerate cell counts indexed by dimension.
    pub fn cell_counts(&self) -> Vec<usize> {
        match self.dim() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|n| self.count([n])).collect(),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = CellId> {
        self.cells_of([0])
    }

    pub fn simplices_of_dim(&self, n: usize) -> Vec<Simplex<1>> {
        self.simplices([n])
    }

    pub fn face1(&self, x: &Simplex<1>, i: usize) -> Simplex<1> {
        self.face(x, 0, i)
    }

    pub fn degeneracy1(&self, x: &Simplex<1>, i: usize) -> Simplex<1> {
        self.degeneracy(x, 0, i)
    }

    /// Apply the degeneracy word `s_{w_0} s_{w_1} ⋯` (rightmost first) to `x`
    /// and return the normal form.
    pub fn normalize(&self, word: &[usize], x: &Simplex<1>) -> Result<Simplex<1>> {
        let mut cur = x.clone();
        for &i in word.iter().rev() {
            let dim = cur.dim();
            if i > dim {
                return Err(Error::DegeneracyOutOfRange { index: i, dim });
            }
            cur = self.degeneracy(&cur, 0, i);
        }
        Ok(cur)
    }

    /// The vertices of a simplex, in order.
    pub fn vertices_of(&self, x: &Simplex<1>) -> Vec<Simplex<1>> {
        (0..=x.dim())
            .map(|v| self.apply(x, 0, &[v as u8]))
            .collect()
    }
}

impl Complex<2> {
    /// Nondegenerate cell counts keyed by bidegree.
    pub fn bicell_counts(&self) -> BTreeMap<(usize, usize), usize> {
        self.by_degree
            .iter()
            .map(|(d, r)| ((d[0], d[1]), r.len()))
            .collect()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::standard;

    #[test]
    fn double_degeneracy_of_vertex_normalizes() {
        let d2 = standard(2);
        let v = d2.nondegenerate(CellId(0));
        let x = d2.normalize(&[0, 0], &v).unwrap();
        assert_eq!(x.word(), vec![1, 0]);
        assert_eq!(x.cell, CellId(0));
        let same = d2.normalize(&[], &x).unwrap();
        assert_eq!(same, x);
    }

    #[test]
    fn face_of_degenerate_edge() {
        let d1 = standard(1);
        let e = d1.nondegenerate(CellId(2));
        let s = d1.degeneracy(&e, 0, 0);
        assert_eq!(d1.face(&s, 0, 1), e);
        assert_eq!(d1.face(&s, 0, 0), e);
        let t = d1.face(&s, 0, 2);
        assert_eq!(t.word(), vec![0]);
    }

    #[test]
    fn normalize_rejects_out_of_range() {
        let d1 = standard(1);
        let v = d1.nondegenerate(CellId(0));
        assert_eq!(
            d1.normalize(&[1], &v),
            Err(Error::DegeneracyOutOfRange { index: 1, dim: 0 })
        );
    }

    #[test]
    fn from_word_checks_order() {
        assert!(Simplex::from_word(&[0, 1], CellId(0), 0).is_err());
        assert!(Simplex::from_word(&[2, 0], CellId(0), 0).is_err());
        let s = Simplex::from_word(&[1, 0], CellId(0), 0).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn simplex_counts_match_listing() {
        let d3 = standard(3);
        for n in 0..5 {
            assert_eq!(d3.simplices([n]).len(), d3.simplex_count([n]));
            // monotone maps [n] -> [3]
            assert_eq!(d3.simplex_count([n]), binomial(n + 4, n + 1));
        }
    }
}
