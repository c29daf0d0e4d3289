//! Standard simplices, boundaries, horns, spines, subcomplexes and skeleta.

use std::sync::Arc;

use crate::complex::{binomial, CellId, Complex, ComplexBuilder, Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::map::{Morphism, SimplicialMap};
use crate::ops::{self, Op};

pub(crate) fn vertex_label(vs: &[u8]) -> String {
    if vs.iter().all(|&v| v < 10) {
        vs.iter().map(|v| char::from(b'0' + v)).collect()
    } else {
        vs.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Position of a nonempty subset of `{0, …, n}` among the cells of `Δ^n`.
pub fn subset_cell(n: usize, subset: &[u8]) -> CellId {
    let k = subset.len();
    let mut offset: usize = (1..k).map(|j| binomial(n + 1, j)).sum();
    // lexicographic rank among k-subsets of an (n+1)-set
    let mut prev: i64 = -1;
    for (pos, &v) in subset.iter().enumerate() {
        for w in (prev + 1) as usize..v as usize {
            offset += binomial(n - w, k - pos - 1);
        }
        prev = v as i64;
    }
    CellId(offset as u32)
}

/// `Δ^n`: one nondegenerate m-cell per (m+1)-subset of `{0, …, n}`.
pub fn standard(n: usize) -> SimplicialSet {
    let mut b = ComplexBuilder::new();
    for k in 1..=n + 1 {
        for subset in k_subsets(n + 1, k) {
            let faces = if k == 1 {
                Vec::new()
            } else {
                (0..k)
                    .map(|i| {
                        let mut f = subset.clone();
                        f.remove(i);
                        Simplex::cell(subset_cell(n, &f), [k - 2])
                    })
                    .collect()
            };
            b.add_cell([k - 1], [faces], vertex_label(&subset));
        }
    }
    b.finish()
}

pub(crate) fn k_subsets(size: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, size: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..size {
            cur.push(v as u8);
            rec(v + 1, size, k, cur, out);
            cur.pop();
        }
    }
    rec(0, size, k, &mut cur, &mut out);
    out
}

/// The simplex of `Δ^n` named by a monotone map `[m] → [n]`.
pub fn standard_simplex(n: usize, theta: &[u8]) -> Simplex<1> {
    let (epi, image) = ops::epi_mono(theta);
    Simplex {
        ops: [epi],
        cell: subset_cell(n, &image),
    }
}

/// The map `Δ^m → Δ^n` induced by a monotone `theta : [m] → [n]`.
pub fn standard_map(m: usize, n: usize, theta: &[u8]) -> SimplicialMap {
    standard_map_between(&Arc::new(standard(m)), &Arc::new(standard(n)), theta)
}

pub(crate) fn standard_map_between(
    source: &Arc<SimplicialSet>,
    target: &Arc<SimplicialSet>,
    theta: &[u8],
) -> SimplicialMap {
    let n = target.dim().unwrap_or(0);
    let m = source.dim().unwrap_or(0);
    let images = subsets_in_order(m)
        .into_iter()
        .map(|s| {
            let composed: Op = s.iter().map(|&v| theta[v as usize]).collect();
            standard_simplex(n, &composed)
        })
        .collect();
    Morphism::new_unchecked(source.clone(), target.clone(), images)
}

fn subsets_in_order(n: usize) -> Vec<Vec<u8>> {
    (1..=n + 1).flat_map(|k| k_subsets(n + 1, k)).collect()
}

/// The vertices of a cell of `Δ^n`.
pub fn cell_vertices(n: usize, id: CellId) -> Vec<u8> {
    subsets_in_order(n).swap_remove(id.index())
}

pub fn terminal() -> SimplicialSet {
    standard(0)
}

/// The unique map to the point.
pub fn to_terminal<const D: usize>(x: &Arc<Complex<D>>) -> Morphism<D> {
    let pt = Arc::new(point::<D>());
    to_point(x, &pt)
}

pub(crate) fn to_point<const D: usize>(x: &Arc<Complex<D>>, pt: &Arc<Complex<D>>) -> Morphism<D> {
    let images = x
        .cell_ids()
        .map(|c| {
            let deg = x.cell(c).degree;
            Simplex {
                ops: std::array::from_fn(|d| (0..=deg[d]).map(|_| 0u8).collect()),
                cell: CellId(0),
            }
        })
        .collect();
    Morphism::new_unchecked(x.clone(), pt.clone(), images)
}

/// The one-cell complex in multidegree zero.
pub fn point<const D: usize>() -> Complex<D> {
    let mut b = ComplexBuilder::new();
    b.add_cell([0; D], std::array::from_fn(|_| Vec::new()), "*");
    b.finish()
}

/// Full subcomplex on the kept cells, with its inclusion. Kept cells must be
/// closed under faces.
pub fn subcomplex<const D: usize>(
    x: &Arc<Complex<D>>,
    keep: impl Fn(CellId) -> bool,
) -> Result<Morphism<D>> {
    let mut new_id = vec![None; x.len()];
    let mut b = ComplexBuilder::new();
    let mut images = Vec::new();
    for c in x.cell_ids() {
        if !keep(c) {
            continue;
        }
        let cell = x.cell(c);
        let mut faces: [Vec<Simplex<D>>; D] = std::array::from_fn(|_| Vec::new());
        for d in 0..D {
            for f in &cell.faces[d] {
                let id = new_id[f.cell.index()].ok_or_else(|| {
                    Error::Malformed(format!("subcomplex is not closed under faces at {}", cell.label))
                })?;
                faces[d].push(Simplex {
                    ops: f.ops.clone(),
                    cell: id,
                });
            }
        }
        new_id[c.index()] = Some(b.add_cell(cell.degree, faces, cell.label.clone()));
        images.push(x.nondegenerate(c));
    }
    let sub = Arc::new(b.finish());
    Ok(Morphism::new_unchecked(sub, x.clone(), images))
}

fn standard_subcomplex(n: usize, keep: impl Fn(&[u8]) -> bool) -> Result<SimplicialMap> {
    let x = Arc::new(standard(n));
    let subsets = subsets_in_order(n);
    subcomplex(&x, |c| keep(&subsets[c.index()]))
}

/// `∂Δ^n ⊂ Δ^n`.
pub fn boundary_inclusion(n: usize) -> Result<SimplicialMap> {
    if n == 0 {
        // ∂Δ^0 is empty
        let x = Arc::new(standard(0));
        return Ok(Morphism::new_unchecked(Arc::new(Complex::empty()), x, Vec::new()));
    }
    standard_subcomplex(n, |s| s.len() <= n)
}

pub fn boundary(n: usize) -> Result<SimplicialSet> {
    Ok((*boundary_inclusion(n)?.source().clone()).clone())
}

/// `Λ^n_k ⊂ Δ^n`: drop the top cell and the face opposite vertex `k`.
pub fn horn_inclusion(n: usize, k: usize) -> Result<SimplicialMap> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { min: 1, got: 0 });
    }
    if k > n {
        return Err(Error::HornOutOfRange { n, k });
    }
    standard_subcomplex(n, |s| {
        s.len() < n || (s.len() == n && s.contains(&(k as u8)))
    })
}

pub fn horn(n: usize, k: usize) -> Result<SimplicialSet> {
    Ok((*horn_inclusion(n, k)?.source().clone()).clone())
}

/// The chain of edges `{i, i+1}` inside `Δ^n`.
pub fn spine_inclusion(n: usize) -> SimplicialMap {
    standard_subcomplex(n, |s| s.len() == 1 || (s.len() == 2 && s[1] == s[0] + 1))
        .expect("spine is closed under faces")
}

/// Cells of dimension at most `n`.
pub fn skeleton_inclusion(x: &Arc<SimplicialSet>, n: usize) -> SimplicialMap {
    subcomplex(x, |c| x.cell(c).degree[0] <= n).expect("skeleta are subcomplexes")
}

pub fn skeleton(x: &Arc<SimplicialSet>, n: usize) -> SimplicialSet {
    (*skeleton_inclusion(x, n).source().clone()).clone()
}

/// Cells of horizontal degree at most `n`.
pub fn horizontal_skeleton_inclusion<const D: usize>(x: &Arc<Complex<D>>, n: usize) -> Morphism<D> {
    subcomplex(x, |c| x.cell(c).degree[0] <= n).expect("skeleta are subcomplexes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_counts_are_binomial() {
        assert_eq!(standard(2).cell_counts(), vec![3, 3, 1]);
        assert_eq!(standard(4).cell_counts(), vec![5, 10, 10, 5, 1]);
        standard(4).validate().unwrap();
    }

    #[test]
    fn boundary_and_horn_counts() {
        assert_eq!(boundary(3).unwrap().cell_counts(), vec![4, 6, 4]);
        let h = horn(2, 1).unwrap();
        assert_eq!(h.cell_counts(), vec![3, 2]);
        let labels: Vec<_> = h.cells_of([1]).map(|c| h.label(c).to_string()).collect();
        assert_eq!(labels, vec!["01", "12"]);
        assert_eq!(horn(2, 3), Err(Error::HornOutOfRange { n: 2, k: 3 }));
        assert!(horn(0, 0).is_err());
    }

    #[test]
    fn subset_rank_matches_order() {
        for n in 0..5 {
            for (i, s) in subsets_in_order(n).iter().enumerate() {
                assert_eq!(subset_cell(n, s), CellId(i as u32));
            }
        }
    }

    #[test]
    fn standard_maps_are_maps() {
        for theta in ops::monotone_maps(2, 3) {
            standard_map(2, 3, &theta).validate().unwrap();
        }
    }

    #[test]
    fn skeleton_of_triangle() {
        let d2 = Arc::new(standard(2));
        assert_eq!(skeleton(&d2, 1).cell_counts(), vec![3, 3]);
        assert_eq!(skeleton(&d2, 2), *d2);
    }

    #[test]
    fn spine_of_two_simplex() {
        let s = spine_inclusion(2);
        assert_eq!(s.source().cell_counts(), vec![3, 2]);
        assert!(s.is_mono());
    }
}
