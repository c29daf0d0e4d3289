//! The homotopy category of a finite quasi-category and its core `J(X)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::adjunction::KUpper;
use crate::category::{Arrow, FiniteCategory};
use crate::colimit::UnionFind;
use crate::complex::{CellId, Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::limit::{fiber_product, simplex_label};
use crate::map::{same_complex, Morphism, SimplicialMap};
use crate::standard::subcomplex;

/// `Ho(X)` with the class of every edge.
#[derive(Clone, Debug)]
pub struct HomotopyCategory {
    pub category: FiniteCategory,
    object_of: HashMap<CellId, usize>,
    arrow_of: HashMap<Simplex<1>, usize>,
}

impl HomotopyCategory {
    pub fn object(&self, vertex: CellId) -> usize {
        self.object_of[&vertex]
    }

    /// The arrow of `Ho(X)` represented by an edge (degenerate edges allowed).
    pub fn arrow(&self, edge: &Simplex<1>) -> usize {
        self.arrow_of[edge]
    }
}

/// Objects are vertices; arrows are edges modulo the relation generated by
/// 2-simplices with a degenerate outer edge. Composites are read off all
/// 2-simplices. A missing or ambiguous composite, or a failed category law,
/// rejects `X` as not a quasi-category.
pub fn homotopy_category(x: &SimplicialSet) -> Result<HomotopyCategory> {
    let vertices: Vec<CellId> = x.vertices().collect();
    let object_of: HashMap<CellId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = x.simplices([1]);
    let index: HashMap<&Simplex<1>, usize> = edges.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let triangles = x.simplices([2]);
    let faces = |t: &Simplex<1>| -> [usize; 3] { std::array::from_fn(|i| index[&x.face(t, 0, i)]) };
    let mut uf = UnionFind::new(edges.len());
    for t in &triangles {
        let [d0, d1, d2] = faces(t);
        if !edges[d0].is_nondegenerate() {
            uf.union(d2, d1);
        }
        if !edges[d2].is_nondegenerate() {
            uf.union(d0, d1);
        }
    }
    let mut class = vec![usize::MAX; edges.len()];
    let mut arrows = Vec::new();
    for i in 0..edges.len() {
        let r = uf.find(i);
        if class[r] == usize::MAX {
            class[r] = arrows.len();
            let e = &edges[r];
            arrows.push(Arrow {
                name: simplex_label(x, e),
                source: object_of[&x.face(e, 0, 1).cell],
                target: object_of[&x.face(e, 0, 0).cell],
            });
        }
        class[i] = class[r];
    }
    let identities: Vec<usize> = vertices
        .iter()
        .map(|&v| class[index[&x.degeneracy(&x.nondegenerate(v), 0, 0)]])
        .collect();
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for t in &triangles {
        let [d0, d1, d2] = faces(t);
        let (g, f, h) = (class[d0], class[d2], class[d1]);
        if let Some(&old) = table.get(&(g, f)) {
            if old != h {
                return Err(Error::NotAQuasiCategory(format!(
                    "{} ∘ {} has two homotopy classes",
                    arrows[g].name, arrows[f].name
                )));
            }
        }
        table.insert((g, f), h);
    }
    for (f, a) in arrows.iter().enumerate() {
        for (g, b) in arrows.iter().enumerate() {
            if a.target == b.source && !table.contains_key(&(g, f)) {
                return Err(Error::NotAQuasiCategory(format!(
                    "no composite for {} then {}",
                    a.name, b.name
                )));
            }
        }
    }
    let mut composites: Vec<(usize, usize, usize)> = table.into_iter().map(|((g, f), h)| (g, f, h)).collect();
    composites.sort_unstable();
    let objects = vertices.iter().map(|&v| x.label(v).to_string()).collect();
    let category = FiniteCategory::new(objects, arrows, identities, &composites)
        .map_err(|e| Error::NotAQuasiCategory(e.to_string()))?;
    let arrow_of = edges.into_iter().zip(class).collect();
    Ok(HomotopyCategory {
        category,
        object_of,
        arrow_of,
    })
}

/// The inclusion `J(X) ⊂ X` of the simplices all of whose edges are
/// invertible in `Ho(X)`.
pub fn core_j(x: &Arc<SimplicialSet>) -> Result<SimplicialMap> {
    let ho = homotopy_category(x)?;
    let c = &ho.category;
    subcomplex(x, |cell| {
        let s = x.nondegenerate(cell);
        let n = s.dim();
        (0..n).all(|i| (i + 1..=n).all(|j| c.is_iso(ho.arrow(&x.apply(&s, 0, &[i as u8, j as u8])))))
    })
}

/// `J(X)` as a complex.
pub fn core(x: &Arc<SimplicialSet>) -> Result<SimplicialSet> {
    Ok((**core_j(x)?.source()).clone())
}

/// The unique `h` with `mono ∘ h = f`, when `f` lands in the image of `mono`.
pub fn factor_through_mono(mono: &SimplicialMap, f: &SimplicialMap) -> Result<SimplicialMap> {
    if !same_complex(mono.target(), f.target()) {
        return Err(Error::CodomainMismatch);
    }
    let mut preimage = HashMap::new();
    for c in mono.source().cell_ids() {
        let img = mono.image(c);
        if !img.is_nondegenerate() {
            return Err(Error::NotAMap("factoring map is not a monomorphism".into()));
        }
        if preimage.insert(img.cell, c).is_some() {
            return Err(Error::NotAMap("factoring map is not a monomorphism".into()));
        }
    }
    let images = f
        .images()
        .iter()
        .map(|s| {
            preimage
                .get(&s.cell)
                .map(|&c| Simplex {
                    ops: s.ops.clone(),
                    cell: c,
                })
                .ok_or_else(|| Error::NotAMap(format!("{} misses the subobject", f.target().label(s.cell))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism::new_unchecked(f.source().clone(), mono.source().clone(), images))
}

/// The comparison `k^!(X) → J(X)` through which the counit factors.
pub fn counit_comparison(k: &KUpper) -> Result<SimplicialMap> {
    let j = core_j(k.counit.target())?;
    factor_through_mono(&j, &k.counit)
}

/// `J(f) : J(X) → J(Y)` together with both core inclusions.
pub fn core_map(f: &SimplicialMap) -> Result<(SimplicialMap, SimplicialMap, SimplicialMap)> {
    let jx = core_j(f.source())?;
    let jy = core_j(f.target())?;
    let jf = factor_through_mono(&jy, &jx.then(f)?)?;
    Ok((jf, jx, jy))
}

/// Whether the square `J(X) → J(Y)`, `X → Y` is a pullback: the comparison
/// `J(X) → J(Y) ×_Y X` is an isomorphism.
pub fn core_square_is_pullback(f: &SimplicialMap) -> Result<bool> {
    let (jf, jx, jy) = core_map(f)?;
    let p = fiber_product(&jy, f)?;
    Ok(p.pairing(&jf, &jx)?.is_iso())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_isomorphic;
    use crate::nerve::Nerve;
    use crate::standard::{boundary, standard};

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    fn nerve_of(c: FiniteCategory, n: usize) -> Arc<SimplicialSet> {
        Nerve::new(&arc(c), n).complex
    }

    #[test]
    fn homotopy_category_of_nerves() {
        for c in [FiniteCategory::ordinal(2), FiniteCategory::chaotic(1), FiniteCategory::discrete(2)] {
            let ho = homotopy_category(&nerve_of(c.clone(), 3)).unwrap();
            assert!(crate::category::find_category_isomorphism(&ho.category, &c).is_some());
        }
        let m = FiniteCategory::monoid(&[vec![0, 1], vec![1, 1]]).unwrap();
        let ho = homotopy_category(&nerve_of(m.clone(), 3)).unwrap();
        assert_eq!(ho.category.arrow_count(), 2);
    }

    #[test]
    fn boundary_is_rejected() {
        assert!(matches!(
            homotopy_category(&boundary(2).unwrap()),
            Err(Error::NotAQuasiCategory(_))
        ));
        assert!(homotopy_category(&standard(3)).is_ok());
    }

    #[test]
    fn core_examples() {
        let j = core(&nerve_of(FiniteCategory::ordinal(1), 3)).unwrap();
        assert_eq!(j.cell_counts(), vec![2]);
        let g = nerve_of(FiniteCategory::chaotic(1), 3);
        assert!(core_j(&g).unwrap().is_iso());
    }

    #[test]
    fn counit_comparison_for_chaotic() {
        let nv = Nerve::new(&arc(FiniteCategory::chaotic(1)), 3);
        let k = crate::adjunction::k_upper_exact(&nv);
        let c = counit_comparison(&k).unwrap();
        assert!(c.is_iso());
    }

    #[test]
    fn core_of_poset_nerve_is_discrete() {
        let x = nerve_of(FiniteCategory::ordinal(2), 2);
        let j = arc(core(&x).unwrap());
        let d = nerve_of(FiniteCategory::discrete(3), 2);
        assert!(is_isomorphic(&j, &d));
    }

    #[test]
    fn identity_square_is_pullback() {
        let x = nerve_of(FiniteCategory::ordinal(1), 2);
        assert!(core_square_is_pullback(&Morphism::identity(&x)).unwrap());
    }
}
