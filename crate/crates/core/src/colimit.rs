//! Finite colimits: disjoint unions, quotients, pushouts, coequalizers.
//!
//! Quotients are computed on all simplices up to the top degree of the base:
//! a union-find over simplices, closed under faces and degeneracies, then the
//! classes are re-read as a complex through [`crate::model`]. A class is
//! degenerate exactly when it contains a degenerate simplex.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{CellId, Complex, ComplexBuilder, Simplex};
use crate::error::{Error, Result};
use crate::map::{same_complex, Morphism};
use crate::model::{degree_box, materialize, Model};

/// Disjoint union with its coproduct injections.
pub fn disjoint_union<const D: usize>(parts: &[Arc<Complex<D>>]) -> (Arc<Complex<D>>, Vec<Morphism<D>>) {
    let mut degrees: Vec<[usize; D]> = parts.iter().flat_map(|p| p.degrees()).collect();
    degrees.sort();
    degrees.dedup();
    let mut b = ComplexBuilder::new();
    let mut new_ids: Vec<Vec<CellId>> = parts.iter().map(|p| vec![CellId(0); p.len()]).collect();
    for deg in degrees {
        for (k, p) in parts.iter().enumerate() {
            for c in p.cells_of(deg) {
                let cell = p.cell(c);
                let faces = std::array::from_fn(|d| {
                    cell.faces[d]
                        .iter()
                        .map(|f| Simplex {
                            ops: f.ops.clone(),
                            cell: new_ids[k][f.cell.index()],
                        })
                        .collect()
                });
                new_ids[k][c.index()] = b.add_cell(deg, faces, cell.label.clone());
            }
        }
    }
    let union = Arc::new(b.finish());
    let injections = parts
        .iter()
        .zip(&new_ids)
        .map(|(p, ids)| {
            let images = p
                .cell_ids()
                .map(|c| union.nondegenerate(ids[c.index()]))
                .collect();
            Morphism::new_unchecked(p.clone(), union.clone(), images)
        })
        .collect();
    (union, injections)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Returns true when two classes merged; the smaller index stays root.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

struct ClassModel<'a, const D: usize> {
    base: &'a Complex<D>,
    simplices: Vec<Simplex<D>>,
    index: HashMap<Simplex<D>, usize>,
    by_degree: HashMap<[usize; D], Vec<usize>>,
    root: Vec<usize>,
}

impl<const D: usize> Model<D> for ClassModel<'_, D> {
    type Key = usize;

    fn simplices(&self, degree: [usize; D]) -> Vec<usize> {
        let mut roots: Vec<usize> = self
            .by_degree
            .get(&degree)
            .map(|v| v.iter().map(|&i| self.root[i]).collect())
            .unwrap_or_default();
        roots.sort_unstable();
        roots.dedup();
        roots
    }

    fn degree(&self, key: &usize) -> [usize; D] {
        self.simplices[*key].degree()
    }

    fn face(&self, key: &usize, dir: usize, i: usize) -> usize {
        let s = self.base.face(&self.simplices[*key], dir, i);
        self.root[self.index[&s]]
    }

    fn degeneracy(&self, key: &usize, dir: usize, i: usize) -> usize {
        let s = self.base.degeneracy(&self.simplices[*key], dir, i);
        self.root[self.index[&s]]
    }

    fn label(&self, key: &usize) -> String {
        self.base.label(self.simplices[*key].cell).to_string()
    }
}

/// Quotient of `base` by the simplicial equivalence relation generated by
/// `pairs`; returns the quotient map.
pub fn quotient<const D: usize>(
    base: &Arc<Complex<D>>,
    pairs: &[(Simplex<D>, Simplex<D>)],
) -> Result<Morphism<D>> {
    let bound = base.max_degree();
    let degrees = degree_box(bound);
    let mut simplices = Vec::new();
    let mut index = HashMap::new();
    let mut by_degree: HashMap<[usize; D], Vec<usize>> = HashMap::new();
    for &deg in &degrees {
        for s in base.simplices(deg) {
            by_degree.entry(deg).or_default().push(simplices.len());
            index.insert(s.clone(), simplices.len());
            simplices.push(s);
        }
    }
    let mut uf = UnionFind::new(simplices.len());
    let mut queue: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        if a.degree() != b.degree() {
            return Err(Error::Malformed("identified simplices differ in degree".into()));
        }
        let ia = *index
            .get(a)
            .ok_or_else(|| Error::Malformed("identified simplex not in the base".into()))?;
        let ib = *index
            .get(b)
            .ok_or_else(|| Error::Malformed("identified simplex not in the base".into()))?;
        queue.push((ia, ib));
    }
    while let Some((a, b)) = queue.pop() {
        if !uf.union(a, b) {
            continue;
        }
        let (sa, sb) = (&simplices[a], &simplices[b]);
        let deg = sa.degree();
        for d in 0..D {
            if deg[d] > 0 {
                for i in 0..=deg[d] {
                    queue.push((index[&base.face(sa, d, i)], index[&base.face(sb, d, i)]));
                }
            }
            if deg[d] < bound[d] {
                for i in 0..=deg[d] {
                    queue.push((
                        index[&base.degeneracy(sa, d, i)],
                        index[&base.degeneracy(sb, d, i)],
                    ));
                }
            }
        }
    }
    let root: Vec<usize> = (0..simplices.len()).map(|i| uf.find(i)).collect();
    let model = ClassModel {
        base,
        simplices,
        index,
        by_degree,
        root,
    };
    let present = materialize(&model, &degrees);
    let images = base
        .cell_ids()
        .map(|c| {
            let k = model.root[model.index[&base.nondegenerate(c)]];
            present
                .simplex_of(&model, &k)
                .expect("every class has a nondegenerate representative")
        })
        .collect();
    Ok(Morphism::new_unchecked(base.clone(), present.complex.clone(), images))
}

/// Pushout of `B ← A → C`, returned with both cocone legs.
#[derive(Clone, Debug)]
pub struct Pushout<const D: usize> {
    pub object: Arc<Complex<D>>,
    pub left: Morphism<D>,
    pub right: Morphism<D>,
}

pub fn pushout<const D: usize>(f: &Morphism<D>, g: &Morphism<D>) -> Result<Pushout<D>> {
    if !same_complex(f.source(), g.source()) {
        return Err(Error::DomainMismatch);
    }
    let (u, inj) = disjoint_union(&[f.target().clone(), g.target().clone()]);
    let pairs: Vec<_> = f
        .source()
        .cell_ids()
        .map(|a| (inj[0].apply(f.image(a)), inj[1].apply(g.image(a))))
        .collect();
    let q = quotient(&u, &pairs)?;
    Ok(Pushout {
        object: q.target().clone(),
        left: inj[0].then(&q)?,
        right: inj[1].then(&q)?,
    })
}

/// Coequalizer of `f, g : A ⇉ B`, as the map `B → Q`.
pub fn coequalizer<const D: usize>(f: &Morphism<D>, g: &Morphism<D>) -> Result<Morphism<D>> {
    if !same_complex(f.source(), g.source()) {
        return Err(Error::DomainMismatch);
    }
    if !same_complex(f.target(), g.target()) {
        return Err(Error::CodomainMismatch);
    }
    let pairs: Vec<_> = f
        .source()
        .cell_ids()
        .map(|a| (f.image(a).clone(), g.image(a).clone()))
        .collect();
    quotient(f.target(), &pairs)
}

/// The unique `P → W` with `h = result ∘ q` for a surjective quotient map `q`.
pub fn factor_through_quotient<const D: usize>(q: &Morphism<D>, h: &Morphism<D>) -> Result<Morphism<D>> {
    if !same_complex(q.source(), h.source()) {
        return Err(Error::DomainMismatch);
    }
    let p = q.target();
    let mut images: Vec<Option<Simplex<D>>> = vec![None; p.len()];
    for u in q.source().cell_ids() {
        let img = q.image(u);
        if img.is_nondegenerate() && images[img.cell.index()].is_none() {
            images[img.cell.index()] = Some(h.image(u).clone());
        }
    }
    let images = images
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::NotAMap("quotient map is not onto".into())))
        .collect::<Result<Vec<_>>>()?;
    let out = Morphism::new(p.clone(), h.target().clone(), images)?;
    if !q.then(&out)?.equals(h) {
        return Err(Error::NotAMap("map does not factor through the quotient".into()));
    }
    Ok(out)
}

impl<const D: usize> Pushout<D> {
    /// The induced map out of the pushout.
    pub fn factor(&self, to_b: &Morphism<D>, to_c: &Morphism<D>) -> Result<Morphism<D>> {
        let mut images: Vec<Option<Simplex<D>>> = vec![None; self.object.len()];
        for (leg, h) in [(&self.left, to_b), (&self.right, to_c)] {
            for u in leg.source().cell_ids() {
                let img = leg.image(u);
                if img.is_nondegenerate() && images[img.cell.index()].is_none() {
                    images[img.cell.index()] = Some(h.image(u).clone());
                }
            }
        }
        let images = images
            .into_iter()
            .map(|x| x.ok_or_else(|| Error::NotAMap("pushout legs are not jointly onto".into())))
            .collect::<Result<Vec<_>>>()?;
        let out = Morphism::new(self.object.clone(), to_b.target().clone(), images)?;
        if !self.left.then(&out)?.equals(to_b) || !self.right.then(&out)?.equals(to_c) {
            return Err(Error::NotAMap("cocone does not factor".into()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{boundary_inclusion, standard, terminal, to_terminal};

    #[test]
    fn circle_from_glued_interval() {
        let i = boundary_inclusion(1).unwrap();
        let c = to_terminal(i.source());
        let p = pushout(&i, &c).unwrap();
        assert_eq!(p.object.cell_counts(), vec![1, 1]);
        p.object.validate().unwrap();
    }

    #[test]
    fn coequalizer_of_equal_maps_is_identity_shaped() {
        let i = boundary_inclusion(2).unwrap();
        let q = coequalizer(&i, &i).unwrap();
        assert!(q.is_iso());
    }

    #[test]
    fn disjoint_union_counts() {
        let a = Arc::new(standard(1));
        let b = Arc::new(terminal());
        let (u, inj) = disjoint_union(&[a, b]);
        assert_eq!(u.cell_counts(), vec![3, 1]);
        assert!(inj.iter().all(|m| m.is_mono()));
    }

    #[test]
    fn pushout_factorization() {
        let i = boundary_inclusion(1).unwrap();
        let c = to_terminal(i.source());
        let p = pushout(&i, &c).unwrap();
        let w = Arc::new(crate::standard::point::<1>());
        let f = to_terminal(i.target()).rebased(i.target().clone(), w.clone()).unwrap();
        let g = to_terminal(c.target()).rebased(c.target().clone(), w).unwrap();
        let h = p.factor(&f, &g).unwrap();
        assert_eq!(h.target().cell_counts(), vec![1]);
    }
}
