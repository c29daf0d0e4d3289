//! Products, fiber products and truncated mapping spaces of simplicial sets.

use std::sync::Arc;

use crate::complex::{Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::hom::enumerate_maps;
use crate::map::{same_complex, Morphism, SimplicialMap};
use crate::model::{dims, materialize, Model, Presented};
use crate::ops;
use crate::standard::{standard, standard_map_between};

pub(crate) fn simplex_label(x: &SimplicialSet, s: &Simplex<1>) -> String {
    let w = s.word();
    if w.is_empty() {
        x.label(s.cell).to_string()
    } else {
        let w: Vec<String> = w.iter().map(|i| i.to_string()).collect();
        format!("s{}({})", w.join(""), x.label(s.cell))
    }
}

struct PairModel<'a> {
    x: &'a SimplicialSet,
    y: &'a SimplicialSet,
    over: Option<(&'a SimplicialMap, &'a SimplicialMap)>,
}

type Pair = (Simplex<1>, Simplex<1>);

impl Model<1> for PairModel<'_> {
    type Key = Pair;

    fn simplices(&self, degree: [usize; 1]) -> Vec<Pair> {
        let ys = self.y.simplices(degree);
        let mut out = Vec::new();
        for a in self.x.simplices(degree) {
            for b in &ys {
                if let Some((f, g)) = self.over {
                    if f.apply(&a) != g.apply(b) {
                        continue;
                    }
                }
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }

    fn degree(&self, key: &Pair) -> [usize; 1] {
        key.0.degree()
    }

    fn face(&self, key: &Pair, _dir: usize, i: usize) -> Pair {
        (self.x.face(&key.0, 0, i), self.y.face(&key.1, 0, i))
    }

    fn degeneracy(&self, key: &Pair, _dir: usize, i: usize) -> Pair {
        (self.x.degeneracy(&key.0, 0, i), self.y.degeneracy(&key.1, 0, i))
    }

    fn label(&self, key: &Pair) -> String {
        format!("({},{})", simplex_label(self.x, &key.0), simplex_label(self.y, &key.1))
    }
}

/// `X ×_Z Y` (or `X × Y`) with its projections and the pair dictionary.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    presented: Presented<Pair, 1>,
    over: Option<(SimplicialMap, SimplicialMap)>,
}

fn build_product(
    x: &Arc<SimplicialSet>,
    y: &Arc<SimplicialSet>,
    over: Option<(&SimplicialMap, &SimplicialMap)>,
) -> Product {
    let model = PairModel { x, y, over };
    let top = x.dim().unwrap_or(0) + y.dim().unwrap_or(0);
    let presented = materialize(&model, &dims(top));
    let object = presented.complex.clone();
    let left = Morphism::new_unchecked(
        object.clone(),
        x.clone(),
        presented.keys.iter().map(|k| k.0.clone()).collect(),
    );
    let right = Morphism::new_unchecked(
        object.clone(),
        y.clone(),
        presented.keys.iter().map(|k| k.1.clone()).collect(),
    );
    Product {
        object,
        left,
        right,
        presented,
        over: over.map(|(f, g)| (f.clone(), g.clone())),
    }
}

pub fn product(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Product {
    build_product(x, y, None)
}

/// `X ×_Z Y` for `f : X → Z`, `g : Y → Z`.
pub fn fiber_product(f: &SimplicialMap, g: &SimplicialMap) -> Result<Product> {
    if !same_complex(f.target(), g.target()) {
        return Err(Error::CodomainMismatch);
    }
    Ok(build_product(f.source(), g.source(), Some((f, g))))
}

impl Product {
    /// The normal form of the simplex `(a, b)`, if it lies in the (fiber) product.
    pub fn pair(&self, a: &Simplex<1>, b: &Simplex<1>) -> Option<Simplex<1>> {
        if a.degree() != b.degree() {
            return None;
        }
        let model = PairModel {
            x: self.left.target(),
            y: self.right.target(),
            over: self.over.as_ref().map(|(f, g)| (f, g)),
        };
        if let Some((f, g)) = &self.over {
            if f.apply(a) != g.apply(b) {
                return None;
            }
        }
        self.presented.simplex_of(&model, &(a.clone(), b.clone()))
    }

    /// The unique `W → X ×_Z Y` with the given components.
    pub fn pairing(&self, p: &SimplicialMap, q: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_complex(p.source(), q.source()) {
            return Err(Error::DomainMismatch);
        }
        if !same_complex(p.target(), self.left.target()) || !same_complex(q.target(), self.right.target()) {
            return Err(Error::CodomainMismatch);
        }
        let images = p
            .source()
            .cell_ids()
            .map(|c| {
                self.pair(p.image(c), q.image(c))
                    .ok_or(Error::SquareDoesNotCommute)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::new_unchecked(p.source().clone(), self.object.clone(), images))
    }
}

/// `f × g : X × Y → X' × Y'`, between the given products.
pub fn product_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    source: &Product,
    target: &Product,
) -> Result<SimplicialMap> {
    let p = source.left.then(f)?;
    let q = source.right.then(g)?;
    target.pairing(&p, &q)
}

struct MappingModel<'a> {
    x: &'a Arc<SimplicialSet>,
    /// `K × Δ^n` for `n ≤ N`.
    levels: Vec<Product>,
    /// `id × δ^i : K × Δ^{n-1} → K × Δ^n`, indexed `[n][i]`.
    faces: Vec<Vec<SimplicialMap>>,
    /// `id × σ^i : K × Δ^{n+1} → K × Δ^n`, indexed `[n][i]`.
    degeneracies: Vec<Vec<SimplicialMap>>,
}

type MapKey = (usize, Vec<Simplex<1>>);

fn precompose(h: &SimplicialMap, images: &[Simplex<1>]) -> Vec<Simplex<1>> {
    h.images()
        .iter()
        .map(|s| {
            let img = &images[s.cell.index()];
            Simplex {
                ops: [ops::compose(&img.ops[0], &s.ops[0])],
                cell: img.cell,
            }
        })
        .collect()
}

impl Model<1> for MappingModel<'_> {
    type Key = MapKey;

    fn simplices(&self, degree: [usize; 1]) -> Vec<MapKey> {
        enumerate_maps(&self.levels[degree[0]].object, self.x)
            .into_iter()
            .map(|m| (degree[0], m.images().to_vec()))
            .collect()
    }

    fn degree(&self, key: &MapKey) -> [usize; 1] {
        [key.0]
    }

    fn face(&self, key: &MapKey, _dir: usize, i: usize) -> MapKey {
        (key.0 - 1, precompose(&self.faces[key.0][i], &key.1))
    }

    fn degeneracy(&self, key: &MapKey, _dir: usize, i: usize) -> MapKey {
        (key.0 + 1, precompose(&self.degeneracies[key.0][i], &key.1))
    }

    fn label(&self, key: &MapKey) -> String {
        let parts: Vec<String> = key.1.iter().map(|s| simplex_label(self.x, s)).collect();
        format!("[{}]", parts.join(" "))
    }
}

/// The `N`-skeleton of `X^K`: `n`-simplices are maps `K × Δ^n → X`.
pub fn mapping_space(k: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, n: usize) -> SimplicialSet {
    let simplices: Vec<Arc<SimplicialSet>> = (0..=n + 1).map(|m| Arc::new(standard(m))).collect();
    let levels: Vec<Product> = simplices.iter().map(|d| product(k, d)).collect();
    let id_k = Morphism::identity(k);
    let faces = (0..=n)
        .map(|m| {
            if m == 0 {
                return Vec::new();
            }
            (0..=m)
                .map(|i| {
                    let d = standard_map_between(&simplices[m - 1], &simplices[m], &ops::coface(m, i));
                    product_map(&id_k, &d, &levels[m - 1], &levels[m]).expect("product map")
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..=n)
        .map(|m| {
            (0..=m)
                .map(|i| {
                    let s = standard_map_between(&simplices[m + 1], &simplices[m], &ops::codegeneracy(m, i));
                    product_map(&id_k, &s, &levels[m + 1], &levels[m]).expect("product map")
                })
                .collect()
        })
        .collect();
    let model = MappingModel {
        x,
        levels,
        faces,
        degeneracies,
    };
    (*materialize(&model, &dims(n)).complex).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{boundary, standard, terminal, to_terminal};

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    #[test]
    fn square_has_two_triangles() {
        let d1 = arc(standard(1));
        let p = product(&d1, &d1);
        assert_eq!(p.object.cell_counts(), vec![4, 5, 2]);
        p.object.validate().unwrap();
    }

    #[test]
    fn fiber_product_over_point_is_product() {
        let d1 = arc(standard(1));
        let pt = arc(crate::standard::point::<1>());
        let f = to_terminal(&d1).rebased(d1.clone(), pt.clone()).unwrap();
        let fp = fiber_product(&f, &f).unwrap();
        let p = product(&d1, &d1);
        assert!(crate::hom::is_isomorphic(&fp.object, &p.object));
    }

    #[test]
    fn mismatched_codomains() {
        let d1 = arc(standard(1));
        let f = to_terminal(&d1);
        let g = Morphism::identity(&d1);
        assert_eq!(fiber_product(&f, &g).unwrap_err(), Error::CodomainMismatch);
    }

    #[test]
    fn mapping_space_vertices() {
        let d1 = arc(standard(1));
        assert_eq!(mapping_space(&d1, &d1, 0).cell_counts(), vec![3]);
        let b = arc(boundary(1).unwrap());
        assert_eq!(mapping_space(&b, &d1, 0).cell_counts(), vec![4]);
        let pt = arc(terminal());
        let d2 = arc(standard(2));
        assert_eq!(mapping_space(&pt, &d2, 2).cell_counts(), vec![3, 3, 1]);
    }

    #[test]
    fn pairing_of_projections_is_identity() {
        let d1 = arc(standard(1));
        let d2 = arc(standard(2));
        let p = product(&d1, &d2);
        let id = p.pairing(&p.left, &p.right).unwrap();
        assert!(id.equals(&Morphism::identity(&p.object)));
    }
}
