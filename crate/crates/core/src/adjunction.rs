//! The adjunctions `k_! ⊣ k^!` and `t_! ⊣ t^!`, with their units and counits.
//!
//! `k_!(X)` is glued from one truncated `Bπ(Δ^d)` per nondegenerate `d`-cell of
//! `X`, identified along faces. A simplex of `Bπ(Δ^d)` is an arbitrary function
//! `[m] → [d]`. `k^!` is computed exactly on nerves (functors out of chaotic
//! groupoids) and by bounded map enumeration on general finite complexes.

use std::sync::Arc;

use crate::bisimplicial::{horizontal_operator_map, Slice};
use crate::category::{enumerate_functors, thin_functor, FiniteCategory, FunctorData};
use crate::colimit::{disjoint_union, factor_through_quotient, quotient};
use crate::complex::{BisimplicialSet, CellId, Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::hom::{enumerate_maps, extension_search};
use crate::map::{same_complex, Morphism, SimplicialMap};
use crate::model::{degree_box, dims, has_nondegenerate, is_nondegenerate, materialize, Model, Presented};
use crate::nerve::{chain_label, nerve_map, Chain, Nerve};
use crate::ops::{self, Op};
use crate::standard::skeleton_inclusion;
use crate::Truncated;

/// The chain of `Bπ(Δ^d)` visiting the objects `values` in order.
pub fn chaotic_chain(c: &FiniteCategory, values: &[u8]) -> Chain {
    let arrows = values
        .windows(2)
        .map(|w| c.hom(w[0] as usize, w[1] as usize)[0])
        .collect();
    (values[0] as usize, arrows)
}

/// The function `[m] → [d]` of a simplex of `Bπ(Δ^d)`.
pub fn chaotic_values(nv: &Nerve, s: &Simplex<1>) -> Op {
    let (start, arrows) = nv.chain_of(s);
    let mut out = Op::new();
    out.push(start as u8);
    for f in arrows {
        out.push(nv.category.arrow(f).target as u8);
    }
    out
}

/// `k_!(X)` truncated at `N`, with the gluing data.
#[derive(Clone, Debug)]
pub struct KShriek {
    pub value: Truncated<Arc<SimplicialSet>>,
    source: Arc<SimplicialSet>,
    /// `Bπ(Δ^d)` truncated at `N`, for each cell dimension `d`.
    pieces: Vec<Nerve>,
    injections: Vec<SimplicialMap>,
    quotient: SimplicialMap,
}

pub fn k_shriek(x: &Arc<SimplicialSet>, n: usize) -> KShriek {
    let top = x.dim().unwrap_or(0);
    let pieces: Vec<Nerve> = (0..=top)
        .map(|d| Nerve::new(&Arc::new(FiniteCategory::chaotic(d)), n))
        .collect();
    let parts: Vec<Arc<SimplicialSet>> = x
        .cell_ids()
        .map(|c| pieces[x.cell(c).degree[0]].complex.clone())
        .collect();
    let (union, injections) = disjoint_union(&parts);
    let mut pairs = Vec::new();
    for c in x.cell_ids() {
        let d = x.cell(c).degree[0];
        if d == 0 {
            continue;
        }
        let small = &pieces[d - 1];
        for (i, face) in x.cell(c).faces[0].iter().enumerate() {
            let delta = ops::coface(d, i);
            let sigma = &face.ops[0];
            let target_piece = &pieces[x.cell(face.cell).degree[0]];
            for w in small.complex.cell_ids() {
                let w = chaotic_values(small, &small.complex.nondegenerate(w));
                let left = pieces[d]
                    .simplex(&chaotic_chain(&pieces[d].category, &ops::compose(&delta, &w)))
                    .expect("within truncation");
                let right = target_piece
                    .simplex(&chaotic_chain(&target_piece.category, &ops::compose(sigma, &w)))
                    .expect("within truncation");
                pairs.push((
                    injections[c.index()].apply(&left),
                    injections[face.cell.index()].apply(&right),
                ));
            }
        }
    }
    let q = quotient(&union, &pairs).expect("pairs lie in the union");
    KShriek {
        value: Truncated {
            value: q.target().clone(),
            bound: n,
            exact: top == 0,
        },
        source: x.clone(),
        pieces,
        injections,
        quotient: q,
    }
}

impl KShriek {
    pub fn complex(&self) -> &Arc<SimplicialSet> {
        &self.value.value
    }

    /// The simplex `(c, φ)` for a cell `c` of `X` and a function `φ : [m] → [dim c]`.
    pub fn simplex(&self, c: CellId, values: &[u8]) -> Option<Simplex<1>> {
        let piece = &self.pieces[self.source.cell(c).degree[0]];
        let s = piece.simplex(&chaotic_chain(&piece.category, values))?;
        Some(self.quotient.apply(&self.injections[c.index()].apply(&s)))
    }

    /// The unit `X → k_!(X)`, induced by `Δ^n ⊂ Bπ(Δ^n)`.
    pub fn unit(&self) -> Result<SimplicialMap> {
        let images = self
            .source
            .cell_ids()
            .map(|c| {
                let d = self.source.cell(c).degree[0];
                self.simplex(c, &ops::identity(d))
                    .ok_or(Error::DimensionTooSmall { min: d, got: self.value.bound })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::new_unchecked(self.source.clone(), self.complex().clone(), images))
    }

    /// `k_!(f) : k_!(X) → k_!(Y)` between computed values at the same bound.
    pub fn map_to(&self, f: &SimplicialMap, target: &KShriek) -> Result<SimplicialMap> {
        if !same_complex(f.source(), &self.source) || !same_complex(f.target(), &target.source) {
            return Err(Error::NotAMap("map does not match the computed functor values".into()));
        }
        let union = self.quotient.source();
        let mut images = vec![None; union.len()];
        for c in self.source.cell_ids() {
            let d = self.source.cell(c).degree[0];
            let piece = &self.pieces[d];
            let img = f.image(c);
            let inj = &self.injections[c.index()];
            for w in piece.complex.cell_ids() {
                let vals = chaotic_values(piece, &piece.complex.nondegenerate(w));
                let pushed = ops::compose(&img.ops[0], &vals);
                let u = inj.image(w);
                images[u.cell.index()] = Some(
                    target
                        .simplex(img.cell, &pushed)
                        .ok_or(Error::DimensionTooSmall { min: pushed.len() - 1, got: target.value.bound })?,
                );
            }
        }
        let h = Morphism::new_unchecked(
            union.clone(),
            target.complex().clone(),
            images.into_iter().map(|x| x.expect("union covered by pieces")).collect(),
        );
        factor_through_quotient(&self.quotient, &h)
    }
}

/// Convenience: `k_!(f)` computed from scratch.
pub fn k_shriek_map(f: &SimplicialMap, n: usize) -> Result<(KShriek, KShriek, SimplicialMap)> {
    let a = k_shriek(f.source(), n);
    let b = k_shriek(f.target(), n);
    let m = a.map_to(f, &b)?;
    Ok((a, b, m))
}

/// The unit `X → k_!(X)` at truncation `N`.
pub fn unit_map(x: &Arc<SimplicialSet>, n: usize) -> Result<SimplicialMap> {
    k_shriek(x, n).unit()
}

type FKey = (usize, FunctorData);

struct ExactModel<'a> {
    c: &'a FiniteCategory,
    chaotic: Vec<FiniteCategory>,
    /// Coface functors `[n-1] → [n]` between chaotic groupoids, `[n][i]`.
    cofaces: Vec<Vec<FunctorData>>,
    codegeneracies: Vec<Vec<FunctorData>>,
}

impl<'a> ExactModel<'a> {
    fn new(c: &'a FiniteCategory, top: usize) -> Self {
        let chaotic: Vec<FiniteCategory> = (0..=top + 1).map(FiniteCategory::chaotic).collect();
        let cofaces = (0..=top + 1)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| {
                        let objs: Vec<usize> = ops::coface(n, i).iter().map(|&v| v as usize).collect();
                        thin_functor(&chaotic[n - 1], &chaotic[n], &objs).unwrap()
                    })
                    .collect()
            })
            .collect();
        let codegeneracies = (0..=top)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        let objs: Vec<usize> = ops::codegeneracy(n, i).iter().map(|&v| v as usize).collect();
                        thin_functor(&chaotic[n + 1], &chaotic[n], &objs).unwrap()
                    })
                    .collect()
            })
            .collect();
        ExactModel {
            c,
            chaotic,
            cofaces,
            codegeneracies,
        }
    }

    fn spine(&self, key: &FKey) -> Chain {
        let (n, f) = key;
        let ch = &self.chaotic[*n];
        let arrows = (0..*n).map(|i| f.arrows[ch.hom(i, i + 1)[0]]).collect();
        (f.objects[0], arrows)
    }
}

impl Model<1> for ExactModel<'_> {
    type Key = FKey;

    fn simplices(&self, degree: [usize; 1]) -> Vec<FKey> {
        enumerate_functors(&self.chaotic[degree[0]], self.c)
            .into_iter()
            .map(|f| (degree[0], f))
            .collect()
    }

    fn degree(&self, key: &FKey) -> [usize; 1] {
        [key.0]
    }

    fn face(&self, key: &FKey, _dir: usize, i: usize) -> FKey {
        (key.0 - 1, self.cofaces[key.0][i].then(&key.1))
    }

    fn degeneracy(&self, key: &FKey, _dir: usize, i: usize) -> FKey {
        (key.0 + 1, self.codegeneracies[key.0][i].then(&key.1))
    }

    fn label(&self, key: &FKey) -> String {
        chain_label(self.c, &self.spine(key))
    }
}

/// `k^!(X)` truncated at `N` with its counit `k^!(X) → X`.
#[derive(Clone, Debug)]
pub struct KUpper {
    pub value: Truncated<Arc<SimplicialSet>>,
    pub counit: SimplicialMap,
    exact_data: Option<(Arc<FiniteCategory>, Presented<FKey, 1>)>,
    truncated_data: Option<(usize, Presented<MKey, 1>)>,
}

/// Exact mode: `k^!(B C)_n = Fun(π(Δ^n), C)`. The counit lands in `B(C)`
/// truncated at `N`, passed in as `nerve`.
pub fn k_upper_exact(nerve: &Nerve) -> KUpper {
    let c = nerve.category.clone();
    let n = nerve.bound;
    let model = ExactModel::new(&c, n);
    let presented = materialize(&model, &dims(n));
    let exact = !has_nondegenerate(&model, [n + 1]);
    let complex = presented.complex.clone();
    let images = presented
        .keys
        .iter()
        .map(|k| nerve.simplex(&model.spine(k)).expect("spine within truncation"))
        .collect();
    let counit = Morphism::new_unchecked(complex.clone(), nerve.complex.clone(), images);
    KUpper {
        value: Truncated {
            value: complex,
            bound: n,
            exact,
        },
        counit,
        exact_data: Some((c.clone(), presented)),
        truncated_data: None,
    }
}

impl KUpper {
    /// The functor `π(Δ^n) → C` of an exact-mode cell.
    pub fn functor(&self, cell: CellId) -> Option<&FKey> {
        self.exact_data.as_ref().map(|(_, p)| p.key(cell))
    }

    /// `k^!(BF) : k^!(BC) → k^!(BD)` for exact-mode values.
    pub fn map_to(&self, f: &FunctorData, target: &KUpper) -> Result<SimplicialMap> {
        let (c, p) = self
            .exact_data
            .as_ref()
            .ok_or_else(|| Error::Unsupported("functor action needs exact mode".into()))?;
        let (d, q) = target
            .exact_data
            .as_ref()
            .ok_or_else(|| Error::Unsupported("functor action needs exact mode".into()))?;
        f.validate(c, d)?;
        let model = ExactModel::new(d, target.value.bound);
        let images = p
            .keys
            .iter()
            .map(|(n, g)| {
                q.simplex_of(&model, &(*n, g.then(f)))
                    .ok_or(Error::DimensionTooSmall { min: *n, got: target.value.bound })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::new_unchecked(self.value.value.clone(), target.value.value.clone(), images))
    }
}

type MKey = (usize, Vec<Simplex<1>>);

struct TruncatedModel<'a> {
    x: &'a Arc<SimplicialSet>,
    sources: Vec<Arc<SimplicialSet>>,
    extensions: Vec<SimplicialMap>,
    faces: Vec<Vec<SimplicialMap>>,
    degeneracies: Vec<Vec<SimplicialMap>>,
}

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

impl Model<1> for TruncatedModel<'_> {
    type Key = MKey;

    fn simplices(&self, degree: [usize; 1]) -> Vec<MKey> {
        let n = degree[0];
        enumerate_maps(&self.sources[n], self.x)
            .into_iter()
            .filter(|g| extension_search(&self.extensions[n], g).first().is_some())
            .map(|g| (n, g.images().to_vec()))
            .collect()
    }

    fn degree(&self, key: &MKey) -> [usize; 1] {
        [key.0]
    }

    fn face(&self, key: &MKey, _dir: usize, i: usize) -> MKey {
        (key.0 - 1, precompose(&self.faces[key.0][i], &key.1))
    }

    fn degeneracy(&self, key: &MKey, _dir: usize, i: usize) -> MKey {
        (key.0 + 1, precompose(&self.degeneracies[key.0][i], &key.1))
    }

    fn label(&self, key: &MKey) -> String {
        key.1
            .iter()
            .map(|s| crate::limit::simplex_label(self.x, s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

struct TruncatedParts {
    chaotic: Vec<Arc<FiniteCategory>>,
    small: Vec<Nerve>,
}

fn truncated_model(x: &Arc<SimplicialSet>, n: usize, l1: usize) -> (TruncatedModel<'_>, TruncatedParts) {
    let l2 = l1 + 1;
    let chaotic: Vec<Arc<FiniteCategory>> = (0..=n + 2).map(|k| Arc::new(FiniteCategory::chaotic(k))).collect();
    let small: Vec<Nerve> = chaotic.iter().map(|c| Nerve::new(c, l1)).collect();
    let large: Vec<Nerve> = chaotic.iter().map(|c| Nerve::new(c, l2)).collect();
    let extensions: Vec<SimplicialMap> = (0..=n + 1)
        .map(|k| {
            let inc = skeleton_inclusion(&large[k].complex, l1);
            inc.rebased(small[k].complex.clone(), large[k].complex.clone())
                .expect("skeleton of the larger nerve is the smaller nerve")
        })
        .collect();
    let thin = |from: usize, to: usize, theta: &Op| -> SimplicialMap {
        let objs: Vec<usize> = theta.iter().map(|&v| v as usize).collect();
        let f = thin_functor(&chaotic[from], &chaotic[to], &objs).unwrap();
        nerve_map(&f, &small[from], &small[to]).unwrap()
    };
    let faces = (0..=n + 1)
        .map(|k| (0..=k).filter(|_| k > 0).map(|i| thin(k - 1, k, &ops::coface(k, i))).collect())
        .collect();
    let degeneracies = (0..=n)
        .map(|k| (0..=k).map(|i| thin(k + 1, k, &ops::codegeneracy(k, i))).collect())
        .collect();
    let model = TruncatedModel {
        x,
        sources: small.iter().map(|s| s.complex.clone()).collect(),
        extensions,
        faces,
        degeneracies,
    };
    (model, TruncatedParts { chaotic, small })
}

/// Truncated mode for a general finite `X` of dimension `D`: `n`-simplices are
/// maps out of `Bπ(Δ^n)` truncated at `D + 1` that extend one level further.
pub fn k_upper_truncated(x: &Arc<SimplicialSet>, n: usize) -> KUpper {
    k_upper_truncated_at(x, n, x.dim().unwrap_or(0) + 1)
}

/// Truncated mode probing with `Bπ(Δ^n)` truncated at `level`, which must
/// exceed the dimension of `X`.
pub fn k_upper_truncated_at(x: &Arc<SimplicialSet>, n: usize, level: usize) -> KUpper {
    let l1 = level.max(x.dim().unwrap_or(0) + 1);
    let (model, parts) = truncated_model(x, n, l1);
    let TruncatedParts { chaotic, small } = &parts;
    let presented = materialize(&model, &dims(n));
    let exact = !model.simplices([n + 1]).iter().any(|k| is_nondegenerate(&model, k));
    let complex = presented.complex.clone();
    let images = presented
        .keys
        .iter()
        .map(|(k, imgs)| {
            let top = chaotic_chain(&chaotic[*k], &ops::identity(*k));
            if *k <= l1 {
                let s = small[*k].simplex(&top).unwrap();
                let m = Morphism::new_unchecked(small[*k].complex.clone(), x.clone(), imgs.clone());
                m.apply(&s)
            } else {
                // the top simplex lies above the truncation: extend to reach it
                let big = Nerve::new(&chaotic[*k], *k);
                let inc = skeleton_inclusion(&big.complex, l1)
                    .rebased(small[*k].complex.clone(), big.complex.clone())
                    .unwrap();
                let g = Morphism::new_unchecked(small[*k].complex.clone(), x.clone(), imgs.clone());
                let ext = extension_search(&inc, &g).first().expect("extension exists");
                ext.apply(&big.simplex(&top).unwrap())
            }
        })
        .collect();
    let counit = Morphism::new_unchecked(complex.clone(), x.clone(), images);
    KUpper {
        value: Truncated {
            value: complex,
            bound: n,
            exact,
        },
        counit,
        exact_data: None,
        truncated_data: Some((l1, presented)),
    }
}

impl KUpper {
    /// `k^!(f) : k^!(X) → k^!(Y)` by postcomposition, for truncated-mode
    /// values computed at the same level and bound.
    pub fn map_along(&self, f: &SimplicialMap, target: &KUpper) -> Result<SimplicialMap> {
        let unsupported = || Error::Unsupported("postcomposition needs truncated mode".into());
        let (l1, p) = self.truncated_data.as_ref().ok_or_else(unsupported)?;
        let (l2, q) = target.truncated_data.as_ref().ok_or_else(unsupported)?;
        if l1 != l2 {
            return Err(Error::Unsupported("values computed at different levels".into()));
        }
        if !same_complex(f.source(), self.counit.target()) || !same_complex(f.target(), target.counit.target()) {
            return Err(Error::NotAMap("map does not match the computed functor values".into()));
        }
        let (model, _) = truncated_model(f.target(), target.value.bound, *l2);
        let images = p
            .keys
            .iter()
            .map(|(n, imgs)| {
                let pushed = imgs.iter().map(|s| f.apply(s)).collect();
                q.simplex_of(&model, &(*n, pushed))
                    .ok_or(Error::DimensionTooSmall { min: *n, got: target.value.bound })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::new_unchecked(self.value.value.clone(), target.value.value.clone(), images))
    }
}

/// `t_!(X) = d(k_!(X))`: `k_!` on each vertical slice, then the diagonal.
/// The result is the `N`-skeleton of `t_!(X)`.
pub fn t_shriek(x: &BisimplicialSet, n: usize) -> Truncated<SimplicialSet> {
    let slices: Vec<Slice> = (0..=n).map(|k| Slice::new(x, k)).collect();
    let ks: Vec<KShriek> = slices.iter().map(|s| k_shriek(&s.complex, n)).collect();
    let faces: Vec<Vec<SimplicialMap>> = (0..=n)
        .map(|k| {
            (0..=k)
                .filter(|_| k > 0)
                .map(|i| {
                    let m = horizontal_operator_map(x, &slices[k], &slices[k - 1], &ops::coface(k, i));
                    ks[k].map_to(&m, &ks[k - 1]).expect("k_! is functorial")
                })
                .collect()
        })
        .collect();
    let degeneracies: Vec<Vec<SimplicialMap>> = (0..n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let m = horizontal_operator_map(x, &slices[k], &slices[k + 1], &ops::codegeneracy(k, i));
                    ks[k].map_to(&m, &ks[k + 1]).expect("k_! is functorial")
                })
                .collect()
        })
        .collect();
    let model = TDiagonal {
        ks: &ks,
        faces,
        degeneracies,
    };
    let value = (*materialize(&model, &dims(n)).complex).clone();
    let m = x.max_degree();
    Truncated {
        value,
        bound: n,
        exact: x.is_empty() || (m[1] == 0 && m[0] <= n),
    }
}

struct TDiagonal<'a> {
    ks: &'a [KShriek],
    faces: Vec<Vec<SimplicialMap>>,
    degeneracies: Vec<Vec<SimplicialMap>>,
}

impl Model<1> for TDiagonal<'_> {
    type Key = (usize, Simplex<1>);

    fn simplices(&self, degree: [usize; 1]) -> Vec<Self::Key> {
        let k = degree[0];
        self.ks[k].complex().simplices([k]).into_iter().map(|s| (k, s)).collect()
    }

    fn degree(&self, key: &Self::Key) -> [usize; 1] {
        [key.0]
    }

    fn face(&self, key: &Self::Key, _dir: usize, i: usize) -> Self::Key {
        let k = key.0;
        let v = self.ks[k].complex().face(&key.1, 0, i);
        (k - 1, self.faces[k][i].apply(&v))
    }

    fn degeneracy(&self, key: &Self::Key, _dir: usize, i: usize) -> Self::Key {
        let k = key.0;
        let v = self.ks[k].complex().degeneracy(&key.1, 0, i);
        (k + 1, self.degeneracies[k][i].apply(&v))
    }

    fn label(&self, key: &Self::Key) -> String {
        crate::limit::simplex_label(self.ks[key.0].complex(), &key.1)
    }
}

type TKey = (usize, usize, FunctorData);

struct TUpperModel<'a> {
    c: &'a FiniteCategory,
    /// `[m] × π(Δ^n)`, indexed `[m][n]`.
    shapes: Vec<Vec<FiniteCategory>>,
    m_top: usize,
    n_top: usize,
}

impl TUpperModel<'_> {
    fn shape_functor(&self, from: (usize, usize), to: (usize, usize), dir: usize, theta: &[u8]) -> FunctorData {
        let (m, n) = from;
        let width = to.1 + 1;
        let objs: Vec<usize> = (0..=m)
            .flat_map(|a| (0..=n).map(move |b| (a, b)))
            .map(|(a, b)| {
                let (a2, b2) = if dir == 0 { (theta[a] as usize, b) } else { (a, theta[b] as usize) };
                a2 * width + b2
            })
            .collect();
        thin_functor(&self.shapes[m][n], &self.shapes[to.0][to.1], &objs).expect("thin shapes")
    }
}

impl Model<2> for TUpperModel<'_> {
    type Key = TKey;

    fn simplices(&self, degree: [usize; 2]) -> Vec<TKey> {
        let [m, n] = degree;
        if m > self.m_top + 1 || n > self.n_top + 1 {
            return Vec::new();
        }
        enumerate_functors(&self.shapes[m][n], self.c)
            .into_iter()
            .map(|f| (m, n, f))
            .collect()
    }

    fn degree(&self, key: &TKey) -> [usize; 2] {
        [key.0, key.1]
    }

    fn face(&self, key: &TKey, dir: usize, i: usize) -> TKey {
        let (m, n, f) = key;
        let (to, from, p) = if dir == 0 { ((*m, *n), (*m - 1, *n), *m) } else { ((*m, *n), (*m, *n - 1), *n) };
        let g = self.shape_functor(from, to, dir, &ops::coface(p, i));
        (from.0, from.1, g.then(f))
    }

    fn degeneracy(&self, key: &TKey, dir: usize, i: usize) -> TKey {
        let (m, n, f) = key;
        let (to, from, p) = if dir == 0 { ((*m, *n), (*m + 1, *n), *m) } else { ((*m, *n), (*m, *n + 1), *n) };
        let g = self.shape_functor(from, to, dir, &ops::codegeneracy(p, i));
        (from.0, from.1, g.then(f))
    }

    fn label(&self, key: &TKey) -> String {
        let (_, _, f) = key;
        f.objects
            .iter()
            .map(|&o| self.c.objects()[o].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `t^!(B C)` in exact mode: `(m, n)`-bisimplices are functors `[m] × π(Δ^n) → C`,
/// for `m ≤ M` and `n ≤ N`.
pub fn t_upper(c: &FiniteCategory, m_top: usize, n_top: usize) -> Truncated<BisimplicialSet> {
    let shapes: Vec<Vec<FiniteCategory>> = (0..=m_top + 1)
        .map(|m| {
            (0..=n_top + 1)
                .map(|n| FiniteCategory::ordinal(m).product(&FiniteCategory::chaotic(n)))
                .collect()
        })
        .collect();
    let model = TUpperModel { c, shapes, m_top, n_top };
    let presented = materialize(&model, &degree_box([m_top, n_top]));
    let exact = (0..=n_top).all(|n| !has_nondegenerate(&model, [m_top + 1, n]))
        && (0..=m_top).all(|m| !has_nondegenerate(&model, [m, n_top + 1]));
    Truncated {
        value: (*presented.complex).clone(),
        bound: m_top.max(n_top),
        exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_isomorphic;
    use crate::standard::{boundary, standard};

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    #[test]
    fn k_shriek_of_simplex_is_chaotic_nerve() {
        for n in 0..3 {
            let k = k_shriek(&arc(standard(n)), 3);
            let b = Nerve::new(&arc(FiniteCategory::chaotic(n)), 3);
            assert!(is_isomorphic(k.complex(), &b.complex));
        }
    }

    #[test]
    fn k_shriek_of_discrete_set() {
        let x = arc(crate::colimit::disjoint_union(&[arc(standard(0)), arc(standard(0))]).0.as_ref().clone());
        let k = k_shriek(&x, 3);
        assert!(k.value.exact);
        assert_eq!(k.complex().cell_counts(), vec![2]);
    }

    #[test]
    fn k_shriek_of_triangle_boundary() {
        let k = k_shriek(&arc(boundary(2).unwrap()), 4);
        assert_eq!(k.complex().cell_counts(), vec![3, 6, 6, 6, 6]);
        k.complex().validate().unwrap();
    }

    #[test]
    fn unit_of_edge() {
        let u = unit_map(&arc(standard(1)), 3).unwrap();
        assert!(u.is_mono());
        u.validate().unwrap();
    }

    #[test]
    fn k_upper_examples() {
        let ord = Nerve::new(&arc(FiniteCategory::ordinal(1)), 3);
        let k = k_upper_exact(&ord);
        assert!(k.value.exact);
        assert_eq!(k.value.value.cell_counts(), vec![2]);
        let ch = Nerve::new(&arc(FiniteCategory::chaotic(1)), 3);
        let k = k_upper_exact(&ch);
        assert!(k.counit.is_iso());
        let pt = Nerve::new(&arc(FiniteCategory::terminal()), 2);
        assert_eq!(k_upper_exact(&pt).value.value.cell_counts(), vec![1]);
    }

    #[test]
    fn k_upper_truncated_matches_exact_on_posets() {
        let c = arc(FiniteCategory::ordinal(1));
        let nv = Nerve::new(&c, 1);
        let t = k_upper_truncated(&nv.complex, 2);
        assert_eq!(t.value.value.cell_counts(), vec![2]);
        assert!(t.value.exact);
    }

    #[test]
    fn t_shriek_generators() {
        for k in 0..3 {
            let t = t_shriek(&crate::bisimplicial::generator_f(k), 3);
            assert!(is_isomorphic(&arc(t.value), &arc(standard(k))));
        }
        let b = crate::bisimplicial::box_product(&standard(0), &standard(1));
        let t = t_shriek(&b, 3);
        assert_eq!(t.value.cell_counts(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn t_upper_point_and_arrow() {
        let t = t_upper(&FiniteCategory::terminal(), 2, 2);
        assert!(t.exact);
        assert_eq!(t.value.len(), 1);
        let t = t_upper(&FiniteCategory::ordinal(1), 1, 2);
        assert_eq!(t.value.simplex_count([1, 0]), 3);
        assert!(is_isomorphic(
            &arc(crate::bisimplicial::vertical_slice(&t.value, 0)),
            &arc(crate::colimit::disjoint_union(&[arc(standard(0)), arc(standard(0))]).0.as_ref().clone())
        ));
    }
}
