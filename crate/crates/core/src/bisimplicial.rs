//! Bisimplicial sets: box products, generators, slices, diagonal, Segal maps.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::FiniteCategory;
use crate::colimit::pushout;
use crate::complex::{BisimplicialSet, CellId, ComplexBuilder, Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::limit::fiber_product;
use crate::map::{BisimplicialMap, Morphism, SimplicialMap};
use crate::model::{dims, materialize, Model, Presented};
use crate::nerve::Nerve;
use crate::ops;
use crate::standard::{boundary_inclusion, horn_inclusion, point, spine_inclusion, standard};
use crate::Truncated;

/// Cells of `K ×̃ L` in order: bidegree, then `K` cell, then `L` cell.
fn box_index(k: &SimplicialSet, l: &SimplicialSet) -> HashMap<(CellId, CellId), CellId> {
    let mut degrees: Vec<[usize; 2]> = Vec::new();
    for dk in k.degrees() {
        for dl in l.degrees() {
            degrees.push([dk[0], dl[0]]);
        }
    }
    degrees.sort();
    let mut out = HashMap::new();
    for d in degrees {
        for a in k.cells_of([d[0]]) {
            for b in l.cells_of([d[1]]) {
                let id = CellId(out.len() as u32);
                out.insert((a, b), id);
            }
        }
    }
    out
}

/// `K ×̃ L`, with `(K ×̃ L)_{m,n} = K_m × L_n`.
pub fn box_product(k: &SimplicialSet, l: &SimplicialSet) -> BisimplicialSet {
    let index = box_index(k, l);
    let mut cells: Vec<(CellId, CellId)> = index.keys().copied().collect();
    cells.sort_by_key(|p| index[p]);
    let mut b = ComplexBuilder::new();
    for (a, c) in cells {
        let (ca, cc) = (k.cell(a), l.cell(c));
        let (m, n) = (ca.degree[0], cc.degree[0]);
        let horizontal = ca.faces[0]
            .iter()
            .map(|f| Simplex {
                ops: [f.ops[0].clone(), ops::identity(n)],
                cell: index[&(f.cell, c)],
            })
            .collect();
        let vertical = cc.faces[0]
            .iter()
            .map(|f| Simplex {
                ops: [ops::identity(m), f.ops[0].clone()],
                cell: index[&(a, f.cell)],
            })
            .collect();
        let label = if n == 0 && cc.label == "0" && l.len() == 1 {
            ca.label.clone()
        } else {
            format!("{}|{}", ca.label, cc.label)
        };
        b.add_cell([m, n], [horizontal, vertical], label);
    }
    b.finish()
}

/// `f ×̃ g` between box products of the given factors.
pub fn box_map(f: &SimplicialMap, g: &SimplicialMap, source: &Arc<BisimplicialSet>, target: &Arc<BisimplicialSet>) -> BisimplicialMap {
    let si = box_index(f.source(), g.source());
    let ti = box_index(f.target(), g.target());
    let mut images = vec![None; si.len()];
    for (&(a, b), &c) in &si {
        let (x, y) = (f.image(a), g.image(b));
        images[c.index()] = Some(Simplex {
            ops: [x.ops[0].clone(), y.ops[0].clone()],
            cell: ti[&(x.cell, y.cell)],
        });
    }
    Morphism::new_unchecked(source.clone(), target.clone(), images.into_iter().map(Option::unwrap).collect())
}

/// `F(k) = Δ^k ×̃ Δ^0`.
pub fn generator_f(k: usize) -> BisimplicialSet {
    box_product(&standard(k), &standard(0))
}

/// `F̂(k) = ∂Δ^k ×̃ Δ^0`, with its inclusion into `F(k)`.
pub fn generator_fhat(k: usize) -> Result<BisimplicialMap> {
    let i = boundary_inclusion(k)?;
    Ok(box_inclusion(&i))
}

/// `G(n) ⊂ F(n)`: the string of `n` horizontal edges.
pub fn generator_g(n: usize) -> BisimplicialMap {
    box_inclusion(&spine_inclusion(n))
}

fn box_inclusion(i: &SimplicialMap) -> BisimplicialMap {
    let d0 = Arc::new(standard(0));
    let id = Morphism::identity(&d0);
    let s = Arc::new(box_product(i.source(), &d0));
    let t = Arc::new(box_product(i.target(), &d0));
    box_map(i, &id, &s, &t)
}

/// `Disc(C) = B(C) ×̃ Δ^0`, horizontally truncated at `N`.
pub fn disc_nerve(c: &FiniteCategory, n: usize) -> Truncated<BisimplicialSet> {
    let nv = Nerve::new(&Arc::new(c.clone()), n);
    Truncated {
        value: box_product(&nv.complex, &standard(0)),
        bound: n,
        exact: nv.exact,
    }
}

/// `I = Disc(Bπ(Δ^1))` truncated at `N`, with the vertex `F(0) → I` at object 0.
pub fn generator_i(n: usize) -> (Truncated<BisimplicialSet>, BisimplicialMap) {
    let t = disc_nerve(&FiniteCategory::chaotic(1), n);
    let i = Arc::new(t.value.clone());
    let f0 = Arc::new(generator_f(0));
    let m = Morphism::new_unchecked(f0, i, vec![Simplex::cell(CellId(0), [0, 0])]);
    (t, m)
}

struct SliceModel<'a> {
    x: &'a BisimplicialSet,
    k: usize,
}

impl Model<1> for SliceModel<'_> {
    type Key = Simplex<2>;

    fn simplices(&self, degree: [usize; 1]) -> Vec<Simplex<2>> {
        self.x.simplices([self.k, degree[0]])
    }

    fn degree(&self, key: &Simplex<2>) -> [usize; 1] {
        [key.degree()[1]]
    }

    fn face(&self, key: &Simplex<2>, _dir: usize, i: usize) -> Simplex<2> {
        self.x.face(key, 1, i)
    }

    fn degeneracy(&self, key: &Simplex<2>, _dir: usize, i: usize) -> Simplex<2> {
        self.x.degeneracy(key, 1, i)
    }

    fn label(&self, key: &Simplex<2>) -> String {
        bisimplex_label(self.x, key)
    }
}

fn bisimplex_label(x: &BisimplicialSet, s: &Simplex<2>) -> String {
    // words in a direction where the cell has degree 0 are forced; omit them
    let deg = x.cell(s.cell).degree;
    let word = |d: usize| if deg[d] == 0 { Vec::new() } else { ops::word_of(&s.ops[d]) };
    let (h, v) = (word(0), word(1));
    let mut out = String::new();
    if !h.is_empty() {
        out += &format!("h{}", h.iter().map(|i| i.to_string()).collect::<String>());
    }
    if !v.is_empty() {
        out += &format!("v{}", v.iter().map(|i| i.to_string()).collect::<String>());
    }
    if out.is_empty() {
        x.label(s.cell).to_string()
    } else {
        format!("{out}({})", x.label(s.cell))
    }
}

/// The vertical simplicial set `X_{k,*}` with its bisimplex dictionary.
#[derive(Clone, Debug)]
pub struct Slice {
    pub complex: Arc<SimplicialSet>,
    pub k: usize,
    presented: Presented<Simplex<2>, 1>,
}

impl Slice {
    pub fn new(x: &BisimplicialSet, k: usize) -> Self {
        let model = SliceModel { x, k };
        let top = x.max_degree()[1];
        let presented = materialize(&model, &dims(top));
        Slice {
            complex: presented.complex.clone(),
            k,
            presented,
        }
    }

    /// The slice simplex naming a bisimplex of horizontal degree `k`.
    pub fn simplex(&self, x: &BisimplicialSet, s: &Simplex<2>) -> Simplex<1> {
        let model = SliceModel { x, k: self.k };
        self.presented.simplex_of(&model, s).expect("bisimplex lies in the slice")
    }

    /// The bisimplex named by a slice simplex.
    pub fn bisimplex(&self, x: &BisimplicialSet, s: &Simplex<1>) -> Simplex<2> {
        let base = self.presented.key(s.cell);
        let mut out = base.clone();
        out.ops[1] = ops::compose(&base.ops[1], &s.ops[0]);
        // ops[1] of a slice key is the identity, so this is just the degeneracy
        debug_assert!(x.cell(out.cell).degree[1] <= out.ops[1].len());
        out
    }
}

pub fn vertical_slice(x: &BisimplicialSet, k: usize) -> SimplicialSet {
    (*Slice::new(x, k).complex).clone()
}

/// The map `θ^* : X_{j,*} → X_{k,*}` for monotone `θ : [k] → [j]`.
pub fn horizontal_operator_map(x: &BisimplicialSet, from: &Slice, to: &Slice, theta: &[u8]) -> SimplicialMap {
    let images = from
        .complex
        .cell_ids()
        .map(|c| {
            let b = from.bisimplex(x, &from.complex.nondegenerate(c));
            to.simplex(x, &x.apply(&b, 0, theta))
        })
        .collect();
    Morphism::new_unchecked(from.complex.clone(), to.complex.clone(), images)
}

struct DiagonalModel<'a> {
    x: &'a BisimplicialSet,
}

impl Model<1> for DiagonalModel<'_> {
    type Key = Simplex<2>;

    fn simplices(&self, degree: [usize; 1]) -> Vec<Simplex<2>> {
        self.x.simplices([degree[0], degree[0]])
    }

    fn degree(&self, key: &Simplex<2>) -> [usize; 1] {
        [key.degree()[0]]
    }

    fn face(&self, key: &Simplex<2>, _dir: usize, i: usize) -> Simplex<2> {
        self.x.face(&self.x.face(key, 0, i), 1, i)
    }

    fn degeneracy(&self, key: &Simplex<2>, _dir: usize, i: usize) -> Simplex<2> {
        self.x.degeneracy(&self.x.degeneracy(key, 0, i), 1, i)
    }

    fn label(&self, key: &Simplex<2>) -> String {
        bisimplex_label(self.x, key)
    }
}

/// `d(X)_n = X_{n,n}`.
pub fn diagonal(x: &BisimplicialSet) -> SimplicialSet {
    let m = x.max_degree();
    (*materialize(&DiagonalModel { x }, &dims(m[0] + m[1])).complex).clone()
}

/// The Segal comparison `X_{n*} → X_{1*} ×_{X_{0*}} ⋯ ×_{X_{0*}} X_{1*}`.
///
/// Factor `k` (from 1) is the edge `{n-k, n-k+1}`; consecutive factors are
/// matched along `d_1` of the earlier and `d_0` of the later one.
#[derive(Clone, Debug)]
pub struct SegalMap {
    pub map: SimplicialMap,
    pub factors: Vec<SimplicialMap>,
}

pub fn segal_map(x: &BisimplicialSet, n: usize) -> Result<SegalMap> {
    if n == 0 {
        return Err(Error::SegalDegreeZero);
    }
    let s0 = Slice::new(x, 0);
    let s1 = Slice::new(x, 1);
    let sn = Slice::new(x, n);
    let d1 = horizontal_operator_map(x, &s1, &s0, &ops::coface(1, 1));
    let d0 = horizontal_operator_map(x, &s1, &s0, &ops::coface(1, 0));
    let edge = |k: usize| -> SimplicialMap {
        let theta = [(n - k) as u8, (n - k + 1) as u8];
        if n == 1 {
            Morphism::identity(&s1.complex)
        } else {
            horizontal_operator_map(x, &sn, &s1, &theta)
        }
    };
    let mut factors = vec![edge(1)];
    let mut map = factors[0].clone();
    let mut last = Morphism::identity(&s1.complex);
    for k in 2..=n {
        // last factor's source vertex must match the new factor's target vertex
        let left = last.then(&d1)?;
        let p = fiber_product(&left, &d0)?;
        let r = edge(k);
        map = p.pairing(&map, &r)?;
        last = p.right.clone();
        factors.push(r);
    }
    Ok(SegalMap { map, factors })
}

impl SegalMap {
    pub fn target(&self) -> &Arc<SimplicialSet> {
        self.map.target()
    }
}

/// Union of two subobjects of `T` meeting in `C`, as a pushout mapped into `T`.
fn union_into(
    c_to_a: &BisimplicialMap,
    c_to_b: &BisimplicialMap,
    a_to_t: &BisimplicialMap,
    b_to_t: &BisimplicialMap,
) -> Result<BisimplicialMap> {
    let p = pushout(c_to_a, c_to_b)?;
    p.factor(a_to_t, b_to_t)
}

/// Inclusions of sub-box-products `A ×̃ B ⊂ A' ×̃ B'`.
fn box_sub(i: &SimplicialMap, j: &SimplicialMap) -> BisimplicialMap {
    let s = Arc::new(box_product(i.source(), j.source()));
    let t = Arc::new(box_product(i.target(), j.target()));
    box_map(i, j, &s, &t)
}

fn then_box(i: &SimplicialMap, j: &SimplicialMap, into: &BisimplicialMap) -> Result<BisimplicialMap> {
    let m = box_sub(i, j);
    let m = m.rebased(m.source().clone(), into.source().clone())?;
    m.then(into)
}

/// The Reedy generating cofibration `∂(Δ^n ×̃ Δ^k) ⊂ Δ^n ×̃ Δ^k` and, for a
/// horn index `r`, the trivial cofibration
/// `(∂Δ^k ×̃ Δ^n) ∪ (Δ^k ×̃ Λ^n_r) ⊂ Δ^k ×̃ Δ^n`.
pub fn reedy_generators(n: usize, k: usize, r: Option<usize>) -> Result<(BisimplicialMap, Option<BisimplicialMap>)> {
    let dn = Arc::new(standard(n));
    let dk = Arc::new(standard(k));
    let idn = Morphism::identity(&dn);
    let idk = Morphism::identity(&dk);
    let bn = boundary_inclusion(n)?;
    let bk = boundary_inclusion(k)?;
    let top = box_sub(&idn, &idk);
    let a = then_box(&bn, &idk, &top)?;
    let b = then_box(&idn, &bk, &top)?;
    let c_to_a = box_sub(&Morphism::identity(bn.source()), &bk);
    let c_to_b = box_sub(&bn, &Morphism::identity(bk.source()));
    let c_to_a = c_to_a.rebased(c_to_a.source().clone(), a.source().clone())?;
    let c_to_b = c_to_b
        .rebased(c_to_a.source().clone(), b.source().clone())?;
    let cof = union_into(&c_to_a, &c_to_b, &a, &b)?;
    let triv = match r {
        None => None,
        Some(r) => {
            let h = horn_inclusion(n, r)?;
            let top = box_sub(&idk, &idn);
            let a = then_box(&bk, &idn, &top)?;
            let b = then_box(&idk, &h, &top)?;
            let c_to_a = box_sub(&Morphism::identity(bk.source()), &h);
            let c_to_b = box_sub(&bk, &Morphism::identity(h.source()));
            let c_to_a = c_to_a.rebased(c_to_a.source().clone(), a.source().clone())?;
            let c_to_b = c_to_b.rebased(c_to_a.source().clone(), b.source().clone())?;
            Some(union_into(&c_to_a, &c_to_b, &a, &b)?)
        }
    };
    Ok((cof, triv))
}

#[derive(Clone, Debug)]
struct VerticalHomModel {
    x: Arc<BisimplicialSet>,
    /// `K ×̃ Δ^j` for `j ≤ N + 1`.
    levels: Vec<Arc<BisimplicialSet>>,
    faces: Vec<Vec<BisimplicialMap>>,
    degeneracies: Vec<Vec<BisimplicialMap>>,
}

type HomKey = (usize, Vec<Simplex<2>>);

fn precompose2(h: &BisimplicialMap, images: &[Simplex<2>]) -> Vec<Simplex<2>> {
    h.images()
        .iter()
        .map(|s| {
            let img = &images[s.cell.index()];
            Simplex {
                ops: std::array::from_fn(|d| ops::compose(&img.ops[d], &s.ops[d])),
                cell: img.cell,
            }
        })
        .collect()
}

impl Model<1> for VerticalHomModel {
    type Key = HomKey;

    fn simplices(&self, degree: [usize; 1]) -> Vec<HomKey> {
        crate::hom::enumerate_maps(&self.levels[degree[0]], &self.x)
            .into_iter()
            .map(|m| (degree[0], m.images().to_vec()))
            .collect()
    }

    fn degree(&self, key: &HomKey) -> [usize; 1] {
        [key.0]
    }

    fn face(&self, key: &HomKey, _dir: usize, i: usize) -> HomKey {
        (key.0 - 1, precompose2(&self.faces[key.0][i], &key.1))
    }

    fn degeneracy(&self, key: &HomKey, _dir: usize, i: usize) -> HomKey {
        (key.0 + 1, precompose2(&self.degeneracies[key.0][i], &key.1))
    }

    fn label(&self, key: &HomKey) -> String {
        key.1.iter().map(|s| bisimplex_label(&self.x, s)).collect::<Vec<_>>().join(" ")
    }
}

/// The simplicial set `hom(K ×̃ Δ^0, X)`: `j`-simplices are maps `K ×̃ Δ^j → X`.
/// Truncated at the top vertical degree of `X`, above which it has no cells.
#[derive(Clone, Debug)]
pub struct VerticalHom {
    pub complex: Arc<SimplicialSet>,
    source: Arc<SimplicialSet>,
    model: VerticalHomModel,
    presented: Presented<HomKey, 1>,
}

impl VerticalHom {
    pub fn new(k: &Arc<SimplicialSet>, x: &Arc<BisimplicialSet>) -> Self {
        let n = x.max_degree()[1];
        let simplices: Vec<Arc<SimplicialSet>> = (0..=n + 1).map(|m| Arc::new(standard(m))).collect();
        let levels: Vec<Arc<BisimplicialSet>> = simplices.iter().map(|d| Arc::new(box_product(k, d))).collect();
        let id = Morphism::identity(k);
        let faces = (0..=n)
            .map(|m| {
                if m == 0 {
                    return Vec::new();
                }
                (0..=m)
                    .map(|i| {
                        let d = crate::standard::standard_map_between(&simplices[m - 1], &simplices[m], &ops::coface(m, i));
                        box_map(&id, &d, &levels[m - 1], &levels[m])
                    })
                    .collect()
            })
            .collect();
        let degeneracies = (0..=n)
            .map(|m| {
                (0..=m)
                    .map(|i| {
                        let s = crate::standard::standard_map_between(&simplices[m + 1], &simplices[m], &ops::codegeneracy(m, i));
                        box_map(&id, &s, &levels[m + 1], &levels[m])
                    })
                    .collect()
            })
            .collect();
        let model = VerticalHomModel {
            x: x.clone(),
            levels,
            faces,
            degeneracies,
        };
        let presented = materialize(&model, &dims(n));
        VerticalHom {
            complex: presented.complex.clone(),
            source: k.clone(),
            model,
            presented,
        }
    }

    /// Restriction `hom(K, X) → hom(K', X)` along `i : K' → K`, into `target = hom(K', X)`.
    pub fn restrict(&self, i: &SimplicialMap, target: &VerticalHom) -> Result<SimplicialMap> {
        if !crate::map::same_complex(i.target(), &self.source) || !crate::map::same_complex(i.source(), &target.source) {
            return Err(Error::NotAMap("restriction along a map between the wrong sources".into()));
        }
        let d0 = Arc::new(standard(0));
        let mut along = Vec::new();
        for j in 0..target.model.levels.len().min(self.model.levels.len()) {
            let dj = if j == 0 { d0.clone() } else { Arc::new(standard(j)) };
            let id = Morphism::identity(&dj);
            let m = box_map(i, &id, &target.model.levels[j], &self.model.levels[j]);
            along.push(m);
        }
        let images = self
            .presented
            .keys
            .iter()
            .map(|(j, imgs)| {
                let key = (*j, precompose2(&along[*j], imgs));
                target
                    .presented
                    .simplex_of(&target.model, &key)
                    .ok_or(Error::DimensionTooSmall { min: *j, got: target.model.levels.len() - 2 })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::new_unchecked(self.complex.clone(), target.complex.clone(), images))
    }
}

pub fn vertical_hom(k: &Arc<SimplicialSet>, x: &Arc<BisimplicialSet>) -> SimplicialSet {
    (*VerticalHom::new(k, x).complex).clone()
}

/// The point as a bisimplicial set.
pub fn bipoint() -> BisimplicialSet {
    point::<2>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_isomorphic;

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    #[test]
    fn f2_is_box_of_triangle() {
        let f = generator_f(2);
        assert_eq!(f.count([0, 0]), 3);
        assert_eq!(f.count([1, 0]), 3);
        assert_eq!(f.count([2, 0]), 1);
        f.validate().unwrap();
    }

    #[test]
    fn g2_shape() {
        let g = generator_g(2);
        let s = g.source();
        assert_eq!((s.count([0, 0]), s.count([1, 0]), s.len()), (3, 2, 5));
        assert!(g.is_mono());
    }

    #[test]
    fn generator_i_counts() {
        let (i, _) = generator_i(3);
        for h in 1..=3 {
            assert_eq!(i.value.count([h, 0]), 2);
        }
        assert_eq!(i.value.count([0, 0]), 2);
        assert_eq!(i.value.max_degree()[1], 0);
    }

    #[test]
    fn box_product_counts() {
        let b = box_product(&crate::standard::boundary(2).unwrap(), &standard(1));
        assert_eq!(b.count([0, 0]), 6);
        assert_eq!(b.count([1, 1]), 3);
        b.validate().unwrap();
    }

    #[test]
    fn slices() {
        let f = generator_f(2);
        let s = vertical_slice(&f, 1);
        assert_eq!(s.cell_counts(), vec![6]);
        let b = box_product(&standard(1), &standard(1));
        let s1 = vertical_slice(&b, 0);
        assert_eq!(s1.cell_counts(), vec![4, 2]);
    }

    #[test]
    fn diagonals() {
        let d1 = arc(standard(1));
        let b = box_product(&d1, &d1);
        let p = crate::limit::product(&d1, &d1);
        assert!(is_isomorphic(&arc(diagonal(&b)), &p.object));
        assert_eq!(diagonal(&generator_f(3)), standard(3));
    }

    #[test]
    fn segal_of_discrete_nerve_is_iso() {
        let x = disc_nerve(&FiniteCategory::ordinal(2), 3).value;
        for n in 1..=3 {
            assert!(segal_map(&x, n).unwrap().map.is_iso());
        }
        assert_eq!(segal_map(&x, 0).unwrap_err(), Error::SegalDegreeZero);
    }

    #[test]
    fn segal_fails_without_two_cell() {
        let fhat = generator_fhat(2).unwrap();
        assert!(!segal_map(fhat.source(), 2).unwrap().map.is_iso());
    }

    #[test]
    fn reedy_boundary_of_square() {
        let (cof, _) = reedy_generators(1, 1, None).unwrap();
        let s = cof.source();
        assert_eq!((s.count([0, 0]), s.count([1, 0]), s.count([0, 1]), s.count([1, 1])), (4, 2, 2, 0));
        assert!(cof.is_mono());
        let (c0, _) = reedy_generators(0, 0, None).unwrap();
        assert!(c0.source().is_empty());
    }

    #[test]
    fn vertical_hom_of_point_is_slice() {
        let x = arc(box_product(&standard(1), &standard(1)));
        for k in 0..=2 {
            let h = vertical_hom(&arc(standard(k)), &x);
            assert!(is_isomorphic(&arc(h), &arc(vertical_slice(&x, k))));
        }
    }
}
