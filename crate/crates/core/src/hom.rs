//! Hom-set enumeration by backtracking, and isomorphism search.
//!
//! The search visits source cells so that every cell comes right after its
//! faces, which lets face constraints prune early. Candidates for a cell are
//! looked up in an index of target simplices keyed by their faces, so a cell
//! whose faces are already placed only ever sees compatible images.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::complex::{CellId, Complex, Simplex};
use crate::map::Morphism;
use crate::ops::{self, Op};

type FaceKey<const D: usize> = Vec<Simplex<D>>;

fn face_key<const D: usize>(x: &Complex<D>, s: &Simplex<D>) -> FaceKey<D> {
    let deg = s.degree();
    let mut key = Vec::new();
    for (d, &p) in deg.iter().enumerate() {
        if p == 0 {
            continue;
        }
        for i in 0..=p {
            key.push(x.face(s, d, i));
        }
    }
    key
}

struct TargetIndex<const D: usize> {
    by_degree: HashMap<[usize; D], HashMap<FaceKey<D>, Vec<Simplex<D>>>>,
}

impl<const D: usize> TargetIndex<D> {
    fn build(target: &Complex<D>, degrees: &HashSet<[usize; D]>, cells_only: bool) -> Self {
        let mut by_degree = HashMap::new();
        for &deg in degrees {
            let mut table: HashMap<FaceKey<D>, Vec<Simplex<D>>> = HashMap::new();
            let simplices: Vec<Simplex<D>> = if cells_only {
                target.cells_of(deg).map(|c| target.nondegenerate(c)).collect()
            } else {
                target.simplices(deg)
            };
            for s in simplices {
                table.entry(face_key(target, &s)).or_default().push(s);
            }
            by_degree.insert(deg, table);
        }
        TargetIndex { by_degree }
    }

    fn lookup(&self, degree: [usize; D], key: &FaceKey<D>) -> &[Simplex<D>] {
        self.by_degree
            .get(&degree)
            .and_then(|t| t.get(key))
            .map_or(&[], |v| v.as_slice())
    }
}

/// Requirement `σ^* h(b) = value` on the image of a source cell `b`.
#[derive(Clone, Debug)]
pub(crate) struct Constraint<const D: usize> {
    pub ops: [Op; D],
    pub value: Simplex<D>,
}

pub(crate) struct MapSearch<const D: usize> {
    source: Arc<Complex<D>>,
    target: Arc<Complex<D>>,
    index: TargetIndex<D>,
    order: Vec<CellId>,
    constraints: Vec<Vec<Constraint<D>>>,
    /// `(f, required)`: the image of cell `b` must satisfy `f(h(b)) = required[b]`.
    over: Option<(Morphism<D>, Vec<Simplex<D>>)>,
    injective: bool,
}

/// Order cells so each comes after all of its faces, depth first.
fn closure_order<const D: usize>(x: &Complex<D>) -> Vec<CellId> {
    let mut seen = vec![false; x.len()];
    let mut order = Vec::with_capacity(x.len());
    fn visit<const D: usize>(x: &Complex<D>, c: CellId, seen: &mut [bool], order: &mut Vec<CellId>) {
        if seen[c.index()] {
            return;
        }
        for fs in &x.cell(c).faces {
            for f in fs {
                visit(x, f.cell, seen, order);
            }
        }
        seen[c.index()] = true;
        order.push(c);
    }
    for c in x.cell_ids() {
        visit(x, c, &mut seen, &mut order);
    }
    order
}

impl<const D: usize> MapSearch<D> {
    pub(crate) fn new(source: &Arc<Complex<D>>, target: &Arc<Complex<D>>) -> Self {
        Self::with_mode(source, target, false)
    }

    fn with_mode(source: &Arc<Complex<D>>, target: &Arc<Complex<D>>, injective: bool) -> Self {
        let degrees: HashSet<[usize; D]> = source.degrees().collect();
        MapSearch {
            source: source.clone(),
            target: target.clone(),
            index: TargetIndex::build(target, &degrees, injective),
            order: closure_order(source),
            constraints: vec![Vec::new(); source.len()],
            over: None,
            injective,
        }
    }

    pub(crate) fn constrain(&mut self, cell: CellId, ops: [Op; D], value: Simplex<D>) {
        self.constraints[cell.index()].push(Constraint { ops, value });
    }

    pub(crate) fn over(&mut self, f: Morphism<D>, required: Vec<Simplex<D>>) {
        self.over = Some((f, required));
    }

    fn candidates(&self, cell: CellId, assign: &[Option<Simplex<D>>]) -> Vec<Simplex<D>> {
        let c = self.source.cell(cell);
        let mut key = Vec::new();
        for fs in &c.faces {
            for f in fs {
                let img = assign[f.cell.index()].as_ref().expect("faces come first");
                key.push(Simplex {
                    ops: std::array::from_fn(|d| ops::compose(&img.ops[d], &f.ops[d])),
                    cell: img.cell,
                });
            }
        }
        self.index
            .lookup(c.degree, &key)
            .iter()
            .filter(|s| {
                self.constraints[cell.index()].iter().all(|k| {
                    let moved: [Op; D] = std::array::from_fn(|d| ops::compose(&s.ops[d], &k.ops[d]));
                    moved == k.value.ops && s.cell == k.value.cell
                })
            })
            .filter(|s| match &self.over {
                None => true,
                Some((f, req)) => f.apply(s) == req[cell.index()],
            })
            .filter(|s| {
                !self.injective
                    || !assign
                        .iter()
                        .any(|a| a.as_ref().is_some_and(|a| a.cell == s.cell))
            })
            .cloned()
            .collect()
    }

    /// Visit every solution; the visitor returns `false` to stop.
    pub(crate) fn run(&self, visit: &mut dyn FnMut(&[Simplex<D>]) -> bool) {
        let n = self.order.len();
        let mut assign: Vec<Option<Simplex<D>>> = vec![None; self.source.len()];
        if n == 0 {
            visit(&[]);
            return;
        }
        let mut stack: Vec<(Vec<Simplex<D>>, usize)> = vec![(self.candidates(self.order[0], &assign), 0)];
        while !stack.is_empty() {
            let level = stack.len() - 1;
            let top = &mut stack[level];
            if top.1 >= top.0.len() {
                assign[self.order[level].index()] = None;
                stack.pop();
                continue;
            }
            let cand = top.0[top.1].clone();
            top.1 += 1;
            assign[self.order[level].index()] = Some(cand);
            if level + 1 == n {
                let images: Vec<Simplex<D>> = assign.iter().map(|a| a.clone().unwrap()).collect();
                if !visit(&images) {
                    return;
                }
                continue;
            }
            let next = self.candidates(self.order[level + 1], &assign);
            stack.push((next, 0));
        }
    }

    pub(crate) fn morphism(&self, images: &[Simplex<D>]) -> Morphism<D> {
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), images.to_vec())
    }

    pub(crate) fn first(&self) -> Option<Morphism<D>> {
        let mut found = None;
        self.run(&mut |imgs| {
            found = Some(imgs.to_vec());
            false
        });
        found.map(|imgs| self.morphism(&imgs))
    }

    pub(crate) fn all(&self) -> Vec<Morphism<D>> {
        let mut out: Vec<Vec<Simplex<D>>> = Vec::new();
        self.run(&mut |imgs| {
            out.push(imgs.to_vec());
            true
        });
        out.sort();
        out.into_iter().map(|imgs| self.morphism(&imgs)).collect()
    }

    pub(crate) fn count(&self) -> usize {
        let mut n = 0;
        self.run(&mut |_| {
            n += 1;
            true
        });
        n
    }
}

/// Every map `K → X`, sorted lexicographically by the images of `K`'s cells
/// (cells in increasing degree, then identifier).
pub fn enumerate_maps<const D: usize>(k: &Arc<Complex<D>>, x: &Arc<Complex<D>>) -> Vec<Morphism<D>> {
    MapSearch::new(k, x).all()
}

pub fn count_maps<const D: usize>(k: &Arc<Complex<D>>, x: &Arc<Complex<D>>) -> usize {
    MapSearch::new(k, x).count()
}

/// All `h : B → X` with `h ∘ i = g`.
pub fn extensions<const D: usize>(i: &Morphism<D>, g: &Morphism<D>) -> Vec<Morphism<D>> {
    extension_search(i, g).all()
}

pub(crate) fn extension_search<const D: usize>(i: &Morphism<D>, g: &Morphism<D>) -> MapSearch<D> {
    let mut s = MapSearch::new(i.target(), g.target());
    for a in i.source().cell_ids() {
        let img = i.image(a);
        s.constrain(img.cell, img.ops.clone(), g.image(a).clone());
    }
    s
}

fn degree_profile<const D: usize>(x: &Complex<D>) -> Vec<([usize; D], usize)> {
    x.degrees().map(|d| (d, x.count(d))).collect()
}

/// An isomorphism `X → Y`, if one exists.
pub fn find_isomorphism<const D: usize>(x: &Arc<Complex<D>>, y: &Arc<Complex<D>>) -> Option<Morphism<D>> {
    if degree_profile(x) != degree_profile(y) {
        return None;
    }
    MapSearch::with_mode(x, y, true).first()
}

pub fn is_isomorphic<const D: usize>(x: &Arc<Complex<D>>, y: &Arc<Complex<D>>) -> bool {
    find_isomorphism(x, y).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{boundary, standard, terminal};

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    #[test]
    fn maps_between_intervals() {
        // monotone maps [1] -> [1]
        assert_eq!(enumerate_maps(&arc(standard(1)), &arc(standard(1))).len(), 3);
    }

    #[test]
    fn maps_from_point_are_vertices() {
        let x = arc(boundary(3).unwrap());
        assert_eq!(enumerate_maps(&arc(terminal()), &x).len(), 4);
    }

    #[test]
    fn maps_to_point() {
        let b = arc(boundary(2).unwrap());
        assert_eq!(enumerate_maps(&b, &arc(terminal())).len(), 1);
    }

    #[test]
    fn maps_from_standard_simplex_are_simplices() {
        let x = arc(boundary(3).unwrap());
        for n in 0..4 {
            let maps = enumerate_maps(&arc(standard(n)), &x);
            assert_eq!(maps.len(), x.simplex_count([n]));
        }
    }

    #[test]
    fn isomorphism_search() {
        let a = arc(standard(2));
        let b = arc(standard(2));
        let iso = find_isomorphism(&a, &b).unwrap();
        assert!(iso.is_iso());
        assert!(find_isomorphism(&a, &arc(boundary(2).unwrap())).is_none());
    }

    #[test]
    fn output_is_sorted_and_distinct() {
        let maps = enumerate_maps(&arc(standard(1)), &arc(standard(2)));
        for w in maps.windows(2) {
            assert!(w[0].images() < w[1].images());
        }
    }
}
