//! Turning a concrete simplicial object into normal-form cells.
//!
//! Many constructions (nerves, products, mapping spaces, diagonals, functor
//! categories) have an obvious description of *all* their simplices together
//! with face and degeneracy operators. A [`Model`] exposes that description;
//! [`materialize`] extracts the nondegenerate simplices and their faces in
//! normal form, and [`Presented`] keeps the key ↔ cell dictionary so other
//! constructions can refer back into the result.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::complex::{CellId, Complex, ComplexBuilder, Simplex};
use crate::ops;

pub trait Model<const D: usize> {
    type Key: Clone + Eq + Hash;

    /// All simplices of a multidegree; degenerate ones may be included.
    fn simplices(&self, degree: [usize; D]) -> Vec<Self::Key>;
    fn degree(&self, key: &Self::Key) -> [usize; D];
    fn face(&self, key: &Self::Key, dir: usize, i: usize) -> Self::Key;
    fn degeneracy(&self, key: &Self::Key, dir: usize, i: usize) -> Self::Key;
    fn label(&self, key: &Self::Key) -> String;
}

/// A materialized model: the complex plus the key of every cell.
#[derive(Clone, Debug)]
pub struct Presented<K, const D: usize> {
    pub complex: Arc<Complex<D>>,
    pub keys: Vec<K>,
    index: HashMap<K, CellId>,
}

impl<K: Clone + Eq + Hash, const D: usize> Presented<K, D> {
    pub fn cell_of(&self, key: &K) -> Option<CellId> {
        self.index.get(key).copied()
    }

    pub fn key(&self, cell: CellId) -> &K {
        &self.keys[cell.index()]
    }

    /// Normal form of an arbitrary simplex of the model. `None` when its
    /// nondegenerate part lies outside the materialized range.
    pub fn simplex_of<M: Model<D, Key = K>>(&self, model: &M, key: &K) -> Option<Simplex<D>> {
        let (reps, base) = decompose(model, key);
        let cell = self.cell_of(&base)?;
        let degree = model.degree(key);
        Some(Simplex {
            ops: std::array::from_fn(|d| ops::surjection_with_repeats(degree[d], &reps[d])),
            cell,
        })
    }
}

fn repeats_in<M: Model<D>, const D: usize>(model: &M, key: &M::Key, dir: usize) -> Vec<usize> {
    let p = model.degree(key)[dir];
    (0..p)
        .filter(|&j| model.degeneracy(&model.face(key, dir, j), dir, j) == *key)
        .collect()
}

pub fn is_nondegenerate<M: Model<D>, const D: usize>(model: &M, key: &M::Key) -> bool {
    (0..D).all(|dir| repeats_in(model, key, dir).is_empty())
}

/// Eilenberg–Zilber decomposition inside the model.
pub fn decompose<M: Model<D>, const D: usize>(
    model: &M,
    key: &M::Key,
) -> ([Vec<usize>; D], M::Key) {
    let mut y = key.clone();
    let mut reps: [Vec<usize>; D] = std::array::from_fn(|_| Vec::new());
    for (dir, slot) in reps.iter_mut().enumerate() {
        let r = repeats_in(model, &y, dir);
        for &j in r.iter().rev() {
            y = model.face(&y, dir, j);
        }
        *slot = r;
    }
    (reps, y)
}

/// Materialize the nondegenerate simplices of the listed multidegrees, which
/// must be in lexicographic order and closed downwards.
pub fn materialize<M: Model<D>, const D: usize>(
    model: &M,
    degrees: &[[usize; D]],
) -> Presented<M::Key, D> {
    let mut b = ComplexBuilder::new();
    let mut keys = Vec::new();
    let mut index: HashMap<M::Key, CellId> = HashMap::new();
    for &degree in degrees {
        for key in model.simplices(degree) {
            if index.contains_key(&key) || !is_nondegenerate(model, &key) {
                continue;
            }
            let faces: [Vec<Simplex<D>>; D] = std::array::from_fn(|dir| {
                if degree[dir] == 0 {
                    return Vec::new();
                }
                (0..=degree[dir])
                    .map(|i| {
                        let f = model.face(&key, dir, i);
                        let (reps, base) = decompose(model, &f);
                        let cell = *index
                            .get(&base)
                            .expect("faces land in already materialized degrees");
                        let fd = model.degree(&f);
                        Simplex {
                            ops: std::array::from_fn(|e| {
                                ops::surjection_with_repeats(fd[e], &reps[e])
                            }),
                            cell,
                        }
                    })
                    .collect()
            });
            let id = b.add_cell(degree, faces, model.label(&key));
            index.insert(key.clone(), id);
            keys.push(key);
        }
    }
    Presented {
        complex: Arc::new(b.finish()),
        keys,
        index,
    }
}

/// Multidegrees `(a, b, …)` with each coordinate bounded, lexicographic.
pub fn degree_box<const D: usize>(bound: [usize; D]) -> Vec<[usize; D]> {
    let mut out = vec![[0usize; D]];
    for d in 0..D {
        let mut next = Vec::new();
        for base in &out {
            for v in 0..=bound[d] {
                let mut x = *base;
                x[d] = v;
                next.push(x);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Does the model have a nondegenerate simplex in this degree?
pub fn has_nondegenerate<M: Model<D>, const D: usize>(model: &M, degree: [usize; D]) -> bool {
    model
        .simplices(degree)
        .iter()
        .any(|k| is_nondegenerate(model, k))
}

/// Dimensions `0..=n` for one-directional models.
pub fn dims(n: usize) -> Vec<[usize; 1]> {
    (0..=n).map(|k| [k]).collect()
}
