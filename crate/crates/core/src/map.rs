//! Maps between finite (multi)simplicial sets.

use std::collections::HashSet;
use std::sync::Arc;

use crate::complex::{CellId, Complex, Simplex};
use crate::error::{Error, Result};
use crate::ops;

/// A map determined by the images of the nondegenerate source cells.
#[derive(Clone, Debug)]
pub struct Morphism<const D: usize> {
    source: Arc<Complex<D>>,
    target: Arc<Complex<D>>,
    images: Vec<Simplex<D>>,
}

pub type SimplicialMap = Morphism<1>;
pub type BisimplicialMap = Morphism<2>;

pub(crate) fn same_complex<const D: usize>(a: &Arc<Complex<D>>, b: &Arc<Complex<D>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<const D: usize> Morphism<D> {
    /// Checked constructor: images must have matching degrees and commute with faces.
    pub fn new(
        source: Arc<Complex<D>>,
        target: Arc<Complex<D>>,
        images: Vec<Simplex<D>>,
    ) -> Result<Self> {
        let m = Morphism::new_unchecked(source, target, images);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Arc<Complex<D>>,
        target: Arc<Complex<D>>,
        images: Vec<Simplex<D>>,
    ) -> Self {
        debug_assert_eq!(source.len(), images.len());
        Morphism {
            source,
            target,
            images,
        }
    }

    pub fn identity(x: &Arc<Complex<D>>) -> Self {
        let images = x.cell_ids().map(|c| x.nondegenerate(c)).collect();
        Morphism::new_unchecked(x.clone(), x.clone(), images)
    }

    pub fn source(&self) -> &Arc<Complex<D>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex<D>> {
        &self.target
    }

    pub fn images(&self) -> &[Simplex<D>] {
        &self.images
    }

    pub fn image(&self, cell: CellId) -> &Simplex<D> {
        &self.images[cell.index()]
    }

    /// `f(σ^* c) = σ^* f(c)`.
    pub fn apply(&self, x: &Simplex<D>) -> Simplex<D> {
        let img = &self.images[x.cell.index()];
        Simplex {
            ops: std::array::from_fn(|d| ops::compose(&img.ops[d], &x.ops[d])),
            cell: img.cell,
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism<D>) -> Result<Morphism<D>> {
        if !same_complex(&self.target, &next.source) {
            return Err(Error::NotAMap("composable maps must meet in one complex".into()));
        }
        let images = self.images.iter().map(|x| next.apply(x)).collect();
        Ok(Morphism::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            images,
        ))
    }

    /// Re-point source or target to structurally equal complexes.
    pub fn rebased(&self, source: Arc<Complex<D>>, target: Arc<Complex<D>>) -> Result<Self> {
        if !same_complex(&self.source, &source) || !same_complex(&self.target, &target) {
            return Err(Error::NotAMap("rebasing onto a different complex".into()));
        }
        Ok(Morphism::new_unchecked(source, target, self.images.clone()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.source.len() {
            return Err(Error::NotAMap("one image per source cell required".into()));
        }
        for c in self.source.cell_ids() {
            let cell = self.source.cell(c);
            let img = &self.images[c.index()];
            if img.cell.index() >= self.target.len() {
                return Err(Error::NotAMap(format!("image of {} is not a target cell", cell.label)));
            }
            let tcell = self.target.cell(img.cell);
            for d in 0..D {
                if img.ops[d].len() != cell.degree[d] + 1
                    || !ops::is_monotone(&img.ops[d])
                    || !ops::is_surjective_onto(&img.ops[d], tcell.degree[d])
                {
                    return Err(Error::NotAMap(format!(
                        "image of {} has the wrong degree",
                        cell.label
                    )));
                }
            }
            for d in 0..D {
                for i in 0..cell.faces[d].len() {
                    let lhs = self.apply(&cell.faces[d][i]);
                    let rhs = self.target.face(img, d, i);
                    if lhs != rhs {
                        return Err(Error::NotAMap(format!(
                            "face {i} in direction {d} of {} is not preserved",
                            cell.label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Injective on simplices of every degree: nondegenerate cells go to distinct
    /// nondegenerate cells (Eilenberg–Zilber uniqueness then covers the rest).
    pub fn is_mono(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.images.len());
        self.images
            .iter()
            .all(|img| img.is_nondegenerate() && seen.insert(img.cell))
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.images.len() == self.target.len()
    }

    /// Structural equality: same source, target and assignment.
    pub fn equals(&self, other: &Morphism<D>) -> bool {
        self.images == other.images
            && same_complex(&self.source, &other.source)
            && same_complex(&self.target, &other.target)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<Morphism<D>> {
        if !self.is_iso() {
            return None;
        }
        let mut images = vec![None; self.target.len()];
        for (c, img) in self.images.iter().enumerate() {
            images[img.cell.index()] = Some(self.source.nondegenerate(CellId(c as u32)));
        }
        Some(Morphism::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            images.into_iter().map(|x| x.expect("iso is onto")).collect(),
        ))
    }
}

/// `g ∘ f`.
pub fn compose<const D: usize>(g: &Morphism<D>, f: &Morphism<D>) -> Result<Morphism<D>> {
    f.then(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{boundary_inclusion, standard, terminal};

    #[test]
    fn boundary_inclusion_is_mono_not_iso() {
        let i = boundary_inclusion(2).unwrap();
        assert!(i.is_mono());
        assert!(!i.is_iso());
    }

    #[test]
    fn identity_is_iso() {
        let x = Arc::new(standard(3));
        let id = Morphism::identity(&x);
        assert!(id.is_mono() && id.is_iso());
        assert!(id.then(&id).unwrap().equals(&id));
    }

    #[test]
    fn collapse_is_not_mono() {
        let d1 = Arc::new(standard(1));
        let pt = Arc::new(terminal());
        let v = pt.nondegenerate(CellId(0));
        let images = d1
            .cell_ids()
            .map(|c| {
                let n = d1.cell(c).degree[0];
                let mut s = v.clone();
                s.ops[0] = (0..=n).map(|_| 0u8).collect();
                s
            })
            .collect();
        let f = Morphism::new(d1, pt, images).unwrap();
        assert!(!f.is_mono());
    }
}
