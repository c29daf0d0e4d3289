//! Nerves of finite categories and fundamental groupoid presentations.

use std::sync::Arc;

use crate::category::{FiniteCategory, FunctorData};
use crate::complex::{Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::map::{Morphism, SimplicialMap};
use crate::model::{dims, has_nondegenerate, materialize, Model, Presented};
use crate::Truncated;

/// A chain `x_0 → x_1 → … → x_n`: start object and arrows.
pub type Chain = (usize, Vec<usize>);

pub(crate) struct NerveModel<'a> {
    pub c: &'a FiniteCategory,
}

impl NerveModel<'_> {
    fn vertex(&self, key: &Chain, i: usize) -> usize {
        if i == 0 {
            key.0
        } else {
            self.c.arrow(key.1[i - 1]).target
        }
    }
}

fn chains(c: &FiniteCategory, n: usize, nondegenerate_only: bool) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(c: &FiniteCategory, at: usize, n: usize, nd: bool, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Chain>) {
        if cur.len() == n {
            out.push((start, cur.clone()));
            return;
        }
        for t in 0..c.object_count() {
            for &f in c.hom(at, t) {
                if nd && c.is_identity(f) {
                    continue;
                }
                cur.push(f);
                rec(c, t, n, nd, start, cur, out);
                cur.pop();
            }
        }
    }
    for o in 0..c.object_count() {
        rec(c, o, n, nondegenerate_only, o, &mut cur, &mut out);
    }
    out
}

impl Model<1> for NerveModel<'_> {
    type Key = Chain;

    fn simplices(&self, degree: [usize; 1]) -> Vec<Chain> {
        chains(self.c, degree[0], true)
    }

    fn degree(&self, key: &Chain) -> [usize; 1] {
        [key.1.len()]
    }

    fn face(&self, key: &Chain, _dir: usize, i: usize) -> Chain {
        let n = key.1.len();
        let mut arrows = key.1.clone();
        if i == 0 {
            let start = self.c.arrow(arrows[0]).target;
            arrows.remove(0);
            (start, arrows)
        } else if i == n {
            arrows.pop();
            (key.0, arrows)
        } else {
            let h = self.c.compose(arrows[i], arrows[i - 1]);
            arrows.splice(i - 1..=i, [h]);
            (key.0, arrows)
        }
    }

    fn degeneracy(&self, key: &Chain, _dir: usize, i: usize) -> Chain {
        let mut arrows = key.1.clone();
        arrows.insert(i, self.c.identity(self.vertex(key, i)));
        (key.0, arrows)
    }

    fn label(&self, key: &Chain) -> String {
        chain_label(self.c, key)
    }
}

pub(crate) fn chain_label(c: &FiniteCategory, key: &Chain) -> String {
    if key.1.is_empty() {
        return c.objects()[key.0].clone();
    }
    if c.is_thin() {
        let mut objs = vec![&c.objects()[key.0]];
        objs.extend(key.1.iter().map(|&f| &c.objects()[c.arrow(f).target]));
        if objs.iter().all(|o| o.len() == 1) {
            objs.into_iter().map(|s| s.as_str()).collect()
        } else {
            objs.into_iter().map(|s| s.as_str()).collect::<Vec<_>>().join(".")
        }
    } else {
        key.1.iter().map(|&f| c.arrow(f).name.as_str()).collect::<Vec<_>>().join(",")
    }
}

/// The nerve `B(C)` up to dimension `N`, with its chain dictionary.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub category: Arc<FiniteCategory>,
    pub complex: Arc<SimplicialSet>,
    pub bound: usize,
    /// No nondegenerate chain of length `N + 1` exists, so the nerve is complete.
    pub exact: bool,
    presented: Presented<Chain, 1>,
}

impl Nerve {
    pub fn new(c: &Arc<FiniteCategory>, n: usize) -> Self {
        let model = NerveModel { c };
        let presented = materialize(&model, &dims(n));
        let exact = !has_nondegenerate(&model, [n + 1]);
        Nerve {
            category: c.clone(),
            complex: presented.complex.clone(),
            bound: n,
            exact,
            presented,
        }
    }

    /// Normal form of a chain (identities allowed).
    pub fn simplex(&self, chain: &Chain) -> Option<Simplex<1>> {
        let model = NerveModel { c: &self.category };
        self.presented.simplex_of(&model, chain)
    }

    pub fn chain(&self, cell: crate::complex::CellId) -> &Chain {
        self.presented.key(cell)
    }

    /// The chain of an arbitrary simplex.
    pub fn chain_of(&self, s: &Simplex<1>) -> Chain {
        let model = NerveModel { c: &self.category };
        let mut key = self.chain(s.cell).clone();
        // apply the degeneracies of the normal form, innermost first
        for &i in s.word().iter().rev() {
            key = model.degeneracy(&key, 0, i);
        }
        key
    }

    pub fn truncated(&self) -> Truncated<Arc<SimplicialSet>> {
        Truncated {
            value: self.complex.clone(),
            bound: self.bound,
            exact: self.exact,
        }
    }
}

/// `B(C)` truncated at `N`, flagged exact when nothing above `N` was dropped.
pub fn nerve(c: &FiniteCategory, n: usize) -> Truncated<SimplicialSet> {
    let nv = Nerve::new(&Arc::new(c.clone()), n);
    Truncated {
        value: (*nv.complex).clone(),
        bound: n,
        exact: nv.exact,
    }
}

/// `B(F) : B(C) → B(D)` between given nerves.
pub fn nerve_map(f: &FunctorData, source: &Nerve, target: &Nerve) -> Result<SimplicialMap> {
    f.validate(&source.category, &target.category)?;
    let images = source
        .complex
        .cell_ids()
        .map(|c| {
            let (start, arrows) = source.chain(c);
            let img = (f.objects[*start], arrows.iter().map(|&a| f.arrows[a]).collect());
            target
                .simplex(&img)
                .ok_or_else(|| Error::NotAMap("target nerve is truncated too low".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism::new_unchecked(source.complex.clone(), target.complex.clone(), images))
}

/// Recover a functor from a map of nerves (nerves are determined by their 2-truncation).
pub fn functor_of_nerve_map(m: &SimplicialMap, source: &Nerve, target: &Nerve) -> Result<FunctorData> {
    if source.bound < 1 {
        return Err(Error::DimensionTooSmall { min: 1, got: source.bound });
    }
    let c = &source.category;
    let objects = (0..c.object_count())
        .map(|o| {
            let s = source.simplex(&(o, Vec::new())).expect("vertex present");
            target.chain_of(&m.apply(&s)).0
        })
        .collect();
    let arrows = (0..c.arrow_count())
        .map(|f| {
            let s = source.simplex(&(c.arrow(f).source, vec![f])).expect("edge present");
            target.chain_of(&m.apply(&s)).1[0]
        })
        .collect();
    let fd = FunctorData { objects, arrows };
    fd.validate(c, &target.category)?;
    Ok(fd)
}

/// A groupoid presentation: objects, generating arrows and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidPresentation {
    pub objects: Vec<String>,
    /// `(label, source, target)` per nondegenerate edge.
    pub generators: Vec<(String, usize, usize)>,
    /// For each 2-cell with boundary edges `e01, e12, e02`: the loop
    /// `e01 · e12 · e02⁻¹`, as `(generator, exponent)`; degenerate edges are omitted.
    pub relations: Vec<Vec<(usize, i8)>>,
}

/// Presentation of `π(K)`; no word problem is attempted.
pub fn fundamental_groupoid_presentation(k: &SimplicialSet) -> GroupoidPresentation {
    let vertices: Vec<_> = k.vertices().collect();
    let vindex = |c: crate::complex::CellId| vertices.iter().position(|&v| v == c).unwrap();
    let edges: Vec<_> = k.cells_of([1]).collect();
    let eindex = |c: crate::complex::CellId| edges.iter().position(|&e| e == c).unwrap();
    let generators = edges
        .iter()
        .map(|&e| {
            let f = &k.cell(e).faces[0];
            (k.label(e).to_string(), vindex(f[1].cell), vindex(f[0].cell))
        })
        .collect();
    let relations = k
        .cells_of([2])
        .map(|t| {
            let f = &k.cell(t).faces[0];
            let mut word = Vec::new();
            for (s, exp) in [(&f[2], 1i8), (&f[0], 1), (&f[1], -1)] {
                if s.is_nondegenerate() {
                    word.push((eindex(s.cell), exp));
                }
            }
            word
        })
        .collect();
    GroupoidPresentation {
        objects: vertices.iter().map(|&v| k.label(v).to_string()).collect(),
        generators,
        relations,
    }
}

impl GroupoidPresentation {
    /// Evaluate a word `(generator, ±1)` in the chaotic groupoid on the objects:
    /// the unique arrow from the start to the end of the path.
    pub fn evaluate_chaotic(&self, word: &[(usize, i8)]) -> Option<(usize, usize)> {
        let mut start = None;
        let mut at = None;
        for &(g, e) in word {
            let (_, s, t) = &self.generators[g];
            let (from, to) = if e > 0 { (*s, *t) } else { (*t, *s) };
            if let Some(a) = at {
                if a != from {
                    return None;
                }
            } else {
                start = Some(from);
            }
            at = Some(to);
        }
        Some((start?, at?))
    }

    /// The normal form identifying the presented groupoid with the chaotic
    /// groupoid on its objects: generators go to the arrow between their
    /// endpoints, every relation evaluates to an identity, and the generators
    /// connect all objects. Returns the comparison functor from the free
    /// generators, or `None` when the presentation is not of that shape.
    pub fn chaotic_normal_form(&self) -> Option<(FiniteCategory, Vec<usize>)> {
        let n = self.objects.len();
        if n == 0 {
            return None;
        }
        let ch = FiniteCategory::chaotic(n - 1);
        for r in &self.relations {
            if !r.is_empty() {
                let (a, b) = self.evaluate_chaotic(r)?;
                if a != b {
                    return None;
                }
            }
        }
        // connectivity
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut Vec<usize>, a: usize) -> usize {
            if c[a] != a {
                let r = find(c, c[a]);
                c[a] = r;
            }
            c[a]
        }
        for (_, s, t) in &self.generators {
            let (a, b) = (find(&mut comp, *s), find(&mut comp, *t));
            comp[a.max(b)] = a.min(b);
        }
        if (0..n).any(|v| find(&mut comp, v) != 0) {
            return None;
        }
        let images = self
            .generators
            .iter()
            .map(|(_, s, t)| ch.hom(*s, *t)[0])
            .collect();
        Some((ch, images))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::standard;

    #[test]
    fn nerve_of_ordinal_is_standard_simplex() {
        let n = nerve(&FiniteCategory::ordinal(2), 2);
        assert!(n.exact);
        assert_eq!(n.value, standard(2));
        let n1 = nerve(&FiniteCategory::ordinal(1), 5);
        assert_eq!(n1.value, standard(1));
    }

    #[test]
    fn chaotic_nerve_has_two_cells_per_dimension() {
        let n = nerve(&FiniteCategory::chaotic(1), 3);
        assert!(!n.exact);
        assert_eq!(n.value.cell_counts(), vec![2, 2, 2, 2]);
        n.value.validate().unwrap();
    }

    #[test]
    fn chaotic_simplex_counts_are_all_functions() {
        for k in 0..3 {
            let n = nerve(&FiniteCategory::chaotic(k), 3);
            for m in 0..=3 {
                assert_eq!(n.value.simplex_count([m]), (k + 1).pow(m as u32 + 1));
            }
        }
    }

    #[test]
    fn circle_presentation() {
        let i = crate::standard::boundary_inclusion(1).unwrap();
        let c = crate::standard::to_terminal(i.source());
        let p = crate::colimit::pushout(&i, &c).unwrap();
        let g = fundamental_groupoid_presentation(&p.object);
        assert_eq!(g.generators.len(), 1);
        assert!(g.relations.is_empty());
    }

    #[test]
    fn standard_presentation_is_chaotic() {
        for n in 0..4 {
            let g = fundamental_groupoid_presentation(&standard(n));
            let (ch, _) = g.chaotic_normal_form().unwrap();
            assert_eq!(ch, FiniteCategory::chaotic(n));
        }
    }
}
