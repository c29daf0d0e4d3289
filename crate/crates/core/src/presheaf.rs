//! Finite presheaves on finite categories, the Grothendieck construction and
//! diagrams over a presheaf of categories.
//!
//! A presheaf `P` on `C` stores one section per object and, for every arrow
//! `f : a → b`, a restriction `P(f) : P(b) → P(a)`. Sections are either
//! simplicial sets or finite categories.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::adjunction::{k_shriek, k_upper_truncated_at};
use crate::bisimplicial::{horizontal_operator_map, Slice};
use crate::category::{Arrow, FiniteCategory, FunctorData};
use crate::colimit::disjoint_union;
use crate::complex::{BisimplicialSet, CellId, Simplex, SimplicialSet};
use crate::error::{Error, Result};
use crate::homology::integral_homology;
use crate::homotopy::{core_j, factor_through_mono};
use crate::lifting::is_quasi_category;
use crate::map::{same_complex, Morphism, SimplicialMap};
use crate::model::{degree_box, materialize, Model};
use crate::ops;

/// What a presheaf can take as sections.
pub trait Section: Clone + fmt::Debug {
    type Map: Clone + fmt::Debug;

    fn check_map(map: &Self::Map, source: &Self, target: &Self) -> Result<()>;
    /// `second ∘ first`.
    fn then(first: &Self::Map, second: &Self::Map) -> Self::Map;
    fn same_map(a: &Self::Map, b: &Self::Map) -> bool;
    fn identity(on: &Self) -> Self::Map;
}

impl Section for Arc<SimplicialSet> {
    type Map = SimplicialMap;

    fn check_map(map: &SimplicialMap, source: &Self, target: &Self) -> Result<()> {
        if !same_complex(map.source(), source) || !same_complex(map.target(), target) {
            return Err(Error::NotFunctorial("restriction between the wrong sections".into()));
        }
        map.validate()
    }

    fn then(first: &SimplicialMap, second: &SimplicialMap) -> SimplicialMap {
        first.then(second).expect("restrictions were checked to be composable")
    }

    fn same_map(a: &SimplicialMap, b: &SimplicialMap) -> bool {
        a.equals(b)
    }

    fn identity(on: &Self) -> SimplicialMap {
        Morphism::identity(on)
    }
}

impl Section for FiniteCategory {
    type Map = FunctorData;

    fn check_map(map: &FunctorData, source: &Self, target: &Self) -> Result<()> {
        map.validate(source, target)
    }

    fn then(first: &FunctorData, second: &FunctorData) -> FunctorData {
        first.then(second)
    }

    fn same_map(a: &FunctorData, b: &FunctorData) -> bool {
        a == b
    }

    fn identity(on: &Self) -> FunctorData {
        FunctorData::identity(on)
    }
}

#[derive(Clone, Debug)]
pub struct Presheaf<S: Section> {
    pub index: Arc<FiniteCategory>,
    pub sections: Vec<S>,
    /// Indexed by the arrows of `index`.
    pub restrictions: Vec<S::Map>,
}

pub type SimplicialPresheaf = Presheaf<Arc<SimplicialSet>>;
pub type CategoryPresheaf = Presheaf<FiniteCategory>;

impl<S: Section> Presheaf<S> {
    pub fn new(index: Arc<FiniteCategory>, sections: Vec<S>, restrictions: Vec<S::Map>) -> Result<Self> {
        let p = Presheaf {
            index,
            sections,
            restrictions,
        };
        p.validate()?;
        Ok(p)
    }

    /// Every object gets `section`, every arrow the identity.
    pub fn constant(index: Arc<FiniteCategory>, section: S) -> Self {
        let id = S::identity(&section);
        Presheaf {
            sections: vec![section; index.object_count()],
            restrictions: vec![id; index.arrow_count()],
            index,
        }
    }

    pub fn restriction(&self, f: usize) -> &S::Map {
        &self.restrictions[f]
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.index;
        if self.sections.len() != c.object_count() || self.restrictions.len() != c.arrow_count() {
            return Err(Error::NotFunctorial("wrong number of sections or restrictions".into()));
        }
        for (f, a) in c.arrows().iter().enumerate() {
            S::check_map(&self.restrictions[f], &self.sections[a.target], &self.sections[a.source])
                .map_err(|e| Error::NotFunctorial(format!("restriction along {}: {e}", a.name)))?;
        }
        for o in 0..c.object_count() {
            if !S::same_map(&self.restrictions[c.identity(o)], &S::identity(&self.sections[o])) {
                return Err(Error::NotFunctorial(format!(
                    "identity of {} does not restrict to the identity",
                    c.objects()[o]
                )));
            }
        }
        for (g, f, h) in c.composites() {
            let expected = S::then(&self.restrictions[g], &self.restrictions[f]);
            if !S::same_map(&self.restrictions[h], &expected) {
                return Err(Error::NotFunctorial(format!(
                    "restriction along {} ∘ {} is not the composite",
                    c.arrow(g).name,
                    c.arrow(f).name
                )));
            }
        }
        Ok(())
    }
}

/// A covering sieve, given by the arrows into `object` it contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sieve {
    pub object: usize,
    pub arrows: Vec<usize>,
}

/// `C/A` with its projection to `C`.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub category: FiniteCategory,
    /// `(U, x)` for every object.
    pub objects: Vec<(usize, usize)>,
    /// `(α, f)` for every arrow.
    pub arrows: Vec<(usize, usize)>,
    /// `c : (U, x) ↦ U`.
    pub forgetful: FunctorData,
}

/// Objects `(U, x)` with `x ∈ A(U)`; an arrow `(V, y) → (U, x)` is a pair
/// `(α, f)` with `α : V → U` and `f : α*(x) → y` in `A(V)`, composed by
/// `(α, f) ∘ (γ, g) = (αγ, g · γ*(f))`.
pub fn grothendieck(a: &CategoryPresheaf) -> Result<Grothendieck> {
    a.validate()?;
    let c = &a.index;
    let mut objects = Vec::new();
    let mut object_of = HashMap::new();
    for u in 0..c.object_count() {
        for x in 0..a.sections[u].object_count() {
            object_of.insert((u, x), objects.len());
            objects.push((u, x));
        }
    }
    let mut arrows = Vec::new();
    let mut named = Vec::new();
    let mut arrow_of = HashMap::new();
    for (alpha, al) in c.arrows().iter().enumerate() {
        let (v, u) = (al.source, al.target);
        let av = &a.sections[v];
        let pull = &a.restrictions[alpha];
        for x in 0..a.sections[u].object_count() {
            for y in 0..av.object_count() {
                for &f in av.hom(pull.objects[x], y) {
                    arrow_of.insert((alpha, x, f), arrows.len());
                    arrows.push((alpha, f));
                    named.push(Arrow {
                        name: format!("{}|{}", al.name, av.arrow(f).name),
                        source: object_of[&(v, y)],
                        target: object_of[&(u, x)],
                    });
                }
            }
        }
    }
    let target_x = |i: usize| objects[named[i].target].1;
    let mut composites = Vec::new();
    for (outer, &(alpha, f)) in arrows.iter().enumerate() {
        for (inner, &(gamma, g)) in arrows.iter().enumerate() {
            if named[inner].target != named[outer].source {
                continue;
            }
            let w = c.arrow(gamma).source;
            let pulled = a.restrictions[gamma].arrows[f];
            let h = a.sections[w].compose(g, pulled);
            let key = (c.compose(alpha, gamma), target_x(outer), h);
            let comp = *arrow_of
                .get(&key)
                .ok_or_else(|| Error::NotFunctorial("composite leaves the construction".into()))?;
            composites.push((outer, inner, comp));
        }
    }
    let identities = objects
        .iter()
        .map(|&(u, x)| arrow_of[&(c.identity(u), x, a.sections[u].identity(x))])
        .collect();
    let names = objects
        .iter()
        .map(|&(u, x)| format!("({},{})", c.objects()[u], a.sections[u].objects()[x]))
        .collect();
    let category = FiniteCategory::new(names, named, identities, &composites)?;
    let forgetful = FunctorData {
        objects: objects.iter().map(|&(u, _)| u).collect(),
        arrows: arrows.iter().map(|&(alpha, _)| alpha).collect(),
    };
    forgetful.validate(&category, c)?;
    Ok(Grothendieck {
        category,
        objects,
        arrows,
        forgetful,
    })
}

impl Grothendieck {
    /// The sieves `c^{-1}(S)` on each `(U, x)` over a covering sieve `S` on `U`.
    pub fn pull_back_sieve(&self, s: &Sieve) -> Vec<Sieve> {
        self.objects
            .iter()
            .enumerate()
            .filter(|(_, &(u, _))| u == s.object)
            .map(|(o, _)| Sieve {
                object: o,
                arrows: (0..self.arrows.len())
                    .filter(|&f| {
                        self.category.arrow(f).target == o && s.arrows.contains(&self.forgetful.arrows[f])
                    })
                    .collect(),
            })
            .collect()
    }
}

/// A presheaf of categories on a site, with its covering sieves. The
/// topology is carried along but plays no part in any computation.
#[derive(Clone, Debug)]
pub struct Site {
    pub categories: CategoryPresheaf,
    pub covers: Vec<Sieve>,
}

impl Site {
    pub fn grothendieck(&self) -> Result<(Grothendieck, Vec<Sieve>)> {
        let g = grothendieck(&self.categories)?;
        let covers = self.covers.iter().flat_map(|s| g.pull_back_sieve(s)).collect();
        Ok((g, covers))
    }
}

/// An `A`-diagram over `C`: simplicial sets `X(U)` with `π : X(U) → Ob A(U)`
/// and an action of the arrows of `A(U)` along `π`.
#[derive(Clone, Debug)]
pub struct ADiagram {
    pub acting: CategoryPresheaf,
    pub total: SimplicialPresheaf,
    /// `projection[U][cell]`.
    pub projection: Vec<Vec<usize>>,
    /// `action[U][(cell, a)]` for arrows `a` out of the projection of `cell`.
    pub action: Vec<HashMap<(CellId, usize), Simplex<1>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Projection,
    Typing,
    Faces,
    Identity,
    Composition,
    Restriction,
}

/// The first law an `A`-diagram breaks, with the simplex and arrows involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    pub object: String,
    pub simplex: String,
    pub arrows: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} fails at {} over {} with ({})",
            self.law,
            self.simplex,
            self.object,
            self.arrows.join(", ")
        )
    }
}

impl ADiagram {
    fn act(&self, u: usize, s: &Simplex<1>, a: usize) -> Option<Simplex<1>> {
        let y = self.action[u].get(&(s.cell, a))?;
        Some(Simplex {
            ops: [ops::compose(&y.ops[0], &s.ops[0])],
            cell: y.cell,
        })
    }
}

/// Checks the action laws section by section, then compatibility with the
/// restrictions of `C`.
pub fn check_adiagram(d: &ADiagram) -> std::result::Result<(), Violation> {
    let c = &d.acting.index;
    let violation = |law, u: usize, x: &SimplicialSet, s: &Simplex<1>, arrows: Vec<String>| Violation {
        law,
        object: c.objects()[u].clone(),
        simplex: crate::limit::simplex_label(x, s),
        arrows,
    };
    for u in 0..c.object_count() {
        let x = &d.total.sections[u];
        let au = &d.acting.sections[u];
        let pi = &d.projection[u];
        let name = |a: usize| au.arrow(a).name.clone();
        for cell in x.cell_ids() {
            let s = x.nondegenerate(cell);
            for i in 0..=s.dim() {
                if s.dim() > 0 && pi[x.face(&s, 0, i).cell.index()] != pi[cell.index()] {
                    return Err(violation(Law::Projection, u, x, &s, vec![]));
                }
            }
            for &a in au.arrows().iter().enumerate().filter(|(_, ar)| ar.source == pi[cell.index()]).map(|(a, _)| a).collect::<Vec<_>>().iter() {
                let Some(m) = d.act(u, &s, a) else {
                    return Err(violation(Law::Typing, u, x, &s, vec![name(a)]));
                };
                if m.dim() != s.dim() || pi[m.cell.index()] != au.arrow(a).target {
                    return Err(violation(Law::Typing, u, x, &s, vec![name(a)]));
                }
                if s.dim() > 0 {
                    for i in 0..=s.dim() {
                        if d.act(u, &x.face(&s, 0, i), a).as_ref() != Some(&x.face(&m, 0, i)) {
                            return Err(violation(Law::Faces, u, x, &s, vec![name(a)]));
                        }
                    }
                }
                if au.is_identity(a) && m != s {
                    return Err(violation(Law::Identity, u, x, &s, vec![name(a)]));
                }
                for &b in au.hom(au.arrow(a).target, au.arrow(a).target).iter().chain(
                    (0..au.object_count())
                        .filter(|&z| z != au.arrow(a).target)
                        .flat_map(|z| au.hom(au.arrow(a).target, z))
                ) {
                    let twice = d.act(u, &m, b);
                    let once = d.act(u, &s, au.compose(b, a));
                    if twice.is_none() || twice != once {
                        return Err(violation(Law::Composition, u, x, &s, vec![name(a), name(b)]));
                    }
                }
            }
        }
    }
    for (alpha, al) in c.arrows().iter().enumerate() {
        let (v, u) = (al.source, al.target);
        let r = &d.total.restrictions[alpha];
        let pull = &d.acting.restrictions[alpha];
        let x = &d.total.sections[u];
        let au = &d.acting.sections[u];
        for cell in x.cell_ids() {
            let s = x.nondegenerate(cell);
            let rs = r.apply(&s);
            let here = pull.objects[d.projection[u][cell.index()]];
            if d.projection[v][rs.cell.index()] != here {
                return Err(violation(Law::Restriction, u, x, &s, vec![al.name.clone()]));
            }
            for a in (0..au.arrow_count()).filter(|&a| au.arrow(a).source == d.projection[u][cell.index()]) {
                let m = d.act(u, &s, a).expect("typing checked above");
                if Some(r.apply(&m)) != d.act(v, &rs, pull.arrows[a]) {
                    return Err(violation(Law::Restriction, u, x, &s, vec![al.name.clone(), au.arrow(a).name.clone()]));
                }
            }
        }
    }
    Ok(())
}

fn simplex_arrows(n: usize) -> (FiniteCategory, Vec<(usize, usize, ops::Op, usize)>) {
    let delta = FiniteCategory::simplex_category(n);
    let mut out = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            for theta in ops::monotone_maps(p, q) {
                let f = delta.simplex_arrow(p, q, &theta).expect("monotone maps are arrows of Δ");
                out.push((p, q, theta, f));
            }
        }
    }
    out.sort_by_key(|t| t.3);
    (delta, out)
}

/// The `Δ^op`-diagram of a bisimplicial set truncated horizontally at `n`:
/// the vertical slices `X_{k*}` over `[k]`, acted on by the horizontal
/// operators. The site is the terminal category.
pub fn adiagram_of_bisimplicial(x: &BisimplicialSet, n: usize) -> ADiagram {
    let (delta, arrows) = simplex_arrows(n);
    let slices: Vec<Slice> = (0..=n).map(|k| Slice::new(x, k)).collect();
    let parts: Vec<Arc<SimplicialSet>> = slices.iter().map(|s| s.complex.clone()).collect();
    let (total, injections) = disjoint_union(&parts);
    let mut projection = vec![0; total.len()];
    let mut action = HashMap::new();
    for (k, inj) in injections.iter().enumerate() {
        for c in parts[k].cell_ids() {
            projection[inj.image(c).cell.index()] = k;
        }
    }
    // θ : [p] → [q] in Δ acts as θ^* : X_{q*} → X_{p*}
    for (p, q, theta, f) in &arrows {
        let m = horizontal_operator_map(x, &slices[*q], &slices[*p], theta);
        for c in parts[*q].cell_ids() {
            let img = injections[*p].apply(m.image(c));
            action.insert((injections[*q].image(c).cell, *f), img);
        }
    }
    let terminal = Arc::new(FiniteCategory::terminal());
    ADiagram {
        acting: Presheaf::constant(terminal.clone(), delta.opposite()),
        total: Presheaf::constant(terminal, total),
        projection: vec![projection],
        action: vec![action],
    }
}

/// A bisimplicial set as a presheaf of vertical slices on `Δ≤n`.
pub fn bisimplicial_to_presheaf(x: &BisimplicialSet, n: usize) -> Result<SimplicialPresheaf> {
    let (delta, arrows) = simplex_arrows(n);
    let slices: Vec<Slice> = (0..=n).map(|k| Slice::new(x, k)).collect();
    let restrictions = arrows
        .iter()
        .map(|(p, q, theta, _)| horizontal_operator_map(x, &slices[*q], &slices[*p], theta))
        .collect();
    Presheaf::new(
        Arc::new(delta),
        slices.iter().map(|s| s.complex.clone()).collect(),
        restrictions,
    )
}

struct PresheafModel<'a> {
    p: &'a SimplicialPresheaf,
    faces: Vec<Vec<usize>>,
    degeneracies: Vec<Vec<usize>>,
}

impl Model<2> for PresheafModel<'_> {
    type Key = (usize, Simplex<1>);

    fn simplices(&self, degree: [usize; 2]) -> Vec<Self::Key> {
        self.p.sections[degree[0]]
            .simplices([degree[1]])
            .into_iter()
            .map(|s| (degree[0], s))
            .collect()
    }

    fn degree(&self, key: &Self::Key) -> [usize; 2] {
        [key.0, key.1.dim()]
    }

    fn face(&self, key: &Self::Key, dir: usize, i: usize) -> Self::Key {
        let (k, s) = key;
        if dir == 1 {
            return (*k, self.p.sections[*k].face(s, 0, i));
        }
        (k - 1, self.p.restrictions[self.faces[*k][i]].apply(s))
    }

    fn degeneracy(&self, key: &Self::Key, dir: usize, i: usize) -> Self::Key {
        let (k, s) = key;
        if dir == 1 {
            return (*k, self.p.sections[*k].degeneracy(s, 0, i));
        }
        (k + 1, self.p.restrictions[self.degeneracies[*k][i]].apply(s))
    }

    fn label(&self, key: &Self::Key) -> String {
        format!("{}@{}", crate::limit::simplex_label(&self.p.sections[key.0], &key.1), key.0)
    }
}

/// The bisimplicial set of a presheaf on `Δ≤n`, horizontally truncated at `n`.
pub fn presheaf_to_bisimplicial(p: &SimplicialPresheaf) -> Result<BisimplicialSet> {
    let n = p
        .index
        .object_count()
        .checked_sub(1)
        .ok_or_else(|| Error::Unsupported("empty index category".into()))?;
    let delta = &p.index;
    let lookup = |a: usize, b: usize, theta: &[u8]| {
        delta
            .simplex_arrow(a, b, theta)
            .ok_or_else(|| Error::Unsupported("index category is not a truncated Δ".into()))
    };
    let faces = (0..=n)
        .map(|k| (0..=k).filter(|_| k > 0).map(|i| lookup(k - 1, k, &ops::coface(k, i))).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let degeneracies = (0..=n)
        .map(|k| {
            (0..=k)
                .filter(|_| k < n)
                .map(|i| lookup(k + 1, k, &ops::codegeneracy(k, i)))
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let top = p.sections.iter().map(|s| s.dim().unwrap_or(0)).max().unwrap_or(0);
    let model = PresheafModel {
        p,
        faces,
        degeneracies,
    };
    Ok((*materialize(&model, &degree_box([n, top])).complex).clone())
}

/// Endofunctors of simplicial sets and invariants that can be applied one
/// section at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionFunctor {
    Identity,
    KShriek { bound: usize },
    KUpper { bound: usize },
    CoreJ,
    Homology,
    IsQuasiCategory { bound: usize },
}

#[derive(Clone, Debug)]
pub enum Sectionwise {
    Presheaf(SimplicialPresheaf),
    /// One rendered value per object of the index category.
    Values(Vec<String>),
}

fn check_square(
    index: &FiniteCategory,
    f: usize,
    left: &SimplicialMap,
    right: &SimplicialMap,
) -> Result<()> {
    if left.equals(right) {
        Ok(())
    } else {
        Err(Error::Naturality(format!("square along {} does not commute", index.arrow(f).name)))
    }
}

/// Applies `functor` to every section and restriction. Functor-valued results
/// come with their comparison to the input (unit, counit or inclusion), whose
/// naturality is checked along every arrow.
pub fn sectionwise_apply(p: &SimplicialPresheaf, functor: &SectionFunctor) -> Result<Sectionwise> {
    let c = &p.index;
    let arrows = c.arrows();
    let out = match functor {
        SectionFunctor::Identity => p.clone(),
        SectionFunctor::KShriek { bound } => {
            let values: Vec<_> = p.sections.iter().map(|x| k_shriek(x, *bound)).collect();
            let units = values.iter().map(|k| k.unit()).collect::<Result<Vec<_>>>()?;
            let mut restrictions = Vec::new();
            for (f, a) in arrows.iter().enumerate() {
                let r = &p.restrictions[f];
                let kr = values[a.target].map_to(r, &values[a.source])?;
                check_square(c, f, &r.then(&units[a.source])?, &units[a.target].then(&kr)?)?;
                restrictions.push(kr);
            }
            Presheaf::new(c.clone(), values.iter().map(|k| k.complex().clone()).collect(), restrictions)?
        }
        SectionFunctor::KUpper { bound } => {
            let level = p.sections.iter().map(|x| x.dim().unwrap_or(0)).max().unwrap_or(0) + 1;
            let values: Vec<_> = p.sections.iter().map(|x| k_upper_truncated_at(x, *bound, level)).collect();
            let mut restrictions = Vec::new();
            for (f, a) in arrows.iter().enumerate() {
                let r = &p.restrictions[f];
                let kr = values[a.target].map_along(r, &values[a.source])?;
                check_square(c, f, &kr.then(&values[a.source].counit)?, &values[a.target].counit.then(r)?)?;
                restrictions.push(kr);
            }
            Presheaf::new(c.clone(), values.iter().map(|k| k.value.value.clone()).collect(), restrictions)?
        }
        SectionFunctor::CoreJ => {
            let incl = p.sections.iter().map(core_j).collect::<Result<Vec<_>>>()?;
            let mut restrictions = Vec::new();
            for (f, a) in arrows.iter().enumerate() {
                let through = incl[a.target].then(&p.restrictions[f])?;
                let jr = factor_through_mono(&incl[a.source], &through)
                    .map_err(|e| Error::Naturality(format!("along {}: {e}", a.name)))?;
                restrictions.push(jr);
            }
            Presheaf::new(c.clone(), incl.iter().map(|j| j.source().clone()).collect(), restrictions)?
        }
        SectionFunctor::Homology => {
            return Ok(Sectionwise::Values(
                p.sections
                    .iter()
                    .map(|x| {
                        integral_homology(x)
                            .iter()
                            .map(|h| h.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect(),
            ))
        }
        SectionFunctor::IsQuasiCategory { bound } => {
            return Ok(Sectionwise::Values(
                p.sections
                    .iter()
                    .map(|x| is_quasi_category(x, *bound, None).status.as_str().to_string())
                    .collect(),
            ))
        }
    };
    Ok(Sectionwise::Presheaf(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisimplicial::{disc_nerve, generator_f};
    use crate::category::find_category_isomorphism;
    use crate::hom::is_isomorphic;
    use crate::nerve::{nerve_map, Nerve};
    use crate::standard::{standard, standard_map};

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    #[test]
    fn grothendieck_over_a_point() {
        let d = FiniteCategory::ordinal(2);
        let a = Presheaf::constant(arc(FiniteCategory::terminal()), d.clone());
        let g = grothendieck(&a).unwrap();
        assert!(find_category_isomorphism(&g.category, &d.opposite()).is_some());
    }

    #[test]
    fn grothendieck_recovers_delta() {
        for n in 0..=2 {
            let a = Presheaf::constant(arc(FiniteCategory::terminal()), FiniteCategory::simplex_category(n).opposite());
            let g = grothendieck(&a).unwrap();
            let delta = FiniteCategory::simplex_category(n);
            let iso = FunctorData {
                objects: g.objects.iter().map(|&(_, x)| x).collect(),
                arrows: g.arrows.iter().map(|&(_, f)| f).collect(),
            };
            iso.validate(&g.category, &delta).unwrap();
            assert_eq!(g.category.arrow_count(), delta.arrow_count());
        }
    }

    #[test]
    fn grothendieck_of_a_discrete_presheaf_is_a_category_of_elements() {
        // A : [1]^op → Set as discrete categories, A(1) = {p, q} → A(0) = {r}
        let c = arc(FiniteCategory::ordinal(1));
        let sections = vec![FiniteCategory::discrete(1), FiniteCategory::discrete(2)];
        let restrictions = c
            .arrows()
            .iter()
            .map(|a| match (a.source, a.target) {
                (0, 1) => FunctorData { objects: vec![0, 0], arrows: vec![0, 0] },
                (k, _) => FunctorData::identity(&sections[k]),
            })
            .collect();
        let a = Presheaf::new(c.clone(), sections, restrictions).unwrap();
        let g = grothendieck(&a).unwrap();
        assert_eq!(g.category.object_count(), 3);
        assert_eq!(g.category.arrow_count(), 5);
        g.forgetful.validate(&g.category, &c).unwrap();
    }

    #[test]
    fn non_functorial_presheaf_is_rejected() {
        let c = arc(FiniteCategory::ordinal(2));
        let two = FiniteCategory::discrete(2);
        let swap = FunctorData { objects: vec![1, 0], arrows: vec![1, 0] };
        let mut r = vec![FunctorData::identity(&two); c.arrow_count()];
        for (f, a) in c.arrows().iter().enumerate() {
            if a.source != a.target {
                r[f] = swap.clone();
            }
        }
        let err = Presheaf::new(c, vec![two; 3], r).unwrap_err();
        assert!(matches!(err, Error::NotFunctorial(_)));
    }

    #[test]
    fn sieves_pull_back() {
        let c = arc(FiniteCategory::ordinal(1));
        let site = Site {
            categories: Presheaf::constant(c.clone(), FiniteCategory::discrete(2)),
            covers: vec![Sieve { object: 1, arrows: c.hom(0, 1).to_vec() }],
        };
        let (g, covers) = site.grothendieck().unwrap();
        assert_eq!(g.category.object_count(), 4);
        assert_eq!(covers.len(), 2);
        assert!(covers.iter().all(|s| s.arrows.len() == 1));
    }

    #[test]
    fn bisimplicial_diagram_satisfies_the_laws() {
        for x in [generator_f(1), disc_nerve(&FiniteCategory::ordinal(1), 2).value] {
            let d = adiagram_of_bisimplicial(&x, 2);
            check_adiagram(&d).unwrap();
        }
    }

    #[test]
    fn broken_action_reports_a_triple() {
        let x = generator_f(1);
        let mut d = adiagram_of_bisimplicial(&x, 1);
        let delta = &d.acting.sections[0];
        // send both endpoints of the nondegenerate horizontal edge to one vertex
        let f = (0..delta.arrow_count())
            .find(|&f| delta.arrow(f).source == 1 && delta.arrow(f).target == 0)
            .unwrap();
        let g = (0..delta.arrow_count())
            .find(|&g| g != f && delta.arrow(g).source == 1 && delta.arrow(g).target == 0)
            .unwrap();
        let edge = (0..d.projection[0].len())
            .map(|i| CellId(i as u32))
            .find(|&c| d.projection[0][c.index()] == 1 && d.action[0][&(c, f)] != d.action[0][&(c, g)])
            .unwrap();
        let other = d.action[0][&(edge, g)].clone();
        d.action[0].insert((edge, f), other);
        let v = check_adiagram(&d).unwrap_err();
        assert_eq!(v.law, Law::Composition);
        assert_eq!(v.arrows.len(), 2);
    }

    #[test]
    fn bisimplicial_round_trip() {
        for x in [generator_f(2), disc_nerve(&FiniteCategory::chaotic(1), 2).value] {
            let p = bisimplicial_to_presheaf(&x, 2).unwrap();
            let y = presheaf_to_bisimplicial(&p).unwrap();
            let sk = crate::standard::horizontal_skeleton_inclusion(&arc(x.clone()), 2);
            assert!(is_isomorphic(sk.source(), &arc(y)));
        }
    }

    /// `P(1) = Δ^1` restricting to `P(0) = Δ^0`, over `[1]`.
    fn interval_presheaf() -> SimplicialPresheaf {
        let c = arc(FiniteCategory::ordinal(1));
        let x0 = arc(standard(0));
        let x1 = arc(standard(1));
        let collapse = standard_map(1, 0, &[0, 0]).rebased(x1.clone(), x0.clone()).unwrap();
        let restrictions = c
            .arrows()
            .iter()
            .map(|a| match (a.source, a.target) {
                (0, 1) => collapse.clone(),
                (0, 0) => Morphism::identity(&x0),
                _ => Morphism::identity(&x1),
            })
            .collect();
        Presheaf::new(c, vec![x0, x1], restrictions).unwrap()
    }

    #[test]
    fn sectionwise_functors() {
        let p = interval_presheaf();
        for f in [
            SectionFunctor::Identity,
            SectionFunctor::KShriek { bound: 2 },
            SectionFunctor::KUpper { bound: 1 },
            SectionFunctor::CoreJ,
        ] {
            match sectionwise_apply(&p, &f).unwrap() {
                Sectionwise::Presheaf(q) => q.validate().unwrap(),
                Sectionwise::Values(_) => panic!("expected a presheaf"),
            }
        }
        let Sectionwise::Values(h) = sectionwise_apply(&p, &SectionFunctor::Homology).unwrap() else {
            panic!()
        };
        assert_eq!(h, vec!["Z", "Z 0"]);
        let Sectionwise::Values(q) = sectionwise_apply(&p, &SectionFunctor::IsQuasiCategory { bound: 2 }).unwrap()
        else {
            panic!()
        };
        assert_eq!(q, vec!["holds", "holds"]);
    }

    #[test]
    fn sectionwise_core_of_nerves() {
        // P(1) = B[1] restricting into P(0) = Bπ(Δ^1)
        let c = arc(FiniteCategory::ordinal(1));
        let g = FiniteCategory::chaotic(1);
        let nv = Nerve::new(&arc(g.clone()), 2);
        let np = Nerve::new(&arc(FiniteCategory::ordinal(1)), 2);
        let functor = crate::category::thin_functor(&FiniteCategory::ordinal(1), &g, &[0, 1]).unwrap();
        let incl = nerve_map(&functor, &np, &nv).unwrap();
        let restrictions = c
            .arrows()
            .iter()
            .map(|a| match (a.source, a.target) {
                (0, 1) => incl.clone(),
                (0, 0) => Morphism::identity(&nv.complex),
                _ => Morphism::identity(&np.complex),
            })
            .collect();
        let p = Presheaf::new(c, vec![nv.complex.clone(), np.complex.clone()], restrictions).unwrap();
        let Sectionwise::Presheaf(j) = sectionwise_apply(&p, &SectionFunctor::CoreJ).unwrap() else {
            panic!("expected a presheaf")
        };
        assert!(is_isomorphic(&j.sections[0], &nv.complex));
        assert_eq!(j.sections[1].cell_counts(), vec![2]);
    }
}
