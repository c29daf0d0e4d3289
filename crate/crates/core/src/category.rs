//! Finite categories given by explicit composition tables, and functors between them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category. Arrows are numbered; `compose(g, f)` is `g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    table: Vec<u32>,
    homs: Vec<Vec<usize>>,
}

impl FiniteCategory {
    /// Checked constructor. `composites` lists `(g, f, g∘f)` for every composable pair.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = arrows.len();
        if identities.len() != objects.len() {
            return Err(Error::NotACategory("one identity per object required".into()));
        }
        for a in &arrows {
            if a.source >= objects.len() || a.target >= objects.len() {
                return Err(Error::NotACategory(format!("arrow {} has an unknown endpoint", a.name)));
            }
        }
        let mut table = vec![NONE; m * m];
        for &(g, f, h) in composites {
            if g >= m || f >= m || h >= m {
                return Err(Error::NotACategory("composite names an unknown arrow".into()));
            }
            if table[g * m + f] != NONE && table[g * m + f] as usize != h {
                return Err(Error::NotACategory(format!(
                    "{} ∘ {} given twice",
                    arrows[g].name, arrows[f].name
                )));
            }
            table[g * m + f] = h as u32;
        }
        let c = Self::assemble(objects, arrows, identities, table);
        c.validate()?;
        Ok(c)
    }

    fn assemble(objects: Vec<String>, arrows: Vec<Arrow>, identities: Vec<usize>, table: Vec<u32>) -> Self {
        let n = objects.len();
        let mut homs = vec![Vec::new(); n * n];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.source * n + a.target].push(i);
        }
        FiniteCategory {
            objects,
            arrows,
            identities,
            table,
            homs,
        }
    }

    /// Identity, unit and associativity laws on the whole table.
    pub fn validate(&self) -> Result<()> {
        let m = self.arrows.len();
        for (o, &id) in self.identities.iter().enumerate() {
            let a = self.arrows.get(id).ok_or_else(|| Error::NotACategory("bad identity".into()))?;
            if a.source != o || a.target != o {
                return Err(Error::NotACategory(format!("identity of {} is not an endomorphism", self.objects[o])));
            }
        }
        for g in 0..m {
            for f in 0..m {
                let composable = self.arrows[f].target == self.arrows[g].source;
                let h = self.table[g * m + f];
                match (composable, h == NONE) {
                    (true, true) => {
                        return Err(Error::NotACategory(format!(
                            "{} ∘ {} is missing",
                            self.arrows[g].name, self.arrows[f].name
                        )))
                    }
                    (false, false) => {
                        return Err(Error::NotACategory(format!(
                            "{} ∘ {} is not composable",
                            self.arrows[g].name, self.arrows[f].name
                        )))
                    }
                    (true, false) => {
                        let h = &self.arrows[h as usize];
                        if h.source != self.arrows[f].source || h.target != self.arrows[g].target {
                            return Err(Error::NotACategory(format!(
                                "{} ∘ {} has the wrong endpoints",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                    }
                    _ => {}
                }
            }
        }
        for f in 0..m {
            let a = &self.arrows[f];
            if self.compose(self.identities[a.target], f) != f || self.compose(f, self.identities[a.source]) != f {
                return Err(Error::NotACategory(format!("unit law fails at {}", a.name)));
            }
        }
        for f in 0..m {
            for g in self.out_of(self.arrows[f].target) {
                for h in self.out_of(self.arrows[g].target) {
                    let l = self.compose(h, self.compose(g, f));
                    let r = self.compose(self.compose(h, g), f);
                    if l != r {
                        return Err(Error::NotACategory(format!(
                            "associativity fails at ({}, {}, {})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn out_of(&self, o: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.objects.len()).flat_map(move |t| self.hom(o, t).iter().copied())
    }

    /// A category whose arrows are the pairs of a reflexive transitive relation.
    pub fn thin(n: usize, related: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || related(a, b) {
                    index.insert((a, b), arrows.len());
                    arrows.push(Arrow {
                        name: format!("{}{}{}", objects[a], if n > 10 { "." } else { "" }, objects[b]),
                        source: a,
                        target: b,
                    });
                }
            }
        }
        let identities = (0..n).map(|a| index[&(a, a)]).collect();
        let mut composites = Vec::new();
        for (&(a, b), &f) in &index {
            for c in 0..n {
                if let Some(&g) = index.get(&(b, c)) {
                    let h = *index
                        .get(&(a, c))
                        .ok_or_else(|| Error::NotACategory("relation is not transitive".into()))?;
                    composites.push((g, f, h));
                }
            }
        }
        Self::new(objects, arrows, identities, &composites)
    }

    /// The ordinal `[n] = {0 < 1 < … < n}`.
    pub fn ordinal(n: usize) -> Self {
        Self::thin(n + 1, |a, b| a <= b).expect("ordinals are posets")
    }

    /// A finite poset on `0..n` from generating relations `a ≤ b`.
    pub fn poset(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::NotACategory("relation names an unknown element".into()));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le[a][b] && le[b][a] {
                    return Err(Error::NotACategory("relation has a cycle".into()));
                }
            }
        }
        Self::thin(n, |a, b| le[a][b])
    }

    /// The groupoid on `0..=n` with one arrow between each ordered pair.
    pub fn chaotic(n: usize) -> Self {
        Self::thin(n + 1, |_, _| true).expect("chaotic groupoids are thin")
    }

    pub fn discrete(n: usize) -> Self {
        Self::thin(n, |a, b| a == b).expect("discrete categories are thin")
    }

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    /// A one-object category from a multiplication table on `0..n`, with `0` the unit.
    pub fn monoid(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let arrows = (0..n)
            .map(|i| Arrow {
                name: if i == 0 { "id".into() } else { format!("m{i}") },
                source: 0,
                target: 0,
            })
            .collect();
        let mut composites = Vec::new();
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotACategory("monoid table is not square".into()));
            }
            for (f, &h) in row.iter().enumerate() {
                composites.push((g, f, h));
            }
        }
        Self::new(vec!["*".into()], arrows, vec![0], &composites)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].source] == f
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn compose(&self, g: usize, f: usize) -> usize {
        let h = self.table[g * self.arrows.len() + f];
        assert!(h != NONE, "arrows are not composable");
        h as usize
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        let h = self.table[g * self.arrows.len() + f];
        (h != NONE).then_some(h as usize)
    }

    /// All hom-sets have at most one element.
    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let a = &self.arrows[f];
        self.hom(a.target, a.source).iter().copied().find(|&g| {
            self.compose(g, f) == self.identities[a.source] && self.compose(f, g) == self.identities[a.target]
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrows.len()).all(|f| self.is_iso(f))
    }

    /// The composition table as `(g, f, g∘f)` triples.
    pub fn composites(&self) -> Vec<(usize, usize, usize)> {
        let m = self.arrows.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.try_compose(g, f) {
                    out.push((g, f, h));
                }
            }
        }
        out
    }

    pub fn opposite(&self) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        let table = {
            let m = self.arrows.len();
            let mut t = vec![NONE; m * m];
            for g in 0..m {
                for f in 0..m {
                    t[g * m + f] = self.table[f * m + g];
                }
            }
            t
        };
        Self::assemble(self.objects.clone(), arrows, self.identities.clone(), table)
    }

    /// Subcategory on the kept arrows, which must contain the identities of the
    /// kept objects and be closed under composition. Returns the inclusion too.
    pub fn subcategory(&self, keep_object: impl Fn(usize) -> bool, keep_arrow: impl Fn(usize) -> bool) -> Result<(Self, FunctorData)> {
        let objs: Vec<usize> = (0..self.objects.len()).filter(|&o| keep_object(o)).collect();
        let mut obj_index = vec![None; self.objects.len()];
        for (i, &o) in objs.iter().enumerate() {
            obj_index[o] = Some(i);
        }
        let arrs: Vec<usize> = (0..self.arrows.len())
            .filter(|&f| {
                keep_arrow(f) && obj_index[self.arrows[f].source].is_some() && obj_index[self.arrows[f].target].is_some()
            })
            .collect();
        let mut arr_index = vec![None; self.arrows.len()];
        for (i, &f) in arrs.iter().enumerate() {
            arr_index[f] = Some(i);
        }
        let arrows = arrs
            .iter()
            .map(|&f| Arrow {
                name: self.arrows[f].name.clone(),
                source: obj_index[self.arrows[f].source].unwrap(),
                target: obj_index[self.arrows[f].target].unwrap(),
            })
            .collect();
        let identities = objs
            .iter()
            .map(|&o| arr_index[self.identities[o]].ok_or_else(|| Error::NotACategory("subcategory drops an identity".into())))
            .collect::<Result<Vec<_>>>()?;
        let mut composites = Vec::new();
        for &g in &arrs {
            for &f in &arrs {
                if let Some(h) = self.try_compose(g, f) {
                    let h = arr_index[h].ok_or_else(|| Error::NotACategory("subcategory is not closed under composition".into()))?;
                    composites.push((arr_index[g].unwrap(), arr_index[f].unwrap(), h));
                }
            }
        }
        let sub = Self::new(objs.iter().map(|&o| self.objects[o].clone()).collect(), arrows, identities, &composites)?;
        Ok((sub, FunctorData { objects: objs, arrows: arrs }))
    }

    /// The wide subcategory of isomorphisms.
    pub fn iso_subcategory(&self) -> Self {
        self.subcategory(|_| true, |f| self.is_iso(f))
            .expect("isomorphisms form a wide subcategory")
            .0
    }

    pub fn product(&self, other: &Self) -> Self {
        let n2 = other.objects.len();
        let m2 = other.arrows.len();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .flat_map(|f| {
                other.arrows.iter().map(move |g| Arrow {
                    name: format!("({},{})", f.name, g.name),
                    source: f.source * n2 + g.source,
                    target: f.target * n2 + g.target,
                })
            })
            .collect();
        let identities = (0..self.objects.len())
            .flat_map(|a| (0..n2).map(move |b| (a, b)))
            .map(|(a, b)| self.identities[a] * m2 + other.identities[b])
            .collect();
        let composites: Vec<_> = self
            .composites()
            .into_iter()
            .flat_map(|(g1, f1, h1)| {
                other
                    .composites()
                    .into_iter()
                    .map(move |(g2, f2, h2)| (g1 * m2 + g2, f1 * m2 + f2, h1 * m2 + h2))
            })
            .collect();
        Self::new(objects, arrows, identities, &composites).expect("products of categories are categories")
    }

    /// Disjoint union: objects and arrows of `self` first, then of `other`.
    pub fn coproduct(&self, other: &Self) -> Self {
        let (n, m) = (self.object_count(), self.arrow_count());
        let objects = self.objects.iter().chain(&other.objects).cloned().collect();
        let arrows = self
            .arrows
            .iter()
            .cloned()
            .chain(other.arrows.iter().map(|a| Arrow {
                name: a.name.clone(),
                source: a.source + n,
                target: a.target + n,
            }))
            .collect();
        let identities = self
            .identities
            .iter()
            .copied()
            .chain(other.identities.iter().map(|&i| i + m))
            .collect::<Vec<_>>();
        let composites: Vec<_> = self
            .composites()
            .into_iter()
            .chain(other.composites().into_iter().map(|(g, f, h)| (g + m, f + m, h + m)))
            .collect();
        Self::new(objects, arrows, identities, &composites).expect("coproducts of categories are categories")
    }

    /// The truncated simplex category `Δ≤n`: objects `[0..=n]`, arrows monotone maps.
    pub fn simplex_category(n: usize) -> Self {
        let objects = (0..=n).map(|k| format!("[{k}]")).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for p in 0..=n {
            for q in 0..=n {
                for theta in ops::monotone_maps(p, q) {
                    index.insert((p, q, theta.clone()), arrows.len());
                    let name: String = theta.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("");
                    arrows.push((
                        Arrow {
                            name: format!("{p}>{q}:{name}"),
                            source: p,
                            target: q,
                        },
                        theta,
                    ));
                }
            }
        }
        let identities = (0..=n).map(|p| index[&(p, p, ops::identity(p))]).collect();
        let mut composites = Vec::new();
        for (f, (fa, ft)) in arrows.iter().enumerate() {
            for (g, (ga, gt)) in arrows.iter().enumerate() {
                if fa.target == ga.source {
                    let h = index[&(fa.source, ga.target, ops::compose(gt, ft))];
                    composites.push((g, f, h));
                }
            }
        }
        let arrows_only = arrows.iter().map(|(a, _)| a.clone()).collect();
        Self::new(objects, arrows_only, identities, &composites).expect("Δ is a category")
    }

    /// The monotone map named by an arrow of [`FiniteCategory::simplex_category`].
    pub fn simplex_arrow(&self, p: usize, q: usize, theta: &[u8]) -> Option<usize> {
        let name: String = theta.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("");
        let name = format!("{p}>{q}:{name}");
        self.hom(p, q).iter().copied().find(|&f| self.arrows[f].name == name)
    }
}

/// A functor between finite categories, by object and arrow assignment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FunctorData {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl FunctorData {
    pub fn identity(c: &FiniteCategory) -> Self {
        FunctorData {
            objects: (0..c.object_count()).collect(),
            arrows: (0..c.arrow_count()).collect(),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FunctorData) -> FunctorData {
        FunctorData {
            objects: self.objects.iter().map(|&o| next.objects[o]).collect(),
            arrows: self.arrows.iter().map(|&f| next.arrows[f]).collect(),
        }
    }

    pub fn validate(&self, c: &FiniteCategory, d: &FiniteCategory) -> Result<()> {
        if self.objects.len() != c.object_count() || self.arrows.len() != c.arrow_count() {
            return Err(Error::NotAFunctor("assignment has the wrong size".into()));
        }
        if self.objects.iter().any(|&o| o >= d.object_count()) || self.arrows.iter().any(|&f| f >= d.arrow_count()) {
            return Err(Error::NotAFunctor("assignment leaves the target".into()));
        }
        for (f, a) in c.arrows().iter().enumerate() {
            let b = d.arrow(self.arrows[f]);
            if b.source != self.objects[a.source] || b.target != self.objects[a.target] {
                return Err(Error::NotAFunctor(format!("{} goes to the wrong hom-set", a.name)));
            }
        }
        for o in 0..c.object_count() {
            if self.arrows[c.identity(o)] != d.identity(self.objects[o]) {
                return Err(Error::NotAFunctor(format!("identity of {} not preserved", c.objects()[o])));
            }
        }
        for (g, f, h) in c.composites() {
            if d.compose(self.arrows[g], self.arrows[f]) != self.arrows[h] {
                return Err(Error::NotAFunctor(format!(
                    "composite {} ∘ {} not preserved",
                    c.arrow(g).name,
                    c.arrow(f).name
                )));
            }
        }
        Ok(())
    }
}

/// The unique functor into a thin category with a given object map, if any.
pub fn thin_functor(c: &FiniteCategory, d: &FiniteCategory, objects: &[usize]) -> Option<FunctorData> {
    let arrows = c
        .arrows()
        .iter()
        .map(|a| d.hom(objects[a.source], objects[a.target]).first().copied())
        .collect::<Option<Vec<_>>>()?;
    let f = FunctorData {
        objects: objects.to_vec(),
        arrows,
    };
    f.validate(c, d).ok()?;
    Some(f)
}

struct FunctorSearch<'a> {
    c: &'a FiniteCategory,
    d: &'a FiniteCategory,
    /// Non-identity arrows of `c` grouped by the later of their endpoints.
    arrows_at: Vec<Vec<usize>>,
    /// Composites `(g, f, h)` checked once the last of the three is placed.
    checks_at: Vec<Vec<(usize, usize, usize)>>,
    injective: bool,
}

impl<'a> FunctorSearch<'a> {
    fn new(c: &'a FiniteCategory, d: &'a FiniteCategory, injective: bool) -> Self {
        let n = c.object_count();
        let mut arrows_at = vec![Vec::new(); n];
        for (f, a) in c.arrows().iter().enumerate() {
            if !c.is_identity(f) {
                arrows_at[a.source.max(a.target)].push(f);
            }
        }
        // position of each arrow in placement order; identities come with their object
        let mut pos = vec![0usize; c.arrow_count()];
        let mut k = 0;
        for o in 0..n {
            pos[c.identity(o)] = k;
            k += 1;
            for &f in &arrows_at[o] {
                pos[f] = k;
                k += 1;
            }
        }
        let mut checks_at = vec![Vec::new(); c.arrow_count()];
        for (g, f, h) in c.composites() {
            let last = [g, f, h].into_iter().max_by_key(|&x| pos[x]).unwrap();
            checks_at[last].push((g, f, h));
        }
        FunctorSearch {
            c,
            d,
            arrows_at,
            checks_at,
            injective,
        }
    }

    fn run(&self, visit: &mut dyn FnMut(&FunctorData) -> bool) {
        let mut f = FunctorData {
            objects: vec![usize::MAX; self.c.object_count()],
            arrows: vec![usize::MAX; self.c.arrow_count()],
        };
        self.place_object(0, &mut f, visit);
    }

    fn consistent(&self, x: usize, f: &FunctorData) -> bool {
        self.checks_at[x]
            .iter()
            .all(|&(g, k, h)| self.d.compose(f.arrows[g], f.arrows[k]) == f.arrows[h])
    }

    fn place_object(&self, o: usize, f: &mut FunctorData, visit: &mut dyn FnMut(&FunctorData) -> bool) -> bool {
        if o == self.c.object_count() {
            return visit(f);
        }
        for t in 0..self.d.object_count() {
            if self.injective && f.objects[..o].contains(&t) {
                continue;
            }
            f.objects[o] = t;
            let id = self.c.identity(o);
            f.arrows[id] = self.d.identity(t);
            if self.consistent(id, f) && !self.place_arrow(o, 0, f, visit) {
                return false;
            }
        }
        f.objects[o] = usize::MAX;
        f.arrows[self.c.identity(o)] = usize::MAX;
        true
    }

    fn place_arrow(&self, o: usize, k: usize, f: &mut FunctorData, visit: &mut dyn FnMut(&FunctorData) -> bool) -> bool {
        let list = &self.arrows_at[o];
        if k == list.len() {
            return self.place_object(o + 1, f, visit);
        }
        let x = list[k];
        let a = self.c.arrow(x);
        for &y in self.d.hom(f.objects[a.source], f.objects[a.target]) {
            if self.injective && f.arrows.contains(&y) && f.arrows[x] != y {
                continue;
            }
            f.arrows[x] = y;
            if self.consistent(x, f) && !self.place_arrow(o, k + 1, f, visit) {
                return false;
            }
        }
        f.arrows[x] = usize::MAX;
        true
    }
}

/// All functors `C → D`, in lexicographic order of the object assignment.
pub fn enumerate_functors(c: &FiniteCategory, d: &FiniteCategory) -> Vec<FunctorData> {
    let mut out = Vec::new();
    FunctorSearch::new(c, d, false).run(&mut |f| {
        out.push(f.clone());
        true
    });
    out
}

pub fn count_functors(c: &FiniteCategory, d: &FiniteCategory) -> usize {
    let mut n = 0;
    FunctorSearch::new(c, d, false).run(&mut |_| {
        n += 1;
        true
    });
    n
}

/// An isomorphism of categories `C → D`, if one exists.
pub fn find_category_isomorphism(c: &FiniteCategory, d: &FiniteCategory) -> Option<FunctorData> {
    if c.object_count() != d.object_count() || c.arrow_count() != d.arrow_count() {
        return None;
    }
    let mut found = None;
    FunctorSearch::new(c, d, true).run(&mut |f| {
        found = Some(f.clone());
        false
    });
    found
}

/// Fully faithful and essentially surjective.
pub fn is_equivalence(c: &FiniteCategory, d: &FiniteCategory, f: &FunctorData) -> bool {
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            let mut img: Vec<usize> = c.hom(a, b).iter().map(|&x| f.arrows[x]).collect();
            img.sort_unstable();
            img.dedup();
            if img.len() != c.hom(a, b).len() || img.len() != d.hom(f.objects[a], f.objects[b]).len() {
                return false;
            }
        }
    }
    (0..d.object_count()).all(|y| {
        f.objects
            .iter()
            .any(|&x| d.hom(x, y).iter().any(|&g| d.is_iso(g)))
    })
}

/// Natural transformations `F ⇒ G`, as component lists.
pub fn natural_transformations(c: &FiniteCategory, d: &FiniteCategory, f: &FunctorData, g: &FunctorData) -> Vec<Vec<usize>> {
    let n = c.object_count();
    let mut out = Vec::new();
    let mut comp = vec![0usize; n];
    fn rec(
        o: usize,
        c: &FiniteCategory,
        d: &FiniteCategory,
        f: &FunctorData,
        g: &FunctorData,
        comp: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if o == c.object_count() {
            out.push(comp.clone());
            return;
        }
        'cand: for &t in d.hom(f.objects[o], g.objects[o]) {
            comp[o] = t;
            // naturality squares whose endpoints are both placed
            for (x, a) in c.arrows().iter().enumerate() {
                if a.source.max(a.target) != o {
                    continue;
                }
                let l = d.compose(g.arrows[x], comp[a.source]);
                let r = d.compose(comp[a.target], f.arrows[x]);
                if l != r {
                    continue 'cand;
                }
            }
            rec(o + 1, c, d, f, g, comp, out);
        }
    }
    rec(0, c, d, f, g, &mut comp, &mut out);
    out
}

/// The functor category `Fun(C, D)` together with its objects as functors.
pub fn functor_category(c: &FiniteCategory, d: &FiniteCategory) -> (FiniteCategory, Vec<FunctorData>) {
    let functors = enumerate_functors(c, d);
    let n = functors.len();
    let mut arrows = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    let mut identities = vec![0; n];
    for (i, fi) in functors.iter().enumerate() {
        for (j, fj) in functors.iter().enumerate() {
            for t in natural_transformations(c, d, fi, fj) {
                if i == j && (0..c.object_count()).all(|o| t[o] == d.identity(fi.objects[o])) {
                    identities[i] = arrows.len();
                }
                index.insert((i, j, t.clone()), arrows.len());
                arrows.push(Arrow {
                    name: format!("F{i}>F{j}:{}", t.iter().map(|&x| d.arrow(x).name.clone()).collect::<Vec<_>>().join(",")),
                    source: i,
                    target: j,
                });
                components.push(t);
            }
        }
    }
    let mut homs_from: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, a) in arrows.iter().enumerate() {
        homs_from[a.source].push(x);
    }
    let mut composites = Vec::new();
    for (f, a) in arrows.iter().enumerate() {
        for &g in &homs_from[a.target] {
            let comp: Vec<usize> = (0..c.object_count())
                .map(|o| d.compose(components[g][o], components[f][o]))
                .collect();
            let h = index[&(a.source, arrows[g].target, comp)];
            composites.push((g, f, h));
        }
    }
    let objects = (0..n).map(|i| format!("F{i}")).collect();
    let cat = FiniteCategory::new(objects, arrows, identities, &composites).expect("functor categories are categories");
    (cat, functors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chaotic_counts() {
        let c = FiniteCategory::chaotic(1);
        assert_eq!((c.object_count(), c.arrow_count()), (2, 4));
        assert!(c.is_groupoid());
        assert_eq!(FiniteCategory::chaotic(0), FiniteCategory::terminal());
    }

    #[test]
    fn functors_from_chaotic_to_ordinal_are_constant() {
        let fs = enumerate_functors(&FiniteCategory::chaotic(1), &FiniteCategory::ordinal(1));
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].objects, vec![0, 0]);
    }

    #[test]
    fn functors_from_terminal_are_objects() {
        let c = FiniteCategory::ordinal(3);
        assert_eq!(enumerate_functors(&FiniteCategory::terminal(), &c).len(), 4);
    }

    #[test]
    fn point_into_chaotic_is_equivalence() {
        let c = FiniteCategory::chaotic(1);
        let f = FunctorData {
            objects: vec![0],
            arrows: vec![c.identity(0)],
        };
        assert!(is_equivalence(&FiniteCategory::terminal(), &c, &f));
    }

    #[test]
    fn iso_subcategory_of_ordinal_is_discrete() {
        let i = FiniteCategory::ordinal(1).iso_subcategory();
        assert!(find_category_isomorphism(&i, &FiniteCategory::discrete(2)).is_some());
        assert_eq!(i.iso_subcategory(), i);
    }

    #[test]
    fn monotone_functors_between_ordinals() {
        for p in 0..3 {
            for q in 0..3 {
                let n = enumerate_functors(&FiniteCategory::ordinal(p), &FiniteCategory::ordinal(q)).len();
                assert_eq!(n, ops::monotone_maps(p, q).len());
            }
        }
    }

    #[test]
    fn functor_category_of_arrows() {
        let (c, fs) = functor_category(&FiniteCategory::ordinal(1), &FiniteCategory::ordinal(1));
        assert_eq!(fs.len(), 3);
        assert!(c.is_thin());
        assert_eq!(c.arrow_count(), 6);
    }

    #[test]
    fn simplex_category_counts() {
        let d = FiniteCategory::simplex_category(2);
        assert_eq!(d.hom(1, 2).len(), 6);
        assert_eq!(d.hom(2, 1).len(), 4);
    }

    #[test]
    fn rejects_bad_tables() {
        // idempotent-free table missing a composite
        let arrows = vec![Arrow {
            name: "id".into(),
            source: 0,
            target: 0,
        }];
        assert!(FiniteCategory::new(vec!["*".into()], arrows, vec![0], &[]).is_err());
    }
}
