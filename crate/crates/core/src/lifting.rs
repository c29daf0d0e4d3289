//! Lifting problems and the fibration checkers built on them.
//!
//! A checker enumerates every square from a family of inclusions against a map
//! and solves each one. Verdicts carry the dimension bound they were computed
//! at; inputs that are truncations of larger objects are only probed up to
//! their truncation, and anything claimed beyond it becomes unknown.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::category::FiniteCategory;
use crate::complex::SimplicialSet;
use crate::error::{Error, Result};
use crate::hom::{enumerate_maps, extension_search, MapSearch};
use crate::map::{same_complex, SimplicialMap};
use crate::nerve::Nerve;
use crate::standard::{boundary_inclusion, horn_inclusion, point, to_point};

/// A commuting square `top : A → X`, `bottom : B → Y` over `i : A → B`, `f : X → Y`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub i: SimplicialMap,
    pub f: SimplicialMap,
    pub top: SimplicialMap,
    pub bottom: SimplicialMap,
}

impl LiftingProblem {
    pub fn new(i: SimplicialMap, f: SimplicialMap, top: SimplicialMap, bottom: SimplicialMap) -> Result<Self> {
        if !same_complex(i.source(), top.source()) || !same_complex(i.target(), bottom.source()) {
            return Err(Error::DomainMismatch);
        }
        if !same_complex(top.target(), f.source()) || !same_complex(f.target(), bottom.target()) {
            return Err(Error::CodomainMismatch);
        }
        if !top.then(&f)?.equals(&i.then(&bottom)?) {
            return Err(Error::SquareDoesNotCommute);
        }
        Ok(LiftingProblem { i, f, top, bottom })
    }

    /// `h ∘ i = top` and `f ∘ h = bottom`.
    pub fn is_lift(&self, h: &SimplicialMap) -> bool {
        same_complex(h.source(), self.i.target())
            && same_complex(h.target(), self.f.source())
            && h.validate().is_ok()
            && self.i.then(h).is_ok_and(|m| m.equals(&self.top))
            && h.then(&self.f).is_ok_and(|m| m.equals(&self.bottom))
    }
}

/// A diagonal filler, found by backtracking over the cells of `B` outside
/// the image of `A`, each constrained by its faces and by `f ∘ h = bottom`.
pub fn solve_lifting(p: &LiftingProblem) -> Option<SimplicialMap> {
    let mut search = extension_search(&p.i, &p.top);
    search.over(p.f.clone(), p.bottom.images().to_vec());
    search.first()
}

/// A named inclusion in a lifting family.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub inclusion: SimplicialMap,
}

impl Generator {
    fn dim(&self) -> usize {
        self.inclusion.target().dim().unwrap_or(0)
    }
}

/// `Λ^n_k ⊂ Δ^n` for `1 ≤ n ≤ bound`.
pub fn horns(bound: usize) -> Vec<Generator> {
    (1..=bound)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .map(|(n, k)| Generator {
            name: format!("horn({n},{k})"),
            inclusion: horn_inclusion(n, k).expect("valid horn"),
        })
        .collect()
}

/// Inner horns `Λ^n_k`, `0 < k < n ≤ bound`.
pub fn inner_horns(bound: usize) -> Vec<Generator> {
    horns(bound)
        .into_iter()
        .filter(|g| {
            let n = g.dim();
            let k: usize = g.name[g.name.find(',').unwrap() + 1..g.name.len() - 1].parse().unwrap();
            k > 0 && k < n
        })
        .collect()
}

/// `∂Δ^n ⊂ Δ^n` for `0 ≤ n ≤ bound`.
pub fn boundaries(bound: usize) -> Vec<Generator> {
    (0..=bound)
        .map(|n| Generator {
            name: format!("boundary({n})"),
            inclusion: boundary_inclusion(n).expect("valid boundary"),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    UnknownAtBound,
    Fails,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::UnknownAtBound => "unknown-at-bound",
            Status::Fails => "fails",
        }
    }
}

/// Evidence behind a verdict. Lifts and counterexamples can be replayed.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// Every listed problem was solved.
    Solved { problems: usize },
    Lift { problem: Box<LiftingProblem>, lift: SimplicialMap },
    Counterexample { generator: String, problem: Box<LiftingProblem> },
    Isomorphism { map: SimplicialMap, inverse: SimplicialMap },
    /// Homology groups agree below `degrees`. Necessary for a weak equivalence, not sufficient.
    Homology { degrees: usize },
    /// `g` with `g ∘ f` and `f ∘ g` joined to the identities by zigzags of homotopies.
    HomotopyEquivalence {
        map: SimplicialMap,
        inverse: SimplicialMap,
        left: Vec<Homotopy>,
        right: Vec<Homotopy>,
    },
    /// A structural fact (e.g. a groupoid nerve is Kan).
    Structural(String),
}

/// A simplicial homotopy `H : X × Δ^1 → Y` with the two ends of the cylinder.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub map: SimplicialMap,
    pub at0: SimplicialMap,
    pub at1: SimplicialMap,
}

impl Homotopy {
    pub fn ends(&self) -> Result<(SimplicialMap, SimplicialMap)> {
        Ok((self.at0.then(&self.map)?, self.at1.then(&self.map)?))
    }
}

/// Walk from `from` to the identity through the homotopies, in either direction.
fn zigzag(from: &SimplicialMap, chain: &[Homotopy]) -> bool {
    let mut at = from.clone();
    for h in chain {
        if h.map.validate().is_err() {
            return false;
        }
        let Ok((a, b)) = h.ends() else { return false };
        if a.equals(&at) {
            at = b;
        } else if b.equals(&at) {
            at = a;
        } else {
            return false;
        }
    }
    at.equals(&SimplicialMap::identity(from.source()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub strategy: String,
    pub bound: usize,
    pub detail: String,
    #[serde(skip)]
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn new(status: Status, strategy: &str, bound: usize, detail: impl Into<String>) -> Self {
        Verdict {
            status,
            strategy: strategy.to_string(),
            bound,
            detail: detail.into(),
            certificate: None,
        }
    }

    pub fn with(mut self, c: Certificate) -> Self {
        self.certificate = Some(c);
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    /// Re-check the certificate against its own data.
    pub fn replay(&self) -> bool {
        match &self.certificate {
            None | Some(Certificate::Solved { .. }) | Some(Certificate::Homology { .. }) | Some(Certificate::Structural(_)) => true,
            Some(Certificate::Lift { problem, lift }) => problem.is_lift(lift),
            Some(Certificate::Counterexample { problem, .. }) => solve_lifting(problem).is_none(),
            Some(Certificate::Isomorphism { map, inverse }) => {
                map.then(inverse).is_ok_and(|m| m.equals(&SimplicialMap::identity(map.source())))
                    && inverse.then(map).is_ok_and(|m| m.equals(&SimplicialMap::identity(map.target())))
            }
            Some(Certificate::HomotopyEquivalence { map, inverse, left, right }) => {
                map.then(inverse).is_ok_and(|gf| zigzag(&gf, left))
                    && inverse.then(map).is_ok_and(|fg| zigzag(&fg, right))
            }
        }
    }
}

/// The worst status wins; details are joined.
pub fn combine(strategy: &str, bound: usize, verdicts: Vec<Verdict>) -> Verdict {
    let status = verdicts.iter().map(|v| v.status).max().unwrap_or(Status::Holds);
    if let Some(v) = verdicts.iter().find(|v| v.status == status && status != Status::Holds) {
        let mut out = v.clone();
        out.strategy = strategy.to_string();
        out.bound = bound;
        return out;
    }
    let detail = verdicts.iter().map(|v| v.detail.as_str()).collect::<Vec<_>>().join("; ");
    Verdict::new(status, strategy, bound, detail)
}

fn lifting_problems(i: &SimplicialMap, f: &SimplicialMap, bottom: &SimplicialMap) -> MapSearch<1> {
    let required: Vec<_> = i.images().iter().map(|s| bottom.apply(s)).collect();
    let mut tops = MapSearch::new(i.source(), f.source());
    tops.over(f.clone(), required);
    tops
}

/// Right lifting property of `f` against every generator of dimension at most
/// `bound`. `truncation = Some(N)` marks an input that is the `N`-skeleton of a
/// larger object: only generators up to `N` are probed, and a passing check
/// with `bound > N` is reported as unknown.
pub fn has_rlp(f: &SimplicialMap, family: &[Generator], bound: usize, truncation: Option<usize>) -> Verdict {
    let limit = truncation.map_or(bound, |n| n.min(bound));
    let solved = AtomicUsize::new(0);
    for g in family.iter().filter(|g| g.dim() <= limit) {
        let i = &g.inclusion;
        let bottoms = enumerate_maps(i.target(), f.target());
        let failure = bottoms.par_iter().find_map_first(|bottom| {
            let mut failed = None;
            lifting_problems(i, f, bottom).run(&mut |imgs| {
                let top = SimplicialMap::new(i.source().clone(), f.source().clone(), imgs.to_vec())
                    .expect("search yields maps");
                let p = LiftingProblem {
                    i: i.clone(),
                    f: f.clone(),
                    top,
                    bottom: bottom.clone(),
                };
                solved.fetch_add(1, Ordering::Relaxed);
                if solve_lifting(&p).is_none() {
                    failed = Some(p);
                    return false;
                }
                true
            });
            failed
        });
        if let Some(p) = failure {
            return Verdict::new(Status::Fails, "rlp", bound, format!("no lift against {}", g.name)).with(
                Certificate::Counterexample {
                    generator: g.name.clone(),
                    problem: Box::new(p),
                },
            );
        }
    }
    let problems = solved.into_inner();
    if limit < bound {
        Verdict::new(
            Status::UnknownAtBound,
            "rlp",
            bound,
            format!("{problems} problems solved up to the truncation {limit}"),
        )
    } else {
        Verdict::new(Status::Holds, "rlp", bound, format!("{problems} problems solved")).with(Certificate::Solved { problems })
    }
}

fn to_a_point(x: &Arc<SimplicialSet>) -> SimplicialMap {
    to_point(x, &Arc::new(point::<1>()))
}

pub fn is_kan(x: &Arc<SimplicialSet>, bound: usize, truncation: Option<usize>) -> Verdict {
    has_rlp(&to_a_point(x), &horns(bound), bound, truncation)
}

pub fn is_quasi_category(x: &Arc<SimplicialSet>, bound: usize, truncation: Option<usize>) -> Verdict {
    has_rlp(&to_a_point(x), &inner_horns(bound), bound, truncation)
}

pub fn is_trivial_fibration(f: &SimplicialMap, bound: usize, truncation: Option<usize>) -> Verdict {
    has_rlp(f, &boundaries(bound), bound, truncation)
}

/// `B(C)` is Kan exactly when `C` is a groupoid. Otherwise an outer 2-horn
/// without filler is exhibited.
pub fn is_kan_nerve(c: &FiniteCategory, bound: usize) -> Verdict {
    if c.is_groupoid() {
        return Verdict::new(Status::Holds, "groupoid nerve", bound, "every arrow is invertible")
            .with(Certificate::Structural("groupoid".into()));
    }
    let nv = Nerve::new(&Arc::new(c.clone()), 2);
    let mut v = is_kan(&nv.complex, 2, None);
    v.bound = bound;
    v.strategy = "groupoid nerve".into();
    v
}

/// Nerves have unique inner horn fillers.
pub fn is_quasi_category_nerve(bound: usize) -> Verdict {
    Verdict::new(Status::Holds, "nerve", bound, "nerves have unique inner fillers")
        .with(Certificate::Structural("nerve".into()))
}

/// Inner horns together with `Δ^0 ⊂ Bπ(Δ^1)` truncated at `bound`.
pub fn quasi_fibration_family(bound: usize) -> Vec<Generator> {
    let mut family = inner_horns(bound);
    let nv = Nerve::new(&Arc::new(FiniteCategory::chaotic(1)), bound);
    let pt = Arc::new(crate::standard::standard(0));
    let v0 = nv.simplex(&(0, Vec::new())).unwrap();
    family.push(Generator {
        name: format!("interval({bound})"),
        inclusion: SimplicialMap::new(pt, nv.complex.clone(), vec![v0]).unwrap(),
    });
    family
}

pub fn is_quasi_fibration(f: &SimplicialMap, bound: usize, truncation: Option<usize>) -> Verdict {
    let mut v = has_rlp(f, &quasi_fibration_family(bound), bound, truncation);
    v.strategy = "quasi-fibration".into();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{boundary, standard, to_terminal};

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    #[test]
    fn inner_horn_lift_into_poset_nerve() {
        let x = Nerve::new(&arc(FiniteCategory::ordinal(1)), 3).complex;
        let i = horn_inclusion(2, 1).unwrap();
        let f = to_a_point(&x);
        let bottom = to_a_point(i.target()).rebased(i.target().clone(), f.target().clone()).unwrap();
        let tops = enumerate_maps(i.source(), &x);
        for top in tops {
            let p = LiftingProblem::new(i.clone(), f.clone(), top, bottom.clone()).unwrap();
            let lifts = extension_search(&p.i, &p.top).all();
            assert_eq!(lifts.len(), 1);
            assert!(p.is_lift(&solve_lifting(&p).unwrap()));
        }
    }

    #[test]
    fn empty_source_lifts() {
        let x = arc(standard(1));
        let i = boundary_inclusion(0).unwrap();
        let f = to_a_point(&x);
        let top = SimplicialMap::new(i.source().clone(), x.clone(), vec![]).unwrap();
        let bottom = SimplicialMap::new(i.target().clone(), f.target().clone(), vec![f.target().nondegenerate(crate::complex::CellId(0))]).unwrap();
        let p = LiftingProblem::new(i, f, top, bottom).unwrap();
        assert!(solve_lifting(&p).is_some());
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let d1 = arc(standard(1));
        let i = boundary_inclusion(1).unwrap();
        let id = SimplicialMap::identity(&d1);
        let top = SimplicialMap::new(i.source().clone(), d1.clone(), vec![d1.nondegenerate(crate::complex::CellId(0)); 2]).unwrap();
        let bottom = id.clone();
        assert_eq!(
            LiftingProblem::new(i, id, top, bottom).unwrap_err(),
            Error::SquareDoesNotCommute
        );
    }

    #[test]
    fn kan_checks() {
        let arrow = FiniteCategory::ordinal(1);
        let v = is_kan_nerve(&arrow, 3);
        assert_eq!(v.status, Status::Fails);
        assert!(v.replay());
        assert!(is_kan_nerve(&FiniteCategory::chaotic(2), 3).holds());
        let b = arc(boundary(2).unwrap());
        assert_eq!(is_kan(&b, 2, None).status, Status::Fails);
        assert_eq!(is_quasi_category(&b, 2, None).status, Status::Fails);
        assert!(is_kan(&arc(standard(0)), 3, None).holds());
        let g = Nerve::new(&arc(FiniteCategory::chaotic(1)), 3);
        assert!(is_kan(&g.complex, 3, Some(3)).holds());
        assert_eq!(is_kan(&g.complex, 4, Some(3)).status, Status::UnknownAtBound);
    }

    #[test]
    fn trivial_fibrations() {
        let g = Nerve::new(&arc(FiniteCategory::chaotic(1)), 3).complex;
        assert!(is_trivial_fibration(&to_terminal(&g), 3, Some(3)).holds());
        let d2 = arc(standard(2));
        assert_eq!(is_trivial_fibration(&to_terminal(&d2), 3, None).status, Status::Fails);
        let b = arc(boundary(2).unwrap());
        assert_eq!(is_trivial_fibration(&to_terminal(&b), 3, None).status, Status::Fails);
    }

    #[test]
    fn quasi_fibrations() {
        let arrow = Nerve::new(&arc(FiniteCategory::ordinal(1)), 3);
        let iso = Nerve::new(&arc(FiniteCategory::chaotic(1)), 3);
        let x = arrow.complex.clone();
        assert!(is_quasi_fibration(&SimplicialMap::identity(&x), 3, None).holds());
        assert!(is_quasi_fibration(&to_a_point(&x), 3, None).holds());
        let f = crate::category::thin_functor(&arrow.category, &iso.category, &[0, 1]).unwrap();
        let q = crate::nerve::nerve_map(&f, &arrow, &iso).unwrap();
        let v = is_quasi_fibration(&q, 3, Some(3));
        assert_eq!(v.status, Status::Fails);
        assert!(v.detail.contains("interval"));
    }
}
