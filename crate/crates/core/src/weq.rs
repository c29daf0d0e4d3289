//! Certificates for weak equivalences of finite simplicial sets.
//!
//! Each strategy can only confirm: an isomorphism, a trivial fibration up to
//! the bound, a homology isomorphism (necessary, not sufficient), or a homotopy
//! inverse found by bounded search. A homology mismatch is the one decisive
//! refutation. Anything else is unknown at the bound.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::colimit::UnionFind;
use crate::complex::{Simplex, SimplicialSet};
use crate::hom::count_maps;
use crate::hom::enumerate_maps;
use crate::homology::{induces_iso_below, HomologyComparison};
use crate::lifting::{is_trivial_fibration, Certificate, Homotopy, Status, Verdict};
use crate::limit::product;
use crate::map::{Morphism, SimplicialMap};
use crate::standard::{standard, standard_map_between, to_point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Iso,
    Rlp,
    Homology,
    Homotopy,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Iso, Strategy::Rlp, Strategy::Homology, Strategy::Homotopy];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Iso => "iso",
            Strategy::Rlp => "rlp",
            Strategy::Homology => "homology",
            Strategy::Homotopy => "homotopy",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| format!("unknown strategy {s}"))
    }
}

/// Largest hom-set the homotopy search is willing to enumerate.
const HOMOTOPY_SEARCH_LIMIT: usize = 20_000;

/// Degrees in which homology is compared: everything for finite inputs, below
/// the truncation otherwise.
fn homology_degrees(f: &SimplicialMap, truncation: Option<usize>) -> usize {
    truncation.unwrap_or_else(|| {
        let d = |x: &SimplicialSet| x.dim().unwrap_or(0);
        d(f.source()).max(d(f.target())) + 1
    })
}

fn homology_comparison(f: &SimplicialMap, truncation: Option<usize>) -> (usize, HomologyComparison) {
    let k = homology_degrees(f, truncation);
    (k, induces_iso_below::<i128>(f, k))
}

fn confirm(f: &SimplicialMap, strategy: Strategy, bound: usize, truncation: Option<usize>) -> Option<Verdict> {
    let name = strategy.as_str();
    match strategy {
        Strategy::Iso => f.inverse().map(|inverse| {
            Verdict::new(Status::Holds, name, bound, "isomorphism").with(Certificate::Isomorphism {
                map: f.clone(),
                inverse,
            })
        }),
        Strategy::Rlp => {
            let v = is_trivial_fibration(f, bound, truncation);
            v.holds().then(|| {
                let mut v = v;
                v.strategy = name.into();
                v.detail = format!("trivial fibration: {}", v.detail);
                v
            })
        }
        Strategy::Homology => match homology_comparison(f, truncation) {
            (k, HomologyComparison::IsoBelow(_)) => Some(
                Verdict::new(
                    Status::Holds,
                    name,
                    bound,
                    format!("homology isomorphism in degrees < {k} (necessary condition only)"),
                )
                .with(Certificate::Homology { degrees: k }),
            ),
            _ => None,
        },
        Strategy::Homotopy => {
            if truncation.is_some() {
                return None;
            }
            homotopy_inverse(f).map(|cert| {
                Verdict::new(Status::Holds, name, bound, "homotopy equivalence by zigzags of simplicial homotopies")
                    .with(cert)
            })
        }
    }
}

fn refute(f: &SimplicialMap, strategy: &str, bound: usize, truncation: Option<usize>, tried: &str) -> Verdict {
    match homology_comparison(f, truncation) {
        (_, HomologyComparison::IsoBelow(_)) => {
            Verdict::new(Status::UnknownAtBound, strategy, bound, format!("{tried}: no certificate found"))
        }
        (_, HomologyComparison::ConeNonzero(n)) => Verdict::new(
            Status::Fails,
            strategy,
            bound,
            format!("{tried}: homology differs (mapping cone nonzero in degree {n})"),
        ),
        (_, HomologyComparison::KernelAt(n)) => Verdict::new(
            Status::Fails,
            strategy,
            bound,
            format!("{tried}: homology differs (kernel in degree {n})"),
        ),
    }
}

/// One strategy, with homology as the refutation.
pub fn test_map(f: &SimplicialMap, strategy: Strategy, bound: usize, truncation: Option<usize>) -> Verdict {
    confirm(f, strategy, bound, truncation)
        .unwrap_or_else(|| refute(f, strategy.as_str(), bound, truncation, strategy.as_str()))
}

/// Strategies run in the fixed order iso, rlp, homology, homotopy; the first
/// certificate wins.
pub fn weq_oracle(f: &SimplicialMap, strategies: &[Strategy], bound: usize, truncation: Option<usize>) -> Verdict {
    let mut order: Vec<Strategy> = strategies.to_vec();
    order.sort();
    order.dedup();
    for &s in &order {
        if let Some(v) = confirm(f, s, bound, truncation) {
            return v;
        }
    }
    let tried = order.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(",");
    refute(f, "weq", bound, truncation, &tried)
}

struct Cylinder {
    at0: SimplicialMap,
    at1: SimplicialMap,
}

/// The two ends `X → X × Δ^1`.
fn cylinder(x: &Arc<SimplicialSet>) -> Cylinder {
    let d0 = Arc::new(standard(0));
    let d1 = Arc::new(standard(1));
    let p = product(x, &d1);
    let id = Morphism::identity(x);
    let end = |i: u8| -> SimplicialMap {
        let c = to_point(x, &d0).then(&standard_map_between(&d0, &d1, &[i])).expect("composable");
        p.pairing(&id, &c).expect("pairing into the cylinder")
    };
    Cylinder { at0: end(0), at1: end(1) }
}

/// Components of `hom(X, Y)` under zigzags of homotopies, with a path finder.
struct HomotopyGraph {
    maps: Vec<Vec<Simplex<1>>>,
    index: HashMap<Vec<Simplex<1>>, usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    homotopies: Vec<Homotopy>,
    roots: Vec<usize>,
}

impl HomotopyGraph {
    fn new(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Option<Self> {
        if count_maps(x, y) > HOMOTOPY_SEARCH_LIMIT {
            return None;
        }
        let maps: Vec<Vec<Simplex<1>>> = enumerate_maps(x, y).into_iter().map(|m| m.images().to_vec()).collect();
        let index: HashMap<Vec<Simplex<1>>, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let cyl = cylinder(x);
        let source = cyl.at0.target().clone();
        if count_maps(&source, y) > HOMOTOPY_SEARCH_LIMIT {
            return None;
        }
        let mut adjacency = vec![Vec::new(); maps.len()];
        let mut homotopies = Vec::new();
        let mut components = UnionFind::new(maps.len());
        for h in enumerate_maps(&source, y) {
            let start = cyl.at0.then(&h).unwrap();
            let end = cyl.at1.then(&h).unwrap();
            let a = index[start.images()];
            let b = index[end.images()];
            if a == b {
                continue;
            }
            let e = homotopies.len();
            homotopies.push(Homotopy {
                map: h,
                at0: cyl.at0.clone(),
                at1: cyl.at1.clone(),
            });
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
            components.union(a, b);
        }
        let roots = (0..maps.len()).map(|i| components.find(i)).collect();
        Some(HomotopyGraph {
            maps,
            index,
            adjacency,
            homotopies,
            roots,
        })
    }

    fn id(&self, m: &SimplicialMap) -> usize {
        self.index[m.images()]
    }

    fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut prev = vec![None; self.maps.len()];
        let mut queue = VecDeque::from([from]);
        let mut seen = vec![false; self.maps.len()];
        seen[from] = true;
        while let Some(a) = queue.pop_front() {
            if a == to {
                break;
            }
            for &(b, e) in &self.adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    prev[b] = Some((a, e));
                    queue.push_back(b);
                }
            }
        }
        let mut out = Vec::new();
        let mut at = to;
        while let Some((a, e)) = prev[at] {
            out.push(e);
            at = a;
        }
        out.reverse();
        out
    }
}

/// A map `g : Y → X` with `g ∘ f ≃ id_X` and `f ∘ g ≃ id_Y`, where `≃` is
/// the equivalence relation generated by simplicial homotopies.
fn homotopy_inverse(f: &SimplicialMap) -> Option<Certificate> {
    let (x, y) = (f.source(), f.target());
    let gx = HomotopyGraph::new(x, x)?;
    let gy = HomotopyGraph::new(y, y)?;
    if count_maps(y, x) > HOMOTOPY_SEARCH_LIMIT {
        return None;
    }
    let id_x = gx.id(&Morphism::identity(x));
    let id_y = gy.id(&Morphism::identity(y));
    for g in enumerate_maps(y, x) {
        let gf = gx.id(&f.then(&g).ok()?);
        let fg = gy.id(&g.then(f).ok()?);
        if gx.roots[gf] == gx.roots[id_x] && gy.roots[fg] == gy.roots[id_y] {
            let chain = |gr: &HomotopyGraph, a, b| -> Vec<Homotopy> {
                gr.path(a, b).into_iter().map(|e| gr.homotopies[e].clone()).collect()
            };
            return Some(Certificate::HomotopyEquivalence {
                map: f.clone(),
                left: chain(&gx, gf, id_x),
                right: chain(&gy, fg, id_y),
                inverse: g,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjunction::unit_map;
    use crate::standard::{boundary, horn, to_terminal};

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    #[test]
    fn identity_is_iso() {
        let x = arc(boundary(2).unwrap());
        let v = weq_oracle(&Morphism::identity(&x), &Strategy::ALL, 3, None);
        assert!(v.holds());
        assert_eq!(v.strategy, "iso");
        assert!(v.replay());
    }

    #[test]
    fn unit_by_homology() {
        let u = unit_map(&arc(standard(1)), 4).unwrap();
        let v = weq_oracle(&u, &Strategy::ALL, 4, Some(4));
        assert!(v.holds());
        assert_eq!(v.strategy, "homology");
        assert!(v.detail.contains("necessary"));
    }

    #[test]
    fn collapse_of_circle_fails() {
        let b = arc(boundary(2).unwrap());
        let v = weq_oracle(&to_terminal(&b), &Strategy::ALL, 3, None);
        assert_eq!(v.status, Status::Fails);
    }

    #[test]
    fn contraction_of_horn_by_homotopy() {
        let h = arc(horn(2, 1).unwrap());
        let f = to_terminal(&h);
        let v = test_map(&f, Strategy::Homotopy, 2, None);
        assert!(v.holds(), "{}", v.detail);
        assert!(v.replay());
        let v = test_map(&f, Strategy::Iso, 2, None);
        assert_eq!(v.status, Status::UnknownAtBound);
    }

    #[test]
    fn strategies_parse() {
        for s in Strategy::ALL {
            assert_eq!(s.as_str().parse::<Strategy>().unwrap(), s);
        }
        assert!("nope".parse::<Strategy>().is_err());
    }
}
