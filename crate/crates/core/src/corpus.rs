//! Named test objects shared by the suites, the integration tests and the
//! command line.

use std::sync::Arc;

use crate::bisimplicial::{box_product, disc_nerve, generator_f, generator_fhat, generator_g, generator_i};
use crate::category::{find_category_isomorphism, FiniteCategory};
use crate::colimit::{disjoint_union, pushout};
use crate::complex::{BisimplicialSet, SimplicialSet};
use crate::nerve::Nerve;
use crate::standard::{boundary, boundary_inclusion, horn, spine_inclusion, standard, to_terminal};

pub type Named<T> = (String, T);

fn named<T>(name: &str, value: T) -> Named<T> {
    (name.to_string(), value)
}

/// `Δ^1` with its endpoints identified.
pub fn circle() -> SimplicialSet {
    let i = boundary_inclusion(1).expect("∂Δ^1");
    let p = pushout(&i, &to_terminal(i.source())).expect("pushout along a mono");
    (*p.object).clone()
}

/// Small finite simplicial sets, at most 12 nondegenerate cells each.
pub fn small_simplicial_sets() -> Vec<Named<Arc<SimplicialSet>>> {
    let two_edges = disjoint_union(&[Arc::new(standard(1)), Arc::new(standard(1))]).0;
    vec![
        named("simplex-0", Arc::new(standard(0))),
        named("simplex-1", Arc::new(standard(1))),
        named("simplex-2", Arc::new(standard(2))),
        named("boundary-1", Arc::new(boundary(1).unwrap())),
        named("boundary-2", Arc::new(boundary(2).unwrap())),
        named("horn-2-0", Arc::new(horn(2, 0).unwrap())),
        named("horn-2-1", Arc::new(horn(2, 1).unwrap())),
        named("spine-3", spine_inclusion(3).source().clone()),
        named("circle", Arc::new(circle())),
        named("two-edges", two_edges),
        named("chaotic-1@2", Nerve::new(&Arc::new(FiniteCategory::chaotic(1)), 2).complex),
        named("discrete-3", Arc::new(crate::nerve::nerve(&FiniteCategory::discrete(3), 1).value)),
    ]
}

/// Finite simplicial sets of dimension at most 3.
pub fn simplicial_sets() -> Vec<Named<Arc<SimplicialSet>>> {
    let mut out = small_simplicial_sets();
    out.extend([
        named("simplex-3", Arc::new(standard(3))),
        named("boundary-3", Arc::new(boundary(3).unwrap())),
        named("horn-3-1", Arc::new(horn(3, 1).unwrap())),
        named("nerve-ordinal-2", Nerve::new(&Arc::new(FiniteCategory::ordinal(2)), 2).complex),
    ]);
    out
}

/// Finite bisimplicial sets; truncated nerves are cut at horizontal degree 3.
pub fn bisimplicial_sets() -> Vec<Named<Arc<BisimplicialSet>>> {
    let arc = Arc::new;
    vec![
        named("F0", arc(generator_f(0))),
        named("F1", arc(generator_f(1))),
        named("F2", arc(generator_f(2))),
        named("F3", arc(generator_f(3))),
        named("G2", generator_g(2).source().clone()),
        named("G3", generator_g(3).source().clone()),
        named("Fhat2", generator_fhat(2).unwrap().source().clone()),
        named("box-1-1", arc(box_product(&standard(1), &standard(1)))),
        named("box-boundary2-1", arc(box_product(&boundary(2).unwrap(), &standard(1)))),
        named("box-0-2", arc(box_product(&standard(0), &standard(2)))),
        named("disc-ordinal-1", arc(disc_nerve(&FiniteCategory::ordinal(1), 3).value)),
        named("disc-ordinal-2", arc(disc_nerve(&FiniteCategory::ordinal(2), 3).value)),
        named("I@3", arc(generator_i(3).0.value)),
    ]
}

/// Categories whose nerves are Segal-tested as discrete nerves.
pub fn nerve_categories() -> Vec<Named<FiniteCategory>> {
    vec![
        named("point", FiniteCategory::terminal()),
        named("discrete-2", FiniteCategory::discrete(2)),
        named("ordinal-1", FiniteCategory::ordinal(1)),
        named("ordinal-2", FiniteCategory::ordinal(2)),
        named("chaotic-1", FiniteCategory::chaotic(1)),
        named("Z2", z2()),
        named("vee", FiniteCategory::poset(3, &[(0, 1), (0, 2)]).unwrap()),
    ]
}

/// The group of order two as a one-object category.
pub fn z2() -> FiniteCategory {
    FiniteCategory::monoid(&[vec![0, 1], vec![1, 0]]).unwrap()
}

/// Groupoids with at most three objects.
pub fn groupoids() -> Vec<Named<FiniteCategory>> {
    vec![
        named("point", FiniteCategory::terminal()),
        named("discrete-2", FiniteCategory::discrete(2)),
        named("discrete-3", FiniteCategory::discrete(3)),
        named("chaotic-1", FiniteCategory::chaotic(1)),
        named("chaotic-2", FiniteCategory::chaotic(2)),
        named("chaotic-1+point", FiniteCategory::chaotic(1).coproduct(&FiniteCategory::terminal())),
        named("Z2", z2()),
        named("Z2+point", z2().coproduct(&FiniteCategory::terminal())),
    ]
}

/// Posets and categories mixing isomorphisms with non-invertible arrows,
/// at most four objects.
pub fn posets_and_mixed() -> Vec<Named<FiniteCategory>> {
    let iso_then_arrow = FiniteCategory::thin(3, |a, b| a == b || b == 2 || (a < 2 && b < 2)).unwrap();
    let arrow_then_iso = FiniteCategory::thin(3, |a, b| a == b || a == 0 || (a > 0 && b > 0)).unwrap();
    vec![
        named("ordinal-1", FiniteCategory::ordinal(1)),
        named("ordinal-2", FiniteCategory::ordinal(2)),
        named("ordinal-3", FiniteCategory::ordinal(3)),
        named("vee", FiniteCategory::poset(3, &[(0, 1), (0, 2)]).unwrap()),
        named("square", FiniteCategory::poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap()),
        named("iso-then-arrow", iso_then_arrow),
        named("arrow-then-iso", arrow_then_iso),
        named("ordinal-1+chaotic-1", FiniteCategory::ordinal(1).coproduct(&FiniteCategory::chaotic(1))),
        named("Z2x[1]", z2().product(&FiniteCategory::ordinal(1))),
    ]
}

fn dedup_up_to_iso(cats: Vec<FiniteCategory>) -> Vec<FiniteCategory> {
    let mut out: Vec<FiniteCategory> = Vec::new();
    for c in cats {
        if !out.iter().any(|d| find_category_isomorphism(&c, d).is_some()) {
            out.push(c);
        }
    }
    out
}

/// All preorders on at most `n` objects, one per isomorphism class.
pub fn all_preorders(n: usize) -> Vec<FiniteCategory> {
    let mut cats = Vec::new();
    for k in 1..=n {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let rel = |a: usize, b: usize| a == b || pairs.iter().position(|&p| p == (a, b)).is_some_and(|i| mask >> i & 1 == 1);
            let transitive = (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c))));
            if transitive {
                cats.push(FiniteCategory::thin(k, rel).unwrap());
            }
        }
    }
    dedup_up_to_iso(cats)
}

/// All monoids of order at most `n`, one per isomorphism class.
pub fn all_monoids(n: usize) -> Vec<FiniteCategory> {
    let mut cats = Vec::new();
    for k in 1..=n {
        let free = (k - 1) * (k - 1);
        let total = k.pow(free as u32);
        for code in 0..total {
            let mut t = vec![vec![0; k]; k];
            for (i, row) in t.iter_mut().enumerate() {
                row[0] = i;
            }
            for j in 0..k {
                t[0][j] = j;
            }
            let mut c = code;
            for a in 1..k {
                for b in 1..k {
                    t[a][b] = c % k;
                    c /= k;
                }
            }
            let assoc = (0..k).all(|a| (0..k).all(|b| (0..k).all(|d| t[t[a][b]][d] == t[a][t[b][d]])));
            if assoc {
                cats.push(FiniteCategory::monoid(&t).unwrap());
            }
        }
    }
    dedup_up_to_iso(cats)
}

/// Categories with at most three objects and eight arrows: every preorder
/// and every monoid of order at most four, plus groupoid and mixed
/// examples built from products and disjoint unions.
pub fn small_categories() -> Vec<Named<FiniteCategory>> {
    let mut out: Vec<Named<FiniteCategory>> = Vec::new();
    for (i, c) in all_preorders(3).into_iter().enumerate() {
        if c.arrow_count() <= 8 {
            out.push((format!("preorder-{i}"), c));
        }
    }
    for (i, c) in all_monoids(4).into_iter().enumerate() {
        out.push((format!("monoid-{i}"), c));
    }
    let extra = [
        named("Z2+point", z2().coproduct(&FiniteCategory::terminal())),
        named("Z2+Z2", z2().coproduct(&z2())),
        named("Z2x[1]", z2().product(&FiniteCategory::ordinal(1))),
        named("Z2xchaotic-1", z2().product(&FiniteCategory::chaotic(1))),
        named("Z2+[1]", z2().coproduct(&FiniteCategory::ordinal(1))),
        named("Z2+point+point", z2().coproduct(&FiniteCategory::discrete(2))),
    ];
    out.extend(extra);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerations_match_known_counts() {
        // preorders up to iso on 1, 2, 3 points: 1, 3, 9
        assert_eq!(all_preorders(3).len(), 13);
        // monoids up to iso of order 1..=3: 1, 2, 7
        assert_eq!(all_monoids(3).len(), 10);
        assert_eq!(all_monoids(4).len(), 45);
    }

    #[test]
    fn objects_are_small() {
        assert!(small_simplicial_sets().iter().all(|(_, x)| x.len() <= 12));
        assert!(small_categories().iter().all(|(_, c)| c.object_count() <= 3 && c.arrow_count() <= 8));
        assert!(bisimplicial_sets().len() >= 10);
    }
}
