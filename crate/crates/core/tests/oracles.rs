//! Constructions compared with brute-force computations that do not go
//! through the library's own normal forms.

use std::sync::Arc;

use segalkit::adjunction::{k_shriek, k_upper_exact, t_shriek};
use segalkit::bisimplicial::{box_product, disc_nerve, generator_g};
use segalkit::category::{functor_category, FiniteCategory};
use segalkit::corpus;
use segalkit::hom::{count_maps, enumerate_maps, is_isomorphic};
use segalkit::lifting::{has_rlp, horns, is_quasi_fibration, Status};
use segalkit::limit::{mapping_space, product};
use segalkit::nerve::{nerve_map, Nerve};
use segalkit::standard::{boundary, horn, skeleton, standard, standard_simplex};
use segalkit::suites::{boundary_coequalizer, brute_force_lift, random_lifting_problems};
use segalkit::{FunctorData, SimplicialSet};

fn monotone(p: usize, q: usize) -> Vec<Vec<u8>> {
    if p == 0 {
        return (0..=q as u8).map(|v| vec![v]).collect();
    }
    let mut out = Vec::new();
    for mut head in monotone(p - 1, q) {
        let last = *head.last().unwrap();
        for v in last..=q as u8 {
            head.push(v);
            out.push(head.clone());
            head.pop();
        }
    }
    out
}

fn compose(outer: &[u8], inner: &[u8]) -> Vec<u8> {
    inner.iter().map(|&k| outer[k as usize]).collect()
}

fn coface(m: usize, i: usize) -> Vec<u8> {
    (0..m).map(|k| if k < i { k as u8 } else { k as u8 + 1 }).collect()
}

fn codegeneracy(m: usize, j: usize) -> Vec<u8> {
    (0..=m + 1).map(|k| if k <= j { k as u8 } else { k as u8 - 1 }).collect()
}

#[test]
fn faces_and_degeneracies_of_standard_simplices() {
    for n in 0..=5 {
        let x = standard(n);
        for m in 0..=n + 1 {
            for theta in monotone(m, n) {
                let s = standard_simplex(n, &theta);
                for i in (0..=m).filter(|_| m > 0) {
                    assert_eq!(x.face(&s, 0, i), standard_simplex(n, &compose(&theta, &coface(m, i))));
                }
                for j in 0..=m {
                    let up = x.degeneracy(&s, 0, j);
                    assert_eq!(up, standard_simplex(n, &compose(&theta, &codegeneracy(m, j))));
                    for i in 0..=m + 1 {
                        let word = compose(&theta, &compose(&codegeneracy(m, j), &coface(m + 1, i)));
                        assert_eq!(x.face(&up, 0, i), standard_simplex(n, &word), "d{i}s{j} on {theta:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn simplices_of_standard_simplices_are_monotone_maps() {
    for n in 0..=4 {
        let x = standard(n);
        for m in 0..=n + 2 {
            assert_eq!(x.simplex_count([m]), monotone(m, n).len());
        }
    }
}

#[test]
fn chaotic_nerves_are_all_functions() {
    for n in 0..=3 {
        for m in 0..=3 {
            let nv = Nerve::new(&Arc::new(FiniteCategory::chaotic(n)), 3);
            assert_eq!(nv.complex.simplex_count([m]), (n + 1).pow(m as u32 + 1));
        }
    }
    // non-repeating words in {0, 1}
    let nv = Nerve::new(&Arc::new(FiniteCategory::chaotic(1)), 5);
    assert_eq!(skeleton(&nv.complex, 2).cell_counts(), vec![2, 2, 2]);
}

#[test]
fn square_has_two_shuffle_triangles() {
    // pairs of monotone maps [2] → [1] that are jointly injective
    let tri = monotone(2, 1);
    let brute = tri
        .iter()
        .flat_map(|a| tri.iter().map(move |b| (a, b)))
        .filter(|(a, b)| (0..3).all(|i| (i + 1..3).all(|j| (a[i], b[i]) != (a[j], b[j]))))
        .count();
    let p = product(&Arc::new(standard(1)), &Arc::new(standard(1)));
    assert_eq!(p.object.cell_counts()[2], brute);
}

#[test]
fn maps_out_of_a_simplex_are_its_simplices() {
    for (name, x) in corpus::simplicial_sets() {
        for n in 0..=4 {
            let d = Arc::new(standard(n));
            let top = d.nondegenerate(d.cells_of([n]).next().unwrap());
            let mut images: Vec<_> = enumerate_maps(&d, &x).iter().map(|m| m.apply(&top)).collect();
            let count = images.len();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), count, "{name}");
            assert_eq!(count, x.simplex_count([n]), "{name} in degree {n}");
        }
    }
}

#[test]
fn mapping_space_vertices_are_maps() {
    let d1 = Arc::new(standard(1));
    let b1 = Arc::new(boundary(1).unwrap());
    assert_eq!(mapping_space(&d1, &d1, 0).cell_counts(), vec![3]);
    assert_eq!(mapping_space(&b1, &d1, 0).cell_counts(), vec![4]);
}

/// Functions `[m] → [d]` onto `[d]` with no two consecutive values equal.
fn nondegenerate_surjections(m: usize, d: usize) -> usize {
    let mut count = 0;
    let total = (d + 1).pow(m as u32 + 1);
    for code in 0..total {
        let mut c = code;
        let v: Vec<usize> = (0..=m)
            .map(|_| {
                let x = c % (d + 1);
                c /= d + 1;
                x
            })
            .collect();
        let onto = (0..=d).all(|t| v.contains(&t));
        let fresh = v.windows(2).all(|w| w[0] != w[1]);
        count += (onto && fresh) as usize;
    }
    count
}

#[test]
fn k_shriek_cells_are_surjective_words() {
    const N: usize = 4;
    for (name, x) in corpus::simplicial_sets() {
        if x.dim().unwrap_or(0) > 2 {
            continue;
        }
        let counts = k_shriek(&x, N).complex().cell_counts();
        let expected: Vec<usize> = (0..=N)
            .map(|m| x.cell_ids().map(|c| nondegenerate_surjections(m, x.cell(c).degree[0])).sum())
            .collect();
        let mut trimmed = expected.clone();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        assert_eq!(counts, trimmed, "{name}");
    }
}

#[test]
fn k_shriek_of_a_simplex_is_its_chaotic_nerve() {
    for n in 0..=2 {
        let k = k_shriek(&Arc::new(standard(n)), 4);
        let nv = Nerve::new(&Arc::new(FiniteCategory::chaotic(n)), 4);
        assert!(is_isomorphic(k.complex(), &nv.complex));
    }
}

#[test]
fn boundary_by_face_coequalizer() {
    let direct = k_shriek(&Arc::new(boundary(2).unwrap()), 4);
    let glued = Arc::new(boundary_coequalizer(2, 4));
    assert_eq!(direct.complex().cell_counts(), vec![3, 6, 6, 6, 6]);
    assert_eq!(glued.cell_counts(), vec![3, 6, 6, 6, 6]);
    assert!(is_isomorphic(direct.complex(), &glued));
}

#[test]
fn adjunction_counts_agree() {
    const N: usize = 3;
    let cats = [
        FiniteCategory::ordinal(1),
        FiniteCategory::chaotic(1),
        FiniteCategory::discrete(2),
        corpus::z2(),
        FiniteCategory::poset(3, &[(0, 1), (0, 2)]).unwrap(),
    ];
    let complexes: Vec<Arc<SimplicialSet>> = corpus::small_simplicial_sets()
        .into_iter()
        .map(|(_, x)| x)
        .filter(|x| x.dim().unwrap_or(0) <= 2)
        .collect();
    for c in &cats {
        let nv = Nerve::new(&Arc::new(c.clone()), N);
        let right = k_upper_exact(&nv);
        for k in &complexes {
            let left = k_shriek(k, N);
            assert_eq!(count_maps(left.complex(), &nv.complex), count_maps(k, &right.value.value));
        }
    }
}

#[test]
fn t_shriek_of_box_products_is_a_product() {
    const N: usize = 3;
    let pieces = [standard(0), standard(1), boundary(2).unwrap(), horn(2, 1).unwrap()];
    for k in &pieces {
        for l in &pieces[..2] {
            let lhs = Arc::new(t_shriek(&box_product(k, l), N).value);
            let kl = k_shriek(&Arc::new(l.clone()), N);
            let prod = product(&Arc::new(k.clone()), kl.complex());
            let rhs = Arc::new(skeleton(&prod.object, N));
            assert!(is_isomorphic(&lhs, &rhs));
        }
    }
}

#[test]
fn t_shriek_of_vertically_discrete_objects() {
    let g = generator_g(2);
    let wedge = Arc::new(t_shriek(g.source(), 3).value);
    assert!(is_isomorphic(&wedge, &Arc::new(horn(2, 1).unwrap())));
    let d = disc_nerve(&FiniteCategory::ordinal(2), 3);
    let x = Arc::new(t_shriek(&d.value, 3).value);
    assert!(is_isomorphic(&x, &Arc::new(standard(2))));
}

#[test]
fn lifting_solver_matches_enumeration() {
    for p in random_lifting_problems(40, 7) {
        let fast = segalkit::lifting::solve_lifting(&p);
        assert_eq!(fast.is_some(), brute_force_lift(&p).is_some());
        if let Some(h) = fast {
            assert!(p.is_lift(&h));
        }
    }
}

#[test]
fn k_upper_of_quasi_fibrations_are_kan_fibrations() {
    const B: usize = 3;
    let i = FiniteCategory::ordinal(1);
    let g = FiniteCategory::chaotic(1);
    let pt = FiniteCategory::terminal();
    let to_pt = |c: &FiniteCategory| FunctorData {
        objects: vec![0; c.object_count()],
        arrows: vec![0; c.arrow_count()],
    };
    let cases = [(i.clone(), pt.clone(), to_pt(&i)), (g.clone(), pt.clone(), to_pt(&g)), (i.clone(), i.clone(), FunctorData::identity(&i))];
    for (c, d, f) in cases {
        let (nc, nd) = (Nerve::new(&Arc::new(c), B), Nerve::new(&Arc::new(d), B));
        let q = nerve_map(&f, &nc, &nd).unwrap();
        assert_eq!(is_quasi_fibration(&q, B, Some(B)).status, Status::Holds);
        let (kc, kd) = (k_upper_exact(&nc), k_upper_exact(&nd));
        let kq = kc.map_to(&f, &kd).unwrap();
        let v = has_rlp(&kq, &horns(B), B, Some(B));
        assert_eq!(v.status, Status::Holds, "{}", v.detail);
    }
}

#[test]
fn disc_nerve_slices_are_discrete() {
    for (_, c) in corpus::nerve_categories() {
        let d = disc_nerve(&c, 3);
        let p = segalkit::presheaf::bisimplicial_to_presheaf(&d.value, 3).unwrap();
        assert!(p.sections.iter().all(|s| s.dim().unwrap_or(0) == 0));
    }
}

#[test]
fn mapping_spaces_into_nerves_are_functor_nerves() {
    const LEVEL: usize = 2;
    let cats = [FiniteCategory::ordinal(1), FiniteCategory::chaotic(1), corpus::z2()];
    for c in &cats {
        for m in 0..=1 {
            let nv = Nerve::new(&Arc::new(c.clone()), m + LEVEL + 1);
            let maps = Arc::new(mapping_space(&Arc::new(standard(m)), &nv.complex, LEVEL));
            let (fun, _) = functor_category(&FiniteCategory::ordinal(m), c);
            let expected = Nerve::new(&Arc::new(fun), LEVEL + 1);
            let expected = Arc::new(skeleton(&expected.complex, LEVEL));
            assert!(is_isomorphic(&Arc::new(skeleton(&maps, LEVEL)), &expected), "m={m}");
        }
    }
}
