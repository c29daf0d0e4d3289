use std::sync::Arc;

use proptest::prelude::*;

use segalkit::adjunction::k_shriek_map;
use segalkit::bisimplicial::{box_product, diagonal, generator_f, segal_map};
use segalkit::category::{enumerate_functors, FiniteCategory};
use segalkit::colimit::pushout;
use segalkit::corpus;
use segalkit::hom::{count_maps, enumerate_maps, is_isomorphic};
use segalkit::homology::integral_homology;
use segalkit::homotopy::core;
use segalkit::lifting::{is_kan, Status};
use segalkit::limit::{fiber_product, product};
use segalkit::nerve::{nerve_map, Nerve};
use segalkit::presheaf::{sectionwise_apply, SectionFunctor, Sectionwise};
use segalkit::standard::{spine_inclusion, standard, subcomplex};
use segalkit::{FunctorData, Presheaf, SimplicialMap, SimplicialSet};

fn complexes() -> Vec<Arc<SimplicialSet>> {
    corpus::small_simplicial_sets().into_iter().map(|(_, x)| x).collect()
}

fn sub(x: &Arc<SimplicialSet>, mask: u64) -> SimplicialMap {
    let mut keep = vec![false; x.len()];
    for c in x.cell_ids() {
        let closed = x.cell(c).faces[0].iter().all(|f| keep[f.cell.index()]);
        keep[c.index()] = closed && mask >> (c.index() % 64) & 1 == 1;
    }
    subcomplex(x, |c| keep[c.index()]).unwrap()
}

fn pick<T: Clone>(items: &[T], seed: usize) -> Option<T> {
    (!items.is_empty()).then(|| items[seed % items.len()].clone())
}

fn arb_complex() -> impl Strategy<Value = Arc<SimplicialSet>> {
    let all = complexes();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn small_cats() -> Vec<FiniteCategory> {
    corpus::nerve_categories().into_iter().map(|(_, c)| c).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subcomplexes_satisfy_simplicial_identities(x in arb_complex(), mask in any::<u64>()) {
        let i = sub(&x, mask);
        let s = i.source();
        prop_assert!(s.validate().is_ok());
        prop_assert!(i.validate().is_ok());
        prop_assert!(i.is_mono());
        for n in 1..=3 {
            for y in s.simplices_of_dim(n) {
                for a in (0..=n).filter(|_| n >= 2) {
                    for b in a + 1..=n {
                        // d_a d_b = d_{b-1} d_a
                        let l = s.face1(&s.face1(&y, b), a);
                        let r = s.face1(&s.face1(&y, a), b - 1);
                        prop_assert_eq!(l, r);
                    }
                }
                for j in 0..=n {
                    let up = s.degeneracy1(&y, j);
                    prop_assert_eq!(s.face1(&up, j), y.clone());
                    prop_assert_eq!(s.face1(&up, j + 1), y.clone());
                }
            }
        }
    }

    #[test]
    fn normalizing_a_word_is_idempotent(n in 0usize..4, cell in 0usize..16, raw in proptest::collection::vec(0usize..6, 0..4)) {
        let x = standard(n);
        let id = x.cell_ids().nth(cell % x.len()).unwrap();
        let base = x.cell(id).degree[0];
        let len = raw.len();
        // applied rightmost first, each index within the current dimension
        let word: Vec<usize> = (0..len).map(|p| raw[p] % (base + len - p)).collect();
        let start = x.nondegenerate(id);
        let once = x.normalize(&word, &start).unwrap();
        let again = x.normalize(&[], &once).unwrap();
        prop_assert_eq!(&once, &again);
        prop_assert_eq!(once.dim(), base + len);
        let built = segalkit::Simplex::<1>::from_word(&once.word(), id, base).unwrap();
        prop_assert_eq!(built, once);
    }

    #[test]
    fn products_are_universal(k in arb_complex(), a in any::<usize>(), b in any::<usize>()) {
        let x = Arc::new(standard(1));
        let y = corpus::small_simplicial_sets()[6].1.clone();
        if k.len() > 6 {
            return Ok(());
        }
        let (Some(f), Some(g)) = (pick(&enumerate_maps(&k, &x), a), pick(&enumerate_maps(&k, &y), b)) else {
            return Ok(());
        };
        let p = product(&x, &y);
        let h = p.pairing(&f, &g).unwrap();
        prop_assert!(h.then(&p.left).unwrap().equals(&f));
        prop_assert!(h.then(&p.right).unwrap().equals(&g));
        let matching = enumerate_maps(&k, &p.object)
            .into_iter()
            .filter(|m| m.then(&p.left).unwrap().equals(&f) && m.then(&p.right).unwrap().equals(&g))
            .count();
        prop_assert_eq!(matching, 1);
    }

    #[test]
    fn fiber_products_commute(a in any::<usize>(), b in any::<usize>()) {
        let d2 = Arc::new(standard(2));
        let d1 = Arc::new(standard(1));
        let maps = enumerate_maps(&d2, &d1);
        let f = pick(&maps, a).unwrap();
        let g = pick(&maps, b).unwrap();
        let p = fiber_product(&f, &g).unwrap();
        prop_assert!(p.left.then(&f).unwrap().equals(&p.right.then(&g).unwrap()));
        prop_assert!(p.object.validate().is_ok());
    }

    #[test]
    fn pushouts_along_monos_are_monos(x in arb_complex(), mask in any::<u64>(), seed in any::<usize>()) {
        let i = sub(&x, mask);
        let c = Arc::new(standard(1));
        let Some(g) = pick(&enumerate_maps(i.source(), &c), seed) else {
            return Ok(());
        };
        let p = pushout(&i, &g).unwrap();
        prop_assert!(p.right.is_mono());
        prop_assert!(i.then(&p.left).unwrap().equals(&g.then(&p.right).unwrap()));
    }

    #[test]
    fn k_shriek_preserves_monos(x in arb_complex(), mask in any::<u64>()) {
        let i = sub(&x, mask);
        let (_, _, ki) = k_shriek_map(&i, 3).unwrap();
        prop_assert!(ki.is_mono());
    }

    #[test]
    fn kan_certificates_replay(x in arb_complex()) {
        let v = is_kan(&x, 2, None);
        prop_assert!(v.status != Status::UnknownAtBound);
        prop_assert!(v.replay());
    }

    #[test]
    fn diagonal_of_a_vertical_constant_is_itself(x in arb_complex()) {
        let d = Arc::new(diagonal(&box_product(&x, &standard(0))));
        prop_assert!(is_isomorphic(&d, &x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn functor_composition_is_associative(i in 0usize..7, j in 0usize..7, k in 0usize..7, s in any::<(usize, usize, usize)>()) {
        let cats = small_cats();
        let (c, d, e) = (&cats[i], &cats[j], &cats[k]);
        let (Some(f), Some(g)) = (pick(&enumerate_functors(c, d), s.0), pick(&enumerate_functors(d, e), s.1)) else {
            return Ok(());
        };
        let h = pick(&enumerate_functors(e, c), s.2);
        let fg = f.then(&g);
        prop_assert!(fg.validate(c, e).is_ok());
        prop_assert_eq!(FunctorData::identity(c).then(&f), f.clone());
        prop_assert_eq!(f.then(&FunctorData::identity(d)), f.clone());
        if let Some(h) = h {
            prop_assert_eq!(fg.then(&h), f.then(&g.then(&h)));
        }
    }

    #[test]
    fn iso_subcategories_are_idempotent_groupoids(i in 0usize..63) {
        let cats = corpus::small_categories();
        let c = &cats[i % cats.len()].1;
        let iso = c.iso_subcategory();
        prop_assert!(iso.is_groupoid());
        let twice = iso.iso_subcategory();
        prop_assert_eq!(twice.arrow_count(), iso.arrow_count());
        prop_assert_eq!(twice.object_count(), iso.object_count());
    }

    #[test]
    fn nerve_is_fully_faithful(i in 0usize..7, j in 0usize..7) {
        let cats = small_cats();
        let (c, d) = (Arc::new(cats[i].clone()), Arc::new(cats[j].clone()));
        let (nc, nd) = (Nerve::new(&c, 2), Nerve::new(&d, 2));
        let functors = enumerate_functors(&c, &d);
        let maps: Vec<SimplicialMap> = functors.iter().map(|f| nerve_map(f, &nc, &nd).unwrap()).collect();
        for a in 0..maps.len() {
            for b in a + 1..maps.len() {
                prop_assert!(!maps[a].equals(&maps[b]));
            }
        }
        prop_assert_eq!(maps.len(), count_maps(&nc.complex, &nd.complex));
    }
}

#[test]
fn chaotic_groupoids_are_groupoids() {
    for n in 0..5 {
        let c = FiniteCategory::chaotic(n);
        assert!(c.is_groupoid());
        assert!(c.is_thin());
        assert_eq!(c.arrow_count(), (n + 1) * (n + 1));
    }
}

#[test]
fn segal_targets_count_maps_out_of_spines() {
    for (name, x) in corpus::bisimplicial_sets() {
        for n in 1..=2 {
            let s = segal_map(&x, n).unwrap();
            let spine = spine_inclusion(n);
            for j in 0..=1 {
                let g = Arc::new(box_product(spine.source(), &standard(j)));
                let f = Arc::new(box_product(&standard(n), &standard(j)));
                assert_eq!(s.target().simplex_count([j]), count_maps(&g, &x), "{name} n={n} j={j}");
                assert_eq!(s.map.source().simplex_count([j]), count_maps(&f, &x), "{name} n={n} j={j}");
            }
        }
    }
    assert_eq!(generator_f(2).bicell_counts().len(), 3);
}

#[test]
fn sectionwise_functors_match_direct_calls() {
    let index = Arc::new(FiniteCategory::ordinal(1));
    let cats = [FiniteCategory::ordinal(1), FiniteCategory::chaotic(1), corpus::z2()];
    for c in &cats {
        let big = Nerve::new(&Arc::new(c.clone()), 3);
        let p = Presheaf::constant(index.clone(), big.complex.clone());
        let Sectionwise::Presheaf(j) = sectionwise_apply(&p, &SectionFunctor::CoreJ).unwrap() else {
            panic!("core is a presheaf");
        };
        let iso = Nerve::new(&Arc::new(c.iso_subcategory()), 3);
        for s in &j.sections {
            assert!(is_isomorphic(s, &iso.complex));
            assert!(is_isomorphic(s, &Arc::new(core(&big.complex).unwrap())));
        }
        let Sectionwise::Values(h) = sectionwise_apply(&p, &SectionFunctor::Homology).unwrap() else {
            panic!("homology is a list of values");
        };
        let direct: Vec<String> = integral_homology(&big.complex).iter().map(|g| g.to_string()).collect();
        assert!(h.iter().all(|v| *v == direct.join(" ")));
    }
}
