//! Desk-scale property suites. Each suite compares two independent routes to
//! the same object (or a construction against brute force) over a corpus and
//! reports how many items it checked.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::adjunction::{k_shriek, k_shriek_map, k_upper_exact, t_shriek, t_upper, unit_map};
use crate::bisimplicial::{box_product, Slice};
use crate::category::{functor_category, thin_functor, FiniteCategory, FunctorData};
use crate::colimit::{coequalizer, disjoint_union};
use crate::complex::{Simplex, SimplicialSet};
use crate::corpus;
use crate::hom::{enumerate_maps, is_isomorphic};
use crate::homology::{induces_iso_below, HomologyComparison};
use crate::homotopy::{core, core_square_is_pullback, counit_comparison};
use crate::lifting::{has_rlp, horns, is_trivial_fibration, solve_lifting, LiftingProblem, Status};
use crate::limit::product;
use crate::map::{Morphism, SimplicialMap};
use crate::nerve::{nerve_map, Nerve};
use crate::ops;
use crate::presheaf::{
    adiagram_of_bisimplicial, bisimplicial_to_presheaf, check_adiagram, grothendieck, presheaf_to_bisimplicial,
    CategoryPresheaf, Presheaf,
};
use crate::segal::{check_complete, check_segal};
use crate::standard::{
    boundary_inclusion, horizontal_skeleton_inclusion, horn_inclusion, skeleton, spine_inclusion, standard,
    standard_simplex, subcomplex, to_terminal,
};
use crate::weq::Strategy;
use crate::Truncated;

pub const SUITES: [&str; 11] = [
    "normal-form",
    "slices",
    "k-shriek",
    "coequalizer",
    "counit",
    "core",
    "adjoint-formulas",
    "segal",
    "pullback",
    "solver",
    "grothendieck",
];

/// Outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Reported observations that are not pass/fail conditions.
    pub notes: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    fn finish(self, name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            passed: self.failures.is_empty(),
            checked: self.checked,
            failures: self.failures,
            notes: self.notes,
        }
    }
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<SuiteReport> {
    let t = match name {
        "normal-form" => normal_form(),
        "slices" => slices(),
        "k-shriek" => k_shriek_suite(),
        "coequalizer" => coequalizer_suite(),
        "counit" => counit(),
        "core" => core_suite(),
        "adjoint-formulas" => adjoint_formulas(),
        "segal" => segal(),
        "pullback" => pullback(),
        "solver" => solver(),
        "grothendieck" => grothendieck_suite(),
        _ => return None,
    };
    Some(t.finish(name))
}

/// `θ^*` on a simplex of `Δ^n` agrees with composing monotone maps, for every
/// face, degeneracy and pair of them.
fn normal_form() -> Tally {
    let mut t = Tally::default();
    for n in 0..=4 {
        let x = standard(n);
        for m in 0..=n + 1 {
            for theta in ops::monotone_maps(m, n) {
                let s = standard_simplex(n, &theta);
                let faces: Vec<(String, ops::Op)> = (0..=m)
                    .filter(|_| m > 0)
                    .map(|i| (format!("d{i}"), ops::coface(m, i)))
                    .collect();
                let degens: Vec<(String, ops::Op)> =
                    (0..=m).map(|j| (format!("s{j}"), ops::codegeneracy(m, j))).collect();
                for (name, op) in faces.iter().chain(&degens) {
                    let direct = standard_simplex(n, &ops::compose(&theta, op));
                    let via = x.apply(&s, 0, op);
                    t.check(via == direct, || format!("{name} on {theta:?} in Δ^{n}"));
                }
                // d_i s_j against the simplicial identities
                for j in 0..=m {
                    let up = x.degeneracy(&s, 0, j);
                    for i in 0..=m + 1 {
                        let got = x.face(&up, 0, i);
                        let expected = if i < j {
                            x.degeneracy(&x.face(&s, 0, i), 0, j - 1)
                        } else if i == j || i == j + 1 {
                            s.clone()
                        } else {
                            x.degeneracy(&x.face(&s, 0, i - 1), 0, j)
                        };
                        t.check(got == expected, || format!("d{i}s{j} on {theta:?} in Δ^{n}"));
                    }
                }
                // d_i d_j = d_{j-1} d_i for i < j
                if m >= 2 {
                    for j in 1..=m {
                        for i in 0..j {
                            let l = x.face(&x.face(&s, 0, j), 0, i);
                            let r = x.face(&x.face(&s, 0, i), 0, j - 1);
                            t.check(l == r, || format!("d{i}d{j} on {theta:?} in Δ^{n}"));
                        }
                    }
                }
            }
        }
    }
    t
}

/// Maps `Δ^k ⊠ Δ^j → X` correspond to the `j`-simplices of the slice `X_{k*}`.
fn slices() -> Tally {
    let items = corpus::bisimplicial_sets();
    let mut t = Tally::default();
    t.require(items.len() >= 10, || "corpus has fewer than 10 objects".into());
    let parts: Vec<Tally> = items
        .par_iter()
        .map(|(name, x)| {
            let mut t = Tally::default();
            let vmax = x.max_degree()[1];
            for k in 0..=3 {
                let slice = Slice::new(x, k);
                for j in 0..=vmax {
                    let probe = Arc::new(box_product(&standard(k), &standard(j)));
                    let top = probe.cells_of([k, j]).next().expect("top bisimplex");
                    let top = probe.nondegenerate(top);
                    let mut named: Vec<Simplex<1>> = enumerate_maps(&probe, x)
                        .iter()
                        .map(|m| slice.simplex(x, &m.apply(&top)))
                        .collect();
                    let count = named.len();
                    named.sort();
                    named.dedup();
                    let mut expected = slice.complex.simplices([j]);
                    expected.sort();
                    t.check(named.len() == count && named == expected, || {
                        format!("{name}: level ({k}, {j}) has {count} maps, {} simplices", expected.len())
                    });
                }
            }
            t
        })
        .collect();
    parts.into_iter().for_each(|p| t.merge(p));
    t
}

fn random_subcomplex(rng: &mut ChaCha8Rng, x: &Arc<SimplicialSet>) -> SimplicialMap {
    let mut keep = vec![false; x.len()];
    for c in x.cell_ids() {
        let closed = x.cell(c).faces[0].iter().all(|f| keep[f.cell.index()]);
        keep[c.index()] = closed && rng.gen_bool(0.7);
    }
    subcomplex(x, |c| keep[c.index()]).expect("kept cells are closed under faces")
}

/// `k_!` sends monos to monos, and the unit is a homology isomorphism below
/// the truncation.
fn k_shriek_suite() -> Tally {
    const N: usize = 4;
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b21);
    let sources: Vec<_> = corpus::simplicial_sets()
        .into_iter()
        .filter(|(_, x)| x.dim().unwrap_or(0) <= 2)
        .collect();
    let monos: Vec<(String, SimplicialMap)> = (0..20)
        .map(|i| {
            let (name, x) = sources.choose(&mut rng).unwrap();
            (format!("sub#{i} of {name}"), random_subcomplex(&mut rng, x))
        })
        .collect();
    let checks: Vec<(String, bool)> = monos
        .par_iter()
        .map(|(name, f)| {
            let ok = k_shriek_map(f, N).map(|(_, _, m)| m.is_mono()).unwrap_or(false);
            (name.clone(), ok)
        })
        .collect();
    for (name, ok) in checks {
        t.check(ok, || format!("k_!({name}) is not a mono"));
    }
    let units: Vec<(String, HomologyComparison)> = corpus::simplicial_sets()
        .par_iter()
        .map(|(name, x)| {
            let u = unit_map(x, N).expect("unit at a bound above the dimension");
            (name.clone(), induces_iso_below::<i128>(&u, N))
        })
        .collect();
    t.require(units.len() >= 10, || "fewer than 10 complexes".into());
    for (name, r) in units {
        t.check(r == HomologyComparison::IsoBelow(N), || format!("unit of {name}: {r:?}"));
    }
    t
}

/// `k_!(∂Δ^n)` as the coequalizer of `⨿_{i<j} Bπ(Δ^{n-2}) ⇉ ⨿_i Bπ(Δ^{n-1})`.
pub fn boundary_coequalizer(n: usize, bound: usize) -> SimplicialSet {
    let small = Nerve::new(&Arc::new(FiniteCategory::chaotic(n - 2)), bound);
    let big = Nerve::new(&Arc::new(FiniteCategory::chaotic(n - 1)), bound);
    let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let (a, a_inj) = disjoint_union(&vec![small.complex.clone(); pairs.len()]);
    let (b, b_inj) = disjoint_union(&vec![big.complex.clone(); n + 1]);
    let coface = |k: usize| {
        let objs: Vec<usize> = ops::coface(n - 1, k).iter().map(|&v| v as usize).collect();
        let f = thin_functor(&small.category, &big.category, &objs).unwrap();
        nerve_map(&f, &small, &big).unwrap()
    };
    let leg = |side: usize| {
        let mut images = vec![None; a.len()];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            // inside face i the missing vertex j sits at j - 1; inside face j, i stays i
            let (piece, local) = if side == 0 { (i, j - 1) } else { (j, i) };
            let m = coface(local);
            for c in small.complex.cell_ids() {
                images[a_inj[p].image(c).cell.index()] = Some(b_inj[piece].apply(m.image(c)));
            }
        }
        Morphism::new(a.clone(), b.clone(), images.into_iter().map(Option::unwrap).collect()).unwrap()
    };
    let q = coequalizer(&leg(0), &leg(1)).unwrap();
    (**q.target()).clone()
}

fn coequalizer_suite() -> Tally {
    let mut t = Tally::default();
    for (n, bound) in [(2, 4), (3, 3)] {
        let direct = k_shriek(&Arc::new(crate::standard::boundary(n).unwrap()), bound);
        let glued = Arc::new(boundary_coequalizer(n, bound));
        let counts = (direct.complex().cell_counts(), glued.cell_counts());
        t.check(counts.0 == counts.1, || format!("n = {n}: counts {:?} vs {:?}", counts.0, counts.1));
        t.check(is_isomorphic(direct.complex(), &glued), || format!("n = {n}: not isomorphic"));
        t.notes.push(format!("k_!(∂Δ^{n}) at {bound}: cells {:?}", counts.0));
    }
    t
}

/// The counit of `k^!` on groupoid nerves, and `k^!(X) → J(X)` on other
/// nerves, are trivial fibrations up to dimension 3.
fn counit() -> Tally {
    const B: usize = 3;
    let mut t = Tally::default();
    let groupoids: Vec<_> = corpus::groupoids()
        .into_par_iter()
        .map(|(name, c)| {
            let nv = Nerve::new(&Arc::new(c), B);
            let k = k_upper_exact(&nv);
            (name, is_trivial_fibration(&k.counit, B, Some(B)))
        })
        .collect();
    for (name, v) in groupoids {
        t.check(v.status == Status::Holds, || format!("counit on {name}: {} ({})", v.status.as_str(), v.detail));
    }
    let others: Vec<_> = corpus::posets_and_mixed()
        .into_par_iter()
        .map(|(name, c)| {
            let nv = Nerve::new(&Arc::new(c), B);
            let k = k_upper_exact(&nv);
            let v = counit_comparison(&k).map(|m| is_trivial_fibration(&m, B, Some(B)));
            (name, v)
        })
        .collect();
    for (name, v) in others {
        match v {
            Ok(v) => t.check(v.status == Status::Holds, || {
                format!("k^! → J on {name}: {} ({})", v.status.as_str(), v.detail)
            }),
            Err(e) => t.check(false, || format!("k^! → J on {name}: {e}")),
        }
    }
    t
}

/// `J(B C) ≅ B(Iso C)`.
fn core_suite() -> Tally {
    const N: usize = 3;
    let mut t = Tally::default();
    let cats = corpus::small_categories();
    let results: Vec<(String, bool)> = cats
        .par_iter()
        .map(|(name, c)| {
            let nv = Nerve::new(&Arc::new(c.clone()), N);
            let iso = Nerve::new(&Arc::new(c.iso_subcategory()), N);
            let ok = core(&nv.complex).is_ok_and(|j| is_isomorphic(&Arc::new(j), &iso.complex));
            (name.clone(), ok)
        })
        .collect();
    for (name, ok) in results {
        t.check(ok, || format!("core of {name}"));
    }
    t.notes.push(format!("{} categories", cats.len()));
    t
}

/// The slice formula for `t^!` on nerves and the generator formula for `t_!`.
fn adjoint_formulas() -> Tally {
    let mut t = Tally::default();
    let cats = [FiniteCategory::ordinal(1), FiniteCategory::chaotic(1), corpus::z2(), FiniteCategory::ordinal(2)];
    let upper: Vec<Tally> = cats
        .par_iter()
        .map(|c| {
            let mut t = Tally::default();
            let n_top = 2;
            let x = t_upper(c, 2, n_top);
            for m in 0..=2 {
                let slice = Arc::new(crate::bisimplicial::vertical_slice(&x.value, m));
                let (fun, _) = functor_category(&FiniteCategory::ordinal(m), c);
                let expected = k_upper_exact(&Nerve::new(&Arc::new(fun), n_top));
                t.check(is_isomorphic(&slice, &expected.value.value), || {
                    format!("t^! slice {m} over {:?}", c.objects())
                });
            }
            t
        })
        .collect();
    upper.into_iter().for_each(|p| t.merge(p));
    let lower: Vec<Tally> = (0..=2)
        .flat_map(|n| (0..=2).map(move |m| (n, m)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(n, m)| {
            let mut t = Tally::default();
            let x = box_product(&standard(n), &standard(m));
            let lhs = Arc::new(t_shriek(&x, 3).value);
            let bp = Nerve::new(&Arc::new(FiniteCategory::chaotic(m)), 3);
            let prod = product(&Arc::new(standard(n)), &bp.complex);
            let rhs = Arc::new(skeleton(&prod.object, 3));
            t.check(is_isomorphic(&lhs, &rhs), || format!("t_!(Δ^{{{n},{m}}})"));
            t
        })
        .collect();
    lower.into_iter().for_each(|p| t.merge(p));
    t
}

fn segal() -> Tally {
    let mut t = Tally::default();
    for (name, c) in corpus::nerve_categories() {
        let d = crate::bisimplicial::disc_nerve(&c, 3);
        let v = check_segal(&d, Strategy::Iso, 3);
        t.check(v.holds(), || format!("Disc({name}) is not Segal: {}", v.detail));
    }
    let exact = |x| Truncated { value: x, bound: 0, exact: true };
    let v = check_complete(&exact(crate::bisimplicial::generator_f(0)), Strategy::Iso, 2);
    t.check(v.holds(), || format!("F(0) completeness: {}", v.detail));
    let fhat = crate::bisimplicial::generator_fhat(2).unwrap().source().as_ref().clone();
    let v = check_segal(&exact(fhat), Strategy::Iso, 2);
    t.check(v.status == Status::Fails, || format!("F̂(2) Segal check: {}", v.status.as_str()));
    let d = crate::bisimplicial::disc_nerve(&FiniteCategory::chaotic(1), 3);
    let v = check_complete(&d, Strategy::Iso, 3);
    t.notes.push(format!("Disc(chaotic-1) completeness: {} ({})", v.status.as_str(), v.detail));
    t
}

fn projection(c: &FiniteCategory, d: &FiniteCategory, first: bool) -> FunctorData {
    let (n2, m2) = (d.object_count(), d.arrow_count());
    let p = c.product(d);
    FunctorData {
        objects: (0..p.object_count()).map(|o| if first { o / n2 } else { o % n2 }).collect(),
        arrows: (0..p.arrow_count()).map(|f| if first { f / m2 } else { f % m2 }).collect(),
    }
}

/// Functors whose nerves are tested as Kan fibrations.
fn fibration_candidates() -> Vec<(String, FiniteCategory, FiniteCategory, FunctorData)> {
    let pt = FiniteCategory::terminal();
    let i = FiniteCategory::ordinal(1);
    let g = FiniteCategory::chaotic(1);
    let to_pt = |c: &FiniteCategory| thin_functor(c, &pt, &vec![0; c.object_count()]).unwrap();
    let fold = {
        let two = i.coproduct(&i);
        let objects = vec![0, 1, 0, 1];
        let arrows = (0..two.arrow_count()).map(|f| f % i.arrow_count()).collect();
        (two, FunctorData { objects, arrows })
    };
    vec![
        ("identity of [1]".into(), i.clone(), i.clone(), FunctorData::identity(&i)),
        ("chaotic-1 to point".into(), g.clone(), pt.clone(), to_pt(&g)),
        ("discrete-2 to point".into(), FiniteCategory::discrete(2), pt.clone(), to_pt(&FiniteCategory::discrete(2))),
        ("[1] x chaotic-1 to [1]".into(), i.product(&g), i.clone(), projection(&i, &g, true)),
        ("Z2 x [1] to [1]".into(), corpus::z2().product(&i), i.clone(), projection(&corpus::z2(), &i, false)),
        (
            "chaotic-2 onto chaotic-1".into(),
            FiniteCategory::chaotic(2),
            g.clone(),
            thin_functor(&FiniteCategory::chaotic(2), &g, &[0, 0, 1]).unwrap(),
        ),
        ("fold of [1] + [1]".into(), fold.0, i.clone(), fold.1),
    ]
}

/// Kan fibrations between quasi-categories give a pullback square of cores.
fn pullback() -> Tally {
    const B: usize = 3;
    let mut t = Tally::default();
    let results: Vec<(String, Status, Option<bool>)> = fibration_candidates()
        .into_par_iter()
        .map(|(name, c, d, f)| {
            let (nc, nd) = (Nerve::new(&Arc::new(c), B), Nerve::new(&Arc::new(d), B));
            let map = nerve_map(&f, &nc, &nd).expect("functor");
            let v = has_rlp(&map, &horns(B), B, Some(B));
            let square = (v.status == Status::Holds).then(|| core_square_is_pullback(&map).unwrap_or(false));
            (name, v.status, square)
        })
        .collect();
    let mut verified = 0;
    for (name, status, square) in results {
        match square {
            Some(ok) => {
                verified += 1;
                t.check(ok, || format!("{name}: core square is not a pullback"));
            }
            None => t.notes.push(format!("{name}: not verified as a Kan fibration ({})", status.as_str())),
        }
    }
    t.require(verified >= 5, || format!("only {verified} verified Kan fibrations"));
    t.notes.push(format!("{verified} verified Kan fibrations"));
    t
}

/// Lifts found by direct enumeration of every assignment of the cells of `B`
/// outside the image of `i`.
pub fn brute_force_lift(p: &LiftingProblem) -> Option<SimplicialMap> {
    let b = p.i.target();
    let x = p.f.source();
    let mut fixed = vec![None; b.len()];
    for c in p.i.source().cell_ids() {
        fixed[p.i.image(c).cell.index()] = Some(p.top.image(c).clone());
    }
    let free: Vec<usize> = (0..b.len()).filter(|&c| fixed[c].is_none()).collect();
    let options: Vec<Vec<Simplex<1>>> = free
        .iter()
        .map(|&c| x.simplices([b.cell(crate::complex::CellId(c as u32)).degree[0]]))
        .collect();
    let mut choice = vec![0usize; free.len()];
    loop {
        if options.iter().all(|o| !o.is_empty()) {
            let mut images = fixed.clone();
            for (k, &c) in free.iter().enumerate() {
                images[c] = Some(options[k][choice[k]].clone());
            }
            let images = images.into_iter().map(Option::unwrap).collect();
            if let Ok(h) = Morphism::new(b.clone(), x.clone(), images) {
                if p.is_lift(&h) {
                    return Some(h);
                }
            }
        } else {
            return None;
        }
        let mut k = 0;
        loop {
            if k == free.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn assignment_count(p: &LiftingProblem) -> usize {
    let b = p.i.target();
    let image: std::collections::HashSet<_> = p.i.images().iter().map(|s| s.cell).collect();
    b.cell_ids()
        .filter(|c| !image.contains(c))
        .map(|c| p.f.source().simplex_count([b.cell(c).degree[0]]))
        .fold(1usize, |a, n| a.saturating_mul(n))
}

/// A reproducible family of small lifting problems.
pub fn random_lifting_problems(count: usize, seed: u64) -> Vec<LiftingProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets = corpus::small_simplicial_sets();
    let mut inclusions: Vec<SimplicialMap> = Vec::new();
    for n in 1..=3 {
        inclusions.push(boundary_inclusion(n).unwrap());
        for k in 0..=n {
            inclusions.push(horn_inclusion(n, k).unwrap());
        }
    }
    inclusions.push(spine_inclusion(2));
    inclusions.push(spine_inclusion(3));
    let bases = [Arc::new(standard(2)), Arc::new(standard(3)), corpus::small_simplicial_sets()[8].1.clone()];
    let mut out = Vec::new();
    while out.len() < count {
        let i = if rng.gen_bool(0.6) {
            inclusions.choose(&mut rng).unwrap().clone()
        } else {
            let base = bases.choose(&mut rng).unwrap().clone();
            random_subcomplex(&mut rng, &base)
        };
        let (_, x) = targets.choose(&mut rng).unwrap();
        let f = if rng.gen_bool(0.5) {
            to_terminal(x)
        } else {
            let (_, y) = targets.choose(&mut rng).unwrap();
            let maps = enumerate_maps(x, y);
            match maps.choose(&mut rng) {
                Some(f) => f.clone(),
                None => continue,
            }
        };
        let tops = enumerate_maps(i.source(), x);
        let Some(top) = tops.choose(&mut rng).cloned() else { continue };
        let through = top.then(&f).unwrap();
        let bottoms: Vec<SimplicialMap> = enumerate_maps(i.target(), f.target())
            .into_iter()
            .filter(|b| i.then(b).unwrap().equals(&through))
            .collect();
        let Some(bottom) = bottoms.choose(&mut rng).cloned() else { continue };
        let p = LiftingProblem::new(i, f, top, bottom).expect("commuting square");
        if assignment_count(&p) <= 200_000 {
            out.push(p);
        }
    }
    out
}

fn solver() -> Tally {
    let mut t = Tally::default();
    let problems = random_lifting_problems(100, 0x1f7);
    let results: Vec<(bool, bool, bool)> = problems
        .par_iter()
        .map(|p| {
            let fast = solve_lifting(p);
            let slow = brute_force_lift(p);
            let valid = fast.as_ref().is_none_or(|h| p.is_lift(h));
            (fast.is_some(), slow.is_some(), valid)
        })
        .collect();
    let mut solvable = 0;
    for (k, (fast, slow, valid)) in results.into_iter().enumerate() {
        solvable += slow as usize;
        t.check(fast == slow && valid, || format!("problem {k}: solver {fast}, enumeration {slow}"));
    }
    t.notes.push(format!("{solvable} of 100 problems have a lift"));
    t
}

/// Sample presheaves of categories for the Grothendieck construction.
pub fn category_presheaves() -> Vec<(String, CategoryPresheaf)> {
    let pt = Arc::new(FiniteCategory::terminal());
    let i = Arc::new(FiniteCategory::ordinal(1));
    let by_arrow = |c: &Arc<FiniteCategory>, sections: Vec<FiniteCategory>, along: &dyn Fn(usize, usize) -> FunctorData| {
        let r = c.arrows().iter().map(|a| along(a.source, a.target)).collect();
        Presheaf::new(c.clone(), sections, r).unwrap()
    };
    let mut out = vec![];
    for (name, d) in [
        ("ordinal-2", FiniteCategory::ordinal(2)),
        ("chaotic-1", FiniteCategory::chaotic(1)),
        ("Z2", corpus::z2()),
    ] {
        out.push((format!("point / {name}"), Presheaf::constant(pt.clone(), d)));
    }
    for n in 0..=3 {
        out.push((
            format!("point / simplex-op-{n}"),
            Presheaf::constant(pt.clone(), FiniteCategory::simplex_category(n).opposite()),
        ));
    }
    out.push(("[1] / Z2".into(), Presheaf::constant(i.clone(), corpus::z2())));
    let (d1, d2) = (FiniteCategory::discrete(1), FiniteCategory::discrete(2));
    out.push((
        "[1] / elements".into(),
        by_arrow(&i, vec![d1.clone(), d2.clone()], &|s, t| match (s, t) {
            (0, 1) => FunctorData { objects: vec![0, 0], arrows: vec![0, 0] },
            (k, _) => FunctorData::identity(if k == 0 { &d1 } else { &d2 }),
        }),
    ));
    let (g, o) = (FiniteCategory::chaotic(1), FiniteCategory::ordinal(1));
    let incl = thin_functor(&o, &g, &[0, 1]).unwrap();
    out.push((
        "[1] / ordinal into chaotic".into(),
        by_arrow(&i, vec![g.clone(), o.clone()], &|s, t| match (s, t) {
            (0, 1) => incl.clone(),
            (k, _) => FunctorData::identity(if k == 0 { &g } else { &o }),
        }),
    ));
    let vee = Arc::new(FiniteCategory::poset(3, &[(0, 1), (0, 2)]).unwrap());
    out.push(("vee / ordinal-1".into(), Presheaf::constant(vee, FiniteCategory::ordinal(1))));
    out
}

fn grothendieck_suite() -> Tally {
    let mut t = Tally::default();
    for (name, a) in category_presheaves() {
        let g = match grothendieck(&a) {
            Ok(g) => g,
            Err(e) => {
                t.check(false, || format!("{name}: {e}"));
                continue;
            }
        };
        let c = &g.category;
        let m = c.arrow_count();
        let mut ok = true;
        for f in 0..m {
            let af = c.arrow(f);
            ok &= c.compose(f, c.identity(af.source)) == f && c.compose(c.identity(af.target), f) == f;
            for gg in (0..m).filter(|&x| c.arrow(x).source == af.target) {
                for h in (0..m).filter(|&x| c.arrow(x).source == c.arrow(gg).target) {
                    ok &= c.compose(h, c.compose(gg, f)) == c.compose(c.compose(h, gg), f);
                }
            }
        }
        t.check(ok, || format!("{name}: composition laws"));
        t.check(g.forgetful.validate(c, &a.index).is_ok(), || format!("{name}: forgetful functor"));
    }
    let rounds: Vec<Tally> = corpus::bisimplicial_sets()
        .par_iter()
        .map(|(name, x)| {
            let mut t = Tally::default();
            for n in 0..=3 {
                let back = bisimplicial_to_presheaf(x, n).and_then(|p| presheaf_to_bisimplicial(&p));
                let sk = horizontal_skeleton_inclusion(x, n);
                let ok = back.is_ok_and(|y| is_isomorphic(sk.source(), &Arc::new(y)));
                t.check(ok, || format!("{name}: round trip at {n}"));
                t.check(check_adiagram(&adiagram_of_bisimplicial(x, n)).is_ok(), || {
                    format!("{name}: action laws at {n}")
                });
            }
            t
        })
        .collect();
    rounds.into_iter().for_each(|p| t.merge(p));
    t
}
