//! The Segal and completeness conditions on finite bisimplicial sets.
//!
//! Both reduce to testing a map of vertical simplicial sets with one of the
//! weak-equivalence strategies. Inputs whose horizontal direction is a
//! truncation are only probed where the truncation is faithful.

use std::sync::Arc;

use crate::bisimplicial::{segal_map, VerticalHom};
use crate::category::FiniteCategory;
use crate::complex::BisimplicialSet;
use crate::lifting::{Status, Verdict};
use crate::map::SimplicialMap;
use crate::nerve::Nerve;
use crate::standard::standard;
use crate::weq::{test_map, Strategy};
use crate::Truncated;

fn vertical_check(f: &SimplicialMap, strategy: Strategy) -> Verdict {
    let d = |x: &crate::complex::SimplicialSet| x.dim().unwrap_or(0);
    let bound = d(f.source()).max(d(f.target())) + 1;
    test_map(f, strategy, bound, None)
}

/// The Segal maps `X_{n*} → X_{1*} ×_{X_{0*}} ⋯ ×_{X_{0*}} X_{1*}` for
/// `2 ≤ n ≤ bound` (the case `n = 1` is an identity).
pub fn check_segal(x: &Truncated<BisimplicialSet>, strategy: Strategy, bound: usize) -> Verdict {
    let name = format!("segal/{strategy}");
    let limit = if x.exact { bound } else { bound.min(x.bound) };
    let mut details = Vec::new();
    for n in 2..=limit {
        let s = match segal_map(&x.value, n) {
            Ok(s) => s,
            Err(e) => return Verdict::new(Status::Fails, &name, bound, format!("n = {n}: {e}")),
        };
        let v = vertical_check(&s.map, strategy);
        match v.status {
            Status::Holds => details.push(format!("n = {n}: {}", v.detail)),
            _ => {
                let mut out = v;
                out.strategy = name;
                out.bound = bound;
                out.detail = format!("n = {n}: {}", out.detail);
                return out;
            }
        }
    }
    if limit < bound {
        return Verdict::new(
            Status::UnknownAtBound,
            &name,
            bound,
            format!("checked up to the horizontal truncation {limit}"),
        );
    }
    if details.is_empty() {
        details.push("single-factor case".into());
    }
    Verdict::new(Status::Holds, &name, bound, details.join("; "))
}

/// Restriction `hom(I, X) → X_{0*}` along the vertex `F(0) → I`, with `I`
/// horizontally truncated at `bound`.
pub fn completeness_map(x: &Arc<BisimplicialSet>, bound: usize) -> SimplicialMap {
    let interval = Nerve::new(&Arc::new(FiniteCategory::chaotic(1)), bound);
    let pt = Arc::new(standard(0));
    let v0 = interval.simplex(&(0, Vec::new())).expect("vertex");
    let inc = SimplicialMap::new(pt.clone(), interval.complex.clone(), vec![v0]).expect("vertex inclusion");
    let from = VerticalHom::new(&interval.complex, x);
    let to = VerticalHom::new(&pt, x);
    from.restrict(&inc, &to).expect("restriction along a vertex")
}

/// Maps out of the truncated interval stand in for maps out of `I` once the
/// truncation clears the horizontal dimension of `X` by two; below that, or
/// on a truncated `X`, the outcome is reported as unknown.
pub fn check_complete(x: &Truncated<BisimplicialSet>, strategy: Strategy, bound: usize) -> Verdict {
    let name = format!("complete/{strategy}");
    let value = Arc::new(x.value.clone());
    let f = completeness_map(&value, bound);
    let mut v = vertical_check(&f, strategy);
    v.strategy = name;
    v.bound = bound;
    let needed = value.max_degree()[0] + 2;
    if !x.exact {
        v.detail = format!("input is truncated, result not conclusive: {} ({})", v.status.as_str(), v.detail);
        v.status = Status::UnknownAtBound;
    } else if bound < needed {
        v.detail = format!(
            "bound below {needed}, result not conclusive: {} ({})",
            v.status.as_str(),
            v.detail
        );
        v.status = Status::UnknownAtBound;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisimplicial::{disc_nerve, generator_f, generator_fhat};

    fn exact(x: BisimplicialSet) -> Truncated<BisimplicialSet> {
        Truncated { value: x, bound: 0, exact: true }
    }

    #[test]
    fn discrete_nerves_are_segal() {
        for c in [FiniteCategory::ordinal(2), FiniteCategory::chaotic(1), FiniteCategory::discrete(2)] {
            let d = disc_nerve(&c, 3);
            let v = check_segal(&d, Strategy::Iso, 3);
            assert!(v.holds(), "{}", v.detail);
        }
    }

    #[test]
    fn single_factor_always_holds() {
        let x = exact(generator_fhat(2).unwrap().source().as_ref().clone());
        assert!(check_segal(&x, Strategy::Iso, 1).holds());
    }

    #[test]
    fn fhat_is_not_segal() {
        let x = exact(generator_fhat(2).unwrap().source().as_ref().clone());
        let v = check_segal(&x, Strategy::Iso, 2);
        assert_eq!(v.status, Status::Fails);
        let v = check_segal(&x, Strategy::Homology, 2);
        assert_eq!(v.status, Status::Fails);
    }

    #[test]
    fn point_is_complete() {
        let v = check_complete(&exact(generator_f(0)), Strategy::Iso, 2);
        assert!(v.holds(), "{}", v.detail);
    }

    #[test]
    fn chaotic_disc_is_reported() {
        let d = disc_nerve(&FiniteCategory::chaotic(1), 3);
        let v = check_complete(&d, Strategy::Iso, 3);
        assert_eq!(v.status, Status::UnknownAtBound);
        assert!(v.detail.contains("fails"));
    }

    #[test]
    fn truncated_segal_is_unknown_past_truncation() {
        let d = disc_nerve(&FiniteCategory::chaotic(1), 2);
        assert_eq!(check_segal(&d, Strategy::Iso, 3).status, Status::UnknownAtBound);
    }
}
