//! Named objects that `--input` accepts in place of a file.

use std::sync::Arc;

use segalkit::bisimplicial::disc_nerve;
use segalkit::corpus;
use segalkit::presheaf::bisimplicial_to_presheaf;
use segalkit::FiniteCategory;

use crate::document::{Document, Truncation};

/// Horizontal truncation used for the nerve-based builtins.
pub const NERVE_BOUND: usize = 3;

pub fn names() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    out.extend(corpus::simplicial_sets().into_iter().map(|(n, _)| n));
    out.extend(corpus::bisimplicial_sets().into_iter().map(|(n, _)| n));
    out.extend(corpus::nerve_categories().into_iter().map(|(n, _)| n));
    out.extend(["disc-poset2", "slices-F2"].map(String::from));
    out
}

pub fn lookup(name: &str) -> Option<Document> {
    if let Some((_, x)) = corpus::simplicial_sets().into_iter().find(|(n, _)| n == name) {
        return Some(Document::Simplicial(x, None));
    }
    if let Some((n, x)) = corpus::bisimplicial_sets().into_iter().find(|(n, _)| n == name) {
        let truncated = n.starts_with("disc-") || n.starts_with("I@");
        let t = truncated.then_some(Truncation { bound: NERVE_BOUND, exact: n.starts_with("disc-") });
        return Some(Document::Bisimplicial(x, t));
    }
    if let Some((_, c)) = corpus::nerve_categories().into_iter().find(|(n, _)| n == name) {
        return Some(Document::Category(c));
    }
    match name {
        "disc-poset2" => {
            let d = disc_nerve(&FiniteCategory::ordinal(2), NERVE_BOUND);
            Some(Document::Bisimplicial(Arc::new(d.value), Some(Truncation { bound: d.bound, exact: d.exact })))
        }
        "slices-F2" => {
            let f2 = segalkit::bisimplicial::generator_f(2);
            bisimplicial_to_presheaf(&f2, 2).ok().map(Document::Presheaf)
        }
        _ => None,
    }
}
