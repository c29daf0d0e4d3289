//! Maps between finite ordinals `[p] = {0, …, p}`.
//!
//! An [`Op`] stores the values of a function `[p] → [q]` as a short vector;
//! the domain size is the length. Monotone maps act on simplices, arbitrary
//! functions show up as simplices of nerves of chaotic groupoids.

use smallvec::SmallVec;

/// Values of a function `[p] → [q]`, one entry per domain point.
pub type Op = SmallVec<[u8; 8]>;

/// Identity map on `[n]`.
pub fn identity(n: usize) -> Op {
    (0..=n as u8).collect()
}

/// Coface `δ^i : [n-1] → [n]`, the monotone injection skipping `i`.
pub fn coface(n: usize, i: usize) -> Op {
    debug_assert!(n >= 1 && i <= n);
    (0..=n as u8).filter(|&v| v as usize != i).collect()
}

/// Codegeneracy `σ^i : [n+1] → [n]`, the monotone surjection hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> Op {
    debug_assert!(i <= n);
    (0..=(n + 1) as u8)
        .map(|v| if v as usize > i { v - 1 } else { v })
        .collect()
}

/// `outer ∘ inner`: first apply `inner`, then `outer`.
pub fn compose(outer: &[u8], inner: &[u8]) -> Op {
    inner.iter().map(|&v| outer[v as usize]).collect()
}

/// Dimension of the domain.
pub fn domain_dim(op: &[u8]) -> usize {
    op.len() - 1
}

pub fn is_monotone(op: &[u8]) -> bool {
    op.windows(2).all(|w| w[0] <= w[1])
}

/// Whether `op` hits every point of `[target]`.
pub fn is_surjective_onto(op: &[u8], target: usize) -> bool {
    let mut seen = [false; 256];
    let mut count = 0;
    for &v in op {
        if v as usize > target {
            return false;
        }
        if !seen[v as usize] {
            seen[v as usize] = true;
            count += 1;
        }
    }
    count == target + 1
}

/// Smallest point of `[target]` not in the image of `op`.
pub fn first_missing(op: &[u8], target: usize) -> Option<usize> {
    let mut seen = [false; 256];
    for &v in op {
        seen[v as usize] = true;
    }
    (0..=target).find(|&v| !seen[v])
}

/// Positions `j` with `op(j) = op(j+1)`.
pub fn repeats(op: &[u8]) -> Vec<usize> {
    op.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] == w[1])
        .map(|(j, _)| j)
        .collect()
}

/// The monotone surjection out of `[p]` whose repeated positions are exactly `positions`.
pub fn surjection_with_repeats(p: usize, positions: &[usize]) -> Op {
    let mut op = Op::with_capacity(p + 1);
    let mut value = 0u8;
    op.push(0);
    for j in 0..p {
        if !positions.contains(&j) {
            value += 1;
        }
        op.push(value);
    }
    op
}

/// Degeneracy word of a monotone surjection, strictly decreasing
/// (`s_{i_k} ⋯ s_{i_1}` with `i_k > ⋯ > i_1`).
pub fn word_of(op: &[u8]) -> Vec<usize> {
    let mut w = repeats(op);
    w.reverse();
    w
}

/// Inverse of [`word_of`]: the surjection out of `[base + len]` for a valid word.
pub fn surjection_of_word(base: usize, word: &[usize]) -> Op {
    surjection_with_repeats(base + word.len(), word)
}

/// Every monotone surjection `[p] → [k]`, in lexicographic order of value vectors.
pub fn surjections(p: usize, k: usize) -> Vec<Op> {
    let mut out = Vec::new();
    if k > p {
        return out;
    }
    // choose which of the p gaps carry a step
    let mut chosen = Vec::with_capacity(k);
    fn rec(start: usize, p: usize, k: usize, chosen: &mut Vec<usize>, out: &mut Vec<Op>) {
        if chosen.len() == k {
            let reps: Vec<usize> = (0..p).filter(|j| !chosen.contains(j)).collect();
            out.push(surjection_with_repeats(p, &reps));
            return;
        }
        for j in start..p {
            if p - j < k - chosen.len() {
                break;
            }
            chosen.push(j);
            rec(j + 1, p, k, chosen, out);
            chosen.pop();
        }
    }
    rec(0, p, k, &mut chosen, &mut out);
    out.sort();
    out
}

/// Every monotone map `[p] → [q]`, lexicographic.
pub fn monotone_maps(p: usize, q: usize) -> Vec<Op> {
    let mut out = Vec::new();
    let mut cur = Op::new();
    fn rec(p: usize, q: usize, cur: &mut Op, out: &mut Vec<Op>) {
        if cur.len() == p + 1 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=q as u8 {
            cur.push(v);
            rec(p, q, cur, out);
            cur.pop();
        }
    }
    rec(p, q, &mut cur, &mut out);
    out
}

/// Every function `[p] → [q]`, lexicographic.
pub fn all_functions(p: usize, q: usize) -> Vec<Op> {
    let mut out = vec![Op::new()];
    for _ in 0..=p {
        let mut next = Vec::with_capacity(out.len() * (q + 1));
        for f in &out {
            for v in 0..=q as u8 {
                let mut g = f.clone();
                g.push(v);
                next.push(g);
            }
        }
        out = next;
    }
    out
}

/// Factor a monotone map as `mono ∘ epi`.
pub fn epi_mono(op: &[u8]) -> (Op, Op) {
    let mut image: Op = op.iter().copied().collect();
    image.dedup();
    let mut epi = Op::with_capacity(op.len());
    let mut k = 0u8;
    for (j, &v) in op.iter().enumerate() {
        if j > 0 && v != op[j - 1] {
            k += 1;
        }
        epi.push(k);
    }
    (epi, image)
}

/// Decrement every value above `i`; used after removing `i` from the codomain.
pub fn drop_value(op: &[u8], i: usize) -> Op {
    op.iter()
        .map(|&v| {
            debug_assert!(v as usize != i);
            if v as usize > i {
                v - 1
            } else {
                v
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosimplicial_identities() {
        // δ^j δ^i = δ^i δ^{j-1} for i < j
        for n in 2..6 {
            for j in 0..=n {
                for i in 0..j {
                    let lhs = compose(&coface(n, j), &coface(n - 1, i));
                    let rhs = compose(&coface(n, i), &coface(n - 1, j - 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn words_round_trip() {
        for p in 0..6 {
            for k in 0..=p {
                for s in surjections(p, k) {
                    let w = word_of(&s);
                    assert!(w.windows(2).all(|x| x[0] > x[1]));
                    assert_eq!(surjection_of_word(k, &w), s);
                }
            }
        }
    }

    #[test]
    fn surjection_counts_are_binomial() {
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(5, 5).len(), 1);
        assert_eq!(monotone_maps(1, 1).len(), 3);
        assert_eq!(all_functions(2, 1).len(), 8);
    }

    #[test]
    fn epi_mono_factorization() {
        for f in monotone_maps(3, 3) {
            let (e, m) = epi_mono(&f);
            assert_eq!(compose(&m, &e), f);
            assert!(is_surjective_onto(&e, m.len() - 1));
        }
    }
}
