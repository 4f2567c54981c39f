//! Small enumeration helpers shared by the operadic modules.

use alloc::vec::Vec;

/// Strictly increasing sequences of the given length with entries in
/// `1..=max`.
pub(crate) fn strictly_increasing(max: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, max: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=max {
            cur.push(v);
            rec(v + 1, max, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, max, len, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Weakly increasing sequences of the given length with entries in
/// `1..=max`.
pub(crate) fn weakly_increasing(max: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, max: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=max {
            cur.push(v);
            rec(v, max, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, max, len, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Compositions of `n` into exactly `r` positive parts, lexicographically
/// descending.
pub(crate) fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == 1 {
            if n >= 1 {
                cur.push(n);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let upper = n.saturating_sub(r - 1);
        for first in (1..=upper).rev() {
            cur.push(first);
            rec(n - first, r - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && n >= r {
        rec(n, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}
