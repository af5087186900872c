//! Partitions, strict partitions, and Kleshchev multipartitions, with the
//! enumerations feeding the combinatorial verifiers.
//!
//! Conventions: parts are positive; the empty partition is allowed and has
//! first part 0 and length 0.

mod lemmas;
mod theorem2;

pub use lemmas::{
    canonical_bijection, enum_v, enum_w, verify_exponent_telescoping, verify_lea, verify_lec,
    verify_prop_leb,
};
pub use theorem2::{lhs_theorem, rhs_theorem, theorem2_x_cap, verify_theorem2};

use std::fmt;

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p >= 1),
            "parts must be weakly decreasing and positive: {:?}",
            parts
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// First part, with the convention that the empty partition has first part 0.
    pub fn first_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }
}

/// Strictly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] > w[1]) && parts.iter().all(|&p| p >= 1),
            "parts must be strictly decreasing and positive: {:?}",
            parts
        );
        StrictPartition { parts }
    }

    pub fn empty() -> Self {
        StrictPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part at 1-based row r, or 0 past the last row.
    pub fn part_at(&self, row: usize) -> u32 {
        self.parts.get(row - 1).copied().unwrap_or(0)
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

/// k-tuple of strict partitions, serialized as nested integer lists such as
/// `[[3,1],[2]]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiPartition {
    components: Vec<StrictPartition>,
}

impl MultiPartition {
    pub fn new(components: Vec<StrictPartition>) -> Self {
        assert!(!components.is_empty(), "a multipartition has k >= 1 components");
        MultiPartition { components }
    }

    pub fn empty(k: usize) -> Self {
        Self::new(vec![StrictPartition::empty(); k])
    }

    pub fn components(&self) -> &[StrictPartition] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &StrictPartition {
        &self.components[i]
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    /// Total number of boxes.
    pub fn size(&self) -> u64 {
        self.components.iter().map(|c| c.size()).sum()
    }

    /// Total number of rows.
    pub fn length(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum()
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

/// Newline-delimited dump of a multipartition stream (test fixtures).
pub fn dump_lines(elements: &[MultiPartition]) -> String {
    let mut out = String::new();
    for e in elements {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}

/// The staircase (j, j-1, ..., 1); its size is j(j+1)/2.
pub fn staircase(j: usize) -> StrictPartition {
    StrictPartition::new((1..=j as u32).rev().collect())
}

/// Kleshchev condition: the length of each component is at least the first
/// part of the next one. Vacuous for k = 1.
pub fn is_kleshchev(b: &MultiPartition) -> bool {
    b.components
        .windows(2)
        .all(|w| w[0].len() as u32 >= w[1].first_part())
}

/// Every partition with at most `max_len` parts, each at most `max_part`.
pub fn enum_partitions_boxed(max_len: usize, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn rec(stack: &mut Vec<u32>, rows_left: usize, max_next: u32, out: &mut Vec<Partition>) {
        out.push(Partition::new(stack.clone()));
        if rows_left == 0 {
            return;
        }
        for p in 1..=max_next {
            stack.push(p);
            rec(stack, rows_left - 1, p, out);
            stack.pop();
        }
    }
    rec(&mut stack, max_len, max_part, &mut out);
    out
}

/// Visit every strict partition with size at most `max_size`, optionally
/// with an exact length and a largest-part bound, as a parts slice in
/// strictly decreasing order. Each qualifying partition is visited exactly
/// once.
pub fn visit_strict(
    max_size: i64,
    exact_len: Option<usize>,
    max_part: Option<u32>,
    f: &mut dyn FnMut(&[u32]),
) {
    if max_size < 0 {
        return;
    }
    let cap = max_part.unwrap_or_else(|| max_size.min(u32::MAX as i64) as u32);
    let mut stack: Vec<u32> = Vec::new();
    fn rec(
        stack: &mut Vec<u32>,
        budget: i64,
        max_next: u32,
        len_left: Option<usize>,
        f: &mut dyn FnMut(&[u32]),
    ) {
        match len_left {
            Some(0) => {
                f(stack);
                return;
            }
            Some(r) => {
                // r more strictly decreasing parts need at least r(r+1)/2 boxes
                // and a largest part of at least r.
                if (r as i64) * (r as i64 + 1) / 2 > budget || (max_next as usize) < r {
                    return;
                }
            }
            None => f(stack),
        }
        let hi = max_next.min(budget.min(u32::MAX as i64) as u32);
        for p in (1..=hi).rev() {
            stack.push(p);
            rec(stack, budget - p as i64, p - 1, len_left.map(|r| r - 1), f);
            stack.pop();
        }
    }
    rec(&mut stack, max_size, cap, exact_len, f);
}

/// Every strict partition meeting the constraints, materialized.
pub fn enum_strict(
    max_size: i64,
    exact_len: Option<usize>,
    max_part: Option<u32>,
) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    visit_strict(max_size, exact_len, max_part, &mut |parts| {
        out.push(StrictPartition::new(parts.to_vec()));
    });
    out
}

/// Visit every element of S_k with total size at most `max_size`, reusing a
/// component stack. Components are chosen left to right; the Kleshchev
/// condition turns into a largest-part bound on each later component, and a
/// component of length 0 forces every remaining component to be empty.
pub fn visit_sk(k: usize, max_size: i64, f: &mut dyn FnMut(&[StrictPartition])) {
    if max_size < 0 || k == 0 {
        return;
    }
    fn rec(
        stack: &mut Vec<StrictPartition>,
        k: usize,
        budget: i64,
        bound: Option<u32>,
        f: &mut dyn FnMut(&[StrictPartition]),
    ) {
        if stack.len() == k {
            f(stack);
            return;
        }
        if bound == Some(0) {
            let save = stack.len();
            stack.resize(k, StrictPartition::empty());
            f(stack);
            stack.truncate(save);
            return;
        }
        if stack.len() + 1 == k {
            // Last component: stream candidates without materializing them.
            let save = stack.len();
            stack.push(StrictPartition::empty());
            visit_strict(budget, None, bound, &mut |parts| {
                stack[save] = StrictPartition::new(parts.to_vec());
                f(stack);
            });
            stack.truncate(save);
            return;
        }
        for mu in enum_strict(budget, None, bound) {
            let len = mu.len() as u32;
            let size = mu.size() as i64;
            stack.push(mu);
            rec(stack, k, budget - size, Some(len), f);
            stack.pop();
        }
    }
    let mut stack = Vec::with_capacity(k);
    rec(&mut stack, k, max_size, None, f);
}

/// Every element of S_k with total size at most `max_size`.
pub fn enum_sk(k: usize, max_size: i64) -> Vec<MultiPartition> {
    let mut out = Vec::new();
    visit_sk(k, max_size, &mut |comps| {
        out.push(MultiPartition::new(comps.to_vec()));
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn boxed_enumeration_2x2() {
        let got: BTreeSet<Vec<u32>> = enum_partitions_boxed(2, 2)
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect();
        let expect: BTreeSet<Vec<u32>> = [
            vec![],
            vec![1],
            vec![2],
            vec![1, 1],
            vec![2, 1],
            vec![2, 2],
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);
        assert_eq!(enum_partitions_boxed(0, 5).len(), 1);
        assert_eq!(enum_partitions_boxed(5, 0).len(), 1);
    }

    #[test]
    fn strict_enumeration_counts() {
        let exactly_six: Vec<_> = enum_strict(6, None, None)
            .into_iter()
            .filter(|p| p.size() == 6)
            .collect();
        assert_eq!(exactly_six.len(), 4); // (6), (5,1), (4,2), (3,2,1)

        let got: BTreeSet<Vec<u32>> = enum_strict(10, Some(2), Some(3))
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect();
        let expect: BTreeSet<Vec<u32>> =
            [vec![2, 1], vec![3, 1], vec![3, 2]].into_iter().collect();
        assert_eq!(got, expect);

        assert_eq!(enum_strict(9, Some(0), None).len(), 1);
        assert!(enum_strict(-1, None, None).is_empty());
    }

    #[test]
    fn strict_enumeration_matches_naive_filter() {
        // Naive oracle: filter all subsets of 1..=18 by sum.
        let max = 18u32;
        let mut naive = 0usize;
        for mask in 0u32..(1 << max.min(18)) {
            let sum: u32 = (0..18).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
            if sum <= max {
                naive += 1;
            }
        }
        let got = enum_strict(max as i64, None, None).len();
        assert_eq!(got, naive);
        let set: BTreeSet<_> = enum_strict(max as i64, None, None).into_iter().collect();
        assert_eq!(set.len(), got, "no duplicates");
    }

    #[test]
    fn staircase_sizes() {
        assert!(staircase(0).is_empty());
        assert_eq!(staircase(3).parts(), &[3, 2, 1]);
        assert_eq!(staircase(3).size(), 6);
        // |D_{s+t}| = |D_s| + |D_t| + st at (s,t) = (2,3).
        assert_eq!(staircase(5).size(), staircase(2).size() + staircase(3).size() + 6);
    }

    #[test]
    fn kleshchev_examples() {
        let one = StrictPartition::new(vec![1]);
        let empty = StrictPartition::empty();
        assert!(is_kleshchev(&MultiPartition::new(vec![one.clone(), empty.clone()])));
        assert!(!is_kleshchev(&MultiPartition::new(vec![empty, one])));
        let b = MultiPartition::new(vec![
            StrictPartition::new(vec![2, 1]),
            StrictPartition::new(vec![2]),
        ]);
        assert!(is_kleshchev(&b));
    }

    #[test]
    fn sk_enumeration_small_sizes() {
        let s2 = enum_sk(2, 2);
        let by_size = |n: u64| s2.iter().filter(|b| b.size() == n).count();
        assert_eq!(by_size(0), 1);
        assert_eq!(by_size(1), 1); // ((1), ())
        assert_eq!(by_size(2), 2); // ((2), ()) and ((1), (1))
        let size1: Vec<_> = s2.iter().filter(|b| b.size() == 1).collect();
        assert_eq!(size1[0].to_string(), "[[1],[]]");
    }

    #[test]
    fn sk_matches_kleshchev_filter() {
        // Oracle: all pairs of strict partitions filtered by the defining
        // inequalities.
        for k in 1..=3usize {
            let max = 9i64;
            let got: BTreeSet<MultiPartition> = enum_sk(k, max).into_iter().collect();
            let mut expect = BTreeSet::new();
            let all = enum_strict(max, None, None);
            fn build(
                k: usize,
                max: i64,
                all: &[StrictPartition],
                acc: &mut Vec<StrictPartition>,
                out: &mut BTreeSet<MultiPartition>,
            ) {
                if acc.len() == k {
                    let mp = MultiPartition::new(acc.clone());
                    if mp.size() as i64 <= max && is_kleshchev(&mp) {
                        out.insert(mp);
                    }
                    return;
                }
                for p in all {
                    acc.push(p.clone());
                    if acc.iter().map(|c| c.size()).sum::<u64>() as i64 <= max {
                        build(k, max, all, acc, out);
                    }
                    acc.pop();
                }
            }
            build(k, max, &all, &mut Vec::new(), &mut expect);
            assert_eq!(got, expect, "k={}", k);
        }
    }

    #[test]
    fn sk_k1_is_all_strict() {
        let got: BTreeSet<_> = enum_sk(1, 12)
            .into_iter()
            .map(|b| b.component(0).clone())
            .collect();
        let expect: BTreeSet<_> = enum_strict(12, None, None).into_iter().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn appending_empty_stays_kleshchev() {
        for b in enum_sk(2, 8) {
            let mut comps = b.components().to_vec();
            comps.push(StrictPartition::empty());
            assert!(is_kleshchev(&MultiPartition::new(comps)));
        }
    }

    #[test]
    fn dump_lines_format() {
        let e = vec![
            MultiPartition::new(vec![
                StrictPartition::new(vec![3, 1]),
                StrictPartition::new(vec![2]),
            ]),
            MultiPartition::empty(2),
        ];
        assert_eq!(dump_lines(&e), "[[3,1],[2]]\n[[],[]]\n");
    }
}
