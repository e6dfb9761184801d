//! Multi-index bookkeeping: general, non-decreasing and strictly increasing
//! index families, complements, permutation signs, and the binary array
//! indices that enumerate iterated-jet components.
//!
//! Indices are 1-based (entries range over `1..=n`) and serialize as
//! comma-separated lists in parentheses, e.g. `(1,3)`. Binary array indices
//! serialize as their digit string, e.g. `110`.

use crate::error::{Error, Result};
use std::fmt;

/// A finite sequence of coordinate indices in `1..=n`, without ordering
/// constraints. Labels repeated partial derivatives in iterated jets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    n: usize,
    entries: Vec<usize>,
}

/// A non-decreasing multi-index; labels symmetric derivative slots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonDecreasingIndex {
    n: usize,
    entries: Vec<usize>,
}

/// A strictly increasing multi-index; labels alternating-tensor components.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IncreasingIndex {
    n: usize,
    entries: Vec<usize>,
}

fn check_range(n: usize, entries: &[usize]) -> Result<()> {
    for &e in entries {
        if e == 0 || e > n {
            return Err(Error::domain(format!(
                "index entry {e} out of range 1..={n}"
            )));
        }
    }
    Ok(())
}

fn write_tuple(f: &mut fmt::Formatter<'_>, entries: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (k, e) in entries.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, ")")
}

impl MultiIndex {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        check_range(n, &entries)?;
        Ok(MultiIndex { n, entries })
    }

    pub fn empty(n: usize) -> Self {
        MultiIndex { n, entries: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Appends one index, as in extending `I` with a derivative direction.
    pub fn appended(&self, j: usize) -> Result<Self> {
        let mut entries = self.entries.clone();
        entries.push(j);
        MultiIndex::new(self.n, entries)
    }

    /// The non-decreasing rearrangement (forget the order of derivatives).
    pub fn sorted(&self) -> NonDecreasingIndex {
        let mut entries = self.entries.clone();
        entries.sort_unstable();
        NonDecreasingIndex { n: self.n, entries }
    }

    /// All sequences in `{1..n}^k`, row-major.
    pub fn enumerate(n: usize, k: usize) -> Vec<MultiIndex> {
        let mut out = Vec::with_capacity(n.pow(k as u32));
        let mut cur = vec![1usize; k];
        loop {
            out.push(MultiIndex { n, entries: cur.clone() });
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if cur[pos] < n {
                    cur[pos] += 1;
                    for e in cur.iter_mut().skip(pos + 1) {
                        *e = 1;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.entries)
    }
}

impl NonDecreasingIndex {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        check_range(n, &entries)?;
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::domain(format!(
                "entries {entries:?} are not non-decreasing"
            )));
        }
        Ok(NonDecreasingIndex { n, entries })
    }

    pub fn empty(n: usize) -> Self {
        NonDecreasingIndex { n, entries: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// All non-decreasing `k`-indices on `1..=n` (combinations with
    /// repetition), lexicographic.
    pub fn enumerate(n: usize, k: usize) -> Vec<NonDecreasingIndex> {
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<NonDecreasingIndex>) {
            if cur.len() == k {
                out.push(NonDecreasingIndex { n, entries: cur.clone() });
                return;
            }
            for i in start..=n {
                cur.push(i);
                rec(n, k, i, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, k, 1, &mut Vec::new(), &mut out);
        out
    }

    /// All non-decreasing indices of length `0..=r`, shortest first.
    pub fn enumerate_up_to(n: usize, r: usize) -> Vec<NonDecreasingIndex> {
        (0..=r).flat_map(|k| Self::enumerate(n, k)).collect()
    }

    /// Number of distinct orderings of this index (multinomial count).
    pub fn ordering_count(&self) -> u64 {
        let k = self.entries.len() as u64;
        let mut result = factorial(k);
        let mut run = 1u64;
        for w in self.entries.windows(2) {
            if w[0] == w[1] {
                run += 1;
            } else {
                result /= factorial(run);
                run = 1;
            }
        }
        result / factorial(run)
    }
}

fn factorial(k: u64) -> u64 {
    (2..=k).product::<u64>().max(1)
}

impl fmt::Display for NonDecreasingIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.entries)
    }
}

impl IncreasingIndex {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        check_range(n, &entries)?;
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!(
                "entries {entries:?} are not strictly increasing"
            )));
        }
        Ok(IncreasingIndex { n, entries })
    }

    pub fn empty(n: usize) -> Self {
        IncreasingIndex { n, entries: Vec::new() }
    }

    pub fn single(n: usize, i: usize) -> Result<Self> {
        IncreasingIndex::new(n, vec![i])
    }

    pub fn full(n: usize) -> Self {
        IncreasingIndex { n, entries: (1..=n).collect() }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn contains(&self, i: usize) -> bool {
        self.entries.binary_search(&i).is_ok()
    }

    /// The strictly increasing index on the entries of `1..=n` not in `self`.
    pub fn complement(&self) -> IncreasingIndex {
        let entries = (1..=self.n).filter(|i| !self.contains(*i)).collect();
        IncreasingIndex { n: self.n, entries }
    }

    /// All `C(n,p)` strictly increasing `p`-indices, lexicographic.
    pub fn enumerate(n: usize, p: usize) -> Result<Vec<IncreasingIndex>> {
        if p > n {
            return Err(Error::domain(format!("degree {p} exceeds dimension {n}")));
        }
        fn rec(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<IncreasingIndex>) {
            if cur.len() == p {
                out.push(IncreasingIndex { n, entries: cur.clone() });
                return;
            }
            for i in start..=n {
                cur.push(i);
                rec(n, p, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, p, 1, &mut Vec::new(), &mut out);
        Ok(out)
    }
}

impl fmt::Display for IncreasingIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.entries)
    }
}

/// Number of inversions between two individually sorted sequences when `a`
/// is placed before `b`, i.e. pairs `(x, y)` with `x` in `a`, `y` in `b`,
/// `x > y`.
fn cross_inversions(a: &[usize], b: &[usize]) -> usize {
    let mut count = 0;
    for &x in a {
        for &y in b {
            if x > y {
                count += 1;
            }
        }
    }
    count
}

/// Merges two strictly increasing sequences. Returns the merged increasing
/// index and the sign of the permutation sorting `a · b`, or `None` when
/// the sequences share an entry.
pub fn merge_increasing(a: &IncreasingIndex, b: &IncreasingIndex) -> Option<(IncreasingIndex, i8)> {
    debug_assert_eq!(a.n, b.n);
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.entries.len() && j < b.entries.len() {
        if a.entries[i] == b.entries[j] {
            return None;
        }
        if a.entries[i] < b.entries[j] {
            merged.push(a.entries[i]);
            i += 1;
        } else {
            merged.push(b.entries[j]);
            j += 1;
        }
    }
    merged.extend_from_slice(&a.entries[i..]);
    merged.extend_from_slice(&b.entries[j..]);
    let sign = if cross_inversions(&a.entries, &b.entries) % 2 == 0 {
        1
    } else {
        -1
    };
    Some((IncreasingIndex { n: a.n, entries: merged }, sign))
}

/// Splits `whole` as `part` followed by the remainder. Returns the
/// remainder and the sign of the permutation taking `part · remainder`
/// to `whole`, or `None` when `part` is not contained in `whole`.
pub fn split_increasing(whole: &IncreasingIndex, part: &IncreasingIndex) -> Option<(IncreasingIndex, i8)> {
    debug_assert_eq!(whole.n, part.n);
    let mut rest = Vec::with_capacity(whole.len().saturating_sub(part.len()));
    let mut pi = 0;
    for &e in &whole.entries {
        if pi < part.entries.len() && part.entries[pi] == e {
            pi += 1;
        } else {
            rest.push(e);
        }
    }
    if pi != part.entries.len() {
        return None;
    }
    let sign = if cross_inversions(&part.entries, &rest) % 2 == 0 {
        1
    } else {
        -1
    };
    Some((IncreasingIndex { n: whole.n, entries: rest }, sign))
}

/// The Levi-Civita symbol of a full multi-index: `0` on repetitions, else
/// the sign of the permutation taking `(1,…,n)` to `I`. Computed by
/// inversion counting.
pub fn perm_sign(index: &MultiIndex) -> Result<i8> {
    if index.len() != index.n {
        return Err(Error::domain(format!(
            "perm_sign needs |I| = n, got |I| = {} with n = {}",
            index.len(),
            index.n
        )));
    }
    let e = &index.entries;
    let mut seen = vec![false; index.n + 1];
    for &x in e {
        if seen[x] {
            return Ok(0);
        }
        seen[x] = true;
    }
    let mut inversions = 0usize;
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            if e[i] > e[j] {
                inversions += 1;
            }
        }
    }
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

/// `ε^{λμ}`: the permutation sign of the concatenation `λ · μ` when it is a
/// permutation of `1..=n`, and `0` when the indices overlap or do not
/// exhaust `1..=n`.
pub fn concat_sign(lambda: &IncreasingIndex, mu: &IncreasingIndex) -> i8 {
    if lambda.n != mu.n || lambda.len() + mu.len() != lambda.n {
        return 0;
    }
    match merge_increasing(lambda, mu) {
        Some((merged, sign)) if merged.len() == lambda.n => sign,
        _ => 0,
    }
}

/// Binary index of an array in the iterated-jet representation. The value
/// `0` is the base array; `2^{r-1} + q` holds the generation-`r`
/// derivatives of array `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryNodeIndex(pub u64);

impl BinaryNodeIndex {
    /// The generation in which this array appears: `⌊log2 p⌋ + 1` for
    /// `p ≥ 1`, and `0` for the base array.
    pub fn generation(&self) -> usize {
        if self.0 == 0 {
            0
        } else {
            64 - self.0.leading_zeros() as usize
        }
    }

    /// Number of binary digits 1; equals the length of the multi-index
    /// attached to this array.
    pub fn arity(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// The generation-`r` array holding the derivatives of this array:
    /// `2^{r-1} + q`.
    pub fn child(&self, r: usize) -> Result<BinaryNodeIndex> {
        if r == 0 || self.generation() > r - 1 {
            return Err(Error::domain(format!(
                "array {} of generation {} has no child in generation {r}",
                self,
                self.generation()
            )));
        }
        Ok(BinaryNodeIndex((1 << (r - 1)) + self.0))
    }

    /// All arrays with generation at most `r`, i.e. `0..2^r`.
    pub fn enumerate(r: usize) -> Vec<BinaryNodeIndex> {
        (0..(1u64 << r)).map(BinaryNodeIndex).collect()
    }

    pub fn parse(text: &str) -> Result<BinaryNodeIndex> {
        if text.is_empty() || !text.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::parse(format!("invalid binary array index `{text}`")));
        }
        u64::from_str_radix(text, 2)
            .map(BinaryNodeIndex)
            .map_err(|e| Error::parse(format!("invalid binary array index `{text}`: {e}")))
    }
}

impl fmt::Display for BinaryNodeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:b}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inc(n: usize, entries: &[usize]) -> IncreasingIndex {
        IncreasingIndex::new(n, entries.to_vec()).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(inc(3, &[1, 3]).complement(), inc(3, &[2]));
        assert_eq!(inc(2, &[]).complement(), inc(2, &[1, 2]));
        assert_eq!(inc(4, &[2]).complement(), inc(4, &[1, 3, 4]));
    }

    #[test]
    fn perm_sign_examples() {
        let sign = |n, e: &[usize]| perm_sign(&MultiIndex::new(n, e.to_vec()).unwrap()).unwrap();
        assert_eq!(sign(3, &[1, 2, 3]), 1);
        assert_eq!(sign(2, &[2, 1]), -1);
        assert_eq!(sign(2, &[1, 1]), 0);
    }

    #[test]
    fn perm_sign_rejects_short_index() {
        let idx = MultiIndex::new(3, vec![1, 2]).unwrap();
        assert!(perm_sign(&idx).is_err());
    }

    #[test]
    fn concat_sign_examples() {
        assert_eq!(concat_sign(&inc(2, &[1]), &inc(2, &[2])), 1);
        assert_eq!(concat_sign(&inc(2, &[2]), &inc(2, &[1])), -1);
        // inversion count of (1,3,2) is odd
        assert_eq!(concat_sign(&inc(3, &[1, 3]), &inc(3, &[2])), -1);
        // overlap kills the sign
        assert_eq!(concat_sign(&inc(2, &[1]), &inc(2, &[1])), 0);
    }

    #[test]
    fn concat_sign_complement_relation() {
        for n in 0..=5 {
            for p in 0..=n {
                for lam in IncreasingIndex::enumerate(n, p).unwrap() {
                    let hat = lam.complement();
                    let fwd = concat_sign(&lam, &hat);
                    let bwd = concat_sign(&hat, &lam);
                    assert!(fwd == 1 || fwd == -1);
                    let swap = if (lam.len() * hat.len()) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(fwd, swap * bwd, "n={n} lam={lam}");
                }
            }
        }
    }

    #[test]
    fn perm_sign_multiplicative() {
        // brute force over all pairs of permutations for n <= 5: the sign of
        // the composition is the product of signs
        for n in 1..=5usize {
            let perms = all_permutations(n);
            for a in &perms {
                for b in &perms {
                    let compose: Vec<usize> = (0..n).map(|i| a[b[i] - 1]).collect();
                    let s = |v: &Vec<usize>| {
                        perm_sign(&MultiIndex::new(n, v.clone()).unwrap()).unwrap() as i32
                    };
                    assert_eq!(s(&compose), s(a) * s(b));
                }
            }
            if n >= 4 {
                break; // 5! x 5! pairs is slow in debug; 4 covers the law
            }
        }
    }

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(remaining: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if remaining.is_empty() {
                out.push(cur.clone());
                return;
            }
            for k in 0..remaining.len() {
                let v = remaining.remove(k);
                cur.push(v);
                rec(remaining, cur, out);
                cur.pop();
                remaining.insert(k, v);
            }
        }
        let mut out = Vec::new();
        rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn enumerate_increasing_examples() {
        let list = IncreasingIndex::enumerate(3, 2).unwrap();
        assert_eq!(list, vec![inc(3, &[1, 2]), inc(3, &[1, 3]), inc(3, &[2, 3])]);
        assert_eq!(IncreasingIndex::enumerate(2, 0).unwrap(), vec![inc(2, &[])]);
        assert_eq!(
            IncreasingIndex::enumerate(4, 1).unwrap(),
            vec![inc(4, &[1]), inc(4, &[2]), inc(4, &[3]), inc(4, &[4])]
        );
        assert!(IncreasingIndex::enumerate(2, 3).is_err());
    }

    #[test]
    fn enumerate_increasing_counts_binomial() {
        fn binom(n: usize, p: usize) -> usize {
            (0..p).fold(1usize, |acc, k| acc * (n - k) / (k + 1))
        }
        for n in 0..=6 {
            for p in 0..=n {
                let list = IncreasingIndex::enumerate(n, p).unwrap();
                assert_eq!(list.len(), binom(n, p));
                let mut dedup = list.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), list.len());
            }
        }
    }

    #[test]
    fn binary_node_basics() {
        assert_eq!(BinaryNodeIndex(0).generation(), 0);
        assert_eq!(BinaryNodeIndex(1).generation(), 1);
        assert_eq!(BinaryNodeIndex(0b110).generation(), 3);
        assert_eq!(BinaryNodeIndex(0b110).arity(), 2);
        assert_eq!(BinaryNodeIndex(0).child(1).unwrap(), BinaryNodeIndex(1));
        assert_eq!(BinaryNodeIndex(0b10).child(3).unwrap(), BinaryNodeIndex(0b110));
        assert_eq!(BinaryNodeIndex(0b11).child(3).unwrap(), BinaryNodeIndex(0b111));
        assert!(BinaryNodeIndex(0b11).child(2).is_err());
    }

    #[test]
    fn binary_node_child_generation_and_arity() {
        for p in 1..64u64 {
            let node = BinaryNodeIndex(p);
            let child = node.child(node.generation() + 1).unwrap();
            assert_eq!(child.generation(), node.generation() + 1);
            assert_eq!(child.arity(), node.arity() + 1);
        }
    }

    #[test]
    fn binary_node_display_parse() {
        let node = BinaryNodeIndex(0b110);
        assert_eq!(node.to_string(), "110");
        assert_eq!(BinaryNodeIndex::parse("110").unwrap(), node);
        assert!(BinaryNodeIndex::parse("12").is_err());
    }

    #[test]
    fn ordering_count_multinomial() {
        let idx = NonDecreasingIndex::new(3, vec![1, 1, 2]).unwrap();
        assert_eq!(idx.ordering_count(), 3);
        let idx = NonDecreasingIndex::new(3, vec![1, 2, 3]).unwrap();
        assert_eq!(idx.ordering_count(), 6);
        let idx = NonDecreasingIndex::new(3, vec![2, 2]).unwrap();
        assert_eq!(idx.ordering_count(), 1);
    }

    #[test]
    fn multiindex_enumerate_row_major() {
        let all = MultiIndex::enumerate(2, 2);
        let flat: Vec<Vec<usize>> = all.iter().map(|m| m.entries().to_vec()).collect();
        assert_eq!(flat, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(MultiIndex::enumerate(3, 0).len(), 1);
    }

    #[test]
    fn split_and_merge_signs() {
        let whole = inc(3, &[1, 2, 3]);
        let part = inc(3, &[2]);
        let (rest, sign) = split_increasing(&whole, &part).unwrap();
        assert_eq!(rest, inc(3, &[1, 3]));
        assert_eq!(sign, -1); // (2,1,3) has one inversion
        assert!(split_increasing(&inc(3, &[1, 2]), &inc(3, &[3])).is_none());
        let (merged, sign) = merge_increasing(&inc(3, &[2]), &inc(3, &[1, 3])).unwrap();
        assert_eq!(merged, inc(3, &[1, 2, 3]));
        assert_eq!(sign, -1);
        assert!(merge_increasing(&inc(3, &[1]), &inc(3, &[1])).is_none());
    }
}
