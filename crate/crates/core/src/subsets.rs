//! Lexicographic enumeration of 1-based `k`-subsets of `{1, ..., n}`.

pub(crate) struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

pub(crate) fn k_subsets(n: usize, k: usize) -> KSubsets {
    let current = if k <= n { Some((1..=k).collect()) } else { None };
    KSubsets { n, current }
}

impl Iterator for KSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - (k - 1 - i) {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}
