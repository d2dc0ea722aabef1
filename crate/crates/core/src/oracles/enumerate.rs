//! Brute-force counts obtained by walking every object of a combinatorial family.
//!
//! Each function returns a histogram indexed by the statistic value (starting at 0)
//! and is independent of the grammar engine and of the recurrences.

use itertools::Itertools;

fn histogram(len: usize, values: impl Iterator<Item = usize>) -> Vec<u64> {
    let mut h = vec![0u64; len];
    for v in values {
        h[v] += 1;
    }
    h
}

fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=n).permutations(n)
}

pub fn descents(p: &[usize]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Positions `i` (1-based) with `p(i) > i`.
pub fn excedances(p: &[usize]) -> usize {
    p.iter().enumerate().filter(|&(i, &v)| v > i + 1).count()
}

/// Permutations of `[n]` by number of descents; index 0..n.
pub fn eulerian_by_descents(n: usize) -> Vec<u64> {
    histogram(n.max(1), permutations(n).map(|p| descents(&p)))
}

/// Permutations of `[n]` by number of excedances; index 0..n.
pub fn eulerian_by_excedances(n: usize) -> Vec<u64> {
    histogram(n.max(1), permutations(n).map(|p| excedances(&p)))
}

/// Whether every entry between the two copies of `i` exceeds `i`, for every `i`.
pub fn is_stirling_permutation(word: &[usize]) -> bool {
    let n = word.len() / 2;
    if word.len() != 2 * n {
        return false;
    }
    (1..=n).all(|i| {
        let at: Vec<usize> = word.iter().positions(|&v| v == i).collect();
        at.len() == 2 && word[at[0] + 1..at[1]].iter().all(|&v| v > i)
    })
}

/// All Stirling permutations of order `n`, generated letter by letter.
///
/// A value may be placed only while every other currently open value (first
/// copy placed, second not yet) is smaller than it; this is exactly the
/// nesting condition, so every completed word satisfies the definition.
pub fn stirling_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, placed: &mut [u8], word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if word.len() == 2 * n {
            out.push(word.clone());
            return;
        }
        for v in 1..=n {
            if placed[v] == 2 {
                continue;
            }
            let blocked = (v + 1..=n).any(|w| placed[w] == 1);
            if blocked {
                continue;
            }
            placed[v] += 1;
            word.push(v);
            go(n, placed, word, out);
            word.pop();
            placed[v] -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, &mut vec![0; n + 1], &mut Vec::with_capacity(2 * n), &mut out);
    out
}

pub fn ascents(word: &[usize]) -> usize {
    word.windows(2).filter(|w| w[0] < w[1]).count()
}

/// Stirling permutations of order `n` by number of ascents; index 0..n.
pub fn second_order_by_ascents(n: usize) -> Vec<u64> {
    histogram(n.max(1), stirling_permutations(n).iter().map(|w| ascents(w)))
}

/// `des_B` with the convention `π(0) = 0`.
pub fn type_b_descents(signed: &[i64]) -> usize {
    std::iter::once(0)
        .chain(signed.iter().copied())
        .tuple_windows()
        .filter(|(a, b)| a > b)
        .count()
}

/// Signed permutations of `[n]` by type-B descents; index 0..=n.
pub fn type_b_by_descents(n: usize) -> Vec<u64> {
    let mut h = vec![0u64; n + 1];
    for p in permutations(n) {
        for mask in 0u32..(1 << n) {
            let signed: Vec<i64> = p
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> i & 1 == 1 { -(v as i64) } else { v as i64 })
                .collect();
            h[type_b_descents(&signed)] += 1;
        }
    }
    h
}

/// Injections `[n - r] → [n]` by excedances at positions `1..=n-r`; index 0..=n-r.
pub fn restricted_by_excedances(n: usize, r: usize) -> Vec<u64> {
    assert!(r <= n);
    let len = n - r;
    histogram(len + 1, (1..=n).permutations(len).map(|s| excedances(&s)))
}

/// Perfect matchings of `[2n]`, each as a list of pairs `(a, b)` with `a < b`.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(acc.clone());
            return;
        };
        for (j, &partner) in rest.iter().enumerate() {
            let remaining: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &v)| v)
                .collect();
            acc.push((first, partner));
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let free: Vec<usize> = (1..=2 * n).collect();
    let mut out = Vec::new();
    go(&free, &mut Vec::new(), &mut out);
    out
}

/// Matchings of `[2n]` by the number of pairs whose smaller entry is odd; index 0..=n.
pub fn matchings_by_odd_smaller(n: usize) -> Vec<u64> {
    histogram(
        n + 1,
        perfect_matchings(n)
            .iter()
            .map(|m| m.iter().filter(|&&(a, b)| a.min(b) % 2 == 1).count()),
    )
}

/// Positions `1 < i < n` with `p(i-1) < p(i) > p(i+1)`.
pub fn interior_peaks(p: &[usize]) -> usize {
    p.windows(3).filter(|w| w[0] < w[1] && w[1] > w[2]).count()
}

/// Positions `1 <= i < n` with `p(i-1) < p(i) > p(i+1)`, where `p(0) = 0`.
pub fn left_peaks(p: &[usize]) -> usize {
    std::iter::once(0)
        .chain(p.iter().copied())
        .tuple_windows()
        .filter(|&(a, b, c)| a < b && b > c)
        .count()
}

/// Permutations of `[n]` by interior peaks; index 0..=(n-1)/2.
pub fn interior_peak_counts(n: usize) -> Vec<u64> {
    histogram(
        n.saturating_sub(1) / 2 + 1,
        permutations(n).map(|p| interior_peaks(&p)),
    )
}

/// Permutations of `[n]` by left peaks; index 0..=n/2.
pub fn left_peak_counts(n: usize) -> Vec<u64> {
    histogram(n / 2 + 1, permutations(n).map(|p| left_peaks(&p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eulerian_small_rows() {
        assert_eq!(eulerian_by_descents(1), vec![1]);
        assert_eq!(eulerian_by_descents(3), vec![1, 4, 1]);
        assert_eq!(eulerian_by_descents(4), vec![1, 11, 11, 1]);
        assert_eq!(eulerian_by_excedances(4), vec![1, 11, 11, 1]);
    }

    #[test]
    fn stirling_permutations_satisfy_definition() {
        assert_eq!(stirling_permutations(1), vec![vec![1, 1]]);
        assert_eq!(
            stirling_permutations(2),
            vec![vec![1, 1, 2, 2], vec![1, 2, 2, 1], vec![2, 2, 1, 1]]
        );
        for n in 1..=5 {
            let all = stirling_permutations(n);
            assert!(all.iter().all(|w| is_stirling_permutation(w)));
            let double_factorial: usize = (1..=n).map(|i| 2 * i - 1).product();
            assert_eq!(all.len(), double_factorial);
        }
    }

    #[test]
    fn stirling_permutations_match_filtered_multiset_permutations() {
        for n in 1..=4 {
            let base: Vec<usize> = (1..=n).flat_map(|i| [i, i]).collect();
            let mut filtered: Vec<Vec<usize>> = base
                .iter()
                .copied()
                .permutations(2 * n)
                .filter(|w| is_stirling_permutation(w))
                .collect();
            filtered.sort();
            filtered.dedup();
            let mut generated = stirling_permutations(n);
            generated.sort();
            assert_eq!(generated, filtered, "order {n}");
        }
    }

    #[test]
    fn second_order_small_rows() {
        assert_eq!(second_order_by_ascents(1), vec![1]);
        assert_eq!(second_order_by_ascents(2), vec![1, 2]);
        assert_eq!(second_order_by_ascents(3), vec![1, 8, 6]);
    }

    #[test]
    fn type_b_small_rows() {
        assert_eq!(type_b_by_descents(0), vec![1]);
        assert_eq!(type_b_by_descents(1), vec![1, 1]);
        assert_eq!(type_b_by_descents(2), vec![1, 6, 1]);
        assert_eq!(type_b_by_descents(3), vec![1, 23, 23, 1]);
    }

    #[test]
    fn restricted_small_rows() {
        assert_eq!(restricted_by_excedances(3, 0), vec![1, 4, 1, 0]);
        assert_eq!(restricted_by_excedances(2, 1), vec![1, 1]);
        for n in 0..=4 {
            assert_eq!(restricted_by_excedances(n, n), vec![1]);
        }
    }

    #[test]
    fn matchings_of_four_points() {
        let all = perfect_matchings(2);
        assert_eq!(all.len(), 3);
        // {12|34} has two odd smaller entries, {13|24} and {14|23} have one each
        assert_eq!(matchings_by_odd_smaller(2), vec![0, 2, 1]);
        assert_eq!(matchings_by_odd_smaller(1), vec![0, 1]);
        assert_eq!(matchings_by_odd_smaller(4).iter().sum::<u64>(), 105);
    }

    #[test]
    fn peak_rows_small() {
        assert_eq!(interior_peak_counts(2), vec![2]);
        assert_eq!(left_peak_counts(2), vec![1, 1]);
        assert_eq!(interior_peak_counts(3), vec![4, 2]);
        assert_eq!(left_peak_counts(3), vec![1, 5]);
    }
}
