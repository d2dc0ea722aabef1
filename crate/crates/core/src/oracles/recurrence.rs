//! Triangles computed from their classical recurrences or explicit formulas.

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

/// Builds rows `0..=n` of a triangle from `row(0)` and a step `next(m, prev) -> row(m)`.
fn unroll(n: usize, first: Vec<BigInt>, next: impl Fn(usize, &[BigInt]) -> Vec<BigInt>) -> Vec<BigInt> {
    let mut row = first;
    for m in 1..=n {
        row = next(m, &row);
    }
    row
}

fn at(row: &[BigInt], k: isize) -> BigInt {
    if k < 0 {
        BigInt::zero()
    } else {
        row.get(k as usize).cloned().unwrap_or_default()
    }
}

/// `A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)` from `A(0,0) = 1`; entries `k = 0..=n`.
pub fn eulerian(n: usize) -> Vec<BigInt> {
    unroll(n, vec![BigInt::one()], |m, prev| {
        (0..=m)
            .map(|k| big(k + 1) * at(prev, k as isize) + big(m - k) * at(prev, k as isize - 1))
            .collect()
    })
}

/// `E(m+1,k) = (2m-k+1)E(m,k-1) + (k+1)E(m,k)` from `E(1,0) = 1`; entries `k = 0..n`.
pub fn second_order_eulerian(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut row = vec![BigInt::one()];
    for m in 1..n {
        row = (0..=m)
            .map(|k| {
                // 2m - k + 1 >= 1 for k <= m
                big(2 * m + 1 - k) * at(&row, k as isize - 1) + big(k + 1) * at(&row, k as isize)
            })
            .collect();
    }
    row
}

/// `B(m+1,k) = (2m-2k+3)B(m,k-1) + (2k+1)B(m,k)` from `B(0,0) = 1`; entries `k = 0..=n`.
pub fn type_b(n: usize) -> Vec<BigInt> {
    unroll(n, vec![BigInt::one()], |m, prev| {
        let m = m - 1;
        (0..=m + 1)
            .map(|k| {
                let left = BigInt::from(2 * m as i64 - 2 * k as i64 + 3);
                left * at(prev, k as isize - 1) + big(2 * k + 1) * at(prev, k as isize)
            })
            .collect()
    })
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

/// `B(n,k) = Σ_{i=0..k} (-1)^i C(n+1,i) (2k-2i+1)^n`; entries `k = 0..=n`.
pub fn type_b_explicit(n: usize) -> Vec<BigInt> {
    (0..=n)
        .map(|k| {
            (0..=k).fold(BigInt::zero(), |acc, i| {
                let term = binomial(n + 1, i) * num_traits::pow(big(2 * k - 2 * i + 1), n);
                if i % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Unsigned Stirling numbers of the first kind, `c(n,k) = c(n-1,k-1) + (n-1)c(n-1,k)`;
/// entries `k = 0..=n`.
pub fn stirling_first(n: usize) -> Vec<BigInt> {
    unroll(n, vec![BigInt::one()], |m, prev| {
        (0..=m)
            .map(|k| at(prev, k as isize - 1) + big(m - 1) * at(prev, k as isize))
            .collect()
    })
}

/// `S(n,k) = S(n-1,k-1) + k·S(n-1,k)`; entries `k = 0..=n`.
pub fn stirling_second(n: usize) -> Vec<BigInt> {
    unroll(n, vec![BigInt::one()], |m, prev| {
        (0..=m)
            .map(|k| at(prev, k as isize - 1) + big(k) * at(prev, k as isize))
            .collect()
    })
}

/// Unsigned Lah numbers, `L(n,k) = L(n-1,k-1) + (n-1+k)L(n-1,k)`; entries `k = 0..=n`.
pub fn lah(n: usize) -> Vec<BigInt> {
    unroll(n, vec![BigInt::one()], |m, prev| {
        (0..=m)
            .map(|k| at(prev, k as isize - 1) + big(m - 1 + k) * at(prev, k as isize))
            .collect()
    })
}

/// Number of plane increasing `r`-ary trees on `m` vertices: `∏_{j=1}^{m-1} ((r-1)j + 1)`.
pub fn increasing_tree_count(m: usize, r: usize) -> BigInt {
    (1..m).map(|j| big((r - 1) * j + 1)).product()
}

/// Forests of `k` increasing `r`-ary trees on `n` labelled vertices, through the
/// partial Bell recurrence `a(n,k) = Σ_m C(n-1,m-1)·t_m·a(n-m,k-1)`; entries `k = 0..=n`.
pub fn forest(n: usize, r: usize) -> Vec<BigInt> {
    let trees: Vec<BigInt> = (0..=n).map(|m| increasing_tree_count(m, r)).collect();
    // table[j][k] = a(j, k)
    let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
    table[0][0] = BigInt::one();
    for j in 1..=n {
        for k in 1..=j {
            let mut acc = BigInt::zero();
            for m in 1..=j - k + 1 {
                acc += binomial(j - 1, m - 1) * &trees[m] * &table[j - m][k - 1];
            }
            table[j][k] = acc;
        }
    }
    table.swap_remove(n)
}

/// `d(m+1,k) = m·d(m,k-1) + k·d(m,k)` from `d(1,1) = 1`; entries `k = 0..=n`.
pub fn mobile(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut row = vec![BigInt::zero(), BigInt::one()];
    for m in 1..n {
        row = (0..=m + 1)
            .map(|k| big(m) * at(&row, k as isize - 1) + big(k) * at(&row, k as isize))
            .collect();
    }
    row
}
