use gramcalc::oracles::enumerate;
use gramcalc::{compute_case_triangle, find_case, Method, Oracle};
use itertools::Itertools;
use num_bigint::BigInt;

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn double_factorial_odd(n: usize) -> BigInt {
    (1..=n).map(|i| BigInt::from(2 * i - 1)).product()
}

fn row(oracle: Oracle, method: Method, n: usize) -> Vec<BigInt> {
    oracle
        .row(method, n)
        .unwrap_or_else(|e| panic!("{oracle}/{} n={n}: {e}", method.name()))
}

fn default_row(oracle: Oracle, n: usize) -> Vec<BigInt> {
    row(oracle, oracle.default_method(), n)
}

fn sum(v: &[BigInt]) -> BigInt {
    v.iter().sum()
}

fn is_palindrome(v: &[BigInt]) -> bool {
    v.iter().eq(v.iter().rev())
}

fn ints(v: &[u64]) -> Vec<BigInt> {
    v.iter().copied().map(BigInt::from).collect()
}

#[test]
fn every_method_agrees_with_the_default_up_to_its_cap() {
    let oracles = [
        Oracle::Eulerian,
        Oracle::SecondOrderEulerian,
        Oracle::TypeB,
        Oracle::Restricted { r: 2 },
        Oracle::Matchings,
        Oracle::InteriorPeaks,
        Oracle::LeftPeaks,
    ];
    for oracle in oracles {
        let default = oracle.default_method();
        for &method in oracle.methods() {
            for n in oracle.min_n().max(1)..=oracle.cap(method).unwrap() {
                assert_eq!(
                    row(oracle, method, n),
                    row(oracle, default, n),
                    "{oracle}/{} n={n}",
                    method.name()
                );
            }
        }
    }
}

#[test]
fn eulerian_rows_sum_to_factorials_and_are_symmetric() {
    for n in 1..=20 {
        let r = default_row(Oracle::Eulerian, n);
        assert_eq!(r.len(), n);
        assert_eq!(sum(&r), factorial(n));
        assert!(is_palindrome(&r));
        assert_eq!(r[0], BigInt::from(1));
    }
}

#[test]
fn second_order_rows_sum_to_double_factorials() {
    for n in 1..=20 {
        let r = default_row(Oracle::SecondOrderEulerian, n);
        assert_eq!(r.len(), n);
        assert_eq!(sum(&r), double_factorial_odd(n));
        assert_eq!(r[0], BigInt::from(1));
        assert_eq!(r[n - 1], factorial(n));
    }
}

#[test]
fn type_b_rows_sum_to_signed_permutation_counts_and_are_symmetric() {
    for n in 0..=20 {
        let r = default_row(Oracle::TypeB, n);
        assert_eq!(r.len(), n + 1);
        assert_eq!(sum(&r), BigInt::from(2).pow(n as u32) * factorial(n));
        assert!(is_palindrome(&r));
    }
}

#[test]
fn enumerative_row_sums() {
    for n in 1..=6 {
        assert_eq!(sum(&default_row(Oracle::Matchings, n)), double_factorial_odd(n));
    }
    for n in 1..=8 {
        assert_eq!(sum(&default_row(Oracle::InteriorPeaks, n)), factorial(n));
        assert_eq!(sum(&default_row(Oracle::LeftPeaks, n)), factorial(n));
    }
    for r in 0..=3 {
        for n in r.max(1)..=7 {
            assert_eq!(
                sum(&default_row(Oracle::Restricted { r }, n)),
                factorial(n) / factorial(r),
                "r={r} n={n}"
            );
        }
    }
}

#[test]
fn restricted_with_r_zero_is_eulerian_with_a_trailing_zero() {
    for n in 1..=7 {
        let mut expected = default_row(Oracle::Eulerian, n);
        expected.push(BigInt::from(0));
        assert_eq!(default_row(Oracle::Restricted { r: 0 }, n), expected);
    }
}

#[test]
fn stirling_first_kind_counts_cycles() {
    for n in 1..=7 {
        let mut counts = vec![0u64; n];
        for p in (0..n).permutations(n) {
            let mut seen = vec![false; n];
            let mut cycles = 0;
            for start in 0..n {
                if !seen[start] {
                    cycles += 1;
                    let mut i = start;
                    while !seen[i] {
                        seen[i] = true;
                        i = p[i];
                    }
                }
            }
            counts[cycles - 1] += 1;
        }
        assert_eq!(default_row(Oracle::StirlingFirst, n), ints(&counts), "n={n}");
    }
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![Vec::new()], |acc, i| {
        acc.into_iter()
            .flat_map(|rgs: Vec<usize>| {
                let top = rgs.iter().copied().max().map_or(0, |m| m + 1);
                (0..=top.min(i)).map(move |b| [rgs.clone(), vec![b]].concat())
            })
            .collect()
    })
}

#[test]
fn stirling_second_kind_and_lah_count_partitions() {
    for n in 1..=7 {
        let mut blocks = vec![0u64; n];
        let mut ordered = vec![BigInt::from(0); n];
        for rgs in set_partitions(n) {
            let k = rgs.iter().max().unwrap() + 1;
            blocks[k - 1] += 1;
            let orders: BigInt = (0..k)
                .map(|b| factorial(rgs.iter().filter(|&&x| x == b).count()))
                .product();
            ordered[k - 1] += orders;
        }
        assert_eq!(default_row(Oracle::StirlingSecond, n), ints(&blocks), "n={n}");
        assert_eq!(default_row(Oracle::Lah, n), ordered, "n={n}");
    }
}

#[test]
fn forest_at_r_two_is_lah() {
    for n in 1..=10 {
        assert_eq!(
            default_row(Oracle::Forest { r: 2 }, n),
            default_row(Oracle::Lah, n),
            "n={n}"
        );
    }
}

#[test]
fn mobile_boundaries() {
    for n in 1..=15 {
        let r = default_row(Oracle::Mobile, n);
        assert_eq!(r.len(), n);
        assert_eq!(r[0], BigInt::from(1));
        assert_eq!(r[n - 1], factorial(n - 1));
    }
}

#[test]
fn stirling_permutations_have_the_expected_count() {
    for n in 1..=6 {
        let perms = enumerate::stirling_permutations(n);
        assert_eq!(BigInt::from(perms.len()), double_factorial_odd(n));
        assert!(perms.iter().all(|p| enumerate::is_stirling_permutation(p)));
    }
}

#[test]
fn oracle_domain_and_cap_errors() {
    assert!(Oracle::Eulerian.row(Method::Enumeration, 9).is_err());
    assert!(Oracle::Lah.row(Method::Enumeration, 3).is_err());
    assert!(Oracle::Forest { r: 1 }.row(Method::Bell, 3).is_err());
    assert!(Oracle::Restricted { r: 3 }.row(Method::Enumeration, 2).is_err());
    assert!(Oracle::from_name("restricted", None).is_err());
    assert!(Oracle::from_name("nope", None).is_err());
}

#[test]
fn c4_at_r_zero_is_the_eulerian_case() {
    let c4 = compute_case_triangle(find_case("c4", Some(0)).unwrap(), 5).unwrap();
    let p2 = compute_case_triangle(find_case("P2", None).unwrap(), 5).unwrap();
    for n in 1..=5 {
        for k in 0..=n as i64 {
            assert_eq!(c4.get(n, k), p2.get(n, k), "n={n} k={k}");
        }
    }
}
