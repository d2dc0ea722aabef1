#![allow(dead_code)]

use gramcalc::oracles::OracleBinding;
use gramcalc::poly::letter;
use gramcalc::verify::{OracleSource, StandardOracles};
use gramcalc::{extract_row, CaseSpec, Grammar, Monomial, OracleError, Polynomial};
use num_bigint::BigInt;
use proptest::prelude::*;

pub const LETTERS: [&str; 3] = ["x", "y", "z"];

pub fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..=2, 3).prop_filter_map("degree <= 4", |exps| {
        (exps.iter().sum::<u32>() <= 4)
            .then(|| Monomial::from_pairs(LETTERS.iter().zip(exps).map(|(l, e)| (letter(l), e))))
    })
}

pub fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), -9i64..=9), 0..5)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

pub fn grammar() -> impl Strategy<Value = Grammar> {
    prop::collection::vec(polynomial(), 3)
        .prop_map(|rules| Grammar::new(LETTERS.iter().map(|l| letter(l)).zip(rules)).expect("three rules"))
}

/// Standard oracles with one entry of one row bumped by one.
pub struct Perturbed {
    pub binding: OracleBinding,
    pub n: usize,
    pub index: usize,
}

impl OracleSource for Perturbed {
    fn row(&self, binding: &OracleBinding, n: usize) -> Result<Vec<BigInt>, OracleError> {
        let mut row = StandardOracles.row(binding, n)?;
        if *binding == self.binding && n == self.n {
            row[self.index] += 1;
        }
        Ok(row)
    }
}

/// Reference row to corrupt for a binding: within its cap and mapping to an engine row in `1..=max_n`.
pub fn target_row(case: &CaseSpec, binding: &OracleBinding, max_n: usize) -> usize {
    let (dn, _) = case.ansatz.shift();
    let hi = (binding.cap() as i64).min(max_n as i64 + dn);
    let lo = (dn + 1).max(binding.oracle.min_n() as i64);
    assert!(lo <= hi, "{} has no comparable rows", case.label());
    hi.min(lo + 3) as usize
}

/// First row whose extraction under `corrupt` errors or differs from the true extraction.
pub fn first_bad_row(case: &CaseSpec, corrupt: &CaseSpec, max_n: usize) -> Option<usize> {
    let trace = case.trace(max_n).unwrap();
    (1..=max_n).find(|&n| {
        let good = extract_row(&trace.iterates[n], &case.ansatz, n).unwrap();
        extract_row(&trace.iterates[n], &corrupt.ansatz, n).map_or(true, |bad| bad != good)
    })
}
