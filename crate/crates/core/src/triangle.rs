//! Reading `(n, k)`-indexed coefficient triangles off derivation iterates.
//!
//! An [`AnsatzSpec`] records the monomial shape of an identity such as
//! `D^n(xy) = xy Σ_k B(n,k) x^{2n-2k} y^{2k}`: every letter's exponent is an
//! affine function of `(n, k)`, one designated letter determines `k`, and an
//! optional scale factor is divided out of each coefficient.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{Letter, Polynomial};

/// `constant + n_coef·n + k_coef·k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Affine {
    pub constant: i64,
    pub n_coef: i64,
    pub k_coef: i64,
}

impl Affine {
    pub const fn new(constant: i64, n_coef: i64, k_coef: i64) -> Self {
        Affine {
            constant,
            n_coef,
            k_coef,
        }
    }

    pub fn eval(&self, n: i64, k: i64) -> i64 {
        self.constant + self.n_coef * n + self.k_coef * k
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, v) in [(self.n_coef, "n"), (self.k_coef, "k")] {
            match c {
                0 => {}
                1 => parts.push(v.to_string()),
                -1 => parts.push(format!("-{v}")),
                c => parts.push(format!("{c}{v}")),
            }
        }
        if self.constant != 0 || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        let s = parts.join(" + ").replace("+ -", "- ");
        f.write_str(&s)
    }
}

/// Upper end of the k-range: `floor((constant + n_coef·n) / divisor)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KBound {
    pub constant: i64,
    pub n_coef: i64,
    pub divisor: i64,
}

impl KBound {
    pub const fn affine(constant: i64, n_coef: i64) -> Self {
        KBound {
            constant,
            n_coef,
            divisor: 1,
        }
    }

    pub const fn floor_div(constant: i64, n_coef: i64, divisor: i64) -> Self {
        KBound {
            constant,
            n_coef,
            divisor,
        }
    }

    pub fn eval(&self, n: i64) -> i64 {
        (self.constant + self.n_coef * n).div_euclid(self.divisor)
    }
}

/// A factor multiplying the reference value inside an engine coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleFactor {
    /// `base^{exponent(n,k)}`
    Power { base: i64, exponent: Affine },
    /// `(argument(n,k))!`
    Factorial(Affine),
}

impl ScaleFactor {
    pub fn eval(&self, n: i64, k: i64) -> BigInt {
        match *self {
            ScaleFactor::Power { base, exponent } => {
                let e = exponent.eval(n, k);
                assert!(e >= 0, "negative scale exponent");
                num_traits::pow(BigInt::from(base), e as usize)
            }
            ScaleFactor::Factorial(arg) => {
                let m = arg.eval(n, k);
                assert!(m >= 0, "negative factorial argument");
                (1..=m).map(BigInt::from).product()
            }
        }
    }
}

impl fmt::Display for ScaleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleFactor::Power { base, exponent } => write!(f, "{base}^({exponent})"),
            ScaleFactor::Factorial(arg) => write!(f, "({arg})!"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnsatzError {
    #[error("solve letter `{0}` has no exponent law")]
    SolveLetterMissing(Letter),
    #[error("solve letter `{0}` does not depend on k")]
    SolveLetterConstant(Letter),
    #[error("exponent law for `{0}` is given twice")]
    DuplicateLaw(Letter),
}

/// Monomial shape of one identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzSpec {
    laws: Vec<(Letter, Affine)>,
    solve: Letter,
    k_origin: usize,
    k_max: KBound,
    scale: Vec<ScaleFactor>,
    shift_n: i64,
    shift_k: i64,
}

impl AnsatzSpec {
    pub fn new(
        laws: Vec<(Letter, Affine)>,
        solve: Letter,
        k_origin: usize,
        k_max: KBound,
    ) -> Result<Self, AnsatzError> {
        for (i, (l, _)) in laws.iter().enumerate() {
            if laws[..i].iter().any(|(m, _)| m == l) {
                return Err(AnsatzError::DuplicateLaw(l.clone()));
            }
        }
        let law = laws
            .iter()
            .find(|(l, _)| *l == solve)
            .ok_or_else(|| AnsatzError::SolveLetterMissing(solve.clone()))?;
        if law.1.k_coef == 0 {
            return Err(AnsatzError::SolveLetterConstant(solve));
        }
        Ok(AnsatzSpec {
            laws,
            solve,
            k_origin,
            k_max,
            scale: Vec::new(),
            shift_n: 0,
            shift_k: 0,
        })
    }

    pub fn with_scale(mut self, factor: ScaleFactor) -> Self {
        self.scale.push(factor);
        self
    }

    /// Engine row `n` compares against reference row `n + dn`, entry `k + dk`.
    pub fn with_shift(mut self, dn: i64, dk: i64) -> Self {
        self.shift_n = dn;
        self.shift_k = dk;
        self
    }

    pub fn laws(&self) -> &[(Letter, Affine)] {
        &self.laws
    }

    pub fn law(&self, letter: &Letter) -> Option<Affine> {
        self.laws.iter().find(|(l, _)| l == letter).map(|&(_, a)| a)
    }

    /// Replaces the exponent law of `letter`, keeping everything else.
    pub fn set_law(&mut self, letter: &Letter, law: Affine) {
        if let Some(slot) = self.laws.iter_mut().find(|(l, _)| l == letter) {
            slot.1 = law;
        }
    }

    pub fn solve_letter(&self) -> &Letter {
        &self.solve
    }

    pub fn k_origin(&self) -> usize {
        self.k_origin
    }

    pub fn k_max(&self, n: usize) -> i64 {
        self.k_max.eval(n as i64)
    }

    pub fn scale(&self) -> &[ScaleFactor] {
        &self.scale
    }

    pub fn shift(&self) -> (i64, i64) {
        (self.shift_n, self.shift_k)
    }

    /// Number of entries in row `n`.
    pub fn row_len(&self, n: usize) -> usize {
        (self.k_max(n) - self.k_origin as i64 + 1).max(0) as usize
    }

    pub fn scale_at(&self, n: usize, k: i64) -> BigInt {
        self.scale
            .iter()
            .map(|s| s.eval(n as i64, k))
            .fold(BigInt::one(), |a, b| a * b)
    }

    /// The term shape as text, e.g. `x^(2n - 2k + 1) y^(2k + 1)`.
    pub fn shape(&self) -> String {
        let mut s: Vec<String> = self.scale.iter().map(ScaleFactor::to_string).collect();
        s.push("T(n,k)".into());
        for (l, a) in &self.laws {
            s.push(format!("{l}^({a})"));
        }
        s.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("n = {n}: monomial `{monomial}` does not match the ansatz ({reason})")]
    Structural {
        n: usize,
        monomial: String,
        reason: String,
    },
    #[error("n = {n}, k = {k}: coefficient {coefficient} is not divisible by the scale factor {scale}")]
    NotDivisible {
        n: usize,
        k: i64,
        coefficient: BigInt,
        scale: BigInt,
    },
    #[error("n = {n}: monomial `{monomial}` gives k = {k} outside {lo}..={hi}")]
    KOutOfRange {
        n: usize,
        monomial: String,
        k: i64,
        lo: i64,
        hi: i64,
    },
}

impl ExtractError {
    pub fn n(&self) -> usize {
        match self {
            ExtractError::Structural { n, .. }
            | ExtractError::NotDivisible { n, .. }
            | ExtractError::KOutOfRange { n, .. } => *n,
        }
    }

    pub fn k(&self) -> Option<i64> {
        match self {
            ExtractError::Structural { .. } => None,
            ExtractError::NotDivisible { k, .. } | ExtractError::KOutOfRange { k, .. } => Some(*k),
        }
    }
}

/// Reads row `n` (entries `k_origin ..= k_max(n)`) off the step-`n` iterate `p`.
pub fn extract_row(p: &Polynomial, ansatz: &AnsatzSpec, n: usize) -> Result<Vec<BigInt>, ExtractError> {
    let ni = n as i64;
    let lo = ansatz.k_origin as i64;
    let hi = ansatz.k_max(n);
    let mut row = vec![BigInt::zero(); ansatz.row_len(n)];
    let solve = ansatz.law(&ansatz.solve).expect("checked at construction");

    for (m, c) in p.terms() {
        let structural = |reason: String| ExtractError::Structural {
            n,
            monomial: m.to_string(),
            reason,
        };
        if let Some(stray) = m.letters().find(|l| ansatz.law(l).is_none()) {
            return Err(structural(format!("letter `{stray}` has no exponent law")));
        }
        let e = m.exponent(&ansatz.solve) as i64;
        let num = e - solve.constant - solve.n_coef * ni;
        if num % solve.k_coef != 0 {
            return Err(structural(format!(
                "exponent {e} of `{}` is not of the form {solve}",
                ansatz.solve
            )));
        }
        let k = num / solve.k_coef;
        for (l, law) in &ansatz.laws {
            let expected = law.eval(ni, k);
            let actual = m.exponent(l) as i64;
            if expected != actual {
                return Err(structural(format!(
                    "`{l}` has exponent {actual}, the law {law} gives {expected} at k = {k}"
                )));
            }
        }
        if k < lo || k > hi {
            return Err(ExtractError::KOutOfRange {
                n,
                monomial: m.to_string(),
                k,
                lo,
                hi,
            });
        }
        let scale = ansatz.scale_at(n, k);
        let (q, r) = c.div_rem(&scale);
        if !r.is_zero() {
            return Err(ExtractError::NotDivisible {
                n,
                k,
                coefficient: c.clone(),
                scale,
            });
        }
        row[(k - lo) as usize] = q;
    }
    Ok(row)
}

/// Rows `n -> entries k_origin..` of a coefficient family.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoefficientTriangle {
    pub k_origin: usize,
    pub rows: BTreeMap<usize, Vec<BigInt>>,
}

impl CoefficientTriangle {
    pub fn new(k_origin: usize) -> Self {
        CoefficientTriangle {
            k_origin,
            rows: BTreeMap::new(),
        }
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        self.rows.get(&n).map(Vec::as_slice)
    }

    /// Entry `(n, k)`, zero outside the stored range.
    pub fn get(&self, n: usize, k: i64) -> BigInt {
        let idx = k - self.k_origin as i64;
        match self.rows.get(&n) {
            Some(row) if idx >= 0 => row.get(idx as usize).cloned().unwrap_or_default(),
            _ => BigInt::zero(),
        }
    }

    pub fn insert(&mut self, n: usize, row: Vec<BigInt>) {
        self.rows.insert(n, row);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::letter;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    fn type_b_ansatz() -> AnsatzSpec {
        AnsatzSpec::new(
            vec![
                (letter("x"), Affine::new(1, 2, -2)),
                (letter("y"), Affine::new(1, 0, 2)),
            ],
            letter("y"),
            0,
            KBound::affine(0, 1),
        )
        .unwrap()
    }

    fn second_order_ansatz() -> AnsatzSpec {
        AnsatzSpec::new(
            vec![
                (letter("x"), Affine::new(0, 2, -1)),
                (letter("y"), Affine::new(1, 0, 1)),
            ],
            letter("y"),
            0,
            KBound::affine(-1, 1),
        )
        .unwrap()
    }

    #[test]
    fn type_b_row_two() {
        let p = parse_polynomial("x y (x^4 + 6x^2 y^2 + y^4)").unwrap();
        assert_eq!(extract_row(&p, &type_b_ansatz(), 2).unwrap(), ints(&[1, 6, 1]));
    }

    #[test]
    fn second_order_row_two() {
        let p = parse_polynomial("x^4 y + 2 x^3 y^2").unwrap();
        assert_eq!(extract_row(&p, &second_order_ansatz(), 2).unwrap(), ints(&[1, 2]));
    }

    #[test]
    fn scaled_row() {
        // D(x^2y^2) under {x -> xy^2, y -> x^2y}
        let p = parse_polynomial("2x^4y^2 + 2x^2y^4").unwrap();
        let ansatz = AnsatzSpec::new(
            vec![
                (letter("x"), Affine::new(2, 2, -2)),
                (letter("y"), Affine::new(2, 0, 2)),
            ],
            letter("y"),
            0,
            KBound::affine(0, 1),
        )
        .unwrap()
        .with_scale(ScaleFactor::Power {
            base: 2,
            exponent: Affine::new(0, 1, 0),
        });
        assert_eq!(extract_row(&p, &ansatz, 1).unwrap(), ints(&[1, 1]));

        let odd = parse_polynomial("3x^4y^2 + 2x^2y^4").unwrap();
        assert!(matches!(
            extract_row(&odd, &ansatz, 1),
            Err(ExtractError::NotDivisible { k: 0, .. })
        ));
    }

    #[test]
    fn structural_failures() {
        let a = type_b_ansatz();
        let wrong_x = parse_polynomial("x^2 y^3").unwrap();
        assert!(matches!(
            extract_row(&wrong_x, &a, 2),
            Err(ExtractError::Structural { .. })
        ));
        let odd_y = parse_polynomial("x y^2").unwrap();
        assert!(matches!(
            extract_row(&odd_y, &a, 2),
            Err(ExtractError::Structural { .. })
        ));
        let stray = parse_polynomial("x^5 y z").unwrap();
        assert!(matches!(
            extract_row(&stray, &a, 2),
            Err(ExtractError::Structural { .. })
        ));
        // k = 3 at n = 2 satisfies both laws only with a negative x exponent, so use n = 1
        let high = parse_polynomial("y^5").unwrap();
        assert!(extract_row(&high, &a, 1).is_err());
    }

    #[test]
    fn k_out_of_range() {
        let a = AnsatzSpec::new(
            vec![(letter("y"), Affine::new(0, 0, 1))],
            letter("y"),
            1,
            KBound::affine(0, 1),
        )
        .unwrap();
        let p = parse_polynomial("y + y^3").unwrap();
        assert!(matches!(
            extract_row(&p, &a, 2),
            Err(ExtractError::KOutOfRange { k: 3, .. })
        ));
        assert_eq!(
            extract_row(&parse_polynomial("2y^2").unwrap(), &a, 2).unwrap(),
            ints(&[0, 2])
        );
    }

    #[test]
    fn ansatz_validation() {
        let l = |s| letter(s);
        assert!(matches!(
            AnsatzSpec::new(
                vec![(l("x"), Affine::new(1, 0, 0))],
                l("x"),
                0,
                KBound::affine(0, 1)
            ),
            Err(AnsatzError::SolveLetterConstant(_))
        ));
        assert!(matches!(
            AnsatzSpec::new(
                vec![(l("x"), Affine::new(1, 0, 1))],
                l("y"),
                0,
                KBound::affine(0, 1)
            ),
            Err(AnsatzError::SolveLetterMissing(_))
        ));
    }

    #[test]
    fn floor_bounds() {
        let b = KBound::floor_div(-1, 1, 2);
        assert_eq!(
            (1..=6).map(|n| b.eval(n)).collect::<Vec<_>>(),
            vec![0, 0, 1, 1, 2, 2]
        );
    }

    #[test]
    fn affine_display() {
        assert_eq!(Affine::new(1, 2, -2).to_string(), "2n - 2k + 1");
        assert_eq!(Affine::new(0, 0, 0).to_string(), "0");
        assert_eq!(Affine::new(0, 1, 1).to_string(), "n + k");
    }
}
