//! Context-free grammars in the substitution-rule sense and their formal derivative.
//!
//! A grammar assigns each letter a polynomial. The induced derivative `D` is the
//! unique linear operator obeying the Leibniz rule with `D(ℓ)` equal to the rule
//! for `ℓ`. Letters without a rule behave as constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::parse::{self, ParseError};
use crate::poly::{Letter, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("letters without rules in strict mode: {}", join(.0))]
    Unruled(BTreeSet<Letter>),
    #[error("operator must have the form `D` or `<monomial>D`, got `{0}`")]
    BadOperator(String),
}

fn join(letters: &BTreeSet<Letter>) -> String {
    letters
        .iter()
        .map(Letter::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// How letters without rules are treated during differentiation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Strictness {
    /// Unruled letters differentiate to zero and are reported as warnings.
    #[default]
    Lenient,
    /// Unruled letters are an error.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    rules: BTreeMap<Letter, Polynomial>,
    constants: BTreeSet<Letter>,
}

impl Grammar {
    pub(crate) fn from_parts(rules: BTreeMap<Letter, Polynomial>, constants: BTreeSet<Letter>) -> Self {
        Grammar { rules, constants }
    }

    /// Builds a grammar from `(letter, rule)` pairs. Returns `None` for an empty rule set.
    pub fn new<I: IntoIterator<Item = (Letter, Polynomial)>>(rules: I) -> Option<Self> {
        let rules: BTreeMap<_, _> = rules.into_iter().collect();
        (!rules.is_empty()).then(|| Grammar {
            rules,
            constants: BTreeSet::new(),
        })
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse_grammar(text)
    }

    pub fn with_constant(mut self, letter: Letter) -> Self {
        self.constants.insert(letter);
        self
    }

    pub fn rule(&self, letter: &Letter) -> Option<&Polynomial> {
        self.rules.get(letter)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Letter, &Polynomial)> {
        self.rules.iter()
    }

    pub fn is_constant(&self, letter: &Letter) -> bool {
        self.constants.contains(letter)
    }

    fn is_known(&self, letter: &Letter) -> bool {
        self.rules.contains_key(letter) || self.constants.contains(letter)
    }

    /// Letters on right-hand sides that are neither ruled nor declared constant.
    pub fn unruled_letters(&self) -> BTreeSet<Letter> {
        self.rules
            .values()
            .flat_map(Polynomial::letters)
            .filter(|l| !self.is_known(l))
            .collect()
    }

    /// Letters of `p` that are neither ruled nor declared constant.
    pub fn unruled_in(&self, p: &Polynomial) -> BTreeSet<Letter> {
        p.letters().into_iter().filter(|l| !self.is_known(l)).collect()
    }

    /// The formal derivative of `p`. Unruled letters contribute zero.
    pub fn derive(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            for (l, e) in m.iter() {
                let Some(rule) = self.rules.get(l) else { continue };
                let rest = m.without_one(l).expect("letter present in monomial");
                let factor = c * BigInt::from(e);
                for (rm, rc) in rule.terms() {
                    out.add_term(rest.mul(rm), &factor * rc);
                }
            }
        }
        out
    }

    /// Like [`derive`](Self::derive) but rejects polynomials or rules mentioning unruled letters.
    pub fn derive_strict(&self, p: &Polynomial) -> Result<Polynomial, GrammarError> {
        let mut unruled = self.unruled_letters();
        unruled.extend(self.unruled_in(p));
        if !unruled.is_empty() {
            return Err(GrammarError::Unruled(unruled));
        }
        Ok(self.derive(p))
    }
}

impl FromStr for Grammar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Grammar::parse(s)
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, rhs) in &self.rules {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            write!(f, "{l} -> {rhs}")?;
        }
        if !self.constants.is_empty() {
            write!(f, "; const {}", join(&self.constants))?;
        }
        Ok(())
    }
}

/// An operator of the form `m·D`: differentiate, then multiply by a fixed monomial.
///
/// The empty prefix is plain `D`; prefix `x` gives `xD`, so that
/// `(xD)^{n+1}(u) = x·D((xD)^n(u))`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OperatorExpr {
    prefix: Monomial,
}

impl OperatorExpr {
    pub fn d() -> Self {
        Self::default()
    }

    pub fn with_prefix(prefix: Monomial) -> Self {
        OperatorExpr { prefix }
    }

    pub fn prefix(&self) -> &Monomial {
        &self.prefix
    }

    /// One application of the operator to `p`.
    pub fn apply(&self, grammar: &Grammar, p: &Polynomial) -> Polynomial {
        let d = grammar.derive(p);
        if self.prefix.is_one() {
            d
        } else {
            d.mul_monomial(&self.prefix)
        }
    }
}

impl FromStr for OperatorExpr {
    type Err = GrammarError;

    /// Accepts `D`, `xD`, `x*D`, `x^2 y D` and similar.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GrammarError::BadOperator(s.to_string());
        let body = s.trim().strip_suffix('D').ok_or_else(bad)?.trim_end();
        let body = body.strip_suffix('*').unwrap_or(body).trim();
        if body.is_empty() {
            return Ok(OperatorExpr::d());
        }
        parse::parse_monomial(body)
            .map(OperatorExpr::with_prefix)
            .map_err(|_| bad())
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_one() {
            f.write_str("D")
        } else {
            write!(f, "{}D", self.prefix)
        }
    }
}

/// The iterates `seed, op(seed), op²(seed), …` of an operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub grammar: Grammar,
    pub operator: OperatorExpr,
    pub seed: Polynomial,
    pub iterates: Vec<Polynomial>,
    /// Letters that were treated as constants without being declared so.
    pub warnings: BTreeSet<Letter>,
}

impl DerivationTrace {
    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn last(&self) -> &Polynomial {
        self.iterates.last().expect("trace always holds the seed")
    }

    pub fn step(&self, i: usize) -> Option<&Polynomial> {
        self.iterates.get(i)
    }

    /// Recomputes every iterate from its predecessor.
    pub fn is_consistent(&self) -> bool {
        self.iterates.first() == Some(&self.seed)
            && self
                .iterates
                .windows(2)
                .all(|w| self.operator.apply(&self.grammar, &w[0]) == w[1])
    }
}

/// Applies `op` to `seed` `steps` times, recording every iterate.
pub fn apply_operator(
    grammar: &Grammar,
    op: &OperatorExpr,
    seed: &Polynomial,
    steps: usize,
    strictness: Strictness,
) -> Result<DerivationTrace, GrammarError> {
    let mut warnings = grammar.unruled_letters();
    warnings.extend(grammar.unruled_in(seed));
    warnings.extend(op.prefix().letters().filter(|l| !grammar.is_known(l)).cloned());
    if strictness == Strictness::Strict && !warnings.is_empty() {
        return Err(GrammarError::Unruled(warnings));
    }

    let mut iterates = Vec::with_capacity(steps + 1);
    iterates.push(seed.clone());
    for i in 0..steps {
        let next = op.apply(grammar, &iterates[i]);
        iterates.push(next);
    }
    Ok(DerivationTrace {
        grammar: grammar.clone(),
        operator: op.clone(),
        seed: seed.clone(),
        iterates,
        warnings,
    })
}
