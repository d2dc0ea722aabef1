//! Formal derivatives induced by context-free grammars over integer polynomials.
//!
//! A grammar such as `x -> x*y; y -> y` defines a derivation `D` acting on
//! polynomials in the letters `x, y`. Iterating `D` (or `xD`) from a seed word
//! produces polynomials whose coefficients are classical combinatorial
//! triangles: Stirling, Eulerian, second-order Eulerian, type-B Eulerian, Lah
//! and others. This crate computes those iterates exactly, reads the triangles
//! off them, and checks each one against independent oracles (brute-force
//! enumeration, recurrences, explicit formulas and generating functions).
//!
//! ```
//! use gramcalc::{apply_operator, parse_polynomial, Grammar, OperatorExpr, Strictness};
//!
//! let g = Grammar::parse("x -> x*y; y -> y").unwrap();
//! let seed = parse_polynomial("x").unwrap();
//! let trace = apply_operator(&g, &OperatorExpr::d(), &seed, 3, Strictness::Strict).unwrap();
//! assert_eq!(trace.last().to_string(), "x*y + 3*x*y^2 + x*y^3");
//! ```

pub mod grammar;
pub mod oracles;
pub mod output;
pub mod parse;
pub mod poly;
pub mod registry;
pub mod series;
pub mod triangle;
pub mod verify;

pub use grammar::{apply_operator, DerivationTrace, Grammar, GrammarError, OperatorExpr, Strictness};
pub use oracles::{Method, Oracle, OracleBinding, OracleError};
pub use parse::{parse_grammar, parse_polynomial, ParseError};
pub use poly::{Letter, Monomial, Polynomial};
pub use registry::{case_registry, compute_case_triangle, find_case, find_cases, CaseError, CaseSpec};
pub use series::TruncatedSeries;
pub use triangle::{extract_row, AnsatzSpec, CoefficientTriangle, ExtractError};
pub use verify::{verify_all, verify_case, CaseReport, VerificationReport};
