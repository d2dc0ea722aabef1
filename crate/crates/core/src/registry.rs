//! The catalogue of grammar identities and the triangles they produce.

use std::sync::OnceLock;

use thiserror::Error;

use crate::grammar::{apply_operator, DerivationTrace, Grammar, GrammarError, OperatorExpr, Strictness};
use crate::oracles::{Method, Oracle, OracleBinding};
use crate::parse::parse_polynomial;
use crate::poly::{letter, Polynomial};
use crate::triangle::{
    extract_row, Affine, AnsatzSpec, CoefficientTriangle, ExtractError, KBound, ScaleFactor,
};

/// Parameter grid for `c4` (restricted Eulerian numbers).
pub const C4_GRID: [usize; 4] = [0, 1, 2, 3];
/// Parameter grid for `c11` (forests of increasing `r`-ary trees).
pub const C11_GRID: [usize; 2] = [4, 5];

pub const CASE_IDS: [&str; 18] = [
    "P1", "P2", "P3", "P4x", "P4y", "T1", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9", "c10", "c11",
    "c12",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
}

/// One identity: `op^n(seed)` has the shape described by `ansatz`, with
/// coefficients given by each bound oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseSpec {
    pub id: &'static str,
    /// The parameter `r` of the parametric families `c4` and `c11`.
    pub r: Option<usize>,
    pub grammar: Grammar,
    pub seed: Polynomial,
    pub operator: OperatorExpr,
    pub ansatz: AnsatzSpec,
    pub oracles: Vec<OracleBinding>,
}

impl CaseSpec {
    /// `c4[r=2]` for parametric cases, the bare id otherwise.
    pub fn label(&self) -> String {
        match self.r {
            Some(r) => format!("{}[r={r}]", self.id),
            None => self.id.to_string(),
        }
    }

    pub fn k_origin(&self) -> usize {
        self.ansatz.k_origin()
    }

    /// Largest `n` checked by any enumerative binding.
    pub fn enum_cap(&self) -> Option<usize> {
        self.cap_where(|m| m.is_enumerative())
    }

    /// Largest `n` checked by any recurrence, formula, Bell or series binding.
    pub fn recurrence_cap(&self) -> Option<usize> {
        self.cap_where(|m| !m.is_enumerative())
    }

    fn cap_where(&self, pick: impl Fn(Method) -> bool) -> Option<usize> {
        let dn = self.ansatz.shift().0;
        self.oracles
            .iter()
            .filter(|b| pick(b.method))
            .map(|b| (b.cap() as i64 - dn).max(0) as usize)
            .max()
    }

    /// Iterates `seed, op(seed), …, op^steps(seed)` in strict mode.
    pub fn trace(&self, steps: usize) -> Result<DerivationTrace, GrammarError> {
        apply_operator(
            &self.grammar,
            &self.operator,
            &self.seed,
            steps,
            Strictness::Strict,
        )
    }
}

struct Shape {
    laws: Vec<(&'static str, Affine)>,
    solve: &'static str,
    k_origin: usize,
    k_max: KBound,
}

fn shape(laws: Vec<(&'static str, Affine)>, solve: &'static str, k_origin: usize, k_max: KBound) -> Shape {
    Shape {
        laws,
        solve,
        k_origin,
        k_max,
    }
}

fn ansatz(s: Shape) -> AnsatzSpec {
    AnsatzSpec::new(
        s.laws.into_iter().map(|(l, a)| (letter(l), a)).collect(),
        letter(s.solve),
        s.k_origin,
        s.k_max,
    )
    .expect("registry ansatz is well formed")
}

fn case(
    id: &'static str,
    grammar: &str,
    seed: &str,
    op: &str,
    ansatz: AnsatzSpec,
    oracles: Vec<OracleBinding>,
) -> CaseSpec {
    CaseSpec {
        id,
        r: None,
        grammar: Grammar::parse(grammar).expect("registry grammar parses"),
        seed: parse_polynomial(seed).expect("registry seed parses"),
        operator: op.parse().expect("registry operator parses"),
        ansatz,
        oracles,
    }
}

const fn aff(c: i64, n: i64, k: i64) -> Affine {
    Affine::new(c, n, k)
}

fn build() -> Vec<CaseSpec> {
    let all = OracleBinding::all_methods;
    // x^{2n-k} y^{k+1}, k = 0..n-1
    let second_order = || {
        shape(
            vec![("x", aff(0, 2, -1)), ("y", aff(1, 0, 1))],
            "y",
            0,
            KBound::affine(-1, 1),
        )
    };
    const B: &str = "x -> x*y^2; y -> x^2*y";

    let mut cases = vec![
        // D^n(x) = x Σ S(n,k) y^k
        case(
            "P1",
            "x -> x*y; y -> y",
            "x",
            "D",
            ansatz(shape(
                vec![("x", aff(1, 0, 0)), ("y", aff(0, 0, 1))],
                "y",
                1,
                KBound::affine(0, 1),
            )),
            all(Oracle::StirlingSecond),
        ),
        // D^n(x) = x Σ A(n,k) x^k y^{n-k}
        case(
            "P2",
            "x -> x*y; y -> x*y",
            "x",
            "D",
            ansatz(shape(
                vec![("x", aff(1, 0, 1)), ("y", aff(0, 1, -1))],
                "x",
                0,
                KBound::affine(-1, 1),
            )),
            all(Oracle::Eulerian),
        ),
        case(
            "P3",
            "x -> x^2*y; y -> x^2*y",
            "x",
            "D",
            ansatz(second_order()),
            all(Oracle::SecondOrderEulerian),
        ),
        // D^n(x) = Σ W(n,k) x^{n-2k-1} y^{2k+2}, k = 0..floor((n-1)/2)
        case(
            "P4x",
            "x -> y^2; y -> x*y",
            "x",
            "D",
            ansatz(shape(
                vec![("x", aff(-1, 1, -2)), ("y", aff(2, 0, 2))],
                "y",
                0,
                KBound::floor_div(-1, 1, 2),
            )),
            all(Oracle::InteriorPeaks),
        ),
        // D^n(y) = Σ W^l(n,k) x^{n-2k} y^{2k+1}, k = 0..floor(n/2)
        case(
            "P4y",
            "x -> y^2; y -> x*y",
            "y",
            "D",
            ansatz(shape(
                vec![("x", aff(0, 1, -2)), ("y", aff(1, 0, 2))],
                "y",
                0,
                KBound::floor_div(0, 1, 2),
            )),
            all(Oracle::LeftPeaks),
        ),
        case(
            "T1",
            "x -> x*y; y -> x*y",
            "x",
            "xD",
            ansatz(second_order()),
            all(Oracle::SecondOrderEulerian),
        ),
        // D^n(xy) = xy Σ B(n,k) x^{2n-2k} y^{2k}
        case(
            "c1",
            B,
            "x*y",
            "D",
            ansatz(shape(
                vec![("x", aff(1, 2, -2)), ("y", aff(1, 0, 2))],
                "y",
                0,
                KBound::affine(0, 1),
            )),
            all(Oracle::TypeB),
        ),
        // D^n(x^2y^2) = 2^n x^2y^2 Σ A(n+1,k) x^{2n-2k} y^{2k}
        case(
            "c2",
            B,
            "x^2*y^2",
            "D",
            ansatz(shape(
                vec![("x", aff(2, 2, -2)), ("y", aff(2, 0, 2))],
                "y",
                0,
                KBound::affine(0, 1),
            ))
            .with_scale(ScaleFactor::Power {
                base: 2,
                exponent: aff(0, 1, 0),
            })
            .with_shift(1, 0),
            all(Oracle::Eulerian),
        ),
        // D^n(x) = x Σ N(n,k) x^{2n-2k} y^{2k}, k = 1..n
        case(
            "c3",
            B,
            "x",
            "D",
            ansatz(shape(
                vec![("x", aff(1, 2, -2)), ("y", aff(0, 0, 2))],
                "y",
                1,
                KBound::affine(0, 1),
            )),
            all(Oracle::Matchings),
        ),
    ];

    // D^n(xy^r) = x Σ <n+r,k>_r x^k y^{n+r-k}
    for r in C4_GRID {
        let mut c = case(
            "c4",
            "x -> x*y; y -> x*y",
            &format!("x*y^{r}"),
            "D",
            ansatz(shape(
                vec![("x", aff(1, 0, 1)), ("y", aff(r as i64, 1, -1))],
                "x",
                0,
                KBound::affine(0, 1),
            ))
            .with_shift(r as i64, 0),
            all(Oracle::Restricted { r }),
        );
        c.r = Some(r);
        cases.push(c);
    }

    cases.extend([
        // D^n(x) = x Σ 2^k A(n,k) x^k y^{2n-2k}
        case(
            "c5",
            "x -> x*y^2; y -> x*y",
            "x",
            "D",
            ansatz(shape(
                vec![("x", aff(1, 0, 1)), ("y", aff(0, 2, -2))],
                "x",
                0,
                KBound::affine(-1, 1),
            ))
            .with_scale(ScaleFactor::Power {
                base: 2,
                exponent: aff(0, 0, 1),
            }),
            all(Oracle::Eulerian),
        ),
        // D^n(y) = Σ T(n,k) x^k y^{2n-2k+1}
        case(
            "c6",
            "x -> x*y^2; y -> x*y",
            "y",
            "D",
            ansatz(shape(
                vec![("x", aff(0, 0, 1)), ("y", aff(1, 2, -2))],
                "x",
                1,
                KBound::affine(0, 1),
            )),
            all(Oracle::SqrtSeries),
        ),
        // D^n(x) = x Σ k! S(n,k) x^k y^k
        case(
            "c7",
            "x -> x^2*y; y -> y",
            "x",
            "D",
            ansatz(shape(
                vec![("x", aff(1, 0, 1)), ("y", aff(0, 0, 1))],
                "x",
                1,
                KBound::affine(0, 1),
            ))
            .with_scale(ScaleFactor::Factorial(aff(0, 0, 1))),
            all(Oracle::StirlingSecond),
        ),
        // D^n(x) = x Σ k! c(n,k) x^k y^n
        case(
            "c8",
            "x -> x^2*y; y -> y^2",
            "x",
            "D",
            ansatz(shape(
                vec![("x", aff(1, 0, 1)), ("y", aff(0, 1, 0))],
                "x",
                1,
                KBound::affine(0, 1),
            ))
            .with_scale(ScaleFactor::Factorial(aff(0, 0, 1))),
            all(Oracle::StirlingFirst),
        ),
        // D^n(x) = x Σ L(n,k) y^{n+k}
        case(
            "c9",
            "x -> x*y^2; y -> y^2",
            "x",
            "D",
            forest_ansatz(2),
            [all(Oracle::Lah), all(Oracle::Forest { r: 2 })].concat(),
        ),
        // D^n(x) = x Σ b(n,k) y^{2n+k}
        case(
            "c10",
            "x -> x*y^3; y -> y^3",
            "x",
            "D",
            forest_ansatz(3),
            all(Oracle::Forest { r: 3 }),
        ),
    ]);

    // D^n(x) = x Σ a(n,k;r) y^{(r-1)n+k}
    for r in C11_GRID {
        let mut c = case(
            "c11",
            &format!("x -> x*y^{r}; y -> y^{r}"),
            "x",
            "D",
            forest_ansatz(r),
            all(Oracle::Forest { r }),
        );
        c.r = Some(r);
        cases.push(c);
    }

    // D^n(y) = x^n Σ d(n,k) y^k
    cases.push(case(
        "c12",
        "x -> x^2*y; y -> x*y",
        "y",
        "D",
        ansatz(shape(
            vec![("x", aff(0, 1, 0)), ("y", aff(0, 0, 1))],
            "y",
            1,
            KBound::affine(0, 1),
        )),
        all(Oracle::Mobile),
    ));
    cases
}

fn forest_ansatz(r: usize) -> AnsatzSpec {
    ansatz(shape(
        vec![("x", aff(1, 0, 0)), ("y", aff(0, r as i64 - 1, 1))],
        "y",
        1,
        KBound::affine(0, 1),
    ))
}

/// Every registry case, parametric families expanded over their grids.
pub fn case_registry() -> &'static [CaseSpec] {
    static REGISTRY: OnceLock<Vec<CaseSpec>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

/// Looks a case up by label (`c1`, `c4[r=2]`) or by id plus parameter.
pub fn find_case(id: &str, r: Option<usize>) -> Result<&'static CaseSpec, CaseError> {
    let unknown = || {
        CaseError::UnknownCase(match r {
            Some(r) => format!("{id}[r={r}]"),
            None => id.to_string(),
        })
    };
    let matches = find_cases(id, r);
    match matches.as_slice() {
        [only] => Ok(only),
        // a bare parametric id resolves to its first grid point
        [first, ..] if r.is_none() => Ok(first),
        _ => Err(unknown()),
    }
}

/// All cases with the given id (or label), optionally restricted to one parameter.
pub fn find_cases(id: &str, r: Option<usize>) -> Vec<&'static CaseSpec> {
    case_registry()
        .iter()
        .filter(|c| (c.id == id && (r.is_none() || c.r == r)) || (r.is_none() && c.label() == id))
        .collect()
}

/// Runs the case's operator and extracts rows `1..=max_n`.
pub fn compute_case_triangle(case: &CaseSpec, max_n: usize) -> Result<CoefficientTriangle, CaseError> {
    let trace = case.trace(max_n)?;
    let mut tri = CoefficientTriangle::new(case.k_origin());
    for n in 1..=max_n {
        tri.insert(n, extract_row(&trace.iterates[n], &case.ansatz, n)?);
    }
    Ok(tri)
}
