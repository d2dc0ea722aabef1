//! Comparing grammar-derived triangles against every bound oracle.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::oracles::{OracleBinding, OracleError};
use crate::registry::{case_registry, find_cases, CaseError, CaseSpec, C11_GRID, C4_GRID};
use crate::triangle::extract_row;

/// Where verification reads oracle rows from.
pub trait OracleSource: Sync {
    fn row(&self, binding: &OracleBinding, n: usize) -> Result<Vec<BigInt>, OracleError>;
}

/// The oracles of this crate, unmodified.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardOracles;

impl OracleSource for StandardOracles {
    fn row(&self, binding: &OracleBinding, n: usize) -> Result<Vec<BigInt>, OracleError> {
        binding.oracle.row(binding.method, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Match,
    Mismatch,
    StructuralFailure,
    SkippedOverCap,
    OracleError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Pass,
    Fail,
    /// The case could not run at all (e.g. an unruled letter in strict mode).
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<i64>,
    /// `oracle/method` for mismatches, `ansatz` for extraction failures.
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub engine: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub n: usize,
    pub status: RowStatus,
    /// Bindings compared at this row.
    pub compared: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<BTreeMap<String, usize>>,
    pub k_origin: usize,
    pub status: CaseStatus,
    pub first_divergence: Option<Divergence>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub rows: Vec<RowReport>,
    pub elapsed_us: u64,
}

impl CaseReport {
    pub fn label(&self) -> String {
        match self.params.as_ref().and_then(|p| p.get("r")) {
            Some(r) => format!("{}[r={r}]", self.case),
            None => self.case.clone(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CaseStatus::Pass
    }

    pub fn count(&self, status: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub max_n: usize,
    /// `oracle/method -> largest n compared`.
    pub caps: BTreeMap<String, usize>,
    /// Parameter grids of the parametric families.
    pub grid: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub config: SuiteConfig,
    pub cases: Vec<CaseReport>,
}

impl VerificationReport {
    pub fn case(&self, label: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.label() == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned-column summary, one line per case.
    pub fn to_table(&self) -> String {
        let headers = [
            "case",
            "status",
            "match",
            "skipped",
            "compared",
            "first divergence",
            "time",
        ];
        let lines: Vec<[String; 7]> = self
            .cases
            .iter()
            .map(|c| {
                let mut methods: Vec<&str> = c
                    .rows
                    .iter()
                    .flat_map(|r| r.compared.iter().map(String::as_str))
                    .collect();
                methods.sort_unstable();
                methods.dedup();
                [
                    c.label(),
                    format!("{:?}", c.status).to_lowercase(),
                    format!("{}/{}", c.count(RowStatus::Match), c.rows.len()),
                    c.count(RowStatus::SkippedOverCap).to_string(),
                    methods.join(","),
                    c.first_divergence
                        .as_ref()
                        .map(describe)
                        .or_else(|| c.error.clone())
                        .unwrap_or("-".into()),
                    format!("{:.1}ms", c.elapsed_us as f64 / 1000.0),
                ]
            })
            .collect();
        let mut widths = headers.map(str::len);
        for l in &lines {
            for (w, cell) in widths.iter_mut().zip(l) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let mut push = |cells: &[String]| {
            let row: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", row.join("  ").trim_end());
        };
        push(&headers.map(String::from));
        for l in &lines {
            push(l);
        }
        let _ = writeln!(out, "overall: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

fn describe(d: &Divergence) -> String {
    let mut s = format!("n={}", d.n);
    if let Some(k) = d.k {
        let _ = write!(s, " k={k}");
    }
    let _ = write!(s, " [{}]", d.source);
    if let (Some(e), Some(o)) = (&d.engine, &d.oracle) {
        let _ = write!(s, " engine={e} oracle={o}");
    }
    if let Some(detail) = &d.detail {
        let _ = write!(s, " {detail}");
    }
    s
}

/// First `k` where the engine row and the oracle row differ, comparing over
/// the union of both ranges with absent entries read as zero.
fn first_difference(
    engine: &[BigInt],
    engine_origin: i64,
    oracle: &[BigInt],
    oracle_origin: i64,
) -> Option<(i64, BigInt, BigInt)> {
    let lo = engine_origin.min(oracle_origin);
    let hi = (engine_origin + engine.len() as i64).max(oracle_origin + oracle.len() as i64);
    let get = |row: &[BigInt], origin: i64, k: i64| -> BigInt {
        usize::try_from(k - origin)
            .ok()
            .and_then(|i| row.get(i))
            .cloned()
            .unwrap_or_default()
    };
    (lo..hi).find_map(|k| {
        let (e, o) = (get(engine, engine_origin, k), get(oracle, oracle_origin, k));
        (e != o).then_some((k, e, o))
    })
}

fn case_params(case: &CaseSpec) -> Option<BTreeMap<String, usize>> {
    case.r.map(|r| BTreeMap::from([("r".to_string(), r)]))
}

/// Verifies one case for rows `1..=max_n` against every bound oracle method.
pub fn verify_spec(case: &CaseSpec, max_n: usize, oracles: &dyn OracleSource) -> CaseReport {
    let start = Instant::now();
    let mut report = CaseReport {
        case: case.id.to_string(),
        params: case_params(case),
        k_origin: case.k_origin(),
        status: CaseStatus::Pass,
        first_divergence: None,
        error: None,
        rows: Vec::with_capacity(max_n),
        elapsed_us: 0,
    };

    let trace = match case.trace(max_n) {
        Ok(t) => t,
        Err(e) => {
            report.status = CaseStatus::Error;
            report.error = Some(format!("configuration error: {e}"));
            report.elapsed_us = start.elapsed().as_micros() as u64;
            return report;
        }
    };
    let (dn, dk) = case.ansatz.shift();
    let origin = case.k_origin() as i64;

    for n in 1..=max_n {
        let mut row = RowReport {
            n,
            status: RowStatus::SkippedOverCap,
            compared: Vec::new(),
        };
        let mut divergence = None;

        match extract_row(&trace.iterates[n], &case.ansatz, n) {
            Err(e) => {
                row.status = RowStatus::StructuralFailure;
                divergence = Some(Divergence {
                    n,
                    k: e.k(),
                    source: "ansatz".into(),
                    engine: None,
                    oracle: None,
                    detail: Some(e.to_string()),
                });
            }
            Ok(values) => {
                let ref_n = n as i64 + dn;
                for binding in &case.oracles {
                    if ref_n < 0 || ref_n as usize > binding.cap() {
                        continue;
                    }
                    row.compared.push(binding.to_string());
                    let outcome = oracles.row(binding, ref_n as usize).map(|o| {
                        first_difference(&values, origin, &o, binding.oracle.k_origin() as i64 - dk)
                    });
                    let found = match outcome {
                        Ok(None) => None,
                        Ok(Some((k, e, o))) => Some((
                            RowStatus::Mismatch,
                            Divergence {
                                n,
                                k: Some(k),
                                source: binding.to_string(),
                                engine: Some(e.to_string()),
                                oracle: Some(o.to_string()),
                                detail: None,
                            },
                        )),
                        Err(err) => Some((
                            RowStatus::OracleError,
                            Divergence {
                                n,
                                k: None,
                                source: binding.to_string(),
                                engine: None,
                                oracle: None,
                                detail: Some(err.to_string()),
                            },
                        )),
                    };
                    if let Some((status, d)) = found {
                        if divergence.is_none() {
                            row.status = status;
                            divergence = Some(d);
                        }
                    }
                }
                if divergence.is_none() && !row.compared.is_empty() {
                    row.status = RowStatus::Match;
                }
            }
        }

        if let Some(d) = divergence {
            report.status = CaseStatus::Fail;
            report.first_divergence.get_or_insert(d);
        }
        report.rows.push(row);
    }
    report.elapsed_us = start.elapsed().as_micros() as u64;
    report
}

/// Verifies every case matching `id` (a label such as `c4[r=2]`, or a bare id
/// covering its whole parameter grid).
pub fn verify_case(id: &str, r: Option<usize>, max_n: usize) -> Result<Vec<CaseReport>, CaseError> {
    let cases = find_cases(id, r);
    if cases.is_empty() {
        return Err(CaseError::UnknownCase(id.to_string()));
    }
    Ok(cases
        .into_par_iter()
        .map(|c| verify_spec(c, max_n, &StandardOracles))
        .collect())
}

/// Verifies a list of cases concurrently; reports keep the input order.
pub fn verify_cases(cases: &[CaseSpec], max_n: usize, oracles: &dyn OracleSource) -> VerificationReport {
    let reports: Vec<CaseReport> = cases.par_iter().map(|c| verify_spec(c, max_n, oracles)).collect();
    let mut caps = BTreeMap::new();
    for c in cases {
        for b in &c.oracles {
            caps.insert(b.to_string(), b.cap());
        }
    }
    let grid = BTreeMap::from([
        ("c4".to_string(), C4_GRID.to_vec()),
        ("c11".to_string(), C11_GRID.to_vec()),
    ]);
    VerificationReport {
        pass: reports.iter().all(CaseReport::passed),
        config: SuiteConfig { max_n, caps, grid },
        cases: reports,
    }
}

/// Verifies the whole registry with the standard oracles.
pub fn verify_all(max_n: usize) -> VerificationReport {
    verify_cases(case_registry(), max_n, &StandardOracles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::Grammar;
    use crate::poly::letter;
    use crate::registry::find_case;
    use crate::triangle::Affine;

    #[test]
    fn difference_alignment() {
        let r = |v: &[i64]| v.iter().copied().map(BigInt::from).collect::<Vec<_>>();
        assert_eq!(first_difference(&r(&[1, 2]), 0, &r(&[1, 2]), 0), None);
        assert_eq!(first_difference(&r(&[1, 2]), 0, &r(&[1, 2, 0]), 0), None);
        assert_eq!(
            first_difference(&r(&[1, 2]), 0, &r(&[1, 2, 5]), 0),
            Some((2, BigInt::from(0), BigInt::from(5)))
        );
        assert_eq!(first_difference(&r(&[1]), 1, &r(&[0, 1]), 0), None);
        assert!(first_difference(&r(&[1]), 1, &r(&[1]), 0).is_some());
    }

    #[test]
    fn type_b_case_matches() {
        let reports = verify_case("c1", None, 4).unwrap();
        assert_eq!(reports.len(), 1);
        let c1 = &reports[0];
        assert!(c1.passed(), "{c1:?}");
        assert_eq!(c1.rows.len(), 4);
        assert!(c1.rows.iter().all(|r| r.status == RowStatus::Match));
        assert_eq!(c1.rows[0].compared.len(), 3);
    }

    #[test]
    fn unknown_case() {
        assert!(matches!(
            verify_case("bogus", None, 3),
            Err(CaseError::UnknownCase(_))
        ));
    }

    #[test]
    fn corrupted_ansatz_is_structural() {
        let mut c1 = find_case("c1", None).unwrap().clone();
        c1.ansatz.set_law(&letter("x"), Affine::new(2, 2, -2));
        let report = verify_spec(&c1, 3, &StandardOracles);
        assert_eq!(report.status, CaseStatus::Fail);
        assert_eq!(report.rows[0].status, RowStatus::StructuralFailure);
        assert_eq!(report.first_divergence.unwrap().n, 1);
    }

    #[test]
    fn unruled_letter_is_a_configuration_error() {
        let mut p1 = find_case("P1", None).unwrap().clone();
        p1.grammar = Grammar::parse("x -> x*y*z; y -> y").unwrap();
        let report = verify_spec(&p1, 3, &StandardOracles);
        assert_eq!(report.status, CaseStatus::Error);
        assert!(report.error.unwrap().contains("z"));
        let suite = verify_cases(&[p1], 3, &StandardOracles);
        assert!(!suite.pass);
    }

    #[test]
    fn rows_beyond_caps_are_skipped() {
        let report = &verify_case("c3", None, 8).unwrap()[0];
        assert!(report.passed());
        assert_eq!(report.count(RowStatus::Match), 6);
        assert_eq!(report.count(RowStatus::SkippedOverCap), 2);
    }

    #[test]
    fn table_lists_every_case() {
        let report = verify_cases(
            &find_cases("c4", None).into_iter().cloned().collect::<Vec<_>>(),
            2,
            &StandardOracles,
        );
        let table = report.to_table();
        assert!(table.starts_with("case"));
        for r in C4_GRID {
            assert!(table.contains(&format!("c4[r={r}]")));
        }
        assert!(table.trim_end().ends_with("overall: PASS"));
    }
}
