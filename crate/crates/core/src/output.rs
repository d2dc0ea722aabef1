//! Triangle serialization shared by the command line and the Python bindings.
//!
//! Coefficients are written as decimal strings so that values beyond 64 bits
//! survive any JSON reader.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::triangle::CoefficientTriangle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub n: usize,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleJson {
    /// Case id, or the oracle name for oracle triangles.
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<BTreeMap<String, usize>>,
    pub k_origin: usize,
    pub rows: Vec<RowJson>,
}

impl TriangleJson {
    pub fn new(case: impl Into<String>, tri: &CoefficientTriangle) -> Self {
        TriangleJson {
            case: case.into(),
            method: None,
            params: None,
            k_origin: tri.k_origin,
            rows: tri
                .rows
                .iter()
                .map(|(&n, row)| RowJson {
                    n,
                    coeffs: row.iter().map(BigInt::to_string).collect(),
                })
                .collect(),
        }
    }

    pub fn with_method(mut self, method: impl Into<String>) -> Self {
        self.method = Some(method.into());
        self
    }

    pub fn with_param(mut self, name: &str, value: Option<usize>) -> Self {
        if let Some(v) = value {
            self.params
                .get_or_insert_with(BTreeMap::new)
                .insert(name.to_string(), v);
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("triangle serializes")
    }

    /// `n: [a, b, c]` lines with the numbers right-aligned per column.
    pub fn to_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .flat_map(|r| r.coeffs.iter().map(String::len))
            .max()
            .unwrap_or(1);
        let n_width = self.rows.iter().map(|r| r.n.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.coeffs.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(out, "{:>n_width$}: [{}]", row.n, cells.join(", "));
        }
        out
    }

    /// One `n,k,value` line per entry, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,value\n");
        for row in &self.rows {
            for (i, c) in row.coeffs.iter().enumerate() {
                let _ = writeln!(out, "{},{},{}", row.n, self.k_origin + i, c);
            }
        }
        out
    }
}
