//! Ground-truth coefficient triangles computed without the grammar engine.
//!
//! Every [`Oracle`] supports one or more [`Method`]s. Rows are returned as the
//! entries `k = k_origin ..= k_max(n)` of the triangle, with each method capped
//! at the largest `n` it is run for.

pub mod enumerate;
pub mod recurrence;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown oracle `{0}`")]
    UnknownOracle(String),
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
    #[error("oracle `{0}` needs the parameter r")]
    MissingParam(&'static str),
    #[error("oracle `{oracle}` does not support method `{method}`")]
    UnsupportedMethod { oracle: String, method: Method },
    #[error("{oracle}/{method}: n = {n} exceeds the cap {cap}")]
    CapExceeded {
        oracle: String,
        method: Method,
        n: usize,
        cap: usize,
    },
    #[error("{oracle}: row {n} is outside the domain ({reason})")]
    Domain {
        oracle: String,
        n: usize,
        reason: String,
    },
    #[error(transparent)]
    Series(#[from] series::SeriesError),
}

/// How an oracle row is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Walk every object and count the primary statistic.
    Enumeration,
    /// Eulerian numbers counted by excedances instead of descents.
    Excedances,
    Recurrence,
    Explicit,
    Bell,
    Series,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Enumeration,
        Method::Excedances,
        Method::Recurrence,
        Method::Explicit,
        Method::Bell,
        Method::Series,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Enumeration => "enumeration",
            Method::Excedances => "excedances",
            Method::Recurrence => "recurrence",
            Method::Explicit => "explicit",
            Method::Bell => "bell",
            Method::Series => "series",
        }
    }

    /// Whether the method walks objects rather than evaluating a formula.
    pub fn is_enumerative(self) -> bool {
        matches!(self, Method::Enumeration | Method::Excedances)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| OracleError::UnknownMethod(s.to_string()))
    }
}

/// A named coefficient family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Oracle {
    Eulerian,
    SecondOrderEulerian,
    TypeB,
    Restricted { r: usize },
    Matchings,
    InteriorPeaks,
    LeftPeaks,
    StirlingFirst,
    StirlingSecond,
    Lah,
    Forest { r: usize },
    Mobile,
    SqrtSeries,
}

pub const ORACLE_NAMES: [&str; 13] = [
    "eulerian",
    "eulerian2",
    "typeB",
    "restricted",
    "matchings",
    "peaks-interior",
    "peaks-left",
    "stirling1",
    "stirling2",
    "lah",
    "forest",
    "mobile",
    "sqrt-series",
];

const ENUMERATION_CAP_PERMUTATIONS: usize = 8;
const ENUMERATION_CAP_DOUBLED: usize = 6;
const ENUMERATION_CAP_INJECTIONS: usize = 7;
const RECURRENCE_CAP: usize = 25;
const BELL_CAP: usize = 10;

impl Oracle {
    /// Looks up an oracle by its stable name; `restricted` and `forest` need `r`.
    pub fn from_name(name: &str, r: Option<usize>) -> Result<Self, OracleError> {
        Ok(match name {
            "eulerian" => Oracle::Eulerian,
            "eulerian2" => Oracle::SecondOrderEulerian,
            "typeB" => Oracle::TypeB,
            "restricted" => Oracle::Restricted {
                r: r.ok_or(OracleError::MissingParam("restricted"))?,
            },
            "matchings" => Oracle::Matchings,
            "peaks-interior" => Oracle::InteriorPeaks,
            "peaks-left" => Oracle::LeftPeaks,
            "stirling1" => Oracle::StirlingFirst,
            "stirling2" => Oracle::StirlingSecond,
            "lah" => Oracle::Lah,
            "forest" => Oracle::Forest {
                r: r.ok_or(OracleError::MissingParam("forest"))?,
            },
            "mobile" => Oracle::Mobile,
            "sqrt-series" => Oracle::SqrtSeries,
            other => return Err(OracleError::UnknownOracle(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Oracle::Eulerian => "eulerian",
            Oracle::SecondOrderEulerian => "eulerian2",
            Oracle::TypeB => "typeB",
            Oracle::Restricted { .. } => "restricted",
            Oracle::Matchings => "matchings",
            Oracle::InteriorPeaks => "peaks-interior",
            Oracle::LeftPeaks => "peaks-left",
            Oracle::StirlingFirst => "stirling1",
            Oracle::StirlingSecond => "stirling2",
            Oracle::Lah => "lah",
            Oracle::Forest { .. } => "forest",
            Oracle::Mobile => "mobile",
            Oracle::SqrtSeries => "sqrt-series",
        }
    }

    pub fn param(&self) -> Option<usize> {
        match *self {
            Oracle::Restricted { r } | Oracle::Forest { r } => Some(r),
            _ => None,
        }
    }

    /// Methods in order of preference; the first is the default.
    pub fn methods(&self) -> &'static [Method] {
        use Method::*;
        match self {
            Oracle::Eulerian => &[Recurrence, Enumeration, Excedances],
            Oracle::SecondOrderEulerian => &[Recurrence, Enumeration],
            Oracle::TypeB => &[Recurrence, Enumeration, Explicit],
            Oracle::Restricted { .. } | Oracle::Matchings | Oracle::InteriorPeaks | Oracle::LeftPeaks => {
                &[Enumeration]
            }
            Oracle::StirlingFirst | Oracle::StirlingSecond | Oracle::Lah | Oracle::Mobile => &[Recurrence],
            Oracle::Forest { .. } => &[Bell],
            Oracle::SqrtSeries => &[Series],
        }
    }

    pub fn default_method(&self) -> Method {
        self.methods()[0]
    }

    pub fn supports(&self, method: Method) -> bool {
        self.methods().contains(&method)
    }

    /// Largest `n` the method is run for, or `None` if unsupported.
    pub fn cap(&self, method: Method) -> Option<usize> {
        if !self.supports(method) {
            return None;
        }
        Some(match (self, method) {
            (Oracle::Eulerian | Oracle::InteriorPeaks | Oracle::LeftPeaks, m) if m.is_enumerative() => {
                ENUMERATION_CAP_PERMUTATIONS
            }
            (Oracle::SecondOrderEulerian | Oracle::TypeB | Oracle::Matchings, Method::Enumeration) => {
                ENUMERATION_CAP_DOUBLED
            }
            (Oracle::Restricted { .. }, _) => ENUMERATION_CAP_INJECTIONS,
            (_, Method::Bell) => BELL_CAP,
            (_, Method::Series) => series::MAX_ORDER,
            _ => RECURRENCE_CAP,
        })
    }

    /// Index of the first entry of every row.
    pub fn k_origin(&self) -> usize {
        match self {
            Oracle::Eulerian
            | Oracle::SecondOrderEulerian
            | Oracle::TypeB
            | Oracle::Restricted { .. }
            | Oracle::InteriorPeaks
            | Oracle::LeftPeaks => 0,
            _ => 1,
        }
    }

    /// Smallest row index the oracle is defined for.
    pub fn min_n(&self) -> usize {
        match *self {
            Oracle::TypeB => 0,
            Oracle::Restricted { r } => r,
            _ => 1,
        }
    }

    fn domain_check(&self, n: usize) -> Result<(), OracleError> {
        let reason = match *self {
            Oracle::Forest { r } if r < 2 => Some(format!("forests need r >= 2, got r = {r}")),
            _ if n < self.min_n() => Some(format!("rows start at n = {}", self.min_n())),
            _ => None,
        };
        match reason {
            Some(reason) => Err(OracleError::Domain {
                oracle: self.to_string(),
                n,
                reason,
            }),
            None => Ok(()),
        }
    }

    /// Row `n`, entries `k = k_origin ..= k_max(n)`.
    pub fn row(&self, method: Method, n: usize) -> Result<Vec<BigInt>, OracleError> {
        let cap = self.cap(method).ok_or_else(|| OracleError::UnsupportedMethod {
            oracle: self.to_string(),
            method,
        })?;
        if n > cap {
            return Err(OracleError::CapExceeded {
                oracle: self.to_string(),
                method,
                n,
                cap,
            });
        }
        self.domain_check(n)?;

        let counts = |v: Vec<u64>| v.into_iter().map(BigInt::from).collect::<Vec<_>>();
        let from = |v: Vec<BigInt>, lo: usize, hi: usize| v[lo..=hi].to_vec();
        use Method::*;
        let row = match (*self, method) {
            (Oracle::Eulerian, Enumeration) => counts(enumerate::eulerian_by_descents(n)),
            (Oracle::Eulerian, Excedances) => counts(enumerate::eulerian_by_excedances(n)),
            (Oracle::Eulerian, _) => from(recurrence::eulerian(n), 0, n - 1),
            (Oracle::SecondOrderEulerian, Enumeration) => counts(enumerate::second_order_by_ascents(n)),
            (Oracle::SecondOrderEulerian, _) => recurrence::second_order_eulerian(n),
            (Oracle::TypeB, Enumeration) => counts(enumerate::type_b_by_descents(n)),
            (Oracle::TypeB, Explicit) => recurrence::type_b_explicit(n),
            (Oracle::TypeB, _) => recurrence::type_b(n),
            (Oracle::Restricted { r }, _) => counts(enumerate::restricted_by_excedances(n, r)),
            (Oracle::Matchings, _) => from(counts(enumerate::matchings_by_odd_smaller(n)), 1, n),
            (Oracle::InteriorPeaks, _) => counts(enumerate::interior_peak_counts(n)),
            (Oracle::LeftPeaks, _) => counts(enumerate::left_peak_counts(n)),
            (Oracle::StirlingFirst, _) => from(recurrence::stirling_first(n), 1, n),
            (Oracle::StirlingSecond, _) => from(recurrence::stirling_second(n), 1, n),
            (Oracle::Lah, _) => from(recurrence::lah(n), 1, n),
            (Oracle::Forest { r }, _) => from(recurrence::forest(n, r), 1, n),
            (Oracle::Mobile, _) => from(recurrence::mobile(n), 1, n),
            (Oracle::SqrtSeries, _) => series::sqrt_a2_row(n)?,
        };
        Ok(row)
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(r) => write!(f, "{}[r={r}]", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// One oracle method bound to a registry case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OracleBinding {
    pub oracle: Oracle,
    pub method: Method,
}

impl OracleBinding {
    pub fn new(oracle: Oracle, method: Method) -> Self {
        debug_assert!(oracle.supports(method));
        OracleBinding { oracle, method }
    }

    pub fn cap(&self) -> usize {
        self.oracle
            .cap(self.method)
            .expect("binding uses a supported method")
    }

    /// Every method the oracle supports, bound in preference order.
    pub fn all_methods(oracle: Oracle) -> Vec<OracleBinding> {
        oracle
            .methods()
            .iter()
            .map(|&m| OracleBinding::new(oracle, m))
            .collect()
    }
}

impl fmt::Display for OracleBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.oracle, self.method)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn names_round_trip() {
        for name in ORACLE_NAMES {
            let o = Oracle::from_name(name, Some(3)).unwrap();
            assert_eq!(o.name(), name);
        }
        assert!(matches!(
            Oracle::from_name("forest", None),
            Err(OracleError::MissingParam(_))
        ));
        assert!(matches!(
            Oracle::from_name("nope", None),
            Err(OracleError::UnknownOracle(_))
        ));
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
    }

    #[test]
    fn eulerian_methods_agree() {
        for n in 1..=8 {
            let rows: Vec<_> = Oracle::Eulerian
                .methods()
                .iter()
                .map(|&m| Oracle::Eulerian.row(m, n).unwrap())
                .collect();
            assert!(rows.windows(2).all(|w| w[0] == w[1]), "n = {n}");
        }
        assert_eq!(
            Oracle::Eulerian.row(Method::Recurrence, 3).unwrap(),
            ints(&[1, 4, 1])
        );
    }

    #[test]
    fn caps_enforced() {
        assert!(matches!(
            Oracle::Matchings.row(Method::Enumeration, 7),
            Err(OracleError::CapExceeded { cap: 6, .. })
        ));
        assert!(Oracle::Eulerian.row(Method::Enumeration, 9).is_err());
        assert!(Oracle::SecondOrderEulerian.row(Method::Enumeration, 7).is_err());
        assert!(Oracle::Restricted { r: 1 }.row(Method::Enumeration, 8).is_err());
        assert!(matches!(
            Oracle::Lah.row(Method::Enumeration, 3),
            Err(OracleError::UnsupportedMethod { .. })
        ));
    }

    #[test]
    fn domains() {
        assert!(Oracle::Restricted { r: 3 }.row(Method::Enumeration, 2).is_err());
        assert_eq!(
            Oracle::Restricted { r: 3 }.row(Method::Enumeration, 3).unwrap(),
            ints(&[1])
        );
        assert_eq!(Oracle::TypeB.row(Method::Enumeration, 0).unwrap(), ints(&[1]));
        assert!(Oracle::Forest { r: 1 }.row(Method::Bell, 2).is_err());
    }

    #[test]
    fn named_rows() {
        assert_eq!(Oracle::Matchings.row(Method::Enumeration, 1).unwrap(), ints(&[1]));
        assert_eq!(
            Oracle::Matchings.row(Method::Enumeration, 2).unwrap(),
            ints(&[2, 1])
        );
        assert_eq!(
            Oracle::InteriorPeaks.row(Method::Enumeration, 2).unwrap(),
            ints(&[2])
        );
        assert_eq!(
            Oracle::LeftPeaks.row(Method::Enumeration, 2).unwrap(),
            ints(&[1, 1])
        );
        assert_eq!(
            Oracle::StirlingSecond.row(Method::Recurrence, 3).unwrap(),
            ints(&[1, 3, 1])
        );
        assert_eq!(
            Oracle::StirlingFirst.row(Method::Recurrence, 3).unwrap(),
            ints(&[2, 3, 1])
        );
        assert_eq!(Oracle::Lah.row(Method::Recurrence, 3).unwrap(), ints(&[6, 6, 1]));
        assert_eq!(
            Oracle::Forest { r: 3 }.row(Method::Bell, 2).unwrap(),
            ints(&[3, 1])
        );
        assert_eq!(
            Oracle::Mobile.row(Method::Recurrence, 3).unwrap(),
            ints(&[1, 4, 2])
        );
        assert_eq!(Oracle::SqrtSeries.row(Method::Series, 2).unwrap(), ints(&[1, 1]));
    }
}
