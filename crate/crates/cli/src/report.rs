//! Serializable reports and their plain-text rendering.

use affine_paths::LaurentPoly;
use serde::Serialize;

pub const SCHEMA_KOSTKA: &str = "affine-paths/kostka/1";
pub const SCHEMA_VERIFY: &str = "affine-paths/verify/1";
pub const SCHEMA_VERIFY_ONE: &str = "affine-paths/verify-one/1";
pub const SCHEMA_VERIFY_ZERO: &str = "affine-paths/verify-zero/1";
pub const SCHEMA_STRAIGHTEN: &str = "affine-paths/straighten/1";
pub const SCHEMA_CACHE: &str = "affine-paths/cache/1";

/// `[[exponent, coefficient], ...]` sorted by exponent.
pub fn poly_pairs(p: &LaurentPoly) -> Vec<(i64, i64)> {
    p.to_pairs()
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecJson {
    pub n: usize,
    pub shapes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<i64>,
    #[serde(rename = "Lambda", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(rename = "LambdaPrime", skip_serializing_if = "Option::is_none")]
    pub lambda_prime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b0: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct KostkaReport {
    pub schema: &'static str,
    pub spec: SpecJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
    pub polynomial: Vec<(i64, i64)>,
    pub path_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e0_hypothesis: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Widened {
    pub bound: i64,
    pub equal: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub spec: SpecJson,
    pub lhs_polynomial: Vec<(i64, i64)>,
    pub rhs_polynomial: Vec<(i64, i64)>,
    pub equal: bool,
    pub summand_count: usize,
    pub truncation_bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub widened: Option<Widened>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted_paths: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub applicable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e0_hypothesis: Option<bool>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum StraightenResult {
    Zero(&'static str),
    Term {
        sign: i64,
        qpow: i64,
        beta: Vec<i64>,
    },
}

#[derive(Debug, Serialize)]
pub struct StraightenReport {
    pub schema: &'static str,
    pub n: usize,
    pub level: i64,
    pub alpha: Vec<i64>,
    pub result: StraightenResult,
}

#[derive(Debug, Serialize)]
pub struct CacheEntryJson {
    pub file: String,
    pub checksum: Option<String>,
    pub status: String,
}

#[derive(Debug, Serialize)]
pub struct CacheReport {
    pub schema: &'static str,
    pub action: &'static str,
    pub entries: Vec<CacheEntryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed: Option<usize>,
    pub warnings: Vec<String>,
}

/// Aligned two-column text.
#[derive(Debug, Default)]
pub struct TextTable {
    rows: Vec<(String, String)>,
}

impl TextTable {
    pub fn row(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.rows.push((key.into(), value.to_string()));
        self
    }

    pub fn poly(&mut self, key: &str, p: &[(i64, i64)]) -> &mut Self {
        self.row(key, LaurentPoly::from_terms(p.iter().copied()))
    }

    pub fn render(&self) -> String {
        let width = self.rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.rows {
            out.push_str(format!("{k:<width$}  {v}").trim_end());
            out.push('\n');
        }
        out
    }
}
