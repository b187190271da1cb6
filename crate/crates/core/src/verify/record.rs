//! Verification records, suite reports and their JSON/CSV encodings.

use std::io::Write;

use num_complex::Complex64;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::qcore::SumPolicy;

/// One identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRecord {
    pub identity: String,
    /// Flat parameter map in insertion order; complex inputs appear as
    /// `name_re` / `name_im` pairs.
    pub params: Vec<(String, f64)>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub rel_err: f64,
    pub abs_err: f64,
    pub terms: usize,
    /// `None` when timing is disabled.
    pub wall_ms: Option<f64>,
    pub pass: bool,
    /// Why the evaluation failed; not part of the serialized report.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub policy: SumPolicy,
    pub results: Vec<VerifyRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, policy: SumPolicy, results: Vec<VerifyRecord>, skipped: usize) -> Self {
        let passed = results.iter().filter(|r| r.pass).count();
        let failed = results.len() - passed;
        SuiteReport {
            suite: suite.to_string(),
            seed,
            policy,
            summary: Summary {
                total: passed + failed + skipped,
                passed,
                failed,
                skipped,
            },
            results,
        }
    }

    /// Largest `rel_err` per identity, in order of first appearance.
    pub fn worst_by_identity(&self) -> Vec<(String, f64)> {
        let mut out: Vec<(String, f64)> = Vec::new();
        for r in &self.results {
            let e = if r.rel_err.is_nan() { f64::INFINITY } else { r.rel_err };
            match out.iter_mut().find(|(id, _)| *id == r.identity) {
                Some((_, w)) => *w = w.max(e),
                None => out.push((r.identity.clone(), e)),
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&JsonReport(self)).expect("report serialization cannot fail")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "identity", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_err", "abs_err", "terms", "wall_ms",
            "pass",
        ])?;
        for r in &self.results {
            let params = r
                .params
                .iter()
                .map(|(k, v)| format!("{k}={}", fmt17(*v)))
                .collect::<Vec<_>>()
                .join(";");
            w.write_record([
                r.identity.clone(),
                params,
                fmt17(r.lhs.re),
                fmt17(r.lhs.im),
                fmt17(r.rhs.re),
                fmt17(r.rhs.im),
                fmt17(r.rel_err),
                fmt17(r.abs_err),
                r.terms.to_string(),
                r.wall_ms.map(fmt17).unwrap_or_default(),
                r.pass.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// 17 significant digits, enough to round-trip any binary64.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A binary64 serialized with 17 significant digits; non-finite values
/// become `null`.
struct F17(f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(fmt17(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

struct JsonPolicy<'a>(&'a SumPolicy);

impl Serialize for JsonPolicy<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let p = self.0;
        let mut m = s.serialize_map(Some(6))?;
        m.serialize_entry("rel_tol", &F17(p.rel_tol))?;
        m.serialize_entry("abs_floor", &F17(p.abs_floor))?;
        m.serialize_entry("max_terms", &p.max_terms)?;
        m.serialize_entry("consecutive_small", &p.consecutive_small)?;
        m.serialize_entry("max_shells", &p.max_shells)?;
        m.serialize_entry("pole_eps", &F17(p.pole_eps))?;
        m.end()
    }
}

struct JsonParams<'a>(&'a [(String, f64)]);

impl Serialize for JsonParams<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, &F17(*v))?;
        }
        m.end()
    }
}

struct JsonRecord<'a>(&'a VerifyRecord);

impl Serialize for JsonRecord<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = self.0;
        let mut m = s.serialize_map(Some(11))?;
        m.serialize_entry("identity", &r.identity)?;
        m.serialize_entry("params", &JsonParams(&r.params))?;
        m.serialize_entry("lhs_re", &F17(r.lhs.re))?;
        m.serialize_entry("lhs_im", &F17(r.lhs.im))?;
        m.serialize_entry("rhs_re", &F17(r.rhs.re))?;
        m.serialize_entry("rhs_im", &F17(r.rhs.im))?;
        m.serialize_entry("rel_err", &F17(r.rel_err))?;
        m.serialize_entry("abs_err", &F17(r.abs_err))?;
        m.serialize_entry("terms", &r.terms)?;
        m.serialize_entry("wall_ms", &r.wall_ms.map(F17))?;
        m.serialize_entry("pass", &r.pass)?;
        m.end()
    }
}

struct JsonReport<'a>(&'a SuiteReport);

impl Serialize for JsonReport<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = self.0;
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("suite", &r.suite)?;
        m.serialize_entry("seed", &r.seed)?;
        m.serialize_entry("policy", &JsonPolicy(&r.policy))?;
        let results: Vec<JsonRecord> = r.results.iter().map(JsonRecord).collect();
        m.serialize_entry("results", &results)?;
        m.serialize_entry("summary", &r.summary)?;
        m.end()
    }
}
