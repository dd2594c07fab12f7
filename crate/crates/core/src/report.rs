//! Structured check reports and their versioned JSON serialization.
//!
//! Every checker returns a `CheckReport`; the JSON document has exactly
//! the fields `command`, `genset`, `params`, `verdict`, `witnesses`,
//! `stats`, `version`, with `stats` carrying `ball_size`,
//! `pairs_examined`, `max_inside_distance` and `runtime_ms`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const REPORT_VERSION: u32 = 1;

/// Verdict of a run. Property checks use the three standard verdicts;
/// verification commands report a named conclusion so that a successful
/// verification is distinguishable from a failing property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
    Statement(String),
}

impl Verdict {
    pub fn as_str(&self) -> &str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Statement(s) => s,
        }
    }

    fn from_string(s: String) -> Verdict {
        match s.as_str() {
            "HOLDS" => Verdict::Holds,
            "FAILS" => Verdict::Fails,
            "INCONCLUSIVE" => Verdict::Inconclusive,
            _ => Verdict::Statement(s),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Verdict::from_string(String::deserialize(d)?))
    }
}

/// One witness record. Fields are optional so that element pairs, words,
/// per-radius measurements and annotated values all fit the same shape;
/// absent fields are omitted from the JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shorter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Witness {
    pub fn pair(u: String, v: String) -> Witness {
        Witness { pair: Some((u, v)), ..Witness::default() }
    }

    pub fn word(w: String) -> Witness {
        Witness { word: Some(w), ..Witness::default() }
    }

    pub fn with_value(mut self, value: i64) -> Witness {
        self.value = Some(value);
        self
    }

    pub fn with_note(mut self, note: &str) -> Witness {
        self.note = Some(note.to_string());
        self
    }

    pub fn with_r(mut self, r: u32) -> Witness {
        self.r = Some(r);
        self
    }

    pub fn with_shorter(mut self, shorter: String) -> Witness {
        self.shorter = Some(shorter);
        self
    }
}

/// Fixed statistics block.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub ball_size: u64,
    pub pairs_examined: u64,
    pub max_inside_distance: u64,
    pub runtime_ms: u64,
}

/// Structured outcome of a checker or computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub command: String,
    pub genset: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub stats: Stats,
    pub version: u32,
}

impl CheckReport {
    pub fn new(command: &str, genset: &str) -> CheckReport {
        CheckReport {
            command: command.to_string(),
            genset: genset.to_string(),
            params: BTreeMap::new(),
            verdict: Verdict::Inconclusive,
            witnesses: Vec::new(),
            stats: Stats::default(),
            version: REPORT_VERSION,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<CheckReport> {
        let report: CheckReport = serde_json::from_str(text)
            .map_err(|e| Error::MalformedReport(e.to_string()))?;
        report.validate()?;
        Ok(report)
    }

    /// Schema check: version, non-empty command/genset, and FAILS
    /// verdicts carrying at least one re-checkable witness.
    pub fn validate(&self) -> Result<()> {
        if self.version != REPORT_VERSION {
            return Err(Error::MalformedReport(format!(
                "unsupported report version {}",
                self.version
            )));
        }
        if self.command.is_empty() || self.genset.is_empty() {
            return Err(Error::MalformedReport(
                "command and genset must be non-empty".to_string(),
            ));
        }
        if self.verdict == Verdict::Fails
            && !self
                .witnesses
                .iter()
                .any(|w| w.pair.is_some() || w.word.is_some())
        {
            return Err(Error::MalformedReport(
                "a FAILS verdict must carry a machine-checkable witness".to_string(),
            ));
        }
        Ok(())
    }
}
