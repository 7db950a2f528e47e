//! Loader for the plain-text model configuration.
//!
//! Each non-blank, non-comment line is one record: a record type followed by
//! `key=value` fields. The first record must be `format version=N`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub const SUPPORTED_VERSION: u32 = 1;

/// The configuration shipped with the crate.
pub const DEFAULT_CONFIG: &str = include_str!("../data/crosscap_model.conf");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub line: usize,
    pub kind: String,
    pub fields: BTreeMap<String, String>,
}

impl Record {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| self.error(format!("missing field `{key}`")))
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Config { line: self.line, message: message.into() }
    }

    pub fn name(&self) -> Result<&str> {
        self.require("name")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    pub version: u32,
    pub model: String,
    pub symmetries: Vec<Record>,
    pub curves: Vec<Record>,
    /// FNV-1a hash of the raw text, used as a transcription fingerprint.
    pub fingerprint: String,
}

impl ModelConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut records = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut parts = content.split_whitespace();
            let kind = parts.next().unwrap_or_default().to_string();
            let mut fields = BTreeMap::new();
            for part in parts {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Config { line, message: format!("expected key=value, got `{part}`") })?;
                if fields.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(Error::Config { line, message: format!("duplicate field `{k}`") });
                }
            }
            records.push(Record { line, kind, fields });
        }

        let mut iter = records.into_iter();
        let header = iter
            .next()
            .ok_or(Error::Config { line: 0, message: "empty configuration".into() })?;
        if header.kind != "format" {
            return Err(header.error("first record must be `format`"));
        }
        let version: u32 = header
            .require("version")?
            .parse()
            .map_err(|_| header.error("version must be an integer"))?;
        if version != SUPPORTED_VERSION {
            return Err(header.error(format!("unsupported format version {version}")));
        }
        let model = header.get("model").unwrap_or("crosscap").to_string();

        let mut symmetries = Vec::new();
        let mut curves = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for rec in iter {
            let name = rec.name()?.to_string();
            if !seen.insert((rec.kind.clone(), name.clone())) {
                return Err(rec.error(format!("duplicate {} `{name}`", rec.kind)));
            }
            match rec.kind.as_str() {
                "symmetry" => symmetries.push(rec),
                "curve" => curves.push(rec),
                other => return Err(rec.error(format!("unknown record type `{other}`"))),
            }
        }
        Ok(ModelConfig { version, model, symmetries, curves, fingerprint: fnv1a(text) })
    }

    pub fn default_config() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("shipped configuration parses")
    }

    pub fn symmetry(&self, name: &str) -> Option<&Record> {
        self.symmetries.iter().find(|r| r.get("name") == Some(name))
    }

    /// Finds the record for `name`, resolving indexed families: `a_3` matches
    /// the record `a_i` and yields index 3.
    pub fn curve(&self, name: &str) -> Option<(&Record, Option<usize>)> {
        if let Some(rec) = self.curves.iter().find(|r| r.get("name") == Some(name)) {
            return Some((rec, None));
        }
        let (stem, idx) = name.rsplit_once('_')?;
        let idx: usize = idx.parse().ok()?;
        let family = format!("{stem}_i");
        self.curves
            .iter()
            .find(|r| r.get("name") == Some(family.as_str()))
            .map(|r| (r, Some(idx)))
    }
}

/// Evaluates a crosscap index expression (`3`, `i`, `i+1`, `i-1`) to a
/// 1-based crosscap number, wrapping modulo `genus`.
pub fn eval_index(expr: &str, family: Option<usize>, genus: usize, rec: &Record) -> Result<usize> {
    let expr = expr.trim();
    let value: i64 = if let Some(rest) = expr.strip_prefix('i') {
        let base = family.ok_or_else(|| rec.error("`i` used outside an indexed family"))? as i64;
        if rest.is_empty() {
            base
        } else {
            let offset: i64 = rest.parse().map_err(|_| rec.error(format!("bad index `{expr}`")))?;
            base + offset
        }
    } else {
        expr.parse().map_err(|_| rec.error(format!("bad index `{expr}`")))?
    };
    if value < 1 && family.is_none() {
        return Err(rec.error(format!("crosscap index {value} out of range")));
    }
    Ok(((value - 1).rem_euclid(genus as i64) + 1) as usize)
}

fn fnv1a(text: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}
