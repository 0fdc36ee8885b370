//! JSON-lines experiment reports. Every record is an object carrying
//! `"schema": "meqsim.report.v1"` and a `"record"` kind: one `config`
//! record, one `trial` record per trial in trial order, then one `summary`.

use serde_json::Value;

pub const REPORT_SCHEMA: &str = "meqsim.report.v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    UInt,
    Num,
    Bool,
    Object,
    Any,
    NumOrNull,
    ObjectOrNull,
}

impl Kind {
    fn accepts(self, v: &Value) -> bool {
        match self {
            Kind::UInt => v.is_u64(),
            Kind::Num => v.is_number(),
            Kind::Bool => v.is_boolean(),
            Kind::Object => v.is_object(),
            Kind::Any => true,
            Kind::NumOrNull => v.is_number() || v.is_null(),
            Kind::ObjectOrNull => v.is_object() || v.is_null(),
        }
    }
}

const CONFIG_FIELDS: &[(&str, Kind)] = &[
    ("config", Kind::Object),
    ("code", Kind::Any),
    ("copies", Kind::Any),
    ("epsilon", Kind::NumOrNull),
    ("depth", Kind::UInt),
    ("register_qubits", Kind::Any),
    ("instances", Kind::UInt),
];

const TRIAL_FIELDS: &[(&str, Kind)] = &[
    ("trial", Kind::UInt),
    ("instance", Kind::UInt),
    ("input", Kind::Any),
    ("output", Kind::Any),
    ("oracle_output", Kind::Any),
    ("match", Kind::Bool),
    ("transcript_length", Kind::UInt),
    ("transcript_probability", Kind::Num),
    ("exact_path_probability", Kind::NumOrNull),
    ("gao_bound", Kind::NumOrNull),
    ("gao_bound_holds", Kind::Any),
    ("qubit_cost", Kind::ObjectOrNull),
];

const SUMMARY_FIELDS: &[(&str, Kind)] = &[
    ("trials", Kind::UInt),
    ("mismatches", Kind::UInt),
    ("empirical_error", Kind::Num),
    ("binomial_sd", Kind::Num),
    ("analytic_error_bound", Kind::NumOrNull),
    ("gao_violations", Kind::UInt),
    ("min_transcript_probability", Kind::Num),
];

/// Checks one record against the schema.
pub fn validate_record(record: &Value) -> Result<(), String> {
    let obj = record.as_object().ok_or("record is not an object")?;
    match obj.get("schema").and_then(Value::as_str) {
        Some(REPORT_SCHEMA) => {}
        other => return Err(format!("schema is {other:?}, expected {REPORT_SCHEMA:?}")),
    }
    let fields = match obj.get("record").and_then(Value::as_str) {
        Some("config") => CONFIG_FIELDS,
        Some("trial") => TRIAL_FIELDS,
        Some("summary") => SUMMARY_FIELDS,
        other => return Err(format!("unknown record kind {other:?}")),
    };
    for &(name, kind) in fields {
        match obj.get(name) {
            None => return Err(format!("missing field {name:?}")),
            Some(v) if !kind.accepts(v) => return Err(format!("field {name:?} is not {kind:?}: {v}")),
            Some(_) => {}
        }
    }
    let known = fields.len() + 2;
    if obj.len() != known {
        let extra: Vec<&String> = obj.keys().filter(|k| *k != "schema" && *k != "record" && !fields.iter().any(|(f, _)| f == k)).collect();
        return Err(format!("unexpected fields {extra:?}"));
    }
    Ok(())
}

/// Validates a whole report: record order as well as each record.
pub fn validate_report(records: &[Value]) -> Result<(), String> {
    let kind = |r: &Value| r.get("record").and_then(Value::as_str).map(str::to_owned);
    for (i, r) in records.iter().enumerate() {
        validate_record(r).map_err(|e| format!("record {i}: {e}"))?;
    }
    let n = records.len();
    if n < 3 || kind(&records[0]).as_deref() != Some("config") || kind(&records[n - 1]).as_deref() != Some("summary") {
        return Err("report must be config, trials, summary".into());
    }
    for (i, r) in records[1..n - 1].iter().enumerate() {
        if kind(r).as_deref() != Some("trial") || r["trial"].as_u64() != Some(i as u64) {
            return Err(format!("record {} is not trial {i}", i + 1));
        }
    }
    if records[n - 1]["trials"].as_u64() != Some((n - 2) as u64) {
        return Err("summary trial count disagrees with the records".into());
    }
    Ok(())
}
