//! Command results, printed as text or as JSON.
//!
//! Every JSON report carries `schema_version` and `command`; keys come out
//! sorted, rationals are canonical strings and subsets are index arrays.

use paveset::capacity::ZeroOneCapacity;
use paveset::ground::power_set;
use paveset::{ExtRat, NatSet, PointFn, Subset};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

pub fn rat(v: &ExtRat) -> Value {
    Value::String(v.to_canonical())
}

pub fn subset(s: Subset) -> Value {
    json!(s.elements().collect::<Vec<_>>())
}

pub fn subsets(sets: impl IntoIterator<Item = Subset>) -> Value {
    Value::Array(sets.into_iter().map(subset).collect())
}

pub fn func(f: &PointFn) -> Value {
    Value::Array(f.values().iter().map(rat).collect())
}

pub fn pair(a: &ExtRat, b: &ExtRat) -> Value {
    json!([rat(a), rat(b)])
}

/// `[[subset, value], …]` over all subsets in canonical order.
pub fn table(n: usize, value: impl Fn(Subset) -> ExtRat) -> Value {
    Value::Array(canonical_subsets(n).into_iter().map(|s| json!([subset(s), rat(&value(s))])).collect())
}

pub fn natset(s: &NatSet) -> Value {
    match s {
        NatSet::Finite(v) => json!({ "finite": v }),
        NatSet::Cofinite(v) => json!({ "cofinite": v }),
    }
}

pub fn family(c: &ZeroOneCapacity) -> Value {
    subsets(c.family().iter().copied())
}

fn canonical_subsets(n: usize) -> Vec<Subset> {
    let mut all: Vec<Subset> = power_set(n).collect();
    all.sort_by(Subset::canonical_cmp);
    all
}

pub fn fn_text(f: &PointFn) -> String {
    let vals: Vec<String> = f.values().iter().map(ExtRat::to_canonical).collect();
    format!("({})", vals.join(", "))
}

pub fn pair_text(a: &ExtRat, b: &ExtRat) -> String {
    format!("({a}, {b})")
}

pub fn table_text(n: usize, value: impl Fn(Subset) -> ExtRat) -> String {
    let parts: Vec<String> = canonical_subsets(n).into_iter().map(|s| format!("{s} {}", value(s))).collect();
    parts.join(", ")
}

pub fn sets_text(sets: impl IntoIterator<Item = Subset>) -> String {
    let parts: Vec<String> = sets.into_iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn natset_text(s: &NatSet) -> String {
    format!("{s:?}")
}

struct Field {
    key: &'static str,
    json: Value,
    text: Option<String>,
}

/// What a command computed.
///
/// `verdict` is the answer of a predicate command; `Some(false)` maps to
/// exit code 1.
pub struct Outcome {
    pub verdict: Option<bool>,
    headline: Option<String>,
    fields: Vec<Field>,
}

impl Outcome {
    pub fn computed() -> Self {
        Outcome { verdict: None, headline: None, fields: Vec::new() }
    }

    pub fn predicate(answer: bool) -> Self {
        Outcome { verdict: Some(answer), headline: None, fields: Vec::new() }
    }

    /// A first line printed alone in text mode.
    pub fn headline(mut self, text: impl Into<String>) -> Self {
        self.headline = Some(text.into());
        self
    }

    /// A field shown in both modes.
    pub fn field(mut self, key: &'static str, json: Value, text: impl Into<String>) -> Self {
        self.fields.push(Field { key, json, text: Some(text.into()) });
        self
    }

    /// A field shown only in the JSON report.
    pub fn json_only(mut self, key: &'static str, json: Value) -> Self {
        self.fields.push(Field { key, json, text: None });
        self
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Some(false) => 1,
            _ => 0,
        }
    }

    pub fn to_value(&self, command: &str) -> Value {
        let mut map = Map::new();
        for f in &self.fields {
            map.insert(f.key.to_string(), f.json.clone());
        }
        map.insert("command".into(), json!(command));
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        Value::Object(map)
    }

    pub fn to_json(&self, command: &str) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value(command)).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(h) = &self.headline {
            out.push_str(h);
            out.push('\n');
        }
        for f in &self.fields {
            if let Some(t) = &f.text {
                out.push_str(&format!("{}: {t}\n", f.key));
            }
        }
        out
    }
}
