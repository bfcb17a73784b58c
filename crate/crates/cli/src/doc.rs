//! Instance documents: named pavings, capacities and functions over one
//! ground set, stored as JSON.
//!
//! Rationals are strings (`"3"`, `"1/3"`, `"inf"`, `"-inf"`), subsets are
//! arrays of element indices. [`Instance::to_json`] writes the canonical
//! form: keys sorted, subsets sorted, capacity tables listed in canonical
//! subset order, values reduced. Parsing the canonical form and writing it
//! again gives the same bytes.

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use paveset::{
    Capacity, ExtRat, Ground, NatFn, NatPavingKind, PartialCapacity, Paving, PointFn, SetFunction, Staircase, Subset,
    Tail,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{item}: {reason}")]
    Validation { item: String, reason: String },
}

fn invalid(item: impl Into<String>, reason: impl ToString) -> DocError {
    DocError::Validation { item: item.into(), reason: reason.to_string() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawGround {
    Size(usize),
    Labeled(RawLabeled),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabeled {
    size: usize,
    labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawPaving {
    Sets(Vec<Vec<usize>>),
    Kind(String),
}

type RawTable = Vec<(Vec<usize>, String)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPartial {
    paving: String,
    values: RawTable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawTail {
    Constant { value: String },
    HarmonicAbove { limit: String, coef: String },
    HarmonicBelow { limit: String, coef: String },
    LinearGrowth { slope: String },
    TwoPoint { lo: String, hi: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNatFn {
    #[serde(default)]
    prefix: Vec<String>,
    tail: RawTail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawFunction {
    Values(Vec<String>),
    Nat(RawNatFn),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    ground: RawGround,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pavings: BTreeMap<String, RawPaving>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    capacities: BTreeMap<String, RawTable>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    partial_capacities: BTreeMap<String, RawPartial>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    functions: BTreeMap<String, RawFunction>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    set_functions: BTreeMap<String, RawTable>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    staircases: BTreeMap<String, Vec<(String, Vec<usize>)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroundSpec {
    Finite(Ground),
    Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PavingEntry {
    Finite(Paving),
    Nat(NatPavingKind),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionEntry {
    Finite(PointFn),
    Nat(NatFn),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPartial {
    pub paving: String,
    pub delta: PartialCapacity,
}

/// A fully validated instance document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub ground: GroundSpec,
    pub pavings: BTreeMap<String, PavingEntry>,
    pub capacities: BTreeMap<String, Capacity>,
    pub partial_capacities: BTreeMap<String, NamedPartial>,
    pub functions: BTreeMap<String, FunctionEntry>,
    pub set_functions: BTreeMap<String, SetFunction>,
    pub staircases: BTreeMap<String, Staircase>,
}

pub fn parse_value(item: &str, s: &str) -> Result<ExtRat, DocError> {
    s.parse().map_err(|e| invalid(item, e))
}

pub fn parse_subset(item: &str, n: usize, elems: &[usize]) -> Result<Subset, DocError> {
    let mut sorted = elems.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid(item, format!("subset {elems:?} repeats an element")));
    }
    Subset::from_elements(n, sorted).map_err(|e| invalid(item, e))
}

fn parse_table(item: &str, n: usize, raw: &RawTable) -> Result<Vec<ExtRat>, DocError> {
    let mut table: Vec<Option<ExtRat>> = vec![None; 1 << n];
    for (elems, v) in raw {
        let s = parse_subset(item, n, elems)?;
        if table[s.index()].is_some() {
            return Err(invalid(item, format!("subset {s} listed twice")));
        }
        table[s.index()] = Some(parse_value(item, v)?);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| invalid(item, format!("no value for {}", Subset::from_bits(n, i as u32)))))
        .collect()
}

fn parse_tail(item: &str, raw: &RawTail) -> Result<Tail, DocError> {
    let val = |s: &String| parse_value(item, s);
    let finite = |s: &String| {
        val(s)?.as_finite().cloned().ok_or_else(|| invalid(item, format!("tail coefficient {s} must be finite")))
    };
    Ok(match raw {
        RawTail::Constant { value } => Tail::Constant(val(value)?),
        RawTail::HarmonicAbove { limit, coef } => Tail::HarmonicAbove { limit: val(limit)?, coef: finite(coef)? },
        RawTail::HarmonicBelow { limit, coef } => Tail::HarmonicBelow { limit: val(limit)?, coef: finite(coef)? },
        RawTail::LinearGrowth { slope } => Tail::LinearGrowth { slope: finite(slope)? },
        RawTail::TwoPoint { lo, hi } => Tail::TwoPoint { lo: val(lo)?, hi: val(hi)? },
    })
}

fn ext(v: &ExtRat) -> String {
    v.to_canonical()
}

fn fin(v: &BigRational) -> String {
    ExtRat::Fin(v.clone()).to_canonical()
}

fn canonical_subsets(n: usize) -> Vec<Subset> {
    let mut all: Vec<Subset> = paveset::ground::power_set(n).collect();
    all.sort_by(Subset::canonical_cmp);
    all
}

pub fn subset_elems(s: Subset) -> Vec<usize> {
    s.elements().collect()
}

fn raw_table(n: usize, value: impl Fn(Subset) -> ExtRat) -> RawTable {
    canonical_subsets(n).into_iter().map(|s| (subset_elems(s), ext(&value(s)))).collect()
}

fn raw_tail(tail: &Tail) -> RawTail {
    match tail {
        Tail::Constant(c) => RawTail::Constant { value: ext(c) },
        Tail::HarmonicAbove { limit, coef } => RawTail::HarmonicAbove { limit: ext(limit), coef: fin(coef) },
        Tail::HarmonicBelow { limit, coef } => RawTail::HarmonicBelow { limit: ext(limit), coef: fin(coef) },
        Tail::LinearGrowth { slope } => RawTail::LinearGrowth { slope: fin(slope) },
        Tail::TwoPoint { lo, hi } => RawTail::TwoPoint { lo: ext(lo), hi: ext(hi) },
    }
}

impl Instance {
    pub fn load(path: &Path) -> Result<Self, DocError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| DocError::Io { path: path.display().to_string(), source })?;
        Instance::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Instance::validate(&raw)
    }

    fn validate(raw: &RawDocument) -> Result<Self, DocError> {
        let ground = match &raw.ground {
            RawGround::Size(n) => GroundSpec::Finite(Ground::new(*n).map_err(|e| invalid("ground", e))?),
            RawGround::Labeled(RawLabeled { size, labels }) => {
                if labels.len() != *size {
                    return Err(invalid("ground", format!("size {size} but {} labels", labels.len())));
                }
                GroundSpec::Finite(Ground::with_labels(labels.clone()).map_err(|e| invalid("ground", e))?)
            }
            RawGround::Named(s) if s == "nat" => GroundSpec::Nat,
            RawGround::Named(s) => return Err(invalid("ground", format!("expected a size or \"nat\", got {s:?}"))),
        };
        match &ground {
            GroundSpec::Finite(g) => Instance::validate_finite(raw, g.len(), ground.clone()),
            GroundSpec::Nat => Instance::validate_nat(raw),
        }
    }

    fn validate_nat(raw: &RawDocument) -> Result<Self, DocError> {
        let finite_only = [
            ("capacities", raw.capacities.is_empty()),
            ("partial_capacities", raw.partial_capacities.is_empty()),
            ("set_functions", raw.set_functions.is_empty()),
            ("staircases", raw.staircases.is_empty()),
        ];
        if let Some((section, _)) = finite_only.iter().find(|(_, empty)| !empty) {
            return Err(invalid(*section, "only finite ground sets carry this section"));
        }
        let mut pavings = BTreeMap::new();
        for (name, p) in &raw.pavings {
            let item = format!("paving {name}");
            let kind = match p {
                RawPaving::Kind(k) => NatPavingKind::from_name(k).ok_or_else(|| invalid(&item, unknown_kind(k)))?,
                RawPaving::Sets(_) => return Err(invalid(item, "pavings on ℕ are given by kind name")),
            };
            pavings.insert(name.clone(), PavingEntry::Nat(kind));
        }
        let mut functions = BTreeMap::new();
        for (name, f) in &raw.functions {
            let item = format!("function {name}");
            let RawFunction::Nat(RawNatFn { prefix, tail }) = f else {
                return Err(invalid(item, "functions on ℕ need a prefix and a tail"));
            };
            let prefix = prefix.iter().map(|v| parse_value(&item, v)).collect::<Result<Vec<_>, _>>()?;
            let f = NatFn::new(prefix, parse_tail(&item, tail)?).map_err(|e| invalid(&item, e))?;
            functions.insert(name.clone(), FunctionEntry::Nat(f));
        }
        Ok(Instance {
            ground: GroundSpec::Nat,
            pavings,
            capacities: BTreeMap::new(),
            partial_capacities: BTreeMap::new(),
            functions,
            set_functions: BTreeMap::new(),
            staircases: BTreeMap::new(),
        })
    }

    fn validate_finite(raw: &RawDocument, n: usize, ground: GroundSpec) -> Result<Self, DocError> {
        let mut pavings = BTreeMap::new();
        for (name, p) in &raw.pavings {
            let item = format!("paving {name}");
            let RawPaving::Sets(lists) = p else {
                return Err(invalid(item, "named paving kinds need ground \"nat\""));
            };
            let sets = lists.iter().map(|l| parse_subset(&item, n, l)).collect::<Result<Vec<_>, _>>()?;
            let e = Paving::new(n, sets).map_err(|e| invalid(&item, e))?;
            pavings.insert(name.clone(), PavingEntry::Finite(e));
        }

        let mut capacities = BTreeMap::new();
        for (name, t) in &raw.capacities {
            let item = format!("capacity {name}");
            let table = parse_table(&item, n, t)?;
            capacities.insert(name.clone(), Capacity::new(n, table).map_err(|e| invalid(&item, e))?);
        }

        let mut partial_capacities = BTreeMap::new();
        for (name, p) in &raw.partial_capacities {
            let item = format!("partial capacity {name}");
            let domain = match pavings.get(&p.paving) {
                Some(PavingEntry::Finite(e)) => e.clone(),
                _ => return Err(invalid(item, format!("paving {} is not defined", p.paving))),
            };
            let mut entries = Vec::with_capacity(p.values.len());
            for (elems, v) in &p.values {
                let s = parse_subset(&item, n, elems)?;
                if entries.iter().any(|(t, _)| *t == s) {
                    return Err(invalid(&item, format!("subset {s} listed twice")));
                }
                entries.push((s, parse_value(&item, v)?));
            }
            let delta = PartialCapacity::new(domain, entries).map_err(|e| invalid(&item, e))?;
            partial_capacities.insert(name.clone(), NamedPartial { paving: p.paving.clone(), delta });
        }

        let mut functions = BTreeMap::new();
        for (name, f) in &raw.functions {
            let item = format!("function {name}");
            let RawFunction::Values(vals) = f else {
                return Err(invalid(item, "prefix and tail descriptors need ground \"nat\""));
            };
            if vals.len() != n {
                return Err(invalid(item, format!("{} values on a ground set of size {n}", vals.len())));
            }
            let vals = vals.iter().map(|v| parse_value(&item, v)).collect::<Result<Vec<_>, _>>()?;
            functions.insert(name.clone(), FunctionEntry::Finite(PointFn::auto(vals).map_err(|e| invalid(&item, e))?));
        }

        let mut set_functions = BTreeMap::new();
        for (name, t) in &raw.set_functions {
            let item = format!("set function {name}");
            let table = parse_table(&item, n, t)?;
            set_functions.insert(name.clone(), SetFunction::new(n, table).map_err(|e| invalid(&item, e))?);
        }

        let mut staircases = BTreeMap::new();
        for (name, terms) in &raw.staircases {
            let item = format!("staircase {name}");
            let terms = terms
                .iter()
                .map(|(c, elems)| Ok((parse_value(&item, c)?, parse_subset(&item, n, elems)?)))
                .collect::<Result<Vec<_>, DocError>>()?;
            staircases.insert(name.clone(), Staircase::new(n, terms).map_err(|e| invalid(&item, e))?);
        }

        Ok(Instance { ground, pavings, capacities, partial_capacities, functions, set_functions, staircases })
    }

    fn to_raw(&self) -> RawDocument {
        let ground = match &self.ground {
            GroundSpec::Finite(g) => match g.labels() {
                Some(labels) => RawGround::Labeled(RawLabeled { size: g.len(), labels: labels.to_vec() }),
                None => RawGround::Size(g.len()),
            },
            GroundSpec::Nat => RawGround::Named("nat".into()),
        };
        let pavings = self
            .pavings
            .iter()
            .map(|(name, p)| {
                let raw = match p {
                    PavingEntry::Finite(e) => RawPaving::Sets(e.iter().map(subset_elems).collect()),
                    PavingEntry::Nat(k) => RawPaving::Kind(k.name().into()),
                };
                (name.clone(), raw)
            })
            .collect();
        let capacities = self
            .capacities
            .iter()
            .map(|(name, c)| (name.clone(), raw_table(c.ground_len(), |s| c.value(s).clone())))
            .collect();
        let partial_capacities = self
            .partial_capacities
            .iter()
            .map(|(name, p)| {
                let values = p.delta.entries().map(|(s, v)| (subset_elems(s), ext(v))).collect();
                (name.clone(), RawPartial { paving: p.paving.clone(), values })
            })
            .collect();
        let functions = self
            .functions
            .iter()
            .map(|(name, f)| {
                let raw = match f {
                    FunctionEntry::Finite(f) => RawFunction::Values(f.values().iter().map(ext).collect()),
                    FunctionEntry::Nat(f) => RawFunction::Nat(RawNatFn {
                        prefix: f.prefix().iter().map(ext).collect(),
                        tail: raw_tail(f.tail()),
                    }),
                };
                (name.clone(), raw)
            })
            .collect();
        let set_functions = self
            .set_functions
            .iter()
            .map(|(name, mu)| (name.clone(), raw_table(mu.ground_len(), |s| mu.value(s).clone())))
            .collect();
        let staircases = self
            .staircases
            .iter()
            .map(|(name, s)| (name.clone(), s.terms().iter().map(|(c, h)| (ext(c), subset_elems(*h))).collect()))
            .collect();
        RawDocument { ground, pavings, capacities, partial_capacities, functions, set_functions, staircases }
    }

    /// The canonical document as a JSON value, keys sorted.
    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("raw documents serialize")
    }

    /// Canonical text form, ending in a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn ground_len(&self) -> Option<usize> {
        match &self.ground {
            GroundSpec::Finite(g) => Some(g.len()),
            GroundSpec::Nat => None,
        }
    }

    /// A document on `n` points holding only the given capacities and
    /// functions.
    pub fn fragment(n: usize, capacities: BTreeMap<String, Capacity>, functions: BTreeMap<String, PointFn>) -> Self {
        Instance {
            ground: GroundSpec::Finite(Ground::new(n).expect("valid size")),
            pavings: BTreeMap::new(),
            capacities,
            partial_capacities: BTreeMap::new(),
            functions: functions.into_iter().map(|(k, f)| (k, FunctionEntry::Finite(f))).collect(),
            set_functions: BTreeMap::new(),
            staircases: BTreeMap::new(),
        }
    }
}

fn unknown_kind(k: &str) -> String {
    let names: Vec<&str> = NatPavingKind::ALL.iter().map(|k| k.name()).collect();
    format!("unknown paving kind {k:?} (expected one of {})", names.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn validation_reason(text: &str) -> String {
        match Instance::parse(text) {
            Err(DocError::Validation { item, reason }) => format!("{item}: {reason}"),
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_document_loads() {
        let doc = Instance::parse(r#"{"ground": 2, "pavings": {"E": [[], [0], [0, 1]]}}"#).unwrap();
        let PavingEntry::Finite(e) = &doc.pavings["E"] else { panic!("finite paving") };
        let expected = Paving::from_lists(2, [vec![], vec![0], vec![0, 1]]).unwrap();
        assert_eq!(*e, expected);
    }

    #[test]
    fn nonzero_empty_value_is_rejected() {
        let reason = validation_reason(r#"{"ground": 1, "capacities": {"alpha": [[[], "1/1"], [[0], "1"]]}}"#);
        assert!(reason.starts_with("capacity alpha: value at the empty set must be 0"), "{reason}");
    }

    #[test]
    fn non_monotone_table_names_the_pair() {
        let reason = validation_reason(
            r#"{"ground": 2, "capacities": {"a": [[[], "0"], [[0], "2"], [[1], "0"], [[0, 1], "1"]]}}"#,
        );
        assert!(reason.contains("not monotone") && reason.contains("[0]") && reason.contains("[0,1]"), "{reason}");
    }

    #[test]
    fn thirds_survive_a_round_trip() {
        let text = r#"{"ground": 1, "functions": {"f": ["1/3"]}}"#;
        let doc = Instance::parse(text).unwrap();
        let FunctionEntry::Finite(f) = &doc.functions["f"] else { panic!("finite function") };
        assert_eq!(*f.value(0), ExtRat::ratio(1, 3));
        let emitted = doc.to_json();
        assert!(emitted.contains("\"1/3\""));
        assert_eq!(Instance::parse(&emitted).unwrap(), doc);
        assert_eq!(Instance::parse(&emitted).unwrap().to_json(), emitted);
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        let text = r#"{
            "ground": {"size": 2, "labels": ["a", "b"]},
            "pavings": {"E": [[0, 1], [], [0]]},
            "capacities": {"alpha": [[[1], "4/2"], [[], "0"], [[1, 0], "2"], [[0], "1"]]},
            "partial_capacities": {"d": {"paving": "E", "values": [[[0, 1], "inf"], [[], "0"], [[0], "1/2"]]}},
            "functions": {"f": ["3", "-1"]},
            "set_functions": {"mu": [[[], "0"], [[0], "1"], [[1], "1"], [[0, 1], "1"]]},
            "staircases": {"s": [["1", [0, 1]], ["2", [0]]]}
        }"#;
        let doc = Instance::parse(text).unwrap();
        let once = doc.to_json();
        assert_eq!(Instance::parse(&once).unwrap(), doc);
        assert_eq!(Instance::parse(&once).unwrap().to_json(), once);
        assert!(once.contains("\"2\"") && !once.contains("4/2"));
    }

    #[test]
    fn nat_documents() {
        let text = r#"{
            "ground": "nat",
            "pavings": {"F": "finite-sets"},
            "functions": {"f": {"prefix": ["5", "0"], "tail": {"kind": "harmonic-above", "limit": "1", "coef": "1"}}}
        }"#;
        let doc = Instance::parse(text).unwrap();
        let FunctionEntry::Nat(f) = &doc.functions["f"] else { panic!("nat function") };
        assert_eq!(f.eval(3), ExtRat::ratio(5, 4));
        assert_eq!(Instance::parse(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn structural_errors() {
        let parse_err = Instance::parse("{\"ground\": 2,\n \"pavings\": }");
        assert!(matches!(parse_err, Err(DocError::Parse { line: 2, .. })), "{parse_err:?}");
        assert!(Instance::parse(r#"{"ground": 2, "extra": {}}"#).is_err());
        assert!(validation_reason(r#"{"ground": 2, "functions": {"f": ["1"]}}"#).contains("1 values"));
        assert!(validation_reason(r#"{"ground": 2, "pavings": {"E": [[0]]}}"#).contains("empty set"));
        assert!(validation_reason(r#"{"ground": 2, "pavings": {"E": [[], [2]]}}"#).contains("paving E"));
        assert!(
            validation_reason(r#"{"ground": "nat", "pavings": {"E": "open-sets"}}"#).contains("unknown paving kind")
        );
        assert!(validation_reason(r#"{"ground": 1, "partial_capacities": {"d": {"paving": "E", "values": []}}}"#)
            .contains("not defined"));
        assert!(validation_reason(r#"{"ground": 2, "capacities": {"a": [[[], "0"]]}}"#).contains("no value for"));
    }
}
