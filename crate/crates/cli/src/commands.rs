//! Subcommands. Each one loads what it needs from the instance, calls one
//! library operation and describes the result as an [`Outcome`].

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use paveset::capacity::{agree_on, enumerate_zero_one, ModularMode};
use paveset::insertion::{
    default_max_depth, insert, property_n_counterexample, random_pair, satisfies_postconditions, urysohn,
    verify_insertion, Insertion, PavingPair,
};
use paveset::integral::{choquet, choquet_over, choquet_signed, nat_filter_integral, staircase_integral};
use paveset::measurable::verify::{
    verify_caratheodory, verify_modular_integral, verify_semicompact_nat, verify_stability_closure,
    verify_stability_random, SuiteReport,
};
use paveset::measurable::{
    is_measurable, is_measurable_signed, nat_failing_pair, nat_is_measurable, nonmeasurability_witness,
    oracle_disagreement, staircase_approx, t3_partition,
};
use paveset::nat::SemiCompactness;
use paveset::{
    sample, Capacity, ExtRat, IntegralValue, NatFilterCapacity, NatFn, NatPavingKind, PartialCapacity, Paving, PointFn,
    SetFunction, SetOp, Staircase, Subset,
};
use rand::RngCore;
use serde_json::{json, Value};
use thiserror::Error;

use crate::doc::{DocError, FunctionEntry, Instance, PavingEntry};
use crate::report::{self, fn_text, pair_text, rat, sets_text, subset, subsets, table, table_text, Outcome};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or names that do not resolve.
    #[error("{0}")]
    Usage(String),
    /// The instance or the requested computation violates an invariant.
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Usage(_) => 3,
        }
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "paveset", version, about = "Measurability, layer-cake integrals and insertion on paved sets")]
pub struct Cli {
    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct InstanceArg {
    /// Instance document (JSON)
    #[arg(short = 'i', long = "instance")]
    pub instance: PathBuf,
}

#[derive(Args, Debug)]
pub struct FnPaving {
    #[command(flatten)]
    pub inst: InstanceArg,
    /// Function name
    #[arg(short = 'f', long = "function")]
    pub function: String,
    /// Paving name
    #[arg(short = 'E', long = "paving")]
    pub paving: String,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[command(flatten)]
    pub inst: InstanceArg,
    /// Paving playing the role of the closed sets
    #[arg(short = 'K', long = "lower-paving")]
    pub k: String,
    /// Paving playing the role of the open sets
    #[arg(short = 'U', long = "upper-paving")]
    pub u: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Layer-cake integral of a function or staircase
    Integrate {
        #[command(flatten)]
        inst: InstanceArg,
        /// Function name
        #[arg(short = 'f', long = "function", conflicts_with = "staircase")]
        function: Option<String>,
        /// Staircase name
        #[arg(short = 's', long)]
        staircase: Option<String>,
        /// Capacity name
        #[arg(short = 'a', long = "capacity")]
        capacity: Option<String>,
        /// Partial capacity name, integrated through its inner extension
        #[arg(short = 'd', long = "partial", conflicts_with = "capacity")]
        partial: Option<String>,
        /// Use the outer extension of the partial capacity
        #[arg(long, requires = "partial")]
        outer: bool,
        /// Integrate over this subset only, e.g. "0,2"
        #[arg(long)]
        over: Option<String>,
        /// Filter capacity on ℕ: lower-frechet, upper-frechet or principal:N
        #[arg(long)]
        filter: Option<String>,
    },
    /// Sandwich-criterion measurability
    Measurable(FnPaving),
    /// Measurability by enumerating all {0,1} capacity pairs
    Oracle(FnPaving),
    /// Staircase approximation from below
    Approx {
        #[command(flatten)]
        args: FnPaving,
        #[arg(long)]
        depth: u32,
    },
    /// Two capacities agreeing on the paving that integrate differently
    Witness(FnPaving),
    /// Inner or outer extension of a partial capacity
    Extend {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(short = 'd', long = "partial")]
        partial: String,
        #[arg(long, conflicts_with = "outer", required_unless_present = "outer")]
        inner: bool,
        #[arg(long)]
        outer: bool,
    },
    /// Modular, submodular or supermodular relation of a partial capacity
    Modular {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(short = 'd', long = "partial")]
        partial: String,
        /// eq, le or ge
        #[arg(long, default_value = "eq")]
        mode: String,
    },
    /// Sets that split a set function additively
    Caratheodory {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(short = 'm', long = "set-function")]
        set_function: String,
    },
    /// Atoms of an algebra
    Atoms {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(short = 'E', long = "paving")]
        paving: String,
    },
    /// Closure properties of a paving
    Inspect {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(short = 'E', long = "paving")]
        paving: String,
    },
    /// Partition of the ground set into cells of small oscillation
    T3Partition {
        #[command(flatten)]
        args: FnPaving,
        /// Positive rational parameter
        #[arg(long = "a")]
        a: String,
    },
    /// Measurability and limits of a function on ℕ
    NatCheck {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(short = 'f', long = "function")]
        function: String,
        /// Paving kind name, or a paving name in the instance
        #[arg(long)]
        paving: String,
    },
    /// Semi-compactness of a paving on ℕ
    Semicompact {
        /// finite-sets, cofinite-plus-empty or finite-or-cofinite
        #[arg(long)]
        paving: String,
    },
    /// Interpolation property of a pair of pavings
    PropertyN(PairArgs),
    /// A function between two bounds, measurable for both pavings
    Insert {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        lower: String,
        #[arg(long)]
        upper: String,
        #[arg(long)]
        max_depth: Option<u32>,
    },
    /// A function between two indicators, measurable for both pavings
    Urysohn {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        k0: String,
        #[arg(long)]
        u0: String,
    },
    /// Seeded verification suites
    Verify {
        /// stability, modular, caratheodory, semicompact or insertion
        #[arg(long)]
        suite: String,
        /// Ground set size for generated instances
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Number of generated pavings or pairs
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Samples per generated instance
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Seed; defaults to PAVESET_SEED or a built-in value
        #[arg(long)]
        seed: Option<u64>,
        /// Instance supplying the paving(s) instead of generated ones
        #[arg(short = 'i', long = "instance")]
        instance: Option<PathBuf>,
        #[arg(short = 'E', long = "paving")]
        paving: Option<String>,
        #[arg(short = 'K', long = "lower-paving")]
        k: Option<String>,
        #[arg(short = 'U', long = "upper-paving")]
        u: Option<String>,
    },
    /// All {0,1}-valued monotone set functions on n points
    EnumerateMonotone {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Print the instance in canonical form
    Canonicalize(InstanceArg),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Integrate { .. } => "integrate",
            Command::Measurable(_) => "measurable",
            Command::Oracle(_) => "oracle",
            Command::Approx { .. } => "approx",
            Command::Witness(_) => "witness",
            Command::Extend { .. } => "extend",
            Command::Modular { .. } => "modular",
            Command::Caratheodory { .. } => "caratheodory",
            Command::Atoms { .. } => "atoms",
            Command::Inspect { .. } => "inspect",
            Command::T3Partition { .. } => "t3-partition",
            Command::NatCheck { .. } => "nat-check",
            Command::Semicompact { .. } => "semicompact",
            Command::PropertyN(_) => "property-n",
            Command::Insert { .. } => "insert",
            Command::Urysohn { .. } => "urysohn",
            Command::Verify { .. } => "verify",
            Command::EnumerateMonotone { .. } => "enumerate-monotone",
            Command::Canonicalize(_) => "canonicalize",
        }
    }
}

/// What `run` produced: a report, or a document printed verbatim.
pub enum Output {
    Report(Outcome),
    Document(String),
}

fn load(inst: &InstanceArg) -> Result<Instance, CliError> {
    load_path(&inst.instance)
}

fn load_path(path: &Path) -> Result<Instance, CliError> {
    Ok(Instance::load(path)?)
}

fn finite_paving<'a>(doc: &'a Instance, name: &str) -> Result<&'a Paving, CliError> {
    match doc.pavings.get(name) {
        Some(PavingEntry::Finite(e)) => Ok(e),
        Some(PavingEntry::Nat(_)) => Err(usage(format!("paving {name} lives on ℕ; this command needs a finite one"))),
        None => Err(usage(format!("no paving named {name}"))),
    }
}

fn finite_fn<'a>(doc: &'a Instance, name: &str) -> Result<&'a PointFn, CliError> {
    match doc.functions.get(name) {
        Some(FunctionEntry::Finite(f)) => Ok(f),
        Some(FunctionEntry::Nat(_)) => {
            Err(usage(format!("function {name} lives on ℕ; this command needs a finite one")))
        }
        None => Err(usage(format!("no function named {name}"))),
    }
}

fn nat_fn<'a>(doc: &'a Instance, name: &str) -> Result<&'a NatFn, CliError> {
    match doc.functions.get(name) {
        Some(FunctionEntry::Nat(f)) => Ok(f),
        Some(FunctionEntry::Finite(_)) => Err(usage(format!("function {name} is finite; this command needs one on ℕ"))),
        None => Err(usage(format!("no function named {name}"))),
    }
}

fn capacity<'a>(doc: &'a Instance, name: &str) -> Result<&'a Capacity, CliError> {
    doc.capacities.get(name).ok_or_else(|| usage(format!("no capacity named {name}")))
}

fn partial<'a>(doc: &'a Instance, name: &str) -> Result<&'a PartialCapacity, CliError> {
    doc.partial_capacities.get(name).map(|p| &p.delta).ok_or_else(|| usage(format!("no partial capacity named {name}")))
}

fn set_function<'a>(doc: &'a Instance, name: &str) -> Result<&'a SetFunction, CliError> {
    doc.set_functions.get(name).ok_or_else(|| usage(format!("no set function named {name}")))
}

fn staircase<'a>(doc: &'a Instance, name: &str) -> Result<&'a Staircase, CliError> {
    doc.staircases.get(name).ok_or_else(|| usage(format!("no staircase named {name}")))
}

fn nat_kind(doc: Option<&Instance>, name: &str) -> Result<NatPavingKind, CliError> {
    if let Some(kind) = NatPavingKind::from_name(name) {
        return Ok(kind);
    }
    match doc.and_then(|d| d.pavings.get(name)) {
        Some(PavingEntry::Nat(kind)) => Ok(*kind),
        Some(PavingEntry::Finite(_)) => Err(usage(format!("paving {name} is finite; this command needs one on ℕ"))),
        None => Err(usage(format!("{name} is neither a paving kind nor a paving in the instance"))),
    }
}

fn pavings_pair(doc: &Instance, args: &PairArgs) -> Result<PavingPair, CliError> {
    let k = finite_paving(doc, &args.k)?.clone();
    let u = finite_paving(doc, &args.u)?.clone();
    PavingPair::new(k, u).map_err(invalid)
}

/// `"0,2"`, `"[0,2]"`, `""` or `"[]"`.
pub fn parse_subset_arg(n: usize, s: &str) -> Result<Subset, CliError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
    let elems = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| usage(format!("bad subset {s:?}: expected indices like 0,2")))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    crate::doc::parse_subset("subset argument", n, &elems).map_err(|e| usage(e.to_string()))
}

fn parse_rat_arg(flag: &str, s: &str) -> Result<ExtRat, CliError> {
    s.parse().map_err(|e| usage(format!("--{flag}: {e}")))
}

fn parse_filter(s: &str) -> Result<NatFilterCapacity, CliError> {
    match s {
        "lower-frechet" => Ok(NatFilterCapacity::LowerFrechet),
        "upper-frechet" => Ok(NatFilterCapacity::UpperFrechet),
        _ => s
            .strip_prefix("principal:")
            .and_then(|n| n.parse().ok())
            .map(NatFilterCapacity::Principal)
            .ok_or_else(|| usage(format!("bad filter {s:?}: expected lower-frechet, upper-frechet or principal:N"))),
    }
}

fn integral_value(v: &ExtRat) -> Outcome {
    Outcome::computed().headline(v.to_string()).json_only("value", rat(v))
}

pub fn run(cmd: &Command) -> Result<Output, CliError> {
    let outcome = match cmd {
        Command::Integrate { inst, function, staircase: stair, capacity: cap, partial: part, outer, over, filter } => {
            let doc = load(inst)?;
            if let Some(spec) = filter {
                let name = function.as_deref().ok_or_else(|| usage("--filter needs a function on ℕ (-f)"))?;
                let f = nat_fn(&doc, name)?;
                integral_value(&nat_filter_integral(f, parse_filter(spec)?))
            } else {
                let alpha = match (cap, part) {
                    (Some(a), _) => capacity(&doc, a)?.clone(),
                    (None, Some(d)) => {
                        let delta = partial(&doc, d)?;
                        if *outer {
                            delta.outer_extension()
                        } else {
                            delta.inner_extension()
                        }
                    }
                    (None, None) => return Err(usage("integrate needs a capacity (-a) or a partial capacity (-d)")),
                };
                match (function, stair) {
                    (_, Some(s)) => {
                        if over.is_some() {
                            return Err(usage("--over applies to functions, not staircases"));
                        }
                        integral_value(&staircase_integral(staircase(&doc, s)?, &alpha).map_err(invalid)?)
                    }
                    (Some(name), None) => {
                        let f = finite_fn(&doc, name)?;
                        if let Some(set) = over {
                            let a = parse_subset_arg(f.len(), set)?;
                            integral_value(&choquet_over(a, f, &alpha).map_err(invalid)?)
                        } else if f.is_signed() {
                            match choquet_signed(f, &alpha).map_err(invalid)? {
                                IntegralValue::Value(v) => integral_value(&v),
                                IntegralValue::Undefined => {
                                    Outcome::computed().headline("undefined").json_only("value", Value::Null)
                                }
                            }
                        } else {
                            integral_value(&choquet(f, &alpha).map_err(invalid)?)
                        }
                    }
                    (None, None) => return Err(usage("integrate needs a function (-f) or a staircase (-s)")),
                }
            }
        }

        Command::Measurable(FnPaving { inst, function, paving }) => {
            let doc = load(inst)?;
            if let Some(FunctionEntry::Nat(_)) = doc.functions.get(function) {
                nat_measurable(nat_fn(&doc, function)?, nat_kind(Some(&doc), paving)?)
            } else {
                let f = finite_fn(&doc, function)?;
                let e = finite_paving(&doc, paving)?;
                if f.is_signed() {
                    let ok = is_measurable_signed(f, e).map_err(invalid)?;
                    Outcome::predicate(ok).field("measurable", json!(ok), ok.to_string())
                } else {
                    let r = is_measurable(f, e).map_err(invalid)?;
                    let (pair_json, pair_txt) = match &r.failing_pair {
                        Some((a, b)) => (report::pair(a, b), pair_text(a, b)),
                        None => (Value::Null, "none".into()),
                    };
                    let (level_json, level_txt) = match r.missing_level {
                        Some(s) => (subset(s), s.to_string()),
                        None => (Value::Null, "none".into()),
                    };
                    Outcome::predicate(r.measurable)
                        .field("measurable", json!(r.measurable), r.measurable.to_string())
                        .field("failing_pair", pair_json, pair_txt)
                        .field("missing_level", level_json, level_txt)
                }
            }
        }

        Command::Oracle(FnPaving { inst, function, paving }) => {
            let doc = load(inst)?;
            let f = finite_fn(&doc, function)?;
            let e = finite_paving(&doc, paving)?;
            match oracle_disagreement(f, e).map_err(invalid)? {
                None => Outcome::predicate(true).field("measurable", json!(true), "true"),
                Some((alpha, beta)) => {
                    let (ia, ib) = (choquet(f, &alpha).map_err(invalid)?, choquet(f, &beta).map_err(invalid)?);
                    Outcome::predicate(false).field("measurable", json!(false), "false").field(
                        "disagreement",
                        json!({
                            "alpha_family": report::family(&alpha),
                            "beta_family": report::family(&beta),
                            "alpha_integral": rat(&ia),
                            "beta_integral": rat(&ib),
                        }),
                        format!(
                            "{} integrates to {ia}, {} integrates to {ib}",
                            sets_text(alpha.family().iter().copied()),
                            sets_text(beta.family().iter().copied())
                        ),
                    )
                }
            }
        }

        Command::Approx { args: FnPaving { inst, function, paving }, depth } => {
            let doc = load(inst)?;
            let f = finite_fn(&doc, function)?;
            let e = finite_paving(&doc, paving)?;
            let s = staircase_approx(f, e, *depth).map_err(invalid)?;
            let terms: Vec<Value> = s.terms().iter().map(|(c, h)| json!([rat(c), subset(*h)])).collect();
            let terms_txt: Vec<String> = s.terms().iter().map(|(c, h)| format!("{c}·{h}")).collect();
            let g = s.to_point_fn();
            Outcome::computed()
                .field(
                    "terms",
                    Value::Array(terms),
                    if terms_txt.is_empty() { "0".into() } else { terms_txt.join(" + ") },
                )
                .field("values", report::func(&g), fn_text(&g))
        }

        Command::Witness(FnPaving { inst, function, paving }) => {
            let doc = load(inst)?;
            let f = finite_fn(&doc, function)?;
            let e = finite_paving(&doc, paving)?;
            let w = nonmeasurability_witness(f, e).map_err(invalid)?;
            let n = f.len();
            let agree = agree_on(&w.alpha, &w.beta, e);
            let fragment = Instance::fragment(
                n,
                BTreeMap::from([("alpha".to_string(), w.alpha.clone()), ("beta".to_string(), w.beta.clone())]),
                BTreeMap::from([("g".to_string(), w.g.clone())]),
            );
            Outcome::computed()
                .field("pair", report::pair(&w.pair.0, &w.pair.1), pair_text(&w.pair.0, &w.pair.1))
                .field("level", subset(w.level), w.level.to_string())
                .field("g", report::func(&w.g), fn_text(&w.g))
                .field("tau1", table(n, |s| w.tau1[s.index()].clone()), table_text(n, |s| w.tau1[s.index()].clone()))
                .field("tau2", table(n, |s| w.tau2[s.index()].clone()), table_text(n, |s| w.tau2[s.index()].clone()))
                .field("alpha", table(n, |s| w.alpha.value(s).clone()), table_text(n, |s| w.alpha.value(s).clone()))
                .field("beta", table(n, |s| w.beta.value(s).clone()), table_text(n, |s| w.beta.value(s).clone()))
                .field("agree_on_paving", json!(agree), agree.to_string())
                .field("t", rat(&w.t_gap), w.t_gap.to_string())
                .field("lower", rat(&w.lower), w.lower.to_string())
                .field("upper", rat(&w.upper), w.upper.to_string())
                .json_only("instance", fragment.to_value())
        }

        Command::Extend { inst, partial: name, inner: _, outer } => {
            let doc = load(inst)?;
            let delta = partial(&doc, name)?;
            let ext = if *outer { delta.outer_extension() } else { delta.inner_extension() };
            let n = ext.ground_len();
            Outcome::computed()
                .field(
                    "extension",
                    json!(if *outer { "outer" } else { "inner" }),
                    if *outer { "outer" } else { "inner" },
                )
                .field("capacity", table(n, |s| ext.value(s).clone()), table_text(n, |s| ext.value(s).clone()))
        }

        Command::Modular { inst, partial: name, mode } => {
            let doc = load(inst)?;
            let delta = partial(&doc, name)?;
            let m = ModularMode::from_name(mode)
                .ok_or_else(|| usage(format!("bad mode {mode:?}: expected eq, le or ge")))?;
            let violation = delta.modularity_violation(m).map_err(invalid)?;
            let (vj, vt) = match violation {
                Some((a, b)) => (json!([subset(a), subset(b)]), format!("({a}, {b})")),
                None => (Value::Null, "none".into()),
            };
            let ok = violation.is_none();
            Outcome::predicate(ok)
                .field("mode", json!(m.name()), m.name())
                .field("holds", json!(ok), ok.to_string())
                .field("violation", vj, vt)
        }

        Command::Caratheodory { inst, set_function: name } => {
            let doc = load(inst)?;
            let mu = set_function(&doc, name)?;
            let alg = mu.caratheodory_algebra();
            let is_alg = alg.is_algebra();
            let mut out = Outcome::computed().field("sets", subsets(alg.iter()), sets_text(alg.iter())).field(
                "is_algebra",
                json!(is_alg),
                is_alg.to_string(),
            );
            if let Ok(atoms) = alg.atoms() {
                out = out.field(
                    "atoms",
                    subsets(atoms.blocks().iter().copied()),
                    sets_text(atoms.blocks().iter().copied()),
                );
            }
            out
        }

        Command::Atoms { inst, paving } => {
            let doc = load(inst)?;
            let e = finite_paving(&doc, paving)?;
            let atoms = e.atoms().map_err(|err| invalid(format!("paving {paving}: {err}")))?;
            let blocks = atoms.blocks().iter().copied();
            Outcome::computed().field("atoms", subsets(blocks.clone()), sets_text(blocks))
        }

        Command::Inspect { inst, paving } => {
            let doc = load(inst)?;
            let e = finite_paving(&doc, paving)?;
            let stab = |op| match e.stability_violation(op) {
                None => (Value::Null, "stable".to_string()),
                Some((a, b)) => (json!([subset(a), subset(b)]), format!("fails at ({a}, {b})")),
            };
            let (ij, it) = stab(SetOp::Intersection);
            let (uj, ut) = stab(SetOp::Union);
            let closure = e.close_under(&[SetOp::Intersection, SetOp::Union]);
            let algebra = e.is_algebra();
            Outcome::computed()
                .field("sets", subsets(e.iter()), sets_text(e.iter()))
                .field("intersection_violation", ij, it)
                .field("union_violation", uj, ut)
                .field("is_algebra", json!(algebra), algebra.to_string())
                .field("lattice_closure", subsets(closure.iter()), sets_text(closure.iter()))
        }

        Command::T3Partition { args: FnPaving { inst, function, paving }, a } => {
            let doc = load(inst)?;
            let f = finite_fn(&doc, function)?;
            let e = finite_paving(&doc, paving)?;
            let param = parse_rat_arg("a", a)?;
            let cells = t3_partition(f, e, &param).map_err(invalid)?;
            Outcome::computed().field("cells", subsets(cells.iter().copied()), sets_text(cells.iter().copied()))
        }

        Command::NatCheck { inst, function, paving } => {
            let doc = load(inst)?;
            let f = nat_fn(&doc, function)?;
            let kind = nat_kind(Some(&doc), paving)?;
            nat_measurable(f, kind)
        }

        Command::Semicompact { paving } => {
            let kind = nat_kind(None, paving)?;
            match kind.semicompact() {
                SemiCompactness::SemiCompact => Outcome::predicate(true)
                    .field("paving", json!(kind.name()), kind.name())
                    .field("semicompact", json!(true), "true"),
                SemiCompactness::NotSemiCompact(w) => {
                    let sets: Vec<Value> = (0..4).map(|n| report::natset(&w.set(n))).collect();
                    let txt: Vec<String> = (0..4).map(|n| report::natset_text(&w.set(n))).collect();
                    Outcome::predicate(false)
                        .field("paving", json!(kind.name()), kind.name())
                        .field("semicompact", json!(false), "false")
                        .field("witness", Value::Array(sets), format!("H_n = ℕ∖[0..n]: {}, …", txt.join(", ")))
                }
            }
        }

        Command::PropertyN(args) => {
            let doc = load(&args.inst)?;
            let pair = pavings_pair(&doc, args)?;
            let cex = property_n_counterexample(&pair);
            let (cj, ct) = match cex {
                Some((k, u)) => (json!([subset(k), subset(u)]), format!("({k}, {u})")),
                None => (Value::Null, "none".into()),
            };
            Outcome::predicate(cex.is_none()).field("holds", json!(cex.is_none()), cex.is_none().to_string()).field(
                "counterexample",
                cj,
                ct,
            )
        }

        Command::Insert { pair: args, lower, upper, max_depth } => {
            let doc = load(&args.inst)?;
            let pair = pavings_pair(&doc, args)?;
            let k = finite_fn(&doc, lower)?;
            let u = finite_fn(&doc, upper)?;
            let depth = max_depth.unwrap_or_else(|| default_max_depth(pair.ground_len()));
            let ins = insert(k, u, &pair, depth).map_err(invalid)?;
            insertion_outcome(&ins, satisfies_postconditions(&ins.f, k, u, &pair))
        }

        Command::Urysohn { pair: args, k0, u0 } => {
            let doc = load(&args.inst)?;
            let pair = pavings_pair(&doc, args)?;
            let n = pair.ground_len();
            let (k0, u0) = (parse_subset_arg(n, k0)?, parse_subset_arg(n, u0)?);
            let ins = urysohn(k0, u0, &pair).map_err(invalid)?;
            let ok = satisfies_postconditions(&ins.f, &PointFn::indicator(k0), &PointFn::indicator(u0), &pair);
            insertion_outcome(&ins, ok)
        }

        Command::Verify { suite, n, count, samples, seed, instance, paving, k, u } => {
            let seed = seed.unwrap_or_else(sample::seed_from_env);
            let doc = instance.as_deref().map(load_path).transpose()?;
            let named = |name: &Option<String>| -> Result<Option<Paving>, CliError> {
                match (name, &doc) {
                    (None, _) => Ok(None),
                    (Some(_), None) => Err(usage("naming a paving needs an instance (-i)")),
                    (Some(p), Some(d)) => finite_paving(d, p).cloned().map(Some),
                }
            };
            let report = run_suite(suite, *n, *count, *samples, seed, named(paving)?, named(k)?, named(u)?)?;
            suite_outcome(&report)
        }

        Command::EnumerateMonotone { n, count_only } => {
            let caps = enumerate_zero_one(*n).map_err(invalid)?;
            let mut out = Outcome::computed().headline(caps.len().to_string()).json_only("count", json!(caps.len()));
            if !count_only {
                let fams: Vec<Value> = caps.iter().map(report::family).collect();
                let txt: Vec<String> = caps.iter().map(|c| sets_text(c.family().iter().copied())).collect();
                out = out.field("families", Value::Array(fams), format!("\n  {}", txt.join("\n  ")));
            }
            out
        }

        Command::Canonicalize(inst) => return Ok(Output::Document(load(inst)?.to_json())),
    };
    Ok(Output::Report(outcome))
}

fn nat_measurable(f: &NatFn, kind: NatPavingKind) -> Outcome {
    let ok = nat_is_measurable(f, kind);
    let (pj, pt) = match nat_failing_pair(f, kind) {
        Some((a, b)) => {
            let (a, b) = (ExtRat::Fin(a), ExtRat::Fin(b));
            (report::pair(&a, &b), pair_text(&a, &b))
        }
        None => (Value::Null, "none".into()),
    };
    let opt = |v: Option<ExtRat>| match v {
        Some(v) => (rat(&v), v.to_string()),
        None => (Value::Null, "none".into()),
    };
    let (lj, lt) = opt(f.limit());
    let (mj, mt) = match f.argmax() {
        Some(i) => (json!(i), i.to_string()),
        None => (Value::Null, "none".into()),
    };
    Outcome::predicate(ok)
        .field("paving", json!(kind.name()), kind.name())
        .field("measurable", json!(ok), ok.to_string())
        .field("failing_pair", pj, pt)
        .field("liminf", rat(&f.liminf()), f.liminf().to_string())
        .field("limsup", rat(&f.limsup()), f.limsup().to_string())
        .field("limit", lj, lt)
        .field("sup", rat(&f.sup()), f.sup().to_string())
        .field("bounded", json!(f.is_bounded()), f.is_bounded().to_string())
        .field("argmax", mj, mt)
}

fn insertion_outcome(ins: &Insertion, verified: bool) -> Outcome {
    Outcome::computed()
        .field("f", report::func(&ins.f), fn_text(&ins.f))
        .field("depth", json!(ins.depth), ins.depth.to_string())
        .field("verified", json!(verified), verified.to_string())
}

fn suite_outcome(r: &SuiteReport) -> Outcome {
    let mut text = r.to_string();
    for f in r.failures.iter().take(10) {
        text.push_str(&format!("\n  {f}"));
    }
    Outcome::predicate(r.passed())
        .headline(text)
        .json_only("suite", json!(r.name))
        .json_only("seed", json!(r.seed))
        .json_only("checks", json!(r.checks))
        .json_only("passed", json!(r.passed()))
        .json_only("failures", json!(r.failures))
}

#[allow(clippy::too_many_arguments)]
fn run_suite(
    suite: &str,
    n: usize,
    count: usize,
    samples: usize,
    seed: u64,
    paving: Option<Paving>,
    k: Option<Paving>,
    u: Option<Paving>,
) -> Result<SuiteReport, CliError> {
    if !(1..=4).contains(&n) && paving.is_none() && k.is_none() {
        return Err(usage(format!("--n must be in 1..=4, got {n}")));
    }
    let mut rng = sample::rng(seed);
    Ok(match suite {
        "stability" => match paving {
            Some(e) => verify_stability_closure(&e, samples, seed),
            None => verify_stability_random(n, count, seed),
        },
        "modular" => match paving {
            Some(e) if !e.is_lattice() => return Err(invalid("the modular suite needs a paving closed under ∩ and ∪")),
            Some(e) => verify_modular_integral(&e, samples, seed),
            None => {
                let mut report = SuiteReport::new("modular", seed);
                for _ in 0..count {
                    let e = sample::random_lattice(&mut rng, n);
                    report.absorb(verify_modular_integral(&e, samples, rand_seed(&mut rng)));
                }
                report
            }
        },
        "caratheodory" => verify_caratheodory(n, samples * count.max(1), seed),
        "semicompact" => verify_semicompact_nat(samples * count.max(1), seed),
        "insertion" => match (k, u) {
            (Some(k), Some(u)) => verify_insertion(&PavingPair::new(k, u).map_err(invalid)?, samples, seed),
            (None, None) => {
                let mut report = SuiteReport::new("insertion", seed);
                for _ in 0..count {
                    let pair = random_pair(&mut rng, n);
                    report.absorb(verify_insertion(&pair, samples, rand_seed(&mut rng)));
                }
                report
            }
            _ => return Err(usage("the insertion suite needs both -K and -U, or neither")),
        },
        other => {
            return Err(usage(format!(
                "unknown suite {other:?}: expected stability, modular, caratheodory, semicompact or insertion"
            )))
        }
    })
}

fn rand_seed(rng: &mut sample::ChaCha8Rng) -> u64 {
    rng.next_u64()
}
