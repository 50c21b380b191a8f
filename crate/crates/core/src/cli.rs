//! Command implementations behind the `fermat-squares` binary.
//!
//! Every command produces [`OutputRecord`]s, written one JSON object per
//! line. Integers and rationals are always JSON strings; field order is
//! fixed by construction so identical inputs give byte-identical output.

use std::fmt;
use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::arith::{is_square, isqrt, parse_integer, Integer};
use crate::error::Error;
use crate::fermat_chain::{run_chain, Branch, BranchPolicy, ChainStep, FermatSolution};
use crate::pell::pell_pairs;
use crate::quartic::{run_quartic_from, QuarticState, QuarticStep};
use crate::triples::{brute_force_w4, hyp_square_family, sum_square_family, Family, FamilyRow};

/// Fermat chains of this many steps or more need `--long-ok`.
pub const FERMAT_LONG_STEPS: usize = 3;
/// Quartic chains of this many states or more need `--long-ok`.
pub const QUARTIC_LONG_STEPS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    Pell,
    FamilyRow,
    FermatSolution,
    QuarticState,
    VerifyReport,
    W4Solution,
}

impl RecordKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecordKind::Pell => "pell",
            RecordKind::FamilyRow => "family_row",
            RecordKind::FermatSolution => "fermat_solution",
            RecordKind::QuarticState => "quartic_state",
            RecordKind::VerifyReport => "verify_report",
            RecordKind::W4Solution => "w4_solution",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputRecord {
    pub kind: RecordKind,
    pub payload: Map<String, Value>,
    pub meta: Map<String, Value>,
}

impl OutputRecord {
    fn new(kind: RecordKind, command: &str) -> Self {
        let mut meta = Map::new();
        meta.insert("command".into(), command.into());
        OutputRecord {
            kind,
            payload: Map::new(),
            meta,
        }
    }

    fn num(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.payload.insert(key.into(), Value::String(value.to_string()));
        self
    }

    fn flag(mut self, key: &str, value: bool) -> Self {
        self.payload.insert(key.into(), Value::Bool(value));
        self
    }

    fn meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "payload": self.payload,
            "meta": self.meta,
        })
    }

    pub fn to_json_line(&self) -> String {
        self.to_value().to_string()
    }

    /// A payload field parsed back into an [`Integer`].
    pub fn integer(&self, key: &str) -> Option<Integer> {
        self.payload.get(key)?.as_str().and_then(|s| parse_integer(s).ok())
    }
}

/// Write records as JSON lines, flushing after each.
pub fn write_records<'a, W: Write>(
    out: &mut W,
    records: impl IntoIterator<Item = &'a OutputRecord>,
) -> io::Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_json_line())?;
        out.flush()?;
    }
    Ok(())
}

/// Why a command did not complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandError {
    /// Bad arguments; nothing was computed.
    Usage(String),
    /// A core computation failed, possibly after partial output.
    Failed { step: Option<u64>, error: Error },
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => 2,
            CommandError::Failed { .. } => 1,
        }
    }

    /// The single JSON line written to standard error.
    pub fn to_json_line(&self) -> String {
        let v = match self {
            CommandError::Usage(msg) => json!({ "error": "usage", "message": msg }),
            CommandError::Failed { step, error } => {
                let mut m = Map::new();
                m.insert("error".into(), error.kind().into());
                m.insert("message".into(), error.to_string().into());
                if let Some(step) = step {
                    m.insert("step".into(), (*step).into());
                }
                Value::Object(m)
            }
        };
        v.to_string()
    }
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandError::Usage(msg) => write!(f, "usage: {msg}"),
            CommandError::Failed { error, .. } => write!(f, "{error}"),
        }
    }
}

impl From<Error> for CommandError {
    fn from(error: Error) -> Self {
        CommandError::Failed { step: None, error }
    }
}

/// Records emitted so far plus the error that stopped the command, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub records: Vec<OutputRecord>,
    pub error: Option<CommandError>,
}

fn positive(name: &str, v: u64) -> Result<(), CommandError> {
    if v == 0 {
        return Err(CommandError::Usage(format!("--{name} must be at least 1")));
    }
    Ok(())
}

pub fn cmd_pell(count: u64) -> Result<Vec<OutputRecord>, CommandError> {
    positive("count", count)?;
    Ok(pell_pairs(count)
        .map(|p| {
            OutputRecord::new(RecordKind::Pell, "pell")
                .num("k", p.k)
                .num("u", &p.u)
                .num("v", &p.v)
                .meta("index", p.k)
        })
        .collect())
}

pub fn family_name(family: Family) -> &'static str {
    match family {
        Family::SumSquare => "sum-square",
        Family::HypSquare => "hyp-square",
    }
}

pub fn parse_family(s: &str) -> Result<Family, CommandError> {
    match s {
        "sum-square" => Ok(Family::SumSquare),
        "hyp-square" => Ok(Family::HypSquare),
        _ => Err(CommandError::Usage(format!(
            "unknown family {s:?}; expected sum-square or hyp-square"
        ))),
    }
}

fn family_record(row: &FamilyRow) -> OutputRecord {
    OutputRecord::new(RecordKind::FamilyRow, "family")
        .num("index", row.index)
        .num("u", &row.pell.u)
        .num("v", &row.pell.v)
        .num("x", &row.x)
        .num("y", &row.y)
        .num("z", &row.z)
        .num("square_value", &row.square_value)
        .meta("family", family_name(row.family))
        .meta("index", row.index)
}

pub fn cmd_family(family: Family, count: u64) -> Result<Vec<OutputRecord>, CommandError> {
    positive("count", count)?;
    (1..=count)
        .map(|i| {
            let row = match family {
                Family::SumSquare => sum_square_family(i)?,
                Family::HypSquare => hyp_square_family(i)?,
            };
            if !row.is_valid() {
                return Err(Error::Invariant(format!("family row {i} failed verification")).into());
            }
            Ok(family_record(&row))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainMethod {
    Fermat,
    Quartic,
}

impl ChainMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChainMethod::Fermat => "fermat",
            ChainMethod::Quartic => "quartic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainSeed {
    Fermat(FermatSolution),
    Quartic(QuarticState),
}

#[derive(Clone, Debug)]
pub struct ChainOptions {
    pub method: ChainMethod,
    pub steps: u64,
    pub branch: Branch,
    /// Defaults: the `(−119, 120, 169)` seed for fermat, `1469/84` for quartic.
    pub seed: Option<ChainSeed>,
    pub long_ok: bool,
}

impl ChainOptions {
    pub fn new(method: ChainMethod, steps: u64) -> Self {
        ChainOptions {
            method,
            steps,
            branch: Branch::T1,
            seed: None,
            long_ok: false,
        }
    }
}

/// Read a seed from a previously emitted record.
///
/// `fermat_solution` and `verify_report` records (any record with `x`, `y`,
/// `z`) seed the fermat chain; `quartic_state` records (with `r`, `s`) seed
/// the quartic chain.
pub fn parse_seed(json_text: &str, method: ChainMethod) -> Result<ChainSeed, CommandError> {
    let usage = |m: String| CommandError::Usage(format!("seed file: {m}"));
    let line = json_text
        .lines()
        .rev()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| usage("empty".into()))?;
    let v: Value = serde_json::from_str(line).map_err(|e| usage(e.to_string()))?;
    let payload = v
        .get("payload")
        .and_then(Value::as_object)
        .ok_or_else(|| usage("missing payload object".into()))?;
    let field = |key: &str| -> Result<Integer, CommandError> {
        let s = payload
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| usage(format!("payload.{key} missing or not a string")))?;
        parse_integer(s).map_err(|e| usage(e.to_string()))
    };
    let index = v
        .get("meta")
        .and_then(|m| m.get("index"))
        .and_then(Value::as_u64)
        .unwrap_or(0);
    match method {
        ChainMethod::Fermat => {
            let s = FermatSolution::new(field("x")?, field("y")?, field("z")?, index)
                .map_err(|e| usage(format!("not a solution: {e}")))?;
            Ok(ChainSeed::Fermat(s))
        }
        ChainMethod::Quartic => {
            let index = index.max(1);
            let st = QuarticState::from_ratio(index, field("r")?, field("s")?)
                .and_then(|st| st.verify().map(|_| st))
                .map_err(|e| usage(format!("not a quartic state: {e}")))?;
            Ok(ChainSeed::Quartic(st))
        }
    }
}

fn fermat_record(step: &ChainStep) -> OutputRecord {
    let s = &step.solution;
    let mut r = OutputRecord::new(RecordKind::FermatSolution, "chain")
        .num("x", s.x())
        .num("y", s.y())
        .num("z", s.z())
        .num("e", s.e())
        .num("f", s.f())
        .num("t", &step.t)
        .num("m", &step.generators.m)
        .num("n", &step.generators.n)
        .num("a", &step.system.a)
        .num("b", &step.system.b)
        .num("c", &step.system.c)
        .num("d", &step.system.d)
        .num("lambda", &step.lambda);
    // roots of the triple before dividing out lambda, when they exist
    if let Ok((raw_e, true)) = isqrt(&step.raw.z) {
        r = r.num("raw_e", raw_e);
    }
    if let Ok((raw_f, true)) = isqrt(&step.raw.sum()) {
        r = r.num("raw_f", raw_f);
    }
    r.meta("method", "fermat")
        .meta("branch", step.branch.to_string())
        .meta("index", s.chain_index())
        .meta("classification", s.classification().as_str())
        .meta("below_threshold", step.below_threshold)
}

fn quartic_record(state: &QuarticState, step: Option<&QuarticStep>) -> OutputRecord {
    let mut r = OutputRecord::new(RecordKind::QuarticState, "chain")
        .num("k", state.k)
        .num("r", &state.r)
        .num("s", &state.s)
        .num("t", &state.t)
        .num("p", &state.p)
        .num("q", &state.q)
        .num("x", &state.x)
        .num("y", &state.y)
        .num("z", &state.z)
        .num("e", state.e());
    if let Ok(f) = state.f() {
        r = r.num("f", f);
    }
    if let Some(step) = step {
        r = r
            .num("shift", &step.root.shift)
            .num("alpha", &step.root.alpha)
            .num("beta", &step.root.beta);
    }
    r = r.meta("method", "quartic").meta("index", state.k);
    if let Ok(sol) = state.to_solution() {
        r = r.meta("classification", sol.classification().as_str());
    }
    let t_above_one = step.map_or(state.t > crate::arith::Rational::one(), |s| !s.t_not_above_one);
    r.meta("t_above_one", t_above_one)
}

pub fn cmd_chain(opts: &ChainOptions) -> CommandOutput {
    let fail = |e: CommandError| CommandOutput {
        records: Vec::new(),
        error: Some(e),
    };
    if let Err(e) = positive("steps", opts.steps) {
        return fail(e);
    }
    let limit = match opts.method {
        ChainMethod::Fermat => FERMAT_LONG_STEPS,
        ChainMethod::Quartic => QUARTIC_LONG_STEPS,
    };
    if opts.steps >= limit as u64 && !opts.long_ok {
        return fail(CommandError::Usage(format!(
            "{} chains of {} or more steps can run for a very long time; pass --long-ok to allow",
            opts.method.as_str(),
            limit
        )));
    }
    match opts.method {
        ChainMethod::Fermat => {
            let seed = match &opts.seed {
                None => FermatSolution::seed(),
                Some(ChainSeed::Fermat(s)) => s.clone(),
                Some(ChainSeed::Quartic(_)) => {
                    return fail(CommandError::Usage("fermat chain needs an x, y, z seed".into()))
                }
            };
            let run = match run_chain(&seed, opts.steps as usize, &BranchPolicy::Uniform(opts.branch)) {
                Ok(run) => run,
                Err(e) => return fail(e.into()),
            };
            CommandOutput {
                records: run.steps.iter().map(fermat_record).collect(),
                error: run.failure.map(|(step, error)| CommandError::Failed {
                    step: Some(step as u64),
                    error,
                }),
            }
        }
        ChainMethod::Quartic => {
            let seed = match &opts.seed {
                None => QuarticState::seed(),
                Some(ChainSeed::Quartic(s)) => s.clone(),
                Some(ChainSeed::Fermat(_)) => {
                    return fail(CommandError::Usage("quartic chain needs an r, s seed".into()))
                }
            };
            let run = match run_quartic_from(seed, opts.steps) {
                Ok(run) => run,
                Err(e) => return fail(e.into()),
            };
            let mut records = vec![quartic_record(&run.seed, None)];
            records.extend(run.steps.iter().map(|s| quartic_record(&s.state, Some(s))));
            CommandOutput {
                records,
                error: run.failure.map(|(k, error)| CommandError::Failed {
                    step: Some(k),
                    error,
                }),
            }
        }
    }
}

pub fn cmd_verify(x: &str, y: &str, z: &str) -> Result<OutputRecord, CommandError> {
    let parse = |s: &str| parse_integer(s).map_err(|e| CommandError::Usage(e.to_string()));
    let (x, y, z) = (parse(x)?, parse(y)?, parse(z)?);
    let sum = &x + &y;
    let pythagorean = &x * &x + &y * &y == &z * &z;
    let z_is_square = is_square(&z);
    let sum_is_square = is_square(&sum);
    let coprime = crate::arith::gcd(&x, &y) == Integer::from(1);
    let mut r = OutputRecord::new(RecordKind::VerifyReport, "verify")
        .num("x", &x)
        .num("y", &y)
        .num("z", &z)
        .flag("pythagorean", pythagorean)
        .flag("z_is_square", z_is_square)
        .flag("sum_is_square", sum_is_square)
        .flag("coprime", coprime);
    if z_is_square {
        let (e, _) = isqrt(&z)?;
        r = r.num("e", e);
    }
    if sum_is_square {
        let (f, _) = isqrt(&sum)?;
        r = r.num("f", f);
    }
    if let Ok(sol) = FermatSolution::new(x, y, z, 0) {
        r = r.meta("classification", sol.classification().as_str());
    }
    Ok(r)
}

pub fn cmd_brute(bound: u64) -> Result<Vec<OutputRecord>, CommandError> {
    positive("bound", bound)?;
    Ok(brute_force_w4(bound)
        .into_iter()
        .enumerate()
        .map(|(i, (x, w))| {
            OutputRecord::new(RecordKind::W4Solution, "brute")
                .num("x", x)
                .num("w", w)
                .meta("index", i as u64 + 1)
        })
        .collect())
}
